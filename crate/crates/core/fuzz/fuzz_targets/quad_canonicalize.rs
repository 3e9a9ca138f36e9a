#![no_main]

use libfuzzer_sys::fuzz_target;
use spinvol::regge::{canonicalize, Diagonal, QuadSpins};

fuzz_target!(|data: [u16; 4]| {
    let q = QuadSpins::from_twice(data.map(i64::from));
    let Ok(n) = canonicalize(&q) else {
        assert!(!q.closes());
        return;
    };
    assert!(q.closes());
    assert_eq!(canonicalize(&n.quad).unwrap().quad, n.quad);
    assert!(n.quad.a <= n.quad.b && n.quad.b <= n.quad.c && n.quad.c <= n.quad.d);
    for d in Diagonal::ALL {
        assert_eq!(n.values(d).count(), n.dim());
    }
});
