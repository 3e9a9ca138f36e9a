#![no_main]

use libfuzzer_sys::fuzz_target;
use spinvol::wigner::{sixj_exact, sixj_float};
use spinvol::SixJ;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(sym) = s.parse::<SixJ>() else { return };
    assert_eq!(sym.to_string().parse::<SixJ>().unwrap(), sym);
    // Keep evaluation cheap.
    if sym.max_spin().twice() > 60 {
        return;
    }
    let exact = sixj_exact(&sym).exact;
    let approx = sixj_float(&sym);
    if sym.is_trivial_zero() {
        assert!(exact.is_zero());
        assert_eq!(approx, 0.0);
    } else {
        let e = exact.to_f64();
        assert!((e - approx).abs() <= 1e-9 * e.abs().max(1e-300) + 1e-300, "{sym}: {e} vs {approx}");
    }
});
