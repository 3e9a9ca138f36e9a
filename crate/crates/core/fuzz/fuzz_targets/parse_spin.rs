#![no_main]

use libfuzzer_sys::fuzz_target;
use spinvol::HalfInt;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(j) = HalfInt::parse_spin(s) {
        assert!(j.twice() >= 0);
        assert_eq!(HalfInt::parse_spin(&j.to_string()).unwrap(), j);
        assert_eq!(
            HalfInt::parse_twice(&j.twice().to_string()).ok(),
            Some(j).filter(|_| j.twice() <= spinvol::numeric::MAX_TWICE)
        );
    }
    let _ = HalfInt::parse_twice(s);
});
