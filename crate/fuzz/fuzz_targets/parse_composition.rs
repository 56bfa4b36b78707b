#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(alpha) = harmonics::comb::parse_composition(s) {
        assert!(alpha.parts().iter().all(|&p| p >= 1));
        assert_eq!(alpha.n(), alpha.parts().iter().sum::<usize>());
    }
});
