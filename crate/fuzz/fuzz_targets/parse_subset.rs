#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(i_set) = harmonics::comb::parse_subset(s) {
        let n = i_set.n();
        assert!(i_set.elems().iter().all(|&i| 1 <= i && i < n));
        assert!(i_set.elems().windows(2).all(|w| w[0] < w[1]));
    }
});
