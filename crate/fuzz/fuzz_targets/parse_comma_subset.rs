#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let n = (head as usize % 12) + 1;
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(i_set) = harmonics::comb::parse_comma_subset(n, s) {
        assert_eq!(i_set.n(), n);
        assert!(i_set.elems().iter().all(|&i| 1 <= i && i < n));
        assert!(i_set.elems().windows(2).all(|w| w[0] < w[1]));
    }
});
