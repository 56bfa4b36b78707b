#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let n = (head as usize % 12) + 1;
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(order) = harmonics::comb::parse_order_file(n, s) {
        for i_set in &order {
            assert_eq!(i_set.n(), n);
            assert!(i_set.elems().iter().all(|&i| 1 <= i && i < n));
        }
    }
});
