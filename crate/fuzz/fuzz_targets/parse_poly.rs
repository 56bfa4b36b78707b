#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // first byte picks the variable count; the rest is the candidate text
    let Some((&head, rest)) = data.split_first() else { return };
    let n = (head as usize % 6) + 1;
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(p) = harmonics::text::parse(n, s) {
        // accepted input must round-trip through the canonical rendering
        let again = harmonics::text::parse(n, &harmonics::text::render(&p)).unwrap();
        assert_eq!(again, p);
    }
});
