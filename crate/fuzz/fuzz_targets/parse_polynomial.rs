#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Arbitrary text must parse or error, never panic. Re-displaying a
    // parsed polynomial must give text that parses back to an equal value.
    for n in [1usize, 2, 3] {
        if let Ok(poly) = tropdiff::cli::parse::parse_polynomial(text, n) {
            let shown = poly.to_string();
            let again = tropdiff::cli::parse::parse_polynomial(&shown, n)
                .expect("display output must re-parse");
            assert_eq!(poly, again);
        }
    }
});
