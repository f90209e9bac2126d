#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = tropdiff::cli::parse::parse_rational_function(text) {
        let shown = value.to_string();
        let again = tropdiff::cli::parse::parse_rational_function(&shown)
            .expect("display output must re-parse");
        assert_eq!(value, again);
        // canonical-form queries must not panic
        let _ = value.val();
        if !value.is_zero() {
            let _ = value.bar();
        }
    }
});
