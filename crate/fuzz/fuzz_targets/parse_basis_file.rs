#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // comment stripping and line splitting must never panic
    let _ = tropdiff::cli::parse::parse_basis(text, 1);
    let _ = tropdiff::cli::parse::parse_basis(text, 2);
});
