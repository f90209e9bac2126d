#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for n in [1usize, 2] {
        if let Ok(profile) = tropdiff::cli::parse::parse_support(text, n) {
            // normalization must be stable under display round trips
            let shown = profile.to_string();
            let again = tropdiff::cli::parse::parse_support(&shown, n)
                .expect("display output must re-parse");
            assert_eq!(profile, again);
            // membership queries must not panic
            for set in profile.sets() {
                for x in 0..32u64 {
                    let _ = set.contains(x);
                    let _ = set.val_at(x);
                }
            }
        }
    }
});
