#![no_main]

use hcobord_core::formats::parse_complex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    // errors are fine, panics are not
    let _ = parse_complex(data);
});
