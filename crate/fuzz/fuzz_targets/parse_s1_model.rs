#![no_main]

use hcobord_core::formats::parse_s1_model;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    // errors are fine, panics are not
    let _ = parse_s1_model(data);
});
