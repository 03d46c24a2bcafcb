#![no_main]

use hcobord_core::formats::{parse_input, Input};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(input) = parse_input(data) else { return };
    // whatever parses must survive a round trip unchanged
    let json = input.to_json().expect("parsed input serializes");
    let again: Input = parse_input(&json.to_string()).expect("serialized input parses");
    assert_eq!(input, again);
});
