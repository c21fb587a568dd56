#![no_main]

use ftham::circuit::{parse_circuit, serialize_circuit};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Anything that parses must survive a serialise/parse round trip.
    if let Ok(c) = parse_circuit(text) {
        let again = parse_circuit(&serialize_circuit(&c)).expect("serialised circuit parses");
        assert_eq!(serialize_circuit(&again), serialize_circuit(&c));
    }
});
