#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = icsie::parse_instance(text) {
        let again = icsie::serialize_instance(&spec);
        let back = icsie::parse_instance(&again).expect("serialized instance parses");
        assert_eq!(back, spec);
        assert_eq!(icsie::serialize_instance(&back), again);
    }
});
