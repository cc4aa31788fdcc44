#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = icsie::parse_generator(text) {
        let again = icsie::serialize_generator(&g);
        assert_eq!(icsie::parse_generator(&again).expect("serialized generator parses"), g);
    }
});
