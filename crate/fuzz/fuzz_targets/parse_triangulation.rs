#![no_main]

use cyclic3::format::{parse_triangulation, triangulation_to_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(t) = parse_triangulation(text) else { return };
    assert_eq!(parse_triangulation(&triangulation_to_string(&t)).unwrap(), t);
    if t.validate().is_ok() {
        let g = cyclic3::gamma(&t);
        assert_eq!(cyclic3::xi(&g).unwrap(), t);
    }
});
