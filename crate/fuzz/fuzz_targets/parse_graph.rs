#![no_main]

use cyclic3::format::{graph_to_string, parse_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_graph(text) else { return };
    let canonical = graph_to_string(&g);
    assert_eq!(parse_graph(&canonical).unwrap(), g);
    if let Ok(t) = cyclic3::xi(&g) {
        assert!(t.is_valid());
        assert_eq!(cyclic3::gamma(&t), g);
    }
});
