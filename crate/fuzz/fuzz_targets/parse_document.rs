#![no_main]

use cyclic3::format::{document_to_string, parse_document, parse_document_bytes};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = parse_document_bytes(data) else { return };
    let again = parse_document(&document_to_string(&doc)).unwrap();
    assert_eq!(again.kind(), doc.kind());
    assert_eq!(again.len(), doc.len());
});
