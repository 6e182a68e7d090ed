#![no_main]

use libfuzzer_sys::fuzz_target;
use mollify::verify::{reports_from_json, reports_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(reports) = reports_from_json(text) {
        let _ = reports_from_json(&reports_to_json(&reports));
    }
});
