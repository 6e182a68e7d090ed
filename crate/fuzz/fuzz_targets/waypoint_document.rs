#![no_main]

use libfuzzer_sys::fuzz_target;
use mollify::paths::{parse_waypoints, WaypointDocument};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(path) = parse_waypoints(text) {
        // Anything accepted must survive a round trip and evaluate at its knots.
        let doc = WaypointDocument::from(&path);
        let again = parse_waypoints(&doc.to_json()).expect("round trip");
        // The JSON reader may land one ulp away from the shortest representation.
        for (a, b) in again.points().iter().flatten().zip(path.points().iter().flatten()) {
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()));
        }
        for (i, p) in path.points().iter().enumerate() {
            assert_eq!(&path.eval(i as f64), p);
        }
    }
});
