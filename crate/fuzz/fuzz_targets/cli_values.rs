#![no_main]

use libfuzzer_sys::fuzz_target;
use mollify::cli::{parse_epsilon_list, Demo, OutputFormat, SpeedBudget};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(eps) = parse_epsilon_list(text) {
        assert!(!eps.is_empty());
        assert!(eps.iter().all(|e| e.is_finite() && *e > 0.0));
    }
    if let Ok(speed) = text.parse::<SpeedBudget>() {
        let _ = speed.curvature_budget();
    }
    let _ = text.parse::<Demo>();
    let _ = text.parse::<OutputFormat>();
});
