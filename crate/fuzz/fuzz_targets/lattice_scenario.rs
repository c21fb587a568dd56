#![no_main]

use ftham::lattice::{run_scenario, LatticeScenario};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(mut s) = serde_json::from_slice::<LatticeScenario>(data) else {
        return;
    };
    // Keep each run small; the caps themselves are what we want exercised.
    s.caps.orbit = s.caps.orbit.min(2000);
    s.caps.active = s.caps.active.min(6);
    if s.rows.saturating_mul(s.cols) > 64 {
        let _ = s.config();
        let _ = s.program();
        return;
    }
    if let Ok(r) = run_scenario(&s) {
        assert!(r.orbit_size >= 1 && r.orbit_size <= s.caps.orbit);
        assert!(r.fidelity.is_finite() && r.fidelity <= 1.0 + 1e-9);
    }
});
