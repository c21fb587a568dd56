#![no_main]

use ftham::transfer::{chain_spectrum, locate_transfer_time, CouplingScheme};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = serde_json::from_slice::<CouplingScheme>(data) else {
        return;
    };
    assert!(s.couplings().iter().all(|j| j.is_finite() && *j > 0.0));
    let back: CouplingScheme = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
    if s.len() <= 64 && s.couplings().iter().all(|j| (1e-3..1e3).contains(j)) {
        let spectrum = chain_spectrum(&s);
        assert_eq!(spectrum.len(), s.len() + 1);
        let _ = locate_transfer_time(&s);
    }
});
