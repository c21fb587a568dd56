use super::{FaultError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingMode {
    /// Each stored error costs `J` at every level.
    Equal,
    /// Level `m` costs `τ^(m−1) J`, so every absorbed error costs `J`.
    Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingParams {
    pub levels: usize,
    /// Errors a level absorbs before passing one up.
    pub tau: u32,
    pub j: f64,
    pub mode: CountingMode,
}

impl CountingParams {
    pub fn new(levels: usize, j: f64, mode: CountingMode) -> Self {
        Self {
            levels,
            tau: 2,
            j,
            mode,
        }
    }

    pub fn weight(&self, level: usize) -> f64 {
        match self.mode {
            CountingMode::Equal => self.j,
            CountingMode::Scaled => f64::from(self.tau).powi(level as i32) * self.j,
        }
    }

    /// Largest energy the counters can hold in equal mode.
    pub fn equal_plateau(&self) -> f64 {
        self.levels as f64 * f64::from(self.tau.saturating_sub(1)) * self.j
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingTrace {
    /// Energy after `k` errors, `k = 0..=errors`.
    pub energies: Vec<f64>,
    pub counters: Vec<u32>,
    /// Overflows of the top level.
    pub failures: usize,
}

impl CountingTrace {
    pub fn max_energy(&self) -> f64 {
        self.energies.iter().copied().fold(0.0, f64::max)
    }

    /// First error count at which the maximum energy is reached.
    pub fn argmax(&self) -> usize {
        let m = self.max_energy();
        self.energies.iter().position(|&e| e == m).unwrap_or(0)
    }
}

/// Feeds `errors` level-1 errors through per-level counters with threshold
/// `τ`. A full level resets and passes one error up; a full top level
/// counts as a failure and wraps.
pub fn counting_model(p: &CountingParams, errors: usize) -> Result<CountingTrace> {
    if p.levels == 0 {
        return Err(FaultError::NonPositive { name: "levels", value: 0.0 });
    }
    if p.tau < 2 {
        return Err(FaultError::NonPositive {
            name: "tau - 1",
            value: f64::from(p.tau) - 1.0,
        });
    }
    if p.j.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(FaultError::NonPositive { name: "J", value: p.j });
    }
    let weights: Vec<f64> = (0..p.levels).map(|m| p.weight(m)).collect();
    let mut counters = vec![0u32; p.levels];
    let mut energies = Vec::with_capacity(errors + 1);
    let mut failures = 0;
    let energy = |c: &[u32]| c.iter().zip(&weights).map(|(&n, w)| f64::from(n) * w).sum::<f64>();
    energies.push(0.0);
    for _ in 0..errors {
        let mut level = 0;
        loop {
            counters[level] += 1;
            if counters[level] < p.tau {
                break;
            }
            counters[level] = 0;
            level += 1;
            if level == p.levels {
                failures += 1;
                break;
            }
        }
        energies.push(energy(&counters));
    }
    Ok(CountingTrace {
        energies,
        counters,
        failures,
    })
}

/// Parameters of the storage-time estimate, in units with `k_B = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisParams {
    /// Fault-tolerance threshold per qubit per gate.
    pub epsilon_c: f64,
    pub n: f64,
    pub d: f64,
    pub j: f64,
    pub temperature: f64,
}

impl AnalysisParams {
    pub const DEFAULT_EPSILON: f64 = 0.01;

    pub fn new(n: f64, d: f64, j: f64, temperature: f64) -> Self {
        Self {
            epsilon_c: Self::DEFAULT_EPSILON,
            n,
            d,
            j,
            temperature,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("epsilon_c", self.epsilon_c),
            ("N", self.n),
            ("D", self.d),
            ("J", self.j),
            ("T", self.temperature),
        ] {
            if value.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !value.is_finite() {
                return Err(FaultError::NonPositive { name, value });
            }
        }
        if self.epsilon_c >= 1.0 {
            return Err(FaultError::OutOfRange {
                name: "epsilon_c",
                value: self.epsilon_c,
            });
        }
        Ok(())
    }
}

/// `exp(ε_C N D J / T)`.
pub fn survival_time(p: &AnalysisParams) -> Result<f64> {
    p.validate()?;
    Ok((p.epsilon_c * p.n * p.d * p.j / p.temperature).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_counters_are_a_base_tau_odometer() {
        let p = CountingParams::new(3, 1.5, CountingMode::Scaled);
        let t = counting_model(&p, 9).unwrap();
        for e in 0..8 {
            assert_eq!(t.energies[e], 1.5 * e as f64);
        }
        assert_eq!(t.energies[8], 0.0);
        assert_eq!(t.failures, 1);
        assert_eq!(t.counters, vec![1, 0, 0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(counting_model(&CountingParams::new(0, 1.0, CountingMode::Equal), 1).is_err());
        assert!(survival_time(&AnalysisParams::new(3.0, 10.0, -1.0, 1.0)).is_err());
        let mut p = AnalysisParams::new(3.0, 10.0, 1.0, 1.0);
        p.epsilon_c = 1.0;
        assert!(survival_time(&p).is_err());
    }
}
