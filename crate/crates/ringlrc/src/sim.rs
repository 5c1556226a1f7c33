//! Monte Carlo repair simulation: erase symbols under a chosen model,
//! repair through the designed local recovery, and account for symbol
//! reads against the MDS baseline of K reads per repair.

use crate::codes::{encode, recover_all, CodeSpec};
use crate::ring::Elem;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErasureModel {
    /// One uniformly random erased position per trial.
    OneRandom,
    /// The given number of distinct erasures in every block, each trial.
    PerBlock(usize),
}

impl fmt::Display for ErasureModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErasureModel::OneRandom => write!(f, "one_random"),
            ErasureModel::PerBlock(e) => write!(f, "per_block:{e}"),
        }
    }
}

impl FromStr for ErasureModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "one_random" {
            return Ok(ErasureModel::OneRandom);
        }
        if let Some(rest) = s.strip_prefix("per_block:") {
            let e: usize = rest
                .parse()
                .map_err(|_| Error::BadErasureModel(format!("bad erasure count {rest:?}")))?;
            return Ok(ErasureModel::PerBlock(e));
        }
        Err(Error::BadErasureModel(format!(
            "unknown model {s:?}; expected one_random or per_block:<count>"
        )))
    }
}

/// Aggregate results of a repair simulation.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub successes: u64,
    /// `None` when no trials ran.
    pub success_rate: Option<f64>,
    pub repaired_symbols: u64,
    pub total_symbols_read: u64,
    /// Reads per repaired symbol; `None` when nothing was repaired.
    pub avg_symbols_read: Option<f64>,
    /// An MDS code reads K survivors per repair.
    pub mds_baseline_reads: usize,
    /// Erasures drawn per block over the whole run.
    pub per_block_erasures: Vec<u64>,
    pub seed: u64,
    pub erasure_model: String,
}

fn validate_model(spec: &CodeSpec, model: ErasureModel) -> Result<()> {
    if let ErasureModel::PerBlock(e) = model {
        if e == 0 {
            return Err(Error::BadErasureModel("per-block count must be positive".into()));
        }
        let worst = (0..spec.partition().block_count())
            .map(|b| spec.block_tolerance(b))
            .min()
            .expect("partition has blocks");
        if e > worst {
            return Err(Error::BadErasureModel(format!(
                "{e} erasures per block exceed the tightest block tolerance {worst}"
            )));
        }
    }
    Ok(())
}

/// Run `trials` encode-erase-repair rounds with a seeded generator.
/// Every surviving-word repair goes through the same local recovery the
/// decoder uses, so read counts reflect the designed access pattern.
pub fn simulate_repair(
    spec: &CodeSpec,
    trials: u64,
    seed: u64,
    model: ErasureModel,
) -> Result<SimReport> {
    validate_model(spec, model)?;
    let ring = spec.ring();
    let size = ring.element_count();
    let partition = spec.partition();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    let mut repaired_symbols = 0u64;
    let mut total_symbols_read = 0u64;
    let mut per_block_erasures = vec![0u64; partition.block_count()];
    for _ in 0..trials {
        let message: Vec<Elem> = (0..spec.k())
            .map(|_| ring.element_from_index(rng.gen_range(0..size)))
            .collect();
        let word = encode(spec, &message)?;
        let mut erased: Vec<usize> = Vec::new();
        match model {
            ErasureModel::OneRandom => erased.push(rng.gen_range(0..spec.n())),
            ErasureModel::PerBlock(e) => {
                for block in partition.blocks() {
                    let mut pool = block.clone();
                    for _ in 0..e {
                        let pick = rng.gen_range(0..pool.len());
                        erased.push(pool.swap_remove(pick));
                    }
                }
            }
        }
        for &pos in &erased {
            per_block_erasures[partition.block_of(pos)] += 1;
        }
        let mut received: Vec<Option<Elem>> = word.iter().cloned().map(Some).collect();
        for &pos in &erased {
            received[pos] = None;
        }
        repaired_symbols += erased.len() as u64;
        if let Ok(repairs) = recover_all(spec, &received) {
            let mut all_match = true;
            for repair in &repairs {
                total_symbols_read += repair.reads.len() as u64;
                if repair.value != word[repair.position] {
                    all_match = false;
                }
            }
            if all_match && repairs.len() == erased.len() {
                successes += 1;
            }
        }
    }
    Ok(SimReport {
        trials,
        successes,
        success_rate: (trials > 0).then(|| successes as f64 / trials as f64),
        repaired_symbols,
        total_symbols_read,
        avg_symbols_read: (repaired_symbols > 0)
            .then(|| total_symbols_read as f64 / repaired_symbols as f64),
        mds_baseline_reads: spec.k(),
        per_block_erasures,
        seed,
        erasure_model: model.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{rrho_from_subgroup, tamo_barg_from_subgroup};
    use crate::ring::GaloisRing;

    #[test]
    fn model_parsing() {
        assert_eq!("one_random".parse::<ErasureModel>().unwrap(), ErasureModel::OneRandom);
        assert_eq!("per_block:2".parse::<ErasureModel>().unwrap(), ErasureModel::PerBlock(2));
        assert!(matches!(
            "per_block:x".parse::<ErasureModel>(),
            Err(Error::BadErasureModel(_))
        ));
        assert!(matches!("both".parse::<ErasureModel>(), Err(Error::BadErasureModel(_))));
        assert_eq!(ErasureModel::PerBlock(3).to_string(), "per_block:3");
    }

    #[test]
    fn reference_code_repairs_every_single_erasure() {
        let ring = GaloisRing::new(11, 2, 1, None).unwrap();
        let spec = tamo_barg_from_subgroup(&ring, 5, 2).unwrap();
        let report = simulate_repair(&spec, 1000, 7, ErasureModel::OneRandom).unwrap();
        assert_eq!(report.trials, 1000);
        assert_eq!(report.success_rate, Some(1.0));
        // locality r = 4 reads per repair, against an MDS baseline of 8
        assert_eq!(report.avg_symbols_read, Some(4.0));
        assert_eq!(report.mds_baseline_reads, 8);
        assert_eq!(report.repaired_symbols, 1000);
        assert_eq!(report.per_block_erasures.iter().sum::<u64>(), 1000);
        assert_eq!(report.per_block_erasures.len(), 2);
    }

    #[test]
    fn per_block_model_hits_every_block() {
        let ring = GaloisRing::new(11, 2, 1, None).unwrap();
        let spec = rrho_from_subgroup(&ring, 5, 2, 2).unwrap();
        let report = simulate_repair(&spec, 200, 3, ErasureModel::PerBlock(1)).unwrap();
        assert_eq!(report.success_rate, Some(1.0));
        assert_eq!(report.repaired_symbols, 400);
        assert_eq!(report.per_block_erasures, vec![200, 200]);
        // r = 4 survivors read per repaired symbol
        assert_eq!(report.avg_symbols_read, Some(4.0));

        // tolerance of an rho = 2 block is 1, so two erasures per block
        // must be rejected up front
        assert!(matches!(
            simulate_repair(&spec, 10, 3, ErasureModel::PerBlock(2)),
            Err(Error::BadErasureModel(_))
        ));
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let ring = GaloisRing::new(5, 2, 1, None).unwrap();
        let spec = tamo_barg_from_subgroup(&ring, 2, 2).unwrap();
        let a = simulate_repair(&spec, 50, 42, ErasureModel::OneRandom).unwrap();
        let b = simulate_repair(&spec, 50, 42, ErasureModel::OneRandom).unwrap();
        assert_eq!(a.per_block_erasures, b.per_block_erasures);
        assert_eq!(a.total_symbols_read, b.total_symbols_read);
        assert_eq!(a.successes, b.successes);
    }

    #[test]
    fn zero_trials_yield_empty_rates() {
        let ring = GaloisRing::new(5, 2, 1, None).unwrap();
        let spec = tamo_barg_from_subgroup(&ring, 2, 2).unwrap();
        let report = simulate_repair(&spec, 0, 0, ErasureModel::OneRandom).unwrap();
        assert_eq!(report.success_rate, None);
        assert_eq!(report.avg_symbols_read, None);
        assert_eq!(report.repaired_symbols, 0);
    }
}
