//! Order-invariance fuzzing: generate scripts, run each under insertion
//! order and several shuffled storage orders, and compare everything a
//! correct build must print identically.

mod gen;
mod observe;

use rayon::prelude::*;

pub use gen::{gen_program, FuzzProgram, FuzzStatement, OpKind};
pub use observe::{classify_lines, has_hash_token, LineClass, ObservableReport, ObservedLine};

use crate::script::{run_script, Faults, Options};
use crate::storage::StorageOrder;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// First statement line whose observables differ between orders.
    Fail { seed: u64, line: usize },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Shuffle seed for trial `t` of the program generated from `seed`.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    // splitmix64 step
    let mut z = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(t as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `program` once and extracts its observables.
pub fn observe(program: &FuzzProgram, storage_order: StorageOrder, faults: Faults) -> ObservableReport {
    let outcome = run_script(&program.source(), Options { storage_order, faults });
    ObservableReport::from_transcript(&outcome.transcript, outcome.status)
}

pub fn check_invariance(program: &FuzzProgram, trials: usize) -> Verdict {
    check_invariance_with(program, trials, Faults::default())
}

/// Compares the insertion-order run against `trials - 1` shuffled runs.
pub fn check_invariance_with(program: &FuzzProgram, trials: usize, faults: Faults) -> Verdict {
    let reference = observe(program, StorageOrder::Insertion, faults);
    let divergence = (1..trials.max(2))
        .into_par_iter()
        .filter_map(|t| {
            let order = StorageOrder::Shuffle(trial_seed(program.seed, t));
            reference.first_divergence(&observe(program, order, faults))
        })
        .min();
    match divergence {
        None => Verdict::Pass,
        Some(line) => Verdict::Fail {
            seed: program.seed,
            line,
        },
    }
}

/// Outcome of checking many programs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    pub programs: usize,
    /// Lowest-seed failure, if any.
    pub failure: Option<Verdict>,
}

impl CampaignSummary {
    /// `PASS N` or `FAIL <seed> <line>`.
    pub fn line(&self) -> String {
        match &self.failure {
            Some(Verdict::Fail { seed, line }) => format!("FAIL {seed} {line}"),
            _ => format!("PASS {}", self.programs),
        }
    }
}

/// Checks programs generated from seeds `seed .. seed + programs`.
pub fn run_campaign(programs: usize, trials: usize, seed: u64, faults: Faults) -> CampaignSummary {
    let failure = (0..programs as u64)
        .into_par_iter()
        .map(|i| check_invariance_with(&gen_program(seed.wrapping_add(i)), trials, faults))
        .find_first(|v| !v.is_pass());
    CampaignSummary { programs, failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::parse_script;

    #[test]
    fn generation_is_deterministic_and_parses() {
        for seed in 0..50 {
            let p = gen_program(seed);
            assert_eq!(p, gen_program(seed));
            parse_script(&p.source()).unwrap();
        }
    }

    #[test]
    fn reference_build_passes() {
        for seed in 0..40 {
            let p = gen_program(seed);
            assert_eq!(check_invariance(&p, 4), Verdict::Pass, "\n{}", p.source());
        }
    }

    #[test]
    fn order_free_programs_pass() {
        let p = FuzzProgram {
            seed: 0,
            statements: ["d <- disord(3, 1, 2)", "sort(d)", "sum(d)", "max(d^2)", "mvp(\"x + 2 y\")"]
                .iter()
                .map(|t| FuzzStatement { kind: OpKind::Sort, text: t.to_string() })
                .collect(),
        };
        assert_eq!(check_invariance(&p, 4), Verdict::Pass);
        assert_eq!(check_invariance(&p, 2), check_invariance(&p, 2));
    }

    #[test]
    fn positional_extraction_is_caught() {
        let p = FuzzProgram {
            seed: 3,
            statements: ["d <- disord(1:8)", "try(d[1])"]
                .iter()
                .map(|t| FuzzStatement { kind: OpKind::BadIndex, text: t.to_string() })
                .collect(),
        };
        let faults = Faults { positional_extract: true };
        assert_eq!(check_invariance_with(&p, 4, faults), Verdict::Fail { seed: 3, line: 2 });
    }

    #[test]
    fn summary_lines() {
        assert_eq!(CampaignSummary { programs: 5, failure: None }.line(), "PASS 5");
        let fail = CampaignSummary { programs: 5, failure: Some(Verdict::Fail { seed: 9, line: 4 }) };
        assert_eq!(fail.line(), "FAIL 9 4");
    }
}
