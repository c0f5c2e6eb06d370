//! Differential fuzzing: generate instances, run both phase-1 rules and the
//! oracles on each, and report any verdict disagreement.

use feasolve::oracles::{cross_check, generate_instance_raw, Scheme, SplitMix64};
use feasolve::{Error, Rational, Tolerance};
use serde::Serialize;

use crate::run::OracleChoice;

#[derive(Debug, Clone, Copy)]
pub struct FuzzConfig {
    pub count: u64,
    pub seed: u64,
    pub max_m: usize,
    pub max_n: usize,
    pub range: (i64, i64),
    pub oracle: OracleChoice,
    pub float: bool,
    pub eps: f64,
    pub ceiling: u64,
    pub enum_limit: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub index: u64,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub scheme: &'static str,
    pub sorted_feasible: bool,
    pub unsorted_feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux_feasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerate_feasible: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub count: u64,
    pub agreed: u64,
    pub mismatches: Vec<Mismatch>,
}

fn scheme_for(index: u64) -> (Scheme, &'static str) {
    match index % 3 {
        0 => (Scheme::Random, "random"),
        1 => (Scheme::InfeasibleBiased, "infeasible-biased"),
        _ => (Scheme::NegativeB, "negative-b"),
    }
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, Error> {
    let tol = if cfg.float { Tolerance::new(cfg.eps)? } else { Tolerance::EXACT };
    let mut meta = SplitMix64::new(cfg.seed);
    let mut summary = FuzzSummary { count: cfg.count, agreed: 0, mismatches: Vec::new() };

    for index in 0..cfg.count {
        let m = meta.usize_in(1, cfg.max_m);
        let n = meta.usize_in(m, cfg.max_n);
        let seed = meta.next_u64();
        let (scheme, scheme_name) = scheme_for(index);
        let raw = generate_instance_raw(seed, m, n, cfg.range, scheme)?;

        let check = if cfg.float {
            let p = raw.to_problem::<f64>();
            cross_check(&p, &tol, cfg.enum_limit, cfg.ceiling)?.verdicts()
        } else {
            let p = raw.to_problem::<Rational>();
            cross_check(&p, &tol, cfg.enum_limit, cfg.ceiling)?.verdicts()
        };
        let [sorted, unsorted, aux, enumerate] = check;

        let mut verdicts = vec![sorted, unsorted];
        let aux_feasible = matches!(cfg.oracle, OracleChoice::Aux | OracleChoice::Both)
            .then_some(aux);
        let enumerate_feasible = matches!(cfg.oracle, OracleChoice::Enumerate | OracleChoice::Both)
            .then_some(enumerate);
        verdicts.extend(aux_feasible);
        verdicts.extend(enumerate_feasible);

        if verdicts.iter().all(|&v| v == verdicts[0]) {
            summary.agreed += 1;
        } else {
            summary.mismatches.push(Mismatch {
                index,
                seed,
                m,
                n,
                scheme: scheme_name,
                sorted_feasible: sorted,
                unsorted_feasible: unsorted,
                aux_feasible,
                enumerate_feasible,
            });
        }
    }
    Ok(summary)
}

