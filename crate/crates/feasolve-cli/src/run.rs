//! Full solve pipeline: Gaussian start, phase 1, optionally phase 2, plus the
//! float-mode qualification checks and oracle verification.

use feasolve::oracles::{
    auxiliary_phase1, binomial_saturating, enumerate_bases, AuxOutcome,
};
use feasolve::phase1::{run_phase1, Phase1Outcome, Phase1Report, PivotRule};
use feasolve::phase2::{run_simplex, SimplexRun, SimplexStatus};
use feasolve::{Error, Problem, RankReport, Scalar, Tableau, Tolerance};

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub rule: PivotRule,
    pub tol: Tolerance,
    /// Hard cap on pivots per phase; the effective phase-1 bound is
    /// `min(C(n, rank), ceiling)`.
    pub ceiling: u64,
    /// Run phase 2 after a feasible phase 1.
    pub phase2: bool,
}

#[derive(Debug, Clone)]
pub enum Outcome<S> {
    Inconsistent { row: usize },
    Infeasible { phase1: Phase1Report<S> },
    Feasible { phase1: Phase1Report<S> },
    Optimal { phase1: Phase1Report<S>, simplex: SimplexRun<S> },
    Unbounded { phase1: Phase1Report<S>, simplex: SimplexRun<S> },
}

#[derive(Debug, Clone)]
pub struct Pipeline<S> {
    pub outcome: Outcome<S>,
    /// Gaussian start; `None` only for inconsistent systems.
    pub initial: Option<(Tableau<S>, RankReport<S>)>,
}

impl<S: Scalar> Pipeline<S> {
    /// Feasibility verdict, treating inconsistent systems as infeasible.
    pub fn feasible(&self) -> bool {
        !matches!(self.outcome, Outcome::Inconsistent { .. } | Outcome::Infeasible { .. })
    }

    /// The solution vector the report will carry, if any.
    pub fn solution(&self) -> Option<Vec<S>> {
        match &self.outcome {
            Outcome::Inconsistent { .. } | Outcome::Infeasible { .. } => None,
            Outcome::Feasible { phase1 } => match &phase1.outcome {
                Phase1Outcome::Feasible(t) => Some(t.basic_solution()),
                Phase1Outcome::Infeasible(_) => None,
            },
            Outcome::Optimal { simplex, .. } | Outcome::Unbounded { simplex, .. } => {
                Some(simplex.solution())
            }
        }
    }
}

pub fn run_pipeline<S: Scalar>(p: &Problem<S>, opts: &PipelineOptions) -> Result<Pipeline<S>, Error> {
    let (start, rank) = match Tableau::initial(p, &opts.tol) {
        Ok(pair) => pair,
        Err(Error::Inconsistent { row }) => {
            return Ok(Pipeline { outcome: Outcome::Inconsistent { row }, initial: None });
        }
        Err(e) => return Err(e),
    };
    let cap = binomial_saturating(p.num_cols() as u64, rank.rank as u64).min(opts.ceiling);
    let phase1 = run_phase1(start.clone(), opts.rule, &opts.tol, cap)?;

    let outcome = match &phase1.outcome {
        Phase1Outcome::Infeasible(_) => Outcome::Infeasible { phase1 },
        Phase1Outcome::Feasible(t) => {
            if opts.phase2 {
                let simplex = run_simplex(t.clone(), &p.c, &opts.tol, opts.ceiling)?;
                match simplex.status {
                    SimplexStatus::Optimal { .. } => Outcome::Optimal { phase1, simplex },
                    SimplexStatus::Unbounded { .. } => Outcome::Unbounded { phase1, simplex },
                }
            } else {
                Outcome::Feasible { phase1 }
            }
        }
    };
    Ok(Pipeline { outcome, initial: Some((start, rank)) })
}

/// Post-hoc qualification of a float run: feasible verdicts must have a small
/// residual, certificates must be decisively signed, rays must be nearly
/// exact. Returns `true` when the verdict should be treated as numerically
/// suspect.
pub fn float_suspect(p: &Problem<f64>, pipe: &Pipeline<f64>) -> bool {
    let b_scale = 1.0 + inf_norm(&p.b);
    match &pipe.outcome {
        Outcome::Inconsistent { .. } => false,
        Outcome::Infeasible { phase1 } => {
            let Phase1Outcome::Infeasible(cert) = &phase1.outcome else {
                return true;
            };
            let Some((initial, _)) = &pipe.initial else { return true };
            let red = initial.problem();
            let y_scale: f64 = cert.y.iter().map(|v| v.abs()).sum::<f64>();
            let a_max = red.a.iter().map(|row| inf_norm(row)).fold(0.0, f64::max);
            let tol_a = 1e-6 * (1.0 + y_scale * a_max);
            for j in 0..red.num_cols() {
                let dot: f64 = (0..red.num_rows()).map(|r| cert.y[r] * red.a[r][j]).sum();
                if dot < -tol_a {
                    return true;
                }
            }
            let yb: f64 = (0..red.num_rows()).map(|r| cert.y[r] * red.b[r]).sum();
            yb > -1e-9 * (1.0 + y_scale * inf_norm(&red.b))
        }
        Outcome::Feasible { .. } | Outcome::Optimal { .. } => {
            let Some(x) = pipe.solution() else { return true };
            if x.iter().any(|&v| v < -1e-6 * b_scale) {
                return true;
            }
            match p.residual(&x) {
                Ok(res) => inf_norm(&res) > 1e-6 * b_scale,
                Err(_) => true,
            }
        }
        Outcome::Unbounded { simplex, .. } => {
            let SimplexStatus::Unbounded { ray } = &simplex.status else {
                return true;
            };
            let d_scale = 1.0 + inf_norm(ray);
            if ray.iter().any(|&v| v < -1e-6 * d_scale) {
                return true;
            }
            for row in &p.a {
                let dot: f64 = row.iter().zip(ray).map(|(a, d)| a * d).sum();
                if dot.abs() > 1e-6 * d_scale * (1.0 + inf_norm(row)) {
                    return true;
                }
            }
            let cd: f64 = p.c.iter().zip(ray).map(|(c, d)| c * d).sum();
            cd >= 0.0
        }
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Which oracles to consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleChoice {
    Aux,
    Enumerate,
    Both,
}

/// Disagreement found by [`verify_with_oracles`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMismatch {
    pub oracle: &'static str,
    pub solver_feasible: bool,
    pub oracle_feasible: bool,
}

/// Re-derive the feasibility verdict with the requested oracles and compare.
pub fn verify_with_oracles<S: Scalar>(
    p: &Problem<S>,
    pipe: &Pipeline<S>,
    choice: OracleChoice,
    tol: &Tolerance,
    ceiling: u64,
    enum_limit: u64,
) -> Result<Vec<OracleMismatch>, Error> {
    let solver_feasible = pipe.feasible();
    let mut mismatches = Vec::new();
    if matches!(choice, OracleChoice::Aux | OracleChoice::Both) {
        let feasible = matches!(auxiliary_phase1(p, tol, ceiling)?, AuxOutcome::Feasible(_));
        if feasible != solver_feasible {
            mismatches.push(OracleMismatch {
                oracle: "aux",
                solver_feasible,
                oracle_feasible: feasible,
            });
        }
    }
    if matches!(choice, OracleChoice::Enumerate | OracleChoice::Both) {
        let e = enumerate_bases(p, tol, enum_limit)?;
        if e.feasible != solver_feasible {
            mismatches.push(OracleMismatch {
                oracle: "enumerate",
                solver_feasible,
                oracle_feasible: e.feasible,
            });
        }
        // The enumeration also witnesses unboundedness; check it against a
        // completed phase-2 run.
        match &pipe.outcome {
            Outcome::Optimal { .. } if e.has_improving_ray => {
                mismatches.push(OracleMismatch {
                    oracle: "enumerate-ray",
                    solver_feasible,
                    oracle_feasible: e.feasible,
                });
            }
            Outcome::Unbounded { .. } if !e.has_improving_ray => {
                mismatches.push(OracleMismatch {
                    oracle: "enumerate-ray",
                    solver_feasible,
                    oracle_feasible: e.feasible,
                });
            }
            _ => {}
        }
    }
    Ok(mismatches)
}
