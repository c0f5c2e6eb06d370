//! Independent ground-truth generators for differential testing.
//!
//! Two oracles decide feasibility without touching the phase-1 exchange
//! rule: the classical auxiliary problem (minimize the sum of artificial
//! variables over `[A | I]`), and exhaustive enumeration of all column
//! bases. The enumeration deliberately carries its own row reduction and
//! its own little Gauss solver so it shares no elimination code with the
//! tableau module. A seeded generator produces the random instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::phase1::{run_phase1, Phase1Report, PivotRule};
use crate::phase2::{run_simplex, SimplexStatus};
use crate::tableau::{Basis, RankReport};
use crate::{Error, Problem, Rational, Result, Scalar, Sign, Tableau, Tolerance};

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial_saturating(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = match acc.checked_mul((n - k + i) as u128) {
            Some(v) => v,
            None => return u64::MAX,
        };
        acc /= i as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

// ---------------------------------------------------------------------------
// Auxiliary problem
// ---------------------------------------------------------------------------

/// The extended problem `min sum(t)` s.t. `A'x + t = b'`, `x, t >= 0`, where
/// rows with negative right-hand side were multiplied by -1 so that the
/// artificial columns form a feasible start basis with `t = b'`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxiliaryProblem<S> {
    pub extended: Problem<S>,
    /// 0-based input rows that were negated during normalization.
    pub negated_rows: Vec<usize>,
    /// Column index where the artificial block starts (= original `n`).
    pub artificial_offset: usize,
}

pub fn build_auxiliary<S: Scalar>(p: &Problem<S>, tol: &Tolerance) -> Result<AuxiliaryProblem<S>> {
    p.validate()?;
    let m = p.num_rows();
    let n = p.num_cols();

    let mut negated_rows = Vec::new();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for i in 0..m {
        let negate = p.b[i].classify_sign(tol)?.is_negative();
        if negate {
            negated_rows.push(i);
        }
        let mut row: Vec<S> = p.a[i]
            .iter()
            .map(|v| if negate { -v.clone() } else { v.clone() })
            .collect();
        for k in 0..m {
            row.push(if k == i { S::one() } else { S::zero() });
        }
        a.push(row);
        b.push(if negate { -p.b[i].clone() } else { p.b[i].clone() });
    }
    let mut c = vec![S::zero(); n];
    c.extend((0..m).map(|_| S::one()));

    Ok(AuxiliaryProblem {
        extended: Problem { a, b, c },
        negated_rows,
        artificial_offset: n,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum AuxOutcome<S> {
    /// The auxiliary optimum is zero; the tableau is a feasible basis of the
    /// original problem, over its rank-reduced rows.
    Feasible(Tableau<S>),
    /// The auxiliary optimum is positive, so `Ax = b, x >= 0` is unsolvable.
    Infeasible { optimum: S },
}

/// Classical phase 1: solve the auxiliary problem from the all-artificial
/// basis, then convert its optimal basis into one over the original columns.
/// Artificial columns stuck at zero level are pivoted out on the first
/// nonzero original entry in their row; rows without one are redundant and
/// dropped.
pub fn auxiliary_phase1<S: Scalar>(
    p: &Problem<S>,
    tol: &Tolerance,
    max_iter: u64,
) -> Result<AuxOutcome<S>> {
    let aux = build_auxiliary(p, tol)?;
    let m = p.num_rows();
    let off = aux.artificial_offset;

    let start_basis = Basis::new((off..off + m).collect(), off + m)?;
    let start = Tableau::from_basis(&aux.extended, &start_basis, tol)?;
    let run = run_simplex(start, &aux.extended.c, tol, max_iter)?;

    let optimum = match run.status {
        SimplexStatus::Optimal { objective } => objective,
        SimplexStatus::Unbounded { .. } => {
            return Err(Error::Internal("auxiliary objective is bounded below by zero"))
        }
    };
    match optimum.classify_sign(tol)? {
        Sign::Positive => return Ok(AuxOutcome::Infeasible { optimum }),
        Sign::Negative => return Err(Error::Internal("auxiliary optimum is negative")),
        Sign::Zero => {}
    }

    // Drive artificial columns out of the basis.
    let mut t = run.tableau;
    loop {
        let mut pivoted = false;
        'scan: for k in 0..t.num_rows() {
            if t.row_basis()[k] < off {
                continue;
            }
            for j in 0..off {
                if !t.entry(k, j).classify_sign(tol)?.is_zero() {
                    t = t.pivot(k, j, tol)?;
                    pivoted = true;
                    break 'scan;
                }
            }
        }
        if !pivoted {
            break;
        }
    }
    let original_basis: Vec<usize> =
        t.row_basis().iter().copied().filter(|&j| j < off).collect();

    // Express the feasible basis over the canonically reduced original rows.
    let (reduced, _) = Tableau::initial(p, tol)?;
    if original_basis.len() != reduced.num_rows() {
        return Err(Error::Internal("driven-out auxiliary basis has the wrong size"));
    }
    if reduced.num_rows() == 0 {
        // Every row was redundant; the empty basis is the answer.
        return Ok(AuxOutcome::Feasible(reduced));
    }
    let basis = Basis::new(original_basis, p.num_cols())?;
    let feasible = Tableau::from_basis(reduced.problem(), &basis, tol)?;
    Ok(AuxOutcome::Feasible(feasible))
}

// ---------------------------------------------------------------------------
// Exhaustive basis enumeration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct EnumeratedBasis<S> {
    pub basis: Basis,
    pub x: Vec<S>,
    pub feasible: bool,
    pub objective: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisEnumeration<S> {
    /// One entry per regular column subset, in lexicographic order.
    pub entries: Vec<EnumeratedBasis<S>>,
    /// True iff some basic solution is feasible.
    pub feasible: bool,
    /// True iff the equality system itself has no solution.
    pub inconsistent: bool,
    /// Minimum objective over feasible basic solutions.
    pub min_objective: Option<S>,
    /// True iff some feasible basis exposes an improving ray
    /// (`d >= 0`, `Ad = 0`, `c'd < 0`): the problem is unbounded if feasible.
    pub has_improving_ray: bool,
}

/// Test every `rank`-subset of columns of the row-reduced system for
/// regularity, record the basic solution of each regular one, and derive
/// feasibility, the brute-force optimum, and unboundedness.
pub fn enumerate_bases<S: Scalar>(
    p: &Problem<S>,
    tol: &Tolerance,
    limit: u64,
) -> Result<BasisEnumeration<S>> {
    p.validate()?;
    let n = p.num_cols();

    let Some(kept) = echelon_kept_rows(p, tol)? else {
        return Ok(BasisEnumeration {
            entries: Vec::new(),
            feasible: false,
            inconsistent: true,
            min_objective: None,
            has_improving_ray: false,
        });
    };
    let r = kept.len();
    let a_red: Vec<Vec<S>> = kept.iter().map(|&i| p.a[i].clone()).collect();
    let b_red: Vec<S> = kept.iter().map(|&i| p.b[i].clone()).collect();

    let total = binomial_saturating(n as u64, r as u64);
    if total > limit {
        return Err(Error::OracleTooLarge { bases: total, limit });
    }

    let mut entries = Vec::new();
    let mut min_objective: Option<S> = None;
    let mut has_improving_ray = false;

    let mut combos = Combinations::new(n, r);
    while let Some(cols) = combos.next() {
        let Some((x_basic, _)) = solve_subset(&a_red, &b_red, cols, tol, false)? else {
            continue;
        };
        let mut x = vec![S::zero(); n];
        let mut feasible = true;
        for (k, &j) in cols.iter().enumerate() {
            if x_basic[k].classify_sign(tol)?.is_negative() {
                feasible = false;
            }
            x[j] = x_basic[k].clone();
        }
        let objective = p.objective_value(&x)?;

        if feasible {
            min_objective = Some(match min_objective {
                None => objective.clone(),
                Some(best) => {
                    if (objective.clone() - best.clone()).classify_sign(tol)?.is_negative() {
                        objective.clone()
                    } else {
                        best
                    }
                }
            });
            if !has_improving_ray {
                let (_, w) = solve_subset(&a_red, &b_red, cols, tol, true)?
                    .ok_or(Error::Internal("regular basis became singular on re-solve"))?;
                let w = w.ok_or(Error::Internal("transformed matrix missing"))?;
                has_improving_ray = improving_ray_exists(p, cols, &w, tol)?;
            }
        }

        entries.push(EnumeratedBasis {
            basis: Basis::new(cols.to_vec(), n)?,
            x,
            feasible,
            objective,
        });
    }

    let feasible = entries.iter().any(|e| e.feasible);
    Ok(BasisEnumeration { entries, feasible, inconsistent: false, min_objective, has_improving_ray })
}

/// Row echelon pass used only by the enumeration oracle. Returns the original
/// indices of an independent spanning row set, or `None` when some dependent
/// row reduces to `0 = beta` with nonzero `beta`.
fn echelon_kept_rows<S: Scalar>(p: &Problem<S>, tol: &Tolerance) -> Result<Option<Vec<usize>>> {
    let m = p.num_rows();
    let n = p.num_cols();
    let mut a = p.a.clone();
    let mut b = p.b.clone();
    let mut orig: Vec<usize> = (0..m).collect();
    let mut rank = 0usize;

    for col in 0..n {
        if rank == m {
            break;
        }
        let mut chosen: Option<usize> = None;
        for row in rank..m {
            if a[row][col].classify_sign(tol)?.is_zero() {
                continue;
            }
            match chosen {
                None => chosen = Some(row),
                Some(best) => {
                    if a[row][col].better_pivot(&a[best][col]) {
                        chosen = Some(row);
                    }
                }
            }
        }
        let Some(pr) = chosen else { continue };
        a.swap(rank, pr);
        b.swap(rank, pr);
        orig.swap(rank, pr);
        // Eliminate below the pivot only; no normalization.
        for row in rank + 1..m {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / a[rank][col].clone();
            for k in 0..n {
                a[row][k] = a[row][k].clone() - factor.clone() * a[rank][k].clone();
            }
            a[row][col] = S::zero();
            b[row] = b[row].clone() - factor * b[rank].clone();
        }
        rank += 1;
    }

    for row in rank..m {
        if !b[row].classify_sign(tol)?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(orig[..rank].to_vec()))
}

/// Solve the basis system by Gauss-Jordan on an augmented block, returning
/// the basic values (and, when `with_matrix` is set, the transformed matrix
/// `A_J⁻¹A` used by the ray check), or `None` when the column subset is
/// singular.
#[allow(clippy::type_complexity)]
fn solve_subset<S: Scalar>(
    a: &[Vec<S>],
    b: &[S],
    cols: &[usize],
    tol: &Tolerance,
    with_matrix: bool,
) -> Result<Option<(Vec<S>, Option<Vec<Vec<S>>>)>> {
    let r = cols.len();
    let n = if a.is_empty() { 0 } else { a[0].len() };
    let width = r + if with_matrix { n } else { 0 } + 1;
    let mut aug: Vec<Vec<S>> = (0..r)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for &j in cols {
                row.push(a[i][j].clone());
            }
            if with_matrix {
                row.extend(a[i].iter().cloned());
            }
            row.push(b[i].clone());
            row
        })
        .collect();

    for col in 0..r {
        let mut chosen: Option<usize> = None;
        for row in col..r {
            if aug[row][col].classify_sign(tol)?.is_zero() {
                continue;
            }
            match chosen {
                None => chosen = Some(row),
                Some(best) => {
                    if aug[row][col].better_pivot(&aug[best][col]) {
                        chosen = Some(row);
                    }
                }
            }
        }
        let Some(pr) = chosen else {
            return Ok(None);
        };
        aug.swap(col, pr);
        let piv = aug[col][col].clone();
        for k in 0..width {
            if k == col {
                continue;
            }
            aug[col][k] = aug[col][k].clone() / piv.clone();
        }
        aug[col][col] = S::one();
        for row in 0..r {
            if row == col {
                continue;
            }
            let f = aug[row][col].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..width {
                if k == col {
                    continue;
                }
                aug[row][k] = aug[row][k].clone() - f.clone() * aug[col][k].clone();
            }
            aug[row][col] = S::zero();
        }
    }

    let x_basic: Vec<S> = aug.iter().map(|row| row[width - 1].clone()).collect();
    let w = with_matrix
        .then(|| aug.into_iter().map(|row| row[r..r + n].to_vec()).collect());
    Ok(Some((x_basic, w)))
}

/// Whether the feasible basis `cols` (with transformed matrix `w`) exposes a
/// nonbasic column whose ray is feasible and improving.
fn improving_ray_exists<S: Scalar>(
    p: &Problem<S>,
    cols: &[usize],
    w: &[Vec<S>],
    tol: &Tolerance,
) -> Result<bool> {
    let n = p.num_cols();
    'columns: for j in 0..n {
        if cols.contains(&j) {
            continue;
        }
        for row in w {
            if row[j].classify_sign(tol)?.is_positive() {
                continue 'columns;
            }
        }
        let mut rc = p.c[j].clone();
        for (k, &jk) in cols.iter().enumerate() {
            rc = rc - p.c[jk].clone() * w[k][j].clone();
        }
        if rc.classify_sign(tol)?.is_negative() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Lexicographic k-subsets of `{0, .., n-1}`.
struct Combinations {
    cur: Vec<usize>,
    n: usize,
    k: usize,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { cur: (0..k).collect(), n, k, started: false, done: k > n }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        if self.k == 0 {
            self.done = true;
            return None;
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.cur[i] < self.n - (self.k - i) {
                self.cur[i] += 1;
                for t in i + 1..self.k {
                    self.cur[t] = self.cur[t - 1] + 1;
                }
                return Some(&self.cur);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

/// Tiny deterministic generator (splitmix64); enough for instance synthesis
/// and reproducible across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u128;
        (lo as i128 + (self.next_u64() as u128 % span) as i128) as i64
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.int_in(lo as i64, hi as i64) as usize
    }
}

/// How generated instances are shaped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Uniform entries everywhere.
    Random,
    /// One row is planted with nonnegative coefficients and a negative
    /// right-hand side, which makes the instance infeasible outright.
    InfeasibleBiased,
    /// Redraw until the initial tableau has a negative right-hand side, so
    /// phase 1 has work to do (bounded retries, falls back to the last draw).
    NegativeB,
}

/// Integer instance as drawn, before conversion to a scalar type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInstance {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

pub fn generate_instance_raw(
    seed: u64,
    m: usize,
    n: usize,
    range: (i64, i64),
    scheme: Scheme,
) -> Result<RawInstance> {
    if m < 1 || n < m {
        return Err(Error::Contract("instance shape requires 1 <= m <= n"));
    }
    let (lo, hi) = range;
    if lo > hi {
        return Err(Error::Contract("entry range requires lo <= hi"));
    }
    let mut rng = SplitMix64::new(seed);

    match scheme {
        Scheme::Random => Ok(draw(&mut rng, m, n, lo, hi)),
        Scheme::InfeasibleBiased => {
            let mut raw = draw(&mut rng, m, n, lo, hi);
            let planted = rng.usize_in(0, m - 1);
            for v in raw.a[planted].iter_mut() {
                *v = rng.int_in(lo.max(0), hi.max(0));
            }
            raw.b[planted] = if lo <= -1 { rng.int_in(lo, hi.min(-1)) } else { -1 };
            Ok(raw)
        }
        Scheme::NegativeB => {
            let mut last = None;
            for _ in 0..256 {
                let raw = draw(&mut rng, m, n, lo, hi);
                let p: Problem<Rational> = raw.to_problem();
                match Tableau::initial(&p, &Tolerance::EXACT) {
                    Ok((t, _)) => {
                        let mut has_negative = false;
                        for v in t.rhs() {
                            if v.classify_sign(&Tolerance::EXACT)?.is_negative() {
                                has_negative = true;
                                break;
                            }
                        }
                        if has_negative {
                            return Ok(raw);
                        }
                    }
                    Err(Error::Inconsistent { .. }) => {}
                    Err(e) => return Err(e),
                }
                last = Some(raw);
            }
            Ok(last.expect("at least one draw"))
        }
    }
}

fn draw(rng: &mut SplitMix64, m: usize, n: usize, lo: i64, hi: i64) -> RawInstance {
    let a = (0..m)
        .map(|_| (0..n).map(|_| rng.int_in(lo, hi)).collect())
        .collect();
    let b = (0..m).map(|_| rng.int_in(lo, hi)).collect();
    let c = (0..n).map(|_| rng.int_in(lo, hi)).collect();
    RawInstance { a, b, c }
}

impl RawInstance {
    pub fn to_problem<S: Scalar>(&self) -> Problem<S> {
        Problem {
            a: self
                .a
                .iter()
                .map(|row| row.iter().map(|&v| S::from_int(v)).collect())
                .collect(),
            b: self.b.iter().map(|&v| S::from_int(v)).collect(),
            c: self.c.iter().map(|&v| S::from_int(v)).collect(),
        }
    }
}

/// Deterministic random instance in the requested scalar type. The same seed
/// yields the same instance for every scalar type.
pub fn generate_instance<S: Scalar>(
    seed: u64,
    m: usize,
    n: usize,
    range: (i64, i64),
    scheme: Scheme,
) -> Result<Problem<S>> {
    Ok(generate_instance_raw(seed, m, n, range, scheme)?.to_problem())
}

// ---------------------------------------------------------------------------
// Differential harness
// ---------------------------------------------------------------------------

/// Every feasibility verdict this crate can produce for one instance, plus
/// the data needed to audit them.
#[derive(Clone, Debug)]
pub struct CrossCheck<S> {
    /// Initial tableau and rank report; `None` when the system is
    /// inconsistent.
    pub initial: Option<(Tableau<S>, RankReport<S>)>,
    /// 0-based original row witnessing inconsistency.
    pub inconsistent_row: Option<usize>,
    pub sorted: Option<Phase1Report<S>>,
    pub unsorted: Option<Phase1Report<S>>,
    pub aux: AuxOutcome<S>,
    pub enumeration: BasisEnumeration<S>,
}

impl<S> CrossCheck<S> {
    /// The four verdicts (sorted rule, unsorted rule, auxiliary problem,
    /// enumeration), each `true` for feasible. An inconsistent system counts
    /// as infeasible for the pivot rules.
    pub fn verdicts(&self) -> [bool; 4] {
        [
            self.sorted.as_ref().is_some_and(Phase1Report::is_feasible),
            self.unsorted.as_ref().is_some_and(Phase1Report::is_feasible),
            matches!(self.aux, AuxOutcome::Feasible(_)),
            self.enumeration.feasible,
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&x| x == v[0])
    }
}

/// Run both phase-1 rules and both oracles on one instance.
pub fn cross_check<S: Scalar>(
    p: &Problem<S>,
    tol: &Tolerance,
    enum_limit: u64,
    iter_ceiling: u64,
) -> Result<CrossCheck<S>> {
    let (initial, inconsistent_row, sorted, unsorted) = match Tableau::initial(p, tol) {
        Ok((t, report)) => {
            let cap =
                binomial_saturating(p.num_cols() as u64, report.rank as u64).min(iter_ceiling);
            let sorted = run_phase1(t.clone(), PivotRule::Sorted, tol, cap)?;
            let unsorted = run_phase1(t.clone(), PivotRule::Unsorted, tol, cap)?;
            (Some((t, report)), None, Some(sorted), Some(unsorted))
        }
        Err(Error::Inconsistent { row }) => (None, Some(row), None, None),
        Err(e) => return Err(e),
    };
    let aux = auxiliary_phase1(p, tol, iter_ceiling)?;
    let enumeration = enumerate_bases(p, tol, enum_limit)?;
    Ok(CrossCheck { initial, inconsistent_row, sorted, unsorted, aux, enumeration })
}
