//! Randomized invariants: algebraic laws of the scalar layer, tableau
//! geometry under pivot sequences, and soundness of both phase-1 rules
//! against the independent oracles.

use feasolve::oracles::{
    auxiliary_phase1, binomial_saturating, cross_check, enumerate_bases, generate_instance,
    AuxOutcome, Scheme,
};
use feasolve::phase1::{
    run_phase1, select_pivot_sorted, select_pivot_unsorted, Phase1Outcome, PivotDecision,
    PivotRule,
};
use feasolve::phase2::{run_simplex, SimplexStatus};
use feasolve::{Problem, Rational, Scalar, Sign, Tableau, Tolerance};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

const TOL: Tolerance = Tolerance::EXACT;
const CEILING: u64 = 1_000_000;

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn scheme_from(idx: usize) -> Scheme {
    match idx % 3 {
        0 => Scheme::Random,
        1 => Scheme::InfeasibleBiased,
        _ => Scheme::NegativeB,
    }
}

fn instance(seed: u64, m: usize, extra: usize, scheme_idx: usize) -> Problem<Rational> {
    let n = m + extra;
    generate_instance(seed, m, n, (-5, 5), scheme_from(scheme_idx)).unwrap()
}

fn assert_canonical(v: &Rational) {
    assert!(v.denom() > &BigInt::zero(), "denominator must be positive");
    let g = num_integer::Integer::gcd(v.numer(), v.denom());
    assert!(g.is_one() || v.numer().is_zero(), "not in lowest terms: {v}");
}

proptest! {
    #[test]
    fn rational_field_axioms(an in -50i64..=50, ad in 1i64..=20, bn in -50i64..=50, bd in 1i64..=20) {
        let a = rat(an, ad);
        let b = rat(bn, bd);
        prop_assert_eq!(&(a.clone() + b.clone() - b.clone()), &a);
        assert_canonical(&(a.clone() + b.clone()));
        assert_canonical(&(a.clone() * b.clone()));
        if !b.is_zero() {
            prop_assert_eq!(&(a.clone() * b.clone() / b.clone()), &a);
        }
    }

    #[test]
    fn classify_sign_is_antisymmetric(x in -1e6f64..1e6, eps in 0f64..1e-3) {
        let tol = Tolerance::new(eps).unwrap();
        if x.abs() > eps {
            let s = x.classify_sign(&tol).unwrap();
            prop_assert_eq!((-x).classify_sign(&tol).unwrap(), s.flip());
        }
    }

    #[test]
    fn rational_classify_sign_matches_sign(n in -100i64..=100, d in 1i64..=40) {
        let v = rat(n, d);
        let expected = match n.cmp(&0) {
            core::cmp::Ordering::Less => Sign::Negative,
            core::cmp::Ordering::Equal => Sign::Zero,
            core::cmp::Ordering::Greater => Sign::Positive,
        };
        prop_assert_eq!(v.classify_sign(&TOL).unwrap(), expected);
    }

    #[test]
    fn rational_text_round_trips(n in -10_000i64..=10_000, d in 1i64..=999) {
        let v = rat(n, d);
        prop_assert_eq!(feasolve::rational_of_string(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn residual_matches_naive_double_loop(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        let p = instance(seed, m, extra, 0);
        let n = p.num_cols();
        let mut x = Vec::with_capacity(n);
        let mut rng = feasolve::oracles::SplitMix64::new(seed ^ 0xabcd);
        for _ in 0..n {
            x.push(Rational::from_int(rng.int_in(-4, 4)));
        }
        let fast = p.residual(&x).unwrap();
        for i in 0..p.num_rows() {
            let mut acc = Rational::zero();
            for j in 0..n {
                acc += p.a[i][j].clone() * x[j].clone();
            }
            acc -= p.b[i].clone();
            prop_assert_eq!(&fast[i], &acc);
        }
    }

    #[test]
    fn tableau_invariants_survive_pivot_sequences(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        let p = instance(seed, m, extra, 0);
        let Ok((mut t, _)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let mut rng = feasolve::oracles::SplitMix64::new(seed ^ 0x5151);
        for _ in 0..5 {
            // All legal exchanges available right now.
            let mut legal = Vec::new();
            for i in 0..t.num_rows() {
                for j in 0..t.num_cols() {
                    if !t.row_basis().contains(&j)
                        && !t.entry(i, j).classify_sign(&TOL).unwrap().is_zero()
                    {
                        legal.push((i, j));
                    }
                }
            }
            if legal.is_empty() {
                break;
            }
            let (i, j) = legal[rng.usize_in(0, legal.len() - 1)];
            t = t.pivot(i, j, &TOL).unwrap();

            // Sorted-identity invariant.
            prop_assert!(t.is_row_sorted());
            for (k, &jk) in t.row_basis().iter().enumerate() {
                for r in 0..t.num_rows() {
                    let expect = if r == k { Rational::one() } else { Rational::zero() };
                    prop_assert_eq!(t.entry(r, jk), &expect);
                }
            }
            // Scheme equivalence: the basic solution solves the reduced system exactly.
            let x = t.basic_solution();
            for v in t.problem().residual(&x).unwrap() {
                prop_assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn pivot_is_an_involution(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        let p = instance(seed, m, extra, 0);
        let Ok((t, _)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let mut legal = Vec::new();
        for i in 0..t.num_rows() {
            for j in 0..t.num_cols() {
                if !t.row_basis().contains(&j)
                    && !t.entry(i, j).classify_sign(&TOL).unwrap().is_zero()
                {
                    legal.push((i, j));
                }
            }
        }
        let mut rng = feasolve::oracles::SplitMix64::new(seed ^ 0x1dea);
        if legal.is_empty() {
            return Ok(());
        }
        let (i, j) = legal[rng.usize_in(0, legal.len() - 1)];
        let leaving = t.row_basis()[i];
        let t2 = t.pivot(i, j, &TOL).unwrap();
        let back_row = t2.row_basis().iter().position(|&c| c == j).unwrap();
        let t3 = t2.pivot(back_row, leaving, &TOL).unwrap();
        prop_assert_eq!(t3.matrix(), t.matrix());
        prop_assert_eq!(t3.rhs(), t.rhs());
        prop_assert_eq!(t3.row_basis(), t.row_basis());
    }

    #[test]
    fn basis_inverse_rows_reproduce_the_scheme(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        let p = instance(seed, m, extra, 0);
        let Ok((t, _)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let red = t.problem();
        for i in 0..t.num_rows() {
            let y = t.basis_inverse_row(i, &TOL).unwrap();
            for j in 0..t.num_cols() {
                let mut dot = Rational::zero();
                for r in 0..t.num_rows() {
                    dot += y[r].clone() * red.a[r][j].clone();
                }
                prop_assert_eq!(&dot, t.entry(i, j));
            }
            let mut yb = Rational::zero();
            for r in 0..t.num_rows() {
                yb += y[r].clone() * red.b[r].clone();
            }
            prop_assert_eq!(&yb, &t.rhs()[i]);
        }
    }

    #[test]
    fn phase1_is_sound_and_never_repeats_a_basis(
        seed in any::<u64>(),
        m in 1usize..=4,
        extra in 0usize..=4,
        scheme_idx in 0usize..3,
        rule_idx in 0usize..2,
    ) {
        let p = instance(seed, m, extra, scheme_idx);
        let rule = if rule_idx == 0 { PivotRule::Sorted } else { PivotRule::Unsorted };
        let Ok((t, rank)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let cap = binomial_saturating(p.num_cols() as u64, rank.rank as u64).min(CEILING);
        let report = run_phase1(t, rule, &TOL, cap).unwrap();
        prop_assert!(report.iterations <= cap);

        // No column base occurs twice along the run.
        let mut seen = std::collections::BTreeSet::new();
        for step in &report.trace {
            prop_assert!(seen.insert(step.basis.clone()), "repeated basis {:?}", step.basis);
            // The entering column is never basic at decision time.
            prop_assert!(!step.basis.contains(step.entering));
        }

        match &report.outcome {
            Phase1Outcome::Feasible(t) => {
                prop_assert!(seen.insert(t.basis()), "final basis repeats an earlier one");
                let x = t.basic_solution();
                for v in &x {
                    prop_assert!(!v.classify_sign(&TOL).unwrap().is_negative());
                }
                // Exact on the original system, dropped rows included.
                for v in p.residual(&x).unwrap() {
                    prop_assert!(v.is_zero());
                }
            }
            Phase1Outcome::Infeasible(cert) => {
                // Verify the certificate by direct multiplication against the
                // reduced rows of the original data.
                let red = Tableau::initial(&p, &TOL).unwrap().0.problem().clone();
                for j in 0..red.num_cols() {
                    let mut dot = Rational::zero();
                    for r in 0..red.num_rows() {
                        dot += cert.y[r].clone() * red.a[r][j].clone();
                    }
                    prop_assert!(!dot.classify_sign(&TOL).unwrap().is_negative());
                }
                let mut yb = Rational::zero();
                for r in 0..red.num_rows() {
                    yb += cert.y[r].clone() * red.b[r].clone();
                }
                prop_assert!(yb.classify_sign(&TOL).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn both_rules_select_the_same_exchange(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        // Run the two variants side by side: row bookkeeping differs but the
        // (leaving, entering) column pair must match step for step.
        let p = instance(seed, m, extra, 2);
        let Ok((t0, _)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let mut sorted_t = t0.clone();
        let mut unsorted_t = t0;
        for _ in 0..200 {
            let ds = select_pivot_sorted(&sorted_t, &TOL).unwrap();
            let du = select_pivot_unsorted(&unsorted_t, &TOL).unwrap();
            match (ds, du) {
                (PivotDecision::AlreadyFeasible, PivotDecision::AlreadyFeasible) => return Ok(()),
                (
                    PivotDecision::InfeasibleRow { row: rs },
                    PivotDecision::InfeasibleRow { row: ru },
                ) => {
                    prop_assert_eq!(sorted_t.row_basis()[rs], unsorted_t.row_basis()[ru]);
                    return Ok(());
                }
                (
                    PivotDecision::Pivot { row: rs, entering: es, leaving: ls },
                    PivotDecision::Pivot { row: ru, entering: eu, leaving: lu },
                ) => {
                    prop_assert_eq!(es, eu);
                    prop_assert_eq!(ls, lu);
                    sorted_t = sorted_t.pivot(rs, es, &TOL).unwrap();
                    unsorted_t = unsorted_t.pivot_unsorted(ru, eu, &TOL).unwrap();
                }
                (a, b) => prop_assert!(false, "rules diverged: {a:?} vs {b:?}"),
            }
        }
        prop_assert!(false, "no termination within the step budget");
    }

    #[test]
    fn verdicts_agree_with_both_oracles(
        seed in any::<u64>(),
        m in 1usize..=4,
        extra in 0usize..=4,
        scheme_idx in 0usize..3,
    ) {
        let p = instance(seed, m, extra, scheme_idx);
        let check = cross_check(&p, &TOL, 100_000, CEILING).unwrap();
        prop_assert!(check.agree(), "verdicts {:?}", check.verdicts());
    }

    #[test]
    fn phase2_agrees_with_brute_force(
        seed in any::<u64>(),
        m in 1usize..=4,
        extra in 0usize..=4,
    ) {
        let p = instance(seed, m, extra, 2);
        let Ok((t, rank)) = Tableau::initial(&p, &TOL) else { return Ok(()) };
        let cap = binomial_saturating(p.num_cols() as u64, rank.rank as u64).min(CEILING);
        let report = run_phase1(t, PivotRule::Sorted, &TOL, cap).unwrap();
        let Phase1Outcome::Feasible(t) = report.outcome else { return Ok(()) };

        let run = run_simplex(t, &p.c, &TOL, CEILING).unwrap();
        let e = enumerate_bases(&p, &TOL, 100_000).unwrap();

        // No repeated basis in the phase-2 trace either.
        let mut seen = std::collections::BTreeSet::new();
        for step in &run.trace {
            prop_assert!(seen.insert(step.basis.clone()));
        }

        match &run.status {
            SimplexStatus::Optimal { objective } => {
                prop_assert!(!e.has_improving_ray, "brute force found a ray but simplex stopped");
                prop_assert_eq!(Some(objective.clone()), e.min_objective);

                // Optimality certificate: nonbasic reduced costs are all
                // nonnegative, recomputed from the original objective.
                let t = &run.tableau;
                for j in 0..t.num_cols() {
                    let mut r = p.c[j].clone();
                    for (k, &jk) in t.row_basis().iter().enumerate() {
                        r -= p.c[jk].clone() * t.entry(k, j).clone();
                    }
                    prop_assert!(!r.classify_sign(&TOL).unwrap().is_negative());
                }
                prop_assert_eq!(&p.objective_value(&run.solution()).unwrap(), objective);
            }
            SimplexStatus::Unbounded { ray } => {
                let ray = ray.clone();
                prop_assert!(e.has_improving_ray, "simplex found a ray brute force missed");
                // Ray certificate: d >= 0, Ad = 0 exactly, c'd < 0.
                for v in &ray {
                    prop_assert!(!v.classify_sign(&TOL).unwrap().is_negative());
                }
                for i in 0..p.num_rows() {
                    let mut acc = Rational::zero();
                    for j in 0..p.num_cols() {
                        acc += p.a[i][j].clone() * ray[j].clone();
                    }
                    prop_assert!(acc.is_zero());
                }
                let cd = p.objective_value(&ray).unwrap();
                prop_assert!(cd.classify_sign(&TOL).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn auxiliary_feasible_tableau_is_a_valid_bfs(seed in any::<u64>(), m in 1usize..=4, extra in 0usize..=4) {
        let p = instance(seed, m, extra, 2);
        match auxiliary_phase1(&p, &TOL, CEILING) {
            Ok(AuxOutcome::Feasible(t)) => {
                let x = t.basic_solution();
                for v in &x {
                    prop_assert!(!v.classify_sign(&TOL).unwrap().is_negative());
                }
                for v in p.residual(&x).unwrap() {
                    prop_assert!(v.is_zero());
                }
            }
            Ok(AuxOutcome::Infeasible { .. }) => {}
            Err(e) => prop_assert!(false, "auxiliary oracle failed: {e}"),
        }
    }
}
