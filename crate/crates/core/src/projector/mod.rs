//! The digit projection `f`.
//!
//! `f` takes `x` in `[0, 1]`, writes it in base `r+1` with digits `a_n`, and
//! reads the same digit stream in the redundant base-`s` system:
//! `f(sum a_n (r+1)^-n) = sum a_n s^-n`. Points with two base-`(r+1)`
//! expansions use the one ending in `(0)`; `x = 1` has only `(r)` and maps
//! to `r/(s-1)`.
//!
//! `f` is continuous exactly at points with a unique base-`(r+1)` expansion,
//! jumps at the others, satisfies `f((i+x)/(r+1)) = (i + f(x))/s`, and its
//! graph is the attractor of `r+1` affine maps (see [`graph`]).

pub mod graph;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerals::{Digit, Params, PeriodicRep};
use crate::rational::{int, is_unit_interval, pow, Rational};
use crate::repcensus::{classify_automaton, Cardinality, RemainderAutomaton};

pub use graph::{
    box_count_estimate, graph_sample, ifs_maps, integral_estimate, BoxCount, GraphSample, IfsMap,
    DEFAULT_SAMPLE_BUDGET,
};

/// Base-`(r+1)` expansion of a point of `[0, 1]` in the form `f` reads.
///
/// Terminating values carry the period `(0)`; the only representation with
/// period `(r)` is that of `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalBaseRep(PeriodicRep);

impl CanonicalBaseRep {
    pub fn rep(&self) -> &PeriodicRep {
        &self.0
    }

    pub fn into_rep(self) -> PeriodicRep {
        self.0
    }
}

fn check_unit(x: &Rational) -> Result<()> {
    if !is_unit_interval(x) {
        return Err(Error::Domain(format!(
            "{} is outside [0, 1]",
            crate::format_rational(x)
        )));
    }
    Ok(())
}

/// Long division of `x` in base `r+1`, stopping when a remainder repeats.
pub fn canonical_base_rep(x: &Rational, params: Params) -> Result<CanonicalBaseRep> {
    check_unit(x)?;
    let r = params.r();
    if x.is_one() {
        return Ok(CanonicalBaseRep(PeriodicRep::purely_periodic(r, vec![r])?));
    }
    let base = BigInt::from(params.wide_base());
    let q = x.denom();
    let mut numer = x.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits: Vec<Digit> = Vec::new();
    while !seen.contains_key(&numer) {
        seen.insert(numer.clone(), digits.len());
        let (d, rest) = (&numer * &base).div_rem(q);
        digits.push(d.try_into().expect("digit below base"));
        numer = rest;
    }
    let period = digits.split_off(seen[&numer]);
    Ok(CanonicalBaseRep(PeriodicRep::new(r, digits, period)?))
}

/// `f(x)`, exact.
pub fn f_eval(x: &Rational, params: Params) -> Result<Rational> {
    Ok(canonical_base_rep(x, params)?.0.value(params.s()))
}

/// The rank `m` of a point with two base-`(r+1)` expansions: the least `m`
/// with `x (r+1)^m` an integer. `None` for `0`, `1` and points with a
/// single expansion.
pub fn is_binary_point(x: &Rational, params: Params) -> Result<Option<u32>> {
    check_unit(x)?;
    if x.is_zero() || x.is_one() {
        return Ok(None);
    }
    let base = BigInt::from(params.wide_base());
    let mut q = x.denom().clone();
    let mut m = 0;
    while !q.is_one() {
        let g = q.gcd(&base);
        if g.is_one() {
            return Ok(None);
        }
        q /= g;
        m += 1;
    }
    Ok(Some(m))
}

fn binary_rank(x: &Rational, params: Params) -> Result<u32> {
    is_binary_point(x, params)?.ok_or_else(|| {
        Error::Usage(format!(
            "{} is not a point with two base-{} expansions",
            crate::format_rational(x),
            params.wide_base()
        ))
    })
}

/// `(r-s+1) / (s^m (s-1))`, the jump of `f` at every binary point of rank `m`.
pub fn jump_for_rank(params: Params, m: u32) -> Rational {
    let (s, r) = (params.s() as i64, params.r() as i64);
    int(r - s + 1) / (pow(s as u64, m) * int(s - 1))
}

/// Jump of `f` at the binary point `x`: the left limit minus `f(x)`.
pub fn jump_at(x: &Rational, params: Params) -> Result<Rational> {
    Ok(jump_for_rank(params, binary_rank(x, params)?))
}

/// `f(c_1 .. c_{m-1} [c_m - 1] r^k (0)) - f(c_1 .. c_m (0))`, the gap between
/// `f(x)` and `f` just left of `x`, truncated after `k` digits `r`.
///
/// Rises strictly to [`jump_at`] with error exactly `r / (s^(m+k) (s-1))`.
pub fn one_sided_gap(x: &Rational, params: Params, k: usize) -> Result<Rational> {
    let m = binary_rank(x, params)? as usize;
    if k == 0 {
        return Err(Error::Usage("gap needs k >= 1".into()));
    }
    let canonical = canonical_base_rep(x, params)?.0;
    let mut left = canonical.prefix(m);
    *left.last_mut().expect("rank >= 1") -= 1;
    left.extend(std::iter::repeat(params.r()).take(k));
    let left = PeriodicRep::terminating(params.r(), left)?;
    let left_x = left.value(params.wide_base());
    Ok(f_eval(&left_x, params)? - f_eval(x, params)?)
}

/// Outcome of checking `f((i+x)/(r+1)) = (i + f(x))/s` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalEq {
    /// The canonical expansion of `(i+x)/(r+1)` is `i` followed by that of
    /// `x`, and the values agree exactly.
    Holds,
    /// The canonical expansions disagree (only at `x = 1`, `i < r`); the
    /// identity holds on the digit streams but not on the values of `f`.
    RepresentationOnly,
    /// The identity failed.
    Violated,
}

impl FunctionalEq {
    pub fn holds(&self) -> bool {
        !matches!(self, FunctionalEq::Violated)
    }
}

pub fn check_functional_eq(i: Digit, x: &Rational, params: Params) -> Result<FunctionalEq> {
    params.check_digit(i)?;
    check_unit(x)?;
    let s = params.s() as i64;
    let inner = canonical_base_rep(x, params)?.0;
    let fx = inner.value(params.s());
    let rhs = (int(i as i64) + &fx) / int(s);
    let shifted = inner.shifted_in(i)?;
    let y = (int(i as i64) + x) / int(params.wide_base() as i64);
    let outer = canonical_base_rep(&y, params)?.0;
    if outer == shifted {
        let lhs = outer.value(params.s());
        return Ok(if lhs == rhs {
            FunctionalEq::Holds
        } else {
            FunctionalEq::Violated
        });
    }
    // the digit streams still satisfy the identity
    if shifted.value(params.s()) == rhs && shifted.value(params.wide_base()) == y {
        Ok(FunctionalEq::RepresentationOnly)
    } else {
        Ok(FunctionalEq::Violated)
    }
}

/// `r / (2 (s-1))`, the integral of `f` over `[0, 1]`.
pub fn integral_exact(params: Params) -> Rational {
    int(params.r() as i64) / int(2 * (params.s() as i64 - 1))
}

/// Sum of the jumps of `f` over binary points of rank `1..=n`, counting
/// `r^m` points of rank `m`. A lower bound for the variation of `f`.
pub fn variation_lower_bound(params: Params, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Usage("variation bound needs n >= 1".into()));
    }
    let r = params.r() as u64;
    Ok((1..=n)
        .map(|m| pow(r, m) * jump_for_rank(params, m))
        .fold(Rational::zero(), |acc, t| acc + t))
}

/// Three points of a rank-`m` cylinder of the base-`(r+1)` expansion on
/// which `f` first rises then falls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub x: [Rational; 3],
    pub f: [Rational; 3],
}

impl MonotonicityWitness {
    /// `(f2 - f1, f3 - f2)`.
    pub fn increments(&self) -> (Rational, Rational) {
        (&self.f[1] - &self.f[0], &self.f[2] - &self.f[1])
    }

    pub fn is_up_down(&self) -> bool {
        let (a, b) = self.increments();
        self.x[0] < self.x[1] && self.x[1] < self.x[2] && a.is_positive() && b.is_negative()
    }
}

/// `x1 = c (0)`, `x2 = c 0 r (r-1)`, `x3 = c 1 (0)` in base `r+1`, with
/// their images under `f`.
pub fn monotonicity_witness(base: &[Digit], params: Params) -> Result<MonotonicityWitness> {
    let r = params.r();
    for &d in base {
        params.check_digit(d)?;
    }
    let with = |tail: &[Digit]| {
        let mut w = base.to_vec();
        w.extend_from_slice(tail);
        w
    };
    let reps = [
        PeriodicRep::terminating(r, base.to_vec())?,
        PeriodicRep::new(r, with(&[0, r]), vec![r - 1])?,
        PeriodicRep::terminating(r, with(&[1]))?,
    ];
    let x = reps.clone().map(|rep| rep.value(params.wide_base()));
    let f = [
        f_eval(&x[0], params)?,
        f_eval(&x[1], params)?,
        f_eval(&x[2], params)?,
    ];
    Ok(MonotonicityWitness { x, f })
}

/// Cardinality of the level set `f^-1(y0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub cardinality: Cardinality,
    /// Some representation of `y0` ends in `(r)`. Its digit stream is the
    /// non-canonical expansion of a binary point, so that representation
    /// need not correspond to a point of the level set.
    pub has_period_r_tail: bool,
}

/// Classifies the level set at `y0` through the representations of `y0`.
pub fn levelset_classify(y0: &Rational, params: Params) -> Result<LevelSet> {
    Ok(levelset_from_automaton(&RemainderAutomaton::build(y0, params)?))
}

/// [`levelset_classify`] on the automaton of `y0`.
pub fn levelset_from_automaton(automaton: &RemainderAutomaton) -> LevelSet {
    let params = automaton.params();
    let top = params.x_max();
    let has_period_r_tail = automaton.find(&top).is_some() && automaton.state(automaton.start()) != top;
    LevelSet {
        cardinality: classify_automaton(automaton),
        has_period_r_tail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(s: u32, r: u32) -> Params {
        Params::new(s, r).unwrap()
    }

    fn canon(x: Rational, params: Params) -> String {
        canonical_base_rep(&x, params).unwrap().rep().to_string()
    }

    #[test]
    fn canonical_examples() {
        let params = p(2, 3);
        assert_eq!(canon(ratio(1, 4), params), "1 (0)");
        assert_eq!(canon(ratio(1, 3), params), "(1)");
        assert_eq!(canon(int(1), params), "(3)");
        assert_eq!(canon(int(0), params), "(0)");
        assert_eq!(canon(ratio(1, 2), params), "2 (0)");
        assert!(canonical_base_rep(&ratio(3, 2), params).is_err());
    }

    #[test]
    fn f_examples() {
        let params = p(2, 3);
        assert_eq!(f_eval(&ratio(1, 3), params).unwrap(), int(1));
        assert_eq!(f_eval(&ratio(3, 4), params).unwrap(), ratio(3, 2));
        assert_eq!(f_eval(&int(0), params).unwrap(), int(0));
        assert_eq!(f_eval(&int(1), params).unwrap(), params.x_max());
    }

    #[test]
    fn binary_point_examples() {
        let params = p(2, 3);
        assert_eq!(is_binary_point(&ratio(1, 4), params).unwrap(), Some(1));
        assert_eq!(is_binary_point(&ratio(1, 2), params).unwrap(), Some(1));
        assert_eq!(is_binary_point(&ratio(3, 32), params).unwrap(), Some(3));
        assert_eq!(is_binary_point(&ratio(1, 3), params).unwrap(), None);
        assert_eq!(is_binary_point(&int(0), params).unwrap(), None);
        assert_eq!(is_binary_point(&int(1), params).unwrap(), None);
    }

    #[test]
    fn jump_examples() {
        assert_eq!(jump_at(&ratio(1, 4), p(2, 3)).unwrap(), int(1));
        assert_eq!(jump_at(&ratio(7, 25), p(3, 4)).unwrap(), ratio(1, 9));
        assert!(jump_at(&ratio(1, 3), p(2, 3)).is_err());
        assert!(jump_for_rank(p(5, 5), 3).is_positive());
    }

    #[test]
    fn gap_examples() {
        let params = p(2, 3);
        let x = ratio(1, 4);
        assert_eq!(one_sided_gap(&x, params, 5).unwrap(), int(1) - ratio(3, 64));
        let jump = jump_at(&x, params).unwrap();
        let mut last = None;
        for k in 1..20 {
            let g = one_sided_gap(&x, params, k).unwrap();
            assert_eq!(&jump - &g, ratio(3, 1) / pow(2, 1 + k as u32));
            if let Some(prev) = last {
                assert!(g > prev);
            }
            last = Some(g);
        }
        assert!(one_sided_gap(&x, params, 0).is_err());
    }

    #[test]
    fn functional_equation_examples() {
        let params = p(2, 3);
        assert_eq!(
            check_functional_eq(2, &ratio(1, 3), params).unwrap(),
            FunctionalEq::Holds
        );
        assert_eq!(f_eval(&ratio(7, 12), params).unwrap(), ratio(3, 2));
        assert_eq!(check_functional_eq(0, &int(0), params).unwrap(), FunctionalEq::Holds);
        assert_eq!(
            check_functional_eq(1, &int(1), params).unwrap(),
            FunctionalEq::RepresentationOnly
        );
        assert_eq!(check_functional_eq(3, &int(1), params).unwrap(), FunctionalEq::Holds);
        assert!(check_functional_eq(4, &int(0), params).is_err());
    }

    #[test]
    fn integral_values() {
        assert_eq!(integral_exact(p(2, 3)), ratio(3, 2));
        assert_eq!(integral_exact(p(3, 4)), int(1));
    }

    #[test]
    fn variation_examples() {
        let params = p(2, 3);
        assert_eq!(variation_lower_bound(params, 1).unwrap(), int(3));
        assert_eq!(variation_lower_bound(params, 2).unwrap(), ratio(15, 2));
        assert!(variation_lower_bound(params, 0).is_err());
    }

    #[test]
    fn witness_example() {
        let params = p(2, 3);
        let w = monotonicity_witness(&[], params).unwrap();
        assert_eq!(w.f, [int(0), ratio(5, 4), ratio(1, 2)]);
        assert!(w.is_up_down());
        let (up, down) = w.increments();
        // r/s^2 + (r-1)/(s^2 (s-1)) and (s(s-r-1)+1)/(s^2 (s-1)) at m = 0
        assert_eq!(up, ratio(3, 4) + ratio(2, 4));
        assert_eq!(down, ratio(-3, 4));
    }

    #[test]
    fn level_set_examples() {
        let l = levelset_classify(&int(0), p(2, 3)).unwrap();
        assert_eq!(l.cardinality, Cardinality::finite(1));
        let params = p(3, 4);
        let y0 = PeriodicRep::purely_periodic(4, vec![2]).unwrap().value(3);
        let l = levelset_classify(&y0, params).unwrap();
        assert_eq!(l.cardinality, Cardinality::CountablyInfinite);
        let l = levelset_classify(&int(1), p(2, 3)).unwrap();
        assert_eq!(l.cardinality, Cardinality::Continuum);
        assert!(l.has_period_r_tail);
        let top = levelset_classify(&int(3), p(2, 3)).unwrap();
        assert!(!top.has_period_r_tail);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_params() -> impl Strategy<Value = Params> {
            (2u32..6, 0u32..4).prop_map(|(s, extra)| Params::new(s, s + extra).unwrap())
        }

        fn arb_unit_rational() -> impl Strategy<Value = Rational> {
            (1i64..200).prop_flat_map(|q| (0..=q).prop_map(move |n| ratio(n, q)))
        }

        fn arb_binary(params: Params) -> impl Strategy<Value = Rational> {
            let b = params.wide_base() as i64;
            (1u32..5).prop_flat_map(move |m| {
                let den = b.pow(m);
                (1..den).prop_map(move |k| ratio(k, den))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn functional_equation_on_unary_points(
                params in arb_params(),
                x in arb_unit_rational(),
                i in 0u32..16,
            ) {
                let i = i % (params.r() + 1);
                let outcome = check_functional_eq(i, &x, params).unwrap();
                prop_assert!(outcome.holds());
                if !x.is_one() {
                    prop_assert_eq!(outcome, FunctionalEq::Holds);
                }
            }

            #[test]
            fn functional_equation_on_binary_points(
                (params, x) in arb_params().prop_flat_map(|p| (Just(p), arb_binary(p))),
                i in 0u32..16,
            ) {
                let i = i % (params.r() + 1);
                prop_assert_eq!(check_functional_eq(i, &x, params).unwrap(), FunctionalEq::Holds);
            }

            #[test]
            fn gaps_approach_the_jump(
                (params, x) in arb_params().prop_flat_map(|p| (Just(p), arb_binary(p))),
                k in 1usize..12,
            ) {
                let m = is_binary_point(&x, params).unwrap().unwrap();
                let jump = jump_at(&x, params).unwrap();
                let gap = one_sided_gap(&x, params, k).unwrap();
                let s = params.s() as u64;
                let tail = int(params.r() as i64) / (pow(s, m + k as u32) * int(s as i64 - 1));
                prop_assert_eq!(&jump - &gap, tail);
                prop_assert!(one_sided_gap(&x, params, k + 1).unwrap() > gap);
            }

            #[test]
            fn continuity_modulus_at_unary_points(
                params in arb_params(),
                x in arb_unit_rational(),
                y in arb_unit_rational(),
            ) {
                prop_assume!(is_binary_point(&x, params).unwrap().is_none());
                let a = canonical_base_rep(&x, params).unwrap().into_rep();
                let b = canonical_base_rep(&y, params).unwrap().into_rep();
                let k = (0..64).take_while(|&n| a.digit(n) == b.digit(n)).count() as u32;
                prop_assume!(k >= 1);
                let fx = f_eval(&x, params).unwrap();
                let fy = f_eval(&y, params).unwrap();
                let bound = params.x_max() / pow(params.s() as u64, k - 1);
                prop_assert!((fx - fy).abs() <= bound);
            }

            #[test]
            fn witness_signs(
                params in arb_params(),
                base in proptest::collection::vec(0u32..16, 0..=8),
            ) {
                let base: Vec<Digit> = base.into_iter().map(|d| d % (params.r() + 1)).collect();
                let w = monotonicity_witness(&base, params).unwrap();
                prop_assert!(w.is_up_down());
                let (s, r) = (params.s() as i64, params.r() as i64);
                let scale = pow(s as u64, base.len() as u32 + 2);
                let (up, down) = w.increments();
                prop_assert_eq!(up, (int(r) + int(r - 1) / int(s - 1)) / &scale);
                prop_assert_eq!(down, int(s * (s - r - 1) + 1) / (&scale * int(s - 1)));
            }

            #[test]
            fn variation_increments_have_ratio_r_over_s(params in arb_params(), n in 2u32..12) {
                let a = variation_lower_bound(params, n - 1).unwrap();
                let b = variation_lower_bound(params, n).unwrap();
                let c = variation_lower_bound(params, n + 1).unwrap();
                prop_assert!(b > a);
                prop_assert_eq!((&c - &b) / (&b - &a), ratio(params.r() as i64, params.s() as i64));
            }
        }
    }
}
