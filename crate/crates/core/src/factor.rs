//! Products of two Lucas sequences and the reverse split.
//!
//! Composing `x² − h₁x + k₁` with `x² − h₂x + k₂` gives the standard quartic
//! with `p = h₁h₂`, `q = h₁²k₂ + k₁(h₂² − 4k₂)`, `r = k₁k₂`. Going back, a
//! standard quartic splits over ℂ into `x² − sx + 1` and `x² − s̄x + r` (the
//! free scale is fixed by `k₁ = 1`) with
//!
//! ```text
//! s = (√(q+4r+2p√r) ± √(q+4r−2p√r)) / (2√r)
//! s̄ = (√(q+4r+2p√r) ∓ √(q+4r−2p√r)) / 2
//! ```
//!
//! and, when `p = 0`, into `{x² + 1, x² − √(q+4r)x + r}` or
//! `{x² + 1, x² − √q x − r}`. All square roots are principal branches.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ball::{with_adaptive_precision, BallError, CBall, Dyadic};
use crate::polyalg::{discriminant, standard_poly, PolyError, StandardParams};
use crate::seqcore::{LucasParams, SequenceWindow};
use crate::MAX_PRECISION;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("degenerate standard quartic: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("scale λ cannot be estimated: the leading terms vanish")]
    ScaleUndetermined,
    #[error("precision exhausted at {bits} bits: {source}")]
    PrecisionExhausted { bits: u32, source: BallError },
}

/// `x² − hx + k` with certified complex coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexQuadratic {
    pub h: CBall,
    pub k: CBall,
}

impl ComplexQuadratic {
    pub fn new(h: CBall, k: CBall) -> Self {
        ComplexQuadratic { h, k }
    }

    pub fn from_lucas(params: LucasParams, prec: u32) -> Self {
        ComplexQuadratic::new(CBall::from_int(params.h(), prec), CBall::from_int(params.k(), prec))
    }

    /// `U₀ … U_{n_max}` with `U₀ = 0`, `U₁ = 1`.
    pub fn lucas_terms(&self, n_max: usize) -> Vec<CBall> {
        let prec = self.h.precision();
        let mut out = vec![CBall::zero(prec), CBall::one(prec)];
        while out.len() <= n_max {
            let n = out.len();
            let next = &(&self.h * &out[n - 1]) - &(&self.k * &out[n - 2]);
            out.push(next);
        }
        out.truncate(n_max + 1);
        out
    }

    /// Roots scaled by `λ`: `x² − λhx + λ²k`, whose Lucas sequence is
    /// `λⁿ⁻¹Uₙ`.
    pub fn scaled(&self, lambda: &CBall) -> ComplexQuadratic {
        ComplexQuadratic::new(&self.h * lambda, &self.k * &lambda.sqr())
    }
}

impl fmt::Display for ComplexQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2 - [{:.12}]x + [{:.12}]", self.h, self.k)
    }
}

/// Which branch of the factorization a pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// `p ≠ 0`, `s` uses `+` between the two radicals.
    Plus,
    /// `p ≠ 0`, `s` uses `−`.
    Minus,
    /// `p = 0`, `{x² + 1, x² − √(q+4r)x + r}`.
    ZeroTraceSum,
    /// `p = 0`, `{x² + 1, x² − √q x − r}`.
    ZeroTraceDifference,
    /// Built directly from two Lucas sequences.
    Lucas,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Plus => "plus",
            FamilyTag::Minus => "minus",
            FamilyTag::ZeroTraceSum => "zero_trace_sum",
            FamilyTag::ZeroTraceDifference => "zero_trace_difference",
            FamilyTag::Lucas => "lucas",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFactorPair {
    pub first: ComplexQuadratic,
    pub second: ComplexQuadratic,
    pub family: FamilyTag,
}

impl QuadraticFactorPair {
    pub fn from_lucas(a: LucasParams, b: LucasParams, prec: u32) -> Self {
        QuadraticFactorPair {
            first: ComplexQuadratic::from_lucas(a, prec),
            second: ComplexQuadratic::from_lucas(b, prec),
            family: FamilyTag::Lucas,
        }
    }

    /// Coefficients `[c₀, c₁, c₂, c₃]` of the monic quartic whose roots are
    /// the pairwise products of the two factors' roots.
    pub fn kron_coefficients(&self) -> [CBall; 4] {
        let (h1, k1, h2, k2) = (&self.first.h, &self.first.k, &self.second.h, &self.second.k);
        let hh = h1 * h2;
        let kk = k1 * k2;
        let c2 = &(&(k2 * &h1.sqr()) + &(k1 * &h2.sqr())) - &kk.mul_pow2(1);
        [kk.sqr(), -&(&hh * &kk), c2, -&hh]
    }
}

/// Observations about an input that does not prevent factoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    /// The quartic has a repeated root; its sequence satisfies a shorter
    /// recurrence.
    RepeatedQuarticRoots,
    /// One of `q+4r ± 2p√r` is zero, so the two branches coincide up to
    /// equivalence.
    VanishingRadicand,
}

impl Diagnostic {
    pub fn as_str(&self) -> &'static str {
        match self {
            Diagnostic::RepeatedQuarticRoots => "repeated_quartic_roots",
            Diagnostic::VanishingRadicand => "vanishing_radicand",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub params: StandardParams,
    pub pairs: Vec<QuadraticFactorPair>,
    pub diagnostics: Vec<Diagnostic>,
    pub precision: u32,
}

/// `ℤ`, `ℤ[i]` or neither, for the coefficients of a factor pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingClass {
    Integers,
    GaussianIntegers,
    Other,
}

impl RingClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingClass::Integers => "integers",
            RingClass::GaussianIntegers => "gaussian_integers",
            RingClass::Other => "other",
        }
    }
}

/// Product of the Lucas sequences for `a` and `b`: standard parameters and
/// the initial terms `0, 1, h₁h₂, (h₁² − k₁)(h₂² − k₂)`.
pub fn compose_lucas(a: LucasParams, b: LucasParams) -> (StandardParams, SequenceWindow) {
    let (h1, k1) = (BigInt::from(a.h()), BigInt::from(a.k()));
    let (h2, k2) = (BigInt::from(b.h()), BigInt::from(b.k()));
    let p = &h1 * &h2;
    let q = &h1 * &h1 * &k2 + &k1 * (&h2 * &h2 - BigInt::from(4) * &k2);
    let r = &k1 * &k2;
    let ic = vec![
        BigInt::zero(),
        BigInt::one(),
        p.clone(),
        (&h1 * &h1 - &k1) * (&h2 * &h2 - &k2),
    ];
    let params = StandardParams::new(p, q, r).expect("k₁k₂ ≠ 0");
    (
        params,
        SequenceWindow {
            start_index: 0,
            terms: ic,
        },
    )
}

fn degeneracy(sp: &StandardParams) -> Option<String> {
    let StandardParams { p, q, r } = sp;
    if p.is_zero() {
        if q.is_zero() {
            return Some("p = 0 and q = 0".into());
        }
        if (q + BigInt::from(4) * r).is_zero() {
            return Some("p = 0 and q + 4r = 0".into());
        }
        None
    } else if p * p == BigInt::from(4) * q && p * p == BigInt::from(16) * r {
        // a root of multiplicity ≥ 3 forces the quartic to be (x − p/4)⁴
        Some("the quartic is a fourth power (x - c)^4".into())
    } else {
        None
    }
}

fn diagnostics(sp: &StandardParams) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if discriminant(&standard_poly(sp)).is_zero() {
        out.push(Diagnostic::RepeatedQuarticRoots);
    }
    let StandardParams { p, q, r } = sp;
    let s = q + BigInt::from(4) * r;
    if !p.is_zero() && r > &BigInt::zero() && &s * &s == BigInt::from(4) * p * p * r {
        out.push(Diagnostic::VanishingRadicand);
    }
    out
}

fn factor_at(sp: &StandardParams, prec: u32) -> Result<Vec<QuadraticFactorPair>, BallError> {
    let one = CBall::one(prec);
    let r = CBall::from_int(sp.r.clone(), prec);
    let q4r = CBall::from_int(&sp.q + BigInt::from(4) * &sp.r, prec);
    if sp.p.is_zero() {
        let unit = ComplexQuadratic::new(CBall::zero(prec), one);
        let sum = QuadraticFactorPair {
            first: unit.clone(),
            second: ComplexQuadratic::new(q4r.sqrt()?, r.clone()),
            family: FamilyTag::ZeroTraceSum,
        };
        let diff = QuadraticFactorPair {
            first: unit,
            second: ComplexQuadratic::new(CBall::from_int(sp.q.clone(), prec).sqrt()?, -&r),
            family: FamilyTag::ZeroTraceDifference,
        };
        return Ok(vec![sum, diff]);
    }
    let sr = r.sqrt()?;
    let two_p_sr = (&CBall::from_int(sp.p.clone(), prec) * &sr).mul_pow2(1);
    let ra = (&q4r + &two_p_sr).sqrt()?;
    let rb = (&q4r - &two_p_sr).sqrt()?;
    let two_sr = sr.mul_pow2(1);
    let mut pairs = Vec::with_capacity(2);
    for (tag, s_num, sbar_num) in [
        (FamilyTag::Plus, &ra + &rb, &ra - &rb),
        (FamilyTag::Minus, &ra - &rb, &ra + &rb),
    ] {
        pairs.push(QuadraticFactorPair {
            first: ComplexQuadratic::new(s_num.div(&two_sr)?, one.clone()),
            second: ComplexQuadratic::new(sbar_num.mul_pow2(-1), r.clone()),
            family: tag,
        });
    }
    Ok(pairs)
}

/// Every inequivalent split of the standard sequence into two order-2
/// sequences with initial terms 0, 1, normalized to `k₁ = 1`.
pub fn factor_standard(sp: &StandardParams, precision: u32) -> Result<Factorization, FactorError> {
    if let Some(reason) = degeneracy(sp) {
        return Err(FactorError::Degenerate(reason));
    }
    let (pairs, used) = with_adaptive_precision(precision, MAX_PRECISION, |prec| factor_at(sp, prec))
        .map_err(|source| FactorError::PrecisionExhausted {
            bits: MAX_PRECISION,
            source,
        })?;
    Ok(Factorization {
        params: sp.clone(),
        pairs,
        diagnostics: diagnostics(sp),
        precision: used,
    })
}

/// Result of checking a factor pair against a standard quartic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every reconstructed quartic coefficient's ball contains the exact one.
    pub polynomial_match: bool,
    /// The product of the two Lucas sequences matches the exact standard
    /// sequence for every `n ≤ n_max`.
    pub sequence_match: bool,
    /// First index where the product sequence is certified to differ.
    pub first_sequence_mismatch: Option<u64>,
    /// Upper bound on `|reconstructed − exact|` over the four coefficients.
    pub max_coefficient_error: Dyadic,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.polynomial_match && self.sequence_match
    }
}

pub fn verify_factorization(
    sp: &StandardParams,
    pair: &QuadraticFactorPair,
    n_max: u64,
    precision: u32,
) -> VerifyReport {
    let target = standard_poly(sp);
    let coeffs = pair.kron_coefficients();
    let zero = BigInt::zero();
    let mut polynomial_match = true;
    let mut max_err = Dyadic::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let exact = target.coeff(i);
        polynomial_match &= c.contains_gaussian(&exact, &zero);
        max_err = max_err.max(c.distance_bound(&exact, &zero));
    }

    let n = n_max as usize;
    let exact = sp.recurrence().terms(n + 1);
    let u = pair.first.lucas_terms(n);
    let v = pair.second.lucas_terms(n);
    let first_sequence_mismatch = (0..=n)
        .find(|&i| {
            let prod = (&u[i] * &v[i]).re.with_precision(precision);
            let prod_im = (&u[i] * &v[i]).im;
            !(prod.contains_int(&exact.terms[i]) && prod_im.contains_zero())
        })
        .map(|i| i as u64);
    VerifyReport {
        polynomial_match,
        sequence_match: first_sequence_mismatch.is_none(),
        first_sequence_mismatch,
        max_coefficient_error: max_err,
    }
}

fn sequences_agree(a: &[CBall], b: &[CBall], lambda: &CBall, n_max: usize) -> bool {
    // a[n] == λ^{n−1} b[n] for 1 ≤ n ≤ n_max
    let mut pow = CBall::one(lambda.precision());
    for n in 1..=n_max {
        if !(&a[n] - &(&pow * &b[n])).contains_zero() {
            return false;
        }
        pow = &pow * lambda;
    }
    true
}

fn check_scale(a: &QuadraticFactorPair, b: &QuadraticFactorPair, lambda: &CBall, n_max: usize) -> Result<bool, BallError> {
    if lambda.contains_zero() {
        return Ok(false);
    }
    let inv = lambda.recip()?;
    let u = a.first.lucas_terms(n_max);
    let s = b.first.lucas_terms(n_max);
    let v = a.second.lucas_terms(n_max);
    let t = b.second.lucas_terms(n_max);
    Ok(sequences_agree(&u, &s, lambda, n_max) && sequences_agree(&v, &t, &inv, n_max))
}

/// The unit `λ` with `uₙ = λⁿ⁻¹sₙ` and `vₙ = λ¹⁻ⁿtₙ` for all `n ≤ n_max`,
/// where `(u, v)` come from `a` and `(s, t)` from `b`.
///
/// `λ` is read off at `n = 2` from the first factors, falling back to the
/// second factors at `n = 2` and then to the first factors at `n = 3`.
pub fn equivalent_factorizations(
    a: &QuadraticFactorPair,
    b: &QuadraticFactorPair,
    n_max: u64,
    precision: u32,
) -> Result<Option<CBall>, FactorError> {
    let n_max = n_max.max(2) as usize;
    let run = |prec: u32| -> Result<Option<Option<CBall>>, BallError> {
        let lift = |c: &CBall| CBall::new(c.re.with_precision(prec), c.im.with_precision(prec));
        let mut candidates = Vec::new();
        if !b.first.h.contains_zero() {
            candidates.push(lift(&a.first.h).div(&b.first.h)?);
        } else if !a.second.h.contains_zero() {
            candidates.push(lift(&b.second.h).div(&a.second.h)?);
        } else {
            let u3 = &a.first.h.sqr() - &a.first.k;
            let s3 = &b.first.h.sqr() - &b.first.k;
            if s3.contains_zero() {
                return Ok(None);
            }
            let root = lift(&u3).div(&s3)?.sqrt()?;
            candidates.push(-&root);
            candidates.push(root);
        }
        for lambda in candidates {
            if check_scale(a, b, &lambda, n_max)? {
                return Ok(Some(Some(lambda)));
            }
        }
        Ok(Some(None))
    };
    let (found, _) = with_adaptive_precision(precision, MAX_PRECISION, run).map_err(|source| {
        FactorError::PrecisionExhausted {
            bits: MAX_PRECISION,
            source,
        }
    })?;
    found.ok_or(FactorError::ScaleUndetermined)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Gaussian {
    re: BigInt,
    im: BigInt,
}

impl Gaussian {
    fn int(re: BigInt) -> Self {
        Gaussian { re, im: BigInt::zero() }
    }

    fn add(&self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn neg(&self) -> Gaussian {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

/// Decides whether a factor pair has coefficients in ℤ or ℤ[i]: every
/// coefficient ball must isolate a Gaussian integer, and those integers must
/// reproduce the standard quartic exactly.
pub fn classify_ring(sp: &StandardParams, pair: &QuadraticFactorPair) -> RingClass {
    let round = |c: &CBall| c.nearest_gaussian().map(|(re, im)| Gaussian { re, im });
    let (Some(h1), Some(k1), Some(h2), Some(k2)) = (
        round(&pair.first.h),
        round(&pair.first.k),
        round(&pair.second.h),
        round(&pair.second.k),
    ) else {
        return RingClass::Other;
    };
    let hh = h1.mul(&h2);
    let kk = k1.mul(&k2);
    let two = Gaussian::int(BigInt::from(2));
    let c2 = k2.mul(&h1.mul(&h1)).add(&k1.mul(&h2.mul(&h2))).add(&two.mul(&kk).neg());
    let rebuilt = [kk.mul(&kk), hh.mul(&kk).neg(), c2, hh.neg()];
    let target = standard_poly(sp);
    if !rebuilt
        .iter()
        .enumerate()
        .all(|(i, c)| *c == Gaussian::int(target.coeff(i)))
    {
        return RingClass::Other;
    }
    if [&h1, &k1, &h2, &k2].iter().all(|g| g.im.is_zero()) {
        RingClass::Integers
    } else {
        RingClass::GaussianIntegers
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Ball;

    const PREC: u32 = 256;

    fn lucas(h: i64, k: i64) -> LucasParams {
        LucasParams::new(h, k).unwrap()
    }

    fn sp(p: i64, q: i64, r: i64) -> StandardParams {
        StandardParams::from_i64(p, q, r).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn real(v: i64, prec: u32) -> CBall {
        CBall::from_int(v, prec)
    }

    fn has(c: &CBall, re: i64, im: i64) -> bool {
        c.contains_gaussian(&BigInt::from(re), &BigInt::from(im))
    }

    #[test]
    fn compose_examples() {
        let (s, ic) = compose_lucas(lucas(1, -1), lucas(1, -1));
        assert_eq!(s, sp(1, -6, 1));
        assert_eq!(ic.terms, ints(&[0, 1, 1, 4]));
        let (s, ic) = compose_lucas(lucas(2, 1), lucas(2, 1));
        assert_eq!(s, sp(4, 4, 1));
        assert_eq!(ic.terms, ints(&[0, 1, 4, 9]));
        let (s, ic) = compose_lucas(lucas(3, 1), lucas(1, -1));
        assert_eq!(s, sp(3, -4, -1));
        assert_eq!(ic.terms, ints(&[0, 1, 3, 16]));
    }

    #[test]
    fn fibonacci_squared_factors_over_gaussian_integers() {
        let s = sp(1, -6, 1);
        let f = factor_standard(&s, PREC).unwrap();
        assert_eq!(f.pairs.len(), 2);
        let plus = &f.pairs[0];
        assert!(has(&plus.first.h, 0, 1) && has(&plus.first.k, 1, 0));
        assert!(has(&plus.second.h, 0, -1) && has(&plus.second.k, 1, 0));
        let minus = &f.pairs[1];
        assert!(has(&minus.first.h, 0, -1) && has(&minus.second.h, 0, 1));
        for pair in &f.pairs {
            assert!(verify_factorization(&s, pair, 15, PREC).holds());
            assert_eq!(classify_ring(&s, pair), RingClass::GaussianIntegers);
        }
        assert!(f.diagnostics.contains(&Diagnostic::RepeatedQuarticRoots));
        assert!(f.diagnostics.contains(&Diagnostic::VanishingRadicand));
        // coinciding branches are equivalent with λ = −1
        let lambda = equivalent_factorizations(&f.pairs[0], &f.pairs[1], 20, PREC).unwrap().unwrap();
        assert!(has(&lambda, -1, 0));
    }

    #[test]
    fn zero_trace_families() {
        let s = sp(0, 1, 1);
        let f = factor_standard(&s, PREC).unwrap();
        assert_eq!(f.pairs.len(), 2);
        let sum = &f.pairs[0];
        assert_eq!(sum.family, FamilyTag::ZeroTraceSum);
        assert!(has(&sum.first.h, 0, 0) && has(&sum.first.k, 1, 0));
        assert!(sum.second.h.re.sqr().contains_int(&BigInt::from(5)));
        assert!(has(&sum.second.k, 1, 0));
        let diff = &f.pairs[1];
        assert!(has(&diff.second.h, 1, 0) && has(&diff.second.k, -1, 0));
        assert_eq!(classify_ring(&s, sum), RingClass::Other);
        assert_eq!(equivalent_factorizations(sum, diff, 20, PREC).unwrap(), None);

        assert!(verify_factorization(&s, sum, 20, PREC).holds());
        // the second family has the right quartic but a₃ = −q−r, not −q−3r
        let report = verify_factorization(&s, diff, 20, PREC);
        assert!(report.polynomial_match);
        assert!(!report.sequence_match);
        assert_eq!(report.first_sequence_mismatch, Some(3));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(factor_standard(&sp(4, 4, 1), PREC), Err(FactorError::Degenerate(_))));
        assert!(matches!(factor_standard(&sp(0, 0, 1), PREC), Err(FactorError::Degenerate(_))));
        assert!(matches!(factor_standard(&sp(0, -4, 1), PREC), Err(FactorError::Degenerate(_))));
    }

    #[test]
    fn t6_branches_verify_and_perturbation_fails() {
        let s = sp(6, 4, 1);
        let f = factor_standard(&s, PREC).unwrap();
        assert!(f.diagnostics.is_empty());
        for pair in &f.pairs {
            let report = verify_factorization(&s, pair, 15, PREC);
            assert!(report.holds());
            assert!(report.max_coefficient_error < Dyadic::pow2(-100));
        }
        let mut broken = f.pairs[0].clone();
        let half = CBall::real(Ball::from_ratio(1, 2, PREC).unwrap());
        broken.first.h = &broken.first.h + &half;
        assert!(!verify_factorization(&s, &broken, 15, PREC).holds());
        // generic branches are not equivalent to each other
        assert_eq!(equivalent_factorizations(&f.pairs[0], &f.pairs[1], 20, PREC).unwrap(), None);
    }

    #[test]
    fn integer_round_trip() {
        let (s, _) = compose_lucas(lucas(3, 1), lucas(2, 1));
        assert_eq!(s, sp(6, 9, 1));
        let f = factor_standard(&s, PREC).unwrap();
        let classes: Vec<_> = f.pairs.iter().map(|p| classify_ring(&s, p)).collect();
        assert_eq!(classes, vec![RingClass::Integers, RingClass::Integers]);
        assert!(has(&f.pairs[0].first.h, 3, 0) && has(&f.pairs[0].second.h, 2, 0));
        assert!(has(&f.pairs[1].first.h, 2, 0) && has(&f.pairs[1].second.h, 3, 0));
        assert_eq!(f.diagnostics, vec![Diagnostic::RepeatedQuarticRoots]);
        for pair in &f.pairs {
            assert!(verify_factorization(&s, pair, 20, PREC).holds());
        }
    }

    #[test]
    fn equivalence_under_rescaling() {
        let s = sp(6, 4, 1);
        let f = factor_standard(&s, PREC).unwrap();
        let a = &f.pairs[0];
        assert!(has(&equivalent_factorizations(a, a, 20, PREC).unwrap().unwrap(), 1, 0));
        let two = real(2, PREC);
        let half = CBall::real(Ball::from_ratio(1, 2, PREC).unwrap());
        let b = QuadraticFactorPair {
            first: a.first.scaled(&two),
            second: a.second.scaled(&half),
            family: a.family,
        };
        let lambda = equivalent_factorizations(&b, a, 20, PREC).unwrap().unwrap();
        assert!(has(&lambda, 2, 0));
    }

    #[test]
    fn lucas_pair_matches_composed_sequence() {
        let (s, _) = compose_lucas(lucas(3, -2), lucas(-1, 5));
        let pair = QuadraticFactorPair::from_lucas(lucas(3, -2), lucas(-1, 5), PREC);
        let report = verify_factorization(&s, &pair, 20, PREC);
        assert!(report.holds());
        assert!(report.max_coefficient_error.is_zero());
        assert_eq!(classify_ring(&s, &pair), RingClass::Integers);
    }
}
