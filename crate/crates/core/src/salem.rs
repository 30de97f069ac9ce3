//! Salem standard quartics and nearest-integer sequences.
//!
//! A Salem standard quartic is `g(x) = x⁴ − px³ + (q+2)x² − px + 1` with
//! `−2p − 4 < q < 2p − 4`. Its roots are a real `α > 1`, `α⁻¹`, and a
//! conjugate pair `γ, γ̄` on the unit circle. With `y = x + 1/x` the quartic
//! becomes `y² − py + q = 0`, so
//!
//! ```text
//! y± = (p ± √(p² − 4q)) / 2,   α = (y₊ + √(y₊² − 4)) / 2,   γ = (y₋ + i√(4 − y₋²)) / 2.
//! ```
//!
//! The standard sequence `uₙ = λαⁿ + λ₁α⁻ⁿ + λ₂γⁿ + λ₃γ⁻ⁿ` equals `E(λαⁿ)` for
//! every `n ≥ 1` once `|λ₁α⁻¹| + |λ₂| + |λ₃| < ½`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::ball::{with_adaptive_precision, Ball, BallError, CBall, Dyadic};
use crate::polyalg::StandardParams;
use crate::seqcore::SequenceWindow;
use crate::MAX_PRECISION;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SalemError {
    #[error("(p={p}, q={q}) is not a Salem standard quartic: need -2p-4 < q < 2p-4")]
    NotSalem { p: i64, q: i64 },
    #[error("t-family requires t >= 6, got {0}")]
    TBelowSix(i64),
    #[error("region bounds require p >= 2, got {0}")]
    PBelowTwo(i64),
    #[error("smallness condition fails for (p={p}, q={q}); E(λαⁿ) is not certified to match the sequence")]
    SmallnessFails { p: i64, q: i64 },
    #[error("smallness undecided for (p={p}, q={q}) at {bits} bits")]
    SmallnessUndecided { p: i64, q: i64, bits: u32 },
    #[error("rounding of term {n} undecided at {bits} bits")]
    RoundingUndecided { n: u64, bits: u32 },
    #[error("precision exhausted at {bits} bits: {source}")]
    PrecisionExhausted { bits: u32, source: BallError },
}

fn exhausted(source: BallError) -> SalemError {
    SalemError::PrecisionExhausted {
        bits: MAX_PRECISION,
        source,
    }
}

/// Exact strip test `−2p − 4 < q < 2p − 4`.
pub fn in_salem_strip(p: i64, q: i64) -> bool {
    let (p, q) = (p as i128, q as i128);
    -2 * p - 4 < q && q < 2 * p - 4
}

pub fn salem_standard_params(p: i64, q: i64) -> StandardParams {
    StandardParams::from_i64(p, q, 1).expect("r = 1")
}

/// Roots `α`, `α⁻¹`, `γ` (upper half plane) at a fixed precision.
fn roots_at(p: i64, q: i64, prec: u32) -> Result<(Ball, Ball, CBall), BallError> {
    let pb = Ball::from_int(p, prec);
    let disc = Ball::from_int(BigInt::from(p) * p - BigInt::from(4) * q, prec);
    let d = disc.sqrt()?;
    let y_plus = (&pb + &d).mul_pow2(-1);
    let y_minus = (&pb - &d).mul_pow2(-1);
    let four = Ball::from_int(4, prec);
    let alpha = (&y_plus + &(&y_plus.sqr() - &four).sqrt()?).mul_pow2(-1);
    let alpha_inv = alpha.recip()?;
    let gamma = CBall::new(
        y_minus.mul_pow2(-1),
        (&four - &y_minus.sqr()).sqrt()?.mul_pow2(-1),
    );
    Ok((alpha, alpha_inv, gamma))
}

fn eval_quartic(p: i64, q: i64, x: &CBall) -> CBall {
    let prec = x.precision();
    let coeffs = [1, -p, q + 2, -p, 1];
    coeffs
        .iter()
        .fold(CBall::zero(prec), |acc, &c| &(&acc * x) + &CBall::from_int(c, prec))
}

/// `α` and `γ` at `precision` bits (doubled as needed).
pub fn salem_root(p: i64, q: i64, precision: u32) -> Result<(CBall, CBall), SalemError> {
    if !in_salem_strip(p, q) {
        return Err(SalemError::NotSalem { p, q });
    }
    let ((alpha, _, gamma), _) = with_adaptive_precision(precision, MAX_PRECISION, |prec| roots_at(p, q, prec))
        .map_err(exhausted)?;
    Ok((CBall::real(alpha), gamma))
}

/// `¼(p + √(p²−4q) + √((p + √(p²−4q))² − 16))`, the closed form for `α`.
pub fn alpha_closed_form(p: i64, q: i64, prec: u32) -> Result<Ball, BallError> {
    let d = Ball::from_int(BigInt::from(p) * p - BigInt::from(4) * q, prec).sqrt()?;
    let s = &Ball::from_int(p, prec) + &d;
    let inner = (&s.sqr() - &Ball::from_int(16, prec)).sqrt()?;
    Ok((&s + &inner).mul_pow2(-2))
}

/// `(p, q) = (t, t − 2)` for `x⁴ − tx³ + tx² − tx + 1`.
pub fn t_family_params(t: i64) -> Result<(i64, i64), SalemError> {
    if t < 6 {
        return Err(SalemError::TBelowSix(t));
    }
    Ok((t, t - 2))
}

/// `1/√((t−4)t + 8)`.
pub fn t_family_lambda(t: i64, prec: u32) -> Result<Ball, BallError> {
    Ball::from_int((t - 4) * t + 8, prec).sqrt()?.recip()
}

/// `¼(t + √((t−4)t+8) + √2·√(t(t + √((t−4)t+8) − 2) − 4))`.
pub fn t_family_alpha(t: i64, prec: u32) -> Result<Ball, BallError> {
    let tb = Ball::from_int(t, prec);
    let d = Ball::from_int((t - 4) * t + 8, prec).sqrt()?;
    let inner = &(&tb * &(&(&tb + &d) - &Ball::from_int(2, prec))) - &Ball::from_int(4, prec);
    let root2 = Ball::from_int(2, prec).sqrt()?;
    Ok((&(&tb + &d) + &(&root2 * &inner.sqrt()?)).mul_pow2(-2))
}

/// A validated Salem standard quartic with certified roots and Binet
/// coefficients `[λ, λ₁, λ₂, λ₃]` for `α, α⁻¹, γ, γ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalemQuartic {
    pub p: i64,
    pub q: i64,
    pub alpha: Ball,
    pub alpha_inv: Ball,
    pub gamma: CBall,
    pub binet: [CBall; 4],
    pub precision: u32,
}

impl SalemQuartic {
    fn compute(p: i64, q: i64, prec: u32) -> Result<Self, BallError> {
        let (alpha, alpha_inv, gamma) = roots_at(p, q, prec)?;
        let roots = [
            CBall::real(alpha.clone()),
            CBall::real(alpha_inv.clone()),
            gamma.clone(),
            gamma.conj(),
        ];
        let u = [
            BigInt::zero(),
            BigInt::one(),
            BigInt::from(p),
            BigInt::from(p) * p - q - 3,
        ];
        let binet = lagrange_solve(&roots, &u)?;
        Ok(SalemQuartic {
            p,
            q,
            alpha,
            alpha_inv,
            gamma,
            binet,
            precision: prec,
        })
    }

    pub fn params(&self) -> StandardParams {
        salem_standard_params(self.p, self.q)
    }

    /// `λ`, the coefficient of `αⁿ`; real.
    pub fn lambda(&self) -> &Ball {
        &self.binet[0].re
    }

    pub fn roots(&self) -> [CBall; 4] {
        [
            CBall::real(self.alpha.clone()),
            CBall::real(self.alpha_inv.clone()),
            self.gamma.clone(),
            self.gamma.conj(),
        ]
    }

    /// Binet evaluation `λαⁿ + λ₁α⁻ⁿ + λ₂γⁿ + λ₃γ⁻ⁿ`.
    pub fn binet_term(&self, n: u32) -> CBall {
        self.roots()
            .iter()
            .zip(&self.binet)
            .fold(CBall::zero(self.precision), |acc, (root, c)| &acc + &(c * &root.pow(n)))
    }

    /// `g(α)` and `g(γ)`; both balls contain zero.
    pub fn residuals(&self) -> (CBall, CBall) {
        (
            eval_quartic(self.p, self.q, &CBall::real(self.alpha.clone())),
            eval_quartic(self.p, self.q, &self.gamma),
        )
    }

    /// `|γ|² − 1`; contains zero.
    pub fn unit_circle_defect(&self) -> Ball {
        &self.gamma.norm_sqr() - &Ball::one(self.precision)
    }
}

/// Solves `Σᵢ cᵢ ρᵢʲ = uⱼ` (j = 0..3) through the Lagrange basis of the four
/// distinct roots.
fn lagrange_solve(roots: &[CBall; 4], u: &[BigInt; 4]) -> Result<[CBall; 4], BallError> {
    let prec = roots[0].precision();
    let mut out = Vec::with_capacity(4);
    for i in 0..4 {
        // numerator ∏_{k≠i} (x − ρ_k), constant term first
        let mut poly = vec![CBall::one(prec)];
        let mut denom = CBall::one(prec);
        for (k, rk) in roots.iter().enumerate() {
            if k == i {
                continue;
            }
            let mut next = vec![CBall::zero(prec); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &(c * rk);
            }
            poly = next;
            denom = &denom * &(&roots[i] - rk);
        }
        let num = poly
            .iter()
            .zip(u)
            .fold(CBall::zero(prec), |acc, (c, uj)| &acc + &c.scale(&Ball::from_int(uj.clone(), prec)));
        out.push(num.div(&denom)?);
    }
    Ok(out.try_into().expect("four coefficients"))
}

/// Roots and Binet coefficients of the Salem standard quartic.
pub fn binet_coefficients(p: i64, q: i64, precision: u32) -> Result<SalemQuartic, SalemError> {
    if !in_salem_strip(p, q) {
        return Err(SalemError::NotSalem { p, q });
    }
    with_adaptive_precision(precision, MAX_PRECISION, |prec| SalemQuartic::compute(p, q, prec))
        .map(|(sq, _)| sq)
        .map_err(exhausted)
}

/// Strip inequality plus a certified check of the root configuration: one
/// real root above 1, one in (0, 1), and a non-real pair on the unit circle.
pub fn is_salem_standard(p: i64, q: i64) -> bool {
    if !in_salem_strip(p, q) {
        return false;
    }
    let Ok(sq) = binet_coefficients(p, q, 128) else {
        return false;
    };
    let one = Ball::one(sq.precision);
    one.lt(&sq.alpha)
        && sq.alpha_inv.is_positive()
        && sq.alpha_inv.lt(&one)
        && sq.gamma.im.is_positive()
        && sq.unit_circle_defect().contains_zero()
}

/// Three-valued outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    fn from_margin(margin: &Ball) -> Verdict {
        if margin.is_positive() {
            Verdict::Holds
        } else if margin.is_negative() {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallnessVerdict {
    /// `|λ₁α⁻¹| + |λ₂| + |λ₃| < ½`: `uₙ = E(λαⁿ)` for all `n ≥ 1`.
    pub holds_for_all_n_ge_1: Verdict,
    /// `|λ₂| + |λ₃| < ½`: `uₙ = E(λαⁿ)` for all large `n`.
    pub holds_eventually: Verdict,
    /// `½ − (|λ₁α⁻¹| + |λ₂| + |λ₃|)`.
    pub margin: Ball,
    /// `½ − (|λ₂| + |λ₃|)`.
    pub eventual_margin: Ball,
    /// When `holds_eventually`, an index `n₀` with `uₙ = E(λαⁿ)` for every
    /// `n > n₀` (0 when the identity holds from `n = 1`).
    pub threshold: Option<u64>,
    pub precision: u32,
}

const THRESHOLD_SEARCH_LIMIT: u64 = 100_000;

fn smallness_at(sq: &SalemQuartic) -> Result<SmallnessVerdict, BallError> {
    let half = Ball::exact(Dyadic::pow2(-1), sq.precision);
    let l1 = sq.binet[1].abs()?;
    let tail = &sq.binet[2].abs()? + &sq.binet[3].abs()?;
    let margin = &(&half - &(&l1 * &sq.alpha_inv)) - &tail;
    let eventual_margin = &half - &tail;
    let all = Verdict::from_margin(&margin);
    let eventually = match all {
        Verdict::Holds => Verdict::Holds,
        _ => Verdict::from_margin(&eventual_margin),
    };
    let threshold = match (all, eventually) {
        (Verdict::Holds, _) => Some(0),
        (_, Verdict::Holds) => {
            // first n with |λ₁|α⁻ⁿ < ½ − (|λ₂| + |λ₃|)
            let mut bound = &l1 * &sq.alpha_inv;
            let mut n = 1;
            while !bound.lt(&eventual_margin) && n < THRESHOLD_SEARCH_LIMIT {
                bound = &bound * &sq.alpha_inv;
                n += 1;
            }
            (n < THRESHOLD_SEARCH_LIMIT).then_some(n - 1)
        }
        _ => None,
    };
    Ok(SmallnessVerdict {
        holds_for_all_n_ge_1: all,
        holds_eventually: eventually,
        margin,
        eventual_margin,
        threshold,
        precision: sq.precision,
    })
}

/// Certified smallness verdicts. Undecided comparisons are retried with the
/// quartic recomputed at doubled precision up to the cap and then reported
/// as [`Verdict::Undecided`].
pub fn smallness_condition(sq: &SalemQuartic) -> Result<SmallnessVerdict, SalemError> {
    let mut current = sq.clone();
    loop {
        let verdict = smallness_at(&current).map_err(exhausted)?;
        let decided = verdict.holds_for_all_n_ge_1 != Verdict::Undecided
            && verdict.holds_eventually != Verdict::Undecided;
        if decided || current.precision >= MAX_PRECISION {
            return Ok(verdict);
        }
        let next = (current.precision * 2).min(MAX_PRECISION);
        current = SalemQuartic::compute(sq.p, sq.q, next).map_err(exhausted)?;
    }
}

/// `E(x)` for a certified real `x`. Fails when the ball touches a
/// half-integer; the caller should raise precision.
pub fn nearest_integer(x: &Ball) -> Result<BigInt, BallError> {
    x.nearest_integer()
}

/// Terms `E(λαⁿ)` for `n` in `first..=last`, raising precision per term.
fn rounded_terms(p: i64, q: i64, first: u64, last: u64, precision: u32) -> Result<(Vec<BigInt>, u32), SalemError> {
    let mut sq = SalemQuartic::compute(p, q, precision).map_err(exhausted)?;
    let mut power = sq.alpha.pow(first as u32);
    let mut out = Vec::with_capacity((last + 1).saturating_sub(first) as usize);
    let mut n = first;
    while n <= last {
        match nearest_integer(&(sq.lambda() * &power)) {
            Ok(v) => {
                out.push(v);
                power = &power * &sq.alpha;
                n += 1;
            }
            Err(_) if sq.precision < MAX_PRECISION => {
                let next = (sq.precision * 2).min(MAX_PRECISION);
                sq = SalemQuartic::compute(p, q, next).map_err(exhausted)?;
                power = sq.alpha.pow(n as u32);
            }
            Err(_) => {
                return Err(SalemError::RoundingUndecided {
                    n,
                    bits: sq.precision,
                })
            }
        }
    }
    Ok((out, sq.precision))
}

/// Output of [`nearest_integer_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestIntegerRun {
    /// `E(λαⁿ)` for `n = n₀ + 1 ..= n_max`.
    pub window: SequenceWindow,
    /// Indices `≤ n₀` are not covered by the smallness guarantee.
    pub threshold: u64,
    pub verdict: SmallnessVerdict,
    /// Highest precision used for any term.
    pub precision: u32,
}

/// Certified `E(λαⁿ)` for `n = 1..=n_max`, or for `n > n₀` when only the
/// eventual condition holds.
pub fn nearest_integer_sequence(p: i64, q: i64, n_max: u64, precision: u32) -> Result<NearestIntegerRun, SalemError> {
    let sq = binet_coefficients(p, q, precision)?;
    let verdict = smallness_condition(&sq)?;
    let threshold = match (verdict.holds_for_all_n_ge_1, verdict.holds_eventually, verdict.threshold) {
        (Verdict::Holds, _, _) => 0,
        (_, Verdict::Holds, Some(n0)) => n0,
        (Verdict::Undecided, _, _) | (_, Verdict::Undecided, _) | (_, Verdict::Holds, None) => {
            return Err(SalemError::SmallnessUndecided {
                p,
                q,
                bits: verdict.precision,
            })
        }
        _ => return Err(SalemError::SmallnessFails { p, q }),
    };
    let first = threshold + 1;
    let (terms, used) = if first <= n_max {
        rounded_terms(p, q, first, n_max, precision)?
    } else {
        (Vec::new(), sq.precision)
    };
    Ok(NearestIntegerRun {
        window: SequenceWindow {
            start_index: first,
            terms,
        },
        threshold,
        verdict,
        precision: used.max(sq.precision),
    })
}

/// Open interval `(q_low, q_high)` of admissible `q` for a given `p`:
/// `−4 − 2p < q < (p⁴ + 8p³ − 160p − 400)/(4p² + 32p + 64)` for `2 ≤ p ≤ 8`
/// and `−4 − 2p < q < 2p − 4` for `p > 8`.
pub fn region_bounds(p: i64) -> Result<(BigRational, BigRational), SalemError> {
    if p < 2 {
        return Err(SalemError::PBelowTwo(p));
    }
    let pb = BigInt::from(p);
    let low = BigRational::from_integer(BigInt::from(-4) - BigInt::from(2) * &pb);
    let high = if p <= 8 {
        let num = pb.pow(4) + BigInt::from(8) * pb.pow(3) - BigInt::from(160) * &pb - BigInt::from(400);
        let den = BigInt::from(4) * &pb * &pb + BigInt::from(32) * &pb + BigInt::from(64);
        BigRational::new(num, den)
    } else {
        BigRational::from_integer(BigInt::from(2) * &pb - BigInt::from(4))
    };
    Ok((low, high))
}

pub fn in_region(p: i64, q: i64) -> bool {
    match region_bounds(p) {
        Ok((low, high)) => {
            let q = BigRational::from_integer(BigInt::from(q));
            low < q && q < high
        }
        Err(_) => false,
    }
}

/// How the closed-form region and the numeric smallness verdict compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Agreement {
    Agree,
    Disagree,
    Undecided,
}

impl Agreement {
    pub fn as_str(&self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::Undecided => "undecided",
        }
    }
}

/// One `(p, q)` cell of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub p: i64,
    pub q: i64,
    pub in_region: bool,
    pub verdict: SmallnessVerdict,
    pub agreement: Agreement,
    /// Whether `E(λαⁿ)` equals the exact standard sequence for
    /// `1 ≤ n ≤ empirical_terms`; `None` if rounding could not be certified.
    pub empirical_match: Option<bool>,
}

/// Number of terms compared by scans for the empirical-match column.
pub const EMPIRICAL_TERMS: u64 = 40;

fn scan_cell(p: i64, q: i64, precision: u32) -> Result<ScanRow, SalemError> {
    let sq = binet_coefficients(p, q, precision)?;
    let verdict = smallness_condition(&sq)?;
    let in_region = in_region(p, q);
    let agreement = match verdict.holds_for_all_n_ge_1 {
        Verdict::Undecided => Agreement::Undecided,
        Verdict::Holds if in_region => Agreement::Agree,
        Verdict::Fails if !in_region => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    let exact = salem_standard_params(p, q)
        .recurrence()
        .terms(EMPIRICAL_TERMS as usize + 1);
    let empirical_match = rounded_terms(p, q, 1, EMPIRICAL_TERMS, precision)
        .ok()
        .map(|(terms, _)| terms.iter().zip(&exact.terms[1..]).all(|(a, b)| a == b));
    Ok(ScanRow {
        p,
        q,
        in_region,
        verdict,
        agreement,
        empirical_match,
    })
}

/// Every Salem strip cell with `p_min ≤ p ≤ p_max`, evaluated in parallel
/// and returned sorted by `(p, q)`.
pub fn scan_strip(p_min: i64, p_max: i64, precision: u32) -> Result<Vec<ScanRow>, SalemError> {
    let cells: Vec<(i64, i64)> = (p_min.max(1)..=p_max)
        .flat_map(|p| (-2 * p - 3..2 * p - 4).map(move |q| (p, q)))
        .filter(|&(p, q)| in_salem_strip(p, q))
        .collect();
    let mut rows = cells
        .into_par_iter()
        .map(|(p, q)| scan_cell(p, q, precision))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| (r.p, r.q));
    Ok(rows)
}

/// Cells strictly inside the closed-form region for `2 ≤ p ≤ p_max` that are
/// Salem standard, each with its certified verdict. Disagreements with the
/// numeric verdict are visible through [`ScanRow::agreement`].
pub fn enumerate_ldsalem(p_max: i64, precision: u32) -> Result<Vec<ScanRow>, SalemError> {
    if p_max < 2 {
        return Err(SalemError::PBelowTwo(p_max));
    }
    Ok(scan_strip(2, p_max, precision)?
        .into_iter()
        .filter(|r| r.in_region && is_salem_standard(r.p, r.q))
        .collect())
}

/// Summary of closed-form versus numeric agreement over a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionConsistency {
    pub cells: usize,
    pub agreements: usize,
    /// Every cell that disagrees or stays undecided.
    pub findings: Vec<ScanRow>,
}

impl RegionConsistency {
    pub fn agreement_ratio(&self) -> f64 {
        if self.cells == 0 {
            1.0
        } else {
            self.agreements as f64 / self.cells as f64
        }
    }
}

pub fn region_consistency(p_min: i64, p_max: i64, precision: u32) -> Result<RegionConsistency, SalemError> {
    let rows = scan_strip(p_min.max(2), p_max, precision)?;
    let agreements = rows.iter().filter(|r| r.agreement == Agreement::Agree).count();
    Ok(RegionConsistency {
        cells: rows.len(),
        agreements,
        findings: rows.into_iter().filter(|r| r.agreement != Agreement::Agree).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::divisibility_check;

    const PREC: u32 = 256;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn salem_predicate_examples() {
        assert!(is_salem_standard(6, 4));
        assert!(!is_salem_standard(1, 0));
        assert!(!is_salem_standard(6, 8));
        assert!(is_salem_standard(6, 7));
        assert!(!is_salem_standard(6, -16));
        assert!(is_salem_standard(6, -15));
    }

    #[test]
    fn roots_match_closed_forms() {
        for (t, approx) in [(6, 5.0376), (7, 6.0267)] {
            let (p, q) = t_family_params(t).unwrap();
            let (alpha, gamma) = salem_root(p, q, PREC).unwrap();
            assert!((alpha.re.to_f64() - approx).abs() < 1e-4);
            let closed = t_family_alpha(t, PREC).unwrap();
            assert!((&alpha.re - &closed).contains_zero());
            assert!((&alpha.re - &alpha_closed_form(p, q, PREC).unwrap()).contains_zero());
            assert!(gamma.im.is_positive());
        }
    }

    #[test]
    fn residuals_are_small() {
        let sq = binet_coefficients(6, 4, PREC).unwrap();
        let (ga, gg) = sq.residuals();
        let bound = Dyadic::pow2(-(PREC as i64) / 2);
        assert!(ga.contains_zero() && gg.contains_zero());
        assert!(ga.re.abs_upper() < bound && gg.re.abs_upper() < bound && gg.im.abs_upper() < bound);
        assert!(sq.unit_circle_defect().contains_zero());
        // reciprocal symmetry: α·α⁻¹ = 1, γ·γ̄ = 1
        assert!((&sq.alpha * &sq.alpha_inv).contains_int(&BigInt::one()));
        let y_plus = &sq.alpha + &sq.alpha_inv;
        let expected = &Ball::from_int(3, PREC) + &Ball::from_int(5, PREC).sqrt().unwrap();
        assert!((&y_plus - &expected).contains_zero());
    }

    #[test]
    fn binet_rows_reproduce_initial_terms() {
        for (p, q) in [(6, 4), (7, 5), (3, -1), (10, 0)] {
            let sq = binet_coefficients(p, q, PREC).unwrap();
            let exact = sq.params().recurrence().terms(6);
            for n in 0..6u32 {
                let v = sq.binet_term(n);
                assert!(v.contains_gaussian(&exact.terms[n as usize], &BigInt::zero()), "p={p} q={q} n={n}");
            }
        }
    }

    #[test]
    fn t6_lambda_is_inverse_sqrt_20() {
        let sq = binet_coefficients(6, 4, PREC).unwrap();
        let want = t_family_lambda(6, PREC).unwrap();
        assert!((sq.lambda() - &want).contains_zero());
        assert!((sq.lambda().to_f64() - 0.2236068).abs() < 1e-7);
        assert!(sq.binet[0].im.contains_zero());
    }

    #[test]
    fn smallness_examples() {
        let v6 = smallness_condition(&binet_coefficients(6, 4, PREC).unwrap()).unwrap();
        assert_eq!(v6.holds_for_all_n_ge_1, Verdict::Holds);
        assert_eq!(v6.holds_eventually, Verdict::Holds);
        assert_eq!(v6.threshold, Some(0));
        let v5 = smallness_condition(&binet_coefficients(5, 3, PREC).unwrap()).unwrap();
        assert_eq!(v5.holds_for_all_n_ge_1, Verdict::Fails);
        assert!(v5.margin.is_negative());
    }

    #[test]
    fn nearest_integer_examples() {
        let x = Ball::from_ratio(5037, 1000, 64).unwrap();
        assert_eq!(nearest_integer(&x).unwrap(), BigInt::from(5));
        let s5 = Ball::from_int(5, 128).sqrt().unwrap();
        let phi = (&Ball::one(128) + &s5).mul_pow2(-1);
        let f5 = phi.pow(5).div(&s5).unwrap();
        assert!((f5.to_f64() - 4.9597).abs() < 1e-4);
        assert_eq!(nearest_integer(&f5).unwrap(), BigInt::from(5));
    }

    #[test]
    fn t6_and_t7_sequences() {
        let run = nearest_integer_sequence(6, 4, 7, PREC).unwrap();
        assert_eq!(run.window.start_index, 1);
        assert_eq!(run.window.terms, ints(&[1, 6, 29, 144, 725, 3654, 18409]));
        let run = nearest_integer_sequence(7, 5, 7, PREC).unwrap();
        assert_eq!(run.window.terms, ints(&[1, 7, 41, 245, 1476, 8897, 53621]));
    }

    #[test]
    fn eventual_case_starts_after_threshold() {
        // (5, 3) fails the all-n condition; check what the eventual branch does.
        let sq = binet_coefficients(5, 3, PREC).unwrap();
        let v = smallness_condition(&sq).unwrap();
        match v.holds_eventually {
            Verdict::Holds => {
                let run = nearest_integer_sequence(5, 3, 30, PREC).unwrap();
                let n0 = run.threshold;
                assert!(n0 >= 1);
                assert_eq!(run.window.start_index, n0 + 1);
                let exact = sq.params().recurrence().terms(31);
                for (i, t) in run.window.terms.iter().enumerate() {
                    assert_eq!(t, &exact.terms[n0 as usize + 1 + i]);
                }
            }
            _ => assert!(matches!(
                nearest_integer_sequence(5, 3, 30, PREC),
                Err(SalemError::SmallnessFails { .. })
            )),
        }
    }

    #[test]
    fn t_family_domain() {
        assert_eq!(t_family_params(6).unwrap(), (6, 4));
        assert_eq!(t_family_params(7).unwrap(), (7, 5));
        assert_eq!(t_family_params(5), Err(SalemError::TBelowSix(5)));
        let l7 = t_family_lambda(7, PREC).unwrap();
        assert!((l7.sqr().recip().unwrap()).contains_int(&BigInt::from(29)));
    }

    #[test]
    fn region_bound_examples() {
        assert_eq!(region_bounds(2).unwrap(), (ratio(-8, 1), ratio(-40, 9)));
        assert_eq!(region_bounds(9).unwrap(), (ratio(-22, 1), ratio(14, 1)));
        assert_eq!(region_bounds(6).unwrap(), (ratio(-16, 1), ratio(104, 25)));
        assert_eq!(region_bounds(5).unwrap().1, ratio(425, 324));
        assert_eq!(region_bounds(1), Err(SalemError::PBelowTwo(1)));
        assert!(in_region(6, 4));
        assert!(!in_region(5, 3));
    }

    #[test]
    fn enumeration_contents() {
        let rows = enumerate_ldsalem(8, PREC).unwrap();
        let find = |p, q| rows.iter().find(|r| r.p == p && r.q == q);
        assert_eq!(find(6, 4).unwrap().verdict.holds_for_all_n_ge_1, Verdict::Holds);
        assert_eq!(find(7, 5).unwrap().verdict.holds_for_all_n_ge_1, Verdict::Holds);
        assert!(find(5, 3).is_none());
        let mut sorted = rows.clone();
        sorted.sort_by_key(|r| (r.p, r.q));
        assert_eq!(rows, sorted);
        for row in rows.iter().filter(|r| r.verdict.holds_for_all_n_ge_1 == Verdict::Holds) {
            let run = nearest_integer_sequence(row.p, row.q, 40, PREC).unwrap();
            let mut terms = vec![BigInt::zero()];
            terms.extend(run.window.terms);
            let w = SequenceWindow::new(0, terms).unwrap();
            assert!(divisibility_check(&w).is_empty(), "p={} q={}", row.p, row.q);
            assert_eq!(row.empirical_match, Some(true));
        }
    }

    #[test]
    fn rejects_non_salem() {
        assert!(matches!(binet_coefficients(1, 0, PREC), Err(SalemError::NotSalem { .. })));
        assert!(matches!(nearest_integer_sequence(6, 8, 5, PREC), Err(SalemError::NotSalem { .. })));
    }
}
