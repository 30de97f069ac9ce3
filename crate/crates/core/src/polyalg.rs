//! Integer polynomials and matrices.
//!
//! Polynomials are stored constant term first. Characteristic polynomials are
//! computed exactly (Faddeev–LeVerrier over the integers), and the Kronecker
//! product of two recurrences is obtained as the characteristic polynomial of
//! the Kronecker product of their companion matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ball::{with_adaptive_precision, BallError, CBall};
use crate::seqcore::{LinearRecurrence, SequenceWindow};
use crate::MAX_PRECISION;

/// Largest degree this module builds: the Kronecker product of six
/// quadratics.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(usize),
    #[error("Kronecker product degree {0} exceeds {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("standard parameter r must be nonzero")]
    ZeroR,
    #[error("n must be positive")]
    ZeroIndex,
    #[error("precision exhausted at {bits} bits: {source}")]
    PrecisionExhausted { bits: u32, source: BallError },
}

/// Polynomial with integer coefficients, constant term first. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x − a`.
    pub fn linear(root: BigInt) -> Self {
        IntPoly::new(vec![-root, BigInt::one()])
    }

    /// `x² − hx + k`.
    pub fn quadratic(h: BigInt, k: BigInt) -> Self {
        IntPoly::new(vec![k, -h, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `xⁱ` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    /// Panics unless the rows form a non-empty square array.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(dim >= 1 && rows.iter().all(|r| r.len() == dim), "rows must form a square array");
        IntMatrix {
            dim,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }
}

/// Companion matrix with ones on the superdiagonal and the negated
/// coefficients `−a₀ … −a_{d−1}` in the last row.
pub fn companion(f: &IntPoly) -> Result<IntMatrix, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let d = f.degree();
    if d == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    let mut m = IntMatrix::zeros(d);
    for i in 0..d - 1 {
        m.set(i, i + 1, BigInt::one());
    }
    for j in 0..d {
        m.set(d - 1, j, -f.coeff(j));
    }
    Ok(m)
}

/// Characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier.
///
/// All intermediate matrices are integral and every division by `k` is
/// exact, so the computation stays in ℤ.
pub fn char_poly_exact(m: &IntMatrix) -> IntPoly {
    let n = m.dim();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // am holds A·M_{k−1}; M_0 = 0.
    let mut am = IntMatrix::zeros(n);
    for k in 1..=n {
        let mut mk = am;
        for i in 0..n {
            mk.entries[i * n + i] += &c[n - k + 1];
        }
        am = m.mul(&mk);
        let (quot, rem) = am.trace().div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "Faddeev–LeVerrier trace not divisible by {k}");
        c[n - k] = -quot;
    }
    IntPoly::new(c)
}

pub fn kron_matrix(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.dim(), b.dim());
    let mut out = IntMatrix::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out.set(i * m + k, j * m + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Characteristic polynomial of a product of two recurrences: its roots are
/// all products of a root of `f` with a root of `g`, with multiplicity.
pub fn kron_poly(f: &IntPoly, g: &IntPoly) -> Result<IntPoly, PolyError> {
    let deg = f.degree() * g.degree();
    if deg > MAX_DEGREE {
        return Err(PolyError::DegreeOverflow(deg));
    }
    let cf = companion(f)?;
    let cg = companion(g)?;
    Ok(char_poly_exact(&kron_matrix(&cf, &cg)))
}

/// Resultant of two non-constant polynomials via the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let mut s = IntMatrix::zeros(size);
    for row in 0..n {
        for i in 0..=m {
            s.set(row, row + i, f.coeff(m - i));
        }
    }
    for row in 0..m {
        for i in 0..=n {
            s.set(n + row, row + i, g.coeff(n - i));
        }
    }
    s.determinant()
}

/// Discriminant of a monic polynomial of degree ≥ 2; zero iff it has a
/// repeated root.
pub fn discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree();
    let res = resultant(f, &f.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// `(p, q, r)` of the standard quartic `x⁴ − px³ + (q+2r)x² − prx + r²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardParams {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl StandardParams {
    pub fn new(p: BigInt, q: BigInt, r: BigInt) -> Result<Self, PolyError> {
        if r.is_zero() {
            return Err(PolyError::ZeroR);
        }
        Ok(StandardParams { p, q, r })
    }

    pub fn from_i64(p: i64, q: i64, r: i64) -> Result<Self, PolyError> {
        StandardParams::new(p.into(), q.into(), r.into())
    }

    /// The order-4 recurrence with the standard quartic and initial terms.
    pub fn recurrence(&self) -> LinearRecurrence {
        LinearRecurrence::from_char_poly(
            standard_poly(self).coeffs(),
            standard_initial_conditions(self).terms,
        )
        .expect("r ≠ 0 so the order is genuine")
    }
}

impl fmt::Display for StandardParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, r={})", self.p, self.q, self.r)
    }
}

pub fn standard_poly(sp: &StandardParams) -> IntPoly {
    let StandardParams { p, q, r } = sp;
    IntPoly::new(vec![
        r * r,
        -(p * r),
        q + BigInt::from(2) * r,
        -p.clone(),
        BigInt::one(),
    ])
}

/// `0, 1, p, p² − q − 3r`.
pub fn standard_initial_conditions(sp: &StandardParams) -> SequenceWindow {
    let StandardParams { p, q, r } = sp;
    SequenceWindow {
        start_index: 0,
        terms: vec![
            BigInt::zero(),
            BigInt::one(),
            p.clone(),
            p * p - q - BigInt::from(3) * r,
        ],
    }
}

/// Outcome of [`recognize_standard`]. When `p = 0` both signs of `r` fit the
/// coefficients; `params` then carries `r > 0` and `alternate` the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub params: StandardParams,
    pub alternate: Option<StandardParams>,
}

pub fn recognize_standard(f: &IntPoly) -> Result<Option<Recognition>, PolyError> {
    if f.degree() != 4 {
        return Err(PolyError::NotQuartic(f.degree()));
    }
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let c0 = f.coeff(0);
    if !c0.is_positive() {
        return Ok(None);
    }
    let root = c0.sqrt();
    if &root * &root != c0 {
        return Ok(None);
    }
    let p = -f.coeff(3);
    let c1 = f.coeff(1);
    let c2 = f.coeff(2);
    let mut found = [root.clone(), -root].into_iter().filter_map(|r| {
        (c1 == -(&p * &r)).then(|| StandardParams {
            p: p.clone(),
            q: &c2 - BigInt::from(2) * &r,
            r,
        })
    });
    Ok(found.next().map(|params| Recognition {
        params,
        alternate: found.next(),
    }))
}

/// The four roots of the standard quartic via `y = x + r/x`: `y² − py + q = 0`
/// and then `x² − yx + r = 0`. Returned as the roots for `y₊` followed by the
/// roots for `y₋`.
pub fn standard_roots(sp: &StandardParams, prec: u32) -> Result<[CBall; 4], BallError> {
    let p = CBall::from_int(sp.p.clone(), prec);
    let disc_y = CBall::from_int(&sp.p * &sp.p - BigInt::from(4) * &sp.q, prec);
    let sy = disc_y.sqrt()?;
    let four_r = CBall::from_int(BigInt::from(4) * &sp.r, prec);
    let mut out = Vec::with_capacity(4);
    for y in [(&p + &sy).mul_pow2(-1), (&p - &sy).mul_pow2(-1)] {
        let w = (&y.sqr() - &four_r).sqrt()?;
        out.push((&y + &w).mul_pow2(-1));
        out.push((&y - &w).mul_pow2(-1));
    }
    Ok(out.try_into().expect("four roots"))
}

/// `(xⁿ − yⁿ)/(x − y)` in the division-free form `Σ xⁱyⁿ⁻¹⁻ⁱ`, which also
/// covers `x = y`.
fn pair_factor(xp: &[CBall], yp: &[CBall], n: usize) -> CBall {
    let prec = xp[0].precision();
    (0..n).fold(CBall::zero(prec), |acc, i| &acc + &(&xp[i] * &yp[n - 1 - i]))
}

fn pair_product_at(sp: &StandardParams, n: usize, prec: u32) -> Result<BigInt, BallError> {
    let roots = standard_roots(sp, prec)?;
    let powers: Vec<Vec<CBall>> = roots
        .iter()
        .map(|r| {
            let mut v = Vec::with_capacity(n);
            v.push(CBall::one(prec));
            for i in 1..n {
                let next = &v[i - 1] * r;
                v.push(next);
            }
            v
        })
        .collect();
    let mut prod = CBall::one(prec);
    for i in 0..4 {
        for j in i + 1..4 {
            prod = &prod * &pair_factor(&powers[i], &powers[j], n);
        }
    }
    if !prod.im.contains_zero() {
        return Err(BallError::NotIsolated);
    }
    prod.re.unique_integer()
}

/// `bₙ = ∏ (xⁿ − yⁿ)/(x − y)` over the six pairs of roots of the standard
/// quartic. Every standard sequence term `aₙ` divides `bₙ`.
///
/// Evaluated in certified complex arithmetic starting at `precision` bits and
/// doubled until the ball isolates a single integer.
pub fn pair_product_bound(sp: &StandardParams, n: u64, precision: u32) -> Result<BigInt, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroIndex);
    }
    with_adaptive_precision(precision, MAX_PRECISION, |prec| pair_product_at(sp, n as usize, prec))
        .map(|(v, _)| v)
        .map_err(|source| PolyError::PrecisionExhausted {
            bits: MAX_PRECISION,
            source,
        })
}
