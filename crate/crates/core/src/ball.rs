//! Certified arbitrary-precision arithmetic.
//!
//! A [`Ball`] is a dyadic midpoint together with a non-negative radius; every
//! operation returns a ball that contains the exact result of applying the
//! operation to any points of the input balls. Midpoints are rounded to the
//! working precision of the ball and the rounding error is folded into the
//! radius. Radii are kept short (64-bit mantissa) and always rounded upward.
//!
//! [`CBall`] is the rectangular complex counterpart.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

const RAD_BITS: u64 = 64;

/// Failures that can be resolved by repeating the computation at a higher
/// precision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("division by a ball that contains zero")]
    DivisionByZero,
    #[error("square root of a ball that is entirely negative")]
    NegativeSqrt,
    #[error("complex square root straddles the branch cut")]
    BranchCut,
    #[error("ball contains a half-integer; nearest integer undecided")]
    RoundingUndecided,
    #[error("ball does not isolate a unique integer")]
    NotIsolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

/// Exact binary fraction `man · 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { man, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `e` with `|self| < 2^e`. Zero reports `i64::MIN`.
    pub fn magnitude_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bits() as i64
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        (a, b, e)
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u64, mode: Rounding) -> Dyadic {
        let bits = self.bits();
        if bits <= prec {
            return self.clone();
        }
        let k = bits - prec;
        let unit = BigInt::one() << k as usize;
        let q = match mode {
            Rounding::Floor => self.man.div_floor(&unit),
            Rounding::Ceil => self.man.div_ceil(&unit),
        };
        Dyadic::new(q, self.exp + k as i64)
    }

    /// Quotient with at least `prec` significant bits, rounded in the given
    /// direction. The flag reports whether the quotient is exact.
    pub fn div(&self, other: &Dyadic, prec: u64, mode: Rounding) -> (Dyadic, bool) {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), true);
        }
        let shift = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_mod_floor(&other.man);
        let exact = r.is_zero();
        let q = if !exact && mode == Rounding::Ceil {
            q + 1
        } else {
            q
        };
        (Dyadic::new(q, self.exp - other.exp - shift), exact)
    }

    /// Square root of a non-negative value with at least `prec` significant
    /// bits, rounded in the given direction.
    pub fn sqrt(&self, prec: u64, mode: Rounding) -> (Dyadic, bool) {
        assert!(!self.is_negative(), "dyadic sqrt of a negative value");
        if self.is_zero() {
            return (Dyadic::zero(), true);
        }
        let mut shift = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << shift as usize;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let r = if !exact && mode == Rounding::Ceil {
            r + 1
        } else {
            r
        };
        (Dyadic::new(r, (self.exp - shift) / 2), exact)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            self.man.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    /// Nearest `f64`; only for display and heuristics.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.man >> drop as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + drop;
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal expansion truncated (toward zero) after `digits` fractional
    /// digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.exp >= 0 {
            return self.floor().to_string();
        }
        let neg = self.is_negative();
        let scaled = (self.man.abs() * BigInt::from(10u32).pow(digits as u32)) >> (-self.exp) as usize;
        let s = scaled.to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int_part, frac) = s.split_at(s.len() - digits);
        let frac = frac.trim_end_matches('0');
        let sign = if neg && (int_part != "0" || !frac.is_empty()) {
            "-"
        } else {
            ""
        };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.man.sign();
        let sb = other.man.sign();
        if sa != sb || sa == Sign::NoSign {
            return sa.cmp(&sb);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }
}

fn rad_up(x: &Dyadic) -> Dyadic {
    x.round(RAD_BITS, Rounding::Ceil)
}

/// Real ball `[mid − rad, mid + rad]` at a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl Ball {
    /// Exact ball; the midpoint is kept at full length.
    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        Ball {
            mid,
            rad: Dyadic::zero(),
            prec,
        }
    }

    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        Ball::finish(mid, rad, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Ball::exact(Dyadic::from_int(v), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Ball::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Ball::exact(Dyadic::one(), prec)
    }

    /// Ball enclosing `num / den`.
    pub fn from_ratio<A: Into<BigInt>, B: Into<BigInt>>(num: A, den: B, prec: u32) -> Result<Self, BallError> {
        Ball::from_int(num, prec).div(&Ball::from_int(den, prec))
    }

    fn finish(mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        let rounded = mid.round(prec as u64, Rounding::Floor);
        let err = &mid - &rounded;
        let rad = if err.is_zero() { rad } else { &rad + &err };
        Ball {
            mid: rounded,
            rad: rad_up(&rad),
            prec,
        }
    }

    pub fn midpoint(&self) -> &Dyadic {
        &self.mid
    }

    pub fn radius(&self) -> &Dyadic {
        &self.rad
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        &self.mid.abs() + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rad.is_zero() && self.mid.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        (&self.mid - x).abs() <= self.rad
    }

    pub fn contains_int(&self, x: &BigInt) -> bool {
        self.contains(&Dyadic::from_int(x.clone()))
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn lt(&self, other: &Ball) -> bool {
        self.upper() < other.lower()
    }

    pub fn abs(&self) -> Ball {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Same value, different working precision for subsequent operations.
    pub fn with_precision(&self, prec: u32) -> Ball {
        Ball {
            mid: self.mid.clone(),
            rad: self.rad.clone(),
            prec,
        }
    }

    /// Ball scaled by `2^e` (exact).
    pub fn mul_pow2(&self, e: i64) -> Ball {
        let p = Dyadic::pow2(e);
        Ball {
            mid: &self.mid * &p,
            rad: &self.rad * &p,
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    pub fn div(&self, other: &Ball) -> Result<Ball, BallError> {
        if other.contains_zero() {
            return Err(BallError::DivisionByZero);
        }
        let prec = self.prec.max(other.prec);
        let (q, exact) = self.mid.div(&other.mid, prec as u64, Rounding::Floor);
        let mut rad = if exact {
            Dyadic::zero()
        } else {
            Dyadic::pow2(q.exponent())
        };
        if !self.rad.is_zero() || !other.rad.is_zero() {
            let ym = other.mid.abs();
            let num = &(&self.rad * &ym) + &(&self.mid.abs() * &other.rad);
            let den = &ym * &(&ym - &other.rad);
            let (prop, _) = num.div(&den, RAD_BITS, Rounding::Ceil);
            rad = &rad + &prop;
        }
        Ok(Ball::finish(q, rad, prec))
    }

    pub fn recip(&self) -> Result<Ball, BallError> {
        Ball::one(self.prec).div(self)
    }

    /// Square root. A ball that straddles zero yields `[0, √upper]`, which
    /// encloses the square root of every non-negative point of the input.
    pub fn sqrt(&self) -> Result<Ball, BallError> {
        let prec = self.prec;
        if self.is_negative() {
            return Err(BallError::NegativeSqrt);
        }
        let lo = self.lower();
        if !lo.is_positive() {
            let (top, _) = self.upper().sqrt(RAD_BITS, Rounding::Ceil);
            let half = &top * &Dyadic::pow2(-1);
            return Ok(Ball::with_radius(half.clone(), half, prec));
        }
        let (s, exact) = self.mid.sqrt(prec as u64, Rounding::Floor);
        // floor rounding: the true root lies in [s, s + 2^exp(s)).
        let mut rad = if exact {
            Dyadic::zero()
        } else {
            Dyadic::pow2(s.exponent())
        };
        if !self.rad.is_zero() {
            let (root_lo, _) = lo.sqrt(RAD_BITS, Rounding::Floor);
            let den = &root_lo * &Dyadic::from_int(2);
            let (prop, _) = self.rad.div(&den, RAD_BITS, Rounding::Ceil);
            rad = &rad + &prop;
        }
        Ok(Ball::finish(s, rad, prec))
    }

    pub fn pow(&self, n: u32) -> Ball {
        let mut result = Ball::one(self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// `E(x)`: the unique integer `k` with `x ∈ (k − ½, k + ½)` for every
    /// point of the ball. Fails if any point of the ball is a half-integer
    /// or the ball is too wide.
    pub fn nearest_integer(&self) -> Result<BigInt, BallError> {
        let half = Dyadic::pow2(-1);
        let k = (&self.mid + &half).floor();
        let kd = Dyadic::from_int(k.clone());
        if self.lower() > &kd - &half && self.upper() < &kd + &half {
            Ok(k)
        } else {
            Err(BallError::RoundingUndecided)
        }
    }

    /// The single integer contained in the ball, when the ball is narrower
    /// than one unit and contains one.
    pub fn unique_integer(&self) -> Result<BigInt, BallError> {
        if self.rad >= Dyadic::pow2(-1) {
            return Err(BallError::NotIsolated);
        }
        let f = self.mid.floor();
        for cand in [f.clone(), f + 1] {
            if self.contains_int(&cand) {
                return Ok(cand);
            }
        }
        Err(BallError::NotIsolated)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// `log2` of an upper bound on the radius, or `None` for an exact ball.
    pub fn radius_log2(&self) -> Option<i64> {
        if self.rad.is_zero() {
            None
        } else {
            Some(self.rad.magnitude_exp())
        }
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.mid.to_decimal(digits))?;
        match self.radius_log2() {
            Some(e) => write!(f, " ± 2^{e}"),
            None => Ok(()),
        }
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball::finish(&self.mid + &rhs.mid, &self.rad + &rhs.rad, self.prec.max(rhs.prec))
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball::finish(&self.mid - &rhs.mid, &self.rad + &rhs.rad, self.prec.max(rhs.prec))
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let rad = &(&(&self.mid.abs() * &rhs.rad) + &(&rhs.mid.abs() * &self.rad)) + &(&self.rad * &rhs.rad);
        Ball::finish(&self.mid * &rhs.mid, rad, self.prec.max(rhs.prec))
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }
}

/// Rectangular complex ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let prec = re.prec;
        CBall {
            re,
            im: Ball::zero(prec),
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        CBall::real(Ball::from_int(v, prec))
    }

    pub fn zero(prec: u32) -> Self {
        CBall::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        CBall::from_int(1, prec)
    }

    /// The imaginary unit.
    pub fn i(prec: u32) -> Self {
        CBall::new(Ball::zero(prec), Ball::one(prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn is_real_exact(&self) -> bool {
        self.im.is_exact_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_gaussian(&self, re: &BigInt, im: &BigInt) -> bool {
        self.re.contains_int(re) && self.im.contains_int(im)
    }

    /// Upper bound on the larger of the two component radii.
    pub fn radius(&self) -> Dyadic {
        self.re.rad.clone().max(self.im.rad.clone())
    }

    /// Upper bound on `|self − z|` for integer `z = re + i·im`, using the
    /// max-norm of the componentwise distance.
    pub fn distance_bound(&self, re: &BigInt, im: &BigInt) -> Dyadic {
        let dr = &(&self.re.mid - &Dyadic::from_int(re.clone())).abs() + &self.re.rad;
        let di = &(&self.im.mid - &Dyadic::from_int(im.clone())).abs() + &self.im.rad;
        dr.max(di)
    }

    pub fn conj(&self) -> CBall {
        CBall::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, k: &Ball) -> CBall {
        CBall::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, e: i64) -> CBall {
        CBall::new(self.re.mul_pow2(e), self.im.mul_pow2(e))
    }

    pub fn sqr(&self) -> CBall {
        self * self
    }

    pub fn norm_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Result<Ball, BallError> {
        if self.im.is_exact_zero() {
            return Ok(self.re.abs());
        }
        if self.re.is_exact_zero() {
            return Ok(self.im.abs());
        }
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, other: &CBall) -> Result<CBall, BallError> {
        if other.im.is_exact_zero() {
            return Ok(CBall::new(self.re.div(&other.re)?, self.im.div(&other.re)?));
        }
        let den = other.norm_sqr();
        let num = self * &other.conj();
        Ok(CBall::new(num.re.div(&den)?, num.im.div(&den)?))
    }

    pub fn recip(&self) -> Result<CBall, BallError> {
        CBall::one(self.precision()).div(self)
    }

    /// Principal square root: non-negative real part, and on the negative
    /// real axis the root with positive imaginary part.
    pub fn sqrt(&self) -> Result<CBall, BallError> {
        let prec = self.precision();
        if self.im.is_exact_zero() {
            if self.re.is_positive() {
                return Ok(CBall::real(self.re.sqrt()?));
            }
            if self.re.is_negative() {
                return Ok(CBall::new(Ball::zero(prec), (-&self.re).sqrt()?));
            }
            let (top, _) = self.re.abs_upper().sqrt(RAD_BITS, Rounding::Ceil);
            let b = Ball::with_radius(Dyadic::zero(), top, prec);
            return Ok(CBall::new(b.clone(), b));
        }
        if !self.re.is_positive() && self.im.contains_zero() {
            return Err(BallError::BranchCut);
        }
        let modulus = self.abs()?;
        let two = Ball::from_int(2, prec);
        if self.re.is_positive() || !self.re.midpoint().is_negative() {
            let t = (&modulus + &self.re).mul_pow2(-1).sqrt()?;
            let im = self.im.div(&(&t * &two))?;
            Ok(CBall::new(t, im))
        } else {
            let t = (&modulus - &self.re).mul_pow2(-1).sqrt()?;
            let re = self.im.abs().div(&(&t * &two))?;
            let im = if self.im.is_negative() { -&t } else { t };
            Ok(CBall::new(re, im))
        }
    }

    pub fn pow(&self, n: u32) -> CBall {
        let mut result = CBall::one(self.precision());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Rounds both components to the nearest integers when the ball is
    /// narrow enough and contains that Gaussian integer.
    pub fn nearest_gaussian(&self) -> Option<(BigInt, BigInt)> {
        let half = Dyadic::pow2(-1);
        if self.re.rad >= half || self.im.rad >= half {
            return None;
        }
        let re = (&self.re.mid + &half).floor();
        let im = (&self.im.mid + &half).floor();
        self.contains_gaussian(&re, &im).then_some((re, im))
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "({:.*}) + ({:.*})i", digits, self.re, digits, self.im)
    }
}

impl Add for &CBall {
    type Output = CBall;
    fn add(self, rhs: &CBall) -> CBall {
        CBall::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CBall {
    type Output = CBall;
    fn sub(self, rhs: &CBall) -> CBall {
        CBall::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CBall {
    type Output = CBall;
    fn mul(self, rhs: &CBall) -> CBall {
        if self.im.is_exact_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_exact_zero() {
            return self.scale(&rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        CBall::new(re, im)
    }
}

impl Neg for &CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall::new(-&self.re, -&self.im)
    }
}

/// Runs `f` at `start` bits, doubling on every precision failure until `cap`
/// is exceeded. Returns the value and the precision that produced it, or the
/// last failure.
pub fn with_adaptive_precision<T>(
    start: u32,
    cap: u32,
    mut f: impl FnMut(u32) -> Result<T, BallError>,
) -> Result<(T, u32), BallError> {
    let mut prec = start.max(16);
    loop {
        match f(prec) {
            Ok(v) => return Ok((v, prec)),
            Err(e) if prec >= cap => return Err(e),
            Err(_) => prec = (prec * 2).min(cap),
        }
    }
}
