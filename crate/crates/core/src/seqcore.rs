//! Exact linear recurrences over the integers.
//!
//! Everything here uses arbitrary-size integers and nothing else; the other
//! modules check their certified numerics against these sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("recurrence must have order at least 1")]
    EmptyRecurrence,
    #[error("{coefficients} coefficients but {initial} initial terms")]
    OrderMismatch { coefficients: usize, initial: usize },
    #[error("last recurrence coefficient is zero; order is not genuine")]
    DegenerateOrder,
    #[error("Lucas parameter k must be nonzero")]
    ZeroK,
    #[error("windows differ: {0}")]
    WindowMismatch(String),
    #[error("window must contain at least one term")]
    EmptyWindow,
}

/// `aₙ = c₁aₙ₋₁ + … + c_d aₙ₋_d`.
///
/// The coefficients are stored in recurrence form. The matching monic
/// characteristic polynomial is `xᵈ − c₁xᵈ⁻¹ − … − c_d`; see
/// [`LinearRecurrence::from_char_poly`] and [`LinearRecurrence::char_poly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    coefficients: Vec<BigInt>,
    initial_terms: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coefficients: Vec<BigInt>, initial_terms: Vec<BigInt>) -> Result<Self, SeqError> {
        if coefficients.is_empty() {
            return Err(SeqError::EmptyRecurrence);
        }
        if coefficients.len() != initial_terms.len() {
            return Err(SeqError::OrderMismatch {
                coefficients: coefficients.len(),
                initial: initial_terms.len(),
            });
        }
        if coefficients.last().is_some_and(Zero::is_zero) {
            return Err(SeqError::DegenerateOrder);
        }
        Ok(LinearRecurrence {
            coefficients,
            initial_terms,
        })
    }

    /// Builds the recurrence from a monic characteristic polynomial given
    /// constant term first, `[a₀, …, a_{d−1}, 1]`.
    pub fn from_char_poly(monic: &[BigInt], initial_terms: Vec<BigInt>) -> Result<Self, SeqError> {
        let d = monic.len().saturating_sub(1);
        let coefficients = (1..=d).map(|i| -&monic[d - i]).collect();
        LinearRecurrence::new(coefficients, initial_terms)
    }

    /// Monic characteristic polynomial, constant term first.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let d = self.order();
        let mut out = vec![BigInt::zero(); d + 1];
        out[d] = BigInt::one();
        for (i, c) in self.coefficients.iter().enumerate() {
            out[d - 1 - i] = -c;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn initial_terms(&self) -> &[BigInt] {
        &self.initial_terms
    }

    /// Next term from the last `d` terms (oldest first).
    fn step(&self, tail: &[BigInt]) -> BigInt {
        let d = self.order();
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * &tail[d - 1 - i])
            .sum()
    }

    /// `a₀ … a_{count−1}`.
    pub fn terms(&self, count: usize) -> SequenceWindow {
        assert!(count >= 1, "count must be positive");
        let d = self.order();
        let mut terms: Vec<BigInt> = self.initial_terms.iter().take(count).cloned().collect();
        while terms.len() < count {
            let next = self.step(&terms[terms.len() - d..]);
            terms.push(next);
        }
        SequenceWindow {
            start_index: 0,
            terms,
        }
    }
}

/// Evaluates `count` terms of `rec` starting at index 0.
pub fn recurrence_terms(rec: &LinearRecurrence, count: usize) -> SequenceWindow {
    rec.terms(count)
}

/// Lucas sequence with characteristic polynomial `x² − hx + k` and initial
/// terms 0, 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LucasParams {
    h: i64,
    k: i64,
}

impl LucasParams {
    pub fn new(h: i64, k: i64) -> Result<Self, SeqError> {
        if k == 0 {
            return Err(SeqError::ZeroK);
        }
        Ok(LucasParams { h, k })
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn recurrence(&self) -> LinearRecurrence {
        LinearRecurrence::new(
            vec![BigInt::from(self.h), BigInt::from(-self.k)],
            vec![BigInt::zero(), BigInt::one()],
        )
        .expect("k is nonzero")
    }

    pub fn terms(&self, count: usize) -> SequenceWindow {
        self.recurrence().terms(count)
    }
}

/// `Uₙ` of the Lucas sequence.
pub fn lucas_u(params: LucasParams, n: u64) -> BigInt {
    let (h, k) = (BigInt::from(params.h), BigInt::from(params.k));
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &h * &cur - &k * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Consecutive terms `a_s, a_{s+1}, …` of some sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWindow {
    pub start_index: u64,
    pub terms: Vec<BigInt>,
}

impl SequenceWindow {
    pub fn new(start_index: u64, terms: Vec<BigInt>) -> Result<Self, SeqError> {
        if terms.is_empty() {
            return Err(SeqError::EmptyWindow);
        }
        Ok(SequenceWindow { start_index, terms })
    }

    pub fn from_i64(start_index: u64, terms: &[i64]) -> Result<Self, SeqError> {
        SequenceWindow::new(start_index, terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term with absolute index `n`, if inside the window.
    pub fn get(&self, n: u64) -> Option<&BigInt> {
        n.checked_sub(self.start_index)
            .and_then(|i| self.terms.get(i as usize))
    }

    pub fn end_index(&self) -> u64 {
        self.start_index + self.terms.len() as u64
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        b.is_multiple_of(a)
    }
}

/// Every pair `(m, n)` with `1 ≤ m < n`, `m | n`, both indices inside the
/// window, and `aₘ ∤ aₙ`. Zero divides only zero.
///
/// Windows that do not start at 0 are checked on the indices they cover.
pub fn divisibility_check(window: &SequenceWindow) -> Vec<(u64, u64)> {
    let first = window.start_index.max(1);
    let end = window.end_index();
    let mut violations = Vec::new();
    for m in first..end {
        let am = window.get(m).expect("index inside window");
        let mut n = 2 * m;
        while n < end {
            if !divides(am, window.get(n).expect("index inside window")) {
                violations.push((m, n));
            }
            n += m;
        }
    }
    violations
}

/// Elementwise product of two windows over the same indices.
pub fn product_sequence(a: &SequenceWindow, b: &SequenceWindow) -> Result<SequenceWindow, SeqError> {
    if a.start_index != b.start_index || a.len() != b.len() {
        return Err(SeqError::WindowMismatch(format!(
            "[{}, {}) vs [{}, {})",
            a.start_index,
            a.end_index(),
            b.start_index,
            b.end_index()
        )));
    }
    Ok(SequenceWindow {
        start_index: a.start_index,
        terms: a.terms.iter().zip(&b.terms).map(|(x, y)| x * y).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lucas(h: i64, k: i64) -> LucasParams {
        LucasParams::new(h, k).unwrap()
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_u(lucas(1, -1), 5), BigInt::from(5));
        assert_eq!(lucas_u(lucas(7, 3), 0), BigInt::zero());
        assert_eq!(lucas_u(lucas(2, 1), 9), BigInt::from(9));
        assert_eq!(LucasParams::new(1, 0), Err(SeqError::ZeroK));
    }

    #[test]
    fn lucas_agrees_with_window() {
        let p = lucas(3, -2);
        let w = p.terms(25);
        for n in 0..25 {
            assert_eq!(w.terms[n], lucas_u(p, n as u64));
        }
    }

    #[test]
    fn t6_quartic_terms() {
        let rec = LinearRecurrence::from_char_poly(&ints(&[1, -6, 6, -6, 1]), ints(&[0, 1, 6, 29])).unwrap();
        assert_eq!(rec.terms(8).terms, ints(&[0, 1, 6, 29, 144, 725, 3654, 18409]));
        assert_eq!(rec.char_poly(), ints(&[1, -6, 6, -6, 1]));
    }

    #[test]
    fn t7_quartic_terms_include_1476() {
        let rec = LinearRecurrence::from_char_poly(&ints(&[1, -7, 7, -7, 1]), ints(&[0, 1, 7, 41])).unwrap();
        assert_eq!(rec.terms(8).terms, ints(&[0, 1, 7, 41, 245, 1476, 8897, 53621]));
    }

    #[test]
    fn order_one_doubling() {
        let rec = LinearRecurrence::new(ints(&[2]), ints(&[1])).unwrap();
        assert_eq!(rec.terms(4).terms, ints(&[1, 2, 4, 8]));
        assert_eq!(rec.terms(1).terms, ints(&[1]));
    }

    #[test]
    fn invalid_recurrences() {
        assert_eq!(LinearRecurrence::new(vec![], vec![]), Err(SeqError::EmptyRecurrence));
        assert!(matches!(
            LinearRecurrence::new(ints(&[1, 1]), ints(&[0])),
            Err(SeqError::OrderMismatch { .. })
        ));
        assert_eq!(LinearRecurrence::new(ints(&[1, 0]), ints(&[0, 1])), Err(SeqError::DegenerateOrder));
    }

    #[test]
    fn divisibility_examples() {
        assert!(divisibility_check(&lucas(1, -1).terms(30)).is_empty());
        let naturals = SequenceWindow::from_i64(0, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(divisibility_check(&naturals).is_empty());
        let bad = SequenceWindow::from_i64(0, &[0, 1, 2, 3, 5]).unwrap();
        assert_eq!(divisibility_check(&bad), vec![(2, 4)]);
    }

    #[test]
    fn zero_term_conventions() {
        // a₂ = 0 divides a₄ = 0 but not a₆ = 7.
        let w = SequenceWindow::from_i64(0, &[0, 1, 0, 1, 0, 1, 7]).unwrap();
        assert_eq!(divisibility_check(&w), vec![(2, 6)]);
    }

    #[test]
    fn product_examples() {
        let fib = SequenceWindow::from_i64(0, &[0, 1, 1, 2, 3, 5]).unwrap();
        assert_eq!(product_sequence(&fib, &fib).unwrap().terms, ints(&[0, 1, 1, 4, 9, 25]));
        let ones = SequenceWindow::from_i64(0, &[1; 6]).unwrap();
        assert_eq!(product_sequence(&fib, &ones).unwrap(), fib);
        let fn_n = product_sequence(&lucas(1, -1).terms(5), &lucas(2, 1).terms(5)).unwrap();
        assert_eq!(fn_n.terms, ints(&[0, 1, 2, 6, 12]));
        let short = SequenceWindow::from_i64(0, &[0, 1]).unwrap();
        assert!(product_sequence(&fib, &short).is_err());
    }
}
