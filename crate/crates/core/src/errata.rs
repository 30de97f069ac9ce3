//! Ledger of discrepancies between the printed derivations and what this
//! crate computes. Each entry records the printed statement and the form
//! actually implemented.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrataEntry {
    pub id: &'static str,
    pub topic: &'static str,
    pub printed: &'static str,
    pub implemented: &'static str,
}

pub const LUCAS_COMPOSITION_QUARTIC: &str = "lucas-composition-quartic";
pub const COMPOSITION_DISPLAY_LINEAR_TERM: &str = "composition-display-linear-term";
pub const ZERO_TRACE_SYSTEM_RHS: &str = "zero-trace-system-rhs";
pub const ZERO_TRACE_SECOND_FAMILY_TERMS: &str = "zero-trace-second-family-terms";
pub const ALPHA_RECIPROCAL: &str = "salem-alpha-reciprocal";
pub const SMALLNESS_INEQUALITY_DIRECTION: &str = "smallness-inequality-direction";
pub const BINET_CLOSED_FORMS: &str = "binet-closed-forms";
pub const T7_MISSING_TERM: &str = "t7-missing-term";

static LEDGER: [ErrataEntry; 8] = [
    ErrataEntry {
        id: LUCAS_COMPOSITION_QUARTIC,
        topic: "Kronecker product of two Lucas quadratics",
        printed: "x^4 - h1h2 x^3 + (k1h1^2 - k2h1^2 + 2k1k2) x^2 + h1k1h2k2 x + k1^2k2^2",
        implemented: "x^4 - h1h2 x^3 + (k2h1^2 + k1h2^2 - 2k1k2) x^2 - h1h2k1k2 x + k1^2k2^2, consistent with p = h1h2, q = h1^2k2 + k1(h2^2 - 4k2), r = k1k2",
    },
    ErrataEntry {
        id: COMPOSITION_DISPLAY_LINEAR_TERM,
        topic: "Kronecker product in standard form",
        printed: "x^4 - px^3 + (q+2r)x^2 - px + r^2",
        implemented: "x^4 - px^3 + (q+2r)x^2 - prx + r^2",
    },
    ErrataEntry {
        id: ZERO_TRACE_SYSTEM_RHS,
        topic: "factorization systems for p = 0",
        printed: "h2^2 k1 = p + 4r and h2^2 k1 = p",
        implemented: "h2^2 k1 = q + 4r and h2^2 k1 = q, matching the stated families x^2 - sqrt(q+4r)x + r and x^2 - sqrt(q)x - r",
    },
    ErrataEntry {
        id: ZERO_TRACE_SECOND_FAMILY_TERMS,
        topic: "second factor family for p = 0",
        printed: "{x^2 + 1, x^2 - sqrt(q)x - r} factors the standard sequence",
        implemented: "family returned as printed; its product polynomial is correct but the product sequence has a3 = -q - r instead of -q - 3r, so sequence verification fails from n = 3",
    },
    ErrataEntry {
        id: ALPHA_RECIPROCAL,
        topic: "closed form of the Salem root alpha",
        printed: "alpha = 1/(4(p + sqrt(p^2-4q) + sqrt((p + sqrt(p^2-4q))^2 - 16)))",
        implemented: "alpha = (p + sqrt(p^2-4q) + sqrt((p + sqrt(p^2-4q))^2 - 16)) / 4, agreeing with the t-family closed form",
    },
    ErrataEntry {
        id: SMALLNESS_INEQUALITY_DIRECTION,
        topic: "error bound for u_n - lambda alpha^n",
        printed: "|u_n - lambda alpha^n| >= |lambda1 alpha^-n| + |lambda2| + |lambda3|",
        implemented: "|u_n - lambda alpha^n| <= |lambda1 alpha^-n| + |lambda2| + |lambda3| (triangle inequality)",
    },
    ErrataEntry {
        id: BINET_CLOSED_FORMS,
        topic: "Binet coefficients of the Salem standard sequence",
        printed: "lambda = lambda1 = alpha gamma/((alpha - gamma)(alpha gamma - 1)), lambda2 = lambda3 = -lambda",
        implemented: "coefficients solved from the 4x4 Vandermonde system against u0..u3 = 0, 1, p, p^2 - q - 3; the printed forms force u0 = 0 but not u1 = 1",
    },
    ErrataEntry {
        id: T7_MISSING_TERM,
        topic: "nearest-integer sequence for t = 7",
        printed: "1, 7, 41, 245, 8897, 53621",
        implemented: "1, 7, 41, 245, 1476, 8897, 53621 (the term 1476 at n = 5 is omitted in print)",
    },
];

pub fn ledger() -> &'static [ErrataEntry] {
    &LEDGER
}

pub fn entry(id: &str) -> Option<&'static ErrataEntry> {
    LEDGER.iter().find(|e| e.id == id)
}

/// The printed t = 7 list, for comparison against computed terms.
pub const T7_PRINTED: [i64; 6] = [1, 7, 41, 245, 8897, 53621];

/// Terms of `computed` (indexed from n = 1) absent from a printed list that
/// is otherwise a subsequence; returns `(n, term)` pairs.
pub fn omitted_terms(computed: &[i64], printed: &[i64]) -> Vec<(usize, i64)> {
    let mut missing = Vec::new();
    let mut it = printed.iter().peekable();
    for (i, &c) in computed.iter().enumerate() {
        if it.peek() == Some(&&c) {
            it.next();
        } else if it.peek().is_some() {
            missing.push((i + 1, c));
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_resolvable() {
        let mut ids: Vec<_> = ledger().iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), ledger().len());
        assert!(entry(T7_MISSING_TERM).is_some());
        assert!(entry("nope").is_none());
    }

    #[test]
    fn t7_omission_detected() {
        let computed = [1, 7, 41, 245, 1476, 8897, 53621];
        assert_eq!(omitted_terms(&computed, &T7_PRINTED), vec![(5, 1476)]);
        assert!(omitted_terms(&[1, 6, 29], &[1, 6, 29]).is_empty());
    }
}
