//! Closed-form counters for the joint distribution of the path statistics
//! and for the single-statistic counts derived from it.
//!
//! Everything here is exact. Each formula is evaluated as an integer
//! numerator followed by one exact division; a nonzero remainder would mean
//! the formula is being evaluated outside the range where it is integral,
//! and is treated as a bug (panic) rather than rounded.
//!
//! Outside their combinatorial support the counters return zero, so they
//! can be summed over rectangular index ranges without guards. The one
//! exception is [`v_count`], which rejects `j + k >= 2n`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::paths::{histogram_capped, Cell, Histogram, PathError, DEFAULT_CAP};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("v({n}, {j}, {k}) is undefined: no low-peak-free path has j + k >= 2n")]
    Domain { n: usize, j: usize, k: usize },
}

fn big(x: i64) -> BigUint {
    BigUint::from(u64::try_from(x).expect("nonnegative factor"))
}

fn div_exact(num: BigUint, den: i64) -> BigUint {
    let (q, r) = num.div_rem(&big(den));
    assert!(r.is_zero(), "inexact division by {den}");
    q
}

/// `binomial(a, b)` for signed arguments; zero unless `0 <= b <= a`.
fn binom(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for t in 0..b {
        // acc * (a - t) is divisible by t + 1 at every step
        acc = div_exact(acc * big(a - t), t + 1);
    }
    acc
}

/// Binomial coefficient, zero when `b < 0` or `b > a`.
pub fn binomial(a: usize, b: i64) -> BigCount {
    binom(a as i64, b)
}

/// `binomial(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigCount {
    let n = n as i64;
    div_exact(binom(2 * n, n), n + 1)
}

/// Dyck paths of semilength `n` with exactly `k` returns to ground level:
/// `k / (2n - k) * binomial(2n - k, n - k)`, with `(0, 0) -> 1`.
pub fn dyck_components_count(n: usize, k: usize) -> BigCount {
    if k == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if k > n {
        return BigUint::zero();
    }
    let (n, k) = (n as i64, k as i64);
    div_exact(big(k) * binom(2 * n - k, n - k), 2 * n - k)
}

/// Low-peak-free paths of semilength `n` with `j` components above ground
/// level and `k - j` below.
///
/// `v(0, 0, 0) = 1` (the empty path). Any other input with `j <= k` and
/// `j + k >= 2n` is rejected.
pub fn v_count(n: usize, j: usize, k: usize) -> Result<BigCount, CountError> {
    if j > k {
        return Ok(BigUint::zero());
    }
    if j + k >= 2 * n {
        return if n == 0 && k == 0 {
            Ok(BigUint::one())
        } else {
            Err(CountError::Domain { n, j, k })
        };
    }
    let (n, j, k) = (n as i64, j as i64, k as i64);
    let num = binom(k, j) * big(j + k) * binom(2 * n - j - k, n - j - k);
    Ok(div_exact(num, 2 * n - j - k))
}

/// Paths of semilength `n` with `i` low peaks, `j` components above ground
/// level and `k` components in total.
///
/// Total: the sawtooth cell `(n, n, n)` is 1, every other cell with
/// `j + k >= 2n` or outside `0 <= i <= j <= k <= n` is 0.
pub fn u_count(n: usize, i: usize, j: usize, k: usize) -> BigCount {
    if !(i <= j && j <= k && k <= n) {
        return BigUint::zero();
    }
    if i == n {
        // forces j = k = n: the indeterminate 0/0 cell, counted as (UD)^n
        return BigUint::one();
    }
    if j + k >= 2 * n {
        return BigUint::zero();
    }
    let (n, i, j, k) = (n as i64, i as i64, j as i64, k as i64);
    let num = binom(k, i) * binom(k - i, j - i) * big(k - 2 * i + j) * binom(2 * n - j - k, n - i);
    div_exact(num, 2 * n - j - k)
}

/// `(3j + 1) / (n + j + 1) * binomial(2n - j, n - 2j)`: low-peak-free paths
/// of semilength `n` with `j` components above ground level.
pub fn munarini_term(n: usize, j: usize) -> BigCount {
    let (n, j) = (n as i64, j as i64);
    if n - 2 * j < 0 {
        return BigUint::zero();
    }
    div_exact(big(3 * j + 1) * binom(2 * n - j, n - 2 * j), n + j + 1)
}

/// Number of irreducible ordered pairs of compositions of `m` with equal
/// part counts; zero for `m = 0`.
pub fn irreducible_pairs_count(m: usize) -> BigCount {
    if m == 0 {
        return BigUint::zero();
    }
    let n = m - 1;
    (0..=n / 2).map(|j| munarini_term(n, j)).sum()
}

/// `(2j + 1) / (2n + 1) * binomial(2n + 1, n - j)`: paths of semilength
/// `n` with `j` components above ground level.
pub fn count_item3(n: usize, j: usize) -> BigCount {
    let (n, j) = (n as i64, j as i64);
    if n - j < 0 {
        return BigUint::zero();
    }
    div_exact(big(2 * j + 1) * binom(2 * n + 1, n - j), 2 * n + 1)
}

/// Paths of semilength `n` with `j` of their `k` components above ground.
pub fn count_item4(n: usize, j: usize, k: usize) -> BigCount {
    dyck_components_count(n, k) * binomial(k, j as i64)
}

/// `(2j + 1) / (n + 1) * binomial(2n + 2, n - 2j)`: paths of semilength
/// `n` with `j` components above ground of semilength at least 2.
pub fn count_item5(n: usize, j: usize) -> BigCount {
    let (n, j) = (n as i64, j as i64);
    if n - 2 * j < 0 {
        return BigUint::zero();
    }
    div_exact(big(2 * j + 1) * binom(2 * n + 2, n - 2 * j), n + 1)
}

/// All `(i, j, k)` with `0 <= i <= j <= k <= n`.
pub fn simplex_cells(n: usize) -> impl Iterator<Item = Cell> {
    (0..=n).flat_map(move |i| {
        (i..=n).flat_map(move |j| (j..=n).map(move |k| Cell::new(i, j, k)))
    })
}

/// One row of an [`IdentityReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub cell: Cell,
    pub formula: BigCount,
    pub oracle: Option<BigCount>,
    /// `None` when no oracle was consulted.
    pub matches: Option<bool>,
}

/// Both sides of the central-binomial identity at one semilength, with the
/// per-cell formula values and, optionally, the exhaustive counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub lhs: BigCount,
    pub rhs: BigCount,
    pub cells: Vec<CellCheck>,
}

#[derive(Serialize)]
struct CellRecord {
    i: usize,
    j: usize,
    k: usize,
    formula: String,
    oracle: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct ReportRecord {
    n: usize,
    lhs: String,
    rhs: String,
    holds: bool,
    cells: Vec<CellRecord>,
}

impl IdentityReport {
    /// Builds the report using `u` as the joint-distribution formula.
    ///
    /// The right-hand side is `1 + sum u(n, i, j, k)` over the simplex with
    /// `j + k < 2n`; the leading 1 is the sawtooth path. Cells are the whole
    /// simplex, plus any cell the oracle reports outside it.
    pub fn build<F>(n: usize, oracle: Option<&Histogram>, u: F) -> Self
    where
        F: Fn(usize, usize, usize, usize) -> BigCount,
    {
        let mut rhs = BigUint::one();
        let mut cells = Vec::new();
        for c in simplex_cells(n) {
            let formula = u(n, c.i, c.j, c.k);
            if c.j + c.k < 2 * n {
                rhs += &formula;
            }
            let oracle_value = oracle.map(|h| BigUint::from(h.get(c)));
            let matches = oracle_value.as_ref().map(|o| *o == formula);
            cells.push(CellCheck {
                cell: c,
                formula,
                oracle: oracle_value,
                matches,
            });
        }
        if let Some(h) = oracle {
            for (&c, &v) in &h.cells {
                if !(c.i <= c.j && c.j <= c.k && c.k <= n) {
                    cells.push(CellCheck {
                        cell: c,
                        formula: u(n, c.i, c.j, c.k),
                        oracle: Some(BigUint::from(v)),
                        matches: Some(false),
                    });
                }
            }
        }
        IdentityReport {
            n,
            lhs: binomial(2 * n, n as i64),
            rhs,
            cells,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.matches != Some(false))
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| c.matches == Some(false))
    }

    pub fn nonzero_cells(&self) -> usize {
        self.cells.iter().filter(|c| !c.formula.is_zero()).count()
    }

    pub fn to_json(&self) -> String {
        let record = ReportRecord {
            n: self.n,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            holds: self.holds(),
            cells: self
                .cells
                .iter()
                .map(|c| CellRecord {
                    i: c.cell.i,
                    j: c.cell.j,
                    k: c.cell.k,
                    formula: c.formula.to_string(),
                    oracle: c.oracle.as_ref().map(|o| o.to_string()),
                    matches: c.matches,
                })
                .collect(),
        };
        serde_json::to_string(&record).expect("report serializes")
    }

    /// Columns `i,j,k,formula,oracle,match`; oracle and match are blank
    /// when no oracle was consulted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,formula,oracle,match\n");
        for c in &self.cells {
            let oracle = c.oracle.as_ref().map(|o| o.to_string()).unwrap_or_default();
            let matches = c.matches.map(|m| m.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                c.cell.i, c.cell.j, c.cell.k, c.formula, oracle, matches
            )
            .unwrap();
        }
        out
    }
}

/// Checks the central-binomial identity at `n`, optionally comparing every
/// cell against the exhaustive histogram.
pub fn verify_identity(n: usize, with_oracle: bool) -> Result<IdentityReport, PathError> {
    verify_identity_capped(n, with_oracle, DEFAULT_CAP)
}

pub fn verify_identity_capped(
    n: usize,
    with_oracle: bool,
    cap: usize,
) -> Result<IdentityReport, PathError> {
    let hist = if with_oracle {
        Some(histogram_capped(n, cap)?)
    } else {
        None
    };
    Ok(IdentityReport::build(n, hist.as_ref(), u_count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), b(6));
        assert_eq!(binomial(5, -1), b(0));
        assert_eq!(binomial(5, 6), b(0));
        assert_eq!(binomial(20, 10), b(184_756));
        assert_eq!(binomial(0, 0), b(1));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), b(1));
        assert_eq!(catalan(3), b(5));
        assert_eq!(catalan(5), b(42));
    }

    #[test]
    fn dyck_components_examples() {
        assert_eq!(dyck_components_count(3, 1), b(2));
        assert_eq!(dyck_components_count(3, 3), b(1));
        assert_eq!(dyck_components_count(0, 0), b(1));
        assert_eq!(dyck_components_count(3, 0), b(0));
        assert_eq!(dyck_components_count(3, 4), b(0));
    }

    #[test]
    fn v_count_examples() {
        assert_eq!(v_count(2, 1, 1), Ok(b(1)));
        assert_eq!(v_count(2, 0, 2), Ok(b(1)));
        assert_eq!(v_count(5, 0, 1), Ok(b(14)));
        assert_eq!(v_count(0, 0, 0), Ok(b(1)));
        assert_eq!(v_count(3, 2, 1), Ok(b(0)));
        assert_eq!(v_count(2, 2, 2), Err(CountError::Domain { n: 2, j: 2, k: 2 }));
        assert_eq!(v_count(2, 1, 3), Err(CountError::Domain { n: 2, j: 1, k: 3 }));
    }

    #[test]
    fn u_count_examples() {
        assert_eq!(u_count(2, 1, 1, 2), b(2));
        assert_eq!(u_count(2, 2, 2, 2), b(1));
        assert_eq!(u_count(1, 0, 0, 1), b(1));
        assert_eq!(u_count(0, 0, 0, 0), b(1));
        assert_eq!(u_count(3, 2, 1, 3), b(0));
        assert_eq!(u_count(3, 0, 0, 4), b(0));
    }

    #[test]
    fn munarini_examples() {
        assert_eq!(munarini_term(3, 0), b(5));
        assert_eq!(munarini_term(3, 1), b(4));
        assert_eq!(munarini_term(2, 1), b(1));
        assert_eq!(munarini_term(3, 2), b(0));
    }

    #[test]
    fn irreducible_pairs_examples() {
        assert_eq!(irreducible_pairs_count(2), b(1));
        assert_eq!(irreducible_pairs_count(3), b(3));
        assert_eq!(irreducible_pairs_count(6), b(97));
        assert_eq!(irreducible_pairs_count(0), b(0));
    }

    #[test]
    fn item_examples() {
        assert_eq!(count_item3(2, 1), b(3));
        assert_eq!(count_item3(2, 2), b(1));
        assert_eq!(count_item3(1, 0), b(1));
        assert_eq!(count_item3(1, 2), b(0));

        assert_eq!(count_item4(2, 1, 2), b(2));
        assert_eq!(count_item4(2, 0, 1), b(1));
        assert_eq!(count_item4(3, 1, 1), b(2));

        assert_eq!(count_item5(2, 0), b(5));
        assert_eq!(count_item5(2, 1), b(1));
        assert_eq!(count_item5(1, 0), b(2));
    }

    #[test]
    fn identity_small_cases() {
        let r = verify_identity(2, true).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (b(6), b(6)));
        assert_eq!(r.nonzero_cells(), 5);
        assert!(r.all_match());

        let r = verify_identity(0, false).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (b(1), b(1)));
        assert!(r.cells.iter().all(|c| c.matches.is_none()));
    }

    #[test]
    fn identity_report_flags_a_wrong_formula() {
        let h = crate::paths::histogram(3).unwrap();
        let bad = |n, i, j, k| {
            let v = u_count(n, i, j, k);
            if (i, j, k) == (0, 1, 2) {
                v + 1u32
            } else {
                v
            }
        };
        let r = IdentityReport::build(3, Some(&h), bad);
        let wrong: Vec<_> = r.mismatches().map(|c| c.cell).collect();
        assert_eq!(wrong, [Cell::new(0, 1, 2)]);
        assert!(!r.holds());
    }

    #[test]
    fn identity_report_serialization() {
        let r = verify_identity(1, true).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("i,j,k,formula,oracle,match\n0,0,0,0,0,true\n"));
        assert!(csv.contains("1,1,1,1,1,true\n"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["lhs"], "2");
        assert_eq!(json["holds"], true);
        assert_eq!(json["cells"][0]["match"], true);
    }
}
