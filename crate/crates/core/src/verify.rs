//! Cross-checks of every closed form, generating function and bijection
//! against exhaustive enumeration.
//!
//! Each `check_*` function runs one suite and returns a [`SuiteResult`];
//! [`run_verify`] runs them all in a fixed order up to a common bound. The
//! joint-distribution formula is taken from a [`Formulas`] value so that
//! the harness itself can be tested with a deliberately broken formula.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::bijections::{
    canonicalize, enumerate_polyominoes, gdp_to_pair, insert_low_peaks, pair_to_gdp,
    polyomino_to_primitive, primitive_to_polyomino, remove_low_peaks, restore_order,
    section3_forward, section3_inverse, Color,
};
use crate::combinatorics::{
    self, binomial, catalan, count_item3, count_item4, count_item5, dyck_components_count,
    munarini_term, simplex_cells, v_count, BigCount, IdentityReport,
};
use crate::compositions::{enumerate_irreducible_pairs_capped, DEFAULT_COMPOSITION_CAP};
use crate::paths::{enumerate_dyck_capped, enumerate_grand_dyck_capped, Histogram, PathError};
use crate::series::{
    catalan_series, expand_comps_above, expand_f, expand_irreducible_gf, expand_no_low_peaks,
    MultiPoly, Specialization, TruncatedSeries,
};

/// Failure messages kept per suite; the count is always exact.
const MAX_MESSAGES: usize = 20;

/// The formulas under test.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub u_count: fn(usize, usize, usize, usize) -> BigCount,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            u_count: combinatorics::u_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cells_checked: u64,
    pub failures: u64,
    pub messages: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cells_checked: 0,
            failures: 0,
            messages: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cells_checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn check_eq<T: PartialEq + Display>(&mut self, what: impl Display, got: T, want: T) {
        self.check(got == want, || format!("{what}: got {got}, expected {want}"));
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.messages.len() < MAX_MESSAGES {
            self.messages.push(msg);
        }
    }
}

fn timed(name: &'static str, body: impl FnOnce(&mut SuiteResult) -> Result<(), PathError>) -> Result<SuiteResult, PathError> {
    let start = Instant::now();
    let mut r = SuiteResult::new(name);
    body(&mut r)?;
    r.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n_max: usize,
    pub suites: Vec<SuiteResult>,
}

#[derive(Serialize)]
struct SuiteRecord<'a> {
    name: &'a str,
    cells_checked: u64,
    failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
    messages: &'a [String],
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    n_max: usize,
    suites: Vec<SuiteRecord<'a>>,
    overall: &'a str,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    /// Timings are only written when asked for, so that the default output
    /// is byte-for-byte reproducible.
    pub fn to_json(&self, timings: bool) -> String {
        let record = ReportRecord {
            n_max: self.n_max,
            suites: self
                .suites
                .iter()
                .map(|s| SuiteRecord {
                    name: s.name,
                    cells_checked: s.cells_checked,
                    failures: s.failures,
                    elapsed_ms: timings.then_some(s.elapsed_ms),
                    messages: &s.messages,
                })
                .collect(),
            overall: if self.passed() { "pass" } else { "fail" },
        };
        serde_json::to_string_pretty(&record).expect("report serializes")
    }
}

fn all_paths(n: usize, cap: usize) -> Result<Vec<crate::paths::GrandDyckPath>, PathError> {
    Ok(enumerate_grand_dyck_capped(n, cap)?.collect())
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn big_u(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Both sides of the central-binomial identity, formula side only.
pub fn check_identity(n_max: usize, f: &Formulas) -> SuiteResult {
    let mut r = SuiteResult::new("identity");
    for n in 0..=n_max {
        let rep = IdentityReport::build(n, None, f.u_count);
        r.check_eq(format_args!("n={n} 1 + sum u"), &rep.rhs, &rep.lhs);
    }
    r
}

/// Joint-distribution formula against the exhaustive histogram on every
/// cell of the simplex, zeros included.
pub fn check_joint_distribution(n_max: usize, cap: usize, f: &Formulas) -> Result<SuiteResult, PathError> {
    timed("joint_distribution", |r| {
        for n in 0..=n_max {
            let hist = Histogram::from_paths(n, enumerate_grand_dyck_capped(n, cap)?);
            let rep = IdentityReport::build(n, Some(&hist), f.u_count);
            for c in &rep.cells {
                let oracle = c.oracle.clone().unwrap_or_default();
                r.check_eq(format_args!("n={n} cell {}", c.cell), &c.formula, &oracle);
            }
            r.check_eq(format_args!("n={n} histogram total"), big_u(hist.total()), binomial(2 * n, n as i64));
        }
        Ok(())
    })
}

/// Coefficients of the four-variable generating function against the
/// histogram, integrality, and the first-return functional equation.
pub fn check_generating_function(order: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("generating_function", |r| {
        let f = expand_f(order).expect("denominator has constant term 2");
        r.check(f.is_integral(), || "F has a non-integral coefficient".into());
        for n in 0..=order {
            let hist = Histogram::from_paths(n, enumerate_grand_dyck_capped(n, cap)?);
            let poly = f.coeff(n);
            r.check(poly.has_nonnegative_coefficients(), || format!("x^{n} has a negative coefficient"));
            let mut seen = BTreeSet::new();
            for (c, &v) in &hist.cells {
                let e = [c.i as u32, c.j as u32, c.k as u32];
                seen.insert(e);
                r.check_eq(format_args!("[x^{n} y^{} z^{} w^{}] F", c.i, c.j, c.k), poly.coeff(e), int(v));
            }
            for (e, c) in poly.terms() {
                if !seen.contains(e) {
                    r.fail(format!("[x^{n} y^{} z^{} w^{}] F = {c} but no such path exists", e[0], e[1], e[2]));
                }
            }
        }
        // F = 1 + x y z w F + x (C - 1) z w F + x C w F
        let (y, z, w) = (MultiPoly::y(), MultiPoly::z(), MultiPoly::w());
        let c = catalan_series(order);
        let c_minus_1 = c.checked_sub(&TruncatedSeries::one(order)).unwrap();
        let low = f.shift().scale_poly(&(&(&y * &z) * &w));
        let above = c_minus_1.checked_mul(&f).unwrap().shift().scale_poly(&(&z * &w));
        let below = c.checked_mul(&f).unwrap().shift().scale_poly(&w);
        let rhs = TruncatedSeries::one(order)
            .checked_add(&low)
            .and_then(|s| s.checked_add(&above))
            .and_then(|s| s.checked_add(&below))
            .unwrap();
        for n in 0..=order {
            r.check(rhs.coeff(n) == f.coeff(n), || format!("functional equation fails at x^{n}"));
        }
        Ok(())
    })
}

/// The low-peak-free series against brute-force path counts, the closed-form
/// sum over j, the specialization of F, and (up to `pair_order`) brute-force
/// irreducible-pair counts of `n + 1`.
pub fn check_no_low_peaks(order: usize, pair_order: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("no_low_peaks", |r| {
        let s = expand_no_low_peaks(order).expect("unit constant term");
        let irr = expand_irreducible_gf(order).expect("unit constant term");
        let f = expand_f(order).expect("unit constant term");
        let spec = f.specialize(&Specialization::ints(Some(0), Some(1), Some(1)));
        for n in 0..=order {
            let coeff = s.coeff(n).as_constant().unwrap_or_default();
            let brute = enumerate_grand_dyck_capped(n, cap)?.filter(|p| p.low_peaks() == 0).count();
            r.check_eq(format_args!("[x^{n}] low-peak-free vs paths"), &coeff, &int(brute));
            let munarini: BigCount = (0..=n).map(|j| munarini_term(n, j)).sum();
            r.check_eq(format_args!("[x^{n}] low-peak-free vs closed-form sum"), &coeff, &int(munarini));
            r.check(spec.coeff(n) == s.coeff(n), || format!("[x^{n}] F(x,0,1,1) differs"));
            r.check(irr.coeff(n) == s.coeff(n), || format!("[x^{n}] irreducible series differs"));
            if n <= pair_order && n < DEFAULT_COMPOSITION_CAP {
                let pairs = enumerate_irreducible_pairs_capped(n + 1, DEFAULT_COMPOSITION_CAP)
                    .expect("within cap")
                    .count();
                r.check_eq(format_args!("[x^{n}] vs irreducible pairs of {}", n + 1), &coeff, &int(pairs));
            }
        }
        Ok(())
    })
}

/// Paths by components above ground: series, closed form and brute force.
pub fn check_comps_above(order: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("comps_above", |r| {
        let s = expand_comps_above(order).expect("constant term 2");
        let spec = expand_f(order)
            .expect("unit constant term")
            .specialize(&Specialization::ints(Some(1), None, Some(1)));
        for n in 0..=order {
            r.check(spec.coeff(n) == s.coeff(n), || format!("[x^{n}] F(x,1,z,1) differs"));
            let mut brute = vec![0u64; n + 1];
            for p in enumerate_grand_dyck_capped(n, cap)? {
                brute[p.stats().j] += 1;
            }
            for (j, &b) in brute.iter().enumerate() {
                let coeff = s.coefficient(n, [0, j as u32, 0]);
                r.check_eq(format_args!("[x^{n} z^{j}] vs closed form"), &coeff, &int(count_item3(n, j)));
                r.check_eq(format_args!("[x^{n} z^{j}] vs paths"), &coeff, &int(b));
            }
            r.check(s.coeff(n).terms().all(|(e, _)| e[1] as usize <= n && e[0] == 0 && e[2] == 0), || {
                format!("[x^{n}] has terms outside z^0..z^n")
            });
        }
        Ok(())
    })
}

/// The five single- and two-statistic closed forms against brute force.
pub fn check_counts(n_max: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("counts", |r| {
        for n in 0..=n_max {
            let mut lpf_j = vec![0u64; n + 1];
            let mut lpf_jk = BTreeMap::new();
            let mut all_j = vec![0u64; n + 1];
            let mut all_jk = BTreeMap::new();
            let mut big_j = vec![0u64; n + 1];
            for p in enumerate_grand_dyck_capped(n, cap)? {
                let st = p.stats();
                all_j[st.j] += 1;
                *all_jk.entry((st.j, st.k)).or_insert(0u64) += 1;
                big_j[p.big_components_above()] += 1;
                if st.i == 0 {
                    lpf_j[st.j] += 1;
                    *lpf_jk.entry((st.j, st.k)).or_insert(0u64) += 1;
                }
            }
            for j in 0..=n {
                r.check_eq(format_args!("item 1 n={n} j={j}"), munarini_term(n, j), big_u(lpf_j[j]));
                r.check_eq(format_args!("item 3 n={n} j={j}"), count_item3(n, j), big_u(all_j[j]));
                r.check_eq(format_args!("item 5 n={n} j={j}"), count_item5(n, j), big_u(big_j[j]));
                for k in j..=n {
                    let brute_lpf = lpf_jk.get(&(j, k)).copied().unwrap_or(0);
                    if n == 0 || j + k < 2 * n {
                        match v_count(n, j, k) {
                            Ok(v) => r.check_eq(format_args!("item 2 n={n} j={j} k={k}"), v, big_u(brute_lpf)),
                            Err(e) => r.fail(format!("item 2 n={n} j={j} k={k}: {e}")),
                        }
                    } else {
                        r.check(brute_lpf == 0, || format!("low-peak-free path with j+k=2n at n={n}"));
                    }
                    let brute_all = all_jk.get(&(j, k)).copied().unwrap_or(0);
                    r.check_eq(format_args!("item 4 n={n} j={j} k={k}"), count_item4(n, j, k), big_u(brute_all));
                }
            }
        }
        Ok(())
    })
}

/// Component rewriting and low-peak removal as bijections.
pub fn check_section3(n_max: usize, cap: usize, f: &Formulas) -> Result<SuiteResult, PathError> {
    timed("section3_bijection", |r| {
        for n in 0..=n_max {
            let paths = all_paths(n, cap)?;
            let mut images: BTreeMap<(usize, usize), BTreeSet<String>> = BTreeMap::new();
            for p in paths.iter().filter(|p| p.low_peaks() == 0) {
                let (pattern, canon) = canonicalize(p);
                r.check(restore_order(&pattern, &canon).as_ref() == Ok(p), || format!("reordering {p} does not round-trip"));
                if &canon != p {
                    continue;
                }
                let st = p.stats();
                match section3_forward(p) {
                    Ok(d) => {
                        r.check_eq(format_args!("components of image of {p}"), d.component_count(), st.j + st.k);
                        r.check_eq(format_args!("size of image of {p}"), d.semilength(), n);
                        match section3_inverse(&d, st.j) {
                            Ok(back) => r.check_eq(format_args!("inverse of image of {p}"), back.to_string(), p.to_string()),
                            Err(e) => r.fail(format!("inverse of image of {p}: {e}")),
                        }
                        images.entry((st.j, st.k)).or_default().insert(d.to_string());
                    }
                    Err(e) => r.fail(format!("forward map on {p}: {e}")),
                }
            }
            // every Dyck path with m >= 2j components is hit from (j, m - j)
            let dyck: Vec<_> = enumerate_dyck_capped(n, cap)?.collect();
            for j in 0..=n {
                for k in j..=n {
                    if n > 0 && j + k >= 2 * n {
                        continue;
                    }
                    let got = images.get(&(j, k)).map_or(0, BTreeSet::len) as u64;
                    let want = dyck_components_count(n, j + k);
                    r.check_eq(format_args!("canonical n={n} j={j} k={k} vs generalized Catalan"), big_u(got), want.clone());
                    let direct = dyck.iter().filter(|d| d.component_count() == j + k).count() as u64;
                    r.check_eq(format_args!("Dyck paths n={n} with {} components", j + k), big_u(direct), want);
                    if let Some(set) = images.get(&(j, k)) {
                        for d in set {
                            let back = section3_inverse(&d.parse().unwrap(), j);
                            r.check(back.is_ok(), || format!("{d} has no preimage with j={j}"));
                        }
                    }
                }
            }
            // low-peak removal and insertion, and u = binomial(k, i) v
            let mut by_cell: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
            for p in &paths {
                let (rest, rec) = remove_low_peaks(p);
                r.check(rest.low_peaks() == 0, || format!("{p} still has low peaks after removal"));
                match insert_low_peaks(&rest, &rec) {
                    Ok(back) => r.check_eq(format_args!("low-peak round trip of {p}"), back.to_string(), p.to_string()),
                    Err(e) => r.fail(format!("reinserting low peaks into {p}: {e}")),
                }
                let st = p.stats();
                *by_cell.entry((st.i, st.j, st.k)).or_insert(0) += 1;
            }
            for c in simplex_cells(n) {
                let (i, j, k) = (c.i, c.j, c.k);
                let v = if (n - i) == 0 || (j - i) + (k - i) < 2 * (n - i) {
                    v_count(n - i, j - i, k - i).unwrap_or_default()
                } else {
                    BigUint::default()
                };
                let reduced = binomial(k, i as i64) * v;
                r.check_eq(format_args!("u vs binomial(k,i) v at n={n} {c}"), (f.u_count)(n, i, j, k), reduced);
                let brute = by_cell.get(&(i, j, k)).copied().unwrap_or(0);
                r.check_eq(format_args!("u vs paths at n={n} {c}"), (f.u_count)(n, i, j, k), big_u(brute));
            }
        }
        Ok(())
    })
}

/// Irreducible pairs of `n + 1` onto low-peak-free paths of size `n`.
pub fn check_section4(n_max: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("section4_bijection", |r| {
        for n in 0..=n_max.min(DEFAULT_COMPOSITION_CAP - 1) {
            let mut images = BTreeSet::new();
            let mut pairs = 0u64;
            for pair in enumerate_irreducible_pairs_capped(n + 1, DEFAULT_COMPOSITION_CAP).expect("within cap") {
                pairs += 1;
                match pair_to_gdp(&pair) {
                    Ok(g) => {
                        r.check_eq(format_args!("size of image of {pair}"), g.semilength(), n);
                        r.check_eq(format_args!("low peaks of image of {pair}"), g.low_peaks(), 0);
                        match gdp_to_pair(&g) {
                            Ok(back) => r.check_eq(format_args!("pair round trip of {pair}"), back.to_string(), pair.to_string()),
                            Err(e) => r.fail(format!("inverse on image of {pair}: {e}")),
                        }
                        let fresh = images.insert(g.clone());
                        r.check(fresh, || format!("{g} hit twice (second time by {pair})"));
                    }
                    Err(e) => r.fail(format!("pair_to_gdp({pair}): {e}")),
                }
            }
            let targets: Vec<_> = enumerate_grand_dyck_capped(n, cap)?.filter(|p| p.low_peaks() == 0).collect();
            r.check_eq(format_args!("n={n} image size vs low-peak-free paths"), images.len(), targets.len());
            r.check_eq(format_args!("n={n} pairs vs low-peak-free paths"), pairs, targets.len() as u64);
            for g in &targets {
                match gdp_to_pair(g).and_then(|p| pair_to_gdp(&p).map(|back| (p, back))) {
                    Ok((p, back)) => {
                        r.check(p.is_irreducible(), || format!("{g} maps to reducible {p}"));
                        r.check_eq(format_args!("path round trip of {g}"), back.to_string(), g.to_string());
                    }
                    Err(e) => r.fail(format!("gdp_to_pair({g}): {e}")),
                }
            }
        }
        Ok(())
    })
}

/// The polyomino bijection, exhaustively for each semiperimeter.
pub fn check_polyominoes(s_max: usize, cap: usize) -> Result<SuiteResult, PathError> {
    timed("polyomino_bijection", |r| {
        for s in 2..=s_max {
            let polys = enumerate_polyominoes(s);
            r.check_eq(format_args!("polyominoes of semiperimeter {s}"), big_u(polys.len() as u64), catalan(s - 1));
            let primitives: BTreeSet<String> = enumerate_dyck_capped(s, cap)?
                .filter(|d| d.is_primitive())
                .map(|d| d.to_string())
                .collect();
            r.check_eq(format_args!("primitive Dyck paths of size {s}"), big_u(primitives.len() as u64), catalan(s - 1));
            let mut images = BTreeSet::new();
            for p in &polys {
                let d = polyomino_to_primitive(p);
                r.check_eq(format_args!("size of image of {}|{}", p.upper(), p.lower()), d.semilength(), s);
                r.check(d.is_primitive(), || format!("{d} is not primitive"));
                match primitive_to_polyomino(&d, Color::First) {
                    Ok(back) => r.check(&back == p, || format!("{d} does not invert")),
                    Err(e) => r.fail(format!("inverse of {d}: {e}")),
                }
                images.insert(d.to_string());
            }
            r.check(images == primitives, || format!("image at s={s} is not the set of primitive paths"));
        }
        Ok(())
    })
}

/// Runs every suite with bounds derived from `n_max`, in a fixed order.
pub fn run_verify(n_max: usize, cap: usize, f: &Formulas) -> Result<VerifyReport, PathError> {
    if n_max > cap {
        return Err(PathError::Resource { n: n_max, cap });
    }
    let start = Instant::now();
    let mut identity = check_identity(n_max, f);
    identity.elapsed_ms = start.elapsed().as_millis();
    let suites = vec![
        identity,
        check_joint_distribution(n_max, cap, f)?,
        check_generating_function(n_max, cap)?,
        check_no_low_peaks(n_max, n_max, cap)?,
        check_comps_above(n_max, cap)?,
        check_counts(n_max, cap)?,
        check_section3(n_max, cap, f)?,
        check_section4(n_max, cap)?,
        check_polyominoes(n_max, cap)?,
    ];
    Ok(VerifyReport { n_max, suites })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::DEFAULT_CAP;

    fn off_by_one(n: usize, i: usize, j: usize, k: usize) -> BigCount {
        let v = combinatorics::u_count(n, i, j, k);
        if (n, i, j, k) == (3, 0, 1, 2) {
            v + 1u32
        } else {
            v
        }
    }

    #[test]
    fn small_runs_pass() {
        for n in [0, 1, 4] {
            let rep = run_verify(n, DEFAULT_CAP, &Formulas::default()).unwrap();
            assert!(rep.passed(), "{}", rep.to_json(false));
            assert_eq!(rep.suites.len(), 9);
        }
    }

    #[test]
    fn injected_fault_is_reported_by_cell() {
        let f = Formulas { u_count: off_by_one };
        let rep = run_verify(4, DEFAULT_CAP, &f).unwrap();
        assert!(!rep.passed());
        let joint = rep.suites.iter().find(|s| s.name == "joint_distribution").unwrap();
        assert_eq!(joint.failures, 1);
        assert_eq!(joint.messages, ["n=3 cell (0, 1, 2): got 3, expected 2"]);
        let identity = &rep.suites[0];
        assert!(!identity.passed());
        assert!(rep.to_json(false).contains("\"overall\": \"fail\""));
    }

    #[test]
    fn report_without_timings_is_stable() {
        let a = run_verify(3, DEFAULT_CAP, &Formulas::default()).unwrap();
        let b = run_verify(3, DEFAULT_CAP, &Formulas::default()).unwrap();
        assert_eq!(a.to_json(false), b.to_json(false));
        assert!(!a.to_json(false).contains("elapsed_ms"));
        assert!(a.to_json(true).contains("elapsed_ms"));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(run_verify(5, 4, &Formulas::default()).is_err());
    }
}
