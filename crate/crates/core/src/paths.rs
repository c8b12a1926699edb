//! Grand-Dyck paths, their ground-level components and the four path
//! statistics, together with exhaustive enumerators.
//!
//! A path is a word over `U` and `D` with as many up steps as down steps.
//! Its vertices at height zero cut it into components; a component that
//! stays above ground is a primitive Dyck path and one that stays below is
//! an inverted primitive Dyck path. A *low peak* is a `UD` factor starting
//! at height zero, i.e. a component equal to `UD`.
//!
//! The enumerators are deliberately naive: they walk every word in
//! lexicographic order (`D` before `U`) and are what the closed-form
//! counters in [`crate::combinatorics`] are checked against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Largest semilength the enumerators accept unless told otherwise.
pub const DEFAULT_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unbalanced path: {ups} up steps but {downs} down steps")]
    Balance { ups: usize, downs: usize },
    #[error("invalid character {ch:?} at position {pos}, expected 'U' or 'D'")]
    Char { ch: char, pos: usize },
    #[error("semilength {n} exceeds the enumeration cap {cap}")]
    Resource { n: usize, cap: usize },
    #[error("not a Dyck path: goes below ground level at step {0}")]
    BelowGround(usize),
}

/// A single lattice step. `Down` sorts before `Up`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Down,
    Up,
}

impl Step {
    pub fn delta(self) -> i32 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// Which side of ground level a component lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Above,
    Below,
}

fn write_steps(f: &mut fmt::Formatter<'_>, steps: &[Step]) -> fmt::Result {
    for s in steps {
        write!(f, "{}", s.as_char())?;
    }
    Ok(())
}

pub(crate) fn reflect_steps(steps: &[Step]) -> Vec<Step> {
    steps.iter().map(|s| s.flip()).collect()
}

/// A balanced word of up and down steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GrandDyckPath {
    steps: Vec<Step>,
}

impl GrandDyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let ups = steps.iter().filter(|&&s| s == Step::Up).count();
        let downs = steps.len() - ups;
        if ups != downs {
            return Err(PathError::Balance { ups, downs });
        }
        Ok(GrandDyckPath { steps })
    }

    pub fn empty() -> Self {
        GrandDyckPath::default()
    }

    /// `(UD)^n`.
    pub fn sawtooth(n: usize) -> Self {
        let steps = (0..n).flat_map(|_| [Step::Up, Step::Down]).collect();
        GrandDyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights of the vertices, starting with the initial vertex at 0.
    pub fn heights(&self) -> Vec<i32> {
        let mut h = 0;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(0);
        for s in &self.steps {
            h += s.delta();
            out.push(h);
        }
        out
    }

    /// Mirror image in ground level: every `U` becomes `D` and vice versa.
    pub fn reflect(&self) -> Self {
        GrandDyckPath {
            steps: reflect_steps(&self.steps),
        }
    }

    pub fn is_dyck(&self) -> bool {
        let mut h = 0;
        self.steps.iter().all(|s| {
            h += s.delta();
            h >= 0
        })
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a [Step]>) -> Result<Self, PathError> {
        let steps = parts.into_iter().flatten().copied().collect();
        GrandDyckPath::new(steps)
    }

    pub fn low_peaks(&self) -> usize {
        let mut h = 0;
        let mut count = 0;
        for w in self.steps.windows(2) {
            if h == 0 && w[0] == Step::Up && w[1] == Step::Down {
                count += 1;
            }
            h += w[0].delta();
        }
        count
    }

    /// Splits the path at its interior ground-level vertices.
    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut h = 0;
        for (t, s) in self.steps.iter().enumerate() {
            h += s.delta();
            if h == 0 {
                let sign = if self.steps[start] == Step::Up {
                    Sign::Above
                } else {
                    Sign::Below
                };
                out.push(Component {
                    sign,
                    steps: self.steps[start..=t].to_vec(),
                });
                start = t + 1;
            }
        }
        out
    }

    pub fn stats(&self) -> PathStats {
        let comps = self.components();
        PathStats {
            n: self.semilength(),
            i: self.low_peaks(),
            j: comps.iter().filter(|c| c.sign == Sign::Above).count(),
            k: comps.len(),
        }
    }

    /// Number of components above ground level of semilength at least 2.
    pub fn big_components_above(&self) -> usize {
        self.components()
            .iter()
            .filter(|c| c.sign == Sign::Above && c.size() >= 2)
            .count()
    }
}

impl fmt::Display for GrandDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.steps)
    }
}

impl FromStr for GrandDyckPath {
    type Err = PathError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let steps = text
            .chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                _ => Err(PathError::Char { ch, pos }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        GrandDyckPath::new(steps)
    }
}

/// Parses a word over `{U, D}`. The empty string is the empty path.
pub fn parse_path(text: &str) -> Result<GrandDyckPath, PathError> {
    text.parse()
}

/// A Grand-Dyck path that never goes below ground level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckPath {
    path: GrandDyckPath,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        GrandDyckPath::new(steps)?.try_into()
    }

    pub fn as_path(&self) -> &GrandDyckPath {
        &self.path
    }

    pub fn steps(&self) -> &[Step] {
        self.path.steps()
    }

    pub fn semilength(&self) -> usize {
        self.path.semilength()
    }

    /// Number of returns to ground level.
    pub fn component_count(&self) -> usize {
        let mut h = 0;
        self.steps()
            .iter()
            .filter(|s| {
                h += s.delta();
                h == 0
            })
            .count()
    }

    /// Nonempty and touching ground level only at its endpoints.
    pub fn is_primitive(&self) -> bool {
        !self.path.is_empty() && self.component_count() == 1
    }

    /// `U P D`, which is always primitive.
    pub fn elevate(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(self.steps().len() + 2);
        steps.push(Step::Up);
        steps.extend_from_slice(self.steps());
        steps.push(Step::Down);
        DyckPath {
            path: GrandDyckPath { steps },
        }
    }
}

impl TryFrom<GrandDyckPath> for DyckPath {
    type Error = PathError;

    fn try_from(path: GrandDyckPath) -> Result<Self, Self::Error> {
        let mut h = 0;
        for (t, s) in path.steps().iter().enumerate() {
            h += s.delta();
            if h < 0 {
                return Err(PathError::BelowGround(t));
            }
        }
        Ok(DyckPath { path })
    }
}

impl From<DyckPath> for GrandDyckPath {
    fn from(d: DyckPath) -> Self {
        d.path
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.path.fmt(f)
    }
}

impl FromStr for DyckPath {
    type Err = PathError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.parse::<GrandDyckPath>()?.try_into()
    }
}

/// A maximal piece of a path between two consecutive ground-level vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub sign: Sign,
    pub steps: Vec<Step>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_low_peak(&self) -> bool {
        self.steps == [Step::Up, Step::Down]
    }

    /// The component as a path in its own right.
    pub fn to_path(&self) -> GrandDyckPath {
        GrandDyckPath {
            steps: self.steps.clone(),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.steps)
    }
}

/// Size, low peaks, components above ground level and total components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathStats {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl PathStats {
    pub fn cell(&self) -> Cell {
        Cell {
            i: self.i,
            j: self.j,
            k: self.k,
        }
    }
}

/// An `(i, j, k)` index into the joint distribution at fixed size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Cell {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        Cell { i, j, k }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// Lexicographic successor over balanced words of fixed semilength.
///
/// The rightmost `D` that can still be raised to `U` is raised and the
/// suffix is refilled with its smallest valid completion.
fn advance(steps: &mut [Step], n: usize, nonnegative: bool) -> bool {
    let mut ups_before = Vec::with_capacity(steps.len());
    let mut ups = 0;
    for s in steps.iter() {
        ups_before.push(ups);
        if *s == Step::Up {
            ups += 1;
        }
    }
    let Some(t) = (0..steps.len())
        .rev()
        .find(|&t| steps[t] == Step::Down && ups_before[t] < n)
    else {
        return false;
    };
    steps[t] = Step::Up;
    let mut ups_left = n - ups_before[t] - 1;
    let mut downs_left = steps.len() - t - 1 - ups_left;
    let mut h = 2 * (ups_before[t] as i64 + 1) - (t as i64 + 1);
    for s in steps[t + 1..].iter_mut() {
        let down = downs_left > 0 && (!nonnegative || h > 0);
        if down {
            *s = Step::Down;
            downs_left -= 1;
            h -= 1;
        } else {
            *s = Step::Up;
            ups_left -= 1;
            h += 1;
        }
    }
    debug_assert_eq!(ups_left + downs_left, 0);
    true
}

/// Stream of all Grand-Dyck paths of one semilength.
#[derive(Debug, Clone)]
pub struct GrandDyckPaths {
    n: usize,
    next: Option<Vec<Step>>,
}

impl Iterator for GrandDyckPaths {
    type Item = GrandDyckPath;

    fn next(&mut self) -> Option<GrandDyckPath> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance(&mut succ, self.n, false) {
            self.next = Some(succ);
        }
        Some(GrandDyckPath { steps: current })
    }
}

/// Stream of all Dyck paths of one semilength.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    n: usize,
    next: Option<Vec<Step>>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance(&mut succ, self.n, true) {
            self.next = Some(succ);
        }
        Some(DyckPath {
            path: GrandDyckPath { steps: current },
        })
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), PathError> {
    if n > cap {
        Err(PathError::Resource { n, cap })
    } else {
        Ok(())
    }
}

pub fn enumerate_grand_dyck(n: usize) -> Result<GrandDyckPaths, PathError> {
    enumerate_grand_dyck_capped(n, DEFAULT_CAP)
}

/// All `binomial(2n, n)` paths of semilength `n`, lexicographically with
/// `D < U`, starting from `D^n U^n`.
pub fn enumerate_grand_dyck_capped(n: usize, cap: usize) -> Result<GrandDyckPaths, PathError> {
    check_cap(n, cap)?;
    let mut first = vec![Step::Down; n];
    first.extend(std::iter::repeat_n(Step::Up, n));
    Ok(GrandDyckPaths {
        n,
        next: Some(first),
    })
}

pub fn enumerate_dyck(n: usize) -> Result<DyckPaths, PathError> {
    enumerate_dyck_capped(n, DEFAULT_CAP)
}

/// All Catalan(n) Dyck paths of semilength `n`, lexicographically with
/// `D < U`, starting from `(UD)^n`.
pub fn enumerate_dyck_capped(n: usize, cap: usize) -> Result<DyckPaths, PathError> {
    check_cap(n, cap)?;
    Ok(DyckPaths {
        n,
        next: Some(GrandDyckPath::sawtooth(n).steps),
    })
}

/// Exhaustive tally of `(i, j, k)` over every path of one semilength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub n: usize,
    pub cells: BTreeMap<Cell, u64>,
}

#[derive(Serialize)]
struct HistogramRecord {
    i: usize,
    j: usize,
    k: usize,
    count: String,
}

impl Histogram {
    pub fn from_paths(n: usize, paths: impl IntoIterator<Item = GrandDyckPath>) -> Self {
        let mut cells = BTreeMap::new();
        for p in paths {
            *cells.entry(p.stats().cell()).or_insert(0) += 1;
        }
        Histogram { n, cells }
    }

    pub fn get(&self, cell: Cell) -> u64 {
        self.cells.get(&cell).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    /// Sums out the low-peak count, giving counts indexed by `(j, k)`.
    pub fn marginal_jk(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (c, &v) in &self.cells {
            *out.entry((c.j, c.k)).or_insert(0) += v;
        }
        out
    }

    /// JSON array of `{"i","j","k","count"}` records sorted by cell, with
    /// counts as decimal strings.
    pub fn to_json(&self) -> String {
        let records: Vec<_> = self
            .cells
            .iter()
            .map(|(c, v)| HistogramRecord {
                i: c.i,
                j: c.j,
                k: c.k,
                count: v.to_string(),
            })
            .collect();
        serde_json::to_string(&records).expect("histogram serializes")
    }
}

pub fn histogram(n: usize) -> Result<Histogram, PathError> {
    histogram_capped(n, DEFAULT_CAP)
}

pub fn histogram_capped(n: usize, cap: usize) -> Result<Histogram, PathError> {
    Ok(Histogram::from_paths(n, enumerate_grand_dyck_capped(n, cap)?))
}
