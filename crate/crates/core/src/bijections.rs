//! Constructive correspondences behind the counting formulas.
//!
//! * Component rewriting: a low-peak-free path whose above-ground
//!   components come first is turned into a Dyck path by
//!   `UUPDQD -> UPD·UQD` on each above-ground component and
//!   `D R' U -> U R D` (with `R'` the mirror image of `R`) on each
//!   below-ground one. An above-ground component therefore contributes two
//!   components and a below-ground one contributes one.
//! * Low-peak insertion and removal, which peel the `binomial(k, i)` factor
//!   off the joint distribution.
//! * Irreducible composition pairs to low-peak-free paths: the two
//!   North/East paths of a pair (last East step dropped) meet at a sequence
//!   of vertices, and the pieces between consecutive meeting points are
//!   either a shared North step or a parallelogram polyomino. Polyominoes
//!   go to primitive Dyck paths through [`polyomino_to_primitive`], the
//!   shared North step goes to `DU`.
//!
//! The polyomino bijection is the column encoding: for column heights
//! `a_1..a_m` and overlaps `b_1..b_{m-1}` between adjacent columns, the
//! Dyck path with peak heights `a_i` and valley heights `b_i - 1`, i.e.
//! `U^{a_1} D^{a_1-b_1+1} U^{a_2-b_1+1} ... U^{a_m-b_{m-1}+1} D^{a_m}`,
//! elevated by one extra `U ... D`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::compositions::{
    common_vertices, Composition, CompositionError, CompositionPair, NePath, NeStep,
};
use crate::paths::{reflect_steps, Component, DyckPath, GrandDyckPath, PathError, Sign, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("{0}")]
    Shape(String),
    #[error("composition pair {0} is reducible")]
    Reducible(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

fn shape(msg: impl Into<String>) -> BijectionError {
    BijectionError::Shape(msg.into())
}

fn dyck(steps: Vec<Step>) -> DyckPath {
    DyckPath::new(steps).expect("construction yields a Dyck path")
}

fn interior(steps: &[Step]) -> &[Step] {
    &steps[1..steps.len() - 1]
}

// ---------------------------------------------------------------------------
// component rewriting

/// `U U P D Q D -> (U P D, U Q D)` for an above-ground component of
/// semilength at least 2.
pub fn rewrite_above(c: &Component) -> Result<(DyckPath, DyckPath), BijectionError> {
    if c.sign != Sign::Above {
        return Err(shape(format!("{c} is not above ground level")));
    }
    if c.size() < 2 {
        return Err(shape(format!("{c} is a low peak")));
    }
    let s = &c.steps;
    if crate::paths::GrandDyckPath::new(s.clone())?.components().len() != 1 {
        return Err(shape(format!("{c} is not a single component")));
    }
    // P ends where the path first comes back down from height 2 to 1
    let mut h = 2;
    let mut split = None;
    for (t, step) in s.iter().enumerate().skip(2) {
        h += step.delta();
        if h == 1 {
            split = Some(t);
            break;
        }
    }
    let t = split.ok_or_else(|| shape(format!("{c} has no return to height 1")))?;
    let elevated = |inner: &[Step]| {
        let mut v = vec![Step::Up];
        v.extend_from_slice(inner);
        v.push(Step::Down);
        dyck(v)
    };
    Ok((elevated(&s[2..t]), elevated(&s[t + 1..s.len() - 1])))
}

/// Inverse of [`rewrite_above`]: `(U P D, U Q D) -> U U P D Q D`.
pub fn unrewrite_above(a: &DyckPath, b: &DyckPath) -> Result<Component, BijectionError> {
    if !a.is_primitive() || !b.is_primitive() {
        return Err(shape(format!("{a} and {b} must both be primitive")));
    }
    let mut steps = vec![Step::Up, Step::Up];
    steps.extend_from_slice(interior(a.steps()));
    steps.push(Step::Down);
    steps.extend_from_slice(interior(b.steps()));
    steps.push(Step::Down);
    Ok(Component {
        sign: Sign::Above,
        steps,
    })
}

/// `D R' U -> U R D`.
pub fn rewrite_below(c: &Component) -> Result<DyckPath, BijectionError> {
    if c.sign != Sign::Below {
        return Err(shape(format!("{c} is not below ground level")));
    }
    let mut steps = vec![Step::Up];
    steps.extend(reflect_steps(interior(&c.steps)));
    steps.push(Step::Down);
    Ok(DyckPath::new(steps)?)
}

/// Inverse of [`rewrite_below`].
pub fn unrewrite_below(d: &DyckPath) -> Result<Component, BijectionError> {
    if !d.is_primitive() {
        return Err(shape(format!("{d} is not primitive")));
    }
    Ok(Component {
        sign: Sign::Below,
        steps: reflect_steps(d.steps()),
    })
}

/// Component signs in path order, and the path with its above-ground
/// components moved (stably) in front of the below-ground ones.
pub fn canonicalize(p: &GrandDyckPath) -> (Vec<Sign>, GrandDyckPath) {
    let comps = p.components();
    let pattern = comps.iter().map(|c| c.sign).collect();
    let ordered = comps
        .iter()
        .filter(|c| c.sign == Sign::Above)
        .chain(comps.iter().filter(|c| c.sign == Sign::Below));
    let canonical = GrandDyckPath::concat(ordered.map(|c| c.steps.as_slice()))
        .expect("components are balanced");
    (pattern, canonical)
}

/// Inverse of [`canonicalize`].
pub fn restore_order(pattern: &[Sign], canonical: &GrandDyckPath) -> Result<GrandDyckPath, BijectionError> {
    let comps = canonical.components();
    let mut above: VecDeque<_> = comps.iter().filter(|c| c.sign == Sign::Above).collect();
    let mut below: VecDeque<_> = comps.iter().filter(|c| c.sign == Sign::Below).collect();
    if comps.len() != pattern.len() {
        return Err(shape("pattern length differs from the component count"));
    }
    let mut steps = Vec::with_capacity(canonical.steps().len());
    for sign in pattern {
        let next = match sign {
            Sign::Above => above.pop_front(),
            Sign::Below => below.pop_front(),
        };
        steps.extend_from_slice(&next.ok_or_else(|| shape("pattern does not match signs"))?.steps);
    }
    Ok(GrandDyckPath::new(steps)?)
}

fn is_canonical(comps: &[Component]) -> bool {
    comps.windows(2).all(|w| !(w[0].sign == Sign::Below && w[1].sign == Sign::Above))
}

/// Rewrites a low-peak-free path with above-ground components first into a
/// Dyck path of the same size with `j + k` components.
pub fn section3_forward(p: &GrandDyckPath) -> Result<DyckPath, BijectionError> {
    if p.low_peaks() > 0 {
        return Err(shape(format!("{p} has a low peak")));
    }
    let comps = p.components();
    if !is_canonical(&comps) {
        return Err(shape(format!("{p} has a component above ground after one below")));
    }
    let mut steps = Vec::with_capacity(p.steps().len());
    for c in &comps {
        match c.sign {
            Sign::Above => {
                let (a, b) = rewrite_above(c)?;
                steps.extend_from_slice(a.steps());
                steps.extend_from_slice(b.steps());
            }
            Sign::Below => steps.extend_from_slice(rewrite_below(c)?.steps()),
        }
    }
    Ok(DyckPath::new(steps)?)
}

/// Inverse of [`section3_forward`]: components `1&2, 3&4, ..., (2j-1)&2j`
/// of `d` merge into above-ground components, the rest flip below.
pub fn section3_inverse(d: &DyckPath, j: usize) -> Result<GrandDyckPath, BijectionError> {
    let comps: Vec<DyckPath> = d
        .as_path()
        .components()
        .into_iter()
        .map(|c| dyck(c.steps))
        .collect();
    if comps.len() < 2 * j {
        return Err(shape(format!(
            "{d} has {} components, fewer than 2j = {}",
            comps.len(),
            2 * j
        )));
    }
    let mut steps = Vec::with_capacity(d.steps().len());
    for pair in comps[..2 * j].chunks(2) {
        steps.extend(unrewrite_above(&pair[0], &pair[1])?.steps);
    }
    for c in &comps[2 * j..] {
        steps.extend(unrewrite_below(c)?.steps);
    }
    Ok(GrandDyckPath::new(steps)?)
}

// ---------------------------------------------------------------------------
// low peaks

/// Where the low peaks sat among the `k` components of a path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LowPeakRecord {
    pub k: usize,
    /// 1-based slots, strictly increasing.
    pub positions: Vec<usize>,
}

impl LowPeakRecord {
    pub fn new(k: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        LowPeakRecord {
            k,
            positions: positions.into_iter().collect(),
        }
    }

    pub fn i(&self) -> usize {
        self.positions.len()
    }
}

/// Puts a `UD` component at each marked slot of a low-peak-free path.
pub fn insert_low_peaks(p: &GrandDyckPath, rec: &LowPeakRecord) -> Result<GrandDyckPath, BijectionError> {
    if p.low_peaks() > 0 {
        return Err(shape(format!("{p} already has low peaks")));
    }
    let comps = p.components();
    if rec.k != comps.len() + rec.positions.len() {
        return Err(shape(format!(
            "record expects {} components but path has {} plus {} low peaks",
            rec.k,
            comps.len(),
            rec.positions.len()
        )));
    }
    let increasing = rec.positions.windows(2).all(|w| w[0] < w[1]);
    if !increasing || rec.positions.iter().any(|&s| s == 0 || s > rec.k) {
        return Err(shape(format!("bad low-peak slots {:?} for k = {}", rec.positions, rec.k)));
    }
    let marked: BTreeSet<usize> = rec.positions.iter().copied().collect();
    let mut rest = comps.iter();
    let mut steps = Vec::with_capacity(p.steps().len() + 2 * rec.i());
    for slot in 1..=rec.k {
        if marked.contains(&slot) {
            steps.extend([Step::Up, Step::Down]);
        } else {
            steps.extend_from_slice(&rest.next().expect("counted above").steps);
        }
    }
    Ok(GrandDyckPath::new(steps)?)
}

/// Deletes every low peak, recording its slot among the original
/// components.
pub fn remove_low_peaks(p: &GrandDyckPath) -> (GrandDyckPath, LowPeakRecord) {
    let comps = p.components();
    let positions: Vec<usize> = comps
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_low_peak())
        .map(|(t, _)| t + 1)
        .collect();
    let kept = GrandDyckPath::concat(
        comps
            .iter()
            .filter(|c| !c.is_low_peak())
            .map(|c| c.steps.as_slice()),
    )
    .expect("components are balanced");
    (kept, LowPeakRecord::new(comps.len(), positions))
}

// ---------------------------------------------------------------------------
// composition pairs and polyominoes

/// Which composition of a pair a boundary path came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    First,
    Second,
}

/// Polyominoes whose upper boundary has this color become above-ground
/// components; the others are flipped below ground.
pub const UPRIGHT_COLOR: Color = Color::First;

/// Region between two North/East paths that share both endpoints and no
/// other vertex. `upper` starts with a North step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParallelogramPolyomino {
    upper: NePath,
    lower: NePath,
    upper_color: Color,
}

impl ParallelogramPolyomino {
    pub fn new(upper: NePath, lower: NePath, upper_color: Color) -> Result<Self, BijectionError> {
        if upper.len() != lower.len() || upper.len() < 2 || upper.end() != lower.end() {
            return Err(shape(format!("{upper} and {lower} do not bound a polyomino")));
        }
        if upper.steps[0] != NeStep::North {
            return Err(shape(format!("upper boundary {upper} must start North")));
        }
        let shared = common_vertices(&upper, &lower)?;
        if shared.len() != 2 {
            return Err(shape(format!("{upper} and {lower} touch between their endpoints")));
        }
        Ok(ParallelogramPolyomino {
            upper,
            lower,
            upper_color,
        })
    }

    pub fn upper(&self) -> &NePath {
        &self.upper
    }

    pub fn lower(&self) -> &NePath {
        &self.lower
    }

    pub fn upper_color(&self) -> Color {
        self.upper_color
    }

    pub fn with_color(mut self, color: Color) -> Self {
        self.upper_color = color;
        self
    }

    /// Half the perimeter, equal to the length of either boundary path.
    pub fn semiperimeter(&self) -> usize {
        self.upper.len()
    }

    /// `(bottom, top)` of each unit column, left to right.
    pub fn columns(&self) -> Vec<(u32, u32)> {
        let east_heights = |p: &NePath| {
            let mut y = 0;
            let mut out = Vec::new();
            for s in &p.steps {
                match s {
                    NeStep::North => y += 1,
                    NeStep::East => out.push(y),
                }
            }
            out
        };
        east_heights(&self.lower)
            .into_iter()
            .zip(east_heights(&self.upper))
            .collect()
    }

    /// Rebuilds a polyomino from its columns; `None` if adjacent columns
    /// do not overlap or the bottoms and tops are not weakly increasing.
    pub fn from_columns(columns: &[(u32, u32)], upper_color: Color) -> Option<Self> {
        let valid = !columns.is_empty()
            && columns.iter().all(|&(lo, hi)| lo < hi)
            && columns[0].0 == 0
            && columns
                .windows(2)
                .all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && w[1].0 < w[0].1);
        if !valid {
            return None;
        }
        let height = columns.last()?.1;
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let (mut uy, mut ly) = (0, 0);
        for &(lo, hi) in columns {
            upper.extend(std::iter::repeat_n(NeStep::North, (hi - uy) as usize));
            upper.push(NeStep::East);
            uy = hi;
            lower.extend(std::iter::repeat_n(NeStep::North, (lo - ly) as usize));
            lower.push(NeStep::East);
            ly = lo;
        }
        lower.extend(std::iter::repeat_n(NeStep::North, (height - ly) as usize));
        ParallelogramPolyomino::new(NePath::new(upper), NePath::new(lower), upper_color).ok()
    }
}

/// One piece of a factorized composition pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Two coincident North steps.
    Degenerate,
    Polyomino(ParallelogramPolyomino),
}

impl Factor {
    /// Steps each boundary path spends in this factor.
    pub fn size(&self) -> usize {
        match self {
            Factor::Degenerate => 1,
            Factor::Polyomino(p) => p.semiperimeter(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FactorRecord {
    Degenerate,
    Polyomino { s: usize, upper: Color },
}

/// `[{"kind":"degenerate"} | {"kind":"polyomino","s":..,"upper":"first"|"second"}]`
pub fn factors_to_json(factors: &[Factor]) -> String {
    let records: Vec<_> = factors
        .iter()
        .map(|f| match f {
            Factor::Degenerate => FactorRecord::Degenerate,
            Factor::Polyomino(p) => FactorRecord::Polyomino {
                s: p.semiperimeter(),
                upper: p.upper_color(),
            },
        })
        .collect();
    serde_json::to_string(&records).expect("factors serialize")
}

/// Splits the two North/East paths of an irreducible pair (final East
/// steps dropped) at their common vertices.
pub fn factorize_pair(p: &CompositionPair) -> Result<Vec<Factor>, BijectionError> {
    if !p.is_irreducible() {
        return Err(BijectionError::Reducible(p.to_string()));
    }
    let a = p.first.ne_path(true);
    let b = p.second.ne_path(true);
    let meets = common_vertices(&a, &b)?;
    let mut factors = Vec::with_capacity(meets.len().saturating_sub(1));
    for w in meets.windows(2) {
        // both paths reach (x, y) after exactly x + y steps
        let from = (w[0].0 + w[0].1) as usize;
        let to = (w[1].0 + w[1].1) as usize;
        let seg_a = NePath::new(a.steps[from..to].to_vec());
        let seg_b = NePath::new(b.steps[from..to].to_vec());
        if to - from == 1 {
            if seg_a.steps[0] != NeStep::North {
                return Err(shape(format!("shared East step in {p}")));
            }
            factors.push(Factor::Degenerate);
            continue;
        }
        let (upper, lower, color) = if seg_a.steps[0] == NeStep::North {
            (seg_a, seg_b, Color::First)
        } else {
            (seg_b, seg_a, Color::Second)
        };
        factors.push(Factor::Polyomino(ParallelogramPolyomino::new(upper, lower, color)?));
    }
    Ok(factors)
}

/// The pinned polyomino bijection: column encoding, then elevation. A
/// polyomino of semiperimeter `s` maps to a primitive Dyck path of
/// semilength `s`.
pub fn polyomino_to_primitive(poly: &ParallelogramPolyomino) -> DyckPath {
    let cols = poly.columns();
    let height = |c: (u32, u32)| (c.1 - c.0) as usize;
    let run = |step, len| std::iter::repeat_n(step, len);
    let mut steps = vec![Step::Up];
    steps.extend(run(Step::Up, height(cols[0])));
    for w in cols.windows(2) {
        let overlap = (w[0].1 - w[1].0) as usize;
        steps.extend(run(Step::Down, height(w[0]) - overlap + 1));
        steps.extend(run(Step::Up, height(w[1]) - overlap + 1));
    }
    steps.extend(run(Step::Down, height(*cols.last().expect("at least one column"))));
    steps.push(Step::Down);
    dyck(steps)
}

/// Inverse of [`polyomino_to_primitive`]: peak heights of the unelevated
/// path are column heights, valley heights are overlaps minus one.
pub fn primitive_to_polyomino(d: &DyckPath, upper_color: Color) -> Result<ParallelogramPolyomino, BijectionError> {
    if !d.is_primitive() || d.semilength() < 2 {
        return Err(shape(format!("{d} is not a primitive Dyck path of size >= 2")));
    }
    let inner = interior(d.steps());
    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    let mut h: i32 = 0;
    for (t, s) in inner.iter().enumerate() {
        h += s.delta();
        match (s, inner.get(t + 1)) {
            (Step::Up, Some(Step::Down)) => peaks.push(h as u32),
            (Step::Down, Some(Step::Up)) => valleys.push(h as u32),
            _ => {}
        }
    }
    let mut cols = Vec::with_capacity(peaks.len());
    let (mut lo, mut hi) = (0, peaks[0]);
    cols.push((lo, hi));
    for (a, v) in peaks[1..].iter().zip(&valleys) {
        lo = hi - (v + 1);
        hi = lo + a;
        cols.push((lo, hi));
    }
    ParallelogramPolyomino::from_columns(&cols, upper_color)
        .ok_or_else(|| shape(format!("{d} does not encode a polyomino")))
}

fn ne_paths_to(east: usize, north: usize) -> Vec<NePath> {
    let len = east + north;
    let mut out = Vec::new();
    for mask in 0u32..(1 << len) {
        if mask.count_ones() as usize == east {
            out.push(NePath::new(
                (0..len)
                    .map(|t| if mask >> t & 1 == 1 { NeStep::East } else { NeStep::North })
                    .collect(),
            ));
        }
    }
    out
}

/// Every parallelogram polyomino of semiperimeter `s` (colored
/// [`Color::First`]), generated directly from pairs of boundary paths.
pub fn enumerate_polyominoes(s: usize) -> Vec<ParallelogramPolyomino> {
    let mut out = Vec::new();
    if s < 2 {
        return out;
    }
    for east in 1..s {
        let paths = ne_paths_to(east, s - east);
        for upper in paths.iter().filter(|p| p.steps[0] == NeStep::North) {
            for lower in paths.iter().filter(|p| p.steps[0] == NeStep::East) {
                if let Ok(poly) = ParallelogramPolyomino::new(upper.clone(), lower.clone(), Color::First) {
                    out.push(poly);
                }
            }
        }
    }
    out.sort();
    out
}

/// Irreducible pair of compositions of `n + 1` to a low-peak-free path of
/// semilength `n`.
pub fn pair_to_gdp(p: &CompositionPair) -> Result<GrandDyckPath, BijectionError> {
    let mut steps = Vec::with_capacity(2 * p.total() as usize);
    for f in factorize_pair(p)? {
        match f {
            Factor::Degenerate => steps.extend([Step::Down, Step::Up]),
            Factor::Polyomino(poly) => {
                let prim = polyomino_to_primitive(&poly);
                if poly.upper_color() == UPRIGHT_COLOR {
                    steps.extend_from_slice(prim.steps());
                } else {
                    steps.extend(reflect_steps(prim.steps()));
                }
            }
        }
    }
    Ok(GrandDyckPath::new(steps)?)
}

/// Inverse of [`pair_to_gdp`].
pub fn gdp_to_pair(g: &GrandDyckPath) -> Result<CompositionPair, BijectionError> {
    if g.low_peaks() > 0 {
        return Err(shape(format!("{g} has a low peak")));
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    for c in g.components() {
        if c.size() == 1 {
            // only DU is possible here
            first.push(NeStep::North);
            second.push(NeStep::North);
            continue;
        }
        let color = match c.sign {
            Sign::Above => UPRIGHT_COLOR,
            Sign::Below => match UPRIGHT_COLOR {
                Color::First => Color::Second,
                Color::Second => Color::First,
            },
        };
        let upright = match c.sign {
            Sign::Above => c.steps.clone(),
            Sign::Below => reflect_steps(&c.steps),
        };
        let poly = primitive_to_polyomino(&DyckPath::new(upright)?, color)?;
        let (on_first, on_second) = match color {
            Color::First => (poly.upper(), poly.lower()),
            Color::Second => (poly.lower(), poly.upper()),
        };
        first.extend_from_slice(&on_first.steps);
        second.extend_from_slice(&on_second.steps);
    }
    let compose = |steps: Vec<NeStep>| -> Result<Composition, BijectionError> {
        NePath::new(steps)
            .to_composition(true)
            .ok_or_else(|| shape("stitched path is not a composition path"))
    };
    Ok(CompositionPair::new(compose(first)?, compose(second)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gdp(s: &str) -> GrandDyckPath {
        s.parse().unwrap()
    }

    fn dp(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn comp(s: &str) -> Component {
        let mut cs = gdp(s).components();
        assert_eq!(cs.len(), 1, "{s} must be a single component");
        cs.pop().unwrap()
    }

    fn pair(s: &str) -> CompositionPair {
        s.parse().unwrap()
    }

    fn strings<T: ToString>(pair: (T, T)) -> (String, String) {
        (pair.0.to_string(), pair.1.to_string())
    }

    #[test]
    fn rewrite_above_examples() {
        assert_eq!(strings(rewrite_above(&comp("UUDD")).unwrap()), ("UD".into(), "UD".into()));
        assert_eq!(strings(rewrite_above(&comp("UUUDDD")).unwrap()), ("UUDD".into(), "UD".into()));
        assert_eq!(
            strings(rewrite_above(&comp("UUUDDUDD")).unwrap()),
            ("UUDD".into(), "UUDD".into())
        );
        let two = Component {
            sign: Sign::Above,
            steps: gdp("UUDDUD").steps().to_vec(),
        };
        assert!(matches!(rewrite_above(&two), Err(BijectionError::Shape(_))));
        assert!(rewrite_above(&comp("UD")).is_err());
        assert!(rewrite_above(&comp("DDUU")).is_err());
    }

    #[test]
    fn rewrite_below_examples() {
        assert_eq!(rewrite_below(&comp("DU")).unwrap().to_string(), "UD");
        assert_eq!(rewrite_below(&comp("DDUU")).unwrap().to_string(), "UUDD");
        assert_eq!(rewrite_below(&comp("DDUDUU")).unwrap().to_string(), "UUDUDD");
        assert!(rewrite_below(&comp("UD")).is_err());
        assert_eq!(unrewrite_below(&dp("UUDUDD")).unwrap(), comp("DDUDUU"));
    }

    #[test]
    fn section3_examples() {
        let f = section3_forward(&gdp("UUDD")).unwrap();
        assert_eq!((f.to_string(), f.component_count()), ("UDUD".into(), 2));
        let f = section3_forward(&gdp("DDUU")).unwrap();
        assert_eq!((f.to_string(), f.component_count()), ("UUDD".into(), 1));
        let f = section3_forward(&gdp("UUDDDDUU")).unwrap();
        assert_eq!((f.to_string(), f.component_count()), ("UDUDUUDD".into(), 3));

        assert!(section3_forward(&gdp("UDDU")).is_err());
        assert!(section3_forward(&gdp("DDUUUUDD")).is_err());

        assert_eq!(section3_inverse(&dp("UDUD"), 1).unwrap().to_string(), "UUDD");
        assert_eq!(section3_inverse(&dp("UUDD"), 0).unwrap().to_string(), "DDUU");
        assert_eq!(section3_inverse(&dp("UDUDUD"), 1).unwrap().to_string(), "UUDDDU");
        assert!(section3_inverse(&dp("UDUD"), 2).is_err());
    }

    #[test]
    fn canonical_order_round_trip() {
        let p = gdp("DUUUDDDDUU");
        let (pattern, canon) = canonicalize(&p);
        assert_eq!(pattern, [Sign::Below, Sign::Above, Sign::Below]);
        assert_eq!(canon.to_string(), "UUDDDUDDUU");
        assert_eq!(restore_order(&pattern, &canon).unwrap(), p);
        assert!(restore_order(&[Sign::Above], &canon).is_err());
    }

    #[test]
    fn low_peak_examples() {
        let du = gdp("DU");
        assert_eq!(insert_low_peaks(&du, &LowPeakRecord::new(2, [1])).unwrap().to_string(), "UDDU");
        assert_eq!(insert_low_peaks(&du, &LowPeakRecord::new(2, [2])).unwrap().to_string(), "DUUD");
        assert_eq!(insert_low_peaks(&du, &LowPeakRecord::new(1, [])).unwrap(), du);
        assert!(insert_low_peaks(&du, &LowPeakRecord::new(3, [1])).is_err());
        assert!(insert_low_peaks(&du, &LowPeakRecord::new(2, [3])).is_err());
        assert!(insert_low_peaks(&gdp("UD"), &LowPeakRecord::new(1, [])).is_err());

        assert_eq!(remove_low_peaks(&gdp("UDUD")), (gdp(""), LowPeakRecord::new(2, [1, 2])));
        assert_eq!(remove_low_peaks(&gdp("UDDU")), (gdp("DU"), LowPeakRecord::new(2, [1])));
        let (rest, rec) = remove_low_peaks(&gdp("DDDUDUUUUDUUUDDUDDDU"));
        assert_eq!(rest.semilength(), 9);
        assert_eq!(rec, LowPeakRecord::new(4, [2]));
    }

    #[test]
    fn factorization_of_the_example_pair() {
        let f = factorize_pair(&pair("3,1,2,2,3;1,1,6,1,2")).unwrap();
        assert_eq!(
            factors_to_json(&f),
            r#"[{"kind":"polyomino","s":4,"upper":"first"},{"kind":"degenerate"},{"kind":"polyomino","s":4,"upper":"second"},{"kind":"degenerate"}]"#
        );
        assert!(factorize_pair(&pair("1;1")).unwrap().is_empty());
        assert_eq!(factorize_pair(&pair("2;2")).unwrap(), [Factor::Degenerate]);
        assert!(matches!(
            factorize_pair(&pair("1,1;1,1")),
            Err(BijectionError::Reducible(_))
        ));
    }

    #[test]
    fn unit_square() {
        let sq = ParallelogramPolyomino::new("NE".parse().unwrap(), "EN".parse().unwrap(), Color::First).unwrap();
        assert_eq!(polyomino_to_primitive(&sq).to_string(), "UUDD");
        assert_eq!(primitive_to_polyomino(&dp("UUDD"), Color::First).unwrap(), sq);
        assert!(ParallelogramPolyomino::new("EN".parse().unwrap(), "NE".parse().unwrap(), Color::First).is_err());
        assert!(ParallelogramPolyomino::new("NNEE".parse().unwrap(), "NEEN".parse().unwrap(), Color::First).is_err());
    }

    #[test]
    fn small_polyomino_classes() {
        assert_eq!(enumerate_polyominoes(2).len(), 1);
        let s3: BTreeSet<_> = enumerate_polyominoes(3)
            .iter()
            .map(|p| polyomino_to_primitive(p).to_string())
            .collect();
        assert_eq!(s3, ["UUDUDD", "UUUDDD"].map(String::from).into());
        assert_eq!(enumerate_polyominoes(4).len(), 5);
    }

    #[test]
    fn pair_to_gdp_examples() {
        assert_eq!(pair_to_gdp(&pair("2;2")).unwrap().to_string(), "DU");
        assert_eq!(pair_to_gdp(&pair("1,2;2,1")).unwrap().to_string(), "DDUU");
        assert_eq!(pair_to_gdp(&pair("1;1")).unwrap().to_string(), "");
        assert!(pair_to_gdp(&pair("1,1;1,1")).is_err());

        let g = pair_to_gdp(&pair("3,1,2,2,3;1,1,6,1,2")).unwrap();
        assert_eq!(g.semilength(), 10);
        assert_eq!(g.low_peaks(), 0);
        let comps = g.components();
        let shape: Vec<_> = comps.iter().map(|c| (c.sign, c.size())).collect();
        assert_eq!(
            shape,
            [(Sign::Above, 4), (Sign::Below, 1), (Sign::Below, 4), (Sign::Below, 1)]
        );
        assert_eq!(gdp_to_pair(&g).unwrap(), pair("3,1,2,2,3;1,1,6,1,2"));
    }

    #[test]
    fn gdp_to_pair_examples() {
        assert_eq!(gdp_to_pair(&gdp("DU")).unwrap().to_string(), "2;2");
        assert_eq!(gdp_to_pair(&gdp("")).unwrap().to_string(), "1;1");
        assert_eq!(gdp_to_pair(&gdp("DDUU")).unwrap().to_string(), "1,2;2,1");
        assert!(gdp_to_pair(&gdp("UDDU")).is_err());
    }
}
