//! Compositions, pairs of compositions with equal part counts, and the
//! North/East lattice-path picture of a composition.
//!
//! A part `a` becomes `a - 1` North steps followed by one East step, so a
//! composition of `n` into `k` parts is a path of `n` steps from `(0, 0)`
//! to `(k, n - k)`. Paths start at the origin with North = `(0, 1)` and
//! East = `(1, 0)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest total the composition enumerators accept unless told otherwise.
pub const DEFAULT_COMPOSITION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("a composition needs at least one part")]
    Empty,
    #[error("part {pos} is zero; parts must be positive")]
    ZeroPart { pos: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("compositions have different totals ({0} vs {1})")]
    TotalMismatch(u32, u32),
    #[error("compositions have different part counts ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("total {n} exceeds the enumeration cap {cap}")]
    Resource { n: usize, cap: usize },
    #[error("cannot split {n} into {k} positive parts")]
    PartCount { n: usize, k: usize },
    #[error("paths end at different points: {0:?} vs {1:?}")]
    Shape(Point, Point),
}

/// A lattice point `(east, north)`.
pub type Point = (u32, u32);

/// A nonempty sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if parts.is_empty() {
            return Err(CompositionError::Empty);
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(CompositionError::ZeroPart { pos });
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `b_1, b_1 + b_2, ...`, one entry per part.
    pub fn prefix_sums(&self) -> Vec<u32> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    pub fn ne_path(&self, drop_last_east: bool) -> NePath {
        to_ne_path(self, drop_last_east)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, p) in self.parts.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = CompositionError;

    /// Comma-separated positive integers, e.g. `3,1,2,2,3`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts = text
            .split(',')
            .map(|t| t.parse::<u32>().map_err(|_| CompositionError::Parse(text.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Composition::new(parts)
    }
}

/// Two compositions of the same total into the same number of parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionPair {
    pub first: Composition,
    pub second: Composition,
}

impl CompositionPair {
    pub fn new(first: Composition, second: Composition) -> Result<Self, CompositionError> {
        if first.total() != second.total() {
            return Err(CompositionError::TotalMismatch(first.total(), second.total()));
        }
        if first.len() != second.len() {
            return Err(CompositionError::LengthMismatch(first.len(), second.len()));
        }
        Ok(CompositionPair { first, second })
    }

    pub fn total(&self) -> u32 {
        self.first.total()
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(self)
    }
}

impl fmt::Display for CompositionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.first, self.second)
    }
}

impl FromStr for CompositionPair {
    type Err = CompositionError;

    /// Two compositions joined by a semicolon, e.g. `1,2;2,1`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (a, b) = text
            .split_once(';')
            .ok_or_else(|| CompositionError::Parse(text.to_string()))?;
        CompositionPair::new(a.parse()?, b.parse()?)
    }
}

/// True when no proper prefix (`j < k` parts) of the two compositions has
/// the same sum.
pub fn is_irreducible(pair: &CompositionPair) -> bool {
    let a = pair.first.prefix_sums();
    let b = pair.second.prefix_sums();
    let k = a.len();
    (0..k.saturating_sub(1)).all(|t| a[t] != b[t])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NeStep {
    North,
    East,
}

/// A path of North and East steps starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NePath {
    pub steps: Vec<NeStep>,
}

impl NePath {
    pub fn new(steps: Vec<NeStep>) -> Self {
        NePath { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every vertex, from the origin to the endpoint.
    pub fn vertices(&self) -> Vec<Point> {
        let mut p = (0, 0);
        let mut out = vec![p];
        for s in &self.steps {
            match s {
                NeStep::North => p.1 += 1,
                NeStep::East => p.0 += 1,
            }
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> Point {
        let east = self.steps.iter().filter(|&&s| s == NeStep::East).count() as u32;
        (east, self.steps.len() as u32 - east)
    }

    /// Reads the composition back, re-appending the final East step first
    /// when it was dropped. `None` if the path does not end in East.
    pub fn to_composition(&self, last_east_dropped: bool) -> Option<Composition> {
        let mut steps = self.steps.clone();
        if last_east_dropped {
            steps.push(NeStep::East);
        }
        if steps.last() != Some(&NeStep::East) {
            return None;
        }
        let mut parts = Vec::new();
        let mut run = 1;
        for s in steps {
            match s {
                NeStep::North => run += 1,
                NeStep::East => {
                    parts.push(run);
                    run = 1;
                }
            }
        }
        Composition::new(parts).ok()
    }
}

impl fmt::Display for NePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                NeStep::North => "N",
                NeStep::East => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for NePath {
    type Err = CompositionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.chars()
            .map(|c| match c {
                'N' => Ok(NeStep::North),
                'E' => Ok(NeStep::East),
                _ => Err(CompositionError::Parse(text.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(NePath::new)
    }
}

/// Each part `a` contributes `a - 1` North steps and one East step.
pub fn to_ne_path(c: &Composition, drop_last_east: bool) -> NePath {
    let mut steps = Vec::with_capacity(c.total() as usize);
    for &p in c.parts() {
        steps.extend(std::iter::repeat_n(NeStep::North, p as usize - 1));
        steps.push(NeStep::East);
    }
    if drop_last_east {
        steps.pop();
    }
    NePath::new(steps)
}

/// Points visited by both paths, in order from the origin to the shared
/// endpoint.
pub fn common_vertices(a: &NePath, b: &NePath) -> Result<Vec<Point>, CompositionError> {
    if a.end() != b.end() {
        return Err(CompositionError::Shape(a.end(), b.end()));
    }
    let on_b: BTreeSet<Point> = b.vertices().into_iter().collect();
    Ok(a.vertices().into_iter().filter(|p| on_b.contains(p)).collect())
}

fn check_cap(n: usize, cap: usize) -> Result<(), CompositionError> {
    if n > cap {
        Err(CompositionError::Resource { n, cap })
    } else {
        Ok(())
    }
}

fn push_compositions(rem: u32, k_left: Option<usize>, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if rem == 0 {
        if k_left.is_none_or(|k| k == 0) {
            out.push(Composition {
                parts: prefix.clone(),
            });
        }
        return;
    }
    let max = match k_left {
        Some(0) => return,
        Some(k) => rem.saturating_sub(k as u32 - 1),
        None => rem,
    };
    for p in 1..=max {
        prefix.push(p);
        push_compositions(rem - p, k_left.map(|k| k - 1), prefix, out);
        prefix.pop();
    }
}

pub fn enumerate_compositions(
    n: usize,
    k: Option<usize>,
) -> Result<impl Iterator<Item = Composition>, CompositionError> {
    enumerate_compositions_capped(n, k, DEFAULT_COMPOSITION_CAP)
}

/// All compositions of `n` (into exactly `k` parts when given), in
/// lexicographic order of their part sequences.
pub fn enumerate_compositions_capped(
    n: usize,
    k: Option<usize>,
    cap: usize,
) -> Result<impl Iterator<Item = Composition>, CompositionError> {
    check_cap(n, cap)?;
    if n == 0 || k.is_some_and(|k| k == 0 || k > n) {
        return Err(CompositionError::PartCount { n, k: k.unwrap_or(0) });
    }
    let mut out = Vec::new();
    push_compositions(n as u32, k, &mut Vec::new(), &mut out);
    Ok(out.into_iter())
}

fn push_second_parts(
    target: &[u32],
    depth: usize,
    sum: u32,
    total: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let k = target.len();
    if depth == k - 1 {
        prefix.push(total - sum);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    let parts_after = (k - 1 - depth) as u32;
    for p in 1..=(total - sum - parts_after) {
        let s = sum + p;
        if s == target[depth] {
            continue;
        }
        prefix.push(p);
        push_second_parts(target, depth + 1, s, total, prefix, out);
        prefix.pop();
    }
}

pub fn enumerate_irreducible_pairs(
    n: usize,
) -> Result<impl Iterator<Item = CompositionPair>, CompositionError> {
    enumerate_irreducible_pairs_capped(n, DEFAULT_COMPOSITION_CAP)
}

/// Every irreducible ordered pair of compositions of `n` with equal part
/// counts, ordered by part count, then first, then second composition.
///
/// The second composition is built part by part and abandoned as soon as
/// one of its prefix sums hits the first composition's.
pub fn enumerate_irreducible_pairs_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = CompositionPair>, CompositionError> {
    check_cap(n, cap)?;
    if n == 0 {
        return Err(CompositionError::PartCount { n, k: 0 });
    }
    let mut out = Vec::new();
    for k in 1..=n {
        for first in enumerate_compositions_capped(n, Some(k), cap)? {
            let target = first.prefix_sums();
            let mut seconds = Vec::new();
            push_second_parts(&target, 0, 0, n as u32, &mut Vec::new(), &mut seconds);
            for parts in seconds {
                out.push(CompositionPair {
                    first: first.clone(),
                    second: Composition { parts },
                });
            }
        }
    }
    Ok(out.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn pair(s: &str) -> CompositionPair {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(c("3,1,2,2,3").parts(), &[3, 1, 2, 2, 3]);
        assert_eq!(c("3,1,2,2,3").to_string(), "3,1,2,2,3");
        assert_eq!("3,0".parse::<Composition>(), Err(CompositionError::ZeroPart { pos: 1 }));
        assert!("".parse::<Composition>().is_err());
        assert!("1,,2".parse::<Composition>().is_err());
        assert_eq!(pair("1,2;2,1").to_string(), "1,2;2,1");
        assert_eq!(
            "1,2;3".parse::<CompositionPair>(),
            Err(CompositionError::LengthMismatch(2, 1))
        );
        assert_eq!(
            "1,2;2,2".parse::<CompositionPair>(),
            Err(CompositionError::TotalMismatch(3, 4))
        );
        assert!("1,2".parse::<CompositionPair>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        let v: Vec<_> = enumerate_compositions(3, Some(2)).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(v, ["1,2", "2,1"]);
        assert_eq!(enumerate_compositions(4, None).unwrap().count(), 8);
        let v: Vec<_> = enumerate_compositions(1, None).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(v, ["1"]);
        let v: Vec<_> = enumerate_compositions(3, None).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(v, ["1,1,1", "1,2", "2,1", "3"]);
        assert!(enumerate_compositions(17, None).is_err());
        assert!(enumerate_compositions(3, Some(4)).is_err());
        assert!(enumerate_compositions(3, Some(0)).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(pair("3,1,2,2,3;1,1,6,1,2").is_irreducible());
        assert!(!pair("1,1;1,1").is_irreducible());
        assert!(pair("3;3").is_irreducible());
        assert!(!pair("1,2,1;2,1,1").is_irreducible());
    }

    #[test]
    fn irreducible_pair_listing() {
        let v: Vec<_> = enumerate_irreducible_pairs(3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(v, ["3;3", "1,2;2,1", "2,1;1,2"]);
        let v: Vec<_> = enumerate_irreducible_pairs(2).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(v, ["2;2"]);
        assert_eq!(enumerate_irreducible_pairs(1).unwrap().count(), 1);
    }

    #[test]
    fn ne_paths() {
        let full = to_ne_path(&c("3,1,2,2,3"), false);
        assert_eq!(full.to_string(), "NNEENENENNE");
        let dropped = to_ne_path(&c("3,1,2,2,3"), true);
        assert_eq!(dropped.len(), 10);
        assert_eq!(dropped.to_string(), "NNEENENENN");
        assert!(to_ne_path(&c("1"), true).is_empty());
        assert_eq!(dropped.to_composition(true), Some(c("3,1,2,2,3")));
        assert_eq!(full.to_composition(false), Some(c("3,1,2,2,3")));
        assert_eq!(dropped.to_composition(false), None);
    }

    #[test]
    fn common_vertex_examples() {
        let p = pair("3,1,2,2,3;1,1,6,1,2");
        let cv = common_vertices(&p.first.ne_path(true), &p.second.ne_path(true)).unwrap();
        assert_eq!(cv, [(0, 0), (2, 2), (2, 3), (4, 5), (4, 6)]);

        let a = c("5").ne_path(true);
        assert_eq!(common_vertices(&a, &a).unwrap(), a.vertices());

        let p = pair("1,2;2,1");
        let cv = common_vertices(&p.first.ne_path(true), &p.second.ne_path(true)).unwrap();
        assert_eq!(cv, [(0, 0), (1, 1)]);

        let err = common_vertices(&"NE".parse().unwrap(), &"NN".parse().unwrap());
        assert_eq!(err, Err(CompositionError::Shape((1, 1), (0, 2))));
    }
}
