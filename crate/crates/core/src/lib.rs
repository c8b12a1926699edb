//! Exact enumeration of Grand-Dyck paths by size, low peaks, components
//! above ground level and total components.
//!
//! The crate has three layers:
//!
//! - [`paths`] and [`compositions`]: the objects themselves, with
//!   exhaustive enumerators that serve as ground truth.
//! - [`combinatorics`] and [`series`]: closed forms and generating
//!   functions, evaluated in exact integer and rational arithmetic.
//! - [`bijections`]: the constructions explaining why the counts agree,
//!   and [`verify`], which checks all of the above against each other.
//!
//! ```
//! use grand_dyck::paths::parse_path;
//! use grand_dyck::combinatorics::u_count;
//!
//! let p = parse_path("DDDUDUUUUDUUUDDUDDDU").unwrap();
//! let s = p.stats();
//! assert_eq!((s.n, s.i, s.j, s.k), (10, 1, 2, 4));
//! assert!(u_count(s.n, s.i, s.j, s.k) > 0u32.into());
//! ```

pub mod bijections;
pub mod combinatorics;
pub mod compositions;
pub mod paths;
pub mod series;
pub mod verify;

// The guide in `book/` is compiled as doc tests so its snippets cannot rot.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/paths.md")]
    mod paths {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/compositions.md")]
    mod compositions {}
    #[doc = include_str!("../../../book/src/bijections.md")]
    mod bijections {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
