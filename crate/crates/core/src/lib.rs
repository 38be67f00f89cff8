//! Exact wall-crossing between Gromov-Witten, unramified Gromov-Witten and
//! Gopakumar-Vafa invariants of a curve class on a threefold.
//!
//! The generating series differ by the factor `S^(2g-2+c)` with
//! `S = sin(u/2)/(u/2)` and `c = β · c1(X)`. [`wallcross`] applies it in both
//! directions and also evaluates the underlying sum over degenerate
//! contributions to confirm the closed form. Arithmetic is exact throughout
//! ([`rat`], [`series`]).
//!
//! ```
//! use gwcross::rat::{int, rat};
//! use gwcross::wallcross::{gw_from_ugw, GenusTable, Kind};
//!
//! let ugw = GenusTable::from_pairs(Kind::Ugw, 4, true, 2, [(0, int(1))]).unwrap();
//! let gw = gw_from_ugw(&ugw).unwrap();
//! assert_eq!(gw.value(2), Some(&rat(1, 360)));
//! ```

pub mod cli;
pub mod gv;
pub mod hodge;
pub mod partitions;
pub mod rat;
pub mod report;
pub mod series;
pub mod wallcross;
