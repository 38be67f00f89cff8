//! Gopakumar–Vafa invariants of Fano and primitive Calabi–Yau classes.
//!
//! For these classes the Gopakumar–Vafa invariants coincide with the
//! unramified Gromov–Witten ones, so extraction is the inverse sine-power
//! transform followed by a relabel. Other classes are refused: the
//! identification is not known for them.

use serde::Serialize;
use thiserror::Error;

use crate::rat::is_integral;
use crate::wallcross::{gw_from_ugw, ugw_from_gw, GenusTable, Kind, WallcrossError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GvError {
    #[error(
        "class with beta.c1 = {c} (primitive: {primitive}) is neither Fano nor primitive Calabi-Yau"
    )]
    ClassNotCovered { c: i64, primitive: bool },
    #[error(transparent)]
    Table(#[from] WallcrossError),
}

/// `beta . c1 > 0`, or `beta . c1 = 0` with `beta` primitive.
pub fn class_is_covered(c: i64, primitive: bool) -> bool {
    c > 0 || (c == 0 && primitive)
}

fn gate(t: &GenusTable) -> Result<(), GvError> {
    if class_is_covered(t.c(), t.primitive()) {
        Ok(())
    } else {
        Err(GvError::ClassNotCovered {
            c: t.c(),
            primitive: t.primitive(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GvReport {
    #[serde(skip)]
    pub table: GenusTable,
    pub integral: bool,
    pub non_integral_genera: Vec<u32>,
    pub largest_nonzero_genus: Option<u32>,
    pub truncation_caveat: String,
}

impl GvReport {
    fn new(table: GenusTable) -> Self {
        let non_integral_genera: Vec<u32> = table
            .values()
            .iter()
            .filter(|(_, v)| !is_integral(v))
            .map(|(&g, _)| g)
            .collect();
        let largest_nonzero_genus = table
            .values()
            .iter()
            .rev()
            .find(|(_, v)| !num_traits::Zero::is_zero(*v))
            .map(|(&g, _)| g);
        let truncation_caveat = format!(
            "values are known only up to genus {}; vanishing above it is not checked",
            table.g_max()
        );
        Self {
            integral: non_integral_genera.is_empty(),
            non_integral_genera,
            largest_nonzero_genus,
            truncation_caveat,
            table,
        }
    }
}

pub fn gv_from_gw(t: &GenusTable) -> Result<GvReport, GvError> {
    gate(t)?;
    let ugw = ugw_from_gw(t)?;
    Ok(GvReport::new(ugw.relabeled(Kind::Gv)))
}

/// Integrality report for a table already in the uGW or GV convention.
pub fn check_gv_table(t: &GenusTable) -> Result<GvReport, GvError> {
    if t.kind() == Kind::Gw {
        return Err(WallcrossError::WrongKind {
            expected: Kind::Gv,
            found: Kind::Gw,
        }
        .into());
    }
    gate(t)?;
    Ok(GvReport::new(t.relabeled(Kind::Gv)))
}

pub fn gw_from_gv(t: &GenusTable) -> Result<GenusTable, GvError> {
    if t.kind() != Kind::Gv {
        return Err(WallcrossError::WrongKind {
            expected: Kind::Gv,
            found: t.kind(),
        }
        .into());
    }
    gate(t)?;
    Ok(gw_from_ugw(&t.relabeled(Kind::Ugw))?)
}
