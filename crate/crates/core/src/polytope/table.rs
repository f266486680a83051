//! The five known universal `{{3,3,4,3}_s, {3,4,3,3}_t}` rows and a diff of
//! recomputed values against the printed ones.

use num_bigint::BigUint;
use serde::Serialize;

use super::{polytope_stats, PolytopeError, PolytopeReport, StatsOptions};
use crate::presentation::{locally_toroidal_presentation, ToroidalType};

#[derive(Clone, Debug, Serialize)]
pub struct KnownRow {
    #[serde(serialize_with = "super::as_string")]
    pub s: ToroidalType,
    #[serde(serialize_with = "super::as_string")]
    pub t: ToroidalType,
    pub v: u64,
    pub f: u64,
    /// Group as printed.
    pub group: &'static str,
    /// Order of the printed group.
    pub order: u64,
}

pub fn known_rows() -> Vec<KnownRow> {
    let row = |s: &str, t: &str, v, f, group, order| KnownRow { s: s.parse().unwrap(), t: t.parse().unwrap(), v, f, group, order };
    vec![
        row("2000", "2000", 32, 32, "[2^15 3^2]", 294_912),
        row("2000", "2200", 32, 128, "[2^18 3^2]", 2_359_296),
        row("2200", "2200", 2048, 2048, "[2^24 3^2]", 150_994_944),
        row("3000", "3000", 2340, 2340, "(3^2 x L4(3)).2^2", 218_350_080),
        row("2200", "3000", 268_800, 340_200, "S3 x O8+(2):S3", 6_270_566_400),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Entry {
    pub printed: KnownRow,
    pub computed: PolytopeReport,
    /// One line per field where the computation differs from the printed row.
    pub diffs: Vec<String>,
}

impl Table1Entry {
    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Recomputes one row from its presentation.
pub fn table1_row(row: &KnownRow, opts: &StatsOptions) -> Result<Table1Entry, PolytopeError> {
    let p = locally_toroidal_presentation(row.s, Some(row.t));
    let r = polytope_stats(&p, opts)?;
    let mut diffs = Vec::new();
    if r.v as u64 != row.v {
        diffs.push(format!("v: printed {}, computed {}", row.v, r.v));
    }
    if r.f as u64 != row.f {
        diffs.push(format!("f: printed {}, computed {}", row.f, r.f));
    }
    if r.group_order != BigUint::from(row.order) {
        diffs.push(format!("order: printed {} = |{}|, computed {}", row.order, row.group, r.group_order));
    }
    if !r.product_law_holds {
        diffs.push("product law: facet and vertex products disagree".to_string());
    }
    if r.facet_type != Some(row.s) {
        diffs.push(format!("facet type: printed {}, identified {:?}", row.s, r.facet_type.map(|t| t.to_string())));
    }
    if r.vertex_type != Some(row.t) {
        diffs.push(format!("vertex type: printed {}, identified {:?}", row.t, r.vertex_type.map(|t| t.to_string())));
    }
    Ok(Table1Entry { printed: row.clone(), computed: r, diffs })
}
