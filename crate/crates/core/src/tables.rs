//! Affine point counts of `x^(m-r-2) y^2 = x^m + a x^2 + a x + b` over
//! all `a != b` in `F_q^*`, with the published rows for `(8,5)` and `(11,7)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{table_g, Curve};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

type Row = (u64, &'static [(u32, u32)]);

// Each row is a list of inclusive ranges.
const TABLE_8_5: &[Row] = &[
    (11, &[(4, 16)]),
    (13, &[(4, 6), (8, 19)]),
    (17, &[(7, 7), (9, 24), (26, 26), (28, 28)]),
    (19, &[(6, 6), (8, 24), (26, 27), (29, 29)]),
    (23, &[(11, 34), (36, 36)]),
    (25, &[(10, 10), (12, 14), (16, 36), (38, 38)]),
    (
        27,
        &[
            (12, 12),
            (15, 16),
            (18, 19),
            (21, 22),
            (24, 25),
            (27, 28),
            (30, 31),
            (33, 34),
            (36, 37),
            (40, 40),
        ],
    ),
    (29, &[(15, 38), (40, 41)]),
    (31, &[(14, 14), (16, 44), (46, 46)]),
    (37, &[(18, 18), (22, 51), (53, 53)]),
    (41, &[(22, 56), (58, 58)]),
    (43, &[(18, 18), (24, 56), (58, 60), (64, 64)]),
    (47, &[(23, 24), (27, 62), (64, 66)]),
    (49, &[(30, 66), (68, 68)]),
];

const TABLE_11_7: &[Row] = &[
    (11, &[(1, 1), (8, 8), (10, 10), (12, 12), (19, 19)]),
    (13, &[(4, 5), (7, 18)]),
    (17, &[(6, 6), (8, 24)]),
    (19, &[(6, 6), (8, 10), (12, 26), (28, 28), (30, 30)]),
    (23, &[(8, 10), (12, 33), (35, 36)]),
    (25, &[(13, 36)]),
    (27, &[(13, 38)]),
    (29, &[(12, 12), (14, 43)]),
    (31, &[(15, 17), (19, 44), (51, 51)]),
    (37, &[(14, 14), (18, 18), (20, 51), (54, 54), (56, 56)]),
    (41, &[(23, 23), (26, 57), (59, 60), (64, 64)]),
    (43, &[(21, 21), (24, 24), (26, 58), (60, 61)]),
    (47, &[(24, 64), (68, 68)]),
    (49, &[(22, 22), (30, 65), (68, 68)]),
];

/// The published count set for `(m, r)` at `q`, if there is one.
pub fn fixture(m: usize, r: usize, q: u64) -> Option<BTreeSet<usize>> {
    let table = match (m, r) {
        (8, 5) => TABLE_8_5,
        (11, 7) => TABLE_11_7,
        _ => return None,
    };
    let (_, ranges) = table.iter().find(|(row_q, _)| *row_q == q)?;
    Some(ranges.iter().flat_map(|&(lo, hi)| lo as usize..=hi as usize).collect())
}

/// The orders `q` with a published row for `(m, r)`.
pub fn fixture_orders(m: usize, r: usize) -> Vec<u64> {
    match (m, r) {
        (8, 5) => TABLE_8_5.iter().map(|(q, _)| *q).collect(),
        (11, 7) => TABLE_11_7.iter().map(|(q, _)| *q).collect(),
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub alpha: String,
    pub beta: String,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub q: u64,
    pub m: usize,
    pub r: usize,
    pub counts: BTreeSet<usize>,
    pub entries: Vec<SweepEntry>,
    /// `(alpha, beta)` pairs whose `g` is not squarefree.
    pub skipped: Vec<(String, String)>,
    pub fixture: Option<BTreeSet<usize>>,
    /// In the fixture but never observed.
    pub missing: BTreeSet<usize>,
    /// Observed but absent from the fixture.
    pub extra: BTreeSet<usize>,
}

impl TableRow {
    /// No fixture, or the computed set equals it.
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    /// The fixture is contained in the computed set.
    pub fn fixture_covered(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Counts for every `a != b` in `F_q^*`, in element order.
pub fn sweep(field: &Field, m: usize, r: usize) -> Result<TableRow> {
    let nonzero: Vec<Elem> = field.elements().skip(1).collect();
    let pairs: Vec<(Elem, Elem)> = nonzero
        .iter()
        .flat_map(|&a| nonzero.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let results: Vec<Result<Option<usize>>> = pairs
        .par_iter()
        .map(
            |&(a, b)| match Curve::hyperelliptic(field, m, r, table_g(field, m, a, b)) {
                Ok(c) => Ok(Some(c.count_affine())),
                Err(Error::InvalidCurve(_)) if !table_g(field, m, a, b).is_squarefree() => Ok(None),
                Err(e) => Err(e),
            },
        )
        .collect();

    let fmt = |e: Elem| field.format_elem(e);
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (&(a, b), res) in pairs.iter().zip(results) {
        match res? {
            Some(count) => entries.push(SweepEntry {
                alpha: fmt(a),
                beta: fmt(b),
                count,
            }),
            None => skipped.push((fmt(a), fmt(b))),
        }
    }
    let counts: BTreeSet<usize> = entries.iter().map(|e| e.count).collect();
    let fixture = fixture(m, r, field.q());
    let (missing, extra) = match &fixture {
        Some(f) => (f - &counts, &counts - f),
        None => Default::default(),
    };
    Ok(TableRow {
        q: field.q(),
        m,
        r,
        counts,
        entries,
        skipped,
        fixture,
        missing,
        extra,
    })
}

/// Renders a count set with runs collapsed: `4..16, 18, 20..22`.
pub fn format_set(set: &BTreeSet<usize>) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut iter = set.iter().copied().peekable();
    while let Some(lo) = iter.next() {
        let mut hi = lo;
        while iter.peek() == Some(&(hi + 1)) {
            hi = iter.next().unwrap();
        }
        out.push(if hi == lo {
            lo.to_string()
        } else {
            format!("{lo}..{hi}")
        });
    }
    out.join(", ")
}
