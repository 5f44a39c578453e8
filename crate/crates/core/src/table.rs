//! Classical / MUB / nUB success probabilities for small codes.

use itertools::Itertools;
use serde::Serialize;

use crate::bases::{self, BasisSet};
use crate::error::Result;
use crate::qrac::{self, ExactValue};

/// `(d, n)` rows of the comparison table.
pub const ROWS: [(usize, usize); 5] = [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MubEntry {
    pub value: f64,
    /// Which built-in construction produced the value.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub d: usize,
    pub n: usize,
    pub classical: ExactValue,
    /// `None` when no built-in construction provides `n` MUBs in dimension `d`.
    pub mub: Option<MubEntry>,
    /// Set where several inequivalent MUB families exist and the built-in
    /// one need not be the best representative.
    pub mub_flagged: bool,
    pub nub: f64,
}

/// Candidate sets of `n` MUBs in dimension `d` from the built-in
/// constructions, labelled by origin.
pub fn mub_candidates(n: usize, d: usize) -> Result<Vec<(String, BasisSet)>> {
    let mut out = Vec::new();
    if bases::is_prime(d) {
        let full = bases::make_wh_mub_set(d)?;
        for subset in (0..full.n()).combinations(n) {
            out.push((format!("weyl-heisenberg {subset:?}"), full.select(&subset)?));
        }
    } else if d == 4 && n <= 3 {
        // {A_i ⊗ B_π(i)} over qubit MUBs A, B and permutations π.
        let q = bases::qubit_mub_triplet();
        for perm in (0..3).permutations(3) {
            for subset in (0..3).combinations(n) {
                let set = subset
                    .iter()
                    .map(|&i| bases::tensor_product(q.basis(i), q.basis(perm[i])))
                    .collect();
                out.push((
                    format!("qubit tensor {subset:?} x {perm:?}"),
                    BasisSet::new(set)?,
                ));
            }
        }
    }
    Ok(out)
}

/// Best ASP over [`mub_candidates`]; ties keep the first candidate.
pub fn best_mub_asp(n: usize, d: usize) -> Result<Option<MubEntry>> {
    let mut best: Option<MubEntry> = None;
    for (source, s) in mub_candidates(n, d)? {
        let value = qrac::asp_quantum(&s)?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(MubEntry { value, source });
        }
    }
    Ok(best)
}

pub fn reproduce_table() -> Result<Vec<TableRow>> {
    ROWS.iter()
        .map(|&(d, n)| {
            Ok(TableRow {
                d,
                n,
                classical: qrac::asp_classical(n, d)?,
                mub: best_mub_asp(n, d)?,
                mub_flagged: d >= 4,
                nub: qrac::nub_bound(n, d)?.value,
            })
        })
        .collect()
}
