//! Exact sparse Gaussian elimination.
//!
//! Equations are fed one at a time and reduced against the pivots found so
//! far, so only an echelon basis of the row space is ever stored. The
//! intertwiner and Leibniz systems are very sparse (a handful of terms per
//! equation over `dim²` unknowns), which keeps this cheap at `dim ≤ 36`.

use std::collections::BTreeMap;

use crate::scalar::{Field, Scalar};

type SparseRow = BTreeMap<usize, Scalar>;

/// Linear system over `columns` unknowns, optionally augmented with a
/// right-hand side stored at column index `columns`.
#[derive(Clone, Debug)]
pub struct EchelonSystem {
    columns: usize,
    field: Field,
    pivots: BTreeMap<usize, SparseRow>,
    inconsistent: bool,
}

impl EchelonSystem {
    pub fn new(columns: usize, field: &Field) -> Self {
        EchelonSystem {
            columns,
            field: field.clone(),
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    /// Adds the homogeneous equation `Σ coeff·x_col = 0`. Repeated columns are summed.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>) {
        self.add_row(terms, None);
    }

    /// Adds `Σ coeff·x_col = rhs`.
    pub fn add_equation_with_rhs(
        &mut self,
        terms: impl IntoIterator<Item = (usize, Scalar)>,
        rhs: Scalar,
    ) {
        self.add_row(terms, Some(rhs));
    }

    fn add_row(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>, rhs: Option<Scalar>) {
        let mut row = SparseRow::new();
        for (col, v) in terms {
            assert!(col < self.columns, "column {col} out of range");
            if v.is_zero() {
                continue;
            }
            accumulate(&mut row, col, &v);
        }
        if let Some(r) = rhs {
            if !r.is_zero() {
                accumulate(&mut row, self.columns, &r);
            }
        }
        self.insert(row);
    }

    fn insert(&mut self, mut row: SparseRow) {
        let mut cursor = 0;
        loop {
            let Some((&col, _)) = row.range(cursor..).next() else {
                return;
            };
            match self.pivots.get(&col) {
                Some(pivot_row) => {
                    let factor = row.remove(&col).unwrap();
                    for (&c, v) in pivot_row.range(col + 1..) {
                        accumulate(&mut row, c, &-(&factor * v));
                    }
                    cursor = col + 1;
                }
                None => {
                    if col == self.columns {
                        self.inconsistent = true;
                        return;
                    }
                    let lead = row[&col].inv().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v = &*v * &lead;
                    }
                    self.pivots.insert(col, row);
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Reduced row echelon form of the pivot rows.
    fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            let later: Vec<usize> = row
                .range(col + 1..)
                .map(|(&c, _)| c)
                .filter(|c| done.contains_key(c))
                .collect();
            for c in later {
                let Some(factor) = row.remove(&c) else { continue };
                for (&k, v) in done[&c].range(c + 1..) {
                    accumulate(&mut row, k, &-(&factor * v));
                }
            }
            done.insert(col, row);
        }
        done
    }

    /// Basis of the solution space of the homogeneous part, one vector per
    /// free column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let reduced = self.reduced();
        (0..self.columns)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(&self.field); self.columns];
                v[free] = Scalar::one(&self.field);
                for (&p, row) in &reduced {
                    if let Some(x) = row.get(&free) {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// The unique solution of the augmented system, if there is exactly one.
    pub fn unique_solution(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent || self.pivots.len() != self.columns {
            return None;
        }
        let reduced = self.reduced();
        Some(
            (0..self.columns)
                .map(|c| {
                    reduced[&c]
                        .get(&self.columns)
                        .cloned()
                        .unwrap_or_else(|| Scalar::zero(&self.field))
                })
                .collect(),
        )
    }
}

fn accumulate(row: &mut SparseRow, col: usize, v: &Scalar) {
    match row.get_mut(&col) {
        Some(x) => {
            *x += v;
            if x.is_zero() {
                row.remove(&col);
            }
        }
        None => {
            if !v.is_zero() {
                row.insert(col, v.clone());
            }
        }
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vec<Scalar>], field: &Field) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut sys = EchelonSystem::new(width, field);
    for v in vectors {
        sys.add_equation(v.iter().cloned().enumerate());
    }
    sys.rank()
}
