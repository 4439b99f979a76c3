use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{IvqRofn, RungContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Benefit,
    Cost,
}

/// m alternatives by n attributes, with one polarity per attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct DecisionMatrix {
    cells: Vec<Vec<IvqRofn>>,
    polarity: Vec<Polarity>,
}

#[derive(Deserialize)]
struct RawMatrix {
    cells: Vec<Vec<IvqRofn>>,
    polarity: Vec<Polarity>,
}

impl TryFrom<RawMatrix> for DecisionMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        DecisionMatrix::new(r.cells, r.polarity)
    }
}

impl DecisionMatrix {
    pub fn new(cells: Vec<Vec<IvqRofn>>, polarity: Vec<Polarity>) -> Result<Self> {
        let n = polarity.len();
        if cells.is_empty() || n == 0 {
            return Err(Error::Shape("decision matrix needs at least one row and one attribute".into()));
        }
        for (i, row) in cells.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {} has {} cells, expected {n}", i + 1, row.len())));
            }
        }
        Ok(DecisionMatrix { cells, polarity })
    }

    /// All-benefit matrix from `[mu_lo, mu_hi, nu_lo, nu_hi]` rows.
    pub fn from_arrays(rows: &[Vec<[f64; 4]>]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let mut cells = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, c) in row.iter().enumerate() {
                out.push(
                    IvqRofn::try_from(*c)
                        .map_err(|e| Error::at(format!("row {}, col {}", i + 1, j + 1), e.to_string()))?,
                );
            }
            cells.push(out);
        }
        DecisionMatrix::new(cells, vec![Polarity::Benefit; n])
    }

    pub fn with_polarity(mut self, polarity: Vec<Polarity>) -> Result<Self> {
        if polarity.len() != self.cols() {
            return Err(Error::Shape(format!("{} polarities for {} attributes", polarity.len(), self.cols())));
        }
        self.polarity = polarity;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.polarity.len()
    }

    pub fn polarity(&self) -> &[Polarity] {
        &self.polarity
    }

    pub fn get(&self, i: usize, j: usize) -> &IvqRofn {
        &self.cells[i][j]
    }

    pub fn row(&self, i: usize) -> &[IvqRofn] {
        &self.cells[i]
    }

    pub fn column(&self, j: usize) -> Vec<IvqRofn> {
        self.cells.iter().map(|r| r[j]).collect()
    }

    pub fn cells(&self) -> &[Vec<IvqRofn>] {
        &self.cells
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, &IvqRofn)> {
        self.cells.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, a)| (i, j, a)))
    }

    pub fn same_shape(&self, other: &DecisionMatrix) -> bool {
        self.rows() == other.rows() && self.cols() == other.cols()
    }

    /// Rung constraint on every cell, reporting the first violation.
    pub fn validate(&self, ctx: &RungContext) -> Result<()> {
        for (i, j, a) in self.iter_cells() {
            ctx.check(a).map_err(|e| Error::at(format!("row {}, col {}", i + 1, j + 1), e.to_string()))?;
        }
        Ok(())
    }

    pub(crate) fn from_parts(cells: Vec<Vec<IvqRofn>>, polarity: Vec<Polarity>) -> Self {
        debug_assert!(cells.iter().all(|r| r.len() == polarity.len()));
        DecisionMatrix { cells, polarity }
    }

    /// Reorders rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        DecisionMatrix::from_parts(perm.iter().map(|&i| self.cells[i].clone()).collect(), self.polarity.clone())
    }

    /// Reorders columns (and polarities) by `perm`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        DecisionMatrix::from_parts(
            self.cells.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect(),
            perm.iter().map(|&j| self.polarity[j]).collect(),
        )
    }
}
