use serde::Serialize;

use super::ProbVec;
use crate::error::{Error, Result};

/// Factorization `(N1, N2)` or `(N1, N2, N3)` of a (padded) dimension.
///
/// Multi-indices map to flat indices row-major, last index fastest:
/// `(i1, i2) -> i1 * N2 + i2` and `(i1, i2, i3) -> (i1 * N2 + i2) * N3 + i3`
/// (all indices 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TableShape {
    factors: Vec<usize>,
}

impl TableShape {
    pub fn new(factors: &[usize]) -> Result<Self> {
        if !(2..=3).contains(&factors.len()) || factors.contains(&0) {
            return Err(Error::BadShape(factors.to_vec()));
        }
        Ok(Self {
            factors: factors.to_vec(),
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn size(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for a in (0..self.factors.len() - 1).rev() {
            strides[a] = strides[a + 1] * self.factors[a + 1];
        }
        strides
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.factors.len());
        multi.iter().zip(&self.factors).fold(0, |acc, (&i, &n)| {
            debug_assert!(i < n);
            acc * n + i
        })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut multi = vec![0; self.factors.len()];
        for a in (0..self.factors.len()).rev() {
            multi[a] = flat % self.factors[a];
            flat /= self.factors[a];
        }
        multi
    }
}

impl std::fmt::Display for TableShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join("x"))
    }
}

/// Probabilities laid out on a multi-index grid (row-major, last index fastest).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbTable {
    shape: TableShape,
    entries: Vec<f64>,
}

/// Axis subsets supported by [`ProbTable::marginal3`]; axes are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep3 {
    /// Keep axes 0 and 1, sum over axis 2.
    First2,
    /// Keep axes 1 and 2, sum over axis 0.
    Last2,
    /// Keep only the middle axis.
    Middle,
}

impl Keep3 {
    pub fn from_axes(axes: &[usize]) -> Result<Self> {
        match axes {
            [0, 1] => Ok(Keep3::First2),
            [1, 2] => Ok(Keep3::Last2),
            [1] => Ok(Keep3::Middle),
            _ => Err(Error::BadAxes(axes.to_vec())),
        }
    }

    pub fn axes(self) -> &'static [usize] {
        match self {
            Keep3::First2 => &[0, 1],
            Keep3::Last2 => &[1, 2],
            Keep3::Middle => &[1],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Marginal {
    Table(ProbTable),
    Vector(ProbVec),
}

impl Marginal {
    pub fn entries(&self) -> &[f64] {
        match self {
            Marginal::Table(t) => t.entries(),
            Marginal::Vector(v) => v.values(),
        }
    }
}

/// Lays `p` out on `shape`; requires `shape.size() == p.dim()`.
pub fn reshape(p: &ProbVec, shape: &TableShape) -> Result<ProbTable> {
    if shape.size() != p.dim() {
        return Err(Error::ShapeMismatch {
            shape: shape.factors().to_vec(),
            product: shape.size(),
            dim: p.dim(),
        });
    }
    Ok(ProbTable {
        shape: shape.clone(),
        entries: p.values().to_vec(),
    })
}

impl ProbTable {
    pub fn shape(&self) -> &TableShape {
        &self.shape
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry at a 0-based multi-index.
    pub fn get(&self, multi: &[usize]) -> f64 {
        self.entries[self.shape.flat_index(multi)]
    }

    /// Inverse of [`reshape`]; bit-identical to the source vector.
    pub fn flatten(&self) -> ProbVec {
        ProbVec::from_simplex(self.entries.clone())
    }

    /// Sums out every axis not in `kept` (sorted, 0-based). Output is laid
    /// out row-major over the kept axes.
    pub fn sum_to(&self, kept: &[usize]) -> Result<Vec<f64>> {
        let rank = self.shape.rank();
        if kept.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadAxes(kept.to_vec()));
        }
        if let Some(&axis) = kept.iter().find(|&&a| a >= rank) {
            return Err(Error::BadAxis {
                axis,
                factors: rank,
            });
        }
        let dims: Vec<usize> = kept.iter().map(|&a| self.shape.factors()[a]).collect();
        let mut out = vec![0.0; dims.iter().product()];
        for (flat, &v) in self.entries.iter().enumerate() {
            let multi = self.shape.multi_index(flat);
            let idx = kept
                .iter()
                .zip(&dims)
                .fold(0, |acc, (&a, &n)| acc * n + multi[a]);
            out[idx] += v;
        }
        Ok(out)
    }

    /// Marginal of a two-factor table keeping axis `keep` (0 or 1).
    pub fn marginal2(&self, keep: usize) -> Result<ProbVec> {
        if self.shape.rank() != 2 {
            return Err(Error::BadShape(self.shape.factors().to_vec()));
        }
        if keep > 1 {
            return Err(Error::BadAxis {
                axis: keep,
                factors: 2,
            });
        }
        Ok(ProbVec::from_simplex(self.sum_to(&[keep])?))
    }

    /// Pair or middle-axis marginal of a three-factor table.
    pub fn marginal3(&self, keep: Keep3) -> Result<Marginal> {
        if self.shape.rank() != 3 {
            return Err(Error::BadShape(self.shape.factors().to_vec()));
        }
        let entries = self.sum_to(keep.axes())?;
        let f = self.shape.factors();
        Ok(match keep {
            Keep3::First2 => Marginal::Table(ProbTable {
                shape: TableShape::new(&[f[0], f[1]])?,
                entries,
            }),
            Keep3::Last2 => Marginal::Table(ProbTable {
                shape: TableShape::new(&[f[1], f[2]])?,
                entries,
            }),
            Keep3::Middle => Marginal::Vector(ProbVec::from_simplex(entries)),
        })
    }
}

fn prime_factor_count(mut n: usize) -> usize {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Smallest `N' >= dim` that splits into `rank` factors, each at least 2.
pub fn minimal_padded_dim(dim: usize, rank: usize) -> usize {
    (dim.max(1)..)
        .find(|&n| prime_factor_count(n) >= rank)
        .expect("unbounded search")
}

/// Every ordered factorization of [`minimal_padded_dim`] into `rank` (2 or 3)
/// factors that are all at least 2.
pub fn admissible_shapes(dim: usize, rank: usize) -> Result<Vec<TableShape>> {
    if !(2..=3).contains(&rank) {
        return Err(Error::BadShape(vec![0; rank]));
    }
    let n = minimal_padded_dim(dim, rank);
    let divisors: Vec<usize> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut shapes = Vec::new();
    for &a in &divisors {
        let rest = n / a;
        if rank == 2 {
            if rest >= 2 {
                shapes.push(TableShape::new(&[a, rest])?);
            }
            continue;
        }
        for &b in divisors.iter().filter(|&&b| rest.is_multiple_of(b)) {
            let c = rest / b;
            if c >= 2 {
                shapes.push(TableShape::new(&[a, b, c])?);
            }
        }
    }
    Ok(shapes)
}
