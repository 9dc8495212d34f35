use crate::dist::Dist;
use crate::error::{Error, Result};

/// Dense row-major matrix of distances whose rows and columns carry labels
/// (usually vertex indices; stacked matrices use synthetic labels).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistMatrix {
    rows: Vec<usize>,
    cols: Vec<usize>,
    cells: Vec<Dist>,
}

impl DistMatrix {
    pub fn filled(rows: Vec<usize>, cols: Vec<usize>, value: Dist) -> Self {
        let len = rows.len() * cols.len();
        DistMatrix {
            rows,
            cols,
            cells: vec![value; len],
        }
    }

    pub fn infinite(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        Self::filled(rows, cols, Dist::INF)
    }

    /// Tropical identity: 0 where the row label equals the column label.
    pub fn identity(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let mut m = Self::infinite(rows, cols);
        for r in 0..m.rows.len() {
            for c in 0..m.cols.len() {
                if m.rows[r] == m.cols[c] {
                    m.set(r, c, Dist::ZERO);
                }
            }
        }
        m
    }

    pub fn from_cells(rows: Vec<usize>, cols: Vec<usize>, cells: Vec<Dist>) -> Result<Self> {
        if cells.len() != rows.len() * cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {}x{} matrix",
                cells.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(DistMatrix { rows, cols, cells })
    }

    /// Square matrix over `0..n` from nested rows; convenient in tests.
    pub fn from_rows(data: &[Vec<Dist>]) -> Result<Self> {
        let nrows = data.len();
        let ncols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let cells = data.iter().flatten().copied().collect();
        Self::from_cells((0..nrows).collect(), (0..ncols).collect(), cells)
    }

    #[inline]
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    #[inline]
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn cells(&self) -> &[Dist] {
        &self.cells
    }

    #[inline]
    pub fn cells_mut(&mut self) -> &mut [Dist] {
        &mut self.cells
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Dist {
        self.cells[r * self.cols.len() + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Dist) {
        let nc = self.cols.len();
        self.cells[r * nc + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Dist] {
        let nc = self.cols.len();
        &self.cells[r * nc..(r + 1) * nc]
    }

    pub fn is_all_inf(&self) -> bool {
        self.cells.iter().all(|d| d.is_inf())
    }

    pub fn transpose(&self) -> DistMatrix {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut cells = Vec::with_capacity(nr * nc);
        for c in 0..nc {
            for r in 0..nr {
                cells.push(self.get(r, c));
            }
        }
        DistMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            cells,
        }
    }

    /// Submatrix keeping the given row and column *positions*.
    pub fn select(&self, row_pos: &[usize], col_pos: &[usize]) -> DistMatrix {
        let mut cells = Vec::with_capacity(row_pos.len() * col_pos.len());
        for &r in row_pos {
            let row = self.row(r);
            cells.extend(col_pos.iter().map(|&c| row[c]));
        }
        DistMatrix {
            rows: row_pos.iter().map(|&r| self.rows[r]).collect(),
            cols: col_pos.iter().map(|&c| self.cols[c]).collect(),
            cells,
        }
    }

    /// Entrywise minimum with a matrix of identical shape.
    pub fn min_assign(&mut self, other: &DistMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("entrywise min of unequal shapes".into()));
        }
        for (a, &b) in self.cells.iter_mut().zip(&other.cells) {
            *a = (*a).min(b);
        }
        Ok(())
    }

    /// Largest absolute value among finite entries (0 when none).
    pub fn max_abs_finite(&self) -> i64 {
        self.cells
            .iter()
            .filter_map(|d| d.finite())
            .map(|v| v.saturating_abs())
            .max()
            .unwrap_or(0)
    }

    /// Stacks `other` under `self`; column labels must agree.
    pub fn stack(&self, other: &DistMatrix, relabel_from: usize) -> Result<DistMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stacking matrices with different columns".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend((0..other.nrows()).map(|i| relabel_from + i));
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        Ok(DistMatrix {
            rows,
            cols: self.cols.clone(),
            cells,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::d;

    #[test]
    fn transpose_and_select() {
        let m = DistMatrix::from_rows(&[vec![d(1), d(2), d(3)], vec![d(4), Dist::INF, d(6)]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.nrows(), 3);
        assert_eq!(t.get(2, 1), d(6));
        assert_eq!(t.get(1, 1), Dist::INF);
        let s = m.select(&[1], &[0, 2]);
        assert_eq!(s.cells(), &[d(4), d(6)]);
        assert_eq!(s.rows(), &[1]);
        assert_eq!(s.cols(), &[0, 2]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(DistMatrix::from_rows(&[vec![d(1)], vec![d(1), d(2)]]).is_err());
    }

    #[test]
    fn identity_uses_labels() {
        let m = DistMatrix::identity(vec![2, 5], vec![5, 7, 2]);
        assert_eq!(m.get(0, 2), Dist::ZERO);
        assert_eq!(m.get(1, 0), Dist::ZERO);
        assert_eq!(m.get(0, 0), Dist::INF);
    }
}
