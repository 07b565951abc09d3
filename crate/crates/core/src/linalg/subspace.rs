use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// A subspace of `field^ambient_dim`, stored as the RREF of a spanning set
/// with zero rows dropped. Two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    rows: Matrix,
}

/// Result of [`SubspaceBasis::compare`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceRelation {
    pub sum: SubspaceBasis,
    pub intersection: SubspaceBasis,
    /// `a ⊇ b`.
    pub contains: bool,
    pub equal: bool,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, rows: Matrix::zeros(field, 0, ambient_dim) }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, rows: Matrix::identity(field, ambient_dim) }
    }

    pub fn from_spanning(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// The row space of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let rref = m.rref();
        let kept: Vec<Vec<Scalar>> = (0..rref.rank).map(|r| rref.matrix.row(r).to_vec()).collect();
        SubspaceBasis {
            ambient_dim: m.cols(),
            rows: Matrix::from_rows(m.field(), m.cols(), &kept).expect("rows have ambient length"),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.rows.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Echelonized basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.rows.row_vecs()
    }

    /// Leading column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.rows
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("no zero rows")
            })
            .collect()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let mut out = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.rows.row(r)) {
                if !b.is_zero() {
                    *o = &*o - &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    fn check_compatible(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        Ok(Self::from_matrix_rows(&self.rows.vstack(&other.rows)?))
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        // (α, β) with αA + βB = 0 gives αA in both row spaces.
        let stacked = self.rows.vstack(&other.rows)?;
        let relations = stacked.transpose().kernel();
        let field = self.field();
        let a = self.dim();
        let vectors: Vec<Vec<Scalar>> = relations
            .vectors()
            .into_iter()
            .map(|coeffs| self.rows.vec_mul(&coeffs[..a]))
            .collect();
        SubspaceBasis::from_spanning(field, self.ambient_dim, &vectors)
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.rows.vstack(&other.rows)?.rank() == self.dim())
    }

    pub fn compare(&self, other: &SubspaceBasis) -> Result<SubspaceRelation> {
        let sum = self.sum(other)?;
        let intersection = self.intersection(other)?;
        let contains = sum.dim() == self.dim();
        let equal = self == other;
        Ok(SubspaceRelation { sum, intersection, contains, equal })
    }
}

/// Serialized form: ambient dimension plus echelon basis rows as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceView {
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl From<&SubspaceBasis> for SubspaceView {
    fn from(s: &SubspaceBasis) -> Self {
        SubspaceView {
            ambient_dim: s.ambient_dim,
            dim: s.dim(),
            basis: s
                .vectors()
                .iter()
                .map(|v| v.iter().map(Scalar::to_string).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn span(rows: &[&[i64]]) -> SubspaceBasis {
        SubspaceBasis::from_matrix_rows(&Matrix::from_i64(q(), rows))
    }

    #[test]
    fn equal_subspaces() {
        let a = span(&[&[1, 2, 0], &[0, 1, 1]]);
        let b = span(&[&[1, 3, 1], &[2, 5, 1]]);
        let rel = a.compare(&b).unwrap();
        assert!(rel.equal && rel.contains);
        assert_eq!(rel.sum, a);
        assert_eq!(rel.intersection, a);
    }

    #[test]
    fn complementary_lines() {
        let a = span(&[&[1, 0]]);
        let b = span(&[&[0, 1]]);
        let rel = a.compare(&b).unwrap();
        assert_eq!(rel.sum, SubspaceBasis::full(q(), 2));
        assert!(rel.intersection.is_zero());
        assert!(!rel.contains && !rel.equal);
    }

    #[test]
    fn plane_contains_axis() {
        let a = span(&[&[1, 1], &[1, -1]]);
        let b = span(&[&[1, 0]]);
        assert!(a.contains(&b).unwrap());
        assert!(!b.contains(&a).unwrap());
        assert!(a.compare(&b).unwrap().contains);
    }

    #[test]
    fn mismatched_dims() {
        let a = span(&[&[1, 0]]);
        let b = span(&[&[1, 0, 0]]);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.compare(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_rows_dropped() {
        let a = span(&[&[0, 0, 0], &[1, 1, 0], &[2, 2, 0]]);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.pivots(), vec![0]);
    }
}
