//! Finite-dimensional associative algebras given by structure constants,
//! symmetrizing traces and dual bases.

use std::fmt;
use std::ops::{Add, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{dot, Matrix, SubspaceBasis};
use crate::report::Report;

/// Rejection budget for [`random_symmetrizing_trace`].
pub const TRACE_SAMPLE_ATTEMPTS: usize = 100;

/// Coordinates of an algebra element in the distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Element { coeffs: vec![field.zero(); dim] }
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Self {
        let mut e = Self::zero(field, dim);
        e.coeffs[i] = field.one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Element { coeffs: coeffs.iter().map(|&c| field.from_i64(c)).collect() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Element) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// Human-readable linear combination such as `1 + s1 - s1s2`.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> ElementDisplay<'a> {
        ElementDisplay { element: self, labels }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a Element,
    labels: &'a [String],
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.element.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.symmetric_repr();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let label = &self.labels[i];
            if mag == "1" {
                write!(f, "{sep}{label}")?;
            } else {
                write!(f, "{sep}{mag}*{label}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

/// One entry `r_ijk` of `a_i a_j = Σ_k r_ijk a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

/// A finite-dimensional algebra over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    field: FieldSpec,
    labels: Vec<String>,
    /// `table[i * n + j]` is the sparse expansion of `a_i a_j`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Element,
}

impl AlgebraDescriptor {
    /// Duplicate `(i, j, k)` entries are summed; zero entries are dropped.
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        constants: impl IntoIterator<Item = StructureConstant>,
        unit: Element,
    ) -> Result<Self> {
        let n = labels.len();
        if unit.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: unit.len() });
        }
        if let Some(bad) = unit.coeffs().iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        let mut dense: Vec<Vec<Scalar>> = vec![Vec::new(); n * n];
        for sc in constants {
            for idx in [sc.i, sc.j, sc.k] {
                if idx >= n {
                    return Err(Error::DimensionMismatch { expected: n, found: idx + 1 });
                }
            }
            if sc.value.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), sc.value.field().to_string()));
            }
            let slot = &mut dense[sc.i * n + sc.j];
            if slot.is_empty() {
                *slot = vec![field.zero(); n];
            }
            slot[sc.k] = &slot[sc.k] + &sc.value;
        }
        let table = dense
            .into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(AlgebraDescriptor { field, labels, table, unit })
    }

    /// Builds the table from a function giving `a_i a_j` in coordinates.
    pub fn from_products(
        field: FieldSpec,
        labels: Vec<String>,
        unit: Element,
        mut product: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        let n = labels.len();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = product(i, j);
                if p.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: p.len() });
                }
                for (k, v) in p.into_coeffs().into_iter().enumerate() {
                    if !v.is_zero() {
                        constants.push(StructureConstant { i, j, k, value: v });
                    }
                }
            }
        }
        Self::new(field, labels, constants, unit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    /// Sparse expansion of `a_i a_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, v)| v.clone())
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.basis_product(i, j) {
                    out.push(StructureConstant { i, j, k: *k, value: v.clone() });
                }
            }
        }
        out
    }

    /// Product of two elements; panics on a length mismatch.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.dim();
        assert!(a.len() == n && b.len() == n, "element length");
        let mut out = vec![self.field.zero(); n];
        for i in a.support() {
            let x = a.coeff(i);
            for j in b.support() {
                let xy = x * b.coeff(j);
                for (k, r) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&xy * r);
                }
            }
        }
        Element::from_coeffs(out)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        for e in [a, b] {
            if e.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: e.len() });
            }
            if let Some(bad) = e.coeffs().iter().find(|c| c.field() != self.field) {
                return Err(Error::FieldMismatch(self.field.to_string(), bad.field().to_string()));
            }
        }
        Ok(self.mul(a, b))
    }

    /// Product of a sequence of elements, left to right.
    pub fn mul_all(&self, factors: &[&Element]) -> Element {
        let mut it = factors.iter();
        let first = (*it.next().expect("at least one factor")).clone();
        it.fold(first, |acc, f| self.mul(&acc, f))
    }

    /// Rewrites the algebra in a new basis whose elements are the rows of
    /// `rows` (in current coordinates). Returns the rebased algebra and the
    /// matrix converting current coordinates into new ones (`new = Q · old`).
    pub fn change_basis(&self, rows: &Matrix, labels: Vec<String>) -> Result<(AlgebraDescriptor, Matrix)> {
        let n = self.dim();
        if rows.rows() != n || rows.cols() != n || labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rows.rows() });
        }
        let to_new = rows.transpose().invert()?;
        let new_basis: Vec<Element> = (0..n).map(|i| Element::from_coeffs(rows.row(i).to_vec())).collect();
        let unit = Element::from_coeffs(to_new.mul_vec(self.unit.coeffs()));
        let alg = AlgebraDescriptor::from_products(self.field, labels, unit, |i, j| {
            let p = self.mul(&new_basis[i], &new_basis[j]);
            Element::from_coeffs(to_new.mul_vec(p.coeffs()))
        })?;
        Ok((alg, to_new))
    }
}

/// Checks associativity of the structure constants and the two-sided unit.
pub fn validate_algebra(alg: &AlgebraDescriptor) -> Report {
    let mut report = Report::new("algebra");
    let n = alg.dim();
    let basis: Vec<Element> = (0..n).map(|i| alg.basis_element(i)).collect();
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = alg.mul(&basis[i], &basis[j]);
            for k in 0..n {
                let lhs = alg.mul(&ij, &basis[k]);
                let rhs = alg.mul(&basis[i], &alg.mul(&basis[j], &basis[k]));
                let ok = report.check("associativity", lhs == rhs, || {
                    let l = (0..n).find(|&l| lhs.coeff(l) != rhs.coeff(l)).unwrap_or(0);
                    format!("(i,j,k,l)=({i},{j},{k},{l})")
                });
                if !ok {
                    break 'assoc;
                }
            }
        }
    }
    for (i, b) in basis.iter().enumerate() {
        report.check("left unit", alg.mul(alg.unit(), b) == *b, || format!("i={i}"));
        report.check("right unit", alg.mul(b, alg.unit()) == *b, || format!("i={i}"));
    }
    report
}

/// A linear functional `τ` with its cached pairing matrix `τ(a_i a_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    tau: Vec<Scalar>,
    gram: Matrix,
}

impl TraceForm {
    pub fn new(alg: &AlgebraDescriptor, tau: Vec<Scalar>) -> Result<Self> {
        let n = alg.dim();
        if tau.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: tau.len() });
        }
        if let Some(bad) = tau.iter().find(|c| c.field() != alg.field()) {
            return Err(Error::FieldMismatch(alg.field().to_string(), bad.field().to_string()));
        }
        let mut gram = Matrix::zeros(alg.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                let mut v = alg.field().zero();
                for (k, r) in alg.basis_product(i, j) {
                    v = &v + &(r * &tau[*k]);
                }
                gram.set(i, j, v);
            }
        }
        Ok(TraceForm { tau, gram })
    }

    /// `τ(x) = x_k` for a fixed basis index `k`.
    pub fn coefficient_of(alg: &AlgebraDescriptor, k: usize) -> Result<Self> {
        let mut tau = vec![alg.field().zero(); alg.dim()];
        tau[k] = alg.field().one();
        Self::new(alg, tau)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.tau
    }

    /// The matrix `(τ(a_i a_j))`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &Element) -> Scalar {
        dot(&self.tau, x.coeffs(), self.gram.field())
    }

    /// `τ(x y)` without forming the product.
    pub fn pair(&self, x: &Element, y: &Element) -> Scalar {
        dot(x.coeffs(), &self.gram.mul_vec(y.coeffs()), self.gram.field())
    }

    /// The same functional in new coordinates, given the rebased algebra and
    /// the rows of the new basis in old coordinates.
    pub fn rebase(&self, new_alg: &AlgebraDescriptor, rows: &Matrix) -> Result<TraceForm> {
        TraceForm::new(new_alg, rows.mul_vec(&self.tau))
    }
}

/// Symmetry `τ(a_i a_j) = τ(a_j a_i)` on all basis pairs and non-degeneracy.
pub fn validate_symmetrizing_trace(alg: &AlgebraDescriptor, tau: &TraceForm) -> Report {
    let mut report = Report::new("symmetrizing trace");
    let g = tau.gram();
    let n = alg.dim();
    'sym: for i in 0..n {
        for j in i + 1..n {
            if !report.check("symmetry", g.get(i, j) == g.get(j, i), || format!("(i,j)=({i},{j})")) {
                break 'sym;
            }
        }
    }
    let rank = g.rank();
    report.check("non-degeneracy", rank == n, || format!("rank {rank} < {n}"));
    report
}

/// `D_j` with `τ(D_j a_i) = δ_ij`, index-aligned with the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub elements: Vec<Element>,
}

impl DualBasis {
    /// Rows are the dual elements in basis coordinates.
    pub fn as_matrix(&self, field: FieldSpec) -> Matrix {
        let n = self.elements.len();
        let rows: Vec<Vec<Scalar>> = self.elements.iter().map(|e| e.coeffs().to_vec()).collect();
        Matrix::from_rows(field, n, &rows).expect("square")
    }
}

pub fn dual_basis(alg: &AlgebraDescriptor, tau: &TraceForm) -> Result<DualBasis> {
    let n = alg.dim();
    let inv = tau.gram().invert().map_err(|_| Error::SingularTrace)?;
    let elements: Vec<Element> = (0..n).map(|j| Element::from_coeffs(inv.row(j).to_vec())).collect();
    for (j, d) in elements.iter().enumerate() {
        for i in 0..n {
            let v = tau.eval(&alg.mul(d, &alg.basis_element(i)));
            let want = if i == j { v.is_one() } else { v.is_zero() };
            if !want {
                return Err(Error::InconsistentDatum(format!("τ(D_{j} a_{i}) = {v}")));
            }
        }
    }
    Ok(DualBasis { elements })
}

/// `a_i D_j = Σ_k r_kij D_k` and `D_i a_j = Σ_k r_jki D_k` for all `(i, j)`.
pub fn verify_dual_multiplication(alg: &AlgebraDescriptor, dual: &DualBasis) -> Report {
    let mut report = Report::new("dual multiplication");
    let n = alg.dim();
    let field = alg.field();
    let d = &dual.elements;
    for i in 0..n {
        let ai = alg.basis_element(i);
        for j in 0..n {
            let aj = alg.basis_element(j);
            let mut left = Element::zero(field, n);
            let mut right = Element::zero(field, n);
            for k in 0..n {
                left.add_scaled(&alg.constant(k, i, j), &d[k]);
                right.add_scaled(&alg.constant(j, k, i), &d[k]);
            }
            report.check("a_i D_j", alg.mul(&ai, &d[j]) == left, || format!("(i,j)=({i},{j})"));
            report.check("D_i a_j", alg.mul(&d[i], &aj) == right, || format!("(i,j)=({i},{j})"));
        }
    }
    report
}

/// Coefficients `τ(a_j D'_i)` expressing the `τ'`-dual basis in the `τ`-dual
/// basis; fails if the expansion does not reproduce `D'`.
pub fn change_of_trace_expand(alg: &AlgebraDescriptor, tau: &TraceForm, tau2: &TraceForm) -> Result<Matrix> {
    let n = alg.dim();
    let field = alg.field();
    let d = dual_basis(alg, tau)?;
    let d2 = dual_basis(alg, tau2)?;
    let mut coeffs = Matrix::zeros(field, n, n);
    for i in 0..n {
        let mut expansion = Element::zero(field, n);
        for j in 0..n {
            let c = tau.eval(&alg.mul(&alg.basis_element(j), &d2.elements[i]));
            expansion.add_scaled(&c, &d.elements[j]);
            coeffs.set(i, j, c);
        }
        if expansion != d2.elements[i] {
            return Err(Error::InconsistentDatum(format!("change-of-trace expansion fails for D'_{i}")));
        }
    }
    Ok(coeffs)
}

/// The space of functionals with `τ(ab) = τ(ba)`, as a subspace of `K^n`.
pub fn symmetric_functionals(alg: &AlgebraDescriptor) -> SubspaceBasis {
    let n = alg.dim();
    let field = alg.field();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![field.zero(); n];
            for (k, r) in alg.basis_product(i, j) {
                row[*k] = &row[*k] + r;
            }
            for (k, r) in alg.basis_product(j, i) {
                row[*k] = &row[*k] - r;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(field, n, &rows).expect("row length n").kernel()
}

/// Samples a non-degenerate symmetrizing trace, deterministic in `seed`.
pub fn random_symmetrizing_trace(alg: &AlgebraDescriptor, seed: u64) -> Result<TraceForm> {
    let space = symmetric_functionals(alg);
    let field = alg.field();
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if space.is_zero() && n > 0 {
        return Err(Error::NoSymmetrizingTrace { attempts: 0 });
    }
    for _ in 0..TRACE_SAMPLE_ATTEMPTS {
        let coeffs: Vec<Scalar> = (0..space.dim()).map(|_| field.from_i64(rng.random_range(-4..=4))).collect();
        let tau = space.basis().vec_mul(&coeffs);
        let form = TraceForm::new(alg, tau)?;
        if form.gram().rank() == n {
            return Ok(form);
        }
    }
    Err(Error::NoSymmetrizingTrace { attempts: TRACE_SAMPLE_ATTEMPTS })
}
