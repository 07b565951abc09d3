//! Cell data, cellularity checks, cell modules, the forms `Φ_λ` and their
//! Gram matrices, and the stratification of the poset.
//!
//! A [`CellularAlgebra`] rewrites the algebra in its cellular basis, so that
//! the filtration submodule `A(<λ)` is a coordinate subspace and "mod A(<λ)"
//! is just zeroing the coordinates of lower cells.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::report::Report;

/// A finite poset given by strict relations `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPoset {
    labels: Vec<String>,
    relations: Vec<(usize, usize)>,
    /// `closure[a * m + b]` iff `a < b`.
    closure: Vec<bool>,
}

impl CellPoset {
    pub fn new(labels: Vec<String>, relations: Vec<(usize, usize)>) -> Result<Self> {
        let m = labels.len();
        let mut closure = vec![false; m * m];
        for &(a, b) in &relations {
            if a >= m || b >= m {
                return Err(Error::InvalidDatum(format!("relation ({a}, {b}) out of range")));
            }
            closure[a * m + b] = true;
        }
        // Warshall
        for k in 0..m {
            for i in 0..m {
                if !closure[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if closure[k * m + j] {
                        closure[i * m + j] = true;
                    }
                }
            }
        }
        if let Some(i) = (0..m).find(|&i| closure[i * m + i]) {
            return Err(Error::InvalidDatum(format!("poset relations contain a cycle through `{}`", labels[i])));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidDatum(format!("cells {j} and {i} share the label `{l}`")));
            }
        }
        Ok(CellPoset { labels, relations, closure })
    }

    /// A chain `labels[0] < labels[1] < ...`.
    pub fn chain(labels: Vec<String>) -> Self {
        let relations = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, relations).expect("a chain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, lambda: usize) -> &str {
        &self.labels[lambda]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.closure[a * self.len() + b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn opposite(&self) -> CellPoset {
        let relations = self.relations.iter().map(|&(a, b)| (b, a)).collect();
        CellPoset::new(self.labels.clone(), relations).expect("opposite of a poset is a poset")
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(b, a))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(a, b))).collect()
    }
}

/// `(λ, S, T)` with 0-based `S, T ∈ M(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellIndex {
    pub lambda: usize,
    pub s: usize,
    pub t: usize,
}

impl CellIndex {
    pub fn new(lambda: usize, s: usize, t: usize) -> Self {
        CellIndex { lambda, s, t }
    }
}

/// `(Λ, M, C, i)`: poset, index set sizes, the labeled cellular basis, and the
/// anti-involution.
///
/// `labeling[k]` names the k-th cellular basis element. When `cell_basis` is
/// `None` the cellular basis is the algebra's own basis; otherwise row `k`
/// holds `C_k` in algebra coordinates. Row `j` of `involution` is `i(a_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDatum {
    pub poset: CellPoset,
    pub m_sizes: Vec<usize>,
    pub labeling: Vec<CellIndex>,
    pub involution: Matrix,
    pub cell_basis: Option<Matrix>,
}

impl CellDatum {
    /// The datum with `M(λ)` reordered: new index `S` is old index `perm[S]`.
    pub fn permute_indices(&self, lambda: usize, perm: &[usize]) -> CellDatum {
        assert_eq!(perm.len(), self.m_sizes[lambda]);
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut out = self.clone();
        for c in out.labeling.iter_mut().filter(|c| c.lambda == lambda) {
            c.s = inverse[c.s];
            c.t = inverse[c.t];
        }
        out
    }
}

/// An algebra rewritten in a validated-shape cellular basis.
#[derive(Clone, Debug)]
pub struct CellularAlgebra {
    algebra: AlgebraDescriptor,
    poset: CellPoset,
    m_sizes: Vec<usize>,
    labeling: Vec<CellIndex>,
    /// `positions[λ][S * n_λ + T]`.
    positions: Vec<Vec<usize>>,
    involution: Matrix,
    to_ambient: Matrix,
    from_ambient: Matrix,
    ambient_labels: Vec<String>,
}

fn structural_checks(alg: &AlgebraDescriptor, cd: &CellDatum) -> Result<Vec<Vec<usize>>> {
    let n = alg.dim();
    let bad = |m: String| Err(Error::InvalidDatum(m));
    if cd.m_sizes.len() != cd.poset.len() {
        return bad(format!("{} index-set sizes for {} cells", cd.m_sizes.len(), cd.poset.len()));
    }
    if let Some(l) = cd.m_sizes.iter().position(|&s| s == 0) {
        return bad(format!("M({}) is empty", cd.poset.label(l)));
    }
    let total: usize = cd.m_sizes.iter().map(|s| s * s).sum();
    if total != n {
        return bad(format!("Σ n_λ² = {total} but the algebra has dimension {n}"));
    }
    if cd.labeling.len() != n {
        return bad(format!("{} labels for dimension {n}", cd.labeling.len()));
    }
    let mut positions: Vec<Vec<Option<usize>>> =
        cd.m_sizes.iter().map(|&s| vec![None; s * s]).collect();
    for (k, c) in cd.labeling.iter().enumerate() {
        let Some(&size) = cd.m_sizes.get(c.lambda) else {
            return bad(format!("label {k} names cell {} out of range", c.lambda));
        };
        if c.s >= size || c.t >= size {
            return bad(format!("label {k} has index ({}, {}) outside M({})", c.s, c.t, cd.poset.label(c.lambda)));
        }
        let slot = &mut positions[c.lambda][c.s * size + c.t];
        if let Some(prev) = slot {
            return bad(format!("labels {prev} and {k} both name ({}, {}, {})", c.lambda, c.s, c.t));
        }
        *slot = Some(k);
    }
    if cd.involution.rows() != n || cd.involution.cols() != n {
        return bad("involution matrix has the wrong shape".into());
    }
    if cd.involution.field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field().to_string(), cd.involution.field().to_string()));
    }
    if let Some(b) = &cd.cell_basis {
        if b.rows() != n || b.cols() != n {
            return bad("cell basis matrix has the wrong shape".into());
        }
        if b.field() != alg.field() {
            return Err(Error::FieldMismatch(alg.field().to_string(), b.field().to_string()));
        }
        if b.rank() != n {
            return bad("cell basis elements are linearly dependent".into());
        }
    }
    Ok(positions
        .into_iter()
        .map(|v| v.into_iter().map(|p| p.expect("bijective labeling")).collect())
        .collect())
}

impl CellularAlgebra {
    /// Checks the shape of the datum (labeling bijective, sizes consistent,
    /// cellular basis invertible) and rebases the algebra.
    pub fn new(alg: &AlgebraDescriptor, cd: &CellDatum) -> Result<Self> {
        let positions = structural_checks(alg, cd)?;
        let n = alg.dim();
        let field = alg.field();
        let labels: Vec<String> = cd
            .labeling
            .iter()
            .map(|c| format!("C[{}]({},{})", cd.poset.label(c.lambda), c.s + 1, c.t + 1))
            .collect();
        let (algebra, to_ambient, from_ambient) = match &cd.cell_basis {
            None => {
                let a = AlgebraDescriptor::new(field, labels, alg.structure_constants(), alg.unit().clone())?;
                (a, Matrix::identity(field, n), Matrix::identity(field, n))
            }
            Some(rows) => {
                let (a, q) = alg.change_basis(rows, labels)?;
                (a, rows.clone(), q)
            }
        };
        // row k of the involution in cell coordinates: Q · i(C_k)
        let mut inv_rows = Vec::with_capacity(n);
        for k in 0..n {
            let ck = to_ambient.row(k);
            let image = cd.involution.vec_mul(ck);
            inv_rows.push(from_ambient.mul_vec(&image));
        }
        let involution = Matrix::from_rows(field, n, &inv_rows)?;
        Ok(CellularAlgebra {
            algebra,
            poset: cd.poset.clone(),
            m_sizes: cd.m_sizes.clone(),
            labeling: cd.labeling.clone(),
            positions,
            involution,
            to_ambient,
            from_ambient,
            ambient_labels: alg.labels().to_vec(),
        })
    }

    /// The algebra in cellular coordinates.
    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn poset(&self) -> &CellPoset {
        &self.poset
    }

    pub fn num_cells(&self) -> usize {
        self.poset.len()
    }

    pub fn n_lambda(&self, lambda: usize) -> usize {
        self.m_sizes[lambda]
    }

    pub fn m_sizes(&self) -> &[usize] {
        &self.m_sizes
    }

    pub fn label(&self, lambda: usize) -> &str {
        self.poset.label(lambda)
    }

    pub fn index(&self, pos: usize) -> CellIndex {
        self.labeling[pos]
    }

    pub fn labeling(&self) -> &[CellIndex] {
        &self.labeling
    }

    /// Basis position of `C^λ_{S,T}`.
    pub fn pos(&self, lambda: usize, s: usize, t: usize) -> usize {
        self.positions[lambda][s * self.m_sizes[lambda] + t]
    }

    pub fn basis(&self, lambda: usize, s: usize, t: usize) -> Element {
        self.algebra.basis_element(self.pos(lambda, s, t))
    }

    /// Involution matrix in cellular coordinates (row `k` is `i(C_k)`).
    pub fn involution(&self) -> &Matrix {
        &self.involution
    }

    pub fn apply_involution(&self, x: &Element) -> Element {
        Element::from_coeffs(self.involution.vec_mul(x.coeffs()))
    }

    /// Rows are the cellular basis in the original coordinates.
    pub fn to_ambient_matrix(&self) -> &Matrix {
        &self.to_ambient
    }

    pub fn to_ambient(&self, x: &Element) -> Element {
        Element::from_coeffs(self.to_ambient.vec_mul(x.coeffs()))
    }

    pub fn from_ambient(&self, x: &Element) -> Element {
        Element::from_coeffs(self.from_ambient.mul_vec(x.coeffs()))
    }

    /// Labels of the original basis.
    pub fn ambient_labels(&self) -> &[String] {
        &self.ambient_labels
    }

    /// Zeroes the coordinates of every cell strictly below `lambda`.
    pub fn reduce_below(&self, x: &Element, lambda: usize) -> Element {
        self.reduce_where(x, |mu| self.poset.lt(mu, lambda))
    }

    /// Zeroes the coordinates of every cell strictly above `lambda`.
    pub fn reduce_above(&self, x: &Element, lambda: usize) -> Element {
        self.reduce_where(x, |mu| self.poset.lt(lambda, mu))
    }

    fn reduce_where(&self, x: &Element, drop: impl Fn(usize) -> bool) -> Element {
        let zero = self.field().zero();
        Element::from_coeffs(
            x.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if drop(self.labeling[k].lambda) { zero.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Cells with a nonzero coordinate in `x`.
    pub fn cell_support(&self, x: &Element) -> Vec<usize> {
        let mut cells: Vec<usize> = x.support().map(|k| self.labeling[k].lambda).collect();
        cells.sort_unstable();
        cells.dedup();
        cells
    }

    /// Span of the cellular basis elements of one cell.
    pub fn cell_span(&self, lambda: usize) -> SubspaceBasis {
        let n = self.dim();
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .filter(|&k| self.labeling[k].lambda == lambda)
            .map(|k| self.algebra.basis_element(k).into_coeffs())
            .collect();
        SubspaceBasis::from_spanning(self.field(), n, &vectors).expect("ambient length")
    }

    fn describe(&self, c: CellIndex) -> String {
        format!("(λ={}, S={}, T={})", self.label(c.lambda), c.s + 1, c.t + 1)
    }
}

/// Runs every cellularity check and reports failures with witnesses.
pub fn validate_cell_datum(alg: &AlgebraDescriptor, cd: &CellDatum) -> Report {
    match CellularAlgebra::new(alg, cd) {
        Ok(ca) => validate_cellular(&ca),
        Err(e) => {
            let mut report = Report::new("cell datum");
            report.fail("C1", e.to_string());
            report
        }
    }
}

/// (C2) and (C3) on an already rebased algebra, plus the maximal-cell check
/// on the forms `Φ_λ`.
pub fn validate_cellular(ca: &CellularAlgebra) -> Report {
    let mut report = Report::new("cell datum");
    let n = ca.dim();
    let alg = ca.algebra();
    let inv = ca.involution();

    let squared = inv.mul(inv).expect("square");
    let bad_row = (0..n).find(|&r| (0..n).any(|c| squared.get(r, c) != Matrix::identity(ca.field(), n).get(r, c)));
    report.check("C2 involution squares to identity", bad_row.is_none(), || {
        format!("i(i(b_{})) differs", bad_row.unwrap_or(0))
    });

    'anti: for p in 0..n {
        for q in 0..n {
            let lhs = ca.apply_involution(&alg.mul(&alg.basis_element(p), &alg.basis_element(q)));
            let rhs = alg.mul(&ca.apply_involution(&alg.basis_element(q)), &ca.apply_involution(&alg.basis_element(p)));
            if !report.check("C2 anti-automorphism", lhs == rhs, || {
                format!("i(b_{p} b_{q}) != i(b_{q}) i(b_{p}), b = {}, {}", ca.describe(ca.index(p)), ca.describe(ca.index(q)))
            }) {
                break 'anti;
            }
        }
    }

    for lambda in 0..ca.num_cells() {
        let m = ca.n_lambda(lambda);
        for s in 0..m {
            for t in 0..m {
                let image = ca.reduce_below(&ca.apply_involution(&ca.basis(lambda, s, t)), lambda);
                report.check("C2 i(C_ST) ≡ C_TS mod A(<λ)", image == ca.basis(lambda, t, s), || {
                    ca.describe(CellIndex::new(lambda, s, t))
                });
            }
        }
    }

    // (C3): a·C_{S,T} ≡ Σ r_a(S',S) C_{S',T}, coefficients independent of T
    for lambda in 0..ca.num_cells() {
        let m = ca.n_lambda(lambda);
        for s in 0..m {
            let mut reference: Vec<Option<Vec<Scalar>>> = vec![None; n];
            for t in 0..m {
                for (a, slot) in reference.iter_mut().enumerate() {
                    let here = CellIndex::new(lambda, s, t);
                    match c3_coefficients(ca, a, here) {
                        Err(k) => report.fail(
                            "C3 product leaves the cell",
                            format!("a=b_{a}, {}: component on {}", ca.describe(here), ca.describe(ca.index(k))),
                        ),
                        Ok(coeffs) => match slot {
                            None => {
                                report.checked += 1;
                                *slot = Some(coeffs);
                            }
                            Some(prev) => {
                                report.check("C3 coefficients independent of T", *prev == coeffs, || {
                                    format!("a=b_{a}, {}", ca.describe(here))
                                });
                            }
                        },
                    }
                }
            }
        }
    }

    for lambda in ca.poset().maximal() {
        match phi_form(ca, lambda) {
            Ok(g) if g.phi_nonzero() => {
                report.check("maximal cell has zero radical", g.dim_rad() == 0, || {
                    format!("λ={} has dim rad λ = {}", ca.label(lambda), g.dim_rad())
                });
            }
            Ok(_) => report.note(format!("maximal cell {} has Φ_λ = 0", ca.label(lambda))),
            Err(_) => {} // reported through C3 above
        }
    }
    report
}

/// Coefficients `r_a(S', S)` for `S' ∈ M(λ)` from the product `b_a · C_{S,T}`
/// reduced mod `A(<λ)`; `Err(k)` names a basis position outside the allowed
/// span.
fn c3_coefficients(ca: &CellularAlgebra, a: usize, at: CellIndex) -> std::result::Result<Vec<Scalar>, usize> {
    let field = ca.field();
    let lambda = at.lambda;
    let mut coeffs = vec![field.zero(); ca.n_lambda(lambda)];
    for (k, v) in ca.algebra().basis_product(a, ca.pos(lambda, at.s, at.t)) {
        let c = ca.index(*k);
        if ca.poset().lt(c.lambda, lambda) {
            continue;
        }
        if c.lambda != lambda || c.t != at.t {
            return Err(*k);
        }
        coeffs[c.s] = v.clone();
    }
    Ok(coeffs)
}

/// The left module `W(λ)`: matrix `(r_a(S', S))` for each basis element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModuleAction {
    pub lambda: usize,
    pub matrices: Vec<Matrix>,
}

impl CellModuleAction {
    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, Matrix::rows)
    }

    /// Action of an arbitrary element (linear in the element).
    pub fn act(&self, x: &Element) -> Matrix {
        linear_action(&self.matrices, x, self.dim())
    }
}

fn linear_action(matrices: &[Matrix], x: &Element, dim: usize) -> Matrix {
    let field = x.coeffs().first().map_or(FieldSpec::RATIONALS, Scalar::field);
    let mut acc = Matrix::zeros(field, dim, dim);
    for k in x.support() {
        acc = acc.add(&matrices[k].scale(x.coeff(k))).expect("same shape");
    }
    acc
}

fn check_representation(alg: &AlgebraDescriptor, matrices: &[Matrix], dim: usize) -> std::result::Result<(), (usize, usize)> {
    let n = alg.dim();
    for a in 0..n {
        for b in 0..n {
            let lhs = matrices[a].mul(&matrices[b]).expect("square");
            let prod = alg.mul(&alg.basis_element(a), &alg.basis_element(b));
            if lhs != linear_action(matrices, &prod, dim) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

pub fn cell_module(ca: &CellularAlgebra, lambda: usize) -> Result<CellModuleAction> {
    let m = ca.n_lambda(lambda);
    let field = ca.field();
    let mut matrices = Vec::with_capacity(ca.dim());
    for a in 0..ca.dim() {
        let mut mat = Matrix::zeros(field, m, m);
        for s in 0..m {
            let first = c3_coefficients(ca, a, CellIndex::new(lambda, s, 0))
                .map_err(|k| Error::NotCellular(format!("b_{a}·C{:?} has a component on b_{k}", (lambda, s, 0))))?;
            for t in 1..m {
                let other = c3_coefficients(ca, a, CellIndex::new(lambda, s, t)).ok();
                if other.as_ref() != Some(&first) {
                    return Err(Error::NotCellular(format!(
                        "coefficients of b_{a}·C^{}_{{{},{}}} depend on T",
                        ca.label(lambda),
                        s + 1,
                        t + 1
                    )));
                }
            }
            for (s2, v) in first.into_iter().enumerate() {
                mat.set(s2, s, v);
            }
        }
        matrices.push(mat);
    }
    check_representation(ca.algebra(), &matrices, m).map_err(|(a, b)| {
        Error::NotCellular(format!("cell module {} is not a representation at (b_{a}, b_{b})", ca.label(lambda)))
    })?;
    Ok(CellModuleAction { lambda, matrices })
}

/// `Φ_λ`, its Gram matrix in `M(λ)` order, rank and `rad λ = ker G(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramData {
    pub lambda: usize,
    pub phi: Matrix,
    pub rank: usize,
    pub rad: SubspaceBasis,
}

impl GramData {
    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi_nonzero(&self) -> bool {
        !self.phi.is_zero()
    }

    pub fn dim_rad(&self) -> usize {
        self.rad.dim()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.n()
    }
}

/// Extracts `Φ(T, U)` from `C_{S,T} C_{U,V} ≡ Φ(T,U) C_{S,V} mod A(<λ)`,
/// checking every probe pair `(S, V)`.
pub fn phi_form(ca: &CellularAlgebra, lambda: usize) -> Result<GramData> {
    let m = ca.n_lambda(lambda);
    let field = ca.field();
    let alg = ca.algebra();
    let mut phi = Matrix::zeros(field, m, m);
    for t in 0..m {
        for u in 0..m {
            let mut value: Option<Scalar> = None;
            for s in 0..m {
                for v in 0..m {
                    let target = ca.pos(lambda, s, v);
                    let mut coeff = field.zero();
                    for (k, c) in alg.basis_product(ca.pos(lambda, s, t), ca.pos(lambda, u, v)) {
                        if ca.poset().lt(ca.index(*k).lambda, lambda) {
                            continue;
                        }
                        if *k != target {
                            return Err(Error::NotCellular(format!(
                                "C^{l}_{{{},{}}} C^{l}_{{{},{}}} has a component on {} outside A(<λ) + K·C_{{S,V}}",
                                s + 1,
                                t + 1,
                                u + 1,
                                v + 1,
                                ca.describe(ca.index(*k)),
                                l = ca.label(lambda)
                            )));
                        }
                        coeff = c.clone();
                    }
                    match &value {
                        None => value = Some(coeff),
                        Some(prev) if *prev != coeff => {
                            return Err(Error::NotCellular(format!(
                                "Φ_{}({}, {}) depends on the probe pair (S,V) = ({}, {})",
                                ca.label(lambda),
                                t + 1,
                                u + 1,
                                s + 1,
                                v + 1
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            phi.set(t, u, value.expect("M(λ) nonempty"));
        }
    }
    if !phi.is_symmetric() {
        return Err(Error::NotCellular(format!("Gram matrix of {} is not symmetric", ca.label(lambda))));
    }
    let rank = phi.rank();
    let rad = phi.kernel();
    Ok(GramData { lambda, phi, rank, rad })
}

pub fn all_phi_forms(ca: &CellularAlgebra) -> Result<Vec<GramData>> {
    (0..ca.num_cells()).map(|l| phi_form(ca, l)).collect()
}

pub fn all_cell_modules(ca: &CellularAlgebra) -> Result<Vec<CellModuleAction>> {
    (0..ca.num_cells()).map(|l| cell_module(ca, l)).collect()
}

/// One row of the per-cell table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    pub lambda: usize,
    pub label: String,
    pub n: usize,
    pub rank: usize,
    pub dim_rad: usize,
    /// `dim L_λ`, present for `λ ∈ Λ₀`.
    pub dim_simple: Option<usize>,
}

/// `Λ₀ = {Φ_λ ≠ 0}`, `Λ₁ = {rad λ = 0}`, `Λ₂ = Λ₀ − Λ₁`, `Λ₃ = Λ − Λ₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub lambda0: Vec<usize>,
    pub lambda1: Vec<usize>,
    pub lambda2: Vec<usize>,
    pub lambda3: Vec<usize>,
    pub rows: Vec<StratumRow>,
}

pub fn classify_strata(ca: &CellularAlgebra, grams: &[GramData]) -> Stratification {
    let mut s = Stratification {
        lambda0: vec![],
        lambda1: vec![],
        lambda2: vec![],
        lambda3: vec![],
        rows: vec![],
    };
    for g in grams {
        let l = g.lambda;
        let in0 = g.phi_nonzero();
        let in1 = g.dim_rad() == 0;
        if in0 {
            s.lambda0.push(l);
        } else {
            s.lambda3.push(l);
        }
        if in1 {
            s.lambda1.push(l);
        }
        if in0 && !in1 {
            s.lambda2.push(l);
        }
        s.rows.push(StratumRow {
            lambda: l,
            label: ca.label(l).to_string(),
            n: g.n(),
            rank: g.rank,
            dim_rad: g.dim_rad(),
            dim_simple: in0.then_some(g.rank),
        });
    }
    s
}

/// The action on `L_λ = W(λ)/rad λ`, with coset representatives the standard
/// vectors at the non-pivot columns of the echelonized radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleModuleAction {
    pub lambda: usize,
    pub dim: usize,
    pub representatives: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

impl SimpleModuleAction {
    pub fn act(&self, x: &Element) -> Matrix {
        linear_action(&self.matrices, x, self.dim)
    }
}

pub fn simple_module_action(
    ca: &CellularAlgebra,
    module: &CellModuleAction,
    gram: &GramData,
) -> Result<SimpleModuleAction> {
    if !gram.phi_nonzero() {
        return Err(Error::PhiZero(ca.label(gram.lambda).to_string()));
    }
    let m = gram.n();
    let pivots = gram.rad.pivots();
    let reps: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let d = reps.len();
    let field = ca.field();
    let mut matrices = Vec::with_capacity(ca.dim());
    for w in &module.matrices {
        let mut q = Matrix::zeros(field, d, d);
        for (j, &col) in reps.iter().enumerate() {
            let image = gram.rad.reduce(&w.column(col));
            for (i, &row) in reps.iter().enumerate() {
                q.set(i, j, image[row].clone());
            }
        }
        matrices.push(q);
    }
    check_representation(ca.algebra(), &matrices, d).map_err(|(a, b)| {
        Error::InconsistentDatum(format!(
            "quotient W({})/rad is not a representation at (b_{a}, b_{b})",
            ca.label(gram.lambda)
        ))
    })?;
    Ok(SimpleModuleAction { lambda: gram.lambda, dim: d, representatives: reps, matrices })
}

/// Every `G(λ)` nonsingular.
pub fn semisimple_by_nondegeneracy(grams: &[GramData]) -> bool {
    grams.iter().all(GramData::is_nondegenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    /// K[x]/(x²) with C^low = x, C^top = 1 (basis order 1, x).
    fn dual_numbers(field: FieldSpec) -> (AlgebraDescriptor, CellDatum) {
        let e = |i| Element::basis(field, 2, i);
        let alg = AlgebraDescriptor::from_products(field, vec!["1".into(), "x".into()], e(0), |i, j| match (i, j) {
            (0, k) | (k, 0) => e(k),
            _ => Element::zero(field, 2),
        })
        .unwrap();
        let cd = CellDatum {
            poset: CellPoset::chain(vec!["low".into(), "top".into()]),
            m_sizes: vec![1, 1],
            labeling: vec![CellIndex::new(1, 0, 0), CellIndex::new(0, 0, 0)],
            involution: Matrix::identity(field, 2),
            cell_basis: None,
        };
        (alg, cd)
    }

    #[test]
    fn poset_closure_and_cycles() {
        let p = CellPoset::new(vec!["a".into(), "b".into(), "c".into()], vec![(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert!(!p.lt(2, 0));
        assert_eq!(p.minimal(), vec![0]);
        assert_eq!(p.maximal(), vec![2]);
        assert!(p.opposite().lt(2, 0));
        let cyc = CellPoset::new(vec!["a".into(), "b".into()], vec![(0, 1), (1, 0)]);
        assert!(matches!(cyc, Err(Error::InvalidDatum(_))));
    }

    #[test]
    fn dual_numbers_cellular() {
        let (alg, cd) = dual_numbers(q());
        assert!(validate_algebra(&alg).passed());
        let report = validate_cell_datum(&alg, &cd);
        assert!(report.passed(), "{report}");
        let ca = CellularAlgebra::new(&alg, &cd).unwrap();
        let grams = all_phi_forms(&ca).unwrap();
        assert!(grams[0].phi.is_zero());
        assert!(grams[1].phi.is_identity());
        let strata = classify_strata(&ca, &grams);
        assert_eq!(strata.lambda3, vec![0]);
        assert_eq!(strata.lambda1, vec![1]);
        assert!(!semisimple_by_nondegeneracy(&grams));
    }

    #[test]
    fn non_bijective_labeling_fails_c1() {
        let (alg, mut cd) = dual_numbers(q());
        cd.labeling[1] = CellIndex::new(1, 0, 0);
        let report = validate_cell_datum(&alg, &cd);
        assert_eq!(report.failures[0].check, "C1");
    }

    #[test]
    fn reversed_order_fails_c3() {
        let (alg, mut cd) = dual_numbers(q());
        cd.poset = CellPoset::chain(vec!["low".into(), "top".into()]).opposite();
        let report = validate_cell_datum(&alg, &cd);
        assert!(report.failures.iter().any(|f| f.check.starts_with("C3")), "{report}");
    }

    #[test]
    fn unit_acts_as_identity() {
        let (alg, cd) = dual_numbers(q());
        let ca = CellularAlgebra::new(&alg, &cd).unwrap();
        for module in all_cell_modules(&ca).unwrap() {
            let unit = module.act(ca.algebra().unit());
            assert!(unit.is_identity());
        }
    }

    #[test]
    fn simple_of_phi_zero_cell_is_rejected() {
        let (alg, cd) = dual_numbers(q());
        let ca = CellularAlgebra::new(&alg, &cd).unwrap();
        let module = cell_module(&ca, 0).unwrap();
        let gram = phi_form(&ca, 0).unwrap();
        assert!(matches!(simple_module_action(&ca, &module, &gram), Err(Error::PhiZero(_))));
    }
}
