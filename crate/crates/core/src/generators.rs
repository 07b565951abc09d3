//! Built-in symmetric cellular algebras.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraDescriptor, Element, StructureConstant, TraceForm};
use crate::cell::{CellDatum, CellIndex, CellPoset};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Matrix;

/// An algebra with a cell datum and a symmetrizing trace, all in the
/// algebra's own coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub algebra: AlgebraDescriptor,
    pub datum: CellDatum,
    pub trace: TraceForm,
}

/// A parsed `--gen` argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    PaperS3,
    GroupS3,
    Matrix(usize),
    DualNumbers,
    DirectSum(Box<GeneratorSpec>, Box<GeneratorSpec>),
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("direct-sum:") {
            let (a, b) = rest
                .split_once('+')
                .ok_or_else(|| Error::UnknownGenerator(format!("`{s}`: expected direct-sum:<a>+<b>")))?;
            let right = if b.contains('+') { format!("direct-sum:{b}").parse()? } else { b.parse()? };
            return Ok(GeneratorSpec::DirectSum(Box::new(a.parse()?), Box::new(right)));
        }
        if let Some(n) = s.strip_prefix("matrix:") {
            let n: usize = n.parse().map_err(|_| Error::UnknownGenerator(format!("`{s}`: bad size")))?;
            if n == 0 {
                return Err(Error::UnknownGenerator(format!("`{s}`: size must be at least 1")));
            }
            return Ok(GeneratorSpec::Matrix(n));
        }
        match s {
            "paper-s3" => Ok(GeneratorSpec::PaperS3),
            "group-s3" => Ok(GeneratorSpec::GroupS3),
            "dual-numbers" => Ok(GeneratorSpec::DualNumbers),
            _ => Err(Error::UnknownGenerator(s.to_string())),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::PaperS3 => f.write_str("paper-s3"),
            GeneratorSpec::GroupS3 => f.write_str("group-s3"),
            GeneratorSpec::Matrix(n) => write!(f, "matrix:{n}"),
            GeneratorSpec::DualNumbers => f.write_str("dual-numbers"),
            GeneratorSpec::DirectSum(a, b) => write!(f, "direct-sum:{a}+{}", b.to_string().trim_start_matches("direct-sum:")),
        }
    }
}

impl GeneratorSpec {
    /// Field used when none is given: GF(3) for paper-s3, ℚ otherwise.
    pub fn default_field(&self) -> FieldSpec {
        match self {
            GeneratorSpec::PaperS3 => FieldSpec::prime(3).expect("3 is prime"),
            GeneratorSpec::DirectSum(a, _) => a.default_field(),
            _ => FieldSpec::rationals(),
        }
    }

    pub fn build(&self, field: FieldSpec) -> Result<Instance> {
        match self {
            GeneratorSpec::PaperS3 => gen_paper_s3(field),
            GeneratorSpec::GroupS3 => Ok(gen_group_s3(field)),
            GeneratorSpec::Matrix(n) => Ok(gen_matrix_algebra(*n, field)),
            GeneratorSpec::DualNumbers => Ok(gen_dual_numbers(field)),
            GeneratorSpec::DirectSum(a, b) => gen_direct_sum(&a.build(field)?, &b.build(field)?),
        }
    }
}

const S3_LABELS: [&str; 6] = ["1", "s1", "s2", "s1s2", "s2s1", "s1s2s1"];

/// Permutations of {0,1,2} in basis order; words compose right to left.
fn s3_elements() -> [[usize; 3]; 6] {
    let s1 = [1, 0, 2];
    let s2 = [0, 2, 1];
    let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let s1s2 = compose(s1, s2);
    let s2s1 = compose(s2, s1);
    [[0, 1, 2], s1, s2, s1s2, s2s1, compose(s1s2, s1)]
}

fn s3_algebra(field: FieldSpec) -> AlgebraDescriptor {
    let g = s3_elements();
    let index = |p: [usize; 3]| g.iter().position(|&q| q == p).expect("closed under composition");
    let labels = S3_LABELS.iter().map(|s| s.to_string()).collect();
    AlgebraDescriptor::from_products(field, labels, Element::basis(field, 6, 0), |i, j| {
        let (a, b) = (g[i], g[j]);
        Element::basis(field, 6, index([a[b[0]], a[b[1]], a[b[2]]]))
    })
    .expect("group table is well formed")
}

fn s3_inverse_matrix(field: FieldSpec) -> Matrix {
    let g = s3_elements();
    let mut m = Matrix::zeros(field, 6, 6);
    for (i, p) in g.iter().enumerate() {
        let mut inv = [0; 3];
        for (k, &v) in p.iter().enumerate() {
            inv[v] = k;
        }
        let j = g.iter().position(|&q| q == inv).expect("group");
        m.set(i, j, field.one());
    }
    m
}

/// The cellular basis of the worked example in basis coordinates, in
/// labeling order (3), (2,1)×4, (1³).
fn s3_cell_basis(field: FieldSpec) -> Matrix {
    Matrix::from_i64(
        field,
        &[
            &[1, 1, 1, 1, 1, 1],
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 1, 0, 1, 0],
            &[1, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0],
        ],
    )
}

fn s3_labeling() -> Vec<CellIndex> {
    vec![
        CellIndex::new(0, 0, 0),
        CellIndex::new(1, 0, 0),
        CellIndex::new(1, 0, 1),
        CellIndex::new(1, 1, 0),
        CellIndex::new(1, 1, 1),
        CellIndex::new(2, 0, 0),
    ]
}

/// The symmetric group algebra of degree 3 with the worked example's cellular
/// basis, over any field.
pub fn gen_group_s3(field: FieldSpec) -> Instance {
    let algebra = s3_algebra(field);
    let datum = CellDatum {
        poset: CellPoset::chain(vec!["(3)".into(), "(2,1)".into(), "(1^3)".into()]),
        m_sizes: vec![1, 2, 1],
        labeling: s3_labeling(),
        involution: s3_inverse_matrix(field),
        cell_basis: Some(s3_cell_basis(field)),
    };
    let trace = TraceForm::coefficient_of(&algebra, 0).expect("index in range");
    Instance { name: "group-s3".into(), algebra, datum, trace }
}

/// The worked example, restricted to GF(3) and the rational control.
pub fn gen_paper_s3(field: FieldSpec) -> Result<Instance> {
    if !(field.is_rationals() || field.modulus() == Some(3)) {
        return Err(Error::UnsupportedField { generator: "paper-s3".into(), field: field.to_string() });
    }
    let mut inst = gen_group_s3(field);
    inst.name = "paper-s3".into();
    Ok(inst)
}

/// The dual basis listed for the worked example, keyed by `(λ, U, V)` for
/// `D^λ_{U,V}`, in group-element coordinates.
pub fn paper_s3_expected_dual(field: FieldSpec) -> Vec<(CellIndex, Element)> {
    let e = |c: &[i64]| Element::from_i64(field, c);
    vec![
        (CellIndex::new(0, 0, 0), e(&[0, 0, -1, 1, 1, 0])),
        (CellIndex::new(1, 0, 0), e(&[0, 1, 1, -1, -1, 0])),
        (CellIndex::new(1, 1, 0), e(&[0, 0, 1, -1, 0, 0])),
        (CellIndex::new(1, 0, 1), e(&[0, 0, 1, 0, -1, 0])),
        (CellIndex::new(1, 1, 1), e(&[0, 0, 1, -1, -1, 1])),
        (CellIndex::new(2, 0, 0), e(&[1, -1, -1, 1, 1, -1])),
    ]
}

/// `M_n` on matrix units `E_{ST}` (basis position `S·n + T`).
pub fn gen_matrix_algebra(n: usize, field: FieldSpec) -> Instance {
    assert!(n >= 1, "matrix algebra needs n >= 1");
    let dim = n * n;
    let labels = (0..n).flat_map(|s| (0..n).map(move |t| format!("E{}{}", s + 1, t + 1))).collect();
    let mut constants = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                constants.push(StructureConstant { i: s * n + t, j: t * n + v, k: s * n + v, value: field.one() });
            }
        }
    }
    let mut unit = Element::zero(field, dim);
    for s in 0..n {
        unit.add_scaled(&field.one(), &Element::basis(field, dim, s * n + s));
    }
    let algebra = AlgebraDescriptor::new(field, labels, constants, unit).expect("matrix units");
    let mut transpose = Matrix::zeros(field, dim, dim);
    for s in 0..n {
        for t in 0..n {
            transpose.set(s * n + t, t * n + s, field.one());
        }
    }
    let datum = CellDatum {
        poset: CellPoset::chain(vec![format!("M{n}")]),
        m_sizes: vec![n],
        labeling: (0..n).flat_map(|s| (0..n).map(move |t| CellIndex::new(0, s, t))).collect(),
        involution: transpose,
        cell_basis: None,
    };
    let tau = (0..dim).map(|k| if k / n == k % n { field.one() } else { field.zero() }).collect();
    let trace = TraceForm::new(&algebra, tau).expect("length");
    Instance { name: format!("matrix:{n}"), algebra, datum, trace }
}

/// `K[x]/(x²)` on `{1, x}`; `C^low = x`, `C^top = 1`, `τ(a + bx) = b`.
pub fn gen_dual_numbers(field: FieldSpec) -> Instance {
    let algebra = AlgebraDescriptor::new(
        field,
        vec!["1".into(), "x".into()],
        [(0, 0, 0), (0, 1, 1), (1, 0, 1)].map(|(i, j, k)| StructureConstant { i, j, k, value: field.one() }),
        Element::basis(field, 2, 0),
    )
    .expect("dual numbers");
    let datum = CellDatum {
        poset: CellPoset::chain(vec!["low".into(), "top".into()]),
        m_sizes: vec![1, 1],
        labeling: vec![CellIndex::new(1, 0, 0), CellIndex::new(0, 0, 0)],
        involution: Matrix::identity(field, 2),
        cell_basis: None,
    };
    let trace = TraceForm::coefficient_of(&algebra, 1).expect("index in range");
    Instance { name: "dual-numbers".into(), algebra, datum, trace }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let (n, m) = (a.rows(), b.rows());
    let mut out = Matrix::zeros(field, n + m, n + m);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..m {
        for c in 0..m {
            out.set(n + r, n + c, b.get(r, c).clone());
        }
    }
    out
}

/// `A ⊕ B`: basis of `A` then basis of `B`, disjoint union of posets with
/// labels prefixed `1:` and `2:`, everything block-diagonal.
pub fn gen_direct_sum(a: &Instance, b: &Instance) -> Result<Instance> {
    let field = a.algebra.field();
    if b.algebra.field() != field {
        return Err(Error::FieldMismatch(field.to_string(), b.algebra.field().to_string()));
    }
    let (n, m) = (a.algebra.dim(), b.algebra.dim());
    let labels = a
        .algebra
        .labels()
        .iter()
        .map(|l| format!("1:{l}"))
        .chain(b.algebra.labels().iter().map(|l| format!("2:{l}")))
        .collect();
    let constants = a.algebra.structure_constants().into_iter().chain(
        b.algebra
            .structure_constants()
            .into_iter()
            .map(|c| StructureConstant { i: c.i + n, j: c.j + n, k: c.k + n, ..c }),
    );
    let unit = Element::from_coeffs(a.algebra.unit().coeffs().iter().chain(b.algebra.unit().coeffs()).cloned().collect());
    let algebra = AlgebraDescriptor::new(field, labels, constants, unit)?;

    let pa = &a.datum.poset;
    let pb = &b.datum.poset;
    let shift = pa.len();
    let poset = CellPoset::new(
        pa.labels()
            .iter()
            .map(|l| format!("1:{l}"))
            .chain(pb.labels().iter().map(|l| format!("2:{l}")))
            .collect(),
        pa.relations()
            .iter()
            .copied()
            .chain(pb.relations().iter().map(|&(x, y)| (x + shift, y + shift)))
            .collect(),
    )?;
    let cell_basis = match (&a.datum.cell_basis, &b.datum.cell_basis) {
        (None, None) => None,
        (x, y) => {
            let x = x.clone().unwrap_or_else(|| Matrix::identity(field, n));
            let y = y.clone().unwrap_or_else(|| Matrix::identity(field, m));
            Some(block_diag(&x, &y))
        }
    };
    let datum = CellDatum {
        poset,
        m_sizes: a.datum.m_sizes.iter().chain(&b.datum.m_sizes).copied().collect(),
        labeling: a
            .datum
            .labeling
            .iter()
            .copied()
            .chain(b.datum.labeling.iter().map(|c| CellIndex::new(c.lambda + shift, c.s, c.t)))
            .collect(),
        involution: block_diag(&a.datum.involution, &b.datum.involution),
        cell_basis,
    };
    let tau = a.trace.values().iter().chain(b.trace.values()).cloned().collect();
    let trace = TraceForm::new(&algebra, tau)?;
    Ok(Instance { name: format!("direct-sum:{}+{}", a.name, b.name), algebra, datum, trace })
}

/// The instances every property suite runs over.
pub fn builtin_instances() -> Vec<Instance> {
    let q = FieldSpec::rationals();
    let gf = |p| FieldSpec::prime(p).expect("prime");
    let mut out = vec![
        gen_paper_s3(gf(3)).expect("GF(3) supported"),
        gen_group_s3(q),
    ];
    for n in 1..=3 {
        out.push(gen_matrix_algebra(n, q));
        out.push(gen_matrix_algebra(n, gf(7)));
    }
    out.push(gen_dual_numbers(gf(5)));
    out.push(gen_dual_numbers(q));
    out.push(
        gen_direct_sum(&gen_matrix_algebra(2, gf(3)), &gen_paper_s3(gf(3)).expect("GF(3) supported"))
            .expect("same field"),
    );
    out
}
