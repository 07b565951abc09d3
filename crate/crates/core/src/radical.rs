//! The nilpotent ideal `I` built from cells with `k_λ = 0`, the Jacobson
//! radical, the dimension bounds relating them, and the semisimplicity
//! criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element};
use crate::cell::{validate_cell_datum, CellDatum, CellularAlgebra, GramData, SimpleModuleAction, Stratification};
use crate::dual::{DualCellBasis, DualGramData};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, SubspaceBasis};
use crate::report::Report;

/// Number of sampled radical elements for the support check.
pub const RADICAL_SAMPLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellIdeal {
    pub lambda: usize,
    /// `span{C_{S,V} D_{V,U}}`.
    pub c_side: SubspaceBasis,
    /// `span{D_{U,V} C_{V,S}}`.
    pub d_side: SubspaceBasis,
}

/// `I = I^Λ + I_D^Λ` with its per-cell pieces, in cellular coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    pub cells: Vec<CellIdeal>,
    /// Cells with `k_λ = 0`.
    pub zero_k: Vec<usize>,
    /// `Λ₄ = {λ ∈ Λ₁ : k_λ = 0}`.
    pub lambda4: Vec<usize>,
    pub i_lambda: SubspaceBasis,
    pub i_d: SubspaceBasis,
    pub total: SubspaceBasis,
}

fn span(ca: &CellularAlgebra, vectors: Vec<Element>) -> SubspaceBasis {
    let rows: Vec<Vec<Scalar>> = vectors.into_iter().map(Element::into_coeffs).collect();
    SubspaceBasis::from_spanning(ca.field(), ca.dim(), &rows).expect("ambient length")
}

fn cell_ideal(ca: &CellularAlgebra, dcb: &DualCellBasis, lambda: usize, v: usize) -> CellIdeal {
    let alg = ca.algebra();
    let m = ca.n_lambda(lambda);
    let cc = |s, t| alg.basis_element(ca.pos(lambda, s, t));
    let dd = |s, t| &dcb.elements[ca.pos(lambda, s, t)];
    let mut cs = Vec::new();
    let mut ds = Vec::new();
    for s in 0..m {
        for u in 0..m {
            cs.push(alg.mul(&cc(s, v), dd(v, u)));
            ds.push(alg.mul(dd(u, v), &cc(v, s)));
        }
    }
    CellIdeal { lambda, c_side: span(ca, cs), d_side: span(ca, ds) }
}

pub fn build_ideal_i(
    ca: &CellularAlgebra,
    dcb: &DualCellBasis,
    strata: &Stratification,
    kdata: &[DualGramData],
) -> IdealData {
    let field = ca.field();
    let n = ca.dim();
    let cells: Vec<CellIdeal> = (0..ca.num_cells()).map(|l| cell_ideal(ca, dcb, l, 0)).collect();
    let zero_k: Vec<usize> = kdata.iter().filter(|k| k.k.is_zero()).map(|k| k.lambda).collect();
    let lambda4 = strata.lambda1.iter().copied().filter(|l| zero_k.contains(l)).collect();
    let mut i_lambda = SubspaceBasis::zero(field, n);
    let mut i_d = SubspaceBasis::zero(field, n);
    for &l in &zero_k {
        i_lambda = i_lambda.sum(&cells[l].c_side).expect("same ambient");
        i_d = i_d.sum(&cells[l].d_side).expect("same ambient");
    }
    let total = i_lambda.sum(&i_d).expect("same ambient");
    IdealData { cells, zero_k, lambda4, i_lambda, i_d, total }
}

fn is_two_sided(alg: &AlgebraDescriptor, space: &SubspaceBasis) -> Option<(usize, usize)> {
    for (r, v) in space.vectors().into_iter().enumerate() {
        let x = Element::from_coeffs(v);
        for b in 0..alg.dim() {
            let be = alg.basis_element(b);
            if !space.contains_vector(alg.mul(&be, &x).coeffs()) || !space.contains_vector(alg.mul(&x, &be).coeffs()) {
                return Some((r, b));
            }
        }
    }
    None
}

/// Independence of the probe column and two-sidedness of every `I^λ`, `I_D^λ`.
pub fn verify_ideal_structure(ca: &CellularAlgebra, dcb: &DualCellBasis, ideal: &IdealData) -> Report {
    let mut report = Report::new("ideal structure");
    for cell in &ideal.cells {
        let l = cell.lambda;
        for v in 1..ca.n_lambda(l) {
            let other = cell_ideal(ca, dcb, l, v);
            report.check("I^λ independent of V", other.c_side == cell.c_side, || {
                format!("λ={}, V={}", ca.label(l), v + 1)
            });
            report.check("I_D^λ independent of V", other.d_side == cell.d_side, || {
                format!("λ={}, V={}", ca.label(l), v + 1)
            });
        }
        for (name, space) in [("I^λ two-sided", &cell.c_side), ("I_D^λ two-sided", &cell.d_side)] {
            let bad = is_two_sided(ca.algebra(), space);
            report.check(name, bad.is_none(), || {
                let (r, b) = bad.unwrap_or_default();
                format!("λ={}, spanning vector {r}, basis element {b}", ca.label(l))
            });
        }
    }
    report
}

/// `span{xy : x ∈ A, y ∈ B}`.
pub fn product_space(alg: &AlgebraDescriptor, a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
    let mut rows = Vec::new();
    let bs: Vec<Element> = b.vectors().into_iter().map(Element::from_coeffs).collect();
    for x in a.vectors() {
        let x = Element::from_coeffs(x);
        for y in &bs {
            rows.push(alg.mul(&x, y).into_coeffs());
        }
    }
    SubspaceBasis::from_spanning(alg.field(), alg.dim(), &rows).expect("ambient length")
}

pub fn verify_nilpotency(ca: &CellularAlgebra, ideal: &IdealData) -> Report {
    let mut report = Report::new("nilpotency");
    let alg = ca.algebra();
    let sq_c = product_space(alg, &ideal.i_lambda, &ideal.i_lambda);
    let sq_d = product_space(alg, &ideal.i_d, &ideal.i_d);
    let sq = product_space(alg, &ideal.total, &ideal.total);
    let cube = product_space(alg, &sq, &ideal.total);
    report.check("(I^Λ)² = 0", sq_c.is_zero(), || format!("dim {}", sq_c.dim()));
    report.check("(I_D^Λ)² = 0", sq_d.is_zero(), || format!("dim {}", sq_d.dim()));
    report.check("I³ = 0", cube.is_zero(), || format!("dim {}", cube.dim()));
    if sq.is_zero() && !ideal.total.is_zero() {
        report.note("I² = 0");
    }
    report
}

/// `∩_{λ∈Λ₀} Ann(L_λ)`, cross-checked against `dim A − Σ (dim L_λ)²`.
pub fn jacobson_radical(ca: &CellularAlgebra, simples: &[SimpleModuleAction]) -> Result<SubspaceBasis> {
    let n = ca.dim();
    let field = ca.field();
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); n];
    for sm in simples {
        for (k, row) in rows.iter_mut().enumerate() {
            let m = &sm.matrices[k];
            for r in 0..m.rows() {
                row.extend_from_slice(m.row(r));
            }
        }
    }
    let width = rows.first().map_or(0, Vec::len);
    let map = Matrix::from_rows(field, width, &rows)?;
    let rad = map.transpose().kernel();
    let expected = n - simples.iter().map(|s| s.dim * s.dim).sum::<usize>().min(n);
    if rad.dim() != expected {
        return Err(Error::InconsistentDatum(format!(
            "annihilator intersection has dimension {} but dim A − Σ (dim L_λ)² = {expected}",
            rad.dim()
        )));
    }
    Ok(rad)
}

/// Sizes entering the two dimension bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub bound3_lhs: i64,
    pub bound3_rhs: i64,
    pub bound4_lhs: i64,
    pub bound4_rhs: i64,
}

impl Bounds {
    pub fn compute(strata: &Stratification, ideal: &IdealData) -> Self {
        let row = |l: usize| strata.rows.iter().find(|r| r.lambda == l).expect("every cell has a row");
        let sq = |x: usize| (x * x) as i64;
        let mut b3 = 0i64;
        let mut b4l = 0i64;
        let mut b4r = 0i64;
        for &l in &strata.lambda2 {
            let r = row(l);
            let dl = r.dim_simple.unwrap_or(0);
            b3 += ((r.n + r.dim_rad) * dl) as i64;
            b4l += sq(dl);
            b4r += sq(r.dim_rad);
        }
        for &l in &ideal.lambda4 {
            b3 += sq(row(l).n);
            b4r -= sq(row(l).n);
        }
        for &l in &strata.lambda3 {
            b4l -= sq(row(l).n);
        }
        Bounds { bound3_lhs: ideal.total.dim() as i64, bound3_rhs: b3, bound4_lhs: b4l, bound4_rhs: b4r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub dim_rad: usize,
    pub dim_i: usize,
    pub i_contained: bool,
    pub i_equal: bool,
    pub bounds: Bounds,
    /// Whether `I` under each sampled trace equals the reference `I`.
    pub trace_independence: Vec<bool>,
    pub report: Report,
}

/// Containment, the bounds, and equality of `I` across the `others` (ideals
/// computed under other traces).
pub fn verify_radical_characterization(
    strata: &Stratification,
    ideal: &IdealData,
    rad: &SubspaceBasis,
    others: &[IdealData],
) -> RadicalReport {
    let mut report = Report::new("radical characterization");
    let i_contained = rad.contains(&ideal.total).expect("same ambient");
    let i_equal = *rad == ideal.total;
    report.check("I ⊆ rad A", i_contained, || format!("dim I = {}, dim rad A = {}", ideal.total.dim(), rad.dim()));
    let bounds = Bounds::compute(strata, ideal);
    report.check("dim I lower bound", bounds.bound3_lhs >= bounds.bound3_rhs, || {
        format!("{} < {}", bounds.bound3_lhs, bounds.bound3_rhs)
    });
    report.check("dimension inequality", bounds.bound4_lhs <= bounds.bound4_rhs, || {
        format!("{} > {}", bounds.bound4_lhs, bounds.bound4_rhs)
    });
    let trace_independence: Vec<bool> = others.iter().map(|o| o.total == ideal.total).collect();
    for (i, ok) in trace_independence.iter().enumerate() {
        report.check("I independent of the trace", *ok, || format!("sampled trace {i}"));
    }
    RadicalReport {
        dim_rad: rad.dim(),
        dim_i: ideal.total.dim(),
        i_contained,
        i_equal,
        bounds,
        trace_independence,
        report,
    }
}

/// Minimal cells with nonzero radical lie in `rad A`; cells maximal in the
/// support of a radical element have `k_λ = 0`.
pub fn check_consequences(
    ca: &CellularAlgebra,
    grams: &[GramData],
    kdata: &[DualGramData],
    rad: &SubspaceBasis,
    seed: u64,
) -> Report {
    let mut report = Report::new("consequences");
    let poset = ca.poset();
    for l in poset.minimal() {
        if grams[l].dim_rad() > 0 {
            report.check("minimal cell with rad λ ≠ 0 lies in rad A", rad.contains(&ca.cell_span(l)).expect("same ambient"), || {
                format!("λ={}", ca.label(l))
            });
        }
    }
    if rad.is_zero() {
        return report;
    }
    let field = ca.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = rad.vectors();
    let mut samples: Vec<Element> = basis.iter().cloned().map(Element::from_coeffs).collect();
    while samples.len() < basis.len() + RADICAL_SAMPLES {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| field.from_i64(rng.random_range(-4..=4))).collect();
        let v = rad.basis().vec_mul(&coeffs);
        if v.iter().any(|x| !x.is_zero()) {
            samples.push(Element::from_coeffs(v));
        }
    }
    for r in &samples {
        let support = ca.cell_support(r);
        for &l in &support {
            if support.iter().any(|&m| poset.lt(l, m)) {
                continue;
            }
            report.check("cells maximal in a radical support have k = 0", kdata[l].k.is_zero(), || {
                format!("λ={}", ca.label(l))
            });
        }
    }
    report
}

/// The five equivalent semisimplicity conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Battery {
    pub rad_zero: bool,
    pub all_k_nonzero: bool,
    pub cd_basis: bool,
    pub some_square_nonzero: bool,
    pub all_squares_nonzero: bool,
}

impl Battery {
    pub fn flags(&self) -> [bool; 5] {
        [self.rad_zero, self.all_k_nonzero, self.cd_basis, self.some_square_nonzero, self.all_squares_nonzero]
    }

    pub fn consistent(&self) -> bool {
        self.flags().iter().all(|&f| f == self.rad_zero)
    }

    pub fn verdict(&self) -> bool {
        self.rad_zero
    }
}

/// Evaluates all five flags; errors if they disagree.
pub fn semisimplicity_battery(
    ca: &CellularAlgebra,
    dcb: &DualCellBasis,
    rad: &SubspaceBasis,
    kdata: &[DualGramData],
) -> Result<Battery> {
    let battery = evaluate_battery(ca, dcb, rad, kdata);
    if !battery.consistent() {
        return Err(Error::EquivalenceViolation(format!("flags {:?}", battery.flags())));
    }
    Ok(battery)
}

/// The flags without the consistency check.
pub fn evaluate_battery(
    ca: &CellularAlgebra,
    dcb: &DualCellBasis,
    rad: &SubspaceBasis,
    kdata: &[DualGramData],
) -> Battery {
    let alg = ca.algebra();
    let cc = |l, s, t| alg.basis_element(ca.pos(l, s, t));
    let dd = |l, s, t| &dcb.elements[ca.pos(l, s, t)];
    let cd: Vec<Element> = (0..ca.dim())
        .map(|k| {
            let c = ca.index(k);
            alg.mul(&cc(c.lambda, c.s, c.t), dd(c.lambda, c.t, c.t))
        })
        .collect();
    let cd_basis = span(ca, cd).dim() == ca.dim();
    let mut some = true;
    let mut all = true;
    for l in 0..ca.num_cells() {
        let m = ca.n_lambda(l);
        let mut any_here = false;
        for s in 0..m {
            for t in 0..m {
                let x = alg.mul(&cc(l, s, t), dd(l, t, s));
                if alg.mul(&x, &x).is_zero() {
                    all = false;
                } else {
                    any_here = true;
                }
            }
        }
        some &= any_here;
    }
    Battery {
        rad_zero: rad.is_zero(),
        all_k_nonzero: kdata.iter().all(|k| !k.k.is_zero()),
        cd_basis,
        some_square_nonzero: some,
        all_squares_nonzero: all,
    }
}

/// `𝓔_{S,T} = C_{S,S} D_{S,T} C_{T,T}` in label order, with its checks.
pub fn wedderburn_basis(
    ca: &CellularAlgebra,
    dcb: &DualCellBasis,
    battery: &Battery,
) -> Result<(Vec<Element>, Report)> {
    if !battery.verdict() {
        return Err(Error::NotSemisimple);
    }
    let alg = ca.algebra();
    let n = ca.dim();
    let elements: Vec<Element> = (0..n)
        .map(|k| {
            let c = ca.index(k);
            alg.mul_all(&[
                &ca.basis(c.lambda, c.s, c.s),
                &dcb.elements[ca.pos(c.lambda, c.s, c.t)],
                &ca.basis(c.lambda, c.t, c.t),
            ])
        })
        .collect();
    let mut report = Report::new("wedderburn basis");
    let rows: Vec<Vec<Scalar>> = elements.iter().map(|e| e.coeffs().to_vec()).collect();
    let m = Matrix::from_rows(ca.field(), n, &rows)?;
    let rank = m.rank();
    report.check("full rank", rank == n, || format!("rank {rank} < {n}"));
    if rank == n {
        let datum = CellDatum {
            poset: ca.poset().clone(),
            m_sizes: ca.m_sizes().to_vec(),
            labeling: ca.labeling().to_vec(),
            involution: ca.involution().clone(),
            cell_basis: Some(m),
        };
        report.absorb(validate_cell_datum(alg, &datum));
    }
    for p in 0..n {
        for q in 0..n {
            let (lp, lq) = (ca.index(p).lambda, ca.index(q).lambda);
            if lp != lq {
                report.check("cross-cell products vanish", alg.mul(&elements[p], &elements[q]).is_zero(), || {
                    format!("{:?} · {:?}", ca.index(p), ca.index(q))
                });
            }
        }
    }
    Ok((elements, report))
}
