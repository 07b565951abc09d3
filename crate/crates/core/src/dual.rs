//! The dual cellular basis of a symmetric cellular algebra, its forms `Ψ_λ`,
//! and the constants `k_λ`.
//!
//! Everything works in the cellular coordinates of a [`CellularAlgebra`].
//! The dual basis is indexed so that
//! `τ(C^λ_{S,T} D^μ_{U,V}) = δ_λμ δ_SV δ_TU`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{dual_basis, validate_symmetrizing_trace, Element, TraceForm};
use crate::cell::{
    all_cell_modules, phi_form, validate_cellular, CellDatum, CellIndex, CellularAlgebra, GramData,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::report::Report;

/// Default number of `(S,T,U,V,P)` tuples per cell for the quadruple-product
/// identity.
pub const DEFAULT_QUADRUPLE_CAP: usize = 2000;

/// `elements[k]` is `D^λ_{U,V}` where `(λ, U, V)` is the label of basis
/// position `k`. Coordinates are cellular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCellBasis {
    pub elements: Vec<Element>,
    /// The trace in cellular coordinates.
    pub trace: TraceForm,
}

impl DualCellBasis {
    pub fn get(&self, ca: &CellularAlgebra, lambda: usize, u: usize, v: usize) -> &Element {
        &self.elements[ca.pos(lambda, u, v)]
    }

    pub fn as_matrix(&self, ca: &CellularAlgebra) -> Matrix {
        let rows: Vec<Vec<Scalar>> = self.elements.iter().map(|e| e.coeffs().to_vec()).collect();
        Matrix::from_rows(ca.field(), ca.dim(), &rows).expect("square")
    }

    /// Coefficients of `x` in the dual basis: the coefficient of `D_{P,Q}`
    /// is `τ(C_{Q,P} x)`.
    pub fn coordinates(&self, ca: &CellularAlgebra, x: &Element) -> Vec<Scalar> {
        (0..ca.dim())
            .map(|k| {
                let c = ca.index(k);
                self.trace.pair(&ca.basis(c.lambda, c.t, c.s), x)
            })
            .collect()
    }
}

/// The trace rewritten in the cellular coordinates of `ca`.
pub fn cell_trace(ca: &CellularAlgebra, tau: &TraceForm) -> Result<TraceForm> {
    tau.rebase(ca.algebra(), ca.to_ambient_matrix())
}

/// `tau` is in the original (ambient) coordinates.
pub fn dual_cell_basis(ca: &CellularAlgebra, tau: &TraceForm) -> Result<DualCellBasis> {
    dual_cell_basis_local(ca, cell_trace(ca, tau)?)
}

/// Like [`dual_cell_basis`] with the trace already in cellular coordinates.
pub fn dual_cell_basis_local(ca: &CellularAlgebra, trace: TraceForm) -> Result<DualCellBasis> {
    let report = validate_symmetrizing_trace(ca.algebra(), &trace);
    if !report.passed() {
        if report.failures.iter().any(|f| f.check == "non-degeneracy") {
            return Err(Error::SingularTrace);
        }
        return Err(Error::Validation(Box::new(report)));
    }
    let generic = dual_basis(ca.algebra(), &trace)?;
    let n = ca.dim();
    let elements: Vec<Element> = (0..n)
        .map(|k| {
            let c = ca.index(k);
            generic.elements[ca.pos(c.lambda, c.t, c.s)].clone()
        })
        .collect();
    let dcb = DualCellBasis { elements, trace };
    for p in 0..n {
        let cp = ca.index(p);
        for q in 0..n {
            let cq = ca.index(q);
            let v = dcb.trace.pair(&ca.algebra().basis_element(p), &dcb.elements[q]);
            let expect = cp.lambda == cq.lambda && cp.s == cq.t && cp.t == cq.s;
            if (expect && !v.is_one()) || (!expect && !v.is_zero()) {
                return Err(Error::InconsistentDatum(format!("pairing of positions {p} and {q} is {v}")));
            }
        }
    }
    Ok(dcb)
}

/// Identities between the two bases, checked exhaustively.
pub fn verify_dual_identities(ca: &CellularAlgebra, dcb: &DualCellBasis) -> Report {
    let mut report = Report::new("dual identities");
    let alg = ca.algebra();
    let n = ca.dim();
    let field = ca.field();
    let poset = ca.poset();
    let d = &dcb.elements;
    let c = |k: usize| alg.basis_element(k);

    // (1), (2): expansions via structure constants
    let mut ok1 = true;
    let mut ok2 = true;
    for p in 0..n {
        for q in 0..n {
            let cq = ca.index(q);
            let vu = ca.pos(cq.lambda, cq.t, cq.s);
            let mut e1 = Element::zero(field, n);
            let mut e2 = Element::zero(field, n);
            for k in 0..n {
                let ck = ca.index(k);
                let yx = ca.pos(ck.lambda, ck.t, ck.s);
                e1.add_scaled(&alg.constant(p, yx, vu), &d[k]);
                e2.add_scaled(&alg.constant(yx, p, vu), &d[k]);
            }
            if ok1 {
                ok1 = report.check("(1) D·C expansion", alg.mul(&d[q], &c(p)) == e1, || {
                    format!("D at {:?}, C at {:?}", cq, ca.index(p))
                });
            }
            if ok2 {
                ok2 = report.check("(2) C·D expansion", alg.mul(&c(p), &d[q]) == e2, || {
                    format!("C at {:?}, D at {:?}", ca.index(p), cq)
                });
            }
        }
    }

    for lambda in 0..ca.num_cells() {
        let m = ca.n_lambda(lambda);
        let cc = |s, t| c(ca.pos(lambda, s, t));
        let dd = |s, t| &d[ca.pos(lambda, s, t)];
        for s in 0..m {
            for q in 0..m {
                let base3 = alg.mul(&cc(s, 0), dd(0, q));
                let base4 = alg.mul(dd(s, 0), &cc(0, q));
                for t in 1..m {
                    report.check("(3) C_ST D_TQ independent of T", alg.mul(&cc(s, t), dd(t, q)) == base3, || {
                        format!("λ={}, S={}, T={}, Q={}", ca.label(lambda), s + 1, t + 1, q + 1)
                    });
                    report.check("(4) D_TS C_SQ independent of S", alg.mul(dd(s, t), &cc(t, q)) == base4, || {
                        format!("λ={}, T={}, S={}, Q={}", ca.label(lambda), s + 1, t + 1, q + 1)
                    });
                }
            }
        }
        for s in 0..m {
            for t in 0..m {
                for p in 0..m {
                    for q in 0..m {
                        if t != p {
                            report.check("(5) C_ST D_PQ = 0 for T ≠ P", alg.mul(&cc(s, t), dd(p, q)).is_zero(), || {
                                format!("λ={}, (S,T,P,Q)=({},{},{},{})", ca.label(lambda), s + 1, t + 1, p + 1, q + 1)
                            });
                        }
                        if q != s {
                            report.check("(6) D_PQ C_ST = 0 for Q ≠ S", alg.mul(dd(p, q), &cc(s, t)).is_zero(), || {
                                format!("λ={}, (P,Q,S,T)=({},{},{},{})", ca.label(lambda), p + 1, q + 1, s + 1, t + 1)
                            });
                        }
                    }
                }
            }
        }
    }

    for p in 0..n {
        let lp = ca.index(p).lambda;
        for (q, dq) in d.iter().enumerate() {
            let mu = ca.index(q).lambda;
            if poset.le(mu, lp) {
                continue;
            }
            report.check("(7) C^λ D^μ = 0 for μ ≰ λ", alg.mul(&c(p), dq).is_zero(), || {
                format!("C at {:?}, D at {:?}", ca.index(p), ca.index(q))
            });
            report.check("(8) D^μ C^λ = 0 for μ ≰ λ", alg.mul(dq, &c(p)).is_zero(), || {
                format!("D at {:?}, C at {:?}", ca.index(q), ca.index(p))
            });
        }
    }
    report
}

/// The dual datum over the cellular-coordinate algebra: opposite order, the
/// same index sets and involution, and `D` as the cellular basis.
pub fn dual_datum(ca: &CellularAlgebra, dcb: &DualCellBasis) -> CellDatum {
    CellDatum {
        poset: ca.poset().opposite(),
        m_sizes: ca.m_sizes().to_vec(),
        labeling: ca.labeling().to_vec(),
        involution: ca.involution().clone(),
        cell_basis: Some(dcb.as_matrix(ca)),
    }
}

pub fn dual_cellular(ca: &CellularAlgebra, dcb: &DualCellBasis) -> Result<CellularAlgebra> {
    CellularAlgebra::new(ca.algebra(), &dual_datum(ca, dcb))
}

/// Re-validates the dual datum as cellular, compares its cell-module action
/// with the transposed action of `i(a)`, and checks biduality.
pub fn verify_dual_cellularity(ca: &CellularAlgebra, dcb: &DualCellBasis) -> Report {
    let mut report = Report::new("dual cellularity");
    let dual = match dual_cellular(ca, dcb) {
        Ok(d) => d,
        Err(e) => {
            report.fail("dual datum shape", e.to_string());
            return report;
        }
    };
    report.absorb(validate_cellular(&dual));
    if !report.passed() {
        return report;
    }

    match (all_cell_modules(ca), all_cell_modules(&dual)) {
        (Ok(orig), Ok(dmods)) => {
            for (w, wd) in orig.iter().zip(&dmods) {
                for a in 0..ca.dim() {
                    // the dual algebra's basis element a is D_a in cell coordinates
                    let da = &dcb.elements[a];
                    let expected = w.act(&ca.apply_involution(da)).transpose();
                    report.check("dual action is transposed action of i(a)", wd.matrices[a] == expected, || {
                        format!("λ={}, a=D at {:?}", ca.label(w.lambda), ca.index(a))
                    });
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => report.fail("cell modules", e.to_string()),
    }

    // biduality: the dual of D under the same trace is C again
    match dual_cell_basis_local(&dual, cell_trace(&dual, &dcb.trace).expect("square")) {
        Ok(dd) => {
            for (k, e) in dd.elements.iter().enumerate() {
                let back = dual.to_ambient(e);
                report.check("dual of dual is C", back == ca.algebra().basis_element(k), || {
                    format!("position {k}")
                });
            }
        }
        Err(e) => report.fail("dual of dual is C", e.to_string()),
    }
    report
}

/// `Ψ_λ` and `k_λ` for one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGramData {
    pub lambda: usize,
    pub psi: GramData,
    pub k: Scalar,
}

/// `Ψ_λ` from the dual datum and `k_λ = Σ_X Φ(X,V) Ψ(X,V)`, which must agree
/// for every `V`.
pub fn psi_and_k(dual: &CellularAlgebra, gram: &GramData) -> Result<DualGramData> {
    let lambda = gram.lambda;
    let psi = phi_form(dual, lambda)?;
    let m = gram.n();
    let field = dual.field();
    let mut k: Option<Scalar> = None;
    for v in 0..m {
        let mut sum = field.zero();
        for x in 0..m {
            sum = &sum + &(gram.phi.get(x, v) * psi.phi.get(x, v));
        }
        match &k {
            None => k = Some(sum),
            Some(prev) if *prev != sum => {
                return Err(Error::NotCellular(format!(
                    "k for {} depends on V: {prev} at V=1, {sum} at V={}",
                    dual.label(lambda),
                    v + 1
                )))
            }
            Some(_) => {}
        }
    }
    Ok(DualGramData { lambda, psi, k: k.expect("M(λ) nonempty") })
}

/// Per-cell summary of `k_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KEntry {
    pub lambda: usize,
    pub label: String,
    pub k: String,
}

/// Quadruple-product identity (up to `cap` tuples per cell), `G G′ = G′ G =
/// k E`, and `k = 0` wherever `rad λ ≠ 0`.
pub fn verify_k_identities(
    ca: &CellularAlgebra,
    dcb: &DualCellBasis,
    grams: &[GramData],
    kdata: &[DualGramData],
    cap: usize,
    seed: u64,
) -> Report {
    let mut report = Report::new("k identities");
    let alg = ca.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (g, kd) in grams.iter().zip(kdata) {
        let lambda = g.lambda;
        let m = g.n();
        let cc = |s, t| alg.basis_element(ca.pos(lambda, s, t));
        let dd = |s, t| &dcb.elements[ca.pos(lambda, s, t)];
        let total = m.pow(5);
        let mut tuples: Vec<usize> = (0..total).collect();
        if total > cap {
            tuples.shuffle(&mut rng);
            tuples.truncate(cap);
        }
        for code in tuples {
            let idx: Vec<usize> = (0..5).map(|i| code / m.pow(i) % m).collect();
            let (s, t, u, v, p) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
            let lhs = alg.mul_all(&[&cc(s, t), dd(t, u), &cc(u, v), dd(v, p)]);
            let rhs = alg.mul(&cc(s, t), dd(t, p)).scale(&kd.k);
            report.check("C D C D = k C D", lhs == rhs, || {
                format!("λ={}, (S,T,U,V,P)=({},{},{},{},{})", ca.label(lambda), s + 1, t + 1, u + 1, v + 1, p + 1)
            });
        }
        let ke = Matrix::identity(ca.field(), m).scale(&kd.k);
        let gg = g.phi.mul(&kd.psi.phi).expect("square");
        let gg2 = kd.psi.phi.mul(&g.phi).expect("square");
        report.check("G G′ = k E", gg == ke, || format!("λ={}", ca.label(lambda)));
        report.check("G′ G = k E", gg2 == ke, || format!("λ={}", ca.label(lambda)));
        if g.dim_rad() > 0 {
            report.check("rad λ ≠ 0 forces k = 0", kd.k.is_zero(), || {
                format!("λ={}, k={}", ca.label(lambda), kd.k)
            });
        }
    }
    report
}

/// The dual `D^λ_{U,V}` keyed by label, in ambient coordinates.
pub fn ambient_dual(ca: &CellularAlgebra, dcb: &DualCellBasis) -> Vec<(CellIndex, Element)> {
    (0..ca.dim()).map(|k| (ca.index(k), ca.to_ambient(&dcb.elements[k]))).collect()
}
