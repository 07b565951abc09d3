//! One-shot computation of every derived object for an instance, the
//! property suites run over it, and serializable summaries.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{random_symmetrizing_trace, Element, TraceForm};
use crate::cell::{
    all_cell_modules, all_phi_forms, classify_strata, phi_form, simple_module_action, CellModuleAction,
    CellularAlgebra, GramData, SimpleModuleAction, Stratification,
};
use crate::dual::{
    ambient_dual, dual_cell_basis, dual_cellular, psi_and_k, verify_dual_cellularity, verify_dual_identities,
    verify_k_identities, DualCellBasis, DualGramData, DEFAULT_QUADRUPLE_CAP,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generators::{builtin_instances, paper_s3_expected_dual, Instance};
use crate::linalg::{SubspaceBasis, SubspaceView};
use crate::radical::{
    build_ideal_i, check_consequences, evaluate_battery, jacobson_radical, verify_ideal_structure,
    verify_nilpotency, verify_radical_characterization, wedderburn_basis, Battery, IdealData, RadicalReport,
};
use crate::report::Report;
use crate::workbench::{validate_instance, Expected};

/// Number of random `M(λ)` permutations per cell in the determinant check.
pub const GRAM_PERMUTATIONS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Tuples per cell for the quadruple-product identity.
    pub quadruple_cap: usize,
    /// Random traces used for the trace-independence check.
    pub traces: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { quadruple_cap: DEFAULT_QUADRUPLE_CAP, traces: 5, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub instance: Instance,
    pub ca: CellularAlgebra,
    pub grams: Vec<GramData>,
    pub modules: Vec<CellModuleAction>,
    pub strata: Stratification,
    pub simples: Vec<SimpleModuleAction>,
    pub dcb: DualCellBasis,
    pub dual: CellularAlgebra,
    pub kdata: Vec<DualGramData>,
    pub ideal: IdealData,
    pub rad: SubspaceBasis,
    pub battery: Battery,
}

/// The parts of the pipeline that depend on the trace.
fn trace_dependent(
    ca: &CellularAlgebra,
    grams: &[GramData],
    strata: &Stratification,
    tau: &TraceForm,
) -> Result<(DualCellBasis, CellularAlgebra, Vec<DualGramData>, IdealData)> {
    let dcb = dual_cell_basis(ca, tau)?;
    let dual = dual_cellular(ca, &dcb)?;
    let kdata = grams.iter().map(|g| psi_and_k(&dual, g)).collect::<Result<Vec<_>>>()?;
    let ideal = build_ideal_i(ca, &dcb, strata, &kdata);
    Ok((dcb, dual, kdata, ideal))
}

impl Analysis {
    /// Validates the instance, then computes everything.
    pub fn run(instance: &Instance) -> Result<Self> {
        let report = validate_instance(instance);
        if !report.passed() {
            return Err(Error::Validation(Box::new(report)));
        }
        let ca = CellularAlgebra::new(&instance.algebra, &instance.datum)?;
        let grams = all_phi_forms(&ca)?;
        let modules = all_cell_modules(&ca)?;
        let strata = classify_strata(&ca, &grams);
        let simples = strata
            .lambda0
            .iter()
            .map(|&l| simple_module_action(&ca, &modules[l], &grams[l]))
            .collect::<Result<Vec<_>>>()?;
        let rad = jacobson_radical(&ca, &simples)?;
        let (dcb, dual, kdata, ideal) = trace_dependent(&ca, &grams, &strata, &instance.trace)?;
        let battery = evaluate_battery(&ca, &dcb, &rad, &kdata);
        Ok(Analysis { instance: instance.clone(), ca, grams, modules, strata, simples, dcb, dual, kdata, ideal, rad, battery })
    }

    /// The same instance under another trace (given in original coordinates).
    pub fn with_trace(&self, tau: TraceForm) -> Result<Self> {
        let mut instance = self.instance.clone();
        instance.trace = tau;
        Analysis::run(&instance)
    }

    pub fn field(&self) -> FieldSpec {
        self.ca.field()
    }

    /// `I` recomputed under a sampled trace.
    pub fn ideal_for_trace(&self, tau: &TraceForm) -> Result<IdealData> {
        Ok(trace_dependent(&self.ca, &self.grams, &self.strata, tau)?.3)
    }

    /// A subspace of cellular coordinates rewritten in original coordinates.
    pub fn to_ambient_space(&self, s: &SubspaceBasis) -> SubspaceBasis {
        let rows: Vec<_> = s
            .vectors()
            .into_iter()
            .map(|v| self.ca.to_ambient(&Element::from_coeffs(v)).into_coeffs())
            .collect();
        SubspaceBasis::from_spanning(self.field(), self.ca.dim(), &rows).expect("ambient length")
    }

    pub fn rad_ambient(&self) -> SubspaceBasis {
        self.to_ambient_space(&self.rad)
    }

    pub fn ideal_ambient(&self) -> SubspaceBasis {
        self.to_ambient_space(&self.ideal.total)
    }

    /// `I` under `opts.traces` random traces, seeded `opts.seed + i`.
    pub fn sampled_ideals(&self, opts: &Options) -> Result<Vec<IdealData>> {
        (0..opts.traces as u64)
            .map(|i| {
                let tau = random_symmetrizing_trace(&self.instance.algebra, opts.seed.wrapping_add(i))?;
                self.ideal_for_trace(&tau)
            })
            .collect()
    }

    pub fn radical_report(&self, opts: &Options) -> Result<RadicalReport> {
        let others = self.sampled_ideals(opts)?;
        Ok(verify_radical_characterization(&self.strata, &self.ideal, &self.rad, &others))
    }

    /// Reorders each `M(λ)` at random and checks that the Gram matrix is
    /// conjugated accordingly and its determinant is unchanged.
    pub fn gram_permutation_report(&self, count: usize, seed: u64) -> Report {
        let mut report = Report::new("gram permutations");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in &self.grams {
            let l = g.lambda;
            let det = g.phi.det();
            for _ in 0..count {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                let datum = self.instance.datum.permute_indices(l, &perm);
                let permuted = CellularAlgebra::new(&self.instance.algebra, &datum).and_then(|ca| phi_form(&ca, l));
                match permuted {
                    Ok(pg) => {
                        report.check("det G(λ) invariant", pg.phi.det() == det, || {
                            format!("λ={}, perm={perm:?}", self.ca.label(l))
                        });
                        report.check("G(λ) conjugated by the permutation", pg.phi == g.phi.permute_symmetric(&perm), || {
                            format!("λ={}, perm={perm:?}", self.ca.label(l))
                        });
                    }
                    Err(e) => report.fail("permuted datum", e.to_string()),
                }
            }
        }
        report
    }

    /// Every property suite; `opts.traces` random traces for independence.
    pub fn property_report(&self, opts: &Options) -> Report {
        let mut report = Report::new(self.instance.name.clone());
        report.absorb(verify_dual_identities(&self.ca, &self.dcb));
        report.absorb(verify_dual_cellularity(&self.ca, &self.dcb));
        report.absorb(verify_k_identities(&self.ca, &self.dcb, &self.grams, &self.kdata, opts.quadruple_cap, opts.seed));
        report.absorb(verify_ideal_structure(&self.ca, &self.dcb, &self.ideal));
        report.absorb(verify_nilpotency(&self.ca, &self.ideal));
        match self.radical_report(opts) {
            Ok(rr) => report.absorb(rr.report),
            Err(e) => report.fail("radical characterization", e.to_string()),
        }
        report.absorb(check_consequences(&self.ca, &self.grams, &self.kdata, &self.rad, opts.seed));
        let flags = self.battery.flags();
        report.check("semisimplicity flags agree", self.battery.consistent(), || format!("{flags:?}"));
        let expected_rad = self.ca.dim() - self.simples.iter().map(|s| s.dim * s.dim).sum::<usize>();
        report.check("dim rad A = dim A − Σ (dim L_λ)²", self.rad.dim() == expected_rad, || {
            format!("{} != {expected_rad}", self.rad.dim())
        });
        if self.battery.verdict() {
            match wedderburn_basis(&self.ca, &self.dcb, &self.battery) {
                Ok((_, r)) => report.absorb(r),
                Err(e) => report.fail("wedderburn basis", e.to_string()),
            }
        }
        report.absorb(self.gram_permutation_report(GRAM_PERMUTATIONS, opts.seed));
        let vanishing: Vec<usize> = self.ideal.zero_k.clone();
        if let Ok(others) = self.sampled_k_vanishing(opts) {
            if others.iter().any(|o| *o != vanishing) {
                report.note("the set {λ : k_λ = 0} changed under a sampled trace");
            }
        }
        report
    }

    fn sampled_k_vanishing(&self, opts: &Options) -> Result<Vec<Vec<usize>>> {
        (0..opts.traces as u64)
            .map(|i| {
                let tau = random_symmetrizing_trace(&self.instance.algebra, opts.seed.wrapping_add(i))?;
                Ok(trace_dependent(&self.ca, &self.grams, &self.strata, &tau)?.3.zero_k)
            })
            .collect()
    }

    /// Compares against values asserted in a workbench file.
    pub fn expected_report(&self, exp: &Expected) -> Report {
        let mut report = Report::new("expected values");
        if let Some(d) = exp.dim_rad {
            report.check("dim rad A", self.rad.dim() == d, || format!("{} != {d}", self.rad.dim()));
        }
        if let Some(d) = exp.dim_i {
            report.check("dim I", self.ideal.total.dim() == d, || format!("{} != {d}", self.ideal.total.dim()));
        }
        if let Some(s) = exp.semisimple {
            report.check("semisimple", self.battery.verdict() == s, || format!("verdict {}", self.battery.verdict()));
        }
        if let Some(labels) = &exp.k_zero {
            let mut want = labels.clone();
            want.sort();
            let mut got: Vec<String> = self.ideal.zero_k.iter().map(|&l| self.ca.label(l).to_string()).collect();
            got.sort();
            report.check("cells with k = 0", got == want, || format!("{got:?} != {want:?}"));
        }
        report
    }

    pub fn summary(&self) -> Summary {
        let stratum = |l: usize| {
            let mut s = Vec::new();
            for (name, set) in [
                ("0", &self.strata.lambda0),
                ("1", &self.strata.lambda1),
                ("2", &self.strata.lambda2),
                ("3", &self.strata.lambda3),
                ("4", &self.ideal.lambda4),
            ] {
                if set.contains(&l) {
                    s.push(name.to_string());
                }
            }
            s
        };
        let labels = |set: &[usize]| set.iter().map(|&l| self.ca.label(l).to_string()).collect();
        Summary {
            name: self.instance.name.clone(),
            field: self.field().to_string(),
            dim: self.ca.dim(),
            cells: self
                .strata
                .rows
                .iter()
                .map(|r| CellRow {
                    label: r.label.clone(),
                    n: r.n,
                    rank: r.rank,
                    dim_rad: r.dim_rad,
                    dim_simple: r.dim_simple,
                    k: self.kdata[r.lambda].k.to_string(),
                    strata: stratum(r.lambda),
                })
                .collect(),
            strata: StrataView {
                lambda0: labels(&self.strata.lambda0),
                lambda1: labels(&self.strata.lambda1),
                lambda2: labels(&self.strata.lambda2),
                lambda3: labels(&self.strata.lambda3),
                lambda4: labels(&self.ideal.lambda4),
            },
            dim_rad: self.rad.dim(),
            dim_i: self.ideal.total.dim(),
            i_equals_rad: self.ideal.total == self.rad,
            semisimple: self.battery.verdict(),
        }
    }

    /// `D^λ_{U,V}` in original coordinates, rendered with the basis labels.
    pub fn dual_view(&self) -> Vec<DualEntry> {
        let labels = self.instance.algebra.labels();
        ambient_dual(&self.ca, &self.dcb)
            .into_iter()
            .map(|(c, e)| DualEntry {
                lambda: self.ca.label(c.lambda).to_string(),
                u: c.s + 1,
                v: c.t + 1,
                element: e.display_with(labels).to_string(),
                coefficients: e.coeffs().iter().map(|x| x.to_string()).collect(),
            })
            .collect()
    }

    /// Per-cell `I^λ`, `I_D^λ` dimensions and the total, in original coordinates.
    pub fn ideal_view(&self) -> IdealView {
        IdealView {
            cells: self
                .ideal
                .cells
                .iter()
                .map(|c| IdealCell {
                    label: self.ca.label(c.lambda).to_string(),
                    k_zero: self.ideal.zero_k.contains(&c.lambda),
                    dim_c_side: c.c_side.dim(),
                    dim_d_side: c.d_side.dim(),
                })
                .collect(),
            total: SubspaceView::from(&self.ideal_ambient()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellRow {
    pub label: String,
    pub n: usize,
    pub rank: usize,
    pub dim_rad: usize,
    pub dim_simple: Option<usize>,
    pub k: String,
    pub strata: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataView {
    pub lambda0: Vec<String>,
    pub lambda1: Vec<String>,
    pub lambda2: Vec<String>,
    pub lambda3: Vec<String>,
    pub lambda4: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub cells: Vec<CellRow>,
    pub strata: StrataView,
    pub dim_rad: usize,
    pub dim_i: usize,
    pub i_equals_rad: bool,
    pub semisimple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualEntry {
    pub lambda: String,
    pub u: usize,
    pub v: usize,
    pub element: String,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealCell {
    pub label: String,
    pub k_zero: bool,
    pub dim_c_side: usize,
    pub dim_d_side: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealView {
    pub cells: Vec<IdealCell>,
    pub total: SubspaceView,
}

/// The worked example's published values over GF(3).
pub fn worked_example_report(a: &Analysis) -> Report {
    let mut report = Report::new("worked example");
    let field = a.field();
    let dual = ambient_dual(&a.ca, &a.dcb);
    for (idx, want) in paper_s3_expected_dual(field) {
        let got = dual.iter().find(|(i, _)| *i == idx).map(|(_, e)| e);
        report.check("dual element", got == Some(&want), || format!("{idx:?}"));
    }
    let s = a.summary();
    report.check("dim rad A = 4", s.dim_rad == 4, || s.dim_rad.to_string());
    report.check("dim I = 4", s.dim_i == 4, || s.dim_i.to_string());
    report.check("I = rad A", s.i_equals_rad, String::new);
    report.check("Λ₃ = {(3)}", s.strata.lambda3 == ["(3)"], || format!("{:?}", s.strata.lambda3));
    report.check("Λ₁ = {(1^3)}", s.strata.lambda1 == ["(1^3)"], || format!("{:?}", s.strata.lambda1));
    report.check("Λ₂ = {(2,1)}", s.strata.lambda2 == ["(2,1)"], || format!("{:?}", s.strata.lambda2));
    report.check("Λ₄ = {(1^3)}", s.strata.lambda4 == ["(1^3)"], || format!("{:?}", s.strata.lambda4));
    report.check("rank G((2,1)) = 1", a.grams[1].rank == 1, || a.grams[1].rank.to_string());
    report
}

/// Every property suite over every built-in instance, plus the worked
/// example's fixture.
pub fn selftest(opts: &Options) -> Vec<Report> {
    let mut out = Vec::new();
    for inst in builtin_instances() {
        let title = format!("{} over {}", inst.name, inst.algebra.field());
        match Analysis::run(&inst) {
            Ok(a) => {
                let mut r = a.property_report(opts);
                r.name = title;
                if inst.name == "paper-s3" {
                    r.absorb(worked_example_report(&a));
                }
                out.push(r);
            }
            Err(e) => {
                let mut r = Report::new(title);
                r.fail("analysis", e.to_string());
                out.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_paper_s3;

    #[test]
    fn worked_example_fixture() {
        let a = Analysis::run(&gen_paper_s3(FieldSpec::prime(3).unwrap()).unwrap()).unwrap();
        let r = worked_example_report(&a);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn selftest_passes() {
        for r in selftest(&Options::default()) {
            assert!(r.passed(), "{r}\n{:?}", r.failures);
        }
    }
}
