use proptest::prelude::*;
use proptest::sample::select;
use symcell::algebra::{
    change_of_trace_expand, dual_basis, random_symmetrizing_trace, validate_symmetrizing_trace,
    verify_dual_multiplication,
};
use symcell::analysis::{Analysis, Options};
use symcell::cell::{phi_form, validate_cell_datum, CellularAlgebra};
use symcell::dual::{verify_dual_cellularity, verify_dual_identities};
use symcell::generators::builtin_instances;
use symcell::radical::{verify_nilpotency, verify_radical_characterization};
use symcell::Instance;

fn instances() -> impl Strategy<Value = Instance> {
    select(builtin_instances())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_traces_are_symmetrizing(inst in instances(), seed in any::<u64>()) {
        let tau = random_symmetrizing_trace(&inst.algebra, seed).unwrap();
        prop_assert!(validate_symmetrizing_trace(&inst.algebra, &tau).passed());
        let d = dual_basis(&inst.algebra, &tau).unwrap();
        prop_assert!(verify_dual_multiplication(&inst.algebra, &d).passed());
        prop_assert!(change_of_trace_expand(&inst.algebra, &inst.trace, &tau).is_ok());
    }

    #[test]
    fn dual_structure_under_random_traces(inst in instances(), seed in any::<u64>()) {
        let tau = random_symmetrizing_trace(&inst.algebra, seed).unwrap();
        let base = Analysis::run(&inst).unwrap();
        let a = base.with_trace(tau).unwrap();
        let r = verify_dual_identities(&a.ca, &a.dcb);
        prop_assert!(r.passed(), "{}", r);
        let r = verify_dual_cellularity(&a.ca, &a.dcb);
        prop_assert!(r.passed(), "{}", r);
        prop_assert!(verify_nilpotency(&a.ca, &a.ideal).passed());
        // I does not depend on the trace
        prop_assert_eq!(&a.ideal.total, &base.ideal.total);
        let rr = verify_radical_characterization(&a.strata, &a.ideal, &a.rad, &[]);
        prop_assert!(rr.report.passed(), "{}", rr.report);
        for (g, k) in a.grams.iter().zip(&a.kdata) {
            let e = symcell::Matrix::identity(a.field(), g.n()).scale(&k.k);
            prop_assert_eq!(g.phi.mul(&k.psi.phi).unwrap(), e);
        }
        prop_assert!(a.battery.consistent());
    }

    #[test]
    fn index_permutations_keep_datum_and_determinant(inst in instances(), seed in any::<u64>()) {
        let ca = CellularAlgebra::new(&inst.algebra, &inst.datum).unwrap();
        let lambda = (seed as usize) % ca.num_cells();
        let n = ca.n_lambda(lambda);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize / 7) % n);
        if n > 1 && seed % 2 == 0 {
            perm.swap(0, n - 1);
        }
        let permuted = inst.datum.permute_indices(lambda, &perm);
        prop_assert!(validate_cell_datum(&inst.algebra, &permuted).passed());
        let g = phi_form(&ca, lambda).unwrap();
        let pg = phi_form(&CellularAlgebra::new(&inst.algebra, &permuted).unwrap(), lambda).unwrap();
        prop_assert_eq!(pg.phi.det(), g.phi.det());
        prop_assert_eq!(pg.rank, g.rank);
    }
}

#[test]
fn property_suites_pass_on_builtins() {
    for inst in builtin_instances() {
        let a = Analysis::run(&inst).unwrap();
        let r = a.property_report(&Options::default());
        assert!(r.passed(), "{r}");
    }
}
