use symcell::generators::{builtin_instances, gen_paper_s3};
use symcell::workbench::{load_workbench, save_workbench, Expected};
use symcell::{Error, FieldSpec};

#[test]
fn save_then_load_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    for (i, inst) in builtin_instances().into_iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        let expected = Expected { dim_rad: Some(0), ..Default::default() };
        save_workbench(&path, &inst, &expected).unwrap();
        let first = std::fs::read(&path).unwrap();
        let (back, exp) = load_workbench(&path).unwrap();
        assert_eq!(back, inst);
        assert_eq!(exp, expected);
        save_workbench(&path, &back, &exp).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), first, "{}", inst.name);
    }
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(load_workbench("/nonexistent/file.json"), Err(Error::Io(_))));
}

#[test]
fn broken_involution_is_rejected_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut inst = gen_paper_s3(FieldSpec::prime(3).unwrap()).unwrap();
    // identity instead of inversion: not an anti-automorphism of S3
    inst.datum.involution = symcell::Matrix::identity(inst.algebra.field(), 6);
    save_workbench(&path, &inst, &Expected::default()).unwrap();
    match load_workbench(&path) {
        Err(Error::Validation(r)) => assert!(r.failures.iter().any(|f| f.check.contains("C2")), "{r}"),
        other => panic!("{other:?}"),
    }
}
