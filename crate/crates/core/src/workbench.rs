//! The JSON workbench file: an algebra, its cell datum, a trace, and
//! optionally the results the user expects.
//!
//! Scalars are strings (`"3"`, `"-1/2"`), indices are 0-based, structure
//! constants are sparse `[i, j, k, value]` entries.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    random_symmetrizing_trace, validate_algebra, validate_symmetrizing_trace, AlgebraDescriptor, Element,
    StructureConstant, TraceForm,
};
use crate::cell::{validate_cell_datum, CellDatum, CellIndex, CellPoset};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::generators::Instance;
use crate::linalg::Matrix;
use crate::report::Report;

pub const FORMAT_TAG: &str = "cellular-workbench/1";

/// Values a file may assert about its own instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_rad: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    /// Labels of the cells with `k_λ = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_zero: Option<Vec<String>>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        *self == Expected::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub labels: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
}

/// On-disk layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchFile {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Solved from the structure constants when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub poset: PosetFile,
    pub m_sizes: Vec<usize>,
    pub labeling: Vec<[usize; 3]>,
    pub involution: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_basis: Option<Vec<Vec<String>>>,
    /// A symmetrizing trace is sampled with seed 0 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Expected::is_empty")]
    pub expected: Expected,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

fn parse_row(field: FieldSpec, row: &[String], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if row.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} entries, found {}", row.len())));
    }
    row.iter()
        .enumerate()
        .map(|(i, s)| field.parse_scalar(s).map_err(|e| Error::Parse(format!("{what}[{i}]: {e}"))))
        .collect()
}

fn parse_matrix(field: FieldSpec, rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::Parse(format!("{what}: expected {n} rows, found {}", rows.len())));
    }
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(r, row)| parse_row(field, row, n, &format!("{what}[{r}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, n, &parsed)
}

/// The two-sided identity of a unital algebra, if it exists.
pub fn solve_unit(alg: &AlgebraDescriptor) -> Option<Element> {
    let n = alg.dim();
    let field = alg.field();
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            let target = if j == k { field.one() } else { field.zero() };
            rows.push((0..n).map(|i| alg.constant(i, j, k)).collect::<Vec<_>>());
            rhs.push(target.clone());
            rows.push((0..n).map(|i| alg.constant(j, i, k)).collect::<Vec<_>>());
            rhs.push(target);
        }
    }
    let m = Matrix::from_rows(field, n, &rows).ok()?;
    m.solve(&rhs).map(Element::from_coeffs)
}

impl WorkbenchFile {
    pub fn from_instance(inst: &Instance, expected: Expected) -> Self {
        let alg = &inst.algebra;
        let d = &inst.datum;
        WorkbenchFile {
            format: FORMAT_TAG.into(),
            name: Some(inst.name.clone()),
            field: alg.field(),
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            unit: Some(strings(alg.unit().coeffs())),
            structure: alg
                .structure_constants()
                .into_iter()
                .map(|c| (c.i, c.j, c.k, c.value.to_string()))
                .collect(),
            poset: PosetFile {
                labels: d.poset.labels().to_vec(),
                relations: d.poset.relations().iter().map(|&(a, b)| [a, b]).collect(),
            },
            m_sizes: d.m_sizes.clone(),
            labeling: d.labeling.iter().map(|c| [c.lambda, c.s, c.t]).collect(),
            involution: matrix_strings(&d.involution),
            cell_basis: d.cell_basis.as_ref().map(matrix_strings),
            trace: Some(strings(inst.trace.values())),
            expected,
        }
    }

    /// Builds the instance without running the validators.
    pub fn to_instance(&self) -> Result<Instance> {
        if self.format != FORMAT_TAG {
            return Err(Error::Parse(format!("format: expected `{FORMAT_TAG}`, found `{}`", self.format)));
        }
        let field = self.field;
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::Parse(format!("basis: expected {n} labels, found {}", self.basis.len())));
        }
        let mut constants = Vec::with_capacity(self.structure.len());
        for (idx, (i, j, k, v)) in self.structure.iter().enumerate() {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("structure[{idx}]: index out of range for dimension {n}")));
            }
            let value = field.parse_scalar(v).map_err(|e| Error::Parse(format!("structure[{idx}]: {e}")))?;
            constants.push(StructureConstant { i: *i, j: *j, k: *k, value });
        }
        let unit = match &self.unit {
            Some(u) => Element::from_coeffs(parse_row(field, u, n, "unit")?),
            None => Element::zero(field, n),
        };
        let mut algebra = AlgebraDescriptor::new(field, self.basis.clone(), constants, unit)?;
        if self.unit.is_none() {
            let unit = solve_unit(&algebra).ok_or_else(|| Error::Parse("unit: the algebra has no identity".into()))?;
            algebra = AlgebraDescriptor::new(field, self.basis.clone(), algebra.structure_constants(), unit)?;
        }
        let poset = CellPoset::new(
            self.poset.labels.clone(),
            self.poset.relations.iter().map(|r| (r[0], r[1])).collect(),
        )
        .map_err(|e| Error::Parse(format!("poset: {e}")))?;
        let datum = CellDatum {
            poset,
            m_sizes: self.m_sizes.clone(),
            labeling: self.labeling.iter().map(|l| CellIndex::new(l[0], l[1], l[2])).collect(),
            involution: parse_matrix(field, &self.involution, n, "involution")?,
            cell_basis: self.cell_basis.as_ref().map(|m| parse_matrix(field, m, n, "cell_basis")).transpose()?,
        };
        let trace = match &self.trace {
            Some(t) => TraceForm::new(&algebra, parse_row(field, t, n, "trace")?)?,
            None => random_symmetrizing_trace(&algebra, 0)?,
        };
        Ok(Instance { name: self.name.clone().unwrap_or_else(|| "workbench".into()), algebra, datum, trace })
    }
}

/// Algebra axioms, trace, and cell datum, merged into one report.
pub fn validate_instance(inst: &Instance) -> Report {
    let mut report = Report::new(inst.name.clone());
    report.absorb(validate_algebra(&inst.algebra));
    report.absorb(validate_symmetrizing_trace(&inst.algebra, &inst.trace));
    report.absorb(validate_cell_datum(&inst.algebra, &inst.datum));
    report
}

pub fn parse_workbench(text: &str) -> Result<(Instance, Expected)> {
    let file: WorkbenchFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let inst = file.to_instance()?;
    let report = validate_instance(&inst);
    if !report.passed() {
        return Err(Error::Validation(Box::new(report)));
    }
    Ok((inst, file.expected))
}

pub fn load_workbench(path: impl AsRef<Path>) -> Result<(Instance, Expected)> {
    parse_workbench(&fs::read_to_string(path)?)
}

pub fn render_workbench(inst: &Instance, expected: &Expected) -> String {
    let file = WorkbenchFile::from_instance(inst, expected.clone());
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

pub fn save_workbench(path: impl AsRef<Path>, inst: &Instance, expected: &Expected) -> Result<()> {
    fs::write(path, render_workbench(inst, expected))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{builtin_instances, gen_paper_s3};

    #[test]
    fn round_trip_builtins() {
        for inst in builtin_instances() {
            let text = render_workbench(&inst, &Expected::default());
            let (back, exp) = parse_workbench(&text).unwrap();
            assert_eq!(back, inst, "{}", inst.name);
            assert!(exp.is_empty());
            assert_eq!(render_workbench(&back, &exp), text);
        }
    }

    #[test]
    fn unit_is_solved_when_missing() {
        let inst = gen_paper_s3(FieldSpec::prime(3).unwrap()).unwrap();
        let mut file = WorkbenchFile::from_instance(&inst, Expected::default());
        file.unit = None;
        assert_eq!(file.to_instance().unwrap().algebra.unit(), inst.algebra.unit());
    }

    #[test]
    fn non_prime_modulus() {
        let inst = gen_paper_s3(FieldSpec::prime(3).unwrap()).unwrap();
        let text = render_workbench(&inst, &Expected::default()).replace("\"modulus\": 3", "\"modulus\": 4");
        assert!(matches!(parse_workbench(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn broken_associativity() {
        let inst = gen_paper_s3(FieldSpec::rationals()).unwrap();
        let mut file = WorkbenchFile::from_instance(&inst, Expected::default());
        // s1·s1 = 1 becomes s1·s1 = 2
        let entry = file.structure.iter_mut().find(|e| e.0 == 1 && e.1 == 1).unwrap();
        entry.3 = "2".into();
        let text = serde_json::to_string(&file).unwrap();
        match parse_workbench(&text) {
            Err(Error::Validation(report)) => {
                let f = report.first_failure().unwrap();
                assert!(f.check.contains("associativity"), "{f:?}");
                assert!(f.witness.contains("(i,j,k,l)"));
            }
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse_workbench("{\n  \"format\": }") {
            Err(Error::Parse(m)) => assert!(m.starts_with("line 2"), "{m}"),
            other => panic!("{other:?}"),
        }
    }
}
