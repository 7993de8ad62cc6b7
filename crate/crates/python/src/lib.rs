//! Python bindings: groups, elements and cuts parsed from the text syntax,
//! plus `run` for whole command lines.

use ordcut::cli::{CliError, Command};
use ordcut::cuts::{Cut as CoreCut, CutSide};
use ordcut::dsl::{self, GroupExpr};
use ordcut::hahnomega::{OmegaCut, OmegaGroup};
use ordcut::lexgroups::{GroupElement, LexGroup};
use pyo3::exceptions::{PySyntaxError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn dsl_err(e: dsl::DslError) -> PyErr {
    match e {
        dsl::DslError::Syntax(s) => PySyntaxError::new_err(s.to_string()),
        dsl::DslError::Domain(d) => PyValueError::new_err(d.to_string()),
    }
}

fn domain_err(e: ordcut::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn side_name(s: CutSide) -> &'static str {
    match s {
        CutSide::MinusSide => "minus",
        CutSide::PlusSide => "plus",
    }
}

/// A finite lexicographic product such as `lex(Z,Q)`.
#[pyclass(name = "Group", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGroup {
    inner: LexGroup,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: dsl::parse_lex_group(text).map_err(dsl_err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn factors(&self) -> Vec<String> {
        self.inner.factors().iter().map(|f| f.to_string()).collect()
    }

    fn element(&self, text: &str) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: dsl::parse_element(&self.inner, text).map_err(dsl_err)?,
        })
    }

    fn cut(&self, text: &str) -> PyResult<PyCut> {
        Ok(PyCut {
            inner: dsl::parse_cut(&self.inner, text).map_err(dsl_err)?,
        })
    }

    /// Levels `k` of the convex subgroups `C k`, from `C 0 = Γ` down to `{0}`.
    fn convex_subgroups(&self) -> Vec<usize> {
        self.inner.convex_subgroups().iter().map(|c| c.level()).collect()
    }

    fn principal_convex_subgroups(&self) -> Vec<usize> {
        self.inner.principal_convex_subgroups().iter().map(|c| c.level()).collect()
    }

    fn hull(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.divisible_hull().0,
        }
    }

    fn discreteness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = self.inner.discreteness();
        let out = PyDict::new(py);
        out.set_item("is_discrete", d.is_discrete)?;
        out.set_item("is_discretely_ordered", d.is_discretely_ordered)?;
        out.set_item("min_positive", d.min_positive.map(|x| x.to_string()))?;
        Ok(out)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner)
    }
}

#[pyclass(name = "Element", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement {
    inner: GroupElement,
}

#[pymethods]
impl PyElement {
    #[getter]
    fn coords(&self) -> Vec<String> {
        self.inner.coords().iter().map(|c| c.to_string()).collect()
    }

    #[getter]
    fn iota(&self) -> Option<usize> {
        self.inner.iota()
    }

    /// `-1`, `0` or `1`.
    fn compare(&self, other: &PyElement) -> PyResult<i8> {
        let o = self.inner.lex_compare(&other.inner).map_err(domain_err)?;
        Ok(o as i8)
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.checked_add(&other.inner).map_err(domain_err)?,
        })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.checked_sub(&other.inner).map_err(domain_err)?,
        })
    }

    fn __neg__(&self) -> PyElement {
        PyElement { inner: -&self.inner }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.inner)
    }
}

/// A cut of a finite lex product.
#[pyclass(name = "Cut", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyCut {
    inner: CoreCut,
}

fn morphism(group: &LexGroup, text: &str) -> PyResult<ordcut::lexgroups::FactorwiseInjection> {
    dsl::parse_morphism(text)
        .map_err(dsl_err)?
        .resolve(group)
        .map_err(domain_err)
}

impl PyCut {
    fn wrap(inner: CoreCut) -> PyCut {
        PyCut { inner }
    }
}

#[pymethods]
impl PyCut {
    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.group().clone(),
        }
    }

    fn member(&self, x: &PyElement) -> PyResult<&'static str> {
        Ok(side_name(self.inner.member(&x.inner).map_err(domain_err)?))
    }

    fn classify(&self) -> String {
        self.inner.classify().to_string()
    }

    /// Level `k` of the invariance subgroup `C k`.
    fn invariance(&self) -> usize {
        self.inner.invariance().level()
    }

    fn translate(&self, x: &PyElement) -> PyResult<PyCut> {
        self.inner.translate(&x.inner).map(PyCut::wrap).map_err(domain_err)
    }

    fn negate(&self) -> PyCut {
        PyCut::wrap(self.inner.negate())
    }

    fn compare(&self, other: &PyCut) -> PyResult<i8> {
        Ok(self.inner.compare(&other.inner).map_err(domain_err)? as i8)
    }

    fn project(&self, level: usize) -> PyResult<PyCut> {
        let theta = self.inner.group().convex_subgroup(level).map_err(domain_err)?;
        self.inner.quotient_image(&theta).map(PyCut::wrap).map_err(domain_err)
    }

    fn trace(&self, level: usize) -> PyResult<PyCut> {
        let theta = self.inner.group().convex_subgroup(level).map_err(domain_err)?;
        self.inner.trace(&theta).map(PyCut::wrap).map_err(domain_err)
    }

    fn transport(&self, outer: usize, inner: usize) -> PyResult<PyCut> {
        let g = self.inner.group();
        let t1 = g.convex_subgroup(outer).map_err(domain_err)?;
        let t2 = g.convex_subgroup(inner).map_err(domain_err)?;
        self.inner.transport(&t1, &t2).map(PyCut::wrap).map_err(domain_err)
    }

    /// Image in the divisible hull under `widen` or `scale(...)`.
    fn push_lower(&self, morphism_text: &str) -> PyResult<PyCut> {
        let m = morphism(self.inner.group(), morphism_text)?;
        self.inner.push_lower(&m).map(PyCut::wrap).map_err(domain_err)
    }

    fn push_upper(&self, morphism_text: &str) -> PyResult<PyCut> {
        let m = morphism(self.inner.group(), morphism_text)?;
        self.inner.push_upper(&m).map(PyCut::wrap).map_err(domain_err)
    }

    /// Preimage of this cut, which lives on the hull of `domain`.
    fn pull(&self, domain: &PyGroup, morphism_text: &str) -> PyResult<PyCut> {
        let m = morphism(&domain.inner, morphism_text)?;
        self.inner.pull(&m).map(PyCut::wrap).map_err(domain_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cut('{}')", self.inner)
    }
}

/// A cut of `hahn_omega(Z)` or `hahn_omega(Q)`.
#[pyclass(name = "OmegaCut", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyOmegaCut {
    inner: OmegaCut,
}

#[pymethods]
impl PyOmegaCut {
    #[new]
    fn new(group: &str, anchor: &str) -> PyResult<Self> {
        let g = match dsl::parse_group(group).map_err(dsl_err)? {
            GroupExpr::Omega(g) => g,
            GroupExpr::Lex(g) => return Err(PyValueError::new_err(format!("{g} is not an ω-sum"))),
        };
        Ok(PyOmegaCut {
            inner: dsl::parse_anchor(g, anchor).map_err(dsl_err)?,
        })
    }

    fn classify(&self) -> String {
        self.inner.classify().to_string()
    }

    fn invariance(&self) -> String {
        self.inner.invariance().to_string()
    }

    fn member(&self, element: &str) -> PyResult<&'static str> {
        let x = dsl::parse_omega_element(self.group(), element).map_err(dsl_err)?;
        Ok(side_name(self.inner.member(&x).map_err(domain_err)?))
    }

    fn witness(&self, element: &str, bound: usize) -> PyResult<Option<String>> {
        let g = dsl::parse_omega_element(self.group(), element).map_err(dsl_err)?;
        Ok(self.inner.witness_search(&g, bound).map_err(domain_err)?.map(|w| w.to_string()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

impl PyOmegaCut {
    fn group(&self) -> OmegaGroup {
        self.inner.group()
    }
}

/// Runs a command line such as `classify lex(Z) "below([3]; C 1)"` and
/// returns its output text.
#[pyfunction]
fn run(line: &str) -> PyResult<String> {
    let cmd = Command::parse_line(line).map_err(|e| match e {
        CliError::Syntax(m) => PySyntaxError::new_err(m),
        CliError::Info(m) => PyValueError::new_err(m),
        CliError::Domain(d) => domain_err(d),
    })?;
    cmd.run().map_err(domain_err)
}

#[pymodule]
fn ordcut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyCut>()?;
    m.add_class::<PyOmegaCut>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
