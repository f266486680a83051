//! Python module `pycoxeter`: presentations, coset enumeration, permutation
//! groups and the polytope checks.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use coxeter_tc::enumerator::{self, EnumerationError, EnumerationLimits, Strategy, DEFAULT_MAX_COSETS};
use coxeter_tc::gf2;
use coxeter_tc::permgroup::{self, Perm};
use coxeter_tc::polytope::{self, StatsOptions};
use coxeter_tc::presentation::{self, Side, ToroidalType};

create_exception!(pycoxeter, CosetLimitError, PyRuntimeError);

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn enum_err(e: EnumerationError) -> PyErr {
    match e {
        EnumerationError::CosetLimitExceeded { .. } => CosetLimitError::new_err(e.to_string()),
        e => value_err(e),
    }
}

fn poly_err(e: polytope::PolytopeError) -> PyErr {
    match e {
        polytope::PolytopeError::Enumeration(e) => enum_err(e),
        e => value_err(e),
    }
}

fn limits(max_cosets: usize, strategy: Option<&str>) -> PyResult<EnumerationLimits> {
    Ok(match strategy {
        Some(s) => EnumerationLimits::new(max_cosets, s.parse::<Strategy>().map_err(value_err)?),
        None => EnumerationLimits::with_max(max_cosets),
    })
}

fn parse_type(s: &str) -> PyResult<ToroidalType> {
    s.parse().map_err(value_err)
}

fn loads(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(frozen, name = "Presentation", module = "pycoxeter")]
pub struct PyPresentation {
    inner: presentation::Presentation,
}

#[pymethods]
impl PyPresentation {
    /// Parses the `.cox` presentation language.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: presentation::parse(text).map_err(value_err)? })
    }

    #[staticmethod]
    fn coxeter(labels: Vec<u32>) -> PyResult<Self> {
        Ok(PyPresentation { inner: presentation::coxeter_presentation(&labels).map_err(value_err)? })
    }

    /// `[3,3,4,3,3]` with facet type `s` and optional vertex-figure type `t`,
    /// e.g. `locally_toroidal("2:double", "3:single")`.
    #[staticmethod]
    #[pyo3(signature = (s, t=None))]
    fn locally_toroidal(s: &str, t: Option<&str>) -> PyResult<Self> {
        let t = t.map(parse_type).transpose()?;
        Ok(PyPresentation { inner: presentation::locally_toroidal_presentation(parse_type(s)?, t) })
    }

    #[staticmethod]
    fn toroidal_base(t: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: presentation::toroidal_base_presentation(parse_type(t)?) })
    }

    #[getter]
    fn ngens(&self) -> usize {
        self.inner.ngens()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn relators(&self) -> Vec<String> {
        self.inner.relators().iter().map(|r| self.inner.display_word(r).to_string()).collect()
    }

    fn subgroup_names(&self) -> Vec<String> {
        self.inner.subgroups().iter().map(|(n, _)| n.clone()).collect()
    }

    /// Coset table of a named subgroup, or of the trivial subgroup.
    #[pyo3(signature = (sub=None, strategy=None, max_cosets=DEFAULT_MAX_COSETS))]
    fn enumerate(&self, py: Python<'_>, sub: Option<&str>, strategy: Option<&str>, max_cosets: usize) -> PyResult<PyCosetTable> {
        let lim = limits(max_cosets, strategy)?;
        let words = match sub {
            Some(name) => self.inner.subgroup(name).map_err(value_err)?.to_vec(),
            None => Vec::new(),
        };
        let p = &self.inner;
        let t = py.detach(|| enumerator::enumerate(p, &words, &lim)).map_err(enum_err)?;
        Ok(PyCosetTable { inner: t })
    }

    #[pyo3(signature = (max_cosets=DEFAULT_MAX_COSETS))]
    fn order(&self, py: Python<'_>, max_cosets: usize) -> PyResult<usize> {
        let p = &self.inner;
        py.detach(|| enumerator::group_order(p, &EnumerationLimits::with_max(max_cosets))).map_err(enum_err)
    }

    /// Facet and vertex counts, order and types as a dict.
    fn polytope_stats(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let p = &self.inner;
        let r = py.detach(|| polytope::polytope_stats(p, &StatsOptions::default())).map_err(poly_err)?;
        loads(py, &serde_json::to_string(&r).map_err(value_err)?)
    }

    fn __repr__(&self) -> String {
        format!("Presentation(ngens={}, relators={})", self.inner.ngens(), self.inner.relators().len())
    }
}

#[pyclass(frozen, name = "CosetTable", module = "pycoxeter")]
pub struct PyCosetTable {
    inner: enumerator::CosetTable,
}

#[pymethods]
impl PyCosetTable {
    #[getter]
    fn index(&self) -> usize {
        self.inner.index()
    }

    #[getter]
    fn max_live(&self) -> usize {
        self.inner.stats().max_live
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn row(&self, coset: usize) -> PyResult<Vec<u32>> {
        if coset >= self.inner.index() {
            return Err(value_err(format!("coset {coset} out of range")));
        }
        Ok(self.inner.row(coset).to_vec())
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.inner.to_bytes())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        Ok(PyCosetTable { inner: enumerator::CosetTable::from_bytes(data).map_err(enum_err)? })
    }

    /// Action on the cosets as a permutation group.
    fn permutation_group(&self) -> PyPermGroup {
        PyPermGroup { inner: self.inner.permutation_rep() }
    }

    fn __len__(&self) -> usize {
        self.inner.index()
    }
}

#[pyclass(frozen, name = "PermGroup", module = "pycoxeter")]
pub struct PyPermGroup {
    inner: permgroup::PermGroup,
}

#[pymethods]
impl PyPermGroup {
    /// Generators as 0-based image lists.
    #[new]
    fn new(degree: usize, generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = generators.into_iter().map(Perm::from_images).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
        Ok(PyPermGroup { inner: permgroup::PermGroup::try_new(degree, gens).map_err(value_err)? })
    }

    /// Generators from 1-based cycle notation, one string per generator.
    #[staticmethod]
    fn from_cycles(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let text = format!("degree {degree}\n{}\n", generators.join("\n"));
        let (n, gens) = permgroup::parse_perm_generators(&text).map_err(value_err)?;
        Ok(PyPermGroup { inner: permgroup::PermGroup::try_new(n, gens.into_iter().map(|(_, p)| p).collect()).map_err(value_err)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn generators(&self) -> Vec<Vec<u32>> {
        self.inner.generators().iter().map(|p| p.images().to_vec()).collect()
    }

    fn order(&self, py: Python<'_>) -> BigUint {
        let g = &self.inner;
        py.detach(|| g.order())
    }

    fn contains(&self, images: Vec<u32>) -> PyResult<bool> {
        Ok(self.inner.contains(&Perm::from_images(images).map_err(value_err)?))
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.inner.orbits()
    }

    fn mix(&self, other: &PyPermGroup) -> PyResult<PyPermGroup> {
        Ok(PyPermGroup { inner: polytope::mix_groups(&self.inner, &other.inner).map_err(poly_err)? })
    }

    /// Checks the intersection property over all pairs of generator subsets.
    #[pyo3(signature = (budget=1 << 24))]
    fn is_string_c_group(&self, py: Python<'_>, budget: u64) -> PyResult<bool> {
        let g = &self.inner;
        Ok(py.detach(|| polytope::verify_string_c_group(g, budget)).map_err(poly_err)?.holds)
    }

    /// Toroidal type of the rank-5 section at `side` ("left" or "right").
    #[pyo3(signature = (side="left"))]
    fn toroidal_type(&self, side: &str) -> PyResult<String> {
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(value_err(format!("side must be left or right, not {other}"))),
        };
        Ok(polytope::identify_toroidal_type(&self.inner, side).map_err(poly_err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, ngens={})", self.inner.degree(), self.inner.generators().len())
    }
}

/// Toroidal type of the mix of two types, e.g. `mix_toroidal("3:single", "2:double")`.
#[pyfunction]
fn mix_toroidal(a: &str, b: &str) -> PyResult<String> {
    Ok(polytope::mix_toroidal(parse_type(a)?, parse_type(b)?).to_string())
}

/// The degree-765 group of the bundled GF(2) generators.
#[pyfunction]
fn omega765(py: Python<'_>) -> PyResult<PyPermGroup> {
    let g = py
        .detach(|| gf2::induced_perm_action(&gf2::block_vectors(24, 8), &gf2::builtin_generators()))
        .map_err(value_err)?;
    Ok(PyPermGroup { inner: g })
}

/// Relator, form, orbit and order checks of the bundled GF(2) generators.
#[pyfunction]
fn gf2_verify(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let gens = gf2::builtin_generators();
    let p = presentation::locally_toroidal_presentation(ToroidalType::double(2), Some(ToroidalType::single(3)));
    let rel = gf2::check_relations(&p, &gens).map_err(value_err)?;
    let h = gf2::block_stabilizer_generators(&gens).map_err(value_err)?;
    let orbit = gf2::vector_orbit(gf2::block_one_all_ones(), &h).map_err(value_err)?.len();
    let g = omega765(py)?;
    let out = serde_json::json!({
        "relators_hold": rel.all_hold(),
        "form_preserved": gens.iter().all(gf2::preserves_phi),
        "orbit_size": orbit,
        "order": g.inner.order().to_string(),
    });
    loads(py, &out.to_string())
}

/// Recomputed known rows with their diffs against the printed values.
#[pyfunction]
fn table1(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let rows = py
        .detach(|| polytope::known_rows().iter().map(|r| polytope::table1_row(r, &StatsOptions::default())).collect::<Result<Vec<_>, _>>())
        .map_err(poly_err)?;
    loads(py, &serde_json::to_string(&rows).map_err(value_err)?)
}

#[pymodule]
fn pycoxeter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyCosetTable>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_function(wrap_pyfunction!(mix_toroidal, m)?)?;
    m.add_function(wrap_pyfunction!(omega765, m)?)?;
    m.add_function(wrap_pyfunction!(gf2_verify, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add("CosetLimitError", m.py().get_type::<CosetLimitError>())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_and_strategy_parsing() {
        assert_eq!(parse_type("3:single").unwrap(), ToroidalType::single(3));
        assert_eq!(parse_type("2200").unwrap(), ToroidalType::double(2));
        assert_eq!(limits(10, Some("felsch")).unwrap().strategy(), Strategy::Felsch);
    }
}
