//! Python bindings: `import pyquadprime`.

use pyo3::exceptions::{PyIndexError, PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use quadprime::{
    atlas, ideals, sieve, Error, FieldParams, IdealSpec, NormSet, PointClass, Region, RenderConfig, RingElement,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::OutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn element((x, y): (i64, i64)) -> RingElement {
    RingElement::new(x, y)
}

/// Q(√r) together with its ring of integers Z[τ].
#[pyclass(name = "Field", module = "pyquadprime", frozen)]
struct PyField {
    inner: FieldParams,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(radicand: i64) -> PyResult<Self> {
        Ok(PyField {
            inner: FieldParams::new(radicand).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_discriminant(d: i64) -> PyResult<Self> {
        Ok(PyField {
            inner: FieldParams::from_discriminant(d).map_err(to_py)?,
        })
    }

    #[getter]
    fn radicand(&self) -> i64 {
        self.inner.radicand()
    }

    #[getter]
    fn discriminant(&self) -> i64 {
        self.inner.discriminant()
    }

    #[getter]
    fn half_basis(&self) -> bool {
        self.inner.half_basis()
    }

    #[getter]
    fn c(&self) -> Option<i64> {
        self.inner.c()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    fn norm(&self, z: (i64, i64)) -> PyResult<u64> {
        self.inner.norm(element(z)).map_err(to_py)
    }

    fn multiply(&self, a: (i64, i64), b: (i64, i64)) -> PyResult<(i64, i64)> {
        let p = self.inner.multiply(element(a), element(b)).map_err(to_py)?;
        Ok((p.x, p.y))
    }

    fn conjugate(&self, z: (i64, i64)) -> PyResult<(i64, i64)> {
        let c = self.inner.conjugate(element(z)).map_err(to_py)?;
        Ok((c.x, c.y))
    }

    fn is_unit(&self, z: (i64, i64)) -> bool {
        self.inner.is_unit(element(z))
    }

    /// One period of χ_d.
    fn character(&self) -> PyResult<Vec<i8>> {
        Ok(quadprime::build_character(&self.inner)
            .map_err(to_py)?
            .values()
            .to_vec())
    }

    fn chi(&self, x: i64) -> i8 {
        quadprime::kronecker(self.inner.discriminant(), x)
    }

    fn classify_prime(&self, p: u64) -> PyResult<String> {
        Ok(sieve::classify_prime(&self.inner, p).map_err(to_py)?.to_string())
    }

    /// Prime-ideal norm set up to `max`.
    fn sieve(&self, max: u64) -> PyResult<PyNormSet> {
        Ok(PyNormSet {
            inner: sieve::sieve_norms_odd(&self.inner, max).map_err(to_py)?,
        })
    }

    fn validate_ideal(&self, norm: u64, shift: u64) -> bool {
        ideals::validate_ideal(&self.inner, IdealSpec::new(norm, shift))
    }

    fn conjugate_ideal(&self, norm: u64, shift: u64) -> PyResult<(u64, u64)> {
        let c = ideals::conjugate_ideal(&self.inner, IdealSpec::new(norm, shift)).map_err(to_py)?;
        Ok((c.norm, c.shift))
    }

    fn ideal_contains(&self, norm: u64, shift: u64, z: (i64, i64)) -> PyResult<bool> {
        ideals::contains(&self.inner, IdealSpec::new(norm, shift), element(z)).map_err(to_py)
    }

    fn default_ideal(&self) -> Option<(u64, u64)> {
        ideals::find_default_ideal(&self.inner, 10_000).map(|i| (i.norm, i.shift))
    }

    /// Text or SVG atlas of the box `|x|, |y| ≤ size`.
    #[pyo3(signature = (size, ideal=None, format="text"))]
    fn atlas(&self, size: u32, ideal: Option<(u64, u64)>, format: &str) -> PyResult<String> {
        let region = Region::symmetric(size);
        let max = atlas::region_max_norm(&self.inner, region).map_err(to_py)?.max(2);
        let set = sieve::sieve_norms_odd(&self.inner, max).map_err(to_py)?;
        let ideal = ideal.map(|(m, s)| IdealSpec::new(m, s));
        let a = atlas::enumerate_atlas(&self.inner, region, &set, ideal).map_err(to_py)?;
        match format {
            "text" => Ok(atlas::render_text(&a, &self.inner)),
            "svg" => Ok(atlas::render_svg(&a, &self.inner, &RenderConfig::default())),
            other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        }
    }

    /// Point class name for `z`, sieving just far enough to decide it.
    #[pyo3(signature = (z, ideal=None))]
    fn classify_point(&self, z: (i64, i64), ideal: Option<(u64, u64)>) -> PyResult<&'static str> {
        let z = element(z);
        let n = self.inner.norm(z).map_err(to_py)?;
        let set = sieve::sieve_norms_odd(&self.inner, n.max(2)).map_err(to_py)?;
        let ideal = ideal.map(|(m, s)| IdealSpec::new(m, s));
        let class = atlas::classify_point(&self.inner, &set, ideal, z).map_err(to_py)?;
        Ok(match class {
            PointClass::Unit => "unit",
            PointClass::Prime => "prime",
            PointClass::IdealClassI => "ideal",
            PointClass::IdealClassConjI => "ideal-conj",
            PointClass::Other => "other",
        })
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.radicand())
    }
}

#[pyclass(name = "NormSet", module = "pyquadprime", frozen)]
struct PyNormSet {
    inner: NormSet,
}

#[pymethods]
impl PyNormSet {
    #[getter]
    fn max(&self) -> u64 {
        self.inner.max()
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.d()
    }

    fn members(&self) -> Vec<u64> {
        self.inner.iter().collect()
    }

    fn is_prime_norm(&self, n: u64) -> PyResult<bool> {
        self.inner.is_prime_norm(n).map_err(to_py)
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.inner.to_binary())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        Ok(PyNormSet {
            inner: NormSet::from_binary(data).map_err(to_py)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, n: u64) -> bool {
        self.inner.contains(n)
    }
}

#[pyfunction]
fn kronecker(a: i64, b: i64) -> i8 {
    quadprime::kronecker(a, b)
}

#[pyfunction]
fn factorize(n: i64) -> PyResult<Vec<(u64, u32)>> {
    Ok(quadprime::factorize(n).map_err(to_py)?.factors().to_vec())
}

#[pyfunction]
fn squarefree_reduce(n: i64) -> PyResult<(i64, u64)> {
    quadprime::squarefree_reduce(n).map_err(to_py)
}

#[pyfunction]
fn ufd_candidate_real(r: i64) -> PyResult<bool> {
    quadprime::ufd_candidate_real(r).map_err(to_py)
}

#[pymodule]
fn pyquadprime(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyNormSet>()?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(ufd_candidate_real, m)?)?;
    Ok(())
}
