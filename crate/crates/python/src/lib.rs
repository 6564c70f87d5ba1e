//! Python bindings: rings, ideals, modules, Ext, the differents and the
//! script runner.

use std::sync::Arc;

use jacal::algebra::{Field, MonomialOrder, PolyMatrix, PolyRing, Polynomial};
use jacal::differents::{self, NormalizationData};
use jacal::dsl::{self, ExecOptions};
use jacal::groebner::{Ideal as CoreIdeal, QuotientRing};
use jacal::homology::{self, FPModule, Subquotient};
use jacal::verify;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: jacal::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn parse_field(field: &str) -> PyResult<Field> {
    match field {
        "QQ" | "Q" => Ok(Field::Rational),
        f => {
            let p = f
                .strip_prefix("GF(")
                .and_then(|s| s.strip_suffix(')'))
                .unwrap_or(f)
                .parse::<u64>()
                .map_err(|_| PyValueError::new_err(format!("unknown field {f:?}; use \"QQ\" or \"GF(p)\"")))?;
            Field::prime(p).map_err(err)
        }
    }
}

fn parse_order(order: &str) -> PyResult<MonomialOrder> {
    match order {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        o => Err(PyValueError::new_err(format!("unknown order {o:?}"))),
    }
}

/// `field[vars] / (relations)`.
#[pyclass(frozen)]
struct Ring {
    inner: Arc<QuotientRing>,
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (field, vars, relations = Vec::new(), order = "grevlex"))]
    fn new(field: &str, vars: Vec<String>, relations: Vec<String>, order: &str) -> PyResult<Ring> {
        let a = PolyRing::new(parse_field(field)?, vars, parse_order(order)?);
        let rels = relations.iter().map(|r| a.parse(r)).collect::<jacal::Result<Vec<_>>>().map_err(err)?;
        Ok(Ring {
            inner: QuotientRing::new(&a, rels).map_err(err)?,
        })
    }

    fn ideal(&self, gens: Vec<String>) -> PyResult<Ideal> {
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        Ok(Ideal {
            inner: self.inner.parse_ideal(&gens).map_err(err)?,
        })
    }

    fn maximal_ideal(&self) -> Ideal {
        Ideal {
            inner: self.inner.maximal_ideal(),
        }
    }

    /// Canonical normal form of a polynomial.
    fn reduce(&self, poly: &str) -> PyResult<String> {
        Ok(self.inner.parse(poly).map_err(err)?.to_string())
    }

    fn krull_dimension(&self) -> PyResult<usize> {
        self.inner.krull_dimension().value().map_err(err)
    }

    /// `dim_k R`, or None when infinite.
    fn vector_dim(&self) -> Option<usize> {
        self.inner.vector_space_dimension()
    }

    /// `(depth, projective dimension)` over the ambient polynomial ring.
    fn depth_and_pd(&self) -> PyResult<(usize, usize)> {
        homology::depth_and_pd(&self.inner).map_err(err)
    }

    fn jacobian_ideal(&self) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: differents::jacobian_ideal(&self.inner).map_err(err)?,
        })
    }

    /// Kaehler different over `k[thetas]`.
    #[pyo3(signature = (thetas = Vec::new()))]
    fn kaehler_different(&self, thetas: Vec<String>) -> PyResult<Ideal> {
        let base = self.normalization(&thetas)?;
        Ok(Ideal {
            inner: differents::kaehler_different(&self.inner, &base).map_err(err)?,
        })
    }

    /// Noether different over `k[thetas]`.
    #[pyo3(signature = (thetas = Vec::new()))]
    fn noether_different(&self, thetas: Vec<String>) -> PyResult<Ideal> {
        let base = self.normalization(&thetas)?;
        Ok(Ideal {
            inner: differents::noether_different(&self.inner, &base).map_err(err)?,
        })
    }

    /// `"xi0 = noether"` or `"xi0 <= noether"`.
    #[pyo3(signature = (thetas = Vec::new()))]
    fn tor_vanishing(&self, thetas: Vec<String>) -> PyResult<String> {
        let base = self.normalization(&thetas)?;
        let t = differents::tor_vanishing_certifies_equality(&self.inner, &base).map_err(err)?;
        Ok(t.status.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.inner)
    }
}

impl Ring {
    fn normalization(&self, thetas: &[String]) -> PyResult<NormalizationData> {
        if thetas.is_empty() {
            return Ok(NormalizationData::base_field(&self.inner));
        }
        let t = thetas.iter().map(|s| self.inner.parse(s)).collect::<jacal::Result<Vec<_>>>().map_err(err)?;
        NormalizationData::new(&self.inner, t).map_err(err)
    }
}

#[pyclass(frozen)]
struct Ideal {
    inner: CoreIdeal,
}

#[pymethods]
impl Ideal {
    /// Reduced Groebner basis, lifted to the polynomial ring.
    fn basis(&self) -> Vec<String> {
        strings(&self.inner.basis())
    }

    fn generators(&self) -> Vec<String> {
        strings(self.inner.generators())
    }

    fn normal_form(&self, poly: &str) -> PyResult<String> {
        let p = self.inner.ring().parse(poly).map_err(err)?;
        Ok(self.inner.normal_form(&p).map_err(err)?.to_string())
    }

    fn contains(&self, poly: &str) -> PyResult<bool> {
        let p = self.inner.ring().parse(poly).map_err(err)?;
        self.inner.contains(&p).map_err(err)
    }

    fn radical_contains(&self, poly: &str) -> PyResult<bool> {
        let p = self.inner.ring().parse(poly).map_err(err)?;
        self.inner.radical_contains(&p).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn is_subset_of(&self, other: &Ideal) -> PyResult<bool> {
        self.inner.is_subset_of(&other.inner).map_err(err)
    }

    fn sum(&self, other: &Ideal) -> PyResult<Ideal> {
        self.wrap(self.inner.sum(&other.inner))
    }

    fn product(&self, other: &Ideal) -> PyResult<Ideal> {
        self.wrap(self.inner.product(&other.inner))
    }

    fn power(&self, n: i64) -> PyResult<Ideal> {
        self.wrap(self.inner.power(n))
    }

    fn intersect(&self, other: &Ideal) -> PyResult<Ideal> {
        self.wrap(self.inner.intersect(&other.inner))
    }

    /// `(self : other)`.
    fn colon(&self, other: &Ideal) -> PyResult<Ideal> {
        self.wrap(self.inner.colon(&other.inner))
    }

    fn __eq__(&self, other: &Ideal) -> PyResult<bool> {
        Ok(self.inner.ring().same_as(other.inner.ring()) && self.inner.equals(&other.inner).map_err(err)?)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ideal{}", self.inner)
    }
}

impl Ideal {
    fn wrap(&self, r: jacal::Result<CoreIdeal>) -> PyResult<Ideal> {
        Ok(Ideal { inner: r.map_err(err)? })
    }
}

/// A finitely presented module.
#[pyclass(frozen)]
struct Module {
    inner: FPModule,
}

#[pymethods]
impl Module {
    /// Cokernel of a matrix given as rows of polynomial strings.
    #[staticmethod]
    fn coker(ring: &Ring, rows: Vec<Vec<String>>) -> PyResult<Module> {
        let a = ring.inner.ambient();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| a.parse(s)).collect::<jacal::Result<Vec<_>>>())
            .collect::<jacal::Result<Vec<_>>>()
            .map_err(err)?;
        let m = PolyMatrix::from_rows(a, rows).map_err(err)?;
        Ok(Module {
            inner: FPModule::from_matrix(&ring.inner, &m).map_err(err)?,
        })
    }

    /// `R/J`.
    #[staticmethod]
    fn quotient(ideal: &Ideal) -> Module {
        Module {
            inner: FPModule::cyclic(&ideal.inner),
        }
    }

    /// `J` as a module.
    #[staticmethod]
    fn ideal(ideal: &Ideal) -> PyResult<Module> {
        Ok(Module {
            inner: FPModule::ideal_module(&ideal.inner).map_err(err)?,
        })
    }

    #[staticmethod]
    fn residue_field(ring: &Ring) -> Module {
        Module {
            inner: FPModule::residue_field(&ring.inner),
        }
    }

    #[staticmethod]
    fn free(ring: &Ring, rank: usize) -> Module {
        Module {
            inner: FPModule::free(&ring.inner, rank),
        }
    }

    fn generator_count(&self) -> usize {
        self.inner.generator_count()
    }

    fn annihilator(&self) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.annihilator().map_err(err)?,
        })
    }

    fn fitting_ideal(&self, j: usize) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: differents::fitting_ideal(&self.inner, j).map_err(err)?,
        })
    }

    /// Ranks and maps of a free resolution of the given length.
    fn resolution(&self, length: usize) -> PyResult<Resolution> {
        let r = homology::free_resolution(&self.inner, Some(length)).map_err(err)?;
        Ok(Resolution {
            ranks: r.ranks().to_vec(),
            maps: r
                .maps()
                .iter()
                .map(|m| (0..m.rows()).map(|i| strings(&m.row(i))).collect())
                .collect(),
        })
    }

    /// `Ext^n(self, target)`.
    fn ext(&self, n: usize, target: &Module) -> PyResult<Ext> {
        Ok(Ext {
            inner: homology::ext_module(n, &self.inner, &target.inner).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, get_all)]
struct Resolution {
    ranks: Vec<usize>,
    /// Row-major matrices of canonical polynomial strings.
    maps: Vec<Vec<Vec<String>>>,
}

/// An Ext module as cycles modulo boundaries.
#[pyclass(frozen)]
struct Ext {
    inner: Subquotient,
}

#[pymethods]
impl Ext {
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Whether multiplication by `poly` is zero.
    fn acts_zero(&self, poly: &str) -> PyResult<bool> {
        let p = self.inner.ring().parse(poly).map_err(err)?;
        self.inner.acts_zero(&p).map_err(err)
    }

    fn annihilator(&self) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.annihilator().map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Runs a script; returns `(output, exit_code)` with exit codes 0 ok,
/// 1 failed assertion, 2 error.
#[pyfunction]
#[pyo3(signature = (source, format = "text", smax = verify::DEFAULT_S_MAX, order = "grevlex"))]
fn run_script(source: &str, format: &str, smax: usize, order: &str) -> PyResult<(String, u8)> {
    let opts = ExecOptions {
        s_max: smax,
        order: parse_order(order)?,
    };
    let report = dsl::run_source(source, &opts);
    let out = match format {
        "text" => report.to_text(),
        "json" => report.to_json().to_string(),
        f => return Err(PyValueError::new_err(format!("unknown format {f:?}"))),
    };
    Ok((out, report.exit_code() as u8))
}

/// Runs the built-in example fixtures; returns `(report, all_passed)`.
#[pyfunction]
fn run_corpus() -> (String, bool) {
    let report = verify::run_example_corpus(&ExecOptions::default());
    (report.to_string(), report.all_passed())
}

#[pymodule]
#[pyo3(name = "jacal")]
fn jacal_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Ideal>()?;
    m.add_class::<Module>()?;
    m.add_class::<Resolution>()?;
    m.add_class::<Ext>()?;
    m.add_function(wrap_pyfunction!(run_script, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    Ok(())
}
