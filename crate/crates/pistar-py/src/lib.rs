//! Python bindings: algebras, free *-polynomials, codimension and
//! cocharacter computations, generating-set verification, and the claim
//! suite.

use pistar::cocharacter::cocharacter_table;
use pistar::codim::{codim, codim_sequence, per_signature, proper_from_codim};
use pistar::free_star::{is_identity, parse_poly, star_free, Polynomial, TypedVariable, VarType};
use pistar::star_algebra::{direct_sum, resolve_key, StarAlgebra, CATALOG_KEYS};
use pistar::tideal::{verify_tideal, GeneratorSet};
use pistar::verify::{
    generator_source as gen_source, reconstruction_roundtrip, registry, run_claims,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite-dimensional superalgebra with superinvolution.
#[pyclass(frozen)]
struct Algebra {
    inner: StarAlgebra,
}

#[pymethods]
impl Algebra {
    /// Look up a catalog key; `+` builds direct sums (e.g. `"C3_i2+G2_tau"`).
    #[staticmethod]
    fn catalog(key: &str) -> PyResult<Self> {
        Ok(Algebra {
            inner: resolve_key(key).map_err(value_err)?,
        })
    }

    /// Deserialize from the JSON interchange format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Algebra {
            inner: StarAlgebra::from_json_str(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis_labels.clone()
    }

    #[getter]
    fn unital(&self) -> bool {
        self.inner.unit.is_some()
    }

    /// Dimensions of the components `0+`, `0-`, `1+`, `1-`.
    #[getter]
    fn component_dims(&self) -> PyResult<[usize; 4]> {
        Ok(self.inner.components().map_err(value_err)?.dims())
    }

    /// Axiom violations (empty list = valid).
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn direct_sum(&self, other: &Algebra) -> Algebra {
        Algebra {
            inner: direct_sum(&self.inner, &other.inner),
        }
    }

    /// The codimension `c_n`.
    fn codim(&self, n: usize) -> PyResult<u64> {
        codim(&self.inner, n).map_err(value_err)
    }

    /// The sequence `c_0..c_n`.
    fn codims(&self, n: usize) -> PyResult<Vec<u64>> {
        Ok(codim_sequence(&self.inner, n).map_err(value_err)?.c)
    }

    /// The proper sequence `gamma_0..gamma_n` via the inverse binomial
    /// transform.
    fn proper_codims(&self, n: usize) -> PyResult<Vec<u64>> {
        let seq = codim_sequence(&self.inner, n).map_err(value_err)?;
        proper_from_codim(&seq.c).map_err(value_err)
    }

    /// Per-signature codimensions at degree `n` as
    /// `[((n1, n2, n3, n4), codim), ...]`.
    fn per_signature(&self, n: usize) -> PyResult<Vec<([usize; 4], usize)>> {
        Ok(per_signature(&self.inner, n)
            .map_err(value_err)?
            .into_iter()
            .map(|r| (r.sig.0, r.codim))
            .collect())
    }

    /// Nonzero proper cocharacter multiplicities (degree ≤ 2) as
    /// `[(multipartition, multiplicity), ...]`.
    fn cocharacters(&self) -> PyResult<Vec<(String, usize)>> {
        let t = cocharacter_table(&self.inner).map_err(value_err)?;
        Ok(t.nonzero()
            .into_iter()
            .map(|(mp, m)| (mp.to_string(), m))
            .collect())
    }

    /// The nonzero part rendered as a character sum.
    fn character_sum(&self) -> PyResult<String> {
        Ok(cocharacter_table(&self.inner)
            .map_err(value_err)?
            .character_sum())
    }

    /// Whether the multilinear polynomial vanishes under every
    /// type-respecting evaluation.
    fn is_identity(&self, p: &Poly) -> PyResult<bool> {
        is_identity(&self.inner, &p.inner).map_err(value_err)
    }

    /// Verify a generating set (generator-file text) degree by degree up
    /// to `max_degree`.
    fn verify_generators(&self, text: &str, max_degree: usize) -> PyResult<TidealOutcome> {
        let gens = GeneratorSet::parse(text).map_err(value_err)?;
        let report = verify_tideal(&self.inner, &gens, max_degree).map_err(value_err)?;
        Ok(TidealOutcome {
            verified: report.verified,
            generators: report.generators.clone(),
            notes: report.expansion_notes.clone(),
            degrees: report
                .degrees
                .iter()
                .map(|d| (d.n, d.consequence_dim, d.identity_dim, d.verdict))
                .collect(),
        })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim={})", self.inner.name, self.inner.dim)
    }
}

/// A polynomial in the free *-algebra on typed variables.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Poly {
    inner: Polynomial,
}

#[pymethods]
impl Poly {
    /// Parse grammar text, e.g. `"[x1:0+, x2:1-] - 2 x3:0- o x4:1+"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Poly {
            inner: parse_poly(text).map_err(value_err)?,
        })
    }

    /// The variable `x{index}:{vtype}` with `vtype` in
    /// `{"0+", "0-", "1+", "1-"}`.
    #[staticmethod]
    fn var(index: u32, vtype: &str) -> PyResult<Self> {
        let t = VarType::ALL
            .into_iter()
            .find(|t| t.label() == vtype)
            .ok_or_else(|| value_err(format!("unknown variable type {vtype:?}")))?;
        Ok(Poly {
            inner: Polynomial::var(TypedVariable { index, vtype: t }),
        })
    }

    fn __add__(&self, other: &Poly) -> Poly {
        Poly {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &Poly) -> Poly {
        Poly {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &Poly) -> Poly {
        Poly {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __neg__(&self) -> Poly {
        Poly {
            inner: self.inner.neg(),
        }
    }

    fn commutator(&self, other: &Poly) -> Poly {
        Poly {
            inner: self.inner.commutator(&other.inner),
        }
    }

    /// The Jordan product `pq + qp`.
    fn jordan(&self, other: &Poly) -> Poly {
        Poly {
            inner: self.inner.jordan(&other.inner),
        }
    }

    /// The formal superinvolution.
    fn star(&self) -> Poly {
        Poly {
            inner: star_free(&self.inner),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_multilinear(&self) -> bool {
        self.inner.is_multilinear()
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().iter().map(|v| v.to_string()).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }
}

/// Outcome of a generating-set verification.
#[pyclass(frozen, get_all)]
struct TidealOutcome {
    verified: bool,
    generators: Vec<String>,
    notes: Vec<String>,
    /// `(degree, consequence_dim, identity_dim, ok)` per degree.
    degrees: Vec<(usize, usize, usize, bool)>,
}

#[pymethods]
impl TidealOutcome {
    fn __repr__(&self) -> String {
        format!(
            "TidealOutcome(verified={}, degrees={:?})",
            self.verified, self.degrees
        )
    }
}

/// Outcome of the claim suite.
#[pyclass(frozen, get_all)]
struct SuiteOutcome {
    total: usize,
    passed: usize,
    failed: usize,
    /// `(id, pass, computed)` per claim, sorted by id.
    claims: Vec<(String, bool, String)>,
    markdown: String,
}

#[pymethods]
impl SuiteOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SuiteOutcome(total={}, passed={}, failed={})",
            self.total, self.passed, self.failed
        )
    }
}

/// Outcome of a reconstruction round-trip.
#[pyclass(frozen, get_all)]
struct RoundtripOutcome {
    input: String,
    blocks: Vec<String>,
    resolved: Option<Vec<String>>,
    #[pyo3(name = "ok")]
    pass: bool,
    detail: String,
}

#[pymethods]
impl RoundtripOutcome {
    fn __repr__(&self) -> String {
        format!(
            "RoundtripOutcome(input={}, ok={}, resolved={:?})",
            self.input, self.pass, self.resolved
        )
    }
}

/// The catalog keys in canonical order.
#[pyfunction]
fn catalog_keys() -> Vec<String> {
    CATALOG_KEYS.iter().map(|k| k.to_string()).collect()
}

/// The recorded generating-set text for a key, when one exists.
#[pyfunction]
fn generator_source(key: &str) -> Option<String> {
    gen_source(key).map(|s| s.to_string())
}

/// Run the claim suite, optionally filtered by id prefix and capped in
/// degree.
#[pyfunction]
#[pyo3(signature = (only=None, max_n=None))]
fn run_suite(only: Option<&str>, max_n: Option<usize>) -> SuiteOutcome {
    let report = run_claims(&registry(), only, max_n);
    SuiteOutcome {
        total: report.total,
        passed: report.passed,
        failed: report.failed,
        claims: report
            .results
            .iter()
            .map(|r| (r.id.clone(), r.pass, r.computed.clone()))
            .collect(),
        markdown: report.markdown(),
    }
}

/// Reconstruct an algebra from its own multiplicity profile and check the
/// round-trip up to degree `max_n`.
#[pyfunction]
fn roundtrip(key: &str, max_n: usize) -> PyResult<RoundtripOutcome> {
    let r = reconstruction_roundtrip(key, max_n).map_err(value_err)?;
    Ok(RoundtripOutcome {
        input: r.input,
        blocks: r.blocks.iter().map(|b| b.to_string()).collect(),
        resolved: r.resolved,
        pass: r.pass,
        detail: r.detail,
    })
}

#[pymodule]
fn pistar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Poly>()?;
    m.add_class::<TidealOutcome>()?;
    m.add_class::<SuiteOutcome>()?;
    m.add_class::<RoundtripOutcome>()?;
    m.add_function(wrap_pyfunction!(catalog_keys, m)?)?;
    m.add_function(wrap_pyfunction!(generator_source, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(roundtrip, m)?)?;
    Ok(())
}
