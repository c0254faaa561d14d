//! Python bindings: polynomial rings over `F_p`, permanents, Frobenius-power
//! checks and the claim-level verifications, with reports as plain dicts.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use permcheck_core::fppoly::{MonomialOrder, PolyRing, Polynomial, PrimeModulus, TruncationContext, VariableSpace};
use permcheck_core::frobcheck::{
    colon_membership, fedder_ci_check, fedder_coefficient_fullsupport, glassbrenner_witness_check, FedderMethod,
    ScanOptions,
};
use permcheck_core::linmember::{member_bounded, MembershipInstance};
use permcheck_core::report::LemmaReport;
use permcheck_core::shapes::{
    build_matrix, full_permanent, permanent_eval, permanent_eval_dp, permanent_eval_naive, permanental_generators,
    IdealPresentation, IdealStructure, MatrixShape,
};
use permcheck_core::witnesses::{self, minimal_primes_generic, minimal_primes_symmetric, MinimalPrime};
use permcheck_core::Error;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

pyo3::create_exception!(pypermcheck, PermcheckError, PyValueError, "Raised for any error from the core library.");

fn to_py(err: Error) -> PyErr {
    match err {
        Error::ResourceLimit(msg) => PyMemoryError::new_err(msg),
        other => PermcheckError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for permcheck_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn parse_shape(shape: &str) -> PyResult<MatrixShape> {
    shape.parse().py()
}

fn order(ring: &PolyRing, name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::lex(ring.nvars())),
        "grlex" => Ok(MonomialOrder::grlex(ring.nvars())),
        other => Err(PermcheckError::new_err(format!("unknown order `{other}` (lex or grlex)"))),
    }
}

/// `F_p[x_1, .., x_v]` with named variables.
#[pyclass(name = "Ring", module = "pypermcheck", frozen)]
struct PyRing {
    inner: Arc<PolyRing>,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(names: Vec<String>, p: u32) -> PyResult<Self> {
        let space = VariableSpace::new(names).py()?;
        Ok(PyRing { inner: PolyRing::new(space, p).py()? })
    }

    /// Ring of the matrix `shape` ("generic:3x4", "symmetric:3", "hankel:3").
    #[staticmethod]
    fn for_shape(shape: &str, p: u32) -> PyResult<Self> {
        let (_, space) = build_matrix(parse_shape(shape)?).py()?;
        Ok(PyRing { inner: PolyRing::new(space, p).py()? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.space().names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.nvars()
    }

    fn parse(&self, text: &str) -> PyResult<PyPolynomial> {
        Ok(Polynomial::parse(&self.inner, text).py()?.into())
    }

    fn var(&self, name: &str) -> PyResult<PyPolynomial> {
        let i = self
            .inner
            .space()
            .index_of(name)
            .ok_or_else(|| PermcheckError::new_err(format!("unknown variable `{name}`")))?;
        Ok(Polynomial::var(&self.inner, i).into())
    }

    fn one(&self) -> PyPolynomial {
        Polynomial::one(&self.inner).into()
    }

    fn zero(&self) -> PyPolynomial {
        Polynomial::zero(&self.inner).into()
    }

    fn __repr__(&self) -> String {
        format!("Ring(F_{}, [{}])", self.inner.p(), self.inner.space().names().join(", "))
    }
}

/// Immutable sparse polynomial; arithmetic requires both sides in the same ring.
#[pyclass(name = "Polynomial", module = "pypermcheck", frozen, eq)]
#[derive(PartialEq)]
struct PyPolynomial {
    inner: Polynomial,
}

impl From<Polynomial> for PyPolynomial {
    fn from(inner: Polynomial) -> Self {
        PyPolynomial { inner }
    }
}

#[pymethods]
impl PyPolynomial {
    fn __add__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(self.inner.add(&other.inner).py()?.into())
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(self.inner.sub(&other.inner).py()?.into())
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(self.inner.mul(&other.inner).py()?.into())
    }

    fn __neg__(&self) -> PyPolynomial {
        self.inner.neg().into()
    }

    fn __pow__(&self, k: u32, modulo: Option<Py<PyAny>>) -> PyResult<PyPolynomial> {
        if modulo.is_some() {
            return Err(PermcheckError::new_err("three-argument pow is not supported"));
        }
        Ok(self.inner.pow(k).py()?.into())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.render())
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.ring().clone() }
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `[(exponents, coefficient), ...]` in descending graded-lex order.
    fn terms(&self) -> Vec<(Vec<u16>, u32)> {
        self.inner.terms().iter().map(|(m, c)| (m.exponents().to_vec(), *c)).collect()
    }

    /// Reduction modulo `(x_1^q, .., x_v^q)`, `q = p^e`.
    #[pyo3(signature = (e = 1))]
    fn truncate(&self, e: u32) -> PyResult<PyPolynomial> {
        let modulus = PrimeModulus::new(self.inner.p() as u64, e).py()?;
        let ctx = TruncationContext::new(self.inner.ring(), modulus).py()?;
        Ok(ctx.truncate(&self.inner).py()?.into())
    }

    fn evaluate(&self, point: Vec<u32>) -> PyResult<u32> {
        self.inner.evaluate(&point).py()
    }

    #[pyo3(signature = (order_name = "grlex"))]
    fn leading_term(&self, order_name: &str) -> PyResult<(Vec<u16>, u32)> {
        let ord = order(self.inner.ring(), order_name)?;
        let (m, c) = self.inner.leading_term(&ord).py()?;
        Ok((m.exponents().to_vec(), c))
    }

    /// Quotient when `divisor` divides exactly, else `None`.
    #[pyo3(signature = (divisor, order_name = "grlex"))]
    fn exact_divide(&self, divisor: &PyPolynomial, order_name: &str) -> PyResult<Option<PyPolynomial>> {
        let ord = order(self.inner.ring(), order_name)?;
        Ok(self.inner.exact_divide(&divisor.inner, &ord).py()?.map(Into::into))
    }
}

fn polys(items: &[Bound<'_, PyPolynomial>]) -> PyResult<Vec<Polynomial>> {
    if items.is_empty() {
        return Err(PermcheckError::new_err("at least one polynomial is required"));
    }
    Ok(items.iter().map(|p| p.get().inner.clone()).collect())
}

fn report_dict<'py>(py: Python<'py>, rep: &LemmaReport) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(rep).map_err(|e| PermcheckError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Numeric permanent of a square matrix over `F_p`.
#[pyfunction]
#[pyo3(signature = (values, p, method = "ryser"))]
fn permanent(values: Vec<Vec<u32>>, p: u32, method: &str) -> PyResult<u32> {
    match method {
        "ryser" => permanent_eval(&values, p),
        "dp" => permanent_eval_dp(&values, p),
        "naive" => permanent_eval_naive(&values, p),
        other => return Err(PermcheckError::new_err(format!("unknown method `{other}` (ryser, dp or naive)"))),
    }
    .py()
}

/// Full permanent of the matrix of indeterminates `shape`.
#[pyfunction]
fn symbolic_permanent(py: Python<'_>, shape: &str, p: u32) -> PyResult<PyPolynomial> {
    let shape = parse_shape(shape)?;
    let f = py.detach(|| -> permcheck_core::Result<Polynomial> {
        let (mat, space) = build_matrix(shape)?;
        full_permanent(&mat, &PolyRing::new(space, p)?)
    });
    Ok(f.py()?.into())
}

/// Generators of `P_t(shape)` and the structure tag
/// (for example "complete_intersection" or "unstructured").
#[pyfunction]
fn permanental_ideal(shape: &str, t: usize, p: u32) -> PyResult<(Vec<PyPolynomial>, String)> {
    let (mat, space) = build_matrix(parse_shape(shape)?).py()?;
    let ideal = permanental_generators(&mat, &PolyRing::new(space, p).py()?, t).py()?;
    let tag = match ideal.structure {
        IdealStructure::CompleteIntersection => "complete_intersection",
        IdealStructure::MonomialOnly => "monomial_only",
        IdealStructure::BinomialPlusVariables => "binomial_plus_variables",
        IdealStructure::Unstructured => "unstructured",
    };
    Ok((ideal.generators.into_iter().map(Into::into).collect(), tag.to_string()))
}

/// Fedder test for the ideal generated by `generators`, which the caller
/// asserts is a complete intersection. With `c`, tests `c ω^{q-1} ∉ m^[q]`.
#[pyfunction]
#[pyo3(signature = (generators, e = 1, c = None))]
fn fedder_check(
    py: Python<'_>,
    generators: Vec<Bound<'_, PyPolynomial>>,
    e: u32,
    c: Option<Bound<'_, PyPolynomial>>,
) -> PyResult<(bool, Option<PyPolynomial>)> {
    let gens = polys(&generators)?;
    let p = gens[0].p();
    let c = c.map(|c| c.get().inner.clone());
    let verdict = py.detach(move || {
        let ideal = IdealPresentation::new(gens, IdealStructure::CompleteIntersection)?;
        let modulus = PrimeModulus::new(p as u64, e)?;
        match c {
            Some(c) => glassbrenner_witness_check(&c, &ideal, modulus),
            None if e == 1 => fedder_ci_check(&ideal, modulus),
            None => glassbrenner_witness_check(&Polynomial::one(ideal.ring().expect("nonempty")), &ideal, modulus),
        }
    });
    let v = verdict.py()?;
    Ok((v.passed, v.survivor.map(Into::into)))
}

/// Coefficient of `∏ x^{p-1}` in `ω^{p-1}` for `P_3` of the generic 3x4 matrix.
#[pyfunction]
#[pyo3(signature = (p, method = "fiber", checkpoint = None))]
fn fedder_coefficient(py: Python<'_>, p: u32, method: &str, checkpoint: Option<PathBuf>) -> PyResult<BTreeMap<String, u64>> {
    let method: FedderMethod = method.parse().py()?;
    let coef = py.detach(move || -> permcheck_core::Result<_> {
        let (mat, space) = build_matrix(MatrixShape::generic(3, 4))?;
        let ideal = permanental_generators(&mat, &PolyRing::new(space, p)?, 3)?;
        fedder_coefficient_fullsupport(&ideal, p, method, &ScanOptions { checkpoint, checkpoint_every: None })
    });
    let coef = coef.py()?;
    let mut out = BTreeMap::from([("p".to_string(), p as u64), ("coefficient".to_string(), coef.coefficient as u64)]);
    if let Some(n) = coef.nonvanishing_points {
        out.insert("nonvanishing_points".into(), n);
    }
    Ok(out)
}

fn primes_for(shape: MatrixShape) -> PyResult<Vec<MinimalPrime>> {
    match shape {
        MatrixShape::Generic { rows, cols } => minimal_primes_generic(rows, cols).py(),
        MatrixShape::Symmetric { n } => minimal_primes_symmetric(n).py(),
        MatrixShape::Hankel { .. } => Err(PermcheckError::new_err("minimal primes are enumerated for generic and symmetric shapes")),
    }
}

/// Identifiers of the minimal primes of `P_2(shape)`.
#[pyfunction]
fn minimal_primes(shape: &str) -> PyResult<Vec<String>> {
    Ok(primes_for(parse_shape(shape)?)?.iter().map(MinimalPrime::id).collect())
}

/// The witness polynomial for a generic or symmetric shape.
#[pyfunction]
fn witness(shape: &str, p: u32) -> PyResult<PyPolynomial> {
    let f = match parse_shape(shape)? {
        MatrixShape::Generic { rows, cols } => witnesses::witness_generic(rows, cols, p),
        MatrixShape::Symmetric { n } => witnesses::witness_symmetric(n, p),
        MatrixShape::Hankel { .. } => return Err(PermcheckError::new_err("no witness is defined for hankel shapes")),
    };
    Ok(f.py()?.into())
}

/// `{prime id: f ∈ (P^[q] : P)}` over the minimal primes of `shape`.
#[pyfunction]
#[pyo3(signature = (f, shape, e = 1))]
fn colon_members(f: &PyPolynomial, shape: &str, e: u32) -> PyResult<BTreeMap<String, bool>> {
    let modulus = PrimeModulus::new(f.inner.p() as u64, e).py()?;
    let mut out = BTreeMap::new();
    for prime in primes_for(parse_shape(shape)?)? {
        let member = colon_membership(&f.inner, &prime, modulus).py()?.is_some();
        out.insert(prime.id(), member);
    }
    Ok(out)
}

/// Multipliers `h_i` with `Σ h_i g_i = target` using products up to
/// `degree_bound`, or `None` when no combination exists at that bound.
#[pyfunction]
fn member(target: &PyPolynomial, generators: Vec<Bound<'_, PyPolynomial>>, degree_bound: u32) -> PyResult<Option<Vec<PyPolynomial>>> {
    let inst = MembershipInstance { target: target.inner.clone(), generators: polys(&generators)?, degree_bound };
    let out = member_bounded(&inst).py()?;
    Ok(out.combination.map(|hs| hs.into_iter().map(Into::into).collect()))
}

/// Runs a named check and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (check, n = None, p = None, shape = None, t = None, e = 1, primes = None, method = "truncated"))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    check: &str,
    n: Option<usize>,
    p: Option<u32>,
    shape: Option<&str>,
    t: Option<usize>,
    e: u32,
    primes: Option<Vec<u32>>,
    method: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let need = |what: &str| PermcheckError::new_err(format!("{check} needs `{what}`"));
    let shape = shape.map(parse_shape).transpose()?;
    let method: FedderMethod = method.parse().py()?;
    let check = check.to_string();
    let job: Box<dyn FnOnce() -> permcheck_core::Result<LemmaReport> + Send> = match check.as_str() {
        "lemma31" => {
            let n = n.ok_or_else(|| need("n"))?;
            Box::new(move || witnesses::verify_lemma_3_1(n))
        }
        "lemma32" => {
            let n = n.ok_or_else(|| need("n"))?;
            Box::new(move || witnesses::verify_lemma_3_2(n))
        }
        "thm36" => {
            let n = n.ok_or_else(|| need("n"))?;
            Box::new(move || witnesses::verify_theorem_3_6(n))
        }
        "lemma34" | "thm35" => {
            let (n, p) = (n.ok_or_else(|| need("n"))?, p.ok_or_else(|| need("p"))?);
            if check == "lemma34" {
                Box::new(move || witnesses::verify_lemma_3_4(n, p))
            } else {
                Box::new(move || witnesses::verify_theorem_3_5(n, p))
            }
        }
        "witness" => {
            let (shape, p) = (shape.ok_or_else(|| need("shape"))?, p.ok_or_else(|| need("p"))?);
            Box::new(move || witnesses::verify_witness_membership(shape, p))
        }
        "monomials28" | "monomials29" => {
            let (m, cols) = shape.ok_or_else(|| need("shape"))?.dims();
            let p = p.ok_or_else(|| need("p"))?;
            if check == "monomials28" {
                Box::new(move || witnesses::verify_monomials_2_8(m, cols, p))
            } else {
                Box::new(move || witnesses::verify_monomials_2_9(m, cols, p))
            }
        }
        "fpure" => {
            let (shape, p, t) = (shape.ok_or_else(|| need("shape"))?, p.ok_or_else(|| need("p"))?, t.ok_or_else(|| need("t"))?);
            Box::new(move || witnesses::verify_fpure(shape, t, p, e))
        }
        "conjecture45" => {
            let list = primes.or(p.map(|p| vec![p])).ok_or_else(|| need("primes"))?;
            Box::new(move || witnesses::scan_conjecture_4_5(&list, method, &ScanOptions::default()))
        }
        other => return Err(PermcheckError::new_err(format!("unknown check `{other}`"))),
    };
    let rep = py.detach(job).py()?;
    report_dict(py, &rep)
}

#[pymodule]
pub fn pypermcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PermcheckError", m.py().get_type::<PermcheckError>())?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(permanent, m)?)?;
    m.add_function(wrap_pyfunction!(symbolic_permanent, m)?)?;
    m.add_function(wrap_pyfunction!(permanental_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(fedder_check, m)?)?;
    m.add_function(wrap_pyfunction!(fedder_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_primes, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(colon_members, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
