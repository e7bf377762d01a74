//! Python bindings for the core algebra: root data, extended affine
//! Weyl elements, normal-form Hecke algebra elements, parahoric types,
//! and double-coset functions.
//!
//! All scalars cross the boundary as exact `"p/q"` strings (plain
//! integers are accepted on input); nothing is ever rounded. Affine
//! (co)weights travel as dicts matching the CLI wire format.

// polynomial terms cross as nested tuples by design
#![allow(clippy::type_complexity)]

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use dahakit::afflattice::{self, AffCoweight, AffWeight};
use dahakit::convolution;
use dahakit::daha::{self, DahaDegree, DahaElt};
use dahakit::extweyl::{self, ExtWeylElt};
use dahakit::parahoric::{self, ParahoricType};
use dahakit::polyrep;
use dahakit::rat::{rat_from_str, rat_to_string, Rat};
use dahakit::rootsys::{CartanType, FinCoweight, FinWeight, IsogenyFlavor, RootDatum};
use dahakit::verify;
use dahakit::wire;

fn to_py_err(e: dahakit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(s: &str) -> PyResult<Rat> {
    rat_from_str(s).map_err(to_py_err)
}

fn parse_rat_vec(v: Vec<String>) -> PyResult<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn rats_to_py(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn weight_to_dict<'py>(py: Python<'py>, xi: &AffWeight) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("c_lambda", rat_to_string(&xi.c_lambda))?;
    d.set_item("fin", rats_to_py(&xi.fin.0))?;
    d.set_item("c_delta", rat_to_string(&xi.c_delta))?;
    Ok(d)
}

fn coweight_to_dict<'py>(py: Python<'py>, eta: &AffCoweight) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("c_k", rat_to_string(&eta.c_k))?;
    d.set_item("fin", rats_to_py(&eta.fin.0))?;
    d.set_item("c_d", rat_to_string(&eta.c_d))?;
    Ok(d)
}

fn dict_get_rat(d: &Bound<'_, PyDict>, key: &str) -> PyResult<Rat> {
    match d.get_item(key)? {
        Some(v) => parse_rat(&v.str()?.to_string()),
        None => Ok(Rat::from_integer(0.into())),
    }
}

fn dict_get_fin(d: &Bound<'_, PyDict>, key: &str, rank: usize) -> PyResult<Vec<Rat>> {
    match d.get_item(key)? {
        Some(v) => {
            let items: Vec<String> = v
                .try_iter()?
                .map(|x| x.and_then(|x| Ok(x.str()?.to_string())))
                .collect::<PyResult<_>>()?;
            if items.len() != rank {
                return Err(PyValueError::new_err(format!(
                    "expected {rank} finite coordinates, got {}",
                    items.len()
                )));
            }
            parse_rat_vec(items)
        }
        None => Ok(vec![Rat::from_integer(0.into()); rank]),
    }
}

fn weight_from_dict(d: &Bound<'_, PyDict>, rank: usize) -> PyResult<AffWeight> {
    Ok(AffWeight {
        c_lambda: dict_get_rat(d, "c_lambda")?,
        fin: FinWeight(dict_get_fin(d, "fin", rank)?),
        c_delta: dict_get_rat(d, "c_delta")?,
    })
}

fn coweight_from_dict(d: &Bound<'_, PyDict>, rank: usize) -> PyResult<AffCoweight> {
    Ok(AffCoweight {
        c_k: dict_get_rat(d, "c_k")?,
        fin: FinCoweight(dict_get_fin(d, "fin", rank)?),
        c_d: dict_get_rat(d, "c_d")?,
    })
}

/// Polynomial terms cross as `[(mono_dict, coeff_str)]` with the same
/// variable keys as the CLI wire format.
fn poly_from_py(
    datum: &RootDatum,
    terms: Vec<(BTreeMap<String, u8>, String)>,
) -> PyResult<dahakit::poly::AffPoly> {
    let wire_terms: Vec<wire::WirePolyTerm> = terms
        .into_iter()
        .map(|(mono, coeff)| wire::WirePolyTerm { mono, coeff })
        .collect();
    wire::poly_from_wire(datum, &wire_terms).map_err(to_py_err)
}

fn poly_to_py(
    datum: &RootDatum,
    p: &dahakit::poly::AffPoly,
) -> Vec<(BTreeMap<String, u8>, String)> {
    wire::poly_to_wire(datum, p)
        .into_iter()
        .map(|t| (t.mono, t.coeff))
        .collect()
}

#[pyclass(name = "RootDatum", frozen)]
struct PyRootDatum {
    inner: Arc<RootDatum>,
}

#[pymethods]
impl PyRootDatum {
    #[new]
    #[pyo3(signature = (cartan_type, rank, adjoint = false))]
    fn new(cartan_type: &str, rank: usize, adjoint: bool) -> PyResult<Self> {
        let letter = cartan_type
            .chars()
            .next()
            .ok_or_else(|| PyValueError::new_err("empty type"))?;
        let flavor = if adjoint {
            IsogenyFlavor::Adjoint
        } else {
            IsogenyFlavor::SimplyConnected
        };
        let t = CartanType::from_letter(letter).map_err(to_py_err)?;
        Ok(Self {
            inner: Arc::new(RootDatum::new(t, rank, flavor).map_err(to_py_err)?),
        })
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({})", self.inner.descriptor())
    }

    fn descriptor(&self) -> String {
        self.inner.descriptor()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.cartan_matrix_entries().clone()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.roots()[..self.inner.n_positive()]
            .iter()
            .map(|r| r.weight.clone())
            .collect()
    }

    fn theta(&self) -> Vec<String> {
        rats_to_py(&self.inner.highest_root().0 .0)
    }

    fn theta_dual(&self) -> Vec<String> {
        rats_to_py(&self.inner.highest_root().1 .0)
    }

    fn rho(&self) -> Vec<String> {
        rats_to_py(&self.inner.rho().0)
    }

    fn h_dual(&self) -> i64 {
        self.inner.dual_coxeter_number()
    }

    fn killing_gram(&self) -> Vec<Vec<i64>> {
        self.inner.killing_gram().clone()
    }

    /// Killing form of two coweights given in simple-coroot coordinates.
    fn killing_form(&self, x: Vec<String>, y: Vec<String>) -> PyResult<String> {
        let x = FinCoweight(parse_rat_vec(x)?);
        let y = FinCoweight(parse_rat_vec(y)?);
        Ok(rat_to_string(&self.inner.killing_form(&x, &y)))
    }

    fn star(&self, lam: Vec<String>) -> PyResult<Vec<String>> {
        let lam = FinCoweight(parse_rat_vec(lam)?);
        Ok(rats_to_py(&self.inner.star(&lam).0))
    }

    fn weyl_orbit(&self, lam: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let lam = FinCoweight(parse_rat_vec(lam)?);
        Ok(self
            .inner
            .weyl_orbit(&lam)
            .iter()
            .map(|v| rats_to_py(&v.0))
            .collect())
    }

    fn pair(&self, weight: &Bound<'_, PyDict>, coweight: &Bound<'_, PyDict>) -> PyResult<String> {
        let xi = weight_from_dict(weight, self.inner.rank())?;
        let eta = coweight_from_dict(coweight, self.inner.rank())?;
        Ok(rat_to_string(
            &afflattice::pair(&self.inner, &xi, &eta).map_err(to_py_err)?,
        ))
    }

    fn affine_simple_root<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyDict>> {
        weight_to_dict(
            py,
            &afflattice::affine_simple_root(&self.inner, i).map_err(to_py_err)?,
        )
    }

    fn affine_simple_coroot<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyDict>> {
        coweight_to_dict(
            py,
            &afflattice::affine_simple_coroot(&self.inner, i).map_err(to_py_err)?,
        )
    }

    fn identity(&self) -> PyExtWeylElt {
        PyExtWeylElt {
            datum: self.inner.clone(),
            inner: ExtWeylElt::identity(&self.inner),
        }
    }

    fn simple_reflection(&self, i: usize) -> PyResult<PyExtWeylElt> {
        Ok(PyExtWeylElt {
            datum: self.inner.clone(),
            inner: extweyl::simple_reflection(&self.inner, i).map_err(to_py_err)?,
        })
    }

    /// Translation by the coweight with the given cocharacter-lattice
    /// coordinates.
    fn translation(&self, coords: Vec<i64>) -> PyResult<PyExtWeylElt> {
        let coords: Vec<num_bigint::BigInt> = coords.into_iter().map(Into::into).collect();
        let lam = self
            .inner
            .coweight_from_cochar_coords(&coords)
            .map_err(to_py_err)?;
        Ok(PyExtWeylElt {
            datum: self.inner.clone(),
            inner: ExtWeylElt::translation(&self.inner, lam).map_err(to_py_err)?,
        })
    }

    fn omega_elements(&self) -> Vec<PyExtWeylElt> {
        extweyl::omega_elements(&self.inner)
            .into_iter()
            .map(|o| PyExtWeylElt {
                datum: self.inner.clone(),
                inner: o,
            })
            .collect()
    }

    /// Calibrated sign in the zeroth affine reflection.
    fn s0_sign(&self) -> i64 {
        extweyl::s0_sign(&self.inner)
    }

    fn daha_one(&self) -> PyDahaElt {
        PyDahaElt {
            datum: self.inner.clone(),
            inner: DahaElt::one(&self.inner),
        }
    }

    fn daha_u(&self) -> PyDahaElt {
        PyDahaElt {
            datum: self.inner.clone(),
            inner: DahaElt::u(&self.inner),
        }
    }

    /// Algebra element of an affine weight (a degree-2 generator).
    fn daha_weight(&self, weight: &Bound<'_, PyDict>) -> PyResult<PyDahaElt> {
        let xi = weight_from_dict(weight, self.inner.rank())?;
        Ok(PyDahaElt {
            datum: self.inner.clone(),
            inner: DahaElt::from_aff_weight(&self.inner, &xi),
        })
    }

    fn daha_poly(&self, terms: Vec<(BTreeMap<String, u8>, String)>) -> PyResult<PyDahaElt> {
        Ok(PyDahaElt {
            datum: self.inner.clone(),
            inner: DahaElt::from_poly(&self.inner, poly_from_py(&self.inner, terms)?),
        })
    }

    fn parahoric(&self, subset: Vec<usize>) -> PyResult<PyParahoric> {
        Ok(PyParahoric {
            datum: self.inner.clone(),
            inner: ParahoricType::new(&self.inner, subset.into_iter().collect())
                .map_err(to_py_err)?,
        })
    }

    fn standard_parahorics(&self) -> Vec<PyParahoric> {
        parahoric::enumerate_standard(&self.inner)
            .into_iter()
            .map(|p| PyParahoric {
                datum: self.inner.clone(),
                inner: p,
            })
            .collect()
    }
}

#[pyclass(name = "ExtWeylElt", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyExtWeylElt {
    datum: Arc<RootDatum>,
    inner: ExtWeylElt,
}

#[pymethods]
impl PyExtWeylElt {
    fn __repr__(&self) -> String {
        let w = wire::ext_weyl_to_wire(&self.datum, &self.inner);
        match w {
            Ok(w) => format!("ExtWeylElt(lambda={:?}, w_perm={:?})", w.lambda, w.w_perm),
            Err(_) => "ExtWeylElt(<unrepresentable>)".into(),
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        if !Arc::ptr_eq(&self.datum, &other.datum)
            && self.datum.descriptor() != other.datum.descriptor()
        {
            return Err(PyValueError::new_err("elements belong to different data"));
        }
        Ok(Self {
            datum: self.datum.clone(),
            inner: extweyl::mul(&self.datum, &self.inner, &other.inner),
        })
    }

    fn inv(&self) -> Self {
        Self {
            datum: self.datum.clone(),
            inner: extweyl::inv(&self.datum, &self.inner),
        }
    }

    fn length(&self) -> u64 {
        extweyl::length(&self.datum, &self.inner)
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// Cocharacter-lattice coordinates of the translation part.
    fn lattice_coords(&self) -> PyResult<Vec<i64>> {
        let w = wire::ext_weyl_to_wire(&self.datum, &self.inner).map_err(to_py_err)?;
        Ok(w.lambda)
    }

    fn w_perm(&self) -> Vec<u32> {
        self.inner.w.0.clone()
    }

    /// Returns `(word, omega_index)` for the canonical reduced word.
    fn reduced_word(&self) -> PyResult<(Vec<usize>, usize)> {
        let cox = extweyl::reduced_word(&self.datum, &self.inner);
        let id = wire::omega_id(&self.datum, &cox.omega).map_err(to_py_err)?;
        Ok((cox.word, id))
    }

    fn act_on_weight<'py>(
        &self,
        py: Python<'py>,
        weight: &Bound<'_, PyDict>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let xi = weight_from_dict(weight, self.datum.rank())?;
        weight_to_dict(py, &extweyl::act_on_weight(&self.datum, &self.inner, &xi))
    }

    fn act_on_coweight<'py>(
        &self,
        py: Python<'py>,
        coweight: &Bound<'_, PyDict>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let eta = coweight_from_dict(coweight, self.datum.rank())?;
        coweight_to_dict(
            py,
            &extweyl::act_on_coweight(&self.datum, &self.inner, &eta),
        )
    }

    fn bruhat_leq(&self, other: &Self) -> bool {
        extweyl::bruhat_leq(&self.datum, &self.inner, &other.inner)
    }

    fn as_daha(&self) -> PyDahaElt {
        PyDahaElt {
            datum: self.datum.clone(),
            inner: DahaElt::from_group(&self.datum, self.inner.clone()),
        }
    }
}

#[pyclass(name = "DahaElt", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDahaElt {
    datum: Arc<RootDatum>,
    inner: DahaElt,
}

#[pymethods]
impl PyDahaElt {
    fn __repr__(&self) -> String {
        format!("DahaElt({} terms)", self.inner.terms.len())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self {
            datum: self.datum.clone(),
            inner: daha::mul(&self.datum, &self.inner, &other.inner),
        }
    }

    fn __add__(&self, other: &Self) -> Self {
        Self {
            datum: self.datum.clone(),
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self {
            datum: self.datum.clone(),
            inner: self.inner.sub(&other.inner),
        }
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(Self {
            datum: self.datum.clone(),
            inner: self.inner.scale(&parse_rat(c)?),
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `0`-graded degree: an int when homogeneous, `None` for the zero
    /// element, and the string `"inhomogeneous(max)"` otherwise.
    fn degree(&self, py: Python<'_>) -> Py<PyAny> {
        match self.inner.degree() {
            DahaDegree::NegInfinity => py.None(),
            DahaDegree::Homogeneous(d) => d.into_pyobject(py).unwrap().into_any().unbind(),
            DahaDegree::Inhomogeneous(m) => format!("inhomogeneous({m})")
                .into_pyobject(py)
                .unwrap()
                .into_any()
                .unbind(),
        }
    }

    fn terms(&self) -> PyResult<Vec<(PyExtWeylElt, Vec<(BTreeMap<String, u8>, String)>)>> {
        Ok(self
            .inner
            .terms
            .iter()
            .map(|(g, p)| {
                (
                    PyExtWeylElt {
                        datum: self.datum.clone(),
                        inner: g.clone(),
                    },
                    poly_to_py(&self.datum, p),
                )
            })
            .collect())
    }

    fn specialize(&self) -> Self {
        Self {
            datum: self.datum.clone(),
            inner: daha::specialize_degenerate(&self.datum, &self.inner),
        }
    }

    /// Applies the operator model to a polynomial; the independent
    /// oracle for products.
    fn oracle_act(
        &self,
        p: Vec<(BTreeMap<String, u8>, String)>,
    ) -> PyResult<Vec<(BTreeMap<String, u8>, String)>> {
        let poly = poly_from_py(&self.datum, p)?;
        Ok(poly_to_py(
            &self.datum,
            &polyrep::act(&self.datum, &self.inner, &poly),
        ))
    }
}

#[pyclass(name = "Parahoric", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParahoric {
    datum: Arc<RootDatum>,
    inner: ParahoricType,
}

#[pymethods]
impl PyParahoric {
    fn __repr__(&self) -> String {
        format!("Parahoric({:?})", self.inner.indices())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn subset(&self) -> Vec<usize> {
        self.inner.indices()
    }

    fn weyl_order(&self) -> PyResult<usize> {
        Ok(self
            .inner
            .levi_weyl_group(&self.datum)
            .map_err(to_py_err)?
            .len())
    }

    fn classical_index(&self) -> Option<Vec<usize>> {
        parahoric::to_classical_index(&self.datum, &self.inner)
            .ok()
            .map(|ix| ix.0)
    }

    fn idempotent(&self) -> PyResult<PyDahaElt> {
        Ok(PyDahaElt {
            datum: self.datum.clone(),
            inner: daha::idempotent(&self.datum, &self.inner).map_err(to_py_err)?,
        })
    }

    fn sandwich(&self, a: &PyDahaElt) -> PyResult<PyDahaElt> {
        Ok(PyDahaElt {
            datum: self.datum.clone(),
            inner: daha::sandwich(&self.datum, &self.inner, &a.inner).map_err(to_py_err)?,
        })
    }

    /// Indicator of the `(self, q)` double coset of `w`.
    fn indicator(&self, q: &PyParahoric, w: &PyExtWeylElt) -> PyDCosetFn {
        PyDCosetFn {
            datum: self.datum.clone(),
            inner: convolution::DCosetFn::indicator(
                &self.datum,
                self.inner.clone(),
                q.inner.clone(),
                &w.inner,
            ),
        }
    }

    fn unit(&self) -> PyDCosetFn {
        PyDCosetFn {
            datum: self.datum.clone(),
            inner: convolution::DCosetFn::unit(&self.datum, self.inner.clone()),
        }
    }

    /// Image of the averaged orbit sum together with its fitted
    /// normalization constant.
    fn av_embed(&self, lattice_coords: Vec<i64>) -> PyResult<(PyDCosetFn, String)> {
        let coords: Vec<num_bigint::BigInt> = lattice_coords.into_iter().map(Into::into).collect();
        let lam = self
            .datum
            .coweight_from_cochar_coords(&coords)
            .map_err(to_py_err)?;
        let (f, c) = convolution::av_embed(&self.datum, &self.inner, &lam).map_err(to_py_err)?;
        Ok((
            PyDCosetFn {
                datum: self.datum.clone(),
                inner: f,
            },
            rat_to_string(&c),
        ))
    }
}

#[pyclass(name = "DCosetFn", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDCosetFn {
    datum: Arc<RootDatum>,
    inner: convolution::DCosetFn,
}

#[pymethods]
impl PyDCosetFn {
    fn __repr__(&self) -> String {
        format!(
            "DCosetFn(P={:?}, Q={:?}, {} cosets)",
            self.inner.p.indices(),
            self.inner.q.indices(),
            self.inner.support.len()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn convolve(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            datum: self.datum.clone(),
            inner: convolution::convolve(&self.datum, &self.inner, &other.inner)
                .map_err(to_py_err)?,
        })
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(Self {
            datum: self.datum.clone(),
            inner: self.inner.scale(&parse_rat(c)?),
        })
    }

    fn support(&self) -> Vec<(PyExtWeylElt, String)> {
        self.inner
            .support
            .iter()
            .map(|(w, c)| {
                (
                    PyExtWeylElt {
                        datum: self.datum.clone(),
                        inner: w.clone(),
                    },
                    rat_to_string(c),
                )
            })
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

/// Runs a named verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, types = None, seed = verify::DEFAULT_SEED))]
fn verify_suite(suite: &str, types: Option<&str>, seed: u64) -> PyResult<(bool, String)> {
    let report = verify::run_suite(suite, types, seed).map_err(to_py_err)?;
    let json = serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((report.pass, json))
}

#[pyfunction]
fn suite_names(py: Python<'_>) -> Bound<'_, PyList> {
    PyList::new(py, verify::ALL_SUITES).expect("static list")
}

#[pymodule]
fn dahakit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyExtWeylElt>()?;
    m.add_class::<PyDahaElt>()?;
    m.add_class::<PyParahoric>()?;
    m.add_class::<PyDCosetFn>()?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    Ok(())
}
