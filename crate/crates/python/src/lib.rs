//! Python bindings: permutations, groups, factorizations, skew-morphisms,
//! rotary maps, and the closed-form number theory, mirroring the Rust API
//! closely enough to script the same verifications from Python.

use hallmap::descriptor::GroupDescriptor;
use hallmap::error::Error;
use hallmap::factor;
use hallmap::group::PermGroup;
use hallmap::maps;
use hallmap::numth;
use hallmap::perm::Permutation;
use hallmap::skew;
use hallmap::verify;
use hallmap::zoo;
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

fn to_py(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(desc: &str) -> PyResult<GroupDescriptor> {
    GroupDescriptor::parse(desc).map_err(to_py)
}

/// A permutation of {0, ..., degree-1}; cycle strings are 1-indexed.
#[pyclass(name = "Permutation", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyPermutation {
    inner: Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(degree: usize, cycles: &str) -> PyResult<Self> {
        Ok(PyPermutation { inner: Permutation::from_cycles(degree, cycles).map_err(to_py)? })
    }

    #[classmethod]
    fn identity(_cls: &Bound<'_, PyType>, degree: usize) -> Self {
        PyPermutation { inner: Permutation::identity(degree) }
    }

    fn compose(&self, other: &PyPermutation) -> Self {
        PyPermutation { inner: self.inner.compose(&other.inner) }
    }

    fn inverse(&self) -> Self {
        PyPermutation { inner: self.inner.inverse() }
    }

    fn conjugate(&self, by: &PyPermutation) -> Self {
        PyPermutation { inner: self.inner.conjugate(&by.inner) }
    }

    fn pow(&self, exponent: i64) -> Self {
        PyPermutation { inner: self.inner.pow(exponent) }
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// 0-indexed fixed points.
    fn fixed_points(&self) -> Vec<usize> {
        self.inner.fixed_points()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({}, \"{}\")", self.inner.degree(), self.inner)
    }
}

/// A permutation group behind a stabilizer chain.
#[pyclass(name = "PermGroup", frozen)]
struct PyPermGroup {
    inner: PermGroup,
}

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(generators: Vec<PyRef<'_, PyPermutation>>) -> PyResult<Self> {
        let gens = generators.iter().map(|p| p.inner.clone()).collect();
        Ok(PyPermGroup { inner: PermGroup::from_generators(gens).map_err(to_py)? })
    }

    /// Builds a named group: alt:n, sym:n, psl:d,q, psigma:d,q0, psl2_11,
    /// m11, m23, cyclic:n, dihedral:n, wreath:p.
    #[classmethod]
    fn from_descriptor(_cls: &Bound<'_, PyType>, descriptor: &str) -> PyResult<Self> {
        Ok(PyPermGroup { inner: zoo::classical_group(&parse(descriptor)?).map_err(to_py)? })
    }

    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.inner
            .generators()
            .iter()
            .map(|p| PyPermutation { inner: p.clone() })
            .collect()
    }

    fn contains(&self, p: &PyPermutation) -> bool {
        self.inner.contains(&p.inner)
    }

    fn point_stabilizer(&self, point: usize) -> PyResult<Self> {
        Ok(PyPermGroup { inner: self.inner.point_stabilizer(point).map_err(to_py)? })
    }

    #[pyo3(signature = (bound = 20_000_000))]
    fn count_involutions(&self, bound: u64) -> PyResult<u64> {
        self.inner.count_involutions(bound).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.inner.degree(), self.inner.order())
    }
}

/// An exact factorization G = H <k> with <k> cyclic.
#[pyclass(name = "Factorization", frozen)]
struct PyFactorization {
    inner: factor::Factorization,
}

#[pymethods]
impl PyFactorization {
    fn h_order(&self) -> BigUint {
        self.inner.h().order().clone()
    }

    fn k_order(&self) -> u64 {
        self.inner.k_order()
    }

    fn is_hall(&self) -> bool {
        self.inner.is_hall()
    }

    fn is_core_free(&self) -> bool {
        self.inner.is_core_free()
    }

    /// Splits g into (h, j) with g = h * k^j.
    fn decompose(&self, g: &PyPermutation) -> PyResult<(PyPermutation, u64)> {
        let (h, j) = self.inner.decompose(&g.inner).map_err(to_py)?;
        Ok((PyPermutation { inner: h }, j))
    }

    fn __repr__(&self) -> String {
        format!(
            "Factorization(|H|={}, |K|={}, hall={}, core_free={})",
            self.inner.h().order(),
            self.inner.k_order(),
            self.inner.is_hall(),
            self.inner.is_core_free()
        )
    }
}

/// Certifies G = H <k>: exact product, trivial intersection.
#[pyfunction]
fn certify_factorization(
    g: &PyPermGroup,
    h: &PyPermGroup,
    k: &PyPermutation,
) -> PyResult<PyFactorization> {
    Ok(PyFactorization {
        inner: factor::certify_factorization(&g.inner, &h.inner, &k.inner).map_err(to_py)?,
    })
}

/// The built-in factorization for a descriptor: (G, H, k).
#[pyfunction]
fn standard_factorization(descriptor: &str) -> PyResult<(PyPermGroup, PyPermGroup, PyPermutation)> {
    let (g, h, k) = zoo::standard_factorization(&parse(descriptor)?).map_err(to_py)?;
    Ok((
        PyPermGroup { inner: g },
        PyPermGroup { inner: h },
        PyPermutation { inner: k },
    ))
}

/// The skew-morphism of H induced by conjugation inside a factorization.
#[pyclass(name = "SkewMorphism", frozen)]
struct PySkewMorphism {
    inner: skew::SkewMorphism,
}

#[pymethods]
impl PySkewMorphism {
    fn order(&self) -> u64 {
        self.inner.skew_order
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn is_hall(&self) -> bool {
        self.inner.is_hall()
    }

    fn h_order(&self) -> u64 {
        self.inner.h_order()
    }

    /// Power function values in element order (index 0 is the identity).
    fn pi(&self) -> Vec<u64> {
        self.inner.pi.clone()
    }

    /// Re-checks the defining identity exhaustively.
    fn verify(&self) -> bool {
        self.inner.verify_axioms().is_ok()
    }

    fn __repr__(&self) -> String {
        format!(
            "SkewMorphism(order={}, trivial={}, hall={})",
            self.inner.skew_order,
            self.inner.is_trivial(),
            self.inner.is_hall()
        )
    }
}

#[pyfunction]
fn skew_from_factorization(f: &PyFactorization) -> PyResult<PySkewMorphism> {
    Ok(PySkewMorphism { inner: skew::skew_from_factorization(&f.inner).map_err(to_py)? })
}

/// All skew-morphisms of a small group, by brute force.
#[pyfunction]
fn brute_enumerate(h: &PyPermGroup) -> PyResult<Vec<PySkewMorphism>> {
    Ok(skew::brute_enumerate(&h.inner)
        .map_err(to_py)?
        .into_iter()
        .map(|inner| PySkewMorphism { inner })
        .collect())
}

/// Vertex/edge/face census of the rotary or bi-rotary map of a descriptor's
/// example pair, as a dict-ready tuple class.
#[pyclass(name = "RotationMap", frozen)]
struct PyRotationMap {
    inner: maps::RotationMap,
}

#[pymethods]
impl PyRotationMap {
    #[getter]
    fn vertices(&self) -> u64 {
        self.inner.vertices
    }

    #[getter]
    fn edges(&self) -> u64 {
        self.inner.edges
    }

    #[getter]
    fn faces(&self) -> u64 {
        self.inner.faces
    }

    #[getter]
    fn euler(&self) -> i64 {
        self.inner.euler
    }

    #[getter]
    fn genus(&self) -> Option<i64> {
        self.inner.genus
    }

    #[getter]
    fn face_stabilizer_order(&self) -> u64 {
        self.inner.face_stabilizer_order
    }

    fn __repr__(&self) -> String {
        format!(
            "RotationMap(V={}, E={}, F={}, chi={})",
            self.inner.vertices, self.inner.edges, self.inner.faces, self.inner.euler
        )
    }
}

/// Builds the rotary ("rota") or bi-rotary ("biro") map for a descriptor.
#[pyfunction]
#[pyo3(signature = (descriptor, kind = "rota", outer = false))]
fn build_map(descriptor: &str, kind: &str, outer: bool) -> PyResult<PyRotationMap> {
    let pair = maps::example_rotary_pair(&parse(descriptor)?, outer).map_err(to_py)?;
    let mk = match kind {
        "rota" => maps::MapKind::Rotary,
        "biro" => maps::MapKind::BiRotary,
        _ => return Err(PyValueError::new_err(format!("kind must be rota or biro, got {:?}", kind))),
    };
    Ok(PyRotationMap { inner: maps::build_map(&pair, mk).map_err(to_py)? })
}

/// The coset graph of a descriptor's example rotary pair: (n, edges).
#[pyfunction]
#[pyo3(signature = (descriptor, outer = false))]
fn coset_graph(descriptor: &str, outer: bool) -> PyResult<(u32, Vec<(u32, u32)>)> {
    let pair = maps::example_rotary_pair(&parse(descriptor)?, outer).map_err(to_py)?;
    let cg = maps::coset_graph(&pair).map_err(to_py)?;
    Ok((cg.graph.n, cg.graph.edges.iter().copied().collect()))
}

#[pyfunction]
fn descriptor_order(descriptor: &str) -> PyResult<BigUint> {
    numth::descriptor_order(&parse(descriptor)?).map_err(to_py)
}

#[pyfunction]
fn e_value(descriptor: &str) -> PyResult<BigUint> {
    numth::e_value(&parse(descriptor)?).map_err(to_py)
}

#[pyfunction]
fn gcd_identity(d: u32, q: u64) -> PyResult<bool> {
    Ok(numth::gcd_identity(d, q).map_err(to_py)?.ok)
}

#[pyfunction]
fn prime_family(p: u64, d: u64) -> PyResult<Vec<u64>> {
    let r = numth::prime_family(p, d).map_err(to_py)?;
    if !r.all_ok {
        return Err(PyValueError::new_err("family exists but a coprimality cell failed"));
    }
    Ok(r.family)
}

#[pyfunction]
fn solvable_f_ok(f: u32) -> bool {
    numth::solvable_f_ok(f)
}

#[pyfunction]
fn psl2_pair_infeasible(e: u32, f: u32) -> PyResult<bool> {
    Ok(numth::psl2_pair_infeasible(e, f).map_err(to_py)?.infeasible)
}

/// Pairwise gcd(|T_i|, e_j) = 1 over descriptors.
#[pyfunction]
fn hyp1_compatible(descriptors: Vec<String>) -> PyResult<bool> {
    let profiles = descriptors
        .iter()
        .map(|s| parse(s).and_then(|d| numth::profile(&d).map_err(to_py)))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(numth::hyp1_compatible(&profiles).compatible)
}

/// Runs a named verification suite; returns (name, pass, detail) triples.
#[pyfunction]
fn run_suite(name: &str) -> PyResult<Vec<(String, bool, String)>> {
    let report = verify::run_suite(name).map_err(to_py)?;
    Ok(report
        .items
        .into_iter()
        .map(|i| (i.name, i.pass, i.detail))
        .collect())
}

#[pymodule]
fn hallmap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyFactorization>()?;
    m.add_class::<PySkewMorphism>()?;
    m.add_class::<PyRotationMap>()?;
    m.add_function(wrap_pyfunction!(certify_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(standard_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(skew_from_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(brute_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(build_map, m)?)?;
    m.add_function(wrap_pyfunction!(coset_graph, m)?)?;
    m.add_function(wrap_pyfunction!(descriptor_order, m)?)?;
    m.add_function(wrap_pyfunction!(e_value, m)?)?;
    m.add_function(wrap_pyfunction!(gcd_identity, m)?)?;
    m.add_function(wrap_pyfunction!(prime_family, m)?)?;
    m.add_function(wrap_pyfunction!(solvable_f_ok, m)?)?;
    m.add_function(wrap_pyfunction!(psl2_pair_infeasible, m)?)?;
    m.add_function(wrap_pyfunction!(hyp1_compatible, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
