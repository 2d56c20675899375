use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use reidemeister::corpus::{self, Corpus};
use reidemeister::group::{self as core_group, FiniteGroup};
use reidemeister::io;
use reidemeister::lattice::{reidemeister_zk, IntMatrix, ReidemeisterCount};
use reidemeister::repr::{character_table, tbft_check};
use reidemeister::verify::{enumerate_automorphisms, run_suite, CheckId, SuiteOptions};
use reidemeister::wreath::scenarios::{self, Scenario as CoreScenario};
use reidemeister::wreath::{
    separation_pipeline, solvability_pipeline, ProbeOptions, WreathAutomorphism,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so nested reports arrive as dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(module = "reidemeister_py", frozen)]
pub struct Group {
    inner: FiniteGroup,
}

#[pymethods]
impl Group {
    /// Cayley table with 0 as identity.
    #[new]
    fn new(table: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteGroup::from_table(&table)
            .map(|inner| Group { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        corpus::named(name)
            .map(|inner| Group { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown corpus group {name:?}")))
    }

    /// Permutation generators in cycle notation on points 1..=degree.
    #[staticmethod]
    #[pyo3(signature = (generators, degree=None))]
    fn from_generators(generators: Vec<String>, degree: Option<usize>) -> PyResult<Self> {
        let file = io::GroupFile {
            name: None,
            order: None,
            table: None,
            degree,
            generators: Some(generators),
        };
        file.build("generators")
            .map(|inner| Group { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_group_json(text, "json")
            .map(|inner| Group { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn corpus_names() -> Vec<String> {
        Corpus::bundled().names().into_iter().map(str::to_owned).collect()
    }

    fn to_json(&self) -> String {
        io::group_to_json(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_owned)
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.table()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.mul(a, b))
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        self.check(a)?;
        Ok(self.inner.inv(a))
    }

    fn is_solvable(&self) -> bool {
        core_group::derived_series(&self.inner).solvable
    }

    #[pyo3(signature = (cap=100_000))]
    fn automorphisms(&self, cap: usize) -> Vec<Automorphism> {
        enumerate_automorphisms(&self.inner, cap)
            .automorphisms
            .into_iter()
            .map(|inner| Automorphism {
                group: self.inner.clone(),
                inner,
            })
            .collect()
    }

    /// Rows of exact values as strings in powers of z = exp(2 pi i / n).
    fn character_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = character_table(&self.inner).map_err(value_err)?;
        let f = t.field();
        let rows: Vec<Vec<String>> = t
            .characters
            .iter()
            .map(|r| r.iter().map(|v| f.format(v)).collect())
            .collect();
        to_py(
            py,
            &serde_json::json!({
                "root_order": t.root_order,
                "class_reps": t.class_reps,
                "class_sizes": t.class_sizes,
                "characters": rows,
            }),
        )
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        match self.inner.name() {
            Some(n) => format!("Group({n}, order={})", self.inner.order()),
            None => format!("Group(order={})", self.inner.order()),
        }
    }
}

impl Group {
    fn check(&self, a: usize) -> PyResult<()> {
        if a < self.inner.order() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!("element {a} out of range")))
        }
    }
}

#[pyclass(module = "reidemeister_py", frozen)]
pub struct Automorphism {
    group: FiniteGroup,
    inner: core_group::Automorphism,
}

#[pymethods]
impl Automorphism {
    #[new]
    fn new(group: &Group, image: Vec<usize>) -> PyResult<Self> {
        core_group::Automorphism::new(&group.inner, image)
            .map(|inner| Automorphism {
                group: group.inner.clone(),
                inner,
            })
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(group: &Group) -> Self {
        Automorphism {
            group: group.inner.clone(),
            inner: core_group::Automorphism::identity(&group.inner),
        }
    }

    #[staticmethod]
    fn inner(group: &Group, g: usize) -> PyResult<Self> {
        group.check(g)?;
        Ok(Automorphism {
            group: group.inner.clone(),
            inner: core_group::Automorphism::inner(&group.inner, g),
        })
    }

    #[getter]
    fn image(&self) -> Vec<usize> {
        self.inner.image().to_vec()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __call__(&self, x: usize) -> PyResult<usize> {
        if x >= self.group.order() {
            return Err(PyIndexError::new_err(format!("element {x} out of range")));
        }
        Ok(self.inner.apply(x))
    }

    fn compose(&self, other: &Automorphism) -> PyResult<Self> {
        if other.group.table() != self.group.table() {
            return Err(PyValueError::new_err("automorphisms of different groups"));
        }
        Ok(Automorphism {
            group: self.group.clone(),
            inner: self.inner.compose(&other.inner),
        })
    }

    /// Twisted conjugacy classes `x ~ g x phi(g)^-1`.
    fn twisted_classes(&self) -> Vec<Vec<usize>> {
        core_group::twisted_classes(&self.group, &self.inner).classes()
    }

    fn reidemeister_number(&self) -> usize {
        core_group::twisted_classes(&self.group, &self.inner).count()
    }

    fn fixed_subgroup(&self) -> Vec<usize> {
        core_group::fixed_subgroup(&self.group, &self.inner).members().to_vec()
    }

    fn tbft_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = tbft_check(&self.group, &self.inner).map_err(value_err)?;
        to_py(py, &r)
    }

    fn __eq__(&self, other: &Automorphism) -> bool {
        self.inner == other.inner && self.group.table() == other.group.table()
    }

    fn __repr__(&self) -> String {
        format!("Automorphism({:?})", self.inner.image())
    }
}

/// `(R(d), invariant factors)` with `R(d)` as `None` when infinite.
#[pyfunction]
fn zk_reidemeister(d: Vec<Vec<i64>>) -> PyResult<(Option<u64>, Vec<u64>)> {
    let m = IntMatrix::from_i64(&d).map_err(value_err)?;
    let z = reidemeister_zk(&m).map_err(value_err)?;
    let factors = z.quotient.map(|q| q.invariant_factors).unwrap_or_default();
    Ok((
        match z.count {
            ReidemeisterCount::Finite(n) => Some(n),
            ReidemeisterCount::Infinite => None,
        },
        factors,
    ))
}

#[pyclass(module = "reidemeister_py", frozen)]
pub struct WreathScenario {
    scenario: CoreScenario,
    phi: WreathAutomorphism,
}

impl WreathScenario {
    fn build(scenario: CoreScenario) -> PyResult<Self> {
        let phi = scenario.automorphism().map_err(value_err)?;
        Ok(WreathScenario { scenario, phi })
    }
}

#[pymethods]
impl WreathScenario {
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        let sc = scenarios::by_name(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown scenario {name:?}")))?;
        Self::build(sc)
    }

    #[staticmethod]
    fn names() -> Vec<String> {
        scenarios::bundled().into_iter().map(|s| s.name).collect()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::build(io::parse_scenario_json(text, "json", None).map_err(value_err)?)
    }

    fn to_json(&self) -> String {
        io::scenario_to_json(&self.scenario)
    }

    #[getter]
    fn name(&self) -> String {
        self.scenario.name.clone()
    }

    #[getter]
    fn k(&self) -> usize {
        self.phi.k()
    }

    /// Order of `d`.
    #[getter]
    fn order(&self) -> usize {
        self.phi.order()
    }

    fn certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.phi.certificate())
    }

    #[pyo3(signature = (radius=2, pairwise=true, count=10))]
    fn separate<'py>(&self, py: Python<'py>, radius: i64, pairwise: bool, count: usize) -> PyResult<Bound<'py, PyAny>> {
        let opts = ProbeOptions {
            radius,
            pairwise,
            count,
        };
        let r = separation_pipeline(&self.phi, &opts).map_err(value_err)?;
        to_py(py, &r)
    }

    fn solvability<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = solvability_pipeline(&self.phi).map_err(value_err)?;
        to_py(py, &r)
    }

    fn __repr__(&self) -> String {
        format!("WreathScenario({}, k={})", self.scenario.name, self.phi.k())
    }
}

/// Runs corpus checks; returns `(all_pass, [(check, pass, fail, skipped)])`.
#[pyfunction]
#[pyo3(signature = (checks=None, group=None, seed=0))]
fn verify(
    checks: Option<Vec<String>>,
    group: Option<String>,
    seed: u64,
) -> PyResult<(bool, Vec<(String, usize, usize, usize)>)> {
    let checks = match checks {
        None => CheckId::ALL.to_vec(),
        Some(c) => c
            .iter()
            .map(|s| s.parse::<CheckId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(PyValueError::new_err)?,
    };
    let opts = SuiteOptions {
        checks,
        group,
        seed,
        ..Default::default()
    };
    let r = run_suite(&Corpus::bundled(), &opts);
    let tally = r
        .tally()
        .into_iter()
        .map(|(c, p, f, s)| (c.name().to_owned(), p, f, s))
        .collect();
    Ok((r.all_pass(), tally))
}

#[pymodule]
fn reidemeister_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Automorphism>()?;
    m.add_class::<WreathScenario>()?;
    m.add_function(wrap_pyfunction!(zk_reidemeister, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
