use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn with_module(f: impl FnOnce(&Bound<'_, PyModule>) -> PyResult<()>) {
    Python::attach(|py| {
        let m = PyModule::new(py, "delsarte").unwrap();
        delsarte_py::register(&m).unwrap();
        f(&m).unwrap();
    });
}

#[test]
fn constants_through_python() {
    with_module(|m| {
        let g = m.getattr("Group")?.call1((vec![6usize], "probability"))?;
        assert_eq!(g.getattr("size")?.extract::<usize>()?, 6);
        let r = m
            .getattr("two_set_constant")?
            .call1((&g, vec![5i64, 0, 1], "empty"))?;
        let r = r.cast::<PyDict>()?;
        let v: f64 = r.get_item("value")?.unwrap().extract()?;
        assert!((v - 1.0 / 3.0).abs() < 1e-9);
        let d: f64 = m
            .getattr("delsarte_constant")?
            .call1((&g, vec![vec![0i64], vec![3]]))?
            .get_item("value")?
            .extract()?;
        // a subgroup K has D(K) = m(K)
        assert!((d - 1.0 / 3.0).abs() < 1e-9);
        Ok(())
    });
}

#[test]
fn numerics_and_errors() {
    with_module(|m| {
        let q: f64 = m.getattr("bessel_first_zero")?.call1((0.0,))?.extract()?;
        assert!((q - 2.404825557695773).abs() < 1e-10);
        let (a, b): (f64, f64) = m.getattr("critical_coeffs")?.call1((0.0,))?.extract()?;
        assert!((1.0 + a + b - 32.0 / 15.0).abs() < 1e-12);
        let opt = m.getattr("optimize_trinomial")?.call0()?;
        let value: f64 = opt.get_item("value")?.extract()?;
        assert!((value - 5f64.sqrt()).abs() < 1e-9);
        let bad = m.getattr("bessel_j")?.call1((-1.0, 1.0));
        assert!(bad
            .unwrap_err()
            .is_instance_of::<pyo3::exceptions::PyValueError>(m.py()));
        let g = m.getattr("Group")?.call1((vec![4usize], "counting"))?;
        let ok: bool = m
            .getattr("is_posdef")?
            .call1((&g, vec![2.0, 1.0, 0.0, 1.0]))?
            .extract()?;
        assert!(ok);
        Ok(())
    });
}
