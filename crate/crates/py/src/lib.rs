use pyo3::prelude::*;

#[pymodule]
fn wignerfield_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
