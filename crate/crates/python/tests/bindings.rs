use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(peterson::peterson)(py);
        let locals = PyDict::new(py);
        locals.set_item("peterson", module).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, None, Some(&locals))
            .map_err(|e| e.display(py))
            .unwrap();
    });
}

#[test]
fn constants_and_expansions() {
    run(r#"
b = peterson.constant("1,2", "2-4", "1-4", 5)
assert (b.coeff, b.power) == (12, 1)
assert str(peterson.constant("1,2,4,5", "2-4", "1-6", 7)) == "280*t^1"
rows = peterson.expand("1", "1", 3)
assert [(c.to_list(), str(v)) for c, v in rows] == [([1], "1*t^1"), ([1, 2], "1")]
assert rows == peterson.localize_product("1", "1", 3)
"#);
}

#[test]
fn restrictions_and_identity() {
    run(r#"
assert peterson.restrict("2,3", "1-6", 7) == peterson.Monomial(60, 2)
assert peterson.subword_restriction("2,3", "1-6", 7) == peterson.Monomial(60, 2)
cert = peterson.identity(1, 0, 1, 1, 1, 1, bijection=True)
assert cert.passed() and cert.lhs == 4 and cert.bijection_valid
"#);
}

#[test]
fn errors_become_value_errors() {
    run(r#"
try:
    peterson.Subset(3, "9")
except ValueError as e:
    assert "outside" in str(e)
else:
    raise AssertionError
"#);
}
