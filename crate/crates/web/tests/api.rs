use ropelength_web::{anneal_json, gamma_json, inscribe_json};
use serde_json::Value;

#[test]
fn inscribe_circle_is_regular() {
    let v: Value = serde_json::from_str(&inscribe_json("circle", 12, 4096).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    let inv = v["report"]["inv_delta_n"].as_f64().unwrap();
    assert!((inv - v["regular_bound"].as_f64().unwrap()).abs() < 1e-8);
}

#[test]
fn bad_requests_are_errors() {
    assert!(inscribe_json("square", 12, 4096).is_err());
    assert!(inscribe_json("circle", 2, 4096).is_err());
    assert!(gamma_json("circle", "8,x", 1024).is_err());
    assert!(anneal_json(100, 0, 10).is_err());
}

#[test]
fn gamma_rows_are_sorted() {
    let v: Value = serde_json::from_str(&gamma_json("circle", "16, 8", 1024).unwrap()).unwrap();
    let ns: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, [8, 16]);
}

#[test]
fn anneal_improves_and_is_deterministic() {
    let a = anneal_json(6, 3, 2000).unwrap();
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(v["best_objective"].as_f64().unwrap() <= v["initial"].as_f64().unwrap());
    assert!(v["curve"].as_array().unwrap().len() <= 400);
    assert_eq!(a, anneal_json(6, 3, 2000).unwrap());
}
