use entropic_web::{check_state_json, d2_curve_json, diagram_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn diagram_points_respect_the_bound() {
    let v = parse(diagram_json("fourier:3", 1.0, 500, "haar", 1).unwrap());
    let bound = v["bound_bits"].as_f64().unwrap();
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 500);
    for p in pts {
        assert!(p[0].as_f64().unwrap() + p[1].as_f64().unwrap() >= bound - 1e-9);
    }
    assert!(!v["frontier"].as_array().unwrap().is_empty());
    assert_eq!(v["beta"], 1.0);
}

#[test]
fn diagram_rejects_files_and_bad_orders() {
    assert!(diagram_json("file:/tmp/x.json", 1.0, 10, "haar", 0).is_err());
    assert!(diagram_json("fourier:3", 0.4, 10, "haar", 0).is_err());
    assert!(diagram_json("fourier:3", 1.0, 10, "bogus", 0).is_err());
}

#[test]
fn d2_curve_touches_the_corners() {
    let v = parse(d2_curve_json(std::f64::consts::FRAC_PI_4, 2.0, 101).unwrap());
    let c = v["curve"].as_array().unwrap();
    assert_eq!(c.len(), 101);
    let first = (c[0][0].as_f64().unwrap(), c[0][1].as_f64().unwrap());
    assert!(first.0.abs() < 1e-9 && (first.1 - 1.0).abs() < 1e-9, "{first:?}");
    assert_eq!(v["beta"].as_f64().unwrap(), 2.0 / 3.0);
}

#[test]
fn check_state_verdicts() {
    let h = 0.5;
    let uniform = format!("[[{h},0],[{h},0],[{h},0],[{h},0]]");
    let v = parse(check_state_json("fourier:4", &uniform, 1.0).unwrap());
    assert_eq!(v["verdict"], "equality");
    let v = parse(check_state_json("fourier:4", "[[0.6,0],[0.8,0],[0,0],[0,0]]", 1.0).unwrap());
    assert_ne!(v["verdict"], "equality");
    assert!(check_state_json("fourier:4", "[[1,0]]", 1.0).is_err());
    assert!(check_state_json("fourier:4", "not json", 1.0).is_err());
}
