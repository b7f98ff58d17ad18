use serde_json::Value;

use qwalk_demo::{convergence_json, mixing_json, sandwich_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn mixing_heatmap_data() {
    let v = parse(mixing_json("cycle:4", "0,2").unwrap());
    assert_eq!(v["n"], 4);
    let m = &v["matrix"];
    assert!((m[1][1].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(m[3][1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn convergence_shrinks() {
    let v = parse(convergence_json("petersen", "0", 2000, 10).unwrap());
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 10);
    let first = pts[0][1].as_f64().unwrap();
    let last = pts[9][1].as_f64().unwrap();
    assert!(last < first && last < 5e-3, "{first} {last}");
}

#[test]
fn sandwich_holds() {
    let v = parse(sandwich_json("cycle:6", "0,1,3").unwrap());
    for i in 0..3 {
        for j in 0..3 {
            let lo = v["lower"][i][j].as_f64().unwrap();
            let x = v["value"][i][j].as_f64().unwrap();
            let hi = v["upper"][i][j].as_f64().unwrap();
            assert!(lo <= x + 1e-10 && x <= hi + 1e-10);
        }
    }
    assert_eq!(v["lower_tight"], false);
}

#[test]
fn errors_are_messages() {
    assert!(mixing_json("wheel:4", "0").is_err());
    assert!(mixing_json("cycle:4", "").is_err());
    assert!(convergence_json("cycle:4", "0", 0, 1).is_err());
}
