use serde_json::{json, Value};

use super::{conjecture_predict, CanonicalConfig, GridEdgeConfig, Point};
use crate::error::Result;
use crate::perturb::{region_of, region_report, Region};

/// One text row per grid row, top row first: `E` for `R_E`, `F` for `R_F`,
/// `.` for normal vertices, with `e`/`f` marking the endpoints.
pub fn region_map_ascii(c: &GridEdgeConfig) -> String {
    let d = c.grid_distances();
    let edge = c.extra_edge(&d);
    let mut out = String::with_capacity(c.vertex_count() + c.m);
    for y in 1..=c.m {
        for x in 1..=c.n {
            let p = Point::new(x, y);
            let ch = if p == c.e {
                'e'
            } else if p == c.f {
                'f'
            } else {
                match region_of(&d, edge, c.id(p)) {
                    Region::RE => 'E',
                    Region::N => '.',
                    Region::RF => 'F',
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

/// The generic region report plus `alpha`, `beta` (null unless the input is
/// already in canonical orientation), `gain` and `gain_prime`.
pub fn region_map_json(c: &GridEdgeConfig) -> Result<Value> {
    let d = c.grid_distances();
    let mut v = region_report(&d, c.extra_edge(&d))?;
    let verdict = conjecture_predict(c);
    let (alpha, beta) = match CanonicalConfig::new(*c) {
        Ok(cc) => {
            let (a, b) = cc.alpha_beta();
            (json!(a), json!(b))
        }
        Err(_) => (Value::Null, Value::Null),
    };
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("alpha".into(), alpha);
    obj.insert("beta".into(), beta);
    obj.insert("gain".into(), json!(verdict.gain));
    obj.insert("gain_prime".into(), json!(verdict.gain_prime.max(0)));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_map_shape_and_markers() {
        let c = GridEdgeConfig::new(9, 9, Point::new(4, 2), Point::new(3, 6)).unwrap();
        let map = region_map_ascii(&c);
        let rows: Vec<&str> = map.lines().collect();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.len() == 9));
        assert_eq!(rows[1].as_bytes()[3], b'e');
        assert_eq!(rows[5].as_bytes()[2], b'f');
        assert_eq!(rows[0].as_bytes()[0], b'F');
        assert_eq!(rows[8].as_bytes()[8], b'E');
        assert_eq!(rows[2].as_bytes()[0], b'.');
    }

    #[test]
    fn json_map_fields() {
        let c = GridEdgeConfig::new(9, 9, Point::new(4, 2), Point::new(3, 6)).unwrap();
        let v = region_map_json(&c).unwrap();
        assert_eq!(v["alpha"], json!(4));
        assert_eq!(v["beta"], json!(5));
        assert_eq!(v["gain"], json!(4));
        assert_eq!(v["gain_prime"], json!(2));
        let swapped = region_map_json(&c.swapped()).unwrap();
        assert!(swapped["alpha"].is_null());
    }
}
