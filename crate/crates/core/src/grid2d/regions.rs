use super::{CanonicalConfig, Point};
use crate::error::{Error, Result};

fn in_normal_strip(cc: &CanonicalConfig, p: Point) -> bool {
    let c = cc.config();
    let (alpha, beta) = cc.alpha_beta();
    let (a2, b2) = (alpha.twice(), beta.twice());
    let (x, y) = (p.x as i64, p.y as i64);
    let (xf, xe) = (c.f.x as i64, c.e.x as i64);
    if x < xf {
        a2 - 2 <= 2 * y && 2 * y <= a2
    } else if x <= xe {
        let lo = 2 * xf - a2;
        lo <= 2 * (x - y) && 2 * (x - y) <= lo + 2
    } else {
        b2 - 2 <= 2 * y && 2 * y <= b2
    }
}

/// Normal vertices from the three-strip formula: a horizontal band of height
/// at most two left of `F` and right of `E`, joined by a diagonal band.
pub fn normal_region_closed_form(cc: &CanonicalConfig) -> Result<Vec<usize>> {
    cc.require_assumptions()?;
    let c = cc.config();
    Ok((0..c.vertex_count())
        .filter(|&id| in_normal_strip(cc, c.point(id)))
        .collect())
}

/// `(R_E, R_F)` by splitting every column at the normal strip: vertices above
/// it form `R_F` (the side of `E`), vertices below it form `R_E`.
pub fn special_regions_flood(cc: &CanonicalConfig) -> Result<(Vec<usize>, Vec<usize>)> {
    cc.require_assumptions()?;
    let c = cc.config();
    let mut re = Vec::new();
    let mut rf = Vec::new();
    for x in 1..=c.n {
        let rows: Vec<usize> = (1..=c.m)
            .filter(|&y| in_normal_strip(cc, Point::new(x, y)))
            .collect();
        let (Some(&top), Some(&bottom)) = (rows.first(), rows.last()) else {
            return Err(Error::Fault(format!(
                "{c}: column {x} misses the normal strip"
            )));
        };
        if bottom - top + 1 != rows.len() {
            return Err(Error::Fault(format!(
                "{c}: normal strip has a gap in column {x}"
            )));
        }
        rf.extend((1..top).map(|y| c.id(Point::new(x, y))));
        re.extend((bottom + 1..=c.m).map(|y| c.id(Point::new(x, y))));
    }
    re.sort_unstable();
    rf.sort_unstable();
    Ok((re, rf))
}

type Membership = Box<dyn Fn(i64, i64, i64) -> bool>;

/// Special region and maximum gain of `A = (1, k)` on the left boundary.
/// Below the strip `R_A` is a diamond-capped quadrant around `E`; above it,
/// around `F`. Inside the strip both are empty.
pub fn boundary_special_region(cc: &CanonicalConfig, k: usize) -> Result<(Vec<usize>, u32)> {
    cc.require_assumptions()?;
    let c = cc.config();
    if !(1..=c.m).contains(&k) {
        return Err(Error::invalid(format!("row {k} outside 1..={}", c.m)));
    }
    let (gain, gain_p) = cc.gains();
    let (alpha, _) = cc.alpha_beta();
    let k2 = 2 * k as i64;
    let (ex, ey, fx, fy) = (c.e.x as i64, c.e.y as i64, c.f.x as i64, c.f.y as i64);
    let ki = k as i64;

    let (g, member): (i64, Membership) = if k2 > alpha.twice() {
        let g = if ki >= fy { gain } else { gain - 2 * (fy - ki) };
        (
            g,
            Box::new(move |x, y, g| {
                (ex <= x && y <= ey)
                    || (ex <= x && 0 <= y - ey && 2 * (y - ey) < g)
                    || (y <= ey && 0 <= ex - x && 2 * (ex - x) < g)
                    || (x <= ex && ey <= y && 2 * ((ex - x) + (y - ey)) < g)
            }),
        )
    } else if k2 < alpha.twice() - 2 {
        let g = if ki <= ey {
            gain_p
        } else {
            gain_p - 2 * (ki - ey)
        };
        (
            g,
            Box::new(move |x, y, g| {
                (fx <= x && fy <= y)
                    || (fx <= x && 0 <= fy - y && 2 * (fy - y) < g)
                    || (fy <= y && 0 <= fx - x && 2 * (fx - x) < g)
                    || (x <= fx && y <= fy && 2 * ((fx - x) + (fy - y)) < g)
            }),
        )
    } else {
        return Ok((Vec::new(), 0));
    };

    let set = (0..c.vertex_count())
        .filter(|&id| {
            let p = c.point(id);
            member(p.x as i64, p.y as i64, g)
        })
        .collect();
    let g =
        u32::try_from(g).map_err(|_| Error::Fault(format!("{c}: negative gain {g} at row {k}")))?;
    Ok((set, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid2d::GridEdgeConfig;
    use crate::perturb::{gain_profile, region_partition, special_region, Region};

    fn cc(n: usize, e: (usize, usize), f: (usize, usize)) -> CanonicalConfig {
        CanonicalConfig::new(
            GridEdgeConfig::new(n, n, Point::new(e.0, e.1), Point::new(f.0, f.1)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn normal_strip_example() {
        let c = cc(9, (4, 2), (3, 6));
        let normal = normal_region_closed_form(&c).unwrap();
        let pts: Vec<Point> = normal.iter().map(|&i| c.config().point(i)).collect();
        for p in &pts {
            match p.x {
                1 | 2 => assert!([3, 4].contains(&p.y), "{p}"),
                3 | 4 => assert!([-1, 0].contains(&(p.x as i64 - p.y as i64)), "{p}"),
                _ => assert!([4, 5].contains(&p.y), "{p}"),
            }
        }
        assert_eq!(pts.len(), 2 * 9);
    }

    #[test]
    fn odd_gain_prime_strips_have_height_one() {
        let c = cc(10, (4, 2), (3, 7));
        let normal = normal_region_closed_form(&c).unwrap();
        assert_eq!(normal.len(), 10);
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for (e, f) in [
            ((4, 2), (3, 6)),
            ((4, 2), (3, 7)),
            ((6, 3), (3, 10)),
            ((5, 2), (4, 9)),
        ] {
            let c = cc(11, e, f);
            let d = c.config().grid_distances();
            let ee = c.config().extra_edge(&d);
            let part = region_partition(&d, ee);
            assert_eq!(
                normal_region_closed_form(&c).unwrap(),
                part.members(Region::N)
            );
            let (re, rf) = special_regions_flood(&c).unwrap();
            assert_eq!(re, part.members(Region::RE));
            assert_eq!(rf, part.members(Region::RF));
            let profile = gain_profile(&d, ee).unwrap();
            for k in 1..=11 {
                let (ra, g) = boundary_special_region(&c, k).unwrap();
                let a = c.config().id(Point::new(1, k));
                assert_eq!(ra, special_region(&d, ee, a), "{e:?} {f:?} k={k}");
                assert_eq!(g, profile.gain_max[a], "{e:?} {f:?} k={k}");
            }
        }
    }

    #[test]
    fn boundary_gain_extremes() {
        let c = cc(12, (5, 3), (4, 9));
        let (gain, gain_p) = c.gains();
        assert_eq!(boundary_special_region(&c, 12).unwrap().1 as i64, gain);
        assert_eq!(boundary_special_region(&c, 1).unwrap().1 as i64, gain_p);
    }

    #[test]
    fn assumption_violations_are_preconditions() {
        let c = cc(9, (3, 2), (3, 6));
        assert!(matches!(
            normal_region_closed_form(&c),
            Err(Error::Precondition(_))
        ));
        let edge = cc(9, (4, 1), (3, 6));
        assert!(special_regions_flood(&edge).is_err());
    }
}
