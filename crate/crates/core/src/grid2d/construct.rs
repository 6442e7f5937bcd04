use super::{CanonicalConfig, GridEdgeConfig, Point};
use crate::error::{Error, Result};

/// Ids of `P, Q, R, S`. Resolves the grid with any single extra edge.
pub fn four_corner_set(c: &GridEdgeConfig) -> [usize; 4] {
    c.corners().map(|p| c.id(p))
}

/// `{(1, ⌊β⌋), (n, ⌊β⌋), (n, 1)}` for odd `Gain′`.
pub fn resolving_set_odd(cc: &CanonicalConfig) -> Result<[usize; 3]> {
    cc.require_assumptions()?;
    let (_, gain_p) = cc.gains();
    if gain_p % 2 == 0 {
        return Err(Error::precondition(format!("Gain' = {gain_p} is even")));
    }
    let c = cc.config();
    let row = row(c, cc.alpha_beta().1.floor())?;
    Ok([
        c.id(Point::new(1, row)),
        c.id(Point::new(c.n, row)),
        c.id(Point::new(c.n, 1)),
    ])
}

/// `{(1, β−1), (n, β−1), (1, α−1)}` for even `Gain′` with
/// `x_E − x_F < Gain′/2 + 2`.
pub fn resolving_set_even(cc: &CanonicalConfig) -> Result<[usize; 3]> {
    cc.require_assumptions()?;
    let (_, gain_p) = cc.gains();
    if gain_p % 2 != 0 {
        return Err(Error::precondition(format!("Gain' = {gain_p} is odd")));
    }
    let c = cc.config();
    if 2 * c.dx() >= gain_p + 4 {
        return Err(Error::precondition(format!(
            "x_E - x_F = {} is not below Gain'/2 + 2",
            c.dx()
        )));
    }
    let (alpha, beta) = cc.alpha_beta();
    let (yb, ya) = (row(c, beta.floor() - 1)?, row(c, alpha.floor() - 1)?);
    Ok([
        c.id(Point::new(1, yb)),
        c.id(Point::new(c.n, yb)),
        c.id(Point::new(1, ya)),
    ])
}

fn row(c: &GridEdgeConfig, y: i64) -> Result<usize> {
    usize::try_from(y)
        .ok()
        .filter(|y| (1..=c.m).contains(y))
        .ok_or_else(|| Error::Fault(format!("{c}: landmark row {y} off the grid")))
}
