use serde::Serialize;

use super::{build_poset, Arrangement};
use crate::arith::poly::eval_int_poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCount {
    pub regions: u64,
    /// Bounded regions of the essentialized arrangement.
    pub bounded: u64,
}

/// Zaslavsky's evaluations: regions = (-1)^l chi(-1), bounded = |chi_ess(1)|.
pub fn count_regions(a: &Arrangement) -> Result<RegionCount> {
    if !a.is_realized() {
        return Err(Error::Precondition(
            "region counting needs real (rational) normals".into(),
        ));
    }
    let poset = build_poset(a);
    let chi = poset.characteristic_polynomial();
    let l = poset.ambient_dim();
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let regions = sign * eval_int_poly(&chi, -1);
    // chi = t^{l - r} chi_ess
    let r = poset.rank();
    let ess = &chi[l - r..];
    let bounded = eval_int_poly(ess, 1).unsigned_abs();
    Ok(RegionCount { regions: regions as u64, bounded })
}
