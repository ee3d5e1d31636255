//! The continued-fraction route: the coupled fixed point for `R` and `S`
//! whose kernel counts three-step lattice paths by dynamic programming.

use super::TwoPointError;
use crate::rat::{rat, Rat};
use crate::series::{Grid, Series};
use num_traits::One;

/// Solve the coupled system on the half grid, optionally with a rational
/// face weight `z`:
///
/// `S = z * sum_k t^{k/2} P(k-1, R, S)`;
/// `R = 1 + (z/2) * sum_k t^{k/2} P(k, R, S) - S^2 / 2`,
///
/// where `P(k, R, S)` counts paths of `k` steps from height 0 to height 0
/// made of up-steps, level-steps and down-steps, weighted `sqrt(R)` per up
/// or down step and `S` per level step. The path counts are evaluated by
/// dynamic programming over (length, height) at every pass.
pub fn continued_fraction_rs(
    z: &Rat,
    trunc_t: i64,
) -> Result<(Series, Series), TwoPointError> {
    let units = 2 * trunc_t; // half-grid units
    let mut s = Series::zero(Grid::Half, 2);
    let mut r = Series::one(Grid::Half, 2);
    // Each pass gains at least one full order of t, so the working
    // truncation can grow with the pass number.
    for p in 1..=(2 * trunc_t + 8) {
        let work = (4 * p).min(units);
        let (s_next, r_next) = pass(&s, &r, z, work)?;
        if work == units && s_next == s && r_next == r {
            return Ok((s, r));
        }
        s = s_next;
        r = r_next;
    }
    Err(TwoPointError::Branch("continued-fraction fixed point did not stabilize".into()))
}

fn pass(s: &Series, r: &Series, z: &Rat, units: i64) -> Result<(Series, Series), TwoPointError> {
    let half = crate::rat::ratio(1, 2);
    let root_t = Series::monomial(Grid::Half, 1, rat(1), units);
    // Widen to the working truncation: coefficients beyond the inputs'
    // accuracy are provisional and converge over the following passes.
    let widen = |x: &Series| -> Series {
        Series::from_terms(Grid::Half, &x.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(), units)
    };
    let s = &widen(s);
    let r = &widen(r);
    // Step weights absorb one factor sqrt(t) each.
    let level = root_t.mul(s);
    let updown = root_t.mul(&r.sqrt()?);
    // Dynamic programming over path length and height (heights may go
    // negative: the paths are unconstrained walks); `paths[off + h]` is the
    // weight sum of length-j prefixes ending at height h.
    let k_max = (units + 1) as usize;
    let off = k_max + 1;
    let mut paths: Vec<Series> = vec![Series::zero(Grid::Half, units); 2 * off + 1];
    paths[off] = Series::one(Grid::Half, units);
    // sum0 = sum over nonempty path lengths of t^{k/2} P(k);
    // sum1 = the same shifted one step shorter (the P(k-1) kernel).
    let mut sum0 = Series::zero(Grid::Half, units);
    let mut sum1 = Series::zero(Grid::Half, units);
    for j in 1..=k_max {
        sum1 = sum1.add(&root_t.mul(&paths[off]));
        let reach = j.min(k_max - j / 2);
        let mut next: Vec<Series> = vec![Series::zero(Grid::Half, units); paths.len()];
        for h in (off - reach.min(off))..=(off + reach).min(paths.len() - 1) {
            if paths[h].is_zero() {
                continue;
            }
            let stay = paths[h].mul(&level);
            next[h] = next[h].add(&stay).truncate(units);
            if h + 1 < next.len() {
                let up = paths[h].mul(&updown);
                next[h + 1] = next[h + 1].add(&up).truncate(units);
            }
            if h > 0 {
                let down = paths[h].mul(&updown);
                next[h - 1] = next[h - 1].add(&down).truncate(units);
            }
        }
        paths = next;
        sum0 = sum0.add(&paths[off]);
        if paths.iter().all(|p| p.is_zero()) {
            break;
        }
    }
    let s_next = sum1.scale(z).truncate(units);
    let one = Series::one(Grid::Half, units);
    let r_next = one
        .add(&sum0.scale(&(z * &half)))
        .sub(&s.mul(s).scale(&half))
        .truncate(units);
    let _ = Rat::one();
    Ok((s_next, r_next))
}
