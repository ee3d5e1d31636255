//! Order-by-order solution of the mobile recurrences.
//!
//! Every recurrence has the shape `T_i = c + t * (polynomial in neighboring
//! T's and U's)`, so the coefficient of `t^n` in `T_i` is read off from
//! coefficients of order below `n`: no fixed-point iteration is needed.
//! Indices are computed on a padded window wide enough that the pad absorbs
//! the boundary: the coefficient of `t^n` at index `i` only depends on
//! indices within `reach * n` of `i`.

use super::{Family, Value};
use crate::rat::Rat;
use crate::series::{Grid, Series, Series2, ZPoly};
use num_traits::Zero;

/// `T_i` (and `U_i` for two-parameter families) for `i <= i_hi`, exact to
/// order `trunc`.
pub(crate) fn t_and_u(family: Family, i_hi: usize, trunc: i64) -> (Vec<Value>, Option<Vec<Value>>) {
    t_and_u_padded(family, i_hi, trunc, 2)
}

pub(crate) fn t_and_u_padded(
    family: Family,
    i_hi: usize,
    trunc: i64,
    extra_pad: usize,
) -> (Vec<Value>, Option<Vec<Value>>) {
    let window = i_hi + family.reach() * trunc.max(0) as usize + extra_pad;
    if family.two_param() {
        let (t, u) = solve_two_param(family, window, trunc);
        let take2 = |v: Vec<Series2>| -> Vec<Value> {
            v.into_iter().take(i_hi + 1).map(Value::Two).collect()
        };
        (take2(t), Some(take2(u)))
    } else {
        let t = solve_one_param(family, window, trunc);
        (t.into_iter().take(i_hi + 1).map(Value::One).collect(), None)
    }
}

/// One-parameter recurrences: `T_i = 1 + t * T_i * Q_i` with `Q_i` the
/// family's neighbor polynomial and `T_0 = 0` (plus `T_{-1} = 0`, which only
/// ever appears multiplied by `T_0`).
fn solve_one_param(family: Family, window: usize, trunc: i64) -> Vec<Series> {
    let n_max = trunc.max(0) as usize;
    // t[i][n], q[i][n]; index 0 is T_0 = 0; the window top is clamped.
    let w = window + 1;
    let mut t = vec![vec![Rat::zero(); n_max + 1]; w + 1];
    let mut q = vec![vec![Rat::zero(); n_max + 1]; w + 1];
    for row in t.iter_mut().skip(1) {
        row[0] = Rat::from_integer(1.into());
    }
    // Neighbor access with clamping: index -1 is zero, above the window the
    // bulk value at the top is reused (the pad keeps it out of the result).
    // Indices far beyond the requested window only influence low orders:
    // the wall information travels one index per order (per reach unit), so
    // index i_hi + k needs exactness only up to order n_max - k / reach.
    let i_hi = window.saturating_sub(family.reach() * n_max.max(1) + 2);
    let cap = |i: usize| -> usize {
        let excess = i.saturating_sub(i_hi + 2);
        n_max.saturating_sub(excess / family.reach().max(1))
    };
    for n in 1..=n_max {
        // Extend q to order n-1 first, then read off the new t coefficient.
        for i in 1..=w {
            if n > cap(i) + 1 {
                continue;
            }
            let b = n - 1;
            let at = |j: i64, ord: usize| -> Rat {
                if j <= 0 {
                    Rat::zero()
                } else {
                    let j = (j as usize).min(w);
                    t[j][ord].clone()
                }
            };
            let conv = |j1: i64, j2: i64| -> Rat {
                let mut acc = Rat::zero();
                for a in 0..=b {
                    let x = at(j1, a);
                    if x.is_zero() {
                        continue;
                    }
                    acc += x * at(j2, b - a);
                }
                acc
            };
            let i_ = i as i64;
            q[i][b] = match family {
                Family::GeneralMap => at(i_ - 1, b) + at(i_, b) + at(i_ + 1, b),
                Family::BipartiteMap | Family::GeneralHypermap => at(i_ - 1, b) + at(i_ + 1, b),
                Family::ThreeHypermap => {
                    conv(i_ - 2, i_ - 1)
                        + conv(i_ - 1, i_ - 1)
                        + conv(i_ - 1, i_).scale_two()
                        + conv(i_, i_)
                        + conv(i_ - 1, i_ + 1)
                        + conv(i_, i_ + 1).scale_two()
                        + conv(i_ + 1, i_ + 1)
                        + conv(i_ + 1, i_ + 2)
                }
                Family::ThreeConstellation => {
                    conv(i_ - 2, i_ - 1) + conv(i_ - 1, i_ + 1) + conv(i_ + 1, i_ + 2)
                }
                _ => unreachable!("two-parameter families use solve_two_param"),
            };
        }
        for i in 1..=w {
            if n > cap(i) + 1 {
                continue;
            }
            // [t^n] T_i = [t^{n-1}] (T_i * Q_i).
            let mut acc = Rat::zero();
            for a in 0..n {
                let x = &t[i][a];
                if x.is_zero() {
                    continue;
                }
                acc += x * &q[i][n - 1 - a];
            }
            t[i][n] = acc;
        }
    }
    t.into_iter()
        .map(|coeffs| {
            Series::from_terms(
                Grid::One,
                &coeffs.into_iter().enumerate().map(|(n, c)| (n as i64, c)).collect::<Vec<_>>(),
                trunc,
            )
        })
        .collect()
}

trait ScaleTwo {
    fn scale_two(self) -> Self;
}

impl ScaleTwo for Rat {
    fn scale_two(self) -> Rat {
        self * Rat::from_integer(2.into())
    }
}

/// Two-parameter recurrences with `T_0 = U_0 = 0`.
fn solve_two_param(family: Family, window: usize, trunc: i64) -> (Vec<Series2>, Vec<Series2>) {
    let n_max = trunc.max(0) as usize;
    let w = window + 1;
    let zero = ZPoly::zero();
    let mut t = vec![vec![zero.clone(); n_max + 1]; w + 1];
    let mut u = vec![vec![zero.clone(); n_max + 1]; w + 1];
    for i in 1..=w {
        t[i][0] = ZPoly::monomial(1, crate::rat::rat(1)); // z
        u[i][0] = ZPoly::constant(crate::rat::rat(1));
    }
    let zero = ZPoly::zero();
    let i_hi = window.saturating_sub(n_max.max(1) + 2);
    let cap = |i: usize| -> usize { n_max.saturating_sub(i.saturating_sub(i_hi + 2)) };
    for n in 1..=n_max {
        let b = n - 1;
        let mut t_new = Vec::with_capacity(w + 1);
        let mut u_new = Vec::with_capacity(w + 1);
        t_new.push(ZPoly::zero());
        u_new.push(ZPoly::zero());
        for i in 1..=w {
            if n > cap(i) + 1 {
                t_new.push(ZPoly::zero());
                u_new.push(ZPoly::zero());
                continue;
            }
            let i_ = i as i64;
            fn at<'a>(
                zero: &'a ZPoly,
                w: usize,
                arr: &'a [Vec<ZPoly>],
                j: i64,
                ord: usize,
            ) -> &'a ZPoly {
                if j <= 0 {
                    zero
                } else {
                    &arr[(j as usize).min(w)][ord]
                }
            }
            // acc += sum_a x[a] * y[b - a]
            let conv_into =
                |acc: &mut ZPoly, xa: &[Vec<ZPoly>], xj: i64, ya: &[Vec<ZPoly>], yj: i64| {
                    for a in 0..=b {
                        acc.add_assign_mul(at(&zero, w, xa, xj, a), at(&zero, w, ya, yj, b - a));
                    }
                };
            let mut tn = ZPoly::zero();
            let mut un = ZPoly::zero();
            match family {
                Family::GeneralMapTwoParam => {
                    // T_i = z + t (T_i U_{i-1} + T_i^2 + U_i T_{i+1})
                    conv_into(&mut tn, &t, i_, &u, i_ - 1);
                    conv_into(&mut tn, &t, i_, &t, i_);
                    conv_into(&mut tn, &u, i_, &t, i_ + 1);
                    // U_i = 1 + t (U_i U_{i-1} + U_i T_i + U_i T_{i+1})
                    conv_into(&mut un, &u, i_, &u, i_ - 1);
                    conv_into(&mut un, &u, i_, &t, i_);
                    conv_into(&mut un, &u, i_, &t, i_ + 1);
                }
                Family::BipartiteMapTwoParam | Family::GeneralHypermapTwoParam => {
                    // T_i = z + t (T_i U_{i-1} + U_i T_{i+1})
                    conv_into(&mut tn, &t, i_, &u, i_ - 1);
                    conv_into(&mut tn, &u, i_, &t, i_ + 1);
                    // U_i = 1 + t (U_i U_{i-1} + U_i T_{i+1})
                    conv_into(&mut un, &u, i_, &u, i_ - 1);
                    conv_into(&mut un, &u, i_, &t, i_ + 1);
                }
                _ => unreachable!(),
            }
            t_new.push(tn);
            u_new.push(un);
        }
        for i in 1..=w {
            t[i][n] = std::mem::take(&mut t_new[i]);
            u[i][n] = std::mem::take(&mut u_new[i]);
        }
    }
    let pack = |arr: Vec<Vec<ZPoly>>| -> Vec<Series2> {
        arr.into_iter()
            .map(|coeffs| {
                let mut s = Series2::zero(trunc);
                for (n, p) in coeffs.into_iter().enumerate() {
                    if n as i64 <= trunc {
                        s.set_coeff(n as i64, p);
                    }
                }
                s
            })
            .collect()
    };
    (pack(t), pack(u))
}
