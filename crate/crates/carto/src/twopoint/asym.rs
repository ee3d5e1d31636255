//! Asymptotic edge and vertex constants: the exact rational formulas and a
//! coefficient-extrapolation estimator for cross-checking them.

use super::{closed_form, Family, Observable, TwoPointError};
use crate::rat::{rat, rat_to_f64, ratio, Rat};
use num_traits::Zero;

/// Exact large-size constants for a family at index `i`: average numbers of
/// root edges by type and of vertices at distance `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymConstants {
    pub e_down_up: Rat,
    pub e_level: Option<Rat>,
    pub e_up_down: Rat,
    pub v: Option<Rat>,
}

/// The rational formulas for general and bipartite maps (`e_{i-1,i}`,
/// `e_{i,i}` where defined, `e_{i+1,i}`, and `v_i` for `i >= 1`).
pub fn exact_constants(family: Family, i: i64) -> Result<AsymConstants, TwoPointError> {
    let i_ = rat(i);
    match family {
        Family::GeneralMap => {
            let poly1 = rat(5) * i_.pow(4) + rat(30) * i_.pow(3) + rat(67) * i_.pow(2)
                + rat(66) * &i_
                + rat(28);
            let e_down_up = i_.clone()
                * (rat(i + 3))
                * rat(2 * i + 3)
                * poly1
                / (rat(35) * rat(i + 1).pow(2) * rat(i + 2).pow(2));
            let poly2 = rat(5) * i_.pow(8)
                + rat(80) * i_.pow(7)
                + rat(537) * i_.pow(6)
                + rat(1964) * i_.pow(5)
                + rat(4251) * i_.pow(4)
                + rat(5528) * i_.pow(3)
                + rat(4175) * i_.pow(2)
                + rat(1660) * &i_
                + rat(280);
            let e_level =
                rat(2) * poly2 / (rat(35) * rat(i + 1).pow(2) * rat(i + 2) * rat(i + 3).pow(2));
            let poly3 = rat(5) * i_.pow(4)
                + rat(50) * i_.pow(3)
                + rat(187) * i_.pow(2)
                + rat(310) * &i_
                + rat(196);
            let e_up_down = rat(i + 1) * rat(i + 4) * rat(2 * i + 5) * poly3
                / (rat(35) * rat(i + 2).pow(2) * rat(i + 3).pow(2));
            let v = if i >= 1 {
                Some(
                    ratio(3, 280)
                        * rat(2 * i + 3)
                        * (rat(10) * i_.pow(2) + rat(30) * &i_ + rat(9)),
                )
            } else {
                None
            };
            Ok(AsymConstants { e_down_up, e_level: Some(e_level), e_up_down, v })
        }
        Family::BipartiteMap => {
            let poly1 = rat(10) * i_.pow(4) + rat(80) * i_.pow(3) + rat(233) * i_.pow(2)
                + rat(292) * &i_
                + rat(141);
            let e_down_up = rat(2) * i_.clone() * rat(i + 4) * poly1
                / (rat(105) * rat(i + 1) * rat(i + 2) * rat(i + 3));
            let poly2 = rat(10) * i_.pow(4)
                + rat(120) * i_.pow(3)
                + rat(533) * i_.pow(2)
                + rat(1038) * &i_
                + rat(756);
            let e_up_down = rat(2) * rat(i + 1) * rat(i + 5) * poly2
                / (rat(105) * rat(i + 2) * rat(i + 3) * rat(i + 4));
            let v = if i >= 1 {
                Some(ratio(4, 315) * rat(i + 2) * (rat(10) * i_.pow(2) + rat(40) * &i_ + rat(13)))
            } else {
                None
            };
            Ok(AsymConstants { e_down_up, e_level: None, e_up_down, v })
        }
        other => Err(TwoPointError::UndefinedObservable(Observable::R, other)),
    }
}

/// Estimate `e_{i-1,i}` from the coefficients of `R_i - R_{i-1}`: the ratio
/// to the coefficients of `(1 - t/t_c)^{3/2}` converges to the singular
/// amplitude difference; Richardson extrapolation in `1/n` sharpens it and
/// the constant is `3/2` times the limit.
pub fn estimate_edge_constant(
    family: Family,
    i: usize,
    n_max: i64,
) -> Result<f64, TwoPointError> {
    if n_max < 50 {
        return Err(TwoPointError::EstimatorOrderTooSmall(n_max));
    }
    assert!(i >= 1);
    let inv_tc = match family {
        Family::GeneralMap => 12i64,
        Family::BipartiteMap => 8,
        other => return Err(TwoPointError::UndefinedObservable(Observable::R, other)),
    };
    let table = closed_form(family, i, n_max)?;
    let diff = table
        .series(Observable::R, i)?
        .sub(table.series(Observable::R, i - 1)?);
    // Sample the coefficient ratios at geometrically spaced orders
    // n_max, n_max/2, ...: Richardson extrapolation in 1/n is numerically
    // stable on such nodes.
    let mut nodes: Vec<i64> = Vec::new();
    let mut n = n_max;
    while n >= 25 && nodes.len() < 6 {
        nodes.push(n);
        n /= 2;
    }
    nodes.sort_unstable();
    // Coefficients of (1 - t/t_c)^{3/2} via the binomial recurrence.
    let mut d = rat(1);
    let mut ratio_at = std::collections::BTreeMap::new();
    for n in 0..=n_max {
        if n > 0 {
            d = d * (ratio(3, 2) - rat(n - 1)) / rat(n) * rat(-inv_tc);
        }
        if nodes.contains(&n) {
            if d.is_zero() {
                return Err(TwoPointError::Branch("vanishing reference coefficient".into()));
            }
            ratio_at.insert(n, rat_to_f64(&(diff.coeff(n) / d.clone())));
        }
    }
    let xs: Vec<f64> = nodes.iter().map(|&n| 1.0 / n as f64).collect();
    let ys: Vec<f64> = nodes.iter().map(|&n| ratio_at[&n]).collect();
    let delta = neville_at_zero(&xs, &ys);
    Ok(1.5 * delta)
}

fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = p.len();
    for level in 1..n {
        for j in 0..n - level {
            let (x0, x1) = (xs[j], xs[j + level]);
            p[j] = (x1 * p[j] - x0 * p[j + 1]) / (x1 - x0);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_at_small_indices() {
        let g = exact_constants(Family::GeneralMap, 1).unwrap();
        assert_eq!(g.e_down_up, ratio(28, 9));
        assert_eq!(g.v, Some(ratio(21, 8)));
        let g0 = exact_constants(Family::GeneralMap, 0).unwrap();
        assert_eq!(g0.e_level, Some(ratio(8, 9)));
        // Half edges at the pointed vertex add up to four.
        assert_eq!(g.e_down_up + g0.e_level.unwrap(), rat(4));
        let b = exact_constants(Family::BipartiteMap, 1).unwrap();
        assert_eq!(b.e_down_up, rat(3));
        assert_eq!(b.v, Some(ratio(12, 5)));
    }

    #[test]
    fn estimator_rejects_small_orders() {
        assert!(matches!(
            estimate_edge_constant(Family::GeneralMap, 1, 49),
            Err(TwoPointError::EstimatorOrderTooSmall(49))
        ));
    }

    #[test]
    fn estimator_converges_at_moderate_order() {
        // At order 120 the extrapolation is already well inside 2%.
        let est = estimate_edge_constant(Family::GeneralMap, 1, 120).unwrap();
        let exact = 28.0 / 9.0;
        assert!(
            (est - exact).abs() / exact < 0.02,
            "estimate {} vs exact {}",
            est,
            exact
        );
    }
}

