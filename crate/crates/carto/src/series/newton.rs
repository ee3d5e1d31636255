//! Newton iteration for algebraic series equations.

use super::{Series, SeriesError};

/// Evaluate a polynomial functional `F(X) = sum_k poly[k] * X^k` by Horner.
fn eval_poly(poly: &[Series], x: &Series) -> Series {
    let grid = x.grid();
    let trunc = poly.iter().map(|c| c.trunc_units()).min().unwrap_or(x.trunc_units());
    let mut acc = Series::zero(grid, trunc);
    for c in poly.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn poly_derivative(poly: &[Series]) -> Vec<Series> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&crate::rat::rat(k as i64)))
        .collect()
}

/// Solve `F(X) = 0` for a series `X`, where `F` is polynomial in the unknown
/// with series coefficients: `poly[k]` is the coefficient of `X^k`.
///
/// Requires `F(init) = 0` at order zero and `dF/dX(init)` to be a unit; the
/// solution is the unique one with the initial value's leading behavior.
pub fn newton_solve(poly: &[Series], init: &Series) -> Result<Series, SeriesError> {
    newton_iterate(poly, init, false)
}

/// Newton iteration accepting a derivative with positive valuation, as
/// needed for branch points reached on the half grid (the correction then
/// gains slightly less than a doubling per step but still converges).
pub fn newton_solve_ramified(poly: &[Series], init: &Series) -> Result<Series, SeriesError> {
    newton_iterate(poly, init, true)
}

fn newton_iterate(poly: &[Series], init: &Series, allow_ramified: bool) -> Result<Series, SeriesError> {
    let deriv = poly_derivative(poly);
    let f0 = eval_poly(poly, init);
    if let Some(v) = f0.valuation() {
        if v <= 0 {
            // Not a root even at order zero.
            return Err(SeriesError::NewtonSingular);
        }
    }
    let d0 = eval_poly(&deriv, init);
    match d0.valuation() {
        None => return Err(SeriesError::NewtonSingular),
        Some(v) if v != 0 && !allow_ramified => return Err(SeriesError::NewtonSingular),
        Some(_) => {}
    }
    let trunc = f0.trunc_units();
    let max_iter = (trunc.max(1) as usize) + 8;
    let mut x = init.clone();
    for _ in 0..max_iter {
        let fx = eval_poly(poly, &x);
        if fx.is_zero() {
            return Ok(x);
        }
        let dx = eval_poly(&deriv, &x);
        let step = fx.div(&dx)?;
        let next = x.sub(&step);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(SeriesError::NewtonNoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::series::Grid;

    /// Substituting the result back into its defining equation is the oracle
    /// for every case here.
    fn residual_is_zero(poly: &[Series], x: &Series) {
        assert!(eval_poly(poly, x).is_zero(), "nonzero residual");
    }

    #[test]
    fn tree_equation_general() {
        // X = 1 + 3t X^2
        let n = 8;
        let one = Series::one(Grid::One, n);
        let t = Series::var(Grid::One, n);
        let poly = [one.neg(), one.clone(), t.scale(&rat(-3))];
        let x = newton_solve(&poly, &one).unwrap();
        for (e, c) in [(0, 1), (1, 3), (2, 18), (3, 135), (4, 1134)] {
            assert_eq!(x.coeff(e), rat(c));
        }
        residual_is_zero(&poly, &x);
    }

    #[test]
    fn tree_equation_bipartite() {
        // X = 1 + 2t X^2
        let n = 6;
        let one = Series::one(Grid::One, n);
        let t = Series::var(Grid::One, n);
        let poly = [one.neg(), one.clone(), t.scale(&rat(-2))];
        let x = newton_solve(&poly, &one).unwrap();
        for (e, c) in [(0, 1), (1, 2), (2, 8), (3, 40), (4, 224)] {
            assert_eq!(x.coeff(e), rat(c));
        }
        residual_is_zero(&poly, &x);
    }

    #[test]
    fn linear_case() {
        // F = X - t
        let n = 5;
        let t = Series::var(Grid::One, n);
        let poly = [t.neg(), Series::one(Grid::One, n)];
        let x = newton_solve(&poly, &Series::zero(Grid::One, n)).unwrap();
        assert_eq!(x, t);
    }

    #[test]
    fn singular_derivative_rejected() {
        // F = X^2 - t has dF/dX = 2X, not a unit at X = 0.
        let n = 6;
        let t = Series::var(Grid::One, n);
        let poly = [t.neg(), Series::zero(Grid::One, n), Series::one(Grid::One, n)];
        assert_eq!(
            newton_solve(&poly, &Series::zero(Grid::One, n)),
            Err(SeriesError::NewtonSingular)
        );
    }

    #[test]
    fn ramified_square_root_of_t() {
        // F = X^2 - t on the half grid, init X = u: converges to t^(1/2).
        let n = 12;
        let t = Series::var(Grid::Half, n);
        let poly = [t.neg(), Series::zero(Grid::Half, n), Series::one(Grid::Half, n)];
        let init = Series::monomial(Grid::Half, 1, rat(1), n);
        let x = newton_solve_ramified(&poly, &init).unwrap();
        assert_eq!(x, Series::monomial(Grid::Half, 1, rat(1), x.trunc_units()));
    }
}
