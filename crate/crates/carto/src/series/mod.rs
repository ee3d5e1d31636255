//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] lives on an exponent grid of step 1 or 1/2 and is truncated
//! at a maximal kept exponent (inclusive). A bounded negative tail is
//! allowed, so ratios whose denominator has positive valuation stay exact.
//! Coefficients are arbitrary-precision rationals; there is no floating
//! point anywhere in this module.
//!
//! Truncation bookkeeping is valuation-aware: a product is exact up to
//! `min(a.trunc + b.val, b.trunc + a.val)`, which reduces to the minimum of
//! the two truncation orders for ordinary power series and never claims a
//! coefficient that is not determined by the inputs.

mod newton;
mod two;

pub mod io;

pub use newton::{newton_solve, newton_solve_ramified};
pub use two::{invert_two_param, Series2, TwoParamSystem, ZPoly};

use crate::rat::{rat, rat_sqrt, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exponent grid: multiples of 1 or of 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grid {
    One,
    Half,
}

impl Grid {
    /// Grid units per unit power of the variable.
    pub fn units_per_t(self) -> i64 {
        match self {
            Grid::One => 1,
            Grid::Half => 2,
        }
    }

    /// The exponent value of `units` grid units, as a rational.
    pub fn exponent_value(self, units: i64) -> Rat {
        match self {
            Grid::One => rat(units),
            Grid::Half => Rat::new(units.into(), 2.into()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series live on different exponent grids")]
    GridMismatch,
    #[error("division by a series that is identically zero to truncation order")]
    DivisionByZero,
    #[error("square root of a series with odd valuation {0} (grid units)")]
    SqrtOddValuation(i64),
    #[error("leading coefficient {0} is not a rational square")]
    SqrtNotSquare(String),
    #[error("logarithm requires constant term 1, found {0}")]
    LogConstantTerm(String),
    #[error("exponential requires zero constant term")]
    ExpConstantTerm,
    #[error("Newton step is singular: derivative at the initial value is not a unit")]
    NewtonSingular,
    #[error("Newton iteration did not converge within the truncation order")]
    NewtonNoConvergence,
    #[error("series has terms off the integer grid")]
    NotOnIntegerGrid,
    #[error("two-parameter inversion failed to gain an order per pass")]
    InversionStalled,
}

/// Truncated Laurent-type series on a grid of step 1 or 1/2.
///
/// Invariants: stored exponents (in grid units) lie in
/// `min_exp ..= trunc`; the vector is trimmed so the first entry is the
/// valuation (an all-zero series has an empty vector); arithmetic never
/// raises the truncation order beyond what the inputs determine.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    grid: Grid,
    /// Exponent in grid units of `coeffs[0]`.
    min_exp: i64,
    /// Maximal exponent kept, inclusive, in grid units.
    trunc: i64,
    coeffs: Vec<Rat>,
}

impl Series {
    /// The zero series, known through exponent `trunc` (grid units).
    pub fn zero(grid: Grid, trunc: i64) -> Self {
        Series { grid, min_exp: trunc + 1, trunc, coeffs: Vec::new() }
    }

    /// The constant one.
    pub fn one(grid: Grid, trunc: i64) -> Self {
        Series::monomial(grid, 0, rat(1), trunc)
    }

    /// `c * t^(units * step)`.
    pub fn monomial(grid: Grid, units: i64, c: Rat, trunc: i64) -> Self {
        if c.is_zero() || units > trunc {
            return Series::zero(grid, trunc);
        }
        Series { grid, min_exp: units, trunc, coeffs: vec![c] }
    }

    /// The variable `t` itself.
    pub fn var(grid: Grid, trunc: i64) -> Self {
        Series::monomial(grid, grid.units_per_t(), rat(1), trunc)
    }

    /// Build from `(units, coefficient)` pairs; entries above `trunc` are an
    /// error in the caller and rejected by debug assertion, duplicates add.
    pub fn from_terms(grid: Grid, terms: &[(i64, Rat)], trunc: i64) -> Self {
        let mut s = Series::zero(grid, trunc);
        for (e, c) in terms {
            debug_assert!(*e <= trunc, "term exponent {} above truncation {}", e, trunc);
            if *e <= trunc && !c.is_zero() {
                s = s.add(&Series::monomial(grid, *e, c.clone(), trunc));
            }
        }
        s
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Maximal exponent kept, in grid units (inclusive).
    pub fn trunc_units(&self) -> i64 {
        self.trunc
    }

    /// Truncation order as a rational exponent value.
    pub fn trunc_order(&self) -> Rat {
        self.grid.exponent_value(self.trunc)
    }

    /// Lowest stored exponent (grid units); `trunc + 1` for the zero series.
    pub fn min_exp_units(&self) -> i64 {
        self.min_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation in grid units, `None` for a series that is zero to
    /// truncation order.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Effective valuation used by the truncation rules: the valuation, or
    /// one past the truncation order for a zero series.
    fn val_eff(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc + 1)
    }

    /// Coefficient at exponent `units`. Panics above the truncation order:
    /// that coefficient is not determined.
    pub fn coeff(&self, units: i64) -> Rat {
        assert!(
            units <= self.trunc,
            "coefficient at {} units requested, series only known through {}",
            units,
            self.trunc
        );
        if units < self.min_exp {
            return Rat::zero();
        }
        let idx = (units - self.min_exp) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms as `(units, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        let min = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (min + i as i64, c))
    }

    fn normalized(grid: Grid, mut min_exp: i64, trunc: i64, mut coeffs: Vec<Rat>) -> Self {
        // Drop anything past the truncation order.
        let keep = ((trunc - min_exp + 1).max(0)) as usize;
        coeffs.truncate(keep);
        // Trim leading zeros so min_exp is the valuation.
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            min_exp += lead as i64;
        }
        while let Some(last) = coeffs.last() {
            if last.is_zero() {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            return Series::zero(grid, trunc);
        }
        Series { grid, min_exp, trunc, coeffs }
    }

    fn check_grid(&self, other: &Series) -> Result<(), SeriesError> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(SeriesError::GridMismatch)
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        self.check_grid(other).expect("grid mismatch in add");
        let trunc = self.trunc.min(other.trunc);
        let min = self.min_exp.min(other.min_exp).min(trunc + 1);
        let len = ((trunc - min + 1).max(0)) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (e, c) in self.terms() {
            if e <= trunc {
                coeffs[(e - min) as usize] += c;
            }
        }
        for (e, c) in other.terms() {
            if e <= trunc {
                coeffs[(e - min) as usize] += c;
            }
        }
        Series::normalized(self.grid, min, trunc, coeffs)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            grid: self.grid,
            min_exp: self.min_exp,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(self.grid, self.trunc);
        }
        Series {
            grid: self.grid,
            min_exp: self.min_exp,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply, exact through `min(a.trunc + b.val, b.trunc + a.val)`.
    pub fn mul(&self, other: &Series) -> Series {
        self.check_grid(other).expect("grid mismatch in mul");
        let trunc = (self.trunc + other.val_eff()).min(other.trunc + self.val_eff());
        if self.is_zero() || other.is_zero() {
            return Series::zero(self.grid, trunc);
        }
        let min = self.min_exp + other.min_exp;
        let len = ((trunc - min + 1).max(0)) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            if ea + other.min_exp > trunc {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.min_exp + j as i64;
                if e > trunc {
                    break;
                }
                coeffs[(e - min) as usize] += a * b;
            }
        }
        Series::normalized(self.grid, min, trunc, coeffs)
    }

    /// Multiply by `t^(units*step)`: shifts exponents and the truncation.
    pub fn shift(&self, units: i64) -> Series {
        Series {
            grid: self.grid,
            min_exp: self.min_exp + units,
            trunc: self.trunc + units,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Restrict to a lower truncation order.
    pub fn truncate(&self, trunc: i64) -> Series {
        assert!(trunc <= self.trunc, "truncate cannot raise the truncation order");
        Series::normalized(self.grid, self.min_exp, trunc, self.coeffs.clone())
    }

    /// Inverse of a series with invertible lowest coefficient.
    pub fn inv(&self) -> Result<Series, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::DivisionByZero)?;
        // Factor out the leading monomial, invert the unit part, shift back.
        let unit = self.shift(-v); // valuation 0, trunc = self.trunc - v
        let n = unit.trunc;
        let c0 = unit.coeff(0);
        let mut inv = vec![Rat::zero(); (n + 1).max(0) as usize];
        let inv_c0 = Rat::one() / &c0;
        if n >= 0 {
            inv[0] = inv_c0.clone();
        }
        for k in 1..=n.max(0) {
            let mut acc = Rat::zero();
            for j in 1..=k {
                let u = unit.coeff(j);
                if u.is_zero() {
                    continue;
                }
                acc += u * &inv[(k - j) as usize];
            }
            inv[k as usize] = -acc * &inv_c0;
        }
        Ok(Series::normalized(self.grid, 0, n, inv).shift(-v))
    }

    /// Division; exact through a truncation order adjusted by the divisor's
    /// valuation.
    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_grid(other)?;
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power, with `inv` for negative exponents.
    pub fn powi(&self, n: i64) -> Result<Series, SeriesError> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut result = Series::one(self.grid, self.trunc + self.val_eff() * n.max(1));
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        // A zeroth power of anything is exactly 1 to the original order.
        Ok(if result.trunc > self.trunc && self.val_eff() == 0 {
            result.truncate(self.trunc)
        } else {
            result
        })
    }

    /// Square root: requires even valuation and a rational-square leading
    /// coefficient; takes the branch with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let v = match self.valuation() {
            // sqrt(O(t^(T+1))) = O(t^((T+1)/2)).
            None => return Ok(Series::zero(self.grid, (self.trunc + 1) / 2 - 1)),
            Some(v) => v,
        };
        if v % 2 != 0 {
            return Err(SeriesError::SqrtOddValuation(v));
        }
        let lead = self.coeff(v);
        let sqrt_lead =
            rat_sqrt(&lead).ok_or_else(|| SeriesError::SqrtNotSquare(lead.to_string()))?;
        // self = lead * t^v * w with w = 1 + O(t); iterate x <- (x + w/x)/2.
        let w = self.shift(-v).scale(&(Rat::one() / &lead));
        let mut x = Series::one(self.grid, w.trunc);
        let half = crate::rat::ratio(1, 2);
        for _ in 0..(64 + w.trunc.max(0)) {
            let next = x.add(&w.div(&x)?).scale(&half);
            if next == x {
                let r = x.scale(&sqrt_lead).shift(v / 2);
                debug_assert!({
                    let sq = r.mul(&r);
                    sq.sub(&self.truncate(sq.trunc_units().min(self.trunc))).is_zero()
                });
                return Ok(r);
            }
            x = next;
        }
        Err(SeriesError::NewtonNoConvergence)
    }

    /// Formal derivative with respect to the variable (not the grid unit).
    pub fn derivative(&self) -> Series {
        let upt = self.grid.units_per_t();
        let mut out = Series::zero(self.grid, self.trunc - upt);
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            if e == 0 {
                continue;
            }
            terms.push((e - upt, c * self.grid.exponent_value(e)));
        }
        for (e, c) in terms {
            if e <= out.trunc {
                out = out.add(&Series::monomial(self.grid, e, c, out.trunc));
            }
        }
        out
    }

    /// Logarithm of a series with constant term 1, via `log f = ∫ f'/f`.
    pub fn log(&self) -> Result<Series, SeriesError> {
        if self.is_zero() || self.val_eff() != 0 || !self.coeff(0).is_one() {
            let c = if self.is_zero() || self.val_eff() != 0 {
                "0".to_string()
            } else {
                self.coeff(0).to_string()
            };
            return Err(SeriesError::LogConstantTerm(c));
        }
        let upt = self.grid.units_per_t();
        let integrand = self.derivative().div(self)?;
        let trunc = integrand.trunc + upt;
        let mut out = Series::zero(self.grid, trunc);
        for (e, c) in integrand.terms() {
            let target = e + upt;
            let value = self.grid.exponent_value(target);
            out = out.add(&Series::monomial(self.grid, target, c / value, trunc));
        }
        Ok(out)
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.is_zero() && self.min_exp <= 0 {
            return Err(SeriesError::ExpConstantTerm);
        }
        let n = self.trunc;
        let mut g = vec![Rat::zero(); (n + 1).max(1) as usize];
        g[0] = Rat::one();
        for e in 1..=n.max(0) {
            // g_e = (1/e) * sum_{a=1..e} a * h_a * g_{e-a}
            let mut acc = Rat::zero();
            for a in 1..=e {
                if a < self.min_exp || self.is_zero() {
                    continue;
                }
                let h = self.coeff(a);
                if h.is_zero() {
                    continue;
                }
                acc += h * rat(a) * &g[(e - a) as usize];
            }
            g[e as usize] = acc / rat(e);
        }
        Ok(Series::normalized(self.grid, 0, n, g))
    }

    /// Substitute `t -> -t` (on the half grid, `u -> -u`): flips the sign of
    /// every odd-unit coefficient.
    pub fn negate_variable(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.min_exp + i as i64;
                if e.rem_euclid(2) == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        Series { grid: self.grid, min_exp: self.min_exp, trunc: self.trunc, coeffs }
    }

    /// Reinterpret an integer-grid series on the half grid.
    pub fn to_half_grid(&self) -> Series {
        match self.grid {
            Grid::Half => self.clone(),
            Grid::One => Series {
                grid: Grid::Half,
                min_exp: self.min_exp * 2,
                trunc: self.trunc * 2 + 1,
                coeffs: {
                    let mut v = Vec::with_capacity(self.coeffs.len() * 2);
                    for c in &self.coeffs {
                        v.push(c.clone());
                        v.push(Rat::zero());
                    }
                    v
                },
            },
        }
    }

    /// Collapse a half-grid series onto the integer grid; errors if any odd
    /// coefficient is nonzero.
    pub fn to_integer_grid(&self) -> Result<Series, SeriesError> {
        match self.grid {
            Grid::One => Ok(self.clone()),
            Grid::Half => {
                let mut terms = Vec::new();
                for (e, c) in self.terms() {
                    if e.rem_euclid(2) != 0 {
                        return Err(SeriesError::NotOnIntegerGrid);
                    }
                    terms.push((e.div_euclid(2), c.clone()));
                }
                // Truncation: coefficients through floor(trunc/2) full powers
                // are determined.
                Ok(Series::from_terms(Grid::One, &terms, self.trunc.div_euclid(2)))
            }
        }
    }

    /// True if all odd-unit coefficients vanish.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e.rem_euclid(2) == 0)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{:?}; O({})]{{", self.grid, self.trunc)?;
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*t^({})", c, self.grid.exponent_value(e))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                first = false;
            } else if c.is_positive() {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let mag = if first || c.is_positive() { c.clone() } else { -c.clone() };
            if e == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            let value = self.grid.exponent_value(e);
            if value.is_one() {
                write!(f, "t")?;
            } else if value.is_integer() {
                write!(f, "t^{}", value)?;
            } else {
                write!(f, "t^({})", value)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn t(trunc: i64) -> Series {
        Series::var(Grid::One, trunc)
    }

    #[test]
    fn difference_of_squares() {
        let one = Series::one(Grid::One, 8);
        let a = one.add(&t(8));
        let b = one.sub(&t(8));
        let expect = one.sub(&t(8).mul(&t(8)));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn geometric_series() {
        let one = Series::one(Grid::One, 3);
        let g = one.div(&one.sub(&t(3))).unwrap();
        assert_eq!(g.coeff(0), rat(1));
        assert_eq!(g.coeff(1), rat(1));
        assert_eq!(g.coeff(2), rat(1));
        assert_eq!(g.coeff(3), rat(1));
        assert_eq!(g.trunc_units(), 3);
    }

    #[test]
    fn half_grid_closure() {
        let u = Series::var(Grid::Half, 6); // t^(1/2) is one unit... var is t
        // On the half grid the variable t occupies two units; build t^(1/2).
        let root = Series::monomial(Grid::Half, 1, rat(1), 6);
        let sq = root.mul(&root);
        assert_eq!(sq.coeff(2), rat(1));
        assert_eq!(sq.valuation(), Some(2));
        assert_eq!(u.valuation(), Some(2));
    }

    #[test]
    fn division_round_trips() {
        // (a/b)*b == a to the adjusted truncation order.
        let a = Series::from_terms(Grid::One, &[(0, rat(3)), (2, ratio(1, 2)), (5, rat(-7))], 10);
        let b = Series::from_terms(Grid::One, &[(1, rat(2)), (2, rat(1)), (3, rat(4))], 10);
        let q = a.div(&b).unwrap();
        let back = q.mul(&b);
        assert_eq!(back, a.truncate(back.trunc_units()));
    }

    #[test]
    fn division_by_zero_rejected() {
        let z = Series::zero(Grid::One, 5);
        assert_eq!(t(5).div(&z), Err(SeriesError::DivisionByZero));
    }

    #[test]
    fn sqrt_one_and_t() {
        assert_eq!(Series::one(Grid::One, 5).sqrt().unwrap(), Series::one(Grid::One, 5));
        // sqrt(t) exists on the half grid only.
        let t_half = Series::monomial(Grid::Half, 2, rat(1), 10);
        let r = t_half.sqrt().unwrap();
        assert_eq!(r, Series::monomial(Grid::Half, 1, rat(1), 9));
        // And is rejected on the integer grid (odd valuation).
        assert_eq!(t(5).sqrt(), Err(SeriesError::SqrtOddValuation(1)));
    }

    #[test]
    fn sqrt_one_minus_12t() {
        let f = Series::from_terms(Grid::One, &[(0, rat(1)), (1, rat(-12))], 4);
        let r = f.sqrt().unwrap();
        for (e, c) in [(0, 1), (1, -6), (2, -18), (3, -108), (4, -810)] {
            assert_eq!(r.coeff(e), rat(c), "coefficient of t^{}", e);
        }
        // Independent oracle: square the output and compare.
        assert_eq!(r.mul(&r), f);
    }

    #[test]
    fn sqrt_rejects_non_square_leading() {
        let f = Series::from_terms(Grid::One, &[(0, rat(2)), (1, rat(1))], 4);
        assert!(matches!(f.sqrt(), Err(SeriesError::SqrtNotSquare(_))));
    }

    #[test]
    fn log_mercator() {
        let f = Series::one(Grid::One, 3).add(&t(3));
        let l = f.log().unwrap();
        assert_eq!(l.coeff(1), rat(1));
        assert_eq!(l.coeff(2), ratio(-1, 2));
        assert_eq!(l.coeff(3), ratio(1, 3));
    }

    #[test]
    fn log_requires_unit_constant() {
        assert!(matches!(t(3).log(), Err(SeriesError::LogConstantTerm(_))));
        assert_eq!(Series::one(Grid::One, 3).log().unwrap(), Series::zero(Grid::One, 3));
    }

    #[test]
    fn exp_log_identity() {
        let f = Series::from_terms(Grid::One, &[(0, rat(1)), (1, rat(3)), (2, ratio(5, 7)), (4, rat(-2))], 9);
        let round = f.log().unwrap().exp().unwrap();
        assert_eq!(round, f);
        // And on the half grid.
        let g = Series::from_terms(Grid::Half, &[(0, rat(1)), (1, rat(2)), (3, ratio(-1, 3))], 9);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn laurent_tail_is_tracked() {
        // 1/t has a bounded negative tail and multiplies back exactly.
        let inv_t = t(6).inv().unwrap();
        assert_eq!(inv_t.valuation(), Some(-1));
        let back = inv_t.mul(&t(6));
        assert_eq!(back.coeff(0), rat(1));
        assert!(back.terms().count() == 1);
    }

    #[test]
    fn valuation_aware_truncation() {
        // Dividing by a valuation-1 series costs exactly one order.
        let num = Series::from_terms(Grid::One, &[(1, rat(2)), (2, rat(4))], 10);
        let den = Series::from_terms(Grid::One, &[(1, rat(1)), (2, rat(1))], 10);
        let q = num.div(&den).unwrap();
        assert_eq!(q.trunc_units(), 9);
        assert_eq!(q.coeff(0), rat(2));
    }

    #[test]
    fn negate_variable_flips_odd_units() {
        let f = Series::from_terms(Grid::Half, &[(1, rat(1)), (2, rat(5)), (3, rat(-2))], 6);
        let g = f.negate_variable();
        assert_eq!(g.coeff(1), rat(-1));
        assert_eq!(g.coeff(2), rat(5));
        assert_eq!(g.coeff(3), rat(2));
        assert_eq!(g.negate_variable(), f);
    }

    #[test]
    fn grid_conversions() {
        let f = Series::from_terms(Grid::One, &[(0, rat(1)), (2, rat(7))], 5);
        let h = f.to_half_grid();
        assert_eq!(h.coeff(4), rat(7));
        assert_eq!(h.to_integer_grid().unwrap(), f);
        let odd = Series::monomial(Grid::Half, 3, rat(1), 8);
        assert_eq!(odd.to_integer_grid(), Err(SeriesError::NotOnIntegerGrid));
    }
}
