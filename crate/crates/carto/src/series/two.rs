//! Two-variable series: truncated in `t`, exact polynomials in `z`.

use super::{Grid, Series, SeriesError};
use crate::rat::{rat, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Dense polynomial in `z` with rational coefficients (index = degree).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly(Vec<Rat>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            ZPoly::zero()
        } else {
            ZPoly(vec![c])
        }
    }

    /// The monomial `c * z^k`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        ZPoly(v)
    }

    pub fn from_coeffs(v: Vec<Rat>) -> Self {
        let mut p = ZPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        ZPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &Rat) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += p * q`, accumulating in place without intermediates.
    pub fn add_assign_mul(&mut self, p: &ZPoly, q: &ZPoly) {
        if p.is_zero() || q.is_zero() {
            return;
        }
        let need = p.0.len() + q.0.len() - 1;
        if self.0.len() < need {
            self.0.resize(need, Rat::zero());
        }
        for (i, a) in p.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                self.0[i + j] += a * b;
            }
        }
        self.trim();
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

macro_rules! fmt_zpoly {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for (k, c) in self.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match k {
                    0 => write!(f, "{}", c)?,
                    1 => write!(f, "{}*z", c)?,
                    _ => write!(f, "{}*z^{}", c, k)?,
                }
            }
            Ok(())
        }
    };
}

impl fmt::Debug for ZPoly {
    fmt_zpoly!();
}

impl fmt::Display for ZPoly {
    fmt_zpoly!();
}

/// Series in `t` truncated at `trunc` (inclusive), whose coefficients are
/// exact polynomials in `z`; the degree in `z` of each coefficient is finite
/// and recorded by the polynomial itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Series2 {
    trunc: i64,
    coeffs: Vec<ZPoly>, // index = power of t, length trunc + 1
}

impl Series2 {
    pub fn zero(trunc: i64) -> Self {
        Series2 { trunc, coeffs: vec![ZPoly::zero(); (trunc + 1).max(0) as usize] }
    }

    pub fn one(trunc: i64) -> Self {
        Series2::from_zpoly(ZPoly::constant(rat(1)), trunc)
    }

    pub fn constant(c: Rat, trunc: i64) -> Self {
        Series2::from_zpoly(ZPoly::constant(c), trunc)
    }

    /// A `z`-polynomial as a `t`-constant series.
    pub fn from_zpoly(p: ZPoly, trunc: i64) -> Self {
        let mut s = Series2::zero(trunc);
        if trunc >= 0 {
            s.coeffs[0] = p;
        }
        s
    }

    /// The variable `t`.
    pub fn var_t(trunc: i64) -> Self {
        let mut s = Series2::zero(trunc);
        if trunc >= 1 {
            s.coeffs[1] = ZPoly::constant(rat(1));
        }
        s
    }

    /// The variable `z`.
    pub fn var_z(trunc: i64) -> Self {
        Series2::from_zpoly(ZPoly::monomial(1, rat(1)), trunc)
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, n: i64) -> &ZPoly {
        assert!(n <= self.trunc, "coefficient beyond truncation order");
        &self.coeffs[n as usize]
    }

    pub fn set_coeff(&mut self, n: i64, p: ZPoly) {
        assert!(n <= self.trunc);
        self.coeffs[n as usize] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    /// Valuation in `t`, `None` if zero to truncation order.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|p| !p.is_zero()).map(|i| i as i64)
    }

    fn val_eff(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc + 1)
    }

    pub fn truncate(&self, trunc: i64) -> Series2 {
        assert!(trunc <= self.trunc);
        Series2 { trunc, coeffs: self.coeffs[..(trunc + 1).max(0) as usize].to_vec() }
    }

    pub fn add(&self, other: &Series2) -> Series2 {
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series2::zero(trunc);
        for n in 0..=trunc.max(-1) {
            out.coeffs[n as usize] = self.coeffs[n as usize].add(&other.coeffs[n as usize]);
        }
        out
    }

    pub fn neg(&self) -> Series2 {
        Series2 { trunc: self.trunc, coeffs: self.coeffs.iter().map(ZPoly::neg).collect() }
    }

    pub fn sub(&self, other: &Series2) -> Series2 {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Series2 {
        Series2 { trunc: self.trunc, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_zpoly(&self, p: &ZPoly) -> Series2 {
        Series2 { trunc: self.trunc, coeffs: self.coeffs.iter().map(|q| q.mul(p)).collect() }
    }

    /// Product, exact through `min(a.trunc + b.val, b.trunc + a.val)`,
    /// accumulated in place.
    pub fn mul(&self, other: &Series2) -> Series2 {
        let trunc = (self.trunc + other.val_eff()).min(other.trunc + self.val_eff());
        let mut out = Series2::zero(trunc);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i as i64 > trunc {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let n = (i + j) as i64;
                if n > trunc {
                    break;
                }
                out.coeffs[n as usize].add_assign_mul(a, b);
            }
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Series2 {
        assert!(k >= 0, "Series2 has no negative t-tail");
        let trunc = self.trunc + k;
        let mut out = Series2::zero(trunc);
        for (i, p) in self.coeffs.iter().enumerate() {
            out.coeffs[i + k as usize] = p.clone();
        }
        out
    }

    /// Inverse of a series whose `t^0` coefficient is a nonzero constant.
    pub fn inv(&self) -> Result<Series2, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let c0 = &self.coeffs[0];
        assert!(
            c0.degree() == Some(0),
            "Series2 inversion needs a constant unit t^0 coefficient, found {}",
            c0
        );
        let inv_c0 = Rat::one() / c0.coeff(0);
        let n = self.trunc;
        let mut out = Series2::zero(n);
        out.coeffs[0] = ZPoly::constant(inv_c0.clone());
        for k in 1..=n.max(0) {
            let mut acc = ZPoly::zero();
            for j in 1..=k {
                let a = self.coeffs[j as usize].clone();
                acc.add_assign_mul(&a, &out.coeffs[(k - j) as usize]);
            }
            out.coeffs[k as usize] = acc.scale(&-inv_c0.clone());
        }
        Ok(out)
    }

    pub fn div(&self, other: &Series2) -> Result<Series2, SeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, n: u32) -> Series2 {
        let mut result = Series2::one(self.trunc + self.val_eff() * n.max(1) as i64);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        if result.trunc > self.trunc && self.val_eff() == 0 {
            result.truncate(self.trunc)
        } else {
            result
        }
    }

    /// Evaluate `z` at an exact rational, yielding a one-variable series.
    pub fn eval_z(&self, z: &Rat) -> Series {
        let terms: Vec<(i64, Rat)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, p)| (n as i64, p.eval(z)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Series::from_terms(Grid::One, &terms, self.trunc)
    }
}

impl fmt::Debug for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series2[O(t^{})]{{", self.trunc)?;
        let mut first = true;
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*t^{}", p, n)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "}}")
    }
}

/// A two-parameter change of variables `t = y * F(y, a)`, `z = a * G(y, a)`,
/// given by the unit cofactors `F` and `G` (both with `t^0` coefficient 1
/// when evaluated on series with `y = O(t)`).
pub struct TwoParamSystem<'a> {
    #[allow(clippy::type_complexity)]
    pub unit_t: Box<dyn Fn(&Series2, &Series2) -> Result<Series2, SeriesError> + 'a>,
    #[allow(clippy::type_complexity)]
    pub unit_z: Box<dyn Fn(&Series2, &Series2) -> Result<Series2, SeriesError> + 'a>,
}

/// Invert the parametrization by fixed-point iteration in the `t`-adic
/// grading: `y <- t / F(y, a)`, `a <- z / G(y, a)`. Each pass is guaranteed
/// to stabilize at least one further order of `t`; failure to do so signals
/// a malformed parametrization.
pub fn invert_two_param(
    system: &TwoParamSystem,
    trunc: i64,
) -> Result<(Series2, Series2), SeriesError> {
    let mut y = Series2::var_t(trunc.min(2));
    let mut alpha = Series2::var_z(trunc.min(2));
    let mut stable = 0i64;
    // One guaranteed order per pass, so the working truncation grows with
    // the pass index.
    for p in 0..=(trunc + 4) {
        let work = (p + 2).min(trunc);
        let t = Series2::var_t(work);
        let z = Series2::var_z(work);
        let y_in = widen(&y, work);
        let a_in = widen(&alpha, work);
        let fy = (system.unit_t)(&y_in, &a_in)?.truncate_to(work);
        let gz = (system.unit_z)(&y_in, &a_in)?.truncate_to(work);
        let y_next = t.div(&fy)?.truncate_to(work);
        let a_next = z.div(&gz)?.truncate_to(work);
        let mut agree = work;
        for n in 0..=work.min(y.trunc_order()) {
            if y_next.coeff(n) != y.coeff(n) || a_next.coeff(n) != alpha.coeff(n) {
                agree = n - 1;
                break;
            }
        }
        y = y_next;
        alpha = a_next;
        if work == trunc && agree >= trunc {
            return Ok((y, alpha));
        }
        if agree < stable && work == trunc {
            return Err(SeriesError::InversionStalled);
        }
        stable = stable.max(agree + 1);
    }
    Err(SeriesError::InversionStalled)
}

fn widen(s: &Series2, trunc: i64) -> Series2 {
    if s.trunc_order() >= trunc {
        return s.truncate(trunc);
    }
    let mut out = Series2::zero(trunc);
    for n in 0..=s.trunc_order() {
        out.set_coeff(n, s.coeff(n).clone());
    }
    out
}

impl Series2 {
    /// Truncate only if the current order exceeds the target.
    fn truncate_to(&self, trunc: i64) -> Series2 {
        if self.trunc > trunc {
            self.truncate(trunc)
        } else {
            self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn zpoly_arithmetic() {
        let p = ZPoly::from_coeffs(vec![rat(1), rat(2)]); // 1 + 2z
        let q = ZPoly::from_coeffs(vec![rat(0), rat(1), rat(3)]); // z + 3z^2
        let prod = p.mul(&q);
        assert_eq!(prod.coeff(1), rat(1));
        assert_eq!(prod.coeff(2), rat(5));
        assert_eq!(prod.coeff(3), rat(6));
        assert_eq!(p.eval(&ratio(1, 2)), rat(2));
    }

    #[test]
    fn series2_mul_and_div_round_trip() {
        let t = Series2::var_t(8);
        let z = Series2::var_z(8);
        // f = 1 + z t + t^2
        let f = Series2::one(8).add(&z.mul(&t)).add(&t.powi(2));
        let g = Series2::one(8).sub(&t.scale(&rat(3)));
        let q = f.div(&g).unwrap();
        assert_eq!(q.mul(&g), f.truncate(q.trunc_order().min(8)));
    }

    #[test]
    fn eval_z_specializes() {
        let t = Series2::var_t(4);
        let z = Series2::var_z(4);
        let f = z.mul(&t).add(&Series2::one(4)); // 1 + z t
        let s = f.eval_z(&rat(2));
        assert_eq!(s.coeff(0), rat(1));
        assert_eq!(s.coeff(1), rat(2));
    }
}
