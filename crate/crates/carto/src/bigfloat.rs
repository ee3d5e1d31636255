//! Fixed-point big-number arithmetic for the high-precision numeric checks:
//! values are `mantissa / 2^PREC` with a 256-bit working precision, plus the
//! complex layer and a Durand-Kerner polynomial root finder.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Working precision in bits (about 77 decimal digits).
pub const PREC: u32 = 256;

/// Fixed-point real number: `mantissa * 2^-PREC`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fix(BigInt);

impl Fix {
    pub fn zero() -> Fix {
        Fix(BigInt::zero())
    }

    pub fn from_i64(n: i64) -> Fix {
        Fix(BigInt::from(n) << PREC)
    }

    pub fn from_rat(r: &Rat) -> Fix {
        Fix((r.numer() << PREC) / r.denom())
    }

    pub fn add(&self, o: &Fix) -> Fix {
        Fix(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fix) -> Fix {
        Fix(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Fix {
        Fix(-&self.0)
    }

    pub fn mul(&self, o: &Fix) -> Fix {
        Fix((&self.0 * &o.0) >> PREC)
    }

    pub fn div(&self, o: &Fix) -> Fix {
        assert!(!o.0.is_zero(), "fixed-point division by zero");
        Fix((&self.0 << PREC) / &o.0)
    }

    pub fn abs(&self) -> Fix {
        Fix(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Compare against `2^-bits`.
    pub fn below_power_of_two(&self, bits: u32) -> bool {
        self.0.abs() < (BigInt::from(1) << (PREC - bits))
    }

    pub fn to_f64(&self) -> f64 {
        crate::rat::rat_to_f64(&Rat::new(self.0.clone(), BigInt::from(1) << PREC))
    }
}

/// Complex fixed-point value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFix {
    pub re: Fix,
    pub im: Fix,
}

impl CFix {
    pub fn new(re: Fix, im: Fix) -> CFix {
        CFix { re, im }
    }

    pub fn zero() -> CFix {
        CFix::new(Fix::zero(), Fix::zero())
    }

    pub fn from_real(r: Fix) -> CFix {
        CFix::new(r, Fix::zero())
    }

    pub fn add(&self, o: &CFix) -> CFix {
        CFix::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CFix) -> CFix {
        CFix::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CFix) -> CFix {
        CFix::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn div(&self, o: &CFix) -> CFix {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num = self.mul(&CFix::new(o.re.clone(), o.im.neg()));
        CFix::new(num.re.div(&den), num.im.div(&den))
    }

    pub fn norm_sq(&self) -> Fix {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs_below_power_of_two(&self, bits: u32) -> bool {
        // |z| < 2^-bits if |re| and |im| both are (up to a factor sqrt(2)).
        self.re.below_power_of_two(bits) && self.im.below_power_of_two(bits)
    }

    pub fn powi(&self, n: u32) -> CFix {
        let mut acc = CFix::from_real(Fix::from_i64(1));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// Evaluate a polynomial with real fixed-point coefficients (ascending) at a
/// complex point.
pub fn eval_poly(coeffs: &[Fix], z: &CFix) -> CFix {
    let mut acc = CFix::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&CFix::from_real(c.clone()));
    }
    acc
}

/// All complex roots of a polynomial with real coefficients, by
/// Durand-Kerner iteration at full working precision. The leading
/// coefficient must be nonzero.
pub fn roots(coeffs: &[Fix]) -> Vec<CFix> {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && !coeffs[n].is_zero());
    // Monic normalization.
    let monic: Vec<Fix> = coeffs.iter().map(|c| c.div(&coeffs[n])).collect();
    // Initial guesses on a slightly irrational spiral.
    let seed_re = Fix::from_rat(&crate::rat::ratio(2, 5));
    let seed_im = Fix::from_rat(&crate::rat::ratio(9, 10));
    let seed = CFix::new(seed_re, seed_im);
    let mut zs: Vec<CFix> = (0..n).map(|k| seed.powi(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut moved = false;
        for i in 0..n {
            let pz = eval_poly(&monic, &zs[i]);
            let mut den = CFix::from_real(Fix::from_i64(1));
            for j in 0..n {
                if i != j {
                    den = den.mul(&zs[i].sub(&zs[j]));
                }
            }
            let delta = pz.div(&den);
            if !delta.abs_below_power_of_two(PREC - 24) {
                moved = true;
            }
            zs[i] = zs[i].sub(&delta);
        }
        if !moved {
            break;
        }
    }
    zs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn fixed_point_arithmetic() {
        let a = Fix::from_rat(&ratio(1, 3));
        let b = Fix::from_i64(3);
        let prod = a.mul(&b);
        assert!(prod.sub(&Fix::from_i64(1)).below_power_of_two(250));
        let q = Fix::from_i64(1).div(&Fix::from_i64(7));
        assert!(q.mul(&Fix::from_i64(7)).sub(&Fix::from_i64(1)).below_power_of_two(250));
    }

    #[test]
    fn quadratic_roots() {
        // z^2 - 3z + 2 = (z-1)(z-2).
        let coeffs = vec![Fix::from_i64(2), Fix::from_i64(-3), Fix::from_i64(1)];
        let mut rs = roots(&coeffs);
        rs.sort_by(|a, b| a.re.cmp(&b.re));
        assert!(rs[0].sub(&CFix::from_real(Fix::from_i64(1))).abs_below_power_of_two(200));
        assert!(rs[1].sub(&CFix::from_real(Fix::from_i64(2))).abs_below_power_of_two(200));
    }

    #[test]
    fn complex_conjugate_roots() {
        // z^2 + 1.
        let coeffs = vec![Fix::from_i64(1), Fix::from_i64(0), Fix::from_i64(1)];
        let rs = roots(&coeffs);
        for r in &rs {
            assert!(r.re.below_power_of_two(200));
            assert!(r.im.abs().sub(&Fix::from_i64(1)).below_power_of_two(200));
        }
        let _ = rat(0);
    }
}
