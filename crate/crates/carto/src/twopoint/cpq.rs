//! High-precision numeric check of the power-sum cross-ratio identity
//! between consecutive constellation sizes.
//!
//! At a rational sample `t` inside the radius of convergence, the tree
//! value `T = 1 + p t T^p` is computed to full precision, the `p-1` in-disk
//! roots of the characteristic polynomial are isolated, and both sides of
//! the cross-ratio identity (and the algebraic reduction through the
//! characteristic values) are compared pairwise.

use super::TwoPointError;
use crate::bigfloat::{eval_poly, roots, CFix, Fix};
use crate::rat::Rat;

#[derive(Debug, Clone)]
pub struct CpqReport {
    pub p: usize,
    pub t: Rat,
    pub roots_in_disk: usize,
    /// Maximal deviation between the two cross-ratio sides over all pairs.
    pub max_identity_error: f64,
    /// Maximal value of the reduction expression (which must vanish).
    pub max_reduction_error: f64,
}

impl CpqReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_identity_error <= tolerance && self.max_reduction_error <= tolerance
    }
}

/// Radius of convergence of `T = 1 + p t T^p`.
pub fn radius(p: usize) -> Rat {
    let p_ = p as i64;
    Rat::new(
        num_bigint::BigInt::from(p_ - 1).pow((p - 1) as u32),
        num_bigint::BigInt::from(p_).pow((p + 1) as u32),
    )
}

/// Check the identity for `2 <= p <= 6` at a sample `0 < t < radius`.
pub fn cpq_identity_check(p: usize, t: &Rat) -> Result<CpqReport, TwoPointError> {
    if !(2..=6).contains(&p) {
        return Err(TwoPointError::Cpq(format!("p = {} out of the checked range", p)));
    }
    if t <= &Rat::from_integer(0.into()) || t >= &radius(p) {
        return Err(TwoPointError::Cpq(format!(
            "sample t = {} outside (0, {})",
            t,
            radius(p)
        )));
    }
    let tf = Fix::from_rat(t);
    // T by Newton on F(T) = 1 + p t T^p - T, from T = 1.
    let pf = Fix::from_i64(p as i64);
    let mut big_t = Fix::from_i64(1);
    for _ in 0..200 {
        let tp1 = pow_fix(&big_t, p - 1);
        let tp = tp1.mul(&big_t);
        let f = Fix::from_i64(1).add(&pf.mul(&tf).mul(&tp)).sub(&big_t);
        let fp = pf.mul(&pf).mul(&tf).mul(&tp1).sub(&Fix::from_i64(1));
        let delta = f.div(&fp);
        big_t = big_t.sub(&delta);
        if delta.below_power_of_two(crate::bigfloat::PREC - 16) {
            break;
        }
    }
    // Characteristic value C = 1 / (t T^p).
    let c = Fix::from_i64(1).div(&tf.mul(&pow_fix(&big_t, p)));
    // Cleared characteristic polynomial of degree 2(p-1):
    // sum_{k=1}^{p-1} (p-k) (y^{p-1+k} + y^{p-1-k}) - C y^{p-1} = 0.
    let deg = 2 * (p - 1);
    let mut coeffs = vec![Fix::zero(); deg + 1];
    for k in 1..p {
        let w = Fix::from_i64((p - k) as i64);
        coeffs[p - 1 + k] = coeffs[p - 1 + k].add(&w);
        coeffs[p - 1 - k] = coeffs[p - 1 - k].add(&w);
    }
    coeffs[p - 1] = coeffs[p - 1].sub(&c);
    let all = roots(&coeffs);
    let one = Fix::from_i64(1);
    let in_disk: Vec<CFix> =
        all.into_iter().filter(|z| z.norm_sq().sub(&one).is_negative()).collect();
    if in_disk.len() != p - 1 {
        return Err(TwoPointError::Cpq(format!(
            "isolated {} in-disk roots, expected {}",
            in_disk.len(),
            p - 1
        )));
    }

    // Power sums p_k^{(q)} = y + ... + y^{q-1}, q_k^{(q)} with inverse
    // powers; cross-ratio of differences for the pair (k, k').
    let power_sum = |y: &CFix, q: usize, inverse: bool| -> CFix {
        let mut acc = CFix::zero();
        let base =
            if inverse { CFix::from_real(Fix::from_i64(1)).div(y) } else { y.clone() };
        let mut cur = base.clone();
        for _ in 1..q {
            acc = acc.add(&cur);
            cur = cur.mul(&base);
        }
        acc
    };
    let cross_ratio = |ya: &CFix, yb: &CFix, q: usize| -> CFix {
        let pa = power_sum(ya, q, false);
        let pb = power_sum(yb, q, false);
        let qa = power_sum(ya, q, true);
        let qb = power_sum(yb, q, true);
        pa.sub(&pb).mul(&qa.sub(&qb)).div(&pa.sub(&qb).mul(&qa.sub(&pb)))
    };
    let h_of = |y: &CFix| eval_poly(&coeffs, y); // vanishes at the roots

    let mut max_identity: f64 = 0.0;
    let mut max_reduction: f64 = 0.0;
    for a in 0..in_disk.len() {
        for b in (a + 1)..in_disk.len() {
            let (ya, yb) = (&in_disk[a], &in_disk[b]);
            let lhs = cross_ratio(ya, yb, p + 1);
            let rhs = cross_ratio(ya, yb, p);
            let diff = lhs.sub(&rhs);
            max_identity = max_identity
                .max(diff.re.to_f64().abs())
                .max(diff.im.to_f64().abs());
            // (y_a y_b)^p (1 - y_b) (H(y_a) - H(y_b)) with H the cleared
            // characteristic form evaluated at the roots.
            let red = ya
                .mul(yb)
                .powi(p as u32)
                .mul(&CFix::from_real(Fix::from_i64(1)).sub(yb))
                .mul(&h_of(ya).sub(&h_of(yb)));
            max_reduction = max_reduction
                .max(red.re.to_f64().abs())
                .max(red.im.to_f64().abs());
        }
    }
    Ok(CpqReport {
        p,
        t: t.clone(),
        roots_in_disk: in_disk.len(),
        max_identity_error: max_identity,
        max_reduction_error: max_reduction,
    })
}

fn pow_fix(x: &Fix, n: usize) -> Fix {
    let mut acc = Fix::from_i64(1);
    for _ in 0..n {
        acc = acc.mul(x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn p2_is_trivially_true() {
        let report = cpq_identity_check(2, &ratio(1, 100)).unwrap();
        assert_eq!(report.roots_in_disk, 1);
        assert!(report.passes(1e-30));
    }

    #[test]
    fn p3_holds_at_sample() {
        let report = cpq_identity_check(3, &ratio(1, 100)).unwrap();
        assert_eq!(report.roots_in_disk, 2);
        assert!(
            report.passes(1e-30),
            "identity {} reduction {}",
            report.max_identity_error,
            report.max_reduction_error
        );
    }

    #[test]
    fn p4_holds_at_sample() {
        let report = cpq_identity_check(4, &ratio(1, 200)).unwrap();
        assert_eq!(report.roots_in_disk, 3);
        assert!(report.passes(1e-30));
    }

    #[test]
    fn rejects_samples_outside_the_radius() {
        assert!(cpq_identity_check(3, &ratio(1, 10)).is_err());
    }
}
