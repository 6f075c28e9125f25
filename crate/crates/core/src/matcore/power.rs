//! Overflow-safe matrix powering.
//!
//! `A^n` for interesting `A` overflows or underflows `f64` long before `n`
//! reaches the values this crate cares about (`n = 2^20` by default), so
//! powers are carried as a unit-norm base matrix plus a log-domain scale:
//! `A^n = exp(log_scale) * base` with `||base|| = 1`.

use alloc::vec::Vec;

use super::jacobi::op_norm;
use super::matrix::ComplexMatrix;
use crate::Result;

/// A matrix power in renormalized form: `A^exponent = exp(log_scale) * base`.
///
/// The zero matrix is the one case without a unit-norm base; it is flagged by
/// `log_scale = -inf` together with an all-zero `base` (see [`ScaledPower::is_zero`]).
#[derive(Clone, Debug)]
pub struct ScaledPower {
    /// Unit-operator-norm carrier of the power's direction.
    pub base: ComplexMatrix,
    /// Natural log of the scale factor.
    pub log_scale: f64,
    /// The power `n` this value represents.
    pub exponent: u64,
}

impl ScaledPower {
    fn zero(m: usize, exponent: u64) -> Self {
        Self {
            base: ComplexMatrix::zeros(m, m),
            log_scale: f64::NEG_INFINITY,
            exponent,
        }
    }

    /// True when the represented power is exactly the zero matrix.
    pub fn is_zero(&self) -> bool {
        self.log_scale == f64::NEG_INFINITY
    }
}

/// `A^(2^k)` by `k` squarings, renormalizing by the operator norm after every
/// squaring.
pub fn scaled_power(a: &ComplexMatrix, k: u32) -> Result<ScaledPower> {
    let mut steps = scaled_power_steps(a, k)?;
    Ok(steps.pop().expect("steps are never empty"))
}

/// All intermediate stages of [`scaled_power`]: entry `i` represents
/// `A^(2^i)`, for `i = 0..=k`.
pub fn scaled_power_steps(a: &ComplexMatrix, k: u32) -> Result<Vec<ScaledPower>> {
    let m = a.order();
    let mut out = Vec::with_capacity(k as usize + 1);

    let nu = op_norm(a)?;
    if nu == 0.0 {
        for i in 0..=k {
            out.push(ScaledPower::zero(m, 1u64 << i));
        }
        return Ok(out);
    }
    let mut base = a.scale(1.0 / nu);
    let mut log_scale = libm::log(nu);
    out.push(ScaledPower {
        base: base.clone(),
        log_scale,
        exponent: 1,
    });

    for i in 1..=k {
        let sq = &base * &base;
        let nu = op_norm(&sq)?;
        if nu == 0.0 {
            // The power collapsed to exact zero (nilpotent direction); every
            // later stage is zero as well.
            for j in i..=k {
                out.push(ScaledPower::zero(m, 1u64 << j));
            }
            return Ok(out);
        }
        base = sq.scale(1.0 / nu);
        log_scale = 2.0 * log_scale + libm::log(nu);
        out.push(ScaledPower {
            base: base.clone(),
            log_scale,
            exponent: 1u64 << i,
        });
    }
    Ok(out)
}

/// `A^n` for arbitrary `n >= 1` by renormalized binary powering.
pub fn scaled_power_n(a: &ComplexMatrix, n: u64) -> Result<ScaledPower> {
    assert!(n >= 1, "scaled_power_n requires n >= 1");
    let m = a.order();

    let nu = op_norm(a)?;
    if nu == 0.0 {
        return Ok(ScaledPower::zero(m, n));
    }
    let mut factor = a.scale(1.0 / nu);
    let mut factor_log = libm::log(nu);

    let mut acc: Option<(ComplexMatrix, f64)> = None;
    let mut e = n;
    loop {
        if e & 1 == 1 {
            let (prod, log) = match &acc {
                None => (factor.clone(), factor_log),
                Some((r, l)) => (r * &factor, l + factor_log),
            };
            let nu = op_norm(&prod)?;
            if nu == 0.0 {
                return Ok(ScaledPower::zero(m, n));
            }
            acc = Some((prod.scale(1.0 / nu), log + libm::log(nu)));
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        let sq = &factor * &factor;
        let nu = op_norm(&sq)?;
        if nu == 0.0 {
            // A zero square factor zeroes the result only if a one-bit of n
            // still needs it; with e > 0 at least one such bit remains.
            return Ok(ScaledPower::zero(m, n));
        }
        factor = sq.scale(1.0 / nu);
        factor_log = 2.0 * factor_log + libm::log(nu);
    }

    let (base, log_scale) = acc.expect("n >= 1 always multiplies once");
    Ok(ScaledPower {
        base,
        log_scale,
        exponent: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_multiple_of_identity() {
        let a = ComplexMatrix::identity(2).scale(2.0);
        let p = scaled_power(&a, 3).unwrap();
        assert_eq!(p.exponent, 8);
        assert!((p.log_scale - 8.0 * libm::log(2.0)).abs() < 1e-12);
        assert!((&p.base - &ComplexMatrix::identity(2)).fro_norm() < 1e-12);
    }

    #[test]
    fn unitary_keeps_zero_log_scale() {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let q = ComplexMatrix::new(2, 2, vec![c(r, 0.0), c(-r, 0.0), c(r, 0.0), c(r, 0.0)])
            .unwrap();
        let p = scaled_power(&q, 5).unwrap();
        assert!(p.log_scale.abs() < 1e-12);
        // base should equal Q^32 up to the same rounding scale
        let mut q32 = ComplexMatrix::identity(2);
        for _ in 0..32 {
            q32 = &q32 * &q;
        }
        assert!((&p.base - &q32).fro_norm() < 1e-12);
    }

    #[test]
    fn matches_plain_multiplication() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let p = scaled_power(&a, 6).unwrap();
        assert_eq!(p.exponent, 64);
        let mut plain = ComplexMatrix::identity(2);
        for _ in 0..64 {
            plain = &plain * &a;
        }
        let rebuilt = p.base.scale(libm::exp(p.log_scale));
        assert!((&rebuilt - &plain).fro_norm() < 1e-9 * plain.fro_norm());
    }

    #[test]
    fn zero_matrix_is_flagged() {
        let p = scaled_power(&ComplexMatrix::zeros(3, 3), 4).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.log_scale, f64::NEG_INFINITY);
        assert_eq!(p.base, ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn nilpotent_collapses_to_zero_mid_run() {
        let n = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let steps = scaled_power_steps(&n, 3).unwrap();
        assert!(!steps[0].is_zero());
        assert!(steps[1].is_zero());
        assert!(steps[3].is_zero());
    }

    #[test]
    fn arbitrary_exponent_agrees_with_squaring() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(0.3, 0.4), c(-0.2, 0.1), c(0.5, 0.0), c(0.1, -0.6)],
        )
        .unwrap();
        let via_n = scaled_power_n(&a, 16).unwrap();
        let via_k = scaled_power(&a, 4).unwrap();
        assert!((via_n.log_scale - via_k.log_scale).abs() < 1e-10);
        assert!((&via_n.base - &via_k.base).fro_norm() < 1e-10);

        let p5 = scaled_power_n(&a, 5).unwrap();
        let mut plain = ComplexMatrix::identity(2);
        for _ in 0..5 {
            plain = &plain * &a;
        }
        let rebuilt = p5.base.scale(libm::exp(p5.log_scale));
        assert!((&rebuilt - &plain).fro_norm() < 1e-12 * plain.fro_norm());
    }
}
