use std::f64::consts::PI;

use group_core::{HspError, Result};

use crate::irreps::{num_tau, unitary2};
use crate::matrix::Mat;

/// Per-`k` basis parameters for the two-dimensional irreps of `D_N`.
///
/// `theta_k = arcsin(lambda_k) / 2`, `alpha_k = mu_k + pi`, and
/// `U_k = [[cos t, sin t e^{i a}], [sin t, -cos t e^{i a}]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralBasis {
    pub n: usize,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
}

impl DihedralBasis {
    pub fn new(n: usize, lambda: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        let m = num_tau(n);
        if lambda.len() != m || mu.len() != m {
            return Err(HspError::Domain(format!("need {m} basis parameters for N = {n}")));
        }
        if lambda.iter().any(|l| !(0.0..=1.0).contains(l)) {
            return Err(HspError::Domain("lambda must lie in [0, 1]".into()));
        }
        let mu = mu.into_iter().map(|x| x.rem_euclid(2.0 * PI)).collect();
        Ok(DihedralBasis { n, lambda, mu })
    }

    pub fn uniform(n: usize, lambda: f64, mu: f64) -> Result<Self> {
        let m = num_tau(n);
        Self::new(n, vec![lambda; m], vec![mu; m])
    }

    /// `lambda = 0, mu = 0`, which makes every `U_k` the identity.
    pub fn identity(n: usize) -> Self {
        Self::uniform(n, 0.0, 0.0).expect("valid parameters")
    }

    /// `lambda = 1, mu = -pi`, i.e. `U_k` is the Hadamard matrix.
    pub fn hadamard(n: usize) -> Self {
        Self::uniform(n, 1.0, -PI).expect("valid parameters")
    }

    pub fn theta(&self, k: usize) -> f64 {
        self.lambda[k - 1].asin() / 2.0
    }

    pub fn alpha(&self, k: usize) -> f64 {
        self.mu[k - 1] + PI
    }

    pub fn u(&self, k: usize) -> Mat {
        unitary2(self.theta(k), self.alpha(k), 0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_hadamard() {
        let b = DihedralBasis::identity(8);
        for k in 1..4 {
            assert!(b.u(k).max_diff(&Mat::identity(2)) < 1e-15);
        }
        let h = DihedralBasis::hadamard(8).u(1);
        let s = 0.5f64.sqrt();
        assert!((h[(0, 0)].re - s).abs() < 1e-15 && (h[(1, 1)].re + s).abs() < 1e-15);
        assert!((h[(0, 1)].re - s).abs() < 1e-15 && (h[(1, 0)].re - s).abs() < 1e-15);
        assert!(DihedralBasis::new(8, vec![2.0; 3], vec![0.0; 3]).is_err());
    }
}
