use crate::error::{AlgebraError, Result};
use crate::rational::Rational;
use crate::ring::Truncation;
use crate::superweyl::SuperWeyl;

/// Sizes, evaluation points and truncation orders of one model instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// Evaluation points `z_1, ..., z_k`.
    pub z: Vec<Rational>,
    /// `Lambda_1, ..., Lambda_{m+n}`.
    pub lambda: Vec<Rational>,
    pub trunc: Truncation,
}

/// Default orders: v-floor -10, d-floor -|m-n|-8, w-top m+n+k+4.
pub fn default_truncation(m: usize, n: usize, k: usize) -> Truncation {
    let diff = (m as i64 - n as i64).abs();
    Truncation::new(-10, -diff - 8, (m + n + k) as i64 + 4)
}

impl ModelParams {
    pub fn new(m: usize, n: usize, k: usize, z: Vec<Rational>, lambda: Vec<Rational>) -> Result<Self> {
        Self::with_truncation(m, n, k, z, lambda, default_truncation(m, n, k))
    }

    pub fn with_truncation(
        m: usize,
        n: usize,
        k: usize,
        z: Vec<Rational>,
        lambda: Vec<Rational>,
        trunc: Truncation,
    ) -> Result<Self> {
        if m + n == 0 {
            return Err(AlgebraError::InvalidParams("m + n must be at least 1".into()));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidParams("k must be at least 1".into()));
        }
        if m + n > 32 || k > 32 {
            return Err(AlgebraError::InvalidParams("sizes above 32 are not supported".into()));
        }
        if z.len() != k {
            return Err(AlgebraError::InvalidParams(format!("expected {k} values of z, got {}", z.len())));
        }
        if lambda.len() != m + n {
            return Err(AlgebraError::InvalidParams(format!(
                "expected {} values of lambda, got {}",
                m + n,
                lambda.len()
            )));
        }
        for a in 0..k {
            if z[a + 1..].contains(&z[a]) {
                return Err(AlgebraError::NonDistinctZ);
            }
        }
        Ok(Self { m, n, k, z, lambda, trunc })
    }

    /// Integer parameters `z_a = a`, `Lambda_i = k + 1 + i`.
    pub fn sample(m: usize, n: usize, k: usize) -> Result<Self> {
        let z = (1..=k as i64).map(Rational::from_int).collect();
        let lambda = (1..=(m + n) as i64).map(|i| Rational::from_int(k as i64 + 1 + i)).collect();
        Self::new(m, n, k, z, lambda)
    }

    pub fn algebra(&self) -> SuperWeyl {
        SuperWeyl::new(self.m, self.n, self.k)
    }

    pub fn rows(&self) -> usize {
        self.m + self.n
    }

    /// `(-1)^{\bar i}` for a 1-based row index.
    pub fn row_sign(&self, i: usize) -> i64 {
        if i > self.m {
            -1
        } else {
            1
        }
    }

    /// `m - n`
    pub fn super_dim(&self) -> i64 {
        self.m as i64 - self.n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn validation() {
        assert!(ModelParams::new(1, 1, 1, vec![q(1)], vec![q(2), q(3)]).is_ok());
        assert_eq!(
            ModelParams::new(1, 0, 2, vec![q(1), q(1)], vec![q(2)]).unwrap_err(),
            AlgebraError::NonDistinctZ
        );
        assert!(ModelParams::new(0, 0, 1, vec![q(1)], vec![]).is_err());
        assert!(ModelParams::new(1, 0, 0, vec![], vec![q(1)]).is_err());
        assert!(ModelParams::new(1, 0, 1, vec![q(1)], vec![]).is_err());
        // equal lambdas are fine
        assert!(ModelParams::new(2, 0, 1, vec![q(1)], vec![q(2), q(2)]).is_ok());
    }

    #[test]
    fn default_orders() {
        let t = default_truncation(1, 2, 2);
        assert_eq!((t.v_floor, t.d_floor, t.w_top), (-10, -9, 9));
    }
}
