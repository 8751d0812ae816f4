//! Minimal multivariate polynomials, just enough to state test functions for
//! the Gaussian integration-by-parts identity.

/// Sum of coeff * prod_a x_a^{e_a} terms.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    dim: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl MultiPoly {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, f64)>) -> Self {
        for (exps, _) in &terms {
            assert_eq!(exps.len(), dim, "exponent vector has wrong dimension");
        }
        MultiPoly { dim, terms }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        MultiPoly {
            dim,
            terms: vec![(vec![0; dim], c)],
        }
    }

    /// Univariate monomial x^k.
    pub fn monomial_1d(k: u32) -> Self {
        MultiPoly {
            dim: 1,
            terms: vec![(vec![k], 1.0)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(exps, _)| exps.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(exps, c)| {
                c * exps
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Partial derivative with respect to coordinate j.
    pub fn partial(&self, j: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(exps, _)| exps[j] > 0)
            .map(|(exps, c)| {
                let mut e = exps.clone();
                let k = e[j];
                e[j] -= 1;
                (e, c * k as f64)
            })
            .collect();
        MultiPoly {
            dim: self.dim,
            terms,
        }
    }

    /// Apply d^{n_1}/dx_1^{n_1} ... d^{n_d}/dx_d^{n_d}.
    pub fn partial_multi(&self, orders: &[usize]) -> MultiPoly {
        debug_assert_eq!(orders.len(), self.dim);
        let mut out = self.clone();
        for (j, &k) in orders.iter().enumerate() {
            for _ in 0..k {
                out = out.partial(j);
            }
        }
        out
    }
}
