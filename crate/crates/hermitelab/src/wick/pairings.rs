//! Pairings (perfect matchings) of {0..m-1} and the Gaussian moment sum
//! they drive: E[Z_1...Z_m] is the sum over pairings of products of pair
//! covariances, (m-1)!! terms in all.

use nalgebra::DMatrix;

/// A perfect matching of {0..m-1}, stored as sorted pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs are disjoint and their union is {0..m-1}.
    pub fn is_valid(&self, m: usize) -> bool {
        let mut seen = vec![false; m];
        for &(a, b) in &self.pairs {
            if a >= m || b >= m || a == b || seen[a] || seen[b] {
                return false;
            }
            seen[a] = true;
            seen[b] = true;
        }
        seen.iter().all(|&s| s)
    }
}

/// All (m-1)!! pairings of {0..m-1}; empty for odd m, consistent with the
/// vanishing odd Gaussian moments.
pub fn enumerate_pairings(m: usize) -> Vec<Pairing> {
    if m % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut current = Vec::with_capacity(m / 2);
    fn recurse(
        m: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Pairing>,
    ) {
        let first = match used.iter().position(|&u| !u) {
            Some(i) => i,
            None => {
                out.push(Pairing {
                    pairs: current.clone(),
                });
                return;
            }
        };
        used[first] = true;
        for partner in first + 1..m {
            if used[partner] {
                continue;
            }
            used[partner] = true;
            current.push((first, partner));
            recurse(m, used, current, out);
            current.pop();
            used[partner] = false;
        }
        used[first] = false;
    }
    recurse(m, &mut used, &mut current, &mut out);
    out
}

/// Joint Gaussian moment E[Z_{i_1} ... Z_{i_m}] as the pairing sum over
/// products of covariances. `indices` are 0-based labels into `cov`.
pub fn wick_moment(indices: &[usize], cov: &DMatrix<f64>) -> f64 {
    if indices.len() % 2 == 1 {
        return 0.0;
    }
    // Sum over pairings directly via the same first-free-slot recursion
    // rather than materializing them.
    fn recurse(indices: &[usize], used: &mut Vec<bool>, cov: &DMatrix<f64>, acc: f64) -> f64 {
        let first = match used.iter().position(|&u| !u) {
            Some(i) => i,
            None => return acc,
        };
        used[first] = true;
        let mut total = 0.0;
        for partner in first + 1..indices.len() {
            if used[partner] {
                continue;
            }
            used[partner] = true;
            total += recurse(
                indices,
                used,
                cov,
                acc * cov[(indices[first], indices[partner])],
            );
            used[partner] = false;
        }
        used[first] = false;
        total
    }
    let mut used = vec![false; indices.len()];
    recurse(indices, &mut used, cov, 1.0)
}
