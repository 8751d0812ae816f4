//! Set partitions of {0..m-1} and joint cumulants as signed sums of moments
//! over them.

/// Disjoint non-empty blocks covering {0..m-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn is_valid(&self, m: usize) -> bool {
        let mut seen = vec![false; m];
        for block in &self.blocks {
            if block.is_empty() {
                return false;
            }
            for &i in block {
                if i >= m || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// All partitions of {0..m-1}, one per restricted-growth assignment.
pub fn set_partitions(m: usize) -> Vec<SetPartition> {
    assert!(m >= 1 && m <= 12, "partition enumeration supports 1 <= m <= 12");
    let mut out = Vec::new();
    // assignment[i] is the block index of element i; block indices grow by
    // at most one past the current maximum.
    let mut assignment = vec![0usize; m];
    fn recurse(i: usize, max_used: usize, assignment: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        let m = assignment.len();
        if i == m {
            let blocks_count = max_used + 1;
            let mut blocks = vec![Vec::new(); blocks_count];
            for (elem, &b) in assignment.iter().enumerate() {
                blocks[b].push(elem);
            }
            out.push(SetPartition { blocks });
            return;
        }
        for b in 0..=max_used + 1 {
            assignment[i] = b;
            recurse(i + 1, max_used.max(b), assignment, out);
        }
    }
    assignment[0] = 0;
    recurse(1, 0, &mut assignment, &mut out);
    out
}

/// Joint cumulant from a moment oracle:
/// kappa(X_{i_1}, ..., X_{i_m}) = sum_pi (|pi|-1)! (-1)^{|pi|-1}
///                                prod_B E[prod_{j in B} X_{i_j}].
/// The oracle receives the variable labels of each block.
pub fn joint_cumulant(moment_oracle: impl Fn(&[usize]) -> f64, indices: &[usize]) -> f64 {
    assert!(
        !indices.is_empty() && indices.len() <= 10,
        "joint cumulants support 1..=10 indices"
    );
    let mut total = 0.0;
    for partition in set_partitions(indices.len()) {
        let blocks = partition.blocks.len();
        let mut product = 1.0;
        for block in &partition.blocks {
            let labels: Vec<usize> = block.iter().map(|&i| indices[i]).collect();
            product *= moment_oracle(&labels);
        }
        let mut weight = 1.0;
        for j in 1..blocks {
            weight *= -(j as f64);
        }
        total += weight * product;
    }
    total
}
