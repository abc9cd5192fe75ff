//! Dimension of sections of O(a_1, .., a_n) by the decrement-and-swap
//! recursion, and the line bundle pulled back from the projective embedding.

use std::fmt;

use crate::composition::Composition;
use crate::error::{FusionError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// d(a) = d(a_1, .., a_n − 1) + ∏_{i<n} (a_i + 1).
    Decrement { from: Vec<u32>, added: u64 },
    /// d(.., a_i, a_{i+1}, ..) = d(.., a_{i+1}, a_i, ..) when a_i = a_{i+1} + 1.
    Swap { from: Vec<u32>, at: usize },
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Rewrite::Decrement { from, added } => write!(f, "d({}) -> +{added}", show(from)),
            Rewrite::Swap { from, at } => write!(f, "d({}) swap at {}", show(from), at + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub label: Vec<u32>,
    pub value: u64,
    /// ∏ (a_i + 1).
    pub product: u64,
    pub chain: Vec<Rewrite>,
}

impl CohomologyReport {
    pub fn holds(&self) -> bool {
        self.value == self.product
    }

    /// The summands contributed by the decrement steps, in order.
    pub fn summands(&self) -> Vec<u64> {
        self.chain
            .iter()
            .filter_map(|r| match r {
                Rewrite::Decrement { added, .. } => Some(*added),
                Rewrite::Swap { .. } => None,
            })
            .collect()
    }
}

/// d(a) through the rewrite system, with base d(0, .., 0) = d() = 1.
pub fn cohomology_dim(label: &[u32]) -> Result<CohomologyReport> {
    if label.windows(2).any(|w| w[0] > w[1]) {
        return Err(FusionError::Unsorted(label.to_vec()));
    }
    let product = label.iter().map(|&a| a as u64 + 1).product();
    let mut state = label.to_vec();
    let mut chain = Vec::new();
    let mut value = 1u64;
    while state.iter().any(|&a| a > 0) {
        let n = state.len();
        let added: u64 = state[..n - 1].iter().map(|&a| a as u64 + 1).product();
        chain.push(Rewrite::Decrement {
            from: state.clone(),
            added,
        });
        value += added;
        state[n - 1] -= 1;
        let mut i = n - 1;
        while i > 0 && state[i - 1] > state[i] {
            if state[i - 1] != state[i] + 1 {
                return Err(FusionError::integrity(format!(
                    "no rewrite applies to d({state:?})"
                )));
            }
            chain.push(Rewrite::Swap {
                from: state.clone(),
                at: i - 1,
            });
            state.swap(i - 1, i);
            i -= 1;
        }
    }
    Ok(CohomologyReport {
        label: label.to_vec(),
        value,
        product,
        chain,
    })
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub a: Composition,
    /// Degrees b_0..b_{n−1} on the curves C_i: b_i = a_1 + .. + a_{n−i} − n + i.
    pub restriction_degrees: Vec<i64>,
    /// (b_{n−1}, b_{n−2} − b_{n−1}, .., b_0 − b_1).
    pub label: Vec<i64>,
    pub sections: Option<u64>,
}

impl PullbackReport {
    /// The label is (a_i − 1) and its section count is dim M^A.
    pub fn holds(&self) -> bool {
        let expected: Vec<i64> = self.a.parts().iter().map(|&x| x as i64 - 1).collect();
        self.label == expected && self.sections == Some(self.a.dim())
    }
}

pub fn pullback_degree(a: &Composition) -> Result<PullbackReport> {
    let n = a.n();
    let p: Vec<i64> = a.parts().iter().map(|&x| x as i64).collect();
    let b: Vec<i64> = (0..n)
        .map(|i| p[..n - i].iter().sum::<i64>() - n as i64 + i as i64)
        .collect();
    let label: Vec<i64> = (0..n)
        .map(|k| {
            let hi = b[n - 1 - k];
            let lo = if k == 0 { 0 } else { b[n - k] };
            hi - lo
        })
        .collect();
    let sections = if label.iter().all(|&x| x >= 0) {
        let l: Vec<u32> = label.iter().map(|&x| x as u32).collect();
        Some(cohomology_dim(&l)?.value)
    } else {
        None
    };
    Ok(PullbackReport {
        a: a.clone(),
        restriction_degrees: b,
        label,
        sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_examples() {
        assert_eq!(cohomology_dim(&[0, 0, 0]).unwrap().value, 1);
        assert_eq!(cohomology_dim(&[]).unwrap().value, 1);
        let r = cohomology_dim(&[2, 3, 4]).unwrap();
        assert_eq!(r.value, 60);
        assert_eq!(r.summands()[0], 12);
        let r = cohomology_dim(&[1, 1]).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.summands(), vec![2, 1]);
        assert!(cohomology_dim(&[2, 1]).is_err());
    }

    #[test]
    fn pullback_examples() {
        let r = pullback_degree(&Composition::new(vec![2, 3, 4]).unwrap()).unwrap();
        assert_eq!(r.label, vec![1, 2, 3]);
        assert_eq!(r.sections, Some(24));
        assert!(r.holds());
        let r = pullback_degree(&Composition::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.label, vec![0, 0, 0]);
        assert!(r.holds());
    }
}
