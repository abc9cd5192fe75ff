use std::fmt;

use crate::error::{FusionError, Result};

/// Nondecreasing tuple of positive integers (a_1 <= ... <= a_n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(FusionError::NonPositive(parts));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(FusionError::Unsorted(parts));
        }
        Ok(Composition { parts })
    }

    /// Sorts first; for callers that rely on the symmetry of the defining ideal.
    pub fn sorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable();
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of variables e_0..e_{n-1}.
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// 1-based access.
    pub fn a(&self, i: usize) -> u32 {
        self.parts[i - 1]
    }

    pub fn dim(&self) -> u64 {
        self.parts.iter().map(|&a| a as u64).product()
    }

    /// Σ (a_j − 1): the top e-degree of M^A.
    pub fn top_degree(&self) -> u32 {
        self.parts.iter().map(|&a| a - 1).sum()
    }

    /// N_A(k) = Σ_j (k + 1 − a_j)_+.
    pub fn n_a(&self, k: u32) -> u32 {
        self.parts
            .iter()
            .map(|&a| (k + 1).saturating_sub(a))
            .sum()
    }

    /// A_{i,j}: move one unit from position i to position j (1-based).
    ///
    /// I_A depends only on the multiset of entries, so when the move breaks
    /// the order (a_{i-1} = a_i or a_j = a_{j+1}) the sorted label is returned.
    /// A move that would create a zero entry is an error.
    pub fn moved(&self, i: usize, j: usize) -> Result<Composition> {
        let n = self.n();
        if !(1 <= i && i < j && j <= n) {
            return Err(FusionError::BadIndex(format!(
                "move ({i},{j}) needs 1 <= i < j <= {n}"
            )));
        }
        let mut p = self.parts.clone();
        if p[i - 1] == 1 {
            p[i - 1] = 0;
            return Err(FusionError::NonPositive(p));
        }
        p[i - 1] -= 1;
        p[j - 1] += 1;
        Composition::sorted(p)
    }

    pub fn drop_ones(&self) -> Composition {
        Composition {
            parts: self.parts.iter().copied().filter(|&a| a != 1).collect(),
        }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] < w[1])
    }
}

/// Nondecreasing tuples of length n with entries in lo..=hi, in lexicographic order.
pub fn sorted_tuples(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in lo..=hi {
            cur.push(x);
            rec(n, x, hi, cur, out);
            cur.pop();
        }
    }
    rec(n, lo, hi, &mut cur, &mut out);
    out
}

impl Composition {
    /// Every composition with 1 <= n <= max_n and entries at most max_entry.
    pub fn grid(max_n: usize, max_entry: u32) -> Vec<Composition> {
        (1..=max_n)
            .flat_map(|n| sorted_tuples(n, 1, max_entry))
            .map(|p| Composition { parts: p })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad entry {t:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Composition::new(parts).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Composition::new(vec![2, 1]).is_err());
        assert!(Composition::new(vec![0, 1]).is_err());
        let a = Composition::new(vec![2, 3, 4]).unwrap();
        assert_eq!(a.dim(), 24);
        assert_eq!(a.top_degree(), 6);
        assert_eq!(a.n_a(2), 1 + 0 + 0);
        assert_eq!(a.n_a(4), 3 + 2 + 1);
        assert_eq!(a.moved(1, 2).unwrap().parts(), &[1, 4, 4]);
        assert!(Composition::new(vec![2, 2]).unwrap().moved(1, 2).is_ok());
        assert!(a.moved(2, 2).is_err());
        let b = Composition::new(vec![2, 2, 3]).unwrap();
        assert_eq!(b.moved(2, 3).unwrap().parts(), &[1, 2, 4]);
        assert!(matches!(Composition::new(vec![1, 3]).unwrap().moved(1, 2), Err(FusionError::NonPositive(_))));
        assert_eq!("2,3".parse::<Composition>().unwrap().parts(), &[2, 3]);
        assert!("2,1"
            .parse::<Composition>()
            .unwrap_err()
            .starts_with("composition must be nondecreasing"));
    }

    #[test]
    fn grid_sizes() {
        // C(n + 4, n) nondecreasing n-tuples from 1..=5.
        assert_eq!(Composition::grid(4, 5).len(), 5 + 15 + 35 + 70);
        assert_eq!(sorted_tuples(3, 0, 4).len(), 35);
        assert!(Composition::grid(3, 3).iter().all(|c| c.parts().windows(2).all(|w| w[0] <= w[1])));
    }
}
