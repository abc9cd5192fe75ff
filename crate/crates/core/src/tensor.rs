use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{FusionError, Result};
use crate::fusion::FusionModule;
use crate::graded::{Element, GradedModule, Op};
use crate::linalg::Scalar;
use crate::poly::Bideg;

type Label = Vec<(Bideg, usize)>;

#[derive(Clone, Debug, Default)]
struct TensorPiece {
    basis: Vec<Label>,
    index: HashMap<Label, usize>,
}

/// Tensor product of fusion modules. `E(j)` acts diagonally as the sum of
/// e_j over factors, `Factor { factor, j }` on one factor only. A factor with
/// fewer than j+1 variables is killed by e_j.
#[derive(Clone, Debug)]
pub struct TensorModule {
    factors: Vec<Arc<FusionModule>>,
    n: usize,
    pieces: BTreeMap<Bideg, TensorPiece>,
}

impl TensorModule {
    /// All factors must have the same number of variables.
    pub fn new(factors: Vec<Arc<FusionModule>>) -> Result<Self> {
        let n = factors.first().map_or(0, |f| f.n());
        if let Some(f) = factors.iter().find(|f| f.n() != n) {
            return Err(FusionError::VariableMismatch {
                expected: n,
                got: f.n(),
            });
        }
        Ok(Self::padded(factors, n))
    }

    /// Factors may have fewer variables than `n`; missing e's act by zero.
    pub fn padded(factors: Vec<Arc<FusionModule>>, n: usize) -> Self {
        let mut labels: BTreeMap<Bideg, Vec<Label>> = BTreeMap::new();
        labels.insert((0, 0), vec![Vec::new()]);
        for f in &factors {
            let mut next: BTreeMap<Bideg, Vec<Label>> = BTreeMap::new();
            for (&(k, w), ls) in &labels {
                for d in f.bidegrees() {
                    let t = (k + d.0, w + d.1);
                    let slot = next.entry(t).or_default();
                    for l in ls {
                        for i in 0..f.piece_dim(d) {
                            let mut l2 = l.clone();
                            l2.push((d, i));
                            slot.push(l2);
                        }
                    }
                }
            }
            labels = next;
        }
        let pieces = labels
            .into_iter()
            .map(|(d, mut basis)| {
                basis.sort();
                let index = basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
                (d, TensorPiece { basis, index })
            })
            .collect();
        TensorModule { factors, n, pieces }
    }

    pub fn factors(&self) -> &[Arc<FusionModule>] {
        &self.factors
    }

    /// Tensor product of the cyclic vectors.
    pub fn cyclic_vector(&self) -> Element {
        Element::homogeneous((0, 0), vec![Scalar::one()])
    }

    /// Coordinates of a pure tensor of homogeneous factor vectors.
    pub fn pure_tensor(&self, parts: &[(Bideg, Vec<Scalar>)]) -> Result<(Bideg, Vec<Scalar>)> {
        if parts.len() != self.factors.len() {
            return Err(FusionError::BadIndex(format!(
                "expected {} tensor factors, got {}",
                self.factors.len(),
                parts.len()
            )));
        }
        let d = parts
            .iter()
            .fold((0, 0), |acc, (d, _)| (acc.0 + d.0, acc.1 + d.1));
        let dim = self.piece_dim(d);
        let mut out = vec![Scalar::zero(); dim];
        let mut stack: Vec<(Label, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for (fd, v) in parts {
            let mut next = Vec::new();
            for (l, c) in &stack {
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let mut l2 = l.clone();
                        l2.push((*fd, i));
                        next.push((l2, c * x));
                    }
                }
            }
            stack = next;
        }
        if let Some(p) = self.pieces.get(&d) {
            for (l, c) in stack {
                out[p.index[&l]] += c;
            }
        }
        Ok((d, out))
    }

    fn apply_on_factor(&self, f: usize, j: usize, d: Bideg, idx: usize, out: &mut [Scalar]) -> Result<()> {
        let factor = &self.factors[f];
        if j >= factor.n() {
            return Ok(());
        }
        let label = &self.pieces[&d].basis[idx];
        let (fd, fi) = label[f];
        let (img_d, img) = {
            let t = (fd.0 + 1, fd.1 + j as u32);
            if factor.piece_dim(t) == 0 {
                return Ok(());
            }
            (t, factor.apply_basis(&Op::E(j), fd, fi)?)
        };
        let target = (d.0 + 1, d.1 + j as u32);
        let Some(tp) = self.pieces.get(&target) else {
            return Ok(());
        };
        for (i, c) in img.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut l2 = label.clone();
            l2[f] = (img_d, i);
            out[tp.index[&l2]] += c;
        }
        Ok(())
    }
}

impl GradedModule for TensorModule {
    fn n(&self) -> usize {
        self.n
    }

    fn bidegrees(&self) -> Vec<Bideg> {
        self.pieces.keys().copied().collect()
    }

    fn piece_dim(&self, d: Bideg) -> usize {
        self.pieces.get(&d).map_or(0, |p| p.basis.len())
    }

    fn apply_basis(&self, op: &Op, d: Bideg, idx: usize) -> Result<Vec<Scalar>> {
        let t = op.target(d)?;
        let mut out = vec![Scalar::zero(); self.piece_dim(t)];
        match op {
            Op::E(j) => {
                if *j < self.n {
                    for f in 0..self.factors.len() {
                        self.apply_on_factor(f, *j, d, idx, &mut out)?;
                    }
                }
            }
            Op::Factor { factor, j } => {
                if *factor >= self.factors.len() {
                    return Err(FusionError::BadIndex(format!("no tensor factor {factor}")));
                }
                self.apply_on_factor(*factor, *j, d, idx, &mut out)?;
            }
            Op::Poly(_) => unreachable!("polynomial operators are expanded by GradedModule::apply"),
        }
        Ok(out)
    }
}

/// Tensor product of modules sharing the same variable count.
pub fn tensor(ms: Vec<Arc<FusionModule>>) -> Result<TensorModule> {
    TensorModule::new(ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;
    use crate::graded::cyclic_span;
    use crate::graded::seeds_of;

    fn module(v: &[u32]) -> Arc<FusionModule> {
        Arc::new(FusionModule::build(&Composition::new(v.to_vec()).unwrap()).unwrap())
    }

    #[test]
    fn dims_multiply() {
        let t = tensor(vec![module(&[2, 3]), module(&[2, 2])]).unwrap();
        assert_eq!(t.total_dim(), 24);
        let t = tensor(vec![module(&[1]), module(&[1])]).unwrap();
        assert_eq!(t.total_dim(), 1);
        assert!(tensor(vec![module(&[2]), module(&[2, 2])]).is_err());
    }

    #[test]
    fn diagonal_span_is_fusion() {
        let t = tensor(vec![module(&[2, 3]), module(&[2, 2])]).unwrap();
        let span = cyclic_span(&t, &[Op::E(0), Op::E(1)], &seeds_of(&t.cyclic_vector())).unwrap();
        assert_eq!(span.dim(), 12);
        assert_eq!(span.character(), module(&[3, 4]).character());
    }
}
