use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::composition::Composition;
use crate::error::{FusionError, Result};
use crate::fusion::{FusionModule, Piece};
use crate::linalg::{parse_scalar, Scalar};
use crate::poly::{Bideg, Monomial};

/// Anything that can hand out built fusion modules.
pub trait ModuleSource: Sync {
    fn module(&self, a: &Composition) -> Result<Arc<FusionModule>>;
}

/// In-memory memo of built modules.
#[derive(Default)]
pub struct MemoryStore {
    map: Mutex<HashMap<Composition, Arc<FusionModule>>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, m: FusionModule) -> Arc<FusionModule> {
        let m = Arc::new(m);
        self.map
            .lock()
            .unwrap()
            .insert(m.composition().clone(), m.clone());
        m
    }

    pub fn get(&self, a: &Composition) -> Option<Arc<FusionModule>> {
        self.map.lock().unwrap().get(a).cloned()
    }
}

impl ModuleSource for MemoryStore {
    fn module(&self, a: &Composition) -> Result<Arc<FusionModule>> {
        if let Some(m) = self.get(a) {
            return Ok(m);
        }
        // Built outside the lock; a racing duplicate build is harmless.
        let m = FusionModule::build(a)?;
        Ok(self.insert(m))
    }
}

/// Version tag of the text encoding; readers reject anything else.
pub const FORMAT_VERSION: u32 = 1;

// "_" stands for the monomial in no variables.
fn join_exps(m: &Monomial) -> String {
    if m.n() == 0 {
        return "_".into();
    }
    m.exps().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(".")
}

/// Self-describing text form of a built module: per bidegree, the basis
/// monomials and the normal form of every ambient monomial.
pub fn encode_module(m: &FusionModule) -> String {
    let mut out = format!("fusion-module {FORMAT_VERSION}\n");
    let parts: Vec<String> = m.composition().parts().iter().map(|x| x.to_string()).collect();
    out += &format!("a {}\n", parts.join(","));
    for (&(k, w), piece) in m.pieces() {
        out += &format!("piece {k} {w} {}\n", piece.dim());
        let basis: Vec<String> = piece.basis().iter().map(join_exps).collect();
        out += &format!("b {}\n", basis.join(" "));
        for (mono, nf) in piece.normal_forms() {
            let coords: Vec<String> = nf.iter().map(|c| c.to_string()).collect();
            out += &format!("m {} {}\n", join_exps(mono), coords.join(" "));
        }
    }
    out += "end\n";
    out
}

fn bad(detail: impl Into<String>) -> FusionError {
    FusionError::Cache(detail.into())
}

fn parse_monomial(s: &str, n: usize) -> Result<Monomial> {
    if s == "_" && n == 0 {
        return Ok(Monomial::new(Vec::new()));
    }
    let exps: Vec<u32> = s
        .split('.')
        .map(|x| x.parse().map_err(|_| bad(format!("bad exponent in {s}"))))
        .collect::<Result<_>>()?;
    if exps.len() != n {
        return Err(bad(format!("monomial {s} has the wrong number of variables")));
    }
    Ok(Monomial::new(exps))
}

/// Inverse of [`encode_module`]. Version mismatches and malformed input give
/// `FusionError::Cache`; a wrong total dimension gives an integrity error.
pub fn decode_module(text: &str) -> Result<FusionModule> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty"))?;
    match header.strip_prefix("fusion-module ").map(str::parse::<u32>) {
        Some(Ok(FORMAT_VERSION)) => {}
        Some(Ok(v)) => return Err(bad(format!("format version {v}, expected {FORMAT_VERSION}"))),
        _ => return Err(bad("missing header")),
    }
    let a_line = lines.next().and_then(|l| l.strip_prefix("a ")).ok_or_else(|| bad("missing label"))?;
    let parts: Vec<u32> = if a_line.is_empty() {
        Vec::new()
    } else {
        a_line
            .split(',')
            .map(|x| x.parse().map_err(|_| bad("bad label")))
            .collect::<Result<_>>()?
    };
    let a = Composition::new(parts)?;
    let n = a.n();
    let mut pieces = BTreeMap::new();
    let mut current: Option<(Bideg, usize, Vec<Monomial>, Vec<(Monomial, Vec<Scalar>)>)> = None;
    let mut flush = |cur: Option<(Bideg, usize, Vec<Monomial>, Vec<(Monomial, Vec<Scalar>)>)>| -> Result<()> {
        if let Some((d, dim, basis, ambient)) = cur {
            if basis.len() != dim || ambient.iter().any(|(m, v)| m.bidegree() != d || v.len() != dim) {
                return Err(bad(format!("inconsistent piece at {d:?}")));
            }
            pieces.insert(d, Piece::from_parts(basis, ambient));
        }
        Ok(())
    };
    let mut ended = false;
    for line in lines {
        let mut f = line.split(' ');
        match f.next() {
            Some("piece") => {
                flush(current.take())?;
                let nums: Vec<usize> = f
                    .map(|x| x.parse().map_err(|_| bad("bad piece header")))
                    .collect::<Result<_>>()?;
                let [k, w, dim] = nums[..] else {
                    return Err(bad("bad piece header"));
                };
                current = Some(((k as u32, w as u32), dim, Vec::new(), Vec::new()));
            }
            Some("b") => {
                let cur = current.as_mut().ok_or_else(|| bad("basis outside piece"))?;
                cur.2 = f.filter(|s| !s.is_empty()).map(|s| parse_monomial(s, n)).collect::<Result<_>>()?;
            }
            Some("m") => {
                let cur = current.as_mut().ok_or_else(|| bad("normal form outside piece"))?;
                let mono = parse_monomial(f.next().ok_or_else(|| bad("empty normal form"))?, n)?;
                let coords: Vec<Scalar> = f
                    .map(|s| parse_scalar(s).map_err(|_| bad(format!("bad scalar {s}"))))
                    .collect::<Result<_>>()?;
                cur.3.push((mono, coords));
            }
            Some("end") => {
                ended = true;
                break;
            }
            _ => return Err(bad(format!("unexpected line {line:?}"))),
        }
    }
    if !ended {
        return Err(bad("truncated"));
    }
    flush(current.take())?;
    FusionModule::from_pieces(&a, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedModule;

    #[test]
    fn round_trip() {
        for parts in [vec![], vec![1], vec![2, 3], vec![2, 2, 3]] {
            let a = Composition::new(parts).unwrap();
            let m = FusionModule::build(&a).unwrap();
            let text = encode_module(&m);
            let back = decode_module(&text).unwrap();
            assert_eq!(back.composition(), &a);
            assert_eq!(back.character(), m.character());
            assert_eq!(encode_module(&back), text);
        }
    }

    #[test]
    fn rejects_other_versions_and_truncation() {
        let m = FusionModule::build(&Composition::new(vec![2, 3]).unwrap()).unwrap();
        let text = encode_module(&m);
        let old = text.replacen("fusion-module 1", "fusion-module 0", 1);
        assert!(matches!(decode_module(&old), Err(FusionError::Cache(_))));
        let cut = &text[..text.len() - 4];
        assert!(matches!(decode_module(cut), Err(FusionError::Cache(_))));
    }
}
