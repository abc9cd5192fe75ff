//! Polynomial vector fields on the big cells C^n of the Schubert variety,
//! written through their action δx(t) on the point x(t) = Σ x_k t^k.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{FusionError, Result};
use crate::geometry::laurent::Laurent;
use crate::geometry::series::{Coeff, Series};
use crate::geometry::{random_point, SymSeries};
use crate::linalg::{int, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    E,
    H,
    L,
    F,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::E => "e",
            Kind::H => "h",
            Kind::L => "L",
            Kind::F => "f",
        };
        write!(f, "{s}")
    }
}

/// Σ_k c_k ∂_{v_k} with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<Laurent>,
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField {
            coeffs: vec![Laurent::zero(n); n],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Laurent>) -> Self {
        VectorField { coeffs }
    }

    /// The field whose ∂_k coefficient is the t^k coefficient of δ.
    pub fn from_series(n: usize, delta: &SymSeries) -> Self {
        VectorField {
            coeffs: (0..n)
                .map(|k| {
                    if k < delta.precision() {
                        delta.coeff(k).clone()
                    } else {
                        Laurent::zero(n)
                    }
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Laurent] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Laurent::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorField {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VectorField {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        VectorField {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiply by a function.
    pub fn times(&self, g: &Laurent) -> Self {
        VectorField {
            coeffs: self.coeffs.iter().map(|a| a * g).collect(),
        }
    }

    /// Apply the field to a function.
    pub fn apply(&self, g: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.n());
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &g.derivative(k));
            }
        }
        out
    }

    pub fn eval(&self, pt: &[Scalar]) -> Option<Vec<Scalar>> {
        self.coeffs.iter().map(|c| c.eval(pt)).collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*d{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// [V, W] = V∘W − W∘V.
pub fn bracket(v: &VectorField, w: &VectorField) -> VectorField {
    VectorField {
        coeffs: (0..v.n())
            .map(|k| &v.apply(&w.coeffs[k]) - &w.apply(&v.coeffs[k]))
            .collect(),
    }
}

/// x(t) = Σ_{k<n} x_k t^k at the given precision.
pub fn coordinate_series(n: usize, precision: usize) -> SymSeries {
    Series::new(
        (0..precision)
            .map(|k| if k < n { Laurent::var(n, k) } else { Laurent::zero(n) })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledField {
    pub kind: Kind,
    pub index: usize,
    pub field: VectorField,
}

fn t_power(n: usize, precision: usize, k: usize) -> SymSeries {
    let base = coordinate_series(n, precision).zero_like();
    base.monomial_like(k, Laurent::one(n))
}

/// δx for e_i, h_i, f_i, L_i: t^i, −2t^i x, −t^i x², t^{i+1} x'.
pub fn standard_field(n: usize, kind: Kind, i: usize) -> VectorField {
    let x = coordinate_series(n, n);
    let ti = t_power(n, n, i);
    let delta = match kind {
        Kind::E => ti,
        Kind::H => ti.mul(&x).scale(&int(-2)),
        Kind::F => ti.mul(&x.mul(&x)).neg(),
        Kind::L => x.derivative().shift(i as isize + 1).expect("upward shift"),
    };
    VectorField::from_series(n, &delta)
}

/// The 4n−1 fields e_i, h_i, f_i (i < n) and L_i (i < n−1).
pub fn standard_fields(n: usize) -> Vec<LabeledField> {
    let mut out = Vec::new();
    for kind in [Kind::E, Kind::H, Kind::L, Kind::F] {
        let count = if kind == Kind::L { n.saturating_sub(1) } else { n };
        for i in 0..count {
            out.push(LabeledField {
                kind,
                index: i,
                field: standard_field(n, kind, i),
            });
        }
    }
    out
}

/// δ of a primed field at the point `x` (a series of precision ≥ n+2):
/// e'_i = t^i, h'_i = −2t^{i−1}X, f'_i = −t^{i−2}X², L'_i = t^{i−1}(tX' − X),
/// with X = x − x_0.
pub fn primed_delta(n: usize, x: &SymSeries, kind: Kind, i: usize) -> Result<SymSeries> {
    let zero = x.coeff(0).zero_like();
    let big_x = {
        let mut c = x.coeffs().to_vec();
        c[0] = zero.clone();
        Series::new(c)
    };
    let i = i as isize;
    let delta = match kind {
        Kind::E => big_x.zero_like().monomial_like(i as usize, zero.one_like()),
        Kind::H => big_x.scale(&int(-2)).shift(i - 1)?,
        Kind::F => big_x.mul(&big_x).neg().shift(i - 2)?,
        Kind::L => big_x.derivative().shift(1)?.sub(&big_x).shift(i - 1)?,
    };
    Ok(delta.truncate(n))
}

pub fn primed_field(n: usize, kind: Kind, i: usize) -> VectorField {
    let x = coordinate_series(n, n + 2);
    let delta = primed_delta(n, &x, kind, i).expect("primed fields are polynomial");
    VectorField::from_series(n, &delta)
}

/// The 4n−5 fields tangent to the fibres, ordered e'_1..e'_{n−1},
/// h'_1..h'_{n−1}, L'_1..L'_{n−2}, f'_1..f'_{n−1}.
pub fn primed_basis(n: usize) -> Vec<LabeledField> {
    let mut out = Vec::new();
    for kind in [Kind::E, Kind::H, Kind::L, Kind::F] {
        let top = if kind == Kind::L { n.saturating_sub(2) } else { n.saturating_sub(1) };
        for i in 1..=top {
            out.push(LabeledField {
                kind,
                index: i,
                field: primed_field(n, kind, i),
            });
        }
    }
    out
}

/// Flattened coefficient vectors over a shared monomial index.
fn flatten(fields: &[&VectorField]) -> (Vec<(usize, Vec<i32>)>, Vec<Vec<Scalar>>) {
    let mut keys: Vec<(usize, Vec<i32>)> = fields
        .iter()
        .flat_map(|v| {
            v.coeffs
                .iter()
                .enumerate()
                .flat_map(|(k, c)| c.terms().keys().map(move |e| (k, e.clone())))
        })
        .collect();
    keys.sort();
    keys.dedup();
    let vecs = fields
        .iter()
        .map(|v| keys.iter().map(|(k, e)| v.coeffs[*k].coeff(e)).collect())
        .collect();
    (keys, vecs)
}

/// Coefficients c with v = Σ c_i basis_i, if they exist.
pub fn decompose(basis: &[&VectorField], v: &VectorField) -> Option<Vec<Scalar>> {
    let mut all: Vec<&VectorField> = basis.to_vec();
    all.push(v);
    let (keys, vecs) = flatten(&all);
    let cols = all.len();
    let rows: Vec<Vec<Scalar>> = (0..keys.len())
        .map(|r| (0..cols).map(|c| vecs[c][r].clone()).collect())
        .collect();
    let rref = Matrix::from_rows(rows, cols).rref();
    if rref.pivots.contains(&(cols - 1)) {
        return None;
    }
    let mut out = vec![Scalar::zero(); basis.len()];
    for (r, &p) in rref.pivots.iter().enumerate() {
        out[p] = rref.reduced.get(r, cols - 1).clone();
    }
    Some(out)
}

pub fn rank(fields: &[&VectorField]) -> usize {
    let (keys, vecs) = flatten(fields);
    Matrix::from_rows(vecs, keys.len()).rank()
}

#[derive(Clone, Debug)]
pub struct VectAlgebraReport {
    pub n: usize,
    pub count: usize,
    pub rank: usize,
    /// Every bracket of two basis fields lies in their span.
    pub closed: bool,
    /// Every structure constant is an integer.
    pub integral: bool,
    /// Brackets that differ from the predicted relation.
    pub relation_failures: Vec<String>,
}

impl VectAlgebraReport {
    pub fn holds(&self) -> bool {
        self.rank == self.count && self.closed && self.integral && self.relation_failures.is_empty()
    }
}

/// Predicted bracket [a_i, b_j] as (coefficient, kind, index).
fn predicted(a: Kind, i: usize, b: Kind, j: usize) -> Option<(i64, Kind, usize)> {
    use Kind::*;
    let (ii, jj) = (i as i64, j as i64);
    match (a, b) {
        (H, E) => Some((2, E, i + j)),
        (E, H) => Some((-2, E, i + j)),
        (H, F) => Some((-2, F, i + j)),
        (F, H) => Some((2, F, i + j)),
        (E, F) => Some((1, H, i + j)),
        (F, E) => Some((-1, H, i + j)),
        (L, L) => Some((ii - jj, L, i + j)),
        (L, x) => Some((-jj, x, i + j)),
        (x, L) => Some((ii, x, i + j)),
        _ => None,
    }
}

/// Independence, bracket closure, and the sl2 ⊗ C[t]/t^n and L relations.
pub fn verify_vect_algebra(n: usize) -> Result<VectAlgebraReport> {
    if n == 0 {
        return Err(FusionError::Hypothesis("needs n >= 1".into()));
    }
    let fields = standard_fields(n);
    let refs: Vec<&VectorField> = fields.iter().map(|f| &f.field).collect();
    let r = rank(&refs);
    let mut closed = true;
    let mut integral = true;
    let mut failures = Vec::new();
    let lookup = |k: Kind, i: usize| fields.iter().find(|f| f.kind == k && f.index == i);
    for a in &fields {
        for b in &fields {
            let br = bracket(&a.field, &b.field);
            match decompose(&refs, &br) {
                Some(c) => {
                    if c.iter().any(|x| !x.is_integer()) {
                        integral = false;
                    }
                }
                None => closed = false,
            }
            let expected = match predicted(a.kind, a.index, b.kind, b.index) {
                Some((c, k, idx)) => lookup(k, idx)
                    .map(|f| f.field.scale(&int(c)))
                    .unwrap_or_else(|| VectorField::zero(n)),
                None => VectorField::zero(n),
            };
            if br != expected {
                failures.push(format!(
                    "[{}_{}, {}_{}] = {br}",
                    a.kind, a.index, b.kind, b.index
                ));
            }
        }
    }
    Ok(VectAlgebraReport {
        n,
        count: fields.len(),
        rank: r,
        closed,
        integral,
        relation_failures: failures,
    })
}

/// Series inversion y = 1/x as a map of coefficients, with its Jacobian
/// matrix ∂y_k/∂x_j.
pub fn inversion_jacobian(n: usize) -> Vec<Vec<Laurent>> {
    let y = coordinate_series(n, n).invert().expect("x_0 is a unit");
    (0..n)
        .map(|k| (0..n).map(|j| y.coeff(k).derivative(j)).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct JacobianReport {
    pub n: usize,
    /// (point, determinant, (−1)^n x_0^{−2n}).
    pub samples: Vec<(Vec<Scalar>, Scalar, Scalar)>,
}

impl JacobianReport {
    pub fn holds(&self) -> bool {
        self.samples.iter().all(|(_, a, b)| a == b)
    }
}

/// det ∂(1/x)/∂x = (−1)^n x_0^{−2n} at random rational points.
pub fn jacobian_identity<R: Rng + ?Sized>(n: usize, samples: usize, rng: &mut R) -> Result<JacobianReport> {
    if n == 0 {
        return Err(FusionError::Hypothesis("needs n >= 1".into()));
    }
    let jac = inversion_jacobian(n);
    let mut out = Vec::new();
    for _ in 0..samples {
        let pt = random_point(rng, n, 9);
        let rows: Vec<Vec<Scalar>> = jac
            .iter()
            .map(|row| row.iter().map(|c| c.eval(&pt).expect("x_0 != 0")).collect())
            .collect();
        let det = Matrix::from_rows(rows, n).det();
        let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let expected = sign * num_traits::pow(pt[0].recip(), 2 * n);
        out.push((pt, det, expected));
    }
    Ok(JacobianReport { n, samples: out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    X,
    Y,
}

/// One side of a field identity: Σ coefficient · field in one chart.
#[derive(Clone, Debug)]
pub struct Side {
    pub chart: Chart,
    pub terms: Vec<(Laurent, VectorField)>,
}

#[derive(Clone, Debug)]
pub struct FieldIdentity {
    pub name: String,
    pub anchor: &'static str,
    /// True for a formula as printed that is known to be misprinted.
    pub erratum: bool,
    pub lhs: Side,
    pub rhs: Side,
}

#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: String,
    pub anchor: &'static str,
    pub erratum: bool,
    pub holds: bool,
    /// First sample point (x coordinates) where the identity fails.
    pub counterexample: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct PushforwardReport {
    pub n: usize,
    pub samples: usize,
    pub results: Vec<IdentityResult>,
}

impl PushforwardReport {
    /// Every corrected identity holds.
    pub fn holds(&self) -> bool {
        self.results.iter().filter(|r| !r.erratum).all(|r| r.holds)
    }
}

fn v0_power(n: usize, e: i32, c: Scalar) -> Laurent {
    Laurent::monomial(n, 0, e, c)
}

fn side(chart: Chart, terms: Vec<(Laurent, VectorField)>) -> Side {
    Side { chart, terms }
}

/// Field identities between the standard fields, the primed fields, and
/// the two charts, each with its printed variant where one is misprinted.
pub fn field_identities(n: usize) -> Vec<FieldIdentity> {
    let c = |e: i32, v: i64| v0_power(n, e, int(v));
    let std = |k: Kind, i: usize| standard_field(n, k, i);
    let pr = |k: Kind, i: usize| primed_field(n, k, i);
    let mut out = Vec::new();
    for i in 0..n {
        for chart in [Chart::X, Chart::Y] {
            let tag = if chart == Chart::X { "x" } else { "y" };
            out.push(FieldIdentity {
                name: format!("e_{tag},{i} = e'_{i}"),
                anchor: "Lemma (n')",
                erratum: false,
                lhs: side(chart, vec![(c(0, 1), std(Kind::E, i))]),
                rhs: side(chart, vec![(c(0, 1), pr(Kind::E, i))]),
            });
            out.push(FieldIdentity {
                name: format!("h_{tag},{i} = h'_{} - 2{tag}0 e'_{i}", i + 1),
                anchor: "Lemma (n')",
                erratum: false,
                lhs: side(chart, vec![(c(0, 1), std(Kind::H, i))]),
                rhs: side(chart, vec![(c(0, 1), pr(Kind::H, i + 1)), (c(1, -2), pr(Kind::E, i))]),
            });
            out.push(FieldIdentity {
                name: format!("f_{tag},{i} = f'_{} + {tag}0 h'_{} - {tag}0^2 e'_{i}", i + 2, i + 1),
                anchor: "Lemma (n')",
                erratum: false,
                lhs: side(chart, vec![(c(0, 1), std(Kind::F, i))]),
                rhs: side(
                    chart,
                    vec![
                        (c(0, 1), pr(Kind::F, i + 2)),
                        (c(1, 1), pr(Kind::H, i + 1)),
                        (c(2, -1), pr(Kind::E, i)),
                    ],
                ),
            });
            if i + 1 < n {
                let half = v0_power(n, 0, crate::linalg::frac(-1, 2));
                out.push(FieldIdentity {
                    name: format!("L_{tag},{i} = L'_{} - h'_{}/2", i + 1, i + 1),
                    anchor: "Lemma (n')",
                    erratum: false,
                    lhs: side(chart, vec![(c(0, 1), std(Kind::L, i))]),
                    rhs: side(chart, vec![(c(0, 1), pr(Kind::L, i + 1)), (half.clone(), pr(Kind::H, i + 1))]),
                });
                out.push(FieldIdentity {
                    name: format!("L_{tag},{i} = L'_{} - h'_{i}/2 (as printed)", i + 1),
                    anchor: "Lemma (n')",
                    erratum: true,
                    lhs: side(chart, vec![(c(0, 1), std(Kind::L, i))]),
                    rhs: side(chart, vec![(c(0, 1), pr(Kind::L, i + 1)), (half, pr(Kind::H, i))]),
                });
            }
        }
        out.push(FieldIdentity {
            name: format!("e_x,{i} = f_y,{i}"),
            anchor: "Eq. (coor)",
            erratum: false,
            lhs: side(Chart::X, vec![(c(0, 1), std(Kind::E, i))]),
            rhs: side(Chart::Y, vec![(c(0, 1), std(Kind::F, i))]),
        });
        out.push(FieldIdentity {
            name: format!("f_x,{i} = e_y,{i}"),
            anchor: "Eq. (coor)",
            erratum: false,
            lhs: side(Chart::X, vec![(c(0, 1), std(Kind::F, i))]),
            rhs: side(Chart::Y, vec![(c(0, 1), std(Kind::E, i))]),
        });
        out.push(FieldIdentity {
            name: format!("h_x,{i} = -h_y,{i}"),
            anchor: "Eq. (coor)",
            erratum: false,
            lhs: side(Chart::X, vec![(c(0, 1), std(Kind::H, i))]),
            rhs: side(Chart::Y, vec![(c(0, -1), std(Kind::H, i))]),
        });
        if i + 1 < n {
            out.push(FieldIdentity {
                name: format!("L_x,{i} = L_y,{i}"),
                anchor: "Eq. (coor)",
                erratum: false,
                lhs: side(Chart::X, vec![(c(0, 1), std(Kind::L, i))]),
                rhs: side(Chart::Y, vec![(c(0, 1), std(Kind::L, i))]),
            });
        }
    }
    for i in 1..n {
        for (sign, erratum) in [(-1, false), (1, true)] {
            out.push(FieldIdentity {
                name: format!(
                    "e'x_{i} = {}y0^2 e'y_{i} + y0 h'y_{} + f'y_{}{}",
                    if sign < 0 { "-" } else { "" },
                    i + 1,
                    i + 2,
                    if erratum { " (as printed)" } else { "" }
                ),
                anchor: "Eq. (xy)",
                erratum,
                lhs: side(Chart::X, vec![(c(0, 1), pr(Kind::E, i))]),
                rhs: side(
                    Chart::Y,
                    vec![
                        (c(2, sign), pr(Kind::E, i)),
                        (c(1, 1), pr(Kind::H, i + 1)),
                        (c(0, 1), pr(Kind::F, i + 2)),
                    ],
                ),
            });
        }
        out.push(FieldIdentity {
            name: format!("h'x_{i} = h'y_{i} + 2/y0 f'y_{}", i + 1),
            anchor: "Eq. (xy)",
            erratum: false,
            lhs: side(Chart::X, vec![(c(0, 1), pr(Kind::H, i))]),
            rhs: side(Chart::Y, vec![(c(0, 1), pr(Kind::H, i)), (c(-1, 2), pr(Kind::F, i + 1))]),
        });
        if i + 1 < n {
            out.push(FieldIdentity {
                name: format!("L'x_{i} = L'y_{i} + 1/y0 f'y_{}", i + 1),
                anchor: "Eq. (xy)",
                erratum: false,
                lhs: side(Chart::X, vec![(c(0, 1), pr(Kind::L, i))]),
                rhs: side(Chart::Y, vec![(c(0, 1), pr(Kind::L, i)), (c(-1, 1), pr(Kind::F, i + 1))]),
            });
        }
        out.push(FieldIdentity {
            name: format!("f'x_{i} = -y0^-2 f'y_{i}"),
            anchor: "Eq. (xy)",
            erratum: false,
            lhs: side(Chart::X, vec![(c(0, 1), pr(Kind::F, i))]),
            rhs: side(Chart::Y, vec![(c(-2, -1), pr(Kind::F, i))]),
        });
    }
    out
}

/// Value of a side in y-chart tangent coordinates.
fn side_in_y(s: &Side, x: &[Scalar], y: &[Scalar], jac: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = x.len();
    let pt = if s.chart == Chart::X { x } else { y };
    let mut v = vec![Scalar::zero(); n];
    for (c, f) in &s.terms {
        let c = c.eval(pt).expect("coordinate 0 is nonzero");
        for (k, val) in f.eval(pt).expect("polynomial field").into_iter().enumerate() {
            v[k] += &c * val;
        }
    }
    if s.chart == Chart::X {
        (0..n)
            .map(|k| (0..n).fold(Scalar::zero(), |acc, j| acc + &jac[k][j] * &v[j]))
            .collect()
    } else {
        v
    }
}

/// Check every field identity at random points x with x_0 ≠ 0, moving
/// x-chart vectors to the y chart by the Jacobian of y = 1/x.
pub fn pushforward_check<R: Rng + ?Sized>(n: usize, samples: usize, rng: &mut R) -> Result<PushforwardReport> {
    if n < 2 {
        return Err(FusionError::Hypothesis("needs n >= 2".into()));
    }
    let ids = field_identities(n);
    let jac_sym = inversion_jacobian(n);
    let points: Vec<Vec<Scalar>> = (0..samples).map(|_| random_point(rng, n, 9)).collect();
    let prepared: Vec<(Vec<Scalar>, Vec<Scalar>, Vec<Vec<Scalar>>)> = points
        .into_iter()
        .map(|x| {
            let xs = Series::new(x.clone());
            let y = crate::geometry::series::invert_series(&xs)?.coeffs().to_vec();
            let jac = jac_sym
                .iter()
                .map(|row| row.iter().map(|c| c.eval(&x).expect("x_0 != 0")).collect())
                .collect();
            Ok((x, y, jac))
        })
        .collect::<Result<_>>()?;
    let results = ids
        .iter()
        .map(|id| {
            let bad = prepared
                .iter()
                .find(|(x, y, j)| side_in_y(&id.lhs, x, y, j) != side_in_y(&id.rhs, x, y, j));
            IdentityResult {
                name: id.name.clone(),
                anchor: id.anchor,
                erratum: id.erratum,
                holds: bad.is_none(),
                counterexample: bad.map(|p| p.0.clone()),
            }
        })
        .collect();
    Ok(PushforwardReport { n, samples, results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_fields() {
        let fs = standard_fields(1);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[1].field.coeffs()[0], Laurent::var(1, 0).scale(&int(-2)));
        assert_eq!(fs[2].field.coeffs()[0], (&Laurent::var(1, 0) * &Laurent::var(1, 0)).scale(&int(-1)));
        let l0 = standard_field(2, Kind::L, 0);
        assert!(l0.coeffs()[0].is_zero());
        assert_eq!(l0.coeffs()[1], Laurent::var(2, 1));
        let v = standard_field(3, Kind::F, 1);
        assert!(bracket(&v, &v).is_zero());
    }

    #[test]
    fn algebra_closes() {
        for n in 1..=4 {
            let r = verify_vect_algebra(n).unwrap();
            assert_eq!(r.count, 4 * n - 1);
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn primed_count() {
        assert_eq!(primed_basis(3).len(), 7);
        assert_eq!(primed_basis(2).len(), 3);
    }

    #[test]
    fn jacobian_and_pushforward() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            assert!(jacobian_identity(n, 5, &mut rng).unwrap().holds());
        }
        let r = pushforward_check(3, 6, &mut rng).unwrap();
        for res in &r.results {
            assert_eq!(res.holds, !res.erratum, "{}", res.name);
        }
    }
}
