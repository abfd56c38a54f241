//! Zero-dimensional schemes and the linear conditions they impose on forms.
//!
//! Each component contributes rows of linear functionals on the forms of a
//! fixed (bi)degree. A plane component supported at `P` is described by a
//! local frame `(u, w)` and a set of exponents `(i, j)`: the row for `(i, j)`
//! reads off the coefficient of `t^i s^j` in `f(P + t u + s w)`. A form lies in
//! the ideal of the component exactly when all those coefficients vanish,
//! because every supported component has a monomial ideal in the local
//! coordinates `(t, s)`:
//!
//! | component          | u, w                              | exponents             |
//! |--------------------|-----------------------------------|-----------------------|
//! | fat point `m`      | any                               | `i + j < m`           |
//! | (3,2)-point        | transversal, along the direction  | 1, t, s, ts, s^2      |
//! | `m`-jet            | -, towards `through`              | `s^j`, `j < m`        |
//! | `(m1,m2)`-jet      | towards `dir2`, towards `dir1`    | `i < m1`, `j < m2`    |
//!
//! Fat points use the closed form of the homogeneous Hasse derivatives
//! instead, which keeps them cheap at high multiplicity.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffla::{binomial_table, Degree, DenseMatrix, FieldElement, MonomialBasis, PolyVec, PrimeField};

type Row = Vec<FieldElement>;

pub fn cross(f: &PrimeField, a: [FieldElement; 3], b: [FieldElement; 3]) -> [FieldElement; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn dot3(f: &PrimeField, a: [FieldElement; 3], b: [FieldElement; 3]) -> FieldElement {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

pub fn det3(f: &PrimeField, a: [FieldElement; 3], b: [FieldElement; 3], c: [FieldElement; 3]) -> FieldElement {
    dot3(f, cross(f, a, b), c)
}

fn normalize<const N: usize>(f: &PrimeField, c: [FieldElement; N]) -> Option<[FieldElement; N]> {
    let lead = *c.iter().find(|x| !x.is_zero())?;
    let inv = f.inv(lead).ok()?;
    Some(c.map(|x| f.mul(x, inv)))
}

fn fmt_coords(out: &mut fmt::Formatter<'_>, c: &[FieldElement]) -> fmt::Result {
    write!(out, "[")?;
    for (i, x) in c.iter().enumerate() {
        if i > 0 {
            write!(out, ":")?;
        }
        write!(out, "{x}")?;
    }
    write!(out, "]")
}

/// A point of the projective plane, scaled so its first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint([FieldElement; 3]);

impl PlanePoint {
    pub fn new(f: &PrimeField, coords: [FieldElement; 3]) -> Result<Self> {
        normalize(f, coords)
            .map(PlanePoint)
            .ok_or_else(|| Error::InvalidPoint("all coordinates are zero".into()))
    }

    pub fn from_ints(f: &PrimeField, coords: [i64; 3]) -> Result<Self> {
        PlanePoint::new(f, coords.map(|c| f.elem(c)))
    }

    /// The coordinate point with a 1 in position `k`.
    pub fn coordinate(k: usize) -> Self {
        let mut c = [FieldElement::ZERO; 3];
        c[k] = FieldElement::ONE;
        PlanePoint(c)
    }

    /// `[0:1:0]`.
    pub fn q1() -> Self {
        PlanePoint::coordinate(1)
    }

    /// `[0:0:1]`.
    pub fn q2() -> Self {
        PlanePoint::coordinate(2)
    }

    /// A uniformly random point of the affine chart `z0 != 0`.
    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> Self {
        PlanePoint([FieldElement::ONE, f.random(rng), f.random(rng)])
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.0
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(out, &self.0)
    }
}

/// A point `([s0:s1], [t0:t1])` of P1xP1; each factor is normalized.
///
/// The factors double as the coefficient vectors of the linear forms
/// `l1 = s0 x0 + s1 x1` and `l2 = t0 y0 + t1 y1` whose power `l1^a l2^b` is
/// the image of the point on the Segre-Veronese surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiPoint {
    left: [FieldElement; 2],
    right: [FieldElement; 2],
}

impl BiPoint {
    pub fn new(f: &PrimeField, left: [FieldElement; 2], right: [FieldElement; 2]) -> Result<Self> {
        let zero = || Error::InvalidPoint("a factor of the point is zero".into());
        Ok(BiPoint { left: normalize(f, left).ok_or_else(zero)?, right: normalize(f, right).ok_or_else(zero)? })
    }

    pub fn from_ints(f: &PrimeField, left: [i64; 2], right: [i64; 2]) -> Result<Self> {
        BiPoint::new(f, left.map(|c| f.elem(c)), right.map(|c| f.elem(c)))
    }

    /// A random point with `s0 = t0 = 1`.
    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> Self {
        BiPoint { left: [FieldElement::ONE, f.random(rng)], right: [FieldElement::ONE, f.random(rng)] }
    }

    pub fn left(&self) -> [FieldElement; 2] {
        self.left
    }

    pub fn right(&self) -> [FieldElement; 2] {
        self.right
    }
}

impl fmt::Display for BiPoint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(")?;
        fmt_coords(out, &self.left)?;
        write!(out, ",")?;
        fmt_coords(out, &self.right)?;
        write!(out, ")")
    }
}

/// The pair of linear forms `(m1, m2)` that, together with the support
/// `(l1, l2)`, fixes the tangent direction of a (3,2)-point of P1xP1.
///
/// The two vectors are kept exactly as given: rescaling one of them alone
/// changes the direction, so there is no normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TangentPair {
    pub m1: [FieldElement; 2],
    pub m2: [FieldElement; 2],
}

impl TangentPair {
    pub fn new(m1: [FieldElement; 2], m2: [FieldElement; 2]) -> Self {
        TangentPair { m1, m2 }
    }

    pub fn from_ints(f: &PrimeField, m1: [i64; 2], m2: [i64; 2]) -> Self {
        TangentPair { m1: m1.map(|c| f.elem(c)), m2: m2.map(|c| f.elem(c)) }
    }

    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> Self {
        TangentPair { m1: [f.random(rng), f.random(rng)], m2: [f.random(rng), f.random(rng)] }
    }
}

impl fmt::Display for TangentPair {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(")?;
        fmt_coords(out, &self.m1)?;
        write!(out, ",")?;
        fmt_coords(out, &self.m2)?;
        write!(out, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Plane,
    Biprojective,
}

impl Ambient {
    pub fn matches(self, degree: Degree) -> bool {
        matches!(
            (self, degree),
            (Ambient::Plane, Degree::Plane(_)) | (Ambient::Biprojective, Degree::Biprojective(..))
        )
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::Plane => "plane",
            Ambient::Biprojective => "p1xp1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeComponent {
    Fat { m: u32, support: PlanePoint },
    Simple { support: PlanePoint },
    /// Triple point cut by the double of the line through `support` and `direction`.
    ThreeTwoP2 { support: PlanePoint, direction: PlanePoint },
    /// Curvilinear scheme of length `m` on the line through `support` and `through`.
    Jet { m: u32, support: PlanePoint, through: PlanePoint },
    /// Complete intersection `(l1^m1, l2^m2)`, `l1` the line to `dir1`, `l2` the line to `dir2`.
    CrossJet { m1: u32, m2: u32, support: PlanePoint, dir1: PlanePoint, dir2: PlanePoint },
    ThreeTwoP1P1 { support: BiPoint, cosupport: TangentPair },
}

impl SchemeComponent {
    /// Degree of the component as a scheme.
    pub fn length(&self) -> usize {
        match self {
            SchemeComponent::Fat { m, .. } => (*m as usize * (*m as usize + 1)) / 2,
            SchemeComponent::Simple { .. } => 1,
            SchemeComponent::ThreeTwoP2 { .. } | SchemeComponent::ThreeTwoP1P1 { .. } => 5,
            SchemeComponent::Jet { m, .. } => *m as usize,
            SchemeComponent::CrossJet { m1, m2, .. } => (*m1 * *m2) as usize,
        }
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            SchemeComponent::ThreeTwoP1P1 { .. } => Ambient::Biprojective,
            _ => Ambient::Plane,
        }
    }

    pub fn plane_support(&self) -> Option<PlanePoint> {
        match self {
            SchemeComponent::Fat { support, .. }
            | SchemeComponent::Simple { support }
            | SchemeComponent::ThreeTwoP2 { support, .. }
            | SchemeComponent::Jet { support, .. }
            | SchemeComponent::CrossJet { support, .. } => Some(*support),
            SchemeComponent::ThreeTwoP1P1 { .. } => None,
        }
    }

    fn validate(&self, f: &PrimeField) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScheme(msg));
        match self {
            SchemeComponent::Fat { m: 0, .. } | SchemeComponent::Jet { m: 0, .. } => {
                bad("multiplicity must be at least 1".into())
            }
            SchemeComponent::CrossJet { m1, m2, .. } if *m1 == 0 || *m2 == 0 => {
                bad("cross-jet orders must be at least 1".into())
            }
            SchemeComponent::ThreeTwoP2 { support, direction } if support == direction => {
                bad(format!("direction point coincides with the support {support}"))
            }
            SchemeComponent::Jet { support, through, .. } if support == through => {
                bad(format!("jet line is undetermined at {support}"))
            }
            SchemeComponent::CrossJet { support, dir1, dir2, .. } => {
                if support == dir1 || support == dir2 {
                    return bad(format!("cross-jet line is undetermined at {support}"));
                }
                if det3(f, support.coords(), dir1.coords(), dir2.coords()).is_zero() {
                    return bad(format!("cross-jet lines at {support} coincide"));
                }
                Ok(())
            }
            SchemeComponent::ThreeTwoP1P1 { support, cosupport } => {
                if tangent_direction(f, support, cosupport) == (FieldElement::ZERO, FieldElement::ZERO) {
                    return bad(format!("cosupport {cosupport} gives no tangent direction at {support}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Condition rows on forms of the given degree.
    pub fn rows(&self, f: &PrimeField, degree: Degree) -> Result<Vec<Row>> {
        if !self.ambient().matches(degree) {
            return Err(Error::AmbientMismatch(format!("{self} cannot impose conditions in degree {degree}")));
        }
        let plane_degree = |deg: Degree| match deg {
            Degree::Plane(d) => d,
            _ => unreachable!("checked above"),
        };
        Ok(match self {
            SchemeComponent::Fat { m, support } => rows_fat_point(f, support, *m, plane_degree(degree)),
            SchemeComponent::Simple { support } => rows_fat_point(f, support, 1, plane_degree(degree)),
            SchemeComponent::ThreeTwoP2 { support, direction } => {
                rows_32_p2(f, support, direction, plane_degree(degree))
            }
            SchemeComponent::Jet { m, support, through } => rows_jet(f, *m, support, through, plane_degree(degree)),
            SchemeComponent::CrossJet { m1, m2, support, dir1, dir2 } => {
                rows_cross_jet(f, *m1, *m2, support, dir1, dir2, plane_degree(degree))
            }
            SchemeComponent::ThreeTwoP1P1 { support, cosupport } => {
                let Degree::Biprojective(a, b) = degree else { unreachable!("checked above") };
                if a == 0 || b == 0 {
                    return Err(Error::Precondition(format!("(3,2)-points need a, b >= 1, got ({a},{b})")));
                }
                rows_32_p1p1(f, support, cosupport, a, b)
            }
        })
    }
}

impl fmt::Display for SchemeComponent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeComponent::Fat { m, support } => write!(out, "{m}{support}"),
            SchemeComponent::Simple { support } => write!(out, "{support}"),
            SchemeComponent::ThreeTwoP2 { support, direction } => write!(out, "32{support}->{direction}"),
            SchemeComponent::Jet { m, support, through } => write!(out, "jet{m}{support}->{through}"),
            SchemeComponent::CrossJet { m1, m2, support, dir1, dir2 } => {
                write!(out, "jet({m1},{m2}){support}->{dir1},{dir2}")
            }
            SchemeComponent::ThreeTwoP1P1 { support, cosupport } => write!(out, "32{support}~{cosupport}"),
        }
    }
}

/// A formal sum of components in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeSpec {
    ambient: Ambient,
    components: Vec<SchemeComponent>,
}

impl SchemeSpec {
    pub fn empty(ambient: Ambient) -> Self {
        SchemeSpec { ambient, components: Vec::new() }
    }

    pub fn new(f: &PrimeField, ambient: Ambient, components: Vec<SchemeComponent>) -> Result<Self> {
        let mut spec = SchemeSpec::empty(ambient);
        for c in components {
            spec.push(f, c)?;
        }
        Ok(spec)
    }

    /// Adds a component after checking it against the ones already present.
    pub fn push(&mut self, f: &PrimeField, c: SchemeComponent) -> Result<()> {
        if c.ambient() != self.ambient {
            return Err(Error::AmbientMismatch(format!("{c} does not live in {}", self.ambient)));
        }
        c.validate(f)?;
        let clash = self.components.iter().any(|o| match (o, &c) {
            (
                SchemeComponent::ThreeTwoP1P1 { support: s1, .. },
                SchemeComponent::ThreeTwoP1P1 { support: s2, .. },
            ) => s1 == s2,
            _ => o.plane_support().is_some() && o.plane_support() == c.plane_support(),
        });
        if clash {
            return Err(Error::InvalidScheme(format!("two components are supported at the point of {c}")));
        }
        self.components.push(c);
        Ok(())
    }

    /// The union of two schemes with disjoint supports.
    pub fn union(&self, f: &PrimeField, other: &SchemeSpec) -> Result<SchemeSpec> {
        let mut out = self.clone();
        for c in &other.components {
            out.push(f, c.clone())?;
        }
        Ok(out)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn components(&self) -> &[SchemeComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Sum of the component lengths.
    pub fn length(&self) -> usize {
        self.components.iter().map(SchemeComponent::length).sum()
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(out, "empty {}", self.ambient);
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(out, " + ")?;
            }
            write!(out, "{c}")?;
        }
        Ok(())
    }
}

/// Condition rows of a scheme together with the basis they act on.
#[derive(Clone, Debug)]
pub struct ConditionMatrix {
    pub basis: MonomialBasis,
    pub matrix: DenseMatrix,
}

impl ConditionMatrix {
    /// The Hilbert function of the scheme in this degree.
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Dimension of the space of forms through the scheme.
    pub fn dim_linsys(&self) -> usize {
        self.basis.len() - self.rank()
    }
}

pub fn condition_matrix(f: &PrimeField, x: &SchemeSpec, degree: Degree) -> Result<ConditionMatrix> {
    if !x.ambient.matches(degree) {
        return Err(Error::AmbientMismatch(format!("a {} scheme has no degree {degree} piece", x.ambient)));
    }
    let basis = MonomialBasis::new(degree);
    let mut matrix = DenseMatrix::new(*f, basis.len());
    for c in &x.components {
        matrix.extend_rows(c.rows(f, degree)?);
    }
    Ok(ConditionMatrix { basis, matrix })
}

/// Order-`r` homogeneous Hasse derivatives at `point`, `r = min(order, deg)`.
///
/// For a form of degree `d`, Euler's identity recovers every derivative of
/// order below `r` from those of order exactly `r` (the factors `d - k` are
/// units as long as `p > d`), so these rows span all conditions of order
/// `<= order`.
fn hasse_rows(f: &PrimeField, basis: &MonomialBasis, point: &[FieldElement], order: u32) -> Vec<Row> {
    let (d, alpha_degree) = match basis.degree() {
        Degree::Plane(d) => (d, Degree::Plane(order.min(d))),
        Degree::Line(d) => (d, Degree::Line(order.min(d))),
        Degree::Biprojective(..) => unreachable!("fat conditions live on plane or line forms"),
    };
    let binom = binomial_table(f, d);
    let powers: Vec<Vec<FieldElement>> =
        point.iter().map(|&c| std::iter::successors(Some(FieldElement::ONE), |&x| Some(f.mul(x, c))).take(d as usize + 1).collect()).collect();
    MonomialBasis::new(alpha_degree)
        .iter()
        .map(|alpha| {
            basis
                .iter()
                .map(|beta| {
                    let mut acc = FieldElement::ONE;
                    for k in 0..alpha.len() {
                        if beta[k] < alpha[k] {
                            return FieldElement::ZERO;
                        }
                        let e = (beta[k] - alpha[k]) as usize;
                        acc = f.mul(acc, f.mul(binom[beta[k] as usize][alpha[k] as usize], powers[k][e]));
                        if acc.is_zero() {
                            return acc;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `t^i s^j`, `(i, j)` in `wanted`, of `f(p + t u + s w)` for every monomial `f` of degree `d`.
fn taylor_rows(
    f: &PrimeField,
    d: u32,
    p: [FieldElement; 3],
    u: [FieldElement; 3],
    w: [FieldElement; 3],
    wanted: &[(usize, usize)],
) -> Vec<Row> {
    let ni = wanted.iter().map(|x| x.0).max().unwrap_or(0) + 1;
    let nj = wanted.iter().map(|x| x.1).max().unwrap_or(0) + 1;
    let size = ni * nj;
    // powers[k][e] = (p_k + u_k t + w_k s)^e truncated to t^(<ni) s^(<nj)
    let powers: Vec<Vec<Vec<FieldElement>>> = (0..3)
        .map(|k| {
            let mut out = Vec::with_capacity(d as usize + 1);
            let mut cur = vec![FieldElement::ZERO; size];
            cur[0] = FieldElement::ONE;
            out.push(cur.clone());
            for _ in 0..d {
                let mut next = vec![FieldElement::ZERO; size];
                for i in 0..ni {
                    for j in 0..nj {
                        let mut v = f.mul(p[k], cur[i * nj + j]);
                        if i > 0 {
                            v = f.add(v, f.mul(u[k], cur[(i - 1) * nj + j]));
                        }
                        if j > 0 {
                            v = f.add(v, f.mul(w[k], cur[i * nj + j - 1]));
                        }
                        next[i * nj + j] = v;
                    }
                }
                out.push(next.clone());
                cur = next;
            }
            out
        })
        .collect();
    let box_mul = |x: &[FieldElement], y: &[FieldElement]| {
        let mut out = vec![FieldElement::ZERO; size];
        for i1 in 0..ni {
            for j1 in 0..nj {
                let a = x[i1 * nj + j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..ni - i1 {
                    for j2 in 0..nj - j1 {
                        let b = y[i2 * nj + j2];
                        if !b.is_zero() {
                            let t = (i1 + i2) * nj + j1 + j2;
                            out[t] = f.add(out[t], f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    };
    let basis = MonomialBasis::new(Degree::Plane(d));
    let mut rows = vec![vec![FieldElement::ZERO; basis.len()]; wanted.len()];
    for (col, beta) in basis.iter().enumerate() {
        let prod = box_mul(&box_mul(&powers[0][beta[0] as usize], &powers[1][beta[1] as usize]), &powers[2][beta[2] as usize]);
        for (r, &(i, j)) in wanted.iter().enumerate() {
            rows[r][col] = prod[i * nj + j];
        }
    }
    rows
}

/// Conditions for vanishing to order `m` at `p`.
pub fn rows_fat_point(f: &PrimeField, p: &PlanePoint, m: u32, d: u32) -> Vec<Row> {
    hasse_rows(f, &MonomialBasis::new(Degree::Plane(d)), &p.coords(), m - 1)
}

/// Conditions of a curvilinear scheme of length `m` at `point` on forms of
/// degree `d` on P1. Used for traces on a line.
pub fn rows_line_jet(f: &PrimeField, point: [FieldElement; 2], m: u32, d: u32) -> Vec<Row> {
    hasse_rows(f, &MonomialBasis::new(Degree::Line(d)), &point, m - 1)
}

/// A coordinate vector completing `p, w` to a basis.
fn transversal(f: &PrimeField, p: [FieldElement; 3], w: [FieldElement; 3]) -> [FieldElement; 3] {
    (0..3)
        .map(|k| PlanePoint::coordinate(k).coords())
        .find(|e| !det3(f, p, w, *e).is_zero())
        .expect("support and direction are distinct points")
}

/// The five conditions of a (3,2)-point: `f, D_u f, D_w f, D_u D_w f, D_w^(2) f` at the support.
pub fn rows_32_p2(f: &PrimeField, p: &PlanePoint, direction: &PlanePoint, d: u32) -> Vec<Row> {
    let w = direction.coords();
    let u = transversal(f, p.coords(), w);
    taylor_rows(f, d, p.coords(), u, w, &[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)])
}

pub fn rows_jet(f: &PrimeField, m: u32, p: &PlanePoint, through: &PlanePoint, d: u32) -> Vec<Row> {
    let w = through.coords();
    let u = transversal(f, p.coords(), w);
    let wanted: Vec<(usize, usize)> = (0..m as usize).map(|j| (0, j)).collect();
    taylor_rows(f, d, p.coords(), u, w, &wanted)
}

pub fn rows_cross_jet(
    f: &PrimeField,
    m1: u32,
    m2: u32,
    p: &PlanePoint,
    dir1: &PlanePoint,
    dir2: &PlanePoint,
    d: u32,
) -> Vec<Row> {
    let wanted: Vec<(usize, usize)> =
        (0..m1 as usize).flat_map(|i| (0..m2 as usize).map(move |j| (i, j))).collect();
    taylor_rows(f, d, p.coords(), dir2.coords(), dir1.coords(), &wanted)
}

/// The tangent vector `(du, dv)`, in the affine chart `s0 = t0 = 1`, of the
/// curve traced by the (3,2)-point at `support` with cosupport `cosupport`.
pub fn tangent_direction(f: &PrimeField, support: &BiPoint, cosupport: &TangentPair) -> (FieldElement, FieldElement) {
    let [p0, p1] = support.left;
    let [q0, q1] = support.right;
    let [n0, n1] = cosupport.m1;
    let [k0, k1] = cosupport.m2;
    (f.sub(f.mul(p0, n1), f.mul(p1, n0)), f.sub(f.mul(q0, k1), f.mul(q1, k0)))
}

/// `l^el * m^em` as a form in `x0, x1` of bidegree `(el + em, 0)`, or in `y0, y1` of bidegree `(0, el + em)`.
fn factor_power(f: &PrimeField, l: [FieldElement; 2], m: [FieldElement; 2], el: u32, em: u32, left: bool) -> PolyVec {
    let lin = |c| if left { PolyVec::x_linear(c) } else { PolyVec::y_linear(c) };
    lin(l).pow(f, el).mul(f, &lin(m).pow(f, em))
}

/// Forms spanning the affine cone over the tangent space of the tangential
/// variety at `d/dt (l1 + t m1)^a (l2 + t m2)^b` for `t = 0`.
///
/// That point is `l1^(a-1) n1 l2^b + l1^a l2^(b-1) n2` with `n1 = a m1` and
/// `n2 = b m2`. Scaling the cosupport this way keeps the tangent direction,
/// and hence the (3,2)-point, the same in every bidegree. The span is
///
/// `l1^a l2^(b-1) S_(0,1) + l1^(a-1) l2^b S_(1,0)
///  + l1^(a-2) l2^(b-1) ((a-1) n1 l2 + a l1 n2) S_(1,0)
///  + l1^(a-1) l2^(b-2) (b n1 l2 + (b-1) l1 n2) S_(0,1)`,
///
/// eight forms spanning five dimensions when `ab > 1`. Each `S` factor is
/// needed in full: when `m1` is a multiple of `l1` (a vertical tangent),
/// multiplying by `l1, m1` alone misses part of the space.
pub fn tangent_space_polys(f: &PrimeField, support: &BiPoint, cosupport: &TangentPair, a: u32, b: u32) -> Vec<PolyVec> {
    assert!(a >= 1 && b >= 1);
    let scale = |c: [FieldElement; 2], k: u32| c.map(|x| f.mul(x, f.from_u64(k as u64)));
    let (l1, l2, n1, n2) = (support.left, support.right, scale(cosupport.m1, a), scale(cosupport.m2, b));
    let x = |el, em| factor_power(f, l1, n1, el, em, true);
    let y = |el, em| factor_power(f, l2, n2, el, em, false);
    let term = |c: u32, xe: (u32, u32), ye: (u32, u32)| x(xe.0, xe.1).mul(f, &y(ye.0, ye.1)).scale(f, f.from_u64(c as u64));
    let e = |k: usize| {
        let mut c = [FieldElement::ZERO; 2];
        c[k] = FieldElement::ONE;
        c
    };
    let xs = [PolyVec::x_linear(e(0)), PolyVec::x_linear(e(1))];
    let ys = [PolyVec::y_linear(e(0)), PolyVec::y_linear(e(1))];
    // the (a-2) and (b-2) summands carry the coefficients a-1 and b-1
    let mut mixed_x = term(a, (a - 1, 0), (b - 1, 1));
    if a >= 2 {
        mixed_x = mixed_x.add(f, &term(a - 1, (a - 2, 1), (b, 0)));
    }
    let mut mixed_y = term(b, (a - 1, 1), (b - 1, 0));
    if b >= 2 {
        mixed_y = mixed_y.add(f, &term(b - 1, (a, 0), (b - 2, 1)));
    }
    let along_y = term(1, (a, 0), (b - 1, 0));
    let along_x = term(1, (a - 1, 0), (b, 0));
    let mut out = Vec::with_capacity(8);
    for (base, lin) in [(&along_y, &ys), (&along_x, &xs), (&mixed_x, &xs), (&mixed_y, &ys)] {
        out.extend(lin.iter().map(|l| base.mul(f, l)));
    }
    out
}

/// Weights `1 / (C(a,i0) C(b,j0))` of the contraction pairing between forms
/// of bidegree `(a,b)` written in the plain monomial basis.
///
/// With these weights the pairing of a form `g` with `l1^a l2^b` is `g`
/// evaluated at the point `(l1, l2)`, which makes the orthogonal complement
/// of a span of tangent forms an ideal piece.
pub fn apolarity_weights(f: &PrimeField, a: u32, b: u32) -> Vec<FieldElement> {
    let binom = binomial_table(f, a.max(b));
    MonomialBasis::new(Degree::Biprojective(a, b))
        .iter()
        .map(|e| {
            let c = f.mul(binom[a as usize][e[0] as usize], binom[b as usize][e[2] as usize]);
            f.inv(c).expect("binomials are units when p exceeds the degree")
        })
        .collect()
}

/// The tangent forms as linear functionals under the contraction pairing:
/// a form of bidegree `(a,b)` satisfies these conditions iff it is apolar to
/// the tangent space.
///
/// Returns a reduced basis: five rows when `ab > 1`, four at `(1,1)`.
pub fn rows_32_p1p1(f: &PrimeField, support: &BiPoint, cosupport: &TangentPair, a: u32, b: u32) -> Vec<Row> {
    let weights = apolarity_weights(f, a, b);
    let rows = tangent_space_polys(f, support, cosupport, a, b)
        .into_iter()
        .map(|w| w.coeffs().iter().zip(&weights).map(|(&c, &k)| f.mul(c, k)).collect())
        .collect();
    DenseMatrix::from_rows(*f, weights.len(), rows).rref().into_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rank(rows: Vec<Row>, ncols: usize) -> usize {
        DenseMatrix::from_rows(PrimeField::default(), ncols, rows).rank()
    }

    #[test]
    fn points_normalize() {
        let f = PrimeField::default();
        let p = PlanePoint::from_ints(&f, [0, 3, 6]).unwrap();
        assert_eq!(p, PlanePoint::from_ints(&f, [0, 1, 2]).unwrap());
        assert!(PlanePoint::from_ints(&f, [0, 0, 0]).is_err());
        assert!(BiPoint::from_ints(&f, [0, 0], [1, 1]).is_err());
    }

    #[test]
    fn fat_point_small_degrees() {
        let f = PrimeField::default();
        let p = PlanePoint::from_ints(&f, [1, 2, 3]).unwrap();
        let ev = rows_fat_point(&f, &p, 1, 2);
        assert_eq!(ev.len(), 1);
        // evaluation of z0^2, z0z1, z0z2, z1^2, z1z2, z2^2 at (1,2,3)
        assert_eq!(ev[0], [1, 2, 3, 4, 6, 9].map(|v| f.elem(v)).to_vec());
        assert_eq!(rank(rows_fat_point(&f, &p, 2, 1), 3), 3);
        // a triple point on lines or conics kills everything
        assert_eq!(rank(rows_fat_point(&f, &p, 3, 1), 3), 3);
        assert_eq!(rank(rows_fat_point(&f, &p, 3, 2), 6), 6);
        assert_eq!(rows_fat_point(&f, &p, 3, 4).len(), 6);
    }

    #[test]
    fn fat_point_at_coordinate_point_is_unit_rows() {
        let f = PrimeField::default();
        for row in rows_fat_point(&f, &PlanePoint::q1(), 4, 7) {
            assert_eq!(row.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn three_two_point_ranks() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = PlanePoint::random(&f, &mut rng);
        let dir = PlanePoint::random(&f, &mut rng);
        assert_eq!(rank(rows_32_p2(&f, &p, &dir, 1), 3), 3);
        for d in 2..8 {
            assert_eq!(rank(rows_32_p2(&f, &p, &dir, d), Degree::Plane(d).dim()), 5);
        }
    }

    #[test]
    fn jets_and_cross_jets() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = PlanePoint::random(&f, &mut rng);
        let q = PlanePoint::random(&f, &mut rng);
        let r = PlanePoint::random(&f, &mut rng);
        assert_eq!(rows_jet(&f, 1, &p, &q, 3).len(), 1);
        assert_eq!(rank(rows_jet(&f, 2, &p, &q, 1), 3), 2);
        assert_eq!(rank(rows_jet(&f, 3, &p, &q, 2), 6), 3);
        assert_eq!(rank(rows_cross_jet(&f, 1, 1, &p, &q, &r, 2), 6), 1);
        assert_eq!(rank(rows_cross_jet(&f, 2, 2, &p, &q, &r, 2), 6), 4);
        assert_eq!(rank(rows_cross_jet(&f, 2, 2, &p, &q, &r, 1), 3), 3);
    }

    #[test]
    fn biprojective_tangent_ranks() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pt = BiPoint::random(&f, &mut rng);
        let co = TangentPair::random(&f, &mut rng);
        assert_eq!(rank(rows_32_p1p1(&f, &pt, &co, 1, 1), 4), 4);
        assert_eq!(rank(rows_32_p1p1(&f, &pt, &co, 2, 2), 9), 5);
        assert_eq!(rank(rows_32_p1p1(&f, &pt, &co, 1, 3), 8), 5);
    }

    #[test]
    fn scheme_validation() {
        let f = PrimeField::default();
        let p = PlanePoint::from_ints(&f, [1, 0, 0]).unwrap();
        let q = PlanePoint::from_ints(&f, [1, 1, 0]).unwrap();
        let r = PlanePoint::from_ints(&f, [1, 2, 0]).unwrap();
        let bad = SchemeComponent::CrossJet { m1: 2, m2: 2, support: p, dir1: q, dir2: r };
        assert!(matches!(SchemeSpec::new(&f, Ambient::Plane, vec![bad]), Err(Error::InvalidScheme(_))));
        let twice = vec![SchemeComponent::Simple { support: p }, SchemeComponent::Fat { m: 2, support: p }];
        assert!(SchemeSpec::new(&f, Ambient::Plane, twice).is_err());
        let bi = SchemeComponent::ThreeTwoP1P1 {
            support: BiPoint::from_ints(&f, [1, 0], [1, 0]).unwrap(),
            cosupport: TangentPair::from_ints(&f, [0, 1], [0, -1]),
        };
        assert!(matches!(SchemeSpec::new(&f, Ambient::Plane, vec![bi.clone()]), Err(Error::AmbientMismatch(_))));
        let x = SchemeSpec::new(&f, Ambient::Biprojective, vec![bi]).unwrap();
        assert!(matches!(condition_matrix(&f, &x, Degree::Plane(3)), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn empty_scheme_imposes_nothing() {
        let f = PrimeField::default();
        let cm = condition_matrix(&f, &SchemeSpec::empty(Ambient::Plane), Degree::Plane(3)).unwrap();
        assert_eq!((cm.rank(), cm.dim_linsys()), (0, 10));
    }
}
