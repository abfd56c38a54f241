//! Residues and traces of schemes with respect to a line, and the checks
//! built on them: fixed components, single Horace steps, and the local ideal
//! identities behind the rewrite rules.
//!
//! Residues and traces are symbolic rewrites of [`SchemeComponent`]s. For a
//! component at `P` on the line `L = {ℓ = 0}` and a layer index `j`:
//!
//! | component                       | j     | residue                          | trace |
//! |---------------------------------|-------|----------------------------------|-------|
//! | fat point `m`                   | 1     | fat point `m - 1`                | m     |
//! | (3,2)-point, direction line `L` | 1     | 2-jet along `L`                  | 3     |
//! |                                 | 2     | 3-jet along `L`                  | 2     |
//! | (3,2)-point, `L` transversal    | 1, 2  | double point                     | 2     |
//! |                                 | 3     | (2,2)-jet on direction line, `L` | 1     |
//! | `m`-jet along `L`               | 1     | nothing                          | m     |
//! | `m`-jet transversal to `L`      | 1     | `(m-1)`-jet on the same line     | 1     |
//! | `(m1,m2)`-jet, `L` = line 1     | 1     | `(m1-1, m2)`-jet                 | m2    |
//! | (2,2)-jet, third line through P | 1     | 2-jet along the reflected line   | 2     |
//!
//! Components away from `L` are left alone (with `j = 1`). The identities
//! the table encodes are checked against [`crate::idealcalc`] by
//! [`verify_residue_example`] and [`verify_colon_identities`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffla::{Degree, DenseMatrix, FieldElement, PolyVec, PrimeField};
use crate::idealcalc::{
    ideal_degree_piece, line_form, piece_colon, piece_equal, piece_intersect, residue_piece, scheme_piece,
    trace_piece, GeneratorIdeal, SubspaceBasis,
};
use crate::sampling::rng_for;
use crate::schemes::{condition_matrix, cross, det3, dot3, rows_line_jet, Ambient, PlanePoint, SchemeComponent, SchemeSpec};

/// A line of the plane, kept both as two points and as its linear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineRef {
    p: PlanePoint,
    q: PlanePoint,
    form: [FieldElement; 3],
}

impl LineRef {
    pub fn through(f: &PrimeField, p: PlanePoint, q: PlanePoint) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidPoint(format!("a line needs two distinct points, got {p} twice")));
        }
        Ok(LineRef { p, q, form: cross(f, p.coords(), q.coords()) })
    }

    /// The line `c0 z0 + c1 z1 + c2 z2 = 0`.
    pub fn from_form(f: &PrimeField, form: [FieldElement; 3]) -> Result<Self> {
        let kernel = DenseMatrix::from_rows(*f, 3, vec![form.to_vec()]).kernel();
        if kernel.nrows() != 2 {
            return Err(Error::InvalidPoint("the zero form does not define a line".into()));
        }
        let pt = |r: &Vec<FieldElement>| PlanePoint::new(f, [r[0], r[1], r[2]]);
        LineRef::through(f, pt(&kernel.rows()[0])?, pt(&kernel.rows()[1])?)
    }

    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> Self {
        loop {
            let (p, q) = (PlanePoint::random(f, rng), PlanePoint::random(f, rng));
            if let Ok(l) = LineRef::through(f, p, q) {
                return l;
            }
        }
    }

    pub fn p(&self) -> PlanePoint {
        self.p
    }

    pub fn q(&self) -> PlanePoint {
        self.q
    }

    pub fn form(&self) -> [FieldElement; 3] {
        self.form
    }

    pub fn form_poly(&self) -> PolyVec {
        PolyVec::plane_linear(self.form)
    }

    pub fn contains(&self, f: &PrimeField, x: &PlanePoint) -> bool {
        dot3(f, self.form, x.coords()).is_zero()
    }

    /// Coordinates `(x, y)` with `pt = x p + y q` up to scale.
    pub fn param(&self, f: &PrimeField, pt: &PlanePoint) -> Option<[FieldElement; 2]> {
        if !self.contains(f, pt) {
            return None;
        }
        let (p, q, x) = (self.p.coords(), self.q.coords(), pt.coords());
        // any point r off the line separates the coefficients through determinants
        let (r, base) = (0..3)
            .map(|k| PlanePoint::coordinate(k).coords())
            .map(|r| (r, det3(f, p, q, r)))
            .find(|(_, b)| !b.is_zero())?;
        let inv = f.inv(base).ok()?;
        Some([f.mul(det3(f, x, q, r), inv), f.mul(det3(f, p, x, r), inv)])
    }

    /// A point of the line different from `pt`.
    pub fn other_point(&self, pt: &PlanePoint) -> PlanePoint {
        if *pt == self.p { self.q } else { self.p }
    }

    /// A random point `x p + y q` with `x, y` nonzero.
    pub fn random_point<R: Rng + ?Sized>(&self, f: &PrimeField, rng: &mut R) -> PlanePoint {
        let (x, y) = (f.random_nonzero(rng), f.random_nonzero(rng));
        let (p, q) = (self.p.coords(), self.q.coords());
        let c = [0, 1, 2].map(|k| f.add(f.mul(x, p[k]), f.mul(y, q[k])));
        PlanePoint::new(f, c).expect("p and q are independent")
    }
}

/// A curvilinear scheme on a line: supports with lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceScheme {
    pub line: LineRef,
    pub entries: Vec<(PlanePoint, u32)>,
}

impl TraceScheme {
    pub fn empty(line: LineRef) -> Self {
        TraceScheme { line, entries: Vec::new() }
    }

    pub fn length(&self) -> usize {
        self.entries.iter().map(|e| e.1 as usize).sum()
    }

    fn push(&mut self, entry: (PlanePoint, u32)) -> Result<()> {
        if self.entries.iter().any(|e| e.0 == entry.0) {
            return Err(Error::InvalidScheme(format!("two trace entries at {}", entry.0)));
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Conditions on binary forms of degree `d` in the coordinates of [`LineRef::param`].
    pub fn condition_rows(&self, f: &PrimeField, d: u32) -> Vec<Vec<FieldElement>> {
        self.entries
            .iter()
            .flat_map(|(pt, len)| {
                let t = self.line.param(f, pt).expect("trace supports lie on the line");
                rows_line_jet(f, t, *len, d)
            })
            .collect()
    }
}

/// Rank of the trace conditions on forms of degree `d` on the line.
pub fn trace_rank(f: &PrimeField, t: &TraceScheme, d: u32) -> usize {
    DenseMatrix::from_rows(*f, d as usize + 1, t.condition_rows(f, d)).rank()
}

fn jet(m: u32, support: PlanePoint, through: PlanePoint) -> Option<SchemeComponent> {
    match m {
        0 => None,
        1 => Some(SchemeComponent::Simple { support }),
        _ => Some(SchemeComponent::Jet { m, support, through }),
    }
}

fn cross_jet(m1: u32, m2: u32, support: PlanePoint, dir1: PlanePoint, dir2: PlanePoint) -> Option<SchemeComponent> {
    match (m1, m2) {
        (0, _) | (_, 0) => None,
        // (ℓ1, ℓ2^m2) is a jet on line 1 and vice versa
        (1, _) => jet(m2, support, dir1),
        (_, 1) => jet(m1, support, dir2),
        _ => Some(SchemeComponent::CrossJet { m1, m2, support, dir1, dir2 }),
    }
}

fn fat(m: u32, support: PlanePoint) -> Option<SchemeComponent> {
    match m {
        0 => None,
        1 => Some(SchemeComponent::Simple { support }),
        _ => Some(SchemeComponent::Fat { m, support }),
    }
}

type Rewrite = (Option<SchemeComponent>, Option<(PlanePoint, u32)>);

fn rewrite(f: &PrimeField, c: &SchemeComponent, line: &LineRef, j: u32) -> Result<Rewrite> {
    let unsupported = || Err(Error::NotVerticallyGraded(format!("{c} with layer {j}")));
    let Some(support) = c.plane_support() else {
        return unsupported();
    };
    if j == 0 {
        return unsupported();
    }
    if !line.contains(f, &support) {
        return if j == 1 { Ok((Some(c.clone()), None)) } else { unsupported() };
    }
    match (c, j) {
        (SchemeComponent::Simple { .. }, 1) => Ok((None, Some((support, 1)))),
        (SchemeComponent::Fat { m, .. }, 1) => Ok((fat(m - 1, support), Some((support, *m)))),
        (SchemeComponent::ThreeTwoP2 { direction, .. }, _) if line.contains(f, direction) => match j {
            1 => Ok((jet(2, support, *direction), Some((support, 3)))),
            2 => Ok((jet(3, support, *direction), Some((support, 2)))),
            _ => unsupported(),
        },
        (SchemeComponent::ThreeTwoP2 { direction, .. }, _) => match j {
            1 | 2 => Ok((fat(2, support), Some((support, 2)))),
            3 => Ok((cross_jet(2, 2, support, *direction, line.other_point(&support)), Some((support, 1)))),
            _ => unsupported(),
        },
        (SchemeComponent::Jet { m, through, .. }, 1) => {
            if line.contains(f, through) {
                Ok((None, Some((support, *m))))
            } else {
                Ok((jet(m - 1, support, *through), Some((support, 1))))
            }
        }
        (SchemeComponent::CrossJet { m1, m2, dir1, dir2, .. }, 1) => {
            if line.contains(f, dir1) {
                Ok((cross_jet(m1 - 1, *m2, support, *dir1, *dir2), Some((support, *m2))))
            } else if line.contains(f, dir2) {
                Ok((cross_jet(*m1, m2 - 1, support, *dir1, *dir2), Some((support, *m1))))
            } else if (*m1, *m2) == (2, 2) {
                let reflected = reflected_line(f, &support, dir1, dir2, line)?;
                Ok((jet(2, support, reflected.other_point(&support)), Some((support, 2))))
            } else {
                unsupported()
            }
        }
        _ => unsupported(),
    }
}

/// For `L = αℓ1 + βℓ2` through the common point of `ℓ1 = 0` and `ℓ2 = 0`,
/// the line `αℓ1 - βℓ2 = 0`.
fn reflected_line(
    f: &PrimeField,
    support: &PlanePoint,
    dir1: &PlanePoint,
    dir2: &PlanePoint,
    line: &LineRef,
) -> Result<LineRef> {
    let l1 = cross(f, support.coords(), dir1.coords());
    let l2 = cross(f, support.coords(), dir2.coords());
    let l = line.form();
    let c = cross(f, l1, l2);
    let k = c.iter().position(|x| !x.is_zero()).expect("the two lines are distinct");
    let inv = f.inv(c[k])?;
    let alpha = f.mul(cross(f, l, l2)[k], inv);
    let beta = f.mul(cross(f, l1, l)[k], inv);
    let n = [0, 1, 2].map(|i| f.sub(f.mul(alpha, l1[i]), f.mul(beta, l2[i])));
    LineRef::from_form(f, n)
}

fn layer(j: &[u32], i: usize) -> u32 {
    j.get(i).copied().unwrap_or(1)
}

/// `Res^j_L(X)`; `j[i]` is the layer removed from component `i` (missing entries are 1).
pub fn residue_scheme(f: &PrimeField, x: &SchemeSpec, line: &LineRef, j: &[u32]) -> Result<SchemeSpec> {
    if x.ambient() != Ambient::Plane {
        return Err(Error::NotVerticallyGraded("only plane schemes have residues along lines".into()));
    }
    let mut out = SchemeSpec::empty(Ambient::Plane);
    for (i, c) in x.components().iter().enumerate() {
        if let (Some(r), _) = rewrite(f, c, line, layer(j, i))? {
            out.push(f, r)?;
        }
    }
    Ok(out)
}

/// `Tr^j_L(X)` as supports with lengths on `L`.
pub fn trace_scheme(f: &PrimeField, x: &SchemeSpec, line: &LineRef, j: &[u32]) -> Result<TraceScheme> {
    if x.ambient() != Ambient::Plane {
        return Err(Error::NotVerticallyGraded("only plane schemes have traces on lines".into()));
    }
    let mut out = TraceScheme::empty(*line);
    for (i, c) in x.components().iter().enumerate() {
        if let (_, Some(t)) = rewrite(f, c, line, layer(j, i))? {
            out.push(t)?;
        }
    }
    Ok(out)
}

fn dim_linsys(f: &PrimeField, x: &SchemeSpec, d: u32) -> Result<usize> {
    Ok(condition_matrix(f, x, Degree::Plane(d))?.dim_linsys())
}

/// Whether `L` divides every form of degree `d` through `X`.
///
/// `ℓ · L_(d-1)(Res_L X)` always sits inside `L_d(X)`, so equality of
/// dimensions is equivalent to divisibility.
pub fn is_fixed_component(f: &PrimeField, x: &SchemeSpec, line: &LineRef, d: u32) -> Result<bool> {
    if d == 0 {
        return Err(Error::Precondition("fixed components need degree at least 1".into()));
    }
    let res = residue_scheme(f, x, line, &[])?;
    Ok(dim_linsys(f, x, d)? == dim_linsys(f, &res, d - 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoraceConclusion {
    /// `X + Y` imposes independent conditions in degree `d`.
    Independent,
    /// `L_d(X + Y)` is empty.
    Empty,
}

/// Outcome of one application of the differential Horace lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoraceStep {
    pub degree: u32,
    pub trace_length: usize,
    pub trace_rank: usize,
    pub residue_length: usize,
    pub residue_rank: usize,
    /// The trace conditions are independent on forms of degree `d` on `L`.
    pub trace_ok: bool,
    /// The residue conditions are independent in degree `d - 1`.
    pub residue_ok: bool,
    pub trace_empty: bool,
    pub residue_empty: bool,
    pub conclusion: Option<HoraceConclusion>,
}

/// Checks the hypotheses of the Horace lemma for `X + Y`, where `Ytilde`
/// is the specialization of `Y` onto `L` and `j` selects its layers.
pub fn horace_step_check(
    f: &PrimeField,
    x: &SchemeSpec,
    ytilde: &SchemeSpec,
    line: &LineRef,
    j: &[u32],
    d: u32,
) -> Result<HoraceStep> {
    if d == 0 {
        return Err(Error::Precondition("a Horace step needs degree at least 1".into()));
    }
    if let Some(c) = ytilde.components().iter().find(|c| c.plane_support().is_none_or(|p| !line.contains(f, &p))) {
        return Err(Error::NotVerticallyGraded(format!("{c} is not supported on the line")));
    }
    let mut trace = trace_scheme(f, x, line, &[])?;
    for e in trace_scheme(f, ytilde, line, j)?.entries {
        trace.push(e)?;
    }
    let residue = residue_scheme(f, x, line, &[])?.union(f, &residue_scheme(f, ytilde, line, j)?)?;
    let trace_rank = trace_rank(f, &trace, d);
    let residue_rank = condition_matrix(f, &residue, Degree::Plane(d - 1))?.rank();
    let (trace_length, residue_length) = (trace.length(), residue.length());
    let trace_ok = trace_rank == trace_length;
    let residue_ok = residue_rank == residue_length;
    let trace_empty = trace_rank == d as usize + 1;
    let residue_empty = residue_rank == Degree::Plane(d - 1).dim();
    let conclusion = if trace_ok && residue_ok {
        Some(HoraceConclusion::Independent)
    } else if trace_empty && residue_empty {
        Some(HoraceConclusion::Empty)
    } else {
        None
    };
    Ok(HoraceStep {
        degree: d,
        trace_length,
        trace_rank,
        residue_length,
        residue_rank,
        trace_ok,
        residue_ok,
        trace_empty,
        residue_empty,
        conclusion,
    })
}

fn coordinate_form(k: usize) -> PolyVec {
    let mut c = [FieldElement::ZERO; 3];
    c[k] = FieldElement::ONE;
    PolyVec::plane_linear(c)
}

fn plane_ideal(gens: Vec<PolyVec>) -> GeneratorIdeal {
    GeneratorIdeal::new(Degree::Plane(0), gens).expect("plane generators")
}

/// The colliding pair of 2-jets `(z2^2, z1 ± λ z0)`: their intersection is
/// `(z2^2, z1^2 - λ^2 z0^2)` for each sampled `λ != 0`, and the `λ = 0`
/// member of that family is the (2,2)-jet `(z1^2, z2^2)` at `[1:0:0]`.
pub fn verify_degeneration(f: &PrimeField, samples: usize, dmax: u32, seed: u64) -> Result<bool> {
    let (z0, z1, z2) = (coordinate_form(0), coordinate_form(1), coordinate_form(2));
    let z2sq = z2.pow(f, 2);
    let mut rng = rng_for(seed, &[0xde9e]);
    for _ in 0..samples {
        let lambda = f.random_nonzero(&mut rng);
        let shifted = |sign: i64| z1.add(f, &z0.scale(f, f.mul(f.elem(sign), lambda)));
        let j1 = plane_ideal(vec![z2sq.clone(), shifted(1)]);
        let j2 = plane_ideal(vec![z2sq.clone(), shifted(-1)]);
        let lsq = f.mul(lambda, lambda);
        let target = plane_ideal(vec![z2sq.clone(), z1.pow(f, 2).add(f, &z0.pow(f, 2).scale(f, f.neg(lsq)))]);
        for d in 0..=dmax {
            let deg = Degree::Plane(d);
            let meet = piece_intersect(&ideal_degree_piece(f, &j1, deg), &ideal_degree_piece(f, &j2, deg))?;
            let expected = ideal_degree_piece(f, &target, deg);
            if !piece_equal(&meet, &expected)? || (d <= 1 && meet.dim() != 0) {
                return Ok(false);
            }
        }
    }
    let origin = PlanePoint::coordinate(0);
    let limit = SchemeSpec::new(
        f,
        Ambient::Plane,
        vec![SchemeComponent::CrossJet {
            m1: 2,
            m2: 2,
            support: origin,
            dir1: PlanePoint::coordinate(2),
            dir2: PlanePoint::coordinate(1),
        }],
    )?;
    let at_zero = plane_ideal(vec![z2sq.clone(), z1.pow(f, 2)]);
    let crossjet = plane_ideal(vec![z1.pow(f, 2), z2sq]);
    for d in 0..=dmax {
        let deg = Degree::Plane(d);
        let piece = ideal_degree_piece(f, &at_zero, deg);
        if !piece_equal(&piece, &ideal_degree_piece(f, &crossjet, deg))? || !piece_equal(&piece, &scheme_piece(f, &limit, deg)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two colon identities of a (2,2)-jet `(ℓ1^2, ℓ2^2)`:
/// `(ℓ1^2, ℓ2^2) : ℓ1 = (ℓ1, ℓ2^2)` and
/// `(ℓ1^2, ℓ2^2) : (αℓ1 + βℓ2) = (ℓ1^2, αℓ1 - βℓ2)`,
/// over `samples` random jets and all degrees up to `dmax`.
pub fn verify_colon_identities(f: &PrimeField, samples: usize, dmax: u32, seed: u64) -> Result<bool> {
    for s in 0..samples {
        let mut rng = rng_for(seed, &[0xc010, s as u64]);
        let p = PlanePoint::random(f, &mut rng);
        let (r1, r2) = (PlanePoint::random(f, &mut rng), PlanePoint::random(f, &mut rng));
        if det3(f, p.coords(), r1.coords(), r2.coords()).is_zero() {
            continue;
        }
        let (l1, l2) = (line_form(f, &p, &r1), line_form(f, &p, &r2));
        let (alpha, beta) = (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng));
        let jet = plane_ideal(vec![l1.pow(f, 2), l2.pow(f, 2)]);
        let along = plane_ideal(vec![l1.clone(), l2.pow(f, 2)]);
        let g = l1.scale(f, alpha).add(f, &l2.scale(f, beta));
        let reflected = plane_ideal(vec![l1.pow(f, 2), l1.scale(f, alpha).add(f, &l2.scale(f, f.neg(beta)))]);
        for d in 0..=dmax {
            let deg = Degree::Plane(d);
            if !piece_equal(&piece_colon(f, &jet, &l1, deg)?, &ideal_degree_piece(f, &along, deg))? {
                return Ok(false);
            }
            if !piece_equal(&piece_colon(f, &jet, &g, deg)?, &ideal_degree_piece(f, &reflected, deg))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One residue or trace identity of a (3,2)-point, checked three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerIdentity {
    /// e.g. `Res^1 along the direction line = (z1, z2^2)`.
    pub name: String,
    /// Degrees where the colon-ideal computation, the closed-form ideal and
    /// the rewrite rule all agree.
    pub agreeing_degrees: Vec<u32>,
    pub holds: bool,
}

/// The residues and traces of the (3,2)-point `(z1^2, z1 z2^2, z2^3)` with
/// respect to its direction line `z1 = 0` (layers 1, 2) and a transversal
/// line `z2 = 0` (layers 1, 2, 3), in random coordinates.
///
/// For each layer the piece computed from colon ideals, the piece of the
/// closed-form answer, and the piece cut out by the rewrite rule must
/// coincide in every degree `0..=dmax`.
pub fn verify_residue_example(f: &PrimeField, dmax: u32, seed: u64) -> Result<Vec<LayerIdentity>> {
    let mut rng = rng_for(seed, &[0x3e5]);
    let (p, dir, other) = loop {
        let pts = (PlanePoint::random(f, &mut rng), PlanePoint::random(f, &mut rng), PlanePoint::random(f, &mut rng));
        if !det3(f, pts.0.coords(), pts.1.coords(), pts.2.coords()).is_zero() {
            break pts;
        }
    };
    let z1 = line_form(f, &p, &dir);
    let z2 = line_form(f, &p, &other);
    let point = SchemeSpec::new(f, Ambient::Plane, vec![SchemeComponent::ThreeTwoP2 { support: p, direction: dir }])?;
    let ideal = plane_ideal(vec![z1.pow(f, 2), z1.mul(f, &z2.pow(f, 2)), z2.pow(f, 3)]);
    let direction_line = LineRef::through(f, p, dir)?;
    let transversal_line = LineRef::through(f, p, other)?;

    enum Closed {
        Plane(Vec<PolyVec>),
        /// generator of the trace ideal, restricted to the base line
        OnLine(PolyVec),
    }
    let cases: Vec<(&str, &LineRef, &PolyVec, u32, bool, Closed)> = vec![
        ("Res^1 direction line = (z1, z2^2)", &direction_line, &z1, 1, true, Closed::Plane(vec![z1.clone(), z2.pow(f, 2)])),
        ("Tr^1 direction line = (z2^3)", &direction_line, &z1, 1, false, Closed::OnLine(z2.pow(f, 3))),
        ("Res^2 direction line = (z1, z2^3)", &direction_line, &z1, 2, true, Closed::Plane(vec![z1.clone(), z2.pow(f, 3)])),
        ("Tr^2 direction line = (z2^2)", &direction_line, &z1, 2, false, Closed::OnLine(z2.pow(f, 2))),
        (
            "Res^1 transversal = (z1^2, z1 z2, z2^2)",
            &transversal_line,
            &z2,
            1,
            true,
            Closed::Plane(vec![z1.pow(f, 2), z1.mul(f, &z2), z2.pow(f, 2)]),
        ),
        ("Tr^1 transversal = (z1^2)", &transversal_line, &z2, 1, false, Closed::OnLine(z1.pow(f, 2))),
        (
            "Res^2 transversal = (z1^2, z1 z2, z2^2)",
            &transversal_line,
            &z2,
            2,
            true,
            Closed::Plane(vec![z1.pow(f, 2), z1.mul(f, &z2), z2.pow(f, 2)]),
        ),
        ("Tr^2 transversal = (z1^2)", &transversal_line, &z2, 2, false, Closed::OnLine(z1.pow(f, 2))),
        ("Res^3 transversal = (z1^2, z2^2)", &transversal_line, &z2, 3, true, Closed::Plane(vec![z1.pow(f, 2), z2.pow(f, 2)])),
        ("Tr^3 transversal = (z1)", &transversal_line, &z2, 3, false, Closed::OnLine(z1.clone())),
    ];

    let mut out = Vec::new();
    for (name, line, ell, j, is_residue, closed) in cases {
        let mut agreeing = Vec::new();
        for d in 0..=dmax {
            let ok = if is_residue {
                let from_colon = residue_piece(f, &ideal, ell, j, d)?;
                let Closed::Plane(gens) = &closed else { unreachable!() };
                let from_closed = ideal_degree_piece(f, &plane_ideal(gens.clone()), Degree::Plane(d));
                let rewritten = residue_scheme(f, &point, line, &[j])?;
                let from_rule = scheme_piece(f, &rewritten, Degree::Plane(d))?;
                piece_equal(&from_colon, &from_closed)? && piece_equal(&from_colon, &from_rule)?
            } else {
                let from_colon = trace_piece(f, &ideal, ell, j, d, &line.p(), &line.q())?;
                let Closed::OnLine(g) = &closed else { unreachable!() };
                let restricted = crate::idealcalc::piece_restrict_to_line(
                    f,
                    &SubspaceBasis::from_polys(f, g.degree(), std::slice::from_ref(g)),
                    &line.p(),
                    &line.q(),
                )?;
                let line_ideal = GeneratorIdeal::new(Degree::Line(0), restricted.rows().iter().map(|r| PolyVec::from_coeffs(restricted.degree(), r.clone())).collect())?;
                let from_closed = ideal_degree_piece(f, &line_ideal, Degree::Line(d));
                let trace = trace_scheme(f, &point, line, &[j])?;
                let rows = trace.condition_rows(f, d);
                let kernel = DenseMatrix::from_rows(*f, d as usize + 1, rows).kernel();
                let from_rule = SubspaceBasis::from_rows(f, Degree::Line(d), kernel.into_rows());
                piece_equal(&from_colon, &from_closed)? && piece_equal(&from_colon, &from_rule)?
            };
            if ok {
                agreeing.push(d);
            }
        }
        let holds = agreeing.len() == dmax as usize + 1;
        out.push(LayerIdentity { name: name.to_string(), agreeing_degrees: agreeing, holds });
    }
    Ok(out)
}

/// Samples the two implications of the collinear-points lemma on `X`
/// with `s` random points of `L` in degree `d`:
///
/// 1. if `dim L_d(X + P1..P(s-1)) > dim L_(d-1)(Res_L X)` then
///    `dim L_d(X + P1..Ps) = dim L_d(X) - s`;
/// 2. if `dim L_(d-1)(Res_L X) = 0` and `dim L_d(X) <= s` then
///    `L_d(X + P1..Ps)` is empty.
///
/// Returns false on the first counterexample.
pub fn verify_collinear_lemma(
    f: &PrimeField,
    x: &SchemeSpec,
    line: &LineRef,
    s: usize,
    d: u32,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    if s == 0 || d == 0 {
        return Err(Error::Precondition("the collinear-points check needs s >= 1 and d >= 1".into()));
    }
    let res = dim_linsys(f, &residue_scheme(f, x, line, &[])?, d - 1)?;
    let base = dim_linsys(f, x, d)?;
    for t in 0..trials {
        let mut rng = rng_for(seed, &[0xc0111, t as u64]);
        let mut with_points = x.clone();
        let mut before_last = None;
        for i in 0..s {
            if i == s - 1 {
                before_last = Some(dim_linsys(f, &with_points, d)?);
            }
            loop {
                let pt = line.random_point(f, &mut rng);
                if with_points.push(f, SchemeComponent::Simple { support: pt }).is_ok() {
                    break;
                }
            }
        }
        let after = dim_linsys(f, &with_points, d)?;
        let before_last = before_last.expect("s >= 1");
        if before_last > res && after as i64 != base as i64 - s as i64 {
            return Ok(false);
        }
        if res == 0 && base <= s && after != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(seed: u64) -> (PrimeField, ChaCha8Rng) {
        (PrimeField::default(), ChaCha8Rng::seed_from_u64(seed))
    }

    fn plane(f: &PrimeField, comps: Vec<SchemeComponent>) -> SchemeSpec {
        SchemeSpec::new(f, Ambient::Plane, comps).unwrap()
    }

    #[test]
    fn line_parametrization_round_trips() {
        let (f, mut rng) = setup(1);
        let l = LineRef::random(&f, &mut rng);
        let x = l.random_point(&f, &mut rng);
        let [a, b] = l.param(&f, &x).unwrap();
        let (p, q) = (l.p().coords(), l.q().coords());
        let back = PlanePoint::new(&f, [0, 1, 2].map(|k| f.add(f.mul(a, p[k]), f.mul(b, q[k])))).unwrap();
        assert_eq!(back, x);
        assert_eq!(l.param(&f, &PlanePoint::random(&f, &mut rng)), None);
        let again = LineRef::from_form(&f, l.form()).unwrap();
        assert!(again.contains(&f, &l.p()) && again.contains(&f, &l.q()));
    }

    #[test]
    fn three_two_point_along_its_direction_line() {
        let (f, mut rng) = setup(2);
        let l = LineRef::random(&f, &mut rng);
        let p = l.random_point(&f, &mut rng);
        let dir = l.random_point(&f, &mut rng);
        let x = plane(&f, vec![SchemeComponent::ThreeTwoP2 { support: p, direction: dir }]);
        let r1 = residue_scheme(&f, &x, &l, &[1]).unwrap();
        assert_eq!(r1.components(), &[SchemeComponent::Jet { m: 2, support: p, through: dir }]);
        assert_eq!(trace_scheme(&f, &x, &l, &[1]).unwrap().length(), 3);
        assert_eq!(trace_scheme(&f, &x, &l, &[2]).unwrap().length(), 2);
        assert!(matches!(residue_scheme(&f, &x, &l, &[3]), Err(Error::NotVerticallyGraded(_))));
    }

    #[test]
    fn three_two_point_transversal() {
        let (f, mut rng) = setup(3);
        let l = LineRef::random(&f, &mut rng);
        let p = l.random_point(&f, &mut rng);
        let dir = PlanePoint::random(&f, &mut rng);
        let x = plane(&f, vec![SchemeComponent::ThreeTwoP2 { support: p, direction: dir }]);
        let r3 = residue_scheme(&f, &x, &l, &[3]).unwrap();
        assert!(matches!(r3.components()[0], SchemeComponent::CrossJet { m1: 2, m2: 2, .. }));
        assert_eq!(trace_scheme(&f, &x, &l, &[3]).unwrap().length(), 1);
        assert_eq!(residue_scheme(&f, &x, &l, &[2]).unwrap().components(), &[SchemeComponent::Fat { m: 2, support: p }]);
    }

    #[test]
    fn simple_point_on_line_disappears() {
        let (f, mut rng) = setup(4);
        let l = LineRef::random(&f, &mut rng);
        let x = plane(&f, vec![SchemeComponent::Simple { support: l.random_point(&f, &mut rng) }]);
        assert!(residue_scheme(&f, &x, &l, &[1]).unwrap().is_empty());
        assert_eq!(trace_scheme(&f, &x, &l, &[1]).unwrap().length(), 1);
    }

    #[test]
    fn off_line_components_need_layer_one() {
        let (f, mut rng) = setup(5);
        let l = LineRef::random(&f, &mut rng);
        let x = plane(&f, vec![SchemeComponent::Fat { m: 2, support: PlanePoint::random(&f, &mut rng) }]);
        assert_eq!(residue_scheme(&f, &x, &l, &[1]).unwrap(), x);
        assert!(trace_scheme(&f, &x, &l, &[1]).unwrap().entries.is_empty());
        assert!(residue_scheme(&f, &x, &l, &[2]).is_err());
    }

    #[test]
    fn trace_ranks() {
        let (f, mut rng) = setup(6);
        let l = LineRef::random(&f, &mut rng);
        let mut t = TraceScheme::empty(l);
        t.entries.push((l.random_point(&f, &mut rng), 1));
        assert_eq!(trace_rank(&f, &t, 0), 1);
        t.entries.push((l.random_point(&f, &mut rng), 1));
        t.entries.push((l.random_point(&f, &mut rng), 1));
        assert_eq!(trace_rank(&f, &t, 1), 2);
        let mut t = TraceScheme::empty(l);
        for len in [3, 2, 2] {
            t.entries.push((l.random_point(&f, &mut rng), len));
        }
        assert_eq!(trace_rank(&f, &t, 6), 7);
    }

    #[test]
    fn fixed_component_examples() {
        let (f, mut rng) = setup(7);
        let l = LineRef::random(&f, &mut rng);
        let d = 4;
        let on_line: Vec<_> = (0..=d).map(|_| SchemeComponent::Simple { support: l.random_point(&f, &mut rng) }).collect();
        assert!(is_fixed_component(&f, &plane(&f, on_line), &l, d).unwrap());
        let off = plane(&f, vec![SchemeComponent::Simple { support: PlanePoint::random(&f, &mut rng) }]);
        assert!(!is_fixed_component(&f, &off, &l, d).unwrap());
    }

    #[test]
    fn horace_steps() {
        let (f, mut rng) = setup(8);
        let l = LineRef::random(&f, &mut rng);
        let empty = SchemeSpec::empty(Ambient::Plane);
        let y = plane(
            &f,
            vec![SchemeComponent::ThreeTwoP2 { support: l.random_point(&f, &mut rng), direction: l.random_point(&f, &mut rng) }],
        );
        let step = horace_step_check(&f, &empty, &y, &l, &[1], 2).unwrap();
        assert!(step.trace_ok && step.residue_ok);
        assert_eq!(step.conclusion, Some(HoraceConclusion::Independent));
        assert_eq!(condition_matrix(&f, &y, Degree::Plane(2)).unwrap().rank(), 5);

        let x = plane(&f, vec![SchemeComponent::Fat { m: 2, support: PlanePoint::random(&f, &mut rng) }]);
        let step = horace_step_check(&f, &x, &empty, &l, &[], 2).unwrap();
        assert_eq!(step.conclusion, Some(HoraceConclusion::Independent));

        let two = plane(
            &f,
            (0..2)
                .map(|_| SchemeComponent::ThreeTwoP2 { support: l.random_point(&f, &mut rng), direction: l.random_point(&f, &mut rng) })
                .collect(),
        );
        let step = horace_step_check(&f, &empty, &two, &l, &[1, 1], 4).unwrap();
        assert!(!step.trace_ok);
        assert_eq!(step.conclusion, None);
    }

    #[test]
    fn local_identities_hold() {
        let f = PrimeField::default();
        assert!(verify_degeneration(&f, 2, 4, 1).unwrap());
        assert!(verify_colon_identities(&f, 2, 4, 1).unwrap());
        let layers = verify_residue_example(&f, 5, 1).unwrap();
        assert_eq!(layers.len(), 10);
        for l in &layers {
            assert!(l.holds, "{} agrees only in degrees {:?}", l.name, l.agreeing_degrees);
        }
    }
}
