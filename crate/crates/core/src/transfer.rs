//! Moving bidegree `(a,b)` questions on P1xP1 to degree `a+b` questions on
//! the plane.
//!
//! The birational map `φ([s0:s1],[t0:t1]) = [s0 t0 : s1 t0 : s0 t1]` is the
//! identity `(u, v) -> [1:u:v]` on the affine charts `s0 = t0 = 1`. A form of
//! bidegree `(a,b)` is a polynomial of degree at most `a` in `u` and at most
//! `b` in `v`. Its homogenization to degree `a+b` therefore vanishes to order
//! `b` at `Q1 = [0:1:0]`, the point at infinity of the `u` axis, and to order
//! `a` at `Q2 = [0:0:1]`. For a scheme `X` in the chart
//!
//! `dim L_(a,b)(X) = dim L_(a+b)(φ(X) + b Q1 + a Q2)`.
//!
//! Since the fat points at `Q1, Q2` impose `C(a+1,2) + C(b+1,2)` independent
//! conditions in degree `a+b`, the Hilbert functions differ by exactly that
//! amount. Generic schemes cannot tell `b Q1 + a Q2` from `a Q1 + b Q2`
//! because swapping `z1` and `z2` exchanges them. Schemes with several points
//! on one ruling can, and only the first assignment matches `X`.

use crate::error::{Error, Result};
use crate::ffla::{Degree, PrimeField};
use crate::sampling::MonteCarlo;
use crate::schemes::{condition_matrix, tangent_direction, Ambient, BiPoint, PlanePoint, SchemeComponent, SchemeSpec, TangentPair};

/// Resampling bound for random instances that hit a degenerate locus.
pub const MAX_RESAMPLES: usize = 100;

pub fn phi_point(f: &PrimeField, x: &BiPoint) -> Result<PlanePoint> {
    let [s0, s1] = x.left();
    let [t0, t1] = x.right();
    if s0.is_zero() || t0.is_zero() {
        return Err(Error::PhiUndefined(x.to_string()));
    }
    PlanePoint::new(f, [f.mul(s0, t0), f.mul(s1, t0), f.mul(s0, t1)])
}

/// Image of a (3,2)-point of P1xP1: a (3,2)-point of the plane at `φ(P)`.
///
/// In the chart, the (3,2)-point is the triple point cut by the double of a
/// curve through `P` with tangent vector `(du, dv)`. The chart is the
/// identity, so the image direction line is the line through `[1:u:v]`
/// with direction `[0:du:dv]`.
pub fn push_component(f: &PrimeField, c: &SchemeComponent) -> Result<SchemeComponent> {
    let SchemeComponent::ThreeTwoP1P1 { support, cosupport } = c else {
        return Err(Error::AmbientMismatch(format!("{c} is not a component of P1xP1")));
    };
    let image = phi_point(f, support)?;
    let (du, dv) = tangent_direction(f, support, cosupport);
    let direction = PlanePoint::new(f, [crate::ffla::FieldElement::ZERO, du, dv])
        .map_err(|_| Error::DegenerateDirection(format!("{support} with cosupport {cosupport}")))?;
    Ok(SchemeComponent::ThreeTwoP2 { support: image, direction })
}

/// `φ(X) + b Q1 + a Q2`.
pub fn push_scheme(f: &PrimeField, x: &SchemeSpec, a: u32, b: u32) -> Result<SchemeSpec> {
    if x.ambient() != Ambient::Biprojective {
        return Err(Error::AmbientMismatch("only schemes of P1xP1 can be pushed to the plane".into()));
    }
    let mut out = SchemeSpec::empty(Ambient::Plane);
    for c in x.components() {
        out.push(f, push_component(f, c)?)?;
    }
    for (m, q) in [(b, PlanePoint::q1()), (a, PlanePoint::q2())] {
        match m {
            0 => {}
            1 => out.push(f, SchemeComponent::Simple { support: q })?,
            _ => out.push(f, SchemeComponent::Fat { m, support: q })?,
        }
    }
    Ok(out)
}

/// A scheme of P1xP1 together with its plane image.
#[derive(Clone, Debug)]
pub struct TransferInstance {
    pub source: SchemeSpec,
    pub a: u32,
    pub b: u32,
    pub target: SchemeSpec,
}

impl TransferInstance {
    pub fn new(f: &PrimeField, source: SchemeSpec, a: u32, b: u32) -> Result<Self> {
        let target = push_scheme(f, &source, a, b)?;
        Ok(TransferInstance { source, a, b, target })
    }

    /// Conditions imposed by `b Q1 + a Q2` in degree `a+b`.
    pub fn fixed_points_hf(&self) -> usize {
        let t = |m: u32| (m as usize * (m as usize + 1)) / 2;
        t(self.a) + t(self.b)
    }
}

/// Both sides of the transfer identity for one instance.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TransferOutcome {
    pub a: u32,
    pub b: u32,
    pub s: usize,
    pub source_hf: usize,
    pub target_hf: usize,
    /// `C(a+1,2) + C(b+1,2)`.
    pub fixed_points_hf: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub holds: bool,
}

pub fn check_instance(f: &PrimeField, inst: &TransferInstance) -> Result<TransferOutcome> {
    let src = condition_matrix(f, &inst.source, Degree::Biprojective(inst.a, inst.b))?;
    let dst = condition_matrix(f, &inst.target, Degree::Plane(inst.a + inst.b))?;
    let (source_hf, target_hf) = (src.rank(), dst.rank());
    let (source_dim, target_dim) = (src.dim_linsys(), dst.dim_linsys());
    let fixed_points_hf = inst.fixed_points_hf();
    Ok(TransferOutcome {
        a: inst.a,
        b: inst.b,
        s: inst.source.components().len(),
        source_hf,
        target_hf,
        fixed_points_hf,
        source_dim,
        target_dim,
        holds: source_dim == target_dim && source_hf + fixed_points_hf == target_hf,
    })
}

/// `s` random (3,2)-points of P1xP1 inside the domain of `φ`.
pub fn random_source<R: rand::Rng + ?Sized>(f: &PrimeField, s: usize, rng: &mut R) -> Result<SchemeSpec> {
    let mut x = SchemeSpec::empty(Ambient::Biprojective);
    let mut attempts = 0;
    while x.components().len() < s {
        let c = SchemeComponent::ThreeTwoP1P1 { support: BiPoint::random(f, rng), cosupport: TangentPair::random(f, rng) };
        if x.push(f, c).is_err() {
            attempts += 1;
            if attempts > MAX_RESAMPLES {
                return Err(Error::ResampleLimit(MAX_RESAMPLES));
            }
        }
    }
    Ok(x)
}

/// Result of [`verify_transfer`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TransferCheck {
    pub outcomes: Vec<TransferOutcome>,
    pub passed: bool,
}

/// Compares both sides of the transfer identity on `mc.trials` random
/// sources of `s` (3,2)-points.
pub fn verify_transfer(mc: &MonteCarlo, a: u32, b: u32, s: usize) -> Result<TransferCheck> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition(format!("the transfer needs a, b >= 1, got ({a},{b})")));
    }
    let f = mc.field;
    let mut outcomes = Vec::with_capacity(mc.trials);
    for t in 0..mc.trials {
        let mut rng = mc.rng(&[0x7a, a as u64, b as u64, s as u64, t as u64]);
        let inst = TransferInstance::new(&f, random_source(&f, s, &mut rng)?, a, b)?;
        outcomes.push(check_instance(&f, &inst)?);
    }
    let passed = outcomes.iter().all(|o| o.holds);
    Ok(TransferCheck { outcomes, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let f = PrimeField::default();
        let at = |l, r| phi_point(&f, &BiPoint::from_ints(&f, l, r).unwrap());
        assert_eq!(at([1, 0], [1, 0]).unwrap(), PlanePoint::from_ints(&f, [1, 0, 0]).unwrap());
        assert_eq!(at([1, 1], [1, 2]).unwrap(), PlanePoint::from_ints(&f, [1, 1, 2]).unwrap());
        assert!(matches!(at([0, 1], [1, 1]), Err(Error::PhiUndefined(_))));
    }

    #[test]
    fn standard_position_image() {
        let f = PrimeField::default();
        let c = SchemeComponent::ThreeTwoP1P1 {
            support: BiPoint::from_ints(&f, [1, 0], [1, 0]).unwrap(),
            cosupport: TangentPair::from_ints(&f, [0, 1], [0, -1]),
        };
        let SchemeComponent::ThreeTwoP2 { support, direction } = push_component(&f, &c).unwrap() else {
            panic!("expected a plane (3,2)-point");
        };
        assert_eq!(support, PlanePoint::from_ints(&f, [1, 0, 0]).unwrap());
        // the direction line z1 + z2 = 0 through [1:0:0] meets infinity at [0:1:-1]
        assert_eq!(direction, PlanePoint::from_ints(&f, [0, 1, -1]).unwrap());
    }

    #[test]
    fn empty_source_pushes_to_fixed_points() {
        let f = PrimeField::default();
        let y = push_scheme(&f, &SchemeSpec::empty(Ambient::Biprojective), 2, 3).unwrap();
        assert_eq!(
            y.components(),
            &[SchemeComponent::Fat { m: 3, support: PlanePoint::q1() }, SchemeComponent::Fat { m: 2, support: PlanePoint::q2() }]
        );
    }

    #[test]
    fn points_on_one_ruling_fix_the_multiplicities() {
        // three points with the same first factor fail to impose independent
        // conditions in bidegree (4,1) but not in (1,4)
        let f = PrimeField::default();
        let mut x = SchemeSpec::empty(Ambient::Biprojective);
        for (k, r) in [3i64, 5, 7].into_iter().enumerate() {
            let k = k as i64;
            let c = SchemeComponent::ThreeTwoP1P1 {
                support: BiPoint::from_ints(&f, [1, 2], [1, r]).unwrap(),
                cosupport: TangentPair::from_ints(&f, [1, 3 + k], [2, 11 * k + 1]),
            };
            x.push(&f, c).unwrap();
        }
        for (a, b, dim) in [(1, 4, 0), (4, 1, 4), (2, 5, 3), (5, 2, 9)] {
            let o = check_instance(&f, &TransferInstance::new(&f, x.clone(), a, b).unwrap()).unwrap();
            assert_eq!((o.source_dim, o.target_dim), (dim, dim), "bidegree ({a},{b})");
            assert!(o.holds);
        }
    }
}
