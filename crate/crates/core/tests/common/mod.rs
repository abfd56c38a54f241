#![allow(dead_code)]

use rand::Rng;
use tansec_core::schemes::{Ambient, PlanePoint, SchemeComponent, SchemeSpec};
use tansec_core::PrimeField;

/// A random plane component of any supported type with small orders.
pub fn random_plane_component<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> SchemeComponent {
    let support = PlanePoint::random(f, rng);
    match rng.gen_range(0..5) {
        0 => SchemeComponent::Fat { m: rng.gen_range(1..=3), support },
        1 => SchemeComponent::Simple { support },
        2 => SchemeComponent::ThreeTwoP2 { support, direction: PlanePoint::random(f, rng) },
        3 => SchemeComponent::Jet { m: rng.gen_range(1..=4), support, through: PlanePoint::random(f, rng) },
        _ => SchemeComponent::CrossJet {
            m1: rng.gen_range(1..=2),
            m2: rng.gen_range(1..=3),
            support,
            dir1: PlanePoint::random(f, rng),
            dir2: PlanePoint::random(f, rng),
        },
    }
}

/// Between one and `max_components` random plane components with distinct
/// supports.
pub fn random_plane_scheme<R: Rng + ?Sized>(f: &PrimeField, max_components: usize, rng: &mut R) -> SchemeSpec {
    let n = rng.gen_range(1..=max_components);
    let mut x = SchemeSpec::empty(Ambient::Plane);
    while x.components().len() < n {
        let _ = x.push(f, random_plane_component(f, rng));
    }
    x
}
