//! Linear systems of plane curves through unions of (3,2)-points and the
//! two fat points `a Q1 + b Q2`, and the sweeps that compare them with the
//! expected values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffla::{Degree, PrimeField};
use crate::sampling::MonteCarlo;
use crate::schemes::{condition_matrix, Ambient, PlanePoint, SchemeComponent, SchemeSpec};
use crate::secant::{expected_hf, secant_rank};

/// `(floor(N/5), ceil(N/5))` for `N = (a+1)(b+1)`.
pub fn critical_s(a: u32, b: u32) -> (u32, u32) {
    let n = (a + 1) * (b + 1);
    (n / 5, n.div_ceil(5))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinSysStatus {
    AsExpected,
    /// More forms than expected: the scheme fails to impose independent
    /// conditions.
    SuperabundantAnomaly,
    /// Fewer forms than the virtual count allows, which means the lengths
    /// are wrong.
    DeficientCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinSysReport {
    pub degree: String,
    pub scheme: String,
    pub basis_size: usize,
    pub length: usize,
    pub rank: usize,
    pub dim_linsys: usize,
    pub virtual_dim: i64,
    pub expected_dim: usize,
    pub status: LinSysStatus,
}

pub fn linsys_dim(f: &PrimeField, x: &SchemeSpec, degree: Degree) -> Result<LinSysReport> {
    let cm = condition_matrix(f, x, degree)?;
    let rank = cm.rank();
    let basis_size = cm.basis.len();
    let dim_linsys = basis_size - rank;
    let virtual_dim = basis_size as i64 - x.length() as i64;
    let expected_dim = virtual_dim.max(0) as usize;
    let status = match dim_linsys.cmp(&expected_dim) {
        std::cmp::Ordering::Equal => LinSysStatus::AsExpected,
        std::cmp::Ordering::Greater => LinSysStatus::SuperabundantAnomaly,
        std::cmp::Ordering::Less => LinSysStatus::DeficientCandidate,
    };
    Ok(LinSysReport {
        degree: degree.to_string(),
        scheme: x.to_string(),
        basis_size,
        length: x.length(),
        rank,
        dim_linsys,
        virtual_dim,
        expected_dim,
        status,
    })
}

/// `a Q1 + b Q2` plus `s` random (3,2)-points of the plane.
pub fn xabs_scheme<R: rand::Rng + ?Sized>(f: &PrimeField, a: u32, b: u32, s: u32, rng: &mut R) -> Result<SchemeSpec> {
    let mut x = SchemeSpec::empty(Ambient::Plane);
    for (m, q) in [(a, PlanePoint::q1()), (b, PlanePoint::q2())] {
        match m {
            0 => {}
            1 => x.push(f, SchemeComponent::Simple { support: q })?,
            _ => x.push(f, SchemeComponent::Fat { m, support: q })?,
        }
    }
    let mut failures = 0;
    let mut added = 0;
    while added < s {
        let c = SchemeComponent::ThreeTwoP2 { support: PlanePoint::random(f, rng), direction: PlanePoint::random(f, rng) };
        if x.push(f, c).is_ok() {
            added += 1;
        } else {
            failures += 1;
            if failures > crate::transfer::MAX_RESAMPLES {
                return Err(Error::ResampleLimit(crate::transfer::MAX_RESAMPLES));
            }
        }
    }
    Ok(x)
}

/// One expected-versus-computed comparison of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    /// `dim` for a plane linear system, `hf` for a Hilbert function on P1xP1.
    pub quantity: &'static str,
    pub a: u32,
    pub b: u32,
    pub s: u32,
    pub degree: String,
    pub expected: usize,
    pub computed: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaSweep {
    pub name: String,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaSweep {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Smallest `dim L_(a+b)(X_(a,b;s))` over the trials. No sample can go below
/// `max(0, (a+1)(b+1) - 5s)`, so sampling stops once that value is reached.
pub fn best_plane_dim(mc: &MonteCarlo, a: u32, b: u32, s: u32) -> Result<usize> {
    let expected = expected_plane_dim(a, b, s);
    let mut best = usize::MAX;
    for t in 0..mc.trials {
        let mut rng = mc.rng(&[0x9a1e, a as u64, b as u64, s as u64, t as u64]);
        let x = xabs_scheme(&mc.field, a, b, s, &mut rng)?;
        best = best.min(condition_matrix(&mc.field, &x, Degree::Plane(a + b))?.dim_linsys());
        if best <= expected {
            break;
        }
    }
    Ok(best)
}

/// `max(0, (a+1)(b+1) - 5s)`.
pub fn expected_plane_dim(a: u32, b: u32, s: u32) -> usize {
    ((a as usize + 1) * (b as usize + 1)).saturating_sub(5 * s as usize)
}

fn plane_check(mc: &MonteCarlo, a: u32, b: u32, s: u32, expected: usize) -> Result<LemmaCheck> {
    let computed = best_plane_dim(mc, a, b, s)?;
    Ok(LemmaCheck {
        quantity: "dim",
        a,
        b,
        s,
        degree: Degree::Plane(a + b).to_string(),
        expected,
        computed,
        passed: computed == expected,
    })
}

/// `b = 1`: `dim L_(a+1)(X_(a,1;s)) = max(0, 2(a+1) - 5s)` for
/// `2 <= a <= amax` and `1 <= s <= s2`.
pub fn check_b1(mc: &MonteCarlo, amax: u32) -> Result<LemmaSweep> {
    let mut checks = Vec::new();
    for a in 2..=amax {
        for s in 1..=critical_s(a, 1).1 {
            let expected = (2 * (a as usize + 1)).saturating_sub(5 * s as usize);
            checks.push(plane_check(mc, a, 1, s, expected)?);
        }
    }
    Ok(LemmaSweep { name: "b1".into(), checks })
}

/// `b = 2`: `dim L_4(X_(2,2;s)) = max(0, 9 - 5s)` and
/// `dim L_(a+2)(X_(a,2;s)) = max(0, 3(a+1) - 5s)` for `3 <= a <= amax`.
pub fn check_b2(mc: &MonteCarlo, amax: u32) -> Result<LemmaSweep> {
    let mut checks = Vec::new();
    for a in 2..=amax {
        for s in 1..=critical_s(a, 2).1 {
            let expected = (3 * (a as usize + 1)).saturating_sub(5 * s as usize);
            checks.push(plane_check(mc, a, 2, s, expected)?);
        }
    }
    Ok(LemmaSweep { name: "b2".into(), checks })
}

/// The cases `(3,3)` with `s = 3, 4`, `(5,3)` with `s = 4, 5` and `(4,4)`
/// with `s = 5`.
pub fn check_small_cases(mc: &MonteCarlo) -> Result<LemmaSweep> {
    let cases = [(3, 3, 3), (3, 3, 4), (5, 3, 4), (5, 3, 5), (4, 4, 5)];
    let checks = cases
        .iter()
        .map(|&(a, b, s)| plane_check(mc, a, b, s, expected_plane_dim(a, b, s)))
        .collect::<Result<_>>()?;
    Ok(LemmaSweep { name: "small".into(), checks })
}

/// Both the plane dimension and the Hilbert function on P1xP1 for every
/// cell `1 <= b <= a <= amax`, `b <= bmax`, `ab > 1`, `1 <= s <= s2`.
pub fn check_main_plane(mc: &MonteCarlo, amax: u32, bmax: u32) -> Result<LemmaSweep> {
    let mut checks = Vec::new();
    for (a, b, s) in crate::secant::table_cells(amax, bmax) {
        checks.push(plane_check(mc, a, b, s, expected_plane_dim(a, b, s))?);
        let r = secant_rank(mc, a, b, s);
        checks.push(LemmaCheck {
            quantity: "hf",
            a,
            b,
            s,
            degree: Degree::Biprojective(a, b).to_string(),
            expected: expected_hf(a, b, s),
            computed: r.computed_hf,
            passed: r.defect == 0,
        });
    }
    Ok(LemmaSweep { name: "main".into(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn critical_values() {
        assert_eq!(critical_s(3, 3), (3, 4));
        assert_eq!(critical_s(4, 4), (5, 5));
        assert_eq!(critical_s(5, 3), (4, 5));
        assert_eq!(critical_s(2, 1), (1, 2));
    }

    #[test]
    fn five_double_points_on_quartics() {
        let f = PrimeField::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pts = (0..5).map(|_| SchemeComponent::Fat { m: 2, support: PlanePoint::random(&f, &mut rng) }).collect();
        let x = SchemeSpec::new(&f, Ambient::Plane, pts).unwrap();
        let r = linsys_dim(&f, &x, Degree::Plane(4)).unwrap();
        assert_eq!((r.dim_linsys, r.expected_dim, r.status), (1, 0, LinSysStatus::SuperabundantAnomaly));
    }

    #[test]
    fn xabs_has_expected_dimension() {
        let mc = MonteCarlo::default();
        assert_eq!(best_plane_dim(&mc, 3, 3, 3).unwrap(), 1);
        assert_eq!(best_plane_dim(&mc, 3, 3, 4).unwrap(), 0);
    }
}
