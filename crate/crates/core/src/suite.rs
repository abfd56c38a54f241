//! Named verification suites with one pass/fail line per check.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffla::PrimeField;
use crate::hilbert::{check_b1, check_b2, check_main_plane, check_small_cases, critical_s, LemmaSweep};
use crate::horace::{horace_step_check, is_fixed_component, residue_scheme, verify_collinear_lemma, HoraceConclusion, LineRef};
use crate::sampling::MonteCarlo;
use crate::schemes::{condition_matrix, Ambient, PlanePoint, SchemeComponent, SchemeSpec};
use crate::ffla::Degree;

pub const SUITES: [&str; 11] = [
    "b1",
    "b2",
    "small",
    "main",
    "transfer",
    "apolarity",
    "residue-example",
    "colon",
    "degeneration",
    "collinear",
    "horace-step",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub mc: MonteCarlo,
    /// Largest degree for the ideal-piece suites.
    pub degree_bound: u32,
    pub amax: Option<u32>,
    pub bmax: Option<u32>,
    /// Number of random instances for the sampled suites.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { mc: MonteCarlo::default(), degree_bound: 6, amax: None, bmax: None, samples: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckLine>,
}

fn line(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine { name: name.into(), passed, detail: detail.into() }
}

fn sweep_lines(sweep: LemmaSweep) -> Vec<CheckLine> {
    sweep
        .checks
        .into_iter()
        .map(|c| {
            line(
                format!("{} a={} b={} s={}", c.quantity, c.a, c.b, c.s),
                c.passed,
                format!("degree {}: expected {}, computed {}", c.degree, c.expected, c.computed),
            )
        })
        .collect()
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mc = &cfg.mc;
    let f = mc.field;
    let dmax = cfg.degree_bound;
    let checks = match name {
        "b1" => sweep_lines(check_b1(mc, cfg.amax.unwrap_or(30))?),
        "b2" => sweep_lines(check_b2(mc, cfg.amax.unwrap_or(20))?),
        "small" => sweep_lines(check_small_cases(mc)?),
        "main" => sweep_lines(check_main_plane(mc, cfg.amax.unwrap_or(10), cfg.bmax.unwrap_or(10))?),
        "transfer" => transfer_lines(mc, cfg.amax.unwrap_or(8), cfg.bmax.unwrap_or(8), cfg.samples.unwrap_or(50))?,
        "apolarity" => apolarity_lines(mc, cfg.amax.unwrap_or(12))?,
        "residue-example" => crate::horace::verify_residue_example(&f, dmax, mc.seed)?
            .into_iter()
            .map(|l| line(l.name.clone(), l.holds, format!("agrees in degrees {:?}", l.agreeing_degrees)))
            .collect(),
        "colon" => {
            let n = cfg.samples.unwrap_or(20);
            let ok = crate::horace::verify_colon_identities(&f, n, dmax, mc.seed)?;
            vec![line("colon identities", ok, format!("{n} samples, degrees <= {dmax}"))]
        }
        "degeneration" => {
            let n = cfg.samples.unwrap_or(10);
            let ok = crate::horace::verify_degeneration(&f, n, dmax, mc.seed)?;
            vec![line("degeneration", ok, format!("{n} samples, degrees <= {dmax}"))]
        }
        "collinear" => collinear_lines(mc)?,
        "horace-step" => horace_lines(mc)?,
        other => return Err(Error::Precondition(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        passed: checks.iter().all(|c| c.passed),
        prime: f.modulus(),
        seed: mc.seed,
        trials: mc.trials,
        checks,
    })
}

fn transfer_lines(mc: &MonteCarlo, amax: u32, bmax: u32, samples: usize) -> Result<Vec<CheckLine>> {
    let mut rng = mc.rng(&[0x7a5]);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let a = rng.gen_range(1..=amax);
        let b = rng.gen_range(1..=bmax);
        let s = rng.gen_range(0..=critical_s(a, b).1);
        let one = MonteCarlo::new(mc.field, crate::sampling::rng_for(mc.seed, &[0x7a5, i as u64]).gen(), 1);
        let check = crate::transfer::verify_transfer(&one, a, b, s as usize)?;
        let o = &check.outcomes[0];
        out.push(line(
            format!("instance {i}: a={a} b={b} s={s}"),
            check.passed,
            format!("HF(a,b) = {}, HF(a+b) = {} = {} + {}", o.source_hf, o.target_hf, o.source_hf, o.fixed_points_hf),
        ));
    }
    Ok(out)
}

fn apolarity_lines(mc: &MonteCarlo, total: u32) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for n in 2..=total {
        for a in 1..n {
            let b = n - a;
            if a * b <= 1 {
                continue;
            }
            let c = crate::secant::verify_tangent_apolarity(mc, a, b)?;
            out.push(line(
                format!("apolarity a={a} b={b}"),
                c.passed,
                format!("expected dim {}, ideal dims {:?}", c.expected_dim, c.ideal_dims),
            ));
        }
    }
    Ok(out)
}

fn plane(f: &PrimeField, comps: Vec<SchemeComponent>) -> Result<SchemeSpec> {
    SchemeSpec::new(f, Ambient::Plane, comps)
}

fn random_off_line<R: Rng + ?Sized>(f: &PrimeField, l: &LineRef, rng: &mut R) -> PlanePoint {
    loop {
        let p = PlanePoint::random(f, rng);
        if !l.contains(f, &p) {
            return p;
        }
    }
}

/// Instances where each implication of the collinear-points lemma fires.
fn collinear_lines(mc: &MonteCarlo) -> Result<Vec<CheckLine>> {
    let f = mc.field;
    let mut rng = mc.rng(&[0xc011]);
    let l = LineRef::random(&f, &mut rng);
    let double = |rng: &mut rand_chacha::ChaCha8Rng| SchemeComponent::Fat { m: 2, support: random_off_line(&f, &l, rng) };
    let one = plane(&f, vec![double(&mut rng)])?;
    let three = plane(&f, (0..3).map(|_| double(&mut rng)).collect())?;
    let cases = [
        ("double point, d=2, s=2", &one, 2, 2),
        ("three double points, d=3, s=2", &three, 2, 3),
        ("three double points, d=4, s=3", &three, 3, 4),
        ("empty scheme, d=2, s=3", &SchemeSpec::empty(Ambient::Plane), 3, 2),
    ];
    let mut out = Vec::new();
    for (i, (name, x, s, d)) in cases.into_iter().enumerate() {
        let ok = verify_collinear_lemma(&f, x, &l, s, d, mc.trials, mc.seed.wrapping_add(i as u64))?;
        out.push(line(name, ok, format!("{} trials", mc.trials)));
    }
    Ok(out)
}

/// Horace steps on small configurations, each cross-checked against a
/// direct rank computation of the generic scheme.
/// Name, the rest of the scheme, the part specialized onto `L`, that part in
/// general position, degree and the expected conclusion.
type StepCase = (&'static str, SchemeSpec, SchemeSpec, SchemeSpec, u32, Option<HoraceConclusion>);

fn horace_lines(mc: &MonteCarlo) -> Result<Vec<CheckLine>> {
    let f = mc.field;
    let mut rng = mc.rng(&[0x4040]);
    let l = LineRef::random(&f, &mut rng);
    let along = |rng: &mut rand_chacha::ChaCha8Rng| {
        let p = l.random_point(&f, rng);
        SchemeComponent::ThreeTwoP2 { support: p, direction: l.other_point(&p) }
    };
    let generic32 = |rng: &mut rand_chacha::ChaCha8Rng| SchemeComponent::ThreeTwoP2 {
        support: PlanePoint::random(&f, rng),
        direction: PlanePoint::random(&f, rng),
    };
    let mut out = Vec::new();

    let cases: Vec<StepCase> = vec![
        (
            "one (3,2)-point along L, d=2",
            SchemeSpec::empty(Ambient::Plane),
            plane(&f, vec![along(&mut rng)])?,
            plane(&f, vec![generic32(&mut rng)])?,
            2,
            Some(HoraceConclusion::Independent),
        ),
        (
            "double point off L plus a (3,2)-point along L, d=3",
            plane(&f, vec![SchemeComponent::Fat { m: 2, support: random_off_line(&f, &l, &mut rng) }])?,
            plane(&f, vec![along(&mut rng)])?,
            plane(&f, vec![generic32(&mut rng)])?,
            3,
            Some(HoraceConclusion::Independent),
        ),
        (
            "two (3,2)-points along L, d=3",
            SchemeSpec::empty(Ambient::Plane),
            plane(&f, vec![along(&mut rng), along(&mut rng)])?,
            plane(&f, vec![generic32(&mut rng), generic32(&mut rng)])?,
            3,
            None,
        ),
    ];
    for (name, x, ytilde, ygen, d, want) in cases {
        let step = horace_step_check(&f, &x, &ytilde, &l, &[], d)?;
        let total = x.union(&f, &ygen)?;
        let direct = condition_matrix(&f, &total, Degree::Plane(d))?.rank();
        let consistent = match step.conclusion {
            Some(HoraceConclusion::Independent) => direct == total.length(),
            Some(HoraceConclusion::Empty) => direct == Degree::Plane(d).dim(),
            None => true,
        };
        out.push(line(
            name,
            step.conclusion == want && consistent,
            format!(
                "trace {}/{}, residue {}/{}, conclusion {:?}, direct rank {direct} of length {}",
                step.trace_rank,
                step.trace_length,
                step.residue_rank,
                step.residue_length,
                step.conclusion,
                total.length()
            ),
        ));
    }

    // With every direction through Q1, the line through Q1 and a support
    // point is a fixed component of the system for b = 2.
    let (a, s) = (5, critical_s(5, 2).1);
    let mut x = SchemeSpec::empty(Ambient::Plane);
    x.push(&f, SchemeComponent::Fat { m: a, support: PlanePoint::q1() })?;
    x.push(&f, SchemeComponent::Fat { m: 2, support: PlanePoint::q2() })?;
    let mut supports = Vec::new();
    while supports.len() < s as usize {
        let p = PlanePoint::random(&f, &mut rng);
        if x.push(&f, SchemeComponent::ThreeTwoP2 { support: p, direction: PlanePoint::q1() }).is_ok() {
            supports.push(p);
        }
    }
    let fixed = LineRef::through(&f, PlanePoint::q1(), supports[0])?;
    let d = a + 2;
    let is_fixed = is_fixed_component(&f, &x, &fixed, d)?;
    let res = residue_scheme(&f, &x, &fixed, &[])?;
    out.push(line(
        format!("line Q1P1 is fixed for a={a}, b=2, s={s}"),
        is_fixed,
        format!("residue {res} in degree {}", d - 1),
    ));
    Ok(out)
}
