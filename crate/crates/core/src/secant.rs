//! Dimensions of secant varieties of the tangential variety of the
//! Segre-Veronese surface `SV_(a,b)`, via Terracini's lemma.
//!
//! The affine tangent space to the tangential variety at a general point is
//! spanned by five forms of bidegree `(a,b)`
//! ([`crate::schemes::tangent_space_polys`]). The span of `s` such spaces
//! has dimension `dim σ_s + 1`, which is also the Hilbert function in
//! bidegree `(a,b)` of `s` general (3,2)-points.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffla::{Degree, DenseMatrix, PrimeField};
use crate::idealcalc::{biprojective_point_forms, ideal_degree_piece, GeneratorIdeal, SubspaceBasis};
use crate::hilbert::critical_s;
use crate::sampling::MonteCarlo;
use crate::schemes::{rows_32_p1p1, BiPoint, TangentPair};

/// One cell of the defect table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub a: u32,
    pub b: u32,
    pub s: u32,
    pub expected_hf: usize,
    pub computed_hf: usize,
    pub defect: usize,
    pub trials: usize,
    pub seed: u64,
}

impl DefectReport {
    pub fn secant_dim(&self) -> i64 {
        self.computed_hf as i64 - 1
    }
}

/// `min{(a+1)(b+1), 5s}`.
pub fn expected_hf(a: u32, b: u32, s: u32) -> usize {
    ((a as usize + 1) * (b as usize + 1)).min(5 * s as usize)
}

/// `min{(a+1)(b+1), 5s} - 1`.
pub fn expected_dim_secant(a: u32, b: u32, s: u32) -> i64 {
    expected_hf(a, b, s) as i64 - 1
}

/// The Terracini matrix: five rows per tangent space.
pub fn terracini_matrix(f: &PrimeField, points: &[(BiPoint, TangentPair)], a: u32, b: u32) -> DenseMatrix {
    let mut m = DenseMatrix::new(*f, Degree::Biprojective(a, b).dim());
    for (pt, co) in points {
        m.extend_rows(rows_32_p1p1(f, pt, co, a, b));
    }
    m
}

fn random_points(f: &PrimeField, s: u32, rng: &mut impl rand::Rng) -> Vec<(BiPoint, TangentPair)> {
    (0..s).map(|_| (BiPoint::random(f, rng), TangentPair::random(f, rng))).collect()
}

/// Largest Terracini rank over `mc.trials` random configurations of `s`
/// points. Stops early once the expected value is reached, which no sample
/// can exceed.
pub fn secant_rank(mc: &MonteCarlo, a: u32, b: u32, s: u32) -> DefectReport {
    let expected = expected_hf(a, b, s);
    let mut best = 0;
    for t in 0..mc.trials {
        let mut rng = mc.rng(&[0x5ec, a as u64, b as u64, s as u64, t as u64]);
        let points = random_points(&mc.field, s, &mut rng);
        best = best.max(terracini_matrix(&mc.field, &points, a, b).rank());
        if best >= expected {
            break;
        }
    }
    DefectReport {
        a,
        b,
        s,
        expected_hf: expected,
        computed_hf: best,
        defect: expected.saturating_sub(best),
        trials: mc.trials,
        seed: mc.seed,
    }
}

/// Cells `(a, b, s)` with `1 <= b <= a <= amax`, `b <= bmax`, `ab > 1` and
/// `1 <= s <= s2(a,b)`, sorted.
pub fn table_cells(amax: u32, bmax: u32) -> Vec<(u32, u32, u32)> {
    let mut cells = Vec::new();
    for a in 1..=amax {
        for b in 1..=a.min(bmax) {
            if a * b <= 1 {
                continue;
            }
            let (_, s2) = critical_s(a, b);
            cells.extend((1..=s2).map(|s| (a, b, s)));
        }
    }
    cells
}

/// All cells of [`table_cells`], computed in parallel, in cell order.
pub fn defect_table(mc: &MonteCarlo, amax: u32, bmax: u32) -> Vec<DefectReport> {
    table_cells(amax, bmax).into_par_iter().map(|(a, b, s)| secant_rank(mc, a, b, s)).collect()
}

/// Outcome of [`verify_tangent_apolarity`] for one bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApolarityCheck {
    pub a: u32,
    pub b: u32,
    pub trials: usize,
    /// `(a+1)(b+1) - 5`.
    pub expected_dim: usize,
    /// Dimension of `[℘^3 + (h)^2]_(a,b)` in each trial.
    pub ideal_dims: Vec<usize>,
    pub passed: bool,
}

/// For random (3,2)-points `(l1, l2; m1, m2)` checks that the forms apolar
/// to the tangent space `W` are exactly the piece of `℘^3 + (h)^2`, where
/// `℘` is the ideal of the point and `h` the (1,1)-form defining the tangent
/// direction, that this piece has dimension `(a+1)(b+1) - 5`, and that
/// `℘^3 ⊆ W^⊥ ⊆ ℘^2` in bidegree `(a,b)`.
pub fn verify_tangent_apolarity(mc: &MonteCarlo, a: u32, b: u32) -> Result<ApolarityCheck> {
    if a * b <= 1 {
        return Err(Error::Precondition(format!("the apolarity check needs ab > 1, got ({a},{b})")));
    }
    let f = mc.field;
    let degree = Degree::Biprojective(a, b);
    let expected_dim = degree.dim() - 5;
    let mut ideal_dims = Vec::with_capacity(mc.trials);
    let mut passed = true;
    for t in 0..mc.trials {
        let mut rng = mc.rng(&[0xa90, a as u64, b as u64, t as u64]);
        let (pt, co) = (BiPoint::random(&f, &mut rng), TangentPair::random(&f, &mut rng));
        let rows = DenseMatrix::from_rows(f, degree.dim(), rows_32_p1p1(&f, &pt, &co, a, b));
        let w_perp = SubspaceBasis::from_rows(&f, degree, rows.kernel().into_rows());

        let [l1, l2, h] = biprojective_point_forms(&f, &pt, &co);
        let power = |n: u32| -> Vec<_> { (0..=n).map(|i| l1.pow(&f, i).mul(&f, &l2.pow(&f, n - i))).collect() };
        let kind = Degree::Biprojective(0, 0);
        let p2 = ideal_degree_piece(&f, &GeneratorIdeal::new(kind, power(2))?, degree);
        let p3_gens = power(3);
        let p3 = ideal_degree_piece(&f, &GeneratorIdeal::new(kind, p3_gens.clone())?, degree);
        let mut gens = p3_gens;
        gens.push(h.pow(&f, 2));
        let tangent_ideal = ideal_degree_piece(&f, &GeneratorIdeal::new(kind, gens)?, degree);
        ideal_dims.push(tangent_ideal.dim());

        let pairs_to_zero = tangent_ideal.rows().iter().all(|v| rows.apply(v).iter().all(|x| x.is_zero()));
        let ok = tangent_ideal.dim() == expected_dim
            && pairs_to_zero
            && tangent_ideal == w_perp
            && w_perp.contains_subspace(&p3)?
            && p2.contains_subspace(&w_perp)?;
        passed &= ok;
    }
    Ok(ApolarityCheck { a, b, trials: mc.trials, expected_dim, ideal_dims, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_values() {
        assert_eq!(expected_dim_secant(2, 2, 1), 4);
        assert_eq!(expected_dim_secant(3, 3, 4), 15);
        assert_eq!(expected_dim_secant(1, 1, 1), 3);
    }

    #[test]
    fn small_ranks() {
        let mc = MonteCarlo::default();
        let r = secant_rank(&mc, 1, 1, 1);
        assert_eq!((r.computed_hf, r.secant_dim()), (4, 3));
        assert_eq!(secant_rank(&mc, 2, 2, 2).computed_hf, 9);
        assert_eq!(secant_rank(&mc, 4, 4, 5).computed_hf, 25);
    }

    #[test]
    fn table_shape() {
        let cells = table_cells(2, 2);
        // (2,1): s2 = 2, (2,2): s2 = 2
        assert_eq!(cells, vec![(2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2)]);
    }

    #[test]
    fn apolarity_small() {
        let mc = MonteCarlo::default();
        let c = verify_tangent_apolarity(&mc, 2, 2).unwrap();
        assert!(c.passed);
        assert_eq!(c.expected_dim, 4);
        assert!(verify_tangent_apolarity(&mc, 1, 2).unwrap().passed);
        assert!(matches!(verify_tangent_apolarity(&mc, 1, 1), Err(Error::Precondition(_))));
    }
}
