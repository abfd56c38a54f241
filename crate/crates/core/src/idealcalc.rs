//! Homogeneous ideals handled one graded piece at a time.
//!
//! An ideal is a list of generators; its degree-`d` piece is the span of all
//! monomial multiples of the generators that land in degree `d`. Sums,
//! intersections and colon ideals are then finite-dimensional linear algebra
//! on those pieces, which is all the bounded-degree checks need. This gives a
//! route to ideals of schemes that does not go through [`crate::schemes`]'s
//! condition rows, so the two can check each other.

use crate::error::{Error, Result};
use crate::ffla::{Degree, DenseMatrix, FieldElement, MonomialBasis, PolyVec, PrimeField};
use crate::schemes::{condition_matrix, cross, BiPoint, PlanePoint, SchemeComponent, SchemeSpec, TangentPair};

/// A homogeneous ideal given by generators of possibly different degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorIdeal {
    kind: Degree,
    generators: Vec<PolyVec>,
}

impl GeneratorIdeal {
    /// `kind` fixes the grading (any degree of the right kind will do).
    /// Zero generators are dropped.
    pub fn new(kind: Degree, generators: Vec<PolyVec>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| !g.degree().same_kind(kind)) {
            return Err(Error::BasisMismatch(kind.to_string(), g.degree().to_string()));
        }
        Ok(GeneratorIdeal { kind, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn generators(&self) -> &[PolyVec] {
        &self.generators
    }

    pub fn kind(&self) -> Degree {
        self.kind
    }

    /// The ideal generated by both generator lists.
    pub fn plus(&self, other: &GeneratorIdeal) -> Result<GeneratorIdeal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        GeneratorIdeal::new(self.kind, gens)
    }
}

/// A subspace of the forms of one degree, held as a matrix in reduced
/// row-echelon form. Equal subspaces have equal matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    degree: Degree,
    matrix: DenseMatrix,
}

impl SubspaceBasis {
    pub fn from_rows(f: &PrimeField, degree: Degree, rows: Vec<Vec<FieldElement>>) -> Self {
        let matrix = DenseMatrix::from_rows(*f, degree.dim(), rows).rref();
        SubspaceBasis { degree, matrix }
    }

    pub fn from_polys(f: &PrimeField, degree: Degree, polys: &[PolyVec]) -> Self {
        SubspaceBasis::from_rows(f, degree, polys.iter().map(|p| p.coeffs().to_vec()).collect())
    }

    pub fn zero(f: &PrimeField, degree: Degree) -> Self {
        SubspaceBasis { degree, matrix: DenseMatrix::new(*f, degree.dim()) }
    }

    pub fn full(f: &PrimeField, degree: Degree) -> Self {
        SubspaceBasis { degree, matrix: DenseMatrix::identity(*f, degree.dim()) }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    fn check_same(&self, other: &SubspaceBasis) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::BasisMismatch(self.degree.to_string(), other.degree.to_string()));
        }
        Ok(())
    }

    pub fn contains(&self, p: &PolyVec) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::BasisMismatch(self.degree.to_string(), p.degree().to_string()));
        }
        let mut m = self.matrix.clone();
        m.push_row(p.coeffs().to_vec());
        Ok(m.rank() == self.dim())
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains_subspace(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.matrix.stack(&other.matrix).rank() == self.dim())
    }
}

/// Multiplies `g` by every monomial of `mult_degree` and appends the products.
fn push_multiples(f: &PrimeField, g: &PolyVec, mult_degree: Degree, out: &mut Vec<Vec<FieldElement>>) {
    let target = g.degree().combined(mult_degree).expect("same grading");
    let gb = MonomialBasis::new(g.degree());
    let tb = MonomialBasis::new(target);
    let support: Vec<(usize, FieldElement)> =
        g.coeffs().iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut e = vec![0u32; target.nvars()];
    for mu in MonomialBasis::new(mult_degree).iter() {
        let mut row = vec![FieldElement::ZERO; tb.len()];
        for &(i, c) in &support {
            for (k, (a, b)) in gb.monomial(i).iter().zip(mu).enumerate() {
                e[k] = a + b;
            }
            let t = tb.index_of(&e);
            row[t] = f.add(row[t], c);
        }
        out.push(row);
    }
}

/// `I ∩ S_degree`.
pub fn ideal_degree_piece(f: &PrimeField, ideal: &GeneratorIdeal, degree: Degree) -> SubspaceBasis {
    let mut rows = Vec::new();
    for g in &ideal.generators {
        if let Some(rest) = degree.checked_sub(g.degree()) {
            push_multiples(f, g, rest, &mut rows);
        }
    }
    SubspaceBasis::from_rows(f, degree, rows)
}

pub fn piece_sum(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.check_same(b)?;
    Ok(SubspaceBasis { degree: a.degree, matrix: a.matrix.stack(&b.matrix).rref() })
}

/// `A ∩ B = (A^⊥ + B^⊥)^⊥`.
pub fn piece_intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.check_same(b)?;
    let perp = a.matrix.kernel().stack(&b.matrix.kernel());
    Ok(SubspaceBasis { degree: a.degree, matrix: perp.kernel().rref() })
}

pub fn piece_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    a.check_same(b)?;
    Ok(a.matrix == b.matrix)
}

/// `{h in S_degree : h g ∈ I}`.
pub fn piece_colon(f: &PrimeField, ideal: &GeneratorIdeal, g: &PolyVec, degree: Degree) -> Result<SubspaceBasis> {
    if !g.degree().same_kind(degree) || !ideal.kind.same_kind(degree) {
        return Err(Error::BasisMismatch(degree.to_string(), g.degree().to_string()));
    }
    let target = degree.combined(g.degree()).expect("same grading");
    let piece = ideal_degree_piece(f, ideal, target);
    let pivots = piece.matrix.pivots();
    // reduce each product monomial * g modulo the ideal piece
    let mut images = Vec::new();
    push_multiples(f, g, degree, &mut images);
    for v in images.iter_mut() {
        for (row, &p) in piece.rows().iter().zip(&pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
    }
    let reduced = DenseMatrix::from_rows(*f, target.dim(), images);
    Ok(SubspaceBasis { degree, matrix: reduced.left_kernel().rref() })
}

/// `A · g`, a subspace of degree `deg A + deg g`.
pub fn piece_times(f: &PrimeField, a: &SubspaceBasis, g: &PolyVec) -> SubspaceBasis {
    let degree = a.degree.combined(g.degree()).expect("same grading");
    let polys: Vec<PolyVec> =
        a.rows().iter().map(|r| PolyVec::from_coeffs(a.degree, r.clone()).mul(f, g)).collect();
    SubspaceBasis::from_polys(f, degree, &polys)
}

/// Pulls plane forms of degree `d` back along `[x:y] -> x p + y q`,
/// giving binary forms of degree `d`.
pub fn piece_restrict_to_line(f: &PrimeField, a: &SubspaceBasis, p: &PlanePoint, q: &PlanePoint) -> Result<SubspaceBasis> {
    let Degree::Plane(d) = a.degree else {
        return Err(Error::BasisMismatch(a.degree.to_string(), "plane".into()));
    };
    let restrictions = restriction_images(f, d, p, q);
    let rows = a
        .rows()
        .iter()
        .map(|r| {
            let mut out = PolyVec::zero(Degree::Line(d));
            for (c, img) in r.iter().zip(&restrictions) {
                if !c.is_zero() {
                    out = out.add(f, &img.scale(f, *c));
                }
            }
            out.into_coeffs()
        })
        .collect();
    Ok(SubspaceBasis::from_rows(f, Degree::Line(d), rows))
}

/// Restriction of every degree-`d` monomial to the line through `p` and `q`.
fn restriction_images(f: &PrimeField, d: u32, p: &PlanePoint, q: &PlanePoint) -> Vec<PolyVec> {
    let (pc, qc) = (p.coords(), q.coords());
    let powers: Vec<Vec<PolyVec>> = (0..3)
        .map(|k| {
            let lin = PolyVec::line_linear([pc[k], qc[k]]);
            std::iter::successors(Some(PolyVec::one(Degree::Line(0))), |x| Some(x.mul(f, &lin)))
                .take(d as usize + 1)
                .collect()
        })
        .collect();
    MonomialBasis::new(Degree::Plane(d))
        .iter()
        .map(|e| powers[0][e[0] as usize].mul(f, &powers[1][e[1] as usize]).mul(f, &powers[2][e[2] as usize]))
        .collect()
}

/// Piece of `I + ℓ^(j-1) (I : ℓ^j)`: what is left of `I` after removing its
/// `j`-th layer along the line `ℓ = 0`.
pub fn residue_piece(f: &PrimeField, ideal: &GeneratorIdeal, ell: &PolyVec, j: u32, d: u32) -> Result<SubspaceBasis> {
    let base = ideal_degree_piece(f, ideal, Degree::Plane(d));
    if d + 1 < j {
        return Ok(base);
    }
    let colon = piece_colon(f, ideal, &ell.pow(f, j), Degree::Plane(d + 1 - j))?;
    piece_sum(&base, &piece_times(f, &colon, &ell.pow(f, j - 1)))
}

/// Piece of `(I : ℓ^(j-1))` restricted to the line through `p` and `q` (where `ℓ` vanishes).
pub fn trace_piece(
    f: &PrimeField,
    ideal: &GeneratorIdeal,
    ell: &PolyVec,
    j: u32,
    d: u32,
    p: &PlanePoint,
    q: &PlanePoint,
) -> Result<SubspaceBasis> {
    let colon = piece_colon(f, ideal, &ell.pow(f, j - 1), Degree::Plane(d))?;
    piece_restrict_to_line(f, &colon, p, q)
}

/// Forms of the given degree through the scheme: the kernel of its conditions.
pub fn scheme_piece(f: &PrimeField, x: &SchemeSpec, degree: Degree) -> Result<SubspaceBasis> {
    let cm = condition_matrix(f, x, degree)?;
    Ok(SubspaceBasis { degree, matrix: cm.matrix.kernel().rref() })
}

/// The linear form of the line through two distinct points.
pub fn line_form(f: &PrimeField, p: &PlanePoint, q: &PlanePoint) -> PolyVec {
    PolyVec::plane_linear(cross(f, p.coords(), q.coords()))
}

/// Two independent linear forms vanishing at `p`.
pub fn point_ideal_forms(f: &PrimeField, p: &PlanePoint) -> [PolyVec; 2] {
    let c = p.coords();
    let k = c.iter().position(|x| !x.is_zero()).expect("points are nonzero");
    let mut forms = (0..3).filter(|&j| j != k).map(|j| {
        // z_j - c_j z_k, using c_k = 1
        let mut v = [FieldElement::ZERO; 3];
        v[j] = FieldElement::ONE;
        v[k] = f.neg(c[j]);
        PolyVec::plane_linear(v)
    });
    [forms.next().unwrap(), forms.next().unwrap()]
}

/// A linear form through `p` that is independent of `ell`.
fn other_form_through(f: &PrimeField, p: &PlanePoint, ell: &PolyVec) -> PolyVec {
    let [a, b] = point_ideal_forms(f, p);
    let independent = |g: &PolyVec| {
        let m = DenseMatrix::from_rows(*f, 3, vec![ell.coeffs().to_vec(), g.coeffs().to_vec()]);
        m.rank() == 2
    };
    if independent(&a) { a } else { b }
}

fn products(f: &PrimeField, a: &PolyVec, b: &PolyVec, n: u32) -> Vec<PolyVec> {
    (0..=n).map(|i| a.pow(f, i).mul(f, &b.pow(f, n - i))).collect()
}

/// `(ℓ1^⊥, ℓ2^⊥)`, the bihomogeneous ideal of the point, and the (1,1)-form
/// whose square cuts the (3,2)-point out of the triple point.
pub fn biprojective_point_forms(f: &PrimeField, support: &BiPoint, cosupport: &TangentPair) -> [PolyVec; 3] {
    let perp = |c: [FieldElement; 2]| [c[1], f.neg(c[0])];
    let l1 = PolyVec::x_linear(perp(support.left()));
    let l2 = PolyVec::y_linear(perp(support.right()));
    let m1 = PolyVec::x_linear(perp(cosupport.m1));
    let m2 = PolyVec::y_linear(perp(cosupport.m2));
    let h = l1.mul(f, &m2).add(f, &m1.mul(f, &l2).scale(f, f.elem(-1)));
    [l1, l2, h]
}

/// Generators of the ideal of one component, built from linear forms
/// through its support.
pub fn component_ideal(f: &PrimeField, c: &SchemeComponent) -> GeneratorIdeal {
    let plane = Degree::Plane(0);
    let gens = match c {
        SchemeComponent::Fat { m, support } => {
            let [a, b] = point_ideal_forms(f, support);
            products(f, &a, &b, *m)
        }
        SchemeComponent::Simple { support } => point_ideal_forms(f, support).to_vec(),
        SchemeComponent::ThreeTwoP2 { support, direction } => {
            let l1 = line_form(f, support, direction);
            let l2 = other_form_through(f, support, &l1);
            vec![l1.pow(f, 2), l1.mul(f, &l2.pow(f, 2)), l2.pow(f, 3)]
        }
        SchemeComponent::Jet { m, support, through } => {
            let l = line_form(f, support, through);
            let l2 = other_form_through(f, support, &l);
            vec![l.clone(), l2.pow(f, *m)]
        }
        SchemeComponent::CrossJet { m1, m2, support, dir1, dir2 } => {
            vec![line_form(f, support, dir1).pow(f, *m1), line_form(f, support, dir2).pow(f, *m2)]
        }
        SchemeComponent::ThreeTwoP1P1 { support, cosupport } => {
            let [l1, l2, h] = biprojective_point_forms(f, support, cosupport);
            let mut gens = products(f, &l1, &l2, 3);
            gens.push(h.pow(f, 2));
            return GeneratorIdeal::new(Degree::Biprojective(0, 0), gens).expect("bigraded generators");
        }
    };
    GeneratorIdeal::new(plane, gens).expect("plane generators")
}

/// Intersection of the component ideals in one degree: the ideal of the
/// scheme computed without condition rows.
pub fn scheme_ideal_piece(f: &PrimeField, x: &SchemeSpec, degree: Degree) -> Result<SubspaceBasis> {
    if !x.ambient().matches(degree) {
        return Err(Error::AmbientMismatch(format!("a {} scheme has no degree {degree} piece", x.ambient())));
    }
    let mut acc = SubspaceBasis::full(f, degree);
    for c in x.components() {
        acc = piece_intersect(&acc, &ideal_degree_piece(f, &component_ideal(f, c), degree))?;
    }
    Ok(acc)
}
