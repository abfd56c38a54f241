//! Prime field arithmetic, monomial bases of graded pieces, and dense
//! elimination over the field.
//!
//! Everything that ends up as a Hilbert-function value or a Terracini rank is
//! the rank of a [`DenseMatrix`] computed here. Field elements are plain
//! residues; the modulus travels in a [`PrimeField`] handle so that the same
//! code runs with any word-sized prime.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A residue class modulo the prime of the [`PrimeField`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field Z/pZ. Products of two residues must fit in a `u64`, so `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into the field.
    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        FieldElement(v % self.p)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let s = x.0 + y.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(if x.0 >= y.0 { x.0 - y.0 } else { x.0 + self.p - y.0 })
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(if x.0 == 0 { 0 } else { self.p - x.0 })
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(x.0 * y.0 % self.p)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.p - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Binomial coefficient C(n, k) reduced mod p.
    pub fn binomial(&self, n: u32, k: u32) -> FieldElement {
        if k > n {
            return FieldElement::ZERO;
        }
        let k = k.min(n - k);
        let mut num = FieldElement::ONE;
        let mut den = FieldElement::ONE;
        for i in 0..k {
            num = self.mul(num, self.from_u64((n - i) as u64));
            den = self.mul(den, self.from_u64((i + 1) as u64));
        }
        // den is a product of integers below p whenever k < p
        self.mul(num, self.inv(den).expect("k < p"))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.p))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.p))
    }
}

/// The graded piece a polynomial or a subspace lives in.
///
/// `Line(d)` is the space of binary forms of degree `d`, used for traces on a
/// line of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree {
    Plane(u32),
    Biprojective(u32, u32),
    Line(u32),
}

impl Degree {
    pub fn nvars(self) -> usize {
        match self {
            Degree::Plane(_) => 3,
            Degree::Biprojective(..) => 4,
            Degree::Line(_) => 2,
        }
    }

    /// Dimension of the graded piece.
    pub fn dim(self) -> usize {
        match self {
            Degree::Plane(d) => ((d as usize + 2) * (d as usize + 1)) / 2,
            Degree::Biprojective(a, b) => (a as usize + 1) * (b as usize + 1),
            Degree::Line(d) => d as usize + 1,
        }
    }

    pub fn combined(self, other: Degree) -> Option<Degree> {
        match (self, other) {
            (Degree::Plane(d), Degree::Plane(e)) => Some(Degree::Plane(d + e)),
            (Degree::Line(d), Degree::Line(e)) => Some(Degree::Line(d + e)),
            (Degree::Biprojective(a, b), Degree::Biprojective(c, e)) => {
                Some(Degree::Biprojective(a + c, b + e))
            }
            _ => None,
        }
    }

    /// `self - other`, or `None` when the kinds differ or the result would be negative.
    pub fn checked_sub(self, other: Degree) -> Option<Degree> {
        match (self, other) {
            (Degree::Plane(d), Degree::Plane(e)) => d.checked_sub(e).map(Degree::Plane),
            (Degree::Line(d), Degree::Line(e)) => d.checked_sub(e).map(Degree::Line),
            (Degree::Biprojective(a, b), Degree::Biprojective(c, e)) => {
                Some(Degree::Biprojective(a.checked_sub(c)?, b.checked_sub(e)?))
            }
            _ => None,
        }
    }

    pub fn same_kind(self, other: Degree) -> bool {
        std::mem::discriminant(&self) == std::mem::discriminant(&other)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Plane(d) => write!(f, "{d}"),
            Degree::Biprojective(a, b) => write!(f, "({a},{b})"),
            Degree::Line(d) => write!(f, "line:{d}"),
        }
    }
}

/// The ordered monomial basis of one graded piece.
///
/// Plane monomials `z0^e0 z1^e1 z2^e2` are ordered by `e0` descending, then
/// `e1` descending. Bigraded monomials `x0^i0 x1^i1 y0^j0 y1^j1` are ordered
/// by `i0` descending, then `j0` descending. Binary forms by `e0` descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: Degree,
    exps: Vec<u32>,
}

impl MonomialBasis {
    pub fn new(degree: Degree) -> Self {
        let n = degree.nvars();
        let mut exps = Vec::with_capacity(degree.dim() * n);
        match degree {
            Degree::Plane(d) => {
                for e0 in (0..=d).rev() {
                    for e1 in (0..=d - e0).rev() {
                        exps.extend_from_slice(&[e0, e1, d - e0 - e1]);
                    }
                }
            }
            Degree::Biprojective(a, b) => {
                for i0 in (0..=a).rev() {
                    for j0 in (0..=b).rev() {
                        exps.extend_from_slice(&[i0, a - i0, j0, b - j0]);
                    }
                }
            }
            Degree::Line(d) => {
                for e0 in (0..=d).rev() {
                    exps.extend_from_slice(&[e0, d - e0]);
                }
            }
        }
        MonomialBasis { degree, exps }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len() / self.degree.nvars()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        let n = self.degree.nvars();
        &self.exps[i * n..(i + 1) * n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.exps.chunks(self.degree.nvars())
    }

    /// Position of a monomial of this basis' degree.
    pub fn index_of(&self, e: &[u32]) -> usize {
        match self.degree {
            Degree::Plane(d) => {
                debug_assert_eq!(e[0] + e[1] + e[2], d);
                let r = (d - e[0]) as usize;
                r * (r + 1) / 2 + (d - e[0] - e[1]) as usize
            }
            Degree::Biprojective(a, b) => {
                debug_assert_eq!((e[0] + e[1], e[2] + e[3]), (a, b));
                (a - e[0]) as usize * (b as usize + 1) + (b - e[2]) as usize
            }
            Degree::Line(d) => {
                debug_assert_eq!(e[0] + e[1], d);
                (d - e[0]) as usize
            }
        }
    }
}

/// A form of fixed degree, stored as coefficients against [`MonomialBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec {
    degree: Degree,
    coeffs: Vec<FieldElement>,
}

impl PolyVec {
    pub fn zero(degree: Degree) -> Self {
        PolyVec { degree, coeffs: vec![FieldElement::ZERO; degree.dim()] }
    }

    pub fn from_coeffs(degree: Degree, coeffs: Vec<FieldElement>) -> Self {
        assert_eq!(coeffs.len(), degree.dim(), "coefficient count must match the basis size");
        PolyVec { degree, coeffs }
    }

    /// The constant 1 in the degree-zero piece of the given kind.
    pub fn one(kind: Degree) -> Self {
        let degree = match kind {
            Degree::Plane(_) => Degree::Plane(0),
            Degree::Biprojective(..) => Degree::Biprojective(0, 0),
            Degree::Line(_) => Degree::Line(0),
        };
        PolyVec { degree, coeffs: vec![FieldElement::ONE] }
    }

    pub fn monomial(degree: Degree, exps: &[u32], c: FieldElement) -> Self {
        let basis = MonomialBasis::new(degree);
        let mut p = PolyVec::zero(degree);
        p.coeffs[basis.index_of(exps)] = c;
        p
    }

    /// `c0 z0 + c1 z1 + c2 z2`.
    pub fn plane_linear(c: [FieldElement; 3]) -> Self {
        PolyVec { degree: Degree::Plane(1), coeffs: c.to_vec() }
    }

    /// `c0 x0 + c1 x1` in bidegree (1,0).
    pub fn x_linear(c: [FieldElement; 2]) -> Self {
        PolyVec { degree: Degree::Biprojective(1, 0), coeffs: c.to_vec() }
    }

    /// `c0 y0 + c1 y1` in bidegree (0,1).
    pub fn y_linear(c: [FieldElement; 2]) -> Self {
        PolyVec { degree: Degree::Biprojective(0, 1), coeffs: c.to_vec() }
    }

    pub fn line_linear(c: [FieldElement; 2]) -> Self {
        PolyVec { degree: Degree::Line(1), coeffs: c.to_vec() }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, f: &PrimeField, other: &PolyVec) -> PolyVec {
        assert_eq!(self.degree, other.degree);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| f.add(x, y)).collect();
        PolyVec { degree: self.degree, coeffs }
    }

    pub fn scale(&self, f: &PrimeField, c: FieldElement) -> PolyVec {
        let coeffs = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        PolyVec { degree: self.degree, coeffs }
    }

    pub fn mul(&self, f: &PrimeField, other: &PolyVec) -> PolyVec {
        let degree = self.degree.combined(other.degree).expect("forms of the same kind");
        let (bs, bo, bt) =
            (MonomialBasis::new(self.degree), MonomialBasis::new(other.degree), MonomialBasis::new(degree));
        let n = degree.nvars();
        let mut out = vec![FieldElement::ZERO; degree.dim()];
        let mut e = vec![0u32; n];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mi = bs.monomial(i);
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mj = bo.monomial(j);
                for k in 0..n {
                    e[k] = mi[k] + mj[k];
                }
                let t = bt.index_of(&e);
                out[t] = f.add(out[t], f.mul(x, y));
            }
        }
        PolyVec { degree, coeffs: out }
    }

    pub fn pow(&self, f: &PrimeField, e: u32) -> PolyVec {
        let mut acc = PolyVec::one(self.degree);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }
}

/// Dense matrix over a prime field, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl DenseMatrix {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        DenseMatrix { field, ncols, rows: Vec::new() }
    }

    pub fn from_rows(field: PrimeField, ncols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "all rows must have length ncols");
        DenseMatrix { field, ncols, rows }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![FieldElement::ZERO; n];
                r[i] = FieldElement::ONE;
                r
            })
            .collect();
        DenseMatrix { field, ncols: n, rows }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<FieldElement>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<FieldElement>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn extend_rows<I: IntoIterator<Item = Vec<FieldElement>>>(&mut self, rows: I) {
        for r in rows {
            self.push_row(r);
        }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        DenseMatrix { field: self.field, ncols: self.ncols, rows }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect();
        DenseMatrix { field: self.field, ncols: self.rows.len(), rows }
    }

    /// Rank by forward elimination.
    ///
    /// Rows with a single nonzero entry are taken as pivots up front and their
    /// columns dropped; condition matrices of fat points at coordinate points
    /// consist entirely of such rows.
    pub fn rank(&self) -> usize {
        let mut unit_cols = vec![false; self.ncols];
        let mut units = 0;
        let mut dense: Vec<&Vec<FieldElement>> = Vec::new();
        for r in &self.rows {
            let mut nz = r.iter().enumerate().filter(|(_, x)| !x.is_zero());
            match (nz.next(), nz.next()) {
                (None, _) => {}
                (Some((j, _)), None) => {
                    if !unit_cols[j] {
                        unit_cols[j] = true;
                        units += 1;
                    }
                }
                _ => dense.push(r),
            }
        }
        if dense.is_empty() {
            return units;
        }
        let keep: Vec<usize> = (0..self.ncols).filter(|&j| !unit_cols[j]).collect();
        let mut work: Vec<Vec<u64>> =
            dense.iter().map(|r| keep.iter().map(|&j| r[j].0).collect()).collect();
        units + echelon_rank(&self.field, &mut work, keep.len())
    }

    /// Reduced row-echelon form with zero rows removed.
    pub fn rref(&self) -> DenseMatrix {
        let (rows, _) = rref_rows(&self.field, self.rows.clone(), self.ncols);
        DenseMatrix { field: self.field, ncols: self.ncols, rows }
    }

    /// Pivot columns of the reduced row-echelon form.
    pub fn pivots(&self) -> Vec<usize> {
        rref_rows(&self.field, self.rows.clone(), self.ncols).1
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per row.
    pub fn kernel(&self) -> DenseMatrix {
        let (r, pivots) = rref_rows(&self.field, self.rows.clone(), self.ncols);
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![FieldElement::ZERO; self.ncols];
            v[free] = FieldElement::ONE;
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = self.field.neg(row[free]);
            }
            out.push(v);
        }
        DenseMatrix { field: self.field, ncols: self.ncols, rows: out }
    }

    /// Basis of the left kernel `{y : y M = 0}`.
    pub fn left_kernel(&self) -> DenseMatrix {
        self.transpose().kernel()
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ncols);
        self.rows.iter().map(|r| dot(&self.field, r, v)).collect()
    }
}

/// Rows `0..=n` of Pascal's triangle reduced mod p; `table[n][k] = C(n, k)`.
pub fn binomial_table(f: &PrimeField, n: u32) -> Vec<Vec<FieldElement>> {
    let mut table: Vec<Vec<FieldElement>> = Vec::with_capacity(n as usize + 1);
    for i in 0..=n as usize {
        let mut row = vec![FieldElement::ONE; i + 1];
        for k in 1..i {
            row[k] = f.add(table[i - 1][k - 1], table[i - 1][k]);
        }
        table.push(row);
    }
    table
}

pub fn dot(f: &PrimeField, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let p = f.p;
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc = (acc + x.0 * y.0 % p) % p;
    }
    FieldElement(acc)
}

fn echelon_rank(f: &PrimeField, m: &mut [Vec<u64>], ncols: usize) -> usize {
    let p = f.p;
    let nrows = m.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(FieldElement(m[rank][col])).expect("nonzero pivot").0;
        for x in m[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let factor = p - c;
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = (*x + factor * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rref_rows(
    f: &PrimeField,
    mut m: Vec<Vec<FieldElement>>,
    ncols: usize,
) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let p = f.p;
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(m[r][col]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = p - row[col].0;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    x.0 = (x.0 + factor * y.0) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}
