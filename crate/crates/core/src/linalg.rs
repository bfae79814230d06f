//! Exact linear algebra over Q(√2): reduced row echelon forms, kernels,
//! particular solutions, and canonical subspaces of `A_n`.
//!
//! Pivots are the first nonzero entry in column order. Arithmetic is exact,
//! so there is no pivoting strategy to speak of and results are
//! deterministic. Row operations skip zero entries of the pivot row, which
//! keeps basis-sparse systems at levels 7 and 8 cheap.

use serde::{Serialize, Serializer};

use crate::algebra::{ComplexScalar, Element};
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    /// Matrix whose `k`-th column holds the coefficients of `columns[k]`.
    pub fn from_columns(columns: &[Element]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Element::dim);
        let mut m = Matrix::zeros(rows, cols);
        for (k, c) in columns.iter().enumerate() {
            for (i, x) in c.support() {
                m.data[i][k] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `self + s·I`
    pub fn add_diagonal(&self, s: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i][i] += s;
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        rref_rows(self.data.clone(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = self.rref();
        kernel_of_rref(&rows, &pivots, self.cols)
    }

    /// Some `x` with `self · x = b`, or `None` when inconsistent.
    pub fn solve_particular(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<Scalar>> = self
            .data
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in rows.iter().zip(&pivots) {
            x[p] = r[self.cols].clone();
        }
        Some(x)
    }
}

mod ff;

fn rref_rows(a: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    ff::rref(&a, cols)
}

/// Plain Gauss-Jordan over the field, kept as an oracle for the
/// fraction-free kernel.
#[cfg(test)]
fn rref_rows_field(mut a: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == m {
            break;
        }
        let Some(found) = (prow..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, found);
        let inv = a[prow][col].recip().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in a[prow][col..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&j| !a[prow][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut a[prow]);
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &j in &support {
                let t = &factor * &pivot_row[j];
                row[j] -= &t;
            }
        }
        a[prow] = pivot_row;
        pivots.push(col);
        prow += 1;
    }
    a.truncate(pivots.len());
    (a, pivots)
}

fn kernel_of_rref(rows: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in rows.iter().zip(pivots) {
                if !r[f].is_zero() {
                    v[p] = -&r[f];
                }
            }
            v
        })
        .collect()
}

/// A subspace of `A_n` held as a reduced row echelon basis with unit pivots.
///
/// The form is canonical, so two subspaces are equal exactly when their
/// row matrices are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    level: u32,
    rows: Vec<Element>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(level: u32) -> Self {
        Subspace {
            level,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(level: u32) -> Self {
        let d = 1usize << level;
        Subspace {
            level,
            rows: (0..d).map(|k| Element::basis(level, k)).collect(),
            pivots: (0..d).collect(),
        }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(level: u32, vectors: &[Element]) -> Result<Self> {
        for v in vectors {
            if v.level() != level {
                return Err(CdError::LevelMismatch {
                    left: level,
                    right: v.level(),
                });
            }
        }
        let raw: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
        Ok(Subspace::from_raw_rows(level, raw))
    }

    fn from_raw_rows(level: u32, raw: Vec<Vec<Scalar>>) -> Self {
        let (rows, pivots) = rref_rows(raw, 1 << level);
        Subspace {
            level,
            rows: rows
                .into_iter()
                .map(|r| Element::from_coeffs(level, r).expect("row width matches level"))
                .collect(),
            pivots,
        }
    }

    /// Kernel of a square `2^n × 2^n` matrix as a subspace of `A_n`.
    pub fn kernel(m: &Matrix) -> Result<Self> {
        let level = level_for_dim(m.cols())?;
        Ok(Subspace::from_raw_rows(level, m.kernel()))
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Result<Self> {
        let level = level_for_dim(m.rows())?;
        Ok(Subspace::from_raw_rows(level, m.transpose().data))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ambient_dim(&self) -> usize {
        1 << self.level
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the echelon basis; zero iff `v ∈ self`.
    pub fn residue(&self, v: &Element) -> Element {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r.coeff(p).clone();
            if !c.is_zero() {
                r -= &row.scale(&c);
            }
        }
        r
    }

    pub fn contains(&self, v: &Element) -> bool {
        v.level() == self.level && self.residue(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_level(other)?;
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(self.level, &vs)
    }

    /// `S ∩ T` as the common solution set of both constraint systems.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_level(other)?;
        let mut constraints = self.orth_complement().rows;
        constraints.extend(other.orth_complement().rows);
        let raw = if constraints.is_empty() {
            Matrix::identity(self.ambient_dim()).data
        } else {
            let m = Matrix::from_rows(constraints.iter().map(|r| r.coeffs().to_vec()).collect());
            m.kernel()
        };
        Ok(Subspace::from_raw_rows(self.level, raw))
    }

    /// Orthogonal complement for the real inner product (the coordinate dot
    /// product in this basis).
    pub fn orth_complement(&self) -> Subspace {
        let raw: Vec<Vec<Scalar>> = self.rows.iter().map(|r| r.coeffs().to_vec()).collect();
        let k = kernel_of_rref(&raw, &self.pivots, self.ambient_dim());
        Subspace::from_raw_rows(self.level, k)
    }

    /// Orthogonal projection of `x` onto `self`.
    pub fn project(&self, x: &Element) -> Element {
        assert_eq!(x.level(), self.level);
        if self.rows.is_empty() {
            return Element::zero(self.level);
        }
        let d = self.rows.len();
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let g = self.rows[i].dot(&self.rows[j]);
                gram.set(j, i, g.clone());
                gram.set(i, j, g);
            }
        }
        let rhs: Vec<Scalar> = self.rows.iter().map(|r| r.dot(x)).collect();
        let c = gram
            .solve_particular(&rhs)
            .expect("Gram matrix of a basis is invertible");
        let mut out = Element::zero(self.level);
        for (ci, r) in c.iter().zip(&self.rows) {
            if !ci.is_zero() {
                out += &r.scale(ci);
            }
        }
        out
    }

    /// `⟨v, s⟩_R = 0` for every basis vector `s`.
    pub fn is_orthogonal_to(&self, v: &Element) -> bool {
        self.rows.iter().all(|r| r.dot(v).is_zero())
    }

    /// `⟨v, s⟩_C = 0` for every basis vector `s`.
    pub fn is_c_orthogonal_to(&self, v: &Element) -> bool {
        self.rows.iter().all(|r| v.herm_inner(r).is_zero())
    }

    /// `⟨s, t⟩_C = 0` for all basis vectors of the two subspaces.
    pub fn is_c_orthogonal_to_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|t| self.is_c_orthogonal_to(t))
    }

    /// Closure of the real span under `C_n`-multiplication.
    pub fn c_span(&self) -> Subspace {
        let i = ComplexScalar::i(self.level);
        let mut vs = self.rows.clone();
        vs.extend(self.rows.iter().map(|r| i.act(r)));
        Subspace::span(self.level, &vs).expect("same level")
    }

    pub fn is_c_subspace(&self) -> bool {
        let i = ComplexScalar::i(self.level);
        self.rows.iter().all(|r| self.contains(&i.act(r)))
    }

    /// Products of basis pairs stay inside.
    pub fn is_closed_under_mul(&self) -> bool {
        self.rows
            .iter()
            .all(|x| self.rows.iter().all(|y| self.contains(&x.mul(y))))
    }

    fn same_level(&self, other: &Subspace) -> Result<()> {
        if self.level != other.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }
}

fn level_for_dim(d: usize) -> Result<u32> {
    if d == 0 || !d.is_power_of_two() {
        return Err(CdError::precondition(format!(
            "dimension {d} is not a power of two"
        )));
    }
    Ok(d.trailing_zeros())
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 3)?;
        st.serialize_field("n", &self.level)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn e(n: u32, k: usize) -> Element {
        Element::basis(n, k)
    }

    #[test]
    fn canonicalize_examples() {
        let s = Subspace::span(2, &[e(2, 1), &e(2, 1) + &e(2, 2)]).unwrap();
        assert_eq!(s.basis(), &[e(2, 1), e(2, 2)]);
        assert_eq!(Subspace::span(2, &[Element::zero(2)]).unwrap().dim(), 0);
        let v = Element::from_ints(2, &[1, 2, 0, -1]);
        assert_eq!(Subspace::span(2, &[v.clone(), v.scale(&Scalar::from_int(2))]).unwrap().dim(), 1);
        assert!(Subspace::span(2, &[e(3, 1)]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Subspace::kernel(&Matrix::identity(8)).unwrap().dim(), 0);
        assert_eq!(Subspace::kernel(&Matrix::zeros(16, 16)).unwrap().dim(), 16);
        assert!(Subspace::kernel(&Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = vec![Scalar::from_int(3), Scalar::sqrt2()];
        assert_eq!(Matrix::identity(2).solve_particular(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(2, 2).solve_particular(&b), None);
        assert_eq!(
            Matrix::zeros(2, 2).solve_particular(&[Scalar::zero(), Scalar::zero()]),
            Some(vec![Scalar::zero(), Scalar::zero()])
        );
    }

    #[test]
    fn complement_and_projection() {
        let s = Subspace::span(2, &[e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(s.orth_complement(), Subspace::span(2, &[e(2, 2), e(2, 3)]).unwrap());
        let x = &e(2, 0) + &e(2, 1);
        assert_eq!(Subspace::span(2, &[e(2, 0)]).unwrap().project(&x), e(2, 0));
        assert!(s.intersect(&s.orth_complement()).unwrap().is_zero());
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(3, &[e(3, 1)]).unwrap();
        let b = Subspace::span(3, &[e(3, 2)]).unwrap();
        assert_eq!(a.sum(&b).unwrap(), Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap());
        assert!(a.sum(&b).unwrap().contains(&(&e(3, 1) - &e(3, 2))));
        assert!(!a.contains(&e(3, 2)));
        assert!(a.sum(&Subspace::zero(4)).is_err());
    }

    #[test]
    fn random_subspace_identities() {
        let mut s = Sampler::new(11);
        for trial in 0..40 {
            let n = 3;
            let k = 1 + trial % 6;
            let vs: Vec<Element> = (0..k).map(|_| s.sparse(n, 3)).collect();
            let sub = Subspace::span(n, &vs).unwrap();
            let comp = sub.orth_complement();
            assert_eq!(sub.dim() + comp.dim(), 8);
            assert_eq!(comp.orth_complement(), sub);
            let x = s.element(n);
            let p = sub.project(&x);
            assert!(sub.contains(&p));
            assert_eq!(sub.project(&p), p);
            assert!(sub.is_orthogonal_to(&(&x - &p)));
            assert_eq!(&p + &comp.project(&x), x);
            assert_eq!(sub.contains(&x), sub.project(&x) == x);
            let mut shuffled = sub.basis().to_vec();
            shuffled.reverse();
            assert_eq!(Subspace::span(n, &shuffled).unwrap(), sub);
        }
    }

    #[test]
    fn fraction_free_matches_field_elimination() {
        let mut s = Sampler::new(77);
        for trial in 0..60 {
            let rows = 1 + trial % 9;
            let cols = 1 + (trial * 7) % 11;
            let rank_cap = 1 + trial % 5;
            let gens: Vec<Vec<Scalar>> = (0..rank_cap)
                .map(|_| (0..cols).map(|_| if s.coin() { s.scalar() } else { Scalar::zero() }).collect())
                .collect();
            let a: Vec<Vec<Scalar>> = (0..rows)
                .map(|_| {
                    let mut r = vec![Scalar::zero(); cols];
                    for g in &gens {
                        let c = s.rational();
                        for (x, y) in r.iter_mut().zip(g) {
                            *x += &(&c * y);
                        }
                    }
                    r
                })
                .collect();
            assert_eq!(ff::rref(&a, cols), rref_rows_field(a.clone(), cols));
        }
    }

    #[test]
    fn rank_nullity() {
        let mut s = Sampler::new(5);
        for size in [4usize, 8, 16] {
            for _ in 0..20 {
                let rows: Vec<Vec<Scalar>> = (0..size)
                    .map(|_| {
                        (0..size)
                            .map(|_| if s.coin() { s.rational() } else { Scalar::zero() })
                            .collect()
                    })
                    .collect();
                let m = Matrix::from_rows(rows);
                let ker = m.kernel();
                assert_eq!(m.rank() + ker.len(), size);
                for v in &ker {
                    assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
                }
            }
        }
    }
}
