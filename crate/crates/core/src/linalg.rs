//! Dense 4×4 matrices over reals or jets.
//!
//! Row index is the frame index α, column index the coordinate index i.
//! Public accessors take 1-based indices.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{SymmetricEigen, SVD};
use serde::{Deserialize, Serialize};

use crate::jet::Jet1;

pub type Vec4 = [f64; 4];

/// Ring operations needed by cofactor expansion.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
}

impl Scalar for Jet1 {
    fn zero() -> Self {
        Jet1::zero()
    }
    fn one() -> Self {
        Jet1::one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix4<T = f64> {
    rows: [[T; 4]; 4],
}

impl<T: Scalar> Matrix4<T> {
    pub fn from_rows(rows: [[T; 4]; 4]) -> Self {
        Matrix4 { rows }
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.rows
    }

    pub fn zeros() -> Self {
        Matrix4 { rows: [[T::zero(); 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..4 {
            m.rows[k][k] = T::one();
        }
        m
    }

    pub fn diag(d: [T; 4]) -> Self {
        let mut m = Self::zeros();
        for k in 0..4 {
            m.rows[k][k] = d[k];
        }
        m
    }

    /// Entry at (row, col), both 1-based.
    pub fn get(&self, r: usize, c: usize) -> T {
        self.rows[r - 1][c - 1]
    }

    /// Set entry at (row, col), both 1-based.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.rows[r - 1][c - 1] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                t.rows[c][r] = self.rows[r][c];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                let mut s = T::zero();
                for k in 0..4 {
                    s = s + self.rows[r][k] * rhs.rows[k][c];
                }
                out.rows[r][c] = s;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for r in 0..4 {
            for k in 0..4 {
                out[r] = out[r] + self.rows[r][k] * v[k];
            }
        }
        out
    }

    fn minor3(&self, skip_r: usize, skip_c: usize) -> T {
        let idx = |skip: usize| -> [usize; 3] {
            let mut out = [0; 3];
            let mut n = 0;
            for k in 0..4 {
                if k != skip {
                    out[n] = k;
                    n += 1;
                }
            }
            out
        };
        let (r, c) = (idx(skip_r), idx(skip_c));
        let a = |i: usize, j: usize| self.rows[r[i]][c[j]];
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    }

    /// Cofactor of entry (row, col), 1-based.
    pub fn cofactor(&self, r: usize, c: usize) -> T {
        let m = self.minor3(r - 1, c - 1);
        if (r + c).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }

    pub fn det(&self) -> T {
        let mut s = T::zero();
        for c in 1..=4 {
            s = s + self.rows[0][c - 1] * self.cofactor(1, c);
        }
        s
    }

    /// Adjugate: `m · adj(m) = det(m) · I`.
    pub fn adjugate(&self) -> Self {
        let mut out = Self::zeros();
        for r in 1..=4 {
            for c in 1..=4 {
                out.rows[c - 1][r - 1] = self.cofactor(r, c);
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix4<U> {
        let mut rows = [[U::zero(); 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                rows[r][c] = f(self.rows[r][c]);
            }
        }
        Matrix4 { rows }
    }
}

impl Matrix4<Jet1> {
    pub fn values(&self) -> Matrix4 {
        self.map(|j| j.value)
    }
}

impl Matrix4 {
    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x * s)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for r in 0..4 {
            for c in 0..4 {
                out.rows[r][c] += rhs.rows[r][c];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-1.0))
    }

    pub fn frobenius(&self) -> f64 {
        self.rows.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_finite())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (1..=4).all(|r| (1..=4).all(|c| (self.get(r, c) - self.get(c, r)).abs() <= tol))
    }

    /// Inverse via the adjugate; `None` when `|det| <= tol · max|m|⁴`.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let d = self.det();
        let scale = self.max_abs().powi(4);
        if !d.is_finite() || d.abs() <= tol * scale || scale == 0.0 {
            return None;
        }
        Some(self.adjugate().scale(1.0 / d))
    }

    pub fn to_nalgebra(&self) -> nalgebra::Matrix4<f64> {
        nalgebra::Matrix4::from_fn(|r, c| self.rows[r][c])
    }

    pub fn from_nalgebra(m: &nalgebra::Matrix4<f64>) -> Self {
        let mut rows = [[0.0; 4]; 4];
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = m[(r, c)];
            }
        }
        Matrix4 { rows }
    }

    /// Upper triangle in row-major order (10 entries).
    pub fn upper_triangle(&self) -> [f64; 10] {
        let mut out = [0.0; 10];
        let mut n = 0;
        for r in 0..4 {
            for c in r..4 {
                out[n] = self.rows[r][c];
                n += 1;
            }
        }
        out
    }

    pub fn from_upper_triangle(v: &[f64; 10]) -> Self {
        let mut m = Self::zeros();
        let mut n = 0;
        for r in 0..4 {
            for c in r..4 {
                m.rows[r][c] = v[n];
                m.rows[c][r] = v[n];
                n += 1;
            }
        }
        m
    }
}

pub fn det4(m: &Matrix4) -> f64 {
    m.det()
}

/// Inverse; `None` for numerically singular input.
pub fn inv4(m: &Matrix4) -> Option<Matrix4> {
    m.inverse(1e-14)
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_lorentzian(&self) -> bool {
        self.zero == 0 && (self.minus == 1 || self.plus == 1) && self.plus + self.minus == 4
    }
}

/// Eigenvalue sign counts of a symmetric matrix; eigenvalues with
/// `|λ| <= tol · max|λ|` count as zero.
pub fn signature(m: &Matrix4, tol: f64) -> Signature {
    let sym = m.add(&m.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym.to_nalgebra());
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut s = Signature { plus: 0, minus: 0, zero: 0 };
    for &l in eig.eigenvalues.iter() {
        if top == 0.0 || l.abs() <= tol * top {
            s.zero += 1;
        } else if l > 0.0 {
            s.plus += 1;
        } else {
            s.minus += 1;
        }
    }
    s
}

/// Singular values in descending order with matching right singular vectors.
pub fn svd_desc(m: &Matrix4) -> Vec<(f64, Vec4)> {
    let svd = SVD::new(m.to_nalgebra(), false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut pairs: Vec<(f64, Vec4)> =
        (0..4).map(|k| (svd.singular_values[k], [vt[(k, 0)], vt[(k, 1)], vt[(k, 2)], vt[(k, 3)]])).collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

/// Numerical rank at relative threshold `tol`.
pub fn rank(m: &Matrix4, tol: f64) -> usize {
    let sv = svd_desc(m);
    let top = sv[0].0;
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|(s, _)| *s > tol * top).count()
}

/// Orthonormal basis of the numerical nullspace: right singular vectors whose
/// singular value is at most `tol` times the largest one.
pub fn nullspace(m: &Matrix4, tol: f64) -> Vec<Vec4> {
    let sv = svd_desc(m);
    let top = sv[0].0;
    let r = if top == 0.0 { 0 } else { sv.iter().filter(|(s, _)| *s > tol * top).count() };
    sv[r..].iter().map(|(_, v)| canonical_sign(*v)).collect()
}

/// Flip sign so the largest-magnitude component is positive.
pub fn canonical_sign(v: Vec4) -> Vec4 {
    let mut k = 0;
    for i in 1..4 {
        if v[i].abs() > v[k].abs() + 1e-12 {
            k = i;
        }
    }
    if v[k] < 0.0 {
        v.map(|x| -x)
    } else {
        v
    }
}

pub fn dot(a: &Vec4, b: &Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &Vec4) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal basis for the span of `vs`, dropping directions below `tol`
/// relative to the largest.
pub fn orthonormal_span(vs: &[Vec4], tol: f64) -> Vec<Vec4> {
    if vs.is_empty() {
        return Vec::new();
    }
    // Span of the rows = orthogonal complement of the nullspace of the Gram-like
    // row matrix; stack up to four vectors at a time through AᵀA.
    let mut gram = Matrix4::zeros();
    for v in vs {
        for r in 0..4 {
            for c in 0..4 {
                gram.rows[r][c] += v[r] * v[c];
            }
        }
    }
    let sv = svd_desc(&gram);
    let top = sv[0].0;
    if top == 0.0 {
        return Vec::new();
    }
    // Singular values of AᵀA are squares, so compare against tol².
    sv.iter().filter(|(s, _)| *s > tol * tol * top).map(|(_, v)| canonical_sign(*v)).collect()
}

/// Component of `v` orthogonal to the orthonormal set `basis`.
pub fn reject(v: &Vec4, basis: &[Vec4]) -> Vec4 {
    let mut out = *v;
    for b in basis {
        let d = dot(&out, b);
        for k in 0..4 {
            out[k] -= d * b[k];
        }
    }
    out
}

/// Largest distance from a unit vector of one span to the other span,
/// measured both ways. Spans of different dimension give 1.
pub fn subspace_distance(a: &[Vec4], b: &[Vec4]) -> f64 {
    if a.len() != b.len() {
        return 1.0;
    }
    let one_way = |x: &[Vec4], y: &[Vec4]| x.iter().map(|v| norm(&reject(v, y))).fold(0.0, f64::max);
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(seed: [f64; 16]) -> Matrix4 {
        let mut rows = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                rows[r][c] = seed[4 * r + c];
            }
        }
        Matrix4::from_rows(rows)
    }

    fn rotation(angles: [f64; 6]) -> Matrix4 {
        let mut q = Matrix4::identity();
        let planes = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (t, (i, j)) in angles.iter().zip(planes) {
            let mut g = Matrix4::identity();
            g.rows[i][i] = t.cos();
            g.rows[j][j] = t.cos();
            g.rows[i][j] = -t.sin();
            g.rows[j][i] = t.sin();
            q = q.matmul(&g);
        }
        q
    }

    #[test]
    fn one_based_access() {
        let mut m = Matrix4::zeros();
        m.set(1, 4, 3.0);
        assert_eq!(m.get(1, 4), 3.0);
        assert_eq!(m.rows()[0][3], 3.0);
    }

    #[test]
    fn identity_has_empty_nullspace() {
        assert!(nullspace(&Matrix4::identity(), 1e-9).is_empty());
    }

    #[test]
    fn diag_nullspace_is_last_axis() {
        let n = nullspace(&Matrix4::diag([1.0, 1.0, 1.0, 0.0]), 1e-9);
        assert_eq!(n.len(), 1);
        assert!((n[0][3].abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        assert_eq!(nullspace(&Matrix4::zeros(), 1e-9).len(), 4);
        assert_eq!(rank(&Matrix4::zeros(), 1e-9), 0);
    }

    #[test]
    fn rank_two_outer_products() {
        let a = [0.3, -1.2, 0.5, 0.9];
        let b = [1.1, 0.4, -0.7, 0.2];
        let mut m = Matrix4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m.rows[r][c] = 2.0 * a[r] * a[c] - 0.5 * b[r] * b[c];
            }
        }
        let tol = 1e-9;
        let n = nullspace(&m, tol);
        assert_eq!(n.len(), 2);
        let top = svd_desc(&m)[0].0;
        for v in &n {
            assert!(norm(&m.mul_vec(v)) <= tol * top);
            assert!(dot(v, &a).abs() < 1e-12 && dot(v, &b).abs() < 1e-12);
        }
    }

    #[test]
    fn jet_determinant_matches_product_rule() {
        // det of diag(x, y, 1, 1) as jets = x·y
        let x = Jet1 { value: 2.0, partials: [1.0, 0.0, 0.0, 0.0] };
        let y = Jet1 { value: 3.0, partials: [0.0, 1.0, 0.0, 0.0] };
        let m = Matrix4::diag([x, y, Jet1::one(), Jet1::one()]);
        let d = m.det();
        assert_eq!(d.value, 6.0);
        assert_eq!(d.partials, [3.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn upper_triangle_round_trip() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        let m = Matrix4::from_upper_triangle(&v);
        assert!(m.is_symmetric(0.0));
        assert_eq!(m.get(2, 3), 6.0);
        assert_eq!(m.upper_triangle(), v);
    }

    proptest! {
        #[test]
        fn inverse_and_det_consistent(seed in prop::array::uniform16(-1.0..1.0f64)) {
            let m = random_matrix(seed).add(&Matrix4::identity().scale(3.0));
            let inv = inv4(&m).unwrap();
            prop_assert!((det4(&inv) * det4(&m) - 1.0).abs() < 1e-10);
            let prod = m.matmul(&inv).sub(&Matrix4::identity());
            prop_assert!(prod.max_abs() < 1e-12);
        }

        #[test]
        fn nullspace_plus_rank_is_four(seed in prop::array::uniform16(-1.0..1.0f64), kill in 0usize..4) {
            let mut m = random_matrix(seed);
            // force rank deficiency of varying size by zeroing rows
            for r in 0..kill {
                m.rows[r] = [0.0; 4];
            }
            let tol = 1e-9;
            prop_assert_eq!(nullspace(&m, tol).len() + rank(&m, tol), 4);
        }

        #[test]
        fn lorentz_signature_is_rotation_invariant(angles in prop::array::uniform6(-3.2..3.2f64)) {
            let q = rotation(angles);
            let m = q.matmul(&Matrix4::diag([-1.0, 1.0, 1.0, 1.0])).matmul(&q.transpose());
            prop_assert_eq!(signature(&m, 1e-9), Signature { plus: 3, minus: 1, zero: 0 });
        }
    }
}
