//! Symmetric 3x3 tensors.
//!
//! Only the six independent entries are stored, so symmetry holds by
//! construction. Eigenvalues use the closed-form trigonometric solution of the
//! characteristic cubic, with cyclic Jacobi rotations as a fallback when the
//! spectrum is (numerically) a single repeated value.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use crate::error::{KineticError, Result};
use crate::Vec3;

/// Below this absolute determinant a tensor is treated as singular.
pub const SINGULAR_DET: f64 = 1e-300;
/// Above this eigenvalue ratio a tensor is treated as singular.
pub const MAX_CONDITION: f64 = 1e14;

const DEGENERATE_SPREAD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SymTensor3 {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl SymTensor3 {
    pub const fn new(xx: f64, yy: f64, zz: f64, xy: f64, xz: f64, yz: f64) -> Self {
        Self {
            xx,
            yy,
            zz,
            xy,
            xz,
            yz,
        }
    }

    pub const fn diag(xx: f64, yy: f64, zz: f64) -> Self {
        Self::new(xx, yy, zz, 0.0, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::diag(1.0, 1.0, 1.0)
    }

    pub const fn scaled_identity(s: f64) -> Self {
        Self::diag(s, s, s)
    }

    pub const fn zero() -> Self {
        Self::diag(0.0, 0.0, 0.0)
    }

    /// `w ⊗ w`.
    pub fn outer(w: &Vec3) -> Self {
        Self::new(
            w[0] * w[0],
            w[1] * w[1],
            w[2] * w[2],
            w[0] * w[1],
            w[0] * w[2],
            w[1] * w[2],
        )
    }

    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ]
    }

    /// Reads the upper triangle of `m`.
    pub fn from_matrix(m: &[[f64; 3]; 3]) -> Self {
        Self::new(m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2])
    }

    /// Entries in `(xx, yy, zz, xy, xz, yz)` order.
    pub fn components(&self) -> [f64; 6] {
        [self.xx, self.yy, self.zz, self.xy, self.xz, self.yz]
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }

    pub fn det(&self) -> f64 {
        self.xx * (self.yy * self.zz - self.yz * self.yz)
            - self.xy * (self.xy * self.zz - self.yz * self.xz)
            + self.xz * (self.xy * self.yz - self.yy * self.xz)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Ratio of largest to smallest absolute eigenvalue.
    pub fn condition(&self) -> f64 {
        let ev = self.eigenvalues();
        let hi = ev.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        let lo = ev.iter().fold(f64::INFINITY, |m, e| m.min(e.abs()));
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let condition = self.condition();
        if det.is_nan()
            || det.abs() < SINGULAR_DET
            || condition.is_nan()
            || condition > MAX_CONDITION
        {
            return Err(KineticError::SingularTensor { det, condition });
        }
        // adjugate / det
        let inv = 1.0 / det;
        Ok(Self::new(
            (self.yy * self.zz - self.yz * self.yz) * inv,
            (self.xx * self.zz - self.xz * self.xz) * inv,
            (self.xx * self.yy - self.xy * self.xy) * inv,
            (self.xz * self.yz - self.xy * self.zz) * inv,
            (self.xy * self.yz - self.xz * self.yy) * inv,
            (self.xy * self.xz - self.xx * self.yz) * inv,
        ))
    }

    /// `w · t · w`.
    pub fn quadratic_form(&self, w: &Vec3) -> f64 {
        self.xx * w[0] * w[0]
            + self.yy * w[1] * w[1]
            + self.zz * w[2] * w[2]
            + 2.0 * (self.xy * w[0] * w[1] + self.xz * w[0] * w[2] + self.yz * w[1] * w[2])
    }

    pub fn mul_vec(&self, w: &Vec3) -> Vec3 {
        [
            self.xx * w[0] + self.xy * w[1] + self.xz * w[2],
            self.xy * w[0] + self.yy * w[1] + self.yz * w[2],
            self.xz * w[0] + self.yz * w[1] + self.zz * w[2],
        ]
    }

    /// Full matrix product; the result is not symmetric in general.
    pub fn matmul(&self, other: &Self) -> [[f64; 3]; 3] {
        let a = self.to_matrix();
        let b = other.to_matrix();
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    /// `a·t1 + (1 − a)·t2`.
    pub fn convex_combine(a: f64, t1: &Self, t2: &Self) -> Self {
        *t1 * a + *t2 * (1.0 - a)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let off = self.xy * self.xy + self.xz * self.xz + self.yz * self.yz;
        if off == 0.0 {
            let mut ev = [self.xx, self.yy, self.zz];
            ev.sort_by(f64::total_cmp);
            return ev;
        }
        let q = self.trace() / 3.0;
        let dx = self.xx - q;
        let dy = self.yy - q;
        let dz = self.zz - q;
        let p = ((dx * dx + dy * dy + dz * dz + 2.0 * off) / 6.0).sqrt();
        if p <= DEGENERATE_SPREAD * self.max_abs() {
            return self.eigenvalues_jacobi();
        }
        let shifted = (*self - Self::scaled_identity(q)) * (1.0 / p);
        let r = (shifted.det() / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        let largest = q + 2.0 * p * phi.cos();
        let smallest = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
        let middle = 3.0 * q - largest - smallest;
        let mut ev = [smallest, middle, largest];
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Cyclic Jacobi eigenvalue iteration, ascending.
    pub fn eigenvalues_jacobi(&self) -> [f64; 3] {
        let mut a = self.to_matrix();
        for _ in 0..64 {
            let off = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
            let diag = a[0][0].powi(2) + a[1][1].powi(2) + a[2][2].powi(2);
            if off <= f64::EPSILON * f64::EPSILON * diag || off == 0.0 {
                break;
            }
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = (a[p], a[q]);
                for k in 0..3 {
                    a[p][k] = c * rp[k] - s * rq[k];
                    a[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
        let mut ev = [a[0][0], a[1][1], a[2][2]];
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues()[0] > 0.0
    }

    /// Max-norm of `self / scale − 1`.
    pub fn deviation_from_isotropic(&self, scale: f64) -> f64 {
        (*self * (1.0 / scale) - Self::identity()).max_abs()
    }
}

impl Add for SymTensor3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.xx + o.xx,
            self.yy + o.yy,
            self.zz + o.zz,
            self.xy + o.xy,
            self.xz + o.xz,
            self.yz + o.yz,
        )
    }
}

impl Sub for SymTensor3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.xx - o.xx,
            self.yy - o.yy,
            self.zz - o.zz,
            self.xy - o.xy,
            self.xz - o.xz,
            self.yz - o.yz,
        )
    }
}

impl Mul<f64> for SymTensor3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(
            self.xx * s,
            self.yy * s,
            self.zz * s,
            self.xy * s,
            self.xz * s,
            self.yz * s,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn det_examples() {
        assert_eq!(SymTensor3::identity().det(), 1.0);
        assert_eq!(SymTensor3::diag(2.0, 3.0, 4.0).det(), 24.0);
        // rows (1,1,0) and (1,1,0) coincide
        let t = SymTensor3::new(1.0, 1.0, 0.0, 1.0, 0.0, 0.0);
        assert_eq!(t.det(), 0.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            SymTensor3::identity().inverse().unwrap(),
            SymTensor3::identity()
        );
        let inv = SymTensor3::diag(2.0, 4.0, 5.0).inverse().unwrap();
        assert_eq!(inv, SymTensor3::diag(0.5, 0.25, 0.2));
    }

    #[test]
    fn inverse_multiplies_back() {
        let t = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7);
        let prod = t.matmul(&t.inverse().unwrap());
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "({i},{j}) = {v}");
            }
        }
    }

    #[test]
    fn singular_inverse_is_rejected() {
        let t = SymTensor3::new(1.0, 1.0, 0.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            t.inverse(),
            Err(KineticError::SingularTensor { .. })
        ));
        let t = SymTensor3::diag(1.0, 1.0, 1e-15);
        assert!(matches!(
            t.inverse(),
            Err(KineticError::SingularTensor { .. })
        ));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(
            SymTensor3::diag(3.0, 1.0, 2.0).eigenvalues(),
            [1.0, 2.0, 3.0]
        );
        assert_eq!(SymTensor3::identity().eigenvalues(), [1.0, 1.0, 1.0]);
        let ev = SymTensor3::new(1.0, 1.0, 2.0, 0.5, 0.0, 0.0).eigenvalues();
        for (got, want) in ev.iter().zip([0.5, 1.5, 2.0]) {
            assert!(close(*got, want, 1e-14), "{ev:?}");
        }
    }

    #[test]
    fn near_isotropic_uses_jacobi_path() {
        let t = SymTensor3::new(2.0, 2.0, 2.0, 1e-17, 0.0, 0.0);
        let ev = t.eigenvalues();
        for e in ev {
            assert!(close(e, 2.0, 1e-15));
        }
        let j = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7).eigenvalues_jacobi();
        let c = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7).eigenvalues();
        for (a, b) in j.iter().zip(c.iter()) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn characteristic_residual_is_small() {
        let t = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7);
        for lambda in t.eigenvalues() {
            let shifted = t - SymTensor3::scaled_identity(lambda);
            assert!(shifted.det().abs() < 1e-10 * t.det().abs());
        }
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(SymTensor3::identity().quadratic_form(&[1.0, 2.0, 2.0]), 9.0);
        assert_eq!(
            SymTensor3::diag(2.0, 0.0, 0.0).quadratic_form(&[3.0, 5.0, 7.0]),
            18.0
        );
        let spd = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7);
        assert_eq!(spd.quadratic_form(&[0.0; 3]), 0.0);
    }

    #[test]
    fn convex_combine_examples() {
        let t1 = SymTensor3::new(4.0, 3.0, 2.5, 0.4, -0.3, 0.7);
        let t2 = SymTensor3::diag(7.0, 1.0, 3.0);
        assert_eq!(SymTensor3::convex_combine(1.0, &t1, &t2), t1);
        let mid = SymTensor3::convex_combine(
            0.5,
            &SymTensor3::identity(),
            &SymTensor3::scaled_identity(3.0),
        );
        assert_eq!(mid, SymTensor3::scaled_identity(2.0));
    }
}
