//! Truncated cubic velocity lattice and its quadrature.
//!
//! Each axis carries `N` (odd) equally spaced nodes on `[-V, V]`, so `v = 0`
//! is always a node. Quadrature weights are the tensor product of the 1D
//! trapezoidal rule: interior nodes weigh `h³`, faces, edges and corners carry
//! the usual halved factors. On rapidly decaying smooth integrands such as
//! Gaussians this rule is spectrally accurate.
//!
//! Node ordering is `index = (iz·N + iy)·N + ix` with `ix` fastest.
//!
//! All reductions run in a fixed sequential order, so results are bit-for-bit
//! reproducible.

use std::ops::{Index, IndexMut};

use crate::error::{KineticError, Result};
use crate::moments::Moments;
use crate::Vec3;

/// Smallest admissible number of points per axis.
pub const MIN_POINTS: usize = 9;
/// Default number of points per axis.
pub const DEFAULT_POINTS: usize = 33;
/// Default number of thermal widths covered by [`auto_extent`].
pub const DEFAULT_SAFETY: f64 = 7.0;

#[derive(Clone, Debug, PartialEq)]
pub struct VelocityGrid {
    extent: f64,
    points: usize,
    spacing: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl VelocityGrid {
    pub fn new(extent: f64, points: usize) -> Result<Self> {
        if points < MIN_POINTS || points.is_multiple_of(2) {
            return Err(KineticError::BadResolution { points });
        }
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(KineticError::BadExtent { extent });
        }
        let spacing = 2.0 * extent / (points - 1) as f64;
        let center = (points / 2) as isize;
        let nodes: Vec<f64> = (0..points)
            .map(|i| (i as isize - center) as f64 * spacing)
            .collect();
        let axis: Vec<f64> = (0..points)
            .map(|i| {
                if i == 0 || i == points - 1 {
                    0.5 * spacing
                } else {
                    spacing
                }
            })
            .collect();
        let mut weights = Vec::with_capacity(points * points * points);
        for wz in &axis {
            for wy in &axis {
                for wx in &axis {
                    weights.push(wz * wy * wx);
                }
            }
        }
        Ok(Self {
            extent,
            points,
            spacing,
            nodes,
            weights,
        })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Points per axis.
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Node coordinates along one axis.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total number of nodes, `N³`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (iz * self.points + iy) * self.points + ix
    }

    pub fn velocity(&self, index: usize) -> Vec3 {
        let n = self.points;
        [
            self.nodes[index % n],
            self.nodes[(index / n) % n],
            self.nodes[index / (n * n)],
        ]
    }

    /// Iterates `(index, velocity)` over all nodes in storage order.
    pub fn velocities(&self) -> impl Iterator<Item = (usize, Vec3)> + '_ {
        let n = self.points;
        (0..n).flat_map(move |iz| {
            (0..n).flat_map(move |iy| {
                (0..n).map(move |ix| {
                    (
                        (iz * n + iy) * n + ix,
                        [self.nodes[ix], self.nodes[iy], self.nodes[iz]],
                    )
                })
            })
        })
    }

    pub fn zeros(&self) -> GridField {
        GridField(vec![0.0; self.len()])
    }

    /// Samples `g(v)` at every node.
    pub fn sample(&self, mut g: impl FnMut(Vec3) -> f64) -> GridField {
        let mut values = Vec::with_capacity(self.len());
        for (_, v) in self.velocities() {
            values.push(g(v));
        }
        GridField(values)
    }

    pub fn check(&self, field: &GridField) -> Result<()> {
        if field.len() != self.len() {
            return Err(KineticError::LengthMismatch {
                expected: self.len(),
                got: field.len(),
            });
        }
        Ok(())
    }

    /// `Σ weight · value`.
    pub fn integrate(&self, field: &GridField) -> Result<f64> {
        self.check(field)?;
        Ok(self
            .weights
            .iter()
            .zip(field.values())
            .map(|(w, f)| w * f)
            .sum())
    }

    /// `Σ weight · g(v) · value`.
    pub fn integrate_with(&self, field: &GridField, mut g: impl FnMut(Vec3) -> f64) -> Result<f64> {
        self.check(field)?;
        let mut acc = 0.0;
        for (i, v) in self.velocities() {
            acc += self.weights[i] * g(v) * field[i];
        }
        Ok(acc)
    }
}

/// Smallest symmetric extent covering `safety` thermal widths of every
/// listed species state around its mean velocity.
///
/// The thermal width of a state uses the largest eigenvalue of `P/n` when that
/// exceeds `T`, so anisotropic states are covered along their widest axis.
pub fn auto_extent(states: &[(Moments, f64)], safety: f64) -> f64 {
    states
        .iter()
        .map(|(m, mass)| {
            let drift = m.velocity.iter().fold(0.0_f64, |a, u| a.max(u.abs()));
            let widest = m.pressure_per_density().eigenvalues()[2];
            let temperature = m.temperature.max(widest);
            drift + safety * (temperature / mass).sqrt()
        })
        .fold(0.0, f64::max)
}

/// One scalar per velocity node, in grid storage order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GridField(Vec<f64>);

impl GridField {
    pub fn from_vec(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn scale(&mut self, s: f64) {
        self.0.iter_mut().for_each(|v| *v *= s);
    }

    /// `self + a·x`.
    pub fn add_scaled(&self, a: f64, x: &GridField) -> GridField {
        GridField(self.0.iter().zip(&x.0).map(|(s, x)| s + a * x).collect())
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &GridField) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Index<usize> for GridField {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for GridField {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}
