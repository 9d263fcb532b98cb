use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Polar sample grid `r_i e^{i theta_j}` in a closed subdisk.
///
/// Radii are `max_radius * i / radius_count` for `i = 1..=radius_count`
/// and angles are `2 pi j / angle_count` for `j = 0..angle_count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    radius_count: usize,
    angle_count: usize,
    max_radius: f64,
}

impl DiskGrid {
    pub fn new(radius_count: usize, angle_count: usize, max_radius: f64) -> Result<Self> {
        if radius_count < 2 {
            return Err(Error::Invalid(format!(
                "grid needs at least 2 radii, got {radius_count}"
            )));
        }
        if angle_count < 8 {
            return Err(Error::Invalid(format!(
                "grid needs at least 8 angles, got {angle_count}"
            )));
        }
        if !(max_radius > 0.0 && max_radius < 1.0) {
            return Err(Error::domain("max_radius", max_radius, "(0, 1)"));
        }
        Ok(Self {
            radius_count,
            angle_count,
            max_radius,
        })
    }

    /// Same resolution as the default grid, but out to `max_radius`.
    pub fn with_max_radius(max_radius: f64) -> Result<Self> {
        Self::new(64, 256, max_radius)
    }

    pub fn radius_count(&self) -> usize {
        self.radius_count
    }

    pub fn angle_count(&self) -> usize {
        self.angle_count
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.max_radius * (i + 1) as f64 / self.radius_count as f64
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.radius(i), TAU * j as f64 / self.angle_count as f64)
    }

    /// Points on the circle of the `i`-th radius.
    pub fn circle(&self, i: usize) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.angle_count).map(move |j| self.point(i, j))
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.radius_count).flat_map(move |i| self.circle(i))
    }

    pub fn len(&self) -> usize {
        self.radius_count * self.angle_count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid with `factor` times as many radii and angles. Every point of
    /// `self` is also a point of the refined grid.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            radius_count: self.radius_count * factor,
            angle_count: self.angle_count * factor,
            max_radius: self.max_radius,
        }
    }
}

impl Default for DiskGrid {
    /// 64 radii by 256 angles out to radius 0.99.
    fn default() -> Self {
        Self {
            radius_count: 64,
            angle_count: 256,
            max_radius: 0.99,
        }
    }
}
