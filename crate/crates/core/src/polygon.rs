//! Regular polygon model: radii, vertex placement and point containment.
//!
//! A polygon is described by its side count, circumradius, rotation and
//! center. Vertex `j` sits at `center + r·(cos(2πj/n + α), sin(2πj/n + α))`,
//! counter-clockwise, so vertex 0 lies on the positive x axis in the
//! standard position (α = 0, centered at the origin).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_sides, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(radius * c, radius * s)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn sub(self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Point2) -> Point2 {
        Point2::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z component of the 2-D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Rotates about the origin.
    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonSpec {
    n: u32,
    circumradius: f64,
    alpha: f64,
    center: Point2,
}

impl PolygonSpec {
    /// Standard position: centered at the origin, no rotation.
    pub fn new(n: u32, circumradius: f64) -> Result<Self> {
        check_sides(n)?;
        if !(circumradius > 0.0 && circumradius.is_finite()) {
            return Err(Error::InvalidLength(circumradius));
        }
        Ok(Self {
            n,
            circumradius,
            alpha: 0.0,
            center: Point2::ORIGIN,
        })
    }

    pub fn with_rotation(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_center(mut self, center: Point2) -> Self {
        self.center = center;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    /// Central angle subtended by one edge, 2π/n.
    pub fn central_angle(&self) -> f64 {
        2.0 * PI / f64::from(self.n)
    }

    pub fn inradius(&self) -> f64 {
        self.circumradius * (PI / f64::from(self.n)).cos()
    }

    pub fn side_length(&self) -> f64 {
        2.0 * self.circumradius * (PI / f64::from(self.n)).sin()
    }

    pub fn vertex(&self, j: u32) -> Point2 {
        let angle = self.central_angle() * f64::from(j % self.n) + self.alpha;
        self.center.add(Point2::polar(self.circumradius, angle))
    }
}

/// Inradius (apothem) of a regular `n`-gon with side length `side`.
pub fn inradius(n: u32, side: f64) -> Result<f64> {
    check_sides(n)?;
    check_length(side)?;
    Ok(side / (2.0 * (PI / f64::from(n)).tan()))
}

/// Circumradius of a regular `n`-gon with side length `side`.
pub fn circumradius(n: u32, side: f64) -> Result<f64> {
    check_sides(n)?;
    check_length(side)?;
    Ok(side / (2.0 * (PI / f64::from(n)).sin()))
}

fn check_length(side: f64) -> Result<()> {
    if side > 0.0 && side.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidLength(side))
    }
}

pub fn vertices(spec: &PolygonSpec) -> Vec<Point2> {
    (0..spec.n).map(|j| spec.vertex(j)).collect()
}

/// Half-plane containment test against every edge of the polygon.
///
/// A point counts as inside when its signed distance outside each edge line
/// is at most `tol`.
pub fn contains(outer: &PolygonSpec, p: Point2, tol: f64) -> bool {
    let verts = vertices(outer);
    let n = verts.len();
    (0..n).all(|k| {
        let a = verts[k];
        let b = verts[(k + 1) % n];
        let edge = b.sub(a);
        // counter-clockwise order: interior is to the left of each edge
        let outside = -edge.cross(p.sub(a)) / edge.norm();
        outside <= tol
    })
}
