//! Circumscription with the outer polygon shifted sideways along the x axis.
//!
//! Lengths are scaled by the outer circumradius. The inner n-gon has
//! circumradius `ρ = r_n/r_m` and sits at the origin in standard position;
//! the outer m-gon has unit circumradius and center `(u, 0)`. A contact of
//! inner vertex `j_i` with outer edge `j_o` at edge parameter `t` reads, after
//! rotating by `−j_o·φ_m` and with `θ = j_i·φ_n − j_o·φ_m`,
//!
//! ```text
//!  u·cos(j_o·φ_m) + t·(cos φ_m − 1) − ρ·cos θ = −1
//! −u·sin(j_o·φ_m) + t·sin φ_m       − ρ·sin θ =  0
//! ```
//!
//! which is linear in `u`, `ρ` and every free `t`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circumscribe::{tight_rotated, tight_standard};
use crate::error::{check_sides, Error, Result};
use crate::polygon::{contains, vertices, Point2, PolygonSpec};

/// Pivots smaller than this make the system singular.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

/// Tolerance of the geometric containment check on a solution.
pub const CONTAINMENT_TOLERANCE: f64 = 1e-9;

/// Slack allowed on `t ∈ [0, 1]` and on the residuals of surplus equations.
const CONSISTENCY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContactKind {
    VertexOnVertex,
    VertexOnEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactConstraint {
    pub kind: ContactKind,
    pub j_i: u32,
    pub j_o: u32,
    /// Pinned edge parameter. Vertex-on-vertex contacts are pinned at 0.
    pub t_fixed: Option<f64>,
}

impl ContactConstraint {
    /// Inner vertex `j_i` coincides with outer vertex `j_o`.
    pub fn vertex_on_vertex(j_i: u32, j_o: u32) -> Self {
        Self { kind: ContactKind::VertexOnVertex, j_i, j_o, t_fixed: Some(0.0) }
    }

    /// Inner vertex `j_i` lies somewhere on outer edge `j_o`.
    pub fn vertex_on_edge(j_i: u32, j_o: u32) -> Self {
        Self { kind: ContactKind::VertexOnEdge, j_i, j_o, t_fixed: None }
    }

    /// Inner vertex `j_i` lies on outer edge `j_o` at parameter `t`.
    pub fn pinned(j_i: u32, j_o: u32, t: f64) -> Self {
        Self { kind: ContactKind::VertexOnEdge, j_i, j_o, t_fixed: Some(t) }
    }

    fn t_pinned(&self) -> Option<f64> {
        match self.kind {
            ContactKind::VertexOnVertex => Some(0.0),
            ContactKind::VertexOnEdge => self.t_fixed,
        }
    }

    fn check(&self, n: u32, m: u32) -> Result<()> {
        if self.j_i >= n {
            return Err(Error::IndexOutOfRange { what: "inner vertex", index: self.j_i, bound: n });
        }
        if self.j_o >= m {
            return Err(Error::IndexOutOfRange { what: "outer edge", index: self.j_o, bound: m });
        }
        if let Some(t) = self.t_pinned() {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidConfiguration(format!("pinned t = {t} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatedSolution {
    pub n: u32,
    pub m: u32,
    /// r_m / r_n.
    pub ratio: f64,
    /// Outer center offset z / r_m along the x axis.
    pub shift: f64,
    /// Edge parameter of each constraint, in input order.
    pub t_values: Vec<f64>,
}

impl TranslatedSolution {
    pub fn inner(&self) -> PolygonSpec {
        PolygonSpec::new(self.n, 1.0 / self.ratio).expect("validated solution")
    }

    pub fn outer(&self) -> PolygonSpec {
        PolygonSpec::new(self.m, 1.0)
            .expect("validated solution")
            .with_center(Point2::new(self.shift, 0.0))
    }
}

/// Solves for shift and ratio from the given contacts.
pub fn solve_translated(n: u32, m: u32, constraints: &[ContactConstraint]) -> Result<TranslatedSolution> {
    solve(n, m, None, constraints)
}

/// Solves for the ratio with the shift held at `shift`. With `shift = 0` and
/// a single vertex-on-edge contact this is the concentric problem.
pub fn solve_with_shift(
    n: u32,
    m: u32,
    shift: f64,
    constraints: &[ContactConstraint],
) -> Result<TranslatedSolution> {
    solve(n, m, Some(shift), constraints)
}

fn solve(n: u32, m: u32, shift: Option<f64>, constraints: &[ContactConstraint]) -> Result<TranslatedSolution> {
    check_sides(n)?;
    check_sides(m)?;
    for c in constraints {
        c.check(n, m)?;
    }
    let phi_n = 2.0 * PI / f64::from(n);
    let phi_m = 2.0 * PI / f64::from(m);

    // unknown layout: [u?] ρ, free t...
    let u_col = shift.is_none() as usize;
    let free: Vec<usize> = (0..constraints.len())
        .filter(|&i| constraints[i].t_pinned().is_none())
        .collect();
    let cols = u_col + 1 + free.len();

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        let a = f64::from(c.j_o) * phi_m;
        let theta = f64::from(c.j_i) * phi_n - a;
        let eqs = [
            (a.cos(), phi_m.cos() - 1.0, -theta.cos(), -1.0),
            (-a.sin(), phi_m.sin(), -theta.sin(), 0.0),
        ];
        for (cu, ct, crho, rhs) in eqs {
            let mut row = vec![0.0; cols + 1];
            let mut rhs = rhs;
            match shift {
                Some(u) => rhs -= cu * u,
                None => row[0] = cu,
            }
            row[u_col] = crho;
            match c.t_pinned() {
                Some(t) => rhs -= ct * t,
                None => {
                    let k = free.iter().position(|&f| f == i).unwrap();
                    row[u_col + 1 + k] = ct;
                }
            }
            row[cols] = rhs;
            let trivial = row.iter().all(|x| x.abs() < 1e-15);
            if !trivial {
                rows.push(row);
            }
        }
    }

    let x = eliminate(rows, cols)?;
    let u = shift.unwrap_or(x[0]);
    let rho = x[u_col];
    if !(rho > 0.0) {
        return Err(Error::InvalidConfiguration(format!("non-positive radius ratio {rho}")));
    }
    let t_values: Vec<f64> = constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.t_pinned()
                .unwrap_or_else(|| x[u_col + 1 + free.iter().position(|&f| f == i).unwrap()])
        })
        .collect();
    if let Some(t) = t_values
        .iter()
        .find(|t| !(-CONSISTENCY_TOLERANCE..=1.0 + CONSISTENCY_TOLERANCE).contains(*t))
    {
        return Err(Error::InvalidConfiguration(format!("contact parameter t = {t} off the edge")));
    }

    let solution = TranslatedSolution { n, m, ratio: 1.0 / rho, shift: u, t_values };
    let outer = solution.outer();
    if !vertices(&solution.inner())
        .into_iter()
        .all(|v| contains(&outer, v, CONTAINMENT_TOLERANCE))
    {
        return Err(Error::InvalidConfiguration(
            "inner polygon is not contained in the shifted outer polygon".into(),
        ));
    }
    Ok(solution)
}

/// Gaussian elimination with partial pivoting on an augmented system with
/// at least `cols` rows. Surplus rows must reduce to zero.
fn eliminate(mut rows: Vec<Vec<f64>>, cols: usize) -> Result<Vec<f64>> {
    if rows.len() < cols {
        return Err(Error::DegenerateConfiguration(format!(
            "{} independent equations for {cols} unknowns",
            rows.len()
        )));
    }
    for col in 0..cols {
        let pivot = (col..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
            .unwrap();
        if rows[pivot][col].abs() < PIVOT_THRESHOLD {
            return Err(Error::DegenerateConfiguration(format!("singular in unknown {col}")));
        }
        rows.swap(col, pivot);
        for r in 0..rows.len() {
            if r != col {
                let f = rows[r][col] / rows[col][col];
                if f != 0.0 {
                    for k in col..=cols {
                        rows[r][k] -= f * rows[col][k];
                    }
                }
            }
        }
    }
    if let Some(r) = rows[cols..].iter().find(|r| r[cols].abs() > CONSISTENCY_TOLERANCE) {
        return Err(Error::InvalidConfiguration(format!(
            "contacts are inconsistent (residual {:e})",
            r[cols]
        )));
    }
    Ok((0..cols).map(|c| rows[c][cols] / rows[c][c]).collect())
}

/// Named contact configurations with known closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    TriangleInSquare,
    SquareInTriangle,
    TriangleInPentagon,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::TriangleInSquare, Preset::SquareInTriangle, Preset::TriangleInPentagon];

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "3-4" => Ok(Preset::TriangleInSquare),
            "4-3" => Ok(Preset::SquareInTriangle),
            "3-5" => Ok(Preset::TriangleInPentagon),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn for_pair(n: u32, m: u32) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.sides() == (n, m))
            .ok_or(Error::UnsupportedPair(n, m))
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::TriangleInSquare => "3-4",
            Preset::SquareInTriangle => "4-3",
            Preset::TriangleInPentagon => "3-5",
        }
    }

    /// `(n, m)`: inner and outer side counts.
    pub fn sides(self) -> (u32, u32) {
        match self {
            Preset::TriangleInSquare => (3, 4),
            Preset::SquareInTriangle => (4, 3),
            Preset::TriangleInPentagon => (3, 5),
        }
    }

    pub fn constraints(self) -> Vec<ContactConstraint> {
        match self {
            // vertex 0 pressed into the corner, vertex 1 on the next edge
            Preset::TriangleInSquare | Preset::TriangleInPentagon => vec![
                ContactConstraint::vertex_on_vertex(0, 0),
                ContactConstraint::vertex_on_edge(1, 1),
            ],
            // vertex 2 at the midpoint of edge 1, vertex 1 on edge 0
            Preset::SquareInTriangle => vec![
                ContactConstraint::pinned(2, 1, 0.5),
                ContactConstraint::vertex_on_edge(1, 0),
            ],
        }
    }

    pub fn solve(self) -> Result<TranslatedSolution> {
        let (n, m) = self.sides();
        solve_translated(n, m, &self.constraints())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranslationComparison {
    pub n: u32,
    pub m: u32,
    pub translated: f64,
    pub rotated: f64,
    pub standard: f64,
    /// translated < rotated ≤ standard
    pub improves: bool,
}

/// Translated preset ratio next to the concentric standard and rotated ones.
pub fn translated_vs_concentric(n: u32, m: u32) -> Result<TranslationComparison> {
    let translated = Preset::for_pair(n, m)?.solve()?.ratio;
    let standard = tight_standard(n, m)?.ratio;
    let rotated = tight_rotated(n, m)?.base.ratio;
    Ok(TranslationComparison {
        n,
        m,
        translated,
        rotated,
        standard,
        improves: translated < rotated && rotated <= standard + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn triangle_in_square() {
        let s = Preset::TriangleInSquare.solve().unwrap();
        assert!((s.shift - (1.0 - 2.0 / SQRT3)).abs() < 1e-12);
        assert!((s.ratio - 1.183_012_7).abs() < 1e-7);
        // vertex 0 sits in the corner at (1 + u, 0), so r_n/r_m = 1 + u
        assert!((1.0 / s.ratio - (1.0 + s.shift)).abs() < 1e-12);
    }

    #[test]
    fn square_in_triangle() {
        let s = Preset::SquareInTriangle.solve().unwrap();
        assert!((1.0 / s.ratio - 0.75 * (SQRT3 - 1.0)).abs() < 1e-12);
        assert!((s.shift - (5.0 - 3f64.powf(1.5)) / 4.0).abs() < 1e-12);
        assert!((s.ratio - 1.821_367).abs() < 1e-6);
        assert_eq!(s.t_values[0], 0.5);
    }

    #[test]
    fn triangle_in_pentagon() {
        let s = Preset::TriangleInPentagon.solve().unwrap();
        assert!((s.ratio - 1.151_275_0).abs() < 1e-7);
    }

    #[test]
    fn presets_parse() {
        for p in Preset::ALL {
            assert_eq!(Preset::parse(p.name()).unwrap(), p);
            let (n, m) = p.sides();
            assert_eq!(Preset::for_pair(n, m).unwrap(), p);
        }
        assert_eq!(Preset::parse("5-3"), Err(Error::UnknownPreset("5-3".into())));
        assert_eq!(Preset::for_pair(5, 7), Err(Error::UnsupportedPair(5, 7)));
    }

    #[test]
    fn comparison_chain() {
        for (n, m) in [(3, 4), (4, 3), (3, 5)] {
            let c = translated_vs_concentric(n, m).unwrap();
            assert!(c.improves, "{c:?}");
        }
        let c = translated_vs_concentric(3, 4).unwrap();
        assert!((c.standard - 1.366_025_40).abs() < 1e-8);
    }

    #[test]
    fn singular_and_underdetermined_systems() {
        // a single free contact leaves three unknowns with two equations
        let r = solve_translated(3, 4, &[ContactConstraint::vertex_on_edge(1, 1)]);
        assert!(matches!(r, Err(Error::DegenerateConfiguration(_))));
        // the same contact twice adds no information
        let twice = [ContactConstraint::vertex_on_edge(1, 1), ContactConstraint::vertex_on_edge(1, 1)];
        assert!(matches!(solve_translated(3, 4, &twice), Err(Error::DegenerateConfiguration(_))));
    }

    #[test]
    fn impossible_contacts_are_rejected() {
        // both corners of the square on one triangle vertex
        let r = solve_translated(
            3,
            4,
            &[ContactConstraint::vertex_on_vertex(0, 0), ContactConstraint::vertex_on_vertex(0, 2)],
        );
        assert!(r.is_err());
        let out_of_range = solve_translated(3, 4, &[ContactConstraint::vertex_on_edge(3, 0)]);
        assert!(matches!(out_of_range, Err(Error::IndexOutOfRange { .. })));
        let bad_t = solve_translated(3, 4, &[ContactConstraint::pinned(0, 0, 1.5)]);
        assert!(matches!(bad_t, Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn non_tight_contact_fails_containment() {
        // vertex 0 on edge 0 concentric is not the tight contact for (3, 4)
        let r = solve_with_shift(3, 4, 0.0, &[ContactConstraint::vertex_on_edge(0, 0)]);
        assert!(r.is_err());
    }
}
