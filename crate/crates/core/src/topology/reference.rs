//! Stored reference triangulations of the once-punctured torus and the
//! four-punctured sphere together with their generator curves.
//!
//! Orientation conventions are chosen so that, with the holonomy matrices of
//! `classical::holonomy`, every trace polynomial has positive coefficients
//! and the channel labels `s, t, u` satisfy the standard relations in that
//! order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::curve::{CurvePath, Turn};
use super::surface::Surface;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// Once-punctured torus.
    C11,
    /// Four-punctured sphere.
    C04,
}

impl SurfaceKind {
    pub fn surface(self) -> Surface {
        match self {
            SurfaceKind::C11 => Surface::c11(),
            SurfaceKind::C04 => Surface::c04(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::C11 => "c11",
            SurfaceKind::C04 => "c04",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c11" | "c_11" | "c1,1" => Ok(SurfaceKind::C11),
            "c04" | "c_04" | "c0,4" => Ok(SurfaceKind::C04),
            other => Err(Error::UnsupportedSubsurface(other.to_string())),
        }
    }

    /// Names of the boundary (peripheral) curves.
    pub fn boundary_names(self) -> &'static [&'static str] {
        match self {
            SurfaceKind::C11 => &["L0"],
            SurfaceKind::C04 => &["L1", "L2", "L3", "L4"],
        }
    }
}

/// A reference triangulation with named curves.
#[derive(Debug, Clone)]
pub struct Reference {
    pub kind: SurfaceKind,
    pub triangulation: Triangulation,
    pub curves: BTreeMap<String, CurvePath>,
}

impl Reference {
    pub fn curve(&self, name: &str) -> Result<&CurvePath> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::MissingOperand(name.to_string()))
    }

    pub fn get(kind: SurfaceKind) -> Reference {
        match kind {
            SurfaceKind::C11 => c11(),
            SurfaceKind::C04 => c04(),
        }
    }

    /// Generator curves `s, t, u` followed by the boundary curves.
    pub fn generator_names(&self) -> Vec<&'static str> {
        let mut v = vec!["s", "t", "u"];
        v.extend_from_slice(self.kind.boundary_names());
        v
    }
}

/// Edges `a = 0, b = 1, c = 2`; both triangles read `a, b, c` counterclockwise.
pub fn c11() -> Reference {
    let tri = Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 1, 2]])
        .expect("reference gluing is valid");
    let mut curves = BTreeMap::new();
    let mut add = |name: &str, seq: &[usize]| {
        let p = CurvePath::from_crossings(&tri, seq).expect("reference curve closes");
        curves.insert(name.to_string(), p);
    };
    add("s", &[0, 2]);
    add("t", &[1, 2]);
    add("u", &[0, 1]);
    add("L0", &[0, 1, 2, 0, 1, 2]);
    // The second smoothing of s and t, crossing a, c, b, c.
    let v = CurvePath::from_turns(&tri, (0, 0), &[Turn::Left, Turn::Left, Turn::Right, Turn::Right])
        .expect("reference curve closes");
    curves.insert("v".to_string(), v);
    Reference {
        kind: SurfaceKind::C11,
        triangulation: tri,
        curves,
    }
}

/// Edge labels for the tetrahedral triangulation of the four-punctured
/// sphere: edge `ij` joins punctures `i` and `j`.
pub const C04_EDGES: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn c04_edge(i: u8, j: u8) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    C04_EDGES
        .iter()
        .position(|&p| p == (i, j))
        .expect("edge between distinct punctures")
}

/// The boundary of a tetrahedron, faces listed counterclockwise.
pub fn c04() -> Reference {
    let faces: [[u8; 3]; 4] = [[3, 2, 1], [2, 4, 1], [4, 3, 1], [3, 4, 2]];
    let triangles = faces
        .iter()
        .map(|&[a, b, c]| [c04_edge(a, b), c04_edge(b, c), c04_edge(c, a)])
        .collect();
    let tri = Triangulation::new(Surface::c04(), triangles).expect("reference gluing is valid");
    let e = c04_edge;
    let mut curves = BTreeMap::new();
    let mut add = |name: &str, seq: &[usize]| {
        let p = CurvePath::from_crossings(&tri, seq).expect("reference curve closes");
        curves.insert(name.to_string(), p);
    };
    // s separates {1,2} from {3,4}, t separates {1,4} from {2,3},
    // u separates {1,3} from {2,4}.
    add("s", &[e(1, 3), e(2, 3), e(2, 4), e(1, 4)]);
    add("t", &[e(1, 2), e(1, 3), e(3, 4), e(2, 4)]);
    add("u", &[e(1, 2), e(2, 3), e(3, 4), e(1, 4)]);
    add("L1", &[e(1, 2), e(1, 3), e(1, 4)]);
    add("L2", &[e(1, 2), e(2, 3), e(2, 4)]);
    add("L3", &[e(1, 3), e(2, 3), e(3, 4)]);
    add("L4", &[e(1, 4), e(2, 4), e(3, 4)]);
    Reference {
        kind: SurfaceKind::C04,
        triangulation: tri,
        curves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_build() {
        let r = c11();
        assert_eq!(r.curves.len(), 5);
        let r = c04();
        assert_eq!(r.triangulation.num_edges(), 6);
        assert_eq!(r.curves.len(), 7);
        let n = r.triangulation.exchange_matrix();
        assert!(n.is_antisymmetric());
        assert!(n.entries_in_range());
    }
}
