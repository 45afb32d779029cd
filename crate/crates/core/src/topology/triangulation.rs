//! Ideal triangulations stored as lists of counterclockwise edge triples.
//!
//! Two triangle sides are glued exactly when they carry the same edge label.
//! Because both triangles are oriented counterclockwise the gluing is
//! orientation reversing, so the edge labels alone determine the surface.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::surface::Surface;
use crate::error::{Error, Result};

/// A side of a triangle: `(triangle, slot)` with `slot` in `0..3`.
pub type Side = (usize, usize);

#[derive(Clone)]
pub struct Triangulation {
    surface: Surface,
    triangles: Vec<[usize; 3]>,
    sides: Vec<[Side; 2]>,
    canon: OnceLock<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub n: Vec<Vec<i32>>,
}

impl ExchangeMatrix {
    pub fn size(&self) -> usize {
        self.n.len()
    }

    pub fn get(&self, a: usize, b: usize) -> i32 {
        self.n[a][b]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|a| (0..m).all(|b| self.n[a][b] == -self.n[b][a]))
    }

    pub fn entries_in_range(&self) -> bool {
        self.n.iter().flatten().all(|v| (-2..=2).contains(v))
    }

    /// Matrix mutation at `e`: the exchange matrix of the flipped triangulation.
    pub fn mutate(&self, e: usize) -> Self {
        let m = self.size();
        let mut out = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                out[i][j] = if i == e || j == e {
                    -self.n[i][j]
                } else {
                    let a = self.n[i][e];
                    let b = self.n[e][j];
                    self.n[i][j] + (a.abs() * b + a * b.abs()) / 2
                };
            }
        }
        Self { n: out }
    }

    /// The matrix after renaming edge `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let m = self.size();
        let mut out = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                out[perm[i]][perm[j]] = self.n[i][j];
            }
        }
        Self { n: out }
    }
}

/// Trivalent graph dual to a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatGraph {
    /// Cyclic order of edge ends at each vertex (one vertex per triangle).
    pub vertices: Vec<[usize; 3]>,
    /// Endpoints of each dual edge as `(vertex, slot)` pairs.
    pub edges: Vec<[Side; 2]>,
}

impl FatGraph {
    pub fn is_trivalent(&self) -> bool {
        let mut degree = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            for (v, _) in e {
                degree[*v] += 1;
            }
        }
        degree.iter().all(|d| *d == 3)
    }
}

/// Result of a flip: the new triangulation plus how the quadrilateral moved.
#[derive(Debug, Clone)]
pub struct FlipData {
    pub edge: usize,
    pub t1: usize,
    pub t2: usize,
    /// Old boundary sides of the quadrilateral in ccw order `a, b, c, d`
    /// where the old triangles were `(e, a, b)` and `(e, c, d)`.
    pub old_sides: [Side; 4],
    /// New sides of the same four boundary edges.
    pub new_sides: [Side; 4],
}

impl Triangulation {
    /// Validates a gluing table. Each triangle lists its edges counterclockwise.
    pub fn new(surface: Surface, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if !surface.is_triangulable() {
            return Err(Error::NotTriangulable {
                genus: surface.genus,
                punctures: surface.punctures,
            });
        }
        Surface::new(surface.genus, surface.punctures)?;
        let ne = surface.edge_count();
        let nt = surface.triangle_count();
        if triangles.len() != nt {
            return Err(Error::WrongCount {
                what: "triangles",
                expected: nt,
                found: triangles.len(),
            });
        }
        let mut sides: Vec<Vec<Side>> = vec![Vec::new(); ne];
        for (t, tri) in triangles.iter().enumerate() {
            for (slot, &e) in tri.iter().enumerate() {
                if e >= ne {
                    return Err(Error::EdgeOutOfRange(e));
                }
                sides[e].push((t, slot));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                let e = if tri[0] == tri[1] || tri[0] == tri[2] {
                    tri[0]
                } else {
                    tri[1]
                };
                return Err(Error::SelfFolded(e));
            }
        }
        let mut paired = Vec::with_capacity(ne);
        for (e, s) in sides.into_iter().enumerate() {
            if s.len() != 2 {
                return Err(Error::BadGluing(format!(
                    "edge {e} appears on {} triangle sides, expected 2",
                    s.len()
                )));
            }
            paired.push([s[0], s[1]]);
        }
        let tri = Self {
            surface,
            triangles,
            sides: paired,
            canon: OnceLock::new(),
        };
        let v = tri.vertex_count();
        if v != surface.punctures as usize {
            return Err(Error::BadGluing(format!(
                "gluing has {v} vertices but the surface has {} punctures",
                surface.punctures
            )));
        }
        if !tri.is_connected() {
            return Err(Error::BadGluing("gluing is disconnected".into()));
        }
        Ok(tri)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn num_edges(&self) -> usize {
        self.sides.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_at(&self, side: Side) -> usize {
        self.triangles[side.0][side.1]
    }

    pub fn sides_of(&self, e: usize) -> [Side; 2] {
        self.sides[e]
    }

    /// The side glued to `side`.
    pub fn partner(&self, side: Side) -> Side {
        let [s0, s1] = self.sides[self.edge_at(side)];
        if s0 == side {
            s1
        } else {
            s0
        }
    }

    /// Number of triangle corners incident to each edge, summed.
    pub fn corner_incidences(&self) -> usize {
        self.sides.iter().map(|s| s.len()).sum()
    }

    fn vertex_count(&self) -> usize {
        // Corner k of triangle t sits between slot k-1 and slot k; side k
        // runs from corner k to corner k+1.
        let nt = self.triangles.len();
        let mut parent: Vec<usize> = (0..3 * nt).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for &[(t, j), (u, k)] in &self.sides {
            union(&mut parent, 3 * t + j, 3 * u + (k + 1) % 3);
            union(&mut parent, 3 * t + (j + 1) % 3, 3 * u + k);
        }
        (0..3 * nt)
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }

    fn is_connected(&self) -> bool {
        let nt = self.triangles.len();
        let mut seen = vec![false; nt];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for slot in 0..3 {
                let (u, _) = self.partner((t, slot));
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|s| *s)
    }

    /// `n[a][b]` gets `+1` from every triangle in which `b` is the
    /// counterclockwise successor of `a`, and `-1` when it is the predecessor.
    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        let m = self.num_edges();
        let mut n = vec![vec![0; m]; m];
        for tri in &self.triangles {
            for i in 0..3 {
                let a = tri[i];
                let b = tri[(i + 1) % 3];
                n[a][b] += 1;
                n[b][a] -= 1;
            }
        }
        ExchangeMatrix { n }
    }

    pub fn dual_fat_graph(&self) -> FatGraph {
        FatGraph {
            vertices: self.triangles.clone(),
            edges: self.sides.clone(),
        }
    }

    /// Checks whether `e` can be flipped without creating a self-folded
    /// triangle.
    pub fn flippable(&self, e: usize) -> Result<()> {
        if e >= self.num_edges() {
            return Err(Error::EdgeOutOfRange(e));
        }
        let [(t1, j1), (t2, j2)] = self.sides[e];
        if t1 == t2 {
            return Err(Error::NotFlippable(e, "both sides lie in one triangle".into()));
        }
        let b = self.triangles[t1][(j1 + 2) % 3];
        let c = self.triangles[t2][(j2 + 1) % 3];
        let d = self.triangles[t2][(j2 + 2) % 3];
        let a = self.triangles[t1][(j1 + 1) % 3];
        if b == c || d == a {
            return Err(Error::NotFlippable(
                e,
                "the flip would produce a self-folded triangle".into(),
            ));
        }
        Ok(())
    }

    /// Replaces the diagonal `e` of its quadrilateral by the other diagonal.
    /// The edge label `e` and both triangle indices are reused.
    pub fn flip(&self, e: usize) -> Result<Triangulation> {
        Ok(self.flip_with_data(e)?.0)
    }

    pub fn flip_with_data(&self, e: usize) -> Result<(Triangulation, FlipData)> {
        self.flippable(e)?;
        let [(t1, j1), (t2, j2)] = self.sides[e];
        let sa = (t1, (j1 + 1) % 3);
        let sb = (t1, (j1 + 2) % 3);
        let sc = (t2, (j2 + 1) % 3);
        let sd = (t2, (j2 + 2) % 3);
        let [a, b, c, d] = [sa, sb, sc, sd].map(|s| self.edge_at(s));
        let mut triangles = self.triangles.clone();
        triangles[t1] = [e, b, c];
        triangles[t2] = [e, d, a];
        let new = Triangulation::new(self.surface, triangles)?;
        let data = FlipData {
            edge: e,
            t1,
            t2,
            old_sides: [sa, sb, sc, sd],
            new_sides: [(t2, 2), (t1, 1), (t1, 2), (t2, 1)],
        };
        Ok((new, data))
    }

    pub fn flip_sequence(&self, edges: &[usize]) -> Result<Triangulation> {
        let mut t = self.clone();
        for &e in edges {
            t = t.flip(e)?;
        }
        Ok(t)
    }

    /// Canonical code: the lexicographically smallest relabeling obtained by
    /// traversing the dual graph from every starting side.
    pub fn canonical_code(&self) -> &[usize] {
        self.canon.get_or_init(|| {
            let mut best: Option<Vec<usize>> = None;
            for t in 0..self.num_triangles() {
                for r in 0..3 {
                    let code = self.code_from(t, r);
                    if best.as_ref().map_or(true, |b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            best.unwrap_or_default()
        })
    }

    fn code_from(&self, t0: usize, r0: usize) -> Vec<usize> {
        let nt = self.num_triangles();
        let mut rot = vec![usize::MAX; nt];
        let mut edge_label = vec![usize::MAX; self.num_edges()];
        let mut order = Vec::with_capacity(nt);
        let mut next_edge = 0;
        rot[t0] = r0;
        order.push(t0);
        let mut head = 0;
        let mut code = Vec::with_capacity(3 * nt);
        while head < order.len() {
            let t = order[head];
            head += 1;
            for k in 0..3 {
                let slot = (rot[t] + k) % 3;
                let e = self.triangles[t][slot];
                if edge_label[e] == usize::MAX {
                    edge_label[e] = next_edge;
                    next_edge += 1;
                }
                code.push(edge_label[e]);
                let (u, j) = self.partner((t, slot));
                if rot[u] == usize::MAX {
                    rot[u] = j;
                    order.push(u);
                }
            }
        }
        code
    }

    pub fn is_isomorphic(&self, other: &Triangulation) -> bool {
        self.surface == other.surface && self.canonical_code() == other.canonical_code()
    }
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface && self.triangles == other.triangles
    }
}

impl Eq for Triangulation {}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Triangulation")
            .field("surface", &self.surface)
            .field("triangles", &self.triangles)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c11() -> Triangulation {
        Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 1, 2]]).unwrap()
    }

    #[test]
    fn c11_counts_and_matrix() {
        let t = c11();
        assert_eq!(t.num_edges(), 3);
        assert_eq!(t.num_triangles(), 2);
        let n = t.exchange_matrix();
        // Both triangles list a -> b -> c counterclockwise, so each
        // successor pair gets +1 twice.
        assert_eq!(n.n, vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);
    }

    #[test]
    fn rejects_unpaired_side() {
        let r = Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 1, 1]]);
        assert!(r.is_err());
        let r = Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 1, 0]]);
        assert!(matches!(r, Err(Error::SelfFolded(_))));
    }

    #[test]
    fn rejects_wrong_counts() {
        let r = Triangulation::new(Surface::c11(), vec![[0, 1, 2]]);
        assert!(matches!(r, Err(Error::WrongCount { .. })));
    }

    #[test]
    fn rejects_wrong_topology() {
        // Three edges, two triangles, but glued as a sphere with three
        // punctures would need different counts; relabel to break vertices.
        let r = Triangulation::new(Surface::c11(), vec![[0, 1, 2], [0, 2, 1]]);
        assert!(matches!(r, Err(Error::BadGluing(_))));
    }

    #[test]
    fn c11_flip_negates_row_and_column() {
        let t = c11();
        let n = t.exchange_matrix();
        for e in 0..3 {
            let f = t.flip(e).unwrap();
            let m = f.exchange_matrix();
            for i in 0..3 {
                assert_eq!(m.n[i][e], -n.n[i][e]);
                assert_eq!(m.n[e][i], -n.n[e][i]);
            }
            assert_eq!(m, n.mutate(e));
        }
    }

    #[test]
    fn flip_twice_is_identity_up_to_relabeling() {
        let t = c11();
        for e in 0..3 {
            let ff = t.flip(e).unwrap().flip(e).unwrap();
            assert!(ff.is_isomorphic(&t));
        }
    }

    #[test]
    fn fat_graph_is_dual() {
        let g = c11().dual_fat_graph();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 3);
        assert!(g.is_trivalent());
        for v in &g.vertices {
            let mut s = v.to_vec();
            s.sort();
            assert_eq!(s, vec![0, 1, 2]);
        }
    }
}
