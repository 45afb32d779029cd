//! Surfaces, ideal triangulations, fat-graph walks and pants decompositions.

mod curve;
mod pants;
mod reference;
mod schema;
mod surface;
mod triangulation;

pub use curve::{CurvePath, Step, Turn, WalkState};
pub use pants::{
    CutCurve, DehnConstraint, DehnParam, DehnViolation, GeneratorCurve, GeneratorSet, Leg,
    MoveLocation, MsMove, Pants, PantsDecomposition,
};
pub use reference::{c04_edge, Reference, SurfaceKind, C04_EDGES};
pub use schema::{parse_turns, CurveSpec, Orientation, PantsSpec, SurfaceData, SurfaceFile};
pub use surface::Surface;
pub use triangulation::{ExchangeMatrix, FatGraph, FlipData, Side, Triangulation};

use rand::Rng;

/// A random triangulation obtained from `start` by `steps` random flips,
/// together with the flip sequence actually applied.
pub fn random_flips<R: Rng>(start: &Triangulation, steps: usize, rng: &mut R) -> (Triangulation, Vec<usize>) {
    let mut tri = start.clone();
    let mut seq = Vec::with_capacity(steps);
    for _ in 0..steps {
        let candidates: Vec<usize> = (0..tri.num_edges())
            .filter(|&e| tri.flippable(e).is_ok())
            .collect();
        if candidates.is_empty() {
            break;
        }
        let e = candidates[rng.gen_range(0..candidates.len())];
        tri = tri.flip(e).expect("flippable edge");
        seq.push(e);
    }
    (tri, seq)
}
