//! Pants decompositions, Dehn parameters and Moore-Seiberg moves as pure
//! bookkeeping on the marking graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::curve::CurvePath;
use super::reference::{Reference, SurfaceKind};
use super::surface::Surface;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Leg {
    /// Internal cut curve, by index.
    Curve(usize),
    /// Boundary component (puncture), by index.
    Boundary(usize),
}

/// A vertex of the marking graph: three legs in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pants {
    pub legs: [Leg; 3],
    /// Net number of braidings applied to this pair of pants.
    #[serde(default)]
    pub braid: i32,
}

impl Pants {
    pub fn new(legs: [Leg; 3]) -> Self {
        Self { legs, braid: 0 }
    }

    fn canonical(&self) -> ([Leg; 3], i32) {
        let rots = [0, 1, 2].map(|k| [self.legs[k], self.legs[(k + 1) % 3], self.legs[(k + 2) % 3]]);
        (*rots.iter().min().expect("three rotations"), self.braid)
    }

    fn rotated_to(&self, leg: Leg) -> Option<[Leg; 3]> {
        let k = self.legs.iter().position(|l| *l == leg)?;
        Some([self.legs[k], self.legs[(k + 1) % 3], self.legs[(k + 2) % 3]])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutCurve {
    pub name: String,
    /// Slope relative to the handle, meaningful when the curve bounds a
    /// one-holed torus; `(1, 0)` is the reference curve.
    #[serde(default = "default_slope")]
    pub slope: (i64, i64),
}

fn default_slope() -> (i64, i64) {
    (1, 0)
}

fn normalize_slope((p, q): (i64, i64)) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub surface: Surface,
    pub curves: Vec<CutCurve>,
    pub pants: Vec<Pants>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MsMove {
    F,
    S,
    B,
    Z,
}

impl MsMove {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(MsMove::F),
            "S" | "s" => Ok(MsMove::S),
            "B" | "b" => Ok(MsMove::B),
            "Z" | "z" => Ok(MsMove::Z),
            _ => Err(Error::Parse(format!("unknown move {s}"))),
        }
    }
}

/// Where a move acts: a cut curve for F and S, a pants vertex (and leg for B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveLocation {
    Curve(usize),
    Pants { pants: usize, leg: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DehnConstraint {
    /// `r_e >= 0`
    NonNegativeIntersection,
    /// `r_e = 0` forces `s_e >= 0`
    NonNegativeTwist,
    /// intersection numbers around a pair of pants sum to an even number
    EvenPants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehnViolation {
    pub constraint: DehnConstraint,
    /// Curve index for the first two constraints, pants index for the third.
    pub location: usize,
}

impl fmt::Display for DehnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constraint {
            DehnConstraint::NonNegativeIntersection => {
                write!(f, "(i) r < 0 at curve {}", self.location)
            }
            DehnConstraint::NonNegativeTwist => {
                write!(f, "(ii) r = 0 but s < 0 at curve {}", self.location)
            }
            DehnConstraint::EvenPants => {
                write!(f, "(iii) odd intersection sum at pants {}", self.location)
            }
        }
    }
}

/// Dehn parameters `(r_e, s_e)` indexed by the cut curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DehnParam {
    pub params: Vec<(i64, i64)>,
}

impl DehnParam {
    pub fn zeros(h: usize) -> Self {
        Self {
            params: vec![(0, 0); h],
        }
    }

    pub fn single(h: usize, e: usize, r: i64, s: i64) -> Self {
        let mut d = Self::zeros(h);
        d.params[e] = (r, s);
        d
    }
}

impl PantsDecomposition {
    pub fn new(surface: Surface, curves: Vec<CutCurve>, pants: Vec<Pants>) -> Result<Self> {
        let pd = Self {
            surface,
            curves,
            pants,
        };
        pd.validate()?;
        Ok(pd)
    }

    pub fn validate(&self) -> Result<()> {
        let h = self.surface.cut_curve_count();
        if self.curves.len() != h {
            return Err(Error::WrongCount {
                what: "cut curves",
                expected: h,
                found: self.curves.len(),
            });
        }
        let np = self.surface.pants_count();
        if self.pants.len() != np {
            return Err(Error::WrongCount {
                what: "pairs of pants",
                expected: np,
                found: self.pants.len(),
            });
        }
        let mut curve_uses = vec![0usize; h];
        let mut boundary_uses = vec![0usize; self.surface.punctures as usize];
        for p in &self.pants {
            for leg in &p.legs {
                match *leg {
                    Leg::Curve(c) if c < h => curve_uses[c] += 1,
                    Leg::Boundary(b) if b < boundary_uses.len() => boundary_uses[b] += 1,
                    other => return Err(Error::BadPants(format!("leg {other:?} out of range"))),
                }
            }
        }
        if let Some(c) = curve_uses.iter().position(|u| *u != 2) {
            return Err(Error::BadPants(format!(
                "curve {c} bounds {} pants legs, expected 2",
                curve_uses[c]
            )));
        }
        if let Some(b) = boundary_uses.iter().position(|u| *u != 1) {
            return Err(Error::BadPants(format!(
                "boundary {b} appears {} times, expected once",
                boundary_uses[b]
            )));
        }
        // Connectivity of the marking graph.
        let mut seen = vec![false; np];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for leg in &self.pants[i].legs {
                if let Leg::Curve(c) = leg {
                    for (j, q) in self.pants.iter().enumerate() {
                        if !seen[j] && q.legs.contains(&Leg::Curve(*c)) {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        if !seen.iter().all(|s| *s) {
            return Err(Error::BadPants("marking graph is disconnected".into()));
        }
        Ok(())
    }

    /// Standard decomposition of the once-punctured torus: one pair of pants
    /// whose legs are the cut curve twice and the puncture.
    pub fn standard_c11() -> Self {
        Self {
            surface: Surface::c11(),
            curves: vec![CutCurve {
                name: "s".into(),
                slope: (1, 0),
            }],
            pants: vec![Pants::new([Leg::Curve(0), Leg::Curve(0), Leg::Boundary(0)])],
        }
    }

    /// s-channel decomposition of the four-punctured sphere: punctures
    /// `1, 2` on one side and `3, 4` on the other (0-based labels 0..3).
    pub fn standard_c04() -> Self {
        Self {
            surface: Surface::c04(),
            curves: vec![CutCurve {
                name: "s".into(),
                slope: (1, 0),
            }],
            pants: vec![
                Pants::new([Leg::Curve(0), Leg::Boundary(0), Leg::Boundary(1)]),
                Pants::new([Leg::Curve(0), Leg::Boundary(2), Leg::Boundary(3)]),
            ],
        }
    }

    /// Pants containing the two legs of curve `e`.
    pub fn pants_of(&self, e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, p) in self.pants.iter().enumerate() {
            for leg in &p.legs {
                if *leg == Leg::Curve(e) {
                    out.push(i);
                }
            }
        }
        out
    }

    /// Type of the subsurface `C_e` obtained by gluing the pants adjacent to
    /// the curve `e`.
    pub fn subsurface_kind(&self, e: usize) -> Result<SurfaceKind> {
        if e >= self.curves.len() {
            return Err(Error::BadPants(format!("no curve {e}")));
        }
        let ps = self.pants_of(e);
        if ps[0] == ps[1] {
            Ok(SurfaceKind::C11)
        } else {
            Ok(SurfaceKind::C04)
        }
    }

    /// Checks constraints (i)-(iii) and returns the parameters unchanged when
    /// all hold, or every violation found.
    pub fn validate_dehn(&self, dp: &DehnParam) -> std::result::Result<DehnParam, Vec<DehnViolation>> {
        let mut v = Vec::new();
        if dp.params.len() != self.curves.len() {
            return Err(vec![]);
        }
        for (e, &(r, s)) in dp.params.iter().enumerate() {
            if r < 0 {
                v.push(DehnViolation {
                    constraint: DehnConstraint::NonNegativeIntersection,
                    location: e,
                });
            }
            if r == 0 && s < 0 {
                v.push(DehnViolation {
                    constraint: DehnConstraint::NonNegativeTwist,
                    location: e,
                });
            }
        }
        for (i, p) in self.pants.iter().enumerate() {
            let sum: i64 = p
                .legs
                .iter()
                .map(|l| match l {
                    Leg::Curve(c) => dp.params[*c].0,
                    Leg::Boundary(_) => 0,
                })
                .sum();
            if sum.rem_euclid(2) != 0 {
                v.push(DehnViolation {
                    constraint: DehnConstraint::EvenPants,
                    location: i,
                });
            }
        }
        if v.is_empty() {
            Ok(dp.clone())
        } else {
            Err(v)
        }
    }

    /// Applies an elementary move.
    pub fn ms_move(&self, mv: MsMove, at: MoveLocation) -> Result<Self> {
        let mut out = self.clone();
        match (mv, at) {
            (MsMove::F, MoveLocation::Curve(c)) => {
                let ps = self.pants_of(c);
                if ps.len() != 2 || ps[0] == ps[1] {
                    return Err(Error::MoveNotApplicable(format!(
                        "F needs curve {c} to separate two distinct pants"
                    )));
                }
                let [_, x1, x2] = self.pants[ps[0]].rotated_to(Leg::Curve(c)).expect("leg");
                let [_, x3, x4] = self.pants[ps[1]].rotated_to(Leg::Curve(c)).expect("leg");
                out.pants[ps[0]].legs = [Leg::Curve(c), x2, x3];
                out.pants[ps[1]].legs = [Leg::Curve(c), x4, x1];
            }
            (MsMove::S, MoveLocation::Curve(c)) => {
                let ps = self.pants_of(c);
                if ps.len() != 2 || ps[0] != ps[1] {
                    return Err(Error::MoveNotApplicable(format!(
                        "S needs curve {c} to bound a one-holed torus"
                    )));
                }
                let (p, q) = self.curves[c].slope;
                out.curves[c].slope = normalize_slope((-q, p));
            }
            (MsMove::B, MoveLocation::Pants { pants, leg }) => {
                let p = out
                    .pants
                    .get_mut(pants)
                    .ok_or_else(|| Error::MoveNotApplicable(format!("no pants {pants}")))?;
                if leg > 2 {
                    return Err(Error::MoveNotApplicable(format!("no leg {leg}")));
                }
                p.legs.swap(leg, (leg + 1) % 3);
                p.braid += 1;
            }
            (MsMove::Z, MoveLocation::Pants { pants, .. }) => {
                let p = out
                    .pants
                    .get_mut(pants)
                    .ok_or_else(|| Error::MoveNotApplicable(format!("no pants {pants}")))?;
                p.legs.rotate_left(1);
            }
            (mv, at) => {
                return Err(Error::MoveNotApplicable(format!("{mv:?} cannot act at {at:?}")));
            }
        }
        Ok(out)
    }

    /// Equality up to reordering of pants and cyclic rotation of legs.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.surface != other.surface || self.curves.len() != other.curves.len() {
            return false;
        }
        let slopes = |pd: &Self| -> Vec<(i64, i64)> {
            pd.curves.iter().map(|c| normalize_slope(c.slope)).collect()
        };
        let canon = |pd: &Self| {
            let mut v: Vec<_> = pd.pants.iter().map(|p| p.canonical()).collect();
            v.sort();
            v
        };
        slopes(self) == slopes(other) && canon(self) == canon(other)
    }

    /// The three generator curves attached to cut curve `e` together with
    /// the boundary curves, realised in the reference triangulation of `C_e`.
    pub fn generator_curves(&self, e: usize) -> Result<GeneratorSet> {
        let kind = self.subsurface_kind(e)?;
        let reference = Reference::get(kind);
        let h = self.curves.len();
        let r = match kind {
            SurfaceKind::C11 => 1,
            SurfaceKind::C04 => 2,
        };
        let mut curves = Vec::new();
        for (name, dehn) in [
            ("s", DehnParam::single(h, e, 0, 1)),
            ("t", DehnParam::single(h, e, r, 0)),
            ("u", DehnParam::single(h, e, r, 1)),
        ] {
            curves.push(GeneratorCurve {
                name: name.to_string(),
                dehn,
                path: reference.curve(name)?.clone(),
            });
        }
        Ok(GeneratorSet {
            kind,
            reference,
            curves,
        })
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorCurve {
    pub name: String,
    pub dehn: DehnParam,
    pub path: CurvePath,
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub kind: SurfaceKind,
    pub reference: Reference,
    pub curves: Vec<GeneratorCurve>,
}

impl GeneratorSet {
    pub fn get(&self, name: &str) -> Option<&GeneratorCurve> {
        self.curves.iter().find(|c| c.name == name)
    }
}
