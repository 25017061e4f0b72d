//! Seeded instance families.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AxisRect, ConvexPolygon, GeomObject, Point2};
use crate::lower_bound::{base_body, realize_f};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    UdgUniform,
    Translates,
    Intervals,
    Squares,
    FatRects,
    RectsMixed,
    FatPolygons,
    /// The level graph `F(h)` realized by squares; `n` is `h`.
    LevelGraph,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::UdgUniform,
        Family::Translates,
        Family::Intervals,
        Family::Squares,
        Family::FatRects,
        Family::RectsMixed,
        Family::FatPolygons,
        Family::LevelGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::UdgUniform => "udg-uniform",
            Family::Translates => "translates",
            Family::Intervals => "intervals",
            Family::Squares => "squares",
            Family::FatRects => "fat-rects",
            Family::RectsMixed => "rects-mixed",
            Family::FatPolygons => "fat-polygons",
            Family::LevelGraph => "F",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || (*f == Family::LevelGraph && s == "level"))
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

/// Everything needed to regenerate an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Fatness bound for `fat-rects`; `ρ_out/ρ_in` of the generated bodies never exceeds it.
    pub alpha: f64,
    /// Side count for `fat-polygons`.
    pub k: usize,
    /// Expected objects per unit area (per unit length for intervals).
    pub density: f64,
    /// Uniform jitter added to every coordinate.
    pub perturb: f64,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self { family, n, seed, alpha: 2.0, k: 6, density: 2.0, perturb: 0.0 }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn with_perturb(mut self, perturb: f64) -> Self {
        self.perturb = perturb;
        self
    }

    /// Fatness bound of the generated bodies, as used in edge bounds.
    pub fn fatness(&self) -> f64 {
        match self.family {
            Family::Squares | Family::LevelGraph => std::f64::consts::SQRT_2,
            Family::FatPolygons => 1.0 / (std::f64::consts::PI / self.k as f64).cos(),
            _ => self.alpha,
        }
    }

    fn side(&self) -> f64 {
        (self.n as f64 / self.density).sqrt().max(1.0)
    }
}

/// Fixed irregular body used by the `translates` family.
pub fn translate_body() -> ConvexPolygon {
    let v = [(0.0, 0.0), (0.9, 0.1), (1.2, 0.6), (0.7, 1.1), (0.1, 0.8)];
    ConvexPolygon::new(v.iter().map(|&(x, y)| Point2::new(x, y)).collect()).expect("fixed body is convex")
}

/// Deterministic objects for `spec`.
pub fn generate(spec: &InstanceSpec) -> Result<Vec<GeomObject>> {
    if !(spec.density > 0.0 && spec.perturb >= 0.0 && spec.perturb.is_finite()) {
        return Err(Error::Invalid(format!("bad density {} or perturbation {}", spec.density, spec.perturb)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let side = spec.side();
    let n = spec.n;
    let jitter = spec.perturb;
    let pt = |rng: &mut ChaCha8Rng, w: f64| {
        let j = |rng: &mut ChaCha8Rng| if jitter > 0.0 { rng.gen_range(-jitter..=jitter) } else { 0.0 };
        let (x, y) = (rng.gen_range(0.0..w), rng.gen_range(0.0..w));
        Point2::new(x + j(rng), y + j(rng))
    };
    let objects = match spec.family {
        Family::UdgUniform => (0..n).map(|_| GeomObject::UnitDiskCenter(pt(&mut rng, side))).collect(),
        Family::Translates => {
            let body = Arc::new(translate_body());
            (0..n).map(|_| GeomObject::Translate { body_id: 0, body: body.clone(), offset: pt(&mut rng, side) }).collect()
        }
        Family::Intervals => {
            let len = n as f64 / spec.density;
            (0..n)
                .map(|_| {
                    let lo = rng.gen_range(0.0..len.max(1.0));
                    GeomObject::Interval { lo, hi: lo + rng.gen_range(0.05..2.0) }
                })
                .collect()
        }
        Family::Squares => (0..n)
            .map(|_| {
                let c = pt(&mut rng, side);
                let s = rng.gen_range(0.3..1.2);
                AxisRect::new(c.x, c.x + s, c.y, c.y + s).map(GeomObject::Rect)
            })
            .collect::<Result<_>>()?,
        Family::FatRects => {
            if spec.alpha < std::f64::consts::SQRT_2 {
                return Err(Error::Invalid(format!("rectangles have fatness at least √2, got α = {}", spec.alpha)));
            }
            // Diagonal over shorter side is √(1 + aspect²).
            let max_aspect = (spec.alpha * spec.alpha - 1.0).sqrt();
            (0..n)
                .map(|_| {
                    let c = pt(&mut rng, side);
                    let s = rng.gen_range(0.3..1.0);
                    let aspect = rng.gen_range(1.0..=max_aspect);
                    let (w, h) = if rng.gen_bool(0.5) { (s * aspect, s) } else { (s, s * aspect) };
                    AxisRect::new(c.x, c.x + w, c.y, c.y + h).map(GeomObject::Rect)
                })
                .collect::<Result<_>>()?
        }
        Family::RectsMixed => (0..n)
            .map(|i| {
                let c = pt(&mut rng, side);
                let long = rng.gen_range(1.0..side.clamp(1.5, 6.0));
                let thin = rng.gen_range(0.05..0.3);
                let (w, h) = match i % 3 {
                    0 => (long, thin),
                    1 => (thin, long),
                    _ => (rng.gen_range(0.2..1.0), rng.gen_range(0.2..1.0)),
                };
                AxisRect::new(c.x, c.x + w, c.y, c.y + h).map(GeomObject::Rect)
            })
            .collect::<Result<_>>()?,
        Family::FatPolygons => {
            if spec.k < 3 {
                return Err(Error::Invalid(format!("polygons need at least 3 sides, got {}", spec.k)));
            }
            (0..n)
                .map(|_| {
                    let c = pt(&mut rng, side);
                    let r = rng.gen_range(0.3..0.8);
                    GeomObject::Polygon(ConvexPolygon::regular(spec.k, r, c, rng.gen_range(0.0..std::f64::consts::TAU)))
                })
                .collect()
        }
        Family::LevelGraph => realize_f(n, &base_body("square")?)?.objects(),
    };
    Ok(objects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::fatness;
    use crate::rect::rect_alpha;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("hexagons".parse::<Family>().is_err());
    }

    #[test]
    fn deterministic() {
        for f in Family::ALL {
            let n = if f == Family::LevelGraph { 2 } else { 10 };
            let s = InstanceSpec::new(f, n, 7);
            assert_eq!(generate(&s).unwrap(), generate(&s).unwrap(), "{f}");
        }
        let a = generate(&InstanceSpec::new(Family::UdgUniform, 10, 7)).unwrap();
        let b = generate(&InstanceSpec::new(Family::UdgUniform, 10, 8)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn empty_and_level_graph() {
        assert!(generate(&InstanceSpec::new(Family::Intervals, 0, 1)).unwrap().is_empty());
        let f2 = generate(&InstanceSpec::new(Family::LevelGraph, 2, 1)).unwrap();
        assert_eq!(f2.len(), 12);
        assert!(f2.iter().all(|o| matches!(o, GeomObject::Polygon(p) if p.len() == 4)));
    }

    #[test]
    fn fatness_respects_alpha() {
        let objs = generate(&InstanceSpec::new(Family::FatRects, 300, 3).with_alpha(3.0)).unwrap();
        for o in &objs {
            let GeomObject::Rect(r) = o else { panic!("expected rectangles") };
            assert!(rect_alpha(r) <= 3.0 + 1e-12);
        }
        assert!(generate(&InstanceSpec::new(Family::FatRects, 3, 3).with_alpha(1.2)).is_err());
        for k in [6, 12] {
            let objs = generate(&InstanceSpec::new(Family::FatPolygons, 50, 3).with_k(k)).unwrap();
            for o in &objs {
                let GeomObject::Polygon(p) = o else { panic!("expected polygons") };
                assert!(fatness(p).unwrap().alpha <= 1.2);
            }
        }
    }

    #[test]
    fn perturbation_moves_points() {
        let base = InstanceSpec::new(Family::UdgUniform, 20, 5);
        let a = generate(&base).unwrap();
        let b = generate(&base.clone().with_perturb(1e-3)).unwrap();
        assert_eq!(a.len(), b.len());
        assert_ne!(a, b);
    }
}
