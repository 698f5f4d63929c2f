use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Point, TAU};

/// Largest angle subtended by one chord of a loop.
pub const MAX_CHORD_DEGREES: f64 = 20.0;

/// Step control for continuation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepPolicy {
    /// Each step is at most `theta` times the distance to the nearest singular point.
    pub theta: f64,
    /// Minimum distance between a path and a singularity, relative to the path length.
    pub clearance: f64,
    /// Largest tolerated disagreement between overlapping local expansions.
    pub drift_ceiling: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        Self { theta: 0.4, clearance: 1e-3, drift_ceiling: 1e-6 }
    }
}

/// A polyline. Vertices are [`Point`]s so loops around a singularity keep
/// their displacement from it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    vertices: Vec<Point>,
}

impl Path {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("a path needs at least one vertex".into()));
        }
        let mut out: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if out.last().is_some_and(|p| p.value() == v.value()) {
                continue;
            }
            out.push(v);
        }
        Ok(Self { vertices: out })
    }

    pub fn segment(a: Point, b: Point) -> Self {
        Self::new(vec![a, b]).expect("two vertices")
    }

    /// Start at `base`, run `|turns|` times around the circle centred at `alpha`
    /// through `base` (counterclockwise for positive `turns`), and return to `base`.
    pub fn loop_around(alpha: Complex64, base: Point, turns: i32) -> Self {
        let offset = base.minus(alpha);
        let chords_per_turn = (360.0 / MAX_CHORD_DEGREES).ceil() as usize;
        let total = chords_per_turn * turns.unsigned_abs() as usize;
        let sign = if turns >= 0 { 1.0 } else { -1.0 };
        let mut vertices = Vec::with_capacity(total + 1);
        vertices.push(Point::new(alpha, offset));
        for j in 1..=total {
            let theta = if j % chords_per_turn == 0 { 0.0 } else { sign * TAU * (j % chords_per_turn) as f64 / chords_per_turn as f64 };
            let rot = if theta == 0.0 { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(1.0, theta) };
            vertices.push(Point::new(alpha, offset * rot));
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().expect("non-empty")
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| (w[1].value() - w[0].value()).norm()).sum()
    }

    /// Winding number around `alpha` by summation of chord arguments.
    pub fn winding_number(&self, alpha: Complex64) -> f64 {
        let total: f64 = self
            .vertices
            .windows(2)
            .map(|w| (w[1].minus(alpha) / w[0].minus(alpha)).arg())
            .sum();
        total / TAU
    }

    /// Smallest distance from the polyline to `s`.
    pub fn distance_to(&self, s: Complex64) -> f64 {
        if self.vertices.len() == 1 {
            return self.vertices[0].dist(s);
        }
        self.vertices
            .windows(2)
            .map(|w| segment_distance(w[0], w[1], s))
            .fold(f64::INFINITY, f64::min)
    }

    /// Fails when the path passes closer to any of `singularities` than the policy allows.
    pub fn check_clearance(&self, singularities: &[Complex64], policy: &StepPolicy) -> Result<()> {
        let clearance = policy.clearance * self.length();
        for &s in singularities {
            let d = self.distance_to(s);
            if d <= clearance {
                return Err(Error::PathTooClose { singularity: s, distance: d, clearance });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<[f64; 2]> = self.vertices.iter().map(|p| [p.value().re, p.value().im]).collect();
        serde_json::to_value(pts).expect("plain numbers")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pts: Vec<[f64; 2]> =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("path json: {e}")))?;
        Self::new(pts.into_iter().map(|[re, im]| Point::at(Complex64::new(re, im))).collect())
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Path::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Distance from `s` to the segment `[a, b]`, measured relative to `s` to avoid cancellation.
pub fn segment_distance(a: Point, b: Point, s: Complex64) -> f64 {
    let pa = a.minus(s);
    let pb = b.minus(s);
    let d = pb - pa;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return pa.norm();
    }
    let t = (-(pa.conj() * d).re / len2).clamp(0.0, 1.0);
    (pa + d * t).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn loop_winding_numbers() {
        for k in [-3, -1, 0, 1, 2] {
            let p = Path::loop_around(c(1.0, 0.0), Point::at(c(0.5, 0.2)), k);
            assert!((p.winding_number(c(1.0, 0.0)) - k as f64).abs() < 1e-12);
            assert_eq!(p.start(), p.end());
            assert!(p.winding_number(c(5.0, 0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn chords_subtend_at_most_twenty_degrees() {
        let alpha = c(0.0, 1.0);
        let p = Path::loop_around(alpha, Point::at(c(0.3, 1.0)), 1);
        for w in p.vertices().windows(2) {
            let ang = (w[1].minus(alpha) / w[0].minus(alpha)).arg().abs().to_degrees();
            assert!(ang <= MAX_CHORD_DEGREES + 1e-9);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = Path::segment(Point::at(c(0.0, 0.0)), Point::at(c(1.0, -2.0)));
        let back = Path::from_json(&p.to_json()).unwrap();
        assert_eq!(back.vertices().len(), 2);
        assert_eq!(back.end().value(), c(1.0, -2.0));
    }

    #[test]
    fn clearance_violation() {
        let p = Path::segment(Point::at(c(0.0, -1.0)), Point::at(c(0.0, 1.0)));
        let err = p.check_clearance(&[c(1e-4, 0.0)], &StepPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::PathTooClose { .. }));
        assert!(p.check_clearance(&[c(0.1, 0.0)], &StepPolicy::default()).is_ok());
    }
}
