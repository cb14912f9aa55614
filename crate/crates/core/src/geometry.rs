//! Realizing a side word as an actual inscribed polygon.
//!
//! A point on side `i` is described by its normalized parameter `t ∈ [0, 1]`,
//! measured counterclockwise from the side's first vertex. Raising the
//! interior perpendicular at `t` and intersecting it with the line of a
//! successor side is an affine map in `t` whose slope has magnitude
//! `1 / sin(θ/2)`, `θ` the interior angle. Composing the steps around a closed
//! word gives an expanding affine return map on the first side; its inverse is
//! a contraction and the unique fixed point seeds the orbit.

use serde::Serialize;

use crate::exec::{self, Exec};
use crate::oracle::{Oracle, SideWord};
use crate::transition::TransitionSystem;
use crate::{Error, Result};

/// Default tolerance on `[ε, 1 − ε]` for side parameters.
pub const FEASIBILITY_EPS: f64 = 1e-9;
/// Default tolerance on the distance between the closing point and the start.
pub const CLOSURE_TOL: f64 = 1e-9;
/// Below this `|1 − a|` the return map has no usable fixed point.
pub const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        self.sub(o).norm()
    }
}

/// A regular `(2k+1)`-gon centred at the origin.
///
/// Side 1 is horizontal at the bottom; labels increase counterclockwise and
/// side `j` runs from vertex `j` to vertex `j + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonGeometry {
    pub k: u32,
    pub sides: u32,
    pub radius: f64,
    pub vertices: Vec<Point>,
    pub interior_angle: f64,
    pub side_length: f64,
    #[serde(skip)]
    system: TransitionSystem,
}

impl PolygonGeometry {
    pub fn new(k: u32, radius: f64) -> Result<Self> {
        let system = TransitionSystem::new(k)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!(
                "circumradius must be positive, got {radius}"
            )));
        }
        let m = system.sides();
        let step = std::f64::consts::PI / m as f64;
        let vertices = (1..=m)
            .map(|j| {
                let angle = -std::f64::consts::FRAC_PI_2 + (2 * j as i64 - 3) as f64 * step;
                Point::new(radius * angle.cos(), radius * angle.sin())
            })
            .collect();
        Ok(PolygonGeometry {
            k,
            sides: m,
            radius,
            vertices,
            interior_angle: (2 * k - 1) as f64 * std::f64::consts::PI / m as f64,
            side_length: 2.0 * radius * step.sin(),
            system,
        })
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    /// Vertex `j`, 1-based and cyclic.
    pub fn vertex(&self, j: u32) -> Point {
        self.vertices[((j - 1) % self.sides) as usize]
    }

    pub fn side_endpoints(&self, side: u32) -> (Point, Point) {
        (self.vertex(side), self.vertex(side % self.sides + 1))
    }

    /// Unit vector along side `side`, counterclockwise.
    pub fn direction(&self, side: u32) -> Point {
        let (a, b) = self.side_endpoints(side);
        b.sub(a).scale(1.0 / self.side_length)
    }

    /// Unit normal of `side` pointing into the polygon.
    pub fn inward_normal(&self, side: u32) -> Point {
        let u = self.direction(side);
        Point::new(-u.y, u.x)
    }

    pub fn point_on_side(&self, side: u32, t: f64) -> Point {
        let (a, b) = self.side_endpoints(side);
        a.add(b.sub(a).scale(t))
    }

    /// Midpoint of `side`.
    pub fn side_midpoint(&self, side: u32) -> Point {
        self.point_on_side(side, 0.5)
    }

    /// `sin(θ/2)`, the per-step contraction factor of the backward map.
    pub fn contraction_factor(&self) -> f64 {
        (self.interior_angle / 2.0).sin()
    }
}

pub fn build_polygon(k: u32, radius: f64) -> Result<PolygonGeometry> {
    PolygonGeometry::new(k, radius)
}

/// `t ↦ slope · t + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineMap1D {
    pub slope: f64,
    pub offset: f64,
}

impl AffineMap1D {
    pub const IDENTITY: AffineMap1D = AffineMap1D {
        slope: 1.0,
        offset: 0.0,
    };

    pub fn new(slope: f64, offset: f64) -> Self {
        AffineMap1D { slope, offset }
    }

    pub fn apply(&self, t: f64) -> f64 {
        self.slope * t + self.offset
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &AffineMap1D) -> AffineMap1D {
        AffineMap1D {
            slope: next.slope * self.slope,
            offset: next.slope * self.offset + next.offset,
        }
    }

    pub fn inverse(&self) -> AffineMap1D {
        AffineMap1D {
            slope: 1.0 / self.slope,
            offset: -self.offset / self.slope,
        }
    }

    pub fn fixed_point(&self) -> Result<f64> {
        if (1.0 - self.slope).abs() < SINGULAR_TOL {
            return Err(Error::SingularMap { slope: self.slope });
        }
        Ok(self.offset / (1.0 - self.slope))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Parameters must lie in `[feasibility, 1 − feasibility]`.
    pub feasibility: f64,
    pub closure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: FEASIBILITY_EPS,
            closure: CLOSURE_TOL,
        }
    }
}

impl Tolerances {
    pub fn inside(&self, t: f64) -> bool {
        t >= self.feasibility && t <= 1.0 - self.feasibility
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Step {
    pub t: f64,
    pub feasible: bool,
}

fn check_step(geom: &PolygonGeometry, from: u32, to: u32) -> Result<()> {
    let sys = geom.system();
    sys.check_label(from)?;
    sys.check_label(to)?;
    if !sys.is_successor(from, to) {
        return Err(Error::Inadmissible {
            position: 1,
            from,
            to,
            allowed: sys.successors_unchecked(from),
        });
    }
    Ok(())
}

fn raw_step(geom: &PolygonGeometry, from: u32, to: u32, t: f64) -> f64 {
    // p + s·n = c + t'·w; crossing both sides with n eliminates s
    let p = geom.point_on_side(from, t);
    let n = geom.inward_normal(from);
    let (c, d) = geom.side_endpoints(to);
    let w = d.sub(c);
    -c.sub(p).cross(n) / w.cross(n)
}

/// Follows the interior perpendicular at `t` on side `from` to the line of
/// side `to`.
pub fn step_map(
    geom: &PolygonGeometry,
    from: u32,
    to: u32,
    t: f64,
    tol: &Tolerances,
) -> Result<Step> {
    check_step(geom, from, to)?;
    let next = raw_step(geom, from, to, t);
    Ok(Step {
        t: next,
        feasible: tol.inside(next),
    })
}

/// The single step as an affine map of the side parameter.
pub fn step_affine(geom: &PolygonGeometry, from: u32, to: u32) -> Result<AffineMap1D> {
    check_step(geom, from, to)?;
    let at0 = raw_step(geom, from, to, 0.0);
    let at1 = raw_step(geom, from, to, 1.0);
    Ok(AffineMap1D::new(at1 - at0, at0))
}

fn word_steps(geom: &PolygonGeometry, word: &SideWord) -> Result<Vec<AffineMap1D>> {
    word.check_admissible(geom.system())?;
    let labels = word.labels();
    let n = labels.len();
    (0..n)
        .map(|i| step_affine(geom, labels[i], labels[(i + 1) % n]))
        .collect()
}

/// Composition of the steps around `word`, back to its first side.
pub fn return_map(geom: &PolygonGeometry, word: &SideWord) -> Result<AffineMap1D> {
    Ok(word_steps(geom, word)?
        .iter()
        .fold(AffineMap1D::IDENTITY, |acc, s| acc.then(s)))
}

/// A periodic orbit realized in the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitPolyline {
    #[serde(serialize_with = "word_json")]
    pub word: SideWord,
    pub return_map: AffineMap1D,
    /// Parameter on each visited side; `params[0]` is the fixed point.
    pub params: Vec<f64>,
    pub points: Vec<Point>,
    pub closure_residual: f64,
    pub feasible: bool,
    pub degenerate_vertex: bool,
}

fn word_json<S: serde::Serializer>(w: &SideWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.labels())
}

impl OrbitPolyline {
    pub fn fixed_point(&self) -> f64 {
        self.params[0]
    }

    /// Largest `|cos|` between a segment and the side it leaves; zero when
    /// every segment is exactly perpendicular.
    pub fn perpendicularity_error(&self, geom: &PolygonGeometry) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let seg = self.points[(i + 1) % n].sub(self.points[i]);
                let len = seg.norm();
                if len == 0.0 {
                    return 0.0;
                }
                geom.direction(self.word.labels()[i]).dot(seg).abs() / len
            })
            .fold(0.0, f64::max)
    }

    /// Largest distance from a point to the line of the side it claims to lie on.
    pub fn on_side_error(&self, geom: &PolygonGeometry) -> f64 {
        self.points
            .iter()
            .zip(self.word.labels())
            .map(|(&p, &side)| {
                let (a, _) = geom.side_endpoints(side);
                geom.inward_normal(side).dot(p.sub(a)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Solves for the fixed point of the return map directly and replays the
/// forward chain.
///
/// Words that visit only two sides converge to a polygon vertex; they come
/// back with `degenerate_vertex` set and `feasible == false`.
pub fn solve_periodic_orbit(
    geom: &PolygonGeometry,
    word: &SideWord,
    tol: &Tolerances,
) -> Result<OrbitPolyline> {
    let steps = word_steps(geom, word)?;
    let map = steps
        .iter()
        .fold(AffineMap1D::IDENTITY, |acc, s| acc.then(s));
    let start = map.fixed_point()?;

    let labels = word.labels();
    let n = labels.len();
    let mut params = Vec::with_capacity(n);
    let mut t = start;
    for step in &steps[..n - 1] {
        params.push(t);
        t = step.apply(t);
    }
    params.push(t);
    let back = steps[n - 1].apply(t);

    let points: Vec<Point> = labels
        .iter()
        .zip(&params)
        .map(|(&side, &t)| geom.point_on_side(side, t))
        .collect();
    let closure_residual = geom.point_on_side(labels[0], back).distance(points[0]);

    let two_sided = word.distinct_sides() < 3;
    let at_vertex = params
        .iter()
        .any(|&t| t.abs() < tol.feasibility || (1.0 - t).abs() < tol.feasibility);
    let feasible =
        !two_sided && params.iter().all(|&t| tol.inside(t)) && closure_residual < tol.closure;
    Ok(OrbitPolyline {
        word: word.clone(),
        return_map: map,
        params,
        points,
        closure_residual,
        feasible,
        degenerate_vertex: two_sided || at_vertex,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BanachResult {
    pub t: f64,
    pub iterations: usize,
    pub gap: f64,
}

/// Backward iteration: walks the word in reverse, inverting every step, until
/// successive iterates on the first side differ by less than `tol`.
pub fn banach_iterate(
    geom: &PolygonGeometry,
    word: &SideWord,
    t0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<BanachResult> {
    if !(0.0..=1.0).contains(&t0) {
        return Err(Error::domain(format!(
            "starting parameter {t0} is outside [0, 1]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let inverses: Vec<AffineMap1D> = word_steps(geom, word)?
        .iter()
        .rev()
        .map(AffineMap1D::inverse)
        .collect();
    let mut t = t0;
    let mut gap = f64::INFINITY;
    for iteration in 1..=max_iter {
        let next = inverses.iter().fold(t, |acc, inv| inv.apply(acc));
        gap = (next - t).abs();
        t = next;
        if gap < tol {
            return Ok(BanachResult {
                t,
                iterations: iteration,
                gap,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last: t,
        gap,
    })
}

/// Realizability of every canonical word of one period.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityRow {
    pub k: u32,
    pub n: usize,
    pub words: usize,
    pub feasible: usize,
    #[serde(serialize_with = "words_json")]
    pub infeasible: Vec<SideWord>,
}

fn words_json<S: serde::Serializer>(ws: &[SideWord], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(|w| w.to_string()))
}

/// Solves every canonical orbit word (at least three sides) for periods
/// `3..=max_n` and records which ones come out as genuine orbits.
pub fn audit_realizability(
    k: u32,
    max_n: usize,
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<RealizabilityRow>> {
    let geom = PolygonGeometry::new(k, 1.0)?;
    let oracle = Oracle::new(k)?.with_exec(exec).with_cap(max_n.max(3));
    let mut rows = Vec::new();
    for n in 3..=max_n {
        let words = oracle.canonical_orbits(n)?;
        let solved = solve_all(&geom, &words, tol, exec)?;
        let infeasible: Vec<SideWord> = solved
            .iter()
            .filter(|o| !o.feasible)
            .map(|o| o.word.clone())
            .collect();
        rows.push(RealizabilityRow {
            k,
            n,
            words: words.len(),
            feasible: words.len() - infeasible.len(),
            infeasible,
        });
    }
    Ok(rows)
}

/// Solves a batch of words, preserving order.
pub fn solve_all(
    geom: &PolygonGeometry,
    words: &[SideWord],
    tol: &Tolerances,
    exec: Exec,
) -> Result<Vec<OrbitPolyline>> {
    exec::map_collect(exec, words, |w| solve_periodic_orbit(geom, w, tol))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn word(labels: &[u32]) -> SideWord {
        SideWord::new(labels.to_vec()).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// Fixed point of `t ↦ f(t)` on [lo, hi] by bisection on `f(t) − t`.
    fn bisect_fixed_point(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let g = |t: f64| f(t) - t;
        assert!(g(lo) * g(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The return map evaluated point by point through `step_map`.
    fn pointwise_return(geom: &PolygonGeometry, w: &SideWord, t: f64) -> f64 {
        let l = w.labels();
        (0..l.len()).fold(t, |acc, i| {
            step_map(geom, l[i], l[(i + 1) % l.len()], acc, &tol())
                .unwrap()
                .t
        })
    }

    #[test]
    fn polygon_examples() {
        let tri = build_polygon(1, 1.0).unwrap();
        assert!((tri.side_length - 3f64.sqrt()).abs() < 1e-12);
        let pent = build_polygon(2, 1.0).unwrap();
        assert!((pent.interior_angle - 108f64.to_radians()).abs() < 1e-12);
        assert!(build_polygon(0, 1.0).is_err());
        assert!(build_polygon(1, 0.0).is_err());
        assert!(build_polygon(1, f64::NAN).is_err());
    }

    #[test]
    fn polygon_invariants() {
        for k in 1..=10 {
            let g = build_polygon(k, 2.5).unwrap();
            let m = g.sides;
            let mut exterior = 0.0;
            for j in 1..=m {
                assert!((g.vertex(j).norm() - 2.5).abs() < 1e-12);
                let (a, b) = g.side_endpoints(j);
                assert!((a.distance(b) - g.side_length).abs() < 1e-12);
                let u = g.direction(j);
                let v = g.direction(j % m + 1);
                let turn = u.cross(v).atan2(u.dot(v));
                assert!(turn > 0.0, "labels must run counterclockwise");
                exterior += turn;
                // angle between the two sides meeting at vertex j+1
                let inner = (-u.dot(v)).acos();
                assert!((inner - g.interior_angle).abs() < 1e-12);
                // inward normal points at the centre
                assert!(g.inward_normal(j).dot(g.side_midpoint(j).scale(-1.0)) > 0.0);
            }
            assert!((exterior - 2.0 * PI).abs() < 1e-12);
            // side 1 horizontal at the bottom
            let (a, b) = g.side_endpoints(1);
            assert!((a.y - b.y).abs() < 1e-12 && a.y < 0.0 && a.x < b.x);
        }
    }

    #[test]
    fn triangle_altitude_hits_the_opposite_vertex() {
        let g = build_polygon(1, 1.0).unwrap();
        let to2 = step_map(&g, 1, 2, 0.5, &tol()).unwrap();
        let to3 = step_map(&g, 1, 3, 0.5, &tol()).unwrap();
        assert!(to2.t.abs() < 1e-12 || (to2.t - 1.0).abs() < 1e-12);
        assert!(to3.t.abs() < 1e-12 || (to3.t - 1.0).abs() < 1e-12);
        assert!(!to2.feasible && !to3.feasible);
        assert!(g.point_on_side(2, to2.t).distance(g.vertex(3)) < 1e-12);
    }

    #[test]
    fn step_slope_matches_half_angle() {
        for k in 1..=6 {
            let g = build_polygon(k, 1.0).unwrap();
            let expected = 1.0 / g.contraction_factor();
            for i in 1..=g.sides {
                let (a, b) = g.system().successors(i).unwrap();
                for j in [a, b] {
                    // finite differences of the pointwise map
                    let h = 1e-3;
                    let fd = (step_map(&g, i, j, 0.3 + h, &tol()).unwrap().t
                        - step_map(&g, i, j, 0.3 - h, &tol()).unwrap().t)
                        / (2.0 * h);
                    assert!((fd.abs() - expected).abs() < 1e-9, "k={k} {i}->{j}");
                    // affinity on the quarter grid
                    let s = step_affine(&g, i, j).unwrap();
                    for q in 0..=4 {
                        let t = q as f64 / 4.0;
                        let r = step_map(&g, i, j, t, &tol()).unwrap().t - s.apply(t);
                        assert!(r.abs() < 1e-10);
                    }
                }
            }
        }
        let tri = build_polygon(1, 1.0).unwrap();
        assert!((step_affine(&tri, 1, 2).unwrap().slope.abs() - 2.0).abs() < 1e-12);
        let pent = build_polygon(2, 1.0).unwrap();
        assert!(
            (step_affine(&pent, 1, 3).unwrap().slope.abs() - 1.0 / 54f64.to_radians().sin()).abs()
                < 1e-12
        );
    }

    #[test]
    fn non_successor_step_is_rejected() {
        let g = build_polygon(1, 1.0).unwrap();
        assert!(step_map(&g, 2, 2, 0.5, &tol()).is_err());
        assert!(step_affine(&g, 1, 4).is_err());
    }

    #[test]
    fn return_map_slopes() {
        let tri = build_polygon(1, 1.0).unwrap();
        assert!((return_map(&tri, &word(&[1, 2, 3])).unwrap().slope.abs() - 8.0).abs() < 1e-9);
        assert!((return_map(&tri, &word(&[1, 2, 1, 2])).unwrap().slope.abs() - 16.0).abs() < 1e-9);
        let pent = build_polygon(2, 1.0).unwrap();
        let a = return_map(&pent, &word(&[1, 3, 5, 2, 4]))
            .unwrap()
            .slope
            .abs();
        assert!((a - 54f64.to_radians().sin().powi(-5)).abs() < 1e-9);
        assert!((a - 2.8854).abs() < 1e-4);
        assert!(return_map(&tri, &word(&[1, 2, 2])).is_err());
    }

    #[test]
    fn triangle_three_periodic() {
        let g = build_polygon(1, 1.0).unwrap();
        let w = word(&[1, 2, 3]);
        let orbit = solve_periodic_orbit(&g, &w, &tol()).unwrap();
        let oracle = bisect_fixed_point(|t| pointwise_return(&g, &w, t), 0.0, 1.0);
        assert!((orbit.fixed_point() - oracle).abs() < 1e-9);
        // the orbit's vertices are the trisection points of the sides
        assert!((orbit.fixed_point() - 2.0 / 3.0).abs() < 1e-9);
        assert!(orbit.params.iter().all(|t| (t - 2.0 / 3.0).abs() < 1e-9));
        assert!(orbit.feasible && !orbit.degenerate_vertex);
        assert!(orbit.closure_residual < 1e-9);
        assert!(orbit.perpendicularity_error(&g) < 1e-9);
        assert!(orbit.on_side_error(&g) < 1e-12);
    }

    #[test]
    fn two_sided_word_collapses_to_a_vertex() {
        let g = build_polygon(1, 1.0).unwrap();
        let orbit = solve_periodic_orbit(&g, &word(&[1, 2, 1, 2]), &tol()).unwrap();
        let t = orbit.fixed_point();
        assert!(t.abs() < 1e-9 || (t - 1.0).abs() < 1e-9);
        assert!(orbit.degenerate_vertex && !orbit.feasible);
    }

    #[test]
    fn pentagon_five_periodic_is_symmetric() {
        let g = build_polygon(2, 1.0).unwrap();
        let w = word(&[1, 3, 5, 2, 4]);
        let orbit = solve_periodic_orbit(&g, &w, &tol()).unwrap();
        assert!(orbit.feasible);
        let t0 = orbit.params[0];
        assert!(orbit.params.iter().all(|t| (t - t0).abs() < 1e-9));
        for start in [0.0, 0.5, 1.0] {
            let b = banach_iterate(&g, &w, start, 1e-13, 1000).unwrap();
            assert!((b.t - t0).abs() < 1e-12);
        }
    }

    #[test]
    fn banach_converges_quickly_on_the_triangle() {
        let g = build_polygon(1, 1.0).unwrap();
        let w = word(&[1, 2, 3]);
        let b = banach_iterate(&g, &w, 0.5, 1e-12, 100).unwrap();
        assert!((b.t - 2.0 / 3.0).abs() < 1e-12);
        assert!(b.iterations <= 15);
        let b = banach_iterate(&g, &w, 2.0 / 3.0, 1e-12, 100).unwrap();
        assert_eq!(b.iterations, 1);
        assert!((b.t - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn banach_errors() {
        let g = build_polygon(1, 1.0).unwrap();
        let w = word(&[1, 2, 3]);
        assert!(banach_iterate(&g, &w, 1.5, 1e-9, 10).is_err());
        assert!(banach_iterate(&g, &w, 0.5, 0.0, 10).is_err());
        match banach_iterate(&g, &w, 0.0, 1e-15, 2) {
            Err(Error::NoConvergence { iterations: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotations_give_the_same_polygon() {
        let g = build_polygon(1, 1.0).unwrap();
        let w = word(&[1, 2, 3, 2, 1, 3]);
        let base = solve_periodic_orbit(&g, &w, &tol()).unwrap();
        for r in 1..w.len() {
            let rot = solve_periodic_orbit(&g, &w.rotated(r), &tol()).unwrap();
            for i in 0..w.len() {
                let j = (i + r) % w.len();
                assert!(rot.points[i].distance(base.points[j]) < 1e-9);
            }
        }
    }

    #[test]
    fn singular_map_is_reported() {
        assert!(AffineMap1D::new(1.0, 0.3).fixed_point().is_err());
        let m = AffineMap1D::new(-2.0, 1.0);
        assert!((m.then(&m.inverse()).apply(0.37) - 0.37).abs() < 1e-15);
    }

    #[test]
    fn triangle_words_are_all_realizable() {
        let rows = audit_realizability(1, 10, &tol(), Exec::default()).unwrap();
        assert!(rows.iter().all(|r| r.infeasible.is_empty()));
        assert_eq!(
            rows.iter().map(|r| r.words).sum::<usize>(),
            2 + 3 + 6 + 9 + 18 + 30 + 56 + 99
        );
    }
}
