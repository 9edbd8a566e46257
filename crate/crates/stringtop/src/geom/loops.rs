//! Closed polygonal loops on the plane and the flat torus.
//!
//! A loop is a cyclic vertex list with exact rational coordinates, traversed
//! at constant speed. On the torus, coordinates are reduced mod 1 and each
//! edge takes the minimal lift of the displacement between consecutive
//! vertices (every component strictly between -1/2 and 1/2; a component of
//! exactly 1/2 is ambiguous and rejected). The winding vector is the sum of
//! edge displacements.
//!
//! Generic position is enforced at construction: no vertex may lie in the
//! open interior of a non-adjacent edge. Coinciding vertex points are allowed
//! and are how exact self-intersections are represented.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::SqrtSum;
use super::GeomError;

/// Ambient space of a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Plane,
    Torus,
}

/// Exact planar point (or torus point reduced to `[0,1)^2`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: BigRational,
    pub y: BigRational,
}

impl Pt {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Pt { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Pt::new(
            BigRational::from_integer(BigInt::from(x)),
            BigRational::from_integer(BigInt::from(y)),
        )
    }

    pub fn sub(&self, other: &Pt) -> Vec2 {
        Vec2 { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn add_vec(&self, v: &Vec2) -> Pt {
        Pt::new(&self.x + &v.x, &self.y + &v.y)
    }

    fn reduce_mod_1(&self) -> Pt {
        Pt::new(fract(&self.x), fract(&self.y))
    }
}

/// Exact displacement vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl Vec2 {
    pub fn zero() -> Self {
        Vec2 { x: BigRational::zero(), y: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Vec2 {
        Vec2 { x: &self.x * k, y: &self.y * k }
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    pub fn cross(&self, other: &Vec2) -> BigRational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vec2) -> BigRational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> BigRational {
        self.dot(self)
    }
}

fn fract(q: &BigRational) -> BigRational {
    let f = q.floor();
    q - f
}

/// Reduces a displacement component to the half-open interval `(-1/2, 1/2]`;
/// the caller rejects the ambiguous boundary value.
fn minimal_component(q: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut r = fract(q);
    if r > half {
        r -= BigRational::one();
    }
    r
}

/// A position on a loop: a point a rational fraction of the way along one
/// edge. `frac` lives in `[0, 1)`, so every point of the loop has exactly one
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopPos {
    pub edge: usize,
    pub frac: BigRational,
}

impl LoopPos {
    pub fn vertex(i: usize) -> Self {
        LoopPos { edge: i, frac: BigRational::zero() }
    }
}

/// Connected-component label of a loop: the winding vector on the torus, a
/// single label on the plane (the planar loop space is connected).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentLabel {
    Plane,
    Winding(i64, i64),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Plane => write!(f, "*"),
            ComponentLabel::Winding(a, b) => write!(f, "({},{})", a, b),
        }
    }
}

/// A closed polygonal loop at constant speed, basepoint at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLoop {
    space: Space,
    vertices: Vec<Pt>,
    disps: Vec<Vec2>,
}

impl PolyLoop {
    /// Builds and validates a loop from its vertex list. The closing edge
    /// back to vertex 0 is implicit. A single vertex gives the constant loop.
    pub fn new(space: Space, vertices: Vec<Pt>) -> Result<Self, GeomError> {
        let lp = Self::assemble(space, vertices)?;
        lp.check_generic_position()?;
        Ok(lp)
    }

    /// As [`PolyLoop::new`] but skipping the generic-position check. Only for
    /// constructing deliberately degenerate inputs in tests and for interior
    /// use where validity is inherited.
    pub fn new_unchecked(space: Space, vertices: Vec<Pt>) -> Result<Self, GeomError> {
        Self::assemble(space, vertices)
    }

    fn assemble(space: Space, vertices: Vec<Pt>) -> Result<Self, GeomError> {
        if vertices.is_empty() {
            return Err(GeomError::contract("a loop needs at least one vertex"));
        }
        let vertices: Vec<Pt> = match space {
            Space::Plane => vertices,
            Space::Torus => vertices.iter().map(|p| p.reduce_mod_1()).collect(),
        };
        let n = vertices.len();
        if n == 1 {
            return Ok(PolyLoop { space, vertices, disps: Vec::new() });
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut disps = Vec::with_capacity(n);
        for i in 0..n {
            let raw = vertices[(i + 1) % n].sub(&vertices[i]);
            let d = match space {
                Space::Plane => raw,
                Space::Torus => {
                    let d = Vec2 {
                        x: minimal_component(&raw.x),
                        y: minimal_component(&raw.y),
                    };
                    if d.x == half || d.y == half {
                        return Err(GeomError::degenerate(
                            "edge displacement of exactly 1/2 has no unique minimal lift",
                        ));
                    }
                    d
                }
            };
            if d.is_zero() {
                return Err(GeomError::contract(format!(
                    "zero-length edge at vertex {}",
                    i
                )));
            }
            disps.push(d);
        }
        if space == Space::Plane {
            // closing edge is v[n-1] -> v[0]; already included above
        }
        Ok(PolyLoop { space, vertices, disps })
    }

    /// No vertex may sit in the open interior of a non-adjacent edge.
    fn check_generic_position(&self) -> Result<(), GeomError> {
        let n = self.vertices.len();
        for i in 0..n {
            for e in 0..self.disps.len() {
                if e == i || (e + 1) % n == i {
                    continue; // edges incident to vertex i
                }
                if let Some(u) = self.point_on_edge(&self.vertices[i], e) {
                    if u > BigRational::zero() && u < BigRational::one() {
                        return Err(GeomError::degenerate(format!(
                            "vertex {} lies in the interior of edge {}",
                            i, e
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.disps.len()
    }

    pub fn displacement(&self, edge: usize) -> &Vec2 {
        &self.disps[edge]
    }

    pub fn basepoint(&self) -> &Pt {
        &self.vertices[0]
    }

    pub fn is_constant(&self) -> bool {
        self.disps.is_empty()
    }

    /// The point at a position (reduced mod 1 on the torus).
    pub fn point_at(&self, pos: &LoopPos) -> Pt {
        let p = self.vertices[pos.edge].add_vec(&self.disps[pos.edge].scale(&pos.frac));
        match self.space {
            Space::Plane => p,
            Space::Torus => p.reduce_mod_1(),
        }
    }

    /// Fraction `u` with `v_e + u d_e = p` (mod 1 on the torus), if the point
    /// lies on the closed edge `e`.
    pub fn point_on_edge(&self, p: &Pt, e: usize) -> Option<BigRational> {
        let d = &self.disps[e];
        let offsets: &[(i64, i64)] = match self.space {
            Space::Plane => &[(0, 0)],
            Space::Torus => &[
                (-1, -1), (-1, 0), (-1, 1),
                (0, -1), (0, 0), (0, 1),
                (1, -1), (1, 0), (1, 1),
            ],
        };
        for (zx, zy) in offsets {
            let shifted = Pt::new(
                &p.x + BigRational::from_integer(BigInt::from(*zx)),
                &p.y + BigRational::from_integer(BigInt::from(*zy)),
            );
            let rel = shifted.sub(&self.vertices[e]);
            if d.cross(&rel).is_zero() {
                let u = rel.dot(d) / d.norm_sq();
                if u >= BigRational::zero() && u <= BigRational::one() {
                    return Some(u);
                }
            }
        }
        None
    }

    /// Squared length of one edge (exact rational).
    pub fn edge_length_sq(&self, e: usize) -> BigRational {
        self.disps[e].norm_sq()
    }

    /// Exact length of one edge.
    pub fn edge_length(&self, e: usize) -> SqrtSum {
        SqrtSum::sqrt_of_rational(&self.edge_length_sq(e))
    }

    /// Exact total length.
    pub fn length(&self) -> SqrtSum {
        let mut total = SqrtSum::zero();
        for e in 0..self.disps.len() {
            total = total.add(&self.edge_length(e));
        }
        total
    }

    /// `(length, energy)` with energy = length^2 for constant-speed loops.
    pub fn length_energy(&self) -> (SqrtSum, SqrtSum) {
        let l = self.length();
        let e = l.mul(&l);
        (l, e)
    }

    /// Exact arc length from the basepoint to a position.
    pub fn arc_position(&self, pos: &LoopPos) -> SqrtSum {
        let mut total = SqrtSum::zero();
        for e in 0..pos.edge {
            total = total.add(&self.edge_length(e));
        }
        total.add(&self.edge_length(pos.edge).scale(&pos.frac))
    }

    /// The constant-speed parameter of a position: exact rational when the
    /// relevant lengths are commensurable, and always as a float.
    pub fn parameter(&self, pos: &LoopPos) -> (Option<BigRational>, f64) {
        let arc = self.arc_position(pos);
        let total = self.length();
        let exact = arc
            .div_single(&total)
            .and_then(|q| q.as_rational());
        let approx = arc.to_f64() / total.to_f64();
        (exact, approx)
    }

    /// The position at constant-speed parameter `s` (rational, in `[0,1)`).
    /// Fails when the point at that parameter is not a rational point, which
    /// can happen when edge lengths are incommensurable.
    pub fn position_at_parameter(&self, s: &BigRational) -> Result<LoopPos, GeomError> {
        if self.is_constant() {
            return Err(GeomError::contract("constant loop has no positions"));
        }
        if s < &BigRational::zero() || s >= &BigRational::one() {
            return Err(GeomError::contract("parameter must lie in [0,1)"));
        }
        let target = self.length().scale(s);
        let mut prefix = SqrtSum::zero();
        for e in 0..self.disps.len() {
            let len = self.edge_length(e);
            let next = prefix.add(&len);
            // prefix <= target < next picks edge e
            if target.sub(&prefix).sign() >= 0 && target.sub(&next).sign() < 0 {
                let frac = target
                    .sub(&prefix)
                    .div_single(&len)
                    .and_then(|q| q.as_rational())
                    .ok_or_else(|| {
                        GeomError::degenerate(
                            "parameter lands at an irrational point of the loop",
                        )
                    })?;
                return Ok(LoopPos { edge: e, frac });
            }
            prefix = next;
        }
        Err(GeomError::contract("parameter out of range"))
    }

    /// Approximate point at parameter `t` (for test oracles and display).
    pub fn point_at_parameter_f64(&self, t: f64) -> (f64, f64) {
        let t = t.rem_euclid(1.0);
        let lengths: Vec<f64> = (0..self.disps.len())
            .map(|e| self.edge_length_sq(e).to_f64().unwrap().sqrt())
            .collect();
        let total: f64 = lengths.iter().sum();
        let mut remaining = t * total;
        for (e, len) in lengths.iter().enumerate() {
            if remaining <= *len || e == self.disps.len() - 1 {
                let u = (remaining / len).min(1.0);
                let v = &self.vertices[e];
                let d = &self.disps[e];
                return (
                    v.x.to_f64().unwrap() + u * d.x.to_f64().unwrap(),
                    v.y.to_f64().unwrap() + u * d.y.to_f64().unwrap(),
                );
            }
            remaining -= len;
        }
        let v = &self.vertices[0];
        (v.x.to_f64().unwrap(), v.y.to_f64().unwrap())
    }

    /// The winding vector around the torus; `None` on the plane.
    pub fn winding(&self) -> Option<(i64, i64)> {
        if self.space != Space::Torus {
            return None;
        }
        let mut w = Vec2::zero();
        for d in &self.disps {
            w = w.add(d);
        }
        let wx = w.x.to_integer().to_i64().expect("winding fits in i64");
        let wy = w.y.to_integer().to_i64().expect("winding fits in i64");
        debug_assert!(w.x.is_integer() && w.y.is_integer());
        Some((wx, wy))
    }

    pub fn component(&self) -> ComponentLabel {
        match self.space {
            Space::Plane => ComponentLabel::Plane,
            Space::Torus => {
                let (a, b) = self.winding().unwrap();
                ComponentLabel::Winding(a, b)
            }
        }
    }

    /// The constant loop at a point.
    pub fn constant(space: Space, at: Pt) -> PolyLoop {
        PolyLoop::new(space, vec![at]).expect("constant loop is always valid")
    }

    /// Vertex path from position `a` forward to position `b`, including both
    /// endpoint points. When `a` and `b` coincide the walk goes all the way
    /// around the loop. Used by rebasing and cutting; the pieces inherit the
    /// original edges (possibly split at the endpoints), so reduced torus
    /// points reassemble with the same minimal lifts.
    fn path_between(&self, a: &LoopPos, b: &LoopPos) -> Vec<Pt> {
        let n = self.disps.len();
        let mut pts = vec![self.point_at(a)];
        if a.edge == b.edge && a.frac < b.frac {
            pts.push(self.point_at(b));
            return pts;
        }
        let mut e = (a.edge + 1) % n;
        loop {
            if e == b.edge {
                pts.push(self.vertices[e].clone());
                if !b.frac.is_zero() {
                    pts.push(self.point_at(b));
                }
                return pts;
            }
            pts.push(self.vertices[e].clone());
            e = (e + 1) % n;
        }
    }

    /// The loop re-parametrized to start at `pos`.
    pub fn rebase(&self, pos: &LoopPos) -> Result<PolyLoop, GeomError> {
        if self.is_constant() {
            return Ok(self.clone());
        }
        let mut pts = self.path_between(pos, pos);
        // path_between from pos to itself walks the whole loop and repeats
        // the start; drop the duplicate closing point
        pts.pop();
        PolyLoop::new_unchecked(self.space, pts)
    }

    /// Cuts at a position whose point coincides with the basepoint, returning
    /// the two constant-speed pieces `(gamma[0,s], gamma[s,1])`.
    pub fn cut_at(&self, pos: &LoopPos) -> Result<(PolyLoop, PolyLoop), GeomError> {
        if self.point_at(pos) != *self.basepoint() {
            return Err(GeomError::contract(
                "cut point does not coincide with the basepoint",
            ));
        }
        let base = LoopPos::vertex(0);
        if *pos == base {
            return Err(GeomError::contract("cut parameter must be interior"));
        }
        let mut first = self.path_between(&base, pos);
        first.pop(); // closes at the basepoint
        let mut second = self.path_between(pos, &base);
        second.pop();
        Ok((
            PolyLoop::new_unchecked(self.space, first)?,
            PolyLoop::new_unchecked(self.space, second)?,
        ))
    }

    /// Cuts at a rational constant-speed parameter `s` with `gamma(s) =
    /// gamma(0)`, checked exactly.
    pub fn cut(&self, s: &BigRational) -> Result<(PolyLoop, PolyLoop), GeomError> {
        if s <= &BigRational::zero() || s >= &BigRational::one() {
            return Err(GeomError::contract("cut parameter must lie in (0,1)"));
        }
        let pos = self.position_at_parameter(s)?;
        self.cut_at(&pos)
    }

    /// Extracts the closed piece from position `a` forward to position `b`
    /// (both mapping to the same point), based at that point.
    pub fn piece_between(&self, a: &LoopPos, b: &LoopPos) -> Result<PolyLoop, GeomError> {
        if self.point_at(a) != self.point_at(b) {
            return Err(GeomError::contract("piece endpoints differ"));
        }
        let mut pts = self.path_between(a, b);
        pts.pop();
        PolyLoop::new_unchecked(self.space, pts)
    }

    /// Optimal concatenation of two loops sharing a basepoint: splices the
    /// vertex lists; the constant-speed parametrization places the break at
    /// `len(self) / (len(self) + len(other))` automatically.
    pub fn concat(&self, other: &PolyLoop) -> Result<PolyLoop, GeomError> {
        if self.space != other.space {
            return Err(GeomError::contract("cannot concatenate across spaces"));
        }
        if self.basepoint() != other.basepoint() {
            return Err(GeomError::contract(
                "concatenation requires matching basepoints",
            ));
        }
        let mut pts = Vec::new();
        pts.extend(self.vertices.iter().cloned());
        pts.extend(other.vertices.iter().cloned());
        // drop consecutive duplicates created at the seams (constant factors)
        let mut dedup: Vec<Pt> = Vec::with_capacity(pts.len());
        for p in pts {
            if dedup.last() == Some(&p) {
                continue;
            }
            dedup.push(p);
        }
        while dedup.len() > 1 && dedup.last() == Some(&dedup[0]) {
            dedup.pop();
        }
        PolyLoop::new_unchecked(self.space, dedup)
    }
}
