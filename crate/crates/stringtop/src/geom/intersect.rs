//! Exact self-intersection census.
//!
//! All incidence decisions are made with exact rational predicates. On the
//! torus, segment pairs are compared across the lattice offsets that the
//! minimal-lift edge bound (components below 1/2) makes possible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::loops::{LoopPos, PolyLoop, Pt, Space, Vec2};
use super::GeomError;

/// One interior incidence `gamma(s) = gamma(0)` found by the census.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub pos: LoopPos,
    /// Exact parameter when the arc lengths are commensurable.
    pub param_exact: Option<BigRational>,
    pub param_approx: f64,
}

/// Interior parameters `s` with `gamma(s) = gamma(0)`, in traversal order.
/// The count plus one is the order of the basepoint as a multiple point.
///
/// Loops built by [`PolyLoop::new`] are in generic position, so incidences
/// occur at repeated vertices; a basepoint inside an edge interior (possible
/// only for unchecked inputs) is reported as degenerate.
pub fn basepoint_self_intersections(lp: &PolyLoop) -> Result<Vec<Incidence>, GeomError> {
    let mut out = Vec::new();
    if lp.is_constant() {
        return Ok(out);
    }
    let base = lp.basepoint().clone();
    for e in 0..lp.num_edges() {
        if let Some(u) = lp.point_on_edge(&base, e) {
            if u == BigRational::one() {
                continue; // counted as the next edge's start vertex
            }
            if e == 0 && u.is_zero() {
                continue; // the basepoint itself
            }
            if !u.is_zero() {
                return Err(GeomError::degenerate(
                    "non-generic incidence: basepoint lies inside an edge of the loop",
                ));
            }
            let pos = LoopPos { edge: e, frac: u };
            let (param_exact, param_approx) = lp.parameter(&pos);
            out.push(Incidence { pos, param_exact, param_approx });
        }
    }
    Ok(out)
}

/// One passage of the loop through a multiple point, with its well-defined
/// unit-free tangent direction. A corner passage (incoming and outgoing
/// directions not positively parallel) has no tangent and is rejected by
/// [`double_points`].
#[derive(Clone, Debug)]
pub struct Visit {
    pub pos: LoopPos,
    pub tangent: Vec2,
}

/// A transverse double point: a point visited exactly twice, with linearly
/// independent tangents.
#[derive(Clone, Debug)]
pub struct DoublePoint {
    pub point: Pt,
    /// The two visits, in traversal order.
    pub visits: [Visit; 2],
}

fn tangent_at(lp: &PolyLoop, pos: &LoopPos) -> Result<Vec2, GeomError> {
    if !pos.frac.is_zero() {
        return Ok(lp.displacement(pos.edge).clone());
    }
    let n = lp.num_edges();
    let incoming = lp.displacement((pos.edge + n - 1) % n);
    let outgoing = lp.displacement(pos.edge);
    if incoming.cross(outgoing).is_zero() && incoming.dot(outgoing) > BigRational::zero() {
        Ok(outgoing.clone())
    } else {
        Err(GeomError::degenerate(
            "corner passage at a multiple point: tangent direction undefined",
        ))
    }
}

/// Lattice offsets under which two minimal-lift edges can meet.
fn offsets(space: Space) -> &'static [(i64, i64)] {
    match space {
        Space::Plane => &[(0, 0)],
        Space::Torus => &[
            (-1, -1), (-1, 0), (-1, 1),
            (0, -1), (0, 0), (0, 1),
            (1, -1), (1, 0), (1, 1),
        ],
    }
}

fn shift(p: &Pt, z: (i64, i64)) -> Pt {
    Pt::new(
        &p.x + BigRational::from_integer(BigInt::from(z.0)),
        &p.y + BigRational::from_integer(BigInt::from(z.1)),
    )
}

/// Proper interior crossing of two segments, exact. Returns the pair of
/// fractions in the open unit interval, or an error on collinear overlap.
fn proper_crossing(
    a: &Pt,
    d1: &Vec2,
    b: &Pt,
    d2: &Vec2,
) -> Result<Option<(BigRational, BigRational)>, GeomError> {
    let denom = d1.cross(d2);
    let rel = b.sub(a);
    if denom.is_zero() {
        if d1.cross(&rel).is_zero() {
            // collinear: overlap of positive length is degenerate
            let len_sq = d1.norm_sq();
            let t0 = rel.dot(d1) / &len_sq;
            let t1 = &t0 + d2.dot(d1) / &len_sq;
            let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
            if lo < BigRational::one() && hi > BigRational::zero() {
                return Err(GeomError::degenerate(
                    "collinear overlapping edges",
                ));
            }
        }
        return Ok(None);
    }
    let u = rel.cross(d2) / &denom;
    let w = rel.cross(d1) / &denom;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if u > zero && u < one && w > zero && w < one {
        Ok(Some((u, w)))
    } else {
        Ok(None)
    }
}

/// All multiple points of the loop, required to be transverse double points.
/// Triple or higher points, tangencies, corner passages and collinear
/// overlaps are degenerate.
pub fn double_points(lp: &PolyLoop) -> Result<Vec<DoublePoint>, GeomError> {
    let n = lp.num_edges();
    let mut positions: Vec<(Pt, LoopPos)> = Vec::new();

    // vertex-vertex coincidences
    for i in 0..lp.vertices().len() {
        for j in (i + 1)..lp.vertices().len() {
            if lp.vertices()[i] == lp.vertices()[j] {
                positions.push((lp.vertices()[i].clone(), LoopPos::vertex(i)));
                positions.push((lp.vertices()[j].clone(), LoopPos::vertex(j)));
            }
        }
    }

    // edge-edge interior crossings (vertex-in-interior cases are excluded by
    // generic position)
    for i in 0..n {
        for j in (i + 1)..n {
            let (vi, di) = (&lp.vertices()[i], lp.displacement(i));
            let (vj, dj) = (&lp.vertices()[j], lp.displacement(j));
            for &z in offsets(lp.space()) {
                let shifted = shift(vj, z);
                if let Some((u, w)) = proper_crossing(vi, di, &shifted, dj)? {
                    positions.push((
                        lp.point_at(&LoopPos { edge: i, frac: u.clone() }),
                        LoopPos { edge: i, frac: u },
                    ));
                    positions.push((
                        lp.point_at(&LoopPos { edge: j, frac: w.clone() }),
                        LoopPos { edge: j, frac: w },
                    ));
                }
            }
        }
    }

    // group by point, dedup positions
    let mut groups: Vec<(Pt, Vec<LoopPos>)> = Vec::new();
    for (p, pos) in positions {
        match groups.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => {
                if !v.contains(&pos) {
                    v.push(pos);
                }
            }
            None => groups.push((p, vec![pos])),
        }
    }

    let mut out = Vec::new();
    for (p, mut poss) in groups {
        if poss.len() != 2 {
            return Err(GeomError::degenerate(format!(
                "point ({}, {}) has {} passages; only transverse double points are supported",
                p.x,
                p.y,
                poss.len()
            )));
        }
        poss.sort_by(|a, b| (a.edge, &a.frac).cmp(&(b.edge, &b.frac)));
        let t0 = tangent_at(lp, &poss[0])?;
        let t1 = tangent_at(lp, &poss[1])?;
        if t0.cross(&t1).is_zero() {
            return Err(GeomError::degenerate(
                "tangential self-intersection: passages are parallel",
            ));
        }
        out.push(DoublePoint {
            point: p,
            visits: [
                Visit { pos: poss[0].clone(), tangent: t0 },
                Visit { pos: poss[1].clone(), tangent: t1 },
            ],
        });
    }
    out.sort_by(|a, b| {
        (a.visits[0].pos.edge, &a.visits[0].pos.frac)
            .cmp(&(b.visits[0].pos.edge, &b.visits[0].pos.frac))
    });
    Ok(out)
}
