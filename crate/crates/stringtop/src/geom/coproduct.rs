//! Geometric realization of the loop operations on polygonal loops.
//!
//! The stick retraction replaces a near-incidence `|gamma(s) - gamma(0)| <
//! eps` by an exact one, inserting the two straight segments between the two
//! points. The geometric loop product adds sticks to the second loop and
//! concatenates. The rotation coproduct evaluates the transversal coproduct
//! of the rotation family of a single loop: every interior solution of
//! `gamma(t) = gamma(t+s)` contributes the pair of cut pieces with the
//! orientation sign of the two tangent directions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::intersect::double_points;
use super::loops::{ComponentLabel, LoopPos, PolyLoop, Pt, Space, Vec2};
use super::GeomError;

/// Dimension of the target surfaces. The normal bundle of the diagonal
/// carries `(-1)^n` times the canonical orientation; for surfaces this
/// factor is `+1` and the intersection sign is the bare tangent determinant.
const SURFACE_DIM: u32 = 2;

fn normal_orientation_factor() -> BigInt {
    if SURFACE_DIM % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Minimal representative of the displacement from `a` to `b`: the straight
/// segment on the plane, the unique minimal lift on the torus (requires
/// component distance below 1/2).
fn minimal_displacement(space: Space, a: &Pt, b: &Pt) -> Result<Vec2, GeomError> {
    match space {
        Space::Plane => Ok(b.sub(a)),
        Space::Torus => {
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            let raw = b.sub(a);
            let reduce = |q: &BigRational| {
                let f = q - q.floor();
                if f > half.clone() {
                    f - BigRational::from_integer(BigInt::from(1))
                } else {
                    f
                }
            };
            let d = Vec2 { x: reduce(&raw.x), y: reduce(&raw.y) };
            if d.x == half || d.y == half {
                return Err(GeomError::degenerate(
                    "stick between points at distance 1/2: no unique minimal segment",
                ));
            }
            Ok(d)
        }
    }
}

fn dist_sq(space: Space, a: &Pt, b: &Pt) -> Result<BigRational, GeomError> {
    Ok(minimal_displacement(space, a, b)?.norm_sq())
}

/// The retraction that makes `gamma(s)` coincide with the basepoint exactly:
/// inserts the sticks `gamma(s) -> gamma(0)` and `gamma(0) -> gamma(s)` at
/// parameter `s`. Requires `|gamma(s) - gamma(0)| < eps`; an already incident
/// point (and `s = 0`) returns the loop unchanged.
pub fn stick_retraction_gh(
    lp: &PolyLoop,
    s: &BigRational,
    eps: &BigRational,
) -> Result<PolyLoop, GeomError> {
    if eps <= &BigRational::zero() {
        return Err(GeomError::contract("eps must be positive"));
    }
    if s.is_zero() {
        return Ok(lp.clone());
    }
    let pos = lp.position_at_parameter(s)?;
    let x = lp.point_at(&pos);
    let base = lp.basepoint().clone();
    if x == base {
        return Ok(lp.clone());
    }
    let d2 = dist_sq(lp.space(), &x, &base)?;
    if d2 >= eps * eps {
        return Err(GeomError::contract(format!(
            "point at parameter {} is not within eps of the basepoint",
            s
        )));
    }
    // vertex list up to x, then the two sticks, then the rest
    let n = lp.num_edges();
    let mut pts: Vec<Pt> = Vec::new();
    for i in 0..=pos.edge {
        pts.push(lp.vertices()[i].clone());
    }
    if !pos.frac.is_zero() {
        pts.push(x.clone());
    } else {
        // x is the vertex pos.edge itself; it is already the last pushed
    }
    pts.push(base.clone());
    pts.push(x.clone());
    for i in (pos.edge + 1)..n {
        pts.push(lp.vertices()[i].clone());
    }
    PolyLoop::new(lp.space(), pts)
}

/// The geometric loop product: within the Thom-class cutoff `eps`, adds the
/// two sticks to `delta` so that it shares the basepoint of `gamma`, then
/// concatenates optimally. Basepoints at distance `eps` or more fall outside
/// the support of the Thom class and yield `None`.
pub fn cs_product_geometric(
    gamma: &PolyLoop,
    delta: &PolyLoop,
    eps: &BigRational,
) -> Result<Option<PolyLoop>, GeomError> {
    if gamma.space() != delta.space() {
        return Err(GeomError::contract("loops live in different spaces"));
    }
    if eps <= &BigRational::zero() {
        return Err(GeomError::contract("eps must be positive"));
    }
    let g0 = gamma.basepoint().clone();
    let d0 = delta.basepoint().clone();
    let d2 = dist_sq(gamma.space(), &g0, &d0)?;
    if d2 >= eps * eps {
        return Ok(None);
    }
    let modified = if g0 == d0 {
        delta.clone()
    } else {
        // stick g0 -> d0, then delta, then stick d0 -> g0 (implicit closure)
        let mut pts = vec![g0.clone()];
        pts.extend(delta.vertices().iter().cloned());
        pts.push(d0.clone());
        PolyLoop::new(gamma.space(), pts)?
    };
    Ok(Some(gamma.concat(&modified)?))
}

/// One solution `(t, s)` of `gamma(t) = gamma(t+s)` with its sign and the
/// ordered pair of cut pieces.
#[derive(Clone, Debug)]
pub struct RotationTerm {
    pub t_approx: f64,
    pub s_approx: f64,
    pub sign: BigInt,
    pub first: PolyLoop,
    pub second: PolyLoop,
}

/// An integer formal sum of ordered pairs of loops, grouped by the connected
/// components of the two factors, with a witness pair per term.
#[derive(Clone, Debug, Default)]
pub struct PairChain {
    terms: BTreeMap<(ComponentLabel, ComponentLabel), (BigInt, Option<(PolyLoop, PolyLoop)>)>,
}

impl PairChain {
    pub fn new() -> Self {
        PairChain { terms: BTreeMap::new() }
    }

    pub fn add(&mut self, first: &PolyLoop, second: &PolyLoop, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (first.component(), second.component());
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| (BigInt::zero(), None));
        entry.0 += coeff;
        if entry.1.is_none() {
            entry.1 = Some((first.clone(), second.clone()));
        }
        if entry.0.is_zero() {
            self.terms.remove(&(first.component(), second.component()));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &(ComponentLabel, ComponentLabel)) -> BigInt {
        self.terms
            .get(key)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<
        Item = (
            &(ComponentLabel, ComponentLabel),
            &(BigInt, Option<(PolyLoop, PolyLoop)>),
        ),
    > {
        self.terms.iter()
    }

    pub fn witness(&self, key: &(ComponentLabel, ComponentLabel)) -> Option<&(PolyLoop, PolyLoop)> {
        self.terms.get(key).and_then(|(_, w)| w.as_ref())
    }
}

impl fmt::Display for PairChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), (c, _)) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            if c.is_negative() {
                write!(f, "- ")?;
            } else if !first {
                write!(f, "+ ")?;
            }
            first = false;
            let abs = c.abs();
            if abs != BigInt::from(1) {
                write!(f, "{} ", abs)?;
            }
            write!(f, "[{} x {}]", a, b)?;
        }
        Ok(())
    }
}

/// The component-label class of a pair chain: the coefficient map alone,
/// certifying a nonzero class in the zeroth homology of the product of loop
/// spaces.
pub fn pair_chain_class(
    chain: &PairChain,
) -> BTreeMap<(ComponentLabel, ComponentLabel), BigInt> {
    chain
        .terms()
        .map(|(k, (c, _))| (k.clone(), c.clone()))
        .collect()
}

/// The result of the transversal coproduct on a rotation family.
#[derive(Clone, Debug)]
pub struct RotationCoproduct {
    /// All interior solutions, in traversal order of the first visit.
    pub solutions: Vec<RotationTerm>,
    /// The unlifted chain.
    pub chain: PairChain,
    /// The lifted chain: each pair deflated by the constant loops at its
    /// cut point, `(z,x) - (c,x) - (z,c) + (c,c)` per term.
    pub lifted: PairChain,
}

/// Evaluates the coproduct of the rotation family of `lp` by exact
/// transversal intersection with the diagonal: every interior solution
/// `(t, s)` of `gamma(t) = gamma(t+s)` contributes `sign * (cut pair)`,
/// where the sign is the determinant orientation of the two tangents times
/// the normal-orientation factor `(-1)^n` (trivial for surfaces).
///
/// Requires generic position with all self-intersections transverse double
/// points; tangencies, corners and higher-order points are degenerate.
pub fn rotation_coproduct(lp: &PolyLoop) -> Result<RotationCoproduct, GeomError> {
    let mut solutions = Vec::new();
    let mut chain = PairChain::new();
    let mut lifted = PairChain::new();
    if lp.is_constant() {
        return Ok(RotationCoproduct { solutions, chain, lifted });
    }
    let dps = double_points(lp)?;
    for dp in &dps {
        let [va, vb] = &dp.visits;
        let det = va.tangent.cross(&vb.tangent);
        let base_sign = if det.is_positive() {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        } * normal_orientation_factor();
        let piece_ab = lp.piece_between(&va.pos, &vb.pos)?;
        let piece_ba = lp.piece_between(&vb.pos, &va.pos)?;
        let (_, ta) = lp.parameter(&va.pos);
        let (_, tb) = lp.parameter(&vb.pos);

        // solution at (t_a, t_b - t_a): tangents in order (a, b)
        solutions.push(RotationTerm {
            t_approx: ta,
            s_approx: tb - ta,
            sign: base_sign.clone(),
            first: piece_ab.clone(),
            second: piece_ba.clone(),
        });
        // solution at (t_b, 1 - t_b + t_a): tangents in order (b, a)
        solutions.push(RotationTerm {
            t_approx: tb,
            s_approx: 1.0 - tb + ta,
            sign: -base_sign.clone(),
            first: piece_ba.clone(),
            second: piece_ab.clone(),
        });

        let constant = PolyLoop::constant(lp.space(), dp.point.clone());
        for (sign, first, second) in [
            (base_sign.clone(), &piece_ab, &piece_ba),
            (-base_sign.clone(), &piece_ba, &piece_ab),
        ] {
            chain.add(first, second, sign.clone());
            // (1 - i e) x (1 - i e) applied to the term
            lifted.add(first, second, sign.clone());
            lifted.add(&constant, second, -sign.clone());
            lifted.add(first, &constant, -sign.clone());
            lifted.add(&constant, &constant, sign.clone());
        }
    }
    Ok(RotationCoproduct { solutions, chain, lifted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pt(n1: i64, d1: i64, n2: i64, d2: i64) -> Pt {
        Pt::new(rat(n1, d1), rat(n2, d2))
    }

    fn unit_square() -> PolyLoop {
        PolyLoop::new(
            Space::Plane,
            vec![
                Pt::from_ints(0, 0),
                Pt::from_ints(4, 0),
                Pt::from_ints(4, 4),
                Pt::from_ints(0, 4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn stick_retraction_identity_cases() {
        let sq = unit_square();
        // s = 0 is the identity
        assert_eq!(stick_retraction_gh(&sq, &rat(0, 1), &rat(1, 1)).unwrap(), sq);
        // already-incident point: figure-eight at its crossing
        let f8 = PolyLoop::new(
            Space::Plane,
            vec![
                Pt::from_ints(0, 0),
                Pt::from_ints(1, 0),
                Pt::from_ints(1, 1),
                Pt::from_ints(0, 1),
                Pt::from_ints(0, 0),
                Pt::from_ints(-1, 0),
                Pt::from_ints(-1, -1),
                Pt::from_ints(0, -1),
            ],
        )
        .unwrap();
        assert_eq!(stick_retraction_gh(&f8, &rat(1, 2), &rat(1, 1)).unwrap(), f8);
    }

    #[test]
    fn stick_retraction_near_miss() {
        // square of side 4, near-miss at the midpoint of the left edge:
        // parameter 7/8 is the point (0, 2); distance 2 to basepoint (0,0)
        // is below eps = 3, so two sticks of length 2 appear
        let sq = unit_square();
        let out = stick_retraction_gh(&sq, &rat(7, 8), &rat(3, 1)).unwrap();
        let expected_len = sq.length().add(&super::super::SqrtSum::from_integer(4));
        assert_eq!(out.length(), expected_len);
        // too tight a cutoff is a contract violation
        assert!(stick_retraction_gh(&sq, &rat(7, 8), &rat(1, 1)).is_err());
    }

    #[test]
    fn geometric_product_shared_basepoint_is_concat() {
        let a = unit_square();
        let b = PolyLoop::new(
            Space::Plane,
            vec![
                Pt::from_ints(0, 0),
                Pt::from_ints(-2, 0),
                Pt::from_ints(-2, -2),
                Pt::from_ints(0, -2),
            ],
        )
        .unwrap();
        let p = cs_product_geometric(&a, &b, &rat(1, 1)).unwrap().unwrap();
        assert_eq!(p, a.concat(&b).unwrap());
    }

    #[test]
    fn geometric_product_cutoff() {
        let a = unit_square();
        let far = PolyLoop::new(
            Space::Plane,
            vec![
                Pt::from_ints(10, 10),
                Pt::from_ints(11, 10),
                Pt::from_ints(11, 11),
            ],
        )
        .unwrap();
        assert!(cs_product_geometric(&a, &far, &rat(1, 1)).unwrap().is_none());
    }

    #[test]
    fn geometric_product_winding_additivity() {
        let h = PolyLoop::new(
            Space::Torus,
            vec![pt(0, 1, 1, 4), pt(1, 3, 1, 4), pt(2, 3, 1, 4)],
        )
        .unwrap();
        let v = PolyLoop::new(
            Space::Torus,
            vec![pt(1, 16, 1, 4), pt(1, 16, 7, 12), pt(1, 16, 11, 12)],
        )
        .unwrap();
        let p = cs_product_geometric(&h, &v, &rat(1, 4)).unwrap().unwrap();
        assert_eq!(p.winding(), Some((1, 1)));
        let (wh, wv) = (h.winding().unwrap(), v.winding().unwrap());
        assert_eq!(p.winding(), Some((wh.0 + wv.0, wh.1 + wv.1)));
    }

    #[test]
    fn rotation_coproduct_of_simple_loop_is_empty() {
        let r = rotation_coproduct(&unit_square()).unwrap();
        assert!(r.chain.is_empty());
        assert!(r.solutions.is_empty());
    }

    #[test]
    fn rotation_coproduct_of_constant_loop_is_empty() {
        let c = PolyLoop::constant(Space::Torus, pt(1, 2, 1, 2));
        let r = rotation_coproduct(&c).unwrap();
        assert!(r.chain.is_empty());
    }

    #[test]
    fn bow_tie_has_two_opposite_solutions() {
        let bow = PolyLoop::new(
            Space::Plane,
            vec![
                Pt::from_ints(0, 0),
                Pt::from_ints(2, 2),
                Pt::from_ints(2, 0),
                Pt::from_ints(0, 2),
            ],
        )
        .unwrap();
        let r = rotation_coproduct(&bow).unwrap();
        assert_eq!(r.solutions.len(), 2);
        assert_eq!(r.solutions[0].sign, -r.solutions[1].sign.clone());
        // on the plane both pieces are in the single component, so the
        // two opposite terms cancel in the component class
        assert!(r.chain.is_empty());
        // antisymmetry of the (t,s) pair of one double point
        let s0 = r.solutions[0].s_approx;
        let s1 = r.solutions[1].s_approx;
        assert!((s0 + s1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pair_chain_cancellation() {
        let a = unit_square();
        let b = unit_square();
        let mut ch = PairChain::new();
        ch.add(&a, &b, BigInt::from(1));
        ch.add(&a, &b, BigInt::from(-1));
        assert!(ch.is_empty());
        assert!(pair_chain_class(&ch).is_empty());
    }
}
