//! Degree-graded free modules over the integers.
//!
//! Everything downstream is a formal sum of basis labels with `BigInt`
//! coefficients, kept in canonical form (no zero coefficients, terms ordered
//! by label). Tensor chains are formal sums of ordered tuples of labels.
//! The Koszul sign bookkeeping lives here: [`twist`], [`apply_in_slot`] and
//! [`pair_tensor`] are the only places a sign ever enters.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Homological degree.
pub type Degree = i64;

/// A basis label: a family tag plus an index, with the degree cached at
/// construction time. The owning model decides what the degree of a
/// `(family, index)` pair is; equality and ordering ignore the cached degree.
#[derive(Clone, Debug)]
pub struct Label<F> {
    pub family: F,
    pub index: u32,
    degree: Degree,
}

impl<F> Label<F> {
    pub fn new(family: F, index: u32, degree: Degree) -> Self {
        Label { family, index, degree }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }
}

impl<F: PartialEq> PartialEq for Label<F> {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.index == other.index
    }
}

impl<F: Eq> Eq for Label<F> {}

impl<F: Ord> PartialOrd for Label<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Ord> Ord for Label<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.family, self.index).cmp(&(&other.family, other.index))
    }
}

impl<F: Hash> Hash for Label<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.family.hash(state);
        self.index.hash(state);
    }
}

impl<F: fmt::Display> fmt::Display for Label<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

/// An integer formal sum of basis labels, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<B: Ord> {
    terms: BTreeMap<B, BigInt>,
}

impl<B: Ord + Clone> Default for Element<B> {
    fn default() -> Self {
        Element::zero()
    }
}

impl<B: Ord + Clone> Element<B> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn basis(b: B) -> Self {
        Element::single(b, BigInt::one())
    }

    pub fn single(b: B, coeff: BigInt) -> Self {
        let mut e = Element::zero();
        e.add_term(b, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (B, BigInt)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (b, c) in iter {
            e.add_term(b, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: &B) -> BigInt {
        self.terms.get(b).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `coeff * b`, dropping the term if the total cancels.
    pub fn add_term(&mut self, b: B, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(entry) => {
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * k)).collect(),
        }
    }

    pub fn map_basis<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&B) -> Element<B>,
    {
        let mut out = Element::zero();
        for (b, c) in self.terms() {
            for (b2, c2) in f(b).terms() {
                out.add_term(b2.clone(), c * c2);
            }
        }
        out
    }
}

impl<B: Ord + Clone + Graded> Element<B> {
    /// True when every term sits in the same degree (the zero element is
    /// homogeneous of any degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|b| b.degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<Degree> {
        if self.is_zero() || !self.is_homogeneous() {
            return None;
        }
        self.terms.keys().next().map(|b| b.degree())
    }

    /// Splits into homogeneous components, ascending degree.
    pub fn homogeneous_parts(&self) -> Vec<(Degree, Element<B>)> {
        let mut parts: BTreeMap<Degree, Element<B>> = BTreeMap::new();
        for (b, c) in self.terms() {
            parts
                .entry(b.degree())
                .or_insert_with(Element::zero)
                .add_term(b.clone(), c.clone());
        }
        parts.into_iter().collect()
    }
}

/// Types that carry a homological degree.
pub trait Graded {
    fn degree(&self) -> Degree;
}

impl<F> Graded for Label<F> {
    fn degree(&self) -> Degree {
        self.degree
    }
}

/// An ordered tuple of basis labels. Its degree is the sum of slot degrees.
pub type TensorLabel<B> = Vec<B>;

/// Total degree of a tuple of labels.
pub fn tuple_degree<B: Graded>(t: &[B]) -> Degree {
    t.iter().map(|b| b.degree()).sum()
}

/// An integer formal sum of ordered tuples of fixed length (`arity`).
/// The arity is stored explicitly so empty chains retain their type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorChain<B: Ord> {
    terms: BTreeMap<TensorLabel<B>, BigInt>,
    arity: usize,
}

impl<B: Ord + Clone + Graded> TensorChain<B> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        TensorChain { terms: BTreeMap::new(), arity }
    }

    pub fn single(tuple: TensorLabel<B>, coeff: BigInt) -> Self {
        let mut t = TensorChain::zero(tuple.len());
        t.add_term(tuple, coeff);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorLabel<B>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tuple: &[B]) -> BigInt {
        self.terms.get(tuple).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, tuple: TensorLabel<B>, coeff: BigInt) {
        assert_eq!(tuple.len(), self.arity, "tuple length must match chain arity");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(entry) => {
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                self.terms.insert(tuple, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return TensorChain::zero(self.arity);
        }
        TensorChain {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
            arity: self.arity,
        }
    }

    /// Arity-1 chain from an element.
    pub fn from_element(e: &Element<B>) -> Self {
        let mut t = TensorChain::zero(1);
        for (b, c) in e.terms() {
            t.add_term(vec![b.clone()], c.clone());
        }
        t
    }

    /// Collapses an arity-1 chain back to an element.
    pub fn into_element(&self) -> Element<B> {
        assert_eq!(self.arity, 1, "only arity-1 chains collapse to elements");
        Element::from_terms(self.terms().map(|(t, c)| (t[0].clone(), c.clone())))
    }
}

/// Bilinear extension of label concatenation; carries no sign.
pub fn tensor<B: Ord + Clone + Graded>(x: &Element<B>, y: &Element<B>) -> TensorChain<B> {
    let mut out = TensorChain::zero(2);
    for (b1, c1) in x.terms() {
        for (b2, c2) in y.terms() {
            out.add_term(vec![b1.clone(), b2.clone()], c1 * c2);
        }
    }
    out
}

/// Slot-wise concatenation of two chains (no sign).
pub fn tensor_chains<B: Ord + Clone + Graded>(
    x: &TensorChain<B>,
    y: &TensorChain<B>,
) -> TensorChain<B> {
    let mut out = TensorChain::zero(x.arity() + y.arity());
    for (t1, c1) in x.terms() {
        for (t2, c2) in y.terms() {
            let mut tuple = t1.clone();
            tuple.extend(t2.iter().cloned());
            out.add_term(tuple, c1 * c2);
        }
    }
    out
}

/// Appends an element as one extra slot on the right (no sign).
pub fn tensor_with_element<B: Ord + Clone + Graded>(
    x: &TensorChain<B>,
    y: &Element<B>,
) -> TensorChain<B> {
    tensor_chains(x, &TensorChain::from_element(y))
}

fn koszul_sign(a: Degree, b: Degree) -> BigInt {
    if (a % 2 != 0) && (b % 2 != 0) {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// The symmetry `(b1, b2) -> (-1)^{|b1||b2|} (b2, b1)` on arity-2 chains.
pub fn twist<B: Ord + Clone + Graded>(t: &TensorChain<B>) -> TensorChain<B> {
    assert_eq!(t.arity(), 2, "twist is defined on arity-2 chains");
    let mut out = TensorChain::zero(2);
    for (tuple, c) in t.terms() {
        let sign = koszul_sign(tuple[0].degree(), tuple[1].degree());
        out.add_term(vec![tuple[1].clone(), tuple[0].clone()], c * sign);
    }
    out
}

/// A graded operator that can be applied inside one tensor slot. Applying it
/// may change the tuple length: the result of `apply` replaces the slot with
/// all of its own slots spliced in.
pub trait SlotOperator<B: Ord + Clone + Graded> {
    fn op_degree(&self) -> Degree;
    fn apply(&self, b: &B) -> TensorChain<B>;
}

/// Applies `op` in slot `slot` (1-based), multiplying each term by the Koszul
/// sign `(-1)^{deg(op) * (degrees of slots before the target)}`. The output
/// arity adjusts when the operator changes tuple length.
pub fn apply_in_slot<B, O>(op: &O, slot: usize, t: &TensorChain<B>) -> TensorChain<B>
where
    B: Ord + Clone + Graded,
    O: SlotOperator<B>,
{
    assert!(
        slot >= 1 && slot <= t.arity(),
        "slot {} out of range for arity {}",
        slot,
        t.arity()
    );
    let i = slot - 1;
    let mut out: Option<TensorChain<B>> = None;
    for (tuple, c) in t.terms() {
        let prefix: Degree = tuple[..i].iter().map(|b| b.degree()).sum();
        let sign = koszul_sign(op.op_degree(), prefix);
        let image = op.apply(&tuple[i]);
        for (mid, c2) in image.terms() {
            let mut new_tuple = Vec::with_capacity(tuple.len() - 1 + mid.len());
            new_tuple.extend_from_slice(&tuple[..i]);
            new_tuple.extend(mid.iter().cloned());
            new_tuple.extend_from_slice(&tuple[i + 1..]);
            let arity = new_tuple.len();
            out.get_or_insert_with(|| TensorChain::zero(arity))
                .add_term(new_tuple, &sign * c * c2);
        }
    }
    // An operator that kills every term leaves no way to infer the output
    // arity from the terms; reconstruct it from the operator contract by
    // probing nothing and assuming arity-preserving collapse to zero of the
    // target arity. Callers that need the exact empty arity use
    // `apply_in_slot_with_arity`.
    out.unwrap_or_else(|| TensorChain::zero(t.arity().max(1)))
}

/// As [`apply_in_slot`], but with the output arity of the operator stated
/// explicitly so that an identically-zero image still lands in the right
/// tensor power.
pub fn apply_in_slot_with_arity<B, O>(
    op: &O,
    op_out_arity: usize,
    slot: usize,
    t: &TensorChain<B>,
) -> TensorChain<B>
where
    B: Ord + Clone + Graded,
    O: SlotOperator<B>,
{
    let result = apply_in_slot(op, slot, t);
    let expected = t.arity() - 1 + op_out_arity;
    if result.is_zero() && result.arity() != expected {
        TensorChain::zero(expected)
    } else {
        result
    }
}

/// Graded pairing of a pair of cochains against an arity-2 chain:
/// `<c x d, C x D> = (-1)^{deg(D) deg(c)} <c, C> <d, D>`, extended bilinearly.
pub fn pair_tensor<C, B, P>(c: &Element<C>, d: &Element<C>, t: &TensorChain<B>, pairing: P) -> BigInt
where
    C: Ord + Clone + Graded,
    B: Ord + Clone + Graded,
    P: Fn(&C, &B) -> BigInt,
{
    assert_eq!(t.arity(), 2, "pair_tensor expects an arity-2 chain");
    let mut total = BigInt::zero();
    for (tuple, coeff) in t.terms() {
        let (cap_c, cap_d) = (&tuple[0], &tuple[1]);
        for (lc, cc) in c.terms() {
            let left = pairing(lc, cap_c);
            if left.is_zero() {
                continue;
            }
            for (ld, cd) in d.terms() {
                let right = pairing(ld, cap_d);
                if right.is_zero() {
                    continue;
                }
                let sign = koszul_sign(cap_d.degree(), lc.degree());
                total += sign * coeff * cc * cd * &left * right;
            }
        }
    }
    total
}

/// Formats a formal sum given a per-term renderer. Coefficients +-1 are
/// folded into the sign; the zero sum prints as `0`.
pub fn format_sum<'a, I, T: 'a, F>(terms: I, mut render: F) -> String
where
    I: Iterator<Item = (&'a T, &'a BigInt)>,
    F: FnMut(&T) -> String,
{
    let mut out = String::new();
    for (t, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if !abs.is_one() {
            out.push_str(&format!("{} ", abs));
        }
        out.push_str(&render(t));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: fmt::Display + Ord + Clone> fmt::Display for Element<Label<F>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_sum(self.terms(), |b| b.to_string()))
    }
}

impl<F: fmt::Display + Ord + Clone> fmt::Display for TensorChain<Label<F>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            format_sum(self.terms(), |tuple| {
                let slots: Vec<String> = tuple.iter().map(|b| b.to_string()).collect();
                format!("({})", slots.join(","))
            })
        )
    }
}
