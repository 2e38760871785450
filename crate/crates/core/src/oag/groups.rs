//! Descriptors for the value groups that actually occur, with membership,
//! divisibility, and pointed-group bookkeeping.
//!
//! Every group in play is torsion-free and concrete: a subgroup of the
//! rationals generated by `1/(2 p^m)`-style denominators, the lexicographic
//! group `Gamma` or one of its truncations, or a lexicographic sum of a
//! coarse and a fine part. Torsion-freeness is what keeps divisibility
//! simple: a witness `w` with `n * w = x` is unique in the ambient rational
//! vector space, so divisibility inside a lexicographic sum decomposes
//! componentwise and the canonical witness can be exhibited directly.
//!
//! A [`PointedGroup`] pairs a descriptor with a marked element; the
//! `n`-divisibility of the marked point is the first-order invariant that
//! separates otherwise isomorphic pointed groups.

use std::cmp::Ordering;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::oag::{ConvexSubgroup, OagElement};
use crate::rational::{factor_out, int, rat, Rat};

/// How many powers of `p` a denominator may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PCap {
    /// No `p` in denominators.
    None,
    /// At most `p^m`.
    Finite(u32),
    /// Any power of `p`.
    Infinite,
}

/// A subgroup of the rationals: all `a / (2^eps * p^j)` with `a` an
/// integer, `eps <= 1` when `half` is set (else `eps = 0`), and `j`
/// bounded by `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatSubgroup {
    pub p: u64,
    pub half: bool,
    pub cap: PCap,
}

impl RatSubgroup {
    pub fn new(p: u64, half: bool, cap: PCap) -> Self {
        // `(1/(2 p^0))Z` is `(1/2)Z`; normalise so equal groups compare equal.
        let cap = match cap {
            PCap::Finite(0) => PCap::None,
            other => other,
        };
        RatSubgroup { p, half, cap }
    }

    pub fn contains(&self, r: &Rat) -> bool {
        let (j, rest) = factor_out(self.p, r.denom());
        let cap_ok = match self.cap {
            PCap::None => j == 0,
            PCap::Finite(m) => j <= m as u64,
            PCap::Infinite => true,
        };
        let rest_ok = rest.is_one() || (self.half && rest == int(2));
        cap_ok && rest_ok
    }
}

impl fmt::Display for RatSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.half, self.cap) {
            (false, PCap::None) => write!(f, "Z"),
            (true, PCap::None) => write!(f, "(1/2)Z"),
            (false, PCap::Finite(m)) => write!(f, "(1/{}^{})Z", self.p, m),
            (true, PCap::Finite(m)) => write!(f, "(1/(2*{}^{}))Z", self.p, m),
            (false, PCap::Infinite) => write!(f, "(1/{}^oo)Z", self.p),
            (true, PCap::Infinite) => write!(f, "(1/(2*{}^oo))Z", self.p),
        }
    }
}

/// A value group in one of the shapes this crate constructs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDesc {
    Rational(RatSubgroup),
    /// The full lexicographic group attached to `p`.
    Gamma { p: u64 },
    /// `Gamma / Delta_threshold`, realised as elements supported on
    /// indices `<= threshold`.
    GammaQuotient { p: u64, threshold: i64 },
    /// Lexicographic sum, the first summand more significant.
    LexSum(Box<GroupDesc>, Box<GroupDesc>),
}

impl GroupDesc {
    pub fn integers(p: u64) -> Self {
        GroupDesc::Rational(RatSubgroup::new(p, false, PCap::None))
    }

    pub fn half_integers(p: u64) -> Self {
        GroupDesc::Rational(RatSubgroup::new(p, true, PCap::None))
    }

    /// `(1/p^oo)Z`, the `p`-divisible hull of the integers.
    pub fn p_divisible_hull(p: u64) -> Self {
        GroupDesc::Rational(RatSubgroup::new(p, false, PCap::Infinite))
    }

    /// `(1/(2 p^m))Z`.
    pub fn half_p_depth(p: u64, m: u32) -> Self {
        GroupDesc::Rational(RatSubgroup::new(p, true, PCap::Finite(m)))
    }

    /// `(1/(2 p^oo))Z`.
    pub fn half_p_divisible(p: u64) -> Self {
        GroupDesc::Rational(RatSubgroup::new(p, true, PCap::Infinite))
    }

    pub fn gamma(p: u64) -> Self {
        GroupDesc::Gamma { p }
    }

    pub fn gamma_quotient(p: u64, threshold: i64) -> Self {
        GroupDesc::GammaQuotient { p, threshold }
    }

    pub fn lex_sum(coarse: GroupDesc, fine: GroupDesc) -> Self {
        GroupDesc::LexSum(Box::new(coarse), Box::new(fine))
    }

    pub fn zero(&self) -> GroupElt {
        match self {
            GroupDesc::Rational(_) => GroupElt::Rat(Rat::zero()),
            GroupDesc::Gamma { p } | GroupDesc::GammaQuotient { p, .. } => {
                GroupElt::Gamma(OagElement::zero(*p))
            }
            GroupDesc::LexSum(c, f) => GroupElt::pair(c.zero(), f.zero()),
        }
    }

    pub fn contains(&self, x: &GroupElt) -> bool {
        match (self, x) {
            (GroupDesc::Rational(sub), GroupElt::Rat(r)) => sub.contains(r),
            (GroupDesc::Gamma { p }, GroupElt::Gamma(g)) => g.p() == *p,
            (GroupDesc::GammaQuotient { p, threshold }, GroupElt::Gamma(g)) => {
                g.p() == *p && ConvexSubgroup::new(*threshold).section(g).is_ok()
            }
            (GroupDesc::LexSum(c, f), GroupElt::Pair(a, b)) => c.contains(a) && f.contains(b),
            _ => false,
        }
    }

    /// Whether every member of the group is divisible by the attached
    /// prime inside the group.
    pub fn is_p_divisible(&self) -> bool {
        match self {
            GroupDesc::Rational(sub) => sub.cap == PCap::Infinite,
            GroupDesc::Gamma { .. } | GroupDesc::GammaQuotient { .. } => true,
            GroupDesc::LexSum(c, f) => c.is_p_divisible() && f.is_p_divisible(),
        }
    }

    /// The unique witness `w` in this group with `n * w = x`, when it
    /// exists. For lexicographic sums the witness is found componentwise,
    /// which is exhaustive because witnesses in the ambient torsion-free
    /// group are unique.
    pub fn divide_witness(&self, x: &GroupElt, n: u64) -> Option<GroupElt> {
        assert!(n >= 1, "divisor must be a positive integer");
        assert!(self.contains(x), "divisibility test outside the group: {x}");
        match (self, x) {
            (GroupDesc::Rational(sub), GroupElt::Rat(r)) => {
                let w = r / rat(n as i64, 1);
                sub.contains(&w).then(|| GroupElt::Rat(w))
            }
            (GroupDesc::Gamma { .. }, GroupElt::Gamma(g))
            | (GroupDesc::GammaQuotient { .. }, GroupElt::Gamma(g)) => {
                g.divide_witness(n).map(GroupElt::Gamma)
            }
            (GroupDesc::LexSum(c, f), GroupElt::Pair(a, b)) => {
                let wa = c.divide_witness(a, n)?;
                let wb = f.divide_witness(b, n)?;
                Some(GroupElt::pair(wa, wb))
            }
            _ => unreachable!("contains() above rules out shape mismatches"),
        }
    }

    pub fn divisible(&self, x: &GroupElt, n: u64) -> bool {
        self.divide_witness(x, n).is_some()
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Rational(sub) => write!(f, "{sub}"),
            GroupDesc::Gamma { p } => write!(f, "Gamma(p={p})"),
            GroupDesc::GammaQuotient { p, threshold } => {
                write!(f, "Gamma(p={p})/Delta_{threshold}")
            }
            GroupDesc::LexSum(c, fine) => write!(f, "lex({c}, {fine})"),
        }
    }
}

/// An element of a described group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupElt {
    Rat(Rat),
    Gamma(OagElement),
    Pair(Box<GroupElt>, Box<GroupElt>),
}

impl GroupElt {
    pub fn pair(coarse: GroupElt, fine: GroupElt) -> Self {
        GroupElt::Pair(Box::new(coarse), Box::new(fine))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        GroupElt::Rat(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElt::Rat(r) => r.is_zero(),
            GroupElt::Gamma(g) => g.is_zero(),
            GroupElt::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElt::Rat(a), GroupElt::Rat(b)) => GroupElt::Rat(a + b),
            (GroupElt::Gamma(a), GroupElt::Gamma(b)) => GroupElt::Gamma(a.add(b)),
            (GroupElt::Pair(a1, b1), GroupElt::Pair(a2, b2)) => {
                GroupElt::pair(a1.add(a2), b1.add(b2))
            }
            _ => panic!("adding group elements of different shapes"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            GroupElt::Rat(r) => GroupElt::Rat(-r),
            GroupElt::Gamma(g) => GroupElt::Gamma(g.neg()),
            GroupElt::Pair(a, b) => GroupElt::pair(a.neg(), b.neg()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Order comparison; lexicographic sums compare the coarse part first.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElt::Rat(a), GroupElt::Rat(b)) => a.cmp(b),
            (GroupElt::Gamma(a), GroupElt::Gamma(b)) => a.lex_cmp(b),
            (GroupElt::Pair(a1, b1), GroupElt::Pair(a2, b2)) => {
                a1.cmp_order(a2).then_with(|| b1.cmp_order(b2))
            }
            _ => panic!("comparing group elements of different shapes"),
        }
    }
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElt::Rat(r) => write!(f, "{r}"),
            GroupElt::Gamma(g) => write!(f, "{g}"),
            GroupElt::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// A value group with a marked element, typically `(vK, v(p))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedGroup {
    pub desc: GroupDesc,
    pub point: GroupElt,
}

impl PointedGroup {
    pub fn new(desc: GroupDesc, point: GroupElt) -> Self {
        assert!(
            desc.contains(&point),
            "marked point {point} lies outside {desc}"
        );
        PointedGroup { desc, point }
    }

    pub fn point_divisible_by(&self, n: u64) -> bool {
        self.desc.divisible(&self.point, n)
    }

    pub fn divide_point(&self, n: u64) -> Option<GroupElt> {
        self.desc.divide_witness(&self.point, n)
    }
}

/// Whether two pointed groups agree on divisibility of the marked point by
/// each listed modulus. Disagreement on any modulus is a first-order
/// difference between the pointed structures.
pub fn same_pointed_divisibility(a: &PointedGroup, b: &PointedGroup, moduli: &[u64]) -> bool {
    moduli
        .iter()
        .all(|&n| a.point_divisible_by(n) == b.point_divisible_by(n))
}

/// Evidence that `sub` has index two in `sup`: both are rational groups
/// with the same `p`-denominator policy, `sup` additionally allows one
/// factor of two, `1/2` generates the quotient, and every sample lands in
/// exactly one of the two cosets. Samples must be members of `sup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTwoCertificate {
    pub generator: Rat,
    pub samples_checked: usize,
}

pub fn index_two_certificate(
    sub: &RatSubgroup,
    sup: &RatSubgroup,
    samples: &[Rat],
) -> Result<IndexTwoCertificate> {
    if sub.p != sup.p || sub.cap != sup.cap || sub.half || !sup.half {
        return Err(Error::InvalidParameter(format!(
            "index-two certificate expects {sub} inside its half-hull, got sup = {sup}"
        )));
    }
    let g = rat(1, 2);
    if !sup.contains(&g) || sub.contains(&g) || !sub.contains(&(&g + &g)) {
        return Err(Error::InvalidParameter(
            "1/2 does not generate the expected quotient".into(),
        ));
    }
    for x in samples {
        if !sup.contains(x) {
            return Err(Error::InvalidParameter(format!(
                "sample {x} lies outside {sup}"
            )));
        }
        let in_sub = sub.contains(x);
        let in_coset = sub.contains(&(x - &g));
        if in_sub == in_coset {
            return Err(Error::InvalidParameter(format!(
                "sample {x} fails the two-coset dichotomy"
            )));
        }
    }
    Ok(IndexTwoCertificate { generator: g, samples_checked: samples.len() })
}
