//! The lexicographic value group `Gamma` and its convex subgroups.
//!
//! `Gamma` is the direct sum, over all integer indices, of copies of
//! `Z[1/p]`, ordered lexicographically. An element is a finite map from
//! indices to nonzero rationals whose denominators are powers of `p`; the
//! basis vector at index `i` is written `e_i`. The significance convention
//! (which index dominates the lexicographic comparison) is recorded once in
//! [`SMALLER_INDEX_DOMINATES`] and consulted nowhere else, so `e_1 > e_2 >
//! ... > 0` throughout, and every `e_i` is infinitely larger than `e_{i+1}`.
//!
//! The convex subgroups of `Gamma` that matter here form a chain: `Delta_i`
//! consists of the elements supported strictly above index `i`, the quotient
//! `Gamma / Delta_i` truncates support to indices `<= i`, and the canonical
//! section embeds the quotient back as the elements supported `<= i`.
//! Divisibility by an integer `n = p^e * m` is decidable coordinatewise:
//! since denominators absorb any power of `p`, only the prime-to-`p` part
//! `m` has to divide each numerator, and the witness is then unique because
//! the group is torsion-free.

pub mod groups;
pub mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factor_out, int, Int, Rat};

/// Lexicographic significance convention: when `true`, the coordinate with
/// the *smaller* index decides comparisons, so `e_1 > e_2`. This is the
/// single place the convention lives; flipping it reverses the roles of the
/// indices consistently across comparison, leading index, and archimedean
/// classes.
pub const SMALLER_INDEX_DOMINATES: bool = true;

/// An element of `Gamma`: a finite support map `index -> coordinate` with
/// nonzero coordinates whose denominators are powers of `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct OagElement {
    p: u64,
    coords: BTreeMap<i64, Rat>,
}

impl OagElement {
    /// The zero element of the group attached to the prime `p`.
    pub fn zero(p: u64) -> Self {
        OagElement { p, coords: BTreeMap::new() }
    }

    /// The basis vector `e_i`.
    pub fn basis(p: u64, i: i64) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(i, Rat::one());
        OagElement { p, coords }
    }

    /// Builds an element from `(index, coordinate)` pairs, dropping zero
    /// coordinates and summing duplicates. Fails if some resulting
    /// denominator is not a power of `p`.
    pub fn from_coords<I>(p: u64, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rat)>,
    {
        let mut coords: BTreeMap<i64, Rat> = BTreeMap::new();
        for (i, c) in pairs {
            let entry = coords.entry(i).or_insert_with(Rat::zero);
            *entry += c;
        }
        coords.retain(|_, c| !c.is_zero());
        for c in coords.values() {
            if !factor_out(p, c.denom()).1.is_one() {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {c} has a denominator not a power of {p}"
                )));
            }
        }
        Ok(OagElement { p, coords })
    }

    /// The prime attached to the ambient group.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The coordinate at `index` (zero when absent).
    pub fn coord(&self, index: i64) -> Rat {
        self.coords.get(&index).cloned().unwrap_or_else(Rat::zero)
    }

    /// The support, in ascending index order.
    pub fn support(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coords.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn assert_same_group(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "mixing elements of value groups with different primes"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_group(other);
        let mut coords = self.coords.clone();
        for (i, c) in &other.coords {
            let entry = coords.entry(*i).or_insert_with(Rat::zero);
            *entry += c;
        }
        coords.retain(|_, c| !c.is_zero());
        OagElement { p: self.p, coords }
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|(i, c)| (*i, -c.clone())).collect();
        OagElement { p: self.p, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies every coordinate by the integer `n`.
    pub fn scale(&self, n: &Int) -> Self {
        if n.is_zero() {
            return Self::zero(self.p);
        }
        let coords = self
            .coords
            .iter()
            .map(|(i, c)| (*i, c * Rat::from(n.clone())))
            .collect();
        OagElement { p: self.p, coords }
    }

    /// Multiplies every coordinate by `1/p` (allowed: `Gamma` is
    /// `p`-divisible by construction).
    pub fn div_p(&self) -> Self {
        let p = Rat::from(int(self.p as i64));
        let coords = self.coords.iter().map(|(i, c)| (*i, c / &p)).collect();
        OagElement { p: self.p, coords }
    }

    /// Relabels indices by `i -> i + k`; this is the automorphism of
    /// `Gamma` induced by shifting the basis.
    pub fn shift(&self, k: i64) -> Self {
        let coords = self.coords.iter().map(|(i, c)| (i + k, c.clone())).collect();
        OagElement { p: self.p, coords }
    }

    /// Lexicographic comparison under the significance convention.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.assert_same_group(other);
        let keys: BTreeSet<i64> = self
            .coords
            .keys()
            .chain(other.coords.keys())
            .copied()
            .collect();
        let significance: Box<dyn Iterator<Item = i64>> = if SMALLER_INDEX_DOMINATES {
            Box::new(keys.into_iter())
        } else {
            Box::new(keys.into_iter().rev())
        };
        for i in significance {
            match self.coord(i).cmp(&other.coord(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.lex_cmp(&Self::zero(self.p)) == Ordering::Greater
    }

    /// The most significant index of the support (`None` for zero).
    pub fn leading_index(&self) -> Option<i64> {
        if SMALLER_INDEX_DOMINATES {
            self.coords.keys().next().copied()
        } else {
            self.coords.keys().next_back().copied()
        }
    }

    /// Whether `self` is divisible by `n >= 1` inside `Gamma`.
    pub fn divisible_by(&self, n: u64) -> bool {
        self.divide_witness(n).is_some()
    }

    /// The unique witness `w` with `n * w = self`, when one exists in
    /// `Gamma`. Writing `n = p^e * m`, the witness exists iff `m` divides
    /// every coordinate numerator; torsion-freeness makes it unique.
    pub fn divide_witness(&self, n: u64) -> Option<OagElement> {
        assert!(n >= 1, "divisor must be a positive integer");
        let (_, m) = factor_out(self.p, &int(n as i64));
        let n_rat = Rat::from(int(n as i64));
        let mut coords = BTreeMap::new();
        for (i, c) in &self.coords {
            if !(c.numer() % &m).is_zero() {
                return None;
            }
            coords.insert(*i, c / &n_rat);
        }
        let witness = OagElement { p: self.p, coords };
        debug_assert!(witness
            .coords
            .values()
            .all(|c| factor_out(self.p, c.denom()).1.is_one()));
        Some(witness)
    }

    /// Whether `self` and `other` lie in the same archimedean class, i.e.
    /// each is bounded by an integer multiple of the other. For nonzero
    /// elements of `Gamma` this says exactly that the leading indices agree.
    pub fn archimedean_equiv(&self, other: &Self) -> Result<bool> {
        self.assert_same_group(other);
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput(
                "archimedean classes are classes of nonzero elements",
            ));
        }
        Ok(self.leading_index() == other.leading_index())
    }
}

impl PartialOrd for OagElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OagElement {
    fn cmp(&self, other: &Self) -> Ordering {
        // Elements of groups with different primes never meet in practice;
        // ordering by the prime first keeps the order total.
        self.p.cmp(&other.p).then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Debug for OagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OagElement[p={}]({self})", self.p)
    }
}

/// The convex subgroup `Delta_i` of elements supported strictly above the
/// threshold index `i`. Larger thresholds give smaller subgroups:
/// `Delta_{i+1}` sits inside `Delta_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexSubgroup {
    pub threshold: i64,
}

impl ConvexSubgroup {
    pub fn new(threshold: i64) -> Self {
        ConvexSubgroup { threshold }
    }

    /// Membership: every support index exceeds the threshold.
    pub fn contains(&self, g: &OagElement) -> bool {
        g.coords.keys().all(|&i| i > self.threshold)
    }

    /// The projection `Gamma -> Gamma / Delta`, with the quotient realised
    /// as elements supported on indices `<= threshold` (the image of the
    /// canonical section).
    pub fn quotient_map(&self, g: &OagElement) -> OagElement {
        let coords = g
            .coords
            .iter()
            .filter(|(i, _)| **i <= self.threshold)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        OagElement { p: g.p, coords }
    }

    /// The canonical section of the quotient map: on representatives
    /// supported `<= threshold` it is the identity inclusion. Fails on
    /// elements outside the image of [`ConvexSubgroup::quotient_map`].
    pub fn section(&self, g: &OagElement) -> Result<OagElement> {
        if g.coords.keys().any(|&i| i > self.threshold) {
            return Err(Error::InvalidParameter(format!(
                "{g} is not a canonical representative modulo Delta_{}",
                self.threshold
            )));
        }
        Ok(g.clone())
    }
}
