//! The fraction field of `W_n(k)`, presented with explicit precision.
//!
//! An element is stored as `p^{-shift} * vec` where `vec` is a length-`n`
//! Witt vector whose first `valid` coordinates are trusted; coordinates at
//! or beyond `valid` are forced to zero and carry no information. Because
//! the structure polynomials are triangular (coordinate `i` of a sum or
//! product depends only on coordinates `<= i` of the operands), a trusted
//! prefix of length `min(valid_a, valid_b)` survives every ring operation,
//! which is the whole bookkeeping discipline here. Division by `p` costs
//! precision, multiplication by `p` never does, and any question that
//! cannot be settled from the trusted prefix surfaces as
//! [`Error::InsufficientPrecision`] rather than a default answer.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField};
use crate::witt::polygen::WittPolys;
use crate::witt::WittVec;

/// `p^{-shift} * vec`, trusted through coordinate `valid - 1`.
#[derive(Clone)]
pub struct LocalWitt<K: PerfectField> {
    vec: WittVec<K>,
    shift: i64,
    valid: usize,
}

impl<K: PerfectField> LocalWitt<K> {
    /// Wraps an exact integral Witt vector (shift 0, fully trusted).
    pub fn integral(vec: WittVec<K>) -> Self {
        let valid = vec.length();
        LocalWitt { vec, shift: 0, valid }
    }

    pub fn with_precision(vec: WittVec<K>, shift: i64, valid: usize) -> Self {
        let valid = valid.min(vec.length());
        LocalWitt { vec: sanitize(vec, valid), shift, valid }
    }

    pub fn zero(polys: &Arc<WittPolys>, witness: &K) -> Self {
        Self::integral(WittVec::zero(polys, witness))
    }

    pub fn one(polys: &Arc<WittPolys>, witness: &K) -> Self {
        Self::integral(WittVec::one(polys, witness))
    }

    pub fn teichmuller(polys: &Arc<WittPolys>, a: &K) -> Self {
        Self::integral(WittVec::teichmuller(polys, a))
    }

    pub fn small_scalar(polys: &Arc<WittPolys>, witness: &K, c: u64) -> Self {
        Self::integral(WittVec::small_scalar(polys, witness, c))
    }

    pub fn p(&self) -> u64 {
        self.vec.p()
    }

    pub fn length(&self) -> usize {
        self.vec.length()
    }

    pub fn polys(&self) -> &Arc<WittPolys> {
        self.vec.polys()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn valid(&self) -> usize {
        self.valid
    }

    pub fn vec(&self) -> &WittVec<K> {
        &self.vec
    }

    fn witness(&self) -> &K {
        self.vec.component(0)
    }

    /// Index of the first nonzero trusted coordinate. `Ok(None)` means the
    /// element vanishes through its full stored length; an untrusted tail
    /// with no nonzero coordinate before it is not enough to decide.
    fn leading_index(&self) -> Result<Option<usize>> {
        for i in 0..self.valid {
            if !self.vec.component(i).is_zero() {
                return Ok(Some(i));
            }
        }
        if self.valid == self.length() {
            Ok(None)
        } else {
            Err(Error::InsufficientPrecision(format!(
                "all {} trusted Witt coordinates vanish; cannot locate the leading term",
                self.valid
            )))
        }
    }

    /// The `p`-adic valuation, or `Ok(None)` for (exact) zero.
    pub fn vp(&self) -> Result<Option<i64>> {
        Ok(self.leading_index()?.map(|i| i as i64 - self.shift))
    }

    pub fn is_known_zero(&self) -> bool {
        matches!(self.leading_index(), Ok(None))
    }

    /// Re-expresses the element with a larger shift (same value).
    fn raise_shift(&self, target: i64) -> Self {
        assert!(target >= self.shift);
        let d = (target - self.shift) as usize;
        if d == 0 {
            return self.clone();
        }
        let valid = (self.valid + d).min(self.length());
        LocalWitt { vec: sanitize(self.vec.times_p_pow(d), valid), shift: target, valid }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_context(rhs);
        let s = self.shift.max(rhs.shift);
        let a = self.raise_shift(s);
        let b = rhs.raise_shift(s);
        let valid = a.valid.min(b.valid);
        LocalWitt { vec: sanitize(a.vec.add(&b.vec), valid), shift: s, valid }
    }

    pub fn neg(&self) -> Self {
        LocalWitt { vec: self.vec.neg(), shift: self.shift, valid: self.valid }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_context(rhs);
        let valid = self.valid.min(rhs.valid);
        LocalWitt {
            vec: sanitize(self.vec.mul(&rhs.vec), valid),
            shift: self.shift + rhs.shift,
            valid,
        }
    }

    /// Multiplies by `p^k` (`k` may be negative); pure bookkeeping, no
    /// precision change.
    pub fn mul_by_p_pow(&self, k: i64) -> Self {
        LocalWitt { vec: self.vec.clone(), shift: self.shift - k, valid: self.valid }
    }

    /// Multiplicative inverse via Newton iteration `z <- z(2 - uz)` on the
    /// unit part, seeded with the Teichmuller inverse of its residue. The
    /// error `1 - uz` at least doubles in valuation each step, so
    /// `ceil(log2 n) + 1` iterations are always enough.
    pub fn inv(&self) -> Result<Self> {
        let i0 = match self.leading_index()? {
            Some(i) => i,
            None => return Err(Error::DivisionByZero),
        };
        let unit_valid = self.valid - i0;
        let unit = if i0 == 0 {
            self.vec.clone()
        } else {
            sanitize(self.vec.div_p_pow(i0)?, unit_valid)
        };
        if unit_valid == 0 {
            return Err(Error::InsufficientPrecision(
                "no trusted coordinates remain in the unit part".into(),
            ));
        }
        let u0 = unit.component(0);
        let z0 = u0.inv().expect("leading coordinate is nonzero");
        let polys = self.polys();
        let mut z = WittVec::teichmuller(polys, &z0);
        let two = WittVec::small_scalar(polys, self.witness(), 2 % self.p());
        let mut steps = 0usize;
        while (1usize << steps) < self.length() {
            steps += 1;
        }
        for _ in 0..steps {
            z = z.mul(&two.sub(&unit.mul(&z)));
        }
        Ok(LocalWitt {
            vec: sanitize(z, unit_valid),
            shift: i0 as i64 - self.shift,
            valid: unit_valid,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// The residue under the valuation ring's reduction map: zero when the
    /// valuation is positive, `x_{i_0}^{p^{-i_0}}` for a unit, and an error
    /// for negative valuation.
    pub fn residue(&self) -> Result<K> {
        match self.vp()? {
            None => Ok(self.witness().zero_like()),
            Some(v) if v > 0 => Ok(self.witness().zero_like()),
            Some(v) if v < 0 => Err(Error::NotAUnit(format!(
                "valuation {v} is negative; no residue"
            ))),
            Some(_) => {
                let i0 = self.shift as usize;
                let mut c = self.vec.component(i0).clone();
                for _ in 0..i0 {
                    c = c.pth_root();
                }
                Ok(c)
            }
        }
    }

    /// Whether the two elements agree on every coordinate both sides trust
    /// (after aligning shifts). An empty overlap is no contradiction.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.p() != other.p() || self.length() != other.length() {
            return false;
        }
        let s = self.shift.max(other.shift);
        let a = self.raise_shift(s);
        let b = other.raise_shift(s);
        let overlap = a.valid.min(b.valid);
        (0..overlap).all(|i| a.vec.component(i) == b.vec.component(i))
    }

    fn check_context(&self, rhs: &Self) {
        assert_eq!(self.p(), rhs.p(), "mixed characteristics");
        assert_eq!(self.length(), rhs.length(), "mixed Witt lengths");
    }
}

/// Zeroes every coordinate at or beyond `valid`.
fn sanitize<K: FieldElement>(vec: WittVec<K>, valid: usize) -> WittVec<K> {
    if valid >= vec.length() {
        return vec;
    }
    let comps: Vec<K> = vec
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| if i < valid { c.clone() } else { c.zero_like() })
        .collect();
    WittVec::from_components(vec.polys(), comps).expect("same context")
}

impl<K: PerfectField + std::fmt::Display> std::fmt::Display for LocalWitt<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.shift != 0 {
            write!(f, "{}^{} * ", self.p(), -self.shift)?;
        }
        write!(f, "{} [trusted {}]", self.vec, self.valid)
    }
}

impl<K: PerfectField + std::fmt::Display> std::fmt::Debug for LocalWitt<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}
