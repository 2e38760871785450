//! Field-element traits shared by the concrete coefficient domains.
//!
//! The residue fields in this crate (prime fields, their quadratic
//! extensions, perfected rational function fields, towers of those) all
//! implement [`FieldElement`]. Structural mistakes — mixing elements of
//! different ambient fields — panic, because they are bugs in the caller,
//! not data-dependent conditions. Genuinely data-dependent failures
//! (inverting zero, deciding squareness past a precision cutoff) return
//! [`crate::error::Result`].
//!
//! Elements carry their context (prime, modulus polynomial, perfection
//! depth) with them, usually behind an `Arc`, so there is no global field
//! registry; `zero_like`/`one_like` manufacture constants in the same
//! ambient field as `self`.

use crate::error::Result;

/// An element of a field of odd characteristic `p`.
pub trait FieldElement: Clone + PartialEq + std::fmt::Debug {
    /// The additive identity of the same ambient field as `self`.
    fn zero_like(&self) -> Self;

    /// The multiplicative identity of the same ambient field as `self`.
    fn one_like(&self) -> Self;

    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn add(&self, rhs: &Self) -> Self;

    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self;

    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// The characteristic of the ambient field. Always an odd prime here.
    fn characteristic(&self) -> u64;

    /// `self^e` by binary exponentiation. `x^0 = 1` for every `x`.
    fn pow_u(&self, e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn square(&self) -> Self {
        self.mul(self)
    }
}

/// A field of characteristic `p` on which the Frobenius `x -> x^p` is
/// surjective, with an effective inverse.
pub trait PerfectField: FieldElement {
    /// `x -> x^p`.
    fn frobenius(&self) -> Self;

    /// The unique `p`-th root. Total on a perfect field.
    fn pth_root(&self) -> Self;
}

/// Fields with a decidable squareness predicate.
pub trait SquareTest: FieldElement {
    /// Whether `self` is a square in the ambient field. Zero is excluded
    /// (square classes are classes of nonzero elements) and rejected with
    /// `ZeroInput`. May fail with `InsufficientPrecision` for truncated
    /// series.
    fn is_square(&self) -> Result<bool>;
}

/// Whether two nonzero elements lie in the same square class, i.e. whether
/// `a/b` is a square.
pub fn same_square_class<F: SquareTest>(a: &F, b: &F) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(crate::error::Error::ZeroInput(
            "square classes are classes of nonzero elements",
        ));
    }
    a.div(b)?.is_square()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FFElt;
    use std::sync::Arc;

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Arc::new(crate::finite_field::FiniteField::prime(7).unwrap());
        let x = FFElt::from_u64(&f, 3);
        let mut acc = x.one_like();
        for e in 0..20u64 {
            assert_eq!(x.pow_u(e), acc, "exponent {e}");
            acc = acc.mul(&x);
        }
    }
}
