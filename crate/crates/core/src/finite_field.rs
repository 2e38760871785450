//! Finite fields `F_q` of odd characteristic, `q = p^k`.
//!
//! The fields used here are tiny (`q <= 49` in every scenario), so elements
//! are coefficient vectors over machine integers and the expensive choices
//! (irreducible modulus, square roots) are found by scanning. Every element
//! carries an `Arc` to its field descriptor; binary operations assert that
//! both operands come from the same field.
//!
//! Prime fields use the zero-degree representation directly; extensions are
//! `F_p[x]/(f)` for a monic irreducible `f` found at construction time.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField, SquareTest};

/// Descriptor of a finite field `F_{p^k}`, `p` an odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: u32,
    /// Monic modulus of degree `k`, little-endian coefficients in `F_p`,
    /// leading coefficient 1. For `k == 1` this is `x`, i.e. `[0, 1]`.
    modulus: Vec<u64>,
}

/// Whether `p` is an odd prime (the characteristics this crate supports).
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::validate_p(p)?;
        Ok(FiniteField { p, k: 1, modulus: vec![0, 1] })
    }

    /// The quadratic extension `F_{p^2} = F_p[x]/(x^2 - n)` for the least
    /// quadratic non-residue `n`.
    pub fn quadratic(p: u64) -> Result<Self> {
        Self::validate_p(p)?;
        let n = (2..p)
            .find(|&n| !scalar_is_square(p, n))
            .expect("odd prime fields have non-residues");
        Ok(FiniteField { p, k: 2, modulus: vec![p - n, 0, 1] })
    }

    fn validate_p(p: u64) -> Result<()> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "characteristic must be an odd prime, got {p}"
            )));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidParameter(format!(
                "characteristic {p} exceeds the supported range"
            )));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// The defining modulus as little-endian coefficients (monic, length
    /// `k + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The field order `q = p^k`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// All `q` elements, in a fixed order (base-`p` digit strings).
    pub fn elements(self: &Arc<Self>) -> Vec<FFElt> {
        (0..self.order()).map(|i| self.element_from_index(i)).collect()
    }

    /// The element whose coefficient vector is the base-`p` digits of `idx`.
    pub fn element_from_index(self: &Arc<Self>, idx: u64) -> FFElt {
        assert!(idx < self.order(), "element index out of range");
        let mut coeffs = vec![0u64; self.k as usize];
        let mut i = idx;
        for c in coeffs.iter_mut() {
            *c = i % self.p;
            i /= self.p;
        }
        FFElt { field: Arc::clone(self), coeffs }
    }
}

fn scalar_is_square(p: u64, n: u64) -> bool {
    (0..p).any(|y| (y * y) % p == n % p)
}

/// An element of a [`FiniteField`].
#[derive(Clone, PartialEq, Eq)]
pub struct FFElt {
    field: Arc<FiniteField>,
    /// Little-endian coefficients, length `k`, each reduced mod `p`.
    coeffs: Vec<u64>,
}

impl FFElt {
    /// The scalar `n mod p` (a prime-subfield element in any `F_{p^k}`).
    pub fn from_u64(field: &Arc<FiniteField>, n: u64) -> Self {
        let mut coeffs = vec![0u64; field.k as usize];
        coeffs[0] = n % field.p;
        FFElt { field: Arc::clone(field), coeffs }
    }

    /// The scalar `n mod p` for signed `n`.
    pub fn from_i64(field: &Arc<FiniteField>, n: i64) -> Self {
        let p = field.p as i64;
        Self::from_u64(field, n.rem_euclid(p) as u64)
    }

    /// The residue class of the generator `x` (requires `k >= 2`).
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        assert!(field.k >= 2, "prime fields have no extension generator");
        let mut coeffs = vec![0u64; field.k as usize];
        coeffs[1] = 1;
        FFElt { field: Arc::clone(field), coeffs }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The residue as an integer in `0..p`. Panics on proper extensions.
    pub fn to_u64(&self) -> u64 {
        assert!(
            self.coeffs[1..].iter().all(|&c| c == 0),
            "to_u64 on an element outside the prime subfield"
        );
        self.coeffs[0]
    }

    /// The index of this element in the [`FiniteField::elements`] order.
    pub fn to_index(&self) -> u64 {
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev() {
            idx = idx * self.field.p + c;
        }
        idx
    }

    fn assert_same_field(&self, rhs: &Self) {
        assert!(
            self.field == rhs.field,
            "mixed elements of F_{}^{} and F_{}^{}",
            self.field.p,
            self.field.k,
            rhs.field.p,
            rhs.field.k
        );
    }

    /// A square root, if one exists, by scanning the field.
    pub fn sqrt(&self) -> Result<FFElt> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        for idx in 0..self.field.order() {
            let y = self.field.element_from_index(idx);
            if y.mul(&y) == *self {
                return Ok(y);
            }
        }
        Err(Error::NotAUnit(format!("{self} is not a square")))
    }
}

impl fmt::Debug for FFElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElt({self} in F_{}^{})", self.field.p, self.field.k)
    }
}

impl fmt::Display for FFElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 if c == 1 => "g".to_string(),
                1 => format!("{c}*g"),
                _ if c == 1 => format!("g^{i}"),
                _ => format!("{c}*g^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FieldElement for FFElt {
    fn zero_like(&self) -> Self {
        FFElt::from_u64(&self.field, 0)
    }

    fn one_like(&self) -> Self {
        FFElt::from_u64(&self.field, 1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FFElt { field: Arc::clone(&self.field), coeffs }
    }

    fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FFElt { field: Arc::clone(&self.field), coeffs }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        let p = self.field.p as u128;
        let k = self.field.k as usize;
        // Schoolbook product, then reduce by the monic modulus.
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + (a as u128) * (b as u128)) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // x^d = x^(d-k) * (x^k mod f) since f is monic.
            for (i, &m) in self.field.modulus[..k].iter().enumerate() {
                let sub = (c * (m as u128)) % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        let coeffs = prod[..k].iter().map(|&c| c as u64).collect();
        FFElt { field: Arc::clone(&self.field), coeffs }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // q is tiny, so Fermat is both correct and fast enough.
        Ok(self.pow_u(self.field.order() - 2))
    }

    fn characteristic(&self) -> u64 {
        self.field.p
    }
}

impl PerfectField for FFElt {
    fn frobenius(&self) -> Self {
        self.pow_u(self.field.p)
    }

    fn pth_root(&self) -> Self {
        // x^(p^k) = x, so the p-th root is x^(p^(k-1)).
        self.pow_u(self.field.p.pow(self.field.k - 1))
    }
}

impl SquareTest for FFElt {
    fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput(
                "square classes are classes of nonzero elements",
            ));
        }
        // Euler's criterion in F_q.
        Ok(self.pow_u((self.field.order() - 1) / 2).is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(5).unwrap())
    }

    fn f9() -> Arc<FiniteField> {
        Arc::new(FiniteField::quadratic(3).unwrap())
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(FiniteField::prime(2).is_err());
        assert!(FiniteField::prime(1).is_err());
        assert!(FiniteField::prime(9).is_err());
        assert!(FiniteField::quadratic(15).is_err());
    }

    #[test]
    fn squares_in_f5() {
        let f = f5();
        let squares: Vec<u64> = f
            .elements()
            .into_iter()
            .filter(|x| !x.is_zero() && x.is_square().unwrap())
            .map(|x| x.to_u64())
            .collect();
        assert_eq!(squares, vec![1, 4]);
        // Zero is excluded from square-class tests by convention.
        assert!(FFElt::from_u64(&f, 0).is_square().is_err());
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f = f9();
        let elts = f.elements();
        assert_eq!(elts.len(), 9);
        for a in &elts {
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            for b in &elts {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.sub(b).add(b), *a);
            }
        }
    }

    #[test]
    fn generator_squares_to_nonresidue() {
        let f = f9();
        let g = FFElt::generator(&f);
        // Modulus is x^2 - n for a non-residue n, so g^2 = n.
        let n = g.mul(&g);
        assert!(!n.is_zero());
        assert!(n.coeffs()[1] == 0);
        assert!(!scalar_is_square(3, n.to_u64()));
    }

    #[test]
    fn frobenius_is_bijective_with_inverse_pth_root() {
        let f = f9();
        let mut images = std::collections::BTreeSet::new();
        for x in f.elements() {
            let y = x.frobenius();
            assert_eq!(y.pth_root(), x);
            assert_eq!(x.pth_root().frobenius(), x);
            images.insert(y.to_index());
        }
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn square_counts() {
        for field in [f5(), f9(), Arc::new(FiniteField::quadratic(5).unwrap())] {
            let q = field.order();
            let nonzero_squares = field
                .elements()
                .into_iter()
                .filter(|x| !x.is_zero() && x.is_square().unwrap())
                .count() as u64;
            assert_eq!(nonzero_squares, (q - 1) / 2);
        }
    }

    #[test]
    fn sqrt_finds_roots() {
        let f = f9();
        for x in f.elements() {
            if x.is_zero() {
                assert!(x.sqrt().unwrap().is_zero());
                continue;
            }
            if x.is_square().unwrap() {
                let r = x.sqrt().unwrap();
                assert_eq!(r.mul(&r), x);
            } else {
                assert!(x.sqrt().is_err());
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = f9();
        for (i, x) in f.elements().into_iter().enumerate() {
            assert_eq!(x.to_index(), i as u64);
        }
    }
}
