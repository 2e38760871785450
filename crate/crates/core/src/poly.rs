//! Dense univariate polynomials over a generic coefficient field.
//!
//! The one non-textbook ingredient is squarefree decomposition in
//! characteristic `p`. Yun's algorithm stalls on factors whose multiplicity
//! is divisible by `p` (their contribution to the derivative vanishes);
//! those factors are collected as a polynomial in `t^p`, rewritten via
//! coefficient-wise `p`-th roots — hence the [`PerfectField`] bound — and
//! handled by recursion, with multiplicities scaled by `p`. This is what
//! makes multiplicity parity, and so squareness of rational functions,
//! decidable over perfect coefficient fields.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField};

/// A polynomial in one variable over `F`.
///
/// Coefficients are little-endian with no trailing zeros; the zero
/// polynomial has an empty coefficient vector. A zero of the coefficient
/// field travels along so that even the zero polynomial knows its ambient
/// field.
#[derive(Clone, PartialEq)]
pub struct Poly<F: FieldElement> {
    scalar_zero: F,
    coeffs: Vec<F>,
}

impl<F: FieldElement> Poly<F> {
    /// The zero polynomial over the field of `witness`.
    pub fn zero(witness: &F) -> Self {
        Poly { scalar_zero: witness.zero_like(), coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: F) -> Self {
        let scalar_zero = c.zero_like();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { scalar_zero, coeffs }
    }

    /// The variable itself.
    pub fn var(witness: &F) -> Self {
        Poly {
            scalar_zero: witness.zero_like(),
            coeffs: vec![witness.zero_like(), witness.one_like()],
        }
    }

    /// Builds from little-endian coefficients, trimming trailing zeros.
    pub fn from_coeffs(witness: &F, coeffs: Vec<F>) -> Self {
        let mut p = Poly { scalar_zero: witness.zero_like(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// The coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.scalar_zero.clone())
    }

    pub fn scalar_zero(&self) -> &F {
        &self.scalar_zero
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Self::from_coeffs(&self.scalar_zero, coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            scalar_zero: self.scalar_zero.clone(),
            coeffs: self.coeffs.iter().map(FieldElement::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.scalar_zero);
        }
        let mut coeffs =
            vec![self.scalar_zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.scalar_zero, coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Self::from_coeffs(&self.scalar_zero, coeffs)
    }

    pub fn pow_u(&self, e: u64) -> Self {
        let mut acc = Self::constant(self.scalar_zero.one_like());
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

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Self) -> Result<(Self, Self)> {
        let Some(d) = rhs.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = rhs.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut q = vec![self.scalar_zero.clone(); self.coeffs.len()];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = rem.leading().unwrap().mul(&lc_inv);
            let shift = rd - d;
            q[shift] = c.clone();
            // rem -= c * t^shift * rhs
            let mut coeffs = rem.coeffs;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[shift + j] = coeffs[shift + j].sub(&c.mul(b));
            }
            rem = Self::from_coeffs(&self.scalar_zero, coeffs);
        }
        Ok((Self::from_coeffs(&self.scalar_zero, q), rem))
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self> {
        Ok(self.divmod(rhs)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divmod(rhs)?;
        if !r.is_zero() {
            return Err(Error::IntegralityFailure(
                "polynomial division expected to be exact left a remainder".into(),
            ));
        }
        Ok(q)
    }

    /// Monic gcd; zero if both inputs are zero.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            Ok(a.monic()?.1)
        }
    }

    /// Splits into `(leading coefficient, monic part)`.
    pub fn monic(&self) -> Result<(F, Self)> {
        let lc = self.leading().ok_or(Error::DivisionByZero)?.clone();
        Ok((lc.clone(), self.scale(&lc.inv()?)))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(&self.scalar_zero);
        }
        let p = self.scalar_zero.characteristic();
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                // Multiply by (i + 1) inside the prime field.
                let n = ((i as u64 + 1) % p) as u64;
                let mut acc = self.scalar_zero.clone();
                let mut bit = c.clone();
                let mut n = n;
                while n > 0 {
                    if n & 1 == 1 {
                        acc = acc.add(&bit);
                    }
                    n >>= 1;
                    if n > 0 {
                        bit = bit.add(&bit);
                    }
                }
                acc
            })
            .collect();
        Self::from_coeffs(&self.scalar_zero, coeffs)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.scalar_zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitutes `t -> t^k` (`k >= 1`).
    pub fn inflate(&self, k: u64) -> Self {
        assert!(k >= 1, "inflate by zero");
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let k = k as usize;
        let mut coeffs =
            vec![self.scalar_zero.clone(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(&self.scalar_zero, coeffs)
    }

    /// Inverse of [`Poly::inflate`]: rewrites a polynomial in `t^k` as one in
    /// `t`, or `None` if some monomial exponent is not divisible by `k`.
    pub fn try_deflate(&self, k: u64) -> Option<Self> {
        assert!(k >= 1, "deflate by zero");
        if k == 1 {
            return Some(self.clone());
        }
        let k = k as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / k + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Self::from_coeffs(&self.scalar_zero, coeffs))
    }

    pub fn map_coeffs<G: FieldElement>(
        &self,
        witness: &G,
        f: impl Fn(&F) -> G,
    ) -> Poly<G> {
        Poly::from_coeffs(witness, self.coeffs.iter().map(f).collect())
    }
}

impl<F: PerfectField> Poly<F> {
    /// For `f` with every exponent divisible by `p`, the unique `g` with
    /// `g^p = f`, obtained by deflating and taking coefficient `p`-th roots.
    fn pth_root_of_pth_power(&self) -> Result<Self> {
        let p = self.scalar_zero.characteristic();
        let deflated = self.try_deflate(p).ok_or_else(|| {
            Error::IntegralityFailure(
                "vanishing derivative but an exponent not divisible by p".into(),
            )
        })?;
        Ok(deflated.map_coeffs(&self.scalar_zero, PerfectField::pth_root))
    }

    /// Squarefree decomposition `f = c * prod_i f_i^i` with the `f_i` monic,
    /// squarefree, and pairwise coprime. Returns `(c, {i -> f_i})`, omitting
    /// trivial `f_i = 1`.
    pub fn squarefree_decomposition(&self) -> Result<(F, BTreeMap<u64, Poly<F>>)> {
        let (lc, f) = self.monic()?;
        let mut out = BTreeMap::new();
        f.sqf_monic(1, &mut out)?;
        Ok((lc, out))
    }

    fn sqf_monic(&self, scale: u64, out: &mut BTreeMap<u64, Poly<F>>) -> Result<()> {
        debug_assert!(self.leading().is_some_and(FieldElement::is_one));
        if self.is_constant() {
            return Ok(());
        }
        let p = self.scalar_zero.characteristic();
        let deriv = self.derivative();
        if deriv.is_zero() {
            // Pure p-th power: recurse on its p-th root.
            return self.pth_root_of_pth_power()?.sqf_monic(scale * p, out);
        }
        let mut c = self.gcd(&deriv)?;
        let mut w = self.div_exact(&c)?;
        // w carries each factor whose multiplicity is prime to p, once.
        let mut i = 1u64;
        while !w.is_constant() {
            let y = w.gcd(&c)?;
            let z = w.div_exact(&y)?;
            if !z.is_constant() {
                let prev = out.insert(scale * i, z);
                debug_assert!(prev.is_none(), "colliding multiplicities");
            }
            w = y;
            c = c.div_exact(&w)?;
            i += 1;
        }
        if !c.is_constant() {
            // What remains of c is the p-divisible-multiplicity part.
            c.pth_root_of_pth_power()?.sqf_monic(scale * p, out)?;
        }
        Ok(())
    }
}

impl<F: FieldElement> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c:?})"),
                1 => format!("({c:?})*t"),
                _ => format!("({c:?})*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{FFElt, FiniteField};
    use std::sync::Arc;

    fn f5_poly(coeffs: &[i64]) -> Poly<FFElt> {
        let f = Arc::new(FiniteField::prime(5).unwrap());
        let w = FFElt::from_u64(&f, 0);
        Poly::from_coeffs(&w, coeffs.iter().map(|&c| FFElt::from_i64(&f, c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        let a = f5_poly(&[1, 0, 0, 1]); // t^3 + 1
        let b = f5_poly(&[1, 1]); // t + 1
        let (q, r) = a.divmod(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
        // t^3 + 1 = (t + 1)(t^2 - t + 1) over F_5.
        assert_eq!(q, f5_poly(&[1, -1, 1]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let g = f5_poly(&[2, 1]); // t + 2
        let a = g.mul(&f5_poly(&[1, 1]));
        let b = g.mul(&f5_poly(&[3, 0, 1]));
        assert_eq!(a.gcd(&b).unwrap(), g);
    }

    #[test]
    fn derivative_in_char_p() {
        // d/dt (t^5 + t^2 + 3) = 2t over F_5: the t^5 term dies.
        let a = f5_poly(&[3, 0, 1, 0, 0, 1]);
        assert_eq!(a.derivative(), f5_poly(&[0, 2]));
    }

    #[test]
    fn squarefree_decomposition_tame_multiplicities() {
        // (t+1)^2 * (t+2)^3, all multiplicities prime to 5.
        let f = f5_poly(&[1, 1]).pow_u(2).mul(&f5_poly(&[2, 1]).pow_u(3));
        let (c, parts) = f.squarefree_decomposition().unwrap();
        assert!(c.is_one());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2], f5_poly(&[1, 1]));
        assert_eq!(parts[&3], f5_poly(&[2, 1]));
    }

    #[test]
    fn squarefree_decomposition_p_divisible_multiplicity() {
        // (t+1)^5 has zero derivative; the Frobenius path must recover it.
        let f = f5_poly(&[1, 1]).pow_u(5);
        let (_, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&5], f5_poly(&[1, 1]));
    }

    #[test]
    fn squarefree_decomposition_mixed() {
        // 3 * (t+1)^10 * (t+2)^3 * (t+4): multiplicities 10, 3, 1.
        let f = f5_poly(&[1, 1])
            .pow_u(10)
            .mul(&f5_poly(&[2, 1]).pow_u(3))
            .mul(&f5_poly(&[4, 1]))
            .scale(&FFElt::from_u64(&Arc::new(FiniteField::prime(5).unwrap()), 3));
        let (c, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(c, FFElt::from_u64(&Arc::new(FiniteField::prime(5).unwrap()), 3));
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&10], f5_poly(&[1, 1]));
        assert_eq!(parts[&3], f5_poly(&[2, 1]));
        assert_eq!(parts[&1], f5_poly(&[4, 1]));
        // Reassemble and compare.
        let mut g = Poly::constant(c);
        for (m, h) in &parts {
            g = g.mul(&h.pow_u(*m));
        }
        assert_eq!(g, f);
    }

    #[test]
    fn inflate_deflate_roundtrip() {
        let a = f5_poly(&[1, 2, 0, 3]);
        let b = a.inflate(5);
        assert_eq!(b.degree(), Some(15));
        assert_eq!(b.try_deflate(5).unwrap(), a);
        assert_eq!(a.try_deflate(5), None);
    }
}
