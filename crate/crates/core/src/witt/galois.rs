//! An independent model of `W_n(F_q)`: the Galois ring `Z/p^n[x]/(f)`.
//!
//! For `q = p^k` and a monic degree-`k` lift `f` of the defining modulus of
//! `F_q`, the quotient `GR(p^n, k) = Z/p^n[x]/(f)` is the unramified
//! extension of `Z/p^n` with residue field `F_q`, hence isomorphic to
//! `W_n(F_q)`. Its arithmetic is plain modular arithmetic on coefficient
//! vectors and shares nothing with the Witt structure polynomials, which
//! makes it the cross-check of choice: the coordinatewise isomorphism
//!
//! `(x_0, ..., x_{n-1})  |->  sum_i p^i * tau(x_i^{p^-i})`
//!
//! (with `tau` the Teichmuller section of `GR -> F_q`) must turn Witt sums
//! and products into Galois-ring sums and products, pair by pair.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField};
use crate::finite_field::{FFElt, FiniteField};
use crate::witt::WittVec;

/// `Z/p^n[x]/(f)` for a monic lift `f` of the modulus of `F_{p^k}`.
#[derive(Debug)]
pub struct GaloisRing {
    field: Arc<FiniteField>,
    n: usize,
    pn: u64,
    modulus: Vec<u64>,
}

impl GaloisRing {
    pub fn new(field: &Arc<FiniteField>, n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidParameter("Witt length must be >= 1".into()));
        }
        let p = field.p();
        let pn = p
            .checked_pow(n as u32)
            .filter(|&pn| pn < 1 << 31)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("p^n = {p}^{n} exceeds the supported range"))
            })?;
        let modulus = field.modulus().to_vec();
        Ok(Arc::new(GaloisRing { field: Arc::clone(field), n, pn, modulus }))
    }

    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The coefficient modulus `p^n`.
    pub fn pn(&self) -> u64 {
        self.pn
    }

    fn k(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn zero(self: &Arc<Self>) -> GrElt {
        GrElt { ring: Arc::clone(self), coeffs: vec![0; self.k()] }
    }

    pub fn one(self: &Arc<Self>) -> GrElt {
        self.scalar(1)
    }

    pub fn scalar(self: &Arc<Self>, c: u64) -> GrElt {
        let mut z = self.zero();
        z.coeffs[0] = c % self.pn;
        z
    }

    /// The obvious coefficientwise lift of a residue-field element.
    pub fn lift(self: &Arc<Self>, a: &FFElt) -> GrElt {
        assert_eq!(a.field().order(), self.field.order(), "wrong residue field");
        GrElt { ring: Arc::clone(self), coeffs: a.coeffs().to_vec() }
    }

    /// The Teichmuller representative: the unique lift fixed by `z -> z^q`.
    /// Iterating the `q`-power map on any lift gains one `p`-adic digit of
    /// agreement per step, so `n - 1` steps suffice.
    pub fn teichmuller(self: &Arc<Self>, a: &FFElt) -> GrElt {
        let q = self.field.order();
        let mut z = self.lift(a);
        for _ in 1..self.n {
            z = z.pow(q);
        }
        z
    }
}

/// An element of a [`GaloisRing`]: little-endian coefficients mod `p^n`.
#[derive(Clone)]
pub struct GrElt {
    ring: Arc<GaloisRing>,
    coeffs: Vec<u64>,
}

impl GrElt {
    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let pn = self.ring.pn;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + b) % pn)
            .collect();
        GrElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn neg(&self) -> Self {
        let pn = self.ring.pn;
        let coeffs = self.coeffs.iter().map(|&a| (pn - a) % pn).collect();
        GrElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let pn = self.ring.pn;
        let k = self.coeffs.len();
        let mut conv = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                conv[i + j] = (conv[i + j] + a * b) % pn;
            }
        }
        // Reduce by the monic modulus, highest degree first.
        for d in (k..conv.len()).rev() {
            let c = conv[d];
            if c == 0 {
                continue;
            }
            conv[d] = 0;
            for (i, &m) in self.ring.modulus[..k].iter().enumerate() {
                let sub = (c * m) % pn;
                conv[d - k + i] = (conv[d - k + i] + pn - sub) % pn;
            }
        }
        conv.truncate(k);
        GrElt { ring: Arc::clone(&self.ring), coeffs: conv }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduction mod `p` into the residue field.
    pub fn res(&self) -> FFElt {
        let p = self.ring.p();
        let field = &self.ring.field;
        let mut out = field.element_from_index(0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c % p == 0 {
                continue;
            }
            let basis = if i == 0 {
                FFElt::from_u64(field, 1)
            } else {
                field.element_from_index(field.p().pow(i as u32))
            };
            out = out.add(&FFElt::from_u64(field, c % p).mul(&basis));
        }
        out
    }
}

impl PartialEq for GrElt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.pn == other.ring.pn && self.coeffs == other.coeffs
    }
}

impl Eq for GrElt {}

impl std::fmt::Display for GrElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] mod {}", self.ring.pn)
    }
}

impl std::fmt::Debug for GrElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// The coordinatewise isomorphism `W_n(F_q) -> GR(p^n, k)`.
pub fn witt_to_galois(w: &WittVec<FFElt>, ring: &Arc<GaloisRing>) -> GrElt {
    assert_eq!(w.p(), ring.p(), "characteristic mismatch");
    assert_eq!(w.length(), ring.n(), "length mismatch");
    let mut acc = ring.zero();
    let mut p_pow = 1u64;
    for i in 0..w.length() {
        let mut root = w.component(i).clone();
        for _ in 0..i {
            root = root.pth_root();
        }
        let term = ring.teichmuller(&root).mul(&ring.scalar(p_pow));
        acc = acc.add(&term);
        p_pow *= ring.p();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detrand::DetRng;
    use crate::witt::witt_polys;

    fn all_vectors(p: u64, n: usize, field: &Arc<FiniteField>) -> Vec<WittVec<FFElt>> {
        let polys = witt_polys(p, n).unwrap();
        let q = field.order();
        let total = q.pow(n as u32);
        (0..total)
            .map(|code| {
                let mut idx = code;
                let comps: Vec<FFElt> = (0..n)
                    .map(|_| {
                        let c = field.element_from_index(idx % q);
                        idx /= q;
                        c
                    })
                    .collect();
                WittVec::from_components(&polys, comps).unwrap()
            })
            .collect()
    }

    /// `W_2(F_3) = Z/9`: every ordered pair, both operations, plus the
    /// closed form of the isomorphism.
    #[test]
    fn w2_f3_is_z9() {
        let field = Arc::new(FiniteField::prime(3).unwrap());
        let ring = GaloisRing::new(&field, 2).unwrap();
        assert_eq!(ring.pn(), 9);
        let vecs = all_vectors(3, 2, &field);
        assert_eq!(vecs.len(), 9);
        for x in &vecs {
            // In W_2(F_p) over the prime field the map is x_0^p + p*x_1.
            let x0 = x.component(0).to_u64();
            let x1 = x.component(1).to_u64();
            let expected = (x0.pow(3) + 3 * x1) % 9;
            assert_eq!(witt_to_galois(x, &ring).coeffs(), &[expected]);
        }
        for x in &vecs {
            for y in &vecs {
                let gx = witt_to_galois(x, &ring);
                let gy = witt_to_galois(y, &ring);
                assert_eq!(witt_to_galois(&x.add(y), &ring), gx.add(&gy));
                assert_eq!(witt_to_galois(&x.mul(y), &ring), gx.mul(&gy));
            }
        }
    }

    /// Same story one prime up: `W_2(F_5) = Z/25`, all 625 pairs.
    #[test]
    fn w2_f5_is_z25() {
        let field = Arc::new(FiniteField::prime(5).unwrap());
        let ring = GaloisRing::new(&field, 2).unwrap();
        let vecs = all_vectors(5, 2, &field);
        for x in &vecs {
            let x0 = x.component(0).to_u64();
            let x1 = x.component(1).to_u64();
            assert_eq!(witt_to_galois(x, &ring).coeffs(), &[(x0.pow(5) + 5 * x1) % 25]);
        }
        for x in &vecs {
            for y in &vecs {
                let gx = witt_to_galois(x, &ring);
                let gy = witt_to_galois(y, &ring);
                assert_eq!(witt_to_galois(&x.add(y), &ring), gx.add(&gy));
                assert_eq!(witt_to_galois(&x.mul(y), &ring), gx.mul(&gy));
            }
        }
    }

    /// The first genuinely two-dimensional case: `W_2(F_9) = GR(9, 2)`,
    /// exhaustively over all 81 elements (6561 ordered pairs).
    #[test]
    fn w2_f9_is_gr9() {
        let field = Arc::new(FiniteField::quadratic(3).unwrap());
        let ring = GaloisRing::new(&field, 2).unwrap();
        let vecs = all_vectors(3, 2, &field);
        assert_eq!(vecs.len(), 81);
        for x in &vecs {
            for y in &vecs {
                let gx = witt_to_galois(x, &ring);
                let gy = witt_to_galois(y, &ring);
                assert_eq!(witt_to_galois(&x.add(y), &ring), gx.add(&gy));
                assert_eq!(witt_to_galois(&x.mul(y), &ring), gx.mul(&gy));
            }
        }
    }

    /// `W_3(F_9) = GR(27, 2)` on a deterministic random sample.
    #[test]
    fn w3_f9_matches_gr27_on_samples() {
        let field = Arc::new(FiniteField::quadratic(3).unwrap());
        let polys = witt_polys(3, 3).unwrap();
        let ring = GaloisRing::new(&field, 3).unwrap();
        let mut rng = DetRng::new(0x6A1015);
        let random = |rng: &mut DetRng| {
            let comps: Vec<FFElt> = (0..3)
                .map(|_| field.element_from_index(rng.below(field.order())))
                .collect();
            WittVec::from_components(&polys, comps).unwrap()
        };
        for _ in 0..1000 {
            let x = random(&mut rng);
            let y = random(&mut rng);
            let gx = witt_to_galois(&x, &ring);
            let gy = witt_to_galois(&y, &ring);
            assert_eq!(witt_to_galois(&x.add(&y), &ring), gx.add(&gy));
            assert_eq!(witt_to_galois(&x.mul(&y), &ring), gx.mul(&gy));
        }
    }

    #[test]
    fn teichmuller_section_properties() {
        let field = Arc::new(FiniteField::quadratic(3).unwrap());
        let ring = GaloisRing::new(&field, 3).unwrap();
        let q = field.order();
        for a in field.elements() {
            let t = ring.teichmuller(&a);
            // Fixed by z -> z^q, and a lift of a.
            assert_eq!(t.pow(q), t);
            assert_eq!(t.res(), a);
        }
        for a in field.elements() {
            for b in field.elements() {
                let lhs = ring.teichmuller(&a).mul(&ring.teichmuller(&b));
                assert_eq!(lhs, ring.teichmuller(&a.mul(&b)));
            }
        }
        // The Witt-side Teichmuller maps onto the Galois-side one.
        let polys = witt_polys(3, 3).unwrap();
        for a in field.elements() {
            let w = WittVec::teichmuller(&polys, &a);
            assert_eq!(witt_to_galois(&w, &ring), ring.teichmuller(&a));
        }
    }

    #[test]
    fn verschiebung_is_p_times_root_shift() {
        // p * x = V(F(x)) on the Galois side: multiplying by the scalar p
        // must match the Witt-side coordinate shift with p-th powers.
        let field = Arc::new(FiniteField::quadratic(5).unwrap());
        let polys = witt_polys(5, 3).unwrap();
        let ring = GaloisRing::new(&field, 3).unwrap();
        let mut rng = DetRng::new(0x5F0B);
        for _ in 0..50 {
            let comps: Vec<FFElt> = (0..3)
                .map(|_| field.element_from_index(rng.below(field.order())))
                .collect();
            let x = WittVec::from_components(&polys, comps).unwrap();
            let lhs = witt_to_galois(&x.times_p_pow(1), &ring);
            let rhs = witt_to_galois(&x, &ring).mul(&ring.scalar(5));
            assert_eq!(lhs, rhs);
        }
    }
}
