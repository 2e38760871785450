//! Truncated Witt vectors over perfect fields of odd characteristic.
//!
//! `W_n(k)` is presented on coordinates `(x_0, ..., x_{n-1})` with the ring
//! structure given by the universal sum and product polynomials, which are
//! generated once per `(p, n)` by [`polygen`] and cached process-wide. For
//! perfect `k` of characteristic `p` this is a complete discrete valuation
//! ring of mixed characteristic, and [`local::LocalWitt`] extends the
//! coordinate presentation to its fraction field with explicit precision
//! bookkeeping. [`galois`] provides the independent `Z/p^n[x]`-side model
//! used to cross-check the polynomial arithmetic.

pub mod galois;
pub mod local;
pub mod polygen;
pub mod ramext;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField};
use polygen::{EvalPoly, WittPolys};

static POLY_CACHE: OnceLock<Mutex<BTreeMap<(u64, usize), Arc<WittPolys>>>> = OnceLock::new();

/// The structure polynomials for `W_n` in characteristic `p`, generated on
/// first use and shared afterwards.
pub fn witt_polys(p: u64, n: usize) -> Result<Arc<WittPolys>> {
    let cache = POLY_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("witt polynomial cache poisoned");
    if let Some(polys) = guard.get(&(p, n)) {
        return Ok(Arc::clone(polys));
    }
    let polys = Arc::new(WittPolys::generate(p, n)?);
    guard.insert((p, n), Arc::clone(&polys));
    Ok(polys)
}

/// An element of `W_n(k)` in Witt coordinates.
///
/// The coefficient field is whatever `K` the components live in; all
/// components must belong to the same field of characteristic `p` matching
/// the attached polynomial table. Equality is coordinatewise.
#[derive(Clone)]
pub struct WittVec<K: FieldElement> {
    polys: Arc<WittPolys>,
    comps: Vec<K>,
}

impl<K: FieldElement> WittVec<K> {
    pub fn from_components(polys: &Arc<WittPolys>, comps: Vec<K>) -> Result<Self> {
        if comps.len() != polys.n() {
            return Err(Error::ContextMismatch(format!(
                "expected {} Witt components, got {}",
                polys.n(),
                comps.len()
            )));
        }
        for c in &comps {
            if c.characteristic() != polys.p() {
                return Err(Error::ContextMismatch(format!(
                    "component characteristic {} does not match W_n table for p = {}",
                    c.characteristic(),
                    polys.p()
                )));
            }
        }
        Ok(WittVec { polys: Arc::clone(polys), comps })
    }

    /// Zero vector; `witness` supplies the coefficient field.
    pub fn zero(polys: &Arc<WittPolys>, witness: &K) -> Self {
        let comps = vec![witness.zero_like(); polys.n()];
        WittVec { polys: Arc::clone(polys), comps }
    }

    pub fn one(polys: &Arc<WittPolys>, witness: &K) -> Self {
        let mut comps = vec![witness.zero_like(); polys.n()];
        comps[0] = witness.one_like();
        WittVec { polys: Arc::clone(polys), comps }
    }

    /// The Teichmuller representative `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(polys: &Arc<WittPolys>, a: &K) -> Self {
        let mut w = Self::zero(polys, a);
        w.comps[0] = a.clone();
        w
    }

    /// Embeds `c` in `[0, p)` as `c * 1`.
    pub fn small_scalar(polys: &Arc<WittPolys>, witness: &K, c: u64) -> Self {
        debug_assert!(c < polys.p());
        let mut acc = Self::zero(polys, witness);
        let one = Self::one(polys, witness);
        for _ in 0..c {
            acc = acc.add(&one);
        }
        acc
    }

    pub fn polys(&self) -> &Arc<WittPolys> {
        &self.polys
    }

    pub fn p(&self) -> u64 {
        self.polys.p()
    }

    pub fn length(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[K] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &K {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// The residue `x_0` under `W_n(k) -> k`.
    pub fn res(&self) -> K {
        self.comps[0].clone()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.binary_op(rhs, |polys, i| &polys.sum_eval()[i])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.binary_op(rhs, |polys, i| &polys.prod_eval()[i])
    }

    fn binary_op(&self, rhs: &Self, poly_at: impl Fn(&WittPolys, usize) -> &EvalPoly) -> Self {
        assert_eq!(self.p(), rhs.p(), "mixed characteristics");
        assert_eq!(self.length(), rhs.length(), "mixed Witt lengths");
        let witness = &self.comps[0];
        let comps = (0..self.length())
            .map(|i| eval_structure_poly(poly_at(&self.polys, i), &self.comps, &rhs.comps, witness))
            .collect();
        WittVec { polys: Arc::clone(&self.polys), comps }
    }

    /// Negation. In odd characteristic `-(x_0, ..., x_{n-1}) = (-x_0, ..., -x_{n-1})`.
    pub fn neg(&self) -> Self {
        let comps = self.comps.iter().map(|c| c.neg()).collect();
        WittVec { polys: Arc::clone(&self.polys), comps }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Verschiebung `V(x_0, ..., x_{n-1}) = (0, x_0, ..., x_{n-2})`.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.length());
        comps.push(self.comps[0].zero_like());
        comps.extend(self.comps[..self.length() - 1].iter().cloned());
        WittVec { polys: Arc::clone(&self.polys), comps }
    }
}

impl<K: PerfectField> WittVec<K> {
    /// The Witt-vector Frobenius; over a perfect field of characteristic `p`
    /// it acts coordinatewise as the `p`-th power map.
    pub fn frobenius(&self) -> Self {
        let comps = self.comps.iter().map(|c| c.frobenius()).collect();
        WittVec { polys: Arc::clone(&self.polys), comps }
    }

    /// Multiplication by `p^k` via `p = V o F`, coordinatewise
    /// `(p^k x)_i = x_{i-k}^{p^k}`.
    pub fn times_p_pow(&self, k: usize) -> Self {
        let pk = self.p().pow(k.min(self.length()) as u32);
        let comps = (0..self.length())
            .map(|i| {
                if i < k {
                    self.comps[0].zero_like()
                } else {
                    self.comps[i - k].pow_u(pk)
                }
            })
            .collect();
        WittVec { polys: Arc::clone(&self.polys), comps }
    }

    /// Exact division by `p^k`, defined when the first `k` coordinates
    /// vanish: `(x / p^k)_i = x_{i+k}^{p^-k}`. Coordinates beyond `n - k`
    /// of the quotient are not determined by `x` and are set to zero; the
    /// caller tracks the resulting precision loss (see [`local::LocalWitt`]).
    pub fn div_p_pow(&self, k: usize) -> Result<Self> {
        for i in 0..k.min(self.length()) {
            if !self.comps[i].is_zero() {
                return Err(Error::NotAUnit(format!(
                    "component {i} nonzero, not divisible by p^{k}"
                )));
            }
        }
        let comps = (0..self.length())
            .map(|i| {
                if i + k < self.length() {
                    let mut c = self.comps[i + k].clone();
                    for _ in 0..k {
                        c = c.pth_root();
                    }
                    c
                } else {
                    self.comps[0].zero_like()
                }
            })
            .collect();
        Ok(WittVec { polys: Arc::clone(&self.polys), comps })
    }
}

impl<K: FieldElement> PartialEq for WittVec<K> {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.comps == other.comps
    }
}

impl<K: FieldElement> Eq for WittVec<K> {}

impl<K: FieldElement + std::fmt::Display> std::fmt::Display for WittVec<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<K: FieldElement + std::fmt::Display> std::fmt::Debug for WittVec<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W_{}({self})", self.length())
    }
}

/// Evaluates a reduced structure polynomial at Witt coordinates
/// `X_i = xs[i]`, `Y_i = ys[i]`.
fn eval_structure_poly<K: FieldElement>(poly: &EvalPoly, xs: &[K], ys: &[K], witness: &K) -> K {
    let n = xs.len();
    let mut acc = witness.zero_like();
    for (exps, c) in &poly.terms {
        let mut term = small_field_scalar(witness, *c);
        for (idx, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if idx < n { &xs[idx] } else { &ys[idx - n] };
            term = term.mul(&base.pow_u(e as u64));
        }
        acc = acc.add(&term);
    }
    acc
}

/// `c * 1` in the coefficient field, for `c < p`.
fn small_field_scalar<K: FieldElement>(witness: &K, c: u64) -> K {
    let one = witness.one_like();
    let mut acc = witness.zero_like();
    for _ in 0..c {
        acc = acc.add(&one);
    }
    acc
}
