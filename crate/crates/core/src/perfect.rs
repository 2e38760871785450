//! The perfect hull `F(t)^(1/p^inf)` of a rational function field.
//!
//! An element is stored as a rational function `body` in the auxiliary
//! variable `u = t^(1/p^depth)`, at the least depth that can express it:
//! whenever every exponent of numerator and denominator is divisible by
//! `p`, the element is rewritten one level down (a pure substitution
//! `u^p = `next variable, no coefficient change). That canonical form makes
//! structural equality field equality and keeps Frobenius and `p`-th roots
//! cheap: both act coefficient-wise plus a depth shift.
//!
//! Iterating the construction gives towers such as
//! `(F_p(s)^perf)(t)^perf`; [`swap_tower_vars`] realizes the automorphism
//! exchanging the two variables by flattening to a bivariate fraction,
//! transposing, and rebuilding.

use std::fmt;

use crate::error::Result;
use crate::field::{FieldElement, PerfectField, SquareTest};
use crate::finite_field::FFElt;
use crate::poly::Poly;
use crate::ratfun::RatFn;

/// An element of the perfect hull of `C(t)`, `C` a perfect field.
#[derive(Clone, PartialEq)]
pub struct PerfRatFn<C: FieldElement> {
    /// The element lives in `C(t^(1/p^depth))`, and in no shallower level.
    depth: u32,
    /// The element written in `u = t^(1/p^depth)`.
    body: RatFn<C>,
}

impl<C: FieldElement> PerfRatFn<C> {
    /// Wraps an element of `C(t)` itself.
    pub fn from_ratfn(body: RatFn<C>) -> Self {
        PerfRatFn { depth: 0, body }
    }

    /// An element presented at an explicit depth; normalized on entry.
    pub fn at_depth(depth: u32, body: RatFn<C>) -> Self {
        let mut x = PerfRatFn { depth, body };
        x.canonicalize();
        x
    }

    pub fn constant(c: C) -> Self {
        PerfRatFn { depth: 0, body: RatFn::constant(c) }
    }

    /// The variable `t`.
    pub fn var(witness: &C) -> Self {
        PerfRatFn { depth: 0, body: RatFn::var(witness) }
    }

    /// The root `t^(1/p^m)`.
    pub fn var_root(witness: &C, m: u32) -> Self {
        PerfRatFn { depth: m, body: RatFn::var(witness) }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The defining fraction in `u = t^(1/p^depth)`.
    pub fn body(&self) -> &RatFn<C> {
        &self.body
    }

    pub fn scalar_zero(&self) -> &C {
        self.body.scalar_zero()
    }

    fn canonicalize(&mut self) {
        let p = self.characteristic();
        while self.depth > 0 {
            match self.body.try_deflate(p) {
                Some(b) => {
                    self.body = b;
                    self.depth -= 1;
                }
                None => break,
            }
        }
    }

    /// Rewrites at a deeper level (`d >= depth`); inverse of normalization.
    pub fn lift_to_depth(&self, d: u32) -> RatFn<C> {
        assert!(d >= self.depth, "cannot lift to a shallower depth");
        let diff = d - self.depth;
        assert!(diff < 32, "perfection depth difference out of range");
        self.body.inflate(self.characteristic().pow(diff))
    }

    fn binop(&self, rhs: &Self, f: impl Fn(&RatFn<C>, &RatFn<C>) -> RatFn<C>) -> Self {
        let d = self.depth.max(rhs.depth);
        Self::at_depth(d, f(&self.lift_to_depth(d), &rhs.lift_to_depth(d)))
    }

    /// The valuation `ord_t`, normalized so `ord(t) = 1`; a rational with
    /// `p`-power denominator. Errors on zero.
    pub fn ord_t(&self) -> Result<crate::rational::Rat> {
        let o = self.body.ord_at_zero()?;
        let scale = crate::rational::Int::from(self.characteristic()).pow(self.depth);
        Ok(crate::rational::Rat::new(o.into(), scale))
    }
}

impl<C: FieldElement> FieldElement for PerfRatFn<C> {
    fn zero_like(&self) -> Self {
        Self::constant(self.scalar_zero().zero_like())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.scalar_zero().one_like())
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.binop(rhs, RatFn::add)
    }

    fn neg(&self) -> Self {
        PerfRatFn { depth: self.depth, body: self.body.neg() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.binop(rhs, RatFn::mul)
    }

    fn inv(&self) -> Result<Self> {
        Ok(PerfRatFn { depth: self.depth, body: self.body.inv()? })
    }

    fn characteristic(&self) -> u64 {
        self.body.characteristic()
    }
}

impl<C: PerfectField> PerfectField for PerfRatFn<C> {
    fn frobenius(&self) -> Self {
        // x = r(u) => x^p = r^[p](u^p), then normalize the depth away.
        let w = self.scalar_zero();
        let body = self
            .body
            .map_coeffs(w, PerfectField::frobenius)
            .inflate(self.characteristic());
        Self::at_depth(self.depth, body)
    }

    fn pth_root(&self) -> Self {
        let w = self.scalar_zero();
        let body = self.body.map_coeffs(w, PerfectField::pth_root);
        Self::at_depth(self.depth + 1, body)
    }
}

impl<C: PerfectField + SquareTest> SquareTest for PerfRatFn<C> {
    fn is_square(&self) -> Result<bool> {
        // Squareness is insensitive to the reindexing t -> u, p odd.
        self.body.is_square()
    }
}

impl<C: FieldElement + fmt::Display> PerfRatFn<C> {
    pub fn display_with_var(&self, var: &str) -> String {
        if self.depth == 0 {
            self.body.display_with_var(var)
        } else {
            let p = self.characteristic();
            let root = format!("{var}^(1/{p}^{})", self.depth);
            format!("[{}]{{u := {root}}}", self.body.display_with_var("u"))
        }
    }
}

impl<C: FieldElement + fmt::Display> fmt::Display for PerfRatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with_var("t"))
    }
}

impl<C: FieldElement> fmt::Debug for PerfRatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth {} | {:?}", self.depth, self.body)
    }
}

// ---------------------------------------------------------------------------
// Two-variable towers and the variable swap
// ---------------------------------------------------------------------------

/// The perfect hull of `F_p(s)`, the inner layer of the two-variable tower.
pub type PerfBase = PerfRatFn<FFElt>;

/// `(F_p(s)^perf)(t)^perf`: outer variable `t`, coefficients in `s`.
pub type TowerElt = PerfRatFn<PerfBase>;

/// Sparse bivariate polynomial used only while flattening tower elements.
/// Keys are `(t-exponent, s-exponent)` of the auxiliary roots.
type Bivar = std::collections::BTreeMap<(u64, u64), FFElt>;

fn bivar_mul(a: &Bivar, b: &Bivar) -> Bivar {
    let mut out = Bivar::new();
    for (&(i1, j1), c1) in a {
        for (&(i2, j2), c2) in b {
            let key = (i1 + i2, j1 + j2);
            let prod = c1.mul(c2);
            let entry = match out.remove(&key) {
                Some(acc) => acc.add(&prod),
                None => prod,
            };
            if !entry.is_zero() {
                out.insert(key, entry);
            }
        }
    }
    out
}

fn bivar_transpose(a: &Bivar) -> Bivar {
    a.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect()
}

/// Embeds `poly in s` at fixed `t`-exponent 0.
fn inner_poly_to_bivar(p: &Poly<FFElt>) -> Bivar {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| ((0, j as u64), c.clone()))
        .collect()
}

/// Flattens rows (`t`-degree slices, each a polynomial in `s`) into one
/// bivariate.
fn rows_to_bivar(rows: &[Poly<FFElt>]) -> Bivar {
    let mut out = Bivar::new();
    for (i, a) in rows.iter().enumerate() {
        for (j, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert((i as u64, j as u64), c.clone());
            }
        }
    }
    out
}

/// Clears inner denominators: writes `sum_i (f_i/g_i) u^i` as
/// `N(u, w) / G(w)`, returning `N` as its `u`-degree rows.
fn clear_denominators(
    p: &Poly<PerfBase>,
    inner_depth: u32,
) -> Result<(Vec<Poly<FFElt>>, Poly<FFElt>)> {
    let scalar = p.scalar_zero().scalar_zero().clone();
    let lifted: Vec<RatFn<FFElt>> =
        p.coeffs().iter().map(|c| c.lift_to_depth(inner_depth)).collect();
    let mut common = Poly::constant(scalar.one_like());
    for c in &lifted {
        common = common.mul(c.den());
    }
    let mut rows = Vec::with_capacity(lifted.len());
    for c in &lifted {
        let cofactor = common.div_exact(c.den())?;
        rows.push(c.num().mul(&cofactor));
    }
    Ok((rows, common))
}

/// Rebuilds an outer polynomial in `t` from a bivariate, wrapping each
/// `t`-degree slice as an inner perfected element at `inner_depth`.
fn bivar_to_outer_poly(b: &Bivar, witness: &FFElt, inner_depth: u32) -> Poly<PerfBase> {
    let outer_deg = b.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
    let mut slices: Vec<Vec<FFElt>> = vec![Vec::new(); outer_deg + 1];
    for (&(i, j), c) in b {
        let row = &mut slices[i as usize];
        if row.len() <= j as usize {
            row.resize(j as usize + 1, witness.zero_like());
        }
        row[j as usize] = c.clone();
    }
    let coeffs: Vec<PerfBase> = slices
        .into_iter()
        .map(|row| {
            PerfRatFn::at_depth(
                inner_depth,
                RatFn::from_poly(Poly::from_coeffs(witness, row)),
            )
        })
        .collect();
    let zero = PerfRatFn::constant(witness.zero_like());
    Poly::from_coeffs(&zero, coeffs)
}

/// The field automorphism of `(F_p(s)^perf)(t)^perf` exchanging `s` and `t`.
///
/// The element is flattened to a single fraction `P(u, w) / Q(u, w)` in
/// `u = t^(1/p^a)`, `w = s^(1/p^b)`, the two exponents are transposed, and
/// the result is read back with the roles of the depths exchanged.
pub fn swap_tower_vars(x: &TowerElt) -> Result<TowerElt> {
    let outer_depth = x.depth();
    let body = x.body();
    let inner_depth = body
        .num()
        .coeffs()
        .iter()
        .chain(body.den().coeffs())
        .map(PerfRatFn::depth)
        .max()
        .unwrap_or(0);
    let scalar = body.scalar_zero().scalar_zero().clone();

    let (n, g) = clear_denominators(body.num(), inner_depth)?;
    let (d, h) = clear_denominators(body.den(), inner_depth)?;
    // x = (N/G) / (D/H) = (N*H) / (D*G) as bivariate fractions.
    let p_biv = bivar_mul(&rows_to_bivar(&n), &inner_poly_to_bivar(&h));
    let q_biv = bivar_mul(&rows_to_bivar(&d), &inner_poly_to_bivar(&g));

    let p_t = bivar_transpose(&p_biv);
    let q_t = bivar_transpose(&q_biv);
    let num = bivar_to_outer_poly(&p_t, &scalar, outer_depth);
    let den = bivar_to_outer_poly(&q_t, &scalar, outer_depth);
    Ok(PerfRatFn::at_depth(inner_depth, RatFn::new(num, den)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FiniteField;
    use std::sync::Arc;

    fn w5() -> FFElt {
        FFElt::from_u64(&Arc::new(FiniteField::prime(5).unwrap()), 0)
    }

    #[test]
    fn canonical_depth_is_minimal() {
        let w = w5();
        let t = PerfRatFn::var(&w);
        // t presented in u = t^(1/5) as u^5 must normalize back to depth 0.
        let u = PerfRatFn::at_depth(1, RatFn::var(&w).mul(&RatFn::var(&w).pow_u(4)));
        assert_eq!(u, t);
        assert_eq!(u.depth(), 0);
        // t^(1/5) itself is genuinely at depth 1.
        assert_eq!(PerfRatFn::var_root(&w, 1).depth(), 1);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let w = w5();
        let t = PerfRatFn::var(&w);
        let x = t.add(&t.one_like()).div(&t.square().add(&t.one_like())).unwrap();
        let r = x.pth_root();
        assert_eq!(r.pow_u(5), x);
        assert_eq!(r.frobenius(), x);
        assert_eq!(x.frobenius().pth_root(), x);
        // Roots of t stack: (t^(1/5))^(1/5) = t^(1/25).
        let r2 = t.pth_root().pth_root();
        assert_eq!(r2, PerfRatFn::var_root(&w, 2));
        assert_eq!(r2.pow_u(25), t);
    }

    #[test]
    fn arithmetic_across_depths() {
        let w = w5();
        let t = PerfRatFn::var(&w);
        let r = PerfRatFn::var_root(&w, 1); // t^(1/5)
        let sum = t.add(&r);
        assert_eq!(sum.depth(), 1);
        assert_eq!(sum.sub(&r), t);
        assert_eq!(r.pow_u(5), t);
        let q = t.div(&r).unwrap(); // t^(4/5)
        assert_eq!(q.mul(&r), t);
        assert_eq!(q.ord_t().unwrap(), crate::rational::rat(4, 5));
    }

    #[test]
    fn squares_in_the_perfect_hull() {
        let w = w5();
        let t = PerfRatFn::var(&w);
        let r = PerfRatFn::var_root(&w, 1);
        // t is a square in the hull: t = (t^(1/2))^2? No — only p-th roots
        // exist, and p = 5 is odd, so t is still not a square.
        assert!(!t.is_square().unwrap());
        assert!(!r.is_square().unwrap());
        assert!(r.square().is_square().unwrap());
        assert!(t.square().mul(&r.square()).is_square().unwrap());
        let c2 = PerfRatFn::constant(FFElt::from_u64(
            &Arc::new(FiniteField::prime(5).unwrap()),
            2,
        ));
        assert!(!r.square().mul(&c2).is_square().unwrap());
    }

    #[test]
    fn ord_t_on_roots() {
        let w = w5();
        let r = PerfRatFn::var_root(&w, 2);
        assert_eq!(r.ord_t().unwrap(), crate::rational::rat(1, 25));
        let x = r.inv().unwrap().mul(&PerfRatFn::var(&w));
        assert_eq!(x.ord_t().unwrap(), crate::rational::rat(24, 25));
    }

    fn tower_vars() -> (TowerElt, TowerElt) {
        let w = w5();
        let s_inner = PerfRatFn::var(&w); // s inside the coefficient field
        let t = PerfRatFn::var(&PerfRatFn::constant(w.clone()).zero_like());
        let s = TowerElt::constant(s_inner);
        (s, t)
    }

    #[test]
    fn swap_exchanges_the_variables() {
        let (s, t) = tower_vars();
        assert_eq!(swap_tower_vars(&t).unwrap(), s);
        assert_eq!(swap_tower_vars(&s).unwrap(), t);
        // s*t^2 + 1 maps to t*s^2 + 1.
        let x = s.mul(&t.square()).add(&t.one_like());
        let y = t.mul(&s.square()).add(&t.one_like());
        assert_eq!(swap_tower_vars(&x).unwrap(), y);
    }

    #[test]
    fn swap_is_an_involutive_homomorphism() {
        let (s, t) = tower_vars();
        let a = s
            .pth_root()
            .add(&t.square())
            .div(&s.add(&t).add(&t.one_like()))
            .unwrap();
        let b = t.pth_root().pth_root().mul(&s.add(&t.one_like()));
        let sa = swap_tower_vars(&a).unwrap();
        let sb = swap_tower_vars(&b).unwrap();
        assert_eq!(swap_tower_vars(&sa).unwrap(), a);
        assert_eq!(swap_tower_vars(&a.add(&b)).unwrap(), sa.add(&sb));
        assert_eq!(swap_tower_vars(&a.mul(&b)).unwrap(), sa.mul(&sb));
        assert_eq!(
            swap_tower_vars(&a.inv().unwrap()).unwrap(),
            sa.inv().unwrap()
        );
    }
}
