//! The totally ramified quadratic extension `K = Frac(W(k))(pi)` with
//! `pi^2 = p*c` for a fixed Teichmuller unit `c = [alpha]`.
//!
//! Elements are pairs `a + b*pi` of localized Witt vectors. Since
//! `v_p(a)` is an integer and `v_p(b) + 1/2` is not, the two candidate
//! valuations never tie, so `v(a + b*pi) = min(v_p(a), v_p(b) + 1/2)` is
//! computed without cancellation analysis; the value group is `(1/2)Z` and
//! the residue field stays `k`. Squareness in `K` (and in the unramified
//! base) reduces to value-group divisibility plus residue squareness,
//! because both fields are henselian with odd residue characteristic.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{PerfectField, SquareTest};
use crate::rational::{int, Rat};
use crate::witt::local::LocalWitt;
use crate::witt::polygen::WittPolys;

/// The extension data: the base `W_n(k)` tables and the unit `alpha`
/// whose Teichmuller lift `c` satisfies `pi^2 = p*c`.
pub struct RamExtCtx<K: PerfectField> {
    polys: Arc<WittPolys>,
    alpha: K,
}

impl<K: PerfectField> RamExtCtx<K> {
    pub fn new(polys: &Arc<WittPolys>, alpha: K) -> Result<Arc<Self>> {
        if alpha.is_zero() {
            return Err(Error::ZeroInput("ramified extension radicand"));
        }
        if alpha.characteristic() != polys.p() {
            return Err(Error::ContextMismatch(format!(
                "radicand characteristic {} does not match p = {}",
                alpha.characteristic(),
                polys.p()
            )));
        }
        Ok(Arc::new(RamExtCtx { polys: Arc::clone(polys), alpha }))
    }

    pub fn polys(&self) -> &Arc<WittPolys> {
        &self.polys
    }

    pub fn p(&self) -> u64 {
        self.polys.p()
    }

    pub fn alpha(&self) -> &K {
        &self.alpha
    }

    /// The Teichmuller lift `c = [alpha]`.
    pub fn c(&self) -> LocalWitt<K> {
        LocalWitt::teichmuller(&self.polys, &self.alpha)
    }

    /// `pi^2 = p*c`, exactly representable.
    pub fn pi_squared(&self) -> LocalWitt<K> {
        self.c().mul_by_p_pow(1)
    }

    /// `(p*c)^{-1} = [alpha^{-1}] * p^{-1}`; exact, no Newton iteration.
    pub fn pi_squared_inv(&self) -> LocalWitt<K> {
        let alpha_inv = self.alpha.inv().expect("alpha is a unit");
        LocalWitt::teichmuller(&self.polys, &alpha_inv).mul_by_p_pow(-1)
    }
}

/// `a + b*pi` in `K = Frac(W_n(k))(pi)`.
#[derive(Clone)]
pub struct RamExtElt<K: PerfectField> {
    ctx: Arc<RamExtCtx<K>>,
    a: LocalWitt<K>,
    b: LocalWitt<K>,
}

impl<K: PerfectField> RamExtElt<K> {
    pub fn from_parts(ctx: &Arc<RamExtCtx<K>>, a: LocalWitt<K>, b: LocalWitt<K>) -> Self {
        assert_eq!(a.p(), ctx.p(), "mixed characteristics");
        assert_eq!(b.p(), ctx.p(), "mixed characteristics");
        RamExtElt { ctx: Arc::clone(ctx), a, b }
    }

    /// Embeds a localized Witt vector (`b = 0`).
    pub fn from_base(ctx: &Arc<RamExtCtx<K>>, a: LocalWitt<K>) -> Self {
        let b = LocalWitt::zero(ctx.polys(), ctx.alpha());
        Self::from_parts(ctx, a, b)
    }

    pub fn zero(ctx: &Arc<RamExtCtx<K>>) -> Self {
        Self::from_base(ctx, LocalWitt::zero(ctx.polys(), ctx.alpha()))
    }

    pub fn one(ctx: &Arc<RamExtCtx<K>>) -> Self {
        Self::from_base(ctx, LocalWitt::one(ctx.polys(), ctx.alpha()))
    }

    pub fn pi(ctx: &Arc<RamExtCtx<K>>) -> Self {
        let a = LocalWitt::zero(ctx.polys(), ctx.alpha());
        let b = LocalWitt::one(ctx.polys(), ctx.alpha());
        Self::from_parts(ctx, a, b)
    }

    pub fn ctx(&self) -> &Arc<RamExtCtx<K>> {
        &self.ctx
    }

    pub fn base_part(&self) -> &LocalWitt<K> {
        &self.a
    }

    pub fn pi_part(&self) -> &LocalWitt<K> {
        &self.b
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RamExtElt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
        }
    }

    pub fn neg(&self) -> Self {
        RamExtElt { ctx: Arc::clone(&self.ctx), a: self.a.neg(), b: self.b.neg() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let pc = self.ctx.pi_squared();
        let a = self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(&pc));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        RamExtElt { ctx: Arc::clone(&self.ctx), a, b }
    }

    /// Multiplies by `pi^k` (`k` may be negative). Both directions are
    /// exact: `pi * (a + b*pi) = b*p*c + a*pi` and `pi^{-1} = (p*c)^{-1} pi`
    /// uses only the exact Teichmuller inverse of `c`.
    pub fn mul_pi_pow(&self, k: i64) -> Self {
        let mut out = self.clone();
        if k >= 0 {
            let pc = self.ctx.pi_squared();
            for _ in 0..k {
                let a = out.b.mul(&pc);
                out = RamExtElt { ctx: Arc::clone(&self.ctx), b: out.a, a };
            }
        } else {
            let pc_inv = self.ctx.pi_squared_inv();
            for _ in 0..-k {
                let b = out.a.mul(&pc_inv);
                out = RamExtElt { ctx: Arc::clone(&self.ctx), a: out.b, b };
            }
        }
        out
    }

    /// `v(a + b*pi) = min(v_p(a), v_p(b) + 1/2)`, in `(1/2)Z`; `Ok(None)`
    /// for (exact) zero.
    pub fn valuation(&self) -> Result<Option<Rat>> {
        let va = self.a.vp()?;
        let vb = self.b.vp()?;
        let half = Rat::new(int(1), int(2));
        Ok(match (va, vb) {
            (None, None) => None,
            (Some(x), None) => Some(Rat::from(int(x))),
            (None, Some(y)) => Some(Rat::from(int(y)) + &half),
            (Some(x), Some(y)) => {
                let xa = Rat::from(int(x));
                let yb = Rat::from(int(y)) + &half;
                Some(xa.min(yb))
            }
        })
    }

    /// The residue under the extended valuation. The residue field is still
    /// `k`: a unit `a + b*pi` has `v_p(a) = 0` and `v(b*pi) > 0`, so only
    /// `a` contributes.
    pub fn residue(&self) -> Result<K> {
        match self.valuation()? {
            None => Ok(self.ctx.alpha.zero_like()),
            Some(v) if v > Rat::from(int(0)) => Ok(self.ctx.alpha.zero_like()),
            Some(v) if v < Rat::from(int(0)) => Err(Error::NotAUnit(format!(
                "valuation {v} is negative; no residue"
            ))),
            Some(_) => self.a.residue(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        // (a + b*pi)^{-1} = (a - b*pi) / (a^2 - p*c*b^2).
        let pc = self.ctx.pi_squared();
        let d = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&pc));
        let d_inv = d.inv()?;
        Ok(RamExtElt {
            ctx: Arc::clone(&self.ctx),
            a: self.a.mul(&d_inv),
            b: self.b.mul(&d_inv).neg(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.a.agrees_with(&other.a) && self.b.agrees_with(&other.b)
    }
}

impl<K: PerfectField + SquareTest> RamExtElt<K> {
    /// Squareness in `K`. The value group is `(1/2)Z`, so `v(x) = 2*v(y)`
    /// is solvable iff `v(x)` is an integer; in that case `x * pi^{-2v(x)}`
    /// is a unit and henselianity (odd residue characteristic) reduces the
    /// question to squareness of its residue in `k`. Zero is rejected.
    pub fn is_square(&self) -> Result<bool> {
        let v = match self.valuation()? {
            None => return Err(Error::ZeroInput("square test")),
            Some(v) => v,
        };
        if !v.is_integer() {
            return Ok(false);
        }
        let v_int: i64 = v.to_integer().try_into().map_err(|_| {
            Error::InvalidParameter("valuation out of i64 range".into())
        })?;
        let unit = self.mul_pi_pow(-2 * v_int);
        unit.residue()?.is_square()
    }
}

impl<K: PerfectField + std::fmt::Display> std::fmt::Display for RamExtElt<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ({})*pi", self.a, self.b)
    }
}

impl<K: PerfectField + std::fmt::Display> std::fmt::Debug for RamExtElt<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Squareness in the unramified fraction field `Frac(W_n(k))`, where the
/// value group is `Z`: even valuation plus a square residue for the unit
/// part. Zero is rejected.
pub fn base_is_square<K: PerfectField + SquareTest>(x: &LocalWitt<K>) -> Result<bool> {
    let v = match x.vp()? {
        None => return Err(Error::ZeroInput("square test")),
        Some(v) => v,
    };
    if v % 2 != 0 {
        return Ok(false);
    }
    x.mul_by_p_pow(-v).residue()?.is_square()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detrand::DetRng;
    use crate::field::FieldElement;
    use crate::finite_field::{FFElt, FiniteField};
    use crate::witt::{witt_polys, WittVec};

    fn f9_context() -> Arc<RamExtCtx<FFElt>> {
        let field = Arc::new(FiniteField::quadratic(3).unwrap());
        let polys = witt_polys(3, 3).unwrap();
        let alpha = field
            .elements()
            .into_iter()
            .filter(|e| !e.is_zero())
            .find(|e| !e.is_square().unwrap())
            .expect("odd finite fields have non-squares");
        RamExtCtx::new(&polys, alpha).unwrap()
    }

    fn random_elt(ctx: &Arc<RamExtCtx<FFElt>>, rng: &mut DetRng) -> RamExtElt<FFElt> {
        let field = ctx.alpha().field().clone();
        let polys = ctx.polys();
        let part = |rng: &mut DetRng| {
            let comps: Vec<FFElt> = (0..polys.n())
                .map(|_| field.element_from_index(rng.below(field.order())))
                .collect();
            LocalWitt::integral(WittVec::from_components(polys, comps).unwrap())
        };
        RamExtElt::from_parts(ctx, part(rng), part(rng))
    }

    #[test]
    fn pi_squared_is_p_alpha() {
        let ctx = f9_context();
        let pi = RamExtElt::pi(&ctx);
        let sq = pi.mul(&pi);
        assert!(sq.pi_part().is_known_zero());
        assert!(sq.base_part().agrees_with(&ctx.pi_squared()));
        assert_eq!(sq.valuation().unwrap(), Some(Rat::from(int(1))));
    }

    #[test]
    fn value_group_realizes_both_cosets() {
        let ctx = f9_context();
        let pi = RamExtElt::pi(&ctx);
        let one = RamExtElt::one(&ctx);
        assert_eq!(pi.valuation().unwrap(), Some(Rat::new(int(1), int(2))));
        assert_eq!(one.valuation().unwrap(), Some(Rat::from(int(0))));
        let p_elt = RamExtElt::from_base(&ctx, LocalWitt::one(ctx.polys(), ctx.alpha()).mul_by_p_pow(1));
        assert_eq!(p_elt.valuation().unwrap(), Some(Rat::from(int(1))));
        assert_eq!(
            pi.mul(&p_elt).valuation().unwrap(),
            Some(Rat::new(int(3), int(2)))
        );
        assert_eq!(RamExtElt::zero(&ctx).valuation().unwrap(), None);
    }

    #[test]
    fn ring_axioms_on_samples() {
        let ctx = f9_context();
        let mut rng = DetRng::new(0x9A411);
        let one = RamExtElt::one(&ctx);
        for _ in 0..10 {
            let x = random_elt(&ctx, &mut rng);
            let y = random_elt(&ctx, &mut rng);
            let z = random_elt(&ctx, &mut rng);
            assert!(x.mul(&y).agrees_with(&y.mul(&x)));
            assert!(x.mul(&y.mul(&z)).agrees_with(&x.mul(&y).mul(&z)));
            assert!(x.mul(&y.add(&z)).agrees_with(&x.mul(&y).add(&x.mul(&z))));
            assert!(x.mul(&one).agrees_with(&x));
            assert!(x.sub(&x).base_part().is_known_zero());
        }
    }

    #[test]
    fn valuation_is_multiplicative_and_ultrametric() {
        let ctx = f9_context();
        let mut rng = DetRng::new(0xA11);
        for _ in 0..25 {
            let x = random_elt(&ctx, &mut rng);
            let y = random_elt(&ctx, &mut rng);
            let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
            let (Some(vx), Some(vy)) = (vx, vy) else { continue };
            assert_eq!(x.mul(&y).valuation().unwrap(), Some(vx.clone() + &vy));
            if let Some(vs) = x.add(&y).valuation().unwrap() {
                assert!(vs >= vx.clone().min(vy.clone()));
                if vx != vy {
                    assert_eq!(vs, vx.min(vy));
                }
            }
        }
    }

    #[test]
    fn inverses_cancel() {
        let ctx = f9_context();
        let one = RamExtElt::one(&ctx);
        let pi = RamExtElt::pi(&ctx);
        assert!(pi.mul(&pi.inv().unwrap()).agrees_with(&one));
        let mut rng = DetRng::new(0x1CAFE);
        let mut found = 0;
        while found < 10 {
            let x = random_elt(&ctx, &mut rng);
            if x.valuation().unwrap().is_none() {
                continue;
            }
            found += 1;
            assert!(x.mul(&x.inv().unwrap()).agrees_with(&one));
        }
    }

    #[test]
    fn pi_shifts_are_exact_in_both_directions() {
        let ctx = f9_context();
        let mut rng = DetRng::new(0x51F7);
        for _ in 0..10 {
            let x = random_elt(&ctx, &mut rng);
            let back = x.mul_pi_pow(3).mul_pi_pow(-3);
            assert!(back.agrees_with(&x));
            if let Some(v) = x.valuation().unwrap() {
                let shifted = x.mul_pi_pow(5).valuation().unwrap().unwrap();
                assert_eq!(shifted, v + Rat::new(int(5), int(2)));
            }
        }
    }

    #[test]
    fn residue_field_is_k() {
        let ctx = f9_context();
        let field = ctx.alpha().field().clone();
        // a + b*pi with unit a: residue sees only a.
        for i in 1..field.order() {
            let a0 = field.element_from_index(i);
            let a = LocalWitt::teichmuller(ctx.polys(), &a0);
            let b = LocalWitt::one(ctx.polys(), ctx.alpha());
            let x = RamExtElt::from_parts(&ctx, a, b);
            assert_eq!(x.valuation().unwrap(), Some(Rat::from(int(0))));
            assert_eq!(x.residue().unwrap(), a0);
        }
        // b*pi alone has positive value and residue zero.
        let pi = RamExtElt::pi(&ctx);
        assert!(pi.residue().unwrap().is_zero());
        assert!(pi.mul_pi_pow(-2).residue().is_err());
    }

    /// The construction's point: `p*alpha` acquires a square root in `K`
    /// while staying a non-square in the base, and `alpha` itself is a
    /// non-square in both.
    #[test]
    fn square_classes_split_as_constructed() {
        let ctx = f9_context();
        let c = ctx.c();
        let pc = ctx.pi_squared();
        assert_eq!(base_is_square(&c).unwrap(), false);
        assert_eq!(base_is_square(&pc).unwrap(), false);
        let c_ext = RamExtElt::from_base(&ctx, c);
        let pc_ext = RamExtElt::from_base(&ctx, pc);
        assert_eq!(c_ext.is_square().unwrap(), false);
        assert_eq!(pc_ext.is_square().unwrap(), true);
        let pi = RamExtElt::pi(&ctx);
        assert_eq!(pi.is_square().unwrap(), false);
        // p itself: odd valuation in the base, value 1 with residue-1 unit
        // part in K... but its unit part there is c^{-1}, a non-square.
        let p_base = LocalWitt::one(ctx.polys(), ctx.alpha()).mul_by_p_pow(1);
        assert_eq!(base_is_square(&p_base).unwrap(), false);
        assert_eq!(RamExtElt::from_base(&ctx, p_base).is_square().unwrap(), false);
        // Sanity: squares test as squares, and zero is rejected.
        let mut rng = DetRng::new(0x50AE);
        for _ in 0..10 {
            let x = random_elt(&ctx, &mut rng);
            if x.valuation().unwrap().is_none() {
                continue;
            }
            assert_eq!(x.mul(&x).is_square().unwrap(), true);
        }
        assert!(RamExtElt::zero(&ctx).is_square().is_err());
    }
}
