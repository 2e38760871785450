//! Assembled composition data for the two residue-field families.
//!
//! Each bundle fixes the ramified extension `K = Frac(W(k))(pi)` with
//! `pi^2 = p * [alpha_1]` and the pair of composed valuations that the
//! counterexamples compare. Scenario code, the command line, and the
//! benchmarks all construct these rather than wiring towers by hand, so
//! the choice of fine valuations is made in exactly one place:
//!
//! * over `k = F_p((Gamma))` the fine valuations are the coarsenings by
//!   `Delta_1` and by `Delta_0`; the latter is `nu_1 o phi` for the index
//!   shift `phi`, written in the coordinates of `Gamma/Delta_0` (the
//!   canonical identification of `Gamma/Delta_1` with `Gamma/Delta_0`);
//! * over `k = F_p(t,s)^perf` they are the `t`-adic and `s`-adic
//!   valuations, the latter being `v_t o phi` for the variable swap `phi`.

use std::sync::Arc;

use crate::error::Result;
use crate::finite_field::{FFElt, FiniteField};
use crate::hahn::HahnSeries;
use crate::oag::ConvexSubgroup;
use crate::perfect::{PerfBase, TowerElt};
use crate::valuation::{HahnCoarsening, ValuationTower, VarAdic};
use crate::witt::local::LocalWitt;
use crate::witt::ramext::{RamExtCtx, RamExtElt};
use crate::witt::witt_polys;

/// `K = Frac(W(F_p((Gamma))))(pi)` with its two composed valuations.
pub struct HahnTowers {
    field: Arc<FiniteField>,
    ctx: Arc<RamExtCtx<HahnSeries>>,
    pub v1: ValuationTower<HahnSeries, HahnCoarsening>,
    pub v2: ValuationTower<HahnSeries, HahnCoarsening>,
}

impl HahnTowers {
    pub fn new(p: u64, witt_len: usize, ram_depth: u32) -> Result<Self> {
        let field = Arc::new(FiniteField::prime(p)?);
        let polys = witt_polys(p, witt_len)?;
        let alpha1 = HahnSeries::t_basis(&field, 1);
        let ctx = RamExtCtx::new(&polys, alpha1)?;
        let v1 = ValuationTower::new(
            HahnCoarsening::new(p, ConvexSubgroup::new(1), "nu_1"),
            ram_depth,
            "v_1 = nu_1 o v",
        );
        let v2 = ValuationTower::new(
            HahnCoarsening::new(p, ConvexSubgroup::new(0), "nu_2"),
            ram_depth,
            "v_2 = nu_2 o v",
        );
        Ok(HahnTowers { field, ctx, v1, v2 })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn ctx(&self) -> &Arc<RamExtCtx<HahnSeries>> {
        &self.ctx
    }

    /// `alpha_1 = t^{e_1}` in the residue field.
    pub fn alpha1(&self) -> HahnSeries {
        HahnSeries::t_basis(&self.field, 1)
    }

    /// `alpha_2 = t^{e_2}`.
    pub fn alpha2(&self) -> HahnSeries {
        HahnSeries::t_basis(&self.field, 2)
    }

    /// The Teichmueller lift `a_1 = [alpha_1]`.
    pub fn a1(&self) -> RamExtElt<HahnSeries> {
        RamExtElt::from_base(&self.ctx, self.ctx.c())
    }

    pub fn pi(&self) -> RamExtElt<HahnSeries> {
        RamExtElt::pi(&self.ctx)
    }

    pub fn one(&self) -> RamExtElt<HahnSeries> {
        RamExtElt::one(&self.ctx)
    }

    pub fn p_elt(&self) -> RamExtElt<HahnSeries> {
        RamExtElt::from_base(
            &self.ctx,
            LocalWitt::one(self.ctx.polys(), self.ctx.alpha()).mul_by_p_pow(1),
        )
    }

    /// The residue-field automorphism `phi` induced by the index shift
    /// `e_i -> e_{i+1}`; it satisfies `phi(alpha_1) = alpha_2` and realizes
    /// `nu_2` as `nu_1 o phi` up to the canonical quotient identification.
    pub fn phi(&self, x: &HahnSeries) -> HahnSeries {
        x.shift_indices(1)
    }
}

/// `K = Frac(W(F_p(t,s)^perf))(pi)` with the `t`-adic and `s`-adic
/// composed valuations.
pub struct BivariateTowers {
    field: Arc<FiniteField>,
    ctx: Arc<RamExtCtx<TowerElt>>,
    pub v1: ValuationTower<TowerElt, VarAdic>,
    pub v2: ValuationTower<TowerElt, VarAdic>,
}

impl BivariateTowers {
    pub fn new(p: u64, witt_len: usize, ram_depth: u32) -> Result<Self> {
        let field = Arc::new(FiniteField::prime(p)?);
        let polys = witt_polys(p, witt_len)?;
        let ctx = RamExtCtx::new(&polys, Self::t_of(&field))?;
        let v1 = ValuationTower::new(VarAdic::new(p, false, "v_t"), ram_depth, "v_1 = v_t o v");
        let v2 = ValuationTower::new(VarAdic::new(p, true, "v_s"), ram_depth, "v_2 = v_s o v");
        Ok(BivariateTowers { field, ctx, v1, v2 })
    }

    fn t_of(field: &Arc<FiniteField>) -> TowerElt {
        TowerElt::var(&PerfBase::constant(FFElt::from_u64(field, 0)))
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn ctx(&self) -> &Arc<RamExtCtx<TowerElt>> {
        &self.ctx
    }

    /// `alpha_1 = t` in the residue field `F_p(t,s)^perf`.
    pub fn t_elt(&self) -> TowerElt {
        Self::t_of(&self.field)
    }

    /// `alpha_2 = s`.
    pub fn s_elt(&self) -> TowerElt {
        TowerElt::constant(PerfBase::var(&FFElt::from_u64(&self.field, 0)))
    }

    /// The Teichmueller lift `a_1 = [t]`.
    pub fn a1(&self) -> RamExtElt<TowerElt> {
        RamExtElt::from_base(&self.ctx, self.ctx.c())
    }

    pub fn pi(&self) -> RamExtElt<TowerElt> {
        RamExtElt::pi(&self.ctx)
    }

    pub fn one(&self) -> RamExtElt<TowerElt> {
        RamExtElt::one(&self.ctx)
    }

    pub fn p_elt(&self) -> RamExtElt<TowerElt> {
        RamExtElt::from_base(
            &self.ctx,
            LocalWitt::one(self.ctx.polys(), self.ctx.alpha()).mul_by_p_pow(1),
        )
    }

    /// The variable swap `phi`, with `phi(t) = s`.
    pub fn phi(&self, x: &TowerElt) -> Result<TowerElt> {
        crate::perfect::swap_tower_vars(x)
    }
}
