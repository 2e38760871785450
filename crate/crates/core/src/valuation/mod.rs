//! Composition of valuations at the element level.
//!
//! A [`ValuationTower`] packages the coarse valuation `v` on the ramified
//! extension `K = Frac(W(k))(pi)` together with a fine valuation `nu` on
//! the residue field `k = Kv`. The composed valuation `nu o v` takes
//! values in the lexicographic sum `vK (+) nu(k)` once a section of the
//! quotient `vK (+) nu(k) -> vK` is chosen; our section sends the coarse
//! generator `1/2` to `v(pi)`, so the fine correction of an element is
//! computed by dividing out an exact power of `pi` and evaluating `nu` on
//! the residue of the remaining unit. With this convention
//! `(nu o v)(p) = (1, -nu(alpha_1))`: the coordinates are an artifact of
//! the section, but divisibility statements about them are not, and those
//! are the only conclusions the verifier reports.
//!
//! Non-equivalence of two composed valued fields is certified exclusively
//! through finite invariants: the 2-divisibility of the marked point in
//! the pointed value group, and residue-structure distinctions (square
//! classes, curve solutions) handled in [`quad`].

pub mod quad;
pub mod towers;

use std::cmp::Ordering;

use num::Zero;

use crate::error::{Error, Result};
use crate::field::PerfectField;
use crate::hahn::HahnSeries;
use crate::oag::groups::{GroupDesc, GroupElt, PointedGroup};
use crate::oag::ConvexSubgroup;
use crate::perfect::{swap_tower_vars, TowerElt};
use crate::rational::{int, Rat};
use crate::witt::local::LocalWitt;
use crate::witt::ramext::RamExtElt;
use crate::DetRng;

/// A valuation on the residue field `k`, presented abstractly: a value
/// group descriptor and an evaluation map on nonzero elements.
pub trait FineValuation<K: PerfectField> {
    fn group(&self) -> GroupDesc;
    fn value(&self, x: &K) -> Result<GroupElt>;
    /// Short name used in certificates (e.g. `nu_1`).
    fn label(&self) -> String;
}

/// Coarsening of the Hahn series valuation by the convex subgroup
/// `Delta_threshold`; values are canonical representatives supported on
/// indices `<= threshold`.
pub struct HahnCoarsening {
    p: u64,
    delta: ConvexSubgroup,
    label: String,
}

impl HahnCoarsening {
    pub fn new(p: u64, delta: ConvexSubgroup, label: impl Into<String>) -> Self {
        HahnCoarsening { p, delta, label: label.into() }
    }

    pub fn delta(&self) -> &ConvexSubgroup {
        &self.delta
    }
}

impl FineValuation<HahnSeries> for HahnCoarsening {
    fn group(&self) -> GroupDesc {
        GroupDesc::gamma_quotient(self.p, self.delta.threshold)
    }

    fn value(&self, x: &HahnSeries) -> Result<GroupElt> {
        Ok(GroupElt::Gamma(x.coarsened_valuation(&self.delta)?))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// The `t`-adic (or, after swapping the tower variables, `s`-adic)
/// valuation on `F_p(t,s)^perf`, with value group `(1/p^oo)Z`.
pub struct VarAdic {
    p: u64,
    swap: bool,
    label: String,
}

impl VarAdic {
    pub fn new(p: u64, swap: bool, label: impl Into<String>) -> Self {
        VarAdic { p, swap, label: label.into() }
    }
}

impl FineValuation<TowerElt> for VarAdic {
    fn group(&self) -> GroupDesc {
        GroupDesc::p_divisible_hull(self.p)
    }

    fn value(&self, x: &TowerElt) -> Result<GroupElt> {
        let y = if self.swap { swap_tower_vars(x)? } else { x.clone() };
        Ok(GroupElt::Rat(y.ord_t()?))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A value of the composed valuation: the coarse part `v(x)` in `(1/2)Z`
/// (or its `p`-divisible hull at positive ramification depth) and the fine
/// correction in `nu(k)`, lexicographically ordered with the coarse part
/// dominant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedValue {
    pub coarse: Rat,
    pub fine: GroupElt,
}

impl ComposedValue {
    pub fn as_group_elt(&self) -> GroupElt {
        GroupElt::pair(GroupElt::Rat(self.coarse.clone()), self.fine.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coarse.is_zero() && self.fine.is_zero()
    }

    pub fn cmp_order(&self, other: &Self) -> Ordering {
        self.as_group_elt().cmp_order(&other.as_group_elt())
    }
}

impl std::fmt::Display for ComposedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.coarse, self.fine)
    }
}

/// The assembled composition `nu o v` on `K = Frac(W(k))(pi)`.
pub struct ValuationTower<K: PerfectField, F: FineValuation<K>> {
    fine: F,
    /// Ramification depth `m`: the coarse group is `(1/(2p^m))Z`, realised
    /// by the presented subfield `K(p^{1/p^m})`. Element arithmetic stays
    /// in the depth-0 field; only the group bookkeeping depends on `m`.
    ram_depth: u32,
    label: String,
    _marker: std::marker::PhantomData<K>,
}

impl<K: PerfectField, F: FineValuation<K>> ValuationTower<K, F> {
    pub fn new(fine: F, ram_depth: u32, label: impl Into<String>) -> Self {
        ValuationTower { fine, ram_depth, label: label.into(), _marker: std::marker::PhantomData }
    }

    pub fn fine(&self) -> &F {
        &self.fine
    }

    pub fn ram_depth(&self) -> u32 {
        self.ram_depth
    }

    pub fn label(&self) -> String {
        self.label.clone()
    }

    /// `vK`: `(1/2)Z` at depth 0, `(1/(2p^m))Z` at depth `m`.
    pub fn coarse_group(&self, p: u64) -> GroupDesc {
        if self.ram_depth == 0 {
            GroupDesc::half_integers(p)
        } else {
            GroupDesc::half_p_depth(p, self.ram_depth)
        }
    }

    /// The composed value group `vK (+)_lex nu(k)`.
    pub fn composed_group(&self, p: u64) -> GroupDesc {
        GroupDesc::lex_sum(self.coarse_group(p), self.fine.group())
    }

    /// `(nu o v)(x)` for nonzero `x`. The fine part is `nu` of the residue
    /// of the unit `x * pi^{-2 v(x)}`, which realizes the section
    /// `1/2 -> v(pi)`.
    pub fn compose_value(&self, x: &RamExtElt<K>) -> Result<ComposedValue> {
        let v = match x.valuation()? {
            None => return Err(Error::ZeroInput("composed valuation")),
            Some(v) => v,
        };
        let twice = &v * int(2);
        debug_assert!(twice.is_integer());
        let r: i64 = twice.to_integer().try_into().map_err(|_| {
            Error::InvalidParameter("valuation out of i64 range".into())
        })?;
        let unit = x.mul_pi_pow(-r);
        let residue = unit.residue()?;
        let fine = self.fine.value(&residue)?;
        Ok(ComposedValue { coarse: v, fine })
    }

    /// `(nu o v)(p)`, with `p` taken as the scalar `p * 1` of the base.
    pub fn value_of_p(&self, x_witness: &RamExtElt<K>) -> Result<ComposedValue> {
        let ctx = x_witness.ctx();
        let p_elt = RamExtElt::from_base(
            ctx,
            LocalWitt::one(ctx.polys(), ctx.alpha()).mul_by_p_pow(1),
        );
        self.compose_value(&p_elt)
    }

    /// The pointed value group `(vK, v(p))` of the composition.
    pub fn pointed_group(&self, x_witness: &RamExtElt<K>) -> Result<PointedGroup> {
        let p = x_witness.ctx().p();
        let point = self.value_of_p(x_witness)?.as_group_elt();
        Ok(PointedGroup::new(self.composed_group(p), point))
    }
}

/// Whether the marked point is `n`-divisible in its group: the elementary
/// invariant of pointed groups that separates the towers.
pub fn pointed_divisibility_invariant(g: &PointedGroup, n: u64) -> bool {
    g.point_divisible_by(n)
}

/// Outcome of checking a concrete witness pair `(X, Y)` against
/// `(exists Y)(Y^2 = p*X) and v(X) = 0`.
#[derive(Debug, Clone)]
pub struct WitnessOutcome {
    pub equation_holds: bool,
    pub x_value: ComposedValue,
    pub accepted: bool,
    /// The checked identities, in order, as printable facts.
    pub certificate: Vec<String>,
}

/// Checks `Y^2 = p*X` exactly (at working precision) and `v(X) = 0` for
/// the composed valuation; accepts iff both hold.
pub fn check_distinguishing_witness<K: PerfectField, F: FineValuation<K>>(
    x: &RamExtElt<K>,
    y: &RamExtElt<K>,
    tower: &ValuationTower<K, F>,
) -> Result<WitnessOutcome> {
    let ctx = x.ctx();
    let p_elt = RamExtElt::from_base(
        ctx,
        LocalWitt::one(ctx.polys(), ctx.alpha()).mul_by_p_pow(1),
    );
    let lhs = y.mul(y);
    let rhs = p_elt.mul(x);
    let equation_holds = lhs.agrees_with(&rhs);
    let x_value = tower.compose_value(x)?;
    let accepted = equation_holds && x_value.is_zero();
    let mut certificate = vec![format!(
        "Y^2 {} p*X at working precision",
        if equation_holds { "=" } else { "/=" }
    )];
    certificate.push(format!("({})(X) = {}", tower.label(), x_value));
    certificate.push(if accepted {
        "both conjuncts hold: witness accepted".into()
    } else {
        "witness rejected".into()
    });
    Ok(WitnessOutcome { equation_holds, x_value, accepted, certificate })
}

/// Outcome of the refutation argument for the same sentence.
#[derive(Debug, Clone)]
pub struct RefutationOutcome {
    /// `v(p)` in the composed group.
    pub point: ComposedValue,
    /// Whether `v(p)` is 2-divisible; refutation succeeds iff not.
    pub divisible: bool,
    pub half_witness: Option<GroupElt>,
    pub refuted: bool,
    pub derivation: Vec<String>,
}

/// Derives: any `X, Y` with `Y^2 = p*X` and `v(X) = 0` force
/// `v(p) = 2 v(Y) in 2 vK`; so if `v(p)` is not 2-divisible, the sentence
/// fails. Returns "no refutation" when `v(p)` is 2-divisible (with the
/// witness attached).
pub fn refute_distinguishing_sentence<K: PerfectField, F: FineValuation<K>>(
    x_witness: &RamExtElt<K>,
    tower: &ValuationTower<K, F>,
) -> Result<RefutationOutcome> {
    let p = x_witness.ctx().p();
    let group = tower.composed_group(p);
    let point = tower.value_of_p(x_witness)?;
    let elt = point.as_group_elt();
    let half_witness = group.divide_witness(&elt, 2);
    let divisible = half_witness.is_some();
    let mut derivation = vec![
        "if Y^2 = p*X and v(X) = 0 then v(p) = v(Y^2) - v(X) = 2*v(Y)".into(),
        format!("so the sentence forces v(p) to be 2-divisible in vK = {group}"),
        format!("v(p) = {point}"),
    ];
    derivation.push(match &half_witness {
        Some(w) => format!("v(p) = 2 * {w}: 2-divisible, no refutation"),
        None => "v(p) is not 2-divisible: sentence refuted".into(),
    });
    Ok(RefutationOutcome { point, divisible, half_witness, refuted: !divisible, derivation })
}

/// Result of checking the index-shift isomorphism between two composed
/// value groups (the concrete realization of the lex-sum equivalence).
#[derive(Debug, Clone)]
pub struct ShiftIsoCheck {
    pub generators_checked: usize,
    pub samples_checked: usize,
}

/// Verifies that `(c, g) -> (c, shift(g))` is an isomorphism of ordered
/// groups from `src` onto `dst`, where both are lex sums of a common
/// rational coarse group with Gamma-quotient fine parts whose thresholds
/// differ by `shift`. Checked on the basis elements near the threshold and
/// on `samples` random elements: image membership, additivity, order
/// preservation, divisibility transfer (by 2 and by `p`), and exact
/// inversion by the opposite shift.
pub fn composed_group_shift_iso(
    src: &GroupDesc,
    dst: &GroupDesc,
    shift: i64,
    samples: usize,
    rng: &mut DetRng,
) -> Result<ShiftIsoCheck> {
    let (coarse_src, p, th_src) = match src {
        GroupDesc::LexSum(c, f) => match (&**c, &**f) {
            (GroupDesc::Rational(r), GroupDesc::GammaQuotient { p, threshold }) => {
                (r.clone(), *p, *threshold)
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "source is not a rational-by-quotient lex sum".into(),
                ))
            }
        },
        _ => return Err(Error::InvalidParameter("source is not a lex sum".into())),
    };
    match dst {
        GroupDesc::LexSum(c, f) => match (&**c, &**f) {
            (GroupDesc::Rational(r), GroupDesc::GammaQuotient { p: p2, threshold }) => {
                if *r != coarse_src || *p2 != p || *threshold != th_src + shift {
                    return Err(Error::InvalidParameter(format!(
                        "target {dst} is not the {shift}-shift of {src}"
                    )));
                }
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "target is not a rational-by-quotient lex sum".into(),
                ))
            }
        },
        _ => return Err(Error::InvalidParameter("target is not a lex sum".into())),
    }

    let apply = |x: &GroupElt, s: i64| -> Result<GroupElt> {
        match x {
            GroupElt::Pair(c, f) => match &**f {
                GroupElt::Gamma(g) => Ok(GroupElt::pair((**c).clone(), GroupElt::Gamma(g.shift(s)))),
                _ => Err(Error::InvalidParameter("fine part is not a Gamma element".into())),
            },
            _ => Err(Error::InvalidParameter("not a pair".into())),
        }
    };

    // Basis elements of the fine part near the threshold, plus the coarse
    // generator.
    let mut generators = Vec::new();
    for i in (th_src - 3)..=th_src {
        generators.push(GroupElt::pair(
            GroupElt::Rat(Rat::zero()),
            GroupElt::Gamma(crate::oag::OagElement::basis(p, i)),
        ));
    }
    generators.push(GroupElt::pair(
        GroupElt::rat(1, 2),
        GroupElt::Gamma(crate::oag::OagElement::zero(p)),
    ));
    for g in &generators {
        let img = apply(g, shift)?;
        if !dst.contains(&img) {
            return Err(Error::InvalidParameter(format!(
                "image of generator {g} lies outside the target group"
            )));
        }
        if apply(&img, -shift)? != *g {
            return Err(Error::InvalidParameter("shift map fails to invert".into()));
        }
    }

    let random_elt = |rng: &mut DetRng| -> GroupElt {
        let coarse = rat_in(&coarse_src, rng);
        let mut coords = std::collections::BTreeMap::new();
        for i in (th_src - 2)..=th_src {
            if rng.coin() {
                let num = rng.signed(9);
                let den = int(p as i64).pow(rng.below(3) as u32);
                if num != 0 {
                    coords.insert(i, Rat::new(int(num), den));
                }
            }
        }
        let fine = crate::oag::OagElement::from_coords(p, coords).expect("valid coords");
        GroupElt::pair(GroupElt::Rat(coarse), GroupElt::Gamma(fine))
    };

    let mut checked = 0;
    while checked < samples {
        let x = random_elt(rng);
        let y = random_elt(rng);
        let (fx, fy) = (apply(&x, shift)?, apply(&y, shift)?);
        if !dst.contains(&fx) || !dst.contains(&fy) {
            return Err(Error::InvalidParameter("image escapes the target group".into()));
        }
        if apply(&x.add(&y), shift)? != fx.add(&fy) {
            return Err(Error::InvalidParameter("shift map is not additive".into()));
        }
        if x.cmp_order(&y) != fx.cmp_order(&fy) {
            return Err(Error::InvalidParameter("shift map does not preserve order".into()));
        }
        for n in [2u64, p] {
            if src.divisible(&x, n) != dst.divisible(&fx, n) {
                return Err(Error::InvalidParameter(format!(
                    "shift map changes {n}-divisibility"
                )));
            }
        }
        if apply(&fx, -shift)? != x {
            return Err(Error::InvalidParameter("shift map fails to invert".into()));
        }
        checked += 1;
    }
    Ok(ShiftIsoCheck { generators_checked: generators.len(), samples_checked: checked })
}

/// A random element of a rational subgroup, with denominators bounded for
/// readability (the group may be a divisible hull with no finest generator).
fn rat_in(sub: &crate::oag::groups::RatSubgroup, rng: &mut DetRng) -> Rat {
    use crate::oag::groups::PCap;
    let j = rng.signed(8);
    let depth = match sub.cap {
        PCap::None => 0,
        PCap::Finite(m) => m.min(2),
        PCap::Infinite => 2,
    };
    let mut den = int(sub.p as i64).pow(depth);
    if sub.half {
        den *= int(2);
    }
    Rat::new(int(j), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FiniteField;
    use crate::witt::ramext::RamExtCtx;
    use crate::witt::witt_polys;
    use std::sync::Arc;

    fn hahn_setup(
        threshold: i64,
    ) -> (Arc<RamExtCtx<HahnSeries>>, ValuationTower<HahnSeries, HahnCoarsening>) {
        let p = 5;
        let field = Arc::new(FiniteField::prime(p).unwrap());
        let polys = witt_polys(p, 3).unwrap();
        let alpha1 = HahnSeries::t_basis(&field, 1);
        let ctx = RamExtCtx::new(&polys, alpha1).unwrap();
        let fine = HahnCoarsening::new(
            p,
            ConvexSubgroup::new(threshold),
            format!("nu_delta{threshold}"),
        );
        let tower = ValuationTower::new(fine, 0, format!("v_delta{threshold}"));
        (ctx, tower)
    }

    #[test]
    fn composed_value_of_the_lift_and_of_p() {
        // Under the Delta_1 tower: v(a_1) = (0, e1), not zero; under the
        // Delta_0 tower: v(a_1) = (0, 0).
        let (ctx1, tower1) = hahn_setup(1);
        let a1 = RamExtElt::from_base(&ctx1, ctx1.c());
        let val = tower1.compose_value(&a1).unwrap();
        assert!(val.coarse.is_zero());
        assert_eq!(val.fine, GroupElt::Gamma(crate::oag::OagElement::basis(5, 1)));

        let (ctx0, tower0) = hahn_setup(0);
        let a1 = RamExtElt::from_base(&ctx0, ctx0.c());
        assert!(tower0.compose_value(&a1).unwrap().is_zero());

        // v(p) = (1, -nu(alpha1)) under both sections.
        let vp1 = tower1.value_of_p(&RamExtElt::one(&ctx1)).unwrap();
        assert_eq!(vp1.coarse, Rat::from(int(1)));
        assert_eq!(
            vp1.fine,
            GroupElt::Gamma(crate::oag::OagElement::basis(5, 1).neg())
        );
        let vp0 = tower0.value_of_p(&RamExtElt::one(&ctx0)).unwrap();
        assert_eq!(vp0.coarse, Rat::from(int(1)));
        assert!(vp0.fine.is_zero());
    }

    #[test]
    fn pointed_invariant_separates_the_towers() {
        let (ctx1, tower1) = hahn_setup(1);
        let (ctx0, tower0) = hahn_setup(0);
        let g1 = tower1.pointed_group(&RamExtElt::one(&ctx1)).unwrap();
        let g0 = tower0.pointed_group(&RamExtElt::one(&ctx0)).unwrap();
        assert!(!pointed_divisibility_invariant(&g1, 2));
        assert!(pointed_divisibility_invariant(&g0, 2));
    }

    #[test]
    fn witness_and_refutation_disagree_in_the_right_way() {
        let (ctx1, tower1) = hahn_setup(1);
        let (ctx0, tower0) = hahn_setup(0);
        for (ctx, tower, expect_accept) in [(&ctx1, &tower1, false), (&ctx0, &tower0, true)] {
            let x = RamExtElt::from_base(ctx, ctx.c());
            let y = RamExtElt::pi(ctx);
            let witness = check_distinguishing_witness(&x, &y, tower).unwrap();
            assert!(witness.equation_holds);
            assert_eq!(witness.accepted, expect_accept);
            let refutation = refute_distinguishing_sentence(&RamExtElt::one(ctx), tower).unwrap();
            assert_eq!(refutation.refuted, !expect_accept);
            // Soundness: never both.
            assert!(!(witness.accepted && refutation.refuted));
        }
    }

    #[test]
    fn composed_valuation_axioms_on_samples() {
        let (ctx, tower) = hahn_setup(1);
        let mut rng = DetRng::new(0xC0317);
        let field = ctx.alpha().coeff_field().clone();
        let random_elt = |rng: &mut DetRng| {
            // Sparse exact Hahn coefficients keep products exact.
            let polys = ctx.polys();
            let comp = |rng: &mut DetRng| {
                let coeff = rng.below(5);
                let idx = rng.signed(2);
                if coeff == 0 {
                    HahnSeries::zero(&field)
                } else {
                    HahnSeries::monomial(
                        crate::FFElt::from_u64(&field, coeff),
                        crate::oag::OagElement::basis(5, idx),
                    )
                }
            };
            let a = LocalWitt::integral(
                crate::WittVec::from_components(polys, vec![comp(rng), comp(rng), comp(rng)])
                    .unwrap(),
            );
            let b = LocalWitt::integral(
                crate::WittVec::from_components(polys, vec![comp(rng), comp(rng), comp(rng)])
                    .unwrap(),
            );
            RamExtElt::from_parts(&ctx, a, b)
        };
        let mut done = 0;
        while done < 12 {
            let x = random_elt(&mut rng);
            let y = random_elt(&mut rng);
            let (Ok(vx), Ok(vy)) = (tower.compose_value(&x), tower.compose_value(&y)) else {
                continue;
            };
            done += 1;
            let product = tower.compose_value(&x.mul(&y)).unwrap();
            assert_eq!(
                product.as_group_elt(),
                vx.as_group_elt().add(&vy.as_group_elt())
            );
            if let Ok(vs) = tower.compose_value(&x.add(&y)) {
                let min = match vx.cmp_order(&vy) {
                    Ordering::Greater => vy.clone(),
                    _ => vx.clone(),
                };
                assert_ne!(vs.cmp_order(&min), Ordering::Less);
                if vx != vy {
                    assert_eq!(vs, min);
                }
            }
        }
    }

    #[test]
    fn bivariate_tower_composes_too() {
        // k = F_3(t,s)^perf with the t-adic fine valuation: the residue of
        // the unit a_1 = [t] has fine value 1, not 2-divisible in the hull.
        let p = 3;
        let polys = witt_polys(p, 2).unwrap();
        let field = Arc::new(FiniteField::prime(p).unwrap());
        let scalar = crate::FFElt::from_u64(&field, 0);
        let t = TowerElt::var(&crate::perfect::PerfBase::constant(scalar));
        let ctx = RamExtCtx::new(&polys, t).unwrap();
        let tower = ValuationTower::new(VarAdic::new(p, false, "v_t"), 0, "v_t o v");
        let a1 = RamExtElt::from_base(&ctx, ctx.c());
        let val = tower.compose_value(&a1).unwrap();
        assert!(val.coarse.is_zero());
        assert_eq!(val.fine, GroupElt::Rat(Rat::from(int(1))));
        let pg = tower.pointed_group(&RamExtElt::one(&ctx)).unwrap();
        assert!(!pointed_divisibility_invariant(&pg, 2));
        // The s-adic twin accepts instead.
        let tower_s = ValuationTower::new(VarAdic::new(p, true, "v_s"), 0, "v_s o v");
        let pg_s = tower_s.pointed_group(&RamExtElt::one(&ctx)).unwrap();
        assert!(pointed_divisibility_invariant(&pg_s, 2));
    }

    #[test]
    fn shift_iso_between_composed_groups() {
        let src = GroupDesc::lex_sum(
            GroupDesc::half_integers(5),
            GroupDesc::gamma_quotient(5, 1),
        );
        let dst = GroupDesc::lex_sum(
            GroupDesc::half_integers(5),
            GroupDesc::gamma_quotient(5, 0),
        );
        let mut rng = DetRng::new(0x150);
        let check = composed_group_shift_iso(&src, &dst, -1, 100, &mut rng).unwrap();
        assert_eq!(check.samples_checked, 100);
        // Mismatched thresholds are rejected.
        assert!(composed_group_shift_iso(&src, &dst, -2, 5, &mut rng).is_err());
    }
}
