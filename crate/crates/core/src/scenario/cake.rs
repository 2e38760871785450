//! The composition counterexamples: two compositions over the same
//! underlying valued field whose fine parts are isomorphic and whose
//! coarse parts are literally equal, yet whose composed valued fields a
//! single existential sentence tells apart.
//!
//! Four scenarios share this skeleton. `first-CAKE-counterex` runs it
//! over `k = F_p(t,s)^perf` with the `t`- and `s`-adic valuations;
//! `tame-Hahn-corollary` certifies the Hahn-field input data that removes
//! the non-henselian blemish; `fully-tame-CAKE` assembles the tame
//! version end to end; `no-mix-ake` isolates which mixed transfer
//! principle the example kills.

use std::sync::Arc;

use crate::error::Result;
use crate::field::{FieldElement, PerfectField, SquareTest};
use crate::finite_field::FiniteField;
use crate::hahn::HahnSeries;
use crate::oag::groups::{same_pointed_divisibility, GroupDesc, GroupElt};
use crate::oag::{ConvexSubgroup, OagElement};
use crate::rational::{int, rat};
use crate::report::{ensure, VerificationReport};
use crate::scenario::{sample_hahn_series, sample_tower_elt, ScenarioParams};
use crate::valuation::towers::{BivariateTowers, HahnTowers};
use crate::valuation::{
    check_distinguishing_witness, composed_group_shift_iso, pointed_divisibility_invariant,
    refute_distinguishing_sentence, FineValuation,
};
use crate::DetRng;

/// The distinguishing sentence, quoted in several certificates.
const SENTENCE: &str = "(exists X)(exists Y)(Y^2 = p*X and v(X) = 0)";

/// `nu_i(x)` for the coarsening by `Delta_threshold`.
fn nu(x: &HahnSeries, threshold: i64) -> Result<OagElement> {
    x.coarsened_valuation(&ConvexSubgroup::new(threshold))
}

/// The first composition counterexample, over `k = F_p(t,s)^perf` with
/// its `t`-adic and `s`-adic valuations.
pub fn first_cake_counterex(params: &ScenarioParams) -> Result<VerificationReport> {
    let tw = BivariateTowers::new(params.p, params.witt_len, 0)?;
    let mut report = VerificationReport::new("first-CAKE-counterex", params.clone());
    let p = params.p;

    report.claim(
        "adic-valuations-on-k",
        "v_t and v_s are the t-adic and s-adic valuations on k = F_p(t,s)^perf, with value group (1/p^oo)Z",
        "Example first-CAKE-counterex",
        || {
            let t = tw.t_elt();
            let s = tw.s_elt();
            let vt = tw.v1.fine();
            let vs = tw.v2.fine();
            ensure(vt.value(&t)? == GroupElt::rat(1, 1), "v_t(t) = 1")?;
            ensure(vt.value(&s)? == GroupElt::rat(0, 1), "v_t(s) = 0")?;
            ensure(vs.value(&s)? == GroupElt::rat(1, 1), "v_s(s) = 1")?;
            ensure(vs.value(&t)? == GroupElt::rat(0, 1), "v_s(t) = 0")?;
            ensure(
                vt.value(&t.pth_root())? == GroupElt::Rat(rat(1, p as i64)),
                "v_t(t^(1/p)) = 1/p",
            )?;
            ensure(
                vt.group() == GroupDesc::p_divisible_hull(p)
                    && vs.group() == GroupDesc::p_divisible_hull(p),
                "both value groups are (1/p^oo)Z",
            )?;
            let mut rng = DetRng::new(0xADD1C);
            let samples = 12;
            for _ in 0..samples {
                let x = sample_tower_elt(tw.field(), &mut rng);
                let y = sample_tower_elt(tw.field(), &mut rng);
                for v in [vt, vs] {
                    ensure(
                        v.value(&x.mul(&y))? == v.value(&x)?.add(&v.value(&y)?),
                        "v(xy) = v(x) + v(y)",
                    )?;
                    let sum = x.add(&y);
                    if !sum.is_zero() {
                        let bound = match v.value(&x)?.cmp_order(&v.value(&y)?) {
                            std::cmp::Ordering::Greater => v.value(&y)?,
                            _ => v.value(&x)?,
                        };
                        ensure(
                            v.value(&sum)?.cmp_order(&bound) != std::cmp::Ordering::Less,
                            "v(x+y) >= min(v(x), v(y))",
                        )?;
                    }
                }
            }
            Ok(format!(
                "v_t(t) = v_s(s) = 1, v_t(s) = v_s(t) = 0, v_t(t^(1/p)) = 1/p; value \
                 group {} on both sides; multiplicativity and the ultrametric bound \
                 checked on {samples} random pairs",
                GroupDesc::p_divisible_hull(p)
            ))
        },
    );

    report.claim(
        "swap-is-valued-field-isomorphism",
        "the variable swap phi is an isomorphism (k, v_s) -> (k, v_t) of valued fields",
        "Example first-CAKE-counterex",
        || {
            let hom = super::hiding::check_swap_automorphism(&tw, 12, 0x5A)?;
            let mut rng = DetRng::new(0x5B);
            let samples = 12;
            for _ in 0..samples {
                let x = sample_tower_elt(tw.field(), &mut rng);
                ensure(
                    tw.v1.fine().value(&tw.phi(&x)?)? == tw.v2.fine().value(&x)?,
                    "v_t(phi(x)) = v_s(x)",
                )?;
            }
            Ok(format!(
                "{hom}; moreover v_t(phi(x)) = v_s(x) on {samples} further samples, so \
                 phi matches the valuations"
            ))
        },
    );

    report.claim(
        "square-cosets-differ",
        "alpha_1 = t and alpha_2 = s lie in different square cosets of k",
        "Example first-CAKE-counterex",
        || super::hiding::check_cosets_differ(&tw),
    );

    report.claim(
        "ramified-extension-assembled",
        "K = Frac(W(k))(pi) with pi^2 = p * a_1 and a_1 = [t] is the shared upper field of both compositions",
        "Example first-CAKE-counterex",
        || {
            let pi = tw.pi();
            let p_a1 = tw.p_elt().mul(&tw.a1());
            ensure(pi.mul(&pi).agrees_with(&p_a1), "pi^2 = p * a_1")?;
            ensure(pi.valuation()? == Some(rat(1, 2)), "v_p(pi) = 1/2")?;
            ensure(tw.a1().residue()? == tw.t_elt(), "res(a_1) = t")?;
            Ok(
                "both compositions factor through the same (K, v_p): the towers differ \
                 only in the fine valuation applied to v_p-residues; pi^2 = p * a_1 \
                 holds exactly and a_1 lifts alpha_1 = t"
                    .into(),
            )
        },
    );

    report.claim(
        "witness-accepted-under-v2",
        "X = a_1, Y = pi witness the distinguishing sentence in (K, v_s o v_p)",
        "Lemma compAKE-ctex, proof",
        || {
            let outcome = check_distinguishing_witness(&tw.a1(), &tw.pi(), &tw.v2)?;
            ensure(outcome.equation_holds, "pi^2 = p * a_1")?;
            ensure(outcome.accepted, "witness accepted under v_2")?;
            Ok(outcome.certificate.join("; "))
        },
    );

    report.claim(
        "refutation-under-v1",
        "the distinguishing sentence fails in (K, v_t o v_p)",
        "Lemma compAKE-ctex, proof",
        || {
            let outcome = refute_distinguishing_sentence(&tw.a1(), &tw.v1)?;
            ensure(outcome.refuted, "v_1(p) is 2-divisible; no refutation")?;
            Ok(outcome.derivation.join("; "))
        },
    );

    report.claim(
        "soundness-cross-check",
        "under neither composition are the witness check and the refutation both accepted",
        "Lemma compAKE-ctex, proof",
        || {
            for tower in [&tw.v1, &tw.v2] {
                let w = check_distinguishing_witness(&tw.a1(), &tw.pi(), tower)?;
                let r = refute_distinguishing_sentence(&tw.a1(), tower)?;
                ensure(
                    !(w.accepted && r.refuted),
                    "witness and refutation accepted simultaneously",
                )?;
            }
            Ok(format!(
                "for {SENTENCE}: accepted under v_2 = v_s o v_p only, refuted under \
                 v_1 = v_t o v_p only; no tower accepts both"
            ))
        },
    );

    report.claim(
        "pointed-value-groups-differ",
        "(v_1 K, v_1(p)) and (v_2 K, v_2(p)) disagree on 2-divisibility of the point",
        "Lemma compAKE-ctex, proof",
        || {
            let g1 = tw.v1.pointed_group(&tw.a1())?;
            let g2 = tw.v2.pointed_group(&tw.a1())?;
            ensure(!pointed_divisibility_invariant(&g1, 2), "v_1(p) is not 2-divisible")?;
            ensure(pointed_divisibility_invariant(&g2, 2), "v_2(p) is 2-divisible")?;
            ensure(
                !same_pointed_divisibility(&g1, &g2, &[2]),
                "the pointed groups agree on 2-divisibility",
            )?;
            Ok(format!(
                "v_1(p) = {} is not 2-divisible, v_2(p) = {} = 2 * {}",
                tw.v1.value_of_p(&tw.a1())?,
                tw.v2.value_of_p(&tw.a1())?,
                g2.divide_point(2).expect("divisible")
            ))
        },
    );

    report.claim(
        "composition-ake-fails",
        "the compositions v_t o v_p and v_s o v_p are not elementarily equivalent, refuting the composition transfer principle",
        "Lemma compAKE-ctex",
        || {
            let w2 = check_distinguishing_witness(&tw.a1(), &tw.pi(), &tw.v2)?;
            let r1 = refute_distinguishing_sentence(&tw.a1(), &tw.v1)?;
            ensure(w2.accepted && r1.refuted, "the sentence separates the towers")?;
            Ok(format!(
                "{SENTENCE} holds in (K, v_2) and fails in (K, v_1), although the fine \
                 parts (k, v_s) = (k, v_t) are isomorphic valued fields and the coarse \
                 parts are literally the same (K, v_p); equivalence of the pieces does \
                 not transfer to the compositions"
            ))
        },
    );

    report.claim(
        "residue-valuations-not-henselian",
        "v_t and v_s on k are not henselian; this blemish motivates the tame version",
        "Example first-CAKE-counterex",
        || {
            let one = tw.t_elt().one_like();
            let x = tw.t_elt().add(&one);
            ensure(
                tw.v1.fine().value(&x)? == GroupElt::rat(0, 1),
                "1 + t is a v_t-unit",
            )?;
            ensure(!x.is_square()?, "1 + t has a square root in k")?;
            let y = tw.s_elt().add(&one);
            ensure(!y.is_square()?, "1 + s has a square root in k")?;
            Ok(
                "Y^2 - (1+t) has the simple root 1 in the v_t-residue field F_p(s)^perf, \
                 but 1+t has no square root in k (its t-free part under the exact \
                 factorization is a nonsquare), so Hensel's lemma fails for v_t; \
                 symmetrically for v_s and 1+s"
                    .into(),
            )
        },
    );

    Ok(report)
}

/// The corollary input data over the Hahn field `k = F_p((Gamma))`: a
/// tame valuation, a value-preserving automorphism moving `alpha_1` to
/// `alpha_2`, and the coarsening that sees the square-coset difference.
pub fn tame_hahn_corollary(params: &ScenarioParams) -> Result<VerificationReport> {
    let field = Arc::new(FiniteField::prime(params.p)?);
    let mut report = VerificationReport::new("tame-Hahn-corollary", params.clone());
    let p = params.p;
    let alpha1 = HahnSeries::t_basis(&field, 1);
    let alpha2 = HahnSeries::t_basis(&field, 2);
    let e1 = OagElement::basis(p, 1);
    let e2 = OagElement::basis(p, 2);

    report.claim(
        "gamma-p-divisible",
        "Gamma = lex sum of (1/p^oo)Z over the reversed naturals is p-divisible",
        "Construction tame instance",
        || {
            ensure(GroupDesc::gamma(p).is_p_divisible(), "Gamma is p-divisible")?;
            let w = e1.divide_witness(p).expect("p-divisible");
            ensure(w.scale(&int(p as i64)) == e1, "e_1 = p * (e_1 / p)")?;
            Ok(format!(
                "every coordinate of an element of Gamma sits in (1/p^oo)Z, so dividing \
                 by p stays inside; witness e_1 = {p} * ({w})"
            ))
        },
    );

    report.assumed_claim(
        "hahn-valuation-tame",
        "(k, nu) with k = F_p((Gamma)) and nu the canonical Hahn valuation is a tame field",
        "Construction tame instance",
        "Hahn fields are maximally complete, hence henselian and algebraically \
         maximal; that part is not finitely checkable. The finitely checkable legs are \
         verified here: the residue field F_p is finite prime, hence perfect, and Gamma \
         is p-divisible (claim gamma-p-divisible)",
    );

    report.claim(
        "alpha-values-and-ordering",
        "nu(alpha_1) = e_1 and nu(alpha_2) = e_2 with e_1 > e_2 > 0 in the lexicographic order",
        "Construction tame instance",
        || {
            ensure(alpha1.valuation()? == e1, "nu(alpha_1) = e_1")?;
            ensure(alpha2.valuation()? == e2, "nu(alpha_2) = e_2")?;
            ensure(e1.lex_cmp(&e2).is_gt(), "e_1 > e_2")?;
            ensure(e2.is_positive(), "e_2 > 0")?;
            Ok(
                "the smaller index dominates lexicographically, so e_1 > e_2 > 0; both \
                 are the leading exponents of their monomials"
                    .into(),
            )
        },
    );

    report.claim(
        "archimedean-classes-differ",
        "nu(alpha_1) and nu(alpha_2) lie in different archimedean classes",
        "Construction tame instance",
        || {
            ensure(!e1.archimedean_equiv(&e2)?, "e_1 and e_2 are archimedean-equivalent")?;
            for n in [1i64, 2, 3, p as i64, (p * p) as i64, 1000] {
                ensure(e2.scale(&int(n)).lex_cmp(&e1).is_lt(), "n * e_2 < e_1")?;
            }
            Ok(format!(
                "the lexicographic comparison is decided at index 1 before index 2, so \
                 n * e_2 < e_1 for every integer n; sampled n up to 1000, and the \
                 archimedean classes (leading indices 1 vs 2) differ"
            ))
        },
    );

    report.claim(
        "square-cosets-differ",
        "alpha_1 and alpha_2 lie in different square cosets of k",
        "Construction tame instance",
        || {
            let diff = e1.sub(&e2);
            ensure(!diff.divisible_by(2), "e_1 - e_2 is 2-divisible in Gamma")?;
            let ratio = alpha1.div(&alpha2)?;
            ensure(!ratio.is_square()?, "t^(e_1 - e_2) is a square in k")?;
            ensure(!alpha2.div(&alpha1)?.is_square()?, "the inverse ratio is a square")?;
            Ok(format!(
                "nu(alpha_1/alpha_2) = e_1 - e_2 = {diff} is not 2-divisible in Gamma \
                 (the coordinates 1 and -1 are odd integers), and a square has \
                 2-divisible value; the direct Hahn square test agrees"
            ))
        },
    );

    report.claim(
        "shift-automorphism",
        "t^(e_i) -> t^(e_(i+1)) extends to a value-compatible automorphism phi of k with phi(alpha_1) = alpha_2",
        "Construction tame instance",
        || {
            ensure(alpha1.shift_indices(1) == alpha2, "phi(alpha_1) = alpha_2")?;
            let mut rng = DetRng::new(0x5217);
            let samples = 12;
            for _ in 0..samples {
                let x = sample_hahn_series(&field, &mut rng, -1, 3);
                let y = sample_hahn_series(&field, &mut rng, -1, 3);
                ensure(
                    x.add(&y).shift_indices(1) == x.shift_indices(1).add(&y.shift_indices(1)),
                    "phi respects addition",
                )?;
                ensure(
                    x.mul(&y).shift_indices(1) == x.shift_indices(1).mul(&y.shift_indices(1)),
                    "phi respects multiplication",
                )?;
                ensure(
                    x.shift_indices(1).valuation()? == x.valuation()?.shift(1),
                    "nu(phi(x)) = shift of nu(x)",
                )?;
                ensure(x.shift_indices(1).shift_indices(-1) == x, "phi is invertible")?;
            }
            Ok(format!(
                "the index shift is additive, multiplicative, invertible, and shifts \
                 valuations exponent-wise; checked on {samples} random exact series \
                 (negative indices and p-power denominators included)"
            ))
        },
    );

    report.claim(
        "delta1-largest-convex-avoiding",
        "Delta_1 = {support > 1} is the biggest convex subgroup of Gamma not containing nu(alpha_1)",
        "Construction tame instance",
        || {
            let d1 = ConvexSubgroup::new(1);
            ensure(!d1.contains(&e1), "Delta_1 avoids e_1")?;
            ensure(d1.contains(&e2), "Delta_1 contains e_2")?;
            let g = OagElement::from_coords(p, [(1, rat(1, (p * p) as i64)), (3, rat(-2, 1))])?;
            ensure(!d1.contains(&g), "g with index-1 coordinate lies outside Delta_1")?;
            let n = 2 * (p * p) as i64;
            ensure(
                g.scale(&int(n)).lex_cmp(&e1).is_gt(),
                "a multiple of g dominates e_1",
            )?;
            Ok(format!(
                "Delta_1 contains e_2 but not e_1; maximality: any convex subgroup \
                 containing some positive g with a nonzero coordinate at an index <= 1 \
                 contains e_1, since a suitable integer multiple of g strictly \
                 dominates it (checked for g = {g}: {n} * g > e_1 > 0, and convex \
                 subgroups are closed downwards); so every strictly larger convex \
                 subgroup contains e_1"
            ))
        },
    );

    report.claim(
        "coarsening-values",
        "in Gamma/Delta_1 the value nu_1(alpha_1) is nonzero and not 2-divisible, while nu_1(alpha_2) = 0",
        "Construction tame instance",
        || {
            let q1 = nu(&alpha1, 1)?;
            let q2 = nu(&alpha2, 1)?;
            ensure(q1 == e1, "nu_1(alpha_1) is the class of e_1")?;
            ensure(q2.is_zero(), "nu_1(alpha_2) = 0")?;
            let quotient = GroupDesc::gamma_quotient(p, 1);
            ensure(
                !quotient.divisible(&GroupElt::Gamma(q1.clone()), 2),
                "nu_1(alpha_1) is 2-divisible in Gamma/Delta_1",
            )?;
            Ok(
                "writing Gamma/Delta_1 on the coordinates with index <= 1, \
                 nu_1(alpha_1) = (..., 0, 0, 0, 1) is the class of e_1, the generator \
                 of the last (1/p^oo)Z factor, and is not divisible by 2 since p is \
                 odd; nu_1(alpha_2) = 0 because e_2 lies in Delta_1"
                    .into(),
            )
        },
    );

    // The four corollary conditions, re-checked one by one so each file
    // line of the conclusion has its own certificate.
    report.claim(
        "corollary-condition-1",
        "condition (1): an automorphism of k maps alpha_1 to alpha_2",
        "Corollary tame-Hahn-hiding-residue-field, (1)",
        || {
            ensure(alpha1.shift_indices(1) == alpha2, "phi(alpha_1) = alpha_2")?;
            Ok("the index-shift automorphism moves alpha_1 = t^(e_1) to alpha_2 = t^(e_2)".into())
        },
    );

    report.claim(
        "corollary-condition-2",
        "condition (2): alpha_1 and alpha_2 lie in different square cosets",
        "Corollary tame-Hahn-hiding-residue-field, (2)",
        || {
            ensure(!alpha1.div(&alpha2)?.is_square()?, "the ratio is a square")?;
            Ok("alpha_1/alpha_2 = t^(e_1 - e_2) is a nonsquare: its value is not 2-divisible".into())
        },
    );

    report.claim(
        "corollary-condition-3",
        "condition (3): nu(alpha_1) and nu(alpha_2) lie in different archimedean classes",
        "Corollary tame-Hahn-hiding-residue-field, (3)",
        || {
            ensure(!e1.archimedean_equiv(&e2)?, "same archimedean class")?;
            Ok("leading indices 1 and 2 give distinct archimedean classes; n * e_2 < e_1 for all n".into())
        },
    );

    report.claim(
        "corollary-condition-4",
        "condition (4): the coarsening nu_1 by Delta_1 has nu_1(alpha_1) outside 2(Gamma/Delta_1) and nu_1(alpha_2) = 0",
        "Corollary tame-Hahn-hiding-residue-field, (4)",
        || {
            let q1 = nu(&alpha1, 1)?;
            ensure(
                !GroupDesc::gamma_quotient(p, 1).divisible(&GroupElt::Gamma(q1), 2),
                "nu_1(alpha_1) is 2-divisible",
            )?;
            ensure(nu(&alpha2, 1)?.is_zero(), "nu_1(alpha_2) /= 0")?;
            Ok("exact quotient computation in Gamma/Delta_1, written on indices <= 1".into())
        },
    );

    report.assumed_claim(
        "coarsening-tame",
        "(k, nu_1) is tame as well",
        "Corollary tame-Hahn-hiding-residue-field",
        "coarsenings of henselian, algebraically maximal fields with the verified \
         descriptor data stay tame; finitely checkable legs: Gamma/Delta_1 is \
         p-divisible (descriptor), and the nu_1-residue field F_p((Delta_1)) is \
         perfect because Delta_1 is p-divisible (e_2/p stays supported above index 1)",
    );

    Ok(report)
}

/// The fully tame composition counterexample over `k = F_p((Gamma))`.
pub fn fully_tame_cake(params: &ScenarioParams) -> Result<VerificationReport> {
    let tw = HahnTowers::new(params.p, params.witt_len, params.ram_depth)?;
    let mut report = VerificationReport::new("fully-tame-CAKE", params.clone());
    let p = params.p;
    let field = tw.field().clone();

    report.claim(
        "corollary-inputs",
        "the hiding inputs hold: nu_1(alpha_1) is nonzero and not 2-divisible, nu_1(alpha_2) = 0, alpha_1 and alpha_2 in different square cosets",
        "Example fully-tame-CAKE-counterexample",
        || {
            let q1 = nu(&tw.alpha1(), 1)?;
            ensure(q1 == OagElement::basis(p, 1), "nu_1(alpha_1) = class of e_1")?;
            ensure(
                !GroupDesc::gamma_quotient(p, 1).divisible(&GroupElt::Gamma(q1), 2),
                "nu_1(alpha_1) is 2-divisible",
            )?;
            ensure(nu(&tw.alpha2(), 1)?.is_zero(), "nu_1(alpha_2) /= 0")?;
            ensure(
                !tw.alpha1().div(&tw.alpha2())?.is_square()?,
                "alpha_1/alpha_2 is a square",
            )?;
            Ok(
                "nu_1(alpha_1) = (..., 0, 0, 0, 1) in Gamma/Delta_1 is not 2-divisible, \
                 nu_1(alpha_2) = 0, and alpha_1/alpha_2 = t^(e_1 - e_2) is a nonsquare"
                    .into(),
            )
        },
    );

    report.claim(
        "nu2-is-nu1-after-phi",
        "nu_2 = nu_1 o phi, written in the coordinates of Gamma/Delta_0",
        "Example fully-tame-CAKE-counterexample",
        || {
            let mut rng = DetRng::new(0x2F1);
            let samples = 16;
            for _ in 0..samples {
                let x = sample_hahn_series(&field, &mut rng, -1, 3);
                let via_phi = tw.phi(&x).coarsened_valuation(&ConvexSubgroup::new(1))?;
                let direct = nu(&x, 0)?;
                ensure(direct.shift(1) == via_phi, "shift_1(nu_2(x)) = nu_1(phi(x))")?;
            }
            ensure(nu(&tw.alpha1(), 0)?.is_zero(), "nu_2(alpha_1) = 0")?;
            ensure(
                nu(&tw.phi(&tw.alpha1()), 1)?.is_zero(),
                "nu_1(phi(alpha_1)) = 0",
            )?;
            Ok(format!(
                "nu_2 is computed as the Delta_0-coarsening, which is nu_1 o phi read \
                 through the canonical index-shift identification of Gamma/Delta_1 with \
                 Gamma/Delta_0; shift_1(nu_2(x)) = nu_1(phi(x)) on {samples} random \
                 exact series, and nu_2(alpha_1) = nu_1(alpha_2) = 0"
            ))
        },
    );

    report.claim(
        "k-isomorphism",
        "(k, nu_1) ~ (k, nu_2) via the index-shift automorphism",
        "Example fully-tame-CAKE-counterexample",
        || {
            let mut rng = DetRng::new(0x2F2);
            let samples = 12;
            for _ in 0..samples {
                let x = sample_hahn_series(&field, &mut rng, -1, 3);
                let y = sample_hahn_series(&field, &mut rng, -1, 3);
                ensure(
                    x.add(&y).shift_indices(1) == tw.phi(&x).add(&tw.phi(&y)),
                    "phi respects addition",
                )?;
                ensure(
                    x.mul(&y).shift_indices(1) == tw.phi(&x).mul(&tw.phi(&y)),
                    "phi respects multiplication",
                )?;
                let lhs = nu(&x, 0)?;
                let rhs = nu(&tw.phi(&x), 1)?;
                ensure(
                    lhs.is_positive() == rhs.is_positive() && lhs.is_zero() == rhs.is_zero(),
                    "phi preserves the valuation ring and its maximal ideal",
                )?;
            }
            Ok(format!(
                "phi is a field automorphism carrying nu_2 to nu_1 (values match under \
                 the index shift), hence an isomorphism of valued fields; checked on \
                 {samples} random exact series"
            ))
        },
    );

    report.claim(
        "towers-assembled",
        "K = Frac(W(k))(pi) with pi^2 = p * a_1 carries the compositions v_i = nu_i o v_p",
        "Example fully-tame-CAKE-counterexample",
        || {
            let pi = tw.pi();
            let p_a1 = tw.p_elt().mul(&tw.a1());
            ensure(pi.mul(&pi).agrees_with(&p_a1), "pi^2 = p * a_1")?;
            ensure(pi.valuation()? == Some(rat(1, 2)), "v_p(pi) = 1/2")?;
            ensure(tw.a1().residue()? == tw.alpha1(), "res(a_1) = alpha_1")?;
            let g1 = tw.v1.composed_group(p);
            let g2 = tw.v2.composed_group(p);
            Ok(format!(
                "a_1 = [alpha_1] lifts alpha_1 and pi^2 = p * a_1 exactly; at \
                 ramification depth m = {} the composed value groups are v_1 K = {g1} \
                 and v_2 K = {g2}, lexicographic sums of the coarse group over the \
                 respective quotients",
                tw.v1.ram_depth()
            ))
        },
    );

    report.assumed_claim(
        "ambient-tame-extension",
        "K is replaced by an algebraically maximal immediate extension of the presented field",
        "Example fully-tame-CAKE-counterexample",
        "immediacy and algebraic maximality are not finitely checkable; every \
         computation below happens in the presented field, which the passage leaves \
         unchanged on value groups and residue fields",
    );

    report.assumed_claim(
        "all-valuations-tame",
        "all valuations in sight (v_p, nu_1, nu_2, and the compositions v_1, v_2) are tame",
        "Example fully-tame-CAKE-counterexample",
        "henselianity and algebraic maximality are assumed; the finitely checkable \
         legs hold by descriptor computation: Gamma/Delta_1 and Gamma/Delta_0 are \
         p-divisible, the limit coarse group (1/(2 p^oo))Z is p-divisible, the lex sums \
         of p-divisible groups are p-divisible, and the residue fields (F_p and Hahn \
         fields over p-divisible Delta_i) are perfect",
    );

    report.claim(
        "v2-a1-vanishes",
        "v_2(a_1) = 0 via the chain v_2(a_1) = nu_2(alpha_1) = nu_1(phi(alpha_1)) = nu_1(alpha_2) = 0",
        "Example fully-tame-CAKE-counterexample",
        || {
            let val = tw.v2.compose_value(&tw.a1())?;
            ensure(val.is_zero(), "v_2(a_1) = 0")?;
            ensure(nu(&tw.alpha1(), 0)?.is_zero(), "nu_2(alpha_1) = 0")?;
            ensure(nu(&tw.alpha2(), 1)?.is_zero(), "nu_1(alpha_2) = 0")?;
            ensure(tw.phi(&tw.alpha1()) == tw.alpha2(), "phi(alpha_1) = alpha_2")?;
            Ok(format!(
                "v_2(a_1) = {val}; each link checked: a_1 is a v_p-unit with residue \
                 alpha_1, nu_2(alpha_1) = 0, and nu_2 = nu_1 o phi with phi(alpha_1) = \
                 alpha_2"
            ))
        },
    );

    report.claim(
        "v1-a1-not-2-divisible",
        "v_1(a_1) = nu_1(alpha_1) is nonzero and not 2-divisible in v_1 K",
        "Example fully-tame-CAKE-counterexample",
        || {
            let val = tw.v1.compose_value(&tw.a1())?;
            let group = tw.v1.composed_group(p);
            ensure(!val.is_zero(), "v_1(a_1) /= 0")?;
            ensure(
                !group.divisible(&val.as_group_elt(), 2),
                "v_1(a_1) is 2-divisible",
            )?;
            Ok(format!(
                "v_1(a_1) = {val}, the class of e_1 placed in the fine summand; \
                 nu_1 k embeds into v_1 K as a convex subgroup, so non-2-divisibility \
                 survives the composition; no witness in {group} halves it"
            ))
        },
    );

    report.claim(
        "v2-p-2-divisible",
        "v_2(p) is 2-divisible in v_2 K",
        "Example fully-tame-CAKE-counterexample",
        || {
            let val = tw.v2.value_of_p(&tw.a1())?;
            let group = tw.v2.composed_group(p);
            let w = group
                .divide_witness(&val.as_group_elt(), 2)
                .ok_or(crate::error::Error::ClaimFailed("v_2(p) is not 2-divisible".into()))?;
            Ok(format!("v_2(p) = {val} = 2 * {w}: the coarse coordinate halves to 1/2 and the fine coordinate is 0"))
        },
    );

    report.claim(
        "v1-p-not-2-divisible",
        "v_1(p) is not 2-divisible in v_1 K",
        "Example fully-tame-CAKE-counterexample",
        || {
            let vp = tw.v1.value_of_p(&tw.a1())?;
            let va1 = tw.v1.compose_value(&tw.a1())?;
            let vpa1 = tw.v1.compose_value(&tw.p_elt().mul(&tw.a1()))?;
            let group = tw.v1.composed_group(p);
            ensure(
                vpa1.as_group_elt() == vp.as_group_elt().add(&va1.as_group_elt()),
                "v_1(p a_1) = v_1(p) + v_1(a_1)",
            )?;
            ensure(
                group.divisible(&vpa1.as_group_elt(), 2),
                "v_1(p a_1) = 2 v_1(pi) is 2-divisible",
            )?;
            ensure(!group.divisible(&vp.as_group_elt(), 2), "v_1(p) is 2-divisible")?;
            Ok(format!(
                "v_1(p a_1) = {vpa1} is 2-divisible (it equals 2 v_1(pi)), while \
                 v_1(p) = v_1(p a_1) - v_1(a_1) = {vp} is not: its fine coordinate \
                 -e_1 is not 2-divisible in Gamma/Delta_1"
            ))
        },
    );

    report.claim(
        "pointed-value-groups-differ",
        "(v_1 K, v_1(p)) and (v_2 K, v_2(p)) are not elementarily equivalent as pointed groups",
        "Example fully-tame-CAKE-counterexample",
        || {
            let g1 = tw.v1.pointed_group(&tw.a1())?;
            let g2 = tw.v2.pointed_group(&tw.a1())?;
            ensure(!pointed_divisibility_invariant(&g1, 2), "v_1(p) not 2-divisible")?;
            ensure(pointed_divisibility_invariant(&g2, 2), "v_2(p) 2-divisible")?;
            Ok(
                "the elementary sentence 'the marked point is 2-divisible' holds in \
                 (v_2 K, v_2(p)) and fails in (v_1 K, v_1(p))"
                    .into(),
            )
        },
    );

    report.claim(
        "witness-accepted-under-v2",
        "X = a_1, Y = pi witness the distinguishing sentence in (K, v_2)",
        "Example fully-tame-CAKE-counterexample",
        || {
            let outcome = check_distinguishing_witness(&tw.a1(), &tw.pi(), &tw.v2)?;
            ensure(outcome.accepted, "witness accepted")?;
            Ok(outcome.certificate.join("; "))
        },
    );

    report.claim(
        "refutation-under-v1",
        "the distinguishing sentence fails in (K, v_1)",
        "Example fully-tame-CAKE-counterexample",
        || {
            let outcome = refute_distinguishing_sentence(&tw.a1(), &tw.v1)?;
            ensure(outcome.refuted, "no refutation under v_1")?;
            Ok(outcome.derivation.join("; "))
        },
    );

    report.claim(
        "soundness-cross-check",
        "under neither composition are the witness check and the refutation both accepted",
        "Example fully-tame-CAKE-counterexample",
        || {
            for tower in [&tw.v1, &tw.v2] {
                let w = check_distinguishing_witness(&tw.a1(), &tw.pi(), tower)?;
                let r = refute_distinguishing_sentence(&tw.a1(), tower)?;
                ensure(!(w.accepted && r.refuted), "contradictory outcomes")?;
            }
            Ok("accepted under v_2 only, refuted under v_1 only".into())
        },
    );

    report.claim(
        "composition-ake-counterexample",
        "(K, v_1) and (K, v_2) are tame compositions of equivalent pieces that are not elementarily equivalent",
        "Example fully-tame-CAKE-counterexample",
        || {
            let w2 = check_distinguishing_witness(&tw.a1(), &tw.pi(), &tw.v2)?;
            let r1 = refute_distinguishing_sentence(&tw.a1(), &tw.v1)?;
            ensure(w2.accepted && r1.refuted, "the sentence separates the towers")?;
            Ok(format!(
                "{SENTENCE} holds in (K, v_2) and fails in (K, v_1); with all \
                 valuations tame (assumed legs recorded above), this refutes the \
                 composition transfer principle even in the tame setting"
            ))
        },
    );

    Ok(report)
}

/// What the tame example does and does not break: residue fields
/// isomorphic, value groups isomorphic, valued fields inequivalent.
pub fn no_mix_ake(params: &ScenarioParams) -> Result<VerificationReport> {
    let tw = HahnTowers::new(params.p, params.witt_len, params.ram_depth)?;
    let mut report = VerificationReport::new("no-mix-ake", params.clone());
    let p = params.p;
    let field = tw.field().clone();

    report.claim(
        "construction-carried-over",
        "the towers are those of the fully tame counterexample",
        "Example no-mix-ake",
        || {
            let pi = tw.pi();
            ensure(
                pi.mul(&pi).agrees_with(&tw.p_elt().mul(&tw.a1())),
                "pi^2 = p * a_1",
            )?;
            ensure(tw.a1().residue()? == tw.alpha1(), "res(a_1) = alpha_1")?;
            Ok(format!(
                "same K, same compositions: v_1 = nu_1 o v_p and v_2 = nu_2 o v_p at \
                 ramification depth {}",
                tw.v1.ram_depth()
            ))
        },
    );

    report.assumed_claim(
        "compositions-tame",
        "both compositions are tame valuations on K",
        "Example no-mix-ake",
        "inherited from the fully tame counterexample; henselianity and algebraic \
         maximality assumed, descriptor legs (p-divisible value groups, perfect \
         residue fields) verified there",
    );

    report.claim(
        "residue-fields-isomorphic",
        "Kv_1 ~ Kv_2: the residue fields F_p((Delta_1)) and F_p((Delta_0)) are isomorphic",
        "Example no-mix-ake",
        || {
            let d1 = ConvexSubgroup::new(1);
            let d0 = ConvexSubgroup::new(0);
            let mut rng = DetRng::new(0xE51);
            let samples = 12;
            for _ in 0..samples {
                // Elements of F_p((Delta_1)) are series supported above
                // index 1; rho is the index shift by -1.
                let x = sample_hahn_series(&field, &mut rng, 2, 4);
                let y = sample_hahn_series(&field, &mut rng, 2, 4);
                ensure(
                    x.terms().all(|(g, _)| d1.contains(g)),
                    "sample lies in F_p((Delta_1))",
                )?;
                let rho_x = x.shift_indices(-1);
                ensure(
                    rho_x.terms().all(|(g, _)| d0.contains(g)),
                    "image lies in F_p((Delta_0))",
                )?;
                ensure(
                    x.add(&y).shift_indices(-1) == rho_x.add(&y.shift_indices(-1)),
                    "rho respects addition",
                )?;
                ensure(
                    x.mul(&y).shift_indices(-1) == rho_x.mul(&y.shift_indices(-1)),
                    "rho respects multiplication",
                )?;
                ensure(rho_x.shift_indices(1) == x, "rho is invertible")?;
                // rho intertwines the two residue maps on nu_i-units.
                let unit = x.add(&HahnSeries::t_basis(&field, 1));
                ensure(
                    unit.delta_residue(&d1)? == x,
                    "Delta_1-residue recovers the Delta_1-part",
                )?;
                ensure(
                    unit.shift_indices(-1).delta_residue(&d0)? == rho_x,
                    "rho commutes with the residue maps",
                )?;
            }
            Ok(format!(
                "the index shift by -1 carries F_p((Delta_1)) onto F_p((Delta_0)) as a \
                 field isomorphism commuting with the residue maps of nu_1 and nu_2; \
                 checked on {samples} random residue series"
            ))
        },
    );

    report.claim(
        "value-groups-elementarily-equivalent",
        "v_1 K ~ v_2 K as ordered groups, hence v_1 K = v_2 K elementarily",
        "Lemma comp-value-group",
        || {
            let g1 = tw.v1.composed_group(p);
            let g2 = tw.v2.composed_group(p);
            let mut rng = DetRng::new(0x150);
            let check = composed_group_shift_iso(&g1, &g2, -1, 100, &mut rng)?;
            Ok(format!(
                "(c, g) -> (c, shift_(-1) g) maps {g1} onto {g2} preserving order, \
                 addition, and divisibility; verified on {} generators and {} random \
                 elements; isomorphic ordered groups are elementarily equivalent",
                check.generators_checked, check.samples_checked
            ))
        },
    );

    report.claim(
        "valued-fields-not-equivalent",
        "(K, v_1) and (K, v_2) are not elementarily equivalent",
        "Example no-mix-ake",
        || {
            let w2 = check_distinguishing_witness(&tw.a1(), &tw.pi(), &tw.v2)?;
            let r1 = refute_distinguishing_sentence(&tw.a1(), &tw.v1)?;
            ensure(w2.accepted, "witness accepted under v_2")?;
            ensure(r1.refuted, "sentence refuted under v_1")?;
            Ok(format!("{SENTENCE} separates the two valued fields"))
        },
    );

    report.claim(
        "no-mixed-transfer",
        "residue fields equivalent + value groups equivalent does not imply the valued fields equivalent, even for tame fields",
        "Example no-mix-ake",
        || {
            let g1 = tw.v1.pointed_group(&tw.a1())?;
            let g2 = tw.v2.pointed_group(&tw.a1())?;
            ensure(
                !same_pointed_divisibility(&g1, &g2, &[2]),
                "the pointed value groups agree",
            )?;
            Ok(
                "Kv_1 ~ Kv_2 (isomorphic), v_1 K ~ v_2 K (isomorphic), yet (K, v_1) \
                 and (K, v_2) disagree on a single existential sentence: no \
                 Ax-Kochen/Ershov-style transfer with these two hypotheses alone can \
                 hold for compositions"
                    .into(),
            )
        },
    );

    report.claim(
        "pointed-value-groups-explain",
        "the failure is visible in the pointed value groups: (v_1 K, v_1(p)) and (v_2 K, v_2(p)) differ elementarily",
        "Remark pointed-val-gp",
        || {
            let g1 = tw.v1.pointed_group(&tw.a1())?;
            let g2 = tw.v2.pointed_group(&tw.a1())?;
            ensure(!g1.point_divisible_by(2), "v_1(p) not 2-divisible")?;
            ensure(g2.point_divisible_by(2), "v_2(p) 2-divisible")?;
            Ok(format!(
                "the sentence (exists y)(y + y = P) about the marked point P holds in \
                 (v_2 K, v_2(p)) with y = {} and fails in (v_1 K, v_1(p)); the group \
                 isomorphism cannot match the marked points",
                g2.divide_point(2).expect("divisible")
            ))
        },
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ClaimStatus;

    #[test]
    fn first_cake_verifies() {
        let report = first_cake_counterex(&ScenarioParams::default()).unwrap();
        assert!(report.all_checks_passed());
        assert!(report.claims.iter().all(|c| c.status == ClaimStatus::Verified));
    }

    #[test]
    fn tame_hahn_corollary_verifies() {
        let report = tame_hahn_corollary(&ScenarioParams::default()).unwrap();
        assert!(
            report.all_checks_passed(),
            "{:?}",
            report.failed_claims().collect::<Vec<_>>()
        );
        let assumed: Vec<_> = report
            .claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Assumed)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(assumed, ["hahn-valuation-tame", "coarsening-tame"]);
    }

    #[test]
    fn fully_tame_cake_verifies() {
        let report = fully_tame_cake(&ScenarioParams::default()).unwrap();
        assert!(report.all_checks_passed(), "{:?}", report.failed_claims().collect::<Vec<_>>());
    }

    #[test]
    fn no_mix_ake_verifies() {
        let report = no_mix_ake(&ScenarioParams::default()).unwrap();
        assert!(report.all_checks_passed(), "{:?}", report.failed_claims().collect::<Vec<_>>());
    }

    #[test]
    fn alternate_parameters_still_verify() {
        let params = ScenarioParams { p: 3, witt_len: 2, ram_depth: 1, ..Default::default() };
        assert!(first_cake_counterex(&params).unwrap().all_checks_passed());
        assert!(fully_tame_cake(&params).unwrap().all_checks_passed());
        assert!(no_mix_ake(&params).unwrap().all_checks_passed());
    }
}
