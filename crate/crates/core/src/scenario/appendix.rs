//! Same residue field, same pointed value group, inequivalent valued
//! fields: the quadratic-extension example and its reading through the
//! square-class invariant `Omega_2`.
//!
//! The construction lives one floor up from anything this crate can
//! build in full, so the scenarios verify exactly the finite content:
//! value-group descriptors, residue arithmetic in `F = F_p(t)^perf` and
//! its quadratic extensions, and the point count of `Y^2 = X^3 + 1` that
//! tells the two residue extensions apart. The genus argument and the
//! interpretability steps are recorded as assumptions next to the
//! computations that feed them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField, SquareTest};
use crate::finite_field::{FFElt, FiniteField};
use crate::oag::groups::{
    index_two_certificate, same_pointed_divisibility, GroupDesc, GroupElt, PCap, PointedGroup,
    RatSubgroup,
};
use crate::perfect::PerfBase;
use crate::rational::rat;
use crate::report::{ensure, VerificationReport};
use crate::scenario::ScenarioParams;
use crate::valuation::quad::{
    bounded_nonconstant_curve_search, omega_two, prime_field_curve_points,
    quadratic_residue_extension_check, square_in_sqrt_t_extension, QuadCtx,
};
use crate::DetRng;

/// The residue variable `t` of `F = F_p(t)^perf`.
fn t_var(field: &Arc<FiniteField>) -> PerfBase {
    PerfBase::var(&FFElt::from_u64(field, 0))
}

/// `t^3 + 1`, the right-hand side of the curve at `X = t`.
fn rhs_at_t(field: &Arc<FiniteField>) -> PerfBase {
    let t = t_var(field);
    t.pow_u(3).add(&t.one_like())
}

/// A random nonzero element of `F`, `p`-th roots included.
fn sample_perf_base(field: &Arc<FiniteField>, rng: &mut DetRng) -> PerfBase {
    let t = t_var(field);
    let poly = |rng: &mut DetRng| -> PerfBase {
        loop {
            let mut acc = PerfBase::constant(FFElt::from_u64(field, rng.below(field.p())));
            let mut power = t.clone();
            for _ in 0..2 {
                let c = PerfBase::constant(FFElt::from_u64(field, rng.below(field.p())));
                acc = acc.add(&power.mul(&c));
                power = power.mul(&t);
            }
            if !acc.is_zero() {
                return acc;
            }
        }
    };
    let mut x = poly(rng).div(&poly(rng)).expect("nonzero denominator");
    if rng.coin() {
        x = x.pth_root();
    }
    x
}

/// The curve `Y^2 = X^3 + 1` must be smooth, which rules out `p = 3`:
/// there `X^3 + 1 = (X + 1)^3` turns it into a rational cuspidal cubic,
/// `X = t - 1` solves it in `F(sqrt(t))` with `Y = t sqrt(t)`, and the
/// substitution `t -> t + 1` even identifies the two enriched residue
/// fields. The bounded curve search finds that solution, so the
/// scenarios refuse the parameter rather than emit failed claims.
fn reject_char_three(p: u64) -> Result<()> {
    if p == 3 {
        return Err(Error::InvalidParameter(
            "the quadratic-extension examples need p >= 5: in characteristic 3 the \
             curve Y^2 = X^3 + 1 degenerates (X^3 + 1 = (X + 1)^3), X = t - 1 is a \
             nonconstant solution in F(sqrt(t)), and the separation argument fails"
                .into(),
        ));
    }
    Ok(())
}

/// The smallest nonsquare scalar of `F_p`.
fn scalar_nonsquare(field: &Arc<FiniteField>) -> FFElt {
    field
        .elements()
        .into_iter()
        .find(|c| !c.is_zero() && !c.is_square().expect("nonzero"))
        .expect("odd prime fields have nonsquares")
}

/// The quadratic-extension pair `K = K_1(sqrt(p s))`,
/// `L = K_1(sqrt(p (s^3+1)))` over a tame base: equal residue fields,
/// equal pointed value groups, yet inequivalent valued fields.
pub fn non_ake(params: &ScenarioParams) -> Result<VerificationReport> {
    reject_char_three(params.p)?;
    let field = Arc::new(FiniteField::prime(params.p)?);
    let mut report = VerificationReport::new("appendix-non-ake", params.clone());
    let p = params.p;
    let t = t_var(&field);
    let rhs = rhs_at_t(&field);

    report.assumed_claim(
        "tame-base-field",
        "(K_1, v_1) is a henselian tame field of mixed characteristic with residue field F = F_p(t)^perf, value group (1/p^oo)Z, and v_1(p) = 1",
        "Appendix Example non-ake",
        "obtained from an algebraically maximal extension; not finitely checkable. \
         The unit s of the valuation ring has residue t. Every claim below is checked \
         on the data this pins down: value-group descriptors, the marked value of p, \
         and residue arithmetic in F and its quadratic extensions",
    );

    report.claim(
        "ramified-quadratic-extensions",
        "K = K_1(sqrt(p s)) and L = K_1(sqrt(p (s^3+1))) are ramified quadratic extensions with value group (1/(2 p^oo))Z",
        "Appendix Example non-ake",
        || {
            let base = GroupDesc::p_divisible_hull(p);
            ensure(
                !base.divisible(&GroupElt::rat(1, 1), 2),
                "v_1(p) = 1 is 2-divisible in (1/p^oo)Z",
            )?;
            ensure(!t.is_zero(), "res(s) = t vanishes")?;
            ensure(!rhs.is_zero(), "res(s^3+1) = t^3+1 vanishes")?;
            let cert = index_two_certificate(
                &RatSubgroup::new(p, false, PCap::Infinite),
                &RatSubgroup::new(p, true, PCap::Infinite),
                &[
                    rat(0, 1),
                    rat(1, 1),
                    rat(1, 2),
                    rat(1, p as i64),
                    rat(1, 2 * p as i64),
                    rat(3, 2 * (p * p) as i64),
                    rat(-5, 2),
                    rat(7, 1),
                ],
            )?;
            Ok(format!(
                "s and s^3+1 are units (their residues t and t^3+1 are nonzero), so \
                 v_1(p s) = v_1(p (s^3+1)) = v_1(p) = 1, which is not 2-divisible in \
                 (1/p^oo)Z; a square root forces value 1/2 and [K : K_1] = [L : K_1] = \
                 2 with value group (1/(2 p^oo))Z - index two over (1/p^oo)Z, \
                 generator {}, {} samples; e = 2 forces f = 1",
                cert.generator, cert.samples_checked
            ))
        },
    );

    report.claim(
        "pointed-value-groups-agree",
        "(vK, v(p)) = ((1/(2 p^oo))Z, 1) = (wL, w(p))",
        "Appendix Example non-ake",
        || {
            let gk = PointedGroup::new(GroupDesc::half_p_divisible(p), GroupElt::rat(1, 1));
            let gl = PointedGroup::new(GroupDesc::half_p_divisible(p), GroupElt::rat(1, 1));
            ensure(
                same_pointed_divisibility(&gk, &gl, &[2, p, 2 * p]),
                "pointed divisibility profiles differ",
            )?;
            Ok(format!(
                "both sides carry the descriptor {} with marked point v(p) = 1; the \
                 structures are literally equal, and the divisibility profile of the \
                 point was compared at the moduli 2, {p}, {}",
                GroupDesc::half_p_divisible(p),
                2 * p
            ))
        },
    );

    report.claim(
        "residue-fields-agree",
        "Kv = F = Lw: the residue field does not move in the ramified quadratic steps",
        "Appendix Example non-ake",
        || {
            ensure(!t.is_square()?, "t is a square in F")?;
            ensure(!rhs.is_square()?, "t^3+1 is a square in F")?;
            Ok(
                "e = 2 and e f <= [K : K_1] = 2 force f = 1 on each side, so both \
                 residue fields stay F = F_p(t)^perf; the radicand residues t and \
                 t^3+1 already lie in F (and are nonsquares there, which claim \
                 residue-extensions-identified uses)"
                    .into(),
            )
        },
    );

    report.claim(
        "unramified-degree-two-step",
        "K' = K(sqrt(p)) and L' = L(sqrt(p)) extend the residue fields instead: sqrt(t) = res(sqrt(s)) in K'v', sqrt(t^3+1) = res(sqrt(s^3+1)) in L'w'",
        "Appendix Example non-ake",
        || {
            let group = GroupDesc::half_p_divisible(p);
            ensure(
                group.contains(&GroupElt::rat(1, 2)),
                "v(sqrt(p)) = 1/2 already lies in vK",
            )?;
            ensure(!t.is_square()?, "sqrt(t) already lies in F")?;
            Ok(
                "v'(sqrt(p)) = 1/2 lies in vK = (1/(2 p^oo))Z, so e(K'/K) = 1 and the \
                 fundamental equality forces f(K'/K) = 2; concretely sqrt(s) = \
                 sqrt(p s)/sqrt(p) is a unit of K' whose residue squares to t, so \
                 sqrt(t) lies in K'v' but not in F; symmetrically sqrt(s^3+1) = \
                 sqrt(p (s^3+1))/sqrt(p) gives sqrt(t^3+1) in L'w'"
                    .into(),
            )
        },
    );

    report.claim(
        "residue-extensions-identified",
        "K'v' = F(sqrt(t)) and L'w' = F(sqrt(t^3+1)), both quadratic over F",
        "Appendix Example non-ake",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            let ext_l = QuadCtx::new(rhs.clone())?;
            ensure(ext_k.degree() == 2 && ext_l.degree() == 2, "extensions are quadratic")?;
            ensure(ext_k.contains_square_root_of(&t)?, "sqrt(t) lies in F(sqrt(t))")?;
            ensure(
                ext_l.contains_square_root_of(&rhs)?,
                "sqrt(t^3+1) lies in F(sqrt(t^3+1))",
            )?;
            Ok(
                "X^2 - t and X^2 - (t^3+1) are irreducible over F (both radicands are \
                 nonsquares by exact factorization), so adjoining the residues of \
                 sqrt(s) and sqrt(s^3+1) yields exactly the quadratic extensions \
                 F(sqrt(t)) and F(sqrt(t^3+1)), matching f = 2"
                    .into(),
            )
        },
    );

    report.claim(
        "fundamental-equality-bookkeeping",
        "[K' : K_1] = 4 = e * f with e = 2 and f = 2",
        "Appendix Example non-ake",
        || {
            let e_cert = index_two_certificate(
                &RatSubgroup::new(p, false, PCap::Infinite),
                &RatSubgroup::new(p, true, PCap::Infinite),
                &[rat(0, 1), rat(1, 2), rat(1, p as i64), rat(1, 2 * p as i64)],
            )?;
            let f = QuadCtx::new(t.clone())?.degree();
            ensure(2 * f == 4, "e * f = [K' : K_1]")?;
            Ok(format!(
                "e(K'/K_1) = 2 (value-group index two, generator {}, {} samples) and \
                 f(K'/K_1) = {f} (quadratic residue extension); 2 * {f} = 4 = \
                 [K' : K_1]; equality rather than inequality uses defectlessness of \
                 tame extensions, assumed with the base field",
                e_cert.generator, e_cert.samples_checked
            ))
        },
    );

    report.claim(
        "curve-point-on-L-side",
        "(t, sqrt(t^3+1)) solves Y^2 = X^3 + 1 in L'w'",
        "Appendix Example non-ake",
        || {
            let check = quadratic_residue_extension_check(&rhs, None)?;
            ensure(check.curve_point_solves, "the curve point fails the equation")?;
            ensure(
                check.rhs_is_square_in_ext,
                "t^3+1 is not a square in L'w'",
            )?;
            Ok(
                "in L'w' = F(sqrt(t^3+1)) the pair X = t, Y = sqrt(t^3+1) satisfies \
                 Y^2 = X^3 + 1 exactly; a solution with a transcendental coordinate"
                    .into(),
            )
        },
    );

    report.claim(
        "rhs-nonsquare-on-K-side",
        "t^3+1 is not a square in K'v' = F(sqrt(t)), so X = t solves nothing there",
        "Appendix Example non-ake",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            ensure(
                !ext_k.contains_square_root_of(&rhs)?,
                "t^3+1 is a square in F(sqrt(t))",
            )?;
            let via_subst = square_in_sqrt_t_extension(&rhs)?;
            ensure(!via_subst, "the substitution route disagrees")?;
            Ok(
                "two independent routes agree: (a) norm dichotomy - neither t^3+1 nor \
                 t (t^3+1) is a square in F; (b) substituting t = u^2 identifies \
                 F(sqrt(t)) with F_p(u)^perf and t^3+1 with u^6+1, which is not a \
                 square there"
                    .into(),
            )
        },
    );

    let points = prime_field_curve_points(&field);
    let count = points.len();

    report.claim(
        "prime-field-points",
        "the affine F_p-points of Y^2 = X^3 + 1 solve the equation in both residue extensions",
        "Appendix Example non-ake",
        || {
            let listing = points
                .iter()
                .map(|(x, y)| format!("({x}, {y})"))
                .collect::<Vec<_>>()
                .join(", ");
            for (x, y) in &points {
                let xf = PerfBase::constant(x.clone());
                let yf = PerfBase::constant(y.clone());
                ensure(
                    yf.square() == xf.pow_u(3).add(&t.one_like()),
                    "listed point fails the equation",
                )?;
            }
            Ok(format!(
                "exhaustive scan over F_{p} x F_{p}: the affine points are {listing} \
                 ({count} in total); each solves the equation in F and hence in both \
                 F(sqrt(t)) and F(sqrt(t^3+1))"
            ))
        },
    );

    report.claim(
        "extra-solution-on-L-side",
        "L'w' has at least one more affine point than the F_p-count, a first-order property",
        "Appendix Example non-ake",
        || {
            for (x, _) in &points {
                ensure(
                    !t.sub(&PerfBase::constant(x.clone())).is_zero(),
                    "the transcendental point collides with an F_p-point",
                )?;
            }
            Ok(format!(
                "(t, sqrt(t^3+1)) has X-coordinate t, distinct from every scalar, so \
                 L'w' has at least {} affine points; 'at least n affine points' is an \
                 existential first-order sentence in the field language",
                count + 1
            ))
        },
    );

    report.bounded_claim(
        "no-extra-solution-on-K-side",
        "no solution in K'v' = F(sqrt(t)) has a nonconstant X-coordinate, exhaustively up to the height bound",
        "Appendix Example non-ake",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            let outcome = bounded_nonconstant_curve_search(&ext_k, params.search_bound)?;
            ensure(outcome.square_hits == 0, "a nonconstant solution exists within the bound")?;
            Ok(format!(
                "exhaustive over X = f/g with f, g in F_p[t], f nonconstant of degree \
                 <= {}, g monic of degree <= {}; deeper perfection levels reduce to \
                 depth 0 by Frobenius twisting; {} candidates checked, none makes \
                 X^3 + 1 a square in F(sqrt(t))",
                params.search_bound, params.search_bound, outcome.candidates_checked
            ))
        },
    );

    report.assumed_claim(
        "genus-argument",
        "every solution of Y^2 = X^3 + 1 in K'v' has constant coordinates",
        "Appendix Example non-ake",
        "the algebraic curve described by Y^2 = X^3 + 1 has genus 1, so it admits no \
         nonconstant map from a rational curve; a solution with nonconstant X over \
         F(sqrt(t)) = F_p(u)^perf (u^2 = t) would provide one; the genus computation \
         is not reproduced here - the bounded search above is its finite stand-in",
    );

    report.bounded_claim(
        "residue-fields-not-equivalent",
        "K'v' and L'w' are not elementarily equivalent: an affine point count separates them",
        "Appendix Example non-ake",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            ensure(!ext_k.contains_square_root_of(&rhs)?, "K'-side gains the point after all")?;
            ensure(
                quadratic_residue_extension_check(&rhs, None)?.curve_point_solves,
                "L'-side point fails",
            )?;
            Ok(format!(
                "the sentence 'Y^2 = X^3 + 1 has at least {} affine points' holds in \
                 L'w' (verified outright) and fails in K'v' (the {} F_p-points are \
                 everything, by the genus argument; finitely certified up to height \
                 {})",
                count + 1,
                count,
                params.search_bound
            ))
        },
    );

    report.claim(
        "no-new-constants",
        "the quadratic extensions add no new scalar constants: a nonsquare of F_p stays a nonsquare",
        "Appendix Example non-ake",
        || {
            let n = scalar_nonsquare(&field);
            let nf = PerfBase::constant(n.clone());
            ensure(
                !QuadCtx::new(t.clone())?.contains_square_root_of(&nf)?,
                "F(sqrt(t)) swallows sqrt of a scalar nonsquare",
            )?;
            ensure(
                !QuadCtx::new(rhs.clone())?.contains_square_root_of(&nf)?,
                "F(sqrt(t^3+1)) swallows sqrt of a scalar nonsquare",
            )?;
            Ok(format!(
                "the scalar nonsquare {n} of F_{p} has no square root in either \
                 F(sqrt(t)) or F(sqrt(t^3+1)): the norm dichotomy fails on both \
                 branches; in particular the quadratic extension of F_p does not embed"
            ))
        },
    );

    report.assumed_claim(
        "same-algebraic-part",
        "K and L have the same algebraic part K_0",
        "Appendix Example non-ake",
        "algebraic closures inside the two fields are not finitely enumerable; the \
         verified claim no-new-constants supports this at the quadratic level: \
         adjoining sqrt(p s) or sqrt(p (s^3+1)) does not absorb the quadratic \
         extension of the constants",
    );

    report.assumed_claim(
        "interpretation-step",
        "(K', v') is interpretable in (K, v), and (L', w') in (L, w)",
        "Appendix Example non-ake",
        "K' = K(sqrt(p)) is interpreted on pairs of K with multiplication twisted by \
         p, a definable quadratic extension; the valuation extends definably since \
         henselianity makes the extension unique; the model-theoretic step is \
         recorded, not rechecked",
    );

    report.bounded_claim(
        "valued-fields-not-equivalent",
        "(K, v) and (L, w) are not elementarily equivalent, although residue fields and pointed value groups agree",
        "Appendix Example non-ake",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            ensure(!ext_k.contains_square_root_of(&rhs)?, "separation collapses")?;
            Ok(format!(
                "elementary equivalence of (K, v) and (L, w) would transfer to the \
                 interpreted residue extensions K'v' and L'w', which the point-count \
                 sentence separates; combined with claims pointed-value-groups-agree \
                 and residue-fields-agree this refutes transfer principles that look \
                 only at residue field and (pointed) value group; rests on the genus \
                 and interpretation steps, finitely certified up to height {}",
                params.search_bound
            ))
        },
    );

    Ok(report)
}

/// The square-class invariant `Omega_2`: for a 2-divisible value of `p`,
/// the class of `res(a^2/p)` in `Kv` modulo squares does not depend on
/// the choice of `a` with `2 v(a) = v(p)`; it distinguishes `K` and `L`.
pub fn omega_two_remark(params: &ScenarioParams) -> Result<VerificationReport> {
    reject_char_three(params.p)?;
    let field = Arc::new(FiniteField::prime(params.p)?);
    let mut report = VerificationReport::new("omega-two-remark", params.clone());
    let p = params.p;
    let t = t_var(&field);
    let rhs = rhs_at_t(&field);

    report.claim(
        "omega-two-of-K",
        "Omega_2(K, v) is the square class of t in Kv = F",
        "Appendix Remark alt-explanation",
        || {
            let class = omega_two(&rat(0, 1), &t)?;
            ensure(class.representative() == &t, "representative is t")?;
            ensure(
                GroupDesc::half_p_divisible(p)
                    .divide_witness(&GroupElt::rat(1, 1), 2)
                    == Some(GroupElt::rat(1, 2)),
                "v(p) = 1 is 2-divisible in vK",
            )?;
            ensure(
                omega_two(&rat(1, 2), &t).is_err(),
                "a non-unit residue datum was accepted",
            )?;
            Ok(
                "a = sqrt(p s) satisfies 2 v(a) = 1 = v(p); the unit a^2/p = s has \
                 residue t, so Omega_2(K, v) = t (F^x)^2; the constructor rejects \
                 non-unit data, and v(p) is indeed 2-divisible in (1/(2 p^oo))Z"
                    .into(),
            )
        },
    );

    report.claim(
        "omega-two-of-L",
        "Omega_2(L, w) is the square class of t^3+1",
        "Appendix Remark alt-explanation",
        || {
            let class = omega_two(&rat(0, 1), &rhs)?;
            ensure(class.representative() == &rhs, "representative is t^3+1")?;
            Ok(
                "b = sqrt(p (s^3+1)) satisfies 2 w(b) = w(p); the unit b^2/p = s^3+1 \
                 has residue t^3+1, so Omega_2(L, w) = (t^3+1) (F^x)^2"
                    .into(),
            )
        },
    );

    report.claim(
        "classes-distinct",
        "the two classes differ: t (F^x)^2 /= (t^3+1) (F^x)^2",
        "Appendix Remark alt-explanation",
        || {
            let ck = omega_two(&rat(0, 1), &t)?;
            let cl = omega_two(&rat(0, 1), &rhs)?;
            ensure(!ck.same_class(&cl)?, "the classes coincide")?;
            ensure(!t.mul(&rhs).is_square()?, "t (t^3+1) is a square")?;
            Ok(
                "t / (t^3+1) and t (t^3+1) are nonsquares in F: t occurs with odd \
                 multiplicity in the exact factorization; so the square classes of t \
                 and t^3+1 are distinct"
                    .into(),
            )
        },
    );

    report.claim(
        "class-well-defined",
        "the class is invariant under changing the witness a by a unit: multiplying the residue by squares does not move it",
        "Appendix Remark alt-explanation",
        || {
            let base = omega_two(&rat(0, 1), &t)?;
            let mut rng = DetRng::new(0x03E6);
            let samples = 24;
            for _ in 0..samples {
                let u = sample_perf_base(&field, &mut rng);
                let moved = omega_two(&rat(0, 1), &t.mul(&u.square()))?;
                ensure(base.same_class(&moved)?, "multiplying by u^2 moved the class")?;
            }
            Ok(format!(
                "replacing a by a u rescales res(a^2/p) by the square res(u)^2; \
                 checked for {samples} random nonzero u in F (p-th roots included): \
                 the class of t u^2 always equals the class of t"
            ))
        },
    );

    report.claim(
        "interpretation-well-defined",
        "the quadratic extension F(sqrt(r)) interpreted from the class does not depend on the representative r",
        "Appendix Remark alt-explanation",
        || {
            let mut rng = DetRng::new(0x03E7);
            let samples = 8;
            let ext_t = QuadCtx::new(t.clone())?;
            for _ in 0..samples {
                let u = sample_perf_base(&field, &mut rng);
                let ext_tu = QuadCtx::new(t.mul(&u.square()))?;
                for _ in 0..4 {
                    let c = sample_perf_base(&field, &mut rng);
                    ensure(
                        ext_t.contains_square_root_of(&c)?
                            == ext_tu.contains_square_root_of(&c)?,
                        "square detection differs between representatives",
                    )?;
                }
            }
            Ok(format!(
                "for representatives r = t and r' = t u^2 the map sqrt(r') = u sqrt(r) \
                 identifies F(sqrt(r)) with F(sqrt(r')); checked extensionally: both \
                 contain square roots of exactly the same elements, on {samples} random \
                 u with 4 probes each"
            ))
        },
    );

    report.bounded_claim(
        "enriched-residue-fields-differ",
        "(Kv, Omega_2(K, v)) and (Lw, Omega_2(L, w)) are not elementarily equivalent",
        "Appendix Remark alt-explanation",
        || {
            let ext_k = QuadCtx::new(t.clone())?;
            let ext_l = QuadCtx::new(rhs.clone())?;
            ensure(!ext_k.contains_square_root_of(&rhs)?, "K-side square after all")?;
            ensure(ext_l.contains_square_root_of(&rhs)?, "L-side square missing")?;
            Ok(
                "from (F, Omega_2) one interprets the quadratic extension generated by \
                 the class (well-defined by the previous claim); the interpreted \
                 extensions are F(sqrt(t)) and F(sqrt(t^3+1)), which the affine point \
                 count of Y^2 = X^3 + 1 separates - verified on the L-side, bounded on \
                 the K-side by the curve search of the companion scenario"
                    .into(),
            )
        },
    );

    report.assumed_claim(
        "omega-two-from-rv",
        "Omega_2 is determined by the leading-term structure (RV_K, p)",
        "Appendix Remark alt-explanation",
        "a = sqrt(p s) contributes rv(a), and res(a^2/p) modulo squares is computed \
         from rv(a)^2 / rv(p) inside RV; the definability bookkeeping is \
         model-theoretic and recorded as an assumption",
    );

    report.assumed_claim(
        "rv-structures-differ",
        "(RV_K, p) and (RV_L, p) are not elementarily equivalent",
        "Appendix Remark alt-explanation",
        "follows from the verified distinctness of the Omega_2 classes through the \
         interpretation above: the enriched residue fields differ, so the leading-term \
         structures with the marked element p must differ as well",
    );

    Ok(report)
}
