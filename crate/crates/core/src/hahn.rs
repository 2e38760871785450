//! Truncated Hahn series over the lexicographic value group.
//!
//! An element of `F_q((Gamma))` is represented by its terms below a
//! precision cutoff: a finite map from exponents in `Gamma` to nonzero
//! coefficients, plus the cutoff itself (a group element, or infinity for
//! exact values such as monomials). All arithmetic tracks precision with
//! the min rule: addition keeps `min(P_a, P_b)`, multiplication keeps
//! `min(P_a + v(b), P_b + v(a))` where `v` is the leading exponent (the
//! valuation), lower-bounded by the operand's own cutoff when no term is
//! visible. Inversion and square roots expand geometric/binomial series to
//! a caller-chosen number of terms and cap the claimed precision by the
//! truncation tail, so a result never pretends to know more than it does.
//!
//! Squareness is decidable from the leading term alone: in odd
//! characteristic with `Gamma` `p`-divisible, the `1 + (higher terms)`
//! factor is a square by the binomial series (whose coefficients have only
//! powers of two in their denominators, hence reduce mod `p`), so `x` is a
//! square iff its valuation is 2-divisible in `Gamma` and its leading
//! coefficient is a square in `F_q`. [`HahnSeries::sqrt`] produces the
//! certificate root; [`HahnSeries::shift_indices`] is the index-shift
//! automorphism used to move `t^{e_1}` to `t^{e_2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::One;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField, SquareTest};
use crate::finite_field::{FFElt, FiniteField};
use crate::oag::parse::parse_oag;
use crate::oag::{ConvexSubgroup, OagElement};
use crate::rational::{int, Rat};

/// Default series length for trait-level inversion, where no explicit term
/// count can be passed. Precision tracking keeps the result honest
/// regardless of the value chosen here.
pub const DEFAULT_SERIES_TERMS: usize = 16;

/// A precision cutoff: all exponents strictly below it are known.
#[derive(Clone, PartialEq, Eq)]
pub enum Cutoff {
    Finite(OagElement),
    Infinite,
}

impl Cutoff {
    pub fn min(a: &Cutoff, b: &Cutoff) -> Cutoff {
        match (a, b) {
            (Cutoff::Infinite, other) | (other, Cutoff::Infinite) => other.clone(),
            (Cutoff::Finite(x), Cutoff::Finite(y)) => {
                if x.lex_cmp(y).is_le() {
                    a.clone()
                } else {
                    b.clone()
                }
            }
        }
    }

    /// Whether an exponent lies strictly below the cutoff.
    pub fn admits(&self, g: &OagElement) -> bool {
        match self {
            Cutoff::Infinite => true,
            Cutoff::Finite(bound) => g.lex_cmp(bound).is_lt(),
        }
    }

    pub fn translate(&self, g: &OagElement) -> Cutoff {
        match self {
            Cutoff::Infinite => Cutoff::Infinite,
            Cutoff::Finite(bound) => Cutoff::Finite(bound.add(g)),
        }
    }

    /// Adds two cutoffs viewed as lower bounds (used by the product rule).
    pub fn plus(&self, other: &Cutoff) -> Cutoff {
        match (self, other) {
            (Cutoff::Finite(a), Cutoff::Finite(b)) => Cutoff::Finite(a.add(b)),
            _ => Cutoff::Infinite,
        }
    }

    fn map<F: FnOnce(&OagElement) -> OagElement>(&self, f: F) -> Cutoff {
        match self {
            Cutoff::Infinite => Cutoff::Infinite,
            Cutoff::Finite(g) => Cutoff::Finite(f(g)),
        }
    }
}

impl fmt::Debug for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Infinite => write!(f, "oo"),
            Cutoff::Finite(g) => write!(f, "{g}"),
        }
    }
}

/// A truncated Hahn series over `F_q((Gamma))`.
#[derive(Clone, PartialEq, Eq)]
pub struct HahnSeries {
    field: Arc<FiniteField>,
    terms: BTreeMap<OagElement, FFElt>,
    prec: Cutoff,
}

impl HahnSeries {
    /// The exact zero series.
    pub fn zero(field: &Arc<FiniteField>) -> Self {
        HahnSeries { field: field.clone(), terms: BTreeMap::new(), prec: Cutoff::Infinite }
    }

    /// An exact monomial `c * t^g`.
    pub fn monomial(coeff: FFElt, exponent: OagElement) -> Self {
        let field = coeff.field().clone();
        assert_eq!(
            exponent.p(),
            field.p(),
            "exponent group prime must match the coefficient characteristic"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        HahnSeries { field, terms, prec: Cutoff::Infinite }
    }

    /// The exact monomial `t^{e_i}`.
    pub fn t_basis(field: &Arc<FiniteField>, i: i64) -> Self {
        let one = FFElt::from_u64(field, 1);
        Self::monomial(one, OagElement::basis(field.p(), i))
    }

    pub fn constant(field: &Arc<FiniteField>, c: i64) -> Self {
        Self::monomial(FFElt::from_i64(field, c), OagElement::zero(field.p()))
    }

    /// Builds a series from term pairs, merging duplicates and applying the
    /// cutoff.
    pub fn from_terms<I>(field: &Arc<FiniteField>, pairs: I, prec: Cutoff) -> Self
    where
        I: IntoIterator<Item = (OagElement, FFElt)>,
    {
        let mut terms: BTreeMap<OagElement, FFElt> = BTreeMap::new();
        for (g, c) in pairs {
            assert_eq!(g.p(), field.p(), "exponent from the wrong group");
            match terms.remove(&g) {
                Some(old) => {
                    let merged = old.add(&c);
                    if !merged.is_zero() {
                        terms.insert(g, merged);
                    }
                }
                None => {
                    if !c.is_zero() {
                        terms.insert(g, c);
                    }
                }
            }
        }
        let mut out = HahnSeries { field: field.clone(), terms, prec };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let prec = self.prec.clone();
        self.terms.retain(|g, c| !c.is_zero() && prec.admits(g));
    }

    pub fn coeff_field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn precision(&self) -> &Cutoff {
        &self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OagElement, &FFElt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Whether the series is exactly the zero element (no terms, infinite
    /// precision) as opposed to merely zero to its precision.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec == Cutoff::Infinite
    }

    /// Forgets information above `prec`.
    pub fn truncate(&self, prec: Cutoff) -> Self {
        let mut out = self.clone();
        out.prec = Cutoff::min(&self.prec, &prec);
        out.normalize();
        out
    }

    /// The valuation (leading exponent). Errors on the exact zero series
    /// and on series with no visible term below a finite cutoff.
    pub fn valuation(&self) -> Result<OagElement> {
        match (self.terms.keys().next(), &self.prec) {
            (Some(g), _) => Ok(g.clone()),
            (None, Cutoff::Infinite) => Err(Error::DivisionByZero),
            (None, Cutoff::Finite(bound)) => Err(Error::InsufficientPrecision(format!(
                "series is zero below its cutoff {bound}; valuation unknown"
            ))),
        }
    }

    pub fn leading_term(&self) -> Result<(OagElement, FFElt)> {
        let g = self.valuation()?;
        let c = self.terms.get(&g).expect("valuation returned a key").clone();
        Ok((g, c))
    }

    /// A lower bound for the valuation usable in precision bookkeeping:
    /// the leading exponent if visible, else the cutoff itself.
    fn val_bound(&self) -> Cutoff {
        match self.terms.keys().next() {
            Some(g) => Cutoff::Finite(g.clone()),
            None => self.prec.clone(),
        }
    }

    /// The valuation after coarsening by the convex subgroup `delta`, i.e.
    /// the image of the valuation in `Gamma / delta`.
    pub fn coarsened_valuation(&self, delta: &ConvexSubgroup) -> Result<OagElement> {
        Ok(delta.quotient_map(&self.valuation()?))
    }

    /// The residue of a `delta`-coarsening unit: keeps exactly the terms
    /// supported inside `delta`, which form the residue series in
    /// `F_q((delta))`. Requires every visible exponent to be nonnegative
    /// in the quotient order.
    pub fn delta_residue(&self, delta: &ConvexSubgroup) -> Result<HahnSeries> {
        let zero = OagElement::zero(self.field.p());
        for g in self.terms.keys() {
            if delta.quotient_map(g).lex_cmp(&zero).is_lt() {
                return Err(Error::NotAUnit(format!(
                    "exponent {g} is negative modulo Delta_{}; not integral for the coarsening",
                    delta.threshold
                )));
            }
        }
        let terms = self
            .terms
            .iter()
            .filter(|(g, _)| delta.contains(g))
            .map(|(g, c)| (g.clone(), c.clone()));
        Ok(HahnSeries::from_terms(&self.field, terms, self.prec.clone()))
    }

    /// The index-shift automorphism: exponents move by `e_i -> e_{i+k}`,
    /// coefficients are fixed. This is an order-preserving field
    /// automorphism of the full Hahn field.
    pub fn shift_indices(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| (g.shift(k), c.clone()))
            .collect::<Vec<_>>();
        HahnSeries::from_terms(&self.field, terms, self.prec.map(|g| g.shift(k)))
    }

    /// Series inverse expanded to `terms_requested` geometric terms. The
    /// claimed precision is capped by the size of the first dropped tail
    /// term, so shorter expansions yield coarser cutoffs, never wrong ones.
    pub fn inv_terms(&self, terms_requested: usize) -> Result<HahnSeries> {
        assert!(terms_requested >= 1, "at least one series term is required");
        let (lead_exp, lead_coeff) = self.leading_term()?;
        let lead_inv = Self::monomial(lead_coeff.inv()?, lead_exp.neg());
        // self = lead * (1 - u) with v(u) > 0.
        let u = {
            let mut tail = self.clone();
            tail.terms.remove(&lead_exp);
            tail.neg().mul(&lead_inv)
        };
        if u.terms.is_empty() && u.prec == Cutoff::Infinite {
            return Ok(lead_inv);
        }
        let mut geo = self.one_like();
        let mut power = self.one_like();
        for _ in 1..terms_requested {
            power = power.mul(&u);
            geo = geo.add(&power);
        }
        // (1 - u)^{-1} differs from the partial sum by u^k * (1-u)^{-1},
        // whose valuation is at least k * v(u).
        let tail_bound = tail_cutoff(&u.val_bound(), terms_requested);
        geo.prec = Cutoff::min(&geo.prec, &tail_bound);
        geo.normalize();
        Ok(geo.mul(&lead_inv))
    }

    /// The square root, when one exists, expanded to `terms_requested`
    /// binomial terms: the leading-term certificate (2-divisibility witness
    /// for the exponent, square root of the coefficient) plus the series
    /// `(1+u)^{1/2}`. Binomial coefficients of `1/2` carry only powers of
    /// two in their denominators, so they reduce into odd characteristic.
    pub fn sqrt(&self, terms_requested: usize) -> Result<HahnSeries> {
        assert!(terms_requested >= 1, "at least one series term is required");
        if !self.is_square()? {
            return Err(Error::NotAUnit(format!("{self} is not a square")));
        }
        let (lead_exp, lead_coeff) = self.leading_term()?;
        let half_exp = lead_exp
            .divide_witness(2)
            .expect("is_square checked 2-divisibility");
        let root_lead = Self::monomial(lead_coeff.sqrt()?, half_exp);
        let u = {
            let mut tail = self.clone();
            tail.terms.remove(&lead_exp);
            tail.mul(&Self::monomial(lead_coeff.inv()?, lead_exp.neg()))
        };
        if u.terms.is_empty() && u.prec == Cutoff::Infinite {
            return Ok(root_lead);
        }
        let mut series = self.one_like();
        let mut power = self.one_like();
        let mut binom = Rat::one();
        for j in 1..terms_requested {
            // binom(1/2, j) = binom(1/2, j-1) * (1/2 - (j-1)) / j, exactly.
            let j_rat = Rat::from(int(j as i64));
            binom = binom * (Rat::new(int(1), int(2)) - (j_rat.clone() - Rat::one())) / j_rat;
            power = power.mul(&u);
            let c = self.scalar_from_rat(&binom);
            series = series.add(&power.mul(&Self::monomial(c, OagElement::zero(self.field.p()))));
        }
        let tail_bound = tail_cutoff(&u.val_bound(), terms_requested);
        series.prec = Cutoff::min(&series.prec, &tail_bound);
        series.normalize();
        Ok(series.mul(&root_lead))
    }

    /// Reduces an exact rational with odd denominator into the prime
    /// subfield.
    fn scalar_from_rat(&self, r: &Rat) -> FFElt {
        let p = int(self.field.p() as i64);
        let num = FFElt::from_i64(&self.field, ((r.numer() % &p + &p) % &p).try_into().unwrap());
        let den = FFElt::from_i64(&self.field, ((r.denom() % &p + &p) % &p).try_into().unwrap());
        num.div(&den).expect("denominator prime to p")
    }

    /// Structural agreement of two series up to their common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let common = Cutoff::min(&self.prec, &other.prec);
        self.truncate(common.clone()).terms == other.truncate(common).terms
    }
}

/// The valuation bound of a dropped series tail `u^n * (bounded)`: `n`
/// times the valuation bound of `u`.
fn tail_cutoff(bound: &Cutoff, n: usize) -> Cutoff {
    match bound {
        Cutoff::Infinite => Cutoff::Infinite,
        Cutoff::Finite(g) => Cutoff::Finite(g.scale(&int(n as i64))),
    }
}

impl FieldElement for HahnSeries {
    fn zero_like(&self) -> Self {
        HahnSeries::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        HahnSeries::constant(&self.field, 1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.field, rhs.field, "mixing Hahn fields");
        let prec = Cutoff::min(&self.prec, &rhs.prec);
        let pairs = self
            .terms
            .iter()
            .chain(rhs.terms.iter())
            .map(|(g, c)| (g.clone(), c.clone()));
        HahnSeries::from_terms(&self.field, pairs, prec)
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (g.clone(), c.neg())).collect();
        HahnSeries { field: self.field.clone(), terms, prec: self.prec.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.field, rhs.field, "mixing Hahn fields");
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return HahnSeries::zero(&self.field);
        }
        let prec = Cutoff::min(
            &self.prec.plus(&rhs.val_bound()),
            &rhs.prec.plus(&self.val_bound()),
        );
        let mut pairs = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (g1, c1) in &self.terms {
            for (g2, c2) in &rhs.terms {
                pairs.push((g1.add(g2), c1.mul(c2)));
            }
        }
        HahnSeries::from_terms(&self.field, pairs, prec)
    }

    fn inv(&self) -> Result<Self> {
        self.inv_terms(DEFAULT_SERIES_TERMS)
    }

    fn characteristic(&self) -> u64 {
        self.field.p()
    }
}

impl PerfectField for HahnSeries {
    fn frobenius(&self) -> Self {
        let p = int(self.field.p() as i64);
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(g, c)| (g.scale(&p), c.frobenius()))
            .collect();
        HahnSeries::from_terms(&self.field, terms, self.prec.map(|g| g.scale(&p)))
    }

    fn pth_root(&self) -> Self {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(g, c)| (g.div_p(), c.pth_root()))
            .collect();
        HahnSeries::from_terms(&self.field, terms, self.prec.map(|g| g.div_p()))
    }
}

impl SquareTest for HahnSeries {
    fn is_square(&self) -> Result<bool> {
        if self.is_exact_zero() {
            return Err(Error::ZeroInput(
                "square classes are classes of nonzero elements",
            ));
        }
        let (lead_exp, lead_coeff) = self.leading_term()?;
        Ok(lead_exp.divisible_by(2) && lead_coeff.is_square()?)
    }
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (n, (g, c)) in self.terms.iter().enumerate() {
                if n > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "{c}*t^[{g}]")?;
            }
        }
        if let Cutoff::Finite(bound) = &self.prec {
            write!(f, " (prec {bound})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HahnSeries({self})")
    }
}

/// Parses the series syntax `3*t^[e1] + 1*t^[2*e2] (prec e5)`. Exponents
/// use the group-element grammar; coefficients are integers reduced into
/// the prime subfield; the precision suffix is optional (absent means
/// exact).
pub fn parse_hahn(field: &Arc<FiniteField>, input: &str) -> Result<HahnSeries> {
    let input = input.trim();
    let (body, prec) = match input.rfind("(prec ") {
        Some(at) => {
            let tail = &input[at..];
            let inner = tail
                .strip_prefix("(prec ")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("malformed precision suffix {tail}")))?;
            (
                input[..at].trim(),
                Cutoff::Finite(parse_oag(field.p(), inner)?),
            )
        }
        None => (input, Cutoff::Infinite),
    };
    if body.is_empty() {
        return Err(Error::Parse("empty series expression".into()));
    }
    let mut terms = Vec::new();
    for piece in split_terms(body)? {
        let piece = piece.trim();
        if piece == "0" {
            continue;
        }
        let (coeff_str, exp_str) = match piece.split_once("*t^[") {
            Some((c, rest)) => {
                let exp = rest.strip_suffix(']').ok_or_else(|| {
                    Error::Parse(format!("missing ']' in series term {piece}"))
                })?;
                (c.trim(), exp)
            }
            None => {
                return Err(Error::Parse(format!(
                    "series term {piece} is not of the form c*t^[exponent]"
                )))
            }
        };
        let coeff: i64 = coeff_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {coeff_str}")))?;
        terms.push((
            parse_oag(field.p(), exp_str)?,
            FFElt::from_i64(field, coeff),
        ));
    }
    Ok(HahnSeries::from_terms(field, terms, prec))
}

/// Splits a series body on `+` signs at bracket depth zero; exponent
/// expressions inside `[...]` may themselves contain `+`.
fn split_terms(body: &str) -> Result<Vec<&str>> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (at, c) in body.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced ']' in series".into()))?;
            }
            '+' if depth == 0 => {
                pieces.push(&body[start..at]);
                start = at + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '[' in series".into()));
    }
    pieces.push(&body[start..]);
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(5).unwrap())
    }

    fn e(i: i64) -> OagElement {
        OagElement::basis(5, i)
    }

    fn fin(g: OagElement) -> Cutoff {
        Cutoff::Finite(g)
    }

    #[test]
    fn monomial_arithmetic_is_exact() {
        let f = f5();
        let a = HahnSeries::t_basis(&f, 1);
        let b = HahnSeries::t_basis(&f, 2);
        let prod = a.mul(&b);
        assert_eq!(prod.valuation().unwrap(), e(1).add(&e(2)));
        assert_eq!(*prod.precision(), Cutoff::Infinite);
        let sum = a.add(&b);
        assert_eq!(sum.valuation().unwrap(), e(2), "e_2 < e_1 in the value order");
        assert!(sum.sub(&sum).is_exact_zero());
    }

    #[test]
    fn valuation_rules() {
        let f = f5();
        let a = HahnSeries::t_basis(&f, 1);
        let b = HahnSeries::t_basis(&f, 2).scale_by(3);
        // v(xy) = v(x) + v(y); v(x + y) = min when leading terms differ.
        assert_eq!(
            a.mul(&b).valuation().unwrap(),
            a.valuation().unwrap().add(&b.valuation().unwrap())
        );
        assert_eq!(a.add(&b).valuation().unwrap(), e(2));
        // Cancellation raises the valuation.
        let c = a.add(&b).sub(&b);
        assert_eq!(c.valuation().unwrap(), e(1));
    }

    #[test]
    fn precision_min_rules() {
        let f = f5();
        // a = 1 + O(t^{e2}), b = t^{e1} exact.
        let a = HahnSeries::constant(&f, 1).truncate(fin(e(2)));
        let b = HahnSeries::t_basis(&f, 1);
        let sum = a.add(&b);
        assert_eq!(*sum.precision(), fin(e(2)));
        // e1 > e2, so the b term is invisible at this precision.
        assert_eq!(sum.num_terms(), 1);
        let prod = a.mul(&b);
        assert_eq!(*prod.precision(), fin(e(2).add(&e(1))));
        assert_eq!(prod.valuation().unwrap(), e(1));
        // A series zero to finite precision has unknown valuation.
        let unknown = HahnSeries::zero(&f).truncate(fin(e(2)));
        assert!(matches!(
            unknown.valuation(),
            Err(Error::InsufficientPrecision(_))
        ));
        assert!(matches!(HahnSeries::zero(&f).valuation(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inversion_tracks_truncation() {
        let f = f5();
        // x = t^{e1} + t^{2 e1} exact; x^{-1} is an infinite series.
        let x = HahnSeries::t_basis(&f, 1).add(&HahnSeries::monomial(
            FFElt::from_u64(&f, 1),
            e(1).scale(&int(2)),
        ));
        let inv = x.inv_terms(6).unwrap();
        // x * x^{-1} = 1 up to the claimed precision, which is finite here.
        let check = x.mul(&inv);
        assert!(check.agrees_with(&check.one_like()));
        assert!(matches!(check.precision(), Cutoff::Finite(_)));
        // More terms push the cutoff further out.
        let better = x.inv_terms(12).unwrap();
        let (Cutoff::Finite(c6), Cutoff::Finite(c12)) = (inv.precision().clone(), better.precision().clone())
        else {
            panic!("truncated inverses carry finite precision")
        };
        assert!(c6.lex_cmp(&c12).is_lt());
        // Monomials invert exactly.
        let m = HahnSeries::t_basis(&f, 1).scale_by(3);
        let minv = m.inv_terms(1).unwrap();
        assert_eq!(*minv.precision(), Cutoff::Infinite);
        assert!(m.mul(&minv).is_one());
    }

    #[test]
    fn squares_follow_the_leading_term() {
        let f = f5();
        // t^{e1 - e2}: exponent not 2-divisible (odd numerators).
        let g = e(1).sub(&e(2));
        let x = HahnSeries::monomial(FFElt::from_u64(&f, 1), g);
        assert!(!x.is_square().unwrap());
        // 2-divisible exponent, square coefficient: 4 * t^{2 e1}.
        let y = HahnSeries::monomial(FFElt::from_u64(&f, 4), e(1).scale(&int(2)));
        assert!(y.is_square().unwrap());
        // 2-divisible exponent, non-square coefficient: 2 * t^{2 e1}.
        let z = HahnSeries::monomial(FFElt::from_u64(&f, 2), e(1).scale(&int(2)));
        assert!(!z.is_square().unwrap());
        // p-divisibility of Gamma never helps with 2: t^{e1/p} is not a square.
        let w = HahnSeries::monomial(FFElt::from_u64(&f, 1), e(1).div_p());
        assert!(!w.is_square().unwrap());
    }

    #[test]
    fn sqrt_certificate_squares_back() {
        let f = f5();
        // x = 4 t^{2e1} + t^{2e1 + e2} + 3 t^{2e1 + 2e2}, exact.
        let base = e(1).scale(&int(2));
        let x = HahnSeries::from_terms(
            &f,
            [
                (base.clone(), FFElt::from_u64(&f, 4)),
                (base.add(&e(2)), FFElt::from_u64(&f, 1)),
                (base.add(&e(2).scale(&int(2))), FFElt::from_u64(&f, 3)),
            ],
            Cutoff::Infinite,
        );
        let root = x.sqrt(8).unwrap();
        assert!(root.square().agrees_with(&x));
        assert_eq!(root.valuation().unwrap(), e(1));
        // Non-squares are refused.
        assert!(HahnSeries::t_basis(&f, 1).sqrt(4).is_err());
        // Monomial squares root exactly.
        let m = HahnSeries::monomial(FFElt::from_u64(&f, 4), base);
        let mr = m.sqrt(1).unwrap();
        assert_eq!(*mr.precision(), Cutoff::Infinite);
        assert_eq!(mr.square(), m);
    }

    #[test]
    fn shift_is_a_field_map() {
        let f = f5();
        let a = HahnSeries::t_basis(&f, 1).add(&HahnSeries::constant(&f, 2));
        let b = HahnSeries::t_basis(&f, 2).scale_by(3);
        assert_eq!(a.mul(&b).shift_indices(1), a.shift_indices(1).mul(&b.shift_indices(1)));
        assert_eq!(a.add(&b).shift_indices(1), a.shift_indices(1).add(&b.shift_indices(1)));
        assert_eq!(
            HahnSeries::t_basis(&f, 1).shift_indices(1),
            HahnSeries::t_basis(&f, 2)
        );
        assert_eq!(a.shift_indices(1).shift_indices(-1), a);
    }

    #[test]
    fn frobenius_and_pth_root() {
        let f = f5();
        let a = HahnSeries::t_basis(&f, 1).add(&HahnSeries::constant(&f, 2));
        assert_eq!(a.frobenius().pth_root(), a);
        assert_eq!(a.pth_root().frobenius(), a);
        assert_eq!(
            HahnSeries::t_basis(&f, 1).pth_root().valuation().unwrap(),
            e(1).div_p()
        );
        // Frobenius multiplies finite cutoffs by p.
        let truncated = a.truncate(fin(e(1).scale(&int(2))));
        assert_eq!(
            *truncated.frobenius().precision(),
            fin(e(1).scale(&int(10)))
        );
    }

    #[test]
    fn delta_residues() {
        let f = f5();
        let delta0 = ConvexSubgroup::new(0);
        // x = 3 + t^{e1}: a unit for the Delta_0 coarsening; residue keeps
        // the Delta_0-supported part only.
        let x = HahnSeries::constant(&f, 3).add(&HahnSeries::t_basis(&f, 1));
        assert!(x.coarsened_valuation(&delta0).unwrap().is_zero());
        let res = x.delta_residue(&delta0).unwrap();
        assert_eq!(res, HahnSeries::constant(&f, 3).add(&HahnSeries::t_basis(&f, 1)));
        // t^{e0} has positive Delta_0-valuation; t^{-e0} is not integral.
        let y = HahnSeries::t_basis(&f, 0);
        assert!(y.coarsened_valuation(&delta0).unwrap().is_positive());
        let bad = HahnSeries::monomial(FFElt::from_u64(&f, 1), e(0).neg());
        assert!(bad.delta_residue(&delta0).is_err());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let f = f5();
        for s in [
            "3*t^[e1] + 1*t^[2 * e2] (prec 2 * e1)",
            "1*t^[0]",
            "4*t^[e1 - e2] + 2*t^[3/p^2 * e0]",
            "0 (prec e1)",
        ] {
            let once = parse_hahn(&f, s).unwrap();
            let again = parse_hahn(&f, &once.to_string()).unwrap();
            assert_eq!(once, again);
        }
        let x = parse_hahn(&f, "3*t^[e1] + 1*t^[2 * e2] (prec 2 * e1)").unwrap();
        assert_eq!(x.num_terms(), 2);
        assert_eq!(*x.precision(), fin(e(1).scale(&int(2))));
        // Canonical rendering lists terms leading-first (ascending exponent).
        assert_eq!(x.to_string(), "1*t^[2 * e2] + 3*t^[e1] (prec 2 * e1)");
        // A cutoff below the visible terms absorbs them: e5 < 2 e2 < e1 in
        // the value order, so everything lands inside the error term.
        let tiny = parse_hahn(&f, "3*t^[e1] + 1*t^[2 * e2] (prec e5)").unwrap();
        assert_eq!(tiny.num_terms(), 0);
        assert_eq!(tiny.to_string(), "0 (prec e5)");
        assert!(parse_hahn(&f, "t^[e1]").is_err());
        assert!(parse_hahn(&f, "3*t^[e1").is_err());
    }

    impl HahnSeries {
        fn scale_by(&self, c: i64) -> HahnSeries {
            self.mul(&HahnSeries::constant(self.coeff_field(), c))
        }
    }
}
