//! Rational function fields `F(t)` in canonical reduced form.
//!
//! Every value keeps `gcd(num, den) = 1` with a monic denominator, so
//! structural equality is field equality. Squareness over a perfect
//! coefficient field reduces to multiplicity parity of the numerator and
//! denominator plus squareness of the leading constant: an element of `F`
//! that becomes a square in `F(t)` was already a square in `F` (all its
//! valuations, including the degree valuation at infinity, vanish), and for
//! odd `p` passing to `t^(1/p)` multiplies multiplicities by `p` and so
//! preserves their parity. Squareness in `F(t)` therefore agrees with
//! squareness in the whole perfect hull, which is what the perfection layer
//! relies on.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PerfectField, SquareTest};
use crate::poly::Poly;

/// A reduced fraction of polynomials over `F`.
#[derive(Clone, PartialEq)]
pub struct RatFn<F: FieldElement> {
    num: Poly<F>,
    /// Monic, nonzero, coprime to `num`.
    den: Poly<F>,
}

impl<F: FieldElement> RatFn<F> {
    /// `num / den`, reduced. Errors if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let one = Poly::constant(num.scalar_zero().one_like());
            return Ok(RatFn { num, den: one });
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let (lc, den) = den.monic()?;
        let num = num.scale(&lc.inv()?);
        Ok(RatFn { num, den })
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        let one = Poly::constant(num.scalar_zero().one_like());
        RatFn { num, den: one }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable `t`.
    pub fn var(witness: &F) -> Self {
        Self::from_poly(Poly::var(witness))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn scalar_zero(&self) -> &F {
        self.num.scalar_zero()
    }

    /// Whether the value lies in `F` (denominator 1, numerator constant).
    pub fn as_constant(&self) -> Option<F> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Substitutes `t -> t^k`; a field embedding, so reducedness survives.
    pub fn inflate(&self, k: u64) -> Self {
        RatFn { num: self.num.inflate(k), den: self.den.inflate(k) }
    }

    /// Rewrites in `t^k` if every exponent of `num` and `den` allows it.
    pub fn try_deflate(&self, k: u64) -> Option<Self> {
        Some(RatFn { num: self.num.try_deflate(k)?, den: self.den.try_deflate(k)? })
    }

    /// Applies a field homomorphism coefficient-wise. The homomorphism
    /// assumption is what keeps the result reduced without a fresh gcd.
    pub fn map_coeffs<G: FieldElement>(
        &self,
        witness: &G,
        f: impl Fn(&F) -> G + Copy,
    ) -> RatFn<G> {
        RatFn {
            num: self.num.map_coeffs(witness, f),
            den: self.den.map_coeffs(witness, f),
        }
    }

    /// Evaluates at `t = x`; errors if `x` is a pole.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x).mul(&d.inv()?))
    }

    /// Order of vanishing at `t = 0`: the difference of the `t`-adic
    /// valuations of numerator and denominator. Errors on zero.
    pub fn ord_at_zero(&self) -> Result<i64> {
        fn low_deg<F: FieldElement>(p: &Poly<F>) -> Option<i64> {
            p.coeffs().iter().position(|c| !c.is_zero()).map(|i| i as i64)
        }
        let n = low_deg(&self.num).ok_or(Error::ZeroInput("ord of zero"))?;
        Ok(n - low_deg(&self.den).expect("denominator is nonzero"))
    }
}

impl<F: FieldElement> FieldElement for RatFn<F> {
    fn zero_like(&self) -> Self {
        Self::constant(self.scalar_zero().zero_like())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.scalar_zero().one_like())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::new(num, den).expect("nonzero denominators")
    }

    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.num);
        let den = self.den.mul(&rhs.den);
        Self::new(num, den).expect("nonzero denominators")
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    fn characteristic(&self) -> u64 {
        self.scalar_zero().characteristic()
    }
}

impl<F: PerfectField + SquareTest> SquareTest for RatFn<F> {
    fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput(
                "square classes are classes of nonzero elements",
            ));
        }
        let (lc, num_parts) = self.num.squarefree_decomposition()?;
        let (_, den_parts) = self.den.squarefree_decomposition()?;
        let parity_even = num_parts
            .keys()
            .chain(den_parts.keys())
            .all(|m| m % 2 == 0);
        Ok(parity_even && lc.is_square()?)
    }
}

impl<F: FieldElement + fmt::Display> RatFn<F> {
    /// Renders with the given variable letter.
    pub fn display_with_var(&self, var: &str) -> String {
        fn poly_str<F: FieldElement + fmt::Display>(p: &Poly<F>, var: &str) -> String {
            if p.is_zero() {
                return "0".into();
            }
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let cs = c.to_string();
                    let coeff = if cs.contains('+') || cs.contains('-') {
                        format!("({cs})")
                    } else {
                        cs
                    };
                    match i {
                        0 => coeff,
                        _ if c.is_one() => {
                            if i == 1 {
                                var.to_string()
                            } else {
                                format!("{var}^{i}")
                            }
                        }
                        1 => format!("{coeff}*{var}"),
                        _ => format!("{coeff}*{var}^{i}"),
                    }
                })
                .collect();
            terms.join(" + ")
        }
        let num = poly_str(&self.num, var);
        if self.den.is_constant() {
            num
        } else {
            format!("({num})/({})", poly_str(&self.den, var))
        }
    }
}

impl<F: FieldElement + fmt::Display> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with_var("t"))
    }
}

impl<F: FieldElement> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{FFElt, FiniteField};
    use std::sync::Arc;

    fn f5() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(5).unwrap())
    }

    fn fp(field: &Arc<FiniteField>, coeffs: &[i64]) -> Poly<FFElt> {
        let w = FFElt::from_u64(field, 0);
        Poly::from_coeffs(&w, coeffs.iter().map(|&c| FFElt::from_i64(field, c)).collect())
    }

    #[test]
    fn reduces_on_construction() {
        let f = f5();
        // (t^2 - 1)/(t - 1) = t + 1.
        let x = RatFn::new(fp(&f, &[-1, 0, 1]), fp(&f, &[-1, 1])).unwrap();
        assert_eq!(x, RatFn::from_poly(fp(&f, &[1, 1])));
        // Denominator is normalized monic: 1/(2t) = 3/t over F_5.
        let y = RatFn::new(fp(&f, &[1]), fp(&f, &[0, 2])).unwrap();
        assert_eq!(y.den(), &fp(&f, &[0, 1]));
        assert_eq!(y.num(), &fp(&f, &[3]));
    }

    #[test]
    fn field_identities() {
        let f = f5();
        let t = RatFn::var(&FFElt::from_u64(&f, 0));
        let one = t.one_like();
        // 1/(t+1) + t/(t+1) = 1.
        let tp1 = t.add(&one);
        let a = one.div(&tp1).unwrap();
        let b = t.div(&tp1).unwrap();
        assert_eq!(a.add(&b), one);
        // x * x^-1 = 1 for a non-trivial x.
        let x = tp1.mul(&t).add(&one);
        assert_eq!(x.mul(&x.inv().unwrap()), one);
    }

    #[test]
    fn square_detection() {
        let f = f5();
        let t = RatFn::var(&FFElt::from_u64(&f, 0));
        let one = t.one_like();
        let tp1 = t.add(&one);

        assert!(t.square().is_square().unwrap());
        assert!(tp1.square().div(&t.square()).unwrap().is_square().unwrap());
        // 4*(t+1)^2 is a square (4 = 2^2), 2*(t+1)^2 is not (2 is not).
        let c4 = RatFn::constant(FFElt::from_u64(&f, 4));
        let c2 = RatFn::constant(FFElt::from_u64(&f, 2));
        assert!(tp1.square().mul(&c4).is_square().unwrap());
        assert!(!tp1.square().mul(&c2).is_square().unwrap());
        // Odd multiplicities, in the numerator or denominator, fail.
        assert!(!t.is_square().unwrap());
        assert!(!t.mul(&tp1.square()).is_square().unwrap());
        assert!(!one.div(&t).unwrap().is_square().unwrap());
        // t^3 + 1 = (t+1)(t^2-t+1) is squarefree, hence not a square.
        assert!(!RatFn::from_poly(fp(&f, &[1, 0, 0, 1])).is_square().unwrap());
        assert!(one.is_square().unwrap());
        assert!(t.zero_like().is_square().is_err());
    }

    #[test]
    fn order_at_zero() {
        let f = f5();
        let t = RatFn::var(&FFElt::from_u64(&f, 0));
        let one = t.one_like();
        assert_eq!(t.ord_at_zero().unwrap(), 1);
        assert_eq!(one.div(&t.square()).unwrap().ord_at_zero().unwrap(), -2);
        assert_eq!(t.add(&one).ord_at_zero().unwrap(), 0);
    }

    #[test]
    fn rendering() {
        let f = f5();
        let t = RatFn::var(&FFElt::from_u64(&f, 0));
        let x = t.square().add(&t.one_like()).div(&t).unwrap();
        assert_eq!(x.to_string(), "(1 + t^2)/(t)");
    }
}
