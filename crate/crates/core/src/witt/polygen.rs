//! Symbolic generation of the Witt addition and multiplication polynomials.
//!
//! The length-`n` Witt vectors over a base `p` are governed by integer
//! polynomials `S_0..S_{n-1}` (sum) and `P_0..P_{n-1}` (product) in the
//! variables `X_0..X_{n-1}, Y_0..Y_{n-1}`, characterised by the ghost
//! identities `w_i(S) = w_i(X) + w_i(Y)` and `w_i(P) = w_i(X) * w_i(Y)`
//! where `w_i(Z) = sum_{j<=i} p^j Z_j^{p^{i-j}}`. The generator solves the
//! ghost identities recursively over the exact rationals and asserts the
//! classical integrality theorem on the result — a division by `p^i` that
//! failed to clear every denominator would abort generation rather than
//! silently corrupt downstream arithmetic. In odd characteristic negation
//! is coordinatewise (`w_i(-Z) = -w_i(Z)` since all the powers are odd), so
//! no separate negation polynomials are needed.
//!
//! Coefficients are cached twice: exactly (for the symbolic ghost check and
//! the text cache) and reduced mod `p` (for evaluation in characteristic
//! `p`, where all visible `p`-multiples vanish).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Int, Rat};

/// A sparse multivariate polynomial over the exact rationals. Keys are
/// exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut poly = Self::zero(nvars);
        if !c.is_zero() {
            poly.terms.insert(vec![0; nvars], c);
        }
        poly
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        let mut poly = Self::zero(nvars);
        poly.terms.insert(exps, Rat::one());
        poly
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let merged = old + c;
                if !merged.is_zero() {
                    self.terms.insert(exps, merged);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, t)| (e.clone(), t * c))
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(exps, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.nvars, Rat::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, args: &[MPoly]) -> MPoly {
        assert_eq!(args.len(), self.nvars);
        let out_vars = args.first().map_or(self.nvars, MPoly::nvars);
        let mut out = MPoly::zero(out_vars);
        for (exps, c) in &self.terms {
            let mut term = MPoly::constant(out_vars, c.clone());
            for (idx, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&args[idx].pow(e as usize));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// An integral polynomial with its coefficients reduced mod `p`, in the
/// shape evaluation wants: monomials with nonzero residue only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, u64)>,
}

impl EvalPoly {
    fn reduce(poly: &MPoly, p: u64) -> Self {
        assert!(poly.is_integral(), "reduction mod p needs integer coefficients");
        let p_int = int(p as i64);
        let mut terms = Vec::new();
        for (exps, c) in &poly.terms {
            let residue = ((c.numer() % &p_int) + &p_int) % &p_int;
            let residue: u64 = residue.try_into().expect("residue fits");
            let residue = residue % p;
            if residue != 0 {
                terms.push((exps.clone(), residue));
            }
        }
        EvalPoly { nvars: poly.nvars, terms }
    }
}

/// The generated polynomial system for `(p, n)`: exact sum/product
/// polynomials together with their mod-`p` reductions.
#[derive(Debug, Clone)]
pub struct WittPolys {
    p: u64,
    n: usize,
    sum: Vec<MPoly>,
    prod: Vec<MPoly>,
    sum_eval: Vec<EvalPoly>,
    prod_eval: Vec<EvalPoly>,
}

impl WittPolys {
    /// Generates the system by the ghost recursion, asserting integrality
    /// at every level.
    pub fn generate(p: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Witt length must be >= 1".into()));
        }
        if p < 3 || !crate::finite_field::is_odd_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "{p} is not an odd prime"
            )));
        }
        let nvars = 2 * n;
        let ghost_x: Vec<MPoly> = (0..n).map(|i| ghost(p, n, i, 0)).collect();
        let ghost_y: Vec<MPoly> = (0..n).map(|i| ghost(p, n, i, n)).collect();
        let sum = solve_ghost(p, n, |i| ghost_x[i].add(&ghost_y[i]))?;
        let prod = solve_ghost(p, n, |i| ghost_x[i].mul(&ghost_y[i]))?;
        debug_assert!(sum.iter().all(|s| s.nvars() == nvars));
        let sum_eval = sum.iter().map(|s| EvalPoly::reduce(s, p)).collect();
        let prod_eval = prod.iter().map(|s| EvalPoly::reduce(s, p)).collect();
        Ok(WittPolys { p, n, sum, prod, sum_eval, prod_eval })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sum_polys(&self) -> &[MPoly] {
        &self.sum
    }

    pub fn prod_polys(&self) -> &[MPoly] {
        &self.prod
    }

    pub fn sum_eval(&self) -> &[EvalPoly] {
        &self.sum_eval
    }

    pub fn prod_eval(&self) -> &[EvalPoly] {
        &self.prod_eval
    }

    /// Re-derives both ghost identities symbolically: substituting the
    /// generated polynomials into the ghost maps reproduces the ghost-wise
    /// sum and product exactly.
    pub fn verify_ghost_identities(&self) -> Result<()> {
        let n = self.n;
        let ghost_x: Vec<MPoly> = (0..n).map(|i| ghost(self.p, n, i, 0)).collect();
        let ghost_y: Vec<MPoly> = (0..n).map(|i| ghost(self.p, n, i, n)).collect();
        for i in 0..n {
            let lhs_sum = ghost_applied(self.p, i, &self.sum);
            if lhs_sum != ghost_x[i].add(&ghost_y[i]) {
                return Err(Error::IntegralityFailure(format!(
                    "sum ghost identity fails at level {i}"
                )));
            }
            let lhs_prod = ghost_applied(self.p, i, &self.prod);
            if lhs_prod != ghost_x[i].mul(&ghost_y[i]) {
                return Err(Error::IntegralityFailure(format!(
                    "product ghost identity fails at level {i}"
                )));
            }
        }
        Ok(())
    }

    /// Serialises to the text cache format. All coefficients are integers
    /// by the integrality theorem, and the cache stores them in decimal.
    pub fn to_cache_string(&self) -> String {
        let mut out = String::new();
        writeln!(out, "wittpolys 1 p={} n={}", self.p, self.n).unwrap();
        for (label, polys) in [("S", &self.sum), ("P", &self.prod)] {
            for (i, poly) in polys.iter().enumerate() {
                writeln!(out, "{label}{i} {}", poly.num_terms()).unwrap();
                for (exps, c) in poly.terms() {
                    debug_assert!(c.denom().is_one());
                    write!(out, "{}", c.numer()).unwrap();
                    for e in exps {
                        write!(out, " {e}").unwrap();
                    }
                    writeln!(out).unwrap();
                }
            }
        }
        out
    }

    /// Parses the text cache format, re-reducing the evaluation tables.
    pub fn from_cache_string(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty cache".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("wittpolys") || parts.next() != Some("1") {
            return Err(Error::Parse("unrecognised cache header".into()));
        }
        let p: u64 = parse_kv(parts.next(), "p")?;
        let n: usize = parse_kv(parts.next(), "n")? as usize;
        let nvars = 2 * n;
        let mut read_block = |label: &str| -> Result<Vec<MPoly>> {
            let mut polys = Vec::with_capacity(n);
            for i in 0..n {
                let head = lines
                    .next()
                    .ok_or_else(|| Error::Parse("truncated cache".into()))?;
                let mut hp = head.split_whitespace();
                let expect = format!("{label}{i}");
                if hp.next() != Some(expect.as_str()) {
                    return Err(Error::Parse(format!("expected block {expect}")));
                }
                let nterms: usize = hp
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse("bad term count".into()))?;
                let mut poly = MPoly::zero(nvars);
                for _ in 0..nterms {
                    let line = lines
                        .next()
                        .ok_or_else(|| Error::Parse("truncated cache".into()))?;
                    let mut fields = line.split_whitespace();
                    let coeff = fields
                        .next()
                        .and_then(|s| BigInt::parse_bytes(s.as_bytes(), 10))
                        .ok_or_else(|| Error::Parse("bad coefficient".into()))?;
                    let exps: Vec<u32> = fields
                        .map(|s| s.parse().map_err(|_| Error::Parse("bad exponent".into())))
                        .collect::<Result<_>>()?;
                    if exps.len() != nvars {
                        return Err(Error::Parse("wrong exponent arity".into()));
                    }
                    poly.insert_add(exps, Rat::from(coeff));
                }
                polys.push(poly);
            }
            Ok(polys)
        };
        let sum = read_block("S")?;
        let prod = read_block("P")?;
        let sum_eval = sum.iter().map(|s| EvalPoly::reduce(s, p)).collect();
        let prod_eval = prod.iter().map(|s| EvalPoly::reduce(s, p)).collect();
        Ok(WittPolys { p, n, sum, prod, sum_eval, prod_eval })
    }
}

fn parse_kv(field: Option<&str>, key: &str) -> Result<u64> {
    field
        .and_then(|s| s.strip_prefix(key))
        .and_then(|s| s.strip_prefix('='))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("missing {key}= in cache header")))
}

/// The ghost polynomial `w_i` over the block of `n` variables starting at
/// `offset`: `sum_{j<=i} p^j Z_j^{p^{i-j}}`.
fn ghost(p: u64, n: usize, i: usize, offset: usize) -> MPoly {
    let nvars = 2 * n;
    let mut out = MPoly::zero(nvars);
    for j in 0..=i {
        let pj = Rat::from(int_pow(p, j as u32));
        let zj = MPoly::var(nvars, offset + j);
        out = out.add(&zj.pow(usize_pow(p, (i - j) as u32)).scale(&pj));
    }
    out
}

/// `w_i` applied to already-constructed coordinate polynomials.
fn ghost_applied(p: u64, i: usize, coords: &[MPoly]) -> MPoly {
    let nvars = coords[0].nvars();
    let mut out = MPoly::zero(nvars);
    for j in 0..=i {
        let pj = Rat::from(int_pow(p, j as u32));
        out = out.add(&coords[j].pow(usize_pow(p, (i - j) as u32)).scale(&pj));
    }
    out
}

/// Solves `w_i(Z_0..Z_i) = target_i` for the coordinate polynomials,
/// dividing by `p^i` at each level and asserting integrality.
fn solve_ghost<F: Fn(usize) -> MPoly>(p: u64, n: usize, target: F) -> Result<Vec<MPoly>> {
    let mut coords: Vec<MPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = target(i);
        for j in 0..i {
            let pj = Rat::from(int_pow(p, j as u32));
            rhs = rhs.sub(&coords[j].pow(usize_pow(p, (i - j) as u32)).scale(&pj));
        }
        let pi_inv = Rat::new(Int::one(), int_pow(p, i as u32));
        let coord = rhs.scale(&pi_inv);
        if !coord.is_integral() {
            return Err(Error::IntegralityFailure(format!(
                "level-{i} Witt polynomial has a non-integer coefficient"
            )));
        }
        coords.push(coord);
    }
    Ok(coords)
}

fn int_pow(p: u64, e: u32) -> Int {
    num::pow(int(p as i64), e as usize)
}

fn usize_pow(p: u64, e: u32) -> usize {
    (p as usize).pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn binom(n: u64, k: u64) -> Int {
        let mut acc = Int::one();
        for i in 0..k {
            acc = acc * int((n - i) as i64) / int((i + 1) as i64);
        }
        acc
    }

    #[test]
    fn closed_forms_at_level_one() {
        for p in [3u64, 5, 7] {
            let polys = WittPolys::generate(p, 2).unwrap();
            let nv = 4;
            let (x0, x1, y0, y1) = (
                MPoly::var(nv, 0),
                MPoly::var(nv, 1),
                MPoly::var(nv, 2),
                MPoly::var(nv, 3),
            );
            // S_0 = X0 + Y0, P_0 = X0 Y0.
            assert_eq!(polys.sum_polys()[0], x0.add(&y0));
            assert_eq!(polys.prod_polys()[0], x0.mul(&y0));
            // S_1 = X1 + Y1 - sum_{i=1}^{p-1} (1/p) C(p,i) X0^i Y0^{p-i}.
            let mut expect = x1.add(&y1);
            for i in 1..p {
                let c = Rat::new(binom(p, i), int(p as i64));
                expect = expect.sub(
                    &x0.pow(i as usize)
                        .mul(&y0.pow((p - i) as usize))
                        .scale(&c),
                );
            }
            assert_eq!(polys.sum_polys()[1], expect);
            // P_1 = X0^p Y1 + X1 Y0^p + p X1 Y1.
            let expect = x0
                .pow(p as usize)
                .mul(&y1)
                .add(&x1.mul(&y0.pow(p as usize)))
                .add(&x1.mul(&y1).scale(&rat(p as i64, 1)));
            assert_eq!(polys.prod_polys()[1], expect);
        }
    }

    #[test]
    fn ghost_identities_hold_symbolically() {
        for (p, n) in [(3u64, 2usize), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3)] {
            let polys = WittPolys::generate(p, n).unwrap();
            polys.verify_ghost_identities().unwrap();
            assert!(polys.sum_polys().iter().all(MPoly::is_integral));
            assert!(polys.prod_polys().iter().all(MPoly::is_integral));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WittPolys::generate(2, 2).is_err());
        assert!(WittPolys::generate(4, 2).is_err());
        assert!(WittPolys::generate(5, 0).is_err());
    }

    #[test]
    fn cache_roundtrip() {
        let polys = WittPolys::generate(5, 3).unwrap();
        let text = polys.to_cache_string();
        let back = WittPolys::from_cache_string(&text).unwrap();
        assert_eq!(back.p(), 5);
        assert_eq!(back.n(), 3);
        assert_eq!(back.sum_polys(), polys.sum_polys());
        assert_eq!(back.prod_polys(), polys.prod_polys());
        assert_eq!(back.sum_eval(), polys.sum_eval());
        assert!(WittPolys::from_cache_string("nonsense").is_err());
    }

    #[test]
    fn mod_p_reduction_drops_p_multiples() {
        // In P_1 the p X1 Y1 term vanishes mod p.
        let polys = WittPolys::generate(5, 2).unwrap();
        let reduced = &polys.prod_eval()[1];
        assert_eq!(reduced.terms.len(), 2);
        assert!(reduced.terms.iter().all(|(_, c)| *c == 1));
    }
}
