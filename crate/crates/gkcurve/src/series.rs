//! Sparse polynomials and truncated power series over a [`Field`].
//!
//! [`TruncatedSeries`] is dense: a series known modulo `t^N` stores its
//! `N` coefficients and tracks how precision moves through arithmetic.
//! Valuations are reported through [`Valuation`], which distinguishes an
//! exact order from "at least the precision", so a truncated zero can
//! never be misread as an exact one.
//!
//! [`SparsePoly`] is an exact polynomial in one variable (`t`), two
//! (`y, z`) or three (`x, y, z`), keyed by exponent tuples.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf::{Field, FieldElement};
use crate::{Error, Result};

/// Valuation of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    /// The least exponent with a nonzero coefficient.
    Exact(usize),
    /// Zero modulo `t^N`; the true valuation is `N` or more.
    AtLeast(usize),
}

impl Valuation {
    pub fn exact(self) -> Option<usize> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// A lower bound valid in both cases.
    pub fn lower_bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// A power series in `t` known modulo `t^precision`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn zero(field: &Field, precision: usize) -> TruncatedSeries {
        assert!(precision >= 1, "precision must be positive");
        TruncatedSeries {
            field: field.clone(),
            coeffs: vec![0; precision],
        }
    }

    pub fn constant(value: &FieldElement, precision: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(value.field(), precision);
        s.coeffs[0] = value.index();
        s
    }

    /// `coeff * t^exp` modulo `t^precision`.
    pub fn monomial(coeff: &FieldElement, exp: usize, precision: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(coeff.field(), precision);
        if exp < precision {
            s.coeffs[exp] = coeff.index();
        }
        s
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Result<TruncatedSeries> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        assert!(!coeffs.is_empty(), "precision must be positive");
        Ok(TruncatedSeries {
            field: field.clone(),
            coeffs: coeffs.iter().map(|c| c.index()).collect(),
        })
    }

    pub(crate) fn from_raw(field: &Field, coeffs: Vec<u64>) -> TruncatedSeries {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^i`; panics when `i` is beyond the precision.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeffs[i])
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u64 {
        self.coeffs[i]
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(self.coeffs.len()),
        }
    }

    fn check_field(&self, other: &TruncatedSeries) {
        assert!(
            self.field == other.field,
            "series over different fields"
        );
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_field(other);
        let n = self.precision().min(other.precision());
        let coeffs = (0..n)
            .map(|i| self.field.raw_add(self.coeffs[i], other.coeffs[i]))
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_field(other);
        let n = self.precision().min(other.precision());
        let coeffs = (0..n)
            .map(|i| self.field.raw_sub(self.coeffs[i], other.coeffs[i]))
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|&c| self.field.raw_neg(c)).collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    /// Product, with precision `min(Na + vb, Nb + va)` where `v` is the
    /// valuation of the known part.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_field(other);
        let na = self.precision();
        let nb = other.precision();
        let va = self.valuation().lower_bound();
        let vb = other.valuation().lower_bound();
        let n = (na + vb).min(nb + va);
        let mut out = vec![0u64; n];
        for i in 0..na.min(n) {
            let a = self.coeffs[i];
            if a == 0 {
                continue;
            }
            let jmax = (n - i).min(nb);
            for (j, &b) in other.coeffs[..jmax].iter().enumerate() {
                if b != 0 {
                    out[i + j] = self.field.raw_add(out[i + j], self.field.raw_mul(a, b));
                }
            }
        }
        TruncatedSeries { field: self.field.clone(), coeffs: out }
    }

    pub fn scale(&self, c: &FieldElement) -> TruncatedSeries {
        assert!(c.field() == &self.field, "scalar from a different field");
        let raw = c.index();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| self.field.raw_mul(a, raw))
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    /// Drops coefficients so the precision becomes `min(n, precision)`.
    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        assert!(n >= 1, "precision must be positive");
        let n = n.min(self.coeffs.len());
        TruncatedSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// The `p^e`-th power: coefficients are raised, exponents scaled.
    /// Precision scales to `N * p^e`, capped at `cap`.
    pub fn p_power_capped(&self, e: u32, cap: usize) -> TruncatedSeries {
        if e == 0 {
            return self.truncate(cap.min(self.precision()).max(1));
        }
        let p = self.field.characteristic();
        let pe = p.checked_pow(e).expect("p^e overflow") as u128;
        let scaled = (self.precision() as u128).saturating_mul(pe);
        let n = scaled.min(cap as u128) as usize;
        let mut out = vec![0u64; n.max(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let idx = i as u128 * pe;
            if idx < n as u128 {
                out[idx as usize] = self.field.raw_frob(c, e);
            }
        }
        TruncatedSeries { field: self.field.clone(), coeffs: out }
    }

    /// The `p^e`-th power at full scaled precision.
    pub fn p_power(&self, e: u32) -> TruncatedSeries {
        self.p_power_capped(e, MAX_SERIES_PRECISION)
    }
}

/// Precision ceiling for scaled powers; keeps `p_power` allocations sane.
pub const MAX_SERIES_PRECISION: usize = 1 << 22;

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{i}")?,
                (_, 1) => write!(f, "{c}*t")?,
                (_, _) => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(1 + t)^r - 1` modulo `t^precision`; the coefficient of `t^i` is
/// `binomial(r, i) mod p`. Errors when `p` divides `r`, since the result
/// must have valuation exactly one.
pub fn one_plus_t_pow(field: &Field, r: u64, precision: usize) -> Result<TruncatedSeries> {
    let p = field.characteristic();
    if r % p == 0 {
        return Err(Error::ExponentDivisibleByP(r));
    }
    let mut s = TruncatedSeries::zero(field, precision);
    for i in 1..precision {
        if i as u64 > r {
            break;
        }
        let b = binomial_mod_p(r, i as u64, p);
        s.coeffs[i] = b;
    }
    Ok(s)
}

/// Binomial coefficient modulo a prime, by Lucas' theorem.
fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let nd = n % p;
        let kd = k % p;
        if kd > nd {
            return 0;
        }
        acc = acc * binomial_small(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn binomial_small(n: u64, k: u64, p: u64) -> u64 {
    // n, k < p
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * crate::gf::inv_mod_prime(den, p) % p
}

/// Sign choice for an additive equation on series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtinSchreierSign {
    /// Solve `xi^(p^e) + xi = s`.
    Plus,
    /// Solve `xi^(p^e) - xi = s`.
    Minus,
}

/// The unique series `xi` of positive valuation with
/// `xi^(p^e) + xi = s` (plus) or `xi^(p^e) - xi = s` (minus), obtained as
/// the t-adically convergent Frobenius sum, truncated at the precision of
/// `s`. Errors when `s` has a nonzero constant term.
pub fn solve_as_series(
    s: &TruncatedSeries,
    e: u32,
    sign: ArtinSchreierSign,
) -> Result<TruncatedSeries> {
    if s.coeff_raw(0) != 0 {
        return Err(Error::NonzeroConstantTerm);
    }
    assert!(e >= 1, "Frobenius exponent must be positive");
    let n = s.precision();
    let mut acc = TruncatedSeries::zero(s.field(), n);
    let mut term = s.clone();
    let mut k = 0u32;
    while !term.is_zero() {
        let signed = match sign {
            ArtinSchreierSign::Minus => term.neg(),
            ArtinSchreierSign::Plus if k % 2 == 1 => term.neg(),
            ArtinSchreierSign::Plus => term.clone(),
        };
        acc = acc.add(&signed);
        term = term.p_power_capped(e, n);
        k += 1;
    }
    Ok(acc)
}

// ---- sparse polynomials ----

/// Exponent tuple, padded with zeros beyond the variable count.
pub type Exps = [u64; 3];

/// An exact sparse polynomial in 1 (`t`), 2 (`y, z`) or 3 (`x, y, z`)
/// variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exps, u64>,
}

impl SparsePoly {
    pub fn zero(field: &Field, nvars: usize) -> SparsePoly {
        assert!((1..=3).contains(&nvars));
        SparsePoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: &FieldElement, nvars: usize) -> SparsePoly {
        let mut p = SparsePoly::zero(value.field(), nvars);
        if !value.is_zero() {
            p.terms.insert([0, 0, 0], value.index());
        }
        p
    }

    pub fn one(field: &Field, nvars: usize) -> SparsePoly {
        SparsePoly::constant(&field.one(), nvars)
    }

    pub fn monomial(coeff: &FieldElement, nvars: usize, exps: Exps) -> SparsePoly {
        let mut p = SparsePoly::zero(coeff.field(), nvars);
        p.add_term(exps, coeff.index());
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, self.field.elem(c)))
    }

    pub fn coeff(&self, exps: Exps) -> FieldElement {
        self.field.elem(self.terms.get(&exps).copied().unwrap_or(0))
    }

    pub(crate) fn add_term(&mut self, exps: Exps, raw: u64) {
        if raw == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = self.field.raw_add(*entry, raw);
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    fn check(&self, other: &SparsePoly) {
        assert!(self.field == other.field, "polynomials over different fields");
        assert!(self.nvars == other.nvars, "variable counts differ");
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check(other);
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.check(other);
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, self.field.raw_neg(c));
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, self.nvars);
        for (&e, &c) in &self.terms {
            out.terms.insert(e, self.field.raw_neg(c));
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check(other);
        let mut out = SparsePoly::zero(&self.field, self.nvars);
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, self.field.raw_mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> SparsePoly {
        assert!(c.field() == &self.field);
        let mut out = SparsePoly::zero(&self.field, self.nvars);
        for (&e, &a) in &self.terms {
            out.add_term(e, self.field.raw_mul(a, c.index()));
        }
        out
    }

    /// The `p^e`-th power: a ring homomorphism in characteristic p, so
    /// exponents scale and coefficients go through Frobenius.
    pub fn p_power(&self, e: u32) -> SparsePoly {
        let pe = self.field.characteristic().pow(e);
        let mut out = SparsePoly::zero(&self.field, self.nvars);
        for (&ex, &c) in &self.terms {
            let scaled = [ex[0] * pe, ex[1] * pe, ex[2] * pe];
            out.terms.insert(scaled, self.field.raw_frob(c, e));
        }
        out
    }

    /// Evaluation at a point, one coordinate per variable.
    pub fn eval(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.nvars, "wrong number of coordinates");
        let mut acc = 0u64;
        for (&ex, &c) in &self.terms {
            let mut term = c;
            for (v, coord) in coords.iter().enumerate() {
                if ex[v] > 0 {
                    term = self
                        .field
                        .raw_mul(term, self.field.raw_pow(coord.index(), ex[v]));
                }
            }
            acc = self.field.raw_add(acc, term);
        }
        self.field.elem(acc)
    }

    /// Total degree weighted by the given per-variable weights.
    pub fn weighted_degree(&self, weights: &[u64]) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| {
                (0..self.nvars)
                    .map(|v| e[v] * weights[v])
                    .sum::<u64>()
            })
            .max()
    }

    fn var_names(&self) -> &'static [&'static str] {
        match self.nvars {
            1 => &["t"],
            2 => &["y", "z"],
            _ => &["x", "y", "z"],
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.var_names();
        // highest exponents first reads like handwritten polynomials
        let mut first = true;
        for (ex, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = (0..self.nvars).all(|v| ex[v] == 0);
            if is_const || *c != 1 {
                write!(f, "{c}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for v in 0..self.nvars {
                match ex[v] {
                    0 => {}
                    1 => {
                        write!(f, "{sep}{}", names[v])?;
                        sep = "*";
                    }
                    e => {
                        write!(f, "{sep}{}^{e}", names[v])?;
                        sep = "*";
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn series(field: &Field, coeffs: &[u64], prec: usize) -> TruncatedSeries {
        let mut raw = vec![0u64; prec];
        raw[..coeffs.len()].copy_from_slice(coeffs);
        TruncatedSeries::from_raw(field, raw)
    }

    #[test]
    fn mul_of_one_plus_minus_t() {
        let f = Field::new(5, 1).unwrap();
        let a = series(&f, &[1, 1], 5); // 1 + t
        let b = series(&f, &[1, 4], 5); // 1 - t
        let prod = a.mul(&b);
        assert_eq!(prod.precision(), 5);
        assert_eq!(prod.raw(), &[1, 0, 4, 0, 0]); // 1 - t^2
    }

    #[test]
    fn example_product_q2_nu5() {
        // (t + t^3)(1 + t + t^5) over GF(2)
        let f = gf2();
        let a = series(&f, &[0, 1, 0, 1], 10);
        let b = series(&f, &[1, 1, 0, 0, 0, 1], 10);
        let prod = a.mul(&b);
        // t + t^2 + t^3 + t^4 + t^6 + t^8
        assert_eq!(prod.raw()[..9], [0, 1, 1, 1, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn addition_with_zero_is_identity() {
        let f = Field::new(3, 2).unwrap();
        let a = series(&f, &[5, 7, 2], 6);
        let z = TruncatedSeries::zero(&f, 6);
        assert_eq!(a.add(&z), a);
    }

    #[test]
    fn mul_precision_tracks_valuations() {
        let f = gf2();
        // t^5 known mod t^6 squared is t^10 known mod t^11
        let a = TruncatedSeries::monomial(&f.one(), 5, 6);
        let sq = a.mul(&a);
        assert_eq!(sq.precision(), 11);
        assert_eq!(sq.valuation(), Valuation::Exact(10));
    }

    #[test]
    fn p_power_examples() {
        let f = gf2();
        let t = TruncatedSeries::monomial(&f.one(), 1, 8);
        assert_eq!(t.p_power(3).valuation(), Valuation::Exact(8));
        // (1 + t + t^5)^4 = 1 + t^4 + t^20 over GF(2)
        let s = series(&f, &[1, 1, 0, 0, 0, 1], 6);
        let pw = s.p_power(2);
        assert_eq!(pw.precision(), 24);
        let mut expect = vec![0u64; 24];
        expect[0] = 1;
        expect[4] = 1;
        expect[20] = 1;
        assert_eq!(pw.raw(), &expect[..]);
        assert_eq!(s.p_power(0), s);
    }

    #[test]
    fn p_power_is_multiplicative() {
        let f = Field::new(3, 2).unwrap();
        let a = series(&f, &[0, 3, 1, 8], 9);
        let b = series(&f, &[0, 0, 2, 5], 9);
        let lhs = a.mul(&b).p_power(1);
        let rhs = a.p_power(1).mul(&b.p_power(1));
        let n = lhs.precision().min(rhs.precision());
        assert_eq!(lhs.truncate(n), rhs.truncate(n));
    }

    #[test]
    fn valuations_add_under_mul() {
        let f = Field::new(7, 1).unwrap();
        let a = series(&f, &[0, 0, 3, 1], 9);
        let b = series(&f, &[0, 5, 2], 9);
        let (Valuation::Exact(va), Valuation::Exact(vb)) = (a.valuation(), b.valuation()) else {
            panic!()
        };
        assert_eq!(a.mul(&b).valuation(), Valuation::Exact(va + vb));
    }

    #[test]
    fn zero_series_reports_at_least() {
        let f = gf2();
        let z = TruncatedSeries::zero(&f, 12);
        assert_eq!(z.valuation(), Valuation::AtLeast(12));
        assert_eq!(z.valuation().exact(), None);
    }

    #[test]
    fn binomial_expansion_small_cases() {
        let f2 = gf2();
        let s = one_plus_t_pow(&f2, 3, 8).unwrap();
        assert_eq!(s.raw()[..5], [0, 1, 1, 1, 0]); // t + t^2 + t^3
        let s1 = one_plus_t_pow(&f2, 1, 4).unwrap();
        assert_eq!(s1.raw(), &[0, 1, 0, 0]);
        assert_eq!(s1.valuation(), Valuation::Exact(1));
    }

    #[test]
    fn binomial_expansion_matches_repeated_multiplication() {
        let f = Field::new(3, 1).unwrap();
        let direct = one_plus_t_pow(&f, 7, 10).unwrap();
        // oracle: multiply (1 + t) seven times, then subtract the 1
        let one_plus_t = series(&f, &[1, 1], 10);
        let mut acc = series(&f, &[1], 10);
        for _ in 0..7 {
            acc = acc.mul(&one_plus_t).truncate(10);
        }
        let expect = acc.sub(&TruncatedSeries::constant(&f.one(), 10));
        assert_eq!(direct, expect);
        assert_eq!(direct.coeff(1).index(), 7 % 3);
    }

    #[test]
    fn binomial_rejects_divisible_exponent() {
        let f = Field::new(3, 1).unwrap();
        assert!(matches!(
            one_plus_t_pow(&f, 6, 5),
            Err(Error::ExponentDivisibleByP(6))
        ));
    }

    #[test]
    fn artin_schreier_zero_input() {
        let f = gf2();
        let z = TruncatedSeries::zero(&f, 9);
        let xi = solve_as_series(&z, 1, ArtinSchreierSign::Plus).unwrap();
        assert!(xi.is_zero());
    }

    #[test]
    fn artin_schreier_plus_substitutes_back() {
        // xi^2 + xi = t over GF(2): xi = t + t^2 + t^4 + t^8 + ...
        let f = gf2();
        let t = TruncatedSeries::monomial(&f.one(), 1, 20);
        let xi = solve_as_series(&t, 1, ArtinSchreierSign::Plus).unwrap();
        let mut expect = vec![0u64; 20];
        for e in [1, 2, 4, 8, 16] {
            expect[e] = 1;
        }
        assert_eq!(xi.raw(), &expect[..]);
        let back = xi.p_power_capped(1, 20).add(&xi);
        assert_eq!(back, t);
    }

    #[test]
    fn artin_schreier_minus_substitutes_back() {
        // xi^(q^2) - xi = c*T over GF(2^10), q = 2
        let f = Field::new(2, 10).unwrap();
        let c = f.element_from_index(777).unwrap();
        let tpow = one_plus_t_pow(&f, 11, 34).unwrap();
        let ct = tpow.scale(&c);
        let xi = solve_as_series(&ct, 2, ArtinSchreierSign::Minus).unwrap();
        let back = xi.p_power_capped(2, 34).sub(&xi);
        assert_eq!(back, ct.truncate(back.precision()));
        // leading behavior: xi = -cT - (cT)^4 - ...
        assert_eq!(xi.coeff(1), -ct.coeff(1));
    }

    #[test]
    fn artin_schreier_rejects_units() {
        let f = gf2();
        let s = series(&f, &[1, 1], 6);
        assert!(matches!(
            solve_as_series(&s, 1, ArtinSchreierSign::Plus),
            Err(Error::NonzeroConstantTerm)
        ));
    }

    #[test]
    fn sparse_poly_arithmetic() {
        let f = Field::new(3, 1).unwrap();
        // (y + z)(y - z) = y^2 - z^2
        let y = SparsePoly::monomial(&f.one(), 2, [1, 0, 0]);
        let z = SparsePoly::monomial(&f.one(), 2, [0, 1, 0]);
        let prod = y.add(&z).mul(&y.sub(&z));
        let expect = y.mul(&y).sub(&z.mul(&z));
        assert_eq!(prod, expect);
        assert_eq!(prod.num_terms(), 2);
        assert!(y.sub(&y).is_zero());
    }

    #[test]
    fn sparse_poly_p_power_and_eval() {
        let f = Field::new(2, 6).unwrap();
        let t = f.gen();
        let poly = SparsePoly::monomial(&t, 2, [1, 1, 0])
            .add(&SparsePoly::one(&f, 2)); // t*y*z + 1
        let sq = poly.p_power(1);
        let a = f.element_from_index(17).unwrap();
        let b = f.element_from_index(45).unwrap();
        let direct = poly.eval(&[a.clone(), b.clone()]);
        assert_eq!(sq.eval(&[a, b]), direct.pow(2));
    }

    #[test]
    fn display_is_readable() {
        let f = Field::new(5, 1).unwrap();
        let p = SparsePoly::monomial(&f.scalar(3), 2, [2, 0, 0])
            .add(&SparsePoly::monomial(&f.one(), 2, [0, 1, 0]))
            .add(&SparsePoly::one(&f, 2));
        assert_eq!(p.to_string(), "3*y^2 + z + 1");
    }
}
