//! Exact arithmetic in finite fields GF(p^m).
//!
//! A [`Field`] is built from a prime `p` and a degree `m`. The defining
//! modulus is chosen deterministically: monic degree-`m` polynomials over
//! GF(p) are scanned in increasing order of the integer `sum c_i p^i`
//! formed from their non-leading coefficients, and the first irreducible
//! one is kept. Rebuilding a field therefore always yields the same
//! modulus, and a serialized [`FieldSpec`] pins the arithmetic exactly.
//!
//! Elements are coefficient sequences in the power basis, stored packed
//! as the radix-`p` integer `sum c_i p^i`. Extensions of a field are
//! always constructed as one ambient field GF(p, m*d); subfield membership
//! is decided through Frobenius fixed points, never through embedding
//! maps. Small fields carry discrete-log tables (with a Zech table for
//! odd characteristic); these only change speed, never results.
//!
//! All values are immutable after construction and safe to share across
//! threads.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported field size `p^m`.
pub const MAX_FIELD_SIZE: u64 = 1 << 26;

/// Fields up to this size get exp/log (and Zech) tables.
const TABLE_LIMIT: u64 = 1 << 21;

const ZECH_NONE: u32 = u32::MAX;

/// Serializable description of a field: prime, degree and the modulus
/// coefficients, constant term first, including the leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

struct LogTables {
    /// exp[i] = g^i for 0 <= i < 2*(size-1); doubled to skip a reduction.
    exp: Vec<u32>,
    /// log[a] for a != 0.
    log: Vec<u32>,
    /// zech[d] = log(1 + g^d), ZECH_NONE when 1 + g^d = 0. Odd p only.
    zech: Option<Vec<u32>>,
}

struct FieldRepr {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    size: u64,
    /// x^m reduced mod the modulus, as m digits.
    xm_red: Vec<u64>,
    /// Modulus as a bitmask, p = 2 only.
    modulus_bits: u64,
    tables: Option<LogTables>,
}

/// A finite field GF(p^m) with its deterministically chosen modulus.
///
/// Cloning is cheap; two fields with equal `(p, m)` are the same field.
#[derive(Clone)]
pub struct Field {
    repr: Arc<FieldRepr>,
}

/// An element of a [`Field`], carrying a handle to its owner.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    raw: u64,
}

fn decode(mut raw: u64, p: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = raw % p;
        raw /= p;
    }
}

fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Inverse modulo a prime, for nonzero residues.
pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    zp_poly::inv_mod_p(a, p)
}

/// Splits a prime power into (p, e). Errors when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = *prime_factors(q).first().unwrap();
    let mut e = 0u32;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    if v != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

// ---- dense polynomial helpers over GF(p), little-endian digit vectors ----

mod zp_poly {
    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        // Fermat; p prime, a != 0.
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
        // f monic
        let df = f.len() - 1;
        trim(&mut a);
        while a.len() > df {
            let c = *a.last().unwrap();
            let k = a.len() - 1 - df;
            if c != 0 {
                for (i, &fc) in f.iter().enumerate() {
                    let idx = k + i;
                    let sub = c * fc % p;
                    a[idx] = (a[idx] + p - sub) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(prod, f, p)
    }

    /// x^e mod f by binary exponentiation.
    pub fn pow_x_mod(e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut base = rem(vec![0, 1], f, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic before taking the remainder
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = inv_mod_p(lead, p);
                for c in b.iter_mut() {
                    *c = *c * inv % p;
                }
            }
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Irreducibility over GF(p) for a monic polynomial given by its digits.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u64;
    if m == 1 {
        return true;
    }
    // x^(p^m) must equal x mod f
    let pm = p.pow(m as u32);
    let xq = zp_poly::pow_x_mod(pm, f, p);
    let x = zp_poly::rem(vec![0, 1], f, p);
    if xq != x {
        return false;
    }
    // for every prime l | m: gcd(x^(p^(m/l)) - x, f) must be constant
    for l in prime_factors(m) {
        let e = p.pow((m / l) as u32);
        let mut h = zp_poly::pow_x_mod(e, f, p);
        // h -= x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        zp_poly::trim(&mut h);
        let g = zp_poly::gcd(f.to_vec(), h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// First irreducible monic degree-m polynomial in the deterministic order.
fn find_modulus(p: u64, m: usize) -> Vec<u64> {
    let total = p.pow(m as u32);
    let mut digits = vec![0u64; m + 1];
    digits[m] = 1;
    for v in 0..total {
        decode(v, p, &mut digits[..m]);
        if is_irreducible(&digits, p) {
            return digits;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists");
}

impl FieldRepr {
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return a * b % self.p;
        }
        if self.p == 2 {
            return self.mul_bits(a, b);
        }
        self.mul_digits(a, b)
    }

    fn mul_bits(&self, a: u64, b: u64) -> u64 {
        let mut prod = 0u64;
        let mut x = a;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        self.reduce_bits(prod)
    }

    fn reduce_bits(&self, mut v: u64) -> u64 {
        let m = self.m as u32;
        while v >> m != 0 {
            let k = 63 - v.leading_zeros();
            v ^= self.modulus_bits << (k - m);
        }
        v
    }

    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let m = self.m;
        let p = self.p;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        decode(a, p, &mut da[..m]);
        decode(b, p, &mut db[..m]);
        let mut prod = [0u64; 63];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += da[i] * db[j];
            }
        }
        for k in (m..=2 * m - 2).rev() {
            let c = prod[k] % p;
            prod[k] = 0;
            if c != 0 {
                for (idx, &rc) in self.xm_red.iter().enumerate() {
                    prod[k - m + idx] += c * rc;
                }
            }
        }
        let mut out = [0u64; 32];
        for i in 0..m {
            out[i] = prod[i] % p;
        }
        encode(&out[..m], p)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let m = self.m;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        decode(a, self.p, &mut da[..m]);
        decode(b, self.p, &mut db[..m]);
        for i in 0..m {
            da[i] = (da[i] + db[i]) % self.p;
        }
        encode(&da[..m], self.p)
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn order(&self) -> u64 {
        self.size - 1
    }

    // ---- dispatching raw ops ----

    fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        if let Some(t) = &self.tables {
            if a == 0 {
                return b;
            }
            if b == 0 {
                return a;
            }
            let zech = t.zech.as_ref().unwrap();
            let order = self.order();
            let la = t.log[a as usize] as u64;
            let lb = t.log[b as usize] as u64;
            let d = (lb + order - la) % order;
            let z = zech[d as usize];
            if z == ZECH_NONE {
                return 0;
            }
            return t.exp[(la + z as u64) as usize] as u64;
        }
        self.add_slow(a, b)
    }

    fn neg_raw(&self, a: u64) -> u64 {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.m == 1 {
            return self.p - a;
        }
        if let Some(t) = &self.tables {
            // -1 = g^((size-1)/2) in odd characteristic
            let half = self.order() / 2;
            return t.exp[(t.log[a as usize] as u64 + half) as usize] as u64;
        }
        let m = self.m;
        let mut da = [0u64; 32];
        decode(a, self.p, &mut da[..m]);
        for d in da[..m].iter_mut() {
            if *d != 0 {
                *d = self.p - *d;
            }
        }
        encode(&da[..m], self.p)
    }

    fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        self.add_raw(a, self.neg_raw(b))
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return a * b % self.p;
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64;
        }
        if self.p == 2 {
            return self.mul_bits(a, b);
        }
        self.mul_digits(a, b)
    }

    fn inv_raw(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero");
        if let Some(t) = &self.tables {
            let order = self.order();
            return t.exp[(order - t.log[a as usize] as u64) as usize] as u64;
        }
        self.pow_slow(a, self.size - 2)
    }

    fn pow_raw(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let Some(t) = &self.tables {
            let order = self.order() as u128;
            let l = t.log[a as usize] as u128 * (e as u128 % order) % order;
            return t.exp[l as usize] as u64;
        }
        self.pow_slow(a, e)
    }

    fn frob_raw(&self, a: u64, e: u32) -> u64 {
        let e = (e as usize % self.m) as u32;
        if e == 0 || a == 0 || a == 1 {
            return a;
        }
        let pe = self.p.pow(e);
        self.pow_raw(a, pe)
    }
}

fn build_tables(repr: &FieldRepr) -> LogTables {
    let size = repr.size as usize;
    let order = repr.size - 1;
    let factors = prime_factors(order);
    let mut gen = 0u64;
    'search: for cand in 2..repr.size {
        for &f in &factors {
            if repr.pow_slow(cand, order / f) == 1 {
                continue 'search;
            }
        }
        gen = cand;
        break;
    }
    assert!(gen != 0, "multiplicative group has a generator");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; size];
    let mut cur = 1u64;
    for i in 0..order as usize {
        exp[i] = cur as u32;
        exp[i + order as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = repr.mul_slow(cur, gen);
    }
    let zech = if repr.p != 2 {
        let mut z = vec![0u32; order as usize];
        for (d, zd) in z.iter_mut().enumerate() {
            let s = repr.add_slow(1, exp[d] as u64);
            *zd = if s == 0 { ZECH_NONE } else { log[s as usize] };
        }
        Some(z)
    } else {
        None
    };
    LogTables { exp, log, zech }
}

static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();

impl Field {
    /// Constructs GF(p^m) with the deterministic modulus. Idempotent:
    /// repeated calls return the same shared field.
    pub fn new(p: u64, m: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (0..m).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&s| s <= MAX_FIELD_SIZE)
        });
        let size = size.ok_or(Error::FieldTooLarge { p, m })?;

        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = registry.lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }

        let modulus = find_modulus(p, m);
        let mut xm_red = vec![0u64; m];
        for i in 0..m {
            xm_red[i] = (p - modulus[i]) % p;
        }
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut repr = FieldRepr {
            p,
            m,
            modulus,
            size,
            xm_red,
            modulus_bits,
            tables: None,
        };
        if m > 1 && size <= TABLE_LIMIT {
            repr.tables = Some(build_tables(&repr));
        }
        let field = Field { repr: Arc::new(repr) };
        registry
            .lock()
            .unwrap()
            .entry((p, m))
            .or_insert_with(|| field.clone());
        Ok(field)
    }

    /// Reconstructs a field from a serialized spec, rejecting any modulus
    /// that differs from the deterministic one.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let field = Field::new(spec.p, spec.m)?;
        if field.repr.modulus != spec.modulus {
            return Err(Error::ModulusMismatch {
                expected: field.repr.modulus.clone(),
                found: spec.modulus.clone(),
            });
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.repr.p
    }

    pub fn degree(&self) -> usize {
        self.repr.m
    }

    pub fn size(&self) -> u64 {
        self.repr.size
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.repr.p,
            m: self.repr.m,
            modulus: self.repr.modulus.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), raw: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), raw: 1 }
    }

    /// The class of the variable t of the modulus.
    pub fn gen(&self) -> FieldElement {
        if self.repr.m == 1 {
            // t = -c0 in the prime field
            let c0 = self.repr.modulus[0];
            return FieldElement {
                field: self.clone(),
                raw: (self.repr.p - c0) % self.repr.p,
            };
        }
        FieldElement { field: self.clone(), raw: self.repr.p }
    }

    /// The residue of an integer in the prime subfield.
    pub fn scalar(&self, n: u64) -> FieldElement {
        FieldElement { field: self.clone(), raw: n % self.repr.p }
    }

    /// Element from power-basis coefficients, constant term first. At most
    /// `m` entries, each below `p`; missing entries are zero.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.repr.m || coeffs.iter().any(|&c| c >= self.repr.p) {
            return Err(Error::InvalidCoefficients {
                p: self.repr.p,
                m: self.repr.m,
            });
        }
        let mut digits = vec![0u64; self.repr.m];
        digits[..coeffs.len()].copy_from_slice(coeffs);
        Ok(FieldElement {
            field: self.clone(),
            raw: encode(&digits, self.repr.p),
        })
    }

    /// Element from its packed index `sum c_i p^i`.
    pub fn element_from_index(&self, index: u64) -> Result<FieldElement> {
        if index >= self.repr.size {
            return Err(Error::IndexOutOfRange(index));
        }
        Ok(FieldElement { field: self.clone(), raw: index })
    }

    /// All field elements, in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        let f = self.clone();
        (0..self.repr.size).map(move |raw| FieldElement { field: f.clone(), raw })
    }

    /// All nonzero elements, in increasing index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        let f = self.clone();
        (1..self.repr.size).map(move |raw| FieldElement { field: f.clone(), raw })
    }

    pub(crate) fn raw_add(&self, a: u64, b: u64) -> u64 {
        self.repr.add_raw(a, b)
    }

    pub(crate) fn raw_sub(&self, a: u64, b: u64) -> u64 {
        self.repr.sub_raw(a, b)
    }

    pub(crate) fn raw_neg(&self, a: u64) -> u64 {
        self.repr.neg_raw(a)
    }

    pub(crate) fn raw_mul(&self, a: u64, b: u64) -> u64 {
        self.repr.mul_raw(a, b)
    }

    pub(crate) fn raw_inv(&self, a: u64) -> u64 {
        self.repr.inv_raw(a)
    }

    pub(crate) fn raw_pow(&self, a: u64, e: u64) -> u64 {
        self.repr.pow_raw(a, e)
    }

    pub(crate) fn raw_frob(&self, a: u64, e: u32) -> u64 {
        self.repr.frob_raw(a, e)
    }

    pub(crate) fn elem(&self, raw: u64) -> FieldElement {
        debug_assert!(raw < self.repr.size);
        FieldElement { field: self.clone(), raw }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.p == other.repr.p
                && self.repr.m == other.repr.m
                && self.repr.modulus == other.repr.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.repr.p, self.repr.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.repr.p, self.repr.m)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Packed index `sum c_i p^i` of the coefficient sequence.
    pub fn index(&self) -> u64 {
        self.raw
    }

    /// Power-basis coefficients, constant term first, length `m`.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.field.repr.m];
        decode(self.raw, self.field.repr.p, &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        self.field.elem(self.field.repr.inv_raw(self.raw))
    }

    /// x^e, with negative exponents meaning powers of the inverse.
    /// Panics when x = 0 and e < 0.
    pub fn pow(&self, e: i64) -> FieldElement {
        if e < 0 {
            return self.inv().pow(-e);
        }
        self.field.elem(self.field.repr.pow_raw(self.raw, e as u64))
    }

    /// x^(p^e), the e-fold Frobenius.
    pub fn frobenius(&self, e: u32) -> FieldElement {
        self.field.elem(self.field.repr.frob_raw(self.raw, e))
    }

    /// Whether the element lies in the subfield GF(p^k); `k` must divide `m`.
    pub fn in_subfield(&self, k: usize) -> Result<bool> {
        let m = self.field.repr.m;
        if k == 0 || m % k != 0 {
            return Err(Error::NotASubfieldDegree { k, m });
        }
        Ok(self.frobenius(k as u32).raw == self.raw)
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "operands belong to different fields: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.repr.p.hash(state);
        self.field.repr.m.hash(state);
        self.raw.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.field, self.raw)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.assert_same_field(rhs);
                self.field.elem(self.field.repr.$raw(self.raw, rhs.raw))
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_raw);
impl_binop!(Sub, sub, sub_raw);
impl_binop!(Mul, mul, mul_raw);

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let inv = self.field.repr.inv_raw(rhs.raw);
        self.field.elem(self.field.repr.mul_raw(self.raw, inv))
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(self.field.repr.neg_raw(self.raw))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// ---- additive (Frobenius-linear) equations ----

/// Solver for one additive map `L(x) = sum a_i x^(p^{e_i})`, reusable
/// across many right-hand sides. The map is linear over GF(p), so the
/// solver row-reduces its matrix on the power basis once and answers each
/// `L(x) = c` with a particular solution plus the kernel.
pub struct AdditiveSolver {
    field: Field,
    /// Row-reduced transform E with R = E*M, stored row-major, m x m.
    transform: Vec<Vec<u64>>,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
    rank: usize,
    /// Kernel basis as packed indices.
    kernel: Vec<u64>,
    /// All p scalar multiples of each kernel vector.
    kernel_multiples: Vec<Vec<u64>>,
}

impl AdditiveSolver {
    pub fn new(field: &Field, terms: &[(FieldElement, u32)]) -> Result<AdditiveSolver> {
        if terms.is_empty() {
            return Err(Error::EmptyAdditiveMap);
        }
        for (c, _) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let p = field.characteristic();
        let m = field.degree();
        // columns are L(t^j) in digit form; t^j has index p^j
        let mut matrix = vec![vec![0u64; m]; m];
        for j in 0..m {
            let basis = field.elem(p.pow(j as u32));
            let mut image = field.zero();
            for (a, e) in terms {
                image = image + a * &basis.frobenius(*e);
            }
            let digits = image.coeffs();
            for i in 0..m {
                matrix[i][j] = digits[i];
            }
        }
        // row reduce [matrix | I]
        let mut transform = vec![vec![0u64; m]; m];
        for (i, row) in transform.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m {
            let Some(pr) = (rank..m).find(|&r| matrix[r][col] != 0) else {
                continue;
            };
            matrix.swap(rank, pr);
            transform.swap(rank, pr);
            let inv = zp_poly::inv_mod_p(matrix[rank][col], p);
            for v in matrix[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for v in transform[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..m {
                if r != rank && matrix[r][col] != 0 {
                    let c = matrix[r][col];
                    for j in 0..m {
                        matrix[r][j] = (matrix[r][j] + (p - c) * matrix[rank][j]) % p;
                        transform[r][j] = (transform[r][j] + (p - c) * transform[rank][j]) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m {
                break;
            }
        }
        // kernel basis from the free columns
        let mut kernel = Vec::new();
        for col in 0..m {
            if pivots.contains(&col) {
                continue;
            }
            let mut v = vec![0u64; m];
            v[col] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - matrix[row][col]) % p;
            }
            kernel.push(encode(&v, p));
        }
        let kernel_multiples = kernel
            .iter()
            .map(|&k| (0..p).map(|s| field.raw_mul(k, s)).collect())
            .collect();
        Ok(AdditiveSolver {
            field: field.clone(),
            transform,
            pivots,
            rank,
            kernel,
            kernel_multiples,
        })
    }

    pub fn kernel_size(&self) -> u64 {
        self.field
            .characteristic()
            .pow(self.kernel.len() as u32)
    }

    /// All solutions of `L(x) = c`, sorted by index. Empty when `c` is not
    /// in the image; otherwise exactly `kernel_size()` solutions.
    pub fn solve(&self, c: &FieldElement) -> Vec<FieldElement> {
        assert!(c.field() == &self.field, "rhs from a different field");
        let p = self.field.characteristic();
        let m = self.field.degree();
        let digits = c.coeffs();
        let mut w = vec![0u64; m];
        for (i, row) in self.transform.iter().enumerate() {
            let mut acc = 0u64;
            for j in 0..m {
                acc += row[j] * digits[j];
            }
            w[i] = acc % p;
        }
        // consistency: rows past the rank must vanish
        if w[self.rank..].iter().any(|&x| x != 0) {
            return Vec::new();
        }
        let mut v = vec![0u64; m];
        for (row, &pc) in self.pivots.iter().enumerate() {
            v[pc] = w[row];
        }
        let particular = encode(&v, p);
        let mut raws = Vec::with_capacity(self.kernel_size() as usize);
        let k = self.kernel.len();
        let mut counters = vec![0u64; k];
        loop {
            let mut x = particular;
            for (i, &ci) in counters.iter().enumerate() {
                x = self.field.raw_add(x, self.kernel_multiples[i][ci as usize]);
            }
            raws.push(x);
            let mut i = 0;
            loop {
                if i == k {
                    raws.sort_unstable();
                    return raws.into_iter().map(|r| self.field.elem(r)).collect();
                }
                counters[i] += 1;
                if counters[i] < p {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }
}

/// Solves `L(x) = c` for the additive map described by
/// `(coefficient, Frobenius exponent)` pairs.
pub fn solve_additive(terms: &[(FieldElement, u32)], c: &FieldElement) -> Result<Vec<FieldElement>> {
    let field = c.field().clone();
    let solver = AdditiveSolver::new(&field, terms)?;
    Ok(solver.solve(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility: trial division by every monic divisor
    /// of degree up to m/2. Independent of the Rabin test used above.
    fn irreducible_by_trial_division(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let total = p.pow(d as u32);
            for v in 0..total {
                let mut g = vec![0u64; d + 1];
                decode(v, p, &mut g[..d]);
                g[d] = 1;
                let r = zp_poly::rem(f.to_vec(), &g, p);
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn first_irreducible_by_scan(p: u64, m: usize) -> Vec<u64> {
        let total = p.pow(m as u32);
        for v in 0..total {
            let mut f = vec![0u64; m + 1];
            decode(v, p, &mut f[..m]);
            f[m] = 1;
            if irreducible_by_trial_division(&f, p) {
                return f;
            }
        }
        panic!("no irreducible polynomial found");
    }

    #[test]
    fn prime_field_modulus_is_t() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.spec().modulus, vec![0, 1]);
        assert_eq!(f.size(), 2);
    }

    #[test]
    fn gf64_modulus_matches_exhaustive_scan() {
        let f = Field::new(2, 6).unwrap();
        // t^6 + t + 1
        assert_eq!(f.spec().modulus, vec![1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(f.spec().modulus, first_irreducible_by_scan(2, 6));
    }

    #[test]
    fn gf729_modulus_matches_exhaustive_scan() {
        let f = Field::new(3, 6).unwrap();
        assert_eq!(f.spec().modulus, first_irreducible_by_scan(3, 6));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = Field::new(5, 3).unwrap();
        let b = Field::new(5, 3).unwrap();
        assert_eq!(a.spec(), b.spec());
        assert_eq!(a, b);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Field::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(Field::new(2, 0), Err(Error::ZeroDegree)));
        assert!(matches!(
            Field::new(2, 64),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn reduction_of_t6_in_gf64() {
        // t^5 * t = t^6 = t + 1 under t^6 + t + 1
        let f = Field::new(2, 6).unwrap();
        let t5 = f.gen().pow(5);
        let prod = t5 * f.gen();
        assert_eq!(prod.coeffs(), vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn inverse_and_pow_agree() {
        for (p, m) in [(2, 6), (3, 4), (5, 2), (7, 1), (2, 12)] {
            let f = Field::new(p, m).unwrap();
            let order = f.size() - 1;
            for x in f.nonzero_elements().step_by(7.max(1)) {
                assert!((&x * &x.inv()).is_one());
                assert!(x.pow(order as i64).is_one());
                assert_eq!(x.pow(-1), x.inv());
                assert_eq!(x.pow(-3), x.inv().pow(3));
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_periodic() {
        let f = Field::new(3, 6).unwrap();
        let a = f.element_from_index(123).unwrap();
        let b = f.element_from_index(456).unwrap();
        for e in 0..8 {
            assert_eq!(
                (&a + &b).frobenius(e),
                a.frobenius(e) + b.frobenius(e)
            );
            assert_eq!(
                (&a * &b).frobenius(e),
                a.frobenius(e) * b.frobenius(e)
            );
        }
        assert_eq!(a.frobenius(6), a);
        assert_eq!(a.frobenius(2).frobenius(3), a.frobenius(5));
    }

    #[test]
    fn frobenius_of_t_is_square() {
        let f = Field::new(2, 6).unwrap();
        assert_eq!(f.gen().frobenius(1), f.gen().pow(2));
    }

    #[test]
    fn subfield_membership_counts() {
        let f = Field::new(2, 6).unwrap();
        assert!(f.zero().in_subfield(2).unwrap());
        let count = f
            .elements()
            .filter(|x| x.in_subfield(2).unwrap())
            .count();
        assert_eq!(count, 4);
        let all = f
            .elements()
            .filter(|x| x.in_subfield(6).unwrap())
            .count();
        assert_eq!(all, 64);
        assert!(matches!(
            f.one().in_subfield(4),
            Err(Error::NotASubfieldDegree { .. })
        ));
    }

    #[test]
    fn solve_additive_identity_map() {
        let f = Field::new(3, 4).unwrap();
        let c = f.element_from_index(47).unwrap();
        let sols = solve_additive(&[(f.one(), 0)], &c).unwrap();
        assert_eq!(sols, vec![c]);
    }

    #[test]
    fn solve_additive_subfield_kernel() {
        // x^4 - x = x^(2^2) - x over GF(2^6): kernel is GF(4)
        let f = Field::new(2, 6).unwrap();
        let terms = [(f.one(), 2), (-f.one(), 0)];
        let sols = solve_additive(&terms, &f.zero()).unwrap();
        assert_eq!(sols.len(), 4);
        for s in &sols {
            assert!(s.in_subfield(2).unwrap());
        }
    }

    #[test]
    fn solve_additive_matches_exhaustive_scan() {
        // x^2 + x = t over GF(2^6), checked against a scan of all 64 elements
        let f = Field::new(2, 6).unwrap();
        let t = f.gen();
        let terms = [(f.one(), 1), (f.one(), 0)];
        let sols = solve_additive(&terms, &t).unwrap();
        let scan: Vec<FieldElement> = f
            .elements()
            .filter(|x| x.frobenius(1) + x == t)
            .collect();
        assert_eq!(sols, scan);
        assert!(sols.is_empty() || sols.len() == 2);
        // and across several right-hand sides the count is 0 or kernel size
        let solver = AdditiveSolver::new(&f, &terms).unwrap();
        for c in f.elements() {
            let sols = solver.solve(&c);
            assert!(sols.len() == 0 || sols.len() as u64 == solver.kernel_size());
            for s in &sols {
                assert_eq!(s.frobenius(1) + s, c);
            }
        }
    }

    #[test]
    fn solve_additive_rejects_empty_map() {
        let f = Field::new(2, 2).unwrap();
        assert!(matches!(
            solve_additive(&[], &f.one()),
            Err(Error::EmptyAdditiveMap)
        ));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let a = Field::new(2, 2).unwrap().one();
        let b = Field::new(2, 3).unwrap().one();
        let _ = a + b;
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn zero_inverse_panics() {
        let f = Field::new(3, 2).unwrap();
        let _ = f.zero().inv();
    }

    #[test]
    fn spec_round_trip() {
        let f = Field::new(3, 6).unwrap();
        let json = serde_json::to_string(&f.spec()).unwrap();
        let spec: FieldSpec = serde_json::from_str(&json).unwrap();
        let g = Field::from_spec(&spec).unwrap();
        assert_eq!(f, g);
        // a tampered modulus is rejected
        let mut bad = f.spec();
        bad.modulus[0] = (bad.modulus[0] + 1) % 3;
        assert!(Field::from_spec(&bad).is_err());
    }

    #[test]
    fn large_binary_field_arithmetic() {
        let f = Field::new(2, 20).unwrap();
        let x = f.element_from_index(987654).unwrap();
        assert!((&x * &x.inv()).is_one());
        assert_eq!(x.frobenius(20), x);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }
}
