//! Exact arithmetic in GF(p^e) and in extension towers GF(q^k) ⊃ GF(q) ⊃ GF(p).
//!
//! Every element of a field is encoded as an integer in `[0, q)`: the
//! positional value of its coefficient vector over the base field, with the
//! base-field coefficients themselves encoded the same way. Unwinding the
//! recursion, the encoding is the base-`p` expansion of the element's
//! coordinates over the prime field, so addition is digitwise mod `p`
//! (XOR in characteristic 2) at every level of a tower.
//!
//! Each field is `x` adjoined to its base modulo a primitive polynomial, so
//! the class of `x` is a primitive element. The modulus is the first
//! primitive monic polynomial in lexicographic order of its coefficient
//! vector `(c_0, ..., c_{e-1})`, constant term most significant. A prime
//! field is the degree-one case `x + c_0` over itself, whose root is the
//! smallest primitive root mod `p`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};

/// Log/antilog tables are only built for fields up to this order.
pub const TABLE_LIMIT: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u64 = 256;

struct LogTables {
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[i] = ω^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
}

pub struct FiniteField {
    characteristic: u32,
    degree: usize,
    base: Option<Arc<FiniteField>>,
    modulus: Vec<u32>,
    order: u64,
    add_table: Option<Vec<u32>>,
    tables: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("order", &self.order)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("base", &self.base.as_ref().map(|b| b.order))
            .finish()
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.characteristic == other.characteristic
                && self.order == other.order
                && self.degree == other.degree
                && self.modulus == other.modulus
                && self.base == other.base)
    }
}

impl Eq for FiniteField {}

/// Builds GF(p^e) (no base) or a degree-`e` extension of `base`.
pub fn make_field(p: u32, e: usize, base: Option<Arc<FiniteField>>) -> Result<Arc<FiniteField>> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    match base {
        Some(base) => {
            if base.characteristic != p {
                return Err(Error::CharacteristicMismatch {
                    base: base.characteristic,
                    requested: p,
                });
            }
            FiniteField::extension(base, e)
        }
        None => {
            let prime = FiniteField::prime(p)?;
            if e == 1 {
                Ok(prime)
            } else {
                FiniteField::extension(prime, e)
            }
        }
    }
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Arc<FiniteField>> {
        if !arith::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let order = p as u64;
        let factors = arith::prime_factors(order - 1);
        let c0 = (0..p)
            .find(|&c| {
                let root = (p - c) % p;
                root != 0 && prime_field_order(root, p, &factors) == order - 1
            })
            .ok_or(Error::NoPrimitivePolynomial {
                base_order: order,
                degree: 1,
            })?;
        Ok(Arc::new(FiniteField {
            characteristic: p,
            degree: 1,
            base: None,
            modulus: vec![c0, 1],
            order,
            add_table: None,
            tables: OnceLock::new(),
        }))
    }

    pub fn extension(base: Arc<FiniteField>, degree: usize) -> Result<Arc<FiniteField>> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (base.order as u128).pow(degree as u32);
        if order > u32::MAX as u128 {
            return Err(Error::FieldTooLarge(order));
        }
        let modulus = primitive_modulus(&base, degree)?;
        let mut field = FiniteField {
            characteristic: base.characteristic,
            degree,
            base: Some(base),
            modulus,
            order: order as u64,
            add_table: None,
            tables: OnceLock::new(),
        };
        if field.characteristic != 2 && field.order <= ADD_TABLE_LIMIT {
            let q = field.order as u32;
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.digit_add(a, b);
                }
            }
            field.add_table = Some(table);
        }
        Ok(Arc::new(field))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        self.base.as_ref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    /// Order of the immediate base field (`p` for a prime field).
    pub fn base_order(&self) -> u64 {
        self.base.as_ref().map_or(self.characteristic as u64, |b| b.order)
    }

    /// Monic modulus over the base, low-order coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, value: u32) -> bool {
        (value as u64) < self.order
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The class of `x` modulo the modulus.
    pub fn primitive_value(&self) -> u32 {
        match &self.base {
            None => (self.characteristic - self.modulus[0]) % self.characteristic,
            Some(base) => {
                if self.degree == 1 {
                    base.neg(self.modulus[0])
                } else {
                    base.order as u32
                }
            }
        }
    }

    /// Coefficient vector over the base field, low-order first.
    pub fn coefficients(&self, value: u32) -> Vec<u32> {
        let b = self.base_order() as u32;
        if self.base.is_none() {
            return vec![value];
        }
        let mut out = Vec::with_capacity(self.degree);
        let mut v = value;
        for _ in 0..self.degree {
            out.push(v % b);
            v /= b;
        }
        out
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        if self.base.is_none() {
            return coeffs.first().copied().unwrap_or(0);
        }
        let b = self.base_order() as u32;
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * b + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.characteristic == 2 {
            return a ^ b;
        }
        if self.base.is_none() {
            let s = a + b;
            return if s >= self.characteristic {
                s - self.characteristic
            } else {
                s
            };
        }
        match &self.add_table {
            Some(t) => t[(a as u64 * self.order + b as u64) as usize],
            None => self.digit_add(a, b),
        }
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.characteristic;
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.characteristic;
        if p == 2 || a == 0 {
            return a;
        }
        if self.base.is_none() {
            return p - a;
        }
        let mut v = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while v != 0 {
            let d = v % p;
            out += ((p - d) % p) * place;
            v /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.base.is_none() {
            return ((a as u64 * b as u64) % self.characteristic as u64) as u32;
        }
        if let Some(t) = self.tables() {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.poly_mul(a, b)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let base = self.base.as_ref().expect("extension field");
        let pa = self.coefficients(a);
        let pb = self.coefficients(b);
        let prod = poly::mul(base, &pa, &pb);
        let r = poly::rem(base, &prod, &self.modulus);
        let mut coeffs = r;
        coeffs.resize(self.degree, 0);
        self.from_coefficients(&coeffs)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.base.is_some() {
            if let Some(t) = self.tables() {
                let q1 = (self.order - 1) as u32;
                return Some(t.exp[((q1 - t.log[a as usize]) % q1) as usize]);
            }
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut ord = self.order - 1;
        for r in arith::prime_factors(self.order - 1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Some(ord)
    }

    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::NotAnElement {
                value: value as u64,
                order: self.order,
            });
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            value,
        })
    }

    pub fn primitive_element(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            value: self.primitive_value(),
        }
    }

    fn tables(&self) -> Option<&LogTables> {
        self.tables
            .get_or_init(|| {
                if self.base.is_none() || self.order > TABLE_LIMIT {
                    None
                } else {
                    Some(self.build_tables())
                }
            })
            .as_ref()
    }

    fn build_tables(&self) -> LogTables {
        let base = self.base.as_ref().expect("extension field");
        let q1 = (self.order - 1) as usize;
        let mut log = vec![0u32; self.order as usize];
        let mut exp = vec![0u32; 2 * q1];
        let e = self.degree;
        let mut c = vec![0u32; e];
        c[0] = 1;
        for i in 0..q1 {
            let v = self.from_coefficients(&c);
            exp[i] = v;
            exp[i + q1] = v;
            log[v as usize] = i as u32;
            // multiply by x and reduce by the monic modulus
            let carry = c[e - 1];
            for j in (1..e).rev() {
                c[j] = base.sub(c[j - 1], base.mul(carry, self.modulus[j]));
            }
            c[0] = base.neg(base.mul(carry, self.modulus[0]));
        }
        LogTables { log, exp }
    }
}

fn prime_field_order(a: u32, p: u32, factors: &[u64]) -> u64 {
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r
    };
    let mut ord = (p - 1) as u64;
    for &r in factors {
        while ord.is_multiple_of(r) && pow(a as u64, ord / r) == 1 {
            ord /= r;
        }
    }
    ord
}

/// First primitive monic polynomial of `degree` over `base` in the
/// canonical enumeration order. Low-order coefficient first, monic.
pub fn primitive_modulus(base: &FiniteField, degree: usize) -> Result<Vec<u32>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = base.order();
    let total = (q as u128).pow(degree as u32);
    if total > (1u128 << 40) {
        return Err(Error::FieldTooLarge(total));
    }
    let group_order = (total - 1) as u64;
    let factors = arith::prime_factors(group_order);
    for idx in 0..total as u64 {
        let mut coeffs = vec![0u32; degree + 1];
        let mut v = idx;
        for j in (0..degree).rev() {
            coeffs[j] = (v % q) as u32;
            v /= q;
        }
        coeffs[degree] = 1;
        if poly::is_primitive(base, &coeffs, group_order, &factors) {
            return Ok(coeffs);
        }
    }
    Err(Error::NoPrimitivePolynomial { base_order: q, degree })
}

/// Dense polynomials over a field, coefficients low-order first.
pub mod poly {
    use super::FiniteField;

    pub fn trim(p: &mut Vec<u32>) {
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
    }

    pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![0];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a monic polynomial `m`.
    pub fn rem(f: &FiniteField, a: &[u32], m: &[u32]) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (j, &c) in m.iter().enumerate() {
                    r[shift + j] = f.sub(r[shift + j], f.mul(lead, c));
                }
            }
            r.pop();
            if r.is_empty() {
                r.push(0);
            }
        }
        trim(&mut r);
        r
    }

    pub fn pow_mod(f: &FiniteField, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(f, &mul(f, &result, &b), m);
            }
            b = rem(f, &mul(f, &b, &b), m);
            e >>= 1;
        }
        result
    }

    fn is_one(p: &[u32]) -> bool {
        p.len() == 1 && p[0] == 1
    }

    /// Whether the class of `x` has order exactly `group_order` modulo the
    /// monic polynomial `m`. In a quotient ring that is not a field the unit
    /// group is smaller, so this also certifies irreducibility.
    pub fn is_primitive(f: &FiniteField, m: &[u32], group_order: u64, factors: &[u64]) -> bool {
        if m[0] == 0 {
            return false;
        }
        let x: Vec<u32> = if m.len() == 2 {
            // degree one: x is congruent to -m0
            vec![f.neg(m[0])]
        } else {
            vec![0, 1]
        };
        if !is_one(&pow_mod(f, &x, group_order, m)) {
            return false;
        }
        factors.iter().all(|&r| !is_one(&pow_mod(f, &x, group_order / r, m)))
    }
}

/// A value together with the field it belongs to; all arithmetic is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<FiniteField>,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    pub fn element_order(&self) -> Result<u64> {
        self.field.order_of(self.value).ok_or(Error::ZeroElement)
    }
}
