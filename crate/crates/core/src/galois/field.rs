//! Finite fields `GF(p^e)` addressed by integer codes.
//!
//! An element of `GF(p^e)` is stored as the integer whose base-`p` digits are
//! the coefficients of its polynomial representative, constant term least
//! significant. Code `0` is the additive identity and code `1` the
//! multiplicative identity. Multiplication goes through discrete log tables
//! built from a primitive element found at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const DEFAULT_ORDER_CAP: u32 = 1 << 16;

/// Field element code, always `< q`.
pub type Elem = u32;

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, constant term first, length `e + 1`. Empty for prime fields.
    modulus: Vec<u32>,
    /// Addition table for `q <= 256`, row-major `q x q`.
    add_table: Option<Vec<u16>>,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `F_q`, `q = p^e`. Cheap to clone; all clones share tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.q)
        } else {
            write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.e, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u32;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let (mut r, mut e) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (k, &mk) in m.iter().enumerate() {
            let sub = (c as u64 * mk as u64 % p as u64) as u32;
            let slot = &mut r[shift + k];
            *slot = (*slot + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let quo = r / new_r;
        (t, new_t) = (new_t, t - quo * new_t);
        (r, new_r) = (new_r, r - quo * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

fn digits(code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Whether the polynomial (constant term first, nonzero leading coefficient)
/// is irreducible over `F_p`, by trial division with every monic polynomial
/// of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    poly_trim(&mut f);
    let deg = match f.len() {
        0 => return false,
        n => n - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn poly_mulmod_code(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0u32; 2 * e as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(e as usize, 0);
    undigits(&r, p)
}

fn element_order(g: u32, one_mul: impl Fn(u32, u32) -> u32, q: u32) -> u32 {
    let mut x = g;
    let mut k = 1u32;
    while x != 1 {
        x = one_mul(x, g);
        k += 1;
        if k > q {
            return 0;
        }
    }
    k
}

/// Deterministic default modulus: the monic irreducible polynomial of degree
/// `e` with the smallest low-coefficient code for which `x` is primitive.
fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let q = p.pow(e);
    for low in 0..q {
        let mut m = digits(low, p, e);
        m.push(1);
        if m[0] == 0 || !is_irreducible(&m, p) {
            continue;
        }
        let ord = element_order(p, |a, b| poly_mulmod_code(a, b, p, e, &m), q);
        if ord == q - 1 {
            return m;
        }
    }
    unreachable!("primitive polynomials exist for every (p, e)")
}

impl FieldSpec {
    /// Builds `GF(p^e)`. `modulus` (constant term first, degree `e`) is
    /// required to be irreducible; `None` selects the built-in default.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, e, modulus, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u32, e: u32, modulus: Option<&[u32]>, order_cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= order_cap as u64)
            .ok_or_else(|| Error::Field(format!("field order {p}^{e} exceeds cap {order_cap}")))?
            as u32;

        let modulus = if e == 1 {
            if modulus.is_some_and(|m| !m.is_empty()) {
                return Err(Error::Field("prime fields take no modulus".into()));
            }
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let mut m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                    poly_trim(&mut m);
                    if m.len() != e as usize + 1 {
                        return Err(Error::Field(format!("modulus must have degree {e}")));
                    }
                    if !is_irreducible(&m, p) {
                        return Err(Error::Field(format!("modulus {m:?} is reducible over GF({p})")));
                    }
                    let inv = mod_inv(m[e as usize], p);
                    m.iter().map(|&c| (c as u64 * inv as u64 % p as u64) as u32).collect()
                }
                None => default_modulus(p, e),
            }
        };

        let mul = |a: u32, b: u32| -> u32 {
            if e == 1 {
                (a as u64 * b as u64 % p as u64) as u32
            } else {
                poly_mulmod_code(a, b, p, e, &modulus)
            }
        };

        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| element_order(g, mul, q) == q - 1)
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = k as u32;
            x = mul(x, generator);
        }

        let raw_add = |a: u32, b: u32| -> u32 {
            if e == 1 {
                (a + b) % p
            } else {
                let (da, db) = (digits(a, p, e), digits(b, p, e));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                undigits(&s, p)
            }
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                if e == 1 {
                    (p - a) % p
                } else {
                    let d: Vec<u32> = digits(a, p, e).iter().map(|x| (p - x) % p).collect();
                    undigits(&d, p)
                }
            })
            .collect();
        let add_table = (q <= 256 && e > 1).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = raw_add(a, b) as u16;
                }
            }
            t
        });

        Ok(FieldSpec(Arc::new(Inner { p, e, q, modulus, add_table, neg, exp, log })))
    }

    /// `GF(q)` with the default modulus.
    pub fn from_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    pub fn gf2() -> Self {
        Self::new(2, 1, None).expect("GF(2)")
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = &self.0;
        if s.e == 1 {
            let r = a + b;
            if r >= s.p {
                r - s.p
            } else {
                r
            }
        } else if let Some(t) = &s.add_table {
            t[(a * s.q + b) as usize] as u32
        } else if s.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
            for _ in 0..s.e {
                out += ((a % s.p + b % s.p) % s.p) * scale;
                a /= s.p;
                b /= s.p;
                scale *= s.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = &self.0;
        let k = (s.log[a as usize] + s.log[b as usize]) % (s.q - 1);
        s.exp[k as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let s = &self.0;
        let k = (s.q - 1 - s.log[a as usize]) % (s.q - 1);
        Some(s.exp[k as usize])
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let s = &self.0;
        let l = (s.log[a as usize] as u64 * k as u64) % (s.q - 1) as u64;
        s.exp[l as usize]
    }

    /// All nonzero elements in ascending code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.0.q
    }

    /// `dst += c * src`, elementwise.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Scales `v` so its first nonzero entry is 1. Returns the applied factor.
    pub fn normalize(&self, v: &mut [Elem]) -> Option<Elem> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = self.inv(lead)?;
        self.scale(v, inv);
        Some(inv)
    }
}

/// Hamming weight of a vector of codes.
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
