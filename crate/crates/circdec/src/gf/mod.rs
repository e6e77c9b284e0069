//! Finite-field arithmetic for GF(p^s), polynomial algebra and bit-packed
//! GF(2) linear algebra.
//!
//! Nonzero elements are stored as exponents of a fixed primitive element
//! `alpha`, with a distinct zero sentinel, so multiplication is modular
//! exponent addition. Addition goes through packed vector representations
//! (base-p digit strings; plain bitmasks for p = 2).

mod binmat;
mod poly;

pub use binmat::{BinaryMatrix, BitVec};
pub use poly::{minimal_polynomial, Poly};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field order {0} exceeds the supported table size")]
    OrderTooLarge(u64),
    #[error("polynomial has degree {got}, expected {want}")]
    WrongPolyDegree { got: usize, want: usize },
    #[error("polynomial is reducible: divisible by {factor}")]
    Reducible { factor: String },
    #[error("polynomial is irreducible but not primitive: root has order {order}")]
    NotPrimitive { order: u64 },
    #[error("no default primitive polynomial for GF({p}^{s}); supply one explicitly")]
    NoDefaultPoly { p: u64, s: u32 },
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    PolyDivisionByZero,
    #[error("inverse of the zero element")]
    ZeroInverse,
    #[error("gcd/lcm of an empty or all-zero input")]
    EmptyGcdInput,
    #[error("exact polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("expected an element of multiplicative order {want}, got order {got}")]
    OrderMismatch { want: u64, got: u64 },
    #[error("vector length {len} does not match transform order {order}")]
    LengthMismatch { len: usize, order: u64 },
    #[error("{0} does not divide the multiplicative group order; no such subfield")]
    NoSuchSubfield(u64),
}

/// A field element: either zero or an exponent
/// of the primitive element in `[0, q-2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fe {
    Zero,
    Exp(u32),
}

impl Fe {
    pub const ZERO: Fe = Fe::Zero;
    pub const ONE: Fe = Fe::Exp(0);

    pub fn is_zero(self) -> bool {
        matches!(self, Fe::Zero)
    }

    /// Exponent of a nonzero element; panics on zero (use in contexts where
    /// zero has already been excluded).
    pub fn exp(self) -> u32 {
        match self {
            Fe::Exp(e) => e,
            Fe::Zero => panic!("exp() on the zero element"),
        }
    }
}

/// GF(p^s) with log/antilog tables over packed vector representations.
///
/// Immutable after construction; all operations are reentrant.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    s: u32,
    q: u64,
    /// Primitive polynomial coefficients over GF(p), lowest degree first,
    /// length s+1, monic.
    prim_poly: Vec<u64>,
    /// exponent -> packed element, length q-1.
    antilog: Vec<u64>,
    /// packed element -> exponent; entry for 0 is unused.
    log: Vec<u32>,
}

/// Largest supported field order; keeps the tables at desk scale.
const MAX_ORDER: u64 = 1 << 21;

/// Least primitive polynomials over GF(2) for s = 1..=16, packed as integers
/// with bit i holding the coefficient of X^i.
const DEFAULT_BINARY_POLYS: [u64; 16] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x4443,
    0x8003, 0x1100b,
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

impl FieldSpec {
    /// Builds GF(p^s). Without an explicit primitive polynomial, p = 2 with
    /// s <= 16 uses the embedded least-primitive-polynomial table and prime
    /// fields (s = 1, p <= 2^16) use X - g with g the smallest primitive
    /// root; anything else is rejected.
    pub fn build(p: u64, s: u32, prim_poly: Option<&[u64]>) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if s == 0 {
            return Err(GfError::BadDegree);
        }
        let q128 = (p as u128)
            .checked_pow(s)
            .ok_or(GfError::OrderTooLarge(u64::MAX))?;
        if q128 > MAX_ORDER as u128 {
            return Err(GfError::OrderTooLarge(q128.min(u64::MAX as u128) as u64));
        }
        let q = q128 as u64;

        let poly: Vec<u64> = match prim_poly {
            Some(c) => {
                let mut c: Vec<u64> = c.iter().map(|&x| x % p).collect();
                while c.last() == Some(&0) {
                    c.pop();
                }
                if c.len() != s as usize + 1 {
                    return Err(GfError::WrongPolyDegree {
                        got: c.len().saturating_sub(1),
                        want: s as usize,
                    });
                }
                c
            }
            None => {
                if p == 2 && (1..=16).contains(&s) {
                    let mask = DEFAULT_BINARY_POLYS[s as usize - 1];
                    (0..=s as usize).map(|i| (mask >> i) & 1).collect()
                } else if s == 1 && p <= (1 << 16) {
                    let g = smallest_primitive_root(p);
                    vec![(p - g) % p, 1]
                } else {
                    return Err(GfError::NoDefaultPoly { p, s });
                }
            }
        };

        Self::from_poly(p, s, q, poly)
    }

    fn from_poly(p: u64, s: u32, q: u64, mut poly: Vec<u64>) -> Result<FieldSpec, GfError> {
        // Normalize to monic so reduction below works on any scalar multiple.
        let lead = poly[s as usize];
        if lead != 1 {
            let inv = mod_inverse(lead, p);
            for c in poly.iter_mut() {
                *c = *c * inv % p;
            }
        }
        if s > 1 {
            if poly[0] == 0 {
                return Err(GfError::Reducible {
                    factor: "X".to_string(),
                });
            }
            if let Some(factor) = irreducibility_witness(&poly, p) {
                return Err(GfError::Reducible {
                    factor: poly_to_string(&factor),
                });
            }
        }

        // Generate powers of X modulo the polynomial; the root is primitive
        // iff the first return to 1 happens after exactly q-1 steps.
        let su = s as usize;
        let mut antilog = vec![0u64; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u64; su];
        digits[0] = 1; // the element 1
        for k in 0..(q - 1) {
            let packed = pack(&digits, p);
            if packed == 1 && k > 0 {
                return Err(GfError::NotPrimitive { order: k });
            }
            antilog[k as usize] = packed;
            log[packed as usize] = k as u32;
            // multiply by X modulo poly
            let carry = digits[su - 1];
            for i in (1..su).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if carry != 0 {
                for i in 0..su {
                    digits[i] = (digits[i] + (p - poly[i] % p) * carry) % p;
                }
            }
        }
        // After q-1 multiplications we must be back at 1.
        if pack(&digits, p) != 1 {
            return Err(GfError::NotPrimitive { order: q - 1 });
        }

        Ok(FieldSpec {
            p,
            s,
            q,
            prim_poly: poly,
            antilog,
            log,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Multiplicative group order q - 1.
    pub fn group_order(&self) -> u64 {
        self.q - 1
    }

    pub fn primitive_poly(&self) -> &[u64] {
        &self.prim_poly
    }

    /// The primitive element alpha.
    pub fn alpha(&self) -> Fe {
        if self.q == 2 {
            Fe::ONE
        } else {
            Fe::Exp(1)
        }
    }

    /// Element alpha^e (exponent reduced mod q-1).
    pub fn el(&self, e: u64) -> Fe {
        Fe::Exp((e % self.group_order()) as u32)
    }

    /// Packed vector representation (base-p digits; bitmask for p = 2).
    pub fn to_packed(&self, x: Fe) -> u64 {
        match x {
            Fe::Zero => 0,
            Fe::Exp(e) => self.antilog[e as usize],
        }
    }

    pub fn from_packed(&self, packed: u64) -> Result<Fe, GfError> {
        if packed == 0 {
            return Ok(Fe::Zero);
        }
        if packed >= self.q {
            return Err(GfError::FieldMismatch);
        }
        let e = self.log[packed as usize];
        if e == u32::MAX {
            return Err(GfError::FieldMismatch);
        }
        Ok(Fe::Exp(e))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match (a, b) {
            (Fe::Zero, x) | (x, Fe::Zero) => x,
            _ => {
                let pa = self.to_packed(a);
                let pb = self.to_packed(b);
                let sum = if self.p == 2 {
                    pa ^ pb
                } else {
                    add_digits(pa, pb, self.p, self.s)
                };
                if sum == 0 {
                    Fe::Zero
                } else {
                    Fe::Exp(self.log[sum as usize])
                }
            }
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        match a {
            Fe::Zero => Fe::Zero,
            Fe::Exp(e) => {
                // -1 = alpha^{(q-1)/2} in odd characteristic
                let half = self.group_order() / 2;
                Fe::Exp(((e as u64 + half) % self.group_order()) as u32)
            }
        }
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match (a, b) {
            (Fe::Zero, _) | (_, Fe::Zero) => Fe::Zero,
            (Fe::Exp(x), Fe::Exp(y)) => {
                Fe::Exp(((x as u64 + y as u64) % self.group_order()) as u32)
            }
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        match a {
            Fe::Zero => Err(GfError::ZeroInverse),
            Fe::Exp(0) => Ok(Fe::ONE),
            Fe::Exp(e) => Ok(Fe::Exp((self.group_order() - e as u64) as u32)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with e taken mod q-1 (a nonzero); 0^0 = 1, 0^e = 0 otherwise.
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        match a {
            Fe::Zero => {
                if e == 0 {
                    Fe::ONE
                } else {
                    Fe::Zero
                }
            }
            Fe::Exp(x) => {
                let n = self.group_order() as i128;
                let e = ((e as i128 % n) + n) % n;
                Fe::Exp(((x as i128 * e) % n) as u32)
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64, GfError> {
        match a {
            Fe::Zero => Err(GfError::ZeroInverse),
            Fe::Exp(e) => {
                let n = self.group_order();
                Ok(n / gcd_u64(n, e as u64))
            }
        }
    }

    /// An element of multiplicative order exactly `n`, if q-1 admits one.
    pub fn element_of_order(&self, n: u64) -> Result<Fe, GfError> {
        if n == 0 || self.group_order() % n != 0 {
            return Err(GfError::OrderMismatch {
                want: n,
                got: 0,
            });
        }
        Ok(self.el(self.group_order() / n))
    }

    /// Exponent step identifying the subfield GF(t) inside this field:
    /// GF(t)* = { alpha^(k*step) }. `t - 1` must divide q - 1 and t = p^d
    /// with d | s.
    pub fn subfield_step(&self, t: u64) -> Result<u64, GfError> {
        let mut d = 0u32;
        let mut x = 1u64;
        while x < t {
            x *= self.p;
            d += 1;
        }
        if x != t || d == 0 || self.s % d != 0 {
            return Err(GfError::NoSuchSubfield(t));
        }
        Ok(self.group_order() / (t - 1))
    }

    /// True if `a` lies in the subfield of order `t` (see `subfield_step`).
    pub fn in_subfield(&self, a: Fe, t: u64) -> Result<bool, GfError> {
        let step = self.subfield_step(t)?;
        Ok(match a {
            Fe::Zero => true,
            Fe::Exp(e) => (e as u64) % step == 0,
        })
    }
}

fn pack(digits: &[u64], p: u64) -> u64 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * p + d;
    }
    v
}

fn add_digits(mut a: u64, mut b: u64, p: u64, s: u32) -> u64 {
    let mut out = 0u64;
    let mut mult = 1u64;
    for _ in 0..s {
        out += (a % p + b % p) % p * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    out
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Smallest primitive root modulo a prime p.
pub fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let primes = factorize(p - 1);
    'next: for g in 2..p {
        for &f in &primes {
            if mod_pow(g, (p - 1) / f, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

/// Returns a proper monic factor if the monic polynomial (coefficients over
/// GF(p), lowest first) is reducible, or None if irreducible.
fn irreducibility_witness(poly: &[u64], p: u64) -> Option<Vec<u64>> {
    let s = poly.len() - 1;
    // Trial division by all monic polynomials of degree 1..=s/2.
    for d in 1..=s / 2 {
        let count = (p as u128).pow(d as u32) as u64;
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                cand.push(x % p);
                x /= p;
            }
            cand.push(1);
            if poly_rem_is_zero(poly, &cand, p) {
                return Some(cand);
            }
        }
    }
    None
}

fn poly_rem_is_zero(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = *rem.last().unwrap() % p;
        let da = rem.len() - 1;
        if lead != 0 {
            for i in 0..=db {
                let j = da - db + i;
                rem[j] = (rem[j] + (p - b[i] % p) * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

fn poly_to_string(poly: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in poly.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let t = match i {
            0 => format!("{c}"),
            1 => {
                if c == 1 {
                    "X".to_string()
                } else {
                    format!("{c}*X")
                }
            }
            _ => {
                if c == 1 {
                    format!("X^{i}")
                } else {
                    format!("{c}*X^{i}")
                }
            }
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Brute-force search for the lexicographically smallest primitive polynomial
/// of degree s over GF(p) (smallest when packed as base-p digit strings,
/// constant term lowest). Used for fields outside the embedded defaults,
/// e.g. GF(257^2).
pub fn find_primitive_poly(p: u64, s: u32) -> Result<Vec<u64>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if s == 0 {
        return Err(GfError::BadDegree);
    }
    let q128 = (p as u128)
        .checked_pow(s)
        .ok_or(GfError::OrderTooLarge(u64::MAX))?;
    if q128 > MAX_ORDER as u128 {
        return Err(GfError::OrderTooLarge(q128.min(u64::MAX as u128) as u64));
    }
    let q = q128 as u64;
    let count = q;
    for idx in 0..count {
        let mut cand = Vec::with_capacity(s as usize + 1);
        let mut x = idx;
        for _ in 0..s {
            cand.push(x % p);
            x /= p;
        }
        cand.push(1);
        if FieldSpec::from_poly(p, s, q, cand.clone()).is_ok() {
            return Ok(cand);
        }
    }
    Err(GfError::NoDefaultPoly { p, s })
}

/// Fourier transform of a vector over this field with respect to an element
/// beta of multiplicative order n = v.len(): component i = sum_j beta^(ij) v_j.
/// Matches the diagonal of V * Psi(v) * V^{-1} with V = [beta^{-ij}].
pub fn fourier_transform(f: &FieldSpec, v: &[Fe], beta: Fe) -> Result<Vec<Fe>, GfError> {
    let n = v.len() as u64;
    let order = f.element_order(beta)?;
    if order != n {
        return Err(GfError::LengthMismatch { len: v.len(), order });
    }
    let b = beta.exp() as u64;
    let g = f.group_order();
    let mut out = Vec::with_capacity(v.len());
    for i in 0..n {
        let mut acc = 0u64; // packed-domain accumulator
        let step = b * i % g;
        let mut e = 0u64;
        for &vj in v {
            if !vj.is_zero() {
                let term = f.mul(Fe::Exp(e as u32), vj);
                let packed = f.to_packed(term);
                acc = if f.p == 2 {
                    acc ^ packed
                } else {
                    add_digits(acc, packed, f.p, f.s)
                };
            }
            e += step;
            if e >= g {
                e -= g;
            }
        }
        out.push(f.from_packed(acc)?);
    }
    Ok(out)
}

/// Fourier transform of a binary vector (entries 0/1), in the packed domain.
pub fn fourier_transform_binary(f: &FieldSpec, v: &[u8], beta: Fe) -> Result<Vec<Fe>, GfError> {
    let fe: Vec<Fe> = v
        .iter()
        .map(|&b| if b == 0 { Fe::Zero } else { Fe::ONE })
        .collect();
    fourier_transform(f, &fe, beta)
}
