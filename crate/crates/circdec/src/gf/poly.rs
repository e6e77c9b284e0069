//! Polynomials over a `FieldSpec`, lowest-degree coefficient first.

use super::{Fe, FieldSpec, GfError};

/// Dense polynomial; canonical form has no trailing zero coefficients, so the
/// zero polynomial is the empty vector and `deg` is the index of the last
/// nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Fe::ONE],
        }
    }

    /// X^k
    pub fn x_pow(k: usize) -> Poly {
        let mut coeffs = vec![Fe::Zero; k + 1];
        coeffs[k] = Fe::ONE;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe::Zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Binary polynomial from 0/1 coefficients.
    pub fn from_binary(bits: &[u8]) -> Poly {
        Poly::from_coeffs(
            bits.iter()
                .map(|&b| if b == 0 { Fe::Zero } else { Fe::ONE })
                .collect(),
        )
    }

    /// X^n - 1 over the given field.
    pub fn x_pow_n_minus_one(f: &FieldSpec, n: usize) -> Poly {
        let mut coeffs = vec![Fe::Zero; n + 1];
        coeffs[0] = f.neg(Fe::ONE);
        coeffs[n] = Fe::ONE;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::Zero)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::Zero)
    }

    /// Coefficients as 0/1 bytes, if every coefficient is 0 or 1.
    pub fn to_binary(&self, len: usize) -> Result<Vec<u8>, GfError> {
        let mut out = vec![0u8; len.max(self.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = match c {
                Fe::Zero => 0,
                Fe::Exp(0) => 1,
                _ => return Err(GfError::FieldMismatch),
            };
        }
        Ok(out)
    }

    pub fn add(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, f: &FieldSpec, c: Fe) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fe::Zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division: self = q*b + r with deg(r) < deg(b).
    pub fn divmod(&self, f: &FieldSpec, b: &Poly) -> Result<(Poly, Poly), GfError> {
        if b.is_zero() {
            return Err(GfError::PolyDivisionByZero);
        }
        let db = b.deg().unwrap();
        let lead_inv = f.inv(b.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::Zero; self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let da = rem.len() - 1;
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            if !c.is_zero() {
                quot[da - db] = c;
                for i in 0..=db {
                    let t = f.mul(b.coeff(i), c);
                    rem[da - db + i] = f.sub(rem[da - db + i], t);
                }
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, f: &FieldSpec, b: &Poly) -> Result<Poly, GfError> {
        Ok(self.divmod(f, b)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, f: &FieldSpec, b: &Poly) -> Result<Poly, GfError> {
        let (q, r) = self.divmod(f, b)?;
        if !r.is_zero() {
            return Err(GfError::InexactDivision);
        }
        Ok(q)
    }

    pub fn monic(&self, f: &FieldSpec) -> Result<Poly, GfError> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        Ok(self.scale(f, f.inv(self.lead())?))
    }

    pub fn eval(&self, f: &FieldSpec, x: Fe) -> Fe {
        let mut acc = Fe::Zero;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// prod (X - r) over the given roots.
    pub fn from_roots(f: &FieldSpec, roots: &[Fe]) -> Poly {
        let mut acc = Poly::one();
        for &r in roots {
            let factor = Poly::from_coeffs(vec![f.neg(r), Fe::ONE]);
            acc = acc.mul(f, &factor);
        }
        acc
    }

    /// Reciprocal polynomial X^deg * p(1/X).
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(f: &FieldSpec, a: &Poly, b: &Poly) -> Result<Poly, GfError> {
        if a.is_zero() && b.is_zero() {
            return Err(GfError::EmptyGcdInput);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(f, &y)?;
            x = y;
            y = r;
        }
        x.monic(f)
    }

    /// Monic least common multiple of a nonempty list.
    pub fn lcm(f: &FieldSpec, polys: &[Poly]) -> Result<Poly, GfError> {
        if polys.is_empty() {
            return Err(GfError::EmptyGcdInput);
        }
        let mut acc = polys[0].clone().monic(f)?;
        for p in &polys[1..] {
            if p.is_zero() || acc.is_zero() {
                return Err(GfError::EmptyGcdInput);
            }
            let g = Poly::gcd(f, &acc, p)?;
            acc = acc.mul(f, p).div_exact(f, &g)?.monic(f)?;
        }
        Ok(acc)
    }

    /// Roots among the n-th roots of unity generated by `beta` (order n),
    /// returned as exponents e with p(beta^e) = 0.
    pub fn roots_among_powers(&self, f: &FieldSpec, beta: Fe, n: u64) -> Vec<u64> {
        (0..n)
            .filter(|&e| self.eval(f, f.pow(beta, e as i64)).is_zero())
            .collect()
    }
}

/// Minimal polynomial of `beta` over the subfield of order `t`: the monic
/// product of (X - c) over the conjugacy class { beta^(t^i) }. Coefficients
/// land in the subfield (verified).
pub fn minimal_polynomial(f: &FieldSpec, beta: Fe, t: u64) -> Result<Poly, GfError> {
    f.subfield_step(t)?;
    if beta.is_zero() {
        return Ok(Poly::x_pow(1));
    }
    let mut conjugates = vec![beta];
    let mut x = f.pow(beta, t as i64);
    while x != beta {
        conjugates.push(x);
        x = f.pow(x, t as i64);
    }
    let m = Poly::from_roots(f, &conjugates);
    for &c in m.coeffs() {
        if !f.in_subfield(c, t)? {
            return Err(GfError::FieldMismatch);
        }
    }
    Ok(m)
}
