//! Cyclic-code algebra: parity-check polynomials, circulant parity-check
//! matrices, root circulants, equal classes in c-th power and the
//! descendant-root characterization for type-1/2/3 descendants, plus
//! Fourier-transform rank services.
//!
//! Roots are represented canonically as exponents of a fixed n-th root of
//! unity omega = alpha^((q^m-1)/n), so equal-class computation is integer
//! arithmetic mod n.

use crate::circulant::{Circulant, CirculantError};
use crate::gf::{
    fourier_transform_binary, Fe, FieldSpec, GfError, Poly,
};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CyclicError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
    #[error("n = {n} is not coprime with the field characteristic {p}; roots would repeat")]
    NotCoprime { n: usize, p: u64 },
    #[error("n = {n} does not divide the multiplicative group order {group}")]
    BadLength { n: usize, group: u64 },
    #[error("repeated root exponent {0}")]
    RepeatedRoot(u64),
    #[error("root set is not closed under conjugation: generator coefficient outside GF({0})")]
    NotConjugateClosed(u64),
    #[error("generator polynomial does not divide X^n - 1")]
    GeneratorDoesNotDivide,
    #[error("all rows are zero")]
    AllZeroMatrix,
    #[error("no order-{n} root of unity available: {reason}")]
    NoRootOfUnity { n: usize, reason: String },
    #[error("section index {index} out of range (c = {c})")]
    SectionOutOfRange { index: usize, c: usize },
    #[error("coefficients are not binary")]
    NotBinary,
    #[error("manifest: {0}")]
    Manifest(String),
}

/// An (n, k) cyclic code over GF(q), q = p^s, with roots in the extension
/// GF(q^m); n | q^m - 1 and gcd(n, q) = 1.
#[derive(Debug, Clone)]
pub struct CyclicCodeSpec {
    ext: Arc<FieldSpec>,
    base_order: u64,
    n: usize,
    /// omega = alpha^root_step has multiplicative order n.
    root_step: u64,
    generator: Poly,
    parity: Poly,
    /// Exponents e with g(omega^e) = 0, sorted ascending.
    roots: Vec<u64>,
}

impl CyclicCodeSpec {
    /// Code with the given generator-polynomial roots (omega-exponents).
    pub fn from_roots(
        ext: Arc<FieldSpec>,
        base_order: u64,
        n: usize,
        root_exps: &[u64],
    ) -> Result<CyclicCodeSpec, CyclicError> {
        let root_step = Self::validate_params(&ext, base_order, n)?;
        let mut roots: Vec<u64> = root_exps.iter().map(|&e| e % n as u64).collect();
        roots.sort_unstable();
        for pair in roots.windows(2) {
            if pair[0] == pair[1] {
                return Err(CyclicError::RepeatedRoot(pair[0]));
            }
        }
        let omega_pows: Vec<Fe> = roots
            .iter()
            .map(|&e| ext.el(e * root_step))
            .collect();
        let generator = Poly::from_roots(&ext, &omega_pows);
        for &c in generator.coeffs() {
            if !ext.in_subfield(c, base_order)? {
                return Err(CyclicError::NotConjugateClosed(base_order));
            }
        }
        let parity = Poly::x_pow_n_minus_one(&ext, n).div_exact(&ext, &generator)?;
        Ok(CyclicCodeSpec {
            ext,
            base_order,
            n,
            root_step,
            generator,
            parity,
            roots,
        })
    }

    /// Code with the given generator polynomial (coefficients must lie in the
    /// GF(q) subfield image and g must divide X^n - 1).
    pub fn from_generator(
        ext: Arc<FieldSpec>,
        base_order: u64,
        n: usize,
        generator: Poly,
    ) -> Result<CyclicCodeSpec, CyclicError> {
        let root_step = Self::validate_params(&ext, base_order, n)?;
        let generator = generator.monic(&ext)?;
        for &c in generator.coeffs() {
            if !ext.in_subfield(c, base_order)? {
                return Err(CyclicError::NotConjugateClosed(base_order));
            }
        }
        let xn1 = Poly::x_pow_n_minus_one(&ext, n);
        let parity = xn1
            .div_exact(&ext, &generator)
            .map_err(|_| CyclicError::GeneratorDoesNotDivide)?;
        let omega = ext.el(root_step);
        let roots = generator.roots_among_powers(&ext, omega, n as u64);
        if roots.len() != generator.deg().unwrap_or(0) {
            return Err(CyclicError::GeneratorDoesNotDivide);
        }
        Ok(CyclicCodeSpec {
            ext,
            base_order,
            n,
            root_step,
            generator,
            parity,
            roots,
        })
    }

    fn validate_params(
        ext: &FieldSpec,
        base_order: u64,
        n: usize,
    ) -> Result<u64, CyclicError> {
        ext.subfield_step(base_order)?;
        if n == 0 || ext.group_order() % n as u64 != 0 {
            return Err(CyclicError::BadLength {
                n,
                group: ext.group_order(),
            });
        }
        if n as u64 % ext.characteristic() == 0 {
            return Err(CyclicError::NotCoprime {
                n,
                p: ext.characteristic(),
            });
        }
        Ok(ext.group_order() / n as u64)
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    pub fn base_order(&self) -> u64 {
        self.base_order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generator.deg().unwrap_or(0)
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn parity(&self) -> &Poly {
        &self.parity
    }

    /// Root exponents e (beta_i = omega^e), sorted.
    pub fn roots(&self) -> &[u64] {
        &self.roots
    }

    /// The fixed n-th root of unity omega = alpha^((q^m-1)/n).
    pub fn omega(&self) -> Fe {
        self.ext.el(self.root_step)
    }

    pub fn root(&self, i: usize) -> Fe {
        self.ext.el(self.roots[i] * self.root_step)
    }

    /// Parity-check vector h~ = (h_k, h_{k-1}, ..., h_0, 0, ..., 0) of
    /// length n: the reciprocal of h(X) padded with n-k-1 zeros.
    pub fn parity_check_vector(&self) -> Vec<Fe> {
        let k = self.k();
        let mut v = vec![Fe::Zero; self.n];
        for t in 0..=k {
            v[t] = self.parity.coeff(k - t);
        }
        v
    }

    /// Binary parity-check vector (base field GF(2) only).
    pub fn parity_check_vector_binary(&self) -> Result<Vec<u8>, CyclicError> {
        if self.base_order != 2 {
            return Err(CyclicError::NotBinary);
        }
        self.parity_check_vector()
            .iter()
            .map(|&c| match c {
                Fe::Zero => Ok(0u8),
                Fe::Exp(0) => Ok(1u8),
                _ => Err(CyclicError::NotBinary),
            })
            .collect()
    }

    /// The n x n circulant parity-check matrix Psi(h~) as a binary circulant.
    pub fn parity_circulant(&self) -> Result<Circulant<u8>, CyclicError> {
        Ok(Circulant::new(self.parity_check_vector_binary()?))
    }

    /// Per-root coefficients sigma_i and lambda_i of the root-circulant
    /// expansion.
    pub fn root_data(&self) -> Result<RootData, CyclicError> {
        let f = &self.ext;
        let nk = self.roots.len();
        let betas: Vec<Fe> = (0..nk).map(|i| self.root(i)).collect();
        let mut sigma = Vec::with_capacity(nk);
        let mut lambda = Vec::with_capacity(nk);
        let shift = (self.n - self.k()) as i64 - 1;
        for i in 0..nk {
            let mut prod = Fe::ONE;
            for j in 0..nk {
                if i != j {
                    let diff = f.sub(betas[i], betas[j]);
                    if diff.is_zero() {
                        return Err(CyclicError::RepeatedRoot(self.roots[i]));
                    }
                    prod = f.mul(prod, diff);
                }
            }
            let s = f.inv(prod)?;
            sigma.push(s);
            lambda.push(f.mul(s, f.pow(betas[i], shift)));
        }
        Ok(RootData { sigma, lambda })
    }

    /// Generator of the i-th root circulant: v~_i = (1, beta_i, ...,
    /// beta_i^{n-1}).
    pub fn root_circulant_generator(&self, i: usize) -> Vec<Fe> {
        let beta = self.root(i);
        let mut v = Vec::with_capacity(self.n);
        let mut acc = Fe::ONE;
        for _ in 0..self.n {
            v.push(acc);
            acc = self.ext.mul(acc, beta);
        }
        v
    }

    /// Partition of the roots into equal classes in c-th power: beta_{i1} and
    /// beta_{i2} share a class iff their c-th powers agree, i.e. iff their
    /// omega-exponents agree mod l.
    pub fn equal_classes(&self, c: usize) -> Result<EqualClassPartition, CyclicError> {
        if c <= 1 || c >= self.n || self.n % c != 0 {
            return Err(CirculantError::NotAProperFactor { n: self.n, c }.into());
        }
        let l = (self.n / c) as u64;
        let mut by_residue: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, &e) in self.roots.iter().enumerate() {
            by_residue.entry(e % l).or_default().push(i);
        }
        let classes = by_residue
            .into_iter()
            .map(|(residue, members)| EqualClass { residue, members })
            .collect();
        Ok(EqualClassPartition {
            c,
            l: l as usize,
            classes,
        })
    }

    /// Predicted roots of the generator polynomial of the
    /// type-1 descendant given by the null space of Psi(h~_j), as
    /// omega^c-exponents. An empty set means the section is zero and the
    /// descendant is the whole space GF(q)^l.
    pub fn type1_descendant_roots(
        &self,
        rd: &RootData,
        part: &EqualClassPartition,
        j: usize,
    ) -> Result<Type1Roots, CyclicError> {
        if j >= part.c {
            return Err(CyclicError::SectionOutOfRange {
                index: j,
                c: part.c,
            });
        }
        let f = &self.ext;
        let mut roots = BTreeSet::new();
        for class in &part.classes {
            let mut lambda_star = Fe::Zero;
            for &i in &class.members {
                let beta_j = f.pow(self.root(i), j as i64);
                lambda_star = f.add(lambda_star, f.mul(rd.lambda[i], beta_j));
            }
            if !lambda_star.is_zero() {
                roots.insert(class.residue);
            }
        }
        let whole_space = roots.is_empty();
        Ok(Type1Roots { roots, whole_space })
    }

    /// omega^c, the order-l root of unity underlying descendants of a
    /// factorization n = c*l.
    pub fn descendant_omega(&self, c: usize) -> Fe {
        self.ext.el(self.root_step * c as u64)
    }

    /// Structured key=value manifest; round-trippable via `from_manifest`.
    pub fn to_manifest(&self) -> String {
        let p = self.ext.characteristic();
        let s_total = self.ext.degree();
        let mut s = 0u32;
        let mut x = 1u64;
        while x < self.base_order {
            x *= p;
            s += 1;
        }
        let m = s_total / s.max(1);
        let roots: Vec<String> = self.roots.iter().map(|e| e.to_string()).collect();
        format!(
            "kind = cyclic-code\nn = {}\np = {}\ns = {}\nm = {}\nroots = {}\n",
            self.n,
            p,
            s.max(1),
            m,
            roots.join(",")
        )
    }

    /// Parses a manifest produced by `to_manifest` (or hand-written with the
    /// same keys; either `roots` or `generator` must be present; unknown keys
    /// are rejected).
    pub fn from_manifest(text: &str) -> Result<CyclicCodeSpec, CyclicError> {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CyclicError::Manifest(format!("bad line {line:?}")))?;
            fields.insert(key.trim().to_string(), value.trim().to_string());
        }
        for key in fields.keys() {
            if !["kind", "n", "p", "s", "m", "roots", "generator"].contains(&key.as_str()) {
                return Err(CyclicError::Manifest(format!("unknown key {key:?}")));
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .ok_or_else(|| CyclicError::Manifest(format!("missing key {k:?}")))
        };
        if get("kind")? != "cyclic-code" {
            return Err(CyclicError::Manifest("kind must be cyclic-code".into()));
        }
        let parse_u64 = |k: &str| -> Result<u64, CyclicError> {
            get(k)?
                .parse::<u64>()
                .map_err(|_| CyclicError::Manifest(format!("bad integer for {k:?}")))
        };
        let n = parse_u64("n")? as usize;
        let p = parse_u64("p")?;
        let s = parse_u64("s")? as u32;
        let m = parse_u64("m")? as u32;
        let ext = Arc::new(FieldSpec::build(p, s * m, None)?);
        let base_order = p.pow(s);
        let parse_list = |v: &str| -> Result<Vec<u64>, CyclicError> {
            v.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| CyclicError::Manifest(format!("bad list entry {t:?}")))
                })
                .collect()
        };
        match (fields.get("roots"), fields.get("generator")) {
            (Some(r), None) => {
                CyclicCodeSpec::from_roots(ext, base_order, n, &parse_list(r)?)
            }
            (None, Some(g)) => {
                let packed = parse_list(g)?;
                if packed.iter().any(|&v| v > 1) {
                    return Err(CyclicError::Manifest(
                        "generator manifests support binary coefficients only".into(),
                    ));
                }
                let coeffs: Vec<Fe> = packed
                    .iter()
                    .map(|&v| if v == 0 { Fe::Zero } else { Fe::ONE })
                    .collect();
                CyclicCodeSpec::from_generator(ext, base_order, n, Poly::from_coeffs(coeffs))
            }
            _ => Err(CyclicError::Manifest(
                "exactly one of roots/generator required".into(),
            )),
        }
    }
}

/// Per-root sigma_i and lambda_i coefficients of the root-circulant
/// expansion, indexed like
/// `CyclicCodeSpec::roots`. All entries are nonzero.
#[derive(Debug, Clone)]
pub struct RootData {
    pub sigma: Vec<Fe>,
    pub lambda: Vec<Fe>,
}

/// One equal class in c-th power: all member roots share omega-exponent
/// residue mod l, hence the same c-th power omega^(c*residue).
#[derive(Debug, Clone)]
pub struct EqualClass {
    /// Common root exponent mod l; the class c-th power is (omega^c)^residue.
    pub residue: u64,
    /// Indices into the code's root list, ascending.
    pub members: Vec<usize>,
}

/// Partition of the roots into equal classes for a factorization n = c*l.
#[derive(Debug, Clone)]
pub struct EqualClassPartition {
    pub c: usize,
    pub l: usize,
    pub classes: Vec<EqualClass>,
}

/// Predicted type-1 descendant roots, as exponents of omega^c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Roots {
    pub roots: BTreeSet<u64>,
    /// True when the section is zero, i.e. the descendant parity circulant
    /// vanishes and the code is the whole space of length l.
    pub whole_space: bool,
}

/// Type-2 generator: least common multiple of type-1 generators; its root
/// set is the union of the inputs' root sets.
pub fn type2_generator(f: &FieldSpec, generators: &[Poly]) -> Result<Poly, CyclicError> {
    Ok(Poly::lcm(f, generators)?)
}

/// Recovers the generator polynomial of the cyclic code whose parity-check
/// matrix has the given rows (length-n row polynomials): h~ = gcd of the row
/// polynomials and X^n - 1, h = reciprocal of h~, g = (X^n - 1)/h.
pub fn generator_from_rows(
    f: &FieldSpec,
    n: usize,
    rows: &[Poly],
) -> Result<Poly, CyclicError> {
    let xn1 = Poly::x_pow_n_minus_one(f, n);
    let mut acc = xn1.clone();
    let mut any = false;
    for row in rows {
        if row.is_zero() {
            continue;
        }
        any = true;
        acc = Poly::gcd(f, &acc, row)?;
    }
    if !any {
        return Err(CyclicError::AllZeroMatrix);
    }
    let h = acc.reciprocal().monic(f)?;
    Ok(xn1.div_exact(f, &h)?.monic(f)?)
}

/// Row polynomials of a binary circulant (row i is the i-th right shift of
/// the generator), for feeding `generator_from_rows`.
pub fn circulant_row_polys(w: &Circulant<u8>) -> Vec<Poly> {
    let n = w.n();
    (0..n)
        .map(|i| {
            Poly::from_binary(
                &(0..n)
                    .map(|j| w.generator()[(j + n - i) % n])
                    .collect::<Vec<u8>>(),
            )
        })
        .collect()
}

/// Rank of a binary circulant as the number of nonzero Fourier components of
/// its generator, computed in GF(2^m) with m the multiplicative order of 2
/// mod n.
pub fn ft_rank(w: &Circulant<u8>) -> Result<usize, CyclicError> {
    let n = w.n();
    let (field, beta) = binary_ft_field(n)?;
    let ft = fourier_transform_binary(&field, w.generator(), beta)?;
    Ok(ft.iter().filter(|c| !c.is_zero()).count())
}

/// Rank of a vertical stack of binary circulants of size l (the H_col
/// construction): the number of spectral positions where at least one
/// section's Fourier component is nonzero.
pub fn ft_group_rank(sections: &[Vec<u8>]) -> Result<usize, CyclicError> {
    let l = sections
        .first()
        .map(Vec::len)
        .ok_or(CyclicError::AllZeroMatrix)?;
    let (field, beta) = binary_ft_field(l)?;
    let mut nonzero = vec![false; l];
    for s in sections {
        let ft = fourier_transform_binary(&field, s, beta)?;
        for (i, c) in ft.iter().enumerate() {
            if !c.is_zero() {
                nonzero[i] = true;
            }
        }
    }
    Ok(nonzero.iter().filter(|&&b| b).count())
}

/// GF(2^m) containing an order-n element, with that element.
pub fn binary_ft_field(n: usize) -> Result<(FieldSpec, Fe), CyclicError> {
    if n % 2 == 0 {
        return Err(CyclicError::NoRootOfUnity {
            n,
            reason: "n shares the factor 2 with the field characteristic".into(),
        });
    }
    let mut m = 1u32;
    let mut pow = 2u64 % n as u64;
    while pow != 1 {
        pow = pow * 2 % n as u64;
        m += 1;
        if m > 16 {
            return Err(CyclicError::NoRootOfUnity {
                n,
                reason: "order of 2 mod n exceeds the supported extension degree".into(),
            });
        }
    }
    let field = FieldSpec::build(2, m, None)?;
    let beta = field.element_of_order(n as u64)?;
    Ok((field, beta))
}

/// Conjugacy closure of a set of omega-exponents under multiplication by q
/// mod n (the cyclotomic-coset closure needed for GF(q)-coefficients).
pub fn conjugate_closure(n: u64, q: u64, seeds: &[u64]) -> Vec<u64> {
    let mut set = BTreeSet::new();
    for &s in seeds {
        let mut x = s % n;
        while set.insert(x) {
            x = x * (q % n) % n;
        }
    }
    set.into_iter().collect()
}
