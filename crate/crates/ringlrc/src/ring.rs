//! Galois ring arithmetic.
//!
//! `GR(p^s, m)` is `Z_{p^s}[x]` modulo a monic degree-`m` polynomial whose
//! reduction mod `p` is irreducible over `F_p`. Elements are canonical
//! coefficient vectors `(c_0, ..., c_{m-1})` with `0 <= c_i < p^s`, constant
//! term first. The residue field `F_{p^m}` is itself the Galois ring
//! `GR(p, m)`, so field and ring arithmetic share this module.
//!
//! The canonical element order reads the coefficient vector as a
//! little-endian base-`p^s` integer; `index_of` / `element_from_index`
//! realize that bijection with `0..p^{s·m}`.

use crate::{Error, Result};

/// Ring element: canonical coefficient vector, constant term first.
///
/// Elements are plain data; all arithmetic goes through the owning
/// [`GaloisRing`], which supplies `p`, `s` and the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    coeffs: Vec<u64>,
}

impl Elem {
    /// Coefficients `(c_0, ..., c_{m-1})`, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Largest admitted `p^s`: keeps sums and `u128` products exact.
const MAX_PS: u64 = 1 << 32;
/// Largest admitted ring cardinality `p^{s·m}`: keeps element indices and
/// group orders in `u64` (enumeration far beyond this is hopeless anyway).
const MAX_SIZE: u64 = 1 << 48;

/// The Galois ring `GR(p^s, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisRing {
    p: u64,
    s: u32,
    m: usize,
    ps: u64,
    modulus: Vec<u64>,
    size: u64,
    units: u64,
}

/// Default moduli: the lexicographically first monic irreducible over `F_p`
/// (non-leading coefficients read little-endian as a base-p integer), lifted
/// verbatim to `Z_{p^s}`. Entries are the non-leading coefficients; the
/// leading 1 is implied. A test re-derives each entry by exhaustive search.
const DEFAULT_MODULI: &[(u64, usize, &[u64])] = &[
    (2, 1, &[0]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 1, &[0]),
    (3, 2, &[1, 0]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (5, 1, &[0]),
    (5, 2, &[2, 0]),
    (5, 3, &[1, 1, 0]),
    (5, 4, &[2, 0, 0, 0]),
    (7, 1, &[0]),
    (7, 2, &[1, 0]),
    (7, 3, &[2, 0, 0]),
    (7, 4, &[1, 1, 0, 0]),
    (11, 1, &[0]),
    (11, 2, &[1, 0]),
    (11, 3, &[4, 1, 0]),
    (11, 4, &[2, 1, 0, 0]),
    (13, 1, &[0]),
    (13, 2, &[2, 0]),
    (13, 3, &[2, 0, 0]),
    (13, 4, &[2, 0, 0, 0]),
];

/// Default modulus for `GR(p^s, m)` as a full monic coefficient list,
/// or `None` when `(p, m)` is outside the built-in table.
pub fn default_modulus(p: u64, m: usize) -> Option<Vec<u64>> {
    DEFAULT_MODULI.iter().find(|&&(tp, tm, _)| tp == p && tm == m).map(|&(_, _, tail)| {
        let mut full = tail.to_vec();
        full.push(1);
        full
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Remainder of `a` by monic `b` over `Z_q`, coefficients little-endian.
fn poly_rem_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut a: Vec<u64> = a.iter().map(|&c| c % q).collect();
    while a.last() == Some(&0) {
        a.pop();
    }
    while a.len() >= b.len() {
        let c = *a.last().unwrap();
        let shift = a.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            let prod = (c as u128 * bc as u128 % q as u128) as u64;
            a[shift + i] = (a[shift + i] + q - prod) % q;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

/// Irreducibility over `F_p` by trial division: a monic polynomial of degree
/// `d` is reducible iff some monic factor of degree `<= d/2` divides it.
fn irreducible_over_fp(poly: &[u64], p: u64) -> std::result::Result<(), Vec<u64>> {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                div.push(k % p);
                k /= p;
            }
            div.push(1);
            if poly_rem_mod(poly, &div, p).is_empty() {
                return Err(div);
            }
        }
    }
    Ok(())
}

impl GaloisRing {
    /// Construct `GR(p^s, m)`. With `modulus = None` the built-in default
    /// table supplies one for `p ∈ {2,3,5,7,11,13}` and `m <= 4`. An explicit
    /// modulus must be monic of degree `m` (coefficients are reduced mod
    /// `p^s`) and irreducible mod `p`.
    pub fn new(p: u64, s: u32, m: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if s < 1 || m < 1 {
            return Err(Error::BadParameters("s and m must be at least 1".into()));
        }
        let ps = p
            .checked_pow(s)
            .filter(|&v| v <= MAX_PS)
            .ok_or_else(|| Error::BadParameters(format!("p^s = {p}^{s} too large")))?;
        let mut size: u64 = 1;
        for _ in 0..m {
            size = size
                .checked_mul(ps)
                .filter(|&v| v <= MAX_SIZE)
                .ok_or_else(|| Error::BadParameters(format!("ring size {p}^{} too large", s as usize * m)))?;
        }
        let modulus = match modulus {
            Some(raw) => {
                if raw.len() != m + 1 {
                    return Err(Error::BadParameters(format!(
                        "modulus must have degree {m} ({} coefficients)",
                        m + 1
                    )));
                }
                let reduced: Vec<u64> = raw.iter().map(|&c| c % ps).collect();
                if reduced[m] != 1 {
                    return Err(Error::BadParameters("modulus must be monic".into()));
                }
                reduced
            }
            None => default_modulus(p, m).ok_or(Error::NoDefaultModulus { p, m })?,
        };
        let mod_p: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if let Err(div) = irreducible_over_fp(&mod_p, p) {
            return Err(Error::ReducibleModulus(format!("{div:?}")));
        }
        let pm = p.pow(m as u32);
        let units = (pm - 1) * (size / pm);
        Ok(GaloisRing { p, s, m, ps, modulus, size, units })
    }

    /// Internal constructor for rings already known valid (residue rings).
    fn new_unchecked(p: u64, s: u32, m: usize, modulus: Vec<u64>) -> Self {
        let ps = p.pow(s);
        let size = ps.pow(m as u32);
        let pm = p.pow(m as u32);
        let units = (pm - 1) * (size / pm);
        GaloisRing { p, s, m, ps, modulus, size, units }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// `p^s`, the coefficient modulus.
    pub fn ps(&self) -> u64 {
        self.ps
    }
    /// Modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// `|R| = p^{s·m}`.
    pub fn element_count(&self) -> u64 {
        self.size
    }
    /// `|N(R)| = (p^m − 1)·p^{m(s−1)}`.
    pub fn unit_count(&self) -> u64 {
        self.units
    }
    /// Size of the residue field, `p^m`.
    pub fn residue_field_size(&self) -> u64 {
        self.p.pow(self.m as u32)
    }
    /// `p^{m(s−1)}`, the index of the Teichmüller group in `N(R)`.
    pub fn max_ideal_size_per_residue(&self) -> u64 {
        self.size / self.residue_field_size()
    }

    pub fn zero(&self) -> Elem {
        Elem { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// Constant element from a (possibly negative) integer.
    pub fn from_int(&self, v: i64) -> Elem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = v.rem_euclid(self.ps as i64) as u64;
        Elem { coeffs }
    }

    /// Element from raw coefficients (length `<= m`), reduced mod `p^s`.
    pub fn elem(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.m {
            return Err(Error::RingMismatch(format!(
                "{} coefficients for extension degree {}",
                coeffs.len(),
                self.m
            )));
        }
        let mut out = vec![0; self.m];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i] = c.rem_euclid(self.ps as i64) as u64;
        }
        Ok(Elem { coeffs: out })
    }

    /// Validate that `e` is shaped for this ring (length `m`, entries `< p^s`).
    pub fn check(&self, e: &Elem) -> Result<()> {
        if e.coeffs.len() != self.m || e.coeffs.iter().any(|&c| c >= self.ps) {
            return Err(Error::RingMismatch(format!("{:?}", e.coeffs)));
        }
        Ok(())
    }

    /// Canonical index: the coefficient vector read little-endian base `p^s`.
    pub fn index_of(&self, e: &Elem) -> u64 {
        let mut idx = 0u64;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.ps + c;
        }
        idx
    }

    pub fn element_from_index(&self, mut idx: u64) -> Elem {
        let mut coeffs = vec![0; self.m];
        for c in coeffs.iter_mut() {
            *c = idx % self.ps;
            idx /= self.ps;
        }
        Elem { coeffs }
    }

    /// All elements in canonical order. Desk-scale only.
    pub fn all_elements(&self) -> Vec<Elem> {
        (0..self.size).map(|i| self.element_from_index(i)).collect()
    }

    /// All units in canonical order.
    pub fn units(&self) -> Vec<Elem> {
        (0..self.size)
            .map(|i| self.element_from_index(i))
            .filter(|e| self.is_unit(e))
            .collect()
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    /// A unit is exactly an element whose residue projection is nonzero.
    pub fn is_unit(&self, e: &Elem) -> bool {
        e.coeffs.iter().any(|&c| c % self.p != 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let v = x + y;
                if v >= self.ps {
                    v - self.ps
                } else {
                    v
                }
            })
            .collect();
        Elem { coeffs }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.ps - y })
            .collect();
        Elem { coeffs }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if self.m == 1 {
            let v = (a.coeffs[0] as u128 * b.coeffs[0] as u128 % self.ps as u128) as u64;
            return Elem { coeffs: vec![v] };
        }
        let mut tmp = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                tmp[i + j] = ((tmp[i + j] as u128 + x as u128 * y as u128) % self.ps as u128) as u64;
            }
        }
        // reduce by the monic modulus
        for i in (self.m..tmp.len()).rev() {
            let c = tmp[i];
            if c == 0 {
                continue;
            }
            tmp[i] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(self.m) {
                let prod = (c as u128 * mc as u128 % self.ps as u128) as u64;
                let k = i - self.m + j;
                tmp[k] = (tmp[k] + self.ps - prod) % self.ps;
            }
        }
        tmp.truncate(self.m);
        Elem { coeffs: tmp }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the unit-group order: `a^{|N(R)|−1}`.
    pub fn invert(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        Ok(self.pow(a, self.units - 1))
    }

    /// p-adic valuation: largest `v` with `e ∈ (p^v)`; `s` for zero.
    pub fn valuation(&self, e: &Elem) -> u32 {
        e.coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    self.s
                } else {
                    let mut v = 0;
                    let mut c = c;
                    while c % self.p == 0 {
                        c /= self.p;
                        v += 1;
                    }
                    v
                }
            })
            .min()
            .unwrap()
    }

    /// Write `e = p^v · u` with `u` a unit; requires `e != 0`.
    pub fn unit_part(&self, e: &Elem) -> (u32, Elem) {
        let v = self.valuation(e);
        debug_assert!(v < self.s, "unit_part of zero");
        let pv = self.p.pow(v);
        let coeffs = e.coeffs.iter().map(|&c| c / pv).collect();
        (v, Elem { coeffs })
    }

    /// Multiply by `p^v` (exact; used to rebuild from `unit_part`).
    pub fn scale_by_p_pow(&self, e: &Elem, v: u32) -> Elem {
        let pv = self.p.pow(v) % self.ps;
        let coeffs = e.coeffs.iter().map(|&c| (c as u128 * pv as u128 % self.ps as u128) as u64).collect();
        Elem { coeffs }
    }

    /// The residue field `F_{p^m}` as a Galois ring with `s = 1`.
    pub fn residue_ring(&self) -> GaloisRing {
        let modulus = self.modulus.iter().map(|&c| c % self.p).collect();
        GaloisRing::new_unchecked(self.p, 1, self.m, modulus)
    }

    /// Projection onto the residue field (coefficients mod `p`).
    pub fn residue_project(&self, e: &Elem) -> Elem {
        Elem { coeffs: e.coeffs.iter().map(|&c| c % self.p).collect() }
    }

    /// The coefficient-verbatim lift of a residue-field element.
    pub fn lift(&self, e: &Elem) -> Elem {
        Elem { coeffs: e.coeffs.clone() }
    }

    /// The Teichmüller group: the unique cyclic subgroup of order
    /// `p^m − 1`, i.e. the roots of `x^{p^m−1} − 1`. Returned in power
    /// order `[1, ω, ω², ...]` where `ω` is the lift-and-power of the
    /// canonically smallest primitive element of the residue field.
    pub fn teichmuller_group(&self) -> Vec<Elem> {
        let field = self.residue_ring();
        let q1 = self.residue_field_size() - 1;
        let primes = factorize(q1);
        let mut primitive = field.one();
        for idx in 1..field.element_count() {
            let g = field.element_from_index(idx);
            if !field.is_unit(&g) {
                continue;
            }
            if primes.iter().all(|&f| field.pow(&g, q1 / f) != field.one()) {
                primitive = g;
                break;
            }
        }
        let omega = self.pow(&self.lift(&primitive), self.max_ideal_size_per_residue());
        let mut out = Vec::with_capacity(q1 as usize);
        let mut x = self.one();
        for _ in 0..q1 {
            out.push(x.clone());
            x = self.mul(&x, &omega);
        }
        out
    }

    /// Hensel lifting of a simple residue root: given `f` over this ring and
    /// a residue-field element `sbar` with `f̄(sbar) = 0` and `f̄'(sbar) ≠ 0`,
    /// returns the unique root of `f` projecting to `sbar`. Newton iteration;
    /// each step at least doubles the valuation of `f(r)`.
    pub fn hensel_lift_root(&self, f: &crate::poly::Poly, sbar: &Elem) -> Result<Elem> {
        let field = self.residue_ring();
        let fbar = f.map_coeffs(|c| self.residue_project(c));
        if !field.is_zero(&fbar.eval(&field, sbar)) {
            return Err(Error::NotASimpleRoot("residue value is not a root".into()));
        }
        let dbar = fbar.derivative(&field);
        if field.is_zero(&dbar.eval(&field, sbar)) {
            return Err(Error::NotASimpleRoot("residue derivative vanishes".into()));
        }
        let deriv = f.derivative(self);
        let mut r = self.lift(sbar);
        for _ in 0..=self.s {
            let fr = f.eval(self, &r);
            if self.is_zero(&fr) {
                return Ok(r);
            }
            let step = self.mul(&fr, &self.invert(&deriv.eval(self, &r))?);
            r = self.sub(&r, &step);
        }
        // Valuation doubling guarantees convergence within s steps.
        let fr = f.eval(self, &r);
        debug_assert!(self.is_zero(&fr));
        Ok(r)
    }

    /// Render an element for messages and reports: a plain integer when
    /// `m = 1`, otherwise the coefficient array.
    pub fn format_elem(&self, e: &Elem) -> String {
        if self.m == 1 {
            format!("{}", e.coeffs[0])
        } else {
            format!("{:?}", e.coeffs)
        }
    }
}

/// A finite product of Galois rings, the principal-ideal-ring setting for
/// product codes. Elements are tuples with one part per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRing {
    factors: Vec<GaloisRing>,
}

/// Element of a [`ProductRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductElem {
    parts: Vec<Elem>,
}

impl ProductElem {
    pub fn parts(&self) -> &[Elem] {
        &self.parts
    }
}

impl ProductRing {
    pub fn new(factors: Vec<GaloisRing>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadParameters("product ring needs at least one factor".into()));
        }
        Ok(ProductRing { factors })
    }

    pub fn factors(&self) -> &[GaloisRing] {
        &self.factors
    }

    pub fn zero(&self) -> ProductElem {
        ProductElem { parts: self.factors.iter().map(|r| r.zero()).collect() }
    }

    pub fn one(&self) -> ProductElem {
        ProductElem { parts: self.factors.iter().map(|r| r.one()).collect() }
    }

    pub fn from_parts(&self, parts: Vec<Elem>) -> Result<ProductElem> {
        if parts.len() != self.factors.len() {
            return Err(Error::LengthMismatch { expected: self.factors.len(), got: parts.len() });
        }
        for (r, e) in self.factors.iter().zip(&parts) {
            r.check(e)?;
        }
        Ok(ProductElem { parts })
    }

    pub fn add(&self, a: &ProductElem, b: &ProductElem) -> ProductElem {
        ProductElem {
            parts: self
                .factors
                .iter()
                .zip(a.parts.iter().zip(&b.parts))
                .map(|(r, (x, y))| r.add(x, y))
                .collect(),
        }
    }

    pub fn mul(&self, a: &ProductElem, b: &ProductElem) -> ProductElem {
        ProductElem {
            parts: self
                .factors
                .iter()
                .zip(a.parts.iter().zip(&b.parts))
                .map(|(r, (x, y))| r.mul(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ProductElem) -> ProductElem {
        ProductElem { parts: self.factors.iter().zip(&a.parts).map(|(r, x)| r.neg(x)).collect() }
    }

    /// Units of a product are exactly the componentwise units.
    pub fn is_unit(&self, a: &ProductElem) -> bool {
        self.factors.iter().zip(&a.parts).all(|(r, x)| r.is_unit(x))
    }

    pub fn is_zero(&self, a: &ProductElem) -> bool {
        self.factors.iter().zip(&a.parts).all(|(r, x)| r.is_zero(x))
    }

    pub fn project_component(&self, a: &ProductElem, i: usize) -> Result<Elem> {
        a.parts.get(i).cloned().ok_or(Error::IndexOutOfRange(i))
    }

    /// Embed a factor element at position `i`, zero elsewhere.
    pub fn inject_component(&self, c: &Elem, i: usize) -> Result<ProductElem> {
        let factor = self.factors.get(i).ok_or(Error::IndexOutOfRange(i))?;
        factor.check(c)?;
        let mut parts: Vec<Elem> = self.factors.iter().map(|r| r.zero()).collect();
        parts[i] = c.clone();
        Ok(ProductElem { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn z(n: u64, s: u32) -> GaloisRing {
        GaloisRing::new(n, s, 1, None).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(GaloisRing::new(4, 2, 1, None).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(
            GaloisRing::new(2, 2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(_)
        ));
        assert_eq!(
            GaloisRing::new(17, 2, 2, None).unwrap_err(),
            Error::NoDefaultModulus { p: 17, m: 2 }
        );
        assert!(matches!(
            GaloisRing::new(5, 2, 2, Some(&[2, 0, 3])).unwrap_err(),
            Error::BadParameters(_)
        ));
    }

    #[test]
    fn gr42_basics() {
        let r = GaloisRing::new(2, 2, 2, None).unwrap();
        assert_eq!(r.modulus(), &[1, 1, 1]);
        assert_eq!(r.element_count(), 16);
        assert_eq!(r.unit_count(), 12);
        assert_eq!(r.units().len(), 12);
        let x = r.elem(&[0, 1]).unwrap();
        assert_eq!(r.mul(&x, &x), r.elem(&[3, 3]).unwrap());
        // x has multiplicative order 3 in GR(4,2)
        assert_eq!(r.pow(&x, 3), r.one());
    }

    #[test]
    fn z121_arithmetic() {
        let r = z(11, 2);
        let three = r.from_int(3);
        let e81 = r.from_int(81);
        assert_eq!(r.mul(&three, &e81), r.one());
        assert_eq!(r.invert(&three).unwrap(), e81);
        assert_eq!(r.invert(&r.from_int(11)).unwrap_err(), Error::NotAUnit);
        assert_eq!(r.invert(&r.zero()).unwrap_err(), Error::NotAUnit);
        assert_eq!(r.unit_count(), 110);
    }

    #[test]
    fn residue_projection() {
        let r = z(5, 2);
        assert_eq!(r.residue_project(&r.from_int(7)).coeffs(), &[2]);
        let f = r.residue_ring();
        assert_eq!((f.p(), f.s(), f.m()), (5, 1, 1));
        let r121 = z(11, 2);
        assert_eq!(r121.residue_project(&r121.from_int(112)).coeffs(), &[2]);
    }

    #[test]
    fn valuation_and_unit_part() {
        let r = z(3, 2);
        assert_eq!(r.valuation(&r.from_int(3)), 1);
        assert_eq!(r.valuation(&r.from_int(1)), 0);
        assert_eq!(r.valuation(&r.zero()), 2);
        let (v, u) = r.unit_part(&r.from_int(6));
        assert_eq!(v, 1);
        assert!(r.is_unit(&u));
        assert_eq!(r.scale_by_p_pow(&u, v), r.from_int(6));
        let g = GaloisRing::new(3, 2, 2, None).unwrap();
        let e = g.elem(&[3, 6]).unwrap();
        assert_eq!(g.valuation(&e), 1);
    }

    #[test]
    fn teichmuller_groups() {
        let expect = |r: &GaloisRing, want: &[i64]| {
            let got = r.teichmuller_group();
            let want: Vec<Elem> = want.iter().map(|&v| r.from_int(v)).collect();
            assert_eq!(got, want);
        };
        expect(&z(3, 2), &[1, 8]);
        expect(&z(5, 2), &[1, 7, 24, 18]);
        expect(&z(11, 2), &[1, 112, 81, 118, 27, 120, 9, 40, 3, 94]);
        expect(&z(7, 2), &[1, 31, 30, 48, 18, 19]);
        let g42 = GaloisRing::new(2, 2, 2, None).unwrap();
        let teich = g42.teichmuller_group();
        assert_eq!(teich[0], g42.one());
        assert_eq!(teich[1], g42.elem(&[0, 1]).unwrap());
        assert_eq!(teich[2], g42.elem(&[3, 3]).unwrap());
        // every member is a root of x^{p^m - 1} - 1
        for t in &teich {
            assert_eq!(g42.pow(t, 3), g42.one());
        }
    }

    #[test]
    fn unit_iff_nonzero_residue_exhaustive() {
        for r in [z(3, 2), GaloisRing::new(2, 2, 2, None).unwrap(), GaloisRing::new(3, 1, 2, None).unwrap()] {
            for e in r.all_elements() {
                let unit = r.is_unit(&e);
                let proj_nonzero = !r.residue_ring().is_zero(&r.residue_project(&e));
                assert_eq!(unit, proj_nonzero);
                if unit {
                    let inv = r.invert(&e).unwrap();
                    assert_eq!(r.mul(&e, &inv), r.one());
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let r = GaloisRing::new(2, 2, 2, None).unwrap();
        for i in 0..r.element_count() {
            assert_eq!(r.index_of(&r.element_from_index(i)), i);
        }
    }

    #[test]
    fn hensel_lifts_simple_roots() {
        let r9 = z(3, 2);
        // x^2 - 1, residue root 2 lifts to 8
        let f = Poly::from_ints(&r9, &[-1, 0, 1]);
        let root = r9.hensel_lift_root(&f, &r9.residue_ring().from_int(2)).unwrap();
        assert_eq!(root, r9.from_int(8));

        let r25 = z(5, 2);
        let f4 = Poly::from_ints(&r25, &[-1, 0, 0, 0, 1]);
        let root = r25.hensel_lift_root(&f4, &r25.residue_ring().from_int(2)).unwrap();
        assert_eq!(root, r25.from_int(7));

        // x^2 at 0: root but derivative vanishes
        let sq = Poly::from_ints(&r9, &[0, 0, 1]);
        assert!(matches!(
            r9.hensel_lift_root(&sq, &r9.residue_ring().zero()),
            Err(Error::NotASimpleRoot(_))
        ));
        // not a residue root at all
        assert!(matches!(
            r9.hensel_lift_root(&f, &r9.residue_ring().zero()),
            Err(Error::NotASimpleRoot(_))
        ));
    }

    #[test]
    fn default_table_minimal_irreducible() {
        // re-derive each table entry by exhaustive search
        for &(p, m, tail) in DEFAULT_MODULI {
            let mut found = None;
            'search: for idx in 0..p.pow(m as u32) {
                let mut cand = Vec::with_capacity(m + 1);
                let mut k = idx;
                for _ in 0..m {
                    cand.push(k % p);
                    k /= p;
                }
                cand.push(1);
                if irreducible_over_fp(&cand, p).is_ok() {
                    found = Some(cand);
                    break 'search;
                }
            }
            let mut expect = tail.to_vec();
            expect.push(1);
            assert_eq!(found.unwrap(), expect, "table entry p={p} m={m}");
        }
    }

    #[test]
    fn product_ring_ops() {
        let pr = ProductRing::new(vec![z(2, 2), z(3, 2)]).unwrap();
        let a = pr.from_parts(vec![pr.factors()[0].from_int(3), pr.factors()[1].from_int(5)]).unwrap();
        let b = pr.from_parts(vec![pr.factors()[0].from_int(2), pr.factors()[1].from_int(7)]).unwrap();
        let sum = pr.add(&a, &b);
        assert_eq!(sum.parts()[0].coeffs(), &[1]);
        assert_eq!(sum.parts()[1].coeffs(), &[3]);
        let prod = pr.mul(&a, &b);
        assert_eq!(prod.parts()[0].coeffs(), &[2]);
        assert_eq!(prod.parts()[1].coeffs(), &[8]);
        assert!(pr.is_unit(&a));
        assert!(!pr.is_unit(&b)); // 2 is a zero divisor in Z_4
        assert_eq!(pr.project_component(&a, 1).unwrap().coeffs(), &[5]);
        assert!(pr.project_component(&a, 2).is_err());
        let inj = pr.inject_component(&pr.factors()[1].from_int(4), 1).unwrap();
        assert!(pr.factors()[0].is_zero(&inj.parts()[0]));
        assert_eq!(inj.parts()[1].coeffs(), &[4]);
    }
}
