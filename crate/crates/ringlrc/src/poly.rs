//! Univariate polynomials over a Galois ring.
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! the zero polynomial has an empty coefficient vector and degree `None`.
//! "Monic" follows the chain-ring convention: a unit leading coefficient,
//! not necessarily 1. Division is only defined against such divisors.
//!
//! On top of the arithmetic this module provides the interpolation and
//! good-polynomial machinery: Lagrange interpolation over well-conditioned
//! point sets, block annihilators, the subgroup good polynomials `x^h` and
//! `x^h - 1`, and the two coefficient bases (idempotent and power) of the
//! algebra of block-constant functions.

use crate::ring::{Elem, GaloisRing};
use crate::sets::{self, ConditionCheck, Partition};
use crate::{Error, Result};

/// Shape of the subgroup good polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoodPolyVariant {
    /// `x^h`, constant on cosets of a subgroup of order `h`.
    Xh,
    /// `x^h - 1`, vanishing on the subgroup itself.
    XhMinusOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

fn elem_is_zero(e: &Elem) -> bool {
    e.coeffs().iter().all(|&c| c == 0)
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Elem>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(ring: &GaloisRing, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn constant(c: Elem) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn x_pow(ring: &GaloisRing, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = ring.one();
        Poly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(elem_is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing in for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn coeff(&self, ring: &GaloisRing, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// Unit leading coefficient (the chain-ring notion of monic).
    pub fn is_monic(&self, ring: &GaloisRing) -> bool {
        self.leading().is_some_and(|c| ring.is_unit(c))
    }

    pub fn eval(&self, ring: &GaloisRing, x: &Elem) -> Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl FnMut(&Elem) -> Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, ring: &GaloisRing, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.add(&self.coeff(ring, i), &other.coeff(ring, i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, ring: &GaloisRing) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| ring.neg(c)).collect())
    }

    pub fn sub(&self, ring: &GaloisRing, other: &Poly) -> Poly {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &GaloisRing, c: &Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    pub fn mul_x_pow(&self, ring: &GaloisRing, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn mul(&self, ring: &GaloisRing, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if elem_is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, ring: &GaloisRing, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn derivative(&self, ring: &GaloisRing) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.mul(&ring.from_int(i as i64), c))
            .collect();
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder against a divisor with unit leading
    /// coefficient.
    pub fn divmod_monic(&self, ring: &GaloisRing, divisor: &Poly) -> Result<(Poly, Poly)> {
        if !divisor.is_monic(ring) {
            return Err(Error::BadParameters(
                "division requires a unit leading coefficient".into(),
            ));
        }
        let d = divisor.coeffs.len() - 1;
        let lead_inv = ring.invert(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![ring.zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let factor = ring.mul(&rem[top], &lead_inv);
            if elem_is_zero(&factor) {
                continue;
            }
            quot[top - d] = factor.clone();
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + k;
                rem[idx] = ring.sub(&rem[idx], &ring.mul(&factor, dc));
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Human-readable rendering, highest power first.
    pub fn pretty(&self, ring: &GaloisRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if elem_is_zero(c) {
                continue;
            }
            let cs = ring.format_elem(c);
            let part = match i {
                0 => cs,
                1 if cs == "1" => "x".into(),
                1 => format!("{cs}*x"),
                _ if cs == "1" => format!("x^{i}"),
                _ => format!("{cs}*x^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// `(x - r_1)(x - r_2)...` for the given roots.
pub fn from_roots(ring: &GaloisRing, roots: &[Elem]) -> Poly {
    let mut acc = Poly::constant(ring.one());
    for r in roots {
        let factor = Poly::from_coeffs(vec![ring.neg(r), ring.one()]);
        acc = acc.mul(ring, &factor);
    }
    acc
}

/// Monic polynomial of degree `|points|` vanishing exactly on the points.
pub fn annihilator_poly(ring: &GaloisRing, points: &[Elem]) -> Result<Poly> {
    sets::ensure_distinct(ring, points)?;
    Ok(from_roots(ring, points))
}

/// Unique polynomial of degree below `points.len()` through the given
/// values. Requires a well-conditioned point set so every interpolation
/// denominator is a unit.
pub fn lagrange_interpolate(
    ring: &GaloisRing,
    points: &[Elem],
    values: &[Elem],
) -> Result<Poly> {
    if points.len() != values.len() {
        return Err(Error::LengthMismatch { expected: points.len(), got: values.len() });
    }
    if let ConditionCheck::Failure(i, j) = sets::is_well_conditioned(ring, points)? {
        return Err(Error::NotWellConditioned(i, j));
    }
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if elem_is_zero(yi) {
            continue;
        }
        let mut num = Poly::constant(ring.one());
        let mut den = ring.one();
        for (j, xj) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            num = num.mul(ring, &Poly::from_coeffs(vec![ring.neg(xj), ring.one()]));
            den = ring.mul(&den, &ring.sub(xi, xj));
        }
        let scale = ring.mul(yi, &ring.invert(&den)?);
        acc = acc.add(ring, &num.scale(ring, &scale));
    }
    Ok(acc)
}

/// A block-constant polynomial with its per-block values and the flags the
/// encoders consult.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPolynomial {
    pub g: Poly,
    /// Value on each block, in block order.
    pub values: Vec<Elem>,
    /// Leading coefficient is a unit.
    pub monic: bool,
    /// All pairwise value differences are units (the Vandermonde condition
    /// for the power basis).
    pub values_subtractive: bool,
}

/// Check a candidate good polynomial against a partition: degree must equal
/// the largest block size and the polynomial must be constant on every
/// block. Non-monic candidates and non-subtractive value sets are reported
/// through the flags rather than rejected.
pub fn verify_good_polynomial(
    ring: &GaloisRing,
    g: &Poly,
    partition: &Partition,
) -> Result<GoodPolynomial> {
    let expected = partition.max_block_size();
    if g.degree() != Some(expected) {
        let got = match g.degree() {
            Some(d) => d.to_string(),
            None => "-inf".into(),
        };
        return Err(Error::WrongDegree { expected, got });
    }
    let mut values = Vec::with_capacity(partition.block_count());
    for (b, block) in partition.blocks().iter().enumerate() {
        let first = g.eval(ring, &partition.points()[block[0]]);
        for &i in &block[1..] {
            let v = g.eval(ring, &partition.points()[i]);
            if v != first {
                return Err(Error::NotConstantOnBlock {
                    block: b,
                    first: ring.format_elem(&first),
                    second: ring.format_elem(&v),
                });
            }
        }
        values.push(first);
    }
    Ok(GoodPolynomial {
        g: g.clone(),
        monic: g.is_monic(ring),
        values_subtractive: sets::pairwise_differences_unit(ring, &values),
        values,
    })
}

/// Good polynomial for a coset partition of a subgroup of order `h`:
/// `x^h` or `x^h - 1`, both constant on every coset.
pub fn subgroup_good_polynomial(
    ring: &GaloisRing,
    partition: &Partition,
    subgroup: &[Elem],
    variant: GoodPolyVariant,
) -> Result<GoodPolynomial> {
    let h = subgroup.len();
    for (b, block) in partition.blocks().iter().enumerate() {
        if block.len() != h {
            return Err(Error::PartitionNotCosets(b));
        }
        let rep = &partition.points()[block[0]];
        let coset: std::collections::HashSet<u64> =
            subgroup.iter().map(|s| ring.index_of(&ring.mul(rep, s))).collect();
        let is_coset = block
            .iter()
            .all(|&i| coset.contains(&ring.index_of(&partition.points()[i])));
        if !is_coset {
            return Err(Error::PartitionNotCosets(b));
        }
    }
    let mut g = Poly::x_pow(ring, h);
    if variant == GoodPolyVariant::XhMinusOne {
        g = g.sub(ring, &Poly::constant(ring.one()));
    }
    verify_good_polynomial(ring, &g, partition)
}

/// Idempotent basis of the block-constant function algebra: polynomial
/// `f_b` of degree below `n` that is 1 on block `b` and 0 elsewhere.
pub fn fa_idempotent_basis(ring: &GaloisRing, partition: &Partition) -> Result<Vec<Poly>> {
    if let ConditionCheck::Failure(i, j) = sets::is_well_conditioned(ring, partition.points())?
    {
        return Err(Error::NotWellConditioned(i, j));
    }
    let n = partition.len();
    let mut basis = Vec::with_capacity(partition.block_count());
    for block in partition.blocks() {
        let values: Vec<Elem> = (0..n)
            .map(|i| if block.contains(&i) { ring.one() } else { ring.zero() })
            .collect();
        basis.push(lagrange_interpolate(ring, partition.points(), &values)?);
    }
    Ok(basis)
}

/// Whether `{1, g, g^2, ...}` spans the block-constant algebra: true iff
/// the per-block values have unit pairwise differences (a Vandermonde
/// determinant that is a unit).
pub fn fa_power_basis_check(ring: &GaloisRing, good: &GoodPolynomial) -> bool {
    sets::pairwise_differences_unit(ring, &good.values)
}

/// Number of roots of `f` in the given domain.
pub fn count_roots(ring: &GaloisRing, f: &Poly, domain: &[Elem]) -> usize {
    domain.iter().filter(|x| elem_is_zero(&f.eval(ring, x))).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::coset_partition;

    fn zn(p: u64, s: u32) -> GaloisRing {
        GaloisRing::new(p, s, 1, None).unwrap()
    }

    fn ints(ring: &GaloisRing, vals: &[i64]) -> Vec<Elem> {
        vals.iter().map(|&v| ring.from_int(v)).collect()
    }

    #[test]
    fn arithmetic_and_degree() {
        let r = zn(11, 2);
        let f = Poly::from_ints(&r, &[1, 3, 0, 11, 0, 0, 7, 0, 1]);
        assert_eq!(f.degree(), Some(8));
        assert!(Poly::zero().degree().is_none());
        assert_eq!(Poly::from_ints(&r, &[0, 0]).degree(), None);
        let g = Poly::from_ints(&r, &[5, 1]);
        let prod = f.mul(&r, &g);
        assert_eq!(prod.degree(), Some(9));
        let (q, rem) = prod.divmod_monic(&r, &g).unwrap();
        assert_eq!(q, f);
        assert!(rem.is_zero());
        let d = f.derivative(&r);
        assert_eq!(d, Poly::from_ints(&r, &[3, 0, 33, 0, 0, 42, 0, 8]));
        assert_eq!(f.pow(&r, 2), f.mul(&r, &f));
        assert!(f.is_monic(&r));
        // unit leading coefficient counts as monic even when it is not 1
        assert!(Poly::from_ints(&r, &[0, 2]).is_monic(&r));
        assert!(!Poly::from_ints(&r, &[1, 11]).is_monic(&r));
    }

    #[test]
    fn eval_matches_hand_computed_codeword() {
        let r = zn(11, 2);
        let f = Poly::from_ints(&r, &[1, 3, 0, 11, 0, 0, 7, 0, 1]);
        let points = ints(&r, &[1, 3, 9, 27, 81, 40, 120, 118, 112, 94]);
        let want = ints(&r, &[23, 113, 6, 33, 72, 114, 116, 106, 7, 25]);
        let got: Vec<Elem> = points.iter().map(|x| f.eval(&r, x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn interpolation_recovers_local_polynomial() {
        let r = zn(11, 2);
        let pts = ints(&r, &[1, 3, 9, 27]);
        let vals = ints(&r, &[23, 113, 6, 33]);
        let delta = lagrange_interpolate(&r, &pts, &vals).unwrap();
        assert_eq!(delta, Poly::from_ints(&r, &[1, 10, 0, 12]));
        assert_eq!(delta.eval(&r, &r.from_int(81)), r.from_int(72));

        let r9 = zn(3, 2);
        assert_eq!(
            lagrange_interpolate(&r9, &ints(&r9, &[3, 6]), &ints(&r9, &[1, 2])).unwrap_err(),
            Error::NotWellConditioned(0, 1)
        );
        assert_eq!(
            lagrange_interpolate(&r9, &ints(&r9, &[1, 2]), &ints(&r9, &[1])).unwrap_err(),
            Error::LengthMismatch { expected: 2, got: 1 }
        );
    }

    #[test]
    fn interpolation_roundtrip_with_special_point() {
        let r = zn(5, 2);
        // one zero point plus units: still uniquely interpolable
        let pts = ints(&r, &[0, 1, 7, 24]);
        let vals = ints(&r, &[3, 14, 2, 21]);
        let f = lagrange_interpolate(&r, &pts, &vals).unwrap();
        assert!(f.degree().unwrap() < 4);
        for (x, y) in pts.iter().zip(&vals) {
            assert_eq!(f.eval(&r, x), *y);
        }
    }

    #[test]
    fn annihilators() {
        let r9 = zn(3, 2);
        assert_eq!(
            annihilator_poly(&r9, &ints(&r9, &[1, 8])).unwrap(),
            Poly::from_ints(&r9, &[8, 0, 1])
        );
        let r121 = zn(11, 2);
        assert_eq!(
            annihilator_poly(&r121, &ints(&r121, &[1, 3, 9, 27, 81])).unwrap(),
            Poly::from_ints(&r121, &[120, 0, 0, 0, 0, 1])
        );
        let gr42 = GaloisRing::new(2, 2, 2, None).unwrap();
        let g = gr42.teichmuller_group();
        let ann = annihilator_poly(&gr42, &g).unwrap();
        let want = Poly::from_coeffs(vec![
            gr42.elem(&[3, 0]).unwrap(),
            gr42.zero(),
            gr42.zero(),
            gr42.elem(&[1, 0]).unwrap(),
        ]);
        assert_eq!(ann, want);
    }

    #[test]
    fn subgroup_good_polynomials() {
        let r25 = zn(5, 2);
        let h = ints(&r25, &[1, 24]);
        let g4 = r25.teichmuller_group();
        let part = coset_partition(&r25, &g4, &h).unwrap();
        let good = subgroup_good_polynomial(&r25, &part, &h, GoodPolyVariant::Xh).unwrap();
        assert_eq!(good.g, Poly::from_ints(&r25, &[0, 0, 1]));
        assert_eq!(good.values, ints(&r25, &[1, 24]));
        assert!(good.monic && good.values_subtractive);
        let good1 =
            subgroup_good_polynomial(&r25, &part, &h, GoodPolyVariant::XhMinusOne).unwrap();
        assert_eq!(good1.values, ints(&r25, &[0, 23]));
        assert!(good1.values_subtractive);

        let r9 = zn(3, 2);
        let h9 = ints(&r9, &[1, 8]);
        let units_part = coset_partition(&r9, &r9.units(), &h9).unwrap();
        let g9 = subgroup_good_polynomial(&r9, &units_part, &h9, GoodPolyVariant::Xh).unwrap();
        assert_eq!(g9.values, ints(&r9, &[1, 4, 7]));
        // 4 - 1 = 3 is a zero divisor, so the power basis is unavailable
        assert!(!g9.values_subtractive);
        assert!(!fa_power_basis_check(&r9, &g9));

        // partition that is not made of cosets of the subgroup
        let bad = Partition::new(&r9, ints(&r9, &[1, 2]), vec![vec![0, 1]]).unwrap();
        assert_eq!(
            subgroup_good_polynomial(&r9, &bad, &h9, GoodPolyVariant::Xh).unwrap_err(),
            Error::PartitionNotCosets(0)
        );
    }

    #[test]
    fn verify_rejects_wrong_shape() {
        let r25 = zn(5, 2);
        let part = Partition::new(&r25, ints(&r25, &[1, 7]), vec![vec![0, 1]]).unwrap();
        let x2 = Poly::from_ints(&r25, &[0, 0, 1]);
        assert_eq!(
            verify_good_polynomial(&r25, &x2, &part).unwrap_err(),
            Error::NotConstantOnBlock { block: 0, first: "1".into(), second: "24".into() }
        );
        let x3 = Poly::from_ints(&r25, &[0, 0, 0, 1]);
        assert_eq!(
            verify_good_polynomial(&r25, &x3, &part).unwrap_err(),
            Error::WrongDegree { expected: 2, got: "3".into() }
        );
        // non-monic candidates pass verification with the flag cleared
        let part2 = Partition::new(&r25, ints(&r25, &[1, 24]), vec![vec![0, 1]]).unwrap();
        let g = Poly::from_ints(&r25, &[0, 0, 5]);
        let checked = verify_good_polynomial(&r25, &g, &part2).unwrap();
        assert!(!checked.monic);
    }

    #[test]
    fn idempotent_basis_is_partition_of_unity() {
        let r25 = zn(5, 2);
        let h = ints(&r25, &[1, 24]);
        let g4 = r25.teichmuller_group();
        let part = coset_partition(&r25, &g4, &h).unwrap();
        let basis = fa_idempotent_basis(&r25, &part).unwrap();
        assert_eq!(basis[0], Poly::from_ints(&r25, &[13, 0, 13]));
        assert_eq!(basis[1], Poly::from_ints(&r25, &[13, 0, 12]));
        let sum = basis[0].add(&r25, &basis[1]);
        assert_eq!(sum, Poly::from_ints(&r25, &[1]));
        // idempotency on the evaluation set
        for f in &basis {
            for x in part.points() {
                let v = f.eval(&r25, x);
                assert_eq!(r25.mul(&v, &v), v);
            }
        }

        let r9 = zn(3, 2);
        let bad = Partition::new(&r9, ints(&r9, &[3, 6]), vec![vec![0], vec![1]]).unwrap();
        assert_eq!(
            fa_idempotent_basis(&r9, &bad).unwrap_err(),
            Error::NotWellConditioned(0, 1)
        );
    }

    #[test]
    fn nonconstant_block_functions_have_high_degree() {
        // any block-constant function that is not globally constant has
        // degree at least the largest block size
        let r25 = zn(5, 2);
        let h = ints(&r25, &[1, 24]);
        let g4 = r25.teichmuller_group();
        let part = coset_partition(&r25, &g4, &h).unwrap();
        let basis = fa_idempotent_basis(&r25, &part).unwrap();
        for c1 in 0..5 {
            for c2 in 0..5 {
                if c1 == c2 {
                    continue;
                }
                let f = basis[0]
                    .scale(&r25, &r25.from_int(c1))
                    .add(&r25, &basis[1].scale(&r25, &r25.from_int(c2)));
                assert!(f.degree().unwrap() >= part.max_block_size());
            }
        }
    }

    #[test]
    fn power_basis_check_on_values() {
        let r121 = zn(11, 2);
        let mk = |vals: &[i64]| GoodPolynomial {
            g: Poly::x_pow(&r121, 5),
            values: ints(&r121, vals),
            monic: true,
            values_subtractive: false,
        };
        assert!(fa_power_basis_check(&r121, &mk(&[1, 120])));
        assert!(!fa_power_basis_check(&r121, &mk(&[1, 12])));
    }

    #[test]
    fn root_counts_respect_chain_ring_bound() {
        let r25 = zn(5, 2);
        let f = Poly::from_ints(&r25, &[-5, 0, 5]);
        let all = r25.all_elements();
        // degree 2 over a ring with 5-element maximal ideal fibers: at most
        // 2 * 5 roots, attained here
        assert_eq!(count_roots(&r25, &f, &all), 10);
        let g = Poly::from_ints(&r25, &[24, 0, 1]);
        assert_eq!(count_roots(&r25, &g, &all), 2);
    }
}
