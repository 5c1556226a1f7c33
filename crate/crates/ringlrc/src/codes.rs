//! Code constructions, encoding, and local erasure recovery.
//!
//! Every construction evaluates a message-dependent polynomial `f_a` on the
//! points of a block partition. The block structure keeps the restriction
//! of `f_a` to each block at low degree, so an erased coordinate is
//! recovered by interpolating the in-block survivors instead of decoding
//! the whole word.
//!
//! Message layouts are row-major in the `x`-power index `i`, then the
//! `g`-power (or basis) index `j`: coefficient `a[i*t + j]` multiplies
//! `g^j x^i`. The almost-optimal family skips the slot `(m_last-1, 0)` and
//! multiplies its high rows by the short-block annihilator, keeping the
//! per-block degrees below the local recovery thresholds.

use crate::poly::{self, GoodPolyVariant, GoodPolynomial, Poly};
use crate::ring::{Elem, GaloisRing};
use crate::sets::{self, Partition};
use crate::{Error, Result};

/// Coefficient map of the generalized construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMap {
    /// Powers of the good polynomial: `a[i*t+j]` multiplies `g^j x^i`.
    PowerBasis,
    /// Block idempotents: `a[i*t+j]` multiplies `f_{j+1}(x) x^i`.
    IdempotentBasis,
}

impl CoeffMap {
    pub fn label(&self) -> &'static str {
        match self {
            CoeffMap::PowerBasis => "power_basis",
            CoeffMap::IdempotentBasis => "idempotent_basis",
        }
    }
}

/// Construction family and its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// Blocks of size `r+1`, messages of length `r*t`, `t` good-poly powers.
    TamoBarg { r: usize, t: usize },
    /// Same shape as `TamoBarg` with a selectable coefficient basis.
    Generalized { r: usize, t: usize, map: CoeffMap },
    /// Full blocks of size `r+1` plus one short block of size `m_last`,
    /// message length `k` with `r | k+1`.
    AlmostOptimal { r: usize, k: usize, m_last: usize },
    /// Blocks of size `r+rho-1`; each block tolerates `rho-1` erasures.
    RRho { r: usize, rho: usize, t: usize },
    /// Independent MDS pieces glued by the block annihilators; block `i`
    /// carries `ks[i]` message coefficients.
    Crt { ks: Vec<usize> },
    /// Evaluation on every unit of the ring, the Teichmüller cosets first.
    Multiblocks { r: usize, t: usize, g_blocks: usize },
}

impl Construction {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Construction::TamoBarg { .. } => "tamo_barg",
            Construction::Generalized { .. } => "generalized",
            Construction::AlmostOptimal { .. } => "almost_optimal",
            Construction::RRho { .. } => "rrho",
            Construction::Crt { .. } => "crt",
            Construction::Multiblocks { .. } => "multiblocks",
        }
    }
}

/// What the construction promises about the minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceGuarantee {
    Exact(usize),
    AtLeast(usize),
}

impl DistanceGuarantee {
    pub fn lower_bound(&self) -> usize {
        match self {
            DistanceGuarantee::Exact(d) | DistanceGuarantee::AtLeast(d) => *d,
        }
    }
}

/// A validated code instance: ring, evaluation partition, good polynomial
/// (where the family uses one), and the construction parameters.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    ring: GaloisRing,
    partition: Partition,
    good_poly: Option<GoodPolynomial>,
    kind: Construction,
    n: usize,
    k: usize,
}

/// Result of repairing one erased coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    pub position: usize,
    pub value: Elem,
    /// Coordinates read to perform the repair.
    pub reads: Vec<usize>,
}

fn require_well_conditioned(ring: &GaloisRing, partition: &Partition) -> Result<()> {
    if partition.certificate().is_well_conditioned() {
        return Ok(());
    }
    match sets::is_well_conditioned(ring, partition.points())? {
        sets::ConditionCheck::Failure(i, j) => Err(Error::NotWellConditioned(i, j)),
        _ => Ok(()),
    }
}

fn require_block_sizes(partition: &Partition, size: usize) -> Result<()> {
    for (b, block) in partition.blocks().iter().enumerate() {
        if block.len() != size {
            return Err(Error::BlockSizeMismatch(format!(
                "block {b} has size {}, expected {size}",
                block.len()
            )));
        }
    }
    Ok(())
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Validate a construction against its partition and good polynomial and
/// assemble the code. The good polynomial is re-verified from scratch, so
/// callers only supply the polynomial itself.
pub fn make_code(
    ring: &GaloisRing,
    kind: Construction,
    partition: Partition,
    g: Option<Poly>,
) -> Result<CodeSpec> {
    if partition.is_empty() {
        return Err(Error::BadParameters("empty evaluation set".into()));
    }
    let n = partition.len();
    let verify_g = |g: &Option<Poly>| -> Result<GoodPolynomial> {
        let g = g
            .as_ref()
            .ok_or_else(|| Error::BadGoodPolynomial("construction requires one".into()))?;
        let good = poly::verify_good_polynomial(ring, g, &partition)?;
        if !good.monic {
            return Err(Error::BadGoodPolynomial(
                "leading coefficient must be a unit".into(),
            ));
        }
        Ok(good)
    };
    let (good_poly, k) = match &kind {
        Construction::TamoBarg { r, t } | Construction::Generalized { r, t, .. } => {
            let (r, t) = (*r, *t);
            if r < 1 || t < 1 {
                return Err(Error::BadParameters("r and t must be positive".into()));
            }
            require_well_conditioned(ring, &partition)?;
            require_block_sizes(&partition, r + 1)?;
            let l = partition.block_count();
            if t > l {
                return Err(Error::TooManyBlocksRequested(format!(
                    "t = {t} exceeds the {l} available blocks"
                )));
            }
            let good = match &kind {
                Construction::Generalized { map: CoeffMap::IdempotentBasis, .. } => {
                    match g {
                        Some(ref poly) => {
                            Some(poly::verify_good_polynomial(ring, poly, &partition)?)
                        }
                        None => None,
                    }
                }
                _ => Some(verify_g(&g)?),
            };
            (good, r * t)
        }
        Construction::AlmostOptimal { r, k, m_last } => {
            let (r, k, m_last) = (*r, *k, *m_last);
            if r < 1 || k < 1 {
                return Err(Error::BadParameters("r and k must be positive".into()));
            }
            require_well_conditioned(ring, &partition)?;
            let l = partition.block_count();
            if l < 2 {
                return Err(Error::BadParameters(
                    "needs at least one full block and the short block".into(),
                ));
            }
            if m_last < 1 || m_last > r {
                return Err(Error::BlockSizeMismatch(format!(
                    "short block size {m_last} must be in 1..={r}"
                )));
            }
            for (b, block) in partition.blocks().iter().enumerate() {
                let want = if b + 1 == l { m_last } else { r + 1 };
                if block.len() != want {
                    return Err(Error::BlockSizeMismatch(format!(
                        "block {b} has size {}, expected {want}",
                        block.len()
                    )));
                }
            }
            if (k + 1) % r != 0 {
                return Err(Error::DivisibilityViolation(format!(
                    "r = {r} must divide K+1 = {}",
                    k + 1
                )));
            }
            if k + ceil_div(k, r) > n {
                return Err(Error::BadParameters(
                    "K + ceil(K/r) must not exceed n".into(),
                ));
            }
            let good = verify_g(&g)?;
            let last_value = &good.values[l - 1];
            if !last_value.coeffs().iter().all(|&c| c == 0) {
                return Err(Error::BadGoodPolynomial(
                    "must vanish on the short block".into(),
                ));
            }
            (Some(good), k)
        }
        Construction::RRho { r, rho, t } => {
            let (r, rho, t) = (*r, *rho, *t);
            if r < 1 || t < 1 {
                return Err(Error::BadParameters("r and t must be positive".into()));
            }
            if rho < 2 {
                return Err(Error::BadParameters("rho must be at least 2".into()));
            }
            require_well_conditioned(ring, &partition)?;
            require_block_sizes(&partition, r + rho - 1)?;
            let l = partition.block_count();
            if t > l {
                return Err(Error::TooManyBlocksRequested(format!(
                    "t = {t} exceeds the {l} available blocks"
                )));
            }
            (Some(verify_g(&g)?), r * t)
        }
        Construction::Crt { ks } => {
            if let Some((i, j)) = sets::subtractive_witness(ring, partition.points()) {
                return Err(Error::NotWellConditioned(i, j));
            }
            let l = partition.block_count();
            if ks.len() != l {
                return Err(Error::LengthMismatch { expected: l, got: ks.len() });
            }
            for (b, (&ki, block)) in ks.iter().zip(partition.blocks()).enumerate() {
                if ki < 1 || ki >= block.len() {
                    return Err(Error::BadParameters(format!(
                        "K_{b} = {ki} must be in 1..{}",
                        block.len()
                    )));
                }
            }
            (None, ks.iter().sum())
        }
        Construction::Multiblocks { r, t, g_blocks } => {
            let (r, t, g_blocks) = (*r, *t, *g_blocks);
            if r < 1 || t < 1 {
                return Err(Error::BadParameters("r and t must be positive".into()));
            }
            require_block_sizes(&partition, r + 1)?;
            if n as u64 != ring.unit_count()
                || !partition.points().iter().all(|p| ring.is_unit(p))
            {
                return Err(Error::BadParameters(
                    "evaluation set must be exactly the units of the ring".into(),
                ));
            }
            let teich: std::collections::HashSet<u64> =
                ring.teichmuller_group().iter().map(|e| ring.index_of(e)).collect();
            for (b, block) in partition.blocks().iter().enumerate() {
                let inside = block
                    .iter()
                    .all(|&i| teich.contains(&ring.index_of(&partition.points()[i])));
                let outside = block
                    .iter()
                    .all(|&i| !teich.contains(&ring.index_of(&partition.points()[i])));
                if b < g_blocks && !inside {
                    return Err(Error::BadParameters(format!(
                        "block {b} must lie inside the Teichmüller group"
                    )));
                }
                if b >= g_blocks && !outside {
                    return Err(Error::BadParameters(format!(
                        "block {b} must lie outside the Teichmüller group"
                    )));
                }
            }
            if t > g_blocks {
                return Err(Error::TooManyBlocksRequested(format!(
                    "t = {t} exceeds the {g_blocks} Teichmüller blocks"
                )));
            }
            (Some(verify_g(&g)?), r * t)
        }
    };
    Ok(CodeSpec { ring: ring.clone(), partition, good_poly, kind, n, k })
}

impl CodeSpec {
    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn good_poly(&self) -> Option<&GoodPolynomial> {
        self.good_poly.as_ref()
    }

    pub fn kind(&self) -> &Construction {
        &self.kind
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Message length.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Symbols read to repair one erasure in block `b`.
    pub fn block_reads(&self, b: usize) -> usize {
        let block_len = self.partition.blocks()[b].len();
        match &self.kind {
            Construction::TamoBarg { r, .. }
            | Construction::Generalized { r, .. }
            | Construction::RRho { r, .. }
            | Construction::Multiblocks { r, .. } => *r,
            Construction::AlmostOptimal { r, m_last, .. } => {
                if block_len == r + 1 {
                    *r
                } else {
                    m_last - 1
                }
            }
            Construction::Crt { ks } => ks[b],
        }
    }

    /// Erasures tolerable inside block `b` while keeping it repairable.
    pub fn block_tolerance(&self, b: usize) -> usize {
        self.partition.blocks()[b].len() - self.block_reads(b)
    }

    /// Designed per-coordinate locality (repair read count).
    pub fn designed_locality(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.block_reads(self.partition.block_of(i))).collect()
    }

    /// Largest designed per-coordinate locality.
    pub fn locality_parameter(&self) -> usize {
        self.designed_locality().into_iter().max().unwrap_or(0)
    }

    /// Distance promised by the construction.
    pub fn designed_distance(&self) -> DistanceGuarantee {
        let (n, k) = (self.n, self.k);
        match &self.kind {
            Construction::TamoBarg { t, .. } => DistanceGuarantee::Exact(n - k - t + 2),
            Construction::Generalized { r, t, map } => match map {
                CoeffMap::PowerBasis => DistanceGuarantee::Exact(n - k - t + 2),
                CoeffMap::IdempotentBasis => {
                    let l = self.partition.block_count();
                    DistanceGuarantee::AtLeast(n - (r + 1) * (l - 1) - (r - 1))
                }
            },
            Construction::AlmostOptimal { r, .. } => {
                DistanceGuarantee::AtLeast(n - k - ceil_div(k, *r) + 1)
            }
            Construction::RRho { rho, t, .. } => {
                DistanceGuarantee::Exact(n - k + 1 - (t - 1) * (rho - 1))
            }
            Construction::Crt { ks } => {
                let d = ks
                    .iter()
                    .zip(self.partition.blocks())
                    .map(|(&ki, block)| block.len() - ki + 1)
                    .min()
                    .expect("validated nonempty");
                DistanceGuarantee::Exact(d)
            }
            Construction::Multiblocks { t, .. } => {
                let fiber = self.ring.max_ideal_size_per_residue() as usize;
                let n_teich = (self.ring.residue_field_size() - 1) as usize;
                DistanceGuarantee::Exact(fiber * (n_teich - k - t + 2))
            }
        }
    }

    fn good(&self) -> &GoodPolynomial {
        self.good_poly.as_ref().expect("validated in make_code")
    }
}

/// Slot order of the almost-optimal message layout: row-major `(i, j)` with
/// `q = (k+1)/r` columns, skipping `(m_last-1, 0)`.
fn almost_optimal_slots(r: usize, k: usize, m_last: usize) -> Vec<(usize, usize)> {
    let q = (k + 1) / r;
    let mut slots = Vec::with_capacity(k);
    for i in 0..r {
        for j in 0..q {
            if i == m_last - 1 && j == 0 {
                continue;
            }
            slots.push((i, j));
        }
    }
    debug_assert_eq!(slots.len(), k);
    slots
}

/// The encoding polynomial `f_a` for a message.
pub fn encoding_poly(spec: &CodeSpec, message: &[Elem]) -> Result<Poly> {
    let ring = spec.ring();
    if message.len() != spec.k() {
        return Err(Error::LengthMismatch { expected: spec.k(), got: message.len() });
    }
    for e in message {
        ring.check(e)?;
    }
    match &spec.kind {
        Construction::TamoBarg { r, t }
        | Construction::Generalized { r, t, map: CoeffMap::PowerBasis }
        | Construction::Multiblocks { r, t, .. } => {
            Ok(power_layout_poly(ring, &spec.good().g, message, *r, *t))
        }
        Construction::RRho { r, t, .. } => {
            Ok(power_layout_poly(ring, &spec.good().g, message, *r, *t))
        }
        Construction::Generalized { r, t, map: CoeffMap::IdempotentBasis } => {
            let basis = poly::fa_idempotent_basis(ring, spec.partition())?;
            let mut f = Poly::zero();
            for i in 0..*r {
                for j in 0..*t {
                    let a = &message[i * t + j];
                    if a.coeffs().iter().all(|&c| c == 0) {
                        continue;
                    }
                    let term = basis[j].scale(ring, a).mul_x_pow(ring, i);
                    f = f.add(ring, &term);
                }
            }
            Ok(f)
        }
        Construction::AlmostOptimal { r, k, m_last } => {
            let g = &spec.good().g;
            let l = spec.partition.block_count();
            let short = spec.partition.block_elems(l - 1);
            let h_last = poly::annihilator_poly(ring, &short)?;
            let q = (k + 1) / r;
            let mut g_pows = Vec::with_capacity(q);
            g_pows.push(Poly::constant(ring.one()));
            for _ in 1..q {
                g_pows.push(g_pows.last().unwrap().mul(ring, g));
            }
            let mut f = Poly::zero();
            for (slot, (i, j)) in almost_optimal_slots(*r, *k, *m_last).iter().enumerate() {
                let a = &message[slot];
                if a.coeffs().iter().all(|&c| c == 0) {
                    continue;
                }
                let term = if *i < *m_last {
                    g_pows[*j].scale(ring, a).mul_x_pow(ring, *i)
                } else {
                    g_pows[*j].scale(ring, a).mul_x_pow(ring, i - m_last).mul(ring, &h_last)
                };
                f = f.add(ring, &term);
            }
            Ok(f)
        }
        Construction::Crt { ks } => {
            let mut parts = Vec::with_capacity(ks.len());
            let mut offset = 0;
            for &ki in ks {
                parts.push(Poly::from_coeffs(message[offset..offset + ki].to_vec()));
                offset += ki;
            }
            crt_poly_from_parts(spec, &parts)
        }
    }
}

fn power_layout_poly(
    ring: &GaloisRing,
    g: &Poly,
    message: &[Elem],
    r: usize,
    t: usize,
) -> Poly {
    let mut g_pows = Vec::with_capacity(t);
    g_pows.push(Poly::constant(ring.one()));
    for _ in 1..t {
        g_pows.push(g_pows.last().unwrap().mul(ring, g));
    }
    let mut f = Poly::zero();
    for i in 0..r {
        for j in 0..t {
            let a = &message[i * t + j];
            if a.coeffs().iter().all(|&c| c == 0) {
                continue;
            }
            let term = g_pows[j].scale(ring, a).mul_x_pow(ring, i);
            f = f.add(ring, &term);
        }
    }
    f
}

/// The CRT encoding polynomial from per-block message polynomials: the
/// unique `f` of degree below `n` with `f ≡ a_i` on block `i`.
pub fn crt_poly_from_parts(spec: &CodeSpec, parts: &[Poly]) -> Result<Poly> {
    let Construction::Crt { ks } = &spec.kind else {
        return Err(Error::BadParameters("not a CRT code".into()));
    };
    let ring = spec.ring();
    if parts.len() != ks.len() {
        return Err(Error::LengthMismatch { expected: ks.len(), got: parts.len() });
    }
    for (b, (part, &ki)) in parts.iter().zip(ks).enumerate() {
        if part.degree().is_some_and(|d| d >= ki) {
            return Err(Error::DegreeTooHigh { block: b, limit: ki });
        }
    }
    let mut values = vec![ring.zero(); spec.n()];
    for (b, part) in parts.iter().enumerate() {
        for &i in &spec.partition.blocks()[b] {
            values[i] = part.eval(ring, &spec.partition.points()[i]);
        }
    }
    poly::lagrange_interpolate(ring, spec.partition.points(), &values)
}

/// Encode a message to its codeword.
pub fn encode(spec: &CodeSpec, message: &[Elem]) -> Result<Vec<Elem>> {
    let ring = spec.ring();
    if let Construction::Crt { ks } = &spec.kind {
        // evaluate each block polynomial directly; the interpolated f of
        // crt_poly_from_parts agrees on every point but costs more
        if message.len() != spec.k() {
            return Err(Error::LengthMismatch { expected: spec.k(), got: message.len() });
        }
        for e in message {
            ring.check(e)?;
        }
        let mut word = vec![ring.zero(); spec.n()];
        let mut offset = 0;
        for (b, &ki) in ks.iter().enumerate() {
            let part = Poly::from_coeffs(message[offset..offset + ki].to_vec());
            offset += ki;
            for &i in &spec.partition.blocks()[b] {
                word[i] = part.eval(ring, &spec.partition.points()[i]);
            }
        }
        return Ok(word);
    }
    let f = encoding_poly(spec, message)?;
    Ok(spec.partition.points().iter().map(|x| f.eval(ring, x)).collect())
}

/// Repair one erased coordinate from in-block survivors.
///
/// Reads the lexicographically first sufficient survivor set; the erased
/// coordinate's block must hold enough survivors, other blocks are ignored.
pub fn recover(spec: &CodeSpec, word: &[Option<Elem>], pos: usize) -> Result<Recovery> {
    let ring = spec.ring();
    if word.len() != spec.n() {
        return Err(Error::LengthMismatch { expected: spec.n(), got: word.len() });
    }
    if pos >= spec.n() {
        return Err(Error::IndexOutOfRange(pos));
    }
    if word[pos].is_some() {
        return Err(Error::PositionNotErased(pos));
    }
    let b = spec.partition.block_of(pos);
    let block = &spec.partition.blocks()[b];
    let present: Vec<usize> =
        block.iter().copied().filter(|&i| word[i].is_some()).collect();
    let needed = spec.block_reads(b);
    if present.len() < needed {
        return Err(Error::TooManyErasuresInBlock {
            block: b,
            erased: block.len() - present.len(),
            tolerance: spec.block_tolerance(b),
        });
    }
    let mut reads: Vec<usize> = present.into_iter().take(needed).collect();
    reads.sort_unstable();
    let pts: Vec<Elem> = reads.iter().map(|&i| spec.partition.points()[i].clone()).collect();
    let vals: Vec<Elem> =
        reads.iter().map(|&i| word[i].clone().expect("survivor present")).collect();
    let local = poly::lagrange_interpolate(ring, &pts, &vals)?;
    let value = local.eval(ring, &spec.partition.points()[pos]);
    Ok(Recovery { position: pos, value, reads })
}

/// Repair every erased coordinate independently.
pub fn recover_all(spec: &CodeSpec, word: &[Option<Elem>]) -> Result<Vec<Recovery>> {
    if word.len() != spec.n() {
        return Err(Error::LengthMismatch { expected: spec.n(), got: word.len() });
    }
    (0..word.len())
        .filter(|&i| word[i].is_none())
        .map(|i| recover(spec, word, i))
        .collect()
}

/// Tamo-Barg style code on the cosets of the order-`h` subgroup of the
/// Teichmüller group, with good polynomial `x^h`.
pub fn tamo_barg_from_subgroup(ring: &GaloisRing, h: u64, t: usize) -> Result<CodeSpec> {
    let (partition, g, r) = subgroup_scaffold(ring, h)?;
    make_code(ring, Construction::TamoBarg { r, t }, partition, Some(g))
}

/// Generalized construction on the same coset scaffold as
/// [`tamo_barg_from_subgroup`], with a selectable coefficient basis.
pub fn generalized_from_subgroup(
    ring: &GaloisRing,
    h: u64,
    t: usize,
    map: CoeffMap,
) -> Result<CodeSpec> {
    let (partition, g, r) = subgroup_scaffold(ring, h)?;
    make_code(ring, Construction::Generalized { r, t, map }, partition, Some(g))
}

fn subgroup_scaffold(ring: &GaloisRing, h: u64) -> Result<(Partition, Poly, usize)> {
    if h < 2 {
        return Err(Error::BadParameters("subgroup order must be at least 2".into()));
    }
    let teich = ring.teichmuller_group();
    let subgroup = sets::subgroup_of_order(ring, &teich, h)?;
    let partition = sets::coset_partition(ring, &teich, &subgroup)?;
    let good =
        poly::subgroup_good_polynomial(ring, &partition, &subgroup, GoodPolyVariant::Xh)?;
    Ok((partition, good.g, h as usize - 1))
}

/// Almost-optimal code over the cosets of the order-`h` subgroup. With
/// `zero_block` the short block is `{0}`; otherwise the last coset is
/// truncated to its `m_last` smallest elements and the good polynomial is
/// shifted to vanish there.
pub fn almost_optimal_from_subgroup(
    ring: &GaloisRing,
    h: u64,
    k: usize,
    m_last: usize,
    zero_block: bool,
) -> Result<CodeSpec> {
    if h < 2 {
        return Err(Error::BadParameters("subgroup order must be at least 2".into()));
    }
    let teich = ring.teichmuller_group();
    let subgroup = sets::subgroup_of_order(ring, &teich, h)?;
    let cosets = sets::coset_partition(ring, &teich, &subgroup)?;
    let good =
        poly::subgroup_good_polynomial(ring, &cosets, &subgroup, GoodPolyVariant::Xh)?;
    let r = h as usize - 1;
    if zero_block {
        if m_last != 1 {
            return Err(Error::BadParameters(
                "the zero block has size 1; pass m_last = 1".into(),
            ));
        }
        let mut points = cosets.points().to_vec();
        let mut blocks = cosets.blocks().to_vec();
        blocks.push(vec![points.len()]);
        points.push(ring.zero());
        let partition = Partition::new(ring, points, blocks)?;
        return make_code(
            ring,
            Construction::AlmostOptimal { r, k, m_last },
            partition,
            Some(good.g),
        );
    }
    let l = cosets.block_count();
    if l < 2 {
        return Err(Error::BadParameters(
            "needs at least two cosets to shorten the last one".into(),
        ));
    }
    if m_last < 1 || m_last > r {
        return Err(Error::BlockSizeMismatch(format!(
            "short block size {m_last} must be in 1..={r}"
        )));
    }
    let mut points: Vec<Elem> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for b in 0..l {
        let mut elems = cosets.block_elems(b);
        if b + 1 == l {
            elems.sort_by_key(|e| ring.index_of(e));
            elems.truncate(m_last);
        }
        let start = points.len();
        points.extend(elems);
        blocks.push((start..points.len()).collect());
    }
    let partition = Partition::new(ring, points, blocks)?;
    // shift the subgroup polynomial so it vanishes on the truncated coset
    let shifted = good.g.sub(ring, &Poly::constant(good.values[l - 1].clone()));
    make_code(ring, Construction::AlmostOptimal { r, k, m_last }, partition, Some(shifted))
}

/// `(r, rho)`-locality code on the cosets of the order-`h` subgroup:
/// block size `h = r + rho - 1`, each block tolerating `rho - 1` erasures.
pub fn rrho_from_subgroup(
    ring: &GaloisRing,
    h: u64,
    rho: usize,
    t: usize,
) -> Result<CodeSpec> {
    if rho < 2 || (h as usize) < rho {
        return Err(Error::BadParameters(
            "need rho >= 2 and block size r + rho - 1 with r >= 1".into(),
        ));
    }
    let (partition, g, _) = subgroup_scaffold(ring, h)?;
    let r = h as usize - rho + 1;
    make_code(ring, Construction::RRho { r, rho, t }, partition, Some(g))
}

/// CRT-glued MDS blocks on the cosets of the order-`h` subgroup.
pub fn crt_from_subgroup(ring: &GaloisRing, h: u64, ks: Vec<usize>) -> Result<CodeSpec> {
    if h < 2 {
        return Err(Error::BadParameters("subgroup order must be at least 2".into()));
    }
    let teich = ring.teichmuller_group();
    let subgroup = sets::subgroup_of_order(ring, &teich, h)?;
    let partition = sets::coset_partition(ring, &teich, &subgroup)?;
    make_code(ring, Construction::Crt { ks }, partition, None)
}

/// Code on every unit of the ring, blocks the cosets of the order-`h`
/// subgroup with the Teichmüller cosets leading.
pub fn multiblocks_from_subgroup(ring: &GaloisRing, h: u64, t: usize) -> Result<CodeSpec> {
    if h < 2 {
        return Err(Error::BadParameters("subgroup order must be at least 2".into()));
    }
    let teich = ring.teichmuller_group();
    let subgroup = sets::subgroup_of_order(ring, &teich, h)?;
    let (partition, g_blocks) = sets::multiblocks_partition(ring, &subgroup)?;
    let good =
        poly::subgroup_good_polynomial(ring, &partition, &subgroup, GoodPolyVariant::Xh)?;
    let r = h as usize - 1;
    make_code(
        ring,
        Construction::Multiblocks { r, t, g_blocks },
        partition,
        Some(good.g),
    )
}
