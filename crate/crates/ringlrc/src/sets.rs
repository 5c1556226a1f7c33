//! Evaluation sets and their block partitions.
//!
//! A code instance evaluates polynomials on an ordered point sequence split
//! into blocks (the repair groups). This module certifies the two set
//! conditions that make interpolation sound — subtractive (all points units,
//! all pairwise differences units) and well-conditioned (subtractive up to
//! one zero or zero-divisor point) — and builds the coset partitions of
//! subgroups of the Teichmüller group.
//!
//! Orderings are deterministic so codeword coordinates are reproducible:
//! a subgroup is listed in power order of its smallest generator, a coset
//! in translate order `rep·H` with `rep` its smallest element, and blocks
//! by smallest representative.

use crate::ring::{Elem, GaloisRing};
use crate::{Error, Result};
use std::collections::HashSet;

/// Certification state carried by a [`Partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// All points are units with unit pairwise differences.
    Subtractive,
    /// Point at this index is 0 or a zero divisor; the rest are subtractive.
    WellConditionedWithSpecial(usize),
    /// Neither condition holds.
    Uncertified,
}

impl Certificate {
    pub fn is_well_conditioned(&self) -> bool {
        !matches!(self, Certificate::Uncertified)
    }

    pub fn label(&self) -> String {
        match self {
            Certificate::Subtractive => "subtractive".into(),
            Certificate::WellConditionedWithSpecial(i) => {
                format!("well_conditioned_with_special:{i}")
            }
            Certificate::Uncertified => "uncertified".into(),
        }
    }
}

/// Outcome of [`is_well_conditioned`]: a certificate or a witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionCheck {
    Subtractive,
    WellConditionedWithSpecial(usize),
    /// Indices of a pair that violates the condition (equal indices mark a
    /// single offending non-unit point).
    Failure(usize, usize),
}

impl ConditionCheck {
    pub fn certificate(&self) -> Certificate {
        match self {
            ConditionCheck::Subtractive => Certificate::Subtractive,
            ConditionCheck::WellConditionedWithSpecial(i) => {
                Certificate::WellConditionedWithSpecial(*i)
            }
            ConditionCheck::Failure(_, _) => Certificate::Uncertified,
        }
    }
}

/// An ordered evaluation set with its block decomposition.
///
/// `points` is the codeword coordinate order; `blocks` are index sets into
/// it, forming an exact partition of `0..points.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    points: Vec<Elem>,
    blocks: Vec<Vec<usize>>,
    certificate: Certificate,
}

impl Partition {
    /// Validate points (distinct) and blocks (exact cover of the index
    /// range), then certify the point set.
    pub fn new(ring: &GaloisRing, points: Vec<Elem>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        for p in &points {
            ring.check(p)?;
        }
        ensure_distinct(ring, &points)?;
        let n = points.len();
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::BadParameters("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange(i));
                }
                if seen[i] {
                    return Err(Error::BadParameters(format!(
                        "coordinate {i} appears in two blocks"
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::BadParameters("blocks do not cover all coordinates".into()));
        }
        let certificate = is_well_conditioned(ring, &points)?.certificate();
        Ok(Partition { points, blocks, certificate })
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Number of evaluation points `n`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Elements of block `b` in coordinate order.
    pub fn block_elems(&self, b: usize) -> Vec<Elem> {
        self.blocks[b].iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Index of the block containing coordinate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&i))
            .expect("coordinate outside partition")
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }
}

pub(crate) fn ensure_distinct(ring: &GaloisRing, points: &[Elem]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(ring.index_of(p)) {
            return Err(Error::DuplicatePoints);
        }
    }
    Ok(())
}

/// True iff every pairwise difference is a unit (the points themselves may
/// be anything). This is the Vandermonde-determinant condition used for
/// good-polynomial values.
pub fn pairwise_differences_unit(ring: &GaloisRing, points: &[Elem]) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if !ring.is_unit(&ring.sub(&points[i], &points[j])) {
                return false;
            }
        }
    }
    true
}

/// True iff all points are units and every pairwise difference is a unit.
pub fn is_subtractive(ring: &GaloisRing, points: &[Elem]) -> Result<bool> {
    ensure_distinct(ring, points)?;
    Ok(points.iter().all(|p| ring.is_unit(p)) && pairwise_differences_unit(ring, points))
}

/// First violation of subtractiveness, as a witness index pair; `(i, i)`
/// marks a non-unit point, `(i, j)` a non-unit difference.
pub fn subtractive_witness(ring: &GaloisRing, points: &[Elem]) -> Option<(usize, usize)> {
    for (i, p) in points.iter().enumerate() {
        if !ring.is_unit(p) {
            return Some((i, i));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if !ring.is_unit(&ring.sub(&points[i], &points[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Classify a point set: subtractive, well-conditioned with one special
/// (zero or zero-divisor) point, or failed with a witness pair.
pub fn is_well_conditioned(ring: &GaloisRing, points: &[Elem]) -> Result<ConditionCheck> {
    ensure_distinct(ring, points)?;
    let non_units: Vec<usize> =
        (0..points.len()).filter(|&i| !ring.is_unit(&points[i])).collect();
    match non_units.as_slice() {
        [] => match subtractive_witness(ring, points) {
            None => Ok(ConditionCheck::Subtractive),
            Some((i, j)) => Ok(ConditionCheck::Failure(i, j)),
        },
        [special] => {
            let rest: Vec<Elem> = points
                .iter()
                .enumerate()
                .filter(|(i, _)| i != special)
                .map(|(_, p)| p.clone())
                .collect();
            match subtractive_witness(ring, &rest) {
                None => Ok(ConditionCheck::WellConditionedWithSpecial(*special)),
                Some((i, j)) => {
                    // map witness indices back to the original sequence
                    let back = |k: usize| if k >= *special { k + 1 } else { k };
                    Ok(ConditionCheck::Failure(back(i), back(j)))
                }
            }
        }
        more => Ok(ConditionCheck::Failure(more[0], more[1])),
    }
}

/// The maximal subtractive subset of the ring: the Teichmüller group, in
/// its canonical power order.
pub fn maximal_subtractive_set(ring: &GaloisRing) -> Vec<Elem> {
    ring.teichmuller_group()
}

/// The subgroup of order `h` of a cyclic group given as an element list.
/// `h` must divide the group order. The result is listed in power order of
/// its smallest generator under the canonical element ordering.
pub fn subgroup_of_order(ring: &GaloisRing, group: &[Elem], h: u64) -> Result<Vec<Elem>> {
    let q = group.len() as u64;
    if h == 0 || !q.is_multiple_of(h) {
        return Err(Error::OrderDoesNotDivide(h, q));
    }
    // members of the unique order-h subgroup of a cyclic group: powers of
    // g^(q/h) for any generator g; taking every (q/h)-th element of the
    // given power-ordered list yields exactly that subgroup as a set
    let members: Vec<Elem> =
        (0..h).map(|k| group[(k * (q / h)) as usize].clone()).collect();
    if h == 1 {
        return Ok(members);
    }
    let member_set: HashSet<u64> = members.iter().map(|e| ring.index_of(e)).collect();
    let generator = members
        .iter()
        .filter(|e| order_in_group(ring, e, h) == h)
        .min_by_key(|e| ring.index_of(e))
        .cloned()
        .expect("cyclic subgroup has a generator");
    let mut out = Vec::with_capacity(h as usize);
    let mut x = ring.one();
    for _ in 0..h {
        debug_assert!(member_set.contains(&ring.index_of(&x)));
        out.push(x.clone());
        x = ring.mul(&x, &generator);
    }
    Ok(out)
}

fn order_in_group(ring: &GaloisRing, e: &Elem, bound: u64) -> u64 {
    let mut x = e.clone();
    for k in 1..=bound {
        if x == ring.one() {
            return k;
        }
        x = ring.mul(&x, e);
    }
    bound + 1
}

fn check_subgroup(ring: &GaloisRing, subgroup: &[Elem]) -> Result<HashSet<u64>> {
    let set: HashSet<u64> = subgroup.iter().map(|e| ring.index_of(e)).collect();
    if set.len() != subgroup.len() {
        return Err(Error::NotASubgroup("repeated elements".into()));
    }
    if !set.contains(&ring.index_of(&ring.one())) {
        return Err(Error::NotASubgroup("missing identity".into()));
    }
    for a in subgroup {
        if !ring.is_unit(a) {
            return Err(Error::NotASubgroup(format!("{} is not a unit", ring.format_elem(a))));
        }
        for b in subgroup {
            if !set.contains(&ring.index_of(&ring.mul(a, b))) {
                return Err(Error::NotASubgroup(format!(
                    "not closed: {} * {}",
                    ring.format_elem(a),
                    ring.format_elem(b)
                )));
            }
        }
    }
    Ok(set)
}

/// Partition a universe of units into cosets of `subgroup`.
///
/// Blocks are ordered by smallest representative; each block is listed in
/// translate order `rep·H` following the subgroup's own listing.
pub fn coset_partition(
    ring: &GaloisRing,
    universe: &[Elem],
    subgroup: &[Elem],
) -> Result<Partition> {
    check_subgroup(ring, subgroup)?;
    let mut remaining: HashSet<u64> = HashSet::new();
    for u in universe {
        if !ring.is_unit(u) {
            return Err(Error::UniverseNotClosed);
        }
        remaining.insert(ring.index_of(u));
    }
    if remaining.len() != universe.len() {
        return Err(Error::DuplicatePoints);
    }
    let mut points = Vec::with_capacity(universe.len());
    let mut blocks = Vec::new();
    let mut order: Vec<u64> = remaining.iter().copied().collect();
    order.sort_unstable();
    for rep_idx in order {
        if !remaining.contains(&rep_idx) {
            continue;
        }
        let rep = ring.element_from_index(rep_idx);
        let start = points.len();
        for h in subgroup {
            let e = ring.mul(&rep, h);
            let idx = ring.index_of(&e);
            if !remaining.remove(&idx) {
                return Err(Error::UniverseNotClosed);
            }
            points.push(e);
        }
        blocks.push((start..points.len()).collect());
    }
    Partition::new(ring, points, blocks)
}

/// Partition all of `N(R)` into cosets of `subgroup` (a subgroup of the
/// Teichmüller group), listing the cosets inside the Teichmüller group
/// first so the maximal subtractive subset is a prefix of the coordinates.
/// Returns the partition and the number of leading Teichmüller blocks.
pub fn multiblocks_partition(
    ring: &GaloisRing,
    subgroup: &[Elem],
) -> Result<(Partition, usize)> {
    let teich = ring.teichmuller_group();
    let teich_set: HashSet<u64> = teich.iter().map(|e| ring.index_of(e)).collect();
    for h in subgroup {
        if !teich_set.contains(&ring.index_of(h)) {
            return Err(Error::NotASubgroup(
                "subgroup must lie inside the Teichmüller group".into(),
            ));
        }
    }
    let inner = coset_partition(ring, &teich, subgroup)?;
    let outer_universe: Vec<Elem> = ring
        .units()
        .into_iter()
        .filter(|u| !teich_set.contains(&ring.index_of(u)))
        .collect();
    let g_blocks = inner.block_count();
    let mut points = inner.points().to_vec();
    let mut blocks = inner.blocks().to_vec();
    if !outer_universe.is_empty() {
        let outer = coset_partition(ring, &outer_universe, subgroup)?;
        let offset = points.len();
        points.extend_from_slice(outer.points());
        for b in outer.blocks() {
            blocks.push(b.iter().map(|&i| i + offset).collect());
        }
    }
    let partition = Partition::new(ring, points, blocks)?;
    Ok((partition, g_blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(p: u64, s: u32) -> GaloisRing {
        GaloisRing::new(p, s, 1, None).unwrap()
    }

    fn ints(ring: &GaloisRing, vals: &[i64]) -> Vec<Elem> {
        vals.iter().map(|&v| ring.from_int(v)).collect()
    }

    #[test]
    fn subtractive_checks() {
        let r121 = zn(11, 2);
        assert!(is_subtractive(&r121, &ints(&r121, &[1, 3, 9, 27, 81])).unwrap());
        let r9 = zn(3, 2);
        assert!(!is_subtractive(&r9, &ints(&r9, &[1, 4])).unwrap());
        assert!(is_subtractive(&r9, &ints(&r9, &[7])).unwrap());
        assert!(!is_subtractive(&r9, &ints(&r9, &[0, 1])).unwrap());
        assert_eq!(
            is_subtractive(&r9, &ints(&r9, &[1, 1])).unwrap_err(),
            Error::DuplicatePoints
        );
    }

    #[test]
    fn well_conditioned_classification() {
        let r25 = zn(5, 2);
        assert_eq!(
            is_well_conditioned(&r25, &ints(&r25, &[5, 1, 7, 24, 18])).unwrap(),
            ConditionCheck::WellConditionedWithSpecial(0)
        );
        let r121 = zn(11, 2);
        assert_eq!(
            is_well_conditioned(&r121, &ints(&r121, &[0, 1, 3, 9, 27, 81])).unwrap(),
            ConditionCheck::WellConditionedWithSpecial(0)
        );
        let r9 = zn(3, 2);
        assert_eq!(
            is_well_conditioned(&r9, &ints(&r9, &[3, 6])).unwrap(),
            ConditionCheck::Failure(0, 1)
        );
        // two units with a zero-divisor difference
        assert_eq!(
            is_well_conditioned(&r9, &ints(&r9, &[1, 4])).unwrap(),
            ConditionCheck::Failure(0, 1)
        );
        // special point plus a bad unit pair, witness mapped back
        assert_eq!(
            is_well_conditioned(&r9, &ints(&r9, &[3, 1, 4])).unwrap(),
            ConditionCheck::Failure(1, 2)
        );
        assert_eq!(
            is_well_conditioned(&r9, &ints(&r9, &[1, 2])).unwrap(),
            ConditionCheck::Subtractive
        );
    }

    #[test]
    fn subgroup_listing_order() {
        let r121 = zn(11, 2);
        let g = r121.teichmuller_group();
        assert_eq!(subgroup_of_order(&r121, &g, 5).unwrap(), ints(&r121, &[1, 3, 9, 27, 81]));
        assert_eq!(subgroup_of_order(&r121, &g, 1).unwrap(), ints(&r121, &[1]));
        assert_eq!(
            subgroup_of_order(&r121, &g, 11).unwrap_err(),
            Error::OrderDoesNotDivide(11, 10)
        );
        let r25 = zn(5, 2);
        let g25 = r25.teichmuller_group();
        assert_eq!(subgroup_of_order(&r25, &g25, 2).unwrap(), ints(&r25, &[1, 24]));
        let r49 = zn(7, 2);
        let g49 = r49.teichmuller_group();
        assert_eq!(subgroup_of_order(&r49, &g49, 3).unwrap(), ints(&r49, &[1, 18, 30]));
    }

    #[test]
    fn coset_partition_translate_order() {
        let r121 = zn(11, 2);
        let g = r121.teichmuller_group();
        let h = subgroup_of_order(&r121, &g, 5).unwrap();
        let part = coset_partition(&r121, &g, &h).unwrap();
        assert_eq!(
            part.points(),
            ints(&r121, &[1, 3, 9, 27, 81, 40, 120, 118, 112, 94]).as_slice()
        );
        assert_eq!(part.blocks(), &[vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
        assert_eq!(*part.certificate(), Certificate::Subtractive);
    }

    #[test]
    fn coset_partition_units_universe() {
        let r9 = zn(3, 2);
        let h = ints(&r9, &[1, 8]);
        let part = coset_partition(&r9, &r9.units(), &h).unwrap();
        assert_eq!(part.points(), ints(&r9, &[1, 8, 2, 7, 4, 5]).as_slice());
        assert_eq!(part.block_count(), 3);
        assert_eq!(*part.certificate(), Certificate::Uncertified);

        // universe must be closed under the subgroup action
        assert_eq!(
            coset_partition(&r9, &ints(&r9, &[1, 2]), &h).unwrap_err(),
            Error::UniverseNotClosed
        );
        // single coset universe
        let single = coset_partition(&r9, &h, &h).unwrap();
        assert_eq!(single.block_count(), 1);
        assert!(matches!(
            coset_partition(&r9, &r9.units(), &ints(&r9, &[1, 2])).unwrap_err(),
            Error::NotASubgroup(_)
        ));
    }

    #[test]
    fn multiblocks_layout() {
        let r25 = zn(5, 2);
        let g = r25.teichmuller_group();
        let h = subgroup_of_order(&r25, &g, 2).unwrap();
        let (part, g_blocks) = multiblocks_partition(&r25, &h).unwrap();
        assert_eq!(g_blocks, 2);
        assert_eq!(part.len(), 20);
        assert_eq!(
            part.points(),
            ints(
                &r25,
                &[1, 24, 7, 18, 2, 23, 3, 22, 4, 21, 6, 19, 8, 17, 9, 16, 11, 14, 12, 13]
            )
            .as_slice()
        );
        let r9 = zn(3, 2);
        let h9 = ints(&r9, &[1, 8]);
        let (part9, gb9) = multiblocks_partition(&r9, &h9).unwrap();
        assert_eq!(gb9, 1);
        assert_eq!(part9.points(), ints(&r9, &[1, 8, 2, 7, 4, 5]).as_slice());
    }

    #[test]
    fn maximal_subtractive_cannot_extend() {
        for ring in [zn(3, 2), zn(5, 2)] {
            let g = maximal_subtractive_set(&ring);
            assert_eq!(g.len() as u64, ring.residue_field_size() - 1);
            assert!(is_subtractive(&ring, &g).unwrap());
            let g_idx: HashSet<u64> = g.iter().map(|e| ring.index_of(e)).collect();
            for e in ring.all_elements() {
                if g_idx.contains(&ring.index_of(&e)) {
                    continue;
                }
                let mut extended = g.clone();
                extended.push(e);
                assert!(!is_subtractive(&ring, &extended).unwrap());
            }
        }
    }

    #[test]
    fn partition_validation() {
        let r9 = zn(3, 2);
        let pts = ints(&r9, &[1, 8]);
        assert!(Partition::new(&r9, pts.clone(), vec![vec![0, 1]]).is_ok());
        assert!(Partition::new(&r9, pts.clone(), vec![vec![0]]).is_err());
        assert!(Partition::new(&r9, pts.clone(), vec![vec![0, 1], vec![1]]).is_err());
        assert!(Partition::new(&r9, pts, vec![vec![0, 2]]).is_err());
    }
}
