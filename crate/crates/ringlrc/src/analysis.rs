//! Code analysis: standard form over the chain ring, brute-force distance
//! and locality, dependency graphs, information-locality witness sets,
//! distance bounds, and the residue-field tower projections.
//!
//! The exhaustive searches enumerate |R|^K codewords depth-first over
//! flattened coefficient buffers, so they stay usable into the millions of
//! codewords; every entry point takes a cap and refuses larger instances
//! instead of running away.

use crate::codes::{encode, CodeSpec, DistanceGuarantee};
use crate::ring::{Elem, GaloisRing};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};

/// Rows are the encodings of the standard basis messages.
pub fn generator_matrix(spec: &CodeSpec) -> Result<Vec<Vec<Elem>>> {
    let ring = spec.ring();
    let mut rows = Vec::with_capacity(spec.k());
    for i in 0..spec.k() {
        let mut message = vec![ring.zero(); spec.k()];
        message[i] = ring.one();
        rows.push(encode(spec, &message)?);
    }
    Ok(rows)
}

/// Standard form of a matrix over the chain ring: unit-normalized pivots
/// `p^v` on the diagonal with nondecreasing valuations, zeros below each
/// pivot, and a column permutation tracking the original coordinates.
#[derive(Debug, Clone)]
pub struct StandardForm {
    pub matrix: Vec<Vec<Elem>>,
    /// `col_perm[j]` is the original column sitting at position `j`.
    pub col_perm: Vec<usize>,
    pub pivot_valuations: Vec<u32>,
    /// `subtype[i]` counts pivots of valuation `i`; length `s`.
    pub subtype: Vec<usize>,
    pub rank: usize,
    /// Pivot rows divided by their `p^v`, in original column order.
    pub unit_rows: Vec<Vec<Elem>>,
    s: u32,
    m: usize,
}

impl StandardForm {
    /// Numerator of the (possibly fractional) type `k = sum((s-i) k_i) / s`.
    pub fn type_numerator(&self) -> u64 {
        self.subtype
            .iter()
            .enumerate()
            .map(|(i, &ki)| (self.s as u64 - i as u64) * ki as u64)
            .sum()
    }

    pub fn type_value(&self) -> f64 {
        self.type_numerator() as f64 / self.s as f64
    }

    /// `log_p |C| = m * sum((s-i) k_i)`.
    pub fn cardinality_log_p(&self) -> u64 {
        self.m as u64 * self.type_numerator()
    }

    pub fn is_free(&self) -> bool {
        self.subtype.first().copied().unwrap_or(0) == self.rank
    }
}

fn div_elem_by_p_pow(ring: &GaloisRing, e: &Elem, v: u32) -> Elem {
    let pv = ring.p().pow(v);
    let coeffs: Vec<i64> = e
        .coeffs()
        .iter()
        .map(|&c| {
            debug_assert_eq!(c % pv, 0);
            (c / pv) as i64
        })
        .collect();
    ring.elem(&coeffs).expect("coefficients stay in range")
}

pub fn standard_form(ring: &GaloisRing, rows: &[Vec<Elem>]) -> Result<StandardForm> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut mat: Vec<Vec<Elem>> = Vec::with_capacity(nrows);
    for row in rows {
        if row.len() != ncols {
            return Err(Error::LengthMismatch { expected: ncols, got: row.len() });
        }
        for e in row {
            ring.check(e)?;
        }
        mat.push(row.clone());
    }
    let s = ring.s();
    let mut col_perm: Vec<usize> = (0..ncols).collect();
    let mut pivot_valuations: Vec<u32> = Vec::new();
    for step in 0..nrows.min(ncols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in mat.iter().enumerate().skip(step) {
            for (c, e) in row.iter().enumerate().skip(step) {
                let v = ring.valuation(e);
                if v < s && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                    if v == 0 {
                        break;
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((v, r, c)) = best else { break };
        mat.swap(step, r);
        for row in mat.iter_mut() {
            row.swap(step, c);
        }
        col_perm.swap(step, c);
        let unit = ring.unit_part(&mat[step][step]).1;
        let inv = ring.invert(&unit)?;
        for e in mat[step].iter_mut().skip(step) {
            *e = ring.mul(e, &inv);
        }
        let (pivot_rows, rest) = mat.split_at_mut(step + 1);
        let pivot_row = &pivot_rows[step];
        for row in rest.iter_mut() {
            if ring.is_zero(&row[step]) {
                continue;
            }
            let (ve, ue) = ring.unit_part(&row[step]);
            debug_assert!(ve >= v);
            let factor = ring.scale_by_p_pow(&ue, ve - v);
            for j in step..ncols {
                row[j] = ring.sub(&row[j], &ring.mul(&factor, &pivot_row[j]));
            }
        }
        pivot_valuations.push(v);
    }
    let rank = pivot_valuations.len();
    let mut subtype = vec![0usize; s as usize];
    for &v in &pivot_valuations {
        subtype[v as usize] += 1;
    }
    let mut unit_rows = Vec::with_capacity(rank);
    for (i, &v) in pivot_valuations.iter().enumerate() {
        let mut row = vec![ring.zero(); ncols];
        for j in 0..ncols {
            row[col_perm[j]] = div_elem_by_p_pow(ring, &mat[i][j], v);
        }
        unit_rows.push(row);
    }
    Ok(StandardForm {
        matrix: mat,
        col_perm,
        pivot_valuations,
        subtype,
        rank,
        unit_rows,
        s,
        m: ring.m(),
    })
}

/// Rank of the generator matrix restricted to the given columns: the
/// modular-independence count `M(T)` of the information-locality search.
pub fn rank_of_columns(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    cols: &BTreeSet<usize>,
) -> Result<usize> {
    let sub: Vec<Vec<Elem>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    Ok(standard_form(ring, &sub)?.rank)
}

fn enumeration_size(ring: &GaloisRing, k: usize, cap: u128) -> Result<u128> {
    let size = ring.element_count() as u128;
    let mut needed: u128 = 1;
    for _ in 0..k {
        needed = needed.saturating_mul(size);
        if needed > cap {
            return Err(Error::InstanceTooLarge { needed, cap });
        }
    }
    Ok(needed)
}

struct FlatRows {
    /// `scaled[k][v]` is the flattened coefficient vector of
    /// `element(v) * rows[k]`.
    scaled: Vec<Vec<Vec<u64>>>,
    width: usize,
    size: u64,
    ps: u64,
    n: usize,
    m: usize,
}

fn flatten_row(ring: &GaloisRing, row: &[Elem]) -> Vec<u64> {
    let m = ring.m();
    let mut flat = vec![0u64; row.len() * m];
    for (j, e) in row.iter().enumerate() {
        flat[j * m..(j + 1) * m].copy_from_slice(e.coeffs());
    }
    flat
}

impl FlatRows {
    fn build(ring: &GaloisRing, rows: &[Vec<Elem>]) -> Self {
        let n = rows.first().map_or(0, |r| r.len());
        let m = ring.m();
        let size = ring.element_count();
        let scaled = rows
            .iter()
            .map(|row| {
                (0..size)
                    .map(|v| {
                        let c = ring.element_from_index(v);
                        let scaled_row: Vec<Elem> =
                            row.iter().map(|e| ring.mul(&c, e)).collect();
                        flatten_row(ring, &scaled_row)
                    })
                    .collect()
            })
            .collect();
        FlatRows { scaled, width: n * m, size, ps: ring.ps(), n, m }
    }

    fn weight(&self, buf: &[u64]) -> usize {
        (0..self.n)
            .filter(|&j| buf[j * self.m..(j + 1) * self.m].iter().any(|&c| c != 0))
            .count()
    }

    /// Depth-first walk over all messages, calling `visit` with each
    /// codeword's flattened buffer.
    fn for_each_codeword(&self, mut visit: impl FnMut(&[u64])) {
        let k = self.scaled.len();
        let mut bufs: Vec<Vec<u64>> = vec![vec![0u64; self.width]; k + 1];
        self.walk(0, &mut bufs, &mut visit);
    }

    fn walk(&self, level: usize, bufs: &mut Vec<Vec<u64>>, visit: &mut impl FnMut(&[u64])) {
        if level == self.scaled.len() {
            visit(&bufs[level]);
            return;
        }
        for v in 0..self.size {
            let add = &self.scaled[level][v as usize];
            let (head, tail) = bufs.split_at_mut(level + 1);
            let src = &head[level];
            let dst = &mut tail[0];
            for t in 0..self.width {
                let sum = src[t] + add[t];
                dst[t] = if sum >= self.ps { sum - self.ps } else { sum };
            }
            self.walk(level + 1, bufs, visit);
        }
    }
}

/// Minimum Hamming weight over all nonzero codewords of the row span.
pub fn brute_force_min_distance(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    cap: u128,
) -> Result<usize> {
    if rows.is_empty() {
        return Err(Error::BadParameters("empty generator matrix".into()));
    }
    enumeration_size(ring, rows.len(), cap)?;
    let flat = FlatRows::build(ring, rows);
    let mut best = usize::MAX;
    flat.for_each_codeword(|buf| {
        let w = flat.weight(buf);
        if w > 0 && w < best {
            best = w;
        }
    });
    if best == usize::MAX {
        return Err(Error::BadParameters("code contains only the zero word".into()));
    }
    Ok(best)
}

/// All distinct codewords as flattened coefficient vectors.
pub fn codeword_set(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    cap: u128,
) -> Result<Vec<Vec<u64>>> {
    if rows.is_empty() {
        return Err(Error::BadParameters("empty generator matrix".into()));
    }
    enumeration_size(ring, rows.len(), cap)?;
    let flat = FlatRows::build(ring, rows);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    flat.for_each_codeword(|buf| {
        seen.insert(buf.to_vec());
    });
    let mut words: Vec<Vec<u64>> = seen.into_iter().collect();
    words.sort_unstable();
    Ok(words)
}

/// Number of distinct codewords.
pub fn cardinality(ring: &GaloisRing, rows: &[Vec<Elem>], cap: u128) -> Result<u128> {
    Ok(codeword_set(ring, rows, cap)?.len() as u128)
}

/// True per-coordinate locality: for each coordinate, the size of the
/// smallest other-coordinate set whose values determine it across the
/// whole code.
pub fn brute_force_locality(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    cap: u128,
) -> Result<Vec<usize>> {
    let words = codeword_set(ring, rows, cap)?;
    let n = rows[0].len();
    let m = ring.m();
    let symbol = |w: &Vec<u64>, j: usize| w[j * m..(j + 1) * m].to_vec();
    let mut locality = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut found = None;
        'sizes: for size in 1..n {
            for subset in combinations(&others, size) {
                let mut table: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
                let mut ok = true;
                for w in &words {
                    let key: Vec<u64> =
                        subset.iter().flat_map(|&j| symbol(w, j)).collect();
                    let val = symbol(w, i);
                    match table.get(&key) {
                        Some(existing) if *existing != val => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            table.insert(key, val);
                        }
                    }
                }
                if ok {
                    found = Some(size);
                    break 'sizes;
                }
            }
        }
        locality.push(found.unwrap_or(n - 1));
    }
    Ok(locality)
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(items: &[usize], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - current.len() {
                break;
            }
            current.push(items[i]);
            rec(items, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, size, 0, &mut current, &mut out);
    out
}

/// Designed repair graph: coordinate `i` has an edge to each coordinate of
/// its designed recovering set (the lex-first in-block survivors).
pub fn dependency_graph(spec: &CodeSpec) -> Vec<Vec<usize>> {
    let partition = spec.partition();
    (0..spec.n())
        .map(|i| {
            let b = partition.block_of(i);
            let need = spec.block_reads(b);
            partition.blocks()[b].iter().copied().filter(|&j| j != i).take(need).collect()
        })
        .collect()
}

/// Weakly connected components of a directed graph, each sorted, ordered
/// by smallest member.
pub fn connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, outs) in adj.iter().enumerate() {
        for &j in outs {
            undirected[i].push(j);
            undirected[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &undirected[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Greedy information-locality witness: grow a coordinate set `T` along
/// the repair graph until its restricted rank `M(T)` reaches `rank - 1`.
/// Every coordinate of the complement then depends on `T` through local
/// repairs, bounding the code's information locality.
pub fn construct_t(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    adj: &[Vec<usize>],
) -> Result<Vec<usize>> {
    let kappa = standard_form(ring, rows)?.rank;
    let n = adj.len();
    let mut t: BTreeSet<usize> = BTreeSet::new();
    loop {
        let m_t = rank_of_columns(ring, rows, &t)?;
        if m_t + 2 > kappa {
            break;
        }
        let j = (0..n)
            .find(|j| !t.contains(j) && adj[*j].iter().any(|v| !t.contains(v)))
            .ok_or(Error::NoSuitableCoordinate)?;
        let mut with_nj = t.clone();
        with_nj.extend(adj[j].iter().copied());
        if rank_of_columns(ring, rows, &with_nj)? < kappa {
            t = with_nj;
            t.insert(j);
        } else {
            let mut candidates: Vec<usize> = adj[j].clone();
            candidates.push(j);
            candidates.sort_unstable();
            for v in candidates {
                if rank_of_columns(ring, rows, &t)? + 1 == kappa {
                    break;
                }
                t.insert(v);
            }
        }
    }
    Ok(t.into_iter().collect())
}

/// [`construct_t`] on a code's generator matrix and designed repair graph.
pub fn construct_t_for_spec(spec: &CodeSpec) -> Result<Vec<usize>> {
    let rows = generator_matrix(spec)?;
    let adj = dependency_graph(spec);
    construct_t(spec.ring(), &rows, &adj)
}

/// A code over the residue field, obtained by projecting a tower level.
#[derive(Debug, Clone)]
pub struct FieldCode {
    ring: GaloisRing,
    matrix: Vec<Vec<Elem>>,
    length: usize,
}

impl FieldCode {
    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn matrix(&self) -> &[Vec<Elem>] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn min_distance(&self, cap: u128) -> Result<usize> {
        brute_force_min_distance(&self.ring, &self.matrix, cap)
    }
}

/// Residue projection of the `i`-th tower level `(C : p^i)`: the field
/// code spanned by the unit rows whose pivot valuation is at most `i`.
/// Level `s-1` preserves length, rank, and minimum distance.
pub fn tower_projection(
    ring: &GaloisRing,
    rows: &[Vec<Elem>],
    i: usize,
) -> Result<FieldCode> {
    if i as u32 >= ring.s() {
        return Err(Error::IndexOutOfRange(i));
    }
    let sf = standard_form(ring, rows)?;
    let field = ring.residue_ring();
    let mut matrix = Vec::new();
    for (j, &v) in sf.pivot_valuations.iter().enumerate() {
        if v as usize <= i {
            matrix.push(sf.unit_rows[j].iter().map(|e| ring.residue_project(e)).collect());
        }
    }
    let length = rows.first().map_or(0, |r| r.len());
    Ok(FieldCode { ring: field, matrix, length })
}

/// Distance and rate bounds for an `(n, K, r)` locally recoverable code.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// `n - K + 1`.
    pub singleton: i64,
    /// `n - K - ceil(K/r) + 2`.
    pub lrc: i64,
    /// Whether `K/n <= r/(r+1)`.
    pub rate_ok: bool,
    /// `n - K + 1 - (ceil(K/r) - 1)(rho - 1)` when `rho` is given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rrho: Option<i64>,
    /// Subtype refinement with the fractional type in place of `K`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subtype_bound: Option<f64>,
}

fn ceil_div_u(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn bounds(
    n: usize,
    k: usize,
    r: usize,
    rho: Option<usize>,
    subtype: Option<&[usize]>,
) -> Result<BoundReport> {
    if r < 1 || k < 1 || k > n {
        return Err(Error::BadParameters("need 1 <= K <= n and r >= 1".into()));
    }
    if let Some(rho) = rho {
        if rho < 2 {
            return Err(Error::BadParameters("rho must be at least 2".into()));
        }
    }
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let ceil_kr = (ki + ri - 1) / ri;
    let singleton = ni - ki + 1;
    let lrc = ni - ki - ceil_kr + 2;
    let rate_ok = ki * (ri + 1) <= ni * ri;
    let rrho = rho.map(|rho| ni - ki + 1 - (ceil_kr - 1) * (rho as i64 - 1));
    let subtype_bound = match subtype {
        None => None,
        Some(st) => {
            let s = st.len() as u64;
            if s == 0 {
                return Err(Error::BadParameters("empty subtype".into()));
            }
            let num: u64 = st
                .iter()
                .enumerate()
                .map(|(i, &ki)| (s - i as u64) * ki as u64)
                .sum();
            let ceil_type = ceil_div_u(num, s * r as u64);
            Some(n as f64 - num as f64 / s as f64 - ceil_type as f64 + 2.0)
        }
    };
    Ok(BoundReport { n, k, r, singleton, lrc, rate_ok, rrho, subtype_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Impossible,
    Inconclusive,
}

/// Whether an optimal `(n, K, r)` code is ruled out. `paper_literal`
/// reports the unguarded inequality `r + K/r > n - K - 1` on its own; the
/// verdict additionally requires `n > K + K/r`, which keeps the test from
/// misfiring on length-deficient parameter sets.
#[derive(Debug, Clone, Serialize)]
pub struct Nonexistence {
    pub verdict: Verdict,
    pub paper_literal: bool,
}

pub fn nonexistence_predicate(n: usize, k: usize, r: usize) -> Result<Nonexistence> {
    if r < 1 || k < 1 || k > n {
        return Err(Error::BadParameters("need 1 <= K <= n and r >= 1".into()));
    }
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let divides = ki % ri == 0;
    let paper_literal = divides && ri + ki / ri > ni - ki - 1;
    let guarded = paper_literal && ni > ki + ki / ri;
    Ok(Nonexistence {
        verdict: if guarded { Verdict::Impossible } else { Verdict::Inconclusive },
        paper_literal,
    })
}

/// Summary of a symbolwise product of equal-length codes: distance is the
/// smallest factor distance, message length the largest.
#[derive(Debug, Clone, Serialize)]
pub struct ProductReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub factor_k: Vec<usize>,
    pub factor_d: Vec<usize>,
    pub lrc_bound: i64,
    pub meets_lrc_bound: bool,
}

pub fn product_code_combine(specs: &[&CodeSpec], cap: u128) -> Result<ProductReport> {
    let Some(first) = specs.first() else {
        return Err(Error::BadParameters("empty product".into()));
    };
    let n = first.n();
    let mut factor_k = Vec::with_capacity(specs.len());
    let mut factor_d = Vec::with_capacity(specs.len());
    let mut r = 0;
    for spec in specs {
        if spec.n() != n {
            return Err(Error::LengthMismatch { expected: n, got: spec.n() });
        }
        let rows = generator_matrix(spec)?;
        factor_d.push(brute_force_min_distance(spec.ring(), &rows, cap)?);
        factor_k.push(spec.k());
        r = r.max(spec.locality_parameter());
    }
    let k = *factor_k.iter().max().expect("nonempty");
    let d = *factor_d.iter().min().expect("nonempty");
    let report = bounds(n, k, r, None, None)?;
    Ok(ProductReport {
        n,
        k,
        d,
        r,
        factor_k,
        factor_d,
        lrc_bound: report.lrc,
        meets_lrc_bound: d as i64 == report.lrc,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisBounds {
    pub singleton: i64,
    pub lrc: i64,
    pub rate_ok: bool,
    pub designed_kind: &'static str,
    pub designed_value: usize,
}

/// Full exhaustive report for one code instance.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub subtype: Vec<usize>,
    pub d_brute: usize,
    pub locality: Vec<usize>,
    pub bounds: AnalysisBounds,
    pub meets_lrc_bound: bool,
}

pub fn analyze(spec: &CodeSpec, cap: u128) -> Result<AnalysisReport> {
    let rows = generator_matrix(spec)?;
    let sf = standard_form(spec.ring(), &rows)?;
    let d_brute = brute_force_min_distance(spec.ring(), &rows, cap)?;
    let locality = brute_force_locality(spec.ring(), &rows, cap)?;
    let r = spec.locality_parameter();
    let report = bounds(spec.n(), spec.k(), r, None, None)?;
    let (designed_kind, designed_value) = match spec.designed_distance() {
        DistanceGuarantee::Exact(d) => ("exact", d),
        DistanceGuarantee::AtLeast(d) => ("at_least", d),
    };
    Ok(AnalysisReport {
        n: spec.n(),
        k: spec.k(),
        subtype: sf.subtype,
        d_brute,
        locality,
        bounds: AnalysisBounds {
            singleton: report.singleton,
            lrc: report.lrc,
            rate_ok: report.rate_ok,
            designed_kind,
            designed_value,
        },
        meets_lrc_bound: d_brute as i64 == report.lrc,
    })
}
