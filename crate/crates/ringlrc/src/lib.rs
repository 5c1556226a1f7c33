//! Locally recoverable codes over Galois rings.
//!
//! A Galois ring `GR(p^s, m)` is `Z_{p^s}[x]` modulo a monic degree-`m`
//! polynomial that is irreducible mod `p`. These are the finite chain rings
//! on which the constructions here operate; `s = 1` gives the finite field
//! `F_{p^m}` and `m = 1` gives `Z_{p^s}`, so both extremes share one
//! arithmetic core.
//!
//! The crate provides:
//!
//! * [`ring`] — ring construction, element arithmetic, Hensel lifting,
//!   Teichmüller groups, and product rings;
//! * [`sets`] — subtractive / well-conditioned evaluation sets and coset
//!   partitions with certificates;
//! * [`poly`] — polynomial algebra, Lagrange interpolation on
//!   well-conditioned sets, annihilators, good polynomials, and the block
//!   algebra `F_A`;
//! * [`codes`] — the LRC constructions (Tamo–Barg style, generalized bases,
//!   almost-optimal with a short block, (r,ρ) locality, CRT blocks, and
//!   multiblock codes over the full unit group) with erasure recovery;
//! * [`analysis`] — generator matrices, standard form over chain rings,
//!   brute-force distance/locality, dependence graphs, bounds, and the
//!   tower/product code tooling;
//! * [`sim`] — a seeded erasure-repair simulation harness;
//! * [`json`] — a JSON document format for code specifications that
//!   re-validates everything on load.
//!
//! The CLI binary `ringlrc` exposes the same operations on JSON files; see
//! the README for the command set.

pub mod analysis;
pub mod codes;
mod error;
pub mod json;
pub mod poly;
pub mod ring;
pub mod sets;
pub mod sim;

pub use error::{Error, Result};
