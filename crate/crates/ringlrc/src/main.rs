//! Command line interface over the library: ring inspection, good
//! polynomials, code construction, encoding, erasure repair, exhaustive
//! analysis, bounds, and repair simulation, all speaking JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (bad parameters,
//! failed validation, malformed input), 3 unrecoverable erasure pattern.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringlrc::analysis::{analyze, bounds, nonexistence_predicate};
use ringlrc::codes::{
    almost_optimal_from_subgroup, crt_from_subgroup, encode, generalized_from_subgroup,
    multiblocks_from_subgroup, recover, recover_all, rrho_from_subgroup,
    tamo_barg_from_subgroup, CodeSpec, CoeffMap, Construction, Recovery,
};
use ringlrc::json::{self, spec_from_str, spec_to_string};
use ringlrc::poly::{subgroup_good_polynomial, GoodPolyVariant};
use ringlrc::ring::{Elem, GaloisRing};
use ringlrc::sets::{coset_partition, subgroup_of_order, Partition};
use ringlrc::sim::{simulate_repair, ErasureModel};
use ringlrc::{Error, Result};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ringlrc", version, about = "Locally recoverable codes over Galois rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a Galois ring GR(p^s, m)
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Build and verify a good polynomial on a coset partition
    Goodpoly(GoodpolyArgs),
    /// Assemble a code specification and emit it as JSON
    MakeCode(MakeCodeArgs),
    /// Encode a message with a stored code
    Encode(EncodeArgs),
    /// Repair erased symbols of a received word
    Recover(RecoverArgs),
    /// Exhaustive analysis of a stored code
    Analyze(AnalyzeArgs),
    /// Distance bounds and the nonexistence test for (n, K, r) codes
    Bounds(BoundsArgs),
    /// Seeded Monte Carlo repair simulation
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum RingCmd {
    /// Sizes, unit counts, and the Teichmüller group order
    Info {
        #[command(flatten)]
        ring: RingArgs,
    },
}

#[derive(Args)]
struct RingArgs {
    /// Characteristic prime of the residue field
    #[arg(long)]
    p: u64,
    /// Chain length: the ring is Z_{p^s} extended by a degree-m modulus
    #[arg(long)]
    s: u32,
    /// Extension degree over Z_{p^s}
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Modulus coefficients, little-endian, monic of degree m
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl RingArgs {
    fn build(&self) -> Result<GaloisRing> {
        GaloisRing::new(self.p, self.s, self.m, self.modulus.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    /// The Teichmüller group
    Teichmuller,
    /// All units of the ring
    Units,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// g = x^h
    #[value(name = "xh")]
    Xh,
    /// g = x^h - 1
    #[value(name = "xh_minus_one")]
    XhMinusOne,
}

#[derive(Args)]
struct GoodpolyArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Order of the subgroup whose cosets form the blocks
    #[arg(long)]
    subgroup_order: u64,
    /// Point set to partition
    #[arg(long, value_enum, default_value_t = UniverseArg::Teichmuller)]
    universe: UniverseArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Xh)]
    variant: VariantArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    #[value(name = "tamo_barg")]
    TamoBarg,
    #[value(name = "generalized")]
    Generalized,
    #[value(name = "almost_optimal")]
    AlmostOptimal,
    #[value(name = "rrho")]
    Rrho,
    #[value(name = "crt")]
    Crt,
    #[value(name = "multiblocks")]
    Multiblocks,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    #[value(name = "power_basis")]
    PowerBasis,
    #[value(name = "idempotent_basis")]
    IdempotentBasis,
}

#[derive(Args)]
struct MakeCodeArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_enum)]
    construction: ConstructionArg,
    /// Order of the subgroup whose cosets form the blocks
    #[arg(long)]
    subgroup_order: u64,
    /// Number of blocks carrying message coefficients
    #[arg(
        long,
        required_if_eq_any([
            ("construction", "tamo_barg"),
            ("construction", "generalized"),
            ("construction", "rrho"),
            ("construction", "multiblocks"),
        ])
    )]
    t: Option<usize>,
    /// Expected locality; checked against the constructed code
    #[arg(long)]
    r: Option<usize>,
    /// Message length for the almost-optimal construction
    #[arg(long, required_if_eq("construction", "almost_optimal"))]
    k: Option<usize>,
    /// Size of the short block
    #[arg(long, required_if_eq("construction", "almost_optimal"))]
    m_last: Option<usize>,
    /// Tolerated erasures per block is rho - 1
    #[arg(long, required_if_eq("construction", "rrho"))]
    rho: Option<usize>,
    /// Per-block message lengths for the CRT construction
    #[arg(long, value_delimiter = ',', required_if_eq("construction", "crt"))]
    ki: Option<Vec<usize>>,
    /// Coefficient basis for the generalized construction
    #[arg(long, value_enum, default_value_t = MapArg::PowerBasis)]
    map: MapArg,
    /// Use {0} as the short block of the almost-optimal construction
    #[arg(long)]
    zero_block: bool,
    /// Write the code specification here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Code specification file
    #[arg(long)]
    code: PathBuf,
    /// K symbols: comma-separated integers or a JSON array
    #[arg(long)]
    message: String,
}

#[derive(Args)]
struct RecoverArgs {
    /// Code specification file
    #[arg(long)]
    code: PathBuf,
    /// n symbols with '_' (or JSON null) marking erasures
    #[arg(long)]
    word: String,
    /// 1-based position to repair; default repairs every erasure
    #[arg(long)]
    position: Option<usize>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Code specification file
    #[arg(long)]
    code: PathBuf,
    /// Refuse exhaustive searches beyond this many codewords
    #[arg(long, default_value_t = 10_000_000)]
    cap: u64,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    rho: Option<usize>,
    /// Pivot-valuation counts k_0,k_1,... for the subtype refinement
    #[arg(long, value_delimiter = ',')]
    subtype: Option<Vec<usize>>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Code specification file
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// one_random or per_block:<count>
    #[arg(long, default_value = "one_random")]
    erasure_model: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let usage_ok =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if usage_ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::TooManyErasuresInBlock { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Ring { cmd: RingCmd::Info { ring } } => ring_info(&ring.build()?),
        Cmd::Goodpoly(args) => goodpoly(args),
        Cmd::MakeCode(args) => make_code_cmd(args),
        Cmd::Encode(args) => encode_cmd(args),
        Cmd::Recover(args) => recover_cmd(args),
        Cmd::Analyze(args) => analyze_cmd(args),
        Cmd::Bounds(args) => bounds_cmd(args),
        Cmd::Simulate(args) => simulate_cmd(args),
    }
}

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("value serializes"));
}

fn ring_info(ring: &GaloisRing) -> Result<()> {
    print_value(&json!({
        "p": ring.p(),
        "s": ring.s(),
        "m": ring.m(),
        "modulus": ring.modulus(),
        "element_count": ring.element_count(),
        "unit_count": ring.unit_count(),
        "residue_field_size": ring.residue_field_size(),
        "teichmuller_order": ring.residue_field_size() - 1,
        "max_ideal_size_per_residue": ring.max_ideal_size_per_residue(),
    }));
    Ok(())
}

fn partition_to_json(partition: &Partition) -> Value {
    json!({
        "points": partition.points().iter().map(json::elem_to_json).collect::<Vec<_>>(),
        "blocks": partition.blocks(),
        "certificate": partition.certificate().label(),
    })
}

fn goodpoly(args: GoodpolyArgs) -> Result<()> {
    let ring = args.ring.build()?;
    let teich = ring.teichmuller_group();
    let universe = match args.universe {
        UniverseArg::Teichmuller => teich.clone(),
        UniverseArg::Units => ring.units(),
    };
    let subgroup = subgroup_of_order(&ring, &teich, args.subgroup_order)?;
    let partition = coset_partition(&ring, &universe, &subgroup)?;
    let variant = match args.variant {
        VariantArg::Xh => GoodPolyVariant::Xh,
        VariantArg::XhMinusOne => GoodPolyVariant::XhMinusOne,
    };
    let good = subgroup_good_polynomial(&ring, &partition, &subgroup, variant)?;
    print_value(&json!({
        "g": json::poly_to_json(&good.g),
        "values": good.values.iter().map(json::elem_to_json).collect::<Vec<_>>(),
        "monic": good.monic,
        "values_subtractive": good.values_subtractive,
        "partition": partition_to_json(&partition),
    }));
    Ok(())
}

fn constructed_r(kind: &Construction) -> Option<usize> {
    match kind {
        Construction::TamoBarg { r, .. }
        | Construction::Generalized { r, .. }
        | Construction::AlmostOptimal { r, .. }
        | Construction::RRho { r, .. }
        | Construction::Multiblocks { r, .. } => Some(*r),
        Construction::Crt { .. } => None,
    }
}

fn make_code_cmd(args: MakeCodeArgs) -> Result<()> {
    let ring = args.ring.build()?;
    let h = args.subgroup_order;
    let spec = match args.construction {
        ConstructionArg::TamoBarg => {
            tamo_barg_from_subgroup(&ring, h, args.t.expect("required"))?
        }
        ConstructionArg::Generalized => {
            let map = match args.map {
                MapArg::PowerBasis => CoeffMap::PowerBasis,
                MapArg::IdempotentBasis => CoeffMap::IdempotentBasis,
            };
            generalized_from_subgroup(&ring, h, args.t.expect("required"), map)?
        }
        ConstructionArg::AlmostOptimal => almost_optimal_from_subgroup(
            &ring,
            h,
            args.k.expect("required"),
            args.m_last.expect("required"),
            args.zero_block,
        )?,
        ConstructionArg::Rrho => rrho_from_subgroup(
            &ring,
            h,
            args.rho.expect("required"),
            args.t.expect("required"),
        )?,
        ConstructionArg::Crt => crt_from_subgroup(&ring, h, args.ki.expect("required"))?,
        ConstructionArg::Multiblocks => {
            multiblocks_from_subgroup(&ring, h, args.t.expect("required"))?
        }
    };
    if let Some(want) = args.r {
        match constructed_r(spec.kind()) {
            Some(got) if got != want => {
                return Err(Error::BadParameters(format!(
                    "construction has locality r = {got}, not {want}"
                )));
            }
            None => {
                return Err(Error::BadParameters(
                    "crt blocks have individual localities; omit --r".into(),
                ));
            }
            _ => {}
        }
    }
    let text = spec_to_string(&spec);
    match args.out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_spec(path: &PathBuf) -> Result<CodeSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    spec_from_str(&text)
}

fn render_elem(ring: &GaloisRing, e: &Elem) -> Value {
    if ring.m() == 1 {
        json!(e.coeffs()[0])
    } else {
        json::elem_to_json(e)
    }
}

/// Parse symbols from a JSON array or a comma-separated integer list;
/// `allow_gaps` admits `null` / `_` entries as erasures.
fn parse_symbols(ring: &GaloisRing, text: &str, allow_gaps: bool) -> Result<Vec<Option<Elem>>> {
    let text = text.trim();
    if text.starts_with('[') {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of symbols".into()))?;
        return arr
            .iter()
            .map(|v| {
                if v.is_null() {
                    if allow_gaps {
                        Ok(None)
                    } else {
                        Err(Error::Parse("null symbol outside a received word".into()))
                    }
                } else {
                    json::elem_from_json(ring, v).map(Some)
                }
            })
            .collect();
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "_" {
                return if allow_gaps {
                    Ok(None)
                } else {
                    Err(Error::Parse("erasure marker outside a received word".into()))
                };
            }
            let v: i64 =
                tok.parse().map_err(|_| Error::Parse(format!("bad symbol {tok:?}")))?;
            Ok(Some(ring.from_int(v)))
        })
        .collect()
}

fn encode_cmd(args: EncodeArgs) -> Result<()> {
    let spec = load_spec(&args.code)?;
    let ring = spec.ring();
    let message: Vec<Elem> = parse_symbols(ring, &args.message, false)?
        .into_iter()
        .map(|s| s.expect("gaps rejected"))
        .collect();
    let word = encode(&spec, &message)?;
    let rendered: Vec<Value> = word.iter().map(|e| render_elem(ring, e)).collect();
    print_value(&Value::Array(rendered));
    Ok(())
}

fn recovery_to_json(ring: &GaloisRing, r: &Recovery) -> Value {
    json!({
        "index": r.position,
        "position": r.position + 1,
        "value": render_elem(ring, &r.value),
        "reads": r.reads,
    })
}

fn recover_cmd(args: RecoverArgs) -> Result<()> {
    let spec = load_spec(&args.code)?;
    let ring = spec.ring();
    let word = parse_symbols(ring, &args.word, true)?;
    let repairs = match args.position {
        Some(pos) => {
            if pos < 1 || pos > word.len() {
                return Err(Error::IndexOutOfRange(pos));
            }
            vec![recover(&spec, &word, pos - 1)?]
        }
        None => recover_all(&spec, &word)?,
    };
    let mut repaired = word.clone();
    for r in &repairs {
        repaired[r.position] = Some(r.value.clone());
    }
    let repaired_word: Vec<Value> = repaired
        .iter()
        .map(|s| s.as_ref().map_or(Value::Null, |e| render_elem(ring, e)))
        .collect();
    print_value(&json!({
        "recovered": repairs.iter().map(|r| recovery_to_json(ring, r)).collect::<Vec<_>>(),
        "repaired_word": repaired_word,
    }));
    Ok(())
}

fn analyze_cmd(args: AnalyzeArgs) -> Result<()> {
    let spec = load_spec(&args.code)?;
    let report = analyze(&spec, args.cap as u128)?;
    print_value(&serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}

fn bounds_cmd(args: BoundsArgs) -> Result<()> {
    let report = bounds(args.n, args.k, args.r, args.rho, args.subtype.as_deref())?;
    let nonexistence = nonexistence_predicate(args.n, args.k, args.r)?;
    print_value(&json!({
        "bounds": serde_json::to_value(&report).expect("report serializes"),
        "nonexistence": serde_json::to_value(&nonexistence).expect("report serializes"),
    }));
    Ok(())
}

fn simulate_cmd(args: SimulateArgs) -> Result<()> {
    let spec = load_spec(&args.code)?;
    let model: ErasureModel = args.erasure_model.parse()?;
    let report = simulate_repair(&spec, args.trials, args.seed, model)?;
    print_value(&serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}
