use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use d21::block::{block_irreducibles, canonical_normalization, classify_block, BlockKind};
use d21::character::{flag_to_character, verma_character, FormalCharacter, VermaVector};
use d21::duality::{
    decomposition_numbers, irreducible_and_projective, one_integer_label, one_integer_via_iso, TiltingCache,
};
use d21::export::{character_json, character_latex, verma_json, verma_latex};
use d21::formulas::{one_integer_irreducible, tilting_with_source};
use d21::transport::{StepKind, TransportStep};
use d21::verify::{run_check, CHECK_NAMES};
use d21::{Error, Weight, ZetaParam};

const DEFAULT_DEPTH: u32 = 10;

#[derive(Parser)]
#[command(name = "d21", version, about = "Blocks, tilting flags and characters in non-integral category O for D(2|1;ζ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the block descriptor of a weight.
    Classify(Common),
    /// List the block's irreducible labels, or its decomposition matrix.
    Block {
        #[command(flatten)]
        common: Common,
        /// Shift bound along the atypical root.
        #[arg(long, default_value_t = 4)]
        height_bound: u32,
        /// Print the decomposition matrix for family indices in [-W, W] instead.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Verma flag (or truncated character) of L, T, P or M.
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: ModuleKind,
        /// Print the truncated formal character instead of the Verma flag.
        #[arg(long)]
        monomial: bool,
    },
    /// Tilting flag together with the rule that produced it.
    Tilt(Common),
    /// Run registered verification checks; prints one JSON line per check.
    Verify {
        /// `all` or a check name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Extra parameters as a JSON object.
        #[arg(long)]
        params: Option<String>,
    },
    /// Re-render a saved JSON flag or character.
    Export {
        /// File to read, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Latex)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    zeta: String,
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Accept weights outside the normal form and echo the transport steps.
    #[arg(long)]
    auto_normalize: bool,
    /// `shifted` reads the weight as λ (ρ-shifted); `highest` reads it as λ − ρ.
    #[arg(long, value_enum, default_value_t = Convention::Shifted)]
    convention: Convention,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    Irreducible,
    Tilting,
    Projective,
    Verma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Shifted,
    Highest,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 3 }, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Ctx {
    zeta: ZetaParam,
    weight: Weight,
    depth: u32,
    format: Format,
    steps: Vec<TransportStep>,
}

impl Common {
    fn resolve(&self) -> Result<Ctx, Failure> {
        let zeta: ZetaParam = self.zeta.parse()?;
        let mut weight: Weight = self.weight.parse()?;
        if self.convention == Convention::Highest {
            weight = weight.shifted();
        }
        let depth = match self.depth {
            Some(d) => d,
            None => match std::env::var("D21_DEFAULT_DEPTH") {
                Ok(s) => s.trim().parse().map_err(|_| input_error(format!("D21_DEFAULT_DEPTH must be a non-negative integer, got `{s}`")))?,
                Err(_) => DEFAULT_DEPTH,
            },
        };
        Ok(Ctx { zeta, weight, depth, format: self.format, steps: Vec::new() })
    }

    /// Like `resolve`, but rejects weights whose block is not in normal form
    /// unless `--auto-normalize` is given.
    fn resolve_normal(&self) -> Result<Ctx, Failure> {
        let mut ctx = self.resolve()?;
        if ctx.weight.integral_count() == 3 {
            return Err(Error::IntegralWeight(ctx.weight.to_string()).into());
        }
        let (_, steps) = canonical_normalization(&ctx.weight, &ctx.zeta)?;
        let twisted = steps.iter().any(|s| !matches!(s.kind, StepKind::Shift { .. }));
        if twisted && !self.auto_normalize {
            let names: Vec<String> = steps.iter().map(step_name).collect();
            return Err(Failure {
                code: 3,
                message: format!(
                    "weight {} is not in its block's normal form (needs {}); rerun with --auto-normalize",
                    ctx.weight,
                    names.join(", ")
                ),
            });
        }
        if self.auto_normalize {
            ctx.steps = steps;
        }
        Ok(ctx)
    }
}

fn step_name(s: &TransportStep) -> String {
    match s.kind {
        StepKind::IsoInvZeta => "iso ζ↦1/ζ".into(),
        StepKind::IsoNegZeta => "iso ζ↦−1−ζ".into(),
        StepKind::OddReflection { root } => format!("odd reflection {root}"),
        StepKind::Twist { index } => format!("twist s{index}"),
        StepKind::Shift { root, n } => format!("shift {n}·{root}"),
    }
}

enum Payload {
    Flag(VermaVector),
    Character(FormalCharacter),
}

fn render(ctx: &Ctx, payload: &Payload, extra: Value) -> Result<String, Failure> {
    Ok(match ctx.format {
        Format::Latex => match payload {
            Payload::Flag(v) => verma_latex(v),
            Payload::Character(c) => character_latex(c),
        },
        Format::Text => {
            let body = match payload {
                Payload::Flag(v) => v.ordered_terms().iter().map(|(w, c)| format!("{c:+} M{w}")).collect::<Vec<_>>().join("\n"),
                Payload::Character(c) => c.monomials().iter().map(|(w, k)| format!("{k:+} e^{w}")).collect::<Vec<_>>().join("\n"),
            };
            let steps: Vec<String> = ctx.steps.iter().map(step_name).collect();
            if steps.is_empty() {
                body
            } else {
                format!("# normalization: {}\n{body}", steps.join(", "))
            }
        }
        Format::Json => {
            let mut v = match payload {
                Payload::Flag(f) => verma_json(f),
                Payload::Character(c) => character_json(c),
            };
            let obj = v.as_object_mut().unwrap();
            obj.insert("weight".into(), json!(ctx.weight));
            obj.insert("zeta".into(), json!(ctx.zeta));
            if let Value::Object(m) = extra {
                obj.extend(m);
            }
            if !ctx.steps.is_empty() {
                obj.insert("normalization".into(), json!(ctx.steps));
            }
            v.to_string()
        }
    })
}

fn json_only(ctx: &Ctx, what: &str) -> Result<(), Failure> {
    match ctx.format {
        Format::Latex => Err(input_error(format!("--format latex is only available for flags and characters, not {what}"))),
        _ => Ok(()),
    }
}

fn irreducible(ctx: &Ctx) -> Result<Payload, Failure> {
    let (lambda, zeta, depth) = (&ctx.weight, &ctx.zeta, ctx.depth);
    let desc = classify_block(lambda, zeta)?;
    Ok(match (desc.kind, desc.axis) {
        (BlockKind::OneInteger, Some(d21::block::Axis::X)) => {
            let (origin, fam, n) = one_integer_label(lambda, zeta)?;
            let big_n = depth + n.unsigned_abs() as u32 + 2;
            let flag = one_integer_irreducible(&origin, fam, n, zeta, big_n)?;
            Payload::Flag(truncate_flag(&flag, lambda, depth))
        }
        (BlockKind::OneInteger, _) => Payload::Character(one_integer_via_iso(lambda, zeta, depth)?),
        _ => Payload::Flag(irreducible_and_projective(lambda, zeta, depth)?.irr),
    })
}

/// Keeps the terms within `depth` below `top`.
fn truncate_flag(v: &VermaVector, top: &Weight, depth: u32) -> VermaVector {
    VermaVector::from_terms(v.iter().filter_map(|(w, c)| {
        let (a, m, n) = d21::algebra::dominance_decompose(top, w)?;
        (a + m + n <= depth as i64).then(|| (w.clone(), *c))
    }))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Classify(common) => {
            let ctx = common.resolve()?;
            json_only(&ctx, "classify")?;
            let desc = classify_block(&ctx.weight, &ctx.zeta)?;
            let out = match ctx.format {
                Format::Text => {
                    let mut s = format!("{} block of {} at ζ={}", desc.kind, ctx.weight, ctx.zeta);
                    if let (Some(a), Some(f)) = (desc.axis, desc.family) {
                        s += &format!(", axis {a}, ℓ={}, k={}, canonical={}", f.ell, f.k, f.canonical);
                    } else if let Some(a) = desc.axis {
                        s += &format!(", axis {a}");
                    }
                    s + &format!(", casimir {}", desc.casimir)
                }
                _ => desc.to_json().to_string(),
            };
            Ok((out, 0))
        }
        Command::Block { common, height_bound, window } => {
            let ctx = common.resolve()?;
            json_only(&ctx, "block")?;
            let desc = classify_block(&ctx.weight, &ctx.zeta)?;
            if let Some(w) = window {
                let m = decomposition_numbers(&desc, -w, w, &ctx.zeta)?;
                let out = match ctx.format {
                    Format::Text => {
                        let mut s = String::new();
                        for ((r, c), v) in &m.entries {
                            s += &format!("[M{} : L{}] = {v}\n", m.labels[*r], m.labels[*c]);
                        }
                        s.trim_end().to_string()
                    }
                    _ => m.to_json().to_string(),
                };
                return Ok((out, 0));
            }
            let labels = block_irreducibles(&ctx.weight, &ctx.zeta, height_bound)?;
            let out = match ctx.format {
                Format::Text => labels.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n"),
                _ => json!({"block": desc.to_json(), "height_bound": height_bound, "labels": labels}).to_string(),
            };
            Ok((out, 0))
        }
        Command::Char { common, kind, monomial } => {
            let ctx = if kind == ModuleKind::Verma { common.resolve()? } else { common.resolve_normal()? };
            let payload = match kind {
                ModuleKind::Verma => Payload::Flag(VermaVector::from_support([ctx.weight.clone()])),
                ModuleKind::Tilting => Payload::Flag(TiltingCache::new().tilting(&ctx.weight, &ctx.zeta)?),
                ModuleKind::Projective => Payload::Flag(TiltingCache::new().projective(&ctx.weight, &ctx.zeta)?),
                ModuleKind::Irreducible => irreducible(&ctx)?,
            };
            let payload = match (payload, monomial) {
                (Payload::Flag(_), true) if kind == ModuleKind::Verma => {
                    Payload::Character(verma_character(&ctx.weight, ctx.depth, &ctx.zeta))
                }
                (Payload::Flag(v), true) => Payload::Character(flag_to_character(&v, ctx.depth, &ctx.zeta)?),
                (p, _) => p,
            };
            let kind_name = match kind {
                ModuleKind::Irreducible => "irreducible",
                ModuleKind::Tilting => "tilting",
                ModuleKind::Projective => "projective",
                ModuleKind::Verma => "verma",
            };
            Ok((render(&ctx, &payload, json!({"kind": kind_name, "truncation_depth": ctx.depth}))?, 0))
        }
        Command::Tilt(common) => {
            let ctx = common.resolve_normal()?;
            let desc = classify_block(&ctx.weight, &ctx.zeta)?;
            let canonical = desc.family.is_none_or(|f| f.canonical);
            let (flag, source) = if desc.kind == BlockKind::TwoInteger && canonical || desc.kind == BlockKind::Typical {
                let (f, s) = tilting_with_source(&ctx.weight, &ctx.zeta)?;
                (f, json!(s))
            } else {
                let src = match desc.kind {
                    BlockKind::TwoInteger => "twisted",
                    BlockKind::Generic => "generic",
                    _ => "duality",
                };
                (TiltingCache::new().tilting(&ctx.weight, &ctx.zeta)?, json!(src))
            };
            Ok((render(&ctx, &Payload::Flag(flag), json!({"kind": "tilting", "source": source}))?, 0))
        }
        Command::Verify { suite, window, seed, depth, zeta, weight, params } => {
            let mut p = match params {
                Some(s) => serde_json::from_str::<Value>(&s).map_err(|e| input_error(format!("--params is not valid JSON: {e}")))?,
                None => json!({}),
            };
            let Some(obj) = p.as_object_mut() else { return Err(input_error("--params must be a JSON object")) };
            if let Some(w) = window {
                obj.insert("window".into(), json!(w));
            }
            if let Some(s) = seed {
                obj.insert("seed".into(), json!(s));
            }
            if let Some(d) = depth {
                obj.insert("depth".into(), json!(d));
            }
            if let Some(z) = zeta {
                obj.insert("zeta".into(), json!(z));
            }
            if let Some(w) = weight {
                obj.insert("weight".into(), json!(w));
            }
            let names: Vec<&str> = if suite == "all" { CHECK_NAMES.to_vec() } else { vec![suite.as_str()] };
            let mut lines = Vec::new();
            let mut failed = false;
            for name in names {
                let report = run_check(name, &p)?;
                failed |= !report.passed;
                lines.push(report.to_json_line());
            }
            Ok((lines.join("\n"), if failed { 4 } else { 0 }))
        }
        Command::Export { input, format } => {
            let text = if input == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| input_error(format!("cannot read stdin: {e}")))?
            } else {
                std::fs::read_to_string(&input).map_err(|e| input_error(format!("cannot read {input}: {e}")))?
            };
            let v: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("input is not valid JSON: {e}")))?;
            let payload = parse_payload(&v)?;
            let zeta: ZetaParam = match v.get("zeta") {
                Some(z) => serde_json::from_value(z.clone()).map_err(|e| input_error(format!("bad zeta: {e}")))?,
                None => "1".parse()?,
            };
            let weight = match &payload {
                Payload::Character(c) => c.base().clone(),
                Payload::Flag(f) => f.support().into_iter().next().unwrap_or_else(Weight::zero),
            };
            let weight = match v.get("weight") {
                Some(w) => serde_json::from_value(w.clone()).map_err(|e| input_error(format!("bad weight: {e}")))?,
                None => weight,
            };
            let ctx = Ctx { zeta, weight, depth: 0, format, steps: Vec::new() };
            let mut extra = v.clone();
            if let Some(o) = extra.as_object_mut() {
                for k in ["basis", "terms", "depth", "base", "weight", "zeta"] {
                    o.remove(k);
                }
            }
            Ok((render(&ctx, &payload, extra)?, 0))
        }
    }
}

fn parse_payload(v: &Value) -> Result<Payload, Failure> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| input_error("input needs a `terms` array"))?;
    let mut pairs = Vec::new();
    for t in terms {
        let w: Weight = serde_json::from_value(t.get("weight").cloned().unwrap_or(Value::Null))
            .map_err(|e| input_error(format!("bad term weight: {e}")))?;
        let c = t.get("coeff").and_then(Value::as_i64).ok_or_else(|| input_error("every term needs an integer `coeff`"))?;
        pairs.push((w, c));
    }
    match v.get("basis").and_then(Value::as_str) {
        Some("verma") => Ok(Payload::Flag(VermaVector::from_terms(pairs))),
        Some("monomial") => {
            let depth = v.get("depth").and_then(Value::as_u64).ok_or_else(|| input_error("monomial input needs `depth`"))?;
            let base: Weight = serde_json::from_value(v.get("base").cloned().unwrap_or(Value::Null))
                .map_err(|e| input_error(format!("monomial input needs `base`: {e}")))?;
            Ok(Payload::Character(FormalCharacter::from_monomials(base, depth as u32, pairs)?))
        }
        _ => Err(input_error("`basis` must be \"verma\" or \"monomial\"")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
