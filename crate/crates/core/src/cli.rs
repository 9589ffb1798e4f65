//! Command-line front end.
//!
//! Vertex numbers on the command line follow the OV convention unless
//! `--bourbaki` is given. `--json` prints one JSON document (keys sorted),
//! `--tsv` prints a header line and tab-separated rows, and the default is a
//! short human-readable report.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dynkin::{build_diagram, extend, DynkinType, Series};
use crate::error::{Error, Result};
use crate::forms::{
    catalog, closed_form_count, exceptional_names, h1_decomposition, named_form, validate_kac, KacDiagram,
    RealFormSpec,
};
use crate::homspace::{pi0_count_with_cap, reduced_pi0, Pi0Result};
use crate::lattice::SubgroupSpec;
use crate::puzzle::{Coloring, PuzzleInstance, DEFAULT_CAP};

#[derive(Parser, Debug)]
#[command(name = "reeder", version, about = "Galois cohomology of real forms via labeling puzzles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classes of labelings on a colored diagram.
    Orbits {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Cardinality of H^1 for a real form.
    H1 {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Connected components of (G/H)(R) for a subset-generated H.
    Pi0 {
        #[arg(long)]
        form: String,
        /// Vertices to drop (comma separated).
        #[arg(long, value_delimiter = ',', conflicts_with = "keep")]
        remove: Vec<usize>,
        /// Vertices to keep (comma separated).
        #[arg(long, value_delimiter = ',')]
        keep: Vec<usize>,
        /// Work in the extended diagram (vertex 0 allowed).
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        bourbaki: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Brute-force counts against the closed forms.
    Table {
        /// Include the classical families, not only the exceptional forms.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 12)]
        max_rank: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check a Kac diagram and the null-vector identities.
    Validate {
        #[arg(long, conflicts_with_all = ["dtype", "kac"])]
        form: Option<String>,
        #[arg(long = "type", requires = "kac")]
        dtype: Option<String>,
        /// Black vertices of the extended diagram (0 allowed).
        #[arg(long, value_delimiter = ',')]
        kac: Option<Vec<usize>>,
        #[arg(long)]
        bourbaki: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
}

/// Where the colored diagram comes from.
#[derive(Args, Debug)]
struct Target {
    /// A named form (`SU(2,3)`, `EV`, `Sp(4)`, `D6^tau(2)`, ...).
    #[arg(long, conflicts_with_all = ["dtype", "diagram"])]
    form: Option<String>,
    /// Series letter with `--rank`, or a full type such as `E7`.
    #[arg(long = "type", conflicts_with = "diagram")]
    dtype: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Black vertices for `--type` (comma separated).
    #[arg(long, value_delimiter = ',')]
    black: Vec<usize>,
    /// JSON: `{"type": "A4", "black": [2]}` or `{"cartan": [[...]], "coloring": "0100"}`.
    #[arg(long)]
    diagram: Option<String>,
    #[arg(long)]
    bourbaki: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramInput {
    #[serde(rename = "type")]
    dtype: Option<String>,
    #[serde(default)]
    black: Vec<usize>,
    cartan: Option<Vec<Vec<i32>>>,
    coloring: Option<Coloring>,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Orbits { target, cap, out } => orbits(&target, cap, &out).map(|s| (0, s)),
        Command::H1 { target, cap, out } => h1(&target, cap, &out).map(|s| (0, s)),
        Command::Pi0 { form, remove, keep, extended, bourbaki, cap, out } => {
            pi0(&form, &remove, &keep, extended, bourbaki, cap, &out).map(|s| (0, s))
        }
        Command::Table { all, max_rank, out } => table(all, max_rank, &out),
        Command::Validate { form, dtype, kac, bourbaki, out } => {
            validate(form.as_deref(), dtype.as_deref(), kac, bourbaki, &out)
        }
    }
}

fn emit_json<T: Serialize>(v: &T) -> Result<String> {
    // Going through `Value` sorts the keys, so output is canonical.
    let v = serde_json::to_value(v).map_err(|e| Error::Argument(e.to_string()))?;
    Ok(serde_json::to_string_pretty(&v).expect("value serializes") + "\n")
}

fn parse_type(s: &str, rank: Option<usize>) -> Result<DynkinType> {
    match rank {
        Some(r) => {
            let series = match s.trim().to_ascii_uppercase().as_str() {
                "A" => Series::A,
                "B" => Series::B,
                "C" => Series::C,
                "D" => Series::D,
                "E" => Series::E,
                "F" => Series::F,
                "G" => Series::G,
                other => return Err(Error::InvalidType(other.to_string())),
            };
            DynkinType::new(series, r)
        }
        None => s.parse(),
    }
}

/// Maps Bourbaki vertex numbers to OV ones; vertex 0 stays put.
fn translate(t: DynkinType, vs: &[usize], bourbaki: bool) -> Result<Vec<usize>> {
    if !bourbaki {
        return Ok(vs.to_vec());
    }
    let table = t.bourbaki_to_ov();
    vs.iter()
        .map(|&v| {
            table
                .get(v)
                .copied()
                .ok_or_else(|| Error::Argument(format!("vertex {v} out of range for {t}")))
        })
        .collect()
}

enum Board {
    Form(RealFormSpec),
    Raw(PuzzleInstance, String),
}

fn resolve(target: &Target) -> Result<Board> {
    if let Some(name) = &target.form {
        return Ok(Board::Form(named_form(name)?));
    }
    if let Some(t) = &target.dtype {
        let t = parse_type(t, target.rank)?;
        let black = translate(t, &target.black, target.bourbaki)?;
        return Ok(Board::Form(RealFormSpec::inner(t, &black)?));
    }
    if let Some(text) = &target.diagram {
        let input: DiagramInput =
            serde_json::from_str(text).map_err(|e| Error::Argument(format!("--diagram: {e}")))?;
        return match (input.dtype, input.cartan) {
            (Some(t), None) => {
                let t = parse_type(&t, None)?;
                let black = translate(t, &input.black, target.bourbaki)?;
                Ok(Board::Form(RealFormSpec::inner(t, &black)?))
            }
            (None, Some(cartan)) => {
                let n = cartan.len();
                let coloring = input.coloring.unwrap_or_else(|| Coloring::white(n));
                let label = format!("custom board on {n} vertices");
                Ok(Board::Raw(PuzzleInstance::from_cartan(cartan, coloring)?, label))
            }
            _ => Err(Error::Argument(
                "--diagram needs exactly one of \"type\" or \"cartan\"".into(),
            )),
        };
    }
    Err(Error::Argument("one of --form, --type or --diagram is required".into()))
}

#[derive(Serialize)]
struct ClassRow {
    id: usize,
    rep: crate::puzzle::Labeling,
    size: u64,
    fixed: bool,
}

#[derive(Serialize)]
struct OrbitsReport {
    board: String,
    /// 1-based vertices of the original diagram that carry the board.
    board_vertices: Vec<usize>,
    coloring: Coloring,
    num_classes: usize,
    zero_class: usize,
    classes: Vec<ClassRow>,
}

fn orbits(target: &Target, cap: usize, out: &Output) -> Result<String> {
    let (instance, board, vertices) = match resolve(target)? {
        Board::Form(spec) => {
            let (reduced, _) = h1_decomposition(&spec, cap)?;
            let vs = reduced.vertices.iter().map(|v| v + 1).collect();
            (reduced.instance, spec.name(), vs)
        }
        Board::Raw(inst, label) => {
            let vs = (1..=inst.len()).collect();
            (inst, label, vs)
        }
    };
    let decomp = instance.enumerate_orbits_with_cap(cap)?;
    let classes: Vec<ClassRow> = (0..decomp.num_classes())
        .map(|id| {
            let rep = decomp.rep(id);
            ClassRow { id, rep, size: decomp.size(id), fixed: instance.is_fixed(&rep) }
        })
        .collect();
    let report = OrbitsReport {
        board,
        board_vertices: vertices,
        coloring: instance.coloring().clone(),
        num_classes: decomp.num_classes(),
        zero_class: decomp.zero_class(),
        classes,
    };
    if out.json {
        return emit_json(&report);
    }
    let mut s = String::new();
    if out.tsv {
        s.push_str("class\trep\tsize\tfixed\n");
        for c in &report.classes {
            let _ = writeln!(s, "{}\t{}\t{}\t{}", c.id, c.rep, c.size, c.fixed);
        }
        return Ok(s);
    }
    let _ = writeln!(s, "{}: {} classes", report.board, report.num_classes);
    for c in &report.classes {
        let fixed = if c.fixed { "  fixed" } else { "" };
        let _ = writeln!(s, "  {}  size {}{}", c.rep, c.size, fixed);
    }
    Ok(s)
}

#[derive(Serialize)]
struct H1Report {
    form: String,
    label: String,
    count: usize,
    closed_form: Option<usize>,
    /// τ-symmetric labelings of the full diagram, one per class.
    representatives: Vec<crate::puzzle::Labeling>,
}

fn h1(target: &Target, cap: usize, out: &Output) -> Result<String> {
    let spec = match resolve(target)? {
        Board::Form(spec) => spec,
        Board::Raw(..) => {
            return Err(Error::Argument("h1 needs a real form, not a raw board".into()))
        }
    };
    let (reduced, decomp) = h1_decomposition(&spec, cap)?;
    let report = H1Report {
        form: spec.name(),
        label: spec.label(),
        count: decomp.num_classes(),
        closed_form: closed_form_count(&spec).ok(),
        representatives: decomp.reps().iter().map(|r| reduced.lift(r)).collect(),
    };
    if out.json {
        return emit_json(&report);
    }
    if out.tsv {
        return Ok(format!(
            "form\tlabel\tcount\n{}\t{}\t{}\n",
            report.form, report.label, report.count
        ));
    }
    Ok(format!("{}\n", report.count))
}

#[allow(clippy::too_many_arguments)]
fn pi0(
    form: &str,
    remove: &[usize],
    keep: &[usize],
    extended: bool,
    bourbaki: bool,
    cap: usize,
    out: &Output,
) -> Result<String> {
    let spec = named_form(form)?;
    let t = spec.dtype;
    let remove = translate(t, remove, bourbaki)?;
    let keep = translate(t, keep, bourbaki)?;
    let result: Pi0Result = if spec.is_inner() {
        let sub = if keep.is_empty() {
            SubgroupSpec::removing(spec.clone(), &remove, extended)?
        } else {
            SubgroupSpec::new(spec.clone(), keep, extended)?
        };
        pi0_count_with_cap(&sub, cap)?
    } else {
        // Outer ambient: only the built-in reduction, removing one vertex.
        match remove.as_slice() {
            [r] if keep.is_empty() && !extended => reduced_pi0(&spec, *r)?,
            _ => return Err(Error::OuterAmbient(spec.name())),
        }
    };
    if out.json {
        let mut v = serde_json::to_value(&result).map_err(|e| Error::Argument(e.to_string()))?;
        v["form"] = json!(spec.name());
        return emit_json(&v);
    }
    if out.tsv {
        let mut s = String::from("xi\tin_xi0\n");
        for x in &result.xi {
            let _ = writeln!(s, "{}\t{}", x, result.xi0.contains(x));
        }
        return Ok(s);
    }
    Ok(format!("{}\n", result.count))
}

#[derive(Serialize)]
struct TableRow {
    form: String,
    label: String,
    h1: usize,
    closed_form: Option<usize>,
    matches: bool,
}

fn table(all: bool, max_rank: usize, out: &Output) -> Result<(i32, String)> {
    let specs: Vec<RealFormSpec> = if all {
        catalog(max_rank)
    } else {
        exceptional_names().filter_map(|n| named_form(n).ok()).collect()
    };
    let mut rows = Vec::with_capacity(specs.len());
    for spec in &specs {
        let h1 = h1_decomposition(spec, DEFAULT_CAP)?.1.num_classes();
        let closed = closed_form_count(spec).ok();
        rows.push(TableRow {
            form: spec.name(),
            label: spec.label(),
            h1,
            closed_form: closed,
            matches: closed == Some(h1),
        });
    }
    let all_match = rows.iter().all(|r| r.matches);
    let code = if all_match { 0 } else { 1 };
    if out.json {
        let v = json!({ "rows": rows, "all_match": all_match });
        return Ok((code, emit_json(&v)?));
    }
    let mut s = String::new();
    if out.tsv {
        s.push_str("form\tlabel\th1\tclosed_form\tmatch\n");
    }
    for r in &rows {
        let closed = r.closed_form.map_or("-".to_string(), |c| c.to_string());
        if out.tsv {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", r.form, r.label, r.h1, closed, r.matches);
        } else {
            let mark = if r.matches { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "{:<16} {:<14} {:>4} {:>4}  {}", r.form, r.label, r.h1, closed, mark);
        }
    }
    if !out.tsv {
        let _ = writeln!(s, "all match: {all_match}");
    }
    Ok((code, s))
}

#[derive(Serialize)]
struct ValidateReport {
    form: Option<String>,
    #[serde(rename = "type")]
    dtype: DynkinType,
    marks: Vec<u64>,
    comarks: Vec<u64>,
    null_vectors_hold: bool,
    kac: Option<Vec<u8>>,
    kac_check: Option<crate::forms::KacCheck>,
}

fn validate(
    form: Option<&str>,
    dtype: Option<&str>,
    kac: Option<Vec<usize>>,
    bourbaki: bool,
    out: &Output,
) -> Result<(i32, String)> {
    let (name, t, black) = match (form, dtype) {
        (Some(f), _) => {
            let spec = named_form(f)?;
            let black = spec.kac.as_ref().map(|nu| {
                (0..nu.len()).filter(|&j| nu[j] != 0).collect::<Vec<_>>()
            });
            (Some(spec.name()), spec.dtype, black)
        }
        (None, Some(t)) => {
            let t: DynkinType = t.parse()?;
            let black = translate(t, &kac.unwrap_or_default(), bourbaki)?;
            if let Some(&bad) = black.iter().find(|&&b| b > t.rank()) {
                return Err(Error::Argument(format!("vertex {bad} out of range for {t}")));
            }
            (None, t, Some(black))
        }
        (None, None) => return Err(Error::Argument("give --form, or --type with --kac".into())),
    };
    let ext = extend(&build_diagram(t));
    let check = black.as_ref().map(|b| validate_kac(&KacDiagram::new(t, b)));
    let report = ValidateReport {
        form: name,
        dtype: t,
        marks: ext.marks().to_vec(),
        comarks: ext.comarks().to_vec(),
        null_vectors_hold: ext.null_vectors_hold(),
        kac: black.as_ref().map(|b| KacDiagram::new(t, b).nu),
        kac_check: check.clone(),
    };
    let ok = report.null_vectors_hold && check.as_ref().map_or(true, |c| c.valid);
    let code = if ok { 0 } else { Error::InvalidKac(String::new()).exit_code() };
    if out.json {
        return Ok((code, emit_json(&report)?));
    }
    let verdict = match &check {
        Some(c) if c.valid => {
            let kind = c.kind.map_or(String::new(), |k| format!("{k:?}, "));
            format!("valid ({kind}weighted sum {})", c.weighted_sum)
        }
        Some(c) => format!("invalid: {}", c.message),
        None => "no Kac diagram stored (outer form)".to_string(),
    };
    if out.tsv {
        return Ok((
            code,
            format!("type\tnull_vectors\tkac\n{}\t{}\t{}\n", t, report.null_vectors_hold, verdict),
        ));
    }
    Ok((
        code,
        format!(
            "{}: marks {:?}, comarks {:?}, null vectors {}\nKac: {}\n",
            report.form.as_deref().unwrap_or(&t.to_string()),
            report.marks,
            report.comarks,
            if report.null_vectors_hold { "ok" } else { "FAIL" },
            verdict
        ),
    ))
}
