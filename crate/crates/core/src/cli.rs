//! Command-line front end. Every report embeds the run configuration and the
//! library version, and identical invocations produce identical bytes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    abelian_factory, check_color_axioms, direct_sum, group_ring_matrix_check, is_graded_simple, is_lie_algebra,
    killing_matrix, killing_structure, sl2_factory, sln_factory, tensor_color_construct, GradedAlgebra,
};
use crate::alt::{
    determinant_check, find_alternating_nonidentity, insertion_check, lift_to_l, trace_extract, WitnessPolynomial,
    WitnessRecord,
};
use crate::codim::{
    codim_graded_component, codim_graded_total, codim_lie, codim_plain, exponent_trend, CodimMode, CodimOptions,
    CodimReport, ComponentKey, DEFAULT_COLUMN_LIMIT, DEFAULT_PRIMES, DEFAULT_ROW_LIMIT,
};
use crate::error::{Error, Result};
use crate::group::{
    bicharacter_from_table, canonical_cocycle, literal_sign_table, trivial_cocycle, Bicharacter, SignTable,
};
use crate::linalg::format_rational;
use crate::poly::{Evaluation, MonomialShape, Var};
use crate::sym::{hook_dim, partitions_of, rectangle_bound, Partition};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "colorlie", version, about = "Exact computations for Z2xZ2 color Lie superalgebras F[G](x)B")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// sl2, sl<n>, sl2xsl2, abelian:<m>, L (= L:sl2), L:<base>, or a spec file.
    #[arg(long, global = true, default_value = "L")]
    pub algebra: String,
    #[arg(long, global = true, value_enum, default_value_t = CocycleChoice::Canonical)]
    pub cocycle: CocycleChoice,
    /// JSON 4x4 table of +1/-1, used with `--cocycle file`.
    #[arg(long, global = true)]
    pub cocycle_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Prime for modular rank; repeatable.
    #[arg(long = "prime", global = true)]
    pub primes: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest number of evaluation columns in exact mode.
    #[arg(long, global = true, default_value_t = DEFAULT_COLUMN_LIMIT)]
    pub column_limit: u128,
    /// Largest number of monomial rows.
    #[arg(long, global = true, default_value_t = DEFAULT_ROW_LIMIT)]
    pub row_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CocycleChoice {
    Canonical,
    Literal,
    Trivial,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    Randomized,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    All,
    Insertion,
    Trace,
    #[value(alias = "p1")]
    Determinant,
    #[value(alias = "n3-lift")]
    Lift,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Color anticommutativity and Jacobi on all basis pairs and triples.
    Axioms,
    /// Group elements under the cocycle multiply like their 2x2 matrices.
    IsoCheck,
    /// Killing matrix: symmetry, degree blocks, determinants.
    Killing,
    /// Graded simplicity, with a proper ideal when there is one.
    SimpleCheck,
    /// Codimension c_n.
    Codim {
        #[arg(long)]
        n: usize,
        /// Left-normed rows (Lie algebras only).
        #[arg(long)]
        lie: bool,
    },
    /// Graded codimension, or a single degree component with --key.
    GradedCodim {
        /// Degree; implied by `--key` when absent.
        #[arg(long, required_unless_present = "key")]
        n: Option<usize>,
        /// Component counts `k_e,k_a,k_b,k_ab`.
        #[arg(long, value_parser = parse_key)]
        key: Option<ComponentKey>,
    },
    /// c_n for n = 1..=n_max with roots and ratios.
    Trend {
        #[arg(long)]
        n_max: usize,
    },
    /// Exact checks of the alternating-polynomial constructions.
    Lemmas {
        #[arg(long, value_enum, default_value_t = Check::All)]
        which: Check,
        /// Number of trace pairs or determinant levels; all small values when absent.
        #[arg(long)]
        k: Option<usize>,
        /// Seeded evaluations per check.
        #[arg(long, default_value_t = 5)]
        evaluations: usize,
        /// Sampled cross-copy permutations for the lift.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Replay a witness written by `search-witness`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Search for a non-identity alternating left-normed monomial.
    SearchWitness {
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Hook dimensions of partitions or rectangles.
    Tableaux {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated parts, e.g. 3,2,1.
        #[arg(long)]
        shape: Option<String>,
        /// `q,k` for the q x k rectangle bound.
        #[arg(long)]
        rectangle: Option<String>,
    },
}

fn parse_key(s: &str) -> std::result::Result<ComponentKey, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| "a key has four entries k_e,k_a,k_b,k_ab".to_string())
}

/// Everything a run depends on; embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub algebra: String,
    pub cocycle: CocycleChoice,
    pub cocycle_file: Option<String>,
    pub mode: ModeArg,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub column_limit: u128,
    pub row_limit: usize,
}

#[derive(Debug, Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    config: RunConfig,
    passed: bool,
    result: Value,
}

/// Outcome of a subcommand before formatting.
struct Outcome {
    passed: bool,
    result: Value,
    /// Preformatted table for TSV output; the flattened result otherwise.
    table: Option<String>,
}

impl Outcome {
    fn new(passed: bool, result: impl Serialize) -> Result<Self> {
        Ok(Outcome {
            passed,
            result: serde_json::to_value(result)?,
            table: None,
        })
    }

    fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }
}

/// Loaded algebra; `base` is `B` when the algebra is `F[G] (x) B`.
pub struct Loaded {
    pub algebra: GradedAlgebra,
    pub base: Option<GradedAlgebra>,
    pub table: SignTable,
    pub bicharacter: Bicharacter,
}

fn factory(name: &str) -> Result<Option<GradedAlgebra>> {
    if name == "sl2xsl2" {
        let s = sl2_factory();
        return Ok(Some(direct_sum(&s, &s).with_name("sl2xsl2")));
    }
    if let Some(m) = name.strip_prefix("abelian:") {
        let m = m
            .parse()
            .map_err(|_| Error::Parse(format!("bad abelian dimension {m:?}")))?;
        return abelian_factory(m).map(Some);
    }
    if let Some(n) = name.strip_prefix("sl") {
        if let Ok(n) = n.parse::<usize>() {
            return sln_factory(n).map(Some);
        }
    }
    Ok(None)
}

fn cocycle_table(g: &GlobalArgs) -> Result<(SignTable, Bicharacter)> {
    Ok(match g.cocycle {
        CocycleChoice::Canonical => (*canonical_cocycle().table(), Bicharacter::canonical()),
        // checked against the bicharacter it is meant to produce
        CocycleChoice::Literal => (literal_sign_table(), Bicharacter::canonical()),
        CocycleChoice::Trivial => (*trivial_cocycle().table(), Bicharacter::trivial()),
        CocycleChoice::File => {
            let path = g
                .cocycle_file
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("--cocycle file needs --cocycle-file".into()))?;
            let text = std::fs::read_to_string(path)?;
            let table: SignTable = serde_json::from_str(&text)?;
            (table, bicharacter_from_table(&table)?)
        }
    })
}

/// Resolves an algebra name (see `--algebra`) with `table` as the cocycle of
/// any `F[G] (x) B` construction. Returns the algebra and its base `B`.
pub fn resolve_algebra(name: &str, table: &SignTable) -> Result<(GradedAlgebra, Option<GradedAlgebra>)> {
    let base_name = match name {
        "L" => Some("sl2"),
        other => other.strip_prefix("L:"),
    };
    if let Some(base_name) = base_name {
        let base = factory(base_name)?
            .ok_or_else(|| Error::InvalidArgument(format!("unknown base algebra {base_name:?}")))?;
        let algebra = tensor_color_construct(&base, table)?;
        return Ok((algebra, Some(base)));
    }
    let algebra = match factory(name)? {
        Some(a) => a,
        None => GradedAlgebra::load(name)?,
    };
    Ok((algebra, None))
}

pub fn load_algebra(g: &GlobalArgs) -> Result<Loaded> {
    let (table, beta) = cocycle_table(g)?;
    let (algebra, base) = resolve_algebra(&g.algebra, &table)?;
    let bicharacter = if base.is_none() && algebra.is_trivially_graded() { Bicharacter::trivial() } else { beta };
    Ok(Loaded {
        algebra,
        base,
        table,
        bicharacter,
    })
}

fn codim_options(g: &GlobalArgs) -> CodimOptions {
    CodimOptions {
        mode: match g.mode {
            ModeArg::Exact => CodimMode::Exact,
            ModeArg::Randomized => CodimMode::Randomized,
            ModeArg::Auto => CodimMode::Auto,
        },
        seed: g.seed,
        primes: if g.primes.is_empty() { DEFAULT_PRIMES.to_vec() } else { g.primes.clone() },
        column_limit: g.column_limit,
        row_limit: g.row_limit,
        ..CodimOptions::default()
    }
}

const LISTED_VIOLATIONS: usize = 50;

fn cmd_axioms(l: &Loaded) -> Result<Outcome> {
    let r = check_color_axioms(&l.algebra, &l.bicharacter);
    let passed = r.is_clean();
    Outcome::new(
        passed,
        json!({
            "algebra": l.algebra.name(),
            "dim": l.algebra.dim(),
            "bicharacter": l.bicharacter.0,
            "pairs_checked": r.pairs_checked,
            "triples_checked": r.triples_checked,
            "anticommutativity_violations": r.anticommutativity.len(),
            "jacobi_violations": r.jacobi.len(),
            "anticommutativity": r.anticommutativity.iter().take(LISTED_VIOLATIONS).collect::<Vec<_>>(),
            "jacobi": r.jacobi.iter().take(LISTED_VIOLATIONS).collect::<Vec<_>>(),
        }),
    )
}

fn cmd_iso_check(l: &Loaded) -> Result<Outcome> {
    let r = group_ring_matrix_check(&l.table);
    Outcome::new(r.all_pass(), json!({ "table": l.table, "products": r.products }))
}

fn cmd_killing(l: &Loaded) -> Result<Outcome> {
    let k = killing_matrix(&l.algebra);
    let reference = l.base.as_ref().map(killing_matrix);
    let s = killing_structure(&l.algebra, &k, reference.as_ref());
    let passed = s.symmetric && s.block_diagonal() && s.determinant != "0" && s.blocks.iter().all(|b| b.nondegenerate);
    let matrix: Vec<Vec<String>> = k.matrix().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    Outcome::new(passed, json!({ "algebra": l.algebra.name(), "structure": s, "matrix": matrix }))
}

fn cmd_simple(l: &Loaded) -> Result<Outcome> {
    let r = is_graded_simple(&l.algebra);
    Outcome::new(r.simple, json!({ "algebra": l.algebra.name(), "report": r }))
}

fn codim_outcome(r: CodimReport, extra: Option<(&str, Value, bool)>) -> Result<Outcome> {
    let table = r.to_tsv();
    let mut passed = r.within_bound();
    let mut result = serde_json::to_value(&r)?;
    if let Some((key, value, ok)) = extra {
        passed &= ok;
        result[key] = value;
    }
    Ok(Outcome::new(passed, result)?.with_table(table))
}

fn cmd_codim(l: &Loaded, g: &GlobalArgs, n: usize, lie: bool) -> Result<Outcome> {
    let opts = codim_options(g);
    let r = if lie { codim_lie(&l.algebra, n, &opts)? } else { codim_plain(&l.algebra, n, &opts)? };
    codim_outcome(r, None)
}

fn cmd_graded(l: &Loaded, g: &GlobalArgs, n: Option<usize>, key: Option<ComponentKey>) -> Result<Outcome> {
    let opts = codim_options(g);
    if let Some(key) = key {
        if let Some(n) = n.filter(|&n| key.iter().sum::<usize>() != n) {
            return Err(Error::InvalidArgument(format!("key {key:?} does not sum to n = {n}")));
        }
        let r = codim_graded_component(&l.algebra, key, MonomialShape::AllBracketings, &opts)?;
        return codim_outcome(r, None);
    }
    let n = n.expect("clap requires --n without --key");
    let total = codim_graded_total(&l.algebra, n, &opts)?;
    // F[G] (x) B with a Lie base: compare with 4^n c_n(B)
    let extra = match &l.base {
        Some(b) if is_lie_algebra(b) => {
            let base = codim_lie(b, n, &opts)?;
            let expected = 4u128.pow(n as u32) * base.value;
            Some((
                "reduction",
                json!({ "base_codim": base.value, "four_pow_n_times_base": expected, "holds": expected == total.value }),
                expected == total.value,
            ))
        }
        _ => None,
    };
    codim_outcome(total, extra)
}

fn cmd_trend(l: &Loaded, g: &GlobalArgs, n_max: usize) -> Result<Outcome> {
    let t = exponent_trend(&l.algebra, n_max, &codim_options(g))?;
    let monotone = t.rows.windows(2).all(|w| w[1].value >= w[0].value);
    let bounded = t.reports.iter().all(CodimReport::within_bound);
    let table = t.to_tsv();
    Ok(Outcome::new(monotone && bounded, json!({ "monotone": monotone, "within_bound": bounded, "trend": t }))?
        .with_table(table))
}

fn load_witness(path: &PathBuf, b: &GradedAlgebra) -> Result<WitnessPolynomial> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("witness file is not JSON ({e}); write it with --format json")))?;
    // either a bare record or a search-witness report
    let record = v.pointer("/result/record").cloned().unwrap_or(v);
    let record: WitnessRecord = serde_json::from_value(record)?;
    WitnessPolynomial::from_record(&record, b)
}

fn check_base(l: &Loaded) -> GradedAlgebra {
    l.base.clone().unwrap_or_else(|| l.algebra.clone())
}

fn random_evaluation(w: &WitnessPolynomial, extra: &[Var], dim: usize, rng: &mut ChaCha8Rng) -> Evaluation {
    use rand::Rng;
    let mut e = Evaluation::new();
    for &v in w.polynomial.vars().iter().chain(extra) {
        e.set(v, (0..dim).map(|_| crate::linalg::qi(rng.gen_range(-3..=3))).collect());
    }
    e
}

fn cmd_checks(l: &Loaded, g: &GlobalArgs, which: Check, k: Option<usize>, evaluations: usize, samples: usize, witness: Option<&PathBuf>) -> Result<Outcome> {
    let b = check_base(l);
    let w = match witness {
        Some(p) => load_witness(p, &b)?,
        None => find_alternating_nonidentity(&b, 200, g.seed)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut checks = Vec::new();
    let mut passed = true;
    let mut push = |name: &str, ok: bool, detail: Value| {
        passed &= ok;
        checks.push(json!({ "check": name, "passed": ok, "detail": detail }));
    };
    let run = |c: Check| which == Check::All || which == c;
    let top = w.polynomial.vars().iter().copied().max().unwrap_or(0);

    if run(Check::Insertion) {
        for i in 0..evaluations {
            let e = random_evaluation(&w, &[], b.dim(), &mut rng);
            let r = insertion_check(&w.polynomial, &w.alternating, &b, &e, g.seed + i as u64)?;
            push("insertion", r.passed, serde_json::to_value(&r)?);
        }
    }
    if run(Check::Trace) {
        let ks: Vec<usize> = k.map_or_else(|| vec![1, 2, 3], |k| vec![k]);
        for &kk in &ks {
            let pairs: Vec<(Var, Var)> = (0..kk as Var).map(|s| (top + 2 * s + 1, top + 2 * s + 2)).collect();
            let extra: Vec<Var> = pairs.iter().flat_map(|&(v, z)| [v, z]).collect();
            for _ in 0..evaluations {
                let e = random_evaluation(&w, &extra, b.dim(), &mut rng);
                let r = trace_extract(&w.polynomial, &w.alternating, &pairs, &b, &e)?;
                push("trace", r.passed, serde_json::to_value(&r)?);
            }
        }
    }
    if run(Check::Determinant) {
        let ks: Vec<usize> = k.map_or_else(|| vec![1, 2], |k| vec![k]);
        let mut auxiliary = Vec::new();
        for &kk in &ks {
            for i in 0..evaluations {
                let e = random_evaluation(&w, &[], b.dim(), &mut rng);
                let r = determinant_check(&w.polynomial, &w.alternating, &b, &e, kk, g.seed + i as u64)?;
                auxiliary.push(r.auxiliary);
                push("determinant", r.passed, serde_json::to_value(&r)?);
            }
        }
        let same = auxiliary.windows(2).all(|p| p[0] == p[1]);
        push("auxiliary-count-independent-of-k", same, json!(auxiliary.first()));
    }
    if run(Check::Lift) {
        let l_alg = tensor_color_construct(&b, canonical_cocycle().table())?;
        let r = lift_to_l(&w, &b, &l_alg, canonical_cocycle().table(), samples, g.seed)?;
        push("lift", r.passed, serde_json::to_value(&r)?);
    }
    let total = checks.len();
    Outcome::new(
        passed,
        json!({ "algebra": b.name(), "witness": w.to_record(), "checks_run": total, "checks": checks }),
    )
}

fn cmd_search(l: &Loaded, g: &GlobalArgs, trials: usize) -> Result<Outcome> {
    let b = check_base(l);
    let w = find_alternating_nonidentity(&b, trials, g.seed)?;
    let value: Vec<String> = w.value.iter().map(format_rational).collect();
    Outcome::new(
        true,
        json!({ "algebra": b.name(), "trial": w.trial, "terms": w.polynomial.num_terms(), "value": value, "record": w.to_record() }),
    )
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad part {p:?}"))))
        .collect()
}

fn cmd_tableaux(n: Option<usize>, shape: Option<&str>, rectangle: Option<&str>) -> Result<Outcome> {
    if let Some(s) = shape {
        let p = Partition::new(parse_parts(s)?)?;
        return Outcome::new(true, json!({ "shape": p.to_string(), "hook_dim": hook_dim(&p).to_string() }));
    }
    if let Some(s) = rectangle {
        let qk = parse_parts(s)?;
        let [q, k] = qk[..] else {
            return Err(Error::Parse("--rectangle takes q,k".into()));
        };
        let r = rectangle_bound(q, k)?;
        return Outcome::new(
            r.holds,
            json!({ "q": r.q, "k": r.k, "n": r.n, "hook_dim": r.hook_dim.to_string(), "bound": crate::codim::round_sig(r.bound), "holds": r.holds }),
        );
    }
    let n = n.ok_or_else(|| Error::InvalidArgument("tableaux needs --n, --shape or --rectangle".into()))?;
    let parts = partitions_of(n)?;
    let mut table = String::from("shape\thook_dim\n");
    let mut rows = Vec::new();
    let mut sum_sq = BigUint::zero();
    for p in &parts {
        let d = hook_dim(p);
        table.push_str(&format!("{p}\t{d}\n"));
        sum_sq += &d * &d;
        rows.push(json!({ "shape": p.to_string(), "hook_dim": d.to_string() }));
    }
    let factorial: BigUint = (1..=n).map(BigUint::from).product();
    let ok = sum_sq == factorial;
    table.push_str(&format!("sum_of_squares\t{sum_sq}\n"));
    Ok(Outcome::new(
        ok,
        json!({ "n": n, "partitions": rows, "sum_of_squares": sum_sq.to_string(), "factorial": factorial.to_string() }),
    )?
    .with_table(table))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if let Command::Tableaux { n, shape, rectangle } = &cli.command {
        return cmd_tableaux(*n, shape.as_deref(), rectangle.as_deref());
    }
    let l = load_algebra(g)?;
    match &cli.command {
        Command::Axioms => cmd_axioms(&l),
        Command::IsoCheck => cmd_iso_check(&l),
        Command::Killing => cmd_killing(&l),
        Command::SimpleCheck => cmd_simple(&l),
        Command::Codim { n, lie } => cmd_codim(&l, g, *n, *lie),
        Command::GradedCodim { n, key } => cmd_graded(&l, g, *n, *key),
        Command::Trend { n_max } => cmd_trend(&l, g, *n_max),
        Command::Lemmas {
            which,
            k,
            evaluations,
            samples,
            witness,
        } => cmd_checks(&l, g, *which, *k, *evaluations, *samples, witness.as_ref()),
        Command::SearchWitness { trials } => cmd_search(&l, g, *trials),
        Command::Tableaux { .. } => unreachable!(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}\t{}\n", items.join(",")));
        }
        _ => out.push_str(&format!("{prefix}\t{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(report: &Report, table: Option<&str>, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Tsv => {
            let mut header = String::new();
            flatten("config", &serde_json::to_value(&report.config)?, &mut header);
            let mut out = format!("# {}\t{}\n", report.tool, report.version);
            for line in header.lines() {
                out.push_str(&format!("# {line}\n"));
            }
            out.push_str(&format!("# passed\t{}\n", report.passed));
            match table {
                Some(t) => out.push_str(t),
                None => flatten("", &report.result, &mut out),
            }
            out
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted(_) | Error::ConstructionFailed(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("colorlie: {e}");
            return exit_code(&e);
        }
    };
    let g = &cli.global;
    let config = RunConfig {
        command: cli.command.clone(),
        algebra: g.algebra.clone(),
        cocycle: g.cocycle,
        cocycle_file: g.cocycle_file.as_ref().map(|p| p.display().to_string()),
        mode: g.mode,
        seed: g.seed,
        primes: codim_options(g).primes,
        column_limit: g.column_limit,
        row_limit: g.row_limit,
    };
    let report = Report {
        tool: "colorlie",
        version: env!("CARGO_PKG_VERSION"),
        config,
        passed: outcome.passed,
        result: outcome.result,
    };
    let text = match render(&report, outcome.table.as_deref(), g.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("colorlie: {e}");
            return EXIT_INPUT;
        }
    };
    let written = match &g.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("colorlie: {e}");
        return EXIT_INPUT;
    }
    if report.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
