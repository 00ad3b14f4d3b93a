//! Argument grammar and dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use kkg_core::classes::{class_power_map, kuelshammer_profile};
use kkg_core::group::exponent_gap_regime;
use kkg_core::selftest::ring_selftest;
use kkg_core::sylow::Method;
use kkg_core::{p_exponent, Family, GroupDesc, RingDesc, RingKind, Strategy, ENUMERATION_CAP};

use crate::cache::Cache;
use crate::context::{CliError, CliResult, Context};
use crate::literal::parse_matrix;
use crate::report::{big, Format, Report};
use crate::verify::{self, mat_json, oracle_group_by_name, Shape, Status, Target, VerifyConfig};

/// Default seed for every sampled computation; printed in each report.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(
    name = "kkg",
    version,
    about = "Invariants of GL_n and SL_n over F_q[t]/t^r and W_r(F_q), and of their group algebras over F_p",
    after_help = "Matrix literals: rows separated by ';', entries by ','. Entries are expressions in \
integers, 't' (poly rings) and 'x' (the residue field generator when f > 1) with + - * ^ and \
parentheses; juxtaposition multiplies, e.g. \"1,1,0;t,1,1;t,0,1\" or \"3+2x,1;0,1\".\n\n\
Exit status: 0 success, 1 a check failed, 2 usage error.\n\
The class cache lives in --cache-dir or $KKG_CACHE_DIR; without either nothing is cached."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Directory for cached class partitions.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest group enumerated for class computations.
    #[arg(long, default_value_t = ENUMERATION_CAP, global = true)]
    pub enum_cap: u128,
    /// Report zero timings so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "GL", alias = "gl")]
    Gl,
    #[value(name = "SL", alias = "sl")]
    Sl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Poly,
    Witt,
}

impl From<KindArg> for RingKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Poly => RingKind::Poly,
            KindArg::Witt => RingKind::Witt,
        }
    }
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gl => Family::GL,
            FamilyArg::Sl => Family::SL,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    #[arg(long, value_enum)]
    pub ring: KindArg,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long)]
    pub r: u32,
}

impl RingArgs {
    fn ring(&self) -> CliResult<RingDesc> {
        Ok(RingDesc::new(self.ring.into(), self.p, self.f, self.r)?)
    }

    fn json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("ring".into(), json!(kind_name(self.ring.into())));
        m.insert("p".into(), json!(self.p));
        m.insert("f".into(), json!(self.f));
        m.insert("r".into(), json!(self.r));
        m
    }
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, value_enum)]
    pub group: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub ring: RingArgs,
}

impl GroupArgs {
    fn group(&self) -> CliResult<GroupDesc> {
        Ok(GroupDesc::new(
            self.group.into(),
            self.n,
            self.ring.ring()?,
        )?)
    }

    fn json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("group".into(), json!(Family::from(self.group).to_string()));
        m.insert("n".into(), json!(self.n));
        m.extend(self.ring.json());
        m
    }
}

/// Group parameters shared by both ring kinds.
#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub group: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long)]
    pub r: u32,
}

impl ShapeArgs {
    fn shape(&self) -> Shape {
        Shape {
            family: self.group.into(),
            n: self.n,
            p: self.p,
            f: self.f,
            r: self.r,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring-level commands.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Order of a matrix (with --matrix) or of the group.
    Order {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// p-exponent of the group from its Sylow p-subgroup.
    Exponent {
        #[command(flatten)]
        group: GroupArgs,
        /// Sample the Sylow subgroup instead of scanning it.
        #[arg(long)]
        sampled: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Conjugacy classes of the group.
    Classes {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Kuelshammer dimension profile of F_p G.
    Kuelshammer {
        #[command(flatten)]
        group: GroupArgs,
        /// Coefficient prime; defaults to the residue characteristic.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Compare G(W_r(F_q)) with G(F_q[t]/t^r).
    Compare {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Run named checks; `all` runs every one.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    /// Arithmetic consistency checks on one ring.
    Selftest {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Largest prime for lemma-chu.
    #[arg(long, default_value_t = 23)]
    pub pmax: u64,
    /// Largest ring size for the ring self-tests.
    #[arg(long, default_value_t = 10_000)]
    pub ring_max: u64,
    /// Random instances per ring for lemma-power and lemma-bvanish.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Oracle groups, comma separated (C4, S3, S3P2, SL2Z4, SL2F2T2, SL2F3, GL2F3).
    #[arg(long, value_delimiter = ',')]
    pub groups: Vec<String>,
    /// With --p and --r: replace the default instance of prop-pexp, prop-gap2 and compare.
    #[arg(long, value_enum, default_value = "GL")]
    pub group: FamilyArg,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long)]
    pub r: Option<u32>,
    /// Add GL_2(Z/27) against GL_2(F_3[t]/t^3) to compare (about 3 * 10^5 elements each).
    #[arg(long)]
    pub heavy: bool,
}

impl VerifyArgs {
    fn config(&self) -> CliResult<VerifyConfig> {
        let mut config = VerifyConfig {
            pmax: self.pmax,
            ring_max: self.ring_max,
            samples: self.samples,
            ..VerifyConfig::default()
        };
        if !self.groups.is_empty() {
            config.oracle_groups = self
                .groups
                .iter()
                .map(|name| {
                    oracle_group_by_name(name.trim())
                        .ok_or_else(|| CliError::Usage(format!("unknown oracle group {name}")))
                })
                .collect::<CliResult<_>>()?;
        }
        match (self.p, self.r) {
            (Some(p), Some(r)) => {
                let shape = Shape {
                    family: self.group.into(),
                    n: self.n,
                    p,
                    f: self.f,
                    r,
                };
                config.pexp_shapes = vec![shape];
                config.gap2_shape = Shape { r: 2, ..shape };
                config.compare_shapes = vec![shape];
            }
            (Some(p), None) => {
                config.gap2_shape = Shape {
                    p,
                    n: self.n,
                    family: self.group.into(),
                    f: self.f,
                    r: 2,
                }
            }
            (None, Some(_)) => return Err(CliError::Usage("--r requires --p".into())),
            (None, None) => {}
        }
        if self.heavy {
            config.compare_shapes.push(Shape {
                family: Family::GL,
                n: 2,
                p: 3,
                f: 1,
                r: 3,
            });
        }
        Ok(config)
    }
}

fn kind_name(kind: RingKind) -> &'static str {
    match kind {
        RingKind::Poly => "poly",
        RingKind::Witt => "witt",
    }
}

/// Runs a parsed command line. Warnings (e.g. ignored cache entries) are returned separately.
pub fn execute(cli: &Cli) -> (CliResult<Report>, Vec<String>) {
    let ctx = Context::new(
        Cache::from_env(cli.cache_dir.clone()),
        cli.enum_cap,
        cli.seed,
    );
    let start = Instant::now();
    let result = dispatch(cli, &ctx).map(|mut report| {
        report.parameters.insert("seed".into(), json!(cli.seed));
        if !cli.no_timings {
            report.timings.wall_ms = start.elapsed().as_millis() as u64;
        }
        report
    });
    (result, ctx.take_warnings())
}

fn dispatch(cli: &Cli, ctx: &Context) -> CliResult<Report> {
    match &cli.command {
        Command::Ring {
            command: RingCommand::Selftest { ring, samples },
        } => cmd_selftest(ring, *samples, ctx),
        Command::Order { group, matrix } => cmd_order(group, matrix.as_deref()),
        Command::Exponent {
            group,
            sampled,
            trials,
        } => cmd_exponent(group, *sampled, *trials, ctx),
        Command::Classes { group } => cmd_classes(group, ctx),
        Command::Kuelshammer { group, prime } => cmd_kuelshammer(group, *prime, ctx),
        Command::Compare { shape } => cmd_compare(shape, ctx),
        Command::Verify(args) => cmd_verify(args, ctx),
    }
}

fn cmd_selftest(args: &RingArgs, samples: usize, ctx: &Context) -> CliResult<Report> {
    let ring = args.ring()?;
    let st = ring_selftest(&ring, samples, ctx.seed);
    let mut params = args.json();
    params.insert("samples".into(), json!(samples));
    let mut report = Report::new(&["ring", "selftest"], params);
    report.passed = st.passed();
    report.results = json!({
        "characteristic": st.characteristic,
        "cardinality": st.cardinality,
        "unit_count": st.unit_count,
        "modulus": ring.field().modulus(),
        "lifted_modulus": ring.mhat(),
        "checks": st.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "coverage": c.coverage,
        })).collect::<Vec<_>>(),
    });
    let failures: Vec<Value> = st
        .failures()
        .map(|c| json!({"check": c.name, "witness": c.witness}))
        .collect();
    if !failures.is_empty() {
        report.witness = Value::Array(failures);
    }
    Ok(report)
}

fn cmd_order(args: &GroupArgs, matrix: Option<&str>) -> CliResult<Report> {
    let g = args.group()?;
    let mut params = args.json();
    let mut report;
    match matrix {
        Some(text) => {
            params.insert("matrix".into(), json!(text));
            report = Report::new(&["order"], params);
            let a = parse_matrix(g.ring(), text)?;
            if !g.is_member(&a) {
                return Err(CliError::Usage(format!("matrix is not in {}", g.label())));
            }
            let order = g.element_order(&a)?;
            let det = g.space().det(&a)?;
            report.results = json!({"group": g.label(), "element_order": big(order)});
            report.witness = json!({"matrix": mat_json(g.ring(), &a), "det": g.ring().render(det)});
        }
        None => {
            report = Report::new(&["order"], params);
            let order = g
                .order()
                .ok_or_else(|| CliError::Usage("group order overflows 128 bits".into()))?;
            report.results = json!({
                "group": g.label(),
                "group_order": big(order),
                "residue_order": g.residue_order().map(big),
            });
        }
    }
    Ok(report)
}

fn cmd_exponent(args: &GroupArgs, sampled: bool, trials: u64, ctx: &Context) -> CliResult<Report> {
    let g = args.group()?;
    let strategy = if sampled {
        Strategy::Sampled {
            trials,
            seed: ctx.seed,
        }
    } else {
        Strategy::Exhaustive
    };
    let e = p_exponent(&g, strategy)?;
    let mut params = args.json();
    params.insert(
        "method".into(),
        json!(if sampled { "sampled" } else { "exhaustive" }),
    );
    if sampled {
        params.insert("trials".into(), json!(trials));
    }
    let mut report = Report::new(&["exponent"], params);
    report.results = json!({
        "group": g.label(),
        "value": big(e.value),
        "method": match e.method { Method::Exhaustive => "exhaustive", Method::Sampled => "sampled" },
        "exact": e.method == Method::Exhaustive,
        "upper_bound": big(e.upper_bound),
        "bound_note": e.bound_note,
        "elements_examined": big(e.elements_examined),
    });
    report.witness =
        json!({"index": big(e.witness_index), "matrix": mat_json(g.ring(), &e.witness)});
    Ok(report)
}

fn cmd_classes(args: &GroupArgs, ctx: &Context) -> CliResult<Report> {
    let g = args.group()?;
    let (table, part) = ctx.classes(&g)?;
    let mut histogram = std::collections::BTreeMap::<u64, u64>::new();
    for &s in &part.sizes {
        *histogram.entry(s).or_default() += 1;
    }
    let mut report = Report::new(&["classes"], args.json());
    report.results = json!({
        "group": g.label(),
        "order": table.size(),
        "num_classes": part.num_classes(),
        "class_sizes": histogram.iter().map(|(s, c)| json!({"size": s, "count": c})).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn cmd_kuelshammer(args: &GroupArgs, prime: Option<u64>, ctx: &Context) -> CliResult<Report> {
    let g = args.group()?;
    let p = prime.unwrap_or(g.ring().p());
    let (table, part) = ctx.classes(&g)?;
    let profile = kuelshammer_profile(&table, &part, p)?;
    // confirm the map used for the profile is representative independent at every level
    let mut e: u128 = 1;
    for _ in 0..profile.stab_index {
        e *= p as u128;
        class_power_map(&table, &part, e)?;
    }
    let mut params = args.json();
    params.insert("prime".into(), json!(p));
    let mut report = Report::new(&["kuelshammer"], params);
    report.results = json!({
        "group": g.label(),
        "order": table.size(),
        "num_classes": part.num_classes(),
        "kuelshammer_dims": profile.dims,
        "stab_index": profile.stab_index,
        "reynolds_dim": profile.reynolds_dim,
        "p_regular_classes": profile.p_regular_classes,
        "p_exponent": big(profile.p_exponent()),
    });
    report.passed = profile.reynolds_dim == profile.p_regular_classes;
    Ok(report)
}

fn summary_json(s: &kkg_core::compare::GroupSummary) -> Value {
    json!({
        "group": s.group.label(),
        "order": big(s.order),
        "num_classes": s.num_classes,
        "p_exponent": {
            "value": big(s.p_exponent()),
            "sylow_value": big(s.sylow.value),
            "method": match s.sylow.method { Method::Exhaustive => "exhaustive", Method::Sampled => "sampled" },
            "profile_value": big(s.profile_exponent),
        },
        "kuelshammer_dims": s.profile.dims,
        "stab_index": s.profile.stab_index,
        "reynolds_dim": s.profile.reynolds_dim,
    })
}

fn cmd_compare(args: &ShapeArgs, ctx: &Context) -> CliResult<Report> {
    let shape = args.shape();
    let rep = verify::compare_pair(shape, ctx)?;
    let mut params = Map::new();
    params.insert("group".into(), json!(shape.family.to_string()));
    params.insert("n".into(), json!(shape.n));
    params.insert("p".into(), json!(shape.p));
    params.insert("f".into(), json!(shape.f));
    params.insert("r".into(), json!(shape.r));
    let mut report = Report::new(&["compare"], params);
    report.results = json!({
        "a": summary_json(&rep.a),
        "b": summary_json(&rep.b),
        "regime": {
            "in_regime": rep.regime.is_some(),
            "condition": rep.regime,
            "checked": exponent_gap_regime(shape.n, shape.p, shape.r).is_some(),
        },
        "verdict": rep.verdict.as_str(),
        "reason": rep.reason,
    });
    report.witness = json!({
        "a_sylow_witness": mat_json(rep.a.group.ring(), &rep.a.sylow.witness),
        "b_sylow_witness": mat_json(rep.b.group.ring(), &rep.b.sylow.witness),
    });
    Ok(report)
}

fn cmd_verify(args: &VerifyArgs, ctx: &Context) -> CliResult<Report> {
    let config = args.config()?;
    let records = verify::run(args.target, &config, ctx);
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let mut params = Map::new();
    params.insert("target".into(), json!(args.target.name()));
    params.insert("pmax".into(), json!(args.pmax));
    params.insert("ring_max".into(), json!(args.ring_max));
    params.insert("samples".into(), json!(args.samples));
    let mut report = Report::new(&["verify", args.target.name()], params);
    report.passed = count(Status::Fail) == 0;
    let failures: Vec<Value> = records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| json!({"check": r.check, "name": r.name, "witness": r.witness}))
        .collect();
    if !failures.is_empty() {
        report.witness = Value::Array(failures);
    }
    report.results = json!({
        "passed": count(Status::Pass),
        "failed": count(Status::Fail),
        "skipped": count(Status::Skipped),
        "checks": records,
    });
    Ok(report)
}
