//! Named checks reproducing every concrete statement the toolkit is built around.
//!
//! Each check yields one or more [`CheckRecord`]s with a status, its parameters, the
//! operations it exercises and, on failure, a witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use kkg_core::arith::{ceil_log, is_prime};
use kkg_core::classes::kuelshammer_profile;
use kkg_core::compare::{compare_summaries, summarize, CompareOptions, Verdict};
use kkg_core::group::exponent_gap_regime;
use kkg_core::lemmas::{b_matrix, chu_sum, unitriangular_power};
use kkg_core::oracle::{
    check_power_additivity, commutator_space, oracle_profile, AlgebraTable, ORACLE_CAP,
};
use kkg_core::selftest::ring_selftest;
use kkg_core::sylow::{exponent_upper_bound, Method};
use kkg_core::{
    p_exponent, Family, GroupDesc, Mat, MatSpace, RElem, RingDesc, RingKind, Strategy, SylowStream,
};

use crate::context::{CliError, CliResult, Context};
use crate::literal::parse_matrix;
use crate::report::big;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not run because an input exceeded a configured cap.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub name: String,
    pub status: Status,
    pub params: Value,
    pub detail: String,
    /// Operations exercised by this record.
    pub covers: Vec<&'static str>,
    pub witness: Value,
}

impl CheckRecord {
    fn new(check: &'static str, name: impl Into<String>, covers: &[&'static str]) -> Self {
        CheckRecord {
            check,
            name: name.into(),
            status: Status::Pass,
            params: Value::Null,
            detail: String::new(),
            covers: covers.to_vec(),
            witness: Value::Null,
        }
    }

    fn verdict(mut self, ok: bool, detail: impl Into<String>) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self.detail = detail.into();
        self
    }

    fn params(mut self, params: Value) -> Self {
        self.params = params;
        self
    }

    fn witness(mut self, witness: Value) -> Self {
        self.witness = witness;
        self
    }

    /// Records a cap overrun as a skip and any other error as a failure.
    fn errored(self, e: CliError) -> Self {
        let skipped = matches!(e, CliError::Compute(kkg_core::Error::CapExceeded { .. }));
        let mut r = self.verdict(false, e.to_string());
        if skipped {
            r.status = Status::Skipped;
        }
        r
    }
}

/// The checks `verify` accepts; `All` runs every other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Ring,
    RemarkOrder25,
    PropGap2,
    PropPexp,
    LemmaChu,
    LemmaPower,
    LemmaBvanish,
    LemmaExpBound,
    PropKuelshammer,
    Compare,
    Oracle,
    All,
}

impl Target {
    pub const EACH: [Target; 11] = [
        Target::Ring,
        Target::RemarkOrder25,
        Target::PropGap2,
        Target::PropPexp,
        Target::LemmaChu,
        Target::LemmaPower,
        Target::LemmaBvanish,
        Target::LemmaExpBound,
        Target::PropKuelshammer,
        Target::Compare,
        Target::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Ring => "ring",
            Target::RemarkOrder25 => "remark-order25",
            Target::PropGap2 => "prop-gap2",
            Target::PropPexp => "prop-pexp",
            Target::LemmaChu => "lemma-chu",
            Target::LemmaPower => "lemma-power",
            Target::LemmaBvanish => "lemma-bvanish",
            Target::LemmaExpBound => "lemma-exp-bound",
            Target::PropKuelshammer => "prop-kuelshammer",
            Target::Compare => "compare",
            Target::Oracle => "oracle",
            Target::All => "all",
        }
    }
}

/// A parameter set `(family, n, p, f, r)` shared by both ring kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub family: Family,
    pub n: usize,
    pub p: u64,
    pub f: u32,
    pub r: u32,
}

impl Shape {
    pub fn group(&self, kind: RingKind) -> CliResult<GroupDesc> {
        Ok(GroupDesc::new(
            self.family,
            self.n,
            RingDesc::new(kind, self.p, self.f, self.r)?,
        )?)
    }

    fn json(&self) -> Value {
        json!({"family": self.family.to_string(), "n": self.n, "p": self.p, "f": self.f, "r": self.r})
    }
}

/// Small groups for the group-algebra oracle, each with its coefficient prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGroup {
    pub name: &'static str,
    pub shape: Shape,
    pub kind: RingKind,
    pub prime: u64,
}

const fn oracle_group(
    name: &'static str,
    family: Family,
    n: usize,
    kind: RingKind,
    p: u64,
    r: u32,
    prime: u64,
) -> OracleGroup {
    OracleGroup {
        name,
        shape: Shape {
            family,
            n,
            p,
            f: 1,
            r,
        },
        kind,
        prime,
    }
}

pub const ORACLE_GROUPS: [OracleGroup; 7] = [
    // GL_1(F_5) is cyclic of order 4
    oracle_group("C4", Family::GL, 1, RingKind::Poly, 5, 1, 2),
    // SL_2(F_2) is the symmetric group on three letters
    oracle_group("S3", Family::SL, 2, RingKind::Poly, 2, 1, 3),
    oracle_group("S3P2", Family::SL, 2, RingKind::Poly, 2, 1, 2),
    oracle_group("SL2Z4", Family::SL, 2, RingKind::Witt, 2, 2, 2),
    oracle_group("SL2F2T2", Family::SL, 2, RingKind::Poly, 2, 2, 2),
    oracle_group("SL2F3", Family::SL, 2, RingKind::Poly, 3, 1, 3),
    oracle_group("GL2F3", Family::GL, 2, RingKind::Poly, 3, 1, 2),
];

pub const DEFAULT_ORACLE_GROUPS: [&str; 4] = ["C4", "S3", "SL2Z4", "SL2F2T2"];

pub fn oracle_group_by_name(name: &str) -> Option<OracleGroup> {
    ORACLE_GROUPS
        .iter()
        .copied()
        .find(|g| g.name.eq_ignore_ascii_case(name))
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest prime for the binomial-sum check.
    pub pmax: u64,
    /// Largest ring for the ring self-tests.
    pub ring_max: u64,
    /// Random instances per ring for the power-formula checks.
    pub samples: usize,
    /// Instances for the exact `p`-exponent checks.
    pub pexp_shapes: Vec<Shape>,
    /// Instance for the length-two gap check.
    pub gap2_shape: Shape,
    /// Groups for the class-profile exponent check, as `(shape, kind)`.
    pub kuelshammer_groups: Vec<(Shape, RingKind)>,
    /// Pairs compared by `compare`, as shapes over both ring kinds.
    pub compare_shapes: Vec<Shape>,
    pub oracle_groups: Vec<OracleGroup>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let shape = |family, n, p, r| Shape {
            family,
            n,
            p,
            f: 1,
            r,
        };
        VerifyConfig {
            pmax: 23,
            ring_max: 10_000,
            samples: 100,
            pexp_shapes: vec![shape(Family::GL, 2, 3, 3), shape(Family::SL, 2, 2, 4)],
            gap2_shape: shape(Family::GL, 2, 5, 2),
            kuelshammer_groups: vec![
                (shape(Family::SL, 2, 2, 2), RingKind::Witt),
                (shape(Family::SL, 2, 2, 2), RingKind::Poly),
                (shape(Family::GL, 2, 3, 2), RingKind::Witt),
                (shape(Family::GL, 2, 3, 2), RingKind::Poly),
                (shape(Family::SL, 2, 2, 4), RingKind::Witt),
                (shape(Family::SL, 2, 2, 4), RingKind::Poly),
            ],
            compare_shapes: vec![shape(Family::SL, 2, 2, 4), shape(Family::GL, 1, 5, 2)],
            oracle_groups: DEFAULT_ORACLE_GROUPS
                .iter()
                .map(|n| oracle_group_by_name(n).expect("registered"))
                .collect(),
        }
    }
}

pub fn run(target: Target, config: &VerifyConfig, ctx: &Context) -> Vec<CheckRecord> {
    match target {
        Target::All => Target::EACH
            .iter()
            .flat_map(|&t| run(t, config, ctx))
            .collect(),
        Target::Ring => verify_rings(config, ctx),
        Target::RemarkOrder25 => vec![verify_remark_order()],
        Target::PropGap2 => vec![verify_gap2(config.gap2_shape)],
        Target::PropPexp => config.pexp_shapes.iter().map(|&s| verify_pexp(s)).collect(),
        Target::LemmaChu => verify_chu(config.pmax),
        Target::LemmaPower => verify_power_formula(config, ctx),
        Target::LemmaBvanish => verify_b_vanishing(config, ctx),
        Target::LemmaExpBound => verify_exponent_bound(),
        Target::PropKuelshammer => config
            .kuelshammer_groups
            .iter()
            .map(|&(s, k)| verify_profile_exponent(s, k, ctx))
            .collect(),
        Target::Compare => config
            .compare_shapes
            .iter()
            .map(|&s| verify_compare(s, ctx))
            .collect(),
        Target::Oracle => config
            .oracle_groups
            .iter()
            .map(|&g| verify_oracle(g, ctx))
            .collect(),
    }
}

pub fn mat_json(ring: &RingDesc, m: &Mat) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|&e| Value::String(ring.render(e))).collect()))
            .collect(),
    )
}

fn kind_name(kind: RingKind) -> &'static str {
    match kind {
        RingKind::Poly => "poly",
        RingKind::Witt => "witt",
    }
}

/// Every `(kind, p, f, r)` with `p^{rf} <= max`.
pub fn small_rings(max: u64) -> Vec<(RingKind, u64, u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=max).filter(|&p| is_prime(p)) {
        for f in 1.. {
            if p.checked_pow(f).is_none_or(|q| q > max) {
                break;
            }
            for r in 1.. {
                if p.checked_pow(f * r).is_none_or(|s| s > max) {
                    break;
                }
                for kind in [RingKind::Poly, RingKind::Witt] {
                    out.push((kind, p, f, r));
                }
            }
        }
    }
    out
}

fn verify_rings(config: &VerifyConfig, ctx: &Context) -> Vec<CheckRecord> {
    const COVERS: &[&str] = &[
        "ring_make",
        "uniformizer",
        "is_unit",
        "valuation",
        "reduce",
        "teichmuller",
        "witt_digits",
        "ring_selftest",
    ];
    small_rings(config.ring_max)
        .into_iter()
        .map(|(kind, p, f, r)| {
            let rec = CheckRecord::new(
                "ring",
                format!("{} p={p} f={f} r={r}", kind_name(kind)),
                COVERS,
            )
            .params(json!({"kind": kind_name(kind), "p": p, "f": f, "r": r}));
            let ring = match RingDesc::new(kind, p, f, r) {
                Ok(ring) => ring,
                Err(e) => return rec.errored(e.into()),
            };
            let report = ring_selftest(&ring, 64, ctx.seed);
            let expected_char = match kind {
                RingKind::Poly => p,
                RingKind::Witt => p.pow(r),
            };
            let failures: Vec<Value> = report
                .failures()
                .map(|c| json!({"check": c.name, "witness": c.witness}))
                .collect();
            let ok = report.passed() && report.characteristic == expected_char;
            rec.verdict(
                ok,
                format!(
                    "characteristic {}, {} elements, {} checks, {} failed",
                    report.characteristic,
                    report.cardinality,
                    report.checks.len(),
                    failures.len()
                ),
            )
            .witness(if failures.is_empty() {
                Value::Null
            } else {
                Value::Array(failures)
            })
        })
        .collect()
}

pub const REMARK_MATRIX: &str = "1,1,0;t,1,1;t,0,1";

fn verify_remark_order() -> CheckRecord {
    let rec = CheckRecord::new(
        "remark-order25",
        "GL_3(F_5[t]/t^2) element of order 25",
        &["is_member", "element_order"],
    )
    .params(json!({"matrix": REMARK_MATRIX, "group": "GL_3(F_5[t]/t^2)"}));
    let run = || -> CliResult<(u128, Option<u128>, RElem, RingDesc)> {
        let g = Shape {
            family: Family::GL,
            n: 3,
            p: 5,
            f: 1,
            r: 2,
        }
        .group(RingKind::Poly)?;
        let a = parse_matrix(g.ring(), REMARK_MATRIX)?;
        let det = g.space().det(&a)?;
        Ok((
            g.element_order(&a)?,
            g.p_element_order(&a),
            det,
            g.ring().clone(),
        ))
    };
    match run() {
        Ok((order, p_order, det, ring)) => rec
            .verdict(
                order == 25 && p_order == Some(25) && ring.is_unit(det),
                format!("order {order}, det {}", ring.render(det)),
            )
            .witness(json!({"order": big(order), "det": ring.render(det)})),
        Err(e) => rec.errored(e),
    }
}

fn exact_exponent(g: &GroupDesc) -> CliResult<kkg_core::ExponentResult> {
    Ok(p_exponent(g, Strategy::Exhaustive)?)
}

fn verify_gap2(shape: Shape) -> CheckRecord {
    let covers = &["p_exponent", "sylow_p_elements"];
    let rec = CheckRecord::new(
        "prop-gap2",
        format!("{} n={} p={} r=2", shape.family, shape.n, shape.p),
        covers,
    )
    .params(shape.json());
    let shape = Shape { r: 2, ..shape };
    let run = || -> CliResult<CheckRecord> {
        let (w, pl) = (shape.group(RingKind::Witt)?, shape.group(RingKind::Poly)?);
        let (ew, ep) = (exact_exponent(&w)?, exact_exponent(&pl)?);
        let q = shape.p as u128;
        let in_regime = shape.n >= 2 && shape.p >= 2 * shape.n as u64;
        let ok = !in_regime || (ew.value == q * q && ep.value == q);
        Ok(rec
            .clone()
            .verdict(
                ok,
                format!(
                    "{}: {}, {}: {}{}",
                    w.label(),
                    ew.value,
                    pl.label(),
                    ep.value,
                    if in_regime {
                        ""
                    } else {
                        " (outside p >= 2n; not asserted)"
                    }
                ),
            )
            .witness(json!({
                "witt_exponent": big(ew.value),
                "poly_exponent": big(ep.value),
                "witt_witness": mat_json(w.ring(), &ew.witness),
                "poly_witness": mat_json(pl.ring(), &ep.witness),
            })))
    };
    run().unwrap_or_else(|e| rec.errored(e))
}

fn verify_pexp(shape: Shape) -> CheckRecord {
    let covers = &["p_exponent", "sylow_p_elements"];
    let rec = CheckRecord::new(
        "prop-pexp",
        format!(
            "{} n={} p={} f={} r={}",
            shape.family, shape.n, shape.p, shape.f, shape.r
        ),
        covers,
    )
    .params(shape.json());
    let run = || -> CliResult<CheckRecord> {
        let (w, pl) = (shape.group(RingKind::Witt)?, shape.group(RingKind::Poly)?);
        let (ew, ep) = (exact_exponent(&w)?, exact_exponent(&pl)?);
        let p = shape.p as u128;
        let pr = p.pow(shape.r);
        let poly_bound = p.pow(ceil_log(shape.p, shape.r as u64) + 1);
        let mut problems = Vec::new();
        if shape.n >= 2 && shape.p >= shape.n as u64 && ew.value != pr {
            problems.push(format!("Witt exponent {} != p^r = {pr}", ew.value));
        }
        if shape.p >= shape.n as u64 && ep.value > poly_bound {
            problems.push(format!("Poly exponent {} exceeds {poly_bound}", ep.value));
        }
        if exponent_gap_regime(shape.n, shape.p, shape.r).is_some() && ep.value >= ew.value {
            problems.push("no strict gap inside the regime".into());
        }
        let detail = format!(
            "{}: {} (p^r = {pr}); {}: {} (bound {poly_bound})",
            w.label(),
            ew.value,
            pl.label(),
            ep.value
        );
        Ok(rec
            .clone()
            .verdict(
                problems.is_empty(),
                if problems.is_empty() {
                    detail
                } else {
                    problems.join("; ")
                },
            )
            .witness(json!({
                "witt_exponent": big(ew.value),
                "poly_exponent": big(ep.value),
                "poly_bound": big(poly_bound),
                "witt_witness": mat_json(w.ring(), &ew.witness),
            })))
    };
    run().unwrap_or_else(|e| rec.errored(e))
}

fn verify_chu(pmax: u64) -> Vec<CheckRecord> {
    (5..=pmax)
        .filter(|&p| is_prime(p))
        .map(|p| {
            let rec = CheckRecord::new("lemma-chu", format!("p={p}"), &["chu_sum"])
                .params(json!({"p": p}));
            // p >= 2n for every n <= p/2, so k, l range over 0..p/2
            let bound = p / 2;
            let mut first_bad = None;
            'outer: for k in 0..bound {
                for l in 0..bound {
                    match chu_sum(p, k, l) {
                        Ok(0) => {}
                        other => {
                            first_bad = Some((k, l, format!("{other:?}")));
                            break 'outer;
                        }
                    }
                }
            }
            match first_bad {
                None => rec.verdict(
                    true,
                    format!("all {} sums with k, l < {bound} vanish", bound * bound),
                ),
                Some((k, l, v)) => rec
                    .verdict(false, format!("sum for k={k}, l={l} is {v}"))
                    .witness(json!({"k": k, "l": l})),
            }
        })
        .collect()
}

/// Seeded random upper unitriangular `A` and arbitrary `X` over a ring of length 2.
fn random_instances(ring: &RingDesc, n: usize, count: usize, seed: u64) -> Vec<(Mat, Mat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = MatSpace::new(ring, n);
    (0..count)
        .map(|_| {
            let mut a = space.identity();
            for i in 0..n {
                for j in i + 1..n {
                    a.set(i, j, RElem(rng.gen_range(0..ring.size())));
                }
            }
            let x = Mat::from_entries(
                n,
                (0..n * n)
                    .map(|_| RElem(rng.gen_range(0..ring.size())))
                    .collect(),
            )
            .expect("n >= 1");
            (a, x)
        })
        .collect()
}

fn power_rings() -> Vec<RingDesc> {
    [RingKind::Poly, RingKind::Witt]
        .into_iter()
        .map(|k| RingDesc::new(k, 5, 1, 2).expect("valid ring"))
        .collect()
}

fn ring_label(ring: &RingDesc) -> String {
    GroupDesc::new(Family::GL, 1, ring.clone())
        .map(|g| {
            g.label()
                .trim_start_matches("GL_1(")
                .trim_end_matches(')')
                .to_string()
        })
        .unwrap_or_default()
}

fn verify_power_formula(config: &VerifyConfig, ctx: &Context) -> Vec<CheckRecord> {
    power_rings()
        .into_iter()
        .map(|ring| {
            let label = ring_label(&ring);
            let rec = CheckRecord::new(
                "lemma-power",
                format!("n=2 over {label}"),
                &["unitriangular_power"],
            )
            .params(json!({"ring": label, "n": 2, "instances": config.samples, "seed": ctx.seed}));
            let space = MatSpace::new(&ring, 2);
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
            let pi = ring.uniformizer();
            for (idx, (a, x)) in random_instances(&ring, 2, config.samples, ctx.seed)
                .iter()
                .enumerate()
            {
                let m = if idx % 4 == 0 {
                    ring.p()
                } else {
                    rng.gen_range(0..=3 * ring.p())
                };
                let g = space
                    .mul(
                        a,
                        &space
                            .add(&space.identity(), &space.scale(pi, x))
                            .expect("same size"),
                    )
                    .expect("same size");
                let direct = space.pow(&g, m as u128).expect("same size");
                match unitriangular_power(&space, a, x, m) {
                    Ok(closed) if closed == direct => {}
                    other => {
                        return rec
                            .verdict(
                                false,
                                format!("instance {idx}, m = {m}: closed form disagrees"),
                            )
                            .witness(json!({
                                "a": mat_json(&ring, a),
                                "x": mat_json(&ring, x),
                                "m": m,
                                "direct": mat_json(&ring, &direct),
                                "closed": other.map(|c| mat_json(&ring, &c)).unwrap_or(Value::Null),
                            }))
                    }
                }
            }
            rec.verdict(
                true,
                format!("{} instances agree with direct powering", config.samples),
            )
        })
        .collect()
}

fn verify_b_vanishing(config: &VerifyConfig, ctx: &Context) -> Vec<CheckRecord> {
    power_rings()
        .into_iter()
        .map(|ring| {
            let label = ring_label(&ring);
            let rec = CheckRecord::new("lemma-bvanish", format!("n=2 over {label}"), &["b_matrix"])
                .params(
                    json!({"ring": label, "n": 2, "instances": config.samples, "seed": ctx.seed}),
                );
            let space = MatSpace::new(&ring, 2);
            for (idx, (a, x)) in random_instances(&ring, 2, config.samples, ctx.seed)
                .iter()
                .enumerate()
            {
                match b_matrix(&space, a, x, ring.p()) {
                    Ok(b) if space.residue(&b).iter().all(|c| c.0 == 0) => {}
                    other => {
                        return rec
                            .verdict(false, format!("instance {idx}: B is not 0 mod pi"))
                            .witness(json!({
                                "a": mat_json(&ring, a),
                                "x": mat_json(&ring, x),
                                "b": other.map(|b| mat_json(&ring, &b)).unwrap_or(Value::Null),
                            }))
                    }
                }
            }
            rec.verdict(
                true,
                format!("B = 0 mod pi on {} instances", config.samples),
            )
        })
        .chain([b_outside_regime(config, ctx)])
        .collect()
}

/// With `p < 2n` the vanishing can fail; a random search for a witness shows the
/// hypothesis `p >= 2n` is needed (for `n = 3, p = 5` the relevant binomial sum is 6).
fn b_outside_regime(config: &VerifyConfig, ctx: &Context) -> CheckRecord {
    let (n, p) = (3usize, 5u64);
    let rec = CheckRecord::new(
        "lemma-bvanish",
        format!("n={n} over F_{p}[t]/t^2 (p < 2n)"),
        &["b_matrix"],
    );
    let ring = match RingDesc::new(RingKind::Poly, p, 1, 2) {
        Ok(ring) => ring,
        Err(e) => return rec.errored(e.into()),
    };
    let label = ring_label(&ring);
    let rec = rec.params(
        json!({"ring": label, "n": n, "instances": config.samples, "seed": ctx.seed, "expect": "nonzero witness"}),
    );
    let space = MatSpace::new(&ring, n);
    for (idx, (a, x)) in random_instances(&ring, n, config.samples, ctx.seed)
        .iter()
        .enumerate()
    {
        match b_matrix(&space, a, x, p) {
            Ok(b) if space.residue(&b).iter().any(|c| c.0 != 0) => {
                return rec
                    .verdict(true, format!("instance {idx}: B is nonzero mod pi"))
                    .witness(json!({
                        "a": mat_json(&ring, a),
                        "x": mat_json(&ring, x),
                        "b": mat_json(&ring, &b),
                    }));
            }
            Ok(_) => {}
            Err(e) => return rec.errored(e.into()),
        }
    }
    rec.verdict(
        false,
        format!("no instance with B nonzero mod pi among {}", config.samples),
    )
}

fn verify_exponent_bound() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for r in [2u32, 3] {
            for kind in [RingKind::Poly, RingKind::Witt] {
                let shape = Shape {
                    family: Family::GL,
                    n: 2,
                    p,
                    f: 1,
                    r,
                };
                let rec = CheckRecord::new(
                    "lemma-exp-bound",
                    format!("GL_2 {} p={p} r={r}", kind_name(kind)),
                    &["p_exponent", "sylow_p_elements"],
                )
                .params(json!({"kind": kind_name(kind), "p": p, "r": r, "n": 2}));
                let run = || -> CliResult<CheckRecord> {
                    let g = shape.group(kind)?;
                    let lower = g.truncate(r - 1)?;
                    let (e, e_lower) = (exact_exponent(&g)?, exact_exponent(&lower)?);
                    let (bound, _) = exponent_upper_bound(&g);
                    let ok = e.value <= p as u128 * e_lower.value && e.value <= bound;
                    Ok(rec
                        .clone()
                        .verdict(
                            ok,
                            format!(
                                "exp_p {} = {} <= p * exp_p {} = {}",
                                g.label(),
                                e.value,
                                lower.label(),
                                p as u128 * e_lower.value
                            ),
                        )
                        .witness(
                            json!({"exponent": big(e.value), "lower_exponent": big(e_lower.value)}),
                        ))
                };
                out.push(run().unwrap_or_else(|e| rec.errored(e)));
            }
        }
    }
    out
}

fn verify_profile_exponent(shape: Shape, kind: RingKind, ctx: &Context) -> CheckRecord {
    let covers = &[
        "conjugacy_classes",
        "class_power_map",
        "kuelshammer_profile",
        "p_exponent_from_profile",
        "p_exponent",
    ];
    let rec = CheckRecord::new("prop-kuelshammer", String::new(), covers).params(json!({
        "group": shape.json(),
        "kind": kind_name(kind),
    }));
    let run = || -> CliResult<CheckRecord> {
        let g = shape.group(kind)?;
        let mut rec = rec.clone();
        rec.name = g.label();
        if SylowStream::new(&g)?.len() > kkg_core::sylow::SYLOW_CAP {
            rec.status = Status::Skipped;
            rec.detail = "Sylow subgroup exceeds the exhaustive cap".into();
            return Ok(rec);
        }
        let (table, part) = ctx.classes(&g)?;
        let profile = kuelshammer_profile(&table, &part, shape.p)?;
        let sylow = exact_exponent(&g)?;
        let mut problems = Vec::new();
        if profile.p_exponent() != sylow.value {
            problems.push(format!(
                "p^stab = {} but Sylow exponent {}",
                profile.p_exponent(),
                sylow.value
            ));
        }
        if profile.dims.windows(2).any(|w| w[1] > w[0]) {
            problems.push("dimensions increase".into());
        }
        if profile.dims[0] != part.num_classes() {
            problems.push("dims[0] differs from the class number".into());
        }
        if profile.reynolds_dim != profile.p_regular_classes {
            problems.push("Reynolds dimension differs from the p-regular class count".into());
        }
        let detail = format!(
            "dims {:?}, p^{} = {} = Sylow exponent {}",
            profile.dims,
            profile.stab_index,
            profile.p_exponent(),
            sylow.value
        );
        Ok(rec
            .verdict(problems.is_empty(), if problems.is_empty() { detail } else { problems.join("; ") })
            .witness(json!({"dims": profile.dims, "stab_index": profile.stab_index, "sylow_exponent": big(sylow.value)})))
    };
    run().unwrap_or_else(|e| rec.errored(e))
}

fn verify_compare(shape: Shape, ctx: &Context) -> CheckRecord {
    let rec = CheckRecord::new(
        "compare",
        format!(
            "{} n={} p={} f={} r={}",
            shape.family, shape.n, shape.p, shape.f, shape.r
        ),
        &[
            "compare_groups",
            "conjugacy_classes",
            "kuelshammer_profile",
            "p_exponent_from_profile",
        ],
    )
    .params(shape.json());
    let run = || -> CliResult<CheckRecord> {
        let report = compare_pair(shape, ctx)?;
        // the regime is where the exponents are known to differ; elsewhere nothing is asserted
        let ok = report.regime.is_none() || report.verdict == Verdict::Distinguished;
        Ok(rec
            .clone()
            .verdict(
                ok,
                format!(
                    "{} vs {}: {} ({}); regime {}",
                    report.a.group.label(),
                    report.b.group.label(),
                    report.verdict.as_str(),
                    report.reason,
                    report.regime.unwrap_or("none")
                ),
            )
            .witness(json!({
                "verdict": report.verdict.as_str(),
                "a_exponent": big(report.a.p_exponent()),
                "b_exponent": big(report.b.p_exponent()),
                "a_dims": report.a.profile.dims,
                "b_dims": report.b.profile.dims,
            })))
    };
    run().unwrap_or_else(|e| rec.errored(e))
}

/// Witt kind against polynomial kind for one shape, using the class cache.
pub fn compare_pair(shape: Shape, ctx: &Context) -> CliResult<kkg_core::ComparisonReport> {
    let options = CompareOptions {
        enum_cap: ctx.enum_cap,
        seed: ctx.seed,
        ..CompareOptions::default()
    };
    let summary = |kind| -> CliResult<_> {
        let g = shape.group(kind)?;
        let (table, part) = ctx.classes(&g)?;
        Ok(summarize(&table, &part, &options)?)
    };
    let (a, b) = (summary(RingKind::Witt)?, summary(RingKind::Poly)?);
    if a.sylow.method == Method::Sampled || b.sylow.method == Method::Sampled {
        ctx.warn("a Sylow scan was sampled; exact exponents come from the class profiles");
    }
    Ok(compare_summaries(a, b)?)
}

fn verify_oracle(group: OracleGroup, ctx: &Context) -> CheckRecord {
    let covers = &[
        "algebra_table",
        "commutator_space",
        "kuelshammer_space",
        "perp",
        "oracle_profile",
        "kuelshammer_profile",
        "conjugacy_classes",
    ];
    let rec = CheckRecord::new("oracle", group.name, covers).params(json!({
        "group": group.shape.json(),
        "kind": kind_name(group.kind),
        "prime": group.prime,
    }));
    let run = || -> CliResult<CheckRecord> {
        let g = group.shape.group(group.kind)?;
        let (table, part) = ctx.classes(&g)?;
        let alg = AlgebraTable::from_group(&table, group.prime, ORACLE_CAP)?;
        let mut problems = Vec::new();
        if let Some(t) = alg.check_associativity(100_000, ctx.seed) {
            problems.push(format!("multiplication is not associative at {t:?}"));
        }
        let comm = commutator_space(&alg);
        if let Some(i) = check_power_additivity(&alg, &comm, 100, ctx.seed) {
            problems.push(format!("p-th power not additive modulo [A,A] on pair {i}"));
        }
        let profile = kuelshammer_profile(&table, &part, group.prime)?;
        let outcome = oracle_profile(&alg, part.num_classes(), &profile)?;
        if let Some(n) = outcome.first_mismatch {
            problems.push(format!(
                "dimensions differ at n = {n}: linear algebra {:?}, class count {:?}",
                outcome.dims, outcome.expected
            ));
        }
        problems.extend(outcome.failures.iter().cloned());
        Ok(rec
            .clone()
            .verdict(
                problems.is_empty(),
                if problems.is_empty() {
                    format!(
                        "{} (|G| = {}, p = {}): dims {:?} on both paths",
                        g.label(),
                        alg.dim(),
                        group.prime,
                        outcome.dims
                    )
                } else {
                    problems.join("; ")
                },
            )
            .witness(json!({
                "oracle_dims": outcome.dims,
                "class_dims": outcome.expected,
                "commutator_dim": outcome.commutator_dim,
            })))
    };
    run().unwrap_or_else(|e| rec.errored(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_list() {
        let rings = small_rings(16);
        assert!(rings.contains(&(RingKind::Witt, 2, 2, 2)));
        assert!(rings.contains(&(RingKind::Poly, 13, 1, 1)));
        assert!(!rings.contains(&(RingKind::Poly, 17, 1, 1)));
        assert!(!rings.contains(&(RingKind::Poly, 3, 1, 3)));
        assert!(rings.contains(&(RingKind::Poly, 2, 1, 4)));
    }

    #[test]
    fn oracle_registry() {
        for name in DEFAULT_ORACLE_GROUPS {
            assert!(oracle_group_by_name(name).is_some());
        }
        assert_eq!(oracle_group_by_name("s3").unwrap().prime, 3);
        assert!(oracle_group_by_name("nope").is_none());
    }
}
