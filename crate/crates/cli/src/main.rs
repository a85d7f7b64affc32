//! `arbormid`: analyze tree middle parts, evaluate path-star closed forms,
//! sweep extremal bounds over all free trees of small order, verify the
//! library's invariant suites, apply perturbations, and search for
//! centroid-betweenness violations.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 property-violation
//! findings (a failed verify suite, an exceeded bound, or a betweenness
//! violation), so CI can gate on the distinction.

mod verify;

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arbormid::{
    centroid_between, count_all_vertices, double_broom, find_betweenness_violations,
    parse_edge_list, relocate_leaf, relocate_path, subtree_core, survey,
    verify_intermediate_identities, verify_leaf_identity, verify_path_identity, write_edge_list,
    LeafMove, Metric, PathMove, PathStarParams, Tree,
};

#[derive(Parser)]
#[command(name = "arbormid", version, about = "Exact middle-part analysis of trees")]
struct Cli {
    /// Worker threads for exhaustive sweeps (or env ARBORMID_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the middle parts and their pairwise distances for one tree
    Analyze(AnalyzeArgs),
    /// Evaluate path-star closed forms against direct computation
    Pathstar(PathstarArgs),
    /// Maximize a middle-part distance over all free trees per order
    Sweep(SweepArgs),
    /// Run the library's invariant suites
    Verify(VerifyArgs),
    /// Apply a leaf or path relocation and check its counting identities
    Perturb(PerturbArgs),
    /// Search for trees where the centroid leaves every center-to-core path
    Violations(ViolationsArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file: first line n, then n-1 lines "u v"
    #[arg(long = "in", value_name = "FILE")]
    input: String,
    /// Include the per-vertex subtree counts
    #[arg(long)]
    counts: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct PathstarArgs {
    #[arg(long)]
    n: usize,
    /// Pendant count; omit to cover the whole family at this order
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long = "n-min")]
    n_min: usize,
    #[arg(long = "n-max")]
    n_max: usize,
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every suite
    #[arg(long, required = true)]
    all: bool,
    /// Exhaustive cap for the per-order sweeps
    #[arg(long = "n-max", default_value_t = 12)]
    n_max: usize,
    /// Seed for the randomized suites
    #[arg(long, default_value_t = 0xA11B0)]
    seed: u64,
}

#[derive(Args)]
struct PerturbArgs {
    /// Edge-list file of the source tree
    #[arg(long = "in", value_name = "FILE")]
    input: String,
    /// Move spec: "leaf y w" or "path y y1 .. ym z"
    #[arg(long = "move", value_name = "SPEC")]
    move_spec: String,
    #[arg(long)]
    json: bool,
    /// Write the resulting edge list here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct ViolationsArgs {
    /// Check every free tree of this order
    #[arg(long, value_name = "N", conflicts_with = "family")]
    exhaustive: Option<usize>,
    /// Check one double-broom: spine length, attach position, interior and
    /// end pendant counts
    #[arg(long, num_args = 4, value_names = ["SPINE", "ATTACH", "P", "Q"])]
    family: Option<Vec<usize>>,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    /// center to subtree core
    #[value(name = "c-sc")]
    CenterCore,
    /// centroid to subtree core
    #[value(name = "cd-sc")]
    CentroidCore,
    /// center to centroid
    #[value(name = "c-cd")]
    CenterCentroid,
}

impl From<MetricArg> for Metric {
    fn from(value: MetricArg) -> Metric {
        match value {
            MetricArg::CenterCore => Metric::CenterCore,
            MetricArg::CentroidCore => Metric::CentroidCore,
            MetricArg::CenterCentroid => Metric::CenterCentroid,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    configure_workers(cli.jobs);
    match run(cli.command) {
        Ok(Findings::None) => ExitCode::SUCCESS,
        Ok(Findings::Violations) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Whether a command surfaced property-violation findings (exit code 2).
enum Findings {
    None,
    Violations,
}

fn configure_workers(jobs: Option<usize>) {
    let jobs = jobs.or_else(|| {
        std::env::var("ARBORMID_JOBS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(jobs) = jobs.filter(|&j| j > 0) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn run(command: Command) -> anyhow::Result<Findings> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Pathstar(args) => cmd_pathstar(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Perturb(args) => cmd_perturb(args),
        Command::Violations(args) => cmd_violations(args),
    }
}

fn emit(out: &Option<String>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {path}"))?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn read_tree(path: &str) -> anyhow::Result<Tree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    parse_edge_list(&text).map_err(|e| anyhow!("{path}: {e}"))
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    center: Vec<usize>,
    centroid: Vec<usize>,
    subtree_core: Vec<usize>,
    d_center_centroid: usize,
    d_center_core: usize,
    d_centroid_core: usize,
    centroid_between: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<(usize, String)>>,
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<Findings> {
    let tree = read_tree(&args.input)?;
    let center = tree.center();
    let centroid = tree.centroid();
    let core = subtree_core(&tree);
    let dist = |a: &[usize], b: &[usize]| tree.set_distance(a, b).expect("middle sets are valid");
    let report = AnalyzeReport {
        n: tree.n(),
        center: center.vertices().to_vec(),
        centroid: centroid.vertices().to_vec(),
        subtree_core: core.vertices().to_vec(),
        d_center_centroid: dist(center.vertices(), centroid.vertices()),
        d_center_core: dist(center.vertices(), core.vertices()),
        d_centroid_core: dist(centroid.vertices(), core.vertices()),
        centroid_between: centroid_between(&tree),
        counts: args.counts.then(|| {
            count_all_vertices(&tree)
                .iter()
                .map(|(v, c)| (v, c.to_string()))
                .collect()
        }),
    };
    let content = if args.json {
        let mut value = serde_json::to_value(&report)?;
        if let Some(counts) = &report.counts {
            let map: serde_json::Map<String, serde_json::Value> = counts
                .iter()
                .map(|(v, c)| (v.to_string(), serde_json::Value::String(c.clone())))
                .collect();
            value["counts"] = serde_json::Value::Object(map);
        }
        format!("{}\n", serde_json::to_string_pretty(&value)?)
    } else {
        let mut text = String::new();
        text.push_str(&format!("n\t{}\n", report.n));
        text.push_str(&format!("center\t{}\n", join_ids(&report.center)));
        text.push_str(&format!("centroid\t{}\n", join_ids(&report.centroid)));
        text.push_str(&format!("subtree_core\t{}\n", join_ids(&report.subtree_core)));
        text.push_str(&format!("d_center_centroid\t{}\n", report.d_center_centroid));
        text.push_str(&format!("d_center_core\t{}\n", report.d_center_core));
        text.push_str(&format!("d_centroid_core\t{}\n", report.d_centroid_core));
        text.push_str(&format!("centroid_between\t{}\n", report.centroid_between));
        if let Some(counts) = &report.counts {
            for (v, c) in counts {
                text.push_str(&format!("{v}\t{c}\n"));
            }
        }
        text
    };
    emit(&args.out, &content)?;
    Ok(Findings::None)
}

#[derive(Serialize)]
struct PathstarRow {
    n: usize,
    g: usize,
    center: Vec<usize>,
    centroid: Vec<usize>,
    subtree_core: Vec<usize>,
    d_c_sc: usize,
    d_cd_sc: usize,
    d_c_cd: usize,
    closed_matches_direct: bool,
}

fn pathstar_row(params: PathStarParams) -> PathstarRow {
    let tree = params.build();
    let center = tree.center();
    let centroid = tree.centroid();
    let core = subtree_core(&tree);
    let dist = |a: &[usize], b: &[usize]| tree.set_distance(a, b).expect("middle sets are valid");
    let d_c_sc = dist(center.vertices(), core.vertices());
    let d_cd_sc = dist(centroid.vertices(), core.vertices());
    let closed_matches_direct = params.center_closed().map(|m| m == center).unwrap_or(false)
        && params.centroid_closed().map(|m| m == centroid).unwrap_or(false)
        && params.subtree_core_closed().map(|m| m == core).unwrap_or(false)
        && params.center_core_distance_closed() == Ok(d_c_sc)
        && params.centroid_core_distance_closed() == Ok(d_cd_sc);
    PathstarRow {
        n: params.n(),
        g: params.g(),
        center: center.vertices().to_vec(),
        centroid: centroid.vertices().to_vec(),
        subtree_core: core.vertices().to_vec(),
        d_c_sc,
        d_cd_sc,
        d_c_cd: dist(center.vertices(), centroid.vertices()),
        closed_matches_direct,
    }
}

fn cmd_pathstar(args: PathstarArgs) -> anyhow::Result<Findings> {
    let members: Vec<PathStarParams> = match args.g {
        Some(g) => vec![PathStarParams::new(args.n, g)?],
        None => {
            if args.n < 5 {
                bail!("the family needs n >= 5; got n={}", args.n);
            }
            (2..=args.n - 3)
                .map(|g| PathStarParams::new(args.n, g))
                .collect::<Result<_, _>>()?
        }
    };
    for params in &members {
        if !params.in_gamma() {
            bail!(
                "closed forms need n >= 5 and 2 <= g <= n - 3; got n={} g={}",
                params.n(),
                params.g()
            );
        }
    }
    let rows: Vec<PathstarRow> = members.into_iter().map(pathstar_row).collect();
    let all_match = rows.iter().all(|r| r.closed_matches_direct);
    let content = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&rows)?)
    } else {
        let mut text = String::from(
            "n\tg\tcenter\tcentroid\tsubtree_core\td_c_sc\td_cd_sc\td_c_cd\tclosed_matches_direct\n",
        );
        for r in &rows {
            text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.n,
                r.g,
                join_ids(&r.center),
                join_ids(&r.centroid),
                join_ids(&r.subtree_core),
                r.d_c_sc,
                r.d_cd_sc,
                r.d_c_cd,
                r.closed_matches_direct
            ));
        }
        text
    };
    emit(&args.out, &content)?;
    Ok(if all_match {
        Findings::None
    } else {
        Findings::Violations
    })
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    tree_count: u64,
    max_value: usize,
    paper_bound: usize,
    bound_ok: bool,
    maximizer_count: usize,
    pathstar_attains: bool,
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<Findings> {
    if args.n_min > args.n_max {
        bail!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max);
    }
    let metric: Metric = args.metric.into();
    let mut rows = Vec::new();
    for n in args.n_min..=args.n_max {
        let record = survey(n, metric)?;
        rows.push(SweepRow {
            n,
            tree_count: record.tree_count,
            max_value: record.max_value,
            paper_bound: record.distance_bound(),
            bound_ok: record.bound_ok(),
            maximizer_count: record.maximizers.len(),
            pathstar_attains: record.pathstar_attains(),
        });
    }
    let clean = rows.iter().all(|r| r.bound_ok && r.pathstar_attains);
    let content = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&rows)?)
    } else {
        let mut text = String::from(
            "n\ttree_count\tmax_value\tpaper_bound\tbound_ok\tmaximizer_count\tpathstar_attains\n",
        );
        for r in &rows {
            text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.n, r.tree_count, r.max_value, r.paper_bound, r.bound_ok, r.maximizer_count,
                r.pathstar_attains
            ));
        }
        text
    };
    emit(&args.out, &content)?;
    Ok(if clean {
        Findings::None
    } else {
        Findings::Violations
    })
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<Findings> {
    let outcome = verify::run_all(args.n_max, args.seed);
    Ok(if outcome {
        Findings::None
    } else {
        Findings::Violations
    })
}

enum MoveSpec {
    Leaf(LeafMove),
    Path(PathMove),
}

fn parse_move(spec: &str) -> anyhow::Result<MoveSpec> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    let parse_id = |tok: &str| -> anyhow::Result<usize> {
        tok.parse()
            .map_err(|_| anyhow!("bad vertex id {tok:?} in move spec"))
    };
    match tokens.as_slice() {
        ["leaf", y, w] => Ok(MoveSpec::Leaf(LeafMove::new(parse_id(y)?, parse_id(w)?))),
        ["path", rest @ ..] if rest.len() >= 3 => {
            let anchor = parse_id(rest[0])?;
            let dest = parse_id(rest[rest.len() - 1])?;
            let path = rest[1..rest.len() - 1]
                .iter()
                .map(|t| parse_id(t))
                .collect::<anyhow::Result<Vec<usize>>>()?;
            Ok(MoveSpec::Path(PathMove::new(anchor, path, dest)))
        }
        _ => bail!("move spec must be \"leaf y w\" or \"path y y1 .. ym z\", got {spec:?}"),
    }
}

#[derive(Serialize)]
struct PerturbReport {
    n: usize,
    edges: Vec<(usize, usize)>,
    checks: Vec<(String, bool)>,
}

fn cmd_perturb(args: PerturbArgs) -> anyhow::Result<Findings> {
    let tree = read_tree(&args.input)?;
    let spec = parse_move(&args.move_spec)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let moved = match &spec {
        MoveSpec::Leaf(mv) => {
            let moved = relocate_leaf(&tree, mv)?;
            let mut identity = true;
            let mut intermediate = true;
            for a in 1..=tree.n() {
                if a == mv.pendant {
                    continue;
                }
                identity &= verify_leaf_identity(&tree, mv, a)?;
                intermediate &= verify_intermediate_identities(&tree, mv, a)?;
            }
            checks.push(("leaf_identity_all_vertices".into(), identity));
            checks.push(("intermediate_identities_all_vertices".into(), intermediate));
            if subtree_core(&tree).contains(mv.dest) {
                let stable = subtree_core(&moved).vertices() == [mv.dest];
                checks.push(("core_moves_to_destination".into(), stable));
            }
            moved
        }
        MoveSpec::Path(mv) => {
            let moved = relocate_path(&tree, mv)?;
            let mut identity = true;
            for a in 1..=tree.n() {
                if mv.path.contains(&a) {
                    continue;
                }
                identity &= verify_path_identity(&tree, mv, a)?;
            }
            checks.push(("path_identity_all_vertices".into(), identity));
            moved
        }
    };
    let edge_list = write_edge_list(&moved);
    let all_ok = checks.iter().all(|(_, ok)| *ok);
    if args.json {
        let report = PerturbReport {
            n: moved.n(),
            edges: moved.edges().to_vec(),
            checks: checks.clone(),
        };
        emit(&args.out, &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    } else {
        emit(&args.out, &edge_list)?;
        let mut report = String::new();
        for (name, ok) in &checks {
            report.push_str(&format!("check\t{name}\t{ok}\n"));
        }
        print!("{report}");
    }
    Ok(if all_ok {
        Findings::None
    } else {
        Findings::Violations
    })
}

#[derive(Serialize)]
struct ViolationsReport {
    mode: String,
    n: usize,
    tree_count: Option<u64>,
    violations: Vec<String>,
    centroid_between: Option<bool>,
}

fn cmd_violations(args: ViolationsArgs) -> anyhow::Result<Findings> {
    let report = match (args.exhaustive, &args.family) {
        (Some(n), None) => {
            let codes = find_betweenness_violations(n)?;
            let tree_count = arbormid::enumerate_free_trees(n)?.count() as u64;
            ViolationsReport {
                mode: "exhaustive".into(),
                n,
                tree_count: Some(tree_count),
                violations: codes.iter().map(|c| c.to_string()).collect(),
                centroid_between: None,
            }
        }
        (None, Some(family)) => {
            let [spine, attach, interior, end] = family.as_slice() else {
                bail!("--family takes SPINE ATTACH P Q");
            };
            let tree = double_broom(*spine, *attach, *interior, *end)?;
            let between = centroid_between(&tree);
            ViolationsReport {
                mode: "family".into(),
                n: tree.n(),
                tree_count: None,
                violations: if between {
                    Vec::new()
                } else {
                    vec![arbormid::canonical_code(&tree).to_string()]
                },
                centroid_between: Some(between),
            }
        }
        _ => bail!("pass exactly one of --exhaustive N or --family SPINE ATTACH P Q"),
    };
    let found = !report.violations.is_empty();
    let content = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        let mut text = format!("mode\t{}\nn\t{}\n", report.mode, report.n);
        if let Some(count) = report.tree_count {
            text.push_str(&format!("tree_count\t{count}\n"));
        }
        if let Some(between) = report.centroid_between {
            text.push_str(&format!("centroid_between\t{between}\n"));
        }
        text.push_str(&format!("violation_count\t{}\n", report.violations.len()));
        for code in &report.violations {
            text.push_str(&format!("violation\t{code}\n"));
        }
        text
    };
    emit(&args.out, &content)?;
    Ok(if found {
        Findings::Violations
    } else {
        Findings::None
    })
}
