//! Command-line front end: validate, analyze, detect, discharge, bounds,
//! peel, and generate, over the JSON drawing interchange format.
//!
//! Exit codes: 0 on success, 1 for invalid input (unreadable files, schema
//! or map validation errors, unknown schemes and families), 2 for an
//! internal invariant failure. Scheme violations are ordinary report data,
//! not errors. Reports are byte-stable: rationals print as `p/q` and the
//! only decimal output is the explicitly rounded `kappaDisplay` field.

use std::io::Read;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::ser::{Serialize, SerializeMap, Serializer};

/// Line printer that exits quietly when the downstream pipe closes (so
/// `generate | head` works) and cleanly on any other write failure.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: stdout: {e}");
            std::process::exit(1);
        }
    }};
}

use crossing_forge::bounds::{bound_report, k_planar_density_cap, peel, sqrt_decimal_ceil};
use crossing_forge::configs::{detect, ConfigInstance, ConfigKind};
use crossing_forge::discharging::{builtin_scheme, run_scheme, verify, BUILTIN_SCHEME_NAMES};
use crossing_forge::generators::{build_family, Family};
use crossing_forge::planemap::{parse_drawing, serialize_drawing, ParseOptions};
use crossing_forge::ratio::fmt_ratio;
use crossing_forge::CombinatorialMap;

#[derive(Parser)]
#[command(
    name = "crossing-forge",
    version,
    about = "Analyze drawings of graphs with crossings",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Reject unknown document fields instead of warning.
    /// Also enabled by CROSSING_FORGE_STRICT=1.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a drawing file is a valid map. Exit 0 iff it is.
    Validate {
        /// Drawing file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Vertex/edge/crossing counts, face census, connectivity, planarity.
    Analyze {
        #[arg(default_value = "-")]
        file: String,
    },
    /// List instances of a dense crossing configuration.
    Detect {
        #[arg(default_value = "-")]
        file: String,
        /// Configuration kind: f25, f26, or f36.
        #[arg(long)]
        kind: String,
    },
    /// Run a discharging scheme and verify every face meets its target.
    Discharge {
        #[arg(default_value = "-")]
        file: String,
        /// Scheme name: 2p-13/3, 2p-9/2, or 3p.
        #[arg(long)]
        scheme: String,
        /// Include the per-step transfer trace.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate crossing-number lower bounds at given vertex/edge counts.
    Bounds {
        /// Number of vertices.
        #[arg(long)]
        n: u64,
        /// Number of edges.
        #[arg(long)]
        m: u64,
        /// Also report the k-planar edge-density cap for this k.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Peel dense edges off a drawing and report the resulting bound.
    Peel {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Emit a built-in drawing family as a drawing file.
    Generate {
        /// Family spec, e.g. doubled:f36, optimal-2planar:dodecahedron,
        /// planar-cycle:7.
        #[arg(long)]
        family: String,
        /// Output file; defaults to stdout.
        #[arg(short, long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let usage_ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if usage_ok { 0 } else { 1 });
        }
    };
    // A panic past argument parsing means a library invariant failed, not bad
    // input; keep the payload as the diagnostic and exit 2.
    panic::set_hook(Box::new(|_| {}));
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unidentified panic");
            eprintln!("internal invariant failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let strict = cli.strict || std::env::var("CROSSING_FORGE_STRICT").as_deref() == Ok("1");
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => {
            let map = load_map(&file, strict)?;
            let stats = map.stats();
            match format {
                Format::Json => {
                    let out = Keyed(vec![
                        ("valid", serde_json::Value::Bool(true)),
                        ("n", stats.real_vertices.into()),
                        ("m", stats.graph_edges.into()),
                        ("crossings", stats.crossings.into()),
                    ]);
                    print_json(&out);
                }
                Format::Text => outln!(
                    "valid: {} vertices, {} edges, {} crossings",
                    stats.real_vertices,
                    stats.graph_edges,
                    stats.crossings
                ),
            }
            Ok(())
        }
        Command::Analyze { file } => {
            let map = load_map(&file, strict)?;
            analyze(&map, format);
            Ok(())
        }
        Command::Detect { file, kind } => {
            let kind: ConfigKind = kind.parse()?;
            let map = load_map(&file, strict)?;
            let instances = detect(&map, kind);
            report_instances(&map, kind, &instances, format);
            Ok(())
        }
        Command::Discharge {
            file,
            scheme,
            trace,
        } => {
            let scheme = builtin_scheme(&scheme).ok_or_else(|| {
                format!(
                    "unknown scheme {scheme:?}; built-in schemes: {}",
                    BUILTIN_SCHEME_NAMES.join(", ")
                )
            })?;
            let map = load_map(&file, strict)?;
            let (charges, step_trace) = run_scheme(&map, &scheme);
            let report = verify(&map, &charges, &scheme.name, &scheme.alpha);
            match format {
                Format::Json if trace => print_json(&Keyed(vec![
                    ("report", to_value(&report)),
                    ("trace", to_value(&step_trace)),
                ])),
                Format::Json => print_json(&report),
                Format::Text => {
                    outln!(
                        "scheme {}  alpha {}",
                        report.scheme,
                        fmt_ratio(&report.alpha)
                    );
                    outln!(
                        "faces {}  total charge {}",
                        report.per_face.len(),
                        fmt_ratio(&report.total_charge)
                    );
                    if let Some(cap) = &report.derived_density_cap {
                        outln!("certified edge cap {}", fmt_ratio(cap));
                    }
                    if report.violations.is_empty() {
                        outln!("violations: none");
                    } else {
                        let faces: Vec<String> =
                            report.violations.iter().map(|f| f.0.to_string()).collect();
                        outln!("violations: faces {}", faces.join(", "));
                    }
                    if trace {
                        for s in &step_trace.steps {
                            outln!(
                                "step {} {}: {} transfers, {} diagnostics",
                                s.step,
                                s.name,
                                s.transfers.len(),
                                s.diagnostics.len()
                            );
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Bounds { n, m, k } => {
            let report = bound_report(n, m);
            let density = k
                .map(|k| {
                    let cap = k_planar_density_cap(k).map_err(|e| e.to_string())?;
                    Ok::<_, String>((k, cap))
                })
                .transpose()?;
            match format {
                Format::Json => {
                    let mut fields = vec![("report", to_value(&report))];
                    if let Some((k, cap)) = &density {
                        fields.push((
                            "kPlanarDensity",
                            to_value(&Keyed(vec![
                                ("k", (*k).into()),
                                ("kappaSquared", fmt_ratio(cap).into()),
                                ("kappaDisplay", sqrt_decimal_ceil(cap, 2).into()),
                            ])),
                        ));
                    }
                    if fields.len() == 1 {
                        print_json(&report);
                    } else {
                        print_json(&Keyed(fields));
                    }
                }
                Format::Text => {
                    outln!("n {n}  m {m}");
                    for b in &report.bounds {
                        outln!("  {}  =  {}", b.name, fmt_ratio(&b.value));
                    }
                    outln!("best {}", fmt_ratio(&report.best));
                    outln!(
                        "cubic regime: {}",
                        if report.cubic_applies { "yes" } else { "no" }
                    );
                    for c in &report.caveats {
                        outln!("caveat: {c}");
                    }
                    if let Some((k, cap)) = &density {
                        outln!(
                            "{k}-planar density: kappa^2 = {}, kappa <= {}",
                            fmt_ratio(cap),
                            sqrt_decimal_ceil(cap, 2)
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Peel { file } => {
            let map = load_map(&file, strict)?;
            let report = peel(&map).map_err(|e| e.to_string())?;
            match format {
                Format::Json => print_json(&report),
                Format::Text => {
                    outln!("n {}  m {}", report.n, report.m);
                    outln!(
                        "m5plus {}  m4 {}  m3 {}  partner removals {}  m3minus {}  remaining {}",
                        report.m5plus,
                        report.m4,
                        report.m3,
                        report.pair_removed,
                        report.m3minus,
                        report.remaining
                    );
                    if report.fallback {
                        outln!("below the density line; uniform accounting");
                    }
                    outln!("lower bound {}", fmt_ratio(&report.lower_bound_value));
                    let rc = &report.residual_check;
                    outln!(
                        "residual check: {} >= {} {}",
                        rc.lhs,
                        fmt_ratio(&rc.rhs),
                        if rc.holds { "holds" } else { "fails" }
                    );
                    for c in &report.caveats {
                        outln!("caveat: {c}");
                    }
                }
            }
            Ok(())
        }
        Command::Generate { family, out } => {
            let family: Family = family.parse().map_err(|e| format!("{e}"))?;
            let map = build_family(&family).map_err(|e| format!("{e}"))?;
            let doc = serialize_drawing(&map);
            match out.as_deref() {
                None | Some("-") => outln!("{doc}"),
                Some(path) => {
                    std::fs::write(path, doc + "\n").map_err(|e| format!("{path}: {e}"))?
                }
            }
            Ok(())
        }
    }
}

fn load_map(file: &str, strict: bool) -> Result<CombinatorialMap, String> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?
    };
    let (raw, warnings) =
        parse_drawing(&text, ParseOptions { strict }).map_err(|e| e.to_string())?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    raw.validate().map_err(|e| e.to_string())
}

fn analyze(map: &CombinatorialMap, format: Format) {
    let stats = map.stats();
    let census = map.face_census();
    let two_conn = crossing_forge::discharging::two_connected(map);
    match format {
        Format::Json => print_json(&Keyed(vec![
            ("n", stats.real_vertices.into()),
            ("m", stats.graph_edges.into()),
            ("crossings", stats.crossings.into()),
            ("kPlanar", stats.max_crossings_per_edge.into()),
            ("twoConnected", two_conn.into()),
            ("census", to_value(&census)),
            ("perEdgeCrossings", to_value(&stats.per_edge_crossings)),
        ])),
        Format::Text => {
            outln!("vertices     {}", stats.real_vertices);
            outln!("edges        {}", stats.graph_edges);
            outln!("crossings    {}", stats.crossings);
            outln!("k-planar     {}", stats.max_crossings_per_edge);
            outln!("2-connected  {}", if two_conn { "yes" } else { "no" });
            outln!("faces:");
            for (class, count) in &census {
                outln!("  {class} x{count}");
            }
        }
    }
}

fn report_instances(
    map: &CombinatorialMap,
    kind: ConfigKind,
    instances: &[ConfigInstance],
    format: Format,
) {
    let views: Vec<serde_json::Value> = instances
        .iter()
        .map(|inst| {
            let boundary: Vec<String> = inst
                .boundary_cycle
                .iter()
                .map(|n| map.node_label(*n).to_string())
                .collect();
            let absent: Vec<serde_json::Value> = inst
                .absent_boundary_pairs()
                .iter()
                .map(|(u, v)| {
                    vec![
                        map.node_label(*u).to_string(),
                        map.node_label(*v).to_string(),
                    ]
                    .into()
                })
                .collect();
            to_value(&Keyed(vec![
                ("boundary", boundary.into()),
                ("innerEdges", inst.inner_edge_labels(map).into()),
                ("absentBoundary", absent.into()),
            ]))
        })
        .collect();
    match format {
        Format::Json => print_json(&Keyed(vec![
            ("kind", kind.to_string().into()),
            ("count", instances.len().into()),
            ("instances", views.into()),
        ])),
        Format::Text => {
            outln!("{kind} instances: {}", instances.len());
            for (i, view) in views.iter().enumerate() {
                let join = |key: &str| -> String {
                    view[key]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| match v {
                            serde_json::Value::Array(pair) => format!(
                                "{}~{}",
                                pair[0].as_str().unwrap(),
                                pair[1].as_str().unwrap()
                            ),
                            v => v.as_str().unwrap().to_string(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                outln!("instance {i}: boundary [{}]", join("boundary"));
                outln!("  inner edges [{}]", join("innerEdges"));
                let absent = join("absentBoundary");
                if absent.is_empty() {
                    outln!("  absent boundary: none");
                } else {
                    outln!("  absent boundary [{absent}]");
                }
            }
        }
    }
}

/// Key/value list that serializes as a JSON object in listed order.
struct Keyed(Vec<(&'static str, serde_json::Value)>);

impl Serialize for Keyed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Like `serde_json::to_value` but through the text representation, which
/// keeps the insertion order of manually serialized maps. Plain `to_value`
/// would re-sort every object alphabetically.
fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    let text = serde_json::to_string(t).expect("report serializes");
    serde_json::from_str(&text).expect("report round-trips")
}

fn print_json<T: Serialize>(t: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(t).expect("report serializes")
    );
}
