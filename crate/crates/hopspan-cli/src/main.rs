use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hopspan::bench::{bench, build, write_csv, Construction, DEFAULT_SIZES};
use hopspan::geom::GeomObject;
use hopspan::graph::{build_intersection_graph, greedy_spanner, verify_hop_spanner, Spanner};
use hopspan::instances::{generate, Family, InstanceSpec};
use hopspan::io::{read_objects, GeometryDoc};
use hopspan::lower_bound::{base_body, forced_edge_audit, gen_f, realize_f};
use hopspan::svg::render_svg;

/// Sparse hop spanners for geometric intersection graphs.
#[derive(Parser)]
#[command(name = "hopspan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the intersection graph of an instance as JSON.
    Graph {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the objects as a geometry JSON document.
        #[arg(long)]
        geometry: Option<PathBuf>,
    },
    /// Build a spanner, verify it and write it as JSON.
    Spanner {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        construction: Option<String>,
        /// Hop bound for greedy constructions.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a spanner JSON file against an instance.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        spanner: PathBuf,
        /// Hop bound to check; defaults to the spanner's claim.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify over a grid of sizes and seeds; write CSV.
    Bench {
        #[arg(long)]
        family: String,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seed: Vec<u64>,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        #[arg(long)]
        construction: Option<String>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize the level graph F(h) by homothets and audit forced edges.
    Lbgen {
        #[arg(long)]
        h: usize,
        /// square, triangle, disk or <k>-gon.
        #[arg(long, default_value = "square")]
        base: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance and optionally a spanner as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        /// Spanner JSON to overlay.
        #[arg(long)]
        spanner: Option<PathBuf>,
        /// Build and overlay this construction instead.
        #[arg(long)]
        construction: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Where the objects come from: a generated family or a JSON document.
#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Side count for fat polygons.
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    perturb: f64,
    /// Geometry JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl Source {
    fn spec(&self) -> Result<Option<InstanceSpec>> {
        let Some(f) = &self.family else { return Ok(None) };
        let family: Family = f.parse()?;
        Ok(Some(InstanceSpec::new(family, self.n, self.seed).with_alpha(self.alpha).with_k(self.k).with_perturb(self.perturb)))
    }

    fn objects(&self) -> Result<(Vec<GeomObject>, Option<Family>)> {
        if let Some(spec) = self.spec()? {
            return Ok((generate(&spec)?, Some(spec.family)));
        }
        let Some(path) = &self.input else { bail!("either --family or --input is required") };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok((read_objects(&text)?, None))
    }
}

fn construction(name: Option<&str>, family: Option<Family>, objects: &[GeomObject], t: Option<usize>) -> Result<Construction> {
    let c = match (name, family) {
        (Some(n), _) => n.parse()?,
        (None, Some(f)) => Construction::default_for(f),
        (None, None) => match objects.first() {
            Some(GeomObject::UnitDiskCenter(_)) => Construction::Udg2Hop,
            Some(GeomObject::Interval { .. }) => Construction::Interval2Hop,
            Some(GeomObject::Translate { .. }) => Construction::Translates2Hop,
            Some(GeomObject::Rect(_)) => Construction::Rect3Hop,
            Some(GeomObject::Polygon(_)) => Construction::FatConvex3Hop,
            None => Construction::Identity,
        },
    };
    Ok(match (c, t) {
        (Construction::Greedy(_), Some(t)) => Construction::Greedy(t),
        (c, Some(t)) if t != c.t() => bail!("{c} guarantees t = {}, not {t}", c.t()),
        (c, _) => c,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph { source, out, geometry } => {
            let (objects, _) = source.objects()?;
            if let Some(p) = geometry {
                emit(Some(&p), &GeometryDoc::from_objects(&objects)?.to_json()?)?;
            }
            let g = build_intersection_graph(&objects)?;
            emit(out.as_deref(), &serde_json::to_string(&g.to_json())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spanner { source, construction: name, t, out } => {
            let (objects, family) = source.objects()?;
            let c = construction(name.as_deref(), family, &objects, t)?;
            let g = build_intersection_graph(&objects)?;
            let s = build(c, &objects, Some(&g))?;
            let report = verify_hop_spanner(&g, &s, c.t())?;
            emit(out.as_deref(), &s.to_json()?)?;
            eprintln!("{c}: n = {}, edges = {}, t = {}, verified = {}", g.n, s.edge_count(), c.t(), report.valid);
            Ok(status(report.valid))
        }
        Command::Verify { source, spanner, t, out } => {
            let (objects, _) = source.objects()?;
            let s = Spanner::from_json(&fs::read_to_string(&spanner).with_context(|| format!("reading {}", spanner.display()))?)?;
            let g = build_intersection_graph(&objects)?;
            let report = verify_hop_spanner(&g, &s, t.unwrap_or(s.t))?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            Ok(status(report.valid))
        }
        Command::Bench { family, n, seed, alpha, k, perturb, construction: name, t, out } => {
            let family: Family = family.parse()?;
            let sizes = if n.is_empty() { DEFAULT_SIZES.to_vec() } else { n };
            let mut records = Vec::new();
            for &size in &sizes {
                for &s in &seed {
                    let spec = InstanceSpec::new(family, size, s).with_alpha(alpha).with_k(k).with_perturb(perturb);
                    let c = construction(name.as_deref(), Some(family), &[], t)?;
                    let (record, _) = bench(&spec, c)?;
                    eprintln!(
                        "{} {family} n={} seed={s} {c}: {} edges, ratio {:.4}",
                        if record.verified { "PASS" } else { "FAIL" },
                        record.n,
                        record.edges,
                        record.ratio
                    );
                    records.push(record);
                }
            }
            let mut buf = Vec::new();
            write_csv(&mut buf, &records)?;
            emit(out.as_deref(), &String::from_utf8(buf)?)?;
            Ok(status(records.iter().all(|r| r.verified)))
        }
        Command::Lbgen { h, base, out } => {
            let real = realize_f(h, &base_body(&base)?)?;
            let f = gen_f(h)?;
            let greedy = greedy_spanner(&f.to_graph(), 2);
            let audit = if h >= 2 { Some(forced_edge_audit(h, &greedy)?) } else { None };
            let doc = serde_json::json!({
                "graph": f.to_graph().to_json(),
                "placements": real.placements,
                "base": real.base,
                "columns": real.columns,
                "greedy_edges": greedy.edge_count(),
                "forced_edge_audit": audit,
            });
            emit(out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
            Ok(status(audit.is_none_or(|a| a.ok())))
        }
        Command::Render { source, spanner, construction: name, out } => {
            let (objects, family) = source.objects()?;
            let s = match (spanner, name) {
                (Some(p), _) => Some(Spanner::from_json(&fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?)?),
                (None, Some(n)) => {
                    let c = construction(Some(&n), family, &objects, None)?;
                    Some(build(c, &objects, None)?)
                }
                (None, None) => None,
            };
            emit(out.as_deref(), &render_svg(&objects, s.as_ref())?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
