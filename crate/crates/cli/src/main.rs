use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, ValueEnum};

use kout::enumerator::enumerate_until;
use kout::gen::generate_points;
use kout::geom::canonical_form;
use kout::oracle::{oracle_enumerate, ORACLE_MAX_POINTS};
use kout::svg::{render_points_svg, render_svg};
use kout::{EnumConfig, EnumStats, PointSet, Polygon, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Enumerate,
    Oracle,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Indices,
    Coords,
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    Preorder,
    Parity,
}

/// Enumerate the simple polygons on a point set that leave at most k points
/// outside.
#[derive(Parser, Debug)]
#[command(name = "kout", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "random"])))]
struct Args {
    /// Point set file: one "x y" pair per line, '#' comments allowed.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Generate N random points instead of reading a file.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinates of generated points lie in [-R, R].
    #[arg(long, value_name = "R", default_value_t = 1000)]
    range: i64,
    /// Generate points in convex position.
    #[arg(long)]
    convex: bool,
    /// Maximum number of points left outside.
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Enumerate)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Indices)]
    format: Format,
    /// Write one SVG per polygon plus points.svg into this directory.
    #[arg(long, value_name = "DIR")]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Parity)]
    schedule: ScheduleArg,
    /// Append traversal statistics as '#' lines.
    #[arg(long)]
    stats: bool,
}

fn load(args: &Args) -> anyhow::Result<PointSet> {
    let ps = match (&args.input, args.random) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            PointSet::parse(&text)?
        }
        (None, Some(n)) => generate_points(n, args.seed, args.range, args.convex)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    Ok(ps)
}

fn format_polygon(ps: &PointSet, poly: &Polygon, format: Format) -> String {
    match format {
        Format::Coords => poly
            .verts()
            .iter()
            .map(|&v| {
                let p = ps.point(v);
                format!("{},{}", p.x, p.y)
            })
            .collect::<Vec<_>>()
            .join(" "),
        _ => poly.to_line(),
    }
}

struct Output<'a, W: Write> {
    out: &'a mut W,
    ps: &'a PointSet,
    format: Format,
    svg: Option<&'a Path>,
    count: u64,
}

impl<W: Write> Output<'_, W> {
    fn polygon(&mut self, poly: &Polygon) -> anyhow::Result<()> {
        self.count += 1;
        if self.format != Format::Count {
            writeln!(self.out, "{}", format_polygon(self.ps, poly, self.format))?;
        }
        if let Some(dir) = self.svg {
            let path = dir.join(format!("polygon_{:06}.svg", self.count));
            fs::write(&path, render_svg(self.ps, poly)).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }

    fn finish(&mut self) -> anyhow::Result<()> {
        if self.format == Format::Count {
            writeln!(self.out, "{}", self.count)?;
        }
        Ok(())
    }
}

fn write_stats(out: &mut impl Write, s: &EnumStats) -> io::Result<()> {
    writeln!(out, "# nodes_visited {}", s.nodes_visited)?;
    writeln!(out, "# polygons_emitted {}", s.polygons_emitted)?;
    writeln!(out, "# max_depth {}", s.max_depth)?;
    writeln!(out, "# type1_children {}", s.type1_children)?;
    writeln!(out, "# type2_children {}", s.type2_children)?;
    writeln!(out, "# max_triangle_queries_per_node {}", s.max_triangle_queries_per_node)?;
    writeln!(out, "# max_intersection_queries_per_node {}", s.max_intersection_queries_per_node)?;
    writeln!(out, "# max_expansions_between_outputs {}", s.max_expansions_between_outputs)?;
    writeln!(out, "# counter_words {}", s.counter_words)?;
    writeln!(out, "# peak_aux_words {}", s.peak_aux_words)?;
    writeln!(out, "# regnum_claim_held {}", s.regnum_claim_held)?;
    writeln!(out, "# regnum_claim_corrected {}", s.regnum_claim_corrected)?;
    let hist = |h: &std::collections::BTreeMap<u64, u64>| {
        h.iter().map(|(q, c)| format!("{q}:{c}")).collect::<Vec<_>>().join(" ")
    };
    writeln!(out, "# triangle_queries_hist {}", hist(&s.triangle_queries_hist))?;
    writeln!(out, "# intersection_queries_hist {}", hist(&s.intersection_queries_hist))?;
    Ok(())
}

fn run(args: &Args, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let ps = load(args)?;
    let schedule = match args.schedule {
        ScheduleArg::Preorder => Schedule::Preorder,
        ScheduleArg::Parity => Schedule::AlternateDepthParity,
    };
    let cfg = EnumConfig {
        k: args.k,
        schedule,
        instrument: args.stats,
    };
    if let Some(dir) = &args.svg {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        fs::write(dir.join("points.svg"), render_points_svg(&ps))?;
    }
    let mut o = Output {
        out,
        ps: &ps,
        format: args.format,
        svg: args.svg.as_deref(),
        count: 0,
    };
    match args.mode {
        Mode::Enumerate => {
            let mut failure = None;
            let stats = enumerate_until(&ps, &cfg, |v| match o.polygon(v.polygon) {
                Ok(()) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            o.finish()?;
            if args.stats {
                write_stats(o.out, &stats)?;
            }
        }
        Mode::Oracle => {
            let result = oracle_enumerate(&ps, args.k)?;
            for verts in &result.polygons {
                o.polygon(&canonical_form(verts, &ps)?)?;
            }
            o.finish()?;
            if args.stats {
                for (j, c) in &result.by_outside_count {
                    writeln!(o.out, "# outside {j}: {c}")?;
                }
            }
        }
        Mode::Verify => {
            if ps.len() > ORACLE_MAX_POINTS {
                bail!("verify mode needs at most {ORACLE_MAX_POINTS} points, got {}", ps.len());
            }
            let mut got = BTreeSet::new();
            let mut dups = 0u64;
            let stats = kout::enumerate(&ps, &cfg, |v| {
                if !got.insert(v.polygon.verts().to_vec()) {
                    dups += 1;
                }
            })?;
            let want = oracle_enumerate(&ps, args.k)?.polygons;
            let line = |v: &Vec<usize>| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            let counts = format!("enumerate {} oracle {}", stats.polygons_emitted, want.len());
            if got == want && dups == 0 {
                writeln!(o.out, "MATCH {counts}")?;
            } else {
                writeln!(o.out, "MISMATCH {counts} duplicates {dups}")?;
                if let Some(v) = got.difference(&want).next() {
                    writeln!(o.out, "only in enumerate: {}", line(v))?;
                }
                if let Some(v) = want.difference(&got).next() {
                    writeln!(o.out, "only in oracle: {}", line(v))?;
                }
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&args, &mut out) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
