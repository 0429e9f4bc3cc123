use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use lamina::atlas::atlas;
use lamina::gaps::analyze;
use lamina::io::{to_json, validate_report, GapsReport, LaminationReport, PortraitSpec, Settings};
use lamina::pile::{endpoint_classes, preroot_qlamination, LaminationApprox};
use lamina::root::{build_root, RootOptions};
use lamina::svg::render_analysis;
use lamina::tiles::tiles;
use lamina::{Chord, PortraitError, PortraitPlus};

#[derive(Parser)]
#[command(name = "lamina", version, about = "Invariant laminations of the angle d-tupling map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a critical collection and list its polygons.
    Validate(Common),
    /// Preroot lamination from the proper polygons.
    Preroot(Common),
    /// Root lamination, with tuning log and prime certificates.
    Root(Common),
    /// Gap analysis of the root (or preroot) lamination.
    Gaps {
        #[command(flatten)]
        common: Common,
        /// Analyze the preroot instead of the root.
        #[arg(long)]
        preroot: bool,
    },
    /// Tiles by generation.
    Tiles {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        generations: Option<u32>,
    },
    /// Draw a lamination JSON file (any report with a `leaves` field).
    Render {
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
    /// Enumerate portraits with small denominators and group legal pairs.
    Atlas {
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 8)]
        max_denominator: u64,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Portrait JSON file: {"degree": d, "chords": ["p/q-r/s", ...]}.
    portrait: Option<PathBuf>,
    /// Inline chords, comma separated; needs --degree.
    #[arg(long, value_delimiter = ',')]
    chords: Vec<String>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    depth: Option<u32>,
    /// Keep only leaves whose endpoint denominators are at most this.
    #[arg(long)]
    resolution: Option<u64>,
    /// Settings JSON; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn load_settings(path: Option<&Path>) -> Result<Settings> {
    match path {
        None => Ok(Settings::default()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing settings {}", p.display()))
        }
    }
}

impl Common {
    fn settings(&self) -> Result<Settings> {
        let mut s = load_settings(self.config.as_deref())?;
        if let Some(d) = self.depth {
            s.depth = d;
        }
        if self.resolution.is_some() {
            s.resolution = self.resolution;
        }
        Ok(s)
    }

    fn spec(&self) -> Result<PortraitSpec> {
        let mut spec = match (&self.portrait, self.chords.is_empty()) {
            (Some(p), true) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str::<PortraitSpec>(&text).with_context(|| format!("parsing portrait {}", p.display()))?
            }
            (None, false) => {
                let chords = self
                    .chords
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.parse::<Chord>().with_context(|| format!("chord #{i}")))
                    .collect::<Result<Vec<_>>>()?;
                let degree = self.degree.ok_or_else(|| anyhow!("--chords needs --degree"))?;
                PortraitSpec { degree, chords }
            }
            (Some(_), false) => bail!("give a portrait file or --chords, not both"),
            (None, true) => bail!("no portrait given"),
        };
        if let Some(d) = self.degree {
            spec.degree = d;
        }
        Ok(spec)
    }

    fn plus(&self) -> Result<PortraitPlus> {
        Ok(self.spec()?.plus()?)
    }

    fn emit(&self, json: &str) -> Result<()> {
        emit(self.out.as_deref(), json)
    }
}

fn emit(out: Option<&Path>, json: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display())),
        None => match std::io::stdout().lock().write_all(json.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn write_svg(path: Option<&Path>, leaves: &[Chord], p: Option<&PortraitPlus>, lam: Option<&LaminationApprox>) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let polygons: Vec<_> = p.map(|p| p.polygons().cloned().collect()).unwrap_or_default();
    let analysis = lam.map(|l| analyze(l, &endpoint_classes(&l.leaves), None));
    let svg = render_analysis(leaves, &polygons, analysis.as_ref(), 600);
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}

fn portrait_kind(e: &PortraitError) -> &'static str {
    match e {
        PortraitError::Degree(_) => "Degree",
        PortraitError::Degenerate { .. } => "Degenerate",
        PortraitError::NotCritical { .. } => "NotCritical",
        PortraitError::Linked { .. } => "Linked",
        PortraitError::Duplicate { .. } => "Duplicate",
        PortraitError::NotFull(_) => "NotFull",
    }
}

#[derive(Deserialize)]
struct Drawing {
    #[serde(default)]
    degree: Option<u32>,
    #[serde(default)]
    leaves: Vec<Chord>,
    #[serde(default)]
    portrait: Vec<Chord>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate(c) => {
            let spec = c.spec()?;
            match validate_report(&spec) {
                Ok(r) => {
                    c.emit(&to_json(&r))?;
                    Ok(if r.full { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                Err(e) => {
                    let diag = serde_json::json!({"valid": false, "kind": portrait_kind(&e), "message": e.to_string()});
                    c.emit(&to_json(&diag))?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Preroot(c) => {
            let s = c.settings()?;
            let p = c.plus()?;
            let (lam, classes) = preroot_qlamination(&p, s.depth, s.resolution)?;
            c.emit(&to_json(&LaminationReport::new(&lam, &classes)))?;
            write_svg(c.svg.as_deref(), &lam.leaves, Some(&p), Some(&lam))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Root(c) => {
            let s = c.settings()?;
            let p = c.plus()?;
            let opts = RootOptions {
                resolution: s.resolution,
                reorder: None,
            };
            let r = build_root(&p, s.depth, opts)?;
            c.emit(&to_json(&r))?;
            write_svg(c.svg.as_deref(), &r.leaves, Some(&p), Some(&r.lamination()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gaps { common: c, preroot } => {
            let s = c.settings()?;
            let p = c.plus()?;
            let (lam, classes) = if preroot {
                preroot_qlamination(&p, s.depth, s.resolution)?
            } else {
                let r = build_root(
                    &p,
                    s.depth,
                    RootOptions {
                        resolution: s.resolution,
                        reorder: None,
                    },
                )?;
                (r.lamination(), r.class_partition())
            };
            let a = analyze(&lam, &classes, None);
            c.emit(&to_json(&GapsReport::new(a, s.kiwi_horizon)))?;
            write_svg(c.svg.as_deref(), &lam.leaves, Some(&p), Some(&lam))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tiles { common: c, generations } => {
            let s = c.settings()?;
            let p = c.plus()?;
            let t = tiles(&p, generations.unwrap_or(s.generations));
            c.emit(&to_json(&t))?;
            if let Some(path) = c.svg.as_deref() {
                let edges: std::collections::BTreeSet<Chord> = t.all().flat_map(|g| g.edges()).collect();
                let edges: Vec<Chord> = edges.into_iter().collect();
                write_svg(Some(path), &edges, Some(&p), None)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { input, svg, size } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let d: Drawing = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            let p = match (d.degree, d.portrait.is_empty()) {
                (Some(deg), false) => Some(lamina::portrait_from_chords(&d.portrait, deg)?),
                _ => None,
            };
            let lam = d.degree.map(|deg| LaminationApprox::new(deg, 0, None, d.leaves.iter().cloned()));
            let polygons: Vec<_> = p.map(|p| p.polygons().cloned().collect()).unwrap_or_default();
            let analysis = lam.as_ref().map(|l| analyze(l, &endpoint_classes(&l.leaves), None));
            fs::write(&svg, render_analysis(&d.leaves, &polygons, analysis.as_ref(), size)).with_context(|| format!("writing {}", svg.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Atlas {
            degree,
            max_denominator,
            depth,
            config,
            out,
        } => {
            if max_denominator < degree as u64 {
                bail!("--max-denominator must be at least the degree");
            }
            let s = load_settings(config.as_deref())?;
            let report = atlas(degree, max_denominator, depth.unwrap_or(s.depth));
            emit(out.as_deref(), &to_json(&report))?;
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
