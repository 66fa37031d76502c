//! Command line front end: argument parsing, dispatch and atomic file output.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{Format, RunConfig};
use crate::diagnostics::{format_float, join_floats, DiagnosticsRecord};
use crate::error::{NskError, Result};
use crate::rarefaction::Lp;
use crate::riemann::WavePattern;
use crate::solver::{Snapshot, Solver};
use crate::verify::{self, VerifyOptions};

/// Samples per rarefaction dump.
const RAREFACTION_SAMPLES: usize = 1001;

#[derive(Debug, Parser)]
#[command(name = "nsklab", version, about = "Composite rarefaction / shock waves of the 1D NSK system")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, overriding `output.dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the random property suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the intermediate state and wave strengths.
    Riemann,
    /// Tabulate the viscous-dispersive shock profile.
    Profile,
    /// Dump the smooth rarefaction and its derivative norms.
    Rarefaction,
    /// Wave interaction norms at the configured times.
    Interactions,
    /// Run the perturbed composite wave.
    Simulate,
    /// Run every property suite.
    Verify,
}

/// A file written under a temporary name and renamed into place on commit.
/// Dropped without commit, the temporary is moved to `<name>.partial`.
pub struct AtomicFile {
    path: PathBuf,
    tmp: PathBuf,
    out: Option<BufWriter<File>>,
}

impl AtomicFile {
    pub fn create(path: &Path) -> Result<Self> {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
        let tmp = path.with_file_name(format!(".{name}.tmp"));
        let out = BufWriter::new(File::create(&tmp)?);
        Ok(Self {
            path: path.to_path_buf(),
            tmp,
            out: Some(out),
        })
    }

    pub fn line(&mut self, s: &str) -> Result<()> {
        let out = self.out.as_mut().expect("open writer");
        out.write_all(s.as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        if let Some(out) = self.out.as_mut() {
            out.flush()?;
        }
        Ok(())
    }

    pub fn commit(mut self) -> Result<()> {
        let out = self.out.take().expect("open writer");
        let file = out.into_inner().map_err(|e| NskError::Io(e.to_string()))?;
        file.sync_all()?;
        fs::rename(&self.tmp, &self.path)?;
        Ok(())
    }
}

impl Drop for AtomicFile {
    fn drop(&mut self) {
        if let Some(mut out) = self.out.take() {
            let _ = out.flush();
            drop(out);
            let mut partial = self.path.clone().into_os_string();
            partial.push(".partial");
            let _ = fs::rename(&self.tmp, partial);
        }
    }
}

pub fn write_atomic(path: &Path, lines: impl IntoIterator<Item = String>) -> Result<()> {
    let mut f = AtomicFile::create(path)?;
    for l in lines {
        f.line(&l)?;
    }
    f.commit()
}

pub fn riemann_block(p: &WavePattern) -> String {
    let rows: [(&str, f64); 16] = [
        ("v_minus", p.left.v),
        ("u_minus", p.left.u),
        ("v_m", p.mid.v),
        ("u_m", p.mid.u),
        ("v_plus", p.right.v),
        ("u_plus", p.right.u),
        ("sigma", p.sigma),
        ("delta_r", p.delta_r),
        ("delta_s", p.delta_s),
        ("delta_r_volume", p.delta_r_volume),
        ("delta_s_velocity", p.delta_s_velocity),
        ("sigma_m", p.sigma_m),
        ("alpha_m", p.alpha_m),
        ("shift_gain", p.shift_gain),
        ("c1", p.c1),
        ("residual", p.residual),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        s.push_str(&format!("{k} = {}\n", format_float(v)));
    }
    s.push_str(&format!("rarefaction_degenerate = {}\n", p.rarefaction_degenerate()));
    s.push_str(&format!("shock_degenerate = {}\n", p.shock_degenerate()));
    s
}

fn snapshot_lines(s: &Snapshot) -> Vec<String> {
    let mut out = vec![Snapshot::HEADER.to_string()];
    for i in 0..s.x.len() {
        out.push(join_floats(&[s.x[i], s.v[i], s.u[i], s.w[i], s.vbar[i], s.ubar[i], s.wbar[i], s.a[i]]));
    }
    out
}

fn profile(cfg: &RunConfig, dir: &Path) -> Result<()> {
    let c = cfg.composite()?;
    let prof = c
        .profile
        .as_ref()
        .ok_or_else(|| NskError::Domain("shock is degenerate, no profile to tabulate".into()))?;
    let mut lines = vec!["xi,v,u,w,vx,ux,wx,vxx,vxxx".to_string()];
    for &xi in &prof.xi {
        let s = prof.eval_profile(xi);
        lines.push(join_floats(&[xi, s.v, s.u, s.w, s.vx, s.ux, s.wx, s.vxx, s.vxxx]));
    }
    write_atomic(&dir.join("profile.csv"), lines)
}

fn rarefaction(cfg: &RunConfig, dir: &Path) -> Result<()> {
    let c = cfg.composite()?;
    let r = &c.rarefaction;
    let mut lines = vec!["t,x,v,u,vx,ux,vxx,uxx,vxxx,uxxx,vxxxx,uxxxx".to_string()];
    let mut norms = vec!["t,p,j,v,u".to_string()];
    for &t in &cfg.rarefaction.times {
        let (a, b) = r.support(t, 20.0);
        for i in 0..RAREFACTION_SAMPLES {
            let x = a + (b - a) * i as f64 / (RAREFACTION_SAMPLES - 1) as f64;
            let s = r.eval(t, x, 4)?;
            let mut row = vec![t, x];
            for k in 0..5 {
                row.push(s.v[k]);
                row.push(s.u[k]);
            }
            lines.push(join_floats(&row));
        }
        for p in [Lp::Finite(1.0), Lp::Finite(2.0), Lp::Infinity] {
            let tab = r.derivative_norms(t, p);
            for j in 0..4 {
                norms.push(join_floats(&[t, tab.p, (j + 1) as f64, tab.v[j], tab.u[j]]));
            }
        }
    }
    write_atomic(&dir.join("rarefaction.csv"), lines)?;
    write_atomic(&dir.join("rarefaction_norms.csv"), norms)
}

fn interactions(cfg: &RunConfig, dir: &Path) -> Result<()> {
    let c = cfg.composite()?;
    let mut lines = vec![crate::composite::InteractionNorms::HEADER.to_string()];
    for t in cfg.interaction_times(&c.pattern) {
        lines.push(join_floats(&c.interaction_norms(t, 0.0)?.values()));
    }
    write_atomic(&dir.join("interactions.csv"), lines)
}

fn simulate(cfg: &RunConfig, dir: &Path) -> Result<()> {
    let c = cfg.composite()?;
    let mut solver = Solver::new(cfg.grid()?, &c, cfg.scheme)?;
    let mut csv = if cfg.wants(Format::Csv) {
        let mut f = AtomicFile::create(&dir.join("timeseries.csv"))?;
        f.line(DiagnosticsRecord::HEADER)?;
        Some(f)
    } else {
        None
    };
    let mut ndjson = if cfg.wants(Format::Ndjson) {
        Some(AtomicFile::create(&dir.join("timeseries.ndjson"))?)
    } else {
        None
    };
    let mut io_err = None;
    let run = solver.run(&cfg.perturbation, |r| {
        let mut emit = || -> Result<()> {
            if let Some(f) = csv.as_mut() {
                f.line(&r.csv_row())?;
            }
            if let Some(f) = ndjson.as_mut() {
                f.line(&serde_json::to_string(r).map_err(|e| NskError::Io(e.to_string()))?)?;
            }
            Ok(())
        };
        if io_err.is_none() {
            io_err = emit().err();
        }
    });
    if let Some(e) = io_err {
        return Err(e);
    }
    // on failure the writers drop here and leave `.partial` files behind
    let out = run?;
    if let Some(f) = csv {
        f.commit()?;
    }
    if let Some(f) = ndjson {
        f.commit()?;
    }
    let mut snaps = Vec::new();
    for (i, s) in out.snapshots.iter().enumerate() {
        let name = format!("snapshot_{i:03}.csv");
        write_atomic(&dir.join(&name), snapshot_lines(s))?;
        snaps.push(serde_json::json!({ "file": name, "t": s.t }));
    }
    let summary = serde_json::json!({
        "pattern": c.pattern,
        "records": out.records.len(),
        "snapshots": snaps,
        "summary": out.summary,
    });
    let text = serde_json::to_string_pretty(&summary).map_err(|e| NskError::Io(e.to_string()))?;
    write_atomic(&dir.join("summary.json"), [text])
}

/// Renders the suite reports and returns whether all passed.
pub fn render_reports(reports: &[verify::SuiteReport]) -> (String, bool) {
    let mut s = String::new();
    let mut all = true;
    for r in reports {
        let ok = r.passed();
        all &= ok;
        s.push_str(&format!("{} {} ({:.2} s)\n", if ok { "PASS" } else { "FAIL" }, r.name, r.seconds));
        for c in &r.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                s.push_str(&format!("  {tag} {}\n", c.name));
            } else {
                s.push_str(&format!("  {tag} {}: {}\n", c.name, c.detail));
            }
        }
    }
    (s, all)
}

fn configure_threads() {
    let Ok(s) = std::env::var("NSKLAB_THREADS") else { return };
    match s.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the worker pool: {e}");
            }
        }
        _ => log::warn!("ignoring NSKLAB_THREADS = {s:?}"),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn dispatch(cli: &Cli) -> Result<i32> {
    configure_threads();
    if cli.command == Command::Verify {
        let reports = verify::run_all(&VerifyOptions {
            seed: cli.seed,
            ..Default::default()
        });
        let (text, all) = render_reports(&reports);
        print!("{text}");
        return Ok(if all { 0 } else { 2 });
    }
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| NskError::Config("--config <path> is required".into()))?;
    let cfg = RunConfig::load(path)?;
    if cli.command == Command::Riemann {
        print!("{}", riemann_block(&cfg.pattern()?));
        return Ok(0);
    }
    let dir = cli.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    fs::create_dir_all(&dir)?;
    match cli.command {
        Command::Profile => profile(&cfg, &dir)?,
        Command::Rarefaction => rarefaction(&cfg, &dir)?,
        Command::Interactions => interactions(&cfg, &dir)?,
        Command::Simulate => simulate(&cfg, &dir)?,
        Command::Riemann | Command::Verify => unreachable!(),
    }
    Ok(0)
}

/// Entry point shared by the binary: parses `args`, reports errors on
/// standard error and maps them to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_file_leaves_partial_on_drop() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.csv");
        {
            let mut f = AtomicFile::create(&p).unwrap();
            f.line("x").unwrap();
        }
        assert!(!p.exists());
        assert_eq!(fs::read_to_string(dir.path().join("a.csv.partial")).unwrap(), "x\n");
        write_atomic(&p, ["y".to_string()]).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "y\n");
        assert!(!dir.path().join(".a.csv.tmp").exists());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["nsklab", "bogus"]), 1);
        assert_eq!(run(["nsklab", "profile"]), 1);
    }

    #[test]
    fn riemann_block_is_flat() {
        let m = crate::GasModel::gamma_law(1.4).unwrap();
        let p = WavePattern::construct(&m, crate::riemann::EndState::new(1.0, 0.0).unwrap(), 0.95, 0.05).unwrap();
        let b = riemann_block(&p);
        assert!(b.lines().all(|l| l.split(" = ").count() == 2));
        assert!(b.contains("v_m = 0.95\n"));
    }
}
