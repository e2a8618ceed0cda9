//! Command-line front end for the `parahoric` library.
//!
//! Exit status: 0 when every internal cross-check passes, 1 when a check
//! fails, 2 for usage errors, 3 when a library call fails.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use parahoric::hecke::{bernstein_z, test_function, trace_table};
use parahoric::latmodel::{enumerate_special_fiber, strata_point_counts, MAX_Q};
use parahoric::newton::mazur_check;
use parahoric::stratify::{
    adm_set, codim1_incidence, perm_set, standard_mu, stratification_report, stratify_json, verify_perm_eq_adm,
};
use parahoric::{build_group_datum, figure, Coweight, Family, GroupDatum};

#[derive(Parser, Debug)]
#[command(name = "parahoric", version, about = "Iwahori level combinatorics for GL_n and GSp_2n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(clap::Args, Debug, Clone)]
struct RunConfig {
    /// Group family.
    #[arg(long, value_enum, default_value = "gl", global = true)]
    group: GroupArg,
    /// Rank parameter: `GL_n`, or `GSp_2n` with half-rank `n`.
    #[arg(long, default_value_t = 2, global = true)]
    n: usize,
    /// Number of entries `-1` in `μ = (0^{n-d}, (-1)^d)` for `GL_n`.
    #[arg(long, default_value_t = 1, global = true)]
    d: usize,
    /// Explicit coweight, comma separated; overrides `--d`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Field sizes for the local model enumeration.
    #[arg(long = "q", global = true)]
    q: Vec<usize>,
    /// Residue characteristic for test functions and trace values.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Degree of the residue field extension.
    #[arg(long, default_value_t = 1, global = true)]
    r: u32,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print every enumerated point instead of the count table.
    #[arg(long, global = true)]
    dump: bool,
    /// Timing and progress on standard error.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupArg {
    Gl,
    Gsp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
    Svg,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Admissible set with its stratification.
    Adm,
    /// Permissible set with its stratification.
    Perm,
    /// Compare the admissible and permissible sets.
    Verify,
    /// Stratum lengths, closures, p-ranks and smooth locus.
    Strata,
    /// Translations above each stratum of codimension one.
    Codim1,
    /// Test function `φ_r` at `q = p^r`.
    Hecke,
    /// Trace of Frobenius on each stratum.
    Trace,
    /// `B(G, μ)` with Kottwitz and Newton points.
    Newton,
    /// Mazur inequality on the admissible set.
    Mazur,
    /// Point counts of the local model special fiber.
    Latcount,
    /// SVG figure of the admissible alcoves.
    Figure,
}

enum Failure {
    Usage(String),
    Module(parahoric::Error),
    Io(std::io::Error),
}

impl From<parahoric::Error> for Failure {
    fn from(e: parahoric::Error) -> Self {
        Failure::Module(e)
    }
}

struct Outcome {
    text: String,
    ok: bool,
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn is_prime_power(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|k| q.is_multiple_of(*k)).expect("q has a prime factor");
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl RunConfig {
    fn family(&self) -> Family {
        match self.group {
            GroupArg::Gl => Family::Gl,
            GroupArg::Gsp => Family::Gsp,
        }
    }

    fn datum(&self) -> Result<Arc<GroupDatum>, Failure> {
        let min = match self.family() {
            Family::Gl => 2,
            Family::Gsp => 1,
        };
        if self.n < min {
            return Err(Failure::Usage(format!("--n must be at least {min} for this group")));
        }
        build_group_datum(self.family(), self.n).map_err(|e| Failure::Usage(e.to_string()))
    }

    fn mu(&self, d: &GroupDatum) -> Result<Coweight, Failure> {
        if let Some(s) = &self.mu {
            let v = s
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("--mu: {e}")))?;
            return d.coweight(v).map_err(|e| Failure::Usage(e.to_string()));
        }
        match self.family() {
            Family::Gl if self.d == 0 || self.d >= self.n => {
                Err(Failure::Usage(format!("--d must satisfy 0 < d < n = {}", self.n)))
            }
            Family::Gl => Ok(standard_mu(d, self.d)?),
            Family::Gsp => Ok(standard_mu(d, self.n)?),
        }
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Usage(format!("format {f:?} is not available for this command")))
        }
    }

    fn prime(&self) -> Result<Option<u64>, Failure> {
        match self.p {
            Some(p) if !is_prime(p) => Err(Failure::Usage(format!("--p {p} is not prime"))),
            p => Ok(p),
        }
    }
}

fn run(cmd: Command, c: &RunConfig) -> Result<Outcome, Failure> {
    let d = c.datum()?;
    match cmd {
        Command::Adm | Command::Perm | Command::Verify | Command::Strata => sets(cmd, c, &d),
        Command::Codim1 => codim1(c, &d),
        Command::Hecke => hecke(c, &d),
        Command::Trace => trace(c, &d),
        Command::Newton | Command::Mazur => newton(cmd, c, &d),
        Command::Latcount => latcount(c, &d),
        Command::Figure => {
            c.format(Format::Svg, &[Format::Svg])?;
            let mu = c.mu(&d)?;
            Ok(Outcome {
                text: figure::alcove_figure(&d, &mu)?,
                ok: true,
            })
        }
    }
}

fn sets(cmd: Command, c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Json, &[Format::Json, Format::Tsv])?;
    if !mu.is_minuscule(d.group) {
        return Err(Failure::Usage(format!("μ = {mu} is not minuscule")));
    }
    let report = verify_perm_eq_adm(d, &mu)?;
    let ok = report.passed();
    let text = match fmt {
        Format::Json => pretty(&stratify_json(d, &mu)?),
        _ => {
            let mut out = String::new();
            match cmd {
                Command::Adm | Command::Perm => {
                    let set = if cmd == Command::Adm { adm_set(d, &mu)? } else { perm_set(d, &mu)? };
                    out.push_str("element\tlength\n");
                    for w in &set {
                        let _ = writeln!(out, "{}\t{}", w.to_text(), w.length());
                    }
                }
                Command::Verify => {
                    out.push_str("mu\tadm\tperm\tequal\n");
                    let _ = writeln!(out, "{mu}\t{}\t{}\t{}", report.adm_size, report.perm_size, report.equal);
                }
                _ => {
                    let rep = stratification_report(d, &mu)?;
                    out.push_str("element\tlength\tsmooth\tp_rank\tclosure_size\n");
                    for s in &rep.strata {
                        let pr = s.p_rank.map_or("-".to_string(), |r| r.to_string());
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{pr}\t{}",
                            s.w.to_text(),
                            s.length,
                            s.is_in_smooth_locus,
                            s.closure.len()
                        );
                    }
                }
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn codim1(c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Json, &[Format::Json, Format::Tsv])?;
    let inc = codim1_incidence(d, &mu)?;
    let ok = inc.values().all(|v| v.len() == 2);
    let text = match fmt {
        Format::Json => {
            let rows: Vec<_> = inc
                .iter()
                .map(|(w, above)| json!({"w": w.to_text(), "translations": above.iter().map(|t| t.to_text()).collect::<Vec<_>>()}))
                .collect();
            pretty(&json!({"mu": mu.as_slice(), "incidence": rows, "exactly_two": ok}))
        }
        _ => {
            let mut out = String::from("element\ttranslations\n");
            for (w, above) in &inc {
                let ts: Vec<_> = above.iter().map(|t| t.to_text()).collect();
                let _ = writeln!(out, "{}\t{}", w.to_text(), ts.join(" "));
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn hecke(c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Tsv, &[Format::Json, Format::Tsv])?;
    let p = c.prime()?.ok_or_else(|| Failure::Usage("hecke needs --p".into()))?;
    if c.r == 0 {
        return Err(Failure::Usage("--r must be at least 1".into()));
    }
    let z = bernstein_z(d, &mu)?;
    let adm = adm_set(d, &mu)?;
    let ok = z.is_central(d)? && z.support().all(|x| adm.contains(x));
    let phi = test_function(d, &mu, p, c.r)?;
    let text = match fmt {
        Format::Json => {
            let rows: Vec<_> = phi
                .iter()
                .map(|(x, v)| json!({"elt": x.to_text(), "value": v.to_string()}))
                .collect();
            pretty(&json!({
                "mu": mu.as_slice(),
                "p": p,
                "r": c.r,
                "phi": rows,
                "z": z.to_json(),
                "central": ok,
            }))
        }
        _ => {
            let mut out = String::from("element\tlength\tvalue\n");
            for (x, v) in &phi {
                let _ = writeln!(out, "{}\t{}\t{v}", x.to_text(), x.length());
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn trace(c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Tsv, &[Format::Json, Format::Tsv])?;
    let p = c.prime()?;
    let table = trace_table(d, &mu)?;
    let z = bernstein_z(d, &mu)?;
    let top = d.translation(&mu)?.length() as i64;
    let ok = table.len() == z.len() && table.iter().all(|(x, e)| z.coeff(x).shift(top) == e.value);
    let q = p.map(|p| num_pow(p, c.r));
    let values = table
        .values()
        .map(|e| q.as_ref().map(|q| e.value.map_coeffs(|a| i128::from(*a)).eval_q(q)).transpose())
        .collect::<Result<Vec<_>, _>>()?;
    let text = match fmt {
        Format::Json => {
            let rows: Vec<_> = table
                .iter()
                .zip(&values)
                .map(|((x, e), v)| {
                    json!({
                        "elt": x.to_text(),
                        "length": e.length,
                        "sign": e.sign,
                        "poly": e.value.to_pairs(),
                        "value": v.map(|v| v.to_string()),
                    })
                })
                .collect();
            pretty(&json!({"mu": mu.as_slice(), "trace": rows, "matches_center": ok}))
        }
        _ => {
            let mut out = String::from("element\tlength\tsign\tpolynomial\tvalue\n");
            for ((x, e), v) in table.iter().zip(&values) {
                let v = v.map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{v}", x.to_text(), e.length, e.sign, e.value.to_q_string());
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn num_pow(p: u64, r: u32) -> i128 {
    i128::from(p).pow(r)
}

fn newton(cmd: Command, c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Json, &[Format::Json, Format::Tsv])?;
    let report = mazur_check(d, &mu)?;
    let ok = report.ok();
    let text = match (cmd, fmt) {
        (Command::Newton, Format::Json) => pretty(&report.to_json()),
        (_, Format::Json) => {
            let mut v = report.to_json();
            v["kottwitz_ok"] = report.kottwitz_ok.into();
            v["dominance_ok"] = report.dominance_ok.into();
            v["violations"] = report.violations.iter().map(|x| x.to_text()).collect::<Vec<_>>().into();
            v["exhausts_b_set"] = report.exhausts_b_set.into();
            pretty(&v)
        }
        _ => {
            let mut out = String::from("nu\tkappa\tbasic\n");
            for b in &report.b_set {
                let _ = writeln!(out, "{b}\t{}\t{}", report.kappa.0, b.is_central());
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn latcount(c: &RunConfig, d: &GroupDatum) -> Result<Outcome, Failure> {
    let mu = c.mu(d)?;
    let fmt = c.format(Format::Tsv, &[Format::Json, Format::Tsv])?;
    let qs = if c.q.is_empty() { vec![2] } else { c.q.clone() };
    if let Some(q) = qs.iter().find(|&&q| !is_prime_power(q) || q > MAX_Q) {
        return Err(Failure::Usage(format!("--q {q} must be a prime power at most {MAX_Q}")));
    }
    if c.dump {
        let mut out = String::new();
        for &q in &qs {
            let pts = enumerate_special_fiber(d, &mu, q)?;
            let _ = writeln!(out, "# {} mu={mu} q={q} points={}", d.group, pts.len());
            for (i, p) in pts.iter().enumerate() {
                let _ = writeln!(out, "point {i}");
                out.push_str(&p.dump());
            }
        }
        return Ok(Outcome { text: out, ok: true });
    }
    let reports = qs
        .par_iter()
        .map(|&q| strata_point_counts(d, &mu, q))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passed() && r.total == r.expected_total);
    let text = match fmt {
        Format::Json => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
        _ => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "# {} mu={} q={}", r.group, r.mu, r.q);
                out.push_str(&r.to_tsv());
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("PARAHORIC_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("PARAHORIC_THREADS={v} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let result = configure_threads().and_then(|_| run(cli.command, &cli.config)).and_then(|o| {
        match &cli.config.out {
            Some(path) => std::fs::write(path, &o.text).map_err(Failure::Io)?,
            None => print!("{}", o.text),
        }
        Ok(o.ok)
    });
    if cli.config.verbose > 0 {
        eprintln!("{:?} finished in {:.3}s", cli.command, start.elapsed().as_secs_f64());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: an internal cross-check failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Module(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
