//! Command-line front end. [`run`] parses arguments, validates the input
//! document and renders a deterministic report.
//!
//! CSV reports use the columns `k,p,unnormalized,normalized` (plus
//! `twisted,gap` for `compare`); rationals are always written as `p/q`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::builders::corpus::corpus;
use crate::builders::tower_report;
use crate::chain::{betti, relative_to_cells, validate_complex, BettiVector, EquivariantComplex};
use crate::covers::{approximate, compare_with_twisted, parse_cyclic_schedule, ApproxSequence, QuotientSchedule};
use crate::error::Error;
use crate::group_ring::{Cocycle, Specialization};
use crate::io::{load, save, to_text, Document};
use crate::sutured::{
    duality_check, half_lives_half_dies, is_balanced, taut_certify, validate_sutured, weak_iso_check, Side,
};

const DEFAULT_SCHEDULE: &str = "cyclic:1..64";

#[derive(Debug, Parser)]
#[command(name = "l2betti", version, about = "Twisted and finite-cover Betti numbers of group-ring chain complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the complex, its cocycles and quotients, and sutured data if present.
    Validate(Common),
    /// Betti numbers over Q, or of the cover for `--quotient`.
    Betti {
        #[command(flatten)]
        common: Common,
        /// Named quotient from the input file.
        #[arg(long)]
        quotient: Option<String>,
    },
    /// Betti numbers over Q(t) twisted by `--phi`.
    Twisted(Common),
    /// Normalized Betti numbers along a cyclic schedule.
    Approx(Common),
    /// Cover sequence against the twisted Betti numbers.
    Compare(Common),
    /// Sutured validation, balance, duality and rank checks.
    SuturedCheck(Common),
    /// Tautness verdict for `(M, R-)` along `--phi`.
    Taut(Common),
    /// Homology of the glued tower up to `--levels`.
    Tower {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// List the built-in examples, or write them to the `--out` directory.
    Corpus {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-save a document in canonical form.
    Convert(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input document.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Name of a cocycle in the input file.
    #[arg(long)]
    pub phi: Option<String>,
    /// `cyclic:a,b,c` or `cyclic:a..b`.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Compute relative to this side of a sutured input.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Minus,
    Plus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Minus => Side::Minus,
            SideArg::Plus => Side::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Bad input or usage; exit 2.
    Invalid(String),
    /// Exit 1.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(m) => Failure::Internal(format!("i/o error: {m}")),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Runs one command; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok(Emit { report, out }) => match out {
            Some(path) => match std::fs::write(&path, report) {
                Ok(()) => ok(String::new()),
                Err(e) => fail(1, format!("i/o error: {}: {e}", path.display())),
            },
            None => ok(report),
        },
        Err(Failure::Invalid(m)) => fail(2, m),
        Err(Failure::Internal(m)) => fail(1, m),
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}

fn fail(code: i32, message: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

struct Emit {
    report: String,
    out: Option<PathBuf>,
}

fn execute(cmd: &Command) -> Run<Emit> {
    match cmd {
        Command::Validate(c) => emit(c, validate_cmd(c)),
        Command::Betti { common, quotient } => emit(common, betti_cmd(common, quotient.as_deref())),
        Command::Twisted(c) => emit(c, twisted_cmd(c)),
        Command::Approx(c) => emit(c, approx_cmd(c)),
        Command::Compare(c) => emit(c, compare_cmd(c)),
        Command::SuturedCheck(c) => emit(c, sutured_cmd(c)),
        Command::Taut(c) => emit(c, taut_cmd(c)),
        Command::Tower { common, levels } => emit(common, tower_cmd(common, *levels)),
        Command::Corpus { out } => corpus_cmd(out.as_deref()).map(|report| Emit { report, out: None }),
        Command::Convert(c) => {
            let doc = load_checked(c)?;
            Ok(Emit {
                report: to_text(&doc),
                out: c.out.clone(),
            })
        }
    }
}

fn emit(c: &Common, report: Run<String>) -> Run<Emit> {
    Ok(Emit {
        report: report?,
        out: c.out.clone(),
    })
}

fn text_only(c: &Common, what: &str) -> Run<()> {
    if c.format == Format::Csv {
        return Err(Failure::Invalid(format!("{what} has no csv report")));
    }
    Ok(())
}

/// Checks `∂∂ = 0` under the augmentation and every cocycle and quotient the
/// document names. Returns one report line per check and the failures.
fn check_specializations(doc: &Document) -> Run<(String, Vec<String>)> {
    let x = &doc.complex;
    let mut out = String::new();
    let mut bad = Vec::new();
    let verdict = |v: bool| if v { "valid" } else { "invalid" };
    let chk = validate_complex(x, &Specialization::Augmentation)?;
    let _ = writeln!(out, "cell_counts: {}", join(x.cell_counts()));
    let _ = writeln!(out, "complex: {}", verdict(chk.valid));
    if !chk.valid {
        bad.push(format!("boundary composite nonzero in degrees {}", join(&chk.failing_degrees)));
    }
    for (name, phi) in &doc.cocycles {
        let t = validate_complex(x, &Specialization::Twist(phi.clone()))?;
        let _ = writeln!(out, "cocycle {name}: {}", verdict(t.valid));
        if !t.valid {
            bad.push(format!("boundary composite nonzero under cocycle {name} in degrees {}", join(&t.failing_degrees)));
        }
    }
    for (name, q) in &doc.quotients {
        let t = validate_complex(x, &Specialization::Quotient(q.clone()))?;
        let _ = writeln!(out, "quotient {name}: degree {}, {}", q.degree(), verdict(t.valid));
        if !t.valid {
            bad.push(format!("boundary composite nonzero under quotient {name} in degrees {}", join(&t.failing_degrees)));
        }
    }
    Ok((out, bad))
}

/// Loads the input and refuses it unless every specialization it names
/// yields a chain complex.
fn load_checked(c: &Common) -> Run<Document> {
    let doc = load(&c.input)?;
    let (_, bad) = check_specializations(&doc)?;
    if !bad.is_empty() {
        return Err(Failure::Invalid(bad.join("\n")));
    }
    Ok(doc)
}

fn named_phi(c: &Common, doc: &Document) -> Run<(String, Cocycle)> {
    let name = c
        .phi
        .clone()
        .ok_or_else(|| Failure::Invalid("--phi is required".into()))?;
    let phi = doc.cocycle(&name)?.clone();
    if phi.is_zero() {
        return Err(Error::ZeroCocycle.into());
    }
    let chk = validate_complex(&doc.complex, &Specialization::Twist(phi.clone()))?;
    if !chk.valid {
        return Err(Failure::Invalid(format!("complex is not a chain complex under {name}")));
    }
    Ok((name, phi))
}

/// The complex itself, or its pair with the requested sutured side.
fn target(c: &Common, doc: &Document) -> Run<EquivariantComplex> {
    match c.side {
        None => Ok(doc.complex.clone()),
        Some(side) => {
            let sc = doc.sutured()?;
            Ok(relative_to_cells(&sc.space, &sc.side(side.into()))?)
        }
    }
}

fn schedule(c: &Common, phi: &Cocycle) -> Run<QuotientSchedule> {
    let spec = c.schedule.as_deref().unwrap_or(DEFAULT_SCHEDULE);
    Ok(QuotientSchedule::cyclic(phi, &parse_cyclic_schedule(spec)?)?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn rat(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rats(v: &[BigRational]) -> String {
    v.iter().map(rat).collect::<Vec<_>>().join(",")
}

fn phi_line(name: &str, phi: &Cocycle) -> String {
    format!("phi: {name} = ({})\n", join(phi.values()))
}

fn side_line(c: &Common) -> String {
    match c.side {
        Some(s) => format!("relative_to: {}\n", Side::from(s)),
        None => String::new(),
    }
}

fn validate_cmd(c: &Common) -> Run<String> {
    text_only(c, "validate")?;
    let doc = load(&c.input)?;
    let (mut out, mut bad) = check_specializations(&doc)?;
    if doc.is_sutured() {
        let s = validate_sutured(&doc.sutured()?);
        let _ = writeln!(out, "sutured: {}", if s.valid { "valid" } else { "invalid" });
        for p in &s.problems {
            let _ = writeln!(out, "problem: {p}");
        }
        bad.extend(s.problems);
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Invalid(format!("{out}{}", bad.join("\n"))))
    }
}

fn betti_rows(out: &mut String, k: usize, b: &BettiVector) {
    for (p, (u, n)) in b.unnormalized.iter().zip(b.normalized()).enumerate() {
        let _ = writeln!(out, "{k},{p},{u},{}", rat(&n));
    }
}

fn betti_cmd(c: &Common, quotient: Option<&str>) -> Run<String> {
    let doc = load_checked(c)?;
    let x = target(c, &doc)?;
    let s = match quotient {
        Some(name) => Specialization::Quotient(doc.quotient(name)?.clone()),
        None => Specialization::Augmentation,
    };
    let b = betti(&x, &s)?;
    let mut out = String::new();
    match c.format {
        Format::Csv => {
            out.push_str("k,p,unnormalized,normalized\n");
            betti_rows(&mut out, b.index, &b);
        }
        Format::Text => {
            out.push_str(&side_line(c));
            if let Some(name) = quotient {
                let _ = writeln!(out, "quotient: {name}");
            }
            let _ = writeln!(out, "index: {}", b.index);
            let _ = writeln!(out, "betti: {}", join(&b.unnormalized));
            let _ = writeln!(out, "normalized: {}", rats(&b.normalized()));
            let _ = writeln!(out, "euler: {}", b.euler());
        }
    }
    Ok(out)
}

fn twisted_cmd(c: &Common) -> Run<String> {
    let doc = load_checked(c)?;
    let (name, phi) = named_phi(c, &doc)?;
    let x = target(c, &doc)?;
    let b = betti(&x, &Specialization::Twist(phi.clone()))?;
    let mut out = String::new();
    match c.format {
        Format::Csv => {
            out.push_str("p,twisted_betti\n");
            for (p, v) in b.unnormalized.iter().enumerate() {
                let _ = writeln!(out, "{p},{v}");
            }
        }
        Format::Text => {
            out.push_str(&side_line(c));
            out.push_str(&phi_line(&name, &phi));
            let _ = writeln!(out, "twisted_betti: {}", join(&b.unnormalized));
        }
    }
    Ok(out)
}

fn approx_table(out: &mut String, seq: &ApproxSequence) {
    out.push_str("approx_table:\n");
    for item in &seq.items {
        let _ = writeln!(
            out,
            "  k={} unnormalized={} normalized={}",
            item.degree,
            join(&item.betti.unnormalized),
            rats(&item.betti.normalized())
        );
    }
}

fn limit_lines(out: &mut String, seq: &ApproxSequence) {
    if let Some(l) = &seq.limit {
        let _ = writeln!(out, "limit_estimate: {}", rats(&l.limit));
        let _ = writeln!(out, "limit_slope: {}", rats(&l.slope));
    }
}

fn approx_cmd(c: &Common) -> Run<String> {
    let doc = load_checked(c)?;
    let (name, phi) = named_phi(c, &doc)?;
    let x = target(c, &doc)?;
    let seq = approximate(&x, &schedule(c, &phi)?)?;
    let mut out = String::new();
    match c.format {
        Format::Csv => {
            out.push_str("k,p,unnormalized,normalized\n");
            for item in &seq.items {
                betti_rows(&mut out, item.degree, &item.betti);
            }
        }
        Format::Text => {
            out.push_str(&side_line(c));
            out.push_str(&phi_line(&name, &phi));
            approx_table(&mut out, &seq);
            limit_lines(&mut out, &seq);
        }
    }
    Ok(out)
}

fn compare_cmd(c: &Common) -> Run<String> {
    let doc = load_checked(c)?;
    let (name, phi) = named_phi(c, &doc)?;
    let x = target(c, &doc)?;
    let cmp = compare_with_twisted(&x, &phi, &schedule(c, &phi)?)?;
    let mut out = String::new();
    match c.format {
        Format::Csv => {
            out.push_str("k,p,unnormalized,normalized,twisted,gap\n");
            for (item, gaps) in cmp.sequence.items.iter().zip(&cmp.gaps) {
                for (p, (u, n)) in item.betti.unnormalized.iter().zip(item.betti.normalized()).enumerate() {
                    let _ = writeln!(out, "{},{p},{u},{},{},{}", item.degree, rat(&n), cmp.twisted.get(p), rat(&gaps[p]));
                }
            }
        }
        Format::Text => {
            out.push_str(&side_line(c));
            out.push_str(&phi_line(&name, &phi));
            let _ = writeln!(out, "twisted_betti: {}", join(&cmp.twisted.unnormalized));
            approx_table(&mut out, &cmp.sequence);
            limit_lines(&mut out, &cmp.sequence);
            let _ = writeln!(out, "final_gaps: {}", rats(cmp.final_gaps()));
            let _ = writeln!(out, "k_max: {}", cmp.k_max);
            let _ = writeln!(out, "converged: {}", cmp.converged);
        }
    }
    Ok(out)
}

fn sutured_cmd(c: &Common) -> Run<String> {
    text_only(c, "sutured-check")?;
    let doc = load_checked(c)?;
    let sc = doc.sutured()?;
    let chk = validate_sutured(&sc);
    if !chk.valid {
        return Err(Failure::Invalid(format!("sutured data invalid: {}", chk.problems.join("; "))));
    }
    let mut out = String::new();
    let e = &chk.euler;
    let _ = writeln!(out, "sutured: valid");
    let _ = writeln!(out, "flags: {}", flags_text(&sc.flags));
    let _ = writeln!(
        out,
        "euler: space={} boundary={} r_plus={} r_minus={} gamma={} sutures={}",
        e.space, e.boundary, e.r_plus, e.r_minus, e.gamma, e.sutures
    );
    let _ = writeln!(out, "gamma_components: {}", chk.gamma_components);
    let bal = is_balanced(&sc);
    let _ = writeln!(out, "balanced: {}", bal.balanced);
    let _ = writeln!(out, "chi_pair_minus: {}", bal.chi_pair);
    let mut specs = vec![("Q".to_string(), Specialization::Augmentation)];
    let phi = match &c.phi {
        Some(_) => Some(named_phi(c, &doc)?),
        None => None,
    };
    if let Some((name, p)) = &phi {
        specs.push((name.clone(), Specialization::Twist(p.clone())));
    }
    for (label, s) in &specs {
        let d = duality_check(&sc, s)?;
        let _ = writeln!(
            out,
            "duality[{label}]: minus_with_gamma={} plus={} plus_with_gamma={} minus={} holds={}",
            join(&d.minus_with_gamma.unnormalized),
            join(&d.plus.unnormalized),
            join(&d.plus_with_gamma.unnormalized),
            join(&d.minus.unnormalized),
            d.holds
        );
        if !sc.boundary().is_empty() {
            let h = half_lives_half_dies(&sc.space, s)?;
            let _ = writeln!(
                out,
                "half_lives[{label}]: boundary_b1={} image={} kernel={} holds={}",
                h.boundary_betti, h.image_rank, h.kernel_rank, h.holds
            );
        }
    }
    if let (Some((name, p)), true) = (&phi, bal.balanced) {
        let w = weak_iso_check(&sc, p)?;
        let _ = writeln!(
            out,
            "weak_iso[{name}]: source_b1={} image={} injective={} pair_b1={} consistent={}",
            w.source_b1, w.image_rank, w.injective, w.pair_b1, w.consistent
        );
    }
    Ok(out)
}

fn flags_text(f: &crate::sutured::DeclaredFlags) -> String {
    format!(
        "irreducible={} gamma_incompressible={} rminus_incompressible={} infinite_pi1={}",
        f.irreducible, f.gamma_incompressible, f.rminus_incompressible, f.infinite_pi1
    )
}

fn taut_cmd(c: &Common) -> Run<String> {
    text_only(c, "taut")?;
    let doc = load_checked(c)?;
    let sc = doc.sutured()?;
    let (name, phi) = named_phi(c, &doc)?;
    let rep = taut_certify(&sc, &phi, &schedule(c, &phi)?, doc.certificate.as_ref())?;
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", rep.verdict);
    out.push_str(&phi_line(&name, &phi));
    let _ = writeln!(out, "flags: {}", flags_text(&rep.flags));
    let _ = writeln!(out, "twisted_betti: {}", join(&rep.twisted_betti.unnormalized));
    approx_table(&mut out, &rep.approx);
    match &rep.certificate {
        Some(cert) => {
            let dets: Vec<String> = cert.determinants.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "certificate_det: {}", dets.join("; "));
            let _ = writeln!(out, "certificate_certified: {}", cert.certified);
        }
        None => out.push_str("certificate_det: none\n"),
    }
    let _ = writeln!(out, "contradiction: {}", rep.contradiction);
    Ok(out)
}

fn tower_cmd(c: &Common, levels: usize) -> Run<String> {
    let doc = load_checked(c)?;
    let sc = doc.sutured()?;
    let chk = validate_sutured(&sc);
    if !chk.valid {
        return Err(Failure::Invalid(format!("sutured data invalid: {}", chk.problems.join("; "))));
    }
    let mut out = String::new();
    if c.format == Format::Csv {
        out.push_str("n,p,betti,relative\n");
    }
    for n in 0..=levels {
        let r = tower_report(&sc, &sc.pairing, n)?;
        match c.format {
            Format::Csv => {
                for p in 0..r.betti.unnormalized.len() {
                    let _ = writeln!(out, "{n},{p},{},{}", r.betti.get(p), r.relative.get(p));
                }
            }
            Format::Text => {
                if n == 0 {
                    let _ = writeln!(out, "sigma_euler: {}", r.sigma_euler);
                    let _ = writeln!(out, "sigma_complexity: {}", r.sigma_complexity);
                }
                let _ = writeln!(
                    out,
                    "level {n}: betti={} relative={} excision_holds={} norm_estimate={}",
                    join(&r.betti.unnormalized),
                    join(&r.relative.unnormalized),
                    r.excision_holds,
                    r.norm_estimate
                );
            }
        }
    }
    Ok(out)
}

fn corpus_cmd(dir: Option<&Path>) -> Run<String> {
    let items = corpus()?;
    let mut out = String::new();
    for (name, doc) in &items {
        match dir {
            Some(d) => {
                let path = d.join(format!("{name}.cx"));
                save(&path, doc)?;
                let _ = writeln!(out, "{}", path.display());
            }
            None => {
                let kind = if doc.is_sutured() { "sutured" } else { "complex" };
                let _ = writeln!(out, "{name} {kind} cells={}", join(doc.complex.cell_counts()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let o = run(["l2betti", "betti", "--in", "x.cx", "--bogus"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout.is_empty());
    }

    #[test]
    fn missing_file_is_internal() {
        let o = run(["l2betti", "betti", "--in", "/nonexistent/x.cx"]);
        assert_eq!(o.code, 1);
    }

    #[test]
    fn corpus_listing() {
        let o = run(["l2betti", "corpus"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.lines().any(|l| l.starts_with("torus complex")));
    }
}
