//! The `mfkit` command line. Exit codes: 0 success, 1 invalid input data or
//! failed check, 2 I/O, parse or usage errors.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::{self, REGISTRY};
use crate::error::Error;
use crate::fact::{cone, Factorization};
use crate::fold::{split_w, stabilize};
use crate::homalg::{
    default_cap, direct_hom_dims, e1_page, hom_classes, ss_degeneration_check, Certificate, E1Variant, SliceMode,
};
use crate::io::{parse_document, parse_document_unchecked, write_document, Document, Payload};
use crate::ring::{parse_poly, FieldSpec, GradedRing};
use crate::selftest;

#[derive(Parser, Debug)]
#[command(name = "mfkit", version, about = "Build and check graded matrix factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the identities of a document's payload.
    Validate { path: String },
    /// Stabilize the Koszul complex of a sequence of variables.
    Stabilize {
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        /// Comma-separated positive weights (default: all 1).
        #[arg(long)]
        weights: Option<String>,
        /// `Q` or `F<p>`, e.g. `F5`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        w: String,
        /// Comma-separated subset of the variables.
        #[arg(long)]
        sequence: String,
        /// Comma-separated splitting of w; found by division when omitted.
        #[arg(long)]
        split: Option<String>,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Cone of the morphism in a document.
    Cone {
        path: String,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Shift a factorization.
    Shift {
        path: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        by: i64,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Dimensions of Hom(E, F[n]) in the homotopy category.
    Hom {
        source: String,
        target: String,
        /// Single value or range `a..b`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        n: String,
        /// Internal degree, single value or range `a..b`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cap")]
        degree: Option<String>,
        /// Entry degree cap for ungraded potentials.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// E1 page from component resolutions, with an optional comparison.
    E1 {
        resolutions: String,
        target: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        degree: String,
        /// Total degrees to tabulate, `a..b`.
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = Variant::Corrected)]
        variant: Variant,
        /// Factorization resolving the same object; compares E1 totals
        /// with direct Hom dimensions.
        #[arg(long)]
        against: Option<String>,
    },
    /// Build a registry example.
    Example {
        name: Option<String>,
        params: Vec<String>,
        /// Run the example's property manifest instead of printing it.
        #[arg(long)]
        check: bool,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Run the built-in verification suites.
    Selftest {
        /// Suite numbers to run (default: all).
        #[arg(long)]
        suite: Vec<u8>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Printed,
    Corrected,
}

/// Failure with an exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Document { .. } | Error::InvalidRing(_) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

fn io_fail(path: &str, e: std::io::Error) -> Fail {
    Fail(2, format!("{path}: {e}"))
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Fail> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| io_fail(path, e))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| io_fail(path, e))
        }
    }

    fn emit(&mut self, path: &str, text: &str) -> Result<(), Fail> {
        if path == "-" {
            self.stdout.write_all(text.as_bytes()).map_err(|e| io_fail(path, e))
        } else {
            fs::write(path, text).map_err(|e| io_fail(path, e))
        }
    }

    fn say(&mut self, text: &str) -> Result<(), Fail> {
        writeln!(self.stdout, "{text}").map_err(|e| io_fail("-", e))
    }

    fn load(&mut self, path: &str) -> Result<Document, Fail> {
        let text = self.read(path)?;
        parse_document(&text).map_err(|e| Fail(2, format!("{path}: {e}")))
    }

    fn load_factorization(&mut self, path: &str) -> Result<Factorization, Fail> {
        let doc = self.load(path)?;
        Ok(doc.as_factorization().map_err(|e| Fail(2, format!("{path}: {e}")))?.clone())
    }
}

/// Parses `5` or `-3..3` (inclusive).
fn parse_range(s: &str) -> Result<Vec<i64>, Fail> {
    let bad = || Fail(2, format!("invalid range `{s}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, Fail> {
    match s {
        "Q" | "q" => Ok(FieldSpec::Rationals),
        _ => {
            let p = s
                .strip_prefix('F')
                .and_then(|p| p.parse::<u32>().ok())
                .ok_or_else(|| Fail(2, format!("invalid field `{s}`, expected Q or F<p>")))?;
            Ok(FieldSpec::prime(p).map_err(|e| Fail(2, e.to_string()))?)
        }
    }
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io, stderr) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>, stderr: &mut dyn Write) -> Result<i32, Fail> {
    match command {
        Command::Validate { path } => validate(io, &path),
        Command::Stabilize { vars, weights, field, w, sequence, split, out } => {
            let vars = list(&vars);
            let weights = match weights {
                Some(ws) => list(&ws)
                    .iter()
                    .map(|x| x.parse::<u32>().map_err(|_| Fail(2, format!("invalid weight `{x}`"))))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![1; vars.len()],
            };
            let ring = GradedRing::new(vars, weights, parse_field(&field)?).map_err(|e| Fail(2, e.to_string()))?;
            let w = parse_poly(&ring, &w).map_err(|e| Fail(2, e.to_string()))?;
            let seq = list(&sequence);
            let seq: Vec<&str> = seq.iter().map(String::as_str).collect();
            let splitting = match split {
                Some(s) => list(&s)
                    .iter()
                    .map(|p| parse_poly(&ring, p).map_err(|e| Fail(2, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
                None => split_w(&w, &seq)?,
            };
            let e = stabilize(&ring, &seq, &w, &splitting)?;
            let _ = writeln!(stderr, "components: rank E0 = {}, rank E-1 = {}", e.e0().rank(), e.e1().rank());
            io.emit(&out, &write_document(&Document::factorization(&e)))?;
            Ok(0)
        }
        Command::Cone { path, out } => {
            let doc = io.load(&path)?;
            let Payload::Morphism(g) = &doc.payload else {
                return Err(Fail(2, format!("{path}: expected a morphism, found a {}", doc.payload.kind())));
            };
            let c = cone(g)?;
            io.emit(&out, &write_document(&Document::factorization(&c)))?;
            Ok(0)
        }
        Command::Shift { path, by, out } => {
            let e = io.load_factorization(&path)?;
            io.emit(&out, &write_document(&Document::factorization(&e.shift(by))))?;
            Ok(0)
        }
        Command::Hom { source, target, n, degree, cap } => {
            let e = io.load_factorization(&source)?;
            let f = io.load_factorization(&target)?;
            if e.w() != f.w() || e.ring() != f.ring() {
                return Err(Fail(1, format!("potentials differ: {} vs {}", e.w(), f.w())));
            }
            let ns = parse_range(&n)?;
            let modes: Vec<SliceMode> = if e.grading().is_graded() && cap.is_none() {
                parse_range(degree.as_deref().unwrap_or("0"))?.into_iter().map(|t| SliceMode::Graded { t }).collect()
            } else {
                if degree.is_some() {
                    return Err(Fail(1, format!("w = {} is not homogeneous; use --cap", e.w())));
                }
                vec![SliceMode::Capped { cap: cap.unwrap_or_else(|| default_cap(&e, &f)) }]
            };
            io.say("n\tmode\tdim\tcertificate")?;
            for &n in &ns {
                for &mode in &modes {
                    let h = hom_classes(&e, &f, n, mode)?;
                    let cert = match h.certificate {
                        Certificate::Complete => "complete".to_string(),
                        Certificate::UpToCap(c) => format!("up to degree {c}"),
                    };
                    let mode = match mode {
                        SliceMode::Graded { t } => format!("t={t}"),
                        SliceMode::Capped { cap } => format!("cap={cap}"),
                    };
                    io.say(&format!("{n}\t{mode}\t{}\t{cert}", h.dim))?;
                }
            }
            Ok(0)
        }
        Command::E1 { resolutions, target, degree, window, variant, against } => {
            let doc = io.load(&resolutions)?;
            let Payload::Resolutions(res) = &doc.payload else {
                return Err(Fail(2, format!("{resolutions}: expected resolutions, found a {}", doc.payload.kind())));
            };
            let f = io.load_factorization(&target)?;
            let w = parse_range(&window)?;
            let window = (w[0], *w.last().expect("nonempty"));
            let variant = match variant {
                Variant::Printed => E1Variant::Printed,
                Variant::Corrected => E1Variant::Corrected,
            };
            let against = against.map(|p| io.load_factorization(&p)).transpose()?;
            let mut code = 0;
            for t in parse_range(&degree)? {
                let table = e1_page(res, &f, t, window, variant)?;
                io.say(table.to_string().trim_end())?;
                if let Some(p) = &against {
                    let direct = direct_hom_dims(p, &f, t, window)?;
                    let report = ss_degeneration_check(&table, &direct)?;
                    io.say(report.to_string().trim_end())?;
                    let verdict = if !report.bound_holds() {
                        code = 1;
                        "bound violated"
                    } else if report.degenerates() {
                        "degenerates at E1"
                    } else {
                        "bound holds"
                    };
                    io.say(&format!("verdict: {verdict}"))?;
                }
            }
            Ok(code)
        }
        Command::Example { name, params, check, out } => {
            let Some(name) = name else {
                for entry in REGISTRY {
                    io.say(&format!("{:<14} {:<32} {}", entry.name, entry.usage, entry.summary))?;
                }
                return Ok(0);
            };
            let entry = match corpus::lookup(&name) {
                Ok(e) => e,
                Err(e) => {
                    let names: Vec<&str> = REGISTRY.iter().map(|e| e.name).collect();
                    return Err(Fail(1, format!("{e}; available: {}", names.join(", "))));
                }
            };
            let e = entry.build(&params)?;
            if check {
                let mut code = 0;
                for c in entry.check(&e, &params)? {
                    if !c.passed {
                        code = 1;
                    }
                    io.say(&c.to_string())?;
                }
                return Ok(code);
            }
            io.emit(&out, &write_document(&Document::factorization(&e)))?;
            Ok(0)
        }
        Command::Selftest { suite } => {
            let numbers: Vec<u8> = if suite.is_empty() { (1..=9).collect() } else { suite };
            let mut code = 0;
            for n in numbers {
                let report = selftest::run_suite(n).ok_or_else(|| Fail(2, format!("no suite {n}")))?;
                if !report.passed() {
                    code = 1;
                }
                io.say(&report.to_string())?;
            }
            Ok(code)
        }
    }
}

fn validate(io: &mut Io<'_>, path: &str) -> Result<i32, Fail> {
    let text = io.read(path)?;
    let doc = parse_document_unchecked(&text).map_err(|e| Fail(2, format!("{path}: {e}")))?;
    if let Payload::Factorization(e) = &doc.payload {
        let report = e.validate();
        if report.is_valid() {
            io.say(&format!("valid factorization of {} (rank E0 = {}, rank E-1 = {})", e.w(), e.e0().rank(), e.e1().rank()))?;
            return Ok(0);
        }
        io.say(report.to_string().trim_end())?;
        return Ok(1);
    }
    match doc.check() {
        Ok(()) => {
            io.say(&format!("valid {}", doc.payload.kind()))?;
            Ok(0)
        }
        Err(e) => {
            io.say(&e.to_string())?;
            Ok(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["mfkit"];
        full.extend_from_slice(args);
        let code = run(full, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn stabilize_examples() {
        let (code, out, err) = call(&["stabilize", "--vars", "x", "--w", "x^2", "--sequence", "x"], "");
        assert_eq!(code, 0, "{err}");
        let e = parse_document(&out).unwrap().as_factorization().unwrap().clone();
        assert_eq!((e.e0().rank(), e.e1().rank()), (1, 1));
        assert_eq!(e.phi0().get(0, 0).to_string(), "x");
        assert!(err.contains("rank E0 = 1"));
        let (code, _, err) = call(&["stabilize", "--vars", "x,y,z", "--w", "z", "--sequence", "x,y"], "");
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn validate_via_stdin() {
        let (_, doc, _) = call(&["example", "mf_pair", "1", "3"], "");
        assert_eq!(call(&["validate", "-"], &doc).0, 0);
        let corrupted = doc.replacen(r#""exps": [2]"#, r#""exps": [1]"#, 1);
        assert_ne!(corrupted, doc);
        let (code, out, _) = call(&["validate", "-"], &corrupted);
        assert_eq!(code, 1);
        assert!(out.contains("phi"), "{out}");
        assert_eq!(call(&["validate", "/nonexistent/file.json"], "").0, 2);
        assert_eq!(call(&["validate", "-"], "not json").0, 2);
    }

    #[test]
    fn unknown_example_lists_registry() {
        let (code, _, err) = call(&["example", "nope"], "");
        assert_eq!(code, 1);
        assert!(err.contains("mf_pair") && err.contains("split_ses_tot"));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..1").ok().unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_range("4").ok().unwrap(), vec![4]);
        assert!(parse_range("3..1").is_err());
    }
}
