//! `sechain`: build, verify, measure and draw the chain construction.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sechain::ci_solver::{ci_bruteforce, ci_dp, CiError, CiResult};
use sechain::construct::{build_with, ConstructError, EpsilonSearch, DEFAULT_MAX_EPS_EXPONENT};
use sechain::graphs::{drawing_from_level, family};
use sechain::io::{parse, render_svg, serialize, Document};
use sechain::report::{all_passed, Check};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "sechain", version, about = "Exact south-east chain constructions in Minkowski midpoint sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build level k and write P_k, Q_k, the witness pairs and the epsilon history.
    Construct {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        max_k: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_EPS_EXPONENT)]
        max_eps_exponent: u32,
    },
    /// Re-check every invariant stored in a document.
    Verify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Size of a largest convexly independent subset.
    Ci {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Dp)]
        algo: Algo,
        #[arg(long)]
        json: bool,
    },
    /// Write the graph G_k as an edge list, or as JSON.
    Graph {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Embed vertex positions from the level-k construction (implies --json).
        #[arg(long)]
        placements: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 10)]
        max_k: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_EPS_EXPONENT)]
        max_eps_exponent: u32,
    },
    /// Draw a document as SVG.
    Render {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Dp,
    Brute,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::InvalidLevel => Failure::Input(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("output: {e}")))
}

fn write_output(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => emit(out, text),
    }
}

fn check_k(k: u32, max_k: u32) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Input("-k must be at least 1".into()));
    }
    if k > max_k {
        return Err(Failure::Input(format!("-k {k} exceeds --max-k {max_k}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    passed: bool,
    checks: &'a [Check],
}

fn verify(out: &mut dyn Write, input: &Path, json: bool) -> Result<(), Failure> {
    let doc = read_document(input)?;
    let checks = doc.verify().map_err(|e| Failure::Input(e.to_string()))?;
    let passed = all_passed(&checks);
    if json {
        let report =
            serde_json::to_string_pretty(&VerifyReport { passed, checks: &checks }).expect("report serializes");
        emit(out, &format!("{report}\n"))?;
    } else {
        for c in &checks {
            emit(out, &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))?;
        }
    }
    if passed {
        Ok(())
    } else {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

#[derive(Serialize)]
struct CiReport<'a> {
    algo: &'static str,
    points: usize,
    size: usize,
    witness: &'a [sechain::Point],
}

fn ci(out: &mut dyn Write, input: &Path, algo: Algo, json: bool) -> Result<(), Failure> {
    let doc = read_document(input)?;
    let set = doc.point_set().map_err(|e| Failure::Input(e.to_string()))?;
    let (name, result): (&str, Result<CiResult, CiError>) = match algo {
        Algo::Dp => ("dp", ci_dp(&set)),
        Algo::Brute => ("brute", ci_bruteforce(&set)),
    };
    let res = result.map_err(|e| Failure::Input(e.to_string()))?;
    if json {
        let report = CiReport { algo: name, points: set.len(), size: res.size, witness: &res.witness };
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")))
    } else {
        emit(out, &format!("ci = {} ({} points, {name})\n", res.size, set.len()))?;
        for p in &res.witness {
            emit(out, &format!("  {p:?}\n"))?;
        }
        Ok(())
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { k, output, max_k, max_eps_exponent } => {
            check_k(k, max_k)?;
            let level = build_with(k, &EpsilonSearch { max_exponent: max_eps_exponent })?;
            write_output(out, output.as_deref(), &serialize(&Document::from_level(&level)))?;
            eprintln!("k = {k}: |P| = |Q| = {}, witness length {}", level.a.len(), level.witness.len());
            Ok(())
        }
        Command::Verify { input, json } => verify(out, &input, json),
        Command::Ci { input, algo, json } => ci(out, &input, algo, json),
        Command::Graph { k, output, placements, json, max_k, max_eps_exponent } => {
            check_k(k, max_k)?;
            let text = if placements {
                let level = build_with(k, &EpsilonSearch { max_exponent: max_eps_exponent })?;
                let d = drawing_from_level(&level).map_err(|e| Failure::Verification(e.to_string()))?;
                serialize(&Document::from_graph(k, &d.graph, Some(&d.placement)))
            } else if json {
                serialize(&Document::from_graph(k, &family(k), None))
            } else {
                family(k).to_edge_list()
            };
            write_output(out, output.as_deref(), &text)
        }
        Command::Render { input, output } => {
            let doc = read_document(&input)?;
            let svg = render_svg(&doc).map_err(|e| Failure::Input(e.to_string()))?;
            write_output(out, output.as_deref(), &svg)
        }
    }
}

fn main() -> ExitCode {
    let stdout = io::stdout();
    match run(Cli::parse(), &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(msg) | Failure::Verification(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;
    use tempfile::TempDir;

    /// Runs the CLI in-process; returns the would-be exit code and stdout.
    fn exec(args: &[&str]) -> (u8, String) {
        let cli = match Cli::try_parse_from(std::iter::once("sechain").chain(args.iter().copied())) {
            Ok(c) => c,
            Err(e) => return (e.exit_code() as u8, String::new()),
        };
        let mut buf = Vec::new();
        let code = match run(cli, &mut buf) {
            Ok(()) => 0,
            Err(f) => f.code(),
        };
        (code, String::from_utf8(buf).unwrap())
    }

    fn construct(dir: &Path, k: u32) -> String {
        let p = dir.join(format!("level{k}.json")).to_str().unwrap().to_owned();
        assert_eq!(exec(&["construct", "-k", &k.to_string(), "-o", &p]).0, 0);
        p
    }

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let path = dir.join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_owned()
    }

    fn edit(path: &str, f: impl FnOnce(&mut Value)) -> String {
        let mut doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        f(&mut doc);
        let out = format!("{path}.edited.json");
        fs::write(&out, doc.to_string()).unwrap();
        out
    }

    #[test]
    fn construct_then_verify() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 3);
        let (code, text) = exec(&["verify", &p]);
        assert_eq!(code, 0);
        assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
        assert!(text.contains("witness-chain"));
    }

    #[test]
    fn construct_to_stdout_matches_file() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 2);
        let (code, text) = exec(&["construct", "-k", "2"]);
        assert_eq!(code, 0);
        assert_eq!(text, fs::read_to_string(p).unwrap());
    }

    #[test]
    fn construct_rejects_bad_k() {
        assert_eq!(exec(&["construct", "-k", "0"]).0, 2);
        assert_eq!(exec(&["construct", "-k", "11"]).0, 2);
        assert_eq!(exec(&["construct", "-k", "3", "--max-k", "2"]).0, 2);
        assert_eq!(exec(&["construct", "-k", "x"]).0, 2);
    }

    #[test]
    fn construct_reports_epsilon_cap() {
        // The first doubling step needs m = 5.
        assert_eq!(exec(&["construct", "-k", "2", "--max-eps-exponent", "3"]).0, 1);
        assert_eq!(exec(&["construct", "-k", "2", "--max-eps-exponent", "5"]).0, 0);
    }

    #[test]
    fn verify_json_report() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 2);
        let (code, text) = exec(&["verify", &p, "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], Value::Bool(true));
        assert!(v["checks"].as_array().unwrap().len() >= 10);
    }

    #[test]
    fn verify_detects_duplicated_point() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 2);
        let bad = edit(&p, |doc| {
            let pts = doc["objects"]["P"]["points"].as_array_mut().unwrap();
            pts[0] = pts[1].clone();
        });
        let (code, text) = exec(&["verify", &bad]);
        assert_eq!(code, 1);
        assert!(text.contains("FAIL P-chain"));
    }

    #[test]
    fn verify_detects_reordered_witness() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 2);
        let bad = edit(&p, |doc| doc["objects"]["witness"]["pairs"].as_array_mut().unwrap().swap(0, 1));
        assert_eq!(exec(&["verify", &bad]).0, 1);
    }

    #[test]
    fn verify_rejects_malformed_input() {
        let dir = TempDir::new().unwrap();
        let cases = [
            ("empty.json", ""),
            ("truncated.json", "{\"version\":"),
            ("version.json", r#"{"version":"sechain/0","objects":{}}"#),
            ("unknown.json", r#"{"version":"sechain/1","objects":{},"extra":1}"#),
            (
                "zero_den.json",
                r#"{"version":"sechain/1","objects":{"points":{"kind":"points","points":[{"x":{"p":{"num":"1","den":"0"},"q":{"num":"0","den":"1"}},"y":{"p":{"num":"0","den":"1"},"q":{"num":"0","den":"1"}}}]}}}"#,
            ),
            ("nothing.json", r#"{"version":"sechain/1","objects":{}}"#),
        ];
        for (name, text) in cases {
            let p = write(dir.path(), name, text);
            assert_eq!(exec(&["verify", &p]).0, 2, "{name}");
        }
        assert_eq!(exec(&["verify", "/nonexistent/file.json"]).0, 2);
    }

    #[test]
    fn ci_on_base_case() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 1);
        for algo in ["dp", "brute"] {
            let (code, text) = exec(&["ci", &p, "--algo", algo, "--json"]);
            assert_eq!(code, 0);
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["size"], 4);
            assert_eq!(v["points"], 4);
            assert_eq!(v["witness"].as_array().unwrap().len(), 4);
        }
        assert!(exec(&["ci", &p]).1.starts_with("ci = 4 (4 points, dp)"));
    }

    #[test]
    fn ci_brute_force_refuses_large_input() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 3);
        assert_eq!(exec(&["ci", &p, "--algo", "brute"]).0, 2);
        let (code, text) = exec(&["ci", &p, "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(v["size"].as_u64().unwrap() >= 20);
    }

    #[test]
    fn graph_edge_list() {
        let (code, text) = exec(&["graph", "-k", "2"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 8);
        assert!(text.lines().all(|l| l.starts_with('u') && l.contains(" v")));
        assert_eq!(exec(&["graph", "-k", "1"]).1.lines().count(), 3);
    }

    #[test]
    fn graph_json_and_placements_verify() {
        let dir = TempDir::new().unwrap();
        let plain = dir.path().join("g.json").to_str().unwrap().to_owned();
        let placed = dir.path().join("gp.json").to_str().unwrap().to_owned();
        assert_eq!(exec(&["graph", "-k", "3", "--json", "-o", &plain]).0, 0);
        assert_eq!(exec(&["graph", "-k", "3", "--placements", "-o", &placed]).0, 0);
        let v: Value = serde_json::from_str(&fs::read_to_string(&plain).unwrap()).unwrap();
        assert_eq!(v["objects"]["graph"]["edges"].as_array().unwrap().len(), 20);
        assert!(v["objects"]["graph"].get("placements").is_none());
        let v: Value = serde_json::from_str(&fs::read_to_string(&placed).unwrap()).unwrap();
        assert_eq!(v["objects"]["graph"]["placements"].as_object().unwrap().len(), 16);
        for p in [&plain, &placed] {
            let (code, text) = exec(&["verify", p]);
            assert_eq!(code, 0, "{text}");
        }
    }

    #[test]
    fn graph_rejects_bad_k() {
        assert_eq!(exec(&["graph", "-k", "0"]).0, 2);
        assert_eq!(exec(&["graph", "-k", "11"]).0, 2);
    }

    #[test]
    fn render_level_and_empty() {
        let dir = TempDir::new().unwrap();
        let p = construct(dir.path(), 2);
        let svg = dir.path().join("out.svg").to_str().unwrap().to_owned();
        assert_eq!(exec(&["render", &p, "-o", &svg]).0, 0);
        let text = fs::read_to_string(&svg).unwrap();
        assert!(text.starts_with("<svg"));
        assert_eq!(text.matches(r#"<circle class="p""#).count(), 4);
        assert_eq!(exec(&["render", &p]).1, text);

        let empty = write(dir.path(), "empty.json", r#"{"version":"sechain/1","objects":{}}"#);
        assert_eq!(exec(&["render", &empty]).0, 2);
    }
}
