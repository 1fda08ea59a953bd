//! `tropfano`: command line front end. Reads JSON inputs from explicit
//! paths and writes one JSON report to standard output.
//!
//! Exit codes: 0 success, 1 failed regression run, 2 bad input, 3 internal
//! error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tropfano::fano::{
    classical_plane_fano_trop, contains_line, fano_general, fano_linear, genericity_check, pairing_label, pairing_line,
    FanoResult,
};
use tropfano::matroids::{bergman_fan, matroid_from_columns};
use tropfano::numkernel::{parse_subset_label, TMatrix, TRatFn};
use tropfano::polyhedra::{contained_in_complex, fan_stats, h_to_v, Containment, Orbit, PolyComplex};
use tropfano::prevariety::{intersect_system, TropSystem};
use tropfano::regression;
use tropfano::toriclib::{
    cayley_from_line, realize_in_toric, toric_binomials, trop_toric, verify_cayley, CayleyStructure, LatticePointSet,
};
use tropfano::troplin::{check_3term, realize_space, recession_fan, tree_report, TropPluecker};

#[derive(Parser)]
#[command(name = "tropfano", version, about = "Exact tropical Fano schemes and tropicalized linear spaces")]
struct Cli {
    /// Include wall-clock timing in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Valuated maximal minors of a matrix over Q(t).
    Plucker {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The tropicalized linear space of a Plücker vector.
    TropLinear {
        #[arg(long)]
        plucker: PathBuf,
        /// Coordinates set to infinity, e.g. `0,3`.
        #[arg(long, value_delimiter = ',')]
        orbit: Vec<usize>,
    },
    /// Bergman fan of the column matroid of a matrix.
    Bergman {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Intersection of tropical hypersurfaces.
    Prevariety {
        #[arg(long)]
        system: PathBuf,
    },
    /// `F_d` of a tropical linear space by incidence relations.
    FanoLinear {
        #[arg(long)]
        plucker: PathBuf,
        #[arg(long)]
        d: usize,
        /// Plücker coordinates set to infinity.
        #[arg(long, value_delimiter = ',')]
        orbit: Vec<usize>,
    },
    /// `F_1` of an arbitrary complex by projection.
    FanoGeneral {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        orbit: Vec<usize>,
    },
    /// Whether a tropical line lies in a complex.
    Contains {
        #[arg(long)]
        plucker: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        /// Line coordinates set to infinity.
        #[arg(long, value_delimiter = ',')]
        orbit: Vec<usize>,
    },
    /// Tropicalized Fano scheme of lines of a classical plane.
    PlaneFanoTrop {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Mutual containment of two complexes.
    Compare {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Genericity conditions of a plane.
    Generic {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The classical line through the pair points of a pairing.
    PairingLine {
        #[arg(long)]
        matrix: PathBuf,
        /// Pairs such as `01,23,45`.
        #[arg(long, value_delimiter = ',')]
        pairing: Vec<String>,
    },
    /// `trop X_A` as a single cell.
    ToricTrop {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Binomials of a lattice basis of the relations of `A`.
    ToricBinomials {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Checks a Cayley structure.
    CayleyVerify {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        cayley: PathBuf,
    },
    /// Cayley structure of a tropical line in `trop X_A`.
    CayleyExtract {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        plucker: PathBuf,
    },
    /// A classical line in `X_A` tropicalizing to a given line.
    ToricRealize {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        plucker: PathBuf,
    },
    /// Runs the regression suite of worked examples.
    VerifyPaper {
        /// Criteria to run, e.g. `1,2,8`; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Serialize)]
struct CommandReport {
    command: String,
    /// SHA-256 of every input file, keyed by flag.
    inputs: BTreeMap<String, String>,
    outputs: Value,
    provenance: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

enum Fail {
    Input(String),
    Internal(String),
    /// The regression run completed with failures.
    Regression(String),
}

impl From<tropfano::Error> for Fail {
    fn from(e: tropfano::Error) -> Self {
        if e.is_precondition() {
            Fail::Input(e.to_string())
        } else {
            Fail::Internal(e.to_string())
        }
    }
}

type Res<T> = Result<T, Fail>;

struct Inputs(BTreeMap<String, String>);

impl Inputs {
    fn read<T: DeserializeOwned>(&mut self, flag: &str, path: &Path) -> Res<T> {
        let bytes = std::fs::read(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
        let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.0.insert(flag.to_string(), digest);
        serde_json::from_slice(&bytes).map_err(|e| match e.line() {
            // semantic checks inside `try_from` carry no position
            0 => Fail::Input(format!("{}: {e}", path.display())),
            l => Fail::Input(format!("{}:{l}:{}: {e}", path.display(), e.column())),
        })
    }
}

fn complex_json(k: &PolyComplex) -> Res<Value> {
    let generators = k.cells.iter().map(h_to_v).collect::<tropfano::Result<Vec<_>>>()?;
    Ok(json!({ "complex": k, "stats": fan_stats(k), "generators": generators }))
}

fn fano_json(r: &FanoResult) -> Res<Value> {
    let mut v = complex_json(&r.complex)?;
    v["d"] = json!(r.d);
    v["n"] = json!(r.n);
    v["orbit"] = json!(r.orbit);
    Ok(v)
}

fn containment_json(c: &Containment) -> Value {
    match c {
        Containment::Contained => json!({ "contained": true, "witness": null }),
        Containment::Witness(w) => json!({ "contained": false, "witness": w }),
    }
}

/// `a*x0 - x2 + (t+1)*x3`.
fn linear_form(h: &[TRatFn]) -> String {
    let mut out = String::new();
    for (i, c) in h.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let s = c.to_string();
        let (neg, body) = match c.as_constant() {
            Some(q) if q.is_negative() => (true, (-q).to_string()),
            _ => (false, s),
        };
        let term = if body == "1" {
            format!("x{i}")
        } else if body.contains(' ') || body.contains('/') {
            format!("({body})*x{i}")
        } else {
            format!("{body}*x{i}")
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{term}")),
            (true, false) => out.push_str(&term),
            (false, true) => out.push_str(&format!(" - {term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn orbit(inf: &[usize], n: usize) -> Res<Orbit> {
    Ok(Orbit::new(inf.to_vec(), n)?)
}

fn run(cmd: &Cmd, inputs: &mut Inputs) -> Res<(&'static str, Value, Vec<&'static str>)> {
    let exact = vec!["exact"];
    Ok(match cmd {
        Cmd::Plucker { matrix } => {
            let m: TMatrix = inputs.read("matrix", matrix)?;
            let p = TropPluecker::from_matrix(&m)?;
            ("plucker", json!({ "plucker": p, "three_term": check_3term(&p) }), exact)
        }
        Cmd::TropLinear { plucker, orbit: inf } => {
            let p: TropPluecker = inputs.read("plucker", plucker)?;
            let o = orbit(inf, p.n() + 1)?;
            let g = realize_space(&p, &o)?;
            let mut v = complex_json(&g.complex)?;
            if o.is_torus() {
                v["recession"] = complex_json(&recession_fan(&g))?["complex"].clone();
                if p.d() == 1 {
                    v["tree"] = json!(tree_report(&g)?);
                }
            }
            ("trop-linear", v, exact)
        }
        Cmd::Bergman { matrix } => {
            let m: TMatrix = inputs.read("matrix", matrix)?;
            let mat = matroid_from_columns(&m)?;
            let mut v = complex_json(&bergman_fan(&mat)?)?;
            v["minimal_flats"] = json!(mat.minimal_flats()?);
            ("bergman", v, exact)
        }
        Cmd::Prevariety { system } => {
            let s: TropSystem = inputs.read("system", system)?;
            s.validate()?;
            ("prevariety", complex_json(&intersect_system(&s)?)?, exact)
        }
        Cmd::FanoLinear { plucker, d, orbit: inf } => {
            let w: TropPluecker = inputs.read("plucker", plucker)?;
            let o = orbit(inf, tropfano::numkernel::binomial(w.n() + 1, d + 1))?;
            ("fano-linear", fano_json(&fano_linear(&w, *d, &o)?)?, vec!["exact", "incidence"])
        }
        Cmd::FanoGeneral { complex, n, d, orbit: inf } => {
            let k: PolyComplex = inputs.read("complex", complex)?;
            let o = orbit(inf, tropfano::numkernel::binomial(n + 1, 2))?;
            ("fano-general", fano_json(&fano_general(&k, *d, *n, &o)?)?, vec!["exact", "projection"])
        }
        Cmd::Contains { plucker, complex, orbit: inf } => {
            let p: TropPluecker = inputs.read("plucker", plucker)?;
            let k: PolyComplex = inputs.read("complex", complex)?;
            let o = orbit(inf, p.n() + 1)?;
            ("contains", containment_json(&contains_line(&p, &k, &o)?), exact)
        }
        Cmd::PlaneFanoTrop { matrix } => {
            let l: TMatrix = inputs.read("matrix", matrix)?;
            let g = classical_plane_fano_trop(&l)?;
            let mut v = complex_json(&g.complex)?;
            v["plucker"] = json!(g.plucker);
            ("plane-fano-trop", v, exact)
        }
        Cmd::Compare { left, right } => {
            let a: PolyComplex = inputs.read("left", left)?;
            let b: PolyComplex = inputs.read("right", right)?;
            let side = |x: &PolyComplex, y: &PolyComplex| -> Res<Value> {
                for c in &x.cells {
                    let r = contained_in_complex(c, y)?;
                    if !r.holds() {
                        return Ok(containment_json(&r));
                    }
                }
                Ok(containment_json(&Containment::Contained))
            };
            let (lr, rl) = (side(&a, &b)?, side(&b, &a)?);
            let same = lr["contained"] == json!(true) && rl["contained"] == json!(true);
            ("compare", json!({ "same_support": same, "left_in_right": lr, "right_in_left": rl }), exact)
        }
        Cmd::Generic { matrix } => {
            let l: TMatrix = inputs.read("matrix", matrix)?;
            let g = genericity_check(&l)?;
            let triples: Vec<String> = g.witnesses_i.iter().map(|t| tropfano::numkernel::subset_label(t)).collect();
            let pairings: Vec<Vec<String>> = g.witnesses_ii.iter().map(|p| pairing_label(p)).collect();
            (
                "generic",
                json!({ "cond_I": g.cond_i, "cond_II": g.cond_ii, "witnesses_I": triples, "witnesses_II": pairings }),
                exact,
            )
        }
        Cmd::PairingLine { matrix, pairing } => {
            let l: TMatrix = inputs.read("matrix", matrix)?;
            let pairs = pairing
                .iter()
                .map(|s| match parse_subset_label(s).as_deref() {
                    Some(&[a, b]) => Ok([a, b]),
                    _ => Err(Fail::Input(format!("bad pair {s:?}"))),
                })
                .collect::<Res<Vec<[usize; 2]>>>()?;
            let v = match pairing_line(&l, &pairs)? {
                None => json!({ "collinear": false }),
                Some(line) => {
                    let eqs: Vec<String> = line.basis.kernel().iter().map(|h| linear_form(h)).collect();
                    json!({
                        "collinear": true,
                        "basis": line.basis,
                        "equations": eqs,
                        "plucker": line.plucker,
                        "recession_rays": line.recession_rays,
                        "certified": line.certified,
                    })
                }
            };
            ("pairing-line", v, exact)
        }
        Cmd::ToricTrop { lattice } => {
            let a: LatticePointSet = inputs.read("lattice", lattice)?;
            ("toric-trop", complex_json(&trop_toric(&a))?, exact)
        }
        Cmd::ToricBinomials { lattice } => {
            let a: LatticePointSet = inputs.read("lattice", lattice)?;
            let bs: Vec<Value> = toric_binomials(&a)
                .iter()
                .map(|b| json!({ "relation": b.relation, "plus": b.plus(), "minus": b.minus(), "text": b.to_string() }))
                .collect();
            ("toric-binomials", json!({ "binomials": bs }), exact)
        }
        Cmd::CayleyVerify { lattice, cayley } => {
            let a: LatticePointSet = inputs.read("lattice", lattice)?;
            let pi: CayleyStructure = inputs.read("cayley", cayley)?;
            ("cayley-verify", json!(verify_cayley(&a, &pi)?), exact)
        }
        Cmd::CayleyExtract { lattice, plucker } => {
            let a: LatticePointSet = inputs.read("lattice", lattice)?;
            let p: TropPluecker = inputs.read("plucker", plucker)?;
            let c = cayley_from_line(&a, &p)?;
            let check = verify_cayley(&a, &c)?;
            ("cayley-extract", json!({ "cayley": c, "classes": c.classes(), "check": check }), exact)
        }
        Cmd::ToricRealize { lattice, plucker } => {
            let a: LatticePointSet = inputs.read("lattice", lattice)?;
            let p: TropPluecker = inputs.read("plucker", plucker)?;
            let r = realize_in_toric(&a, &p)?;
            let text: Vec<String> = r.equations.iter().map(|h| linear_form(h)).collect();
            (
                "toric-realize",
                json!({
                    "cayley": r.cayley,
                    "basis": r.basis,
                    "equations": r.equations,
                    "equations_text": text,
                    "certificate": r.certificate,
                }),
                exact,
            )
        }
        Cmd::VerifyPaper { only } => {
            let outcomes = regression::run_all(only);
            for o in &outcomes {
                eprintln!("{o}");
            }
            let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
            if !failed.is_empty() {
                emit(&serde_json::to_string_pretty(&json!({ "criteria": outcomes })).expect("serializable"));
                return Err(Fail::Regression(format!("criteria {failed:?} failed")));
            }
            ("verify-paper", json!({ "criteria": outcomes }), vec!["regression"])
        }
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn configure_threads() -> Res<()> {
    let Ok(raw) = std::env::var("TROPFANO_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Fail::Input(format!("TROPFANO_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Fail::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| -> Res<String> {
        configure_threads()?;
        let start = Instant::now();
        let mut inputs = Inputs(BTreeMap::new());
        let (command, outputs, provenance) = run(&cli.cmd, &mut inputs)?;
        let report = CommandReport {
            command: command.to_string(),
            inputs: inputs.0,
            outputs,
            provenance,
            timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
        };
        serde_json::to_string_pretty(&report).map_err(|e| Fail::Internal(e.to_string()))
    });
    match outcome {
        Ok(Ok(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Ok(Err(Fail::Input(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Ok(Err(Fail::Regression(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Ok(Err(Fail::Internal(m))) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("internal error: panic");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropfano::numkernel::{Field, Rational};

    #[test]
    fn linear_forms_read_naturally() {
        let h = [TRatFn::from_int(1), TRatFn::zero(), TRatFn::from_int(-1), TRatFn::constant(Rational::new(3, 2))];
        assert_eq!(linear_form(&h), "x0 - x2 + (3/2)*x3");
        let g = [TRatFn::from_int(-2), TRatFn::t().add(&TRatFn::from_int(1))];
        assert_eq!(linear_form(&g), "-2*x0 + (t + 1)*x1");
    }
}
