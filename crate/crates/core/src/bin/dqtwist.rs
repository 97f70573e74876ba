use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use dqtwist::drinfeld::{build_drinfeld_twist, classical_limit, twist_axiom_check, twist_to_text};
use dqtwist::enveloping::Enveloping;
use dqtwist::exactalg::{HbarSeries, Poly, DEFAULT_ORDER, MAX_ORDER};
use dqtwist::fedosov::{fedosov_recursion, main_theorem_check, Normalization};
use dqtwist::io::{bivector_to_text, parse_bivector, parse_poly, parse_spec, AlgebraSpec};
use dqtwist::liecore::{ce_cohomology, central_extension, coadjoint_orbit_dim, schouten_cybe, symplectic_connection, LieAlgebra};
use dqtwist::starlab::{dito_coefficients, dito_operator};
use dqtwist::Error;

/// Exact Drinfel'd twists and star products for symplectic Lie algebras.
#[derive(Parser)]
#[command(name = "dqtwist", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the document: Jacobi identity, and closedness and
    /// nondegeneracy of omega when present.
    Check { doc: PathBuf },
    /// Chevalley–Eilenberg cohomology in degree K.
    Cohomology {
        doc: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Central extension by omega.
    Extend { doc: PathBuf },
    /// Dimension of the coadjoint orbit through the contact element.
    OrbitDim { doc: PathBuf },
    /// Schouten bracket [[r,r]] of a bivector.
    Cybe {
        doc: PathBuf,
        #[arg(long)]
        r: String,
    },
    /// Gutt star product of two polynomials on g*.
    Gutt {
        doc: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Drinfel'd twist built from the Gutt product of the central extension.
    Twist {
        doc: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Fedosov construction with normalization omega/hbar.
    Fedosov {
        doc: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Relative class of the twist against the Fedosov reference.
    Compare {
        doc: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Dito operator D_R of the central extension (of g itself when the
    /// document has no omega).
    Dito {
        doc: PathBuf,
        #[arg(long)]
        r: usize,
    },
}

/// Text lines, a JSON body, and whether a mathematical check failed.
struct Report {
    lines: Vec<String>,
    json: serde_json::Map<String, Value>,
    failed: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut json = serde_json::Map::new();
        json.insert("command".into(), json!(command));
        Report { lines: Vec::new(), json, failed: false }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    fn fail(&mut self, invariant: &str, residual: String) {
        self.failed = true;
        self.line(format!("FAILED: {invariant}: {residual}"));
        self.field("violated", json!({ "invariant": invariant, "residual": residual }));
    }
}

fn max_order() -> Result<usize, Error> {
    match std::env::var("DQTWIST_MAX_ORDER") {
        Err(_) => Ok(DEFAULT_ORDER),
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| Error::Parse(format!("DQTWIST_MAX_ORDER={v:?} is not a number")))?;
            if n > MAX_ORDER {
                return Err(Error::OrderTooHigh { requested: n, max: MAX_ORDER });
            }
            Ok(n)
        }
    }
}

fn checked_order(n: usize) -> Result<usize, Error> {
    let max = max_order()?;
    if n > max {
        return Err(Error::OrderTooHigh { requested: n, max });
    }
    Ok(n)
}

fn load(doc: &PathBuf) -> Result<AlgebraSpec, Error> {
    let text = std::fs::read_to_string(doc).map_err(|e| Error::Invalid(format!("{}: {e}", doc.display())))?;
    parse_spec(&text)
}

fn series_text(s: &HbarSeries<Poly>, labels: &[String]) -> Vec<String> {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("ℏ^{k}: {}", p.display_with(labels)))
        .collect()
}

fn run(cmd: &Command) -> Result<Report, Error> {
    match cmd {
        Command::Check { doc } => {
            let spec = load(doc)?;
            let mut rep = Report::new("check");
            let g = spec.lie_algebra()?;
            rep.line(format!("{}: dim {}, Jacobi identity holds", g.name(), g.dim()));
            rep.field("jacobi", json!(true));
            if spec.has_omega() {
                spec.symplectic()?;
                rep.line("omega: closed and nondegenerate");
                rep.field("symplectic", json!(true));
            }
            Ok(rep)
        }
        Command::Cohomology { doc, k } => {
            let g = load(doc)?.lie_algebra()?;
            let h = ce_cohomology(&g, *k);
            let mut rep = Report::new("cohomology");
            rep.line(format!("dim H^{k} = {}", h.dimension));
            let reps: Vec<String> = h.representatives.iter().map(|w| w.display_with(g.labels())).collect();
            for r in &reps {
                rep.line(format!("  [{r}]"));
            }
            rep.field("degree", json!(k));
            rep.field("dimension", json!(h.dimension));
            rep.field("representatives", json!(reps));
            Ok(rep)
        }
        Command::Extend { doc } => {
            let ext = central_extension(&load(doc)?.symplectic()?)?;
            let mut rep = Report::new("extend");
            let spec = AlgebraSpec::from_algebra(ext.algebra());
            rep.line(format!("{}: dim {}, central generator {}", ext.algebra().name(), ext.algebra().dim(), ext.algebra().labels()[ext.central_index()]));
            let h = ext.algebra();
            for b in &spec.brackets {
                let (i, j) = (b.i - 1, b.j - 1);
                let mut rhs = Poly::zero(h.dim());
                for (k, c) in h.bracket(i, j).iter().enumerate() {
                    let mut e = vec![0; h.dim()];
                    e[k] = 1;
                    rhs.add_term(e, c);
                }
                rep.line(format!("[{}, {}] = {}", spec.basis[i], spec.basis[j], rhs.display_with(h.labels())));
            }
            rep.field("algebra", serde_json::to_value(&spec).expect("serializable"));
            Ok(rep)
        }
        Command::OrbitDim { doc } => {
            let sg = load(doc)?.symplectic()?;
            let ext = central_extension(&sg)?;
            let d = coadjoint_orbit_dim(ext.algebra(), ext.contact());
            let mut rep = Report::new("orbit-dim");
            rep.line(format!("dim orbit(C) = {d}, dim g = {}", sg.dim()));
            rep.field("orbit_dim", json!(d));
            rep.field("dim_g", json!(sg.dim()));
            if d != sg.dim() {
                rep.fail("orbit dimension equals dim g", format!("{d} != {}", sg.dim()));
            }
            Ok(rep)
        }
        Command::Cybe { doc, r } => {
            let g = load(doc)?.lie_algebra()?;
            let r = parse_bivector(r, g.labels())?;
            let s = schouten_cybe(&g, &r);
            let mut rep = Report::new("cybe");
            let text = if s.is_zero() { "0".to_string() } else { s.display_with(g.labels()) };
            rep.line(format!("[[r,r]] = {text}"));
            rep.field("schouten", json!(text));
            if !s.is_zero() {
                rep.fail("classical Yang-Baxter equation", text);
            }
            Ok(rep)
        }
        Command::Gutt { doc, f, g, order } => {
            let lie = load(doc)?.lie_algebra()?;
            let n = checked_order(*order)?;
            let (pf, pg) = (parse_poly(f, lie.labels())?, parse_poly(g, lie.labels())?);
            let env = Enveloping::deformed(lie.clone(), n)?;
            let prod = env.gutt_star(&pf, &pg);
            let mut rep = Report::new("gutt");
            let lines = series_text(&prod, lie.labels());
            rep.lines.extend(lines.iter().cloned());
            rep.field("order", json!(n));
            rep.field("product", json!(lines));
            Ok(rep)
        }
        Command::Twist { doc, order } => {
            let sg = load(doc)?.symplectic()?;
            let n = checked_order(*order)?;
            let f = build_drinfeld_twist(&sg, n)?;
            let mut rep = Report::new("twist");
            let text = twist_to_text(&f);
            rep.lines.extend(text.lines().map(String::from));
            rep.field("twist", json!(text));
            let axioms = twist_axiom_check(&f);
            rep.field("axioms_hold", json!(axioms.holds()));
            match axioms.first_failure() {
                Some((axiom, k)) => rep.fail(axiom, format!("nonzero at order {k}")),
                None => {
                    let r = classical_limit(&f)?;
                    rep.line(format!("axioms hold to order {n}; r = {}", bivector_to_text(&r, sg.algebra().labels())));
                    rep.field("classical_limit", json!(bivector_to_text(&r, sg.algebra().labels())));
                }
            }
            Ok(rep)
        }
        Command::Fedosov { doc, order } => {
            let sg = load(doc)?.symplectic()?;
            let n = checked_order(*order)?;
            let gamma = symplectic_connection(&sg)?;
            let d = fedosov_recursion(&sg, &gamma, &Normalization::trivial(&sg), n)?;
            let mut rep = Report::new("fedosov");
            rep.line("connection:");
            rep.lines.extend(d.gamma_text().lines().map(|l| format!("  {l}")));
            rep.line("r:");
            rep.lines.extend(d.r_text().lines().map(|l| format!("  {l}")));
            rep.field("gamma", json!(d.gamma_text()));
            rep.field("r", json!(d.r_text()));
            let f = d.twist()?;
            rep.line("twist:");
            rep.lines.extend(twist_to_text(&f).lines().map(|l| format!("  {l}")));
            rep.field("twist", json!(twist_to_text(&f)));
            if let Some((axiom, k)) = twist_axiom_check(&f).first_failure() {
                rep.fail(axiom, format!("nonzero at order {k}"));
            }
            Ok(rep)
        }
        Command::Compare { doc, order } => {
            let sg = load(doc)?.symplectic()?;
            let n = checked_order(*order)?;
            let v = main_theorem_check(&sg, n)?;
            let mut rep = Report::new("compare");
            let classes: Vec<Vec<String>> = v.relative.classes.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
            rep.line(v.summary());
            rep.field("order", json!(n));
            rep.field("confirmed", json!(v.confirmed));
            rep.field("classes", json!(classes));
            if !v.confirmed {
                rep.fail("trivial relative class", format!("{classes:?}"));
            }
            Ok(rep)
        }
        Command::Dito { doc, r } => {
            let spec = load(doc)?;
            let h: LieAlgebra =
                if spec.has_omega() { central_extension(&spec.symplectic()?)?.algebra().clone() } else { spec.lie_algebra()? };
            let mut rep = Report::new("dito");
            let coeffs: Vec<String> = dito_coefficients(&h, *r)
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| format!("Tr({}) = {c}", w.iter().map(|&i| format!("ad {}", h.labels()[i])).collect::<Vec<_>>().join(" ")))
                .collect();
            let op = dito_operator(&h, *r);
            rep.line(format!("D_{r} on {} ({} nonzero traces)", h.name(), coeffs.len()));
            rep.lines.extend(coeffs.iter().cloned());
            rep.field("traces", json!(coeffs));
            rep.field("order", json!(op.order()));
            Ok(rep)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::Incompatible(_) | Error::OrderTooHigh { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(rep) => {
            if cli.json {
                let mut body = rep.json;
                body.insert("status".into(), json!(if rep.failed { "failed" } else { "ok" }));
                println!("{}", serde_json::to_string_pretty(&Value::Object(body)).expect("serializable"));
            } else {
                for l in &rep.lines {
                    println!("{l}");
                }
            }
            ExitCode::from(if rep.failed { 1 } else { 0 })
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                println!("{}", json!({ "status": "error", "exit": code, "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
