//! Command-line front end: form parsing and printing, table reproduction,
//! decomposition, classification and verification reports.

pub mod report;
pub mod syntax;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use mongeampere::bieffective::{bieffective_oracle, decompose};
use mongeampere::equations::{displayed_symbol, lookup, symbol_reduce};
use mongeampere::scalar::format_exact;
use mongeampere::solutions::{
    legendre_example, legendre_grid, legendre_regular_solution, proposition, prop7_family_check, run_proposition,
    sample_polydisc, verify_generalized, verify_regular, ConstraintSign, HolomorphicFunction, PropositionReport,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use mongeampere::structures::{CompatibleComplexStructure, DarbouxChart, StructureName};
use mongeampere::symplectic::verify_vb_relations;
use mongeampere::tables::{classify_form, table};
use mongeampere::{Cf, Error, ExactForm};

pub use report::ReportDocument;
pub use syntax::{parse_form, parse_form_in, parse_form_on, print_form, Basis, SyntaxError};

#[derive(Debug, Parser)]
#[command(name = "mongeampere", about = "Bieffective forms and complex reductions of Monge-Ampere equations")]
pub struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fifteen commutation relations for a structure.
    Relations {
        #[arg(long)]
        structure: String,
    },
    /// Six-component decomposition of a 4-form.
    Decompose(FormInput),
    /// Signature and QQ^t spectrum of the bieffective part.
    Classify(FormInput),
    /// Recompute a reference table.
    Table {
        #[arg(long)]
        which: u8,
        /// Exit 1 on any mismatch.
        #[arg(long)]
        strict: bool,
    },
    /// Symbol of an equation as a polynomial in the Hessian entries.
    Reduce {
        #[arg(long)]
        equation: Option<String>,
        #[arg(long)]
        form: Option<String>,
        /// Phase-space dimension for --form (4, 6 or 8).
        #[arg(long, default_value_t = 8, value_parser = PossibleValuesParser::new(["4", "6", "8"]).map(|s| s.parse::<usize>().expect("listed value")))]
        dim: usize,
    },
    /// Numerical verification of a proposition or of the Legendre example.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FormInput {
    #[arg(long)]
    pub structure: String,
    #[arg(long, conflicts_with = "form")]
    pub equation: Option<String>,
    #[arg(long)]
    pub form: Option<String>,
    /// Read --form in the structure's complex coordinates (dz1, du1, dzb1, ...).
    #[arg(long)]
    pub chart: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "example", value_parser = clap::value_parser!(u8).range(1..=8))]
    pub proposition: Option<u8>,
    /// `legendre` for the worked two-variable example.
    #[arg(long)]
    pub example: Option<String>,
    /// Holomorphic function of z1, z2.
    #[arg(long)]
    pub phi: Option<String>,
    /// Number of sample points.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Polydisc radius of the samples.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Defaults to 1e-9 for generalized and 1e-6 for regular solutions.
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Bad input as opposed to a failed verification.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

/// Runs a command. Exit code: 0 success, 1 verification failure, 2 usage.
pub fn run(cli: &Cli) -> (i32, String) {
    match execute(&cli.command) {
        Ok((doc, strict)) => {
            let text = if cli.json { doc.to_json() + "\n" } else { doc.to_text() };
            (if doc.pass || !strict { 0 } else { 1 }, text)
        }
        Err(CliError::Usage(m)) => (2, format!("error: {m}\n")),
        Err(CliError::Failure(m)) => (1, format!("error: {m}\n")),
    }
}

fn structure(name: &str) -> Result<StructureName, CliError> {
    name.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn input_form(input: &FormInput, doc: &mut ReportDocument) -> Result<(StructureName, ExactForm), CliError> {
    let s = structure(&input.structure)?;
    doc.input("structure", s);
    let form = match (&input.equation, &input.form) {
        (Some(eq), None) => {
            let e = lookup(eq)?;
            doc.input("equation", e.name);
            e.form.clone()
        }
        (None, Some(text)) => {
            doc.input("form", text);
            if input.chart {
                doc.input("chart", true);
                DarbouxChart::builtin(s).to_real(&parse_form_in(text, Basis::Chart)?)
            } else {
                parse_form(text)?
            }
        }
        _ => return Err(CliError::Usage("give exactly one of --equation, --form".into())),
    };
    if form.degree() != 4 {
        return Err(CliError::Usage(format!("expected a 4-form, got degree {}", form.degree())));
    }
    Ok((s, form))
}

/// Returns the report and whether a failing report should set exit code 1.
fn execute(cmd: &Command) -> Result<(ReportDocument, bool), CliError> {
    match cmd {
        Command::Relations { structure: name } => {
            let s = structure(name)?;
            let mut doc = ReportDocument::new("relations");
            doc.input("structure", s);
            let r = verify_vb_relations(&CompatibleComplexStructure::builtin(s).pair());
            for id in &r.identities {
                let bad = r.violations.iter().find(|v| v.identity == *id);
                let computed = bad.map_or("holds on all 256 basis forms".to_string(), |v| format!("fails on blade {:?}", v.blade));
                doc.check(id, "identity", None, computed, bad.is_none());
            }
            Ok((doc, true))
        }
        Command::Decompose(input) => {
            let mut doc = ReportDocument::new("decompose");
            let (s, omega) = input_form(input, &mut doc)?;
            let pair = CompatibleComplexStructure::builtin(s).pair();
            let d = decompose(&omega, &pair)?;
            let chart = DarbouxChart::builtin(s);
            doc.value("omega0", "form", print_form(&d.omega0, Basis::Real));
            doc.value("omega0", "chart", print_form(&chart.to_complex(&d.omega0), Basis::Chart));
            doc.value("omega1", "form", print_form(&d.omega1, Basis::Real));
            doc.value("omega2", "form", print_form(&d.omega2, Basis::Real));
            doc.value("w11", "scalar", format_exact(&d.w11));
            doc.value("w12", "scalar", format_exact(&d.w12));
            doc.value("w22", "scalar", format_exact(&d.w22));
            let zero = |f: &ExactForm| f.is_empty();
            doc.check("omega0^Omega1", "check", Some("0".into()), print_form(&d.omega0.wedge(pair.omega(1)), Basis::Real), zero(&d.omega0.wedge(pair.omega(1))));
            doc.check("omega0^Omega2", "check", Some("0".into()), print_form(&d.omega0.wedge(pair.omega(2)), Basis::Real), zero(&d.omega0.wedge(pair.omega(2))));
            let back = d.reassemble(&pair) == omega;
            doc.check("reassembly", "check", Some("omega".into()), if back { "omega" } else { "differs" }, back);
            let oracle = bieffective_oracle(&omega, &pair)? == d.omega0;
            doc.check("oracle", "check", Some("omega0".into()), if oracle { "omega0" } else { "differs" }, oracle);
            Ok((doc, true))
        }
        Command::Classify(input) => {
            let mut doc = ReportDocument::new("classify");
            let (s, omega) = input_form(input, &mut doc)?;
            match classify_form(&omega, s)? {
                None => doc.value("bieffective part", "signature", "0"),
                Some((sig, spec)) => {
                    doc.value("bieffective part", "signature", sig);
                    doc.signature = Some(sig.into());
                    doc.set_spectrum(&spec);
                }
            }
            Ok((doc, true))
        }
        Command::Table { which, strict } => {
            let mut doc = ReportDocument::new("table");
            doc.input("which", which);
            doc.input("strict", strict);
            let t = table(*which)?;
            for c in &t.cells {
                doc.check(&c.row, &c.column, Some(c.printed.clone()), &c.computed, c.ok);
            }
            for n in &t.notes {
                doc.value("note", "", n);
            }
            Ok((doc, *strict))
        }
        Command::Reduce { equation, form, dim } => {
            let mut doc = ReportDocument::new("reduce");
            let (name, omega) = match (equation, form) {
                (Some(e), None) => {
                    let eq = lookup(e)?;
                    doc.input("equation", eq.name);
                    (Some(eq.name), eq.form.clone())
                }
                (None, Some(t)) => {
                    doc.input("form", t);
                    doc.input("dim", dim);
                    (None, parse_form_on(t, Basis::Real, *dim)?)
                }
                _ => return Err(CliError::Usage("give exactly one of --equation, --form".into())),
            };
            let poly = symbol_reduce(&omega)?;
            doc.value("symbol", "polynomial", &poly);
            if let Some(shown) = name.and_then(displayed_symbol) {
                let sign = poly.sign_relative_to(&shown);
                let text = sign.map_or("not proportional".to_string(), |s| format!("{s:+}"));
                doc.check("display", "overall sign", Some(shown.to_string()), text, sign.is_some());
            }
            Ok((doc, true))
        }
        Command::Verify(args) => verify(args).map(|d| (d, true)),
    }
}

fn verify(args: &VerifyArgs) -> Result<ReportDocument, CliError> {
    let mut doc = ReportDocument::new("verify");
    doc.input("grid", args.grid);
    doc.input("seed", args.seed);
    doc.input("radius", args.radius);
    if let Some(ex) = &args.example {
        if ex != "legendre" {
            return Err(CliError::Usage(format!("unknown example '{ex}'")));
        }
        doc.input("example", ex);
        let tol = args.tol.unwrap_or(1e-9);
        doc.input("tol", tol);
        let eq = lookup("hess2")?;
        let l = legendre_example(&legendre_grid(16))?;
        let g = verify_generalized(&l, &eq.form_as::<Cf>(), tol);
        doc.check("L", "Omega|_L, omega|_L", None, format!("{:e}, {:e}", g.omega_max, g.form_max), g.pass);
        let r = verify_regular(&legendre_regular_solution(), eq, &legendre_grid(16), 1e-6)?;
        doc.check("u", "hess u - 1 (16x16 grid)", None, format!("{:e}", r.residual_max), r.pass);
        doc.residual_max = Some(g.omega_max.max(g.form_max).max(r.residual_max));
        return Ok(doc);
    }
    let n = args.proposition.ok_or_else(|| CliError::Usage("give --proposition or --example".into()))?;
    let setup = proposition(n)?;
    let phi_text = args.phi.clone().unwrap_or_else(|| setup.default_phi.to_string());
    let phi = HolomorphicFunction::parse(&phi_text).map_err(|e| CliError::Usage(e.to_string()))?;
    let tol = args.tol.unwrap_or(if setup.regular { 1e-6 } else { 1e-9 });
    doc.input("proposition", n);
    doc.input("phi", &phi_text);
    doc.input("tol", tol);
    let samples = sample_polydisc([Cf::new(0.0, 0.0); 2], args.radius, args.grid, args.seed);
    doc.value("statement", "", setup.description);
    doc.value("equation", "", setup.equation);
    doc.check("phi", "derivative cross-check", None, format!("{:e}", phi.derivative_defect(&samples)), phi.derivative_defect(&samples) <= 1e-6);
    let report = run_proposition(&setup, &phi, &samples, tol)?;
    match &report {
        PropositionReport::Generalized(g) => {
            doc.check("L", "Omega|_L", None, format!("{:e}", g.omega_max), g.omega_max <= tol);
            doc.check("L", "omega|_L", None, format!("{:e}", g.form_max), g.form_max <= tol);
        }
        PropositionReport::Regular(r) => {
            doc.check("Re phi", "residual", None, format!("{:e}", r.residual_max), r.residual_max <= tol);
            doc.check("Re phi", "finite differences", None, format!("{:e}", r.derivative_defect), r.derivative_defect <= 1e-6);
            doc.value("Re phi", "samples used", r.samples);
            for (k, why) in &r.skipped {
                doc.value("skipped", &k.to_string(), why);
            }
        }
    }
    if n == 7 {
        // which sign of |phi11|^2 the function satisfies
        let grid: Vec<Vec<f64>> = samples.iter().map(|z| vec![z[0].re, z[0].im, z[1].re, z[1].im]).collect();
        for sign in [ConstraintSign::Plus, ConstraintSign::Minus] {
            let f = prop7_family_check(&phi, sign, &grid, tol)?;
            let label = if sign == ConstraintSign::Plus { "+|phi11|^2" } else { "-|phi11|^2" };
            doc.value("constraint", label, format!("max {:e}, holds: {}", f.constraint_max, f.violation.is_none()));
        }
    }
    doc.residual_max = Some(report.residual_max());
    doc.pass &= report.pass();
    Ok(doc)
}
