//! Command-line front end.
//!
//! Every report starts with a header recording the field, the degree cap and
//! the confluence status of the presentation involved. Exit codes: 0 ok,
//! 2 parse or input errors, 3 flavor or degree-cap violations, 4 confluence
//! failure, 5 Nakayama certification failure, 6 module certification failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::fdmod::{
    ext_dims, induce, is_f_local, is_koszul, resolve, restrict, twist_by_nakayama, GradedModule, ModuleError,
    ModuleFile, Over,
};
use crate::field::Field;
use crate::linalg::format_matrix;
use crate::presentation::{Flavor, GPresentation, PresentationError};
use crate::rewrite::{certify_confluence, ConfluenceReport, Letter, NCElement, RewriteError};
use crate::shriek::{ShriekAlgebra, ShriekError};

pub const DEFAULT_DEGREE_CAP: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "galg", version, about = "G-algebras, their Koszul duals and graded modules")]
struct Cli {
    #[command(flatten)]
    config: SessionArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SessionArgs {
    /// `rational` or `prime:p`
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    /// Largest total degree a rewrite may reach
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Last homological step for `module resolve` and `module ext`
    #[arg(long, global = true, default_value_t = 4)]
    steps: usize,
    /// Line-oriented `key=value` output
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an element
    Nf { presentation: PathBuf, element: String },
    /// Check every overlap ambiguity
    Certify { presentation: PathBuf },
    /// Build the Koszul dual B^! of the homogenization
    Shriek {
        presentation: PathBuf,
        /// Also print all products of basis elements
        #[arg(long)]
        constants: bool,
    },
    /// Solve for and certify the Nakayama automorphism of B^!
    Nakayama { presentation: PathBuf },
    /// Graded module operations
    Module {
        #[command(subcommand)]
        op: ModuleOp,
    },
}

#[derive(Debug, Subcommand)]
enum ModuleOp {
    /// Verify that every relation acts as zero
    Check { file: PathBuf },
    /// Minimal free resolution with boundary maps
    Resolve { file: PathBuf },
    /// Dimensions of Ext^i(M, k)
    Ext { file: PathBuf },
    /// Induce a C!-module to B!
    Induce { file: PathBuf },
    /// Restrict a B!-module to C!
    Restrict { file: PathBuf },
    /// Whether the restriction to C! is free
    Flocal { file: PathBuf },
    /// Twist a B!-module by the Nakayama automorphism
    Twist { file: PathBuf },
}

/// Field, degree cap and output style shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub field: Field,
    pub degree_cap: usize,
    pub steps: usize,
    pub machine: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Style {
    /// `key: value`
    Colon,
    /// `value` alone
    Bare,
    /// `key = value`, the module file syntax
    Assign,
}

#[derive(Debug, Default)]
struct Report {
    items: Vec<(String, String, Style)>,
}

impl Report {
    fn pair(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.items.push((key.into(), value.into(), Style::Colon));
    }

    fn bare(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.items.push((key.into(), value.into(), Style::Bare));
    }

    fn assign(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.items.push((key.into(), value.into(), Style::Assign));
    }

    fn render(&self, machine: bool) -> String {
        let mut s = String::new();
        for (k, v, style) in &self.items {
            let _ = match (machine, style) {
                (true, _) => writeln!(s, "{}={v}", k.replace(' ', ".")),
                (false, Style::Colon) => writeln!(s, "{k}: {v}"),
                (false, Style::Bare) => writeln!(s, "{v}"),
                (false, Style::Assign) => writeln!(s, "{k} = {v}"),
            };
        }
        s
    }
}

/// A failed command: exit code, message for stderr and any partial report.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    report: Option<Report>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), report: None }
    }

    fn with_report(mut self, report: Report) -> Self {
        self.report = Some(report);
        self
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        let code = if matches!(e, PresentationError::Flavor { .. }) { 3 } else { 2 };
        Failure::new(code, e.to_string())
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        let code = match &e {
            RewriteError::Parse { .. } | RewriteError::UnknownGenerator(_) => 2,
            RewriteError::Flavor(PresentationError::Flavor { .. }) => 3,
            RewriteError::Flavor(_) => 2,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ShriekError> for Failure {
    fn from(e: ShriekError) -> Self {
        let code = if matches!(e, ShriekError::Certification(_)) { 5 } else { 3 };
        Failure::new(code, e.to_string())
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        let code = match &e {
            ModuleError::Parse { .. } | ModuleError::UnknownGenerator { .. } | ModuleError::Field(_) => 2,
            ModuleError::Shriek(s) => return s.clone().into(),
            _ => 6,
        };
        Failure::new(code, e.to_string())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let field = match cli.config.field.parse::<Field>() {
        Ok(f) => f,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let config = SessionConfig {
        field,
        degree_cap: cli.config.degree_cap,
        steps: cli.config.steps,
        machine: cli.config.machine,
    };
    let mut session = Session { config, header: None };
    let result = session.dispatch(&cli.command);
    let mut stdout = String::new();
    if let Some(h) = &session.header {
        stdout.push_str(h);
    }
    match result {
        Ok(report) => {
            stdout.push_str(&report.render(config.machine));
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(f) => {
            if let Some(r) = &f.report {
                stdout.push_str(&r.render(config.machine));
            }
            Outcome { code: f.code, stdout, stderr: format!("error: {}\n", f.message) }
        }
    }
}

/// Entry point for the binary: runs with the process arguments, prints and
/// returns the exit code.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

struct Session {
    config: SessionConfig,
    header: Option<String>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Session {
    fn set_header(&mut self, confluence: &ConfluenceReport) {
        let status = if confluence.certified { "certified" } else { "failed" };
        let c = &self.config;
        self.header = Some(if c.machine {
            format!("field={}\ndegree_cap={}\nconfluence={status}\n", c.field, c.degree_cap)
        } else {
            format!("# galg field={} degree_cap={} confluence={status}\n", c.field, c.degree_cap)
        });
    }

    fn load(&self, path: &Path) -> Result<Arc<GPresentation>, Failure> {
        let p = GPresentation::parse(&read(path)?, self.config.field)?;
        Ok(Arc::new(p.with_degree_cap(self.config.degree_cap)))
    }

    /// Certifies `p` and records the header; fails with exit 4 and the
    /// overlap report when not confluent.
    fn certified(&mut self, p: &Arc<GPresentation>) -> Result<(), Failure> {
        let report = certify_confluence(p)?;
        self.set_header(&report);
        if !report.certified {
            return Err(Failure::new(4, "presentation is not confluent").with_report(confluence_report(p, &report)));
        }
        Ok(())
    }

    /// Homogenizes a plain presentation, certifies it and builds `B^!`.
    fn shriek(&mut self, path: &Path) -> Result<ShriekAlgebra, Failure> {
        let p = self.load(path)?;
        let h = match p.flavor() {
            Flavor::Plain => Arc::new(p.homogenize()?),
            Flavor::Homogenized => p,
            Flavor::QuantumPoly => {
                return Err(Failure::new(3, "the Koszul dual needs a plain or homogenized presentation"));
            }
        };
        self.certified(&h)?;
        Ok(ShriekAlgebra::build(&h)?)
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<Report, Failure> {
        match cmd {
            Command::Nf { presentation, element } => self.nf(presentation, element),
            Command::Certify { presentation } => self.certify(presentation),
            Command::Shriek { presentation, constants } => self.shriek_report(presentation, *constants),
            Command::Nakayama { presentation } => self.nakayama(presentation),
            Command::Module { op } => self.module(op),
        }
    }

    fn nf(&mut self, path: &Path, element: &str) -> Result<Report, Failure> {
        let p = self.load(path)?;
        let report = certify_confluence(&p)?;
        self.set_header(&report);
        let e = NCElement::parse(&p, element)?;
        let mut r = Report::default();
        r.bare("normal_form", e.to_string());
        Ok(r)
    }

    fn certify(&mut self, path: &Path) -> Result<Report, Failure> {
        let p = self.load(path)?;
        let report = certify_confluence(&p)?;
        self.set_header(&report);
        let r = confluence_report(&p, &report);
        if !report.certified {
            return Err(Failure::new(4, "presentation is not confluent").with_report(r));
        }
        Ok(r)
    }

    fn shriek_report(&mut self, path: &Path, constants: bool) -> Result<Report, Failure> {
        let a = self.shriek(path)?;
        let mut r = Report::default();
        let split = a.split_dims();
        let (rd, rpd) = a.relation_dims();
        r.pair("fingerprint", a.full().fingerprint());
        r.pair("relations", format!("dim R = {rd}, dim R_perp = {rpd}"));
        r.pair("dims", join(&a.dims()));
        r.pair("C! part", join(&split.iter().map(|s| s.0).collect::<Vec<_>>()));
        r.pair("C!z part", join(&split.iter().map(|s| s.1).collect::<Vec<_>>()));
        r.pair("total", a.full().dim().to_string());
        r.pair("socle", a.socle_label());
        if constants {
            for (i, line) in a.full().constants_text().lines().enumerate() {
                r.bare(format!("constants {i}"), line);
            }
        }
        Ok(r)
    }

    fn nakayama(&mut self, path: &Path) -> Result<Report, Failure> {
        let a = self.shriek(path)?;
        let s = a.nakayama_unchecked()?;
        let mut r = Report::default();
        r.pair("socle", a.socle_label());
        for (d, b) in s.blocks().iter().enumerate() {
            r.pair(format!("sigma degree {d}"), format_matrix(b));
        }
        r.pair("k", s.k().map_or("none".to_string(), ToString::to_string));
        let flags = s.flags();
        if self.config.machine {
            r.pair("automorphism", yes_no(flags.is_automorphism));
            r.pair("preserves_c", yes_no(flags.preserves_c_sub));
            r.pair("scales_z", yes_no(flags.scales_z));
        } else {
            r.bare("flags", flags.to_string());
        }
        if !flags.all() {
            return Err(Failure::new(5, "Nakayama automorphism failed certification").with_report(r));
        }
        Ok(r)
    }

    fn load_module(&mut self, path: &Path) -> Result<(ModuleFile, ShriekAlgebra, GradedModule), Failure> {
        let file = ModuleFile::parse(&read(path)?)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let a = self.shriek(&base.join(&file.algebra))?;
        let m = file.to_module(&a)?;
        let violations = m.check();
        if !violations.is_empty() {
            let mut r = Report::default();
            let alg = m.algebra();
            for v in &violations {
                r.pair(
                    format!("violated relation {}", v.relation),
                    format!("{} on degree {}", alg.render_relation(v.relation), v.degree),
                );
            }
            r.pair("module", "not certified");
            return Err(Failure::new(6, format!("{} relation(s) violated", violations.len())).with_report(r));
        }
        Ok((file, a, m))
    }

    fn module(&mut self, op: &ModuleOp) -> Result<Report, Failure> {
        let mut r = Report::default();
        match op {
            ModuleOp::Check { file } => {
                let (f, _, m) = self.load_module(file)?;
                r.pair("over", f.over.to_string());
                r.pair("dims", dims_text(&m));
                r.pair("module", "certified");
            }
            ModuleOp::Resolve { file } => {
                let (_, _, m) = self.load_module(file)?;
                let res = resolve(&m, self.config.steps);
                let alg = m.algebra();
                for (i, step) in res.steps.iter().enumerate() {
                    r.pair(format!("step {i}"), format!("rank {}, degrees [{}]", step.rank, join(&step.degrees)));
                    if i > 0 && !step.boundary.is_empty() {
                        // rows: generators of the previous step
                        let prev = res.steps[i - 1].rank;
                        let rows: Vec<String> = (0..prev)
                            .map(|row| {
                                let cells: Vec<String> =
                                    step.boundary.iter().map(|col| alg.render(&col[row])).collect();
                                format!("[{}]", cells.join(", "))
                            })
                            .collect();
                        r.pair(format!("boundary {i}"), format!("[{}]", rows.join(", ")));
                    }
                }
                r.pair("minimal", yes_no(res.is_minimal()));
            }
            ModuleOp::Ext { file } => {
                let (_, _, m) = self.load_module(file)?;
                let rows = ext_dims(&m, self.config.steps);
                for row in &rows {
                    r.pair(format!("step {}", row.step), format!("dim {}, degrees [{}]", row.dim, join(&row.degrees)));
                }
                r.pair("ext", join(&rows.iter().map(|x| x.dim).collect::<Vec<_>>()));
                match is_koszul(&m, self.config.steps) {
                    Ok(b) => r.pair("linear", yes_no(b)),
                    Err(_) => r.pair("linear", "n/a"),
                }
            }
            ModuleOp::Induce { file } => {
                let (f, a, m) = self.load_module(file)?;
                if f.over != Over::Sub {
                    return Err(Failure::new(2, "induce expects a C! module"));
                }
                module_items(&mut r, &induce(&a, &m)?, &f.algebra, Over::Full);
            }
            ModuleOp::Restrict { file } => {
                let (f, a, m) = self.load_module(file)?;
                if f.over != Over::Full {
                    return Err(Failure::new(2, "restrict expects a B! module"));
                }
                module_items(&mut r, &restrict(&a, &m)?, &f.algebra, Over::Sub);
            }
            ModuleOp::Flocal { file } => {
                let (f, a, m) = self.load_module(file)?;
                if f.over != Over::Full {
                    return Err(Failure::new(2, "flocal expects a B! module"));
                }
                r.pair("F-local", yes_no(is_f_local(&a, &m)?));
            }
            ModuleOp::Twist { file } => {
                let (f, a, m) = self.load_module(file)?;
                if f.over != Over::Full {
                    return Err(Failure::new(2, "twist expects a B! module"));
                }
                let s = a.nakayama()?;
                module_items(&mut r, &twist_by_nakayama(&m, &s)?, &f.algebra, Over::Full);
            }
        }
        Ok(r)
    }
}

fn dims_text(m: &GradedModule) -> String {
    let parts: Vec<String> = m.dimension_vector().iter().map(|(d, n)| format!("{d}:{n}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// The module in file syntax, so that the output can be read back.
fn module_items(r: &mut Report, m: &GradedModule, algebra: &str, over: Over) {
    for line in crate::fdmod::write_module(m, algebra, over).lines() {
        let (k, v) = line.split_once(" = ").expect("module lines are assignments");
        r.assign(k, v);
    }
}

fn confluence_report(p: &GPresentation, report: &ConfluenceReport) -> Report {
    let mut r = Report::default();
    let name = |l: &Letter| match l {
        Letter::X(i) => p.gen_names()[*i].clone(),
        Letter::Z => "Z".to_string(),
    };
    r.pair("overlaps checked", report.overlaps_checked.to_string());
    for f in &report.failures {
        let word: Vec<String> = f.word.iter().map(name).collect();
        r.pair(format!("overlap {}", word.join("*")), format!("{} != {}", f.left, f.right));
    }
    r.pair("confluence", if report.certified { "certified" } else { "failed" });
    r
}
