mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use bigla::appendix::{self, character_at, parity_split, star_product, Poly};
use bigla::catalog::{self, CatalogAlgebra};
use bigla::equivalence::{alpha_check_all, involution_from_bidegree, rebraid, unbraid};
use bigla::hc::{bch_product, inner_automorphism_check, CoefficientModule, HcContext};
use bigla::json::{parse_document, Document};
use bigla::linalg::Matrix;
use bigla::scalar::parse_rational;
use bigla::uea::{RewriteStrategy, DEFAULT_MAX_TRUNCATION};
use bigla::{BiGradedLieAlgebra, BiGradedSpace, CycloScalar, Error, Exec, LinearMap, Result, Uea, Vector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{RunReport, Status};

#[derive(Parser)]
#[command(name = "bigla", version, about = "Exact checks for Z2xZ2-graded Lie algebras")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Append the elapsed time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Axiom checks; with no flag all of them run.
    Check(CheckArgs),
    /// Bi-graded Lie algebra to Lie superalgebra with involution.
    Unbraid(ConvertArgs),
    /// Lie superalgebra with involution to bi-graded Lie algebra.
    Rebraid(ConvertArgs),
    /// Compares the two Jacobiators on every basis triple.
    AlphaCheck { file: PathBuf },
    /// Enveloping algebra computations.
    #[command(subcommand)]
    Uea(UeaCommand),
    /// PBW basis counts.
    #[command(subcommand)]
    Pbw(PbwCommand),
    /// Equivariant functionals and truncated BCH.
    #[command(subcommand)]
    Hc(HcCommand),
    /// Polynomials under the deformed product.
    #[command(subcommand)]
    Appendix(AppendixCommand),
    /// The built-in catalog of algebras.
    #[command(subcommand)]
    Examples(ExamplesCommand),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    antisymmetry: bool,
    #[arg(long)]
    jacobi: bool,
    #[arg(long)]
    homogeneity: bool,
}

#[derive(Args)]
struct ConvertArgs {
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
    Seeded,
}

#[derive(Subcommand)]
enum UeaCommand {
    /// PBW normal form of a word given as comma-separated labels.
    Nf {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hopf axioms and the Weyl coalgebra identity on short words.
    HopfCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum PbwCommand {
    /// Normal-word counts against the symmetric-algebra formula.
    Dims {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    Trivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementArg {
    /// diag(1,-1,-1)
    #[value(name = "D")]
    D,
    /// the rotation matrix whose square is D
    Sigma,
    Identity,
}

#[derive(Subcommand)]
enum HcCommand {
    /// Dimension of the equivariant functionals at truncation n.
    HomDim {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "trivial")]
        module: ModuleArg,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Graded commutativity of convolution on the equivariant basis.
    ConvCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// log(exp X exp Y) truncated at order n.
    Bch {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Conjugation by a group element against an expected automorphism.
    InnerCheck {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long, value_enum)]
        element: ElementArg,
    },
}

#[derive(Subcommand)]
enum AppendixCommand {
    /// Deformed product of two real polynomials.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Multiplicativity of the complex model on random pairs.
    IsoCheck {
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The character f+(a) + i f-(a) and its residue field.
    Character {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Subcommand)]
enum ExamplesCommand {
    List,
    /// Writes a catalog entry in the JSON document format.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn max_truncation() -> Result<usize> {
    match std::env::var("BIGLA_MAX_TRUNCATION") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("BIGLA_MAX_TRUNCATION=`{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_TRUNCATION),
    }
}

fn cap(n: usize) -> Result<usize> {
    let bound = max_truncation()?;
    if n > bound {
        return Err(Error::TruncationExceeded { requested: n, bound });
    }
    Ok(n)
}

fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn read_lie(path: &Path) -> Result<BiGradedLieAlgebra> {
    read_document(path)?.into_lie()
}

fn write_or_print(doc: &Document, output: Option<&Path>, report: &mut RunReport) -> Result<()> {
    let text = doc.to_json_string();
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
            report.line(format!("wrote {}", p.display()));
        }
        None => report.line(text.trim_end().to_string()),
    }
    report.result = doc.to_value();
    Ok(())
}

/// Parses `e1`, `2*e1 - 1/2*e3`, ... into a vector of the space.
fn parse_vector(space: &BiGradedSpace, s: &str) -> Result<Vector> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    let mut v = Vector::zero(space.dim());
    let mut start = 0;
    let mut cuts: Vec<usize> = s.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k).collect();
    cuts.push(s.len());
    for end in cuts {
        let term = &s[start..end];
        start = end;
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coeff, label) = match body.rsplit_once('*') {
            Some((c, l)) => (parse_rational(c)?, l),
            None => (parse_rational("1")?, body),
        };
        let c = CycloScalar::from_rational(if neg { -coeff } else { coeff });
        v.add_term(space.index_of(label)?, &c);
    }
    Ok(v)
}

fn run_check(args: &CheckArgs, r: &mut RunReport) -> Result<()> {
    let all = !(args.antisymmetry || args.jacobi || args.homogeneity);
    match read_document(&args.file)? {
        Document::Lie(g) => {
            r.line(format!("{} (dimension {})", g.name(), g.dim()));
            let label = |i: usize| g.space().label(i).to_string();
            if all || args.homogeneity {
                r.violations("homogeneity", &g.check_homogeneity(), |(a, b)| format!("[{}, {}]", label(*a), label(*b)));
            }
            if all || args.antisymmetry {
                r.violations("antisymmetry", &g.check_antisymmetry(), |v| {
                    format!("[{}, {}]: residual {}", label(v.left), label(v.right), g.space().format_vector(&v.residual))
                });
            }
            if all || args.jacobi {
                r.violations("jacobi", &g.check_jacobi(), |v| {
                    let (a, b, c) = v.ordering;
                    format!("({}, {}, {}): residual {}", label(a), label(b), label(c), g.space().format_vector(&v.residual))
                });
            }
        }
        Document::Super(s) => {
            r.line(format!("{} (super, dimension {})", s.space.name(), s.space.dim()));
            let label = |i: usize| s.space.label(i).to_string();
            if all || args.antisymmetry {
                r.violations("antisymmetry", &s.check_antisymmetry(), |v| format!("[{}, {}]", label(v.left), label(v.right)));
            }
            if all || args.jacobi {
                r.violations("jacobi", &s.check_jacobi(), |v| {
                    let (a, b, c) = v.ordering;
                    format!("({}, {}, {})", label(a), label(b), label(c))
                });
            }
            if all {
                r.violations("involution squares to 1", &s.involution_square_violations(), |i| label(*i));
                r.violations("involution is an automorphism", &s.involution_automorphism_violations(), |v| {
                    format!("[{}, {}]", label(v.left), label(v.right))
                });
            }
        }
        Document::Assoc(a) => {
            r.line(format!("{} (associative, dimension {})", a.name(), a.dim()));
            if all || args.homogeneity {
                r.violations("homogeneity", &a.product_map().check_homogeneity(), |(x, y)| format!("({x}, {y})"));
            }
            if all {
                let bad: Vec<_> = a.associativity_violation().into_iter().collect();
                r.violations("associativity", &bad, |(x, y, z)| format!("({x}, {y}, {z})"));
                r.fail_unless(a.unit().is_none() || a.check_unit());
            }
        }
    }
    Ok(())
}

fn run_alpha(file: &Path, r: &mut RunReport) -> Result<()> {
    let g = read_lie(file)?;
    let n = g.dim();
    let failures = alpha_check_all(g.bracket_map(), Exec::default());
    r.violations("alpha identity", &failures, |c| format!("{:?}", c.triple));
    r.line(format!("checked {} ordered triples", n * n * n));
    r.result = json!({"triples": n * n * n, "failures": failures.len()});
    Ok(())
}

fn strategy(s: StrategyArg, seed: u64) -> RewriteStrategy {
    match s {
        StrategyArg::Leftmost => RewriteStrategy::Leftmost,
        StrategyArg::Rightmost => RewriteStrategy::Rightmost,
        StrategyArg::Seeded => RewriteStrategy::Seeded(seed),
    }
}

fn run_uea(cmd: &UeaCommand, r: &mut RunReport) -> Result<()> {
    match cmd {
        UeaCommand::Nf { file, word, strategy: s, seed } => {
            let u = Uea::new(Arc::new(read_lie(file)?));
            let w = u.parse_word(word)?;
            let nf = u.normal_form_with(&w, strategy(*s, *seed));
            let text = u.format(&nf);
            r.line(text.clone());
            r.result = json!({"normal_form": text});
        }
        UeaCommand::HopfCheck { file, max_len } => {
            let u = Uea::new(Arc::new(read_lie(file)?));
            let max_len = cap(*max_len)?;
            let h = u.hopf_check(max_len, Exec::default());
            let fmt = |w: &bigla::Word| u.format_word(w);
            r.line(format!("{} normal words of length <= {max_len}", h.words_checked));
            r.violations("coassociativity", &h.coassociativity, fmt);
            r.violations("counit", &h.counit, fmt);
            r.violations("multiplicativity", &h.multiplicativity, |(a, b)| format!("{} * {}", fmt(a), fmt(b)));
            r.violations("cocommutativity", &h.cocommutativity, fmt);
            r.violations("antipode", &h.antipode, fmt);
            let weyl = u.weyl_coalgebra_check(max_len)?;
            r.violations("weyl coalgebra map", &weyl, fmt);
            r.result = serde_json::to_value(&h).expect("report serializes");
        }
    }
    Ok(())
}

fn run_pbw(cmd: &PbwCommand, r: &mut RunReport) -> Result<()> {
    let PbwCommand::Dims { file, n } = cmd;
    let u = Uea::new(Arc::new(read_lie(file)?));
    let d = u.pbw_dims(*n);
    r.line("n  normal-words  symmetric-algebra");
    for k in 0..=*n {
        r.line(format!("{k}  {}  {}", d.enumerated[k], d.combinatorial[k]));
    }
    r.fail_unless(d.agree());
    r.line(if d.agree() { "counts agree" } else { "counts DISAGREE" });
    r.result = serde_json::to_value(&d).expect("dims serialize");
    Ok(())
}

fn find_rep(name: &str) -> Result<bigla::hc::MatrixRep> {
    catalog::entries()
        .into_iter()
        .flat_map(|e| e.reps)
        .find(|rep| rep.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn run_hc(cmd: &HcCommand, r: &mut RunReport) -> Result<()> {
    let module = CoefficientModule::trivial();
    match cmd {
        HcCommand::HomDim { file, module: ModuleArg::Trivial, n } => {
            let u = Uea::new(Arc::new(read_lie(file)?));
            let ctx = HcContext::new(&u, &module, cap(*n)?);
            let basis = ctx.hom_basis()?;
            let d_odd = u.algebra().odd_indices().len();
            let expected = module.dim() << d_odd;
            r.line(format!("dimension {} (expected dim B * 2^{d_odd} = {expected})", basis.len()));
            r.fail_unless(basis.len() == expected);
            r.result = json!({"dimension": basis.len(), "expected": expected, "d_odd": d_odd});
        }
        HcCommand::ConvCheck { file, n } => {
            let u = Uea::new(Arc::new(read_lie(file)?));
            let ctx = HcContext::new(&u, &module, cap(*n)?);
            let basis = ctx.hom_basis()?;
            let bad = ctx.commutativity_violations(&basis, Exec::default())?;
            r.line(format!("{} basis functionals", basis.len()));
            r.violations("graded commutativity", &bad, |(i, j)| format!("({i}, {j})"));
            r.result = json!({"basis": basis.len(), "violations": bad.len()});
        }
        HcCommand::Bch { file, x, y, n } => {
            let g = read_lie(file)?;
            let (xv, yv) = (parse_vector(g.space(), x)?, parse_vector(g.space(), y)?);
            let u = Uea::new(Arc::new(g));
            let res = bch_product(&u, &xv, &yv, *n, max_truncation()?)?;
            for (k, term) in res.orders.iter().enumerate().skip(1) {
                r.line(format!("order {k}: {}", u.format(term)));
            }
            match res.as_lie(&u) {
                Some(v) => {
                    let text = u.algebra().space().format_vector(&v);
                    r.line(format!("result: {text}"));
                    r.result = json!({"result": text, "primitive": true});
                }
                None => {
                    r.status = Status::Fail;
                    r.line(format!("result leaves g: {}", u.format(&res.total)));
                    r.result = json!({"result": u.format(&res.total), "primitive": false});
                }
            }
        }
        HcCommand::InnerCheck { file, rep, element } => {
            let g = read_lie(file)?;
            let rep = find_rep(rep)?;
            if rep.len() != g.dim() || !rep.check_brackets(&g).is_empty() {
                return Err(Error::Malformed(format!("representation `{}` does not fit {}", rep.name, g.name())));
            }
            let (m, expected) = match element {
                ElementArg::D => (catalog::so3_involution_element(), involution_from_bidegree(&g)),
                ElementArg::Sigma => (catalog::so3_displayed_sigma(), involution_from_bidegree(&g)),
                ElementArg::Identity => (Matrix::identity(rep.size()), LinearMap::identity(g.space().clone())),
            };
            if m.rows() != rep.size() {
                return Err(Error::Malformed("group element has the wrong size".into()));
            }
            let checks = inner_automorphism_check(&rep, &m, &expected)?;
            let space = g.space();
            for c in &checks {
                let got = c.conjugated.as_ref().map_or("outside the image".to_string(), |v| space.format_vector(v));
                let status = if c.passes { "pass" } else { "FAIL" };
                r.line(format!("{}: {status} (conjugate {got}, expected {})", space.label(c.basis), space.format_vector(&c.expected)));
            }
            let bad: Vec<_> = checks.iter().filter(|c| !c.passes).map(|c| c.basis).collect();
            r.fail_unless(bad.is_empty());
            r.violations = bad.iter().map(|b| json!({"check": "inner automorphism", "at": b})).collect();
            r.result = serde_json::to_value(&checks).expect("checks serialize");
        }
    }
    Ok(())
}

fn run_appendix(cmd: &AppendixCommand, r: &mut RunReport) -> Result<()> {
    match cmd {
        AppendixCommand::Star { f, g } => {
            let (f, g) = (parity_split(&Poly::parse(f)?)?, parity_split(&Poly::parse(g)?)?);
            let p = star_product(&f, &g)?;
            r.line(format!("{}", p.to_poly()));
            r.line(format!("({p})"));
            r.result = json!({"product": p.to_poly().to_string(), "even": p.even().to_string(), "odd": p.odd().to_string()});
        }
        AppendixCommand::IsoCheck { degree, trials, seed } => {
            let rep = appendix::iso_check(*degree, *trials, *seed)?;
            r.violations("to_complex is multiplicative", &rep.failures, |k| format!("trial {k}"));
            r.line(format!("{trials} pairs of degree <= {degree}, seed {seed}"));
            r.result = serde_json::to_value(&rep).expect("report serializes");
        }
        AppendixCommand::Character { a, f } => {
            let a = parse_rational(a)?;
            let c = character_at(&a, &parity_split(&Poly::parse(f)?)?)?;
            r.line(format!("value {} (residue field {})", c.value, c.field));
            r.result = serde_json::to_value(&c).expect("value serializes");
        }
    }
    Ok(())
}

fn run_examples(cmd: &ExamplesCommand, r: &mut RunReport) -> Result<()> {
    match cmd {
        ExamplesCommand::List => {
            let mut items = Vec::new();
            for e in catalog::entries() {
                let (kind, dim) = match &e.algebra {
                    CatalogAlgebra::Lie(g) => ("lie", g.dim()),
                    CatalogAlgebra::Assoc(a) => ("assoc", a.dim()),
                };
                let reps: Vec<&str> = e.reps.iter().map(|x| x.name.as_str()).collect();
                r.line(format!("{:<22} {kind:<6} dim {dim:<2} {}", e.name, e.notes));
                items.push(json!({"name": e.name, "kind": kind, "dim": dim, "reps": reps, "notes": e.notes}));
            }
            r.result = json!(items);
        }
        ExamplesCommand::Export { name, output } => {
            let doc = match catalog::entry(name)?.algebra {
                CatalogAlgebra::Lie(g) => Document::Lie(g),
                CatalogAlgebra::Assoc(a) => Document::Assoc(a),
            };
            write_or_print(&doc, output.as_deref(), r)?;
        }
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Unbraid(_) => "unbraid",
        Command::Rebraid(_) => "rebraid",
        Command::AlphaCheck { .. } => "alpha-check",
        Command::Uea(UeaCommand::Nf { .. }) => "uea nf",
        Command::Uea(UeaCommand::HopfCheck { .. }) => "uea hopf-check",
        Command::Pbw(_) => "pbw dims",
        Command::Hc(HcCommand::HomDim { .. }) => "hc hom-dim",
        Command::Hc(HcCommand::ConvCheck { .. }) => "hc conv-check",
        Command::Hc(HcCommand::Bch { .. }) => "hc bch",
        Command::Hc(HcCommand::InnerCheck { .. }) => "hc inner-check",
        Command::Appendix(AppendixCommand::Star { .. }) => "appendix star",
        Command::Appendix(AppendixCommand::IsoCheck { .. }) => "appendix iso-check",
        Command::Appendix(AppendixCommand::Character { .. }) => "appendix character",
        Command::Examples(ExamplesCommand::List) => "examples list",
        Command::Examples(ExamplesCommand::Export { .. }) => "examples export",
    }
}

fn dispatch(cmd: &Command, r: &mut RunReport) -> Result<()> {
    match cmd {
        Command::Check(args) => run_check(args, r),
        Command::Unbraid(args) => {
            let s = unbraid(&read_lie(&args.file)?)?;
            write_or_print(&Document::Super(s), args.output.as_deref(), r)
        }
        Command::Rebraid(args) => {
            let g = rebraid(&read_document(&args.file)?.into_super()?)?;
            write_or_print(&Document::Lie(g), args.output.as_deref(), r)
        }
        Command::AlphaCheck { file } => run_alpha(file, r),
        Command::Uea(c) => run_uea(c, r),
        Command::Pbw(c) => run_pbw(c, r),
        Command::Hc(c) => run_hc(c, r),
        Command::Appendix(c) => run_appendix(c, r),
        Command::Examples(c) => run_examples(c, r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let start = Instant::now();
    let mut report = RunReport::new(name);
    if let Err(e) = dispatch(&cli.command, &mut report) {
        report = RunReport::error(name, &e);
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report.print(cli.json);
    report.status.exit_code()
}
