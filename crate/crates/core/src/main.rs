use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use initsyn::algebra::{check_module_hom, Budget, LawReport, Monad};
use initsyn::catalog::{self, exception_representation, inclusion_representation};
use initsyn::representation::{abs_counterexample, abs_module_hom, init_fold, syntax_representation, Representation};
use initsyn::signature::{parse_signature, print_signature, Signature};
use initsyn::suite::{control_suite, run_suite, Section, SuiteBudget, CONTROL_NAMES};
use initsyn::syntax::{
    enumerate_terms, parse_context, parse_term, parse_type, print_term, subst, Context, SubstMap, Term,
};

#[derive(Parser)]
#[command(name = "initsyn", version, about = "Initial syntax for simply-typed binding signatures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a signature, then print it in canonical form.
    Validate {
        /// Signature file or catalog name (ulc, ulc_const, stlc, pcf).
        sig: String,
    },
    /// List every term of a type over a context, smallest first.
    Enum {
        sig: String,
        /// Comma-separated context types, position 0 first.
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 3)]
        max_nodes: usize,
        #[arg(long, default_value_t = 2)]
        ty_depth: usize,
    },
    /// Apply a simultaneous substitution to a term.
    Subst {
        sig: String,
        #[arg(long, default_value = "")]
        ctx: String,
        /// Context the images live in; defaults to `--ctx`.
        #[arg(long)]
        target_ctx: Option<String>,
        /// `i := term`; unmapped variables go to themselves.
        #[arg(long = "map")]
        maps: Vec<String>,
        term: String,
    },
    /// Fold a term into a representation.
    Fold {
        sig: String,
        #[arg(long, value_enum)]
        rep: RepName,
        #[arg(long, default_value = "")]
        ctx: String,
        term: String,
    },
    /// Run the law suite; exits 1 if any law fails.
    Laws {
        /// Signature file or catalog name; every catalog signature when absent.
        sig: Option<String>,
        #[arg(long, value_enum, default_value_t = RepSection::All)]
        rep: RepSection,
        /// Run a negative control instead of the suite.
        #[arg(long)]
        control: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show that abstraction is a module morphism but not a monad morphism.
    CounterexampleAbs,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budget::STANDARD.max_nodes, value_parser = positive)]
    max_nodes: usize,
    #[arg(long, default_value_t = Budget::STANDARD.map_nodes, value_parser = positive)]
    map_nodes: usize,
    #[arg(long, default_value_t = Budget::STANDARD.ctx_len, value_parser = positive)]
    ctx_len: usize,
    #[arg(long, default_value_t = Budget::STANDARD.ty_depth, value_parser = positive)]
    ty_depth: usize,
    /// Depth of the types allowed in contexts; defaults to `--ty-depth`, or
    /// to the catalog's setting for a catalog signature.
    #[arg(long)]
    ctx_ty_depth: Option<usize>,
    /// Term size for the uniqueness comparison; defaults to one more than `--max-nodes`.
    #[arg(long)]
    unique_nodes: Option<usize>,
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, found `{text}`")),
    }
}

impl BudgetArgs {
    fn suite_budget(&self, preset: Option<Budget>) -> SuiteBudget {
        let ctx_ty_depth = self
            .ctx_ty_depth
            .unwrap_or_else(|| preset.map_or(self.ty_depth, |b| b.ctx_ty_depth.min(self.ty_depth)));
        let laws = Budget {
            max_nodes: self.max_nodes,
            map_nodes: self.map_nodes,
            ctx_len: self.ctx_len,
            ty_depth: self.ty_depth,
            ctx_ty_depth,
        };
        SuiteBudget { laws, unique_nodes: self.unique_nodes.unwrap_or(laws.max_nodes + 1) }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RepName {
    Syntax,
    Exception,
    Inclusion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepSection {
    All,
    Syntax,
    Exception,
    Inclusion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

/// Domain failures exit 1; I/O and usage problems exit 2.
enum Failure {
    Domain(String),
    Usage(String),
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

type Outcome = Result<ExitCode, Failure>;

/// A signature argument: an existing file, else a catalog name. Catalog
/// signatures, and files equal to one, carry the catalog's budget.
struct Loaded {
    sig: Signature,
    superset: Option<Signature>,
    preset: Option<Budget>,
}

impl Loaded {
    fn from_entry(e: &catalog::CatalogEntry) -> Self {
        Loaded { sig: e.signature(), superset: e.superset.and_then(catalog::signature_by_name), preset: Some(e.budget) }
    }
}

fn load(arg: &str) -> Result<Loaded, Failure> {
    let path = Path::new(arg);
    let sig = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        parse_signature(&text).map_err(|e| Failure::Domain(format!("{arg}:{e}")))?
    } else if let Some(sig) = catalog::signature_by_name(arg) {
        sig
    } else if arg.contains(['/', '.']) {
        return Err(Failure::Usage(format!("{arg}: no such file")));
    } else {
        let names: Vec<&str> = catalog::CATALOG.iter().map(|e| e.name).collect();
        return Err(Failure::Usage(format!("unknown signature `{arg}` (catalog: {})", names.join(", "))));
    };
    Ok(match catalog::entry(&sig.name).filter(|e| e.signature() == sig) {
        Some(e) => Loaded::from_entry(e),
        None => Loaded { sig, superset: None, preset: None },
    })
}

fn context(sig: &Signature, text: &str) -> Result<Context, Failure> {
    parse_context(&sig.universe, text).map_err(|e| Failure::Domain(format!("context: {e}")))
}

fn cmd_validate(arg: &str) -> Outcome {
    let loaded = load(arg)?;
    print!("{}", print_signature(&loaded.sig));
    Ok(ExitCode::SUCCESS)
}

fn cmd_enum(arg: &str, ctx: &str, ty: &str, max_nodes: usize, ty_depth: usize) -> Outcome {
    let sig = load(arg)?.sig;
    let ctx = context(&sig, ctx)?;
    let t = parse_type(&sig.universe, ty).map_err(|e| Failure::Domain(format!("type: {e}")))?;
    for x in enumerate_terms(&sig, &ctx, &t, max_nodes, ty_depth) {
        println!("{}", print_term(&x));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_binding(sig: &Signature, target: &Context, text: &str) -> Result<(usize, Term), Failure> {
    let (index, term) = text
        .split_once(":=")
        .ok_or_else(|| Failure::Usage(format!("--map `{text}`: expected `i := term`")))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--map `{text}`: bad index `{}`", index.trim())))?;
    let x = parse_term(sig, target, term.trim()).map_err(|e| Failure::Domain(format!("--map `{text}`: {e}")))?;
    Ok((index, x))
}

fn cmd_subst(arg: &str, ctx: &str, target_ctx: Option<&str>, maps: &[String], term: &str) -> Outcome {
    let sig = load(arg)?.sig;
    let source = context(&sig, ctx)?;
    let target = match target_ctx {
        Some(text) => context(&sig, text)?,
        None => source.clone(),
    };
    let mut images: Vec<Option<Term>> = vec![None; source.len()];
    for m in maps {
        let (i, x) = parse_binding(&sig, &target, m)?;
        let slot = images
            .get_mut(i)
            .ok_or_else(|| Failure::Domain(format!("--map `{m}`: index {i} outside the context")))?;
        *slot = Some(x);
    }
    let images = images.into_iter().enumerate().map(|(i, x)| x.unwrap_or_else(|| Term::var(i))).collect();
    let f = SubstMap::new(&sig, source.clone(), target, images).map_err(domain)?;
    let x = parse_term(&sig, &source, term).map_err(domain)?;
    println!("{}", print_term(&subst(&f, &x)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_fold(arg: &str, rep: RepName, ctx: &str, term: &str) -> Outcome {
    let Loaded { sig, superset, .. } = load(arg)?;
    let ctx = context(&sig, ctx)?;
    let x = parse_term(&sig, &ctx, term).map_err(domain)?;
    let rendered = match rep {
        RepName::Syntax => {
            let r = syntax_representation(sig);
            r.monad().render(&init_fold(&r, &ctx, &x))
        }
        RepName::Exception => {
            let r = exception_representation(sig);
            r.monad().render(&init_fold(&r, &ctx, &x))
        }
        RepName::Inclusion => {
            let sup = superset.unwrap_or_else(|| sig.clone());
            let r = inclusion_representation(sig, sup).map_err(domain)?;
            r.monad().render(&init_fold(&r, &ctx, &x))
        }
    };
    println!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn emit(reports: &[LawReport], format: Format) -> ExitCode {
    for r in reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if format == Format::Text {
        println!("{} laws checked, {} passed, {} failed", reports.len(), reports.len() - failed, failed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_laws(arg: Option<&str>, rep: RepSection, control: Option<&str>, budget: &BudgetArgs, format: Format) -> Outcome {
    if let Some(name) = control {
        let target = match arg {
            Some(a) => load(a)?,
            None => Loaded::from_entry(catalog::entry("ulc").expect("ulc is in the catalog")),
        };
        let budget = budget.suite_budget(target.preset);
        let reports = control_suite(name, &target.sig, &budget.laws).ok_or_else(|| {
            Failure::Usage(format!("unknown control `{name}` (available: {})", CONTROL_NAMES.join(", ")))
        })?;
        return Ok(emit(&reports, format));
    }
    let section = match rep {
        RepSection::All => Section::All,
        RepSection::Syntax => Section::Syntax,
        RepSection::Exception => Section::Exception,
        RepSection::Inclusion => Section::Inclusion,
    };
    let targets = match arg {
        Some(a) => vec![load(a)?],
        None => catalog::CATALOG.iter().map(Loaded::from_entry).collect(),
    };
    let mut reports = Vec::new();
    for t in &targets {
        reports.extend(run_suite(&t.sig, t.superset.as_ref(), &budget.suite_budget(t.preset), section));
    }
    Ok(emit(&reports, format))
}

fn cmd_counterexample_abs() -> Outcome {
    let (upper, lower) = abs_counterexample();
    println!("upper: {}", print_term(&upper));
    println!("lower: {}", print_term(&lower));
    if upper == lower {
        return Err(Failure::Domain("the two routes agree".into()));
    }
    println!("routes differ: abs is not a monad morphism");
    let rep = syntax_representation(catalog::ulc_signature());
    let space = initsyn::algebra::CheckSpace::new(&rep.signature().universe, &Budget::STANDARD);
    let unit = space.types[0].clone();
    let report = check_module_hom(&abs_module_hom(rep.monad(), unit), &space);
    println!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { sig } => cmd_validate(sig),
        Command::Enum { sig, ctx, ty, max_nodes, ty_depth } => cmd_enum(sig, ctx, ty, *max_nodes, *ty_depth),
        Command::Subst { sig, ctx, target_ctx, maps, term } => cmd_subst(sig, ctx, target_ctx.as_deref(), maps, term),
        Command::Fold { sig, rep, ctx, term } => cmd_fold(sig, *rep, ctx, term),
        Command::Laws { sig, rep, control, budget, format } => {
            cmd_laws(sig.as_deref(), *rep, control.as_deref(), budget, *format)
        }
        Command::CounterexampleAbs => cmd_counterexample_abs(),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
