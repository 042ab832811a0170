use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conceptua::clg::concept_lattice;
use conceptua::clsn::{check_infomorphism, Infomorphism};
use conceptua::finrel::FinFunction;
use conceptua::formats::{ContextFile, Format};
use conceptua::institution::{
    merge_theories, style_interconvert, verify_pushout, FlippedReduct, Institution, PropositionalLogic, Signature,
    SignatureMorphism, SpanFile, StyleReport, MAX_FIBER_VARS,
};
use conceptua::laws::{run_suite, LawConfig, Suite};
use conceptua::Error;

#[derive(Parser)]
#[command(name = "conceptua", version, about = "Concept lattices, infomorphisms and theory merging")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the concept lattice of a context file.
    Lattice {
        input: PathBuf,
        /// Input format; taken from the extension when omitted.
        #[arg(long)]
        input_format: Option<String>,
        /// Output format for the lattice.
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Write the lattice here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded law suites.
    Verify {
        /// all, finrel, order, galois, clsn, clg or institution.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Check deliberately broken fixtures; every suite should fail.
        #[arg(long)]
        corrupt: bool,
    },
    /// Check a pair of maps between two contexts against the infomorphism condition.
    Infomap {
        source: PathBuf,
        target: PathBuf,
        /// `{"inst":{target object: source object},"typ":{source attribute: target attribute}}`.
        map: PathBuf,
    },
    /// Merge the two theories of a span file along the signature pushout.
    Merge {
        span: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Propositional institution report over a numbered signature.
    Institution {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Check the four presentation styles on sample morphisms.
        #[arg(long)]
        demo: bool,
        /// Use an institution whose reduct is wrong.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
}

enum Failure {
    /// A law or validation failed.
    Law,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Lattice {
            input,
            input_format,
            format,
            out,
        } => lattice(&input, input_format.as_deref(), format, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            cases,
            corrupt,
        } => verify(&suite, LawConfig { seed, cases, corrupt }),
        Command::Infomap { source, target, map } => infomap(&source, &target, &map),
        Command::Merge { span, out } => merge(&span, out.as_deref()),
        Command::Institution {
            vars,
            depth,
            demo,
            corrupt,
        } => institution(vars, depth, demo, corrupt),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Law) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimit { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_context(path: &Path, format: Option<&str>) -> Result<ContextFile, Error> {
    match format {
        Some(f) => ContextFile::parse(&read(path)?, f.parse::<Format>()?),
        None => ContextFile::read(path),
    }
}

fn lattice(input: &Path, input_format: Option<&str>, format: Option<OutputFormat>, out: Option<&Path>) -> Outcome {
    let context = load_context(input, input_format)?;
    let l = concept_lattice(&context.classification)?;
    if format.is_some() || out.is_some() {
        let mut text = match format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => serde_json::to_string_pretty(&l.to_json()).expect("lattices serialize"),
            OutputFormat::Dot => l.to_dot(),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        write_or_print(out, &text)?;
    }
    let n = l.len();
    println!("{n} concept{}", if n == 1 { "" } else { "s" });
    Ok(())
}

fn verify(suite: &str, config: LawConfig) -> Outcome {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let mut passed = true;
    for s in suites {
        let report = run_suite(s, &config);
        println!("{report}");
        eprintln!("{}: {:.3}s", report.suite, report.elapsed.as_secs_f64());
        passed &= report.passed();
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Law)
    }
}

fn infomap(source: &Path, target: &Path, map: &Path) -> Outcome {
    let a = ContextFile::read(source)?.classification;
    let b = ContextFile::read(target)?.classification;
    let maps: BTreeMap<String, BTreeMap<String, String>> =
        serde_json::from_str(&read(map)?).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
    let part = |key: &str| {
        maps.get(key)
            .map(|m| m.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect::<Vec<_>>())
            .ok_or_else(|| Error::Invalid(format!("map file lacks `{key}`")))
    };
    let inst = FinFunction::from_labels(b.instances(), a.instances(), &part("inst")?)?;
    let typ = FinFunction::from_labels(a.types(), b.types(), &part("typ")?)?;
    let f = Infomorphism::new_unchecked(&a, &b, inst, typ)?;
    let report = check_infomorphism(&f);
    let adjunction = match report.adjunction {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "skipped",
    };
    println!(
        "fundamental: {}\nmorphism: {}\nrelations: {}\nadjunction: {adjunction}",
        verdict(report.fundamental),
        verdict(report.morphism),
        verdict(report.relations)
    );
    match report.witness {
        None => {
            println!("valid infomorphism");
            Ok(())
        }
        Some((x, y)) => {
            println!("invalid infomorphism: witness ({x}, {y})");
            Err(Failure::Law)
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn merge(span: &Path, out: Option<&Path>) -> Outcome {
    let file: SpanFile = serde_json::from_str(&read(span)?).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let (span, t1, t2) = file.load()?;
    let merged = merge_theories(&span, &t1, &t2)?;
    let cocones = verify_pushout(&span, &merged.pushout, 3.min(merged.pushout.signature.len() + 1))?;
    let mut text = serde_json::to_string_pretty(&merged.to_json()).expect("theories serialize");
    text.push('\n');
    if merged.inconsistent {
        eprintln!("warning: the merged theory is inconsistent");
    }
    eprintln!(
        "pushout: {} variables {:?}; {} cocones checked, universal: {}",
        merged.pushout.signature.len(),
        merged.pushout.signature.vars().labels(),
        cocones.cocones,
        cocones.passed()
    );
    write_or_print(out, &text)?;
    if cocones.passed() {
        Ok(())
    } else {
        Err(Failure::Law)
    }
}

fn report_line(name: &str, r: &StyleReport) -> String {
    format!(
        "{name}: class-rel {}, class-adj {}, conc-adj {} (extent {}, intent {}), conc-rel {}, of-type {}; agree: {}",
        verdict(r.class_rel),
        verdict(r.class_adj),
        verdict(r.conc_adj),
        verdict(r.conc_adj_extent),
        verdict(r.conc_adj_intent),
        verdict(r.conc_rel),
        verdict(r.of_type_trivial),
        r.agree()
    )
}

fn institution(vars: usize, depth: usize, demo: bool, corrupt: bool) -> Outcome {
    if corrupt {
        institution_with(&FlippedReduct::default(), vars, depth, demo)
    } else {
        institution_with(&PropositionalLogic, vars, depth, demo)
    }
}

fn institution_with<I: Institution>(inst: &I, vars: usize, depth: usize, demo: bool) -> Outcome {
    let sig = Signature::new((0..vars).map(|i| format!("v{i}")))?;
    let c = conceptua::institution::classification_of_signature(inst, &sig, depth)?;
    println!(
        "signature {:?}: {} models, {} sentences up to depth {depth}",
        sig.vars().labels(),
        c.instances().len(),
        c.types().len()
    );
    if vars <= MAX_FIBER_VARS {
        println!("theories: {}", conceptua::institution::theory_fiber(&sig)?.len());
    }
    if !demo {
        return Ok(());
    }
    let mut morphisms = vec![("identity".to_string(), SignatureMorphism::identity(&sig))];
    if vars > 0 {
        let smaller = Signature::new((1..vars).map(|i| format!("v{i}")))?;
        morphisms.push(("inclusion".into(), SignatureMorphism::inclusion(&smaller, &sig)?));
        let collapse = (0..vars).map(|i| i.saturating_sub(1)).collect();
        if vars > 1 {
            morphisms.push(("collapse".into(), SignatureMorphism::from_table(&sig, &smaller, collapse)?));
        }
    }
    let mut passed = true;
    for (name, sigma) in morphisms {
        let r = style_interconvert(inst, &sigma, depth)?;
        println!("{}", report_line(&name, &r));
        for w in &r.witnesses {
            println!("  witness: {w}");
        }
        passed &= r.passed();
    }
    if passed {
        println!("all four styles pass");
        Ok(())
    } else {
        Err(Failure::Law)
    }
}
