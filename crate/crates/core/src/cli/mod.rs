//! The `avglie` command line: JSON documents in, JSON reports out.
//!
//! Exit codes: 0 pass, 1 fail, 2 parse or shape error, 3 indeterminate, 4 usage.

mod document;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use document::{Document, Kind, Object, TensorDoc};
pub use report::{Report, Status, Witness};

use crate::cohomology::{cohomology_dim, is_coboundary, Cochain};
use crate::error::{Error, Result};
use crate::extensions::{
    abelian_wells, build_extension, check_compatible_pair, check_equivalence_witness,
    exact_sequence_audit, extract_cocycle, induced_representation, lift_automorphism,
    reconstruction_isomorphism, wells_class, AutomorphismPair, ExtensionData,
};
use crate::homotopy::{
    check_homotopy_averaging, cocycle_violation, crossed_semidirect, crossed_to_strict, is_strict,
    semidirect_bracket_tensor, skeletal_to_triple, strict_to_crossed, triple_to_skeletal,
    SemidirectBracket,
};
use crate::lie::check_lie_bracket;
use crate::linalg::Matrix;
use crate::verdict::{Verdict, Violation};
use report::{action_value, alt_value, dense_value, matrix_value};

pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "avglie",
    version,
    about = "Exact checks for averaging Lie algebras and their extensions"
)]
struct Cli {
    /// Only parse the input documents and their scalars.
    #[arg(long, global = true)]
    field_check: bool,
    /// Write the produced document (or the report) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate any document against the axioms of its kind.
    Check { file: PathBuf },
    /// Dimensions of cochains, cocycles and cohomology of a representation.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        degree: u64,
    },
    /// Build, extract and audit non-abelian extensions.
    #[command(subcommand)]
    Extension(ExtensionCommand),
    /// Wells class of an automorphism pair.
    Wells {
        extension: PathBuf,
        pair: PathBuf,
        /// Also compute the class in abelian cohomology.
        #[arg(long)]
        abelian: bool,
        /// Construct a lift when the pair is inducible.
        #[arg(long)]
        lift: bool,
    },
    /// 2-term homotopy averaging structures and crossed modules.
    #[command(subcommand)]
    Homotopy(HomotopyCommand),
}

#[derive(Debug, Subcommand)]
enum ExtensionCommand {
    /// Cocycle to extension.
    Build { file: PathBuf },
    /// Extension to cocycle along a section.
    Extract {
        file: PathBuf,
        /// Use the section stored in the document instead of the default one.
        #[arg(long)]
        stored_section: bool,
    },
    /// Round trips, section independence and, over small fields, exactness.
    Audit { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum HomotopyCommand {
    /// Axioms of a 2-term structure and its homotopy averaging operator.
    Check { file: PathBuf },
    /// Skeletal structure to algebra, representation and 3-cocycle.
    SkeletalToCocycle { file: PathBuf },
    /// 3-cocycle with alternating operator part to a skeletal structure.
    CocycleToSkeletal { file: PathBuf },
    /// Strict structure to crossed module.
    StrictToCrossed { file: PathBuf },
    /// Crossed module to strict structure.
    CrossedToStrict { file: PathBuf },
    /// Semidirect averaging Lie algebra of a crossed module.
    Semidirect {
        file: PathBuf,
        /// Use the bracket with `ρ_y k` in place of `ρ_y h`.
        #[arg(long)]
        literal: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Cohomology { .. } => "cohomology",
            Command::Extension(ExtensionCommand::Build { .. }) => "extension build",
            Command::Extension(ExtensionCommand::Extract { .. }) => "extension extract",
            Command::Extension(ExtensionCommand::Audit { .. }) => "extension audit",
            Command::Wells { .. } => "wells",
            Command::Homotopy(h) => match h {
                HomotopyCommand::Check { .. } => "homotopy check",
                HomotopyCommand::SkeletalToCocycle { .. } => "homotopy skeletal-to-cocycle",
                HomotopyCommand::CocycleToSkeletal { .. } => "homotopy cocycle-to-skeletal",
                HomotopyCommand::StrictToCrossed { .. } => "homotopy strict-to-crossed",
                HomotopyCommand::CrossedToStrict { .. } => "homotopy crossed-to-strict",
                HomotopyCommand::Semidirect { .. } => "homotopy semidirect",
            },
        }
    }

    fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Check { file } | Command::Cohomology { file, .. } => vec![file],
            Command::Extension(
                ExtensionCommand::Build { file }
                | ExtensionCommand::Extract { file, .. }
                | ExtensionCommand::Audit { file },
            ) => vec![file],
            Command::Wells {
                extension, pair, ..
            } => vec![extension, pair],
            Command::Homotopy(
                HomotopyCommand::Check { file }
                | HomotopyCommand::SkeletalToCocycle { file }
                | HomotopyCommand::CocycleToSkeletal { file }
                | HomotopyCommand::StrictToCrossed { file }
                | HomotopyCommand::CrossedToStrict { file }
                | HomotopyCommand::Semidirect { file, .. },
            ) => vec![file],
        }
    }
}

/// Runs the CLI with `args` (including the program name), writing the report
/// to `out` and a one-line summary to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let name = cli.command.name();
    let mut produced = None;
    let mut report = if cli.field_check {
        field_check(name, &cli.command.inputs())
    } else {
        execute(&cli.command, &mut produced).unwrap_or_else(|e| Report::from_error(name, &e))
    };
    if let Some(path) = &cli.output {
        let text = produced
            .as_ref()
            .map_or_else(|| report.to_json(), Document::to_json);
        match std::fs::write(path, text) {
            Ok(()) => report = report.with("output", path.display().to_string()),
            Err(e) => {
                report = Report::new(name, Status::Error)
                    .message(format!("cannot write {}: {e}", path.display()))
            }
        }
    } else if let Some(doc) = &produced {
        report = report.with("document", doc);
    }
    let _ = out.write_all(report.to_json().as_bytes());
    let _ = writeln!(err, "{}", report.summary());
    report.exit_code()
}

fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load(path: &Path) -> Result<Object> {
    Object::from_document(&read_document(path)?)
}

fn wrong_kind(path: &Path, expected: &str) -> Error {
    Error::Parse(format!(
        "{}: expected a {expected} document",
        path.display()
    ))
}

fn field_check(name: &str, inputs: &[&Path]) -> Report {
    for path in inputs {
        if let Err(e) = read_document(path).and_then(|d| d.verify_scalars()) {
            return Report::from_error(name, &e);
        }
    }
    Report::pass(name).with("documents", inputs.len())
}

fn execute(cmd: &Command, produced: &mut Option<Document>) -> Result<Report> {
    let name = cmd.name();
    match cmd {
        Command::Check { file } => check_object(name, &load(file)?),
        Command::Cohomology { file, degree } => {
            let Object::Representation(r) = load(file)? else {
                return Err(wrong_kind(file, "representation"));
            };
            let dims = cohomology_dim(&r, *degree as usize);
            Ok(Report::pass(name).with("dims", dims))
        }
        Command::Extension(sub) => extension(name, sub, produced),
        Command::Wells {
            extension,
            pair,
            abelian,
            lift,
        } => {
            let Object::Extension(e) = load(extension)? else {
                return Err(wrong_kind(extension, "extension"));
            };
            let Object::Pair(pair) = load(pair)? else {
                return Err(wrong_kind(pair, "automorphism_pair"));
            };
            wells(name, &e, &pair, *abelian, *lift)
        }
        Command::Homotopy(sub) => homotopy(name, sub, produced),
    }
}

fn check_object(name: &str, obj: &Object) -> Result<Report> {
    Ok(match obj {
        Object::LieAlgebra(g) => Report::pass(name)
            .with("dim", g.dim())
            .with("abelian", g.is_abelian()),
        Object::AveragingLieAlgebra(a) => Report::pass(name).with("dim", a.dim()),
        Object::Representation(r) => Report::from_verdict(name, &r.check()).with("vdim", r.vdim()),
        Object::Cochain {
            representation,
            cochain,
        } => {
            if let Verdict::Fail(v) = representation.check() {
                return Ok(Report::fail(name, &v));
            }
            let report = match cocycle_violation(representation, cochain) {
                Some(v) => Report::fail(name, &v),
                None => {
                    let mut r = Report::pass(name);
                    if cochain.degree() >= 2 {
                        let witness = is_coboundary(representation, cochain)?;
                        r = r.with("coboundary", witness.is_some());
                    }
                    r
                }
            };
            report.with("degree", cochain.degree())
        }
        Object::Cocycle(c) => {
            let check = c.check();
            Report::from_verdict(name, &check.verdict)
                .with("d_variants_agree", check.d_variants_agree())
        }
        Object::Extension(e) => Report::pass(name)
            .with("gdim", e.gdim())
            .with("hdim", e.hdim())
            .with("stored_section", e.section().is_some()),
        Object::Pair(pair) => {
            let bad = [("beta", &pair.beta), ("alpha", &pair.alpha)]
                .into_iter()
                .find(|(_, m)| !m.is_invertible());
            match bad {
                Some((which, _)) => Report::fail(
                    name,
                    &Violation::structural(format!("{which}: invertible"), &[]),
                ),
                None => Report::pass(name),
            }
        }
        Object::TwoTerm {
            structure,
            operator,
        } => {
            let mut verdict = structure.check();
            if let (Verdict::Pass, Some(p)) = (&verdict, operator) {
                verdict = check_homotopy_averaging(structure, p)?;
            }
            let mut r =
                Report::from_verdict(name, &verdict).with("skeletal", structure.is_skeletal());
            if let Some(p) = operator {
                r = r.with("strict", is_strict(structure, p));
            }
            r
        }
        Object::Crossed(c) => Report::from_verdict(name, &c.check()),
    })
}

fn cocycle_value(c: &crate::extensions::NonAbelianCocycle) -> Value {
    json!({ "chi": alt_value(&c.chi), "psi": action_value(&c.psi), "Phi": matrix_value(&c.phi) })
}

fn cochain_value(c: &Cochain) -> Value {
    json!({ "f": alt_value(c.f()), "theta": c.theta().map(dense_value) })
}

fn extension(
    name: &str,
    sub: &ExtensionCommand,
    produced: &mut Option<Document>,
) -> Result<Report> {
    match sub {
        ExtensionCommand::Build { file } => {
            let Object::Cocycle(c) = load(file)? else {
                return Err(wrong_kind(file, "nonabelian_cocycle"));
            };
            if let Verdict::Fail(v) = c.check().verdict {
                return Ok(Report::fail(name, &v));
            }
            let e = build_extension(&c)?;
            *produced = Some(Object::Extension(e.clone()).to_document());
            Ok(Report::pass(name).with("dim", e.total().dim()))
        }
        ExtensionCommand::Extract {
            file,
            stored_section,
        } => {
            let Object::Extension(e) = load(file)? else {
                return Err(wrong_kind(file, "extension"));
            };
            let s = if *stored_section {
                e.section().cloned().ok_or_else(|| {
                    Error::Parse(format!("{}: no stored section `s`", file.display()))
                })?
            } else {
                e.default_section()
            };
            let c = extract_cocycle(&e, &s)?;
            *produced = Some(Object::Cocycle(c).to_document());
            Ok(Report::pass(name).with("section", matrix_value(&s)))
        }
        ExtensionCommand::Audit { file } => {
            let Object::Extension(e) = load(file)? else {
                return Err(wrong_kind(file, "extension"));
            };
            audit(name, &e)
        }
    }
}

fn audit(name: &str, e: &ExtensionData) -> Result<Report> {
    let s = e.section_or_default();
    let c = extract_cocycle(e, &s)?;
    let rebuilt = build_extension(&c)?;
    let again = extract_cocycle(&rebuilt, &rebuilt.section_or_default())?;
    if again != c {
        return Ok(Report::fail(
            name,
            &Violation::structural("round-trip", &[]),
        ));
    }
    reconstruction_isomorphism(e, &s)?;
    // A second section s' = s + i M with M all ones; φ = (s - s') in h-coordinates.
    let f = e.field();
    let m = Matrix::from_fn(f, e.hdim(), e.gdim(), |_, _| f.one());
    let s2 = s.add(&e.i().mul(&m));
    let c2 = extract_cocycle(e, &s2)?;
    if let Verdict::Fail(v) = check_equivalence_witness(&c, &c2, &m.neg())? {
        return Ok(Report::fail(name, &v));
    }
    let mut report = Report::pass(name)
        .with("round_trip", true)
        .with("section_independent", true);
    match exact_sequence_audit(e) {
        Ok(a) => {
            let counts = json!({
                "restrictable": a.restrictable,
                "kernel": a.kernel,
                "pairs": a.pairs,
                "image": a.image,
                "inducible": a.inducible,
            });
            if !a.holds() {
                let clause = if !a.kernel_mismatches.is_empty() {
                    "kernel"
                } else if !a.image_mismatches.is_empty() {
                    "image"
                } else {
                    "lift"
                };
                report = Report::fail(name, &Violation::structural(clause, &[]));
            }
            report = report.with("exact_sequence", counts);
        }
        Err(Error::NotEnumerable | Error::FieldTooLarge(_)) => {
            report = report.with("exact_sequence", "skipped")
        }
        Err(err) => return Err(err),
    }
    Ok(report)
}

fn wells(
    name: &str,
    e: &ExtensionData,
    pair: &AutomorphismPair,
    abelian: bool,
    lift: bool,
) -> Result<Report> {
    if pair.alpha.field() != e.field() {
        return Err(Error::FieldMismatch {
            expected: e.field().to_string(),
            found: pair.alpha.field().to_string(),
        });
    }
    let w = wells_class(pair, e)?;
    let difference = json!({
        "chi": alt_value(&w.difference.chi),
        "psi": action_value(&w.difference.psi),
        "Phi": matrix_value(&w.difference.phi),
    });
    let mut report = match w.inducible() {
        Some(true) => Report::pass(name),
        Some(false) => Report::fail(name, &Violation::structural("inducible", &[]))
            .message("the Wells class is nonzero"),
        None => Report::indeterminate(
            name,
            "equivalence of the transformed cocycle was not decided",
        ),
    };
    report = report
        .with("section", matrix_value(&w.section))
        .with("transformed", cocycle_value(&w.transformed))
        .with("difference", difference)
        .with("zero_difference", w.difference.is_zero())
        .with("inducible", w.inducible());
    if let Some(phi) = w.witness() {
        report = report.with("phi", matrix_value(phi));
        if lift {
            report = report.with("gamma", matrix_value(&lift_automorphism(pair, e, phi)?));
        }
    }
    if abelian {
        let compatible = check_compatible_pair(pair, &induced_representation(e)?).is_pass();
        let mut section = json!({ "compatible": compatible });
        if compatible {
            let a = abelian_wells(pair, e)?;
            if w.inducible().is_some_and(|ind| ind != a.is_zero_class()) {
                return Err(Error::Inconsistent(
                    "abelian and non-abelian Wells verdicts differ".into(),
                ));
            }
            section["class"] = cochain_value(&a.class);
            section["zero_class"] = json!(a.is_zero_class());
            section["coboundary"] = json!(a.witness.as_ref().map(cochain_value));
        }
        report = report.with("abelian", section);
    }
    Ok(report)
}

fn two_term_with_operator(
    path: &Path,
) -> Result<(
    crate::homotopy::TwoTermLinf,
    crate::homotopy::HomotopyAveraging,
)> {
    match load(path)? {
        Object::TwoTerm {
            structure,
            operator: Some(p),
        } => Ok((structure, p)),
        Object::TwoTerm { operator: None, .. } => Err(Error::Parse(format!(
            "{}: missing tensors P0, P1, P2",
            path.display()
        ))),
        _ => Err(wrong_kind(path, "two_term")),
    }
}

fn homotopy(name: &str, sub: &HomotopyCommand, produced: &mut Option<Document>) -> Result<Report> {
    match sub {
        HomotopyCommand::Check { file } => check_object(name, &load(file)?),
        HomotopyCommand::SkeletalToCocycle { file } => {
            let (t, p) = two_term_with_operator(file)?;
            let triple = skeletal_to_triple(&t, &p)?;
            *produced = Some(
                Object::Cochain {
                    representation: triple.representation,
                    cochain: triple.cocycle,
                }
                .to_document(),
            );
            Ok(Report::pass(name))
        }
        HomotopyCommand::CocycleToSkeletal { file } => {
            let Object::Cochain {
                representation,
                cochain,
            } = load(file)?
            else {
                return Err(wrong_kind(file, "cochain"));
            };
            let (t, p) = triple_to_skeletal(representation.base(), &representation, &cochain)?;
            *produced = Some(
                Object::TwoTerm {
                    structure: t,
                    operator: Some(p),
                }
                .to_document(),
            );
            Ok(Report::pass(name))
        }
        HomotopyCommand::StrictToCrossed { file } => {
            let (t, p) = two_term_with_operator(file)?;
            let c = strict_to_crossed(&t, &p)?;
            let verdict = c.check();
            *produced = Some(Object::Crossed(c).to_document());
            Ok(Report::from_verdict(name, &verdict))
        }
        HomotopyCommand::CrossedToStrict { file } => {
            let Object::Crossed(c) = load(file)? else {
                return Err(wrong_kind(file, "crossed_module"));
            };
            let (t, p) = crossed_to_strict(&c)?;
            let verdict = check_homotopy_averaging(&t, &p)?;
            *produced = Some(
                Object::TwoTerm {
                    structure: t,
                    operator: Some(p),
                }
                .to_document(),
            );
            Ok(Report::from_verdict(name, &verdict))
        }
        HomotopyCommand::Semidirect { file, literal } => {
            let Object::Crossed(c) = load(file)? else {
                return Err(wrong_kind(file, "crossed_module"));
            };
            let variant = if *literal {
                SemidirectBracket::SecondSlotOnly
            } else {
                SemidirectBracket::Standard
            };
            if let Verdict::Fail(v) = check_lie_bracket(&semidirect_bracket_tensor(&c, variant)) {
                return Ok(Report::fail(name, &v));
            }
            let a = crossed_semidirect(&c, variant)?;
            *produced = Some(Object::AveragingLieAlgebra(a).to_document());
            Ok(Report::pass(name))
        }
    }
}
