use crate::arith::{finiteness_profile, validate_pseudo_mul, ChainOp, CheckStatus, PseudoMul, ValidationBudget};
use crate::error::Error;
use crate::ext::ExtNonneg;
use crate::integral::{integrate_atomwise, integrate_threshold};
use crate::measure::{MaxMeasure, MeasurableFn};
use crate::quotient::{build_quotient, check_ccc, disjoint_variation, localization_measure, localize, nguyen_measure};
use crate::radon_nikodym::{diagnose_rn, finitize_density, is_abs_continuous, solve_density, DensityResult};

use super::doc::{parse_pseudo_mul, OpSpec, SpecDoc};
use super::report::Report;

/// Default largest space a command accepts.
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Invalid(String),
    SizeCap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::SizeCap(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::SizeCap(m) => write!(f, "size cap: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_size_cap() {
            CliError::SizeCap(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    ValidateOp,
    Integrate { measure: String, function: String, subset: Option<Vec<String>> },
    Density { nu: String, tau: String, finitize: bool },
    Diagnose { tau: String },
    Quotient { tau: String },
    IdealMeasures { tau: String, ideal: String },
    Variation { tau: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidateOp => "validate-op",
            Command::Integrate { .. } => "integrate",
            Command::Density { .. } => "density",
            Command::Diagnose { .. } => "diagnose",
            Command::Quotient { .. } => "quotient",
            Command::IdealMeasures { .. } => "ideal-measures",
            Command::Variation { .. } => "variation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// `times`, `min`, `chain` or an inline JSON pseudo-multiplication.
    pub op: Option<String>,
    pub max_n: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { op: None, max_n: DEFAULT_MAX_N, seed: ValidationBudget::default().seed }
    }
}

/// The operation named by `--op`, falling back to the document's. `chain`
/// names the document's chain when it has one and the four-element
/// frontier fixture otherwise.
pub fn resolve_op(op: Option<&str>, doc: Option<&SpecDoc>) -> Result<(PseudoMul, OpSpec), CliError> {
    let spec = match op {
        None => match doc {
            Some(d) => d.pseudo_mul.clone(),
            None => return Err(CliError::Invalid("no pseudo-multiplication: pass --op or --space-file".into())),
        },
        Some("times") => OpSpec::Times,
        Some("min") => OpSpec::Min,
        Some("chain") => match doc.map(|d| &d.pseudo_mul) {
            Some(c @ OpSpec::Chain { .. }) => c.clone(),
            _ => OpSpec::from_chain(&ChainOp::frontier_fixture()),
        },
        Some(text) if text.trim_start().starts_with('{') => parse_pseudo_mul(text).map_err(|errs| {
            CliError::Invalid(errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
        })?,
        Some(other) => {
            return Err(CliError::Invalid(format!("unknown --op `{other}`; expected times, min, chain or a JSON chain")))
        }
    };
    Ok((spec.build()?, spec))
}

fn measure<'d>(doc: &'d SpecDoc, name: &str) -> Result<&'d MaxMeasure, CliError> {
    doc.measures.get(name).ok_or_else(|| CliError::Invalid(format!("no measure named `{name}`")))
}

fn function<'d>(doc: &'d SpecDoc, name: &str) -> Result<&'d MeasurableFn, CliError> {
    doc.functions.get(name).ok_or_else(|| CliError::Invalid(format!("no function named `{name}`")))
}

fn atom_rows(doc: &SpecDoc, cols: &[&[ExtNonneg]]) -> Vec<Vec<String>> {
    doc.space
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| std::iter::once(a.clone()).chain(cols.iter().map(|c| c[i].to_string())).collect())
        .collect()
}

pub fn run(cmd: &Command, doc: Option<&SpecDoc>, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(cmd.name());
    if let Some(op) = &opts.op {
        report.arg("op", op.clone());
    }
    if let Command::ValidateOp = cmd {
        let (pm, _) = resolve_op(opts.op.as_deref(), doc)?;
        validate_op(&pm, opts, &mut report)?;
        return Ok(report);
    }
    let doc = doc.ok_or_else(|| CliError::Invalid(format!("`{}` needs --space-file", cmd.name())))?;
    let n = doc.space.len();
    if n > opts.max_n {
        return Err(CliError::SizeCap(format!("space has {n} atoms; --max-n is {}", opts.max_n)));
    }
    let (pm, _) = resolve_op(opts.op.as_deref(), Some(doc))?;
    report.arg("pseudo_mul", pm.name());
    match cmd {
        Command::ValidateOp => unreachable!(),
        Command::Integrate { measure: m, function: f, subset } => {
            let nu = measure(doc, m)?;
            let func = function(doc, f)?;
            let b = match subset {
                Some(labels) => doc.space.subset(labels.iter().map(String::as_str))?,
                None => doc.space.full(),
            };
            report.arg("measure", m.clone()).arg("function", f.clone()).arg("subset", doc.space.format_subset(b));
            let threshold = integrate_threshold(&pm, func, nu, b)?;
            let atomwise = integrate_atomwise(&pm, func, nu, b)?;
            report.table(
                "integral",
                &["evaluation", "value"],
                vec![
                    vec!["threshold sweep".into(), threshold.to_string()],
                    vec!["atom-wise".into(), atomwise.to_string()],
                ],
            );
            report.verdict("evaluations agree", threshold == atomwise);
        }
        Command::Density { nu, tau, finitize } => {
            let numeas = measure(doc, nu)?;
            let taumeas = measure(doc, tau)?;
            report.arg("nu", nu.clone()).arg("tau", tau.clone());
            report.verdict("nu absolutely continuous", is_abs_continuous(&pm, numeas, taumeas)?);
            match solve_density(&pm, numeas, taumeas)? {
                DensityResult::Density(c) => {
                    report.verdict("density exists", true);
                    let mut cols: Vec<&[ExtNonneg]> = vec![c.values()];
                    let finite;
                    if *finitize {
                        finite = finitize_density(&pm, &c, numeas, taumeas)?;
                        cols.push(finite.values());
                        report.table("density", &["atom", "c", "finitized"], atom_rows(doc, &cols));
                    } else {
                        report.table("density", &["atom", "c"], atom_rows(doc, &cols));
                    }
                }
                DensityResult::Failure(failures) => {
                    report.verdict("density exists", false);
                    let rows = failures.iter().map(|f| vec![f.atom.clone(), f.reason.to_string()]).collect();
                    report.table("no density", &["atom", "reason"], rows);
                    report.certificate("density-failure", &failures);
                    report.negative = true;
                }
            }
        }
        Command::Diagnose { tau } => {
            let t = measure(doc, tau)?;
            report.arg("tau", tau.clone());
            let d = diagnose_rn(&pm, t)?;
            report
                .verdict("sigma-odot-finite", d.sigma_odot_finite)
                .verdict("sigma-principal", d.sigma_principal)
                .verdict("semi-odot-finite", d.semi_finite)
                .verdict("no odot-spot", d.spots.is_empty())
                .verdict("tau(E) <= phi", d.total_vs_phi.holds())
                .verdict("radon-nikodym property", d.rn_property);
            for c in &d.failing {
                report.note(format!("fails: {}", c.describe()));
            }
            report.negative = !d.rn_property;
            report.certificate("diagnosis", &d);
        }
        Command::Quotient { tau } => {
            let t = measure(doc, tau)?;
            report.arg("tau", tau.clone());
            let q = build_quotient(t)?;
            report.table(
                "quotient",
                &["non-null atoms", "classes"],
                vec![vec![doc.space.format_subset(q.non_null_atoms()), q.class_count().to_string()]],
            );
            let null = doc.space.format_subset(t.null_atoms());
            report.note(format!("null atoms: {null}"));
            if q.rank() <= crate::quotient::LATTICE_AUDIT_CAP {
                report.verdict("joins and meets are least and greatest bounds", q.audit_bounds()?);
            }
            let ccc = check_ccc(t, None)?;
            report.verdict("countable chain condition", ccc.holds);
            report.certificate("ccc", &ccc);
        }
        Command::IdealMeasures { tau, ideal } => {
            let t = measure(doc, tau)?;
            let i = doc.ideal(ideal).ok_or_else(|| CliError::Invalid(format!("no ideal named `{ideal}`")))?;
            report.arg("tau", tau.clone()).arg("ideal", ideal.clone());
            let loc = localization_measure(t, &i)?;
            let ng = nguyen_measure(t, &i)?;
            report.table(
                "ideal measures",
                &["atom", "tau", "localization", "nguyen"],
                atom_rows(doc, &[t.masses(), loc.masses(), ng.masses()]),
            );
            let l = localize(t, &i)?;
            report.note(format!("ideal top: {}; localized in {}", doc.space.format_subset(i.top()), doc.space.format_subset(l)));
        }
        Command::Variation { tau } => {
            let t = measure(doc, tau)?;
            report.arg("tau", tau.clone());
            let m = disjoint_variation(t)?;
            report.table("disjoint variation", &["atom", "tau", "m"], atom_rows(doc, &[t.masses(), m.masses()]));
            let full = doc.space.full();
            report.note(format!("m(E) = {}, tau(E) = {}", m.eval(full)?, t.eval(full)?));
            report.verdict("same null sets", m.null_atoms() == t.null_atoms());
        }
    }
    Ok(report)
}

fn validate_op(pm: &PseudoMul, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let budget = ValidationBudget { seed: opts.seed, ..ValidationBudget::default() };
    let ax = validate_pseudo_mul(pm, budget);
    report.arg("pseudo_mul", pm.name());
    let rows = ax
        .checks
        .iter()
        .map(|c| {
            let (status, detail) = match &c.status {
                CheckStatus::Pass => ("pass", String::new()),
                CheckStatus::Fail { witness } => {
                    ("FAIL", witness.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
                }
                CheckStatus::Skipped { reason } => ("skipped", reason.clone()),
            };
            vec![c.axiom.label().to_string(), status.to_string(), detail]
        })
        .collect();
    report.table("axioms", &["axiom", "status", "witness"], rows);
    report.verdict("all axioms hold", ax.passed());
    report.verdict("degenerate", ax.degenerate);
    match finiteness_profile(pm) {
        Ok(p) => {
            let finite = p
                .finite_elements
                .as_ref()
                .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
                .unwrap_or_default();
            report.table(
                "finiteness profile",
                &["shape", "phi", "finite elements"],
                vec![vec![format!("{:?}", p.shape), p.phi.to_string(), finite]],
            );
        }
        Err(e) => {
            report.note(format!("no finiteness profile: {e}"));
        }
    }
    report.note(if ax.exhaustive {
        "exhaustive scan of the carrier".to_string()
    } else {
        format!("sampled on {} carrier points", ax.sample_size)
    });
    report.certificate("axiom-report", &ax);
    report.negative = !ax.passed();
    Ok(())
}

/// Subset given as `a,b,c`; empty text is the empty set.
pub fn parse_subset_arg(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}
