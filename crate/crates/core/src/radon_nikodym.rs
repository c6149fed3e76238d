//! Densities `c` with `ν(B) = ∫_B c ⊙ dτ` and the diagnosis of which
//! dominating measures admit them for every ⊙-dominated `ν`.
//!
//! On a finite powerset both sides of the density identity are maxitive in
//! `B`, so the identity reduces to `c(x) ⊙ τ({x}) = ν({x})` atom by atom.
//! A solution exists for every `ν ≪_⊙ τ` exactly when `τ` is σ-⊙-finite
//! (finite spaces are always σ-principal).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{finiteness_profile, FrontierShape, PseudoMul, ZeroMap};
use crate::error::{Error, Result};
use crate::ext::ExtNonneg;
use crate::integral::integrate_threshold;
use crate::measure::{
    find_odot_spots, is_semi_odot_finite, is_sigma_odot_finite, MaxMeasure, MeasurableFn, SpotReport, Subset,
    EXHAUSTIVE_CAP,
};

/// Bisection budget for custom operations.
const BISECTION_STEPS: usize = 200;
const BISECTION_REL_WIDTH: f64 = 1e-12;

/// `{ c ⊙ t : c ∈ [0, ∞] } = {0} ∪ [O(t), ∞ ⊙ t]`, with the lower end open
/// unless `lower_attained`. Chains carry their exact (finite) image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AchievableSet {
    pub contains_zero: bool,
    pub lower: ExtNonneg,
    pub lower_attained: bool,
    pub upper: ExtNonneg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<ExtNonneg>>,
}

impl AchievableSet {
    pub fn contains(&self, x: &ExtNonneg) -> bool {
        if x.is_zero() {
            return self.contains_zero;
        }
        if let Some(m) = &self.members {
            return m.contains(x);
        }
        let above = if self.lower_attained { *x >= self.lower } else { *x > self.lower };
        above && *x <= self.upper
    }
}

impl fmt::Display for AchievableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.members {
            let items: Vec<String> = m.iter().map(ToString::to_string).collect();
            return write!(f, "{{{}}}", items.join(", "));
        }
        if self.lower == self.upper && self.lower_attained {
            if self.lower.is_zero() {
                return f.write_str("{0}");
            }
            return write!(f, "{{0, {}}}", self.lower);
        }
        if self.lower.is_zero() {
            return write!(f, "[0, {}]", self.upper);
        }
        let open = if self.lower_attained { "[" } else { "(" };
        write!(f, "{{0}} ∪ {open}{}, {}]", self.lower, self.upper)
    }
}

/// The image of `c ↦ c ⊙ t`.
pub fn achievable_set(pm: &PseudoMul, t: &ExtNonneg) -> Result<AchievableSet> {
    pm.check_member(t)?;
    let upper = match pm {
        PseudoMul::Chain(c) => pm.omul(c.carrier().last().unwrap(), t)?,
        _ => pm.omul(&ExtNonneg::Infinity, t)?,
    };
    let set = match pm {
        PseudoMul::StandardProduct => {
            let attained = t.is_infinite() || t.is_zero();
            AchievableSet { contains_zero: true, lower: pm.zero_map(t)?, lower_attained: attained, upper, members: None }
        }
        PseudoMul::Minimum => {
            AchievableSet { contains_zero: true, lower: ExtNonneg::zero(), lower_attained: t.is_zero(), upper, members: None }
        }
        PseudoMul::Chain(c) => {
            let mut image = c.carrier().iter().map(|s| pm.omul(s, t)).collect::<Result<Vec<_>>>()?;
            image.sort();
            image.dedup();
            let positive_min = image.iter().find(|v| v.is_positive()).cloned().unwrap_or_else(ExtNonneg::zero);
            AchievableSet { contains_zero: true, lower: positive_min, lower_attained: true, upper, members: Some(image) }
        }
        PseudoMul::Custom(_) => {
            let lower = match pm.zero_map_estimate(t)? {
                ZeroMap::Value(v) => v,
                ZeroMap::Unresolved { hi, .. } => hi,
            };
            AchievableSet { contains_zero: true, lower, lower_attained: false, upper, members: None }
        }
    };
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum FailureReason {
    /// No `c` gives `c ⊙ τ({x}) = ν({x})`.
    TargetOutsideAchievable { target: ExtNonneg, achievable: AchievableSet },
    /// `τ({x}) = 0` but `ν({x}) > 0`.
    NullTauPositiveNu { target: ExtNonneg },
    /// Custom operation: the bisection did not close on the target.
    Unresolved { target: ExtNonneg, lo: ExtNonneg, hi: ExtNonneg },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::TargetOutsideAchievable { target, achievable } => {
                write!(f, "target {target} is outside the achievable set {achievable}")
            }
            FailureReason::NullTauPositiveNu { target } => write!(f, "tau is null here but nu = {target}"),
            FailureReason::Unresolved { target, lo, hi } => {
                write!(f, "bisection for target {target} stopped with bracket [{lo}, {hi}]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomFailure {
    pub atom: String,
    #[serde(flatten)]
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DensityResult {
    Density(MeasurableFn),
    Failure(Vec<AtomFailure>),
}

impl DensityResult {
    pub fn density(&self) -> Option<&MeasurableFn> {
        match self {
            DensityResult::Density(c) => Some(c),
            DensityResult::Failure(_) => None,
        }
    }

    pub fn failures(&self) -> &[AtomFailure] {
        match self {
            DensityResult::Density(_) => &[],
            DensityResult::Failure(f) => f,
        }
    }
}

/// `ν ≪_⊙ τ`, checked atom by atom: `ν({x}) ≤ ∞ ⊙ τ({x})` wherever
/// `τ({x})` is ⊙-finite.
pub fn is_abs_continuous(pm: &PseudoMul, nu: &MaxMeasure, tau: &MaxMeasure) -> Result<bool> {
    pm.require_non_degenerate()?;
    nu.same_space(tau)?;
    for (n, t) in nu.masses().iter().zip(tau.masses()) {
        if pm.is_odot_finite(t)? && !pm.approx_le(n, &pm.omul(&ExtNonneg::Infinity, t)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ν ≪_⊙ τ` from the definition, over every subset.
pub fn is_abs_continuous_exhaustive(pm: &PseudoMul, nu: &MaxMeasure, tau: &MaxMeasure) -> Result<bool> {
    pm.require_non_degenerate()?;
    nu.same_space(tau)?;
    for b in tau.space().subsets()? {
        let t = tau.eval(b)?;
        if pm.is_odot_finite(&t)? && !pm.approx_le(&nu.eval(b)?, &pm.omul(&ExtNonneg::Infinity, &t)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least `c` with `c ⊙ tau_x = nu_x`, if any.
///
/// When every positive `c` solves the equation (`∞ ⊙ ∞ = ∞` under the
/// product) no least positive solution exists and `1_⊙` is returned.
pub fn solve_atom_density(pm: &PseudoMul, nu_x: &ExtNonneg, tau_x: &ExtNonneg) -> Result<Option<ExtNonneg>> {
    Ok(solve_atom(pm, nu_x, tau_x)?.ok())
}

fn solve_atom(
    pm: &PseudoMul,
    nu_x: &ExtNonneg,
    tau_x: &ExtNonneg,
) -> Result<std::result::Result<ExtNonneg, FailureReason>> {
    pm.check_member(nu_x)?;
    pm.check_member(tau_x)?;
    if nu_x.is_zero() {
        return Ok(Ok(ExtNonneg::zero()));
    }
    if tau_x.is_zero() {
        return Ok(Err(FailureReason::NullTauPositiveNu { target: nu_x.clone() }));
    }
    let outside = || -> Result<FailureReason> {
        Ok(FailureReason::TargetOutsideAchievable { target: nu_x.clone(), achievable: achievable_set(pm, tau_x)? })
    };
    let solved = match pm {
        PseudoMul::StandardProduct => match tau_x {
            ExtNonneg::Finite(t) => Some(nu_x.div_finite(t)),
            ExtNonneg::Infinity if nu_x.is_infinite() => Some(pm.identity()),
            ExtNonneg::Infinity => None,
        },
        PseudoMul::Minimum => (nu_x <= tau_x).then(|| nu_x.clone()),
        PseudoMul::Chain(chain) => {
            let mut found = None;
            for c in chain.carrier() {
                if pm.omul(c, tau_x)? == *nu_x {
                    found = Some(c.clone());
                    break;
                }
            }
            found
        }
        PseudoMul::Custom(_) => return solve_custom(pm, nu_x, tau_x),
    };
    match solved {
        Some(c) => Ok(Ok(c)),
        None => Ok(Err(outside()?)),
    }
}

fn solve_custom(
    pm: &PseudoMul,
    nu_x: &ExtNonneg,
    tau_x: &ExtNonneg,
) -> Result<std::result::Result<ExtNonneg, FailureReason>> {
    let achievable = achievable_set(pm, tau_x)?;
    let target = nu_x.to_f64();
    let eval = |c: f64| -> Result<f64> { Ok(pm.omul(&ExtNonneg::from_f64(c).unwrap(), tau_x)?.to_f64()) };
    let close = |a: f64| pm.approx_eq(&ExtNonneg::from_f64(a).unwrap(), nu_x);
    let outside = |achievable: AchievableSet| FailureReason::TargetOutsideAchievable { target: nu_x.clone(), achievable };
    if !pm.approx_le(nu_x, &achievable.upper) {
        return Ok(Err(outside(achievable)));
    }
    if pm.approx_le(nu_x, &achievable.lower) && !close(achievable.lower.to_f64()) {
        return Ok(Err(outside(achievable)));
    }
    // bracket: first dyadic c with c ⊙ τ ≥ target
    let mut hi = None;
    for k in -60..=60 {
        let c = (2.0f64).powi(k);
        let v = eval(c)?;
        if v >= target || close(v) {
            hi = Some(c);
            break;
        }
    }
    let Some(mut hi) = hi else {
        return Ok(if close(eval(f64::INFINITY)?) {
            Ok(ExtNonneg::Infinity)
        } else {
            Err(outside(achievable))
        });
    };
    let mut lo = if hi <= (2.0f64).powi(-60) { 0.0 } else { hi / 2.0 };
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= BISECTION_REL_WIDTH * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = eval(mid)?;
        if v >= target || close(v) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if close(eval(hi)?) {
        Ok(Ok(ExtNonneg::from_f64(hi).unwrap()))
    } else {
        Ok(Err(FailureReason::Unresolved {
            target: nu_x.clone(),
            lo: ExtNonneg::from_f64(lo).unwrap(),
            hi: ExtNonneg::from_f64(hi).unwrap(),
        }))
    }
}

/// Solves for the pointwise-minimal density of `ν` with respect to `τ`, or
/// lists every atom where none exists.
pub fn solve_density(pm: &PseudoMul, nu: &MaxMeasure, tau: &MaxMeasure) -> Result<DensityResult> {
    pm.require_non_degenerate()?;
    nu.same_space(tau)?;
    let space = tau.space();
    let mut values = Vec::with_capacity(space.len());
    let mut failures = Vec::new();
    for i in 0..space.len() {
        match solve_atom(pm, nu.mass(i), tau.mass(i))? {
            Ok(c) => values.push(c),
            Err(reason) => failures.push(AtomFailure { atom: space.atoms()[i].clone(), reason }),
        }
    }
    if failures.is_empty() {
        Ok(DensityResult::Density(MeasurableFn::new(space.clone(), values)?))
    } else {
        Ok(DensityResult::Failure(failures))
    }
}

/// Checks `ν(B) = ∫_B c ⊙ dτ` on every subset.
pub fn verify_density(pm: &PseudoMul, c: &MeasurableFn, nu: &MaxMeasure, tau: &MaxMeasure) -> Result<bool> {
    nu.same_space(tau)?;
    if c.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    for b in tau.space().subsets()? {
        if !pm.approx_eq(&integrate_threshold(pm, c, tau, b)?, &nu.eval(b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces a density by one with ⊙-finite values: `c` on
/// `F = {c ≪_⊙ ∞}` and `0` elsewhere.
///
/// Requires `c` to be a density of `ν` and `ν` to be semi-⊙-finite; both
/// are checked and reported as [`Error::Precondition`].
pub fn finitize_density(pm: &PseudoMul, c: &MeasurableFn, nu: &MaxMeasure, tau: &MaxMeasure) -> Result<MeasurableFn> {
    if !verify_density(pm, c, nu, tau)? {
        return Err(Error::Precondition("c is not a density of nu with respect to tau".into()));
    }
    if !is_semi_odot_finite(pm, nu)? {
        return Err(Error::Precondition("nu is not semi-finite".into()));
    }
    let n = c.space().len();
    let mut finite_bits = 0u64;
    for i in 0..n {
        if pm.is_odot_finite(c.at(i))? {
            finite_bits |= 1 << i;
        }
    }
    let c1 = c.restricted(Subset::from_bits(finite_bits, n))?;
    if !verify_density(pm, &c1, nu, tau)? {
        return Err(Error::Precondition("finitized density failed to verify".into()));
    }
    Ok(c1)
}

/// How `τ(E)` sits against `φ`, the supremum of the ⊙-finite elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrontierVerdict {
    /// `φ = ∞`; nothing to check.
    Unbounded,
    Below,
    /// `τ(E) = φ`: within the bound, but `τ(E)` is ⊙-infinite.
    AtFrontier,
    Above,
}

impl FrontierVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, FrontierVerdict::Above)
    }
}

/// Necessary conditions for the Radon–Nikodym property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NecessaryCondition {
    NoOdotSpot,
    TotalWithinFrontier,
    SemiOdotFinite,
    SigmaOdotFinite,
    SigmaPrincipal,
}

impl NecessaryCondition {
    pub fn describe(&self) -> &'static str {
        match self {
            NecessaryCondition::NoOdotSpot => "tau has no odot-spot",
            NecessaryCondition::TotalWithinFrontier => "tau(E) <= phi",
            NecessaryCondition::SemiOdotFinite => "tau is semi-odot-finite",
            NecessaryCondition::SigmaOdotFinite => "tau is sigma-odot-finite",
            NecessaryCondition::SigmaPrincipal => "tau is sigma-principal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RNDiagnosis {
    pub sigma_odot_finite: bool,
    pub sigma_principal: bool,
    pub sigma_principal_note: String,
    pub spots: SpotReport,
    pub semi_finite: bool,
    pub total: ExtNonneg,
    pub phi: ExtNonneg,
    pub total_vs_phi: FrontierVerdict,
    pub rn_property: bool,
    /// Necessary conditions that fail, in the order they are derived.
    pub failing: Vec<NecessaryCondition>,
}

pub fn diagnose_rn(pm: &PseudoMul, tau: &MaxMeasure) -> Result<RNDiagnosis> {
    pm.require_non_degenerate()?;
    let profile = finiteness_profile(pm)?;
    let sigma_odot_finite = is_sigma_odot_finite(pm, tau)?;
    let spots = find_odot_spots(pm, tau)?;
    let semi_finite = if tau.space().len() <= EXHAUSTIVE_CAP {
        is_semi_odot_finite(pm, tau)?
    } else {
        sigma_odot_finite
    };
    let total = tau.total();
    let total_vs_phi = match profile.shape {
        _ if profile.phi.is_infinite() => FrontierVerdict::Unbounded,
        FrontierShape::WholeInterval => FrontierVerdict::Unbounded,
        FrontierShape::HalfOpen => match total.cmp(&profile.phi) {
            std::cmp::Ordering::Less => FrontierVerdict::Below,
            std::cmp::Ordering::Equal => FrontierVerdict::AtFrontier,
            std::cmp::Ordering::Greater => FrontierVerdict::Above,
        },
    };
    let sigma_principal = true;
    let mut failing = Vec::new();
    if !spots.is_empty() {
        failing.push(NecessaryCondition::NoOdotSpot);
    }
    if !total_vs_phi.holds() {
        failing.push(NecessaryCondition::TotalWithinFrontier);
    }
    if !semi_finite {
        failing.push(NecessaryCondition::SemiOdotFinite);
    }
    if !sigma_odot_finite {
        failing.push(NecessaryCondition::SigmaOdotFinite);
    }
    Ok(RNDiagnosis {
        sigma_odot_finite,
        sigma_principal,
        sigma_principal_note: "finite powerset: every sigma-ideal is principal".into(),
        spots,
        semi_finite,
        total,
        phi: profile.phi,
        total_vs_phi,
        rn_property: sigma_odot_finite && sigma_principal,
        failing,
    })
}

/// A measure dominated by `τ` without a density: `0` on atoms of ⊙-finite
/// `τ`-mass and `1_⊙` elsewhere. `None` when `τ` is σ-⊙-finite.
pub fn undensifiable_witness(pm: &PseudoMul, tau: &MaxMeasure) -> Result<Option<MaxMeasure>> {
    pm.require_non_degenerate()?;
    let mut any = false;
    let mut mass = Vec::with_capacity(tau.space().len());
    for m in tau.masses() {
        if pm.is_odot_finite(m)? {
            mass.push(ExtNonneg::zero());
        } else {
            any = true;
            mass.push(pm.identity());
        }
    }
    if !any {
        return Ok(None);
    }
    Ok(Some(MaxMeasure::new(tau.space().clone(), mass)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ChainOp, CustomOp};
    use crate::measure::{delta_sharp, Space};

    fn v(s: &str) -> ExtNonneg {
        s.parse().unwrap()
    }

    fn m(space: &std::sync::Arc<Space>, masses: &[&str]) -> MaxMeasure {
        MaxMeasure::new(space.clone(), masses.iter().map(|x| v(x)).collect()).unwrap()
    }

    #[test]
    fn abs_continuity_examples() {
        let s3 = Space::new(["a", "b", "c"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let nu = delta_sharp(s3.clone());
        let tau = m(&s3, &["inf", "inf", "inf"]);
        assert!(is_abs_continuous(&times, &nu, &tau).unwrap());
        let s1 = Space::new(["a"]).unwrap();
        assert!(!is_abs_continuous(&times, &m(&s1, &["1"]), &m(&s1, &["0"])).unwrap());
        assert!(!is_abs_continuous(&PseudoMul::Minimum, &m(&s1, &["2"]), &m(&s1, &["1"])).unwrap());
    }

    #[test]
    fn achievable_set_examples() {
        let times = PseudoMul::StandardProduct;
        let a = achievable_set(&times, &v("3")).unwrap();
        for x in ["0", "1/9", "3", "1000", "inf"] {
            assert!(a.contains(&v(x)));
        }
        let a = achievable_set(&times, &v("inf")).unwrap();
        assert!(a.contains(&v("0")) && a.contains(&v("inf")) && !a.contains(&v("1")));
        assert_eq!(a.to_string(), "{0, inf}");
        let a = achievable_set(&PseudoMul::Minimum, &v("1")).unwrap();
        assert!(a.contains(&v("1/2")) && a.contains(&v("1")) && !a.contains(&v("3/2")));
        assert_eq!(a.to_string(), "[0, 1]");
    }

    #[test]
    fn atom_solve_examples() {
        let times = PseudoMul::StandardProduct;
        assert_eq!(solve_atom_density(&times, &v("1"), &v("2")).unwrap(), Some(v("1/2")));
        assert_eq!(solve_atom_density(&times, &v("1"), &v("inf")).unwrap(), None);
        assert_eq!(solve_atom_density(&times, &v("0"), &v("0")).unwrap(), Some(v("0")));
        assert_eq!(solve_atom_density(&times, &v("inf"), &v("2")).unwrap(), Some(v("inf")));
        assert_eq!(solve_atom_density(&times, &v("inf"), &v("inf")).unwrap(), Some(v("1")));
        assert_eq!(solve_atom_density(&PseudoMul::Minimum, &v("1/5"), &v("1/2")).unwrap(), Some(v("1/5")));
        assert_eq!(solve_atom_density(&PseudoMul::Minimum, &v("1/2"), &v("1/2")).unwrap(), Some(v("1/2")));
    }

    #[test]
    fn density_examples() {
        let s = Space::new(["a", "b"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let tau = m(&s, &["2", "3"]);
        let nu = m(&s, &["1", "1"]);
        let c = solve_density(&times, &nu, &tau).unwrap();
        let c = c.density().unwrap();
        assert_eq!(c.values(), &[v("1/2"), v("1/3")]);
        assert!(verify_density(&times, c, &nu, &tau).unwrap());

        let s3 = Space::new(["a", "b", "c"]).unwrap();
        let tau = m(&s3, &["3", "1", "1/2"]);
        let nu = m(&s3, &["2", "1", "1/5"]);
        let c = solve_density(&PseudoMul::Minimum, &nu, &tau).unwrap();
        assert_eq!(c.density().unwrap().values(), &[v("2"), v("1"), v("1/5")]);
    }

    #[test]
    fn shilkret_counterexample_fails_everywhere() {
        let s3 = Space::new(["a", "b", "c"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let r = solve_density(&times, &delta_sharp(s3.clone()), &m(&s3, &["inf", "inf", "inf"])).unwrap();
        assert_eq!(r.failures().len(), 3);
        for f in r.failures() {
            match &f.reason {
                FailureReason::TargetOutsideAchievable { target, achievable } => {
                    assert_eq!(target, &v("1"));
                    assert_eq!(achievable.to_string(), "{0, inf}");
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn null_tau_positive_nu_reason() {
        let s = Space::new(["a"]).unwrap();
        let r = solve_density(&PseudoMul::StandardProduct, &m(&s, &["1"]), &m(&s, &["0"])).unwrap();
        assert!(matches!(r.failures()[0].reason, FailureReason::NullTauPositiveNu { .. }));
    }

    #[test]
    fn verify_rejects_wrong_densities() {
        let s = Space::new(["a", "b"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let tau = m(&s, &["2", "3"]);
        let nu = m(&s, &["1", "1"]);
        let zero = MeasurableFn::constant(s.clone(), v("0"));
        assert!(!verify_density(&times, &zero, &nu, &tau).unwrap());
        let bumped = MeasurableFn::new(s.clone(), vec![v("1/2"), v("1/2")]).unwrap();
        assert!(!verify_density(&times, &bumped, &nu, &tau).unwrap());
    }

    #[test]
    fn finitize_examples() {
        let s = Space::new(["a", "b"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let tau = m(&s, &["0", "1"]);
        let c = MeasurableFn::new(s.clone(), vec![v("inf"), v("2")]).unwrap();
        let nu = m(&s, &["0", "2"]);
        assert!(verify_density(&times, &c, &nu, &tau).unwrap());
        let c1 = finitize_density(&times, &c, &nu, &tau).unwrap();
        assert_eq!(c1.values(), &[v("0"), v("2")]);

        let finite = MeasurableFn::new(s.clone(), vec![v("0"), v("2")]).unwrap();
        assert_eq!(finitize_density(&times, &finite, &nu, &tau).unwrap(), finite);

        let wrong = MeasurableFn::new(s.clone(), vec![v("0"), v("3")]).unwrap();
        assert!(matches!(finitize_density(&times, &wrong, &nu, &tau), Err(Error::Precondition(_))));
    }

    #[test]
    fn finitize_requires_semi_finite_nu() {
        let s = Space::new(["a"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let tau = m(&s, &["1"]);
        let nu = m(&s, &["inf"]);
        let c = MeasurableFn::new(s, vec![v("inf")]).unwrap();
        assert!(matches!(finitize_density(&times, &c, &nu, &tau), Err(Error::Precondition(_))));
    }

    #[test]
    fn diagnose_examples() {
        let s3 = Space::new(["a", "b", "c"]).unwrap();
        let times = PseudoMul::StandardProduct;
        let d = diagnose_rn(&times, &m(&s3, &["inf", "inf", "inf"])).unwrap();
        assert!(!d.rn_property && !d.sigma_odot_finite && !d.semi_finite);
        assert_eq!(d.spots.maximal.as_ref().unwrap().len(), 3);

        let s2 = Space::new(["a", "b"]).unwrap();
        let d = diagnose_rn(&times, &m(&s2, &["2", "3"])).unwrap();
        assert!(d.rn_property && d.failing.is_empty());

        let chain = PseudoMul::Chain(ChainOp::frontier_fixture());
        let s1 = Space::new(["a"]).unwrap();
        let d = diagnose_rn(&chain, &m(&s1, &["2"])).unwrap();
        assert!(!d.rn_property);
        assert_eq!(d.total_vs_phi, FrontierVerdict::AtFrontier);
        assert_eq!(d.phi, v("2"));
        assert!(d.failing.contains(&NecessaryCondition::SigmaOdotFinite));
    }

    #[test]
    fn degenerate_operation_is_refused() {
        let proj = PseudoMul::Custom(CustomOp::new("proj", 1.0, vec![1.0], |s, t| if s == 0.0 { 0.0 } else { t }));
        let s = Space::new(["a"]).unwrap();
        let tau = m(&s, &["1"]);
        assert!(matches!(diagnose_rn(&proj, &tau), Err(Error::Degenerate(_))));
        assert!(matches!(solve_density(&proj, &tau, &tau), Err(Error::Degenerate(_))));
        assert!(matches!(is_abs_continuous(&proj, &tau, &tau), Err(Error::Degenerate(_))));
    }

    #[test]
    fn custom_bisection_recovers_the_quotient() {
        let times = PseudoMul::Custom(CustomOp::new("times-f64", 1.0, vec![0.5, 1.0, 2.0], |s, t| {
            if s == 0.0 || t == 0.0 {
                0.0
            } else {
                s * t
            }
        }));
        let c = solve_atom_density(&times, &v("1"), &v("3")).unwrap().unwrap();
        assert!((c.to_f64() - 1.0 / 3.0).abs() < 1e-11);
        assert_eq!(solve_atom_density(&times, &v("1"), &v("inf")).unwrap(), None);
    }
}
