//! The idempotent ⊙-integral `∫_B f ⊙ dν = ⊕_{t ∈ ℝ₊} t ⊙ ν(B ∩ {f > t})`.
//!
//! Three evaluators are provided. [`integrate_threshold`] reduces the
//! supremum over `t` to the distinct values of `f` through left-continuity;
//! [`integrate_atomwise`] uses maxitivity of the integral in `B`;
//! [`integrate_oracle`] evaluates the defining supremum on an explicit grid
//! and is a lower bound for the other two.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::PseudoMul;
use crate::error::{Error, Result};
use crate::ext::ExtNonneg;
use crate::measure::{MaxMeasure, MeasurableFn, SetFunctionTable, Subset};

/// Refinement depth of the canonical oracle grid: each value `v` of `f`
/// contributes `v (1 - 2^-k)` for `k = 1..=CANONICAL_GRID_DEPTH`.
pub const CANONICAL_GRID_DEPTH: u32 = 40;

/// Lower bound for the probe standing in for `t → ∞`.
pub const LARGE_T_PROBE_LOG2: u32 = 40;

fn check_operands(f: &MeasurableFn, nu: &MaxMeasure, b: Subset) -> Result<()> {
    if f.space() != nu.space() || b.universe_size() != nu.space().len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// `⊕_v v ⊙ ν(B ∩ {f ≥ v})` over the distinct finite positive values `v` of
/// `f` on `B`, joined with `∞ ⊙ ν(B ∩ {f = ∞})`.
pub fn integrate_threshold(pm: &PseudoMul, f: &MeasurableFn, nu: &MaxMeasure, b: Subset) -> Result<ExtNonneg> {
    check_operands(f, nu, b)?;
    let mut atoms: Vec<usize> = b.iter().filter(|&i| f.at(i).is_positive()).collect();
    // descending in f, so ν(B ∩ {f ≥ v}) is a running maximum
    atoms.sort_by(|&i, &j| f.at(j).cmp(f.at(i)));
    let mut acc = ExtNonneg::zero();
    let mut level_mass = ExtNonneg::zero();
    let mut k = 0;
    while k < atoms.len() {
        let v = f.at(atoms[k]);
        while k < atoms.len() && f.at(atoms[k]) == v {
            level_mass = level_mass.oplus(nu.mass(atoms[k]));
            k += 1;
        }
        let term = pm.omul(v, &level_mass)?;
        if term > acc {
            acc = term;
        }
    }
    Ok(acc)
}

/// `⊕_{x ∈ B} f(x) ⊙ ν({x})`.
pub fn integrate_atomwise(pm: &PseudoMul, f: &MeasurableFn, nu: &MaxMeasure, b: Subset) -> Result<ExtNonneg> {
    check_operands(f, nu, b)?;
    let mut acc = ExtNonneg::zero();
    for i in b.iter() {
        let term = pm.omul(f.at(i), nu.mass(i))?;
        if term > acc {
            acc = term;
        }
    }
    Ok(acc)
}

/// `max_{t ∈ grid} t ⊙ ν(B ∩ {f > t})`. An empty grid yields `0`.
pub fn integrate_oracle(
    pm: &PseudoMul,
    f: &MeasurableFn,
    nu: &MaxMeasure,
    b: Subset,
    grid: &[ExtNonneg],
) -> Result<ExtNonneg> {
    check_operands(f, nu, b)?;
    let mut acc = ExtNonneg::zero();
    for t in grid {
        let level = b.intersection(&f.level_set_above(t));
        let term = pm.omul(t, &nu.eval(level)?)?;
        if term > acc {
            acc = term;
        }
    }
    Ok(acc)
}

/// Grid on which [`integrate_oracle`] approaches the integral: `0`, every
/// finite value of `f`, midpoints between consecutive values, each value
/// scaled by `1 - 2^-k`, and a probe above every finite value when `f`
/// attains `∞`.
pub fn canonical_grid(f: &MeasurableFn) -> Vec<ExtNonneg> {
    let mut finite: Vec<BigRational> = f.values().iter().filter_map(|v| v.as_rational().cloned()).collect();
    finite.sort();
    finite.dedup();
    let mut grid: Vec<BigRational> = vec![BigRational::from_integer(0.into())];
    for w in finite.windows(2) {
        grid.push((&w[0] + &w[1]) / BigInt::from(2));
    }
    for v in &finite {
        grid.push(v.clone());
        for k in 1..=CANONICAL_GRID_DEPTH {
            let eps = BigRational::new(BigInt::from(1), BigInt::from(1u64) << k);
            grid.push(v - v * eps);
        }
    }
    if f.values().iter().any(ExtNonneg::is_infinite) {
        let probe = BigRational::from_integer(BigInt::from(1u64) << LARGE_T_PROBE_LOG2);
        let above = finite.last().map(|m| m * BigInt::from(2) + BigInt::from(1));
        grid.push(match above {
            Some(a) if a > probe => a,
            _ => probe,
        });
    }
    grid.sort();
    grid.dedup();
    grid.into_iter().map(ExtNonneg::Finite).collect()
}

/// The set function `B ↦ ∫_B f ⊙ dν`, tabulated.
pub fn pushforward(pm: &PseudoMul, f: &MeasurableFn, nu: &MaxMeasure) -> Result<SetFunctionTable> {
    let space = nu.space().clone();
    let values = space.subsets()?.map(|b| integrate_threshold(pm, f, nu, b)).collect::<Result<Vec<_>>>()?;
    SetFunctionTable::new(space, values)
}

/// `B ↦ ∫_B f ⊙ dν` as a measure: its atom masses are `f(x) ⊙ ν({x})`.
pub fn pushforward_measure(pm: &PseudoMul, f: &MeasurableFn, nu: &MaxMeasure) -> Result<MaxMeasure> {
    if f.space() != nu.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = nu.space().len();
    let mass = (0..n)
        .map(|i| integrate_threshold(pm, f, nu, Subset::singleton(i, n)))
        .collect::<Result<Vec<_>>>()?;
    MaxMeasure::new(nu.space().clone(), mass)
}
