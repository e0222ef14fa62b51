//! Minkowski vacuum and one-particle states expanded in Rindler-wedge modes.
//!
//! Fermion registry: `[I particle (+k, s), II antiparticle (-k, s)]`, so the
//! pair state `|1, 1^c>` is `b_I^dag b_II^dag |0, 0>` and the region-II ladder
//! operators carry the sign `(-1)^(n_I)`.
//!
//! Scalar registry: `[I boson (+k), II boson (-k)]` truncated at `n_max`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fock::{self, LadderKind, ModeLabel, ModeRegistry, Region, Species, SpinTag, StateVector, Wavevector};
use crate::numerics::{ComplexMatrix, C64, ZERO};

/// Largest `||a_R |vac>||` accepted as annihilation.
pub const ANNIHILATION_TOLERANCE: f64 = 1e-12;

/// Dimensionless mode energy and the matching scalar squeezing.
///
/// `tanh r = exp(-2 pi omega)`. The pair weight of the fermionic vacuum is
/// `exp(-pi omega)`, so the two parameterizations differ by a factor of two
/// in the exponent; both are kept as given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnruhParams {
    omega: f64,
    squeezing: f64,
}

impl UnruhParams {
    /// `omega = 0` maps to `r = +inf`.
    pub fn from_omega(omega: f64) -> Result<Self> {
        if !(omega >= 0.0) {
            return Err(invalid("omega", omega, "must be >= 0"));
        }
        let squeezing = (-2.0 * PI * omega).exp().atanh();
        Ok(Self { omega, squeezing })
    }

    /// `r = 0` maps to `omega = +inf`.
    pub fn from_squeezing(r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(invalid("r", r, "must be >= 0"));
        }
        let omega = -r.tanh().ln() / (2.0 * PI);
        Ok(Self { omega, squeezing: r })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn squeezing(&self) -> f64 {
        self.squeezing
    }

    fn finite_omega(&self) -> Result<f64> {
        if self.omega.is_finite() {
            Ok(self.omega)
        } else {
            Err(invalid("omega", self.omega, "fermion states need a finite omega"))
        }
    }

    fn finite_squeezing(&self) -> Result<f64> {
        if self.squeezing.is_finite() {
            Ok(self.squeezing)
        } else {
            Err(invalid("r", self.squeezing, "scalar states need a finite squeezing"))
        }
    }
}

/// Relative sign of the `|1, 1^c>` amplitude in the fermion vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `(-1)^n exp(-n pi omega)` exactly as written.
    Verbatim,
    /// `+exp(-pi omega)` on the pair term.
    Flipped,
}

impl PhaseConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseConvention::Verbatim => "verbatim",
            PhaseConvention::Flipped => "flipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnruhState {
    pub state: StateVector,
    /// `1 - ||raw truncated state||^2`; zero for fermions.
    pub truncation_deficit: f64,
    pub convention: Option<PhaseConvention>,
}

pub fn fermion_modes() -> (ModeLabel, ModeLabel) {
    (
        ModeLabel::fermion(Region::I, Species::Particle, Wavevector::Plus, SpinTag::Up),
        ModeLabel::fermion(Region::II, Species::Antiparticle, Wavevector::Minus, SpinTag::Up),
    )
}

pub fn fermion_registry() -> Arc<ModeRegistry> {
    let (i, ii) = fermion_modes();
    Arc::new(ModeRegistry::new(vec![i, ii], 0).expect("distinct modes"))
}

pub fn scalar_modes() -> (ModeLabel, ModeLabel) {
    (
        ModeLabel::boson(Region::I, Wavevector::Plus),
        ModeLabel::boson(Region::II, Wavevector::Minus),
    )
}

pub fn scalar_registry(n_max: usize) -> Result<Arc<ModeRegistry>> {
    let (i, ii) = scalar_modes();
    Ok(Arc::new(ModeRegistry::new(vec![i, ii], n_max)?))
}

/// Fermion vacuum with an explicitly chosen pair-term sign.
pub fn fermion_vacuum_with(params: &UnruhParams, convention: PhaseConvention) -> Result<UnruhState> {
    let omega = params.finite_omega()?;
    let weight = (-PI * omega).exp();
    let c0 = 1.0 / ((-2.0 * PI * omega).exp() + 1.0).sqrt();
    let c1 = match convention {
        PhaseConvention::Verbatim => -weight * c0,
        PhaseConvention::Flipped => weight * c0,
    };
    let registry = fermion_registry();
    let mut amplitudes = vec![ZERO; registry.dim()];
    amplitudes[registry.basis_index(&[0, 0])] = C64::new(c0, 0.0);
    amplitudes[registry.basis_index(&[1, 1])] = C64::new(c1, 0.0);
    Ok(UnruhState {
        state: StateVector::new(registry, amplitudes)?,
        truncation_deficit: 0.0,
        convention: Some(convention),
    })
}

/// `||a_R |vac>||` for a given vacuum convention.
pub fn annihilation_residual(params: &UnruhParams, convention: PhaseConvention) -> Result<f64> {
    let vac = fermion_vacuum_with(params, convention)?;
    let a = fermion_bogoliubov(params, LadderKind::Annihilate)?;
    Ok(vac.state.apply(&a)?.norm())
}

/// Minkowski fermion vacuum in the Rindler basis.
///
/// The sign of the pair term is the one for which the Minkowski annihilator
/// `a_R` kills the state; the written `(-1)^n` is tried first.
pub fn fermion_unruh_vacuum(params: &UnruhParams) -> Result<UnruhState> {
    for convention in [PhaseConvention::Verbatim, PhaseConvention::Flipped] {
        if annihilation_residual(params, convention)? <= ANNIHILATION_TOLERANCE {
            return fermion_vacuum_with(params, convention);
        }
    }
    unreachable!("the flipped convention annihilates for every finite omega")
}

/// Minkowski ladder operator as a matrix on the two-mode Rindler space:
/// `a_R^dag = (2 cosh pi omega)^(-1/2) (e^(pi omega/2) b_I^dag - e^(-pi omega/2) b_II)`.
pub fn fermion_bogoliubov(params: &UnruhParams, kind: LadderKind) -> Result<ComplexMatrix> {
    let omega = params.finite_omega()?;
    let registry = fermion_registry();
    let (mode_i, mode_ii) = fermion_modes();
    let norm = 1.0 / (2.0 * (PI * omega).cosh()).sqrt();
    let up = C64::new(norm * (PI * omega / 2.0).exp(), 0.0);
    let down = C64::new(norm * (-PI * omega / 2.0).exp(), 0.0);
    let bi_dag = fock::fermion_ladder(&registry, &mode_i, LadderKind::Create)?;
    let bii = fock::fermion_ladder(&registry, &mode_ii, LadderKind::Annihilate)?;
    let creation = &bi_dag.scale(up) - &bii.scale(down);
    Ok(match kind {
        LadderKind::Create => creation,
        LadderKind::Annihilate => creation.adjoint(),
    })
}

/// Region-I occupation evaluated in closed form and as a matrix expectation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupation {
    pub omega: f64,
    pub closed_form: f64,
    pub matrix_expectation: f64,
    pub gap: f64,
    pub convention: PhaseConvention,
}

pub fn occupation_i(params: &UnruhParams) -> Result<Occupation> {
    let omega = params.finite_omega()?;
    let closed_form = 1.0 / (1.0 + (2.0 * PI * omega).exp());
    let vac = fermion_unruh_vacuum(params)?;
    let registry = fermion_registry();
    let (mode_i, _) = fermion_modes();
    let bd = fock::fermion_ladder(&registry, &mode_i, LadderKind::Create)?;
    let b = fock::fermion_ladder(&registry, &mode_i, LadderKind::Annihilate)?;
    let number = &bd * &b;
    let matrix_expectation = vac.state.expectation(&number)?.re;
    Ok(Occupation {
        omega,
        closed_form,
        matrix_expectation,
        gap: (closed_form - matrix_expectation).abs(),
        convention: vac.convention.expect("fermion vacuum carries a convention"),
    })
}

/// `a_R^dag |vac>`, renormalized; a product state `|1>_I |0>_II`.
pub fn fermion_excited(params: &UnruhParams) -> Result<UnruhState> {
    let vac = fermion_unruh_vacuum(params)?;
    let create = fermion_bogoliubov(params, LadderKind::Create)?;
    let (state, _) = vac.state.apply(&create)?.normalized()?;
    Ok(UnruhState {
        state,
        truncation_deficit: 0.0,
        convention: vac.convention,
    })
}

fn truncated_state(registry: Arc<ModeRegistry>, amplitudes: Vec<C64>) -> Result<UnruhState> {
    let raw = StateVector::new(registry, amplitudes)?;
    let norm = raw.norm();
    let (state, _) = raw.normalized()?;
    Ok(UnruhState {
        state,
        truncation_deficit: (1.0 - norm * norm).max(0.0),
        convention: None,
    })
}

/// Two-mode squeezed vacuum `sum_n tanh^n r / cosh r |n>_I |n>_II`, truncated
/// at `n_max` and renormalized.
pub fn scalar_unruh_vacuum(params: &UnruhParams, n_max: usize) -> Result<UnruhState> {
    let r = params.finite_squeezing()?;
    if n_max < 1 {
        return Err(invalid("n_max", n_max as f64, "must be >= 1"));
    }
    let registry = scalar_registry(n_max)?;
    let (t, ch) = (r.tanh(), r.cosh());
    let mut amplitudes = vec![ZERO; registry.dim()];
    for n in 0..=n_max {
        amplitudes[registry.basis_index(&[n, n])] = C64::new(t.powi(n as i32) / ch, 0.0);
    }
    truncated_state(registry, amplitudes)
}

/// Scalar one- or two-particle Minkowski states in the Rindler basis:
/// level 1 on `|n+1, n>` with `tanh^n r sqrt(n+1) / cosh^2 r`, level 2 on
/// `|n+2, n>` with `tanh^n r sqrt((n+1)(n+2)) / cosh^3 r`.
pub fn scalar_excited(params: &UnruhParams, n_max: usize, level: usize) -> Result<UnruhState> {
    let r = params.finite_squeezing()?;
    if !(1..=2).contains(&level) {
        return Err(invalid("level", level as f64, "must be 1 or 2"));
    }
    if level > n_max {
        return Err(invalid("level", level as f64, "exceeds n_max"));
    }
    let registry = scalar_registry(n_max)?;
    let (t, ch) = (r.tanh(), r.cosh());
    let mut amplitudes = vec![ZERO; registry.dim()];
    for n in 0..=(n_max - level) {
        let nf = n as f64;
        let amp = match level {
            1 => t.powi(n as i32) * (nf + 1.0).sqrt() / ch.powi(2),
            _ => t.powi(n as i32) * ((nf + 1.0) * (nf + 2.0)).sqrt() / ch.powi(3),
        };
        amplitudes[registry.basis_index(&[n + level, n])] = C64::new(amp, 0.0);
    }
    truncated_state(registry, amplitudes)
}

/// Applies the scalar Bogoliubov operator
/// `a_R^dag = b_I^dag cosh r - b_II sinh r` (or its adjoint) to a state.
pub fn apply_scalar_bogoliubov(params: &UnruhParams, kind: LadderKind, state: &StateVector) -> Result<StateVector> {
    let r = params.finite_squeezing()?;
    let (mode_i, mode_ii) = scalar_modes();
    let (on_i, on_ii) = match kind {
        LadderKind::Create => (LadderKind::Create, LadderKind::Annihilate),
        LadderKind::Annihilate => (LadderKind::Annihilate, LadderKind::Create),
    };
    let a = state.apply_ladder(&mode_i, on_i)?;
    let b = state.apply_ladder(&mode_ii, on_ii)?;
    let amplitudes = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x * r.cosh() - y * r.sinh())
        .collect();
    StateVector::new(state.registry().clone(), amplitudes)
}

/// Dense scalar Bogoliubov matrix; only sensible for small `n_max`.
pub fn scalar_bogoliubov(params: &UnruhParams, n_max: usize, kind: LadderKind) -> Result<ComplexMatrix> {
    let r = params.finite_squeezing()?;
    let registry = scalar_registry(n_max)?;
    let (mode_i, mode_ii) = scalar_modes();
    let bi_dag = fock::boson_ladder(&registry, &mode_i, LadderKind::Create)?;
    let bii = fock::boson_ladder(&registry, &mode_ii, LadderKind::Annihilate)?;
    let creation = &bi_dag.scale(C64::new(r.cosh(), 0.0)) - &bii.scale(C64::new(r.sinh(), 0.0));
    Ok(match kind {
        LadderKind::Create => creation,
        LadderKind::Annihilate => creation.adjoint(),
    })
}

/// Schmidt coefficients of a two-mode Rindler state across the I | II split.
pub fn wedge_schmidt(state: &UnruhState) -> Result<Vec<f64>> {
    let first = state.state.registry().modes()[0];
    fock::schmidt_coefficients(&state.state, &[first])
}
