//! Mode registries, occupation-number bases and ladder-operator matrices.
//!
//! Basis ordering: occupation numbers read as a mixed-radix integer whose
//! least-significant digit is the first registry mode. Fermion modes have
//! radix 2, boson modes radix `n_max + 1`.
//!
//! Fermionic sign string: a ladder operator acting on mode `j` picks up
//! `(-1)^(number of occupied fermion modes before j in registry order)`.
//! Boson modes never contribute to the sign.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{self, ComplexMatrix, C64, ZERO};

pub const DEFAULT_BOSON_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    Particle,
    Antiparticle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wavevector {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinTag {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    fn name(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// Symbolic label of a field mode; no mode functions are attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeLabel {
    pub region: Region,
    pub species: Species,
    pub wavevector: Wavevector,
    pub spin: Option<SpinTag>,
    pub statistics: Statistics,
}

impl ModeLabel {
    pub fn fermion(region: Region, species: Species, wavevector: Wavevector, spin: SpinTag) -> Self {
        Self {
            region,
            species,
            wavevector,
            spin: Some(spin),
            statistics: Statistics::Fermion,
        }
    }

    pub fn boson(region: Region, wavevector: Wavevector) -> Self {
        Self {
            region,
            species: Species::Particle,
            wavevector,
            spin: None,
            statistics: Statistics::Boson,
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let region = match self.region {
            Region::I => "I",
            Region::II => "II",
        };
        let c = match self.species {
            Species::Particle => "",
            Species::Antiparticle => "^c",
        };
        let k = match self.wavevector {
            Wavevector::Plus => "+k",
            Wavevector::Minus => "-k",
        };
        let s = match self.spin {
            Some(SpinTag::Up) => ",s",
            Some(SpinTag::Down) => ",-s",
            None => "",
        };
        write!(f, "{}{c}_{region}({k}{s})", self.statistics.name())
    }
}

/// Ordered set of modes; the order fixes the basis and every sign string.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeRegistry {
    modes: Vec<ModeLabel>,
    n_max: usize,
}

impl ModeRegistry {
    pub fn new(modes: Vec<ModeLabel>, n_max: usize) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidSubsystem("registry has no modes".into()));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::DuplicateMode(m.to_string()));
            }
        }
        let has_boson = modes.iter().any(|m| m.statistics == Statistics::Boson);
        if has_boson && n_max < 1 {
            return Err(crate::error::invalid(
                "n_max",
                n_max as f64,
                "boson truncation must be >= 1",
            ));
        }
        Ok(Self { modes, n_max })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn position(&self, mode: &ModeLabel) -> Result<usize> {
        self.modes
            .iter()
            .position(|m| m == mode)
            .ok_or_else(|| Error::UnknownMode(mode.to_string()))
    }

    pub fn local_dim(&self, position: usize) -> usize {
        match self.modes[position].statistics {
            Statistics::Fermion => 2,
            Statistics::Boson => self.n_max + 1,
        }
    }

    /// Local dimensions in registry order.
    pub fn local_dims(&self) -> Vec<usize> {
        (0..self.modes.len()).map(|p| self.local_dim(p)).collect()
    }

    pub fn dim(&self) -> usize {
        self.local_dims().iter().product()
    }

    pub fn occupations(&self, mut index: usize) -> Vec<usize> {
        self.local_dims()
            .into_iter()
            .map(|d| {
                let n = index % d;
                index /= d;
                n
            })
            .collect()
    }

    pub fn basis_index(&self, occupations: &[usize]) -> usize {
        assert_eq!(occupations.len(), self.modes.len());
        let dims = self.local_dims();
        occupations.iter().zip(&dims).rev().fold(0, |acc, (&n, &d)| {
            assert!(n < d, "occupation {n} exceeds local dimension {d}");
            acc * d + n
        })
    }

    fn fermion_parity_before(&self, occupations: &[usize], position: usize) -> usize {
        self.modes[..position]
            .iter()
            .zip(occupations)
            .filter(|(m, _)| m.statistics == Statistics::Fermion)
            .map(|(_, &n)| n)
            .sum::<usize>()
            % 2
    }

    fn checked_position(&self, mode: &ModeLabel, expected: Statistics) -> Result<usize> {
        let position = self.position(mode)?;
        if mode.statistics != expected {
            return Err(Error::WrongStatistics {
                mode: mode.to_string(),
                expected: expected.name(),
                found: mode.statistics.name(),
            });
        }
        Ok(position)
    }

    /// Image of one basis state under a ladder operator: `(target index, amplitude)`.
    fn ladder_image(&self, position: usize, kind: LadderKind, index: usize) -> Option<(usize, f64)> {
        let mut occ = self.occupations(index);
        let n = occ[position];
        match self.modes[position].statistics {
            Statistics::Fermion => {
                let sign = if self.fermion_parity_before(&occ, position) == 1 {
                    -1.0
                } else {
                    1.0
                };
                match (kind, n) {
                    (LadderKind::Create, 0) => occ[position] = 1,
                    (LadderKind::Annihilate, 1) => occ[position] = 0,
                    _ => return None,
                }
                Some((self.basis_index(&occ), sign))
            }
            Statistics::Boson => match kind {
                LadderKind::Create if n < self.n_max => {
                    occ[position] = n + 1;
                    Some((self.basis_index(&occ), ((n + 1) as f64).sqrt()))
                }
                LadderKind::Annihilate if n > 0 => {
                    occ[position] = n - 1;
                    Some((self.basis_index(&occ), (n as f64).sqrt()))
                }
                _ => None,
            },
        }
    }

    fn ladder_matrix(&self, position: usize, kind: LadderKind) -> ComplexMatrix {
        let dim = self.dim();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for col in 0..dim {
            if let Some((row, amp)) = self.ladder_image(position, kind, col) {
                m[(row, col)] = C64::new(amp, 0.0);
            }
        }
        m
    }

    /// Applies a ladder operator to an amplitude vector without building the matrix.
    pub fn apply_ladder(&self, mode: &ModeLabel, kind: LadderKind, amplitudes: &[C64]) -> Result<Vec<C64>> {
        let position = self.position(mode)?;
        if amplitudes.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: amplitudes.len(),
            });
        }
        let mut out = vec![ZERO; amplitudes.len()];
        for (index, &a) in amplitudes.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            if let Some((target, amp)) = self.ladder_image(position, kind, index) {
                out[target] += a * amp;
            }
        }
        Ok(out)
    }
}

/// Fermionic b or b^dagger as a dense matrix on the registry's Fock space.
pub fn fermion_ladder(registry: &ModeRegistry, mode: &ModeLabel, kind: LadderKind) -> Result<ComplexMatrix> {
    let position = registry.checked_position(mode, Statistics::Fermion)?;
    Ok(registry.ladder_matrix(position, kind))
}

/// Truncated bosonic a or a^dagger; `a^dagger |n_max> = 0`.
pub fn boson_ladder(registry: &ModeRegistry, mode: &ModeLabel, kind: LadderKind) -> Result<ComplexMatrix> {
    let position = registry.checked_position(mode, Statistics::Boson)?;
    Ok(registry.ladder_matrix(position, kind))
}

/// Amplitude vector over a registry's occupation basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    registry: Arc<ModeRegistry>,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(registry: Arc<ModeRegistry>, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != registry.dim() {
            return Err(Error::DimensionMismatch {
                expected: registry.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { registry, amplitudes })
    }

    /// The basis state with the given occupations.
    pub fn basis(registry: Arc<ModeRegistry>, occupations: &[usize]) -> Self {
        let mut amplitudes = vec![ZERO; registry.dim()];
        amplitudes[registry.basis_index(occupations)] = C64::new(1.0, 0.0);
        Self { registry, amplitudes }
    }

    pub fn registry(&self) -> &Arc<ModeRegistry> {
        &self.registry
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, occupations: &[usize]) -> C64 {
        self.amplitudes[self.registry.basis_index(occupations)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Returns the normalized state and the norm it had.
    pub fn normalized(&self) -> Result<(Self, f64)> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let amplitudes = self.amplitudes.iter().map(|a| a / norm).collect();
        Ok((
            Self {
                registry: self.registry.clone(),
                amplitudes,
            },
            norm,
        ))
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.cols() != self.amplitudes.len() || !op.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: op.cols(),
            });
        }
        Ok(Self {
            registry: self.registry.clone(),
            amplitudes: op.mat_vec(&self.amplitudes),
        })
    }

    pub fn apply_ladder(&self, mode: &ModeLabel, kind: LadderKind) -> Result<Self> {
        Ok(Self {
            registry: self.registry.clone(),
            amplitudes: self.registry.apply_ladder(mode, kind, &self.amplitudes)?,
        })
    }

    /// <psi| op |psi>
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<C64> {
        let image = self.apply(op)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&image.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Registry local dimensions in Kronecker order (last registry mode first).
    pub(crate) fn kron_dims(&self) -> Vec<usize> {
        let mut dims = self.registry.local_dims();
        dims.reverse();
        dims
    }

    /// Reduced density matrix on the given registry modes.
    ///
    /// The result is indexed in Kronecker order over the kept modes, i.e. the
    /// kept mode that comes last in the registry is the most significant.
    pub fn reduced_density(&self, modes: &[ModeLabel]) -> Result<ComplexMatrix> {
        let n = self.registry.modes().len();
        let keep = modes
            .iter()
            .map(|m| self.registry.position(m).map(|p| n - 1 - p))
            .collect::<Result<Vec<_>>>()?;
        numerics::reduced_density_from_pure(&self.amplitudes, &self.kron_dims(), &keep)
    }
}

/// Schmidt coefficients (descending) across the split `left_modes | rest`.
pub fn schmidt_coefficients(state: &StateVector, left_modes: &[ModeLabel]) -> Result<Vec<f64>> {
    let registry = state.registry();
    let n = registry.modes().len();
    let mut left = Vec::with_capacity(left_modes.len());
    for m in left_modes {
        let p = registry.position(m)?;
        if !left.contains(&p) {
            left.push(p);
        }
    }
    if left.is_empty() || left.len() == n {
        return Err(Error::InvalidSubsystem(
            "left set must be a proper, non-empty subset of the registry".into(),
        ));
    }
    let right: Vec<ModeLabel> = registry
        .modes()
        .iter()
        .enumerate()
        .filter(|(p, _)| !left.contains(p))
        .map(|(_, m)| *m)
        .collect();
    let left_dim: usize = left.iter().map(|&p| registry.local_dim(p)).product();
    let right_dim = registry.dim() / left_dim;

    // eigenvalues of the smaller reduced density matrix are the squared singular values
    let reduced = if left_dim <= right_dim {
        state.reduced_density(left_modes)?
    } else {
        state.reduced_density(&right)?
    };
    let spectrum = numerics::eig_hermitian(&reduced)?;
    let mut coefficients: Vec<f64> = spectrum.eigenvalues.iter().rev().map(|&x| x.max(0.0).sqrt()).collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    Ok(coefficients)
}

/// Number of Schmidt coefficients above `threshold`.
pub fn schmidt_rank(coefficients: &[f64], threshold: f64) -> usize {
    coefficients.iter().filter(|&&c| c > threshold).count()
}
