//! Spin-1/2 transport along a uniformly accelerated worldline.
//!
//! Two independent routes are provided: the closed-form matrix
//! `D = (A cosh(d/2) + B sinh(d/2)) I - (A sinh(d/2) + B cosh(d/2)) sigma_1`
//! with the kinematic coefficients `A`, `B`, and a direct composition of
//! spinor boosts along x, `D(L(k'))^-1 D(Lambda) D(L(k))`.

use crate::error::{invalid, Error, Result};
use crate::frame::{self, RindlerPoint};
use crate::numerics::{self, pauli, ComplexMatrix, C64};

/// Kinematic data of a particle moving along x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumState {
    m: f64,
    delta: f64,
    k0: f64,
    k1: f64,
    k: f64,
}

impl MomentumState {
    pub fn mass(&self) -> f64 {
        self.m
    }

    /// Rapidity.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    /// `K = ((k0 - m) / (k0 + m))^(1/2)`
    pub fn k_ratio(&self) -> f64 {
        self.k
    }

    pub fn is_rest_frame(&self) -> bool {
        self.delta == 0.0
    }
}

/// `k0 = m cosh delta`, `k1 = m sinh delta`, `K = sqrt((k0 - m)/(k0 + m))`.
pub fn kinematics(m: f64, delta: f64) -> Result<MomentumState> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(invalid("m", m, "mass must be > 0"));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(invalid("delta", delta, "rapidity must be >= 0"));
    }
    let k0 = m * delta.cosh();
    let k1 = m * delta.sinh();
    // k0 - m = 2 m sinh^2(delta/2), written without the cancellation
    let excess = 2.0 * m * (0.5 * delta).sinh().powi(2);
    let k = (excess / (k0 + m)).sqrt();
    Ok(MomentumState { m, delta, k0, k1, k })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerCoefficients {
    pub a: f64,
    pub b: f64,
}

/// `A = 1 - K^2 d / ((1 - K^2) m k1)`, `B = K d / ((1 - K^2) m k1)`.
pub fn wigner_coefficients(p: &MomentumState, deta: f64) -> Result<WignerCoefficients> {
    if p.is_rest_frame() {
        return Err(Error::RestFrameSingular);
    }
    if !(deta >= 0.0) || !deta.is_finite() {
        return Err(invalid("deta", deta, "must be finite and >= 0"));
    }
    let k2 = p.k * p.k;
    let denom = (1.0 - k2) * p.m * p.k1;
    Ok(WignerCoefficients {
        a: 1.0 - k2 * deta / denom,
        b: p.k * deta / denom,
    })
}

/// A 2x2 matrix acting on the spin-1/2 space, with its unitarity defect.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorMatrix {
    matrix: ComplexMatrix,
    unitarity_defect: f64,
}

impl SpinorMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if (matrix.rows(), matrix.cols()) != (2, 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: matrix.rows(),
            });
        }
        if matrix.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("spinor matrix"));
        }
        let defect = (&matrix.adjoint() * &matrix).max_abs_diff(&ComplexMatrix::identity(2));
        Ok(Self {
            matrix,
            unitarity_defect: defect,
        })
    }

    pub fn identity() -> Self {
        Self::new(ComplexMatrix::identity(2)).expect("identity is finite")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `max |D^dag D - I|`
    pub fn unitarity_defect(&self) -> f64 {
        self.unitarity_defect
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn det(&self) -> C64 {
        let m = &self.matrix;
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
    }

    /// `(c0, c1, c2, c3)` with `M = c0 I + sum_i c_i sigma_i`.
    pub fn pauli_components(&self) -> [C64; 4] {
        let [s1, s2, s3] = pauli();
        let half = C64::new(0.5, 0.0);
        [
            self.matrix.trace() * half,
            (&s1 * &self.matrix).trace() * half,
            (&s2 * &self.matrix).trace() * half,
            (&s3 * &self.matrix).trace() * half,
        ]
    }

    /// `max(|c2|, |c3|)`: weight outside span{I, sigma_1}.
    pub fn off_axis_weight(&self) -> f64 {
        let c = self.pauli_components();
        c[2].norm().max(c[3].norm())
    }

    /// Unitary factor `U` of the polar decomposition `M = U P`, `P = (M^dag M)^(1/2)`.
    pub fn rotation_part(&self) -> Result<ComplexMatrix> {
        let gram = &self.matrix.adjoint() * &self.matrix;
        let eig = numerics::eig_hermitian(&gram)?;
        if eig.min() <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let v = &eig.eigenvectors;
        let inv_sqrt = ComplexMatrix::diagonal(
            &eig.eigenvalues
                .iter()
                .map(|&l| C64::new(1.0 / l.sqrt(), 0.0))
                .collect::<Vec<_>>(),
        );
        let p_inv = &(v * &inv_sqrt) * &v.adjoint();
        Ok(&self.matrix * &p_inv)
    }

    pub fn compose(&self, rhs: &SpinorMatrix) -> Result<SpinorMatrix> {
        SpinorMatrix::new(&self.matrix * &rhs.matrix)
    }
}

/// The closed-form Wigner matrix on spin-1/2.
pub fn wigner_matrix(p: &MomentumState, deta: f64) -> Result<SpinorMatrix> {
    let WignerCoefficients { a, b } = wigner_coefficients(p, deta)?;
    let (ch, sh) = ((0.5 * deta).cosh(), (0.5 * deta).sinh());
    let diag = C64::new(a * ch + b * sh, 0.0);
    let off = C64::new(-(a * sh + b * ch), 0.0);
    SpinorMatrix::new(ComplexMatrix::from_vec(2, 2, vec![diag, off, off, diag])?)
}

/// `exp(rapidity sigma_1 / 2)`: spinor image of a boost along x.
pub fn spinor_boost_x(rapidity: f64) -> ComplexMatrix {
    let (ch, sh) = ((0.5 * rapidity).cosh(), (0.5 * rapidity).sinh());
    let [s1, ..] = pauli();
    &ComplexMatrix::identity(2).scale(C64::new(ch, 0.0)) + &s1.scale(C64::new(sh, 0.0))
}

/// Rapidity of the local frame boost generated by the connection over `deta`.
///
/// `Lambda = 1 - delta omega` has `Lambda^0_1 = -delta omega^0_1`, which is
/// the generator of a boost along x.
pub fn frame_rapidity(deta: f64) -> Result<f64> {
    let point = RindlerPoint::on_worldline(0.0, 1.0)?;
    let form = frame::connection_one_form(&point, [deta, 0.0, 0.0, 0.0])?;
    Ok(form.lorentz()[0][1])
}

/// Which momentum the inverse standard boost is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacedMomentum {
    /// `Lambda k`: the momentum carried into the displaced frame.
    Transformed,
    /// `k`: the particle keeps its frame components (comoving with the tetrad).
    Comoving,
}

/// Little-group element `D(L(Lambda k))^-1 D(Lambda) D(L(k))` built from spinor boosts.
pub fn little_group_oracle(p: &MomentumState, deta: f64) -> Result<SpinorMatrix> {
    little_group_oracle_with(p, deta, DisplacedMomentum::Transformed)
}

pub fn little_group_oracle_with(p: &MomentumState, deta: f64, displaced: DisplacedMomentum) -> Result<SpinorMatrix> {
    let phi = frame_rapidity(deta)?;
    let standard = spinor_boost_x(p.delta());
    let frame_boost = spinor_boost_x(phi);
    let final_rapidity = match displaced {
        DisplacedMomentum::Transformed => p.delta() + phi,
        DisplacedMomentum::Comoving => p.delta(),
    };
    let inverse_standard = spinor_boost_x(-final_rapidity);
    SpinorMatrix::new(&(&inverse_standard * &frame_boost) * &standard)
}

/// Closed-form matrix next to the boost composition.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub closed_form: SpinorMatrix,
    pub oracle: SpinorMatrix,
    /// `closed_form - oracle`
    pub gap: ComplexMatrix,
    pub max_gap: f64,
}

pub fn compare_with_oracle(p: &MomentumState, deta: f64, displaced: DisplacedMomentum) -> Result<OracleComparison> {
    let closed_form = wigner_matrix(p, deta)?;
    let oracle = little_group_oracle_with(p, deta, displaced)?;
    let gap = closed_form.matrix() - oracle.matrix();
    let max_gap = gap.max_abs();
    Ok(OracleComparison {
        closed_form,
        oracle,
        gap,
        max_gap,
    })
}

/// `wigner_matrix(p, eta_total / steps)` multiplied `steps` times.
pub fn accumulate(p: &MomentumState, eta_total: f64, steps: usize) -> Result<SpinorMatrix> {
    if steps == 0 {
        return Err(invalid("steps", 0.0, "must be >= 1"));
    }
    let step = wigner_matrix(p, eta_total / steps as f64)?;
    if steps == 1 {
        return Ok(step);
    }
    let mut total = step.clone();
    for _ in 1..steps {
        total = step.compose(&total)?;
    }
    Ok(total)
}

/// Accumulated matrices for increasing step counts and the entrywise change
/// from the previous count.
pub fn accumulation_convergence(
    p: &MomentumState,
    eta_total: f64,
    steps: &[usize],
) -> Result<Vec<(usize, SpinorMatrix, Option<f64>)>> {
    let mut rows: Vec<(usize, SpinorMatrix, Option<f64>)> = Vec::with_capacity(steps.len());
    for &n in steps {
        let m = accumulate(p, eta_total, n)?;
        let change = rows.last().map(|(_, prev, _)| prev.matrix().max_abs_diff(m.matrix()));
        rows.push((n, m, change));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinematic_limits() {
        let p = kinematics(1.0, 0.0).unwrap();
        assert_eq!((p.k_ratio(), p.k1()), (0.0, 0.0));
        let p = kinematics(2.0, 30.0).unwrap();
        assert!((1.0 - p.k_ratio()) < 1e-12);
        // (cosh d - 1)/(cosh d + 1) = tanh^2(d/2)
        let p = kinematics(1.7, 1.3).unwrap();
        let c = 1.3f64.cosh();
        assert!((p.k_ratio() - ((c - 1.0) / (c + 1.0)).sqrt()).abs() < 1e-15);
        assert!((p.k_ratio() - 0.65f64.tanh()).abs() < 1e-15);
        assert!((p.k0() * p.k0() - p.k1() * p.k1() - 1.7 * 1.7).abs() < 1e-12);
        assert!(kinematics(0.0, 1.0).is_err());
        assert!(kinematics(-1.0, 1.0).is_err());
        assert!(kinematics(1.0, -0.1).is_err());
    }

    #[test]
    fn coefficients() {
        let p = kinematics(1.0, 1.0).unwrap();
        let c = wigner_coefficients(&p, 0.0).unwrap();
        assert_eq!((c.a, c.b), (1.0, 0.0));
        for deta in [1e-3, 0.01, 0.7] {
            let c = wigner_coefficients(&p, deta).unwrap();
            assert!((c.b / (1.0 - c.a) - 1.0 / p.k_ratio()).abs() < 1e-9);
        }
        assert!(matches!(
            wigner_coefficients(&kinematics(1.0, 0.0).unwrap(), 0.1),
            Err(Error::RestFrameSingular)
        ));
    }

    #[test]
    fn matrix_structure() {
        let p = kinematics(1.0, 1.0).unwrap();
        assert_eq!(wigner_matrix(&p, 0.0).unwrap().matrix(), &ComplexMatrix::identity(2));
        let d = wigner_matrix(&p, 0.3).unwrap();
        let m = d.matrix();
        assert_eq!(m[(0, 1)], m[(1, 0)]);
        assert_eq!(m[(0, 0)], m[(1, 1)]);
        assert!(m.as_slice().iter().all(|z| z.im == 0.0));
        let c = wigner_coefficients(&p, 0.3).unwrap();
        assert!((d.det().re - (c.a * c.a - c.b * c.b)).abs() < 1e-12);
        let [s1, ..] = pauli();
        assert!(m.commutator(&s1).max_abs() < 1e-12);
    }

    #[test]
    fn frame_boost_sign() {
        assert!((frame_rapidity(0.25).unwrap() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn oracle_variants() {
        let p = kinematics(1.0, 1.0).unwrap();
        assert!(
            little_group_oracle(&p, 0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(&ComplexMatrix::identity(2))
                < 1e-14
        );
        let w = little_group_oracle(&p, 0.4).unwrap();
        assert!(w.matrix().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);

        let rest = kinematics(1.0, 0.0).unwrap();
        let w = little_group_oracle_with(&rest, 0.4, DisplacedMomentum::Comoving).unwrap();
        assert!(w.matrix().max_abs_diff(&spinor_boost_x(-0.4)) < 1e-15);
        let u = w.rotation_part().unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        assert!(w.off_axis_weight() < 1e-15);
    }

    #[test]
    fn accumulation() {
        let p = kinematics(1.0, 1.0).unwrap();
        assert_eq!(accumulate(&p, 0.0, 5).unwrap().matrix(), &ComplexMatrix::identity(2));
        assert_eq!(accumulate(&p, 0.5, 1).unwrap(), wigner_matrix(&p, 0.5).unwrap());
        assert!(accumulate(&p, 0.5, 0).is_err());
        let rows = accumulation_convergence(&p, 0.5, &[1, 10, 100]).unwrap();
        assert!(rows[0].2.is_none());
        let (d1, d2) = (rows[1].2.unwrap(), rows[2].2.unwrap());
        assert!(d2 < d1);
    }
}
