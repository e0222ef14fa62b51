//! Alice-Rob entanglement: exact density-matrix measures next to the closed
//! forms for negativity and mutual information.
//!
//! Spin pairs live on `{|s3>, |-s3>}_Alice ⊗ {|s3>, |-s3>}_Rob` with Alice as
//! subsystem 0 (Kronecker convention, amplitude index `2 * alice + rob`).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Error, Result};
use crate::numerics::{self, ComplexMatrix, Tolerances, C64, ZERO};
use crate::rindler::{self, UnruhParams};
use crate::wigner::{self, MomentumState, SpinorMatrix, WignerCoefficients};

pub const SPIN_DIMS: [usize; 2] = [2, 2];
pub const ALICE: usize = 0;
pub const ROB: usize = 1;

/// PT eigenvalues at or above `-PPT_TOLERANCE` count as non-negative.
pub const PPT_TOLERANCE: f64 = 1e-10;

/// Mutual information the text quotes for a stationary pair.
pub const STATED_ZERO_ACCELERATION_MI: f64 = 2.0;

/// Closed form and exact value disagreeing by more than this are flagged.
pub const DISCREPANCY_TOLERANCE: f64 = 1e-6;

/// Truncation deficit above which scalar reports carry a warning.
pub const DEFICIT_WARNING: f64 = 1e-3;

const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePure {
    amplitudes: [C64; 4],
    normalized: bool,
    pre_norm: f64,
}

impl BipartitePure {
    pub fn new(amplitudes: [C64; 4]) -> Self {
        let norm = norm4(&amplitudes);
        Self {
            amplitudes,
            normalized: (norm - 1.0).abs() <= NORM_TOLERANCE,
            pre_norm: norm,
        }
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amplitudes
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Norm before the last renormalization (equal to the current norm otherwise).
    pub fn pre_norm(&self) -> f64 {
        self.pre_norm
    }

    pub fn norm(&self) -> f64 {
        norm4(&self.amplitudes)
    }

    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }
}

fn norm4(a: &[C64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `(|s3>|s3> + |-s3>|-s3>) / sqrt 2`
pub fn spin_bell_state() -> BipartitePure {
    let s = C64::new(FRAC_1_SQRT_2, 0.0);
    BipartitePure::new([s, ZERO, ZERO, s])
}

/// `(I ⊗ D) |psi>`, optionally renormalized; the norm before renormalization is kept.
pub fn apply_wigner_to_rob(state: &BipartitePure, d: &SpinorMatrix, renormalize: bool) -> Result<BipartitePure> {
    if !state.is_normalized() {
        return Err(invalid("state norm", state.norm(), "input state must be normalized"));
    }
    let m = d.matrix();
    let psi = state.amplitudes();
    let mut out = [ZERO; 4];
    for a in 0..2 {
        for r in 0..2 {
            out[2 * a + r] = m[(r, 0)] * psi[2 * a] + m[(r, 1)] * psi[2 * a + 1];
        }
    }
    let norm = norm4(&out);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroNorm);
    }
    if renormalize {
        for z in &mut out {
            *z /= norm;
        }
        Ok(BipartitePure {
            amplitudes: out,
            normalized: true,
            pre_norm: norm,
        })
    } else {
        Ok(BipartitePure::new(out))
    }
}

/// Hermitian, unit trace, PSD within the kernel tolerances.
pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    numerics::density_spectrum(rho, &Tolerances::DEFAULT).map(|_| ())
}

/// Smallest eigenvalue of the partial transpose, no validation of `rho`.
pub fn pt_min_eigenvalue(rho: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<f64> {
    let pt = numerics::partial_transpose(rho, dims, subsystem)?;
    Ok(numerics::eig_hermitian(&pt)?.min())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityReport {
    /// Most negative eigenvalue of the partial transpose.
    pub lambda_min: f64,
    /// `2 |lambda_min|`, zero when the partial transpose is PSD.
    pub exact: f64,
    pub closed: Option<f64>,
    pub abs_gap: Option<f64>,
    pub rel_gap: Option<f64>,
}

fn negativity_from_lambda(lambda_min: f64) -> f64 {
    if lambda_min < -PPT_TOLERANCE {
        2.0 * lambda_min.abs()
    } else {
        0.0
    }
}

/// Negativity `2|lambda_-|` with the partial transpose on `transposed`.
///
/// When `closed` is given, the closed-form value at that momentum and `deta`
/// is attached together with the gaps.
pub fn negativity(
    rho: &ComplexMatrix,
    dims: &[usize],
    transposed: usize,
    closed: Option<(&MomentumState, f64)>,
) -> Result<NegativityReport> {
    validate_density(rho)?;
    let lambda_min = pt_min_eigenvalue(rho, dims, transposed)?;
    let exact = negativity_from_lambda(lambda_min);
    let closed = closed.map(|(p, deta)| closed_form_negativity(p, deta)).transpose()?;
    Ok(NegativityReport {
        lambda_min,
        exact,
        closed,
        abs_gap: closed.map(|c| (exact - c).abs()),
        rel_gap: closed.map(|c| (exact - c).abs() / c.abs()),
    })
}

/// `exp(-2 K^2 deta / ((1 - K^2) sinh delta))`
pub fn closed_form_negativity(p: &MomentumState, deta: f64) -> Result<f64> {
    if p.is_rest_frame() {
        return Err(invalid("delta", 0.0, "sinh(delta) = 0"));
    }
    let k2 = p.k_ratio().powi(2);
    Ok((-2.0 * k2 * deta / ((1.0 - k2) * p.delta().sinh())).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormMutualInfo {
    pub deta: f64,
    pub terms: [f64; 3],
    pub value: f64,
    /// Value is below zero (impossible for a mutual information).
    pub negative: bool,
    /// At `deta = 0` the value differs from the quoted 2.
    pub zero_acceleration_conflict: bool,
}

fn xlog2x_term(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Three-term closed-form mutual information, each term reported separately.
pub fn closed_form_mutual_information(p: &MomentumState, deta: f64) -> Result<ClosedFormMutualInfo> {
    if p.is_rest_frame() {
        return Err(invalid("delta", 0.0, "sinh(delta) = 0"));
    }
    if !(deta >= 0.0) {
        return Err(invalid("deta", deta, "must be >= 0"));
    }
    let k = p.k_ratio();
    let sh = p.delta().sinh();
    let first = 0.5 * (-(1.0 + 2.0 * k / ((1.0 - k) * sh)) * deta).exp();
    let second = 1.0 - 0.5 * (-(1.0 + 2.0 * k / ((1.0 + k) * sh)) * deta).exp();
    let x = 2.0 * k * k * deta / ((1.0 - k * k) * sh);
    let terms = [xlog2x_term(first), xlog2x_term(second), -x * (-x).exp()];
    let value = terms.iter().sum::<f64>();
    Ok(ClosedFormMutualInfo {
        deta,
        terms,
        value,
        negative: value < 0.0,
        zero_acceleration_conflict: deta == 0.0 && (value - STATED_ZERO_ACCELERATION_MI).abs() > DISCREPANCY_TOLERANCE,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInfoReport {
    pub s_a: f64,
    pub s_r: f64,
    pub s_ar: f64,
    /// `S_A + S_R - S_AR` in bits.
    pub exact: f64,
    pub closed: Option<ClosedFormMutualInfo>,
    /// `closed - exact`
    pub discrepancy: Option<f64>,
    pub discrepancy_flag: bool,
}

impl MutualInfoReport {
    pub fn with_closed_form(mut self, closed: ClosedFormMutualInfo) -> Self {
        let d = closed.value - self.exact;
        self.closed = Some(closed);
        self.discrepancy = Some(d);
        self.discrepancy_flag = d.abs() > DISCREPANCY_TOLERANCE || closed.negative || closed.zero_acceleration_conflict;
        self
    }
}

/// Mutual information between subsystems 0 and 1 of a bipartite density matrix.
pub fn mutual_information(rho: &ComplexMatrix, dims: &[usize]) -> Result<MutualInfoReport> {
    mutual_information_between(rho, dims, 0, 1)
}

/// Mutual information with explicit roles: `alice` and `rob` index into `dims`.
pub fn mutual_information_between(
    rho: &ComplexMatrix,
    dims: &[usize],
    alice: usize,
    rob: usize,
) -> Result<MutualInfoReport> {
    if dims.len() != 2 || alice == rob || alice > 1 || rob > 1 {
        return Err(Error::InvalidSubsystem(format!(
            "need a bipartite split, got dims {dims:?} alice {alice} rob {rob}"
        )));
    }
    let s_ar = numerics::von_neumann_entropy(rho)?;
    let s_a = numerics::von_neumann_entropy(&numerics::partial_trace(rho, dims, &[alice])?)?;
    let s_r = numerics::von_neumann_entropy(&numerics::partial_trace(rho, dims, &[rob])?)?;
    Ok(MutualInfoReport {
        s_a,
        s_r,
        s_ar,
        exact: s_a + s_r - s_ar,
        closed: None,
        discrepancy: None,
        discrepancy_flag: false,
    })
}

/// The full spin-pair pipeline at one `(p, deta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinPairReport {
    pub mass: f64,
    pub delta: f64,
    pub deta: f64,
    pub coefficients: WignerCoefficients,
    pub unitarity_defect: f64,
    /// `||(I ⊗ D)|Phi>||` before renormalization.
    pub pre_norm: f64,
    pub state: BipartitePure,
    pub negativity: NegativityReport,
    /// `2|lambda_-|` of the unnormalized post-map state.
    pub negativity_unnormalized: f64,
    pub mutual: MutualInfoReport,
}

/// Maps Rob's half of the spin Bell pair through the closed-form Wigner
/// matrix (renormalizing), then measures both entanglement quantities.
pub fn spin_pair_report(p: &MomentumState, deta: f64) -> Result<SpinPairReport> {
    let coefficients = wigner::wigner_coefficients(p, deta)?;
    let d = wigner::wigner_matrix(p, deta)?;
    let bell = spin_bell_state();
    let state = apply_wigner_to_rob(&bell, &d, true)?;
    let raw = apply_wigner_to_rob(&bell, &d, false)?;
    let rho = state.density();
    let negativity = negativity(&rho, &SPIN_DIMS, ROB, Some((p, deta)))?;
    let negativity_unnormalized = negativity_from_lambda(pt_min_eigenvalue(&raw.density(), &SPIN_DIMS, ROB)?);
    let mutual = mutual_information(&rho, &SPIN_DIMS)?.with_closed_form(closed_form_mutual_information(p, deta)?);
    Ok(SpinPairReport {
        mass: p.mass(),
        delta: p.delta(),
        deta,
        coefficients,
        unitarity_defect: d.unitarity_defect(),
        pre_norm: state.pre_norm(),
        state,
        negativity,
        negativity_unnormalized,
        mutual,
    })
}

/// One row of the exact-vs-closed negativity gap study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    pub deta: f64,
    pub exact: f64,
    pub unnormalized: f64,
    pub closed: f64,
    pub gap: f64,
    pub gap_unnormalized: f64,
    /// `ln(gap_prev / gap) / ln(deta_prev / deta)`
    pub order: Option<f64>,
    pub order_unnormalized: Option<f64>,
}

pub fn negativity_gap_table(p: &MomentumState, detas: &[f64]) -> Result<Vec<GapRow>> {
    let mut rows: Vec<GapRow> = Vec::with_capacity(detas.len());
    for &deta in detas {
        let report = spin_pair_report(p, deta)?;
        let closed = report.negativity.closed.expect("closed form attached");
        let gap = (report.negativity.exact - closed).abs();
        let gap_unnormalized = (report.negativity_unnormalized - closed).abs();
        let order_of = |prev: f64, cur: f64, prev_deta: f64| {
            if prev > 0.0 && cur > 0.0 {
                Some((prev / cur).ln() / (prev_deta / deta).ln())
            } else {
                None
            }
        };
        let (order, order_unnormalized) = match rows.last() {
            Some(prev) => (
                order_of(prev.gap, gap, prev.deta),
                order_of(prev.gap_unnormalized, gap_unnormalized, prev.deta),
            ),
            None => (None, None),
        };
        rows.push(GapRow {
            deta,
            exact: report.negativity.exact,
            unnormalized: report.negativity_unnormalized,
            closed,
            gap,
            gap_unnormalized,
            order,
            order_unnormalized,
        });
    }
    Ok(rows)
}

/// Alice-region I entanglement of the scalar pair
/// `(|0_A>|0_R>_M + |1_A>|1_R>_M) / sqrt 2` after tracing region II.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPairReport {
    pub r: f64,
    pub n_max: usize,
    pub mutual: MutualInfoReport,
    pub negativity: NegativityReport,
    pub vacuum_deficit: f64,
    pub excited_deficit: f64,
    /// Larger of the two deficits.
    pub deficit: f64,
    pub warning: Option<String>,
}

pub fn scalar_pair_report(r: f64, n_max: usize) -> Result<ScalarPairReport> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(invalid("r", r, "must be finite and >= 0"));
    }
    if n_max < 8 {
        return Err(invalid("n_max", n_max as f64, "must be >= 8"));
    }
    let params = UnruhParams::from_squeezing(r)?;
    let vacuum = rindler::scalar_unruh_vacuum(&params, n_max)?;
    let excited = rindler::scalar_excited(&params, n_max, 1)?;

    // registry order (Alice, I, II); Alice is the least significant digit
    let rob_dim = vacuum.state.amplitudes().len();
    let mut joint = vec![ZERO; 2 * rob_dim];
    for (j, (v, e)) in vacuum
        .state
        .amplitudes()
        .iter()
        .zip(excited.state.amplitudes())
        .enumerate()
    {
        joint[2 * j] = v * FRAC_1_SQRT_2;
        joint[2 * j + 1] = e * FRAC_1_SQRT_2;
    }
    let n = n_max + 1;
    // Kronecker order: [II, I, Alice]
    let rho = numerics::reduced_density_from_pure(&joint, &[n, n, 2], &[1, 2])?;
    // rho is indexed (I, Alice)
    let dims = [n, 2];
    let mutual = mutual_information_between(&rho, &dims, 1, 0)?;
    let negativity = negativity(&rho, &dims, 0, None)?;

    let deficit = vacuum.truncation_deficit.max(excited.truncation_deficit);
    let warning = (deficit > DEFICIT_WARNING)
        .then(|| format!("truncation deficit {deficit:.3e} exceeds {DEFICIT_WARNING:e}; increase n_max"));
    Ok(ScalarPairReport {
        r,
        n_max,
        mutual,
        negativity,
        vacuum_deficit: vacuum.truncation_deficit,
        excited_deficit: excited.truncation_deficit,
        deficit,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::kron;
    use crate::wigner::kinematics;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn bell_state_properties() {
        let b = spin_bell_state();
        assert!((b.norm() - 1.0).abs() < 1e-15);
        let rho = b.density();
        for keep in [0, 1] {
            let red = numerics::partial_trace(&rho, &SPIN_DIMS, &[keep]).unwrap();
            assert!(red.max_abs_diff(&ComplexMatrix::identity(2).scale(c(0.5))) < 1e-15);
        }
        let mi = mutual_information(&rho, &SPIN_DIMS).unwrap();
        assert!((mi.exact - 2.0).abs() < 1e-12);
        let n = negativity(&rho, &SPIN_DIMS, ROB, None).unwrap();
        assert!((n.exact - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wigner_map_cases() {
        let b = spin_bell_state();
        let same = apply_wigner_to_rob(&b, &SpinorMatrix::identity(), true).unwrap();
        assert_eq!(same.amplitudes(), b.amplitudes());

        let [s1, ..] = numerics::pauli();
        let flipped = apply_wigner_to_rob(&b, &SpinorMatrix::new(s1).unwrap(), true).unwrap();
        let n = negativity(&flipped.density(), &SPIN_DIMS, ROB, None).unwrap();
        assert!((n.exact - 1.0).abs() < 1e-12);

        let squash = SpinorMatrix::new(ComplexMatrix::diagonal(&[c(2.0), c(0.5)])).unwrap();
        let raw = apply_wigner_to_rob(&b, &squash, false).unwrap();
        assert!((raw.pre_norm() - (4.25f64 / 2.0).sqrt()).abs() < 1e-15);
        assert!(!raw.is_normalized());
        let renorm = apply_wigner_to_rob(&b, &squash, true).unwrap();
        assert!((renorm.norm() - 1.0).abs() < 1e-15);
        assert_eq!(renorm.pre_norm(), raw.pre_norm());

        assert!(apply_wigner_to_rob(&raw, &squash, true).is_err());
        let null = SpinorMatrix::new(ComplexMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(apply_wigner_to_rob(&b, &null, true), Err(Error::ZeroNorm)));
    }

    #[test]
    fn product_and_classical_states() {
        let product = BipartitePure::new([c(1.0), ZERO, ZERO, ZERO]);
        let rho = product.density();
        assert_eq!(negativity(&rho, &SPIN_DIMS, ROB, None).unwrap().exact, 0.0);
        assert!(mutual_information(&rho, &SPIN_DIMS).unwrap().exact.abs() < 1e-12);

        let classical = ComplexMatrix::diagonal(&[c(0.5), ZERO, ZERO, c(0.5)]);
        assert!((mutual_information(&classical, &SPIN_DIMS).unwrap().exact - 1.0).abs() < 1e-12);
        assert_eq!(negativity(&classical, &SPIN_DIMS, ROB, None).unwrap().exact, 0.0);
    }

    #[test]
    fn rejects_invalid_density() {
        let bad = ComplexMatrix::identity(4);
        assert!(negativity(&bad, &SPIN_DIMS, ROB, None).is_err());
        assert!(mutual_information(&bad, &SPIN_DIMS).is_err());
    }

    #[test]
    fn closed_negativity_values() {
        let p = kinematics(1.0, 1.0).unwrap();
        assert_eq!(closed_form_negativity(&p, 0.0).unwrap(), 1.0);
        assert!(closed_form_negativity(&p, 200.0).unwrap() < 1e-30);
        let k = 0.5f64.tanh();
        let expected = (-2.0 * k * k / ((1.0 - k * k) * 1.0f64.sinh())).exp();
        assert!((closed_form_negativity(&p, 1.0).unwrap() - expected).abs() < 1e-15);
        assert!(closed_form_negativity(&kinematics(1.0, 0.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn closed_mutual_information_values() {
        let p = kinematics(1.0, 1.0).unwrap();
        let at_rest = closed_form_mutual_information(&p, 0.0).unwrap();
        assert!((at_rest.terms[0] - 0.5).abs() < 1e-15);
        assert!((at_rest.terms[1] - 0.5).abs() < 1e-15);
        assert_eq!(at_rest.terms[2], 0.0);
        assert!((at_rest.value - 1.0).abs() < 1e-15);
        assert!(at_rest.zero_acceleration_conflict);
        let far = closed_form_mutual_information(&p, 500.0).unwrap();
        assert!(far.value.abs() < 1e-90);
        assert!(closed_form_mutual_information(&kinematics(1.0, 0.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn spin_pair_pipeline_matches_hand_formula() {
        // for (I ⊗ D)|Phi+> with D = alpha I - beta sigma_1 the normalized
        // negativity is |alpha^2 - beta^2| / (alpha^2 + beta^2) and the
        // unnormalized one is |alpha^2 - beta^2| = |A^2 - B^2|
        let p = kinematics(1.0, 1.0).unwrap();
        for deta in [1e-3, 1e-2, 0.3] {
            let rep = spin_pair_report(&p, deta).unwrap();
            let WignerCoefficients { a, b } = rep.coefficients;
            let (ch, sh) = ((deta / 2.0).cosh(), (deta / 2.0).sinh());
            let (alpha, beta) = (a * ch + b * sh, a * sh + b * ch);
            let normalized = (alpha * alpha - beta * beta).abs() / (alpha * alpha + beta * beta);
            assert!((rep.negativity.exact - normalized).abs() < 1e-12);
            assert!((rep.negativity_unnormalized - (a * a - b * b).abs()).abs() < 1e-12);
        }
    }

    fn random_unitary(rng: &mut impl rand::Rng) -> ComplexMatrix {
        let (t, p1, p2, g): (f64, f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen(), rng.gen());
        let (ct, st) = ((t * 1.5).cos(), (t * 1.5).sin());
        let a = C64::from_polar(ct, p1 * 6.0);
        let b = C64::from_polar(st, p2 * 6.0);
        let ph = C64::from_polar(1.0, g * 6.0);
        ComplexMatrix::from_vec(2, 2, vec![a, b, -b.conj() * ph, a.conj() * ph]).unwrap()
    }

    #[test]
    fn local_unitary_invariance() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let p = kinematics(1.0, 0.8).unwrap();
        let rho = spin_pair_report(&p, 0.4).unwrap().state.density();
        let mixed = &rho.scale(c(0.7)) + &ComplexMatrix::diagonal(&[c(0.1), c(0.05), c(0.1), c(0.05)]);
        for base in [rho, mixed] {
            let n0 = negativity(&base, &SPIN_DIMS, ROB, None).unwrap().exact;
            let i0 = mutual_information(&base, &SPIN_DIMS).unwrap().exact;
            for _ in 0..20 {
                let u = kron(&random_unitary(&mut rng), &random_unitary(&mut rng));
                let rotated = &(&u * &base) * &u.adjoint();
                assert!((negativity(&rotated, &SPIN_DIMS, ROB, None).unwrap().exact - n0).abs() < 1e-9);
                assert!((mutual_information(&rotated, &SPIN_DIMS).unwrap().exact - i0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scalar_report_small() {
        let rep = scalar_pair_report(0.0, 8).unwrap();
        assert!((rep.mutual.exact - 2.0).abs() < 1e-10);
        assert!((rep.negativity.exact - 1.0).abs() < 1e-10);
        assert!(rep.warning.is_none());
        let rep = scalar_pair_report(2.0, 8).unwrap();
        assert!(rep.warning.is_some());
        assert!(scalar_pair_report(1.0, 4).is_err());
        assert!(scalar_pair_report(-1.0, 16).is_err());
    }
}
