//! Rindler tetrads, connection one-forms and the Rindler/Minkowski chart map.
//!
//! Coordinates are ordered `(eta, xi, y, z)`; frame indices `0..4` use the
//! Minkowski metric `diag(-1, 1, 1, 1)`. The connection is obtained from the
//! torsion-free structure equation `d theta^a + omega^a_b ^ theta^b = 0`, not
//! tabulated.

use crate::error::{invalid, Result};
use crate::numerics::{self, ComplexMatrix};

pub type Mat4 = [[f64; 4]; 4];

pub const MINKOWSKI: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Central-difference step for the exterior-derivative check.
pub const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerPoint {
    pub eta: f64,
    pub xi: f64,
    pub acceleration: f64,
}

impl RindlerPoint {
    /// Point of the region-I chart; `acceleration` is that of the orbit `xi = const`.
    pub fn new(eta: f64, xi: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(invalid("xi", xi, "must be > 0 (region I interior)"));
        }
        if !eta.is_finite() {
            return Err(invalid("eta", eta, "must be finite"));
        }
        Ok(Self {
            eta,
            xi,
            acceleration: 1.0 / xi,
        })
    }

    /// Point on the worldline of acceleration `a` at proper time `tau` (eta = a tau, xi = 1/a).
    pub fn on_worldline(tau: f64, acceleration: f64) -> Result<Self> {
        if !(acceleration > 0.0) {
            return Err(invalid("acceleration", acceleration, "must be > 0"));
        }
        Self::new(acceleration * tau, 1.0 / acceleration)
    }

    pub fn coordinates(&self) -> [f64; 4] {
        [self.eta, self.xi, 0.0, 0.0]
    }
}

/// A coframe field `e^a_mu(x)` with its coordinate gradient.
pub trait Coframe {
    /// `[a][mu]`
    fn coframe(&self, x: [f64; 4]) -> Mat4;
    /// `[lambda][a][mu]` = d e^a_mu / d x^lambda
    fn coframe_gradient(&self, x: [f64; 4]) -> [Mat4; 4];
}

/// `theta^0 = xi d eta`, `theta^1 = d xi`, `theta^2 = dy`, `theta^3 = dz`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RindlerChart;

impl Coframe for RindlerChart {
    fn coframe(&self, x: [f64; 4]) -> Mat4 {
        let mut e = identity4();
        e[0][0] = x[1];
        e
    }

    fn coframe_gradient(&self, _x: [f64; 4]) -> [Mat4; 4] {
        let mut g = [[[0.0; 4]; 4]; 4];
        g[1][0][0] = 1.0;
        g
    }
}

fn identity4() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn invert4(m: &Mat4) -> Mat4 {
    // Gauss-Jordan with partial pivoting
    let mut a = *m;
    let mut inv = identity4();
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        assert!(p != 0.0, "singular coframe");
        for k in 0..4 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for row in 0..4 {
            if row != col {
                let f = a[row][col];
                for k in 0..4 {
                    a[row][k] -= f * a[col][k];
                    inv[row][k] -= f * inv[col][k];
                }
            }
        }
    }
    inv
}

/// Orthonormal frame at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad {
    /// `e_a^mu`, indexed `[a][mu]`.
    pub frame: Mat4,
    /// `e^a_mu`, indexed `[a][mu]`.
    pub coframe: Mat4,
}

impl Tetrad {
    pub fn from_coframe(coframe: Mat4) -> Self {
        // e_a^mu is the inverse of e^a_mu: sum_mu e^a_mu e_b^mu = delta^a_b
        let inv = invert4(&coframe);
        let mut frame = [[0.0; 4]; 4];
        for a in 0..4 {
            for mu in 0..4 {
                frame[a][mu] = inv[mu][a];
            }
        }
        Self { frame, coframe }
    }

    /// `g_{mu nu} = e^a_mu e^b_nu eta_ab`
    pub fn metric(&self) -> Mat4 {
        let mut g = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                g[mu][nu] = (0..4)
                    .map(|a| MINKOWSKI[a] * self.coframe[a][mu] * self.coframe[a][nu])
                    .sum();
            }
        }
        g
    }

    /// Worst deviation in `e_a^mu e^a_nu = delta^mu_nu` and `e_a^k e^b_k = delta_a^b`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let s: f64 = (0..4).map(|a| self.frame[a][mu] * self.coframe[a][nu]).sum();
                worst = worst.max((s - if mu == nu { 1.0 } else { 0.0 }).abs());
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                let s: f64 = (0..4).map(|k| self.frame[a][k] * self.coframe[b][k]).sum();
                worst = worst.max((s - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    /// Eigenvalues of the reconstructed metric, ascending.
    pub fn metric_eigenvalues(&self) -> Vec<f64> {
        let g = self.metric();
        let flat: Vec<f64> = g.iter().flatten().copied().collect();
        let m = ComplexMatrix::from_real(4, 4, &flat).expect("4x4");
        numerics::eig_hermitian(&m).expect("metric is symmetric").eigenvalues
    }
}

pub fn tetrad_at(point: &RindlerPoint) -> Result<Tetrad> {
    let point = RindlerPoint::new(point.eta, point.xi)?;
    Ok(Tetrad::from_coframe(RindlerChart.coframe(point.coordinates())))
}

/// Frame components `omega^a_{b c}` (`[a][b][c]`, `c` the form index) of the
/// Levi-Civita connection of a coframe, solved from the structure equation.
pub fn connection_coefficients<C: Coframe>(chart: &C, x: [f64; 4]) -> [Mat4; 4] {
    let tetrad = Tetrad::from_coframe(chart.coframe(x));
    let grad = chart.coframe_gradient(x);

    // (d theta^a)_{cd} in frame components
    let mut dtheta = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for c in 0..4 {
            for d in 0..4 {
                let mut s = 0.0;
                for mu in 0..4 {
                    for nu in 0..4 {
                        let curl = grad[mu][a][nu] - grad[nu][a][mu];
                        s += tetrad.frame[c][mu] * tetrad.frame[d][nu] * curl;
                    }
                }
                dtheta[a][c][d] = s;
            }
        }
    }
    // T_{acd} = eta_ae (d theta^e)_{cd} = omega_{acd} - omega_{adc}
    let t = |a: usize, c: usize, d: usize| MINKOWSKI[a] * dtheta[a][c][d];

    // omega_{abc} = -(T_{acb} - T_{cba} + T_{bac}) / 2, antisymmetric in (a, b)
    let mut lower = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in (a + 1)..4 {
            for c in 0..4 {
                let w = -0.5 * (t(a, c, b) - t(c, b, a) + t(b, a, c));
                lower[a][b][c] = w;
                lower[b][a][c] = -w;
            }
        }
    }
    let mut upper = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                upper[a][b][c] = MINKOWSKI[a] * lower[a][b][c];
            }
        }
    }
    upper
}

/// Connection one-form evaluated on a coordinate displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionForm {
    /// `delta omega^a_b`, indexed `[a][b]`.
    pub upper: Mat4,
}

impl ConnectionForm {
    /// `delta omega_ab = eta_ac delta omega^c_b`
    pub fn lowered(&self) -> Mat4 {
        let mut l = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                l[a][b] = MINKOWSKI[a] * self.upper[a][b];
            }
        }
        l
    }

    /// Max `|delta omega_ab + delta omega_ba|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let l = self.lowered();
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                worst = worst.max((l[a][b] + l[b][a]).abs());
            }
        }
        worst
    }

    /// Infinitesimal local Lorentz transformation `Lambda^a_b = delta^a_b - delta omega^a_b`.
    pub fn lorentz(&self) -> Mat4 {
        let mut m = identity4();
        for a in 0..4 {
            for b in 0..4 {
                m[a][b] -= self.upper[a][b];
            }
        }
        m
    }
}

/// `delta omega^a_b = omega^a_{b c} e^c_mu dx^mu`.
pub fn connection_one_form(point: &RindlerPoint, displacement: [f64; 4]) -> Result<ConnectionForm> {
    let point = RindlerPoint::new(point.eta, point.xi)?;
    let x = point.coordinates();
    let coeffs = connection_coefficients(&RindlerChart, x);
    let coframe = RindlerChart.coframe(x);
    let theta: Vec<f64> = (0..4)
        .map(|c| (0..4).map(|mu| coframe[c][mu] * displacement[mu]).sum())
        .collect();
    let mut upper = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            upper[a][b] = (0..4).map(|c| coeffs[a][b][c] * theta[c]).sum();
        }
    }
    Ok(ConnectionForm { upper })
}

/// Residual of `d theta^a + omega^a_b ^ theta^b = 0` with `d theta` taken by
/// central finite differences of the coframe.
pub fn torsion_residual(point: &RindlerPoint, step: f64) -> Result<f64> {
    torsion_residual_for(&RindlerChart, point.coordinates(), step)
}

pub fn torsion_residual_for<C: Coframe>(chart: &C, x: [f64; 4], step: f64) -> Result<f64> {
    let coeffs = connection_coefficients(chart, x);
    let coframe = chart.coframe(x);

    let mut fd_grad = [[[0.0; 4]; 4]; 4];
    for lambda in 0..4 {
        let mut plus = x;
        let mut minus = x;
        plus[lambda] += step;
        minus[lambda] -= step;
        let (ep, em) = (chart.coframe(plus), chart.coframe(minus));
        for a in 0..4 {
            for mu in 0..4 {
                fd_grad[lambda][a][mu] = (ep[a][mu] - em[a][mu]) / (2.0 * step);
            }
        }
    }
    // coordinate components omega^a_{b mu}
    let mut omega = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for mu in 0..4 {
                omega[a][b][mu] = (0..4).map(|c| coeffs[a][b][c] * coframe[c][mu]).sum();
            }
        }
    }
    let mut worst = 0.0f64;
    for a in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                let d = fd_grad[mu][a][nu] - fd_grad[nu][a][mu];
                let wedge: f64 = (0..4)
                    .map(|b| omega[a][b][mu] * coframe[b][nu] - omega[a][b][nu] * coframe[b][mu])
                    .sum();
                worst = worst.max((d + wedge).abs());
            }
        }
    }
    if !worst.is_finite() {
        return Err(crate::error::Error::NonFinite("torsion residual"));
    }
    Ok(worst)
}

/// Sign bookkeeping for the `(0, 1)` connection component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionConvention {
    /// Coefficient of `d eta` in `delta omega^0_1` as computed.
    pub upper_01: f64,
    /// Coefficient of `d eta` in `delta omega_01` as computed.
    pub lowered_01: f64,
    /// The quoted coefficient, `-1`.
    pub quoted: f64,
    pub matches_upper: bool,
    pub matches_lowered: bool,
}

pub fn connection_convention() -> ConnectionConvention {
    let point = RindlerPoint::new(0.0, 1.0).expect("valid point");
    let form = connection_one_form(&point, [1.0, 0.0, 0.0, 0.0]).expect("valid point");
    let upper_01 = form.upper[0][1];
    let lowered_01 = form.lowered()[0][1];
    let quoted = -1.0;
    ConnectionConvention {
        upper_01,
        lowered_01,
        quoted,
        matches_upper: (upper_01 - quoted).abs() < 1e-12,
        matches_lowered: (lowered_01 - quoted).abs() < 1e-12,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiEvent {
    pub t: f64,
    pub x: f64,
}

impl MinkowskiEvent {
    /// `x^2 - t^2`
    pub fn interval(&self) -> f64 {
        self.x * self.x - self.t * self.t
    }
}

/// `t = a^-1 e^(a zeta) sinh(a eta)`, `x = a^-1 e^(a zeta) cosh(a eta)`.
pub fn rindler_to_minkowski(eta: f64, zeta: f64, a: f64) -> Result<MinkowskiEvent> {
    if !(a > 0.0) {
        return Err(invalid("a", a, "acceleration must be > 0"));
    }
    let scale = (a * zeta).exp() / a;
    Ok(MinkowskiEvent {
        t: scale * (a * eta).sinh(),
        x: scale * (a * eta).cosh(),
    })
}
