//! Characteristic functions, Wigner functions, s-ordered distributions,
//! marginals, and negativity.
//!
//! Conventions (self-contained; every formula below is derived from these):
//!
//! * Characteristic function: `chi(eta) = omega(e^{i phi(h_eta)})` with
//!   `h_eta = Omega(eta, f)`. For quasifree states
//!   `chi(eta) = exp(-W(h_eta, h_eta)/2) = exp(-eta^T M eta / 2)` with
//!   `M = Omega^T Sigma Omega`; coherent displacement by `m` multiplies it
//!   by the phase `exp(i m^T Omega eta)`; the one-particle state carries
//!   the extra polynomial factor `(1 - |beta_G(h_eta)|^2)` from
//!   `<1|D(b)|1> = e^{-|b|^2/2} (1 - |b|^2)`.
//! * Wigner function: the symplectic Fourier transform
//!   `W(xi) = (2 pi)^{-2N} int d^{2N} eta e^{i Omega(eta, xi)} chi(eta)`.
//!   This measure is the unique one for which `int W d^{2N} xi = chi(0) = 1`;
//!   for the Gaussian chi above it evaluates in closed form to
//!   `W(xi) = exp(-(xi-m)^T Sigma^{-1} (xi-m)/2) / ((2 pi)^N sqrt(det Sigma))`.
//! * s-ordering: the weight `exp(s hbar |eta|^2 / 4)` inside the transform,
//!   equivalently the covariance shift `Sigma_s = Sigma - (s hbar / 2) I`
//!   on the Gaussian path. s = 0 is the Wigner function; s = -1 smooths by
//!   half a quantum per axis (Husimi-type); s = +1 sharpens and exists only
//!   while `Sigma_s` stays positive definite.

use crate::error::{Error, Result};
use crate::modes::{covariance, overlap_vector, CovarianceMatrix, LocalModeSet, WightmanForm};
use crate::numerics::{gauss_legendre, pairwise_sum};
use crate::propagator::{FieldState, MomentumGrid};
use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

/// Hard limit on materialized grid/tensor sizes.
const MAX_POINTS: usize = 1 << 24;

/// Threshold the characteristic function must decay below at the eta
/// integration boundary.
const CUTOFF_CHI_LIMIT: f64 = 1e-8;

/// One uniform symmetric phase-space axis: nodes on [-extent, extent],
/// odd count so the origin is a node.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhaseAxis {
    pub extent: f64,
    pub nodes: usize,
}

impl PhaseAxis {
    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.nodes - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }
}

/// Uniform tensor-product grid over the 2N phase-space coordinates,
/// row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhaseGrid {
    pub axes: Vec<PhaseAxis>,
}

impl PhaseGrid {
    pub fn new(axes: Vec<PhaseAxis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Config("phase grid needs at least one axis".into()));
        }
        for (d, ax) in axes.iter().enumerate() {
            if !(ax.extent > 0.0) {
                return Err(Error::Config(format!("phase axis {d}: extent must be > 0")));
            }
            if ax.nodes < 3 || ax.nodes % 2 == 0 {
                return Err(Error::Config(format!(
                    "phase axis {d}: node count must be odd and >= 3, got {}",
                    ax.nodes
                )));
            }
        }
        let total: usize = axes.iter().map(|a| a.nodes).product();
        if total > MAX_POINTS {
            return Err(Error::CostGuard(format!(
                "phase grid with {total} points exceeds the {MAX_POINTS} point limit"
            )));
        }
        Ok(PhaseGrid { axes })
    }

    /// Size the grid from a covariance matrix and mean: per axis,
    /// `extent_d = |mean_d| + factor * sqrt(Sigma_dd)` with factor >= 4.
    /// Extents scale exactly with the per-axis standard deviations, so a
    /// symplectic rescaling of the mode co-moves the grid.
    pub fn auto_sized(
        sigma: &DMatrix<f64>,
        mean: &DVector<f64>,
        nodes: usize,
        factor: f64,
    ) -> Result<Self> {
        let factor = factor.max(4.0);
        let axes = (0..sigma.nrows())
            .map(|d| PhaseAxis {
                extent: mean[d].abs() + factor * sigma[(d, d)].sqrt(),
                nodes: if nodes % 2 == 0 { nodes + 1 } else { nodes },
            })
            .collect();
        PhaseGrid::new(axes)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn total_points(&self) -> usize {
        self.axes.iter().map(|a| a.nodes).product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing()).product()
    }

    /// Decode a flat row-major index into coordinates.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut rem = flat;
        let mut out = vec![0.0; self.dim()];
        for d in (0..self.dim()).rev() {
            let n = self.axes[d].nodes;
            out[d] = self.axes[d].coord(rem % n);
            rem /= n;
        }
        out
    }
}

/// A sampled s-ordered quasiprobability distribution with its quadrature
/// metadata.
#[derive(Debug, Clone)]
pub struct QuasiDistribution {
    pub s: f64,
    pub grid: PhaseGrid,
    /// Row-major over the grid, last axis fastest.
    pub values: Vec<f64>,
    /// Grid quadrature of the values; close to 1 for an adequate grid.
    pub normalization: f64,
    pub min_value: f64,
    /// Grid quadrature of |W| minus one, clamped at zero within quadrature
    /// tolerance.
    pub negativity: f64,
    /// Largest imaginary remnant of the direct transform (None on the
    /// closed-form path).
    pub imag_residual: Option<f64>,
    pub state_tag: String,
    pub grid_fingerprint: String,
    pub config_fingerprint: String,
}

impl QuasiDistribution {
    fn from_values(
        s: f64,
        grid: PhaseGrid,
        values: Vec<f64>,
        imag_residual: Option<f64>,
        state_tag: String,
        grid_fingerprint: String,
    ) -> Self {
        let cell = grid.cell_volume();
        let terms: Vec<f64> = values.iter().map(|v| v * cell).collect();
        let normalization = pairwise_sum(&terms);
        let min_value = values.iter().fold(f64::INFINITY, |m, v| m.min(*v));
        let abs_terms: Vec<f64> = values.iter().map(|v| v.abs() * cell).collect();
        let negativity = clamp_negativity(pairwise_sum(&abs_terms) - 1.0, normalization);
        QuasiDistribution {
            s,
            grid,
            values,
            normalization,
            min_value,
            negativity,
            imag_residual,
            state_tag,
            grid_fingerprint,
            config_fingerprint: String::new(),
        }
    }
}

fn clamp_negativity(raw: f64, normalization: f64) -> f64 {
    let tol = (normalization - 1.0).abs().max(1e-9) + 1e-12;
    if raw <= tol {
        0.0
    } else {
        raw
    }
}

/// Negativity volume and grid minimum of a distribution. The volume is the
/// grid quadrature of |W| minus one, clamped at >= 0 when within quadrature
/// tolerance of zero; it is meaningless for badly normalized grids, which
/// are rejected.
pub fn negativity(dist: &QuasiDistribution) -> Result<(f64, f64)> {
    if (dist.normalization - 1.0).abs() > 1e-2 {
        return Err(Error::Normalization(format!(
            "grid normalization {} is more than 1e-2 away from 1",
            dist.normalization
        )));
    }
    let cell = dist.grid.cell_volume();
    let abs_terms: Vec<f64> = dist.values.iter().map(|v| v.abs() * cell).collect();
    let raw = pairwise_sum(&abs_terms) - 1.0;
    Ok((clamp_negativity(raw, dist.normalization), dist.min_value))
}

/// The characteristic function of a state on a fixed mode set, with all
/// state-dependent structure precomputed.
pub struct CharacteristicFn {
    /// Omega^T Sigma Omega.
    m: DMatrix<f64>,
    /// Coherent phase coefficients: chi *= exp(i <pc, eta>), pc = Omega^T mean.
    phase_coeffs: Option<DVector<f64>>,
    /// One-particle displacement coefficients: beta(h_eta) = <u, eta>,
    /// u = Omega v with v_A = beta_G(f_A).
    displacement: Option<Vec<Complex64>>,
}

impl CharacteristicFn {
    /// Build the evaluator for any supported state. One-particle states use
    /// the vacuum quadratic form plus the overlap amplitudes.
    pub fn build(set: &LocalModeSet, state: &FieldState, grid: &MomentumGrid) -> Result<Self> {
        state.validate(set.modes())?;
        match state {
            FieldState::OneParticle { profile } => {
                let cov = covariance(set, &FieldState::Vacuum, grid)?;
                let m = set.omega().transpose() * &cov.sigma * set.omega();
                let v = overlap_vector(set, profile, grid)?;
                let d = set.dim();
                let omega = set.omega();
                let mut u = vec![Complex64::new(0.0, 0.0); d];
                for (a, ua) in u.iter_mut().enumerate() {
                    for (b, vb) in v.iter().enumerate() {
                        *ua += omega[(a, b)] * vb;
                    }
                }
                Ok(CharacteristicFn { m, phase_coeffs: None, displacement: Some(u) })
            }
            _ => {
                let cov = covariance(set, state, grid)?;
                let m = set.omega().transpose() * &cov.sigma * set.omega();
                let phase_coeffs = match state {
                    FieldState::Coherent { .. } => Some(set.omega().transpose() * &cov.mean),
                    _ => None,
                };
                Ok(CharacteristicFn { m, phase_coeffs, displacement: None })
            }
        }
    }

    /// Quadratic form of the Gaussian envelope.
    pub fn quadratic_form(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn eval(&self, eta: &[f64]) -> Complex64 {
        let d = eta.len();
        let mut q = 0.0;
        for a in 0..d {
            let row = self.m.row(a);
            let mut acc = 0.0;
            for b in 0..d {
                acc += row[b] * eta[b];
            }
            q += eta[a] * acc;
        }
        let mut chi = Complex64::new((-0.5 * q).exp(), 0.0);
        if let Some(pc) = &self.phase_coeffs {
            let phase: f64 = pc.iter().zip(eta).map(|(c, e)| c * e).sum();
            chi *= Complex64::from_polar(1.0, phase);
        }
        if let Some(u) = &self.displacement {
            let beta: Complex64 = u.iter().zip(eta).map(|(ua, e)| ua * *e).sum();
            chi *= 1.0 - beta.norm_sqr();
        }
        chi
    }
}

/// `chi(eta) = omega(e^{i phi(h_eta)})` for any supported state.
pub fn characteristic(
    set: &LocalModeSet,
    state: &FieldState,
    eta: &DVector<f64>,
    grid: &MomentumGrid,
) -> Result<Complex64> {
    let f = CharacteristicFn::build(set, state, grid)?;
    Ok(f.eval(eta.as_slice()))
}

fn condition_check(sigma: &DMatrix<f64>) -> Result<()> {
    let eig = sigma.symmetric_eigenvalues();
    let max = eig.iter().fold(f64::NEG_INFINITY, |m, l| m.max(*l));
    let min = eig.iter().fold(f64::INFINITY, |m, l| m.min(*l));
    if !(min > 0.0) || max / min > 1e12 {
        return Err(Error::IllConditioned(if min > 0.0 { max / min } else { f64::INFINITY }));
    }
    Ok(())
}

fn shifted_sigma(cov: &CovarianceMatrix, s: f64, hbar: f64) -> Result<DMatrix<f64>> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::Config(format!("ordering parameter s must lie in [-1, 1], got {s}")));
    }
    let d = cov.sigma.nrows();
    let sigma_s = &cov.sigma - DMatrix::identity(d, d) * (s * hbar / 2.0);
    if s != 0.0 && Cholesky::new(sigma_s.clone()).is_none() {
        return Err(Error::OrderingDomain(format!(
            "Sigma - (s hbar / 2) I is not positive definite at s = {s}; the requested \
             ordering does not exist for this state"
        )));
    }
    Ok(sigma_s)
}

/// Closed-form Gaussian path for the s-ordered distribution of a Gaussian
/// state: a normal density with covariance `Sigma_s = Sigma - (s hbar/2) I`
/// centered on the state mean, sampled over the grid.
pub fn s_ordered_gaussian(
    set: &LocalModeSet,
    state: &FieldState,
    s: f64,
    phase_grid: &PhaseGrid,
    grid: &MomentumGrid,
) -> Result<QuasiDistribution> {
    if !state.is_gaussian() {
        return Err(Error::NotGaussian(
            "the closed-form path handles vacuum, thermal, and coherent states only".into(),
        ));
    }
    let cov = covariance(set, state, grid)?;
    let sigma_s = shifted_sigma(&cov, s, set.spec.hbar)?;
    condition_check(&sigma_s)?;
    if phase_grid.dim() != set.dim() {
        return Err(Error::Config(format!(
            "phase grid has {} axes but the mode set needs {}",
            phase_grid.dim(),
            set.dim()
        )));
    }
    let chol = Cholesky::new(sigma_s.clone())
        .ok_or_else(|| Error::IllConditioned(f64::INFINITY))?;
    let l = chol.l();
    let log_det: f64 = l.diagonal().iter().map(|d| 2.0 * d.ln()).sum();
    let n_modes = set.modes() as f64;
    let log_norm = -n_modes * (2.0 * std::f64::consts::PI).ln() - 0.5 * log_det;
    let total = phase_grid.total_points();
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let xi = phase_grid.point(flat);
            let dx = DVector::from_iterator(xi.len(), xi.iter().zip(cov.mean.iter()).map(|(x, m)| x - m));
            let z = l.solve_lower_triangular(&dx).unwrap();
            (log_norm - 0.5 * z.norm_squared()).exp()
        })
        .collect();
    Ok(QuasiDistribution::from_values(
        s,
        phase_grid.clone(),
        values,
        None,
        state.tag(),
        grid.fingerprint(),
    ))
}

/// Wigner function of a Gaussian state (s = 0 closed form).
pub fn wigner_gaussian(
    set: &LocalModeSet,
    state: &FieldState,
    phase_grid: &PhaseGrid,
    grid: &MomentumGrid,
) -> Result<QuasiDistribution> {
    s_ordered_gaussian(set, state, 0.0, phase_grid, grid)
}

/// Integration parameters for the direct symplectic-Fourier path. A zero
/// field requests automatic selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaQuadrature {
    /// Per-axis cutoff in units of the axis decay length `1/sqrt(M_aa)` of
    /// the characteristic function (so the boxes track the state's
    /// anisotropy). Zero: automatic.
    pub cutoff: f64,
    /// Gauss-Legendre nodes per eta axis. Zero: automatic.
    pub nodes: usize,
}

impl EtaQuadrature {
    pub const AUTO: EtaQuadrature = EtaQuadrature { cutoff: 0.0, nodes: 0 };
}

/// Direct quadrature of the symplectic Fourier transform
/// `(2 pi)^{-2N} int d^{2N} eta e^{i Omega(eta, xi)} chi_s(eta)` over a
/// tensor-product Gauss-Legendre box. Supports every state (including
/// one-particle) at N <= 2 and s <= 0.
pub fn s_ordered_numeric(
    set: &LocalModeSet,
    state: &FieldState,
    s: f64,
    phase_grid: &PhaseGrid,
    quad: EtaQuadrature,
    grid: &MomentumGrid,
) -> Result<QuasiDistribution> {
    if set.modes() > 2 {
        return Err(Error::CostGuard(format!(
            "direct phase-space quadrature is limited to N <= 2 modes, got N = {}",
            set.modes()
        )));
    }
    if !(-1.0..=0.0).contains(&s) {
        return Err(Error::OrderingDomain(format!(
            "the direct path integrates s <= 0 only (the s > 0 weight grows); got s = {s}"
        )));
    }
    if phase_grid.dim() != set.dim() {
        return Err(Error::Config(format!(
            "phase grid has {} axes but the mode set needs {}",
            phase_grid.dim(),
            set.dim()
        )));
    }
    let chi = CharacteristicFn::build(set, state, grid)?;
    let hbar = set.spec.hbar;
    let d = set.dim();

    // Per-axis decay lengths of |chi| from the diagonal of M.
    let decay: Vec<f64> = (0..d).map(|a| 1.0 / chi.quadratic_form()[(a, a)].sqrt()).collect();
    let auto_cutoff = quad.cutoff == 0.0;
    // exp(-c^2/2) = 1e-9 at c = 6.44.
    let mut cutoff = if auto_cutoff { 6.44 } else { quad.cutoff };

    let mut attempts = 0;
    let cutoffs: Vec<f64> = loop {
        let cutoffs: Vec<f64> = decay.iter().map(|l| cutoff * l).collect();
        let worst = boundary_chi_max(&chi, &cutoffs, s, hbar);
        if worst < CUTOFF_CHI_LIMIT {
            break cutoffs;
        }
        if !auto_cutoff || attempts >= 4 {
            return Err(Error::Cutoff(format!(
                "|chi| = {worst:.3e} at the eta integration boundary (cutoff {cutoff:.2} decay \
                 lengths) exceeds {CUTOFF_CHI_LIMIT:.0e}"
            )));
        }
        cutoff *= 1.3;
        attempts += 1;
    };

    // Nodes per axis: enough to resolve e^{i eta.phi} phases up to the
    // paired xi extent, plus margin.
    let nodes: Vec<usize> = (0..d)
        .map(|a| {
            if quad.nodes > 0 {
                quad.nodes
            } else {
                let xi_extent = phase_grid.axes[partner(a)].extent;
                (((cutoffs[a] * xi_extent) / 2.0).ceil() as usize + 16).max(24)
            }
        })
        .collect();
    let tensor_size: usize = nodes.iter().product();
    if tensor_size > MAX_POINTS {
        return Err(Error::CostGuard(format!(
            "eta tensor of {tensor_size} nodes exceeds the {MAX_POINTS} node limit"
        )));
    }

    // Per-axis Gauss-Legendre rules on [-c_a, c_a].
    let rules: Vec<(Vec<f64>, Vec<f64>)> = (0..d)
        .map(|a| {
            let (xs, ws) = gauss_legendre(nodes[a]);
            (
                xs.iter().map(|x| cutoffs[a] * x).collect(),
                ws.iter().map(|w| cutoffs[a] * w).collect(),
            )
        })
        .collect();

    // T[j] = w_j * chi_s(eta_j) over the eta product grid.
    let mut tensor: Vec<Complex64> = (0..tensor_size)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut eta = vec![0.0; d];
            let mut w = 1.0;
            for a in (0..d).rev() {
                let j = rem % nodes[a];
                rem /= nodes[a];
                eta[a] = rules[a].0[j];
                w *= rules[a].1[j];
            }
            let r2: f64 = eta.iter().map(|e| e * e).sum();
            chi.eval(&eta) * w * (s * hbar * r2 / 4.0).exp()
        })
        .collect();

    // Contract one eta axis at a time against its oscillation matrix.
    // Axis a of eta pairs with xi axis partner(a) carrying sign
    // (+1 for a = 2k, -1 for a = 2k+1), from Omega(eta, xi) = sum_a
    // eta_a (Omega xi)_a.
    let mut dims: Vec<usize> = nodes.clone();
    for a in (0..d).rev() {
        let p_axis = &phase_grid.axes[partner(a)];
        let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
        let p = p_axis.nodes;
        let e: Vec<Complex64> = (0..dims[a] * p)
            .map(|i| {
                let (j, g) = (i / p, i % p);
                Complex64::from_polar(1.0, sign * rules[a].0[j] * p_axis.coord(g))
            })
            .collect();
        tensor = contract_axis(&tensor, &mut dims, a, &e, p);
    }

    // dims now hold the xi axes in partner order: position a carries xi
    // axis partner(a). Permute into natural row-major order.
    let total = phase_grid.total_points();
    let strides = {
        let mut s = vec![1usize; d];
        for a in (0..d - 1).rev() {
            s[a] = s[a + 1] * dims[a + 1];
        }
        s
    };
    let prefactor = (2.0 * std::f64::consts::PI).powi(-(d as i32));
    let (values, imag_max): (Vec<f64>, Vec<f64>) = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut src = 0;
            for g_axis in (0..d).rev() {
                let g = rem % phase_grid.axes[g_axis].nodes;
                rem /= phase_grid.axes[g_axis].nodes;
                // xi axis g_axis lives at tensor position partner(g_axis).
                src += g * strides[partner(g_axis)];
            }
            let v = tensor[src] * prefactor;
            (v.re, v.im.abs())
        })
        .unzip();
    let imag_residual = imag_max.iter().fold(0.0f64, |m, x| m.max(*x));

    Ok(QuasiDistribution::from_values(
        s,
        phase_grid.clone(),
        values,
        Some(imag_residual),
        state.tag(),
        grid.fingerprint(),
    ))
}

/// Wigner function by direct quadrature (s = 0).
pub fn wigner_numeric(
    set: &LocalModeSet,
    state: &FieldState,
    phase_grid: &PhaseGrid,
    quad: EtaQuadrature,
    grid: &MomentumGrid,
) -> Result<QuasiDistribution> {
    s_ordered_numeric(set, state, 0.0, phase_grid, quad, grid)
}

/// The xi axis paired with eta axis `a` in `Omega(eta, xi)`.
fn partner(a: usize) -> usize {
    if a % 2 == 0 {
        a + 1
    } else {
        a - 1
    }
}

/// Largest |chi_s| on the faces of the eta integration box, sampled on a
/// coarse lattice.
fn boundary_chi_max(chi: &CharacteristicFn, cutoffs: &[f64], s: f64, hbar: f64) -> f64 {
    let d = cutoffs.len();
    let samples = 5usize;
    let mut worst = 0.0f64;
    let lattice: usize = samples.pow((d - 1) as u32);
    for face_axis in 0..d {
        for side in [-1.0, 1.0] {
            for flat in 0..lattice {
                let mut rem = flat;
                let mut eta = vec![0.0; d];
                for a in 0..d {
                    if a == face_axis {
                        eta[a] = side * cutoffs[a];
                    } else {
                        let i = rem % samples;
                        rem /= samples;
                        eta[a] = cutoffs[a] * (2.0 * i as f64 / (samples - 1) as f64 - 1.0);
                    }
                }
                let r2: f64 = eta.iter().map(|e| e * e).sum();
                let v = chi.eval(&eta).norm() * (s * hbar * r2 / 4.0).exp();
                worst = worst.max(v);
            }
        }
    }
    worst
}

/// Contract tensor axis `a` (row-major dims) against matrix e[q x p],
/// replacing dimension q by p: out[.., g, ..] = sum_j in[.., j, ..] e[j, g].
fn contract_axis(
    tensor: &[Complex64],
    dims: &mut [usize],
    a: usize,
    e: &[Complex64],
    p: usize,
) -> Vec<Complex64> {
    let q = dims[a];
    let block: usize = dims[a + 1..].iter().product();
    let outer: usize = dims[..a].iter().product();
    let mut out = vec![Complex64::new(0.0, 0.0); outer * p * block];
    out.par_chunks_mut(p * block).enumerate().for_each(|(o, chunk)| {
        let base = o * q * block;
        for j in 0..q {
            let src = &tensor[base + j * block..base + (j + 1) * block];
            let row = &e[j * p..(j + 1) * p];
            for (g, w) in row.iter().enumerate() {
                let dst = &mut chunk[g * block..(g + 1) * block];
                for b in 0..block {
                    dst[b] += w * src[b];
                }
            }
        }
    });
    dims[a] = p;
    out
}

/// A 1D marginal of a sampled distribution.
#[derive(Debug, Clone)]
pub struct Marginal {
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
    pub mass: f64,
    pub min_value: f64,
}

/// Which quadrature of a mode to keep when marginalizing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalAxis {
    Position,
    Momentum,
}

/// Integrate out every coordinate except the chosen quadrature of one
/// mode. For a valid state the result is a probability density: tests hold
/// it nonnegative within quadrature tolerance and of unit mass.
pub fn marginals(dist: &QuasiDistribution, mode_index: usize, axis: MarginalAxis) -> Result<Marginal> {
    let d = dist.grid.dim();
    let keep = 2 * mode_index + if axis == MarginalAxis::Momentum { 1 } else { 0 };
    if keep >= d {
        return Err(Error::Config(format!(
            "mode index {mode_index} out of range for {} modes",
            d / 2
        )));
    }
    let n_keep = dist.grid.axes[keep].nodes;
    let cell_other = dist.grid.cell_volume() / dist.grid.axes[keep].spacing();
    let mut values = vec![0.0; n_keep];
    let mut rems: Vec<usize> = vec![0; d];
    for (flat, v) in dist.values.iter().enumerate() {
        let mut rem = flat;
        for a in (0..d).rev() {
            rems[a] = rem % dist.grid.axes[a].nodes;
            rem /= dist.grid.axes[a].nodes;
        }
        values[rems[keep]] += v * cell_other;
    }
    let coords: Vec<f64> = (0..n_keep).map(|i| dist.grid.axes[keep].coord(i)).collect();
    let h = dist.grid.axes[keep].spacing();
    let mass_terms: Vec<f64> = values.iter().map(|v| v * h).collect();
    let mass = pairwise_sum(&mass_terms);
    let min_value = values.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    Ok(Marginal { coords, values, mass, min_value })
}
