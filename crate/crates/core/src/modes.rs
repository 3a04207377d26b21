//! Assembly of N local modes: symplectic form, CCR verification, and state
//! covariance matrices.
//!
//! The flattened smearing vector is ordered `(f1^(1), f2^(1), ..., f1^(N),
//! f2^(N))`, so phase-space index `A = 2k + a` addresses quadrature `a` of
//! mode `k`. The symplectic form is constructed exactly as the block
//! diagonal of `[[0, 1], [-1, 0]]`; the measured commutator matrix is a
//! diagnostic and never feeds downstream formulas, so quadrature error
//! cannot contaminate the phase-space geometry.

use crate::error::{Error, Result};
use crate::geometry::{SpacetimeSpec, TilingLayout};
use crate::propagator::{overlap_beta, FieldState, MomentumGrid, SmearedTable};
use crate::smearing::{make_local_mode, BumpProfile, LocalModePair, MomentumAmplitude, SmearingFunction};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

/// N local-mode pairs with their exact symplectic form and provenance.
#[derive(Debug, Clone)]
pub struct LocalModeSet {
    pub pairs: Vec<LocalModePair>,
    pub spec: SpacetimeSpec,
    pub layout: TilingLayout,
    omega: DMatrix<f64>,
}

impl LocalModeSet {
    /// Number of modes N.
    pub fn modes(&self) -> usize {
        self.pairs.len()
    }

    /// Phase-space dimension 2N.
    pub fn dim(&self) -> usize {
        2 * self.pairs.len()
    }

    /// The exact block-diagonal symplectic form.
    pub fn omega(&self) -> &DMatrix<f64> {
        &self.omega
    }

    /// Flattened smearing vector (f1^(1), f2^(1), ..., f1^(N), f2^(N)).
    pub fn flattened(&self) -> Vec<&SmearingFunction> {
        self.pairs.iter().flat_map(|p| [&p.f1, &p.f2]).collect()
    }

    /// Rebuild the set with every pair rescaled by lambda.
    pub fn rescaled(&self, lambda: f64) -> Result<LocalModeSet> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| crate::smearing::rescale_mode(p, lambda))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalModeSet { pairs, spec: self.spec.clone(), layout: self.layout.clone(), omega: self.omega.clone() })
    }
}

/// The exact symplectic form for N modes.
pub fn block_omega(modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Build one normalized local mode per tile of a validated layout.
pub fn assemble_modes(
    layout: &TilingLayout,
    profile: BumpProfile,
    spec: &SpacetimeSpec,
    grid: &MomentumGrid,
) -> Result<LocalModeSet> {
    TilingLayout::validate(&layout.tiles, spec)?;
    let pairs = layout
        .tiles
        .iter()
        .map(|tile| make_local_mode(tile, profile, spec, grid))
        .collect::<Result<Vec<_>>>()?;
    let omega = block_omega(pairs.len());
    Ok(LocalModeSet { pairs, spec: spec.clone(), layout: layout.clone(), omega })
}

/// Measured commutator matrix against the exact symplectic form.
#[derive(Debug, Clone)]
pub struct CCRReport {
    /// E_AB = E(f_A, f_B) by quadrature.
    pub measured: DMatrix<f64>,
    /// measured - Omega.
    pub residual: DMatrix<f64>,
    pub max_abs_residual: f64,
    /// Largest outer-band tail fraction among the smearing functions; a
    /// value above ~1e-6 marks the grid as bandwidth-limited.
    pub bandwidth_tail: f64,
    pub grid_fingerprint: String,
}

/// Fill the commutator matrix by quadrature and compare with the exact
/// form. Reports, never fails on large residuals.
pub fn ccr_check(set: &LocalModeSet, grid: &MomentumGrid) -> CCRReport {
    let funcs = set.flattened();
    let amps: Vec<&dyn MomentumAmplitude> = funcs.iter().map(|f| *f as _).collect();
    let table = SmearedTable::build(&amps, grid, &set.spec);
    let d = set.dim();
    let entries: Vec<f64> = (0..d * d)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (i / d, i % d);
            if a == b {
                0.0
            } else {
                table.causal(a, b)
            }
        })
        .collect();
    let measured = DMatrix::from_row_slice(d, d, &entries);
    let residual = &measured - set.omega();
    let max_abs_residual = residual.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let bandwidth_tail = (0..d).map(|a| table.tail_fraction(a)).fold(0.0f64, f64::max);
    CCRReport {
        measured,
        residual,
        max_abs_residual,
        bandwidth_tail,
        grid_fingerprint: grid.fingerprint(),
    }
}

/// Symmetrized smeared two-point matrix of a Gaussian state, with the
/// phase-space mean (nonzero only for coherent states).
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    /// Sigma_AB = Re W(f_A, f_B), 2N x 2N symmetric.
    pub sigma: DMatrix<f64>,
    /// <(x_1, p_1, ..., x_N, p_N)>.
    pub mean: DVector<f64>,
    pub state_tag: String,
    pub grid_fingerprint: String,
}

impl CovarianceMatrix {
    /// Symplectic eigenvalues: the moduli of the (paired) eigenvalues of
    /// Omega Sigma, one per mode, ascending.
    pub fn symplectic_eigenvalues(&self, omega: &DMatrix<f64>) -> Vec<f64> {
        let a = omega * &self.sigma;
        let eig = a.complex_eigenvalues();
        let mut mods: Vec<f64> = eig.iter().map(|l| l.norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Eigenvalues come in +-i nu pairs; average each pair.
        mods.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
    }
}

/// Assemble the covariance matrix of a Gaussian state. One-particle states
/// are not Gaussian; callers must use the direct quadrature path instead.
pub fn covariance(
    set: &LocalModeSet,
    state: &FieldState,
    grid: &MomentumGrid,
) -> Result<CovarianceMatrix> {
    state.validate(set.modes())?;
    let funcs = set.flattened();
    let amps: Vec<&dyn MomentumAmplitude> = funcs.iter().map(|f| *f as _).collect();
    let table = SmearedTable::build(&amps, grid, &set.spec);
    covariance_from_table(set, state, &table, &grid.fingerprint())
}

/// Covariance assembly from a prebuilt transform table (used by the
/// symmetry checks, which substitute transformed amplitudes).
pub fn covariance_from_table(
    set: &LocalModeSet,
    state: &FieldState,
    table: &SmearedTable,
    grid_fingerprint: &str,
) -> Result<CovarianceMatrix> {
    if let FieldState::OneParticle { .. } = state {
        return Err(Error::NotGaussian(
            "one-particle states have no covariance-only description; use the direct \
             quadrature path"
                .into(),
        ));
    }
    let d = set.dim();
    let hbar = set.spec.hbar;
    let upper: Vec<((usize, usize), f64)> = {
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|a| (a..d).map(move |b| (a, b)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(a, b)| {
                let w = match state {
                    FieldState::Thermal { beta } => table.thermal(a, b, *beta),
                    _ => table.wightman(a, b),
                };
                ((a, b), w.re)
            })
            .collect()
    };
    let mut sigma = DMatrix::zeros(d, d);
    for ((a, b), v) in upper {
        sigma[(a, b)] = v;
        sigma[(b, a)] = v;
    }
    let mut mean = DVector::zeros(d);
    if let FieldState::Coherent { displacements } = state {
        // <x_k> = sqrt(2 hbar) Re alpha_k, <p_k> = sqrt(2 hbar) Im alpha_k,
        // the displacement convention alpha = (x + i p) / sqrt(2 hbar).
        for (k, alpha) in displacements.iter().enumerate() {
            mean[2 * k] = (2.0 * hbar).sqrt() * alpha.re;
            mean[2 * k + 1] = (2.0 * hbar).sqrt() * alpha.im;
        }
    }
    Ok(CovarianceMatrix {
        sigma,
        mean,
        state_tag: state.tag(),
        grid_fingerprint: grid_fingerprint.to_string(),
    })
}

/// The cached quadratic form of a Gaussian state: `W(h_eta, h_eta) =
/// eta^T M eta` with `M = Omega^T Sigma Omega`, where `h_eta =
/// Omega(eta, f)` is the contraction of the phase-space direction with the
/// flattened smearing vector.
#[derive(Debug, Clone)]
pub struct WightmanForm {
    pub m: DMatrix<f64>,
}

impl WightmanForm {
    pub fn new(cov: &CovarianceMatrix, omega: &DMatrix<f64>) -> Self {
        WightmanForm { m: omega.transpose() * &cov.sigma * omega }
    }

    pub fn eval(&self, eta: &DVector<f64>) -> f64 {
        (eta.transpose() * &self.m * eta)[(0, 0)]
    }
}

/// `W(h_eta, h_eta)` for a Gaussian state via the cached form.
pub fn wightman_quadratic_form(
    set: &LocalModeSet,
    state: &FieldState,
    eta: &DVector<f64>,
    grid: &MomentumGrid,
) -> Result<f64> {
    let cov = covariance(set, state, grid)?;
    Ok(WightmanForm::new(&cov, set.omega()).eval(eta))
}

/// Coefficients of `h_eta = Omega(eta, f)` on the flattened smearing
/// vector: `c = Omega^T eta`.
pub fn h_eta_coefficients(set: &LocalModeSet, eta: &DVector<f64>) -> Vec<f64> {
    (set.omega().transpose() * eta).iter().copied().collect()
}

/// Overlap amplitudes `beta_G(f_A)` of every flattened smearing function
/// with a one-particle profile. `beta_G(h_eta)` is then the contraction
/// with [`h_eta_coefficients`].
pub fn overlap_vector(
    set: &LocalModeSet,
    profile: &crate::propagator::OneParticleProfile,
    grid: &MomentumGrid,
) -> Result<Vec<Complex64>> {
    set.flattened()
        .iter()
        .map(|f| overlap_beta(profile, *f, grid, &set.spec))
        .collect()
}
