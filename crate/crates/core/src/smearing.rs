//! Compactly supported separable smearing functions and local-mode pairs.
//!
//! Every smearing function is a product of a temporal shape of half-width
//! `eps` and one spatial shape per axis, each a scaled copy of a unit-
//! interval profile. The spacetime Fourier transform therefore factorizes
//! into one-dimensional shape transforms, evaluated once per momentum node
//! by high-order Gauss-Legendre quadrature on the compact support; the
//! outer momentum integrals never touch position space.
//!
//! Transform convention: `f^(omega, k) = int dt d^n x f(t,x) e^{i(omega t - k.x)}`.

use crate::error::{Error, Result};
use crate::geometry::{SpacetimeSpec, Tile};
use crate::numerics::{gauss_legendre, pairwise_sum};
use crate::propagator::{causal_smeared, MomentumGrid};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Family of unit-interval profile shapes, supported on |s| < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BumpProfile {
    /// `exp(-1/(1-s^2))`: smooth and exactly compactly supported.
    SmoothBump,
    /// `exp(-(r_cut s)^2 / 2)` on |s| < 1, i.e. a Gaussian of standard
    /// deviation `sigma = half_width / r_cut` cut at `r_cut` sigmas. The
    /// ideal Gaussian carries mass fraction `erfc(r_cut / sqrt(2))` outside
    /// the cut (about 2e-9 at the default r_cut = 6); the stored function
    /// is hard-truncated, so its support is exactly the tile.
    GaussianTruncated { r_cut: f64 },
}

impl BumpProfile {
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "smooth_bump" => Ok(BumpProfile::SmoothBump),
            "gaussian_truncated" => Ok(BumpProfile::GaussianTruncated { r_cut: 6.0 }),
            other => Err(Error::Config(format!("unknown profile '{other}'"))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            BumpProfile::SmoothBump => "smooth_bump",
            BumpProfile::GaussianTruncated { .. } => "gaussian_truncated",
        }
    }

    /// Shape value q(s); zero outside |s| < 1.
    pub fn shape(&self, s: f64) -> f64 {
        if s.abs() >= 1.0 {
            return 0.0;
        }
        match self {
            BumpProfile::SmoothBump => (-1.0 / (1.0 - s * s)).exp(),
            BumpProfile::GaussianTruncated { r_cut } => (-0.5 * (r_cut * s).powi(2)).exp(),
        }
    }

    /// Shape derivative q'(s); zero outside |s| < 1.
    pub fn shape_deriv(&self, s: f64) -> f64 {
        if s.abs() >= 1.0 {
            return 0.0;
        }
        match self {
            BumpProfile::SmoothBump => {
                let u = 1.0 - s * s;
                (-1.0 / u).exp() * (-2.0 * s / (u * u))
            }
            BumpProfile::GaussianTruncated { r_cut } => {
                (-0.5 * (r_cut * s).powi(2)).exp() * (-r_cut * r_cut * s)
            }
        }
    }

    /// One-sided limit q(1-) at the support boundary: zero for the bump,
    /// the truncation remnant e^{-r_cut^2/2} for cut Gaussians.
    pub fn shape_boundary(&self) -> f64 {
        match self {
            BumpProfile::SmoothBump => 0.0,
            BumpProfile::GaussianTruncated { r_cut } => (-0.5 * r_cut * r_cut).exp(),
        }
    }

    /// Shape transform `q~(kappa) = int_{-1}^{1} q(s) e^{-i kappa s} ds`,
    /// real and even since q is real and even.
    pub fn shape_transform(&self, kappa: f64) -> f64 {
        let (xs, ws) = half_interval_rule();
        let kappa = kappa.abs();
        // One panel per ~30 radians of phase, plus extra panels for shapes
        // much narrower than their support, keeps the rule spectrally
        // accurate at any bandwidth used here.
        let sharpness = match self {
            BumpProfile::SmoothBump => 0,
            BumpProfile::GaussianTruncated { r_cut } => (r_cut / 3.0) as usize,
        };
        let panels = 1 + sharpness + (kappa / 30.0) as usize;
        let width = 1.0 / panels as f64;
        let mut terms = Vec::with_capacity(panels * xs.len());
        for p in 0..panels {
            let lo = p as f64 * width;
            for (x, w) in xs.iter().zip(ws) {
                let s = lo + width * x;
                terms.push(width * w * self.shape(s) * (kappa * s).cos());
            }
        }
        2.0 * pairwise_sum(&terms)
    }

    /// Integral of the shape over its support, `q~(0)`.
    pub fn mass(&self) -> f64 {
        self.shape_transform(0.0)
    }
}

/// 48-point Gauss-Legendre rule mapped to [0, 1], shared by all shape
/// transforms.
fn half_interval_rule() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (xs, ws) = RULE.get_or_init(|| {
        let (xs, ws) = gauss_legendre(48);
        (
            xs.iter().map(|x| 0.5 * (x + 1.0)).collect(),
            ws.iter().map(|w| 0.5 * w).collect(),
        )
    });
    (xs, ws)
}

/// Anything with an on-shell momentum amplitude `f^(omega, k)`. Implemented
/// by smearing functions, their Poincare transforms, and linear
/// combinations.
pub trait MomentumAmplitude: Sync {
    fn momentum_amplitude(&self, omega: f64, k: &[f64]) -> Complex64;
}

/// A separable smearing function `a * chi(t) * prod_d F_d(x_d)`, optionally
/// carrying one time derivative (`derivative_order = 1` stores `-d/dt` of
/// the product, which multiplies the transform by `i omega`).
///
/// The temporal shape is normalized to unit time integral, so in the thin-
/// slab limit the order-0 function smears the field over the spatial
/// profile and the order-1 function smears its conjugate momentum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmearingFunction {
    pub tile_index: usize,
    pub profile: BumpProfile,
    /// Slab center time.
    pub t0: f64,
    /// Temporal half-width.
    pub eps: f64,
    /// Spatial box center, length n.
    pub centers: Vec<f64>,
    /// Spatial box half-widths, length n.
    pub half_widths: Vec<f64>,
    pub amplitude: f64,
    /// 0 for `chi F`, 1 for `-d/dt (chi F)`.
    pub derivative_order: u8,
}

impl SmearingFunction {
    pub fn from_tile(tile: &Tile, profile: BumpProfile, spec: &SpacetimeSpec, derivative_order: u8) -> Self {
        SmearingFunction {
            tile_index: tile.index,
            profile,
            t0: spec.t0,
            eps: tile.temporal_half_width,
            centers: tile.spatial_center.clone(),
            half_widths: tile.spatial_half_width.clone(),
            amplitude: 1.0,
            derivative_order,
        }
    }

    /// Position-space value f(t, x).
    pub fn value(&self, t: f64, x: &[f64]) -> f64 {
        let mass = self.profile.mass();
        let st = (t - self.t0) / self.eps;
        let spatial: f64 = x
            .iter()
            .zip(self.centers.iter().zip(&self.half_widths))
            .map(|(xd, (c, w))| self.profile.shape((xd - c) / w))
            .product();
        match self.derivative_order {
            0 => self.amplitude * self.profile.shape(st) / (self.eps * mass) * spatial,
            _ => -self.amplitude * self.profile.shape_deriv(st) / (self.eps * self.eps * mass) * spatial,
        }
    }

    /// Transform of the normalized temporal shape, `chi~(omega)`.
    fn temporal_transform(&self, omega: f64) -> Complex64 {
        let phase = Complex64::from_polar(1.0, omega * self.t0);
        phase * (self.profile.shape_transform(omega * self.eps) / self.profile.mass())
    }

    /// Transform of the spatial shape along one axis, `F~_d(k)`.
    fn spatial_transform(&self, d: usize, k: f64) -> Complex64 {
        let w = self.half_widths[d];
        let phase = Complex64::from_polar(1.0, -k * self.centers[d]);
        phase * (w * self.profile.shape_transform(k * w))
    }

    /// Full transform `f^(omega, k)`. For derivative order 1 the temporal
    /// factor is `i omega chi~(omega)` minus the boundary term
    /// `chi(eps) e^{i omega t0} 2i sin(omega eps)` left by integration by
    /// parts; the boundary value vanishes identically for the bump family
    /// and is the truncation remnant (~q(1)) for cut Gaussians.
    pub fn momentum_transform(&self, omega: f64, k: &[f64]) -> Complex64 {
        let temporal = match self.derivative_order {
            0 => self.temporal_transform(omega),
            _ => {
                let edge = self.profile.shape_boundary() / (self.eps * self.profile.mass());
                self.temporal_transform(omega) * Complex64::new(0.0, omega)
                    - Complex64::from_polar(1.0, omega * self.t0)
                        * Complex64::new(0.0, 2.0 * (omega * self.eps).sin())
                        * edge
            }
        };
        let mut v = temporal * self.amplitude;
        for (d, kd) in k.iter().enumerate() {
            v *= self.spatial_transform(d, *kd);
        }
        v
    }

    /// Mean of the spatial profile, `prod_d F~_d(0)` (nonzero for these
    /// even profiles; relevant to the 1+1D infrared guard).
    pub fn spatial_mean(&self) -> f64 {
        self.amplitude
            * self
                .half_widths
                .iter()
                .map(|w| w * self.profile.mass())
                .product::<f64>()
    }
}

impl MomentumAmplitude for SmearingFunction {
    fn momentum_amplitude(&self, omega: f64, k: &[f64]) -> Complex64 {
        self.momentum_transform(omega, k)
    }
}

/// A real linear combination of smearing functions; its transform is the
/// weighted sum of the member transforms.
pub struct LinearCombination<'a> {
    pub terms: Vec<(f64, &'a SmearingFunction)>,
}

impl MomentumAmplitude for LinearCombination<'_> {
    fn momentum_amplitude(&self, omega: f64, k: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, f)| f.momentum_transform(omega, k) * *c)
            .sum()
    }
}

/// A normalized local-mode pair (f1, f2) on a common tile with
/// `E(f1, f2) = 1` at the working quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalModePair {
    pub f1: SmearingFunction,
    pub f2: SmearingFunction,
    /// Rescale applied to the raw `-d/dt` function: f2 = f2_raw / c with
    /// c = E(f1, f2_raw). c is negative for this construction, so the
    /// division fixes sign and magnitude at once.
    pub normalization: f64,
    /// Accumulated rescaling parameter; lambda = 1 as constructed.
    pub lambda: f64,
}

/// Construct the local mode of a tile: f1 = chi F (order 0) and
/// f2 = -d/dt(chi F) / c with c = E(f1, f2_raw), so that E(f1, f2) = 1
/// exactly at the given grid.
pub fn make_local_mode(
    tile: &Tile,
    profile: BumpProfile,
    spec: &SpacetimeSpec,
    grid: &MomentumGrid,
) -> Result<LocalModePair> {
    let min_w = tile
        .spatial_half_width
        .iter()
        .fold(f64::INFINITY, |a, w| a.min(*w));
    if grid.k_max < 10.0 / min_w {
        return Err(Error::Config(format!(
            "grid bandwidth k_max = {} does not resolve the profile: need >= {}",
            grid.k_max,
            10.0 / min_w
        )));
    }
    let f1 = SmearingFunction::from_tile(tile, profile, spec, 0);
    let f2_raw = SmearingFunction::from_tile(tile, profile, spec, 1);
    let c = causal_smeared(&f1, &f2_raw, grid, spec)?;
    if c.abs() < 1e-12 {
        return Err(Error::DegenerateMode(c.abs()));
    }
    let mut f2 = f2_raw;
    f2.amplitude /= c;
    Ok(LocalModePair { f1, f2, normalization: 1.0 / c, lambda: 1.0 })
}

/// Rescale a pair (f1, f2) -> (lambda f1, f2 / lambda). E(f1, f2) is
/// bilinear, so the normalization is untouched.
pub fn rescale_mode(pair: &LocalModePair, lambda: f64) -> Result<LocalModePair> {
    if !(lambda > 0.0) {
        return Err(Error::Config(format!("rescale parameter must be > 0, got {lambda}")));
    }
    let mut out = pair.clone();
    out.f1.amplitude *= lambda;
    out.f2.amplitude /= lambda;
    out.lambda = pair.lambda * lambda;
    Ok(out)
}
