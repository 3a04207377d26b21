//! Poincare transformations of smearing functions and invariance checks.
//!
//! A transformed function is never resampled in position space: its
//! momentum amplitude is `f'^(K) = e^{i K.a} f^(Lambda^{-1} K)` evaluated
//! lazily from the closed form, with `K.a = omega a^0 - k.a` in the
//! (+,-,...,-) signature. The vacuum two-point function is built from the
//! Lorentz-invariant on-shell measure, so vacuum covariance matrices are
//! invariant up to quadrature truncation; a thermal state singles out a
//! rest frame and its covariance is not boost-invariant.

use crate::error::{Error, Result};
use crate::modes::{covariance_from_table, LocalModeSet};
use crate::propagator::{FieldState, MomentumGrid, SmearedTable};
use crate::smearing::{MomentumAmplitude, SmearingFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Axis-angle rotation (spatial dimension 3 only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisAngle {
    pub axis: Vec<f64>,
    pub angle: f64,
}

/// A proper orthochronous Poincare transformation: rotation, then boost,
/// then translation. The parametrization by rapidity/axis/angle cannot
/// reach improper or antichronous components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoincareElement {
    /// (a^0, a^1, ..., a^n).
    pub translation: Vec<f64>,
    /// Boost rapidity; zero for none.
    pub rapidity: f64,
    /// Boost direction (unit vector, length n). For n = 1 the single
    /// component must be +-1.
    pub boost_axis: Vec<f64>,
    /// Optional rotation, n = 3 only.
    pub rotation: Option<AxisAngle>,
}

impl PoincareElement {
    pub fn identity(n: usize) -> Self {
        let mut axis = vec![0.0; n];
        axis[0] = 1.0;
        PoincareElement { translation: vec![0.0; n + 1], rapidity: 0.0, boost_axis: axis, rotation: None }
    }

    pub fn boost(n: usize, rapidity: f64) -> Self {
        PoincareElement { rapidity, ..Self::identity(n) }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.translation.len() != n + 1 {
            return Err(Error::Config(format!(
                "translation must have {} components for n = {n}",
                n + 1
            )));
        }
        if self.boost_axis.len() != n {
            return Err(Error::Config(format!("boost axis must have {n} components")));
        }
        let norm: f64 = self.boost_axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if self.rapidity != 0.0 && (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Config("boost axis must be a unit vector".into()));
        }
        if self.rotation.is_some() && n != 3 {
            return Err(Error::Config("rotations exist only in three spatial dimensions".into()));
        }
        if let Some(rot) = &self.rotation {
            let rn: f64 = rot.axis.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (rn - 1.0).abs() > 1e-12 {
                return Err(Error::Config("rotation axis must be a unit vector".into()));
            }
        }
        Ok(())
    }

    /// Apply the inverse Lorentz part to an (omega, k) pair:
    /// `Lambda^{-1} = R^{-1} B^{-1}` for `Lambda = B R`.
    pub fn inverse_momentum(&self, omega: f64, k: &[f64]) -> (f64, Vec<f64>) {
        let (om_b, k_b) = boost_momentum(omega, k, -self.rapidity, &self.boost_axis);
        match &self.rotation {
            None => (om_b, k_b),
            Some(rot) => (om_b, rotate(&k_b, &rot.axis, -rot.angle)),
        }
    }

    /// Minkowski product `K.a = omega a^0 - k.a_spatial`.
    pub fn phase(&self, omega: f64, k: &[f64]) -> f64 {
        let mut p = omega * self.translation[0];
        for (kd, ad) in k.iter().zip(self.translation.iter().skip(1)) {
            p -= kd * ad;
        }
        p
    }
}

fn boost_momentum(omega: f64, k: &[f64], rapidity: f64, axis: &[f64]) -> (f64, Vec<f64>) {
    if rapidity == 0.0 {
        return (omega, k.to_vec());
    }
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    let k_par: f64 = k.iter().zip(axis).map(|(kd, nd)| kd * nd).sum();
    let om_new = ch * omega + sh * k_par;
    let k_new: Vec<f64> = k
        .iter()
        .zip(axis)
        .map(|(kd, nd)| kd + nd * ((ch - 1.0) * k_par + sh * omega))
        .collect();
    (om_new, k_new)
}

/// Rodrigues rotation of a 3-vector about a unit axis.
fn rotate(k: &[f64], axis: &[f64], angle: f64) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    let dot: f64 = k.iter().zip(axis).map(|(a, b)| a * b).sum();
    let cross = [
        axis[1] * k[2] - axis[2] * k[1],
        axis[2] * k[0] - axis[0] * k[2],
        axis[0] * k[1] - axis[1] * k[0],
    ];
    (0..3)
        .map(|i| k[i] * c + cross[i] * s + axis[i] * dot * (1.0 - c))
        .collect()
}

/// A smearing function carried along a Poincare transformation; evaluated
/// in momentum space only.
pub struct TransformedSmearing<'a> {
    pub inner: &'a SmearingFunction,
    pub element: &'a PoincareElement,
}

impl MomentumAmplitude for TransformedSmearing<'_> {
    fn momentum_amplitude(&self, omega: f64, k: &[f64]) -> Complex64 {
        let (om_i, k_i) = self.element.inverse_momentum(omega, k);
        let phase = Complex64::from_polar(1.0, self.element.phase(omega, k));
        phase * self.inner.momentum_transform(om_i, &k_i)
    }
}

/// Transform a smearing function (lazy momentum-space pushforward).
pub fn transform_smearing<'a>(
    f: &'a SmearingFunction,
    element: &'a PoincareElement,
) -> TransformedSmearing<'a> {
    TransformedSmearing { inner: f, element }
}

/// Recompute the full covariance matrix with every smearing function
/// transformed and return the scale-free residual
/// `max|Sigma' - Sigma| / max|Sigma|`.
///
/// Both matrices are evaluated on a common grid whose bandwidth is
/// inflated by e^{|rapidity|}, so the boosted integrand keeps the same
/// effective support as the unboosted one and the residual measures
/// genuine non-invariance plus quadrature truncation, not bandwidth
/// clipping.
pub fn invariance_check(
    set: &LocalModeSet,
    element: &PoincareElement,
    state: &FieldState,
    grid: &MomentumGrid,
) -> Result<f64> {
    element.validate(set.spec.n)?;
    match state {
        FieldState::Vacuum | FieldState::Thermal { .. } => {}
        _ => {
            return Err(Error::Config(
                "invariance checks cover vacuum and thermal states only".into(),
            ))
        }
    }
    let inflation = element.rapidity.abs().exp();
    let work_grid = if inflation > 1.0 {
        let scale = inflation.ceil() as usize;
        MomentumGrid::new(
            grid.n,
            grid.k_max * inflation,
            grid.panels * scale,
            grid.nodes_per_panel,
        )?
    } else {
        grid.clone()
    };

    let funcs = set.flattened();
    let transformed: Vec<TransformedSmearing> = funcs
        .iter()
        .map(|f| transform_smearing(f, element))
        .collect();
    let mut amps: Vec<&dyn MomentumAmplitude> = Vec::with_capacity(2 * funcs.len());
    for f in &funcs {
        amps.push(*f);
    }
    for t in &transformed {
        amps.push(t);
    }
    let table = SmearedTable::build(&amps, &work_grid, &set.spec);
    let fingerprint = work_grid.fingerprint();
    let d = set.dim();
    let base = covariance_from_table(set, state, &table, &fingerprint)?;
    let moved = covariance_with_offset(set, state, &table, d, &fingerprint)?;
    let denom = base.sigma.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let num = (&moved.sigma - &base.sigma)
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(num / denom)
}

/// Covariance of the transformed block (indices offset..offset+2N) of a
/// combined table.
fn covariance_with_offset(
    set: &LocalModeSet,
    state: &FieldState,
    table: &SmearedTable,
    offset: usize,
    fingerprint: &str,
) -> Result<crate::modes::CovarianceMatrix> {
    use nalgebra::DMatrix;
    let d = set.dim();
    let mut sigma = DMatrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let w = match state {
                FieldState::Thermal { beta } => table.thermal(offset + a, offset + b, *beta),
                _ => table.wightman(offset + a, offset + b),
            };
            sigma[(a, b)] = w.re;
            sigma[(b, a)] = w.re;
        }
    }
    Ok(crate::modes::CovarianceMatrix {
        sigma,
        mean: nalgebra::DVector::zeros(d),
        state_tag: state.tag(),
        grid_fingerprint: fingerprint.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_tiling, SpacetimeSpec};
    use crate::modes::assemble_modes;
    use crate::numerics::pairwise_sum;
    use crate::smearing::BumpProfile;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec() -> SpacetimeSpec {
        SpacetimeSpec::new(1, 1.0, 1.0, 0.0).unwrap()
    }

    fn grid() -> MomentumGrid {
        MomentumGrid::new(1, 40.0, 32, 64).unwrap()
    }

    fn reference_set(modes: usize) -> LocalModeSet {
        let s = spec();
        let layout = build_tiling(&s, modes, 1.0, 0.05, 0.3, "smooth_bump").unwrap();
        assemble_modes(&layout, BumpProfile::SmoothBump, &s, &grid()).unwrap()
    }

    #[test]
    fn identity_element_is_exact() {
        let set = reference_set(1);
        let f = &set.pairs[0].f1;
        let id = PoincareElement::identity(1);
        let tf = transform_smearing(f, &id);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let k = [rng.gen_range(-20.0..20.0)];
            let om = spec().omega(&k);
            assert_eq!(tf.momentum_amplitude(om, &k), f.momentum_transform(om, &k));
        }
        let res = invariance_check(&set, &id, &FieldState::Vacuum, &grid()).unwrap();
        assert!(res <= 1e-12, "identity residual {res}");
    }

    #[test]
    fn time_translation_is_pure_phase() {
        let set = reference_set(1);
        let f = &set.pairs[0].f1;
        let mut el = PoincareElement::identity(1);
        el.translation[0] = 0.37;
        let tf = transform_smearing(f, &el);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let k = [rng.gen_range(-20.0..20.0)];
            let om = spec().omega(&k);
            let a = tf.momentum_amplitude(om, &k).norm();
            let b = f.momentum_transform(om, &k).norm();
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn boost_preserves_on_shell_norm() {
        // int dk |f'|^2 / 2 omega is the invariant one-particle norm.
        let set = reference_set(1);
        let f = &set.pairs[0].f1;
        let el = PoincareElement::boost(1, 0.5);
        let tf = transform_smearing(f, &el);
        let g = MomentumGrid::new(1, 80.0, 64, 64).unwrap();
        let amps: Vec<&dyn MomentumAmplitude> = vec![f, &tf];
        let table = SmearedTable::build(&amps, &g, &spec());
        let w_orig = table.wightman(0, 0).re;
        let w_boost = table.wightman(1, 1).re;
        assert!(
            ((w_orig - w_boost) / w_orig).abs() <= 1e-6,
            "boost changed the on-shell norm: {w_orig} vs {w_boost}"
        );
    }

    #[test]
    fn vacuum_invariant_thermal_not() {
        let set = reference_set(2);
        let mut el = PoincareElement::boost(1, 0.5);
        el.translation = vec![0.3, 0.7];
        let res_vac = invariance_check(&set, &el, &FieldState::Vacuum, &grid()).unwrap();
        assert!(res_vac <= 1e-4, "vacuum residual {res_vac}");
        let res_thermal =
            invariance_check(&set, &el, &FieldState::Thermal { beta: 1.0 }, &grid()).unwrap();
        assert!(res_thermal >= 1e-2, "thermal residual {res_thermal}");
    }

    #[test]
    fn spatial_translation_commutes_with_pipeline() {
        // Translating all tiles and applying the inverse translation as a
        // Poincare element lands back on the original covariance.
        let s = spec();
        let shift = 0.83;
        let layout0 = build_tiling(&s, 2, 1.0, 0.05, 0.3, "smooth_bump").unwrap();
        let mut tiles = layout0.tiles.clone();
        for t in tiles.iter_mut() {
            t.spatial_center[0] += shift;
        }
        let layout1 = crate::geometry::TilingLayout::from_tiles(tiles, 0.3, &s).unwrap();
        let set0 = assemble_modes(&layout0, BumpProfile::SmoothBump, &s, &grid()).unwrap();
        let set1 = assemble_modes(&layout1, BumpProfile::SmoothBump, &s, &grid()).unwrap();

        let mut el = PoincareElement::identity(1);
        el.translation = vec![0.0, -shift];
        let funcs1 = set1.flattened();
        let moved: Vec<TransformedSmearing> =
            funcs1.iter().map(|f| transform_smearing(f, &el)).collect();
        let funcs0 = set0.flattened();
        let mut amps: Vec<&dyn MomentumAmplitude> = Vec::new();
        for f in &funcs0 {
            amps.push(*f);
        }
        for m in &moved {
            amps.push(m);
        }
        let table = SmearedTable::build(&amps, &grid(), &s);
        let d = set0.dim();
        let mut worst = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                let w0 = table.wightman(a, b);
                let w1 = table.wightman(d + a, d + b);
                worst = worst.max((w0 - w1).norm());
            }
        }
        assert!(worst <= 1e-12, "translation residual {worst}");
    }

    #[test]
    fn rotation_requires_three_dimensions() {
        let mut el = PoincareElement::identity(1);
        el.rotation = Some(AxisAngle { axis: vec![1.0], angle: 0.3 });
        assert!(el.validate(1).is_err());
    }

    #[test]
    fn boost_residual_shrinks_under_refinement() {
        let set = reference_set(1);
        let mut el = PoincareElement::boost(1, 0.5);
        el.translation = vec![0.3, 0.7];
        let r0 = invariance_check(&set, &el, &FieldState::Vacuum, &grid()).unwrap();
        let r1 = invariance_check(&set, &el, &FieldState::Vacuum, &grid().refined(2).unwrap()).unwrap();
        assert!(r1 * 5.0 <= r0, "no shrink: {r0} -> {r1}");
    }

    #[test]
    fn rodrigues_rotation_preserves_norms() {
        let axis = {
            let v = [0.3f64, -0.5, 0.81];
            let n = pairwise_sum(&v.iter().map(|x| x * x).collect::<Vec<_>>()).sqrt();
            v.iter().map(|x| x / n).collect::<Vec<_>>()
        };
        let k = vec![1.0, 2.0, -0.5];
        let r = rotate(&k, &axis, 1.234);
        let n0: f64 = k.iter().map(|x| x * x).sum();
        let n1: f64 = r.iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(n0, n1, epsilon = 1e-12);
        let back = rotate(&r, &axis, -1.234);
        for (a, b) in k.iter().zip(&back) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}
