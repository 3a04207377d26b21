//! Tilings of a thickened Cauchy surface in Minkowski spacetime.
//!
//! A tile is an axis-aligned spatial box crossed with a short time interval
//! `[t0 - eps, t0 + eps]`. A layout is valid when every pair of tiles is
//! spacelike separated, which for sets confined to the slab reduces to a
//! gap condition between the spatial boxes. The layout carries the two
//! covariant scales of the discretization: `l_uv`, the side length of the
//! smallest tile volume, and `l_ir = N^(1/n) * l_uv`, the extent the N
//! tiles can cover.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Background spacetime parameters: flat metric, `n` spatial dimensions.
///
/// The curvature coupling `xi` is carried for interface completeness but
/// must be zero: only the flat Klein-Gordon operator is implemented.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeSpec {
    /// Spatial dimension, 1 or 3.
    pub n: usize,
    /// Field mass (inverse length), strictly positive.
    pub mass: f64,
    /// Curvature coupling, stored but required to be 0.
    pub curvature_coupling: f64,
    /// Planck constant; scales every two-point function.
    pub hbar: f64,
    /// Center time of the Cauchy slab.
    pub t0: f64,
}

impl SpacetimeSpec {
    pub fn new(n: usize, mass: f64, hbar: f64, t0: f64) -> Result<Self> {
        if n != 1 && n != 3 {
            return Err(Error::Config(format!("spatial dimension must be 1 or 3, got {n}")));
        }
        if !(mass > 0.0) {
            return Err(Error::Config(format!("mass must be > 0, got {mass}")));
        }
        if !(hbar > 0.0) {
            return Err(Error::Config(format!("hbar must be > 0, got {hbar}")));
        }
        Ok(SpacetimeSpec { n, mass, curvature_coupling: 0.0, hbar, t0 })
    }

    /// Dispersion relation omega(k) = sqrt(k.k + m^2).
    pub fn omega(&self, k: &[f64]) -> f64 {
        let k2: f64 = k.iter().map(|x| x * x).sum();
        (k2 + self.mass * self.mass).sqrt()
    }
}

/// One tile: the common support of a local mode's two smearing functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tile {
    pub index: usize,
    /// Center of the spatial box (length n).
    pub spatial_center: Vec<f64>,
    /// Half-width of the box along each axis (length n, all > 0).
    pub spatial_half_width: Vec<f64>,
    /// Temporal half-width; the support satisfies |t - t0| <= eps.
    pub temporal_half_width: f64,
    /// Name of the smearing profile used on this tile.
    pub profile_id: String,
}

impl Tile {
    /// Spatial volume of the support box.
    pub fn volume(&self) -> f64 {
        self.spatial_half_width.iter().map(|w| 2.0 * w).product()
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.spatial_center.len() != n || self.spatial_half_width.len() != n {
            return Err(Error::Config(format!(
                "tile {}: center/half_width length must equal spatial dimension {n}",
                self.index
            )));
        }
        if self.spatial_half_width.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::Config(format!("tile {}: half-widths must be > 0", self.index)));
        }
        if !(self.temporal_half_width > 0.0) {
            return Err(Error::Config(format!("tile {}: temporal half-width must be > 0", self.index)));
        }
        Ok(())
    }
}

/// Minimum Euclidean distance between the spatial boxes of two tiles.
pub fn spatial_gap(a: &Tile, b: &Tile) -> f64 {
    let mut gap2 = 0.0;
    for d in 0..a.spatial_center.len() {
        let g = (a.spatial_center[d] - b.spatial_center[d]).abs()
            - (a.spatial_half_width[d] + b.spatial_half_width[d]);
        if g > 0.0 {
            gap2 += g * g;
        }
    }
    gap2.sqrt()
}

/// Spacelike-separation predicate for two tiles at the common slab time.
///
/// Two sets confined to |t - t0| <= eps_a and eps_b are spacelike separated
/// exactly when the spatial gap between them strictly exceeds eps_a + eps_b
/// (no null ray can bridge the gap within the available time span).
pub fn check_spacelike(a: &Tile, b: &Tile) -> bool {
    spatial_gap(a, b) > a.temporal_half_width + b.temporal_half_width
}

/// A validated set of tiles with its covariant scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingLayout {
    pub tiles: Vec<Tile>,
    /// Corridor width used by the regular-grid builder (informational for
    /// user-supplied tile lists).
    pub corridor: f64,
    pub l_uv: f64,
    pub l_ir: f64,
}

impl TilingLayout {
    /// Number of tiles (= number of local modes).
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Validate an arbitrary tile list: shapes, and pairwise spacelike
    /// separation. Returns the offending pair on failure.
    pub fn validate(tiles: &[Tile], spec: &SpacetimeSpec) -> Result<()> {
        if tiles.is_empty() {
            return Err(Error::Config("layout contains no tiles".into()));
        }
        for t in tiles {
            t.validate(spec.n)?;
        }
        for i in 0..tiles.len() {
            for j in (i + 1)..tiles.len() {
                if !check_spacelike(&tiles[i], &tiles[j]) {
                    return Err(Error::CausalOverlap(format!(
                        "tiles {} and {} are not spacelike separated (gap {:.6} <= {:.6})",
                        tiles[i].index,
                        tiles[j].index,
                        spatial_gap(&tiles[i], &tiles[j]),
                        tiles[i].temporal_half_width + tiles[j].temporal_half_width,
                    )));
                }
            }
        }
        Ok(())
    }

    /// Build a layout from a user-supplied tile list, validating it and
    /// computing the scales.
    pub fn from_tiles(tiles: Vec<Tile>, corridor: f64, spec: &SpacetimeSpec) -> Result<Self> {
        Self::validate(&tiles, spec)?;
        let (l_uv, l_ir) = scales(&tiles, spec.n)?;
        Ok(TilingLayout { tiles, corridor, l_uv, l_ir })
    }
}

fn scales(tiles: &[Tile], n: usize) -> Result<(f64, f64)> {
    let v_min = tiles
        .iter()
        .map(Tile::volume)
        .fold(f64::INFINITY, f64::min);
    if !v_min.is_finite() {
        return Err(Error::Config("layout contains no tiles".into()));
    }
    let l_uv = v_min.powf(1.0 / n as f64);
    let l_ir = (tiles.len() as f64).powf(1.0 / n as f64) * l_uv;
    Ok((l_uv, l_ir))
}

/// Covariant UV/IR scales of a layout: `l_uv = V_min^(1/n)` and
/// `l_ir = N^(1/n) * l_uv`.
pub fn covariant_scales(layout: &TilingLayout) -> Result<(f64, f64)> {
    scales(&layout.tiles, layout.tiles.first().map_or(1, |t| t.spatial_center.len()))
}

/// Build a regular-grid tiling: `tiles_per_axis^n` boxes of side `l_uv`
/// centered on a grid with spacing `l_uv + corridor`, all at the slab time.
///
/// Requires `corridor > 2 eps` so that adjacent tiles (gap = corridor) are
/// strictly spacelike separated.
pub fn build_tiling(
    spec: &SpacetimeSpec,
    tiles_per_axis: usize,
    l_uv: f64,
    eps: f64,
    corridor: f64,
    profile_id: &str,
) -> Result<TilingLayout> {
    if tiles_per_axis < 1 {
        return Err(Error::Config("tiles_per_axis must be >= 1".into()));
    }
    if !(l_uv > 0.0) {
        return Err(Error::Config(format!("l_uv must be > 0, got {l_uv}")));
    }
    if !(eps > 0.0) {
        return Err(Error::Config(format!("epsilon must be > 0, got {eps}")));
    }
    if tiles_per_axis > 1 && corridor <= 2.0 * eps {
        return Err(Error::CausalOverlap(format!(
            "corridor {corridor} must exceed 2*epsilon = {}",
            2.0 * eps
        )));
    }
    let n = spec.n;
    let spacing = l_uv + corridor;
    let offset = (tiles_per_axis as f64 - 1.0) / 2.0;
    let count = tiles_per_axis.pow(n as u32);
    let mut tiles = Vec::with_capacity(count);
    for flat in 0..count {
        let mut rem = flat;
        let mut center = vec![0.0; n];
        for d in (0..n).rev() {
            center[d] = (rem % tiles_per_axis) as f64;
            rem /= tiles_per_axis;
        }
        for c in center.iter_mut() {
            *c = (*c - offset) * spacing;
        }
        tiles.push(Tile {
            index: flat,
            spatial_center: center,
            spatial_half_width: vec![0.5 * l_uv; n],
            temporal_half_width: eps,
            profile_id: profile_id.to_string(),
        });
    }
    TilingLayout::from_tiles(tiles, corridor, spec)
}
