use wignerfield::geometry::{SpacetimeSpec, Tile};
use wignerfield::propagator::*;
use wignerfield::smearing::{BumpProfile, SmearingFunction, make_local_mode};

fn main() {
    let spec = SpacetimeSpec::new(1, 1.0, 1.0, 0.0).unwrap();
    let tile = |i: usize, c: f64| Tile {
        index: i,
        spatial_center: vec![c],
        spatial_half_width: vec![0.5],
        temporal_half_width: 0.05,
        profile_id: "smooth_bump".into(),
    };
    // adequacy scan: change on doubling
    for (km, p) in [(40.0, 32), (48.0, 38), (56.0, 44), (64.0, 50)] {
        let g0 = MomentumGrid::new(1, km, p, 64).unwrap();
        let g1 = g0.refined(2).unwrap();
        let f = SmearingFunction::from_tile(&tile(0, 0.0), BumpProfile::SmoothBump, &spec, 0);
        let d = SmearingFunction::from_tile(&tile(0, 0.0), BumpProfile::SmoothBump, &spec, 1);
        let w0 = wightman_smeared(&f, &f, &g0, &spec).unwrap().value.re;
        let w1 = wightman_smeared(&f, &f, &g1, &spec).unwrap().value.re;
        let wd0 = wightman_smeared(&d, &d, &g0, &spec).unwrap().value.re;
        let wd1 = wightman_smeared(&d, &d, &g1, &spec).unwrap().value.re;
        println!("km={km}: rel dW11 = {:.3e}  rel dW22raw = {:.3e}", ((w0-w1)/w1).abs(), ((wd0-wd1)/wd1).abs());
    }
    // normalization constant + normalized cross-mode E at reference
    let gref = MomentumGrid::new(1, 40.0, 32, 64).unwrap();
    let pair0 = make_local_mode(&tile(0, 0.0), BumpProfile::SmoothBump, &spec, &gref).unwrap();
    let pair1 = make_local_mode(&tile(1, 1.3), BumpProfile::SmoothBump, &spec, &gref).unwrap();
    println!("normalization 1/c = {:.17e}  (c = {:.17e})", pair0.normalization, 1.0/pair0.normalization);
    let e_cross = causal_smeared(&pair0.f1, &pair1.f2, &gref, &spec).unwrap();
    let e_check = causal_smeared(&pair0.f1, &pair0.f2, &gref, &spec).unwrap();
    println!("E(f1_0, f2_0) = {:.17}  E(f1_0, f2_1) = {:+.6e}", e_check, e_cross);
    let gd = gref.refined(2).unwrap();
    let p0d = make_local_mode(&tile(0, 0.0), BumpProfile::SmoothBump, &spec, &gd).unwrap();
    let p1d = make_local_mode(&tile(1, 1.3), BumpProfile::SmoothBump, &spec, &gd).unwrap();
    let e_cross_d = causal_smeared(&p0d.f1, &p1d.f2, &gd, &spec).unwrap();
    println!("doubled: E cross = {:+.6e}  ratio = {:.1}", e_cross_d, (e_cross/e_cross_d).abs());
    // W22 of the normalized f2 (for sigma scale intuition)
    let w22 = wightman_smeared(&pair0.f2, &pair0.f2, &gref, &spec).unwrap().value.re;
    let w11 = wightman_smeared(&pair0.f1, &pair0.f1, &gref, &spec).unwrap().value.re;
    let w12 = wightman_smeared(&pair0.f1, &pair0.f2, &gref, &spec).unwrap().value;
    println!("Sigma_xx = {:.8e}  Sigma_pp = {:.8e}  W12 = {:.3e}{:+.3e}i  nu = {:.8}", w11, w22, w12.re, w12.im, (w11*w22 - w12.re*w12.re).sqrt());
}
