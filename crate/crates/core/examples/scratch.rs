use num_complex::Complex64;
use wignerfield::geometry::{SpacetimeSpec, Tile};
use wignerfield::numerics::gauss_legendre;
use wignerfield::smearing::{BumpProfile, SmearingFunction};

fn brute(f: &SmearingFunction, omega: f64, k: f64, n: usize) -> Complex64 {
    let (xs, ws) = gauss_legendre(n);
    let mut total = Complex64::new(0.0, 0.0);
    for (ti, wi) in xs.iter().zip(&ws) {
        let t = f.t0 + f.eps * ti;
        for (xj, wj) in xs.iter().zip(&ws) {
            let x = f.centers[0] + f.half_widths[0] * xj;
            let phase = Complex64::from_polar(1.0, omega * t - k * x);
            total += wi * wj * f.eps * f.half_widths[0] * f.value(t, &[x]) * phase;
        }
    }
    total
}

fn main() {
    let spec = SpacetimeSpec::new(1, 1.0, 1.0, 0.0).unwrap();
    let t = Tile { index: 0, spatial_center: vec![0.0], spatial_half_width: vec![1.8],
        temporal_half_width: 0.05, profile_id: "gaussian_truncated".into() };
    let prof = BumpProfile::GaussianTruncated { r_cut: 6.0 };
    let f = SmearingFunction::from_tile(&t, prof, &spec, 1);
    println!("closed: {:?}", f.momentum_transform(2.0, &[1.0]));
    for n in [80, 160, 320, 480] {
        println!("brute n={n}: {:?}", brute(&f, 2.0, 1.0, n));
    }
}
