//! Reference EOM scattering coefficients by two FFT-free routes.
//!
//! 1. **Jacobi–Anger convolution**: e^{i·m·sin(kx+θ)} expands into a
//!    Bessel ladder J_l(m)e^{ilθ} at offsets l·k; a multi-tone drive is
//!    the convolution of its tones' ladders. Fully analytic given the
//!    series in [`crate::bessel`].
//! 2. **Gauss–Legendre quadrature** of the defining integral
//!    d_j = (1/2π)∫₀^{2π} e^{iφ(x)} e^{−ijx} dx, composite over panels.
//!
//! Route 1 is the primary oracle (it is the textbook sideband formula);
//! route 2 is a sanity check that even the oracle's algebra is right.

use std::collections::BTreeMap;

use freqbin::RfDrive;
use num_complex::Complex64;

use crate::bessel::bessel_j;

/// Bessel orders kept per tone; J_l(m) for l ≥ 60 is far below 1e−30 for
/// every amplitude the bounds allow (m ≤ 10).
const LADDER_ORDERS: i32 = 60;

/// Coefficients d_j for j = −max_order..=max_order by Jacobi–Anger
/// convolution, index j + max_order.
pub fn jacobi_anger_coefficients(drive: &RfDrive, max_order: i32) -> Vec<Complex64> {
    // Start from the identity series (a drive with no tones).
    let mut series: BTreeMap<i64, Complex64> = BTreeMap::new();
    series.insert(0, Complex64::new(1.0, 0.0));
    for tone in &drive.tones {
        let mut next: BTreeMap<i64, Complex64> = BTreeMap::new();
        for l in -LADDER_ORDERS..=LADDER_ORDERS {
            let weight = bessel_j(l, tone.amp_rad);
            if weight == 0.0 {
                continue;
            }
            let rung = weight
                * Complex64::from_polar(1.0, l as f64 * tone.phase_rad);
            let offset = l as i64 * tone.k as i64;
            for (&j, &c) in &series {
                *next.entry(j + offset).or_insert(Complex64::new(0.0, 0.0)) += rung * c;
            }
        }
        series = next;
    }
    ((-max_order as i64)..=(max_order as i64))
        .map(|j| series.get(&j).copied().unwrap_or(Complex64::new(0.0, 0.0)))
        .collect()
}

/// 16-point Gauss–Legendre abscissae/weights on [−1, 1] (positive half;
/// the rule is symmetric).
const GL_NODES: [(f64, f64); 8] = [
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
    (0.458_016_777_657_227_4, 0.169_156_519_395_002_5),
    (0.617_876_244_402_643_7, 0.149_595_988_816_576_7),
    (0.755_404_408_355_003_0, 0.124_628_971_255_533_9),
    (0.865_631_202_387_831_7, 0.095_158_511_682_492_8),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_9),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_1),
];

const PANELS: usize = 32;

/// One coefficient d_j by composite Gauss–Legendre quadrature.
pub fn quadrature_coefficient(drive: &RfDrive, j: i32) -> Complex64 {
    let tau = std::f64::consts::TAU;
    let width = tau / PANELS as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for panel in 0..PANELS {
        let center = (panel as f64 + 0.5) * width;
        for &(node, weight) in &GL_NODES {
            for sign in [-1.0, 1.0] {
                let x = center + sign * node * 0.5 * width;
                let f = Complex64::from_polar(1.0, drive.phase_at(x) - j as f64 * x);
                total += weight * 0.5 * width * f;
            }
        }
    }
    total / tau
}
