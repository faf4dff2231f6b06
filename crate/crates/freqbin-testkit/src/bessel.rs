//! Bessel functions of the first kind via the ascending power series.
//!
//! Deliberately primitive: the production code extracts sideband weights
//! from an FFT, so the reference values here must come from a route that
//! shares nothing with it. The series
//!
//! J_n(x) = Σ_m (−1)^m / (m!·(m+n)!) · (x/2)^{2m+n}
//!
//! converges fast for the modulation indices in play (|x| ≲ 10) and is
//! accurate to ~1e−15 relative there, comfortably below the 1e−10
//! comparison tolerances.

/// J_n(x) for any integer order.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    if n < 0 {
        // J_{−n}(x) = (−1)^n J_n(x)
        let v = bessel_j(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = bessel_j(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    let n = n as u32;
    let half = 0.5 * x;
    // First term: (x/2)^n / n!
    let mut term = 1.0;
    for m in 1..=n {
        term *= half / m as f64;
    }
    let mut sum = term;
    let mut m = 1.0;
    while term != 0.0 {
        term *= -(half * half) / (m * (m + n as f64));
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
        m += 1.0;
        if m > 400.0 {
            break;
        }
    }
    sum
}
