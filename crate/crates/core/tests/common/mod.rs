//! Shared helpers for the integration tests, including an independent
//! finite-difference eigensolver used as an oracle for the Hermite-basis
//! splitting.
#![allow(dead_code)]

use tunnelsplit::models::MeanField;

/// Lowest eigenvalue of `-d² + v` on `[0, len]` for one parity, by Sturm
/// counting on a uniform grid of `m` intervals.
///
/// The count uses the pivot recurrence of the scaled matrix written for
/// `u_i = q_i - 1`, which keeps `h² (v - lambda)` from being rounded away
/// against the diagonal `2`.
pub fn fd_lowest<F: Fn(f64) -> f64>(v: &F, len: f64, m: usize, odd: bool) -> f64 {
    let h = len / m as f64;
    let h2 = h * h;
    // Odd states vanish at 0 (vertex grid). Even states use a cell-centred
    // grid with a mirrored ghost point, so the first pivot is 1 + h² w.
    let (xs, first_shift): (Vec<f64>, f64) = if odd {
        ((1..m).map(|i| i as f64 * h).collect(), 1.0)
    } else {
        ((0..m).map(|i| (i as f64 + 0.5) * h).collect(), 0.0)
    };
    let vs: Vec<f64> = xs.iter().map(|&x| v(x)).collect();
    let count_below = |lambda: f64| -> usize {
        let mut n = 0;
        let mut u = first_shift + h2 * (vs[0] - lambda);
        if u < -1.0 {
            n += 1;
        }
        for &vi in &vs[1..] {
            u = h2 * (vi - lambda) + u / (1.0 + u);
            if u < -1.0 {
                n += 1;
            }
        }
        n
    };
    let mut lo = vs.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut hi = lo + 1.0;
    while count_below(hi) == 0 {
        hi = lo + 2.0 * (hi - lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Splitting `E1 - E0` from the grids with `m` and `2m` intervals, combined
/// by Richardson extrapolation of the second-order error.
pub fn fd_splitting<F: Fn(f64) -> f64>(v: &F, len: f64, m: usize) -> f64 {
    let s = |m| fd_lowest(v, len, m, true) - fd_lowest(v, len, m, false);
    let coarse = s(m);
    let fine = s(2 * m);
    (4.0 * fine - coarse) / 3.0
}

/// Half-line length used for a model: at least 4 x0 and the model support.
pub fn fd_length<M: MeanField>(model: &M) -> f64 {
    model.support().1.max(4.0)
}

pub fn fd_splitting_for<M: MeanField>(model: &M) -> f64 {
    fd_splitting(&|x| model.quantum_potential(x), fd_length(model), 50_000)
}

/// Five-point second derivative.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

/// Least-squares line `y = a + b x`; returns `(slope, r_squared)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    (sxy / sxx, sxy * sxy / (sxx * syy))
}

pub fn report(criterion: u32, pass: bool, detail: impl std::fmt::Display) {
    println!("criterion {criterion}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
}
