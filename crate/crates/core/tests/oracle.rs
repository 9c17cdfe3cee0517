mod common;

use common::{fd_lowest, fd_splitting, fd_splitting_for};
use tunnelsplit::exact::{exact_splitting_for, ExactOptions};
use tunnelsplit::models::{MeanField, TwoGaussianModel};
use tunnelsplit::numerics::{eigenvalues_symmetric, SymmetricMatrix};

fn dense_lowest<F: Fn(f64) -> f64>(v: &F, len: f64, m: usize, odd: bool) -> f64 {
    let h = len / m as f64;
    let (xs, first): (Vec<f64>, f64) = if odd {
        ((1..m).map(|i| i as f64 * h).collect(), 2.0)
    } else {
        ((0..m).map(|i| (i as f64 + 0.5) * h).collect(), 1.0)
    };
    let n = xs.len();
    let mat = SymmetricMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            let kin = if i == 0 { first } else { 2.0 };
            kin / (h * h) + v(xs[i])
        } else if j == i + 1 {
            -1.0 / (h * h)
        } else {
            0.0
        }
    });
    eigenvalues_symmetric(&mat).unwrap()[0]
}

#[test]
fn sturm_count_matches_dense_eigensolver() {
    let m = TwoGaussianModel::reduced(0.35, 1.0).unwrap();
    let v = |x: f64| m.quantum_potential(x);
    for odd in [false, true] {
        let a = fd_lowest(&v, 4.0, 300, odd);
        let b = dense_lowest(&v, 4.0, 300, odd);
        assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "odd={odd}: {a} vs {b}");
    }
}

#[test]
fn harmonic_levels() {
    // -d² + x² has levels 1, 3, 5, ...
    let v = |x: f64| x * x;
    let e0 = fd_lowest(&v, 8.0, 20_000, false);
    let e1 = fd_lowest(&v, 8.0, 20_000, true);
    assert!((e0 - 1.0).abs() < 1e-6, "{e0}");
    assert!((e1 - 3.0).abs() < 1e-6, "{e1}");
    assert!((fd_splitting(&v, 8.0, 20_000) - 2.0).abs() < 1e-9);
}

#[test]
fn ground_level_of_shifted_hamiltonian_is_zero() {
    let m = TwoGaussianModel::reduced(0.3, 1.5).unwrap();
    let e0 = fd_lowest(&|x| m.quantum_potential(x), 4.0, 50_000, false);
    assert!(e0.abs() < 1e-6, "{e0}");
}

#[test]
fn hermite_basis_agrees_with_grid_on_simple_model() {
    let m = TwoGaussianModel::for_mean_field_barrier(3.0).unwrap();
    let exact = exact_splitting_for(&m, &ExactOptions::default()).unwrap();
    let fd = fd_splitting_for(&m);
    assert!((exact.splitting / fd - 1.0).abs() < 1e-6, "{} vs {fd}", exact.splitting);
}
