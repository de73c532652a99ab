//! Closed-form eigen-decomposition of 3×3 Hermitian matrices.
//!
//! Eigenvalues come from the trigonometric solution of the depressed
//! characteristic cubic, followed by one Newton step per root. Eigenvectors
//! are cross products of rows of `A - λI`, with the most isolated eigenvalue
//! resolved first so that a near-degenerate pair is handled in its
//! orthogonal complement.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::params::ComplexMatrix3;

/// Eigenvalues in ascending order and the matching unit eigenvectors as
/// columns of `vectors`.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen {
    pub values: [f64; 3],
    pub vectors: ComplexMatrix3,
}

type Vec3 = [Complex64; 3];

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(v: &Vec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scaled(v: &Vec3, k: f64) -> Vec3 {
    [v[0] * k, v[1] * k, v[2] * k]
}

fn conj(v: &Vec3) -> Vec3 {
    [v[0].conj(), v[1].conj(), v[2].conj()]
}

/// ⟨a, b⟩ with the first argument conjugated.
fn inner(a: &Vec3, b: &Vec3) -> Complex64 {
    (0..3).map(|i| a[i].conj() * b[i]).sum()
}

fn det(m: &ComplexMatrix3) -> f64 {
    let a = &m.0;
    let d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    d.re
}

/// Null vector of the (near-singular) Hermitian matrix `b - λI`, taken as
/// the largest cross product of two of its rows. Returns the vector and the
/// norm of that cross product before normalization.
fn null_vector(b: &ComplexMatrix3, lambda: f64) -> (Vec3, f64) {
    let mut rows = [b.row(0), b.row(1), b.row(2)];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ];
    let (best, size) =
        candidates
            .iter()
            .map(|c| (c, norm(c)))
            .fold(
                (&candidates[0], -1.0),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
    if size > 0.0 {
        (scaled(best, 1.0 / size), size)
    } else {
        (*best, 0.0)
    }
}

/// Unit vector orthogonal to the unit vector `v`.
fn any_orthogonal(v: &Vec3) -> Vec3 {
    let basis = |k: usize| {
        let mut e = [Complex64::new(0.0, 0.0); 3];
        e[k] = 1.0.into();
        e
    };
    let (w, n) = (0..3)
        .map(|k| {
            let w = conj(&cross(v, &basis(k)));
            let n = norm(&w);
            (w, n)
        })
        .fold(([Complex64::new(0.0, 0.0); 3], -1.0), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        });
    scaled(&w, 1.0 / n)
}

/// Relative size below which a row cross product signals a degenerate pair.
const DEGENERATE_CROSS: f64 = 1e-9;

pub fn hermitian_eigen(a: &ComplexMatrix3) -> HermitianEigen {
    let shift = a.trace().re / 3.0;
    let mut b = *a;
    for i in 0..3 {
        b[(i, i)] -= shift;
    }
    let scale = b.max_abs();
    if scale == 0.0 {
        return HermitianEigen {
            values: [shift; 3],
            vectors: ComplexMatrix3::identity(),
        };
    }
    let b = b.scale(1.0 / scale);

    // λ³ - hλ - d = 0 for the traceless, Hermitian `b`.
    let off = b[(0, 1)].norm_sqr() + b[(0, 2)].norm_sqr() + b[(1, 2)].norm_sqr();
    let diag: f64 = (0..3).map(|i| b[(i, i)].re.powi(2)).sum();
    let h = 0.5 * (diag + 2.0 * off);
    let d = det(&b);
    let p = (h / 3.0).sqrt();
    let r = (d / (2.0 * p * p * p)).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let top = 2.0 * p * phi.cos();
    let bottom = 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mut values = [bottom, -top - bottom, top];
    for v in values.iter_mut() {
        let f = *v * *v * *v - h * *v - d;
        let df = 3.0 * *v * *v - h;
        if df.abs() > 1e-12 {
            let step = f / df;
            if step.abs() < 1e-6 {
                *v -= step;
            }
        }
    }
    values.sort_by(|x, y| x.total_cmp(y));

    let isolated = if values[1] - values[0] >= values[2] - values[1] {
        0
    } else {
        2
    };
    let (j, k) = if isolated == 0 { (1, 2) } else { (0, 1) };
    let (v_iso, _) = null_vector(&b, values[isolated]);
    let (mut v_j, size) = null_vector(&b, values[j]);
    if size < DEGENERATE_CROSS {
        v_j = any_orthogonal(&v_iso);
    } else {
        let overlap = inner(&v_iso, &v_j);
        for t in 0..3 {
            v_j[t] -= v_iso[t] * overlap;
        }
        let n = norm(&v_j);
        v_j = scaled(&v_j, 1.0 / n);
    }
    let v_k = conj(&cross(&v_iso, &v_j));

    let mut cols = [[Complex64::new(0.0, 0.0); 3]; 3];
    cols[isolated] = v_iso;
    cols[j] = v_j;
    cols[k] = v_k;
    let vectors = ComplexMatrix3::from_fn(|r, c| cols[c][r]);
    HermitianEigen {
        values: values.map(|v| v * scale + shift),
        vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{build_pmns, default_params, ParticleKind};

    fn reconstruct(e: &HermitianEigen) -> ComplexMatrix3 {
        e.vectors * ComplexMatrix3::diagonal(e.values) * e.vectors.adjoint()
    }

    fn check(a: &ComplexMatrix3) {
        let e = hermitian_eigen(a);
        let scale = a.max_abs().max(1e-300);
        assert!(reconstruct(&e).max_abs_diff(a) <= 1e-12 * scale, "{e:?}");
        let unitarity = (e.vectors.adjoint() * e.vectors).max_abs_diff(&ComplexMatrix3::identity());
        assert!(unitarity <= 1e-12);
        assert!(e.values[0] <= e.values[1] && e.values[1] <= e.values[2]);
    }

    #[test]
    fn diagonal_and_scalar() {
        let d = ComplexMatrix3::diagonal([3.0, -1.0, 2.0]);
        let e = hermitian_eigen(&d);
        for (got, want) in e.values.iter().zip([-1.0, 2.0, 3.0]) {
            assert!((got - want).abs() <= 4.0 * f64::EPSILON * 3.0);
        }
        check(&d);
        let s = ComplexMatrix3::diagonal([2.5; 3]);
        assert_eq!(hermitian_eigen(&s).values, [2.5; 3]);
    }

    #[test]
    fn degenerate_pair() {
        let u = build_pmns(&default_params(), ParticleKind::Neutrino);
        let a = u * ComplexMatrix3::diagonal([1.0, 1.0, 4.0]) * u.adjoint();
        let e = hermitian_eigen(&a);
        assert!((e.values[0] - 1.0).abs() < 1e-13 && (e.values[2] - 4.0).abs() < 1e-13);
        check(&a);
    }

    #[test]
    fn tiny_scale_complex() {
        let u = build_pmns(&default_params(), ParticleKind::Neutrino);
        let a = u * ComplexMatrix3::diagonal([0.0, 8.2e-16, 2.7e-14]) * u.adjoint();
        let e = hermitian_eigen(&a);
        assert!(e.values[0].abs() < 1e-28);
        assert!((e.values[1] - 8.2e-16).abs() < 1e-28);
        assert!((e.values[2] - 2.7e-14).abs() < 1e-27);
        check(&a);
    }

    #[test]
    fn matches_nalgebra_on_random_matrices() {
        use nalgebra::{Complex, Matrix3};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let mut a = ComplexMatrix3::zeros();
            for r in 0..3 {
                a[(r, r)] = rng.gen_range(-1.0..1.0).into();
                for c in r + 1..3 {
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    a[(r, c)] = z;
                    a[(c, r)] = z.conj();
                }
            }
            check(&a);
            let m = Matrix3::from_fn(|r, c| Complex::new(a[(r, c)].re, a[(r, c)].im));
            let mut reference: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            reference.sort_by(|x, y| x.total_cmp(y));
            let ours = hermitian_eigen(&a).values;
            for i in 0..3 {
                assert!((ours[i] - reference[i]).abs() < 1e-12);
            }
        }
    }
}
