use nalgebra::Matrix4;
use proptest::prelude::*;
use sqt_core::{Blocks, SymplecticForm, TwoModeCovariance};

type M4 = Matrix4<f64>;

fn local(rot_a: f64, sq_a: f64, rot_b: f64, sq_b: f64) -> M4 {
    let single = |theta: f64, s: f64| {
        let (sn, cs) = theta.sin_cos();
        // rotation after a quadrature squeezer
        [[cs * s.exp(), -sn * (-s).exp()], [sn * s.exp(), cs * (-s).exp()]]
    };
    let (a, b) = (single(rot_a, sq_a), single(rot_b, sq_b));
    let mut m = M4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = a[i][j];
            m[(i + 2, j + 2)] = b[i][j];
        }
    }
    m
}

fn beam_splitter(theta: f64) -> M4 {
    let (s, c) = theta.sin_cos();
    let mut m = M4::identity() * c;
    for i in 0..2 {
        m[(i, i + 2)] = s;
        m[(i + 2, i)] = -s;
    }
    m
}

fn omega() -> M4 {
    M4::from_fn(|i, j| SymplecticForm::OMEGA[i][j])
}

fn to_cov(m: &M4) -> TwoModeCovariance {
    let sym = (m + m.transpose()) * 0.5;
    let mut rows = [[0.0; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = sym[(i, j)];
        }
    }
    TwoModeCovariance::from_rows(rows).unwrap()
}

/// Symplectic eigenvalues as moduli of the eigenvalues of `Omega sigma`,
/// each appearing twice.
fn oracle_spectrum(m: &M4) -> (f64, f64) {
    let mut moduli: Vec<f64> = (omega() * m).complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3]))
}

#[derive(Debug, Clone)]
struct Sample {
    nu1: f64,
    nu2: f64,
    s: M4,
}

impl Sample {
    fn covariance(&self) -> M4 {
        let d = M4::from_diagonal(&nalgebra::Vector4::new(self.nu1, self.nu1, self.nu2, self.nu2));
        self.s * d * self.s.transpose()
    }
}

fn sample() -> impl Strategy<Value = Sample> {
    let angle = -3.2..3.2f64;
    let squeeze = -1.2..1.2f64;
    (
        0.5..4.0f64,
        0.5..4.0f64,
        (angle.clone(), squeeze.clone(), angle.clone(), squeeze.clone()),
        angle.clone(),
        (angle.clone(), squeeze.clone(), angle, squeeze),
    )
        .prop_map(|(nu1, nu2, l1, bs, l2)| Sample {
            nu1,
            nu2,
            s: local(l1.0, l1.1, l1.2, l1.3) * beam_splitter(bs) * local(l2.0, l2.1, l2.2, l2.3),
        })
}

#[test]
fn generated_transformations_are_symplectic() {
    let s = local(0.3, 0.8, -1.1, -0.4) * beam_splitter(0.7) * local(2.0, 0.2, 0.1, 1.0);
    let err = (s * omega() * s.transpose() - omega()).abs().max();
    assert!(err < 1e-13, "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spectrum_matches_eigenvalue_oracle(sample in sample()) {
        let m = sample.covariance();
        let sigma = to_cov(&m);
        let spec = sigma.symplectic_eigenvalues().unwrap();
        let (lo, hi) = oracle_spectrum(&m);
        let (want_lo, want_hi) = if sample.nu1 <= sample.nu2 { (sample.nu1, sample.nu2) } else { (sample.nu2, sample.nu1) };
        prop_assert!((spec.nu_minus - lo).abs() <= 1e-9 * hi, "{} vs oracle {}", spec.nu_minus, lo);
        prop_assert!((spec.nu_plus - hi).abs() <= 1e-9 * hi, "{} vs oracle {}", spec.nu_plus, hi);
        // the construction itself fixes the spectrum
        prop_assert!((spec.nu_minus - want_lo).abs() <= 1e-9 * want_hi);
        prop_assert!((spec.nu_plus - want_hi).abs() <= 1e-9 * want_hi);
    }

    #[test]
    fn physical_iff_spectrum_above_vacuum(sample in sample(), shrink in 0.2..0.98f64) {
        let sigma = to_cov(&sample.covariance());
        prop_assert!(sigma.is_physical().unwrap());
        // pushing the smaller eigenvalue below 1/2 breaks physicality
        let squeezed = Sample { nu1: 0.5 * shrink, ..sample.clone() };
        prop_assert!(!to_cov(&squeezed.covariance()).is_physical().unwrap());
    }

    #[test]
    fn block_round_trip_is_exact(sample in sample()) {
        let sigma = to_cov(&sample.covariance());
        let rebuilt = TwoModeCovariance::from_blocks(&sigma.blocks()).unwrap();
        prop_assert_eq!(rebuilt.to_rows(), sigma.to_rows());
        let Blocks { a, b, c } = sigma.blocks();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(a.get(i, j), sigma.get(i, j));
                prop_assert_eq!(b.get(i, j), sigma.get(i + 2, j + 2));
                prop_assert_eq!(c.get(i, j), sigma.get(i, j + 2));
            }
        }
    }

    #[test]
    fn determinant_matches_oracle(sample in sample()) {
        let m = sample.covariance();
        let det = to_cov(&m).det();
        let expected = (sample.nu1 * sample.nu2).powi(2);
        prop_assert!((det - expected).abs() <= 1e-10 * expected.max(1.0));
        prop_assert!((det - m.determinant()).abs() <= 1e-9 * expected.max(1.0));
    }
}
