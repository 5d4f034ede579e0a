mod common;

use common::*;
use lctds::convolution::{
    conv_c, conv_c_power, conv_d, conv_sd, evolution_power, evolution_powers,
};
use lctds::lct::LctQuadrature;
use lctds::{Complex64, Error, Grid, IndexBox, Params, Sequence};
use proptest::prelude::*;

fn gauss(centre: [f64; 2], decay: f64) -> impl Fn([f64; 2]) -> Complex64 {
    move |t| {
        let d = [t[0] - centre[0], t[1] - centre[1]];
        Complex64::new((-decay * (d[0] * d[0] + d[1] * d[1])).exp(), 0.3 * d[0])
    }
}

#[test]
fn delta_rules() {
    let p = worked_params();
    let mut r = rng(20);
    let s = random_sequence(&mut r, IndexBox::new([-2, 1], [4, 3]));
    let h = conv_d(&s, &Sequence::delta([0, 0]), &p);
    for k in s.support().indices() {
        assert!((h.get(k) - s.get(k) / p.sqrt_det_ib()).norm() < 1e-14);
    }
    let phi = Grid::node_centered(-1.0, 1.0, 0.125, gauss([0.1, 0.0], 2.0));
    let f = conv_sd(&Sequence::delta([0, 0]), &phi, &p).unwrap();
    assert!(
        f.max_abs_diff(&phi.scale(Complex64::new(1.0, 0.0) / p.sqrt_det_ib()))
            .unwrap()
            < 1e-14
    );
    let z = conv_sd(&Sequence::zeros(IndexBox::new([0, 0], [2, 2])), &phi, &p).unwrap();
    assert!(z.is_zero());
    let g0 = Grid::zeros([0.0, 0.0], 0.125, [3, 3]);
    assert!(conv_c(&phi, &g0, &p).unwrap().is_zero());
}

#[test]
fn grid_preconditions() {
    let p = worked_params();
    let coarse = Grid::node_centered(-1.0, 1.0, 0.3, gauss([0.0, 0.0], 1.0));
    assert!(matches!(
        conv_sd(&Sequence::delta([0, 0]), &coarse, &p),
        Err(Error::IncommensurateGrid { .. })
    ));
    let fine = Grid::node_centered(-1.0, 1.0, 0.1, gauss([0.0, 0.0], 1.0));
    assert!(matches!(
        conv_c(&coarse, &fine, &p),
        Err(Error::StepMismatch { .. })
    ));
    assert!(matches!(
        evolution_power(&Sequence::delta([0, 0]), 0, &p),
        Err(Error::InvalidPower)
    ));
}

#[test]
fn sequence_factorization() {
    let mut r = rng(21);
    for p in [worked_params(), sheared_params()] {
        let b1 = random_box(&mut r, 5);
        let b2 = random_box(&mut r, 5);
        let s = random_sequence(&mut r, b1);
        let c = random_sequence(&mut r, b2);
        let h = conv_d(&s, &c, &p);
        assert_eq!(h.support(), s.support().minkowski(&c.support()));
        for _ in 0..50 {
            let xi = random_xi(&mut r, 3.0);
            let lhs = p.dt_nslct(&h, xi);
            let rhs = p.chirp_eta(xi).conj() * p.dt_nslct(&s, xi) * p.dt_nslct(&c, xi);
            assert!(rel(lhs, rhs) < 1e-10);
        }
    }
}

#[test]
fn powers_factorize() {
    let p = worked_params();
    let a = two_tap_kernel(0.7, -0.4);
    assert_eq!(evolution_power(&a, 1, &p).unwrap(), a);
    let d2 = evolution_power(&Sequence::delta([0, 0]), 2, &p).unwrap();
    assert!((d2.get([0, 0]) - 1.0 / p.sqrt_det_ib()).norm() < 1e-14);
    let powers = evolution_powers(&a, 4, &p);
    let mut r = rng(22);
    for _ in 0..20 {
        let xi = random_xi(&mut r, 2.0);
        let la = p.dt_nslct(&a, xi);
        let eb = p.chirp_eta(xi).conj();
        for (j, aj) in powers.iter().enumerate() {
            let j = j as i32 + 1;
            assert!(rel(p.dt_nslct(aj, xi), eb.powi(j - 1) * la.powi(j)) < 1e-10);
        }
    }
}

fn continuous_factorization(
    p: &Params,
    h: f64,
    xi: [f64; 2],
) -> (Complex64, Complex64, Complex64, Complex64) {
    let f = Grid::cell_centered(-1.0, 1.0, h, gauss([0.2, -0.1], 3.0));
    let g = Grid::cell_centered(-1.0, 1.0, h, gauss([-0.3, 0.1], 2.0));
    let fg = conv_c(&f, &g, p).unwrap();
    let eb = p.chirp_eta(xi).conj();
    let l21 = (
        LctQuadrature::new(p, &fg).eval(xi),
        eb * p.nslct_quadrature(&f, xi) * p.nslct_quadrature(&g, xi),
    );
    let s = Sequence::from_entries(&[
        ([0, 0], Complex64::new(1.0, 0.5)),
        ([1, -1], Complex64::new(-0.3, 0.2)),
    ]);
    let sg = conv_sd(&s, &g, p).unwrap();
    let l22 = (
        p.nslct_quadrature(&sg, xi),
        eb * p.dt_nslct(&s, xi) * p.nslct_quadrature(&g, xi),
    );
    (l21.0, l21.1, l22.0, l22.1)
}

/// On a shared grid the Riemann sums factor exactly; each side converges to
/// the continuous transform at second order.
#[test]
fn continuous_factorizations() {
    let p = worked_params();
    for xi in [[0.0, 0.0], [0.3, -0.6]] {
        let runs: Vec<_> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&h| continuous_factorization(&p, h, xi))
            .collect();
        for (a, b, c, d) in &runs {
            assert!(rel(*a, *b) < 1e-10);
            assert!(rel(*c, *d) < 1e-10);
        }
        let order = |v: [Complex64; 3]| ((v[0] - v[1]).norm() / (v[1] - v[2]).norm()).log2();
        let o21 = order([runs[0].0, runs[1].0, runs[2].0]);
        let o22 = order([runs[0].2, runs[1].2, runs[2].2]);
        assert!(o21 >= 1.8 && o22 >= 1.8, "{o21} {o22}");
    }
}

#[test]
fn interchange_of_convolutions() {
    let p = worked_params();
    let mut r = rng(23);
    let s = random_sequence(&mut r, IndexBox::new([-1, 0], [3, 2]));
    let h = 0.05;
    let a = Grid::node_centered(-0.5, 0.5, h, gauss([0.1, 0.2], 6.0));
    let g = Grid::node_centered(-1.0, 1.0, h, gauss([0.0, 0.0], 1.5));
    let lhs = conv_c(&a, &conv_sd(&s, &g, &p).unwrap(), &p).unwrap();
    let rhs = conv_sd(&s, &conv_c(&a, &g, &p).unwrap(), &p).unwrap();
    assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-8 * lhs.max_abs());
    let a3 = conv_c_power(&a, 3, &p).unwrap();
    let a3b = conv_c(&conv_c(&a, &a, &p).unwrap(), &a, &p).unwrap();
    assert!(a3.max_abs_diff(&a3b).unwrap() < 1e-14);
}

fn arb_seq(max: usize) -> impl Strategy<Value = Sequence> {
    (-3i64..3, -3i64..3, 1..=max, 1..=max, any::<u64>()).prop_map(|(o0, o1, e0, e1, seed)| {
        let mut r = rng(seed);
        random_sequence(&mut r, IndexBox::new([o0, o1], [e0, e1]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conv_d_commutes(s in arb_seq(5), c in arb_seq(5)) {
        let p = sheared_params();
        let a = conv_d(&s, &c, &p);
        let b = conv_d(&c, &s, &p);
        prop_assert!(a.max_abs_diff(&b) <= 1e-13 * (1.0 + a.norm()));
    }

    #[test]
    fn conv_d_associates(a in arb_seq(4), b in arb_seq(4), c in arb_seq(4)) {
        let p = worked_params();
        let left = conv_d(&conv_d(&a, &b, &p), &c, &p);
        let right = conv_d(&a, &conv_d(&b, &c, &p), &p);
        prop_assert!(left.max_abs_diff(&right) <= 1e-10 * (1.0 + left.norm()));
    }
}
