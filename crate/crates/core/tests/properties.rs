//! Property tests for the kernel quadrature, sampling policies, solver
//! conservation, and threshold formulas.

use nlflux::analysis::riccati_blowup_time;
use nlflux::flux::FluxModel;
use nlflux::grid::{Boundary, Field, GridSpec};
use nlflux::kernel::{convolve, discretize, KernelShape, KernelSpec};
use nlflux::solver::lf_step;
use nlflux::threshold::{threshold_const_a, threshold_const_ab, threshold_lin_ab};
use proptest::prelude::*;

fn traffic_kernel() -> impl Strategy<Value = KernelSpec> {
    (0..5usize, 1..=8usize).prop_map(|(shape, cells)| {
        let reach = cells as f64 * 0.1;
        let spec = match shape {
            0 => KernelSpec::ahead_constant(reach),
            1 => KernelSpec::ahead_linear(reach),
            2 => KernelSpec::behind_constant(reach),
            3 => KernelSpec::behind_linear(reach),
            _ => return KernelSpec::whitham(),
        };
        spec.unwrap()
    })
}

fn densities(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, n)
}

const N: usize = 41; // nodes of the [-2, 2] grid at dx = 0.1

fn grid(boundary: Boundary) -> GridSpec {
    GridSpec::new(-2.0, 2.0, 0.1, boundary).unwrap()
}

proptest! {
    #[test]
    fn weights_normalized_and_nonnegative(spec in traffic_kernel()) {
        let k = discretize(&spec, 0.1).unwrap();
        let sum: f64 = k.weights().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        prop_assert!(k.weights().iter().all(|&w| w >= 0.0));
    }

    #[test]
    fn convolution_preserves_constants(
        spec in traffic_kernel(),
        c in 0.0..=1.0f64,
        periodic in any::<bool>(),
    ) {
        let b = if periodic { Boundary::Periodic } else { Boundary::ConstantExtension };
        let f = Field::constant(grid(b), c);
        let k = discretize(&spec, 0.1).unwrap();
        let out = convolve(&f, &k).unwrap();
        for &v in out.values() {
            prop_assert!((v - c).abs() <= 1e-12);
        }
    }

    #[test]
    fn convolution_is_monotone_and_bounded(
        spec in traffic_kernel(),
        u in densities(N),
        bump in prop::collection::vec(0.0..=0.5f64, N),
    ) {
        let g = grid(Boundary::ConstantExtension);
        let lower = Field::new(g.clone(), u.clone()).unwrap();
        let upper_vals: Vec<f64> = u.iter().zip(&bump).map(|(a, b)| (a + b).min(1.0)).collect();
        let upper = Field::new(g, upper_vals).unwrap();
        let k = discretize(&spec, 0.1).unwrap();
        let lo = convolve(&lower, &k).unwrap();
        let hi = convolve(&upper, &k).unwrap();
        for i in 0..N {
            prop_assert!(lo.values()[i] <= hi.values()[i] + 1e-12);
            // 0 <= u <= 1 pointwise implies the averages stay in [0, 1]
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&lo.values()[i]));
        }
    }

    #[test]
    fn convolution_commutes_with_cyclic_shift(
        spec in traffic_kernel(),
        rep in densities(N - 1),
        shift in 0..(N - 1),
    ) {
        // periodic field: last node duplicates the first representative
        let g = grid(Boundary::Periodic);
        let period = N - 1;
        let close = |rep: &[f64]| {
            let mut v = rep.to_vec();
            v.push(rep[0]);
            Field::new(g.clone(), v).unwrap()
        };
        let shifted: Vec<f64> = (0..period).map(|i| rep[(i + shift) % period]).collect();
        let k = discretize(&spec, 0.1).unwrap();
        let conv = convolve(&close(&rep), &k).unwrap();
        let conv_shifted = convolve(&close(&shifted), &k).unwrap();
        for i in 0..period {
            prop_assert_eq!(conv_shifted.values()[i], conv.values()[(i + shift) % period]);
        }
    }

    #[test]
    fn sampling_selects_existing_values(
        u in densities(N),
        i in -200..200isize,
        periodic in any::<bool>(),
    ) {
        let b = if periodic { Boundary::Periodic } else { Boundary::ConstantExtension };
        let f = Field::new(grid(b), u.clone()).unwrap();
        let v = f.sample_at(i);
        prop_assert!(u.contains(&v));
        if (0..N as isize).contains(&i) {
            prop_assert_eq!(v, u[i as usize]);
        }
    }

    #[test]
    fn periodic_lf_step_conserves_representative_sum(
        rep in densities(N - 1),
        dt in 0.001..0.05f64,
    ) {
        let g = grid(Boundary::Periodic);
        let mut v = rep.clone();
        v.push(rep[0]);
        let f = Field::new(g, v).unwrap();
        let model = FluxModel::look_ahead_behind(
            KernelSpec::ahead_constant(0.5).unwrap(),
            KernelSpec::behind_constant(0.2).unwrap(),
        ).unwrap();
        let out = lf_step(&f, &model, dt).unwrap();
        let before: f64 = f.values()[..N - 1].iter().sum();
        let after: f64 = out.values()[..N - 1].iter().sum();
        prop_assert!((after - before).abs() <= 1e-13);
        prop_assert_eq!(out.values()[N - 1], out.values()[0]);
    }

    #[test]
    fn const_ab_dominates_const_a_at_paper_reaches(inf_d0 in -100.0..=0.0f64) {
        // with gamma_a = 1, gamma_b = 0.5 the combined threshold exceeds the
        // look-ahead-only one for every initial slope infimum
        let ab = threshold_const_ab(1.0, 0.5, inf_d0).unwrap();
        let a = threshold_const_a(1.0, inf_d0).unwrap();
        prop_assert!(ab > a);
    }

    #[test]
    fn const_ab_nonincreasing_in_inf_d0(
        ga_cells in 1..=40usize,
        gb_frac in 0.05..=1.0f64,
        s in -50.0..=0.0f64,
        ds in 0.0..=50.0f64,
    ) {
        let ga = ga_cells as f64 * 0.25;
        let gb = ga * gb_frac;
        let lo = threshold_const_ab(ga, gb, s).unwrap();
        let hi = threshold_const_ab(ga, gb, s + ds).unwrap();
        prop_assert!(hi <= lo + 1e-12);
        // saturation once inf_d0 is above -(ga+gb)/(ga gb)
        let sat = -(ga + gb) / (ga * gb);
        prop_assert_eq!(
            threshold_const_ab(ga, gb, sat).unwrap(),
            threshold_const_ab(ga, gb, 0.0).unwrap()
        );
    }

    #[test]
    fn lin_ab_dominates_const_ab_for_mild_infima(
        ga_cells in 1..=40usize,
        gb_frac in 0.05..=1.0f64,
        frac in 0.0..=1.0f64,
    ) {
        let ga = ga_cells as f64 * 0.25;
        let gb = ga * gb_frac;
        // infima in the saturated regime inf_d0 >= -(ga+gb)/(ga gb)
        let inf_d0 = -(ga + gb) / (ga * gb) * frac;
        let lin = threshold_lin_ab(ga, gb).unwrap();
        let cst = threshold_const_ab(ga, gb, inf_d0).unwrap();
        prop_assert!(lin > cst);
    }

    #[test]
    fn lin_ab_scales_inversely(
        ga_cells in 1..=40usize,
        gb_frac in 0.05..=1.0f64,
        k in 0.1..=10.0f64,
    ) {
        let ga = ga_cells as f64 * 0.25;
        let gb = ga * gb_frac;
        let base = threshold_lin_ab(ga, gb).unwrap();
        let scaled = threshold_lin_ab(k * ga, k * gb).unwrap();
        prop_assert!((scaled - base / k).abs() <= 1e-9 * base.max(1.0));
    }

    #[test]
    fn riccati_blowup_is_positively_homogeneous(
        d0 in 0.01..=100.0f64,
        k in 0.01..=100.0f64,
    ) {
        let direct = riccati_blowup_time(k * d0);
        let scaled = riccati_blowup_time(d0) / k;
        prop_assert!((direct - scaled).abs() <= 1e-12 * direct.max(1.0));
    }
}

#[test]
fn whitham_shape_is_ahead_nor_behind() {
    let w = KernelSpec::whitham();
    assert!(!w.shape().is_ahead());
    assert!(!w.shape().is_behind());
    assert_eq!(w.shape(), KernelShape::WhithamExponential);
}
