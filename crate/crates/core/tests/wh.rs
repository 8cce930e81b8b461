use conewh::wh::kernels::gaussian_1d;
use conewh::wh::matrix::kronecker;
use conewh::wh::{
    classical_index, face_symbol, face_symbol_of, hierarchy_fredholm, pull_back_kernel, rep_l, section_singular_values,
    symbol_winding, twisted_face_symbol, wh_matrix, winding_number, HierarchyConfig, KernelSpec, RationalSymbol,
    SymbolGrid, Verdict, WhCone,
};
use conewh::{face_lattice, Error, ExactCone, FloatCone};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rational_grid(r: &RationalSymbol, h: f64, t: f64) -> SymbolGrid {
    SymbolGrid::from_fn(|x| c(r.kernel(x[0])), 1, h, t).unwrap()
}

fn b2() -> RationalSymbol {
    RationalSymbol::new(vec![2.0], vec![-2.0]).unwrap()
}

/// Winding of `ξ ↦ r.eval(ξ)` traversed with `ξ` decreasing on a fine grid, closed at 1.
fn closed_form_winding(r: &RationalSymbol) -> i64 {
    let n = 40_000;
    let mut curve: Vec<Complex64> = (0..=n).map(|k| r.eval(100.0 - 200.0 * k as f64 / n as f64)).collect();
    curve.push(c(1.0));
    winding_number(&curve).unwrap()
}

#[test]
fn gaussian_transforms_to_itself() {
    let s = KernelSpec::Gaussian { dim: 1, amplitude: 1.0, width: 1.0 }.sample(0.05, 20.0).unwrap();
    for (j, v) in s.fhat().iter().enumerate() {
        let xi = s.xi(j);
        assert!((v - c((-PI * xi * xi).exp())).norm() < 1e-8, "ξ = {xi}");
    }
    let s2 = KernelSpec::Gaussian { dim: 2, amplitude: 0.3, width: 1.2 }.sample(0.1, 8.0).unwrap();
    for xi in [[0.0, 0.0], [0.37, -0.2], [1.1, 0.05]] {
        let exact = 0.3 * (-PI * 1.44 * (xi[0] * xi[0] + xi[1] * xi[1])).exp();
        assert!((s2.fhat_at(&xi) - c(exact)).norm() < 1e-10);
    }
}

#[test]
fn zero_kernel_has_zero_transform() {
    let s = SymbolGrid::zero(2, 0.5, 5.0).unwrap();
    assert!(s.fhat().iter().all(|v| v.norm() == 0.0));
    assert_eq!(s.symbol_min_abs(), 1.0);
    assert_eq!(s.l1_norm(), 0.0);
}

#[test]
fn rational_kernel_matches_closed_form() {
    for r in [RationalSymbol::blaschke(), RationalSymbol::new(vec![-1.0], vec![1.0]).unwrap()] {
        let g = rational_grid(&r, 2.5e-4, 40.0);
        let mut err: f64 = 0.0;
        for (j, v) in g.fhat().iter().enumerate() {
            let xi = g.xi(j);
            if xi.abs() <= 1.0 {
                err = err.max((v + 1.0 - r.eval(xi)).norm());
            }
        }
        assert!(err < 1e-6, "{r:?}: {err}");
    }
}

#[test]
fn slow_kernels_are_rejected() {
    let e = KernelSpec::Gaussian { dim: 1, amplitude: 1.0, width: 5.0 }.sample(0.1, 10.0).unwrap_err();
    assert!(matches!(e, Error::KernelNotWindowCompatible(_)));
    assert!(e.to_string().starts_with("kernel not window-compatible"));
    assert_eq!(e.category(), "symbol");
    assert!(matches!(SymbolGrid::zero(1, 0.3, 1.0), Err(Error::InvalidGrid(_))));
    assert!(matches!(SymbolGrid::zero(1, 0.3, 10.0), Err(Error::InvalidGrid(_))));
}

#[test]
fn convolution_multiplies_symbols() {
    let a = KernelSpec::Gaussian { dim: 1, amplitude: 0.5, width: 1.0 }.sample(0.1, 24.0).unwrap();
    let b = rational_grid(&RationalSymbol::new(vec![3.0], vec![-2.0]).unwrap(), 0.1, 24.0);
    let ab = a.convolve(&b).unwrap();
    for j in 0..ab.points_per_axis() {
        assert!((ab.fhat()[j] - a.fhat()[j] * b.fhat()[j]).norm() < 1e-12);
    }
}

#[test]
fn winding_examples() {
    let circle = |k: i64, n: usize| -> Vec<Complex64> {
        (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * j as f64 / n as f64)).collect()
    };
    assert_eq!(winding_number(&circle(1, 64)).unwrap(), 1);
    assert_eq!(winding_number(&circle(2, 64)).unwrap(), 2);
    assert_eq!(winding_number(&circle(-3, 64)).unwrap(), -3);
    let shifted: Vec<Complex64> = circle(1, 64).iter().map(|z| z + 2.0).collect();
    assert_eq!(winding_number(&shifted).unwrap(), 0);
    let through_origin: Vec<Complex64> = circle(1, 64).iter().map(|z| z + 1.0).collect();
    assert!(matches!(winding_number(&through_origin), Err(Error::WindingUndefined(_))));
    assert_eq!(winding_number(&[]).unwrap_err(), Error::EmptyInput);

    let b = RationalSymbol::blaschke();
    assert_eq!(symbol_winding(&rational_grid(&b, 0.05, 40.0)).unwrap(), 1);
    assert_eq!(symbol_winding(&rational_grid(&b.reciprocal().unwrap(), 0.05, 40.0)).unwrap(), -1);
    assert_eq!(closed_form_winding(&b), 1);
    assert!(matches!(
        symbol_winding(&SymbolGrid::zero(2, 0.5, 5.0).unwrap()),
        Err(Error::InvalidGrid(_))
    ));
}

#[test]
fn index_is_minus_winding() {
    let zero = classical_index(&SymbolGrid::zero(1, 0.1, 10.0).unwrap(), &[16, 32]).unwrap();
    assert_eq!(zero.index, Some(0));
    assert_eq!(zero.verdict, Verdict::Fredholm);
    let inv = b2().reciprocal().unwrap().product(&RationalSymbol::new(vec![-1.0], vec![1.0]).unwrap()).unwrap();
    for (r, w) in [(RationalSymbol::new(vec![-1.0], vec![1.0]).unwrap(), -1), (RationalSymbol::blaschke(), 1), (inv, -2)] {
        let rep = classical_index(&rational_grid(&r, 0.1, 50.0), &[300, 400]).unwrap();
        assert_eq!(rep.winding, Some(w));
        assert_eq!(rep.index, Some(-w));
        if w.abs() == 1 {
            assert_eq!(rep.numerical.as_ref().unwrap().index, -w);
        }
    }
}

#[test]
fn index_of_a_product_is_additive() {
    let (a, b) = (RationalSymbol::blaschke(), b2());
    let ia = classical_index(&rational_grid(&a, 0.1, 50.0), &[300, 400]).unwrap().index.unwrap();
    let ib = classical_index(&rational_grid(&b, 0.1, 50.0), &[300, 400]).unwrap().index.unwrap();
    let iab = classical_index(&rational_grid(&a.product(&b).unwrap(), 0.1, 50.0), &[300, 400]).unwrap().index.unwrap();
    assert_eq!(iab, ia + ib);
    assert_eq!(iab, -2);
}

#[test]
fn vanishing_symbol_is_not_fredholm() {
    // c·e^{−x} on x > 0, scaled so that the discrete symbol vanishes exactly at ξ = 0
    let h: f64 = 0.1;
    let scale = -1.0 / (h / 2.0 / (h / 2.0).tanh());
    let kernel = |x: f64| {
        if x > 0.0 {
            scale * (-x).exp()
        } else if x == 0.0 {
            scale / 2.0
        } else {
            0.0
        }
    };
    let s = SymbolGrid::from_fn(|x| c(kernel(x[0])), 1, h, 40.0).unwrap();
    assert!(s.symbol_min_abs() < 1e-8);
    let rep = classical_index(&s, &[64, 128, 256]).unwrap();
    assert_eq!(rep.verdict, Verdict::NotFredholm);
    assert_eq!(rep.index, None);
    let sig: Vec<f64> = rep.sections.iter().map(|st| st.sigma_min).collect();
    assert_eq!(sig.len(), 3);
    assert!(sig[0] > sig[1] && sig[1] > sig[2], "{sig:?}");
}

#[test]
fn section_structure() {
    let b = RationalSymbol::blaschke();
    let s = rational_grid(&b, 0.05, 40.0);
    let w = wh_matrix(&s, &WhCone::HalfLine, 16).unwrap();
    assert!(w.is_toeplitz());
    for i in 0..16 {
        assert!((w.entries[(i, 0)].re - 0.05 * b.kernel(i as f64 * 0.05)).abs() < 1e-15);
    }
    let z = wh_matrix(&SymbolGrid::zero(1, 0.5, 5.0).unwrap(), &WhCone::HalfLine, 5).unwrap();
    assert!(z.entries.iter().all(|v| v.norm() == 0.0));
    assert_eq!(section_singular_values(&SymbolGrid::zero(1, 0.5, 5.0).unwrap(), &WhCone::HalfLine, 5).unwrap(), vec![1.0; 5]);
}

#[test]
fn quarter_plane_section_of_a_separable_kernel_is_a_kronecker_product() {
    let gx = KernelSpec::Gaussian { dim: 1, amplitude: 0.9, width: 1.1 };
    let gy = KernelSpec::Rational { zeros: vec![1.0], poles: vec![-3.0] };
    let (h, t) = (0.1, 14.0);
    let sep = KernelSpec::Separable { x: Box::new(gx.clone()), y: Box::new(gy.clone()) }.sample(h, t).unwrap();
    let n = 10;
    let w = wh_matrix(&sep, &WhCone::QuarterPlane, n).unwrap();
    let wx = wh_matrix(&gx.sample(h, t).unwrap(), &WhCone::HalfLine, n).unwrap();
    let wy = wh_matrix(&gy.sample(h, t).unwrap(), &WhCone::HalfLine, n).unwrap();
    let k = kronecker(&wx.entries, &wy.entries);
    assert!((&w.entries - &k).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
    assert!(w.is_block_toeplitz(n));
    let q = WhCone::Polyhedral(FloatCone::orthant(2));
    assert_eq!(wh_matrix(&sep, &q, n).unwrap(), w);
    let other = WhCone::Polyhedral(FloatCone::from_generators(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap());
    assert!(matches!(wh_matrix(&sep, &other, n), Err(Error::GridConeMismatch(_))));
}

#[test]
fn face_symbols() {
    let g = KernelSpec::Gaussian { dim: 1, amplitude: 0.7, width: 1.3 };
    let gp = KernelSpec::Rational { zeros: vec![-0.5], poles: vec![-2.5] };
    let s = KernelSpec::Separable { x: Box::new(g.clone()), y: Box::new(gp.clone()) }.sample(0.1, 16.0).unwrap();
    // trapezoid sum of −2e^{−2.5x} on x ≥ 0 with the midpoint at the jump
    let total: f64 = (-160..160).map(|k| 0.1 * gp.eval(&[k as f64 * 0.1])).sum();
    let face = face_symbol(&s, &[1.0, 0.0]).unwrap();
    for (i, v) in face.kernel().iter().enumerate() {
        assert!((v.re - total * g.eval(&[face.x(i)])).abs() < 1e-12);
    }
    assert!((total + 2.0 * 0.05 / (0.125f64).tanh()).abs() < 1e-12);

    let (a, w) = (0.8, 1.1);
    let radial = KernelSpec::Gaussian { dim: 2, amplitude: a, width: w }.sample(0.1, 8.0).unwrap();
    for dir in [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]] {
        let marginal = face_symbol(&radial, &dir).unwrap();
        for (i, v) in marginal.kernel().iter().enumerate() {
            assert!((v - c(gaussian_1d(a, w, marginal.x(i)))).norm() < 1e-12);
        }
    }
    assert!(matches!(face_symbol(&radial, &[S, S]), Err(Error::UnsupportedFace(_))));
    assert_eq!(Error::UnsupportedFace("x".into()).category(), "face-symbol");

    let lattice = face_lattice(&ExactCone::orthant(2)).unwrap();
    let rays: Vec<_> = lattice.faces().iter().filter(|f| f.dim() == 1).collect();
    assert_eq!(rays.len(), 2);
    for f in rays {
        let g = face_symbol_of(&radial, f).unwrap();
        assert!((g.fhat()[0] - radial.fhat()[0]).norm() < 1e-12);
    }
    let apex = lattice.faces().iter().find(|f| f.dim() == 0).unwrap();
    assert!(matches!(face_symbol_of(&radial, apex), Err(Error::UnsupportedFace(_))));
}

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn unit(n: usize, j: usize) -> Vec<Complex64> {
    (0..n).map(|i| c(if i == j { 1.0 } else { 0.0 })).collect()
}

fn apply(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    (m * DVector::from_column_slice(v)).iter().copied().collect()
}

#[test]
fn rep_l_at_zero_is_the_face_operator() {
    let spec = KernelSpec::Separable {
        x: Box::new(KernelSpec::Rational { zeros: vec![1.0], poles: vec![-3.0] }),
        y: Box::new(KernelSpec::Gaussian { dim: 1, amplitude: 0.6, width: 0.9 }),
    };
    let s = spec.sample(0.1, 14.0).unwrap();
    let n = 24;
    for dir in [[1.0, 0.0], [0.0, 1.0]] {
        let w = wh_matrix(&face_symbol(&s, &dir).unwrap(), &WhCone::HalfLine, n).unwrap();
        for j in [0, 5, 23] {
            let got = rep_l(&s, &dir, 0.0, &unit(n, j)).unwrap();
            let want = apply(&w.entries, &unit(n, j));
            assert!(got.iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-13));
        }
        // and at y ≠ 0 it is the section of the twisted face symbol
        let wy = wh_matrix(&twisted_face_symbol(&s, &dir, 0.7).unwrap(), &WhCone::HalfLine, n).unwrap();
        let v: Vec<Complex64> = (0..n).map(|i| Complex64::new((i as f64).sin(), 0.3 * i as f64)).collect();
        let got = rep_l(&s, &dir, 0.7, &v).unwrap();
        let want = apply(&wy.entries, &v);
        assert!(got.iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-12));
    }
    let zero = SymbolGrid::zero(2, 0.1, 8.0).unwrap();
    assert!(rep_l(&zero, &[1.0, 0.0], 0.4, &unit(n, 3)).unwrap().iter().all(|v| v.norm() == 0.0));
}

#[test]
fn rep_l_of_a_gaussian_is_modulated() {
    let (a, w, h) = (1.0, 1.0, 0.1);
    let s = KernelSpec::Gaussian { dim: 2, amplitude: a, width: w }.sample(h, 8.0).unwrap();
    let n = 20;
    let damp = (-PI * w * w).exp();
    for j in [0, 7] {
        let out = rep_l(&s, &[0.0, 1.0], 1.0, &unit(n, j)).unwrap();
        for (i, v) in out.iter().enumerate() {
            let want = h * gaussian_1d(a, w, (i as f64 - j as f64) * h) * damp;
            assert!((v - c(want)).norm() < 1e-12, "{i} {j}: {v} vs {want}");
        }
    }
}

#[test]
fn hierarchy_on_the_quarter_plane() {
    let zero = SymbolGrid::zero(2, 0.1, 16.0).unwrap();
    let r = hierarchy_fredholm(&zero, &WhCone::QuarterPlane, &HierarchyConfig::for_grid(&zero)).unwrap();
    assert_eq!(r.verdict, Verdict::HierarchyFredholm);
    assert!(r.failing_faces().is_empty());

    // 1 − e^{−π ξ²}·e^{−π η²} vanishes at the origin; on e1 the face symbol 1 − e^{−π ξ²}
    // loses invertibility at y = 0
    let singular = KernelSpec::Separable {
        x: Box::new(KernelSpec::Gaussian { dim: 1, amplitude: -1.0, width: 1.0 }),
        y: Box::new(KernelSpec::Gaussian { dim: 1, amplitude: 1.0, width: 1.0 }),
    }
    .sample(0.1, 16.0)
    .unwrap();
    let mut cfg = HierarchyConfig::for_grid(&singular);
    cfg.ys = vec![0.0, 1.0, 4.0];
    let r = hierarchy_fredholm(&singular, &WhCone::QuarterPlane, &cfg).unwrap();
    assert_eq!(r.verdict, Verdict::NotHierarchyFredholm);
    assert!(!r.symbol_nonvanishing);
    let e1 = r.face_reports.iter().find(|f| f.label == "e1").unwrap();
    assert!(!e1.passed);
    let at0 = &e1.samples[0];
    assert!(at0.sigma_n2 < 0.8 * at0.sigma_n1, "{at0:?}");
    assert!(e1.samples[1].passed);
    assert!(matches!(
        hierarchy_fredholm(&SymbolGrid::zero(1, 0.1, 16.0).unwrap(), &WhCone::HalfLine, &cfg),
        Err(Error::GridConeMismatch(_))
    ));
}

#[test]
fn compactly_supported_perturbations_vanish_at_infinity() {
    let (h, t) = (0.1, 16.0);
    let base = SymbolGrid::zero(2, h, t).unwrap();
    let m = base.points_per_axis();
    // smooth bump supported in |ξ|, |η| < 1
    let bump = |v: f64| if v.abs() < 1.0 { (-1.0 / (1.0 - v * v)).exp() * std::f64::consts::E } else { 0.0 };
    let fhat: Vec<Complex64> = (0..m * m).map(|k| c(0.5 * bump(base.xi(k / m)) * bump(base.xi(k % m)))).collect();
    let s = SymbolGrid::from_fhat(fhat, 2, h, t).unwrap();
    let cfg = HierarchyConfig::for_grid(&s);
    let r = hierarchy_fredholm(&s, &WhCone::QuarterPlane, &cfg).unwrap();
    let r0 = hierarchy_fredholm(&base, &WhCone::QuarterPlane, &cfg).unwrap();
    for (f, f0) in r.face_reports.iter().zip(&r0.face_reports) {
        assert!((f.margin_at_infinity - f0.margin_at_infinity).abs() < 1e-8, "{}", f.label);
    }
    assert_eq!(r.verdict, Verdict::HierarchyFredholm);
}

#[test]
fn pulled_back_kernels() {
    let cone = FloatCone::from_generators(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
    let f = |x: &[f64]| (-(x[0] * x[0] + 2.0 * x[1] * x[1])).exp();
    let g = pull_back_kernel(f, &cone).unwrap();
    let (r1, r2) = (cone.rays()[0].clone(), cone.rays()[1].clone());
    let jac = (r1[0] * r2[1] - r1[1] * r2[0]).abs();
    for z in [[0.0, 0.0], [0.5, 0.25], [-1.0, 2.0]] {
        let x = [r1[0] * z[0] + r2[0] * z[1], r1[1] * z[0] + r2[1] * z[1]];
        assert!((g(&z) - jac * f(&x)).abs() < 1e-15);
    }
    let s = SymbolGrid::from_fn(|z| c(g(z)), 2, 0.1, 12.0).unwrap();
    assert!(wh_matrix(&s, &WhCone::QuarterPlane, 4).is_ok());
    // change of variables: ∫ g = ∫ f
    assert!((s.fhat()[0].re - PI / 2f64.sqrt()).abs() < 1e-10);
    assert!(matches!(pull_back_kernel(f, &FloatCone::orthant(3)), Err(Error::GridConeMismatch(_))));
    let half = FloatCone::from_generators(&[vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert!(pull_back_kernel(f, &half).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_sections_are_toeplitz(vals in prop::collection::vec(-1.0f64..1.0, 20), n in 1usize..11) {
        let s = SymbolGrid::from_samples(vals.iter().map(|&v| c(v)).collect(), 1, 0.5, 5.0).unwrap();
        let w = wh_matrix(&s, &WhCone::HalfLine, n).unwrap();
        prop_assert!(w.is_toeplitz());
        prop_assert_eq!(w.size(), n);
    }

    #[test]
    fn random_quarter_plane_sections_are_block_toeplitz(vals in prop::collection::vec(-1.0f64..1.0, 400), n in 1usize..6) {
        let s = SymbolGrid::from_samples(vals.iter().map(|&v| c(v)).collect(), 2, 0.5, 5.0).unwrap();
        let w = wh_matrix(&s, &WhCone::QuarterPlane, n).unwrap();
        prop_assert!(w.is_block_toeplitz(n));
    }

    #[test]
    fn winding_is_additive(
        za in prop::collection::vec((0.5f64..3.0, any::<bool>()), 1..3),
        zb in prop::collection::vec((0.5f64..3.0, any::<bool>()), 1..3),
        pa in prop::collection::vec(any::<bool>(), 2),
        pb in prop::collection::vec(any::<bool>(), 2),
    ) {
        let build = |z: &[(f64, bool)], p: &[bool], off: f64| {
            let zeros: Vec<f64> = z.iter().map(|&(v, s)| if s { v } else { -v }).collect();
            let poles: Vec<f64> = (0..zeros.len()).map(|i| (1.0 + i as f64 + off) * if p[i] { 1.0 } else { -1.0 }).collect();
            RationalSymbol::new(zeros, poles).unwrap()
        };
        let a = build(&za, &pa, 0.0);
        let b = build(&zb, &pb, 0.5);
        let ab = a.product(&b).unwrap();
        let (wa, wb, wab) = (closed_form_winding(&a), closed_form_winding(&b), closed_form_winding(&ab));
        prop_assert_eq!(wab, wa + wb);
        prop_assert_eq!(wa, a.right_half_plane_count());
        prop_assert_eq!(closed_form_winding(&a.reciprocal().unwrap()), -wa);
    }
}
