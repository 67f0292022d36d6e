mod common;

use mongeampere::exterior::{p, q};
use mongeampere::solutions::{
    default_samples, float_chart, graph, hessian_identity_defect, legendre_example, legendre_grid, legendre_regular_solution,
    map_f_prop1, map_g_prop2, prop7_family_check, proposition, run_proposition, sample_box, sample_polydisc, verify_complex_lagrangian,
    verify_generalized, verify_regular, zu_transform, ConstraintSign, HolomorphicFunction, SampledSubmanifold,
};
use mongeampere::equations::lookup;
use mongeampere::structures::{DarbouxChart, StructureName};
use mongeampere::symplectic::standard_omega;
use mongeampere::{Cf, Cq, Field, Matrix};

fn chart(s: StructureName) -> DarbouxChart<Cf> {
    float_chart(&DarbouxChart::builtin(s))
}

fn close(a: Cf, b: Cf, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn complexify(x: &[f64]) -> Vec<Cf> {
    x.iter().map(|&t| Cf::new(t, 0.0)).collect()
}

#[test]
fn graph_coordinates() {
    let phi = HolomorphicFunction::parse("3*z1 + sin(z2)").unwrap();
    let j = chart(StructureName::J);
    let samples = sample_polydisc([Cf::new(0.0, 0.0); 2], 1.0, 12, 1);
    let l = graph(&phi, &j, &samples).unwrap();
    for (x, z) in l.points().iter().zip(&samples) {
        let c = j.coordinates(&complexify(x));
        assert!(close(c[0], z[0], 1e-12) && close(c[2], z[1], 1e-12));
        assert!(close(c[1], Cf::new(3.0, 0.0), 1e-12));
        assert!(close(c[3], z[1].cos(), 1e-12));
    }
}

#[test]
fn holomorphic_graphs_are_complex_lagrangian() {
    let samples = sample_polydisc([Cf::new(0.0, 0.0); 2], 1.0, 16, 2);
    for s in StructureName::ALL {
        let c = chart(s);
        for text in ["z1*z2", "exp(z1)*sin(z2) + z1^2*z2", "z1^3 - 2*z2^2 + i*z1"] {
            let l = graph(&HolomorphicFunction::parse(text).unwrap(), &c, &samples).unwrap();
            assert!(l.max_on_frames(&c.theta()) < 1e-12, "{s} {text}");
            assert!(verify_complex_lagrangian(&l, &c, 1e-12).unwrap());
        }
    }
}

#[test]
fn real_slice_is_lagrangian_but_not_complex_lagrangian() {
    let l = SampledSubmanifold::real_slice(&sample_box(&[0.0; 4], 1.0, 8, 3)).unwrap();
    assert_eq!(l.max_on_frames(&standard_omega::<Cf>(8)), 0.0);
    assert!(!verify_complex_lagrangian(&l, &chart(StructureName::K), 1e-9).unwrap());
}

#[test]
fn gradient_graph_of_a_non_pluriharmonic_function_fails() {
    // p = ∇(q1²/2): lagrangian for Ω, not for Ω_J
    let params = sample_box(&[0.0; 4], 1.0, 6, 4);
    let l = SampledSubmanifold::from_map(
        8,
        &params,
        |t| {
            let mut x = vec![0.0; 8];
            for k in 1..=4 {
                x[q(k)] = t[k - 1];
            }
            x[p(1)] = t[0];
            x
        },
        1e-4,
    )
    .unwrap();
    assert!(l.max_on_frames(&standard_omega::<Cf>(8)) < 1e-9);
    assert!(!verify_complex_lagrangian(&l, &chart(StructureName::J), 1e-6).unwrap());
}

#[test]
fn rank_deficient_frames_are_rejected() {
    let frame = Matrix::from_fn(8, 4, |r, c| Cf::new(if r == c && c < 3 { 1.0 } else { 0.0 }, 0.0));
    assert!(SampledSubmanifold::new(8, vec![vec![0.0; 8]], vec![frame]).is_err());
}

#[test]
fn chart_inverse_round_trip() {
    for c in [float_chart(&map_g_prop2()), map_f_prop1(), chart(StructureName::K)] {
        let inv = c.inverse_map();
        for x in sample_box(&[0.0; 8], 2.0, 5, 5) {
            let z = c.coordinates(&complexify(&x));
            let parts: Vec<Cf> = z.iter().flat_map(|w| [Cf::new(w.re, 0.0), Cf::new(w.im, 0.0)]).collect();
            let back = inv.mul_vec(&parts);
            for (a, b) in back.iter().zip(&x) {
                assert!((a.re - b).abs() < 1e-12 && a.im.abs() < 1e-12);
            }
        }
    }
}

#[test]
fn f_is_a_symplectic_change_of_the_j2_chart() {
    let f = map_f_prop1();
    let j2 = chart(StructureName::J2);
    let composed = zu_transform().mul(j2.matrix());
    for r in 0..4 {
        for c in 0..8 {
            assert!(close(composed[(r, c)], f.matrix()[(r, c)], 1e-12), "({r},{c})");
        }
    }
    let diff = &f.theta() - &j2.theta();
    assert!(diff.terms().all(|(_, c)| c.norm() < 1e-12));
}

#[test]
fn proposition_defaults_pass() {
    let samples = default_samples();
    for n in 1..=8 {
        let setup = proposition(n).unwrap();
        let phi = HolomorphicFunction::parse(setup.default_phi).unwrap();
        let r = run_proposition(&setup, &phi, &samples, 1e-8).unwrap();
        assert!(r.pass(), "proposition {n}: {}", r.residual_max());
    }
    assert!(proposition(9).is_err());
}

#[test]
fn holomorphic_graphs_under_k_solve_hess_one() {
    let setup = proposition(4).unwrap();
    let samples = sample_polydisc([Cf::new(0.2, -0.1); 2], 0.8, 24, 6);
    for text in ["z1^2*z2^3", "cos(z1 + 2*z2)", "exp(z1*z2)"] {
        let r = run_proposition(&setup, &HolomorphicFunction::parse(text).unwrap(), &samples, 1e-8).unwrap();
        assert!(r.pass(), "{text}");
    }
}

#[test]
fn proposition_two_passes_exactly_when_the_residual_vanishes() {
    let setup = proposition(2).unwrap();
    let samples = default_samples();
    for (text, expected) in [("(z1^2 + z2^2)/2", true), ("(z1^2 - i*z2^2)/2", true), ("z1^2/2 + z2^2", false)] {
        let r = run_proposition(&setup, &HolomorphicFunction::parse(text).unwrap(), &samples, 1e-8).unwrap();
        assert_eq!(r.pass(), expected, "{text}");
        assert_eq!(r.residual_max() <= 1e-8, expected);
    }
}

#[test]
fn hessian_identity() {
    let grid = sample_box(&[0.0; 4], 0.7, 20, 7);
    for s in [StructureName::J, StructureName::JTilde] {
        for text in ["z1*z2 + z1^3", "exp(z1)*cos(z2)"] {
            let d = hessian_identity_defect(&HolomorphicFunction::parse(text).unwrap(), &chart(s), &grid).unwrap();
            assert!(d < 1e-6, "{s} {text}: {d}");
        }
    }
}

#[test]
fn legendre_example_is_regular_after_the_swap() {
    let eq = lookup("hess2").unwrap();
    let grid = legendre_grid(16);
    let l = legendre_example(&grid).unwrap();
    assert_eq!(l.len(), 256);
    assert!(verify_generalized(&l, &eq.form_as::<Cf>(), 1e-9).pass);
    let r = verify_regular(&legendre_regular_solution(), eq, &grid, 1e-6).unwrap();
    assert!(r.pass && r.skipped.is_empty(), "{r:?}");
    // a non-solution of the same equation
    let wrong = mongeampere::solutions::RealFunction::parse("t1^2 + t2^2", &["t1", "t2"]).unwrap();
    assert!(!verify_regular(&wrong, eq, &grid, 1e-6).unwrap().pass);
}

#[test]
fn plebanski_two_family() {
    let grid = sample_box(&[0.0; 4], 0.8, 16, 8);
    let family = |text: &str, sign| prop7_family_check(&HolomorphicFunction::parse(text).unwrap(), sign, &grid, 1e-8).unwrap();
    let r = family("2*i*z1*z2", ConstraintSign::Plus);
    assert!(r.pass && r.constraint_max < 1e-12);
    assert!(family("0", ConstraintSign::Plus).pass);
    let bad = family("z1^2", ConstraintSign::Plus);
    assert!(!bad.pass && bad.violation.is_some());
    assert!(family("z1^2/2 - z1*z2/2 + i*z2^3", ConstraintSign::Plus).pass);
    assert!(!family("z1^2/2 - z1*z2/2 + i*z2^3", ConstraintSign::Minus).pass);
}

#[test]
fn derivatives_match_finite_differences() {
    let samples = sample_polydisc([Cf::new(0.0, 0.0); 2], 0.9, 10, 9);
    for text in ["exp(z1)*sin(z2) + z1^2*z2", "z1^5 - 3*z1*z2^4", "cos(z1)/(2 + z2)"] {
        let phi = HolomorphicFunction::parse(text).unwrap();
        assert!(phi.derivative_defect(&samples) < 1e-6, "{text}");
    }
    let phi = HolomorphicFunction::parse("z1^3*z2").unwrap();
    let z = [Cf::new(0.5, 0.5), Cf::new(-1.0, 2.0)];
    let h = phi.hessian(z);
    assert!(close(h[0][0], 6.0 * z[0] * z[1], 1e-12));
    assert!(close(h[0][1], 3.0 * z[0] * z[0], 1e-12) && close(h[0][1], h[1][0], 0.0));
    assert!(HolomorphicFunction::parse("z1*z3").is_err());
}

#[test]
fn hess_minus_through_g_ignores_phi12() {
    use mongeampere::equations::graph_pullback;
    use mongeampere::scalar::cq;
    let w = map_g_prop2().to_complex(&lookup("H-").unwrap().form);
    for (a, b, c) in [((1, 0), (0, 0), (0, 0)), ((2, 1), (5, -3), (0, 1)), ((0, 0), (7, 2), (0, 0)), ((1, 1), (1, 1), (-3, 2))] {
        let (a, b, c) = (cq((a.0, 1), (a.1, 1)), cq((b.0, 1), (b.1, 1)), cq((c.0, 1), (c.1, 1)));
        let expected = (a.clone() * a.conj() + c.clone() * c.conj()) * Cq::from_ratio(1, 4);
        assert_eq!(graph_pullback(&w, &a, &b, &c), expected);
    }
}
