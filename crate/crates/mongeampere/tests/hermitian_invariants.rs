mod common;

use common::{gaussian, int, random_real_form, rng};
use mongeampere::bieffective::bieffective_part;
use mongeampere::equations::{complex_model_form, lookup, ComplexModel};
use mongeampere::hermitian::{
    bieffective_dimension, grassmannian_member, hong_block, q_matrix, qqt_spectrum, signature, spectra_match, EffectiveTwoZeroBasis,
    HongKind, Signature,
};
use mongeampere::structures::{CompatibleComplexStructure, DarbouxChart, StructureName, U1, U2, Z1, Z2};
use mongeampere::{Cf, Cq, ExactMatrix, Field, Form, Matrix};

fn q_of(equation: &str, s: StructureName) -> ExactMatrix {
    let pair = CompatibleComplexStructure::builtin(s).pair();
    let w0 = bieffective_part(&lookup(equation).unwrap().form, &pair).unwrap();
    q_matrix(&w0, &DarbouxChart::builtin(s), &EffectiveTwoZeroBasis::orthonormal()).unwrap()
}

fn c(re: f64, im: f64) -> Cf {
    Cf::new(re, im)
}

#[test]
fn effective_two_zero_members() {
    let chart = DarbouxChart::builtin(StructureName::J);
    let theta = mongeampere::hermitian::theta_complex::<Cq>();
    let dz1dz2 = Form::monomial(8, &[Z1, Z2], int(1));
    let t5 = &Form::monomial(8, &[Z1, U1], int(1)) - &Form::monomial(8, &[Z2, U2], int(1));
    assert!(dz1dz2.wedge(&theta).is_empty());
    assert!(t5.wedge(&theta).is_empty());
    assert!(!Form::monomial(8, &[Z1, U1], int(1)).wedge(&theta).is_empty());
    // the chart's Θ is the same form in real coordinates
    assert_eq!(chart.to_real(&theta), chart.theta());
}

#[test]
fn table_examples() {
    let zero = q_matrix(&Form::zero(8, 4), &DarbouxChart::builtin(StructureName::J), &EffectiveTwoZeroBasis::orthonormal()).unwrap();
    assert!(zero.is_zero_within(0.0));
    let slag = q_of("SLAG", StructureName::J2);
    assert_eq!((signature(&slag), slag.rank()), (Signature::new(1, 1, 3), 2));
    assert_eq!(signature(&q_of("H-", StructureName::J)).pn(), (2, 0));
    assert_eq!(signature(&q_of("PII", StructureName::JTilde)), Signature::new(1, 0, 4));
}

#[test]
fn q_is_hermitian_for_real_input() {
    let mut r = rng(30);
    for s in StructureName::ALL {
        let pair = CompatibleComplexStructure::builtin(s).pair();
        let w0 = bieffective_part(&random_real_form(&mut r, 8, 4), &pair).unwrap();
        let q = q_matrix(&w0, &DarbouxChart::builtin(s), &EffectiveTwoZeroBasis::orthonormal()).unwrap();
        assert_eq!(q.adjoint(), q, "{s}");
    }
}

#[test]
fn signature_examples() {
    let d = Matrix::from_fn(5, 5, |r, c| if r == c { int([1, 1, -1, 0, 0][r]) } else { int(0) });
    assert_eq!(signature(&d), Signature::new(2, 1, 2));
    let k = Matrix::direct_sum(&[hong_block(HongKind::K, 2, int(1)).unwrap(), Matrix::zeros(3, 3)]);
    assert_eq!(signature(&k), Signature::new(1, 1, 3));
    assert!(spectra_match(&qqt_spectrum(&k), &[c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-12));
    assert!(spectra_match(&qqt_spectrum(&Matrix::<Cq>::identity(5)), &[c(1.0, 0.0); 5], 1e-12));
}

#[test]
fn hong_examples() {
    let lambda = Cq::from_ratio(-3, 2);
    assert_eq!(hong_block(HongKind::H, 1, lambda.clone()).unwrap(), Matrix::from_rows(vec![vec![lambda]]));
    let mu = Cq::from_ratio(5, 3);
    let k = hong_block(HongKind::K, 2, mu.clone()).unwrap();
    assert_eq!(k, Matrix::from_rows(vec![vec![int(0), -Cq::i() * mu.clone()], vec![Cq::i() * mu, int(0)]]));
    let h2 = hong_block(HongKind::H, 2, Cq::from_ratio(3, 4)).unwrap();
    assert!(spectra_match(&qqt_spectrum(&h2), &[c(9.0 / 16.0, 0.0); 2], 1e-12));
}

/// Complex orthogonal `(I − S)(I + S)⁻¹` from a complex skew `S`.
fn complex_orthogonal(r: &mut rand_chacha::ChaCha8Rng) -> ExactMatrix {
    let mut s = Matrix::<Cq>::zeros(5, 5);
    for i in 0..5 {
        for j in i + 1..5 {
            let v = gaussian(r);
            s[(i, j)] = v.clone();
            s[(j, i)] = -v;
        }
    }
    let id = Matrix::identity(5);
    loop {
        if let Some(inv) = id.add(&s).inverse() {
            return id.sub(&s).mul(&inv);
        }
        s = s.scale(&int(2));
    }
}

#[test]
fn invariants_under_orthogonal_congruence() {
    let mut r = rng(31);
    for model in ComplexModel::TABLE {
        let q = {
            let chart = DarbouxChart::builtin(StructureName::J);
            q_matrix(&complex_model_form(model, &chart).unwrap(), &chart, &EffectiveTwoZeroBasis::orthonormal()).unwrap()
        };
        let f = complex_orthogonal(&mut r);
        assert_eq!(f.mul(&f.transpose()), Matrix::identity(5));
        let moved = f.conj().transpose().mul(&q).mul(&f);
        assert_eq!(signature(&moved), signature(&q));
        assert!(spectra_match(&qqt_spectrum(&moved), &qqt_spectrum(&q), 1e-9), "{}", model.display());
        assert_eq!(signature(&q.scale(&int(-1))), signature(&q).swapped());
    }
}

#[test]
fn table_four_difference_row() {
    let chart = DarbouxChart::builtin(StructureName::J);
    let w = complex_model_form(ComplexModel::Phi11MinusPhi22, &chart).unwrap();
    let q = q_matrix(&w, &chart, &EffectiveTwoZeroBasis::orthonormal()).unwrap();
    assert_eq!(signature(&q).pn(), (1, 1));
    assert!(spectra_match(&qqt_spectrum(&q), &[c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-9));
}

#[test]
fn grassmannian_examples() {
    let basis = EffectiveTwoZeroBasis::<Cq>::standard();
    let e0 = [int(1), int(0), int(0), int(0), int(0)];
    assert_eq!(basis.combination(&e0), Form::monomial(8, &[Z1, Z2], int(1)));
    assert!(grassmannian_member(&e0, &basis, &Matrix::zeros(5, 5), 0.0));
    // positive definite Q leaves the grassmannian empty
    assert!(!grassmannian_member(&e0, &basis, &Matrix::identity(5), 0.0));
    let t5 = &Form::monomial(8, &[Z1, U1], int(1)) - &Form::monomial(8, &[Z2, U2], int(1));
    let coords = basis.coordinates(&t5).expect("member of the (2,0) part");
    assert_eq!(t5.wedge(&t5), Form::monomial(8, &[Z1, U1, Z2, U2], int(-2)));
    assert!(!grassmannian_member(&coords, &basis, &Matrix::zeros(5, 5), 0.0));
}

#[test]
fn grassmannian_is_scale_invariant() {
    let basis = EffectiveTwoZeroBasis::<Cq>::standard();
    let q = Matrix::from_fn(5, 5, |r, c| if r == c { int([1, -1, 0, 0, 0][r]) } else { int(0) });
    // θ = dz1∧dz2 + dz1∧du2 is decomposable and Q-null
    let coords = [int(1), int(1), int(0), int(0), int(0)];
    assert!(grassmannian_member(&coords, &basis, &q, 0.0));
    let mut r = rng(32);
    for _ in 0..5 {
        let s = gaussian(&mut r);
        if s == int(0) {
            continue;
        }
        let scaled: Vec<Cq> = coords.iter().map(|x| x.clone() * s.clone()).collect();
        assert!(grassmannian_member(&scaled, &basis, &q, 0.0));
    }
}

#[test]
fn rank_is_25_after_a_symplectic_change_of_chart() {
    let chart = DarbouxChart::builtin(StructureName::J);
    assert_eq!(bieffective_dimension(&chart).unwrap(), 25);
    // [[I, S], [0, I]] in (z1, z2, u1, u2) order, written for (z1, u1, z2, u2)
    let mut r = rng(33);
    let (a, b, d) = (gaussian(&mut r), gaussian(&mut r), gaussian(&mut r));
    let mut f = Matrix::<Cq>::identity(4);
    f[(0, 1)] = a;
    f[(0, 3)] = b.clone();
    f[(2, 1)] = b;
    f[(2, 3)] = d;
    assert!(mongeampere::hermitian::is_complex_symplectic(&f));
    let moved = DarbouxChart::new(f.mul(chart.matrix())).unwrap();
    assert_eq!(bieffective_dimension(&moved).unwrap(), 25);
}
