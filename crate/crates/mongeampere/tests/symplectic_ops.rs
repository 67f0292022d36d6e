mod common;

use common::{int, random_form, random_real_form, rng};
use mongeampere::exterior::{p, q, Blade};
use mongeampere::structures::{CompatibleComplexStructure, StructureName};
use mongeampere::symplectic::{hodge_lepage_decompose, standard_omega, verify_vb_relations, verify_vb_relations_with, PairOperators};
use mongeampere::{Cq, ExactForm, Field, Form, Matrix, SymplecticForm, SymplecticPair};

fn pair_j() -> SymplecticPair<Cq> {
    CompatibleComplexStructure::builtin(StructureName::J).pair()
}

fn vol() -> ExactForm {
    Form::monomial(8, &[0, 1, 2, 3, 4, 5, 6, 7], int(1))
}

#[test]
fn top_and_perp_examples() {
    let pair = pair_j();
    let o1 = pair.omega(1).clone();
    assert_eq!(pair.top(1, &Form::scalar(8, int(1))), o1);
    assert_eq!(pair.top(1, &o1).wedge(&o1).wedge(&o1), vol().scale(&int(24)));
    assert_eq!(pair.perp(1, &o1).scalar_value(), int(4));
    assert_eq!(pair.perp(1, &pair.perp(1, &o1.wedge(&o1))).scalar_value(), int(24));
    let w0 = mongeampere::bieffective::bieffective_part(&random_real_form(&mut rng(5), 8, 4), &pair).unwrap();
    assert!(pair.top(1, &w0).is_empty() && pair.top(2, &w0).is_empty());
}

#[test]
fn h_and_m_examples() {
    let pair = pair_j();
    let dq1 = Form::<Cq>::basis(8, q(1));
    assert_eq!(pair.operator_h(&dq1), dq1.scale(&int(3)));
    assert_eq!(pair.operator_h(&vol()), vol().scale(&int(-4)));
    let w0 = mongeampere::bieffective::bieffective_part(&random_real_form(&mut rng(6), 8, 4), &pair).unwrap();
    assert!(pair.operator_m(&w0).is_empty());
}

#[test]
fn relations_hold_for_every_structure() {
    for s in StructureName::ALL {
        let r = verify_vb_relations(&CompatibleComplexStructure::builtin(s).pair());
        assert!(r.passed(), "{s}: {:?}", r.violations);
        assert_eq!(r.identities.len(), 15);
    }
}

#[test]
fn misnormalized_dual_breaks_relations() {
    let pair = pair_j();
    let first = pair.part(1);
    let broken = SymplecticForm::with_dual(first.omega().clone(), first.dual().scale(&int(2)));
    let bad = SymplecticPair::from_parts(broken, pair.part(2).clone());
    let r = verify_vb_relations_with(&PairOperators::new(&bad), 0.0);
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.identity == "[⊥1,⊤1] = H"));
}

#[test]
fn lefschetz_injectivity() {
    let ops = PairOperators::new(&pair_j());
    for k in 5..=8 {
        let m = ops.perp1.restricted_matrix(k);
        assert_eq!(m.rank(), m.cols(), "⊥₁ on degree {k}");
    }
    for k in 0..=3 {
        let m = ops.top1.restricted_matrix(k);
        assert_eq!(m.rank(), m.cols(), "⊤₁ on degree {k}");
    }
}

#[test]
fn effectiveness_examples() {
    let sf = SymplecticForm::new(standard_omega::<Cq>(8)).unwrap();
    let hplus = &Form::<Cq>::monomial(8, &[p(1), p(2), p(3), p(4)], int(1)) - &Form::monomial(8, &[q(1), q(2), q(3), q(4)], int(1));
    assert!(sf.is_effective(&hplus, 0.0));
    assert!(!sf.is_effective(sf.omega(), 0.0));
    assert!(sf.is_effective(&Form::monomial(8, &[q(1), q(2), q(3), q(4)], int(1)), 0.0));
}

#[test]
fn perp_vanishes_iff_top_vanishes_in_degree_four() {
    let pair = pair_j();
    let mut r = rng(7);
    for _ in 0..10 {
        let w = random_real_form(&mut r, 8, 4);
        let w0 = mongeampere::bieffective::bieffective_part(&w, &pair).unwrap();
        for f in [&w, &w0] {
            for j in 1..=2 {
                assert_eq!(pair.perp(j, f).is_empty(), pair.top(j, f).is_empty());
            }
        }
    }
}

/// ω₀ from the kernel condition `⊥(ω − x∧Ω) = 0`, solved for `x`.
fn effective_oracle(omega: &ExactForm, sf: &SymplecticForm<Cq>) -> ExactForm {
    let dim = omega.dim();
    let src = Blade::all_of_grade(dim, omega.degree() - 2);
    let cols: Vec<Vec<Cq>> = src.iter().map(|b| sf.perp(&Form::term(dim, *b, int(1)).wedge(sf.omega())).to_vector()).collect();
    let a = Matrix::from_fn(cols[0].len(), cols.len(), |r, c| cols[c][r].clone());
    let rhs = sf.perp(omega).to_vector();
    let x = a.solve(&Matrix::from_fn(rhs.len(), 1, |r, _| rhs[r].clone())).expect("consistent");
    omega - &Form::from_vector(dim, omega.degree() - 2, &x.column(0)).wedge(sf.omega())
}

#[test]
fn hodge_lepage_examples() {
    let sf = SymplecticForm::new(standard_omega::<Cq>(8)).unwrap();
    let hplus = &Form::<Cq>::monomial(8, &[p(1), p(2), p(3), p(4)], int(1)) - &Form::monomial(8, &[q(1), q(2), q(3), q(4)], int(1));
    let (w0, w1) = hodge_lepage_decompose(&hplus, &sf).unwrap();
    assert_eq!((w0, w1.is_empty()), (hplus, true));

    let sigma = Form::monomial(8, &[q(1), q(2)], int(3));
    assert!(hodge_lepage_decompose(&sigma.wedge(sf.omega()), &sf).unwrap().0.is_empty());

    let mut r = rng(8);
    for _ in 0..10 {
        let w = random_form(&mut r, 8, 4, 0.6);
        let (w0, w1) = hodge_lepage_decompose(&w, &sf).unwrap();
        assert_eq!(w0, effective_oracle(&w, &sf));
        assert_eq!(&w0 + &w1.wedge(sf.omega()), w);
        assert_eq!(hodge_lepage_decompose(&w0, &sf).unwrap().0, w0);
    }
}

#[test]
fn hodge_lepage_on_the_plane_example() {
    // hess f = 1 on ℝ⁴ is already effective
    let sf = SymplecticForm::new(standard_omega::<Cq>(4)).unwrap();
    let hess = &Form::<Cq>::monomial(4, &[p(1), p(2)], int(1)) - &Form::monomial(4, &[q(1), q(2)], int(1));
    let (w0, w1) = hodge_lepage_decompose(&hess, &sf).unwrap();
    assert_eq!(w0, hess);
    assert!(w1.is_empty());
    let shifted = &hess + &sf.omega().scale(&Cq::from_ratio(5, 3));
    assert_eq!(hodge_lepage_decompose(&shifted, &sf).unwrap().0, hess);
}
