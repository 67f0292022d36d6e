#![allow(dead_code)]

use mongeampere::exterior::Blade;
use mongeampere::scalar::rat;
use mongeampere::{Cq, ExactForm, Field, Form};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Cq {
    let d = rng.gen_range(1..=4);
    Cq::new(rat(rng.gen_range(-3..=3), d), rat(rng.gen_range(-3..=3), d))
}

pub fn real_rational(rng: &mut ChaCha8Rng) -> Cq {
    Cq::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Random k-form on ℝ^dim with about `density` of the blades populated.
pub fn random_form(rng: &mut ChaCha8Rng, dim: usize, degree: usize, density: f64) -> ExactForm {
    let mut terms = Vec::new();
    for b in Blade::all_of_grade(dim, degree) {
        if rng.gen_bool(density) {
            terms.push((b, gaussian(rng)));
        }
    }
    Form::from_terms(dim, degree, terms)
}

pub fn random_real_form(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> ExactForm {
    let terms: Vec<(Blade, Cq)> = Blade::all_of_grade(dim, degree).into_iter().map(|b| (b, real_rational(rng))).collect();
    Form::from_terms(dim, degree, terms)
}

pub fn int(k: i64) -> Cq {
    Cq::from_i64(k)
}
