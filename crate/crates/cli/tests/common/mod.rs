#![allow(dead_code)]

use paraclass_core::models::{
    model_general, model_k_greater, model_k_less, model_para_sasakian_heisenberg,
};
use paraclass_core::{Exact, LieFrameModel, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x7061_7261;

pub fn q(n: i64, d: i64) -> Exact {
    Exact::from_ratio(n, d)
}

pub fn random_rational(rng: &mut impl Rng) -> Exact {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_general(n: usize, seed: u64) -> Vec<LieFrameModel<Exact>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let c = [(); 3].map(|_| random_rational(&mut rng));
            let [c2, c3, c4] = c;
            model_general(c2, c3, c4)
        })
        .collect()
}

pub fn k_greater_lambdas() -> Vec<Exact> {
    [
        (0, 1),
        (1, 1),
        (-1, 1),
        (1, 2),
        (-1, 2),
        (2, 1),
        (-2, 1),
        (3, 1),
        (-3, 1),
    ]
    .iter()
    .map(|&(n, d)| q(n, d))
    .collect()
}

pub fn k_less_lambdas() -> Vec<Exact> {
    [(1, 2), (-1, 2), (1, 1), (-1, 1), (2, 1), (-2, 1)]
        .iter()
        .map(|&(n, d)| q(n, d))
        .collect()
}

/// The bundled families over their listed parameters, both signs of ε.
pub fn family_corpus() -> Vec<LieFrameModel<Exact>> {
    let mut out = Vec::new();
    for eps in [1, -1] {
        for l in k_greater_lambdas() {
            out.push(model_k_greater(l, eps));
        }
        for l in k_less_lambdas() {
            out.push(model_k_less(l, eps).expect("nonzero λ"));
        }
    }
    out.push(model_para_sasakian_heisenberg());
    out
}

/// Family corpus followed by 200 seeded random general models.
pub fn full_corpus() -> Vec<LieFrameModel<Exact>> {
    let mut out = family_corpus();
    out.extend(random_general(200, SEED));
    out
}
