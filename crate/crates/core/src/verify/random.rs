//! Seeded generators for the randomized checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{FieldElement, FieldError, NumberField};
use crate::hecke::{HeckeWord, Letter};
use crate::saf::{sort_exact_elements, Iet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Small integer coefficients in the power basis.
pub fn element(rng: &mut impl Rng, field: &Arc<NumberField>, bound: i64) -> FieldElement {
    let c: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    FieldElement::from_i64_coeffs(field, &c)
}

pub fn positive(rng: &mut impl Rng, field: &Arc<NumberField>, bound: i64) -> Result<FieldElement, FieldError> {
    loop {
        let x = element(rng, field, bound);
        match x.sign()? {
            1 => return Ok(x),
            -1 => return Ok(-x),
            _ => {}
        }
    }
}

/// `n` positive lengths under a uniformly random permutation.
pub fn iet(rng: &mut impl Rng, field: &Arc<NumberField>, n: usize) -> crate::saf::Result<Iet> {
    let lengths = (0..n).map(|_| positive(rng, field, 4)).collect::<Result<Vec<_>, _>>()?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Iet::new(lengths, perm)
}

/// An IET of total length `total` with `n` pieces cut at `total·y/(1+y)`
/// for random positive `y`.
pub fn iet_with_total(rng: &mut impl Rng, total: &FieldElement, n: usize) -> crate::saf::Result<Iet> {
    let field = total.field().clone();
    let one = FieldElement::one(&field);
    let mut cuts = vec![FieldElement::zero(&field), total.clone()];
    while cuts.len() < n + 1 {
        let y = positive(rng, &field, 4)?;
        let c = &(total * &y) * &(&one + &y).inv()?;
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    sort_exact_elements(&mut cuts)?;
    let lengths: Vec<FieldElement> = cuts.windows(2).map(|w| &w[1] - &w[0]).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Iet::new(lengths, perm)
}

/// `S^{k_1} T … S^{k_m} T` with `1 <= |k_i| <= 3` and `m <= max_blocks`.
pub fn word(rng: &mut impl Rng, q: u64, max_blocks: usize) -> HeckeWord {
    let m = rng.gen_range(1..=max_blocks);
    let mut letters = Vec::with_capacity(2 * m);
    for _ in 0..m {
        let k = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        letters.push(Letter::S(k));
        letters.push(Letter::T);
    }
    HeckeWord::new(q, letters)
}
