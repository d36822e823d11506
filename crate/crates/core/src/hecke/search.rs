use std::collections::HashSet;

use rayon::prelude::*;

use super::special::{special_report, SpecialReport};
use super::word::{HeckeWord, Letter};
use super::{lambda_field, Result};

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub word: HeckeWord,
    pub report: SpecialReport,
}

/// Lexicographically least rotation test.
fn is_min_rotation(ks: &[i64]) -> bool {
    (1..ks.len()).all(|r| {
        let rot = ks[r..].iter().chain(&ks[..r]);
        ks.iter().le(rot)
    })
}

fn sequences(m: usize, max_exponent: i64) -> Vec<Vec<i64>> {
    let alphabet: Vec<i64> = (1..=max_exponent).flat_map(|k| [k, -k]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                alphabet.iter().map(move |&k| {
                    let mut v = p.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// Special hyperbolic elements among the words `S^{k_1} T ⋯ S^{k_m} T`
/// with `2m ≤ max_letters` and `1 ≤ |k_i| ≤ max_exponent`.
///
/// Every cyclically reduced word not conjugate to a power of `S` or `T`
/// has a rotation of this shape, so only the least rotation of each
/// exponent sequence is evaluated. Hits are deduplicated by trace and the
/// multiset of exponents; conjugates with different multisets may remain.
pub fn search_special(q: u64, max_letters: usize, max_exponent: i64) -> Result<Vec<SearchHit>> {
    lambda_field(q)?;
    let mut candidates = Vec::new();
    for m in 1..=max_letters / 2 {
        candidates.extend(sequences(m, max_exponent).into_iter().filter(|ks| is_min_rotation(ks)));
    }
    let mut hits: Vec<(Vec<i64>, SearchHit)> = candidates
        .into_par_iter()
        .map(|ks| -> Result<Option<(Vec<i64>, SearchHit)>> {
            let word = HeckeWord::new(q, ks.iter().flat_map(|&k| [Letter::S(k), Letter::T]));
            let report = special_report(&word.eval()?)?;
            Ok(report.is_special.then(|| (ks, SearchHit { word, report })))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    hits.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let mut seen = HashSet::new();
    Ok(hits
        .into_iter()
        .filter(|(ks, h)| {
            let mut ms = ks.clone();
            ms.sort_unstable();
            seen.insert((h.report.trace.clone(), ms))
        })
        .map(|(_, h)| h)
        .collect())
}
