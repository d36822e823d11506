use std::fmt;
use std::sync::Arc;

use super::{sort_exact, Result, SafError};
use crate::exactfield::{FieldElement, NumberField};

/// Intervals of lengths `l_0..l_{n-1}` laid out left to right, where
/// interval `i` lands at position `perm[i]` of the image order.
/// Permutations are 0-based here and 1-based in text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iet {
    lengths: Vec<FieldElement>,
    perm: Vec<usize>,
}

impl Iet {
    pub fn new(lengths: Vec<FieldElement>, perm: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.len() != perm.len() {
            return Err(SafError::InvalidIet("need as many lengths as permutation entries".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(SafError::InvalidIet(format!("{perm:?} is not a permutation")));
            }
        }
        for l in &lengths {
            l.check_same(&lengths[0])?;
            if l.sign()? <= 0 {
                return Err(SafError::InvalidIet(format!("length {l} is not positive")));
            }
        }
        Ok(Iet { lengths, perm })
    }

    pub fn identity(length: FieldElement) -> Result<Self> {
        Iet::new(vec![length], vec![0])
    }

    /// Pieces `(domain start, length, translation)` in any order; adjacent
    /// pieces with equal translation are merged.
    pub(crate) fn from_pieces(mut pieces: Vec<(FieldElement, FieldElement, FieldElement)>) -> Result<Self> {
        sort_exact(&mut pieces, |a, b| a.0.cmp_real(&b.0))?;
        let mut merged: Vec<(FieldElement, FieldElement, FieldElement)> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(last) if last.2 == p.2 && &last.0 + &last.1 == p.0 => last.1 = &last.1 + &p.1,
                _ => merged.push(p),
            }
        }
        let mut order: Vec<usize> = (0..merged.len()).collect();
        let images: Vec<FieldElement> = merged.iter().map(|(s, _, t)| s + t).collect();
        sort_exact(&mut order, |&a, &b| images[a].cmp_real(&images[b]))?;
        let mut perm = vec![0; merged.len()];
        for (pos, &i) in order.iter().enumerate() {
            perm[i] = pos;
        }
        Iet::new(merged.into_iter().map(|p| p.1).collect(), perm)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.lengths[0].field()
    }

    pub fn lengths(&self) -> &[FieldElement] {
        &self.lengths
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn total_length(&self) -> FieldElement {
        self.lengths.iter().skip(1).fold(self.lengths[0].clone(), |acc, l| &acc + l)
    }

    /// Left endpoints in the domain.
    pub fn starts(&self) -> Vec<FieldElement> {
        let mut acc = FieldElement::zero(self.field());
        self.lengths
            .iter()
            .map(|l| {
                let s = acc.clone();
                acc = &acc + l;
                s
            })
            .collect()
    }

    /// Lengths in image order.
    pub fn image_lengths(&self) -> Vec<FieldElement> {
        let mut out = self.lengths.clone();
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = self.lengths[i].clone();
        }
        out
    }

    /// `T(x)` for `0 <= x < total`.
    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        let ts = translations(self);
        for (s, (l, t)) in self.starts().iter().zip(self.lengths.iter().zip(&ts)) {
            if x.cmp_real(s)?.is_ge() && x.cmp_real(&(s + l))?.is_lt() {
                return Ok(x + t);
            }
        }
        Err(SafError::InvalidIet(format!("{x} is outside the domain")))
    }
}

impl fmt::Display for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        let ps: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "lengths [{}] perm [{}]", ls.join(", "), ps.join(", "))
    }
}

/// `t_i` = (length before `i` in image order) − (length before `i` in domain order).
pub fn translations(t: &Iet) -> Vec<FieldElement> {
    let mut acc = FieldElement::zero(t.field());
    let image_start: Vec<FieldElement> = t
        .image_lengths()
        .iter()
        .map(|l| {
            let s = acc.clone();
            acc = &acc + l;
            s
        })
        .collect();
    t.starts().iter().enumerate().map(|(i, s)| &image_start[t.perm[i]] - s).collect()
}

/// `x ↦ f(g(x))`, over the common refinement of `g`'s intervals and the
/// `g`-preimages of `f`'s.
pub fn compose(f: &Iet, g: &Iet) -> Result<Iet> {
    f.lengths[0].check_same(&g.lengths[0])?;
    if f.total_length() != g.total_length() {
        return Err(SafError::LengthMismatch);
    }
    let (fs, ft) = (f.starts(), translations(f));
    let (gs, gt) = (g.starts(), translations(g));
    let mut pieces = Vec::new();
    for i in 0..g.len() {
        let lo = &gs[i] + &gt[i];
        let hi = &lo + &g.lengths[i];
        for j in 0..f.len() {
            let flo = &fs[j];
            let fhi = flo + &f.lengths[j];
            let a = if lo.cmp_real(flo)?.is_ge() { lo.clone() } else { flo.clone() };
            let b = if hi.cmp_real(&fhi)?.is_le() { hi.clone() } else { fhi };
            if a.cmp_real(&b)?.is_lt() {
                pieces.push((&a - &gt[i], &b - &a, &gt[i] + &ft[j]));
            }
        }
    }
    Iet::from_pieces(pieces)
}

/// Lengths taken in image order, with the inverse permutation.
pub fn inverse(f: &Iet) -> Iet {
    let mut inv = vec![0; f.len()];
    for (i, &p) in f.perm.iter().enumerate() {
        inv[p] = i;
    }
    Iet { lengths: f.image_lengths(), perm: inv }
}
