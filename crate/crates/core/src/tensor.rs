//! Dense frame-component tensors of arbitrary rank and their metric norms.

use crate::error::Result;
use crate::linalg::{BilinearForm, Endomorphism};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// Contravariant (vector) index.
    Upper,
    /// Covariant (form) index.
    Lower,
}

/// Row-major components over `slots.len()` indices of range 3.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<S> {
    slots: Vec<Slot>,
    data: Vec<S>,
}

fn strides(rank: usize) -> Vec<usize> {
    (0..rank)
        .map(|s| 3usize.pow((rank - 1 - s) as u32))
        .collect()
}

impl<S: Scalar> DenseTensor<S> {
    pub fn from_fn(slots: Vec<Slot>, f: impl Fn(&[usize]) -> S) -> Self {
        let rank = slots.len();
        let len = 3usize.pow(rank as u32);
        let st = strides(rank);
        let mut idx = vec![0usize; rank];
        let data = (0..len)
            .map(|flat| {
                for (s, stride) in st.iter().enumerate() {
                    idx[s] = (flat / stride) % 3;
                }
                f(&idx)
            })
            .collect();
        Self { slots, data }
    }

    pub fn zero(slots: Vec<Slot>) -> Self {
        Self::from_fn(slots, |_| S::zero())
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        let st = strides(self.rank());
        &self.data[idx.iter().zip(&st).map(|(i, s)| i * s).sum::<usize>()]
    }

    pub fn components(&self) -> &[S] {
        &self.data
    }

    pub fn from_form(b: &BilinearForm<S>) -> Self {
        Self::from_fn(vec![Slot::Lower, Slot::Lower], |i| b.0[i[0]][i[1]].clone())
    }

    /// Index order `(output, input)`.
    pub fn from_endomorphism(a: &Endomorphism<S>) -> Self {
        Self::from_fn(vec![Slot::Upper, Slot::Lower], |i| a.0[i[0]][i[1]].clone())
    }

    /// Applies a 3×3 matrix along one slot: `T'[..a..] = Σ_b m[a][b] T[..b..]`.
    fn transform_slot(&self, slot: usize, m: &[[S; 3]; 3]) -> Self {
        let st = strides(self.rank());
        let stride = st[slot];
        let data = (0..self.data.len())
            .map(|flat| {
                let a = (flat / stride) % 3;
                let base = flat - a * stride;
                (0..3).fold(S::zero(), |acc, b| {
                    acc + m[a][b].clone() * self.data[base + b * stride].clone()
                })
            })
            .collect();
        Self {
            slots: self.slots.clone(),
            data,
        }
    }
}

/// Full self-contraction of `t`, pairing lower slots through `g⁻¹` and upper
/// slots through `g`. May be negative for an indefinite metric.
pub fn pseudo_norm_sq<S: Scalar>(t: &DenseTensor<S>, g: &BilinearForm<S>) -> Result<S> {
    let gi = g.inverse()?;
    let mut dual = t.clone();
    for (s, slot) in t.slots.iter().enumerate() {
        let m = match slot {
            Slot::Lower => &gi.0,
            Slot::Upper => &g.0,
        };
        dual = dual.transform_slot(s, m);
    }
    Ok(t.data
        .iter()
        .zip(&dual.data)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}
