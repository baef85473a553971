use crate::matrix::IntMatrix;

/// Relevance flags of one triple `(i, k, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleClass {
    /// `A(i,k) + B(k,j) = C(i,j)`
    pub strong: bool,
    /// `Ã(i,k) + B̃(k,j) ≤ (Ã ⋆ B̃)(i,j) + 1`
    pub moderate: bool,
    /// `A(i,k) + B(k,j) − C̃(i,j) ≤ 3W`
    pub weak: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relevance {
    None,
    Weak,
    Moderate,
    Strong,
}

impl TripleClass {
    pub fn strongest(&self) -> Relevance {
        if self.strong {
            Relevance::Strong
        } else if self.moderate {
            Relevance::Moderate
        } else if self.weak {
            Relevance::Weak
        } else {
            Relevance::None
        }
    }
}

/// Classify `(i, k, j)` from the exact product `c` and the scaled estimate
/// `c_tilde = W·(Ã ⋆ B̃)`. Triples with an infinite term are irrelevant.
#[allow(clippy::too_many_arguments)]
pub fn classify_triple(
    a: &IntMatrix,
    b: &IntMatrix,
    c: &IntMatrix,
    c_tilde: &IntMatrix,
    w: i64,
    i: usize,
    k: usize,
    j: usize,
) -> TripleClass {
    let none = TripleClass { strong: false, moderate: false, weak: false };
    let (Some(x), Some(y)) = (a.get(i, k).get(), b.get(k, j).get()) else {
        return none;
    };
    let Some(ct) = c_tilde.get(i, j).get() else {
        return none;
    };
    let s = x + y;
    let p = ct.div_euclid(w);
    TripleClass {
        strong: c.get(i, j).get() == Some(s),
        moderate: x.div_euclid(w) + y.div_euclid(w) <= p + 1,
        weak: s - ct <= 3 * w,
    }
}
