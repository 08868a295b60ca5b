//! The shifting and substitution lemma inventory as executable equalities.

use std::fmt;

use crate::lambda::{shift, Term};

/// A substitution function `subst(k, N, M)`, so the lemmas can be run against
/// alternative definitions.
pub type SubstFn = fn(usize, &Term, &Term) -> Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    ShiftZero,
    ShiftShift,
    ShiftShiftComm,
    ShiftShiftSucc,
    SubstShiftCancel,
    /// `c <= k`: shift d c (M[k := N]) = (shift d c M)[k+d := shift d c N]
    ShiftSubstBelow,
    /// `k <= c`: shift d c (M[k := N]) = (shift d (c+1) M)[k := shift d c N]
    ShiftSubstAbove,
    SubstSubst,
    SubstSubstGen,
    SubstSubstOuter,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::ShiftZero,
        Lemma::ShiftShift,
        Lemma::ShiftShiftComm,
        Lemma::ShiftShiftSucc,
        Lemma::SubstShiftCancel,
        Lemma::ShiftSubstBelow,
        Lemma::ShiftSubstAbove,
        Lemma::SubstSubst,
        Lemma::SubstSubstGen,
        Lemma::SubstSubstOuter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::ShiftZero => "shift_zero",
            Lemma::ShiftShift => "shift_shift",
            Lemma::ShiftShiftComm => "shift_shift_comm",
            Lemma::ShiftShiftSucc => "shift_shift_succ",
            Lemma::SubstShiftCancel => "subst_shift_cancel",
            Lemma::ShiftSubstBelow => "shift_subst_below",
            Lemma::ShiftSubstAbove => "shift_subst_above",
            Lemma::SubstSubst => "subst_subst",
            Lemma::SubstSubstGen => "subst_subst_gen",
            Lemma::SubstSubstOuter => "subst_subst_outer",
        }
    }

    /// Whether the lemma quantifies over a substituted term `N`.
    pub fn uses_n(self) -> bool {
        !matches!(self, Lemma::ShiftZero | Lemma::ShiftShift | Lemma::ShiftShiftComm | Lemma::ShiftShiftSucc)
    }

    /// Whether the lemma also quantifies over a second term `P`.
    pub fn uses_p(self) -> bool {
        matches!(self, Lemma::SubstSubst | Lemma::SubstSubstGen | Lemma::SubstSubstOuter)
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One lemma with its numeric parameters fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub lemma: Lemma,
    pub params: [usize; 4],
}

impl Instance {
    fn new(lemma: Lemma, params: [usize; 4]) -> Self {
        Instance { lemma, params }
    }

    /// Evaluates both sides on `m` (and `n`, `p` where used).
    pub fn holds(&self, subst: SubstFn, m: &Term, n: &Term, p: &Term) -> bool {
        let [a, b, c, d] = self.params;
        match self.lemma {
            Lemma::ShiftZero => shift(0, a, m) == *m,
            Lemma::ShiftShift => shift(a, c, &shift(b, c, m)) == shift(a + b, c, m),
            // a=d1 b=d2 c=c1 d=c2, with c1 <= c2
            Lemma::ShiftShiftComm => shift(a, c, &shift(b, d, m)) == shift(b, d + a, &shift(a, c, m)),
            Lemma::ShiftShiftSucc => shift(1, a + 1, &shift(1, a, m)) == shift(2, a, m),
            Lemma::SubstShiftCancel => subst(a, n, &shift(1, a, m)) == *m,
            // a=d b=c c=k
            Lemma::ShiftSubstBelow => shift(a, b, &subst(c, n, m)) == subst(c + a, &shift(a, b, n), &shift(a, b, m)),
            Lemma::ShiftSubstAbove => shift(a, b, &subst(c, n, m)) == subst(c, &shift(a, b, n), &shift(a, b + 1, m)),
            Lemma::SubstSubst => {
                subst(0, p, &subst(0, n, m)) == subst(0, &subst(0, p, n), &subst(1, &shift(1, 0, p), m))
            }
            // a=k b=j c=l
            Lemma::SubstSubstGen => {
                let (k, j, l) = (a, b, c);
                let p2 = shift(l, 0, p);
                let n2 = shift(k + l + 1, 0, n);
                subst(k, &p2, &subst(k + j + 1, &n2, m))
                    == subst(k + j, &subst(k, &p2, &n2), &subst(k, &shift(1, k + j, &p2), m))
            }
            // a=k b=j
            Lemma::SubstSubstOuter => {
                let (k, j) = (a, b);
                subst(k + j, p, &subst(k, n, m)) == subst(k, &subst(k + j, p, n), &subst(k + j + 1, &shift(1, k, p), m))
            }
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.params;
        match self.lemma {
            Lemma::ShiftZero => write!(f, "{} c={a}", self.lemma),
            Lemma::ShiftShift => write!(f, "{} d1={a} d2={b} c={c}", self.lemma),
            Lemma::ShiftShiftComm => write!(f, "{} d1={a} d2={b} c1={c} c2={d}", self.lemma),
            Lemma::ShiftShiftSucc => write!(f, "{} c={a}", self.lemma),
            Lemma::SubstShiftCancel => write!(f, "{} k={a}", self.lemma),
            Lemma::ShiftSubstBelow | Lemma::ShiftSubstAbove => write!(f, "{} d={a} c={b} k={c}", self.lemma),
            Lemma::SubstSubst => write!(f, "{}", self.lemma),
            Lemma::SubstSubstGen => write!(f, "{} k={a} j={b} l={c}", self.lemma),
            Lemma::SubstSubstOuter => write!(f, "{} k={a} j={b}", self.lemma),
        }
    }
}

/// Every lemma instance over the parameter ranges the suite quantifies:
/// cutoffs, levels and amounts below 3, inner offsets below 2.
pub fn debruijn_instances() -> Vec<Instance> {
    const R: usize = 3;
    let mut out = Vec::new();
    for c in 0..R {
        out.push(Instance::new(Lemma::ShiftZero, [c, 0, 0, 0]));
        out.push(Instance::new(Lemma::ShiftShiftSucc, [c, 0, 0, 0]));
        out.push(Instance::new(Lemma::SubstShiftCancel, [c, 0, 0, 0]));
        for d1 in 0..R {
            for d2 in 0..R {
                out.push(Instance::new(Lemma::ShiftShift, [d1, d2, c, 0]));
                for c2 in c..R {
                    out.push(Instance::new(Lemma::ShiftShiftComm, [d1, d2, c, c2]));
                }
            }
        }
    }
    for d in 1..R {
        for c in 0..R {
            for k in 0..R {
                if c <= k {
                    out.push(Instance::new(Lemma::ShiftSubstBelow, [d, c, k, 0]));
                }
                if k <= c {
                    out.push(Instance::new(Lemma::ShiftSubstAbove, [d, c, k, 0]));
                }
            }
        }
    }
    out.push(Instance::new(Lemma::SubstSubst, [0; 4]));
    for k in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                out.push(Instance::new(Lemma::SubstSubstGen, [k, j, l, 0]));
            }
        }
    }
    for k in 0..R {
        for j in 0..2 {
            out.push(Instance::new(Lemma::SubstSubstOuter, [k, j, 0, 0]));
        }
    }
    out.sort_by_key(|i| i.lemma);
    out
}
