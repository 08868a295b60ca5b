use std::collections::HashMap;

use crate::lambda::{self, Term};
use crate::rewrite::{self, Expr};
use crate::ski::{capp, CTerm};
use crate::stlcext::{build as e, ETerm, ETy};

/// Every untyped term of size at most `size` whose free indices are below
/// `free_bound`, smallest first.
pub fn enum_terms(size: usize, free_bound: usize) -> Vec<Term> {
    let mut memo = HashMap::new();
    (1..=size).flat_map(|n| exact_terms(n, free_bound, &mut memo)).collect()
}

fn exact_terms(n: usize, k: usize, memo: &mut HashMap<(usize, usize), Vec<Term>>) -> Vec<Term> {
    if let Some(v) = memo.get(&(n, k)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..k).map(lambda::var));
    } else {
        out.extend(exact_terms(n - 1, k + 1, memo).into_iter().map(lambda::lam));
        for i in 1..n - 1 {
            let fs = exact_terms(i, k, memo);
            let xs = exact_terms(n - 1 - i, k, memo);
            for f in &fs {
                for x in &xs {
                    out.push(lambda::app(f.clone(), x.clone()));
                }
            }
        }
    }
    memo.insert((n, k), out.clone());
    out
}

/// Number of terms of exactly `size` nodes with free indices below `k`, by
/// the counting recurrence.
pub fn term_count(size: usize, k: usize) -> u128 {
    fn go(n: usize, k: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
        if n == 0 {
            return 0;
        }
        if let Some(&c) = memo.get(&(n, k)) {
            return c;
        }
        let c = if n == 1 {
            k as u128
        } else {
            go(n - 1, k + 1, memo) + (1..n - 1).map(|i| go(i, k, memo) * go(n - 1 - i, k, memo)).sum::<u128>()
        };
        memo.insert((n, k), c);
        c
    }
    go(size, k, &mut HashMap::new())
}

// All binary trees by exact size, with leaves and a combining step.
fn binary_trees<T: Clone>(max_size: usize, leaves: &[T], nodes: &[fn(T, T) -> T]) -> Vec<T> {
    let mut by_size: Vec<Vec<T>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        if n == 1 {
            by_size[1] = leaves.to_vec();
            continue;
        }
        let mut out = Vec::new();
        for i in 1..n - 1 {
            for a in &by_size[i] {
                for b in &by_size[n - 1 - i] {
                    for node in nodes {
                        out.push(node(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size[n] = out;
    }
    by_size.into_iter().flatten().collect()
}

/// Every SK term of size at most `max_size`, smallest first.
pub fn enum_ski(max_size: usize) -> Vec<CTerm> {
    binary_trees(max_size, &[CTerm::S, CTerm::K], &[capp])
}

/// Every arithmetic expression of size at most `max_size`, smallest first.
pub fn enum_exprs(max_size: usize) -> Vec<Expr> {
    binary_trees(max_size, &[Expr::Zero, Expr::One], &[rewrite::add, rewrite::mul])
}

/// Every word over `{a, b}` of length at most `max_len`, shortest first.
pub fn enum_strings(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| [format!("{w}a"), format!("{w}b")]).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every extended term of size at most `max_size` with free indices below
/// `free_bound`, with Lam and injection annotations drawn from `palette`.
/// Terms need not be well typed.
pub fn enum_eterms(max_size: usize, free_bound: usize, palette: &[ETy]) -> Vec<ETerm> {
    let mut memo = HashMap::new();
    (1..=max_size).flat_map(|n| exact_eterms(n, free_bound, palette, &mut memo)).collect()
}

fn exact_eterms(n: usize, k: usize, palette: &[ETy], memo: &mut HashMap<(usize, usize), Vec<ETerm>>) -> Vec<ETerm> {
    if let Some(v) = memo.get(&(n, k)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..k).map(e::v));
    } else {
        for body in exact_eterms(n - 1, k + 1, palette, memo) {
            for t in palette {
                out.push(e::lam(t.clone(), body.clone()));
            }
        }
        for m in exact_eterms(n - 1, k, palette, memo) {
            out.push(e::fst(m.clone()));
            out.push(e::snd(m.clone()));
            for t in palette {
                out.push(e::inl(t.clone(), m.clone()));
                out.push(e::inr(t.clone(), m.clone()));
            }
        }
        for i in 1..n - 1 {
            let ls = exact_eterms(i, k, palette, memo);
            let rs = exact_eterms(n - 1 - i, k, palette, memo);
            for l in &ls {
                for r in &rs {
                    out.push(e::app(l.clone(), r.clone()));
                    out.push(e::pair(l.clone(), r.clone()));
                }
            }
        }
        for i in 1..n.saturating_sub(2) {
            for j in 1..n - 1 - i {
                let rest = n - 1 - i - j;
                let ss = exact_eterms(i, k, palette, memo);
                let n1s = exact_eterms(j, k + 1, palette, memo);
                let n2s = exact_eterms(rest, k + 1, palette, memo);
                for s in &ss {
                    for a in &n1s {
                        for b in &n2s {
                            out.push(e::case(s.clone(), a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
    }
    memo.insert((n, k), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::var;
    use crate::stlcext::{ebase, sum};
    use std::collections::HashSet;

    // Direct recursive count, without memoization or the shared recurrence.
    fn naive_count(n: usize, k: usize) -> u128 {
        match n {
            0 => 0,
            1 => k as u128,
            _ => {
                let mut c = naive_count(n - 1, k + 1);
                for i in 1..n - 1 {
                    c += naive_count(i, k) * naive_count(n - 1 - i, k);
                }
                c
            }
        }
    }

    #[test]
    fn smallest_enumeration() {
        assert_eq!(enum_terms(1, 2), vec![var(0), var(1)]);
    }

    #[test]
    fn counts_match_recurrence_and_are_distinct() {
        for k in 0..4 {
            for n in 1..=7 {
                let all = enum_terms(n, k);
                let expected: u128 = (1..=n).map(|i| naive_count(i, k)).sum();
                assert_eq!(all.len() as u128, expected, "n={n} k={k}");
                assert_eq!(term_count(n, k), naive_count(n, k));
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert!(all.iter().all(|t| t.size() <= n && t.free_below(k)));
            }
        }
    }

    #[test]
    fn ski_and_expr_counts() {
        // Binary trees with l leaves: Catalan(l - 1) shapes, 2^l leaf labels.
        assert_eq!(enum_ski(5).len(), 2 + 4 + 2 * 8);
        assert_eq!(enum_exprs(3).len(), 2 + 2 * 4);
        assert_eq!(enum_exprs(9).len(), 2 + 8 + 64 + 640 + 7168);
        assert_eq!(enum_strings(10).len(), 2047);
    }

    #[test]
    fn eterms_distinct_and_bounded() {
        let palette = [ebase(0), sum(ebase(0), ebase(1))];
        let all = enum_eterms(4, 1, &palette);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|t| t.size() <= 4));
        assert!(all.iter().any(|t| matches!(t, ETerm::Case(..))));
    }
}
