//! Terminating rewriting case studies: a unit/annihilator arithmetic TRS and
//! string rewriting over `{a, b}`, together with critical-pair analysis.
//!
//! The arithmetic rule set is one admissible choice among size-decreasing
//! unit and annihilator laws:
//!
//! ```text
//! 0 + e → e    e + 0 → e    1 * e → e    e * 1 → e    0 * e → 0    e * 0 → 0
//! ```

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::ars::{joinable, Rel};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Zero,
    One,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

pub fn add(a: Expr, b: Expr) -> Expr {
    Expr::Add(Box::new(a), Box::new(b))
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

impl Expr {
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Add(a, b) | Expr::Mul(a, b) => vec![a, b],
            _ => vec![],
        }
    }
}

/// Node count; every arithmetic rule strictly decreases it.
pub fn expr_size(e: &Expr) -> usize {
    match e {
        Expr::Zero | Expr::One => 1,
        Expr::Add(a, b) | Expr::Mul(a, b) => 1 + expr_size(a) + expr_size(b),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // prec: 1 for +, 2 for *, 3 for atoms; both operators left-associative.
        fn go(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let (prec, op, a, b) = match e {
                Expr::Zero => return f.write_str("0"),
                Expr::One => return f.write_str("1"),
                Expr::Add(a, b) => (1, "+", a, b),
                Expr::Mul(a, b) => (2, "*", a, b),
            };
            if prec < min {
                f.write_str("(")?;
            }
            go(a, prec, f)?;
            write!(f, " {op} ")?;
            go(b, prec + 1, f)?;
            if prec < min {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// The six arithmetic rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithRule {
    ZeroAdd,
    AddZero,
    OneMul,
    MulOne,
    ZeroMul,
    MulZero,
}

impl ArithRule {
    pub const ALL: [ArithRule; 6] = [
        ArithRule::ZeroAdd,
        ArithRule::AddZero,
        ArithRule::OneMul,
        ArithRule::MulOne,
        ArithRule::ZeroMul,
        ArithRule::MulZero,
    ];

    /// Applies the rule at the root.
    pub fn apply(self, e: &Expr) -> Option<Expr> {
        use Expr::*;
        match (self, e) {
            (ArithRule::ZeroAdd, Add(a, b)) if **a == Zero => Some((**b).clone()),
            (ArithRule::AddZero, Add(a, b)) if **b == Zero => Some((**a).clone()),
            (ArithRule::OneMul, Mul(a, b)) if **a == One => Some((**b).clone()),
            (ArithRule::MulOne, Mul(a, b)) if **b == One => Some((**a).clone()),
            (ArithRule::ZeroMul, Mul(a, _)) if **a == Zero => Some(Zero),
            (ArithRule::MulZero, Mul(_, b)) if **b == Zero => Some(Zero),
            _ => None,
        }
    }

    /// Left-hand side as a pattern.
    fn lhs(self) -> Pattern {
        use Pattern::*;
        let hole = || Box::new(Hole);
        match self {
            ArithRule::ZeroAdd => Add(Box::new(Zero), hole()),
            ArithRule::AddZero => Add(hole(), Box::new(Zero)),
            ArithRule::OneMul => Mul(Box::new(One), hole()),
            ArithRule::MulOne => Mul(hole(), Box::new(One)),
            ArithRule::ZeroMul => Mul(Box::new(Zero), hole()),
            ArithRule::MulZero => Mul(hole(), Box::new(Zero)),
        }
    }
}

impl fmt::Display for ArithRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithRule::ZeroAdd => "0+e",
            ArithRule::AddZero => "e+0",
            ArithRule::OneMul => "1*e",
            ArithRule::MulOne => "e*1",
            ArithRule::ZeroMul => "0*e",
            ArithRule::MulZero => "e*0",
        })
    }
}

fn expr_steps_into(e: &Expr, out: &mut Vec<(ArithRule, Expr)>) {
    for rule in ArithRule::ALL {
        if let Some(r) = rule.apply(e) {
            out.push((rule, r));
        }
    }
    match e {
        Expr::Add(a, b) | Expr::Mul(a, b) => {
            let rebuild = |x: Expr, y: Expr| match e {
                Expr::Add(..) => add(x, y),
                _ => mul(x, y),
            };
            let mut left = Vec::new();
            expr_steps_into(a, &mut left);
            out.extend(left.into_iter().map(|(r, a2)| (r, rebuild(a2, (**b).clone()))));
            let mut right = Vec::new();
            expr_steps_into(b, &mut right);
            out.extend(right.into_iter().map(|(r, b2)| (r, rebuild((**a).clone(), b2))));
        }
        _ => {}
    }
}

/// Labeled one-step reducts, outermost-leftmost first (may repeat terms).
pub fn expr_steps(e: &Expr) -> Vec<(ArithRule, Expr)> {
    let mut out = Vec::new();
    expr_steps_into(e, &mut out);
    out
}

/// One-step reducts, sorted by (size, printed form), without duplicates.
pub fn expr_reducts(e: &Expr) -> Vec<Expr> {
    let mut seen = HashSet::new();
    let mut out: Vec<Expr> = expr_steps(e).into_iter().map(|(_, t)| t).filter(|t| seen.insert(t.clone())).collect();
    out.sort_by_cached_key(|t| (expr_size(t), t.to_string()));
    out
}

pub fn expr_rel() -> Rel<Expr> {
    Rel::new("arith", expr_reducts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Pattern {
    Hole,
    Zero,
    One,
    Add(Box<Pattern>, Box<Pattern>),
    Mul(Box<Pattern>, Box<Pattern>),
}

// Most general common instance of two linear patterns with disjoint holes.
fn unify(p: &Pattern, q: &Pattern) -> Option<Pattern> {
    use Pattern::*;
    match (p, q) {
        (Hole, x) | (x, Hole) => Some(x.clone()),
        (Zero, Zero) => Some(Zero),
        (One, One) => Some(One),
        (Add(a, b), Add(c, d)) => Some(Add(Box::new(unify(a, c)?), Box::new(unify(b, d)?))),
        (Mul(a, b), Mul(c, d)) => Some(Mul(Box::new(unify(a, c)?), Box::new(unify(b, d)?))),
        _ => None,
    }
}

// Holes become `0`; the rules' holes never occur under a constant, so any
// ground choice is representative.
fn ground(p: &Pattern) -> Expr {
    match p {
        Pattern::Hole | Pattern::Zero => Expr::Zero,
        Pattern::One => Expr::One,
        Pattern::Add(a, b) => add(ground(a), ground(b)),
        Pattern::Mul(a, b) => mul(ground(a), ground(b)),
    }
}

/// A root overlap between two arithmetic rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprCriticalPair {
    pub rules: (ArithRule, ArithRule),
    pub source: Expr,
    pub left: Expr,
    pub right: Expr,
}

/// Root overlaps of the fixed arithmetic rule set. Left-hand sides only have
/// constants below the root, which are not redexes, so root overlaps are all
/// there is.
pub fn expr_critical_pairs() -> Vec<ExprCriticalPair> {
    let mut out = Vec::new();
    for (i, r1) in ArithRule::ALL.iter().enumerate() {
        for r2 in &ArithRule::ALL[i + 1..] {
            if let Some(p) = unify(&r1.lhs(), &r2.lhs()) {
                let source = ground(&p);
                out.push(ExprCriticalPair {
                    rules: (*r1, *r2),
                    left: r1.apply(&source).expect("unifier instance matches"),
                    right: r2.apply(&source).expect("unifier instance matches"),
                    source,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrsError {
    #[error("symbol {symbol:?} at position {position} is outside the alphabet {{a, b}}")]
    Alphabet { symbol: char, position: usize },
    #[error("rule {lhs} -> {rhs} is not length-decreasing")]
    NotDecreasing { lhs: String, rhs: String },
    #[error("rule line {line}: {message}")]
    RuleSyntax { line: usize, message: String },
}

pub fn check_alphabet(w: &str) -> Result<(), SrsError> {
    match w.char_indices().find(|(_, ch)| !matches!(ch, 'a' | 'b')) {
        Some((position, symbol)) => Err(SrsError::Alphabet { symbol, position }),
        None => Ok(()),
    }
}

/// A length-decreasing string rule over `{a, b}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrRule {
    lhs: String,
    rhs: String,
}

impl StrRule {
    pub fn new(lhs: impl Into<String>, rhs: impl Into<String>) -> Result<Self, SrsError> {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        check_alphabet(&lhs)?;
        check_alphabet(&rhs)?;
        if rhs.len() >= lhs.len() {
            return Err(SrsError::NotDecreasing { lhs, rhs });
        }
        Ok(StrRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &str {
        &self.lhs
    }

    pub fn rhs(&self) -> &str {
        &self.rhs
    }
}

impl fmt::Display for StrRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.lhs, self.rhs)
    }
}

/// `{aa → a, bb → b}`.
pub fn idempotency_rules() -> Vec<StrRule> {
    vec![StrRule::new("aa", "a").expect("valid rule"), StrRule::new("bb", "b").expect("valid rule")]
}

/// Parses a rule file: one `lhs -> rhs` per line; blank lines and `#`
/// comments are skipped.
pub fn parse_rules(text: &str) -> Result<Vec<StrRule>, SrsError> {
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| SrsError::RuleSyntax { line: i + 1, message: "expected `lhs -> rhs`".into() })?;
        rules.push(StrRule::new(lhs.trim(), rhs.trim())?);
    }
    Ok(rules)
}

/// Labeled one-step reducts, by position then rule order (may repeat).
pub fn srs_steps<'r>(w: &str, rules: &'r [StrRule]) -> Result<Vec<(&'r StrRule, String)>, SrsError> {
    check_alphabet(w)?;
    let mut out = Vec::new();
    for pos in 0..w.len() {
        for rule in rules {
            if w[pos..].starts_with(rule.lhs.as_str()) {
                let mut s = String::with_capacity(w.len());
                s.push_str(&w[..pos]);
                s.push_str(&rule.rhs);
                s.push_str(&w[pos + rule.lhs.len()..]);
                out.push((rule, s));
            }
        }
    }
    Ok(out)
}

/// All distinct one-step reducts, sorted by (length, string).
pub fn srs_reducts(w: &str, rules: &[StrRule]) -> Result<Vec<String>, SrsError> {
    let mut seen = HashSet::new();
    let mut out: Vec<String> =
        srs_steps(w, rules)?.into_iter().map(|(_, s)| s).filter(|s| seen.insert(s.clone())).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// String rewriting as a relation; strings outside the alphabet have no
/// reducts.
pub fn srs_rel(label: impl Into<String>, rules: Vec<StrRule>) -> Rel<String> {
    Rel::new(label, move |w: &String| srs_reducts(w, &rules).unwrap_or_default())
}

pub fn str_len(w: &str) -> usize {
    w.chars().count()
}

/// Two one-step reducts of an overlap of rule left-hand sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    pub source: String,
    /// Reduct by the first rule (applied at position 0).
    pub left: String,
    /// Reduct by the second rule (applied at `overlap_position`).
    pub right: String,
    pub overlap_position: usize,
    pub rules: (StrRule, StrRule),
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "source={} left={} right={} position={} rules={}/{}",
            self.source, self.left, self.right, self.overlap_position, self.rules.0, self.rules.1
        )
    }
}

/// Critical pairs over every ordered rule pair: proper suffix/prefix overlaps
/// and containments (a self-containment at position 0 is the same redex and
/// is skipped).
pub fn critical_pairs(rules: &[StrRule]) -> Vec<CriticalPair> {
    let mut out: Vec<CriticalPair> = Vec::new();
    let mut push = |cp: CriticalPair| {
        if !out.contains(&cp) {
            out.push(cp);
        }
    };
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            let (l1, l2) = (r1.lhs.as_str(), r2.lhs.as_str());
            // Suffix of l1 of length k equals prefix of l2.
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    let pos = l1.len() - k;
                    push(CriticalPair {
                        source: format!("{l1}{}", &l2[k..]),
                        left: format!("{}{}", r1.rhs, &l2[k..]),
                        right: format!("{}{}", &l1[..pos], r2.rhs),
                        overlap_position: pos,
                        rules: (r1.clone(), r2.clone()),
                    });
                }
            }
            // l2 inside l1.
            if l2.len() <= l1.len() {
                for pos in 0..=l1.len() - l2.len() {
                    if i == j && pos == 0 {
                        continue;
                    }
                    if &l1[pos..pos + l2.len()] == l2 {
                        push(CriticalPair {
                            source: l1.to_string(),
                            left: r1.rhs.clone(),
                            right: format!("{}{}{}", &l1[..pos], r2.rhs, &l1[pos + l2.len()..]),
                            overlap_position: pos,
                            rules: (r1.clone(), r2.clone()),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Whether a critical pair's reducts join within `depth` steps each.
pub fn critical_pair_joinable(cp: &CriticalPair, rules: &[StrRule], depth: usize) -> bool {
    let rel = srs_rel("srs", rules.to_vec());
    joinable(&rel, &cp.left, &cp.right, depth).is_some()
}

/// Collapses every maximal run of equal letters to one letter.
pub fn collapse_runs(w: &str) -> String {
    let mut out = String::with_capacity(w.len());
    for ch in w.chars() {
        if !out.ends_with(ch) {
            out.push(ch);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::Expr::{One, Zero};
    use super::*;

    #[test]
    fn expr_reduct_examples() {
        assert!(expr_reducts(&Zero).is_empty());
        let e = add(mul(One, Zero), Zero);
        assert_eq!(expr_reducts(&e), vec![add(Zero, Zero), mul(One, Zero)]);
        assert_eq!(expr_size(&Zero), 1);
    }

    #[test]
    fn expr_printing() {
        assert_eq!(add(mul(One, Zero), Zero).to_string(), "1 * 0 + 0");
        assert_eq!(mul(add(One, Zero), Zero).to_string(), "(1 + 0) * 0");
        assert_eq!(add(One, add(Zero, One)).to_string(), "1 + (0 + 1)");
    }

    #[test]
    fn expr_root_overlaps_join() {
        let cps = expr_critical_pairs();
        let sources: Vec<String> = cps.iter().map(|cp| cp.source.to_string()).collect();
        assert_eq!(sources, ["0 + 0", "1 * 1", "1 * 0", "0 * 1", "0 * 0"]);
        assert!(cps.iter().all(|cp| cp.left == cp.right));
    }

    #[test]
    fn srs_reduct_examples() {
        let rules = idempotency_rules();
        assert_eq!(srs_reducts("aa", &rules).unwrap(), ["a"]);
        assert_eq!(srs_reducts("aaa", &rules).unwrap(), ["aa"]);
        assert!(srs_reducts("ab", &rules).unwrap().is_empty());
        assert_eq!(srs_reducts("aabb", &rules).unwrap(), ["aab", "abb"]);
        assert_eq!(srs_reducts("abc", &rules), Err(SrsError::Alphabet { symbol: 'c', position: 2 }));
    }

    #[test]
    fn rules_must_decrease() {
        assert!(StrRule::new("a", "ab").is_err());
        assert!(StrRule::new("ab", "ba").is_err());
        assert!(StrRule::new("ab", "").is_ok());
    }

    #[test]
    fn rule_file_parsing() {
        let rules = parse_rules("# idempotency\naa -> a\n\nbb->b\n").unwrap();
        assert_eq!(rules, idempotency_rules());
        assert!(matches!(parse_rules("aa a"), Err(SrsError::RuleSyntax { line: 1, .. })));
    }

    #[test]
    fn critical_pair_examples() {
        let aa = vec![StrRule::new("aa", "a").unwrap()];
        let cps = critical_pairs(&aa);
        assert_eq!(cps.len(), 1);
        assert_eq!((cps[0].source.as_str(), cps[0].left.as_str(), cps[0].right.as_str()), ("aaa", "aa", "aa"));
        assert_eq!(cps[0].overlap_position, 1);
        assert_eq!(critical_pairs(&idempotency_rules()).len(), 2);
    }

    #[test]
    fn containment_overlaps_are_found() {
        let rules = vec![StrRule::new("aba", "a").unwrap(), StrRule::new("b", "").unwrap()];
        let cps = critical_pairs(&rules);
        assert!(cps
            .iter()
            .any(|cp| cp.source == "aba" && cp.left == "a" && cp.right == "aa" && cp.overlap_position == 1));
        // aba self-overlap on the shared `a`.
        assert!(cps.iter().any(|cp| cp.source == "ababa" && cp.overlap_position == 2));
    }

    #[test]
    fn run_collapse() {
        assert_eq!(collapse_runs("aaabbb"), "ab");
        assert_eq!(collapse_runs("abba"), "aba");
        assert_eq!(collapse_runs(""), "");
    }
}
