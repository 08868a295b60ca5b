use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lambda::{self, Term};
use crate::rewrite::{self, Expr};
use crate::ski::{capp, CTerm};
use crate::stlc::{self, Context, TTerm, Ty};
use crate::stlcext::{build as e, earr, ebase, prod, sum, ETerm, ETy};

/// Attempts per premise before a typed generation gives up.
pub const GEN_ATTEMPTS: usize = 200;

// Rule applications allowed per top-level typed generation. Each premise may
// spend at most half of what its parent has left, so a hopeless branch cannot
// starve the alternatives above it.
const FUEL: usize = 1000;

// Base types drawn by the type generator: b0 and b1.
const BASES: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_size: usize,
    pub max_free_index: usize,
    pub type_depth: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 1, max_size: 12, max_free_index: 4, type_depth: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypedSystem {
    Stlc,
    StlcExt,
}

/// A well-typed term together with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Typed {
    Stlc(TTerm, Ty),
    StlcExt(ETerm, ETy),
}

/// Typed generation exhausted its backtracking budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GiveUp;

pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

pub fn gen_term(cfg: GenConfig) -> Term {
    Generator::new(cfg).term()
}

pub fn gen_ski(cfg: GenConfig) -> CTerm {
    Generator::new(cfg).ski()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TRule {
    Var,
    Lam,
    App,
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Case,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Self {
        assert!(cfg.max_size >= 1, "max_size must be at least 1");
        Generator { cfg, rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    /// An untyped term of size at most `max_size`.
    pub fn term(&mut self) -> Term {
        let lo = if self.cfg.max_free_index == 0 { 2 } else { 1 };
        let n = self.rng.gen_range(lo..=self.cfg.max_size.max(lo));
        self.term_sized(n, 0)
    }

    /// An untyped term of exactly `size` nodes, where that is possible.
    pub fn term_of_size(&mut self, size: usize) -> Term {
        self.term_sized(size.max(1), 0)
    }

    fn term_sized(&mut self, n: usize, depth: usize) -> Term {
        let vars = depth + self.cfg.max_free_index;
        let ok = |n: usize, vars: usize| n >= 2 || vars > 0;
        if n <= 1 {
            return if vars > 0 { lambda::var(self.rng.gen_range(0..vars)) } else { lambda::lam(lambda::var(0)) };
        }
        let splits: Vec<usize> = (1..n - 1).filter(|&a| ok(a, vars) && ok(n - 1 - a, vars)).collect();
        if splits.is_empty() || self.rng.gen_ratio(1, 3) {
            return lambda::lam(self.term_sized(n - 1, depth + 1));
        }
        let a = *splits.choose(&mut self.rng).expect("nonempty");
        let f = self.term_sized(a, depth);
        let x = self.term_sized(n - 1 - a, depth);
        lambda::app(f, x)
    }

    fn leaves(&mut self) -> usize {
        self.rng.gen_range(1..=self.cfg.max_size.div_ceil(2))
    }

    /// An SK term of size at most `max_size`.
    pub fn ski(&mut self) -> CTerm {
        let n = self.leaves();
        self.ski_leaves(n)
    }

    fn ski_leaves(&mut self, n: usize) -> CTerm {
        if n == 1 {
            return if self.rng.gen() { CTerm::S } else { CTerm::K };
        }
        let l = self.rng.gen_range(1..n);
        let f = self.ski_leaves(l);
        capp(f, self.ski_leaves(n - l))
    }

    /// An arithmetic expression of size at most `max_size`.
    pub fn expr(&mut self) -> Expr {
        let n = self.leaves();
        self.expr_leaves(n)
    }

    fn expr_leaves(&mut self, n: usize) -> Expr {
        if n == 1 {
            return if self.rng.gen() { Expr::Zero } else { Expr::One };
        }
        let l = self.rng.gen_range(1..n);
        let a = self.expr_leaves(l);
        let b = self.expr_leaves(n - l);
        if self.rng.gen() {
            rewrite::add(a, b)
        } else {
            rewrite::mul(a, b)
        }
    }

    /// A word over `{a, b}` of length at most `max_size`.
    pub fn string(&mut self) -> String {
        let n = self.rng.gen_range(0..=self.cfg.max_size);
        (0..n).map(|_| if self.rng.gen() { 'a' } else { 'b' }).collect()
    }

    /// A type of depth at most `type_depth`; products and sums only when
    /// `extended`.
    pub fn ty(&mut self, extended: bool) -> ETy {
        let d = self.cfg.type_depth;
        self.ty_depth(d, extended)
    }

    fn ty_depth(&mut self, depth: usize, extended: bool) -> ETy {
        if depth == 0 || self.rng.gen_ratio(1, 3) {
            return ebase(self.rng.gen_range(0..BASES));
        }
        let a = self.ty_depth(depth - 1, extended);
        let b = self.ty_depth(depth - 1, extended);
        match if extended { self.rng.gen_range(0..4) } else { 0 } {
            0 => earr(a, b),
            1 => prod(a, b),
            2 => sum(a, b),
            _ => earr(a, b),
        }
    }

    // A type built so that it is inhabited given variables of the `avail`
    // types: an available type, an arrow whose codomain is inhabited under
    // its domain, a product of inhabited types, or a sum with an inhabited
    // side.
    fn inhabited_ty(&mut self, depth: usize, avail: &mut Vec<ETy>, extended: bool) -> ETy {
        if !avail.is_empty() && (depth == 0 || self.rng.gen_ratio(1, 3)) {
            return self.pick(avail).expect("nonempty");
        }
        let d = depth.saturating_sub(1);
        match if extended { self.rng.gen_range(0..4) } else { 0 } {
            1 => prod(self.inhabited_ty(d, avail, extended), self.inhabited_ty(d, avail, extended)),
            2 => {
                let (a, b) = (self.inhabited_ty(d, avail, extended), self.ty_depth(d, extended));
                if self.rng.gen() {
                    sum(a, b)
                } else {
                    sum(b, a)
                }
            }
            _ => {
                let dom = self.ty_depth(d, extended);
                avail.push(dom.clone());
                let cod = self.inhabited_ty(d, avail, extended);
                avail.pop();
                earr(dom, cod)
            }
        }
    }

    /// A context of up to `len` random types.
    pub fn context(&mut self, len: usize, extended: bool) -> Context<ETy> {
        let n = self.rng.gen_range(0..=len);
        Context::from_innermost((0..n).map(|_| self.ty(extended)))
    }

    /// Rule-directed generation of a simply typed term with the given type
    /// (or a random one) in `ctx`.
    pub fn gen_stlc(&mut self, ctx: &Context<Ty>, target: Option<&Ty>) -> Result<(TTerm, Ty), GiveUp> {
        let ectx = Context::from_innermost(ctx.iter().map(lift_ty));
        let target = target.map(lift_ty);
        let (m, ty) = self.generate(&ectx, target.as_ref(), false)?;
        Ok((lower_term(&m), lower_ty(&ty)))
    }

    /// Rule-directed generation of an extended term with the given type (or a
    /// random one) in `ctx`.
    pub fn gen_stlcext(&mut self, ctx: &Context<ETy>, target: Option<&ETy>) -> Result<(ETerm, ETy), GiveUp> {
        self.generate(ctx, target, true)
    }

    pub fn gen_typed(
        &mut self,
        system: TypedSystem,
        ctx: &Context<ETy>,
        target: Option<&ETy>,
    ) -> Result<Typed, GiveUp> {
        match system {
            TypedSystem::StlcExt => self.gen_stlcext(ctx, target).map(|(m, t)| Typed::StlcExt(m, t)),
            TypedSystem::Stlc => {
                if ctx.iter().chain(target).any(|t| !is_simple(t)) {
                    return Err(GiveUp);
                }
                let (m, t) = self.generate(ctx, target, false)?;
                Ok(Typed::Stlc(lower_term(&m), lower_ty(&t)))
            }
        }
    }

    /// Keeps drawing until a closed term is produced. Retries with fresh
    /// targets, which terminates in practice because arrow types `A -> A` are
    /// always inhabited.
    pub fn closed(&mut self, system: TypedSystem) -> Typed {
        loop {
            if let Ok(t) = self.gen_typed(system, &Context::empty(), None) {
                return t;
            }
        }
    }

    fn generate(&mut self, ctx: &Context<ETy>, target: Option<&ETy>, extended: bool) -> Result<(ETerm, ETy), GiveUp> {
        let mut scope: Vec<ETy> = ctx.iter().rev().cloned().collect();
        let target = match target {
            Some(t) => t.clone(),
            None => self.inhabited_ty(self.cfg.type_depth, &mut scope, extended),
        };
        let lo = intro_size(&target).min(self.cfg.max_size);
        let budget = self.rng.gen_range(lo..=self.cfg.max_size);
        let mut fuel = 2 * FUEL;
        match self.goal(&mut scope, &target, budget, extended, &mut fuel) {
            Some(m) => Ok((m, target)),
            None => Err(GiveUp),
        }
    }

    fn candidates(&self, scope: &[ETy], target: &ETy, budget: usize, extended: bool) -> Vec<(TRule, u32)> {
        let mut out = Vec::new();
        if scope.iter().any(|t| t == target) {
            out.push((TRule::Var, if budget <= 2 { 8 } else { 1 }));
        }
        match target {
            ETy::Arr(..) if budget >= 2 => out.push((TRule::Lam, 4)),
            ETy::Prod(..) if budget >= 3 => out.push((TRule::Pair, 4)),
            ETy::Sum(..) if budget >= 2 => {
                out.push((TRule::Inl, 2));
                out.push((TRule::Inr, 2));
            }
            _ => {}
        }
        if budget >= 3 {
            out.push((TRule::App, 3));
        }
        if extended {
            if budget >= 2 {
                out.push((TRule::Fst, 1));
                out.push((TRule::Snd, 1));
            }
            if budget >= 4 {
                out.push((TRule::Case, 2));
            }
        }
        out
    }

    fn pick<T: Clone>(&mut self, options: &[T]) -> Option<T> {
        options.choose(&mut self.rng).cloned()
    }

    // Prefers a type suggested by the context so eliminations can bottom
    // out in variables.
    fn premise_ty(&mut self, scope: &mut Vec<ETy>, hints: Vec<ETy>, extended: bool) -> ETy {
        if !hints.is_empty() && self.rng.gen() {
            return self.pick(&hints).expect("nonempty");
        }
        self.inhabited_ty(self.cfg.type_depth, scope, extended)
    }

    fn goal(
        &mut self,
        scope: &mut Vec<ETy>,
        target: &ETy,
        budget: usize,
        extended: bool,
        fuel: &mut usize,
    ) -> Option<ETerm> {
        let granted = *fuel / 2;
        let mut local = granted;
        let mut found = None;
        for _ in 0..GEN_ATTEMPTS {
            if local == 0 {
                break;
            }
            local -= 1;
            let cands = self.candidates(scope, target, budget, extended);
            let Ok(&(rule, _)) = cands.choose_weighted(&mut self.rng, |c| c.1) else { break };
            if let Some(m) = self.apply(rule, scope, target, budget, extended, &mut local) {
                found = Some(m);
                break;
            }
        }
        *fuel -= granted - local;
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(
        &mut self,
        scope: &mut Vec<ETy>,
        a: &ETy,
        b: &ETy,
        rem: usize,
        extended: bool,
        fuel: &mut usize,
    ) -> Option<(ETerm, ETerm)> {
        let first_budget = self.rng.gen_range(1..rem);
        let l = self.goal(scope, a, first_budget, extended, fuel)?;
        let r = self.goal(scope, b, rem - l.size(), extended, fuel)?;
        Some((l, r))
    }

    #[allow(clippy::too_many_arguments)]
    fn under(
        &mut self,
        scope: &mut Vec<ETy>,
        bound: ETy,
        target: &ETy,
        budget: usize,
        extended: bool,
        fuel: &mut usize,
    ) -> Option<ETerm> {
        scope.push(bound);
        let body = self.goal(scope, target, budget, extended, fuel);
        scope.pop();
        body
    }

    #[allow(clippy::too_many_arguments)]
    fn apply(
        &mut self,
        rule: TRule,
        scope: &mut Vec<ETy>,
        target: &ETy,
        budget: usize,
        extended: bool,
        fuel: &mut usize,
    ) -> Option<ETerm> {
        let rem = budget - 1;
        match rule {
            TRule::Var => {
                let hits: Vec<usize> = (0..scope.len()).filter(|&i| scope[scope.len() - 1 - i] == *target).collect();
                self.pick(&hits).map(e::v)
            }
            TRule::Lam => {
                let ETy::Arr(a, b) = target else { return None };
                let body = self.under(scope, (**a).clone(), b, rem, extended, fuel)?;
                Some(e::lam((**a).clone(), body))
            }
            TRule::Pair => {
                let ETy::Prod(a, b) = target else { return None };
                let (l, r) = self.binary(scope, a, b, rem, extended, fuel)?;
                Some(e::pair(l, r))
            }
            TRule::Inl | TRule::Inr => {
                let ETy::Sum(a, b) = target else { return None };
                let payload = if rule == TRule::Inl { a } else { b };
                let m = self.goal(scope, payload, rem, extended, fuel)?;
                Some(if rule == TRule::Inl { e::inl(target.clone(), m) } else { e::inr(target.clone(), m) })
            }
            TRule::App => {
                let hints = scope
                    .iter()
                    .filter_map(|t| match t {
                        ETy::Arr(a, b) if **b == *target => Some((**a).clone()),
                        _ => None,
                    })
                    .collect();
                let arg = self.premise_ty(scope, hints, extended);
                let (f, x) = self.binary(scope, &earr(arg.clone(), target.clone()), &arg, rem, extended, fuel)?;
                Some(e::app(f, x))
            }
            TRule::Fst | TRule::Snd => {
                let hints = scope
                    .iter()
                    .filter_map(|t| match t {
                        ETy::Prod(a, b) if rule == TRule::Fst && **a == *target => Some((**b).clone()),
                        ETy::Prod(a, b) if rule == TRule::Snd && **b == *target => Some((**a).clone()),
                        _ => None,
                    })
                    .collect();
                let other = self.premise_ty(scope, hints, extended);
                let pty = if rule == TRule::Fst { prod(target.clone(), other) } else { prod(other, target.clone()) };
                let m = self.goal(scope, &pty, rem, extended, fuel)?;
                Some(if rule == TRule::Fst { e::fst(m) } else { e::snd(m) })
            }
            TRule::Case => {
                let hints: Vec<ETy> = scope.iter().filter(|t| matches!(t, ETy::Sum(..))).cloned().collect();
                let sty = if !hints.is_empty() && self.rng.gen() {
                    self.pick(&hints).expect("nonempty")
                } else {
                    let d = self.cfg.type_depth;
                    let inhabited = self.inhabited_ty(d, scope, extended);
                    let other = self.ty(extended);
                    if self.rng.gen() {
                        sum(inhabited, other)
                    } else {
                        sum(other, inhabited)
                    }
                };
                let ETy::Sum(a, b) = &sty else { unreachable!() };
                let sb = self.rng.gen_range(1..rem - 1);
                let s = self.goal(scope, &sty, sb, extended, fuel)?;
                let left = rem - s.size();
                if left < 2 {
                    return None;
                }
                let b1 = self.rng.gen_range(1..left);
                let n1 = self.under(scope, (**a).clone(), target, b1, extended, fuel)?;
                let n2 = self.under(scope, (**b).clone(), target, left - n1.size(), extended, fuel)?;
                Some(e::case(s, n1, n2))
            }
        }
    }
}

// Size of the smallest introduction-only inhabitant with variables at the
// leaves.
fn intro_size(t: &ETy) -> usize {
    match t {
        ETy::Base(_) => 1,
        ETy::Arr(_, b) => 1 + intro_size(b),
        ETy::Prod(a, b) => 1 + intro_size(a) + intro_size(b),
        ETy::Sum(a, b) => 1 + intro_size(a).min(intro_size(b)),
    }
}

fn is_simple(t: &ETy) -> bool {
    match t {
        ETy::Base(_) => true,
        ETy::Arr(a, b) => is_simple(a) && is_simple(b),
        _ => false,
    }
}

fn lift_ty(t: &Ty) -> ETy {
    match t {
        Ty::Base(n) => ebase(*n),
        Ty::Arr(a, b) => earr(lift_ty(a), lift_ty(b)),
    }
}

fn lower_ty(t: &ETy) -> Ty {
    match t {
        ETy::Base(n) => stlc::base(*n),
        ETy::Arr(a, b) => stlc::arr(lower_ty(a), lower_ty(b)),
        _ => unreachable!("simple generation only produces arrow and base types"),
    }
}

fn lower_term(m: &ETerm) -> TTerm {
    match m {
        ETerm::Var(n) => stlc::tvar(*n),
        ETerm::Lam(t, b) => stlc::tlam(lower_ty(t), lower_term(b)),
        ETerm::App(f, a) => stlc::tapp(lower_term(f), lower_term(a)),
        _ => unreachable!("simple generation only uses Var, Lam and App"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stlc::infer;
    use crate::stlcext::{ext_infer, Constructor};
    use std::collections::HashSet;

    fn cfg(seed: u64) -> GenConfig {
        GenConfig { seed, ..GenConfig::default() }
    }

    #[test]
    fn deterministic_by_seed() {
        let mut a = Generator::new(cfg(7));
        let mut b = Generator::new(cfg(7));
        for _ in 0..200 {
            assert_eq!(a.term(), b.term());
            assert_eq!(a.ski(), b.ski());
            assert_eq!(a.closed(TypedSystem::StlcExt), b.closed(TypedSystem::StlcExt));
        }
    }

    #[test]
    fn untyped_terms_respect_bounds() {
        let mut g = Generator::new(cfg(3));
        for _ in 0..2000 {
            let t = g.term();
            assert!(t.size() <= 12 && t.free_below(4), "{t}");
        }
    }

    #[test]
    fn identity_is_among_arrow_outputs() {
        let mut g = Generator::new(GenConfig { max_size: 3, ..cfg(11) });
        let target = stlc::arr(stlc::base(0), stlc::base(0));
        let id = stlc::tlam(stlc::base(0), stlc::tvar(0));
        let found = (0..200).any(|_| g.gen_stlc(&Context::empty(), Some(&target)).map(|r| r.0) == Ok(id.clone()));
        assert!(found);
    }

    #[test]
    fn generated_terms_recheck() {
        let mut g = Generator::new(cfg(5));
        for _ in 0..1000 {
            let ctx = g.context(2, false);
            let sctx = Context::from_innermost(ctx.iter().map(lower_ty));
            if let Ok((m, ty)) = g.gen_stlc(&sctx, None) {
                assert_eq!(infer(&sctx, &m), Ok(ty));
            }
            match g.closed(TypedSystem::StlcExt) {
                Typed::StlcExt(m, ty) => assert_eq!(ext_infer(&Context::empty(), &m), Ok(ty)),
                Typed::Stlc(..) => unreachable!(),
            }
        }
    }

    #[test]
    fn closed_ext_terms_cover_constructors() {
        let mut g = Generator::new(cfg(1));
        let mut seen = HashSet::new();
        for _ in 0..2000 {
            if let Typed::StlcExt(m, _) = g.closed(TypedSystem::StlcExt) {
                m.constructors(&mut seen);
            }
        }
        assert_eq!(seen.len(), Constructor::ALL.len(), "{seen:?}");
    }

    #[test]
    fn uninhabited_target_gives_up() {
        let mut g = Generator::new(cfg(2));
        assert_eq!(g.gen_stlc(&Context::empty(), Some(&stlc::base(0))), Err(GiveUp));
    }
}
