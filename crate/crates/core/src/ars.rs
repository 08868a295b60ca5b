//! Abstract rewriting over finite-successor relations.
//!
//! A [`Rel`] enumerates the one-step reducts of a state. Everything else in
//! this module works on the finite portion of the reachability graph that a
//! bounded exploration can see: reflexive-transitive closure, joinability,
//! local confluence (diamond) checks, Newman-style verdicts and commutation
//! checks for pairs of relations.
//!
//! A bounded search that finds no join witness is not a refutation. Every
//! report that depends on exploration bounds says whether the explored region
//! was complete.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

/// Default node cap for [`star_reachable`] and friends.
pub const DEFAULT_NODE_CAP: usize = 10_000;
/// Default depth bound for join searches.
pub const DEFAULT_DEPTH: usize = 12;

/// Requirements on the states of a relation.
///
/// `Display` is the canonical serialization used for deterministic tie-breaks.
pub trait State: Clone + Eq + Hash + fmt::Display {}

impl<T: Clone + Eq + Hash + fmt::Display> State for T {}

type SuccFn<S> = dyn Fn(&S) -> Vec<S> + Send + Sync;

/// A rewriting relation presented by its finite successor function.
pub struct Rel<S> {
    label: String,
    successors: Arc<SuccFn<S>>,
}

impl<S> Clone for Rel<S> {
    fn clone(&self) -> Self {
        Rel { label: self.label.clone(), successors: Arc::clone(&self.successors) }
    }
}

impl<S> fmt::Debug for Rel<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rel").field("label", &self.label).finish()
    }
}

impl<S: State> Rel<S> {
    /// Wraps a successor function. Duplicate reducts are removed, keeping the
    /// first occurrence, so callers may return multisets.
    pub fn new<F>(label: impl Into<String>, successors: F) -> Self
    where
        F: Fn(&S) -> Vec<S> + Send + Sync + 'static,
    {
        Rel { label: label.into(), successors: Arc::new(move |s| dedup(successors(s))) }
    }

    /// The relation with no steps at all.
    pub fn empty(label: impl Into<String>) -> Self {
        Rel::new(label, |_| Vec::new())
    }

    /// A relation given by an explicit finite edge list.
    pub fn from_edges(label: impl Into<String>, edges: Vec<(S, S)>) -> Self
    where
        S: Send + Sync + 'static,
    {
        Rel::new(label, move |s| edges.iter().filter(|(from, _)| from == s).map(|(_, to)| to.clone()).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn successors(&self, s: &S) -> Vec<S> {
        (self.successors)(s)
    }

    pub fn is_normal(&self, s: &S) -> bool {
        self.successors(s).is_empty()
    }
}

fn dedup<S: State>(items: Vec<S>) -> Vec<S> {
    let mut seen = HashSet::with_capacity(items.len());
    items.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

/// Union of two relations: `union(x) = r(x) ∪ s(x)`, `r`'s reducts first.
pub fn union_rel<S: State + Send + Sync + 'static>(r: &Rel<S>, s: &Rel<S>) -> Rel<S> {
    let (r2, s2) = (r.clone(), s.clone());
    Rel::new(format!("{} ∪ {}", r.label, s.label), move |x| {
        let mut out = r2.successors(x);
        out.extend(s2.successors(x));
        out
    })
}

/// The explored portion of a relation's reachability graph from `root`.
///
/// Nodes are stored in breadth-first discovery order; `nodes[0]` is the root.
#[derive(Clone, Debug)]
pub struct ReductionGraph<S> {
    nodes: Vec<S>,
    index: HashMap<S, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    out_degree: Vec<usize>,
    complete: bool,
}

impl<S: State> ReductionGraph<S> {
    pub fn root(&self) -> &S {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Edges as index pairs into [`nodes`](Self::nodes).
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (&S, &S)> + '_ {
        self.edges.iter().map(move |&(a, b)| (&self.nodes[a], &self.nodes[b]))
    }

    /// True iff exploration exhausted every reachable state under the cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, s: &S) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_of(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Graph successors of node `i`.
    pub fn successors_of(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Nodes whose relation successor set is empty.
    ///
    /// This uses the relation's own out-degree, so frontier nodes of an
    /// incomplete graph whose reducts were cut by the cap are not reported.
    pub fn normal_forms(&self) -> Vec<&S> {
        (0..self.nodes.len()).filter(|&i| self.out_degree[i] == 0).map(|i| &self.nodes[i]).collect()
    }

    /// Nodes reachable from `from` inside the graph, including `from`.
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(i) = stack.pop() {
            for &j in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }

    /// Whether two nodes have a common reduct inside the graph.
    pub fn joinable_in_graph(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let ra = self.reachable_from(a);
        let rb = self.reachable_from(b);
        ra.iter().zip(&rb).any(|(x, y)| *x && *y)
    }

    /// Some cycle of the graph, as a node sequence whose last element steps
    /// back to the first. `None` iff the graph is acyclic.
    pub fn find_cycle(&self) -> Option<Vec<S>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.nodes.len();
        let mut mark = vec![Mark::New; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if mark[start] != Mark::New {
                continue;
            }
            // Iterative DFS: (node, next child position).
            let mut stack = vec![(start, 0usize)];
            mark[start] = Mark::Active;
            while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
                if let Some(&next) = self.adjacency[node].get(*pos) {
                    *pos += 1;
                    match mark[next] {
                        Mark::New => {
                            mark[next] = Mark::Active;
                            parent[next] = node;
                            stack.push((next, 0));
                        }
                        Mark::Active => {
                            let mut cycle = vec![node];
                            let mut cur = node;
                            while cur != next {
                                cur = parent[cur];
                                cycle.push(cur);
                            }
                            cycle.reverse();
                            return Some(cycle.into_iter().map(|i| self.nodes[i].clone()).collect());
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[node] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }
}

/// Breadth-first exploration of `a`'s reducts, storing at most `node_cap`
/// nodes. Cap exhaustion is reported through [`ReductionGraph::is_complete`].
pub fn star_reachable<S: State>(rel: &Rel<S>, a: &S, node_cap: usize) -> ReductionGraph<S> {
    let node_cap = node_cap.max(1);
    let mut g = ReductionGraph {
        nodes: vec![a.clone()],
        index: HashMap::from([(a.clone(), 0)]),
        edges: Vec::new(),
        adjacency: vec![Vec::new()],
        out_degree: vec![0],
        complete: true,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let succs = rel.successors(&g.nodes[i]);
        g.out_degree[i] = succs.len();
        for t in succs {
            let j = match g.index.get(&t) {
                Some(&j) => j,
                None if g.nodes.len() < node_cap => {
                    let j = g.nodes.len();
                    g.index.insert(t.clone(), j);
                    g.nodes.push(t);
                    g.adjacency.push(Vec::new());
                    g.out_degree.push(0);
                    queue.push_back(j);
                    j
                }
                None => {
                    g.complete = false;
                    continue;
                }
            };
            g.edges.push((i, j));
            g.adjacency[i].push(j);
        }
    }
    g
}

/// Breadth-first distances from `a`, exploring at most `depth` steps.
pub fn bounded_reach<S: State>(rel: &Rel<S>, a: &S, depth: usize) -> HashMap<S, usize> {
    bfs_tree(rel, a, depth).into_iter().map(|(s, (d, _))| (s, d)).collect()
}

// state -> (distance, parent)
fn bfs_tree<S: State>(rel: &Rel<S>, a: &S, depth: usize) -> HashMap<S, (usize, Option<S>)> {
    let mut seen = HashMap::from([(a.clone(), (0usize, None))]);
    let mut frontier = vec![a.clone()];
    for d in 1..=depth {
        let mut next = Vec::new();
        for s in &frontier {
            for t in rel.successors(s) {
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), (d, Some(s.clone())));
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

fn path_to<S: State>(tree: &HashMap<S, (usize, Option<S>)>, target: &S) -> Vec<S> {
    let mut path = Vec::new();
    let mut cur = target.clone();
    while let Some((_, Some(parent))) = tree.get(&cur) {
        path.push(cur.clone());
        cur = parent.clone();
    }
    path.reverse();
    path
}

/// Evidence that two states have a common reduct.
///
/// `left_path` runs from the left start (exclusive) to `meet` (inclusive);
/// likewise `right_path`. Both are empty when the starts coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinWitness<S> {
    pub meet: S,
    pub left_path: Vec<S>,
    pub right_path: Vec<S>,
}

impl<S: State> JoinWitness<S> {
    /// Replays both paths through the given relations.
    pub fn validate(&self, left: &Rel<S>, b: &S, right: &Rel<S>, c: &S) -> bool {
        fn replay<S: State>(rel: &Rel<S>, start: &S, path: &[S], meet: &S) -> bool {
            let mut cur = start;
            for next in path {
                if !rel.successors(cur).contains(next) {
                    return false;
                }
                cur = next;
            }
            cur == meet
        }
        replay(left, b, &self.left_path, &self.meet) && replay(right, c, &self.right_path, &self.meet)
    }
}

/// Searches for `d` with `b →left* d` and `c →right* d`, each side explored
/// to `depth` steps. Among common states the meet minimizes the combined path
/// length, then the canonical serialization.
pub fn join_with<S: State>(left: &Rel<S>, b: &S, right: &Rel<S>, c: &S, depth: usize) -> Option<JoinWitness<S>> {
    if b == c {
        return Some(JoinWitness { meet: b.clone(), left_path: Vec::new(), right_path: Vec::new() });
    }
    let tb = bfs_tree(left, b, depth);
    let tc = bfs_tree(right, c, depth);
    let (small, large) = if tb.len() <= tc.len() { (&tb, &tc) } else { (&tc, &tb) };
    let meet = small
        .iter()
        .filter_map(|(s, (d1, _))| large.get(s).map(|(d2, _)| (d1 + d2, s)))
        .min_by(|(la, sa), (lb, sb)| la.cmp(lb).then_with(|| sa.to_string().cmp(&sb.to_string())))
        .map(|(_, s)| s.clone())?;
    Some(JoinWitness { left_path: path_to(&tb, &meet), right_path: path_to(&tc, &meet), meet })
}

/// `b ↓ c` within `depth` steps on each side.
pub fn joinable<S: State>(rel: &Rel<S>, b: &S, c: &S, depth: usize) -> Option<JoinWitness<S>> {
    join_with(rel, b, rel, c, depth)
}

/// A one-step divergence `left ← source → right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peak<S> {
    pub source: S,
    pub left: S,
    pub right: S,
}

/// Outcome of a diamond or commutation check over a corpus.
#[derive(Clone, Debug)]
pub struct PeakReport<S> {
    pub relation: String,
    pub sources: usize,
    pub peaks_checked: usize,
    /// Peaks for which no join was found within the bound.
    pub failures: Vec<Peak<S>>,
}

impl<S> PeakReport<S> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<S: fmt::Display> fmt::Display for PeakReport<S> {
    /// One record per unjoined peak, then a summary record.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.failures {
            writeln!(f, "source={} left={} right={} verdict=unjoined", p.source, p.left, p.right)?;
        }
        write!(
            f,
            "relation={} sources={} peaks={} unjoined={}",
            self.relation,
            self.sources,
            self.peaks_checked,
            self.failures.len()
        )
    }
}

/// Local confluence check: every pair of distinct one-step reducts of every
/// corpus element must be joinable within `depth`.
pub fn check_diamond<S: State>(rel: &Rel<S>, corpus: &[S], depth: usize) -> PeakReport<S> {
    let mut report =
        PeakReport { relation: rel.label.clone(), sources: corpus.len(), peaks_checked: 0, failures: Vec::new() };
    for a in corpus {
        let succs = rel.successors(a);
        for (i, b) in succs.iter().enumerate() {
            for c in &succs[i + 1..] {
                report.peaks_checked += 1;
                if joinable(rel, b, c, depth).is_none() {
                    report.failures.push(Peak { source: a.clone(), left: b.clone(), right: c.clone() });
                }
            }
        }
    }
    report
}

/// Commutation check: for `b ←r a →s c`, look for `d` with `b →s* d` and
/// `c →r* d`.
pub fn commute_check<S: State>(r: &Rel<S>, s: &Rel<S>, corpus: &[S], depth: usize) -> PeakReport<S> {
    let mut report = PeakReport {
        relation: format!("{} / {}", r.label, s.label),
        sources: corpus.len(),
        peaks_checked: 0,
        failures: Vec::new(),
    };
    for a in corpus {
        let rs = r.successors(a);
        let ss = s.successors(a);
        for b in &rs {
            for c in &ss {
                report.peaks_checked += 1;
                if join_with(s, b, r, c, depth).is_none() {
                    report.failures.push(Peak { source: a.clone(), left: b.clone(), right: c.clone() });
                }
            }
        }
    }
    report
}

/// Newman-style summary of the graph reachable from one start state.
#[derive(Clone, Debug)]
pub struct NewmanVerdict<S> {
    /// `None` when the graph is incomplete and no cycle was seen.
    pub terminating: Option<bool>,
    pub locally_confluent: bool,
    pub unique_nf: bool,
    /// Sorted by canonical serialization.
    pub normal_forms: Vec<S>,
    /// False when the verdict only covers the explored region.
    pub complete: bool,
}

impl<S: fmt::Display> fmt::Display for NewmanVerdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = match self.terminating {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        };
        let nfs: Vec<String> = self.normal_forms.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "terminating={} locallyConfluent={} uniqueNF={} nf={}",
            term,
            self.locally_confluent,
            self.unique_nf,
            nfs.join(",")
        )?;
        if !self.complete {
            write!(f, " warning=incomplete")?;
        }
        Ok(())
    }
}

/// Explores from `a` and reports termination, local confluence (joins
/// searched inside the explored graph) and normal forms.
pub fn newman_verify<S: State>(rel: &Rel<S>, a: &S, node_cap: usize) -> NewmanVerdict<S> {
    let g = star_reachable(rel, a, node_cap);
    newman_verdict_of(&g)
}

/// [`newman_verify`] on an already built graph.
pub fn newman_verdict_of<S: State>(g: &ReductionGraph<S>) -> NewmanVerdict<S> {
    let cyclic = !g.is_acyclic();
    let terminating = match (g.is_complete(), cyclic) {
        (_, true) => Some(false),
        (true, false) => Some(true),
        (false, false) => None,
    };
    let reach: Vec<Vec<bool>> = (0..g.len()).map(|i| g.reachable_from(i)).collect();
    let joins = |a: usize, b: usize| a == b || reach[a].iter().zip(&reach[b]).any(|(x, y)| *x && *y);
    let locally_confluent = (0..g.len()).all(|i| {
        let succ = g.successors_of(i);
        succ.iter().enumerate().all(|(k, &b)| succ[k + 1..].iter().all(|&c| joins(b, c)))
    });
    let mut normal_forms: Vec<S> = g.normal_forms().into_iter().cloned().collect();
    normal_forms.sort_by_cached_key(|s| s.to_string());
    NewmanVerdict {
        terminating,
        locally_confluent,
        unique_nf: normal_forms.len() <= 1,
        normal_forms,
        complete: g.is_complete(),
    }
}

/// Strong-normalization verdict for one start state.
#[derive(Clone, Debug)]
pub enum SnVerdict<S> {
    /// The full reduction graph is finite and acyclic.
    Sn(ReductionGraph<S>),
    /// A reachable cycle; the last state steps back to the first.
    CycleFound(Vec<S>),
    CapExhausted,
}

impl<S> SnVerdict<S> {
    pub fn is_sn(&self) -> bool {
        matches!(self, SnVerdict::Sn(_))
    }
}

/// Builds the reduction graph and classifies it: SN iff complete and acyclic.
pub fn sn_certificate<S: State>(rel: &Rel<S>, a: &S, node_cap: usize) -> SnVerdict<S> {
    let g = star_reachable(rel, a, node_cap);
    if let Some(cycle) = g.find_cycle() {
        return SnVerdict::CycleFound(cycle);
    }
    if g.is_complete() {
        SnVerdict::Sn(g)
    } else {
        SnVerdict::CapExhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> Rel<&'static str> {
        Rel::from_edges("two", vec![("a", "b"), ("a", "c")])
    }

    #[test]
    fn star_of_normal_state_is_singleton() {
        let rel: Rel<u32> = Rel::empty("none");
        let g = star_reachable(&rel, &7, 10);
        assert_eq!(g.nodes(), &[7]);
        assert!(g.edge_indices().is_empty());
        assert!(g.is_complete());
    }

    #[test]
    fn cap_marks_graph_incomplete() {
        let rel = Rel::new("succ", |n: &u32| vec![n + 1]);
        let g = star_reachable(&rel, &0, 5);
        assert_eq!(g.len(), 5);
        assert!(!g.is_complete());
        // A chain of exactly the cap size is still complete.
        let bounded = Rel::new("succ<4", |n: &u32| if *n < 4 { vec![n + 1] } else { vec![] });
        assert!(star_reachable(&bounded, &0, 5).is_complete());
    }

    #[test]
    fn join_of_equal_states_is_reflexive() {
        let w = joinable(&two_point(), &"b", &"b", 0).unwrap();
        assert_eq!(w.meet, "b");
        assert!(w.left_path.is_empty() && w.right_path.is_empty());
    }

    #[test]
    fn two_point_counterexample_is_reported() {
        let rel = two_point();
        let report = check_diamond(&rel, &["a"], 5);
        assert_eq!(report.failures, vec![Peak { source: "a", left: "b", right: "c" }]);
        let v = newman_verify(&rel, &"a", 10);
        assert_eq!(v.terminating, Some(true));
        assert!(!v.locally_confluent);
        assert!(!v.unique_nf);
        assert_eq!(v.normal_forms, vec!["b", "c"]);
    }

    #[test]
    fn commutation_reports_split_peak() {
        let r = Rel::from_edges("r", vec![("a", "b")]);
        let s = Rel::from_edges("s", vec![("a", "c")]);
        let report = commute_check(&r, &s, &["a"], 4);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.peaks_checked, 1);
    }

    #[test]
    fn meet_tie_break_is_lexicographic() {
        // b -> x, b -> y; c -> x, c -> y: both meets cost 2, "x" < "y".
        let rel = Rel::from_edges("tie", vec![("b", "y"), ("b", "x"), ("c", "y"), ("c", "x")]);
        let w = joinable(&rel, &"b", &"c", 3).unwrap();
        assert_eq!(w.meet, "x");
        assert!(w.validate(&rel, &"b", &rel, &"c"));
    }

    #[test]
    fn cycle_detection_and_sn() {
        let rel = Rel::from_edges("loop", vec![(1u8, 2u8), (2, 3), (3, 1), (3, 4)]);
        let cycle = star_reachable(&rel, &1, 10).find_cycle().unwrap();
        assert_eq!(cycle.len(), 3);
        for w in 0..cycle.len() {
            let next = &cycle[(w + 1) % cycle.len()];
            assert!(rel.successors(&cycle[w]).contains(next));
        }
        assert!(matches!(sn_certificate(&rel, &1, 10), SnVerdict::CycleFound(_)));
        assert!(sn_certificate(&rel, &4, 10).is_sn());
        let chain = Rel::new("succ", |n: &u32| vec![n + 1]);
        assert!(matches!(sn_certificate(&chain, &0, 50), SnVerdict::CapExhausted));
    }

    #[test]
    fn union_of_empty_relations_is_empty() {
        let r: Rel<u8> = Rel::empty("r");
        let s: Rel<u8> = Rel::empty("s");
        assert!(union_rel(&r, &s).successors(&0).is_empty());
        let t = Rel::from_edges("t", vec![(0u8, 1u8), (0, 2)]);
        assert_eq!(union_rel(&t, &t).successors(&0), t.successors(&0));
    }

    #[test]
    fn report_records_are_line_oriented() {
        let report = check_diamond(&two_point(), &["a"], 2);
        assert_eq!(
            report.to_string(),
            "source=a left=b right=c verdict=unjoined\nrelation=two sources=1 peaks=1 unjoined=1"
        );
    }
}
