//! Connectivity, roots, circuits, bipartiteness and Eulerian classification.
//!
//! Conventions: a loop is a directed circuit of length one. The underlying
//! undirected multigraph has one edge `{u, v}` per arc `u -> v`, so a pair of
//! opposite arcs yields two parallel edges and a loop adds two to a degree.
//! The null graph (no vertices) is treated as disconnected in every sense.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::transformation::PointSet;

/// Vertex subsets share the point-set representation.
pub type VertexSet = PointSet;

/// `{w ∉ S : ∃ v ∈ S, v -> w}`.
pub fn set_out_neighborhood(d: &Digraph, s: &VertexSet) -> VertexSet {
    let mask = s.mask_for(d.vertex_count());
    let hits: Vec<bool> = (0..d.vertex_count())
        .map(|w| !mask[w] && s.iter().any(|v| d.has_arc(v, w)))
        .collect();
    PointSet::from_mask(&hits)
}

/// `{w ∉ S : ∃ v ∈ S, w -> v}`.
pub fn set_in_neighborhood(d: &Digraph, s: &VertexSet) -> VertexSet {
    let mask = s.mask_for(d.vertex_count());
    let hits: Vec<bool> = (0..d.vertex_count())
        .map(|w| !mask[w] && s.iter().any(|v| d.has_arc(w, v)))
        .collect();
    PointSet::from_mask(&hits)
}

fn bfs(n: usize, start: usize, mut next: impl FnMut(usize, &mut dyn FnMut(usize))) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        next(u, &mut |w| {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        });
    }
    seen
}

/// Row `u` marks every vertex reachable from `u`, including `u` itself.
pub fn transitive_closure(d: &Digraph) -> Vec<Vec<bool>> {
    let n = d.vertex_count();
    (0..n)
        .map(|s| {
            bfs(n, s, |u, push| {
                for w in d.successors(u) {
                    push(w);
                }
            })
        })
        .collect()
}

fn ancestors(d: &Digraph, v: usize) -> Vec<bool> {
    bfs(d.vertex_count(), v, |u, push| {
        for w in d.predecessors(u) {
            push(w);
        }
    })
}

/// Reachable sets plus the split into vertices reachable from a fixed
/// vertex (`s_fix`) and the rest (`s_move`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilitySets {
    pub reachable: Vec<VertexSet>,
    pub s_fix: VertexSet,
    pub s_move: VertexSet,
}

pub fn reachability(d: &Digraph, fixed: &VertexSet) -> ReachabilitySets {
    let closure = transitive_closure(d);
    let n = d.vertex_count();
    let from_fixed: Vec<bool> = (0..n)
        .map(|v| fixed.iter().any(|f| closure[f][v]))
        .collect();
    let s_fix = PointSet::from_mask(&from_fixed);
    ReachabilitySets {
        reachable: closure.iter().map(|row| PointSet::from_mask(row)).collect(),
        s_move: s_fix.complement(),
        s_fix,
    }
}

/// Tarjan's algorithm. Components are sorted internally and ordered by
/// least vertex.
pub fn strongly_connected_components(d: &Digraph) -> Vec<Vec<usize>> {
    struct State<'a> {
        d: &'a Digraph,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State<'_>, v: usize) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for w in st.d.successors(v).collect::<Vec<_>>() {
            match st.index[w] {
                None => {
                    visit(st, w);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.out.push(comp);
        }
    }

    let n = d.vertex_count();
    let mut st = State {
        d,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(&mut st, v);
        }
    }
    st.out.sort();
    st.out
}

/// A nonempty proper subset with no arc entering it from outside.
pub fn is_in_closed_witness(d: &Digraph, s: &VertexSet) -> bool {
    !s.is_empty() && s.len() < d.vertex_count() && set_in_neighborhood(d, s).is_empty()
}

/// Searches for a witness subset directly. Up to 16 vertices every subset is
/// tried; beyond that the ancestor set of each vertex is tried, which finds a
/// witness whenever one exists.
pub fn search_in_closed_witness(d: &Digraph) -> Option<VertexSet> {
    let n = d.vertex_count();
    if n <= 16 {
        (1u32..(1u32 << n).saturating_sub(1))
            .map(|mask| PointSet::from_mask(&(0..n).map(|x| mask & (1 << x) != 0).collect::<Vec<_>>()))
            .find(|s| is_in_closed_witness(d, s))
    } else {
        (0..n)
            .map(|v| PointSet::from_mask(&ancestors(d, v)))
            .find(|s| is_in_closed_witness(d, s))
    }
}

/// Strong connectivity with a witness subset when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongConnectivity {
    pub strongly_connected: bool,
    pub witness: Option<VertexSet>,
}

/// Decides strong connectivity twice, from the component count and from a
/// direct witness search, and errors if the two disagree.
///
/// The reported witness is the set of vertices without incoming arcs when
/// that is a proper nonempty subset, otherwise the first source component.
pub fn is_strongly_connected(d: &Digraph) -> Result<StrongConnectivity> {
    let n = d.vertex_count();
    if n == 0 {
        return Ok(StrongConnectivity {
            strongly_connected: false,
            witness: None,
        });
    }
    let sccs = strongly_connected_components(d);
    let by_components = sccs.len() == 1;
    let searched = search_in_closed_witness(d);
    if by_components != searched.is_none() {
        return Err(Error::InvariantViolation(format!(
            "component analysis says strongly connected = {by_components}, witness search found {searched:?}"
        )));
    }
    if by_components {
        return Ok(StrongConnectivity {
            strongly_connected: true,
            witness: None,
        });
    }
    let unentered = PointSet::from_mask(&(0..n).map(|v| d.in_degree(v) == 0).collect::<Vec<_>>());
    let witness = if is_in_closed_witness(d, &unentered) {
        unentered
    } else {
        let mut comp_of = vec![0; n];
        for (i, c) in sccs.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let source = sccs
            .iter()
            .enumerate()
            .find(|(i, c)| {
                c.iter()
                    .all(|&v| d.predecessors(v).all(|u| comp_of[u] == *i))
            })
            .map(|(_, c)| c.clone())
            .expect("a condensation has a source component");
        PointSet::new(n, source)?
    };
    if !is_in_closed_witness(d, &witness) {
        return Err(Error::InvariantViolation(format!(
            "chosen witness {witness:?} has incoming arcs"
        )));
    }
    Ok(StrongConnectivity {
        strongly_connected: false,
        witness: Some(witness),
    })
}

/// Every pair `u, v` is equal, joined by a path in some direction, or has a
/// common ancestor. With empty paths allowed, all four cases reduce to the
/// common-ancestor test.
pub fn is_quasi_strongly_connected(d: &Digraph) -> bool {
    let n = d.vertex_count();
    if n == 0 {
        return false;
    }
    let reach = transitive_closure(d);
    (0..n).all(|u| (u..n).all(|v| (0..n).any(|w| reach[w][u] && reach[w][v])))
}

/// Vertices with a path to every vertex.
pub fn roots(d: &Digraph) -> VertexSet {
    let reach = transitive_closure(d);
    PointSet::from_mask(&reach.iter().map(|row| row.iter().all(|&b| b)).collect::<Vec<_>>())
}

/// Finds a root by candidate elimination: drop any candidate reachable from
/// another candidate; when two unrelated candidates remain, replace them with
/// a common ancestor. Returns `None` when no common ancestor exists.
pub fn root_by_elimination(d: &Digraph) -> Option<usize> {
    let n = d.vertex_count();
    if n == 0 {
        return None;
    }
    let reach = transitive_closure(d);
    let mut pool: BTreeSet<usize> = (0..n).collect();
    loop {
        while let Some(v) = pool
            .iter()
            .copied()
            .find(|&v| pool.iter().any(|&u| u != v && reach[u][v]))
        {
            pool.remove(&v);
        }
        let mut it = pool.iter().copied();
        let u = it.next()?;
        let Some(v) = it.next() else {
            return Some(u);
        };
        let w = (0..n).find(|&w| reach[w][u] && reach[w][v])?;
        pool.remove(&u);
        pool.remove(&v);
        pool.insert(w);
    }
}

pub fn is_weakly_connected(d: &Digraph) -> bool {
    let n = d.vertex_count();
    if n == 0 {
        return false;
    }
    bfs(n, 0, |u, push| {
        for w in d.successors(u).chain(d.predecessors(u)) {
            push(w);
        }
    })
    .into_iter()
    .all(|b| b)
}

/// Connectivity in every sense used here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityVerdict {
    pub weakly_connected: bool,
    pub strongly_connected: bool,
    pub quasi_strongly_connected: bool,
    pub roots: VertexSet,
    pub witness: Option<VertexSet>,
}

/// Computes all connectivity notions and checks their mutual consistency:
/// strong implies quasi-strong implies weak, roots exist exactly when the
/// digraph is quasi-strongly connected, and candidate elimination lands on a
/// root exactly when roots exist.
pub fn connectivity(d: &Digraph) -> Result<ConnectivityVerdict> {
    let strong = is_strongly_connected(d)?;
    let verdict = ConnectivityVerdict {
        weakly_connected: is_weakly_connected(d),
        strongly_connected: strong.strongly_connected,
        quasi_strongly_connected: is_quasi_strongly_connected(d),
        roots: roots(d),
        witness: strong.witness,
    };
    let elimination = root_by_elimination(d);
    let problems = [
        (
            verdict.strongly_connected && !verdict.quasi_strongly_connected,
            "strong without quasi-strong",
        ),
        (
            verdict.quasi_strongly_connected && !verdict.weakly_connected,
            "quasi-strong without weak",
        ),
        (
            verdict.roots.is_empty() == verdict.quasi_strongly_connected,
            "roots disagree with quasi-strong connectivity",
        ),
        (
            elimination.is_some_and(|r| !verdict.roots.contains(r))
                || (elimination.is_none() && !verdict.roots.is_empty()),
            "candidate elimination disagrees with root set",
        ),
    ];
    if let Some((_, msg)) = problems.iter().find(|(bad, _)| *bad) {
        return Err(Error::InvariantViolation((*msg).to_string()));
    }
    Ok(verdict)
}

/// `(in-degree-zero vertices, out-degree-zero vertices)`.
pub fn sources_and_sinks(d: &Digraph) -> (VertexSet, VertexSet) {
    let n = d.vertex_count();
    let sources: Vec<bool> = (0..n).map(|v| d.in_degree(v) == 0).collect();
    let sinks: Vec<bool> = (0..n).map(|v| d.out_degree(v) == 0).collect();
    (PointSet::from_mask(&sources), PointSet::from_mask(&sinks))
}

/// No directed circuit, loops included (Kahn's algorithm).
pub fn is_acyclic(d: &Digraph) -> bool {
    let n = d.vertex_count();
    let mut indeg: Vec<u32> = (0..n).map(|v| d.in_degree(v)).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = ready.pop() {
        removed += 1;
        for w in d.successors(u) {
            indeg[w] -= d.count(u, w);
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    removed == n
}

/// Some `u ≠ v` in `within` with arcs both `u -> v` and `v -> u`.
pub fn has_two_way_pair(d: &Digraph, within: &VertexSet) -> Option<(usize, usize)> {
    let members = within.members();
    members.iter().enumerate().find_map(|(i, &u)| {
        members[i + 1..]
            .iter()
            .find(|&&v| d.has_arc(u, v) && d.has_arc(v, u))
            .map(|&v| (u, v))
    })
}

/// How loops are treated when 2-colouring the underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopPolicy {
    /// A loop is an odd circuit and rules out bipartiteness.
    #[default]
    CountAsOddCycle,
    Ignore,
}

impl fmt::Display for LoopPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopPolicy::CountAsOddCycle => "count-as-odd-cycle",
            LoopPolicy::Ignore => "ignore",
        })
    }
}

impl FromStr for LoopPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "count-as-odd-cycle" | "odd" => Ok(LoopPolicy::CountAsOddCycle),
            "ignore" => Ok(LoopPolicy::Ignore),
            _ => Err(Error::Domain(format!("unknown loop policy `{s}`"))),
        }
    }
}

/// Two-colours the underlying undirected graph. On failure returns an odd
/// circuit as a vertex sequence (closing edge back to the first vertex implied).
pub fn bipartition(d: &Digraph, policy: LoopPolicy) -> std::result::Result<Vec<bool>, Vec<usize>> {
    let n = d.vertex_count();
    if policy == LoopPolicy::CountAsOddCycle {
        if let Some(v) = (0..n).find(|&v| d.has_arc(v, v)) {
            return Err(vec![v]);
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are coloured");
            for w in d.successors(u).chain(d.predecessors(u)) {
                if w == u {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = Some(u);
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(odd_cycle(&parent, &depth, u, w));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(|c| c.unwrap_or(false)).collect())
}

fn odd_cycle(parent: &[Option<usize>], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].expect("deeper vertex has a parent");
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].expect("deeper vertex has a parent");
        right.push(b);
    }
    while a != b {
        a = parent[a].expect("non-root has a parent");
        b = parent[b].expect("non-root has a parent");
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

pub fn is_bipartite_underlying(d: &Digraph, policy: LoopPolicy) -> bool {
    bipartition(d, policy).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EulerianClass {
    Eulerian,
    SemiEulerian,
    Neither,
    Disconnected,
}

impl EulerianClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EulerianClass::Eulerian => "eulerian",
            EulerianClass::SemiEulerian => "semi-eulerian",
            EulerianClass::Neither => "neither",
            EulerianClass::Disconnected => "disconnected",
        }
    }
}

/// Degree-parity classification of the underlying multigraph.
pub fn eulerian_class(d: &Digraph) -> EulerianClass {
    if !is_weakly_connected(d) {
        return EulerianClass::Disconnected;
    }
    let odd = (0..d.vertex_count())
        .filter(|&v| (d.out_degree(v) + d.in_degree(v)) % 2 == 1)
        .count();
    match odd {
        0 => EulerianClass::Eulerian,
        2 => EulerianClass::SemiEulerian,
        _ => EulerianClass::Neither,
    }
}

/// A trail through every edge of the underlying multigraph exactly once,
/// touching every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerWalk {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

/// Searches for an Euler trail constructively: Hierholzer's procedure from
/// every start vertex, keeping only candidate walks that check out edge by
/// edge. A closed trail is preferred over an open one. Isolated vertices
/// rule a trail out, matching the connectedness requirement of
/// [`eulerian_class`]. Uses no parity argument, so it can cross-check it.
pub fn euler_walk(d: &Digraph) -> Option<EulerWalk> {
    let n = d.vertex_count();
    let edges: Vec<(usize, usize)> = d
        .arcs()
        .flat_map(|(u, v, c)| std::iter::repeat_n((u, v), c as usize))
        .collect();
    if edges.is_empty() {
        return (n == 1).then(|| EulerWalk {
            vertices: vec![0],
            closed: true,
        });
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push(i);
        if u != v {
            adj[v].push(i);
        }
    }
    let mut open = None;
    if adj.iter().any(Vec::is_empty) {
        return None;
    }
    for start in 0..n {
        let walk = hierholzer(&edges, &adj, start);
        if trail_is_valid(n, &edges, &walk) {
            let closed = walk.first() == walk.last();
            let w = EulerWalk {
                vertices: walk,
                closed,
            };
            if closed {
                return Some(w);
            }
            open.get_or_insert(w);
        }
    }
    open
}

fn hierholzer(edges: &[(usize, usize)], adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut used = vec![false; edges.len()];
    let mut ptr = vec![0usize; adj.len()];
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]]] {
            ptr[v] += 1;
        }
        if ptr[v] < adj[v].len() {
            let e = adj[v][ptr[v]];
            used[e] = true;
            let (a, b) = edges[e];
            stack.push(if a == v { b } else { a });
        } else {
            walk.push(v);
            stack.pop();
        }
    }
    walk.reverse();
    walk
}

fn trail_is_valid(n: usize, edges: &[(usize, usize)], walk: &[usize]) -> bool {
    if walk.len() != edges.len() + 1 {
        return false;
    }
    let mut remaining = vec![0i64; n * n];
    for &(u, v) in edges {
        let (a, b) = (u.min(v), u.max(v));
        remaining[a * n + b] += 1;
    }
    for pair in walk.windows(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        let slot = &mut remaining[a * n + b];
        if *slot == 0 {
            return false;
        }
        *slot -= 1;
    }
    remaining.iter().all(|&c| c == 0)
}
