//! Reduction graphs (bipartite multigraphs on points and components), their
//! cycle space, and abelian covering graphs built from voltages in (ℤ/n)^r.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are the points `p` followed by the components `u`; each edge
/// (p index, u index, label) is a branch at a point lying on a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionGraph {
    pub p: Vec<String>,
    pub u: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

impl ReductionGraph {
    pub fn new(p: Vec<String>, u: Vec<String>, edges: Vec<(usize, usize, String)>) -> Result<Self> {
        let g = ReductionGraph { p, u, edges };
        g.check()?;
        Ok(g)
    }

    /// Validates edge endpoints; call after deserializing.
    pub fn check(&self) -> Result<()> {
        if self.p.is_empty() && self.u.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for (pi, ui, label) in &self.edges {
            if *pi >= self.p.len() || *ui >= self.u.len() {
                return Err(Error::InvalidGraph(format!("edge {label:?} has an endpoint out of range")));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.p.len() + self.u.len()
    }

    /// Vertex indices (P-vertex, U-vertex) of edge e.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (pi, ui, _) = &self.edges[e];
        (*pi, self.p.len() + ui)
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        if v < self.p.len() {
            &self.p[v]
        } else {
            &self.u[v - self.p.len()]
        }
    }

    pub fn is_tree(&self) -> Result<bool> {
        Ok(cycle_rank(self)?.rank == 0)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph reduction {\n");
        for v in 0..self.vertex_count() {
            let shape = if v < self.p.len() { "box" } else { "ellipse" };
            let _ = writeln!(s, "  v{v} [label=\"{}\", shape={shape}];", self.vertex_label(v));
        }
        for (e, (_, _, label)) in self.edges.iter().enumerate() {
            let (a, b) = self.endpoints(e);
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"{label}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// One point on one component met by two branches: the graph with two
/// vertices joined by two edges.
pub fn tate_graph() -> ReductionGraph {
    ReductionGraph {
        p: vec!["P".into()],
        u: vec!["U".into()],
        edges: vec![(0, 0, "branch0".into()), (0, 0, "branch1".into())],
    }
}

/// A spanning tree and the remaining edges (chords), which index a basis of
/// H₁(Γ, ℤ) ≅ ℤ^r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasisData {
    pub spanning_tree: Vec<usize>,
    pub chords: Vec<usize>,
    pub rank: usize,
}

/// Breadth-first spanning tree from vertex 0 (the first P-vertex), scanning
/// edges in input order; the chords keep input order.
pub fn cycle_rank(g: &ReductionGraph) -> Result<CycleBasisData> {
    g.check()?;
    let nv = g.vertex_count();
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; g.edges.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for e in 0..g.edges.len() {
            let (a, b) = g.endpoints(e);
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    let spanning_tree: Vec<usize> = (0..g.edges.len()).filter(|&e| in_tree[e]).collect();
    let chords: Vec<usize> = (0..g.edges.len()).filter(|&e| !in_tree[e]).collect();
    Ok(CycleBasisData {
        rank: chords.len(),
        spanning_tree,
        chords,
    })
}

/// A loop through two vertices along two parallel edges, with its class
/// in H₁ in chord coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCycle {
    pub edges: (usize, usize),
    pub image: Vec<i64>,
}

/// For each pair i < j of parallel edges, the class of the loop that runs
/// along edge i from P to U and back along edge j. In chord coordinates the
/// class is the loop's own coefficient on each chord.
pub fn two_cycle_images(g: &ReductionGraph, basis: &CycleBasisData) -> Vec<TwoCycle> {
    let chord_index = |e: usize| basis.chords.iter().position(|&c| c == e);
    let mut out = Vec::new();
    for i in 0..g.edges.len() {
        for j in i + 1..g.edges.len() {
            if g.endpoints(i) != g.endpoints(j) {
                continue;
            }
            let mut image = vec![0i64; basis.rank];
            if let Some(c) = chord_index(i) {
                image[c] += 1;
            }
            if let Some(c) = chord_index(j) {
                image[c] -= 1;
            }
            out.push(TwoCycle { edges: (i, j), image });
        }
    }
    out
}

/// The smallest n ≥ 2 such that no image lies in nℤ^r, i.e. n divides the
/// gcd of the coordinates of none of them.
pub fn choose_n(images: &[Vec<i64>]) -> Result<u64> {
    if images.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut gcds = Vec::with_capacity(images.len());
    for v in images {
        if v.is_empty() {
            return Err(Error::RankZero);
        }
        let g = v.iter().fold(0i64, |acc, &c| acc.gcd(&c)).unsigned_abs();
        if g == 0 {
            return Err(Error::HypothesisViolated("a two-cycle image is zero".into()));
        }
        gcds.push(g);
    }
    Ok((2..).find(|n| gcds.iter().all(|g| g % n != 0)).unwrap())
}

/// A covering graph of a reduction graph with group (ℤ/n)^r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCover {
    pub base: ReductionGraph,
    pub n: u64,
    pub r: usize,
    /// (base vertex, group element) for each cover vertex.
    pub vertices: Vec<(usize, Vec<u64>)>,
    /// (cover vertex over a P-vertex, cover vertex over a U-vertex, base edge).
    pub edges: Vec<(usize, usize, usize)>,
}

impl GraphCover {
    /// Number of sheets, n^r.
    pub fn degree(&self) -> usize {
        (self.n as usize).pow(self.r as u32)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph cover {\n");
        for (k, (v, g)) in self.vertices.iter().enumerate() {
            let shape = if *v < self.base.p.len() { "box" } else { "ellipse" };
            let label = format!("{}{:?}", self.base.vertex_label(*v), g);
            let _ = writeln!(s, "  c{k} [label=\"{label}\", shape={shape}];");
        }
        for (a, b, e) in &self.edges {
            let _ = writeln!(s, "  c{a} -- c{b} [label=\"{}\"];", self.base.edges[*e].2);
        }
        s.push_str("}\n");
        s
    }
}

fn group_elements(n: u64, r: usize) -> Vec<Vec<u64>> {
    let count = (n as usize).pow(r as u32);
    (0..count)
        .map(|mut k| {
            let mut g = vec![0u64; r];
            for slot in g.iter_mut().rev() {
                *slot = (k % n as usize) as u64;
                k /= n as usize;
            }
            g
        })
        .collect()
}

/// Voltage construction: tree edges carry 0 and chord i carries the i-th
/// generator of (ℤ/n)^r; the edge (p, u) lifts to (p, g), (u, g + voltage).
pub fn build_abelian_cover(g: &ReductionGraph, basis: &CycleBasisData, n: u64) -> Result<GraphCover> {
    if n == 0 {
        return Err(Error::HypothesisViolated("group order must be positive".into()));
    }
    let r = basis.rank;
    let group = group_elements(n, r);
    let sheets = group.len();
    let index_of = |h: &[u64]| h.iter().fold(0usize, |acc, &c| acc * n as usize + c as usize);
    let vertices: Vec<(usize, Vec<u64>)> = (0..g.vertex_count())
        .flat_map(|v| group.iter().map(move |h| (v, h.clone())))
        .collect();
    let mut edges = Vec::with_capacity(g.edges.len() * sheets);
    for e in 0..g.edges.len() {
        let (a, b) = g.endpoints(e);
        let chord = basis.chords.iter().position(|&c| c == e);
        for h in &group {
            let mut target = h.clone();
            if let Some(c) = chord {
                target[c] = (target[c] + 1) % n;
            }
            edges.push((a * sheets + index_of(h), b * sheets + index_of(&target), e));
        }
    }
    Ok(GraphCover {
        base: g.clone(),
        n,
        r,
        vertices,
        edges,
    })
}

/// Itemized result of [`validate_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub star_bijection: bool,
    pub bipartite: bool,
    pub connected: bool,
    pub no_parallel_edges: bool,
    pub failures: Vec<String>,
}

impl CoverReport {
    pub fn all_pass(&self) -> bool {
        self.star_bijection && self.bipartite && self.connected && self.no_parallel_edges
    }
}

/// Checks the covering-map star condition, bipartiteness, connectivity and
/// absence of parallel edges.
pub fn validate_cover(c: &GraphCover) -> CoverReport {
    let base = &c.base;
    let nv = c.vertices.len();
    let np = base.p.len();
    let mut failures = Vec::new();
    let in_range = c.edges.iter().all(|(a, b, e)| *a < nv && *b < nv && *e < base.edges.len());
    if !in_range {
        failures.push("edge refers to a missing vertex or base edge".to_string());
        return CoverReport {
            star_bijection: false,
            bipartite: false,
            connected: false,
            no_parallel_edges: false,
            failures,
        };
    }

    let mut star_ok = true;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (a, b, e) in &c.edges {
        let (ba, bb) = base.endpoints(*e);
        if c.vertices[*a].0 != ba || c.vertices[*b].0 != bb {
            star_ok = false;
            failures.push(format!("cover edge over base edge {e} does not project onto it"));
        }
        incident[*a].push(*e);
        incident[*b].push(*e);
    }
    for (k, (v, _)) in c.vertices.iter().enumerate() {
        let mut want: Vec<usize> = (0..base.edges.len())
            .filter(|&e| {
                let (a, b) = base.endpoints(e);
                a == *v || b == *v
            })
            .collect();
        let mut have = incident[k].clone();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            star_ok = false;
            failures.push(format!("star of cover vertex {k} does not map bijectively"));
        }
    }

    let bipartite = c
        .edges
        .iter()
        .all(|(a, b, _)| c.vertices[*a].0 < np && c.vertices[*b].0 >= np);
    if !bipartite {
        failures.push("an edge does not join a point to a component".to_string());
    }

    let mut seen = vec![false; nv];
    let mut stack = vec![0];
    if nv > 0 {
        seen[0] = true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (a, b, _) in &c.edges {
        adj[*a].push(*b);
        adj[*b].push(*a);
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let connected = seen.iter().all(|s| *s);
    if !connected {
        failures.push("cover is disconnected".to_string());
    }

    let mut pairs = HashSet::new();
    let mut no_parallel = true;
    for (a, b, _) in &c.edges {
        if !pairs.insert((*a.min(b), *a.max(b))) {
            no_parallel = false;
            failures.push(format!("parallel edges between cover vertices {a} and {b}"));
        }
    }

    CoverReport {
        star_bijection: star_ok,
        bipartite,
        connected,
        no_parallel_edges: no_parallel,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> ReductionGraph {
        ReductionGraph::new(
            vec!["P".into()],
            vec!["U".into()],
            (0..3).map(|i| (0, 0, format!("e{i}"))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn tate_graph_data() {
        let g = tate_graph();
        assert_eq!((g.vertex_count(), g.edges.len()), (2, 2));
        let b = cycle_rank(&g).unwrap();
        assert_eq!(b.rank, 1);
        let imgs = two_cycle_images(&g, &b);
        assert_eq!(imgs.len(), 1);
        assert_eq!(imgs[0].image[0].abs(), 1);
        assert!(!g.is_tree().unwrap());
    }

    #[test]
    fn theta_graph() {
        let g = theta();
        let b = cycle_rank(&g).unwrap();
        assert_eq!(b.rank, 2);
        let imgs = two_cycle_images(&g, &b);
        assert_eq!(imgs.len(), 3);
        assert!(imgs.iter().all(|t| t.image.iter().any(|&c| c != 0)));
        let n = choose_n(&imgs.iter().map(|t| t.image.clone()).collect::<Vec<_>>()).unwrap();
        let c = build_abelian_cover(&g, &b, n).unwrap();
        assert_eq!(c.vertices.len(), 2 * (n as usize).pow(2));
        assert!(validate_cover(&c).all_pass());
    }

    #[test]
    fn choose_n_examples() {
        assert_eq!(choose_n(&[vec![1]]).unwrap(), 2);
        assert_eq!(choose_n(&[vec![2]]).unwrap(), 3);
        assert_eq!(choose_n(&[vec![6], vec![4]]).unwrap(), 5);
        assert_eq!(choose_n(&[]), Err(Error::EmptyInput));
        assert_eq!(choose_n(&[vec![]]), Err(Error::RankZero));
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = ReductionGraph::new(vec!["P".into(), "Q".into()], vec!["U".into()], vec![(0, 0, "a".into())]).unwrap();
        assert_eq!(cycle_rank(&g), Err(Error::Disconnected));
        assert!(ReductionGraph::new(vec!["P".into()], vec![], vec![(0, 0, "a".into())]).is_err());
    }

    #[test]
    fn corrupted_cover_fails_parallel_check() {
        let g = tate_graph();
        let b = cycle_rank(&g).unwrap();
        let mut c = build_abelian_cover(&g, &b, 3).unwrap();
        assert!(validate_cover(&c).all_pass());
        let dup = c.edges[0];
        c.edges.push(dup);
        let report = validate_cover(&c);
        assert!(!report.no_parallel_edges);
        assert!(!report.star_bijection);
    }

    #[test]
    fn identity_cover_passes() {
        let g = ReductionGraph::new(vec!["P".into()], vec!["U".into(), "V".into()], vec![(0, 0, "a".into()), (0, 1, "b".into())]).unwrap();
        let b = cycle_rank(&g).unwrap();
        let c = build_abelian_cover(&g, &b, 1).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(validate_cover(&c).all_pass());
        assert!(g.to_dot().contains("v0 -- v1"));
    }
}
