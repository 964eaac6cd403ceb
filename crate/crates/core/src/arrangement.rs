//! Graphic hyperplane arrangements `{x_i = x_j : ij ∈ E(Γ)}` restricted to a
//! subspace `s`: induced hyperplanes, flats as partitions of the points into
//! Γ-connected blocks, Möbius values, and the exact feasibility oracle that
//! decides which orientations (regions) are realized.

use crate::counting::Budget;
use crate::exact::{self, lcm_denominators, AffineSubspace, LinearSystem, Rational};
use crate::polytope::{intersection_points, BoundMode, Closure, HPolytope, LiftedRow, SlackRow};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

/// Simple graph on `0..n`; an edge `{i, j}` forbids `x_i = x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl ForbiddenGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .inspect(|&(_, b)| assert!(b < n, "edge endpoint out of range"))
            .collect();
        ForbiddenGraph {
            n,
            edges: set.into_iter().collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, [])
    }

    /// Union of the cliques on each group.
    pub fn from_cliques<'a>(n: usize, groups: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut edges = Vec::new();
        for g in groups {
            for (a, &i) in g.iter().enumerate() {
                for &j in &g[a + 1..] {
                    edges.push((i, j));
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }
}

/// One hyperplane of `H^s`, with every graph edge that induces it.
#[derive(Clone, Debug)]
pub struct InducedHyperplane {
    pub edges: Vec<(usize, usize)>,
    pub(crate) row: LiftedRow,
}

#[derive(Clone, Debug)]
pub struct InducedArrangement {
    pub hyperplanes: Vec<InducedHyperplane>,
    /// Edges whose hyperplane contains `s`.
    pub dropped: Vec<(usize, usize)>,
}

/// `x_j - x_i` pulled back to lattice coordinates, as `g·c ≥ h` meaning
/// `x_j - x_i ≥ 0`.
fn difference_row(s: &AffineSubspace, i: usize, j: usize) -> LiftedRow {
    let mut a = vec![Rational::zero(); s.ambient_dim()];
    a[j] = exact::rat(1);
    a[i] = exact::rat(-1);
    let (g, off) = s.pull_back(&a);
    LiftedRow { g, h: -off }
}

fn canonical_hyperplane(row: &LiftedRow) -> (Vec<Rational>, Rational) {
    let pivot = row
        .g
        .iter()
        .find(|v| !v.is_zero())
        .expect("nonzero hyperplane")
        .clone();
    (
        row.g.iter().map(|v| v / &pivot).collect(),
        &row.h / &pivot,
    )
}

/// `H^s`: restrict each edge hyperplane to `s`, dropping those containing
/// `s` and merging those with equal intersections.
pub fn induce(graph: &ForbiddenGraph, s: &AffineSubspace) -> InducedArrangement {
    let mut dropped = Vec::new();
    let mut merged: BTreeMap<(Vec<Rational>, Rational), InducedHyperplane> = BTreeMap::new();
    for &(i, j) in graph.edges() {
        if s.forces_equal(i, j) {
            dropped.push((i, j));
            continue;
        }
        let row = difference_row(s, i, j);
        if row.g.iter().all(Zero::is_zero) {
            // x_i - x_j is a nonzero constant on s: the hyperplane misses s
            continue;
        }
        merged
            .entry(canonical_hyperplane(&row))
            .or_insert_with(|| InducedHyperplane {
                edges: Vec::new(),
                row,
            })
            .edges
            .push((i, j));
    }
    let mut hyperplanes: Vec<InducedHyperplane> = merged.into_values().collect();
    hyperplanes.sort_by(|a, b| a.edges.cmp(&b.edges));
    InducedArrangement {
        hyperplanes,
        dropped,
    }
}

/// A flat of `H^s`, stored as the partition of the points into blocks that
/// are connected by edges whose hyperplane contains the flat.
#[derive(Clone, Debug)]
pub struct Flat {
    pub blocks: Vec<Vec<usize>>,
    pub polytope: HPolytope,
    pub meets_interior: bool,
}

impl Flat {
    pub fn subspace(&self) -> &AffineSubspace {
        self.polytope.subspace()
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    fn block_of(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(|b| b.len()).sum();
        let mut of = vec![0; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                of[i] = k;
            }
        }
        of
    }

    /// Whether `self ≤ other` in reverse inclusion, i.e. every block of
    /// `self` lies inside a block of `other`.
    pub fn below(&self, other: &Flat) -> bool {
        let of = other.block_of();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&i| of[i] == of[b[0]]))
    }
}

/// Connected components of the edges that vanish identically on `u`.
fn closure_partition(graph: &ForbiddenGraph, u: &AffineSubspace) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &(i, j) in graph.edges() {
        if u.forces_equal(i, j) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    /// Sorted by decreasing dimension; `flats[0]` is the bottom element `s`.
    pub flats: Vec<Flat>,
    /// `μ(0̂, u)` for each flat.
    pub moebius: Vec<i64>,
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `Σ_{u ≤ v} μ(0̂, u)` for each `v`; 1 at the bottom and 0 elsewhere.
    pub fn moebius_partial_sums(&self) -> Vec<i64> {
        (0..self.len())
            .map(|v| {
                (0..self.len())
                    .filter(|&u| self.flats[u].below(&self.flats[v]))
                    .map(|u| self.moebius[u])
                    .sum()
            })
            .collect()
    }
}

/// Breadth-first closure from `s`: intersect each flat with one more edge
/// hyperplane at a time, keep flats meeting the polytope (closed or open),
/// dedupe by partition.
fn enumerate_flats(
    graph: &ForbiddenGraph,
    p: &HPolytope,
    keep: Closure,
    budget: &Budget,
) -> Result<Vec<Flat>> {
    let mode: BoundMode = p.mode();
    let meets = |q: &HPolytope| -> (bool, bool) {
        let open = !q.is_degenerate();
        let closed = open || q.max_slack(&[], Closure::Closed).is_some();
        (closed, open)
    };
    let (closed0, open0) = meets(p);
    let ok0 = match keep {
        Closure::Closed => closed0,
        Closure::Open => open0,
    };
    if !ok0 {
        return Ok(Vec::new());
    }
    let bottom = Flat {
        blocks: closure_partition(graph, p.subspace()),
        polytope: p.clone(),
        meets_interior: open0,
    };
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    seen.insert(bottom.blocks.clone());
    let mut flats = vec![bottom];
    let mut queue = VecDeque::from([0usize]);
    while let Some(fi) = queue.pop_front() {
        let of = flats[fi].block_of();
        let candidates: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(i, j)| of[i] != of[j])
            .collect();
        let base = flats[fi].subspace().clone();
        let children: Vec<Option<Flat>> = candidates
            .par_iter()
            .map(|&(i, j)| -> Result<Option<Flat>> {
                let mut eq = LinearSystem::unconstrained(graph.node_count());
                eq.push_equal(i, j);
                let u = base.restrict(&eq);
                if u.is_empty() {
                    return Ok(None);
                }
                let q = crate::polytope::build_polytope(u, mode)?;
                let (closed, open) = meets(&q);
                let ok = match keep {
                    Closure::Closed => closed,
                    Closure::Open => open,
                };
                if !ok {
                    return Ok(None);
                }
                let blocks = closure_partition(graph, q.subspace());
                Ok(Some(Flat {
                    blocks,
                    polytope: q,
                    meets_interior: open,
                }))
            })
            .collect::<Result<_>>()?;
        for child in children.into_iter().flatten() {
            if seen.insert(child.blocks.clone()) {
                if flats.len() as u128 >= budget.max_flats {
                    return Err(Error::TooLarge {
                        what: "flats",
                        needed: flats.len() as u128 + 1,
                        limit: budget.max_flats,
                    });
                }
                queue.push_back(flats.len());
                flats.push(child);
            }
        }
    }
    flats.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.blocks.cmp(&b.blocks)));
    Ok(flats)
}

/// `L(P°, H)` with `μ(0̂, ·)`.
pub fn intersection_poset(
    graph: &ForbiddenGraph,
    p: &HPolytope,
    budget: &Budget,
) -> Result<IntersectionPoset> {
    let flats = enumerate_flats(graph, p, Closure::Open, budget)?;
    let mut moebius: Vec<i64> = Vec::with_capacity(flats.len());
    for v in 0..flats.len() {
        if v == 0 {
            moebius.push(1);
            continue;
        }
        let s: i64 = (0..v)
            .filter(|&u| flats[u].below(&flats[v]) && flats[u].dim() > flats[v].dim())
            .map(|u| moebius[u])
            .sum();
        moebius.push(-s);
    }
    Ok(IntersectionPoset { flats, moebius })
}

/// Transverse: `P` lies in no hyperplane of `H[Γ]` and every flat meeting
/// `P` also meets `P°`.
pub fn transversal(graph: &ForbiddenGraph, p: &HPolytope, budget: &Budget) -> Result<bool> {
    if graph.edges().iter().any(|&(i, j)| p.subspace().forces_equal(i, j)) {
        return Ok(false);
    }
    let flats = enumerate_flats(graph, p, Closure::Closed, budget)?;
    Ok(flats.iter().all(|f| f.meets_interior))
}

/// Least `t` putting every vertex of every region of `(P, H)` in `t⁻¹Z^d`.
pub fn inside_out_denominator(
    p: &HPolytope,
    arr: &InducedArrangement,
    budget: &Budget,
) -> Result<BigInt> {
    let mut planes: Vec<LiftedRow> = p.lifted().to_vec();
    planes.extend(arr.hyperplanes.iter().map(|h| h.row.clone()));
    let pts = intersection_points(p.lifted(), &planes, p.dim(), budget)?;
    let xs: Vec<Vec<Rational>> = pts.iter().map(|c| p.subspace().point_at(c)).collect();
    Ok(lcm_denominators(xs.iter().flatten()))
}

/// An acyclic orientation of the forbidden graph, each edge `(i, j)` read as
/// `x_i < x_j`. Orientations of a complete graph also carry the total order
/// `order[0] < order[1] < ...` (cell indices, smallest value first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    pub edges: Vec<(usize, usize)>,
    pub order: Option<Vec<usize>>,
}

impl Orientation {
    pub fn from_order(order: Vec<usize>) -> Self {
        let mut edges = Vec::new();
        for (a, &i) in order.iter().enumerate() {
            for &j in &order[a + 1..] {
                edges.push((i, j));
            }
        }
        edges.sort_unstable();
        Orientation {
            edges,
            order: Some(order),
        }
    }

    pub fn from_edges(mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        Orientation { edges, order: None }
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self
            .edges
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0);
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    /// Compatible with `x` when `x_i ≤ x_j` along every oriented edge.
    pub fn compatible_with(&self, x: &[i64]) -> bool {
        match &self.order {
            Some(o) => o.windows(2).all(|w| x[w[0]] <= x[w[1]]),
            None => self.edges.iter().all(|&(i, j)| x[i] <= x[j]),
        }
    }

    /// Rank (1-based) of each cell in the total order, the usual way of
    /// drawing a permutation on the cells.
    pub fn positions(&self) -> Option<Vec<usize>> {
        let o = self.order.as_ref()?;
        let mut pos = vec![0; o.len()];
        for (k, &cell) in o.iter().enumerate() {
            pos[cell] = k + 1;
        }
        Some(pos)
    }
}

/// Where a realizing point must live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Anywhere in the subspace `s`.
    Subspace,
    /// In the closed polytope `P`.
    Closed,
    /// In the relative interior `P°`.
    Open,
}

fn slack_rows(p: &HPolytope, edges: &[(usize, usize)]) -> Vec<SlackRow> {
    edges
        .iter()
        .map(|&(i, j)| {
            let row = difference_row(p.subspace(), i, j);
            SlackRow {
                g: row.g,
                h: row.h,
                strict: true,
            }
        })
        .collect()
}

fn membership(target: Target) -> Option<Closure> {
    match target {
        Target::Subspace => None,
        Target::Closed => Some(Closure::Closed),
        Target::Open => Some(Closure::Open),
    }
}

fn strictly_feasible(p: &HPolytope, edges: &[(usize, usize)], target: Target) -> bool {
    matches!(p.max_slack_with(&slack_rows(p, edges), membership(target)), Some(v) if v.is_positive())
}

/// Is there a point of the target set satisfying every oriented edge
/// strictly? Decided by maximizing a common slack `δ ≤ 1` with exact
/// simplex; feasible iff the optimum is positive.
pub fn feasible(orientation: &Orientation, p: &HPolytope, target: Target) -> bool {
    let edges: Vec<(usize, usize)> = match &orientation.order {
        Some(o) => o.windows(2).map(|w| (w[0], w[1])).collect(),
        None => orientation.edges.clone(),
    };
    strictly_feasible(p, &edges, target)
}

struct Sweep<'a> {
    p: &'a HPolytope,
    target: Target,
    /// `weak[k]` relaxes the link after position `k` of an order to `≤`.
    weak: Vec<bool>,
    found: AtomicU64,
    limit: u128,
}

impl Sweep<'_> {
    fn feasible(&self, rows: &[(usize, usize, bool)]) -> bool {
        let rows: Vec<SlackRow> = rows
            .iter()
            .map(|&(i, j, weak)| {
                let row = difference_row(self.p.subspace(), i, j);
                SlackRow {
                    g: row.g,
                    h: row.h,
                    strict: !weak,
                }
            })
            .collect();
        matches!(self.p.max_slack_with(&rows, membership(self.target)), Some(v) if v.is_positive())
    }

    fn bump(&self) -> Result<()> {
        let n = self.found.fetch_add(1, Ordering::Relaxed) as u128 + 1;
        if n > self.limit {
            return Err(Error::TooLarge {
                what: "orientations",
                needed: n,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// Orders whose first `prefix.len()` cells are the smallest, in order.
    fn orders(&self, prefix: Vec<usize>, remaining: Vec<usize>) -> Result<Vec<Vec<usize>>> {
        if let Some(&last) = prefix.last() {
            let k = prefix.len() - 1;
            let weak = |k: usize| self.weak.get(k).copied().unwrap_or(false);
            let mut rows: Vec<(usize, usize, bool)> =
                prefix.windows(2).enumerate().map(|(i, w)| (w[0], w[1], weak(i))).collect();
            // the cells still to come sit above `last`, strictly unless the
            // next link is a tie
            rows.extend(remaining.iter().map(|&j| (last, j, weak(k))));
            if !self.feasible(&rows) {
                return Ok(Vec::new());
            }
        }
        if remaining.len() <= 1 {
            let mut o = prefix;
            o.extend(remaining);
            self.bump()?;
            return Ok(vec![o]);
        }
        let branch = |&j: &usize| {
            let mut pre = prefix.clone();
            pre.push(j);
            let rest: Vec<usize> = remaining.iter().copied().filter(|&k| k != j).collect();
            self.orders(pre, rest)
        };
        let parts: Vec<Vec<Vec<usize>>> = if prefix.len() < 3 {
            remaining.par_iter().map(branch).collect::<Result<_>>()?
        } else {
            remaining.iter().map(branch).collect::<Result<_>>()?
        };
        Ok(parts.into_iter().flatten().collect())
    }

    fn orientations(
        &self,
        edges: &[(usize, usize)],
        n: usize,
        chosen: Vec<(usize, usize)>,
    ) -> Result<Vec<Vec<(usize, usize)>>> {
        if !chosen.is_empty() && !strictly_feasible(self.p, &chosen, self.target) {
            return Ok(Vec::new());
        }
        let k = chosen.len();
        if k == edges.len() {
            self.bump()?;
            return Ok(vec![chosen]);
        }
        let (a, b) = edges[k];
        let reaches = |from: usize, to: usize| -> bool {
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
            for &(x, y) in &chosen {
                adj[x].push(y);
            }
            let mut stack = vec![from];
            let mut seen = vec![false; n];
            while let Some(v) = stack.pop() {
                if v == to {
                    return true;
                }
                if std::mem::replace(&mut seen[v], true) {
                    continue;
                }
                stack.extend(adj[v].iter().copied());
            }
            false
        };
        let mut options = Vec::new();
        if !reaches(b, a) {
            options.push((a, b));
        }
        if !reaches(a, b) {
            options.push((b, a));
        }
        let parts: Vec<Vec<Vec<(usize, usize)>>> = options
            .par_iter()
            .map(|&e| {
                let mut c = chosen.clone();
                c.push(e);
                self.orientations(edges, n, c)
            })
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().flatten().collect())
    }
}

/// Every acyclic orientation of `graph` realizable in the target set.
///
/// Complete graphs are swept as total orders, growing the order one cell at
/// a time; otherwise edges are oriented one at a time with cycle checks.
/// A partial choice is pruned as soon as the slack LP finds it infeasible,
/// which is exact because any strictly feasible partial choice extends.
/// Orders of all cells realizable in the target set when the links after
/// the positions flagged in `weak` may be ties.
pub(crate) fn realizable_orders_with_ties(
    p: &HPolytope,
    weak: Vec<bool>,
    target: Target,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let sweep = Sweep {
        p,
        target,
        weak,
        found: AtomicU64::new(0),
        limit: budget.max_orientations,
    };
    let mut out = sweep.orders(Vec::new(), (0..p.ambient_dim()).collect())?;
    out.sort();
    Ok(out)
}

pub fn realizable_orientations(
    graph: &ForbiddenGraph,
    p: &HPolytope,
    target: Target,
    budget: &Budget,
) -> Result<Vec<Orientation>> {
    let sweep = Sweep {
        p,
        target,
        weak: Vec::new(),
        found: AtomicU64::new(0),
        limit: budget.max_orientations,
    };
    let n = graph.node_count();
    if graph
        .edges()
        .iter()
        .any(|&(i, j)| p.subspace().forces_equal(i, j))
    {
        return Ok(Vec::new());
    }
    let mut out: Vec<Orientation> = if graph.is_complete() && n > 1 {
        sweep
            .orders(Vec::new(), (0..n).collect())?
            .into_iter()
            .map(Orientation::from_order)
            .collect()
    } else {
        if !strictly_feasible(p, &[], target) && target != Target::Subspace {
            return Ok(Vec::new());
        }
        sweep
            .orientations(graph.edges(), n, Vec::new())?
            .into_iter()
            .map(Orientation::from_edges)
            .collect()
    };
    out.sort();
    Ok(out)
}
