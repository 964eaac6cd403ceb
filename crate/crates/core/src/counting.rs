//! Lattice point counts of dilates `tP`, restricted to points off the
//! forbidden hyperplanes, with multiplicities, and via Möbius sums.
//!
//! Integer points of `t·s` are `t·base + B c` with `c ∈ Z^r` whenever `p(s)`
//! divides `t` (and there are none otherwise). The polytope is projected onto
//! each prefix `(c_0, …, c_k)` once by Fourier–Motzkin elimination, so the
//! nested loops over `c` only visit integer points whose prefix extends to a
//! real point of `tP`.

use crate::arrangement::{intersection_poset, realizable_orientations, transversal, Orientation, Target};
use crate::clutter::InsideOutProblem;
use crate::exact::{maximize, LpOutcome, Rational};
use crate::polytope::{BoundMode, Closure, HPolytope};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::Add;

/// Work limits; exceeding one yields [`Error::TooLarge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Candidate lattice points in the bounding box of one dilate.
    pub max_points: u128,
    /// Realizable orientations collected by a sweep.
    pub max_orientations: u128,
    /// `dim`-subsets of hyperplanes tried during vertex enumeration.
    pub max_subsets: u128,
    /// Flats of an intersection poset.
    pub max_flats: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 100_000_000,
            max_orientations: 1_000_000,
            max_subsets: 10_000_000,
            max_flats: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Points of `tP°` off every forbidden hyperplane.
    OpenStrong,
    /// Points of `tP` weighted by the number of compatible realizable
    /// orientations.
    ClosedMultiplicity,
    WeakOpen,
    WeakClosed,
    /// Open count through the signed Möbius sum over flats.
    MoebiusOpen,
    /// Closed count through `Σ |μ| E_{P∩u}`; needs transversality.
    MoebiusClosed,
}

impl Regime {
    pub const ALL: [Regime; 6] = [
        Regime::OpenStrong,
        Regime::ClosedMultiplicity,
        Regime::WeakOpen,
        Regime::WeakClosed,
        Regime::MoebiusOpen,
        Regime::MoebiusClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::OpenStrong => "open-strong",
            Regime::ClosedMultiplicity => "closed-multiplicity",
            Regime::WeakOpen => "weak-open",
            Regime::WeakClosed => "weak-closed",
            Regime::MoebiusOpen => "moebius-open",
            Regime::MoebiusClosed => "moebius-closed",
        }
    }

    /// Whether this regime counts the closed dilate (and so makes sense at
    /// `t = 0`).
    pub fn is_closed(self) -> bool {
        matches!(
            self,
            Regime::ClosedMultiplicity | Regime::WeakClosed | Regime::MoebiusClosed
        )
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::schema("regime", format!("unknown regime {s:?}")))
    }
}

/// All direct counts at one dilation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub open_strong: u64,
    /// `None` when no orientation list was supplied.
    pub closed_multiplicity: Option<u64>,
    pub weak_open: u64,
    pub weak_closed: u64,
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            open_strong: self.open_strong + o.open_strong,
            closed_multiplicity: match (self.closed_multiplicity, o.closed_multiplicity) {
                (Some(a), Some(b)) => Some(a + b),
                (a, b) => a.or(b),
            },
            weak_open: self.weak_open + o.weak_open,
            weak_closed: self.weak_closed + o.weak_closed,
        }
    }
}

/// Exact counts indexed by `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountSeries {
    pub regime: Regime,
    pub values: BTreeMap<u64, u64>,
}

impl CountSeries {
    pub fn new(regime: Regime) -> Self {
        CountSeries {
            regime,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, t: u64) -> Option<u64> {
        self.values.get(&t).copied()
    }

    /// Largest `T` such that every `t = 1..=T` is present.
    pub fn contiguous_max(&self) -> u64 {
        let mut t = 0;
        while self.values.contains_key(&(t + 1)) {
            t += 1;
        }
        t
    }
}

type Row = (Vec<Rational>, Rational);

/// Removes rows implied by the others (checked at `t = 1`, which covers every
/// `t ≥ 0` because the system is homogeneous in `(c, t)`).
fn prune_redundant(mut rows: Vec<Row>) -> Vec<Row> {
    let mut i = 0;
    while i < rows.len() {
        let (g, h) = &rows[i];
        let objective: Vec<Rational> = g.iter().map(|v| -v).collect();
        let others: Vec<Row> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, (gj, hj))| (gj.iter().map(|v| -v).collect(), -hj.clone()))
            .collect();
        let redundant = match maximize(&objective, &others) {
            LpOutcome::Optimal { value, .. } => -value >= *h,
            LpOutcome::Infeasible => false,
            LpOutcome::Unbounded => false,
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    rows
}

fn normalize(row: Row) -> Option<Row> {
    let (g, h) = row;
    if g.iter().all(Zero::is_zero) {
        return None;
    }
    let l = Rational::from_integer(crate::exact::lcm_denominators(g.iter().chain([&h])));
    let gi: Vec<BigInt> = g.iter().map(|v| (v * &l).to_integer()).collect();
    let gcd = gi.iter().fold(BigInt::zero(), |a, v| a.gcd(v));
    // the bound stays rational; rounding it would change the projection
    let h = Rational::new((&h * &l).to_integer(), gcd.clone());
    Some((gi.into_iter().map(|v| Rational::from_integer(v / &gcd)).collect(), h))
}

/// Fourier–Motzkin: `levels[k]` describes the projection onto `c_0..=c_k`,
/// keeping only rows that involve `c_k`.
fn projections(p: &HPolytope) -> Vec<Vec<Row>> {
    let r = p.dim();
    let mut system: Vec<Row> = p
        .lifted()
        .iter()
        .filter_map(|row| normalize((row.g.clone(), row.h.clone())))
        .collect::<BTreeSet<Row>>()
        .into_iter()
        .collect();
    system = prune_redundant(system);
    let mut levels: Vec<Vec<Row>> = vec![Vec::new(); r];
    for k in (0..r).rev() {
        levels[k] = system.iter().filter(|(g, _)| !g[k].is_zero()).cloned().collect();
        if k == 0 {
            break;
        }
        let mut next: BTreeSet<Row> = BTreeSet::new();
        let (pos, neg): (Vec<&Row>, Vec<&Row>) = levels[k].iter().partition(|(g, _)| g[k].is_positive());
        for (g, h) in system.iter().filter(|(g, _)| g[k].is_zero()) {
            next.insert((g[..k].to_vec(), h.clone()));
        }
        for (gp, hp) in &pos {
            for (gn, hn) in &neg {
                let a = -&gn[k];
                let b = gp[k].clone();
                let g: Vec<Rational> = (0..k).map(|j| &gp[j] * &a + &gn[j] * &b).collect();
                let h = hp * &a + hn * &b;
                if let Some(row) = normalize((g, h)) {
                    next.insert(row);
                }
            }
        }
        system = prune_redundant(next.into_iter().collect());
    }
    levels
}

/// Integer form `g·c ≥ t·h` of a projection row, scaled to clear
/// denominators of `h` too.
#[derive(Clone, Debug)]
struct IntRow {
    g: Vec<i128>,
    h: i128,
}

/// Dilation-independent data for enumerating one polytope.
#[derive(Clone, Debug)]
pub struct Enumerator {
    d: usize,
    r: usize,
    period: u64,
    cubical: bool,
    /// `period · base`, integral.
    scaled_base: Vec<i64>,
    /// Lattice basis as columns: `basis[k][i]`.
    basis: Vec<Vec<i64>>,
    levels: Vec<Vec<IntRow>>,
    /// Extent of each lattice coordinate over `P` (at `t = 1`).
    extent: Vec<(Rational, Rational)>,
}

impl Enumerator {
    pub fn new(p: &HPolytope) -> Result<Self> {
        let s = p.subspace();
        let period = s.period().ok_or(Error::InfeasibleSystem)?;
        let base = s.particular_point().ok_or(Error::InfeasibleSystem)?;
        let pr = Rational::from_integer(BigInt::from(period));
        let scaled_base = base
            .iter()
            .map(|v| {
                let w = v * &pr;
                debug_assert!(w.is_integer());
                w.to_integer().to_i64().ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = s
            .lattice_basis()
            .iter()
            .map(|b| b.iter().map(|v| v.to_i64().ok_or(Error::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        let levels = projections(p)
            .into_iter()
            .map(|rows| {
                rows.into_iter()
                    .map(|(g, h)| {
                        let l = Rational::from_integer(crate::exact::lcm_denominators(g.iter().chain([&h])));
                        let conv = |v: &Rational| (v * &l).to_integer().to_i128().ok_or(Error::Overflow);
                        Ok(IntRow {
                            g: g.iter().map(conv).collect::<Result<_>>()?,
                            h: conv(&h)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let r = p.dim();
        let mut extent = Vec::with_capacity(r);
        let cons: Vec<Row> = p
            .lifted()
            .iter()
            .map(|row| (row.g.iter().map(|v| -v).collect(), -row.h.clone()))
            .collect();
        for k in 0..r {
            let mut e = vec![Rational::zero(); r];
            e[k] = Rational::one();
            let hi = match maximize(&e, &cons) {
                LpOutcome::Optimal { value, .. } => value,
                LpOutcome::Unbounded => return Err(Error::UnboundedPolytope),
                LpOutcome::Infeasible => return Err(Error::InfeasibleSystem),
            };
            e[k] = -Rational::one();
            let lo = match maximize(&e, &cons) {
                LpOutcome::Optimal { value, .. } => -value,
                LpOutcome::Unbounded => return Err(Error::UnboundedPolytope),
                LpOutcome::Infeasible => return Err(Error::InfeasibleSystem),
            };
            extent.push((lo, hi));
        }
        Ok(Enumerator {
            d: s.ambient_dim(),
            r,
            period,
            cubical: p.mode() == BoundMode::Cubical,
            scaled_base,
            basis,
            levels,
            extent,
        })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Lattice points in the bounding box of `tP`.
    pub fn box_size(&self, t: u64) -> u128 {
        let tr = Rational::from_integer(BigInt::from(t));
        self.extent.iter().fold(1u128, |acc, (lo, hi)| {
            let n: BigInt = ((hi * &tr).floor() - (lo * &tr).ceil()).to_integer() + 1;
            acc.saturating_mul(n.to_u128().unwrap_or(0))
        })
    }

    fn bounds(&self, k: usize, c: &[i64], t: i128) -> (i128, i128) {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for row in &self.levels[k] {
            let mut rhs = t * row.h;
            for j in 0..k {
                rhs -= row.g[j] * c[j] as i128;
            }
            let gk = row.g[k];
            if gk > 0 {
                lo = lo.max(Integer::div_ceil(&rhs, &gk));
            } else {
                hi = hi.min(Integer::div_floor(&rhs, &gk));
            }
        }
        (lo, hi)
    }

    /// Calls `visit` on every integer point of `tP` (closed).
    fn each_point<F>(&self, t: u64, budget: &Budget, visit: F) -> Result<Counts>
    where
        F: Fn(&[i64], &mut Counts) + Sync,
    {
        if !t.is_multiple_of(self.period) {
            return Ok(Counts {
                closed_multiplicity: Some(0),
                ..Counts::default()
            });
        }
        let needed = self.box_size(t);
        if needed > budget.max_points {
            return Err(Error::TooLarge {
                what: "lattice points",
                needed,
                limit: budget.max_points,
            });
        }
        let q = (t / self.period) as i64;
        let start: Vec<i64> = self.scaled_base.iter().map(|v| v * q).collect();
        if self.r == 0 {
            let mut acc = Counts::default();
            if self.in_box(&start, t as i64) {
                visit(&start, &mut acc);
            }
            return Ok(acc);
        }
        let ti = t as i128;
        let (lo, hi) = self.bounds(0, &[], ti);
        if lo > hi {
            return Ok(Counts::default());
        }
        let total = (lo..=hi)
            .into_par_iter()
            .map(|c0| {
                let mut acc = Counts::default();
                let mut c = vec![0i64; self.r];
                c[0] = c0 as i64;
                let mut x = start.clone();
                for (xi, bi) in x.iter_mut().zip(&self.basis[0]) {
                    *xi += c[0] * bi;
                }
                self.descend(1, &mut c, &mut x, ti, t as i64, &visit, &mut acc);
                acc
            })
            .reduce(Counts::default, |a, b| a + b);
        Ok(total)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F>(&self, k: usize, c: &mut [i64], x: &mut [i64], ti: i128, t: i64, visit: &F, acc: &mut Counts)
    where
        F: Fn(&[i64], &mut Counts),
    {
        if k == self.r {
            debug_assert!(self.in_box(x, t));
            if self.in_box(x, t) {
                visit(x, acc);
            }
            return;
        }
        let (lo, hi) = self.bounds(k, c, ti);
        if lo > hi {
            return;
        }
        let b = &self.basis[k];
        let lo = lo as i64;
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += lo * bi;
        }
        for v in lo..=hi as i64 {
            c[k] = v;
            self.descend(k + 1, c, x, ti, t, visit, acc);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi;
            }
        }
        let past = hi as i64 + 1;
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= past * bi;
        }
    }

    fn in_box(&self, x: &[i64], t: i64) -> bool {
        x.iter().all(|&v| v >= 0 && (!self.cubical || v <= t))
    }

    fn in_open_box(&self, x: &[i64], t: i64) -> bool {
        x.iter().all(|&v| v > 0 && (!self.cubical || v < t))
    }

    /// The four direct counts at dilation `t`. Multiplicities are computed
    /// only when `orientations` is given.
    pub fn counts(
        &self,
        t: u64,
        edges: &[(usize, usize)],
        orientations: Option<&[Orientation]>,
        budget: &Budget,
    ) -> Result<Counts> {
        let ti = t as i64;
        let mut out = self.each_point(t, budget, |x, acc| {
            acc.weak_closed += 1;
            let open = self.in_open_box(x, ti);
            if open {
                acc.weak_open += 1;
                if edges.iter().all(|&(i, j)| x[i] != x[j]) {
                    acc.open_strong += 1;
                }
            }
            if let Some(os) = orientations {
                let m = os.iter().filter(|o| o.compatible_with(x)).count() as u64;
                *acc.closed_multiplicity.get_or_insert(0) += m;
            }
        })?;
        if orientations.is_some() {
            out.closed_multiplicity.get_or_insert(0);
        } else {
            out.closed_multiplicity = None;
        }
        debug_assert!(self.d == 0 || out.weak_closed >= out.weak_open);
        Ok(out)
    }
}

/// Möbius-sum evaluator: one enumerator per flat of `L(P°, H)`.
#[derive(Clone, Debug)]
pub struct MoebiusCounter {
    terms: Vec<(i64, Enumerator)>,
    transverse: bool,
}

impl MoebiusCounter {
    pub fn new(problem: &InsideOutProblem, budget: &Budget) -> Result<Self> {
        if !problem.constant_weight() {
            return Err(Error::NonConstantWeight);
        }
        let poset = intersection_poset(problem.graph(), problem.polytope(), budget)?;
        let terms = poset
            .flats
            .par_iter()
            .zip(poset.moebius.par_iter())
            .map(|(f, &mu)| Ok((mu, Enumerator::new(&f.polytope)?)))
            .collect::<Result<Vec<_>>>()?;
        let transverse = transversal(problem.graph(), problem.polytope(), budget)?;
        Ok(MoebiusCounter { terms, transverse })
    }

    pub fn is_transverse(&self) -> bool {
        self.transverse
    }

    pub fn flat_count(&self) -> usize {
        self.terms.len()
    }

    /// `Σ μ(0̂,u) E_{P°∩u}(t)` (open) or `Σ |μ(0̂,u)| E_{P∩u}(t)` (closed).
    pub fn count(&self, t: u64, closure: Closure, budget: &Budget) -> Result<u64> {
        if closure == Closure::Closed && !self.transverse {
            return Err(Error::NotTransverse);
        }
        let mut total: i128 = 0;
        for (mu, e) in &self.terms {
            let c = e.counts(t, &[], None, budget)?;
            total += match closure {
                Closure::Open => *mu as i128 * c.weak_open as i128,
                Closure::Closed => mu.unsigned_abs() as i128 * c.weak_closed as i128,
            };
        }
        u64::try_from(total).map_err(|_| Error::Overflow)
    }
}

/// Counting front end for one problem; caches the enumerator, the
/// realizable orientations and the Möbius data as they are needed.
pub struct Counter<'a> {
    problem: &'a InsideOutProblem,
    budget: Budget,
    enumerator: Enumerator,
    orientations: Option<Vec<Orientation>>,
    moebius: Option<MoebiusCounter>,
}

impl<'a> Counter<'a> {
    pub fn new(problem: &'a InsideOutProblem, budget: Budget) -> Result<Self> {
        Ok(Counter {
            problem,
            budget,
            enumerator: Enumerator::new(problem.polytope())?,
            orientations: None,
            moebius: None,
        })
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Orientations of the forbidden graph realizable in `P°`; these are the
    /// regions of `(P, H)`.
    pub fn orientations(&mut self) -> Result<&[Orientation]> {
        if self.orientations.is_none() {
            self.orientations = Some(realizable_orientations(
                self.problem.graph(),
                self.problem.polytope(),
                Target::Open,
                &self.budget,
            )?);
        }
        Ok(self.orientations.as_deref().unwrap())
    }

    pub fn moebius(&mut self) -> Result<&MoebiusCounter> {
        if self.moebius.is_none() {
            self.moebius = Some(MoebiusCounter::new(self.problem, &self.budget)?);
        }
        Ok(self.moebius.as_ref().unwrap())
    }

    pub fn counts(&mut self, t: u64, with_multiplicity: bool) -> Result<Counts> {
        let edges = self.problem.graph().edges();
        if with_multiplicity {
            self.orientations()?;
        }
        let os = if with_multiplicity { self.orientations.as_deref() } else { None };
        self.enumerator.counts(t, edges, os, &self.budget)
    }

    pub fn count(&mut self, regime: Regime, t: u64) -> Result<u64> {
        Ok(match regime {
            Regime::OpenStrong => self.counts(t, false)?.open_strong,
            Regime::WeakOpen => self.counts(t, false)?.weak_open,
            Regime::WeakClosed => self.counts(t, false)?.weak_closed,
            Regime::ClosedMultiplicity => self.counts(t, true)?.closed_multiplicity.unwrap_or(0),
            Regime::MoebiusOpen => {
                let b = self.budget;
                self.moebius()?.count(t, Closure::Open, &b)?
            }
            Regime::MoebiusClosed => {
                let b = self.budget;
                self.moebius()?.count(t, Closure::Closed, &b)?
            }
        })
    }

    /// One series per regime over `ts`, sharing a single enumeration per `t`
    /// for the direct regimes. Dilations are counted in parallel.
    pub fn series(&mut self, regimes: &[Regime], ts: impl IntoIterator<Item = u64>) -> Result<Vec<CountSeries>> {
        let ts: Vec<u64> = ts.into_iter().collect();
        let direct = regimes.iter().any(|r| {
            matches!(
                r,
                Regime::OpenStrong | Regime::WeakOpen | Regime::WeakClosed | Regime::ClosedMultiplicity
            )
        });
        let multiplicity = regimes.contains(&Regime::ClosedMultiplicity);
        if multiplicity {
            self.orientations()?;
        }
        let wants_moebius = regimes
            .iter()
            .any(|r| matches!(r, Regime::MoebiusOpen | Regime::MoebiusClosed));
        if wants_moebius {
            self.moebius()?;
        }
        let edges = self.problem.graph().edges();
        let os = if multiplicity { self.orientations.as_deref() } else { None };
        let budget = self.budget;
        let enumerator = &self.enumerator;
        let moebius = self.moebius.as_ref();
        let rows: Vec<(u64, Option<Counts>, Option<u64>, Option<u64>)> = ts
            .par_iter()
            .map(|&t| {
                let direct_counts = if direct {
                    Some(enumerator.counts(t, edges, os, &budget)?)
                } else {
                    None
                };
                let mo = if regimes.contains(&Regime::MoebiusOpen) {
                    Some(moebius.unwrap().count(t, Closure::Open, &budget)?)
                } else {
                    None
                };
                let mc = if regimes.contains(&Regime::MoebiusClosed) {
                    Some(moebius.unwrap().count(t, Closure::Closed, &budget)?)
                } else {
                    None
                };
                Ok((t, direct_counts, mo, mc))
            })
            .collect::<Result<_>>()?;
        let mut out: Vec<CountSeries> = regimes.iter().map(|&r| CountSeries::new(r)).collect();
        for (t, c, mo, mc) in rows {
            for s in out.iter_mut() {
                let v = match s.regime {
                    Regime::OpenStrong => c.unwrap().open_strong,
                    Regime::WeakOpen => c.unwrap().weak_open,
                    Regime::WeakClosed => c.unwrap().weak_closed,
                    Regime::ClosedMultiplicity => c.unwrap().closed_multiplicity.unwrap_or(0),
                    Regime::MoebiusOpen => mo.unwrap(),
                    Regime::MoebiusClosed => mc.unwrap(),
                };
                s.values.insert(t, v);
            }
        }
        Ok(out)
    }
}

/// Points of `tP°` with distinct entries across every forbidden edge.
pub fn count_open(problem: &InsideOutProblem, t: u64, budget: &Budget) -> Result<u64> {
    Counter::new(problem, *budget)?.count(Regime::OpenStrong, t)
}

/// `Σ_{x ∈ tP ∩ Z^d}` (number of realizable orientations compatible with `x`).
pub fn count_closed_multiplicity(
    problem: &InsideOutProblem,
    t: u64,
    orientations: &[Orientation],
    budget: &Budget,
) -> Result<u64> {
    let e = Enumerator::new(problem.polytope())?;
    Ok(e
        .counts(t, problem.graph().edges(), Some(orientations), budget)?
        .closed_multiplicity
        .unwrap_or(0))
}

/// Lattice points of `tP°` or `tP`, ignoring the forbidden graph.
pub fn count_weak(problem: &InsideOutProblem, t: u64, closure: Closure, budget: &Budget) -> Result<u64> {
    let c = Enumerator::new(problem.polytope())?.counts(t, &[], None, budget)?;
    Ok(match closure {
        Closure::Open => c.weak_open,
        Closure::Closed => c.weak_closed,
    })
}

pub fn moebius_count(problem: &InsideOutProblem, t: u64, closure: Closure, budget: &Budget) -> Result<u64> {
    MoebiusCounter::new(problem, budget)?.count(t, closure, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, solve_affine, LinearSystem, RatMatrix};
    use crate::polytope::build_polytope;

    fn enumerator(rows: &[&[i64]], rhs: &[i64], d: usize, mode: BoundMode) -> Enumerator {
        let sys = if rows.is_empty() {
            LinearSystem::unconstrained(d)
        } else {
            LinearSystem::new(RatMatrix::from_i64(rows), rhs.iter().map(|&v| rat(v)).collect())
        };
        Enumerator::new(&build_polytope(solve_affine(&sys), mode).unwrap()).unwrap()
    }

    #[test]
    fn square_counts() {
        let e = enumerator(&[], &[], 2, BoundMode::Cubical);
        let c = e.counts(3, &[(0, 1)], None, &Budget::default()).unwrap();
        assert_eq!(c.weak_closed, 16);
        assert_eq!(c.weak_open, 4);
        assert_eq!(c.open_strong, 2);
        assert_eq!(c.closed_multiplicity, None);
    }

    #[test]
    fn multiplicity_on_square() {
        let e = enumerator(&[], &[], 2, BoundMode::Cubical);
        let os = vec![Orientation::from_order(vec![0, 1]), Orientation::from_order(vec![1, 0])];
        // (t+1)^2 points, diagonal ones counted twice
        let c = e.counts(2, &[(0, 1)], Some(&os), &Budget::default()).unwrap();
        assert_eq!(c.closed_multiplicity, Some(9 + 3));
    }

    #[test]
    fn half_period_subspace() {
        // 2 x1 = 1: points only when t is even
        let e = enumerator(&[&[2, 0]], &[1], 2, BoundMode::Cubical);
        assert_eq!(e.period(), 2);
        assert_eq!(e.counts(3, &[], None, &Budget::default()).unwrap().weak_closed, 0);
        assert_eq!(e.counts(4, &[], None, &Budget::default()).unwrap().weak_closed, 5);
    }

    #[test]
    fn simplex_slices() {
        // x1 + x2 + x3 = t, x ≥ 0
        let e = enumerator(&[&[1, 1, 1]], &[1], 3, BoundMode::Orthant);
        for t in 0..8u64 {
            let c = e.counts(t, &[], None, &Budget::default()).unwrap();
            assert_eq!(c.weak_closed, (t + 1) * (t + 2) / 2);
            if t >= 3 {
                assert_eq!(c.weak_open, (t - 1) * (t - 2) / 2);
            }
        }
    }

    #[test]
    fn point_budget() {
        let e = enumerator(&[], &[], 3, BoundMode::Cubical);
        let tight = Budget {
            max_points: 100,
            ..Budget::default()
        };
        assert!(e.counts(3, &[], None, &tight).is_ok());
        assert!(matches!(e.counts(4, &[], None, &tight), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn regime_names_round_trip() {
        for r in Regime::ALL {
            assert_eq!(r.name().parse::<Regime>().unwrap(), r);
        }
        assert!("open".parse::<Regime>().is_err());
    }
}
