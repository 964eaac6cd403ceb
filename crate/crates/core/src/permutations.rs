//! Realizable permutations and the reverse dominance orders.
//!
//! A permutation is given as an order `σ`: `σ[k]` is the cell holding the
//! `(k+1)`-th smallest value. Its rank array (`rank[σ[k]] = k + 1`) is the
//! usual drawing, with the largest value in the cell marked `d`.

use crate::arrangement::{realizable_orders_with_ties, realizable_orientations, ForbiddenGraph, Orientation, Target};
use crate::clutter::{InsideOutProblem, Mode};
use crate::counting::Budget;
use crate::exact::Rational;
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// `rank[cell]`, 1-based.
pub fn ranks(order: &[usize]) -> Vec<usize> {
    let mut r = vec![0; order.len()];
    for (k, &c) in order.iter().enumerate() {
        r[c] = k + 1;
    }
    r
}

/// Inverse of [`ranks`].
pub fn order_from_ranks(rank: &[usize]) -> Vec<usize> {
    let mut o = vec![0; rank.len()];
    for (c, &k) in rank.iter().enumerate() {
        o[k - 1] = c;
    }
    o
}

fn decreasing_ranks(rank: &[usize], line: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = line.iter().map(|&c| rank[c]).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `L ≼_σ L'`: `|L| ≤ |L'|` and, listing both by decreasing rank,
/// `j_i ≤ j'_i` for every `i ≤ |L|`.
pub fn dominance_leq_sets(order: &[usize], l: &[usize], l2: &[usize]) -> bool {
    let rank = ranks(order);
    leq_sets_ranked(&rank, l, l2)
}

fn leq_sets_ranked(rank: &[usize], l: &[usize], l2: &[usize]) -> bool {
    if l.len() > l2.len() {
        return false;
    }
    let a = decreasing_ranks(rank, l);
    let b = decreasing_ranks(rank, l2);
    a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// `f ≼_σ f'`: every suffix sum `Σ_{k ≥ j} a_{σk}` of `f` is at most that
/// of `f'`.
pub fn dominance_leq_forms(order: &[usize], f: &[Rational], f2: &[Rational]) -> bool {
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for &c in order.iter().rev() {
        sa += &f[c];
        sb += &f2[c];
        if sa > sb {
            return false;
        }
    }
    true
}

/// No two distinct lines are comparable under `≼_σ`.
pub fn antichain(order: &[usize], lines: &[Vec<usize>]) -> bool {
    let rank = ranks(order);
    antichain_ranked(&rank, lines)
}

fn antichain_ranked(rank: &[usize], lines: &[Vec<usize>]) -> bool {
    for (a, la) in lines.iter().enumerate() {
        for lb in &lines[a + 1..] {
            if leq_sets_ranked(rank, la, lb) || leq_sets_ranked(rank, lb, la) {
                return false;
            }
        }
    }
    true
}

/// No two distinct forms are comparable under `≼_σ`.
pub fn antichain_forms(order: &[usize], forms: &[Vec<Rational>]) -> bool {
    for (a, fa) in forms.iter().enumerate() {
        for fb in &forms[a + 1..] {
            if fa != fb && (dominance_leq_forms(order, fa, fb) || dominance_leq_forms(order, fb, fa)) {
                return false;
            }
        }
    }
    true
}

/// Calls `f` on every permutation of `0..d` in lexicographic order,
/// splitting the first position across threads. Results are collected in
/// lexicographic order.
fn sweep_permutations<T: Send>(d: usize, f: impl Fn(&[usize]) -> Option<T> + Sync) -> Vec<T> {
    if d == 0 {
        return f(&[]).into_iter().collect();
    }
    (0..d)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut perm: Vec<usize> = std::iter::once(first).chain((0..d).filter(|&i| i != first)).collect();
            loop {
                if let Some(v) = f(&perm) {
                    out.push(v);
                }
                // next permutation of perm[1..]
                let tail = &mut perm[1..];
                let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1]) else {
                    break;
                };
                let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).unwrap();
                tail.swap(i, j);
                tail[i + 1..].reverse();
            }
            out
        })
        .flatten()
        .collect()
}

/// Orders of all `d` cells realizable by a point of the target set with
/// pairwise distinct entries. `positive = true` asks for `P°`, otherwise
/// any point of `s`.
pub fn realizable_set(problem: &InsideOutProblem, positive: bool, budget: &Budget) -> Result<Vec<Orientation>> {
    let target = if positive { Target::Open } else { Target::Subspace };
    realizable_in(problem, target, budget)
}

/// Realizable orientations of the problem's own forbidden graph.
pub fn realizable_in(problem: &InsideOutProblem, target: Target, budget: &Budget) -> Result<Vec<Orientation>> {
    realizable_orientations(problem.graph(), problem.polytope(), target, budget)
}

/// The antichain side of the conjecture: lines when the problem comes from
/// a clutter, forms otherwise (these must be positive).
fn antichain_orders(problem: &InsideOutProblem) -> Result<Vec<Vec<usize>>> {
    let d = problem.point_count();
    match problem.clutter() {
        Some(c) => {
            let lines = c.lines().to_vec();
            Ok(sweep_permutations(d, |o| {
                let rank = ranks(o);
                antichain_ranked(&rank, &lines).then(|| o.to_vec())
            }))
        }
        None => {
            let forms = problem.forms();
            if !forms.is_positive() {
                return Err(Error::schema("forms", "dominance of forms needs nonnegative coefficients"));
            }
            let fs = forms.forms().to_vec();
            Ok(sweep_permutations(d, |o| antichain_forms(o, &fs).then(|| o.to_vec())))
        }
    }
}

/// Realizable orders versus orders making the lines an antichain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub problem: String,
    /// Rank arrays of the orders realizable by a positive point.
    pub realizable: Vec<Vec<usize>>,
    /// Rank arrays of the orders passing the antichain test.
    pub antichain: Vec<Vec<usize>>,
    pub agreement: bool,
    /// Rank arrays in exactly one of the two sets.
    pub counterexamples: Vec<Vec<usize>>,
    /// Affine problems only: sizes of the sets realizable in `P°`, `P`, `s`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_targets: Option<[usize; 3]>,
}

/// Compares realizability by a positive point (all entries distinct) with
/// the antichain predicate over every permutation of the cells.
pub fn conjecture_report(problem: &InsideOutProblem, budget: &Budget) -> Result<ConjectureReport> {
    let d = problem.point_count();
    let complete = ForbiddenGraph::complete(d);
    let p = problem.polytope();
    let orders = |target| -> Result<Vec<Vec<usize>>> {
        Ok(realizable_orientations(&complete, p, target, budget)?
            .into_iter()
            .map(|o| o.order.expect("complete graph orientations are orders"))
            .collect())
    };
    let realizable = orders(Target::Open)?;
    let affine_targets = if problem.mode() == Mode::Affine {
        Some([realizable.len(), orders(Target::Closed)?.len(), orders(Target::Subspace)?.len()])
    } else {
        None
    };
    let anti = antichain_orders(problem)?;
    let a: BTreeSet<Vec<usize>> = realizable.iter().map(|o| ranks(o)).collect();
    let b: BTreeSet<Vec<usize>> = anti.iter().map(|o| ranks(o)).collect();
    let counterexamples: Vec<Vec<usize>> = a.symmetric_difference(&b).cloned().collect();
    Ok(ConjectureReport {
        problem: problem.name().to_string(),
        agreement: counterexamples.is_empty(),
        realizable: a.into_iter().collect(),
        antichain: b.into_iter().collect(),
        counterexamples,
        affine_targets,
    })
}

/// Experimental preorder variant: orders realizable by a positive point
/// when the links after the given 1-based positions may be ties
/// (`x_{σk} ≤ x_{σ(k+1)}`). The antichain side is unchanged.
pub fn conjecture_report_with_ties(problem: &InsideOutProblem, ties: &[usize], budget: &Budget) -> Result<ConjectureReport> {
    let d = problem.point_count();
    if ties.is_empty() {
        return conjecture_report(problem, budget);
    }
    let mut weak = vec![false; d.saturating_sub(1)];
    for &k in ties {
        if k == 0 || k >= d {
            return Err(Error::schema("ties", format!("position {k} is outside 1..{}", d.saturating_sub(1))));
        }
        weak[k - 1] = true;
    }
    let realizable = realizable_orders_with_ties(problem.polytope(), weak, Target::Open, budget)?;
    let anti = antichain_orders(problem)?;
    let a: BTreeSet<Vec<usize>> = realizable.iter().map(|o| ranks(o)).collect();
    let b: BTreeSet<Vec<usize>> = anti.iter().map(|o| ranks(o)).collect();
    let counterexamples: Vec<Vec<usize>> = a.symmetric_difference(&b).cloned().collect();
    Ok(ConjectureReport {
        problem: problem.name().to_string(),
        agreement: counterexamples.is_empty(),
        realizable: a.into_iter().collect(),
        antichain: b.into_iter().collect(),
        counterexamples,
        affine_targets: None,
    })
}

/// The symmetries of an `n × n` grid as cell permutations `g` with
/// `g[cell] = image`.
pub fn square_symmetries(n: usize) -> Vec<Vec<usize>> {
    let maps: [fn(usize, usize, usize) -> (usize, usize); 8] = [
        |_, i, j| (i, j),
        |n, i, j| (j, n - 1 - i),
        |n, i, j| (n - 1 - i, n - 1 - j),
        |n, i, j| (n - 1 - j, i),
        |n, i, j| (n - 1 - i, j),
        |n, i, j| (i, n - 1 - j),
        |_, i, j| (j, i),
        |n, i, j| (n - 1 - j, n - 1 - i),
    ];
    maps.iter()
        .map(|m| {
            (0..n * n)
                .map(|c| {
                    let (a, b) = m(n, c / n, c % n);
                    a * n + b
                })
                .collect()
        })
        .collect()
}

/// Applies a cell symmetry `g` to a rank array.
pub fn transform_ranks(rank: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![0; rank.len()];
    for (c, &r) in rank.iter().enumerate() {
        out[g[c]] = r;
    }
    out
}

/// True when `x` is a positive strict-order witness for `order`.
pub fn realizes(x: &[Rational], order: &[usize]) -> bool {
    x.iter().all(|v| v.is_positive()) && order.windows(2).all(|w| x[w[0]] < x[w[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn id(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn set_dominance_examples() {
        // 1-based {3}, {2,3}, {1,3} become 0-based {2}, {1,2}, {0,2}
        assert!(dominance_leq_sets(&id(3), &[2], &[1, 2]));
        assert!(dominance_leq_sets(&id(3), &[0, 2], &[1, 2]));
        assert!(!dominance_leq_sets(&id(3), &[1, 2], &[0, 2]));
    }

    #[test]
    fn form_dominance_examples() {
        let f = vec![rat(1), rat(0)];
        let g = vec![rat(0), rat(1)];
        assert!(dominance_leq_forms(&id(2), &f, &f));
        assert!(dominance_leq_forms(&id(2), &f, &g));
        assert!(!dominance_leq_forms(&id(2), &g, &f));
    }

    #[test]
    fn antichain_examples() {
        assert!(antichain(&id(3), &[vec![0, 1]]));
        assert!(!antichain(&id(3), &[vec![0], vec![0, 1]]));
        assert!(antichain(&[0, 1, 2, 3], &[vec![0, 3], vec![1, 2]]));
    }

    #[test]
    fn rank_round_trip() {
        let o = vec![3, 0, 2, 1];
        assert_eq!(ranks(&o), vec![2, 4, 3, 1]);
        assert_eq!(order_from_ranks(&ranks(&o)), o);
    }

    #[test]
    fn sweep_is_lexicographic_and_complete() {
        let all = sweep_permutations(4, |o| Some(o.to_vec()));
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ties_relax_the_chain() {
        use crate::clutter::{builtin, Builtin, Options};
        let p = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
        let budget = Budget::default();
        assert!(conjecture_report_with_ties(&p, &[0], &budget).is_err());
        let strict = conjecture_report(&p, &budget).unwrap();
        // with centre c, one cell equal to c forces the pattern
        // c±2a once, c±a twice, c three times: ties at 2, 4, 5, 7
        for ties in [&[4][..], &[4, 5], &[2, 4, 5]] {
            let r = conjecture_report_with_ties(&p, ties, &budget).unwrap();
            assert_eq!(r.realizable, strict.realizable);
        }
        let two = conjecture_report_with_ties(&p, &[2, 4, 5, 7], &budget).unwrap();
        assert!(strict.realizable.iter().all(|r| two.realizable.contains(r)));
        assert!(two.realizable.len() > strict.realizable.len());
        assert!(!two.agreement);
    }

    #[test]
    fn symmetries_form_a_group_of_eight() {
        let gs = square_symmetries(3);
        let set: BTreeSet<Vec<usize>> = gs.iter().cloned().collect();
        assert_eq!(set.len(), 8);
        assert_eq!(gs[0], id(9));
    }
}
