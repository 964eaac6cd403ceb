//! Small frozen values, each checked against an independent computation
//! in this file or in `common`.

mod common;

use common::{brute_force_denominator, Naive};
use insideout::arrangement::{inside_out_denominator, intersection_poset, Target};
use insideout::counting::{count_closed_multiplicity, count_weak, moebius_count, Counter};
use insideout::permutations::{antichain, dominance_leq_forms, dominance_leq_sets, realizable_in};
use insideout::polytope::Closure;
use insideout::{builtin, Budget, Builtin, Distinctness, Mode, Options, Rational, Regime};
use num_bigint::BigInt;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn rectangle_denominators_by_brute_force() {
    // rows equal, columns equal, in row-major order
    let eqs = vec![
        vec![1, 1, 1, -1, -1, -1],
        vec![1, -1, 0, 1, -1, 0],
        vec![0, 1, -1, 0, 1, -1],
    ];
    let edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)];
    assert_eq!(brute_force_denominator(6, &eqs, &[]), 2);
    assert_eq!(brute_force_denominator(6, &eqs, &edges), 4);
    let p = builtin(Builtin::MagilatinRectangle(2, 3), Options::cubical()).unwrap();
    assert_eq!(p.polytope().vertices(&budget()).unwrap().denominator, BigInt::from(2));
    assert_eq!(
        inside_out_denominator(p.polytope(), p.arrangement(), &budget()).unwrap(),
        BigInt::from(4)
    );
}

#[test]
fn magic3_denominators_by_brute_force() {
    // rows, columns, diagonals all equal to row 0
    let rows: Vec<Vec<i64>> = {
        let lines: [[usize; 3]; 8] = [
            [0, 1, 2],
            [3, 4, 5],
            [6, 7, 8],
            [0, 3, 6],
            [1, 4, 7],
            [2, 5, 8],
            [0, 4, 8],
            [2, 4, 6],
        ];
        let ind = |l: &[usize; 3]| (0..9).map(|i| l.contains(&i) as i64).collect::<Vec<_>>();
        let first = ind(&lines[0]);
        let all: Vec<Vec<i64>> = lines[1..]
            .iter()
            .map(|l| ind(l).iter().zip(&first).map(|(a, b)| a - b).collect())
            .collect();
        // rank 6: drop the two dependent differences
        vec![all[0].clone(), all[2].clone(), all[3].clone(), all[4].clone(), all[5].clone(), all[6].clone()]
    };
    assert_eq!(brute_force_denominator(9, &rows, &[]), 2);
    let p = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
    assert_eq!(p.polytope().vertices(&budget()).unwrap().denominator, BigInt::from(2));
}

#[test]
fn latin_squares_of_orders_two_and_three() {
    // per-line distinct labels in {1..n} with equal line sums
    for (n, want) in [(2, 2), (3, 12)] {
        let p = builtin(Builtin::MagilatinSquare(n), Options::cubical()).unwrap();
        assert_eq!(p.distinctness(), Distinctness::Line);
        let t = n as u64 + 1;
        let naive = Naive::new(&p).counts(t, &Default::default()).open_strong;
        assert_eq!(naive, want);
        assert_eq!(Counter::new(&p, budget()).unwrap().count(Regime::OpenStrong, t).unwrap(), want);
    }
}

#[test]
fn weak_affine_magic3_at_six() {
    // centre 2; the other cells are 2 ± a, 2 ± b, 2 ± (a+b), 2 ± (a−b),
    // all ≥ 1, so |a|, |b|, |a ± b| ≤ 1: (0,0) and the four unit vectors
    let p = builtin(Builtin::Magic(3), Options::affine()).unwrap();
    let naive = Naive::new(&p).counts(6, &Default::default()).weak_open;
    assert_eq!(naive, 5);
    assert_eq!(count_weak(&p, 6, Closure::Open, &budget()).unwrap(), 5);
}

#[test]
fn magic3_spot_values() {
    let c = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
    let a = builtin(Builtin::Magic(3), Options::affine()).unwrap();
    let mut cc = Counter::new(&c, budget()).unwrap();
    let mut ac = Counter::new(&a, budget()).unwrap();
    assert_eq!(cc.count(Regime::OpenStrong, 9).unwrap(), 0);
    assert_eq!(cc.count(Regime::OpenStrong, 10).unwrap(), 8);
    assert_eq!(cc.count(Regime::MoebiusOpen, 10).unwrap(), 8);
    assert_eq!(ac.count(Regime::OpenStrong, 15).unwrap(), 8);
    assert_eq!(ac.count(Regime::OpenStrong, 16).unwrap(), 0);
    // the Lo Shu square over 15 lies in the open affine polytope
    let lo_shu: Vec<Rational> = [4, 9, 2, 3, 5, 7, 8, 1, 6]
        .iter()
        .map(|&v| Rational::new(BigInt::from(v), BigInt::from(15)))
        .collect();
    assert!(a.polytope().contains(&lo_shu, Closure::Open));
    let naive = Naive::new(&c);
    assert_eq!(naive.counts(10, &Default::default()).open_strong, 8);
}

#[test]
fn magilatin_2x2_spot_values() {
    let p = builtin(Builtin::MagilatinSquare(2), Options::cubical()).unwrap();
    let os = realizable_in(&p, Target::Open, &budget()).unwrap();
    assert_eq!(os.len(), 2);
    assert_eq!(count_closed_multiplicity(&p, 1, &os, &budget()).unwrap(), 6);
    assert_eq!(count_weak(&p, 3, Closure::Open, &budget()).unwrap(), 4);
    assert_eq!(moebius_count(&p, 3, Closure::Open, &budget()).unwrap(), 2);
    let poset = intersection_poset(p.graph(), p.polytope(), &budget()).unwrap();
    assert_eq!(poset.moebius, vec![1, -1]);
    let affine = builtin(Builtin::MagilatinSquare(2), Options::affine()).unwrap();
    assert_eq!(affine.period(), 1);
    let series = Counter::new(&affine, budget())
        .unwrap()
        .series(&[Regime::OpenStrong], 1..=6)
        .unwrap()
        .remove(0);
    assert_eq!(series.values.values().copied().collect::<Vec<_>>(), vec![0, 0, 2, 2, 4, 4]);
}

#[test]
fn magic3_lattice_basis() {
    let p = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
    let s = p.subspace();
    let basis = s.lattice_basis();
    assert_eq!(basis.len(), 3);
    let lines: [[usize; 3]; 8] = [
        [0, 1, 2],
        [3, 4, 5],
        [6, 7, 8],
        [0, 3, 6],
        [1, 4, 7],
        [2, 5, 8],
        [0, 4, 8],
        [2, 4, 6],
    ];
    for v in basis {
        let sums: Vec<BigInt> = lines.iter().map(|l| l.iter().map(|&i| v[i].clone()).sum()).collect();
        assert!(sums.windows(2).all(|w| w[0] == w[1]));
    }
    // Gram determinant of the three vectors
    let g: Vec<Vec<i64>> = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| u.iter().zip(v).map(|(a, b)| i64::try_from(a * b).unwrap()).sum())
                .collect()
        })
        .collect();
    let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    assert_ne!(det, 0);
}

#[test]
fn indicator_forms_reduce_to_set_dominance() {
    let d = 4;
    let subsets: Vec<Vec<usize>> = (1u32..16).map(|m| (0..d).filter(|&i| m >> i & 1 == 1).collect()).collect();
    let indicator = |s: &[usize]| -> Vec<Rational> {
        (0..d)
            .map(|i| Rational::from_integer(BigInt::from(s.contains(&i) as i64)))
            .collect()
    };
    let mut perm: Vec<usize> = (0..d).collect();
    let mut count = 0;
    loop {
        for a in &subsets {
            for b in &subsets {
                assert_eq!(
                    dominance_leq_sets(&perm, a, b),
                    dominance_leq_forms(&perm, &indicator(a), &indicator(b)),
                    "{perm:?} {a:?} {b:?}"
                );
            }
        }
        count += 1;
        // next permutation
        let Some(i) = (0..d - 1).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..d).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    assert_eq!(count, 24);
}

#[test]
fn sixteen_antichain_orders_for_magic3() {
    let p = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
    let lines = p.clutter().unwrap().lines().to_vec();
    let mut perm: Vec<usize> = (0..9).collect();
    let mut count = 0;
    loop {
        if antichain(&perm, &lines) {
            count += 1;
        }
        let Some(i) = (0..8).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..9).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    assert_eq!(count, 16);
}

#[test]
fn cubical_realizability_in_p_equals_in_s() {
    for f in [Builtin::Magic(3), Builtin::MagilatinSquare(2), Builtin::MagilatinRectangle(2, 3)] {
        let p = builtin(f, Options::cubical()).unwrap();
        let a = realizable_in(&p, Target::Closed, &budget()).unwrap();
        let b = realizable_in(&p, Target::Subspace, &budget()).unwrap();
        assert_eq!(a, b, "{f}");
        assert_eq!(a, realizable_in(&p, Target::Open, &budget()).unwrap(), "{f}");
    }
}

#[test]
fn realizable_set_is_symmetric() {
    use insideout::permutations::{ranks, square_symmetries, transform_ranks};
    use std::collections::BTreeSet;
    for f in [Builtin::Magic(3), Builtin::Semimagic(3)] {
        let p = builtin(f, Options::cubical()).unwrap();
        let set: BTreeSet<Vec<usize>> = realizable_in(&p, Target::Open, &budget())
            .unwrap()
            .into_iter()
            .map(|o| ranks(o.order.as_ref().unwrap()))
            .collect();
        for g in square_symmetries(3) {
            let image: BTreeSet<Vec<usize>> = set.iter().map(|r| transform_ranks(r, &g)).collect();
            assert_eq!(image, set, "{f}");
        }
    }
}

#[test]
fn affine_magic3_targets_are_reported_separately() {
    let p = builtin(Builtin::Magic(3), Options::affine()).unwrap();
    let r = insideout::permutations::conjecture_report(&p, &budget()).unwrap();
    let [open, closed, sub] = r.affine_targets.unwrap();
    assert_eq!(open, 16);
    assert!(open <= closed && closed <= sub);
    assert_eq!(p.mode(), Mode::Affine);
}
