//! Brute-force reference counts. Everything here works from the defining
//! data of a problem (forms, mode, symmetry pairs, forbidden graph) and a
//! plain scan of a box; no lattice bases, no polytopes, no LPs.
#![allow(dead_code)]

use insideout::{Builtin, Distinctness, InsideOutProblem, Mode, Options, Symmetry};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;

/// `Σ coeffs·x = rhs·t`, integral after clearing denominators.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<i64>,
    rhs: i64,
}

pub struct Naive {
    d: usize,
    cubical: bool,
    rows: Vec<Row>,
    /// Per-coordinate bound as a multiple of `t` (affine mode).
    scale: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

fn integral_row(coeffs: &[insideout::Rational], rhs: &insideout::Rational) -> Row {
    let l = coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let int = |v: &insideout::Rational| (v * &l).to_integer().to_i64().unwrap();
    Row {
        coeffs: coeffs.iter().map(int).collect(),
        rhs: int(rhs),
    }
}

impl Naive {
    pub fn new(problem: &InsideOutProblem) -> Self {
        let fs = problem.forms();
        let d = problem.point_count();
        let zero = insideout::Rational::from_integer(0.into());
        let mut rows = Vec::new();
        match problem.mode() {
            Mode::Cubical => {
                for (i, f) in fs.forms().iter().enumerate() {
                    // equal to the next form of the same class
                    if let Some(j) = (i + 1..fs.forms().len()).find(|&j| fs.classes()[j] == fs.classes()[i]) {
                        let diff: Vec<_> = f.iter().zip(&fs.forms()[j]).map(|(a, b)| a - b).collect();
                        rows.push(integral_row(&diff, &zero));
                    }
                }
            }
            Mode::Affine => {
                for (f, target) in fs.forms().iter().zip(fs.targets()) {
                    rows.push(integral_row(f, target));
                }
            }
        }
        if problem.symmetry() != Symmetry::None {
            let (n, _) = problem.grid().unwrap();
            for a in 0..d {
                let b = d - 1 - a; // (i, j) -> (n-1-i, n-1-j) in row-major order
                if a > b {
                    continue;
                }
                let mut coeffs = vec![0; d];
                coeffs[a] += 1;
                coeffs[b] += 1;
                let (num, den) = match problem.symmetry() {
                    Symmetry::Cubical => (1, 1),
                    _ => (2, n as i64),
                };
                rows.push(Row {
                    coeffs: coeffs.iter().map(|c| c * den).collect(),
                    rhs: num,
                });
            }
        }
        // affine: x_i ≤ t · min target/coefficient over forms through i
        let scale = (0..d)
            .map(|i| {
                if problem.mode() == Mode::Cubical {
                    return 1;
                }
                fs.forms()
                    .iter()
                    .zip(fs.targets())
                    .filter(|(f, _)| f[i].is_positive() && f.iter().all(|c| !c.is_negative()))
                    .map(|(f, tg)| (tg / &f[i]).ceil().to_integer().to_i64().unwrap())
                    .min()
                    .expect("every point is bounded by some positive form")
            })
            .collect();
        Naive {
            d,
            cubical: problem.mode() == Mode::Cubical,
            rows,
            scale,
            edges: problem.graph().edges().to_vec(),
        }
    }

    /// Calls `f(x, open)` for every integral point of `tP`.
    pub fn scan(&self, t: u64, mut f: impl FnMut(&[i64], bool)) {
        let t = t as i64;
        let hi: Vec<i64> = self.scale.iter().map(|s| s * t).collect();
        let mut x = vec![0i64; self.d];
        loop {
            if self
                .rows
                .iter()
                .all(|r| r.coeffs.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == r.rhs * t)
            {
                let open = x.iter().all(|&v| v > 0 && (!self.cubical || v < t));
                f(&x, open);
            }
            let mut k = 0;
            loop {
                if k == self.d {
                    return;
                }
                if x[k] < hi[k] {
                    x[k] += 1;
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    fn orientation_of(&self, x: &[i64]) -> Vec<bool> {
        self.edges.iter().map(|&(i, j)| x[i] < x[j]).collect()
    }

    /// Orientations of the forbidden graph met by open points with
    /// distinct entries across every edge, for `t ≤ t_max`.
    pub fn orientations(&self, t_max: u64) -> BTreeSet<Vec<bool>> {
        let mut out = BTreeSet::new();
        for t in 1..=t_max {
            self.scan(t, |x, open| {
                if open && self.edges.iter().all(|&(i, j)| x[i] != x[j]) {
                    out.insert(self.orientation_of(x));
                }
            });
        }
        out
    }

    pub fn counts(&self, t: u64, orientations: &BTreeSet<Vec<bool>>) -> NaiveCounts {
        let mut c = NaiveCounts::default();
        self.scan(t, |x, open| {
            c.weak_closed += 1;
            c.closed_multiplicity += orientations
                .iter()
                .filter(|o| {
                    self.edges
                        .iter()
                        .zip(o.iter())
                        .all(|(&(i, j), &up)| if up { x[i] <= x[j] } else { x[i] >= x[j] })
                })
                .count() as u64;
            if open {
                c.weak_open += 1;
                if self.edges.iter().all(|&(i, j)| x[i] != x[j]) {
                    c.open_strong += 1;
                }
            }
        });
        c
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NaiveCounts {
    pub open_strong: u64,
    pub closed_multiplicity: u64,
    pub weak_open: u64,
    pub weak_closed: u64,
}

/// Every built-in on at most `max_d` points that constructs successfully,
/// in both modes and every distinctness setting.
pub fn small_builtins(max_d: usize) -> Vec<InsideOutProblem> {
    let mut families = Vec::new();
    for n in 1..=max_d {
        families.extend([
            Builtin::Magic(n),
            Builtin::Semimagic(n),
            Builtin::Pandiagonal(n),
            Builtin::MagilatinSquare(n),
        ]);
        for m in 1..=max_d {
            families.push(Builtin::MagilatinRectangle(m, n));
        }
    }
    let mut out = Vec::new();
    for f in families {
        let (m, n) = f.grid();
        if m * n > max_d {
            continue;
        }
        for mode in [Mode::Cubical, Mode::Affine] {
            for dist in [Distinctness::All, Distinctness::Line, Distinctness::None] {
                if let Ok(p) = insideout::builtin(f, Options::new(mode).distinct(dist)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Known closed forms of the open counts, evaluated exactly.
pub fn magic3_cubical(t: i64) -> i64 {
    let lower = match t.rem_euclid(12) {
        0 | 2 | 6 | 8 => 76 * t - 96,
        1 => 73 * t - 58,
        3 | 11 => 73 * t - 102,
        4 | 10 => 76 * t - 112,
        5 | 9 => 73 * t - 90,
        7 => 73 * t - 70,
        _ => unreachable!(),
    };
    let num = t * t * t - 16 * t * t + lower;
    assert_eq!(num % 6, 0);
    num / 6
}

pub fn magic3_affine(t: i64) -> i64 {
    let c = match t.rem_euclid(18) {
        0 => 144,
        3 => 78,
        6 => 120,
        9 => 126,
        12 => 96,
        15 => 102,
        _ => return 0,
    };
    let num = 2 * t * t - 32 * t + c;
    assert_eq!(num % 9, 0);
    num / 9
}

pub fn rectangle23(t: i64) -> i64 {
    let num = match t.rem_euclid(4) {
        1 => t * t * t - 12 * t * t + 41 * t - 30,
        3 => t * t * t - 12 * t * t + 41 * t - 42,
        _ => t * t * t - 12 * t * t + 44 * t - 48,
    };
    assert_eq!(num % 4, 0);
    num / 4
}

type Q = num_rational::BigRational;

/// Solves a square system by plain Gaussian elimination; `None` when
/// singular.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Q::from_integer(0.into()))?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] != Q::from_integer(0.into()) {
                let f = &a[r][col] / &a[col][col];
                for k in col..n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Vertices of `{x ∈ [0,1]^d : eqs·x = 0}` cut by the hyperplanes
/// `x_i = x_j`: every choice of `d − rank` extra tight constraints among
/// the bounds and hyperplanes, solved and kept when inside the cube.
/// Returns the lcm of the coordinate denominators.
pub fn brute_force_denominator(d: usize, eqs: &[Vec<i64>], hyperplanes: &[(usize, usize)]) -> u64 {
    let q = |v: i64| Q::from_integer(v.into());
    let mut tight: Vec<(Vec<Q>, Q)> = Vec::new();
    for i in 0..d {
        for bound in [0, 1] {
            tight.push(((0..d).map(|k| q((k == i) as i64)).collect(), q(bound)));
        }
    }
    for &(i, j) in hyperplanes {
        tight.push(((0..d).map(|k| q((k == i) as i64 - (k == j) as i64)).collect(), q(0)));
    }
    let base: Vec<(Vec<Q>, Q)> = eqs.iter().map(|r| (r.iter().map(|&v| q(v)).collect(), q(0))).collect();
    let need = d - eqs.len();
    let mut den = 1u64;
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        tight: &[(Vec<Q>, Q)],
        base: &[(Vec<Q>, Q)],
        den: &mut u64,
    ) {
        if chosen.len() == need {
            let rows: Vec<&(Vec<Q>, Q)> = base.iter().chain(chosen.iter().map(|&k| &tight[k])).collect();
            if let Some(x) = solve(rows.iter().map(|r| r.0.clone()).collect(), rows.iter().map(|r| r.1.clone()).collect()) {
                let zero = Q::from_integer(0.into());
                let one = Q::from_integer(1.into());
                if x.iter().all(|v| *v >= zero && *v <= one) {
                    for v in &x {
                        *den = den.lcm(&v.denom().to_u64().unwrap());
                    }
                }
            }
            return;
        }
        for k in start..tight.len() {
            chosen.push(k);
            rec(k + 1, need, chosen, tight, base, den);
            chosen.pop();
        }
    }
    rec(0, need, &mut chosen, &tight, &base, &mut den);
    den
}
