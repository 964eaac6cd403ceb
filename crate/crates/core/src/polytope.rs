//! Rational polytopes `P = s ∩ box` in H-representation, where `s` is an
//! affine subspace and the box is the unit cube or the nonnegative orthant.
//!
//! All geometry happens in the lattice coordinates of `s`: a point is
//! `x = base + B c` and every inequality `a·x ≥ b` becomes `g·c ≥ h` with
//! `g = aB` and `h = b - a·base`. Volumes measured there are normalized to
//! the lattice `Z^d ∩ lin(s)`.

use crate::counting::Budget;
use crate::exact::{
    self, dot, lcm_denominators, maximize, solve_square, AffineSubspace, LpOutcome, RatMatrix,
    Rational,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `0 ≤ x_i ≤ 1`
    Cubical,
    /// `x_i ≥ 0`
    Orthant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed,
    Open,
}

/// `coefficients · x ≥ bound`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coefficients: Vec<Rational>,
    pub bound: Rational,
}

/// `g · c ≥ h` in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LiftedRow {
    pub g: Vec<Rational>,
    pub h: Rational,
}

#[derive(Clone, Debug)]
pub struct HPolytope {
    subspace: AffineSubspace,
    mode: BoundMode,
    inequalities: Vec<Inequality>,
    lifted: Vec<LiftedRow>,
    degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<Vec<Rational>>,
    /// Lattice coordinates of each vertex.
    pub coords: Vec<Vec<Rational>>,
    /// Least `t` with `t⁻¹Z^d` containing every vertex.
    pub denominator: BigInt,
}

fn unit(d: usize, i: usize, v: i64) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); d];
    a[i] = exact::rat(v);
    a
}

/// `P = subspace ∩ [0,1]^d` or `subspace ∩ R^d_{≥0}`.
///
/// Fails with `UnboundedPolytope` if the orthant version has a recession
/// direction. Whether `P` lies in a coordinate hyperplane is recorded, not
/// treated as an error.
pub fn build_polytope(subspace: AffineSubspace, mode: BoundMode) -> Result<HPolytope> {
    if subspace.is_empty() {
        return Err(Error::InfeasibleSystem);
    }
    let d = subspace.ambient_dim();
    let mut inequalities = Vec::new();
    for i in 0..d {
        inequalities.push(Inequality {
            coefficients: unit(d, i, 1),
            bound: Rational::zero(),
        });
        if mode == BoundMode::Cubical {
            inequalities.push(Inequality {
                coefficients: unit(d, i, -1),
                bound: -Rational::one(),
            });
        }
    }
    let lifted = inequalities
        .iter()
        .map(|q| {
            let (g, off) = subspace.pull_back(&q.coefficients);
            LiftedRow {
                g,
                h: &q.bound - off,
            }
        })
        .collect();
    let mut p = HPolytope {
        subspace,
        mode,
        inequalities,
        lifted,
        degenerate: false,
    };
    if mode == BoundMode::Orthant && p.has_recession_direction() {
        return Err(Error::UnboundedPolytope);
    }
    p.degenerate = !matches!(p.max_slack(&[], Closure::Open), Some(ref v) if v.is_positive());
    Ok(p)
}

/// Strict or weak constraint `g·c ≥ h` fed to [`HPolytope::max_slack`].
pub(crate) struct SlackRow {
    pub g: Vec<Rational>,
    pub h: Rational,
    pub strict: bool,
}

impl HPolytope {
    pub fn subspace(&self) -> &AffineSubspace {
        &self.subspace
    }

    pub fn mode(&self) -> BoundMode {
        self.mode
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub(crate) fn lifted(&self) -> &[LiftedRow] {
        &self.lifted
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    /// True when `P` has no relative interior point, i.e. it lies in a
    /// coordinate hyperplane (or in a facet of the cube).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The same box intersected with a smaller subspace.
    pub fn restrict_to(&self, sub: AffineSubspace) -> Result<HPolytope> {
        build_polytope(sub, self.mode)
    }

    pub fn contains(&self, x: &[Rational], closure: Closure) -> bool {
        if x.len() != self.ambient_dim() || !self.subspace.contains(x) {
            return false;
        }
        self.inequalities.iter().all(|q| {
            let v = dot(&q.coefficients, x);
            match closure {
                Closure::Closed => v >= q.bound,
                Closure::Open => v > q.bound,
            }
        })
    }

    fn has_recession_direction(&self) -> bool {
        let r = self.dim();
        if r == 0 {
            return false;
        }
        // cone {c : g·c ≥ 0}; maximize Σ g·c subject to Σ g·c ≤ 1
        let total: Vec<Rational> = (0..r)
            .map(|k| self.lifted.iter().map(|row| row.g[k].clone()).sum())
            .collect();
        let mut rows: Vec<(Vec<Rational>, Rational)> = self
            .lifted
            .iter()
            .map(|row| (row.g.iter().map(|v| -v).collect(), Rational::zero()))
            .collect();
        rows.push((total.clone(), Rational::one()));
        match maximize(&total, &rows) {
            LpOutcome::Optimal { value, .. } => value.is_positive(),
            _ => true,
        }
    }

    /// Maximizes `δ ≤ 1` subject to the polytope's own rows (strict when
    /// `membership` is open, i.e. `g·c - h ≥ δ`) and the extra rows.
    /// `None` when even the weak system is infeasible.
    pub(crate) fn max_slack(&self, extra: &[SlackRow], membership: Closure) -> Option<Rational> {
        self.max_slack_with(extra, Some(membership))
    }

    /// As [`Self::max_slack`]; `membership = None` ignores the polytope and
    /// only asks about the subspace.
    pub(crate) fn max_slack_with(
        &self,
        extra: &[SlackRow],
        membership: Option<Closure>,
    ) -> Option<Rational> {
        let r = self.dim();
        let mut rows = Vec::with_capacity(self.lifted.len() + extra.len() + 1);
        let mut push = |g: &[Rational], h: &Rational, strict: bool| {
            let mut a: Vec<Rational> = g.iter().map(|v| -v).collect();
            a.push(if strict { Rational::one() } else { Rational::zero() });
            rows.push((a, -h.clone()));
        };
        if let Some(m) = membership {
            for row in &self.lifted {
                push(&row.g, &row.h, m == Closure::Open);
            }
        }
        for row in extra {
            push(&row.g, &row.h, row.strict);
        }
        let mut cap = vec![Rational::zero(); r + 1];
        cap[r] = Rational::one();
        rows.push((cap.clone(), Rational::one()));
        match maximize(&cap, &rows) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("slack is capped"),
        }
    }

    /// Exact vertex list by solving every `dim`-subset of facet hyperplanes.
    pub fn vertices(&self, budget: &Budget) -> Result<VertexSet> {
        let planes: Vec<LiftedRow> = self.lifted.clone();
        let coords = intersection_points(&self.lifted, &planes, self.dim(), budget)?;
        let vertices: Vec<Vec<Rational>> = coords.iter().map(|c| self.subspace.point_at(c)).collect();
        let denominator = lcm_denominators(vertices.iter().flatten());
        Ok(VertexSet {
            vertices,
            coords,
            denominator,
        })
    }

    /// Volume normalized so that a fundamental domain of the lattice formed
    /// by the integer points of `t·aff P` (`t` a multiple of `lattice_scale`)
    /// has volume 1. This is the leading coefficient of the Ehrhart
    /// quasipolynomial on residues `t ≡ 0 (mod lattice_scale)`.
    ///
    /// `lattice_scale` must be a multiple of the period of `aff P`. Measured
    /// against the finer lattice `lattice_scale⁻¹Z^d ∩ aff P` the volume is
    /// `lattice_scale^dim` times larger; that factor cancels once the count
    /// is read as a function of `t` rather than of `t / lattice_scale`.
    pub fn normalized_volume(&self, vertices: &VertexSet, lattice_scale: u64) -> Result<Rational> {
        let period = self.subspace.period().ok_or(Error::InfeasibleSystem)?;
        if lattice_scale == 0 || !lattice_scale.is_multiple_of(period) {
            return Err(Error::schema(
                "lattice_scale",
                format!("{lattice_scale} is not a multiple of the period {period}"),
            ));
        }
        Ok(simplicial_volume(self, vertices))
    }
}

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let n = points[0].len();
    let rows = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(n, rows).rank()
}

/// Σ |det| / r! over a placing triangulation: fan from the lexicographically
/// smallest vertex over the recursively triangulated facets not containing it.
fn simplicial_volume(p: &HPolytope, vs: &VertexSet) -> Rational {
    let r = p.dim();
    if r == 0 || vs.coords.is_empty() {
        return if vs.coords.is_empty() { Rational::zero() } else { Rational::one() };
    }
    let tight: Vec<Vec<usize>> = vs
        .coords
        .iter()
        .map(|c| {
            p.lifted
                .iter()
                .enumerate()
                .filter(|(_, row)| dot(&row.g, c) == row.h)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let all: Vec<usize> = (0..vs.coords.len()).collect();
    let mut simplices = Vec::new();
    triangulate(&vs.vertices, &vs.coords, &tight, p.lifted.len(), &all, r, &mut Vec::new(), &mut simplices);
    let mut fact = BigInt::one();
    for k in 2..=r {
        fact *= k;
    }
    let mut total = Rational::zero();
    for s in simplices {
        let base = &vs.coords[s[0]];
        let rows = s[1..]
            .iter()
            .map(|&i| vs.coords[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += RatMatrix::from_rows(r, rows).determinant().abs();
    }
    total / Rational::from_integer(fact)
}

#[allow(clippy::too_many_arguments)]
fn triangulate(
    ambient: &[Vec<Rational>],
    coords: &[Vec<Rational>],
    tight: &[Vec<usize>],
    n_rows: usize,
    face: &[usize],
    dim: usize,
    apex: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v0 = *face
        .iter()
        .min_by(|&&a, &&b| ambient[a].cmp(&ambient[b]))
        .expect("nonempty face");
    if dim == 0 {
        let mut s = apex.clone();
        s.push(v0);
        out.push(s);
        return;
    }
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for k in 0..n_rows {
        let f: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&v| tight[v].contains(&k))
            .collect();
        if f.len() == face.len() || f.len() < dim || f.contains(&v0) {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = f.iter().map(|&v| &coords[v]).collect();
        if affine_rank(&pts) == dim - 1 {
            facets.insert(f);
        }
    }
    apex.push(v0);
    for f in facets {
        triangulate(ambient, coords, tight, n_rows, &f, dim - 1, apex, out);
    }
    apex.pop();
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Integer form of `g·c ≥ h`: both sides scaled by the lcm of denominators.
fn integer_row(row: &LiftedRow) -> (Vec<BigInt>, BigInt) {
    let l = Rational::from_integer(lcm_denominators(row.g.iter().chain([&row.h])));
    (
        row.g.iter().map(|v| (v * &l).to_integer()).collect(),
        (&row.h * &l).to_integer(),
    )
}

fn small_row(row: &(Vec<BigInt>, BigInt)) -> Option<(Vec<i128>, i128)> {
    Some((
        row.0.iter().map(|v| v.to_i128()).collect::<Option<_>>()?,
        row.1.to_i128()?,
    ))
}

/// Primitive integer normal form of a hyperplane `g·c = h`, sign fixed so the
/// first nonzero entry of `g` is positive. `None` when `g = 0`.
fn hyperplane_key(row: &LiftedRow) -> Option<(Vec<BigInt>, BigInt)> {
    let (g, h) = integer_row(row);
    let first = g.iter().find(|v| !v.is_zero())?;
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    let gcd = g.iter().chain([&h]).fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Some((
        g.iter().map(|v| v * &sign / &gcd).collect(),
        &h * &sign / &gcd,
    ))
}

/// Fraction-free determinant; `None` on i128 overflow.
fn det_i128(m: &mut [Vec<i128>]) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        return Some(1);
    }
    m[n - 1][n - 1].checked_mul(sign)
}

enum Solved {
    Singular,
    Point(Vec<i128>, i128),
    Overflow,
}

/// Cramer's rule with fraction-free determinants.
fn cramer(a: &[Vec<i128>], b: &[i128]) -> Solved {
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let det = match det_i128(&mut m) {
        Some(0) => return Solved::Singular,
        Some(d) => d,
        None => return Solved::Overflow,
    };
    let mut num = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let mut mk: Vec<Vec<i128>> = a.to_vec();
        for (row, &bi) in mk.iter_mut().zip(b) {
            row[k] = bi;
        }
        match det_i128(&mut mk) {
            Some(v) => num.push(v),
            None => return Solved::Overflow,
        }
    }
    if det < 0 {
        Solved::Point(num.into_iter().map(|v| -v).collect(), -det)
    } else {
        Solved::Point(num, det)
    }
}

/// Every point of the closed polytope (`constraints`) that is the unique
/// solution of some `r`-subset of `planes` (as equalities). Sorted, unique.
pub(crate) fn intersection_points(
    constraints: &[LiftedRow],
    planes: &[LiftedRow],
    r: usize,
    budget: &Budget,
) -> Result<Vec<Vec<Rational>>> {
    let inside = |c: &[Rational]| constraints.iter().all(|row| dot(&row.g, c) >= row.h);
    if r == 0 {
        return Ok(if inside(&[]) { vec![vec![]] } else { vec![] });
    }
    let keys: BTreeSet<(Vec<BigInt>, BigInt)> = planes.iter().filter_map(hyperplane_key).collect();
    let keys: Vec<(Vec<BigInt>, BigInt)> = keys.into_iter().collect();
    let n = keys.len();
    let subsets = binomial(n, r);
    if subsets > budget.max_subsets {
        return Err(Error::TooLarge {
            what: "hyperplane subsets",
            needed: subsets,
            limit: budget.max_subsets,
        });
    }
    let small: Option<Vec<(Vec<i128>, i128)>> = keys.iter().map(small_row).collect();
    let cons_int: Vec<(Vec<BigInt>, BigInt)> = constraints.iter().map(integer_row).collect();
    let cons_small: Option<Vec<(Vec<i128>, i128)>> = cons_int.iter().map(small_row).collect();

    let solve_rational = |idx: &[usize]| -> Option<Vec<Rational>> {
        let a = RatMatrix::from_rows(
            r,
            idx.iter()
                .map(|&i| keys[i].0.iter().cloned().map(Rational::from_integer).collect())
                .collect(),
        );
        let b: Vec<Rational> = idx.iter().map(|&i| Rational::from_integer(keys[i].1.clone())).collect();
        solve_square(&a, &b)
    };

    let per_first = |first: usize| -> BTreeSet<Vec<Rational>> {
        let mut found = BTreeSet::new();
        if n - first < r {
            return found;
        }
        let mut idx: Vec<usize> = (first..first + r).collect();
        loop {
            let point = match &small {
                Some(rows) => {
                    let a: Vec<Vec<i128>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
                    let b: Vec<i128> = idx.iter().map(|&i| rows[i].1).collect();
                    match cramer(&a, &b) {
                        Solved::Singular => None,
                        Solved::Point(num, den) => {
                            let ok = match &cons_small {
                                Some(cs) => cs.iter().all(|(g, h)| {
                                    let lhs = g.iter().zip(&num).try_fold(0i128, |acc, (x, y)| {
                                        acc.checked_add(x.checked_mul(*y)?)
                                    });
                                    match (lhs, h.checked_mul(den)) {
                                        (Some(l), Some(rh)) => l >= rh,
                                        _ => {
                                            let c: Vec<Rational> = num
                                                .iter()
                                                .map(|&v| Rational::new(v.into(), den.into()))
                                                .collect();
                                            inside(&c)
                                        }
                                    }
                                }),
                                None => {
                                    let c: Vec<Rational> = num
                                        .iter()
                                        .map(|&v| Rational::new(v.into(), den.into()))
                                        .collect();
                                    inside(&c)
                                }
                            };
                            ok.then(|| {
                                num.iter()
                                    .map(|&v| Rational::new(v.into(), den.into()))
                                    .collect()
                            })
                        }
                        Solved::Overflow => solve_rational(&idx).filter(|c| inside(c)),
                    }
                }
                None => solve_rational(&idx).filter(|c| inside(c)),
            };
            if let Some(p) = point {
                found.insert(p);
            }
            // next combination with idx[0] fixed
            let mut k = r;
            loop {
                if k == 1 {
                    return found;
                }
                k -= 1;
                if idx[k] < n - (r - k) {
                    idx[k] += 1;
                    for j in k + 1..r {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    };

    let merged = (0..n)
        .into_par_iter()
        .map(per_first)
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(merged.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, solve_affine, LinearSystem};

    fn whole(d: usize) -> AffineSubspace {
        solve_affine(&LinearSystem::unconstrained(d))
    }

    fn sys(rows: &[&[i64]], rhs: &[i64]) -> AffineSubspace {
        solve_affine(&LinearSystem::new(
            RatMatrix::from_i64(rows),
            rhs.iter().map(|&v| rat(v)).collect(),
        ))
    }

    #[test]
    fn unit_segment() {
        let p = build_polytope(whole(1), BoundMode::Cubical).unwrap();
        let vs = p.vertices(&Budget::default()).unwrap();
        assert_eq!(vs.vertices, vec![vec![rat(0)], vec![rat(1)]]);
        assert_eq!(p.normalized_volume(&vs, 1).unwrap(), rat(1));
    }

    #[test]
    fn unit_square() {
        let p = build_polytope(whole(2), BoundMode::Cubical).unwrap();
        let vs = p.vertices(&Budget::default()).unwrap();
        assert_eq!(vs.vertices.len(), 4);
        assert_eq!(vs.denominator, BigInt::one());
        assert_eq!(p.normalized_volume(&vs, 1).unwrap(), rat(1));
        assert!(p.contains(&[ratio(1, 2), ratio(1, 2)], Closure::Open));
        assert!(!p.contains(&[rat(0), ratio(1, 2)], Closure::Open));
        assert!(p.contains(&[rat(0), ratio(1, 2)], Closure::Closed));
    }

    #[test]
    fn antidiagonal_segment() {
        let p = build_polytope(sys(&[&[1, 1]], &[1]), BoundMode::Orthant).unwrap();
        let vs = p.vertices(&Budget::default()).unwrap();
        assert_eq!(vs.vertices.len(), 2);
        assert_eq!(vs.denominator, BigInt::one());
        assert!(!p.is_degenerate());
    }

    #[test]
    fn unit_cube_volume_three() {
        let p = build_polytope(whole(3), BoundMode::Cubical).unwrap();
        let vs = p.vertices(&Budget::default()).unwrap();
        assert_eq!(vs.vertices.len(), 8);
        assert_eq!(p.normalized_volume(&vs, 1).unwrap(), rat(1));
    }

    #[test]
    fn standard_simplex_volume() {
        // x1 + x2 + x3 = 1 in the orthant: lattice-normalized area 1/2
        let p = build_polytope(sys(&[&[1, 1, 1]], &[1]), BoundMode::Orthant).unwrap();
        let vs = p.vertices(&Budget::default()).unwrap();
        assert_eq!(vs.vertices.len(), 3);
        assert_eq!(p.normalized_volume(&vs, 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn orthant_without_bounding_form_is_unbounded() {
        let s = sys(&[&[1, 0]], &[1]);
        assert_eq!(build_polytope(s, BoundMode::Orthant).unwrap_err(), Error::UnboundedPolytope);
    }

    #[test]
    fn coordinate_hyperplane_is_flagged() {
        let p = build_polytope(sys(&[&[1, 0]], &[0]), BoundMode::Cubical).unwrap();
        assert!(p.is_degenerate());
    }

    #[test]
    fn subset_budget_is_enforced() {
        let p = build_polytope(whole(3), BoundMode::Cubical).unwrap();
        let tight = Budget {
            max_subsets: 3,
            ..Budget::default()
        };
        assert!(matches!(p.vertices(&tight), Err(Error::TooLarge { .. })));
    }
}
