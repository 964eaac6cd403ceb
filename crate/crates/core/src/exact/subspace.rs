use super::hnf::{column_hnf, ColumnHnf};
use super::{lcm_denominators, LinearSystem, RatMatrix, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Exact solution set of a rational linear system.
///
/// Points are parametrized as `x = base + Σ c_k b_k` where `b_k` is the
/// lattice basis (a Z-basis of `Z^d ∩ lin(s)`) and `c = coords · x`.
/// The base point is chosen so that `coords · base = 0`, which makes
/// `t·base + Σ c_k b_k` (`c` integer) exactly the integer points of `t·s`
/// whenever `t·base` is integral.
#[derive(Clone, Debug)]
pub struct AffineSubspace {
    system: LinearSystem,
    particular_point: Option<Vec<Rational>>,
    direction_basis: Vec<Vec<Rational>>,
    lattice_basis: Vec<Vec<BigInt>>,
    coords: Vec<Vec<BigInt>>,
    period: Option<u64>,
}

impl AffineSubspace {
    pub fn ambient_dim(&self) -> usize {
        self.system.dim()
    }

    /// Dimension of the linear part (also of `s` when nonempty).
    pub fn dim(&self) -> usize {
        self.lattice_basis.len()
    }

    pub fn system(&self) -> &LinearSystem {
        &self.system
    }

    pub fn is_empty(&self) -> bool {
        self.particular_point.is_none()
    }

    pub fn particular_point(&self) -> Option<&[Rational]> {
        self.particular_point.as_deref()
    }

    pub fn direction_basis(&self) -> &[Vec<Rational>] {
        &self.direction_basis
    }

    pub fn lattice_basis(&self) -> &[Vec<BigInt>] {
        &self.lattice_basis
    }

    /// Integer matrix mapping a point of `s` to its lattice coordinates.
    pub fn coordinate_map(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// Smallest `p` with `p⁻¹Z^d ∩ s ≠ ∅`; `None` for an empty subspace.
    pub fn period(&self) -> Option<u64> {
        self.period
    }

    pub fn is_linear(&self) -> bool {
        self.system.is_homogeneous()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.system.is_satisfied_by(x)
    }

    /// `base + Σ c_k b_k`.
    pub fn point_at(&self, c: &[Rational]) -> Vec<Rational> {
        let base = self
            .particular_point
            .as_ref()
            .expect("point_at on empty subspace");
        let mut x = base.clone();
        for (ck, b) in c.iter().zip(&self.lattice_basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += ck * Rational::from_integer(bi.clone());
            }
        }
        x
    }

    /// Lattice coordinates of a point of `s` (or of its dilate `t·s`).
    pub fn coords_of(&self, x: &[Rational]) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|w| {
                w.iter()
                    .zip(x)
                    .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                    .sum()
            })
            .collect()
    }

    /// The linear functional `x ↦ a·x` written in lattice coordinates:
    /// returns `(a·B, a·base)`.
    pub fn pull_back(&self, a: &[Rational]) -> (Vec<Rational>, Rational) {
        let lin = self
            .lattice_basis
            .iter()
            .map(|b| {
                b.iter()
                    .zip(a)
                    .map(|(bi, ai)| Rational::from_integer(bi.clone()) * ai)
                    .sum()
            })
            .collect();
        let off = match &self.particular_point {
            Some(p) => super::dot(a, p),
            None => Rational::zero(),
        };
        (lin, off)
    }

    /// Whether `x_i - x_j` vanishes identically on `s`.
    pub fn forces_equal(&self, i: usize, j: usize) -> bool {
        let base_eq = self
            .particular_point
            .as_ref()
            .is_none_or(|p| p[i] == p[j]);
        base_eq && self.lattice_basis.iter().all(|b| b[i] == b[j])
    }

    /// `s` intersected with the extra equations.
    pub fn restrict(&self, extra: &LinearSystem) -> AffineSubspace {
        let mut sys = self.system.clone();
        for i in 0..extra.coefficients.rows() {
            sys.push(extra.coefficients.row(i).to_vec(), extra.rhs[i].clone());
        }
        solve_affine(&sys)
    }
}

fn scaled_integer_system(sys: &LinearSystem) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let m = &sys.coefficients;
    let mut rows = Vec::with_capacity(m.rows());
    let mut rhs = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = Rational::from_integer(lcm_denominators(row.iter().chain([&sys.rhs[i]])));
        rows.push(row.iter().map(|v| (v * &l).to_integer()).collect());
        rhs.push((&sys.rhs[i] * &l).to_integer());
    }
    (rows, rhs)
}

/// Forward substitution through the echelon form; `None` when inconsistent.
fn echelon_solution(f: &ColumnHnf, rhs: &[BigInt]) -> Option<Vec<Rational>> {
    let mut y: Vec<Rational> = Vec::with_capacity(f.rank());
    let mut next_pivot = 0;
    for (i, b) in rhs.iter().enumerate() {
        let k = y.len();
        let acc: Rational = (0..k)
            .map(|j| Rational::from_integer(f.h[i][j].clone()) * &y[j])
            .sum();
        let rest = Rational::from_integer(b.clone()) - acc;
        if next_pivot < f.rank() && f.pivot_rows[next_pivot] == i {
            y.push(rest / Rational::from_integer(f.h[i][k].clone()));
            next_pivot += 1;
        } else if !rest.is_zero() {
            return None;
        }
    }
    Some(y)
}

/// Solves `A x = b` exactly, returning the full solution set with its
/// lattice parametrization. An inconsistent system yields an empty subspace.
pub fn solve_affine(sys: &LinearSystem) -> AffineSubspace {
    let d = sys.dim();
    let (a, b) = scaled_integer_system(sys);
    let f = column_hnf(&a, d);
    let r = f.rank();
    let lattice_basis = f.kernel_basis();

    let u_rat = RatMatrix::from_rows(
        d,
        f.u.iter()
            .map(|row| row.iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    );
    let u_inv = u_rat.inverse().expect("HNF transform is unimodular");
    let coords: Vec<Vec<BigInt>> = (r..d)
        .map(|i| (0..d).map(|j| u_inv[(i, j)].to_integer()).collect())
        .collect();

    let y = echelon_solution(&f, &b);
    let period = y
        .as_ref()
        .map(|y| lcm_denominators(y).to_u64().expect("period fits in u64"));
    let particular_point = y.map(|y| {
        let mut full = y;
        full.resize(d, Rational::zero());
        u_rat.mul_vec(&full)
    });

    let (rref, pivots) = sys.coefficients.rref();
    let direction_basis = (0..d)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); d];
            v[free] = Rational::from_integer(1.into());
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -rref[(row, free)].clone();
            }
            v
        })
        .collect();

    AffineSubspace {
        system: sys.clone(),
        particular_point,
        direction_basis,
        lattice_basis,
        coords,
        period,
    }
}

/// Minimal `p ≥ 1` such that `p·A x = p·b` has an integer solution, i.e.
/// `p⁻¹Z^d` meets `s`.
pub fn period_of(s: &AffineSubspace) -> Result<u64> {
    let (a, b) = scaled_integer_system(s.system());
    let f = column_hnf(&a, s.ambient_dim());
    let y = echelon_solution(&f, &b).ok_or(Error::InfeasibleSystem)?;
    lcm_denominators(&y).to_u64().ok_or(Error::Overflow)
}
