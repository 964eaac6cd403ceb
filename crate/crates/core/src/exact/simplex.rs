use super::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn optimum(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.width)
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] -= &f * &pivot_row[j];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule iterations; returns false if unbounded.
    fn optimize(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(obj, r, enter);
        }
    }
}

/// Maximizes `objective · y` subject to `a · y ≤ b` for each `(a, b)` in
/// `constraints`, with `y ∈ Q^n` unrestricted in sign.
///
/// Dense two-phase simplex over exact rationals with Bland's anti-cycling
/// rule.
pub fn maximize(objective: &[Rational], constraints: &[(Vec<Rational>, Rational)]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    // columns: y+ (n), y- (n), slacks (m), artificials (k)
    let negative_rows: Vec<usize> = (0..m).filter(|&i| constraints[i].1.is_negative()).collect();
    let k = negative_rows.len();
    let width = 2 * n + m + k;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, (a, b)) in constraints.iter().enumerate() {
        assert_eq!(a.len(), n, "constraint width");
        let mut row = vec![Rational::zero(); width + 1];
        let flip = b.is_negative();
        let sign = if flip { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        for j in 0..n {
            row[j] = &a[j] * &sign;
            row[n + j] = -&row[j];
        }
        row[2 * n + i] = sign.clone();
        row[width] = b * &sign;
        if flip {
            let art = 2 * n + m + negative_rows.iter().position(|&r| r == i).unwrap();
            row[art] = Rational::from_integer(1.into());
            basis.push(art);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis, width };

    if k > 0 {
        // phase 1: maximize -Σ artificials
        let mut obj = vec![Rational::zero(); width + 1];
        for (i, row) in tab.rows.iter().enumerate() {
            if tab.basis[i] >= 2 * n + m {
                for j in 0..=width {
                    obj[j] -= &row[j];
                }
            }
        }
        for j in 2 * n + m..width {
            obj[j] = Rational::zero();
        }
        tab.optimize(&mut obj, width);
        if !obj[width].is_zero() {
            return LpOutcome::Infeasible;
        }
        for r in 0..m {
            if tab.basis[r] >= 2 * n + m {
                if let Some(c) = (0..2 * n + m).find(|&j| !tab.rows[r][j].is_zero()) {
                    tab.pivot(&mut obj, r, c);
                }
            }
        }
    }

    let mut obj = vec![Rational::zero(); width + 1];
    for j in 0..n {
        obj[j] = -objective[j].clone();
        obj[n + j] = objective[j].clone();
    }
    for (i, row) in tab.rows.iter().enumerate() {
        let b = tab.basis[i];
        let cb = if b < n {
            objective[b].clone()
        } else if b < 2 * n {
            -objective[b - n].clone()
        } else {
            continue;
        };
        if cb.is_zero() {
            continue;
        }
        for j in 0..=width {
            obj[j] += &cb * &row[j];
        }
    }
    if !tab.optimize(&mut obj, 2 * n + m) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            point[b] += tab.rhs(i);
        } else if b < 2 * n {
            point[b - n] -= tab.rhs(i);
        }
    }
    LpOutcome::Optimal {
        value: obj[width].clone(),
        point,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn c(a: &[i64], b: i64) -> (Vec<Rational>, Rational) {
        (a.iter().map(|&v| rat(v)).collect(), rat(b))
    }

    #[test]
    fn box_optimum() {
        // max x + y, x <= 2, y <= 3, x + y <= 4
        let out = maximize(&[rat(1), rat(1)], &[c(&[1, 0], 2), c(&[0, 1], 3), c(&[1, 1], 4)]);
        assert_eq!(out.optimum(), Some(&rat(4)));
    }

    #[test]
    fn needs_phase_one() {
        // max -x s.t. x >= 3/2 (i.e. -x <= -3/2), x <= 5
        let out = maximize(&[rat(-1)], &[(vec![rat(-1)], ratio(-3, 2)), c(&[1], 5)]);
        match out {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(-3, 2));
                assert_eq!(point, vec![ratio(3, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&[rat(1)], &[c(&[1], 1), c(&[-1], -2)]), LpOutcome::Infeasible);
        assert_eq!(maximize(&[rat(1), rat(0)], &[c(&[0, 1], 1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_go_negative() {
        // max -x - y, x >= -2, y >= -5, x + y >= -4
        let out = maximize(
            &[rat(-1), rat(-1)],
            &[c(&[-1, 0], 2), c(&[0, -1], 5), c(&[-1, -1], 4)],
        );
        assert_eq!(out.optimum(), Some(&rat(4)));
    }

    #[test]
    fn degenerate_redundant_equalities() {
        // x + y <= 1 and x + y >= 1 twice, maximize x
        let out = maximize(
            &[rat(1), rat(0)],
            &[
                c(&[1, 1], 1),
                c(&[-1, -1], -1),
                c(&[-1, -1], -1),
                c(&[0, -1], 0),
            ],
        );
        assert_eq!(out.optimum(), Some(&rat(1)));
    }
}
