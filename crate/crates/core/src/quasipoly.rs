//! Quasipolynomials: exact fitting with minimal-period detection,
//! evaluation at any integer, and structural checks against the geometry.

use crate::arrangement::{realizable_orientations, Target};
use crate::clutter::{InsideOutProblem, Mode};
use crate::counting::{Budget, CountSeries, Counter, Regime};
use crate::exact::{format_rational, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// `Q(t) = Σ c_i(t) t^i` with `c_i` periodic of period `period`;
/// `constituents[r]` holds `(c_0, …, c_D)` for `t ≡ r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub period: u64,
    pub constituents: Vec<Vec<Rational>>,
}

impl Quasipolynomial {
    pub fn polynomial(coefficients: Vec<Rational>) -> Self {
        Quasipolynomial {
            period: 1,
            constituents: vec![coefficients],
        }
    }

    /// Highest index with a nonzero coefficient in some constituent.
    pub fn degree(&self) -> Option<usize> {
        self.constituents
            .iter()
            .filter_map(|c| c.iter().rposition(|v| !v.is_zero()))
            .max()
    }

    pub fn constituent(&self, t: i64) -> &[Rational] {
        &self.constituents[t.rem_euclid(self.period as i64) as usize]
    }

    pub fn evaluate(&self, t: i64) -> Rational {
        evaluate(self, t)
    }
}

/// Horner evaluation of the constituent for `t mod period` (nonnegative
/// residue, so negative `t` works).
pub fn evaluate(q: &Quasipolynomial, t: i64) -> Rational {
    let tr = Rational::from_integer(BigInt::from(t));
    q.constituent(t)
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &tr + c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub regime: Regime,
    pub quasipolynomial: Quasipolynomial,
    pub degree: usize,
    pub period_bound: u64,
    /// Periods tried in order; the last one succeeded.
    pub candidates: Vec<u64>,
    /// Points checked beyond the interpolation nodes.
    pub held_out: usize,
    /// Degree-`D` coefficient per constituent.
    pub leading: Vec<Rational>,
    /// Constant term per constituent.
    pub constant_terms: Vec<Rational>,
}

/// Coefficients of the unique polynomial of degree `≤ n-1` through the
/// points, expanded from the Lagrange form.
fn lagrange(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let mut out = vec![Rational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += b * &scale;
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// Fits a quasipolynomial of degree `≤ degree` to `series` on `t = 1..T`.
///
/// Candidate periods are the divisors of `period_bound` that are multiples
/// of `period_multiple`, tried in increasing order. Each residue class is
/// interpolated through its first `degree + 1` points and checked exactly
/// on all the others. Needs `T ≥ 2·period_bound·(degree + 1)`.
pub fn fit(series: &CountSeries, degree: usize, period_bound: u64, period_multiple: u64) -> Result<FitReport> {
    let needed = 2 * period_bound * (degree as u64 + 1);
    let have = series.contiguous_max();
    if have < needed {
        return Err(Error::InsufficientData { needed, have });
    }
    let data: Vec<(u64, Rational)> = (1..=have)
        .map(|t| (t, Rational::from_integer(BigInt::from(series.get(t).unwrap()))))
        .collect();
    let mut tried = Vec::new();
    for q in divisors(period_bound)
        .into_iter()
        .filter(|q| period_multiple > 0 && q % period_multiple == 0)
    {
        tried.push(q);
        let fitted: Option<Vec<(Vec<Rational>, usize)>> = (0..q)
            .into_par_iter()
            .map(|r| {
                let class: Vec<(Rational, Rational)> = data
                    .iter()
                    .filter(|(t, _)| t % q == r)
                    .map(|(t, v)| (Rational::from_integer(BigInt::from(*t)), v.clone()))
                    .collect();
                let coeffs = lagrange(&class[..degree + 1]);
                let poly = Quasipolynomial::polynomial(coeffs.clone());
                let ok = class[degree + 1..].iter().all(|(t, v)| {
                    evaluate(&poly, t.to_integer().try_into().unwrap()) == *v
                });
                ok.then_some((coeffs, class.len() - degree - 1))
            })
            .collect();
        if let Some(fitted) = fitted {
            let held_out = fitted.iter().map(|(_, h)| h).sum();
            let constituents: Vec<Vec<Rational>> = fitted.into_iter().map(|(c, _)| c).collect();
            let leading = constituents.iter().map(|c| c[degree].clone()).collect();
            let constant_terms = constituents.iter().map(|c| c[0].clone()).collect();
            return Ok(FitReport {
                regime: series.regime,
                quasipolynomial: Quasipolynomial {
                    period: q,
                    constituents,
                },
                degree,
                period_bound,
                candidates: tried,
                held_out,
                leading,
                constant_terms,
            });
        }
    }
    Err(Error::NoConsistentPeriod { bound: period_bound })
}

/// One structural check with the exact values compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checks: Vec<Check>,
}

impl StructureReport {
    pub fn push(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { CheckStatus::Pass } else { CheckStatus::Fail };
        self.checks.push(Check {
            name: name.into(),
            status,
            expected,
            actual,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Skipped,
            expected: String::new(),
            actual: reason.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn list(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Checks a fitted open series against the geometry of `problem`:
/// leading coefficients equal the normalized volume (affine mode: on
/// residues divisible by `p(s)`, zero constituents elsewhere), the constant
/// term gives the region count up to the sign `(-1)^dim s`, and
/// `(-1)^dim s q(-t)` matches the closed counts on `t = 0..=10`.
pub fn verify_structure(report: &FitReport, problem: &InsideOutProblem, budget: &Budget) -> Result<StructureReport> {
    let mut out = StructureReport::default();
    let closed_regime = match report.regime {
        Regime::OpenStrong | Regime::MoebiusOpen => Regime::ClosedMultiplicity,
        Regime::WeakOpen => Regime::WeakClosed,
        other => {
            out.skip("structure", format!("{} is not an open regime", other.name()));
            return Ok(out);
        }
    };
    let q = &report.quasipolynomial;
    let dim = problem.dim();
    let sign = if dim.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let p = problem.period();

    let vertices = problem.polytope().vertices(budget)?;
    let volume = problem.polytope().normalized_volume(&vertices, p)?;
    let expected_leading: Vec<Rational> = (0..q.period)
        .map(|r| if r % p == 0 { volume.clone() } else { Rational::zero() })
        .collect();
    let actual_leading: Vec<Rational> = q
        .constituents
        .iter()
        .map(|c| c.get(dim).cloned().unwrap_or_else(Rational::zero))
        .collect();
    out.push("leading coefficient", list(&expected_leading), list(&actual_leading));
    if problem.mode() == Mode::Affine {
        let zero_off_period = q
            .constituents
            .iter()
            .enumerate()
            .filter(|(r, _)| !(*r as u64).is_multiple_of(p))
            .all(|(_, c)| c.iter().all(Zero::is_zero));
        out.push("zero constituents off multiples of p(s)", true, zero_off_period);
    }

    let regions = if closed_regime == Regime::WeakClosed {
        1
    } else {
        realizable_orientations(problem.graph(), problem.polytope(), Target::Open, budget)?.len()
    };
    out.push(
        "constant term gives region count",
        regions,
        format_rational(&(&sign * evaluate(q, 0))),
    );

    let mut counter = Counter::new(problem, *budget)?;
    let closed = counter.series(&[closed_regime], 0..=10)?.remove(0);
    let expected: Vec<String> = (0..=10).map(|t| closed.get(t).unwrap().to_string()).collect();
    let actual: Vec<String> = (0..=10).map(|t| format_rational(&(&sign * evaluate(q, -t)))).collect();
    out.push(
        format!("reciprocity against {} on t=0..10", closed_regime.name()),
        expected.join(","),
        actual.join(","),
    );

    let den = crate::arrangement::inside_out_denominator(problem.polytope(), problem.arrangement(), budget)?;
    let divides = den.is_multiple_of(&BigInt::from(q.period));
    out.push(format!("period {} divides denominator {den}", q.period), true, divides);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn series(f: impl Fn(u64) -> u64, t_max: u64) -> CountSeries {
        let mut s = CountSeries::new(Regime::OpenStrong);
        for t in 1..=t_max {
            s.values.insert(t, f(t));
        }
        s
    }

    #[test]
    fn squares_have_period_one() {
        let r = fit(&series(|t| t * t, 12), 2, 1, 1).unwrap();
        assert_eq!(r.quasipolynomial.period, 1);
        assert_eq!(r.quasipolynomial.constituents[0], vec![rat(0), rat(0), rat(1)]);
        assert_eq!(evaluate(&r.quasipolynomial, -3), rat(9));
    }

    #[test]
    fn alternating_linear() {
        // t - 1 for odd t, t - 2 for even t
        let r = fit(&series(|t| if t % 2 == 1 { t - 1 } else { t - 2 }, 8), 1, 2, 1).unwrap();
        assert_eq!(r.quasipolynomial.period, 2);
        assert_eq!(r.candidates, vec![1, 2]);
        assert_eq!(r.quasipolynomial.constituents[0], vec![rat(-2), rat(1)]);
        assert_eq!(r.quasipolynomial.constituents[1], vec![rat(-1), rat(1)]);
        assert_eq!(r.held_out, 4);
    }

    #[test]
    fn floor_of_half_square() {
        // ⌊t²/2⌋ has period 2 and leading coefficient 1/2
        let r = fit(&series(|t| t * t / 2, 24), 2, 4, 1).unwrap();
        assert_eq!(r.quasipolynomial.period, 2);
        assert_eq!(r.leading, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(r.constant_terms, vec![rat(0), ratio(-1, 2)]);
    }

    #[test]
    fn wrong_bound_fails_loudly() {
        let s = series(|t| if t % 3 == 0 { 1 } else { 0 }, 8);
        assert_eq!(fit(&s, 0, 2, 1).unwrap_err(), Error::NoConsistentPeriod { bound: 2 });
        assert!(matches!(fit(&s, 0, 6, 1), Err(Error::InsufficientData { needed: 12, have: 8 })));
    }

    #[test]
    fn lagrange_recovers_cubic() {
        let pts: Vec<(Rational, Rational)> = (0..4)
            .map(|x: i64| (rat(x), rat(x * x * x - 2 * x + 5)))
            .collect();
        assert_eq!(lagrange(&pts), vec![rat(5), rat(-2), rat(0), rat(1)]);
    }
}
