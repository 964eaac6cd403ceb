//! Covering clutters, linear form systems, the built-in square families and
//! the assembled [`InsideOutProblem`].

use crate::arrangement::{induce, ForbiddenGraph, InducedArrangement};
use crate::exact::{rat, ratio, solve_affine, AffineSubspace, LinearSystem, RatMatrix, Rational};
use crate::polytope::{build_polytope, BoundMode, HPolytope};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Cubical counts by an upper bound on entries; affine counts by line sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cubical,
    Affine,
}

impl Mode {
    pub fn bound_mode(self) -> BoundMode {
        match self {
            Mode::Cubical => BoundMode::Cubical,
            Mode::Affine => BoundMode::Orthant,
        }
    }
}

/// Which pairs of entries must differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distinctness {
    /// Every pair (magic).
    All,
    /// Pairs sharing a line (magilatin).
    #[serde(alias = "per-line")]
    Line,
    /// No pair (weak).
    None,
}

/// Central symmetry of an `n × n` square.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    #[default]
    None,
    /// `x_ij + x_{n+1-i,n+1-j} = 1`
    Cubical,
    /// `x_ij + x_{n+1-i,n+1-j} = 2/n`
    Affine,
}

macro_rules! str_enum {
    ($t:ty, $($name:literal => $v:expr),+) => {
        impl std::str::FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($v),)+
                    _ => Err(Error::schema(stringify!($t), format!("unknown value {s:?}"))),
                }
            }
        }
    };
}

str_enum!(Mode, "cubical" => Mode::Cubical, "affine" => Mode::Affine);
str_enum!(Distinctness, "all" => Distinctness::All, "line" => Distinctness::Line,
    "per-line" => Distinctness::Line, "none" => Distinctness::None);
str_enum!(Symmetry, "none" => Symmetry::None, "cubical" => Symmetry::Cubical, "affine" => Symmetry::Affine);

/// A (multiple) covering clutter on points `0..d`. Lines carry a class
/// label; line sums are equalized within a class only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringClutter {
    d: usize,
    lines: Vec<Vec<usize>>,
    classes: Vec<usize>,
}

impl CoveringClutter {
    pub fn new(d: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_classes(d, vec![lines])
    }

    /// One list of lines per class. Lines are sorted; a line repeated within
    /// a class is kept once.
    pub fn with_classes(d: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut lines = Vec::new();
        let mut labels = Vec::new();
        let mut covered = vec![false; d];
        for (k, class) in classes.into_iter().enumerate() {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for (li, mut line) in class.into_iter().enumerate() {
                let loc = format!("line_classes[{k}][{li}]");
                if line.is_empty() {
                    return Err(Error::schema(loc, "line is empty"));
                }
                line.sort_unstable();
                if line.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::schema(loc, "line repeats a point"));
                }
                if let Some(&bad) = line.iter().find(|&&i| i >= d) {
                    return Err(Error::schema(loc, format!("point {} is outside 1..{d}", bad + 1)));
                }
                for &i in &line {
                    covered[i] = true;
                }
                if seen.insert(line.clone()) {
                    lines.push(line);
                    labels.push(k);
                }
            }
        }
        for a in 0..lines.len() {
            for b in 0..lines.len() {
                if a != b && labels[a] == labels[b] && lines[a].iter().all(|i| lines[b].contains(i)) {
                    return Err(Error::schema(
                        format!("line_classes[{}]", labels[a]),
                        format!("line {:?} is contained in line {:?}", one_based(&lines[a]), one_based(&lines[b])),
                    ));
                }
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::schema("line_classes", format!("point {} lies on no line", i + 1)));
        }
        Ok(CoveringClutter {
            d,
            lines,
            classes: labels,
        })
    }

    pub fn point_count(&self) -> usize {
        self.d
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn class_of(&self, line: usize) -> usize {
        self.classes[line]
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    pub fn has_constant_line_size(&self) -> bool {
        self.lines.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Indicator forms of the lines, each with target 1.
    pub fn forms(&self) -> FormSystem {
        let forms = self
            .lines
            .iter()
            .map(|l| {
                let mut f = vec![Rational::zero(); self.d];
                for &i in l {
                    f[i] = rat(1);
                }
                f
            })
            .collect();
        FormSystem {
            d: self.d,
            forms,
            classes: self.classes.clone(),
            targets: vec![rat(1); self.lines.len()],
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// `Γ_L`: the union of the cliques on the lines.
pub fn gamma_graph(clutter: &CoveringClutter) -> ForbiddenGraph {
    ForbiddenGraph::from_cliques(clutter.d, clutter.lines.iter().map(|l| l.as_slice()))
}

/// Rational linear forms `f_i` on `R^d`, grouped into classes, with the
/// affine targets `f_i(x) = target_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSystem {
    d: usize,
    forms: Vec<Vec<Rational>>,
    classes: Vec<usize>,
    targets: Vec<Rational>,
}

impl FormSystem {
    pub fn new(d: usize, forms: Vec<Vec<Rational>>, classes: Vec<usize>, targets: Vec<Rational>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::schema("forms", "no forms given"));
        }
        if classes.len() != forms.len() || targets.len() != forms.len() {
            return Err(Error::schema("forms", "classes and targets must match the forms"));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != d {
                return Err(Error::schema(
                    format!("forms[{i}].coefficients"),
                    format!("expected {d} coefficients, got {}", f.len()),
                ));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(Error::schema(format!("forms[{i}]"), "form is zero"));
            }
        }
        if let Some(j) = (0..d).find(|&j| forms.iter().all(|f| f[j].is_zero())) {
            return Err(Error::schema("forms", format!("variable {} appears in no form", j + 1)));
        }
        Ok(FormSystem {
            d,
            forms,
            classes,
            targets,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn targets(&self) -> &[Rational] {
        &self.targets
    }

    /// `f_i(𝟙)` per form.
    pub fn weights(&self) -> Vec<Rational> {
        self.forms.iter().map(|f| f.iter().sum()).collect()
    }

    /// Nonnegative coefficients and positive weight for every form.
    pub fn is_positive(&self) -> bool {
        self.forms
            .iter()
            .all(|f| f.iter().all(|v| !v.is_negative()) && f.iter().any(|v| v.is_positive()))
    }

    /// Points with a nonzero coefficient, per form.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.forms
            .iter()
            .map(|f| (0..self.d).filter(|&j| !f[j].is_zero()).collect())
            .collect()
    }

    /// Whether the Möbius formulas apply: equal weights within each class
    /// (so the difference forms have weight zero) in cubical mode; one common
    /// positive weight and one common target in affine mode.
    pub fn has_constant_weight(&self, mode: Mode) -> bool {
        let w = self.weights();
        match mode {
            Mode::Cubical => (0..w.len()).all(|i| {
                (0..w.len()).all(|j| self.classes[i] != self.classes[j] || w[i] == w[j])
            }),
            Mode::Affine => {
                w[0].is_positive()
                    && w.iter().all(|v| *v == w[0])
                    && self.targets.iter().all(|v| *v == self.targets[0])
            }
        }
    }
}

/// Cell `(i, j)` of an `m × n` grid, 0-based, row-major.
fn cell(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `s`: line sums equal within each class (cubical), or every form equal
/// to its target (affine), plus the symmetry equations on an `n × n` grid.
pub fn magic_subspace(
    forms: &FormSystem,
    mode: Mode,
    symmetry: Symmetry,
    grid: Option<(usize, usize)>,
) -> Result<AffineSubspace> {
    let d = forms.d;
    let mut sys = LinearSystem::new(RatMatrix::zeros(0, d), Vec::new());
    match mode {
        Mode::Cubical => {
            let mut first: Vec<Option<usize>> = Vec::new();
            for (i, f) in forms.forms.iter().enumerate() {
                let k = forms.classes[i];
                if first.len() <= k {
                    first.resize(k + 1, None);
                }
                match first[k] {
                    None => first[k] = Some(i),
                    Some(i0) => {
                        let row = f.iter().zip(&forms.forms[i0]).map(|(a, b)| a - b).collect();
                        sys.push(row, Rational::zero());
                    }
                }
            }
        }
        Mode::Affine => {
            for (f, target) in forms.forms.iter().zip(&forms.targets) {
                sys.push(f.clone(), target.clone());
            }
        }
    }
    if symmetry != Symmetry::None {
        let (m, n) = grid.ok_or_else(|| Error::schema("symmetry", "symmetry needs a square grid"))?;
        if m != n || m * n != d {
            return Err(Error::schema("symmetry", "symmetry needs a square grid"));
        }
        let value = match symmetry {
            Symmetry::Cubical => rat(1),
            Symmetry::Affine => ratio(2, n as i64),
            Symmetry::None => unreachable!(),
        };
        for i in 0..n {
            for j in 0..n {
                let a = cell(n, i, j);
                let b = cell(n, n - 1 - i, n - 1 - j);
                if a > b {
                    continue;
                }
                let mut row = vec![Rational::zero(); d];
                row[a] += rat(1);
                row[b] += rat(1);
                sys.push(row, value.clone());
            }
        }
    }
    let s = solve_affine(&sys);
    if s.is_empty() {
        return Err(Error::InfeasibleSystem);
    }
    Ok(s)
}

/// The built-in square families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Rows, columns and both main diagonals.
    Magic(usize),
    /// Rows and columns.
    Semimagic(usize),
    /// Rows, columns and all `2n` wrapped diagonals.
    Pandiagonal(usize),
    /// Rows and columns in one class, distinct within lines.
    MagilatinSquare(usize),
    /// Rows and columns as two classes, distinct within lines.
    MagilatinRectangle(usize, usize),
}

impl Builtin {
    pub fn family(&self) -> &'static str {
        match self {
            Builtin::Magic(_) => "magic",
            Builtin::Semimagic(_) => "semimagic",
            Builtin::Pandiagonal(_) => "pandiagonal",
            Builtin::MagilatinSquare(_) => "magilatin_square",
            Builtin::MagilatinRectangle(..) => "magilatin_rectangle",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Builtin::Magic(n) | Builtin::Semimagic(n) | Builtin::Pandiagonal(n) | Builtin::MagilatinSquare(n) => {
                vec![n]
            }
            Builtin::MagilatinRectangle(m, n) => vec![m, n],
        }
    }

    pub fn from_parts(family: &str, params: &[usize]) -> Result<Self> {
        let arity = |k: usize| -> Result<()> {
            if params.len() != k {
                return Err(Error::schema(
                    "builtin.params",
                    format!("{family} takes {k} parameter(s), got {}", params.len()),
                ));
            }
            if params.contains(&0) {
                return Err(Error::schema("builtin.params", "parameters must be at least 1"));
            }
            Ok(())
        };
        let b = match family {
            "magic" => Builtin::Magic(params.first().copied().unwrap_or(0)),
            "semimagic" => Builtin::Semimagic(params.first().copied().unwrap_or(0)),
            "pandiagonal" => Builtin::Pandiagonal(params.first().copied().unwrap_or(0)),
            "magilatin_square" => Builtin::MagilatinSquare(params.first().copied().unwrap_or(0)),
            "magilatin_rectangle" => {
                arity(2)?;
                return Ok(Builtin::MagilatinRectangle(params[0], params[1]));
            }
            _ => return Err(Error::schema("builtin.family", format!("unknown family {family:?}"))),
        };
        arity(1)?;
        Ok(b)
    }

    pub fn grid(&self) -> (usize, usize) {
        match *self {
            Builtin::MagilatinRectangle(m, n) => (m, n),
            Builtin::Magic(n) | Builtin::Semimagic(n) | Builtin::Pandiagonal(n) | Builtin::MagilatinSquare(n) => {
                (n, n)
            }
        }
    }

    pub fn default_distinctness(&self) -> Distinctness {
        match self {
            Builtin::MagilatinSquare(_) | Builtin::MagilatinRectangle(..) => Distinctness::Line,
            _ => Distinctness::All,
        }
    }

    pub fn clutter(&self) -> CoveringClutter {
        let (m, n) = self.grid();
        let rows: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|j| cell(n, i, j)).collect()).collect();
        let cols: Vec<Vec<usize>> = (0..n).map(|j| (0..m).map(|i| cell(n, i, j)).collect()).collect();
        let classes = match *self {
            Builtin::Semimagic(_) | Builtin::MagilatinSquare(_) => vec![[rows, cols].concat()],
            Builtin::Magic(_) => {
                let main = (0..n).map(|i| cell(n, i, i)).collect();
                let anti = (0..n).map(|i| cell(n, i, n - 1 - i)).collect();
                vec![[rows, cols, vec![main, anti]].concat()]
            }
            Builtin::Pandiagonal(_) => {
                let down = (0..n).map(|k| (0..n).map(|i| cell(n, i, (i + k) % n)).collect());
                let up = (0..n).map(|k| (0..n).map(|i| cell(n, i, (k + n - i) % n)).collect());
                vec![[rows, cols, down.collect(), up.collect()].concat()]
            }
            Builtin::MagilatinRectangle(..) => vec![rows, cols],
        };
        CoveringClutter::with_classes(m * n, classes).expect("built-in clutters are valid")
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family(), ps.join(","))
    }
}

/// Accepts `magic(3)`, `magic:3`, `magilatin_rectangle(2,3)` and
/// `magilatin_rectangle:2x3`.
impl std::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::schema("builtin", format!("unbalanced parentheses in {s:?}")))?;
            (&s[..open], inner)
        } else if let Some((f, r)) = s.split_once(':') {
            (f, r)
        } else {
            return Err(Error::schema("builtin", format!("expected family(params), got {s:?}")));
        };
        let params = rest
            .split([',', 'x'])
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::schema("builtin.params", format!("bad parameter {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Builtin::from_parts(family.trim(), &params)
    }
}

/// Construction choices shared by built-in and explicit problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub mode: Mode,
    /// `None` picks the family default (per line for magilatin shapes,
    /// all pairs otherwise).
    pub distinctness: Option<Distinctness>,
    pub symmetry: Symmetry,
}

impl Options {
    pub fn new(mode: Mode) -> Self {
        Options {
            mode,
            distinctness: None,
            symmetry: Symmetry::None,
        }
    }

    pub fn cubical() -> Self {
        Self::new(Mode::Cubical)
    }

    pub fn affine() -> Self {
        Self::new(Mode::Affine)
    }

    pub fn distinct(mut self, d: Distinctness) -> Self {
        self.distinctness = Some(d);
        self
    }

    pub fn symmetric(mut self, s: Symmetry) -> Self {
        self.symmetry = s;
        self
    }
}

/// A polytope, its forbidden graph and the arrangement the graph induces.
#[derive(Clone, Debug)]
pub struct InsideOutProblem {
    name: String,
    forms: FormSystem,
    clutter: Option<CoveringClutter>,
    grid: Option<(usize, usize)>,
    mode: Mode,
    distinctness: Distinctness,
    symmetry: Symmetry,
    polytope: HPolytope,
    graph: ForbiddenGraph,
    arrangement: InducedArrangement,
    constant_weight: bool,
}

impl InsideOutProblem {
    pub fn from_clutter(
        name: impl Into<String>,
        clutter: CoveringClutter,
        grid: Option<(usize, usize)>,
        options: Options,
    ) -> Result<Self> {
        let forms = clutter.forms();
        Self::assemble(name.into(), forms, Some(clutter), grid, options, Distinctness::All)
    }

    pub fn from_forms(
        name: impl Into<String>,
        forms: FormSystem,
        grid: Option<(usize, usize)>,
        options: Options,
    ) -> Result<Self> {
        Self::assemble(name.into(), forms, None, grid, options, Distinctness::All)
    }

    fn assemble(
        name: String,
        forms: FormSystem,
        clutter: Option<CoveringClutter>,
        grid: Option<(usize, usize)>,
        options: Options,
        default: Distinctness,
    ) -> Result<Self> {
        let d = forms.d;
        let distinctness = options.distinctness.unwrap_or(default);
        let s = magic_subspace(&forms, options.mode, options.symmetry, grid)?;
        let polytope = build_polytope(s, options.mode.bound_mode())?;
        if polytope.is_degenerate() {
            return Err(Error::DegeneratePolytope);
        }
        let graph = match distinctness {
            Distinctness::All => ForbiddenGraph::complete(d),
            Distinctness::None => ForbiddenGraph::empty(d),
            Distinctness::Line => match &clutter {
                Some(c) => gamma_graph(c),
                None => {
                    let supports = forms.supports();
                    ForbiddenGraph::from_cliques(d, supports.iter().map(|s| s.as_slice()))
                }
            },
        };
        let arrangement = induce(&graph, polytope.subspace());
        if let Some(&(i, j)) = arrangement.dropped.first() {
            return Err(Error::NoStrongLabelling(i, j));
        }
        let constant_weight = forms.has_constant_weight(options.mode);
        Ok(InsideOutProblem {
            name,
            forms,
            clutter,
            grid,
            mode: options.mode,
            distinctness,
            symmetry: options.symmetry,
            polytope,
            graph,
            arrangement,
            constant_weight,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn forms(&self) -> &FormSystem {
        &self.forms
    }

    pub fn clutter(&self) -> Option<&CoveringClutter> {
        self.clutter.as_ref()
    }

    pub fn grid(&self) -> Option<(usize, usize)> {
        self.grid
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn distinctness(&self) -> Distinctness {
        self.distinctness
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn subspace(&self) -> &AffineSubspace {
        self.polytope.subspace()
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn graph(&self) -> &ForbiddenGraph {
        &self.graph
    }

    pub fn arrangement(&self) -> &InducedArrangement {
        &self.arrangement
    }

    /// False when the weights rule out the Möbius formulas.
    pub fn constant_weight(&self) -> bool {
        self.constant_weight
    }

    /// `dim s`, the degree of the counting quasipolynomials.
    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// `p(s)`.
    pub fn period(&self) -> u64 {
        self.subspace().period().expect("problem subspaces are nonempty")
    }

    pub fn point_count(&self) -> usize {
        self.forms.d
    }

    /// The same problem with a different forbidden graph regime.
    pub fn with_distinctness(&self, distinctness: Distinctness) -> Result<Self> {
        Self::assemble(
            self.name.clone(),
            self.forms.clone(),
            self.clutter.clone(),
            self.grid,
            Options {
                mode: self.mode,
                distinctness: Some(distinctness),
                symmetry: self.symmetry,
            },
            distinctness,
        )
    }
}

/// Builds a built-in family.
pub fn builtin(family: Builtin, options: Options) -> Result<InsideOutProblem> {
    let options = Options {
        distinctness: Some(options.distinctness.unwrap_or(family.default_distinctness())),
        ..options
    };
    InsideOutProblem::from_clutter(family.to_string(), family.clutter(), Some(family.grid()), options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magic3_cubical_shape() {
        let p = builtin(Builtin::Magic(3), Options::cubical()).unwrap();
        assert_eq!(p.point_count(), 9);
        assert_eq!(p.dim(), 3);
        assert!(p.graph().is_complete());
        assert_eq!(p.period(), 1);
        assert!(p.constant_weight());
    }

    #[test]
    fn magic3_affine_period_three() {
        let p = builtin(Builtin::Magic(3), Options::affine()).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.period(), 3);
    }

    #[test]
    fn semimagic3_dim_five() {
        assert_eq!(builtin(Builtin::Semimagic(3), Options::cubical()).unwrap().dim(), 5);
    }

    #[test]
    fn rectangle_graph() {
        let p = builtin(Builtin::MagilatinRectangle(2, 3), Options::cubical()).unwrap();
        assert_eq!(p.point_count(), 6);
        assert_eq!(p.dim(), 3);
        assert_eq!(p.graph().edges().len(), 9);
        assert!(p.arrangement().dropped.is_empty());
        // x_{1j} - x_{1k} = x_{2k} - x_{2j} on s, so row edges pair up
        assert_eq!(p.arrangement().hyperplanes.len(), 6);
        assert!(p.arrangement().hyperplanes.iter().filter(|h| h.edges.len() == 2).count() == 3);
    }

    #[test]
    fn semimagic2_forces_diagonals() {
        let c = Builtin::Semimagic(2).clutter();
        let s = magic_subspace(&c.forms(), Mode::Cubical, Symmetry::None, Some((2, 2))).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.forces_equal(0, 3));
        assert!(s.forces_equal(1, 2));
        assert!(!s.forces_equal(0, 1));
        assert_eq!(
            builtin(Builtin::Semimagic(2), Options::cubical()).unwrap_err(),
            Error::NoStrongLabelling(0, 3)
        );
    }

    #[test]
    fn symmetry_contains_half_ones() {
        let p = builtin(Builtin::Magic(3), Options::cubical().symmetric(Symmetry::Cubical)).unwrap();
        let half = vec![ratio(1, 2); 9];
        assert!(p.subspace().contains(&half));
        assert_eq!(p.period(), 2);
        let q = builtin(Builtin::Magic(3), Options::affine().symmetric(Symmetry::Affine)).unwrap();
        assert!(q.subspace().contains(&vec![ratio(1, 3); 9]));
    }

    #[test]
    fn gamma_examples() {
        let c = CoveringClutter::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(gamma_graph(&c).is_complete());
        let sq = gamma_graph(&Builtin::MagilatinSquare(2).clutter());
        assert_eq!(sq.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn pandiagonal_lines_dedupe() {
        assert_eq!(Builtin::Pandiagonal(4).clutter().lines().len(), 16);
        assert_eq!(Builtin::Pandiagonal(1).clutter().lines().len(), 1);
        assert_eq!(Builtin::Magic(1).clutter().lines().len(), 1);
    }

    #[test]
    fn clutter_validation() {
        assert!(CoveringClutter::new(2, vec![vec![]]).is_err());
        assert!(CoveringClutter::new(3, vec![vec![0, 1], vec![0]]).is_err());
        assert!(CoveringClutter::new(3, vec![vec![0, 1]]).is_err());
        assert!(CoveringClutter::new(2, vec![vec![0, 2]]).is_err());
        assert!(CoveringClutter::with_classes(2, vec![vec![vec![0, 1]], vec![vec![0], vec![1]]]).is_ok());
    }

    #[test]
    fn builtin_names() {
        for b in [Builtin::Magic(3), Builtin::MagilatinRectangle(2, 3)] {
            assert_eq!(b.to_string().parse::<Builtin>().unwrap(), b);
        }
        assert_eq!("magilatin_rectangle:2x3".parse::<Builtin>().unwrap(), Builtin::MagilatinRectangle(2, 3));
        assert!("magic(0)".parse::<Builtin>().is_err());
        assert!("cube(3)".parse::<Builtin>().is_err());
    }

    #[test]
    fn unequal_weights_flagged() {
        let f = FormSystem::new(2, vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]], vec![0, 0], vec![rat(1), rat(1)])
            .unwrap();
        assert!(!f.has_constant_weight(Mode::Affine));
        let p = InsideOutProblem::from_forms("forms", f, None, Options::affine().distinct(Distinctness::None)).unwrap_err();
        // x1 = 1 and x1 + x2 = 1 put the polytope on x2 = 0
        assert_eq!(p, Error::DegeneratePolytope);
    }
}
