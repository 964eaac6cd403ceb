//! Counts 3×3 magic squares with distinct entries in `1..t-1` and fits the
//! period-12 quasipolynomial.

use insideout::arrangement::inside_out_denominator;
use insideout::counting::Counter;
use insideout::exact::format_rational;
use insideout::quasipoly::fit;
use insideout::{builtin, Budget, Builtin, Options, Regime};

fn main() -> insideout::Result<()> {
    let budget = Budget::default();
    let p = builtin(Builtin::Magic(3), Options::cubical())?;
    let bound: u64 = inside_out_denominator(p.polytope(), p.arrangement(), &budget)?
        .try_into()
        .expect("small denominator");
    let t_max = 2 * bound * (p.dim() as u64 + 1);
    let series = Counter::new(&p, budget)?.series(&[Regime::OpenStrong], 1..=t_max)?.remove(0);
    for t in 9..=14 {
        println!("t = {t:>2}: {}", series.get(t).unwrap());
    }
    let report = fit(&series, p.dim(), bound, 1)?;
    println!("period {} (bound {bound})", report.quasipolynomial.period);
    for (r, c) in report.quasipolynomial.constituents.iter().enumerate() {
        let cs: Vec<String> = c.iter().rev().map(format_rational).collect();
        println!("  t ≡ {r:>2}: [{}]", cs.join(", "));
    }
    Ok(())
}
