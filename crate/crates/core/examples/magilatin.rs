//! Magilatin squares and rectangles: distinct entries only along lines,
//! equal line sums per class.

use insideout::arrangement::inside_out_denominator;
use insideout::counting::Counter;
use insideout::quasipoly::fit;
use insideout::{builtin, Budget, Builtin, Options, Regime};

fn main() -> insideout::Result<()> {
    let budget = Budget::default();
    for f in [Builtin::MagilatinSquare(2), Builtin::MagilatinSquare(3), Builtin::MagilatinRectangle(2, 3)] {
        let p = builtin(f, Options::cubical())?;
        let vertices = p.polytope().vertices(&budget)?;
        let den = inside_out_denominator(p.polytope(), p.arrangement(), &budget)?;
        println!(
            "{f}: d = {}, dim = {}, {} edges, {} hyperplanes, denominators {} / {den}",
            p.point_count(),
            p.dim(),
            p.graph().edges().len(),
            p.arrangement().hyperplanes.len(),
            vertices.denominator
        );
    }
    // entries in 1..n with equal line sums are exactly the latin squares
    let sq = builtin(Builtin::MagilatinSquare(3), Options::cubical())?;
    println!("latin squares of order 3: {}", Counter::new(&sq, budget)?.count(Regime::OpenStrong, 4)?);

    let rect = builtin(Builtin::MagilatinRectangle(2, 3), Options::cubical())?;
    let series = Counter::new(&rect, budget)?.series(&[Regime::OpenStrong], 1..=32)?.remove(0);
    let r = fit(&series, 3, 4, 1)?;
    println!("2x3 rectangle: period {}, q(t) at t = 8..=12: {:?}", r.quasipolynomial.period,
        (8..=12).map(|t| series.get(t).unwrap()).collect::<Vec<_>>());
    Ok(())
}
