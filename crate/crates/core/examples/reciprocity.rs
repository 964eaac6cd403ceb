//! Open counts at `-t` against closed counts with multiplicity at `t`.

use insideout::counting::Counter;
use insideout::quasipoly::fit;
use insideout::{builtin, Budget, Builtin, Options, Rational, Regime};

fn main() -> insideout::Result<()> {
    let p = builtin(Builtin::MagilatinRectangle(2, 3), Options::cubical())?;
    let mut counter = Counter::new(&p, Budget::default())?;
    let open = counter.series(&[Regime::OpenStrong], 1..=32)?.remove(0);
    let q = fit(&open, p.dim(), 4, 1)?.quasipolynomial;
    let closed = counter.series(&[Regime::ClosedMultiplicity], 0..=8)?.remove(0);
    let sign = Rational::from_integer(if p.dim() % 2 == 0 { 1 } else { -1 }.into());
    for t in 0..=8 {
        let lhs = &sign * q.evaluate(-(t as i64));
        println!("t = {t}: (-1)^d q(-t) = {lhs:>4}, closed = {:>4}", closed.get(t).unwrap());
    }
    Ok(())
}
