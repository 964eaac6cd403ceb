//! Magic squares with fixed magic sum `t`: zero unless `3 | t`, period 18.

use insideout::counting::Counter;
use insideout::exact::format_rational;
use insideout::quasipoly::fit;
use insideout::{builtin, Budget, Builtin, Options, Regime};

fn main() -> insideout::Result<()> {
    let p = builtin(Builtin::Magic(3), Options::affine())?;
    println!("dim s = {}, p(s) = {}", p.dim(), p.period());
    let series = Counter::new(&p, Budget::default())?.series(&[Regime::OpenStrong, Regime::WeakOpen], 1..=108)?;
    for t in (15..=30).step_by(3) {
        println!("magic sum {t:>2}: {:>3} distinct, {:>3} weak", series[0].get(t).unwrap(), series[1].get(t).unwrap());
    }
    let r = fit(&series[0], p.dim(), 18, p.period())?;
    for res in (0..18).step_by(3) {
        let c: Vec<String> = r.quasipolynomial.constituents[res].iter().map(format_rational).collect();
        println!("t ≡ {res:>2} (mod 18): c0..c2 = {}", c.join(", "));
    }
    Ok(())
}
