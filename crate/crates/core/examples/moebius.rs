//! The intersection poset of the induced arrangement and the Möbius
//! inversion that recovers the distinct count from weak counts on flats.

use insideout::arrangement::{intersection_poset, transversal};
use insideout::counting::Counter;
use insideout::{builtin, Budget, Builtin, Options, Regime};

fn main() -> insideout::Result<()> {
    let budget = Budget::default();
    let p = builtin(Builtin::Magic(3), Options::cubical())?;
    let poset = intersection_poset(p.graph(), p.polytope(), &budget)?;
    let mut by_dim = std::collections::BTreeMap::<usize, (usize, i64)>::new();
    for (f, mu) in poset.flats.iter().zip(&poset.moebius) {
        let e = by_dim.entry(f.dim()).or_default();
        e.0 += 1;
        e.1 += mu;
    }
    for (dim, (n, mu)) in by_dim.iter().rev() {
        println!("dim {dim}: {n:>3} flats, Σμ = {mu}");
    }
    println!("transversal: {}", transversal(p.graph(), p.polytope(), &budget)?);

    let mut counter = Counter::new(&p, budget)?;
    for t in [10, 12, 20] {
        let direct = counter.count(Regime::OpenStrong, t)?;
        let mobius = counter.count(Regime::MoebiusOpen, t)?;
        let closed = counter.count(Regime::MoebiusClosed, t)?;
        println!("t = {t}: direct {direct}, Möbius {mobius}, closed (with multiplicity) {closed}");
    }
    Ok(())
}
