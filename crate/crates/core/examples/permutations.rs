//! Which orderings of the cells are realized by magic squares, versus the
//! orderings that make the lines an antichain.

use insideout::permutations::{conjecture_report, conjecture_report_with_ties};
use insideout::{builtin, Budget, Builtin, Options};

fn grid(rank: &[usize]) -> String {
    rank.chunks(3)
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn main() -> insideout::Result<()> {
    let budget = Budget::default();
    let p = builtin(Builtin::Magic(3), Options::cubical())?;
    let r = conjecture_report(&p, &budget)?;
    println!("magic(3): {} realizable, {} antichain, agreement {}", r.realizable.len(), r.antichain.len(), r.agreement);
    for rank in r.realizable.iter().take(4) {
        println!("  {}", grid(rank));
    }
    // experimental: let positions 2, 4, 5, 7 be ties
    let tied = conjecture_report_with_ties(&p, &[2, 4, 5, 7], &budget)?;
    println!("with ties at 2,4,5,7: {} realizable, {} disagreements", tied.realizable.len(), tied.counterexamples.len());

    let a = builtin(Builtin::Magic(3), Options::affine())?;
    let [open, closed, sub] = conjecture_report(&a, &budget)?.affine_targets.unwrap();
    println!("affine magic(3): {open} in P°, {closed} in P, {sub} in s");
    Ok(())
}
