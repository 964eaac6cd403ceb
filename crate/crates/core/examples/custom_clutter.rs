//! A clutter given by hand: perimeter magic triangles. Corners 1, 2, 3 and
//! side midpoints 4 (between 1 and 2), 5 (2 and 3), 6 (3 and 1); each side
//! sums to `t`.

use insideout::cli::{from_config, parse_document};
use insideout::counting::Counter;
use insideout::{Budget, Regime};

const TRIANGLE: &str = r#"{
  "name": "triangle",
  "explicit": {
    "d": 6,
    "line_classes": [[[1,4,2],[2,5,3],[3,6,1]]]
  },
  "mode": "affine",
  "distinctness": "all"
}"#;

fn main() -> insideout::Result<()> {
    let doc = parse_document(TRIANGLE)?;
    let p = from_config(&doc)?;
    println!(
        "{}: dim s = {}, p(s) = {}, {} hyperplanes",
        p.name(),
        p.dim(),
        p.period(),
        p.arrangement().hyperplanes.len()
    );
    let s = Counter::new(&p, Budget::default())?.series(&[Regime::OpenStrong, Regime::WeakOpen], 1..=15)?;
    for t in 1..=15 {
        println!("line sum {t:>2}: {:>4} distinct, {:>4} weak", s[0].get(t).unwrap(), s[1].get(t).unwrap());
    }
    Ok(())
}
