//! Expansions of rationals: finite ones, and periodic ones ending in `ℓ - 1/ℓ`.

use ruban::rational_cf::{bound_b1, classify_rational, expand_rational};
use ruban::{LRational, Prime};

fn main() -> ruban::Result<()> {
    let l = Prime::new(3)?;
    for (p, q) in [(17, 11), (5, 6), (-1, 3), (-22, 7)] {
        let x = LRational::new(p, q, &l)?;
        let e = expand_rational(&x)?;
        let c = classify_rational(&x)?;
        let show = |qs: &[ruban::PartialQuotient]| qs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
        println!(
            "{x}: {:?} decided at step {} (B1 = {}); [{}] then [{}]",
            c.outcome,
            c.decided_at,
            bound_b1(&x),
            show(e.quotients()),
            show(&e.period())
        );
    }
    Ok(())
}
