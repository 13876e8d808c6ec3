//! ℓ-adic floors and digit expansions of a few rationals.

use ruban::padic::{digit_expansion, padic_floor, valuation};
use ruban::{LRational, Prime};

fn main() -> ruban::Result<()> {
    let l = Prime::new(3)?;
    for (p, q) in [(5, 6), (17, 11), (9, 2), (-1, 3)] {
        let x = LRational::new(p, q, &l)?;
        let v = valuation(&x)?;
        let digits = digit_expansion(&x, v, v + 8)?;
        println!("{x}: v = {v}, floor = {}, digits from 3^{v}: {digits:?}", padic_floor(&x));
    }
    Ok(())
}
