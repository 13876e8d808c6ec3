//! Runs every bound checker on a rational and a surd expansion.

use ruban::bounds::audit;
use ruban::interval::DEFAULT_BITS;
use ruban::quadratic_cf::{expand_surd, expand_surd_raw};
use ruban::rational_cf::expand_rational_steps;
use ruban::{LRational, Prime, QuadraticSurd};

fn main() -> ruban::Result<()> {
    let l = Prime::new(5)?;
    let x = LRational::new(123, 47, &l)?;
    println!("{x} in Q_5: {:?}", audit(&expand_rational_steps(&x, 20), false, DEFAULT_BITS));

    let l = Prime::new(3)?;
    let s = QuadraticSurd::new(13, 2, 12, 0, &l, 1)?;
    println!("{s} raw: {:?}", audit(&expand_surd_raw(&s, 20), true, DEFAULT_BITS));
    println!("{s} stripped: {:?}", audit(&expand_surd(&s, 20), false, DEFAULT_BITS));
    Ok(())
}
