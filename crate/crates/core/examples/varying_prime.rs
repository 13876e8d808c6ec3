//! Roots of x² - 13 and the rational 5/6 across primes up to 60.

use num_bigint::BigInt;
use num_rational::BigRational;
use ruban::quadratic_cf::{family_nonperiodic_check, scan_primes_quadratic, ClassifyOptions};
use ruban::rational_cf::scan_primes_rational;
use ruban::Prime;

fn main() -> ruban::Result<()> {
    let (a, b, c) = (BigInt::from(1), BigInt::from(0), BigInt::from(-13));
    for row in scan_primes_quadratic(&a, &b, &c, 60, ClassifyOptions::default())? {
        let periodic = row.roots.iter().filter(|(_, o)| o.is_periodic()).count();
        println!("l={}: {} roots, {periodic} periodic, threshold {}", row.prime, row.roots.len(), row.threshold);
    }
    let scan = scan_primes_rational(&BigRational::new(5.into(), 6.into()), 60)?;
    println!("5/6: {}; contradictions: {}", scan.threshold, scan.contradictions().len());
    let l = Prime::new(5)?;
    println!("1 + 8*5 beyond (5+1)^2: {}", family_nonperiodic_check(&BigInt::from(8), 1, &l)?);
    Ok(())
}
