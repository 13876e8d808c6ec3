//! All purely periodic surds of ordinate 13 in ℚ_3, and of ordinate 73 in ℚ_2.

use num_bigint::BigInt;
use ruban::pure_periodic::determine_pure_periodic;
use ruban::Prime;

fn main() -> ruban::Result<()> {
    for (d, l, br) in [(13, 3, 1), (73, 2, 3)] {
        let p = Prime::new(l)?;
        let r = determine_pure_periodic(&BigInt::from(d), &p, &BigInt::from(br))?;
        println!("sqrt({d}) in Q_{l}: {} -> {} -> {}", r.candidates, r.filtered.len(), r.confirmed.len());
        for x in &r.confirmed {
            let period: Vec<String> = x.period.iter().map(|a| a.to_string()).collect();
            println!("  {}: [{}]", x.surd, period.join(", "));
        }
    }
    Ok(())
}
