//! Period-one expansions `[t/3^h]` in ℚ(√10) from `t² - 10u² = -4·3^{2h}`.

use num_bigint::BigInt;
use ruban::pure_periodic::pell_period1;
use ruban::Prime;

fn main() -> ruban::Result<()> {
    let l = Prime::new(3)?;
    let d = BigInt::from(10);
    for level in pell_period1(&d, &l, 6, &BigInt::from(1))? {
        if level.solutions.is_empty() {
            println!("h={}: none", level.h);
        }
        for s in &level.solutions {
            let sign = if s.positive_under_plus() { "+" } else { "-" };
            println!("h={}: {} = [{}], positive under {sign}sqrt(10)", level.h, s.formula(&d), s.quotient);
        }
    }
    Ok(())
}
