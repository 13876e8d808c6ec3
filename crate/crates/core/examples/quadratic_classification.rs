//! Periodic and aperiodic surds in ℚ_3 with the step bound used.

use ruban::quadratic_cf::{classify_quadratic, n_alpha, ClassifyOptions, QuadraticOutcome};
use ruban::{Prime, QuadraticSurd};

fn main() -> ruban::Result<()> {
    let l = Prime::new(3)?;
    let surds = [
        QuadraticSurd::sqrt(37, &l, 1)?,
        QuadraticSurd::new(37, 1, 6, 0, &l, 1)?,
        QuadraticSurd::with_coefficient(13, 2, -1, 3, 0, &l, 1)?,
        QuadraticSurd::new(13, 2, 12, 0, &l, 1)?,
    ];
    for x in &surds {
        let c = classify_quadratic(x, ClassifyOptions::default())?;
        let improved = n_alpha(x, true)?;
        print!("{x}: N = {}, improved {improved}, {} steps: ", c.bound_used, c.steps_used);
        match c.outcome {
            QuadraticOutcome::Periodic { preperiod, period } => {
                println!("preperiod {} terms, period {:?}", preperiod.len(), period.iter().map(|a| a.to_string()).collect::<Vec<_>>())
            }
            QuadraticOutcome::Aperiodic { witness_index, witness } => {
                println!("aperiodic, both embeddings of {witness} negative at step {witness_index}")
            }
            QuadraticOutcome::NoRealEmbedding => println!("no real embedding"),
        }
    }
    Ok(())
}
