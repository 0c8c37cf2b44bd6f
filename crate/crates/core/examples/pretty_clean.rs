//! Pretty clean filtrations of sequentially Cohen-Macaulay ideals.
//!
//! cargo run --example pretty_clean -- "(x^2, x*y)"

use prettyclean::construction::build_pretty_clean;
use prettyclean::filtration::is_scm;
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(x*y^2*w, x^2*y, x*y*z, x*w^2)".into());
    let i = parse_ideal(&text, &amb)?;
    println!("I = {i}, sequentially Cohen-Macaulay: {}", is_scm(&i)?);
    match build_pretty_clean(&i) {
        Ok(pf) => {
            for (k, s) in pf.steps.iter().enumerate() {
                println!(
                    "  step {k}: + {} prime {} (dim {}, shift {})",
                    s.u.to_string_in(&amb),
                    s.prime.to_string_in(&amb),
                    s.prime.dim(amb.n()),
                    s.shift()
                );
            }
            let c = pf.classify()?;
            println!("clean {} pretty clean {}", c.clean, c.pretty_clean);
        }
        Err(e) => println!("no pretty clean filtration: {e}"),
    }
    Ok(())
}
