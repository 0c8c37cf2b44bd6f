//! Stanley decompositions read off pretty clean filtrations, with Stanley
//! depth compared against depth.

use prettyclean::construction::build_pretty_clean;
use prettyclean::stanley::{stanley_report, to_stanley, verify_stanley};
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    for text in ["(x*y)", "(x^2, x*y)", "(x*y^2*w, x^2*y, x*y*z, x*w^2)"] {
        let i = parse_ideal(text, &amb)?;
        let sd = to_stanley(&build_pretty_clean(&i)?)?;
        println!("S/{i} =");
        for s in &sd.spaces {
            let free: Vec<&str> = s.free_vars().into_iter().map(|v| amb.name(v)).collect();
            println!("  {} K[{}]", s.u.to_string_in(&amb), free.join(","));
        }
        let report = stanley_report(&i, &sd)?;
        println!(
            "  partition checked {} sdepth {} depth {} sdepth >= depth {}",
            verify_stanley(&sd, &sd.default_box()),
            report.sdepth,
            report.depth,
            report.stanley_ok
        );
    }
    Ok(())
}
