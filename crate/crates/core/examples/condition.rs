//! Configuration kinds of height-2 primes and the inclusion condition on
//! primary components, compared with the Betti oracle.

use prettyclean::construction::analyze_codim2;
use prettyclean::oracle::is_cm;
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    let cases = [
        "intersect((x^2,y),(x,z),(z,w))",
        "intersect((x,y),(x,z),(z,w))",
        "intersect((x,y),(z,w))",
        "intersect((x^2,y),(x,z^3),(y^2,z))",
        // Cohen-Macaulay although no clause of its condition holds
        "(x^3*w^2, x*y^2*z, x*y^2*w, x*y*w^2, y^3*z)",
    ];
    for text in cases {
        let i = parse_ideal(text, &amb)?;
        let (config, report) = analyze_codim2(&i)?;
        println!("{text}");
        println!("  kind {} relabelling {:?}", config.kind, config.perm_names(&amb));
        for c in &report.clauses {
            println!("  group {}: {} {}", c.group, c.inclusion, c.holds);
        }
        println!("  condition {} cm {}", report.satisfied, is_cm(&i)?);
    }
    Ok(())
}
