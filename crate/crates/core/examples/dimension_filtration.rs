//! The dimension filtration, the principal part D_2 = (u) and the
//! sequentially Cohen-Macaulay test.

use prettyclean::filtration::{dimension_filtration, dimension_two_hilbert_identity, is_scm, principal_part};
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    for text in ["(x^2, x*y)", "(x*y^2*w, x^2*y, x*y*z, x*w^2)", "(x^2*z, y*z, x^2*w, x*y*w)"] {
        let i = parse_ideal(text, &amb)?;
        println!("I = {i}");
        let df = dimension_filtration(&i)?;
        for k in -1..4isize {
            println!("  D_{k} = {}", df.level(k));
        }
        println!("  u = {}", principal_part(&i)?.to_string_in(&amb));
        println!("  Hilbert identity up to degree 8: {}", dimension_two_hilbert_identity(&i, 8)?);
        println!("  sequentially Cohen-Macaulay: {}", is_scm(&i)?);
    }
    Ok(())
}
