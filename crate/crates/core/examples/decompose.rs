//! Irreducible and primary decomposition, associated primes.
//!
//! cargo run --example decompose -- "(x^2, x*y, y^3*z)"

use prettyclean::decomposition::{ass_primes, irreducible_decomposition, primary_components, prime_height_dim};
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    let text = std::env::args().nth(1).unwrap_or_else(|| "(x^2*z, y*z, x^2*w, x*y*w)".into());
    let i = parse_ideal(&text, &amb)?;
    println!("I = {i}");
    println!("irreducible components:");
    for c in irreducible_decomposition(&i)? {
        println!("  {}", c.to_ideal(&amb));
    }
    println!("primary components:");
    for c in primary_components(&i)? {
        println!("  {}  (radical {})", c.ideal, c.radical.to_string_in(&amb));
    }
    for p in ass_primes(&i)? {
        let hd = prime_height_dim(&p, amb.n());
        println!("associated prime {} height {} dim {}", p.to_string_in(&amb), hd.height, hd.dim);
    }
    Ok(())
}
