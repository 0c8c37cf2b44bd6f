//! Multigraded Betti numbers, depth, Cohen-Macaulayness and the Hilbert function.
//!
//! cargo run --example depth -- "(x*z, x*w, y*z, y*w)"

use prettyclean::oracle::{betti_table, depth, dim, hilbert_function, is_cm};
use prettyclean::{parse_ideal, Ambient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    let text = std::env::args().nth(1).unwrap_or_else(|| "(x*z, x*w, y*z, y*w)".into());
    let i = parse_ideal(&text, &amb)?;
    let table = betti_table(&i);
    println!("S/I with I = {i}");
    for ((k, degree), rank) in &table.entries {
        println!("  beta_{k},{} = {rank}", degree.to_string_in(&amb));
    }
    let totals: Vec<u64> = (0..=table.projective_dimension()).map(|k| table.total(k)).collect();
    println!("total Betti numbers {totals:?}");
    println!("depth {} dim {} cm {}", depth(&i)?, dim(&i)?, is_cm(&i)?);
    println!("Hilbert function up to degree 8: {:?}", hilbert_function(&i, 8).values);
    Ok(())
}
