//! Clean filtrations of height-2 unmixed ideals: the condition-gated build,
//! the ungated split recursion and the generic search.

use prettyclean::construction::{attempt_codim2_clean, build_codim2_clean, generic_clean_search};
use prettyclean::decomposition::ass_primes;
use prettyclean::filtration::PrimeFiltration;
use prettyclean::{parse_ideal, Ambient, MonomialIdeal};

fn show(amb: &Ambient, label: &str, pf: &PrimeFiltration) {
    println!("{label}: S/{}", pf.base);
    for s in &pf.steps {
        println!("  + {} with prime {}", s.u.to_string_in(amb), s.prime.to_string_in(amb));
    }
    let c = pf.classify().expect("constructions are verified");
    println!("  verified {} clean {}", pf.verify().ok, c.clean);
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = Ambient::xyzw();
    let i = parse_ideal("intersect((x,y),(x,z),(z,w))", &amb)?;
    show(&amb, "gated build", &build_codim2_clean(&i)?);

    let j = parse_ideal("intersect((x^2,y),(x,z),(z,w))", &amb)?;
    println!("gated build of {j}: {}", build_codim2_clean(&j).unwrap_err());

    let k = parse_ideal("(x^3*w^2, x*y^2*z, x*y^2*w, x*y*w^2, y^3*z)", &amb)?;
    println!("gated build of {k}: {}", build_codim2_clean(&k).unwrap_err());
    show(&amb, "ungated split recursion", &attempt_codim2_clean(&k)?);

    let ass = ass_primes(&k)?;
    show(&amb, "generic search", &generic_clean_search(&k, &MonomialIdeal::unit(amb.clone()), Some(&ass))?);
    Ok(())
}
