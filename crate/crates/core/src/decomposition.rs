//! Irredundant irreducible decomposition, primary components and associated primes.
//!
//! Decomposition proceeds by generator splitting: if `m = x_i^a * m'` is a
//! minimal generator that is not a pure power, then
//! `I = (I + x_i^a) ∩ (I + m')`. Leaves are generated by pure powers and are
//! irreducible. Redundant leaves are removed greedily in canonical order.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::monomial::{Ambient, Monomial, MonomialIdeal, MonomialPrime};

/// `(x_i^{a_i} : i ∈ A)` with every `a_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    /// Exponent per variable, zero for variables outside `A`.
    exponents: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        debug_assert!(exponents.iter().any(|&e| e > 0));
        Self { exponents }
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    /// `(var, exponent)` pairs of the variables that occur.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn radical(&self) -> MonomialPrime {
        let mask = self.entries().fold(0, |acc, (i, _)| acc | (1 << i));
        MonomialPrime::new(mask).expect("irreducible components are non-empty")
    }

    pub fn to_ideal(&self, ambient: &Ambient) -> MonomialIdeal {
        let n = ambient.n();
        let gens = self
            .entries()
            .map(|(i, e)| Monomial::pure_power(n, i, e))
            .collect();
        MonomialIdeal::from_gens(ambient.clone(), gens)
    }

    /// Whether `self ⊇ other` as ideals.
    pub fn contains(&self, other: &IrreducibleComponent) -> bool {
        // (x_i^{a_i} : i∈A) ⊇ (x_j^{b_j} : j∈B) iff B ⊆ A and a_j <= b_j on B
        other
            .entries()
            .all(|(j, b)| self.exponents[j] > 0 && self.exponents[j] <= b)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.radical()
            .cmp(&other.radical())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// Intersection of the irreducible components sharing one radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub ideal: MonomialIdeal,
    pub radical: MonomialPrime,
}

thread_local! {
    static SPLIT_CACHE: RefCell<HashMap<MonomialIdeal, Rc<Vec<IrreducibleComponent>>>> =
        RefCell::new(HashMap::new());
}

const SPLIT_CACHE_LIMIT: usize = 200_000;

fn check_proper_nonzero(i: &MonomialIdeal) -> Result<(), AlgebraError> {
    if i.is_zero() || i.is_unit() {
        return Err(AlgebraError::DegenerateIdeal(i.to_string()));
    }
    Ok(())
}

fn split_leaves(i: &MonomialIdeal) -> Rc<Vec<IrreducibleComponent>> {
    if let Some(hit) = SPLIT_CACHE.with(|c| c.borrow().get(i).cloned()) {
        return hit;
    }
    let n = i.n();
    let mixed = i.gens().iter().find(|g| g.pure_power_var().is_none());
    let leaves = match mixed {
        None => {
            let mut e = vec![0; n];
            for g in i.gens() {
                let v = g.pure_power_var().expect("all generators are pure powers");
                e[v] = g.exp(v);
            }
            vec![IrreducibleComponent::from_exponents(e)]
        }
        Some(m) => {
            let var = m.exponents().iter().position(|&e| e > 0).expect("non-unit generator");
            let power = Monomial::pure_power(n, var, m.exp(var));
            let rest = m.quotient_by_gcd(&power);
            let mut out = Vec::new();
            for extra in [power, rest] {
                let bigger = i.add_monomial(&extra);
                out.extend(split_leaves(&bigger).iter().cloned());
            }
            out
        }
    };
    let leaves = Rc::new(leaves);
    SPLIT_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= SPLIT_CACHE_LIMIT {
            c.clear();
        }
        c.insert(i.clone(), leaves.clone());
    });
    leaves
}

/// Irredundant decomposition of `I` into irreducible monomial ideals.
///
/// Components are sorted by radical (height, then variables) and then by
/// exponent vector.
pub fn irreducible_decomposition(i: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>, AlgebraError> {
    check_proper_nonzero(i)?;
    let mut leaves: Vec<IrreducibleComponent> = split_leaves(i).as_ref().clone();
    leaves.sort_by(IrreducibleComponent::canonical_cmp);
    leaves.dedup();
    // An irreducible Q contains an intersection of irreducibles only if it
    // contains one of them, so redundancy reduces to pairwise containment.
    let mut kept: Vec<IrreducibleComponent> = Vec::with_capacity(leaves.len());
    for (idx, q) in leaves.iter().enumerate() {
        let redundant = leaves
            .iter()
            .enumerate()
            .any(|(j, other)| j != idx && q.contains(other) && (q != other));
        if !redundant {
            kept.push(q.clone());
        }
    }
    Ok(kept)
}

/// Primary components grouped by radical, in the order of [`MonomialPrime`].
pub fn primary_components(i: &MonomialIdeal) -> Result<Vec<PrimaryComponent>, AlgebraError> {
    let comps = irreducible_decomposition(i)?;
    let mut groups: BTreeMap<MonomialPrime, Vec<MonomialIdeal>> = BTreeMap::new();
    for q in &comps {
        groups.entry(q.radical()).or_default().push(q.to_ideal(i.ambient()));
    }
    groups
        .into_iter()
        .map(|(radical, parts)| {
            Ok(PrimaryComponent {
                ideal: MonomialIdeal::intersect_all(i.ambient(), &parts)?,
                radical,
            })
        })
        .collect()
}

pub fn ass_primes(i: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>, AlgebraError> {
    Ok(irreducible_decomposition(i)?.iter().map(IrreducibleComponent::radical).collect())
}

/// Minimal elements of a set of primes under inclusion.
pub fn minimal_primes(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset_of(p)))
        .copied()
        .collect()
}

/// Height and Krull dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightDim {
    pub height: usize,
    pub dim: usize,
}

/// `ht(I)` and `dim(S/I)`. The zero ideal has height 0 and dimension n.
pub fn height_dim(i: &MonomialIdeal) -> Result<HeightDim, AlgebraError> {
    if i.is_unit() {
        return Err(AlgebraError::DegenerateIdeal(i.to_string()));
    }
    let n = i.n();
    if i.is_zero() {
        return Ok(HeightDim { height: 0, dim: n });
    }
    let height = ass_primes(i)?
        .iter()
        .map(MonomialPrime::height)
        .min()
        .expect("proper non-zero ideals have associated primes");
    Ok(HeightDim { height, dim: n - height })
}

pub fn prime_height_dim(p: &MonomialPrime, n: usize) -> HeightDim {
    HeightDim { height: p.height(), dim: p.dim(n) }
}

/// JSON view: `{"irreducible":[{"x":2,"y":1}],"primary":[{"radical":["x","y"],"gens":["x^2","y"]}],"ass":[["x","y"]]}`.
pub fn decomposition_json(i: &MonomialIdeal) -> Result<serde_json::Value, AlgebraError> {
    let amb = i.ambient();
    let irreducible: Vec<serde_json::Map<String, serde_json::Value>> = irreducible_decomposition(i)?
        .iter()
        .map(|q| {
            q.entries()
                .map(|(v, e)| (amb.name(v).to_string(), serde_json::Value::from(e)))
                .collect()
        })
        .collect();
    let primary: Vec<serde_json::Value> = primary_components(i)?
        .iter()
        .map(|c| serde_json::json!({"radical": c.radical.names(amb), "gens": c.ideal.gen_strings()}))
        .collect();
    let ass: Vec<Vec<String>> = ass_primes(i)?.iter().map(|p| p.names(amb)).collect();
    Ok(serde_json::json!({"irreducible": irreducible, "primary": primary, "ass": ass}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn id(s: &str) -> MonomialIdeal {
        parse_ideal(s, &Ambient::xyzw()).unwrap()
    }

    fn comp_ideals(i: &MonomialIdeal) -> Vec<MonomialIdeal> {
        irreducible_decomposition(i)
            .unwrap()
            .iter()
            .map(|q| q.to_ideal(i.ambient()))
            .collect()
    }

    fn prime(s: &str) -> MonomialPrime {
        id(s).as_prime().unwrap()
    }

    #[test]
    fn splits_mixed_generator() {
        let i = id("(x^2, x*y, y^3)");
        let comps = comp_ideals(&i);
        assert_eq!(comps, vec![id("(x, y^3)"), id("(x^2, y)")]);
        assert_eq!(MonomialIdeal::intersect_all(i.ambient(), &comps).unwrap(), i);
    }

    #[test]
    fn worked_example_components() {
        let i = id("intersect((x^2,y),(x,z),(z,w))");
        let comps = comp_ideals(&i);
        assert_eq!(comps, vec![id("(x^2,y)"), id("(x,z)"), id("(z,w)")]);
        let radicals: Vec<_> = primary_components(&i).unwrap().iter().map(|c| c.radical).collect();
        assert_eq!(radicals, vec![prime("(x,y)"), prime("(x,z)"), prime("(z,w)")]);
        assert_eq!(height_dim(&i).unwrap(), HeightDim { height: 2, dim: 2 });
    }

    #[test]
    fn single_irreducible() {
        assert_eq!(comp_ideals(&id("(x^3)")), vec![id("(x^3)")]);
        assert_eq!(ass_primes(&id("(x^2,y^3)")).unwrap(), BTreeSet::from([prime("(x,y)")]));
    }

    #[test]
    fn primary_grouping() {
        let pc = primary_components(&id("(x^2, x*y, y^3)")).unwrap();
        assert_eq!(pc.len(), 1);
        assert_eq!(pc[0].radical, prime("(x,y)"));
        assert_eq!(pc[0].ideal, id("(x^2, x*y, y^3)"));
        let pc = primary_components(&id("(x*y)")).unwrap();
        assert_eq!(pc.iter().map(|c| c.ideal.clone()).collect::<Vec<_>>(), vec![id("(x)"), id("(y)")]);
    }

    #[test]
    fn mixed_height_ass() {
        // (xy) ∩ (z,w) = (xyz, xyw)
        let i = id("(x*y*z, x*y*w)");
        let ass = ass_primes(&i).unwrap();
        assert_eq!(ass, BTreeSet::from([prime("(x)"), prime("(y)"), prime("(z,w)")]));
        assert_eq!(height_dim(&i).unwrap().dim, 3);
    }

    #[test]
    fn embedded_component() {
        let i = id("intersect((x), (x^2, y, z, w))");
        let ass = ass_primes(&i).unwrap();
        assert_eq!(ass, BTreeSet::from([prime("(x)"), prime("(x,y,z,w)")]));
        assert_eq!(minimal_primes(&ass), BTreeSet::from([prime("(x)")]));
    }

    #[test]
    fn height_dim_of_primes() {
        assert_eq!(prime_height_dim(&prime("(x,y)"), 4), HeightDim { height: 2, dim: 2 });
        assert_eq!(height_dim(&id("(x,y,z,w)")).unwrap(), HeightDim { height: 4, dim: 0 });
        assert!(height_dim(&id("(1)")).is_err());
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(irreducible_decomposition(&id("(1)")).is_err());
        assert!(irreducible_decomposition(&id("(0)")).is_err());
    }

    #[test]
    fn json_shape() {
        let v = decomposition_json(&id("(x^2, y)")).unwrap();
        assert_eq!(v["irreducible"][0]["x"], 2);
        assert_eq!(v["primary"][0]["radical"], serde_json::json!(["x", "y"]));
        assert_eq!(v["ass"], serde_json::json!([["x", "y"]]));
    }
}
