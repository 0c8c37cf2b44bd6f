//! Monomials, monomial ideals and monomial primes over a fixed ambient ring.
//!
//! Every [`MonomialIdeal`] is kept in canonical form: its generators are
//! pairwise non-dividing and sorted by descending graded lexicographic order.
//! Two ideals are therefore equal exactly when their generator lists are.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::AlgebraError;

/// Largest exponent accepted from user input.
pub const MAX_EXPONENT: u32 = 1 << 31;

/// Upper bound on the number of variables; primes and free-variable sets are bitmasks.
pub const MAX_VARS: usize = 32;

/// The polynomial ring the monomials live in, described by its variable names.
#[derive(Clone, Debug)]
pub struct Ambient {
    names: Arc<[String]>,
}

impl Ambient {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        if names.is_empty() {
            return Err(AlgebraError::InvalidAmbient("at least one variable is required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(AlgebraError::InvalidAmbient(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || name == "intersect" {
                return Err(AlgebraError::InvalidAmbient(format!("invalid variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(AlgebraError::InvalidAmbient(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// `K[x, y, z, w]`.
    pub fn xyzw() -> Self {
        Self::new(&["x", "y", "z", "w"]).expect("default names are valid")
    }

    /// Parses a comma separated list such as `a,b,c`.
    pub fn from_list(list: &str) -> Result<Self, AlgebraError> {
        let names: Vec<&str> = list.split(',').collect();
        Self::new(&names)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.n())
    }

    pub fn var(&self, var: usize) -> Monomial {
        Monomial::var(self.n(), var)
    }

    pub(crate) fn check_same(&self, other: &Ambient) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch)
        }
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ambient {}

impl Default for Ambient {
    fn default() -> Self {
        Self::xyzw()
    }
}

/// An exponent vector. The ambient ring is not stored; operations between
/// monomials of different lengths panic, and the checked entry point
/// [`monomial_ops`] reports the mismatch as an error instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, var: usize) -> Self {
        let mut e = vec![0; n];
        e[var] = 1;
        Self(e)
    }

    /// `x_var^exp`.
    pub fn pure_power(n: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; n];
        e[var] = exp;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bitmask of the variables occurring in the monomial.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// `Some(var)` when the monomial is `x_var^a` with `a >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let s = self.support();
        (s.count_ones() == 1).then(|| s.trailing_zeros() as usize)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.n(), other.n(), "monomials from different ambients");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "monomials from different ambients");
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "monomials from different ambients");
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "monomials from different ambients");
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / gcd(self, other)`: the part of `self` not covered by `other`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "monomials from different ambients");
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.saturating_sub(b)).collect())
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.quotient_by_gcd(other))
    }

    /// The squarefree monomial with the same support.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| u32::from(e > 0)).collect())
    }

    /// Componentwise `min(self, cap)`.
    pub fn capped(&self, cap: &[u32]) -> Monomial {
        Monomial(self.0.iter().zip(cap).map(|(&a, &c)| a.min(c)).collect())
    }

    /// Graded lexicographic comparison with `x_0 > x_1 > ...`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn display<'a>(&'a self, ambient: &'a Ambient) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, ambient }
    }

    pub fn to_string_in(&self, ambient: &Ambient) -> String {
        self.display(ambient).to_string()
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ambient: &'a Ambient,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ambient.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Result of [`monomial_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOps {
    pub divides: bool,
    pub lcm: Monomial,
    pub gcd: Monomial,
    /// `m1 / gcd(m1, m2)`
    pub quotient: Monomial,
}

/// Checked bundle of the elementary monomial operations.
pub fn monomial_ops(m1: &Monomial, m2: &Monomial) -> Result<MonomialOps, AlgebraError> {
    if m1.n() != m2.n() {
        return Err(AlgebraError::AmbientMismatch);
    }
    Ok(MonomialOps {
        divides: m1.divides(m2),
        lcm: m1.lcm(m2),
        gcd: m1.gcd(m2),
        quotient: m1.quotient_by_gcd(m2),
    })
}

/// A prime generated by a non-empty set of variables, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialPrime {
    vars: u32,
}

impl MonomialPrime {
    pub fn new(vars: u32) -> Result<Self, AlgebraError> {
        if vars == 0 {
            return Err(AlgebraError::EmptyPrime);
        }
        Ok(Self { vars })
    }

    pub fn from_vars(vars: &[usize]) -> Result<Self, AlgebraError> {
        Self::new(vars.iter().fold(0u32, |acc, &v| acc | (1 << v)))
    }

    pub fn mask(&self) -> u32 {
        self.vars
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&i| self.contains_var(i)).collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        var < MAX_VARS && self.vars & (1 << var) != 0
    }

    pub fn height(&self) -> usize {
        self.vars.count_ones() as usize
    }

    /// Krull dimension of `S / P` in an ambient with `n` variables.
    pub fn dim(&self, n: usize) -> usize {
        n - self.height()
    }

    pub fn is_subset_of(&self, other: &MonomialPrime) -> bool {
        self.vars & !other.vars == 0
    }

    pub fn to_ideal(&self, ambient: &Ambient) -> MonomialIdeal {
        let gens = self.vars().into_iter().map(|v| ambient.var(v)).collect();
        MonomialIdeal::from_gens(ambient.clone(), gens)
    }

    pub fn names(&self, ambient: &Ambient) -> Vec<String> {
        self.vars().into_iter().map(|v| ambient.name(v).to_string()).collect()
    }

    pub fn to_string_in(&self, ambient: &Ambient) -> String {
        format!("({})", self.names(ambient).join(","))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Height first, then variable sets in lexicographic order of their sorted indices.
impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.vars().cmp(&other.vars()))
    }
}

/// A monomial ideal in canonical minimal form.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    ambient: Ambient,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl Hash for MonomialIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

/// Removes redundant generators and sorts the rest canonically.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // ascending degree: a divisor is always seen before its multiples
    gens.sort_by(|a, b| a.grlex_cmp(b));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.grlex_cmp(a));
    kept
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn from_gens(ambient: Ambient, gens: Vec<Monomial>) -> Self {
        for g in &gens {
            assert_eq!(g.n(), ambient.n(), "generator from a different ambient");
        }
        Self { ambient, gens: minimalize(gens) }
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self { ambient, gens: Vec::new() }
    }

    pub fn unit(ambient: Ambient) -> Self {
        let one = ambient.one();
        Self { ambient, gens: vec![one] }
    }

    pub fn principal(ambient: Ambient, u: Monomial) -> Self {
        Self::from_gens(ambient, vec![u])
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// `m ∈ I`. Panics if `m` has the wrong number of variables.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Checked membership.
    pub fn is_member(&self, m: &Monomial) -> Result<bool, AlgebraError> {
        if m.n() != self.n() {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(self.contains(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Ideal equality, checked by mutual generator membership.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool, AlgebraError> {
        self.ambient.check_same(&other.ambient)?;
        Ok(self.is_subset_of(other) && other.is_subset_of(self))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.ambient.check_same(&other.ambient)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_gens(self.ambient.clone(), gens))
    }

    /// `I + (u)`.
    pub fn add_monomial(&self, u: &Monomial) -> MonomialIdeal {
        if self.contains(u) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(u.clone());
        Self::from_gens(self.ambient.clone(), gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.ambient.check_same(&other.ambient)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(Self::from_gens(self.ambient.clone(), gens))
    }

    /// Intersection of a non-empty family; the empty family gives the unit ideal.
    pub fn intersect_all<'a, I>(ambient: &Ambient, ideals: I) -> Result<MonomialIdeal, AlgebraError>
    where
        I: IntoIterator<Item = &'a MonomialIdeal>,
    {
        let mut acc = MonomialIdeal::unit(ambient.clone());
        for ideal in ideals {
            acc = acc.intersect(ideal)?;
        }
        Ok(acc)
    }

    /// `(I : u)`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal, AlgebraError> {
        if u.n() != self.n() {
            return Err(AlgebraError::AmbientMismatch);
        }
        let gens = self.gens.iter().map(|g| g.quotient_by_gcd(u)).collect();
        Ok(Self::from_gens(self.ambient.clone(), gens))
    }

    /// `(I : J)` for a monomial ideal `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.ambient.check_same(&other.ambient)?;
        let parts: Vec<MonomialIdeal> =
            other.gens.iter().map(|g| self.colon(g)).collect::<Result<_, _>>()?;
        MonomialIdeal::intersect_all(&self.ambient, &parts)
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self.gens.iter().map(Monomial::radical).collect();
        Self::from_gens(self.ambient.clone(), gens)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exponents().iter().all(|&e| e <= 1))
    }

    /// Componentwise lcm of the generators.
    pub fn lcm_of_gens(&self) -> Monomial {
        self.gens
            .iter()
            .fold(self.ambient.one(), |acc, g| acc.lcm(g))
    }

    /// Componentwise maximum exponent over the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        self.lcm_of_gens().exponents().to_vec()
    }

    /// Whether the ideal is generated by variables.
    pub fn as_prime(&self) -> Option<MonomialPrime> {
        if self.gens.is_empty() || !self.gens.iter().all(|g| g.degree() == 1) {
            return None;
        }
        let mask = self.gens.iter().fold(0, |acc, g| acc | g.support());
        MonomialPrime::new(mask).ok()
    }

    /// Applies a variable permutation: variable `i` is sent to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| permute_monomial(g, perm)).collect();
        Self::from_gens(self.ambient.clone(), gens)
    }

    /// Generators rendered in the ambient's variable names.
    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string_in(&self.ambient)).collect()
    }
}

/// Sends variable `i` of `m` to variable `perm[i]`.
pub fn permute_monomial(m: &Monomial, perm: &[usize]) -> Monomial {
    let mut e = vec![0; m.n()];
    for (i, &a) in m.exponents().iter().enumerate() {
        e[perm[i]] = a;
    }
    Monomial::new(e)
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        write!(f, "({})", self.gen_strings().join(", "))
    }
}

/// Every monomial with `0 <= e_i <= bound[i]`, in lexicographic order of exponents.
pub fn box_monomials(bound: &[u32]) -> impl Iterator<Item = Monomial> + '_ {
    let n = bound.len();
    let total: usize = bound.iter().map(|&b| b as usize + 1).product();
    (0..total).map(move |mut idx| {
        let mut e = vec![0u32; n];
        for i in (0..n).rev() {
            let width = bound[i] as usize + 1;
            e[i] = (idx % width) as u32;
            idx /= width;
        }
        Monomial::new(e)
    })
}

/// Monomials of total degree `t` in `n` variables.
pub fn monomials_of_degree(n: usize, t: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    rec(n, 0, t, &mut cur, &mut out);
    out
}
