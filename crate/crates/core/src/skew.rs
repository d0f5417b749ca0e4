//! Skew-morphisms of a finite group H: bijections rho of H fixing the
//! identity that satisfy rho(g*h) = rho(g) * rho^pi(g)(h) for some integer
//! power function pi.
//!
//! Every factorization G = H * <k> with <k> core-free yields one (k acts on
//! H by left translation followed by decomposition), and conversely the
//! brute-force enumerator recovers all of them for tiny H, which makes the
//! two routes checkable against each other.

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::group::{coset_action, PermGroup};
use crate::numth;
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use std::collections::HashMap;
use std::fmt;

/// Largest |H| accepted by [`skew_from_factorization`] without an explicit
/// bound: rho and pi are total functions on H, so H must be enumerated.
pub const DEFAULT_SKEW_BOUND: u64 = 1000;

/// Largest |H| accepted by [`brute_enumerate`]: the search walks all
/// (|H| - 1)! bijections fixing the identity.
pub const BRUTE_BOUND: u64 = 10;

/// A skew-morphism of the group generated by `elements`, stored as index
/// tables over the sorted element list.
#[derive(Clone, Debug)]
pub struct SkewMorphism {
    /// Elements of H sorted lexicographically by image table; index 0 is
    /// the identity.
    pub elements: Vec<Permutation>,
    /// rho as a permutation of indices into `elements`.
    pub rho: Vec<u32>,
    /// Power function values, one per element, each reduced mod the skew
    /// order.
    pub pi: Vec<u64>,
    /// Order of rho as a permutation of H.
    pub skew_order: u64,
    /// The complement generator this came from, when built from a
    /// factorization.
    pub source_k: Option<Permutation>,
}

/// Two skew-morphisms are equal when they are the same function with the
/// same power function on the same element set; the factorization that
/// produced each one is ignored.
impl PartialEq for SkewMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.rho == other.rho && self.pi == other.pi
    }
}

impl Eq for SkewMorphism {}

/// First pair where the defining identity fails, kept as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewWitness {
    pub g: Permutation,
    pub h: Permutation,
    pub reason: String,
}

impl fmt::Display for SkewWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom fails at g = {}, h = {}: {}", self.g, self.h, self.reason)
    }
}

impl SkewMorphism {
    pub fn h_order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// gcd(|H|, skew order) = 1.
    pub fn is_hall(&self) -> bool {
        numth::big(self.h_order())
            .gcd(&numth::big(self.skew_order.max(1)))
            .is_one()
    }

    /// pi is constantly 1, i.e. rho is an automorphism of H.
    pub fn is_trivial(&self) -> bool {
        let m = self.skew_order.max(1);
        self.pi.iter().all(|&e| e % m == 1 % m)
    }

    /// Looks up the image of one element of H under rho.
    pub fn rho_of(&self, h: &Permutation) -> Result<&Permutation> {
        let i = self.index_of(h)?;
        Ok(&self.elements[self.rho[i] as usize])
    }

    /// Looks up the power function at one element of H.
    pub fn pi_of(&self, h: &Permutation) -> Result<u64> {
        Ok(self.pi[self.index_of(h)?])
    }

    fn index_of(&self, h: &Permutation) -> Result<usize> {
        self.elements
            .binary_search(h)
            .map_err(|_| Error::NotFound("element is not in the skewed group".into()))
    }

    /// Exhaustive check of the defining identity over all |H|^2 pairs,
    /// together with the structural invariants (rho is a bijection fixing
    /// the identity, pi values are reduced mod the skew order).
    pub fn verify_axioms(&self) -> std::result::Result<(), SkewWitness> {
        let n = self.elements.len();
        let id = &self.elements[0];
        let witness = |i: usize, j: usize, reason: String| SkewWitness {
            g: self.elements[i].clone(),
            h: self.elements[j].clone(),
            reason,
        };
        if !id.is_identity() {
            return Err(witness(0, 0, "element list does not start at the identity".into()));
        }
        let mut seen = vec![false; n];
        for &r in &self.rho {
            let r = r as usize;
            if r >= n || seen[r] {
                return Err(witness(0, 0, "rho is not a bijection of H".into()));
            }
            seen[r] = true;
        }
        if self.rho[0] != 0 {
            return Err(witness(0, 0, "rho moves the identity".into()));
        }
        let m = index_perm_order(&self.rho);
        if m != self.skew_order.max(1) {
            return Err(witness(0, 0, format!("rho has order {}, not {}", m, self.skew_order)));
        }
        if self.pi[0] % m != 1 % m {
            return Err(witness(0, 0, "pi at the identity is not 1".into()));
        }
        if self.pi.iter().any(|&e| e >= m) {
            return Err(witness(0, 0, "pi value not reduced mod the skew order".into()));
        }
        let powers = index_perm_powers(&self.rho, m);
        let index: HashMap<&Permutation, usize> =
            self.elements.iter().zip(0..).collect();
        for (i, g) in self.elements.iter().enumerate() {
            let rho_g = &self.elements[self.rho[i] as usize];
            let power = &powers[(self.pi[i] % m) as usize];
            for (j, h) in self.elements.iter().enumerate() {
                let gh = g.compose(h);
                let left = match index.get(&gh) {
                    Some(&t) => self.rho[t] as usize,
                    None => {
                        return Err(witness(i, j, "product leaves the element set".into()))
                    }
                };
                let right = rho_g.compose(&self.elements[power[j] as usize]);
                if self.elements[left] != right {
                    return Err(witness(
                        i,
                        j,
                        format!(
                            "rho(g*h) = {} but rho(g)*rho^pi(g)(h) = {}",
                            self.elements[left], right
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn index_perm_order(rho: &[u32]) -> u64 {
    let mut order: u64 = 1;
    let mut seen = vec![false; rho.len()];
    for start in 0..rho.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = rho[at] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

fn index_perm_powers(rho: &[u32], m: u64) -> Vec<Vec<u32>> {
    let n = rho.len();
    let mut powers = Vec::with_capacity(m as usize);
    powers.push((0..n as u32).collect::<Vec<u32>>());
    for e in 1..m as usize {
        let prev = &powers[e - 1];
        powers.push((0..n).map(|i| rho[prev[i] as usize]).collect());
    }
    powers
}

/// The skew-morphism of H induced by the complement generator k of a
/// certified factorization G = H * <k>: for each h the product k*h
/// decomposes uniquely as rho(h) * k^pi(h).
///
/// Refuses complements with a nontrivial core (rho would collapse to a map
/// of order less than |k|, silently breaking the correspondence) and
/// groups H larger than the bound (rho is stored as a total table).
pub fn skew_from_factorization(f: &Factorization) -> Result<SkewMorphism> {
    skew_from_factorization_bounded(f, DEFAULT_SKEW_BOUND)
}

pub fn skew_from_factorization_bounded(f: &Factorization, bound: u64) -> Result<SkewMorphism> {
    if !f.is_core_free() {
        return Err(Error::NotCoreFree(
            "the complement <k> has a nontrivial core in G, so the induced map on H \
             would have order below |k|"
                .into(),
        ));
    }
    let elements = f.h().sorted_elements(bound)?;
    let index: HashMap<&Permutation, usize> = elements.iter().zip(0..).collect();
    let k = f.k();
    let mut rho = Vec::with_capacity(elements.len());
    let mut pi = Vec::with_capacity(elements.len());
    for h in &elements {
        let (image, j) = f.decompose(&k.compose(h))?;
        let t = *index
            .get(&image)
            .ok_or_else(|| Error::SelfCheck("decomposition left H".into()))?;
        rho.push(t as u32);
        pi.push(j);
    }
    let skew_order = index_perm_order(&rho);
    if skew_order != f.k_order() {
        // With a core-free complement, k^j is determined as a function on H
        // by its translation action, so rho must have full order.
        return Err(Error::SelfCheck(format!(
            "skew order {} differs from the complement order {}",
            skew_order,
            f.k_order()
        )));
    }
    for e in pi.iter_mut() {
        *e %= skew_order.max(1);
    }
    let s = SkewMorphism {
        elements,
        rho,
        pi,
        skew_order,
        source_k: Some(k.clone()),
    };
    if let Err(w) = s.verify_axioms() {
        return Err(Error::SelfCheck(format!("constructed skew-morphism is invalid: {}", w)));
    }
    Ok(s)
}

/// All skew-morphisms of H, found by walking every bijection of H fixing
/// the identity and solving for a power function. For each candidate and
/// each g the exponent in the defining identity is pinned down (mod the
/// candidate's order) by sweeping h over all of H, so a returned pair
/// (rho, pi) is already fully verified.
pub fn brute_enumerate(h: &PermGroup) -> Result<Vec<SkewMorphism>> {
    let elements = h.sorted_elements(BRUTE_BOUND)?;
    let n = elements.len();
    let index: HashMap<&Permutation, usize> = elements.iter().zip(0..).collect();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = index[&elements[i].compose(&elements[j])] as u32;
        }
    }
    let mut found = Vec::new();
    let mut rho: Vec<u32> = (0..n as u32).collect();
    loop {
        if let Some((pi, m)) = solve_power_function(&rho, &mul, n) {
            found.push(SkewMorphism {
                elements: elements.clone(),
                rho: rho.clone(),
                pi,
                skew_order: m,
                source_k: None,
            });
        }
        if !next_permutation(&mut rho[1..]) {
            break;
        }
    }
    found.sort_by(|a, b| a.rho.cmp(&b.rho).then_with(|| a.pi.cmp(&b.pi)));
    Ok(found)
}

/// For a fixed bijection rho (as an index table), finds the unique power
/// function making the identity hold, or None. The exponent at g is
/// determined mod ord(rho) because distinct powers of rho differ somewhere.
fn solve_power_function(rho: &[u32], mul: &[u32], n: usize) -> Option<(Vec<u64>, u64)> {
    let m = index_perm_order(rho);
    let powers = index_perm_powers(rho, m);
    let mut pi = Vec::with_capacity(n);
    for g in 0..n {
        let rho_g = rho[g] as usize;
        let e = (0..m).find(|&e| {
            let power = &powers[e as usize];
            (0..n).all(|b| {
                rho[mul[g * n + b] as usize] == mul[rho_g * n + power[b] as usize]
            })
        })?;
        pi.push(e);
    }
    Some((pi, m))
}

/// Advances the slice to its next lexicographic arrangement, returning
/// false once the last one has been visited.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Result of classifying a factorization against the two structural
/// shapes: either the complement becomes normal in the core quotient, or
/// the quotient is (close to) a product of known simple groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// G/N = <k-bar> : H-bar with N the core of H, the image of k normal,
    /// and the complement H-bar acting faithfully on it.
    One {
        core_order: BigUint,
        k_image_order: u64,
        complement_order: BigUint,
    },
    /// G/N has a socle that is a product of nonabelian simple groups, each
    /// matching a known Hall-factorizable profile with pairwise coprime
    /// complement orders; abelian minimal normal subgroups (the cyclic
    /// part) all lie inside the image of <k>.
    Two {
        core_order: BigUint,
        /// One entry per nonabelian simple factor: (descriptor name, order,
        /// complement order e).
        factors: Vec<(String, BigUint, BigUint)>,
        /// Product of the abelian minimal normal subgroup orders.
        k0_order: BigUint,
        socle_order: BigUint,
        /// Order of the quotient of G/N by the socle.
        outer_order: BigUint,
    },
}

/// Index bound for the coset action on [G : H].
pub const SHAPE_INDEX_BOUND: u64 = 1_000_000;

/// Element bound for the socle analysis of the core quotient: the shape-2
/// branch enumerates the quotient's elements of prime order and computes
/// all of their normal closures, which is exact but only sensible for
/// small quotients.
pub const SHAPE_SOCLE_BOUND: u64 = 5000;

pub fn shape_check(f: &Factorization) -> Result<Shape> {
    shape_check_bounded(f, SHAPE_INDEX_BOUND, SHAPE_SOCLE_BOUND)
}

pub fn shape_check_bounded(
    f: &Factorization,
    index_bound: u64,
    socle_bound: u64,
) -> Result<Shape> {
    let g = f.group();
    let act = coset_action(g, f.h(), index_bound)?;
    let core_order = act.kernel.order().clone();
    let gbar = &act.image;
    let kbar = act.induced(f.h(), f.k())?;
    let hbar_gens: Vec<Permutation> = f
        .h()
        .generators()
        .iter()
        .map(|x| act.induced(f.h(), x))
        .collect::<Result<_>>()?;
    let hbar = PermGroup::with_degree(gbar.degree(), hbar_gens)?;

    // Shape 1: <k-bar> normal in G-bar, with H-bar a faithful complement.
    let kbar_group = PermGroup::cyclic_from(&kbar);
    let normal = gbar
        .generators()
        .iter()
        .all(|x| kbar_group.contains(&kbar.conjugate(x)));
    if normal {
        let refactored = crate::factor::certify_factorization(gbar, &hbar, &kbar)?;
        // Faithful means no nonidentity element of H-bar centralizes k-bar.
        let centralizing = hbar
            .sorted_elements(socle_bound)?
            .into_iter()
            .filter(|x| !x.is_identity() && kbar.conjugate(x) == kbar)
            .count();
        if centralizing > 0 {
            return Err(Error::Hypothesis(format!(
                "complement is not faithful on the normal cyclic part: {} nonidentity \
                 elements centralize it",
                centralizing
            )));
        }
        return Ok(Shape::One {
            core_order,
            k_image_order: refactored.k_order(),
            complement_order: hbar.order().clone(),
        });
    }

    // Shape 2: socle analysis by exhaustive normal closures.
    let elements = gbar.sorted_elements(socle_bound)?;
    let mut closures: Vec<PermGroup> = Vec::new();
    for x in &elements {
        if x.is_identity() || !crate::field::is_prime(x.order()) {
            continue;
        }
        let c = normal_closure(gbar, x)?;
        if !closures.iter().any(|d| d.order() == c.order() && d.contains_group(&c)) {
            closures.push(c);
        }
    }
    let minimal: Vec<&PermGroup> = closures
        .iter()
        .filter(|c| {
            !closures
                .iter()
                .any(|d| d.order() < c.order() && c.contains_group(d))
        })
        .collect();
    let mut factors = Vec::new();
    let mut k0_order = BigUint::one();
    let kbar_powers = cyclic_elements(&kbar);
    let mut socle_gens: Vec<Permutation> = Vec::new();
    for m in &minimal {
        socle_gens.extend(m.generators().iter().cloned());
        if is_abelian(m) {
            // Abelian minimal normal subgroups form the cyclic part K0 and
            // must consist of powers of the complement image.
            for x in m.sorted_elements(socle_bound)? {
                if !kbar_powers.contains(&x) {
                    return Err(Error::Hypothesis(
                        "abelian minimal normal subgroup is not inside the complement image"
                            .into(),
                    ));
                }
            }
            k0_order *= m.order();
        } else {
            certify_simple(m, socle_bound)?;
            let (name, e) = match_simple_profile(m.order())?;
            factors.push((name, m.order().clone(), e));
        }
    }
    for (i, (_, ti, _)) in factors.iter().enumerate() {
        for (j, (name_j, _, ej)) in factors.iter().enumerate() {
            if i != j && !ti.gcd(ej).is_one() {
                return Err(Error::Hypothesis(format!(
                    "simple factor orders collide: gcd({}, e({})) > 1",
                    ti, name_j
                )));
            }
        }
    }
    if factors.is_empty() {
        return Err(Error::Hypothesis(
            "neither shape matches: complement image is not normal and the socle has no \
             nonabelian factor"
                .into(),
        ));
    }
    let socle = PermGroup::with_degree(gbar.degree(), socle_gens)?;
    let expected: BigUint = factors
        .iter()
        .map(|(_, t, _)| t.clone())
        .product::<BigUint>()
        * &k0_order;
    if socle.order() != &expected {
        return Err(Error::Hypothesis(format!(
            "minimal normal subgroups generate order {}, not the direct product {}",
            socle.order(),
            expected
        )));
    }
    let outer_order = gbar.order() / socle.order();
    Ok(Shape::Two {
        core_order,
        factors,
        k0_order,
        socle_order: socle.order().clone(),
        outer_order,
    })
}

/// Smallest normal subgroup of g containing x: close the conjugates of x
/// under conjugation by generators.
pub fn normal_closure(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    let mut gens = vec![x.clone()];
    let mut frontier = vec![x.clone()];
    let mut group = PermGroup::with_degree(g.degree(), gens.clone())?;
    while let Some(y) = frontier.pop() {
        for t in g.generators() {
            let c = y.conjugate(t);
            if !group.contains(&c) {
                gens.push(c.clone());
                frontier.push(c);
                group = PermGroup::with_degree(g.degree(), gens.clone())?;
            }
        }
    }
    Ok(group)
}

fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.compose(b) == b.compose(a))
    })
}

/// A group is simple exactly when the normal closure of every nonidentity
/// element is the whole group; restricting to elements of prime order
/// loses nothing, since every nontrivial normal subgroup contains one.
fn certify_simple(m: &PermGroup, bound: u64) -> Result<()> {
    for x in m.sorted_elements(bound)? {
        if x.is_identity() || !crate::field::is_prime(x.order()) {
            continue;
        }
        if normal_closure(m, &x)?.order() != m.order() {
            return Err(Error::Hypothesis(format!(
                "nonabelian minimal normal subgroup of order {} is not simple",
                m.order()
            )));
        }
    }
    Ok(())
}

fn cyclic_elements(k: &Permutation) -> std::collections::HashSet<Permutation> {
    let mut set = std::collections::HashSet::new();
    let mut cur = Permutation::identity(k.degree());
    loop {
        if !set.insert(cur.clone()) {
            return set;
        }
        cur = cur.compose(k);
    }
}

/// Desk table of simple groups known to admit a Hall factorization with a
/// cyclic complement, searched by order.
fn match_simple_profile(order: &BigUint) -> Result<(String, BigUint)> {
    use crate::descriptor::GroupDescriptor as D;
    let mut candidates: Vec<D> = vec![D::Psl2_11, D::M11, D::M23];
    for p in [5u32, 7, 11, 13, 17, 19, 23] {
        candidates.push(D::Alt(p));
    }
    for (d, q) in [
        (2u32, 4u64),
        (2, 8),
        (2, 16),
        (2, 32),
        (2, 64),
        (2, 128),
        (3, 2),
        (3, 3),
        (3, 5),
        (5, 2),
    ] {
        if numth::psl_hypothesis(d, q).is_ok() {
            candidates.push(D::Psl { d, q });
        }
    }
    for desc in candidates {
        if let Ok(p) = numth::profile(&desc) {
            if &p.order == order {
                return Ok((desc.to_string(), p.e));
            }
        }
    }
    Err(Error::Hypothesis(format!(
        "no known Hall-factorizable simple group has order {}",
        order
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::certify_factorization;
    use crate::zoo;

    fn s4_d8_factorization() -> Factorization {
        let g = zoo::sym_group(4).unwrap();
        let h = zoo::dihedral_group(8).unwrap();
        let k = Permutation::from_cycles(4, "(2,3,4)").unwrap();
        certify_factorization(&g, &h, &k).unwrap()
    }

    #[test]
    fn d8_skew_has_order_three_and_nonconstant_pi() {
        let s = skew_from_factorization(&s4_d8_factorization()).unwrap();
        assert_eq!(s.skew_order, 3);
        assert_eq!(s.h_order(), 8);
        assert!(s.verify_axioms().is_ok());
        assert!(s.is_hall());
        assert!(!s.is_trivial());
        let distinct: std::collections::HashSet<u64> = s.pi.iter().copied().collect();
        assert!(distinct.len() > 1, "pi should be non-constant: {:?}", s.pi);
        assert_eq!(s.pi[0], 1);
    }

    #[test]
    fn s4_skew_from_s5_has_order_five() {
        let g = zoo::sym_group(5).unwrap();
        let h = g.point_stabilizer(4).unwrap();
        let k = Permutation::from_cycles(5, "(1,2,3,4,5)").unwrap();
        let f = certify_factorization(&g, &h, &k).unwrap();
        let s = skew_from_factorization(&f).unwrap();
        assert_eq!(s.skew_order, 5);
        assert_eq!(s.h_order(), 24);
        assert!(s.verify_axioms().is_ok());
        assert!(s.is_hall());
    }

    #[test]
    fn d10_skew_from_wreath_is_an_order_five_automorphism() {
        let (g, h, k) = zoo::standard_factorization(
            &crate::descriptor::GroupDescriptor::WreathZpS2(5),
        )
        .unwrap();
        let f = certify_factorization(&g, &h, &k).unwrap();
        let s = skew_from_factorization(&f).unwrap();
        assert_eq!(s.skew_order, 5);
        assert_eq!(s.h_order(), 10);
        // The dihedral subgroup of the wreath product is unique (it holds
        // all five involutions), hence normal, so every complement
        // generator induces an automorphism: the skew-morphism has full
        // order 5 but constant power function.
        assert!(s.is_trivial());
        assert!(!s.is_hall());
        assert!(s.verify_axioms().is_ok());
    }

    #[test]
    fn decompose_identities() {
        let f = s4_d8_factorization();
        let id = Permutation::identity(4);
        assert_eq!(f.decompose(&id).unwrap(), (id.clone(), 0));
        assert_eq!(f.decompose(f.k()).unwrap(), (id, 1));
        for g in f.group().elements() {
            let (h, j) = f.decompose(&g).unwrap();
            assert!(f.h().contains(&h));
            assert_eq!(h.compose(f.k_power(j)), g);
        }
    }

    #[test]
    fn mutated_skew_fails_with_witness() {
        let mut s = skew_from_factorization(&s4_d8_factorization()).unwrap();
        assert!(s.verify_axioms().is_ok());
        // Swap two non-identity rho images: still a bijection fixing the
        // identity, but the defining identity must now fail somewhere.
        let (i, j) = (1, 2);
        s.rho.swap(i, j);
        let m = index_perm_order(&s.rho);
        s.skew_order = m;
        for e in s.pi.iter_mut() {
            *e %= m.max(1);
        }
        s.pi[0] = 1 % m.max(1);
        assert!(s.verify_axioms().is_err());
    }

    #[test]
    fn brute_enumerate_z2_is_identity_only() {
        let h = zoo::cyclic_group(2).unwrap();
        let all = brute_enumerate(&h).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_trivial());
        assert_eq!(all[0].skew_order, 1);
    }

    #[test]
    fn brute_enumerate_z4_contains_its_automorphisms() {
        let h = zoo::cyclic_group(4).unwrap();
        let all = brute_enumerate(&h).unwrap();
        let autos: Vec<&SkewMorphism> = all.iter().filter(|s| s.is_trivial()).collect();
        assert_eq!(autos.len(), 2);
        for s in &all {
            assert!(s.verify_axioms().is_ok());
            // pi == 1 must coincide with rho being a homomorphism.
            let homo = (0..s.elements.len()).all(|i| {
                (0..s.elements.len()).all(|j| {
                    let ab = s.elements[i].compose(&s.elements[j]);
                    let im = s.elements[s.rho[i] as usize]
                        .compose(&s.elements[s.rho[j] as usize]);
                    *s.rho_of(&ab).unwrap() == im
                })
            });
            assert_eq!(homo, s.is_trivial());
        }
    }

    #[test]
    fn brute_enumerate_d8_contains_the_factorization_skews() {
        let h = zoo::dihedral_group(8).unwrap();
        let all = brute_enumerate(&h).unwrap();
        assert!(all.iter().any(|s| s.skew_order == 3));
        // Every order-3 complement in S4 meeting D8 trivially produces a
        // skew-morphism the enumerator already knows.
        let g = zoo::sym_group(4).unwrap();
        let mut checked = 0;
        for k in g.elements().filter(|e| e.order() == 3) {
            if h.contains(&k) {
                continue;
            }
            let f = certify_factorization(&g, &h, &k).unwrap();
            let s = skew_from_factorization(&f).unwrap();
            assert!(all.contains(&s), "missing skew for k = {}", k);
            checked += 1;
        }
        assert_eq!(checked, 8);
    }

    #[test]
    fn brute_enumerate_refuses_large_groups() {
        let h = zoo::dihedral_group(12).unwrap();
        assert!(matches!(
            brute_enumerate(&h).unwrap_err(),
            Error::EnumerationBound { .. }
        ));
    }

    #[test]
    fn non_core_free_complement_is_refused() {
        // In D8 x Z3 the factor Z3 is central, so its core is itself.
        let d8 = zoo::dihedral_group(8).unwrap();
        let shift: Vec<Permutation> =
            d8.generators().iter().map(|p| p.shift(0, 7)).collect();
        let mut gens = shift;
        let three = Permutation::from_cycles(7, "(5,6,7)").unwrap();
        gens.push(three.clone());
        let g = PermGroup::from_generators(gens.clone()).unwrap();
        let h = PermGroup::with_degree(7, gens[..2].to_vec()).unwrap();
        let f = certify_factorization(&g, &h, &three).unwrap();
        assert!(!f.is_core_free());
        assert!(matches!(
            skew_from_factorization(&f).unwrap_err(),
            Error::NotCoreFree(_)
        ));
    }

    #[test]
    fn shape_one_for_s4() {
        let f = s4_d8_factorization();
        let shape = shape_check(&f).unwrap();
        assert_eq!(
            shape,
            Shape::One {
                core_order: numth::big(4),
                k_image_order: 3,
                complement_order: numth::big(2),
            }
        );
    }

    #[test]
    fn shape_one_for_wreath() {
        let (g, h, k) = zoo::standard_factorization(
            &crate::descriptor::GroupDescriptor::WreathZpS2(5),
        )
        .unwrap();
        let f = certify_factorization(&g, &h, &k).unwrap();
        // The dihedral complement is itself normal here, so the core is all
        // of it and the quotient is cyclic of order 5 with a trivial
        // complement acting.
        let shape = shape_check(&f).unwrap();
        assert_eq!(
            shape,
            Shape::One {
                core_order: numth::big(10),
                k_image_order: 5,
                complement_order: numth::big(1),
            }
        );
    }

    #[test]
    fn shape_two_for_psl211() {
        let (g, h, k) = zoo::standard_factorization(
            &crate::descriptor::GroupDescriptor::Psl2_11,
        )
        .unwrap();
        let f = certify_factorization(&g, &h, &k).unwrap();
        let shape = shape_check(&f).unwrap();
        match shape {
            Shape::Two { core_order, factors, k0_order, socle_order, outer_order } => {
                assert!(core_order.is_one());
                assert_eq!(factors.len(), 1);
                assert_eq!(factors[0].1, numth::big(660));
                assert_eq!(factors[0].2, numth::big(11));
                assert!(k0_order.is_one());
                assert_eq!(socle_order, numth::big(660));
                assert!(outer_order.is_one());
            }
            other => panic!("expected shape two, got {:?}", other),
        }
    }
}
