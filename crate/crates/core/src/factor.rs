//! Exact factorizations `G = H * <k>` with trivial intersection.
//!
//! A certified factorization carries a complete decomposition table, so every
//! group element splits as `h * k^j` in constant time after certification.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_integer::Integer;
use std::collections::HashMap;

/// A certified exact factorization `G = H * <k>`, `H` meeting `<k>` trivially.
pub struct Factorization {
    group: PermGroup,
    h: PermGroup,
    k: Permutation,
    k_order: u64,
    /// `k_powers[j] = k^j` for `0 <= j < k_order`.
    k_powers: Vec<Permutation>,
    /// Canonical representative of the right coset `H * k^j`, mapped to `j`.
    table: HashMap<Permutation, u64>,
    hall: bool,
    core_free: bool,
}

impl Factorization {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The subgroup factor `H`.
    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    /// The generator of the cyclic factor.
    pub fn k(&self) -> &Permutation {
        &self.k
    }

    pub fn k_order(&self) -> u64 {
        self.k_order
    }

    /// `k^j`, reduced modulo the order of `k`.
    pub fn k_power(&self, j: u64) -> &Permutation {
        &self.k_powers[(j % self.k_order) as usize]
    }

    /// Whether `gcd(|H|, ord(k)) = 1`.
    pub fn is_hall(&self) -> bool {
        self.hall
    }

    /// Whether `<k>` contains no nontrivial subgroup normal in `G`.
    pub fn is_core_free(&self) -> bool {
        self.core_free
    }

    /// Splits `g` as `(h, j)` with `g = h * k^j`, `h` in `H`,
    /// `0 <= j < ord(k)`. The split is unique.
    pub fn decompose(&self, g: &Permutation) -> Result<(Permutation, u64)> {
        let rep = self.h.min_coset_rep(g);
        let Some(&j) = self.table.get(&rep) else {
            return Err(Error::NotFound(
                "element lies outside the factorized group".into(),
            ));
        };
        let h = g.compose(&self.k_power(j).inverse());
        if !self.h.contains(&h) {
            return Err(Error::Inconsistency(
                "decomposition table produced a factor outside H".into(),
            ));
        }
        Ok((h, j))
    }
}

impl std::fmt::Debug for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Factorization(|G|={}, |H|={}, ord(k)={}, hall={}, core_free={})",
            self.group.order(),
            self.h.order(),
            self.k_order,
            self.hall,
            self.core_free
        )
    }
}

/// Certifies that `group = h * <k>` is an exact factorization and builds its
/// decomposition table.
pub fn certify_factorization(
    group: &PermGroup,
    h: &PermGroup,
    k: &Permutation,
) -> Result<Factorization> {
    if !group.contains_group(h) {
        return Err(Error::NotAFactorization(
            "H is not a subgroup of G".into(),
        ));
    }
    if k.degree() != group.degree() || !group.contains(k) {
        return Err(Error::NotAFactorization("k does not lie in G".into()));
    }
    if k.is_identity() {
        return Err(Error::NotAFactorization(
            "k is the identity, so <k> is trivial".into(),
        ));
    }
    let k_order = k.order();
    let expected = h.order() * BigUint::from(k_order);
    if expected != *group.order() {
        return Err(Error::NotAFactorization(format!(
            "|H| * ord(k) = {} * {} = {} but |G| = {}",
            h.order(),
            k_order,
            expected,
            group.order()
        )));
    }
    let mut k_powers = Vec::with_capacity(k_order as usize);
    let mut cur = Permutation::identity(k.degree());
    for _ in 0..k_order {
        k_powers.push(cur.clone());
        cur = cur.compose(k);
    }
    for (j, p) in k_powers.iter().enumerate().skip(1) {
        if h.contains(p) {
            return Err(Error::NotAFactorization(format!(
                "H meets <k> nontrivially: k^{} lies in H",
                j
            )));
        }
    }
    // Each power hits its own right coset of H exactly when the intersection
    // is trivial, so the table doubles as a certificate of G = H * <k>.
    let mut table = HashMap::with_capacity(k_order as usize);
    for (j, p) in k_powers.iter().enumerate() {
        let rep = h.min_coset_rep(p);
        if table.insert(rep, j as u64).is_some() {
            return Err(Error::Inconsistency(
                "distinct powers of k fell into one coset of H".into(),
            ));
        }
    }
    let hall = h.order().gcd(&BigUint::from(k_order)) == BigUint::from(1u32);
    let core_free = cyclic_core_is_trivial(group, &k_powers, k_order);
    Ok(Factorization {
        group: group.clone(),
        h: h.clone(),
        k: k.clone(),
        k_order,
        k_powers,
        table,
        hall,
        core_free,
    })
}

/// Whether `<k>` is core-free in `group`.
///
/// A nontrivial normal subgroup inside a cyclic group would contain the
/// unique subgroup of some prime order `p` dividing `ord(k)`, and that
/// subgroup is characteristic, hence itself normal. So it is enough to test
/// normality of `<k^(ord(k)/p)>` for each prime `p`.
fn cyclic_core_is_trivial(group: &PermGroup, k_powers: &[Permutation], k_order: u64) -> bool {
    for p in prime_divisors(k_order) {
        let z = &k_powers[(k_order / p) as usize];
        let z_subgroup: Vec<&Permutation> = (0..p)
            .map(|i| &k_powers[(i * (k_order / p)) as usize])
            .collect();
        let normal = group.generators().iter().all(|g| {
            let conj = z.conjugate(g);
            z_subgroup.iter().any(|w| **w == conj)
        });
        if normal {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::intersection_order;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::from_cycles(deg, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::from_generators(vec![p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap()
    }

    #[test]
    fn s4_as_s3_times_c4() {
        let g = s4();
        let s3 = PermGroup::from_generators(vec![p(4, "(1,2)"), p(4, "(1,2,3)")]).unwrap();
        let f = certify_factorization(&g, &s3, &p(4, "(1,2,3,4)")).unwrap();
        assert_eq!(f.k_order(), 4);
        assert!(!f.is_hall());
        assert!(f.is_core_free());
    }

    #[test]
    fn s4_as_d8_times_c3_is_hall() {
        let g = s4();
        let d8 = PermGroup::from_generators(vec![p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
        let f = certify_factorization(&g, &d8, &p(4, "(1,2,3)")).unwrap();
        assert!(f.is_hall());
        assert!(f.is_core_free());
    }

    #[test]
    fn a4_as_v4_times_c3_is_hall() {
        let a4 = PermGroup::from_generators(vec![p(4, "(1,2,3)"), p(4, "(1,2)(3,4)")]).unwrap();
        let v4 =
            PermGroup::from_generators(vec![p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")]).unwrap();
        let f = certify_factorization(&a4, &v4, &p(4, "(1,2,3)")).unwrap();
        assert!(f.is_hall());
        assert!(f.is_core_free());
    }

    #[test]
    fn rejects_wrong_order_product() {
        let g = s4();
        let a4 = PermGroup::from_generators(vec![p(4, "(1,2,3)"), p(4, "(1,2)(3,4)")]).unwrap();
        let err = certify_factorization(&g, &a4, &p(4, "(1,2,3)")).unwrap_err();
        assert!(matches!(err, Error::NotAFactorization(_)));
    }

    #[test]
    fn rejects_nontrivial_intersection() {
        let g = s4();
        let d8 = PermGroup::from_generators(vec![p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
        // |D8| * ord((1,3)(2,4)) = 16 != 24 fails first; pick a case where
        // only the intersection fails: H = <(1,2,3,4)> and k = (1,3)(2,4).
        let c4 = PermGroup::from_generators(vec![p(4, "(1,2,3,4)")]).unwrap();
        let err = certify_factorization(&d8, &c4, &p(4, "(1,3)(2,4)")).unwrap_err();
        assert!(matches!(err, Error::NotAFactorization(ref m) if m.contains("nontrivially")));
        let _ = g;
    }

    #[test]
    fn decompose_round_trips_every_element() {
        let g = s4();
        let s3 = PermGroup::from_generators(vec![p(4, "(1,2)"), p(4, "(1,2,3)")]).unwrap();
        let f = certify_factorization(&g, &s3, &p(4, "(1,2,3,4)")).unwrap();
        for x in g.elements() {
            let (h, j) = f.decompose(&x).unwrap();
            assert!(f.h().contains(&h));
            assert_eq!(h.compose(f.k_power(j)), x);
        }
    }

    #[test]
    fn decompose_rejects_outsiders() {
        let a4 = PermGroup::from_generators(vec![p(4, "(1,2,3)"), p(4, "(1,2)(3,4)")]).unwrap();
        let v4 =
            PermGroup::from_generators(vec![p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")]).unwrap();
        let f = certify_factorization(&a4, &v4, &p(4, "(1,2,3)")).unwrap();
        assert!(f.decompose(&p(4, "(1,2)")).is_err());
    }

    #[test]
    fn non_core_free_cyclic_factor_is_flagged() {
        // G = <(1,2,3)> x <(4,5)>: the factor K = <(4,5)> is central, so its
        // core is all of K.
        let g = PermGroup::from_generators(vec![p(5, "(1,2,3)"), p(5, "(4,5)")]).unwrap();
        let c3 = PermGroup::from_generators(vec![p(5, "(1,2,3)")]).unwrap();
        let f = certify_factorization(&g, &c3, &p(5, "(4,5)")).unwrap();
        assert!(f.is_hall());
        assert!(!f.is_core_free());
    }

    #[test]
    fn involution_counts() {
        assert_eq!(s4().count_involutions(1_000_000).unwrap(), 9);
        let a5 = PermGroup::from_generators(vec![p(5, "(1,2,3)"), p(5, "(1,2,3,4,5)")]).unwrap();
        assert_eq!(a5.count_involutions(1_000_000).unwrap(), 15);
    }

    #[test]
    fn intersection_orders() {
        let d8 = PermGroup::from_generators(vec![p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
        let v4 =
            PermGroup::from_generators(vec![p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")]).unwrap();
        let s3 = PermGroup::from_generators(vec![p(4, "(1,2)"), p(4, "(1,2,3)")]).unwrap();
        assert_eq!(intersection_order(&d8, &v4, 1_000_000).unwrap(), 4);
        assert_eq!(intersection_order(&d8, &s3, 1_000_000).unwrap(), 2);
    }
}
