//! Construction of the concrete groups behind every descriptor: symmetric
//! and alternating groups, linear groups on projective points, their
//! field-automorphism extensions, the two Mathieu groups, the 11-point
//! PSL(2,11), and small solvable examples.
//!
//! Every constructor asserts the order of what it built against the closed
//! formula from [`numth`](crate::numth), so a generation bug cannot produce
//! a silently wrong group.

use crate::descriptor::GroupDescriptor;
use crate::error::{Error, Result};
use crate::field::{subfield_basis, FiniteField};
use crate::group::{coset_action, PermGroup};
use crate::numth;
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use std::collections::HashSet;

/// Cap on elements scanned when searching for an involution or a small
/// subgroup inside a constructed group.
const SEARCH_CAP: usize = 200_000;

/// Symmetric group on n points, n >= 2.
pub fn sym_group(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n < 2 {
        return Err(Error::Descriptor("sym needs n >= 2".into()));
    }
    let gens = vec![transposition(n, 0, 1), full_cycle(n)];
    let g = PermGroup::from_generators(gens)?;
    assert_order(&g, numth::sym_order(n as u32), "sym")?;
    Ok(g)
}

/// Alternating group on n points, n >= 3.
pub fn alt_group(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n < 3 {
        return Err(Error::Descriptor("alt needs n >= 3".into()));
    }
    let three = Permutation::from_images(
        (0..n).map(|i| [1, 2, 0].get(i).copied().unwrap_or(i as u32)).collect(),
    )?;
    let long = if n % 2 == 1 {
        full_cycle(n)
    } else {
        // (2,3,...,n): even length cycle on n-1 points is even.
        Permutation::from_images(
            (0..n).map(|i| if i == 0 { 0 } else if i == n - 1 { 1 } else { i as u32 + 1 }).collect(),
        )?
    };
    let g = PermGroup::from_generators(vec![three, long])?;
    assert_order(&g, numth::alt_order(n as u32), "alt")?;
    Ok(g)
}

/// Cyclic group of order n in its regular action.
pub fn cyclic_group(n: u32) -> Result<PermGroup> {
    let n = n as usize;
    if n < 2 {
        return Err(Error::Descriptor("cyclic needs n >= 2".into()));
    }
    let g = PermGroup::cyclic_from(&full_cycle(n));
    assert_order(&g, numth::big(n as u64), "cyclic")?;
    Ok(g)
}

/// Dihedral group of order n acting on n/2 points: rotation plus the
/// reversal i -> m+1-i (in 1-indexed terms).
pub fn dihedral_group(order: u32) -> Result<PermGroup> {
    if order < 6 || order % 2 != 0 {
        return Err(Error::Descriptor(format!(
            "dihedral order must be an even number >= 6, got {}",
            order
        )));
    }
    let m = (order / 2) as usize;
    let reversal = Permutation::from_images((0..m).map(|i| (m - 1 - i) as u32).collect())?;
    let g = PermGroup::from_generators(vec![full_cycle(m), reversal])?;
    assert_order(&g, numth::big(u64::from(order)), "dihedral")?;
    Ok(g)
}

/// Z_p wr S_2 of order 2p^2 on 2p points, for p an odd prime.
pub fn wreath_zp_s2(p: u32) -> Result<PermGroup> {
    wreath_parts(p).map(|(g, _, _, _)| g)
}

/// The wreath product together with its standard pieces: the group, the
/// first-block p-cycle `a`, the block swap `t`, and the dihedral subgroup
/// generated by a*b^-1 and t (where b = a^t is the second-block cycle).
pub fn wreath_parts(p: u32) -> Result<(PermGroup, Permutation, Permutation, PermGroup)> {
    if p < 3 || !crate::field::is_prime(u64::from(p)) {
        return Err(Error::Descriptor(format!("wreath needs an odd prime, got {}", p)));
    }
    let p = p as usize;
    let n = 2 * p;
    let a = Permutation::from_images(
        (0..n).map(|i| if i < p { ((i + 1) % p) as u32 } else { i as u32 }).collect(),
    )?;
    let t = Permutation::from_images(
        (0..n).map(|i| ((i + p) % n) as u32).collect(),
    )?;
    let g = PermGroup::from_generators(vec![a.clone(), t.clone()])?;
    assert_order(&g, numth::big(2 * (p as u64) * (p as u64)), "wreath")?;
    let b = a.conjugate(&t);
    let d = PermGroup::from_generators(vec![a.compose(&b.inverse()), t.clone()])?;
    if d.order() != &numth::big(2 * p as u64) {
        return Err(Error::SelfCheck(format!(
            "dihedral part of the wreath product has order {}, expected {}",
            d.order(),
            2 * p
        )));
    }
    Ok((g, a, t, d))
}

fn full_cycle(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| ((i + 1) % n) as u32).collect())
        .expect("cycle images are a bijection")
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.swap(a, b);
    Permutation::from_images(v).expect("transposition images are a bijection")
}

fn assert_order(g: &PermGroup, expected: BigUint, what: &str) -> Result<()> {
    if g.order() == &expected {
        Ok(())
    } else {
        Err(Error::SelfCheck(format!(
            "{} construction has order {}, closed formula says {}",
            what,
            g.order(),
            expected
        )))
    }
}

/// A d x d matrix over a finite field, row-major element codes. Vectors are
/// rows and act on the right: v -> v*M, matching left-to-right composition
/// of the induced permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub d: usize,
    pub a: Vec<u64>,
}

impl Mat {
    pub fn identity(d: usize) -> Mat {
        let mut a = vec![0; d * d];
        for i in 0..d {
            a[i * d + i] = 1;
        }
        Mat { d, a }
    }

    pub fn mul(&self, other: &Mat, k: &FiniteField) -> Mat {
        let d = self.d;
        let mut a = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0;
                for t in 0..d {
                    s = k.add(s, k.mul(self.a[i * d + t], other.a[t * d + j]));
                }
                a[i * d + j] = s;
            }
        }
        Mat { d, a }
    }

    pub fn apply_row(&self, v: &[u64], k: &FiniteField) -> Vec<u64> {
        let d = self.d;
        let mut out = vec![0; d];
        for (j, o) in out.iter_mut().enumerate() {
            let mut s = 0;
            for (i, &vi) in v.iter().enumerate() {
                s = k.add(s, k.mul(vi, self.a[i * d + j]));
            }
            *o = s;
        }
        out
    }
}

/// The points of PG(d-1, q) in a fixed order: representatives normalized to
/// leading coordinate 1, sorted lexicographically by code vector.
pub struct ProjectiveSpace {
    pub field: FiniteField,
    pub d: usize,
    pub points: Vec<Vec<u64>>,
    index: std::collections::HashMap<Vec<u64>, usize>,
}

impl ProjectiveSpace {
    pub fn new(d: u32, q: u64) -> Result<ProjectiveSpace> {
        let (p, f) = crate::field::prime_power_split(q)?;
        let field = FiniteField::new(p, f)?;
        let d = d as usize;
        let mut set = std::collections::BTreeSet::new();
        for code in 1..q.pow(d as u32) {
            let mut v = Vec::with_capacity(d);
            let mut c = code;
            for _ in 0..d {
                v.push(c % q);
                c /= q;
            }
            set.insert(normalize(&field, &v)?);
        }
        let points: Vec<Vec<u64>> = set.into_iter().collect();
        let expected = numth::projective_point_count(d as u32, q);
        if numth::big(points.len() as u64) != expected {
            return Err(Error::SelfCheck(format!(
                "projective space has {} points, formula says {}",
                points.len(),
                expected
            )));
        }
        let index = points.iter().cloned().zip(0..).collect();
        Ok(ProjectiveSpace { field, d, points, index })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// The permutation a matrix induces on the points.
    pub fn perm_of_matrix(&self, m: &Mat) -> Result<Permutation> {
        self.perm_of_map(|v| m.apply_row(v, &self.field))
    }

    /// The permutation induced by any semilinear map given on coordinates.
    pub fn perm_of_map(&self, map: impl Fn(&[u64]) -> Vec<u64>) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            let w = normalize(&self.field, &map(pt))?;
            let i = *self
                .index
                .get(&w)
                .ok_or_else(|| Error::SelfCheck("image is not a projective point".into()))?;
            images.push(i as u32);
        }
        Permutation::from_images(images)
    }
}

fn normalize(k: &FiniteField, v: &[u64]) -> Result<Vec<u64>> {
    let lead = v
        .iter()
        .position(|&c| c != 0)
        .ok_or_else(|| Error::SelfCheck("zero vector has no projective point".into()))?;
    let s = k.inv(v[lead])?;
    Ok(v.iter().map(|&c| k.mul(c, s)).collect())
}

/// Generating matrices for SL(d, q): the transvections adding gamma^m times
/// coordinate 2 to coordinate 1 for each m < f, plus the signed coordinate
/// cycle. All have determinant 1.
fn sl_transvection(d: usize, beta: u64) -> Mat {
    let mut m = Mat::identity(d);
    m.a[1] = beta;
    m
}

fn sl_signed_cycle(d: usize, k: &FiniteField) -> Mat {
    let mut m = Mat { d, a: vec![0; d * d] };
    for i in 0..d - 1 {
        m.a[i * d + i + 1] = 1;
    }
    let sign = if d % 2 == 1 { 1 } else { k.neg(1) };
    m.a[(d - 1) * d] = sign;
    m
}

fn psl_gen_mats(d: usize, k: &FiniteField) -> Vec<Mat> {
    let mut mats = Vec::new();
    let mut beta = 1;
    for _ in 0..k.f() {
        mats.push(sl_transvection(d, beta));
        beta = k.mul(beta, k.primitive());
    }
    mats.push(sl_signed_cycle(d, k));
    mats
}

/// PSL(d, q) acting on the points of PG(d-1, q), for d prime with
/// gcd(d, q-1) = 1 (so the projective image of SL is the full PGL and the
/// order formula has no quotient to hide in).
pub fn psl(d: u32, q: u64) -> Result<PermGroup> {
    numth::psl_hypothesis(d, q)?;
    let space = ProjectiveSpace::new(d, q)?;
    psl_on(&space)
}

fn psl_on(space: &ProjectiveSpace) -> Result<PermGroup> {
    let d = space.d;
    let gens: Vec<Permutation> = psl_gen_mats(d, &space.field)
        .iter()
        .map(|m| space.perm_of_matrix(m))
        .collect::<Result<_>>()?;
    let g = PermGroup::from_generators(gens)?;
    assert_order(&g, numth::psl_order(d as u32, space.field.q()), "psl")?;
    Ok(g)
}

/// The projective image of the companion matrix of the least primitive
/// degree-d polynomial over GF(q): a single cycle through all points of
/// PG(d-1, q), of order (q^d - 1)/(q - 1).
pub fn singer_cycle(d: u32, q: u64) -> Result<Permutation> {
    numth::psl_hypothesis(d, q)?;
    let space = ProjectiveSpace::new(d, q)?;
    singer_on(&space)
}

fn singer_on(space: &ProjectiveSpace) -> Result<Permutation> {
    let d = space.d;
    let k = &space.field;
    let poly = crate::field::least_primitive_poly(k, d as u32)?;
    let mut m = Mat { d, a: vec![0; d * d] };
    for i in 0..d - 1 {
        m.a[i * d + i + 1] = 1;
    }
    for (j, &c) in poly.iter().enumerate() {
        m.a[(d - 1) * d + j] = k.neg(c);
    }
    let perm = space.perm_of_matrix(&m)?;
    let n = space.point_count();
    // Multiplication by a field generator is simply transitive on points.
    let mut seen = 1usize;
    let mut at = perm.image(0);
    while at != 0 {
        seen += 1;
        at = perm.image(at);
    }
    if seen != n || perm.order() != n as u64 {
        return Err(Error::SelfCheck(format!(
            "companion matrix acts with orbit {} and order {}, expected a full {}-cycle",
            seen,
            perm.order(),
            n
        )));
    }
    Ok(perm)
}

/// PSL(d, q0^2) extended by the field automorphism of order 2, together
/// with the pieces later constructions select from it.
pub struct SigmaContext {
    /// The extension PSL(d, q):<phi>, q = q0^2.
    pub group: PermGroup,
    /// The socle PSL(d, q).
    pub psl: PermGroup,
    /// The subfield subgroup PSL(d, q0), centralized by phi.
    pub subfield: PermGroup,
    /// The induced permutation of the coordinatewise map a -> a^(q0).
    pub phi: Permutation,
}

pub fn psl_sigma(d: u32, q0: u64) -> Result<SigmaContext> {
    let q = q0
        .checked_mul(q0)
        .ok_or_else(|| Error::Descriptor("field too large".into()))?;
    numth::psl_hypothesis(d, q)?;
    let (_, f0) = crate::field::prime_power_split(q0)?;
    let space = ProjectiveSpace::new(d, q)?;
    let t = psl_on(&space)?;
    let phi = space.perm_of_map(|v| {
        v.iter().map(|&c| space.field.frobenius(c, f0)).collect()
    })?;
    if !phi.compose(&phi).is_identity() {
        return Err(Error::SelfCheck("field automorphism is not an involution".into()));
    }
    let mut gens = t.generators().to_vec();
    gens.push(phi.clone());
    let group = PermGroup::from_generators(gens)?;
    assert_order(
        &group,
        numth::big(2) * numth::psl_order(d as u32, q),
        "psl extension",
    )?;
    // Subfield subgroup: same generator pattern with transvection entries
    // running over a GF(p)-basis of GF(q0) inside GF(q).
    let (_, basis) = subfield_basis(&space.field, f0)?;
    let mut sub_mats: Vec<Mat> = basis
        .iter()
        .map(|&b| sl_transvection(d as usize, b))
        .collect();
    sub_mats.push(sl_signed_cycle(d as usize, &space.field));
    let sub_gens: Vec<Permutation> = sub_mats
        .iter()
        .map(|m| space.perm_of_matrix(m))
        .collect::<Result<_>>()?;
    let subfield = PermGroup::from_generators(sub_gens)?;
    assert_order(&subfield, numth::psl_order(d as u32, q0), "subfield subgroup")?;
    for s in subfield.generators() {
        if &s.conjugate(&phi) != s {
            return Err(Error::SelfCheck(
                "field automorphism fails to centralize the subfield subgroup".into(),
            ));
        }
    }
    Ok(SigmaContext { group, psl: t, subfield, phi })
}

/// Mathieu group on 11 points from the classical pair of generators.
pub fn mathieu11() -> Result<PermGroup> {
    let c = Permutation::from_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)")?;
    let m = Permutation::from_cycles(11, "(3,7,11,8)(4,10,5,6)")?;
    let g = PermGroup::from_generators(vec![c, m])?;
    assert_order(&g, numth::big(numth::M11_ORDER), "m11")?;
    Ok(g)
}

/// Mathieu group on 23 points from the classical pair of generators.
pub fn mathieu23() -> Result<PermGroup> {
    let c = full_cycle(23);
    let m = Permutation::from_cycles(
        23,
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    )?;
    let g = PermGroup::from_generators(vec![c, m])?;
    assert_order(&g, numth::big(numth::M23_ORDER), "m23")?;
    Ok(g)
}

/// PSL(2,11) in its exceptional transitive action on 11 points: built on
/// the 12 projective points first, then pushed onto the cosets of a
/// subgroup isomorphic to Alt(5).
pub fn psl2_11() -> Result<PermGroup> {
    let space = ProjectiveSpace::new(2, 11)?;
    let m1 = Mat { d: 2, a: vec![1, 1, 0, 1] };
    let m2 = Mat { d: 2, a: vec![0, 1, 10, 0] };
    let g12 = PermGroup::from_generators(vec![
        space.perm_of_matrix(&m1)?,
        space.perm_of_matrix(&m2)?,
    ])?;
    assert_order(&g12, numth::big(660), "psl(2,11) on 12 points")?;
    let a5 = find_alt5(&g12)?;
    let act = coset_action(&g12, &a5, 16)?;
    let image = act.image;
    if !act.kernel.is_trivial() {
        return Err(Error::SelfCheck("coset action of a simple group has a kernel".into()));
    }
    assert_order(&image, numth::big(660), "psl2_11")?;
    Ok(image)
}

/// First subgroup isomorphic to Alt(5), located by scanning for an
/// (involution, order-3) pair generating a group of order 60.
fn find_alt5(g: &PermGroup) -> Result<PermGroup> {
    let sixty = numth::big(60);
    let invs: Vec<Permutation> = g.elements().filter(|e| e.order() == 2).collect();
    let cubes: Vec<Permutation> = g.elements().filter(|e| e.order() == 3).collect();
    for a in &invs {
        for b in &cubes {
            let ab = a.compose(b).order();
            if ab != 5 {
                // In a (2,3)-generated group of order 60 the product has
                // order 5 for some generating pair, so the filter is safe.
                continue;
            }
            let s = PermGroup::from_generators(vec![a.clone(), b.clone()])?;
            if s.order() == &sixty {
                return Ok(s);
            }
        }
    }
    Err(Error::NotFound("no subgroup of order 60 found".into()))
}

/// Builds the group a descriptor names.
pub fn classical_group(desc: &GroupDescriptor) -> Result<PermGroup> {
    match *desc {
        GroupDescriptor::Alt(n) => alt_group(n),
        GroupDescriptor::Sym(n) => sym_group(n),
        GroupDescriptor::Psl { d, q } => psl(d, q),
        GroupDescriptor::PslSigma { d, q0 } => Ok(psl_sigma(d, q0)?.group),
        GroupDescriptor::Psl2_11 => psl2_11(),
        GroupDescriptor::M11 => mathieu11(),
        GroupDescriptor::M23 => mathieu23(),
        GroupDescriptor::Cyclic(n) => cyclic_group(n),
        GroupDescriptor::Dihedral(n) => dihedral_group(n),
        GroupDescriptor::WreathZpS2(p) => wreath_zp_s2(p),
    }
}

/// The canonical factorization G = H * <k> attached to a descriptor: the
/// point stabilizer paired with the cyclic complement the classification
/// names (the long cycle, or the projective image of the companion matrix).
/// Returns (G, H, k).
pub fn standard_factorization(
    desc: &GroupDescriptor,
) -> Result<(PermGroup, PermGroup, Permutation)> {
    match *desc {
        GroupDescriptor::Alt(n) => {
            if n % 2 == 0 {
                return Err(Error::Descriptor(
                    "alt has no full-cycle complement for even n".into(),
                ));
            }
            let g = alt_group(n)?;
            let h = g.point_stabilizer(0)?;
            Ok((g, h, full_cycle(n as usize)))
        }
        GroupDescriptor::Sym(n) => {
            let g = sym_group(n)?;
            let h = g.point_stabilizer(0)?;
            Ok((g, h, full_cycle(n as usize)))
        }
        GroupDescriptor::Psl { d, q } => {
            let g = psl(d, q)?;
            let h = g.point_stabilizer(0)?;
            Ok((g, h, singer_cycle(d, q)?))
        }
        GroupDescriptor::PslSigma { d, q0 } => {
            let ctx = psl_sigma(d, q0)?;
            let h = ctx.group.point_stabilizer(0)?;
            Ok((ctx.group, h, singer_cycle(d, q0 * q0)?))
        }
        GroupDescriptor::Psl2_11 => {
            let g = psl2_11()?;
            let h = g.point_stabilizer(0)?;
            let k = first_of_order(&g, 11)?;
            Ok((g, h, k))
        }
        GroupDescriptor::M11 => {
            let g = mathieu11()?;
            let h = g.point_stabilizer(0)?;
            let k = g.generators()[0].clone();
            Ok((g, h, k))
        }
        GroupDescriptor::M23 => {
            let g = mathieu23()?;
            let h = g.point_stabilizer(0)?;
            let k = g.generators()[0].clone();
            Ok((g, h, k))
        }
        GroupDescriptor::WreathZpS2(p) => {
            let (g, a, _, d) = wreath_parts(p)?;
            Ok((g, d, a))
        }
        _ => Err(Error::Descriptor(format!(
            "{} has no canonical factorization; pass an explicit subgroup and complement",
            desc
        ))),
    }
}

/// First element of the given order in enumeration order.
pub fn first_of_order(g: &PermGroup, order: u64) -> Result<Permutation> {
    g.elements()
        .take(SEARCH_CAP)
        .find(|e| e.order() == order)
        .ok_or_else(|| Error::NotFound(format!("no element of order {}", order)))
}

/// First involution z (taken from power-of-scanned-element candidates, in
/// enumeration order) with <rho, z> equal to the whole group.
pub fn rotary_z_search(g: &PermGroup, rho: &Permutation) -> Result<Permutation> {
    let target = g.order().clone();
    let mut seen = HashSet::new();
    for el in g.elements().take(SEARCH_CAP) {
        let o = el.order();
        if o % 2 != 0 {
            continue;
        }
        let z = el.pow((o / 2) as i64);
        if !seen.insert(z.clone()) {
            continue;
        }
        let gen = PermGroup::from_generators(vec![rho.clone(), z.clone()])?;
        if gen.order() == &target {
            return Ok(z);
        }
    }
    Err(Error::NotFound("no involution generating the group with rho".into()))
}

/// The standard generating pair (rho, z) of a rotary construction for this
/// descriptor: rho the cyclic complement generator, z an involution with
/// <rho, z> the whole group. Returns (G, rho, z).
pub fn rotary_generators(desc: &GroupDescriptor) -> Result<(PermGroup, Permutation, Permutation)> {
    match *desc {
        GroupDescriptor::Alt(n) => {
            if n < 5 || n % 2 == 0 {
                return Err(Error::Descriptor("alt rotary pair needs odd n >= 5".into()));
            }
            let g = alt_group(n)?;
            let rho = full_cycle(n as usize);
            let z = Permutation::from_cycles(n as usize, "(1,2)(3,4)")?;
            confirm_generates(&g, &rho, &z)?;
            Ok((g, rho, z))
        }
        GroupDescriptor::Sym(n) => {
            let g = sym_group(n)?;
            let rho = full_cycle(n as usize);
            let z = transposition(n as usize, 0, 1);
            confirm_generates(&g, &rho, &z)?;
            Ok((g, rho, z))
        }
        GroupDescriptor::Psl { d, q } => {
            let g = psl(d, q)?;
            let rho = singer_cycle(d, q)?;
            let z = rotary_z_search(&g, &rho)?;
            Ok((g, rho, z))
        }
        GroupDescriptor::PslSigma { d, q0 } => {
            let ctx = psl_sigma(d, q0)?;
            let rho = singer_cycle(d, q0 * q0)?;
            let z = sigma_outer_involution(&ctx, &rho)?;
            confirm_generates(&ctx.group, &rho, &z)?;
            Ok((ctx.group, rho, z))
        }
        GroupDescriptor::Psl2_11 => {
            let g = psl2_11()?;
            let rho = first_of_order(&g, 11)?;
            let z = rotary_z_search(&g, &rho)?;
            Ok((g, rho, z))
        }
        GroupDescriptor::M11 => {
            let g = mathieu11()?;
            let rho = g.generators()[0].clone();
            let z = rotary_z_search(&g, &rho)?;
            Ok((g, rho, z))
        }
        GroupDescriptor::M23 => {
            let g = mathieu23()?;
            let rho = g.generators()[0].clone();
            let z = rotary_z_search(&g, &rho)?;
            Ok((g, rho, z))
        }
        _ => Err(Error::Descriptor(format!("{} has no rotary generating pair", desc))),
    }
}

fn confirm_generates(g: &PermGroup, rho: &Permutation, z: &Permutation) -> Result<()> {
    let gen = PermGroup::from_generators(vec![rho.clone(), z.clone()])?;
    if gen.order() == g.order() {
        Ok(())
    } else {
        Err(Error::SelfCheck(format!(
            "pair generates a subgroup of order {}, expected {}",
            gen.order(),
            g.order()
        )))
    }
}

/// An involution x*phi outside the socle generating the extension with rho:
/// x ranges over involutions of the subfield subgroup (which phi
/// centralizes, so the product squares to the identity); candidates
/// normalizing <rho> are skipped, the rest are checked by generation.
pub fn sigma_outer_involution(ctx: &SigmaContext, rho: &Permutation) -> Result<Permutation> {
    let rho_powers = power_set(rho);
    for x in ctx.subfield.elements() {
        if x.order() != 2 {
            continue;
        }
        if rho_powers.contains(&rho.conjugate(&x)) {
            continue;
        }
        let z = x.compose(&ctx.phi);
        if !z.compose(&z).is_identity() || z.is_identity() {
            return Err(Error::SelfCheck("outer candidate is not an involution".into()));
        }
        if confirm_generates(&ctx.group, rho, &z).is_ok() {
            return Ok(z);
        }
    }
    Err(Error::NotFound(
        "no subfield involution completes rho to a generating pair".into(),
    ))
}

fn power_set(rho: &Permutation) -> HashSet<Permutation> {
    let mut set = HashSet::new();
    let mut cur = Permutation::identity(rho.degree());
    loop {
        if !set.insert(cur.clone()) {
            return set;
        }
        cur = cur.compose(rho);
    }
}

/// One direct factor of an assembled product.
#[derive(Debug)]
pub struct AssembledFactor {
    pub desc: GroupDescriptor,
    /// Where this factor's points sit in the combined domain.
    pub offset: usize,
    pub degree: usize,
    pub twisted: bool,
    /// The simple group T_i, on its local points.
    pub t: PermGroup,
    /// T_i itself, or T_i extended by its outer involution when twisted.
    pub component: PermGroup,
    pub rho: Permutation,
    pub z: Permutation,
    pub rho_order: u64,
}

/// A product of simple groups with coprime cyclic complements, optionally
/// extended by the diagonal of the twisted factors' outer involutions.
#[derive(Debug)]
pub struct Assembled {
    pub group: PermGroup,
    /// Product of the simple factors inside `group`.
    pub socle: PermGroup,
    /// Number of leading factors taken with an outer involution.
    pub s: usize,
    /// The diagonal outer element, when s > 0.
    pub outer: Option<Permutation>,
    /// Product of the per-factor complement generators; its order is the
    /// product of the pairwise coprime factor orders.
    pub rho: Permutation,
    /// Product of the per-factor involutions.
    pub z: Permutation,
    pub factors: Vec<AssembledFactor>,
}

/// Builds (T_1 x ... x T_r).<w> on the disjoint union of the factors'
/// domains, where w is the diagonal of the first s factors' outer
/// involutions (s = number of `twisted` entries, which must be a prefix).
/// Untwisted factors contribute their inner rotary involution to z only.
///
/// Pairwise, every factor's order must be coprime to every other factor's
/// complement order; otherwise the combined complement is not cyclic or
/// not Hall, and assembly refuses.
pub fn assemble(specs: &[(GroupDescriptor, bool)]) -> Result<Assembled> {
    if specs.is_empty() {
        return Err(Error::Descriptor("assemble needs at least one factor".into()));
    }
    let s = specs.iter().take_while(|(_, tw)| *tw).count();
    if specs.iter().skip(s).any(|(_, tw)| *tw) {
        return Err(Error::Descriptor("twisted factors must come first".into()));
    }
    let mut factors = Vec::new();
    let mut offset = 0;
    for (desc, twisted) in specs {
        let f = build_factor(desc, *twisted, offset)?;
        offset += f.degree;
        factors.push(f);
    }
    let total = offset;

    // Hypothesis: gcd(|T_i|, e_j) = 1 for i != j, where e_j is the
    // complement order; this includes pairwise coprimality of the e's.
    for (i, a) in factors.iter().enumerate() {
        for (j, b) in factors.iter().enumerate() {
            if i == j {
                continue;
            }
            let g = a.t.order().gcd(&numth::big(b.rho_order));
            if !g.is_one() {
                return Err(Error::Hypothesis(format!(
                    "factor orders collide: gcd(|{}|, {}) = {}",
                    a.desc, b.rho_order, g
                )));
            }
        }
    }

    let mut socle_gens = Vec::new();
    for f in &factors {
        for g in f.t.generators() {
            socle_gens.push(g.shift(f.offset, total));
        }
    }
    let socle = PermGroup::from_generators(socle_gens.clone())?;
    let socle_order: BigUint = factors.iter().map(|f| f.t.order().clone()).product();
    assert_order(&socle, socle_order.clone(), "assembled socle")?;

    let outer = if s > 0 {
        let mut w = Permutation::identity(total);
        for f in factors.iter().take(s) {
            w = w.compose(&f.z.shift(f.offset, total));
        }
        Some(w)
    } else {
        None
    };
    let mut gens = socle_gens;
    if let Some(w) = &outer {
        gens.push(w.clone());
    }
    let group = PermGroup::from_generators(gens)?;
    let expected = if s > 0 { numth::big(2) * &socle_order } else { socle_order };
    assert_order(&group, expected, "assembled product")?;

    let mut rho = Permutation::identity(total);
    let mut z = Permutation::identity(total);
    for f in &factors {
        rho = rho.compose(&f.rho.shift(f.offset, total));
        z = z.compose(&f.z.shift(f.offset, total));
    }
    let expected_rho: u64 = factors.iter().map(|f| f.rho_order).product();
    if rho.order() != expected_rho || z.order() != 2 {
        return Err(Error::SelfCheck(
            "assembled rho/z orders disagree with the factor data".into(),
        ));
    }
    Ok(Assembled { group, socle, s, outer, rho, z, factors })
}

fn build_factor(desc: &GroupDescriptor, twisted: bool, offset: usize) -> Result<AssembledFactor> {
    if twisted {
        match *desc {
            GroupDescriptor::Alt(n) => {
                let (t, rho, _) = rotary_generators(desc)?;
                let component = sym_group(n)?;
                let z = transposition(n as usize, 0, 1);
                confirm_generates(&component, &rho, &z)?;
                let degree = t.degree();
                Ok(AssembledFactor {
                    desc: desc.clone(),
                    offset,
                    degree,
                    twisted,
                    t,
                    component,
                    rho_order: rho.order(),
                    rho,
                    z,
                })
            }
            GroupDescriptor::PslSigma { d, q0 } => {
                let ctx = psl_sigma(d, q0)?;
                let rho = singer_cycle(d, q0 * q0)?;
                let z = sigma_outer_involution(&ctx, &rho)?;
                confirm_generates(&ctx.group, &rho, &z)?;
                let degree = ctx.group.degree();
                Ok(AssembledFactor {
                    desc: desc.clone(),
                    offset,
                    degree,
                    twisted,
                    t: ctx.psl,
                    component: ctx.group,
                    rho_order: rho.order(),
                    rho,
                    z,
                })
            }
            _ => Err(Error::Descriptor(format!(
                "{} has no outer involution to twist by",
                desc
            ))),
        }
    } else {
        let (t, rho, z) = rotary_generators(desc)?;
        let degree = t.degree();
        Ok(AssembledFactor {
            desc: desc.clone(),
            offset,
            degree,
            twisted,
            component: t.clone(),
            t,
            rho_order: rho.order(),
            rho,
            z,
        })
    }
}
