//! Permutation groups backed by deterministic stabilizer chains.
//!
//! The chain always uses the full point sequence as its base, processed in a
//! fixed order (ascending by default), so construction is reproducible and
//! right cosets have canonical lexicographically-least representatives.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;

struct Level {
    /// Index into `base_order`.
    position: usize,
    /// The base point `base_order[position]`.
    point: usize,
    /// Generators whose first moved base point (in base order) is `point`.
    /// The level's group is generated by these together with the own
    /// generators of every deeper level.
    own_gens: Vec<Permutation>,
    /// Orbit of `point` under the level's group, in BFS discovery order.
    orbit: Vec<u32>,
    /// `transversal[&q]` maps `point` to `q`.
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn new(position: usize, point: usize, degree: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(point as u32, Permutation::identity(degree));
        Level {
            position,
            point,
            own_gens: Vec::new(),
            orbit: vec![point as u32],
            transversal,
        }
    }

    fn rebuild(&mut self, degree: usize, effective_gens: &[Permutation]) {
        self.orbit.clear();
        self.transversal.clear();
        self.orbit.push(self.point as u32);
        self.transversal
            .insert(self.point as u32, Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let q = self.orbit[head] as usize;
            head += 1;
            let u_q = self.transversal[&(q as u32)].clone();
            for gen in effective_gens {
                let r = gen.image(q) as u32;
                if !self.transversal.contains_key(&r) {
                    self.transversal.insert(r, u_q.compose(gen));
                    self.orbit.push(r);
                }
            }
        }
    }
}

/// Stabilizer chain over a fixed ordering of all points.
pub struct StabilizerChain {
    degree: usize,
    /// Processing order of the points; `base_order[i]` is the i-th base point.
    base_order: Vec<u32>,
    /// Inverse of `base_order`.
    position_of: Vec<u32>,
    /// Sparse levels, sorted by `position`; points without a level are fixed
    /// by the corresponding stabilizer.
    levels: Vec<Level>,
    /// `level_at[point]` locates the level for that point, if any.
    level_at: Vec<Option<u32>>,
}

impl StabilizerChain {
    /// Builds the chain for `gens` with the given base ordering.
    fn build(degree: usize, gens: &[Permutation], base_order: Vec<u32>) -> Result<Self> {
        let mut position_of = vec![0u32; degree];
        for (i, &p) in base_order.iter().enumerate() {
            position_of[p as usize] = i as u32;
        }
        let mut chain = StabilizerChain {
            degree,
            base_order,
            position_of,
            levels: Vec::new(),
            level_at: vec![None; degree],
        };
        let mut dirty = vec![false; degree];
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
            if !g.is_identity() {
                chain.insert(g.clone(), &mut dirty);
            }
        }
        chain.complete(&mut dirty);
        Ok(chain)
    }

    /// First base position whose point is moved by `g`.
    fn first_moved_position(&self, g: &Permutation) -> usize {
        (0..self.degree)
            .filter(|&p| g.image(p) != p)
            .map(|p| self.position_of[p] as usize)
            .min()
            .expect("identity has no moved position")
    }

    /// Generators of the level group at `levels[idx]`: the own generators of
    /// that level and of every deeper one.
    fn effective_gens(&self, idx: usize) -> Vec<Permutation> {
        self.levels[idx..]
            .iter()
            .flat_map(|l| l.own_gens.iter().cloned())
            .collect()
    }

    /// Adds `g` as an own generator of the level at its first moved base
    /// point, creating the level if needed. Every level at or above that
    /// position gains `g` in its effective generating set, so their orbits
    /// are rebuilt and they are marked for re-verification.
    fn insert(&mut self, g: Permutation, dirty: &mut [bool]) {
        let pos = self.first_moved_position(&g);
        let point = self.base_order[pos] as usize;
        let idx = match self.level_at[point] {
            Some(i) => i as usize,
            None => {
                let lvl = Level::new(pos, point, self.degree);
                let at = self.levels.partition_point(|l| l.position < pos);
                self.levels.insert(at, lvl);
                for (i, l) in self.levels.iter().enumerate() {
                    self.level_at[l.point] = Some(i as u32);
                }
                at
            }
        };
        self.levels[idx].own_gens.push(g);
        for j in (0..=idx).rev() {
            let effective = self.effective_gens(j);
            let degree = self.degree;
            self.levels[j].rebuild(degree, &effective);
            dirty[self.levels[j].position] = true;
        }
    }

    /// Strips `g` through levels at positions `> after`, returning the residue
    /// and the position where stripping stopped (`degree` when complete).
    fn strip_from(&self, g: &Permutation, after: isize) -> (Permutation, usize) {
        let mut cur = g.clone();
        let start = self.levels.partition_point(|l| l.position as isize <= after);
        let mut implicit_from = (after + 1) as usize;
        for level in &self.levels[start..] {
            if cur.is_identity() {
                return (cur, self.degree);
            }
            // Positions between levels carry implicitly trivial orbits: the
            // residue must fix those points outright.
            for pos in implicit_from..level.position {
                let pt = self.base_order[pos] as usize;
                if cur.image(pt) != pt {
                    return (cur, pos);
                }
            }
            implicit_from = level.position + 1;
            let gamma = cur.image(level.point) as u32;
            match level.transversal.get(&gamma) {
                None => return (cur, level.position),
                Some(u) => {
                    cur = cur.compose(&u.inverse());
                }
            }
        }
        if cur.is_identity() {
            return (cur, self.degree);
        }
        for pos in implicit_from..self.degree {
            let pt = self.base_order[pos] as usize;
            if cur.image(pt) != pt {
                return (cur, pos);
            }
        }
        (cur, self.degree)
    }

    /// Schreier-Sims completion: make every Schreier generator of every level
    /// strip to the identity through the deeper chain. Works deepest-first;
    /// an insertion re-marks every affected level and restarts its pass, so
    /// at the fixpoint each level is verified against its current orbit.
    fn complete(&mut self, dirty: &mut [bool]) {
        loop {
            let Some(pos) = (0..self.degree).rev().find(|&p| dirty[p]) else {
                break;
            };
            let Some(idx) = self
                .level_at
                .get(self.base_order[pos] as usize)
                .and_then(|x| *x)
            else {
                dirty[pos] = false;
                continue;
            };
            if !self.verify_level(idx as usize, dirty) {
                dirty[pos] = false;
            }
        }
    }

    /// Checks every Schreier generator of one level. On the first failure the
    /// residue is inserted (marking the affected levels dirty, this one
    /// included) and the pass aborts with `true`; `false` means the level is
    /// fully verified.
    fn verify_level(&mut self, idx: usize, dirty: &mut [bool]) -> bool {
        let level = &self.levels[idx];
        let pos = level.position;
        let orbit = level.orbit.clone();
        let gens = self.effective_gens(idx);
        let transversal = level.transversal.clone();
        for &q in &orbit {
            let u_q = &transversal[&q];
            for gen in &gens {
                let r = gen.image(q as usize) as u32;
                let u_r_inv = transversal[&r].inverse();
                let s = u_q.compose(gen).compose(&u_r_inv);
                let (residue, stuck) = self.strip_from(&s, pos as isize);
                if !residue.is_identity() {
                    debug_assert!(stuck > pos);
                    self.insert(residue, dirty);
                    return true;
                }
            }
        }
        false
    }

    fn is_ascending(&self) -> bool {
        self.base_order.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip_from(g, -1).0.is_identity()
    }

    /// Generators of the pointwise stabilizer of the first `k` base points:
    /// the own generators of every level at position `>= k`.
    fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        self.levels
            .iter()
            .filter(|l| l.position >= k)
            .flat_map(|l| l.own_gens.iter().cloned())
            .collect()
    }

    /// Lexicographically least element of the right coset `H*g`, where `H` is
    /// the group of this chain. Requires the default ascending base.
    pub fn min_coset_rep(&self, g: &Permutation) -> Permutation {
        debug_assert!(self.is_ascending());
        let mut cur = g.clone();
        for level in &self.levels {
            if level.orbit.len() == 1 {
                continue;
            }
            let &delta = level
                .orbit
                .iter()
                .min_by_key(|&&d| cur.image(d as usize))
                .expect("orbit nonempty");
            if delta as usize != level.point {
                cur = level.transversal[&delta].compose(&cur);
            }
        }
        cur
    }

    fn nontrivial_orbit_sizes(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| l.orbit.len())
            .collect()
    }

    /// Element addressed by one transversal index per nontrivial level,
    /// deepest level applied first.
    fn element_from_indices(&self, indices: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        let mut k = 0;
        for level in &self.levels {
            if level.orbit.len() == 1 {
                continue;
            }
            let q = level.orbit[indices[k]];
            k += 1;
            // acc collects deeper factors on the left: g = u_deep ... u_0.
            acc = level.transversal[&q].compose(&acc);
        }
        debug_assert_eq!(k, indices.len());
        acc
    }
}

/// A finite permutation group with a deterministic stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabilizerChain,
    order: BigUint,
}

impl PermGroup {
    /// The group generated by `gens`, all of one degree.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().ok_or(Error::EmptyGenerators)?.degree();
        Self::with_degree(degree, gens)
    }

    /// Like [`from_generators`](Self::from_generators) but usable with an
    /// empty generator list.
    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        let kept: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabilizerChain::build(degree, &kept, (0..degree as u32).collect())?;
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens: kept,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::with_degree(degree, Vec::new()).expect("trivial group")
    }

    /// The cyclic group generated by one permutation.
    pub fn cyclic_from(g: &Permutation) -> Self {
        Self::with_degree(g.degree(), vec![g.clone()]).expect("cyclic group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Group order as `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.gens.iter().all(|g| self.contains(g))
    }

    /// Lexicographically least element of the right coset `self * g`.
    pub fn min_coset_rep(&self, g: &Permutation) -> Permutation {
        self.chain.min_coset_rep(g)
    }

    /// Stabilizer of a point, as a group in its own right.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::Inconsistency(format!(
                "point {} out of range for degree {}",
                point + 1,
                self.degree
            )));
        }
        let mut base: Vec<u32> = Vec::with_capacity(self.degree);
        base.push(point as u32);
        base.extend((0..self.degree as u32).filter(|&p| p as usize != point));
        let aux = StabilizerChain::build(self.degree, &self.gens, base)?;
        let stab_gens = aux.stabilizer_gens(1);
        let stab = PermGroup::with_degree(self.degree, stab_gens)?;
        let orbit_len = BigUint::from(self.orbit_of(point).len());
        if stab.order() * orbit_len != self.order {
            return Err(Error::Inconsistency(
                "orbit-stabilizer mismatch in point_stabilizer".into(),
            ));
        }
        Ok(stab)
    }

    /// Orbit of a point under the group, in BFS order.
    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let q = orbit[head];
            head += 1;
            for g in &self.gens {
                let r = g.image(q);
                if !seen[r] {
                    seen[r] = true;
                    orbit.push(r);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).len() == self.degree
    }

    /// Iterator over all elements in a fixed, deterministic order.
    /// The identity comes first.
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(&self.chain)
    }

    /// All elements, sorted lexicographically by image table.
    pub fn sorted_elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(n) if n <= bound => {}
            _ => {
                return Err(Error::EnumerationBound {
                    order: self.order.to_string(),
                    bound,
                })
            }
        }
        let mut els: Vec<Permutation> = self.elements().collect();
        els.sort_unstable();
        Ok(els)
    }

    /// Sizes of the nontrivial transversals along the chain; the group order
    /// is their product.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.nontrivial_orbit_sizes()
    }

    /// Element addressed by one index per entry of
    /// [`transversal_sizes`](Self::transversal_sizes); every element has
    /// exactly one address, so uniform indices give uniform elements.
    pub fn element_from_indices(&self, indices: &[usize]) -> Permutation {
        self.chain.element_from_indices(indices)
    }

    /// Whether `sub` is normalized by every generator of `self`.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.gens.iter().all(|g| {
            sub.gens.iter().all(|s| sub.contains(&s.conjugate(g)))
        })
    }

    /// Number of elements of order exactly 2, by exhaustive enumeration.
    pub fn count_involutions(&self, bound: u64) -> Result<u64> {
        match self.order_u64() {
            Some(n) if n <= bound => {}
            _ => {
                return Err(Error::EnumerationBound {
                    order: self.order.to_string(),
                    bound,
                })
            }
        }
        let mut count = 0;
        for g in self.elements() {
            if !g.is_identity() && g.compose(&g).is_identity() {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Order of the intersection of two groups on the same points, by
/// enumerating the smaller one.
pub fn intersection_order(a: &PermGroup, b: &PermGroup, bound: u64) -> Result<u64> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    match small.order_u64() {
        Some(n) if n <= bound => {}
        _ => {
            return Err(Error::EnumerationBound {
                order: small.order().to_string(),
                bound,
            })
        }
    }
    Ok(small.elements().filter(|g| large.contains(g)).count() as u64)
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::with_degree(self.degree, self.gens.clone()).expect("rebuild of valid group")
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree={}, order={})", self.degree, self.order)
    }
}

/// Depth-first walk of the stabilizer chain's transversal products.
pub struct Elements<'a> {
    levels: Vec<&'a Level>,
    indices: Vec<usize>,
    /// `suffix[k]` is the product of transversal elements at levels `>= k`.
    suffix: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let levels: Vec<&Level> = chain.levels.iter().filter(|l| l.orbit.len() > 1).collect();
        let indices = vec![0usize; levels.len()];
        let suffix = vec![Permutation::identity(chain.degree); levels.len() + 1];
        let mut it = Elements {
            levels,
            indices,
            suffix,
            done: false,
        };
        if !it.levels.is_empty() {
            let deepest = it.levels.len() - 1;
            it.recompute_suffix(deepest);
        }
        it
    }

    fn recompute_suffix(&mut self, from: usize) {
        // suffix[k] = suffix[k+1] * u_k, with deeper levels on the left.
        for k in (0..=from).rev() {
            let level = self.levels[k];
            let q = level.orbit[self.indices[k]];
            self.suffix[k] = self.suffix[k + 1].compose(&level.transversal[&q]);
        }
    }
}

impl<'a> Iterator for Elements<'a> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.suffix[0].clone();
        // Odometer: level 0 (shallowest) advances fastest.
        let mut k = 0;
        loop {
            if k == self.levels.len() {
                self.done = true;
                break;
            }
            self.indices[k] += 1;
            if self.indices[k] < self.levels[k].orbit.len() {
                self.recompute_suffix(k);
                break;
            }
            self.indices[k] = 0;
            k += 1;
        }
        Some(out)
    }
}

/// The action of `g` on the right cosets of a subgroup, together with its
/// image and kernel.
pub struct CosetAction {
    /// Canonical (lexicographically least) coset representatives; index 0 is
    /// the subgroup itself.
    pub cosets: Vec<Permutation>,
    /// Images of the group's generators as permutations of coset indices.
    pub gen_images: Vec<Permutation>,
    /// The induced permutation group on coset indices.
    pub image: PermGroup,
    /// The kernel of the action: the core of the subgroup.
    pub kernel: PermGroup,
}

impl CosetAction {
    /// Index of the coset containing `g`.
    pub fn coset_index(&self, h: &PermGroup, g: &Permutation) -> Option<usize> {
        let rep = h.min_coset_rep(g);
        self.cosets.iter().position(|r| *r == rep)
    }

    /// The permutation induced on cosets by an arbitrary group element.
    pub fn induced(&self, h: &PermGroup, g: &Permutation) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.cosets.len());
        let mut index: HashMap<&Permutation, u32> = HashMap::new();
        for (i, rep) in self.cosets.iter().enumerate() {
            index.insert(rep, i as u32);
        }
        for rep in &self.cosets {
            let target = h.min_coset_rep(&rep.compose(g));
            let Some(&i) = index.get(&target) else {
                return Err(Error::Inconsistency(
                    "coset action image left the enumerated coset space".into(),
                ));
            };
            images.push(i);
        }
        Permutation::from_images(images)
    }
}

/// Enumerates the right cosets of `h` in `g` and returns the coset action.
///
/// The kernel comes from a stabilizer chain over the combined
/// (cosets + original points) domain, so it is exact, not sampled.
pub fn coset_action(g: &PermGroup, h: &PermGroup, bound: u64) -> Result<CosetAction> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.degree()));
    }
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup(
            "coset_action requires the second group inside the first".into(),
        ));
    }
    let index_big = g.order() / h.order();
    let index = u64::try_from(&index_big).unwrap_or(u64::MAX);
    if index > bound {
        return Err(Error::IndexBound {
            index,
            bound,
        });
    }
    let index = index as usize;
    let mut cosets: Vec<Permutation> = vec![h.min_coset_rep(&Permutation::identity(g.degree()))];
    let mut seen: HashMap<Permutation, u32> = HashMap::new();
    seen.insert(cosets[0].clone(), 0);
    let mut head = 0;
    while head < cosets.len() {
        let rep = cosets[head].clone();
        head += 1;
        for gen in g.generators() {
            let next = h.min_coset_rep(&rep.compose(gen));
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), cosets.len() as u32);
                cosets.push(next);
            }
        }
    }
    if cosets.len() != index {
        return Err(Error::Inconsistency(format!(
            "enumerated {} cosets, expected index {}",
            cosets.len(),
            index
        )));
    }
    let mut gen_images = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images = Vec::with_capacity(index);
        for rep in &cosets {
            let target = h.min_coset_rep(&rep.compose(gen));
            images.push(seen[&target]);
        }
        gen_images.push(Permutation::from_images(images)?);
    }
    let image = PermGroup::with_degree(index, gen_images.clone())?;

    // Combined domain: coset indices first, original points after. The
    // pointwise stabilizer of the coset block is exactly the kernel.
    let n = g.degree();
    let mut combined_gens = Vec::with_capacity(g.generators().len());
    for (gen, gi) in g.generators().iter().zip(&gen_images) {
        let mut images: Vec<u32> = Vec::with_capacity(index + n);
        images.extend(gi.images().iter().copied());
        images.extend(gen.images().iter().map(|&x| x + index as u32));
        combined_gens.push(Permutation::from_images(images)?);
    }
    let combined = StabilizerChain::build(index + n, &combined_gens, (0..(index + n) as u32).collect())?;
    let kernel_gens: Vec<Permutation> = combined
        .stabilizer_gens(index)
        .into_iter()
        .map(|p| p.restrict(index, n))
        .collect::<Result<_>>()?;
    let kernel = PermGroup::with_degree(n, kernel_gens)?;
    if kernel.order() * image.order() != *g.order() {
        return Err(Error::Inconsistency(
            "kernel and image orders do not multiply to the group order".into(),
        ));
    }
    Ok(CosetAction {
        cosets,
        gen_images,
        image,
        kernel,
    })
}
