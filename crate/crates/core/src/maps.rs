//! Rotary pairs, coset graphs, and rotation maps: a group G with a cyclic
//! vertex stabilizer <rho> and an involution z defines a graph on the right
//! cosets of <rho> and a map whose darts are the elements of G. Direct and
//! bi-direct graph products and the product-decomposition verifier for
//! assembled groups live here too.

use crate::descriptor::GroupDescriptor;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::zoo::{self, Assembled};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::collections::{BTreeSet, HashMap, HashSet};

/// Default cap on the number of cosets a graph may have.
pub const VERTEX_BOUND: u64 = 1_000_000;

/// Default cap on |G| when building a rotation map.
pub const DART_BOUND: u64 = 10_000_000;

/// Edge-count threshold above which verify_decomposition switches from the
/// full bijection check to deterministic sampling.
pub const FULL_EDGE_BOUND: u64 = 1_000_000;

/// Default number of random vertex pairs drawn in sampled verification.
pub const SAMPLE_COUNT: u64 = 100_000;

/// A group with a distinguished cyclic-stabilizer generator and an
/// involution that together generate it.
pub struct RotaryPair {
    pub group: PermGroup,
    pub rho: Permutation,
    pub z: Permutation,
    pub rho_order: u64,
}

impl RotaryPair {
    pub fn new(group: PermGroup, rho: Permutation, z: Permutation) -> Result<RotaryPair> {
        if !is_rotary_pair(&group, &rho, &z)? {
            return Err(Error::NotFound(
                "(rho, z) is not a rotary pair: z is not an involution or the pair \
                 generates a proper subgroup"
                    .into(),
            ));
        }
        let rho_order = rho.order();
        Ok(RotaryPair { group, rho, z, rho_order })
    }
}

/// z is a non-identity involution and <rho, z> is all of G.
pub fn is_rotary_pair(g: &PermGroup, rho: &Permutation, z: &Permutation) -> Result<bool> {
    if !g.contains(rho) || !g.contains(z) {
        return Err(Error::NotFound("rho or z lies outside the group".into()));
    }
    if z.is_identity() || !z.compose(z).is_identity() {
        return Ok(false);
    }
    let gen = PermGroup::from_generators(vec![rho.clone(), z.clone()])?;
    Ok(gen.order() == g.order())
}

/// An undirected simple graph on indexed vertices, optionally 2-colored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: u32,
    /// Unordered edges stored as (min, max) pairs.
    pub edges: BTreeSet<(u32, u32)>,
    /// Optional 2-coloring; when present every edge must cross it.
    pub bipartition: Option<Vec<u8>>,
}

impl Graph {
    pub fn new(n: u32, edges: BTreeSet<(u32, u32)>, bipartition: Option<Vec<u8>>) -> Result<Graph> {
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Inconsistency(format!("loop at vertex {}", a)));
            }
            if a > b || b >= n {
                return Err(Error::Inconsistency(format!("bad edge ({}, {})", a, b)));
            }
        }
        if let Some(parts) = &bipartition {
            if parts.len() != n as usize {
                return Err(Error::Inconsistency("bipartition length mismatch".into()));
            }
            for &(a, b) in &edges {
                if parts[a as usize] == parts[b as usize] {
                    return Err(Error::Inconsistency(format!(
                        "edge ({}, {}) does not cross the bipartition",
                        a, b
                    )));
                }
            }
        }
        Ok(Graph { n, edges, bipartition })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n as usize];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d
    }
}

/// Adjacency oracle for the double coset <rho> z <rho>: x and y are
/// adjacent iff y * x^-1 lands in it, tested by reducing from the left
/// with z^-1 * rho^-i and asking for membership in <rho>.
pub struct DoubleCosetTester {
    reducers: Vec<Permutation>,
    rho_powers: HashSet<Permutation>,
}

impl DoubleCosetTester {
    pub fn new(rho: &Permutation, z: &Permutation) -> DoubleCosetTester {
        let ell = rho.order();
        let mut rho_powers = HashSet::with_capacity(ell as usize);
        let mut reducers = Vec::with_capacity(ell as usize);
        let z_inv = z.inverse();
        let rho_inv = rho.inverse();
        let mut pow = Permutation::identity(rho.degree());
        let mut inv_pow = Permutation::identity(rho.degree());
        for _ in 0..ell {
            rho_powers.insert(pow.clone());
            reducers.push(z_inv.compose(&inv_pow));
            pow = pow.compose(rho);
            inv_pow = inv_pow.compose(&rho_inv);
        }
        DoubleCosetTester { reducers, rho_powers }
    }

    /// Whether d itself lies in the double coset.
    pub fn contains(&self, d: &Permutation) -> bool {
        self.reducers
            .iter()
            .any(|u| self.rho_powers.contains(&u.compose(d)))
    }

    /// Whether the cosets of x and y are adjacent.
    pub fn adjacent(&self, x: &Permutation, y: &Permutation) -> bool {
        self.contains(&y.compose(&x.inverse()))
    }
}

/// A coset graph together with its canonical vertex representatives.
pub struct CosetGraph {
    pub graph: Graph,
    /// Lexicographically minimal representative of each vertex's coset.
    pub reps: Vec<Permutation>,
    /// The common vertex degree.
    pub valency: u32,
}

/// The graph on the right cosets of <rho> in G with x ~ y iff
/// y x^-1 lies in <rho> z <rho>.
pub fn coset_graph(pair: &RotaryPair) -> Result<CosetGraph> {
    coset_graph_bounded(pair, None, VERTEX_BOUND)
}

/// As [`coset_graph`], with the vertices 2-colored by membership in the
/// given subgroup (which must contain <rho> for the coloring to be
/// well-defined on cosets).
pub fn coset_graph_bounded(
    pair: &RotaryPair,
    parts_by: Option<&PermGroup>,
    bound: u64,
) -> Result<CosetGraph> {
    let rho_group = PermGroup::cyclic_from(&pair.rho);
    if let Some(s) = parts_by {
        if !s.contains(&pair.rho) {
            return Err(Error::Inconsistency(
                "coloring subgroup does not contain rho, so cosets have no color".into(),
            ));
        }
    }
    let index_big = pair.group.order() / rho_group.order();
    match index_big.to_u64() {
        Some(v) if v <= bound => {}
        _ => {
            return Err(Error::IndexBound {
                index: index_big.to_u64().unwrap_or(u64::MAX),
                bound,
            })
        }
    }

    // Enumerate coset representatives by right multiplication.
    let mut reps = vec![rho_group.min_coset_rep(&Permutation::identity(pair.group.degree()))];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(reps[0].clone(), 0);
    let mut at = 0;
    while at < reps.len() {
        let cur = reps[at].clone();
        for gen in pair.group.generators() {
            let rep = rho_group.min_coset_rep(&cur.compose(gen));
            if !index.contains_key(&rep) {
                index.insert(rep.clone(), reps.len() as u32);
                reps.push(rep);
            }
        }
        at += 1;
    }
    if BigUint::from(reps.len()) != index_big {
        return Err(Error::SelfCheck(format!(
            "enumerated {} cosets, expected {}",
            reps.len(),
            index_big
        )));
    }

    // Neighbors of <rho>x are the cosets of z rho^j x; the rho^i prefix of
    // the double coset is absorbed by the coset itself.
    let ell = pair.rho_order;
    let mut z_rho_j = Vec::with_capacity(ell as usize);
    let mut pow = Permutation::identity(pair.group.degree());
    for _ in 0..ell {
        z_rho_j.push(pair.z.compose(&pow));
        pow = pow.compose(&pair.rho);
    }
    let mut edges = BTreeSet::new();
    let mut valency = None;
    for (v, x) in reps.iter().enumerate() {
        let v = v as u32;
        let mut nbrs = BTreeSet::new();
        for w in &z_rho_j {
            let rep = rho_group.min_coset_rep(&w.compose(x));
            let u = index[&rep];
            if u == v {
                return Err(Error::Inconsistency(
                    "coset graph has a loop: z lies in <rho>".into(),
                ));
            }
            nbrs.insert(u);
        }
        match valency {
            None => valency = Some(nbrs.len() as u32),
            Some(d) if d == nbrs.len() as u32 => {}
            Some(d) => {
                return Err(Error::SelfCheck(format!(
                    "graph is not regular: saw degrees {} and {}",
                    d,
                    nbrs.len()
                )))
            }
        }
        for u in nbrs {
            edges.insert((v.min(u), v.max(u)));
        }
    }
    let bipartition = parts_by.map(|s| {
        reps.iter()
            .map(|r| if s.contains(r) { 0u8 } else { 1u8 })
            .collect()
    });
    let graph = Graph::new(reps.len() as u32, edges, bipartition)?;
    Ok(CosetGraph { graph, reps, valency: valency.unwrap_or(0) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Rotary,
    BiRotary,
}

/// Vertex/edge/face census of the map whose darts are the elements of G,
/// partitioned by right cosets of <rho>, <z>, and the face subgroup
/// (<rho z> for rotary maps, <z, z^rho> for bi-rotary ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMap {
    pub kind: MapKind,
    pub dart_count: u64,
    pub vertices: u64,
    pub edges: u64,
    pub faces: u64,
    pub face_stabilizer_order: u64,
    pub euler: i64,
    /// Only for rotary maps: (2 - euler) / 2.
    pub genus: Option<i64>,
}

pub fn build_map(pair: &RotaryPair, kind: MapKind) -> Result<RotationMap> {
    build_map_bounded(pair, kind, DART_BOUND)
}

pub fn build_map_bounded(pair: &RotaryPair, kind: MapKind, bound: u64) -> Result<RotationMap> {
    let darts = match pair.group.order_u64() {
        Some(n) if n <= bound => n,
        _ => {
            return Err(Error::EnumerationBound {
                order: pair.group.order().to_string(),
                bound,
            })
        }
    };
    let face_stabilizer_order = match kind {
        MapKind::Rotary => pair.rho.compose(&pair.z).order(),
        MapKind::BiRotary => {
            let conj = pair.z.conjugate(&pair.rho);
            let stab = PermGroup::from_generators(vec![pair.z.clone(), conj])?;
            stab.order_u64().ok_or_else(|| {
                Error::EnumerationBound { order: stab.order().to_string(), bound }
            })?
        }
    };
    for (what, d) in [
        ("rho order", pair.rho_order),
        ("edge", 2),
        ("face stabilizer", face_stabilizer_order),
    ] {
        if darts % d != 0 {
            return Err(Error::Inconsistency(format!(
                "{} {} does not divide the dart count {}",
                what, d, darts
            )));
        }
    }
    let vertices = darts / pair.rho_order;
    let edges = darts / 2;
    let faces = darts / face_stabilizer_order;
    let euler = vertices as i64 - edges as i64 + faces as i64;
    let genus = match kind {
        MapKind::Rotary => {
            if euler % 2 != 0 {
                return Err(Error::Inconsistency(format!(
                    "rotary map has odd Euler characteristic {}",
                    euler
                )));
            }
            Some((2 - euler) / 2)
        }
        MapKind::BiRotary => None,
    };
    Ok(RotationMap {
        kind,
        dart_count: darts,
        vertices,
        edges,
        faces,
        face_stabilizer_order,
        euler,
        genus,
    })
}

/// Tensor product: pairs are adjacent iff both coordinates are.
pub fn graph_direct_product(a: &Graph, b: &Graph) -> Graph {
    let n = a.n * b.n;
    let mut edges = BTreeSet::new();
    let id = |u: u32, v: u32| u * b.n + v;
    for &(u1, v1) in &a.edges {
        for &(u2, v2) in &b.edges {
            for (x, y) in [(id(u1, u2), id(v1, v2)), (id(u1, v2), id(v1, u2))] {
                edges.insert((x.min(y), x.max(y)));
            }
        }
    }
    Graph { n, edges, bipartition: None }
}

/// The vertex list of the bi-direct product: pairs with equal colors, in
/// lexicographic order.
pub fn bidirect_vertex_pairs(a: &Graph, b: &Graph) -> Result<Vec<(u32, u32)>> {
    let (pa, pb) = match (&a.bipartition, &b.bipartition) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::Inconsistency(
                "bi-direct product needs a bipartition on both graphs".into(),
            ))
        }
    };
    let mut pairs = Vec::new();
    for u in 0..a.n {
        for v in 0..b.n {
            if pa[u as usize] == pb[v as usize] {
                pairs.push((u, v));
            }
        }
    }
    Ok(pairs)
}

/// Bi-direct product of two bipartite graphs: only same-color pairs are
/// kept, and they are adjacent iff both coordinates are.
pub fn graph_bidirect_product(a: &Graph, b: &Graph) -> Result<Graph> {
    let pairs = bidirect_vertex_pairs(a, b)?;
    let index: HashMap<(u32, u32), u32> =
        pairs.iter().copied().zip(0..).collect();
    let pa = a.bipartition.as_ref().expect("checked by bidirect_vertex_pairs");
    let mut edges = BTreeSet::new();
    for &(u1, v1) in &a.edges {
        for &(u2, v2) in &b.edges {
            for ((x1, x2), (y1, y2)) in
                [((u1, u2), (v1, v2)), ((u1, v2), (v1, u2))]
            {
                if let (Some(&x), Some(&y)) = (index.get(&(x1, x2)), index.get(&(y1, y2))) {
                    edges.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    let parts = pairs.iter().map(|&(u, _)| pa[u as usize]).collect();
    Graph::new(pairs.len() as u32, edges, Some(parts))
}

/// The stock generating pair for one simple (or extended) group: the
/// cyclic complement generator together with an involution, inner
/// (outer = false) or outside the socle (outer = true).
pub fn example_rotary_pair(desc: &GroupDescriptor, outer: bool) -> Result<RotaryPair> {
    if !outer {
        let (group, rho, z) = zoo::rotary_generators(desc)?;
        return RotaryPair::new(group, rho, z);
    }
    match *desc {
        GroupDescriptor::Alt(n) => {
            let group = zoo::sym_group(n)?;
            let rho = Permutation::from_cycles(
                n as usize,
                &format!(
                    "({})",
                    (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
                ),
            )?;
            let z = Permutation::from_cycles(n as usize, "(1,2)")?;
            RotaryPair::new(group, rho, z)
        }
        GroupDescriptor::PslSigma { d, q0 } => {
            let ctx = zoo::psl_sigma(d, q0)?;
            let rho = zoo::singer_cycle(d, q0 * q0)?;
            let z = zoo::sigma_outer_involution(&ctx, &rho)?;
            RotaryPair::new(ctx.group, rho, z)
        }
        _ => Err(Error::Descriptor(format!(
            "{} has no outer involution for a rotary pair",
            desc
        ))),
    }
}

/// How a decomposition was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full {
        vertices: u64,
        edges: u64,
    },
    Sampled {
        pair_samples: u64,
        forward_samples: u64,
        backward_samples: u64,
    },
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub factors: Vec<String>,
    pub twisted: usize,
    pub rho_order: u64,
    pub mode: VerifyMode,
}

impl DecompositionReport {
    pub fn sampled(&self) -> bool {
        matches!(self.mode, VerifyMode::Sampled { .. })
    }
}

pub fn verify_decomposition(asm: &Assembled) -> Result<DecompositionReport> {
    verify_decomposition_with(asm, FULL_EDGE_BOUND, SAMPLE_COUNT)
}

/// Checks that the coset graph of the assembled group with respect to
/// (rho, z) is the product of the factor coset graphs (bi-direct across
/// the twisted prefix, direct across the rest) under the coordinatewise
/// coset map. Runs the full explicit bijection when the big graph has at
/// most `full_edge_bound` edges, otherwise draws deterministic samples.
pub fn verify_decomposition_with(
    asm: &Assembled,
    full_edge_bound: u64,
    samples: u64,
) -> Result<DecompositionReport> {
    let factors: Vec<String> = asm.factors.iter().map(|f| f.desc.to_string()).collect();
    let total_edges = asm.group.order() / 2u32;
    let rho_order = asm.rho.order();
    let full = total_edges.to_u64().map(|e| e <= full_edge_bound).unwrap_or(false);
    let mode = if full {
        verify_full(asm)?
    } else {
        verify_sampled(asm, samples)?
    };
    Ok(DecompositionReport { factors, twisted: asm.s, rho_order, mode })
}

/// Per-factor machinery shared by both verification modes.
struct FactorSide {
    offset: usize,
    width: usize,
    tester: DoubleCosetTester,
    rho_group: PermGroup,
}

fn factor_sides(asm: &Assembled) -> Vec<FactorSide> {
    asm.factors
        .iter()
        .map(|f| FactorSide {
            offset: f.offset,
            width: f.degree,
            tester: DoubleCosetTester::new(&f.rho, &f.z),
            rho_group: PermGroup::cyclic_from(&f.rho),
        })
        .collect()
}

fn verify_full(asm: &Assembled) -> Result<VerifyMode> {
    let pair = RotaryPair::new(asm.group.clone(), asm.rho.clone(), asm.z.clone())?;
    let big = coset_graph(&pair)?;

    // Factor graphs, bipartitioned by the socle when twisted.
    let mut factor_graphs = Vec::new();
    for f in &asm.factors {
        let p = RotaryPair::new(f.component.clone(), f.rho.clone(), f.z.clone())?;
        let colored = if f.twisted { Some(&f.t) } else { None };
        factor_graphs.push(coset_graph_bounded(&p, colored, VERTEX_BOUND)?);
    }

    // Counting the product without materializing it: vertex tuples carry
    // equal colors across the twisted prefix (each twisted factor graph
    // splits evenly), and every product edge comes from one choice of
    // factor edge per coordinate with an orientation per direct
    // coordinate, up to one global reversal.
    let s = asm.s;
    let mut expected_vertices: u64 = 1;
    let mut expected_edges: u64 = 1;
    for (i, fg) in factor_graphs.iter().enumerate() {
        expected_vertices *= u64::from(fg.graph.n);
        expected_edges *= fg.graph.edge_count() as u64;
        if i >= s {
            expected_edges *= 2;
        }
        if fg.graph.bipartition.as_ref().map_or(false, |p| {
            2 * p.iter().filter(|&&c| c == 0).count() != p.len()
        }) {
            return Err(Error::SelfCheck(format!(
                "factor {} graph does not split evenly",
                i
            )));
        }
    }
    expected_vertices >>= s.saturating_sub(1);
    if s == 0 {
        expected_edges /= 2;
    }

    // The coordinatewise map on vertices: parity-consistent and injective.
    let sides = factor_sides(asm);
    let mut rep_index: Vec<HashMap<&Permutation, u32>> = Vec::new();
    for fg in &factor_graphs {
        rep_index.push(fg.reps.iter().zip(0..).collect());
    }
    let mut phi = Vec::with_capacity(big.reps.len());
    let mut seen = HashSet::new();
    for rep in &big.reps {
        let mut key = Vec::with_capacity(sides.len());
        let mut parity = None;
        for ((side, fg), idx) in sides.iter().zip(&factor_graphs).zip(&rep_index) {
            let local = rep.restrict(side.offset, side.width)?;
            let canon = side.rho_group.min_coset_rep(&local);
            let &v = idx
                .get(&canon)
                .ok_or_else(|| Error::SelfCheck("restriction is not a factor coset".into()))?;
            if let Some(parts) = &fg.graph.bipartition {
                let c = parts[v as usize];
                match parity {
                    None => parity = Some(c),
                    Some(p) if p == c => {}
                    Some(_) => {
                        return Err(Error::SelfCheck(
                            "image tuple violates the parity constraint".into(),
                        ))
                    }
                }
            }
            key.push(v);
        }
        if !seen.insert(key.clone()) {
            return Err(Error::SelfCheck(
                "coordinatewise vertex map is not injective".into(),
            ));
        }
        phi.push(key);
    }
    if big.reps.len() as u64 != expected_vertices {
        return Err(Error::SelfCheck(format!(
            "vertex counts differ: {} cosets vs {} product tuples",
            big.reps.len(),
            expected_vertices
        )));
    }

    // Every coset-graph edge must be adjacent in every coordinate; with
    // matching counts and an injective vertex map that makes the
    // coordinatewise map an isomorphism onto the product.
    for &(a, b) in &big.graph.edges {
        let (x, y) = (&phi[a as usize], &phi[b as usize]);
        for ((&xa, &ya), fg) in x.iter().zip(y.iter()).zip(&factor_graphs) {
            if !fg.graph.has_edge(xa, ya) {
                return Err(Error::SelfCheck(format!(
                    "edge ({}, {}) does not map to a product edge",
                    a, b
                )));
            }
        }
    }
    if big.graph.edge_count() as u64 != expected_edges {
        return Err(Error::SelfCheck(format!(
            "edge counts differ: {} in the coset graph vs {} in the product",
            big.graph.edge_count(),
            expected_edges
        )));
    }
    Ok(VerifyMode::Full {
        vertices: big.reps.len() as u64,
        edges: big.graph.edge_count() as u64,
    })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_element(g: &PermGroup, state: &mut u64) -> Permutation {
    let sizes = g.transversal_sizes();
    let idx: Vec<usize> = sizes
        .iter()
        .map(|&s| (splitmix64(state) % s as u64) as usize)
        .collect();
    g.element_from_indices(&idx)
}

fn verify_sampled(asm: &Assembled, samples: u64) -> Result<VerifyMode> {
    let sides = factor_sides(asm);
    let big = DoubleCosetTester::new(&asm.rho, &asm.z);
    let total = asm.group.degree();
    let mut state: u64 = 0x5EED_CA11_E7;

    let product_adjacent = |x: &Permutation, y: &Permutation| -> Result<bool> {
        for side in &sides {
            let a = x.restrict(side.offset, side.width)?;
            let b = y.restrict(side.offset, side.width)?;
            if !side.tester.adjacent(&a, &b) {
                return Ok(false);
            }
        }
        Ok(true)
    };

    // Uniform pairs: the coordinatewise equivalence must agree with the
    // double-coset test in the big group.
    let pair_samples = samples;
    for i in 0..pair_samples {
        let x = random_element(&asm.group, &mut state);
        let y = random_element(&asm.group, &mut state);
        let lhs = big.adjacent(&x, &y);
        let rhs = product_adjacent(&x, &y)?;
        if lhs != rhs {
            return Err(Error::SelfCheck(format!(
                "sample {}: big-graph adjacency {} but coordinatewise adjacency {}",
                i, lhs, rhs
            )));
        }
    }

    // Forward edges: a known neighbor in the big graph must be adjacent
    // coordinatewise.
    let forward_samples = (samples / 10).max(1);
    let mut rho_pows = Vec::with_capacity(asm.rho.order() as usize);
    let mut pow = Permutation::identity(total);
    for _ in 0..asm.rho.order() {
        rho_pows.push(pow.clone());
        pow = pow.compose(&asm.rho);
    }
    for i in 0..forward_samples {
        let x = random_element(&asm.group, &mut state);
        let a = (splitmix64(&mut state) % rho_pows.len() as u64) as usize;
        let b = (splitmix64(&mut state) % rho_pows.len() as u64) as usize;
        let y = rho_pows[a]
            .compose(&asm.z)
            .compose(&rho_pows[b])
            .compose(&x);
        if !product_adjacent(&x, &y)? {
            return Err(Error::SelfCheck(format!(
                "forward sample {}: constructed neighbor is not coordinatewise adjacent",
                i
            )));
        }
    }

    // Backward edges: a coordinatewise-constructed product edge must pull
    // back to an adjacent pair in the big group.
    let backward_samples = (samples / 10).max(1);
    for i in 0..backward_samples {
        let sigma = splitmix64(&mut state) % 2 == 1 && asm.s > 0;
        let mut x = Permutation::identity(total);
        let mut y = Permutation::identity(total);
        for (fi, f) in asm.factors.iter().enumerate() {
            let mut gx = random_element(&f.t, &mut state);
            if sigma && fi < asm.s {
                gx = f.z.compose(&gx);
            }
            let ell = f.rho.order();
            let a = splitmix64(&mut state) % ell;
            let b = splitmix64(&mut state) % ell;
            let gy = f
                .rho
                .pow(a as i64)
                .compose(&f.z)
                .compose(&f.rho.pow(b as i64))
                .compose(&gx);
            x = x.compose(&gx.shift(f.offset, total));
            y = y.compose(&gy.shift(f.offset, total));
        }
        if !asm.group.contains(&x) || !asm.group.contains(&y) {
            return Err(Error::SelfCheck(format!(
                "backward sample {}: assembled tuple left the group",
                i
            )));
        }
        if !big.adjacent(&x, &y) {
            return Err(Error::SelfCheck(format!(
                "backward sample {}: product edge does not pull back to the big graph",
                i
            )));
        }
    }
    Ok(VerifyMode::Sampled { pair_samples, forward_samples, backward_samples })
}

/// Certificate that the assembled group's rotary construction is a Cayley
/// map: the product of per-factor point stabilizers (extended by the
/// diagonal involution when twisted) is a complement to <rho> acting
/// regularly on the vertices, is Hall, and is core-free.
#[derive(Clone, Debug)]
pub struct CayleyCertificate {
    pub h_order: BigUint,
    pub vertex_count: BigUint,
    pub hall: bool,
    pub rho_core_free: bool,
    pub h_core_free: bool,
    pub rho_in_socle: bool,
    pub socle_index: BigUint,
    /// Per factor: the point its involution and stabilizer fix.
    pub base_points: Vec<usize>,
}

pub fn hall_cayley_certificate(asm: &Assembled) -> Result<CayleyCertificate> {
    let total = asm.group.degree();
    let mut gens = Vec::new();
    let mut base_points = Vec::new();
    for f in &asm.factors {
        let b = f
            .z
            .fixed_points()
            .into_iter()
            .min()
            .ok_or_else(|| Error::NotFound("factor involution is fixed-point-free".into()))?;
        base_points.push(f.offset + b);
        let stab = f.t.point_stabilizer(b)?;
        for g in stab.generators() {
            gens.push(g.shift(f.offset, total));
        }
    }
    if let Some(w) = &asm.outer {
        gens.push(w.clone());
    }
    let h = PermGroup::with_degree(total, gens)?;
    let fact = crate::factor::certify_factorization(&asm.group, &h, &asm.rho)?;
    let act = crate::group::coset_action(&asm.group, &h, asm.rho.order())?;
    Ok(CayleyCertificate {
        h_order: h.order().clone(),
        vertex_count: asm.group.order() / asm.rho.order(),
        hall: fact.is_hall(),
        rho_core_free: fact.is_core_free(),
        h_core_free: act.kernel.is_trivial(),
        rho_in_socle: asm.socle.contains(&asm.rho),
        socle_index: asm.group.order() / asm.socle.order(),
        base_points,
    })
}

/// DOT rendering with optional vertex labels.
pub fn graph_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph cosets {\n");
    for v in 0..g.n {
        match labels.and_then(|l| l.get(v as usize)) {
            Some(l) => out.push_str(&format!("  {} [label=\"{}\"];\n", v, l)),
            None => out.push_str(&format!("  {};\n", v)),
        }
    }
    for &(a, b) in &g.edges {
        out.push_str(&format!("  {} -- {};\n", a, b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::GroupDescriptor as D;

    fn a5_pair() -> RotaryPair {
        let g = zoo::alt_group(5).unwrap();
        let rho = Permutation::from_cycles(5, "(1,2,3,4,5)").unwrap();
        let z = Permutation::from_cycles(5, "(1,2)(3,4)").unwrap();
        RotaryPair::new(g, rho, z).unwrap()
    }

    fn s5_pair() -> RotaryPair {
        let g = zoo::sym_group(5).unwrap();
        let rho = Permutation::from_cycles(5, "(1,2,3,4,5)").unwrap();
        let z = Permutation::from_cycles(5, "(1,2)").unwrap();
        RotaryPair::new(g, rho, z).unwrap()
    }

    #[test]
    fn rotary_pair_checks() {
        let g = zoo::alt_group(5).unwrap();
        let rho = Permutation::from_cycles(5, "(1,2,3,4,5)").unwrap();
        let z = Permutation::from_cycles(5, "(1,2)(3,4)").unwrap();
        assert!(is_rotary_pair(&g, &rho, &z).unwrap());
        // An involution normalizing <rho> only generates a dihedral group.
        let psl = zoo::psl(2, 4).unwrap();
        let singer = zoo::singer_cycle(2, 4).unwrap();
        let norm = psl
            .elements()
            .find(|e| {
                e.order() == 2 && {
                    let c = singer.conjugate(e);
                    let pows = PermGroup::cyclic_from(&singer);
                    pows.contains(&c)
                }
            })
            .unwrap();
        assert!(!is_rotary_pair(&psl, &singer, &norm).unwrap());
        let outside = Permutation::from_cycles(5, "(1,2)").unwrap();
        assert!(is_rotary_pair(&psl, &singer, &outside).is_err());
    }

    #[test]
    fn smallest_coset_graph_is_an_edge() {
        let g = zoo::sym_group(3).unwrap();
        let rho = Permutation::from_cycles(3, "(1,2,3)").unwrap();
        let z = Permutation::from_cycles(3, "(1,2)").unwrap();
        let pair = RotaryPair::new(g, rho, z).unwrap();
        let cg = coset_graph(&pair).unwrap();
        assert_eq!(cg.graph.n, 2);
        assert_eq!(cg.graph.edge_count(), 1);
    }

    #[test]
    fn alt5_coset_graph_census() {
        let cg = coset_graph(&a5_pair()).unwrap();
        assert_eq!(cg.graph.n, 12);
        assert_eq!(cg.valency, 5);
        assert_eq!(cg.graph.edge_count(), 30);
    }

    #[test]
    fn psl211_coset_graph_census() {
        let pair = example_rotary_pair(&D::Psl2_11, false).unwrap();
        let cg = coset_graph(&pair).unwrap();
        assert_eq!(cg.graph.n, 60);
        assert_eq!(cg.valency, 11);
        assert_eq!(cg.graph.edge_count(), 330);
    }

    #[test]
    fn coset_graph_is_vertex_transitive() {
        let pair = a5_pair();
        let cg = coset_graph(&pair).unwrap();
        let rho_group = PermGroup::cyclic_from(&pair.rho);
        let index: HashMap<&Permutation, u32> =
            cg.reps.iter().zip(0..).collect();
        for gen in pair.group.generators() {
            for &(a, b) in &cg.graph.edges {
                let ia = index[&rho_group.min_coset_rep(&cg.reps[a as usize].compose(gen))];
                let ib = index[&rho_group.min_coset_rep(&cg.reps[b as usize].compose(gen))];
                assert!(cg.graph.has_edge(ia, ib));
            }
        }
    }

    #[test]
    fn map_census_matches_known_surfaces() {
        let m = build_map(&a5_pair(), MapKind::Rotary).unwrap();
        assert_eq!((m.vertices, m.edges, m.faces), (12, 30, 20));
        assert_eq!(m.euler, 2);
        assert_eq!(m.genus, Some(0));
        assert_eq!(m.face_stabilizer_order, 3);

        let b = build_map(&a5_pair(), MapKind::BiRotary).unwrap();
        assert_eq!(b.faces, 6);
        assert_eq!(b.face_stabilizer_order, 10);
        assert_eq!(b.euler, -12);
        assert_eq!(b.genus, None);

        let s = build_map(&s5_pair(), MapKind::Rotary).unwrap();
        assert_eq!((s.vertices, s.edges, s.faces), (24, 60, 30));
        assert_eq!(s.euler, -6);
        assert_eq!(s.genus, Some(4));
        assert_eq!(s.face_stabilizer_order, 4);
    }

    #[test]
    fn darts_project_onto_coset_graph_edges() {
        let pair = a5_pair();
        let cg = coset_graph(&pair).unwrap();
        let rho_group = PermGroup::cyclic_from(&pair.rho);
        let index: HashMap<&Permutation, u32> =
            cg.reps.iter().zip(0..).collect();
        let mut projected = BTreeSet::new();
        for g in pair.group.elements() {
            let v = index[&rho_group.min_coset_rep(&g)];
            let u = index[&rho_group.min_coset_rep(&pair.z.compose(&g))];
            assert_ne!(u, v);
            projected.insert((u.min(v), u.max(v)));
        }
        assert_eq!(projected, cg.graph.edges);
    }

    fn path(n: u32, cyclic: bool) -> Graph {
        let mut edges = BTreeSet::new();
        for i in 0..n - 1 {
            edges.insert((i, i + 1));
        }
        if cyclic {
            edges.insert((0, n - 1));
        }
        let parts = (0..n).map(|i| (i % 2) as u8).collect();
        Graph::new(n, edges, Some(parts)).unwrap()
    }

    #[test]
    fn direct_product_examples() {
        let k2 = path(2, false);
        let p = graph_direct_product(&k2, &k2);
        assert_eq!(p.n, 4);
        assert_eq!(p.edges.iter().copied().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);

        let c4 = path(4, true);
        let q = graph_direct_product(&c4, &k2);
        assert_eq!(q.n, 8);
        assert_eq!(q.edge_count(), 8);
        assert!(q.degrees().iter().all(|&d| d == 2));

        let k1 = Graph::new(1, BTreeSet::new(), None).unwrap();
        assert_eq!(graph_direct_product(&c4, &k1).edge_count(), 0);
    }

    #[test]
    fn bidirect_product_examples() {
        let k2 = path(2, false);
        let p = graph_bidirect_product(&k2, &k2).unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.edge_count(), 1);

        let c6 = path(6, true);
        let q = graph_bidirect_product(&c6, &k2).unwrap();
        assert_eq!(q.n, 6);
        assert_eq!(q.edge_count(), 6);
        assert!(q.degrees().iter().all(|&d| d == 2));

        // Two disjoint edges, colored crosswise.
        let two_k2 = Graph::new(
            4,
            [(0, 1), (2, 3)].into_iter().collect(),
            Some(vec![0, 1, 0, 1]),
        )
        .unwrap();
        let r = graph_bidirect_product(&two_k2, &k2).unwrap();
        assert_eq!(r.n, 4);
        assert_eq!(r.edge_count(), 2);
        assert!(r.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn outer_pairs() {
        let p = example_rotary_pair(&D::Alt(5), true).unwrap();
        assert_eq!(p.group.order_u64(), Some(120));
        assert!(!zoo::alt_group(5).unwrap().contains(&p.z));

        let p = example_rotary_pair(&D::PslSigma { d: 2, q0: 2 }, true).unwrap();
        assert_eq!(p.group.order_u64(), Some(120));
        assert_eq!(p.rho_order, 5);
    }

    #[test]
    fn decomposition_full_small_product() {
        let asm = zoo::assemble(&[
            (D::Psl { d: 2, q: 4 }, false),
            (D::Psl { d: 3, q: 2 }, false),
        ])
        .unwrap();
        let report = verify_decomposition(&asm).unwrap();
        assert_eq!(report.rho_order, 35);
        assert!(!report.sampled());
        assert_eq!(
            report.mode,
            VerifyMode::Full { vertices: 288, edges: 5040 }
        );
    }

    #[test]
    fn decomposition_single_factor_is_identity() {
        let asm = zoo::assemble(&[(D::Psl { d: 3, q: 2 }, false)]).unwrap();
        let report = verify_decomposition(&asm).unwrap();
        assert!(matches!(report.mode, VerifyMode::Full { vertices: 24, edges: 84 }));
    }

    #[test]
    fn decomposition_sampled_smoke() {
        // Force the sampled path on a case small enough to be instant.
        let asm = zoo::assemble(&[
            (D::Psl { d: 2, q: 4 }, false),
            (D::Psl { d: 3, q: 2 }, false),
        ])
        .unwrap();
        let report = verify_decomposition_with(&asm, 100, 500).unwrap();
        assert!(report.sampled());
    }

    #[test]
    fn cayley_certificate_for_small_product() {
        let asm = zoo::assemble(&[
            (D::Psl { d: 2, q: 4 }, false),
            (D::Psl { d: 3, q: 2 }, false),
        ])
        .unwrap();
        let cert = hall_cayley_certificate(&asm).unwrap();
        assert_eq!(cert.h_order, crate::numth::big(288));
        assert_eq!(cert.vertex_count, crate::numth::big(288));
        assert!(cert.hall);
        assert!(cert.rho_core_free);
        assert!(cert.h_core_free);
        assert!(cert.rho_in_socle);
        assert_eq!(cert.socle_index, crate::numth::big(1));
    }

    #[test]
    fn dot_export_shape() {
        let k2 = path(2, false);
        let dot = graph_dot(&k2, Some(&["a".into(), "b".into()]));
        assert!(dot.contains("graph cosets"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("label=\"a\""));
    }
}
