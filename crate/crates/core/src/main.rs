//! Command-line front end: construct groups, certify factorizations,
//! derive skew-morphisms, build rotary maps, evaluate the closed-form
//! number theory, and run the named verification suites.
//!
//! Exit codes: 0 = constructed/verified, 1 = checked and false, 2 = error
//! (parse failures, violated hypotheses, exceeded bounds).

use clap::{Parser, Subcommand, ValueEnum};
use hallmap::descriptor::GroupDescriptor;
use hallmap::error::Error;
use hallmap::factor::{certify_factorization, Factorization};
use hallmap::group::PermGroup;
use hallmap::maps::{self, MapKind};
use hallmap::numth;
use hallmap::perm::Permutation;
use hallmap::skew;
use hallmap::verify;
use hallmap::zoo;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hallmap",
    about = "Group factorizations, skew-morphisms, and vertex-rotary Cayley maps",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a group from a descriptor and report order and generators.
    Group {
        /// Descriptor: alt:n, sym:n, psl:d,q, psigma:d,q0, psl2_11, m11,
        /// m23, cyclic:n, dihedral:n (alias dN), wreath:p.
        descriptor: String,
    },
    /// Certify an exact factorization G = H <k> with <k> cyclic.
    Factorize {
        /// Ambient group descriptor.
        #[arg(long)]
        group: String,
        /// Subgroup H: "std" (standard complement), "stab:i" (stabilizer
        /// of 0-indexed point i), or a descriptor of matching degree.
        #[arg(long, default_value = "std")]
        sub: String,
        /// Generator k: "std", "singer", or an explicit cycle string.
        #[arg(long, default_value = "std")]
        k: String,
        /// Also classify the shape of the factorization's quotient.
        #[arg(long)]
        shape: bool,
    },
    /// Derive the skew-morphism of H induced by a cyclic complement in an
    /// ambient group, and verify its defining axiom exhaustively.
    Skew {
        /// Subgroup descriptor, e.g. d8.
        #[arg(long = "H")]
        h: String,
        /// Ambient group descriptor, e.g. sym:4.
        #[arg(long)]
        via: String,
        /// Explicit complement generator as a cycle string; when omitted
        /// the ambient group is searched for one.
        #[arg(long)]
        k: Option<String>,
    },
    /// Build a vertex-rotary map census or the underlying coset graph.
    Map {
        /// rota (z swaps the faces at an edge), biro (z fixes them), or
        /// graph (underlying coset graph).
        kind: MapKindArg,
        /// Group descriptor.
        #[arg(long)]
        group: String,
        /// Use the involution outside the socle (extends alt:n to sym:n
        /// and pairs psigma with its field automorphism).
        #[arg(long)]
        outer: bool,
        /// Cap on the number of darts (group elements) for map building.
        #[arg(long = "bound-darts", default_value_t = maps::DART_BOUND)]
        bound_darts: u64,
        /// Cap on the number of cosets for graph building.
        #[arg(long = "bound-index", default_value_t = maps::VERTEX_BOUND)]
        bound_index: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed-form orders and coprimality identities.
    Numth {
        #[command(subcommand)]
        op: NumthOp,
    },
    /// Run a named verification suite and report per-item pass/fail.
    Verify {
        /// One of: table1, lemma21, gcd, family, products, catalog.
        suite: String,
        /// Disable sampling; always run the full bijection check.
        #[arg(long)]
        full: bool,
        /// Sample count for decomposition checks too large to enumerate.
        #[arg(long, default_value_t = maps::SAMPLE_COUNT)]
        samples: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKindArg {
    Rota,
    Biro,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum NumthOp {
    /// Group order by closed formula, without building anything.
    Order { descriptor: String },
    /// Cyclic complement order by closed formula.
    E { descriptor: String },
    /// gcd((q^d-1)/(q-1), q^j-1) = 1 for every 1 <= j < d.
    Gcd { d: u32, q: u64 },
    /// Coprime family of fields p^(d_i) over the primes d_i in (d, d^2).
    Family {
        p: u64,
        d: u64,
        #[arg(long, default_value_t = numth::DEFAULT_FAMILY_CUTOFF)]
        cutoff: u64,
    },
    /// PSL(2,2^e) and PSL(2,2^f) can never share one cyclic Hall complement.
    Psl2pair { e: u32, f: u32 },
    /// Whether f is admissible for the solvable wreath family (f mod 6 in {2,4}).
    Solvable { f: u32 },
    /// Pairwise gcd(|T_i|, e_j) = 1 over a list of descriptors.
    Hyp1 { descriptors: Vec<String> },
}

/// What the command printed and how the process should exit.
struct Outcome {
    payload: Value,
    /// Raw text output (DOT); printed instead of the JSON payload.
    text: Option<String>,
    verified: bool,
}

fn ok(payload: Value) -> hallmap::error::Result<Outcome> {
    Ok(Outcome { payload, text: None, verified: true })
}

fn falsified(payload: Value) -> hallmap::error::Result<Outcome> {
    Ok(Outcome { payload, text: None, verified: false })
}

fn big_str(b: &num_bigint::BigUint) -> String {
    b.to_string()
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            match &out.text {
                Some(t) => print!("{}", t),
                None => println!("{}", serde_json::to_string_pretty(&out.payload).unwrap()),
            }
            std::process::exit(if out.verified { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&json!({ "error": e.to_string() })).unwrap());
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> hallmap::error::Result<Outcome> {
    match cli.cmd {
        Cmd::Group { descriptor } => group_cmd(&descriptor),
        Cmd::Factorize { group, sub, k, shape } => factorize_cmd(&group, &sub, &k, shape),
        Cmd::Skew { h, via, k } => skew_cmd(&h, &via, k.as_deref()),
        Cmd::Map { kind, group, outer, bound_darts, bound_index, format } => {
            map_cmd(kind, &group, outer, bound_darts, bound_index, format)
        }
        Cmd::Numth { op } => numth_cmd(op),
        Cmd::Verify { suite, full, samples } => verify_cmd(&suite, full, samples),
    }
}

fn group_cmd(descriptor: &str) -> hallmap::error::Result<Outcome> {
    let desc = GroupDescriptor::parse(descriptor)?;
    let g = zoo::classical_group(&desc)?;
    ok(json!({
        "descriptor": desc.to_string(),
        "degree": g.degree(),
        "order": big_str(g.order()),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    }))
}

/// Resolves --sub and --k into concrete objects inside g.
fn resolve_parts(
    desc: &GroupDescriptor,
    sub: &str,
    k: &str,
) -> hallmap::error::Result<(PermGroup, PermGroup, Permutation)> {
    let std_parts = |need: bool| -> hallmap::error::Result<Option<(PermGroup, PermGroup, Permutation)>> {
        if need {
            zoo::standard_factorization(desc).map(Some)
        } else {
            Ok(None)
        }
    };
    let need_std = sub == "std" || k == "std";
    let std = std_parts(need_std)?;
    let g = match &std {
        Some((g, _, _)) => g.clone(),
        None => zoo::classical_group(desc)?,
    };
    let h = if sub == "std" {
        std.as_ref().unwrap().1.clone()
    } else if let Some(point) = sub.strip_prefix("stab:") {
        let i: usize = point
            .parse()
            .map_err(|_| Error::Descriptor(format!("bad stabilizer point {:?}", point)))?;
        g.point_stabilizer(i)?
    } else {
        let sub_desc = GroupDescriptor::parse(sub)?;
        zoo::classical_group(&sub_desc)?
    };
    let kp = if k == "std" {
        std.as_ref().unwrap().2.clone()
    } else if k == "singer" {
        match *desc {
            GroupDescriptor::Psl { d, q } => zoo::singer_cycle(d, q)?,
            GroupDescriptor::PslSigma { d, q0 } => zoo::singer_cycle(d, q0 * q0)?,
            _ => {
                return Err(Error::Descriptor(format!(
                    "{} has no Singer cycle; give k explicitly",
                    desc
                )))
            }
        }
    } else {
        Permutation::from_cycles(g.degree(), k)?
    };
    Ok((g, h, kp))
}

fn shape_json(s: &skew::Shape) -> Value {
    match s {
        skew::Shape::One { core_order, k_image_order, complement_order } => json!({
            "shape": 1,
            "core_order": big_str(core_order),
            "k_image_order": k_image_order,
            "complement_order": big_str(complement_order),
        }),
        skew::Shape::Two { core_order, factors, k0_order, socle_order, outer_order } => json!({
            "shape": 2,
            "core_order": big_str(core_order),
            "factors": factors.iter().map(|(name, order, e)| json!({
                "name": name,
                "order": big_str(order),
                "e": big_str(e),
            })).collect::<Vec<_>>(),
            "k0_order": big_str(k0_order),
            "socle_order": big_str(socle_order),
            "outer_order": big_str(outer_order),
        }),
    }
}

fn factorization_json(desc: &GroupDescriptor, f: &Factorization) -> Value {
    json!({
        "group": desc.to_string(),
        "degree": f.group().degree(),
        "order": big_str(f.group().order()),
        "h_order": big_str(f.h().order()),
        "k_order": f.k_order(),
        "k": f.k().to_string(),
        "hall": f.is_hall(),
        "core_free": f.is_core_free(),
    })
}

fn factorize_cmd(group: &str, sub: &str, k: &str, shape: bool) -> hallmap::error::Result<Outcome> {
    let desc = GroupDescriptor::parse(group)?;
    let (g, h, kp) = resolve_parts(&desc, sub, k)?;
    match certify_factorization(&g, &h, &kp) {
        Ok(f) => {
            let mut payload = factorization_json(&desc, &f);
            if shape {
                let s = skew::shape_check(&f)?;
                payload["shape"] = shape_json(&s);
            }
            payload["ok"] = json!(true);
            ok(payload)
        }
        Err(Error::NotAFactorization(reason)) => {
            falsified(json!({ "ok": false, "reason": reason }))
        }
        Err(e) => Err(e),
    }
}

fn skew_cmd(h: &str, via: &str, k: Option<&str>) -> hallmap::error::Result<Outcome> {
    let h_desc = GroupDescriptor::parse(h)?;
    let via_desc = GroupDescriptor::parse(via)?;
    let g = zoo::classical_group(&via_desc)?;
    let sub = zoo::classical_group(&h_desc)?;
    if sub.degree() != g.degree() {
        return Err(Error::DegreeMismatch(sub.degree(), g.degree()));
    }
    let fact = match k {
        Some(cycles) => {
            let kp = Permutation::from_cycles(g.degree(), cycles)?;
            certify_factorization(&g, &sub, &kp)?
        }
        None => match search_complement(&g, &sub)? {
            Some(f) => f,
            None => {
                return falsified(json!({
                    "ok": false,
                    "reason": "no cyclic complement generates an exact factorization",
                }))
            }
        },
    };
    match skew::skew_from_factorization(&fact) {
        Ok(s) => ok(json!({
            "H": h_desc.to_string(),
            "via": via_desc.to_string(),
            "k": fact.k().to_string(),
            "order": s.skew_order,
            "trivial": s.is_trivial(),
            "hall": s.is_hall(),
        })),
        Err(Error::NotCoreFree(reason)) => falsified(json!({ "ok": false, "reason": reason })),
        Err(e) => Err(e),
    }
}

/// First element of order |G|/|H| that makes an exact factorization with H.
fn search_complement(
    g: &PermGroup,
    h: &PermGroup,
) -> hallmap::error::Result<Option<Factorization>> {
    const SEARCH_BOUND: u64 = 100_000;
    let g_order = g
        .order_u64()
        .filter(|&n| n <= SEARCH_BOUND)
        .ok_or_else(|| Error::EnumerationBound { order: g.order().to_string(), bound: SEARCH_BOUND })?;
    let h_order = h.order_u64().expect("subgroup of a bounded group");
    if g_order % h_order != 0 {
        return Ok(None);
    }
    let m = g_order / h_order;
    for cand in g.elements() {
        if cand.order() != m {
            continue;
        }
        if let Ok(f) = certify_factorization(g, h, &cand) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn map_cmd(
    kind: MapKindArg,
    group: &str,
    outer: bool,
    bound_darts: u64,
    bound_index: u64,
    format: Format,
) -> hallmap::error::Result<Outcome> {
    let desc = GroupDescriptor::parse(group)?;
    let pair = maps::example_rotary_pair(&desc, outer)?;
    match kind {
        MapKindArg::Rota | MapKindArg::Biro => {
            let mk = match kind {
                MapKindArg::Rota => MapKind::Rotary,
                _ => MapKind::BiRotary,
            };
            let m = maps::build_map_bounded(&pair, mk, bound_darts)?;
            let mut payload = json!({
                "kind": match mk { MapKind::Rotary => "rotary", MapKind::BiRotary => "birotary" },
                "group": desc.to_string(),
                "rho": pair.rho.to_string(),
                "z": pair.z.to_string(),
                "darts": m.dart_count,
                "V": m.vertices,
                "E": m.edges,
                "F": m.faces,
                "chi": m.euler,
                "face_stabilizer_order": m.face_stabilizer_order,
            });
            if let Some(genus) = m.genus {
                payload["genus"] = json!(genus);
            }
            ok(payload)
        }
        MapKindArg::Graph => {
            let cg = maps::coset_graph_bounded(&pair, None, bound_index)?;
            match format {
                Format::Json => ok(json!({
                    "group": desc.to_string(),
                    "n": cg.graph.n,
                    "valency": cg.valency,
                    "edges": cg.graph.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                })),
                Format::Dot => {
                    let labels: Vec<String> = cg.reps.iter().map(|r| r.to_string()).collect();
                    Ok(Outcome {
                        payload: Value::Null,
                        text: Some(maps::graph_dot(&cg.graph, Some(&labels))),
                        verified: true,
                    })
                }
            }
        }
    }
}

fn numth_cmd(op: NumthOp) -> hallmap::error::Result<Outcome> {
    match op {
        NumthOp::Order { descriptor } => {
            let desc = GroupDescriptor::parse(&descriptor)?;
            ok(json!({
                "descriptor": desc.to_string(),
                "order": big_str(&numth::descriptor_order(&desc)?),
            }))
        }
        NumthOp::E { descriptor } => {
            let desc = GroupDescriptor::parse(&descriptor)?;
            ok(json!({
                "descriptor": desc.to_string(),
                "e": big_str(&numth::e_value(&desc)?),
            }))
        }
        NumthOp::Gcd { d, q } => {
            let r = numth::gcd_identity(d, q)?;
            let payload = json!({
                "d": r.d,
                "q": r.q,
                "e": big_str(&r.e),
                "checks": r.checks.iter().map(|(j, g)| json!([j, big_str(g)])).collect::<Vec<_>>(),
                "ok": r.ok,
            });
            if r.ok { ok(payload) } else { falsified(payload) }
        }
        NumthOp::Family { p, d, cutoff } => {
            let r = numth::prime_family_with_cutoff(p, d, cutoff)?;
            let payload = json!({
                "p": r.p,
                "d": r.d,
                "family": r.family,
                "cells": r.checks.len(),
                "ok": r.all_ok,
            });
            if r.all_ok { ok(payload) } else { falsified(payload) }
        }
        NumthOp::Psl2pair { e, f } => {
            let r = numth::psl2_pair_infeasible(e, f)?;
            let payload = json!({
                "e": r.e,
                "f": r.f,
                "gcds": r.gcds.iter().map(big_str).collect::<Vec<_>>(),
                "infeasible": r.infeasible,
            });
            if r.infeasible { ok(payload) } else { falsified(payload) }
        }
        NumthOp::Solvable { f } => {
            let admissible = numth::solvable_f_ok(f);
            let payload = json!({ "f": f, "admissible": admissible });
            if admissible { ok(payload) } else { falsified(payload) }
        }
        NumthOp::Hyp1 { descriptors } => {
            let profiles = descriptors
                .iter()
                .map(|s| GroupDescriptor::parse(s).and_then(|d| numth::profile(&d)))
                .collect::<hallmap::error::Result<Vec<_>>>()?;
            let r = numth::hyp1_compatible(&profiles);
            let mut payload = json!({
                "descriptors": descriptors,
                "e_values": profiles.iter().map(|p| big_str(&p.e)).collect::<Vec<_>>(),
                "compatible": r.compatible,
            });
            if let Some(v) = r.first_violation {
                payload["violation"] = json!({
                    "i": v.i,
                    "j": v.j,
                    "gcd": big_str(&v.gcd),
                });
            }
            if r.compatible { ok(payload) } else { falsified(payload) }
        }
    }
}

fn verify_cmd(suite: &str, full: bool, samples: u64) -> hallmap::error::Result<Outcome> {
    let opts = verify::SuiteOptions { full, samples };
    let report = verify::run_suite_with(suite, opts)?;
    let payload = json!({
        "suite": report.suite,
        "passed": report.passed(),
        "failed": report.failed(),
        "items": report.items.iter().map(|i| json!({
            "name": i.name,
            "pass": i.pass,
            "detail": i.detail,
        })).collect::<Vec<_>>(),
    });
    if report.all_pass() { ok(payload) } else { falsified(payload) }
}
