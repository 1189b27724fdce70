//! DMDGP instances: model, validation, the JSON document format and seeded
//! generators with a known ground truth.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::fmt::Write as _;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::geometry::{fixed_prefix, torsion_matrix, Conformation, InternalCoords};

/// Largest distance NMR experiments report, in angstroms.
pub const NMR_DISTANCE_CEILING: f64 = 6.0;

/// Bond lengths drawn by the generators, in angstroms.
pub const BOND_RANGE: (f64, f64) = (1.0, 1.8);

/// Planar angles drawn by the generators, in radians.
pub const ANGLE_RANGE: (f64, f64) = (PI / 3.0, 2.0 * PI / 3.0);

/// Torsions with a smaller `|sin w|` are redrawn.
pub const MIN_TORSION_SINE: f64 = 1e-3;

const TORSION_ATTEMPTS: usize = 256;
const CHAIN_ATTEMPTS: usize = 10_000;

/// Weighted graph `G = (V, E, d)` with vertices `1..=n` in DMDGP order.
#[derive(Clone, Debug, PartialEq)]
pub struct DmdgpInstance {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl DmdgpInstance {
    /// Builds an instance from `(u, v, d)` triples with `u < v`.
    ///
    /// Structural checks only; clique and triangle rules are left to
    /// [`validate`].
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewVertices(n));
        }
        let mut map = BTreeMap::new();
        for (index, (u, v, d)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(Error::SelfLoop { index, vertex: u });
            }
            if u == 0 || u > v || v > n {
                return Err(Error::VertexOutOfRange { index, u, v, n });
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::NonPositiveWeight { index, u, v, weight: d });
            }
            if map.insert((u, v), d).is_some() {
                return Err(Error::DuplicateEdge { index, u, v });
            }
        }
        Ok(Self { n, edges: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of candidate conformations, `2^(n-3)`.
    pub fn candidate_count(&self) -> u64 {
        1u64.checked_shl((self.n - 3) as u32).unwrap_or(u64::MAX)
    }

    /// Weight of `{u, v}` in either orientation.
    pub fn distance(&self, u: usize, v: usize) -> Option<f64> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.get(&key).copied()
    }

    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &d)| (u, v, d))
    }

    /// Edges `{v_j, v_i}` with `j < i - 3`, the ones that prune the search tree.
    pub fn pruning_edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges().filter(|&(u, v, _)| u + 3 < v)
    }

    pub fn with_weight(&self, u: usize, v: usize, d: f64) -> Result<Self> {
        let key = if u < v { (u, v) } else { (v, u) };
        let mut edges = self.edges.clone();
        edges.insert(key, d);
        Self::new(self.n, edges.into_iter().map(|((u, v), d)| (u, v, d)))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let key = if u < v { (u, v) } else { (v, u) };
        let mut out = self.clone();
        out.edges.remove(&key);
        out
    }
}

/// Every pair inside the clique `{v_(i-3), .., v_i}`.
pub fn clique_pairs(i: usize) -> [(usize, usize); 6] {
    [(i - 3, i - 2), (i - 3, i - 1), (i - 3, i), (i - 2, i - 1), (i - 2, i), (i - 1, i)]
}

/// All pairs with `|u - v| <= 3` for an `n`-vertex chain.
pub fn clique_topology(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|v| (v.saturating_sub(3).max(1)..v).map(move |u| (u, v))).collect()
}

/// Edge set of the seven-vertex worked example, with `S = {4, 7}`.
#[rustfmt::skip]
pub fn example_topology() -> Vec<(usize, usize)> {
    vec![
        (1, 2), (1, 3), (1, 4), (1, 6),
        (2, 3), (2, 4), (2, 5),
        (3, 4), (3, 5), (3, 6),
        (4, 5), (4, 6), (4, 7),
        (5, 6), (5, 7),
        (6, 7),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Clique,
    Triangle,
    Ceiling,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Clique => "clique",
            Rule::Triangle => "triangle",
            Rule::Ceiling => "ceiling",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(usize),
    Edge(usize, usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Vertex(v) => write!(f, "v{v}"),
            Location::Edge(u, v) => write!(f, "{{v{u}, v{v}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
    pub location: Location,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "[{}] {} at {}", v.rule.id(), v.message, v.location)?;
        }
        Ok(())
    }
}

fn strict_triangle(a: f64, b: f64, c: f64) -> bool {
    a + b > c && a + c > b && b + c > a
}

/// Checks the discretization cliques, strict triangle inequalities on every
/// consecutive triple, and the distance ceiling.
pub fn validate(inst: &DmdgpInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let n = inst.n();

    for i in 4..=n {
        for (u, v) in clique_pairs(i) {
            if inst.distance(u, v).is_none() {
                violations.push(Violation {
                    rule: Rule::Clique,
                    message: format!("clique i={i} incomplete: missing {{v{u}, v{v}}}"),
                    location: Location::Edge(u, v),
                });
            }
        }
    }

    // Triple (a, a+1, a+2) is reported at i = a + 3, the clique it opens.
    for a in 1..=n - 2 {
        let sides = (inst.distance(a, a + 1), inst.distance(a + 1, a + 2), inst.distance(a, a + 2));
        if let (Some(x), Some(y), Some(z)) = sides {
            if !strict_triangle(x, y, z) {
                violations.push(Violation {
                    rule: Rule::Triangle,
                    message: format!("triangle inequality not strict at i={} (v{}, v{}, v{})", a + 3, a, a + 1, a + 2),
                    location: Location::Vertex(a + 1),
                });
            }
        }
    }

    for (u, v, d) in inst.edges() {
        if d > NMR_DISTANCE_CEILING {
            violations.push(Violation {
                rule: Rule::Ceiling,
                message: format!("distance {d} exceeds the {NMR_DISTANCE_CEILING} angstrom ceiling"),
                location: Location::Edge(u, v),
            });
        }
    }

    ValidationReport { violations }
}

/// Sign choices and coordinates of the conformation an instance was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth {
    pub bits: BitString,
    pub conformation: Conformation,
}

/// An instance file: the graph plus an optional ground truth.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceDocument {
    pub instance: DmdgpInstance,
    pub ground_truth: Option<GroundTruth>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    ground_truth: Option<RawGroundTruth>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroundTruth {
    bits: String,
    coords: Vec<[f64; 3]>,
}

/// Parses an instance document.
pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    let instance = DmdgpInstance::new(raw.n, raw.edges)?;
    let ground_truth = match raw.ground_truth {
        None => None,
        Some(gt) => {
            let bits: BitString = gt.bits.parse()?;
            bits.expect_len(raw.n - 3)?;
            if gt.coords.len() != raw.n {
                return Err(Error::Format(format!(
                    "ground_truth.coords has {} points, expected {}",
                    gt.coords.len(),
                    raw.n
                )));
            }
            let points = gt.coords.iter().map(|c| Vector3::new(c[0], c[1], c[2])).collect();
            Some(GroundTruth { bits, conformation: Conformation::new(points) })
        }
    };
    Ok(InstanceDocument { instance, ground_truth })
}

/// Formats `x` in positional notation with 17 significant digits, which
/// round-trips every finite `f64`.
pub fn format_decimal(x: f64) -> String {
    assert!(x.is_finite(), "cannot serialize {x}");
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) < digits.len() - 1 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("{}{}.0", digits, "0".repeat(exp as usize + 1 - digits.len()))
    };
    format!("{sign}{body}")
}

impl InstanceDocument {
    /// Canonical JSON form: edges sorted by `(u, v)`, LF newlines, trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let inst = &self.instance;
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"n\": {},", inst.n()).unwrap();
        writeln!(out, "  \"edges\": [").unwrap();
        let m = inst.edge_count();
        for (k, (u, v, d)) in inst.edges().enumerate() {
            let sep = if k + 1 < m { "," } else { "" };
            writeln!(out, "    [{u}, {v}, {}]{sep}", format_decimal(d)).unwrap();
        }
        match &self.ground_truth {
            None => writeln!(out, "  ]").unwrap(),
            Some(gt) => {
                writeln!(out, "  ],").unwrap();
                writeln!(out, "  \"ground_truth\": {{").unwrap();
                writeln!(out, "    \"bits\": \"{}\",", gt.bits).unwrap();
                writeln!(out, "    \"coords\": [").unwrap();
                let pts = gt.conformation.points();
                for (k, p) in pts.iter().enumerate() {
                    let sep = if k + 1 < pts.len() { "," } else { "" };
                    writeln!(
                        out,
                        "      [{}, {}, {}]{sep}",
                        format_decimal(p.x),
                        format_decimal(p.y),
                        format_decimal(p.z)
                    )
                    .unwrap();
                }
                writeln!(out, "    ]").unwrap();
                writeln!(out, "  }}").unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Output of the generators, including the internal coordinates drawn.
#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: DmdgpInstance,
    pub ground_truth: GroundTruth,
    pub internal: InternalCoords,
    /// Torsion angles `w(i-3,i)` for `i = 4..=n`, in `[0, 2pi)`.
    pub torsions: Vec<f64>,
}

impl Generated {
    pub fn document(&self) -> InstanceDocument {
        InstanceDocument { instance: self.instance.clone(), ground_truth: Some(self.ground_truth.clone()) }
    }
}

enum TorsionPolicy<'a> {
    /// Any torsion; the bit is read off its sine.
    Free,
    /// Torsion sines must carry the given signs.
    Signs(&'a BitString),
}

/// Grows a chain vertex by vertex, redrawing a torsion while it places `v_i`
/// closer than the shortest bond to an earlier vertex, or while a required
/// long-range edge would exceed the NMR ceiling.
fn grow_chain(
    n: usize,
    rng: &mut ChaCha8Rng,
    policy: TorsionPolicy<'_>,
    required_long: &[(usize, usize)],
) -> (InternalCoords, Vec<f64>, Conformation) {
    for _ in 0..CHAIN_ATTEMPTS {
        let bonds: Vec<f64> = (0..n - 1).map(|_| rng.random_range(BOND_RANGE.0..=BOND_RANGE.1)).collect();
        let angles: Vec<f64> = (0..n - 2).map(|_| rng.random_range(ANGLE_RANGE.0..=ANGLE_RANGE.1)).collect();
        let min_bond = bonds.iter().copied().fold(f64::INFINITY, f64::min);

        // Provisional torsions only fix the prefix; B_1..B_3 ignore them.
        let provisional = InternalCoords::new(bonds.clone(), angles.clone(), vec![1.0; n - 3]);
        let (mut q, prefix) = fixed_prefix(&provisional);
        let mut points: Vec<Vector3<f64>> = prefix.to_vec();
        let mut cosines = Vec::with_capacity(n - 3);
        let mut torsions = Vec::with_capacity(n - 3);

        let mut complete = true;
        for i in 4..=n {
            let mut placed = false;
            for _ in 0..TORSION_ATTEMPTS {
                let mut w = rng.random_range(0.0..TAU);
                if let TorsionPolicy::Signs(bits) = &policy {
                    // Fold onto the half-turn matching the requested sine sign.
                    w %= PI;
                    if bits.bit(i - 4) {
                        w += PI;
                    }
                }
                let (sin_w, cos_w) = w.sin_cos();
                if sin_w.abs() < MIN_TORSION_SINE {
                    continue;
                }
                let cand_q = q.compose(&torsion_matrix(bonds[i - 2], angles[i - 3], cos_w, sin_w));
                let x = cand_q.translation();
                let clash = points[..i - 3].iter().any(|p| (p - x).norm() < min_bond);
                let too_far = required_long
                    .iter()
                    .filter(|&&(_, v)| v == i)
                    .any(|&(u, _)| (points[u - 1] - x).norm() > NMR_DISTANCE_CEILING);
                if clash || too_far {
                    continue;
                }
                q = cand_q;
                points.push(x);
                cosines.push(cos_w);
                torsions.push(w);
                placed = true;
                break;
            }
            if !placed {
                complete = false;
                break;
            }
        }
        if complete {
            let internal = InternalCoords::new(bonds, angles, cosines);
            return (internal, torsions, Conformation::new(points));
        }
    }
    panic!("could not grow a {n}-vertex chain in {CHAIN_ATTEMPTS} attempts");
}

fn bits_from_torsions(torsions: &[f64]) -> BitString {
    BitString::new(torsions.iter().map(|w| w.sin() < 0.0).collect())
}

/// Random instance with a known solution, deterministic in `seed`.
///
/// All clique pairs are emitted; every other pair within the NMR ceiling is
/// kept with probability `long_edge_prob`.
pub fn generate_detailed(n: usize, seed: u64, long_edge_prob: f64) -> Generated {
    assert!(n >= 4, "an instance needs at least 4 vertices");
    assert!((0.0..=1.0).contains(&long_edge_prob), "long_edge_prob must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (internal, torsions, conformation) = grow_chain(n, &mut rng, TorsionPolicy::Free, &[]);

    let mut edges = Vec::new();
    for v in 2..=n {
        for u in 1..v {
            let d = conformation.distance(u, v);
            let keep = if u + 3 >= v {
                true
            } else {
                // Draw for every long pair so the stream does not depend on distances.
                let coin = rng.random_bool(long_edge_prob);
                coin && d <= NMR_DISTANCE_CEILING
            };
            if keep {
                edges.push((u, v, d));
            }
        }
    }
    let instance = DmdgpInstance::new(n, edges).expect("generated edges are well formed");
    let bits = bits_from_torsions(&torsions);
    Generated { instance, ground_truth: GroundTruth { bits, conformation }, internal, torsions }
}

pub fn generate(n: usize, seed: u64, long_edge_prob: f64) -> (DmdgpInstance, GroundTruth) {
    let g = generate_detailed(n, seed, long_edge_prob);
    (g.instance, g.ground_truth)
}

/// Weights a fixed edge set from a seeded conformation realized with `ground_bits`.
pub fn generate_from_topology_detailed(
    edges: &[(usize, usize)],
    ground_bits: &BitString,
    seed: u64,
) -> Result<Generated> {
    let mut normalized = Vec::with_capacity(edges.len());
    for (index, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Err(Error::SelfLoop { index, vertex: u });
        }
        normalized.push(if u < v { (u, v) } else { (v, u) });
    }
    let n = normalized.iter().map(|&(_, v)| v).max().unwrap_or(0);
    if n < 4 {
        return Err(Error::TooFewVertices(n));
    }
    for i in 4..=n {
        for (u, v) in clique_pairs(i) {
            if !normalized.contains(&(u, v)) {
                return Err(Error::MissingCliqueEdge { i, u, v });
            }
        }
    }
    ground_bits.expect_len(n - 3)?;

    let long: Vec<(usize, usize)> = normalized.iter().copied().filter(|&(u, v)| u + 3 < v).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (internal, torsions, conformation) = grow_chain(n, &mut rng, TorsionPolicy::Signs(ground_bits), &long);

    let weighted = normalized.iter().map(|&(u, v)| (u, v, conformation.distance(u, v)));
    let instance = DmdgpInstance::new(n, weighted)?;
    Ok(Generated {
        instance,
        ground_truth: GroundTruth { bits: ground_bits.clone(), conformation },
        internal,
        torsions,
    })
}

pub fn generate_from_topology(
    edges: &[(usize, usize)],
    ground_bits: &BitString,
    seed: u64,
) -> Result<(DmdgpInstance, GroundTruth)> {
    generate_from_topology_detailed(edges, ground_bits, seed).map(|g| (g.instance, g.ground_truth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{penalty, realize};
    use proptest::prelude::*;

    #[test]
    fn example_document_parses() {
        let mut text = String::from("{\"n\": 7, \"edges\": [");
        let edges: Vec<String> = example_topology().iter().map(|(u, v)| format!("[{u}, {v}, 1.5]")).collect();
        text.push_str(&edges.join(", "));
        text.push_str("]}");
        let doc = parse_instance(&text).unwrap();
        assert_eq!(doc.instance.n(), 7);
        assert_eq!(doc.instance.edge_count(), 16);
        assert!(doc.ground_truth.is_none());
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = parse_instance(r#"{"n": 4, "edges": [[2, 2, 1.0]]}"#).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { vertex: 2, .. }), "{err}");
    }

    #[test]
    fn negative_weight_is_rejected() {
        let err = parse_instance(r#"{"n": 4, "edges": [[1, 2, -1.0]]}"#).unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight { u: 1, v: 2, .. }), "{err}");
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let err = parse_instance(r#"{"n": 4, "edges": [[1, 2, 1.0], [1, 2, 1.1]]}"#).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { index: 1, .. }), "{err}");
    }

    #[test]
    fn malformed_document_reports_position() {
        let err = parse_instance("{\"n\": 4,\n \"edges\": [[1, 2]]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn missing_clique_edge_is_reported() {
        let (inst, _) = generate(6, 3, 0.0);
        let report = validate(&inst.without_edge(1, 4));
        assert!(!report.ok());
        assert!(report.violations[0].message.starts_with("clique i=4 incomplete"));
        assert_eq!(report.violations[0].location, Location::Edge(1, 4));
    }

    #[test]
    fn collinear_triple_is_reported() {
        let inst =
            DmdgpInstance::new(4, [(1, 2, 2.0), (2, 3, 3.0), (1, 3, 5.0), (1, 4, 4.0), (2, 4, 3.0), (3, 4, 2.0)])
                .unwrap();
        let report = validate(&inst);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, Rule::Triangle);
        assert!(report.violations[0].message.contains("triangle inequality not strict at i=4"));
    }

    #[test]
    fn ceiling_is_enforced() {
        let (inst, _) = generate(7, 1, 0.0);
        let bad = inst.with_weight(1, 7, 6.5).unwrap();
        let report = validate(&bad);
        assert!(report.violations.iter().any(|v| v.rule == Rule::Ceiling));
    }

    #[test]
    fn decimals_keep_seventeen_digits() {
        assert_eq!(format_decimal(1.5), "1.5000000000000000");
        assert_eq!(format_decimal(-0.25), "-0.25000000000000000");
        assert_eq!(format_decimal(123.0), "123.00000000000000");
        assert_eq!(format_decimal(1e20), "100000000000000000000.0");
        assert_eq!(format_decimal(0.0), "0.0");
        let tiny = 1.234e-7;
        assert_eq!(format_decimal(tiny).parse::<f64>().unwrap(), tiny);
    }

    #[test]
    fn four_vertices_have_only_clique_edges() {
        for seed in 0..5 {
            let (inst, _) = generate(4, seed, 1.0);
            assert_eq!(inst.edge_count(), 6);
            assert!(validate(&inst).ok());
        }
    }

    #[test]
    fn generated_ground_truth_is_consistent() {
        for seed in 0..20 {
            let g = generate_detailed(9, seed, 0.5);
            assert!(validate(&g.instance).ok(), "{}", validate(&g.instance));
            let conf = realize(&g.internal, &g.ground_truth.bits).unwrap();
            assert!(conf.max_deviation(&g.ground_truth.conformation) < 1e-12);
            assert!(penalty(&g.ground_truth.conformation, &g.instance) < 1e-10);
        }
    }

    #[test]
    fn generated_weights_respect_bounds() {
        for seed in 0..20 {
            let g = generate_detailed(10, seed, 1.0);
            let min_bond = g.internal.bonds().iter().copied().fold(f64::INFINITY, f64::min);
            assert!(min_bond >= BOND_RANGE.0);
            for (_, _, d) in g.instance.edges() {
                assert!(d <= NMR_DISTANCE_CEILING);
                assert!(d >= min_bond - 1e-12, "{d} < {min_bond}");
            }
            for w in &g.torsions {
                assert!(w.sin().abs() >= MIN_TORSION_SINE);
            }
        }
    }

    #[test]
    fn topology_generation_honors_bits_and_edges() {
        let bits: BitString = "0101".parse().unwrap();
        let (inst, gt) = generate_from_topology(&example_topology(), &bits, 1).unwrap();
        assert_eq!(inst.edge_count(), 16);
        assert_eq!(gt.bits, bits);
        assert!(validate(&inst).ok());
        assert!(penalty(&gt.conformation, &inst) < 1e-10);
    }

    #[test]
    fn topology_generation_requires_cliques() {
        let mut edges = example_topology();
        edges.retain(|&e| e != (2, 5));
        let err = generate_from_topology(&edges, &"0000".parse().unwrap(), 1).unwrap_err();
        assert!(matches!(err, Error::MissingCliqueEdge { i: 5, u: 2, v: 5 }));
    }

    #[test]
    fn clique_topology_counts() {
        assert_eq!(clique_topology(4).len(), 6);
        assert_eq!(clique_topology(7).len(), 15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn serialization_round_trips(n in 4usize..11, seed in any::<u64>(), p in 0.0f64..=1.0) {
            let g = generate_detailed(n, seed, p);
            let doc = g.document();
            let text = doc.to_json();
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.to_json(), text);
        }

        #[test]
        fn generation_is_deterministic(n in 4usize..9, seed in any::<u64>()) {
            let a = generate_detailed(n, seed, 0.7).document().to_json();
            let b = generate_detailed(n, seed, 0.7).document().to_json();
            prop_assert_eq!(a, b);
        }
    }
}
