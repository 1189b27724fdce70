//! Branch-and-Prune over the binary tree of torsion signs, plus the
//! symmetry set `S` and the expansion of one solution into all `2^|S|`.

use std::collections::BTreeSet;

use nalgebra::Vector3;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::geometry::{b_matrix, fixed_prefix, penalty, Branch, Conformation, HomogeneousMatrix, InternalCoords};
use crate::instance::DmdgpInstance;
use crate::oracle::DEFAULT_DELTA;

/// Per-edge distance residual allowed during the search, in angstroms.
pub const DEFAULT_PRUNE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first feasible leaf.
    First,
    /// Enumerate every feasible leaf.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchOrder {
    PlusFirst,
    MinusFirst,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpOptions {
    pub tolerance: f64,
    /// Leaves must also reach `g < accept_penalty` over all edges.
    pub accept_penalty: f64,
    pub mode: SearchMode,
    pub order: BranchOrder,
}

impl Default for BpOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_PRUNE_TOLERANCE,
            accept_penalty: DEFAULT_DELTA,
            mode: SearchMode::All,
            order: BranchOrder::PlusFirst,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub bits: BitString,
    pub conformation: Conformation,
    pub penalty: f64,
}

impl Solution {
    pub fn index(&self) -> u64 {
        self.bits.to_index()
    }
}

/// Solutions sorted by index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolutionSet {
    pub entries: Vec<Solution>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.entries.iter().map(Solution::index).collect()
    }

    pub fn bit_strings(&self) -> Vec<BitString> {
        self.entries.iter().map(|s| s.bits.clone()).collect()
    }
}

struct Search<'a> {
    inst: &'a DmdgpInstance,
    options: BpOptions,
    /// `[plus, minus]` matrices for vertex `i` at `levels[i - 4]`.
    levels: Vec<[HomogeneousMatrix; 2]>,
    /// Pruning edges `(j, d)` ending at vertex `i`, at `prune[i - 4]`.
    prune: Vec<Vec<(usize, f64)>>,
    points: Vec<Vector3<f64>>,
    bits: Vec<bool>,
    found: Vec<Solution>,
    done: bool,
}

impl Search<'_> {
    fn descend(&mut self, q: HomogeneousMatrix, i: usize) {
        if self.done {
            return;
        }
        let n = self.inst.n();
        if i > n {
            let conformation = Conformation::new(self.points.clone());
            let g = penalty(&conformation, self.inst);
            if g < self.options.accept_penalty {
                self.found.push(Solution { bits: BitString::new(self.bits.clone()), conformation, penalty: g });
                if self.options.mode == SearchMode::First {
                    self.done = true;
                }
            }
            return;
        }
        let branches = match self.options.order {
            BranchOrder::PlusFirst => [Branch::Plus, Branch::Minus],
            BranchOrder::MinusFirst => [Branch::Minus, Branch::Plus],
        };
        for branch in branches {
            let b = &self.levels[i - 4][branch.bit() as usize];
            let next = q.compose(b);
            let x = next.translation();
            let feasible = self.prune[i - 4]
                .iter()
                .all(|&(j, d)| ((self.points[j - 1] - x).norm() - d).abs() <= self.options.tolerance);
            if !feasible {
                continue;
            }
            self.points.push(x);
            self.bits.push(branch.bit());
            self.descend(next, i + 1);
            self.points.pop();
            self.bits.pop();
            if self.done {
                return;
            }
        }
    }
}

/// Depth-first search from the fixed `v1 v2 v3`, pruning any branch that
/// misses a long-range distance by more than `options.tolerance`.
pub fn branch_and_prune(inst: &DmdgpInstance, internal: &InternalCoords, options: BpOptions) -> Result<SolutionSet> {
    let n = inst.n();
    assert_eq!(internal.n(), n, "internal coordinates belong to another instance");

    let levels = (4..=n).map(|i| [b_matrix(i, internal, Branch::Plus), b_matrix(i, internal, Branch::Minus)]).collect();
    let mut prune = vec![Vec::new(); n - 3];
    for (u, v, d) in inst.pruning_edges() {
        prune[v - 4].push((u, d));
    }

    let (q, prefix) = fixed_prefix(internal);
    let mut search = Search {
        inst,
        options,
        levels,
        prune,
        points: prefix.to_vec(),
        bits: Vec::with_capacity(n - 3),
        found: Vec::new(),
        done: false,
    };
    search.descend(q, 4);

    let mut entries = search.found;
    if entries.is_empty() {
        return Err(Error::NoSolution);
    }
    entries.sort_by(|a, b| a.bits.cmp(&b.bits));
    Ok(SolutionSet { entries })
}

/// Vertices `v` in `4..=n` with no edge `{u, w}` such that `u + 3 < v <= w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrySet {
    pub vertices: Vec<usize>,
}

impl SymmetrySet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// `2^|S|`, the number of solutions.
    pub fn solution_count(&self) -> u64 {
        1u64 << self.vertices.len()
    }
}

pub fn symmetry_set(inst: &DmdgpInstance) -> SymmetrySet {
    let n = inst.n();
    let mut member = vec![true; n + 1];
    for (u, w, _) in inst.pruning_edges() {
        for flag in &mut member[u + 4..=w] {
            *flag = false;
        }
    }
    SymmetrySet { vertices: (4..=n).filter(|&v| member[v]).collect() }
}

/// All `2^|S|` strings reachable from `bits` by reflecting at symmetry
/// vertices. Reflecting at `v` flips every bit of vertices `>= v`.
pub fn expand_symmetry(bits: &BitString, symmetry: &SymmetrySet) -> BTreeSet<BitString> {
    let count = symmetry.vertices.len();
    (0u64..1 << count)
        .map(|mask| {
            let mut out = bits.clone();
            for (k, &v) in symmetry.vertices.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    out = out.flip_from_vertex(v);
                }
            }
            out
        })
        .collect()
}
