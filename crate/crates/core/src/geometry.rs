//! Internal coordinates, the homogeneous B-matrix chain, and the penalty `g`.
//!
//! A conformation is built by multiplying the per-vertex matrices
//! `B_1 B_2 ... B_i` and applying the product to the homogeneous origin. The
//! first three vertices are fixed by `B_1`, `B_2`, `B_3`; every later vertex
//! has two placements, one for each sign of its torsion sine.

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::instance::DmdgpInstance;

/// Torsion cosines may overshoot `[-1, 1]` by this much before extraction fails.
pub const TORSION_COSINE_SLACK: f64 = 1e-9;

/// Sign of the torsion sine at one level of the search tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `sin w = +sqrt(1 - cos^2 w)`, bit `0`.
    Plus,
    /// `sin w = -sqrt(1 - cos^2 w)`, bit `1`.
    Minus,
}

impl Branch {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Branch::Minus
        } else {
            Branch::Plus
        }
    }

    pub fn bit(self) -> bool {
        self == Branch::Minus
    }

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Bond lengths, planar angles and torsion cosines of a chain.
///
/// All accessors take the 1-based index `i` of the vertex the coordinate
/// places: `bond(i)` is `d(i-1,i)`, `angle(i)` is the angle at `v(i-1)`
/// between `v(i-2)` and `v(i)`, `torsion_cosine(i)` is `cos w(i-3,i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalCoords {
    bonds: Vec<f64>,
    angles: Vec<f64>,
    torsion_cosines: Vec<f64>,
}

impl InternalCoords {
    /// Lengths must be `n-1`, `n-2` and `n-3` for some `n >= 4`.
    pub fn new(bonds: Vec<f64>, angles: Vec<f64>, torsion_cosines: Vec<f64>) -> Self {
        assert!(!torsion_cosines.is_empty(), "need at least four vertices");
        assert_eq!(bonds.len(), torsion_cosines.len() + 2);
        assert_eq!(angles.len(), torsion_cosines.len() + 1);
        Self { bonds, angles, torsion_cosines }
    }

    pub fn n(&self) -> usize {
        self.bonds.len() + 1
    }

    pub fn bond(&self, i: usize) -> f64 {
        self.bonds[i - 2]
    }

    pub fn angle(&self, i: usize) -> f64 {
        self.angles[i - 3]
    }

    pub fn torsion_cosine(&self, i: usize) -> f64 {
        self.torsion_cosines[i - 4]
    }

    pub fn bonds(&self) -> &[f64] {
        &self.bonds
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn torsion_cosines(&self) -> &[f64] {
        &self.torsion_cosines
    }

    /// Magnitude of the torsion sine at vertex `i`.
    pub fn torsion_sine_magnitude(&self, i: usize) -> f64 {
        let c = self.torsion_cosine(i);
        (1.0 - c * c).max(0.0).sqrt()
    }
}

/// A 4x4 transform in homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogeneousMatrix(pub Matrix4<f64>);

impl HomogeneousMatrix {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// The point this transform sends the origin to.
    pub fn translation(&self) -> Vector3<f64> {
        let o = self.0 * Vector4::new(0.0, 0.0, 0.0, 1.0);
        Vector3::new(o[0], o[1], o[2])
    }

    pub fn compose(&self, rhs: &HomogeneousMatrix) -> HomogeneousMatrix {
        HomogeneousMatrix(self.0 * rhs.0)
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }
}

/// Generic `B_i` for `i >= 4` from raw internal coordinates.
pub fn torsion_matrix(bond: f64, angle: f64, cos_w: f64, sin_w: f64) -> HomogeneousMatrix {
    let (st, ct) = angle.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        -ct,         -st,         0.0,    -bond * ct,
        st * cos_w,  -ct * cos_w, -sin_w, bond * st * cos_w,
        st * sin_w,  -ct * sin_w, cos_w,  bond * st * sin_w,
        0.0,         0.0,         0.0,    1.0,
    );
    HomogeneousMatrix(m)
}

fn second_matrix(bond: f64) -> HomogeneousMatrix {
    #[rustfmt::skip]
    let m = Matrix4::new(
        -1.0, 0.0, 0.0,  -bond,
        0.0,  1.0, 0.0,  0.0,
        0.0,  0.0, -1.0, 0.0,
        0.0,  0.0, 0.0,  1.0,
    );
    HomogeneousMatrix(m)
}

fn third_matrix(bond: f64, angle: f64) -> HomogeneousMatrix {
    let (st, ct) = angle.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        -ct, -st, 0.0, -bond * ct,
        st,  -ct, 0.0, bond * st,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    );
    HomogeneousMatrix(m)
}

/// `B_i` for vertex `i`; `branch` only matters for `i >= 4`.
pub fn b_matrix(i: usize, internal: &InternalCoords, branch: Branch) -> HomogeneousMatrix {
    assert!(i >= 1 && i <= internal.n(), "level {i} out of range");
    match i {
        1 => HomogeneousMatrix::identity(),
        2 => second_matrix(internal.bond(2)),
        3 => third_matrix(internal.bond(3), internal.angle(3)),
        _ => torsion_matrix(
            internal.bond(i),
            internal.angle(i),
            internal.torsion_cosine(i),
            branch.sign() * internal.torsion_sine_magnitude(i),
        ),
    }
}

/// Running product `B_1 B_2 B_3` and the three fixed points.
pub fn fixed_prefix(internal: &InternalCoords) -> (HomogeneousMatrix, [Vector3<f64>; 3]) {
    let mut q = HomogeneousMatrix::identity();
    let mut points = [Vector3::zeros(); 3];
    for (i, p) in (1..=3).zip(points.iter_mut()) {
        q = q.compose(&b_matrix(i, internal, Branch::Plus));
        *p = q.translation();
    }
    (q, points)
}

/// Ordered points `x_1 .. x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conformation {
    points: Vec<Vector3<f64>>,
}

impl Conformation {
    pub fn new(points: Vec<Vector3<f64>>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Position of vertex `v` (1-based).
    pub fn point(&self, v: usize) -> Vector3<f64> {
        self.points[v - 1]
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn distance(&self, u: usize, v: usize) -> f64 {
        (self.point(u) - self.point(v)).norm()
    }

    /// Largest absolute coordinate difference against `other`.
    pub fn max_deviation(&self, other: &Conformation) -> f64 {
        assert_eq!(self.len(), other.len());
        self.points.iter().zip(&other.points).map(|(a, b)| (a - b).abs().max()).fold(0.0, f64::max)
    }
}

/// Candidate `h(k)`: realizes `bits` on the internal coordinates.
pub fn realize(internal: &InternalCoords, bits: &BitString) -> Result<Conformation> {
    let n = internal.n();
    bits.expect_len(n - 3)?;
    let (mut q, prefix) = fixed_prefix(internal);
    let mut points = Vec::with_capacity(n);
    points.extend_from_slice(&prefix);
    for i in 4..=n {
        q = q.compose(&b_matrix(i, internal, Branch::from_bit(bits.bit(i - 4))));
        points.push(q.translation());
    }
    Ok(Conformation::new(points))
}

/// `g = sum over edges of (|x_u - x_v|^2 - d_uv^2)^2`.
pub fn penalty(conf: &Conformation, inst: &DmdgpInstance) -> f64 {
    assert_eq!(conf.len(), inst.n(), "conformation size does not match instance");
    inst.edges()
        .map(|(u, v, d)| {
            let r = (conf.point(u) - conf.point(v)).norm_squared() - d * d;
            r * r
        })
        .sum()
}

fn required(inst: &DmdgpInstance, i: usize, u: usize, v: usize) -> Result<f64> {
    inst.distance(u, v).ok_or(Error::MissingCliqueEdge { i, u, v })
}

/// Cosine of the planar angle at the middle vertex of a triangle with sides
/// `a` (first leg), `b` (second leg) and `c` (opposite).
pub fn angle_cosine(a: f64, b: f64, c: f64) -> f64 {
    (a * a + b * b - c * c) / (2.0 * a * b)
}

/// Torsion cosine of four consecutive vertices from their six distances.
///
/// Argument order follows vertex pairs of `(a, b, c, d)`:
/// `ab, bc, cd, ac, bd, ad`. Returns `None` when either triangle is degenerate.
pub fn torsion_cosine(ab: f64, bc: f64, cd: f64, ac: f64, bd: f64, ad: f64) -> Option<f64> {
    let (ab2, bc2, cd2, ac2, bd2, ad2) = (ab * ab, bc * bc, cd * cd, ac * ac, bd * bd, ad * ad);
    let d_abc = ab2 + bc2 - ac2;
    let d_bcd = bc2 + bd2 - cd2;
    let left = 4.0 * ab2 * bc2 - d_abc * d_abc;
    let right = 4.0 * bc2 * bd2 - d_bcd * d_bcd;
    if left <= 0.0 || right <= 0.0 {
        return None;
    }
    let numerator = 2.0 * bc2 * (ab2 + bd2 - ad2) - d_abc * d_bcd;
    Some(numerator / (left.sqrt() * right.sqrt()))
}

/// Reads bonds, planar angles and torsion cosines off the clique distances.
pub fn extract_internal(inst: &DmdgpInstance) -> Result<InternalCoords> {
    let n = inst.n();
    let mut bonds = Vec::with_capacity(n - 1);
    let mut angles = Vec::with_capacity(n - 2);
    let mut torsions = Vec::with_capacity(n - 3);

    for i in 2..=n {
        bonds.push(required(inst, i.max(4), i - 1, i)?);
    }
    for i in 3..=n {
        let a = required(inst, i.max(4), i - 2, i - 1)?;
        let b = required(inst, i.max(4), i - 1, i)?;
        let c = required(inst, i.max(4), i - 2, i)?;
        let cos = angle_cosine(a, b, c);
        if !(cos > -1.0 && cos < 1.0) {
            return Err(Error::DegenerateTriple { a: i - 2, b: i - 1, c: i });
        }
        angles.push(cos.acos());
    }
    for i in 4..=n {
        let ab = required(inst, i, i - 3, i - 2)?;
        let bc = required(inst, i, i - 2, i - 1)?;
        let cd = required(inst, i, i - 1, i)?;
        let ac = required(inst, i, i - 3, i - 1)?;
        let bd = required(inst, i, i - 2, i)?;
        let ad = required(inst, i, i - 3, i)?;
        let cos = torsion_cosine(ab, bc, cd, ac, bd, ad).ok_or_else(|| {
            // Identify which of the two triangles collapsed.
            let d_abc = ab * ab + bc * bc - ac * ac;
            if 4.0 * ab * ab * bc * bc - d_abc * d_abc <= 0.0 {
                Error::DegenerateTriple { a: i - 3, b: i - 2, c: i - 1 }
            } else {
                Error::DegenerateTriple { a: i - 2, b: i - 1, c: i }
            }
        })?;
        if cos.abs() > 1.0 + TORSION_COSINE_SLACK || cos.is_nan() {
            return Err(Error::TorsionOutOfRange { i, value: cos });
        }
        torsions.push(cos.clamp(-1.0, 1.0));
    }
    Ok(InternalCoords::new(bonds, angles, torsions))
}
