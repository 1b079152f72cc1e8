//! Finite-dimensional `G`-graded algebras over `Q` given by structure
//! constants, the twisted tensor construction `F[G] (x) B`, and the exact
//! structural checks run on them.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement, SignTable};
use crate::linalg::{
    self, format_rational, is_zero_vector, parse_rational, qi, unit_vector, zero_matrix,
    zero_vector, Matrix, Subspace, Vector, Q,
};
use crate::ring::Ring;

/// `basis_i * basis_j = sum_k coeff * basis_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra {
    name: String,
    dim: usize,
    degrees: Vec<GroupElement>,
    constants: Vec<StructureConstant>,
    // products[i * dim + j] = nonzero (k, coeff)
    products: Vec<Vec<(usize, Q)>>,
}

impl GradedAlgebra {
    /// Validates indices, duplicates and grading compatibility. Zero
    /// coefficients are dropped.
    pub fn new(
        name: impl Into<String>,
        degrees: Vec<GroupElement>,
        constants: Vec<StructureConstant>,
    ) -> Result<Self> {
        let name = name.into();
        let dim = degrees.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut seen = BTreeMap::new();
        for c in constants.into_iter() {
            if c.i >= dim || c.j >= dim || c.k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index out of range in ({}, {}, {}) for dim {dim}",
                    c.i, c.j, c.k
                )));
            }
            if seen.contains_key(&(c.i, c.j, c.k)) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate structure constant ({}, {}, {})",
                    c.i, c.j, c.k
                )));
            }
            if !c.coeff.is_zero() && degrees[c.k] != degrees[c.i] * degrees[c.j] {
                return Err(Error::InvalidAlgebra(format!(
                    "grading violated at ({}, {}, {}): {} * {} != {}",
                    c.i, c.j, c.k, degrees[c.i], degrees[c.j], degrees[c.k]
                )));
            }
            seen.insert((c.i, c.j, c.k), c.coeff);
        }
        let constants: Vec<StructureConstant> = seen
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j, k), coeff)| StructureConstant { i, j, k, coeff })
            .collect();
        let mut products = vec![Vec::new(); dim * dim];
        for c in &constants {
            products[c.i * dim + c.j].push((c.k, c.coeff.clone()));
        }
        Ok(GradedAlgebra {
            name,
            dim,
            degrees,
            constants,
            products,
        })
    }

    /// Trivially graded algebra.
    pub fn ungraded(name: impl Into<String>, dim: usize, constants: Vec<StructureConstant>) -> Result<Self> {
        Self::new(name, vec![GroupElement::E; dim], constants)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> GroupElement {
        self.degrees[i]
    }

    pub fn constants(&self) -> &[StructureConstant] {
        &self.constants
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.degrees.iter().all(|g| g.is_identity())
    }

    pub fn has_zero_product(&self) -> bool {
        self.constants.is_empty()
    }

    /// Nonzero `(k, coeff)` with `basis_i * basis_j = sum coeff basis_k`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.products[i * self.dim + j]
    }

    /// Indices of basis elements of degree `g`.
    pub fn component(&self, g: GroupElement) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.degrees[i] == g).collect()
    }

    pub fn check_len(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, u: &[Q], v: &[Q]) -> Result<Vector> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.multiply_unchecked(u, v))
    }

    pub(crate) fn multiply_unchecked(&self, u: &[Q], v: &[Q]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let prods = &self.products[i * self.dim + j];
                if prods.is_empty() {
                    continue;
                }
                let uv = ui * vj;
                for (k, c) in prods {
                    out[*k] += &uv * c;
                }
            }
        }
        out
    }

    /// Homogeneous component of `v` in degree `g`.
    pub fn project(&self, v: &[Q], g: GroupElement) -> Vector {
        v.iter()
            .enumerate()
            .map(|(i, x)| if self.degrees[i] == g { x.clone() } else { Q::zero() })
            .collect()
    }

    /// Degree of `v` if it is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, v: &[Q]) -> Option<GroupElement> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }

    /// Structure constants mapped into `ring`, each multiplied by `scale`.
    pub fn structure_table<R: Ring>(&self, ring: &R, scale: &Q) -> Result<StructureTable<R>> {
        let mut products = Vec::with_capacity(self.dim * self.dim);
        for prods in &self.products {
            let mut mapped = Vec::with_capacity(prods.len());
            for (k, c) in prods {
                let el = ring.from_rational(&(c * scale))?;
                if !ring.is_zero(&el) {
                    mapped.push((*k, el));
                }
            }
            products.push(mapped);
        }
        Ok(StructureTable {
            dim: self.dim,
            products,
        })
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: self.name.clone(),
            dim: self.dim,
            degrees: self.degrees.iter().map(|g| [g.i, g.j]).collect(),
            structure: self
                .constants
                .iter()
                .map(|c| (c.i, c.j, c.k, format_rational(&c.coeff)))
                .collect(),
        }
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        if spec.degrees.len() != spec.dim {
            return Err(Error::InvalidAlgebra(format!(
                "dim is {} but {} degrees given",
                spec.dim,
                spec.degrees.len()
            )));
        }
        let degrees = spec
            .degrees
            .iter()
            .map(|[i, j]| GroupElement::new(*i, *j))
            .collect::<Result<Vec<_>>>()?;
        let constants = spec
            .structure
            .iter()
            .map(|(i, j, k, c)| {
                Ok(StructureConstant {
                    i: *i,
                    j: *j,
                    k: *k,
                    coeff: parse_rational(c)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::new(spec.name.clone(), degrees, constants)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AlgebraSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// On-disk algebra description. Indices are 0-based; coefficients are
/// strings `"n"` or `"n/d"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub degrees: Vec<[u8; 2]>,
    #[serde(rename = "struct")]
    pub structure: Vec<(usize, usize, usize, String)>,
}

/// Structure constants materialized in an evaluation ring.
#[derive(Clone, Debug)]
pub struct StructureTable<R: Ring> {
    dim: usize,
    products: Vec<Vec<(usize, R::El)>>,
}

impl<R: Ring> StructureTable<R> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn multiply(&self, ring: &R, u: &[R::El], v: &[R::El]) -> Vec<R::El> {
        let mut out = vec![ring.zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ring.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if ring.is_zero(vj) {
                    continue;
                }
                let prods = &self.products[i * self.dim + j];
                if prods.is_empty() {
                    continue;
                }
                let uv = ring.mul(ui, vj);
                for (k, c) in prods {
                    ring.mul_add_assign(&mut out[*k], &uv, c);
                }
            }
        }
        out
    }
}

fn sc(i: usize, j: usize, k: usize, c: i64) -> StructureConstant {
    StructureConstant { i, j, k, coeff: qi(c) }
}

/// `sl_2` on the basis `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2_factory() -> GradedAlgebra {
    let (e, h, f) = (0, 1, 2);
    let constants = vec![
        sc(h, e, e, 2),
        sc(e, h, e, -2),
        sc(h, f, f, -2),
        sc(f, h, f, 2),
        sc(e, f, h, 1),
        sc(f, e, h, -1),
    ];
    GradedAlgebra::ungraded("sl2", 3, constants).expect("sl2 constants are valid")
}

/// `sl_n` for `n` in `{2, 3}` on the basis: `E_ij` (`i < j`, row-major),
/// then `H_i = E_ii - E_{i+1,i+1}`, then `E_ij` (`i > j`, row-major).
pub fn sln_factory(n: usize) -> Result<GradedAlgebra> {
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!("sl_n factory supports n in {{2,3}}, got {n}")));
    }
    let mut basis: Vec<Vec<Vec<i64>>> = Vec::new();
    let unit = |i: usize, j: usize| {
        let mut m = vec![vec![0i64; n]; n];
        m[i][j] = 1;
        m
    };
    for i in 0..n {
        for j in i + 1..n {
            basis.push(unit(i, j));
        }
    }
    for i in 0..n - 1 {
        let mut m = vec![vec![0i64; n]; n];
        m[i][i] = 1;
        m[i + 1][i + 1] = -1;
        basis.push(m);
    }
    for i in 0..n {
        for j in 0..i {
            basis.push(unit(i, j));
        }
    }
    let dim = basis.len();
    let index_of_unit = |r: usize, c: usize| -> usize {
        basis
            .iter()
            .position(|m| m[r][c] == 1 && m.iter().flatten().filter(|&&x| x != 0).count() == 1)
            .expect("off-diagonal unit present")
    };
    let h_offset = n * (n - 1) / 2;
    let mut constants = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let mut comm = vec![vec![0i64; n]; n];
            for r in 0..n {
                for c in 0..n {
                    let mut v = 0;
                    for t in 0..n {
                        v += x[r][t] * y[t][c] - y[r][t] * x[t][c];
                    }
                    comm[r][c] = v;
                }
            }
            let mut coords = vec![0i64; dim];
            for r in 0..n {
                for c in 0..n {
                    if r != c && comm[r][c] != 0 {
                        coords[index_of_unit(r, c)] += comm[r][c];
                    }
                }
            }
            // diag(d) with trace 0 equals sum_i (d_1 + ... + d_i) H_i
            let mut partial = 0;
            for i in 0..n - 1 {
                partial += comm[i][i];
                coords[h_offset + i] += partial;
            }
            for (k, &v) in coords.iter().enumerate() {
                if v != 0 {
                    constants.push(sc(a, b, k, v));
                }
            }
        }
    }
    GradedAlgebra::ungraded(format!("sl{n}"), dim, constants)
}

/// `m`-dimensional algebra with zero product.
pub fn abelian_factory(m: usize) -> Result<GradedAlgebra> {
    GradedAlgebra::ungraded(format!("abelian{m}"), m, Vec::new())
}

/// `A (+) B` with the block basis and the union of gradings.
pub fn direct_sum(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    let off = a.dim();
    let mut degrees = a.degrees().to_vec();
    degrees.extend_from_slice(b.degrees());
    let mut constants = a.constants().to_vec();
    constants.extend(b.constants().iter().map(|c| StructureConstant {
        i: c.i + off,
        j: c.j + off,
        k: c.k + off,
        coeff: c.coeff.clone(),
    }));
    GradedAlgebra::new(format!("{}+{}", a.name(), b.name()), degrees, constants)
        .expect("direct sum of valid algebras is valid")
}

/// Basis index of `g (x) c_i` in `F[G] (x) B`: degree-major `e, a, b, ab`.
pub fn tensor_index(g: GroupElement, i: usize, dim_b: usize) -> usize {
    g.index() * dim_b + i
}

/// `F[G] (x) B` with `(g (x) x)(h (x) y) = s(g,h) gh (x) [x,y]`.
pub fn tensor_color_construct(b: &GradedAlgebra, s: &SignTable) -> Result<GradedAlgebra> {
    if !b.is_trivially_graded() {
        return Err(Error::InvalidAlgebra(format!(
            "{} must be trivially graded for the tensor construction",
            b.name()
        )));
    }
    let d = b.dim();
    let mut degrees = Vec::with_capacity(4 * d);
    for g in GroupElement::ALL {
        degrees.extend(std::iter::repeat_n(g, d));
    }
    let mut constants = Vec::new();
    for g in GroupElement::ALL {
        for h in GroupElement::ALL {
            let sign = qi(s.get(g, h) as i64);
            for c in b.constants() {
                constants.push(StructureConstant {
                    i: tensor_index(g, c.i, d),
                    j: tensor_index(h, c.j, d),
                    k: tensor_index(g * h, c.k, d),
                    coeff: &c.coeff * &sign,
                });
            }
        }
    }
    GradedAlgebra::new(format!("F[G]x{}", b.name()), degrees, constants)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomViolation {
    pub indices: Vec<usize>,
    pub defect: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColorAxiomReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub anticommutativity: Vec<AxiomViolation>,
    pub jacobi: Vec<AxiomViolation>,
}

impl ColorAxiomReport {
    pub fn violation_count(&self) -> usize {
        self.anticommutativity.len() + self.jacobi.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }
}

fn defect_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Checks `xy + beta(x,y) yx = 0` on all basis pairs and
/// `(xy)z - x(yz) + beta(x,y) y(xz) = 0` on all basis triples.
pub fn check_color_axioms(a: &GradedAlgebra, beta: &Bicharacter) -> ColorAxiomReport {
    let m = a.dim();
    let basis: Vec<Vector> = (0..m).map(|i| unit_vector(m, i)).collect();
    let b = |i: usize, j: usize| qi(beta.get(a.degree(i), a.degree(j)) as i64);

    let mut anticommutativity = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let xy = a.multiply_unchecked(&basis[i], &basis[j]);
            let yx = a.multiply_unchecked(&basis[j], &basis[i]);
            let bij = b(i, j);
            let defect: Vector = xy.iter().zip(&yx).map(|(p, q)| p + &bij * q).collect();
            if !is_zero_vector(&defect) {
                anticommutativity.push(AxiomViolation {
                    indices: vec![i, j],
                    defect: defect_strings(&defect),
                });
            }
        }
    }

    let jacobi: Vec<AxiomViolation> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in 0..m {
                let xy = a.multiply_unchecked(&basis[i], &basis[j]);
                let bij = b(i, j);
                for k in 0..m {
                    let lhs = a.multiply_unchecked(&xy, &basis[k]);
                    let yz = a.multiply_unchecked(&basis[j], &basis[k]);
                    let x_yz = a.multiply_unchecked(&basis[i], &yz);
                    let xz = a.multiply_unchecked(&basis[i], &basis[k]);
                    let y_xz = a.multiply_unchecked(&basis[j], &xz);
                    let defect: Vector = (0..m)
                        .map(|t| &lhs[t] - &x_yz[t] + &bij * &y_xz[t])
                        .collect();
                    if !is_zero_vector(&defect) {
                        out.push(AxiomViolation {
                            indices: vec![i, j, k],
                            defect: defect_strings(&defect),
                        });
                    }
                }
            }
            out
        })
        .collect();

    ColorAxiomReport {
        pairs_checked: m * m,
        triples_checked: m * m * m,
        anticommutativity,
        jacobi,
    }
}

/// Lie algebra test: color axioms with the trivial bicharacter on a
/// trivially graded algebra.
pub fn is_lie_algebra(a: &GradedAlgebra) -> bool {
    a.is_trivially_graded() && check_color_axioms(a, &Bicharacter::trivial()).is_clean()
}

/// The 2x2 matrices identified with `e, a, b, ab`.
pub fn group_matrix(g: GroupElement) -> [[i64; 2]; 2] {
    match g.index() {
        0 => [[1, 0], [0, 1]],
        1 => [[-1, 0], [0, 1]],
        2 => [[0, 1], [1, 0]],
        _ => [[0, -1], [1, 0]],
    }
}

fn mat2_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRingCheck {
    pub g: GroupElement,
    pub h: GroupElement,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRingReport {
    pub products: Vec<GroupRingCheck>,
}

impl GroupRingReport {
    pub fn all_pass(&self) -> bool {
        self.products.iter().all(|p| p.passed)
    }

    pub fn failures(&self) -> Vec<(GroupElement, GroupElement)> {
        self.products.iter().filter(|p| !p.passed).map(|p| (p.g, p.h)).collect()
    }
}

/// Verifies `M(g) M(h) = s(g,h) M(gh)` for all 16 pairs.
pub fn group_ring_matrix_check(s: &SignTable) -> GroupRingReport {
    let mut products = Vec::with_capacity(16);
    for g in GroupElement::ALL {
        for h in GroupElement::ALL {
            let lhs = mat2_mul(group_matrix(g), group_matrix(h));
            let sign = s.get(g, h) as i64;
            let rhs = group_matrix(g * h).map(|row| row.map(|v| sign * v));
            products.push(GroupRingCheck { g, h, passed: lhs == rhs });
        }
    }
    GroupRingReport { products }
}

/// Element of the twisted group algebra, coordinates in `e, a, b, ab`.
pub type GroupAlgebraElement = [Q; 4];

/// `x * y` in `F[G]` with `g * h = s(g,h) gh`.
pub fn twisted_product(s: &SignTable, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut out: GroupAlgebraElement = Default::default();
    for g in GroupElement::ALL {
        if x[g.index()].is_zero() {
            continue;
        }
        for h in GroupElement::ALL {
            if y[h.index()].is_zero() {
                continue;
            }
            let c = &x[g.index()] * &y[h.index()] * qi(s.get(g, h) as i64);
            out[(g * h).index()] += c;
        }
    }
    out
}

/// The matrix unit `E_{uv}` (1-based `u, v`) written in `e, a, b, ab`
/// through the 2x2 identification, by solving the 4x4 linear system.
pub fn matrix_unit(u: usize, v: usize) -> GroupAlgebraElement {
    assert!((1..=2).contains(&u) && (1..=2).contains(&v));
    // columns: flattened group matrices; solve sum_g c_g M(g) = E_uv
    let mut system: Matrix = zero_matrix(4, 5);
    for g in GroupElement::ALL {
        let m = group_matrix(g);
        for r in 0..2 {
            for c in 0..2 {
                system[2 * r + c][g.index()] = qi(m[r][c]);
            }
        }
    }
    system[2 * (u - 1) + (v - 1)][4] = Q::one();
    let pivots = linalg::rref(&mut system);
    debug_assert_eq!(pivots, vec![0, 1, 2, 3]);
    [
        system[0][4].clone(),
        system[1][4].clone(),
        system[2][4].clone(),
        system[3][4].clone(),
    ]
}

/// `c (x) x` as a vector of `F[G] (x) B`.
pub fn tensor_element(c: &GroupAlgebraElement, x: &[Q]) -> Vector {
    let d = x.len();
    let mut out = zero_vector(4 * d);
    for g in GroupElement::ALL {
        if c[g.index()].is_zero() {
            continue;
        }
        for (i, xi) in x.iter().enumerate() {
            out[tensor_index(g, i, d)] = &c[g.index()] * xi;
        }
    }
    out
}

/// Matrix of `y -> [y, x]`; column `i` holds the coordinates of `basis_i * x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdOperator(pub Matrix);

impl AdOperator {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        linalg::mat_vec(&self.0, v)
    }

    /// `self` followed by `other` as maps: `y -> [[y, x], x']`.
    pub fn then(&self, other: &AdOperator) -> Matrix {
        linalg::mat_mul(&other.0, &self.0)
    }
}

pub fn ad_matrix(a: &GradedAlgebra, x: &[Q]) -> Result<AdOperator> {
    a.check_len(x)?;
    let m = a.dim();
    let mut mat = zero_matrix(m, m);
    for i in 0..m {
        let col = a.multiply_unchecked(&unit_vector(m, i), x);
        for (k, v) in col.into_iter().enumerate() {
            mat[k][i] = v;
        }
    }
    Ok(AdOperator(mat))
}

fn trace_of_product(x: &Matrix, y: &Matrix) -> Q {
    let n = x.len();
    let mut acc = Q::zero();
    for i in 0..n {
        for j in 0..n {
            if !x[i][j].is_zero() && !y[j][i].is_zero() {
                acc += &x[i][j] * &y[j][i];
            }
        }
    }
    acc
}

/// `tr(ad x . ad y)`.
pub fn killing_form(a: &GradedAlgebra, x: &[Q], y: &[Q]) -> Result<Q> {
    let ax = ad_matrix(a, x)?;
    let ay = ad_matrix(a, y)?;
    Ok(trace_of_product(ax.matrix(), ay.matrix()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KillingMatrix(pub Matrix);

impl KillingMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.0;
        (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
    }

    pub fn determinant(&self) -> Q {
        linalg::determinant(&self.0)
    }

    /// `x^T K y`.
    pub fn bilinear(&self, x: &[Q], y: &[Q]) -> Q {
        let ky = linalg::mat_vec(&self.0, y);
        x.iter().zip(&ky).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.0[r][c].clone()).collect())
            .collect()
    }
}

pub fn killing_matrix(a: &GradedAlgebra) -> KillingMatrix {
    let m = a.dim();
    let ads: Vec<AdOperator> = (0..m)
        .map(|i| ad_matrix(a, &unit_vector(m, i)).expect("basis vector has algebra length"))
        .collect();
    let mut k = zero_matrix(m, m);
    for r in 0..m {
        for s in r..m {
            let v = trace_of_product(ads[r].matrix(), ads[s].matrix());
            k[r][s] = v.clone();
            k[s][r] = v;
        }
    }
    KillingMatrix(k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KillingBlock {
    pub degree: GroupElement,
    pub indices: Vec<usize>,
    pub determinant: String,
    pub nondegenerate: bool,
    /// `c` with `block = c * reference` when such a scalar exists.
    pub ratio_to_reference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KillingStructure {
    pub symmetric: bool,
    pub off_block_entries: usize,
    pub off_block_nonzero: usize,
    pub determinant: String,
    pub blocks: Vec<KillingBlock>,
}

impl KillingStructure {
    pub fn block_diagonal(&self) -> bool {
        self.off_block_nonzero == 0
    }
}

fn scalar_ratio(block: &Matrix, reference: &Matrix) -> Option<Q> {
    if block.len() != reference.len() {
        return None;
    }
    let mut ratio: Option<Q> = None;
    for (br, rr) in block.iter().zip(reference) {
        for (x, y) in br.iter().zip(rr) {
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            let r = x / y;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev != r => return None,
                _ => {}
            }
        }
    }
    ratio
}

/// Groups the Killing matrix by degree: off-block zeros, per-block
/// determinants and the scalar relating each block to `reference` (e.g. the
/// Killing matrix of `B`).
pub fn killing_structure(a: &GradedAlgebra, k: &KillingMatrix, reference: Option<&KillingMatrix>) -> KillingStructure {
    let m = a.dim();
    let mut off_block_entries = 0;
    let mut off_block_nonzero = 0;
    for r in 0..m {
        for s in 0..m {
            if a.degree(r) != a.degree(s) {
                off_block_entries += 1;
                if !k.0[r][s].is_zero() {
                    off_block_nonzero += 1;
                }
            }
        }
    }
    let blocks = GroupElement::ALL
        .iter()
        .filter_map(|&g| {
            let idx = a.component(g);
            if idx.is_empty() {
                return None;
            }
            let sub = k.submatrix(&idx, &idx);
            let det = linalg::determinant(&sub);
            let ratio = reference.and_then(|r| scalar_ratio(&sub, r.matrix()));
            Some(KillingBlock {
                degree: g,
                indices: idx,
                nondegenerate: !det.is_zero(),
                determinant: format_rational(&det),
                ratio_to_reference: ratio.as_ref().map(format_rational),
            })
        })
        .collect();
    KillingStructure {
        symmetric: k.is_symmetric(),
        off_block_entries,
        off_block_nonzero,
        determinant: format_rational(&k.determinant()),
        blocks,
    }
}

/// Smallest graded ideal containing `generators`.
pub fn graded_ideal_closure(a: &GradedAlgebra, generators: &[Vector]) -> Subspace {
    let m = a.dim();
    let mut space = Subspace::new(m);
    let mut queue: Vec<Vector> = Vec::new();
    for v in generators {
        for g in GroupElement::ALL {
            let part = a.project(v, g);
            if !is_zero_vector(&part) && space.insert(&part) {
                queue.push(part);
            }
        }
    }
    let basis: Vec<Vector> = (0..m).map(|i| unit_vector(m, i)).collect();
    while let Some(v) = queue.pop() {
        if space.dim() == m {
            break;
        }
        for b in &basis {
            for w in [a.multiply_unchecked(&v, b), a.multiply_unchecked(b, &v)] {
                for g in GroupElement::ALL {
                    let part = a.project(&w, g);
                    if !is_zero_vector(&part) && space.insert(&part) {
                        queue.push(part);
                    }
                }
            }
        }
    }
    space
}

/// Dimension of the associative algebra generated by all left and right
/// multiplications, the degree projections, and the identity.
pub fn multiplication_algebra_dim(a: &GradedAlgebra) -> usize {
    let m = a.dim();
    let flatten = |mat: &Matrix| -> Vector { mat.iter().flatten().cloned().collect() };
    let mut generators: Vec<Matrix> = Vec::new();
    for i in 0..m {
        let e = unit_vector(m, i);
        generators.push(ad_matrix(a, &e).expect("basis length").0);
        let mut left = zero_matrix(m, m);
        for c in 0..m {
            let col = a.multiply_unchecked(&e, &unit_vector(m, c));
            for (r, v) in col.into_iter().enumerate() {
                left[r][c] = v;
            }
        }
        generators.push(left);
    }
    for g in GroupElement::ALL {
        let mut p = zero_matrix(m, m);
        for i in a.component(g) {
            p[i][i] = Q::one();
        }
        generators.push(p);
    }
    let mut space = Subspace::new(m * m);
    let mut queue: Vec<Matrix> = Vec::new();
    let id = linalg::identity_matrix(m);
    space.insert(&flatten(&id));
    queue.push(id);
    while let Some(w) = queue.pop() {
        if space.dim() == m * m {
            break;
        }
        for g in &generators {
            let p = linalg::mat_mul(g, &w);
            if space.insert(&flatten(&p)) {
                queue.push(p);
            }
        }
    }
    space.dim()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub reason: String,
    /// Basis of a proper nonzero graded ideal when one was found.
    #[serde(serialize_with = "serialize_vectors")]
    pub witness: Option<Vec<Vector>>,
}

fn serialize_vectors<S: serde::Serializer>(v: &Option<Vec<Vector>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Option<Vec<Vec<String>>> = v
        .as_ref()
        .map(|vs| vs.iter().map(|x| defect_strings(x)).collect());
    strings.serialize(s)
}

/// Graded simplicity. Each homogeneous basis element's ideal closure must be
/// the whole algebra; as a completeness certificate the multiplication
/// algebra must also be all of `End(A)`, which rules out proper graded
/// ideals over the algebraic closure. Zero-product algebras are not simple.
pub fn is_graded_simple(a: &GradedAlgebra) -> SimplicityReport {
    let m = a.dim();
    if a.has_zero_product() {
        let witness = if m >= 2 { Some(vec![unit_vector(m, 0)]) } else { None };
        return SimplicityReport {
            simple: false,
            reason: "product is identically zero".into(),
            witness,
        };
    }
    for i in 0..m {
        let closure = graded_ideal_closure(a, &[unit_vector(m, i)]);
        if closure.dim() < m {
            return SimplicityReport {
                simple: false,
                reason: format!(
                    "graded ideal generated by basis element {i} has dimension {} < {m}",
                    closure.dim()
                ),
                witness: Some(closure.basis()),
            };
        }
    }
    let mdim = multiplication_algebra_dim(a);
    if mdim < m * m {
        return SimplicityReport {
            simple: false,
            reason: format!(
                "multiplication algebra has dimension {mdim} < {}; a proper graded ideal exists over the algebraic closure",
                m * m
            ),
            witness: None,
        };
    }
    SimplicityReport {
        simple: true,
        reason: "every homogeneous basis element generates the whole algebra".into(),
        witness: None,
    }
}

/// Whether `span(vectors)` is a graded two-sided ideal of `a`.
pub fn is_graded_ideal(a: &GradedAlgebra, vectors: &[Vector]) -> bool {
    let m = a.dim();
    let mut space = Subspace::new(m);
    for v in vectors {
        space.insert(v);
    }
    for v in vectors {
        for g in GroupElement::ALL {
            if !space.contains(&a.project(v, g)) {
                return false;
            }
        }
        for i in 0..m {
            let b = unit_vector(m, i);
            if !space.contains(&a.multiply_unchecked(v, &b)) || !space.contains(&a.multiply_unchecked(&b, v)) {
                return false;
            }
        }
    }
    true
}
