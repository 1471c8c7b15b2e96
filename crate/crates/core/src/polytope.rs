//! Exact H-representation polytopes `⟨x, λ_i⟩ + η_i ≥ 0`, their face
//! complexes, and generic hyperplane cuts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::matrix::IntegerMatrix;
use crate::simplicial::{connected_sum, is_strong_connected_sum, FaceSubset, SimplicialComplex};

/// Limits for brute-force vertex enumeration.
pub const MAX_DIM: usize = 8;
pub const MAX_INEQUALITIES: usize = 24;

/// `⟨x, normal⟩ + offset ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Inequality {
    pub fn new(normal: Vec<i64>, offset: i64) -> Self {
        Inequality { normal, offset }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(x)
            .fold(rational(self.offset), |acc, (a, xi)| acc + xi * rational(*a))
    }

    pub fn negated(&self) -> Inequality {
        Inequality { normal: self.normal.iter().map(|a| -a).collect(), offset: -self.offset }
    }

    /// The normal divided by the gcd of its entries.
    pub fn primitive_normal(&self) -> Vec<i64> {
        let g = self.normal.iter().fold(0i64, |g, a| g.gcd(a));
        self.normal.iter().map(|a| a / g.max(1)).collect()
    }
}

fn rational(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

/// A vertex and the (1-based) indices of the inequalities tight at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<BigRational>,
    pub active: Face,
}

/// Formats a rational point as `(1, 3/2)`.
pub struct PointDisplay<'a>(pub &'a [BigRational]);

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Vertex", 2)?;
        let point: Vec<String> = self.point.iter().map(|x| x.to_string()).collect();
        s.serialize_field("point", &point)?;
        s.serialize_field("active", &self.active)?;
        s.end()
    }
}

/// Reduced row echelon form over Q; returns the pivot column of each nonzero row.
fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn rational_rows(ineqs: &[&Inequality]) -> Vec<Vec<BigRational>> {
    ineqs.iter().map(|q| q.normal.iter().map(|a| rational(*a)).collect()).collect()
}

/// Unique solution of `⟨x, λ_i⟩ + η_i = 0` for the given `n` inequalities, if any.
fn solve_tight(ineqs: &[&Inequality], n: usize) -> Option<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = ineqs
        .iter()
        .map(|q| {
            let mut r: Vec<BigRational> = q.normal.iter().map(|a| rational(*a)).collect();
            r.push(rational(-q.offset));
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(rows.iter().map(|r| r[n].clone()).collect())
}

/// Nonzero direction in the nullspace of the given rows when it is one-dimensional.
fn line_direction(ineqs: &[&Inequality], n: usize) -> Option<Vec<BigRational>> {
    let mut rows = rational_rows(ineqs);
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut d = vec![BigRational::zero(); n];
    d[free] = rational(1);
    for (row, &p) in rows.iter().zip(&pivots) {
        d[p] = -row[free].clone();
    }
    Some(d)
}

fn combinations(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, m, k, &mut Vec::with_capacity(k), &mut visit);
}

/// A full-dimensional bounded polytope in `R^n` with its vertices computed exactly.
///
/// Redundant inequalities are kept; an inequality tight at no vertex becomes
/// a ghost vertex of the face complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
    vertices: Vec<Vertex>,
}

impl RationalPolytope {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let m = inequalities.len();
        if dim > MAX_DIM || m > MAX_INEQUALITIES {
            return Err(Error::PolytopeTooLarge { dim, inequalities: m });
        }
        for (i, q) in inequalities.iter().enumerate() {
            if q.normal.len() != dim {
                return Err(Error::CoefficientCount { index: i + 1, expected: dim, found: q.normal.len() });
            }
            if q.normal.iter().all(|a| *a == 0) {
                return Err(Error::ZeroNormal(i + 1));
            }
        }
        let all: Vec<&Inequality> = inequalities.iter().collect();
        let mut normals = rational_rows(&all);
        if rref(&mut normals).len() < dim {
            // the solution set, if nonempty, contains a line
            return Err(Error::UnboundedPolytope);
        }

        let mut found: BTreeMap<Vec<BigRational>, Face> = BTreeMap::new();
        combinations(m, dim, |idx| {
            let sub: Vec<&Inequality> = idx.iter().map(|&i| &inequalities[i]).collect();
            let Some(x) = solve_tight(&sub, dim) else { return };
            if found.contains_key(&x) {
                return;
            }
            let mut active = Face::EMPTY;
            for (i, q) in inequalities.iter().enumerate() {
                let v = q.eval(&x);
                if v.is_negative() {
                    return;
                }
                if v.is_zero() {
                    active = active.with(i + 1);
                }
            }
            found.insert(x, active);
        });
        if found.is_empty() {
            return Err(Error::EmptyPolytope);
        }

        let mut unbounded = false;
        combinations(m, dim - 1, |idx| {
            if unbounded {
                return;
            }
            let sub: Vec<&Inequality> = idx.iter().map(|&i| &inequalities[i]).collect();
            if let Some(d) = line_direction(&sub, dim) {
                let neg: Vec<BigRational> = d.iter().map(|x| -x).collect();
                unbounded = [d, neg].iter().any(|dir| {
                    inequalities.iter().all(|q| {
                        let slope = q.normal.iter().zip(dir).fold(BigRational::zero(), |acc, (a, x)| acc + x * rational(*a));
                        !slope.is_negative()
                    })
                });
            }
        });
        if unbounded {
            return Err(Error::UnboundedPolytope);
        }

        let vertices: Vec<Vertex> = found.into_iter().map(|(point, active)| Vertex { point, active }).collect();
        let count = rational(vertices.len() as i64);
        let centroid: Vec<BigRational> = (0..dim)
            .map(|j| vertices.iter().fold(BigRational::zero(), |acc, v| acc + &v.point[j]) / &count)
            .collect();
        if inequalities.iter().any(|q| !q.eval(&centroid).is_positive()) {
            return Err(Error::NotFullDimensional);
        }
        Ok(RationalPolytope { dim, inequalities, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn inequality_count(&self) -> usize {
        self.inequalities.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Every vertex lies on exactly `dim` facet hyperplanes.
    pub fn is_simple(&self) -> bool {
        self.non_simple_vertex().is_none()
    }

    fn non_simple_vertex(&self) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.active.len() != self.dim)
    }

    fn ensure_simple(&self) -> Result<()> {
        match self.non_simple_vertex() {
            Some(v) => Err(Error::NotSimple { vertex: PointDisplay(&v.point).to_string(), active: v.active.len() }),
            None => Ok(()),
        }
    }

    /// Inequality indices never tight on the polytope.
    pub fn ghost_facets(&self) -> Vec<usize> {
        let used = self.vertices.iter().fold(Face::EMPTY, |acc, v| acc.union(v.active));
        (1..=self.inequalities.len()).filter(|i| !used.contains(*i)).collect()
    }

    /// The complex on the inequality indices whose faces are the sets of facets meeting in a face.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        self.complex_on(self.inequalities.len())
    }

    /// [`RationalPolytope::complex`] placed on `vertex_count ≥ m` vertices; extra vertices are ghosts.
    pub fn complex_on(&self, vertex_count: usize) -> Result<SimplicialComplex> {
        self.ensure_simple()?;
        if vertex_count < self.inequalities.len() {
            return Err(Error::VertexCountMismatch { left: self.inequalities.len(), right: vertex_count });
        }
        SimplicialComplex::from_facets(vertex_count, self.vertices.iter().map(|v| v.active))
    }

    /// The polytope with one more inequality appended.
    pub fn with_inequality(&self, q: Inequality) -> Result<RationalPolytope> {
        let mut ineqs = self.inequalities.clone();
        ineqs.push(q);
        RationalPolytope::new(self.dim, ineqs)
    }
}

/// Face complex of a simple polytope; see [`RationalPolytope::complex`].
pub fn complex_of_polytope(p: &RationalPolytope) -> Result<SimplicialComplex> {
    p.complex()
}

/// The cutting hyperplane `⟨x, γ⟩ + ξ = 0` with primitive integer normal `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CutSpec {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl CutSpec {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self> {
        let g = normal.iter().fold(0i64, |g, a| g.gcd(a));
        if g != 1 {
            return Err(Error::NonPrimitiveCut);
        }
        Ok(CutSpec { normal, offset })
    }

    /// `⟨x, γ⟩ + ξ ≥ 0`.
    pub fn positive_side(&self) -> Inequality {
        Inequality::new(self.normal.clone(), self.offset)
    }

    /// `⟨x, γ⟩ + ξ ≤ 0`.
    pub fn negative_side(&self) -> Inequality {
        self.positive_side().negated()
    }
}

/// Outcome of [`is_generic_cut`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Genericity {
    Generic,
    /// The hyperplane does not meet the polytope.
    MissesPolytope,
    /// A vertex of the polytope lies on the hyperplane.
    VertexOnCut { vertex: String },
    /// A vertex of a cut piece lies on more than `n` hyperplanes.
    PieceNotSimple { side: &'static str, vertex: String },
}

impl Genericity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Genericity::Generic)
    }
}

impl fmt::Display for Genericity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genericity::Generic => f.write_str("generic"),
            Genericity::MissesPolytope => f.write_str("H_o is empty: the hyperplane misses the polytope"),
            Genericity::VertexOnCut { vertex } => write!(f, "vertex {vertex} lies on the hyperplane"),
            Genericity::PieceNotSimple { side, vertex } => write!(f, "vertex {vertex} of the {side} piece is not simple"),
        }
    }
}

fn check_cut_shape(p: &RationalPolytope, c: &CutSpec) -> Result<()> {
    if c.normal.len() != p.dim {
        return Err(Error::CoefficientCount { index: p.inequalities.len() + 1, expected: p.dim, found: c.normal.len() });
    }
    Ok(())
}

/// Genericity of a cut of a simple polytope: the hyperplane meets the polytope,
/// avoids its vertices, and both pieces are simple.
pub fn is_generic_cut(p: &RationalPolytope, c: &CutSpec) -> Result<Genericity> {
    p.ensure_simple()?;
    check_cut_shape(p, c)?;
    let h = c.positive_side();
    let values: Vec<BigRational> = p.vertices.iter().map(|v| h.eval(&v.point)).collect();
    if let Some(i) = values.iter().position(Zero::is_zero) {
        return Ok(Genericity::VertexOnCut { vertex: PointDisplay(&p.vertices[i].point).to_string() });
    }
    if values.iter().all(Signed::is_positive) || values.iter().all(Signed::is_negative) {
        return Ok(Genericity::MissesPolytope);
    }
    for (side, q) in [("positive", c.positive_side()), ("negative", c.negative_side())] {
        let piece = p.with_inequality(q)?;
        if let Some(v) = piece.non_simple_vertex() {
            return Ok(Genericity::PieceNotSimple { side, vertex: PointDisplay(&v.point).to_string() });
        }
    }
    Ok(Genericity::Generic)
}

/// Combinatorial identities a generic cut must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutChecks {
    /// `K_Δ = K₊ #^{Z_o} K₋`.
    pub p1_sum: bool,
    pub p1_strong: bool,
    /// `K₋ = K₊ #^{Z₊} K_Δ`.
    pub p2_sum: bool,
    pub p2_strong: bool,
    /// `K₊ ∩ K₋ = star_{K₊}(o) = star_{K₋}(o)`.
    pub star_identity: bool,
    /// `(K₊ ∪ K₋) \ K_Δ = O_{K₊}(o) = O_{K₋}(o)`.
    pub open_star_identity: bool,
    /// `K₊ ∩ K_Δ = closure(Z₊)` and `(K₊ ∪ K_Δ) \ K₋ = Z₊`.
    pub plus_identities: bool,
    /// `K₊ \ closure(Z₊) = O_{K₊}(o)`.
    pub complement_identity: bool,
}

impl CutChecks {
    pub fn all(&self) -> bool {
        self.p1_sum
            && self.p1_strong
            && self.p2_sum
            && self.p2_strong
            && self.star_identity
            && self.open_star_identity
            && self.plus_identities
            && self.complement_identity
    }
}

/// Pieces and complexes produced by a generic cut. The cut facet has index `o = m + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct CutResult {
    #[serde(skip)]
    pub plus: RationalPolytope,
    #[serde(skip)]
    pub minus: RationalPolytope,
    pub k_delta: SimplicialComplex,
    pub k_plus: SimplicialComplex,
    pub k_minus: SimplicialComplex,
    pub z_o: FaceSubset,
    pub z_plus: FaceSubset,
    pub checks: CutChecks,
}

impl CutResult {
    pub fn cut_vertex(&self) -> usize {
        self.k_delta.vertex_count()
    }
}

/// Cuts a simple polytope along a generic hyperplane and checks the resulting connected sums.
pub fn cut(p: &RationalPolytope, c: &CutSpec) -> Result<CutResult> {
    let verdict = is_generic_cut(p, c)?;
    if !verdict.is_generic() {
        return Err(Error::NonGenericCut(verdict.to_string()));
    }
    let m = p.inequality_count();
    let o = m + 1;
    let plus = p.with_inequality(c.positive_side())?;
    let minus = p.with_inequality(c.negative_side())?;
    let k_delta = p.complex_on(o)?;
    let k_plus = plus.complex()?;
    let k_minus = minus.complex()?;

    let o_face = FaceSubset::new(o, [Face::singleton(o)])?;
    let union_pm = k_plus.union(&k_minus)?;
    let z_o = union_pm.open_neighborhood(&o_face);

    let h = c.positive_side();
    let z_plus = FaceSubset::new(
        o,
        k_delta.faces().filter(|s| !s.is_empty()).filter(|&s| {
            p.vertices
                .iter()
                .filter(|v| s.is_subset(v.active))
                .all(|v| h.eval(&v.point).is_positive())
        }),
    )?;

    let sum_is = |k1: &SimplicialComplex, k2: &SimplicialComplex, z: &FaceSubset, target: &SimplicialComplex| {
        connected_sum(k1, k2, z).map(|k| &k == target).unwrap_or(false)
    };
    let strong = |k1: &SimplicialComplex, k2: &SimplicialComplex, z: &FaceSubset| {
        is_strong_connected_sum(k1, k2, z).map(|v| v.strong).unwrap_or(false)
    };

    let star_plus = k_plus.star(&o_face);
    let star_minus = k_minus.star(&o_face);
    let open_plus = k_plus.open_neighborhood(&o_face);
    let open_minus = k_minus.open_neighborhood(&o_face);
    let meet_pm = k_plus.intersection(&k_minus)?;
    let deleted = union_pm.difference(&k_delta);
    let union_pd = k_plus.union(&k_delta)?;
    let closure_plus = z_plus.closure();

    let checks = CutChecks {
        p1_sum: sum_is(&k_plus, &k_minus, &z_o, &k_delta),
        p1_strong: strong(&k_plus, &k_minus, &z_o),
        p2_sum: sum_is(&k_plus, &k_delta, &z_plus, &k_minus),
        p2_strong: strong(&k_plus, &k_delta, &z_plus),
        star_identity: meet_pm == star_plus && star_plus == star_minus,
        open_star_identity: deleted == open_plus && open_plus == open_minus,
        plus_identities: k_plus.intersection(&k_delta)? == closure_plus && union_pd.difference(&k_minus) == z_plus,
        complement_identity: k_plus.difference(&closure_plus) == open_plus,
    };
    Ok(CutResult { plus, minus, k_delta, k_plus, k_minus, z_o, z_plus, checks })
}

/// A polytope whose facets carry positive integer labels `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolytope {
    polytope: RationalPolytope,
    labels: Vec<u64>,
}

impl LabeledPolytope {
    pub fn new(polytope: RationalPolytope, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != polytope.inequality_count() {
            return Err(Error::LabelCountMismatch { labels: labels.len(), inequalities: polytope.inequality_count() });
        }
        if labels.contains(&0) {
            return Err(Error::NonPositiveLabel);
        }
        Ok(LabeledPolytope { polytope, labels })
    }

    /// Every facet labelled 1.
    pub fn unlabeled(polytope: RationalPolytope) -> Self {
        let labels = vec![1; polytope.inequality_count()];
        LabeledPolytope { polytope, labels }
    }

    pub fn polytope(&self) -> &RationalPolytope {
        &self.polytope
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }
}

fn matrix_from_columns(n: usize, columns: &[Vec<i64>]) -> Result<IntegerMatrix> {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let b = if columns.is_empty() { IntegerMatrix::zeros(n, 0) } else { IntegerMatrix::from_rows(&rows)? };
    let rank = b.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    Ok(b)
}

fn labeled_columns(l: &LabeledPolytope) -> Vec<Vec<i64>> {
    l.polytope
        .inequalities
        .iter()
        .zip(&l.labels)
        .map(|(q, &b)| q.primitive_normal().iter().map(|a| a * b as i64).collect())
        .collect()
}

/// `B = [b_1 β_1, …, b_m β_m]` with `β_i` the primitive inward normals.
pub fn characteristic_matrix(l: &LabeledPolytope) -> Result<IntegerMatrix> {
    matrix_from_columns(l.polytope.dim, &labeled_columns(l))
}

/// `B̃ = [b_1 β_1, …, b_m β_m, γ]`.
pub fn extended_matrix(l: &LabeledPolytope, c: &CutSpec) -> Result<IntegerMatrix> {
    check_cut_shape(&l.polytope, c)?;
    let mut cols = labeled_columns(l);
    cols.push(c.normal.clone());
    matrix_from_columns(l.polytope.dim, &cols)
}
