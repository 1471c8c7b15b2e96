//! Stanley–Reisner rings `Z[K] = Z[x_1..x_m] / (x_σ : σ ∉ K)` and the
//! monomial modules built from them.
//!
//! Degrees are counted in monomial units `|a|`; reports show the
//! cohomological degree `2|a|` (each `x_i` has degree 2).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::face::Face;
use crate::matrix::{ExactnessCheck, IntegerMatrix, SparseMatrix};
use crate::simplicial::{check_connected_sum_hypothesis, strong_z, FaceSubset, SimplicialComplex};

/// Exponent vector of a monomial in `x_1..x_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m])
    }

    /// The squarefree monomial `x_σ`.
    pub fn squarefree(m: usize, face: Face) -> Self {
        let mut e = vec![0; m];
        for v in face.vertices() {
            e[v - 1] = 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn support(&self) -> Face {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(Face::EMPTY, |acc, (i, _)| acc.with(i + 1))
    }

    /// `x_j · self` (vertex `j` is 1-based).
    pub fn times_variable(&self, j: usize) -> Monomial {
        let mut e = self.0.clone();
        e[j - 1] += 1;
        Monomial(e)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A graded `Z[x]`-module with a monomial `Z`-basis whose membership depends
/// only on the support: `x^a` is a basis element iff `support(a)` is one of
/// `supports`. Multiplication by `x_j` sends a basis monomial to the shifted
/// monomial, or to zero when the new support is not allowed.
///
/// Covers `Z[K]` (supports = faces of `K`) and monomial ideals of `Z[K]`
/// (supports = faces of `K` containing a generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    vertex_count: usize,
    supports: BTreeSet<Face>,
}

/// The monomials of one degree of a [`MonomialModule`], sorted, with a reverse index.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    fn new(degree: usize, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedBasis { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Exponent vectors with support exactly `face` and total degree `d`.
fn monomials_on_support(m: usize, face: Face, d: usize, out: &mut Vec<Monomial>) {
    let verts: Vec<usize> = face.vertices().collect();
    let k = verts.len();
    if k == 0 {
        if d == 0 {
            out.push(Monomial::one(m));
        }
        return;
    }
    if d < k {
        return;
    }
    let mut exps = vec![1u32; k];
    fn distribute(
        slot: usize,
        left: u32,
        exps: &mut Vec<u32>,
        verts: &[usize],
        m: usize,
        out: &mut Vec<Monomial>,
    ) {
        if slot + 1 == exps.len() {
            exps[slot] += left;
            let mut e = vec![0; m];
            for (v, x) in verts.iter().zip(exps.iter()) {
                e[v - 1] = *x;
            }
            out.push(Monomial(e));
            exps[slot] -= left;
            return;
        }
        for extra in 0..=left {
            exps[slot] += extra;
            distribute(slot + 1, left - extra, exps, verts, m, out);
            exps[slot] -= extra;
        }
    }
    distribute(0, (d - k) as u32, &mut exps, &verts, m, out);
}

impl MonomialModule {
    pub fn ring(k: &SimplicialComplex) -> Self {
        MonomialModule { vertex_count: k.vertex_count(), supports: k.face_set().clone() }
    }

    /// The ideal of `Z[ambient]` generated by `x_σ`, `σ ∈ generators`.
    /// Generators that are not faces of `ambient` are zero and contribute nothing.
    pub fn ideal(ambient: &SimplicialComplex, generators: &[Face]) -> Self {
        let supports = ambient
            .faces()
            .filter(|&s| generators.iter().any(|&g| g.is_subset(s)))
            .collect();
        MonomialModule { vertex_count: ambient.vertex_count(), supports }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn supports(&self) -> &BTreeSet<Face> {
        &self.supports
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        self.supports.contains(&a.support())
    }

    pub fn basis(&self, d: usize) -> GradedBasis {
        let mut out = Vec::new();
        for &s in &self.supports {
            monomials_on_support(self.vertex_count, s, d, &mut out);
        }
        GradedBasis::new(d, out)
    }

    pub fn dimension(&self, d: usize) -> usize {
        self.supports
            .iter()
            .map(|s| {
                let k = s.len();
                if k == 0 {
                    usize::from(d == 0)
                } else if d < k {
                    0
                } else {
                    binomial(d - 1, k - 1) as usize
                }
            })
            .sum()
    }

    /// `x_j · a`, or `None` when the product vanishes in the module.
    pub fn multiply_by_variable(&self, j: usize, a: &Monomial) -> Option<Monomial> {
        let b = a.times_variable(j);
        self.contains(&b).then_some(b)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Matrix of the map sending each basis monomial of `from` to itself in `to`
/// (or to zero when absent), scaled by `sign`.
pub fn monomial_map(from: &GradedBasis, to: &GradedBasis, sign: i64) -> SparseMatrix {
    let s = BigInt::from(sign);
    let columns = from
        .monomials
        .iter()
        .map(|a| to.index_of(a).map(|i| vec![(i, s.clone())]).unwrap_or_default())
        .collect();
    SparseMatrix::from_columns(to.len(), columns)
}

/// Presentation of `Z[K]` by its minimal non-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRPresentation {
    complex: SimplicialComplex,
    minimal_nonfaces: Vec<Face>,
}

impl SRPresentation {
    pub fn new(k: &SimplicialComplex) -> Self {
        let mut nonfaces = BTreeSet::new();
        for f in k.faces() {
            for v in 1..=k.vertex_count() {
                if f.contains(v) {
                    continue;
                }
                let s = f.with(v);
                if !k.contains(s) && s.boundary_faces().all(|b| k.contains(b)) {
                    nonfaces.insert(s);
                }
            }
        }
        let mut minimal_nonfaces: Vec<Face> = nonfaces.into_iter().collect();
        minimal_nonfaces.sort_by_key(|f| (f.len(), f.vertices().collect::<Vec<_>>()));
        SRPresentation { complex: k.clone(), minimal_nonfaces }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Generators `x_σ` of the Stanley–Reisner ideal.
    pub fn minimal_nonfaces(&self) -> &[Face] {
        &self.minimal_nonfaces
    }

    pub fn module(&self) -> MonomialModule {
        MonomialModule::ring(&self.complex)
    }

    /// `x^a ≠ 0` in `Z[K]` iff `support(a) ∈ K`.
    pub fn is_nonzero(&self, a: &Monomial) -> bool {
        self.complex.contains(a.support())
    }

    /// Monomials of degree `d` (monomial units) that survive in `Z[K]`.
    pub fn graded_basis(&self, d: usize) -> Vec<Monomial> {
        self.module().basis(d).monomials
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_complex(&self.complex)
    }
}

/// `numerator(s) / (1 - s)^denominator_exponent` with `s = t^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Coefficient `k` multiplies `s^k = t^{2k}`.
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_s_pow(n: usize) -> Vec<i64> {
    (0..=n).map(|k| if k % 2 == 0 { binomial(n, k) } else { -binomial(n, k) }).collect()
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

impl HilbertSeries {
    /// `Σ_{σ∈K} s^{|σ|} (1-s)^{D-|σ|} / (1-s)^D` with `D = dim K + 1`.
    pub fn of_complex(k: &SimplicialComplex) -> Self {
        let d = (k.dim() + 1) as usize;
        let f = k.f_vector();
        let mut numerator = vec![0i64; d + 1];
        for (size, &count) in f.iter().enumerate() {
            let term = one_minus_s_pow(d - size);
            for (j, c) in term.iter().enumerate() {
                numerator[size + j] += count as i64 * c;
            }
        }
        HilbertSeries { numerator: trim(numerator), denominator_exponent: d }
    }

    /// Dimension of the degree-`d` piece (monomial units).
    pub fn coefficient(&self, d: usize) -> i64 {
        let e = self.denominator_exponent;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| *k <= d)
            .map(|(k, c)| if e == 0 { if k == d { *c } else { 0 } } else { c * binomial(d - k + e - 1, e - 1) })
            .sum()
    }

    pub fn coefficients(&self, up_to: usize) -> Vec<i64> {
        (0..=up_to).map(|d| self.coefficient(d)).collect()
    }

    /// Coefficients of `Hilb(s) · (1 - s)^n` up to `s^up_to`.
    pub fn times_one_minus_s_pow(&self, n: usize, up_to: usize) -> Vec<i64> {
        let series = self.coefficients(up_to);
        let factor = one_minus_s_pow(n);
        (0..=up_to)
            .map(|d| (0..=d.min(n)).map(|k| factor[k] * series[d - k]).sum())
            .collect()
    }

    /// `Hilb · (1-s)^n` as a polynomial when `n ≥ D`; `None` otherwise.
    pub fn euler_polynomial(&self, n: usize) -> Option<Vec<i64>> {
        (n >= self.denominator_exponent)
            .then(|| trim(poly_mul(&self.numerator, &one_minus_s_pow(n - self.denominator_exponent))))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t^2".to_string(),
                _ => format!("t^{}", 2 * k),
            };
            let coeff = match (c, k) {
                (1, k) if k > 0 => String::new(),
                (-1, k) if k > 0 => "-".to_string(),
                _ => c.to_string(),
            };
            terms.push(format!("{coeff}{mono}"));
        }
        let mut num = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        num = num.replace("+-", "-");
        match self.denominator_exponent {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/(1-t^2)"),
            e => write!(f, "({num})/(1-t^2)^{e}"),
        }
    }
}

/// Matrix of the quotient `Z[K_big]_d → Z[K_small]_d` in graded monomial bases.
pub fn restriction_map(big: &SimplicialComplex, small: &SimplicialComplex, d: usize) -> Result<IntegerMatrix> {
    if !small.is_subcomplex_of(big) {
        big.intersection(small)?;
        let missing = small.faces().find(|f| !big.contains(*f)).unwrap();
        return Err(crate::error::Error::NotASubcomplex(missing));
    }
    let from = MonomialModule::ring(big).basis(d);
    let to = MonomialModule::ring(small).basis(d);
    Ok(monomial_map(&from, &to, 1).to_dense())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceRanks {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub rank_in: usize,
    pub rank_out: usize,
}

/// Per-degree verdict for a sequence `0 → L → M → R → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    /// Cohomological degree `2d`.
    pub degree: usize,
    pub monomial_degree: usize,
    pub injective: bool,
    pub exact_mid: bool,
    pub surjective: bool,
    pub ranks: SequenceRanks,
}

impl DegreeVerdict {
    pub fn exact(&self) -> bool {
        self.injective && self.exact_mid && self.surjective
    }

    fn from_maps(d: usize, a: &SparseMatrix, b: &SparseMatrix) -> Result<Self> {
        let chk = ExactnessCheck::run(a, b)?;
        let (left, middle, right) = (a.cols(), a.rows(), b.rows());
        Ok(DegreeVerdict {
            degree: 2 * d,
            monomial_degree: d,
            injective: chk.rank_a == left,
            exact_mid: chk.exact_at_middle(middle),
            surjective: chk.rank_b == right && chk.image_b_saturated,
            ranks: SequenceRanks { left, middle, right, rank_in: chk.rank_a, rank_out: chk.rank_b },
        })
    }
}

/// Exactness of `0 → Z[K1∪K2] → Z[K1] ⊕ Z[K2] → Z[K1∩K2] → 0`, degree by degree.
#[derive(Clone, Debug, Serialize)]
pub struct FiberProductReport {
    pub d_max: usize,
    pub degrees: Vec<DegreeVerdict>,
}

impl FiberProductReport {
    pub fn all_exact(&self) -> bool {
        self.degrees.iter().all(DegreeVerdict::exact)
    }
}

/// The two maps of the fiber-product sequence in degree `d`: `(f1, f2)` and `g1 - g2`.
fn fiber_product_maps(
    union: &MonomialModule,
    k1: &MonomialModule,
    k2: &MonomialModule,
    w: &MonomialModule,
    d: usize,
) -> (SparseMatrix, SparseMatrix) {
    let (bu, b1, b2, bw) = (union.basis(d), k1.basis(d), k2.basis(d), w.basis(d));
    let theta = monomial_map(&bu, &b1, 1).vstack(&monomial_map(&bu, &b2, 1)).expect("same source");
    let diff = monomial_map(&b1, &bw, 1).hstack(&monomial_map(&b2, &bw, -1)).expect("same target");
    (theta, diff)
}

pub fn verify_fiber_product(k1: &SimplicialComplex, k2: &SimplicialComplex, d_max: usize) -> Result<FiberProductReport> {
    let union = MonomialModule::ring(&k1.union(k2)?);
    let w = MonomialModule::ring(&k1.intersection(k2)?);
    let (m1, m2) = (MonomialModule::ring(k1), MonomialModule::ring(k2));
    let degrees = (0..=d_max)
        .map(|d| {
            let (theta, diff) = fiber_product_maps(&union, &m1, &m2, &w, d);
            DegreeVerdict::from_maps(d, &theta, &diff)
        })
        .collect::<Result<_>>()?;
    Ok(FiberProductReport { d_max, degrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedSumDegree {
    #[serde(flatten)]
    pub sequence: DegreeVerdict,
    /// `θ(I_Z)` lies in the fiber product.
    pub lands_in_fiber_product: bool,
    /// `I_Z → J_Z, x_σ ↦ x_σ` is a bijection on monomial bases compatible with multiplication.
    pub ideal_isomorphism: bool,
    /// `dim Z[K]_d = dim (Z[K1] ×_{Z[W]} Z[K2])_d − dim (I_Z)_d`.
    pub hilbert_identity: bool,
}

impl ConnectedSumDegree {
    pub fn holds(&self) -> bool {
        self.sequence.exact() && self.lands_in_fiber_product && self.ideal_isomorphism && self.hilbert_identity
    }
}

/// Exactness of `0 → I_Z → Z[K1] ×_{Z[W]} Z[K2] → Z[K1 #^Z K2] → 0` together
/// with the identification of `I_Z ⊆ Z[K1∪K2]` with `J_Z ⊆ Z[W]`.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectedSumRingReport {
    pub d_max: usize,
    pub degrees: Vec<ConnectedSumDegree>,
}

impl ConnectedSumRingReport {
    pub fn all_hold(&self) -> bool {
        self.degrees.iter().all(ConnectedSumDegree::holds)
    }
}

pub fn verify_connected_sum_ring(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    z: &FaceSubset,
    d_max: usize,
) -> Result<ConnectedSumRingReport> {
    let union_cx = k1.union(k2)?;
    let w_cx = k1.intersection(k2)?;
    check_connected_sum_hypothesis(&union_cx, &w_cx, z)?;
    let sum_cx = union_cx.deletion(z);
    let gens: Vec<Face> = z.iter().collect();

    let union = MonomialModule::ring(&union_cx);
    let w = MonomialModule::ring(&w_cx);
    let (m1, m2) = (MonomialModule::ring(k1), MonomialModule::ring(k2));
    let sum = MonomialModule::ring(&sum_cx);
    let i_z = MonomialModule::ideal(&union_cx, &gens);
    let j_z = MonomialModule::ideal(&w_cx, &gens);

    let mut degrees = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let (bi, bu, bs) = (i_z.basis(d), union.basis(d), sum.basis(d));
        let inclusion = monomial_map(&bi, &bu, 1);
        let quotient = monomial_map(&bu, &bs, 1);
        let sequence = DegreeVerdict::from_maps(d, &inclusion, &quotient)?;

        let (theta, diff) = fiber_product_maps(&union, &m1, &m2, &w, d);
        let lands_in_fiber_product = diff.mul(&theta.mul(&inclusion)?)?.is_zero();

        let bj = j_z.basis(d);
        let ideal_isomorphism = bi.monomials == bj.monomials
            && bi.monomials.iter().all(|a| {
                (1..=union.vertex_count())
                    .all(|j| i_z.multiply_by_variable(j, a) == j_z.multiply_by_variable(j, a))
            });

        let fiber_dim = m1.dimension(d) + m2.dimension(d) - w.dimension(d);
        let hilbert_identity = sum.dimension(d) + bi.len() == fiber_dim;

        degrees.push(ConnectedSumDegree { sequence, lands_in_fiber_product, ideal_isomorphism, hilbert_identity });
    }
    Ok(ConnectedSumRingReport { d_max, degrees })
}

/// An ideal of `Z[K]` generated by squarefree monomials `x_σ`.
///
/// The empty face stands for the generator `1` (unit ideal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ambient: SimplicialComplex,
    generators: Vec<Face>,
}

impl MonomialIdeal {
    /// Generators that are not faces of `ambient` are zero in `Z[K]` and dropped.
    pub fn new(ambient: &SimplicialComplex, generators: impl IntoIterator<Item = Face>) -> Self {
        let set: BTreeSet<Face> = generators.into_iter().filter(|g| ambient.contains(*g)).collect();
        MonomialIdeal { ambient: ambient.clone(), generators: set.into_iter().collect() }
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn generators(&self) -> &[Face] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> Vec<Face> {
        self.generators
            .iter()
            .copied()
            .filter(|&f| !self.generators.iter().any(|&g| g != f && g.is_subset(f)))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.contains(&Face::EMPTY)
    }

    pub fn module(&self) -> MonomialModule {
        MonomialModule::ideal(&self.ambient, &self.generators)
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        let s = a.support();
        self.ambient.contains(s) && self.generators.iter().any(|g| g.is_subset(s))
    }
}

/// Generators of `(0 :_{Z[K]} I_{K\W})`: `x_σ` for `σ ∈ W \ closure(K \ W)`,
/// plus the unit when `I_{K\W} = 0`.
pub fn annihilator_generators(k: &SimplicialComplex, w: &SimplicialComplex) -> Result<MonomialIdeal> {
    let z = strong_z(k, w)?;
    let mut gens: Vec<Face> = z.iter().collect();
    if k.difference(w).is_empty() {
        gens.push(Face::EMPTY);
    }
    Ok(MonomialIdeal::new(k, gens))
}

/// Per-degree Z-basis of `{x ∈ Z[K]_d | x · x_τ = 0 for all generators x_τ of I_{K\W}}`,
/// in the coordinates of the sorted graded basis of `Z[K]_d`. Solved by linear algebra.
pub fn annihilator_truncated(k: &SimplicialComplex, w: &SimplicialComplex, d_max: usize) -> Result<Vec<Vec<Vec<BigInt>>>> {
    if !w.is_subcomplex_of(k) {
        strong_z(k, w)?;
    }
    let ring = MonomialModule::ring(k);
    let gens = k.difference(w).minimal_members();
    (0..=d_max).map(|d| Ok(multiplication_map(&ring, &gens, d).kernel_basis())).collect()
}

/// `x ↦ (x · x_τ)_τ` from degree `d` into the direct sum of the target degrees.
fn multiplication_map(ring: &MonomialModule, gens: &[Face], d: usize) -> SparseMatrix {
    let source = ring.basis(d);
    let m = ring.vertex_count();
    let targets: Vec<GradedBasis> = gens.iter().map(|g| ring.basis(d + g.len())).collect();
    let mut offsets = Vec::with_capacity(gens.len());
    let mut total = 0;
    for t in &targets {
        offsets.push(total);
        total += t.len();
    }
    let columns = source
        .monomials
        .iter()
        .map(|a| {
            gens.iter()
                .zip(&targets)
                .zip(&offsets)
                .filter_map(|((g, t), off)| {
                    let b = a.times(&Monomial::squarefree(m, *g));
                    t.index_of(&b).map(|i| (off + i, BigInt::one()))
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_columns(total, columns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorDegree {
    pub degree: usize,
    pub monomial_degree: usize,
    pub kernel_rank: usize,
    pub ideal_rank: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorReport {
    pub generators: Vec<Face>,
    pub degrees: Vec<AnnihilatorDegree>,
}

impl AnnihilatorReport {
    pub fn agree(&self) -> bool {
        self.degrees.iter().all(|d| d.agree)
    }
}

/// Compares [`annihilator_generators`] with [`annihilator_truncated`] as lattices in each degree.
pub fn compare_annihilator(k: &SimplicialComplex, w: &SimplicialComplex, d_max: usize) -> Result<AnnihilatorReport> {
    let ideal = annihilator_generators(k, w)?;
    let kernels = annihilator_truncated(k, w, d_max)?;
    let ring = MonomialModule::ring(k);
    let gens = k.difference(w).minimal_members();
    let mut degrees = Vec::new();
    for (d, kernel) in kernels.iter().enumerate() {
        let basis = ring.basis(d);
        let in_ideal: Vec<bool> = basis.monomials.iter().map(|a| ideal.contains(a)).collect();
        let ideal_rank = in_ideal.iter().filter(|x| **x).count();
        let kernel_inside = kernel
            .iter()
            .all(|v| v.iter().zip(&in_ideal).all(|(x, inside)| *inside || x.is_zero()));
        let map = multiplication_map(&ring, &gens, d);
        let ideal_inside = (0..basis.len()).filter(|&j| in_ideal[j]).all(|j| map.column(j).is_empty());
        degrees.push(AnnihilatorDegree {
            degree: 2 * d,
            monomial_degree: d,
            kernel_rank: kernel.len(),
            ideal_rank,
            agree: kernel_inside && ideal_inside && kernel.len() == ideal_rank,
        });
    }
    Ok(AnnihilatorReport { generators: ideal.generators().to_vec(), degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(m, facets).unwrap()
    }

    fn f(m: usize, v: &[usize]) -> Face {
        Face::from_vertices(m, v.iter().copied()).unwrap()
    }

    fn square() -> SimplicialComplex {
        cx(4, &[&[1, 4], &[4, 3], &[3, 2], &[2, 1]])
    }

    #[test]
    fn minimal_nonfaces_of_square() {
        let r = SRPresentation::new(&square());
        assert_eq!(r.minimal_nonfaces(), &[f(4, &[1, 3]), f(4, &[2, 4])]);
    }

    #[test]
    fn minimal_nonfaces_with_ghost() {
        let k = cx(5, &[&[1, 4], &[4, 3], &[3, 2], &[2, 1]]);
        let r = SRPresentation::new(&k);
        assert_eq!(r.minimal_nonfaces(), &[f(5, &[5]), f(5, &[1, 3]), f(5, &[2, 4])]);
    }

    #[test]
    fn full_simplex_has_no_nonfaces() {
        let k = cx(3, &[&[1, 2, 3]]);
        assert!(SRPresentation::new(&k).minimal_nonfaces().is_empty());
    }

    #[test]
    fn graded_bases() {
        let edge = cx(2, &[&[1, 2]]);
        let b = SRPresentation::new(&edge).graded_basis(2);
        assert_eq!(b, vec![Monomial(vec![0, 2]), Monomial(vec![1, 1]), Monomial(vec![2, 0])]);
        assert_eq!(SRPresentation::new(&square()).graded_basis(2).len(), 8);
        assert_eq!(SRPresentation::new(&square()).graded_basis(0), vec![Monomial::one(4)]);
    }

    #[test]
    fn hilbert_series_examples() {
        let edge = HilbertSeries::of_complex(&cx(2, &[&[1, 2]]));
        assert_eq!(edge, HilbertSeries { numerator: vec![1], denominator_exponent: 2 });
        let sq = HilbertSeries::of_complex(&square());
        assert_eq!(sq, HilbertSeries { numerator: vec![1, 2, 1], denominator_exponent: 2 });
        assert_eq!(sq.to_string(), "(1+2t^2+t^4)/(1-t^2)^2");
        let point = HilbertSeries::of_complex(&cx(3, &[]));
        assert_eq!(point, HilbertSeries { numerator: vec![1], denominator_exponent: 0 });
        assert_eq!(point.coefficients(3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn hilbert_series_matches_basis_counts() {
        let k = cx(5, &[&[1, 2, 3], &[3, 4], &[5]]);
        let hs = HilbertSeries::of_complex(&k);
        let r = SRPresentation::new(&k);
        for d in 0..=12 {
            assert_eq!(hs.coefficient(d), r.graded_basis(d).len() as i64, "degree {d}");
        }
    }

    #[test]
    fn restriction_examples() {
        let k1 = cx(5, &[&[1, 4], &[4, 3], &[3, 5], &[5, 2], &[2, 1]]);
        let k2 = cx(5, &[&[2, 3], &[3, 5], &[5, 2]]);
        let union = k1.union(&k2).unwrap();
        let w = k1.intersection(&k2).unwrap();
        let r = restriction_map(&union, &w, 1).unwrap();
        // rows: W-basis x2,x3,x5 (sorted); columns: x1..x5 (sorted descending by exponents)
        assert_eq!(r.rows(), 3);
        assert_eq!(r.cols(), 5);
        assert_eq!(r.rank(), 3);
        let id = restriction_map(&union, &union, 2).unwrap();
        assert_eq!(id, IntegerMatrix::identity(id.rows()));
        let empty = SimplicialComplex::empty(5).unwrap();
        assert!(restriction_map(&union, &empty, 1).unwrap().is_zero());
        assert!(restriction_map(&w, &union, 1).is_err());
    }

    #[test]
    fn fiber_product_exact_on_example() {
        let k1 = cx(5, &[&[1, 4], &[4, 3], &[3, 5], &[5, 2], &[2, 1]]);
        let k2 = cx(5, &[&[2, 3], &[3, 5], &[5, 2]]);
        let report = verify_fiber_product(&k1, &k2, 8).unwrap();
        assert!(report.all_exact(), "{report:?}");
        assert_eq!(report.degrees[1].ranks.middle, 8);
    }

    #[test]
    fn fiber_product_of_equal_complexes() {
        let k = square();
        assert!(verify_fiber_product(&k, &k, 4).unwrap().all_exact());
    }

    #[test]
    fn connected_sum_ring_example() {
        let k1 = cx(5, &[&[1, 4], &[4, 3], &[3, 5], &[5, 2], &[2, 1]]);
        let k2 = cx(5, &[&[2, 3], &[3, 5], &[5, 2]]);
        let z = FaceSubset::new(5, [f(5, &[5])]).unwrap();
        let report = verify_connected_sum_ring(&k1, &k2, &z, 8).unwrap();
        assert!(report.all_hold(), "{report:?}");
        // quotient Hilbert function equals that of Z[K]
        let k = cx(5, &[&[1, 4], &[4, 3], &[3, 2], &[2, 1]]);
        let hs = HilbertSeries::of_complex(&k);
        for deg in &report.degrees {
            assert_eq!(deg.sequence.ranks.right as i64, hs.coefficient(deg.sequence.monomial_degree));
        }
    }

    #[test]
    fn connected_sum_ring_with_empty_z() {
        let k1 = cx(4, &[&[1, 2], &[2, 3]]);
        let k2 = cx(4, &[&[2, 3], &[3, 4]]);
        let report = verify_connected_sum_ring(&k1, &k2, &FaceSubset::empty(4), 5).unwrap();
        assert!(report.all_hold());
        assert!(report.degrees.iter().all(|d| d.sequence.ranks.left == 0));
    }

    #[test]
    fn annihilator_on_pentagon() {
        let k1 = cx(5, &[&[1, 4], &[4, 3], &[3, 5], &[5, 2], &[2, 1]]);
        let w = cx(5, &[&[3, 5], &[5, 2]]);
        let ideal = annihilator_generators(&k1, &w).unwrap();
        assert_eq!(ideal.minimal_generators(), vec![f(5, &[5])]);
        assert!(compare_annihilator(&k1, &w, 4).unwrap().agree());
    }

    #[test]
    fn annihilator_of_zero_ideal_is_unit() {
        let k = square();
        let ideal = annihilator_generators(&k, &k).unwrap();
        assert!(ideal.is_unit());
        let report = compare_annihilator(&k, &k, 3).unwrap();
        assert!(report.agree());
        assert_eq!(report.degrees[0].kernel_rank, 1);
    }

    #[test]
    fn annihilator_of_simplex_boundary() {
        let k = cx(3, &[&[1, 2, 3]]);
        let w = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        // Z[K] is a domain, so x_123 has zero annihilator
        let ideal = annihilator_generators(&k, &w).unwrap();
        assert!(ideal.generators().is_empty());
        let report = compare_annihilator(&k, &w, 4).unwrap();
        assert!(report.agree());
        assert!(report.degrees.iter().all(|d| d.kernel_rank == 0));
    }
}
