//! Graded `Tor^{Z[u_1..u_n]}_p(M, Z)` for monomial modules `M` over `Z[x_1..x_m]`,
//! where `u_i = Σ_j B_ij x_j`, computed from the Koszul complex of the `u_i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{AbelianGroup, GradedAbelianGroup};
use crate::matrix::{IntegerMatrix, SparseMatrix};
use crate::simplicial::{check_connected_sum_hypothesis, FaceSubset, SimplicialComplex};
use crate::stanley_reisner::{monomial_map, GradedBasis, HilbertSeries, MonomialModule, SRPresentation};

pub const DEFAULT_D_MAX: usize = 10;

/// The linear forms `u_i = Σ_j B_ij x_j` given by an `n × m` matrix of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringSpec {
    b: IntegerMatrix,
}

impl SubringSpec {
    pub fn new(b: IntegerMatrix) -> Result<Self> {
        let rank = b.rank();
        if rank != b.rows() {
            return Err(Error::RankDeficient { rank, expected: b.rows() });
        }
        Ok(SubringSpec { b })
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.b
    }

    /// Number of linear forms.
    pub fn n(&self) -> usize {
        self.b.rows()
    }

    /// Number of variables.
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    fn check_vertex_count(&self, m: usize) -> Result<()> {
        if self.m() != m {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} columns but the module lives on {m} variables",
                self.m()
            )));
        }
        Ok(())
    }
}

/// For every facet `σ`, the columns `B_j` (`j ∈ σ`) are linearly independent over Q.
pub fn lsop_check(k: &SimplicialComplex, s: &SubringSpec) -> bool {
    k.facets().into_iter().all(|sigma| {
        let cols: Vec<usize> = sigma.vertices().map(|v| v - 1).filter(|&j| j < s.m()).collect();
        cols.len() == sigma.len() && s.b.select_columns(&cols).rank() == cols.len()
    })
}

/// Size-`p` subsets of `0..n` in lexicographic order.
fn subsets_of_size(n: usize, p: usize) -> Vec<Face> {
    let mut out: Vec<Face> = Face::full(n).subsets().filter(|f| f.len() == p).collect();
    out.sort_by_key(|f| f.vertices().collect::<Vec<_>>());
    out
}

/// The Koszul complex `Λ^p(Z^n) ⊗ M_{d-p}` with differential
/// `e_I ⊗ f ↦ Σ_k (-1)^k e_{I \ i_k} ⊗ u_{i_k} f`.
struct Koszul<'a> {
    module: &'a MonomialModule,
    /// Nonzero entries of each row of `B`: `(variable, coefficient)`.
    forms: Vec<Vec<(usize, BigInt)>>,
    n: usize,
    bases: HashMap<usize, GradedBasis>,
    wedges: Vec<Vec<Face>>,
}

impl<'a> Koszul<'a> {
    fn new(module: &'a MonomialModule, s: &SubringSpec) -> Self {
        let n = s.n();
        let forms = (0..n)
            .map(|i| {
                (0..s.m())
                    .filter(|&j| !s.b.get(i, j).is_zero())
                    .map(|j| (j + 1, s.b.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let wedges = (0..=n).map(|p| subsets_of_size(n, p)).collect();
        Koszul { module, forms, n, bases: HashMap::new(), wedges }
    }

    fn basis(&mut self, d: usize) -> &GradedBasis {
        let module = self.module;
        self.bases.entry(d).or_insert_with(|| module.basis(d))
    }

    /// Rank of `C_{p,d}`.
    fn chain_rank(&mut self, p: usize, d: usize) -> usize {
        if p > self.n || p > d {
            return 0;
        }
        self.wedges[p].len() * self.basis(d - p).len()
    }

    /// `∂ : C_{p,d} → C_{p-1,d}`.
    fn differential(&mut self, p: usize, d: usize) -> SparseMatrix {
        let rows = if p == 0 { 0 } else { self.chain_rank(p - 1, d) };
        let cols = self.chain_rank(p, d);
        if p == 0 || cols == 0 {
            return SparseMatrix::zeros(rows, cols);
        }
        self.basis(d - p);
        self.basis(d - p + 1);
        let source = &self.bases[&(d - p)];
        let target = &self.bases[&(d - p + 1)];
        let block = target.len();
        let target_index: HashMap<Face, usize> =
            self.wedges[p - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut columns = Vec::with_capacity(cols);
        for wedge in &self.wedges[p] {
            for a in &source.monomials {
                let mut col = Vec::new();
                for (k, i) in wedge.vertices().enumerate() {
                    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    let offset = target_index[&wedge.without(i)] * block;
                    for (j, coeff) in &self.forms[i - 1] {
                        if let Some(b) = self.module.multiply_by_variable(*j, a) {
                            col.push((offset + target.index_of(&b).expect("basis monomial"), &sign * coeff));
                        }
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix::from_columns(rows, columns)
    }
}

/// Koszul homology `Tor_p` for `p = 0..=p_max`, each graded by monomial degree `0..=d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub n: usize,
    pub p_max: usize,
    pub d_max: usize,
    pub groups: Vec<GradedAbelianGroup>,
}

impl TorTable {
    pub fn get(&self, p: usize, d: usize) -> AbelianGroup {
        self.groups.get(p).map(|g| g.get(d as i64)).unwrap_or_default()
    }

    /// `Tor_p` vanishes in every degree up to `d_max`.
    pub fn vanishes(&self, p: usize) -> bool {
        self.groups.get(p).is_none_or(GradedAbelianGroup::is_zero)
    }

    /// Smallest monomial degree with `Tor_p ≠ 0`.
    pub fn first_nonzero(&self, p: usize) -> Option<usize> {
        self.groups.get(p)?.nonzero_degrees().first().map(|d| *d as usize)
    }

    /// `Σ_p (-1)^p rank Tor_p` in each degree `0..=d_max`.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        (0..=self.d_max)
            .map(|d| {
                (0..=self.p_max)
                    .map(|p| {
                        let r = self.get(p, d).free_rank as i64;
                        if p % 2 == 0 { r } else { -r }
                    })
                    .sum()
            })
            .collect()
    }

    /// If `Tor_1` vanishes up to `d_max`, so does every `Tor_i`, `2 ≤ i ≤ p_max`.
    pub fn franz_puppe_consistent(&self) -> bool {
        !self.vanishes(1) || (2..=self.p_max).all(|i| self.vanishes(i))
    }
}

impl Serialize for TorTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            p: usize,
            degree: usize,
            monomial_degree: usize,
            rank: usize,
            torsion: Vec<String>,
        }
        let rows = self.groups.iter().enumerate().flat_map(|(p, g)| {
            g.iter().filter(|(_, a)| !a.is_zero()).map(move |(d, a)| Row {
                p,
                degree: 2 * d as usize,
                monomial_degree: d as usize,
                rank: a.free_rank,
                torsion: a.torsion.iter().map(|t| t.to_string()).collect(),
            })
        });
        serializer.collect_seq(rows)
    }
}

fn check_bounds(p_max: usize, d_max: usize) -> Result<()> {
    if d_max < p_max {
        return Err(Error::DegreeBoundTooSmall { d_max, p_max });
    }
    Ok(())
}

/// `Tor^{Z[u]}_p(M, Z)` for a monomial module.
pub fn koszul_tor_module(module: &MonomialModule, s: &SubringSpec, p_max: usize, d_max: usize) -> Result<TorTable> {
    check_bounds(p_max, d_max)?;
    s.check_vertex_count(module.vertex_count())?;
    let mut kz = Koszul::new(module, s);
    let mut groups = vec![GradedAbelianGroup::new(); p_max + 1];
    for d in 0..=d_max {
        let mut outgoing = kz.differential(0, d);
        for (p, graded) in groups.iter_mut().enumerate() {
            let incoming = kz.differential(p + 1, d);
            assert!(outgoing.mul(&incoming)?.is_zero(), "Koszul differential does not square to zero (p = {p}, d = {d})");
            graded.insert(d as i64, AbelianGroup::homology(kz.chain_rank(p, d), &outgoing, &incoming));
            outgoing = incoming;
        }
    }
    Ok(TorTable { n: s.n(), p_max, d_max, groups })
}

/// `Tor^{Z[u]}_p(Z[K], Z)`.
pub fn koszul_tor(r: &SRPresentation, s: &SubringSpec, p_max: usize, d_max: usize) -> Result<TorTable> {
    koszul_tor_module(&r.module(), s, p_max, d_max)
}

/// `Σ_p (-1)^p rank Tor_p(d)` against the coefficients of `Hilb(Z[K]) (1 - s)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub expected: Vec<i64>,
    pub observed: Vec<i64>,
    pub holds: bool,
}

/// Requires `p_max ≥ n` so that every homological degree is present.
pub fn euler_check(k: &SimplicialComplex, table: &TorTable) -> Option<EulerCheck> {
    if table.p_max < table.n {
        return None;
    }
    let expected = HilbertSeries::of_complex(k).times_one_minus_s_pow(table.n, table.d_max);
    let observed = table.euler_characteristics();
    Some(EulerCheck { holds: expected == observed, expected, observed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Unconditional,
    #[serde(rename = "bounded evidence")]
    BoundedEvidence,
}

/// A vanishing verdict is unconditional only when the forms are an l.s.o.p.
/// candidate, `Hilb · (1 - s)^n` is a polynomial of degree `< d_max`, and
/// every computed Tor group vanishes above that degree.
pub fn confidence(k: &SimplicialComplex, s: &SubringSpec, table: &TorTable) -> Confidence {
    let Some(poly) = HilbertSeries::of_complex(k).euler_polynomial(s.n()) else {
        return Confidence::BoundedEvidence;
    };
    let bound = poly.len().saturating_sub(1);
    let quiet_above = (0..=table.p_max).all(|p| (bound + 1..=table.d_max).all(|d| table.get(p, d).is_zero()));
    if lsop_check(k, s) && bound < table.d_max && quiet_above {
        Confidence::Unconditional
    } else {
        Confidence::BoundedEvidence
    }
}

/// Tor table for a complex together with its self-checks.
#[derive(Clone, Debug, Serialize)]
pub struct TorReport {
    pub tor: TorTable,
    pub euler: Option<EulerCheck>,
    pub franz_puppe_consistent: bool,
    pub lsop: bool,
    pub confidence: Confidence,
}

impl TorReport {
    pub fn compute(k: &SimplicialComplex, s: &SubringSpec, p_max: usize, d_max: usize) -> Result<Self> {
        let tor = koszul_tor(&SRPresentation::new(k), s, p_max, d_max)?;
        Ok(TorReport {
            euler: euler_check(k, &tor),
            franz_puppe_consistent: tor.franz_puppe_consistent(),
            lsop: lsop_check(k, s),
            confidence: confidence(k, s, &tor),
            tor,
        })
    }

    /// `Tor_p = 0` up to `d_max` for every `1 ≤ p ≤ p_max`.
    pub fn higher_tor_vanishes(&self) -> bool {
        (1..=self.tor.p_max).all(|p| self.tor.vanishes(p))
    }
}

/// `coker(∂_1 : C_{1,d} → C_{0,d}) = Tor_0(M)_d`, as generators modulo relation columns.
struct Presentation {
    gens: usize,
    relations: SparseMatrix,
}

impl Presentation {
    fn tor0(module: &MonomialModule, s: &SubringSpec, d: usize) -> Self {
        let mut kz = Koszul::new(module, s);
        Presentation { gens: kz.chain_rank(0, d), relations: kz.differential(1, d) }
    }

    fn direct_sum(&self, other: &Presentation) -> Self {
        let top = self.relations.vstack(&SparseMatrix::zeros(other.gens, self.relations.cols())).unwrap();
        let bottom = SparseMatrix::zeros(self.gens, other.relations.cols()).vstack(&other.relations).unwrap();
        Presentation { gens: self.gens + other.gens, relations: top.hstack(&bottom).unwrap() }
    }
}

/// Generators (as columns) of `{x | g x ∈ im rel}`.
fn preimage(g: &SparseMatrix, rel: &SparseMatrix) -> SparseMatrix {
    let joint = g.hstack(rel).expect("same target");
    let a = g.cols();
    let columns = joint
        .kernel_basis()
        .into_iter()
        .map(|v| v.into_iter().take(a).enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    SparseMatrix::from_columns(a, columns)
}

fn lattice_index_data(x: &SparseMatrix) -> (usize, BigInt) {
    let f = x.invariant_factors();
    (f.len(), f.into_iter().fold(BigInt::one(), |acc, v| acc * v))
}

/// The column spans of `x` and `y` coincide.
fn same_lattice(x: &SparseMatrix, y: &SparseMatrix) -> bool {
    let joint = x.hstack(y).expect("same ambient rank");
    let j = lattice_index_data(&joint);
    lattice_index_data(x) == j && lattice_index_data(y) == j
}

/// Per-degree exactness of `0 → L → M → N → 0` on presented groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentedDegree {
    pub degree: usize,
    pub monomial_degree: usize,
    pub injective: bool,
    pub exact_mid: bool,
    pub surjective: bool,
}

impl PresentedDegree {
    pub fn exact(&self) -> bool {
        self.injective && self.exact_mid && self.surjective
    }
}

fn presented_exactness(
    d: usize,
    l: &Presentation,
    m: &Presentation,
    n: &Presentation,
    f: &SparseMatrix,
    g: &SparseMatrix,
) -> PresentedDegree {
    let injective = same_lattice(&preimage(f, &m.relations), &l.relations);
    let image = f.hstack(&m.relations).unwrap();
    let exact_mid = same_lattice(&preimage(g, &n.relations), &image);
    let onto = g.hstack(&n.relations).unwrap().invariant_factors();
    let surjective = onto.len() == n.gens && onto.iter().all(One::is_one);
    PresentedDegree { degree: 2 * d, monomial_degree: d, injective, exact_mid, surjective }
}

/// Tor₁ vanishing of the rings entering a connected sum.
#[derive(Clone, Debug, Serialize)]
pub struct TorHypotheses {
    pub w: bool,
    pub k1: bool,
    pub k2: bool,
    pub union: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorConclusions {
    /// When `Tor₁(Z[W]) = 0`: `Tor₁(Z[K̃]) = 0` iff `Tor₁(Z[K1]) = Tor₁(Z[K2]) = 0`. `None` if `Tor₁(Z[W]) ≠ 0`.
    pub union_criterion: Option<bool>,
    /// `0 → Tor₀(K̃) → Tor₀(K1) ⊕ Tor₀(K2) → Tor₀(W) → 0`.
    pub fiber_product: Vec<PresentedDegree>,
    /// `0 → Tor₀(I_Z) → Tor₀(K̃) → Tor₀(K) → 0`.
    pub ideal_sequence: Vec<PresentedDegree>,
    /// `rank Tor₀(K̃) = rank Tor₀(K1) + rank Tor₀(K2) - rank Tor₀(W)` in each degree.
    pub fiber_product_ranks: bool,
    pub sum_tor1_vanishes: bool,
    /// Smallest monomial degree with `Tor₁(Z[K]) ≠ 0`.
    pub sum_tor1_witness: Option<usize>,
}

impl TorConclusions {
    pub fn fiber_product_exact(&self) -> bool {
        self.fiber_product.iter().all(PresentedDegree::exact)
    }

    pub fn ideal_sequence_exact(&self) -> bool {
        self.ideal_sequence.iter().all(PresentedDegree::exact)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorFiberProductReport {
    pub d_max: usize,
    pub hypotheses: TorHypotheses,
    pub conclusions: TorConclusions,
    pub tables: TorTables,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorTables {
    pub w: TorReport,
    pub k1: TorReport,
    pub k2: TorReport,
    pub union: TorReport,
    pub sum: TorReport,
}

impl TorFiberProductReport {
    /// `Tor₁` vanishes for `W`, `K1` and `K2`.
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.w && self.hypotheses.k1 && self.hypotheses.k2
    }

    /// Hypotheses hold but `Tor₁(Z[K1 #^Z K2]) ≠ 0`.
    pub fn sum_obstruction_found(&self) -> bool {
        self.hypotheses_hold() && !self.conclusions.sum_tor1_vanishes
    }
}

/// Tor computations for `K̃ = K1 ∪ K2`, `K1`, `K2`, `W = K1 ∩ K2` and `K = K1 #^Z K2`.
pub fn verify_tor_fiber_product(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    z: &FaceSubset,
    s: &SubringSpec,
    d_max: usize,
) -> Result<TorFiberProductReport> {
    let union_cx = k1.union(k2)?;
    let w_cx = k1.intersection(k2)?;
    check_connected_sum_hypothesis(&union_cx, &w_cx, z)?;
    s.check_vertex_count(union_cx.vertex_count())?;
    let sum_cx = union_cx.deletion(z);
    let p_max = s.n().min(d_max);

    let tables = TorTables {
        w: TorReport::compute(&w_cx, s, p_max, d_max)?,
        k1: TorReport::compute(k1, s, p_max, d_max)?,
        k2: TorReport::compute(k2, s, p_max, d_max)?,
        union: TorReport::compute(&union_cx, s, p_max, d_max)?,
        sum: TorReport::compute(&sum_cx, s, p_max, d_max)?,
    };
    let hypotheses = TorHypotheses {
        w: tables.w.tor.vanishes(1),
        k1: tables.k1.tor.vanishes(1),
        k2: tables.k2.tor.vanishes(1),
        union: tables.union.tor.vanishes(1),
    };

    let modules = [&union_cx, k1, k2, &w_cx, &sum_cx].map(MonomialModule::ring);
    let [union, m1, m2, w, sum] = &modules;
    let gens: Vec<Face> = z.iter().collect();
    let ideal = MonomialModule::ideal(&union_cx, &gens);
    let mut fiber_product = Vec::new();
    let mut ideal_sequence = Vec::new();
    let mut fiber_product_ranks = true;
    for d in 0..=d_max {
        let [pu, p1, p2, pw, ps] = [union, m1, m2, w, sum].map(|m| Presentation::tor0(m, s, d));
        let pi = Presentation::tor0(&ideal, s, d);
        let [bu, b1, b2, bw, bs] = [union, m1, m2, w, sum].map(|m| m.basis(d));
        let bi = ideal.basis(d);

        let theta = monomial_map(&bu, &b1, 1).vstack(&monomial_map(&bu, &b2, 1))?;
        let diff = monomial_map(&b1, &bw, 1).hstack(&monomial_map(&b2, &bw, -1))?;
        fiber_product.push(presented_exactness(d, &pu, &p1.direct_sum(&p2), &pw, &theta, &diff));

        let inclusion = monomial_map(&bi, &bu, 1);
        let quotient = monomial_map(&bu, &bs, 1);
        ideal_sequence.push(presented_exactness(d, &pi, &pu, &ps, &inclusion, &quotient));

        let r = |t: &TorReport| t.tor.get(0, d).free_rank as i64;
        fiber_product_ranks &= r(&tables.union) == r(&tables.k1) + r(&tables.k2) - r(&tables.w);
    }

    let conclusions = TorConclusions {
        union_criterion: hypotheses.w.then_some(hypotheses.union == (hypotheses.k1 && hypotheses.k2)),
        fiber_product,
        ideal_sequence,
        fiber_product_ranks,
        sum_tor1_vanishes: tables.sum.tor.vanishes(1),
        sum_tor1_witness: tables.sum.tor.first_nonzero(1),
    };
    Ok(TorFiberProductReport { d_max, hypotheses, conclusions, tables })
}
