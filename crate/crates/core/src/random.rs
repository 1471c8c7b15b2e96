//! Random generators for complexes, polytopes, cuts and connected-sum data.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::face::Face;
use crate::matrix::IntegerMatrix;
use crate::polytope::{cut, is_generic_cut, CutSpec, Inequality, RationalPolytope};
use crate::simplicial::{FaceSubset, SimplicialComplex};

/// A nonempty random subset of `1..=m` with at most `max_size` vertices.
pub fn random_face<R: Rng + ?Sized>(rng: &mut R, m: usize, max_size: usize) -> Face {
    let size = rng.gen_range(1..=max_size.min(m).max(1));
    let mut verts: Vec<usize> = (1..=m).collect();
    verts.shuffle(rng);
    Face::from_vertices(m, verts.into_iter().take(size)).expect("in range")
}

/// Closure of up to `max_facets` random faces of size at most `max_size`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, m: usize, max_facets: usize, max_size: usize) -> SimplicialComplex {
    let count = rng.gen_range(0..=max_facets);
    SimplicialComplex::from_facets(m, (0..count).map(|_| random_face(rng, m, max_size))).expect("valid faces")
}

/// Closure of a random selection of faces of `k`.
pub fn random_subcomplex<R: Rng + ?Sized>(rng: &mut R, k: &SimplicialComplex) -> SimplicialComplex {
    let keep: f64 = rng.gen_range(0.2..0.8);
    let chosen: Vec<Face> = k.facets().into_iter().filter(|_| rng.gen_bool(keep)).collect();
    let mut gens = chosen;
    // occasionally keep a lower-dimensional face of a dropped facet
    for f in k.faces().filter(|f| !f.is_empty()) {
        if rng.gen_bool(0.05) {
            gens.push(f);
        }
    }
    SimplicialComplex::from_facets(k.vertex_count(), gens).expect("faces of k")
}

/// Two random complexes on `m` vertices with a nontrivial overlap.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, m: usize) -> (SimplicialComplex, SimplicialComplex) {
    let max_size = rng.gen_range(1..=m.min(4));
    let k1 = random_complex(rng, m, 5, max_size);
    let shared = random_subcomplex(rng, &k1);
    let extra = random_complex(rng, m, 3, max_size);
    let k2 = shared.union(&extra).expect("same vertex count");
    if rng.gen_bool(0.5) {
        (k1, k2)
    } else {
        (k2, k1)
    }
}

/// A random `Z ⊆ K1 ∩ K2` with `O_{K1∪K2}(Z) ⊆ K1 ∩ K2`.
pub fn random_valid_z<R: Rng + ?Sized>(rng: &mut R, k1: &SimplicialComplex, k2: &SimplicialComplex) -> FaceSubset {
    let union = k1.union(k2).expect("same vertex count");
    let w = k1.intersection(k2).expect("same vertex count");
    let m = union.vertex_count();
    let candidates: Vec<Face> = w
        .nonempty_faces()
        .iter()
        .filter(|&s| {
            let single = FaceSubset::new(m, [s]).expect("nonempty");
            union.open_neighborhood(&single).iter().all(|t| w.contains(t))
        })
        .collect();
    let keep: f64 = rng.gen_range(0.3..1.0);
    FaceSubset::new(m, candidates.into_iter().filter(|_| rng.gen_bool(keep))).expect("nonempty faces")
}

/// A random `n × m` integer matrix of rank `n` with entries in `-bound..=bound`.
pub fn random_full_rank_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, bound: i64) -> IntegerMatrix {
    assert!(n <= m, "rank {n} impossible with {m} columns");
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let b = if n == 0 { IntegerMatrix::zeros(0, m) } else { IntegerMatrix::from_rows(&rows).expect("rectangular") };
        if b.rank() == n {
            return b;
        }
    }
}

fn random_primitive_normal<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().fold(0i64, |g, a| g.gcd(a)) == 1 {
            return v;
        }
    }
}

/// A random cut of `p` that passes [`is_generic_cut`], or `None` after `attempts` tries.
pub fn random_generic_cut<R: Rng + ?Sized>(rng: &mut R, p: &RationalPolytope, attempts: usize) -> Option<CutSpec> {
    for _ in 0..attempts {
        let normal = random_primitive_normal(rng, p.dim(), 3);
        let values: Vec<BigRational> = p
            .vertices()
            .iter()
            .map(|v| Inequality::new(normal.clone(), 0).eval(&v.point))
            .collect();
        let lo = values.iter().min()?.ceil().to_integer().to_i64()?;
        let hi = values.iter().max()?.floor().to_integer().to_i64()?;
        if lo >= hi {
            continue;
        }
        // ⟨x, γ⟩ + ξ = 0 with -ξ strictly inside the range of ⟨v, γ⟩
        let offset = -rng.gen_range(lo..=hi);
        let Ok(c) = CutSpec::new(normal, offset) else { continue };
        if is_generic_cut(p, &c).map(|g| g.is_generic()).unwrap_or(false) {
            return Some(c);
        }
    }
    None
}

/// A box or simplex of side `scale`, in dimension `dim`.
fn seed_polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: i64) -> RationalPolytope {
    let mut ineqs = Vec::new();
    for i in 0..dim {
        let mut e = vec![0; dim];
        e[i] = 1;
        ineqs.push(Inequality::new(e, 0));
    }
    if rng.gen_bool(0.5) || dim == 1 {
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = -1;
            ineqs.push(Inequality::new(e, scale));
        }
    } else {
        ineqs.push(Inequality::new(vec![-1; dim], scale));
    }
    RationalPolytope::new(dim, ineqs).expect("box or simplex")
}

/// A random simple polytope in dimension `dim` with at most `max_inequalities` facets,
/// built from a box or simplex by repeated generic cuts.
pub fn random_simple_polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_inequalities: usize) -> RationalPolytope {
    let scale = rng.gen_range(12..=30);
    let mut p = seed_polytope(rng, dim, scale);
    if p.inequality_count() > max_inequalities {
        return p;
    }
    let target = rng.gen_range(p.inequality_count()..=max_inequalities);
    while p.inequality_count() < target {
        let Some(c) = random_generic_cut(rng, &p, 50) else { break };
        let next = if rng.gen_bool(0.5) { c.positive_side() } else { c.negative_side() };
        match p.with_inequality(next) {
            Ok(q) if q.is_simple() => p = q,
            _ => break,
        }
    }
    p
}

/// Connected-sum data `(K1, K2, Z)` that is a strong sum of Gorenstein complexes
/// along a Cohen–Macaulay intersection.
#[derive(Clone, Debug)]
pub struct StrongSumSample {
    pub k1: SimplicialComplex,
    pub k2: SimplicialComplex,
    pub z: FaceSubset,
    pub origin: &'static str,
}

/// Two pieces of a random generic polytope cut.
pub fn random_polytope_cut_sum<R: Rng + ?Sized>(rng: &mut R) -> Option<StrongSumSample> {
    let dim = rng.gen_range(2..=3);
    let p = random_simple_polytope(rng, dim, 7);
    let c = random_generic_cut(rng, &p, 50)?;
    let r = cut(&p, &c).ok()?;
    Some(StrongSumSample { k1: r.k_plus, k2: r.k_minus, z: r.z_o, origin: "polytope cut" })
}

/// Two polygons sharing a path of `shared` edges; the sum is the polygon on the outer arcs.
pub fn random_polygon_sum<R: Rng + ?Sized>(rng: &mut R) -> StrongSumSample {
    let shared = rng.gen_range(1..=3);
    let left = rng.gen_range(1..=3);
    let right = rng.gen_range(1..=3);
    let path: Vec<usize> = (1..=shared + 1).collect();
    let left_verts: Vec<usize> = (shared + 2..shared + 2 + left).collect();
    let right_verts: Vec<usize> = (shared + 2 + left..shared + 2 + left + right).collect();
    let m = shared + 1 + left + right;
    let mut order: Vec<usize> = (1..=m).collect();
    order.shuffle(rng);
    let label = |v: usize| order[v - 1];
    let cycle = |verts: Vec<usize>| {
        let n = verts.len();
        SimplicialComplex::from_facets(
            m,
            (0..n).map(|i| Face::from_vertices(m, [label(verts[i]), label(verts[(i + 1) % n])]).expect("in range")),
        )
        .expect("valid")
    };
    let k1 = cycle(path.iter().chain(left_verts.iter().rev()).copied().collect());
    let k2 = cycle(path.iter().chain(right_verts.iter().rev()).copied().collect());
    let w = k1.intersection(&k2).expect("same vertex count");
    let z = crate::simplicial::strong_z_by_closure(&k1, &w).expect("subcomplex");
    StrongSumSample { k1, k2, z, origin: "polygons along an arc" }
}

/// Boundary of the `d`-simplex on vertices `1..=d+1`, placed on `m` vertices.
fn simplex_boundary(d: usize, m: usize) -> SimplicialComplex {
    let full = Face::full(d + 1);
    SimplicialComplex::from_facets(m, full.boundary_faces()).expect("in range")
}

/// Boundary of the `d`-dimensional cross-polytope on vertices `1..=2d`.
fn cross_polytope_boundary(d: usize, m: usize) -> SimplicialComplex {
    let facets = (0..1u64 << d).map(|signs| {
        Face::from_vertices(m, (0..d).map(|i| if signs >> i & 1 == 0 { 2 * i + 1 } else { 2 * i + 2 })).expect("in range")
    });
    SimplicialComplex::from_facets(m, facets).expect("in range")
}

/// Stellar subdivision of a facet with a new vertex `apex`.
fn subdivide_facet(k: &SimplicialComplex, facet: Face, apex: usize) -> SimplicialComplex {
    let facets = k
        .facets()
        .into_iter()
        .filter(|&f| f != facet)
        .chain(facet.boundary_faces().map(|b| b.with(apex)));
    SimplicialComplex::from_facets(k.vertex_count(), facets).expect("in range")
}

/// A random simplicial sphere of dimension `d - 1` on `used` of `m` available vertices.
fn random_sphere<R: Rng + ?Sized>(rng: &mut R, d: usize, m: usize) -> (SimplicialComplex, usize) {
    let (mut k, mut used) = if rng.gen_bool(0.5) {
        (simplex_boundary(d, m), d + 1)
    } else {
        (cross_polytope_boundary(d, m), 2 * d)
    };
    for _ in 0..rng.gen_range(0..=2) {
        if used == m {
            break;
        }
        let facets = k.facets();
        let f = *facets.choose(rng).expect("nonempty");
        used += 1;
        k = subdivide_facet(&k, f, used);
    }
    (k, used)
}

/// Two random spheres glued along a common facet.
pub fn random_facet_sum<R: Rng + ?Sized>(rng: &mut R) -> StrongSumSample {
    let d = rng.gen_range(2..=3);
    let cap = 2 * d + 2;
    let (s1, used1) = random_sphere(rng, d, cap);
    let (s2, used2) = random_sphere(rng, d, cap);
    let m = used1 + used2 - d;
    let sigma1 = *s1.facets().choose(rng).expect("nonempty");
    let sigma2 = *s2.facets().choose(rng).expect("nonempty");

    // vertices of s2: those in sigma2 go to sigma1, the rest to fresh labels
    let mut perm = vec![0; cap];
    let mut targets = sigma1.vertices();
    let mut fresh = used1 + 1;
    for v in 1..=cap {
        perm[v - 1] = if sigma2.contains(v) {
            targets.next().expect("same size")
        } else if v <= used2 {
            fresh += 1;
            fresh - 1
        } else {
            0
        };
    }
    let relabel = |k: &SimplicialComplex, map: &dyn Fn(usize) -> usize| {
        SimplicialComplex::from_facets(
            m,
            k.facets().into_iter().map(|f| Face::from_vertices(m, f.vertices().map(map)).expect("in range")),
        )
        .expect("in range")
    };
    let k1 = relabel(&s1, &|v| v);
    let k2 = relabel(&s2, &|v| perm[v - 1]);
    let z = FaceSubset::new(m, [sigma1]).expect("nonempty");
    StrongSumSample { k1, k2, z, origin: "spheres along a facet" }
}

/// One of the strong Gorenstein sum families, chosen at random.
pub fn random_gorenstein_strong_sum<R: Rng + ?Sized>(rng: &mut R) -> StrongSumSample {
    loop {
        match rng.gen_range(0..3) {
            0 => {
                if let Some(s) = random_polytope_cut_sum(rng) {
                    return s;
                }
            }
            1 => return random_polygon_sum(rng),
            _ => return random_facet_sum(rng),
        }
    }
}
