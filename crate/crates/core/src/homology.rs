//! Graded abelian groups, reduced simplicial homology, and the Reisner and
//! Gorenstein* criteria over a field.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::matrix::{is_prime, SparseMatrix};
use crate::simplicial::SimplicialComplex;

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `ker(out) / im(incoming)` on `Z^dim`, assuming `out ∘ incoming = 0`.
    pub fn homology(dim: usize, out: &SparseMatrix, incoming: &SparseMatrix) -> Self {
        let rank_out = out.rank();
        let factors = incoming.invariant_factors();
        AbelianGroup {
            free_rank: dim - rank_out - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelian groups indexed by an integer degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedAbelianGroup {
    groups: BTreeMap<i64, AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i64, group: AbelianGroup) {
        self.groups.insert(degree, group);
    }

    /// The group in `degree`; degrees never inserted are zero.
    pub fn get(&self, degree: i64) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &AbelianGroup)> {
        self.groups.iter().map(|(d, g)| (*d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(AbelianGroup::is_zero)
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.iter().filter(|(_, g)| !g.is_zero()).map(|(d, _)| d).collect()
    }

    pub fn total_free_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank).sum()
    }
}

impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            degree: i64,
            #[serde(flatten)]
            group: &'a AbelianGroup,
        }
        serializer.collect_seq(self.groups.iter().map(|(d, g)| Row { degree: *d, group: g }))
    }
}

/// Coefficient field for homological criteria.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn rank(&self, m: &SparseMatrix) -> usize {
        match self {
            Field::Rational => m.rank(),
            Field::Prime(p) => m.rank_mod_p(*p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `Q` or `Fp:<prime>`.
impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| format!("unknown field {s:?}; expected Q or Fp:<prime>"))?;
        let p: u64 = p.parse().map_err(|_| format!("invalid prime {p:?}"))?;
        Field::prime(p).map_err(|e| e.to_string())
    }
}

/// Boundary maps `∂_k : C_k → C_{k-1}` of the augmented chain complex,
/// indexed by face dimension `k = 0..=dim` (`C_{-1} = Z·∅`).
struct ChainComplex {
    /// `faces[k + 1]` = faces of dimension `k`, sorted.
    faces: Vec<Vec<Face>>,
}

impl ChainComplex {
    fn new(k: &SimplicialComplex) -> Self {
        let top = (k.dim() + 1) as usize;
        let faces = (0..=top).map(|size| k.faces_of_size(size)).collect();
        ChainComplex { faces }
    }

    fn top_dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    fn rank(&self, dim: isize) -> usize {
        usize::try_from(dim + 1).ok().and_then(|i| self.faces.get(i)).map_or(0, Vec::len)
    }

    /// `∂_dim`; zero matrices outside `0..=top_dim`.
    fn boundary(&self, dim: isize) -> SparseMatrix {
        let (src, dst) = (self.rank(dim), self.rank(dim - 1));
        if dim < 0 || dim > self.top_dim() {
            return SparseMatrix::zeros(dst, src);
        }
        let targets = &self.faces[dim as usize];
        let index: BTreeMap<Face, usize> = targets.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let columns = self.faces[dim as usize + 1]
            .iter()
            .map(|s| {
                s.vertices()
                    .enumerate()
                    .map(|(pos, v)| {
                        let sign = if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        (index[&s.without(v)], sign)
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(dst, columns)
    }
}

/// Reduced integral homology `H̃_i(K)`, keyed by `i = -1..=dim K`.
pub fn simplicial_homology(k: &SimplicialComplex) -> GradedAbelianGroup {
    let c = ChainComplex::new(k);
    let mut out = GradedAbelianGroup::new();
    for i in -1..=c.top_dim() {
        let g = AbelianGroup::homology(c.rank(i), &c.boundary(i), &c.boundary(i + 1));
        out.insert(i as i64, g);
    }
    out
}

/// Reduced Betti numbers `dim_k H̃_i(K; k)`, keyed by `i = -1..=dim K`.
pub fn reduced_betti_numbers(k: &SimplicialComplex, field: Field) -> BTreeMap<i64, usize> {
    let c = ChainComplex::new(k);
    let ranks: Vec<usize> = (-1..=c.top_dim() + 1).map(|i| field.rank(&c.boundary(i))).collect();
    (-1..=c.top_dim())
        .map(|i| {
            let j = (i + 1) as usize;
            (i as i64, c.rank(i) - ranks[j] - ranks[j + 1])
        })
        .collect()
}

/// Reisner's criterion: `H̃_i(lk σ; k) = 0` for all `i < dim lk σ` and every face `σ`.
pub fn is_cohen_macaulay(k: &SimplicialComplex, field: Field) -> bool {
    k.faces().all(|sigma| {
        let lk = k.link(sigma).expect("sigma is a face");
        let top = lk.dim() as i64;
        reduced_betti_numbers(&lk, field).into_iter().all(|(i, b)| i >= top || b == 0)
    })
}

/// Vertices that lie in every facet (cone points).
fn cone_points(k: &SimplicialComplex) -> Face {
    k.facets().into_iter().fold(k.support(), Face::intersection)
}

/// Restriction of `K` to the vertices that are not cone points.
pub fn core(k: &SimplicialComplex) -> SimplicialComplex {
    k.restriction(k.support().difference(cone_points(k)))
}

fn is_homology_sphere_of_own_dim(k: &SimplicialComplex, field: Field) -> bool {
    let top = k.dim() as i64;
    reduced_betti_numbers(k, field).into_iter().all(|(i, b)| b == usize::from(i == top))
}

/// `K` is Gorenstein over `k` iff `core(K)` is Gorenstein*: every link in the
/// core, `link(∅)` included, has the homology of a sphere of its own dimension.
pub fn is_gorenstein(k: &SimplicialComplex, field: Field) -> bool {
    let c = core(k);
    let gorenstein_star = c
        .faces()
        .all(|sigma| is_homology_sphere_of_own_dim(&c.link(sigma).expect("sigma is a face"), field));
    gorenstein_star
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(m, facets).unwrap()
    }

    fn z(rank: usize) -> AbelianGroup {
        AbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// Six-vertex triangulation of the real projective plane.
    fn rp2() -> SimplicialComplex {
        cx(
            6,
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[2, 4, 5], &[2, 4, 6], &[3, 4, 6], &[3, 5, 6],
            ],
        )
    }

    #[test]
    fn homology_of_small_complexes() {
        let square = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        let h = simplicial_homology(&square);
        assert_eq!(h.get(0), z(0));
        assert_eq!(h.get(1), z(1));

        let tri = cx(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(simplicial_homology(&tri).get(1), z(1));

        let two_edges = cx(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(simplicial_homology(&two_edges).get(0), z(1));

        let void = SimplicialComplex::empty(2).unwrap();
        assert_eq!(simplicial_homology(&void).get(-1), z(1));
        assert_eq!(simplicial_homology(&square).get(-1), z(0));
    }

    #[test]
    fn projective_plane_has_torsion() {
        let h = simplicial_homology(&rp2());
        assert_eq!(h.get(1), AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2)] });
        assert!(h.get(2).is_zero());
        assert_eq!(h.get(1).to_string(), "Z/2");
        let q = reduced_betti_numbers(&rp2(), Field::Rational);
        assert_eq!(q[&1], 0);
        let f2 = reduced_betti_numbers(&rp2(), Field::Prime(2));
        assert_eq!((f2[&1], f2[&2]), (1, 1));
    }

    #[test]
    fn cohen_macaulay_examples() {
        let path = cx(5, &[&[3, 5], &[5, 2]]);
        assert!(is_cohen_macaulay(&path, Field::Rational));
        let edge_and_point = cx(3, &[&[1, 2], &[3]]);
        assert!(!is_cohen_macaulay(&edge_and_point, Field::Rational));
        let square = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert!(is_cohen_macaulay(&square, Field::Rational));
        // CM over Q but not over F_2
        assert!(is_cohen_macaulay(&rp2(), Field::Rational));
        assert!(!is_cohen_macaulay(&rp2(), Field::Prime(2)));
    }

    #[test]
    fn gorenstein_examples() {
        let square = cx(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert!(is_gorenstein(&square, Field::Rational));
        let simplex = cx(3, &[&[1, 2, 3]]);
        assert_eq!(core(&simplex), SimplicialComplex::empty(3).unwrap());
        assert!(is_gorenstein(&simplex, Field::Rational));
        // the cone point 5 drops out and the core is the 0-sphere {2},{3}
        let path = cx(5, &[&[3, 5], &[5, 2]]);
        assert!(is_gorenstein(&path, Field::Rational));
        let long_path = cx(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert!(!is_gorenstein(&long_path, Field::Rational));
        // a cone over a sphere is Gorenstein
        let cone = cx(5, &[&[1, 2, 5], &[2, 3, 5], &[3, 4, 5], &[4, 1, 5]]);
        assert!(is_gorenstein(&cone, Field::Rational));
        assert!(!is_gorenstein(&rp2(), Field::Rational));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>(), Ok(Field::Rational));
        assert_eq!("Fp:7".parse::<Field>(), Ok(Field::Prime(7)));
        assert!("Fp:8".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
        assert_eq!(Field::Prime(3).to_string(), "Fp:3");
    }
}
