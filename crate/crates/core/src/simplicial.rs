//! Simplicial complexes on a labeled vertex set `{1..m}`.
//!
//! A complex is stored as its full set of faces (not only facets), always
//! containing the empty face. The vertex count is part of a complex's
//! identity, so vertices that are not faces ("ghost" vertices) are tracked.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::Face;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: BTreeSet<Face>,
}

/// A set `Z` of nonempty faces of some complex on `vertex_count` vertices.
///
/// Not necessarily a subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceSubset {
    vertex_count: usize,
    members: BTreeSet<Face>,
}

fn check_vertex_count(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::NoVertices)
    } else if m > Face::MAX_VERTICES {
        Err(Error::TooManyVertices(m))
    } else {
        Ok(())
    }
}

fn check_face(m: usize, face: Face) -> Result<()> {
    if face.max_vertex() > m {
        Err(Error::VertexOutOfRange { vertex: face.max_vertex(), vertex_count: m })
    } else {
        Ok(())
    }
}

impl FaceSubset {
    pub fn new<I: IntoIterator<Item = Face>>(vertex_count: usize, members: I) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let members: BTreeSet<Face> = members.into_iter().collect();
        for &f in &members {
            if f.is_empty() {
                return Err(Error::EmptyFaceInSubset);
            }
            check_face(vertex_count, f)?;
        }
        Ok(FaceSubset { vertex_count, members })
    }

    /// Like [`FaceSubset::new`], additionally requiring every member to be a face of `parent`.
    pub fn within<I: IntoIterator<Item = Face>>(parent: &SimplicialComplex, members: I) -> Result<Self> {
        let z = Self::new(parent.vertex_count, members)?;
        if let Some(&bad) = z.members.iter().find(|f| !parent.contains(**f)) {
            return Err(Error::NotAFace(bad));
        }
        Ok(z)
    }

    pub fn empty(vertex_count: usize) -> Self {
        FaceSubset { vertex_count, members: BTreeSet::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn members(&self) -> &BTreeSet<Face> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(&face)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inclusion-minimal members.
    pub fn minimal_members(&self) -> Vec<Face> {
        self.members
            .iter()
            .copied()
            .filter(|&f| !self.members.iter().any(|&g| g != f && g.is_subset(f)))
            .collect()
    }

    /// Smallest subcomplex containing every member.
    pub fn closure(&self) -> SimplicialComplex {
        let mut faces = BTreeSet::new();
        faces.insert(Face::EMPTY);
        for &f in &self.members {
            if faces.contains(&f) {
                continue;
            }
            faces.extend(f.subsets());
        }
        SimplicialComplex { vertex_count: self.vertex_count, faces }
    }
}

impl fmt::Display for FaceSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl SimplicialComplex {
    /// The complex `{∅}`: every vertex is a ghost.
    pub fn empty(vertex_count: usize) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        Ok(SimplicialComplex { vertex_count, faces: BTreeSet::from([Face::EMPTY]) })
    }

    /// Downward closure of a list of generating faces.
    pub fn from_facets<I: IntoIterator<Item = Face>>(vertex_count: usize, generators: I) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut faces = BTreeSet::from([Face::EMPTY]);
        for g in generators {
            check_face(vertex_count, g)?;
            if !faces.contains(&g) {
                faces.extend(g.subsets());
            }
        }
        Ok(SimplicialComplex { vertex_count, faces })
    }

    /// Convenience wrapper over [`SimplicialComplex::from_facets`] taking vertex lists.
    pub fn from_vertex_lists(vertex_count: usize, generators: &[&[usize]]) -> Result<Self> {
        let faces = generators
            .iter()
            .map(|g| Face::from_vertices(vertex_count, g.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(vertex_count, faces)
    }

    /// Wraps an explicit face set, which must already be downward closed.
    pub fn from_faces<I: IntoIterator<Item = Face>>(vertex_count: usize, faces: I) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut set: BTreeSet<Face> = faces.into_iter().collect();
        set.insert(Face::EMPTY);
        for &f in &set {
            check_face(vertex_count, f)?;
            if let Some(missing) = f.boundary_faces().find(|b| !set.contains(b)) {
                return Err(Error::NotDownwardClosed(missing));
            }
        }
        Ok(SimplicialComplex { vertex_count, faces: set })
    }

    pub(crate) fn from_closed_unchecked(vertex_count: usize, faces: BTreeSet<Face>) -> Self {
        debug_assert!(faces.contains(&Face::EMPTY));
        debug_assert!(faces.iter().all(|f| f.boundary_faces().all(|b| faces.contains(&b))));
        SimplicialComplex { vertex_count, faces }
    }

    pub fn simplex(vertex_count: usize, face: Face) -> Result<Self> {
        Self::from_facets(vertex_count, [face])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied()
    }

    pub fn face_set(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                (1..=self.vertex_count).all(|v| f.contains(v) || !self.faces.contains(&f.with(v)))
            })
            .collect()
    }

    /// Largest face dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let facets = self.facets();
        facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        (1..=self.vertex_count).filter(|&v| !self.faces.contains(&Face::singleton(v))).collect()
    }

    /// The set of non-ghost vertices.
    pub fn support(&self) -> Face {
        self.faces.iter().fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    /// `f[k]` = number of faces with `k` vertices (so `f[0] = 1` counts ∅).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.dim() + 2) as usize];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    pub fn faces_of_size(&self, k: usize) -> Vec<Face> {
        self.faces.iter().copied().filter(|f| f.len() == k).collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.vertex_count == other.vertex_count && self.faces.is_subset(&other.faces)
    }

    fn ensure_same_vertices(&self, other: &SimplicialComplex) -> Result<()> {
        if self.vertex_count != other.vertex_count {
            Err(Error::VertexCountMismatch { left: self.vertex_count, right: other.vertex_count })
        } else {
            Ok(())
        }
    }

    fn ensure_subcomplex(&self, sub: &SimplicialComplex) -> Result<()> {
        self.ensure_same_vertices(sub)?;
        match sub.faces.iter().find(|f| !self.faces.contains(f)) {
            Some(&missing) => Err(Error::NotASubcomplex(missing)),
            None => Ok(()),
        }
    }

    /// Smallest subcomplex containing `z`.
    pub fn closure(&self, z: &FaceSubset) -> SimplicialComplex {
        debug_assert_eq!(z.vertex_count, self.vertex_count);
        z.closure()
    }

    /// `O_K(Z)`: faces of `K` containing some member of `Z`.
    pub fn open_neighborhood(&self, z: &FaceSubset) -> FaceSubset {
        let members = self
            .faces
            .iter()
            .copied()
            .filter(|&s| z.members.iter().any(|&t| t.is_subset(s)))
            .collect();
        FaceSubset { vertex_count: self.vertex_count, members }
    }

    /// `star_K(Z)`: closure of the open neighborhood.
    pub fn star(&self, z: &FaceSubset) -> SimplicialComplex {
        self.open_neighborhood(z).closure()
    }

    /// `Del_Z(K) = K \ O_K(Z)`.
    pub fn deletion(&self, z: &FaceSubset) -> SimplicialComplex {
        let open = self.open_neighborhood(z);
        let faces = self.faces.iter().copied().filter(|f| !open.members.contains(f)).collect();
        SimplicialComplex::from_closed_unchecked(self.vertex_count, faces)
    }

    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.ensure_same_vertices(other)?;
        let faces = self.faces.union(&other.faces).copied().collect();
        Ok(SimplicialComplex::from_closed_unchecked(self.vertex_count, faces))
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.ensure_same_vertices(other)?;
        let faces = self.faces.intersection(&other.faces).copied().collect();
        Ok(SimplicialComplex::from_closed_unchecked(self.vertex_count, faces))
    }

    /// Faces of `self` that are not faces of `sub`, as a face subset.
    pub fn difference(&self, sub: &SimplicialComplex) -> FaceSubset {
        let members = self.faces.difference(&sub.faces).copied().collect();
        FaceSubset { vertex_count: self.vertex_count, members }
    }

    /// Every nonempty face, as a face subset.
    pub fn nonempty_faces(&self) -> FaceSubset {
        let members = self.faces.iter().copied().filter(|f| !f.is_empty()).collect();
        FaceSubset { vertex_count: self.vertex_count, members }
    }

    /// `lk_K(σ) = {τ ∈ K | τ ∩ σ = ∅, τ ∪ σ ∈ K}`, kept on the same vertex set.
    pub fn link(&self, sigma: Face) -> Result<SimplicialComplex> {
        if !self.faces.contains(&sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&t| t.is_disjoint(sigma) && self.faces.contains(&t.union(sigma)))
            .collect();
        Ok(SimplicialComplex::from_closed_unchecked(self.vertex_count, faces))
    }

    /// Induced subcomplex on `vertices`, kept on the same vertex set.
    pub fn restriction(&self, vertices: Face) -> SimplicialComplex {
        let faces = self.faces.iter().copied().filter(|f| f.is_subset(vertices)).collect();
        SimplicialComplex::from_closed_unchecked(self.vertex_count, faces)
    }

    /// Relabels vertex `i` as `perm[i - 1]`; `perm` must be a permutation of `1..=m`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.vertex_count {
            return Err(Error::VertexCountMismatch { left: self.vertex_count, right: perm.len() });
        }
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            if p == 0 || p > self.vertex_count || seen[p - 1] {
                return Err(Error::VertexOutOfRange { vertex: p, vertex_count: self.vertex_count });
            }
            seen[p - 1] = true;
        }
        let faces = self
            .faces
            .iter()
            .map(|f| f.vertices().fold(Face::EMPTY, |acc, v| acc.with(perm[v - 1])))
            .collect();
        Ok(SimplicialComplex::from_closed_unchecked(self.vertex_count, faces))
    }

    /// Same faces on a larger vertex set; the new vertices are ghosts.
    pub fn with_vertex_count(&self, vertex_count: usize) -> Result<SimplicialComplex> {
        check_vertex_count(vertex_count)?;
        if let Some(&f) = self.faces.iter().find(|f| f.max_vertex() > vertex_count) {
            return Err(Error::VertexOutOfRange { vertex: f.max_vertex(), vertex_count });
        }
        Ok(SimplicialComplex { vertex_count, faces: self.faces.clone() })
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(m={}, facets=", self.vertex_count)?;
        let facets: Vec<String> = self.facets().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}])", facets.join(" "))
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SimplicialComplex", 4)?;
        s.serialize_field("vertices", &self.vertex_count)?;
        s.serialize_field("facets", &self.facets())?;
        s.serialize_field("ghosts", &self.ghost_vertices())?;
        s.serialize_field("f_vector", &self.f_vector())?;
        s.end()
    }
}

/// `K1 #^Z K2 = Del_Z(K1 ∪ K2)`, defined when `Z ⊆ K1 ∩ K2` and `O_{K1∪K2}(Z) ⊆ K1 ∩ K2`.
pub fn connected_sum(k1: &SimplicialComplex, k2: &SimplicialComplex, z: &FaceSubset) -> Result<SimplicialComplex> {
    let union = k1.union(k2)?;
    let w = k1.intersection(k2)?;
    check_connected_sum_hypothesis(&union, &w, z)?;
    Ok(union.deletion(z))
}

pub(crate) fn check_connected_sum_hypothesis(
    union: &SimplicialComplex,
    w: &SimplicialComplex,
    z: &FaceSubset,
) -> Result<()> {
    if z.vertex_count != union.vertex_count {
        return Err(Error::VertexCountMismatch { left: union.vertex_count, right: z.vertex_count });
    }
    if let Some(&bad) = z.members.iter().find(|f| !w.contains(**f)) {
        return Err(Error::SubsetOutsideIntersection(bad));
    }
    if let Some(bad) = union.open_neighborhood(z).iter().find(|f| !w.contains(*f)) {
        return Err(Error::ConnectedSumHypothesis(bad));
    }
    Ok(())
}

/// `Z = {τ ∈ K | τ ∪ σ ∉ K for all σ ∈ K \ W}`, with the empty face dropped.
///
/// When `W = K` the quantifier is vacuous and every nonempty face is returned.
pub fn strong_z(k: &SimplicialComplex, w: &SimplicialComplex) -> Result<FaceSubset> {
    k.ensure_subcomplex(w)?;
    let outside: Vec<Face> = k.faces.difference(&w.faces).copied().collect();
    let members = k
        .faces
        .iter()
        .copied()
        .filter(|t| !t.is_empty())
        .filter(|&t| outside.iter().all(|&s| !k.contains(t.union(s))))
        .collect();
    Ok(FaceSubset { vertex_count: k.vertex_count, members })
}

/// `W \ closure(K \ W)`, the second characterization of [`strong_z`].
pub fn strong_z_by_closure(k: &SimplicialComplex, w: &SimplicialComplex) -> Result<FaceSubset> {
    k.ensure_subcomplex(w)?;
    let closed = k.difference(w).closure();
    let members = w.faces.iter().copied().filter(|f| !f.is_empty() && !closed.contains(*f)).collect();
    Ok(FaceSubset { vertex_count: k.vertex_count, members })
}

/// Why a connected sum fails to be strong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum StrongSumFailure {
    NotPure { complex: &'static str },
    DimensionMismatch { k1: isize, k2: isize, w: isize },
    ZMismatch { side: &'static str, expected: FaceSubset },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongSumVerdict {
    pub strong: bool,
    pub failures: Vec<StrongSumFailure>,
}

/// Checks purity, equal dimensions and `Z = W \ closure(K_i \ W)` for both sides.
pub fn is_strong_connected_sum(k1: &SimplicialComplex, k2: &SimplicialComplex, z: &FaceSubset) -> Result<StrongSumVerdict> {
    let w = k1.intersection(k2)?;
    let mut failures = Vec::new();
    for (name, c) in [("K1", k1), ("K2", k2), ("W", &w)] {
        if !c.is_pure() {
            failures.push(StrongSumFailure::NotPure { complex: name });
        }
    }
    let (d1, d2, dw) = (k1.dim(), k2.dim(), w.dim());
    if d1 != d2 || d1 != dw {
        failures.push(StrongSumFailure::DimensionMismatch { k1: d1, k2: d2, w: dw });
    }
    for (side, k) in [("K1", k1), ("K2", k2)] {
        let expected = strong_z_by_closure(k, &w)?;
        if &expected != z {
            failures.push(StrongSumFailure::ZMismatch { side, expected });
        }
    }
    Ok(StrongSumVerdict { strong: failures.is_empty(), failures })
}
