use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite set of vertices drawn from `1..=64`, stored as a bitmask.
///
/// Vertex `i` occupies bit `i - 1`. The empty face is the zero mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(u64);

impl Face {
    pub const MAX_VERTICES: usize = 64;

    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(vertex: usize) -> Self {
        debug_assert!((1..=Self::MAX_VERTICES).contains(&vertex));
        Face(1u64 << (vertex - 1))
    }

    /// Builds a face from 1-based vertex labels, checking each against `vertex_count`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertex_count: usize, vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > vertex_count || v > Self::MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(Face(bits))
    }

    /// The full vertex set `{1..=m}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << m) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Dimension `|σ| - 1`; the empty face has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=Self::MAX_VERTICES).contains(&vertex) && self.0 & (1u64 << (vertex - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, vertex: usize) -> Face {
        self.union(Face::singleton(vertex))
    }

    pub fn without(self, vertex: usize) -> Face {
        self.difference(Face::singleton(vertex))
    }

    /// Largest vertex label, or 0 for the empty face.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order (1-based).
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v + 1)
            }
        })
    }

    /// Every subset of this face, the empty face included.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(Face(cur))
        })
    }

    /// Faces of codimension one, i.e. `σ \ {v}` for each `v ∈ σ`.
    pub fn boundary_faces(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_a_triangle() {
        let f = Face::from_vertices(3, [1, 2, 3]).unwrap();
        let subs: Vec<_> = f.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&Face::EMPTY));
        assert_eq!(Face::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_and_vertices() {
        let f = Face::from_vertices(5, [4, 1]).unwrap();
        assert_eq!(f.to_string(), "{1,4}");
        assert_eq!(f.vertices().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(f.max_vertex(), 4);
        assert_eq!(Face::EMPTY.dim(), -1);
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        assert_eq!(
            Face::from_vertices(3, [4]),
            Err(Error::VertexOutOfRange { vertex: 4, vertex_count: 3 })
        );
        assert!(Face::from_vertices(3, [0]).is_err());
    }

    #[test]
    fn full_face() {
        assert_eq!(Face::full(3).len(), 3);
        assert_eq!(Face::full(64).len(), 64);
    }
}
