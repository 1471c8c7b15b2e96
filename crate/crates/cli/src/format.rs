//! Serializers producing the text formats read by [`crate::parse`].

use connsum_core::matrix::IntegerMatrix;
use connsum_core::simplicial::{FaceSubset, SimplicialComplex};

use crate::parse::PolytopeFile;

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let facets: Vec<String> = k.facets().iter().map(|f| f.to_string()).collect();
    format!("vertices: {}\nfacets: {}\n", k.vertex_count(), facets.join(" "))
}

pub fn face_subset_to_text(z: &FaceSubset) -> String {
    z.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

fn affine(normal: &[i64], offset: i64) -> String {
    let coeffs: Vec<String> = normal.iter().map(i64::to_string).collect();
    format!("{} | {offset}", coeffs.join(" "))
}

pub fn polytope_to_text(p: &PolytopeFile) -> String {
    let mut out = format!("dim: {}\n", p.polytope.dim());
    for (i, q) in p.polytope.inequalities().iter().enumerate() {
        out.push_str(&format!("ineq: {}", affine(&q.normal, q.offset)));
        if let Some(labels) = &p.labels {
            out.push_str(&format!(" label {}", labels[i]));
        }
        out.push('\n');
    }
    if let Some(c) = &p.cut {
        out.push_str(&format!("cut: {}\n", affine(&c.normal, c.offset)));
    }
    out
}

pub fn matrix_to_text(b: &IntegerMatrix) -> String {
    b.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// Rows of a matrix as strings, for JSON reports.
pub fn matrix_rows(b: &IntegerMatrix) -> Vec<Vec<String>> {
    b.to_rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}
