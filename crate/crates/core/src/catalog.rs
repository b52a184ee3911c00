//! The hyperbolic Coxeter tetrahedra.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::AngleFrac;
use crate::shape::{complement1, TetShape, VertexKind};
use crate::triangle2d::{triangle_geometry, Geometry};
use crate::volume::{tet_volume, VolumeError, VolumeValue};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// `H1`, `H2`, …
    pub id: String,
    /// Canonically labelled diagram.
    pub shape: TetShape,
    pub compact: bool,
    pub vertices: [VertexKind; 4],
    pub volume: VolumeValue<f64>,
    pub canonical_key: String,
}

impl CatalogEntry {
    pub fn ideal_count(&self) -> usize {
        self.vertices.iter().filter(|&&v| v == VertexKind::Ideal).count()
    }

    /// Vertex classes as a string such as `IFFF`.
    pub fn vertex_pattern(&self) -> String {
        self.vertices.iter().map(|v| if *v == VertexKind::Ideal { 'I' } else { 'F' }).collect()
    }

    pub fn index(&self) -> usize {
        self.id[1..].parse().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        let id = id.trim().replace('_', "");
        self.entries.iter().find(|e| e.id.eq_ignore_ascii_case(&id))
    }

    pub fn by_shape(&self, t: &TetShape) -> Option<&CatalogEntry> {
        let key = t.canonical_key();
        self.entries.iter().find(|e| e.canonical_key == key)
    }

    pub fn compact(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.compact)
    }

    pub fn noncompact(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| !e.compact)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Every canonical Coxeter tetrahedron with labels `2..=max_label` that is hyperbolic.
///
/// Sorted compact first, then by volume. Entries of equal volume are ordered by
/// number of ideal vertices, then by canonical key.
pub fn enumerate_coxeter_tetrahedra(max_label: u32, tol: f64) -> Result<Catalog, VolumeError> {
    let labels: Vec<u32> = (2..=max_label).collect();
    let n = labels.len();
    let total = n.pow(6);
    let found: Vec<TetShape> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut ls = [0u32; 6];
            for slot in ls.iter_mut() {
                *slot = labels[idx % n];
                idx /= n;
            }
            let t = TetShape::coxeter(ls);
            (t.canonical() == t && t.is_hyperbolic(tol)).then_some(t)
        })
        .collect();
    let mut entries = found
        .into_iter()
        .map(|shape| {
            let vertices = shape.vertex_types::<f64>(tol);
            let volume = tet_volume::<f64>(&shape)?;
            Ok(CatalogEntry {
                id: String::new(),
                compact: vertices.iter().all(|&v| v == VertexKind::Finite),
                vertices,
                volume,
                canonical_key: shape.canonical_key(),
                shape,
            })
        })
        .collect::<Result<Vec<_>, VolumeError>>()?;
    entries.sort_by(|a, b| {
        (!a.compact)
            .cmp(&!b.compact)
            .then_with(|| {
                if (a.volume.value - b.volume.value).abs() < 1e-9 {
                    std::cmp::Ordering::Equal
                } else {
                    a.volume.value.partial_cmp(&b.volume.value).unwrap()
                }
            })
            .then_with(|| a.ideal_count().cmp(&b.ideal_count()))
            .then_with(|| a.canonical_key.cmp(&b.canonical_key))
    });
    for (i, e) in entries.iter_mut().enumerate() {
        e.id = format!("H{}", i + 1);
    }
    Ok(Catalog { entries })
}

/// The triangle left after deleting node `omitted` from the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subtriangle {
    pub omitted: usize,
    /// Angles at the edges through the vertex opposite `omitted`, ordered as in [`TetShape::link_angles`].
    pub angles: [AngleFrac; 3],
    pub geometry: Geometry,
}

pub fn subdiagram_triangles(t: &TetShape) -> [Subtriangle; 4] {
    std::array::from_fn(|v| {
        let angles = t.link_angles(v);
        Subtriangle { omitted: v, angles, geometry: triangle_geometry(&angles) }
    })
}

/// Sorted labels of a Coxeter triangle, e.g. `[2,3,6]`.
pub fn triangle_labels(angles: &[AngleFrac; 3]) -> [u32; 3] {
    let mut l = angles.map(|a| a.den());
    l.sort();
    l
}

/// Diagrams containing the all-π/3 triangle as a subdiagram.
pub fn has_triangle_subdiagram(t: &TetShape) -> bool {
    subdiagram_triangles(t).iter().any(|s| s.angles.iter().all(|&a| a == AngleFrac::pi_over(3)))
}

/// Members of the family "all-π/3 triangle plus one node joined to a single triangle node
/// by label `k`", returning `k`.
pub fn triangle_plus_tail(t: &TetShape) -> Option<u32> {
    let right = AngleFrac::pi_over(2);
    subdiagram_triangles(t).iter().find_map(|s| {
        if !s.angles.iter().all(|&a| a == AngleFrac::pi_over(3)) {
            return None;
        }
        let x = s.omitted;
        let links: Vec<AngleFrac> = complement1(x).iter().map(|&y| t.angle(x, y)).filter(|&a| a != right).collect();
        (links.len() == 1 && links[0].is_coxeter()).then(|| links[0].den())
    })
}

/// How the tetrahedra singled out in the classification argument are recognised.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub name: &'static str,
    pub rule: &'static str,
    pub id: Option<String>,
}

/// Locates the named tetrahedra by their diagrams, independent of catalog order.
pub fn anchors(cat: &Catalog) -> Vec<Anchor> {
    let find = |t: TetShape| cat.by_shape(&t).map(|e| e.id.clone());
    let compact_pair = {
        let c: Vec<&CatalogEntry> = cat.compact().collect();
        let mut hit = None;
        for f in &c {
            for p in &c {
                let r = p.volume.value / f.volume.value;
                if r > 1.5 && (r - r.round()).abs() < 1e-6 {
                    hit = Some((f.id.clone(), p.id.clone()));
                }
            }
        }
        hit
    };
    let tailed = |k: u32| {
        cat.entries.iter().find(|e| triangle_plus_tail(&e.shape) == Some(k)).map(|e| e.id.clone())
    };
    let five_thirds = cat
        .entries
        .iter()
        .find(|e| {
            let a = e.shape.angles();
            a.iter().filter(|&&x| x == AngleFrac::pi_over(3)).count() == 5
                && a.iter().filter(|&&x| x == AngleFrac::pi_over(2)).count() == 1
        })
        .map(|e| e.id.clone());
    vec![
        Anchor { name: "H1", rule: "smaller member of the unique compact pair with integral volume ratio", id: compact_pair.as_ref().map(|p| p.0.clone()) },
        Anchor { name: "H3", rule: "larger member of the unique compact pair with integral volume ratio", id: compact_pair.map(|p| p.1) },
        Anchor { name: "H10", rule: "linear diagram [3,3,6]", id: find(TetShape::linear(3, 3, 6)) },
        Anchor { name: "H11", rule: "linear diagram [3,4,4]", id: find(TetShape::linear(3, 4, 4)) },
        Anchor { name: "H12", rule: "all-π/3 triangle with a tail of label 3", id: tailed(3) },
        Anchor { name: "H17", rule: "all-π/3 triangle with a tail of label 4", id: tailed(4) },
        Anchor { name: "H22", rule: "all-π/3 triangle with a tail of label 5", id: tailed(5) },
        Anchor { name: "H26", rule: "all-π/3 triangle with a tail of label 6", id: tailed(6) },
        Anchor { name: "H24", rule: "five angles π/3 and one π/2", id: five_thirds },
        Anchor { name: "H31", rule: "4-cycle of labels 4 with two right-angle diagonals", id: find(TetShape::coxeter([2, 4, 4, 4, 4, 2])) },
        Anchor { name: "H32", rule: "all six angles π/3", id: find(TetShape::coxeter([3; 6])) },
    ]
}

/// Catalog entries keyed by id, convenient for lookups in reports.
pub fn index_by_id(cat: &Catalog) -> BTreeMap<String, &CatalogEntry> {
    cat.entries.iter().map(|e| (e.id.clone(), e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtriangles_of_336() {
        let s = subdiagram_triangles(&TetShape::linear(3, 3, 6));
        let labels: Vec<[u32; 3]> = s.iter().map(|x| triangle_labels(&x.angles)).collect();
        assert!(labels.contains(&[2, 3, 6]));
        assert!(labels.contains(&[2, 3, 3]));
    }

    #[test]
    fn regular_has_four_euclidean_triangles() {
        for s in subdiagram_triangles(&TetShape::coxeter([3; 6])) {
            assert_eq!(s.geometry, Geometry::Euclidean);
            assert_eq!(triangle_labels(&s.angles), [3, 3, 3]);
        }
        assert!(has_triangle_subdiagram(&TetShape::coxeter([3; 6])));
    }

    #[test]
    fn tail_family() {
        // triangle on 1,2,3 with tail 0-3 of label 4
        let t = TetShape::coxeter([2, 2, 4, 3, 3, 3]);
        assert_eq!(triangle_plus_tail(&t), Some(4));
        assert_eq!(triangle_plus_tail(&TetShape::linear(3, 3, 6)), None);
    }
}
