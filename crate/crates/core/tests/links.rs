use coxtet::catalog::enumerate_coxeter_tetrahedra;
use coxtet::decomp::{search_first_type, Fundamental, SearchOptions};
use coxtet::triangle2d::model::area;
use coxtet::triangle2d::{link_decomposition, Geometry};

#[test]
fn seed_links_are_single_tiles() {
    let cat = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    for id in ["H1", "H10", "H32"] {
        let fund = Fundamental::<f64>::from_entry(cat.get(id).unwrap()).unwrap();
        let seed = fund.seed();
        for v in 0..4 {
            let l = link_decomposition(&seed, &fund, v).unwrap();
            assert_eq!(l.tiles, 1);
            assert_eq!(l.corner_parts, [1, 1, 1]);
            assert_eq!(l.outer, l.fundamental);
        }
    }
}

#[test]
fn spherical_links_tile_by_area() {
    let cat = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    for id in ["H1", "H2", "H3", "H5"] {
        let fund = Fundamental::<f64>::from_entry(cat.get(id).unwrap()).unwrap();
        for d in search_first_type(&fund, &SearchOptions::default()).entries {
            let counts: Vec<usize> = (0..4).map(|v| link_decomposition(&d, &fund, v).unwrap().tiles).collect();
            for v in 0..4 {
                let l = link_decomposition(&d, &fund, v).unwrap();
                assert_eq!(l.geometry, Geometry::Spherical);
                let ratio = area(l.geometry, &l.outer) / area(l.geometry, &l.fundamental);
                assert!((ratio - l.tiles as f64).abs() < 1e-9, "{id} {}: vertex {v}", d.key);
            }
            if d.tiles == 2 {
                // the two apexes see one tile each, the other vertices both
                let mut c = counts.clone();
                c.sort();
                assert_eq!(c, vec![1, 1, 2, 2], "{id} {}", d.key);
            }
        }
    }
}
