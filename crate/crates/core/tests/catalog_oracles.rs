use coxtet::catalog::{anchors, enumerate_coxeter_tetrahedra};
use coxtet::shape::TetShape;

const VOLUMES: [f64; 32] = [
    0.0358850633, 0.0390502856, 0.0717701267, 0.0857701820, 0.0933255395, 0.2052887885, 0.2222287320,
    0.3586534401, 0.5021308905, 0.0422892336, 0.0763304662, 0.0845784672, 0.1057230840, 0.1526609324,
    0.1691569344, 0.1715016613, 0.2114461680, 0.2114461680, 0.2289913985, 0.2537354016, 0.3053218647,
    0.3430033226, 0.3641071004, 0.4228923360, 0.4579827971, 0.5074708032, 0.5258402692, 0.5562821156,
    0.6729858045, 0.8457846720, 0.9159655942, 1.0149416064,
];

#[test]
fn thirty_two_tetrahedra() {
    let cat = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    assert_eq!(cat.len(), 32);
    assert_eq!(cat.compact().count(), 9);
    assert_eq!(cat.noncompact().count(), 23);
    for (e, v) in cat.entries.iter().zip(VOLUMES) {
        assert!((e.volume.value - v).abs() < 1e-9, "{} {} vs {}", e.id, e.volume.value, v);
        assert!(e.volume.err < 1e-10, "{} err {}", e.id, e.volume.err);
    }
}

#[test]
fn label_bound_ten_adds_nothing() {
    let a = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    let b = enumerate_coxeter_tetrahedra(10, 1e-9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn named_tetrahedra_resolve_to_their_indices() {
    let cat = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    for a in anchors(&cat) {
        assert_eq!(a.id.as_deref(), Some(a.name), "{}", a.rule);
    }
    assert_eq!(cat.get("H1").unwrap().shape, TetShape::linear(5, 3, 4).canonical());
    assert_eq!(cat.get("H10").unwrap().vertex_pattern().matches('I').count(), 1);
    assert_eq!(cat.get("H32").unwrap().vertex_pattern(), "IIII");
}

#[test]
fn compact_volumes_below_noncompact_maximum() {
    let cat = enumerate_coxeter_tetrahedra(6, 1e-9).unwrap();
    let max_nc = cat.noncompact().map(|e| e.volume.value).fold(0.0, f64::max);
    assert!(cat.compact().all(|e| e.volume.value < max_nc));
}
