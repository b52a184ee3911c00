use std::collections::BTreeMap;

use coxtet::angle::{AngleFrac, EdgeMark};
use coxtet::decomp::{glue, matchings, realize_and_certify, search_first_type, DecomposedTet, Fundamental, SearchOptions};
use coxtet::shape::{pair_index, permutations4, TetShape, PAIRS};
use serde::Deserialize;

#[derive(Deserialize)]
struct Row {
    marks: BTreeMap<String, [u32; 2]>,
    tuple: Option<[usize; 6]>,
}

#[derive(Deserialize)]
struct Table {
    kind: String,
    family: usize,
    rows: Vec<Row>,
}

fn tables() -> Vec<Table> {
    serde_json::from_str(include_str!("data/first_type_rows.json")).unwrap()
}

fn row_marks(r: &Row) -> [EdgeMark; 6] {
    std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        let [parts, label] = r.marks[&format!("{i}{j}")];
        EdgeMark { parts, label }
    })
}

fn canonical_code(m: &[EdgeMark; 6]) -> [(u32, u32); 6] {
    permutations4()
        .iter()
        .map(|p| {
            std::array::from_fn(|k| {
                let (a, b) = PAIRS[k];
                let x = m[pair_index(p[a], p[b])];
                (x.parts, x.label)
            })
        })
        .min()
        .unwrap()
}

fn code(d: &DecomposedTet) -> [(u32, u32); 6] {
    d.marks.map(|m| (m.parts, m.label))
}

/// Engine labels `a` such that engine mark {a,b} equals table mark {τa,τb}.
fn relabelings(engine: &[EdgeMark; 6], table: &[EdgeMark; 6]) -> Vec<[usize; 4]> {
    permutations4()
        .iter()
        .copied()
        .filter(|t| PAIRS.iter().all(|&(a, b)| engine[pair_index(a, b)] == table[pair_index(t[a], t[b])]))
        .collect()
}

#[test]
fn every_family_reproduces_its_rows() {
    let mut counts = BTreeMap::new();
    for tab in tables() {
        let seed_marks = row_marks(&tab.rows[0]);
        let shape = TetShape::new(seed_marks.map(|m| AngleFrac::pi_over(m.label))).unwrap();
        let fund = Fundamental::<f64>::new(format!("{}-{}", tab.kind, tab.family), &shape).unwrap();
        let fam = search_first_type(&fund, &SearchOptions::default());
        counts.entry(tab.kind.clone()).or_insert_with(Vec::new).push(fam.nontrivial().len());

        // (k, l, marks) multisets agree
        let mut want: Vec<(usize, usize, [(u32, u32); 6])> = tab.rows[1..]
            .iter()
            .map(|r| {
                let t = r.tuple.unwrap();
                (t[0], t[1], canonical_code(&row_marks(r)))
            })
            .collect();
        let mut got: Vec<(usize, usize, [(u32, u32); 6])> =
            fam.nontrivial().iter().map(|d| (d.tiles, d.depth as usize, code(d))).collect();
        want.sort();
        got.sort();
        assert_eq!(got, want, "{} family {}", tab.kind, tab.family);

        // match each row to its engine entry
        let engine_of: Vec<usize> = tab
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if i == 0 {
                    return 0;
                }
                let t = r.tuple.unwrap();
                let c = canonical_code(&row_marks(r));
                let hits: Vec<usize> = (0..fam.entries.len())
                    .filter(|&e| {
                        let d = &fam.entries[e];
                        d.tiles == t[0] && d.depth as usize == t[1] && code(d) == c
                    })
                    .collect();
                assert_eq!(hits.len(), 1, "row {i} of {} {}", tab.kind, tab.family);
                hits[0]
            })
            .collect();

        // each printed provenance glues the referenced rows into the row itself
        for (i, r) in tab.rows.iter().enumerate().skip(1) {
            let [k, l, m, n, p, q] = r.tuple.unwrap();
            let (em, en) = (&fam.entries[engine_of[m]], &fam.entries[engine_of[n]]);
            assert_eq!(em.tiles + en.tiles, k);
            assert_eq!(1 + em.depth.max(en.depth) as usize, l);
            let target = &fam.entries[engine_of[i]];
            let tm = relabelings(&em.marks, &row_marks(&tab.rows[m]));
            let tn = relabelings(&en.marks, &row_marks(&tab.rows[n]));
            assert!(!tm.is_empty() && !tn.is_empty());
            let ok = tm.iter().any(|a| {
                let pe = a.iter().position(|&x| x == p).unwrap();
                tn.iter().any(|b| {
                    let qe = b.iter().position(|&x| x == q).unwrap();
                    matchings(qe).into_iter().any(|s| {
                        glue(&fund, em, pe, en, qe, s).is_ok_and(|g| g.same_as(target, &fund, 1e-6))
                    })
                })
            });
            assert!(ok, "provenance of row {i} in {} family {}", tab.kind, tab.family);
        }

        for d in &fam.entries {
            let rep = realize_and_certify(d, &fund, 7, 16).unwrap();
            assert!(rep.passed(), "{} {}: {:?}", tab.kind, tab.family, rep.failures);
        }
    }
    assert_eq!(counts["bounded"], vec![5, 5, 3, 2]);
    assert_eq!(counts["unbounded"], vec![19, 9, 1, 5, 2, 5, 3, 1, 3, 3, 2, 1, 1, 1]);
}
