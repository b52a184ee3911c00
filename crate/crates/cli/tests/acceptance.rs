//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

use coxtet::shape::{pair_index, permutations4, PAIRS};
use coxtet::volume::lobachevsky;
use serde_json::Value;

type Check = Result<String, String>;
type Row = (u64, u64, [(u32, u32); 6]);

fn run(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_coxtet"))
        .args(args)
        .env_remove("COXTET_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if o.status.code() != Some(0) {
        return Err(format!("`coxtet {}` exited {:?}: {}", args.join(" "), o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn json(args: &[&str]) -> Result<Value, String> {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_slice(&run(&a)?).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect()).unwrap_or_default()
}

fn criterion_1() -> Check {
    let six = json(&["enumerate", "--max-label", "6"])?;
    let ten = json(&["enumerate", "--max-label", "10"])?;
    let keys = |d: &Value| -> BTreeSet<String> { d["entries"].as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap().to_string()).collect() };
    let n = six["entries"].as_array().unwrap().len();
    ensure(n == 32, format!("{n} entries"))?;
    ensure(six["compact"] == 9 && six["noncompact"] == 23, format!("{} compact, {} non-compact", six["compact"], six["noncompact"]))?;
    ensure(keys(&six) == keys(&ten), "labels up to 10 change the catalog")?;
    Ok("32 tetrahedra, 9 compact and 23 non-compact; unchanged at label bound 10".into())
}

/// `Λ(θ) = −∫₀^θ ln(2 sin t) dt`, with the logarithmic singularity integrated in closed
/// form and the smooth rest by composite Simpson.
fn lobachevsky_quadrature(theta: f64) -> f64 {
    let n = 20_000;
    let h = theta / n as f64;
    let g = |t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() };
    let mut s = g(0.0) + g(theta);
    for i in 1..n {
        s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let smooth = s * h / 3.0;
    -(theta * (2.0 * theta).ln() - theta) - smooth
}

fn criterion_2() -> Check {
    let pi = std::f64::consts::PI;
    let l6 = lobachevsky::<f64>(pi / 6.0);
    let q6 = lobachevsky_quadrature(pi / 6.0);
    ensure((l6 - q6).abs() < 1e-9, format!("Λ(π/6) = {l6} but quadrature gives {q6}"))?;
    ensure((l6 - 0.5074708).abs() < 1e-7, format!("Λ(π/6) = {l6}"))?;

    let vols = json(&["volumes"])?;
    let cat = json(&["enumerate"])?;
    let id_of = |diagram: &str| {
        cat["entries"].as_array().unwrap().iter().find(|e| e["diagram"] == diagram).map(|e| e["id"].as_str().unwrap().to_string())
    };
    let vol = |id: &str| vols["entries"].as_array().unwrap().iter().find(|e| e["id"] == id).unwrap()["volume"].as_f64().unwrap();
    let regular = id_of("01:3,02:3,03:3,12:3,13:3,23:3").ok_or("no all-π/3 tetrahedron")?;
    let t336 = json(&["search", "--fundamental", "[3,3,6]", "--max-tiles", "1"])?["fundamental"].as_str().unwrap().to_string();
    let want = 3.0 * lobachevsky_quadrature(pi / 3.0);
    ensure((vol(&regular) - want).abs() < 1e-9, format!("volume of {regular} is {} not {want}", vol(&regular)))?;
    let ratio = vol(&regular) / vol(&t336);
    ensure((ratio - 24.0).abs() < 1e-6, format!("ratio {ratio}"))?;
    ensure(vols["max_noncompact_ratio"] == 24, format!("largest non-compact ratio {}", vols["max_noncompact_ratio"]))?;
    let compact: Vec<&Value> = vols["integer_ratios"].as_array().unwrap().iter().filter(|r| r["compact"] == true).collect();
    ensure(compact.len() == 1 && compact[0]["f"] == "H1" && compact[0]["p"] == "H3" && compact[0]["ratio"] == 2, format!("compact integer pairs {compact:?}"))?;
    Ok(format!("Λ(π/6) = {l6:.10}; Vol({regular}) = 3Λ(π/3); {regular}/{t336} = {ratio:.9}; max non-compact ratio 24; only compact pair (H1,H3) with ratio 2"))
}

fn parse_marks(v: &Value) -> [(u32, u32); 6] {
    let m = strs(v);
    std::array::from_fn(|k| {
        let (p, l) = m[k].split_once('/').unwrap();
        (p.parse().unwrap(), l.parse().unwrap())
    })
}

fn canonical(m: &[(u32, u32); 6]) -> [(u32, u32); 6] {
    permutations4()
        .iter()
        .map(|p| {
            std::array::from_fn(|k| {
                let (a, b) = PAIRS[k];
                m[pair_index(p[a], p[b])]
            })
        })
        .min()
        .unwrap()
}

fn criterion_3(report: &Value) -> Check {
    let tables: Value = serde_json::from_str(include_str!("../../core/tests/data/first_type_rows.json")).unwrap();
    let fams = report["first_type"].as_array().unwrap();
    let counts = |compact: bool| -> Vec<usize> {
        fams.iter().filter(|f| f["compact"] == compact).map(|f| f["entries"].as_array().unwrap().len() - 1).collect()
    };
    ensure(counts(true) == [5, 5, 3, 2], format!("bounded counts {:?}", counts(true)))?;
    ensure(counts(false) == [19, 9, 1, 5, 2, 5, 3, 1, 3, 3, 2, 1, 1, 1], format!("unbounded counts {:?}", counts(false)))?;

    for tab in tables.as_array().unwrap() {
        let compact = tab["kind"] == "bounded";
        let number = tab["family"].as_u64().unwrap();
        let fam = fams
            .iter()
            .find(|f| f["compact"] == compact && f["number"] == number)
            .ok_or(format!("{} family {number} missing", tab["kind"]))?;
        let rows = tab["rows"].as_array().unwrap();
        let table_marks = |r: &Value| -> [(u32, u32); 6] {
            std::array::from_fn(|k| {
                let (i, j) = PAIRS[k];
                let m = &r["marks"][format!("{i}{j}")];
                (m[0].as_u64().unwrap() as u32, m[1].as_u64().unwrap() as u32)
            })
        };
        let mut want: Vec<Row> = rows[1..]
            .iter()
            .map(|r| (r["tuple"][0].as_u64().unwrap(), r["tuple"][1].as_u64().unwrap(), canonical(&table_marks(r))))
            .collect();
        let entries = fam["entries"].as_array().unwrap();
        let mut got: Vec<Row> = entries[1..]
            .iter()
            .map(|e| (e["tiles"].as_u64().unwrap(), e["depth"].as_u64().unwrap(), canonical(&parse_marks(&e["marks"]))))
            .collect();
        want.sort();
        got.sort();
        ensure(want == got, format!("{} family {number}: rows differ", tab["kind"]))?;

        // provenance: tiles add up and depth is one more than the deeper part
        for e in &entries[1..] {
            let g = &e["glue"];
            let (m, n) = (g["m"].as_u64().unwrap() as usize, g["n"].as_u64().unwrap() as usize);
            let (a, b) = (&entries[m], &entries[n]);
            let tiles = a["tiles"].as_u64().unwrap() + b["tiles"].as_u64().unwrap();
            let depth = 1 + a["depth"].as_u64().unwrap().max(b["depth"].as_u64().unwrap());
            ensure(e["tiles"] == tiles && e["depth"] == depth, format!("inconsistent provenance {}", e["tuple"]))?;
        }
    }
    let b1: Vec<u64> = fams.iter().find(|f| f["compact"] == true).unwrap()["entries"].as_array().unwrap()[1..]
        .iter()
        .map(|e| e["tiles"].as_u64().unwrap())
        .collect();
    ensure(b1 == [2, 2, 4, 4, 8], format!("bounded family 1 tiles {b1:?}"))?;
    let u1 = fams.iter().find(|f| f["compact"] == false).unwrap()["entries"].as_array().unwrap();
    let last = u1.last().unwrap();
    let g = &last["glue"];
    ensure(last["tiles"] == 24 && last["depth"] == 8 && g["m"] == g["n"] && g["p"] == g["q"], format!("unbounded family 1 ends with {}", last["tuple"]))?;
    let half = &u1[g["m"].as_u64().unwrap() as usize];
    ensure(half["tiles"] == 12 && half["depth"] == 7, "largest entry is not a doubled (12,7)")?;
    Ok(format!("bounded {:?}, unbounded {:?}; every (k,l) and edge-mark row matches; largest {}", counts(true), counts(false), last["tuple"].as_str().unwrap()))
}

fn criterion_4(report: &Value) -> Check {
    let rows = report["appendix"]["rows"].as_array().unwrap();
    let mut worst: f64 = 0.0;
    for r in rows {
        let tiles = r["tiles"].as_f64().unwrap();
        let resid = r["volume_residual"].as_f64().unwrap();
        worst = worst.max(resid / tiles);
        ensure(resid < 1e-6 * tiles, format!("{} volume residual {resid}", r["key"]))?;
        ensure(r["mirror_violations"] == 0, format!("{} has mirror violations", r["key"]))?;
        ensure(strs(&r["failures"]).is_empty(), format!("{} failures {:?}", r["key"], strs(&r["failures"])))?;
    }
    Ok(format!("{} decompositions certified, worst residual per tile {worst:.1e}", rows.len()))
}

fn criterion_5(report: &Value) -> Check {
    let st = &report["second_type"];
    let sph = st["spherical_triangles"].as_array().unwrap();
    ensure(sph.len() == 1, format!("{} spherical", sph.len()))?;
    ensure(sph[0]["tiles"] == 15 && strs(&sph[0]["fundamental"]).contains(&"π/5".to_string()), format!("spherical {}", sph[0]))?;
    let euc: Vec<&Value> = st["euclidean_triangles"].as_array().unwrap().iter().filter(|t| t["tiles"].as_u64().unwrap() <= 24).collect();
    ensure(euc.len() == 5, format!("{} euclidean", euc.len()))?;
    let third = vec!["π/3".to_string(); 3];
    let equilateral: BTreeSet<u64> = euc
        .iter()
        .filter(|t| strs(&t["outer"]) == third && strs(&t["fundamental"]) == third)
        .map(|t| t["tiles"].as_u64().unwrap())
        .collect();
    ensure(equilateral.contains(&4) && equilateral.contains(&9), format!("equilateral by equilateral: {equilateral:?}"))?;
    let tiles: Vec<u64> = euc.iter().map(|t| t["tiles"].as_u64().unwrap()).collect();
    Ok(format!("spherical: one, 15 tiles with π/5; euclidean: five ({tiles:?})"))
}

fn criterion_6(report: &Value) -> Check {
    let st = &report["second_type"];
    let found: BTreeSet<(String, String)> = st["found"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["fundamental"].as_str().unwrap().to_string(), f["container"].as_str().unwrap().to_string()))
        .collect();
    let want: BTreeSet<(String, String)> = [("H12", "H24"), ("H12", "H32")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure(found == want, format!("found {found:?}"))?;
    let cands = st["candidates"].as_array().unwrap();
    let cand = |f: &str, p: &str| cands.iter().find(|c| c["f"] == f && c["p"] == p);
    let h11 = cand("H11", "H31").ok_or("(H11,H31) is not a candidate")?;
    let negative_h11 = !h11["eliminated_by"].is_null()
        || st["negatives"].as_array().unwrap().iter().any(|n| n["f"] == "H11" && n["p"] == "H31");
    ensure(negative_h11, "(H11,H31) not settled negative")?;
    let h10 = cand("H10", "H32").ok_or("(H10,H32) is not a candidate")?;
    ensure(!h10["eliminated_by"].is_null(), "(H10,H32) survives")?;
    let compact: BTreeSet<String> =
        report["catalog"]["entries"].as_array().unwrap().iter().filter(|e| e["compact"] == true).map(|e| e["id"].as_str().unwrap().to_string()).collect();
    let bounded_survivors = cands.iter().filter(|c| compact.contains(c["f"].as_str().unwrap()) && c["eliminated_by"].is_null()).count();
    ensure(bounded_survivors == 0, "a bounded pair survives")?;
    Ok(format!(
        "H12 in H24 and H32; (H11,H31) by {}, (H10,H32) by {}; bounded case empty",
        h11["eliminated_by"].as_str().unwrap_or("verification"),
        h10["eliminated_by"].as_str().unwrap()
    ))
}

fn criterion_7(report: &Value) -> Check {
    let app = &report["appendix"];
    let rows = app["rows"].as_array().unwrap();
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for r in rows {
        *kinds.entry(r["kind"].as_str().unwrap().to_string()).or_default() += 1;
    }
    ensure(app["third_type"] == 0 && !kinds.contains_key("third"), format!("types {kinds:?}"))?;
    Ok(format!("types {kinds:?}"))
}

fn criterion_8() -> Check {
    let mut digests = Vec::new();
    for fmt in ["md", "json"] {
        let a = run(&["report", "--format", fmt, "--jobs", "1"])?;
        let b = run(&["report", "--format", fmt, "--jobs", "4", "--shuffle-seed", "20240613"])?;
        let c = run(&["report", "--format", fmt, "--jobs", "3", "--shuffle-seed", "7"])?;
        ensure(a == b && a == c, format!("{fmt} reports differ"))?;
        digests.push(format!("{fmt} {} bytes", a.len()));
    }
    Ok(format!("identical across --jobs 1/3/4 and shuffled frontiers ({})", digests.join(", ")))
}

fn main() {
    let report = json(&["report"]);
    let with_report = |f: fn(&Value) -> Check| match &report {
        Ok(r) => f(r),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(&str, Check)> = vec![
        ("catalog", criterion_1()),
        ("volumes", criterion_2()),
        ("first type tables", with_report(criterion_3)),
        ("certification", with_report(criterion_4)),
        ("2D lists", with_report(criterion_5)),
        ("second type", with_report(criterion_6)),
        ("no third type", with_report(criterion_7)),
        ("determinism", criterion_8()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
