//! Breadth-first closure of the seed under gluing.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::glue::{glue, matchings, Rejection};
use super::{DecomposedTet, Fundamental, Provenance};
use crate::real::Real;
use crate::volume::max_tet_volume;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub max_tiles: usize,
    /// Extra slack on the bound `tiles·Vol(F) ≤ 3Λ(π/3)`.
    pub volume_tol: f64,
    /// Shuffle the candidate list before expansion; the result must not depend on it.
    pub shuffle_seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_tiles: 64, volume_tol: 1e-6, shuffle_seed: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub attempts: u64,
    pub accepted: u64,
    pub duplicates: u64,
    pub rejections: BTreeMap<String, u64>,
    pub levels: u32,
}

/// All first-type decompositions with one fundamental. `entries[0]` is the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real + Serialize + serde::de::DeserializeOwned")]
pub struct Family<T: Real = f64> {
    pub fundamental: String,
    pub entries: Vec<DecomposedTet<T>>,
    pub stats: SearchStats,
}

impl<T: Real> Family<T> {
    /// Non-trivial decompositions.
    pub fn nontrivial(&self) -> &[DecomposedTet<T>] {
        &self.entries[1..]
    }

    pub fn contains(&self, d: &DecomposedTet<T>, fund: &Fundamental<T>) -> bool {
        self.entries.iter().any(|e| e.same_as(d, fund, T::lit(1e-6)))
    }
}

type Route = (usize, usize, usize, usize, [usize; 3]);

pub fn search_first_type<T: Real>(fund: &Fundamental<T>, opts: &SearchOptions) -> Family<T> {
    let vmax = max_tet_volume::<T>().to_f64().unwrap() + opts.volume_tol;
    let vol_f = fund.volume.to_f64().unwrap();
    let tol = T::lit(1e-6);
    let mut stats = SearchStats::default();
    let mut found: Vec<DecomposedTet<T>> = vec![fund.seed()];
    let mut level = 2u32;
    loop {
        let mut cands: Vec<Route> = Vec::new();
        for a in 0..found.len() {
            for b in 0..found.len() {
                let (da, db) = (&found[a], &found[b]);
                let tiles = da.tiles + db.tiles;
                if da.depth.max(db.depth) != level || tiles > opts.max_tiles || tiles as f64 * vol_f > vmax {
                    continue;
                }
                for p in 0..4 {
                    for q in 0..4 {
                        for m in matchings(q) {
                            cands.push((a, b, p, q, m));
                        }
                    }
                }
            }
        }
        if let Some(seed) = opts.shuffle_seed {
            cands.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ level as u64));
        }
        let outcomes: Vec<(Route, Result<DecomposedTet<T>, Rejection>)> = cands
            .par_iter()
            .map(|&r| {
                let (a, b, p, q, m) = r;
                (r, glue(fund, &found[a], p, &found[b], q, m))
            })
            .collect();
        stats.attempts += outcomes.len() as u64;
        let mut accepted = Vec::new();
        for (r, o) in outcomes {
            match o {
                Ok(d) => accepted.push((r, d)),
                Err(why) => *stats.rejections.entry(format!("{why:?}")).or_default() += 1,
            }
        }
        stats.accepted += accepted.len() as u64;
        // the least route wins, whatever order the candidates were produced in
        accepted.sort_by_key(|x| x.0);
        let mut fresh: Vec<DecomposedTet<T>> = Vec::new();
        for ((a, b, p, q, m), mut d) in accepted {
            if found.iter().chain(fresh.iter()).any(|e| e.same_as(&d, fund, tol)) {
                stats.duplicates += 1;
                continue;
            }
            d.provenance = Provenance::Glue { m: a, n: b, p, q, matching: m };
            fresh.push(d);
        }
        if fresh.is_empty() {
            break;
        }
        fresh.sort_by(|x, y| (x.tiles, &x.key).cmp(&(y.tiles, &y.key)));
        found.extend(fresh);
        level += 1;
    }
    stats.levels = level - 1;

    // final order (tiles, depth, key) with provenance renumbered
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&x, &y| {
        let (a, b) = (&found[x], &found[y]);
        (a.tiles, a.depth, &a.key).cmp(&(b.tiles, b.depth, &b.key))
    });
    let mut new_index = vec![0; found.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_index[old] = pos;
    }
    let entries = order
        .iter()
        .map(|&old| {
            let mut d = found[old].clone();
            if let Provenance::Glue { m, n, .. } = &mut d.provenance {
                *m = new_index[*m];
                *n = new_index[*n];
            }
            d
        })
        .collect();
    Family { fundamental: fund.id.clone(), entries, stats }
}
