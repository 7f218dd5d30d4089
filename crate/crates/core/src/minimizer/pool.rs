//! Candidate pool for the greedy cover.
//!
//! * singles: maximal 1/1 cubes;
//! * pairs: all non-nested pairs of a bounded cube universe (maximal one-cubes
//!   per mode, maximal constant-value regions, then every cube free of 0/0
//!   cells, largest first);
//! * triples: a pair that fails to match is extended with a third cube. The
//!   extensions tried are every third cube from the head of the universe, and
//!   for adjacent cubes `c`, `c'` the split `(c', c ∪ c', c)`.

use std::collections::BTreeSet;

use crate::cubes::{constant_regions, implicants_of, prime_implicants, prime_implicants_of, Cube};
use crate::par;
use crate::polyfunc::{Mode, PolyFunction, PolyValue};
use crate::rules::{dedup_candidates, match_pair, match_single, match_triple, TermCandidate};

use super::MinimizeConfig;

/// Cubes that pairs and triples are drawn from, canonical order within each
/// priority band.
pub(crate) fn cube_universe(f: &PolyFunction, limit: usize) -> Vec<Cube> {
    let mut maximal = BTreeSet::new();
    for m in Mode::BOTH {
        maximal.extend(prime_implicants(f, m));
    }
    for v in [
        PolyValue::new(false, true),
        PolyValue::new(true, false),
        PolyValue::ONE,
    ] {
        maximal.extend(constant_regions(f, v));
    }
    let nonzero: Vec<bool> = f.cells().iter().map(|&v| v != PolyValue::ZERO).collect();
    let mut out: Vec<Cube> = maximal.iter().copied().collect();
    out.extend(
        implicants_of(f.n(), &nonzero)
            .into_iter()
            .filter(|c| !maximal.contains(c)),
    );
    out.truncate(limit);
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PoolStats {
    pub universe: usize,
    pub singles: usize,
    pub pairs: usize,
    pub triples: usize,
}

fn pair_or_stall(f: &PolyFunction, a: &Cube, b: &Cube) -> Option<Vec<TermCandidate>> {
    match match_pair(f, a, b) {
        Ok(found) if !found.is_empty() => Some(found),
        Ok(_) => None,
        // repeated cubes
        Err(_) => None,
    }
}

/// Builds the deduplicated candidate pool in canonical order.
pub fn candidate_pool(f: &PolyFunction, cfg: &MinimizeConfig) -> (Vec<TermCandidate>, PoolStats) {
    let n = f.n();
    let universe = cube_universe(f, cfg.max_pair_cubes);
    let mut stats = PoolStats {
        universe: universe.len(),
        ..PoolStats::default()
    };

    let ones: Vec<bool> = f.cells().iter().map(|&v| v == PolyValue::ONE).collect();
    let mut singles: Vec<TermCandidate> = prime_implicants_of(n, &ones)
        .iter()
        .filter_map(|c| match_single(f, c).expect("arity"))
        .collect();
    stats.singles = singles.len();

    let pairs_idx: Vec<(usize, usize)> = (0..universe.len())
        .flat_map(|i| (i + 1..universe.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            !universe[i].contains(&universe[j]) && !universe[j].contains(&universe[i])
        })
        .collect();
    let pair_results: Vec<(usize, usize, Option<Vec<TermCandidate>>)> =
        par::flat_map(cfg.parallel, &pairs_idx, |&(i, j)| {
            vec![(i, j, pair_or_stall(f, &universe[i], &universe[j]))]
        });
    let mut pairs = Vec::new();
    let mut stalled = Vec::new();
    for (i, j, found) in pair_results {
        match found {
            Some(found) => pairs.extend(found),
            None => stalled.push((i, j)),
        }
    }
    stats.pairs = pairs.len();

    let mut triples = Vec::new();
    if cfg.enable_triples {
        // (c1, c2, c3) tuples, each tried with every cube in the outer slot
        let head = cfg.max_triple_cubes.min(universe.len());
        let mut tuples: BTreeSet<[Cube; 3]> = BTreeSet::new();
        for &(i, j) in stalled.iter().filter(|&&(i, j)| i < head && j < head) {
            for k in (0..head).filter(|&k| k != i && k != j) {
                let mut t = [universe[i], universe[j], universe[k]];
                t.sort();
                tuples.insert(t);
            }
        }
        let mut splits: BTreeSet<[Cube; 3]> = BTreeSet::new();
        let mut add_split = |c: Cube, v: usize| {
            let other = c.neighbor(v).expect("bound variable");
            if pair_or_stall(f, &c, &other).is_none() {
                let (lo, hi) = if c < other { (c, other) } else { (other, c) };
                splits.insert([lo, c.merge(v).expect("bound variable"), hi]);
            }
        };
        for c in &universe {
            for v in c.bound_vars().collect::<Vec<_>>() {
                add_split(*c, v);
            }
        }
        // every demanded cell gets an edge split so that coverage never
        // depends on the universe bound
        for (k, _) in f.demand() {
            let p = Cube::point(n, k);
            for v in 1..=n {
                add_split(p, v);
            }
        }
        let mut jobs: Vec<[Cube; 3]> = Vec::new();
        for [a, b, c] in tuples {
            jobs.extend([[a, b, c], [b, c, a], [c, a, b]]);
        }
        for [lo, mid, hi] in splits {
            jobs.extend([[lo, mid, hi], [hi, mid, lo]]);
        }
        jobs.truncate(cfg.max_candidates);
        triples = par::flat_map(cfg.parallel, &jobs, |[a, b, c]| {
            match_triple(f, a, b, c).expect("distinct cubes of matching arity")
        });
    }

    let mut all = Vec::with_capacity(singles.len() + pairs.len() + triples.len());
    all.append(&mut singles);
    all.append(&mut pairs);
    all.sort_by(canonical_cmp);
    triples.sort_by(canonical_cmp);
    all.extend(triples);
    let mut all = dedup_candidates(all);
    stats.triples = all.iter().filter(|t| t.cubes.len() == 3).count();
    all.truncate(cfg.max_candidates);
    (all, stats)
}

fn canonical_cmp(a: &TermCandidate, b: &TermCandidate) -> std::cmp::Ordering {
    (a.cubes.len(), &a.cubes, a.shape, &a.gates).cmp(&(b.cubes.len(), &b.cubes, b.shape, &b.gates))
}
