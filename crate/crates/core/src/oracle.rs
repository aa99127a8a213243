//! Exhaustive maximum independent set for small graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph the oracle accepts.
pub const ORACLE_LIMIT: usize = 24;

/// Maximum independent set by exhaustive include-first search.
///
/// Among all maximum sets the lexicographically smallest (as an ascending id
/// sequence) is returned.
pub fn brute_force_mis(g: &Graph) -> Result<VertexSet> {
    let ids: Vec<usize> = g.vertices().collect();
    let n = ids.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    // closed[i]: bit mask of N[i] in compact ids.
    let closed: Vec<u32> = ids
        .iter()
        .enumerate()
        .map(|(i, &v)| g.neighbors(v).fold(1u32 << i, |m, u| m | (1 << index[u])))
        .collect();

    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best = 0u32;
    search(&closed, all, 0, &mut best);
    Ok((0..n)
        .filter(|&i| best >> i & 1 == 1)
        .map(|i| ids[i])
        .collect())
}

fn search(closed: &[u32], cand: u32, current: u32, best: &mut u32) {
    if current.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    if cand == 0 {
        *best = current;
        return;
    }
    let i = cand.trailing_zeros() as usize;
    let bit = 1u32 << i;
    search(closed, cand & !closed[i], current | bit, best);
    search(closed, cand & !bit, current, best);
}

/// Independence number by the oracle.
pub fn alpha(g: &Graph) -> Result<usize> {
    brute_force_mis(g).map(|s| s.len())
}

/// Largest graph the critical-set enumerations accept.
pub const CRITICAL_ORACLE_LIMIT: usize = 16;

fn compact_masks(g: &Graph, limit: usize) -> Result<(Vec<usize>, Vec<u32>)> {
    let ids: Vec<usize> = g.vertices().collect();
    if ids.len() > limit {
        return Err(Error::TooLarge {
            n: ids.len(),
            limit,
        });
    }
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let open = ids
        .iter()
        .map(|&v| g.neighbors(v).fold(0u32, |m, u| m | (1 << index[u])))
        .collect();
    Ok((ids, open))
}

fn neighborhood_mask(open: &[u32], set: u32) -> u32 {
    let mut n = 0;
    let mut rest = set;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        n |= open[i];
        rest &= rest - 1;
    }
    n
}

/// `max |U| − |N(U)|` over every vertex subset `U`, by enumeration.
pub fn max_critical_difference(g: &Graph) -> Result<i64> {
    let (ids, open) = compact_masks(g, CRITICAL_ORACLE_LIMIT)?;
    let n = ids.len();
    Ok((0u32..1 << n)
        .map(|u| u.count_ones() as i64 - neighborhood_mask(&open, u).count_ones() as i64)
        .max()
        .unwrap_or(0))
}

/// Every critical independent set: independent sets `I` with
/// `|I| − |N(I)|` equal to the maximum over all subsets. Includes the empty
/// set when that maximum is 0.
pub fn critical_independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let (ids, open) = compact_masks(g, CRITICAL_ORACLE_LIMIT)?;
    let n = ids.len();
    let best = max_critical_difference(g)?;
    let mut out = Vec::new();
    for set in 0u32..1 << n {
        let nb = neighborhood_mask(&open, set);
        let independent = (0..n).all(|i| set >> i & 1 == 0 || open[i] & set == 0);
        if independent && set.count_ones() as i64 - nb.count_ones() as i64 == best {
            out.push(
                (0..n)
                    .filter(|&i| set >> i & 1 == 1)
                    .map(|i| ids[i])
                    .collect(),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind};

    #[test]
    fn small_cases() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(alpha(&k3).unwrap(), 1);
        assert_eq!(alpha(&generate(GraphKind::Cycle(5)).unwrap()).unwrap(), 2);
        let p3 = generate(GraphKind::Path(3)).unwrap();
        assert_eq!(brute_force_mis(&p3).unwrap(), vec![0, 2]);
        assert!(brute_force_mis(&Graph::new(0)).unwrap().is_empty());
    }

    #[test]
    fn lexicographic_tie_break() {
        // C4: maximum sets {0,2} and {1,3}.
        let c4 = generate(GraphKind::Cycle(4)).unwrap();
        assert_eq!(brute_force_mis(&c4).unwrap(), vec![0, 2]);
        // C6: {0,2,4} beats {1,3,5}.
        let c6 = generate(GraphKind::Cycle(6)).unwrap();
        assert_eq!(brute_force_mis(&c6).unwrap(), vec![0, 2, 4]);
    }

    #[test]
    fn respects_dead_vertices() {
        let mut p3 = generate(GraphKind::Path(3)).unwrap();
        p3.remove_vertex(0);
        assert_eq!(brute_force_mis(&p3).unwrap(), vec![1]);
    }

    #[test]
    fn critical_enumerations() {
        let p3 = generate(GraphKind::Path(3)).unwrap();
        assert_eq!(max_critical_difference(&p3).unwrap(), 1);
        let sets = critical_independent_sets(&p3).unwrap();
        assert_eq!(sets, vec![vec![0, 2]]);

        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(max_critical_difference(&k2).unwrap(), 0);
        assert_eq!(
            critical_independent_sets(&k2).unwrap(),
            vec![vec![], vec![0], vec![1]]
        );

        let star = generate(GraphKind::Star(4)).unwrap();
        assert_eq!(max_critical_difference(&star).unwrap(), 3);
        assert_eq!(
            critical_independent_sets(&star).unwrap(),
            vec![vec![1, 2, 3, 4]]
        );
    }

    #[test]
    fn rejects_large_graphs() {
        let g = Graph::new(25);
        assert!(matches!(
            brute_force_mis(&g),
            Err(Error::TooLarge { n: 25, .. })
        ));
        assert_eq!(alpha(&Graph::new(24)).unwrap(), 24);
    }

    #[test]
    fn result_is_independent_and_maximal() {
        for seed in 0..50 {
            let g = generate(GraphKind::Gnp {
                n: 16,
                p: 0.3,
                seed,
            })
            .unwrap();
            let s = brute_force_mis(&g).unwrap();
            assert!(g.is_independent(&s));
            for v in g.vertices() {
                if !s.contains(&v) {
                    assert!(
                        g.neighbors(v).any(|u| s.contains(&u)),
                        "seed {seed}: {v} addable"
                    );
                }
            }
        }
    }
}
