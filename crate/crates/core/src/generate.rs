//! Deterministic test-instance generators.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    /// Erdős–Rényi G(n, p).
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    Cycle(usize),
    Path(usize),
    /// Star with one center (id 0) and `leaves` leaves.
    Star(usize),
    /// Random chordal graph: vertex `i` joins a clique among `0..i`.
    Chordal {
        n: usize,
        seed: u64,
    },
    /// Uniform random labelled tree (random parent attachment).
    Tree {
        n: usize,
        seed: u64,
    },
}

impl GraphKind {
    /// Parses `kind` plus its positional parameters, e.g. `("gnp", ["20", "0.1"])`.
    pub fn parse(kind: &str, params: &[String], seed: u64) -> Result<GraphKind> {
        fn num<T: FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
            params
                .get(i)
                .ok_or_else(|| Error::InvalidParams(format!("missing parameter <{what}>")))?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad value for <{what}>: {}", params[i])))
        }
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "'{kind}' takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        Ok(match kind {
            "gnp" => {
                want(2)?;
                GraphKind::Gnp {
                    n: num(params, 0, "n")?,
                    p: num(params, 1, "p")?,
                    seed,
                }
            }
            "cycle" => {
                want(1)?;
                GraphKind::Cycle(num(params, 0, "n")?)
            }
            "path" => {
                want(1)?;
                GraphKind::Path(num(params, 0, "n")?)
            }
            "star" => {
                want(1)?;
                GraphKind::Star(num(params, 0, "leaves")?)
            }
            "chordal" => {
                want(1)?;
                GraphKind::Chordal {
                    n: num(params, 0, "n")?,
                    seed,
                }
            }
            "tree" => {
                want(1)?;
                GraphKind::Tree {
                    n: num(params, 0, "n")?,
                    seed,
                }
            }
            other => return Err(Error::InvalidParams(format!("unknown generator '{other}'"))),
        })
    }
}

pub fn generate(kind: GraphKind) -> Result<Graph> {
    match kind {
        GraphKind::Gnp { n, p, seed } => {
            check_n(n)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!("p = {p} is not in [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            Ok(g)
        }
        GraphKind::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
            }
            let mut g = Graph::new(n);
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
            Ok(g)
        }
        GraphKind::Path(n) => {
            check_n(n)?;
            let mut g = Graph::new(n);
            for i in 1..n {
                g.add_edge(i - 1, i);
            }
            Ok(g)
        }
        GraphKind::Star(leaves) => {
            check_n(leaves)?;
            let mut g = Graph::new(leaves + 1);
            for i in 1..=leaves {
                g.add_edge(0, i);
            }
            Ok(g)
        }
        GraphKind::Chordal { n, seed } => {
            check_n(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::new(n);
            // attach[i] is the clique vertex i was joined to; {i} ∪ attach[i] is a clique.
            let mut attach: Vec<Vec<usize>> = vec![Vec::new(); n];
            for i in 1..n {
                let parent = rng.gen_range(0..i);
                let mut clique = vec![parent];
                let keep = rng.gen_range(0..=attach[parent].len());
                let mut pool = attach[parent].clone();
                pool.shuffle(&mut rng);
                clique.extend_from_slice(&pool[..keep]);
                for &c in &clique {
                    g.add_edge(i, c);
                }
                attach[i] = clique;
            }
            Ok(g)
        }
        GraphKind::Tree { n, seed } => {
            check_n(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::new(n);
            for i in 1..n {
                let parent = rng.gen_range(0..i);
                g.add_edge(i, parent);
            }
            Ok(g)
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParams("n must be at least 1".into()))
    } else {
        Ok(())
    }
}
