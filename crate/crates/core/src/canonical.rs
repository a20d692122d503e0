//! Canonical labeling by exhaustive permutation search.
//!
//! The canonical form is the relabeling whose sorted cell list is
//! lexicographically least. Vertices are labeled `0, 1, 2, ...` in turn; a
//! partial labeling gives an elementwise lower bound on every completion,
//! which prunes branches that cannot beat the best leaf. Twin vertices (whose
//! transposition is an automorphism) are only tried once per branch.

use std::collections::{HashMap, HashSet};
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::hypergraph::{Cell, Hypergraph};

/// Hard cap on the vertex count accepted by [`canonicalize`].
pub const MAX_CANON_VERTICES: usize = 12;

const MEMO_CAPACITY: usize = 1 << 18;

type Memo = RwLock<HashMap<Hypergraph, (Hypergraph, Vec<usize>)>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

pub fn canonicalize(g: &Hypergraph) -> Result<(Hypergraph, Vec<usize>)> {
    let n = g.nvertices();
    if n > MAX_CANON_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for canonical labeling",
            size: n as u64,
            limit: MAX_CANON_VERTICES as u64,
        });
    }
    if let Some(hit) = memo().read().unwrap().get(g) {
        return Ok(hit.clone());
    }
    let perm = search(g);
    let out = (g.relabel(&perm), perm);
    let mut m = memo().write().unwrap();
    if m.len() >= MEMO_CAPACITY {
        m.clear();
    }
    m.insert(g.clone(), out.clone());
    Ok(out)
}

struct Search {
    n: usize,
    cells: Vec<u32>,
    twin_class: Vec<usize>,
    label: Vec<Option<usize>>,
    best: Option<(Vec<Cell>, Vec<usize>)>,
}

fn search(g: &Hypergraph) -> Vec<usize> {
    let n = g.nvertices();
    let cells: Vec<u32> = g.cells().map(|c| c.0).collect();
    let mut s = Search {
        n,
        twin_class: twin_classes(n, &cells),
        cells,
        label: vec![None; n],
        best: None,
    };
    s.descend(0);
    s.best.expect("search visits at least one leaf").1
}

/// Groups vertices whose transposition preserves the cell set.
fn twin_classes(n: usize, cells: &[u32]) -> Vec<usize> {
    let set: HashSet<u32> = cells.iter().copied().collect();
    let mut class: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if class[u] != u {
            continue;
        }
        for w in u + 1..n {
            if class[w] != w {
                continue;
            }
            let swaps = cells.iter().all(|&c| {
                let (bu, bw) = (c >> u & 1, c >> w & 1);
                let t = if bu == bw { c } else { c ^ (1 << u) ^ (1 << w) };
                set.contains(&t)
            });
            if swaps {
                class[w] = u;
            }
        }
    }
    class
}

impl Search {
    /// Sorted elementwise lower bound on the encoding of any completion of
    /// the labels assigned so far (`k` of them), and whether it is exact.
    fn bound(&self, k: usize) -> (Vec<Cell>, bool) {
        let mut exact = true;
        let mut out: Vec<Cell> = self
            .cells
            .iter()
            .map(|&c| {
                let mut known = 0u32;
                let mut unknown = 0;
                for v in Cell(c).vertices() {
                    match self.label[v] {
                        Some(l) => known |= 1 << l,
                        None => unknown += 1,
                    }
                }
                if unknown > 0 {
                    exact = false;
                }
                Cell(known | (((1u32 << unknown) - 1) << k))
            })
            .collect();
        out.sort();
        (out, exact)
    }

    fn finish(&mut self, k: usize, encoding: Vec<Cell>) {
        let mut perm: Vec<usize> = self.label.iter().map(|l| l.unwrap_or(usize::MAX)).collect();
        let mut next = k;
        for p in perm.iter_mut() {
            if *p == usize::MAX {
                *p = next;
                next += 1;
            }
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => encoding < *b,
        };
        if better {
            self.best = Some((encoding, perm));
        }
    }

    fn descend(&mut self, k: usize) {
        let (lb, exact) = self.bound(k);
        if exact || k == self.n {
            // Remaining vertices touch no unlabeled cell position: any order works.
            self.finish(k, lb);
            return;
        }
        let mut children = Vec::new();
        let mut seen_class = HashSet::new();
        for v in 0..self.n {
            if self.label[v].is_some() || !seen_class.insert(self.twin_class[v]) {
                continue;
            }
            self.label[v] = Some(k);
            let (child_lb, child_exact) = self.bound(k + 1);
            self.label[v] = None;
            children.push((child_lb, child_exact, v));
        }
        children.sort();
        for (child_lb, child_exact, v) in children {
            if let Some((best, _)) = &self.best {
                if child_lb > *best || (child_exact && child_lb == *best) {
                    continue;
                }
            }
            self.label[v] = Some(k);
            self.descend(k + 1);
            self.label[v] = None;
        }
    }
}
