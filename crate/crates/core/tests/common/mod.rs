//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the subset recursion or the library's link rules.

#![allow(dead_code)]

use std::collections::BTreeMap;

use flagvec::shelling::{Atom, ShellingExpr};
use flagvec::{Hypergraph, ShellingSum, WordVector, Q};
use rand::Rng;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Cells through `v` among those inside `alive`, with `v` dropped and the
/// remaining vertices renumbered by rank within `alive \ {v}`.
fn link_cells(cells: &[Vec<usize>], alive: &[usize], v: usize) -> (Vec<Vec<usize>>, usize) {
    let rest: Vec<usize> = alive.iter().copied().filter(|&u| u != v).collect();
    let rank = |u: usize| rest.iter().position(|&x| x == u).unwrap();
    let link = cells
        .iter()
        .filter(|c| c.contains(&v) && c.iter().all(|u| alive.contains(u)))
        .map(|c| {
            let mut l: Vec<usize> = c.iter().copied().filter(|&u| u != v).map(rank).collect();
            l.sort();
            l
        })
        .collect();
    (link, rest.len())
}

/// Link letters written out directly: atoms for 0-graphs, `(1)` on an empty
/// vertex set, `(1, #cells)` for 1-graphs, `(1, #edges, #pairs of edges with a
/// common vertex)` for 2-graphs.
fn contribution(arity: usize, cells: &[Vec<usize>], nvertices: usize) -> Vec<i64> {
    if arity == 0 {
        return if cells.is_empty() { vec![1, 0] } else { vec![0, 1] };
    }
    if nvertices == 0 {
        return vec![1];
    }
    match arity {
        1 => vec![1, cells.len() as i64],
        2 => {
            let mut touching = 0;
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    if cells[i].iter().any(|v| cells[j].contains(v)) {
                        touching += 1;
                    }
                }
            }
            vec![1, cells.len() as i64, touching]
        }
        _ => panic!("no closed form for link arity {arity}"),
    }
}

/// Flag vector as the sum over all `N!` removal orders of the tensor product
/// of link letters.
pub fn brute_flag(g: &Hypergraph) -> WordVector {
    let n = g.nvertices();
    let cells = g.cell_lists();
    let letters = if g.arity() == 3 { 3 } else { 2 };
    let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for order in permutations(n) {
        let mut alive: Vec<usize> = (0..n).collect();
        let mut terms: Vec<(Vec<u8>, i64)> = vec![(Vec::new(), 1)];
        for &v in &order {
            let (link, k) = link_cells(&cells, &alive, v);
            let x = contribution(g.arity() - 1, &link, k);
            terms = terms
                .into_iter()
                .flat_map(|(w, c)| {
                    x.iter().enumerate().filter(|(_, &xi)| xi != 0).map(move |(l, &xi)| {
                        let mut w2 = w.clone();
                        w2.push(l as u8);
                        (w2, c * xi)
                    })
                })
                .collect();
            alive.retain(|&u| u != v);
        }
        for (w, c) in terms {
            *acc.entry(w).or_insert(0) += c;
        }
    }
    WordVector::from_terms(
        n,
        letters,
        acc.into_iter().filter(|(_, c)| *c != 0).map(|(w, c)| (w, Q::from_integer(c.into()))),
    )
    .unwrap()
}

/// Shelling vector by listing all `N!` orders at every level.
pub fn brute_shelling(g: &Hypergraph) -> ShellingSum {
    if g.arity() == 0 {
        let a = if g.ncells() == 0 { Atom::A } else { Atom::B };
        return ShellingSum::single(ShellingExpr::Atom(a));
    }
    let n = g.nvertices();
    let cells = g.cell_lists();
    let mut out = ShellingSum::zero();
    for order in permutations(n) {
        let mut alive: Vec<usize> = (0..n).collect();
        let mut slots = Vec::new();
        for &v in &order {
            let (link, k) = link_cells(&cells, &alive, v);
            let l = Hypergraph::new(g.arity() - 1, k, link).unwrap();
            slots.push(brute_shelling(&l));
            alive.retain(|&u| u != v);
        }
        out.add_term(ShellingExpr::Bracket(slots), Q::from_integer(1.into()));
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, arity: usize, n: usize) -> Hypergraph {
    let p: f64 = rng.gen_range(0.0..1.0);
    let cells: Vec<Vec<usize>> = subsets(n, arity).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::new(arity, n, cells).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
        .collect()
}

/// Every labeled `arity`-graph on `n` vertices.
pub fn all_labeled(arity: usize, n: usize) -> Vec<Hypergraph> {
    let cells = subsets(n, arity);
    (0u64..1 << cells.len())
        .map(|m| {
            let chosen = cells.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, c)| c.clone());
            Hypergraph::new(arity, n, chosen.collect::<Vec<_>>()).unwrap()
        })
        .collect()
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}
