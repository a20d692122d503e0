//! Isomorphism classes of `i`-graphs and the 1-manifold families.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{all_cells, expand_optional, Cell, FormalSum, Hypergraph, OptionalSpec};
use crate::limits::Limits;

/// One canonical representative per isomorphism class, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    pub arity: usize,
    pub nvertices: usize,
    pub members: Vec<Hypergraph>,
}

impl GraphFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of the class of `g` in `members`.
    pub fn index_of(&self, g: &Hypergraph) -> Result<Option<usize>> {
        let c = g.canonical()?;
        Ok(self.members.binary_search(&c).ok())
    }
}

/// All `arity`-graphs on `n` vertices up to isomorphism, by filtering the
/// `2^C(n, arity)` labeled graphs through canonical labeling.
pub fn enumerate_graphs(arity: usize, n: usize, limits: &Limits) -> Result<GraphFamily> {
    limits.check_vertices(n)?;
    let cells = all_cells(arity, n);
    let labeled = 1u64.checked_shl(cells.len() as u32).filter(|&x| x <= limits.max_labeled);
    let Some(labeled) = labeled else {
        return Err(Error::TooLarge {
            what: "labeled graphs to enumerate",
            size: if cells.len() >= 64 { u64::MAX } else { 1 << cells.len() },
            limit: limits.max_labeled,
        });
    };
    let classes = (0..labeled)
        .into_par_iter()
        .map(|mask| {
            let chosen = cells
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            Hypergraph::from_cells(arity, n, chosen).canonical()
        })
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(GraphFamily {
        arity,
        nvertices: n,
        members: classes.into_iter().collect(),
    })
}

/// Vertex-disjoint union of cycles with the given lengths.
pub fn cycle_union(lengths: &[usize]) -> Result<Hypergraph> {
    if let Some(&l) = lengths.iter().find(|&&l| l < 3) {
        return Err(Error::PolygonTooShort(l));
    }
    let n: usize = lengths.iter().sum();
    let mut cells = Vec::new();
    let mut start = 0;
    for &l in lengths {
        for k in 0..l {
            cells.push([start + k, start + (k + 1) % l]);
        }
        start += l;
    }
    Hypergraph::new(2, n, cells)
}

/// Alternating sum over all subsets of the edges of `cycle`.
pub fn optional_cycle(n: usize, cycle: &[usize]) -> Result<FormalSum> {
    if cycle.len() < 3 {
        return Err(Error::InvalidCycle(format!("length {} is below 3", cycle.len())));
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() {
        return Err(Error::InvalidCycle("repeated vertex".into()));
    }
    if let Some(&v) = cycle.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, nvertices: n });
    }
    let edges: Vec<Cell> = (0..cycle.len())
        .map(|k| Cell::from_vertices(&[cycle[k], cycle[(k + 1) % cycle.len()]]))
        .collect();
    expand_optional(&OptionalSpec::new(&Hypergraph::empty(2, n), &edges)?)
}

/// Whether `g` is a disjoint union of polygons: every vertex has degree two.
///
/// Isolated vertices are points, not part of a 1-manifold, so they fail.
pub fn is_1manifold(g: &Hypergraph) -> Result<bool> {
    if g.arity() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: g.arity(),
        });
    }
    // In a simple graph, all degrees 2 forces each component to be a cycle
    // of length at least 3.
    Ok(g.nvertices() > 0 && (0..g.nvertices()).all(|v| g.degree(v) == 2))
}

/// Partitions of `n` into parts of at least `min_part`, parts non-increasing.
pub fn partitions(n: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (min..=max.min(left)).rev() {
            acc.push(p);
            rec(left - p, p, min, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// Number of integer partitions of `n`.
pub fn partition_count(n: usize) -> u64 {
    // p(k) by the standard coin-change recurrence over part sizes.
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p[n]
}

/// Canonical representatives of every 1-manifold 2-graph on `n` vertices,
/// one per partition of `n` into parts of size at least 3, with the number
/// of components of each.
pub fn one_manifolds(n: usize) -> Result<Vec<(Hypergraph, usize)>> {
    let mut out = Vec::new();
    for parts in partitions(n, 3) {
        let g = cycle_union(&parts)?;
        out.push((g, parts.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn family_counts() {
        let l = Limits::default();
        assert_eq!(enumerate_graphs(1, 2, &l).unwrap().len(), 3);
        assert_eq!(enumerate_graphs(2, 3, &l).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(2, 4, &l).unwrap().len(), 11);
        assert_eq!(enumerate_graphs(0, 4, &l).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(2, 0, &l).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(3, 4, &l).unwrap().len(), 5);
    }

    #[test]
    fn family_is_sorted_and_canonical() {
        let f = enumerate_graphs(2, 4, &Limits::default()).unwrap();
        assert!(f.members.windows(2).all(|w| w[0] < w[1]));
        for g in &f.members {
            assert_eq!(&g.canonical().unwrap(), g);
        }
        let c4 = cycle_union(&[4]).unwrap();
        assert!(f.index_of(&c4).unwrap().is_some());
    }

    #[test]
    fn budget() {
        let l = Limits::default();
        assert!(matches!(enumerate_graphs(3, 6, &l), Err(Error::TooLarge { .. })));
        assert!(matches!(enumerate_graphs(2, 12, &l), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn cycles() {
        let t = cycle_union(&[3]).unwrap();
        assert_eq!(t, Hypergraph::complete(2, 3));
        let two = cycle_union(&[3, 3]).unwrap();
        assert_eq!((two.nvertices(), two.ncells()), (6, 6));
        assert!(is_1manifold(&two).unwrap());
        assert_eq!(cycle_union(&[2]), Err(Error::PolygonTooShort(2)));
    }

    #[test]
    fn manifold_predicate() {
        assert!(is_1manifold(&cycle_union(&[3]).unwrap()).unwrap());
        let path = Hypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        assert!(!is_1manifold(&path).unwrap());
        assert!(!is_1manifold(&Hypergraph::empty(2, 1)).unwrap());
        assert!(is_1manifold(&Hypergraph::empty(1, 3)).is_err());
    }

    #[test]
    fn optional_cycles() {
        let s = optional_cycle(3, &[0, 1, 2]).unwrap();
        assert_eq!(s.coefficient_sum(), q(0));
        // D - 3C + 3B - A over the subgraphs of a triangle.
        assert_eq!(s.coefficient(&Hypergraph::empty(2, 3)).unwrap(), q(-1));
        assert_eq!(s.coefficient(&Hypergraph::complete(2, 3)).unwrap(), q(1));
        let path = Hypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(s.coefficient(&path).unwrap(), q(-3));
        assert!(optional_cycle(3, &[0, 1]).is_err());
        assert!(optional_cycle(3, &[0, 1, 1]).is_err());
        assert!(optional_cycle(3, &[0, 1, 3]).is_err());
    }

    #[test]
    fn partition_numbers() {
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in expected.iter().enumerate() {
            assert_eq!(partition_count(n), p);
            assert_eq!(partitions(n, 1).len() as u64, p);
        }
        assert_eq!(partitions(9, 3), vec![vec![9], vec![6, 3], vec![5, 4], vec![3, 3, 3]]);
    }
}
