//! Uniform hypergraphs (`i`-graphs), formal sums of them, and the local
//! operations used by shellings: link, vertex deletion and cone.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::canonical;
use crate::error::{Error, Result};
use crate::rational::Q;

/// Vertex masks are `u32`, so graphs carry at most this many vertices.
pub const MAX_VERTICES: usize = 32;

/// A set of vertices stored as a bitmask.
///
/// Cells are ordered by the lexicographic order of their sorted vertex
/// tuples, which is the order the canonical encoding is minimised in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Cell(pub u32);

impl Cell {
    pub fn from_vertices(vs: &[usize]) -> Cell {
        Cell(vs.iter().fold(0, |m, &v| m | (1 << v)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_disjoint(self, other: Cell) -> bool {
        self.0 & other.0 == 0
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// Removes vertex `v` and shifts higher vertices down by one.
    pub(crate) fn squeeze_out(self, v: usize) -> Cell {
        let low = self.0 & ((1u32 << v) - 1);
        let high = if v + 1 >= 32 { 0 } else { (self.0 >> (v + 1)) << v };
        Cell(low | high)
    }

    /// Relabels the members of `support` to `0..|support|` order-preservingly.
    pub(crate) fn compress(self, support: u32) -> Cell {
        let mut out = 0u32;
        let mut bit = 0;
        let mut s = support;
        while s != 0 {
            let v = s.trailing_zeros();
            if self.0 >> v & 1 == 1 {
                out |= 1 << bit;
            }
            bit += 1;
            s &= s - 1;
        }
        Cell(out)
    }

    pub(crate) fn permute(self, perm: &[usize]) -> Cell {
        Cell(self.vertices().fold(0, |m, v| m | (1 << perm[v])))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a == b {
            return Ordering::Equal;
        }
        let diff = a ^ b;
        let low = diff & diff.wrapping_neg();
        // The tuples agree below `low`. The one holding `low` is smaller unless
        // the other tuple ends there (then the other is a proper prefix).
        let (a_holds, other) = if a & low != 0 { (true, b) } else { (false, a) };
        let other_continues = other & !(low | (low - 1)) != 0;
        match (a_holds, other_continues) {
            (true, true) | (false, false) => Ordering::Less,
            (true, false) | (false, true) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

/// A simple `arity`-uniform hypergraph on the vertex set `0..nvertices`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    arity: usize,
    nvertices: usize,
    cells: BTreeSet<Cell>,
}

impl Hypergraph {
    pub fn new<C: AsRef<[usize]>>(
        arity: usize,
        nvertices: usize,
        cells: impl IntoIterator<Item = C>,
    ) -> Result<Hypergraph> {
        if nvertices > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: nvertices as u64,
                limit: MAX_VERTICES as u64,
            });
        }
        let mut set = BTreeSet::new();
        for cell in cells {
            let vs = cell.as_ref();
            let invalid = |reason: &str| Error::InvalidCell {
                cell: vs.to_vec(),
                reason: reason.to_string(),
            };
            if vs.len() != arity {
                return Err(invalid(&format!("expected {arity} vertices")));
            }
            if let Some(&v) = vs.iter().find(|&&v| v >= nvertices) {
                return Err(invalid(&format!("vertex {v} out of range")));
            }
            let c = Cell::from_vertices(vs);
            if c.len() != arity {
                return Err(invalid("repeated vertex"));
            }
            if !set.insert(c) {
                return Err(invalid("duplicate cell"));
            }
        }
        Ok(Hypergraph {
            arity,
            nvertices,
            cells: set,
        })
    }

    /// Builds from already-valid cells; callers guarantee the invariants.
    pub(crate) fn from_cells(arity: usize, nvertices: usize, cells: BTreeSet<Cell>) -> Hypergraph {
        debug_assert!(cells
            .iter()
            .all(|c| c.len() == arity && (c.0 as u64) < (1u64 << nvertices)));
        Hypergraph {
            arity,
            nvertices,
            cells,
        }
    }

    pub fn empty(arity: usize, nvertices: usize) -> Hypergraph {
        Hypergraph::from_cells(arity, nvertices, BTreeSet::new())
    }

    /// The 0-graph `[a]` (no cells) or `[b]` (the empty cell) on `nvertices` vertices.
    pub fn zero_graph(selected: bool, nvertices: usize) -> Hypergraph {
        let cells = if selected {
            BTreeSet::from([Cell(0)])
        } else {
            BTreeSet::new()
        };
        Hypergraph::from_cells(0, nvertices, cells)
    }

    /// The complete `arity`-graph: every `arity`-subset is a cell.
    pub fn complete(arity: usize, nvertices: usize) -> Hypergraph {
        Hypergraph::from_cells(arity, nvertices, all_cells(arity, nvertices).into_iter().collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn ncells(&self) -> usize {
        self.cells.len()
    }

    pub fn has_cell(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn cell_lists(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.to_vec()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.cells.iter().filter(|c| c.contains(v)).count()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.nvertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                nvertices: self.nvertices,
            });
        }
        Ok(())
    }

    /// The `(arity-1)`-graph of cells through `v`, with `v` removed and the
    /// other vertices renumbered order-preservingly.
    pub fn link(&self, v: usize) -> Result<Hypergraph> {
        if self.arity == 0 {
            return Err(Error::NoLinkForZeroGraph);
        }
        self.check_vertex(v)?;
        let cells = self
            .cells
            .iter()
            .filter(|c| c.contains(v))
            .map(|c| Cell(c.0 & !(1 << v)).squeeze_out(v))
            .collect();
        Ok(Hypergraph::from_cells(self.arity - 1, self.nvertices - 1, cells))
    }

    /// The induced graph on the other `n-1` vertices.
    pub fn delete_vertex(&self, v: usize) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        let cells = self
            .cells
            .iter()
            .filter(|c| !c.contains(v))
            .map(|c| c.squeeze_out(v))
            .collect();
        Ok(Hypergraph::from_cells(self.arity, self.nvertices - 1, cells))
    }

    /// Adds apex vertex `n` to every cell.
    pub fn cone(&self) -> Result<Hypergraph> {
        if self.nvertices + 1 > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: self.nvertices as u64 + 1,
                limit: MAX_VERTICES as u64,
            });
        }
        let apex = 1u32 << self.nvertices;
        let cells = self.cells.iter().map(|c| Cell(c.0 | apex)).collect();
        Ok(Hypergraph::from_cells(self.arity + 1, self.nvertices + 1, cells))
    }

    /// Induced subgraph on the vertex mask `support`, renumbered to `0..|support|`.
    pub fn induced(&self, support: u32) -> Hypergraph {
        let cells = self
            .cells
            .iter()
            .filter(|c| c.0 & !support == 0)
            .map(|c| c.compress(support))
            .collect();
        Hypergraph::from_cells(self.arity, support.count_ones() as usize, cells)
    }

    /// Applies `perm` (old label to new label).
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        debug_assert_eq!(perm.len(), self.nvertices);
        let cells = self.cells.iter().map(|c| c.permute(perm)).collect();
        Hypergraph::from_cells(self.arity, self.nvertices, cells)
    }

    pub fn with_cells(&self, cells: BTreeSet<Cell>) -> Hypergraph {
        Hypergraph::from_cells(self.arity, self.nvertices, cells)
    }

    /// Lexicographically least relabeling over all vertex permutations,
    /// together with a permutation (old to new) that produces it.
    pub fn canonicalize(&self) -> Result<(Hypergraph, Vec<usize>)> {
        canonical::canonicalize(self)
    }

    pub fn canonical(&self) -> Result<Hypergraph> {
        Ok(self.canonicalize()?.0)
    }

    pub fn is_isomorphic(&self, other: &Hypergraph) -> Result<bool> {
        if self.arity != other.arity
            || self.nvertices != other.nvertices
            || self.cells.len() != other.cells.len()
        {
            return Ok(false);
        }
        Ok(self.canonical()? == other.canonical()?)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph/{}{:?}", self.arity, self.nvertices, self.cells)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph on {} vertices {{", self.arity, self.nvertices)?;
        for (k, c) in self.cells.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in c.vertices().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Every `arity`-subset of `0..n`, in cell order.
pub fn all_cells(arity: usize, n: usize) -> Vec<Cell> {
    fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<Cell>) {
        if left == 0 {
            out.push(Cell(acc));
            return;
        }
        for v in start..=n.saturating_sub(left) {
            if v < n {
                rec(v + 1, n, left - 1, acc | (1 << v), out);
            }
        }
    }
    let mut out = Vec::new();
    if arity <= n {
        rec(0, n, arity, 0, &mut out);
    }
    out.sort();
    out
}

/// Rational combination of isomorphism classes of `i`-graphs.
///
/// Terms are keyed by canonical form, so relabelings of one graph merge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum {
    arity: usize,
    terms: BTreeMap<Hypergraph, Q>,
}

impl FormalSum {
    pub fn zero(arity: usize) -> FormalSum {
        FormalSum {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Hypergraph) -> Result<FormalSum> {
        let mut s = FormalSum::zero(g.arity());
        s.add_term(g, Q::from_integer(1.into()))?;
        Ok(s)
    }

    pub fn from_terms<'a>(arity: usize, terms: impl IntoIterator<Item = (&'a Hypergraph, Q)>) -> Result<FormalSum> {
        let mut s = FormalSum::zero(arity);
        for (g, c) in terms {
            s.add_term(g, c)?;
        }
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Hypergraph, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Hypergraph) -> Result<Q> {
        Ok(self.terms.get(&g.canonical()?).cloned().unwrap_or_else(Q::zero))
    }

    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn add_term(&mut self, g: &Hypergraph, coeff: Q) -> Result<()> {
        if g.arity() != self.arity {
            if !self.terms.is_empty() {
                return Err(Error::MixedArity(self.arity, g.arity()));
            }
            self.arity = g.arity();
        }
        if coeff.is_zero() {
            return Ok(());
        }
        self.add_canonical(g.canonical()?, coeff);
        Ok(())
    }

    fn add_canonical(&mut self, g: Hypergraph, coeff: Q) {
        let slot = self.terms.entry(g).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, k: &Q) -> FormalSum {
        if k.is_zero() {
            return FormalSum::zero(self.arity);
        }
        FormalSum {
            arity: self.arity,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    pub fn checked_add(&self, other: &FormalSum) -> Result<FormalSum> {
        let mut out = self.clone();
        if other.is_zero() {
            return Ok(out);
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.arity != other.arity {
            return Err(Error::MixedArity(self.arity, other.arity));
        }
        for (g, c) in &other.terms {
            out.add_canonical(g.clone(), c.clone());
        }
        Ok(out)
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;

    /// Panics on mixed arities; use [`FormalSum::checked_add`] otherwise.
    fn add(self, rhs: &FormalSum) -> FormalSum {
        self.checked_add(rhs).expect("formal sums of different arity")
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;

    fn sub(self, rhs: &FormalSum) -> FormalSum {
        self + &-rhs
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;

    fn neg(self) -> FormalSum {
        FormalSum {
            arity: self.arity,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl Mul<&FormalSum> for &Q {
    type Output = FormalSum;

    fn mul(self, rhs: &FormalSum) -> FormalSum {
        rhs.scale(self)
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(g, c)| (g, c.to_string()))).finish()
    }
}

/// Base cells `A` plus optional cells `B`, on a fixed vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionalSpec {
    arity: usize,
    nvertices: usize,
    base: BTreeSet<Cell>,
    options: BTreeSet<Cell>,
}

impl OptionalSpec {
    pub fn new(base: &Hypergraph, options: &[Cell]) -> Result<OptionalSpec> {
        let mut opts = BTreeSet::new();
        for &c in options {
            if c.len() != base.arity() || (c.0 as u64) >= (1u64 << base.nvertices()) {
                return Err(Error::InvalidCell {
                    cell: c.to_vec(),
                    reason: format!("not an {}-cell on {} vertices", base.arity(), base.nvertices()),
                });
            }
            if base.has_cell(c) {
                return Err(Error::OptionsOverlapBase);
            }
            if !opts.insert(c) {
                return Err(Error::InvalidCell {
                    cell: c.to_vec(),
                    reason: "duplicate option".into(),
                });
            }
        }
        Ok(OptionalSpec {
            arity: base.arity(),
            nvertices: base.nvertices(),
            base: base.cell_set().clone(),
            options: opts,
        })
    }

    pub fn options(&self) -> impl Iterator<Item = Cell> + '_ {
        self.options.iter().copied()
    }

    /// The `2^#B` labeled graphs `(A ∪ C, V)` with signs `(-1)^(#B-#C)`, unmerged.
    pub fn signed_terms(&self) -> Vec<(Hypergraph, i64)> {
        let opts: Vec<Cell> = self.options.iter().copied().collect();
        let k = opts.len();
        (0..1u64 << k)
            .map(|mask| {
                let mut cells = self.base.clone();
                cells.extend(
                    opts.iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, &c)| c),
                );
                let missing = k - mask.count_ones() as usize;
                let sign = if missing.is_multiple_of(2) { 1 } else { -1 };
                (Hypergraph::from_cells(self.arity, self.nvertices, cells), sign)
            })
            .collect()
    }
}

/// Alternating sum over all choices of the optional cells.
pub fn expand_optional(spec: &OptionalSpec) -> Result<FormalSum> {
    let mut sum = FormalSum::zero(spec.arity);
    for (g, sign) in spec.signed_terms() {
        sum.add_term(&g, Q::from_integer(sign.into()))?;
    }
    Ok(sum)
}

/// Result of splitting a graph along a vertex partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSplit {
    /// Cells inside the chosen vertex set.
    pub inner: Hypergraph,
    /// Cells inside its complement.
    pub outer: Hypergraph,
    /// Cells meeting both sides.
    pub boundary: Hypergraph,
}

/// Partitions the cells of `g` by where their support lies relative to `part`.
/// All three pieces keep the vertex set of `g`.
pub fn glue_split(g: &Hypergraph, part: &[usize]) -> Result<GlueSplit> {
    let mut side = 0u32;
    for &v in part {
        g.check_vertex(v)?;
        side |= 1 << v;
    }
    let (mut inner, mut outer, mut boundary) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for c in g.cells() {
        if c.0 & !side == 0 {
            inner.insert(c);
        } else if c.0 & side == 0 {
            outer.insert(c);
        } else {
            boundary.insert(c);
        }
    }
    Ok(GlueSplit {
        inner: g.with_cells(inner),
        outer: g.with_cells(outer),
        boundary: g.with_cells(boundary),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn g(arity: usize, n: usize, cells: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(arity, n, cells.iter().copied()).unwrap()
    }

    fn triangle() -> Hypergraph {
        g(2, 3, &[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn cell_order_is_tuple_lexicographic() {
        let tuples: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![0, 1],
            vec![0, 1, 5],
            vec![0, 2, 3],
            vec![0, 5],
            vec![1],
            vec![1, 2],
            vec![3],
        ];
        for a in &tuples {
            for b in &tuples {
                let (ca, cb) = (Cell::from_vertices(a), Cell::from_vertices(b));
                assert_eq!(ca.cmp(&cb), a.cmp(b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(Hypergraph::new(2, 3, [[0, 3]]).is_err());
        assert!(Hypergraph::new(2, 3, [[1, 1]]).is_err());
        assert!(Hypergraph::new(2, 3, [[0, 1], [1, 0]]).is_err());
        assert!(Hypergraph::new(2, 3, [vec![0]]).is_err());
    }

    #[test]
    fn zero_graphs() {
        let a = Hypergraph::zero_graph(false, 3);
        let b = Hypergraph::new(0, 3, [Vec::<usize>::new()]).unwrap();
        assert_eq!(a.ncells(), 0);
        assert_eq!(b, Hypergraph::zero_graph(true, 3));
        assert_eq!(a.link(0), Err(Error::NoLinkForZeroGraph));
    }

    #[test]
    fn links() {
        assert_eq!(triangle().link(0).unwrap(), g(1, 2, &[&[0], &[1]]));
        assert_eq!(Hypergraph::empty(2, 4).link(2).unwrap(), Hypergraph::empty(1, 3));
        let h = g(3, 4, &[&[0, 1, 2], &[0, 1, 3]]);
        assert_eq!(h.link(0).unwrap(), g(2, 3, &[&[0, 1], &[0, 2]]));
        assert!(triangle().link(3).is_err());
    }

    #[test]
    fn deletion() {
        assert_eq!(g(2, 2, &[&[0, 1]]).delete_vertex(0).unwrap(), Hypergraph::empty(2, 1));
        assert_eq!(triangle().delete_vertex(2).unwrap(), g(2, 2, &[&[0, 1]]));
        assert_eq!(Hypergraph::empty(2, 1).delete_vertex(0).unwrap(), Hypergraph::empty(2, 0));
    }

    #[test]
    fn cones() {
        let b = Hypergraph::zero_graph(true, 0);
        assert_eq!(b.cone().unwrap(), g(1, 1, &[&[0]]));
        let l = g(1, 2, &[&[0], &[1]]);
        assert_eq!(l.cone().unwrap(), g(2, 3, &[&[0, 2], &[1, 2]]));
        assert_eq!(l.cone().unwrap().link(2).unwrap(), l);
    }

    #[test]
    fn optional_expansions() {
        let base = Hypergraph::empty(1, 2);
        let none = expand_optional(&OptionalSpec::new(&base, &[]).unwrap()).unwrap();
        assert_eq!(none, FormalSum::from_graph(&base).unwrap());

        let one = OptionalSpec::new(&base, &[Cell::from_vertices(&[0])]).unwrap();
        let plus = g(1, 2, &[&[0]]);
        let expected = &FormalSum::from_graph(&plus).unwrap() - &FormalSum::from_graph(&base).unwrap();
        assert_eq!(expand_optional(&one).unwrap(), expected);

        // G++ - G+- - G-+ + G-- with the two single-cell graphs isomorphic.
        let two = OptionalSpec::new(&base, &[Cell::from_vertices(&[0]), Cell::from_vertices(&[1])]).unwrap();
        let s = expand_optional(&two).unwrap();
        assert_eq!(two.signed_terms().len(), 4);
        assert_eq!(s.coefficient(&g(1, 2, &[&[0], &[1]])).unwrap(), q(1));
        assert_eq!(s.coefficient(&plus).unwrap(), q(-2));
        assert_eq!(s.coefficient(&base).unwrap(), q(1));
    }

    #[test]
    fn optional_overlap_rejected() {
        let base = g(2, 3, &[&[0, 1]]);
        assert_eq!(
            OptionalSpec::new(&base, &[Cell::from_vertices(&[0, 1])]),
            Err(Error::OptionsOverlapBase)
        );
    }

    #[test]
    fn glue_splits() {
        let t = triangle();
        let s = glue_split(&t, &[0]).unwrap();
        assert_eq!(s.inner.ncells(), 0);
        assert_eq!(s.outer, g(2, 3, &[&[1, 2]]));
        assert_eq!(s.boundary, g(2, 3, &[&[0, 1], &[0, 2]]));

        let all = glue_split(&t, &[0, 1, 2]).unwrap();
        assert_eq!((all.inner, all.outer.ncells(), all.boundary.ncells()), (t, 0, 0));

        let two = g(2, 4, &[&[0, 1], &[2, 3]]);
        let s = glue_split(&two, &[0, 1]).unwrap();
        assert_eq!(s.inner, g(2, 4, &[&[0, 1]]));
        assert_eq!(s.outer, g(2, 4, &[&[2, 3]]));
        assert_eq!(s.boundary.ncells(), 0);
    }

    #[test]
    fn formal_sum_merges_relabelings() {
        let p1 = g(2, 3, &[&[0, 1], &[1, 2]]);
        let p2 = g(2, 3, &[&[0, 2], &[2, 1]]);
        let s = &FormalSum::from_graph(&p1).unwrap() - &FormalSum::from_graph(&p2).unwrap();
        assert!(s.is_zero());
        let mut m = FormalSum::zero(2);
        assert!(m.add_term(&g(1, 2, &[&[0]]), q(1)).is_ok());
        assert!(matches!(m.add_term(&p1, q(1)), Err(Error::MixedArity(1, 2))));
    }

    #[test]
    fn all_cells_counts() {
        assert_eq!(all_cells(2, 4).len(), 6);
        assert_eq!(all_cells(0, 3), vec![Cell(0)]);
        assert_eq!(all_cells(3, 2).len(), 0);
        let cs = all_cells(3, 5);
        assert_eq!(cs.len(), 10);
        assert!(cs.windows(2).all(|w| w[0] < w[1]));
    }
}
