//! Shelling vectors: formal sums over all vertex orderings of the bracketed
//! sequence of link shelling vectors, bottoming out at the 0-graph atoms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::enumeration::enumerate_graphs;
use crate::error::{Error, Result};
use crate::flag::{WordIndex, WordVector};
use crate::hypergraph::{FormalSum, Hypergraph};
use crate::limits::Limits;
use crate::linalg::{solve, QMatrix, Solution};
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// The 0-graph with no cells.
    A,
    /// The 0-graph whose only cell is the empty set.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShellingExpr {
    Atom(Atom),
    /// One slot per vertex, in removal order.
    Bracket(Vec<ShellingSum>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ShellingSum {
    terms: BTreeMap<ShellingExpr, Q>,
}

impl ShellingSum {
    pub fn zero() -> ShellingSum {
        ShellingSum::default()
    }

    pub fn single(e: ShellingExpr) -> ShellingSum {
        ShellingSum {
            terms: BTreeMap::from([(e, Q::one())]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShellingExpr, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ShellingExpr) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Sum of the top-level coefficients.
    pub fn mass(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    pub fn add_term(&mut self, e: ShellingExpr, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, k: &Q, other: &ShellingSum) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), k * c);
        }
    }

    /// Puts `head` in front of every bracket of `self`.
    fn prepend(&self, head: &ShellingSum) -> ShellingSum {
        let mut out = ShellingSum::zero();
        for (e, c) in &self.terms {
            let ShellingExpr::Bracket(slots) = e else {
                unreachable!("shelling sums of graphs with arity > 0 are brackets");
            };
            let mut s = Vec::with_capacity(slots.len() + 1);
            s.push(head.clone());
            s.extend(slots.iter().cloned());
            out.add_term(ShellingExpr::Bracket(s), c.clone());
        }
        out
    }

    /// Expands every bracket multilinearly, so each slot holds a single
    /// monomial with coefficient one.
    pub fn expand_multilinear(&self) -> ShellingSum {
        let mut out = ShellingSum::zero();
        for (e, c) in &self.terms {
            out.add_scaled(c, &expand_expr(e));
        }
        out
    }

    /// Reads a shelling vector of a 1-graph as words in `a` and `b`.
    pub fn to_words(&self) -> Result<WordVector> {
        let mut terms = Vec::new();
        let mut length = None;
        for (e, c) in self.expand_multilinear().terms() {
            let ShellingExpr::Bracket(slots) = e else {
                return Err(Error::WrongArity { expected: 1, got: 0 });
            };
            let word = slots
                .iter()
                .map(|s| match s.terms.iter().next() {
                    Some((ShellingExpr::Atom(Atom::A), _)) => Ok(0u8),
                    Some((ShellingExpr::Atom(Atom::B), _)) => Ok(1u8),
                    _ => Err(Error::WrongArity { expected: 1, got: 2 }),
                })
                .collect::<Result<Vec<u8>>>()?;
            length = Some(word.len());
            terms.push((word, c.clone()));
        }
        WordVector::from_terms(length.unwrap_or(0), 2, terms)
    }
}

fn expand_expr(e: &ShellingExpr) -> ShellingSum {
    match e {
        ShellingExpr::Atom(_) => ShellingSum::single(e.clone()),
        ShellingExpr::Bracket(slots) => {
            // Product over slots of the expanded slot sums.
            let mut acc: Vec<(Vec<ShellingSum>, Q)> = vec![(Vec::new(), Q::one())];
            for slot in slots {
                let expanded = slot.expand_multilinear();
                let mut next = Vec::with_capacity(acc.len() * expanded.len());
                for (prefix, c) in &acc {
                    for (m, d) in expanded.terms() {
                        let mut p = prefix.clone();
                        p.push(ShellingSum::single(m.clone()));
                        next.push((p, c * d));
                    }
                }
                acc = next;
            }
            let mut out = ShellingSum::zero();
            for (slots, c) in acc {
                out.add_term(ShellingExpr::Bracket(slots), c);
            }
            out
        }
    }
}

impl fmt::Display for ShellingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShellingExpr::Atom(Atom::A) => write!(f, "a"),
            ShellingExpr::Atom(Atom::B) => write!(f, "b"),
            ShellingExpr::Bracket(slots) => {
                write!(f, "[")?;
                for (k, s) in slots.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    let bare = s.terms.len() == 1 && s.terms.values().all(One::is_one);
                    if bare {
                        write!(f, "{s}")?;
                    } else {
                        write!(f, "({s})")?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for ShellingSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Computes shelling vectors, memoized by canonical form.
pub struct ShellingEngine {
    limits: Limits,
    memo: RwLock<HashMap<Hypergraph, ShellingSum>>,
}

impl ShellingEngine {
    pub fn new(limits: Limits) -> ShellingEngine {
        ShellingEngine {
            limits,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn shelling_vector(&self, g: &Hypergraph) -> Result<ShellingSum> {
        if g.nvertices() > self.limits.max_shelling_vertices {
            return Err(Error::TooLarge {
                what: "vertex count for shelling vectors",
                size: g.nvertices() as u64,
                limit: self.limits.max_shelling_vertices as u64,
            });
        }
        if g.arity() == 0 {
            let a = if g.ncells() == 0 { Atom::A } else { Atom::B };
            return Ok(ShellingSum::single(ShellingExpr::Atom(a)));
        }
        if g.nvertices() == 0 {
            return Ok(ShellingSum::single(ShellingExpr::Bracket(Vec::new())));
        }
        let key = g.canonical()?;
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        // Orderings factor through the first removed vertex.
        let mut out = ShellingSum::zero();
        for v in 0..key.nvertices() {
            let head = self.shelling_vector(&key.link(v)?)?;
            let tail = self.shelling_vector(&key.delete_vertex(v)?)?;
            out.add_scaled(&Q::one(), &tail.prepend(&head));
        }
        self.memo.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn shelling_of_sum(&self, s: &FormalSum) -> Result<ShellingSum> {
        let mut out = ShellingSum::zero();
        for (g, c) in s.terms() {
            out.add_scaled(c, &self.shelling_vector(g)?);
        }
        Ok(out)
    }
}

pub fn shelling_vector(g: &Hypergraph) -> Result<ShellingSum> {
    ShellingEngine::new(Limits::default()).shelling_vector(g)
}

/// Outcome of [`kernel_element_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub n: usize,
    /// For `n = 2`: whether `f̃(G₀ - 2G₁ + G₂) = 2(a-b)(a-b)`.
    pub two_vertex_identity: Option<bool>,
    /// Dimension of the span of 1-graph shelling vectors on `n` vertices.
    pub span_dim: usize,
    /// Dimension of the kernel of `f'` restricted to that span.
    pub kernel_dim: usize,
    pub family_size: usize,
    pub family_rank: usize,
    pub all_in_span: bool,
    pub all_in_kernel: bool,
}

impl KernelReport {
    pub fn passes(&self) -> bool {
        self.two_vertex_identity != Some(false)
            && self.all_in_span
            && self.all_in_kernel
            && self.family_rank == self.kernel_dim
    }
}

/// `(Σ_l x_l·letter_l) ⊗ … ` over a list of per-position factors.
fn tensor(factors: &[[Q; 2]]) -> WordVector {
    let mut v = WordVector::empty_word(2);
    for f in factors.iter().rev() {
        v = v.prepend(f);
    }
    v
}

/// Symmetrized products with two `(a-b)` factors and the remaining `n-2`
/// factors drawn from `{a, b}`: one element per count `k` of `b` factors.
pub fn symmetric_kernel_family(n: usize) -> Vec<WordVector> {
    if n < 2 {
        return Vec::new();
    }
    let one = || Q::one();
    let a = [one(), Q::zero()];
    let b = [Q::zero(), one()];
    let diff = [one(), -one()];
    (0..=n - 2)
        .map(|k| {
            // Sum over distinct placements of the multiset {d, d, b^k, a^(n-2-k)}.
            let mut acc = WordVector::zero(n, 2);
            for dmask in 0u32..1 << n {
                if dmask.count_ones() != 2 {
                    continue;
                }
                for bmask in 0u32..1 << n {
                    if bmask & dmask != 0 || bmask.count_ones() as usize != k {
                        continue;
                    }
                    let factors: Vec<[Q; 2]> = (0..n)
                        .map(|p| {
                            if dmask >> p & 1 == 1 {
                                diff.clone()
                            } else if bmask >> p & 1 == 1 {
                                b.clone()
                            } else {
                                a.clone()
                            }
                        })
                        .collect();
                    acc.add_scaled(&Q::one(), &tensor(&factors)).expect("equal lengths");
                }
            }
            acc
        })
        .collect()
}

/// Checks that the symmetric products with two `(a-b)` factors lie in the
/// span of 1-graph shelling vectors, are killed by `f'G = a + m·b`, and
/// span that kernel.
pub fn kernel_element_check(n: usize, limits: &Limits) -> Result<KernelReport> {
    if n > 8 {
        return Err(Error::TooLarge {
            what: "vertex count for the kernel check",
            size: n as u64,
            limit: 8,
        });
    }
    let engine = ShellingEngine::new(Limits {
        max_shelling_vertices: limits.max_shelling_vertices.max(n),
        ..*limits
    });
    let graphs: Vec<Hypergraph> = (0..=n)
        .map(|m| Hypergraph::new(1, n, (0..m).map(|v| [v])))
        .collect::<Result<_>>()?;
    let span: Vec<WordVector> = graphs
        .iter()
        .map(|g| engine.shelling_vector(g)?.to_words())
        .collect::<Result<_>>()?;

    let two_vertex_identity = if n == 2 {
        let mut s = FormalSum::from_graph(&graphs[0])?;
        s = s.checked_add(&FormalSum::from_graph(&graphs[1])?.scale(&Q::from_integer((-2).into())))?;
        s = s.checked_add(&FormalSum::from_graph(&graphs[2])?)?;
        let lhs = engine.shelling_of_sum(&s)?.to_words()?;
        let two = Q::from_integer(2.into());
        let rhs = tensor(&[[Q::one(), -Q::one()], [Q::one(), -Q::one()]]).scale(&two);
        Some(lhs == rhs)
    } else {
        None
    };

    let family = symmetric_kernel_family(n);
    let index = WordIndex::new(span.iter().chain(&family))?;
    let rows = span.iter().map(|v| index.dense(v)).collect::<Result<Vec<_>>>()?;
    let span_matrix = QMatrix::from_rows(index.len(), rows)?;
    let span_dim = span_matrix.rank();
    // f' on the span: f̃(G_m) ↦ (1, m).
    let f_prime = QMatrix::from_rows(
        2,
        (0..=n).map(|m| vec![Q::one(), Q::from_integer(m.into())]),
    )?;
    let kernel_dim = span_dim - f_prime.rank();

    let transpose = span_matrix.transpose();
    let mut all_in_span = true;
    let mut all_in_kernel = true;
    for t in &family {
        match solve(&transpose, &index.dense(t)?)? {
            Solution::Feasible(lambda) => {
                let image = f_prime.transpose().mul_vec(&lambda)?;
                all_in_kernel &= image.iter().all(Zero::is_zero);
            }
            Solution::Infeasible { .. } => {
                all_in_span = false;
                all_in_kernel = false;
            }
        }
    }
    let family_rows = family.iter().map(|v| index.dense(v)).collect::<Result<Vec<_>>>()?;
    let family_rank = QMatrix::from_rows(index.len(), family_rows)?.rank();
    Ok(KernelReport {
        n,
        two_vertex_identity,
        span_dim,
        kernel_dim,
        family_size: family.len(),
        family_rank,
        all_in_span,
        all_in_kernel,
    })
}

/// Outcome of [`distinguishes_report`]; an experiment, not an assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishReport {
    pub arity: usize,
    pub n: usize,
    pub classes: usize,
    /// Pairs of class indices with equal shelling vectors.
    pub collisions: Vec<(usize, usize)>,
    /// Rank over nested bracket expressions.
    pub nested_rank: usize,
    /// Rank after multilinear expansion of the brackets.
    pub multilinear_rank: usize,
}

impl DistinguishReport {
    pub fn distinguishes_individuals(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn nested_independent(&self) -> bool {
        self.nested_rank == self.classes
    }

    pub fn multilinear_independent(&self) -> bool {
        self.multilinear_rank == self.classes
    }
}

fn expression_rank(vectors: &[ShellingSum]) -> Result<usize> {
    let mut index: BTreeMap<&ShellingExpr, usize> = BTreeMap::new();
    for v in vectors {
        for (e, _) in v.terms() {
            let next = index.len();
            index.entry(e).or_insert(next);
        }
    }
    let rows = vectors.iter().map(|v| {
        let mut row = vec![Q::zero(); index.len()];
        for (e, c) in v.terms() {
            row[index[e]] = c.clone();
        }
        row
    });
    Ok(QMatrix::from_rows(index.len(), rows)?.rank())
}

pub fn distinguishes_report(arity: usize, n: usize, limits: &Limits) -> Result<DistinguishReport> {
    let family = enumerate_graphs(arity, n, limits)?;
    let engine = ShellingEngine::new(*limits);
    let nested = family
        .members
        .iter()
        .map(|g| engine.shelling_vector(g))
        .collect::<Result<Vec<_>>>()?;
    let mut collisions = Vec::new();
    for i in 0..nested.len() {
        for j in i + 1..nested.len() {
            if nested[i] == nested[j] {
                collisions.push((i, j));
            }
        }
    }
    let expanded: Vec<ShellingSum> = nested.iter().map(|s| s.expand_multilinear()).collect();
    Ok(DistinguishReport {
        arity,
        n,
        classes: family.len(),
        collisions,
        nested_rank: expression_rank(&nested)?,
        multilinear_rank: expression_rank(&expanded)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn one_graph(n: usize, m: usize) -> Hypergraph {
        Hypergraph::new(1, n, (0..m).map(|v| [v])).unwrap()
    }

    #[test]
    fn two_vertex_one_graphs() {
        let shown: Vec<String> = (0..=2)
            .map(|m| shelling_vector(&one_graph(2, m)).unwrap().to_string())
            .collect();
        assert_eq!(shown, ["2*[a,a]", "[a,b] + [b,a]", "2*[b,b]"]);
    }

    #[test]
    fn k2_nested_brackets() {
        let s = shelling_vector(&Hypergraph::complete(2, 2)).unwrap();
        assert_eq!(s.to_string(), "2*[[b],[]]");
        assert_eq!(s.mass(), q(2));
    }

    #[test]
    fn atoms_and_empty_brackets() {
        assert_eq!(shelling_vector(&Hypergraph::zero_graph(true, 3)).unwrap().to_string(), "b");
        assert_eq!(shelling_vector(&Hypergraph::empty(2, 0)).unwrap().to_string(), "[]");
    }

    #[test]
    fn mass_is_factorial() {
        let g = Hypergraph::new(2, 4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        assert_eq!(shelling_vector(&g).unwrap().mass(), q(24));
        let h = Hypergraph::new(3, 4, [[0, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(shelling_vector(&h).unwrap().mass(), q(24));
    }

    #[test]
    fn multilinear_expansion_of_a_sum_slot() {
        // A path on 3 vertices: the first link from an end vertex is a
        // 1-graph with one selected vertex out of two, whose own shelling
        // vector has two terms.
        let g = Hypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        let s = shelling_vector(&g).unwrap();
        let e = s.expand_multilinear();
        assert!(e.len() >= s.len());
        // Mass after expansion is the product of slot masses: 2!·1!·0! per ordering.
        assert_eq!(e.mass(), q(12));
    }

    #[test]
    fn budget() {
        let e = ShellingEngine::new(Limits::default());
        assert!(matches!(e.shelling_vector(&Hypergraph::empty(2, 8)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn kernel_check_small() {
        let r = kernel_element_check(2, &Limits::default()).unwrap();
        assert_eq!(r.two_vertex_identity, Some(true));
        assert_eq!((r.span_dim, r.kernel_dim, r.family_rank), (3, 1, 1));
        assert!(r.passes());
        let r3 = kernel_element_check(3, &Limits::default()).unwrap();
        assert_eq!((r3.kernel_dim, r3.family_size), (2, 2));
        assert!(r3.passes());
    }

    #[test]
    fn two_vertex_symmetric_product() {
        let fam = symmetric_kernel_family(2);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].to_string(), "aa - ab - ba + bb");
    }
}
