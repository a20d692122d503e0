//! Flag vectors.
//!
//! For an `i`-graph `G` on `N` vertices,
//! `f(G) = Σ_σ f'(L_1) ⊗ … ⊗ f'(L_N)` over all vertex orderings `σ`, where
//! `L_l` is the link of the `l`-th removed vertex and `f'` is a link
//! contribution rule. Orderings factor through the first removed vertex,
//! so `f(G[S]) = Σ_{v∈S} f'(link(G[S], v)) ⊗ f(G[S∖v])`, evaluated over
//! vertex subsets.
//!
//! Two rules are provided. [`ClosedForm`] uses fixed letters: `a + m·b` for
//! 1-graph links with `m` cells, and `a + e·b + t·c` for 2-graph links with
//! `e` edges and `t` pairs of edges sharing a vertex. [`GenericRule`]
//! projects the flag vector of the link into the quotient of the link flag
//! span by the disjoint-pair optional-cell relations, for any arity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::enumeration::{enumerate_graphs, one_manifolds};
use crate::error::{Error, Result};
use crate::hypergraph::{all_cells, Cell, FormalSum, Hypergraph};
use crate::limits::Limits;
use crate::linalg::{solve, Echelon, QMatrix, Solution};
use crate::rational::{format_rational, Q};

pub const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// Rational coefficients on words of a fixed length; letter `k` of the
/// alphabet is stored as the index `k` and printed as the `k`-th letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordVector {
    length: usize,
    letters: usize,
    terms: BTreeMap<Vec<u8>, Q>,
}

impl WordVector {
    pub fn zero(length: usize, letters: usize) -> WordVector {
        WordVector {
            length,
            letters,
            terms: BTreeMap::new(),
        }
    }

    /// The word of length zero with coefficient one.
    pub fn empty_word(letters: usize) -> WordVector {
        WordVector {
            length: 0,
            letters,
            terms: BTreeMap::from([(Vec::new(), Q::one())]),
        }
    }

    pub fn from_terms(length: usize, letters: usize, terms: impl IntoIterator<Item = (Vec<u8>, Q)>) -> Result<WordVector> {
        if letters > LETTERS.len() {
            return Err(Error::TooLarge {
                what: "alphabet size",
                size: letters as u64,
                limit: LETTERS.len() as u64,
            });
        }
        let mut v = WordVector::zero(length, letters);
        for (w, c) in terms {
            if w.len() != length {
                return Err(Error::MixedWordLengths(length, w.len()));
            }
            if w.iter().any(|&l| l as usize >= letters) {
                return Err(Error::DimensionMismatch(format!("letter outside an alphabet of {letters}")));
            }
            v.add_to(w, c);
        }
        Ok(v)
    }

    /// Parses words written with the letters `a, b, c, ...`.
    pub fn parse_word(word: &str) -> Option<Vec<u8>> {
        word.bytes()
            .map(|b| LETTERS.iter().position(|&l| l == b).map(|i| i as u8))
            .collect()
    }

    pub fn format_word(word: &[u8]) -> String {
        word.iter().map(|&l| LETTERS[l as usize] as char).collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn alphabet(&self) -> Vec<char> {
        LETTERS[..self.letters].iter().map(|&b| b as char).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Q)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &str) -> Q {
        WordVector::parse_word(word)
            .and_then(|w| self.terms.get(&w).cloned())
            .unwrap_or_else(Q::zero)
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    fn add_to(&mut self, word: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self + k·other`.
    pub fn add_scaled(&mut self, k: &Q, other: &WordVector) -> Result<()> {
        if self.length != other.length {
            return Err(Error::MixedWordLengths(self.length, other.length));
        }
        self.letters = self.letters.max(other.letters);
        if k.is_zero() {
            return Ok(());
        }
        for (w, c) in &other.terms {
            self.add_to(w.clone(), k * c);
        }
        Ok(())
    }

    pub fn scale(&self, k: &Q) -> WordVector {
        let mut out = WordVector::zero(self.length, self.letters);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), k * c)).collect();
        }
        out
    }

    /// `(Σ_l x_l·letter_l) ⊗ self`.
    pub fn prepend(&self, x: &[Q]) -> WordVector {
        let mut out = WordVector::zero(self.length + 1, self.letters.max(x.len()));
        for (l, xl) in x.iter().enumerate() {
            if xl.is_zero() {
                continue;
            }
            for (w, c) in &self.terms {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(l as u8);
                word.extend_from_slice(w);
                out.add_to(word, xl * c);
            }
        }
        out
    }
}

impl fmt::Display for WordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c < &Q::zero() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let word = if w.is_empty() { "1".to_string() } else { WordVector::format_word(w) };
            if mag.is_one() {
                write!(f, "{word}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{word}")?;
            } else {
                write!(f, "({mag}){word}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordVector[{}]({self})", self.length)
    }
}

/// A link contribution `f'`: coordinates for the link removed at one step.
pub trait LinkRule: Send + Sync {
    /// Alphabet size of flag vectors of `arity`-graphs.
    fn letters(&self, arity: usize) -> Result<usize>;

    fn contribution(&self, link: &Hypergraph) -> Result<Vec<Q>>;
}

fn atom(link: &Hypergraph) -> Vec<Q> {
    if link.ncells() == 0 {
        vec![Q::one(), Q::zero()]
    } else {
        vec![Q::zero(), Q::one()]
    }
}

fn int(n: usize) -> Q {
    Q::from_integer(n.into())
}

/// Number of pairs of cells sharing an `(arity-1)`-face. For 2-graphs this is
/// the number of pairs of edges with a common vertex.
pub fn adjacent_pairs(g: &Hypergraph) -> usize {
    let cells: Vec<Cell> = g.cells().collect();
    let mut t = 0;
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if (a.0 & b.0).count_ones() as usize + 1 == g.arity() {
                t += 1;
            }
        }
    }
    t
}

/// Fixed coordinates: `[a]`/`[b]` atoms for 0-graph links, `a + m·b` for
/// 1-graph links, `a + e·b + t·c` for 2-graph links, and `a` for a link on
/// no vertices.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForm;

impl LinkRule for ClosedForm {
    fn letters(&self, arity: usize) -> Result<usize> {
        match arity {
            0..=2 => Ok(2),
            3 => Ok(3),
            other => Err(Error::NoClosedForm(other - 1)),
        }
    }

    fn contribution(&self, link: &Hypergraph) -> Result<Vec<Q>> {
        match link.arity() {
            0 => Ok(atom(link)),
            _ if link.nvertices() == 0 => Ok(vec![Q::one()]),
            1 => Ok(vec![Q::one(), int(link.ncells())]),
            2 => Ok(vec![Q::one(), int(link.ncells()), int(adjacent_pairs(link))]),
            other => Err(Error::NoClosedForm(other)),
        }
    }
}

/// Projects the link's own flag vector into a precomputed [`QuotientBasis`].
pub struct GenericRule {
    bases: HashMap<(usize, usize), Arc<QuotientBasis>>,
    cache: RwLock<HashMap<Hypergraph, Vec<Q>>>,
}

impl GenericRule {
    pub fn new() -> GenericRule {
        GenericRule {
            bases: HashMap::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn insert_basis(&mut self, basis: QuotientBasis) {
        self.bases.insert((basis.arity, basis.nvertices), Arc::new(basis));
        self.cache.write().unwrap().clear();
    }

    pub fn basis(&self, arity: usize, nvertices: usize) -> Option<&QuotientBasis> {
        self.bases.get(&(arity, nvertices)).map(|b| b.as_ref())
    }

    /// Builds every quotient basis needed for flag vectors of `arity`-graphs
    /// on at most `max_vertices` vertices, lowest link arity first.
    pub fn build(arity: usize, max_vertices: usize, limits: &Limits) -> Result<GenericRule> {
        let mut rule = GenericRule::new();
        for link_arity in 1..arity {
            for k in 0..max_vertices {
                let basis = {
                    let engine = FlagEngine::borrowed(&rule, *limits);
                    quotient_basis(link_arity, k, &engine)?
                };
                rule.insert_basis(basis);
            }
        }
        Ok(rule)
    }
}

impl Default for GenericRule {
    fn default() -> Self {
        GenericRule::new()
    }
}

impl LinkRule for GenericRule {
    fn letters(&self, arity: usize) -> Result<usize> {
        if arity <= 1 {
            return Ok(2);
        }
        Ok(self
            .bases
            .values()
            .filter(|b| b.arity == arity - 1)
            .map(|b| b.dim())
            .max()
            .unwrap_or(1))
    }

    fn contribution(&self, link: &Hypergraph) -> Result<Vec<Q>> {
        if link.arity() == 0 {
            return Ok(atom(link));
        }
        let basis = self.basis(link.arity(), link.nvertices()).ok_or(Error::MissingQuotientBasis {
            arity: link.arity(),
            nvertices: link.nvertices(),
        })?;
        let key = link.canonical()?;
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let f = subset_dp(self, &key)?;
        let coords = basis.project(&f)?;
        self.cache.write().unwrap().insert(key, coords.clone());
        Ok(coords)
    }
}

/// The subset recursion, with no caching across graphs.
fn subset_dp(rule: &dyn LinkRule, g: &Hypergraph) -> Result<WordVector> {
    let letters = rule.letters(g.arity())?;
    if g.arity() == 0 {
        // 0-graphs are the atoms themselves.
        return Ok(WordVector::empty_word(2).prepend(&atom(g)));
    }
    let n = g.nvertices();
    let full = (1u64 << n) - 1;
    let mut layer: HashMap<u32, WordVector> = HashMap::from([(0, WordVector::empty_word(letters))]);
    for size in 1..=n {
        let mut next = HashMap::new();
        for mask in (0..=full).map(|m| m as u32).filter(|m| m.count_ones() as usize == size) {
            let mut acc = WordVector::zero(size, letters);
            for v in Cell(mask).vertices() {
                let link = link_within(g, mask, v);
                let x = rule.contribution(&link)?;
                acc.add_scaled(&Q::one(), &layer[&(mask & !(1 << v))].prepend(&x))?;
            }
            next.insert(mask, acc);
        }
        layer = next;
    }
    Ok(layer.remove(&(full as u32)).expect("full vertex set computed"))
}

/// Link at `v` of the subgraph induced on `support`, renumbered to `0..|support|-1`.
fn link_within(g: &Hypergraph, support: u32, v: usize) -> Hypergraph {
    let rest = support & !(1 << v);
    let cells = g
        .cells()
        .filter(|c| c.0 & !support == 0 && c.contains(v))
        .map(|c| Cell(c.0 & !(1 << v)).compress(rest))
        .collect();
    Hypergraph::from_cells(g.arity() - 1, rest.count_ones() as usize, cells)
}

/// Graphs up to this size are memoized by canonical form.
const MEMO_MAX_VERTICES: usize = 7;

enum RuleRef<'a, R> {
    Owned(R),
    Borrowed(&'a R),
}

/// Flag vectors under a link rule, memoized by canonical form.
pub struct FlagEngine<'a, R: LinkRule> {
    rule: RuleRef<'a, R>,
    limits: Limits,
    memo: RwLock<HashMap<Hypergraph, WordVector>>,
}

impl FlagEngine<'static, ClosedForm> {
    pub fn closed_form(limits: Limits) -> Self {
        FlagEngine::new(ClosedForm, limits)
    }
}

impl<'a, R: LinkRule> FlagEngine<'a, R> {
    pub fn new(rule: R, limits: Limits) -> Self {
        FlagEngine {
            rule: RuleRef::Owned(rule),
            limits,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn borrowed(rule: &'a R, limits: Limits) -> Self {
        FlagEngine {
            rule: RuleRef::Borrowed(rule),
            limits,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn rule(&self) -> &R {
        match &self.rule {
            RuleRef::Owned(r) => r,
            RuleRef::Borrowed(r) => r,
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn flag_vector(&self, g: &Hypergraph) -> Result<WordVector> {
        self.limits.check_vertices(g.nvertices())?;
        if g.nvertices() > MEMO_MAX_VERTICES {
            return subset_dp(self.rule(), g);
        }
        let key = g.canonical()?;
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let f = subset_dp(self.rule(), &key)?;
        self.memo.write().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// `f(Σ λ_j G_j) = Σ λ_j f(G_j)`; every term must have the same vertex count.
    pub fn flag_of_sum(&self, s: &FormalSum) -> Result<WordVector> {
        let mut acc: Option<WordVector> = None;
        for (g, c) in s.terms() {
            let f = self.flag_vector(g)?;
            match acc.as_mut() {
                None => acc = Some(f.scale(c)),
                Some(a) => a.add_scaled(c, &f)?,
            }
        }
        match acc {
            Some(a) => Ok(a),
            None => Ok(WordVector::zero(0, self.rule().letters(s.arity())?)),
        }
    }
}

/// Column layout for a set of word vectors: the sorted union of their supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordIndex {
    length: usize,
    words: Vec<Vec<u8>>,
    position: HashMap<Vec<u8>, usize>,
}

impl WordIndex {
    pub fn new<'v>(vectors: impl IntoIterator<Item = &'v WordVector>) -> Result<WordIndex> {
        let mut length = None;
        let mut words = std::collections::BTreeSet::new();
        for v in vectors {
            match length {
                None => length = Some(v.length()),
                Some(l) if l != v.length() => return Err(Error::MixedWordLengths(l, v.length())),
                _ => {}
            }
            words.extend(v.terms.keys().cloned());
        }
        let words: Vec<Vec<u8>> = words.into_iter().collect();
        let position = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(WordIndex {
            length: length.unwrap_or(0),
            words,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Dense coordinates; errors if `v` uses a word outside the index.
    pub fn dense(&self, v: &WordVector) -> Result<Vec<Q>> {
        if v.length() != self.length && !v.is_zero() {
            return Err(Error::MixedWordLengths(self.length, v.length()));
        }
        let mut out = vec![Q::zero(); self.words.len()];
        for (w, c) in v.terms() {
            let i = self.position.get(w).ok_or_else(|| {
                Error::DimensionMismatch(format!("word {} outside the flag span", WordVector::format_word(w)))
            })?;
            out[*i] = c.clone();
        }
        Ok(out)
    }

    pub fn sparse(&self, x: &[Q], letters: usize) -> WordVector {
        let mut v = WordVector::zero(self.length, letters);
        for (w, c) in self.words.iter().zip(x) {
            v.add_to(w.clone(), c.clone());
        }
        v
    }
}

/// Flag vectors of `arity`-graphs on `nvertices` vertices modulo the
/// flag vectors of graphs with a disjoint pair of optional cells.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    pub arity: usize,
    pub nvertices: usize,
    index: WordIndex,
    letters: usize,
    span: Echelon,
    relations: Echelon,
    complement: Echelon,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn span_dim(&self) -> usize {
        self.span.dim()
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.dim()
    }

    pub fn span_basis(&self) -> Vec<WordVector> {
        self.span.rows().iter().map(|r| self.index.sparse(r, self.letters)).collect()
    }

    pub fn relation_basis(&self) -> Vec<WordVector> {
        self.relations.rows().iter().map(|r| self.index.sparse(r, self.letters)).collect()
    }

    /// Quotient coordinates of a vector in the flag span.
    pub fn project(&self, f: &WordVector) -> Result<Vec<Q>> {
        let reduced = self.relations.reduce(&self.index.dense(f)?);
        self.complement
            .coordinates(&reduced)
            .ok_or_else(|| Error::DimensionMismatch("vector outside the flag span".into()))
    }
}

/// Builds the quotient of the flag span of `arity`-graphs on `k` vertices.
///
/// Every disjoint pair of cells is equivalent to `{0..i-1}, {i..2i-1}` under
/// relabeling and `f` is label-invariant, so relations are generated with
/// that pair fixed and the base `A` ranging over all other cell sets.
pub fn quotient_basis<R: LinkRule>(arity: usize, k: usize, engine: &FlagEngine<'_, R>) -> Result<QuotientBasis> {
    let family = enumerate_graphs(arity, k, engine.limits())?;
    let span_vectors = family
        .members
        .iter()
        .map(|g| engine.flag_vector(g))
        .collect::<Result<Vec<_>>>()?;
    let letters = engine.rule().letters(arity)?;
    let index = WordIndex::new(&span_vectors)?;
    let mut span = Echelon::new(index.len());
    for v in &span_vectors {
        span.insert(&index.dense(v)?)?;
    }

    let mut relations = Echelon::new(index.len());
    if arity >= 1 && 2 * arity <= k {
        let c1 = Cell((1 << arity) - 1);
        let c2 = Cell(((1 << arity) - 1) << arity);
        let others: Vec<Cell> = all_cells(arity, k).into_iter().filter(|&c| c != c1 && c != c2).collect();
        let count = 1u64.checked_shl(others.len() as u32).filter(|&c| c <= engine.limits().max_labeled);
        let count = count.ok_or(Error::TooLarge {
            what: "optional-pair bases to enumerate",
            size: if others.len() >= 64 { u64::MAX } else { 1 << others.len() },
            limit: engine.limits().max_labeled,
        })?;
        let signs = [(true, true, 1), (true, false, -1), (false, true, -1), (false, false, 1)];
        for mask in 0..count {
            if relations.dim() == span.dim() {
                break;
            }
            let mut r = WordVector::zero(k, letters);
            for (with1, with2, sign) in signs {
                let mut cells: std::collections::BTreeSet<Cell> = others
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &c)| c)
                    .collect();
                if with1 {
                    cells.insert(c1);
                }
                if with2 {
                    cells.insert(c2);
                }
                let g = Hypergraph::from_cells(arity, k, cells);
                r.add_scaled(&Q::from_integer(sign.into()), &engine.flag_vector(&g)?)?;
            }
            relations.insert(&index.dense(&r)?)?;
        }
    }

    let mut complement = Echelon::new(index.len());
    for row in span.rows() {
        complement.insert(&relations.reduce(row))?;
    }
    Ok(QuotientBasis {
        arity,
        nvertices: k,
        index,
        letters,
        span,
        relations,
        complement,
    })
}

/// Rows are flag vectors of `graphs`, columns the union of their supports.
pub fn flag_matrix<R: LinkRule>(graphs: &[Hypergraph], engine: &FlagEngine<'_, R>) -> Result<(QMatrix, WordIndex)> {
    let vectors = graphs.iter().map(|g| engine.flag_vector(g)).collect::<Result<Vec<_>>>()?;
    let index = WordIndex::new(&vectors)?;
    let rows = vectors.iter().map(|v| index.dense(v)).collect::<Result<Vec<_>>>()?;
    Ok((QMatrix::from_rows(index.len(), rows)?, index))
}

/// Rank of the flag vectors of all `arity`-graphs on `n` vertices.
pub fn flag_span_rank<R: LinkRule>(arity: usize, n: usize, engine: &FlagEngine<'_, R>) -> Result<usize> {
    let family = enumerate_graphs(arity, n, engine.limits())?;
    Ok(flag_matrix(&family.members, engine)?.0.rank())
}

fn relations_among(graphs: &[Hypergraph], arity: usize, basis: Vec<Vec<Q>>) -> Result<Vec<FormalSum>> {
    basis
        .into_iter()
        .map(|y| FormalSum::from_terms(arity, graphs.iter().zip(y)))
        .collect()
}

/// Formal sums of isomorphism classes with zero flag vector, as an echelon
/// basis over the enumeration order.
pub fn flag_nullspace<R: LinkRule>(arity: usize, n: usize, engine: &FlagEngine<'_, R>) -> Result<Vec<FormalSum>> {
    let family = enumerate_graphs(arity, n, engine.limits())?;
    let (m, _) = flag_matrix(&family.members, engine)?;
    relations_among(&family.members, arity, m.left_kernel())
}

/// Intersection of the span of 1-manifold 2-graphs on `n` vertices with the
/// flag nullspace.
pub fn manifold_nullspace<R: LinkRule>(n: usize, engine: &FlagEngine<'_, R>) -> Result<Vec<FormalSum>> {
    let graphs: Vec<Hypergraph> = one_manifolds(n)?.into_iter().map(|(g, _)| g).collect();
    if graphs.is_empty() {
        return Ok(Vec::new());
    }
    let (m, _) = flag_matrix(&graphs, engine)?;
    relations_among(&graphs, 2, m.left_kernel())
}

/// Outcome of [`fit_linear_functional`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fit {
    /// Word coefficients `w` with `⟨w, f(G_j)⟩ = target_j`.
    Feasible(WordVector),
    /// Coefficients `y` over the family with `Σ y_j f(G_j) = 0` but
    /// `Σ y_j target_j ≠ 0`.
    Infeasible { certificate: Vec<Q> },
}

pub fn fit_linear_functional<R: LinkRule>(
    family: &[Hypergraph],
    targets: &[Q],
    engine: &FlagEngine<'_, R>,
) -> Result<Fit> {
    if family.len() != targets.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} graphs but {} targets",
            family.len(),
            targets.len()
        )));
    }
    if let Some(g) = family.iter().find(|g| g.nvertices() != family[0].nvertices()) {
        return Err(Error::MixedWordLengths(family[0].nvertices(), g.nvertices()));
    }
    let letters = family.first().map_or(Ok(2), |g| engine.rule().letters(g.arity()))?;
    let (m, index) = flag_matrix(family, engine)?;
    Ok(match solve(&m, targets)? {
        Solution::Feasible(w) => Fit::Feasible(index.sparse(&w, letters)),
        Solution::Infeasible { certificate } => Fit::Infeasible { certificate },
    })
}

/// `⟨w, f⟩` over matching words.
pub fn pair(w: &WordVector, f: &WordVector) -> Q {
    w.terms()
        .filter_map(|(word, c)| f.terms.get(word).map(|d| c * d))
        .fold(Q::zero(), |a, x| a + x)
}

/// Compares the closed-form functionals with the quotient built by
/// [`quotient_basis`]; both maps are evaluated on every isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub arity: usize,
    pub nvertices: usize,
    pub quotient_dim: usize,
    pub functional_rank: usize,
    pub joint_rank: usize,
}

impl DescentReport {
    /// The functionals are linear functions of the quotient class.
    pub fn descends(&self) -> bool {
        self.joint_rank == self.quotient_dim
    }

    /// ...and they determine it.
    pub fn spans(&self) -> bool {
        self.descends() && self.functional_rank == self.quotient_dim
    }
}

pub fn closed_form_descent<R: LinkRule>(arity: usize, k: usize, engine: &FlagEngine<'_, R>) -> Result<DescentReport> {
    let basis = quotient_basis(arity, k, engine)?;
    let family = enumerate_graphs(arity, k, engine.limits())?;
    let mut rows = Vec::new();
    let mut joint = Vec::new();
    let mut functional = Vec::new();
    for g in &family.members {
        let phi = basis.project(&engine.flag_vector(g)?)?;
        let closed = ClosedForm.contribution(g)?;
        joint.push(phi.iter().chain(&closed).cloned().collect());
        rows.push(phi);
        functional.push(closed);
    }
    let width = |v: &Vec<Vec<Q>>| v.first().map_or(0, |r| r.len());
    let functional_rank = QMatrix::from_rows(width(&functional), functional)?.rank();
    let joint_rank = QMatrix::from_rows(width(&joint), joint)?.rank();
    debug_assert_eq!(QMatrix::from_rows(width(&rows), rows)?.rank(), basis.dim());
    Ok(DescentReport {
        arity,
        nvertices: k,
        quotient_dim: basis.dim(),
        functional_rank,
        joint_rank,
    })
}

/// Exact text form used in reports: words and `p/q` coefficients.
pub fn word_terms(v: &WordVector) -> Vec<(String, String)> {
    v.terms()
        .map(|(w, c)| (WordVector::format_word(w), format_rational(c)))
        .collect()
}
