//! Alphabets, label sets, the labeling map and its inverse.
//!
//! A label set over `Σ_q` marks every position of a word where one of its
//! labels starts. For sets of length-two labels the unlabeled pairs form the
//! *zero graph*; when that graph has at most one walk of each length between
//! any two vertices, a labeling framed by known flank symbols determines the
//! word uniquely, and [`invert_labeling`] recovers it.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{all_words, checked_word_count};

/// DNA letters in symbol order: `A=0, C=1, G=2, T=3`.
pub const DNA_LETTERS: [char; 4] = ['A', 'C', 'G', 'T'];

/// The ten length-two labels that suffice to reconstruct DNA from its labeling.
pub const MINIMAL_DNA_LABELS: [&str; 10] =
    ["AC", "CA", "GA", "GC", "GG", "GT", "TA", "TC", "TG", "TT"];

/// Default cap on exhaustive enumerations (`4^10` words).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

const MAX_Q: usize = 15;

/// The alphabet `Σ_q = {0, .., q-1}`.
///
/// Alphabets of size at most four render with DNA letters; larger ones use
/// base-36 digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    q: u8,
}

impl Alphabet {
    pub fn new(q: usize) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be in 2..={MAX_Q}, got {q}"
            )));
        }
        Ok(Self { q: q as u8 })
    }

    pub const fn dna() -> Self {
        Self { q: 4 }
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn check_symbol(&self, symbol: u8) -> Result<()> {
        if symbol < self.q {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                symbol,
                size: self.size(),
            })
        }
    }

    pub fn check(&self, word: &[u8]) -> Result<()> {
        word.iter().try_for_each(|&s| self.check_symbol(s))
    }

    pub fn symbol_char(&self, symbol: u8) -> char {
        if self.q <= 4 {
            DNA_LETTERS[symbol as usize]
        } else {
            char::from_digit(symbol as u32, 36).unwrap_or('?')
        }
    }

    pub fn parse_symbol(&self, c: char) -> Result<u8> {
        let symbol = if self.q <= 4 {
            DNA_LETTERS.iter().position(|&l| l == c).map(|p| p as u8)
        } else {
            c.to_digit(36).map(|d| d as u8)
        };
        match symbol {
            Some(s) if s < self.q => Ok(s),
            _ => Err(Error::Parse(format!(
                "'{c}' is not a symbol of the {}-ary alphabet",
                self.q
            ))),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Vec<u8>> {
        text.chars().map(|c| self.parse_symbol(c)).collect()
    }

    pub fn render(&self, word: &[u8]) -> String {
        word.iter().map(|&s| self.symbol_char(s)).collect()
    }
}

/// Renders a labeling word as base-36 digits (`0`-`9`, then `a` for 10, ...).
pub fn render_labeling(word: &[u8]) -> String {
    word.iter()
        .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}

/// Parses a labeling word written as base-36 digits.
pub fn parse_labeling(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            c.to_digit(36)
                .filter(|_| !c.is_ascii_uppercase())
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("'{c}' is not a labeling digit")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelSetKind {
    /// The ten-label DNA set [`MINIMAL_DNA_LABELS`].
    MinimalDna,
    /// Every pair over `Σ_q`; labelings use pair-codes `q·a + b`.
    AllLabels,
    Custom,
}

/// An ordered, prefix-free set of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    alphabet: Alphabet,
    labels: Vec<Vec<u8>>,
    kind: LabelSetKind,
    /// For uniform length-two sets: labeling symbol of each pair, indexed `q·a + b`.
    pair_symbol: Option<Vec<u8>>,
    /// For uniform length-two sets: the pairs each labeling symbol admits.
    symbol_pairs: Option<Vec<Vec<(u8, u8)>>>,
}

impl LabelSet {
    /// The minimal DNA label set `{AC, CA, GA, GC, GG, GT, TA, TC, TG, TT}`.
    pub fn minimal_dna() -> Self {
        let labels = MINIMAL_DNA_LABELS
            .iter()
            .map(|l| Alphabet::dna().parse(l).expect("static label"))
            .collect();
        Self::build(Alphabet::dna(), labels, LabelSetKind::MinimalDna)
    }

    /// Shared instance of [`LabelSet::minimal_dna`].
    pub fn minimal_dna_static() -> &'static LabelSet {
        static SET: OnceLock<LabelSet> = OnceLock::new();
        SET.get_or_init(LabelSet::minimal_dna)
    }

    /// All `q²` length-two labels.
    pub fn all_labels(alphabet: Alphabet) -> Self {
        let q = alphabet.size() as u8;
        let labels = (0..q)
            .flat_map(|a| (0..q).map(move |b| vec![a, b]))
            .collect();
        Self::build(alphabet, labels, LabelSetKind::AllLabels)
    }

    /// A user-supplied set; labels are sorted lexicographically.
    pub fn custom(alphabet: Alphabet, mut labels: Vec<Vec<u8>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("label set is empty".into()));
        }
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidParameter("empty label".into()));
            }
            alphabet.check(label)?;
        }
        if labels.len() > u8::MAX as usize {
            return Err(Error::InvalidParameter("too many labels".into()));
        }
        labels.sort();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                if i != j && b.starts_with(a) {
                    return Err(Error::InvalidParameter(format!(
                        "label {} is a prefix of {}",
                        alphabet.render(a),
                        alphabet.render(b)
                    )));
                }
            }
        }
        Ok(Self::build(alphabet, labels, LabelSetKind::Custom))
    }

    /// Parses labels written in the alphabet's rendering, e.g. `["AC", "T"]`.
    pub fn from_strs(alphabet: Alphabet, labels: &[&str]) -> Result<Self> {
        let parsed = labels
            .iter()
            .map(|l| alphabet.parse(l))
            .collect::<Result<Vec<_>>>()?;
        Self::custom(alphabet, parsed)
    }

    fn build(alphabet: Alphabet, labels: Vec<Vec<u8>>, kind: LabelSetKind) -> Self {
        let q = alphabet.size();
        let (pair_symbol, symbol_pairs) = if labels.iter().all(|l| l.len() == 2) {
            let mut table = vec![0u8; q * q];
            if kind == LabelSetKind::AllLabels {
                for (code, slot) in table.iter_mut().enumerate() {
                    *slot = code as u8;
                }
            } else {
                for (i, l) in labels.iter().enumerate() {
                    table[l[0] as usize * q + l[1] as usize] = i as u8 + 1;
                }
            }
            let symbols = if kind == LabelSetKind::AllLabels {
                q * q
            } else {
                labels.len() + 1
            };
            let mut pairs = vec![Vec::new(); symbols];
            for a in 0..q {
                for b in 0..q {
                    pairs[table[a * q + b] as usize].push((a as u8, b as u8));
                }
            }
            (Some(table), Some(pairs))
        } else {
            (None, None)
        };
        Self {
            alphabet,
            labels,
            kind,
            pair_symbol,
            symbol_pairs,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn kind(&self) -> LabelSetKind {
        self.kind
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The 1-based label `α_index`.
    pub fn label(&self, index: usize) -> Option<&[u8]> {
        index
            .checked_sub(1)
            .and_then(|i| self.labels.get(i))
            .map(Vec::as_slice)
    }

    /// Size of the alphabet framed labelings live in: `q²` for the all-labels
    /// set, `|A| + 1` otherwise.
    pub fn labeling_alphabet_size(&self) -> usize {
        match self.kind {
            LabelSetKind::AllLabels => self.alphabet.size().pow(2),
            _ => self.labels.len() + 1,
        }
    }

    /// True when every label has length two.
    pub fn is_pairwise(&self) -> bool {
        self.pair_symbol.is_some()
    }

    fn require_pairwise(&self) -> Result<()> {
        if self.is_pairwise() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "operation needs a set of length-two labels".into(),
            ))
        }
    }

    /// Labeling symbol of the pair `(a, b)`; zero when the pair is unlabeled.
    ///
    /// Panics if the set is not pairwise or a symbol is out of range.
    pub fn pair_symbol(&self, a: u8, b: u8) -> u8 {
        let q = self.alphabet.size();
        self.pair_symbol.as_ref().expect("pairwise label set")[a as usize * q + b as usize]
    }

    /// Pairs admitted by a labeling symbol, or `None` if the symbol is out of range.
    pub fn pairs_for_symbol(&self, symbol: u8) -> Option<&[(u8, u8)]> {
        self.symbol_pairs
            .as_ref()
            .and_then(|p| p.get(symbol as usize))
            .map(Vec::as_slice)
    }

    /// Index of the label starting at `x[i..]`, if any.
    fn match_at(&self, x: &[u8], i: usize) -> u8 {
        self.labels
            .iter()
            .position(|l| x[i..].starts_with(l))
            .map_or(0, |j| j as u8 + 1)
    }
}

/// Known symbols placed before the first and after the last position of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FlankConvention {
    pub left: u8,
    pub right: u8,
}

impl FlankConvention {
    pub const fn new(left: u8, right: u8) -> Self {
        Self { left, right }
    }

    pub const fn uniform(symbol: u8) -> Self {
        Self::new(symbol, symbol)
    }

    fn check(&self, alphabet: Alphabet) -> Result<()> {
        alphabet.check_symbol(self.left)?;
        alphabet.check_symbol(self.right)
    }
}

impl Default for FlankConvention {
    fn default() -> Self {
        Self::uniform(0)
    }
}

/// Standalone labeling `L_A(x)`: position `i` carries the 1-based index of the
/// label starting there, or zero. Labels running past the end do not count, so
/// for length-two sets the last position is always zero.
///
/// This map always uses label indices, including for the all-labels set.
pub fn label_word(x: &[u8], set: &LabelSet) -> Result<Vec<u8>> {
    set.alphabet.check(x)?;
    Ok((0..x.len()).map(|i| set.match_at(x, i)).collect())
}

/// Framed labeling of `flanks.left · x · flanks.right`: one symbol per
/// adjacent pair, `|x| + 1` in total.
pub fn label_framed(x: &[u8], set: &LabelSet, flanks: FlankConvention) -> Result<Vec<u8>> {
    set.require_pairwise()?;
    set.alphabet.check(x)?;
    flanks.check(set.alphabet)?;
    let mut out = Vec::with_capacity(x.len() + 1);
    let mut prev = flanks.left;
    for &s in x.iter().chain(std::iter::once(&flanks.right)) {
        out.push(set.pair_symbol(prev, s));
        prev = s;
    }
    Ok(out)
}

const NO_PRED: u8 = u8::MAX;

/// Recovers the unique word whose framed labeling is `u`.
///
/// Runs a forward pass over the pair constraints of each labeling symbol,
/// counting completions (capped at two), then backtracks from the right flank.
pub fn invert_labeling(u: &[u8], set: &LabelSet, flanks: FlankConvention) -> Result<Vec<u8>> {
    set.require_pairwise()?;
    flanks.check(set.alphabet)?;
    if u.is_empty() {
        return Err(Error::InvalidLabeling(
            "framed labeling cannot be empty".into(),
        ));
    }
    let q = set.alphabet.size();
    let mut ways = vec![0u8; q];
    let mut next = vec![0u8; q];
    ways[flanks.left as usize] = 1;
    // preds[i*q + b]: a predecessor of symbol b after position i
    let mut preds = vec![NO_PRED; u.len() * q];
    for (i, &symbol) in u.iter().enumerate() {
        let pairs = set.pairs_for_symbol(symbol).ok_or_else(|| {
            Error::InvalidLabeling(format!(
                "symbol {symbol} at position {} is not a label",
                i + 1
            ))
        })?;
        next.fill(0);
        let pred = &mut preds[i * q..(i + 1) * q];
        for &(a, b) in pairs {
            let w = ways[a as usize];
            if w > 0 {
                next[b as usize] = (next[b as usize] + w).min(2);
                if pred[b as usize] == NO_PRED {
                    pred[b as usize] = a;
                }
            }
        }
        std::mem::swap(&mut ways, &mut next);
    }
    match ways[flanks.right as usize] {
        0 => Err(Error::InvalidLabeling(
            "no word is consistent with the labeling and flanks".into(),
        )),
        1 => {
            let mut x = vec![0u8; u.len() - 1];
            let mut cur = flanks.right;
            for i in (1..u.len()).rev() {
                cur = preds[i * q + cur as usize];
                x[i - 1] = cur;
            }
            Ok(x)
        }
        _ => Err(Error::AmbiguousLabeling),
    }
}

/// Minimal number of length-two labels over `Σ_q` reaching full labeling capacity.
pub fn phi(q: usize) -> Result<usize> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "q must be at least 2, got {q}"
        )));
    }
    let unlabeled = if q % 2 == 1 {
        (q + 1) * (q + 1) / 4
    } else {
        q * (q + 2) / 4
    };
    Ok(q * q - unlabeled)
}

/// Directed graph on the alphabet whose edges are the unlabeled pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroGraph {
    q: usize,
    adjacency: Vec<bool>,
}

impl ZeroGraph {
    pub fn of(set: &LabelSet) -> Result<Self> {
        set.require_pairwise()?;
        let q = set.alphabet.size();
        let mut adjacency = vec![false; q * q];
        if set.kind != LabelSetKind::AllLabels {
            for a in 0..q {
                for b in 0..q {
                    adjacency[a * q + b] = set.pair_symbol(a as u8, b as u8) == 0;
                }
            }
        }
        Ok(Self { q, adjacency })
    }

    pub fn from_edges(q: usize, edges: &[(u8, u8)]) -> Self {
        let mut adjacency = vec![false; q * q];
        for &(a, b) in edges {
            adjacency[a as usize * q + b as usize] = true;
        }
        Self { q, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.q
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.adjacency[a as usize * self.q + b as usize]
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        (0..self.q)
            .flat_map(|a| (0..self.q).map(move |b| (a as u8, b as u8)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }
}

/// True iff for every ordered vertex pair and every length `1..=max_len`
/// there is at most one walk of that length between them.
pub fn check_path_unique(graph: &ZeroGraph, max_len: usize) -> bool {
    let q = graph.q;
    let step: Vec<u8> = graph.adjacency.iter().map(|&e| e as u8).collect();
    let mut walks = step.clone();
    for len in 1..=max_len {
        if walks.iter().any(|&c| c > 1) {
            return false;
        }
        if len == max_len {
            break;
        }
        let mut next = vec![0u8; q * q];
        for u in 0..q {
            for w in 0..q {
                if walks[u * q + w] == 0 {
                    continue;
                }
                for v in 0..q {
                    if step[w * q + v] > 0 {
                        let slot = &mut next[u * q + v];
                        *slot = (*slot + walks[u * q + w]).min(2);
                    }
                }
            }
        }
        walks = next;
    }
    true
}

/// Number of distinct labelings of length-`n` words, the finite-`n` form of
/// labeling capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CapacityCount {
    pub count: u64,
    pub n: usize,
}

impl CapacityCount {
    /// `log2(count) / n`.
    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.count as f64).log2() / self.n as f64
    }
}

/// Counts distinct labelings over all of `Σ_q^n`. With `flanks = None` the
/// standalone labeling is used.
pub fn empirical_capacity(
    set: &LabelSet,
    n: usize,
    flanks: Option<FlankConvention>,
    cap: u64,
) -> Result<CapacityCount> {
    let q = set.alphabet.size();
    checked_word_count(q, n, cap)?;
    let mut seen = HashSet::new();
    for x in all_words(q, n) {
        let labeling = match flanks {
            Some(f) => label_framed(&x, set, f)?,
            None => label_word(&x, set)?,
        };
        seen.insert(labeling);
    }
    Ok(CapacityCount {
        count: seen.len() as u64,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna(s: &str) -> Vec<u8> {
        Alphabet::dna().parse(s).unwrap()
    }

    fn s_set() -> LabelSet {
        LabelSet::minimal_dna()
    }

    #[test]
    fn single_label_example() {
        let set = LabelSet::from_strs(Alphabet::dna(), &["AC"]).unwrap();
        let y = label_word(&dna("ACGTATAGACAC"), &set).unwrap();
        assert_eq!(render_labeling(&y), "100000001010");
    }

    #[test]
    fn mixed_length_examples() {
        let set = LabelSet::from_strs(Alphabet::dna(), &["A", "CC"]).unwrap();
        let y = label_word(&dna("TAGCCAACCCG"), &set).unwrap();
        assert_eq!(render_labeling(&y), "01020112200");

        let set = LabelSet::from_strs(Alphabet::dna(), &["T", "AC"]).unwrap();
        assert_eq!(set.label(1).unwrap(), dna("AC").as_slice());
        let y = label_word(&dna("ACGTATAGACAC"), &set).unwrap();
        assert_eq!(render_labeling(&y), "100202001010");
    }

    #[test]
    fn minimal_set_standalone() {
        assert_eq!(
            label_word(&dna("ACGT"), &s_set()).unwrap(),
            vec![1, 0, 6, 0]
        );
    }

    #[test]
    fn framed_examples() {
        let f = FlankConvention::default();
        assert_eq!(
            label_framed(&dna("ACGT"), &s_set(), f).unwrap(),
            vec![0, 1, 0, 6, 7]
        );
        assert_eq!(
            label_framed(&dna("AA"), &s_set(), f).unwrap(),
            vec![0, 0, 0]
        );
        let all = LabelSet::all_labels(Alphabet::dna());
        assert_eq!(label_framed(&dna("CT"), &all, f).unwrap(), vec![1, 7, 12]);
    }

    #[test]
    fn inversion_examples() {
        let f = FlankConvention::default();
        assert_eq!(
            invert_labeling(&[0, 1, 0, 6, 7], &s_set(), f).unwrap(),
            dna("ACGT")
        );
        assert_eq!(invert_labeling(&[0, 0, 0], &s_set(), f).unwrap(), dna("AA"));
        assert!(matches!(
            invert_labeling(&[1, 1], &s_set(), f),
            Err(Error::InvalidLabeling(_))
        ));
        assert!(matches!(
            invert_labeling(&[11, 0], &s_set(), f),
            Err(Error::InvalidLabeling(_))
        ));
        assert!(invert_labeling(&[], &s_set(), f).is_err());
    }

    #[test]
    fn ambiguous_custom_set_is_reported() {
        // With only AC labeled almost every pair is a zero-graph edge.
        let set = LabelSet::from_strs(Alphabet::dna(), &["AC"]).unwrap();
        assert_eq!(
            invert_labeling(&[0, 0, 0], &set, FlankConvention::default()),
            Err(Error::AmbiguousLabeling)
        );
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(4).unwrap(), 10);
        assert_eq!(phi(2).unwrap(), 2);
        assert_eq!(phi(5).unwrap(), 16);
        assert!(phi(1).is_err());
    }

    #[test]
    fn zero_graph_of_minimal_set() {
        let g = ZeroGraph::of(&s_set()).unwrap();
        let expected: Vec<(u8, u8)> = ["AA", "AG", "AT", "CC", "CG", "CT"]
            .iter()
            .map(|p| {
                let w = dna(p);
                (w[0], w[1])
            })
            .collect();
        assert_eq!(g.edges(), expected);
        assert!(check_path_unique(&g, 16));
        assert!(ZeroGraph::of(&LabelSet::all_labels(Alphabet::dna()))
            .unwrap()
            .edges()
            .is_empty());
    }

    #[test]
    fn path_uniqueness_examples() {
        let dense = ZeroGraph::from_edges(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(check_path_unique(&dense, 1));
        assert!(!check_path_unique(&dense, 2));
        assert!(check_path_unique(&ZeroGraph::from_edges(4, &[]), 10));
    }

    #[test]
    fn capacity_counts() {
        let f = Some(FlankConvention::default());
        assert_eq!(
            empirical_capacity(&s_set(), 4, f, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count,
            256
        );
        let single = LabelSet::from_strs(Alphabet::dna(), &["A"]).unwrap();
        assert_eq!(
            empirical_capacity(&single, 1, None, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count,
            2
        );
        let all = LabelSet::all_labels(Alphabet::dna());
        let c = empirical_capacity(&all, 2, f, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(c.count, 16);
        assert!((c.rate() - 2.0).abs() < 1e-12);
        assert!(empirical_capacity(&s_set(), 11, f, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn alphabet_checks() {
        assert!(label_word(&[4], &s_set()).is_err());
        assert!(Alphabet::new(1).is_err());
        assert!(LabelSet::from_strs(Alphabet::dna(), &["A", "AC"]).is_err());
        assert!(!LabelSet::from_strs(Alphabet::dna(), &["A", "CC"])
            .unwrap()
            .is_pairwise());
        assert!(label_framed(
            &dna("AC"),
            &LabelSet::from_strs(Alphabet::dna(), &["A"]).unwrap(),
            FlankConvention::default()
        )
        .is_err());
    }

    #[test]
    fn labeling_text_round_trip() {
        let u = vec![0, 1, 10, 15];
        assert_eq!(render_labeling(&u), "01af");
        assert_eq!(parse_labeling("01af").unwrap(), u);
        assert!(parse_labeling("01A").is_err());
    }
}
