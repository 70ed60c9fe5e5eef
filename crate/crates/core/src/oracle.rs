//! Ground truth: error balls, the disjoint-ball code check, exhaustive
//! decoder sweeps and a seeded channel simulator.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{
    e1_decode, e1_decode_exhaustive, e1_decode_fast, e1_encode, e2_decode, e2_decode_exhaustive,
    e2_decode_fast, e2_encode, lift_code, search_hamming_coset, search_tenengolts_labeling_code,
    AllLabelsCode, E1Layout, E2Layout,
};
use crate::error::{Error, Result};
use crate::labeling::{invert_labeling, label_framed, FlankConvention, LabelSet};
use crate::words::{all_words, checked_word_count};

/// Name of the generator behind [`simulate_channel`].
pub const RNG_ALGORITHM: &str = "ChaCha8";

/// Default bound on the number of words an error ball may hold.
pub const DEFAULT_BALL_CAP: usize = 1 << 22;

/// Error budget: substitutions, insertions, deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ErrorSpec {
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
}

impl ErrorSpec {
    pub const fn new(substitutions: usize, insertions: usize, deletions: usize) -> Self {
        Self {
            substitutions,
            insertions,
            deletions,
        }
    }

    pub fn total(&self) -> usize {
        self.substitutions + self.insertions + self.deletions
    }
}

impl fmt::Display for ErrorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.substitutions, self.insertions, self.deletions
        )
    }
}

impl FromStr for ErrorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [e1, e2, e3] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "error spec must look like e1,e2,e3, got {s:?}"
            )));
        };
        let num = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad error count {p:?} in {s:?}")))
        };
        Ok(Self::new(num(e1)?, num(e2)?, num(e3)?))
    }
}

/// Which corrupted words count as ball members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BallSemantics {
    /// Every word the channel can emit.
    #[default]
    Permissive,
    /// Only words that are themselves valid framed labelings.
    ValidOnly,
}

fn grow(
    layer: HashSet<Vec<u8>>,
    steps: usize,
    cap: usize,
    step: impl Fn(&[u8], &mut dyn FnMut(Vec<u8>)),
) -> Result<HashSet<Vec<u8>>> {
    let mut all = layer.clone();
    let mut frontier = layer;
    for _ in 0..steps {
        let mut next = HashSet::new();
        for w in &frontier {
            step(w, &mut |v| {
                if !all.contains(&v) {
                    next.insert(v);
                }
            });
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::BudgetExceeded {
                needed: all.len() as u128,
                cap: cap as u128,
            });
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(all)
}

/// Every word reachable from `u` by at most `e.deletions` deletions, then at
/// most `e.insertions` insertions, then at most `e.substitutions`
/// substitutions, over the labeling alphabet `0..sigma`. Any mixed error
/// pattern can be reordered this way without exceeding its budget.
pub fn error_ball(u: &[u8], e: ErrorSpec, sigma: usize, cap: usize) -> Result<HashSet<Vec<u8>>> {
    if u.len() < e.deletions {
        return Err(Error::InvalidParameter(format!(
            "cannot delete {} symbols from a word of length {}",
            e.deletions,
            u.len()
        )));
    }
    let start: HashSet<Vec<u8>> = std::iter::once(u.to_vec()).collect();
    let deleted = grow(start, e.deletions, cap, |w, push| {
        for i in 0..w.len() {
            let mut v = w.to_vec();
            v.remove(i);
            push(v);
        }
    })?;
    let inserted = grow(deleted, e.insertions, cap, |w, push| {
        for i in 0..=w.len() {
            for s in 0..sigma as u8 {
                let mut v = w.to_vec();
                v.insert(i, s);
                push(v);
            }
        }
    })?;
    grow(inserted, e.substitutions, cap, |w, push| {
        for i in 0..w.len() {
            for s in 0..sigma as u8 {
                if s != w[i] {
                    let mut v = w.to_vec();
                    v[i] = s;
                    push(v);
                }
            }
        }
    })
}

/// [`error_ball`] restricted to valid framed labelings under `set` and `flanks`.
pub fn error_ball_valid(
    u: &[u8],
    e: ErrorSpec,
    set: &LabelSet,
    flanks: FlankConvention,
    cap: usize,
) -> Result<HashSet<Vec<u8>>> {
    let mut ball = error_ball(u, e, set.labeling_alphabet_size(), cap)?;
    ball.retain(|w| invert_labeling(w, set, flanks).is_ok());
    Ok(ball)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Vec<u8>,
    pub second: Vec<u8>,
    pub output: Vec<u8>,
}

/// Violations beyond this many are counted but not stored.
pub const MAX_RECORDED_VIOLATIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub params: String,
    pub words_checked: u64,
    pub inputs_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub wall_time_ms: u128,
    pub passed: bool,
}

impl VerificationReport {
    fn finish(
        target: &str,
        params: String,
        words_checked: u64,
        inputs_checked: u64,
        mut violations: Vec<Violation>,
        started: Instant,
    ) -> Self {
        let violation_count = violations.len() as u64;
        violations.sort_by(|a, b| (&a.first, &a.output).cmp(&(&b.first, &b.output)));
        violations.truncate(MAX_RECORDED_VIOLATIONS);
        Self {
            target: target.to_string(),
            params,
            words_checked,
            inputs_checked,
            violation_count,
            violations,
            wall_time_ms: started.elapsed().as_millis(),
            passed: violation_count == 0,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} words={} inputs={} violations={} time_ms={} {}",
            self.target,
            self.params,
            self.words_checked,
            self.inputs_checked,
            self.violation_count,
            self.wall_time_ms,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Checks that the error balls of the framed labelings of `code` are pairwise
/// disjoint, by mapping every ball element to the first codeword reaching it.
pub fn is_labeling_code(
    code: &[Vec<u8>],
    set: &LabelSet,
    flanks: FlankConvention,
    e: ErrorSpec,
    semantics: BallSemantics,
    cap: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let balls: Vec<(usize, HashSet<Vec<u8>>)> = code
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let u = label_framed(x, set, flanks)?;
            let ball = match semantics {
                BallSemantics::Permissive => error_ball(&u, e, set.labeling_alphabet_size(), cap)?,
                BallSemantics::ValidOnly => error_ball_valid(&u, e, set, flanks, cap)?,
            };
            Ok((i, ball))
        })
        .collect::<Result<_>>()?;
    let mut owner: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut violations = Vec::new();
    let mut mass = 0u64;
    for (i, ball) in balls {
        mass += ball.len() as u64;
        for w in ball {
            match owner.get(&w) {
                Some(&j) if j != i => violations.push(Violation {
                    first: code[j].clone(),
                    second: code[i].clone(),
                    output: w,
                }),
                Some(_) => {}
                None => {
                    owner.insert(w, i);
                }
            }
        }
    }
    Ok(VerificationReport::finish(
        "labeling-code",
        format!("size={} errors={e} semantics={semantics:?}", code.len()),
        code.len() as u64,
        mass,
        violations,
        started,
    ))
}

/// Decoder targets for [`exhaustive_decoder_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    E1 { k: usize },
    E2 { k: usize },
    AllLabelsDel { q: usize, n: usize },
    Tenengolts { n: usize },
    Coset { n: usize },
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::E1 { .. } => "e1",
            Scheme::E2 { .. } => "e2",
            Scheme::AllLabelsDel { .. } => "all-labels-del",
            Scheme::Tenengolts { .. } => "tenengolts",
            Scheme::Coset { .. } => "coset",
        }
    }
}

fn indel_ball(u: &[u8], sigma: usize, cap: usize) -> Result<HashSet<Vec<u8>>> {
    let mut ball = error_ball(u, ErrorSpec::new(0, 0, 1), sigma, cap)?;
    ball.extend(error_ball(u, ErrorSpec::new(0, 1, 0), sigma, cap)?);
    Ok(ball)
}

/// Runs `decode` on every corruption of every codeword's labeling and
/// compares with the source word. `paths` returns `(fast, fallback)` results
/// which must agree with each other as well.
fn sweep<D, P>(
    target: &str,
    params: String,
    words: Vec<Vec<u8>>,
    labeling: impl Fn(&[u8]) -> Result<Vec<u8>> + Sync,
    ball: impl Fn(&[u8]) -> Result<HashSet<Vec<u8>>> + Sync,
    decode: D,
    paths: Option<P>,
) -> Result<VerificationReport>
where
    D: Fn(&[u8]) -> Result<Vec<u8>> + Sync,
    P: Fn(&[u8]) -> (Result<Vec<u8>>, Result<Vec<u8>>) + Sync,
{
    let started = Instant::now();
    let per_word: Vec<(u64, Vec<Violation>)> = words
        .par_iter()
        .map(|x| {
            let u = labeling(x)?;
            let mut bad = Vec::new();
            let ball = ball(&u)?;
            for y in &ball {
                let got = decode(y);
                let mut ok = got.as_ref() == Ok(x);
                if let Some(paths) = &paths {
                    let (fast, slow) = paths(y);
                    ok &= fast == slow && slow.as_ref() == Ok(x);
                }
                if !ok {
                    bad.push(Violation {
                        first: x.clone(),
                        second: got.unwrap_or_default(),
                        output: y.clone(),
                    });
                }
            }
            Ok((ball.len() as u64, bad))
        })
        .collect::<Result<_>>()?;
    let inputs = per_word.iter().map(|(n, _)| n).sum();
    let violations = per_word.into_iter().flat_map(|(_, v)| v).collect();
    Ok(VerificationReport::finish(
        target,
        params,
        words.len() as u64,
        inputs,
        violations,
        started,
    ))
}

type NoPaths = fn(&[u8]) -> (Result<Vec<u8>>, Result<Vec<u8>>);

/// Decodes every correctable corruption of every codeword of `scheme`.
/// For schemes with a fast path and a fallback, both must return the source.
pub fn exhaustive_decoder_check(scheme: Scheme, cap: u64) -> Result<VerificationReport> {
    let minimal = LabelSet::minimal_dna_static();
    let framed = |x: &[u8]| label_framed(x, minimal, FlankConvention::default());
    let ball_cap = DEFAULT_BALL_CAP;
    match scheme {
        Scheme::E1 { k } => {
            let layout = E1Layout::new(k)?;
            checked_word_count(4, k, cap)?;
            sweep(
                "e1",
                format!("k={k} n={}", layout.n),
                all_words(4, k).collect(),
                |x| framed(&e1_encode(x)?),
                |u| indel_ball(u, 11, ball_cap),
                |y| e1_decode(y, layout),
                Some(|y: &[u8]| (e1_decode_fast(y, layout), e1_decode_exhaustive(y, layout))),
            )
        }
        Scheme::E2 { k } => {
            let layout = E2Layout::new(k)?;
            checked_word_count(4, k, cap)?;
            sweep(
                "e2",
                format!("k={k} n={}", layout.n),
                all_words(4, k).collect(),
                |x| framed(&e2_encode(x)?),
                |u| error_ball(u, ErrorSpec::new(1, 0, 0), 11, ball_cap),
                |y| e2_decode(y, layout),
                Some(|y: &[u8]| (e2_decode_fast(y, layout), e2_decode_exhaustive(y, layout))),
            )
        }
        Scheme::AllLabelsDel { q, n } => {
            let code = AllLabelsCode::build(q, n, 0)?;
            let words = code.codebook(cap)?;
            sweep(
                "all-labels-del",
                format!("q={q} n={n} x_end={} size={}", code.flanks.right, code.size),
                words,
                |x| code.labeling(x),
                |u| indel_ball(u, q * q, ball_cap),
                |y| code.decode(y),
                Some(|y: &[u8]| (code.decode_fast(y), code.decode_exhaustive(y))),
            )
        }
        Scheme::Tenengolts { n } => {
            let code = search_tenengolts_labeling_code(n, minimal, cap)?;
            let words: Vec<Vec<u8>> = all_words(4, n).filter(|x| code.contains(x)).collect();
            sweep::<_, NoPaths>(
                "tenengolts",
                format!("n={n} a={} b={} size={}", code.a, code.b, code.size),
                words,
                framed,
                |u| indel_ball(u, 11, ball_cap),
                |y| code.decode(y),
                None,
            )
        }
        Scheme::Coset { n } => {
            let code = search_hamming_coset(n, minimal, 11, cap)?;
            let words: Vec<Vec<u8>> = all_words(4, n).filter(|x| code.contains(x)).collect();
            sweep::<_, NoPaths>(
                "coset",
                format!("n={n} syndrome={:?} size={}", code.syndrome, code.size),
                words,
                framed,
                |u| error_ball(u, ErrorSpec::new(1, 0, 0), 11, ball_cap),
                |y| code.decode(y),
                None,
            )
        }
    }
}

/// Codebook of a scheme's data words mapped to codewords, for use with
/// [`is_labeling_code`].
pub fn scheme_codebook(
    scheme: Scheme,
    cap: u64,
) -> Result<(Vec<Vec<u8>>, LabelSet, FlankConvention)> {
    let minimal = LabelSet::minimal_dna();
    let flanks = FlankConvention::default();
    Ok(match scheme {
        Scheme::E1 { k } => {
            checked_word_count(4, k, cap)?;
            let book = all_words(4, k)
                .map(|x| e1_encode(&x))
                .collect::<Result<_>>()?;
            (book, minimal, flanks)
        }
        Scheme::E2 { k } => {
            checked_word_count(4, k, cap)?;
            let book = all_words(4, k)
                .map(|x| e2_encode(&x))
                .collect::<Result<_>>()?;
            (book, minimal, flanks)
        }
        Scheme::AllLabelsDel { q, n } => {
            let code = AllLabelsCode::build(q, n, 0)?;
            (code.codebook(cap)?, code.label_set(), code.flanks)
        }
        Scheme::Tenengolts { n } => {
            let code = search_tenengolts_labeling_code(n, &minimal, cap)?;
            let book = all_words(4, n).filter(|x| code.contains(x)).collect();
            (book, minimal, flanks)
        }
        Scheme::Coset { n } => {
            let code = search_hamming_coset(n, &minimal, 11, cap)?;
            let labelings: HashSet<Vec<u8>> = all_words(4, n)
                .filter(|x| code.contains(x))
                .map(|x| framed_or_panic(&x, &minimal))
                .collect();
            (lift_code(&labelings, &minimal, flanks), minimal, flanks)
        }
    })
}

fn framed_or_panic(x: &[u8], set: &LabelSet) -> Vec<u8> {
    label_framed(x, set, FlankConvention::default()).expect("word over the set's alphabet")
}

/// Generator for line `stream` of a run seeded with `seed`.
pub fn channel_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Applies exactly `e.deletions` deletions, then `e.insertions` insertions,
/// then `e.substitutions` substitutions at distinct positions, each chosen
/// uniformly over the labeling alphabet `0..sigma`.
pub fn simulate_channel_with<R: Rng>(
    u: &[u8],
    e: ErrorSpec,
    sigma: usize,
    rng: &mut R,
) -> Result<Vec<u8>> {
    if sigma < 2 {
        return Err(Error::InvalidParameter(
            "alphabet needs at least two symbols".into(),
        ));
    }
    if u.len() < e.deletions {
        return Err(Error::InvalidParameter(format!(
            "cannot delete {} symbols from a word of length {}",
            e.deletions,
            u.len()
        )));
    }
    let mut w = u.to_vec();
    for _ in 0..e.deletions {
        let i = rng.gen_range(0..w.len());
        w.remove(i);
    }
    for _ in 0..e.insertions {
        let i = rng.gen_range(0..=w.len());
        w.insert(i, rng.gen_range(0..sigma) as u8);
    }
    if e.substitutions > w.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot substitute {} symbols in a word of length {}",
            e.substitutions,
            w.len()
        )));
    }
    for i in sample(rng, w.len(), e.substitutions) {
        let shift = rng.gen_range(1..sigma);
        w[i] = ((w[i] as usize + shift) % sigma) as u8;
    }
    Ok(w)
}

pub fn simulate_channel(u: &[u8], e: ErrorSpec, sigma: usize, seed: u64) -> Result<Vec<u8>> {
    simulate_channel_with(u, e, sigma, &mut channel_rng(seed, 0))
}
