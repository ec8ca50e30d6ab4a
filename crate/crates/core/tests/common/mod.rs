#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use std::time::Duration;

use semnet::wordnet::{load_dict_dir, load_dict_exceptions};
use semnet::{IcFormula, LexicalGraph, MeaningId, MorphExceptions, SimFormula};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn wordnet_dir() -> PathBuf {
    data_dir().join("wordnet-3.1")
}

static GRAPH: OnceLock<(LexicalGraph, Duration)> = OnceLock::new();

/// The WordNet 3.1 graph, loaded once per test binary, with its load time.
pub fn graph_timed() -> &'static (LexicalGraph, Duration) {
    GRAPH.get_or_init(|| {
        let start = std::time::Instant::now();
        let g = load_dict_dir(&wordnet_dir()).expect("vendored WordNet loads");
        (g, start.elapsed())
    })
}

pub fn graph() -> &'static LexicalGraph {
    &graph_timed().0
}

pub fn exceptions() -> &'static MorphExceptions {
    static EXC: OnceLock<MorphExceptions> = OnceLock::new();
    EXC.get_or_init(|| load_dict_exceptions(&wordnet_dir()).expect("noun.exc loads"))
}

/// All lexicon words, sorted.
pub fn words(g: &LexicalGraph) -> Vec<&str> {
    g.words().collect()
}

/// Taxonomy quantities recomputed by plain set traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteProfile {
    pub depth: u32,
    pub subsumers: BTreeSet<MeaningId>,
    pub subvertices: BTreeSet<MeaningId>,
    pub leaves: usize,
    pub commonness: f64,
    pub hyponym_inverse_depth_sum: f64,
}

/// Reference answers computed from hypernym/hyponym adjacency alone.
pub struct Oracle<'g> {
    pub g: &'g LexicalGraph,
    depth: HashMap<MeaningId, u32>,
    ancestor_memo: Mutex<HashMap<MeaningId, usize>>,
}

impl<'g> Oracle<'g> {
    pub fn new(g: &'g LexicalGraph) -> Self {
        // vertex count on the shortest downward path from the root
        let mut depth = HashMap::from([(g.root(), 1)]);
        let mut queue = VecDeque::from([g.root()]);
        while let Some(m) = queue.pop_front() {
            let d = depth[&m];
            for c in g.hyponyms(m).unwrap() {
                depth.entry(c).or_insert_with(|| {
                    queue.push_back(c);
                    d + 1
                });
            }
        }
        Oracle {
            g,
            depth,
            ancestor_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn depth(&self, m: MeaningId) -> u32 {
        self.depth[&m]
    }

    /// `m` and everything above it.
    pub fn ancestors(&self, m: MeaningId) -> BTreeSet<MeaningId> {
        let mut seen = BTreeSet::from([m]);
        let mut stack = vec![m];
        while let Some(x) = stack.pop() {
            for p in self.g.hypernyms(x).unwrap() {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    fn ancestor_count(&self, m: MeaningId) -> usize {
        if let Some(&n) = self.ancestor_memo.lock().unwrap().get(&m) {
            return n;
        }
        let n = self.ancestors(m).len();
        self.ancestor_memo.lock().unwrap().insert(m, n);
        n
    }

    /// Everything reachable downward from any of `sources`, inclusive.
    pub fn descendants(&self, sources: &[MeaningId]) -> BTreeSet<MeaningId> {
        let mut seen: BTreeSet<MeaningId> = sources.iter().copied().collect();
        let mut stack: Vec<MeaningId> = sources.to_vec();
        while let Some(x) = stack.pop() {
            for c in self.g.hyponyms(x).unwrap() {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen
    }

    fn profile_of(&self, senses: &[MeaningId]) -> BruteProfile {
        let subsumers = senses.iter().flat_map(|&m| self.ancestors(m)).collect();
        let subvertices = self.descendants(senses);
        let mut leaves = 0;
        let mut commonness = 0.0;
        let mut inv = 0.0;
        for &v in &subvertices {
            if self.g.hyponyms(v).unwrap().is_empty() {
                leaves += 1;
                commonness += 1.0 / self.ancestor_count(v) as f64;
            }
            if !senses.contains(&v) {
                inv += 1.0 / self.depth(v) as f64;
            }
        }
        BruteProfile {
            depth: senses.iter().map(|&m| self.depth(m)).min().unwrap(),
            subsumers,
            subvertices,
            leaves,
            commonness,
            hyponym_inverse_depth_sum: inv,
        }
    }

    pub fn meaning_profile(&self, m: MeaningId) -> BruteProfile {
        self.profile_of(&[m])
    }

    pub fn word_profile(&self, w: &str) -> BruteProfile {
        self.profile_of(&self.g.adjacent_meanings(w).unwrap())
    }

    /// Breadth-first search over the two word vertices and every meaning,
    /// all edges undirected; two word edges are subtracted.
    pub fn word_distance(&self, w1: &str, w2: &str) -> Option<u32> {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum N {
            Word(bool),
            Meaning(MeaningId),
        }
        let s1 = self.g.adjacent_meanings(w1).unwrap();
        let s2 = self.g.adjacent_meanings(w2).unwrap();
        let mut dist = HashMap::from([(N::Word(false), 0u32)]);
        let mut queue = VecDeque::from([N::Word(false)]);
        while let Some(n) = queue.pop_front() {
            let d = dist[&n];
            if n == N::Word(true) {
                return Some(d - 2);
            }
            let next: Vec<N> = match n {
                N::Word(false) => s1.iter().map(|&m| N::Meaning(m)).collect(),
                N::Word(true) => vec![],
                N::Meaning(m) => {
                    let mut v: Vec<N> = self.g.hypernyms(m).unwrap().into_iter().map(N::Meaning).collect();
                    v.extend(self.g.hyponyms(m).unwrap().into_iter().map(N::Meaning));
                    if s2.contains(&m) {
                        v.push(N::Word(true));
                    }
                    if s1.contains(&m) {
                        v.push(N::Word(false));
                    }
                    v
                }
            };
            for x in next {
                dist.entry(x).or_insert_with(|| {
                    queue.push_back(x);
                    d + 1
                });
            }
        }
        None
    }

    /// Upward distances from a word vertex (its sense edges count one).
    pub fn up_distances(&self, w: &str) -> HashMap<MeaningId, u32> {
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        for m in self.g.adjacent_meanings(w).unwrap() {
            dist.insert(m, 1);
            queue.push_back(m);
        }
        while let Some(m) = queue.pop_front() {
            let d = dist[&m];
            for p in self.g.hypernyms(m).unwrap() {
                dist.entry(p).or_insert_with(|| {
                    queue.push_back(p);
                    d + 1
                });
            }
        }
        dist
    }

    /// `(lcs, vertex depth, path length through it in meaning edges)`.
    pub fn lcs(&self, w1: &str, w2: &str) -> (MeaningId, u32, u32) {
        let a = self.up_distances(w1);
        let b = self.up_distances(w2);
        let best = a
            .iter()
            .filter_map(|(m, da)| b.get(m).map(|db| (*m, da + db)))
            .min_by(|x, y| {
                x.1.cmp(&y.1)
                    .then(self.depth(y.0).cmp(&self.depth(x.0)))
                    .then(x.0.cmp(&y.0))
            })
            .expect("root is common");
        (best.0, self.depth(best.0), best.1 - 2)
    }
}

/// Information content written out from its defining formula.
pub fn brute_ic(p: &BruteProfile, g: &LexicalGraph, f: IcFormula) -> f64 {
    let s = g.stats();
    let log = f64::ln;
    let (tmax, vmax, lmax) = (s.max_word_depth as f64, s.max_subvertices as f64, s.max_leaves as f64);
    let (cmin, cmax) = (s.min_commonness, s.max_commonness);
    let t = p.depth as f64;
    let (nv, nl, ns) = (p.subvertices.len() as f64, p.leaves as f64, p.subsumers.len() as f64);
    let v = match f {
        IcFormula::Blanchard => 1.0 - log(nl) / log(lmax),
        IcFormula::MengEtAl => log(t) / log(tmax) * (1.0 - log(1.0 + p.hyponym_inverse_depth_sum) / log(vmax)),
        IcFormula::SanchezEtAl => (log(lmax) + log(ns) - log(nl)) / (log(lmax) - log(cmin)),
        IcFormula::SanchezBatet => (log(cmax) - log(p.commonness)) / (log(cmax) - log(cmin)),
        IcFormula::SecoEtAl => 1.0 - log(nv) / log(vmax),
        IcFormula::YuanEtAl => log(t) / log(tmax) * (1.0 - log(nl) / log(lmax)) + log(ns) / log(vmax),
        IcFormula::ZhouEtAl => 0.5 * (1.0 - log(nv) / log(vmax) + log(t) / log(tmax)),
    };
    v.clamp(0.0, 1.0)
}

/// Deterministic sample of `n` distinct indices below `len`.
pub fn sample_indices(len: usize, n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::index::sample;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut v = sample(&mut rng, len, n).into_vec();
    v.sort_unstable();
    v
}

/// `n` deterministic pairs of distinct lexicon words.
pub fn word_pairs(g: &LexicalGraph, n: usize, seed: u64) -> Vec<(String, String)> {
    let all = words(g);
    let idx = sample_indices(all.len(), 2 * n, seed);
    // interleave so pairs mix distant parts of the alphabet
    let (lo, hi) = idx.split_at(n);
    lo.iter()
        .zip(hi.iter().rev())
        .map(|(&a, &b)| (all[a].to_string(), all[b].to_string()))
        .collect()
}

/// Everything one word pair's similarities depend on, recomputed by brute
/// force.
pub struct BrutePair {
    pub distance: u32,
    pub lcs: MeaningId,
    pub lcs_depth: u32,
    pub first: BruteProfile,
    pub second: BruteProfile,
    pub lcs_profile: BruteProfile,
}

impl BrutePair {
    pub fn new(o: &Oracle, w1: &str, w2: &str) -> Self {
        let (lcs, lcs_depth, _) = o.lcs(w1, w2);
        BrutePair {
            distance: o.word_distance(w1, w2).expect("connected"),
            lcs,
            lcs_depth,
            first: o.word_profile(w1),
            second: o.word_profile(w2),
            lcs_profile: o.meaning_profile(lcs),
        }
    }

    /// `None` where the formula is undefined (Lin with both IC zero).
    pub fn similarity(&self, g: &LexicalGraph, f: SimFormula) -> Option<f64> {
        let tmax = g.stats().max_word_depth as f64;
        let d = self.distance as f64;
        let tk = self.lcs_depth as f64;
        let s1 = self.first.subsumers.len() as f64;
        let s2 = self.second.subsumers.len() as f64;
        let common = self.first.subsumers.intersection(&self.second.subsumers).count() as f64;
        let union = self.first.subsumers.union(&self.second.subsumers).count() as f64;
        let ics = |ic| {
            (
                brute_ic(&self.first, g, ic),
                brute_ic(&self.second, g, ic),
                brute_ic(&self.lcs_profile, g, ic),
            )
        };
        let lc = 1.0 - (d + 1.0).ln() / (2.0 * tmax - 1.0).ln();
        let jc = |ic| {
            let (a, b, k) = ics(ic);
            1.0 - 0.5 * (a + b - 2.0 * k)
        };
        let lin = |ic| {
            let (a, b, k) = ics(ic);
            (a + b > 0.0).then(|| 2.0 * k / (a + b))
        };
        let v = match f {
            SimFormula::AlMubaidNguyen => {
                1.0 - (1.0 + d * (tmax - tk)).ln() / (1.0 + 2.0 * (tmax - 1.0) * (tmax - 1.0)).ln()
            }
            SimFormula::LeacockChodorow => lc,
            SimFormula::LiEtAl => (-0.2 * d).exp() * ((1.2 * tk).exp() - 1.0) / ((1.2 * tk).exp() + 1.0),
            SimFormula::RadaEtAl => 1.0 - d / (2.0 * (tmax - 1.0)),
            SimFormula::WuPalmer if tk == 1.0 && d == 0.0 => 1.0,
            SimFormula::WuPalmer => 2.0 * (tk - 1.0) / (2.0 * (tk - 1.0) + d),
            SimFormula::Jaccard => common / union,
            SimFormula::BraunBlanquet => common / s1.max(s2),
            SimFormula::Dice => 2.0 * common / (s1 + s2),
            SimFormula::OtsukaOchiai => common / (s1 * s2).sqrt(),
            SimFormula::Kulczynski => common / 2.0 * (1.0 / s1 + 1.0 / s2),
            SimFormula::Simpson => common / s1.min(s2),
            SimFormula::JiangConrath(ic) => jc(ic),
            SimFormula::Lin(ic) => lin(ic)?,
            SimFormula::MengEtAl(ic) => {
                let e = (-0.08 * d).exp();
                lin(ic)?.min(1.0).powf((1.0 - e) / e)
            }
            SimFormula::Resnik(ic) => ics(ic).2,
            SimFormula::ZhouEtAl(ic, k) => k * lc + (1.0 - k) * jc(ic).clamp(0.0, 1.0),
        };
        Some(v.clamp(0.0, 1.0))
    }
}

pub fn fixture_path() -> PathBuf {
    data_dir().join("fixtures/synthetic_ideas.jsonl")
}

/// The committed synthetic idea streams, normalised through ingest.
pub fn fixture_records() -> Vec<semnet::dynamics::IdeaRecord> {
    let segments = semnet::ingest::load_segments(&fixture_path()).expect("fixture parses");
    let (records, coverage) =
        semnet::ingest::ingest(&segments, graph(), exceptions(), None, Default::default()).expect("fixture ingests");
    assert_eq!(coverage.dropped, 0);
    records
}

/// Lower tail of Student's t by Simpson quadrature on the angle form of the
/// density, `x = sqrt(df) tan(theta)`, valid for `df >= 1`.
pub fn t_lower_tail(t: f64, df: f64) -> f64 {
    let f = |theta: f64| theta.cos().powf(df - 1.0);
    let simpson = |b: f64| {
        let n = 4000;
        let h = b / n as f64;
        let mut s = f(0.0) + f(b);
        for i in 1..n {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    let half = simpson(std::f64::consts::FRAC_PI_2);
    let inner = simpson((t.abs() / df.sqrt()).atan());
    let upper = 0.5 * (1.0 - inner / half);
    if t < 0.0 {
        upper
    } else {
        1.0 - upper
    }
}
