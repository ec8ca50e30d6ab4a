//! Normalised information content and word-pair similarity.
//!
//! Every formula is evaluated against the structural constants of the
//! loaded graph ([`GraphStats`]): maximal word depth, maximal leaf and
//! subvertex counts, and the commonness extremes. On WordNet 3.1 these are
//! 19, 65031, 82192, 1/35 and 6863.6.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::graph::{Lcs, TaxonomyProfile, Vertex};
use crate::wordnet::{GraphStats, LexicalGraph};
use crate::{Error, Result};

/// Intrinsic information content formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IcFormula {
    Blanchard,
    MengEtAl,
    SanchezEtAl,
    SanchezBatet,
    SecoEtAl,
    YuanEtAl,
    ZhouEtAl,
}

impl IcFormula {
    pub const ALL: [IcFormula; 7] = [
        IcFormula::Blanchard,
        IcFormula::MengEtAl,
        IcFormula::SanchezEtAl,
        IcFormula::SanchezBatet,
        IcFormula::SecoEtAl,
        IcFormula::YuanEtAl,
        IcFormula::ZhouEtAl,
    ];

    pub fn id(self) -> &'static str {
        match self {
            IcFormula::Blanchard => "blanchard",
            IcFormula::MengEtAl => "meng-ic",
            IcFormula::SanchezEtAl => "sanchez-ic",
            IcFormula::SanchezBatet => "sanchez-batet",
            IcFormula::SecoEtAl => "seco",
            IcFormula::YuanEtAl => "yuan",
            IcFormula::ZhouEtAl => "zhou-ic",
        }
    }
}

impl fmt::Display for IcFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for IcFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IcFormula::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

/// Family a similarity formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimGroup {
    Path,
    Subsumer,
    IcBased,
}

/// Word-pair similarity formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SimFormula {
    AlMubaidNguyen,
    LeacockChodorow,
    LiEtAl,
    RadaEtAl,
    WuPalmer,
    Jaccard,
    BraunBlanquet,
    Dice,
    OtsukaOchiai,
    Kulczynski,
    Simpson,
    JiangConrath(IcFormula),
    Lin(IcFormula),
    MengEtAl(IcFormula),
    Resnik(IcFormula),
    /// `k · LeacockChodorow + (1 − k) · JiangConrath`.
    ZhouEtAl(IcFormula, f64),
}

pub const ZHOU_DEFAULT_WEIGHT: f64 = 0.5;

impl SimFormula {
    pub const PATH: [SimFormula; 5] = [
        SimFormula::AlMubaidNguyen,
        SimFormula::LeacockChodorow,
        SimFormula::LiEtAl,
        SimFormula::RadaEtAl,
        SimFormula::WuPalmer,
    ];

    pub const SUBSUMER: [SimFormula; 6] = [
        SimFormula::Jaccard,
        SimFormula::BraunBlanquet,
        SimFormula::Dice,
        SimFormula::OtsukaOchiai,
        SimFormula::Kulczynski,
        SimFormula::Simpson,
    ];

    /// The five IC-based formulas for one IC formula.
    pub fn ic_based(ic: IcFormula) -> [SimFormula; 5] {
        [
            SimFormula::JiangConrath(ic),
            SimFormula::Lin(ic),
            SimFormula::MengEtAl(ic),
            SimFormula::Resnik(ic),
            SimFormula::ZhouEtAl(ic, ZHOU_DEFAULT_WEIGHT),
        ]
    }

    /// All 46 measures: 5 path-based, 6 subsumer-based, 5 × 7 IC-based.
    pub fn all() -> Vec<SimFormula> {
        let mut v: Vec<SimFormula> = Self::PATH.into_iter().chain(Self::SUBSUMER).collect();
        for ic in IcFormula::ALL {
            v.extend(Self::ic_based(ic));
        }
        v
    }

    pub fn group(&self) -> SimGroup {
        match self {
            SimFormula::AlMubaidNguyen
            | SimFormula::LeacockChodorow
            | SimFormula::LiEtAl
            | SimFormula::RadaEtAl
            | SimFormula::WuPalmer => SimGroup::Path,
            SimFormula::Jaccard
            | SimFormula::BraunBlanquet
            | SimFormula::Dice
            | SimFormula::OtsukaOchiai
            | SimFormula::Kulczynski
            | SimFormula::Simpson => SimGroup::Subsumer,
            _ => SimGroup::IcBased,
        }
    }

    pub fn ic(&self) -> Option<IcFormula> {
        match *self {
            SimFormula::JiangConrath(ic)
            | SimFormula::Lin(ic)
            | SimFormula::MengEtAl(ic)
            | SimFormula::Resnik(ic)
            | SimFormula::ZhouEtAl(ic, _) => Some(ic),
            _ => None,
        }
    }

    fn needs_distance(&self) -> bool {
        matches!(self.group(), SimGroup::Path) || matches!(self, SimFormula::MengEtAl(_) | SimFormula::ZhouEtAl(..))
    }
}

impl fmt::Display for SimFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimFormula::AlMubaidNguyen => f.write_str("an"),
            SimFormula::LeacockChodorow => f.write_str("lc"),
            SimFormula::LiEtAl => f.write_str("li"),
            SimFormula::RadaEtAl => f.write_str("rada"),
            SimFormula::WuPalmer => f.write_str("wp"),
            SimFormula::Jaccard => f.write_str("jaccard"),
            SimFormula::BraunBlanquet => f.write_str("braun-blanquet"),
            SimFormula::Dice => f.write_str("dice"),
            SimFormula::OtsukaOchiai => f.write_str("otsuka-ochiai"),
            SimFormula::Kulczynski => f.write_str("kulczynski"),
            SimFormula::Simpson => f.write_str("simpson"),
            SimFormula::JiangConrath(ic) => write!(f, "jc:{ic}"),
            SimFormula::Lin(ic) => write!(f, "lin:{ic}"),
            SimFormula::MengEtAl(ic) => write!(f, "meng-sim:{ic}"),
            SimFormula::Resnik(ic) => write!(f, "resnik:{ic}"),
            SimFormula::ZhouEtAl(ic, k) if *k == ZHOU_DEFAULT_WEIGHT => write!(f, "zhou-sim:{ic}"),
            SimFormula::ZhouEtAl(ic, k) => write!(f, "zhou-sim:{ic}:{k}"),
        }
    }
}

impl FromStr for SimFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFormula(s.to_string());
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let ic = parts.next().map(IcFormula::from_str).transpose()?;
        let weight = parts.next();
        if parts.next().is_some() || (weight.is_some() && head != "zhou-sim") {
            return Err(unknown());
        }
        let simple = match head {
            "an" => Some(SimFormula::AlMubaidNguyen),
            "lc" => Some(SimFormula::LeacockChodorow),
            "li" => Some(SimFormula::LiEtAl),
            "rada" => Some(SimFormula::RadaEtAl),
            "wp" => Some(SimFormula::WuPalmer),
            "jaccard" => Some(SimFormula::Jaccard),
            "braun-blanquet" => Some(SimFormula::BraunBlanquet),
            "dice" => Some(SimFormula::Dice),
            "otsuka-ochiai" => Some(SimFormula::OtsukaOchiai),
            "kulczynski" => Some(SimFormula::Kulczynski),
            "simpson" => Some(SimFormula::Simpson),
            _ => None,
        };
        if let Some(f) = simple {
            return if ic.is_none() { Ok(f) } else { Err(unknown()) };
        }
        let ic = ic.ok_or_else(unknown)?;
        Ok(match head {
            "jc" => SimFormula::JiangConrath(ic),
            "lin" => SimFormula::Lin(ic),
            "meng-sim" => SimFormula::MengEtAl(ic),
            "resnik" => SimFormula::Resnik(ic),
            "zhou-sim" => {
                let k = match weight {
                    Some(w) => w.parse::<f64>().map_err(|_| unknown())?,
                    None => ZHOU_DEFAULT_WEIGHT,
                };
                if !(0.0..=1.0).contains(&k) {
                    return Err(Error::InvalidConfig(format!("Zhou weight {k} outside [0,1]")));
                }
                SimFormula::ZhouEtAl(ic, k)
            }
            _ => return Err(unknown()),
        })
    }
}

impl From<SimFormula> for String {
    fn from(f: SimFormula) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for SimFormula {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Selected measures for window analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub ic: IcFormula,
    pub sim: SimFormula,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            ic: IcFormula::SanchezBatet,
            sim: SimFormula::Lin(IcFormula::SanchezBatet),
        }
    }
}

static IC_CLAMPS: AtomicU64 = AtomicU64::new(0);
static SIM_CLAMPS: AtomicU64 = AtomicU64::new(0);

/// Process-wide counts of values pulled back into [0, 1]: `(ic, similarity)`.
pub fn clamp_events() -> (u64, u64) {
    (IC_CLAMPS.load(Ordering::Relaxed), SIM_CLAMPS.load(Ordering::Relaxed))
}

const CLAMP_SLACK: f64 = 1e-12;

fn clamp_unit(raw: f64, counter: &AtomicU64, what: &dyn fmt::Display) -> f64 {
    if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&raw) {
        counter.fetch_add(1, Ordering::Relaxed);
        log::debug!("{what}: raw value {raw} clamped to [0,1]");
    }
    raw.clamp(0.0, 1.0)
}

/// `num / den`, with 0/0 taken as 0 (degenerate constants on tiny graphs).
fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Unclamped information content of a vertex profile.
pub fn raw_information_content(p: &TaxonomyProfile, stats: &GraphStats, f: IcFormula) -> f64 {
    let ln = |x: f64| x.ln();
    let t = p.depth as f64;
    let ln_tmax = ln(stats.max_word_depth as f64);
    let ln_vmax = ln(stats.max_subvertices as f64);
    let ln_lmax = ln(stats.max_leaves as f64);
    let ln_cmin = ln(stats.min_commonness);
    let ln_cmax = ln(stats.max_commonness);
    let depth_term = ratio(ln(t), ln_tmax);
    let leaf_term = 1.0 - ratio(ln(p.leaves as f64), ln_lmax);
    let subvertex_term = 1.0 - ratio(ln(p.subvertices as f64), ln_vmax);
    match f {
        IcFormula::Blanchard => leaf_term,
        IcFormula::MengEtAl => depth_term * (1.0 - ratio(ln(1.0 + p.hyponym_inverse_depth_sum), ln_vmax)),
        IcFormula::SanchezEtAl => ratio(
            ln_lmax + ln(p.subsumers as f64) - ln(p.leaves as f64),
            ln_lmax - ln_cmin,
        ),
        IcFormula::SanchezBatet => ratio(ln_cmax - ln(p.commonness), ln_cmax - ln_cmin),
        IcFormula::SecoEtAl => subvertex_term,
        IcFormula::YuanEtAl => depth_term * leaf_term + ratio(ln(p.subsumers as f64), ln_vmax),
        IcFormula::ZhouEtAl => 0.5 * (subvertex_term + depth_term),
    }
}

/// Information content in [0, 1] of a word or meaning.
pub fn information_content<'a>(g: &LexicalGraph, v: impl Into<Vertex<'a>>, f: IcFormula) -> Result<f64> {
    let v = v.into();
    let profile = g.profile(v)?;
    Ok(clamp_unit(raw_information_content(&profile, g.stats(), f), &IC_CLAMPS, &format_args!("{f} of {v:?}")))
}

/// 1 − (depth − 1)/(max depth − 1).
pub fn abstraction(g: &LexicalGraph, word: &str) -> Result<f64> {
    let w = g.word_index(word)?;
    let t = g.word_profile(w).depth as f64;
    Ok(1.0 - ratio(t - 1.0, g.stats().max_word_depth as f64 - 1.0))
}

/// Number of senses.
pub fn polysemy(g: &LexicalGraph, word: &str) -> Result<usize> {
    let w = g.word_index(word)?;
    Ok(g.word_senses(w).len())
}

/// Evaluates similarity formulas for one word pair, computing the shortest
/// distance and lowest common subsumer at most once.
pub struct PairEvaluator<'g> {
    g: &'g LexicalGraph,
    words: (&'g str, &'g str),
    a: u32,
    b: u32,
    distance: OnceCell<Option<u32>>,
    lcs: OnceCell<Option<(Lcs, u32)>>,
}

impl<'g> PairEvaluator<'g> {
    pub fn new(g: &'g LexicalGraph, w1: &'g str, w2: &'g str) -> Result<Self> {
        let a = g.word_index(w1)?;
        let b = g.word_index(w2)?;
        if a == b {
            return Err(Error::SelfPair(w1.to_string()));
        }
        Ok(PairEvaluator {
            g,
            words: (w1, w2),
            a,
            b,
            distance: OnceCell::new(),
            lcs: OnceCell::new(),
        })
    }

    fn disconnected(&self) -> Error {
        Error::Disconnected(self.words.0.to_string(), self.words.1.to_string())
    }

    pub fn distance(&self) -> Result<u32> {
        self.distance
            .get_or_init(|| self.g.word_distance_dense(self.a, self.b))
            .ok_or_else(|| self.disconnected())
    }

    /// The lowest common subsumer and its dense index.
    fn lcs_dense(&self) -> Result<(Lcs, u32)> {
        self.lcs
            .get_or_init(|| {
                self.g.lcs_dense(self.a, self.b).map(|k| {
                    let m = self.g.meaning_index(k.meaning).expect("lcs is a graph meaning");
                    (k, m)
                })
            })
            .ok_or_else(|| self.disconnected())
    }

    pub fn lcs(&self) -> Result<Lcs> {
        self.lcs_dense().map(|(k, _)| k)
    }

    fn ic_triple(&self, ic: IcFormula) -> Result<(f64, f64, f64)> {
        let g = self.g;
        let stats = g.stats();
        let (_, k) = self.lcs_dense()?;
        let what = |s: &'static str| format!("{ic} of {s}");
        let ic1 = clamp_unit(raw_information_content(g.word_profile(self.a), stats, ic), &IC_CLAMPS, &what("w1"));
        let ic2 = clamp_unit(raw_information_content(g.word_profile(self.b), stats, ic), &IC_CLAMPS, &what("w2"));
        let ick = clamp_unit(raw_information_content(g.meaning_profile(k), stats, ic), &IC_CLAMPS, &what("lcs"));
        Ok((ic1, ic2, ick))
    }

    /// Value of `f` before clamping to [0, 1].
    pub fn raw(&self, f: SimFormula) -> Result<f64> {
        let stats = self.g.stats();
        let tmax = stats.max_word_depth as f64;
        let d = if f.needs_distance() { self.distance()? as f64 } else { 0.0 };
        let leacock_chodorow = || 1.0 - ratio((d + 1.0).ln(), (2.0 * tmax - 1.0).ln());
        let jiang_conrath = |ic| -> Result<f64> {
            let (ic1, ic2, ick) = self.ic_triple(ic)?;
            Ok(1.0 - 0.5 * (ic1 + ic2 - 2.0 * ick))
        };
        let lin = |ic| -> Result<f64> {
            let (ic1, ic2, ick) = self.ic_triple(ic)?;
            if ic1 + ic2 == 0.0 {
                return Err(Error::DegenerateInput(format!(
                    "Lin similarity of '{}' and '{}': both information contents are zero",
                    self.words.0, self.words.1
                )));
            }
            Ok(2.0 * ick / (ic1 + ic2))
        };
        Ok(match f {
            SimFormula::AlMubaidNguyen => {
                let tk = self.lcs()?.depth as f64;
                1.0 - ratio((1.0 + d * (tmax - tk)).ln(), (1.0 + 2.0 * (tmax - 1.0).powi(2)).ln())
            }
            SimFormula::LeacockChodorow => leacock_chodorow(),
            SimFormula::LiEtAl => {
                let tk = self.lcs()?.depth as f64;
                let e = (1.2 * tk).exp();
                (-0.2 * d).exp() * (e - 1.0) / (e + 1.0)
            }
            SimFormula::RadaEtAl => 1.0 - ratio(d, 2.0 * (tmax - 1.0)),
            SimFormula::WuPalmer => {
                let tk = self.lcs()?.depth as f64;
                let num = 2.0 * (tk - 1.0);
                // shared root sense: identical meaning, no path
                if num + d == 0.0 {
                    1.0
                } else {
                    num / (num + d)
                }
            }
            SimFormula::Jaccard
            | SimFormula::BraunBlanquet
            | SimFormula::Dice
            | SimFormula::OtsukaOchiai
            | SimFormula::Kulczynski
            | SimFormula::Simpson => {
                let o = self.g.subsumer_overlap_dense(self.a, self.b);
                let (s1, s2, c) = (o.first as f64, o.second as f64, o.common as f64);
                match f {
                    SimFormula::Jaccard => c / o.union() as f64,
                    SimFormula::BraunBlanquet => c / s1.max(s2),
                    SimFormula::Dice => 2.0 * c / (s1 + s2),
                    SimFormula::OtsukaOchiai => c / (s1 * s2).sqrt(),
                    SimFormula::Kulczynski => c / 2.0 * (1.0 / s1 + 1.0 / s2),
                    _ => c / s1.min(s2),
                }
            }
            SimFormula::JiangConrath(ic) => jiang_conrath(ic)?,
            SimFormula::Lin(ic) => lin(ic)?,
            SimFormula::MengEtAl(ic) => {
                let base = lin(ic)?.clamp(0.0, 1.0);
                let e = (-0.08 * d).exp();
                base.powf((1.0 - e) / e)
            }
            SimFormula::Resnik(ic) => self.ic_triple(ic)?.2,
            SimFormula::ZhouEtAl(ic, k) => {
                let jc = jiang_conrath(ic)?.clamp(0.0, 1.0);
                k * leacock_chodorow() + (1.0 - k) * jc
            }
        })
    }

    /// Similarity in [0, 1].
    pub fn similarity(&self, f: SimFormula) -> Result<f64> {
        let raw = self.raw(f)?;
        Ok(clamp_unit(raw, &SIM_CLAMPS, &format_args!("{f}({}, {})", self.words.0, self.words.1)))
    }
}

/// Similarity of two distinct words.
pub fn similarity(g: &LexicalGraph, w1: &str, w2: &str, f: SimFormula) -> Result<f64> {
    PairEvaluator::new(g, w1, w2)?.similarity(f)
}

/// Mean information content over window members.
pub fn mean_ic<S: AsRef<str>>(g: &LexicalGraph, window: &[S], f: IcFormula) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::DegenerateInput("empty window".into()));
    }
    let mut sum = 0.0;
    for w in window {
        sum += information_content(g, w.as_ref(), f)?;
    }
    Ok(sum / window.len() as f64)
}

/// Similarities of all unordered member pairs, in `(0,1), (0,2) … (1,2) …`
/// order.
pub fn pairwise_similarities<S: AsRef<str>>(g: &LexicalGraph, window: &[S], f: SimFormula) -> Vec<Result<f64>> {
    let mut out = Vec::with_capacity(window.len() * window.len().saturating_sub(1) / 2);
    for i in 0..window.len() {
        for j in i + 1..window.len() {
            out.push(similarity(g, window[i].as_ref(), window[j].as_ref(), f));
        }
    }
    out
}

/// Mean similarity over all unordered distinct pairs.
pub fn mean_pairwise_similarity<S: AsRef<str>>(g: &LexicalGraph, window: &[S], f: SimFormula) -> Result<f64> {
    if window.len() < 2 {
        return Err(Error::DegenerateInput("window needs at least two nouns".into()));
    }
    let sims = pairwise_similarities(g, window, f)
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    Ok(sims.iter().sum::<f64>() / sims.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordnet::SynsetRecord;

    #[test]
    fn identifiers_round_trip() {
        let all = SimFormula::all();
        assert_eq!(all.len(), 46);
        for f in &all {
            assert_eq!(&f.to_string().parse::<SimFormula>().unwrap(), f);
        }
        for ic in IcFormula::ALL {
            assert_eq!(ic.id().parse::<IcFormula>().unwrap(), ic);
        }
        assert_eq!(
            "zhou-sim:seco:0.25".parse::<SimFormula>().unwrap(),
            SimFormula::ZhouEtAl(IcFormula::SecoEtAl, 0.25)
        );
        for bad in ["lin", "rada:seco", "zhou-sim:seco:2", "lin:seco:0.5", "nope", "jc:nope"] {
            assert!(bad.parse::<SimFormula>().is_err(), "{bad}");
        }
    }

    #[test]
    fn default_config_is_sanchez_batet_lin() {
        let c = MeasureConfig::default();
        assert_eq!(c.ic, IcFormula::SanchezBatet);
        assert_eq!(c.sim, SimFormula::Lin(IcFormula::SanchezBatet));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"ic":"SanchezBatet","sim":"lin:sanchez-batet"}"#);
    }

    #[test]
    fn groups_partition_all() {
        let all = SimFormula::all();
        let count = |g| all.iter().filter(|f| f.group() == g).count();
        assert_eq!((count(SimGroup::Path), count(SimGroup::Subsumer), count(SimGroup::IcBased)), (5, 6, 35));
    }

    fn stats() -> GraphStats {
        GraphStats {
            max_word_depth: 19,
            max_leaves: 65031,
            max_subvertices: 82192,
            min_commonness: 1.0 / 35.0,
            max_commonness: 6863.6,
            ..GraphStats::default()
        }
    }

    #[test]
    fn ic_boundaries() {
        let s = stats();
        let root = TaxonomyProfile {
            depth: 1,
            subsumers: 1,
            subvertices: 82192,
            leaves: 65031,
            commonness: 6863.6,
            hyponym_inverse_depth_sum: 5000.0,
        };
        for f in IcFormula::ALL {
            let v = raw_information_content(&root, &s, f);
            assert!(v.abs() < 1e-12, "{f} of root = {v}");
        }
        let deep_leaf = TaxonomyProfile {
            depth: 19,
            subsumers: 35,
            subvertices: 1,
            leaves: 1,
            commonness: 1.0 / 35.0,
            hyponym_inverse_depth_sum: 0.0,
        };
        approx::assert_relative_eq!(raw_information_content(&deep_leaf, &s, IcFormula::SanchezBatet), 1.0);
        approx::assert_relative_eq!(raw_information_content(&deep_leaf, &s, IcFormula::Blanchard), 1.0);
        approx::assert_relative_eq!(raw_information_content(&deep_leaf, &s, IcFormula::SecoEtAl), 1.0);
        approx::assert_relative_eq!(raw_information_content(&deep_leaf, &s, IcFormula::ZhouEtAl), 1.0);
        approx::assert_relative_eq!(raw_information_content(&deep_leaf, &s, IcFormula::MengEtAl), 1.0);
    }

    fn toy() -> LexicalGraph {
        let rec = |offset, lemmas: &[&str], h: &[u32]| SynsetRecord {
            offset,
            lemmas: lemmas.iter().map(|s| s.to_string()).collect(),
            hypernyms: h.to_vec(),
        };
        LexicalGraph::from_synsets(vec![
            rec(1740, &["entity"], &[]),
            rec(10, &["object"], &[1740]),
            rec(11, &["tool"], &[10]),
            rec(12, &["toy"], &[10]),
            rec(13, &["hammer", "maul"], &[11]),
        ])
        .unwrap()
    }

    #[test]
    fn abstraction_and_polysemy() {
        let g = toy();
        // max word depth is 4 (hammer)
        assert_eq!(abstraction(&g, "entity").unwrap(), 1.0);
        assert_eq!(abstraction(&g, "hammer").unwrap(), 0.0);
        approx::assert_relative_eq!(abstraction(&g, "object").unwrap(), 2.0 / 3.0);
        assert_eq!(polysemy(&g, "maul").unwrap(), 1);
        assert!(matches!(polysemy(&g, "zzz"), Err(Error::NotInLexicon(_))));
    }

    #[test]
    fn pair_errors() {
        let g = toy();
        assert!(matches!(similarity(&g, "toy", "toy", SimFormula::RadaEtAl), Err(Error::SelfPair(_))));
        assert!(matches!(similarity(&g, "toy", "zzz", SimFormula::RadaEtAl), Err(Error::NotInLexicon(_))));
        // both words have IC 0 only at the root; entity is the sole root word
        let lin = similarity(&g, "entity", "object", SimFormula::Lin(IcFormula::SecoEtAl));
        assert!(lin.is_ok());
    }

    #[test]
    fn synonyms_are_maximally_similar_on_path_measures() {
        let g = toy();
        assert_eq!(similarity(&g, "hammer", "maul", SimFormula::RadaEtAl).unwrap(), 1.0);
        assert_eq!(similarity(&g, "hammer", "maul", SimFormula::Jaccard).unwrap(), 1.0);
        assert_eq!(similarity(&g, "hammer", "maul", SimFormula::WuPalmer).unwrap(), 1.0);
        assert_eq!(similarity(&g, "hammer", "maul", SimFormula::Lin(IcFormula::SanchezBatet)).unwrap(), 1.0);
    }

    #[test]
    fn toy_path_values() {
        let g = toy();
        // tool and toy meet at object (depth 2), distance 2; max word depth 4
        let rada = similarity(&g, "tool", "toy", SimFormula::RadaEtAl).unwrap();
        approx::assert_relative_eq!(rada, 1.0 - 2.0 / 6.0);
        let wp = similarity(&g, "tool", "toy", SimFormula::WuPalmer).unwrap();
        approx::assert_relative_eq!(wp, 2.0 / 4.0);
        let lc = similarity(&g, "tool", "toy", SimFormula::LeacockChodorow).unwrap();
        approx::assert_relative_eq!(lc, 1.0 - 3f64.ln() / 7f64.ln());
    }

    #[test]
    fn mean_over_window() {
        let g = toy();
        let w = ["tool", "toy", "hammer"];
        let sims = pairwise_similarities(&g, &w, SimFormula::Jaccard);
        assert_eq!(sims.len(), 3);
        let mean = mean_pairwise_similarity(&g, &w, SimFormula::Jaccard).unwrap();
        let by_hand: f64 = sims.iter().map(|r| *r.as_ref().unwrap()).sum::<f64>() / 3.0;
        assert_eq!(mean, by_hand);
        assert!(mean_pairwise_similarity(&g, &["tool"], SimFormula::Jaccard).is_err());
        assert_eq!(mean_ic(&g, &["entity"], IcFormula::SanchezBatet).unwrap(), 0.0);
        assert!(mean_ic::<&str>(&g, &[], IcFormula::SanchezBatet).is_err());
    }
}
