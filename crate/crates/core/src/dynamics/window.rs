//! Moving window of distinct nouns and its incremental measure cache.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::measures::{information_content, similarity, MeasureConfig};
use crate::wordnet::LexicalGraph;
use crate::{Error, Result};

/// A noun at position `seq` of a conversation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounEvent {
    pub seq: usize,
    pub noun: String,
}

impl NounEvent {
    /// Events numbered `0..n` in order.
    pub fn sequence<S: AsRef<str>>(nouns: &[S]) -> Vec<NounEvent> {
        nouns
            .iter()
            .enumerate()
            .map(|(seq, n)| NounEvent {
                seq,
                noun: n.as_ref().to_string(),
            })
            .collect()
    }
}

/// Which member leaves when a new distinct noun arrives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eviction {
    /// Oldest by first insertion; repeats do not refresh a member.
    #[default]
    Fifo,
    /// Least recently mentioned; repeats move a member to the back.
    Lru,
}

impl fmt::Display for Eviction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eviction::Fifo => "fifo",
            Eviction::Lru => "lru",
        })
    }
}

impl FromStr for Eviction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fifo" => Ok(Eviction::Fifo),
            "lru" => Ok(Eviction::Lru),
            other => Err(Error::InvalidConfig(format!("unknown eviction policy '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// Distinct nouns, oldest first.
    pub members: Vec<String>,
    pub capacity: usize,
    #[serde(default)]
    pub eviction: Eviction,
}

/// Outcome of pushing one noun into a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Push {
    /// Whether the member set differs from before the push.
    pub changed: bool,
    pub evicted: Option<String>,
}

impl Window {
    pub fn new(capacity: usize, eviction: Eviction) -> Result<Self> {
        if capacity < 2 {
            return Err(Error::InvalidConfig(format!("window capacity {capacity} < 2")));
        }
        Ok(Window {
            members: Vec::with_capacity(capacity),
            capacity,
            eviction,
        })
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.capacity
    }

    pub fn contains(&self, noun: &str) -> bool {
        self.members.iter().any(|m| m == noun)
    }

    pub fn push(&mut self, noun: &str) -> Push {
        if let Some(pos) = self.members.iter().position(|m| m == noun) {
            if self.eviction == Eviction::Lru {
                let m = self.members.remove(pos);
                self.members.push(m);
            }
            return Push {
                changed: false,
                evicted: None,
            };
        }
        let evicted = self.is_full().then(|| self.members.remove(0));
        self.members.push(noun.to_string());
        Push { changed: true, evicted }
    }
}

/// Window state after an event, emitted from the first full window onward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowStep {
    pub seq: usize,
    pub window: Window,
    pub changed: bool,
}

/// Slides a window over `nouns`, one step per event once it is full.
pub fn window_stream(nouns: &[NounEvent], capacity: usize, eviction: Eviction) -> Result<Vec<WindowStep>> {
    let mut window = Window::new(capacity, eviction)?;
    let mut steps = Vec::new();
    for ev in nouns {
        let was_full = window.is_full();
        let push = window.push(&ev.noun);
        if window.is_full() {
            steps.push(WindowStep {
                seq: ev.seq,
                window: window.clone(),
                changed: push.changed || !was_full,
            });
        }
    }
    if steps.is_empty() {
        return Err(Error::StreamTooShort {
            distinct: window.members.len(),
            capacity,
        });
    }
    Ok(steps)
}

/// Measures of one full window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowMeasures {
    pub mean_ic: f64,
    /// Mean over the pairs whose similarity could be computed; NaN if none.
    pub mean_sim: f64,
    pub failed_pairs: usize,
}

/// Reading after one pushed noun.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeterReading {
    pub seq: usize,
    pub noun: String,
    pub changed: bool,
    /// `None` until the window first fills.
    pub measures: Option<WindowMeasures>,
}

/// Incremental window evaluation.
///
/// Information content is cached per member and similarity per member pair,
/// so a change costs one IC and `capacity − 1` similarities. Means are summed
/// in window order, matching a from-scratch evaluation bit for bit.
pub struct WindowMeter<'g> {
    g: &'g LexicalGraph,
    config: MeasureConfig,
    window: Window,
    ic: HashMap<String, f64>,
    sims: HashMap<(String, String), Option<f64>>,
    current: Option<WindowMeasures>,
    next_seq: usize,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl<'g> WindowMeter<'g> {
    pub fn new(g: &'g LexicalGraph, config: MeasureConfig, capacity: usize, eviction: Eviction) -> Result<Self> {
        Ok(WindowMeter {
            g,
            config,
            window: Window::new(capacity, eviction)?,
            ic: HashMap::new(),
            sims: HashMap::new(),
            current: None,
            next_seq: 0,
        })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn current(&self) -> Option<WindowMeasures> {
        self.current
    }

    /// Pushes the next noun of the stream, numbered consecutively.
    pub fn push(&mut self, noun: &str) -> Result<MeterReading> {
        let seq = self.next_seq;
        self.push_at(seq, noun)
    }

    pub fn push_at(&mut self, seq: usize, noun: &str) -> Result<MeterReading> {
        if !self.g.contains_word(noun) {
            return Err(Error::NotInLexicon(noun.to_string()));
        }
        self.next_seq = seq + 1;
        let was_full = self.window.is_full();
        let push = self.window.push(noun);
        if let Some(old) = &push.evicted {
            self.ic.remove(old);
            self.sims.retain(|(a, b), _| a != old && b != old);
        }
        let changed = push.changed || (!was_full && self.window.is_full());
        if push.changed {
            let ic = information_content(self.g, noun, self.config.ic)?;
            self.ic.insert(noun.to_string(), ic);
            for other in &self.window.members {
                if other != noun {
                    let value = match similarity(self.g, noun, other, self.config.sim) {
                        Ok(v) => Some(v),
                        Err(e) => {
                            log::warn!("{}({noun}, {other}) skipped: {e}", self.config.sim);
                            None
                        }
                    };
                    self.sims.insert(pair_key(noun, other), value);
                }
            }
        }
        if self.window.is_full() && changed {
            self.current = Some(self.evaluate());
        }
        Ok(MeterReading {
            seq,
            noun: noun.to_string(),
            changed,
            measures: self.current.filter(|_| self.window.is_full()),
        })
    }

    fn evaluate(&self) -> WindowMeasures {
        let members = &self.window.members;
        let mut ic_sum = 0.0;
        for m in members {
            ic_sum += self.ic[m];
        }
        let (mut sim_sum, mut ok, mut failed) = (0.0, 0usize, 0usize);
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                match self.sims[&pair_key(&members[i], &members[j])] {
                    Some(v) => {
                        sim_sum += v;
                        ok += 1;
                    }
                    None => failed += 1,
                }
            }
        }
        WindowMeasures {
            mean_ic: ic_sum / members.len() as f64,
            mean_sim: if ok == 0 { f64::NAN } else { sim_sum / ok as f64 },
            failed_pairs: failed,
        }
    }
}
