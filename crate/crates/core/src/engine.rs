use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use crate::rank::RankSummary;
use crate::term::{Term, Tri};

/// Analysis bounds shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Stages of a generated sequence examined before answering `unknown`.
    pub horizon: usize,
    /// Copies kept of an infinite multiplicity when truncating.
    pub width: usize,
    /// Largest shift period tried on generated sequences.
    pub shift_bound_generated: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            horizon: 16,
            width: 3,
            shift_bound_generated: 8,
        }
    }
}

/// Holds the configuration and the memo tables. Not shared across threads;
/// create one per worker.
#[derive(Default)]
pub struct Engine {
    pub cfg: Config,
    pub(crate) embed_memo: RefCell<HashMap<(Term, Term), Tri>>,
    pub(crate) embed_active: RefCell<HashSet<(Term, Term)>>,
    pub(crate) rank_memo: RefCell<HashMap<Term, RankSummary>>,
}

impl Engine {
    pub fn new(cfg: Config) -> Self {
        Engine {
            cfg,
            ..Default::default()
        }
    }

    pub fn with_horizon(horizon: usize) -> Self {
        Self::new(Config {
            horizon,
            ..Config::default()
        })
    }
}
