//! Execution mode for the data-parallel loops.

use serde::{Deserialize, Serialize};

use crate::elimination::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs sequentially.
    #[default]
    Parallel,
}

/// Knobs shared by the higher-level checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Reduction-step budget for each Gröbner basis.
    pub budget: u64,
    pub exec: Exec,
    /// Largest number-field degree used when enumerating points.
    pub max_ext_degree: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
            max_ext_degree: 2,
        }
    }
}

impl Settings {
    pub fn sequential() -> Settings {
        Settings {
            exec: Exec::Sequential,
            ..Settings::default()
        }
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
