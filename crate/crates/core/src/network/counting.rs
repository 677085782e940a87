use num_bigint::BigUint;
use num_traits::One;

use super::BooleanNetwork;
use crate::boolfn::is_nested_canalizing;
use crate::error::{Error, Result};
use crate::extend::{count_extensions_general, count_ncf_extensions_of, ExtensionCount};

/// Which extensions of each coordinate are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Every Boolean function.
    General,
    /// Nested canalizing functions only.
    Ncf,
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of ways to extend `g` by `m` upstream nodes: every coordinate
/// independently chooses which `q` of the new nodes it reads and one of
/// its `N_q` extensions by them, giving `Π_i Σ_q C(m, q) N_q(g_i)`.
pub fn count_network_extensions(m: usize, g: &BooleanNetwork, mode: ExtensionMode) -> Result<ExtensionCount> {
    let mut total = BigUint::one();
    for node in g.nodes() {
        if mode == ExtensionMode::Ncf && !is_nested_canalizing(&node.function) {
            return Err(Error::NotNestedCanalizing(format!(" (node `{}`)", node.name)));
        }
        let mut sum = BigUint::default();
        for q in 0..=m {
            let n_q = match mode {
                ExtensionMode::General => count_extensions_general(node.function.arity(), q)?,
                ExtensionMode::Ncf => count_ncf_extensions_of(&node.function, q)?,
            };
            sum += binomial(m, q) * n_q;
        }
        total *= sum;
    }
    Ok(total)
}
