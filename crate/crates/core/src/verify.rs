//! Formula-versus-enumeration checks small enough to run on demand.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::boolfn::{is_nested_canalizing, BooleanFunction, LayerStructure};
use crate::error::{Error, Result};
use crate::extend::{
    apply_placement, count_extensions_general, count_ncf_extensions, enumerate_extensions_brute,
    is_extension, ncf_placements, restrict_ncf,
};
use crate::network::{count_graphical_compositions, count_network_extensions, BooleanNetwork, ExtensionMode};

/// Names accepted by [`run_checks`], in run order.
pub const CHECKS: [&str; 6] = [
    "general-counts",
    "ncf-closed-form",
    "ncf-sequence",
    "ncf-brute",
    "graphical-identity",
    "network-counts",
];

/// Extension counts of a two-variable nested canalizing function by
/// `q = 1, …, 6` new variables.
pub const NCF_SEQUENCE: [u64; 6] = [8, 92, 1328, 22992, 464384, 10719424];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every check, or only `only`. With `perturb`, the formula side of
/// the general count is off by one, which must make that check fail.
pub fn run_checks(only: Option<&str>, perturb: bool) -> Result<Vec<CheckResult>> {
    if let Some(name) = only {
        if !CHECKS.contains(&name) {
            return Err(Error::UnknownCheck(name.to_string()));
        }
    }
    let mut results = Vec::new();
    for name in CHECKS {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        let (passed, detail) = match name {
            "general-counts" => general_counts(perturb)?,
            "ncf-closed-form" => ncf_closed_form()?,
            "ncf-sequence" => ncf_sequence()?,
            "ncf-brute" => ncf_brute()?,
            "graphical-identity" => graphical_identity()?,
            "network-counts" => network_counts()?,
            _ => unreachable!("listed in CHECKS"),
        };
        results.push(CheckResult { name, passed, detail });
    }
    Ok(results)
}

fn general_counts(perturb: bool) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1)] {
        let f = BooleanFunction::from_fn(n, |x| x.iter().fold(false, |a, &b| a ^ b))?;
        let brute = enumerate_extensions_brute(&f, q)?.len();
        let mut formula = count_extensions_general(n, q)?;
        if perturb {
            formula += 1u8;
        }
        ok &= BigUint::from(brute) == formula;
        parts.push(format!("N({n},{q})={formula}/{brute}"));
    }
    for n in 1..=3 {
        let closed = (BigUint::one() << ((1usize << n) + 1)) - 1u8;
        ok &= count_extensions_general(n, 1)? == closed;
    }
    Ok((ok, parts.join(" ")))
}

/// Every layer structure of a nested canalizing function on `n` inputs.
pub fn ncf_layer_structures(n: usize) -> Vec<LayerStructure> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        (1..=n)
            .flat_map(|k| compositions(n - k).into_iter().map(move |rest| [vec![k], rest].concat()))
            .collect()
    }
    compositions(n).into_iter().filter_map(|c| LayerStructure::ncf(c).ok()).collect()
}

fn ncf_closed_form() -> Result<(bool, String)> {
    let mut ok = true;
    let mut checked = 0;
    for n in 1..=5 {
        for ls in ncf_layer_structures(n) {
            let f = ls.representative()?;
            let placements = ncf_placements(&f)?;
            let closed: usize = 2 + 2 * ls.sizes().iter().map(|&k| (1usize << k) - 1).sum::<usize>();
            ok &= placements.len() == closed;
            ok &= count_ncf_extensions(&ls, 1)? == BigUint::from(closed);
            let mut seen = BTreeSet::new();
            let kept: Vec<usize> = (0..n).collect();
            for p in &placements {
                let g = apply_placement(&f, p, n)?;
                ok &= is_nested_canalizing(&g) && restrict_ncf(&g, &kept)? == f && seen.insert(g);
            }
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} layer structures")))
}

/// Number of nested canalizing functions on `n ≥ 2` inputs: each layer
/// structure contributes one multinomial coefficient for the assignment of
/// inputs to layers, times `2^n` canalizing inputs and 2 first outputs.
pub fn ncf_function_count(n: usize) -> BigUint {
    let factorial = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
    let sum: BigUint = ncf_layer_structures(n)
        .iter()
        .map(|ls| ls.sizes().iter().fold(factorial(n), |acc, &k| acc / factorial(k)))
        .sum();
    sum << (n + 1)
}

fn ncf_sequence() -> Result<(bool, String)> {
    let ls = LayerStructure::ncf(vec![2])?;
    let mut values = Vec::new();
    for q in 1..=NCF_SEQUENCE.len() {
        values.push(count_ncf_extensions(&ls, q)?);
    }
    // The 8 two-input NCFs split the NCFs on q + 2 inputs evenly between them.
    let ok = values.iter().enumerate().all(|(i, v)| {
        *v == BigUint::from(NCF_SEQUENCE[i]) && v * 8u8 == ncf_function_count(i + 3)
    });
    let text: Vec<String> = values.iter().map(ToString::to_string).collect();
    Ok((ok, text.join(", ")))
}

/// Nested canalizing functions on `n + q` inputs whose restriction to the
/// first `n` inputs is `f`, counted over all truth tables.
pub fn brute_ncf_extensions(f: &BooleanFunction, q: usize) -> Result<u64> {
    let total = f.arity() + q;
    let kept: Vec<usize> = (0..f.arity()).collect();
    let mut count = 0;
    for idx in 0..1u64 << (1 << total) {
        let g = BooleanFunction::from_index(total, idx);
        if is_nested_canalizing(&g) && restrict_ncf(&g, &kept)? == *f {
            count += 1;
        }
    }
    Ok(count)
}

fn ncf_brute() -> Result<(bool, String)> {
    let and2 = BooleanFunction::from_bits("0001")?;
    let one = brute_ncf_extensions(&and2, 1)?;
    let two = brute_ncf_extensions(&and2, 2)?;
    Ok((one == NCF_SEQUENCE[0] && two == NCF_SEQUENCE[1], format!("q=1: {one}, q=2: {two}")))
}

fn graphical_identity() -> Result<(bool, String)> {
    let mut ok = true;
    let mut checked = 0;
    for z in [2u8, 3] {
        for m in 1..=4u32 {
            for code in 0..3usize.pow(m) {
                let sizes: Vec<usize> = (0..m).map(|i| code / 3usize.pow(i) % 3 + 1).collect();
                let (by_graphs, closed) = count_graphical_compositions(&sizes, z)?;
                ok &= by_graphs == closed;
                checked += 1;
            }
        }
    }
    Ok((ok, format!("{checked} size tuples")))
}

/// Extensions of a one-node network `x ↦ g(x)` by one upstream node `u`,
/// counted over both regulator sets of the node: `{x}` and `{x, u}`.
pub fn brute_network_extensions(g: &BooleanFunction, ncf_only: bool) -> Result<u64> {
    let mut count = 0;
    for idx in 0..1u64 << (1 << g.arity()) {
        let h = BooleanFunction::from_index(g.arity(), idx);
        count += u64::from(h == *g);
    }
    let wide = g.arity() + 1;
    let kept: Vec<usize> = (0..g.arity()).collect();
    for idx in 0..1u64 << (1 << wide) {
        let h = BooleanFunction::from_index(wide, idx);
        let hit = if ncf_only {
            is_nested_canalizing(&h) && restrict_ncf(&h, &kept)? == *g
        } else {
            is_extension(&h, g, &[g.arity()])?
        };
        count += u64::from(hit);
    }
    Ok(count)
}

fn network_counts() -> Result<(bool, String)> {
    let x = BooleanFunction::variable(1, 0);
    let g = BooleanNetwork::from_rules(vec![("x".to_string(), vec!["x"], x.clone())])?;
    let ncf = count_network_extensions(1, &g, ExtensionMode::Ncf)?;
    let general = count_network_extensions(1, &g, ExtensionMode::General)?;
    let ncf_brute = brute_network_extensions(&x, true)?;
    let general_brute = brute_network_extensions(&x, false)?;
    let ok = ncf == BigUint::from(ncf_brute) && general == BigUint::from(general_brute);
    Ok((ok, format!("ncf {ncf}/{ncf_brute}, general {general}/{general_brute}")))
}
