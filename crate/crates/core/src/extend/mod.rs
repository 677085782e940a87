//! Restrictions and extensions of Boolean functions, with exact extension
//! counts for arbitrary functions and for nested canalizing functions.

mod ncf;

pub use ncf::{
    apply_placement, count_ncf_extensions, count_ncf_extensions_of, count_ncf_extensions_one,
    ncf_frontier, ncf_placements, NcfPlacement, PlacementKind,
};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::boolfn::{is_nested_canalizing, stratify, BooleanFunction};
use crate::error::{Error, Result};

/// Counts are exact and unbounded.
pub type ExtensionCount = BigUint;

/// Largest `n + q` accepted by [`count_extensions_general`]; the count has
/// `2^(n+q)` bits.
pub const MAX_GENERAL_COUNT_INPUTS: usize = 20;

/// Largest `n + q` accepted by [`enumerate_extensions_brute`].
pub const MAX_BRUTE_INPUTS: usize = 4;

/// Which inputs survive a restriction, and the values substituted for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub kept: Vec<usize>,
    pub assignment: BTreeMap<usize, bool>,
}

impl Restriction {
    pub fn new(kept: Vec<usize>, assignment: BTreeMap<usize, bool>) -> Self {
        Self { kept, assignment }
    }

    fn validate(&self, arity: usize) -> Result<()> {
        if self.kept.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Partition(format!("kept inputs {:?} must be strictly increasing", self.kept)));
        }
        for v in 0..arity {
            let kept = self.kept.binary_search(&v).is_ok();
            let assigned = self.assignment.contains_key(&v);
            if kept == assigned {
                let why = if kept { "both kept and assigned" } else { "neither kept nor assigned" };
                return Err(Error::Partition(format!("input {v} is {why}")));
            }
        }
        if let Some(v) = self.kept.iter().chain(self.assignment.keys()).find(|&&v| v >= arity) {
            return Err(Error::Partition(format!("input {v} out of range for arity {arity}")));
        }
        Ok(())
    }
}

/// Substitutes the assigned values; the kept inputs keep their relative order.
pub fn restrict(f: &BooleanFunction, r: &Restriction) -> Result<BooleanFunction> {
    r.validate(f.arity())?;
    let mut values = vec![false; f.arity()];
    for (&v, &b) in &r.assignment {
        values[v] = b;
    }
    Ok(f.restrict_to(&r.kept, &values))
}

/// Restriction of a nested canalizing function to `kept` (ascending), where
/// each dropped input takes its non-canalizing value.
///
/// Inputs are dropped one at a time, reading the canalizing input of the
/// next dropped variable from the layered form of the current function, so
/// the result stays nested canalizing in every kept input. Dropping every
/// input yields the constant the function takes when no input canalizes
/// (1 for a single literal).
pub fn restrict_ncf(f: &BooleanFunction, kept: &[usize]) -> Result<BooleanFunction> {
    if !is_nested_canalizing(f) {
        return Err(Error::NotNestedCanalizing(
            "; restrict it with an explicit assignment instead".into(),
        ));
    }
    let n = f.arity();
    if kept.windows(2).any(|w| w[0] >= w[1]) || kept.iter().any(|&v| v >= n) {
        return Err(Error::Partition(format!("kept inputs {kept:?} invalid for arity {n}")));
    }
    if kept.is_empty() {
        let report = stratify(f)?;
        let x: Vec<bool> = (0..n).map(|v| !report.locate(v).expect("every input is layered").1).collect();
        return Ok(BooleanFunction::constant(0, f.evaluate(&x)?));
    }
    let mut cur = f.clone();
    let mut vars: Vec<usize> = (0..n).collect();
    for dropped in (0..n).rev().filter(|v| kept.binary_search(v).is_err()) {
        let pos = vars.iter().position(|&v| v == dropped).expect("not yet dropped");
        let (_, input) = stratify(&cur)?.locate(pos).expect("nested canalizing input is layered");
        cur = cur.fix(pos, !input);
        vars.remove(pos);
    }
    Ok(cur)
}

/// Whether some assignment of `new_vars` (inputs of `g`) turns `g` into `f`.
/// The remaining inputs of `g`, in order, correspond to the inputs of `f`.
pub fn is_extension(g: &BooleanFunction, f: &BooleanFunction, new_vars: &[usize]) -> Result<bool> {
    if g.arity() != f.arity() + new_vars.len() {
        return Err(Error::Arity { expected: f.arity() + new_vars.len(), actual: g.arity() });
    }
    let mut sorted = new_vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != new_vars.len() || sorted.iter().any(|&v| v >= g.arity()) {
        return Err(Error::Partition(format!("new inputs {new_vars:?} invalid for arity {}", g.arity())));
    }
    let kept: Vec<usize> = (0..g.arity()).filter(|v| sorted.binary_search(v).is_err()).collect();
    let mut values = vec![false; g.arity()];
    for c in 0..1usize << new_vars.len() {
        for (j, &v) in new_vars.iter().enumerate() {
            values[v] = c >> j & 1 == 1;
        }
        if g.restrict_to(&kept, &values) == *f {
            return Ok(true);
        }
    }
    Ok(false)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of functions on `n + q` inputs having a restriction equal to a
/// given `n`-input function, by inclusion-exclusion over the `2^q` sections.
/// `q = 0` yields 1.
pub fn count_extensions_general(n: usize, q: usize) -> Result<ExtensionCount> {
    if q == 0 {
        return Ok(BigUint::one());
    }
    if n + q > MAX_GENERAL_COUNT_INPUTS {
        return Err(Error::Resource(format!(
            "n + q = {} exceeds {MAX_GENERAL_COUNT_INPUTS}",
            n + q
        )));
    }
    let sections = 1u64 << q;
    let rows = 1u64 << (n + q);
    let block = 1u64 << n;
    let mut total = BigInt::zero();
    for j in 1..=sections {
        let term = BigInt::from(binomial(sections, j)) << (rows - j * block);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total.to_biguint().expect("inclusion-exclusion total is non-negative"))
}

/// Every function on `n + q` inputs extending `f`, the new inputs being the
/// last `q`. Sorted by truth table.
pub fn enumerate_extensions_brute(f: &BooleanFunction, q: usize) -> Result<Vec<BooleanFunction>> {
    let total = f.arity() + q;
    if total > MAX_BRUTE_INPUTS {
        return Err(Error::Resource(format!(
            "brute-force enumeration over {total} inputs exceeds {MAX_BRUTE_INPUTS}"
        )));
    }
    let new_vars: Vec<usize> = (f.arity()..total).collect();
    let mut found = Vec::new();
    for idx in 0..1u64 << (1 << total) {
        let g = BooleanFunction::from_index(total, idx);
        if is_extension(&g, f, &new_vars)? {
            found.push(g);
        }
    }
    found.sort();
    Ok(found)
}
