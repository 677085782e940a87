//! Truth-table Boolean functions and their canalization structure.
//!
//! A [`BooleanFunction`] on `n` ordered inputs stores `2^n` output bits. Row
//! `r` of the table is the input assignment obtained by writing `r` in binary
//! with `n` digits, the most significant digit going to the first input. With
//! this convention lexicographic order on assignments matches row order, so
//! `x1 AND x2` has table `0001`.

mod anf;
mod canalization;

pub use anf::{anf, Anf, Monomial};
pub use canalization::{
    canalizing_pairs, is_nested_canalizing, stratify, CanalizationReport, CanalizingLayer,
    CanalizingPair, LayerEntry, LayerStructure,
};
pub(crate) use canalization::nested_function;

use std::fmt;

use crate::error::{Error, Result};

/// Largest arity accepted by the truth-table constructors.
pub const MAX_ARITY: usize = 24;

/// A Boolean function given by its full truth table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    arity: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_table(arity: usize, table: Vec<bool>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        if table.len() != 1 << arity {
            return Err(Error::Table(format!(
                "{} rows supplied for arity {arity} (expected {})",
                table.len(),
                1usize << arity
            )));
        }
        Ok(Self { arity, table })
    }

    /// Parses a table written as a string of `0`/`1` characters, row 0 first.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let table = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Table(format!("unexpected character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(Error::Table(format!("length {len} is not a power of two")));
        }
        Self::from_table(len.trailing_zeros() as usize, table)
    }

    /// Builds the table by evaluating `f` on every assignment.
    pub fn from_fn(arity: usize, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        let mut assignment = vec![false; arity];
        let table = (0..1usize << arity)
            .map(|row| {
                fill_assignment(row, &mut assignment);
                f(&assignment)
            })
            .collect();
        Ok(Self { arity, table })
    }

    /// The `index`-th function of the given arity, where bit `r` of `index`
    /// is the output on row `r`. Only meaningful for arity ≤ 6.
    pub fn from_index(arity: usize, index: u64) -> Self {
        assert!(arity <= 6, "from_index supports arity ≤ 6");
        let table = (0..1usize << arity).map(|r| index >> r & 1 == 1).collect();
        Self { arity, table }
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        assert!(arity <= MAX_ARITY);
        Self { arity, table: vec![value; 1 << arity] }
    }

    /// The projection onto input `var`.
    pub fn variable(arity: usize, var: usize) -> Self {
        assert!(var < arity);
        Self::from_fn(arity, |x| x[var]).expect("arity checked")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Output on row `row`.
    pub fn bit(&self, row: usize) -> bool {
        self.table[row]
    }

    /// Inverse of [`from_index`](Self::from_index).
    pub fn index(&self) -> u64 {
        assert!(self.arity <= 6);
        self.table
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &b)| acc | (u64::from(b) << r))
    }

    /// Assignment of all inputs on row `row`.
    pub fn assignment(&self, row: usize) -> Vec<bool> {
        let mut x = vec![false; self.arity];
        fill_assignment(row, &mut x);
        x
    }

    pub fn to_bitstring(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Mask selecting input `var` within a row index.
    pub(crate) fn var_mask(&self, var: usize) -> usize {
        1 << (self.arity - 1 - var)
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, actual: assignment.len() });
        }
        Ok(self.table[row_of(assignment)])
    }

    pub fn is_constant(&self) -> Option<bool> {
        let first = self.table[0];
        self.table.iter().all(|&b| b == first).then_some(first)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        let mask = self.var_mask(var);
        (0..self.table.len())
            .filter(|r| r & mask == 0)
            .any(|r| self.table[r] != self.table[r | mask])
    }

    /// Inputs whose flip changes the output for some assignment, ascending.
    pub fn essential_variables(&self) -> Vec<usize> {
        (0..self.arity).filter(|&v| self.depends_on(v)).collect()
    }

    /// Declared inputs the function does not depend on.
    pub fn inert_variables(&self) -> Vec<usize> {
        (0..self.arity).filter(|&v| !self.depends_on(v)).collect()
    }

    /// Substitutes `value` for input `var`; the result has arity `n - 1`
    /// with the remaining inputs in their original order.
    pub fn fix(&self, var: usize, value: bool) -> BooleanFunction {
        assert!(var < self.arity);
        let low_bits = self.arity - 1 - var;
        let low_mask = (1usize << low_bits) - 1;
        let table = (0..1usize << (self.arity - 1))
            .map(|r| {
                let high = (r >> low_bits) << (low_bits + 1);
                let fixed = usize::from(value) << low_bits;
                self.table[high | fixed | (r & low_mask)]
            })
            .collect();
        BooleanFunction { arity: self.arity - 1, table }
    }

    /// Keeps the inputs in `kept` (ascending) and substitutes `values[v]`
    /// for every other input `v`.
    pub(crate) fn restrict_to(&self, kept: &[usize], values: &[bool]) -> BooleanFunction {
        let k = kept.len();
        let mut base = 0usize;
        for (v, &value) in values.iter().enumerate().take(self.arity) {
            if !kept.contains(&v) && value {
                base |= self.var_mask(v);
            }
        }
        let masks: Vec<usize> = kept.iter().map(|&v| self.var_mask(v)).collect();
        let table = (0..1usize << k)
            .map(|r| {
                let mut row = base;
                for (j, &m) in masks.iter().enumerate() {
                    if r >> (k - 1 - j) & 1 == 1 {
                        row |= m;
                    }
                }
                self.table[row]
            })
            .collect();
        BooleanFunction { arity: k, table }
    }

    /// Projects onto the essential inputs, returning them with the projected function.
    pub fn prune_inert(&self) -> (Vec<usize>, BooleanFunction) {
        let kept = self.essential_variables();
        let zeros = vec![false; self.arity];
        let projected = self.restrict_to(&kept, &zeros);
        (kept, projected)
    }

    /// Reorders inputs: input `i` of the result is input `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<BooleanFunction> {
        if order.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, actual: order.len() });
        }
        let mut seen = vec![false; self.arity];
        for &v in order {
            if v >= self.arity || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Partition(format!("{order:?} is not a permutation")));
            }
        }
        let mut src = vec![false; self.arity];
        BooleanFunction::from_fn(self.arity, |x| {
            for (i, &v) in order.iter().enumerate() {
                src[v] = x[i];
            }
            self.table[row_of(&src)]
        })
    }

    /// Embeds the function into a larger input list: input `i` of `self`
    /// becomes input `positions[i]` of a function with `arity` inputs.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Result<BooleanFunction> {
        if positions.len() != self.arity {
            return Err(Error::Arity { expected: self.arity, actual: positions.len() });
        }
        if positions.iter().any(|&p| p >= arity) {
            return Err(Error::Partition(format!("positions {positions:?} exceed arity {arity}")));
        }
        let mut local = vec![false; self.arity];
        BooleanFunction::from_fn(arity, |x| {
            for (i, &p) in positions.iter().enumerate() {
                local[i] = x[p];
            }
            self.table[row_of(&local)]
        })
    }

    pub fn complement(&self) -> BooleanFunction {
        BooleanFunction { arity: self.arity, table: self.table.iter().map(|b| !b).collect() }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::Arity { expected: self.arity, actual: other.arity });
        }
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| op(a, b)).collect();
        Ok(BooleanFunction { arity: self.arity, table })
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a ^ b)
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({}; {})", self.arity, self.to_bitstring())
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// Row index of an assignment under the first-input-is-most-significant convention.
pub fn row_of(assignment: &[bool]) -> usize {
    assignment.iter().fold(0, |acc, &b| acc << 1 | usize::from(b))
}

pub(crate) fn fill_assignment(row: usize, out: &mut [bool]) {
    let n = out.len();
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = row >> (n - 1 - i) & 1 == 1;
    }
}

/// Essential inputs of `f`; free-function form of
/// [`BooleanFunction::essential_variables`].
pub fn essential_variables(f: &BooleanFunction) -> Vec<usize> {
    f.essential_variables()
}
