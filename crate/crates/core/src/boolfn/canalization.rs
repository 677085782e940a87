//! Canalizing variables and the unique layered (stratified) form.
//!
//! Every function `f ≢ 0` can be written uniquely as
//! `M1(M2(…(Mr·core + 1)…) + 1) + q` where each `Mi` is a product of factors
//! `(x + a)`. Setting any variable of layer `i` to its canalizing input `a`
//! zeroes `Mi` and forces the output to `q + (i - 1)`; when no layer variable
//! canalizes, the output is `core + (r - 1) + q`. A function is nested
//! canalizing exactly when its core is the constant 1 and every input is
//! used.

use std::fmt;

use super::{row_of, BooleanFunction};
use crate::error::{Error, Result};

/// `x_var = input` forces the function to `output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanalizingPair {
    pub var: usize,
    pub input: bool,
    pub output: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayerEntry {
    pub var: usize,
    pub input: bool,
}

/// One extended monomial of the layered form. Entries are sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanalizingLayer {
    pub entries: Vec<LayerEntry>,
    pub output: bool,
}

impl CanalizingLayer {
    pub fn new(mut entries: Vec<LayerEntry>, output: bool) -> Self {
        entries.sort();
        Self { entries, output }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.var)
    }

    pub fn contains(&self, var: usize) -> bool {
        self.entries.iter().any(|e| e.var == var)
    }

    /// `(variable, canalizing input, canalized output)` triples.
    pub fn triples(&self) -> impl Iterator<Item = (usize, bool, bool)> + '_ {
        self.entries.iter().map(move |e| (e.var, e.input, self.output))
    }

    fn fires(&self, x: &[bool]) -> bool {
        self.entries.iter().any(|e| x[e.var] == e.input)
    }
}

/// Sizes `(k1, …, kr)` of the layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayerStructure(Vec<usize>);

impl LayerStructure {
    /// Any vector of positive sizes; the empty vector describes a
    /// non-canalizing function.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::LayerStructure { sizes, reason: "layer sizes must be positive" });
        }
        Ok(Self(sizes))
    }

    /// A structure that some nested canalizing function has: non-empty,
    /// and the last layer holds at least two variables unless the function
    /// has a single input.
    pub fn ncf(sizes: Vec<usize>) -> Result<Self> {
        let ls = Self::new(sizes)?;
        ls.validate_ncf()?;
        Ok(ls)
    }

    pub fn validate_ncf(&self) -> Result<()> {
        let reason = match self.0.as_slice() {
            [] => Some("a nested canalizing function has at least one layer"),
            [1] => None,
            [.., last] if *last < 2 => Some("the last layer must hold at least two variables"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::LayerStructure { sizes: self.0.clone(), reason }),
            None => Ok(()),
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The nested canalizing function with this structure whose variables
    /// fill the layers in order, all canalizing inputs 0 and offset 0.
    pub fn representative(&self) -> Result<BooleanFunction> {
        self.validate_ncf()?;
        let mut next = 0;
        let layers: Vec<CanalizingLayer> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let entries = (next..next + k).map(|var| LayerEntry { var, input: false }).collect();
                next += k;
                CanalizingLayer::new(entries, i % 2 == 1)
            })
            .collect();
        let default = !layers.last().expect("non-empty").output;
        Ok(nested_function(self.depth(), &layers, default))
    }
}

impl fmt::Display for LayerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Result of [`stratify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanalizationReport {
    pub arity: usize,
    pub layers: Vec<CanalizingLayer>,
    /// Essential variables not in any layer, ascending.
    pub core_vars: Vec<usize>,
    /// The core polynomial as a function of `core_vars`; constant 1 (of
    /// arity 0) for nested canalizing functions.
    pub core: BooleanFunction,
    pub constant_offset: bool,
    /// Declared variables the function does not depend on.
    pub inert: Vec<usize>,
}

impl CanalizationReport {
    pub fn depth(&self) -> usize {
        self.layers.iter().map(CanalizingLayer::len).sum()
    }

    pub fn layer_structure(&self) -> LayerStructure {
        LayerStructure(self.layers.iter().map(CanalizingLayer::len).collect())
    }

    pub fn core_is_one(&self) -> bool {
        self.core_vars.is_empty() && self.core.is_constant() == Some(true)
    }

    pub fn is_nested_canalizing(&self) -> bool {
        self.arity > 0 && self.inert.is_empty() && self.core_is_one()
    }

    /// Layer index and canalizing input of `var`, if it is layered.
    pub fn locate(&self, var: usize) -> Option<(usize, bool)> {
        self.layers.iter().enumerate().find_map(|(i, layer)| {
            layer.entries.iter().find(|e| e.var == var).map(|e| (i, e.input))
        })
    }

    /// Rebuilds the truth table from the layered form.
    pub fn to_function(&self) -> BooleanFunction {
        let r = self.layers.len();
        let flip = r > 0 && ((r - 1) % 2 == 1) ^ self.constant_offset;
        let mut core_x = vec![false; self.core_vars.len()];
        BooleanFunction::from_fn(self.arity, |x| {
            if let Some(layer) = self.layers.iter().find(|l| l.fires(x)) {
                return layer.output;
            }
            for (slot, &v) in core_x.iter_mut().zip(&self.core_vars) {
                *slot = x[v];
            }
            self.core.bit(row_of(&core_x)) ^ flip
        })
        .expect("arity already validated")
    }
}

/// Evaluates layers in order; `default` when none fires.
pub(crate) fn nested_function(
    arity: usize,
    layers: &[CanalizingLayer],
    default: bool,
) -> BooleanFunction {
    BooleanFunction::from_fn(arity, |x| {
        layers.iter().find(|l| l.fires(x)).map_or(default, |l| l.output)
    })
    .expect("arity already validated")
}

/// Constant value of `f` on the rows where `var` equals `input`, if any.
fn constant_on_slice(f: &BooleanFunction, var: usize, input: bool) -> Option<bool> {
    let mask = f.var_mask(var);
    let want = if input { mask } else { 0 };
    let mut rows = (0..f.table().len()).filter(|r| r & mask == want);
    let first = f.bit(rows.next()?);
    rows.all(|r| f.bit(r) == first).then_some(first)
}

/// Every `(i, a, b)` such that fixing input `i` to `a` forces output `b`.
/// Sorted by variable, then input.
pub fn canalizing_pairs(f: &BooleanFunction) -> Result<Vec<CanalizingPair>> {
    if f.is_constant().is_some() {
        return Err(Error::DegenerateFunction("canalization is undefined for constants"));
    }
    let mut pairs = Vec::new();
    for var in 0..f.arity() {
        for input in [false, true] {
            if let Some(output) = constant_on_slice(f, var, input) {
                pairs.push(CanalizingPair { var, input, output });
            }
        }
    }
    Ok(pairs)
}

/// Computes the unique layered form by peeling off, at each step, every
/// variable that canalizes the current function.
pub fn stratify(f: &BooleanFunction) -> Result<CanalizationReport> {
    let (mut vars, mut cur) = f.prune_inert();
    let inert = f.inert_variables();
    match cur.is_constant() {
        Some(false) => return Err(Error::ZeroFunction),
        Some(true) => {
            return Ok(CanalizationReport {
                arity: f.arity(),
                layers: Vec::new(),
                core_vars: Vec::new(),
                core: BooleanFunction::constant(0, true),
                constant_offset: false,
                inert,
            })
        }
        None => {}
    }

    let mut layers: Vec<CanalizingLayer> = Vec::new();
    loop {
        if cur.is_constant().is_some() {
            // Nested canalizing: nothing is left for the core.
            vars.clear();
            cur = BooleanFunction::constant(0, true);
            break;
        }
        let mut pairs = canalizing_pairs(&cur)?;
        if pairs.is_empty() {
            break;
        }
        if cur.arity() == 1 {
            // A literal x + a canalizes both ways; keep the reading with
            // output 0 so the offset is 0.
            pairs.retain(|p| !p.output);
        }
        let output = pairs[0].output;
        debug_assert!(pairs.iter().all(|p| p.output == output));
        let mut values = vec![false; cur.arity()];
        for p in &pairs {
            values[p.var] = !p.input;
        }
        let layered: Vec<usize> = pairs.iter().map(|p| p.var).collect();
        let entries = pairs.iter().map(|p| LayerEntry { var: vars[p.var], input: p.input }).collect();
        layers.push(CanalizingLayer::new(entries, output));

        let kept: Vec<usize> = (0..cur.arity()).filter(|v| !layered.contains(v)).collect();
        cur = cur.restrict_to(&kept, &values);
        vars = kept.iter().map(|&v| vars[v]).collect();
    }

    let r = layers.len();
    let constant_offset = layers.first().is_some_and(|l| l.output);
    let core = if r > 0 && (((r - 1) % 2 == 1) ^ constant_offset) && !vars.is_empty() {
        cur.complement()
    } else {
        cur
    };
    Ok(CanalizationReport { arity: f.arity(), layers, core_vars: vars, core, constant_offset, inert })
}

/// True when `f` is nested canalizing in all of its declared inputs.
pub fn is_nested_canalizing(f: &BooleanFunction) -> bool {
    if f.arity() == 0 || f.is_constant().is_some() {
        return false;
    }
    stratify(f).is_ok_and(|r| r.is_nested_canalizing())
}
