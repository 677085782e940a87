//! One-variable extensions of nested canalizing functions.
//!
//! A new input `y` joins a nested canalizing function in one of three ways:
//! as a new outermost layer, as an extra member of an existing layer, or by
//! splitting a layer with at least two members, in which case the demoted
//! members form a new layer after `y`. Each move comes with two choices of
//! canalizing input for `y`. Removing `y` again (setting it to its
//! non-canalizing value) undoes the move, and distinct moves give distinct
//! functions, so counting moves counts extensions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::ExtensionCount;
use crate::boolfn::{
    is_nested_canalizing, nested_function, stratify, BooleanFunction, CanalizingLayer,
    LayerEntry, LayerStructure,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlacementKind {
    /// New outermost layer.
    InitialLayer,
    /// Join layer `layer` (0-based).
    LayerAddition { layer: usize },
    /// Split layer `layer`; `demoted` (inputs of the base function) move
    /// below the new variable.
    Split { layer: usize, demoted: Vec<usize> },
}

/// A legal way to add one variable to a nested canalizing function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcfPlacement {
    pub kind: PlacementKind,
    /// Canalizing input of the new variable.
    pub input: bool,
}

impl NcfPlacement {
    pub fn initial(input: bool) -> Self {
        Self { kind: PlacementKind::InitialLayer, input }
    }

    pub fn add(layer: usize, input: bool) -> Self {
        Self { kind: PlacementKind::LayerAddition { layer }, input }
    }

    pub fn split(layer: usize, mut demoted: Vec<usize>, input: bool) -> Self {
        demoted.sort_unstable();
        Self { kind: PlacementKind::Split { layer, demoted }, input }
    }

    /// Renders the placement in the `initial:input=b`, `add:layer=i,input=b`,
    /// `split:layer=i,demote=a+b,input=b` syntax, with 1-based layers and
    /// `names` for the base function's inputs.
    pub fn to_spec(&self, names: &[String]) -> String {
        let input = u8::from(self.input);
        match &self.kind {
            PlacementKind::InitialLayer => format!("initial:input={input}"),
            PlacementKind::LayerAddition { layer } => format!("add:layer={},input={input}", layer + 1),
            PlacementKind::Split { layer, demoted } => {
                let names: Vec<&str> = demoted.iter().map(|&v| names[v].as_str()).collect();
                format!("split:layer={},demote={},input={input}", layer + 1, names.join("+"))
            }
        }
    }

    /// Parses the syntax produced by [`to_spec`](Self::to_spec).
    pub fn parse_spec(spec: &str, names: &[String]) -> Result<Self> {
        let bad = |why: &str| Error::Placement(format!("`{spec}`: {why}"));
        let (kind, rest) = spec.split_once(':').ok_or_else(|| bad("expected KIND:KEY=VALUE,..."))?;
        let mut fields = BTreeMap::new();
        for item in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad("expected KEY=VALUE"))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(bad("repeated key"));
            }
        }
        let input = match fields.remove("input") {
            Some("0") => false,
            Some("1") => true,
            Some(_) => return Err(bad("input must be 0 or 1")),
            None => return Err(bad("missing input")),
        };
        let mut layer = || -> Result<usize> {
            let raw = fields.remove("layer").ok_or_else(|| bad("missing layer"))?;
            match raw.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad("layer must be a positive integer")),
            }
        };
        let placement = match kind.trim() {
            "initial" => Self::initial(input),
            "add" => Self::add(layer()?, input),
            "split" => {
                let layer = layer()?;
                let raw = fields.remove("demote").ok_or_else(|| bad("missing demote"))?;
                let demoted = raw
                    .split('+')
                    .map(|name| {
                        names
                            .iter()
                            .position(|n| n == name.trim())
                            .ok_or_else(|| bad(&format!("unknown input `{name}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::split(layer, demoted, input)
            }
            other => return Err(bad(&format!("unknown placement kind `{other}`"))),
        };
        if let Some(key) = fields.keys().next() {
            return Err(bad(&format!("unexpected key `{key}`")));
        }
        Ok(placement)
    }
}

impl fmt::Display for NcfPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..64).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.to_spec(&names))
    }
}

fn require_ncf(f: &BooleanFunction) -> Result<Vec<CanalizingLayer>> {
    if !is_nested_canalizing(f) {
        return Err(Error::NotNestedCanalizing(String::new()));
    }
    Ok(stratify(f)?.layers)
}

/// All legal one-variable placements, in a fixed order: initial layer,
/// then per layer the addition followed by every split (demoted subsets
/// in increasing bitmask order); input 0 before input 1 throughout.
pub fn ncf_placements(f: &BooleanFunction) -> Result<Vec<NcfPlacement>> {
    let layers = require_ncf(f)?;
    let mut kinds = vec![PlacementKind::InitialLayer];
    for (i, layer) in layers.iter().enumerate() {
        kinds.push(PlacementKind::LayerAddition { layer: i });
        let vars: Vec<usize> = layer.vars().collect();
        for mask in 1..(1u64 << vars.len()) - 1 {
            let demoted = vars.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &v)| v).collect();
            kinds.push(PlacementKind::Split { layer: i, demoted });
        }
    }
    Ok(kinds
        .into_iter()
        .flat_map(|kind| [false, true].map(|input| NcfPlacement { kind: kind.clone(), input }))
        .collect())
}

/// Adds a variable to `f` according to `p`. The new variable becomes input
/// `new_var` of the result (`0..=n`); `f`'s inputs keep their order around it.
pub fn apply_placement(f: &BooleanFunction, p: &NcfPlacement, new_var: usize) -> Result<BooleanFunction> {
    let layers = require_ncf(f)?;
    let n = f.arity();
    if new_var > n {
        return Err(Error::Placement(format!("new input position {new_var} exceeds {n}")));
    }
    let shift = |v: usize| if v >= new_var { v + 1 } else { v };
    let shifted = |layer: &CanalizingLayer, keep: &dyn Fn(usize) -> bool| {
        let entries = layer
            .entries
            .iter()
            .filter(|e| keep(e.var))
            .map(|e| LayerEntry { var: shift(e.var), input: e.input })
            .collect();
        CanalizingLayer::new(entries, layer.output)
    };
    let y = LayerEntry { var: new_var, input: p.input };
    let default = !layers.last().expect("nested canalizing").output;
    let mut out: Vec<CanalizingLayer> = Vec::with_capacity(layers.len() + 2);

    match &p.kind {
        PlacementKind::InitialLayer => {
            out.push(CanalizingLayer::new(vec![y], !layers[0].output));
            out.extend(layers.iter().map(|l| shifted(l, &|_| true)));
        }
        PlacementKind::LayerAddition { layer } => {
            if *layer >= layers.len() {
                return Err(Error::Placement(format!("layer {} does not exist", layer + 1)));
            }
            for (i, l) in layers.iter().enumerate() {
                let mut l = shifted(l, &|_| true);
                if i == *layer {
                    l = CanalizingLayer::new([l.entries, vec![y]].concat(), l.output);
                }
                out.push(l);
            }
        }
        PlacementKind::Split { layer, demoted } => {
            let target = layers
                .get(*layer)
                .ok_or_else(|| Error::Placement(format!("layer {} does not exist", layer + 1)))?;
            if target.len() < 2 {
                return Err(Error::Placement(format!("layer {} has a single variable", layer + 1)));
            }
            let mut unique = demoted.clone();
            unique.sort_unstable();
            unique.dedup();
            if unique.len() != demoted.len()
                || demoted.is_empty()
                || demoted.len() >= target.len()
                || !demoted.iter().all(|&v| target.contains(v))
            {
                return Err(Error::Placement(format!(
                    "demoted inputs {demoted:?} are not a non-empty proper subset of layer {}",
                    layer + 1
                )));
            }
            for (i, l) in layers.iter().enumerate() {
                if i == *layer {
                    out.push(shifted(l, &|v| !demoted.contains(&v)));
                    out.push(CanalizingLayer::new(vec![y], !l.output));
                    out.push(shifted(l, &|v| demoted.contains(&v)));
                } else {
                    out.push(shifted(l, &|_| true));
                }
            }
        }
    }
    Ok(nested_function(n + 1, &out, default))
}

/// Successor structures of one added variable, with the number of moves
/// leading to each (not yet doubled for the new variable's input).
fn successors(sizes: &[usize]) -> Vec<(Vec<usize>, BigUint)> {
    let normalize = |mut s: Vec<usize>| {
        // A trailing singleton layer merges into the layer before it.
        if s.len() >= 2 && s[s.len() - 1] == 1 {
            s.pop();
            *s.last_mut().expect("len ≥ 1") += 1;
        }
        s
    };
    let mut out = Vec::new();
    out.push((normalize([&[1], sizes].concat()), BigUint::one()));
    for (i, &k) in sizes.iter().enumerate() {
        let mut added = sizes.to_vec();
        added[i] += 1;
        out.push((added, BigUint::one()));
        let mut ways = BigUint::one();
        for l in 1..k {
            ways = ways * (k - l + 1) / l;
            let split = [&sizes[..i], &[k - l, 1, l], &sizes[i + 1..]].concat();
            out.push((normalize(split), ways.clone()));
        }
    }
    out
}

/// Multiset of layer structures reached after adding `q` variables to a
/// function with structure `ls`, each with its number of addition paths.
pub fn ncf_frontier(ls: &LayerStructure, q: usize) -> Result<BTreeMap<LayerStructure, ExtensionCount>> {
    ls.validate_ncf()?;
    let two = BigUint::from(2u8);
    let mut frontier: BTreeMap<Vec<usize>, BigUint> = BTreeMap::from([(ls.sizes().to_vec(), BigUint::one())]);
    for _ in 0..q {
        let mut next: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (sizes, count) in &frontier {
            for (succ, ways) in successors(sizes) {
                *next.entry(succ).or_insert_with(BigUint::zero) += count * &ways * &two;
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .map(|(sizes, count)| (LayerStructure::ncf(sizes).expect("successors stay valid"), count))
        .collect())
}

/// Number of nested canalizing extensions by `q` variables added in a fixed
/// order. `q = 0` yields 1.
pub fn count_ncf_extensions(ls: &LayerStructure, q: usize) -> Result<ExtensionCount> {
    Ok(ncf_frontier(ls, q)?.into_values().sum())
}

/// Closed form for one added variable: `2 + 2·Σ (2^k_i − 1)`.
pub fn count_ncf_extensions_one(ls: &LayerStructure) -> Result<ExtensionCount> {
    ls.validate_ncf()?;
    let inner: BigUint = ls.sizes().iter().map(|&k| (BigUint::one() << k) - 1u8).sum();
    Ok(BigUint::from(2u8) + inner * 2u8)
}

/// [`count_ncf_extensions`] for the structure of a given function.
pub fn count_ncf_extensions_of(f: &BooleanFunction, q: usize) -> Result<ExtensionCount> {
    require_ncf(f)?;
    count_ncf_extensions(&stratify(f)?.layer_structure(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::restrict_ncf;

    fn ls(sizes: &[usize]) -> LayerStructure {
        LayerStructure::ncf(sizes.to_vec()).unwrap()
    }

    fn sizes_of(f: &BooleanFunction) -> Vec<usize> {
        stratify(f).unwrap().layer_structure().sizes().to_vec()
    }

    #[test]
    fn placement_counts() {
        let and2 = ls(&[2]).representative().unwrap();
        assert_eq!(ncf_placements(&and2).unwrap().len(), 8);
        let f212 = ls(&[2, 1, 2]).representative().unwrap();
        assert_eq!(ncf_placements(&f212).unwrap().len(), 16);
        let x = BooleanFunction::from_bits("01").unwrap();
        assert_eq!(ncf_placements(&x).unwrap().len(), 4);
        let xor = BooleanFunction::from_bits("0110").unwrap();
        assert!(matches!(ncf_placements(&xor), Err(Error::NotNestedCanalizing(_))));
    }

    #[test]
    fn placement_shapes_on_a_conjunction() {
        let and2 = BooleanFunction::from_fn(2, |x| x[0] && x[1]).unwrap();
        let init = apply_placement(&and2, &NcfPlacement::initial(false), 2).unwrap();
        assert_eq!(sizes_of(&init), vec![1, 2]);
        assert_eq!(init, BooleanFunction::from_fn(3, |x| !x[2] || (x[0] && x[1])).unwrap());
        let add = apply_placement(&and2, &NcfPlacement::add(0, true), 2).unwrap();
        assert_eq!(sizes_of(&add), vec![3]);
        let split = apply_placement(&and2, &NcfPlacement::split(0, vec![1], false), 2).unwrap();
        assert_eq!(sizes_of(&split), vec![1, 2]);
        for p in [NcfPlacement::initial(false), NcfPlacement::add(0, true), NcfPlacement::split(0, vec![1], false)] {
            let g = apply_placement(&and2, &p, 2).unwrap();
            assert_eq!(restrict_ncf(&g, &[0, 1]).unwrap(), and2);
        }
    }

    #[test]
    fn illegal_placements() {
        let f = ls(&[1, 2]).representative().unwrap();
        assert!(matches!(apply_placement(&f, &NcfPlacement::add(2, false), 3), Err(Error::Placement(_))));
        assert!(matches!(apply_placement(&f, &NcfPlacement::split(0, vec![0], false), 3), Err(Error::Placement(_))));
        assert!(matches!(apply_placement(&f, &NcfPlacement::split(1, vec![1, 2], false), 3), Err(Error::Placement(_))));
        assert!(matches!(apply_placement(&f, &NcfPlacement::split(1, vec![0], false), 3), Err(Error::Placement(_))));
        assert!(matches!(apply_placement(&f, &NcfPlacement::initial(false), 4), Err(Error::Placement(_))));
    }

    #[test]
    fn new_variable_position_is_respected() {
        let and2 = BooleanFunction::from_fn(2, |x| x[0] && x[1]).unwrap();
        let front = apply_placement(&and2, &NcfPlacement::add(0, false), 0).unwrap();
        let back = apply_placement(&and2, &NcfPlacement::add(0, false), 2).unwrap();
        assert_eq!(front, back.permute(&[2, 0, 1]).unwrap());
        assert_eq!(restrict_ncf(&front, &[1, 2]).unwrap(), and2);
    }

    #[test]
    fn ncf_sequence_from_two_variables() {
        // Every NCF on q + 2 inputs restricts to one of the 8 two-input NCFs,
        // each equally often, so these are the NCF counts 64, 736, … over 8.
        let expected = [8u64, 92, 1328, 22992, 464384, 10719424];
        for (q, &want) in expected.iter().enumerate() {
            assert_eq!(count_ncf_extensions(&ls(&[2]), q + 1).unwrap(), BigUint::from(want));
        }
        assert_eq!(count_ncf_extensions(&ls(&[2]), 0).unwrap(), BigUint::one());
        assert_eq!(count_ncf_extensions(&ls(&[2, 1, 2]), 1).unwrap(), BigUint::from(16u8));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_ncf_extensions_one(&ls(&[2])).unwrap(), BigUint::from(8u8));
        assert_eq!(count_ncf_extensions_one(&ls(&[1, 1, 2])).unwrap(), BigUint::from(12u8));
        assert_eq!(count_ncf_extensions_one(&ls(&[1])).unwrap(), BigUint::from(4u8));
        assert!(count_ncf_extensions_one(&LayerStructure::new(vec![2, 1]).unwrap()).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let f = ls(&[3]).representative().unwrap();
        for p in ncf_placements(&f).unwrap() {
            let spec = p.to_spec(&names);
            assert_eq!(NcfPlacement::parse_spec(&spec, &names).unwrap(), p, "{spec}");
        }
        for bad in ["initial", "add:layer=0,input=1", "split:layer=1,demote=z,input=0", "add:layer=1", "grow:input=1", "initial:input=1,extra=2"] {
            assert!(NcfPlacement::parse_spec(bad, &names).is_err(), "{bad}");
        }
    }
}
