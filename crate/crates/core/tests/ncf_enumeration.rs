//! Every nested canalizing function on a few inputs, generated from its
//! layered form, and the count of those that restrict to `x1 AND x2`.

use std::collections::HashSet;

use boolnet::boolfn::{is_nested_canalizing, BooleanFunction, LayerStructure};
use boolnet::extend::{count_ncf_extensions, restrict_ncf};
use boolnet::verify::ncf_function_count;
use num_bigint::BigUint;

/// Layers of `(variable, canalizing input)`, the first layer's output, and
/// the outputs alternating after it.
#[derive(Clone)]
struct Layered {
    layers: Vec<Vec<(usize, bool)>>,
    first: bool,
}

impl Layered {
    fn output(&self, layer: usize) -> bool {
        self.first ^ (layer % 2 == 1)
    }

    fn eval(&self, x: &[bool]) -> bool {
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.iter().any(|&(v, a)| x[v] == a) {
                return self.output(i);
            }
        }
        !self.output(self.layers.len() - 1)
    }

    fn table(&self, n: usize) -> u64 {
        (0..1usize << n).fold(0, |acc, r| {
            let x: Vec<bool> = (0..n).map(|v| r >> (n - 1 - v) & 1 == 1).collect();
            acc | u64::from(self.eval(&x)) << r
        })
    }

    /// Sets `v` to its non-canalizing value and restores the canonical form.
    fn drop_var(&mut self, v: usize) {
        let l = self.layers.iter().position(|layer| layer.iter().any(|&(u, _)| u == v)).unwrap();
        self.layers[l].retain(|&(u, _)| u != v);
        if self.layers[l].is_empty() {
            if l == 0 {
                self.layers.remove(0);
                self.first = !self.first;
            } else if l + 1 < self.layers.len() {
                let next = self.layers.remove(l + 1);
                self.layers.remove(l);
                self.layers[l - 1].extend(next);
            } else {
                self.layers.remove(l);
            }
        }
        let r = self.layers.len();
        if r >= 2 && self.layers[r - 1].len() == 1 {
            let (u, a) = self.layers.pop().unwrap()[0];
            self.layers[r - 2].push((u, !a));
        }
    }
}

/// All layered forms on `n ≥ 2` inputs with a last layer of two or more.
fn all_layered(n: usize) -> Vec<Layered> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let layer_of: Vec<usize> = (0..n).map(|v| code / n.pow(v as u32) % n).collect();
        let r = layer_of.iter().max().unwrap() + 1;
        let sizes: Vec<usize> = (0..r).map(|l| layer_of.iter().filter(|&&x| x == l).count()).collect();
        if sizes.contains(&0) || sizes[r - 1] < 2 {
            continue;
        }
        for signs in 0..1usize << n {
            for first in [false, true] {
                let mut layers = vec![Vec::new(); r];
                for v in 0..n {
                    layers[layer_of[v]].push((v, signs >> v & 1 == 1));
                }
                out.push(Layered { layers, first });
            }
        }
    }
    out
}

fn and2() -> BooleanFunction {
    BooleanFunction::from_bits("0001").unwrap()
}

#[test]
fn generator_matches_truth_table_search() {
    let generated: HashSet<u64> = all_layered(4).iter().map(|l| l.table(4)).collect();
    let searched: HashSet<u64> =
        (0..1u64 << 16).filter(|&i| is_nested_canalizing(&BooleanFunction::from_index(4, i))).collect();
    assert_eq!(generated, searched);
    assert_eq!(BigUint::from(generated.len()), ncf_function_count(4));
}

#[test]
fn layered_forms_are_unique() {
    for n in 2..=5 {
        let forms = all_layered(n);
        let distinct: HashSet<u64> = forms.iter().map(|l| l.table(n)).collect();
        assert_eq!(distinct.len(), forms.len());
        assert_eq!(BigUint::from(forms.len()), ncf_function_count(n));
    }
}

#[test]
fn five_input_extensions_of_and() {
    let target = and2();
    let mut by_library = 0u64;
    let mut by_layers = 0u64;
    for form in all_layered(5) {
        let g = BooleanFunction::from_index(5, form.table(5));
        let restricted = restrict_ncf(&g, &[0, 1]).unwrap();
        let mut reduced = form.clone();
        for v in (2..5).rev() {
            reduced.drop_var(v);
        }
        let by_form = BooleanFunction::from_fn(2, |x| {
            let mut full = x.to_vec();
            full.resize(5, false);
            reduced.eval(&full)
        })
        .unwrap();
        assert_eq!(restricted, by_form);
        by_library += u64::from(restricted == target);
        by_layers += u64::from(by_form == target);
    }
    assert_eq!(by_library, 1328);
    assert_eq!(by_layers, 1328);
    let dp = count_ncf_extensions(&LayerStructure::ncf(vec![2]).unwrap(), 3).unwrap();
    assert_eq!(dp, BigUint::from(by_library));
}

#[test]
fn six_input_extensions_of_and() {
    let mut hits = 0u64;
    let mut by_library = 0u64;
    let target = and2();
    for mut form in all_layered(6) {
        let g = BooleanFunction::from_index(6, form.table(6));
        by_library += u64::from(restrict_ncf(&g, &[0, 1]).unwrap() == target);
        for v in (2..6).rev() {
            form.drop_var(v);
        }
        let is_and = form.layers.len() == 1
            && !form.first
            && form.layers[0].iter().all(|&(_, a)| !a);
        hits += u64::from(is_and);
    }
    assert_eq!(hits, 22992);
    assert_eq!(by_library, 22992);
    let dp = count_ncf_extensions(&LayerStructure::ncf(vec![2]).unwrap(), 4).unwrap();
    assert_eq!(dp, BigUint::from(hits));
}
