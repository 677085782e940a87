use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::boolfn::{canalizing_pairs, stratify};
use crate::network::{BooleanNetwork, Decomposition};

/// Pretty-printed JSON followed by a newline. Keys keep declaration order.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub name: String,
    pub inputs: Vec<String>,
    pub table: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub nodes: Vec<NodeDoc>,
}

impl From<&BooleanNetwork> for NetworkDoc {
    fn from(f: &BooleanNetwork) -> Self {
        let nodes = f
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, n)| NodeDoc { name: n.name.clone(), inputs: f.input_names(i), table: n.function.to_bitstring() })
            .collect();
        Self { nodes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub components: Vec<Vec<String>>,
    /// 1-based component pairs.
    pub q_graph: Vec<[usize; 2]>,
    pub policy: String,
    pub simple_networks: Vec<NetworkDoc>,
}

impl From<&Decomposition> for DecompositionDoc {
    fn from(d: &Decomposition) -> Self {
        Self {
            components: d.simple_networks.iter().map(BooleanNetwork::names).collect(),
            q_graph: d.q_graph.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            policy: d.policy.name().to_string(),
            simple_networks: d.simple_networks.iter().map(NetworkDoc::from).collect(),
        }
    }
}

/// An exact count; the value is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDoc {
    pub mode: String,
    pub parameters: BTreeMap<String, String>,
    pub count: String,
}

impl CountDoc {
    pub fn new(mode: &str, parameters: &[(&str, String)], count: &BigUint) -> Self {
        Self {
            mode: mode.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            count: count.to_str_radix(10),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanalizingPairDoc {
    pub variable: String,
    pub input: u8,
    pub output: u8,
}

/// Canalization summary of one node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub name: String,
    pub inputs: Vec<String>,
    pub table: String,
    pub essential: Vec<String>,
    pub canalizing_pairs: Vec<CanalizingPairDoc>,
    pub canalizing: bool,
    pub nested_canalizing: bool,
    pub layer_structure: Vec<usize>,
    pub depth: usize,
    /// Layers as lists of `name=input`.
    pub layers: Vec<Vec<String>>,
    pub core_variables: Vec<String>,
}

impl NodeReport {
    pub fn new(f: &BooleanNetwork, i: usize) -> Self {
        let node = f.node(i);
        let inputs = f.input_names(i);
        let g = &node.function;
        let mut report = Self {
            name: node.name.clone(),
            inputs: inputs.clone(),
            table: g.to_bitstring(),
            essential: g.essential_variables().iter().map(|&v| inputs[v].clone()).collect(),
            canalizing_pairs: Vec::new(),
            canalizing: false,
            nested_canalizing: false,
            layer_structure: Vec::new(),
            depth: 0,
            layers: Vec::new(),
            core_variables: Vec::new(),
        };
        if g.is_constant().is_some() {
            return report;
        }
        let pairs = canalizing_pairs(g).expect("non-constant");
        report.canalizing = !pairs.is_empty();
        report.canalizing_pairs = pairs
            .iter()
            .map(|p| CanalizingPairDoc {
                variable: inputs[p.var].clone(),
                input: u8::from(p.input),
                output: u8::from(p.output),
            })
            .collect();
        let s = stratify(g).expect("non-constant");
        report.nested_canalizing = s.is_nested_canalizing();
        report.layer_structure = s.layer_structure().sizes().to_vec();
        report.depth = s.depth();
        report.layers = s
            .layers
            .iter()
            .map(|l| l.entries.iter().map(|e| format!("{}={}", inputs[e.var], u8::from(e.input))).collect())
            .collect();
        report.core_variables = s.core_vars.iter().map(|&v| inputs[v].clone()).collect();
        report
    }
}
