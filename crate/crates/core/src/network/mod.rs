//! Boolean networks and their structure.

mod compose;
mod counting;
mod decompose;
mod graphical;

pub use compose::{compose, Connections, NcfConnection};
pub use counting::{count_network_extensions, ExtensionMode};
pub use decompose::{
    is_network_extension, restrict_network, scc_decompose, strongly_connected_components,
    CutPolicy, Decomposition,
};
pub use graphical::{
    count_acyclic_graphs, count_graphical_compositions, count_graphical_extensions,
    graphical_extend, graphical_matrix, graphical_realize, graphical_realize_named,
    GraphicalFamily, LabeledMatrix,
};

use std::collections::{BTreeSet, HashMap};

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

/// One coordinate of a network: `name` is updated by `function` applied to
/// the nodes listed in `inputs` (indices into the network), in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub inputs: Vec<usize>,
    pub function: BooleanFunction,
}

/// A synchronously updated Boolean network.
///
/// Construction prunes inputs a function does not depend on, so every
/// stored input is essential and the wiring diagram can be read directly
/// off the input lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNetwork {
    nodes: Vec<Node>,
}

impl BooleanNetwork {
    /// Builds a network from `(name, input names, function)` rules.
    pub fn from_rules<S: AsRef<str>>(rules: Vec<(String, Vec<S>, BooleanFunction)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, (name, _, _)) in rules.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Network(format!("duplicate node `{name}`")));
            }
        }
        let nodes = rules
            .into_iter()
            .map(|(name, inputs, function)| {
                let inputs = inputs
                    .iter()
                    .map(|s| {
                        index.get(s.as_ref()).copied().ok_or_else(|| {
                            Error::Network(format!("node `{name}` reads unknown node `{}`", s.as_ref()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Node { name, inputs, function })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_nodes(nodes)
    }

    /// Builds a network from nodes whose inputs are already indices.
    pub fn from_nodes(nodes: Vec<Node>) -> Result<Self> {
        let n = nodes.len();
        let mut names = BTreeSet::new();
        let mut canonical = Vec::with_capacity(n);
        for node in nodes {
            if !names.insert(node.name.clone()) {
                return Err(Error::Network(format!("duplicate node `{}`", node.name)));
            }
            if node.function.arity() != node.inputs.len() {
                return Err(Error::Network(format!(
                    "node `{}` lists {} inputs but its function has arity {}",
                    node.name,
                    node.inputs.len(),
                    node.function.arity()
                )));
            }
            if let Some(&bad) = node.inputs.iter().find(|&&i| i >= n) {
                return Err(Error::Network(format!("node `{}` reads missing node {bad}", node.name)));
            }
            let distinct: BTreeSet<_> = node.inputs.iter().collect();
            if distinct.len() != node.inputs.len() {
                return Err(Error::Network(format!("node `{}` lists an input twice", node.name)));
            }
            let (kept, function) = node.function.prune_inert();
            let inputs = kept.iter().map(|&k| node.inputs[k]).collect();
            canonical.push(Node { name: node.name, inputs, function });
        }
        Ok(Self { nodes: canonical })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn names(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn input_names(&self, i: usize) -> Vec<String> {
        self.nodes[i].inputs.iter().map(|&j| self.nodes[j].name.clone()).collect()
    }

    /// One synchronous update of every coordinate.
    pub fn step(&self, state: &[bool]) -> Result<Vec<bool>> {
        if state.len() != self.len() {
            return Err(Error::Arity { expected: self.len(), actual: state.len() });
        }
        self.nodes
            .iter()
            .map(|node| {
                let x: Vec<bool> = node.inputs.iter().map(|&j| state[j]).collect();
                node.function.evaluate(&x)
            })
            .collect()
    }

    pub fn wiring_diagram(&self) -> WiringDiagram {
        wiring_diagram(self)
    }

    /// The network with the nodes of `other` appended; names must not clash.
    pub fn disjoint_union(&self, other: &BooleanNetwork) -> Result<BooleanNetwork> {
        let offset = self.len();
        let shifted = other.nodes.iter().map(|n| Node {
            name: n.name.clone(),
            inputs: n.inputs.iter().map(|&j| j + offset).collect(),
            function: n.function.clone(),
        });
        Self::from_nodes(self.nodes.iter().cloned().chain(shifted).collect())
    }
}

/// Directed graph with an edge `i → j` when node `j` depends on node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl WiringDiagram {
    /// Nodes without incoming edges.
    pub fn external_parameters(&self) -> Vec<usize> {
        let targets: BTreeSet<usize> = self.edges.iter().map(|&(_, j)| j).collect();
        (0..self.n).filter(|j| !targets.contains(j)).collect()
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }
}

pub fn wiring_diagram(f: &BooleanNetwork) -> WiringDiagram {
    let edges = f
        .nodes
        .iter()
        .enumerate()
        .flat_map(|(j, node)| node.inputs.iter().map(move |&i| (i, j)))
        .collect();
    WiringDiagram { n: f.len(), edges }
}
