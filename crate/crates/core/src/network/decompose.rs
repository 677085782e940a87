use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use super::{BooleanNetwork, GraphicalFamily, Node};
use crate::boolfn::is_nested_canalizing;
use crate::error::{Error, Result};
use crate::extend::{is_extension, restrict_ncf};

/// How a restriction fixes inputs that come from outside the kept nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CutPolicy {
    /// Every cut input reads 0.
    #[default]
    Zeros,
    /// Nested canalizing targets drop cut inputs at their non-canalizing
    /// values; any other target with a cut input is an error.
    NcfDefault,
    /// Cut inputs read the value given for their node name.
    Explicit(BTreeMap<String, bool>),
    /// Every target is a function of the family, and each cut input takes
    /// the value that removes its literal (0 under XOR and OR, 1 under AND).
    Graphical(GraphicalFamily),
}

impl CutPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            CutPolicy::Zeros => "zeros",
            CutPolicy::NcfDefault => "ncf",
            CutPolicy::Explicit(_) => "map",
            CutPolicy::Graphical(_) => "graphical",
        }
    }
}

/// Strongly connected components plus the acyclic graph between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Node indices of each component, ascending; components are in
    /// topological order of `q_graph`.
    pub components: Vec<Vec<usize>>,
    /// The restriction of the network to each component.
    pub simple_networks: Vec<BooleanNetwork>,
    /// `(i, j)` when some edge runs from component `i` to component `j`; always `i < j`.
    pub q_graph: BTreeSet<(usize, usize)>,
    pub policy: CutPolicy,
}

/// Tarjan's algorithm; components come out in reverse topological order.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        next: usize,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        comps: Vec<Vec<usize>>,
    }

    fn visit(v: usize, s: &mut State<'_>) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for &w in &s.adj[v] {
            match s.index[w] {
                None => {
                    visit(w, s);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().expect("root is on the stack");
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.comps.push(comp);
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        next: 0,
        index: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(v, &mut s);
        }
    }
    s.comps
}

/// Restriction of `f` to the nodes `keep` (ascending); inputs from dropped
/// nodes are fixed according to `policy`.
pub fn restrict_network(f: &BooleanNetwork, keep: &[usize], policy: &CutPolicy) -> Result<BooleanNetwork> {
    if keep.is_empty() {
        return Err(Error::Partition("cannot restrict a network to no nodes".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&i| i >= f.len()) {
        return Err(Error::Partition(format!("node set {keep:?} invalid for {} nodes", f.len())));
    }
    let position: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut nodes = Vec::with_capacity(keep.len());
    for &i in keep {
        let node = f.node(i);
        let kept: Vec<usize> = (0..node.inputs.len()).filter(|&k| position.contains_key(&node.inputs[k])).collect();
        let function = if kept.len() == node.inputs.len() {
            node.function.clone()
        } else {
            match policy {
                CutPolicy::Zeros => node.function.restrict_to(&kept, &vec![false; node.inputs.len()]),
                CutPolicy::Explicit(values) => {
                    let mut x = vec![false; node.inputs.len()];
                    for (k, &src) in node.inputs.iter().enumerate() {
                        if !position.contains_key(&src) {
                            let name = &f.node(src).name;
                            x[k] = *values.get(name).ok_or_else(|| Error::Policy {
                                node: node.name.clone(),
                                reason: format!("no value given for cut input `{name}`"),
                            })?;
                        }
                    }
                    node.function.restrict_to(&kept, &x)
                }
                CutPolicy::NcfDefault => {
                    if !is_nested_canalizing(&node.function) {
                        return Err(Error::Policy {
                            node: node.name.clone(),
                            reason: "function is not nested canalizing, so it has no default restriction".into(),
                        });
                    }
                    restrict_ncf(&node.function, &kept)?
                }
                CutPolicy::Graphical(family) => {
                    let x = family.neutral_inputs(&node.function).ok_or_else(|| Error::Policy {
                        node: node.name.clone(),
                        reason: format!("function is not a {family} function"),
                    })?;
                    node.function.restrict_to(&kept, &x)
                }
            }
        };
        let inputs = kept.iter().map(|&k| position[&node.inputs[k]]).collect();
        nodes.push(Node { name: node.name.clone(), inputs, function });
    }
    BooleanNetwork::from_nodes(nodes)
}

/// Splits `f` into its simple networks. Components are ordered
/// topologically, ties going to the component holding the smallest node index.
pub fn scc_decompose(f: &BooleanNetwork, policy: &CutPolicy) -> Result<Decomposition> {
    let wiring = f.wiring_diagram();
    let raw = strongly_connected_components(&wiring.successors());

    let mut comp_of = vec![0; f.len()];
    for (c, members) in raw.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); raw.len()];
    let mut indegree = vec![0usize; raw.len()];
    for &(i, j) in &wiring.edges {
        let (a, b) = (comp_of[i], comp_of[j]);
        if a != b && succ[a].insert(b) {
            indegree[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..raw.len())
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((raw[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(raw.len());
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(c);
        for &d in &succ[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((raw[d][0], d)));
            }
        }
    }
    let mut rank = vec![0; raw.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }

    let components: Vec<Vec<usize>> = order.iter().map(|&c| raw[c].clone()).collect();
    let q_graph = succ
        .iter()
        .enumerate()
        .flat_map(|(a, targets)| targets.iter().map(move |&b| (a, b)))
        .map(|(a, b)| (rank[a], rank[b]))
        .collect();
    let simple_networks = components
        .iter()
        .map(|c| restrict_network(f, c, policy))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition { components, simple_networks, q_graph, policy: policy.clone() })
}

/// Whether every node of `small` is extended, coordinate by coordinate, by
/// the same-named node of `big`.
pub fn is_network_extension(big: &BooleanNetwork, small: &BooleanNetwork) -> Result<bool> {
    for node in small.nodes() {
        let j = big
            .index_of(&node.name)
            .ok_or_else(|| Error::Network(format!("node `{}` has no counterpart", node.name)))?;
        let wide = big.node(j);
        let small_inputs = small.input_names(small.index_of(&node.name).expect("own node"));
        let big_inputs = big.input_names(j);
        for name in &small_inputs {
            if big.index_of(name).is_none() {
                return Err(Error::Network(format!("node `{name}` has no counterpart")));
            }
        }
        // The original inputs first, in their order, then the new ones.
        let mut order = Vec::with_capacity(big_inputs.len());
        for name in &small_inputs {
            match big_inputs.iter().position(|b| b == name) {
                Some(p) => order.push(p),
                None => return Ok(false),
            }
        }
        let added: Vec<usize> = (0..big_inputs.len()).filter(|p| !order.contains(p)).collect();
        order.extend(added);
        let g = wide.function.permute(&order)?;
        let new_vars: Vec<usize> = (small_inputs.len()..big_inputs.len()).collect();
        if !is_extension(&g, &node.function, &new_vars)? {
            return Ok(false);
        }
    }
    Ok(true)
}
