//! Generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use boolnet::boolfn::BooleanFunction;
use boolnet::network::{graphical_realize_named, strongly_connected_components, GraphicalFamily, LabeledMatrix, Node};
use boolnet::BooleanNetwork;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Fifty random networks of 1 to 6 nodes with up to 4 inputs per node.
pub fn corpus() -> Vec<BooleanNetwork> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    (0..50)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let nodes = (0..n)
                .map(|i| {
                    let k = rng.gen_range(0..=n.min(4));
                    let mut inputs: Vec<usize> = (0..n).collect();
                    for j in (1..n).rev() {
                        inputs.swap(j, rng.gen_range(0..=j));
                    }
                    inputs.truncate(k);
                    let table = (0..1 << k).map(|_| rng.gen::<bool>()).collect();
                    Node { name: format!("g{i}"), inputs, function: BooleanFunction::from_table(k, table).unwrap() }
                })
                .collect();
            BooleanNetwork::from_nodes(nodes).unwrap()
        })
        .collect()
}

pub fn family() -> impl Strategy<Value = GraphicalFamily> {
    prop::sample::select(GraphicalFamily::ALL.to_vec())
}

pub fn labels(len: usize, z: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..z, len)
}

pub fn to_matrix(rows: usize, cols: usize, z: u8, flat: &[u8]) -> LabeledMatrix {
    LabeledMatrix::from_rows(flat.chunks(cols).take(rows).map(<[u8]>::to_vec).collect(), z).unwrap()
}

pub fn strongly_connected(w: &LabeledMatrix) -> bool {
    let n = w.rows();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| w.get(j, i) != 0).collect()).collect();
    let sccs = strongly_connected_components(&adj);
    sccs.len() == 1 && (n > 1 || w.get(0, 0) != 0)
}

/// A family, simple-network matrices, an acyclic `Q` with `i < j`, and a
/// non-zero block for each edge of `Q`.
#[derive(Debug)]
pub struct Assembly {
    pub family: GraphicalFamily,
    pub simple: Vec<LabeledMatrix>,
    pub blocks: BTreeMap<(usize, usize), LabeledMatrix>,
}

pub fn assembly() -> impl Strategy<Value = Assembly> {
    (family(), prop::collection::vec(1usize..=3, 1..=3)).prop_flat_map(|(family, sizes)| {
        let z = family.z();
        let simple: Vec<_> = sizes
            .iter()
            .map(|&n| {
                labels(n * n, z)
                    .prop_map(move |flat| to_matrix(n, n, z, &flat))
                    .prop_filter("strongly connected", strongly_connected)
            })
            .collect();
        let pairs: Vec<(usize, usize)> =
            (0..sizes.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let edges = prop::collection::vec(any::<bool>(), pairs.len());
        let blocks: Vec<_> = pairs
            .iter()
            .map(|&(i, j)| {
                let (rows, cols) = (sizes[j], sizes[i]);
                labels(rows * cols, z)
                    .prop_map(move |flat| to_matrix(rows, cols, z, &flat))
                    .prop_filter("non-zero", |m| !m.is_zero())
            })
            .collect();
        (Just(family), simple, Just(pairs), edges, blocks).prop_map(|(family, simple, pairs, edges, blocks)| {
            let blocks = pairs
                .into_iter()
                .zip(edges)
                .zip(blocks)
                .filter(|((_, on), _)| *on)
                .map(|((p, _), b)| (p, b))
                .collect();
            Assembly { family, simple, blocks }
        })
    })
}

pub fn realize_all(a: &Assembly) -> Vec<BooleanNetwork> {
    let mut offset = 0;
    a.simple
        .iter()
        .map(|w| {
            let names = (0..w.rows()).map(|i| format!("x{}", offset + i + 1)).collect();
            offset += w.rows();
            graphical_realize_named(w, a.family, names).unwrap()
        })
        .collect()
}
