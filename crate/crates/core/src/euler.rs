//! Eulerian circuits of undirected multigraphs (Hierholzer).

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Closed walk using every edge exactly once, starting and ending at `start`
/// (default: the smallest vertex with an edge). Neighbours are tried in
/// ascending order, so the output is a pure function of the edge multiset.
///
/// With no edges the circuit is the single vertex `start`.
pub fn euler_circuit<V: Ord + Copy>(edges: &[(V, V)], start: Option<V>) -> Result<Vec<V>> {
    let mut adj: BTreeMap<V, Vec<(V, usize)>> = BTreeMap::new();
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push((b, id));
        adj.entry(b).or_default().push((a, id));
    }
    if adj.is_empty() {
        return start.map(|s| vec![s]).ok_or_else(|| Error::InvalidInput("empty graph without a start vertex".into()));
    }
    for list in adj.values_mut() {
        list.sort();
    }
    // A self-loop contributes 2 to its vertex's list length, as it should.
    if adj.values().any(|l| l.len() % 2 == 1) {
        return Err(Error::OddDegree);
    }
    let start = match start {
        Some(s) if adj.contains_key(&s) => s,
        Some(_) => return Err(Error::DisconnectedGraph),
        None => *adj.keys().next().unwrap(),
    };

    let mut used = vec![false; edges.len()];
    let mut cursor: BTreeMap<V, usize> = adj.keys().map(|v| (*v, 0)).collect();
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        let list = &adj[&v];
        let pos = cursor.get_mut(&v).unwrap();
        while *pos < list.len() && used[list[*pos].1] {
            *pos += 1;
        }
        if *pos < list.len() {
            let (w, id) = list[*pos];
            used[id] = true;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    if circuit.len() != edges.len() + 1 {
        return Err(Error::DisconnectedGraph);
    }
    circuit.reverse();
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GridPoint;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    fn square(x: i64, y: i64) -> Vec<(GridPoint, GridPoint)> {
        vec![(gp(x, y), gp(x + 1, y)), (gp(x + 1, y), gp(x + 1, y + 1)), (gp(x + 1, y + 1), gp(x, y + 1)), (gp(x, y + 1), gp(x, y))]
    }

    fn uses_every_edge_once(edges: &[(GridPoint, GridPoint)], walk: &[GridPoint]) -> bool {
        let mut left: Vec<(GridPoint, GridPoint)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for w in walk.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            match left.iter().position(|e| *e == key) {
                Some(i) => {
                    left.swap_remove(i);
                }
                None => return false,
            }
        }
        left.is_empty()
    }

    #[test]
    fn unit_square_loop() {
        let edges = square(0, 0);
        let walk = euler_circuit(&edges, None).unwrap();
        assert_eq!(walk.len(), 5);
        assert_eq!(walk.first(), walk.last());
        assert!(uses_every_edge_once(&edges, &walk));
        let length: i64 = walk.windows(2).map(|w| w[0].l1(w[1])).sum();
        assert_eq!(length, 4);
    }

    #[test]
    fn figure_eight() {
        let mut edges = square(0, 0);
        edges.extend(square(1, 1));
        let walk = euler_circuit(&edges, Some(gp(0, 0))).unwrap();
        assert_eq!(walk.len(), 9);
        assert_eq!(walk[0], gp(0, 0));
        assert!(uses_every_edge_once(&edges, &walk));
    }

    #[test]
    fn doubled_edge_is_out_and_back() {
        let edges = vec![(gp(0, 0), gp(0, 1)), (gp(0, 1), gp(0, 0))];
        assert_eq!(euler_circuit(&edges, None).unwrap(), vec![gp(0, 0), gp(0, 1), gp(0, 0)]);
    }

    #[test]
    fn errors() {
        assert_eq!(euler_circuit(&[(gp(0, 0), gp(1, 0))], None), Err(Error::OddDegree));
        let mut two = square(0, 0);
        two.extend(square(5, 5));
        assert_eq!(euler_circuit(&two, None), Err(Error::DisconnectedGraph));
        assert_eq!(euler_circuit(&square(0, 0), Some(gp(9, 9))), Err(Error::DisconnectedGraph));
        assert_eq!(euler_circuit::<GridPoint>(&[], Some(gp(3, 3))).unwrap(), vec![gp(3, 3)]);
    }
}
