use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

/// Strongly connected components of a directed graph on `0..n`.
///
/// Members of each component are sorted and components are ordered by their
/// smallest member, so the output does not depend on edge order.
pub fn strongly_connected_components<I>(n: usize, edges: I) -> Vec<Vec<usize>>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Whether the undirected graph on `0..n` with the given edges is connected.
pub fn is_connected<I>(n: usize, edges: I) -> bool
where
    I: IntoIterator<Item = (usize, usize)>,
{
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_one_component() {
        let comps = strongly_connected_components(3, [(0, 1), (1, 2), (2, 0)]);
        assert_eq!(comps, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn chain_splits() {
        let comps = strongly_connected_components(3, [(0, 1), (1, 2)]);
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn undirected_connectivity() {
        assert!(is_connected(3, [(0, 1), (2, 1)]));
        assert!(!is_connected(4, [(0, 1), (2, 3)]));
    }
}
