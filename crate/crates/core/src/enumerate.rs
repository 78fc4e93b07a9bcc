//! Small quivers up to isomorphism.

use std::collections::BTreeSet;

use crate::quiver::Quiver;

type Edges = Vec<(usize, usize)>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least sorted edge list over all vertex relabelings.
fn canonical(edges: &Edges, perms: &[Vec<usize>]) -> Edges {
    perms
        .iter()
        .map(|p| {
            let mut e: Edges = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

fn connected(n: usize, edges: &Edges) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(s, t) in edges {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Multisets of `k` pairs drawn from `pairs`, non-decreasing by index.
fn multisets(
    pairs: &[(usize, usize)],
    k: usize,
    from: usize,
    cur: &mut Edges,
    out: &mut Vec<Edges>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..pairs.len() {
        cur.push(pairs[i]);
        multisets(pairs, k, i, cur, out);
        cur.pop();
    }
}

/// Connected quivers with `1..=max_vertices` vertices and at most
/// `max_arrows` arrows (loops allowed), one per isomorphism class.
///
/// Ordered by vertex count, then arrow count, then canonical edge list.
pub fn connected_quivers(max_vertices: usize, max_arrows: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let pairs: Edges = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        for k in 0..=max_arrows {
            let mut raw = Vec::new();
            multisets(&pairs, k, 0, &mut Vec::new(), &mut raw);
            let classes: BTreeSet<Edges> = raw
                .into_iter()
                .filter(|e| connected(n, e))
                .map(|e| canonical(&e, &perms))
                .collect();
            out.extend(
                classes
                    .into_iter()
                    .map(|e| Quiver::from_edges(n, &e).expect("generated edges are in range")),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, m: usize) -> usize {
        connected_quivers(n, m).len()
    }

    #[test]
    fn small_counts() {
        // One vertex: one quiver per loop count.
        assert_eq!(count(1, 3), 4);
        // Two vertices, one arrow: a single orientation class.
        assert_eq!(count(2, 1) - count(1, 1), 1);
        // Two vertices, two arrows: parallel, antiparallel, arrow plus a loop at either end.
        assert_eq!(count(2, 2) - count(1, 2) - 1, 4);
        // Trees on three vertices with two arrows: path, in-star, out-star.
        assert_eq!(
            connected_quivers(3, 2)
                .iter()
                .filter(|q| q.vertex_count() == 3)
                .count(),
            3
        );
    }

    #[test]
    fn all_connected_and_distinct() {
        let qs = connected_quivers(3, 3);
        assert!(qs.iter().all(Quiver::is_connected));
        let keys: BTreeSet<(usize, Edges)> = qs
            .iter()
            .map(|q| {
                let e: Edges = q.arrows().iter().map(|a| (a.source, a.target)).collect();
                (
                    q.vertex_count(),
                    canonical(&e, &permutations(q.vertex_count())),
                )
            })
            .collect();
        assert_eq!(keys.len(), qs.len());
    }
}
