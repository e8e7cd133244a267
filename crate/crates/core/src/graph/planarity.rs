//! Planarity by path addition (Demoucron, Malgrange and Pertuiset) on each
//! biconnected block of the underlying simple graph.

use std::collections::{BTreeSet, HashSet};

use super::{MultiGraph, VertexId};

/// `true` iff the underlying simple graph of `g` is planar.
pub fn is_planar(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    let adj = simple_adjacency(g);
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    blocks(&adj).into_iter().all(|block| block.len() < 9 || embed_block(&block))
}

fn simple_adjacency(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect()
}

/// Biconnected blocks as edge lists (Tarjan, with an edge stack).
fn blocks(adj: &[Vec<VertexId>]) -> Vec<Vec<(VertexId, VertexId)>> {
    struct State<'a> {
        adj: &'a [Vec<VertexId>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(VertexId, VertexId)>,
        out: Vec<Vec<(VertexId, VertexId)>>,
    }
    fn dfs(s: &mut State, u: VertexId, parent: Option<VertexId>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let w = s.adj[u][i];
            if Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push((u, w));
                dfs(s, w, Some(u));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

struct Fragment {
    attachments: Vec<VertexId>,
    /// A path between two distinct attachments through the fragment.
    path: Vec<VertexId>,
}

/// Path-addition test on a biconnected simple graph given by its edges.
fn embed_block(edges: &[(VertexId, VertexId)]) -> bool {
    let mut ids: Vec<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |v: VertexId| ids.binary_search(&v).unwrap();
    let n = ids.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }

    let cycle = find_cycle(&adj);
    let mut placed_vertex = vec![false; n];
    let mut placed_edge: HashSet<(VertexId, VertexId)> = HashSet::new();
    let key = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    for (i, &v) in cycle.iter().enumerate() {
        placed_vertex[v] = true;
        placed_edge.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle];

    loop {
        let fragments = fragments(&adj, &placed_vertex, &placed_edge);
        if fragments.is_empty() {
            return true;
        }
        let mut chosen: Option<(usize, usize)> = None;
        let mut fewest = usize::MAX;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return false;
            }
            if admissible.len() < fewest {
                fewest = admissible.len();
                chosen = Some((fi, admissible[0]));
            }
        }
        let (fi, face_idx) = chosen.expect("at least one fragment");
        let path = &fragments[fi].path;
        for w in path.windows(2) {
            placed_edge.insert(key(w[0], w[1]));
        }
        for &v in path {
            placed_vertex[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (one, two) = split_face(&face, path);
        faces.push(one);
        faces.push(two);
    }
}

fn find_cycle(adj: &[Vec<VertexId>]) -> Vec<VertexId> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([0]);
    depth[0] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    // Any non-tree edge closes a cycle through the lowest common ancestor.
    for u in 0..n {
        for &w in &adj[u] {
            if u < w && parent[u] != w && parent[w] != u {
                let (mut x, mut y) = (u, w);
                let mut left = vec![x];
                let mut right = vec![y];
                while x != y {
                    if depth[x] >= depth[y] {
                        x = parent[x];
                        left.push(x);
                    } else {
                        y = parent[y];
                        right.push(y);
                    }
                }
                right.pop();
                left.extend(right.into_iter().rev());
                return left;
            }
        }
    }
    unreachable!("a block with at least three edges has a cycle")
}

fn fragments(
    adj: &[Vec<VertexId>],
    placed_vertex: &[bool],
    placed_edge: &HashSet<(VertexId, VertexId)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        if !placed_vertex[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && placed_vertex[b] && !placed_edge.contains(&(a, b)) {
                out.push(Fragment {
                    attachments: vec![a, b],
                    path: vec![a, b],
                });
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    for root in 0..n {
        if placed_vertex[root] || comp[root] != usize::MAX {
            continue;
        }
        let id = root;
        let mut members = vec![root];
        comp[root] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in &adj[u] {
                if !placed_vertex[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        let attachments: BTreeSet<VertexId> = members
            .iter()
            .flat_map(|&u| adj[u].iter().copied())
            .filter(|&w| placed_vertex[w])
            .collect();
        let attachments: Vec<VertexId> = attachments.into_iter().collect();
        let path = fragment_path(adj, placed_vertex, &comp, id, &attachments);
        out.push(Fragment { attachments, path });
    }
    out
}

/// Path from the first attachment into the component and out to a different
/// attachment.
fn fragment_path(
    adj: &[Vec<VertexId>],
    placed_vertex: &[bool],
    comp: &[usize],
    id: usize,
    attachments: &[VertexId],
) -> Vec<VertexId> {
    let start_att = attachments[0];
    let entry = *adj[start_att]
        .iter()
        .find(|&&w| !placed_vertex[w] && comp[w] == id)
        .expect("attachment touches its fragment");
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    prev[entry] = entry;
    let mut queue = std::collections::VecDeque::from([entry]);
    while let Some(u) = queue.pop_front() {
        if let Some(&exit) = adj[u].iter().find(|&&w| placed_vertex[w] && w != start_att) {
            let mut inner = vec![u];
            let mut x = u;
            while prev[x] != x {
                x = prev[x];
                inner.push(x);
            }
            inner.reverse();
            let mut path = vec![start_att];
            path.extend(inner);
            path.push(exit);
            return path;
        }
        for &w in &adj[u] {
            if !placed_vertex[w] && comp[w] == id && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two attachments")
}

/// Splits a face cycle along a path whose endpoints lie on it.
fn split_face(face: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let k = face.len();
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut x = from;
        loop {
            out.push(face[x]);
            if x == to {
                break;
            }
            x = (x + 1) % k;
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut one = arc(i, j);
    one.extend(interior.iter().rev());
    let mut two = arc(j, i);
    two.extend(interior.iter());
    (one, two)
}
