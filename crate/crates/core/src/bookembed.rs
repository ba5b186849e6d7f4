//! Two-page topological book embeddings with at most one spine crossing per
//! edge, and the spinal paths derived from them.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, ColoredGraphSet, VertexId};
use crate::planarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpineItem {
    Vertex(VertexId),
    /// The point where the given edge crosses the spine.
    Division((VertexId, VertexId)),
    /// Padding appended to the end of a shorter spinal path.
    Dummy(usize),
}

impl SpineItem {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            SpineItem::Vertex(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Page {
    Above,
    Below,
}

/// One page arc between two spine positions, `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub edge: (VertexId, VertexId),
    pub from: usize,
    pub to: usize,
    pub page: Page,
}

/// Caller-supplied page assignment of one edge: one page, or two when the
/// spine contains a division vertex for the edge (first page on the side of
/// `edge.0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub edge: (VertexId, VertexId),
    pub pages: Vec<Page>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookEmbedding {
    pub spine: Vec<SpineItem>,
    pub segments: Vec<Segment>,
}

fn edge_key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

impl BookEmbedding {
    pub fn division_count(&self) -> usize {
        self.spine
            .iter()
            .filter(|s| matches!(s, SpineItem::Division(_)))
            .count()
    }

    /// Spine position of each item.
    pub fn positions(&self) -> HashMap<SpineItem, usize> {
        self.spine.iter().enumerate().map(|(i, &s)| (s, i)).collect()
    }

    /// Edge set obtained by merging the two halves at every division vertex.
    pub fn recovered_edges(&self) -> HashSet<(VertexId, VertexId)> {
        self.segments.iter().map(|s| edge_key(s.edge.0, s.edge.1)).collect()
    }

    /// Checks the embedding against its graph: every vertex on the spine once,
    /// every edge drawn by one segment or two segments meeting at its own
    /// division vertex, and no two segments of a page interleaving.
    pub fn validate(&self, g: &ColoredGraph) -> Result<()> {
        let bad = |m: String| Err(Error::Consistency(m));
        let pos = self.positions();
        if pos.len() != self.spine.len() {
            return bad("spine lists an item twice".into());
        }
        for v in &g.vertices {
            if !pos.contains_key(&SpineItem::Vertex(v.id)) {
                return bad(format!("vertex {} missing from spine", v.id));
            }
        }
        let edges: HashSet<(VertexId, VertexId)> =
            g.edges.iter().map(|&(a, b)| edge_key(a, b)).collect();
        let mut per_edge: HashMap<(VertexId, VertexId), Vec<&Segment>> = HashMap::new();
        for s in &self.segments {
            if s.from >= s.to || s.to >= self.spine.len() {
                return bad(format!("segment {:?} has bad positions", s.edge));
            }
            per_edge.entry(edge_key(s.edge.0, s.edge.1)).or_default().push(s);
        }
        for item in &self.spine {
            match *item {
                SpineItem::Vertex(v) if g.vertices.iter().all(|x| x.id != v) => {
                    return bad(format!("unknown spine vertex {v}"))
                }
                SpineItem::Division((a, b)) if !edges.contains(&edge_key(a, b)) => {
                    return bad(format!("division vertex on non-edge ({a},{b})"))
                }
                SpineItem::Dummy(_) => return bad("dummy item inside a book embedding".into()),
                _ => {}
            }
        }
        for &(a, b) in &edges {
            let segs = per_edge.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[]);
            let pa = pos[&SpineItem::Vertex(a)];
            let pb = pos[&SpineItem::Vertex(b)];
            let div = pos
                .get(&SpineItem::Division((a, b)))
                .or_else(|| pos.get(&SpineItem::Division((b, a))))
                .copied();
            let mut want = match div {
                None => vec![(pa.min(pb), pa.max(pb))],
                Some(d) => vec![(pa.min(d), pa.max(d)), (pb.min(d), pb.max(d))],
            };
            let mut have: Vec<(usize, usize)> = segs.iter().map(|s| (s.from, s.to)).collect();
            want.sort_unstable();
            have.sort_unstable();
            if want != have {
                return bad(format!("edge ({a},{b}) is not drawn by its expected segments"));
            }
        }
        if per_edge.len() != edges.len() {
            return bad("segment drawn for a non-edge".into());
        }
        for page in [Page::Above, Page::Below] {
            let arcs: Vec<(usize, usize)> = self
                .segments
                .iter()
                .filter(|s| s.page == page)
                .map(|s| (s.from, s.to))
                .collect();
            if let Some((x, y)) = find_interleaving(self.spine.len(), &arcs) {
                return bad(format!("{page:?} page arcs {x:?} and {y:?} interleave"));
            }
        }
        Ok(())
    }
}

/// Some pair of arcs `(a,b),(c,d)` with `a < c < b < d`, if any.
fn find_interleaving(len: usize, arcs: &[(usize, usize)]) -> Option<((usize, usize), (usize, usize))> {
    let mut starts: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (i, &(a, b)) in arcs.iter().enumerate() {
        starts[a].push(i);
        ends[b].push(i);
    }
    let mut stack: Vec<usize> = Vec::new();
    for p in 0..len {
        ends[p].sort_by_key(|&i| std::cmp::Reverse(arcs[i].0));
        for &i in &ends[p] {
            match stack.pop() {
                Some(top) if top == i => {}
                Some(top) => return Some((arcs[i], arcs[top])),
                None => unreachable!("arc closed before opening"),
            }
        }
        starts[p].sort_by_key(|&i| std::cmp::Reverse(arcs[i].1));
        stack.extend(starts[p].iter().copied());
    }
    None
}

/// Two-colors the interleaving graph of `edges` under spine order `order`
/// (order[i] = vertex at position i). `None` if not bipartite.
fn two_page_assignment(order: &[usize], edges: &[(usize, usize)]) -> Option<Vec<Page>> {
    let mut at = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        at[v] = i;
    }
    let arcs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (at[a].min(at[b]), at[a].max(at[b])))
        .collect();
    let m = arcs.len();
    let mut conflicts = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let ((a, b), (c, d)) = (arcs[i], arcs[j]);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }
    let mut color: Vec<Option<Page>> = vec![None; m];
    for s in 0..m {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(Page::Above);
        let mut queue = vec![s];
        while let Some(x) = queue.pop() {
            let other = match color[x] {
                Some(Page::Above) => Page::Below,
                _ => Page::Above,
            };
            for &y in &conflicts[x] {
                match color[y] {
                    None => {
                        color[y] = Some(other);
                        queue.push(y);
                    }
                    Some(c) if c != other => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.expect("colored")).collect())
}

fn from_order(g: &ColoredGraph, order: &[usize], pages: &[Page]) -> BookEmbedding {
    let mut at = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        at[v] = i;
    }
    let idx = g.index_map();
    let segments = g
        .edges
        .iter()
        .zip(pages)
        .map(|(&(a, b), &page)| {
            let (pa, pb) = (at[idx[&a]], at[idx[&b]]);
            Segment {
                edge: (a, b),
                from: pa.min(pb),
                to: pa.max(pb),
                page,
            }
        })
        .collect();
    BookEmbedding {
        spine: order.iter().map(|&v| SpineItem::Vertex(g.vertices[v].id)).collect(),
        segments,
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Searches all spine orders (identity first) for a two-page embedding
/// without division vertices. Intended for small graphs.
pub fn exhaustive_book_embedding(g: &ColoredGraph) -> Option<BookEmbedding> {
    let edges = g.dense_edges();
    let mut order: Vec<usize> = (0..g.n()).collect();
    loop {
        if let Some(pages) = two_page_assignment(&order, &edges) {
            return Some(from_order(g, &order, &pages));
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}

fn dfs_preorder(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            stack.extend(adj[v].iter().rev().filter(|&&w| !seen[w]));
        }
    }
    order
}

/// Threshold below which the exhaustive search is tried first.
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// Book embedding of a planar graph. Uses the caller's spine if the graph
/// carries one; otherwise tries division-free orders (exhaustively for
/// small graphs, input and DFS order otherwise) before the general
/// construction.
pub fn compute_book_embedding(g: &ColoredGraph) -> Result<BookEmbedding> {
    g.validate()?;
    if let Some(spec) = from_spec(g)? {
        return Ok(spec);
    }
    let edges = g.dense_edges();
    if !planarity::is_planar(g.n(), &edges) {
        let witness = planarity::kuratowski_edges(g.n(), &edges);
        return Err(Error::NonPlanar {
            graph: 0,
            obstruction: witness
                .into_iter()
                .map(|(a, b)| (g.vertices[a].id, g.vertices[b].id))
                .collect(),
        });
    }
    if g.n() <= EXHAUSTIVE_MAX_N {
        if let Some(be) = exhaustive_book_embedding(g) {
            return Ok(be);
        }
    }
    let identity: Vec<usize> = (0..g.n()).collect();
    for order in [identity, dfs_preorder(g.n(), &edges)] {
        if let Some(pages) = two_page_assignment(&order, &edges) {
            return Ok(from_order(g, &order, &pages));
        }
    }
    let be = construct(g, &edges)?;
    be.validate(g)
        .map_err(|e| Error::Invariant(format!("book embedding construction: {e}")))?;
    Ok(be)
}

fn from_spec(g: &ColoredGraph) -> Result<Option<BookEmbedding>> {
    let (spine, records) = match (&g.spine, &g.pages) {
        (None, None) => return Ok(None),
        (Some(s), Some(p)) => (s, p),
        _ => {
            return Err(Error::MalformedInput(
                "spine and pages must be given together".into(),
            ))
        }
    };
    let be = BookEmbedding {
        spine: spine.clone(),
        segments: Vec::new(),
    };
    let pos = be.positions();
    let find = |item: SpineItem| {
        pos.get(&item)
            .copied()
            .ok_or_else(|| Error::MalformedInput(format!("{item:?} not on the supplied spine")))
    };
    let mut segments = Vec::new();
    for r in records {
        let (a, b) = r.edge;
        let pa = find(SpineItem::Vertex(a))?;
        let pb = find(SpineItem::Vertex(b))?;
        let mut push = |x: usize, y: usize, page: Page| {
            segments.push(Segment {
                edge: (a, b),
                from: x.min(y),
                to: x.max(y),
                page,
            })
        };
        match r.pages.as_slice() {
            [p] => push(pa, pb, *p),
            [p, q] => {
                let d = find(SpineItem::Division((a, b)))
                    .or_else(|_| find(SpineItem::Division((b, a))))?;
                push(pa, d, *p);
                push(d, pb, *q);
            }
            _ => {
                return Err(Error::MalformedInput(format!(
                    "edge ({a},{b}) needs one or two pages"
                )))
            }
        }
    }
    let be = BookEmbedding {
        spine: spine.clone(),
        segments,
    };
    be.validate(g)
        .map_err(|e| Error::MalformedInput(format!("supplied book embedding: {e}")))?;
    Ok(Some(be))
}

/// Connected, triangulated supergraph of `edges` on vertices `0..total`
/// (`total >= n`). Extra vertices are padding only.
fn triangulate(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut all: Vec<(usize, usize)> = edges.to_vec();
    let mut total = n;
    // join components through one hub vertex
    let mut comp = vec![usize::MAX; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut reps = Vec::new();
    for r in 0..n {
        if comp[r] != usize::MAX {
            continue;
        }
        reps.push(r);
        comp[r] = r;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = r;
                    stack.push(w);
                }
            }
        }
    }
    if reps.len() > 1 {
        let hub = total;
        total += 1;
        all.extend(reps.iter().map(|&r| (hub, r)));
    }
    if total < 3 {
        return (total, all);
    }
    let rot = planarity::planar_embedding(total, &all).expect("planar input stays planar");
    for face in planarity::faces(&rot) {
        let l = face.len();
        let first = total;
        let center = total + l;
        total += l + 1;
        for i in 0..l {
            let x = first + i;
            all.push((x, face[i]));
            all.push((x, face[(i + 1) % l]));
            all.push((x, first + (i + 1) % l));
            all.push((x, center));
        }
    }
    (total, all)
}

/// Parent of every vertex in the tree induced by a canonical ordering of a
/// triangulation: each vertex hangs below the vertex that removes it from the
/// outer contour; the two base vertices hang below the last vertex.
fn canonical_tree(rot: &[Vec<usize>]) -> (usize, Vec<usize>) {
    let n = rot.len();
    let (v1, v2) = (0, rot[0][0]);
    // third vertex of a face through v1 -> v2
    let i = rot[v2].iter().position(|&x| x == v1).expect("symmetric");
    let vn = rot[v2][(i + rot[v2].len() - 1) % rot[v2].len()];
    let mut parent = vec![usize::MAX; n];
    parent[v1] = vn;
    parent[v2] = vn;
    let mut on = vec![false; n];
    let mut removed = vec![false; n];
    let mut prev = vec![usize::MAX; n];
    let mut next = vec![usize::MAX; n];
    let mut chords = vec![0usize; n];
    for v in [v1, vn, v2] {
        on[v] = true;
    }
    next[v1] = vn;
    prev[vn] = v1;
    next[vn] = v2;
    prev[v2] = vn;
    let mut cand = vec![vn];
    let adjacent = |a: usize, b: usize| rot[a].contains(&b);
    let mut done = 0;
    while done + 2 < n {
        let v = loop {
            let x = cand.pop().expect("canonical ordering candidate");
            if on[x] && !removed[x] && chords[x] == 0 && x != v1 && x != v2 {
                break x;
            }
        };
        removed[v] = true;
        on[v] = false;
        done += 1;
        let (l, r) = (prev[v], next[v]);
        // lower neighbors of v between l and r
        let rv = &rot[v];
        let d = rv.len();
        let li = rv.iter().position(|&x| x == l).expect("contour neighbor");
        let mut path: Option<Vec<usize>> = None;
        for step in [1, d - 1] {
            let mut seq = Vec::new();
            let mut j = (li + step) % d;
            let mut ok = true;
            while rv[j] != r {
                if removed[rv[j]] {
                    ok = false;
                    break;
                }
                seq.push(rv[j]);
                j = (j + step) % d;
            }
            if ok && path.as_ref().is_none_or(|p| p.len() < seq.len()) {
                path = Some(seq);
            }
        }
        let fresh = path.expect("lower neighbors form a path");
        if fresh.is_empty() {
            next[l] = r;
            prev[r] = l;
            if adjacent(l, r) && (l, r) != (v1, v2) {
                chords[l] -= 1;
                chords[r] -= 1;
                cand.push(l);
                cand.push(r);
            }
            continue;
        }
        let mut last = l;
        for &u in &fresh {
            parent[u] = v;
            on[u] = true;
            next[last] = u;
            prev[u] = last;
            last = u;
        }
        next[last] = r;
        prev[r] = last;
        let fresh_set: HashSet<usize> = fresh.iter().copied().collect();
        for &u in &fresh {
            for &x in &rot[u] {
                if on[x] && x != prev[u] && x != next[u] {
                    chords[u] += 1;
                    if !fresh_set.contains(&x) {
                        chords[x] += 1;
                    }
                }
            }
        }
        for &u in fresh.iter().rev() {
            cand.push(u);
        }
    }
    (vn, parent)
}

enum End {
    Home(usize),
    Division(usize),
}

/// Spine built from an Euler tour of the canonical tree: a vertex sits at its
/// first corner, chords at any other corner get a division vertex there.
/// Returns `None` if some chord would need two division vertices.
fn tour_embedding(
    rot: &[Vec<usize>],
    root: usize,
    parent: &[usize],
) -> Option<(Vec<(usize, Option<(usize, usize)>)>, Vec<(usize, usize, Page)>)> {
    let total = rot.len();
    let is_tree = |a: usize, b: usize| parent[a] == b || parent[b] == a;
    // spine entries: (vertex, Some(chord) for a division vertex at that vertex)
    let mut spine: Vec<(usize, Option<(usize, usize)>)> = Vec::new();
    let mut home = vec![usize::MAX; total];
    let mut ends: BTreeMap<(usize, usize), Vec<End>> = BTreeMap::new();
    let mut divisions_at: Vec<Vec<usize>> = vec![Vec::new(); total];
    // frame: vertex, start index, steps taken, seen a child
    let mut frames: Vec<(usize, usize, usize, bool)> = Vec::new();
    home[root] = 0;
    spine.push((root, None));
    frames.push((root, 0, 0, false));
    while let Some(&mut (v, start, ref mut steps, ref mut seen_child)) = frames.last_mut() {
        let d = rot[v].len();
        let limit = if v == root { d } else { d - 1 };
        if *steps == limit {
            frames.pop();
            continue;
        }
        let x = rot[v][(start + *steps) % d];
        *steps += 1;
        if is_tree(v, x) {
            if parent[x] == v {
                *seen_child = true;
                home[x] = spine.len();
                spine.push((x, None));
                let px = rot[x].iter().position(|&y| y == v).expect("symmetric");
                frames.push((x, px + 1, 0, false));
            }
            continue;
        }
        let key = (v.min(x), v.max(x));
        if *seen_child {
            divisions_at[v].push(spine.len());
            ends.entry(key).or_default().push(End::Division(spine.len()));
            spine.push((v, Some(key)));
        } else {
            ends.entry(key).or_default().push(End::Home(home[v]));
        }
    }
    let mut arcs = Vec::new();
    for v in 0..total {
        if parent[v] != usize::MAX {
            arcs.push((home[parent[v]], home[v], Page::Above));
        }
        for &d in &divisions_at[v] {
            arcs.push((home[v], d, Page::Above));
        }
    }
    for list in ends.values() {
        let pos = |e: &End| match *e {
            End::Home(p) | End::Division(p) => p,
        };
        if list.iter().all(|e| matches!(e, End::Division(_))) {
            return None;
        }
        arcs.push((pos(&list[0]), pos(&list[1]), Page::Below));
    }
    Some((spine, arcs))
}

fn construct(g: &ColoredGraph, edges: &[(usize, usize)]) -> Result<BookEmbedding> {
    let n = g.n();
    if n <= 2 {
        let order: Vec<usize> = (0..n).collect();
        return Ok(from_order(g, &order, &vec![Page::Above; edges.len()]));
    }
    let (total, all) = triangulate(n, edges);
    let rot = planarity::planar_embedding(total, &all)
        .ok_or_else(|| Error::Invariant("triangulation lost planarity".into()))?;
    let (root, parent) = canonical_tree(&rot);
    let mirrored: Vec<Vec<usize>> = rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
    let (spine, arcs) = tour_embedding(&rot, root, &parent)
        .or_else(|| tour_embedding(&mirrored, root, &parent))
        .ok_or_else(|| Error::Invariant("a chord needs two division vertices".into()))?;

    let original: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a.min(b), a.max(b)), i))
        .collect();
    let keep = |&(v, chord): &(usize, Option<(usize, usize)>)| match chord {
        None => v < n,
        Some(key) => original.contains_key(&key),
    };
    let mut new_pos = vec![usize::MAX; spine.len()];
    let mut out_spine = Vec::new();
    for (p, entry) in spine.iter().enumerate() {
        if keep(entry) {
            new_pos[p] = out_spine.len();
            out_spine.push(match entry.1 {
                None => SpineItem::Vertex(g.vertices[entry.0].id),
                Some(key) => {
                    let (a, b) = g.edges[original[&key]];
                    SpineItem::Division((a, b))
                }
            });
        }
    }
    let mut segments = Vec::new();
    for (a, b, page) in arcs {
        let (va, vb) = (spine[a], spine[b]);
        let key = match (va.1, vb.1) {
            (Some(k), _) | (_, Some(k)) => k,
            (None, None) => (va.0.min(vb.0), va.0.max(vb.0)),
        };
        let Some(&ei) = original.get(&key) else { continue };
        if new_pos[a] == usize::MAX || new_pos[b] == usize::MAX {
            continue;
        }
        let (x, y) = (new_pos[a], new_pos[b]);
        segments.push(Segment {
            edge: g.edges[ei],
            from: x.min(y),
            to: x.max(y),
            page,
        });
    }
    Ok(BookEmbedding {
        spine: out_spine,
        segments,
    })
}

/// Spine order of one graph with colors; division and dummy items carry the
/// reserved division color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinalPath {
    pub items: Vec<SpineItem>,
    pub colors: Vec<Color>,
}

impl SpinalPath {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// The color reserved for division and dummy vertices.
pub fn division_color(palette: u32) -> Color {
    palette + 1
}

/// Spinal paths of all graphs, padded at the right end with dummy vertices to
/// a common length.
pub fn extract_spinal_paths(set: &ColoredGraphSet, embeddings: &[BookEmbedding]) -> Result<Vec<SpinalPath>> {
    if embeddings.len() != set.k() {
        return Err(Error::Consistency(format!(
            "{} embeddings for {} graphs",
            embeddings.len(),
            set.k()
        )));
    }
    let dc = division_color(set.palette);
    let len = embeddings.iter().map(|b| b.spine.len()).max().unwrap_or(0);
    let mut paths = Vec::with_capacity(set.k());
    for (g, be) in set.graphs.iter().zip(embeddings) {
        let color: HashMap<VertexId, Color> = g.vertices.iter().map(|v| (v.id, v.color)).collect();
        let mut items = be.spine.clone();
        let mut colors: Vec<Color> = items
            .iter()
            .map(|it| match it {
                SpineItem::Vertex(v) => color[v],
                _ => dc,
            })
            .collect();
        for j in 0..len - items.len() {
            items.push(SpineItem::Dummy(j));
            colors.push(dc);
        }
        paths.push(SpinalPath { items, colors });
    }
    Ok(paths)
}

/// Book embeddings of every graph, computed in parallel.
pub fn embed_all(set: &ColoredGraphSet) -> Result<Vec<BookEmbedding>> {
    use rayon::prelude::*;
    set.graphs
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            compute_book_embedding(g).map_err(|e| match e {
                Error::NonPlanar { obstruction, .. } => Error::NonPlanar {
                    graph: gi,
                    obstruction,
                },
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn graph(n: usize, edges: &[(i64, i64)]) -> ColoredGraph {
        let vs = (0..n as i64).map(|id| Vertex { id, color: 1 }).collect();
        ColoredGraph::new(vs, edges.to_vec()).unwrap()
    }

    fn construct_only(g: &ColoredGraph) -> BookEmbedding {
        let be = construct(g, &g.dense_edges()).unwrap();
        be.validate(g).unwrap();
        be
    }

    #[test]
    fn path_uses_its_own_order() {
        let g = graph(12, &(0..11).map(|i| (i, i + 1)).collect::<Vec<_>>());
        let be = compute_book_embedding(&g).unwrap();
        assert_eq!(be.spine, (0..12).map(SpineItem::Vertex).collect::<Vec<_>>());
        assert!(be.segments.iter().all(|s| s.page == Page::Above));
        assert_eq!(be.division_count(), 0);
    }

    #[test]
    fn c4_has_no_divisions() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let be = compute_book_embedding(&g).unwrap();
        be.validate(&g).unwrap();
        assert_eq!(be.division_count(), 0);
    }

    #[test]
    fn k4_and_k5() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        compute_book_embedding(&k4).unwrap().validate(&k4).unwrap();
        construct_only(&k4);
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let k5 = graph(5, &e);
        match compute_book_embedding(&k5) {
            Err(Error::NonPlanar { obstruction, .. }) => assert_eq!(obstruction.len(), 10),
            other => panic!("expected planarity error, got {other:?}"),
        }
    }

    #[test]
    fn construction_handles_disconnected_and_sparse_graphs() {
        construct_only(&graph(7, &[(0, 1), (2, 3), (3, 4)]));
        construct_only(&graph(3, &[]));
        construct_only(&graph(2, &[(0, 1)]));
        construct_only(&graph(9, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (5, 6)]));
    }

    #[test]
    fn construction_on_triangulated_grid() {
        let w = 7i64;
        let mut e = Vec::new();
        for r in 0..w {
            for c in 0..w {
                let v = r * w + c;
                if c + 1 < w {
                    e.push((v, v + 1));
                }
                if r + 1 < w {
                    e.push((v, v + w));
                }
                if c + 1 < w && r + 1 < w {
                    e.push((v, v + w + 1));
                }
            }
        }
        let g = graph((w * w) as usize, &e);
        let be = construct_only(&g);
        assert_eq!(be.recovered_edges().len(), e.len());
    }

    #[test]
    fn interleaving_detector() {
        assert!(find_interleaving(4, &[(0, 2), (1, 3)]).is_some());
        assert!(find_interleaving(4, &[(0, 3), (1, 2), (0, 1), (2, 3)]).is_none());
        assert!(find_interleaving(5, &[(0, 4), (0, 2), (2, 4), (1, 2)]).is_none());
    }

    #[test]
    fn supplied_spine_is_used() {
        let mut g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        g.spine = Some(vec![SpineItem::Vertex(2), SpineItem::Vertex(0), SpineItem::Vertex(1)]);
        g.pages = Some(vec![
            PageRecord { edge: (0, 1), pages: vec![Page::Above] },
            PageRecord { edge: (1, 2), pages: vec![Page::Below] },
            PageRecord { edge: (0, 2), pages: vec![Page::Above] },
        ]);
        let be = compute_book_embedding(&g).unwrap();
        assert_eq!(be.spine[0], SpineItem::Vertex(2));
    }

    #[test]
    fn padding_goes_to_the_end() {
        let a = graph(3, &[(0, 1), (1, 2)]);
        let b = graph(3, &[(0, 1), (1, 2)]);
        let set = ColoredGraphSet::new(1, vec![a.clone(), b]).unwrap();
        let mut be_a = compute_book_embedding(&a).unwrap();
        let be_b = be_a.clone();
        be_a.spine.insert(1, SpineItem::Division((0, 2)));
        be_a.spine.insert(2, SpineItem::Division((1, 2)));
        let paths = extract_spinal_paths(&set, &[be_a, be_b]).unwrap();
        assert_eq!(paths[0].len(), 5);
        assert_eq!(paths[1].len(), 5);
        assert_eq!(&paths[1].items[3..], &[SpineItem::Dummy(0), SpineItem::Dummy(1)]);
        assert!(paths[1].colors[3..].iter().all(|&c| c == 2));
    }

    #[test]
    fn construction_on_random_planar_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for case in 0..300 {
            let n = 3 + case % 60;
            let keep = [1.0, 0.9, 0.6, 0.3][case % 4];
            let e = crate::generate::random_planar_edges(n, keep, &mut rng);
            let ids: Vec<(i64, i64)> = e.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
            let g = graph(n, &ids);
            let be = construct_only(&g);
            assert_eq!(be.recovered_edges().len(), e.len());
            compute_book_embedding(&g).unwrap().validate(&g).unwrap();
        }
    }
}
