//! Left-right planarity test producing a combinatorial embedding, plus
//! extraction of a minimal non-planar edge set when the test fails.
//!
//! Vertices are dense indices `0..n`. Rotations are reported clockwise.

use std::collections::HashMap;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Rotation system as doubly linked cyclic lists keyed by half-edge.
#[derive(Default)]
struct RotationBuilder {
    links: HashMap<(usize, usize), (usize, usize)>,
    first: Vec<Option<usize>>,
}

impl RotationBuilder {
    fn new(n: usize) -> Self {
        RotationBuilder {
            links: HashMap::new(),
            first: vec![None; n],
        }
    }

    /// Inserts `w` clockwise right after `reference` around `v`.
    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.links.insert((v, w), (w, w));
                self.first[v] = Some(w);
            }
            Some(r) => {
                let next = self.links[&(v, r)].0;
                self.links.insert((v, w), (next, r));
                self.links.get_mut(&(v, r)).unwrap().0 = w;
                self.links.get_mut(&(v, next)).unwrap().1 = w;
            }
        }
    }

    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let ccw_ref = self.links[&(v, r)].1;
                self.add_cw(v, w, Some(ccw_ref));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let reference = self.first[v];
        self.add_ccw(v, w, reference);
    }

    fn rotations(&self, n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|v| {
                let mut out = Vec::new();
                if let Some(start) = self.first[v] {
                    let mut cur = start;
                    loop {
                        out.push(cur);
                        cur = self.links[&(v, cur)].0;
                        if cur == start {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    }
}

struct LrState {
    n: usize,
    adj: Vec<Vec<usize>>,
    // oriented edges
    src: Vec<usize>,
    dst: Vec<usize>,
    eid: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    roots: Vec<usize>,
    ref_: Vec<usize>,
    side: Vec<i64>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl LrState {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let m = edges.len();
        LrState {
            n,
            adj,
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            eid: HashMap::with_capacity(2 * m),
            out: vec![Vec::new(); n],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting: Vec::with_capacity(m),
            roots: Vec::new(),
            ref_: Vec::new(),
            side: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn orient(&mut self, root: usize) {
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
            if *idx > 0 {
                // an edge at idx-1 may be a finished tree edge
                let w = self.adj[v][*idx - 1];
                if let Some(&e) = self.eid.get(&(v, w)) {
                    if self.parent_edge[w] == e && self.post_pending(e) {
                        self.finish_edge(v, e);
                    }
                }
            }
            if *idx == self.adj[v].len() {
                frames.pop();
                continue;
            }
            let w = self.adj[v][*idx];
            *idx += 1;
            if self.eid.contains_key(&(v, w)) || self.eid.contains_key(&(w, v)) {
                continue;
            }
            let e = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.eid.insert((v, w), e);
            self.out[v].push(w);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(i64::MIN);
            if self.height[w] == NONE {
                self.parent_edge[w] = e;
                self.height[w] = self.height[v] + 1;
                frames.push((w, 0));
            } else {
                self.lowpt[e] = self.height[w];
                self.finish_edge(v, e);
            }
        }
    }

    fn post_pending(&self, e: usize) -> bool {
        self.nesting[e] == i64::MIN
    }

    fn finish_edge(&mut self, v: usize, vw: usize) {
        let mut depth = 2 * self.lowpt[vw] as i64;
        if self.lowpt2[vw] < self.height[v] {
            depth += 1;
        }
        self.nesting[vw] = depth;
        let e = self.parent_edge[v];
        if e != NONE {
            if self.lowpt[vw] < self.lowpt[e] {
                self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                self.lowpt[e] = self.lowpt[vw];
            } else if self.lowpt[vw] > self.lowpt[e] {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
            } else {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
            }
        }
    }

    fn conflicting(&self, iv: &Interval, b: usize) -> bool {
        !iv.is_empty() && self.lowpt[iv.high.expect("non-empty")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("right")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("left")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn set_ref(&mut self, e: Option<usize>, target: Option<usize>) {
        if let Some(e) = e {
            self.ref_[e] = target.unwrap_or(NONE);
        }
    }

    fn top_conflicting(&self, ei: usize) -> bool {
        match self.stack.last() {
            Some(top) => self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei),
            None => false,
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low.expect("low")] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.set_ref(q.right.low, Some(self.lowpt_edge[e]));
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while self.top_conflicting(ei) {
            let mut q = self.stack.pop().expect("stack");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = opt(self.ref_[h]);
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.ref_[l] = p.right.low.unwrap_or(NONE);
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = opt(self.ref_[h]);
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.ref_[r] = p.left.low.unwrap_or(NONE);
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = *self.stack.last().expect("return edge pending");
            let hl = top.left.high;
            let hr = top.right.high;
            self.ref_[e] = match (hl, hr) {
                (Some(l), None) => l,
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => l,
                (_, r) => r.unwrap_or(NONE),
            };
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
            if *idx > 0 {
                let w = self.out[v][*idx - 1];
                let ei = self.eid[&(v, w)];
                if self.parent_edge[w] == ei && !self.integrate(v, ei, *idx - 1) {
                    return false;
                }
            }
            if *idx == self.out[v].len() {
                frames.pop();
                let e = self.parent_edge[v];
                if e != NONE {
                    self.remove_back_edges(e);
                }
                continue;
            }
            let w = self.out[v][*idx];
            *idx += 1;
            let ei = self.eid[&(v, w)];
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                frames.push((w, 0));
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
                if !self.integrate(v, ei, *idx - 1) {
                    return false;
                }
            }
        }
        true
    }

    fn integrate(&mut self, v: usize, ei: usize, pos: usize) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if pos == 0 {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        while self.ref_[*chain.last().unwrap()] != NONE {
            let next = self.ref_[*chain.last().unwrap()];
            chain.push(next);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.ref_[a] = NONE;
        }
        self.side[e]
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.n;
        let m: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if n > 2 && m > 3 * n - 6 {
            return None;
        }
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        let me = self.src.len();
        self.ref_ = vec![NONE; me];
        self.side = vec![1; me];
        self.lowpt_edge = vec![NONE; me];
        self.stack_bottom = vec![0; me];
        for v in 0..n {
            let mut out = std::mem::take(&mut self.out[v]);
            out.sort_by_key(|&w| self.nesting[self.eid[&(v, w)]]);
            self.out[v] = out;
        }
        for r in self.roots.clone() {
            if !self.test(r) {
                return None;
            }
        }
        for e in 0..me {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        let mut rot = RotationBuilder::new(n);
        for v in 0..n {
            let mut out = std::mem::take(&mut self.out[v]);
            out.sort_by_key(|&w| self.nesting[self.eid[&(v, w)]]);
            let mut prev = None;
            for &w in &out {
                rot.add_cw(v, w, prev);
                prev = Some(w);
            }
            self.out[v] = out;
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        for r in self.roots.clone() {
            let mut frames: Vec<(usize, usize)> = vec![(r, 0)];
            while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
                if *idx == self.out[v].len() {
                    frames.pop();
                    continue;
                }
                let w = self.out[v][*idx];
                *idx += 1;
                let ei = self.eid[&(v, w)];
                if ei == self.parent_edge[w] {
                    rot.add_first(w, v);
                    left_ref[v] = w;
                    right_ref[v] = w;
                    frames.push((w, 0));
                } else if self.side[ei] == 1 {
                    rot.add_cw(w, v, Some(right_ref[w]));
                } else {
                    rot.add_ccw(w, v, Some(left_ref[w]));
                    left_ref[w] = v;
                }
            }
        }
        Some(rot.rotations(n))
    }
}

fn opt(x: usize) -> Option<usize> {
    (x != NONE).then_some(x)
}

/// Clockwise rotation system of a planar embedding, or `None` if the graph is
/// not planar. Edges must be simple.
pub fn planar_embedding(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    LrState::new(n, edges).run()
}

pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    planar_embedding(n, edges).is_some()
}

/// Edge subset of a non-planar graph that stays non-planar but becomes planar
/// after deleting any single edge, i.e. a subdivision of K5 or K3,3.
pub fn kuratowski_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut kept: Vec<(usize, usize)> = edges.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let e = kept.remove(i);
        if is_planar(n, &kept) {
            kept.insert(i, e);
            i += 1;
        }
    }
    kept
}

/// Faces of an embedded graph as closed walks of vertices. Uses the rule that
/// after traversing `u -> v` the walk continues to the neighbor following `u`
/// counter-clockwise around `v`.
pub fn faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &w) in rot.iter().enumerate() {
            pos.insert((v, w), i);
        }
    }
    let mut seen: std::collections::HashSet<(usize, usize)> = Default::default();
    let mut out = Vec::new();
    for (v, rot) in rotation.iter().enumerate() {
        for &w in rot {
            if seen.contains(&(v, w)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (v, w);
            while seen.insert((a, b)) {
                face.push(a);
                let rb = &rotation[b];
                let i = pos[&(b, a)];
                let c = rb[(i + rb.len() - 1) % rb.len()];
                a = b;
                b = c;
            }
            out.push(face);
        }
    }
    out
}
