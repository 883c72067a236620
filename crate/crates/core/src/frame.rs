//! The ordered labeled tree underlying every proof net of a sequent.
//!
//! A frame is built deterministically from the folded type of a sequent.
//! Vertices are identified with their rank in the linear order, so `a < b`
//! on vertices is plain integer comparison.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{PrimIndex, Sequent, Type};

/// Rank of a vertex in the frame's linear order (leftmost = 0).
pub type VertexId = usize;

/// Mark on the edge from a vertex to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// `-1`: left argument of a division.
    Neg,
    /// `1`: right argument of a division.
    Pos,
    /// `2`: body of a modality.
    Bang,
}

impl EdgeLabel {
    pub fn code(self) -> i8 {
        match self {
            EdgeLabel::Neg => -1,
            EdgeLabel::Pos => 1,
            EdgeLabel::Bang => 2,
        }
    }

    pub fn from_code(code: i64) -> Option<Self> {
        match code {
            -1 => Some(EdgeLabel::Neg),
            1 => Some(EdgeLabel::Pos),
            2 => Some(EdgeLabel::Bang),
            _ => None,
        }
    }
}

/// One step from a vertex down to a child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Left,
    Right,
    Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub parent: Option<VertexId>,
    pub edge: Option<EdgeLabel>,
    pub prim: Option<PrimIndex>,
}

/// Which part of the source sequent a vertex belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Loc {
    /// The division vertex whose left argument is antecedent element `k`.
    Spine(usize),
    /// A vertex inside antecedent element `k`, reached by `path` from its root.
    Ant(usize, Vec<Step>),
    /// A vertex inside the succedent.
    Succ(Vec<Step>),
}

#[derive(Clone, Debug)]
pub struct Frame {
    vertices: Vec<Vertex>,
    root: VertexId,
    source: Sequent,
    depth: Vec<usize>,
    head: Vec<VertexId>,
    children: Vec<Vec<VertexId>>,
    paths: Vec<Vec<Step>>,
}

/// Frames compare by tree, labels and order only; the source sequent is
/// not part of the structure.
impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.vertices == other.vertices
    }
}

impl Eq for Frame {}

struct Node {
    parent: Option<(usize, EdgeLabel)>,
    prim: Option<PrimIndex>,
    path: Vec<Step>,
}

fn build_nodes(t: &Type, parent: Option<(usize, EdgeLabel)>, path: Vec<Step>, nodes: &mut Vec<Node>) -> Vec<usize> {
    let me = nodes.len();
    nodes.push(Node {
        parent,
        prim: t.as_prim(),
        path: path.clone(),
    });
    let child_path = |s: Step| {
        let mut p = path.clone();
        p.push(s);
        p
    };
    match t {
        Type::Prim(_) => vec![me],
        Type::Bang(a) => {
            let mut order = vec![me];
            order.extend(build_nodes(
                a,
                Some((me, EdgeLabel::Bang)),
                child_path(Step::Body),
                nodes,
            ));
            order
        }
        Type::Div(a, b) => {
            let mut order = build_nodes(a, Some((me, EdgeLabel::Neg)), child_path(Step::Left), nodes);
            order.reverse();
            order.push(me);
            order.extend(build_nodes(
                b,
                Some((me, EdgeLabel::Pos)),
                child_path(Step::Right),
                nodes,
            ));
            order
        }
    }
}

pub fn build_frame(s: &Sequent) -> Frame {
    Frame::build(s)
}

impl Frame {
    pub fn build(s: &Sequent) -> Frame {
        let mut nodes = Vec::new();
        let order = build_nodes(&s.to_type(), None, Vec::new(), &mut nodes);
        let mut rank = vec![0; nodes.len()];
        for (pos, &n) in order.iter().enumerate() {
            rank[n] = pos;
        }
        let mut vertices = Vec::with_capacity(order.len());
        let mut paths = Vec::with_capacity(order.len());
        for &n in &order {
            let node = &nodes[n];
            vertices.push(Vertex {
                parent: node.parent.map(|(p, _)| rank[p]),
                edge: node.parent.map(|(_, e)| e),
                prim: node.prim,
            });
            paths.push(node.path.clone());
        }
        Frame::with_caches(vertices, rank[0], s.clone(), Some(paths)).expect("constructed frames are well formed")
    }

    /// Assembles a frame from raw parts, e.g. after deserialization.
    /// Fails if the parts do not form a labeled tree of the expected shape.
    pub fn from_parts(vertices: Vec<Vertex>, root: VertexId) -> Result<Frame, FrameError> {
        let violations = structural_violations(&vertices, root);
        if !violations.is_empty() {
            return Err(FrameError::Malformed(violations));
        }
        let source = Sequent::new(Vec::new(), type_at(&vertices, &children_of(&vertices), root));
        Frame::with_caches(vertices, root, source, None)
    }

    fn with_caches(
        vertices: Vec<Vertex>,
        root: VertexId,
        source: Sequent,
        paths: Option<Vec<Vec<Step>>>,
    ) -> Result<Frame, FrameError> {
        let n = vertices.len();
        let children = children_of(&vertices);
        let mut depth = vec![0; n];
        let mut paths_out = vec![Vec::new(); n];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                let e = vertices[c]
                    .edge
                    .ok_or(FrameError::Malformed(vec![FrameViolation::Structure {
                        vertex: c,
                        detail: "edge label missing".into(),
                    }]))?;
                depth[c] = depth[v] + usize::from(e == EdgeLabel::Neg);
                let mut p = paths_out[v].clone();
                p.push(match e {
                    EdgeLabel::Neg => Step::Left,
                    EdgeLabel::Pos => Step::Right,
                    EdgeLabel::Bang => Step::Body,
                });
                paths_out[c] = p;
                stack.push(c);
            }
        }
        let mut head = vec![0; n];
        for (v, h) in head.iter_mut().enumerate() {
            let mut cur = v;
            while let Some(&c) = children[cur]
                .iter()
                .find(|&&c| matches!(vertices[c].edge, Some(EdgeLabel::Pos | EdgeLabel::Bang)))
            {
                cur = c;
            }
            *h = cur;
        }
        Ok(Frame {
            vertices,
            root,
            source,
            depth,
            head,
            children,
            paths: paths.unwrap_or(paths_out),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn source(&self) -> &Sequent {
        &self.source
    }

    /// Reinterprets this frame as the frame of another sequent with the same
    /// folded type.
    pub fn with_source(&self, s: &Sequent) -> Option<Frame> {
        (s.to_type() == self.source.to_type()).then(|| Frame {
            source: s.clone(),
            ..self.clone()
        })
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.vertices[v].parent
    }

    pub fn edge(&self, v: VertexId) -> Option<EdgeLabel> {
        self.vertices[v].edge
    }

    pub fn prim(&self, v: VertexId) -> Option<PrimIndex> {
        self.vertices[v].prim
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }

    /// Leaves in increasing order.
    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).filter(|&v| self.is_leaf(v))
    }

    /// Number of `-1` edges on the path from `v` to the root.
    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    /// The leaf reached from `v` through edges marked `1` or `2` only.
    pub fn head(&self, v: VertexId) -> VertexId {
        self.head[v]
    }

    /// `a O* b`: `b` lies on the path from `a` to the root, inclusive.
    pub fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        let mut cur = Some(a);
        while let Some(v) = cur {
            if v == b {
                return true;
            }
            cur = self.parent(v);
        }
        false
    }

    /// `a O+ b`.
    pub fn is_strict_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.is_ancestor(a, b)
    }

    /// `a`, `O(a)`, `O(O(a))`, ..., root.
    pub fn ancestors(&self, a: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::successors(Some(a), move |&v| self.parent(v))
    }

    /// All `b` with `b O* a`, in increasing order.
    pub fn subtree(&self, a: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Steps from the root down to `v`.
    pub fn path(&self, v: VertexId) -> &[Step] {
        &self.paths[v]
    }

    /// Position of `v` relative to the source sequent's elements.
    pub fn loc(&self, v: VertexId) -> Loc {
        let n = self.source.antecedent.len();
        let path = &self.paths[v];
        let rights = path.iter().take(n).take_while(|&&s| s == Step::Right).count();
        if rights == n {
            Loc::Succ(path[n..].to_vec())
        } else if path.len() == rights {
            Loc::Spine(n - 1 - rights)
        } else {
            Loc::Ant(n - 1 - rights, path[rights + 1..].to_vec())
        }
    }

    /// Inverse of [`Frame::loc`].
    pub fn vertex_at(&self, loc: &Loc) -> Option<VertexId> {
        let n = self.source.antecedent.len();
        let mut path = Vec::new();
        match loc {
            Loc::Spine(k) if *k < n => path.extend(std::iter::repeat_n(Step::Right, n - 1 - k)),
            Loc::Ant(k, rest) if *k < n => {
                path.extend(std::iter::repeat_n(Step::Right, n - 1 - k));
                path.push(Step::Left);
                path.extend_from_slice(rest);
            }
            Loc::Succ(rest) => {
                path.extend(std::iter::repeat_n(Step::Right, n));
                path.extend_from_slice(rest);
            }
            _ => return None,
        }
        self.descend(self.root, &path)
    }

    fn descend(&self, from: VertexId, path: &[Step]) -> Option<VertexId> {
        let mut cur = from;
        for &s in path {
            let want = match s {
                Step::Left => EdgeLabel::Neg,
                Step::Right => EdgeLabel::Pos,
                Step::Body => EdgeLabel::Bang,
            };
            cur = *self.children[cur].iter().find(|&&c| self.edge(c) == Some(want))?;
        }
        Some(cur)
    }

    /// The root vertex of antecedent element `k`.
    pub fn element_root(&self, k: usize) -> Option<VertexId> {
        self.vertex_at(&Loc::Ant(k, Vec::new()))
    }

    /// Antecedent element containing `v`, if any.
    pub fn element_of(&self, v: VertexId) -> Option<usize> {
        match self.loc(v) {
            Loc::Ant(k, _) => Some(k),
            _ => None,
        }
    }

    /// Violations of the structural invariants, PN11, and D1-D3.
    pub fn check(&self) -> Vec<FrameViolation> {
        let mut out = structural_violations(&self.vertices, self.root);
        if !out.is_empty() {
            return out;
        }
        out.extend(self.pn11_violations());
        out.extend(self.d1_violations());
        out.extend(self.d2_d3_violations());
        out
    }

    pub fn pn11_violations(&self) -> Vec<FrameViolation> {
        (0..self.len())
            .filter_map(|a| {
                let b = self.parent(a)?;
                (self.edge(a) == Some(EdgeLabel::Bang) && self.depth(b).is_multiple_of(2))
                    .then_some(FrameViolation::Pn11 { child: a, parent: b })
            })
            .collect()
    }

    /// D1: `a <= b <= c`, `a O* d`, `c O* d` imply `b O* d`. For a fixed `d`
    /// this says the subtree of `d` is an interval of the order; checking the
    /// extremes `a = min`, `c = max` covers every triple.
    fn d1_violations(&self) -> Vec<FrameViolation> {
        let mut out = Vec::new();
        for d in 0..self.len() {
            let sub = self.subtree(d);
            let (lo, hi) = (sub[0], sub[sub.len() - 1]);
            for b in lo..=hi {
                if sub.binary_search(&b).is_err() {
                    out.push(FrameViolation::D1 { a: lo, b, c: hi, d });
                }
            }
        }
        out
    }

    fn d2_d3_violations(&self) -> Vec<FrameViolation> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.ancestors(a) {
                let h = self.head(b);
                if self.depth(b).is_multiple_of(2) {
                    if a > h {
                        out.push(FrameViolation::D2 { a, b });
                    }
                } else if h > a {
                    out.push(FrameViolation::D3 { a, b });
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson {
            order: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    parent: v.parent,
                    edge: v.edge.map(|e| e.code() as i64),
                    prim: v.prim.map(PrimIndex::get),
                })
                .collect(),
            root: self.root,
        }
    }

    pub fn from_json(json: &FrameJson) -> Result<Frame, FrameError> {
        let mut vertices = Vec::with_capacity(json.order.len());
        for (pos, v) in json.order.iter().enumerate() {
            if v.id != pos {
                return Err(FrameError::Json(format!("vertex at position {pos} has id {}", v.id)));
            }
            let edge = match v.edge {
                Some(code) => {
                    Some(EdgeLabel::from_code(code).ok_or_else(|| FrameError::Json(format!("bad edge label {code}")))?)
                }
                None => None,
            };
            let prim = match v.prim {
                Some(i) => Some(PrimIndex::new(i).ok_or_else(|| FrameError::Json("primitive index 0".into()))?),
                None => None,
            };
            vertices.push(Vertex {
                parent: v.parent,
                edge,
                prim,
            });
        }
        Frame::from_parts(vertices, json.root)
    }

    /// Graphviz rendering; leaves at odd depth carry a `~` marker.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph frame {\n  rankdir=BT;\n  ordering=out;\n");
        self.write_dot_body(&mut out, |_| false);
        out.push_str("}\n");
        out
    }

    pub(crate) fn write_dot_body(&self, out: &mut String, filled: impl Fn(VertexId) -> bool) {
        for v in 0..self.len() {
            let label = match self.prim(v) {
                Some(p) if self.depth(v) % 2 == 1 => format!("~{p}"),
                Some(p) => p.to_string(),
                None => match self.children(v).len() {
                    1 => "!".to_string(),
                    _ => "\\\\".to_string(),
                },
            };
            let style = if filled(v) { ", style=filled" } else { "" };
            let _ = writeln!(out, "  v{v} [label=\"{label}\"{style}];");
        }
        for v in 0..self.len() {
            if let (Some(p), Some(e)) = (self.parent(v), self.edge(v)) {
                let _ = writeln!(out, "  v{v} -> v{p} [label=\"{}\"];", e.code());
            }
        }
        let leaves: Vec<String> = self.leaves().map(|v| format!("v{v}")).collect();
        if leaves.len() > 1 {
            let _ = writeln!(out, "  {{ rank=same; {} [style=invis]; }}", leaves.join(" -> "));
        }
    }
}

fn children_of(vertices: &[Vertex]) -> Vec<Vec<VertexId>> {
    let mut children = vec![Vec::new(); vertices.len()];
    for (v, vx) in vertices.iter().enumerate() {
        if let Some(p) = vx.parent {
            if p < vertices.len() {
                children[p].push(v);
            }
        }
    }
    children
}

fn type_at(vertices: &[Vertex], children: &[Vec<VertexId>], v: VertexId) -> Type {
    if let Some(p) = vertices[v].prim {
        return Type::Prim(p);
    }
    let child = |e: EdgeLabel| {
        let c = children[v]
            .iter()
            .copied()
            .find(|&c| vertices[c].edge == Some(e))
            .expect("checked by structural_violations");
        type_at(vertices, children, c)
    };
    if children[v].len() == 1 {
        Type::bang(child(EdgeLabel::Bang))
    } else {
        Type::div(child(EdgeLabel::Neg), child(EdgeLabel::Pos))
    }
}

fn structural_violations(vertices: &[Vertex], root: VertexId) -> Vec<FrameViolation> {
    let n = vertices.len();
    let mut out = Vec::new();
    let bad = |vertex, detail: &str| FrameViolation::Structure {
        vertex,
        detail: detail.to_string(),
    };
    if root >= n {
        out.push(bad(root, "root out of range"));
        return out;
    }
    for (v, vx) in vertices.iter().enumerate() {
        if vx.parent.is_some() != vx.edge.is_some() {
            out.push(bad(v, "edge label present iff parent present"));
        }
        match vx.parent {
            None if v != root => out.push(bad(v, "non-root vertex without parent")),
            Some(_) if v == root => out.push(bad(v, "root has a parent")),
            Some(p) if p >= n => out.push(bad(v, "parent out of range")),
            _ => {}
        }
    }
    if !out.is_empty() {
        return out;
    }
    for v in 0..n {
        let mut cur = v;
        let mut steps = 0;
        while let Some(p) = vertices[cur].parent {
            cur = p;
            steps += 1;
            if steps > n {
                out.push(bad(v, "parent links contain a cycle"));
                return out;
            }
        }
    }
    let children = children_of(vertices);
    for (v, cs) in children.iter().enumerate() {
        let mut labels: Vec<_> = cs.iter().filter_map(|&c| vertices[c].edge).collect();
        labels.sort_by_key(|e| e.code());
        let shape_ok = match labels.as_slice() {
            [] => vertices[v].prim.is_some(),
            [EdgeLabel::Bang] => vertices[v].prim.is_none(),
            [EdgeLabel::Neg, EdgeLabel::Pos] => vertices[v].prim.is_none(),
            _ => false,
        };
        if !shape_ok {
            out.push(bad(v, "vertex is neither a labeled leaf, a modality, nor a division"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameViolation {
    Structure {
        vertex: VertexId,
        detail: String,
    },
    /// A `2`-edge from `child` enters `parent` at even depth.
    Pn11 {
        child: VertexId,
        parent: VertexId,
    },
    D1 {
        a: VertexId,
        b: VertexId,
        c: VertexId,
        d: VertexId,
    },
    D2 {
        a: VertexId,
        b: VertexId,
    },
    D3 {
        a: VertexId,
        b: VertexId,
    },
}

impl FrameViolation {
    pub fn is_pn11(&self) -> bool {
        matches!(self, FrameViolation::Pn11 { .. })
    }
}

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("malformed frame: {0:?}")]
    Malformed(Vec<FrameViolation>),
    #[error("bad frame json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub edge: Option<i64>,
    pub prim: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub order: Vec<VertexJson>,
    pub root: usize,
}

pub fn depth(f: &Frame, v: VertexId) -> usize {
    f.depth(v)
}

pub fn head(f: &Frame, v: VertexId) -> VertexId {
    f.head(v)
}

pub fn is_ancestor(f: &Frame, a: VertexId, b: VertexId) -> bool {
    f.is_ancestor(a, b)
}

pub fn check_frame(f: &Frame) -> Vec<FrameViolation> {
    f.check()
}
