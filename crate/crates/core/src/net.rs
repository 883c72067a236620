//! Proof nets: a frame together with an axiom matching `S` on its leaves and
//! a set `U` of active vertices, subject to the conditions PN1-PN11.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{EdgeLabel, Frame, FrameError, FrameJson, VertexId};
use crate::syntax::Sequent;

/// An involution on a subset of the frame's leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    partner: Vec<Option<VertexId>>,
}

impl Matching {
    pub fn empty(size: usize) -> Self {
        Matching {
            partner: vec![None; size],
        }
    }

    /// Builds a matching over `size` vertices from unordered pairs.
    pub fn from_pairs(size: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, NetViolation> {
        let mut m = Matching::empty(size);
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(NetViolation::Domain { vertex: a.max(b) });
            }
            if a == b {
                return Err(NetViolation::Reflexive { leaf: a });
            }
            for (x, y) in [(a, b), (b, a)] {
                match m.partner[x] {
                    Some(z) if z != y => {
                        return Err(NetViolation::Pn2 { a: x, b: z, c: y });
                    }
                    _ => m.partner[x] = Some(y),
                }
            }
        }
        Ok(m)
    }

    pub fn get(&self, a: VertexId) -> Option<VertexId> {
        self.partner.get(a).copied().flatten()
    }

    pub fn is_matched(&self, a: VertexId) -> bool {
        self.get(a).is_some()
    }

    /// Pairs `(a, b)` with `a < b`, in increasing order of `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(a, p)| p.filter(|&b| a < b).map(|b| (a, b)))
    }

    /// `pr1(S)` in increasing order.
    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.partner.iter().enumerate().filter_map(|(a, p)| p.map(|_| a))
    }

    pub fn is_empty(&self) -> bool {
        self.partner.iter().all(Option::is_none)
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    fn link(&mut self, a: VertexId, b: VertexId) {
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
    }

    fn unlink(&mut self, a: VertexId, b: VertexId) {
        self.partner[a] = None;
        self.partner[b] = None;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
}

impl VertexSet {
    pub fn empty(size: usize) -> Self {
        VertexSet {
            members: vec![false; size],
        }
    }

    pub fn from_members(size: usize, members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = VertexSet::empty(size);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        let was = self.members[v];
        self.members[v] = true;
        !was
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().enumerate().filter_map(|(v, &m)| m.then_some(v))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub frame: Frame,
    pub s: Matching,
    pub u: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetViolation {
    /// `S` mentions a vertex that is not a leaf of the frame.
    Domain {
        vertex: VertexId,
    },
    /// A leaf linked to itself.
    Reflexive {
        leaf: VertexId,
    },
    Pn1 {
        a: VertexId,
        b: VertexId,
    },
    Pn2 {
        a: VertexId,
        b: VertexId,
        c: VertexId,
    },
    Pn3 {
        a: VertexId,
        b: VertexId,
        c: VertexId,
        d: VertexId,
    },
    Pn4 {
        a: VertexId,
        b: VertexId,
    },
    Pn5 {
        a: VertexId,
        b: VertexId,
    },
    Pn6 {
        a: VertexId,
        b: VertexId,
        c: VertexId,
    },
    Pn7,
    Pn8 {
        leaf: VertexId,
    },
    Pn9 {
        a: VertexId,
        b: VertexId,
    },
    Pn10 {
        a: VertexId,
        b: VertexId,
    },
    Pn11 {
        a: VertexId,
        b: VertexId,
    },
}

impl NetViolation {
    /// The condition name, e.g. `"PN8"`.
    pub fn condition(&self) -> &'static str {
        match self {
            NetViolation::Domain { .. } => "domain",
            NetViolation::Reflexive { .. } => "irreflexive",
            NetViolation::Pn1 { .. } => "PN1",
            NetViolation::Pn2 { .. } => "PN2",
            NetViolation::Pn3 { .. } => "PN3",
            NetViolation::Pn4 { .. } => "PN4",
            NetViolation::Pn5 { .. } => "PN5",
            NetViolation::Pn6 { .. } => "PN6",
            NetViolation::Pn7 => "PN7",
            NetViolation::Pn8 { .. } => "PN8",
            NetViolation::Pn9 { .. } => "PN9",
            NetViolation::Pn10 { .. } => "PN10",
            NetViolation::Pn11 { .. } => "PN11",
        }
    }
}

/// Conditions that constrain `S` alone (the frame fixed): domain,
/// irreflexivity, PN1-PN7.
pub fn matching_violations(f: &Frame, s: &Matching) -> Vec<NetViolation> {
    let mut out = Vec::new();
    if s.partner.len() != f.len() {
        out.push(NetViolation::Domain {
            vertex: s.partner.len().max(f.len()),
        });
        return out;
    }
    let dom: Vec<VertexId> = s.domain().collect();
    for &a in &dom {
        let b = s.get(a).expect("in domain");
        if !f.is_leaf(a) {
            out.push(NetViolation::Domain { vertex: a });
        }
        if a == b {
            out.push(NetViolation::Reflexive { leaf: a });
        }
        if s.get(b) != Some(a) {
            out.push(NetViolation::Pn1 { a, b });
        }
    }
    if !out.is_empty() {
        return out;
    }
    // PN2 holds by representation.
    for &a in &dom {
        let b = s.get(a).expect("in domain");
        for &c in &dom {
            let d = s.get(c).expect("in domain");
            if a < c && c < b && !(a < d && d < b) {
                out.push(NetViolation::Pn3 { a, b, c, d });
            }
        }
        if f.prim(a) != f.prim(b) {
            out.push(NetViolation::Pn4 { a, b });
        }
        if a < b && f.depth(a) != f.depth(b) + 1 {
            out.push(NetViolation::Pn5 { a, b });
        }
    }
    out.extend(pn6_violations(f, s));
    if dom.is_empty() {
        out.push(NetViolation::Pn7);
    }
    out
}

/// PN6: if `a O* c`, `H(c) = b`, `a` is matched and `a < S(b) < b`, some
/// ancestor `d` of `S(a)` has `H(d) = b`. An unmatched `b` makes the
/// hypothesis false.
fn pn6_violations(f: &Frame, s: &Matching) -> Vec<NetViolation> {
    let mut out = Vec::new();
    for a in s.domain() {
        let sa = s.get(a).expect("in domain");
        for c in f.ancestors(a) {
            let b = f.head(c);
            let Some(sb) = s.get(b) else { continue };
            if a < sb && sb < b && !f.ancestors(sa).any(|d| f.head(d) == b) {
                out.push(NetViolation::Pn6 { a, b, c });
            }
        }
    }
    out
}

/// Conditions involving `U`: PN8-PN10. PN11 depends on the frame only and
/// is reported here too so that one call covers PN1-PN11.
pub fn activity_violations(f: &Frame, s: &Matching, u: &VertexSet) -> Vec<NetViolation> {
    let mut out = Vec::new();
    for leaf in f.leaves() {
        if s.is_matched(leaf) != u.contains(leaf) {
            out.push(NetViolation::Pn8 { leaf });
        }
    }
    for a in 0..f.len() {
        let Some(b) = f.parent(a) else { continue };
        if !u.contains(b) && u.contains(a) {
            out.push(NetViolation::Pn9 { a, b });
        }
        let e = f.edge(a).expect("non-root vertices carry a label");
        if !u.contains(a) && e != EdgeLabel::Bang && u.contains(b) {
            out.push(NetViolation::Pn10 { a, b });
        }
        if e == EdgeLabel::Bang && f.depth(b).is_multiple_of(2) {
            out.push(NetViolation::Pn11 { a, b });
        }
    }
    out
}

pub fn check_net(n: &Net) -> Vec<NetViolation> {
    n.check()
}

/// Least `U` containing the matched leaves that is closed upward and
/// downward across `-1`/`1` edges.
pub fn closure_u(f: &Frame, s: &Matching) -> VertexSet {
    let mut u = VertexSet::empty(f.len());
    let mut work: Vec<VertexId> = s.domain().collect();
    while let Some(v) = work.pop() {
        if !u.insert(v) {
            continue;
        }
        if let Some(p) = f.parent(v) {
            if !u.contains(p) {
                work.push(p);
            }
        }
        for &c in f.children(v) {
            if f.edge(c) != Some(EdgeLabel::Bang) && !u.contains(c) {
                work.push(c);
            }
        }
    }
    u
}

impl Net {
    /// Builds the net with `U = closure_u(frame, s)`.
    pub fn with_closure(frame: Frame, s: Matching) -> Net {
        let u = closure_u(&frame, &s);
        Net { frame, s, u }
    }

    pub fn check(&self) -> Vec<NetViolation> {
        let mut out = matching_violations(&self.frame, &self.s);
        if self.u.members.len() != self.frame.len() {
            out.push(NetViolation::Domain {
                vertex: self.u.members.len(),
            });
            return out;
        }
        out.extend(activity_violations(&self.frame, &self.s, &self.u));
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    pub fn sequent(&self) -> &Sequent {
        self.frame.source()
    }

    pub fn to_json(&self) -> NetJson {
        NetJson {
            frame: self.frame.to_json(),
            s: self.s.pairs().map(|(a, b)| [a, b]).collect(),
            u: self.u.iter().collect(),
        }
    }

    /// Reads a net back; the frame is reconstructed from its JSON and the
    /// result is not checked against PN1-PN11.
    pub fn from_json(json: &NetJson) -> Result<Net, NetError> {
        let frame = Frame::from_json(&json.frame)?;
        let n = frame.len();
        let pairs: Vec<_> = json.s.iter().map(|p| (p[0], p[1])).collect();
        let s = Matching::from_pairs(n, &pairs).map_err(NetError::Matching)?;
        if let Some(&bad) = json.u.iter().find(|&&v| v >= n) {
            return Err(NetError::Matching(NetViolation::Domain { vertex: bad }));
        }
        let u = VertexSet::from_members(n, json.u.iter().copied());
        Ok(Net { frame, s, u })
    }

    /// Graphviz rendering: tree edges solid and labeled, links dashed,
    /// members of `U` filled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph net {\n  rankdir=BT;\n  ordering=out;\n");
        self.frame.write_dot_body(&mut out, |v| self.u.contains(v));
        for (a, b) in self.s.pairs() {
            let _ = writeln!(out, "  v{a} -> v{b} [style=dashed, dir=none, constraint=false];");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Error)]
pub enum NetError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("bad matching: {0:?}")]
    Matching(NetViolation),
    #[error("brute-force enumeration bound exceeded: {leaves} leaves, {internal} internal vertices")]
    TooLarge { leaves: usize, internal: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetJson {
    pub frame: FrameJson,
    #[serde(rename = "S")]
    pub s: Vec<[usize; 2]>,
    #[serde(rename = "U")]
    pub u: Vec<usize>,
}

/// Backtracking search over non-crossing leaf matchings, leftmost leaf
/// first. Each complete candidate is closed with [`closure_u`] and
/// checked; the first net found is returned.
pub fn search_net(f: &Frame) -> Option<Net> {
    NetSearch::new(f).run()
}

struct NetSearch<'a> {
    frame: &'a Frame,
    leaves: Vec<VertexId>,
    /// Leaf may stay unmatched: its root path crosses a `2`-edge.
    shieldable: Vec<bool>,
    /// Some later leaf could close an arc opened at this leaf.
    closable: Vec<bool>,
    s: Matching,
    open: Vec<VertexId>,
}

impl<'a> NetSearch<'a> {
    fn new(frame: &'a Frame) -> Self {
        let leaves: Vec<VertexId> = frame.leaves().collect();
        let shieldable = leaves
            .iter()
            .map(|&l| frame.ancestors(l).any(|v| frame.edge(v) == Some(EdgeLabel::Bang)))
            .collect();
        let closable = leaves
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                leaves[i + 1..]
                    .iter()
                    .any(|&r| frame.prim(r) == frame.prim(l) && frame.depth(l) == frame.depth(r) + 1)
            })
            .collect();
        NetSearch {
            frame,
            s: Matching::empty(frame.len()),
            leaves,
            shieldable,
            closable,
            open: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Net> {
        self.step(0)
    }

    fn step(&mut self, i: usize) -> Option<Net> {
        let f = self.frame;
        if i == self.leaves.len() {
            if !self.open.is_empty() || self.s.is_empty() {
                return None;
            }
            let net = Net::with_closure(f.clone(), self.s.clone());
            return net.is_valid().then_some(net);
        }
        let leaf = self.leaves[i];
        if let Some(&top) = self.open.last() {
            if f.prim(top) == f.prim(leaf) && f.depth(top) == f.depth(leaf) + 1 {
                self.open.pop();
                self.s.link(top, leaf);
                let found = self.step(i + 1);
                self.s.unlink(top, leaf);
                self.open.push(top);
                if found.is_some() {
                    return found;
                }
            }
        }
        if self.closable[i] {
            self.open.push(leaf);
            let found = self.step(i + 1);
            self.open.pop();
            if found.is_some() {
                return found;
            }
        }
        if self.shieldable[i] {
            return self.step(i + 1);
        }
        None
    }
}

pub fn exists_net(s: &Sequent) -> Option<Net> {
    let f = Frame::build(s);
    if !f.pn11_violations().is_empty() {
        return None;
    }
    search_net(&f)
}

/// Limits for [`enumerate_nets_bruteforce`].
pub const BRUTE_FORCE_MAX_LEAVES: usize = 12;
pub const BRUTE_FORCE_MAX_INTERNAL: usize = 14;

/// Reference oracle: every `(S, U)` with `S` a symmetric, functional,
/// irreflexive relation on leaves and `U` a vertex subset, filtered by the
/// net conditions, up to `cap` results.
///
/// The `S`-only conditions are tested before enumerating `U`, and the leaf
/// part of `U` is fixed to `pr1(S)` as PN8 demands; both only skip
/// candidates that would fail anyway.
pub fn enumerate_nets_bruteforce(f: &Frame, cap: usize) -> Result<Vec<Net>, NetError> {
    let leaves: Vec<VertexId> = f.leaves().collect();
    let internal: Vec<VertexId> = (0..f.len()).filter(|&v| !f.is_leaf(v)).collect();
    if leaves.len() > BRUTE_FORCE_MAX_LEAVES || internal.len() > BRUTE_FORCE_MAX_INTERNAL {
        return Err(NetError::TooLarge {
            leaves: leaves.len(),
            internal: internal.len(),
        });
    }
    let mut out = Vec::new();
    let mut s = Matching::empty(f.len());
    let mut taken = vec![false; leaves.len()];
    involutions(&leaves, 0, &mut taken, &mut s, &mut |s| {
        if out.len() >= cap || !matching_violations(f, s).is_empty() {
            return;
        }
        for mask in 0u32..(1 << internal.len()) {
            let members = s.domain().chain(
                internal
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v),
            );
            let u = VertexSet::from_members(f.len(), members);
            if activity_violations(f, s, &u).is_empty() {
                out.push(Net {
                    frame: f.clone(),
                    s: s.clone(),
                    u,
                });
                if out.len() >= cap {
                    return;
                }
            }
        }
    });
    Ok(out)
}

fn involutions(leaves: &[VertexId], i: usize, taken: &mut [bool], s: &mut Matching, visit: &mut impl FnMut(&Matching)) {
    if i == leaves.len() {
        visit(s);
        return;
    }
    if taken[i] {
        return involutions(leaves, i + 1, taken, s, visit);
    }
    involutions(leaves, i + 1, taken, s, visit);
    for j in i + 1..leaves.len() {
        if !taken[j] {
            taken[j] = true;
            s.link(leaves[i], leaves[j]);
            involutions(leaves, i + 1, taken, s, visit);
            s.unlink(leaves[i], leaves[j]);
            taken[j] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn frame(s: &str) -> Frame {
        Frame::build(&parse_sequent(s).unwrap())
    }

    fn pairs(n: &Net) -> Vec<(usize, usize)> {
        n.s.pairs().collect()
    }

    // Order for p2 -> !(p1\p1)\p2: p2a(0) g0(1) y(2) v(3) x(4) m(5) rB(6) p2s(7)
    fn weakening_example() -> Frame {
        frame(r"p2 -> !(p1\p1)\p2")
    }

    #[test]
    fn division_example_closure_covers_everything() {
        let f = frame(r"(p1\p1)\!p2 -> p2");
        let s = Matching::from_pairs(f.len(), &[(3, 5), (0, 7)]).unwrap();
        let u = closure_u(&f, &s);
        assert_eq!(u.len(), 8);
        let n = Net { frame: f, s, u };
        assert!(n.check().is_empty(), "{:?}", n.check());
    }

    #[test]
    fn weakening_example_closure_stops_at_bang_edge() {
        let f = weakening_example();
        assert_eq!(f.root(), 1);
        assert_eq!(f.prim(0).unwrap().get(), 2);
        assert_eq!(f.prim(7).unwrap().get(), 2);
        let s = Matching::from_pairs(f.len(), &[(0, 7)]).unwrap();
        let u = closure_u(&f, &s);
        assert_eq!(u.iter().collect::<Vec<_>>(), vec![0, 1, 5, 6, 7]);
        assert!(Net { frame: f, s, u }.check().is_empty());
    }

    #[test]
    fn empty_matching_gives_empty_closure_and_pn7() {
        let f = frame("p1 -> p1");
        let s = Matching::empty(f.len());
        let u = closure_u(&f, &s);
        assert!(u.is_empty());
        let v = Net { frame: f, s, u }.check();
        assert!(v.contains(&NetViolation::Pn7));
    }

    #[test]
    fn partial_matching_violates_pn8() {
        let f = frame(r"(p1\p1)\!p2 -> p2");
        let s = Matching::from_pairs(f.len(), &[(0, 7)]).unwrap();
        let n = Net::with_closure(f, s);
        let v = n.check();
        assert!(v.contains(&NetViolation::Pn8 { leaf: 3 }));
        assert!(v.contains(&NetViolation::Pn8 { leaf: 5 }));
    }

    #[test]
    fn reflexive_and_non_functional_pairs_rejected() {
        assert_eq!(
            Matching::from_pairs(3, &[(0, 0)]),
            Err(NetViolation::Reflexive { leaf: 0 })
        );
        assert!(matches!(
            Matching::from_pairs(3, &[(0, 1), (0, 2)]),
            Err(NetViolation::Pn2 { .. })
        ));
    }

    #[test]
    fn crossing_links_violate_pn3() {
        let f = frame(r"p1 p1 -> p1\(p1\p1)");
        let leaves: Vec<_> = f.leaves().collect();
        let s = Matching::from_pairs(f.len(), &[(leaves[0], leaves[2]), (leaves[1], leaves[3])]).unwrap();
        let v = matching_violations(&f, &s);
        assert!(v.iter().any(|x| x.condition() == "PN3"), "{v:?}");
    }

    #[test]
    fn search_finds_example_nets() {
        let n = search_net(&frame(r"(p1\p1)\!p2 -> p2")).unwrap();
        assert_eq!(pairs(&n), vec![(0, 7), (3, 5)]);
        let n = exists_net(&parse_sequent(r"p2 -> !(p1\p1)\p2").unwrap()).unwrap();
        assert_eq!(pairs(&n), vec![(0, 7)]);
        assert_eq!(n.u.iter().collect::<Vec<_>>(), vec![0, 1, 5, 6, 7]);
    }

    #[test]
    fn search_rejects_negative_controls() {
        assert!(search_net(&frame("p1 p1 -> p1")).is_none());
        assert!(search_net(&frame("-> p1")).is_none());
        assert!(exists_net(&parse_sequent("p1 -> p2").unwrap()).is_none());
        assert!(exists_net(&parse_sequent(r"!p1\p2 -> p2").unwrap()).is_none());
    }

    #[test]
    fn brute_force_small_frames() {
        let all = enumerate_nets_bruteforce(&weakening_example(), usize::MAX).unwrap();
        assert!(all
            .iter()
            .any(|n| pairs(n) == vec![(0, 7)] && n.u.iter().collect::<Vec<_>>() == vec![0, 1, 5, 6, 7]));
        assert!(enumerate_nets_bruteforce(&frame("p1 -> p2"), usize::MAX)
            .unwrap()
            .is_empty());
        let id = enumerate_nets_bruteforce(&frame("p1 -> p1"), usize::MAX).unwrap();
        assert!(!id.is_empty());
        for n in &id {
            assert_eq!(pairs(n), vec![(0, 2)]);
            assert_eq!(n.u.iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        }
        assert_eq!(enumerate_nets_bruteforce(&frame("p1 p1 -> p1"), 5).unwrap().len(), 0);
    }

    #[test]
    fn brute_force_guard() {
        let big = frame("p1 p1 p1 p1 p1 p1 p1 p1 p1 p1 p1 p1 p1 -> p1");
        assert!(matches!(
            enumerate_nets_bruteforce(&big, 1),
            Err(NetError::TooLarge { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let n = search_net(&frame("p1 -> p1")).unwrap();
        let j = serde_json::to_value(n.to_json()).unwrap();
        assert_eq!(j["S"], serde_json::json!([[0, 2]]));
        assert_eq!(j["U"], serde_json::json!([0, 1, 2]));
        let back = Net::from_json(&serde_json::from_value(j).unwrap()).unwrap();
        assert!(back.check().is_empty());
        assert_eq!(back.s, n.s);
    }
}
