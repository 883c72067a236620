//! Executable forms of the structural facts about frames and nets.
//!
//! Each function quantifies over all vertices (or vertex tuples) of its
//! argument and returns the tuples that falsify the statement. An empty
//! result means the statement holds for that frame or net.

use crate::bridge::{split_data, SplitData};
use crate::frame::{Frame, FrameViolation, VertexId};
use crate::net::Net;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: &'static str,
    pub witness: Vec<VertexId>,
}

fn cx(property: &'static str, witness: Vec<VertexId>) -> Counterexample {
    Counterexample { property, witness }
}

/// D1, D2 and D3.
pub fn d1_d3(f: &Frame) -> Vec<Counterexample> {
    f.check()
        .into_iter()
        .filter_map(|v| match v {
            FrameViolation::D1 { a, b, c, d } => Some(cx("D1", vec![a, b, c, d])),
            FrameViolation::D2 { a, b } => Some(cx("D2", vec![a, b])),
            FrameViolation::D3 { a, b } => Some(cx("D3", vec![a, b])),
            _ => None,
        })
        .collect()
}

/// `d(a) = 0` implies `H(a) = H(g0)`.
pub fn zero_depth_head(f: &Frame) -> Vec<Counterexample> {
    let h = f.head(f.root());
    (0..f.len())
        .filter(|&a| f.depth(a) == 0 && f.head(a) != h)
        .map(|a| cx("zero-depth-head", vec![a]))
        .collect()
}

/// `a O* b` and `d(a) != d(b)`: `a < H(b)` when `d(b)` is even,
/// `H(b) < a` when odd.
pub fn head_order(f: &Frame) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for a in 0..f.len() {
        for b in f.ancestors(a) {
            if f.depth(a) == f.depth(b) {
                continue;
            }
            let h = f.head(b);
            let ok = if f.depth(b).is_multiple_of(2) { a < h } else { h < a };
            if !ok {
                out.push(cx("head-order", vec![a, b]));
            }
        }
    }
    out
}

/// `H(S(a)) = S(a)` whenever `S(a)` is defined.
pub fn partners_are_heads(n: &Net) -> Vec<Counterexample> {
    n.s.domain()
        .filter_map(|a| {
            let sa = n.s.get(a)?;
            (n.frame.head(sa) != sa).then(|| cx("partners-are-heads", vec![a]))
        })
        .collect()
}

/// `d(a)` even and `a ∈ U` imply `H(a) ∈ U`.
pub fn even_active_head(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    (0..f.len())
        .filter(|&a| f.depth(a).is_multiple_of(2) && n.u.contains(a) && !n.u.contains(f.head(a)))
        .map(|a| cx("even-active-head", vec![a]))
        .collect()
}

/// An active vertex with no active leaf below it has a `2`-labeled child.
pub fn bang_below_leafless(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    (0..f.len())
        .filter(|&a| {
            n.u.contains(a)
                && !f.subtree(a).into_iter().any(|b| f.is_leaf(b) && n.u.contains(b))
                && !f
                    .children(a)
                    .iter()
                    .any(|&c| f.edge(c) == Some(crate::frame::EdgeLabel::Bang))
        })
        .map(|a| cx("bang-below-leafless", vec![a]))
        .collect()
}

/// `d(a) > 0` implies `a < H(g0)`.
pub fn before_root_head(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    let h = f.head(f.root());
    (0..f.len())
        .filter(|&a| f.depth(a) > 0 && a >= h)
        .map(|a| cx("before-root-head", vec![a]))
        .collect()
}

/// `H(g0) ∈ pr1(S)`.
pub fn root_head_linked(n: &Net) -> Vec<Counterexample> {
    let h = n.frame.head(n.frame.root());
    if n.s.is_matched(h) {
        Vec::new()
    } else {
        vec![cx("root-head-linked", vec![h])]
    }
}

/// `d(S(H(g0))) = 1`.
pub fn root_head_partner_depth(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    let h = f.head(f.root());
    match n.s.get(h) {
        Some(p) if f.depth(p) == 1 => Vec::new(),
        Some(p) => vec![cx("root-head-partner-depth", vec![h, p])],
        None => vec![cx("root-head-partner-depth", vec![h])],
    }
}

/// `a O+ c`, `d(a) > d(c)` and `a < H(c) < S(a)` imply `H(c) ∈ pr1(S)` and
/// `H(c) < S(H(c)) < S(a)`.
pub fn nested_head_link(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    let mut out = Vec::new();
    for a in n.s.domain() {
        let sa = n.s.get(a).expect("in domain");
        for c in f.ancestors(a).skip(1) {
            let hc = f.head(c);
            if !(f.depth(a) > f.depth(c) && a < hc && hc < sa) {
                continue;
            }
            let holds = matches!(n.s.get(hc), Some(shc) if hc < shc && shc < sa);
            if !holds {
                out.push(cx("nested-head-link", vec![a, c]));
            }
        }
    }
    out
}

/// Split data for lemma checks on a net with primitive succedent; `None`
/// when `δ` is empty. A missing `φ` is reported as a counterexample.
fn split_for(n: &Net) -> Result<Option<SplitData>, Counterexample> {
    split_data(n).map_err(|_| cx("phi-nonempty", Vec::new()))
}

/// `d(e2) = 2`.
pub fn split_depth(n: &Net) -> Vec<Counterexample> {
    match split_for(n) {
        Ok(Some(sp)) if n.frame.depth(sp.e2) != 2 => vec![cx("split-depth", vec![sp.e2])],
        Ok(_) => Vec::new(),
        Err(c) => vec![c],
    }
}

/// `φ` is nonempty whenever `δ` is.
pub fn phi_nonempty(n: &Net) -> Vec<Counterexample> {
    match split_for(n) {
        Err(c) => vec![c],
        Ok(_) => Vec::new(),
    }
}

/// `d(f) <= 1`.
pub fn f_depth(n: &Net) -> Vec<Counterexample> {
    match split_for(n) {
        Ok(Some(sp)) if n.frame.depth(sp.f) > 1 => vec![cx("f-depth", vec![sp.f])],
        Ok(_) => Vec::new(),
        Err(c) => vec![c],
    }
}

/// `(a, b) ∈ S` and `a ∈ α ∪ π` imply `b ∈ α ∪ π`.
pub fn split_closed(n: &Net) -> Vec<Counterexample> {
    match split_for(n) {
        Ok(Some(sp)) => {
            n.s.domain()
                .filter(|&a| {
                    let b = n.s.get(a).expect("in domain");
                    sp.in_alpha_or_pi(a) && !sp.in_alpha_or_pi(b)
                })
                .map(|a| cx("split-closed", vec![a]))
                .collect()
        }
        Ok(None) => Vec::new(),
        Err(c) => vec![c],
    }
}

/// `b O+ a` and `d(a) = 1`: `a ∈ π` iff `b ∈ π`.
pub fn pi_element_closed(n: &Net) -> Vec<Counterexample> {
    let f = &n.frame;
    let sp = match split_for(n) {
        Ok(Some(sp)) => sp,
        Ok(None) => return Vec::new(),
        Err(c) => return vec![c],
    };
    let in_pi = |v: VertexId| sp.pi.binary_search(&v).is_ok();
    let mut out = Vec::new();
    for b in 0..f.len() {
        for a in f.ancestors(b).skip(1) {
            if f.depth(a) == 1 && in_pi(a) != in_pi(b) {
                out.push(cx("pi-element-closed", vec![b, a]));
            }
        }
    }
    out
}

/// Every frame lemma checked by the acceptance suite.
pub fn frame_lemmas(f: &Frame) -> Vec<Counterexample> {
    let mut out = d1_d3(f);
    out.extend(zero_depth_head(f));
    out.extend(head_order(f));
    out
}

/// Every net lemma checked by the acceptance suite. Lemmas stated for a
/// primitive succedent are checked on [`crate::bridge::peel_succedent`].
pub fn net_lemmas(n: &Net) -> Vec<Counterexample> {
    let mut out = partners_are_heads(n);
    out.extend(even_active_head(n));
    out.extend(bang_below_leafless(n));
    out.extend(before_root_head(n));
    out.extend(root_head_linked(n));
    out.extend(root_head_partner_depth(n));
    out.extend(nested_head_link(n));
    let p = crate::bridge::peel_succedent(n);
    out.extend(split_depth(&p));
    out.extend(phi_nonempty(&p));
    out.extend(f_depth(&p));
    out.extend(split_closed(&p));
    out
}
