//! Translations between derivations and proof nets.
//!
//! [`derivation_to_net`] follows the derivation bottom-up, carrying the axiom
//! links of each premise net into the conclusion's frame. [`net_to_derivation`]
//! goes the other way: it peels right divisions, then either recognizes an
//! axiom surrounded by modalities, or locates an active left division from
//! the net's split data and recurses on the two premise nets.

use thiserror::Error;

use crate::frame::{Frame, Loc, Step, VertexId};
use crate::net::{Matching, Net, NetViolation};
use crate::prover::{Derivation, DerivationViolation, RuleTag};
use crate::syntax::{Sequent, Type};

#[derive(Debug, Error)]
pub enum BridgeError {
    #[error("derivation does not validate: {0:?}")]
    InvalidDerivation(Vec<DerivationViolation>),
    #[error("input is not a net: {0:?}")]
    InvalidNet(Vec<NetViolation>),
    #[error("constructed net for `{sequent}` fails the net conditions: {violations:?}")]
    Inconsistent {
        sequent: String,
        violations: Vec<NetViolation>,
    },
    #[error("split property {property} fails: {detail}")]
    Split { property: &'static str, detail: String },
    #[error("transport to `{sequent}` failed: {detail}")]
    Transport { sequent: String, detail: String },
    #[error("extraction failed on `{}`: {detail}", net.sequent())]
    Extraction { net: Box<Net>, detail: String },
}

/// The data selecting the active division of a net whose sequent has a
/// primitive succedent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    /// Depth-2 active left arguments whose division's head is `S(H(g0))`
    /// or inactive.
    pub delta: Vec<VertexId>,
    /// Root of the argument subtree of the active division.
    pub e2: VertexId,
    /// The subtree of `e2`.
    pub alpha: Vec<VertexId>,
    pub phi: Vec<VertexId>,
    /// `min phi`.
    pub f: VertexId,
    /// The open interval `(H(e2); f)`.
    pub pi: Vec<VertexId>,
}

impl SplitData {
    pub fn in_alpha_or_pi(&self, v: VertexId) -> bool {
        self.alpha.binary_search(&v).is_ok() || self.pi.binary_search(&v).is_ok()
    }
}

fn split_err(property: &'static str, detail: String) -> BridgeError {
    BridgeError::Split { property, detail }
}

/// The set `δ`, in increasing order.
pub fn delta(n: &Net) -> Vec<VertexId> {
    let f = &n.frame;
    let target = n.s.get(f.head(f.root()));
    (0..f.len())
        .filter(|&a| {
            let Some(p) = f.parent(a) else { return false };
            let hp = f.head(p);
            f.depth(a) == 2
                && n.u.contains(a)
                && f.edge(a) == Some(crate::frame::EdgeLabel::Neg)
                && (Some(hp) == target || !n.u.contains(hp))
        })
        .collect()
}

/// Computes the split data of a net with primitive succedent, or `None`
/// when `δ` is empty. Fails if `d(f) <= 1` or the closure of `α ∪ π` under
/// the links does not hold.
pub fn compute_split(n: &Net) -> Result<Option<SplitData>, BridgeError> {
    let Some(split) = split_data(n)? else {
        return Ok(None);
    };
    check_split(n, &split)?;
    Ok(Some(split))
}

/// The split data as defined, without checking its derived properties.
/// Fails only when the succedent is not primitive or `φ` is empty.
pub fn split_data(n: &Net) -> Result<Option<SplitData>, BridgeError> {
    if n.sequent().succedent.as_prim().is_none() {
        return Err(split_err("precondition", "succedent is not primitive".into()));
    }
    let f = &n.frame;
    let delta = delta(n);
    let Some(lowest) = delta.iter().filter_map(|&b| f.parent(b)).min() else {
        return Ok(None);
    };
    let e2 = (0..f.len())
        .filter(|&a| f.parent(a) == Some(lowest))
        .max()
        .expect("lowest is a parent");
    split_data_at(n, delta, e2).map(Some)
}

fn split_data_at(n: &Net, delta: Vec<VertexId>, e2: VertexId) -> Result<SplitData, BridgeError> {
    let f = &n.frame;
    let alpha = f.subtree(e2);
    let alpha_min = alpha[0];
    let g_head = f.head(f.root());
    let he2 = f.head(e2);
    let phi: Vec<VertexId> =
        n.s.domain()
            .filter(|&b| {
                let sb = n.s.get(b).expect("in domain");
                he2 < b && (sb == g_head || sb < alpha_min)
            })
            .collect();
    let Some(&fmin) = phi.first() else {
        return Err(split_err("phi nonempty", format!("e2 = {e2}")));
    };
    Ok(SplitData {
        delta,
        e2,
        alpha,
        phi,
        f: fmin,
        pi: (he2 + 1..fmin).collect(),
    })
}

fn check_split(n: &Net, split: &SplitData) -> Result<(), BridgeError> {
    let f = &n.frame;
    let (e2, fmin) = (split.e2, split.f);
    if f.depth(e2) != 2 {
        return Err(split_err("d(e2) = 2", format!("vertex {e2} has depth {}", f.depth(e2))));
    }
    if f.depth(fmin) > 1 {
        return Err(split_err(
            "d(f) <= 1",
            format!("f = {fmin} has depth {}", f.depth(fmin)),
        ));
    }
    for (a, b) in n.s.pairs() {
        if split.in_alpha_or_pi(a) != split.in_alpha_or_pi(b) {
            return Err(split_err(
                "alpha-pi closed under S",
                format!("link {a}-{b} leaves alpha+pi (e2 = {e2}, f = {fmin})"),
            ));
        }
    }
    Ok(())
}

fn split_at(n: &Net, delta: Vec<VertexId>, e2: VertexId) -> Result<SplitData, BridgeError> {
    let split = split_data_at(n, delta, e2)?;
    check_split(n, &split)?;
    Ok(split)
}

/// The same net read as a net for the sequent obtained by moving succedent
/// arguments into the antecedent until the succedent is primitive.
pub fn peel_succedent(n: &Net) -> Net {
    let mut s = n.sequent().clone();
    while let Type::Div(a, b) = s.succedent {
        s.antecedent.insert(0, *a);
        s.succedent = *b;
    }
    Net {
        frame: n.frame.with_source(&s).expect("folded types agree"),
        s: n.s.clone(),
        u: n.u.clone(),
    }
}

type LocMap<'a> = dyn Fn(&Loc) -> Option<Loc> + 'a;

/// Builds the canonical frame of `target` and carries the links of each
/// source net over through `map` (source leaf locator to target leaf
/// locator, `None` for leaves that do not belong to the target). `U` is the
/// closure of the carried links, and the result must satisfy PN1-PN11.
fn transport(target: &Sequent, sources: &[(&Net, &LocMap)]) -> Result<Net, BridgeError> {
    let frame = Frame::build(target);
    let fail = |detail: String| BridgeError::Transport {
        sequent: target.to_string(),
        detail,
    };
    let mut pairs = Vec::new();
    for (src, map) in sources {
        let sf = &src.frame;
        for (a, b) in src.s.pairs() {
            let place = |v: VertexId| {
                map(&sf.loc(v))
                    .map(|loc| {
                        frame
                            .vertex_at(&loc)
                            .filter(|&t| frame.is_leaf(t) && frame.prim(t) == sf.prim(v))
                            .ok_or_else(|| fail(format!("no matching leaf at {loc:?}")))
                    })
                    .transpose()
            };
            match (place(a)?, place(b)?) {
                (Some(x), Some(y)) => pairs.push((x, y)),
                (None, None) => {}
                _ => return Err(fail(format!("link {a}-{b} is split by the correspondence"))),
            }
        }
    }
    let s = Matching::from_pairs(frame.len(), &pairs).map_err(|v| fail(format!("{v:?}")))?;
    let net = Net::with_closure(frame, s);
    let violations = net.check();
    if !violations.is_empty() {
        return Err(BridgeError::Inconsistent {
            sequent: target.to_string(),
            violations,
        });
    }
    Ok(net)
}

fn prefixed(step: Step, rest: &[Step]) -> Vec<Step> {
    let mut p = Vec::with_capacity(rest.len() + 1);
    p.push(step);
    p.extend_from_slice(rest);
    p
}

/// A net for the conclusion of `d`, built by induction on `d`.
pub fn derivation_to_net(d: &Derivation) -> Result<Net, BridgeError> {
    let v = d.validate();
    if !v.is_empty() {
        return Err(BridgeError::InvalidDerivation(v));
    }
    build_net(d)
}

fn build_net(d: &Derivation) -> Result<Net, BridgeError> {
    let c = &d.conclusion;
    match d.rule {
        RuleTag::Axiom => {
            let frame = Frame::build(c);
            let s = Matching::from_pairs(frame.len(), &[(0, 2)]).expect("axiom frame has leaves 0 and 2");
            let net = Net::with_closure(frame, s);
            ensure_valid(net)
        }
        RuleTag::RDiv => {
            let p = build_net(&d.premises[0])?;
            let frame = p.frame.with_source(c).ok_or_else(|| BridgeError::Transport {
                sequent: c.to_string(),
                detail: "premise frame differs".into(),
            })?;
            ensure_valid(Net { frame, ..p })
        }
        RuleTag::BangL { pos } => {
            let p = build_net(&d.premises[0])?;
            let map = |l: &Loc| {
                Some(match l {
                    Loc::Ant(k, path) if *k == pos => Loc::Ant(pos, prefixed(Step::Body, path)),
                    other => other.clone(),
                })
            };
            transport(c, &[(&p, &map)])
        }
        RuleTag::WeakL { pos } => {
            let p = build_net(&d.premises[0])?;
            let map = |l: &Loc| {
                Some(match l {
                    Loc::Ant(k, path) if *k >= pos => Loc::Ant(k + 1, path.clone()),
                    other => other.clone(),
                })
            };
            transport(c, &[(&p, &map)])
        }
        RuleTag::LDiv { div_pos, pi_len } => {
            let left = build_net(&d.premises[0])?;
            let right = build_net(&d.premises[1])?;
            let g = div_pos - pi_len;
            let map_left = |l: &Loc| match l {
                Loc::Ant(k, path) => Some(Loc::Ant(g + k, path.clone())),
                Loc::Succ(path) => Some(Loc::Ant(div_pos, prefixed(Step::Left, path))),
                Loc::Spine(_) => None,
            };
            let map_right = |l: &Loc| match l {
                Loc::Ant(k, path) if *k < g => Some(Loc::Ant(*k, path.clone())),
                Loc::Ant(k, path) if *k == g => Some(Loc::Ant(div_pos, prefixed(Step::Right, path))),
                Loc::Ant(k, path) => Some(Loc::Ant(k + pi_len, path.clone())),
                Loc::Succ(path) => Some(Loc::Succ(path.clone())),
                Loc::Spine(_) => None,
            };
            transport(c, &[(&left, &map_left), (&right, &map_right)])
        }
    }
}

fn ensure_valid(net: Net) -> Result<Net, BridgeError> {
    let violations = net.check();
    if violations.is_empty() {
        Ok(net)
    } else {
        Err(BridgeError::Inconsistent {
            sequent: net.sequent().to_string(),
            violations,
        })
    }
}

/// A derivation of the net's sequent.
pub fn net_to_derivation(n: &Net) -> Result<Derivation, BridgeError> {
    let v = n.check();
    if !v.is_empty() {
        return Err(BridgeError::InvalidNet(v));
    }
    let d = extract(n)?;
    let v = d.validate();
    if !v.is_empty() || &d.conclusion != n.sequent() {
        return Err(BridgeError::Extraction {
            net: Box::new(n.clone()),
            detail: format!("extracted derivation does not validate: {v:?}"),
        });
    }
    Ok(d)
}

fn extraction_err(n: &Net, detail: impl Into<String>) -> BridgeError {
    BridgeError::Extraction {
        net: Box::new(n.clone()),
        detail: detail.into(),
    }
}

fn extract(n: &Net) -> Result<Derivation, BridgeError> {
    let s = n.sequent();
    if let Type::Div(a, b) = &s.succedent {
        let mut ant = vec![(**a).clone()];
        ant.extend(s.antecedent.iter().cloned());
        let premise = Sequent::new(ant, (**b).clone());
        let frame = n.frame.with_source(&premise).expect("folded types agree");
        let inner = Net {
            frame,
            s: n.s.clone(),
            u: n.u.clone(),
        };
        return Ok(Derivation::new(s.clone(), RuleTag::RDiv, vec![extract(&inner)?]));
    }
    let Some(split) = compute_split(n)? else {
        return weakened_axiom(n);
    };
    let f = &n.frame;
    let division = f.parent(split.e2).expect("e2 has depth 2");
    let Loc::Ant(k, path) = f.loc(division) else {
        return Err(extraction_err(n, "active division is not inside the antecedent"));
    };
    match path.first() {
        None => left_division(n, k, split),
        Some(Step::Body) => open_modality(n, k),
        Some(Step::Right) => {
            // The division sits in the result part of antecedent element k;
            // split on the element's own argument first.
            let e2 = f
                .vertex_at(&Loc::Ant(k, vec![Step::Left]))
                .ok_or_else(|| extraction_err(n, "element has no argument"))?;
            if split.delta.binary_search(&e2).is_err() {
                return Err(extraction_err(
                    n,
                    format!("argument root {e2} of element {k} is not in delta"),
                ));
            }
            let split = split_at(n, split.delta, e2)?;
            left_division(n, k, split)
        }
        Some(Step::Left) => Err(extraction_err(n, "active division below a left argument")),
    }
}

/// `δ = ∅`: the antecedent is `!Θ !^m p !Ξ` with `p` linked to the
/// succedent; derive it from the axiom by `(!->)` and `(W!->)`.
fn weakened_axiom(n: &Net) -> Result<Derivation, BridgeError> {
    let f = &n.frame;
    let s = n.sequent();
    let p = s.succedent.clone();
    let partner =
        n.s.get(f.head(f.root()))
            .ok_or_else(|| extraction_err(n, "succedent head is unlinked"))?;
    let k = f
        .element_of(partner)
        .ok_or_else(|| extraction_err(n, "succedent head is linked outside the antecedent"))?;
    let mut bangs = 0;
    let mut core = &s.antecedent[k];
    while let Type::Bang(inner) = core {
        bangs += 1;
        core = inner;
    }
    if core != &p {
        return Err(extraction_err(
            n,
            format!("active element `{}` is not !^m {p}", s.antecedent[k]),
        ));
    }
    if let Some(bad) = s
        .antecedent
        .iter()
        .enumerate()
        .find(|(j, t)| *j != k && !matches!(t, Type::Bang(_)))
    {
        return Err(extraction_err(n, format!("element `{}` cannot be weakened", bad.1)));
    }
    let mut d = Derivation::axiom(p.clone());
    let mut current = p.clone();
    for _ in 0..bangs {
        current = Type::bang(current);
        d = Derivation::new(
            Sequent::new(vec![current.clone()], p.clone()),
            RuleTag::BangL { pos: 0 },
            vec![d],
        );
    }
    // Ξ right-to-left, then Θ left-to-right.
    let mut ant = vec![current];
    for t in s.antecedent[k + 1..].iter().rev() {
        ant.insert(1, t.clone());
        d = Derivation::new(Sequent::new(ant.clone(), p.clone()), RuleTag::WeakL { pos: 1 }, vec![d]);
    }
    for (j, t) in s.antecedent[..k].iter().enumerate() {
        ant.insert(j, t.clone());
        d = Derivation::new(Sequent::new(ant.clone(), p.clone()), RuleTag::WeakL { pos: j }, vec![d]);
    }
    Ok(d)
}

/// Element `k` is `!B` with `B` active: strip the modality.
fn open_modality(n: &Net, k: usize) -> Result<Derivation, BridgeError> {
    let s = n.sequent();
    let Type::Bang(body) = &s.antecedent[k] else {
        return Err(extraction_err(n, format!("element {k} is not a modality")));
    };
    let mut ant = s.antecedent.clone();
    ant[k] = (**body).clone();
    let premise = Sequent::new(ant, s.succedent.clone());
    let map = |l: &Loc| match l {
        Loc::Ant(j, path) if *j == k => match path.split_first() {
            Some((Step::Body, rest)) => Some(Loc::Ant(k, rest.to_vec())),
            _ => None,
        },
        other => Some(other.clone()),
    };
    let inner = transport(&premise, &[(n, &map)])?;
    Ok(Derivation::new(
        s.clone(),
        RuleTag::BangL { pos: k },
        vec![extract(&inner)?],
    ))
}

/// Element `k` is `A\B` with argument subtree `alpha`.
fn left_division(n: &Net, k: usize, split: SplitData) -> Result<Derivation, BridgeError> {
    let (pi_len, left, right) = premise_nets(n, k, &split)?;
    Ok(Derivation::new(
        n.sequent().clone(),
        RuleTag::LDiv { div_pos: k, pi_len },
        vec![extract(&left)?, extract(&right)?],
    ))
}

/// Premise nets for `(\->)` on element `k`. `Π` is the block of elements
/// left of `k` whose vertices all lie in `pi`.
fn premise_nets(n: &Net, k: usize, split: &SplitData) -> Result<(usize, Net, Net), BridgeError> {
    let f = &n.frame;
    let s = n.sequent();
    let Type::Div(a, b) = &s.antecedent[k] else {
        return Err(extraction_err(n, format!("element {k} is not a division")));
    };
    let in_pi = |v: VertexId| split.pi.binary_search(&v).is_ok();
    let mut pi_len = 0;
    while pi_len < k {
        let root = f.element_root(k - 1 - pi_len).expect("element exists");
        if !f.subtree(root).into_iter().all(in_pi) {
            break;
        }
        pi_len += 1;
    }
    let g = k - pi_len;
    let left_seq = Sequent::new(s.antecedent[g..k].to_vec(), (**a).clone());
    let mut right_ant = s.antecedent[..g].to_vec();
    right_ant.push((**b).clone());
    right_ant.extend(s.antecedent[k + 1..].iter().cloned());
    let right_seq = Sequent::new(right_ant, s.succedent.clone());

    let map_left = |l: &Loc| match l {
        Loc::Ant(j, path) if *j == k => match path.split_first() {
            Some((Step::Left, rest)) => Some(Loc::Succ(rest.to_vec())),
            _ => None,
        },
        Loc::Ant(j, path) if (g..k).contains(j) => Some(Loc::Ant(j - g, path.clone())),
        _ => None,
    };
    let map_right = |l: &Loc| match l {
        Loc::Ant(j, path) if *j == k => match path.split_first() {
            Some((Step::Right, rest)) => Some(Loc::Ant(g, rest.to_vec())),
            _ => None,
        },
        Loc::Ant(j, path) if *j < g => Some(Loc::Ant(*j, path.clone())),
        Loc::Ant(j, path) if *j > k => Some(Loc::Ant(j - pi_len, path.clone())),
        Loc::Succ(path) => Some(Loc::Succ(path.clone())),
        _ => None,
    };
    let left = transport(&left_seq, &[(n, &map_left)])?;
    let right = transport(&right_seq, &[(n, &map_right)])?;
    if left.s.len() + right.s.len() != n.s.len() {
        return Err(extraction_err(n, "some links belong to neither premise"));
    }
    Ok((pi_len, left, right))
}

/// The two premise nets, for `Π -> A` and `Γ B Δ -> p`, of the `(\->)`
/// step selected by `split`. The division `O(e2)` must be a top-level
/// antecedent element.
pub fn transport_subnet(n: &Net, split: &SplitData) -> Result<(Net, Net), BridgeError> {
    let f = &n.frame;
    let division = f.parent(split.e2).ok_or_else(|| extraction_err(n, "e2 is the root"))?;
    match f.loc(division) {
        Loc::Ant(k, path) if path.is_empty() => {
            let (_, left, right) = premise_nets(n, k, split)?;
            Ok((left, right))
        }
        _ => Err(extraction_err(n, "active division is not a top-level element")),
    }
}
