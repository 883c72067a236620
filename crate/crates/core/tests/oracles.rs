//! Worked examples for each operation, with hand-derived expected values.

use lambek_core::bridge::{compute_split, delta, peel_succedent, transport_subnet};
use lambek_core::frame::EdgeLabel;
use lambek_core::net::{check_net, closure_u, enumerate_nets_bruteforce, search_net, Matching, NetViolation};
use lambek_core::prover::RuleTag;
use lambek_core::{
    build_frame, derivable, derivation_to_net, exists_net, net_to_derivation, parse_sequent, prove, Derivation,
    Sequent, Type,
};

const DIV_EX: &str = "(p1\\p1)\\!p2 -> p2";
const WEAK_EX: &str = "p2 -> !(p1\\p1)\\p2";

// Vertex positions in the frame of DIV_EX.
const Z: usize = 0;
const M: usize = 1;
const R1: usize = 2;
const X: usize = 3;
const U: usize = 4;
const Y: usize = 5;
const G: usize = 6;
const PB: usize = 7;

fn p(i: u32) -> Type {
    Type::prim(i)
}

fn seq(t: &str) -> Sequent {
    parse_sequent(t).unwrap()
}

fn div_ex_antecedent() -> Type {
    Type::div(Type::div(p(1), p(1)), Type::bang(p(2)))
}

fn div_ex_net_matching() -> Matching {
    Matching::from_pairs(8, &[(X, Y), (Z, PB)]).unwrap()
}

#[test]
fn parsing() {
    assert_eq!(seq(DIV_EX), Sequent::new(vec![div_ex_antecedent()], p(2)));
    assert_eq!(seq("-> p1"), Sequent::new(vec![], p(1)));
    assert_eq!(
        seq("!p1\\p2 -> p2"),
        Sequent::new(vec![Type::div(Type::bang(p(1)), p(2))], p(2))
    );
}

#[test]
fn printing() {
    assert_eq!(Sequent::new(vec![], Type::div(p(1), p(1))).to_string(), "-> p1\\p1");
    assert_eq!(Sequent::new(vec![div_ex_antecedent()], p(2)).to_string(), DIV_EX);
    let weak_ex = Sequent::new(vec![p(2)], Type::div(Type::bang(Type::div(p(1), p(1))), p(2)));
    assert_eq!(weak_ex.to_string(), WEAK_EX);
}

#[test]
fn folding_and_counting() {
    assert_eq!(seq(DIV_EX).to_type(), Type::div(div_ex_antecedent(), p(2)));
    assert_eq!(seq("-> p1").to_type(), p(1));
    let s = Sequent::new(vec![p(1), p(2), p(3)], p(4));
    assert_eq!(s.to_type(), Type::div(p(3), Type::div(p(2), Type::div(p(1), p(4)))));
    assert_eq!(seq("p1 -> p1").connective_count(), 0);
    assert_eq!(seq(DIV_EX).connective_count(), 3);
    assert_eq!(seq(WEAK_EX).connective_count(), 3);
}

#[test]
fn polarity() {
    assert!(seq(WEAK_EX).bang_polarity_ok());
    assert!(!seq("!p1 -> !p1").bang_polarity_ok());
    assert!(!seq("!p1\\p2 -> p2").bang_polarity_ok());
}

#[test]
fn identity_frame() {
    let f = build_frame(&seq("p1 -> p1"));
    assert_eq!(f.len(), 3);
    assert_eq!(f.root(), 1);
    assert_eq!(f.edge(0), Some(EdgeLabel::Neg));
    assert_eq!(f.edge(2), Some(EdgeLabel::Pos));
    assert!(f.is_leaf(0) && f.is_leaf(2));
}

#[test]
fn example_frame_shape_depth_head_ancestry() {
    let f = build_frame(&seq(DIV_EX));
    let edges = [
        (Z, M, EdgeLabel::Bang),
        (M, R1, EdgeLabel::Pos),
        (X, U, EdgeLabel::Neg),
        (Y, U, EdgeLabel::Pos),
    ];
    for (child, parent, label) in edges.into_iter().chain([
        (U, R1, EdgeLabel::Neg),
        (R1, G, EdgeLabel::Neg),
        (PB, G, EdgeLabel::Pos),
    ]) {
        assert_eq!((f.parent(child), f.edge(child)), (Some(parent), Some(label)));
    }
    let d: Vec<_> = (0..8).map(|v| f.depth(v)).collect();
    assert_eq!(d, [1, 1, 1, 3, 2, 2, 0, 0]);
    assert_eq!((f.head(G), f.head(R1), f.head(U)), (PB, Z, Y));
    assert!(f.is_ancestor(X, R1) && !f.is_ancestor(X, PB));
    for v in 0..8 {
        assert!(f.is_ancestor(v, v) && f.is_ancestor(v, G));
        assert_eq!(f.head(f.head(v)), f.head(v));
    }
    assert!(f.check().is_empty());
    let single = build_frame(&seq("-> p1"));
    assert_eq!((single.len(), single.depth(0), single.root()), (1, 0, 0));
}

#[test]
fn frame_checks() {
    assert!(build_frame(&seq(WEAK_EX)).check().is_empty());
    assert!(build_frame(&seq("!p1 -> !p1")).check().iter().any(|v| v.is_pn11()));
}

#[test]
fn closure_and_conditions() {
    let f = build_frame(&seq(DIV_EX));
    assert_eq!(closure_u(&f, &div_ex_net_matching()).iter().count(), 8);
    let s = div_ex_net_matching();
    let n = lambek_core::Net::with_closure(f.clone(), s);
    assert!(check_net(&n).is_empty());

    let partial = lambek_core::Net::with_closure(f.clone(), Matching::from_pairs(8, &[(Z, PB)]).unwrap());
    assert!(partial.check().iter().any(|v| matches!(v, NetViolation::Pn8 { .. })));

    let empty = lambek_core::Net::with_closure(f.clone(), Matching::empty(8));
    assert_eq!(empty.u.iter().count(), 0);
    assert!(empty.check().contains(&NetViolation::Pn7));

    let f2 = build_frame(&seq(WEAK_EX));
    let u: Vec<_> = closure_u(&f2, &Matching::from_pairs(8, &[(0, 7)]).unwrap())
        .iter()
        .collect();
    assert_eq!(u, [0, 1, 5, 6, 7]);
}

#[test]
fn search() {
    let n = search_net(&build_frame(&seq(DIV_EX))).unwrap();
    assert_eq!(n.s, div_ex_net_matching());
    assert!(search_net(&build_frame(&seq("p1 p1 -> p1"))).is_none());
    assert!(search_net(&build_frame(&seq("-> p1"))).is_none());
    assert!(exists_net(&seq(WEAK_EX)).is_some());
    assert!(exists_net(&seq("!p1\\p2 -> p2")).is_none());
    assert!(exists_net(&seq("p1 -> p2")).is_none());
}

#[test]
fn brute_force() {
    let all = enumerate_nets_bruteforce(&build_frame(&seq(WEAK_EX)), 100).unwrap();
    assert!(all
        .iter()
        .any(|n| n.s.pairs().eq([(0, 7)]) && n.u.iter().eq([0, 1, 5, 6, 7])));
    assert!(enumerate_nets_bruteforce(&build_frame(&seq("p1 -> p2")), 100)
        .unwrap()
        .is_empty());
    let id = enumerate_nets_bruteforce(&build_frame(&seq("p1 -> p1")), 100).unwrap();
    assert_eq!(id.len(), 1);
    assert!(id[0].s.pairs().eq([(0, 2)]) && id[0].u.iter().eq([0, 1, 2]));
}

#[test]
fn validation() {
    let weak_ex = Derivation::new(
        seq(WEAK_EX),
        RuleTag::RDiv,
        vec![Derivation::new(
            seq("!(p1\\p1) p2 -> p2"),
            RuleTag::WeakL { pos: 0 },
            vec![Derivation::axiom(p(2))],
        )],
    );
    assert!(weak_ex.validate().is_empty());
    let bad_axiom = Derivation::new(seq("p1 -> p2"), RuleTag::Axiom, vec![]);
    assert!(!bad_axiom.validate().is_empty());
    let bad_ldiv = Derivation::new(
        seq("p2 p1 p1\\p1 -> p1"),
        RuleTag::LDiv { div_pos: 2, pi_len: 1 },
        vec![Derivation::axiom(p(1)), Derivation::axiom(p(1))],
    );
    assert!(!bad_ldiv.validate().is_empty());
}

#[test]
fn proving() {
    let d = prove(&seq(DIV_EX)).unwrap();
    assert_eq!(d.rule, RuleTag::LDiv { div_pos: 0, pi_len: 0 });
    assert_eq!(d.premises[0].conclusion, seq("-> p1\\p1"));
    assert_eq!(d.premises[1].conclusion, seq("!p2 -> p2"));
    assert_eq!(prove(&seq("p1 -> p1")).unwrap().rule, RuleTag::Axiom);
    assert!(prove(&seq("p1 -> p2")).is_none());
    assert!(derivable(&seq(WEAK_EX)));
    assert!(!derivable(&seq("-> p1")));
    assert!(!derivable(&seq("!p1 -> !p1")));
}

#[test]
fn derivations_to_nets() {
    let id = derivation_to_net(&Derivation::axiom(p(1))).unwrap();
    assert!(id.s.pairs().eq([(0, 2)]) && id.u.iter().eq([0, 1, 2]));
    let n_weak = derivation_to_net(&prove(&seq(WEAK_EX)).unwrap()).unwrap();
    assert!(n_weak.s.pairs().eq([(0, 7)]) && n_weak.u.iter().eq([0, 1, 5, 6, 7]));
    let n_div = derivation_to_net(&prove(&seq(DIV_EX)).unwrap()).unwrap();
    assert_eq!(n_div.s, div_ex_net_matching());
    assert_eq!(n_div.u.iter().count(), 8);
}

#[test]
fn split_data() {
    let n = exists_net(&seq(DIV_EX)).unwrap();
    assert_eq!(delta(&n), [U]);
    let sp = compute_split(&n).unwrap().unwrap();
    assert_eq!((sp.e2, n.frame.head(sp.e2)), (U, Y));
    assert_eq!(sp.alpha, [X, U, Y]);
    assert_eq!((sp.phi.as_slice(), sp.f, sp.pi.as_slice()), (&[PB][..], PB, &[G][..]));

    let peeled = peel_succedent(&exists_net(&seq(WEAK_EX)).unwrap());
    assert_eq!(peeled.sequent(), &seq("!(p1\\p1) p2 -> p2"));
    assert!(delta(&peeled).is_empty());
    assert!(compute_split(&peeled).unwrap().is_none());

    let weakened = exists_net(&seq("!p1 !(p2\\p2) p1 !p2 -> p1")).unwrap();
    assert!(delta(&weakened).is_empty());
}

#[test]
fn nets_to_derivations() {
    let d_weak = net_to_derivation(&exists_net(&seq(WEAK_EX)).unwrap()).unwrap();
    assert_eq!(d_weak.rules(), [RuleTag::RDiv, RuleTag::WeakL { pos: 0 }, RuleTag::Axiom]);
    let d_div = net_to_derivation(&exists_net(&seq(DIV_EX)).unwrap()).unwrap();
    assert!(matches!(d_div.rule, RuleTag::LDiv { .. }));
    assert_eq!(d_div.premises[0].conclusion, seq("-> p1\\p1"));
    assert_eq!(d_div.premises[1].conclusion, seq("!p2 -> p2"));
    assert_eq!(
        net_to_derivation(&exists_net(&seq("p1 -> p1")).unwrap()).unwrap().rule,
        RuleTag::Axiom
    );
}

#[test]
fn premise_nets() {
    let n = exists_net(&seq(DIV_EX)).unwrap();
    let sp = compute_split(&n).unwrap().unwrap();
    let (left, right) = transport_subnet(&n, &sp).unwrap();
    assert_eq!(left.sequent(), &seq("-> p1\\p1"));
    assert!(left.s.pairs().eq([(0, 2)]));
    assert_eq!(left.frame, build_frame(&Sequent::new(vec![], Type::div(p(1), p(1)))));
    assert_eq!(right.sequent(), &seq("!p2 -> p2"));
    assert!(right.s.pairs().eq([(0, 3)]));
    assert!(left.is_valid() && right.is_valid());
}
