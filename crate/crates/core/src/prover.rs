//! Cut-free backward proof search and an independent derivation checker.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::syntax::{parse_sequent, Sequent, Type};

/// Which rule concludes a derivation node, with the indices needed to
/// locate it in the conclusion's antecedent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    /// `p -> p`
    Axiom,
    /// `(->\)`: from `A Π -> B` infer `Π -> A\B`.
    RDiv,
    /// `(\->)`: from `Π -> A` and `Γ B Δ -> C` infer `Γ Π (A\B) Δ -> C`;
    /// `div_pos` is the index of `A\B`, `pi_len` the length of `Π`.
    LDiv { div_pos: usize, pi_len: usize },
    /// `(!->)`: strip the `!` at `pos`.
    BangL { pos: usize },
    /// `(W!->)`: drop the `!A` at `pos`.
    WeakL { pos: usize },
}

impl RuleTag {
    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::Axiom => "ax",
            RuleTag::RDiv => "->\\",
            RuleTag::LDiv { .. } => "\\->",
            RuleTag::BangL { .. } => "!->",
            RuleTag::WeakL { .. } => "W!->",
        }
    }

    fn arity(&self) -> usize {
        match self {
            RuleTag::Axiom => 0,
            RuleTag::LDiv { .. } => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::Axiom | RuleTag::RDiv => write!(f, "({})", self.name()),
            RuleTag::LDiv { div_pos, pi_len } => write!(f, "({} {div_pos} {pi_len})", self.name()),
            RuleTag::BangL { pos } | RuleTag::WeakL { pos } => write!(f, "({} {pos})", self.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleTag,
    /// Empty for axioms; `[Π -> A, Γ B Δ -> C]` for `(\->)`.
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn axiom(p: Type) -> Derivation {
        Derivation {
            conclusion: Sequent::new(vec![p.clone()], p),
            rule: RuleTag::Axiom,
            premises: Vec::new(),
        }
    }

    pub fn new(conclusion: Sequent, rule: RuleTag, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            conclusion,
            rule,
            premises,
        }
    }

    /// Rule tags of all nodes, preorder.
    pub fn rules(&self) -> Vec<RuleTag> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn validate(&self) -> Vec<DerivationViolation> {
        let mut out = Vec::new();
        validate_node(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// One sequent per line, rule tag in parentheses, premises indented two
    /// spaces below their conclusion.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, indent: usize, out: &mut String) {
        let _ = writeln!(out, "{:indent$}{} {}", "", self.conclusion, self.rule, indent = indent);
        for p in &self.premises {
            p.write_text(indent + 2, out);
        }
    }

    pub fn to_json(&self) -> Value {
        let (rule, args) = match self.rule {
            RuleTag::Axiom => ("axiom", json!({})),
            RuleTag::RDiv => ("rdiv", json!({})),
            RuleTag::LDiv { div_pos, pi_len } => ("ldiv", json!({"div_pos": div_pos, "pi_len": pi_len})),
            RuleTag::BangL { pos } => ("bangl", json!({ "pos": pos })),
            RuleTag::WeakL { pos } => ("weakl", json!({ "pos": pos })),
        };
        json!({
            "seq": self.conclusion.to_string(),
            "rule": rule,
            "args": args,
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Derivation, DerivationJsonError> {
        let node: DerivationJson = serde_json::from_value(v.clone())?;
        node.into_derivation()
    }
}

#[derive(Deserialize, Serialize)]
struct DerivationJson {
    seq: String,
    rule: String,
    #[serde(default)]
    args: HashMap<String, usize>,
    #[serde(default)]
    premises: Vec<DerivationJson>,
}

impl DerivationJson {
    fn into_derivation(self) -> Result<Derivation, DerivationJsonError> {
        let arg = |k: &str| {
            self.args
                .get(k)
                .copied()
                .ok_or_else(|| DerivationJsonError::Schema(format!("missing argument {k}")))
        };
        let rule = match self.rule.as_str() {
            "axiom" => RuleTag::Axiom,
            "rdiv" => RuleTag::RDiv,
            "ldiv" => RuleTag::LDiv {
                div_pos: arg("div_pos")?,
                pi_len: arg("pi_len")?,
            },
            "bangl" => RuleTag::BangL { pos: arg("pos")? },
            "weakl" => RuleTag::WeakL { pos: arg("pos")? },
            other => return Err(DerivationJsonError::Schema(format!("unknown rule {other}"))),
        };
        let conclusion = parse_sequent(&self.seq)?;
        let premises = self
            .premises
            .into_iter()
            .map(DerivationJson::into_derivation)
            .collect::<Result<_, _>>()?;
        Ok(Derivation::new(conclusion, rule, premises))
    }
}

#[derive(Debug, Error)]
pub enum DerivationJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] crate::syntax::ParseError),
    #[error("{0}")]
    Schema(String),
}

/// A node that does not instantiate its rule schema. `node` is the premise
/// index path from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationViolation {
    pub node: Vec<usize>,
    pub conclusion: String,
    pub detail: String,
}

fn validate_node(d: &Derivation, path: &mut Vec<usize>, out: &mut Vec<DerivationViolation>) {
    if let Err(detail) = check_schema(d) {
        out.push(DerivationViolation {
            node: path.clone(),
            conclusion: d.conclusion.to_string(),
            detail,
        });
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        validate_node(p, path, out);
        path.pop();
    }
}

fn check_schema(d: &Derivation) -> Result<(), String> {
    if d.premises.len() != d.rule.arity() {
        return Err(format!(
            "{} expects {} premises, found {}",
            d.rule.name(),
            d.rule.arity(),
            d.premises.len()
        ));
    }
    let c = &d.conclusion;
    let ant = &c.antecedent;
    let expect = |want: Sequent, got: &Sequent| {
        if &want == got {
            Ok(())
        } else {
            Err(format!("premise should be `{want}`, found `{got}`"))
        }
    };
    match d.rule {
        RuleTag::Axiom => match (ant.as_slice(), &c.succedent) {
            ([Type::Prim(a)], Type::Prim(b)) if a == b => Ok(()),
            _ => Err("axiom must have the form p -> p".into()),
        },
        RuleTag::RDiv => {
            let Type::Div(a, b) = &c.succedent else {
                return Err("succedent is not a division".into());
            };
            let mut pant = vec![(**a).clone()];
            pant.extend(ant.iter().cloned());
            expect(Sequent::new(pant, (**b).clone()), &d.premises[0].conclusion)
        }
        RuleTag::LDiv { div_pos, pi_len } => {
            let Some(Type::Div(a, b)) = ant.get(div_pos) else {
                return Err(format!("no division at antecedent position {div_pos}"));
            };
            if pi_len > div_pos {
                return Err(format!("pi_len {pi_len} exceeds division position {div_pos}"));
            }
            let g = div_pos - pi_len;
            let left = Sequent::new(ant[g..div_pos].to_vec(), (**a).clone());
            let mut rant = ant[..g].to_vec();
            rant.push((**b).clone());
            rant.extend(ant[div_pos + 1..].iter().cloned());
            let right = Sequent::new(rant, c.succedent.clone());
            expect(left, &d.premises[0].conclusion)?;
            expect(right, &d.premises[1].conclusion)
        }
        RuleTag::BangL { pos } => {
            let Some(Type::Bang(a)) = ant.get(pos) else {
                return Err(format!("no modality at antecedent position {pos}"));
            };
            let mut pant = ant.clone();
            pant[pos] = (**a).clone();
            expect(Sequent::new(pant, c.succedent.clone()), &d.premises[0].conclusion)
        }
        RuleTag::WeakL { pos } => {
            let Some(Type::Bang(_)) = ant.get(pos) else {
                return Err(format!("no modality at antecedent position {pos}"));
            };
            let mut pant = ant.clone();
            pant.remove(pos);
            expect(Sequent::new(pant, c.succedent.clone()), &d.premises[0].conclusion)
        }
    }
}

pub fn validate(d: &Derivation) -> Vec<DerivationViolation> {
    d.validate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProverOptions {
    pub memoize: bool,
}

impl Default for ProverOptions {
    fn default() -> Self {
        ProverOptions { memoize: true }
    }
}

enum Memo {
    InProgress,
    Done(Option<Derivation>),
}

struct Prover {
    opts: ProverOptions,
    memo: HashMap<Sequent, Memo>,
}

impl Prover {
    fn prove(&mut self, s: &Sequent) -> Option<Derivation> {
        if self.opts.memoize {
            match self.memo.get(s) {
                Some(Memo::Done(d)) => return d.clone(),
                Some(Memo::InProgress) => return None,
                None => {}
            }
            self.memo.insert(s.clone(), Memo::InProgress);
        }
        let result = self.search(s);
        if self.opts.memoize {
            self.memo.insert(s.clone(), Memo::Done(result.clone()));
        }
        result
    }

    fn search(&mut self, s: &Sequent) -> Option<Derivation> {
        let ant = &s.antecedent;
        if let Type::Div(a, b) = &s.succedent {
            let mut pant = vec![(**a).clone()];
            pant.extend(ant.iter().cloned());
            let premise = self.prove(&Sequent::new(pant, (**b).clone()))?;
            return Some(Derivation::new(s.clone(), RuleTag::RDiv, vec![premise]));
        }
        s.succedent.as_prim()?;
        if ant.len() == 1 && ant[0] == s.succedent {
            return Some(Derivation::axiom(s.succedent.clone()));
        }
        for (pos, t) in ant.iter().enumerate() {
            let Type::Bang(a) = t else { continue };
            let mut weakened = ant.clone();
            weakened.remove(pos);
            if let Some(p) = self.prove(&Sequent::new(weakened, s.succedent.clone())) {
                return Some(Derivation::new(s.clone(), RuleTag::WeakL { pos }, vec![p]));
            }
            let mut opened = ant.clone();
            opened[pos] = (**a).clone();
            if let Some(p) = self.prove(&Sequent::new(opened, s.succedent.clone())) {
                return Some(Derivation::new(s.clone(), RuleTag::BangL { pos }, vec![p]));
            }
        }
        for (div_pos, t) in ant.iter().enumerate() {
            let Type::Div(a, b) = t else { continue };
            for pi_len in 0..=div_pos {
                let g = div_pos - pi_len;
                let left = Sequent::new(ant[g..div_pos].to_vec(), (**a).clone());
                let Some(lp) = self.prove(&left) else { continue };
                let mut rant = ant[..g].to_vec();
                rant.push((**b).clone());
                rant.extend(ant[div_pos + 1..].iter().cloned());
                let right = Sequent::new(rant, s.succedent.clone());
                if let Some(rp) = self.prove(&right) {
                    return Some(Derivation::new(
                        s.clone(),
                        RuleTag::LDiv { div_pos, pi_len },
                        vec![lp, rp],
                    ));
                }
            }
        }
        None
    }
}

/// Returns a derivation of `s` if one exists.
pub fn prove(s: &Sequent) -> Option<Derivation> {
    prove_with(s, ProverOptions::default())
}

pub fn prove_with(s: &Sequent, opts: ProverOptions) -> Option<Derivation> {
    Prover {
        opts,
        memo: HashMap::new(),
    }
    .prove(s)
}

pub fn derivable(s: &Sequent) -> bool {
    prove(s).is_some()
}
