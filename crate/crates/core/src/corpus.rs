//! Exhaustive enumeration of small sequents.

use thiserror::Error;

use crate::syntax::{Sequent, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusBounds {
    /// Primitives range over `p1..=p{atoms}`.
    pub atoms: u32,
    pub max_connectives: usize,
    pub max_antecedent: usize,
}

/// Largest corpus [`enumerate_sequents`] will materialize.
pub const MAX_CORPUS: u128 = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("corpus bound exceeded: {size} sequents (limit {MAX_CORPUS})")]
pub struct BoundError {
    pub size: u128,
}

/// `types[k]` lists every type with exactly `k` connectives, sorted by its
/// canonical print.
pub fn types_by_connectives(atoms: u32, max: usize) -> Vec<Vec<Type>> {
    let mut types: Vec<Vec<Type>> = Vec::with_capacity(max + 1);
    for k in 0..=max {
        let mut layer = Vec::new();
        if k == 0 {
            layer.extend((1..=atoms).map(Type::prim));
        } else {
            layer.extend(types[k - 1].iter().cloned().map(Type::bang));
            for i in 0..k {
                for a in &types[i] {
                    for b in &types[k - 1 - i] {
                        layer.push(Type::div(a.clone(), b.clone()));
                    }
                }
            }
        }
        let mut keyed: Vec<(String, Type)> = layer.into_iter().map(|t| (t.to_string(), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        types.push(keyed.into_iter().map(|(_, t)| t).collect());
    }
    types
}

fn type_counts(atoms: u32, max: usize) -> Vec<u128> {
    let mut c: Vec<u128> = Vec::with_capacity(max + 1);
    for k in 0..=max {
        let v = if k == 0 {
            atoms as u128
        } else {
            c[k - 1] + (0..k).map(|i| c[i] * c[k - 1 - i]).sum::<u128>()
        };
        c.push(v);
    }
    c
}

/// Ordered ways to write `total` as `parts` nonnegative summands, in
/// lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn corpus_size(b: CorpusBounds) -> u128 {
    let counts = type_counts(b.atoms, b.max_connectives);
    let mut total = 0u128;
    for c in 0..=b.max_connectives {
        for n in 0..=b.max_antecedent {
            for comp in compositions(c, n + 1) {
                total = total.saturating_add(comp.iter().map(|&k| counts[k]).product());
            }
        }
    }
    total
}

/// Every sequent within the bounds, ordered by total connective count, then
/// antecedent length, then the connective split across positions, then the
/// types at each position in print order.
pub fn enumerate_sequents(b: CorpusBounds) -> Result<Vec<Sequent>, BoundError> {
    let size = corpus_size(b);
    if size > MAX_CORPUS {
        return Err(BoundError { size });
    }
    let types = types_by_connectives(b.atoms, b.max_connectives);
    let mut out = Vec::with_capacity(size as usize);
    for c in 0..=b.max_connectives {
        for n in 0..=b.max_antecedent {
            for comp in compositions(c, n + 1) {
                let lists: Vec<&[Type]> = comp.iter().map(|&k| types[k].as_slice()).collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; lists.len()];
                loop {
                    let ant = (0..n).map(|i| lists[i][idx[i]].clone()).collect();
                    out.push(Sequent::new(ant, lists[n][idx[n]].clone()));
                    let mut pos = lists.len();
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < lists[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}
