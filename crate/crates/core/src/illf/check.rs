//! Standalone verification of proof objects against the rule schemas.
//!
//! The checker shares no code with the search engine: it re-derives the
//! premise sequents each rule demands from the node's conclusion and
//! compares them with the stored premises, including all context
//! equations and side conditions.

use thiserror::Error;

use crate::formula::{is_negative, is_positive, Formula, Sequent};
use crate::multiset::Multiset;

use super::{FocusedState, Goal, ProofTree, Rule};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("root conclusion `{found}` does not match the initial sequent `{expected}`")]
    RootMismatch { expected: String, found: String },
    #[error("rule {rule} has {found} premises, expected {expected}")]
    Arity {
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("rule {rule} does not justify `{conclusion}`")]
    BadInstance { rule: Rule, conclusion: String },
}

/// True iff the tree is a valid derivation of `s` (embedded as a
/// negative-phase sequent with an empty classical context).
pub fn check_proof(pt: &ProofTree, s: &Sequent) -> bool {
    check_proof_detailed(pt, s).is_ok()
}

pub fn check_proof_detailed(pt: &ProofTree, s: &Sequent) -> Result<(), CheckError> {
    let initial = FocusedState::initial(s);
    if pt.conclusion != initial {
        return Err(CheckError::RootMismatch {
            expected: initial.to_string(),
            found: pt.conclusion.to_string(),
        });
    }
    check_node(pt)
}

fn bad(node: &ProofTree) -> CheckError {
    CheckError::BadInstance {
        rule: node.rule,
        conclusion: node.conclusion.to_string(),
    }
}

fn check_node(node: &ProofTree) -> Result<(), CheckError> {
    let expected = node.rule.arity();
    if node.premises.len() != expected {
        return Err(CheckError::Arity {
            rule: node.rule,
            expected,
            found: node.premises.len(),
        });
    }
    if !instance_ok(node) {
        return Err(bad(node));
    }
    for p in &node.premises {
        check_node(p)?;
    }
    Ok(())
}

/// Premise equality including the classical context.
fn premise_is(node: &ProofTree, i: usize, state: &FocusedState) -> bool {
    node.premises[i].conclusion == *state
}

fn instance_ok(node: &ProofTree) -> bool {
    use Formula::*;
    let st = &node.conclusion;
    let state = |gamma: Multiset<Formula>, goal: Goal| FocusedState {
        theta: st.theta.clone(),
        gamma,
        goal,
    };
    let without = |f: &Formula| -> Option<Multiset<Formula>> {
        let mut g = st.gamma.clone();
        g.remove_one(f).then_some(g)
    };

    match node.rule {
        // ---- negative phase ----
        Rule::TensorL => match &st.goal {
            Goal::Neg(_) => st.gamma.distinct().any(|f| match f {
                Tensor(a, b) => {
                    let Some(mut g) = without(&f.clone()) else {
                        return false;
                    };
                    g.insert((**a).clone());
                    g.insert((**b).clone());
                    premise_is(node, 0, &state(g, st.goal.clone()))
                }
                _ => false,
            }),
            _ => false,
        },
        Rule::OneL => match &st.goal {
            Goal::Neg(_) => without(&One)
                .is_some_and(|g| premise_is(node, 0, &state(g, st.goal.clone()))),
            _ => false,
        },
        Rule::BotR => match &st.goal {
            Goal::Neg(Some(Bot)) => {
                premise_is(node, 0, &state(st.gamma.clone(), Goal::Neg(None)))
            }
            _ => false,
        },
        Rule::TopR => matches!(&st.goal, Goal::Neg(Some(Top))),
        Rule::ZeroL => matches!(&st.goal, Goal::Neg(_)) && st.gamma.contains(&Zero),
        Rule::BangL => match &st.goal {
            Goal::Neg(_) => st.gamma.distinct().any(|f| match f {
                Bang(inner) => {
                    let Some(g) = without(&f.clone()) else {
                        return false;
                    };
                    let mut theta = st.theta.clone();
                    theta.insert((**inner).clone());
                    let want = FocusedState {
                        theta,
                        gamma: g,
                        goal: st.goal.clone(),
                    };
                    premise_is(node, 0, &want)
                }
                _ => false,
            }),
            _ => false,
        },
        Rule::LimpR => match &st.goal {
            Goal::Neg(Some(Limp(a, b))) => {
                let mut g = st.gamma.clone();
                g.insert((**a).clone());
                premise_is(node, 0, &state(g, Goal::Neg(Some((**b).clone()))))
            }
            _ => false,
        },
        Rule::WithR => match &st.goal {
            Goal::Neg(Some(With(a, b))) => {
                premise_is(
                    node,
                    0,
                    &state(st.gamma.clone(), Goal::Neg(Some((**a).clone()))),
                ) && premise_is(
                    node,
                    1,
                    &state(st.gamma.clone(), Goal::Neg(Some((**b).clone()))),
                )
            }
            _ => false,
        },
        Rule::PlusL => match &st.goal {
            Goal::Neg(_) => st.gamma.distinct().any(|f| match f {
                Plus(a, b) => {
                    let Some(base) = without(&f.clone()) else {
                        return false;
                    };
                    let mut left = base.clone();
                    left.insert((**a).clone());
                    let mut right = base;
                    right.insert((**b).clone());
                    premise_is(node, 0, &state(left, st.goal.clone()))
                        && premise_is(node, 1, &state(right, st.goal.clone()))
                }
                _ => false,
            }),
            _ => false,
        },
        // ---- structural ----
        Rule::DecideL2 => match (&st.goal, &node.premises[0].conclusion.goal) {
            (Goal::Neg(delta), Goal::LeftFocus(n, delta2)) => {
                delta == delta2
                    && is_negative(n)
                    && without(n)
                        .is_some_and(|g| {
                            premise_is(node, 0, &state(g, Goal::LeftFocus(n.clone(), delta.clone())))
                        })
            }
            _ => false,
        },
        Rule::DecideL1 => match (&st.goal, &node.premises[0].conclusion.goal) {
            (Goal::Neg(delta), Goal::LeftFocus(na, delta2)) => {
                delta == delta2
                    && !na.is_atom()
                    && st.theta.contains(na)
                    && premise_is(
                        node,
                        0,
                        &state(st.gamma.clone(), Goal::LeftFocus(na.clone(), delta.clone())),
                    )
            }
            _ => false,
        },
        Rule::DecideR => match &st.goal {
            Goal::Neg(Some(p)) => {
                (p.is_atom() || is_positive(p))
                    && premise_is(node, 0, &state(st.gamma.clone(), Goal::RightFocus(p.clone())))
            }
            _ => false,
        },
        Rule::ReleaseL => match &st.goal {
            Goal::LeftFocus(p, delta) => {
                (p.is_atom() || is_positive(p)) && {
                    let mut g = st.gamma.clone();
                    g.insert(p.clone());
                    premise_is(node, 0, &state(g, Goal::Neg(delta.clone())))
                }
            }
            _ => false,
        },
        Rule::ReleaseR => match &st.goal {
            Goal::RightFocus(n) => {
                is_negative(n)
                    && premise_is(node, 0, &state(st.gamma.clone(), Goal::Neg(Some(n.clone()))))
            }
            _ => false,
        },
        // ---- positive phase ----
        Rule::TensorR => match &st.goal {
            Goal::RightFocus(Tensor(a, b)) => {
                let g1 = &node.premises[0].conclusion.gamma;
                let g2 = &node.premises[1].conclusion.gamma;
                g1.union(g2) == st.gamma
                    && premise_is(node, 0, &state(g1.clone(), Goal::RightFocus((**a).clone())))
                    && premise_is(node, 1, &state(g2.clone(), Goal::RightFocus((**b).clone())))
            }
            _ => false,
        },
        Rule::LimpL => match &st.goal {
            Goal::LeftFocus(Limp(a, b), delta) => {
                let g1 = &node.premises[0].conclusion.gamma;
                let g2 = &node.premises[1].conclusion.gamma;
                g1.union(g2) == st.gamma
                    && premise_is(node, 0, &state(g1.clone(), Goal::RightFocus((**a).clone())))
                    && premise_is(
                        node,
                        1,
                        &state(g2.clone(), Goal::LeftFocus((**b).clone(), delta.clone())),
                    )
            }
            _ => false,
        },
        Rule::PlusR1 | Rule::PlusR2 => match &st.goal {
            Goal::RightFocus(Plus(a, b)) => {
                let sub = if node.rule == Rule::PlusR1 { a } else { b };
                premise_is(
                    node,
                    0,
                    &state(st.gamma.clone(), Goal::RightFocus((**sub).clone())),
                )
            }
            _ => false,
        },
        Rule::WithL1 | Rule::WithL2 => match &st.goal {
            Goal::LeftFocus(With(a, b), delta) => {
                let sub = if node.rule == Rule::WithL1 { a } else { b };
                premise_is(
                    node,
                    0,
                    &state(
                        st.gamma.clone(),
                        Goal::LeftFocus((**sub).clone(), delta.clone()),
                    ),
                )
            }
            _ => false,
        },
        Rule::OneR => matches!(&st.goal, Goal::RightFocus(One)) && st.gamma.is_empty(),
        Rule::BotL => {
            matches!(&st.goal, Goal::LeftFocus(Bot, None)) && st.gamma.is_empty()
        }
        Rule::BangR => match &st.goal {
            Goal::RightFocus(Bang(f)) => {
                st.gamma.is_empty()
                    && premise_is(
                        node,
                        0,
                        &state(Multiset::new(), Goal::Neg(Some((**f).clone()))),
                    )
            }
            _ => false,
        },
        Rule::InitR => match &st.goal {
            Goal::RightFocus(p @ Atom(_)) => {
                let in_scope = st.theta.contains(p) || st.gamma.contains(p);
                let ctx_ok =
                    st.gamma.is_empty() || (st.gamma.len() == 1 && st.gamma.contains(p));
                in_scope && ctx_ok
            }
            _ => false,
        },
    }
}
