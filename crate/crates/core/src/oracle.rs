//! A terminating intuitionistic prover used as ground truth for the
//! translation-preservation tests.
//!
//! The calculus is contraction-free in the style of G4ip/LJT: the left
//! implication rule is split by the shape of the implication's antecedent,
//! so backward search terminates without any loop checking (every rule
//! application decreases the Dershowitz–Manna multiset of formula
//! weights). Defined connectives are expanded before search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::il::{expand_defined, ILFormula, ILSequent};
use crate::multiset::Multiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IlRule {
    Axiom,
    TrueRight,
    FalseLeft,
    AndRight,
    AndLeft,
    OrRight1,
    OrRight2,
    OrLeft,
    ImpRight,
    TrueLeft,
    ImpTrueLeft,
    ImpFalseLeft,
    ImpAtomLeft,
    ImpAndLeft,
    ImpOrLeft,
    ImpImpLeft,
}

impl std::fmt::Display for IlRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use IlRule::*;
        let s = match self {
            Axiom => "ax",
            TrueRight => "tR",
            FalseLeft => "fL",
            AndRight => "&R",
            AndLeft => "&L",
            OrRight1 => "|R1",
            OrRight2 => "|R2",
            OrLeft => "|L",
            ImpRight => "=>R",
            TrueLeft => "tL",
            ImpTrueLeft => "t=>L",
            ImpFalseLeft => "f=>L",
            ImpAtomLeft => "p=>L",
            ImpAndLeft => "&=>L",
            ImpOrLeft => "|=>L",
            ImpImpLeft => "=>=>L",
        };
        f.write_str(s)
    }
}

/// A derivation in the contraction-free calculus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ILProofTree {
    pub rule: IlRule,
    pub sequent: ILSequent,
    pub premises: Vec<ILProofTree>,
}

impl ILProofTree {
    pub fn len(&self) -> usize {
        1 + self.premises.iter().map(|p| p.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The calculus is decidable, so `NotProvable` is definitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ILProofResult {
    Provable(ILProofTree),
    NotProvable,
}

impl ILProofResult {
    pub fn is_provable(&self) -> bool {
        matches!(self, ILProofResult::Provable(_))
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("intuitionistic search exceeded the configured node budget")]
pub struct ResourceExceeded;

/// Decides an intuitionistic sequent.
pub fn prove_il(s: &ILSequent) -> ILProofResult {
    prove_il_with_budget(s, u64::MAX).expect("unbounded search cannot exhaust its budget")
}

/// Decides a sequent under a node budget (number of search states).
pub fn prove_il_with_budget(
    s: &ILSequent,
    budget: u64,
) -> Result<ILProofResult, ResourceExceeded> {
    let gamma: Multiset<ILFormula> = s.antecedent.iter().map(expand_defined).collect();
    let goal = expand_defined(&s.succedent);
    let mut nodes = 0u64;
    match search(&gamma, &goal, budget, &mut nodes)? {
        Some(tree) => Ok(ILProofResult::Provable(tree)),
        None => Ok(ILProofResult::NotProvable),
    }
}

fn leaf(rule: IlRule, gamma: &Multiset<ILFormula>, goal: &ILFormula) -> ILProofTree {
    ILProofTree {
        rule,
        sequent: ILSequent {
            antecedent: gamma.clone(),
            succedent: goal.clone(),
        },
        premises: Vec::new(),
    }
}

fn node(
    rule: IlRule,
    gamma: &Multiset<ILFormula>,
    goal: &ILFormula,
    premises: Vec<ILProofTree>,
) -> ILProofTree {
    ILProofTree {
        rule,
        sequent: ILSequent {
            antecedent: gamma.clone(),
            succedent: goal.clone(),
        },
        premises,
    }
}

fn search(
    gamma: &Multiset<ILFormula>,
    goal: &ILFormula,
    budget: u64,
    nodes: &mut u64,
) -> Result<Option<ILProofTree>, ResourceExceeded> {
    use ILFormula::*;

    *nodes += 1;
    if *nodes > budget {
        return Err(ResourceExceeded);
    }

    // Axioms.
    if *goal == True {
        return Ok(Some(leaf(IlRule::TrueRight, gamma, goal)));
    }
    if gamma.contains(&False) {
        return Ok(Some(leaf(IlRule::FalseLeft, gamma, goal)));
    }
    if goal.is_atomlike() && gamma.contains(goal) {
        return Ok(Some(leaf(IlRule::Axiom, gamma, goal)));
    }

    // Invertible left rules: rewrite the first applicable member.
    for f in gamma.distinct() {
        let without = |g: &Multiset<ILFormula>| {
            let mut g = g.clone();
            g.remove_one(f);
            g
        };
        match f {
            True => {
                let g = without(gamma);
                let p = search(&g, goal, budget, nodes)?;
                return Ok(p.map(|p| node(IlRule::TrueLeft, gamma, goal, vec![p])));
            }
            And(x, y) => {
                let mut g = without(gamma);
                g.insert((**x).clone());
                g.insert((**y).clone());
                let p = search(&g, goal, budget, nodes)?;
                return Ok(p.map(|p| node(IlRule::AndLeft, gamma, goal, vec![p])));
            }
            Or(x, y) => {
                let mut g1 = without(gamma);
                g1.insert((**x).clone());
                let Some(p1) = search(&g1, goal, budget, nodes)? else {
                    return Ok(None);
                };
                let mut g2 = without(gamma);
                g2.insert((**y).clone());
                let Some(p2) = search(&g2, goal, budget, nodes)? else {
                    return Ok(None);
                };
                return Ok(Some(node(IlRule::OrLeft, gamma, goal, vec![p1, p2])));
            }
            Imp(x, y) => match &**x {
                True => {
                    let mut g = without(gamma);
                    g.insert((**y).clone());
                    let p = search(&g, goal, budget, nodes)?;
                    return Ok(p.map(|p| node(IlRule::ImpTrueLeft, gamma, goal, vec![p])));
                }
                False => {
                    let g = without(gamma);
                    let p = search(&g, goal, budget, nodes)?;
                    return Ok(p.map(|p| node(IlRule::ImpFalseLeft, gamma, goal, vec![p])));
                }
                Atom(_) if gamma.contains(&**x) => {
                    let mut g = without(gamma);
                    g.insert((**y).clone());
                    let p = search(&g, goal, budget, nodes)?;
                    return Ok(p.map(|p| node(IlRule::ImpAtomLeft, gamma, goal, vec![p])));
                }
                And(x1, x2) => {
                    let mut g = without(gamma);
                    g.insert(ILFormula::imp(
                        (**x1).clone(),
                        ILFormula::imp((**x2).clone(), (**y).clone()),
                    ));
                    let p = search(&g, goal, budget, nodes)?;
                    return Ok(p.map(|p| node(IlRule::ImpAndLeft, gamma, goal, vec![p])));
                }
                Or(x1, x2) => {
                    let mut g = without(gamma);
                    g.insert(ILFormula::imp((**x1).clone(), (**y).clone()));
                    g.insert(ILFormula::imp((**x2).clone(), (**y).clone()));
                    let p = search(&g, goal, budget, nodes)?;
                    return Ok(p.map(|p| node(IlRule::ImpOrLeft, gamma, goal, vec![p])));
                }
                _ => {}
            },
            _ => {}
        }
    }

    // Invertible right rules.
    match goal {
        And(x, y) => {
            let Some(p1) = search(gamma, x.as_ref(), budget, nodes)? else {
                return Ok(None);
            };
            let Some(p2) = search(gamma, y.as_ref(), budget, nodes)? else {
                return Ok(None);
            };
            return Ok(Some(node(IlRule::AndRight, gamma, goal, vec![p1, p2])));
        }
        Imp(x, y) => {
            let mut g = gamma.clone();
            g.insert((**x).clone());
            let p = search(&g, y, budget, nodes)?;
            return Ok(p.map(|p| node(IlRule::ImpRight, gamma, goal, vec![p])));
        }
        _ => {}
    }

    // Choice points.
    if let Or(x, y) = goal {
        if let Some(p) = search(gamma, x.as_ref(), budget, nodes)? {
            return Ok(Some(node(IlRule::OrRight1, gamma, goal, vec![p])));
        }
        if let Some(p) = search(gamma, y.as_ref(), budget, nodes)? {
            return Ok(Some(node(IlRule::OrRight2, gamma, goal, vec![p])));
        }
    }

    let nested: Vec<ILFormula> = gamma
        .distinct()
        .filter(|f| matches!(f, Imp(x, _) if matches!(**x, Imp(..))))
        .cloned()
        .collect();
    for f in nested {
        let (x, y) = match &f {
            Imp(x, y) => (x, y),
            _ => unreachable!(),
        };
        let x2 = match &**x {
            Imp(_, x2) => x2,
            _ => unreachable!(),
        };
        let mut g1 = gamma.clone();
        g1.remove_one(&f);
        g1.insert(ILFormula::imp((**x2).clone(), (**y).clone()));
        let Some(p1) = search(&g1, x.as_ref(), budget, nodes)? else {
            continue;
        };
        let mut g2 = gamma.clone();
        g2.remove_one(&f);
        g2.insert((**y).clone());
        if let Some(p2) = search(&g2, goal, budget, nodes)? {
            return Ok(Some(node(IlRule::ImpImpLeft, gamma, goal, vec![p1, p2])));
        }
    }

    Ok(None)
}

impl ILFormula {
    fn is_atomlike(&self) -> bool {
        matches!(self, ILFormula::Atom(_))
    }
}

/// Verifies that a proof tree is a correct derivation of the given
/// sequent in the contraction-free calculus.
pub fn check_il_proof(tree: &ILProofTree, s: &ILSequent) -> bool {
    let expected = ILSequent {
        antecedent: s.antecedent.iter().map(expand_defined).collect(),
        succedent: expand_defined(&s.succedent),
    };
    tree.sequent == expected && check_node(tree)
}

fn check_node(t: &ILProofTree) -> bool {
    use ILFormula::*;
    let gamma = &t.sequent.antecedent;
    let goal = &t.sequent.succedent;

    let premise_matches = |i: usize, gamma: &Multiset<ILFormula>, goal: &ILFormula| {
        t.premises.get(i).is_some_and(|p| {
            p.sequent.antecedent == *gamma && p.sequent.succedent == *goal
        })
    };
    let without = |f: &ILFormula| {
        let mut g = gamma.clone();
        if g.remove_one(f) {
            Some(g)
        } else {
            None
        }
    };

    let arity = match t.rule {
        IlRule::Axiom | IlRule::TrueRight | IlRule::FalseLeft => 0,
        IlRule::AndRight | IlRule::OrLeft | IlRule::ImpImpLeft => 2,
        _ => 1,
    };
    if t.premises.len() != arity {
        return false;
    }

    let local_ok = match t.rule {
        IlRule::Axiom => goal.is_atomlike() && gamma.contains(goal),
        IlRule::TrueRight => *goal == True,
        IlRule::FalseLeft => gamma.contains(&False),
        IlRule::TrueLeft => without(&True).is_some_and(|g| premise_matches(0, &g, goal)),
        IlRule::AndRight => match goal {
            And(x, y) => premise_matches(0, gamma, x.as_ref()) && premise_matches(1, gamma, y.as_ref()),
            _ => false,
        },
        IlRule::OrRight1 => match goal {
            Or(x, _) => premise_matches(0, gamma, x.as_ref()),
            _ => false,
        },
        IlRule::OrRight2 => match goal {
            Or(_, y) => premise_matches(0, gamma, y.as_ref()),
            _ => false,
        },
        IlRule::ImpRight => match goal {
            Imp(x, y) => {
                let mut g = gamma.clone();
                g.insert((**x).clone());
                premise_matches(0, &g, y.as_ref())
            }
            _ => false,
        },
        IlRule::AndLeft
        | IlRule::OrLeft
        | IlRule::ImpTrueLeft
        | IlRule::ImpFalseLeft
        | IlRule::ImpAtomLeft
        | IlRule::ImpAndLeft
        | IlRule::ImpOrLeft
        | IlRule::ImpImpLeft => gamma.distinct().any(|f| {
            let Some(g) = without(f) else { return false };
            match (t.rule, f) {
                (IlRule::AndLeft, And(x, y)) => {
                    let mut g = g;
                    g.insert((**x).clone());
                    g.insert((**y).clone());
                    premise_matches(0, &g, goal)
                }
                (IlRule::OrLeft, Or(x, y)) => {
                    let mut g1 = g.clone();
                    g1.insert((**x).clone());
                    let mut g2 = g;
                    g2.insert((**y).clone());
                    premise_matches(0, &g1, goal) && premise_matches(1, &g2, goal)
                }
                (IlRule::ImpTrueLeft, Imp(x, y)) if **x == True => {
                    let mut g = g;
                    g.insert((**y).clone());
                    premise_matches(0, &g, goal)
                }
                (IlRule::ImpFalseLeft, Imp(x, _)) if **x == False => {
                    premise_matches(0, &g, goal)
                }
                (IlRule::ImpAtomLeft, Imp(x, y)) if x.is_atomlike() && g.contains(&**x) => {
                    let mut g = g;
                    g.insert((**y).clone());
                    premise_matches(0, &g, goal)
                }
                (IlRule::ImpAndLeft, Imp(x, y)) => match &**x {
                    And(x1, x2) => {
                        let mut g = g;
                        g.insert(ILFormula::imp(
                            (**x1).clone(),
                            ILFormula::imp((**x2).clone(), (**y).clone()),
                        ));
                        premise_matches(0, &g, goal)
                    }
                    _ => false,
                },
                (IlRule::ImpOrLeft, Imp(x, y)) => match &**x {
                    Or(x1, x2) => {
                        let mut g = g;
                        g.insert(ILFormula::imp((**x1).clone(), (**y).clone()));
                        g.insert(ILFormula::imp((**x2).clone(), (**y).clone()));
                        premise_matches(0, &g, goal)
                    }
                    _ => false,
                },
                (IlRule::ImpImpLeft, Imp(x, y)) => match &**x {
                    Imp(_, x2) => {
                        let mut g1 = g.clone();
                        g1.insert(ILFormula::imp((**x2).clone(), (**y).clone()));
                        let mut g2 = g;
                        g2.insert((**y).clone());
                        premise_matches(0, &g1, x.as_ref()) && premise_matches(1, &g2, goal)
                    }
                    _ => false,
                },
                _ => false,
            }
        }),
    };

    local_ok && t.premises.iter().all(check_node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::il::classically_valid;

    fn a() -> ILFormula {
        ILFormula::atom("a")
    }

    fn b() -> ILFormula {
        ILFormula::atom("b")
    }

    fn c() -> ILFormula {
        ILFormula::atom("c")
    }

    #[test]
    fn identity_is_provable() {
        let s = ILSequent::conclusion(ILFormula::imp(a(), a()));
        let r = prove_il(&s);
        match &r {
            ILProofResult::Provable(t) => assert!(check_il_proof(t, &s)),
            ILProofResult::NotProvable => panic!("identity must be provable"),
        }
    }

    #[test]
    fn currying_is_provable() {
        let s = ILSequent::new(
            [ILFormula::imp(ILFormula::and(a(), b()), c())],
            ILFormula::imp(a(), ILFormula::imp(b(), c())),
        );
        assert!(prove_il(&s).is_provable());
    }

    #[test]
    fn disjunct_projection_is_not_provable() {
        let s = ILSequent::new([ILFormula::or(a(), b())], a());
        assert_eq!(prove_il(&s), ILProofResult::NotProvable);
    }

    #[test]
    fn excluded_middle_is_not_provable() {
        let s = ILSequent::conclusion(ILFormula::or(a(), ILFormula::not(a())));
        assert_eq!(prove_il(&s), ILProofResult::NotProvable);
        // ... but its double negation is.
        let dn = ILSequent::conclusion(ILFormula::not(ILFormula::not(ILFormula::or(
            a(),
            ILFormula::not(a()),
        ))));
        assert!(prove_il(&dn).is_provable());
    }

    #[test]
    fn peirce_is_not_provable() {
        let peirce = ILSequent::conclusion(ILFormula::imp(
            ILFormula::imp(ILFormula::imp(a(), b()), a()),
            a(),
        ));
        // classically valid but intuitionistically unprovable
        assert!(classically_valid(&peirce));
        assert_eq!(prove_il(&peirce), ILProofResult::NotProvable);
    }

    #[test]
    fn budget_is_honoured() {
        let s = ILSequent::conclusion(ILFormula::imp(a(), a()));
        assert_eq!(prove_il_with_budget(&s, 1), Err(ResourceExceeded));
    }

    #[test]
    fn corrupted_proof_fails_check() {
        let s = ILSequent::conclusion(ILFormula::imp(a(), a()));
        let ILProofResult::Provable(mut t) = prove_il(&s) else {
            panic!()
        };
        t.rule = IlRule::TrueRight;
        assert!(!check_il_proof(&t, &s));
    }
}
