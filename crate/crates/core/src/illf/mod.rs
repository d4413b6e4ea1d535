//! The focused proof-search engine for intuitionistic linear logic, with
//! resource management, loop control, proof objects and an independent
//! proof checker.
//!
//! Sequents come in three goal modes: the negative phase `Θ : Γ → Δ`
//! decomposes eagerly and deterministically; right focus `Θ : Γ ⇓ F` and
//! left focus `Θ : Γ —F→ Δ` chain non-invertible steps on the focused
//! formula. The decide rules pick the focus at a normal sequent; the
//! release rules drop focus when the polarity flips.

mod check;
pub mod naive;
mod search;

use std::collections::BTreeSet;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_ill_admissible, is_negative, is_positive, Formula, Sequent};
use crate::multiset::Multiset;

pub use check::{check_proof, check_proof_detailed, CheckError};

/// Goal slot of a focused sequent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Goal {
    /// Negative phase `Θ : Γ → Δ`; the succedent may be absent.
    Neg(Option<Formula>),
    /// Right focus `Θ : Γ ⇓ F`.
    RightFocus(Formula),
    /// Left focus `Θ : Γ —F→ Δ`.
    LeftFocus(Formula, Option<Formula>),
}

/// A focused sequent: classical context, linear context and goal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocusedState {
    pub theta: BTreeSet<Formula>,
    pub gamma: Multiset<Formula>,
    pub goal: Goal,
}

impl FocusedState {
    pub fn initial(s: &Sequent) -> FocusedState {
        FocusedState {
            theta: BTreeSet::new(),
            gamma: s.antecedent.clone(),
            goal: Goal::Neg(s.succedent.clone()),
        }
    }

    /// A sequent is normal when the linear context holds only negative
    /// formulas or atoms and the succedent is absent, atomic or positive.
    pub fn is_normal(&self) -> bool {
        let ctx_ok = self
            .gamma
            .distinct()
            .all(|f| f.is_atom() || is_negative(f));
        let goal_ok = match &self.goal {
            Goal::Neg(None) => true,
            Goal::Neg(Some(d)) => d.is_atom() || is_positive(d),
            _ => false,
        };
        ctx_ok && goal_ok
    }
}

impl std::fmt::Display for FocusedState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let theta: Vec<String> = self.theta.iter().map(|x| x.to_string()).collect();
        write!(f, "{} : {}", theta.join(", "), self.gamma)?;
        match &self.goal {
            Goal::Neg(Some(d)) => write!(f, " --> {d}"),
            Goal::Neg(None) => write!(f, " -->"),
            Goal::RightFocus(d) => write!(f, " >> {d}"),
            Goal::LeftFocus(x, Some(d)) => write!(f, " --[{x}]--> {d}"),
            Goal::LeftFocus(x, None) => write!(f, " --[{x}]-->"),
        }
    }
}

/// Inference rules of the focused calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    // negative phase
    TensorL,
    LimpR,
    OneL,
    BotR,
    TopR,
    ZeroL,
    BangL,
    WithR,
    PlusL,
    // positive phase
    TensorR,
    LimpL,
    PlusR1,
    PlusR2,
    WithL1,
    WithL2,
    OneR,
    BotL,
    BangR,
    InitR,
    // structural
    DecideL1,
    DecideL2,
    DecideR,
    ReleaseL,
    ReleaseR,
}

impl Rule {
    /// Number of premises the rule takes.
    pub fn arity(self) -> usize {
        use Rule::*;
        match self {
            TopR | ZeroL | OneR | BotL | InitR => 0,
            WithR | PlusL | TensorR | LimpL => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use Rule::*;
        let s = match self {
            TensorL => "*L",
            LimpR => "-oR",
            OneL => "1L",
            BotR => "botR",
            TopR => "topR",
            ZeroL => "0L",
            BangL => "!L",
            WithR => "&R",
            PlusL => "+L",
            TensorR => "*R",
            LimpL => "-oL",
            PlusR1 => "+R1",
            PlusR2 => "+R2",
            WithL1 => "&L1",
            WithL2 => "&L2",
            OneR => "1R",
            BotL => "botL",
            BangR => "!R",
            InitR => "IR",
            DecideL1 => "DL1",
            DecideL2 => "DL2",
            DecideR => "DR",
            ReleaseL => "RL",
            ReleaseR => "RR",
        };
        f.write_str(s)
    }
}

/// A derivation; every node records the rule applied and its full
/// conclusion, so it can be re-checked without the prover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: FocusedState,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    /// Node count.
    pub fn len(&self) -> usize {
        1 + self.premises.iter().map(|p| p.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All nodes, root first.
    pub fn iter(&self) -> impl Iterator<Item = &ProofTree> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.premises.iter());
            Some(node)
        })
    }
}

/// Search limits. `decide_bound` caps how many times one classical
/// formula may be focused on along a single branch; search cut by any
/// bound reports `Unknown`, never `NotProvable`.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub timeout: Option<Duration>,
    /// Maximum decide nesting depth per branch.
    pub max_depth: usize,
    /// Focus budget per classical-context formula per branch.
    pub decide_bound: u32,
    /// Optional global decide budget, for wall-clock-independent runs.
    pub max_decides: Option<u64>,
    /// Enables the classical-context saturation heuristics.
    pub saturate: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            timeout: None,
            max_depth: 512,
            decide_bound: 4,
            max_decides: None,
            saturate: true,
        }
    }
}

impl SearchLimits {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn with_decide_bound(mut self, bound: u32) -> Self {
        self.decide_bound = bound;
        self
    }

    pub fn with_max_decides(mut self, decides: u64) -> Self {
        self.max_decides = Some(decides);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnknownReason {
    Timeout,
    BoundHit,
}

/// Outcome of a proof search.
#[derive(Clone, Debug)]
pub enum ProveResult {
    Provable(ProofTree, Duration),
    /// The search space was exhausted with no bound involved.
    NotProvable(Duration),
    Unknown(UnknownReason, Duration),
}

impl ProveResult {
    pub fn is_provable(&self) -> bool {
        matches!(self, ProveResult::Provable(..))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            ProveResult::Provable(t, _) => Some(t),
            _ => None,
        }
    }

    pub fn elapsed(&self) -> Duration {
        match self {
            ProveResult::Provable(_, e) | ProveResult::NotProvable(e) | ProveResult::Unknown(_, e) => {
                *e
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProveError {
    #[error("formula leaves the intuitionistic fragment (contains | or ?): {0}")]
    NonAdmissibleFormula(Formula),
}

/// Decides a sequent under the given limits.
pub fn prove(s: &Sequent, limits: &SearchLimits) -> Result<ProveResult, ProveError> {
    prove_with_cancel(s, limits, None)
}

/// Like [`prove`], with an external cancellation flag polled at every
/// decide step.
pub fn prove_with_cancel(
    s: &Sequent,
    limits: &SearchLimits,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<ProveResult, ProveError> {
    for f in s.antecedent.iter() {
        if !is_ill_admissible(f) {
            return Err(ProveError::NonAdmissibleFormula(f.clone()));
        }
    }
    if let Some(f) = &s.succedent {
        if !is_ill_admissible(f) {
            return Err(ProveError::NonAdmissibleFormula(f.clone()));
        }
    }
    Ok(search::run(s, limits, cancel))
}

/// Exhaustive application of the negative-phase rules to a sequent,
/// returning the normal sequents at the frontier. `⊤R` and `0L` close
/// their branch, contributing no subgoal. The goal is decomposed first,
/// then the linear context left to right.
pub fn negative_phase(st: &FocusedState) -> Vec<FocusedState> {
    let Goal::Neg(delta) = &st.goal else {
        panic!("negative_phase expects a negative-phase sequent");
    };
    let mut out = Vec::new();
    neg_strict(st.theta.clone(), st.gamma.clone(), delta.clone(), &mut out);
    out
}

fn neg_strict(
    theta: BTreeSet<Formula>,
    gamma: Multiset<Formula>,
    delta: Option<Formula>,
    out: &mut Vec<FocusedState>,
) {
    use Formula::*;
    if let Some(d) = &delta {
        if is_negative(d) {
            match d.clone() {
                Limp(f, g) => {
                    let mut gamma = gamma;
                    gamma.insert(*f);
                    return neg_strict(theta, gamma, Some(*g), out);
                }
                With(f, g) => {
                    neg_strict(theta.clone(), gamma.clone(), Some(*f), out);
                    return neg_strict(theta, gamma, Some(*g), out);
                }
                Top => return, // ⊤R closes
                Bot => return neg_strict(theta, gamma, None, out),
                Par(..) | Quest(_) => panic!("non-admissible connective in negative phase"),
                _ => unreachable!(),
            }
        }
    }
    let target = gamma
        .distinct()
        .find(|f| is_positive(f) && !f.is_atom())
        .cloned();
    match target {
        Some(Tensor(f, g)) => {
            let mut gamma = gamma;
            gamma.remove_one(&Tensor(f.clone(), g.clone()));
            gamma.insert(*f);
            gamma.insert(*g);
            neg_strict(theta, gamma, delta, out);
        }
        Some(One) => {
            let mut gamma = gamma;
            gamma.remove_one(&One);
            neg_strict(theta, gamma, delta, out);
        }
        Some(Zero) => {} // 0L closes
        Some(Plus(f, g)) => {
            let mut base = gamma;
            base.remove_one(&Plus(f.clone(), g.clone()));
            let mut left = base.clone();
            left.insert(*f);
            neg_strict(theta.clone(), left, delta.clone(), out);
            let mut right = base;
            right.insert(*g);
            neg_strict(theta, right, delta, out);
        }
        Some(Bang(f)) => {
            let mut gamma = gamma;
            gamma.remove_one(&Bang(f.clone()));
            let mut theta = theta;
            theta.insert(*f);
            neg_strict(theta, gamma, delta, out);
        }
        Some(_) => unreachable!("only positive non-atomic formulas are selected"),
        None => out.push(FocusedState {
            theta,
            gamma,
            goal: Goal::Neg(delta),
        }),
    }
}

/// Enumerates every legal decide step at a normal sequent, in the order
/// the engine tries them: linear focus first, then the succedent, then
/// classical copies.
pub fn decide(st: &FocusedState) -> Vec<(Rule, FocusedState)> {
    let Goal::Neg(delta) = &st.goal else {
        panic!("decide expects a negative-phase sequent");
    };
    let mut out = Vec::new();
    for n in st.gamma.distinct() {
        if is_negative(n) {
            let mut gamma = st.gamma.clone();
            gamma.remove_one(n);
            out.push((
                Rule::DecideL2,
                FocusedState {
                    theta: st.theta.clone(),
                    gamma,
                    goal: Goal::LeftFocus(n.clone(), delta.clone()),
                },
            ));
        }
    }
    if let Some(d) = delta {
        if d.is_atom() || is_positive(d) {
            out.push((
                Rule::DecideR,
                FocusedState {
                    theta: st.theta.clone(),
                    gamma: st.gamma.clone(),
                    goal: Goal::RightFocus(d.clone()),
                },
            ));
        }
    }
    for na in &st.theta {
        if !na.is_atom() {
            out.push((
                Rule::DecideL1,
                FocusedState {
                    theta: st.theta.clone(),
                    gamma: st.gamma.clone(),
                    goal: Goal::LeftFocus(na.clone(), delta.clone()),
                },
            ));
        }
    }
    out
}

/// Enumerates the positive-phase rules applicable to a focused sequent,
/// with the premise list of each. Closing rules contribute an empty
/// premise list; an empty result means the branch fails. Context splits
/// are enumerated explicitly here; the engine threads leftovers instead.
pub fn positive_step(st: &FocusedState) -> Vec<(Rule, Vec<FocusedState>)> {
    use Formula::*;
    let mut out = Vec::new();
    let state = |gamma: Multiset<Formula>, goal: Goal| FocusedState {
        theta: st.theta.clone(),
        gamma,
        goal,
    };
    match &st.goal {
        Goal::RightFocus(f) => match f {
            Tensor(a, b) => {
                for (g1, g2) in st.gamma.splits() {
                    out.push((
                        Rule::TensorR,
                        vec![
                            state(g1, Goal::RightFocus((**a).clone())),
                            state(g2, Goal::RightFocus((**b).clone())),
                        ],
                    ));
                }
            }
            Plus(a, b) => {
                out.push((
                    Rule::PlusR1,
                    vec![state(st.gamma.clone(), Goal::RightFocus((**a).clone()))],
                ));
                out.push((
                    Rule::PlusR2,
                    vec![state(st.gamma.clone(), Goal::RightFocus((**b).clone()))],
                ));
            }
            One => {
                if st.gamma.is_empty() {
                    out.push((Rule::OneR, vec![]));
                }
            }
            Bang(a) => {
                if st.gamma.is_empty() {
                    out.push((
                        Rule::BangR,
                        vec![state(Multiset::new(), Goal::Neg(Some((**a).clone())))],
                    ));
                }
            }
            Atom(p) => {
                let p = Formula::Atom(p.clone());
                let in_scope = st.theta.contains(&p) || st.gamma.contains(&p);
                let ctx_ok = st.gamma.is_empty()
                    || (st.gamma.len() == 1 && st.gamma.contains(&p));
                if in_scope && ctx_ok {
                    out.push((Rule::InitR, vec![]));
                }
            }
            neg => {
                debug_assert!(is_negative(neg));
                out.push((
                    Rule::ReleaseR,
                    vec![state(st.gamma.clone(), Goal::Neg(Some(neg.clone())))],
                ));
            }
        },
        Goal::LeftFocus(f, delta) => match f {
            Limp(a, b) => {
                for (g1, g2) in st.gamma.splits() {
                    out.push((
                        Rule::LimpL,
                        vec![
                            state(g1, Goal::RightFocus((**a).clone())),
                            state(g2, Goal::LeftFocus((**b).clone(), delta.clone())),
                        ],
                    ));
                }
            }
            With(a, b) => {
                out.push((
                    Rule::WithL1,
                    vec![state(
                        st.gamma.clone(),
                        Goal::LeftFocus((**a).clone(), delta.clone()),
                    )],
                ));
                out.push((
                    Rule::WithL2,
                    vec![state(
                        st.gamma.clone(),
                        Goal::LeftFocus((**b).clone(), delta.clone()),
                    )],
                ));
            }
            Bot => {
                if st.gamma.is_empty() && delta.is_none() {
                    out.push((Rule::BotL, vec![]));
                }
            }
            pos if pos.is_atom() || is_positive(pos) => {
                let mut gamma = st.gamma.clone();
                gamma.insert(pos.clone());
                out.push((Rule::ReleaseL, vec![state(gamma, Goal::Neg(delta.clone()))]));
            }
            _ => {} // ⊤ under left focus has no rule
        },
        Goal::Neg(_) => panic!("positive_step expects a focused sequent"),
    }
    out
}

/// Saturates a classical context with the two loop-control rewrites:
/// a `&` of two positive formulas is replaced by its components, and the
/// conclusion of an implication whose atomic antecedent is present is
/// added. The result is a fixpoint; it is reached in finitely many steps
/// because every added formula is a subformula of the input.
pub fn saturate_classical(theta: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    let mut out = theta.clone();
    loop {
        let mut changed = false;

        let split: Vec<Formula> = out
            .iter()
            .filter(|f| matches!(f, Formula::With(a, b) if is_positive(a) && is_positive(b)))
            .cloned()
            .collect();
        for f in split {
            if let Formula::With(a, b) = &f {
                out.remove(&f);
                out.insert((**a).clone());
                out.insert((**b).clone());
                changed = true;
            }
        }

        let derived: Vec<Formula> = out
            .iter()
            .filter_map(|f| match f {
                Formula::Limp(a, b) if a.is_atom() && out.contains(a) => Some((**b).clone()),
                _ => None,
            })
            .collect();
        for b in derived {
            changed |= out.insert(b);
        }

        if !changed {
            return out;
        }
    }
}

#[cfg(test)]
mod tests;
