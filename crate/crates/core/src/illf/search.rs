//! The resource-managed search behind [`super::prove`].
//!
//! Context splitting at `⊗R`/`⊸L` is lazy: the first premise receives the
//! whole linear context and hands its leftovers to the second premise.
//! `⊤R` and `0L` set a slack flag instead of committing to a consumption,
//! additive branches reconcile their premises' consumptions, and every
//! rule that moves a formula into a premise's context checks on return
//! that the formula was consumed there (or absorbs it into slack).
//!
//! The search yields raw nodes that record consumption rather than
//! contexts; once a root result with an empty (or slack-absorbed)
//! leftover is found, a top-down pass assigns the strict contexts of the
//! final proof object.
//!
//! Branch-scoped control state (decide depth, per-formula focus budgets,
//! the visited-state chain) lives in a persistent [`Branch`] value that
//! follows the proof-tree structure: sibling premises share their node's
//! branch, not whatever the search stack for the first premise left
//! behind.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use crate::formula::{is_negative, is_positive, Formula, Sequent};
use crate::multiset::Multiset;

use super::{
    saturate_classical, FocusedState, Goal, ProofTree, ProveResult, Rule, SearchLimits,
    UnknownReason,
};

type Ctx = Multiset<Formula>;
type Theta = BTreeSet<Formula>;

struct RawNode {
    rule: Rule,
    /// Principal context formula, for rules that pick one.
    principal: Option<Formula>,
    /// Input minus leftover at the time the node was produced.
    consumed: Ctx,
    slack: bool,
    children: Vec<Raw>,
}

type Raw = Rc<RawNode>;

/// Continuations receive the searcher back, the leftover context, the
/// slack flag and the derivation built so far. Returning `true` unwinds
/// the search to the nearest catcher.
type K<'k> = &'k mut dyn FnMut(&mut Searcher, Ctx, bool, Raw) -> bool;

fn mk(
    rule: Rule,
    principal: Option<Formula>,
    input: &Ctx,
    leftover: &Ctx,
    slack: bool,
    children: Vec<Raw>,
) -> Raw {
    Rc::new(RawNode {
        rule,
        principal,
        consumed: input.difference(leftover),
        slack,
        children,
    })
}

/// Checks that each rule-added formula was consumed by the premise; a
/// surplus copy is either absorbed into slack or fails the result.
fn settle(leftover: &mut Ctx, slack: bool, added: &[(Formula, u32)]) -> bool {
    for (f, before) in added {
        let over = leftover.count(f).saturating_sub(*before);
        for _ in 0..over {
            if !slack {
                return false;
            }
            leftover.remove_one(f);
        }
    }
    true
}

struct PathEntry {
    theta: Rc<Theta>,
    sat_theta: Option<Rc<Theta>>,
    gamma: Ctx,
    delta: Option<Formula>,
    parent: Option<Rc<PathEntry>>,
}

struct CountEntry {
    formula: Formula,
    used: u32,
    parent: Option<Rc<CountEntry>>,
}

/// Branch-scoped control state; cloning is O(1) so sibling subgoals can
/// share the state of their common ancestor node.
#[derive(Clone, Default)]
struct Branch {
    depth: usize,
    path: Option<Rc<PathEntry>>,
    counts: Option<Rc<CountEntry>>,
}

impl Branch {
    fn dl1_used(&self, f: &Formula) -> u32 {
        let mut cur = self.counts.as_ref();
        while let Some(e) = cur {
            if e.formula == *f {
                return e.used;
            }
            cur = e.parent.as_ref();
        }
        0
    }

    fn with_dl1_use(&self, f: &Formula) -> Branch {
        Branch {
            depth: self.depth,
            path: self.path.clone(),
            counts: Some(Rc::new(CountEntry {
                formula: f.clone(),
                used: self.dl1_used(f) + 1,
                parent: self.counts.clone(),
            })),
        }
    }

    fn seen_raw(&self, theta: &Theta, gamma: &Ctx, delta: &Option<Formula>) -> bool {
        let mut cur = self.path.as_ref();
        while let Some(e) = cur {
            if *e.theta == *theta && e.gamma == *gamma && e.delta == *delta {
                return true;
            }
            cur = e.parent.as_ref();
        }
        false
    }

    fn seen_saturated(&self, sat: &Theta, gamma: &Ctx, delta: &Option<Formula>) -> bool {
        let mut cur = self.path.as_ref();
        while let Some(e) = cur {
            if e.sat_theta.as_deref().is_some_and(|t| *t == *sat)
                && e.gamma == *gamma
                && e.delta == *delta
            {
                return true;
            }
            cur = e.parent.as_ref();
        }
        false
    }
}

struct Searcher<'a> {
    limits: &'a SearchLimits,
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
    decides: u64,
    bound_hit: bool,
    timed_out: bool,
    /// Set only by timeout or cancellation; makes unwinding global.
    hard_stop: bool,
    sat_cache: HashMap<Theta, Rc<Theta>>,
}

pub(super) fn run(
    s: &Sequent,
    limits: &SearchLimits,
    cancel: Option<Arc<AtomicBool>>,
) -> ProveResult {
    // Deep backtracking recurses; give the search a roomy stack.
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .name("illf-search".into())
            .stack_size(64 << 20)
            .spawn_scoped(scope, move || run_inner(s, limits, cancel))
            .expect("spawning the search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn run_inner(
    s: &Sequent,
    limits: &SearchLimits,
    cancel: Option<Arc<AtomicBool>>,
) -> ProveResult {
    let start = Instant::now();
    let mut searcher = Searcher {
        limits,
        deadline: limits.timeout.map(|t| Instant::now() + t),
        cancel,
        decides: 0,
        bound_hit: false,
        timed_out: false,
        hard_stop: false,
        sat_cache: HashMap::new(),
    };

    let theta = Rc::new(Theta::new());
    let branch = Branch::default();
    let mut found: Option<Raw> = None;
    searcher.neg(
        &theta,
        s.antecedent.clone(),
        s.succedent.clone(),
        &branch,
        &mut |_, leftover, slack, tree| {
            if leftover.is_empty() || slack {
                found = Some(tree);
                true
            } else {
                false
            }
        },
    );

    let elapsed = start.elapsed();
    match found {
        Some(raw) => {
            let tree = annotate(
                &raw,
                &theta,
                s.antecedent.clone(),
                Goal::Neg(s.succedent.clone()),
            );
            ProveResult::Provable(tree, elapsed)
        }
        None if searcher.timed_out => ProveResult::Unknown(UnknownReason::Timeout, elapsed),
        None if searcher.bound_hit => ProveResult::Unknown(UnknownReason::BoundHit, elapsed),
        None => ProveResult::NotProvable(elapsed),
    }
}

impl<'a> Searcher<'a> {
    /// Negative phase: decompose the goal first, then the context left to
    /// right; hand normal sequents to `decide`.
    fn neg(
        &mut self,
        theta: &Rc<Theta>,
        gamma: Ctx,
        delta: Option<Formula>,
        br: &Branch,
        k: K,
    ) -> bool {
        use Formula::*;

        if let Some(d) = &delta {
            if is_negative(d) {
                match d.clone() {
                    Limp(f, g) => {
                        let (f, g) = (*f, *g);
                        let input = gamma.clone();
                        let before = gamma.count(&f);
                        let mut premise = gamma;
                        premise.insert(f.clone());
                        return self.neg(theta, premise, Some(g), br, &mut |me, mut lo, s, t| {
                            if !settle(&mut lo, s, &[(f.clone(), before)]) {
                                return false;
                            }
                            let node = mk(Rule::LimpR, None, &input, &lo, s, vec![t]);
                            k(me, lo, s, node)
                        });
                    }
                    With(f, g) => {
                        let (f, g) = (*f, *g);
                        let input = gamma.clone();
                        return self.neg(
                            theta,
                            gamma.clone(),
                            Some(f),
                            br,
                            &mut |me, lo1, s1, t1| {
                                me.neg(
                                    theta,
                                    input.clone(),
                                    Some(g.clone()),
                                    br,
                                    &mut |me2, lo2, s2, t2| {
                                        let out = lo1.intersection(&lo2);
                                        if (!s1 && out != lo1) || (!s2 && out != lo2) {
                                            return false;
                                        }
                                        let node = mk(
                                            Rule::WithR,
                                            None,
                                            &input,
                                            &out,
                                            s1 && s2,
                                            vec![t1.clone(), t2],
                                        );
                                        k(me2, out, s1 && s2, node)
                                    },
                                )
                            },
                        );
                    }
                    Top => {
                        let node = mk(Rule::TopR, None, &gamma, &gamma, true, vec![]);
                        return k(self, gamma, true, node);
                    }
                    Bot => {
                        let input = gamma.clone();
                        return self.neg(theta, gamma, None, br, &mut |me, lo, s, t| {
                            let node = mk(Rule::BotR, None, &input, &lo, s, vec![t]);
                            k(me, lo, s, node)
                        });
                    }
                    Par(..) | Quest(_) => unreachable!("admissibility checked on entry"),
                    _ => unreachable!("positive goals are not decomposed here"),
                }
            }
        }

        let target = gamma
            .distinct()
            .find(|f| is_positive(f) && !f.is_atom())
            .cloned();
        match target {
            Some(principal @ Tensor(..)) => {
                let (f, g) = match &principal {
                    Tensor(f, g) => ((**f).clone(), (**g).clone()),
                    _ => unreachable!(),
                };
                let input = gamma.clone();
                let mut base = gamma;
                base.remove_one(&principal);
                let bf = base.count(&f);
                let bg = base.count(&g);
                let mut premise = base;
                premise.insert(f.clone());
                premise.insert(g.clone());
                self.neg(theta, premise, delta, br, &mut |me, mut lo, s, t| {
                    if !settle(&mut lo, s, &[(f.clone(), bf), (g.clone(), bg)]) {
                        return false;
                    }
                    let node =
                        mk(Rule::TensorL, Some(principal.clone()), &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
            Some(One) => {
                let input = gamma.clone();
                let mut premise = gamma;
                premise.remove_one(&One);
                self.neg(theta, premise, delta, br, &mut |me, lo, s, t| {
                    let node = mk(Rule::OneL, Some(One), &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
            Some(Zero) => {
                let mut leftover = gamma.clone();
                leftover.remove_one(&Zero);
                let node = mk(Rule::ZeroL, Some(Zero), &gamma, &leftover, true, vec![]);
                k(self, leftover, true, node)
            }
            Some(principal @ Plus(..)) => {
                let (f, g) = match &principal {
                    Plus(f, g) => ((**f).clone(), (**g).clone()),
                    _ => unreachable!(),
                };
                let input = gamma.clone();
                let mut base = gamma;
                base.remove_one(&principal);
                let bf = base.count(&f);
                let bg = base.count(&g);
                let mut left = base.clone();
                left.insert(f.clone());
                let right_base = base;
                self.neg(theta, left, delta.clone(), br, &mut |me, mut lo1, s1, t1| {
                    if !settle(&mut lo1, s1, &[(f.clone(), bf)]) {
                        return false;
                    }
                    let mut right = right_base.clone();
                    right.insert(g.clone());
                    let g = g.clone();
                    let principal = principal.clone();
                    let input = input.clone();
                    me.neg(theta, right, delta.clone(), br, &mut |me2, mut lo2, s2, t2| {
                        if !settle(&mut lo2, s2, &[(g.clone(), bg)]) {
                            return false;
                        }
                        let out = lo1.intersection(&lo2);
                        if (!s1 && out != lo1) || (!s2 && out != lo2) {
                            return false;
                        }
                        let node = mk(
                            Rule::PlusL,
                            Some(principal.clone()),
                            &input,
                            &out,
                            s1 && s2,
                            vec![t1.clone(), t2],
                        );
                        k(me2, out, s1 && s2, node)
                    })
                })
            }
            Some(principal @ Bang(_)) => {
                let f = match &principal {
                    Bang(f) => (**f).clone(),
                    _ => unreachable!(),
                };
                let input = gamma.clone();
                let mut premise = gamma;
                premise.remove_one(&principal);
                let theta2 = if theta.contains(&f) {
                    theta.clone()
                } else {
                    let mut t = (**theta).clone();
                    t.insert(f);
                    Rc::new(t)
                };
                self.neg(&theta2, premise, delta, br, &mut |me, lo, s, t| {
                    let node = mk(Rule::BangL, Some(principal.clone()), &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
            Some(_) => unreachable!("scan picks positive non-atomic formulas"),
            None => self.decide(theta, gamma, delta, br, k),
        }
    }

    fn poll_cancellation(&mut self) -> bool {
        if let Some(flag) = &self.cancel {
            if flag.load(Ordering::Relaxed) {
                self.timed_out = true;
                self.hard_stop = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.timed_out = true;
                self.hard_stop = true;
                return true;
            }
        }
        false
    }

    fn saturated(&mut self, theta: &Rc<Theta>) -> Rc<Theta> {
        if let Some(hit) = self.sat_cache.get(&**theta) {
            return hit.clone();
        }
        let sat = Rc::new(saturate_classical(theta));
        self.sat_cache.insert((**theta).clone(), sat.clone());
        sat
    }

    /// Decide point at a normal sequent. Polls cancellation, applies the
    /// depth and decide budgets, cuts repeated states on the current
    /// branch and then enumerates the choices: DL2, DR, DL1.
    fn decide(
        &mut self,
        theta: &Rc<Theta>,
        gamma: Ctx,
        delta: Option<Formula>,
        br: &Branch,
        k: K,
    ) -> bool {
        if self.poll_cancellation() {
            return true;
        }
        self.decides += 1;
        if let Some(max) = self.limits.max_decides {
            if self.decides > max {
                self.bound_hit = true;
                return false;
            }
        }
        if br.depth >= self.limits.max_depth {
            self.bound_hit = true;
            return false;
        }

        // A state identical to an ancestor cannot contribute anything the
        // ancestor's own expansion does not; prune outright.
        if br.seen_raw(theta, &gamma, &delta) {
            return false;
        }
        // Saturation-equivalent repeats are interderivable but not
        // budget-equivalent, so cutting them counts as a bound.
        let sat_theta = if self.limits.saturate {
            let sat = self.saturated(theta);
            if br.seen_saturated(&sat, &gamma, &delta) {
                self.bound_hit = true;
                return false;
            }
            Some(sat)
        } else {
            None
        };

        let inner = Branch {
            depth: br.depth + 1,
            path: Some(Rc::new(PathEntry {
                theta: theta.clone(),
                sat_theta,
                gamma: gamma.clone(),
                delta: delta.clone(),
                parent: br.path.clone(),
            })),
            counts: br.counts.clone(),
        };
        self.decide_choices(theta, gamma, delta, &inner, k)
    }

    fn decide_choices(
        &mut self,
        theta: &Rc<Theta>,
        gamma: Ctx,
        delta: Option<Formula>,
        br: &Branch,
        k: K,
    ) -> bool {
        // DL2: focus on a negative formula of the linear context.
        let negatives: Vec<Formula> = gamma
            .distinct()
            .filter(|f| is_negative(f))
            .cloned()
            .collect();
        for n in negatives {
            let input = gamma.clone();
            let mut rest = gamma.clone();
            rest.remove_one(&n);
            let principal = n.clone();
            let stop = self.lfoc(theta, rest, n, delta.clone(), br, &mut |me, lo, s, t| {
                let node =
                    mk(Rule::DecideL2, Some(principal.clone()), &input, &lo, s, vec![t]);
                k(me, lo, s, node)
            });
            if stop {
                return true;
            }
        }

        // DR: focus on a positive or atomic succedent.
        if let Some(d) = &delta {
            if d.is_atom() || is_positive(d) {
                let input = gamma.clone();
                let stop = self.rfoc(theta, gamma.clone(), d.clone(), br, &mut |me, lo, s, t| {
                    let node = mk(Rule::DecideR, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                });
                if stop {
                    return true;
                }
            }
        }

        // DL1: copy a non-atomic classical formula, within its budget.
        let candidates: Vec<Formula> = theta
            .iter()
            .filter(|f| !f.is_atom())
            .cloned()
            .collect();
        for na in candidates {
            if br.dl1_used(&na) >= self.limits.decide_bound {
                self.bound_hit = true;
                continue;
            }
            let charged = br.with_dl1_use(&na);
            let input = gamma.clone();
            let principal = na.clone();
            let stop = self.lfoc(
                theta,
                gamma.clone(),
                na,
                delta.clone(),
                &charged,
                &mut |me, lo, s, t| {
                    let node =
                        mk(Rule::DecideL1, Some(principal.clone()), &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                },
            );
            if stop {
                return true;
            }
        }
        false
    }

    /// Left focus `Θ : Γ —F→ Δ`.
    fn lfoc(
        &mut self,
        theta: &Rc<Theta>,
        gamma: Ctx,
        focus: Formula,
        delta: Option<Formula>,
        br: &Branch,
        k: K,
    ) -> bool {
        use Formula::*;
        match focus {
            Limp(f, g) => {
                let (f, g) = (*f, *g);
                let input = gamma.clone();
                self.rfoc(theta, gamma, f, br, &mut |me, lo1, s1, t1| {
                    let g = g.clone();
                    let input = input.clone();
                    me.lfoc(theta, lo1, g, delta.clone(), br, &mut |me2, lo2, s2, t2| {
                        let node = mk(
                            Rule::LimpL,
                            None,
                            &input,
                            &lo2,
                            s1 || s2,
                            vec![t1.clone(), t2],
                        );
                        k(me2, lo2, s1 || s2, node)
                    })
                })
            }
            With(f, g) => {
                let (f, g) = (*f, *g);
                let input = gamma.clone();
                let stop =
                    self.lfoc(theta, gamma.clone(), f, delta.clone(), br, &mut |me, lo, s, t| {
                        let node = mk(Rule::WithL1, None, &input, &lo, s, vec![t]);
                        k(me, lo, s, node)
                    });
                if stop {
                    return true;
                }
                let input = gamma.clone();
                self.lfoc(theta, gamma, g, delta, br, &mut |me, lo, s, t| {
                    let node = mk(Rule::WithL2, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
            Bot => {
                if delta.is_none() {
                    let node = mk(Rule::BotL, None, &gamma, &gamma, false, vec![]);
                    k(self, gamma, false, node)
                } else {
                    false
                }
            }
            Top => false, // no left rule for ⊤
            pos => {
                debug_assert!(pos.is_atom() || is_positive(&pos));
                let input = gamma.clone();
                let before = gamma.count(&pos);
                let mut premise = gamma;
                premise.insert(pos.clone());
                self.neg(theta, premise, delta, br, &mut |me, mut lo, s, t| {
                    if !settle(&mut lo, s, &[(pos.clone(), before)]) {
                        return false;
                    }
                    let node = mk(Rule::ReleaseL, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
        }
    }

    /// Right focus `Θ : Γ ⇓ F`.
    fn rfoc(&mut self, theta: &Rc<Theta>, gamma: Ctx, focus: Formula, br: &Branch, k: K) -> bool {
        use Formula::*;
        match focus {
            Tensor(f, g) => {
                let (f, g) = (*f, *g);
                let input = gamma.clone();
                self.rfoc(theta, gamma, f, br, &mut |me, lo1, s1, t1| {
                    let g = g.clone();
                    let input = input.clone();
                    me.rfoc(theta, lo1, g, br, &mut |me2, lo2, s2, t2| {
                        let node = mk(
                            Rule::TensorR,
                            None,
                            &input,
                            &lo2,
                            s1 || s2,
                            vec![t1.clone(), t2],
                        );
                        k(me2, lo2, s1 || s2, node)
                    })
                })
            }
            Plus(f, g) => {
                let (f, g) = (*f, *g);
                let input = gamma.clone();
                let stop = self.rfoc(theta, gamma.clone(), f, br, &mut |me, lo, s, t| {
                    let node = mk(Rule::PlusR1, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                });
                if stop {
                    return true;
                }
                let input = gamma.clone();
                self.rfoc(theta, gamma, g, br, &mut |me, lo, s, t| {
                    let node = mk(Rule::PlusR2, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
            One => {
                let node = mk(Rule::OneR, None, &gamma, &gamma, false, vec![]);
                k(self, gamma, false, node)
            }
            Bang(f) => {
                // Promotion requires an empty linear context; the premise
                // runs with no resources and everything passes through.
                let mut premise_proof: Option<Raw> = None;
                let stop = self.neg(theta, Ctx::new(), Some(*f), br, &mut |_, _, _, t| {
                    premise_proof = Some(t);
                    true
                });
                if stop && self.hard_stop {
                    return true;
                }
                match premise_proof {
                    Some(t) => {
                        let node = mk(Rule::BangR, None, &gamma, &gamma, false, vec![t]);
                        k(self, gamma, false, node)
                    }
                    None => false,
                }
            }
            Atom(p) => {
                let atom = Formula::Atom(p);
                if gamma.contains(&atom) {
                    let mut leftover = gamma.clone();
                    leftover.remove_one(&atom);
                    let node = Rc::new(RawNode {
                        rule: Rule::InitR,
                        principal: Some(atom.clone()),
                        consumed: [atom.clone()].into_iter().collect(),
                        slack: false,
                        children: vec![],
                    });
                    if k(self, leftover, false, node) {
                        return true;
                    }
                }
                if theta.contains(&atom) {
                    let node = Rc::new(RawNode {
                        rule: Rule::InitR,
                        principal: Some(atom),
                        consumed: Ctx::new(),
                        slack: false,
                        children: vec![],
                    });
                    return k(self, gamma, false, node);
                }
                false
            }
            Zero => false, // no right rule for 0
            neg => {
                debug_assert!(is_negative(&neg));
                let input = gamma.clone();
                self.neg(theta, gamma, Some(neg), br, &mut |me, lo, s, t| {
                    let node = mk(Rule::ReleaseR, None, &input, &lo, s, vec![t]);
                    k(me, lo, s, node)
                })
            }
        }
    }
}

/// Assigns strict contexts to a raw derivation, turning it into a
/// checkable proof object. `gamma` is the multiset this subtree must
/// consume; slack subtrees absorb any surplus.
fn annotate(node: &RawNode, theta: &Theta, gamma: Ctx, goal: Goal) -> ProofTree {
    use Formula::*;

    debug_assert!(
        node.consumed.is_subset(&gamma),
        "assigned context must cover the recorded consumption"
    );
    debug_assert!(
        node.slack || node.consumed == gamma,
        "non-slack subtrees consume their context exactly"
    );

    let conclusion = FocusedState {
        theta: theta.clone(),
        gamma: gamma.clone(),
        goal: goal.clone(),
    };
    let child = |i: usize| -> &RawNode { &node.children[i] };

    let premises: Vec<ProofTree> = match node.rule {
        Rule::TopR | Rule::ZeroL | Rule::OneR | Rule::BotL | Rule::InitR => vec![],
        Rule::TensorL => {
            let principal = node.principal.as_ref().expect("⊗L records its principal");
            let (f, g) = match principal {
                Tensor(f, g) => ((**f).clone(), (**g).clone()),
                _ => unreachable!(),
            };
            let mut sub = gamma.clone();
            sub.remove_one(principal);
            sub.insert(f);
            sub.insert(g);
            vec![annotate(child(0), theta, sub, goal.clone())]
        }
        Rule::OneL => {
            let mut sub = gamma.clone();
            sub.remove_one(&One);
            vec![annotate(child(0), theta, sub, goal.clone())]
        }
        Rule::BotR => vec![annotate(child(0), theta, gamma.clone(), Goal::Neg(None))],
        Rule::LimpR => {
            let Goal::Neg(Some(Limp(f, g))) = &goal else {
                unreachable!("⊸R applies to an implication goal")
            };
            let mut sub = gamma.clone();
            sub.insert((**f).clone());
            vec![annotate(child(0), theta, sub, Goal::Neg(Some((**g).clone())))]
        }
        Rule::WithR => {
            let Goal::Neg(Some(With(f, g))) = &goal else {
                unreachable!("&R applies to a with goal")
            };
            vec![
                annotate(child(0), theta, gamma.clone(), Goal::Neg(Some((**f).clone()))),
                annotate(child(1), theta, gamma.clone(), Goal::Neg(Some((**g).clone()))),
            ]
        }
        Rule::PlusL => {
            let principal = node.principal.as_ref().expect("⊕L records its principal");
            let (f, g) = match principal {
                Plus(f, g) => ((**f).clone(), (**g).clone()),
                _ => unreachable!(),
            };
            let mut base = gamma.clone();
            base.remove_one(principal);
            let mut left = base.clone();
            left.insert(f);
            let mut right = base;
            right.insert(g);
            vec![
                annotate(child(0), theta, left, goal.clone()),
                annotate(child(1), theta, right, goal.clone()),
            ]
        }
        Rule::BangL => {
            let principal = node.principal.as_ref().expect("!L records its principal");
            let f = match principal {
                Bang(f) => (**f).clone(),
                _ => unreachable!(),
            };
            let mut sub = gamma.clone();
            sub.remove_one(principal);
            let mut theta2 = theta.clone();
            theta2.insert(f);
            vec![annotate(child(0), &theta2, sub, goal.clone())]
        }
        Rule::DecideL2 => {
            let n = node.principal.as_ref().expect("DL2 records its focus");
            let Goal::Neg(delta) = &goal else {
                unreachable!("decides happen in the negative phase")
            };
            let mut sub = gamma.clone();
            sub.remove_one(n);
            vec![annotate(
                child(0),
                theta,
                sub,
                Goal::LeftFocus(n.clone(), delta.clone()),
            )]
        }
        Rule::DecideL1 => {
            let na = node.principal.as_ref().expect("DL1 records its focus");
            let Goal::Neg(delta) = &goal else {
                unreachable!("decides happen in the negative phase")
            };
            vec![annotate(
                child(0),
                theta,
                gamma.clone(),
                Goal::LeftFocus(na.clone(), delta.clone()),
            )]
        }
        Rule::DecideR => {
            let Goal::Neg(Some(p)) = &goal else {
                unreachable!("DR needs a succedent")
            };
            vec![annotate(child(0), theta, gamma.clone(), Goal::RightFocus(p.clone()))]
        }
        Rule::TensorR | Rule::LimpL => {
            let (a1, a2) = split_assignment(node, &gamma);
            match (&goal, node.rule) {
                (Goal::RightFocus(Tensor(f, g)), Rule::TensorR) => vec![
                    annotate(child(0), theta, a1, Goal::RightFocus((**f).clone())),
                    annotate(child(1), theta, a2, Goal::RightFocus((**g).clone())),
                ],
                (Goal::LeftFocus(Limp(f, g), delta), Rule::LimpL) => vec![
                    annotate(child(0), theta, a1, Goal::RightFocus((**f).clone())),
                    annotate(
                        child(1),
                        theta,
                        a2,
                        Goal::LeftFocus((**g).clone(), delta.clone()),
                    ),
                ],
                _ => unreachable!("multiplicative rule against mismatched goal"),
            }
        }
        Rule::PlusR1 | Rule::PlusR2 => {
            let Goal::RightFocus(Plus(f, g)) = &goal else {
                unreachable!("⊕R applies under right focus on ⊕")
            };
            let sub = if node.rule == Rule::PlusR1 { f } else { g };
            vec![annotate(child(0), theta, gamma.clone(), Goal::RightFocus((**sub).clone()))]
        }
        Rule::WithL1 | Rule::WithL2 => {
            let Goal::LeftFocus(With(f, g), delta) = &goal else {
                unreachable!("&L applies under left focus on &")
            };
            let sub = if node.rule == Rule::WithL1 { f } else { g };
            vec![annotate(
                child(0),
                theta,
                gamma.clone(),
                Goal::LeftFocus((**sub).clone(), delta.clone()),
            )]
        }
        Rule::BangR => {
            let Goal::RightFocus(Bang(f)) = &goal else {
                unreachable!("!R applies under right focus on !")
            };
            debug_assert!(gamma.is_empty(), "promotion needs an empty linear context");
            vec![annotate(child(0), theta, Ctx::new(), Goal::Neg(Some((**f).clone())))]
        }
        Rule::ReleaseL => {
            let Goal::LeftFocus(p, delta) = &goal else {
                unreachable!("RL applies under left focus")
            };
            let mut sub = gamma.clone();
            sub.insert(p.clone());
            vec![annotate(child(0), theta, sub, Goal::Neg(delta.clone()))]
        }
        Rule::ReleaseR => {
            let Goal::RightFocus(n) = &goal else {
                unreachable!("RR applies under right focus")
            };
            vec![annotate(child(0), theta, gamma.clone(), Goal::Neg(Some(n.clone())))]
        }
    };

    ProofTree {
        rule: node.rule,
        conclusion,
        premises,
    }
}

/// Distributes an assigned context over the two premises of `⊗R`/`⊸L`:
/// each child gets what it consumed, and any surplus goes to a child
/// that reported slack.
fn split_assignment(node: &RawNode, gamma: &Ctx) -> (Ctx, Ctx) {
    let c1 = &node.children[0];
    let c2 = &node.children[1];
    let mut a1 = c1.consumed.clone();
    let mut a2 = c2.consumed.clone();
    let extra = gamma.difference(&a1.union(&a2));
    if !extra.is_empty() {
        if c1.slack {
            a1 = a1.union(&extra);
        } else {
            debug_assert!(c2.slack, "surplus context with no slack premise");
            a2 = a2.union(&extra);
        }
    }
    (a1, a2)
}
