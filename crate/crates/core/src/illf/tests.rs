use std::collections::BTreeSet;

use super::*;
use crate::formula::negate;
use crate::illf::naive::prove_naive;
use crate::multiset::Multiset;

fn a() -> Formula {
    Formula::atom("a")
}

fn b() -> Formula {
    Formula::atom("b")
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn prove_ok(s: &Sequent) -> ProveResult {
    prove(s, &limits()).expect("admissible sequent")
}

#[test]
fn identity_is_provable_and_checkable() {
    let s = Sequent::conclusion(Formula::limp(a(), a()));
    let r = prove_ok(&s);
    let proof = r.proof().expect("identity is provable");
    assert!(check_proof(proof, &s));
}

#[test]
fn relevant_contradiction_is_refuted() {
    // A ⊗ (A ⊸ ⊥) ⊬ B: ⊥ is not 0.
    let s = Sequent::new([Formula::tensor(a(), negate(a()))], b());
    assert!(matches!(prove_ok(&s), ProveResult::NotProvable(_)));
}

#[test]
fn zero_proves_anything() {
    let s = Sequent::new([Formula::Zero], b());
    let r = prove_ok(&s);
    let proof = r.proof().expect("0 on the left closes");
    assert!(proof.iter().any(|n| n.rule == Rule::ZeroL));
    assert!(check_proof(proof, &s));
}

#[test]
fn classical_loop_hits_the_decide_bound() {
    // !A, !(!A ⊸ B) ⊢ 0 grows the linear context forever; the bounded
    // search reports Unknown rather than NotProvable.
    let s = Sequent::new(
        [
            Formula::bang(a()),
            Formula::bang(Formula::limp(Formula::bang(a()), b())),
        ],
        Formula::Zero,
    );
    match prove_ok(&s) {
        ProveResult::Unknown(UnknownReason::BoundHit, _) => {}
        other => panic!("expected a bound hit, got {other:?}"),
    }
}

#[test]
fn timeout_is_reported() {
    let s = Sequent::new(
        [
            Formula::bang(a()),
            Formula::bang(Formula::limp(Formula::bang(a()), b())),
        ],
        Formula::Zero,
    );
    let tight = SearchLimits {
        timeout: Some(std::time::Duration::ZERO),
        ..SearchLimits::default()
    };
    match prove(&s, &tight).unwrap() {
        ProveResult::Unknown(UnknownReason::Timeout, _) => {}
        other => panic!("expected a timeout, got {other:?}"),
    }
}

#[test]
fn non_admissible_input_is_rejected() {
    let s = Sequent::conclusion(Formula::par(a(), b()));
    assert!(matches!(
        prove(&s, &limits()),
        Err(ProveError::NonAdmissibleFormula(_))
    ));
}

#[test]
fn negative_phase_examples() {
    // Θ : {F ⊗ G} → Δ gives one subgoal Θ : {F, G} → Δ (F, G atomic here).
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: [Formula::tensor(a(), b())].into_iter().collect(),
        goal: Goal::Neg(Some(a())),
    };
    let out = negative_phase(&st);
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].gamma, [a(), b()].into_iter().collect());
    assert!(out[0].is_normal());

    // Θ : Γ → ⊤ closes.
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: [a()].into_iter().collect(),
        goal: Goal::Neg(Some(Formula::Top)),
    };
    assert!(negative_phase(&st).is_empty());

    // Θ : {!F} → Δ stores F.
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: [Formula::bang(a())].into_iter().collect(),
        goal: Goal::Neg(Some(b())),
    };
    let out = negative_phase(&st);
    assert_eq!(out.len(), 1);
    assert!(out[0].gamma.is_empty());
    assert!(out[0].theta.contains(&a()));
}

#[test]
fn decide_examples() {
    // classical !A ⊸ B is a DL1 candidate
    let st = FocusedState {
        theta: [Formula::limp(Formula::bang(a()), b())].into_iter().collect(),
        gamma: Multiset::new(),
        goal: Goal::Neg(Some(b())),
    };
    let steps = decide(&st);
    assert!(steps.iter().any(|(r, _)| *r == Rule::DecideL1));

    // a negative linear formula is a DL2 candidate
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: [Formula::with(a(), b())].into_iter().collect(),
        goal: Goal::Neg(None),
    };
    let steps = decide(&st);
    assert!(steps.iter().any(|(r, _)| *r == Rule::DecideL2));

    // an atomic succedent is a DR candidate (positive bias)
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: Multiset::new(),
        goal: Goal::Neg(Some(a())),
    };
    let steps = decide(&st);
    assert!(steps.iter().any(|(r, _)| *r == Rule::DecideR));

    // ordering: DL2 before DR before DL1
    let st = FocusedState {
        theta: [Formula::limp(a(), b())].into_iter().collect(),
        gamma: [Formula::with(a(), b())].into_iter().collect(),
        goal: Goal::Neg(Some(a())),
    };
    let rules: Vec<Rule> = decide(&st).into_iter().map(|(r, _)| r).collect();
    assert_eq!(rules, vec![Rule::DecideL2, Rule::DecideR, Rule::DecideL1]);
}

#[test]
fn positive_step_examples() {
    // Θ = {p} : {} ⇓ p closes by IR
    let st = FocusedState {
        theta: [a()].into_iter().collect(),
        gamma: Multiset::new(),
        goal: Goal::RightFocus(a()),
    };
    let steps = positive_step(&st);
    assert_eq!(steps, vec![(Rule::InitR, vec![])]);

    // Θ : {} ⇓ 1 closes by 1R
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: Multiset::new(),
        goal: Goal::RightFocus(Formula::One),
    };
    assert_eq!(positive_step(&st), vec![(Rule::OneR, vec![])]);

    // Θ : Γ ⇓ !F with Γ nonempty fails
    let st = FocusedState {
        theta: BTreeSet::new(),
        gamma: [a()].into_iter().collect(),
        goal: Goal::RightFocus(Formula::bang(b())),
    };
    assert!(positive_step(&st).is_empty());
}

/// Resource threading leaves the uniquely-determined splits in the proof
/// object.
#[test]
fn tensor_split_assignments() {
    let s = Sequent::new([a(), b()], Formula::tensor(a(), b()));
    let r = prove_ok(&s);
    let proof = r.proof().expect("provable");
    assert!(check_proof(proof, &s));
    let tensor_node = proof
        .iter()
        .find(|n| n.rule == Rule::TensorR)
        .expect("⊗R in the proof");
    assert_eq!(tensor_node.premises[0].conclusion.gamma, [a()].into_iter().collect());
    assert_eq!(tensor_node.premises[1].conclusion.gamma, [b()].into_iter().collect());

    // 1 ⊗ A from {A}: the unit consumes nothing.
    let s = Sequent::new([a()], Formula::tensor(Formula::One, a()));
    let r = prove_ok(&s);
    let proof = r.proof().expect("provable");
    assert!(check_proof(proof, &s));
    let tensor_node = proof
        .iter()
        .find(|n| n.rule == Rule::TensorR)
        .expect("⊗R in the proof");
    assert!(tensor_node.premises[0].conclusion.gamma.is_empty());
    assert_eq!(tensor_node.premises[1].conclusion.gamma, [a()].into_iter().collect());
}

/// Additive premises must consume the same resources.
#[test]
fn with_premises_share_context() {
    let s = Sequent::new(
        [a(), b()],
        Formula::with(Formula::tensor(a(), b()), Formula::tensor(b(), a())),
    );
    let r = prove_ok(&s);
    let proof = r.proof().expect("provable");
    assert!(check_proof(proof, &s));
    let with_node = proof.iter().find(|n| n.rule == Rule::WithR).expect("&R");
    let both: Multiset<Formula> = [a(), b()].into_iter().collect();
    assert_eq!(with_node.premises[0].conclusion.gamma, both);
    assert_eq!(with_node.premises[1].conclusion.gamma, both);
}

#[test]
fn top_absorbs_leftovers() {
    // A, B ⊢ A ⊗ ⊤: ⊤ must absorb B.
    let s = Sequent::new([a(), b()], Formula::tensor(a(), Formula::Top));
    let r = prove_ok(&s);
    let proof = r.proof().expect("provable");
    assert!(check_proof(proof, &s));
    // ⊤ alone on the left is inert: A, ⊤ ⊬ A.
    let s = Sequent::new([a(), Formula::Top], a());
    assert!(matches!(prove_ok(&s), ProveResult::NotProvable(_)));
}

#[test]
fn saturate_classical_examples() {
    let theta: BTreeSet<Formula> = [Formula::with(a(), b())].into_iter().collect();
    let sat = saturate_classical(&theta);
    assert_eq!(sat, [a(), b()].into_iter().collect());

    let theta: BTreeSet<Formula> = [a(), Formula::limp(a(), b())].into_iter().collect();
    let sat = saturate_classical(&theta);
    assert_eq!(
        sat,
        [a(), b(), Formula::limp(a(), b())].into_iter().collect()
    );

    assert_eq!(saturate_classical(&BTreeSet::new()), BTreeSet::new());

    // a negative component blocks the & split
    let theta: BTreeSet<Formula> =
        [Formula::with(a(), Formula::limp(a(), b()))].into_iter().collect();
    assert_eq!(saturate_classical(&theta), theta);
}

#[test]
fn corrupted_proof_fails_the_checker() {
    let s = Sequent::conclusion(Formula::limp(a(), a()));
    let r = prove_ok(&s);
    let mut proof = r.proof().expect("provable").clone();
    // swap the axiom's atom
    fn corrupt(t: &mut ProofTree) {
        if t.rule == Rule::InitR {
            t.conclusion.goal = Goal::RightFocus(Formula::atom("q"));
        }
        for p in &mut t.premises {
            corrupt(p);
        }
    }
    corrupt(&mut proof);
    assert!(!check_proof(&proof, &s));
}

#[test]
fn bang_with_tensor_equivalence_sample() {
    let f = Formula::limp(a(), b());
    let g = Formula::with(a(), b());
    let lhs = Formula::bang(Formula::with(f.clone(), g.clone()));
    let rhs = Formula::tensor(Formula::bang(f), Formula::bang(g));
    for (ante, succ) in [(lhs.clone(), rhs.clone()), (rhs, lhs)] {
        let s = Sequent::new([ante], succ);
        let r = prove_ok(&s);
        let proof = r.proof().expect("both directions provable");
        assert!(check_proof(proof, &s));
    }
}

#[test]
fn naive_oracle_agreement_samples() {
    let cases = [
        Sequent::conclusion(Formula::limp(a(), a())),
        Sequent::new([a(), b()], Formula::tensor(a(), b())),
        Sequent::new([Formula::plus(a(), b())], Formula::plus(b(), a())),
        Sequent::new([a()], Formula::with(a(), a())),
        Sequent::new([a(), a()], Formula::tensor(a(), a())),
        Sequent::new([a()], b()),
        Sequent::new([Formula::limp(a(), b()), a()], b()),
        Sequent::conclusion(Formula::limp(Formula::tensor(a(), b()), Formula::tensor(b(), a()))),
        Sequent::new([Formula::Top], a()),
        Sequent::new([Formula::Bot], Formula::Bot),
    ];
    for s in cases {
        let focused = prove_ok(&s).is_provable();
        let naive = prove_naive(&s).expect("bang-free");
        assert_eq!(focused, naive, "disagreement on {s}");
    }
}

#[test]
fn heuristic_on_off_agreement_samples() {
    let saturated = SearchLimits::default();
    let plain = SearchLimits {
        saturate: false,
        ..SearchLimits::default()
    };
    let cases = [
        Sequent::new(
            [Formula::bang(Formula::with(a(), b()))],
            Formula::tensor(Formula::bang(a()), Formula::bang(b())),
        ),
        Sequent::new([Formula::bang(a()), Formula::bang(Formula::limp(a(), b()))], b()),
        Sequent::new([Formula::bang(Formula::with(a(), b()))], Formula::Zero),
    ];
    for s in cases {
        let with = prove(&s, &saturated).unwrap();
        let without = prove(&s, &plain).unwrap();
        let definitive = |r: &ProveResult| !matches!(r, ProveResult::Unknown(..));
        if definitive(&with) && definitive(&without) {
            assert_eq!(with.is_provable(), without.is_provable(), "on {s}");
        }
    }
}

#[test]
fn proof_trees_report_their_size() {
    let s = Sequent::conclusion(Formula::limp(a(), a()));
    let proof = prove_ok(&s).proof().unwrap().clone();
    // ⊸R, DR, IR plus the decide embedding
    assert!(proof.len() >= 3, "{}", proof.len());
}
