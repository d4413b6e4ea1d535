//! Proof rendering to LaTeX inference trees (`\infer` of the `proof`
//! package, colors via `xcolor`).
//!
//! Each maximal run of negative-phase work is condensed into a single
//! `★` step, decide and release transitions that change nothing visible
//! are silent, and classical-context formulas are set in blue. The
//! result mirrors how focused derivations are usually presented: only
//! decisions, positive steps and axioms remain visible.

use crate::formula::Formula;
use crate::illf::{FocusedState, Goal, ProofTree, Rule};

/// Rules whose application constitutes visible negative-phase work.
fn is_neg_work(rule: Rule) -> bool {
    matches!(
        rule,
        Rule::TensorL
            | Rule::LimpR
            | Rule::OneL
            | Rule::BotR
            | Rule::BangL
            | Rule::WithR
            | Rule::PlusL
    )
}

/// Rules that are collapsed into the surrounding segment.
fn is_collapsible(rule: Rule) -> bool {
    is_neg_work(rule)
        || matches!(
            rule,
            Rule::DecideL2 | Rule::DecideR | Rule::ReleaseL | Rule::ReleaseR
        )
}

/// Renders a checked proof as a nested `\infer` tree.
pub fn render_latex_proof(tree: &ProofTree) -> String {
    render_node(tree)
}

fn render_node(node: &ProofTree) -> String {
    if is_collapsible(node.rule) {
        let mut frontier = Vec::new();
        let mut work = false;
        collect_segment(node, &mut frontier, &mut work);
        let premises: Vec<String> = frontier.iter().map(|n| render_node(n)).collect();
        if work {
            format!(
                "\\infer[\\star]{{{}}}{{{}}}",
                latex_state(&node.conclusion),
                premises.join(" & ")
            )
        } else {
            // only silent transitions: splice the single premise
            debug_assert_eq!(premises.len(), 1);
            premises.into_iter().next().expect("one premise")
        }
    } else {
        let premises: Vec<String> = node.premises.iter().map(render_node).collect();
        format!(
            "\\infer[{}]{{{}}}{{{}}}",
            rule_label(node.rule),
            latex_state(&node.conclusion),
            premises.join(" & ")
        )
    }
}

fn collect_segment<'a>(node: &'a ProofTree, frontier: &mut Vec<&'a ProofTree>, work: &mut bool) {
    if is_collapsible(node.rule) {
        *work |= is_neg_work(node.rule);
        for p in &node.premises {
            collect_segment(p, frontier, work);
        }
    } else {
        frontier.push(node);
    }
}

fn rule_label(rule: Rule) -> &'static str {
    use Rule::*;
    match rule {
        TopR => "\\top_R",
        ZeroL => "\\mathbf{0}_L",
        TensorR => "\\otimes_R",
        LimpL => "\\multimap_L",
        PlusR1 => "\\oplus_{R_1}",
        PlusR2 => "\\oplus_{R_2}",
        WithL1 => "{\\&}_{L_1}",
        WithL2 => "{\\&}_{L_2}",
        OneR => "\\mathbf{1}_R",
        BotL => "\\bot_L",
        BangR => "!_R",
        InitR => "I_R",
        DecideL1 => "D_{L1}",
        // collapsed rules never reach the label printer
        TensorL | LimpR | OneL | BotR | BangL | WithR | PlusL | DecideL2 | DecideR
        | ReleaseL | ReleaseR => "\\star",
    }
}

/// `Θ : Γ ⊢ Δ` with the classical context in blue; a focused formula is
/// shown inline in the linear context (left focus) or as the succedent
/// (right focus).
fn latex_state(st: &FocusedState) -> String {
    let theta = if st.theta.is_empty() {
        "\\cdot".to_string()
    } else {
        st.theta
            .iter()
            .map(|f| format!("\\textcolor{{blue}}{{{}}}", latex_formula(f, 0)))
            .collect::<Vec<_>>()
            .join(", ")
    };

    let mut linear: Vec<String> = st.gamma.iter().map(|f| latex_formula(f, 0)).collect();
    let succedent = match &st.goal {
        Goal::Neg(Some(d)) => latex_formula(d, 0),
        Goal::Neg(None) => "\\cdot".to_string(),
        Goal::RightFocus(d) => latex_formula(d, 0),
        Goal::LeftFocus(focus, delta) => {
            linear.push(latex_formula(focus, 0));
            match delta {
                Some(d) => latex_formula(d, 0),
                None => "\\cdot".to_string(),
            }
        }
    };
    let gamma = if linear.is_empty() {
        "\\cdot".to_string()
    } else {
        linear.join(", ")
    };
    format!("{theta} : {gamma} \\vdash {succedent}")
}

/// Formula in LaTeX math, with the same precedence scheme as the textual
/// syntax. `⅋` needs `\parr` (stmaryrd); it cannot occur in checked
/// proofs.
pub fn latex_formula(f: &Formula, min: u8) -> String {
    use Formula::*;
    let level = match f {
        Atom(_) | One | Zero | Top | Bot => 7,
        Bang(_) | Quest(_) => 6,
        Tensor(..) => 5,
        With(..) => 4,
        Plus(..) => 3,
        Par(..) => 2,
        Limp(..) => 1,
    };
    let body = match f {
        Atom(p) => p.clone(),
        One => "\\mathbf{1}".to_string(),
        Zero => "\\mathbf{0}".to_string(),
        Top => "\\top".to_string(),
        Bot => "\\bot".to_string(),
        Bang(a) => format!("\\mathop{{!}}{}", latex_formula(a, 6)),
        Quest(a) => format!("\\mathop{{?}}{}", latex_formula(a, 6)),
        Tensor(a, b) => format!(
            "{} \\otimes {}",
            latex_formula(a, 5),
            latex_formula(b, 6)
        ),
        With(a, b) => format!(
            "{} \\mathbin{{\\&}} {}",
            latex_formula(a, 4),
            latex_formula(b, 5)
        ),
        Plus(a, b) => format!("{} \\oplus {}", latex_formula(a, 3), latex_formula(b, 4)),
        Par(a, b) => format!("{} \\parr {}", latex_formula(a, 2), latex_formula(b, 3)),
        Limp(a, b) => format!(
            "{} \\multimap {}",
            latex_formula(a, 2),
            latex_formula(b, 1)
        ),
    };
    if level < min {
        format!("({body})")
    } else {
        body
    }
}
