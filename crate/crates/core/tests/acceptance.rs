//! Acceptance suite: one test per ship criterion, each printing a
//! pass/fail line (visible with `cargo test --test acceptance --
//! --nocapture`).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use illtp::bench::{
    emit_report, render_latex_proof, run_suite_problems, GroupBy, ReportFormat, UnknownCause,
    Verdict,
};
use illtp::format::{parse_problem, serialize_problem, ProblemStatus};
use illtp::formula::{Formula, Sequent};
use illtp::illf::{
    check_proof, naive::prove_naive, prove, ProofTree, ProveResult, Rule, SearchLimits,
};
use illtp::kleene::{generate_library, kleene_corpus};
use illtp::oracle::prove_il;
use illtp::petri::{
    encode_reachability, reachable_bfs, simulate, Marking, PetriNet, ReachProblem, Reachability,
    Transition,
};
use illtp::translate::{trans_sequent, TranslationKind};

fn report(criterion: u32, desc: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("[PASS] criterion {criterion}: {desc} ({detail})"),
        Err(why) => {
            println!("[FAIL] criterion {criterion}: {desc} ({why})");
            panic!("criterion {criterion} failed: {why}");
        }
    }
}

fn default_limits() -> SearchLimits {
    SearchLimits::default().with_timeout(Duration::from_secs(60))
}

/// 271 problems: 61 sequents under four translations plus 27 alternative
/// encodings, generated and written out in under five seconds.
#[test]
fn criterion_01_corpus_generation() {
    let started = Instant::now();
    let dir = tempfile::tempdir().expect("tempdir");
    let library = generate_library(&kleene_corpus(), &TranslationKind::ALL);
    for p in &library {
        std::fs::write(dir.path().join(format!("{}.p", p.name)), serialize_problem(p))
            .expect("write problem");
    }
    let elapsed = started.elapsed();
    let written = std::fs::read_dir(dir.path()).unwrap().count();

    let translated = library.iter().filter(|p| !p.name.contains("alt")).count();
    let alternatives = library.len() - translated;
    let result = if library.len() != 271 {
        Err(format!("expected 271 problems, generated {}", library.len()))
    } else if translated != 244 || alternatives != 27 {
        Err(format!("expected 244 + 27, got {translated} + {alternatives}"))
    } else if written != 271 {
        Err(format!("expected 271 files, wrote {written}"))
    } else if elapsed >= Duration::from_secs(5) {
        Err(format!("took {elapsed:?}, budget 5 s"))
    } else {
        Ok(format!("271 = 244 + 27 problems in {elapsed:?}"))
    };
    report(1, "corpus generation emits exactly 271 problems", result);
}

/// The intuitionistic oracle proves all 61 source sequents.
#[test]
fn criterion_02_il_oracle_proves_the_corpus() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for entry in kleene_corpus() {
        if !prove_il(&entry.sequent).is_provable() {
            failures.push(entry.index);
        }
    }
    let elapsed = started.elapsed();
    let result = if !failures.is_empty() {
        Err(format!("unprovable items: {failures:?}"))
    } else if elapsed >= Duration::from_secs(30) {
        Err(format!("took {elapsed:?}, budget 30 s"))
    } else {
        Ok(format!("61/61 provable in {elapsed:?}"))
    };
    report(2, "intuitionistic oracle proves all 61 sequents", result);
}

/// The multiplicative images split exactly 39 provable / 22 refuted with
/// no unknowns: the bang-free fragment terminates.
#[test]
fn criterion_03_multiplicative_statuses() {
    let started = Instant::now();
    let limits = default_limits();
    let mut provable = 0;
    let mut refuted = 0;
    let mut unknown = 0;
    let mut wrong = Vec::new();
    for entry in kleene_corpus() {
        let sequent = trans_sequent(&entry.sequent, TranslationKind::Mult);
        let verdict = prove(&sequent, &limits).expect("admissible");
        let expected_provable = entry.mult_status == ProblemStatus::Theorem;
        match verdict {
            ProveResult::Provable(tree, _) => {
                provable += 1;
                if !check_proof(&tree, &sequent) || !expected_provable {
                    wrong.push(entry.index);
                }
            }
            ProveResult::NotProvable(_) => {
                refuted += 1;
                if expected_provable {
                    wrong.push(entry.index);
                }
            }
            ProveResult::Unknown(..) => unknown += 1,
        }
    }
    let elapsed = started.elapsed();
    let result = if unknown > 0 {
        Err(format!("{unknown} unknown verdicts"))
    } else if (provable, refuted) != (39, 22) {
        Err(format!("got {provable} provable / {refuted} refuted, wanted 39/22"))
    } else if !wrong.is_empty() {
        Err(format!("status mismatches at items {wrong:?}"))
    } else if elapsed >= Duration::from_secs(120) {
        Err(format!("took {elapsed:?}, budget 2 min"))
    } else {
        Ok(format!("39 provable / 22 refuted / 0 unknown in {elapsed:?}"))
    };
    report(3, "multiplicative statuses are 39/22 with no unknowns", result);
}

/// The three sound translations keep all 61 sequents provable, with
/// checkable proofs.
#[test]
fn criterion_04_preservation_under_sound_translations() {
    let started = Instant::now();
    let limits = default_limits();
    let kinds = [
        TranslationKind::CallByName,
        TranslationKind::CallByValue,
        TranslationKind::ZeroOne,
    ];
    let mut failures = Vec::new();
    for entry in kleene_corpus() {
        for kind in kinds {
            let sequent = trans_sequent(&entry.sequent, kind);
            match prove(&sequent, &limits).expect("admissible") {
                ProveResult::Provable(tree, _) => {
                    if !check_proof(&tree, &sequent) {
                        failures.push(format!("{}-{} (bad proof)", entry.index, kind));
                    }
                }
                other => failures.push(format!("{}-{} ({other:?})", entry.index, kind)),
            }
        }
    }
    let elapsed = started.elapsed();
    let result = if failures.is_empty() {
        Ok(format!("183 translated sequents provable in {elapsed:?}"))
    } else {
        Err(format!("failures: {failures:?}"))
    };
    report(4, "cbn/cbv/01 translations preserve provability", result);
}

/// All 27 alternative encodings are provable with checkable proofs.
#[test]
fn criterion_05_alternative_encodings_provable() {
    let limits = default_limits();
    let mut checked = 0;
    let mut failures = Vec::new();
    for entry in kleene_corpus() {
        for (i, alt) in entry.alternatives.iter().enumerate() {
            match prove(alt, &limits).expect("admissible") {
                ProveResult::Provable(tree, _) if check_proof(&tree, alt) => checked += 1,
                other => failures.push(format!(
                    "item {} alt {} -> {:?}",
                    entry.index,
                    i + 1,
                    other
                )),
            }
        }
    }
    let result = if failures.is_empty() && checked == 27 {
        Ok(format!("{checked}/27 provable with verified proofs"))
    } else {
        Err(format!("checked {checked}, failures: {failures:?}"))
    };
    report(5, "all 27 alternative encodings are provable", result);
}

/// The transitivity-of-implication sequent: provable under all four
/// translations, with an empty classical context throughout the
/// multiplicative proof and a star-condensed rendering.
#[test]
fn criterion_06_transitivity_under_all_translations() {
    use illtp::il::{ILFormula, ILSequent};
    let (a, b, c) = (
        ILFormula::atom("a"),
        ILFormula::atom("b"),
        ILFormula::atom("c"),
    );
    let source = ILSequent::new(
        [
            ILFormula::imp(a.clone(), b.clone()),
            ILFormula::imp(b.clone(), c.clone()),
        ],
        ILFormula::imp(a, c),
    );
    let limits = default_limits();
    let mut failures = Vec::new();
    let mut mult_rendering = String::new();
    for kind in TranslationKind::ALL {
        let sequent = trans_sequent(&source, kind);
        match prove(&sequent, &limits).expect("admissible") {
            ProveResult::Provable(tree, _) => {
                if !check_proof(&tree, &sequent) {
                    failures.push(format!("{kind}: bad proof"));
                }
                if kind == TranslationKind::Mult {
                    if let Some(node) = tree.iter().find(|n| !n.conclusion.theta.is_empty()) {
                        failures.push(format!(
                            "mult proof has a nonempty classical context at {}",
                            node.conclusion
                        ));
                    }
                    mult_rendering = render_latex_proof(&tree);
                }
            }
            other => failures.push(format!("{kind}: {other:?}")),
        }
    }
    if !mult_rendering.contains("\\infer[\\star]") {
        failures.push("rendering lacks a star step".into());
    }
    // the root shows the untranslated shape of the sequent
    if !mult_rendering.contains("\\vdash a \\multimap c") {
        failures.push(format!("unexpected rendering root: {mult_rendering}"));
    }
    let result = if failures.is_empty() {
        Ok("provable under mult/cbn/cbv/01; star-condensed rendering".into())
    } else {
        Err(failures.join("; "))
    };
    report(6, "transitivity sequent behaves as published", result);
}

fn gen_formula(rng: &mut ChaCha8Rng, depth: usize, budget: &mut usize, allow_bang: bool) -> Formula {
    *budget = budget.saturating_sub(1);
    if depth == 0 || *budget == 0 {
        return match rng.random_range(0..7) {
            0 => Formula::atom("a"),
            1 => Formula::atom("b"),
            2 => Formula::atom("c"),
            3 => Formula::One,
            4 => Formula::Top,
            5 => Formula::Bot,
            _ => Formula::Zero,
        };
    }
    let top = if allow_bang { 5 } else { 4 };
    match rng.random_range(0..=top) {
        0 => Formula::tensor(
            gen_formula(rng, depth - 1, budget, allow_bang),
            gen_formula(rng, depth - 1, budget, allow_bang),
        ),
        1 => Formula::with(
            gen_formula(rng, depth - 1, budget, allow_bang),
            gen_formula(rng, depth - 1, budget, allow_bang),
        ),
        2 => Formula::plus(
            gen_formula(rng, depth - 1, budget, allow_bang),
            gen_formula(rng, depth - 1, budget, allow_bang),
        ),
        3 => Formula::limp(
            gen_formula(rng, depth - 1, budget, allow_bang),
            gen_formula(rng, depth - 1, budget, allow_bang),
        ),
        4 => gen_formula(rng, depth - 1, budget, allow_bang), // skew toward smaller terms
        _ => Formula::bang(gen_formula(rng, depth - 1, budget, allow_bang)),
    }
}

fn gen_sequent(rng: &mut ChaCha8Rng, allow_bang: bool) -> Sequent {
    let n = rng.random_range(0..=2);
    let mut budget = 12usize;
    let antecedent: Vec<Formula> = (0..n)
        .map(|_| gen_formula(rng, 4, &mut budget, allow_bang))
        .collect();
    let succedent = gen_formula(rng, 6, &mut budget, allow_bang);
    Sequent::new(antecedent, succedent)
}

fn decide_nodes(tree: &ProofTree) -> impl Iterator<Item = &ProofTree> {
    tree.iter().filter(|n| {
        matches!(n.rule, Rule::DecideL1 | Rule::DecideL2 | Rule::DecideR)
    })
}

/// 500 random admissible sequents: decide nodes in returned proofs are
/// normal, and on the bang-free subset the focused engine agrees with the
/// unfocused brute-force oracle on every verdict.
#[test]
fn criterion_07_focusing_invariants_and_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1107);
    let limits = SearchLimits::default().with_timeout(Duration::from_secs(10));
    let mut bang_free = 0;
    let mut provable = 0;
    let mut failures = Vec::new();

    for i in 0..500 {
        let sequent = gen_sequent(&mut rng, i % 2 == 0);
        let result = prove(&sequent, &limits).expect("admissible");
        if let ProveResult::Provable(tree, _) = &result {
            provable += 1;
            if !check_proof(tree, &sequent) {
                failures.push(format!("#{i}: proof fails checking on {sequent}"));
            }
            if let Some(node) = decide_nodes(tree).find(|n| !n.conclusion.is_normal()) {
                failures.push(format!("#{i}: non-normal decide node {}", node.conclusion));
            }
        }
        let is_bang_free = sequent
            .antecedent
            .iter()
            .chain(sequent.succedent.iter())
            .all(|f| f.is_exponential_free());
        if is_bang_free {
            bang_free += 1;
            let reference = prove_naive(&sequent).expect("bang-free");
            let focused = match &result {
                ProveResult::Provable(..) => true,
                ProveResult::NotProvable(_) => false,
                ProveResult::Unknown(r, _) => {
                    failures.push(format!("#{i}: bang-free search was cut: {r:?}"));
                    continue;
                }
            };
            if focused != reference {
                failures.push(format!(
                    "#{i}: focused={focused} naive={reference} on {sequent}"
                ));
            }
        }
        if failures.len() > 5 {
            break;
        }
    }

    let result = if failures.is_empty() {
        Ok(format!(
            "500 sequents, {provable} provable, {bang_free} bang-free all agreeing"
        ))
    } else {
        Err(failures.join("; "))
    };
    report(7, "focusing normality and naive-oracle agreement", result);
}

/// Both directions of the promotion distribution over `&` are provable
/// for 100 random formula pairs.
#[test]
fn criterion_08_bang_with_tensor_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1108);
    let limits = SearchLimits::default().with_timeout(Duration::from_secs(30));
    let mut failures = Vec::new();
    for i in 0..100 {
        let mut budget = 6usize;
        let f = gen_formula(&mut rng, 3, &mut budget, true);
        let mut budget = 6usize;
        let g = gen_formula(&mut rng, 3, &mut budget, true);
        let banged_with = Formula::bang(Formula::with(f.clone(), g.clone()));
        let tensor_of_bangs = Formula::tensor(Formula::bang(f), Formula::bang(g));
        for (ante, succ, dir) in [
            (banged_with.clone(), tensor_of_bangs.clone(), "->"),
            (tensor_of_bangs, banged_with, "<-"),
        ] {
            let sequent = Sequent::new([ante], succ);
            match prove(&sequent, &limits).expect("admissible") {
                ProveResult::Provable(tree, _) => {
                    if !check_proof(&tree, &sequent) {
                        failures.push(format!("#{i}{dir}: proof fails checking"));
                    }
                }
                other => failures.push(format!("#{i}{dir}: {other:?} on {sequent}")),
            }
        }
        if !failures.is_empty() {
            break;
        }
    }
    let result = if failures.is_empty() {
        Ok("100 pairs, both directions provable".into())
    } else {
        Err(failures.join("; "))
    };
    report(8, "!(F & G) is interderivable with !F ⊗ !G", result);
}

fn gen_net(rng: &mut ChaCha8Rng, index: usize) -> (PetriNet, Marking) {
    let nplaces = rng.random_range(1..=5usize);
    let places: Vec<String> = (1..=nplaces).map(|i| format!("s{i}")).collect();
    let ntrans = rng.random_range(1..=4usize);
    let mut any_place = |rng: &mut ChaCha8Rng| places[rng.random_range(0..nplaces)].clone();
    let transitions = (0..ntrans)
        .map(|t| {
            let pre_size = rng.random_range(0..=2usize);
            let post_size = rng.random_range(0..=2usize);
            Transition {
                id: format!("t{t}"),
                preset: (0..pre_size).map(|_| any_place(rng)).collect(),
                postset: (0..post_size).map(|_| any_place(rng)).collect(),
            }
        })
        .collect();
    let net = PetriNet::new(format!("rand{index}"), places.clone(), transitions)
        .expect("places declared");
    let tokens = rng.random_range(0..=3usize);
    let m0: Marking = (0..tokens)
        .map(|_| places[rng.random_range(0..nplaces)].clone())
        .collect();
    (net, m0)
}

/// Simulated markings are provably reachable through the encoding, and
/// the prover never contradicts the explicit-state oracle.
#[test]
fn criterion_09_petri_encoding_soundness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1109);
    let limits = SearchLimits {
        timeout: Some(Duration::from_secs(30)),
        decide_bound: 32,
        ..SearchLimits::default()
    };
    let mut failures = Vec::new();
    let mut proved = 0;
    let mut agreements = 0;

    for i in 0..100 {
        let (net, m0) = gen_net(&mut rng, i);
        for steps in [1usize, 5, 10] {
            let outcome = simulate(&net, &m0, steps, 0xBEEF + i as u64);
            let problem = ReachProblem {
                net: net.clone(),
                from: m0.clone(),
                to: outcome.marking.clone(),
            };
            let encoded = encode_reachability(&problem);
            let sequent = encoded.to_sequent();
            let verdict = prove(&sequent, &limits).expect("admissible");
            match &verdict {
                ProveResult::Provable(tree, _) => {
                    proved += 1;
                    if !check_proof(tree, &sequent) {
                        failures.push(format!("net {i}/{steps}: proof fails checking"));
                    }
                }
                other => {
                    failures.push(format!("net {i}/{steps}: simulated marking {other:?}"));
                }
            }
            // two-sided agreement, including randomly perturbed targets
            let bfs = reachable_bfs(&problem, 20_000);
            if let Err(e) = agree(&verdict, bfs) {
                failures.push(format!("net {i}/{steps}: {e}"));
            } else {
                agreements += 1;
            }

            let random_target: Marking = (0..rng.random_range(0..=3usize))
                .map(|_| {
                    let places: Vec<&String> = net.places.iter().collect();
                    places[rng.random_range(0..places.len())].clone()
                })
                .collect();
            let perturbed = ReachProblem {
                net: net.clone(),
                from: m0.clone(),
                to: random_target,
            };
            let verdict = prove(&encode_reachability(&perturbed).to_sequent(), &limits)
                .expect("admissible");
            let bfs = reachable_bfs(&perturbed, 20_000);
            if let Err(e) = agree(&verdict, bfs) {
                failures.push(format!("net {i}/{steps} perturbed: {e}"));
            } else {
                agreements += 1;
            }
        }
        if failures.len() > 5 {
            break;
        }
    }
    let elapsed = started.elapsed();
    let result = if !failures.is_empty() {
        Err(failures.join("; "))
    } else if elapsed >= Duration::from_secs(600) {
        Err(format!("took {elapsed:?}, budget 10 min"))
    } else {
        Ok(format!(
            "{proved} simulated markings proved, {agreements} oracle agreements in {elapsed:?}"
        ))
    };
    report(9, "reachability encoding is sound and matches BFS", result);
}

fn agree(verdict: &ProveResult, bfs: Reachability) -> Result<(), String> {
    match (verdict, bfs) {
        (ProveResult::Provable(..), Reachability::Unreachable) => {
            Err("prover says reachable, BFS says unreachable".into())
        }
        (ProveResult::NotProvable(_), Reachability::Reachable) => {
            Err("prover says unreachable, BFS says reachable".into())
        }
        _ => Ok(()),
    }
}

/// Serialization round-trips over the generated library and 1000 random
/// formulas drawn from the full grammar.
#[test]
fn criterion_10_format_round_trip() {
    let library = generate_library(&kleene_corpus(), &TranslationKind::ALL);
    let mut failures = Vec::new();
    for p in &library {
        let text = serialize_problem(p);
        match parse_problem(&text) {
            Ok(back) => {
                if !back.structurally_eq(p) {
                    failures.push(format!("{} round-trips to a different problem", p.name));
                }
            }
            Err(e) => failures.push(format!("{} fails reparsing: {e}", p.name)),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x1110);
    for i in 0..1000 {
        let mut budget = 40usize;
        let formula = gen_full_formula(&mut rng, 8, &mut budget);
        let text = format!("fof(c, conjecture, ({formula})).");
        match parse_problem(&text) {
            Ok(p) => {
                if p.conjecture.1 != formula {
                    failures.push(format!("#{i}: `{formula}` reparses differently"));
                }
            }
            Err(e) => failures.push(format!("#{i}: `{formula}` fails parsing: {e}")),
        }
        if failures.len() > 5 {
            break;
        }
    }
    let result = if failures.is_empty() {
        Ok("271 library problems + 1000 random formulas".into())
    } else {
        Err(failures.join("; "))
    };
    report(10, "parse ∘ serialize is the identity", result);
}

fn gen_full_formula(rng: &mut ChaCha8Rng, depth: usize, budget: &mut usize) -> Formula {
    *budget = budget.saturating_sub(1);
    if depth == 0 || *budget == 0 {
        return match rng.random_range(0..6) {
            0 => Formula::atom("a"),
            1 => Formula::atom("b2"),
            2 => Formula::One,
            3 => Formula::Zero,
            4 => Formula::Top,
            _ => Formula::Bot,
        };
    }
    match rng.random_range(0..8) {
        0 => Formula::tensor(
            gen_full_formula(rng, depth - 1, budget),
            gen_full_formula(rng, depth - 1, budget),
        ),
        1 => Formula::par(
            gen_full_formula(rng, depth - 1, budget),
            gen_full_formula(rng, depth - 1, budget),
        ),
        2 => Formula::with(
            gen_full_formula(rng, depth - 1, budget),
            gen_full_formula(rng, depth - 1, budget),
        ),
        3 => Formula::plus(
            gen_full_formula(rng, depth - 1, budget),
            gen_full_formula(rng, depth - 1, budget),
        ),
        4 => Formula::limp(
            gen_full_formula(rng, depth - 1, budget),
            gen_full_formula(rng, depth - 1, budget),
        ),
        5 => Formula::bang(gen_full_formula(rng, depth - 1, budget)),
        6 => Formula::quest(gen_full_formula(rng, depth - 1, budget)),
        _ => gen_full_formula(rng, depth - 1, budget),
    }
}

/// The harness groups runs into the published row schema, keeps the
/// partition invariant, and books a forced timeout under "Unsolved".
#[test]
fn criterion_11_harness_schema_and_timeouts() {
    let corpus = kleene_corpus();
    let smoke = generate_library(&corpus[..6], &TranslationKind::ALL);
    let records = run_suite_problems(&smoke, &SearchLimits::default(), 2);
    let stats = summarize_all(&records);
    let mut failures = Vec::new();
    for (group, s) in &stats {
        if !s.partition_holds() {
            failures.push(format!("partition broken for {group}"));
        }
    }
    let table = emit_report(&stats, ReportFormat::Latex);
    for row in [
        "Num. of Problems",
        "Unsolved (timeouts)",
        "Solved (Theorems)",
        "Non-Theorems",
        "Min Time",
        "Avg Time",
        "Max Time",
    ] {
        if !table.contains(row) {
            failures.push(format!("report lacks the `{row}` row"));
        }
    }

    // a deliberately hopeless budget yields Unknown(Timeout), counted
    // under Unsolved
    let hard = generate_library(&corpus[26..27], &[TranslationKind::CallByName]);
    let tight = SearchLimits::default().with_timeout(Duration::from_nanos(1));
    let records = run_suite_problems(&hard, &tight, 1);
    match &records[0].verdict {
        Verdict::Unknown(UnknownCause::Timeout) => {}
        other => failures.push(format!("expected a timeout verdict, got {other:?}")),
    }
    let stats = summarize_all(&records);
    if stats[0].1.unsolved != 1 {
        failures.push("timeout not counted under Unsolved".into());
    }

    let result = if failures.is_empty() {
        Ok("row schema, partition invariant and timeout accounting hold".into())
    } else {
        Err(failures.join("; "))
    };
    report(11, "harness statistics behave as published", result);
}

fn summarize_all(
    records: &[illtp::bench::RunRecord],
) -> Vec<(String, illtp::bench::SuiteStats)> {
    illtp::bench::summarize(records, GroupBy::CategoryTranslation)
}
