//! The built-in corpus: 61 intuitionistic sequents in the `(→, ∧)`
//! fragment, the provability status of each multiplicative image, and the
//! hand-written provable linear replacements for the images that fail.
//!
//! Materializing the corpus under all four translations gives 244
//! problems; adding the 27 replacement sequents gives the full 271-problem
//! library.

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Sequent};
use crate::format::{Problem, ProblemStatus};
use crate::il::{ILFormula, ILSequent};
use crate::translate::{trans_sequent, TranslationKind};

/// One corpus item: a source sequent, the status of its multiplicative
/// image, and zero or more alternative linear encodings (present exactly
/// when the multiplicative image is not provable).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleeneEntry {
    pub index: u32,
    pub sequent: ILSequent,
    pub mult_status: ProblemStatus,
    pub alternatives: Vec<Sequent>,
}

/// Indices whose multiplicative image is not provable.
const NON_THEOREMS: [u32; 22] = [
    10, 11, 12, 16, 17, 18, 19, 26, 27, 35, 36, 37, 38, 39, 40, 41, 45, 46, 47, 57, 58, 59,
];

/// The full 61-entry corpus, in order.
pub fn kleene_corpus() -> Vec<KleeneEntry> {
    use ILFormula as I;
    let a = || I::atom("a");
    let b = || I::atom("b");
    let c = || I::atom("c");
    let imp = I::imp;
    let and = I::and;
    let not = I::not;
    let eqv = I::equiv;
    let nn = |f: I| not(not(f));

    // (antecedent, succedent) per item, 1-based.
    let items: Vec<(Vec<I>, I)> = vec![
        /* 1 */ (vec![], imp(a(), a())),
        /* 2 */ (vec![imp(a(), b()), imp(b(), c())], imp(a(), c())),
        /* 3 */ (vec![imp(a(), imp(b(), c()))], imp(b(), imp(a(), c()))),
        /* 4 */ (vec![imp(a(), imp(b(), c()))], imp(and(a(), b()), c())),
        /* 5 */ (vec![imp(and(a(), b()), c())], imp(a(), imp(b(), c()))),
        /* 6 */ (vec![imp(a(), b())], imp(imp(b(), c()), imp(a(), c()))),
        /* 7 */ (vec![imp(a(), b())], imp(imp(c(), a()), imp(c(), b()))),
        /* 8 */ (vec![imp(a(), b())], imp(and(a(), c()), and(b(), c()))),
        /* 9 */ (vec![imp(a(), b())], imp(and(c(), a()), and(c(), b()))),
        /* 10 */ (vec![not(a())], imp(a(), b())),
        /* 11 */ (vec![a()], imp(not(a()), b())),
        /* 12 */ (vec![b()], imp(a(), b())),
        /* 13 */ (vec![imp(a(), b())], imp(not(b()), not(a()))),
        /* 14 */ (vec![imp(a(), not(b()))], imp(nn(b()), not(a()))),
        /* 15 */ (vec![imp(a(), b()), imp(b(), a())], eqv(a(), b())),
        /* 16 */ (vec![eqv(a(), b())], imp(a(), b())),
        /* 17 */ (vec![eqv(a(), b())], imp(b(), a())),
        /* 18 */ (vec![eqv(a(), b()), a()], b()),
        /* 19 */ (vec![eqv(a(), b()), b()], a()),
        /* 20 */ (vec![], eqv(a(), a())),
        /* 21 */ (vec![eqv(a(), b())], eqv(b(), a())),
        /* 22 */ (vec![eqv(a(), b()), eqv(b(), c())], eqv(a(), c())),
        /* 23 */ (
            vec![imp(a(), imp(b(), c())), nn(a()), nn(b())],
            nn(c()),
        ),
        /* 24 */ (vec![nn(imp(a(), b()))], imp(nn(a()), nn(b()))),
        /* 25 */ (
            vec![nn(imp(a(), b())), nn(imp(b(), c()))],
            nn(imp(a(), c())),
        ),
        /* 26 */ (vec![], eqv(nn(and(a(), b())), and(nn(a()), nn(b())))),
        /* 27 */ (
            vec![],
            eqv(
                nn(eqv(a(), b())),
                and(nn(imp(a(), b())), nn(imp(b(), a()))),
            ),
        ),
        /* 28 */ (vec![eqv(a(), b())], eqv(imp(a(), c()), imp(b(), c()))),
        /* 29 */ (vec![eqv(a(), b())], eqv(imp(c(), a()), imp(c(), b()))),
        /* 30 */ (vec![eqv(a(), b())], eqv(and(a(), c()), and(b(), c()))),
        /* 31 */ (vec![eqv(a(), b())], eqv(and(c(), a()), and(c(), b()))),
        /* 32 */ (vec![eqv(a(), b())], eqv(not(a()), not(b()))),
        /* 33 */ (
            vec![],
            eqv(and(and(a(), b()), c()), and(a(), and(b(), c()))),
        ),
        /* 34 */ (vec![], eqv(and(a(), b()), and(b(), a()))),
        /* 35 */ (vec![], eqv(and(a(), a()), a())),
        /* 36 */ (vec![a()], eqv(imp(a(), b()), b())),
        /* 37 */ (vec![b()], eqv(imp(a(), b()), b())),
        /* 38 */ (vec![not(a())], eqv(imp(a(), b()), not(a()))),
        /* 39 */ (vec![not(b())], eqv(imp(a(), b()), not(a()))),
        /* 40 */ (vec![b()], eqv(and(a(), b()), a())),
        /* 41 */ (vec![not(b())], eqv(and(a(), b()), b())),
        /* 42 */ (vec![], imp(a(), nn(a()))),
        /* 43 */ (vec![], eqv(not(nn(a())), not(a()))),
        /* 44 */ (vec![], not(and(a(), not(a())))),
        /* 45 */ (vec![], not(eqv(a(), not(a())))),
        /* 46 */ (vec![], nn(imp(nn(a()), a()))),
        /* 47 */ (
            vec![],
            eqv(and(a(), and(b(), not(b()))), and(b(), not(b()))),
        ),
        /* 48 */ (vec![], imp(imp(a(), b()), not(and(a(), not(b()))))),
        /* 49 */ (vec![], eqv(imp(a(), not(b())), not(and(a(), b())))),
        /* 50 */ (vec![], eqv(not(and(a(), b())), imp(nn(a()), not(b())))),
        /* 51 */ (
            vec![imp(nn(b()), b())],
            eqv(imp(nn(a()), b()), imp(a(), b())),
        ),
        /* 52 */ (
            vec![imp(nn(b()), b())],
            eqv(imp(a(), b()), not(and(a(), not(b())))),
        ),
        /* 53 */ (vec![], imp(imp(nn(a()), b()), not(and(a(), not(b()))))),
        /* 54 */ (vec![], imp(and(a(), b()), not(imp(a(), not(b()))))),
        /* 55 */ (vec![], imp(and(a(), not(b())), not(imp(a(), b())))),
        /* 56 */ (vec![], imp(and(nn(a()), b()), not(imp(a(), not(b()))))),
        /* 57 */ (vec![], eqv(and(nn(a()), not(b())), not(imp(a(), b())))),
        /* 58 */ (vec![], eqv(not(imp(a(), b())), nn(and(a(), not(b()))))),
        /* 59 */ (vec![], eqv(nn(imp(a(), b())), not(and(a(), not(b()))))),
        /* 60 */ (vec![], eqv(not(and(a(), not(b()))), imp(a(), nn(b())))),
        /* 61 */ (vec![], eqv(imp(a(), nn(b())), imp(nn(a()), nn(b())))),
    ];

    items
        .into_iter()
        .enumerate()
        .map(|(i, (ante, succ))| {
            let index = (i + 1) as u32;
            let mult_status = if NON_THEOREMS.contains(&index) {
                ProblemStatus::NonTheorem
            } else {
                ProblemStatus::Theorem
            };
            KleeneEntry {
                index,
                sequent: ILSequent::new(ante, succ),
                mult_status,
                alternatives: alternatives_for(index),
            }
        })
        .collect()
}

/// Hand-written provable linear encodings for the items whose
/// multiplicative image fails, using a small number of bangs and
/// additives. Items 26, 27, 57, 58 and 59 split into two sequents.
fn alternatives_for(index: u32) -> Vec<Sequent> {
    use Formula as L;
    let a = || L::atom("a");
    let b = || L::atom("b");
    let limp = L::limp;
    let tns = L::tensor;
    let wth = L::with;
    let bang = L::bang;
    let bii = L::biimp;
    let neg = crate::formula::negate;
    let nn = |f: L| neg(neg(f));
    let zero = || L::Zero;

    match index {
        10 => vec![Sequent::new([limp(a(), zero())], limp(a(), b()))],
        11 => vec![Sequent::new([a()], limp(limp(a(), zero()), b()))],
        12 => vec![Sequent::new([b()], limp(bang(a()), b()))],
        16 => vec![Sequent::new(
            [tns(limp(a(), b()), bang(limp(b(), a())))],
            limp(a(), b()),
        )],
        17 => vec![Sequent::new(
            [tns(bang(limp(a(), b())), limp(b(), a()))],
            limp(b(), a()),
        )],
        18 => vec![Sequent::new(
            [bii(a(), b()), a()],
            tns(b(), limp(b(), a())),
        )],
        19 => vec![Sequent::new(
            [bii(a(), b()), b()],
            tns(a(), limp(a(), b())),
        )],
        26 => vec![
            Sequent::conclusion(limp(nn(wth(a(), b())), wth(nn(a()), nn(b())))),
            Sequent::conclusion(limp(tns(nn(a()), nn(b())), nn(tns(a(), b())))),
        ],
        27 => vec![
            Sequent::conclusion(limp(
                nn(tns(bang(limp(a(), b())), bang(limp(b(), a())))),
                wth(nn(limp(a(), b())), nn(limp(b(), a()))),
            )),
            Sequent::conclusion(limp(
                tns(nn(limp(a(), b())), nn(limp(b(), a()))),
                nn(bii(a(), b())),
            )),
        ],
        35 => vec![Sequent::conclusion(bii(
            tns(bang(a()), bang(a())),
            bang(a()),
        ))],
        36 => vec![Sequent::new(
            [a()],
            tns(
                limp(limp(a(), b()), b()),
                limp(b(), limp(bang(a()), b())),
            ),
        )],
        37 => vec![Sequent::new(
            [b()],
            tns(
                limp(bang(limp(a(), b())), b()),
                limp(b(), limp(bang(a()), b())),
            ),
        )],
        38 => vec![Sequent::new(
            [neg(a())],
            tns(
                limp(bang(limp(a(), b())), neg(a())),
                limp(limp(a(), zero()), limp(a(), b())),
            ),
        )],
        39 => vec![Sequent::new(
            [limp(b(), zero())],
            bii(limp(a(), b()), limp(a(), zero())),
        )],
        40 => vec![Sequent::new(
            [b()],
            tns(limp(tns(a(), bang(b())), a()), limp(a(), tns(a(), b()))),
        )],
        41 => vec![Sequent::new(
            [limp(b(), zero())],
            tns(limp(tns(bang(a()), b()), b()), limp(b(), tns(a(), b()))),
        )],
        45 => vec![Sequent::conclusion(neg(tns(
            bang(limp(a(), neg(a()))),
            limp(neg(bang(a())), bang(a())),
        )))],
        46 => vec![Sequent::conclusion(neg(bang(neg(limp(
            bang(limp(neg(a()), zero())),
            a(),
        )))))],
        47 => vec![Sequent::conclusion(bii(
            tns(a(), tns(b(), limp(b(), zero()))),
            tns(b(), limp(b(), zero())),
        ))],
        57 => vec![
            Sequent::conclusion(limp(
                tns(nn(a()), neg(b())),
                neg(limp(a(), b())),
            )),
            Sequent::conclusion(limp(
                neg(limp(bang(a()), b())),
                wth(neg(limp(a(), zero())), neg(b())),
            )),
        ],
        58 => vec![
            Sequent::conclusion(limp(
                bang(neg(limp(bang(a()), b()))),
                neg(limp(tns(a(), neg(b())), zero())),
            )),
            Sequent::conclusion(limp(
                nn(tns(a(), neg(b()))),
                neg(limp(a(), b())),
            )),
        ],
        59 => vec![
            Sequent::conclusion(limp(
                nn(limp(a(), b())),
                neg(tns(a(), neg(b()))),
            )),
            Sequent::conclusion(limp(
                limp(tns(a(), neg(b())), zero()),
                neg(bang(neg(limp(bang(a()), b())))),
            )),
        ],
        _ => vec![],
    }
}

fn problem_from_sequent(name: &str, s: &Sequent, status: ProblemStatus) -> Problem {
    let axioms = s
        .antecedent
        .iter()
        .enumerate()
        .map(|(i, f)| (format!("a{}", i + 1), f.clone()))
        .collect();
    let succedent = s
        .succedent
        .clone()
        .expect("library sequents always have a succedent");
    let mut p = Problem::new(name, axioms, ("c".to_string(), succedent));
    p.push_comment(format!("Problem : {name}"));
    p.set_status(status);
    p
}

/// Materializes the library: one problem per `(entry, kind)` pair followed
/// by one problem per alternative sequent. The multiplicative problems
/// carry the corpus statuses; all other problems are theorems.
pub fn generate_library(corpus: &[KleeneEntry], kinds: &[TranslationKind]) -> Vec<Problem> {
    let mut out = Vec::new();
    for entry in corpus {
        for &kind in kinds {
            let name = format!("KLE-{}-{}", entry.index, kind.token());
            let status = match kind {
                TranslationKind::Mult => entry.mult_status,
                _ => ProblemStatus::Theorem,
            };
            let seq = trans_sequent(&entry.sequent, kind);
            out.push(problem_from_sequent(&name, &seq, status));
        }
    }
    for entry in corpus {
        let parts: &[&str] = match entry.alternatives.len() {
            0 => &[],
            1 => &[""],
            2 => &["a", "b"],
            _ => unreachable!("at most two alternative sequents per entry"),
        };
        for (alt, part) in entry.alternatives.iter().zip(parts) {
            let name = format!("KLE-{}-alt{part}", entry.index);
            out.push(problem_from_sequent(&name, alt, ProblemStatus::Theorem));
        }
    }
    out
}
