use illtp::illf::{check_proof, prove, ProveResult, SearchLimits};
use illtp::kleene::{generate_library, kleene_corpus};
use illtp::format::ProblemStatus;
use std::time::Instant;

fn main() {
    let lib = generate_library(&kleene_corpus(), &illtp::translate::TranslationKind::ALL);
    let limits = SearchLimits::default().with_timeout(std::time::Duration::from_secs(60));
    let t0 = Instant::now();
    let mut mismatches = vec![];
    let (mut n_prov, mut n_not, mut n_unk) = (0, 0, 0);
    for p in &lib {
        let s = p.to_sequent();
        let t = Instant::now();
        let r = prove(&s, &limits).expect("admissible");
        let el = t.elapsed();
        let verdict = match &r {
            ProveResult::Provable(tree, _) => {
                assert!(check_proof(tree, &s), "proof check failed on {}", p.name);
                n_prov += 1;
                ProblemStatus::Theorem
            }
            ProveResult::NotProvable(_) => { n_not += 1; ProblemStatus::NonTheorem }
            ProveResult::Unknown(reason, _) => {
                n_unk += 1;
                eprintln!("UNKNOWN({reason:?}) {} after {el:?}", p.name);
                ProblemStatus::Unknown
            }
        };
        let expected = p.status();
        if expected != ProblemStatus::Unknown && verdict != expected {
            mismatches.push((p.name.clone(), expected, verdict));
        }
        if el.as_millis() > 500 {
            eprintln!("slow: {} took {el:?}", p.name);
        }
    }
    println!("provable={n_prov} notprovable={n_not} unknown={n_unk} total={} elapsed={:?}",
             lib.len(), t0.elapsed());
    println!("mismatches: {mismatches:#?}");
}
