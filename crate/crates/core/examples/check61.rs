use illtp::kleene::kleene_corpus;
use illtp::oracle::prove_il;

fn main() {
    let mut bad = vec![];
    let t0 = std::time::Instant::now();
    for e in kleene_corpus() {
        if !prove_il(&e.sequent).is_provable() {
            bad.push(e.index);
        }
    }
    println!("unprovable: {:?}  elapsed: {:?}", bad, t0.elapsed());
}
