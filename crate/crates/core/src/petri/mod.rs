//! Petri nets: PNML ingestion, token-game simulation, an explicit-state
//! reachability oracle, and the encoding of reachability problems as
//! linear sequents.
//!
//! A net is a multiset rewrite system: a transition consumes its preset
//! and produces its postset. Reachability of marking `M'` from `M` then
//! coincides with provability of `⊗ !(pre ⊸ post) ⊢ M ⊸ M'`, with each
//! marking encoded as a tensor of place atoms.

pub mod pnml;

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::Problem;
use crate::formula::Formula;
use crate::multiset::Multiset;

/// A marking: multiset of place identifiers.
pub type Marking = Multiset<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub id: String,
    /// Tokens consumed (`•t`).
    pub preset: Marking,
    /// Tokens produced (`t•`).
    pub postset: Marking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetriNet {
    pub name: String,
    pub places: BTreeSet<String>,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("transition `{transition}` references undeclared place `{place}`")]
    UndeclaredPlace { transition: String, place: String },
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
}

impl PetriNet {
    pub fn new(
        name: impl Into<String>,
        places: impl IntoIterator<Item = String>,
        transitions: Vec<Transition>,
    ) -> Result<PetriNet, NetError> {
        let net = PetriNet {
            name: name.into(),
            places: places.into_iter().collect(),
            transitions,
        };
        net.validate()?;
        Ok(net)
    }

    /// Checks that presets and postsets mention only declared places.
    pub fn validate(&self) -> Result<(), NetError> {
        for t in &self.transitions {
            for place in t.preset.distinct().chain(t.postset.distinct()) {
                if !self.places.contains(place) {
                    return Err(NetError::UndeclaredPlace {
                        transition: t.id.clone(),
                        place: place.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A reachability question: is `to` obtainable from `from`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachProblem {
    pub net: PetriNet,
    pub from: Marking,
    pub to: Marking,
}

/// Transitions enabled in `m`, in declaration order.
pub fn enabled<'a>(net: &'a PetriNet, m: &Marking) -> Vec<&'a Transition> {
    net.transitions
        .iter()
        .filter(|t| t.preset.is_subset(m))
        .collect()
}

/// Fires `t` in `m`: `m ∖ •t ⊎ t•`.
pub fn fire(net: &PetriNet, m: &Marking, t: &Transition) -> Result<Marking, NetError> {
    let _ = net;
    if !t.preset.is_subset(m) {
        return Err(NetError::NotEnabled(t.id.clone()));
    }
    Ok(m.difference(&t.preset).union(&t.postset))
}

/// Result of a bounded random walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimOutcome {
    pub marking: Marking,
    /// Transitions actually fired; less than requested on deadlock.
    pub steps_taken: usize,
    pub deadlocked: bool,
    /// Transition ids in firing order.
    pub trace: Vec<String>,
}

/// Fires `steps` transitions chosen uniformly among the enabled ones with
/// a deterministic seeded generator. A deadlock ends the walk early; the
/// marking reached is still reported.
pub fn simulate(net: &PetriNet, m0: &Marking, steps: usize, seed: u64) -> SimOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut marking = m0.clone();
    let mut trace = Vec::new();
    for taken in 0..steps {
        let choices = enabled(net, &marking);
        if choices.is_empty() {
            return SimOutcome {
                marking,
                steps_taken: taken,
                deadlocked: true,
                trace,
            };
        }
        let t = choices[rng.random_range(0..choices.len())];
        trace.push(t.id.clone());
        marking = fire(net, &marking, t).expect("chosen among enabled transitions");
    }
    SimOutcome {
        marking,
        steps_taken: steps,
        deadlocked: false,
        trace,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reachability {
    Reachable,
    Unreachable,
    /// The state budget was exhausted before the question was settled.
    Unknown,
}

/// Breadth-first exploration of the marking graph, visiting at most
/// `state_budget` distinct markings. `Unreachable` is reported only when
/// the whole (finite) graph was exhausted.
pub fn reachable_bfs(p: &ReachProblem, state_budget: usize) -> Reachability {
    let mut seen: HashSet<Marking> = HashSet::new();
    let mut queue: VecDeque<Marking> = VecDeque::new();
    seen.insert(p.from.clone());
    queue.push_back(p.from.clone());
    while let Some(m) = queue.pop_front() {
        if m == p.to {
            return Reachability::Reachable;
        }
        for t in enabled(&p.net, &m) {
            let next = fire(&p.net, &m, t).expect("enabled");
            if !seen.contains(&next) {
                if seen.len() >= state_budget {
                    return Reachability::Unknown;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Reachability::Unreachable
}

/// Encodes a marking as a right-nested tensor of place atoms in place
/// order; the empty marking is `1`.
pub fn encode_marking(m: &Marking, atom_of: &dyn Fn(&str) -> String) -> Formula {
    let atoms: Vec<Formula> = m
        .iter()
        .map(|place| Formula::Atom(atom_of(place)))
        .collect();
    match atoms.split_first() {
        None => Formula::One,
        Some((first, rest)) => rest
            .iter()
            .rev()
            .fold(None::<Formula>, |acc, f| {
                Some(match acc {
                    None => f.clone(),
                    Some(tail) => Formula::tensor(f.clone(), tail),
                })
            })
            .map(|tail| Formula::tensor(first.clone(), tail))
            .unwrap_or_else(|| first.clone()),
    }
}

/// Encodes the reachability problem as a linear problem: one axiom
/// holding the tensor of all banged rule encodings (declaration order,
/// right-nested) and the conjecture `from ⊸ to`.
pub fn encode_reachability(p: &ReachProblem) -> Problem {
    let atom_of = place_atoms(&p.net);
    let lookup = |place: &str| -> String {
        atom_of
            .iter()
            .find(|(orig, _)| orig == place)
            .map(|(_, a)| a.clone())
            .expect("every place has an atom")
    };

    let rules: Vec<Formula> = p
        .net
        .transitions
        .iter()
        .map(|t| {
            Formula::bang(Formula::limp(
                encode_marking(&t.preset, &lookup),
                encode_marking(&t.postset, &lookup),
            ))
        })
        .collect();
    let axiom = match rules.split_last() {
        None => Formula::One, // a net without transitions contributes no resources
        Some((last, init)) => init
            .iter()
            .rev()
            .fold(last.clone(), |acc, f| Formula::tensor(f.clone(), acc)),
    };

    let conjecture = Formula::limp(
        encode_marking(&p.from, &lookup),
        encode_marking(&p.to, &lookup),
    );

    Problem::new(
        p.net.name.clone(),
        vec![("rules".to_string(), axiom)],
        ("reach".to_string(), conjecture),
    )
}

/// Deterministic mapping from place identifiers to atom names: invalid
/// characters become `_`, a leading non-letter gains a `p` prefix, and
/// collisions get numeric suffixes in place order.
pub fn place_atoms(net: &PetriNet) -> Vec<(String, String)> {
    let mut taken: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for place in &net.places {
        let mut atom: String = place
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        if !atom.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            atom.insert(0, 'p');
        }
        let mut unique = atom.clone();
        let mut i = 2;
        while taken.contains(&unique) {
            unique = format!("{atom}_{i}");
            i += 1;
        }
        taken.insert(unique.clone());
        out.push((place.clone(), unique));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> PetriNet {
        // s1 -> s2 -> s3
        PetriNet::new(
            "chain",
            ["s1", "s2", "s3"].map(String::from),
            vec![
                Transition {
                    id: "t1".into(),
                    preset: ["s1".to_string()].into_iter().collect(),
                    postset: ["s2".to_string()].into_iter().collect(),
                },
                Transition {
                    id: "t2".into(),
                    preset: ["s2".to_string()].into_iter().collect(),
                    postset: ["s3".to_string()].into_iter().collect(),
                },
            ],
        )
        .unwrap()
    }

    fn mk(places: &[&str]) -> Marking {
        places.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn enabled_needs_the_whole_preset() {
        let net = PetriNet::new(
            "n",
            ["s1"].map(String::from),
            vec![Transition {
                id: "t".into(),
                preset: mk(&["s1", "s1"]),
                postset: Marking::new(),
            }],
        )
        .unwrap();
        assert!(enabled(&net, &mk(&["s1"])).is_empty());
        assert_eq!(enabled(&net, &mk(&["s1", "s1"])).len(), 1);
        assert!(enabled(&net, &Marking::new()).is_empty());
    }

    #[test]
    fn fire_applies_the_multiset_update() {
        let net = chain();
        let t1 = &net.transitions[0];
        assert_eq!(fire(&net, &mk(&["s1"]), t1), Ok(mk(&["s2"])));
        // frame: unrelated tokens stay
        assert_eq!(fire(&net, &mk(&["s1", "s3"]), t1), Ok(mk(&["s2", "s3"])));
        assert_eq!(
            fire(&net, &mk(&["s2"]), t1),
            Err(NetError::NotEnabled("t1".into()))
        );
        // weight-2 postset produces two tokens
        let dup = Transition {
            id: "d".into(),
            preset: mk(&["s1"]),
            postset: mk(&["s2", "s2"]),
        };
        let out = fire(&net, &mk(&["s1"]), &dup).unwrap();
        assert_eq!(out.count(&"s2".to_string()), 2);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn token_count_is_conserved_by_fire() {
        let net = chain();
        let m = mk(&["s1", "s1", "s2"]);
        for t in enabled(&net, &m) {
            let next = fire(&net, &m, t).unwrap();
            assert_eq!(
                next.len(),
                m.len() - t.preset.len() + t.postset.len()
            );
        }
    }

    #[test]
    fn simulate_is_deterministic_and_respects_deadlock() {
        let net = chain();
        let m0 = mk(&["s1"]);
        assert_eq!(simulate(&net, &m0, 0, 7).marking, m0);

        let two = simulate(&net, &m0, 2, 7);
        assert_eq!(two.marking, mk(&["s3"]));
        assert!(!two.deadlocked);

        let ten = simulate(&net, &m0, 10, 7);
        assert_eq!(ten.marking, mk(&["s3"]));
        assert_eq!(ten.steps_taken, 2);
        assert!(ten.deadlocked);

        let again = simulate(&net, &m0, 10, 7);
        assert_eq!(ten, again);
    }

    #[test]
    fn bfs_verdicts() {
        let net = chain();
        let fwd = ReachProblem {
            net: net.clone(),
            from: mk(&["s1"]),
            to: mk(&["s3"]),
        };
        assert_eq!(reachable_bfs(&fwd, 100), Reachability::Reachable);

        let back = ReachProblem {
            net: net.clone(),
            from: mk(&["s3"]),
            to: mk(&["s1"]),
        };
        assert_eq!(reachable_bfs(&back, 100), Reachability::Unreachable);

        // unbounded producer with a tiny budget
        let producer = PetriNet::new(
            "grow",
            ["s1"].map(String::from),
            vec![Transition {
                id: "t".into(),
                preset: mk(&["s1"]),
                postset: mk(&["s1", "s1"]),
            }],
        )
        .unwrap();
        let p = ReachProblem {
            net: producer,
            from: mk(&["s1"]),
            to: mk(&["s1", "s1", "s1", "s1", "s1", "s1", "s1", "s1"]),
        };
        assert_eq!(reachable_bfs(&p, 3), Reachability::Unknown);
    }

    #[test]
    fn marking_encoding() {
        let id = |s: &str| s.to_string();
        assert_eq!(encode_marking(&Marking::new(), &id), Formula::One);
        assert_eq!(encode_marking(&mk(&["s1"]), &id), Formula::atom("s1"));
        assert_eq!(
            encode_marking(&mk(&["s2", "s2"]), &id),
            Formula::tensor(Formula::atom("s2"), Formula::atom("s2"))
        );
        // right-nested in place order
        assert_eq!(
            encode_marking(&mk(&["s2", "s1", "s3"]), &id),
            Formula::tensor(
                Formula::atom("s1"),
                Formula::tensor(Formula::atom("s2"), Formula::atom("s3"))
            )
        );
    }

    #[test]
    fn reachability_encoding_shape() {
        let net = chain();
        let p = ReachProblem {
            net,
            from: mk(&["s1"]),
            to: mk(&["s2"]),
        };
        let problem = encode_reachability(&p);
        let rule = |from: &str, to: &str| {
            Formula::bang(Formula::limp(Formula::atom(from), Formula::atom(to)))
        };
        assert_eq!(
            problem.axioms,
            vec![(
                "rules".to_string(),
                Formula::tensor(rule("s1", "s2"), rule("s2", "s3"))
            )]
        );
        assert_eq!(
            problem.conjecture.1,
            Formula::limp(Formula::atom("s1"), Formula::atom("s2"))
        );
    }

    #[test]
    fn atom_sanitization() {
        let net = PetriNet::new(
            "n",
            ["1-a", "1_a", "ok"].map(String::from),
            vec![],
        )
        .unwrap();
        let atoms = place_atoms(&net);
        let names: Vec<&str> = atoms.iter().map(|(_, a)| a.as_str()).collect();
        assert_eq!(names, vec!["p1_a", "p1_a_2", "ok"]);
    }
}
