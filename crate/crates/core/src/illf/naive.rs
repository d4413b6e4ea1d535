//! A brute-force prover for the unfocused sequent calculus, used as a
//! reference oracle. It enumerates every rule instance including every
//! context split, so it is exponential; it terminates on
//! exponential-free sequents because every premise strictly shrinks the
//! total formula size.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::multiset::Multiset;

type Ctx = Multiset<Formula>;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum NaiveError {
    #[error("sequent leaves the intuitionistic fragment")]
    NonAdmissible,
    #[error("the brute-force oracle only handles !-free sequents")]
    NotExponentialFree,
}

/// Decides an exponential-free sequent by exhaustive unfocused search.
pub fn prove_naive(s: &Sequent) -> Result<bool, NaiveError> {
    for f in s.antecedent.iter().chain(s.succedent.iter()) {
        if !crate::formula::is_ill_admissible(f) {
            return Err(NaiveError::NonAdmissible);
        }
        if !f.is_exponential_free() {
            return Err(NaiveError::NotExponentialFree);
        }
    }
    let mut memo = HashMap::new();
    Ok(go(&s.antecedent, &s.succedent, &mut memo))
}

fn go(
    gamma: &Ctx,
    delta: &Option<Formula>,
    memo: &mut HashMap<(Ctx, Option<Formula>), bool>,
) -> bool {
    use Formula::*;

    if let Some(hit) = memo.get(&(gamma.clone(), delta.clone())) {
        return *hit;
    }

    let result = (|| {
        // axioms
        match delta {
            Some(Atom(_)) => {
                let d = delta.as_ref().unwrap();
                if gamma.len() == 1 && gamma.contains(d) {
                    return true;
                }
            }
            Some(One) if gamma.is_empty() => return true,
            Some(Top) => return true,
            _ => {}
        }
        if gamma.contains(&Zero) {
            return true;
        }
        if delta.is_none() && gamma.len() == 1 && gamma.contains(&Bot) {
            return true;
        }

        // right rules
        match delta {
            Some(Bot) => {
                if go(gamma, &None, memo) {
                    return true;
                }
            }
            Some(With(a, b)) => {
                if go(gamma, &Some((**a).clone()), memo)
                    && go(gamma, &Some((**b).clone()), memo)
                {
                    return true;
                }
            }
            Some(Plus(a, b)) => {
                if go(gamma, &Some((**a).clone()), memo)
                    || go(gamma, &Some((**b).clone()), memo)
                {
                    return true;
                }
            }
            Some(Limp(a, b)) => {
                let mut g = gamma.clone();
                g.insert((**a).clone());
                if go(&g, &Some((**b).clone()), memo) {
                    return true;
                }
            }
            Some(Tensor(a, b)) => {
                for (g1, g2) in gamma.splits() {
                    if go(&g1, &Some((**a).clone()), memo)
                        && go(&g2, &Some((**b).clone()), memo)
                    {
                        return true;
                    }
                }
            }
            _ => {}
        }

        // left rules
        let members: Vec<Formula> = gamma.distinct().cloned().collect();
        for f in members {
            let mut rest = gamma.clone();
            rest.remove_one(&f);
            match &f {
                One => {
                    if go(&rest, delta, memo) {
                        return true;
                    }
                }
                Tensor(a, b) => {
                    let mut g = rest.clone();
                    g.insert((**a).clone());
                    g.insert((**b).clone());
                    if go(&g, delta, memo) {
                        return true;
                    }
                }
                With(a, b) => {
                    for sub in [a, b] {
                        let mut g = rest.clone();
                        g.insert((**sub).clone());
                        if go(&g, delta, memo) {
                            return true;
                        }
                    }
                }
                Plus(a, b) => {
                    let mut g1 = rest.clone();
                    g1.insert((**a).clone());
                    let mut g2 = rest.clone();
                    g2.insert((**b).clone());
                    if go(&g1, delta, memo) && go(&g2, delta, memo) {
                        return true;
                    }
                }
                Limp(a, b) => {
                    for (g1, g2) in rest.splits() {
                        if go(&g1, &Some((**a).clone()), memo) {
                            let mut g2 = g2;
                            g2.insert((**b).clone());
                            if go(&g2, delta, memo) {
                                return true;
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        false
    })();

    memo.insert((gamma.clone(), delta.clone()), result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn basic_verdicts() {
        let id = Sequent::conclusion(Formula::limp(atom("a"), atom("a")));
        assert_eq!(prove_naive(&id), Ok(true));

        let weakening = Sequent::new([atom("b")], Formula::limp(atom("a"), atom("b")));
        assert_eq!(prove_naive(&weakening), Ok(false));

        let zero = Sequent::new([Formula::Zero], atom("b"));
        assert_eq!(prove_naive(&zero), Ok(true));

        let bot_relevant = Sequent::new(
            [Formula::tensor(
                atom("a"),
                Formula::limp(atom("a"), Formula::Bot),
            )],
            atom("b"),
        );
        assert_eq!(prove_naive(&bot_relevant), Ok(false));
    }

    #[test]
    fn rejects_exponentials() {
        let s = Sequent::new([Formula::bang(atom("a"))], atom("a"));
        assert_eq!(prove_naive(&s), Err(NaiveError::NotExponentialFree));
    }
}
