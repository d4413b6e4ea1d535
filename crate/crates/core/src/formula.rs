//! Propositional linear logic formulas, sequents and polarity.

use serde::{Deserialize, Serialize};

use crate::multiset::Multiset;

/// A linear logic formula.
///
/// The full grammar is kept, including `⅋` and `?`; the intuitionistic
/// fragment used by the prover is the subset without those two connectives
/// (see [`is_ill_admissible`]). Structural equality is syntactic: no
/// commutativity or associativity is applied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(String),
    One,
    Zero,
    Top,
    Bot,
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Limp(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::Limp(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Formula {
        Formula::Quest(Box::new(a))
    }

    /// Linear bi-implication `F ⊸⊸ G`, stored as `(F ⊸ G) ⊗ (G ⊸ F)`.
    pub fn biimp(a: Formula, b: Formula) -> Formula {
        Formula::tensor(
            Formula::limp(a.clone(), b.clone()),
            Formula::limp(b, a),
        )
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of connective and atom nodes.
    pub fn size(&self) -> usize {
        use Formula::*;
        match self {
            Atom(_) | One | Zero | Top | Bot => 1,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) => {
                1 + a.size() + b.size()
            }
            Bang(a) | Quest(a) => 1 + a.size(),
        }
    }

    /// True if the formula contains no `!` (and no `?`).
    pub fn is_exponential_free(&self) -> bool {
        use Formula::*;
        match self {
            Atom(_) | One | Zero | Top | Bot => true,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) => {
                a.is_exponential_free() && b.is_exponential_free()
            }
            Bang(_) | Quest(_) => false,
        }
    }
}

/// Polarity classification driving the focused search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Polarity of the outermost connective. Atoms carry the fixed positive
/// bias of the implemented system.
pub fn polarity(f: &Formula) -> Polarity {
    use Formula::*;
    match f {
        Atom(_) | One | Zero | Tensor(..) | Plus(..) | Bang(_) => Polarity::Positive,
        Top | Bot | Par(..) | With(..) | Limp(..) | Quest(_) => Polarity::Negative,
    }
}

pub fn is_positive(f: &Formula) -> bool {
    polarity(f) == Polarity::Positive
}

pub fn is_negative(f: &Formula) -> bool {
    polarity(f) == Polarity::Negative
}

/// Linear negation `F⊥ = F ⊸ ⊥`, used both for literals and for compound
/// formulas.
pub fn negate(f: Formula) -> Formula {
    Formula::limp(f, Formula::Bot)
}

/// True iff the formula stays inside the intuitionistic fragment, i.e.
/// contains no `⅋` and no `?` subterm.
pub fn is_ill_admissible(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Atom(_) | One | Zero | Top | Bot => true,
        Par(..) | Quest(_) => false,
        Tensor(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) => {
            is_ill_admissible(a) && is_ill_admissible(b)
        }
        Bang(a) => is_ill_admissible(a),
    }
}

/// A two-sided sequent `Γ ⊢ Δ` with at most one succedent formula.
///
/// The empty succedent is meaningful: it is what the `⊥` rules produce.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub antecedent: Multiset<Formula>,
    pub succedent: Option<Formula>,
}

impl Sequent {
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: Formula) -> Sequent {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent: Some(succedent),
        }
    }

    pub fn conclusion(succedent: Formula) -> Sequent {
        Sequent::new([], succedent)
    }

    pub fn is_ill_admissible(&self) -> bool {
        self.antecedent.iter().all(is_ill_admissible)
            && self.succedent.as_ref().is_none_or(is_ill_admissible)
    }
}

impl std::fmt::Display for Sequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.antecedent.is_empty() {
            write!(f, "{} ", self.antecedent)?;
        }
        match &self.succedent {
            Some(g) => write!(f, "|- {g}"),
            None => write!(f, "|-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }

    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn polarity_of_outermost_connective() {
        assert_eq!(polarity(&Formula::tensor(a(), b())), Polarity::Positive);
        assert_eq!(polarity(&Formula::with(a(), b())), Polarity::Negative);
        assert_eq!(polarity(&Formula::atom("p")), Polarity::Positive);
        assert_eq!(polarity(&Formula::One), Polarity::Positive);
        assert_eq!(polarity(&Formula::Zero), Polarity::Positive);
        assert_eq!(polarity(&Formula::bang(a())), Polarity::Positive);
        assert_eq!(polarity(&Formula::plus(a(), b())), Polarity::Positive);
        assert_eq!(polarity(&Formula::Top), Polarity::Negative);
        assert_eq!(polarity(&Formula::Bot), Polarity::Negative);
        assert_eq!(polarity(&Formula::par(a(), b())), Polarity::Negative);
        assert_eq!(polarity(&Formula::limp(a(), b())), Polarity::Negative);
        assert_eq!(polarity(&Formula::quest(a())), Polarity::Negative);
    }

    /// Each De Morgan dual pair has opposite polarities.
    #[test]
    fn polarity_duals_are_opposite() {
        let duals = [
            (Formula::tensor(a(), b()), Formula::par(a(), b())),
            (Formula::One, Formula::Bot),
            (Formula::plus(a(), b()), Formula::with(a(), b())),
            (Formula::Zero, Formula::Top),
            (Formula::bang(a()), Formula::quest(a())),
        ];
        for (pos, neg) in duals {
            assert_eq!(polarity(&pos), Polarity::Positive, "{pos:?}");
            assert_eq!(polarity(&neg), Polarity::Negative, "{neg:?}");
        }
    }

    #[test]
    fn negate_wraps_in_limp_bot() {
        assert_eq!(negate(a()), Formula::limp(a(), Formula::Bot));
        assert_eq!(
            negate(Formula::Bot),
            Formula::limp(Formula::Bot, Formula::Bot)
        );
        let ab = Formula::limp(a(), b());
        assert_eq!(negate(ab.clone()), Formula::limp(ab, Formula::Bot));
    }

    #[test]
    fn admissibility_rejects_par_and_quest() {
        assert!(is_ill_admissible(&Formula::bang(Formula::limp(a(), b()))));
        assert!(!is_ill_admissible(&Formula::par(a(), b())));
        assert!(!is_ill_admissible(&Formula::limp(Formula::quest(a()), b())));
    }
}
