//! The four embeddings of intuitionistic formulas into linear logic:
//! multiplicative, call-by-name, call-by-value (positive) and 0/1.
//!
//! The multiplicative image is a plain connective substitution and does not
//! preserve provability; the other three do, at the price of added
//! exponentials. Defined connectives (`¬`, `∼`) are eliminated before
//! translating.

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Sequent};
use crate::il::{expand_defined, ILFormula, ILSequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TranslationKind {
    Mult,
    CallByName,
    CallByValue,
    ZeroOne,
}

impl TranslationKind {
    pub const ALL: [TranslationKind; 4] = [
        TranslationKind::Mult,
        TranslationKind::CallByName,
        TranslationKind::CallByValue,
        TranslationKind::ZeroOne,
    ];

    /// Short token used in problem names and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            TranslationKind::Mult => "mult",
            TranslationKind::CallByName => "cbn",
            TranslationKind::CallByValue => "cbv",
            TranslationKind::ZeroOne => "01",
        }
    }

    pub fn from_token(s: &str) -> Option<TranslationKind> {
        match s {
            "mult" => Some(TranslationKind::Mult),
            "cbn" => Some(TranslationKind::CallByName),
            "cbv" => Some(TranslationKind::CallByValue),
            "01" => Some(TranslationKind::ZeroOne),
            _ => None,
        }
    }

    /// Whether provability of the source sequent is preserved.
    pub fn preserves_provability(self) -> bool {
        !matches!(self, TranslationKind::Mult)
    }
}

impl std::fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// Position index for the 0/1 translation: 0 to the left of the turnstile,
/// 1 to the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Zero,
    One,
}

/// Multiplicative translation: `∧ ↦ ⊗`, `∨ ↦ ⅋`, `→ ↦ ⊸`, `t ↦ 1`,
/// `f ↦ ⊥`. Introduces no exponentials; the image of `∨` is `⅋`, which
/// leaves the intuitionistic fragment.
pub fn trans_mult(f: &ILFormula) -> Formula {
    fn go(f: &ILFormula) -> Formula {
        use ILFormula::*;
        match f {
            Atom(p) => Formula::Atom(p.clone()),
            True => Formula::One,
            False => Formula::Bot,
            And(a, b) => Formula::tensor(go(a), go(b)),
            Or(a, b) => Formula::par(go(a), go(b)),
            Imp(a, b) => Formula::limp(go(a), go(b)),
            Not(_) | Equiv(_, _) => unreachable!("defined connectives were expanded"),
        }
    }
    go(&expand_defined(f))
}

/// Call-by-name translation: `(A → B)^g = !A^g ⊸ B^g`, `∧ ↦ &`,
/// `(A ∨ B)^g = !A^g ⊕ !B^g`, `t ↦ ⊤`, `f ↦ 0`.
pub fn trans_cbn(f: &ILFormula) -> Formula {
    fn go(f: &ILFormula) -> Formula {
        use ILFormula::*;
        match f {
            Atom(p) => Formula::Atom(p.clone()),
            True => Formula::Top,
            False => Formula::Zero,
            And(a, b) => Formula::with(go(a), go(b)),
            Or(a, b) => Formula::plus(Formula::bang(go(a)), Formula::bang(go(b))),
            Imp(a, b) => Formula::limp(Formula::bang(go(a)), go(b)),
            Not(_) | Equiv(_, _) => unreachable!("defined connectives were expanded"),
        }
    }
    go(&expand_defined(f))
}

/// Call-by-value (positive) translation: `(p)^p = !p`,
/// `(A → B)^p = !(A^p ⊸ B^p)`, `∧ ↦ ⊗`, `∨ ↦ ⊕`, `t ↦ 1`, `f ↦ 0`.
/// Every subformula of the image is positive.
pub fn trans_cbv(f: &ILFormula) -> Formula {
    fn go(f: &ILFormula) -> Formula {
        use ILFormula::*;
        match f {
            Atom(p) => Formula::bang(Formula::Atom(p.clone())),
            True => Formula::One,
            False => Formula::Zero,
            And(a, b) => Formula::tensor(go(a), go(b)),
            Or(a, b) => Formula::plus(go(a), go(b)),
            Imp(a, b) => Formula::bang(Formula::limp(go(a), go(b))),
            Not(_) | Equiv(_, _) => unreachable!("defined connectives were expanded"),
        }
    }
    go(&expand_defined(f))
}

/// 0/1 translation, indexed by the side of the turnstile the formula sits
/// on. Atoms translate to themselves at both positions.
pub fn trans_01(f: &ILFormula, pos: Position) -> Formula {
    fn go(f: &ILFormula, pos: Position) -> Formula {
        use ILFormula::*;
        use Position::*;
        match (f, pos) {
            (Atom(p), _) => Formula::Atom(p.clone()),
            (True, Zero) => Formula::Top,
            (True, One) => Formula::One,
            (False, _) => Formula::Zero,
            (And(a, b), Zero) => Formula::with(
                Formula::bang(go(a, Zero)),
                Formula::bang(go(b, Zero)),
            ),
            (And(a, b), One) => Formula::bang(Formula::with(go(a, One), go(b, One))),
            (Or(a, b), pos) => Formula::plus(
                Formula::bang(go(a, pos)),
                Formula::bang(go(b, pos)),
            ),
            (Imp(a, b), Zero) => Formula::limp(
                Formula::bang(go(a, One)),
                Formula::bang(go(b, Zero)),
            ),
            (Imp(a, b), One) => {
                Formula::bang(Formula::limp(Formula::bang(go(a, Zero)), go(b, One)))
            }
            (Not(_), _) | (Equiv(_, _), _) => {
                unreachable!("defined connectives were expanded")
            }
        }
    }
    go(&expand_defined(f), pos)
}

/// Translates a whole sequent. The antecedent members are translated
/// individually; call-by-name and 0/1 additionally wrap each of them in
/// one `!`.
pub fn trans_sequent(s: &ILSequent, kind: TranslationKind) -> Sequent {
    use TranslationKind::*;
    let antecedent: Vec<Formula> = s
        .antecedent
        .iter()
        .map(|f| match kind {
            Mult => trans_mult(f),
            CallByName => Formula::bang(trans_cbn(f)),
            CallByValue => trans_cbv(f),
            ZeroOne => Formula::bang(trans_01(f, Position::Zero)),
        })
        .collect();
    let succedent = match kind {
        Mult => trans_mult(&s.succedent),
        CallByName => trans_cbn(&s.succedent),
        CallByValue => trans_cbv(&s.succedent),
        ZeroOne => trans_01(&s.succedent, Position::One),
    };
    Sequent::new(antecedent, succedent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ILFormula {
        ILFormula::atom("a")
    }

    fn b() -> ILFormula {
        ILFormula::atom("b")
    }

    fn la() -> Formula {
        Formula::atom("a")
    }

    fn lb() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn mult_table() {
        assert_eq!(trans_mult(&ILFormula::imp(a(), b())), Formula::limp(la(), lb()));
        assert_eq!(
            trans_mult(&ILFormula::not(a())),
            Formula::limp(la(), Formula::Bot)
        );
        assert_eq!(
            trans_mult(&ILFormula::and(a(), ILFormula::True)),
            Formula::tensor(la(), Formula::One)
        );
        assert_eq!(
            trans_mult(&ILFormula::or(a(), b())),
            Formula::par(la(), lb())
        );
    }

    #[test]
    fn cbn_table() {
        assert_eq!(
            trans_cbn(&ILFormula::imp(a(), b())),
            Formula::limp(Formula::bang(la()), lb())
        );
        assert_eq!(trans_cbn(&ILFormula::and(a(), b())), Formula::with(la(), lb()));
        assert_eq!(
            trans_cbn(&ILFormula::or(a(), b())),
            Formula::plus(Formula::bang(la()), Formula::bang(lb()))
        );
        assert_eq!(trans_cbn(&ILFormula::True), Formula::Top);
        assert_eq!(trans_cbn(&ILFormula::False), Formula::Zero);
    }

    #[test]
    fn cbv_table() {
        assert_eq!(trans_cbv(&a()), Formula::bang(la()));
        assert_eq!(
            trans_cbv(&ILFormula::imp(a(), b())),
            Formula::bang(Formula::limp(Formula::bang(la()), Formula::bang(lb())))
        );
        assert_eq!(trans_cbv(&ILFormula::False), Formula::Zero);
        assert_eq!(
            trans_cbv(&ILFormula::and(a(), b())),
            Formula::tensor(Formula::bang(la()), Formula::bang(lb()))
        );
    }

    #[test]
    fn zero_one_table() {
        assert_eq!(
            trans_01(&ILFormula::imp(a(), b()), Position::Zero),
            Formula::limp(Formula::bang(la()), Formula::bang(lb()))
        );
        assert_eq!(
            trans_01(&ILFormula::and(a(), b()), Position::Zero),
            Formula::with(Formula::bang(la()), Formula::bang(lb()))
        );
        assert_eq!(trans_01(&ILFormula::True, Position::One), Formula::One);
        assert_eq!(trans_01(&ILFormula::True, Position::Zero), Formula::Top);
        // atoms agree at both positions
        assert_eq!(trans_01(&a(), Position::Zero), trans_01(&a(), Position::One));
    }

    #[test]
    fn sequent_translation_wrappings() {
        let s = ILSequent::new(
            [ILFormula::imp(a(), b()), ILFormula::imp(b(), ILFormula::atom("c"))],
            ILFormula::imp(a(), ILFormula::atom("c")),
        );
        let lc = Formula::atom("c");

        let mult = trans_sequent(&s, TranslationKind::Mult);
        assert_eq!(
            mult.antecedent,
            [Formula::limp(la(), lb()), Formula::limp(lb(), lc.clone())]
                .into_iter()
                .collect()
        );
        assert_eq!(mult.succedent, Some(Formula::limp(la(), lc.clone())));

        let cbn = trans_sequent(&s, TranslationKind::CallByName);
        assert_eq!(
            cbn.antecedent,
            [
                Formula::bang(Formula::limp(Formula::bang(la()), lb())),
                Formula::bang(Formula::limp(Formula::bang(lb()), lc.clone())),
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(
            cbn.succedent,
            Some(Formula::limp(Formula::bang(la()), lc.clone()))
        );

        // (⊢ A → A) at position 1: !(!a ⊸ a)
        let id = ILSequent::conclusion(ILFormula::imp(a(), a()));
        let zo = trans_sequent(&id, TranslationKind::ZeroOne);
        assert!(zo.antecedent.is_empty());
        assert_eq!(
            zo.succedent,
            Some(Formula::bang(Formula::limp(Formula::bang(la()), la())))
        );
    }

    #[test]
    fn mult_image_is_exponential_free() {
        let f = ILFormula::equiv(ILFormula::not(a()), ILFormula::and(a(), b()));
        assert!(trans_mult(&f).is_exponential_free());
    }
}
