//! The intuitionistic source language: formulas, sequents and the
//! elimination of defined connectives.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::multiset::Multiset;

/// A propositional intuitionistic formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ILFormula {
    Atom(String),
    True,
    False,
    And(Box<ILFormula>, Box<ILFormula>),
    Or(Box<ILFormula>, Box<ILFormula>),
    Imp(Box<ILFormula>, Box<ILFormula>),
    Not(Box<ILFormula>),
    Equiv(Box<ILFormula>, Box<ILFormula>),
}

impl ILFormula {
    pub fn atom(name: impl Into<String>) -> ILFormula {
        ILFormula::Atom(name.into())
    }

    pub fn and(a: ILFormula, b: ILFormula) -> ILFormula {
        ILFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ILFormula, b: ILFormula) -> ILFormula {
        ILFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: ILFormula, b: ILFormula) -> ILFormula {
        ILFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn not(a: ILFormula) -> ILFormula {
        ILFormula::Not(Box::new(a))
    }

    pub fn equiv(a: ILFormula, b: ILFormula) -> ILFormula {
        ILFormula::Equiv(Box::new(a), Box::new(b))
    }

    /// True iff the formula lies in the `(→, ∧)` fragment, i.e. contains no
    /// disjunction. `¬` and `∼` are definable and do not leave the fragment.
    pub fn is_rudimentary(&self) -> bool {
        use ILFormula::*;
        match self {
            Atom(_) | True | False => true,
            Or(..) => false,
            And(a, b) | Imp(a, b) | Equiv(a, b) => a.is_rudimentary() && b.is_rudimentary(),
            Not(a) => a.is_rudimentary(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        use ILFormula::*;
        match self {
            Atom(p) => {
                out.insert(p);
            }
            True | False => {}
            And(a, b) | Or(a, b) | Imp(a, b) | Equiv(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Not(a) => a.collect_atoms(out),
        }
    }
}

/// Rewrites away the defined connectives: `A ∼ B` becomes
/// `(A → B) ∧ (B → A)` and `¬A` becomes `A → f`. The result contains no
/// `Equiv` and no `Not`; all other structure is preserved, and the function
/// is idempotent.
pub fn expand_defined(f: &ILFormula) -> ILFormula {
    use ILFormula::*;
    match f {
        Atom(_) | True | False => f.clone(),
        And(a, b) => ILFormula::and(expand_defined(a), expand_defined(b)),
        Or(a, b) => ILFormula::or(expand_defined(a), expand_defined(b)),
        Imp(a, b) => ILFormula::imp(expand_defined(a), expand_defined(b)),
        Not(a) => ILFormula::imp(expand_defined(a), False),
        Equiv(a, b) => {
            let ea = expand_defined(a);
            let eb = expand_defined(b);
            ILFormula::and(
                ILFormula::imp(ea.clone(), eb.clone()),
                ILFormula::imp(eb, ea),
            )
        }
    }
}

/// An intuitionistic sequent. Unlike linear sequents, the succedent is
/// always present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ILSequent {
    pub antecedent: Multiset<ILFormula>,
    pub succedent: ILFormula,
}

impl ILSequent {
    pub fn new(antecedent: impl IntoIterator<Item = ILFormula>, succedent: ILFormula) -> Self {
        ILSequent {
            antecedent: antecedent.into_iter().collect(),
            succedent,
        }
    }

    pub fn conclusion(succedent: ILFormula) -> Self {
        ILSequent::new([], succedent)
    }
}

impl std::fmt::Display for ILSequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.antecedent.is_empty() {
            write!(f, "{} ", self.antecedent)?;
        }
        write!(f, "|- {}", self.succedent)
    }
}

/// Classical truth-table validity of a sequent (conjunction of antecedents
/// entails the succedent under every boolean assignment).
///
/// Classical invalidity refutes intuitionistic provability, which makes
/// this a cheap one-sided reference check for the intuitionistic prover.
pub fn classically_valid(s: &ILSequent) -> bool {
    let mut atoms: BTreeSet<&str> = BTreeSet::new();
    for f in s.antecedent.iter() {
        atoms.extend(f.atoms());
    }
    atoms.extend(s.succedent.atoms());
    let atoms: Vec<&str> = atoms.into_iter().collect();
    assert!(atoms.len() < 24, "too many atoms for a truth-table check");

    for bits in 0u32..(1 << atoms.len()) {
        let value = |name: &str| {
            let i = atoms.iter().position(|a| *a == name).unwrap();
            bits & (1 << i) != 0
        };
        let premises_hold = s.antecedent.iter().all(|f| eval(f, &value));
        if premises_hold && !eval(&s.succedent, &value) {
            return false;
        }
    }
    true
}

fn eval(f: &ILFormula, value: &dyn Fn(&str) -> bool) -> bool {
    use ILFormula::*;
    match f {
        Atom(p) => value(p),
        True => true,
        False => false,
        And(a, b) => eval(a, value) && eval(b, value),
        Or(a, b) => eval(a, value) || eval(b, value),
        Imp(a, b) => !eval(a, value) || eval(b, value),
        Not(a) => !eval(a, value),
        Equiv(a, b) => eval(a, value) == eval(b, value),
    }
}

impl std::fmt::Display for ILFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt_il(self, f, 0)
    }
}

/// Precedence-aware printer in TPTP-like concrete syntax.
pub(crate) fn fmt_il(
    f: &ILFormula,
    out: &mut std::fmt::Formatter<'_>,
    prec: u8,
) -> std::fmt::Result {
    use ILFormula::*;
    // looser to tighter: <=> (1), => (2), | (3), & (4), ~ (5)
    let level = match f {
        Equiv(..) => 1,
        Imp(..) => 2,
        Or(..) => 3,
        And(..) => 4,
        Not(_) => 5,
        Atom(_) | True | False => 6,
    };
    let paren = level < prec;
    if paren {
        write!(out, "(")?;
    }
    match f {
        Atom(p) => write!(out, "{p}")?,
        True => write!(out, "$true")?,
        False => write!(out, "$false")?,
        Not(a) => {
            write!(out, "~")?;
            fmt_il(a, out, 5)?;
        }
        And(a, b) => {
            fmt_il(a, out, 4)?;
            write!(out, " & ")?;
            fmt_il(b, out, 5)?;
        }
        Or(a, b) => {
            fmt_il(a, out, 3)?;
            write!(out, " | ")?;
            fmt_il(b, out, 4)?;
        }
        Imp(a, b) => {
            fmt_il(a, out, 3)?;
            write!(out, " => ")?;
            fmt_il(b, out, 2)?;
        }
        Equiv(a, b) => {
            fmt_il(a, out, 2)?;
            write!(out, " <=> ")?;
            fmt_il(b, out, 2)?;
        }
    }
    if paren {
        write!(out, ")")?;
    }
    Ok(())
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

    #[test]
    fn expand_equiv_and_not() {
        assert_eq!(
            expand_defined(&ILFormula::equiv(a(), b())),
            ILFormula::and(ILFormula::imp(a(), b()), ILFormula::imp(b(), a()))
        );
        assert_eq!(
            expand_defined(&ILFormula::not(a())),
            ILFormula::imp(a(), ILFormula::False)
        );
        assert_eq!(expand_defined(&a()), a());
    }

    #[test]
    fn expand_defined_is_idempotent() {
        let f = ILFormula::equiv(ILFormula::not(a()), ILFormula::and(b(), ILFormula::True));
        let once = expand_defined(&f);
        assert_eq!(expand_defined(&once), once);
    }

    #[test]
    fn truth_table_check() {
        // a ∨ b ⊢ a is classically refuted by a=false, b=true.
        let s = ILSequent::new([ILFormula::or(a(), b())], a());
        assert!(!classically_valid(&s));
        let t = ILSequent::conclusion(ILFormula::imp(a(), a()));
        assert!(classically_valid(&t));
    }
}
