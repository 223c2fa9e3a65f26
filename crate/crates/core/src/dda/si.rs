//! Subdirect irreducibility of finite modal algebras, and the equivalent
//! forms of the proper-companion condition.

use serde::Serialize;

use crate::algebra::{Subset, Surface};
use crate::error::OperatorError;
use crate::operator::{check_axiom, Axiom, FiniteOp, MAX_ENUM_ATOMS};

/// Atom cap for the closed-ideal enumeration and the product iteration.
pub const MAX_SI_ATOMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RautForm {
    /// `b · f^∂(b) · (f^∂)²(b) · …` until the sequence repeats.
    General,
    /// `b · f^∂(b)`, valid under axiom 4.
    K4,
    /// `f^∂(b)`, valid under T and 4.
    S4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SiVerdict {
    /// `witness ≠ 1` bounds the product of every `b ≠ 1`.
    Si { witness: Subset },
    NotSi,
}

impl SiVerdict {
    pub fn is_si(&self) -> bool {
        matches!(self, SiVerdict::Si { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SiReport {
    pub verdict: SiVerdict,
    pub form: RautForm,
}

fn cap(f: &FiniteOp, what: &'static str, limit: usize) -> Result<(), OperatorError> {
    let n = f.alg().atom_count();
    if n > limit {
        return Err(OperatorError::AboveCap { what, cap: limit, n });
    }
    Ok(())
}

fn dual_values(f: &FiniteOp) -> Vec<Subset> {
    let values = f.values();
    let full = f.alg().full().0;
    (0..values.len())
        .map(|x| Subset(full & !values[(full & !(x as u32)) as usize].0))
        .collect()
}

/// The product attached to `b` by the chosen form.
fn product(dual: &[Subset], b: Subset, form: RautForm) -> Subset {
    match form {
        RautForm::S4 => dual[b.0 as usize],
        RautForm::K4 => b.intersection(dual[b.0 as usize]),
        RautForm::General => {
            // (f^∂)^k(b) is eventually periodic; stop at the first repeat
            let mut seen = vec![b];
            let mut acc = b;
            let mut d = b;
            loop {
                d = dual[d.0 as usize];
                if seen.contains(&d) {
                    return acc;
                }
                seen.push(d);
                acc = acc.intersection(d);
            }
        }
    }
}

/// The criterion in the given form: SI iff `Σ_{b≠1} P(b) ≠ 1`.
pub fn rautenberg_si_with(f: &FiniteOp, form: RautForm) -> Result<SiVerdict, OperatorError> {
    cap(f, "subdirect irreducibility", MAX_SI_ATOMS)?;
    let full = f.alg().full();
    let dual = dual_values(f);
    let a = (0..f.alg().size() as u32)
        .map(Subset)
        .filter(|b| *b != full)
        .fold(Subset::EMPTY, |acc, b| acc.union(product(&dual, b, form)));
    Ok(if a == full {
        SiVerdict::NotSi
    } else {
        SiVerdict::Si { witness: a }
    })
}

/// Picks the shortest form the axioms allow; axioms are checked exhaustively.
pub fn rautenberg_si(f: &FiniteOp) -> Result<SiReport, OperatorError> {
    cap(f, "subdirect irreducibility", MAX_SI_ATOMS)?;
    let surface = Surface::of(f.alg(), 0, 0);
    let four = check_axiom(f, Axiom::Four, &surface).holds();
    let t = check_axiom(f, Axiom::T, &surface).holds();
    let form = match (t, four) {
        (true, true) => RautForm::S4,
        (false, true) => RautForm::K4,
        _ => RautForm::General,
    };
    Ok(SiReport {
        verdict: rautenberg_si_with(f, form)?,
        form,
    })
}

/// Closed ideals of a finite modal algebra, each given by its top element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceIdealLattice {
    pub closed: Vec<Subset>,
}

impl CongruenceIdealLattice {
    /// The least nonzero closed ideal, if there is one.
    pub fn monolith(&self) -> Option<Subset> {
        let nonzero: Vec<Subset> = self.closed.iter().copied().filter(|c| !c.is_empty()).collect();
        let meet = nonzero.iter().fold(Subset(u32::MAX), |acc, c| acc.intersection(*c));
        (!nonzero.is_empty() && !meet.is_empty()).then_some(meet)
    }

    pub fn is_si(&self) -> bool {
        self.monolith().is_some()
    }
}

/// Every closed ideal is principal on a finite carrier, generated by the
/// `f`-closure `x + f(x) + f²(x) + …` of some `x`.
pub fn congruence_ideal_oracle(f: &FiniteOp) -> Result<CongruenceIdealLattice, OperatorError> {
    cap(f, "closed ideal enumeration", MAX_SI_ATOMS)?;
    let values = f.values();
    let mut closed: Vec<Subset> = (0..f.alg().size() as u32)
        .map(|x| {
            let mut c = Subset(x);
            loop {
                let next = c.union(values[c.0 as usize]);
                if next == c {
                    return c;
                }
                c = next;
            }
        })
        .collect();
    closed.sort();
    closed.dedup();
    Ok(CongruenceIdealLattice { closed })
}

fn elements(f: &FiniteOp) -> Vec<Subset> {
    (0..f.alg().size() as u32).map(Subset).collect()
}

/// `∃x ≠ 0 ∃z ≠ 0 ∀y (0 < y <= x ⇒ z <= f(y))`, by brute force.
pub fn pc_holds(f: &FiniteOp) -> Result<bool, OperatorError> {
    cap(f, "witness brute force", MAX_ENUM_ATOMS)?;
    let values = f.values();
    let all = elements(f);
    Ok(all.iter().filter(|x| !x.is_empty()).any(|x| {
        all.iter()
            .filter(|z| !z.is_empty())
            .any(|z| x.nonzero_below().all(|y| z.is_subset(values[y.0 as usize])))
    }))
}

/// `∃u ≠ 1 ∃v ≠ 1 ∀t (u <= t < 1 ⇒ f^∂(t) <= v)`, by brute force.
pub fn pc_prime_holds(f: &FiniteOp) -> Result<bool, OperatorError> {
    cap(f, "witness brute force", MAX_ENUM_ATOMS)?;
    let dual = dual_values(f);
    let full = f.alg().full();
    let all = elements(f);
    Ok(all.iter().filter(|u| **u != full).any(|u| {
        all.iter().filter(|v| **v != full).any(|v| {
            all.iter()
                .filter(|t| u.is_subset(**t) && **t != full)
                .all(|t| dual[t.0 as usize].is_subset(*v))
        })
    }))
}

/// `∀x ≠ 0: ∏{f(y) : 0 < y <= x} = 0`.
pub fn prodprop_holds(f: &FiniteOp) -> Result<bool, OperatorError> {
    cap(f, "product property", MAX_SI_ATOMS)?;
    Ok(elements(f)
        .iter()
        .filter(|x| !x.is_empty())
        .all(|x| super::lower_meet(f, *x).is_empty()))
}

/// `∀u ≠ 1: Σ{f^∂(y) : u <= y < 1} = 1`.
pub fn prodprop_prime_holds(f: &FiniteOp) -> Result<bool, OperatorError> {
    cap(f, "product property", MAX_SI_ATOMS)?;
    let dual = dual_values(f);
    let full = f.alg().full();
    let all = elements(f);
    Ok(all.iter().filter(|u| **u != full).all(|u| {
        all.iter()
            .filter(|y| u.is_subset(**y) && **y != full)
            .fold(Subset::EMPTY, |acc, y| acc.union(dual[y.0 as usize]))
            == full
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Powerset;

    fn b(n: usize) -> Powerset {
        Powerset::new(n).unwrap()
    }

    #[test]
    fn discriminator_is_si_identity_is_not() {
        let alg = b(2);
        let f1 = FiniteOp::discriminator(&alg);
        let r = rautenberg_si(&f1).unwrap();
        assert_eq!(r.form, RautForm::S4);
        assert_eq!(r.verdict, SiVerdict::Si { witness: Subset(0) });
        assert!(congruence_ideal_oracle(&f1).unwrap().is_si());
        let id = FiniteOp::identity(&alg);
        assert_eq!(rautenberg_si(&id).unwrap().verdict, SiVerdict::NotSi);
        let lattice = congruence_ideal_oracle(&id).unwrap();
        assert_eq!(lattice.closed, vec![Subset(0), Subset(1), Subset(2), Subset(3)]);
        assert!(!lattice.is_si());
    }

    #[test]
    fn forms_agree_where_they_apply() {
        let alg = b(2);
        for f in FiniteOp::enumerate(&alg).unwrap() {
            let general = rautenberg_si_with(&f, RautForm::General).unwrap();
            let report = rautenberg_si(&f).unwrap();
            assert_eq!(general.is_si(), report.verdict.is_si(), "{f}");
            assert_eq!(general.is_si(), congruence_ideal_oracle(&f).unwrap().is_si(), "{f}");
        }
    }

    #[test]
    fn companion_conditions_on_the_bounds() {
        let alg = b(2);
        let f0 = FiniteOp::zero(&alg);
        let f1 = FiniteOp::discriminator(&alg);
        assert!(!pc_holds(&f0).unwrap());
        assert!(!pc_prime_holds(&f0).unwrap());
        assert!(prodprop_holds(&f0).unwrap());
        assert!(prodprop_prime_holds(&f0).unwrap());
        assert!(pc_holds(&f1).unwrap());
        assert!(pc_prime_holds(&f1).unwrap());
        assert!(!prodprop_holds(&f1).unwrap());
        assert!(!prodprop_prime_holds(&f1).unwrap());
    }
}
