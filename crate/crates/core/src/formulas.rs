//! Closed Verma-flag formulas: generic blocks, one-integer irreducibles,
//! two-integer tilting modules, typical tilting modules, and the flag
//! necessity predicate.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{
    atypical_data, is_antidominant, Root, Weight, WeylElement,
    ZetaParam, BETA, GAMMA,
};
use crate::block::{classify_block, family_member, Axis, BlockKind};
use crate::character::VermaVector;
use crate::error::{Error, Result};

/// Flags attached to a generic atypical weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericFlags {
    pub root: Root,
    /// `L_λ = Σ_{i=0}^{N} (−1)^i M_{λ−iα}`.
    pub irr: VermaVector,
    /// `T_{λ+α} = M_{λ+α} + M_λ`.
    pub tilt: VermaVector,
    /// `P_λ = M_λ + M_{λ+α}`.
    pub proj: VermaVector,
}

pub fn generic_flags(lambda: &Weight, zeta: &ZetaParam, n: u32) -> Result<GenericFlags> {
    let desc = classify_block(lambda, zeta)?;
    if desc.kind != BlockKind::Generic {
        return Err(Error::WrongBlockKind {
            weight: lambda.to_string(),
            expected: BlockKind::Generic.to_string(),
            found: desc.kind.to_string(),
        });
    }
    let alpha = desc.atypical_roots[0];
    let irr = VermaVector::from_terms((0..=n as i64).map(|i| (lambda.shift(&alpha, -i), if i % 2 == 0 { 1 } else { -1 })));
    let pair = VermaVector::from_support([lambda.shift(&alpha, 1), lambda.clone()]);
    Ok(GenericFlags { root: alpha, irr, tilt: pair.clone(), proj: pair })
}

/// The four label families of a canonical one-integer block `λ₀ = (0, ζz, z)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OneIntFamily {
    PlusBeta,
    PlusGamma,
    MinusBeta,
    MinusGamma,
}

impl OneIntFamily {
    pub const ALL: [OneIntFamily; 4] =
        [OneIntFamily::PlusBeta, OneIntFamily::PlusGamma, OneIntFamily::MinusBeta, OneIntFamily::MinusGamma];

    /// The label `λ₀ ± nβ` or `λ₀ ± nγ`.
    pub fn label(self, lambda0: &Weight, n: i64) -> Weight {
        match self {
            OneIntFamily::PlusBeta => lambda0.shift(&BETA, n),
            OneIntFamily::PlusGamma => lambda0.shift(&GAMMA, n),
            OneIntFamily::MinusBeta => lambda0.shift(&BETA, -n),
            OneIntFamily::MinusGamma => lambda0.shift(&GAMMA, -n),
        }
    }

    /// Smallest admissible `n`.
    pub fn min_n(self) -> i64 {
        match self {
            OneIntFamily::PlusBeta | OneIntFamily::PlusGamma => 0,
            OneIntFamily::MinusBeta | OneIntFamily::MinusGamma => 1,
        }
    }
}

/// True iff `λ₀ = (0, ζz, z)` with `z, ζz ∉ Z`.
pub fn is_one_integer_origin(lambda0: &Weight, zeta: &ZetaParam) -> bool {
    lambda0.x.is_zero()
        && !lambda0.z.is_integer()
        && !lambda0.y.is_integer()
        && lambda0.y == zeta.value() * &lambda0.z
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Irreducible `L_{λ₀ ± nβ}` / `L_{λ₀ ± nγ}` in the Verma basis, with every ray
/// truncated to indices `≥ −N`.
pub fn one_integer_irreducible(
    lambda0: &Weight,
    family: OneIntFamily,
    n: i64,
    zeta: &ZetaParam,
    big_n: u32,
) -> Result<VermaVector> {
    if !is_one_integer_origin(lambda0, zeta) {
        return Err(Error::NotCanonical(lambda0.to_string()));
    }
    if n < family.min_n() {
        return Err(Error::Parse(format!("n = {n} is below the admissible range for {family:?}")));
    }
    let lo = -(big_n as i64);
    let (main, other) = match family {
        OneIntFamily::PlusBeta | OneIntFamily::MinusBeta => (BETA, GAMMA),
        OneIntFamily::PlusGamma | OneIntFamily::MinusGamma => (GAMMA, BETA),
    };
    let mut v = VermaVector::new();
    match family {
        OneIntFamily::PlusBeta | OneIntFamily::PlusGamma => {
            for i in lo..=n {
                v.add(lambda0.shift(&main, i), sign(n + i));
            }
            for j in lo..=(-n - 1) {
                v.add(lambda0.shift(&other, j), sign(n + j));
            }
        }
        OneIntFamily::MinusBeta | OneIntFamily::MinusGamma => {
            for i in lo..=(-n) {
                v.add(lambda0.shift(&main, i), sign(n + i));
            }
        }
    }
    Ok(v)
}

/// Closure of `{λ}` under `s_i` at positive integral coordinates, multiplicity one.
pub fn typical_tilting(lambda: &Weight, zeta: &ZetaParam) -> VermaVector {
    if is_antidominant(lambda, zeta) {
        return VermaVector::from_support([lambda.clone()]);
    }
    VermaVector::from_support(reflection_closure([lambda.clone()].into_iter().collect(), usize::MAX))
}

fn reflection_closure(mut set: BTreeSet<Weight>, rounds: usize) -> BTreeSet<Weight> {
    for _ in 0..rounds {
        let new: Vec<Weight> = set
            .iter()
            .flat_map(|mu| {
                (0..3).filter(|&i| mu.coord(i).is_positive_integer()).map(|i| WeylElement::s(i).act(mu)).collect::<Vec<_>>()
            })
            .filter(|w| !set.contains(w))
            .collect();
        if new.is_empty() {
            break;
        }
        set.extend(new);
    }
    set
}

/// Standard multiplicity-free set: `{λ, λ−α}` closed under `s_i` at positive
/// integral coordinates.
pub fn standard_tilting_set(lambda: &Weight, zeta: &ZetaParam) -> BTreeSet<Weight> {
    let mut set = BTreeSet::from([lambda.clone()]);
    for d in atypical_data(lambda, zeta) {
        set.insert(lambda.shift(&d.root, -1));
    }
    reflection_closure(set, usize::MAX)
}

/// Family label `w'·λ_k` used in the exceptional tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilyLabel {
    /// Coordinates negated by `w'` (empty for `λ_k` itself).
    pub conj: &'static [usize],
    pub k: KIndex,
}

/// A family index, possibly depending on `ℓ`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KIndex {
    Const(i64),
    /// `ℓ + c`
    Ell(i64),
    /// `−ℓ + c`
    NegEll(i64),
}

impl KIndex {
    pub fn eval(self, ell: i64) -> i64 {
        match self {
            KIndex::Const(c) => c,
            KIndex::Ell(c) => ell + c,
            KIndex::NegEll(c) => -ell + c,
        }
    }
}

impl FamilyLabel {
    pub fn weight(&self, axis: Axis, ell: i64, zeta: &ZetaParam) -> Weight {
        WeylElement::from_indices(self.conj).act(&family_member(axis, ell, self.k.eval(ell), zeta))
    }

    /// Text form such as `λ^12_{-1}`.
    pub fn name(&self, ell: i64) -> String {
        let sup: String = self.conj.iter().map(|i| i.to_string()).collect();
        let k = self.k.eval(ell);
        if sup.is_empty() {
            format!("λ_{{{k}}}")
        } else {
            format!("λ^{sup}_{{{k}}}")
        }
    }
}

const fn lab(conj: &'static [usize], k: KIndex) -> FamilyLabel {
    FamilyLabel { conj, k }
}

use KIndex::{Const as K, Ell, NegEll};

const ID: &[usize] = &[];
const S0: &[usize] = &[0];
const S1: &[usize] = &[1];
const S2: &[usize] = &[2];

/// One exceptional tilting flag: head label and the full flag in table order.
pub struct ExceptionalCase {
    pub head: FamilyLabel,
    pub flag: &'static [FamilyLabel],
}

const X_ELL_GT1: &[ExceptionalCase] = &[
    ExceptionalCase { head: lab(ID, K(1)), flag: &[lab(ID, K(1)), lab(ID, K(0)), lab(ID, K(-1))] },
    ExceptionalCase {
        head: lab(S2, K(1)),
        flag: &[lab(S2, K(1)), lab(S2, K(0)), lab(S2, K(-1)), lab(ID, K(1)), lab(ID, K(0)), lab(ID, K(-1))],
    },
    ExceptionalCase {
        head: lab(ID, NegEll(1)),
        flag: &[lab(ID, NegEll(1)), lab(ID, NegEll(0)), lab(ID, NegEll(-1))],
    },
    ExceptionalCase {
        head: lab(S1, NegEll(1)),
        flag: &[
            lab(S1, NegEll(1)),
            lab(S1, NegEll(0)),
            lab(S1, NegEll(-1)),
            lab(ID, NegEll(1)),
            lab(ID, NegEll(0)),
            lab(ID, NegEll(-1)),
        ],
    },
];

const X_ELL_EQ1: &[ExceptionalCase] = &[
    ExceptionalCase {
        head: lab(ID, K(0)),
        flag: &[lab(ID, K(0)), lab(S1, K(-1)), lab(ID, K(-1)), lab(S1, K(-2)), lab(ID, K(-2))],
    },
    ExceptionalCase {
        head: lab(ID, K(1)),
        flag: &[lab(ID, K(1)), lab(ID, K(0)), lab(ID, K(-1)), lab(ID, K(-2))],
    },
    ExceptionalCase {
        head: lab(S2, K(1)),
        flag: &[lab(S2, K(1)), lab(ID, K(1)), lab(S2, K(0)), lab(ID, K(0)), lab(ID, K(-1))],
    },
];

/// Shared by the axis-z and axis-y families (same labels, different coordinates).
const YZ_ELL_GT1: &[ExceptionalCase] = &[
    ExceptionalCase { head: lab(ID, Ell(-1)), flag: &[lab(ID, Ell(-1)), lab(ID, Ell(0)), lab(ID, Ell(1))] },
    ExceptionalCase {
        head: lab(S0, Ell(1)),
        flag: &[lab(S0, Ell(1)), lab(ID, Ell(1)), lab(S0, Ell(0)), lab(ID, Ell(0)), lab(S0, Ell(-1)), lab(ID, Ell(-1))],
    },
];

const YZ_ELL_EQ1: &[ExceptionalCase] = &[
    ExceptionalCase { head: lab(ID, K(0)), flag: &[lab(ID, K(0)), lab(ID, K(-1)), lab(ID, K(1)), lab(ID, K(2))] },
    ExceptionalCase {
        head: lab(S0, K(2)),
        flag: &[lab(S0, K(2)), lab(ID, K(2)), lab(S0, K(1)), lab(ID, K(1)), lab(ID, K(0))],
    },
];

/// The exceptional table for a two-integer family.
pub fn exceptional_cases(axis: Axis, ell: i64) -> &'static [ExceptionalCase] {
    match (axis, ell == 1) {
        (Axis::X, false) => X_ELL_GT1,
        (Axis::X, true) => X_ELL_EQ1,
        (_, false) => YZ_ELL_GT1,
        (_, true) => YZ_ELL_EQ1,
    }
}

/// How a tilting flag was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TiltingSource {
    TypicalAntidominant,
    TypicalClosure,
    Exceptional,
    Standard,
}

/// Tilting flag with the rule that produced it.
pub fn tilting_with_source(lambda: &Weight, zeta: &ZetaParam) -> Result<(VermaVector, TiltingSource)> {
    if lambda.integral_count() == 3 {
        return Err(Error::IntegralWeight(lambda.to_string()));
    }
    if atypical_data(lambda, zeta).is_empty() {
        let src = if is_antidominant(lambda, zeta) {
            TiltingSource::TypicalAntidominant
        } else {
            TiltingSource::TypicalClosure
        };
        return Ok((typical_tilting(lambda, zeta), src));
    }
    let desc = classify_block(lambda, zeta)?;
    if desc.kind != BlockKind::TwoInteger {
        return Err(Error::WrongBlockKind {
            weight: lambda.to_string(),
            expected: BlockKind::TwoInteger.to_string(),
            found: desc.kind.to_string(),
        });
    }
    let fam = desc.family.unwrap();
    if !fam.canonical {
        return Err(Error::NotCanonical(lambda.to_string()));
    }
    let axis = desc.axis.unwrap();
    for case in exceptional_cases(axis, fam.ell) {
        if case.head.weight(axis, fam.ell, zeta) == *lambda {
            let flag = VermaVector::from_support(case.flag.iter().map(|l| l.weight(axis, fam.ell, zeta)));
            return Ok((flag, TiltingSource::Exceptional));
        }
    }
    Ok((VermaVector::from_support(standard_tilting_set(lambda, zeta)), TiltingSource::Standard))
}

/// Verma flag of the tilting module `T_λ` for a typical weight or a weight in
/// a canonical two-integer block.
pub fn two_integer_tilting(lambda: &Weight, zeta: &ZetaParam) -> Result<VermaVector> {
    tilting_with_source(lambda, zeta).map(|(v, _)| v)
}

/// Verma flag members forced by the necessity rules: `λ`, `λ − β` for atypical
/// `β`, the two `−1`-coordinate corrections, closed under `s_i` at positive
/// integral coordinates for at most `depth` rounds.
pub fn required_flag_members(lambda: &Weight, zeta: &ZetaParam, depth: u32) -> BTreeSet<Weight> {
    let mut set = BTreeSet::from([lambda.clone()]);
    let minus_one = crate::rational::Rational::from_int(-1);
    for d in atypical_data(lambda, zeta) {
        let b = d.root;
        set.insert(lambda.shift(&b, -1));
        if lambda.y == minus_one && b.sigma() == -1 {
            set.insert(lambda.plus_ints(-2, 0, -2 * b.tau()));
        }
        if lambda.z == minus_one && b.tau() == -1 {
            set.insert(lambda.plus_ints(-2, -2 * b.sigma(), 0));
        }
    }
    reflection_closure(set, depth as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dominance_decompose;
    use crate::rational::Rational;

    fn zeta(n: i64) -> ZetaParam {
        ZetaParam::new(Rational::from_int(n)).unwrap()
    }
    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn generic_examples() {
        let l = w("1/2,1/2,1/2");
        let g = generic_flags(&l, &zeta(1), 2).unwrap();
        let a = Root::odd(1, 1);
        assert_eq!(g.irr, VermaVector::from_terms([(l.clone(), 1), (l.shift(&a, -1), -1), (l.shift(&a, -2), 1)]));
        assert_eq!(g.tilt.get(&l.shift(&a, 1)), 1);
        assert_eq!(generic_flags(&l, &zeta(1), 0).unwrap().irr, VermaVector::from_support([l]));
        assert!(generic_flags(&w("4/3,0,-2"), &zeta(2), 2).is_err());
    }

    #[test]
    fn one_integer_examples() {
        let z = zeta(3);
        let l0 = w("0,3/2,1/2");
        let v = one_integer_irreducible(&l0, OneIntFamily::PlusBeta, 0, &z, 2).unwrap();
        let expected = VermaVector::from_terms([
            (l0.clone(), 1),
            (l0.shift(&BETA, -1), -1),
            (l0.shift(&GAMMA, -1), -1),
            (l0.shift(&BETA, -2), 1),
            (l0.shift(&GAMMA, -2), 1),
        ]);
        assert_eq!(v, expected);
        let v = one_integer_irreducible(&l0, OneIntFamily::MinusBeta, 1, &z, 2).unwrap();
        assert_eq!(v, VermaVector::from_terms([(l0.shift(&BETA, -1), 1), (l0.shift(&BETA, -2), -1)]));
        let v = one_integer_irreducible(&l0, OneIntFamily::PlusBeta, 0, &z, 0).unwrap();
        assert_eq!(v, VermaVector::from_support([l0.clone()]));
        assert!(matches!(
            one_integer_irreducible(&w("0,-3/2,1/2"), OneIntFamily::PlusBeta, 0, &z, 2),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn tilting_spec_example() {
        let l = w("4/3,0,-2");
        let (t, src) = tilting_with_source(&l, &zeta(2)).unwrap();
        assert_eq!(src, TiltingSource::Standard);
        assert_eq!(t, VermaVector::from_support([l.clone(), w("1/3,1,-1"), w("1/3,-1,-1")]));
        assert!(matches!(two_integer_tilting(&w("-4/3,0,-2"), &zeta(2)), Err(Error::NotCanonical(_))));
    }

    #[test]
    fn typical_tilting_cases() {
        let z = zeta(2);
        let l = w("1/2,0,0");
        assert_eq!(two_integer_tilting(&l, &z).unwrap(), VermaVector::from_support([l.clone()]));
        let l = w("1/2,1,2");
        assert_eq!(two_integer_tilting(&l, &z).unwrap().len(), 4);
    }

    #[test]
    fn exceptional_flags_live_below_their_heads() {
        for zn in [2i64, 3, 5] {
            let z = zeta(zn);
            for axis in [Axis::X, Axis::Y, Axis::Z] {
                for ell in 1..5 {
                    for case in exceptional_cases(axis, ell) {
                        let head = case.head.weight(axis, ell, &z);
                        if head.integral_count() == 3 {
                            continue;
                        }
                        let (t, src) = tilting_with_source(&head, &z).unwrap();
                        assert_eq!(src, TiltingSource::Exceptional);
                        assert_eq!(t.len(), case.flag.len());
                        for mu in t.support() {
                            assert!(dominance_decompose(&head, &mu).is_some(), "{mu} !<= {head}");
                            assert!(crate::block::same_block(&head, &mu, &z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn required_members_examples() {
        let z = zeta(2);
        assert_eq!(required_flag_members(&w("1/2,0,0"), &z, 5), BTreeSet::from([w("1/2,0,0")]));
        let g = w("1/2,1/2,1/2");
        let r = required_flag_members(&g, &zeta(1), 5);
        assert_eq!(r, BTreeSet::from([g.clone(), g.shift(&Root::odd(1, 1), -1)]));
        assert!(required_flag_members(&w("1/3,1,-1"), &z, 5).contains(&w("1/3,-1,-1")));
    }
}
