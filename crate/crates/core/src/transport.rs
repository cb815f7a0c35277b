//! Weight- and character-level transport: the two parameter isomorphisms,
//! odd reflections, twisting flips and within-block shifts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{bilinear_form, dominance_decompose, Root, Weight, WeylElement, ZetaParam};
use crate::character::{maximal_elements, FormalCharacter, VermaVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// `(x,y,z) ↦ (x,z,y)`, ζ ↦ 1/ζ.
    IsoInvZeta,
    /// `(x,y,z) ↦ (z,y,x)`, ζ ↦ −1−ζ.
    IsoNegZeta,
    OddReflection { root: Root },
    Twist { index: usize },
    Shift { root: Root, n: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TransportStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub zeta_before: ZetaParam,
    pub zeta_after: ZetaParam,
}

impl TransportStep {
    pub fn same_zeta(kind: StepKind, zeta: &ZetaParam) -> Self {
        TransportStep { kind, zeta_before: zeta.clone(), zeta_after: zeta.clone() }
    }

    /// Applies the step to a weight.
    pub fn apply(&self, lambda: &Weight) -> Weight {
        match self.kind {
            StepKind::IsoInvZeta => IsoKind::InvZeta.map_weight(lambda),
            StepKind::IsoNegZeta => IsoKind::NegZeta.map_weight(lambda),
            StepKind::OddReflection { root } => odd_reflection_hw(lambda, &root, &self.zeta_before).unwrap_or_else(|_| lambda.clone()),
            StepKind::Twist { index } => WeylElement::s(index).act(lambda),
            StepKind::Shift { root, n } => lambda.shift(&root, n),
        }
    }
}

/// Replays a step list from left to right.
pub fn replay_steps(lambda: &Weight, steps: &[TransportStep]) -> Weight {
    steps.iter().fold(lambda.clone(), |w, s| s.apply(&w))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    InvZeta,
    NegZeta,
}

impl IsoKind {
    pub fn map_weight(self, w: &Weight) -> Weight {
        match self {
            IsoKind::InvZeta => Weight::new(w.x.clone(), w.z.clone(), w.y.clone()),
            IsoKind::NegZeta => Weight::new(w.z.clone(), w.y.clone(), w.x.clone()),
        }
    }

    pub fn map_zeta(self, zeta: &ZetaParam) -> ZetaParam {
        match self {
            IsoKind::InvZeta => zeta.inverse(),
            IsoKind::NegZeta => zeta.negated_shift(),
        }
    }

    pub fn step(self, zeta: &ZetaParam) -> TransportStep {
        let kind = match self {
            IsoKind::InvZeta => StepKind::IsoInvZeta,
            IsoKind::NegZeta => StepKind::IsoNegZeta,
        };
        TransportStep { kind, zeta_before: zeta.clone(), zeta_after: self.map_zeta(zeta) }
    }
}

/// Transports a ρ-shifted weight label across a parameter isomorphism.
///
/// Both coordinate permutations fix ρ up to the permutation itself only for
/// `InvZeta`; for `NegZeta` this is the character-level symbol swap.
pub fn iso_transport_weight(lambda: &Weight, kind: IsoKind, zeta: &ZetaParam) -> (Weight, ZetaParam) {
    (kind.map_weight(lambda), kind.map_zeta(zeta))
}

/// A finite map from exponents to coefficients, with no truncation cone.
/// This is what a character becomes after a transport that does not
/// preserve the Borel subalgebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MonomialMap {
    pub terms: BTreeMap<Weight, i64>,
}

impl MonomialMap {
    pub fn from_character(c: &FormalCharacter) -> Self {
        MonomialMap { terms: c.monomials().into_iter().collect() }
    }

    pub fn map(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut terms = BTreeMap::new();
        for (w, k) in &self.terms {
            *terms.entry(f(w)).or_insert(0) += k;
        }
        terms.retain(|_, k| *k != 0);
        MonomialMap { terms }
    }

    /// Restricts to the truncation cone of a character anchored at `base`.
    pub fn restrict(&self, base: Weight, depth: u32) -> FormalCharacter {
        let top = base.unshifted();
        let mut c = FormalCharacter::zero(base, depth);
        for (w, k) in &self.terms {
            if let Some((a, m, n)) = dominance_decompose(&top, w) {
                if a + m + n <= depth as i64 {
                    c.add_monomial(w, *k).expect("dominance implies same coset");
                }
            }
        }
        c
    }
}

/// Transports a character term by term: `e^{(a,b,c)} ↦ e^{(a,c,b)}` or `e^{(c,b,a)}`.
pub fn iso_transport_character(c: &MonomialMap, kind: IsoKind, zeta: &ZetaParam) -> (MonomialMap, ZetaParam) {
    (c.map(|w| kind.map_weight(w)), kind.map_zeta(zeta))
}

/// Under `InvZeta` the Borel is preserved, so a truncated character stays a
/// truncated character (anchor and cone are permuted consistently).
pub fn iso_inv_zeta_character(c: &FormalCharacter, zeta: &ZetaParam) -> (FormalCharacter, ZetaParam) {
    let base = IsoKind::InvZeta.map_weight(c.base());
    let mapped = MonomialMap::from_character(c).map(|w| IsoKind::InvZeta.map_weight(w));
    (mapped.restrict(base, c.depth()), zeta.inverse())
}

/// Highest weight after an odd reflection at `α`: `μ + α` if `(μ, α) = 0`, else `μ`.
pub fn odd_reflection_hw(mu: &Weight, alpha: &Root, zeta: &ZetaParam) -> Result<Weight> {
    if !alpha.is_odd() {
        return Err(Error::EvenRoot(alpha.to_string()));
    }
    if bilinear_form(mu, &alpha.as_weight(), zeta).is_zero() {
        Ok(mu.shift(alpha, 1))
    } else {
        Ok(mu.clone())
    }
}

/// Result of twisting a tilting flag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistedFlag {
    pub flag: VermaVector,
    pub maximum: Weight,
}

/// Flips coordinate `i` of a block representative, and optionally of every
/// member of a tilting flag, returning the unique maximum of the new flag.
pub fn twist_transport(
    lambda: &Weight,
    i: usize,
    payload: Option<&VermaVector>,
    _zeta: &ZetaParam,
) -> Result<(Weight, Option<TwistedFlag>)> {
    if lambda.coord(i).is_integer() {
        return Err(Error::TwistNotEquivalence { index: i, weight: lambda.to_string() });
    }
    let s = WeylElement::s(i);
    let image = s.act(lambda);
    let Some(flag) = payload else {
        return Ok((image, None));
    };
    let flag = flag.map_weights(|w| s.act(w));
    let maxima = maximal_elements(flag.terms().keys());
    if maxima.len() != 1 {
        return Err(Error::NonUniqueMaximum(format!("{:?}", flag.support())));
    }
    let maximum = maxima.into_iter().next().unwrap();
    for w in flag.terms().keys() {
        if dominance_decompose(&maximum, w).is_none() {
            return Err(Error::NonUniqueMaximum(format!("{:?}", flag.support())));
        }
    }
    Ok((image, Some(TwistedFlag { flag, maximum })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ALPHA0;
    use crate::rational::Rational;

    fn zeta(n: i64) -> ZetaParam {
        ZetaParam::new(Rational::from_int(n)).unwrap()
    }
    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn isos_are_involutions() {
        let z = ZetaParam::new(Rational::new(5, 7)).unwrap();
        let l = w("1/3,-2,5/4");
        for kind in [IsoKind::InvZeta, IsoKind::NegZeta] {
            let (l1, z1) = iso_transport_weight(&l, kind, &z);
            let (l2, z2) = iso_transport_weight(&l1, kind, &z1);
            assert_eq!((l2, z2), (l.clone(), z.clone()));
        }
    }

    #[test]
    fn inv_zeta_example() {
        let z = zeta(3);
        let x = Rational::new(1, 5);
        let l = Weight::new(x.clone(), Rational::zero(), -(Rational::from_int(4)) * &x / Rational::from_int(3));
        let (m, z1) = iso_transport_weight(&l, IsoKind::InvZeta, &z);
        let expected_y = -(z1.value() + 1) * &x;
        assert_eq!(m, Weight::new(x, expected_y, Rational::zero()));
    }

    #[test]
    fn odd_reflection_examples() {
        let z = zeta(2);
        // (x, −(1+ζ)x, 0) with x = 1/5
        let l = w("1/5,-3/5,0");
        let r = odd_reflection_hw(&l, &ALPHA0, &z).unwrap();
        assert_eq!(r, l.shift(&ALPHA0, 1));
        let typical = w("1/2,0,0");
        assert_eq!(odd_reflection_hw(&typical, &ALPHA0, &z).unwrap(), typical);
        assert!(odd_reflection_hw(&l, &crate::algebra::ALPHA1, &z).is_err());
    }

    #[test]
    fn twist_examples() {
        let z = zeta(2);
        let l = w("4/3,0,-2");
        assert_eq!(twist_transport(&l, 0, None, &z).unwrap().0, w("-4/3,0,-2"));
        assert!(matches!(twist_transport(&l, 1, None, &z), Err(Error::TwistNotEquivalence { .. })));
        let flag = VermaVector::from_support([l.clone(), w("1/3,1,-1"), w("1/3,-1,-1")]);
        let (_, t) = twist_transport(&l, 0, Some(&flag), &z).unwrap();
        let t = t.unwrap();
        assert_eq!(t.maximum, w("-1/3,1,-1"));
        assert_eq!(t.flag.len(), 3);
    }

    #[test]
    fn character_iso_roundtrip() {
        let z = zeta(2);
        let c = crate::character::verma_character(&w("1/3,1/5,1/7"), 5, &z);
        let m = MonomialMap::from_character(&c);
        for kind in [IsoKind::InvZeta, IsoKind::NegZeta] {
            let (m1, z1) = iso_transport_character(&m, kind, &z);
            let (m2, _) = iso_transport_character(&m1, kind, &z1);
            assert_eq!(m2, m);
        }
        let (c1, z1) = iso_inv_zeta_character(&c, &z);
        let (c2, _) = iso_inv_zeta_character(&c1, &z1);
        assert_eq!(c2, c);
    }
}
