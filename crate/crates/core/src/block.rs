//! Block classification, linkage, orbit enumeration and normal forms.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{
    atypical_data, casimir, integral_weyl_group, Root, Weight, WeylElement, WeylSubgroup, ZetaParam,
    ALPHA0,
};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::transport::{StepKind, TransportStep};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    Typical,
    Generic,
    OneInteger,
    TwoInteger,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Typical => "typical",
            BlockKind::Generic => "generic",
            BlockKind::OneInteger => "one-integer",
            BlockKind::TwoInteger => "two-integer",
        })
    }
}

/// Distinguished coordinate of a block: the integral one for one-integer
/// blocks, the non-integral one for two-integer blocks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        [Axis::X, Axis::Y, Axis::Z][i]
    }

    /// The two other coordinates, in increasing order.
    pub fn others(self) -> [usize; 2] {
        match self {
            Axis::X => [1, 2],
            Axis::Y => [0, 2],
            Axis::Z => [0, 1],
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["x", "y", "z"][self.index()])
    }
}

/// Two-integer family data: the weight equals `w'·λ_k` for the family
/// `λ_k` of parameter `ell`, where `w'` negates the integral coordinates whose
/// entry in `flips` is −1 (listed in coordinate order). When `canonical` is
/// false these parameters describe the weight flipped at the axis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Family {
    pub ell: i64,
    pub k: i64,
    pub flips: [i8; 2],
    pub canonical: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDescriptor {
    pub weight: Weight,
    pub kind: BlockKind,
    pub axis: Option<Axis>,
    pub atypical_roots: Vec<Root>,
    pub intweyl: WeylSubgroup,
    pub family: Option<Family>,
    pub casimir: Rational,
}

impl BlockDescriptor {
    /// The Weyl element `w'` with `weight = w'·λ_k` (after the axis flip when
    /// non-canonical).
    pub fn family_conjugator(&self) -> Option<WeylElement> {
        let (axis, fam) = (self.axis?, self.family?);
        let idx: Vec<usize> = axis
            .others()
            .iter()
            .zip(fam.flips)
            .filter(|(_, s)| *s < 0)
            .map(|(i, _)| *i)
            .collect();
        Some(WeylElement::from_indices(&idx))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("kind".into(), serde_json::json!(self.kind));
        if let Some(a) = self.axis {
            m.insert("axis".into(), serde_json::json!(a));
        }
        if let Some(f) = self.family {
            m.insert("ell".into(), f.ell.into());
            m.insert("k".into(), f.k.into());
            m.insert("flips".into(), serde_json::json!(f.flips));
            m.insert("canonical".into(), f.canonical.into());
        }
        m.insert("casimir".into(), serde_json::json!(self.casimir));
        m.insert("atypical_roots".into(), serde_json::json!(self.atypical_roots));
        m.insert("intweyl".into(), serde_json::json!(self.intweyl.generator_names()));
        serde_json::Value::Object(m)
    }
}

impl Serialize for BlockDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The anti-dominant family weight `λ_k` for a two-integer block.
pub fn family_member(axis: Axis, ell: i64, k: i64, zeta: &ZetaParam) -> Weight {
    let z = zeta.value();
    let r = Rational::from_int;
    match axis {
        Axis::X => {
            let x = r(ell) * z / (z + 1) + r(k);
            Weight::new(x, r(-k.abs()), r(-(k + ell).abs()))
        }
        Axis::Z => Weight::new(r(-k.abs()), r(-(k - ell).abs()), r(k) + r(ell) / z.clone()),
        Axis::Y => Weight::new(r(-k.abs()), r(k) + r(ell) * z, r(-(k - ell).abs())),
    }
}

/// Casimir value of a two-integer family as a function of `ell`.
pub fn family_casimir(axis: Axis, ell: i64, zeta: &ZetaParam) -> Rational {
    let z = zeta.value();
    let l2 = Rational::from_int(ell * ell);
    match axis {
        Axis::X => l2 * z / (z + 1),
        Axis::Z => l2 * (z + 1) / z.clone(),
        Axis::Y => l2 * z * (z + 1),
    }
}

/// Solves `λ = w'·λ_k` by finite enumeration.
fn solve_family(lambda: &Weight, axis: Axis, zeta: &ZetaParam) -> Option<(i64, i64, [i8; 2])> {
    let [i, j] = axis.others();
    let ci = lambda.coord(i).to_i64()?;
    let cj = lambda.coord(j).to_i64()?;
    let free = lambda.coord(axis.index());
    let z = zeta.value();
    for k in [ci, -ci] {
        let ells = match axis {
            Axis::X => [cj - k, -cj - k],
            Axis::Z | Axis::Y => [k + cj, k - cj],
        };
        for ell in ells {
            if ell < 1 {
                continue;
            }
            let rhs = match axis {
                Axis::X => Rational::from_int(ell) * z / (z + 1),
                Axis::Z => Rational::from_int(ell) / z.clone(),
                Axis::Y => Rational::from_int(ell) * z,
            };
            if free - Rational::from_int(k) != rhs {
                continue;
            }
            let member = family_member(axis, ell, k, zeta);
            let sign = |c: i64, m: &Rational| if Rational::from_int(c) == *m { 1 } else { -1 };
            let flips = [sign(ci, member.coord(i)), sign(cj, member.coord(j))];
            return Some((ell, k, flips));
        }
    }
    None
}

pub fn classify_block(lambda: &Weight, zeta: &ZetaParam) -> Result<BlockDescriptor> {
    let ints = lambda.integral_count();
    if ints == 3 {
        return Err(Error::IntegralWeight(lambda.to_string()));
    }
    let data = atypical_data(lambda, zeta);
    let mut desc = BlockDescriptor {
        weight: lambda.clone(),
        kind: BlockKind::Typical,
        axis: None,
        atypical_roots: data.iter().map(|d| d.root).collect(),
        intweyl: integral_weyl_group(lambda),
        family: None,
        casimir: casimir(lambda, zeta),
    };
    if data.is_empty() {
        return Ok(desc);
    }
    match ints {
        0 => desc.kind = BlockKind::Generic,
        1 => {
            desc.kind = BlockKind::OneInteger;
            desc.axis = (0..3).find(|&i| lambda.coord(i).is_integer()).map(Axis::from_index);
        }
        _ => {
            desc.kind = BlockKind::TwoInteger;
            let axis = (0..3).find(|&i| !lambda.coord(i).is_integer()).map(Axis::from_index).unwrap();
            desc.axis = Some(axis);
            let flipped = WeylElement::s(axis.index()).act(lambda);
            let (sol, canonical) = match solve_family(lambda, axis, zeta) {
                Some(s) => (s, true),
                None => match solve_family(&flipped, axis, zeta) {
                    Some(s) => (s, false),
                    None => {
                        return Err(Error::Inconsistent(format!(
                            "two-integer weight {lambda} matches no family in either orientation"
                        )))
                    }
                },
            };
            desc.family = Some(Family { ell: sol.0, k: sol.1, flips: sol.2, canonical });
        }
    }
    Ok(desc)
}

/// Linkage: `μ` lies in the block of `λ`.
pub fn same_block(lambda: &Weight, mu: &Weight, zeta: &ZetaParam) -> bool {
    let group = integral_weyl_group(lambda);
    let roots: Vec<Root> = atypical_data(lambda, zeta).into_iter().map(|d| d.root).collect();
    if roots.is_empty() {
        return group.orbit(lambda).contains(mu);
    }
    group.elements.iter().any(|w| {
        let wmu = w.act(mu);
        roots.iter().any(|a| match (&wmu.x - &lambda.x).to_i64() {
            Some(n) => lambda.shift(a, n) == wmu,
            None => false,
        })
    })
}

/// The `W_λ`-orbit of `{λ + nα : |n| ≤ bound}`, sorted and deduplicated.
/// Typical weights yield `W_λ·λ`.
pub fn block_irreducibles(lambda: &Weight, zeta: &ZetaParam, bound: u32) -> Result<Vec<Weight>> {
    if lambda.integral_count() == 3 {
        return Err(Error::IntegralWeight(lambda.to_string()));
    }
    let group = integral_weyl_group(lambda);
    let data = atypical_data(lambda, zeta);
    let Some(alpha) = data.first().map(|d| d.root) else {
        return Ok(group.orbit(lambda));
    };
    let b = bound as i64;
    let mut out: Vec<Weight> = (-b..=b).flat_map(|n| group.orbit(&lambda.shift(&alpha, n))).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn twist_step(lambda: &Weight, i: usize, zeta: &ZetaParam) -> (Weight, TransportStep) {
    (WeylElement::s(i).act(lambda), TransportStep::same_zeta(StepKind::Twist { index: i }, zeta))
}

fn shift_step(lambda: &Weight, root: Root, n: i64, zeta: &ZetaParam) -> (Weight, TransportStep) {
    (lambda.shift(&root, n), TransportStep::same_zeta(StepKind::Shift { root, n }, zeta))
}

/// Moves `λ` to the normal form the closed formulas assume: within-block
/// shifts along the atypical root plus twists at non-integral coordinates.
///
/// * generic: atypical root α0;
/// * one-integer, axis x: `(0, ζz, z)`;
/// * one-integer, axis z: `(x, −(1+ζ)x, 0)`;
/// * one-integer, axis y: `(x, 0, −(1+ζ)x/ζ)`;
/// * two-integer: a family member (`canonical = true`);
/// * typical: unchanged.
pub fn canonical_normalization(lambda: &Weight, zeta: &ZetaParam) -> Result<(Weight, Vec<TransportStep>)> {
    let desc = classify_block(lambda, zeta)?;
    let mut cur = lambda.clone();
    let mut steps = Vec::new();
    let mut apply = |cur: &mut Weight, (w, s): (Weight, TransportStep)| {
        *cur = w;
        steps.push(s);
    };
    match desc.kind {
        BlockKind::Typical => {}
        BlockKind::Generic => {
            let a = desc.atypical_roots[0];
            if a.sigma() == 1 {
                let t = twist_step(&cur, 1, zeta);
                apply(&mut cur, t);
            }
            if a.tau() == 1 {
                let t = twist_step(&cur, 2, zeta);
                apply(&mut cur, t);
            }
            debug_assert!(atypical_data(&cur, zeta).iter().any(|d| d.root == ALPHA0));
        }
        BlockKind::OneInteger => {
            let a = desc.atypical_roots[0];
            let axis = desc.axis.unwrap();
            let c = cur.coord(axis.index()).to_i64().unwrap();
            let n = match axis {
                Axis::X => -c,
                Axis::Y => -a.sigma() * c,
                Axis::Z => -a.tau() * c,
            };
            if n != 0 {
                let t = shift_step(&cur, a, n, zeta);
                apply(&mut cur, t);
            }
            let z = zeta.value();
            let flip = match axis {
                Axis::X => (cur.y != z * &cur.z).then_some(1),
                Axis::Z => (cur.y != -(z + 1) * &cur.x).then_some(1),
                Axis::Y => (cur.z != -(z + 1) * &cur.x / z.clone()).then_some(2),
            };
            if let Some(i) = flip {
                let t = twist_step(&cur, i, zeta);
                apply(&mut cur, t);
            }
        }
        BlockKind::TwoInteger => {
            if !desc.family.unwrap().canonical {
                let t = twist_step(&cur, desc.axis.unwrap().index(), zeta);
                apply(&mut cur, t);
            }
        }
    }
    Ok((cur, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BETA, GAMMA};

    fn zeta(n: i64) -> ZetaParam {
        ZetaParam::new(Rational::from_int(n)).unwrap()
    }
    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let d = classify_block(&w("1/2,1/2,1/2"), &zeta(1)).unwrap();
        assert_eq!(d.kind, BlockKind::Generic);
        assert_eq!(d.atypical_roots, vec![Root::odd(1, 1)]);
        assert!(d.casimir.is_zero());

        let d = classify_block(&w("4/3,0,-2"), &zeta(2)).unwrap();
        assert_eq!(d.kind, BlockKind::TwoInteger);
        assert_eq!(d.axis, Some(Axis::X));
        let f = d.family.unwrap();
        assert_eq!((f.ell, f.k, f.canonical), (2, 0, true));
        assert_eq!(d.casimir, Rational::new(8, 3));

        let d = classify_block(&w("0,3/2,1/2"), &zeta(3)).unwrap();
        assert_eq!(d.kind, BlockKind::OneInteger);
        assert_eq!(d.axis, Some(Axis::X));
        assert_eq!(d.intweyl.generators, vec![0]);
        assert!(d.atypical_roots.contains(&GAMMA));

        assert!(matches!(classify_block(&Weight::from_ints(1, 2, 3), &zeta(2)), Err(Error::IntegralWeight(_))));
        assert_eq!(classify_block(&w("1/2,0,0"), &zeta(2)).unwrap().kind, BlockKind::Typical);
    }

    #[test]
    fn flipped_family_is_non_canonical() {
        let d = classify_block(&w("-4/3,0,-2"), &zeta(2)).unwrap();
        let f = d.family.unwrap();
        assert!(!f.canonical);
        assert_eq!((f.ell, f.k), (2, 0));
    }

    #[test]
    fn descriptor_json_shape() {
        let d = classify_block(&w("4/3,0,-2"), &zeta(2)).unwrap();
        let v = d.to_json();
        assert_eq!(v["kind"], "two-integer");
        assert_eq!(v["axis"], "x");
        assert_eq!(v["ell"], 2);
        assert_eq!(v["casimir"], "8/3");
        assert_eq!(v["atypical_roots"], serde_json::json!([[1, 1, -1], [1, -1, -1]]));
        assert_eq!(v["intweyl"], serde_json::json!(["s1", "s2"]));
    }

    #[test]
    fn family_members_are_recognised() {
        for zn in [2i64, 3, -3, 5] {
            let z = zeta(zn);
            for axis in [Axis::X, Axis::Y, Axis::Z] {
                for ell in 1..4 {
                    for k in -4..5 {
                        let m = family_member(axis, ell, k, &z);
                        if m.integral_count() == 3 {
                            continue;
                        }
                        let d = classify_block(&m, &z).unwrap();
                        assert_eq!(d.kind, BlockKind::TwoInteger, "{m}");
                        let f = d.family.unwrap();
                        assert_eq!((f.ell, f.k, f.canonical), (ell, k, true), "{m}");
                        assert_eq!(d.casimir, family_casimir(axis, ell, &z));
                    }
                }
            }
        }
    }

    #[test]
    fn same_block_examples() {
        let z = zeta(3);
        let l = w("0,3/2,1/2");
        assert!(same_block(&l, &l.shift(&GAMMA, 1), &z));
        assert!(same_block(&l, &l.shift(&BETA, -2), &z));
        assert!(!same_block(&l, &w("0,5/2,1/2"), &z));
    }

    #[test]
    fn orbit_examples() {
        let l = w("1/2,1/2,1/2");
        assert_eq!(block_irreducibles(&l, &zeta(1), 2).unwrap().len(), 5);
        let l = w("0,3/2,1/2");
        assert_eq!(block_irreducibles(&l, &zeta(3), 1).unwrap().len(), 5);
        assert_eq!(block_irreducibles(&l, &zeta(3), 0).unwrap(), vec![l]);
    }

    #[test]
    fn normalization_examples() {
        let (c, steps) = canonical_normalization(&w("0,-3/2,1/2"), &zeta(3)).unwrap();
        assert_eq!(c, w("0,3/2,1/2"));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].kind, StepKind::Twist { index: 1 });

        let (c, steps) = canonical_normalization(&w("0,3/2,1/2"), &zeta(3)).unwrap();
        assert_eq!(c, w("0,3/2,1/2"));
        assert!(steps.is_empty());

        let (c, steps) = canonical_normalization(&w("-4/3,0,-2"), &zeta(2)).unwrap();
        assert_eq!(c, w("4/3,0,-2"));
        assert_eq!(steps[0].kind, StepKind::Twist { index: 0 });
    }
}
