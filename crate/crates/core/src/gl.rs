//! Principal blocks of gl(1|1) and gl(2|1) (the latter with the Borel
//! obtained by one odd reflection from the standard one), and the label
//! bijections with generic and one-integer blocks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Weight, ZetaParam, BETA, GAMMA};
use crate::block::{Axis, BlockDescriptor, BlockKind};
use crate::error::{Error, Result};
use crate::formulas::is_one_integer_origin;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlAlgebra {
    Gl11,
    Gl21,
}

/// Integral weight `(a|b)` of gl(1|1) or `(a,b|c)` of gl(2|1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlWeight {
    pub algebra: GlAlgebra,
    pub coords: Vec<i64>,
}

/// Principal-block label of gl(2|1): `B(i) = (i,0|−i)`, `G(j) = (0,−j|j)`, with `B(0) = G(0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gl21Label {
    B(i64),
    G(i64),
}

impl Gl21Label {
    fn normalized(self) -> Gl21Label {
        match self {
            Gl21Label::G(0) => Gl21Label::B(0),
            l => l,
        }
    }
}

impl GlWeight {
    /// `(a|−a)`.
    pub fn gl11(a: i64) -> GlWeight {
        GlWeight { algebra: GlAlgebra::Gl11, coords: vec![a, -a] }
    }

    /// `(i,0|−i)`.
    pub fn b(i: i64) -> GlWeight {
        GlWeight { algebra: GlAlgebra::Gl21, coords: vec![i, 0, -i] }
    }

    /// `(0,−j|j)`.
    pub fn g(j: i64) -> GlWeight {
        GlWeight { algebra: GlAlgebra::Gl21, coords: vec![0, -j, j] }
    }

    pub fn from_label(l: Gl21Label) -> GlWeight {
        match l {
            Gl21Label::B(i) => GlWeight::b(i),
            Gl21Label::G(j) => GlWeight::g(j),
        }
    }

    /// gl(1|1) index `a`.
    pub fn gl11_index(&self) -> Result<i64> {
        match (self.algebra, self.coords.as_slice()) {
            (GlAlgebra::Gl11, &[a, b]) if a == -b => Ok(a),
            _ => Err(Error::OutsidePrincipalBlock(self.to_string())),
        }
    }

    /// gl(2|1) label, with `(0,0|0)` reported as `B(0)`.
    pub fn gl21_label(&self) -> Result<Gl21Label> {
        match (self.algebra, self.coords.as_slice()) {
            (GlAlgebra::Gl21, &[a, 0, c]) if a == -c => Ok(Gl21Label::B(a)),
            (GlAlgebra::Gl21, &[0, b, c]) if b == -c => Ok(Gl21Label::G(c)),
            _ => Err(Error::OutsidePrincipalBlock(self.to_string())),
        }
    }

    fn validate(&self) -> Result<()> {
        match self.algebra {
            GlAlgebra::Gl11 => self.gl11_index().map(|_| ()),
            GlAlgebra::Gl21 => self.gl21_label().map(|_| ()),
        }
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        match (self.algebra, c.len()) {
            (GlAlgebra::Gl11, 2) => write!(f, "({}|{})", c[0], c[1]),
            (GlAlgebra::Gl21, 3) => write!(f, "({},{}|{})", c[0], c[1], c[2]),
            _ => write!(f, "{:?}{:?}", self.algebra, c),
        }
    }
}

impl fmt::Debug for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type GlVector = BTreeMap<GlWeight, i64>;

fn push(v: &mut Vec<(GlWeight, i64)>, w: GlWeight) {
    v.push((w, 1));
}

/// Composition factors of the Verma module `M(w)`, each with multiplicity one.
pub fn gl_verma_decomp(w: &GlWeight) -> Result<Vec<(GlWeight, i64)>> {
    w.validate()?;
    let mut out = Vec::new();
    if w.algebra == GlAlgebra::Gl11 {
        let a = w.gl11_index()?;
        push(&mut out, GlWeight::gl11(a));
        push(&mut out, GlWeight::gl11(a - 1));
        return Ok(out);
    }
    let (b, g) = (GlWeight::b, GlWeight::g);
    match w.gl21_label()? {
        Gl21Label::B(0) => {
            for x in [b(0), b(-1), g(-1)] {
                push(&mut out, x);
            }
        }
        Gl21Label::B(1) => {
            for x in [b(1), g(-1), g(-2), b(0)] {
                push(&mut out, x);
            }
        }
        Gl21Label::B(i) if i >= 2 => {
            for x in [b(i), g(-i), b(i - 1), g(-i - 1)] {
                push(&mut out, x);
            }
        }
        Gl21Label::B(i) => {
            // i < 0
            for x in [b(i), b(i - 1)] {
                push(&mut out, x);
            }
        }
        Gl21Label::G(j) if j < 0 => {
            // (0,i|−i) with i = −j ≥ 1
            for x in [g(j), g(j - 1)] {
                push(&mut out, x);
            }
        }
        Gl21Label::G(i) => {
            // (0,−i|i) with i ≥ 1
            for x in [b(-i), g(i), g(i - 1), b(-i - 1)] {
                push(&mut out, x);
            }
        }
    }
    Ok(out)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Irreducible `L(w)` as a signed sum of Verma modules, truncated to indices `≥ −N`.
pub fn gl_irreducible(w: &GlWeight, big_n: u32) -> Result<Vec<(GlWeight, i64)>> {
    w.validate()?;
    let lo = -(big_n as i64);
    let mut out = Vec::new();
    if w.algebra == GlAlgebra::Gl11 {
        let a = w.gl11_index()?;
        for i in 0..=(a - lo).max(-1) {
            out.push((GlWeight::gl11(a - i), sign(i)));
        }
        return Ok(out);
    }
    type Ray = fn(i64) -> GlWeight;
    let (main, other, n, positive): (Ray, Ray, i64, bool) = match w.gl21_label()? {
        Gl21Label::B(n) if n >= 0 => (GlWeight::b, GlWeight::g, n, true),
        Gl21Label::B(n) => (GlWeight::b, GlWeight::g, -n, false),
        Gl21Label::G(n) if n >= 0 => (GlWeight::g, GlWeight::b, n, true),
        Gl21Label::G(n) => (GlWeight::g, GlWeight::b, -n, false),
    };
    if positive {
        for i in lo..=n {
            out.push((main(i), sign(n + i)));
        }
        for j in lo..=(-n - 1) {
            out.push((other(j), sign(n + j)));
        }
    } else {
        for i in lo..=(-n) {
            out.push((main(i), sign(n + i)));
        }
    }
    // B(0) and G(0) name the same weight.
    let mut merged: GlVector = BTreeMap::new();
    for (x, c) in out {
        let key = GlWeight::from_label(x.gl21_label()?.normalized());
        *merged.entry(key).or_insert(0) += c;
    }
    Ok(merged.into_iter().filter(|(_, c)| *c != 0).collect())
}

/// Labels of the principal block in the index window `[−N, N]`.
pub fn gl_window(algebra: GlAlgebra, big_n: u32) -> Vec<GlWeight> {
    let n = big_n as i64;
    match algebra {
        GlAlgebra::Gl11 => (-n..=n).map(GlWeight::gl11).collect(),
        GlAlgebra::Gl21 => (-n..=n)
            .map(GlWeight::b)
            .chain((-n..=n).filter(|&j| j != 0).map(GlWeight::g))
            .collect(),
    }
}

/// Weight label in a gl principal block together with the dropped scalar shift
/// (`x` for gl(1|1), `(1+ζ)z` for gl(2|1)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlLabel {
    pub weight: GlWeight,
    pub shift: Rational,
}

fn check_one_integer(block: &BlockDescriptor, zeta: &ZetaParam) -> Result<()> {
    if block.kind != BlockKind::OneInteger || block.axis != Some(Axis::X) {
        return Err(Error::WrongBlockKind {
            weight: block.weight.to_string(),
            expected: "generic or one-integer (axis x)".into(),
            found: block.kind.to_string(),
        });
    }
    if !is_one_integer_origin(&block.weight, zeta) {
        return Err(Error::NotCanonical(block.weight.to_string()));
    }
    Ok(())
}

/// D(2|1;ζ) label ↦ gl label. The block's `weight` is the base point:
/// `λ + kα ↦ (k|−k)` for generic blocks, `λ₀ + kβ ↦ (k,0|−k)` and
/// `λ₀ + jγ ↦ (0,−j|j)` for the canonical one-integer block of `λ₀ = (0, ζz, z)`.
pub fn d21_to_gl(w: &Weight, block: &BlockDescriptor, zeta: &ZetaParam) -> Result<GlLabel> {
    let base = &block.weight;
    let outside = || Error::CosetMismatch { weight: w.to_string(), anchor: base.to_string() };
    if block.kind == BlockKind::Generic {
        let alpha = block.atypical_roots[0];
        let k = (&w.x - &base.x).to_i64().ok_or_else(outside)?;
        if base.shift(&alpha, k) != *w {
            return Err(outside());
        }
        return Ok(GlLabel { weight: GlWeight::gl11(k), shift: base.x.clone() });
    }
    check_one_integer(block, zeta)?;
    let k = w.x.to_i64().ok_or_else(outside)?;
    let shift = (zeta.value() + 1) * &base.z;
    if base.shift(&BETA, k) == *w {
        Ok(GlLabel { weight: GlWeight::b(k), shift })
    } else if base.shift(&GAMMA, k) == *w {
        Ok(GlLabel { weight: GlWeight::g(k), shift })
    } else {
        Err(outside())
    }
}

/// Inverse of [`d21_to_gl`].
pub fn gl_to_d21(g: &GlWeight, block: &BlockDescriptor, zeta: &ZetaParam) -> Result<Weight> {
    let base = &block.weight;
    if block.kind == BlockKind::Generic {
        let k = g.gl11_index()?;
        return Ok(base.shift(&block.atypical_roots[0], k));
    }
    check_one_integer(block, zeta)?;
    match g.gl21_label()? {
        Gl21Label::B(i) => Ok(base.shift(&BETA, i)),
        Gl21Label::G(j) => Ok(base.shift(&GAMMA, j)),
    }
}

/// `C · D` restricted to the window, where `C` expresses irreducibles in Vermas
/// and `D` expresses Vermas in irreducibles; returns the first off-identity entry.
pub fn inversion_defect(algebra: GlAlgebra, big_n: u32) -> Result<Option<(GlWeight, GlWeight, i64)>> {
    let labels = gl_window(algebra, big_n);
    let index: BTreeMap<&GlWeight, usize> = labels.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = labels.len();
    let mut d = vec![vec![0i64; n]; n];
    for (r, w) in labels.iter().enumerate() {
        for (x, m) in gl_verma_decomp(w)? {
            if let Some(&c) = index.get(&x) {
                d[r][c] += m;
            }
        }
    }
    for (r, w) in labels.iter().enumerate() {
        let mut row = vec![0i64; n];
        for (y, c) in gl_irreducible(w, big_n)? {
            if let Some(&yi) = index.get(&y) {
                for (z, dz) in d[yi].iter().enumerate() {
                    row[z] += c * dz;
                }
            }
        }
        for (z, v) in row.iter().enumerate() {
            let expected = i64::from(z == r);
            if *v != expected {
                return Ok(Some((w.clone(), labels[z].clone(), *v)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::classify_block;

    #[test]
    fn decomposition_examples() {
        assert_eq!(gl_verma_decomp(&GlWeight::gl11(3)).unwrap(), vec![(GlWeight::gl11(3), 1), (GlWeight::gl11(2), 1)]);
        assert_eq!(gl_verma_decomp(&GlWeight::b(0)).unwrap().len(), 3);
        let m = gl_verma_decomp(&GlWeight::b(1)).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.contains(&(GlWeight::g(-2), 1)));
        assert!(gl_verma_decomp(&GlWeight { algebra: GlAlgebra::Gl21, coords: vec![1, 1, -2] }).is_err());
    }

    #[test]
    fn irreducible_examples() {
        let l = gl_irreducible(&GlWeight::gl11(0), 2).unwrap();
        assert_eq!(l, vec![(GlWeight::gl11(0), 1), (GlWeight::gl11(-1), -1), (GlWeight::gl11(-2), 1)]);
        let l = gl_irreducible(&GlWeight::b(-2), 4).unwrap();
        assert!(l.iter().all(|(w, _)| matches!(w.gl21_label().unwrap(), Gl21Label::B(_))));
        assert_eq!(l.len(), 3);
        assert_eq!(gl_irreducible(&GlWeight::b(0), 0).unwrap(), vec![(GlWeight::b(0), 1)]);
    }

    #[test]
    fn inversion_is_exact() {
        for n in [0, 1, 2, 5, 9] {
            assert_eq!(inversion_defect(GlAlgebra::Gl11, n).unwrap(), None);
            assert_eq!(inversion_defect(GlAlgebra::Gl21, n).unwrap(), None);
        }
    }

    #[test]
    fn label_map_roundtrip() {
        let z = ZetaParam::new(Rational::from_int(3)).unwrap();
        let l0: Weight = "0,3/2,1/2".parse().unwrap();
        let block = classify_block(&l0, &z).unwrap();
        for k in -3..4 {
            for w in [l0.shift(&BETA, k), l0.shift(&GAMMA, k)] {
                let g = d21_to_gl(&w, &block, &z).unwrap();
                assert_eq!(g.shift, Rational::from_int(2));
                assert_eq!(gl_to_d21(&g.weight, &block, &z).unwrap(), w);
            }
        }
        assert_eq!(d21_to_gl(&l0.shift(&BETA, 2), &block, &z).unwrap().weight, GlWeight::b(2));

        let z1 = ZetaParam::new(Rational::one()).unwrap();
        let g0: Weight = "1/2,1/2,1/2".parse().unwrap();
        let gb = classify_block(&g0, &z1).unwrap();
        let lab = d21_to_gl(&g0, &gb, &z1).unwrap();
        assert_eq!((lab.weight, lab.shift), (GlWeight::gl11(0), Rational::new(1, 2)));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&GlWeight::b(1)).unwrap();
        assert_eq!(s, r#"{"algebra":"gl21","coords":[1,0,-1]}"#);
    }
}
