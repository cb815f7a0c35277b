//! Root data, the deformed bilinear form and the Weyl group of D(2|1;ζ).
//!
//! Weights are always ρ-shifted: `Weight { x, y, z }` stands for
//! `xδ + yε1 + zε2`, and the module with that label has highest weight
//! `λ − ρ` where `ρ = (−1, 1, 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Deformation parameter; never 0 or −1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZetaParam(Rational);

impl ZetaParam {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_zero() || value == Rational::from_int(-1) {
            return Err(Error::InvalidZeta(value.to_string()));
        }
        Ok(ZetaParam(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// ζ ↦ 1/ζ.
    pub fn inverse(&self) -> ZetaParam {
        ZetaParam(self.0.recip())
    }

    /// ζ ↦ −1−ζ.
    pub fn negated_shift(&self) -> ZetaParam {
        ZetaParam(-(&self.0 + 1))
    }
}

impl fmt::Display for ZetaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for ZetaParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ZetaParam::new(s.parse()?)
    }
}

impl Serialize for ZetaParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Rational::deserialize(d)?;
        ZetaParam::new(r).map_err(serde::de::Error::custom)
    }
}

/// ρ-shifted weight `xδ + yε1 + zε2`.
///
/// The derived `Ord` is lexicographic and only used for deterministic
/// container ordering; the dominance order is [`dominance_decompose`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Weight {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Weight { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Weight::new(x.into(), y.into(), z.into())
    }

    pub fn zero() -> Self {
        Weight::from_ints(0, 0, 0)
    }

    pub fn coord(&self, i: usize) -> &Rational {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("coordinate index {i} out of range"),
        }
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    fn map2(&self, other: &Weight, f: impl Fn(&Rational, &Rational) -> Rational) -> Weight {
        Weight::new(f(&self.x, &other.x), f(&self.y, &other.y), f(&self.z, &other.z))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        self.map2(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.map2(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Weight {
        Weight::new(-&self.x, -&self.y, -&self.z)
    }

    /// `self + n·r` for an integer vector `r`.
    pub fn shift(&self, r: &Root, n: i64) -> Weight {
        let [a, b, c] = r.coords;
        Weight::new(&self.x + a * n, &self.y + b * n, &self.z + c * n)
    }

    pub fn plus_ints(&self, a: i64, b: i64, c: i64) -> Weight {
        Weight::new(&self.x + a, &self.y + b, &self.z + c)
    }

    /// Number of integral coordinates.
    pub fn integral_count(&self) -> usize {
        self.coords().iter().filter(|c| c.is_integer()).count()
    }

    /// Module highest weight `λ − ρ`.
    pub fn unshifted(&self) -> Weight {
        self.sub(&rho())
    }

    /// Inverse of [`Weight::unshifted`].
    pub fn shifted(&self) -> Weight {
        self.add(&rho())
    }

    /// Parses `"x,y,z"` with rational entries.
    pub fn parse(s: &str) -> Result<Weight> {
        let parts: Vec<&str> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "weight `{s}` must have exactly three comma-separated rational coordinates"
            )));
        }
        Ok(Weight::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?))
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Weight::parse(s)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.x, &self.y, &self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[Rational; 3]>::deserialize(d)?;
        Ok(Weight::new(x, y, z))
    }
}

/// ρ = −δ + ε1 + ε2.
pub fn rho() -> Weight {
    Weight::from_ints(-1, 1, 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A root `aδ + bε1 + cε2` with integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: [i64; 3],
}

impl Root {
    /// Accepts only elements of Φ: `±2δ, ±2ε1, ±2ε2, ±δ±ε1±ε2`.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Root> {
        let r = Root { coords: [a, b, c] };
        let nonzero = r.coords.iter().filter(|v| **v != 0).count();
        let ok = (nonzero == 1 && r.coords.iter().all(|v| v.abs() == 2 || *v == 0))
            || r.coords.iter().all(|v| v.abs() == 1);
        if ok {
            Ok(r)
        } else {
            Err(Error::Parse(format!("({a},{b},{c}) is not a root")))
        }
    }

    /// Odd positive root `δ + σε1 + τε2`.
    pub const fn odd(sigma: i64, tau: i64) -> Root {
        Root { coords: [1, sigma, tau] }
    }

    pub fn parity(&self) -> Parity {
        if self.coords.iter().all(|v| v.abs() == 1) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    pub fn sigma(&self) -> i64 {
        self.coords[1]
    }

    pub fn tau(&self) -> i64 {
        self.coords[2]
    }

    pub fn as_weight(&self) -> Weight {
        let [a, b, c] = self.coords;
        Weight::from_ints(a, b, c)
    }

    pub fn neg(&self) -> Root {
        let [a, b, c] = self.coords;
        Root { coords: [-a, -b, -c] }
    }

    /// Coordinates `(a, m, n)` in the simple roots α0, α1, α2.
    pub fn simple_coords(&self) -> [i64; 3] {
        let [a, b, c] = self.coords;
        [a, (a + b) / 2, (a + c) / 2]
    }

    pub fn height(&self) -> i64 {
        self.simple_coords().iter().sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coords;
        write!(f, "({a},{b},{c})")
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[i64; 3]>::deserialize(d)?;
        Root::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

pub const ALPHA0: Root = Root { coords: [1, -1, -1] };
pub const ALPHA1: Root = Root { coords: [0, 2, 0] };
pub const ALPHA2: Root = Root { coords: [0, 0, 2] };
pub const TWO_DELTA: Root = Root { coords: [2, 0, 0] };
/// β = δ + ε1 − ε2.
pub const BETA: Root = Root::odd(1, -1);
/// γ = δ − ε1 + ε2.
pub const GAMMA: Root = Root::odd(-1, 1);

pub const SIMPLE_ROOTS: [Root; 3] = [ALPHA0, ALPHA1, ALPHA2];
pub const EVEN_POSITIVE: [Root; 3] = [TWO_DELTA, ALPHA1, ALPHA2];
/// Odd positive roots in the fixed enumeration order (σ,τ) = (1,1), (1,−1), (−1,1), (−1,−1).
pub const ODD_POSITIVE: [Root; 4] = [Root::odd(1, 1), Root::odd(1, -1), Root::odd(-1, 1), Root::odd(-1, -1)];

/// `(μ, ν) = −(1+ζ) μx νx + μy νy + ζ μz νz`.
pub fn bilinear_form(mu: &Weight, nu: &Weight, zeta: &ZetaParam) -> Rational {
    let z = zeta.value();
    -(z + 1) * &mu.x * &nu.x + &mu.y * &nu.y + z * &mu.z * &nu.z
}

/// `⟨λ, α∨⟩ = 2(λ,α)/(α,α)` for even `α`.
pub fn coroot_pairing(lambda: &Weight, alpha: &Root, zeta: &ZetaParam) -> Result<Rational> {
    if alpha.is_odd() {
        return Err(Error::OddRoot(alpha.to_string()));
    }
    let a = alpha.as_weight();
    let num = bilinear_form(lambda, &a, zeta) * Rational::from_int(2);
    let den = bilinear_form(&a, &a, zeta);
    Ok(num / den)
}

/// Element of W = (Z/2)³, stored as a sign per coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub flips: [i8; 3],
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { flips: [1, 1, 1] };

    /// The generator `s_i` negating coordinate `i`.
    pub fn s(i: usize) -> WeylElement {
        let mut flips = [1; 3];
        flips[i] = -1;
        WeylElement { flips }
    }

    /// Product of the generators whose indices are listed.
    pub fn from_indices(indices: &[usize]) -> WeylElement {
        indices.iter().fold(Self::IDENTITY, |w, &i| w.compose(&Self::s(i)))
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let f = |i: usize| self.flips[i] * other.flips[i];
        WeylElement { flips: [f(0), f(1), f(2)] }
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        let f = |i: usize, c: &Rational| if self.flips[i] < 0 { -c } else { c.clone() };
        Weight::new(f(0, &lambda.x), f(1, &lambda.y), f(2, &lambda.z))
    }

    /// Indices of the flipped coordinates.
    pub fn indices(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.flips[i] < 0).collect()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return write!(f, "e");
        }
        let names: Vec<String> = idx.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", names.join(""))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn weyl_act(w: &WeylElement, lambda: &Weight) -> Weight {
    w.act(lambda)
}

/// Subgroup of W generated by a set of coordinate flips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylSubgroup {
    pub generators: Vec<usize>,
    pub elements: Vec<WeylElement>,
}

impl WeylSubgroup {
    pub fn generated_by(generators: &[usize]) -> WeylSubgroup {
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut elements = vec![WeylElement::IDENTITY];
        for &g in &gens {
            let s = WeylElement::s(g);
            let more: Vec<WeylElement> = elements.iter().map(|w| w.compose(&s)).collect();
            elements.extend(more);
        }
        elements.sort();
        WeylSubgroup { generators: gens, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Orbit of `lambda`, deduplicated and sorted.
    pub fn orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = self.elements.iter().map(|w| w.act(lambda)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|i| format!("s{i}")).collect()
    }
}

/// Non-negative `(a, m, n)` with `λ − μ = a·α0 + m·α1 + n·α2`, if any.
pub fn dominance_decompose(lambda: &Weight, mu: &Weight) -> Option<(i64, i64, i64)> {
    let [a, m, n] = simple_root_offset(lambda, mu)?;
    (a >= 0 && m >= 0 && n >= 0).then_some((a, m, n))
}

/// Signed simple-root coordinates of `λ − μ`, when it lies in the root lattice.
pub fn simple_root_offset(lambda: &Weight, mu: &Weight) -> Option<[i64; 3]> {
    let d = lambda.sub(mu);
    let a = d.x.to_i64()?;
    let dy = d.y.to_i64()?;
    let dz = d.z.to_i64()?;
    if (a + dy) % 2 != 0 || (a + dz) % 2 != 0 {
        return None;
    }
    Some([a, (a + dy) / 2, (a + dz) / 2])
}

/// `μ ≤ λ` in the dominance order.
pub fn dominated_by(mu: &Weight, lambda: &Weight) -> bool {
    dominance_decompose(lambda, mu).is_some()
}

/// No coordinate is a positive integer.
pub fn is_antidominant(lambda: &Weight, _zeta: &ZetaParam) -> bool {
    lambda.coords().iter().all(|c| !c.is_positive_integer())
}

/// `W_λ = ⟨s_i | λ_i ∈ Z⟩`.
pub fn integral_weyl_group(lambda: &Weight) -> WeylSubgroup {
    let gens: Vec<usize> = (0..3).filter(|&i| lambda.coord(i).is_integer()).collect();
    WeylSubgroup::generated_by(&gens)
}

/// Casimir eigenvalue `−(1+ζ)x² + y² + ζz²`.
pub fn casimir(lambda: &Weight, zeta: &ZetaParam) -> Rational {
    bilinear_form(lambda, lambda, zeta)
}

/// Atypicality witness for one odd positive root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AtypicalDatum {
    pub root: Root,
    pub p: Rational,
    pub d: Rational,
}

/// Odd positive roots orthogonal to `λ`, with their `(p, d)` values.
pub fn atypical_data(lambda: &Weight, zeta: &ZetaParam) -> Vec<AtypicalDatum> {
    ODD_POSITIVE
        .iter()
        .filter(|r| bilinear_form(lambda, &r.as_weight(), zeta).is_zero())
        .map(|r| {
            let sigma = Rational::from_int(r.sigma());
            let tau = Rational::from_int(r.tau());
            AtypicalDatum {
                root: *r,
                p: -&lambda.x + &sigma * &lambda.y,
                d: &lambda.x - &tau * &lambda.z,
            }
        })
        .collect()
}

pub fn is_atypical(lambda: &Weight, zeta: &ZetaParam) -> bool {
    ODD_POSITIVE.iter().any(|r| bilinear_form(lambda, &r.as_weight(), zeta).is_zero())
}
