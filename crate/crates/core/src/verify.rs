//! Registered consistency checks, each an independent recomputation of an
//! identity the library relies on. Sampling checks take an explicit seed.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{atypical_data, casimir, Weight, WeylElement, ZetaParam};
use crate::block::{block_irreducibles, classify_block, family_casimir, family_member, Axis, BlockKind};
use crate::character::{flag_to_character, flag_to_character_at, multiply_by_factor, verma_character, VermaVector};
use crate::duality::{decomposition_numbers_with, irreducible_and_projective_with, generic_irreducible, TiltingCache};
use crate::error::{Error, Result};
use crate::formulas::{
    exceptional_cases, is_one_integer_origin, one_integer_irreducible, required_flag_members, tilting_with_source,
    OneIntFamily, TiltingSource,
};
use crate::gl::{d21_to_gl, gl_irreducible, gl_to_d21, inversion_defect, GlAlgebra};
use crate::rational::Rational;
use crate::transport::{iso_inv_zeta_character, iso_transport_character, iso_transport_weight, IsoKind, MonomialMap};

pub const CHECK_NAMES: [&str; 10] = [
    "gl_inversion",
    "generic_factorization",
    "casimir_block_constancy",
    "p_equals_zeta_d",
    "flag_necessity",
    "duality_consistency",
    "iso_involution",
    "block_bruteforce",
    "multiplicity_free",
    "nonnegativity",
];

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub params: Value,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    fn new(name: &str, params: Value, witness: Option<Value>) -> Self {
        CheckReport { check_name: name.to_string(), params, passed: witness.is_none(), witness }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Typed view of a check's parameter record.
struct Params<'a>(&'a Value);

impl Params<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key).filter(|v| !v.is_null())
    }

    fn u64(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.as_u64().ok_or_else(|| Error::Parse(format!("parameter `{key}` must be a non-negative integer"))),
        }
    }

    fn i64(&self, key: &str, default: i64) -> Result<i64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.as_i64().ok_or_else(|| Error::Parse(format!("parameter `{key}` must be an integer"))),
        }
    }

    fn text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    fn zetas(&self, default: &[&str]) -> Result<Vec<ZetaParam>> {
        let raw: Vec<String> = match (self.get("zetas"), self.get("zeta")) {
            (Some(Value::Array(a)), _) => a.iter().map(Self::text).collect(),
            (Some(v), _) | (None, Some(v)) => vec![Self::text(v)],
            (None, None) => default.iter().map(|s| s.to_string()).collect(),
        };
        raw.iter().map(|s| s.parse()).collect()
    }

    fn weight(&self) -> Result<Option<Weight>> {
        self.get("weight").map(|v| Self::text(v).parse()).transpose()
    }

    fn i64_list(&self, key: &str, default: &[i64]) -> Result<Vec<i64>> {
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| v.as_i64().ok_or_else(|| Error::Parse(format!("parameter `{key}` must be a list of integers"))))
                .collect(),
            Some(v) => v.as_i64().map(|x| vec![x]).ok_or_else(|| Error::Parse(format!("parameter `{key}` must be an integer list"))),
        }
    }

    fn axes(&self, default: &[Axis]) -> Result<Vec<Axis>> {
        let parse = |s: &str| match s {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::Parse(format!("axis must be x, y or z, got `{s}`"))),
        };
        match (self.get("axes"), self.get("axis")) {
            (Some(Value::Array(a)), _) => a.iter().map(|v| parse(&Self::text(v))).collect(),
            (Some(v), _) | (None, Some(v)) => Ok(vec![parse(&Self::text(v))?]),
            (None, None) => Ok(default.to_vec()),
        }
    }
}

/// Seeded generator of weights of a prescribed block kind.
pub struct WeightSampler {
    rng: ChaCha8Rng,
}

impl WeightSampler {
    pub fn new(seed: u64) -> Self {
        WeightSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn nonintegral(&mut self) -> Rational {
        loop {
            let d = self.rng.gen_range(2..=9);
            let n = self.rng.gen_range(-25..=25);
            let r = Rational::new(n, d);
            if !r.is_integer() {
                return r;
            }
        }
    }

    fn conjugate(&mut self, w: &Weight) -> Weight {
        let idx: Vec<usize> = (0..3).filter(|_| self.rng.gen_bool(0.5)).collect();
        WeylElement::from_indices(&idx).act(w)
    }

    pub fn typical(&mut self, zeta: &ZetaParam) -> Weight {
        loop {
            let w = Weight::new(self.nonintegral(), self.nonintegral(), self.nonintegral());
            if atypical_data(&w, zeta).is_empty() {
                return w;
            }
        }
    }

    /// Solves `(λ, (1,σ,τ)) = 0` for `z`.
    pub fn generic(&mut self, zeta: &ZetaParam) -> Weight {
        loop {
            let (x, y) = (self.nonintegral(), self.nonintegral());
            let sigma = Rational::from_int(if self.rng.gen_bool(0.5) { 1 } else { -1 });
            let tau = Rational::from_int(if self.rng.gen_bool(0.5) { 1 } else { -1 });
            let z = ((zeta.value() + 1) * &x - &sigma * &y) / (&tau * zeta.value());
            let w = Weight::new(x, y, z);
            if matches!(classify_block(&w, zeta), Ok(d) if d.kind == BlockKind::Generic) {
                return w;
            }
        }
    }

    pub fn one_integer(&mut self, zeta: &ZetaParam, axis: Axis) -> Option<Weight> {
        for _ in 0..64 {
            let t = self.nonintegral();
            let z = zeta.value();
            let origin = match axis {
                Axis::X => Weight::new(Rational::zero(), z * &t, t),
                Axis::Z => Weight::new(t.clone(), -(z + 1) * &t, Rational::zero()),
                Axis::Y => Weight::new(t.clone(), Rational::zero(), -(z + 1) * &t / z.clone()),
            };
            let Ok(desc) = classify_block(&origin, zeta) else { continue };
            if desc.kind != BlockKind::OneInteger {
                continue;
            }
            let labels = block_irreducibles(&origin, zeta, 6).ok()?;
            let pick = labels.choose(&mut self.rng)?.clone();
            return Some(self.conjugate(&pick));
        }
        None
    }

    /// A member of the `(axis, ℓ)` family, conjugated arbitrarily (so possibly
    /// in a non-canonical block). `None` when the family is degenerate at `ζ`.
    pub fn two_integer(&mut self, zeta: &ZetaParam, axis: Axis, ell: i64) -> Option<Weight> {
        let w = family_member(axis, ell, self.rng.gen_range(-5..=5), zeta);
        let desc = classify_block(&w, zeta).ok()?;
        (desc.kind == BlockKind::TwoInteger).then(|| self.conjugate(&w))
    }

    /// A random atypical weight of any kind.
    pub fn atypical(&mut self, zeta: &ZetaParam) -> Weight {
        loop {
            let axis = [Axis::X, Axis::Y, Axis::Z][self.rng.gen_range(0..3)];
            let w = match self.rng.gen_range(0..3) {
                0 => Some(self.generic(zeta)),
                1 => self.one_integer(zeta, axis),
                _ => {
                    let ell = self.rng.gen_range(1..=3);
                    self.two_integer(zeta, axis, ell)
                }
            };
            if let Some(w) = w {
                return w;
            }
        }
    }

    fn random_rational(&mut self) -> Rational {
        Rational::new(self.rng.gen_range(-30..=30), self.rng.gen_range(1..=7))
    }

    pub fn any_weight(&mut self) -> Weight {
        Weight::new(self.random_rational(), self.random_rational(), self.random_rational())
    }

    pub fn zeta(&mut self) -> ZetaParam {
        loop {
            if let Ok(z) = ZetaParam::new(self.random_rational()) {
                return z;
            }
        }
    }
}

/// Runs one registered check.
pub fn run_check(name: &str, params: &Value) -> Result<CheckReport> {
    let p = Params(params);
    let witness = match name {
        "gl_inversion" => gl_inversion(&p)?,
        "generic_factorization" => generic_factorization(&p)?,
        "casimir_block_constancy" => casimir_block_constancy(&p)?,
        "p_equals_zeta_d" => p_equals_zeta_d(&p)?,
        "flag_necessity" => flag_necessity(&p)?,
        "duality_consistency" => duality_consistency(&p)?,
        "iso_involution" => iso_involution(&p)?,
        "block_bruteforce" => block_bruteforce(&p)?,
        "multiplicity_free" => multiplicity_free(&p)?,
        "nonnegativity" => nonnegativity(&p)?,
        _ => return Err(Error::UnknownCheck(name.to_string())),
    };
    Ok(CheckReport::new(name, params.clone(), witness))
}

/// Runs every registered check with default parameters.
pub fn run_all() -> Result<Vec<CheckReport>> {
    CHECK_NAMES.iter().map(|n| run_check(n, &json!({}))).collect()
}

type Witness = Option<Value>;

fn gl_inversion(p: &Params) -> Result<Witness> {
    let n = p.u64("window", 20)? as u32;
    for alg in [GlAlgebra::Gl11, GlAlgebra::Gl21] {
        if let Some((row, col, v)) = inversion_defect(alg, n)? {
            return Ok(Some(json!({"algebra": alg, "row": row.to_string(), "col": col.to_string(), "value": v})));
        }
    }
    Ok(None)
}

fn generic_factorization(p: &Params) -> Result<Witness> {
    let depth = p.u64("depth", 12)? as u32;
    let zetas = p.zetas(&["2", "1/2", "-3", "5/7"])?;
    let mut cases = Vec::new();
    if let Some(w) = p.weight()? {
        cases.push((zetas[0].clone(), w));
    } else {
        let mut s = WeightSampler::new(p.u64("seed", 0)?);
        let count = p.u64("count", 25)?;
        for z in &zetas {
            for _ in 0..count {
                cases.push((z.clone(), s.generic(z)));
            }
        }
    }
    for (zeta, lambda) in cases {
        let desc = classify_block(&lambda, &zeta)?;
        let alpha = *desc.atypical_roots.first().ok_or_else(|| Error::Typical(lambda.to_string()))?;
        let irr = generic_irreducible(&lambda, &zeta, depth)?;
        let lhs = multiply_by_factor(&flag_to_character(&irr, depth, &zeta)?, &alpha)?;
        let rhs = verma_character(&lambda, depth, &zeta);
        if !lhs.same_terms(&rhs) {
            return Ok(Some(json!({"zeta": zeta, "weight": lambda})));
        }
    }
    Ok(None)
}

/// One representative per block kind that exists at `ζ`.
type Representative = (String, Weight, Option<(Axis, i64)>);

fn block_representatives(s: &mut WeightSampler, zeta: &ZetaParam) -> Vec<Representative> {
    let mut out = vec![("typical".to_string(), s.typical(zeta), None), ("generic".to_string(), s.generic(zeta), None)];
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        if let Some(w) = s.one_integer(zeta, axis) {
            out.push((format!("one-integer {axis}"), w, None));
        }
        for ell in 1..=3 {
            if let Some(w) = s.two_integer(zeta, axis, ell) {
                out.push((format!("two-integer {axis} l={ell}"), w, Some((axis, ell))));
            }
        }
    }
    out
}

fn casimir_block_constancy(p: &Params) -> Result<Witness> {
    let per_block = p.u64("per_block", 50)? as usize;
    let mut s = WeightSampler::new(p.u64("seed", 0)?);
    for zeta in p.zetas(&["2", "1/2", "-3", "5/7"])? {
        for (kind, rep, family) in block_representatives(&mut s, &zeta) {
            let c = casimir(&rep, &zeta);
            if let Some((axis, ell)) = family {
                if c != family_casimir(axis, ell, &zeta) {
                    return Ok(Some(json!({"zeta": zeta, "kind": kind, "weight": rep, "casimir": c})));
                }
            }
            let mut orbit = block_irreducibles(&rep, &zeta, 25)?;
            orbit.shuffle(&mut s.rng);
            for w in orbit.iter().take(per_block) {
                if casimir(w, &zeta) != c {
                    return Ok(Some(json!({"zeta": zeta, "kind": kind, "weight": w, "representative": rep})));
                }
            }
        }
    }
    Ok(None)
}

fn p_equals_zeta_d(p: &Params) -> Result<Witness> {
    let count = p.u64("count", 50)?;
    let mut s = WeightSampler::new(p.u64("seed", 0)?);
    for zeta in p.zetas(&["2", "1/2", "-3", "5/7"])? {
        for i in 0..count {
            let w = if i % 5 == 0 { s.typical(&zeta) } else { s.atypical(&zeta) };
            let c = casimir(&w, &zeta);
            for d in atypical_data(&w, &zeta) {
                if d.p != zeta.value() * &d.d || c != &d.p * &(&d.p + &d.d) {
                    return Ok(Some(json!({"zeta": zeta, "weight": w, "datum": d})));
                }
            }
            if !atypical_data(&w, &zeta).is_empty() && c.is_zero() {
                let generic = classify_block(&w, &zeta)?.kind == BlockKind::Generic;
                if !generic {
                    return Ok(Some(json!({"zeta": zeta, "weight": w, "casimir": c, "generic": generic})));
                }
            }
        }
    }
    Ok(None)
}

/// Canonical labels `w'·λ_k`, `k ∈ [lo, hi]`, of a two-integer family; empty if degenerate.
fn family_window(axis: Axis, ell: i64, lo: i64, hi: i64, zeta: &ZetaParam) -> Vec<Weight> {
    let Ok(desc) = classify_block(&family_member(axis, ell, 0, zeta), zeta) else { return Vec::new() };
    if desc.kind != BlockKind::TwoInteger {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for k in lo..=hi {
        for w in &desc.intweyl.elements {
            out.insert(w.act(&family_member(axis, ell, k, zeta)));
        }
    }
    out.into_iter().collect()
}

fn flag_necessity(p: &Params) -> Result<Witness> {
    let ells = p.i64_list("ells", &[1, 2, 3])?;
    let k = p.i64("window", 6)?;
    // exceptional tables, every axis
    for zeta in p.zetas(&["2", "5/7"])? {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for &ell in &ells {
                if family_window(axis, ell, 0, 0, &zeta).is_empty() {
                    continue;
                }
                for case in exceptional_cases(axis, ell) {
                    let head = case.head.weight(axis, ell, &zeta);
                    let flag: BTreeSet<Weight> = tilting_with_source(&head, &zeta)?.0.support().into_iter().collect();
                    let req = required_flag_members(&head, &zeta, u32::MAX);
                    if !req.is_subset(&flag) {
                        return Ok(Some(json!({"zeta": zeta, "head": head, "missing": req.difference(&flag).collect::<Vec<_>>()})));
                    }
                }
            }
        }
    }
    // standard cases in the axis-x windows
    for zeta in p.zetas(&["2"])? {
        for &ell in &ells {
            for lambda in family_window(Axis::X, ell, -k, k, &zeta) {
                let (flag, src) = tilting_with_source(&lambda, &zeta)?;
                if src != TiltingSource::Standard {
                    continue;
                }
                let flag: BTreeSet<Weight> = flag.support().into_iter().collect();
                if flag != required_flag_members(&lambda, &zeta, u32::MAX) {
                    return Ok(Some(json!({"zeta": zeta, "weight": lambda, "flag": flag})));
                }
            }
        }
    }
    Ok(None)
}

fn duality_consistency(p: &Params) -> Result<Witness> {
    let ells = p.i64_list("ells", &[1, 2, 3])?;
    let k = p.i64("window", 6)?;
    for zeta in p.zetas(&["2"])? {
        let mut cache = TiltingCache::new();
        for axis in p.axes(&[Axis::X])? {
            for &ell in &ells {
                let Some(lambda) = family_window(axis, ell, 0, 0, &zeta).into_iter().next() else { continue };
                let block = classify_block(&lambda, &zeta)?;
                let d = decomposition_numbers_with(&block, -k, k, &zeta, &mut cache)?;
                if !d.is_unitriangular_01() {
                    return Ok(Some(json!({"zeta": zeta, "axis": axis, "ell": ell, "failure": "not unitriangular 0/1"})));
                }
                let inv = d.inverse()?;
                if (0..inv.size()).any(|i| inv.get(i, i) != 1) || !d.mul(&inv).is_identity() {
                    return Ok(Some(json!({"zeta": zeta, "axis": axis, "ell": ell, "failure": "inverse"})));
                }
            }
        }
        // generic blocks: P_λ = M_λ + M_{λ+α}
        let mut s = WeightSampler::new(p.u64("seed", 0)?);
        for _ in 0..5 {
            let lambda = s.generic(&zeta);
            let alpha = classify_block(&lambda, &zeta)?.atypical_roots[0];
            let expected = VermaVector::from_support([lambda.clone(), lambda.shift(&alpha, 1)]);
            if cache.projective(&lambda, &zeta)? != expected {
                return Ok(Some(json!({"zeta": zeta, "weight": lambda, "failure": "generic projective"})));
            }
        }
    }
    Ok(None)
}

fn iso_involution(p: &Params) -> Result<Witness> {
    let mut s = WeightSampler::new(p.u64("seed", 0)?);
    for _ in 0..p.u64("weights", 100)? {
        let (w, z) = (s.any_weight(), s.zeta());
        for kind in [IsoKind::InvZeta, IsoKind::NegZeta] {
            let (w1, z1) = iso_transport_weight(&w, kind, &z);
            if iso_transport_weight(&w1, kind, &z1) != (w.clone(), z.clone()) {
                return Ok(Some(json!({"weight": w, "zeta": z, "kind": kind})));
            }
        }
    }
    for _ in 0..p.u64("characters", 10)? {
        let (w, z) = (s.any_weight(), s.zeta());
        let c = verma_character(&w, 4, &z);
        let m = MonomialMap::from_character(&c);
        for kind in [IsoKind::InvZeta, IsoKind::NegZeta] {
            let (m1, z1) = iso_transport_character(&m, kind, &z);
            if iso_transport_character(&m1, kind, &z1).0 != m {
                return Ok(Some(json!({"character_of": w, "zeta": z, "kind": kind})));
            }
        }
        let (c1, z1) = iso_inv_zeta_character(&c, &z);
        if iso_inv_zeta_character(&c1, &z1).0 != c {
            return Ok(Some(json!({"character_of": w, "zeta": z, "kind": "inv_zeta truncated"})));
        }
    }
    Ok(None)
}

/// Block members in the box `λ + [−N,N]³` by the parity, atypicality and
/// Casimir criterion.
pub fn bruteforce_window(lambda: &Weight, zeta: &ZetaParam, n: i64) -> BTreeSet<Weight> {
    let c = casimir(lambda, zeta);
    let mut out = BTreeSet::new();
    for a in -n..=n {
        for b in -n..=n {
            for cc in -n..=n {
                if (a - b) % 2 != 0 || (a - cc) % 2 != 0 {
                    continue;
                }
                let mu = lambda.plus_ints(a, b, cc);
                if !atypical_data(&mu, zeta).is_empty() && casimir(&mu, zeta) == c {
                    out.insert(mu);
                }
            }
        }
    }
    out
}

fn in_box(lambda: &Weight, mu: &Weight, n: i64) -> bool {
    let d = mu.sub(lambda);
    d.coords().iter().all(|c| c.to_i64().is_some_and(|v| v.abs() <= n))
}

fn block_bruteforce(p: &Params) -> Result<Witness> {
    let n = p.i64("n", 4)?;
    let zetas = p.zetas(&["2", "5/7"])?;
    let mut cases = Vec::new();
    if let Some(w) = p.weight()? {
        cases.push((zetas[0].clone(), w));
    } else {
        let mut s = WeightSampler::new(p.u64("seed", 0)?);
        for z in &zetas {
            for _ in 0..p.u64("count", 10)? {
                cases.push((z.clone(), s.atypical(z)));
            }
        }
    }
    for (zeta, lambda) in cases {
        let brute = bruteforce_window(&lambda, &zeta, n);
        let orbit: BTreeSet<Weight> = block_irreducibles(&lambda, &zeta, (4 * n + 4) as u32)?
            .into_iter()
            .filter(|mu| in_box(&lambda, mu, n))
            .collect();
        if brute != orbit {
            let extra: Vec<_> = brute.difference(&orbit).collect();
            let missing: Vec<_> = orbit.difference(&brute).collect();
            return Ok(Some(json!({"zeta": zeta, "weight": lambda, "only_bruteforce": extra, "only_orbit": missing})));
        }
    }
    Ok(None)
}

fn multiplicity_free(p: &Params) -> Result<Witness> {
    let ells = p.i64_list("ells", &[1, 2, 3])?;
    let k = p.i64("window", 6)?;
    let mut s = WeightSampler::new(p.u64("seed", 0)?);
    for zeta in p.zetas(&["2", "5/7"])? {
        let mut cache = TiltingCache::new();
        let mut weights: Vec<Weight> = (0..10).map(|_| s.typical(&zeta)).collect();
        for axis in p.axes(&[Axis::X, Axis::Y, Axis::Z])? {
            for &ell in &ells {
                let canonical = family_window(axis, ell, -k, k, &zeta);
                let flip = WeylElement::s(axis.index());
                weights.extend(canonical.iter().filter(|w| w.x.abs() <= Rational::from_int(k)).map(|w| flip.act(w)));
                weights.extend(canonical);
            }
        }
        for w in weights {
            let t = cache.tilting(&w, &zeta)?;
            if t.iter().any(|(_, c)| *c != 1) {
                return Ok(Some(json!({"zeta": zeta, "weight": w, "flag": t})));
            }
        }
    }
    Ok(None)
}

fn nonnegativity(p: &Params) -> Result<Witness> {
    let ells = p.i64_list("ells", &[1, 2, 3])?;
    let k = p.i64("window", 6)?;
    let depth = p.u64("depth", 10)? as u32;
    for zeta in p.zetas(&["2"])? {
        let mut cache = TiltingCache::new();
        for axis in p.axes(&[Axis::X])? {
            for &ell in &ells {
                let canonical = family_window(axis, ell, -k, k, &zeta);
                let flip = WeylElement::s(axis.index());
                let twisted: Vec<Weight> = canonical.iter().map(|w| flip.act(w)).collect();
                for lambda in canonical.into_iter().chain(twisted) {
                    let irr = irreducible_and_projective_with(&lambda, &zeta, depth, &mut cache)?.irr;
                    let ch = flag_to_character_at(&irr, &lambda, depth, &zeta)?;
                    if !ch.is_nonnegative() {
                        let bad: Vec<_> = ch.monomials().into_iter().filter(|(_, c)| *c < 0).take(3).collect();
                        return Ok(Some(json!({"zeta": zeta, "weight": lambda, "negative": bad})));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Compares the one-integer irreducible formula with the transported gl(2|1)
/// irreducible, for all four families and `n ≤ n_max`.
pub fn cross_check_one_integer(lambda0: &Weight, zeta: &ZetaParam, big_n: u32) -> Result<CheckReport> {
    cross_check_one_integer_with(lambda0, zeta, big_n, 5, |_| {})
}

/// Like [`cross_check_one_integer`]; `tamper` edits each formula-side flag
/// before comparison.
pub fn cross_check_one_integer_with(
    lambda0: &Weight,
    zeta: &ZetaParam,
    big_n: u32,
    n_max: i64,
    tamper: impl Fn(&mut VermaVector),
) -> Result<CheckReport> {
    let params = json!({"weight": lambda0, "zeta": zeta, "N": big_n, "n_max": n_max});
    if !is_one_integer_origin(lambda0, zeta) {
        return Err(Error::NotCanonical(lambda0.to_string()));
    }
    let block = classify_block(lambda0, zeta)?;
    for fam in OneIntFamily::ALL {
        for n in fam.min_n()..=n_max {
            let mut ours = one_integer_irreducible(lambda0, fam, n, zeta, big_n)?;
            tamper(&mut ours);
            let label = fam.label(lambda0, n);
            let gl = d21_to_gl(&label, &block, zeta)?;
            let mut theirs = VermaVector::new();
            for (g, c) in gl_irreducible(&gl.weight, big_n)? {
                theirs.add(gl_to_d21(&g, &block, zeta)?, c);
            }
            if ours != theirs {
                let diff: Vec<_> = ours
                    .iter()
                    .chain(theirs.iter())
                    .map(|(w, _)| w.clone())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .filter(|w| ours.get(w) != theirs.get(w))
                    .map(|w| json!({"weight": w, "formula": ours.get(&w), "gl": theirs.get(&w)}))
                    .collect();
                let witness = json!({"family": fam, "n": n, "label": label, "differences": diff});
                return Ok(CheckReport::new("cross_check_one_integer", params, Some(witness)));
            }
        }
    }
    Ok(CheckReport::new("cross_check_one_integer", params, None))
}

/// The origin `(0, ζz, z)` of a canonical one-integer block.
pub fn one_integer_origin_for(zeta: &ZetaParam, z: Rational) -> Weight {
    Weight::new(Rational::zero(), zeta.value() * &z, z)
}
