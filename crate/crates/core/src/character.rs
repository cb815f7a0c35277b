//! Truncated formal characters and Verma-basis vectors.
//!
//! A [`FormalCharacter`] is anchored at a ρ-shifted weight `λ` and stores the
//! coefficient of `e^μ` for `μ = (λ − ρ) − (a·α0 + m·α1 + n·α2)` with
//! `a + m + n ≤ depth`. Internally the key is the offset `[a, m, n]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{
    dominance_decompose, simple_root_offset, Root, Weight, ZetaParam, EVEN_POSITIVE, ODD_POSITIVE,
};
use crate::error::{Error, Result};

pub type Offset = [i64; 3];

fn height(o: &Offset) -> i64 {
    o[0] + o[1] + o[2]
}

/// Dense cube of coefficients indexed by offsets with entries `0..=depth`.
struct Dense {
    depth: i64,
    data: Vec<i64>,
}

impl Dense {
    fn new(depth: u32) -> Dense {
        let d = depth as i64 + 1;
        Dense { depth: depth as i64, data: vec![0; (d * d * d) as usize] }
    }

    fn idx(&self, o: &Offset) -> Option<usize> {
        if o.iter().any(|&v| v < 0) || height(o) > self.depth {
            return None;
        }
        let d = self.depth + 1;
        Some(((o[0] * d + o[1]) * d + o[2]) as usize)
    }

    fn get(&self, o: &Offset) -> i64 {
        self.idx(o).map_or(0, |i| self.data[i])
    }

    fn add(&mut self, o: &Offset, v: i64) {
        if let Some(i) = self.idx(o) {
            self.data[i] += v;
        }
    }

    /// All in-range offsets in lexicographic order.
    fn offsets(&self) -> Vec<Offset> {
        let d = self.depth;
        let mut out = Vec::new();
        for a in 0..=d {
            for m in 0..=d - a {
                for n in 0..=d - a - m {
                    out.push([a, m, n]);
                }
            }
        }
        out
    }

    fn from_sparse(depth: u32, terms: &BTreeMap<Offset, i64>) -> Dense {
        let mut out = Dense::new(depth);
        for (o, v) in terms {
            out.add(o, *v);
        }
        out
    }

    fn to_sparse(&self) -> BTreeMap<Offset, i64> {
        self.offsets()
            .into_iter()
            .filter_map(|o| {
                let v = self.get(&o);
                (v != 0).then_some((o, v))
            })
            .collect()
    }

    /// Multiply by `1 + s·e^{−r}` (odd factor, `s = ±1`).
    fn mul_odd(&mut self, r: &Offset, s: i64) {
        let mut offs = self.offsets();
        offs.reverse();
        for o in offs {
            let src = [o[0] - r[0], o[1] - r[1], o[2] - r[2]];
            let v = self.get(&src);
            if v != 0 {
                self.add(&o, s * v);
            }
        }
    }

    /// Divide by `1 + s·e^{−r}`.
    fn div_odd(&mut self, r: &Offset, s: i64) {
        for o in self.offsets() {
            let src = [o[0] - r[0], o[1] - r[1], o[2] - r[2]];
            let v = self.get(&src);
            if v != 0 {
                self.add(&o, -s * v);
            }
        }
    }
}

type SeriesCache = Mutex<HashMap<u32, Arc<BTreeMap<Offset, i64>>>>;

fn series_cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Π_odd (1 + e^{−β}) / Π_even (1 − e^{−β})` truncated at `depth`, keyed by offset.
pub fn verma_series(depth: u32) -> Arc<BTreeMap<Offset, i64>> {
    if let Some(s) = series_cache().lock().unwrap().get(&depth) {
        return s.clone();
    }
    let mut dense = Dense::new(depth);
    dense.add(&[0, 0, 0], 1);
    for r in ODD_POSITIVE {
        dense.mul_odd(&r.simple_coords(), 1);
    }
    for r in EVEN_POSITIVE {
        dense.div_odd(&r.simple_coords(), -1);
    }
    let series = Arc::new(dense.to_sparse());
    series_cache().lock().unwrap().insert(depth, series.clone());
    series
}

/// Truncated character anchored at a ρ-shifted weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalCharacter {
    base: Weight,
    depth: u32,
    terms: BTreeMap<Offset, i64>,
}

impl FormalCharacter {
    pub fn zero(base: Weight, depth: u32) -> Self {
        FormalCharacter { base, depth, terms: BTreeMap::new() }
    }

    /// Builds a character from `(exponent, coeff)` pairs; exponents are
    /// unshifted weights. Terms outside the truncation cone are dropped,
    /// terms in a different root-lattice coset are an error.
    pub fn from_monomials<I>(base: Weight, depth: u32, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, i64)>,
    {
        let mut c = FormalCharacter::zero(base, depth);
        for (mu, k) in monomials {
            c.add_monomial(&mu, k)?;
        }
        Ok(c)
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Highest exponent `base − ρ`.
    pub fn top(&self) -> Weight {
        self.base.unshifted()
    }

    pub fn offset_terms(&self) -> &BTreeMap<Offset, i64> {
        &self.terms
    }

    pub fn exponent(&self, o: &Offset) -> Weight {
        exponent_at(&self.base, o).unshifted()
    }

    fn offset_of(&self, mu: &Weight) -> Result<Offset> {
        simple_root_offset(&self.top(), mu).ok_or_else(|| Error::CosetMismatch {
            weight: mu.to_string(),
            anchor: self.top().to_string(),
        })
    }

    fn in_cone(&self, o: &Offset) -> bool {
        o.iter().all(|&v| v >= 0) && height(o) <= self.depth as i64
    }

    /// Coefficient of `e^μ` (unshifted exponent).
    pub fn coeff(&self, mu: &Weight) -> i64 {
        match simple_root_offset(&self.top(), mu) {
            Some(o) => self.terms.get(&o).copied().unwrap_or(0),
            None => 0,
        }
    }

    pub fn coeff_at_offset(&self, o: &Offset) -> i64 {
        self.terms.get(o).copied().unwrap_or(0)
    }

    pub fn add_monomial(&mut self, mu: &Weight, k: i64) -> Result<()> {
        let o = self.offset_of(mu)?;
        if self.in_cone(&o) {
            self.bump(o, k);
        }
        Ok(())
    }

    fn bump(&mut self, o: Offset, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(o).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&o);
        }
    }

    /// `self += k·other`, keeping `self`'s anchor and depth.
    pub fn add_scaled(&mut self, other: &FormalCharacter, k: i64) -> Result<()> {
        let shift = simple_root_offset(&self.top(), &other.top()).ok_or_else(|| Error::CosetMismatch {
            weight: other.top().to_string(),
            anchor: self.top().to_string(),
        })?;
        for (o, v) in &other.terms {
            let t = [o[0] + shift[0], o[1] + shift[1], o[2] + shift[2]];
            if self.in_cone(&t) {
                self.bump(t, k * v);
            }
        }
        Ok(())
    }

    /// `(exponent, coeff)` pairs ordered by height, then lexicographically by offset.
    pub fn monomials(&self) -> Vec<(Weight, i64)> {
        let mut offs: Vec<&Offset> = self.terms.keys().collect();
        offs.sort_by_key(|o| (height(o), **o));
        offs.into_iter().map(|o| (self.exponent(o), self.terms[o])).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&v| v >= 0)
    }

    pub fn top_coefficient(&self) -> i64 {
        self.coeff_at_offset(&[0, 0, 0])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same exponents with the same coefficients, regardless of anchor.
    pub fn same_terms(&self, other: &FormalCharacter) -> bool {
        let a: BTreeMap<Weight, i64> = self.monomials().into_iter().collect();
        let b: BTreeMap<Weight, i64> = other.monomials().into_iter().collect();
        a == b
    }

    /// Re-truncates to a smaller depth.
    pub fn truncate(&self, depth: u32) -> FormalCharacter {
        let terms = self
            .terms
            .iter()
            .filter(|(o, _)| height(o) <= depth as i64)
            .map(|(o, v)| (*o, *v))
            .collect();
        FormalCharacter { base: self.base.clone(), depth: depth.min(self.depth), terms }
    }

    fn dense(&self) -> Dense {
        Dense::from_sparse(self.depth, &self.terms)
    }

    fn with_dense(&self, dense: Dense) -> FormalCharacter {
        FormalCharacter { base: self.base.clone(), depth: self.depth, terms: dense.to_sparse() }
    }
}

fn exponent_at(base: &Weight, o: &Offset) -> Weight {
    let [a, m, n] = *o;
    base.plus_ints(-a, a - 2 * m, a - 2 * n)
}

/// Truncated character of the Verma module `M_λ`.
pub fn verma_character(lambda: &Weight, depth: u32, _zeta: &ZetaParam) -> FormalCharacter {
    let series = verma_series(depth);
    FormalCharacter { base: lambda.clone(), depth, terms: (*series).clone() }
}

/// Finite integer combination of Verma classes, keyed by ρ-shifted highest weight.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VermaVector {
    terms: BTreeMap<Weight, i64>,
}

impl VermaVector {
    pub fn new() -> Self {
        VermaVector::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut v = VermaVector::new();
        for (w, k) in terms {
            v.add(w, k);
        }
        v
    }

    /// Multiplicity-one vector on the given support.
    pub fn from_support<I: IntoIterator<Item = Weight>>(support: I) -> Self {
        VermaVector::from_terms(support.into_iter().map(|w| (w, 1)))
    }

    pub fn add(&mut self, w: Weight, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_vector(&mut self, other: &VermaVector, k: i64) {
        for (w, v) in &other.terms {
            self.add(w.clone(), k * v);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Weight> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&v| v >= 0)
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> VermaVector {
        VermaVector::from_terms(self.terms.iter().map(|(w, k)| (f(w), *k)))
    }

    /// Members not strictly below any other member.
    pub fn maximal_elements(&self) -> Vec<Weight> {
        maximal_elements(self.terms.keys())
    }

    /// Terms ordered so that higher weights come first (dominance-compatible).
    pub fn ordered_terms(&self) -> Vec<(Weight, i64)> {
        let mut out: Vec<(Weight, i64)> = self.terms.iter().map(|(w, k)| (w.clone(), *k)).collect();
        if let Some(anchor) = join(out.iter().map(|(w, _)| w)) {
            out.sort_by_key(|(w, _)| {
                let o = simple_root_offset(&anchor, w).unwrap_or([0, 0, 0]);
                (height(&o), o)
            });
        }
        out
    }
}

/// Elements of `ws` with nothing strictly above them inside `ws`.
pub fn maximal_elements<'a, I: IntoIterator<Item = &'a Weight>>(ws: I) -> Vec<Weight> {
    let all: Vec<&Weight> = ws.into_iter().collect();
    all.iter()
        .filter(|mu| !all.iter().any(|nu| nu != *mu && dominance_decompose(nu, mu).is_some()))
        .map(|w| (*w).clone())
        .collect()
}

/// Least upper bound in the dominance order of weights in one root-lattice coset.
pub fn join<'a, I: IntoIterator<Item = &'a Weight>>(ws: I) -> Option<Weight> {
    let mut it = ws.into_iter();
    let first = it.next()?.clone();
    let mut mins = [0i64; 3];
    for w in it {
        let o = simple_root_offset(&first, w)?;
        for i in 0..3 {
            mins[i] = mins[i].min(o[i]);
        }
    }
    Some(exponent_at(&first, &mins))
}

/// Character of a Verma-basis vector, truncated `depth` below its maximal term
/// (or below the join of its maximal terms).
pub fn flag_to_character(v: &VermaVector, depth: u32, zeta: &ZetaParam) -> Result<FormalCharacter> {
    let anchor = match join(v.terms.keys()) {
        Some(a) => a,
        None => match v.terms.keys().next() {
            None => return Ok(FormalCharacter::zero(Weight::zero(), depth)),
            Some(w) => {
                let bad = v.terms.keys().find(|u| simple_root_offset(w, u).is_none()).unwrap();
                return Err(Error::CosetMismatch { weight: bad.to_string(), anchor: w.to_string() });
            }
        },
    };
    flag_to_character_at(v, &anchor, depth, zeta)
}

/// Like [`flag_to_character`] with an explicit anchor.
pub fn flag_to_character_at(
    v: &VermaVector,
    anchor: &Weight,
    depth: u32,
    zeta: &ZetaParam,
) -> Result<FormalCharacter> {
    let mut out = FormalCharacter::zero(anchor.clone(), depth);
    let series = verma_character(anchor, depth, zeta);
    for (w, k) in &v.terms {
        let o = simple_root_offset(anchor, w)
            .ok_or_else(|| Error::CosetMismatch { weight: w.to_string(), anchor: anchor.to_string() })?;
        if o.iter().any(|&c| c < 0) {
            return Err(Error::Inconsistent(format!("{w} lies above the anchor {anchor}")));
        }
        for (s, c) in series.terms.iter() {
            let t = [o[0] + s[0], o[1] + s[1], o[2] + s[2]];
            if height(&t) <= depth as i64 {
                out.bump(t, k * c);
            }
        }
    }
    Ok(out)
}

/// Unitriangular peel-off: writes a truncated character in the Verma basis.
pub fn character_to_flag(c: &FormalCharacter, zeta: &ZetaParam) -> VermaVector {
    let mut rest = c.clone();
    let series = verma_character(&c.base, c.depth, zeta);
    let mut out = VermaVector::new();
    for h in 0..=c.depth as i64 {
        let level: Vec<Offset> = rest.terms.keys().filter(|o| height(o) == h).copied().collect();
        for o in level {
            let k = rest.coeff_at_offset(&o);
            if k == 0 {
                continue;
            }
            out.add(exponent_at(&c.base, &o), k);
            for (s, v) in series.terms.iter() {
                let t = [o[0] + s[0], o[1] + s[1], o[2] + s[2]];
                if height(&t) <= c.depth as i64 {
                    rest.bump(t, -k * v);
                }
            }
        }
    }
    debug_assert!(rest.is_empty());
    out
}

fn odd_offset(alpha: &Root) -> Result<Offset> {
    if !alpha.is_odd() {
        return Err(Error::EvenRoot(alpha.to_string()));
    }
    let o = alpha.simple_coords();
    if o.iter().any(|&v| v < 0) {
        return Err(Error::Parse(format!("{alpha} is not a positive root")));
    }
    Ok(o)
}

/// Multiplies by `Σ_{i≥0} (−1)^i e^{−iα}`, i.e. divides by `1 + e^{−α}`.
pub fn geometric_divide(c: &FormalCharacter, alpha: &Root) -> Result<FormalCharacter> {
    let r = odd_offset(alpha)?;
    let mut d = c.dense();
    d.div_odd(&r, 1);
    Ok(c.with_dense(d))
}

/// Multiplies by `1 + e^{−α}`.
pub fn multiply_by_factor(c: &FormalCharacter, alpha: &Root) -> Result<FormalCharacter> {
    let r = odd_offset(alpha)?;
    let mut d = c.dense();
    d.mul_odd(&r, 1);
    Ok(c.with_dense(d))
}
