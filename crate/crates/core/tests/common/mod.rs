//! Brute-force oracle: D(2|1;ζ) from structure constants, Verma modules in a
//! PBW basis, and irreducible characters as Shapovalov ranks (computed mod a
//! large prime).

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};

use d21::{Rational, Weight, ZetaParam};
use num_traits::{Signed, ToPrimitive};

pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}
pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}
pub fn neg(a: u64) -> u64 {
    (P - a) % P
}
pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}
pub fn inv(a: u64) -> u64 {
    assert!(a != 0);
    pow(a, P - 2)
}
pub fn from_i64(a: i64) -> u64 {
    (a.rem_euclid(P as i64)) as u64
}
pub fn from_rat(r: &Rational) -> u64 {
    let m = |b: &num_bigint::BigInt| {
        let v = (b.abs() % num_bigint::BigInt::from(P)).to_u64().unwrap();
        if b.is_negative() {
            neg(v)
        } else {
            v
        }
    };
    mul(m(r.numer()), inv(m(r.denom())))
}

type Lin = Vec<(usize, u64)>;

/// Basis: 0..9 are e,h,f of the three sl2 copies; 9..17 are odd vectors
/// `v_{abc}` with index `9 + 4[a=-] + 2[b=-] + [c=-]`.
pub struct Superalgebra {
    pub bracket: Vec<Vec<Lin>>,
}

pub const fn odd_index(a: i8, b: i8, c: i8) -> usize {
    9 + 4 * (a < 0) as usize + 2 * (b < 0) as usize + (c < 0) as usize
}
fn odd_signs(i: usize) -> [i8; 3] {
    let j = i - 9;
    [if j & 4 == 0 { 1 } else { -1 }, if j & 2 == 0 { 1 } else { -1 }, if j & 1 == 0 { 1 } else { -1 }]
}
pub fn is_odd(i: usize) -> bool {
    i >= 9
}
pub fn weight_of(i: usize) -> [i64; 3] {
    if is_odd(i) {
        let s = odd_signs(i);
        return [s[0] as i64, s[1] as i64, s[2] as i64];
    }
    let mut w = [0; 3];
    w[i / 3] = match i % 3 {
        0 => 2,
        1 => 0,
        _ => -2,
    };
    w
}

fn psi(a: i8, b: i8) -> i64 {
    match (a, b) {
        (1, -1) => 1,
        (-1, 1) => -1,
        _ => 0,
    }
}

/// `P(u,w)` as an element of sl2 copy `k`.
fn p_elem(k: usize, a: i8, b: i8) -> Lin {
    match (a, b) {
        (1, 1) => vec![(3 * k, from_i64(2))],
        (-1, -1) => vec![(3 * k + 2, from_i64(-2))],
        _ => vec![(3 * k + 1, from_i64(-1))],
    }
}

fn push(out: &mut BTreeMap<usize, u64>, lin: &Lin, c: u64) {
    for &(i, v) in lin {
        let e = out.entry(i).or_insert(0);
        *e = add(*e, mul(v, c));
    }
}

impl Superalgebra {
    pub fn new(sigma: [u64; 3]) -> Self {
        let mut bracket = vec![vec![Vec::new(); 17]; 17];
        for x in 0..17 {
            for y in 0..17 {
                let mut out = BTreeMap::new();
                match (is_odd(x), is_odd(y)) {
                    (false, false) => {
                        if x / 3 == y / 3 {
                            let k = 3 * (x / 3);
                            let (a, b) = (x % 3, y % 3);
                            let lin: Lin = match (a, b) {
                                (1, 0) => vec![(k, from_i64(2))],
                                (0, 1) => vec![(k, from_i64(-2))],
                                (1, 2) => vec![(k + 2, from_i64(-2))],
                                (2, 1) => vec![(k + 2, from_i64(2))],
                                (0, 2) => vec![(k + 1, 1)],
                                (2, 0) => vec![(k + 1, from_i64(-1))],
                                _ => vec![],
                            };
                            push(&mut out, &lin, 1);
                        }
                    }
                    (false, true) => push(&mut out, &even_on_odd(x, y), 1),
                    (true, false) => push(&mut out, &even_on_odd(y, x), neg(1)),
                    (true, true) => {
                        let (u, w) = (odd_signs(x), odd_signs(y));
                        for k in 0..3 {
                            let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
                            let c = psi(u[others[0]], w[others[0]]) * psi(u[others[1]], w[others[1]]);
                            if c != 0 {
                                push(&mut out, &p_elem(k, u[k], w[k]), mul(sigma[k], from_i64(c)));
                            }
                        }
                    }
                }
                bracket[x][y] = out.into_iter().filter(|(_, v)| *v != 0).collect();
            }
        }
        Superalgebra { bracket }
    }

    /// Checks the super Jacobi identity on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let br = |a: &Lin, b: &Lin| -> BTreeMap<usize, u64> {
            let mut out = BTreeMap::new();
            for &(i, u) in a {
                for &(j, v) in b {
                    push(&mut out, &self.bracket[i][j], mul(u, v));
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
        for x in 0..17 {
            for y in 0..17 {
                for z in 0..17 {
                    let yz: Lin = self.bracket[y][z].clone();
                    let lhs = br(&vec![(x, 1)], &yz);
                    let xy: Lin = self.bracket[x][y].clone();
                    let mut rhs = br(&xy, &vec![(z, 1)]);
                    let xz: Lin = self.bracket[x][z].clone();
                    let t = br(&vec![(y, 1)], &xz);
                    let s = if is_odd(x) && is_odd(y) { neg(1) } else { 1 };
                    for (k, v) in t {
                        let e = rhs.entry(k).or_insert(0);
                        *e = add(*e, mul(s, v));
                    }
                    rhs.retain(|_, v| *v != 0);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn even_on_odd(x: usize, y: usize) -> Lin {
    let k = x / 3;
    let mut s = odd_signs(y);
    match x % 3 {
        0 => {
            if s[k] < 0 {
                s[k] = 1;
                vec![(odd_index(s[0], s[1], s[2]), 1)]
            } else {
                vec![]
            }
        }
        1 => vec![(y, from_i64(s[k] as i64))],
        _ => {
            if s[k] > 0 {
                s[k] = -1;
                vec![(odd_index(s[0], s[1], s[2]), 1)]
            } else {
                vec![]
            }
        }
    }
}

/// Negative part in PBW order: f1, f2, f3, then the four odd `v_{-bc}`.
pub const NEG: [usize; 7] = [2, 5, 8, 13, 14, 15, 16];
type Mono = [u16; 7];

enum Class {
    Neg(usize),
    Cartan(usize),
    Pos,
}

fn class(x: usize) -> Class {
    if let Some(p) = NEG.iter().position(|&n| n == x) {
        Class::Neg(p)
    } else if !is_odd(x) && x % 3 == 1 {
        Class::Cartan(x / 3)
    } else {
        Class::Pos
    }
}

type Vector = HashMap<Mono, u64>;

fn acc(v: &mut Vector, m: Mono, c: u64) {
    if c == 0 {
        return;
    }
    let e = v.entry(m).or_insert(0);
    *e = add(*e, c);
    if *e == 0 {
        v.remove(&m);
    }
}

/// Verma module with (unshifted) highest weight `lam`.
pub struct Verma<'a> {
    g: &'a Superalgebra,
    lam: [u64; 3],
    memo: HashMap<(usize, Mono), Vector>,
}

impl<'a> Verma<'a> {
    pub fn new(g: &'a Superalgebra, lam: [u64; 3]) -> Self {
        Verma { g, lam, memo: HashMap::new() }
    }

    fn mono_weight(m: &Mono) -> [i64; 3] {
        let mut w = [0; 3];
        for (p, &e) in m.iter().enumerate() {
            let r = weight_of(NEG[p]);
            for i in 0..3 {
                w[i] += r[i] * e as i64;
            }
        }
        w
    }

    fn apply_vec(&mut self, x: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (m, c) in v {
            let r = self.act(x, *m);
            for (m2, c2) in r {
                acc(&mut out, m2, mul(*c, c2));
            }
        }
        out
    }

    pub fn act(&mut self, x: usize, m: Mono) -> Vector {
        if let Some(r) = self.memo.get(&(x, m)) {
            return r.clone();
        }
        let r = self.compute(x, m);
        self.memo.insert((x, m), r.clone());
        r
    }

    fn compute(&mut self, x: usize, m: Mono) -> Vector {
        let mut out = Vector::new();
        let first = m.iter().position(|&e| e > 0);
        let Some(first) = first else {
            match class(x) {
                Class::Pos => {}
                Class::Cartan(i) => acc(&mut out, m, self.lam[i]),
                Class::Neg(p) => {
                    let mut u = [0; 7];
                    u[p] = 1;
                    acc(&mut out, u, 1);
                }
            }
            return out;
        };
        let y = NEG[first];
        let mut rest = m;
        rest[first] -= 1;
        let sign = if is_odd(x) && is_odd(y) { neg(1) } else { 1 };
        match class(x) {
            Class::Cartan(i) => {
                let w = Self::mono_weight(&m);
                acc(&mut out, m, add(self.lam[i], from_i64(w[i])));
            }
            Class::Neg(p) if p < first || (p == first && !is_odd(x)) => {
                let mut u = m;
                u[p] += 1;
                acc(&mut out, u, 1);
            }
            Class::Neg(p) if p == first => {
                let half = inv(2);
                for (z, c) in self.g.bracket[x][x].clone() {
                    for (m2, c2) in self.act(z, rest) {
                        acc(&mut out, m2, mul(mul(c, half), c2));
                    }
                }
            }
            _ => {
                for (z, c) in self.g.bracket[x][y].clone() {
                    for (m2, c2) in self.act(z, rest) {
                        acc(&mut out, m2, mul(c, c2));
                    }
                }
                let xr = self.act(x, rest);
                for (m2, c2) in self.apply_vec(y, &xr) {
                    acc(&mut out, m2, mul(sign, c2));
                }
            }
        }
        out
    }
}

/// PBW monomials of weight `−ν`, `ν = (a, 2m−a, 2n−a)`.
pub fn weight_basis(nu: [i64; 3]) -> Vec<Mono> {
    let mut out = Vec::new();
    for s in 0u8..16 {
        let mut m = [0u16; 7];
        let mut w = [0i64; 3];
        for j in 0..4 {
            if s & (1 << j) != 0 {
                m[3 + j] = 1;
                let r = weight_of(NEG[3 + j]);
                for i in 0..3 {
                    w[i] += r[i];
                }
            }
        }
        let mut ok = true;
        for i in 0..3 {
            let d = -nu[i] - w[i];
            if d > 0 || d % 2 != 0 {
                ok = false;
                break;
            }
            m[i] = (-d / 2) as u16;
        }
        if ok {
            out.push(m);
        }
    }
    out
}

fn rref(mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let iv = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = mul(*v, iv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = mul(f, rows[r][j]);
                    rows[i][j] = add(rows[i][j], neg(t));
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

const SIMPLE: [(usize, [i64; 3]); 3] = [(odd_index(1, -1, -1), [1, -1, -1]), (3, [0, 2, 0]), (6, [0, 0, 2])];

/// `σ = (−(1+ζ), 1, ζ)`: the sl2 copies carry the invariant form with these weights.
pub fn algebra_for(zeta: &ZetaParam) -> Superalgebra {
    let z = from_rat(zeta.value());
    Superalgebra::new([neg(add(z, 1)), 1, z])
}

/// `dim L(λ−ρ)_{λ−ρ−ν}` for every `ν = aα₀ + mα₁ + nα₂` with `a+m+n ≤ depth`,
/// keyed by `(a, m, n)`.
type Projection = (Vec<Mono>, Vec<Vec<u64>>);

pub fn irreducible_dims(g: &Superalgebra, lambda: &Weight, depth: i64) -> BTreeMap<[i64; 3], usize> {
    let top = lambda.unshifted();
    let lam = [from_rat(&top.x), from_rat(&top.y), from_rat(&top.z)];
    let mut verma = Verma::new(g, lam);
    let mut proj: HashMap<[i64; 3], Projection> = HashMap::new();
    let mut out = BTreeMap::new();
    let mut keys: Vec<[i64; 3]> = Vec::new();
    for h in 0..=depth {
        for a in 0..=h {
            for m in 0..=(h - a) {
                keys.push([a, m, h - a - m]);
            }
        }
    }
    for key in keys {
        let [a, m, n] = key;
        let nu = [a, 2 * m - a, 2 * n - a];
        let basis = weight_basis(nu);
        if key == [0, 0, 0] {
            proj.insert(key, (basis.clone(), vec![vec![1]]));
            out.insert(key, 1);
            continue;
        }
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (s, (e, _)) in SIMPLE.iter().enumerate() {
            let mut lower = key;
            lower[s] -= 1;
            if lower[s] < 0 {
                continue;
            }
            let Some((lb, pm)) = proj.get(&lower) else { continue };
            let index: HashMap<Mono, usize> = lb.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    let v = verma.act(*e, *b);
                    let mut col = vec![0u64; lb.len()];
                    for (mm, c) in v {
                        col[index[&mm]] = add(col[index[&mm]], c);
                    }
                    col
                })
                .collect();
            for prow in pm {
                let row: Vec<u64> = images
                    .iter()
                    .map(|col| col.iter().zip(prow).fold(0, |s, (x, y)| add(s, mul(*x, *y))))
                    .collect();
                rows.push(row);
            }
        }
        let red = rref(rows, basis.len());
        out.insert(key, red.len());
        proj.insert(key, (basis, red));
    }
    out
}

/// `[M_μ : L_κ]` for every `κ` within `depth` below `μ`, by peeling oracle
/// irreducible characters off the Verma character.
pub fn verma_composition(g: &Superalgebra, mu: &Weight, depth: i64) -> BTreeMap<[i64; 3], i64> {
    let series = d21::character::verma_character(mu, depth as u32, &"1".parse().unwrap());
    let mut rest: BTreeMap<[i64; 3], i64> = series.offset_terms().iter().map(|(k, v)| (*k, *v)).collect();
    let mut out = BTreeMap::new();
    loop {
        let next = rest
            .iter()
            .filter(|(_, v)| **v != 0)
            .min_by_key(|(k, _)| (k[0] + k[1] + k[2], **k))
            .map(|(k, v)| (*k, *v));
        let Some((off, c)) = next else { break };
        out.insert(off, c);
        let kappa = mu.plus_ints(-off[0], off[0] - 2 * off[1], off[0] - 2 * off[2]);
        let h = off[0] + off[1] + off[2];
        for (k, d) in irreducible_dims(g, &kappa, depth - h) {
            let t = [off[0] + k[0], off[1] + k[1], off[2] + k[2]];
            let e = rest.entry(t).or_insert(0);
            *e -= c * d as i64;
        }
        rest.retain(|_, v| *v != 0);
    }
    out
}
