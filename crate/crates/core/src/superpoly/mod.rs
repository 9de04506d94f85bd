//! Finitely presented super-commutative superalgebras 𝕜[X|Y]/I.
//!
//! Invertible even generators are modelled by an adjoined partner variable
//! `t^-1` together with the relation `t·t^-1 − 1`; normal forms never contain
//! both, so a normal monomial reads as a Laurent monomial.

pub mod graded;
pub mod groebner;
pub mod mono;
pub mod tensor;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

pub use mono::{add_scaled, add_term, poly_parity, scaled, Mono, Poly};
pub use tensor::{Tensor, TensorAlg};

use crate::superlinalg::{Field, Parity, Scalar, SparseVec};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenVar {
    pub name: String,
    pub weight: u32,
    /// Index of the inverse partner, when the generator is invertible.
    pub partner: Option<usize>,
    pub is_inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddVar {
    pub name: String,
    pub weight: u32,
}

/// A presentation with a Gröbner basis of its relations.
#[derive(Debug)]
pub struct Presentation {
    pub field: Field,
    pub even: Vec<EvenVar>,
    pub odd: Vec<OddVar>,
    /// Relations as supplied (inverse relations excluded).
    pub relations: Vec<Poly>,
    gb: Vec<Poly>,
    complete: bool,
    cache: Mutex<HashMap<Mono, Poly>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            field: self.field,
            even: self.even.clone(),
            odd: self.odd.clone(),
            relations: self.relations.clone(),
            gb: self.gb.clone(),
            complete: self.complete,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

/// Specification of an even generator: name, invertible flag, weight.
#[derive(Clone, Debug)]
pub struct EvenSpec {
    pub name: String,
    pub invertible: bool,
    pub weight: u32,
}

impl EvenSpec {
    pub fn new(name: &str, invertible: bool) -> EvenSpec {
        EvenSpec { name: name.to_string(), invertible, weight: 1 }
    }
}

impl Presentation {
    /// Free super-commutative algebra on the given generators (inverse
    /// relations included).
    pub fn free(field: Field, even: &[EvenSpec], odd: &[(String, u32)]) -> Result<Presentation, Error> {
        if odd.len() > 64 {
            return Err(Error::Invalid("at most 64 odd generators are supported".into()));
        }
        let mut vars: Vec<EvenVar> = even
            .iter()
            .map(|s| EvenVar { name: s.name.clone(), weight: s.weight, partner: None, is_inverse: false })
            .collect();
        for (i, s) in even.iter().enumerate() {
            if s.invertible {
                let j = vars.len();
                vars[i].partner = Some(j);
                vars.push(EvenVar { name: format!("{}^-1", s.name), weight: s.weight, partner: Some(i), is_inverse: true });
            }
        }
        let odd = odd.iter().map(|(n, w)| OddVar { name: n.clone(), weight: *w }).collect();
        let mut p = Presentation {
            field,
            even: vars,
            odd,
            relations: Vec::new(),
            gb: Vec::new(),
            complete: true,
            cache: Mutex::new(HashMap::new()),
        };
        p.check_names()?;
        p.rebuild()?;
        Ok(p)
    }

    /// Presentation on explicit variable lists (partners must be consistent).
    pub fn with_vars(field: Field, even: Vec<EvenVar>, odd: Vec<OddVar>, relations: Vec<Poly>) -> Result<Presentation, Error> {
        if odd.len() > 64 {
            return Err(Error::Invalid("at most 64 odd generators are supported".into()));
        }
        let p = Presentation {
            field,
            even,
            odd,
            relations: Vec::new(),
            gb: Vec::new(),
            complete: true,
            cache: Mutex::new(HashMap::new()),
        };
        p.check_names()?;
        p.with_relations(relations)
    }

    fn check_names(&self) -> Result<(), Error> {
        let mut seen = std::collections::HashSet::new();
        for n in self.even.iter().map(|v| &v.name).chain(self.odd.iter().map(|v| &v.name)) {
            if !seen.insert(n.clone()) {
                return Err(Error::Invalid(format!("duplicate generator '{n}'")));
            }
        }
        Ok(())
    }

    /// Same generators, relations replaced by `relations`.
    pub fn with_relations(&self, relations: Vec<Poly>) -> Result<Presentation, Error> {
        for r in &relations {
            if poly_parity(r).is_none() {
                return Err(Error::Invalid(format!("relation {} is not parity-homogeneous", self.fmt(r))));
            }
        }
        let mut p = Presentation {
            field: self.field,
            even: self.even.clone(),
            odd: self.odd.clone(),
            relations: relations.into_iter().filter(|r| !r.is_empty()).collect(),
            gb: Vec::new(),
            complete: true,
            cache: Mutex::new(HashMap::new()),
        };
        p.rebuild()?;
        Ok(p)
    }

    /// Adds relations to the existing ones.
    pub fn quotient(&self, extra: &[Poly]) -> Result<Presentation, Error> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        self.with_relations(rels)
    }

    fn rebuild(&mut self) -> Result<(), Error> {
        let mut input = self.inverse_relations();
        input.extend(self.relations.iter().cloned());
        let (gb, complete) = groebner::groebner(self, input);
        self.gb = gb;
        self.complete = complete;
        self.cache = Mutex::new(HashMap::new());
        Ok(())
    }

    pub fn inverse_relations(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for (i, v) in self.even.iter().enumerate() {
            if let (Some(j), false) = (v.partner, v.is_inverse) {
                let mut e = vec![0; self.even.len()];
                e[i] = 1;
                e[j] = 1;
                let m = self.mono(e, 0);
                let mut p = Poly::new();
                p.insert(m, self.field.one());
                add_term(&mut p, self.one_mono(), self.field.int(-1));
                out.push(p);
            }
        }
        out
    }

    /// True when completion finished within the effort cap.
    pub fn is_confluent(&self) -> bool {
        self.complete
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.gb
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn even_weights(&self) -> Vec<u32> {
        self.even.iter().map(|v| v.weight).collect()
    }

    pub fn odd_weights(&self) -> Vec<u32> {
        self.odd.iter().map(|v| v.weight).collect()
    }

    pub fn mono(&self, e: Vec<u32>, o: u64) -> Mono {
        let w = mono::weight_of(&e, o, &self.even_weights(), &self.odd_weights());
        Mono { w, e, o }
    }

    pub fn one_mono(&self) -> Mono {
        Mono::one(self.n_even())
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        let mut p = Poly::new();
        add_term(&mut p, self.one_mono(), c);
        p
    }

    pub fn even_var(&self, i: usize) -> Poly {
        let mut e = vec![0; self.n_even()];
        e[i] = 1;
        let mut p = Poly::new();
        p.insert(self.mono(e, 0), self.field.one());
        p
    }

    pub fn odd_var(&self, j: usize) -> Poly {
        let mut p = Poly::new();
        p.insert(self.mono(vec![0; self.n_even()], 1 << j), self.field.one());
        p
    }

    /// Variable by position in the combined list (even first, then odd).
    pub fn var(&self, k: usize) -> Poly {
        if k < self.n_even() {
            self.even_var(k)
        } else {
            self.odd_var(k - self.n_even())
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_even() + self.n_odd()
    }

    pub fn var_name(&self, k: usize) -> &str {
        if k < self.n_even() {
            &self.even[k].name
        } else {
            &self.odd[k - self.n_even()].name
        }
    }

    pub fn var_parity(&self, k: usize) -> Parity {
        u8::from(k >= self.n_even())
    }

    /// Looks a generator up by name (user-visible generators and `t^-1`).
    pub fn lookup(&self, name: &str) -> Option<usize> {
        (0..self.n_vars()).find(|k| self.var_name(*k) == name)
    }

    /// Generators that a user would name (excludes inverse partners).
    pub fn user_vars(&self) -> Vec<usize> {
        (0..self.n_vars()).filter(|k| *k >= self.n_even() || !self.even[*k].is_inverse).collect()
    }

    /// Generator raised to an integer power; negative powers need an
    /// invertible generator.
    pub fn gen_pow(&self, name: &str, exp: i64) -> Result<Poly, Error> {
        let k = self.lookup(name).ok_or_else(|| Error::Invalid(format!("unknown generator '{name}'")))?;
        if exp >= 0 {
            return Ok(self.pow(&self.var(k), exp as u32));
        }
        if k >= self.n_even() {
            return Err(Error::Invalid(format!("negative exponent on odd generator '{name}'")));
        }
        let j = self.even[k]
            .partner
            .ok_or_else(|| Error::Invalid(format!("negative exponent on non-invertible generator '{name}'")))?;
        Ok(self.pow(&self.even_var(j), (-exp) as u32))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        mono::sum(a, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        mono::sub(a, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        scaled(a, &self.field.int(-1))
    }

    /// Product of normal forms, reduced.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = if neg { -(ca * cb) } else { ca * cb };
                    let nf = self.nf_mono(&m);
                    add_scaled(&mut out, &c, &nf);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn product(&self, fs: &[Poly]) -> Poly {
        fs.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Normal form of a single monomial (cached).
    pub fn nf_mono(&self, m: &Mono) -> Poly {
        if self.gb.is_empty() {
            return Poly::from([(m.clone(), self.field.one())]);
        }
        if let Some(p) = self.cache.lock().unwrap().get(m) {
            return p.clone();
        }
        let p = self.nf(&Poly::from([(m.clone(), self.field.one())]));
        self.cache.lock().unwrap().insert(m.clone(), p.clone());
        p
    }

    /// Normal form modulo the relations.
    pub fn nf(&self, p: &Poly) -> Poly {
        groebner::reduce(p, &self.gb)
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.nf(p).is_empty()
    }

    pub fn is_normal(&self, m: &Mono) -> bool {
        !self.gb.iter().any(|g| g.keys().next_back().unwrap().divides(m))
    }

    /// Inverse of a purely even monomial in the invertible generators.
    pub fn invert_mono(&self, m: &Mono) -> Option<Mono> {
        if m.o != 0 {
            return None;
        }
        let mut e = vec![0u32; self.n_even()];
        for (i, k) in m.e.iter().enumerate() {
            if *k > 0 {
                e[self.even[i].partner?] += k;
            }
        }
        Some(self.mono(e, 0))
    }

    /// Inverse of a unit (invertible monomial plus odd-nilpotent part).
    pub fn invert(&self, p: &Poly) -> Option<Poly> {
        let ta = TensorAlg::new([self]);
        let t: Tensor = p.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect();
        let inv = ta.invert(&t)?;
        Some(inv.into_iter().map(|(mut k, c)| (k.pop().unwrap(), c)).collect())
    }

    /// Normal monomials of weight ≤ bound, ascending in the monomial order.
    pub fn truncated_basis(&self, bound: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let ne = self.n_even();
        let mut e = vec![0u32; ne];
        self.enum_even(0, bound, &mut e, &mut out);
        let mut full = Vec::new();
        for m in out {
            for o in 0..(1u64 << self.n_odd()) {
                let mm = self.mono(m.clone(), o);
                if mm.w <= bound && self.is_normal(&mm) {
                    full.push(mm);
                }
            }
        }
        full.sort();
        full
    }

    /// All monomials of the free algebra (no reduction) of weight ≤ bound.
    pub fn free_monomials(&self, bound: u32) -> Vec<Mono> {
        let mut evens = Vec::new();
        let mut e = vec![0u32; self.n_even()];
        self.enum_even(0, bound, &mut e, &mut evens);
        let mut out = Vec::new();
        for e in evens {
            for o in 0..(1u64 << self.n_odd()) {
                let m = self.mono(e.clone(), o);
                if m.w <= bound {
                    out.push(m);
                }
            }
        }
        out.sort();
        out
    }

    fn enum_even(&self, i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == e.len() {
            out.push(e.clone());
            return;
        }
        let w = self.even[i].weight.max(1);
        let mut k = 0;
        loop {
            e[i] = k;
            self.enum_even(i + 1, left - k * w, e, out);
            if (k + 1) * w > left {
                break;
            }
            k += 1;
        }
        e[i] = 0;
    }

    /// Localization at an even element x: a fresh generator `u` with x·u = 1.
    pub fn localize_at(&self, x: &Poly, name: &str) -> Result<Localization, Error> {
        let x = self.nf(x);
        if x.is_empty() {
            return Err(Error::Invalid("cannot localize at zero".into()));
        }
        if poly_parity(&x) != Some(0) {
            return Err(Error::Invalid("can only localize at an even element".into()));
        }
        let mut vars = self.even.clone();
        let u = vars.len();
        vars.push(EvenVar { name: name.to_string(), weight: 1, partner: None, is_inverse: false });
        let p = Presentation {
            field: self.field,
            even: vars,
            odd: self.odd.clone(),
            relations: Vec::new(),
            gb: Vec::new(),
            complete: true,
            cache: Mutex::new(HashMap::new()),
        };
        p.check_names()?;
        let mut rels: Vec<Poly> = self.relations.iter().map(|r| extend_poly(&p, r)).collect();
        let xu = p.mul(&extend_poly(&p, &x), &p.even_var(u));
        rels.push(p.sub(&xu, &p.one()));
        let p = p.with_relations(rels)?;
        Ok(Localization { algebra: p, inverse_var: u })
    }

    /// The purely even quotient 𝒜/(𝒜₁): odd generators set to zero.
    pub fn even_quotient(&self) -> Result<Presentation, Error> {
        let free = Presentation {
            field: self.field,
            even: self.even.clone(),
            odd: Vec::new(),
            relations: Vec::new(),
            gb: Vec::new(),
            complete: true,
            cache: Mutex::new(HashMap::new()),
        };
        let rels = self.relations.iter().map(kill_odd).collect();
        free.with_relations(rels)
    }

    /// Coordinates of a polynomial against an indexed monomial list.
    pub fn coords(&self, p: &Poly, index: &HashMap<Mono, usize>) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (m, c) in p {
            v.insert(*index.get(m)?, c.clone());
        }
        Some(v)
    }

    pub fn fmt_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, v) in self.even.iter().enumerate() {
            if v.is_inverse {
                continue;
            }
            let k = m.e[i] as i64 - v.partner.map(|j| m.e[j] as i64).unwrap_or(0);
            let both = v.partner.map(|j| m.e[i] > 0 && m.e[j] > 0).unwrap_or(false);
            if both {
                parts.push(pow_str(&v.name, m.e[i] as i64));
                parts.push(pow_str(&v.name, -(m.e[v.partner.unwrap()] as i64)));
            } else if k != 0 {
                parts.push(pow_str(&v.name, k));
            }
        }
        for (j, v) in self.odd.iter().enumerate() {
            if m.o >> j & 1 == 1 {
                parts.push(v.name.clone());
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text form, leading term first.
    pub fn fmt(&self, p: &Poly) -> String {
        fmt_terms(p.iter().rev().map(|(m, c)| (self.fmt_mono(m), c.clone())))
    }
}

fn pow_str(name: &str, k: i64) -> String {
    if k == 1 {
        name.to_string()
    } else {
        format!("{name}^{k}")
    }
}

/// Formats a list of (monomial text, coefficient) as a signed sum.
pub fn fmt_terms(terms: impl Iterator<Item = (String, Scalar)>) -> String {
    let mut s = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -&c } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m == "1" {
            let _ = write!(s, "{abs}");
        } else if abs.is_one() {
            s.push_str(&m);
        } else {
            let _ = write!(s, "{abs}*{m}");
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Drops every term containing an odd variable.
pub fn kill_odd(p: &Poly) -> Poly {
    p.iter().filter(|(m, _)| m.o == 0).map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Re-indexes a polynomial into a presentation with extra even variables
/// appended (and possibly no odd variables).
pub fn extend_poly(target: &Presentation, p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        let mut e = m.e.clone();
        e.resize(target.n_even(), 0);
        add_term(&mut out, target.mono(e, m.o), c.clone());
    }
    out
}

/// A growing coordinate system: keys (monomials, tensor keys, ...) are
/// numbered in order of first appearance.
#[derive(Clone, Debug)]
pub struct Coords<K: Clone + Eq + std::hash::Hash> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Default for Coords<K> {
    fn default() -> Self {
        Coords { index: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Clone + Eq + std::hash::Hash> Coords<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let mut c = Self::new();
        for k in keys {
            c.id(&k);
        }
        c
    }

    pub fn id(&mut self, k: &K) -> usize {
        if let Some(i) = self.index.get(k) {
            return *i;
        }
        self.keys.push(k.clone());
        self.index.insert(k.clone(), self.keys.len() - 1);
        self.keys.len() - 1
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Coordinates of a map keyed by K, registering unseen keys.
    pub fn vec<'a>(&mut self, p: impl IntoIterator<Item = (&'a K, &'a Scalar)>) -> SparseVec
    where
        K: 'a,
    {
        p.into_iter().map(|(k, c)| (self.id(k), c.clone())).collect()
    }

    /// Coordinates without registering; `None` if a key is unknown.
    pub fn vec_fixed<'a>(&self, p: impl IntoIterator<Item = (&'a K, &'a Scalar)>) -> Option<SparseVec>
    where
        K: 'a,
    {
        p.into_iter().map(|(k, c)| self.get(k).map(|i| (i, c.clone()))).collect()
    }

    pub fn unvec<M: FromIterator<(K, Scalar)>>(&self, v: &SparseVec) -> M {
        v.iter().map(|(i, c)| (self.keys[*i].clone(), c.clone())).collect()
    }
}

/// A localized presentation and the index of the adjoined inverse.
#[derive(Clone, Debug)]
pub struct Localization {
    pub algebra: Presentation,
    pub inverse_var: usize,
}

impl Localization {
    /// The canonical map P → P_x on an element.
    pub fn embed(&self, p: &Poly) -> Poly {
        self.algebra.nf(&extend_poly(&self.algebra, p))
    }
}

/// Evaluates the algebra map sending variable k to `images[k]` (even
/// variables first, then odd) on a polynomial of `src`.
pub fn map_poly(src: &Presentation, dst: &Presentation, images: &[Poly], p: &Poly) -> Poly {
    let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
    let mut out = Poly::new();
    for (m, c) in p {
        let img = map_mono(src, dst, images, m, &mut cache);
        add_scaled(&mut out, c, &img);
    }
    out
}

fn map_mono(src: &Presentation, dst: &Presentation, images: &[Poly], m: &Mono, cache: &mut HashMap<(usize, u32), Poly>) -> Poly {
    let mut acc = dst.one();
    for (i, e) in m.e.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        let f = cache.entry((i, *e)).or_insert_with(|| dst.pow(&images[i], *e)).clone();
        acc = dst.mul(&acc, &f);
    }
    for j in 0..src.n_odd() {
        if m.o >> j & 1 == 1 {
            acc = dst.mul(&acc, &images[src.n_even() + j]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laurent() -> Presentation {
        Presentation::free(Field::Rational, &[EvenSpec::new("t", true)], &[]).unwrap()
    }

    #[test]
    fn odd_square_is_zero() {
        let p = Presentation::free(Field::Rational, &[], &[("y".into(), 1)]).unwrap();
        let y = p.odd_var(0);
        assert!(p.mul(&y, &y).is_empty());
    }

    #[test]
    fn anticommutation() {
        let p = Presentation::free(Field::Rational, &[], &[("y1".into(), 1), ("y2".into(), 1)]).unwrap();
        let a = p.mul(&p.odd_var(1), &p.odd_var(0));
        let b = p.mul(&p.odd_var(0), &p.odd_var(1));
        assert_eq!(a, p.neg(&b));
        assert_eq!(p.fmt(&a), "-y1*y2");
    }

    #[test]
    fn laurent_cancellation() {
        let p = laurent();
        let t = p.gen_pow("t", 1).unwrap();
        let ti = p.gen_pow("t", -1).unwrap();
        assert_eq!(p.product(&[t.clone(), ti, t.clone()]), t);
    }

    #[test]
    fn truncated_basis_sizes() {
        let p = Presentation::free(Field::Rational, &[], &[("y".into(), 1)]).unwrap();
        assert_eq!(p.truncated_basis(2).len(), 2);
        let l = laurent();
        let b = l.truncated_basis(2);
        assert_eq!(b.iter().map(|m| l.fmt_mono(m)).collect::<Vec<_>>(), ["1", "t^-1", "t", "t^-2", "t^2"]);
        let q = Presentation::free(Field::Rational, &[EvenSpec::new("x", false)], &[("y".into(), 1)]).unwrap();
        assert_eq!(q.truncated_basis(2).len(), 5);
    }

    #[test]
    fn negative_exponent_needs_invertible() {
        let q = Presentation::free(Field::Rational, &[EvenSpec::new("x", false)], &[("y".into(), 1)]).unwrap();
        assert!(q.gen_pow("x", -1).is_err());
        assert!(q.gen_pow("y", -1).is_err());
    }

    #[test]
    fn localize_polynomial_ring_at_t() {
        let p = Presentation::free(Field::Rational, &[EvenSpec::new("t", false)], &[]).unwrap();
        let loc = p.localize_at(&p.even_var(0), "u").unwrap();
        let a = &loc.algebra;
        let tu = a.mul(&a.even_var(0), &a.even_var(1));
        assert_eq!(tu, a.one());
        // same layer sizes as the Laurent ring
        assert_eq!(a.truncated_basis(3).len(), laurent().truncated_basis(3).len());
    }

    #[test]
    fn localize_at_one_and_zero() {
        let p = laurent();
        let loc = p.localize_at(&p.one(), "u").unwrap();
        assert_eq!(loc.algebra.nf(&loc.algebra.even_var(loc.inverse_var)), loc.algebra.one());
        assert!(p.localize_at(&Poly::new(), "u").is_err());
        let q = Presentation::free(Field::Rational, &[], &[("y".into(), 1)]).unwrap();
        assert!(q.localize_at(&q.odd_var(0), "u").is_err());
    }
}
