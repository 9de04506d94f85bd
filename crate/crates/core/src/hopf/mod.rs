//! Hopf superalgebras given by a presentation and Δ, ε, 𝒮 on generators.

pub mod cotangent;
pub mod lie;
pub mod psi;
pub mod smash;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::superlinalg::{Echelon, Scalar, SparseVec};
use crate::superpoly::tensor::{add_tensor_scaled, add_tensor_term, key_parity};
use crate::superpoly::{add_scaled, kill_odd, map_poly, poly_parity, Coords, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

pub use cotangent::Cotangent;
pub use lie::LieData;
pub use psi::{verify_decomposition_psi, DecompositionWitness, PsiReport, Side};

/// Maximum dimension of a finite subcoalgebra hull.
pub const HULL_CAP: usize = 400;

/// User-facing structure data, keyed by generator name.
#[derive(Clone, Debug)]
pub struct HopfInput {
    pub name: String,
    pub alg: Presentation,
    pub coproduct: BTreeMap<String, Tensor>,
    pub counit: BTreeMap<String, Scalar>,
    /// `None` requests the automatic antipode.
    pub antipode: Option<BTreeMap<String, Poly>>,
}

#[derive(Debug)]
pub struct Hopf {
    pub name: String,
    pub alg: Presentation,
    delta: Vec<Tensor>,
    eps: Vec<Scalar>,
    antipode: Vec<Poly>,
    pub antipode_auto: bool,
    delta_cache: Mutex<HashMap<Mono, Tensor>>,
    assoc: OnceLock<Box<Hopf>>,
    cotangent: OnceLock<Cotangent>,
}

impl Clone for Hopf {
    fn clone(&self) -> Self {
        Hopf {
            name: self.name.clone(),
            alg: self.alg.clone(),
            delta: self.delta.clone(),
            eps: self.eps.clone(),
            antipode: self.antipode.clone(),
            antipode_auto: self.antipode_auto,
            delta_cache: Mutex::new(HashMap::new()),
            assoc: self.assoc.clone(),
            cotangent: self.cotangent.clone(),
        }
    }
}

/// Outcome of [`Hopf::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub bound: u32,
    pub checked: usize,
    /// First failing check: (law, element, left side, right side).
    pub counterexample: Option<(String, String, String, String)>,
}

impl Hopf {
    pub fn new(input: HopfInput) -> Result<Hopf, Error> {
        let alg = input.alg;
        let n = alg.n_vars();
        let field = alg.field;
        let ta = TensorAlg::new([&alg, &alg]);
        let mut delta = vec![Tensor::new(); n];
        let mut eps = vec![field.zero(); n];
        for name in input.coproduct.keys().chain(input.counit.keys()) {
            match alg.lookup(name) {
                Some(k) if alg.user_vars().contains(&k) => {}
                _ => return Err(Error::Invalid(format!("structure data for unknown generator '{name}'"))),
            }
        }
        for k in alg.user_vars() {
            let name = alg.var_name(k).to_string();
            let d = input
                .coproduct
                .get(&name)
                .ok_or_else(|| Error::Invalid(format!("missing coproduct of '{name}'")))?;
            if d.keys().any(|key| key_parity(key) != alg.var_parity(k)) {
                return Err(Error::Invalid(format!("coproduct of '{name}' does not have the parity of '{name}'")));
            }
            delta[k] = ta.nf(d);
            let e = input.counit.get(&name).ok_or_else(|| Error::Invalid(format!("missing counit of '{name}'")))?;
            if alg.var_parity(k) == 1 && !e.is_zero() {
                return Err(Error::Invalid(format!("counit of odd generator '{name}' must be 0")));
            }
            eps[k] = e.clone();
        }
        for i in 0..alg.n_even() {
            let v = &alg.even[i];
            if let (true, Some(j)) = (v.is_inverse, v.partner) {
                if eps[j].is_zero() {
                    return Err(Error::Invalid(format!("invertible generator '{}' has counit 0", alg.even[j].name)));
                }
                eps[i] = eps[j].inv();
                delta[i] = ta
                    .invert(&delta[j])
                    .ok_or_else(|| Error::Invalid(format!("coproduct of '{}' is not a unit", alg.even[j].name)))?;
            }
        }
        let mut h = Hopf {
            name: input.name,
            alg,
            delta,
            eps,
            antipode: Vec::new(),
            antipode_auto: input.antipode.is_none(),
            delta_cache: Mutex::new(HashMap::new()),
            assoc: OnceLock::new(),
            cotangent: OnceLock::new(),
        };
        h.antipode = match input.antipode {
            Some(given) => {
                for name in given.keys() {
                    if h.alg.lookup(name).is_none() {
                        return Err(Error::Invalid(format!("antipode for unknown generator '{name}'")));
                    }
                }
                let mut s = vec![Poly::new(); n];
                for k in h.alg.user_vars() {
                    let name = h.alg.var_name(k);
                    let p = given.get(name).ok_or_else(|| Error::Invalid(format!("missing antipode of '{name}'")))?;
                    if poly_parity(p) != Some(h.alg.var_parity(k)) && !p.is_empty() {
                        return Err(Error::Invalid(format!("antipode of '{name}' does not have the parity of '{name}'")));
                    }
                    s[k] = h.alg.nf(p);
                }
                s
            }
            None => {
                let mut s = vec![Poly::new(); n];
                for k in h.alg.user_vars() {
                    s[k] = h.solve_antipode(&h.alg.var(k)).map_err(|e| {
                        Error::Axiom(format!("antipode solve failed for '{}': {e}", h.alg.var_name(k)))
                    })?;
                }
                s
            }
        };
        for i in 0..h.alg.n_even() {
            let v = &h.alg.even[i];
            if let (true, Some(j)) = (v.is_inverse, v.partner) {
                h.antipode[i] = h
                    .alg
                    .invert(&h.antipode[j])
                    .ok_or_else(|| Error::Axiom(format!("antipode of '{}' is not a unit", h.alg.even[j].name)))?;
            }
        }
        Ok(h)
    }

    /// Builds a Hopf superalgebra from per-variable data (all variables,
    /// inverse partners included), trusted as given.
    pub fn from_parts(name: &str, alg: Presentation, delta: Vec<Tensor>, eps: Vec<Scalar>, antipode: Vec<Poly>) -> Hopf {
        Hopf {
            name: name.to_string(),
            alg,
            delta,
            eps,
            antipode,
            antipode_auto: false,
            delta_cache: Mutex::new(HashMap::new()),
            assoc: OnceLock::new(),
            cotangent: OnceLock::new(),
        }
    }

    /// Like [`Hopf::from_parts`]; antipodes not supplied in `known` are
    /// solved from Δ and ε.
    pub fn from_parts_auto(
        name: &str,
        alg: Presentation,
        delta: Vec<Tensor>,
        eps: Vec<Scalar>,
        known: Vec<Option<Poly>>,
    ) -> Result<Hopf, Error> {
        let n = alg.n_vars();
        let mut h = Hopf::from_parts(name, alg, delta, eps, vec![Poly::new(); n]);
        h.antipode_auto = true;
        for k in h.alg.user_vars() {
            h.antipode[k] = match &known[k] {
                Some(p) => h.alg.nf(p),
                None => h
                    .solve_antipode(&h.alg.var(k))
                    .map_err(|e| Error::Axiom(format!("antipode solve failed for '{}': {e}", h.alg.var_name(k))))?,
            };
        }
        for i in 0..h.alg.n_even() {
            let v = &h.alg.even[i];
            if let (true, Some(j)) = (v.is_inverse, v.partner) {
                h.antipode[i] = h
                    .alg
                    .invert(&h.antipode[j])
                    .ok_or_else(|| Error::Axiom(format!("antipode of '{}' is not a unit", h.alg.even[j].name)))?;
            }
        }
        Ok(h)
    }

    pub fn field(&self) -> crate::superlinalg::Field {
        self.alg.field
    }

    pub fn tensor2(&self) -> TensorAlg<'_, 2> {
        TensorAlg::new([&self.alg, &self.alg])
    }

    pub fn tensor3(&self) -> TensorAlg<'_, 3> {
        TensorAlg::new([&self.alg, &self.alg, &self.alg])
    }

    pub fn delta_var(&self, k: usize) -> &Tensor {
        &self.delta[k]
    }

    pub fn eps_var(&self, k: usize) -> &Scalar {
        &self.eps[k]
    }

    pub fn antipode_var(&self, k: usize) -> &Poly {
        &self.antipode[k]
    }

    /// Δ of a single normal monomial (cached).
    pub fn coproduct_mono(&self, m: &Mono) -> Tensor {
        if let Some(t) = self.delta_cache.lock().unwrap().get(m) {
            return t.clone();
        }
        let ta = self.tensor2();
        let mut acc = ta.one();
        for (i, e) in m.e.iter().enumerate() {
            for _ in 0..*e {
                acc = ta.mul(&acc, &self.delta[i]);
            }
        }
        for j in 0..self.alg.n_odd() {
            if m.o >> j & 1 == 1 {
                acc = ta.mul(&acc, &self.delta[self.alg.n_even() + j]);
            }
        }
        self.delta_cache.lock().unwrap().insert(m.clone(), acc.clone());
        acc
    }

    pub fn coproduct(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::new();
        for (m, c) in p {
            add_tensor_scaled(&mut out, c, &self.coproduct_mono(m));
        }
        out
    }

    /// (Δ⊗id)∘Δ.
    pub fn coproduct2(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in self.coproduct(p) {
            for (k1, c1) in self.coproduct_mono(&k[0]) {
                add_tensor_term(&mut out, vec![k1[0].clone(), k1[1].clone(), k[1].clone()], &c * &c1);
            }
        }
        out
    }

    pub fn counit_mono(&self, m: &Mono) -> Scalar {
        if m.o != 0 {
            return self.field().zero();
        }
        let mut s = self.field().one();
        for (i, e) in m.e.iter().enumerate() {
            if *e > 0 {
                s = &s * &self.eps[i].pow(*e);
            }
        }
        s
    }

    pub fn counit(&self, p: &Poly) -> Scalar {
        let mut s = self.field().zero();
        for (m, c) in p {
            s = &s + &(c * &self.counit_mono(m));
        }
        s
    }

    /// 𝒮 is an algebra map for super-commutative Hopf superalgebras.
    pub fn antipode(&self, p: &Poly) -> Poly {
        map_poly(&self.alg, &self.alg, &self.antipode, p)
    }

    /// Slices of a 2-tensor: for each monomial μ in the given slot, the
    /// element of the other slot paired with it.
    pub fn slices(t: &Tensor, slot: usize) -> BTreeMap<Mono, Poly> {
        let mut out: BTreeMap<Mono, Poly> = BTreeMap::new();
        for (k, c) in t {
            let p = out.entry(k[slot].clone()).or_default();
            add_scaled(p, c, &Poly::from([(k[1 - slot].clone(), c.field().one())]));
        }
        out.retain(|_, p| !p.is_empty());
        out
    }

    /// Finite span containing `seeds` and closed under slicing Δ. With
    /// `right` only, the span V satisfies Δ(V) ⊆ V⊗𝒞; with `left` only,
    /// Δ(V) ⊆ 𝒞⊗V; with both, V is a subcoalgebra.
    pub fn hull(&self, seeds: &[Poly], left: bool, right: bool) -> Result<Vec<Poly>, Error> {
        let field = self.field();
        let mut coords: Coords<Mono> = Coords::new();
        let mut ech = Echelon::new(field);
        let mut basis: Vec<Poly> = Vec::new();
        let mut queue: Vec<Poly> = seeds.iter().map(|s| self.alg.nf(s)).collect();
        while let Some(v) = queue.pop() {
            if v.is_empty() {
                continue;
            }
            let vec = coords.vec(&v);
            if ech.insert(&vec, basis.len()).is_some() {
                continue;
            }
            basis.push(v.clone());
            if basis.len() > HULL_CAP {
                return Err(Error::Cap(format!("subcoalgebra hull exceeds {HULL_CAP} dimensions")));
            }
            let d = self.coproduct(&v);
            if right {
                queue.extend(Hopf::slices(&d, 1).into_values());
            }
            if left {
                queue.extend(Hopf::slices(&d, 0).into_values());
            }
        }
        // keep seeds first, in order
        Ok(basis)
    }

    /// Matrix M of Δ on a right hull: Δe_j = Σ_k e_k ⊗ M[k][j].
    pub fn hull_matrix(&self, basis: &[Poly]) -> Result<Vec<Vec<Poly>>, Error> {
        let field = self.field();
        let mut coords: Coords<Mono> = Coords::new();
        let mut ech = Echelon::new(field);
        for (i, b) in basis.iter().enumerate() {
            let v = coords.vec(b);
            ech.insert(&v, i);
        }
        let n = basis.len();
        let mut m = vec![vec![Poly::new(); n]; n];
        for j in 0..n {
            for (mu, x) in Hopf::slices(&self.coproduct(&basis[j]), 1) {
                let v = coords.vec(&x);
                let (res, combo) = ech.reduce(&v);
                if !res.is_empty() {
                    return Err(Error::Invalid("hull is not closed under Δ".into()));
                }
                for (k, c) in combo {
                    add_scaled(&mut m[k][j], &c, &Poly::from([(mu.clone(), field.one())]));
                }
            }
        }
        Ok(m)
    }

    /// Solves m∘(𝒮⊗id)∘Δ = ηε on the right hull of `g`: with Δe_j =
    /// Σ e_k⊗M_kj, 𝒮(e_j) = Σ_k ε(e_k)(M⁻¹)_kj.
    fn solve_antipode(&self, g: &Poly) -> Result<Poly, Error> {
        let basis = self.hull(std::slice::from_ref(g), false, true)?;
        let m = self.hull_matrix(&basis)?;
        let l = left_inverse(&self.alg, &m).ok_or_else(|| Error::Axiom("coefficient matrix has no unit pivots".into()))?;
        let j = 0;
        let mut s = Poly::new();
        for (k, b) in basis.iter().enumerate() {
            let e = self.counit(b);
            add_scaled(&mut s, &e, &l[k][j]);
        }
        Ok(self.alg.nf(&s))
    }

    /// Checks the Hopf axioms on every truncated-basis element of weight ≤ bound
    /// and the compatibility of Δ, ε, 𝒮 with the relations.
    pub fn validate(&self, bound: u32) -> Validation {
        let ta = self.tensor2();
        let t3 = self.tensor3();
        let field = self.field();
        let mut checked = 0;
        let fail = |checked: usize, law: &str, el: String, l: String, r: String| Validation {
            ok: false,
            bound,
            checked,
            counterexample: Some((law.to_string(), el, l, r)),
        };
        // relations
        let mut rels = self.alg.inverse_relations();
        rels.extend(self.alg.relations.iter().cloned());
        for r in &rels {
            let name = self.alg.fmt(r);
            let d = map_to_tensor(&self.alg, &ta, &self.delta, r);
            if !d.is_empty() {
                return fail(checked, "coproduct respects relations", name, ta.fmt(&d), "0".into());
            }
            let e = eval_counit(&self.eps, r);
            if !e.is_zero() {
                return fail(checked, "counit respects relations", name, e.to_string(), "0".into());
            }
            let s = self.alg.nf(&map_poly(&self.alg, &self.alg, &self.antipode, r));
            if !s.is_empty() {
                return fail(checked, "antipode respects relations", name, self.alg.fmt(&s), "0".into());
            }
        }
        for m in self.alg.truncated_basis(bound) {
            checked += 1;
            let p = Poly::from([(m.clone(), field.one())]);
            let name = self.alg.fmt(&p);
            let d = self.coproduct(&p);
            // coassociativity
            let lhs = self.coproduct2(&p);
            let mut rhs = Tensor::new();
            for (k, c) in &d {
                for (k2, c2) in self.coproduct_mono(&k[1]) {
                    add_tensor_term(&mut rhs, vec![k[0].clone(), k2[0].clone(), k2[1].clone()], c * &c2);
                }
            }
            if lhs != rhs {
                return fail(checked, "coassociativity", name, t3.fmt(&lhs), t3.fmt(&rhs));
            }
            // counit
            let mut left = Poly::new();
            let mut right = Poly::new();
            for (k, c) in &d {
                add_scaled(&mut left, &(c * &self.counit_mono(&k[0])), &Poly::from([(k[1].clone(), field.one())]));
                add_scaled(&mut right, &(c * &self.counit_mono(&k[1])), &Poly::from([(k[0].clone(), field.one())]));
            }
            if left != p {
                return fail(checked, "left counit", name, self.alg.fmt(&left), self.alg.fmt(&p));
            }
            if right != p {
                return fail(checked, "right counit", name, self.alg.fmt(&right), self.alg.fmt(&p));
            }
            // antipode
            let unit = self.alg.constant(self.counit_mono(&m));
            let mut sl = Poly::new();
            let mut sr = Poly::new();
            for (k, c) in &d {
                let a = Poly::from([(k[0].clone(), field.one())]);
                let b = Poly::from([(k[1].clone(), field.one())]);
                add_scaled(&mut sl, c, &self.alg.mul(&self.antipode(&a), &b));
                add_scaled(&mut sr, c, &self.alg.mul(&a, &self.antipode(&b)));
            }
            if sl != unit {
                return fail(checked, "left antipode", name, self.alg.fmt(&sl), self.alg.fmt(&unit));
            }
            if sr != unit {
                return fail(checked, "right antipode", name, self.alg.fmt(&sr), self.alg.fmt(&unit));
            }
        }
        Validation { ok: true, bound, checked, counterexample: None }
    }

    /// The associated purely even Hopf algebra C = 𝒞/(𝒞₁).
    pub fn assoc(&self) -> &Hopf {
        self.assoc.get_or_init(|| {
            let c = self.alg.even_quotient().expect("even quotient of a valid presentation");
            let tc = TensorAlg::new([&c, &c]);
            let n = c.n_vars();
            let delta: Vec<Tensor> = (0..n)
                .map(|k| {
                    let t: Tensor =
                        self.delta[k].iter().filter(|(key, _)| key.iter().all(|m| m.o == 0)).map(|(k, v)| (k.clone(), v.clone())).collect();
                    tc.nf(&t)
                })
                .collect();
            let eps = self.eps[..n].to_vec();
            let antipode = (0..n).map(|k| c.nf(&kill_odd(&self.antipode[k]))).collect();
            Box::new(Hopf::from_parts(&format!("{}_even", self.name), c, delta, eps, antipode))
        })
    }

    /// q: 𝒞 → C.
    pub fn to_assoc(&self, p: &Poly) -> Poly {
        self.assoc().alg.nf(&kill_odd(p))
    }

    pub fn cotangent(&self) -> &Cotangent {
        self.cotangent.get_or_init(|| Cotangent::compute(self))
    }

    pub fn is_purely_even(&self) -> bool {
        self.alg.n_odd() == 0
    }

    /// Data of a generator as text: (Δ, ε, 𝒮).
    pub fn describe_var(&self, k: usize) -> (String, String, String) {
        (self.tensor2().fmt(&self.delta[k]), self.eps[k].to_string(), self.alg.fmt(&self.antipode[k]))
    }
}

/// Evaluates the algebra map sending variable k to `images[k]` into a tensor
/// product algebra.
pub fn map_to_tensor<const N: usize>(src: &Presentation, ta: &TensorAlg<'_, N>, images: &[Tensor], p: &Poly) -> Tensor {
    let mut cache: HashMap<(usize, u32), Tensor> = HashMap::new();
    let mut out = Tensor::new();
    for (m, c) in p {
        let mut acc = ta.one();
        for (i, e) in m.e.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let f = cache.entry((i, *e)).or_insert_with(|| ta.pow(&images[i], *e)).clone();
            acc = ta.mul(&acc, &f);
        }
        for j in 0..src.n_odd() {
            if m.o >> j & 1 == 1 {
                acc = ta.mul(&acc, &images[src.n_even() + j]);
            }
        }
        add_tensor_scaled(&mut out, c, &acc);
    }
    out
}

fn eval_counit(eps: &[Scalar], p: &Poly) -> Scalar {
    let field = eps.first().map(|e| e.field()).unwrap_or_else(|| p.values().next().map(|c| c.field()).unwrap_or(crate::superlinalg::Field::Rational));
    let mut s = field.zero();
    for (m, c) in p {
        if m.o != 0 {
            continue;
        }
        let mut t = c.clone();
        for (i, e) in m.e.iter().enumerate() {
            if *e > 0 {
                t = &t * &eps[i].pow(*e);
            }
        }
        s = &s + &t;
    }
    s
}

/// Gauss–Jordan over a super-commutative algebra: L with L·M = 1, pivots
/// restricted to units. Row operations act by left multiplication.
pub fn left_inverse(alg: &Presentation, m: &[Vec<Poly>]) -> Option<Vec<Vec<Poly>>> {
    let n = m.len();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut l: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| if i == j { alg.one() } else { Poly::new() }).collect()).collect();
    for c in 0..n {
        let (r, inv) = (c..n).find_map(|r| alg.invert(&a[r][c]).map(|inv| (r, inv)))?;
        a.swap(c, r);
        l.swap(c, r);
        for j in 0..n {
            a[c][j] = alg.mul(&inv, &a[c][j]);
            l[c][j] = alg.mul(&inv, &l[c][j]);
        }
        for i in 0..n {
            if i == c || a[i][c].is_empty() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let da = alg.mul(&f, &a[c][j]);
                a[i][j] = alg.sub(&a[i][j], &da);
                let dl = alg.mul(&f, &l[c][j]);
                l[i][j] = alg.sub(&l[i][j], &dl);
            }
        }
    }
    Some(l)
}

/// Coordinates of a vector against a fixed list of polynomials.
pub fn express(field: crate::superlinalg::Field, basis: &[Poly], target: &Poly) -> Option<SparseVec> {
    let mut coords: Coords<Mono> = Coords::new();
    let cols: Vec<SparseVec> = basis.iter().map(|b| coords.vec(b)).collect();
    let t = coords.vec(target);
    crate::superlinalg::solve(field, &t, &cols)
}
