//! Comodule algebras: windowed coinvariants, η and σ.

use std::collections::BTreeMap;

use crate::hopf::{map_to_tensor, Hopf};
use crate::superlinalg::{axpy, solve, Echelon, Scalar, SparseVec};
use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{add_scaled, Coords, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::{finite_subcoalgebra, FiniteSubcoalgebra, SuperComodule};

/// A presented superalgebra A with a right D-coaction given on generators
/// (keys of `rho[k]` are [monomial of A, monomial of D]).
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pub alg: Presentation,
    pub d: Hopf,
    pub rho: Vec<Tensor>,
}

pub fn poly_weight(p: &Poly) -> u32 {
    p.keys().map(|m| m.w).max().unwrap_or(0)
}

fn mono_poly(field: crate::superlinalg::Field, m: &Mono) -> Poly {
    Poly::from([(m.clone(), field.one())])
}

impl ComoduleAlgebra {
    pub fn new(alg: Presentation, d: Hopf, rho: Vec<Tensor>) -> Result<ComoduleAlgebra, Error> {
        if rho.len() != alg.n_vars() {
            return Err(Error::Invalid("one coaction image per generator is required".into()));
        }
        let a = ComoduleAlgebra { alg, d, rho };
        a.check()?;
        Ok(a)
    }

    /// D coacting on itself by Δ.
    pub fn regular(d: &Hopf) -> ComoduleAlgebra {
        let rho = (0..d.alg.n_vars()).map(|k| d.delta_var(k).clone()).collect();
        ComoduleAlgebra { alg: d.alg.clone(), d: d.clone(), rho }
    }

    /// C with ρ = (id⊗q)∘Δ for a quotient Hopf algebra D of C on the same
    /// generators.
    pub fn restricted(c: &Hopf, d: &Hopf) -> Result<ComoduleAlgebra, Error> {
        let ta = TensorAlg::new([&c.alg, &d.alg]);
        let rho = (0..c.alg.n_vars()).map(|k| ta.nf(c.delta_var(k))).collect();
        ComoduleAlgebra::new(c.alg.clone(), d.clone(), rho)
    }

    pub fn tensor(&self) -> TensorAlg<'_, 2> {
        TensorAlg::new([&self.alg, &self.d.alg])
    }

    pub fn coaction(&self, p: &Poly) -> Tensor {
        let ta = self.tensor();
        ta.nf(&map_to_tensor(&self.alg, &ta, &self.rho, p))
    }

    /// ρ respects the relations and satisfies the comodule laws on generators.
    pub fn check(&self) -> Result<(), Error> {
        let ta = self.tensor();
        let mut rels = self.alg.inverse_relations();
        rels.extend(self.alg.relations.iter().cloned());
        for r in &rels {
            let t = ta.nf(&map_to_tensor(&self.alg, &ta, &self.rho, r));
            if !t.is_empty() {
                return Err(Error::Axiom(format!("coaction is not multiplicative: ρ({}) = {}", self.alg.fmt(r), ta.fmt(&t))));
            }
        }
        let field = self.alg.field;
        for k in self.alg.user_vars() {
            let x = self.alg.var(k);
            let r = self.coaction(&x);
            let mut back = Poly::new();
            for (key, c) in &r {
                add_scaled(&mut back, &(c * &self.d.counit_mono(&key[1])), &mono_poly(field, &key[0]));
            }
            if self.alg.nf(&back) != x {
                return Err(Error::Axiom(format!("counit law fails on '{}'", self.alg.var_name(k))));
            }
            let t3 = TensorAlg::new([&self.alg, &self.d.alg, &self.d.alg]);
            let mut lhs = Tensor::new();
            let mut rhs = Tensor::new();
            for (key, c) in &r {
                for (k2, c2) in self.coaction(&mono_poly(field, &key[0])) {
                    add_tensor_scaled(&mut lhs, &(c * &c2), &Tensor::from([(vec![k2[0].clone(), k2[1].clone(), key[1].clone()], field.one())]));
                }
                for (k2, c2) in self.d.coproduct_mono(&key[1]) {
                    add_tensor_scaled(&mut rhs, &(c * &c2), &Tensor::from([(vec![key[0].clone(), k2[0].clone(), k2[1].clone()], field.one())]));
                }
            }
            if t3.nf(&lhs) != t3.nf(&rhs) {
                return Err(Error::Axiom(format!("coassociativity fails on '{}'", self.alg.var_name(k))));
            }
        }
        Ok(())
    }
}

/// Coinvariants inside the weight window of A.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub bound: u32,
    /// layers[n]: new basis elements whose leading monomial has weight n.
    pub layers: Vec<Vec<Poly>>,
    /// Minimal multiplicative generators found within the window.
    pub generators: Vec<Poly>,
}

impl Coinvariants {
    pub fn basis(&self) -> Vec<Poly> {
        self.layers.iter().flatten().cloned().collect()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.layers.iter().map(|l| l.len()).sum()
    }
}

/// Windowed coinvariants of a subset of A's truncated basis (all of it when
/// `filter` accepts everything): the kernel of ρ − (−⊗1), weight by weight.
pub fn coinvariants_filtered(a: &ComoduleAlgebra, bound: u32, filter: impl Fn(&Mono) -> bool) -> Coinvariants {
    let layers = coinvariant_layers(a, bound, filter);
    let generators = multiplicative_generators(&a.alg, &layers, bound);
    Coinvariants { bound, layers, generators }
}

/// The layers of [`coinvariants_filtered`] without the generator search.
pub fn coinvariant_layers(a: &ComoduleAlgebra, bound: u32, filter: impl Fn(&Mono) -> bool) -> Vec<Vec<Poly>> {
    let field = a.alg.field;
    let basis: Vec<Mono> = a.alg.truncated_basis(bound).into_iter().filter(|m| filter(m)).collect();
    let one_d = Mono::one(a.d.alg.n_even());
    let mut coords: Coords<Vec<Mono>> = Coords::new();
    let mut ech = Echelon::new(field);
    let mut layers = vec![Vec::new(); bound as usize + 1];
    for (i, m) in basis.iter().enumerate() {
        let mut t = a.coaction(&mono_poly(field, m));
        add_tensor_scaled(&mut t, &field.int(-1), &Tensor::from([(vec![m.clone(), one_d.clone()], field.one())]));
        let v = coords.vec(&t);
        if let Some(rel) = ech.insert(&v, i) {
            let mut p = Poly::new();
            for (j, c) in rel {
                add_scaled(&mut p, &c, &mono_poly(field, &basis[j]));
            }
            layers[m.w as usize].push(p);
        }
    }
    layers
}

pub fn coinvariants(a: &ComoduleAlgebra, bound: u32) -> Coinvariants {
    coinvariants_filtered(a, bound, |_| true)
}

/// Greedy minimal generating set: a candidate is kept when it is not in the
/// span of products of earlier generators that fit in the window.
pub fn multiplicative_generators(alg: &Presentation, layers: &[Vec<Poly>], bound: u32) -> Vec<Poly> {
    let field = alg.field;
    let mut coords: Coords<Mono> = Coords::new();
    let mut span = Echelon::new(field);
    let mut elems: Vec<Poly> = Vec::new();
    let mut gens: Vec<Poly> = Vec::new();
    let one = alg.one();
    span.insert(&coords.vec(&one), 0);
    elems.push(one);
    for layer in layers {
        for cand in layer {
            let v = coords.vec(cand);
            if span.contains(&v) {
                continue;
            }
            gens.push(cand.clone());
            span.insert(&v, elems.len());
            elems.push(cand.clone());
            // old elements only need the new generator; new ones need all
            let last = gens.len() - 1;
            let mut queue: Vec<(usize, usize)> = (0..elems.len() - 1).map(|i| (i, last)).collect();
            queue.push((elems.len() - 1, 0));
            while let Some((i, from)) = queue.pop() {
                for g in &gens[from..] {
                    let p = alg.mul(&elems[i], g);
                    if p.is_empty() || poly_weight(&p) > bound {
                        continue;
                    }
                    let pv = coords.vec(&p);
                    if span.insert(&pv, elems.len()).is_none() {
                        queue.push((elems.len(), 0));
                        elems.push(p);
                    }
                }
            }
        }
    }
    gens
}

/// A D-colinear map η: D′ → A with η(1) = 1 on a finite subcoalgebra.
#[derive(Clone, Debug)]
pub struct Eta {
    pub sub: FiniteSubcoalgebra,
    /// η(e_k) for the basis of `sub`.
    pub values: Vec<Poly>,
}

impl Eta {
    pub fn apply(&self, alg: &Presentation, p: &Poly) -> Option<Poly> {
        let v = self.sub.express(p)?;
        let mut out = Poly::new();
        for (k, c) in v {
            add_scaled(&mut out, &c, &self.values[k]);
        }
        Some(alg.nf(&out))
    }
}

/// Solves "η colinear, η(1) = 1" with values in A's window of the given
/// bound. `None` when no solution exists there.
pub fn eta_extension(a: &ComoduleAlgebra, sub: &FiniteSubcoalgebra, value_bound: u32) -> Option<Eta> {
    let field = a.alg.field;
    let window = a.alg.truncated_basis(value_bound);
    let n = sub.dim();
    let one = sub.express(&a.d.alg.one())?;
    // unknown x[k][μ] at index k·|window| + μ
    let nw = window.len();
    let var = |k: usize, mu: usize| k * nw + mu;
    let mut eqs: Coords<(usize, Vec<Mono>)> = Coords::new();
    let mut cols = vec![SparseVec::new(); n * nw];
    let rho_w: Vec<Tensor> = window.iter().map(|m| a.coaction(&mono_poly(field, m))).collect();
    for k in 0..n {
        // ρ(η(e_k)) − Σ_{j,l} Δ^k_{jl} η(e_j) ⊗ e_l
        for (mu, t) in rho_w.iter().enumerate() {
            for (key, c) in t {
                let e = eqs.id(&(k, key.clone()));
                axpy(&mut cols[var(k, mu)], c, &SparseVec::from([(e, field.one())]));
            }
        }
        for ((j, l), c) in &sub.delta[k] {
            for (mu, m) in window.iter().enumerate() {
                for (dm, dc) in &sub.basis[*l] {
                    let e = eqs.id(&(k, vec![m.clone(), dm.clone()]));
                    axpy(&mut cols[var(*j, mu)], &-&(c * dc), &SparseVec::from([(e, field.one())]));
                }
            }
        }
        // parity: η is even
        let pk = crate::superpoly::poly_parity(&sub.basis[k]).unwrap_or(0);
        for (mu, m) in window.iter().enumerate() {
            if m.parity() != pk {
                let e = eqs.id(&(n + k, vec![m.clone()]));
                cols[var(k, mu)].insert(e, field.one());
            }
        }
    }
    // η(1) = Σ one_k η(e_k) = 1
    let mut target = SparseVec::new();
    for (mu, m) in window.iter().enumerate() {
        let e = eqs.id(&(usize::MAX, vec![m.clone()]));
        if m.is_one() {
            target.insert(e, field.one());
        }
        for (k, c) in &one {
            axpy(&mut cols[var(*k, mu)], c, &SparseVec::from([(e, field.one())]));
        }
    }
    let x = solve(field, &target, &cols)?;
    let values = (0..n)
        .map(|k| {
            let mut p = Poly::new();
            for (mu, m) in window.iter().enumerate() {
                if let Some(c) = x.get(&var(k, mu)) {
                    add_scaled(&mut p, c, &mono_poly(field, m));
                }
            }
            p
        })
        .collect();
    Some(Eta { sub: sub.clone(), values })
}

/// Elements of M = A ⊗ V as one A-component per basis vector of V.
pub type ModElem = Vec<Poly>;
/// ρ_M(x) = Σ_c (A⊗D-tensor)·v_c, one tensor per basis vector of V.
pub type ModTensor = Vec<Tensor>;

/// Diagonal right coaction on A ⊗ V for a right D-comodule V (V is assumed
/// to sit to the right of A; A even is not required, signs come from the
/// tensor algebra).
pub fn module_coaction(a: &ComoduleAlgebra, v: &SuperComodule, x: &ModElem) -> ModTensor {
    let field = a.alg.field;
    let ta = a.tensor();
    let mut out = vec![Tensor::new(); v.dim()];
    for (b, p) in x.iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        let r = a.coaction(p);
        for (c, slot) in out.iter_mut().enumerate() {
            let coef = &v.coef[c][b];
            if coef.is_empty() {
                continue;
            }
            // (a₀ ⊗ a₁)·(v_c ⊗ coef): v_c passes a₁, sign (−1)^{|a₁||v_c|}
            for (key, s) in &r {
                let sign = key[1].parity() & v.space.parities[c] == 1;
                let s = if sign { -s } else { s.clone() };
                let t = ta.mul(&Tensor::from([(key.clone(), s)]), &ta.pure(&[a.alg.one(), coef.clone()]));
                add_tensor_scaled(slot, &field.one(), &t);
            }
        }
    }
    out.into_iter().map(|t| ta.nf(&t)).collect()
}

/// σ_M(m ⊗ d) = m₍₀₎ η(𝒮(m₍₁₎) d) extended linearly over ρ-like tensors.
/// D is assumed purely even, so η takes even values and no signs arise.
pub fn sigma_apply(a: &ComoduleAlgebra, v: &SuperComodule, eta: &Eta, t: &ModTensor) -> Option<ModElem> {
    let field = a.alg.field;
    let mut out = vec![Poly::new(); v.dim()];
    for (c, slot) in t.iter().enumerate() {
        for (key, s) in slot {
            let mut basis_elem = vec![Poly::new(); v.dim()];
            basis_elem[c] = mono_poly(field, &key[0]);
            let d = mono_poly(field, &key[1]);
            let r = module_coaction(a, v, &basis_elem);
            for (c2, slot2) in r.iter().enumerate() {
                for (k2, s2) in slot2 {
                    let arg = a.d.alg.mul(&a.d.antipode(&mono_poly(field, &k2[1])), &d);
                    let e = eta.apply(&a.alg, &arg)?;
                    let prod = a.alg.mul(&mono_poly(field, &k2[0]), &e);
                    add_scaled(&mut out[c2], &(s * s2), &prod);
                }
            }
        }
    }
    Some(out.into_iter().map(|p| a.alg.nf(&p)).collect())
}

/// Seeds needed by σ on the window of M = A ⊗ V: all 𝒮(d′)·d with d, d′
/// coaction coefficients of window elements.
pub fn sigma_seeds(a: &ComoduleAlgebra, v: &SuperComodule, bound: u32) -> Vec<Poly> {
    let field = a.alg.field;
    let mut coeffs: BTreeMap<Mono, ()> = BTreeMap::new();
    let mut firsts: BTreeMap<Mono, ()> = BTreeMap::new();
    for m in a.alg.truncated_basis(bound) {
        for b in 0..v.dim() {
            let mut x = vec![Poly::new(); v.dim()];
            x[b] = mono_poly(field, &m);
            for slot in module_coaction(a, v, &x) {
                for key in slot.keys() {
                    coeffs.insert(key[1].clone(), ());
                    firsts.insert(key[0].clone(), ());
                }
            }
        }
    }
    // coefficients of the m₍₀₎ appearing above
    let mut inner: BTreeMap<Mono, ()> = BTreeMap::new();
    for m0 in firsts.keys() {
        for b in 0..v.dim() {
            let mut x = vec![Poly::new(); v.dim()];
            x[b] = mono_poly(field, m0);
            for slot in module_coaction(a, v, &x) {
                for key in slot.keys() {
                    inner.insert(key[1].clone(), ());
                }
            }
        }
    }
    let mut seeds = vec![a.d.alg.one()];
    for d2 in inner.keys() {
        let s = a.d.antipode(&mono_poly(field, d2));
        for d in coeffs.keys() {
            seeds.push(a.d.alg.mul(&s, &mono_poly(field, d)));
        }
    }
    seeds
}

/// η on the hull needed for σ on M = A ⊗ V over the window.
pub fn eta_for_module(a: &ComoduleAlgebra, v: &SuperComodule, bound: u32, value_bound: u32) -> Result<Option<Eta>, Error> {
    let seeds = sigma_seeds(a, v, bound);
    let sub = finite_subcoalgebra(&a.d, &seeds)?;
    Ok(eta_extension(a, &sub, value_bound))
}

/// Checks σ_M ∘ ρ_M = id on every window basis element; returns the number
/// checked or the first failing element.
pub fn check_sigma(a: &ComoduleAlgebra, v: &SuperComodule, eta: &Eta, bound: u32) -> Result<usize, String> {
    let field = a.alg.field;
    let mut n = 0;
    for m in a.alg.truncated_basis(bound) {
        for b in 0..v.dim() {
            let mut x = vec![Poly::new(); v.dim()];
            x[b] = mono_poly(field, &m);
            let r = module_coaction(a, v, &x);
            let back = sigma_apply(a, v, eta, &r).ok_or_else(|| format!("η undefined for {}", a.alg.fmt_mono(&m)))?;
            if back != x {
                return Err(format!("σ∘ρ ≠ id on {}⊗{}", a.alg.fmt_mono(&m), v.space.labels[b]));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Scalar helper used by callers assembling matrices.
pub fn scalar_of(p: &Poly, m: &Mono) -> Option<Scalar> {
    p.get(m).cloned()
}
