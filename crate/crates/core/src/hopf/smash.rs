//! gr 𝒞 as the smash coproduct C ⋉ ∧(W): the tensor-product algebra with
//! Δ(w) = w₍₀₎⊗w₍₁₎ + 1⊗w for the co-adjoint coaction w ↦ w₍₀₎⊗w₍₁₎.

use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{extend_poly, OddVar, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::Hopf;

/// The algebra C ⊗ ∧(W): C's generators and relations, plus one odd
/// generator per W basis vector (named after its lift).
pub fn cw_algebra(h: &Hopf) -> Result<Presentation, Error> {
    let c = &h.assoc().alg;
    let cot = h.cotangent();
    let odd: Vec<(String, u32)> = cot
        .odd_basis
        .iter()
        .map(|k| {
            let OddVar { name, weight } = &h.alg.odd[*k - h.alg.n_even()];
            (name.clone(), *weight)
        })
        .collect();
    let odd = odd.into_iter().map(|(name, weight)| OddVar { name, weight }).collect();
    let base = Presentation::with_vars(c.field, c.even.clone(), odd, Vec::new())?;
    let rels = c.relations.iter().map(|r| extend_poly(&base, r)).collect();
    base.with_relations(rels)
}

/// Embeds an element of C into C ⊗ ∧(W).
pub fn from_c(cw: &Presentation, p: &Poly) -> Poly {
    cw.nf(&extend_poly(cw, p))
}

pub fn gr_hopf_smash(h: &Hopf) -> Result<Hopf, Error> {
    let cc = h.assoc();
    let cot = h.cotangent();
    let cw = cw_algebra(h)?;
    let ta = TensorAlg::new([&cw, &cw]);
    let n_even = cw.n_even();
    let mut delta = Vec::new();
    let mut eps = Vec::new();
    let mut known = Vec::new();
    for k in 0..n_even {
        known.push(Some(from_c(&cw, cc.antipode_var(k))));
        let mut t = Tensor::new();
        for (key, c) in cc.delta_var(k) {
            let parts = [from_c(&cw, &Poly::from([(key[0].clone(), cw.field.one())])), from_c(&cw, &Poly::from([(key[1].clone(), cw.field.one())]))];
            add_tensor_scaled(&mut t, c, &ta.pure(&parts));
        }
        delta.push(t);
        eps.push(cc.eps_var(k).clone());
    }
    for j in 0..cot.dim_w() {
        let mut t = ta.pure(&[cw.one(), cw.odd_var(j)]);
        for i in 0..cot.dim_w() {
            let coef = from_c(&cw, &cot.coaction[i][j]);
            add_tensor_scaled(&mut t, &cw.field.one(), &ta.pure(&[cw.odd_var(i), coef]));
        }
        delta.push(t);
        eps.push(cw.field.zero());
        known.push(None);
    }
    let name = format!("gr_{}", h.name);
    Hopf::from_parts_auto(&name, cw, delta, eps, known)
}
