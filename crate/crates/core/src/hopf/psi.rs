//! Candidate decompositions 𝒞 ≅ C ⊗ ∧(W) and their verification.
//!
//! A left candidate ψ: 𝒞 → C ⊗ ∧(W) must be left C-colinear for
//! λ = (q⊗id)∘Δ; a right candidate ψ′: 𝒞 → ∧(W) ⊗ C must be right
//! C-colinear for ρ = (id⊗q)∘Δ. Both are stored in the algebra C ⊗ ∧(W),
//! which is commutative across the two factors since C is even.

use std::collections::BTreeMap;

use crate::superlinalg::{Echelon, Scalar};
use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{add_scaled, map_poly, Coords, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::smash::{cw_algebra, from_c};
use super::Hopf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct DecompositionWitness {
    pub side: Side,
    /// The target algebra C ⊗ ∧(W).
    pub cw: Presentation,
    /// Image of every variable of 𝒞 (inverse partners included).
    pub images: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct PsiReport {
    pub ok: bool,
    pub bound: u32,
    /// Named checks in a fixed order.
    pub checks: BTreeMap<String, bool>,
    /// First failure: (check, witness).
    pub failure: Option<(String, String)>,
    /// ξ on the generators of C, as elements of 𝒞.
    pub xi: Vec<(String, Poly)>,
}

impl DecompositionWitness {
    /// Completes images given on user generators (inverse partners derived).
    pub fn from_user_images(h: &Hopf, side: Side, cw: Presentation, user: &BTreeMap<String, Poly>) -> Result<DecompositionWitness, Error> {
        let mut images = vec![Poly::new(); h.alg.n_vars()];
        for k in h.alg.user_vars() {
            let name = h.alg.var_name(k);
            let p = user.get(name).ok_or_else(|| Error::Invalid(format!("no image for '{name}'")))?;
            images[k] = cw.nf(p);
        }
        for i in 0..h.alg.n_even() {
            let v = &h.alg.even[i];
            if let (true, Some(j)) = (v.is_inverse, v.partner) {
                images[i] = cw
                    .invert(&images[j])
                    .ok_or_else(|| Error::Invalid(format!("image of '{}' is not a unit", h.alg.even[j].name)))?;
            }
        }
        Ok(DecompositionWitness { side, cw, images })
    }

    pub fn apply(&self, h: &Hopf, p: &Poly) -> Poly {
        self.cw.nf(&map_poly(&h.alg, &self.cw, &self.images, p))
    }
}

/// q₁: 𝒞 → ∧(W), x ↦ ε(x) on even generators and y ↦ π_W(y) on odd ones,
/// as images in C ⊗ ∧(W).
pub fn q1_images(h: &Hopf, cw: &Presentation) -> Vec<Poly> {
    let cot = h.cotangent();
    (0..h.alg.n_vars())
        .map(|k| {
            if k < h.alg.n_even() {
                cw.constant(h.eps_var(k).clone())
            } else {
                let mut p = Poly::new();
                for (i, c) in cot.pi_w(&h.alg.var(k)).iter().enumerate() {
                    add_scaled(&mut p, c, &cw.odd_var(i));
                }
                p
            }
        })
        .collect()
}

/// The candidates (q⊗q₁)∘Δ (left) and (q₁⊗q)∘Δ (right).
pub fn canonical_candidate(h: &Hopf, side: Side) -> Result<DecompositionWitness, Error> {
    let cw = cw_algebra(h)?;
    let q1 = q1_images(h, &cw);
    let mut images = Vec::new();
    for k in 0..h.alg.n_vars() {
        let mut p = Poly::new();
        for (key, c) in h.delta_var(k) {
            let (cpart, wpart) = match side {
                Side::Left => (&key[0], &key[1]),
                Side::Right => (&key[1], &key[0]),
            };
            let qc = from_c(&cw, &h.to_assoc(&Poly::from([(cpart.clone(), cw.field.one())])));
            if qc.is_empty() {
                continue;
            }
            let qw = map_poly(&h.alg, &cw, &q1, &Poly::from([(wpart.clone(), cw.field.one())]));
            add_scaled(&mut p, c, &cw.mul(&qc, &qw));
        }
        images.push(cw.nf(&p));
    }
    Ok(DecompositionWitness { side, cw, images })
}

/// Splits a C ⊗ ∧(W) monomial into its C part and its ∧(W) part.
fn split(cw: &Presentation, m: &Mono) -> (Mono, Mono) {
    (cw.mono(m.e.clone(), 0), cw.mono(vec![0; cw.n_even()], m.o))
}

pub fn verify_decomposition_psi(h: &Hopf, w: &DecompositionWitness, bound: u32) -> PsiReport {
    let field = h.field();
    let cw = &w.cw;
    let cc = h.assoc();
    let cot = h.cotangent();
    let mut checks = BTreeMap::new();
    let mut failure: Option<(String, String)> = None;
    let mut record = |name: &str, ok: bool, witness: String, failure: &mut Option<(String, String)>| {
        checks.insert(name.to_string(), ok);
        if !ok && failure.is_none() {
            *failure = Some((name.to_string(), witness));
        }
    };

    // relations map to zero
    let mut rels = h.alg.inverse_relations();
    rels.extend(h.alg.relations.iter().cloned());
    let bad = rels.iter().find(|r| !w.apply(h, r).is_empty());
    record("relations", bad.is_none(), bad.map(|r| h.alg.fmt(r)).unwrap_or_default(), &mut failure);

    let basis = h.alg.truncated_basis(bound);
    let elems: Vec<Poly> = basis.iter().map(|m| Poly::from([(m.clone(), field.one())])).collect();
    let images: Vec<Poly> = elems.iter().map(|p| w.apply(h, p)).collect();

    // multiplicative on generator × basis products inside the window
    let mut mult_bad = None;
    'm: for k in h.alg.user_vars() {
        let g = h.alg.var(k);
        let gi = w.apply(h, &g);
        for (e, im) in elems.iter().zip(&images) {
            let prod = h.alg.mul(&g, e);
            if w.apply(h, &prod) != cw.mul(&gi, im) {
                mult_bad = Some(format!("{} * {}", h.alg.var_name(k), h.alg.fmt(e)));
                break 'm;
            }
        }
    }
    record("algebra map", mult_bad.is_none(), mult_bad.unwrap_or_default(), &mut failure);

    // injective on the window, every generator of C ⊗ ∧(W) hit
    let mut coords: Coords<Mono> = Coords::new();
    let mut ech = Echelon::new(field);
    let mut inj_bad = None;
    for (i, im) in images.iter().enumerate() {
        let v = coords.vec(im);
        if ech.insert(&v, i).is_some() && inj_bad.is_none() {
            inj_bad = Some(h.alg.fmt(&elems[i]));
        }
    }
    let mut preimage = |target: &Poly| -> Option<Poly> {
        let v = coords.vec(target);
        let (res, combo) = ech.reduce(&v);
        if !res.is_empty() {
            return None;
        }
        let mut p = Poly::new();
        for (i, c) in combo {
            add_scaled(&mut p, &c, &elems[i]);
        }
        Some(p)
    };
    let mut surj_bad = None;
    let mut xi = Vec::new();
    for k in 0..cw.n_vars() {
        let g = cw.var(k);
        match preimage(&g) {
            None => {
                surj_bad.get_or_insert_with(|| cw.var_name(k).to_string());
            }
            Some(p) => {
                if k < cw.n_even() {
                    xi.push((cw.var_name(k).to_string(), p));
                }
            }
        }
    }
    record("injective", inj_bad.is_none(), inj_bad.unwrap_or_default(), &mut failure);
    record("surjective", surj_bad.is_none(), surj_bad.unwrap_or_default(), &mut failure);

    // q∘ξ = id on the generators of C
    let xi_bad = xi.iter().find(|(name, p)| {
        let k = cc.alg.lookup(name).unwrap();
        h.to_assoc(p) != cc.alg.var(k)
    });
    record("q∘ξ = id", xi_bad.is_none(), xi_bad.map(|x| x.0.clone()).unwrap_or_default(), &mut failure);

    // counit and projection onto 𝕜 ⊕ W
    let mut counit_bad = None;
    let mut proj_bad = None;
    for (e, im) in elems.iter().zip(&images) {
        let (scalar, lin) = low_degree_part(h, cw, im);
        if scalar != h.counit(e) {
            counit_bad.get_or_insert_with(|| h.alg.fmt(e));
        }
        let odd_part: Poly = e.iter().filter(|(m, _)| m.parity() == 1).map(|(m, c)| (m.clone(), c.clone())).collect();
        if lin != cot.pi_w(&odd_part) {
            proj_bad.get_or_insert_with(|| h.alg.fmt(e));
        }
    }
    record("counit", counit_bad.is_none(), counit_bad.unwrap_or_default(), &mut failure);
    record("projection", proj_bad.is_none(), proj_bad.unwrap_or_default(), &mut failure);

    // colinearity, compared in C ⊗ (C ⊗ ∧W) (left) or (C ⊗ ∧W) ⊗ C (right)
    let tl = TensorAlg::new([&cc.alg, cw]);
    let tr = TensorAlg::new([cw, &cc.alg]);
    let mut col_bad = None;
    for (e, im) in elems.iter().zip(&images) {
        let d = h.coproduct(e);
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        match w.side {
            Side::Left => {
                for (k, c) in &d {
                    let qa = h.to_assoc(&Poly::from([(k[0].clone(), field.one())]));
                    let pb = w.apply(h, &Poly::from([(k[1].clone(), field.one())]));
                    add_tensor_scaled(&mut lhs, c, &tl.pure(&[qa, pb]));
                }
                for (m, c) in im {
                    let (cm, wm) = split(cw, m);
                    for (k2, c2) in cc.coproduct_mono(&cm) {
                        let right = cw.mul(&from_c(cw, &Poly::from([(k2[1].clone(), field.one())])), &Poly::from([(wm.clone(), field.one())]));
                        add_tensor_scaled(&mut rhs, &(c * &c2), &tl.pure(&[Poly::from([(k2[0].clone(), field.one())]), right]));
                    }
                }
            }
            Side::Right => {
                for (k, c) in &d {
                    let pa = w.apply(h, &Poly::from([(k[0].clone(), field.one())]));
                    let qb = h.to_assoc(&Poly::from([(k[1].clone(), field.one())]));
                    add_tensor_scaled(&mut lhs, c, &tr.pure(&[pa, qb]));
                }
                for (m, c) in im {
                    let (cm, wm) = split(cw, m);
                    for (k2, c2) in cc.coproduct_mono(&cm) {
                        let left = cw.mul(&Poly::from([(wm.clone(), field.one())]), &from_c(cw, &Poly::from([(k2[0].clone(), field.one())])));
                        add_tensor_scaled(&mut rhs, &(c * &c2), &tr.pure(&[left, Poly::from([(k2[1].clone(), field.one())])]));
                    }
                }
            }
        }
        if lhs != rhs {
            col_bad = Some(h.alg.fmt(e));
            break;
        }
    }
    record("colinear", col_bad.is_none(), col_bad.unwrap_or_default(), &mut failure);

    let ok = failure.is_none();
    PsiReport { ok, bound, checks, failure, xi }
}

/// Evaluates a scalar linear functional on ∧-degree ≤ 1 of an element of
/// C ⊗ ∧(W) after applying ε_C: returns (scalar part, W coordinates).
pub fn low_degree_part(h: &Hopf, cw: &Presentation, p: &Poly) -> (Scalar, Vec<Scalar>) {
    let field = h.field();
    let cc = h.assoc();
    let mut scalar = field.zero();
    let mut lin = vec![field.zero(); cw.n_odd()];
    for (m, c) in p {
        let (cm, wm) = split(cw, m);
        let ec = cc.counit_mono(&cm);
        if wm.o == 0 {
            scalar = &scalar + &(c * &ec);
        } else if wm.odd_degree() == 1 {
            let j = wm.o.trailing_zeros() as usize;
            lin[j] = &lin[j] + &(c * &ec);
        }
    }
    (scalar, lin)
}
