//! Quotients 𝒢/ℋ for a closed subgroup given by a Hopf ideal J ⊆ 𝒞.
//!
//! Everything is computed inside weight windows. The pipeline: the pair
//! (𝒞, 𝒟 = 𝒞/J), the odd kernel z = ker(W^𝒢 → W^ℋ), affinity of G/H, the
//! coinvariants 𝔅 = (C ⊗ ∧z)^{co D} and their presentation.

pub mod build;
pub mod checks;
pub mod galois;
pub mod maps;

use serde::Serialize;

use crate::comod::SuperComodule;
use crate::hopf::psi::Side;
use crate::hopf::Hopf;
use crate::superlinalg::{kernel, rref, solve, Field, Scalar, SparseVec, SuperVectorSpace};
use crate::superpoly::{add_scaled, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

pub use build::{build_quotient, quotient_for_pair, QuotientData, QuotientResult};
pub use checks::{check_splitting, gr_quotient_check, local_consistency_check, SplittingReport};
pub use galois::{check_affinity, check_galois, AffinityReport, GaloisVerdict};

/// Outcome of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Proven,
    Disproven,
    Unknown,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Proven => 0,
            Verdict::Disproven => 2,
            Verdict::Unknown => 3,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Proven
        } else {
            Verdict::Disproven
        }
    }
}

/// 𝒞 together with a Hopf ideal J and the quotient 𝒟 = 𝒞/J on the same
/// generators.
#[derive(Clone, Debug)]
pub struct SubPair {
    pub name: String,
    pub g: Hopf,
    pub j: Vec<Poly>,
    pub h: Hopf,
    /// Matrix of W^𝒢 → W^ℋ: rows index W^ℋ, columns W^𝒢.
    pub w_map: Vec<Vec<Scalar>>,
}

impl SubPair {
    /// C = 𝒞/(𝒞₁).
    pub fn c(&self) -> &Hopf {
        self.g.assoc()
    }

    /// D = 𝒟/(𝒟₁).
    pub fn d(&self) -> &Hopf {
        self.h.assoc()
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    /// C → D (same generators).
    pub fn q_cd(&self, p: &Poly) -> Poly {
        self.d().alg.nf(p)
    }

    /// 𝒞 → 𝒟.
    pub fn q_j(&self, p: &Poly) -> Poly {
        self.h.alg.nf(p)
    }
}

/// J for the trivial subgroup: x − ε(x) for even generators, every odd one.
pub fn trivial_ideal(g: &Hopf) -> Vec<Poly> {
    g.alg
        .user_vars()
        .into_iter()
        .map(|k| {
            let x = g.alg.var(k);
            if k < g.alg.n_even() {
                g.alg.sub(&x, &g.alg.constant(g.eps_var(k).clone()))
            } else {
                x
            }
        })
        .collect()
}

/// Builds 𝒟 = 𝒞/J and checks that J is a Hopf ideal on its generators.
pub fn prepare_pair(g: &Hopf, j: &[Poly], name: &str) -> Result<SubPair, Error> {
    let j: Vec<Poly> = j.iter().map(|p| g.alg.nf(p)).filter(|p| !p.is_empty()).collect();
    for p in &j {
        if crate::superpoly::poly_parity(p).is_none() {
            return Err(Error::HopfIdeal(format!("generator {} is not homogeneous", g.alg.fmt(p))));
        }
    }
    let alg = if j.is_empty() { g.alg.clone() } else { g.alg.quotient(&j)? };
    if !alg.is_confluent() {
        return Err(Error::Cap(format!("Gröbner completion for {name} did not finish")));
    }
    if alg.is_zero(&alg.one()) {
        return Err(Error::HopfIdeal("J is the unit ideal".into()));
    }
    let ta = TensorAlg::new([&alg, &alg]);
    let n = alg.n_vars();
    let delta: Vec<Tensor> = (0..n).map(|k| ta.nf(g.delta_var(k))).collect();
    let eps: Vec<Scalar> = (0..n).map(|k| g.eps_var(k).clone()).collect();
    let antipode: Vec<Poly> = (0..n).map(|k| alg.nf(g.antipode_var(k))).collect();
    for p in &j {
        let e = g.counit(p);
        if !e.is_zero() {
            return Err(Error::HopfIdeal(format!("ε({}) = {e}", g.alg.fmt(p))));
        }
        let d = ta.nf(&g.coproduct(p));
        if !d.is_empty() {
            return Err(Error::HopfIdeal(format!("Δ({}) = {} modulo J⊗𝒞 + 𝒞⊗J", g.alg.fmt(p), ta.fmt(&d))));
        }
        let s = alg.nf(&g.antipode(p));
        if !s.is_empty() {
            return Err(Error::HopfIdeal(format!("𝒮({}) = {} modulo J", g.alg.fmt(p), alg.fmt(&s))));
        }
    }
    let h = Hopf::from_parts(name, alg, delta, eps, antipode);
    let (cg, ch) = (g.cotangent(), h.cotangent().clone());
    let mut w_map = vec![vec![g.field().zero(); cg.dim_w()]; ch.dim_w()];
    for (col, k) in cg.odd_basis.iter().enumerate() {
        for (row, c) in ch.pi_w(&h.alg.var(*k)).into_iter().enumerate() {
            w_map[row][col] = c;
        }
    }
    let pair = SubPair { name: name.to_string(), g: g.clone(), j, h, w_map };
    let rank = rref(pair.field(), &columns(&pair.w_map, cg.dim_w())).len();
    if rank != ch.dim_w() {
        return Err(Error::Invalid(format!("W^𝒢 → W^ℋ is not surjective (rank {rank} of {})", ch.dim_w())));
    }
    Ok(pair)
}

fn columns(m: &[Vec<Scalar>], ncols: usize) -> Vec<SparseVec> {
    (0..ncols)
        .map(|j| m.iter().enumerate().filter(|(_, r)| !r[j].is_zero()).map(|(i, r)| (i, r[j].clone())).collect())
        .collect()
}

/// z = ker(W^𝒢 → W^ℋ) with its D-coaction.
#[derive(Clone, Debug)]
pub struct OddKernel {
    /// Basis vectors in W^𝒢 coordinates.
    pub basis: Vec<SparseVec>,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// Right D-comodule: ρ(z_a) = Σ_b z_b ⊗ coef[b][a].
    pub right: SuperComodule,
    /// The same comodule turned left with the antipode.
    pub left: SuperComodule,
    /// W^𝒢 as a right D-comodule.
    pub w_right: SuperComodule,
}

impl OddKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// z_a as a vector in W^𝒢 of length `dim_w`.
    pub fn dense(&self, a: usize, dim_w: usize, field: Field) -> Vec<Scalar> {
        (0..dim_w).map(|i| self.basis[a].get(&i).cloned().unwrap_or_else(|| field.zero())).collect()
    }
}

/// Restricts a W-coaction (coefficients already in the target algebra) to
/// the span of `basis`. `None` if the span is not a subcomodule.
pub fn restrict_coaction(alg: &Presentation, basis: &[SparseVec], coef: &[Vec<Poly>]) -> Option<Vec<Vec<Poly>>> {
    let field = alg.field;
    let n = basis.len();
    let mut out = vec![vec![Poly::new(); n]; n];
    for (a, v) in basis.iter().enumerate() {
        // ρ(z_a) = Σ_i w_i ⊗ P_i with P_i = Σ_j v_j c_ij
        let mut by_mono: std::collections::BTreeMap<Mono, SparseVec> = Default::default();
        for i in 0..coef.len() {
            let mut p = Poly::new();
            for (j, c) in v {
                add_scaled(&mut p, c, &coef[i][*j]);
            }
            for (m, c) in alg.nf(&p) {
                by_mono.entry(m).or_default().insert(i, c);
            }
        }
        for (m, target) in by_mono {
            let x = solve(field, &target, basis)?;
            for (b, c) in x {
                add_scaled(&mut out[b][a], &c, &Poly::from([(m.clone(), field.one())]));
            }
        }
    }
    Some(out)
}

pub fn compute_z(pair: &SubPair) -> Result<OddKernel, Error> {
    let field = pair.field();
    let g = &pair.g;
    let cot = g.cotangent();
    let dim_w = cot.dim_w();
    let basis = kernel(field, &columns(&pair.w_map, dim_w));
    let w_names = cot.w_names(g);
    let lift_weight = |i: usize| g.alg.odd[cot.odd_basis[i] - g.alg.n_even()].weight;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for (n, v) in basis.iter().enumerate() {
        let single = v.len() == 1 && v.values().all(|c| c.is_one());
        names.push(if single { w_names[*v.keys().next().unwrap()].clone() } else { format!("z{}", n + 1) });
        weights.push(v.keys().map(|i| lift_weight(*i)).max().unwrap_or(1));
    }
    let d = pair.d();
    let w_coef: Vec<Vec<Poly>> = cot.coaction.iter().map(|r| r.iter().map(|c| pair.q_cd(c)).collect()).collect();
    let coef = restrict_coaction(&d.alg, &basis, &w_coef)
        .ok_or_else(|| Error::Invalid("ker(W^𝒢 → W^ℋ) is not a D-subcomodule".into()))?;
    let space = SuperVectorSpace::new(names.iter().map(|s| (s.clone(), 1)).collect())?;
    let right = SuperComodule::new(space, Side::Right, coef)?;
    let left = right.twist(d);
    let w_space = SuperVectorSpace::new(w_names.iter().map(|s| (s.clone(), 1)).collect())?;
    let w_right = SuperComodule::new(w_space, Side::Right, w_coef)?;
    Ok(OddKernel { basis, names, weights, right, left, w_right })
}

/// J is stable under the adjoint coaction x ↦ Σ ± x₍₂₎ ⊗ 𝒮(x₍₁₎)x₍₃₎,
/// checked on generators: (q_J ⊗ id)∘ad(j) = 0. Returns the first failure.
pub fn normality(pair: &SubPair) -> Result<(), String> {
    let g = &pair.g;
    let field = g.field();
    let ta = TensorAlg::new([&pair.h.alg, &g.alg]);
    for j in &pair.j {
        let mut t = Tensor::new();
        for (k, c) in g.coproduct2(j) {
            let sign = k[0].parity() & k[1].parity() == 1;
            let c = if sign { -&c } else { c };
            let left = pair.q_j(&Poly::from([(k[1].clone(), field.one())]));
            if left.is_empty() {
                continue;
            }
            let s1 = g.antipode(&Poly::from([(k[0].clone(), field.one())]));
            let right = g.alg.mul(&s1, &g.alg.nf_mono(&k[2]));
            crate::superpoly::tensor::add_tensor_scaled(&mut t, &c, &ta.pure(&[left, right]));
        }
        let t = ta.nf(&t);
        if !t.is_empty() {
            return Err(format!("ad({}) = {} ∉ J⊗𝒞", g.alg.fmt(j), ta.fmt(&t)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
