//! 𝔅 = (A ⊗ ∧z)^{co D} for a chart A (C itself, or a localization of it).

use crate::comod::algebra::{coinvariant_layers, coinvariants_filtered, poly_weight};
use crate::comod::{ComoduleAlgebra, Coinvariants};
use crate::superlinalg::{Echelon, SparseVec};
use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{add_scaled, extend_poly, map_poly, Coords, EvenSpec, Mono, OddVar, Poly, Presentation, Tensor};
use crate::Error;

use super::galois::{check_affinity, AffinityReport};
use super::{compute_z, OddKernel, SubPair, Verdict};

/// A ⊗ ∧z with the diagonal right D-coaction. A must be purely even.
pub fn az_algebra(a: &ComoduleAlgebra, z: &OddKernel) -> Result<ComoduleAlgebra, Error> {
    if a.alg.n_odd() != 0 {
        return Err(Error::Precondition("the chart algebra must be purely even".into()));
    }
    let field = a.alg.field;
    let odd = z.names.iter().zip(&z.weights).map(|(n, w)| OddVar { name: n.clone(), weight: *w }).collect();
    let free = Presentation::with_vars(field, a.alg.even.clone(), odd, Vec::new())?;
    let rels: Vec<Poly> = a.alg.relations.iter().map(|r| extend_poly(&free, r)).collect();
    let alg = if rels.is_empty() { free } else { free.with_relations(rels)? };
    let mut rho = Vec::new();
    for t in &a.rho {
        rho.push(t.iter().map(|(k, c)| (vec![alg.mono(k[0].e.clone(), 0), k[1].clone()], c.clone())).collect::<Tensor>());
    }
    {
        let ta = crate::superpoly::TensorAlg::new([&alg, &a.d.alg]);
        for b in 0..z.dim() {
            let mut t = Tensor::new();
            for c in 0..z.dim() {
                let coef = &z.right.coef[c][b];
                if !coef.is_empty() {
                    add_tensor_scaled(&mut t, &field.one(), &ta.pure(&[alg.odd_var(c), coef.clone()]));
                }
            }
            rho.push(t);
        }
    }
    ComoduleAlgebra::new(alg, a.d.clone(), rho)
}

/// A presentation of 𝔅: generators with their images in A ⊗ ∧z and the
/// relations found in the window.
#[derive(Clone, Debug)]
pub struct BPresentation {
    pub free: Presentation,
    pub images: Vec<Poly>,
    pub relations: Vec<Poly>,
}

impl BPresentation {
    pub fn names(&self) -> Vec<String> {
        (0..self.free.n_vars()).map(|k| self.free.var_name(k).to_string()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientData {
    pub bound: u32,
    pub az: ComoduleAlgebra,
    /// Coinvariants of ∧-degree i.
    pub parts: Vec<Coinvariants>,
    /// Minimal B-module generators of each part.
    pub module_generators: Vec<Vec<Poly>>,
    /// Each part is free over B on its generators, within the window.
    pub free: Vec<bool>,
    /// 𝔅 is generated by B and B1, with ∧-degree i free of rank C(r, i)
    /// when B1 is free of rank r.
    pub exterior: bool,
    pub presentation: BPresentation,
}

impl QuotientData {
    /// Dimensions by weight, all ∧-degrees together.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.bound as usize + 1];
        for p in &self.parts {
            for (n, d) in p.layer_dims().into_iter().enumerate() {
                out[n] += d;
            }
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    /// Number of B-module generators in each ∧-degree.
    pub fn graded_ranks(&self) -> Vec<usize> {
        self.module_generators.iter().map(|g| g.len()).collect()
    }

    pub fn b_generators(&self) -> &[Poly] {
        &self.parts[0].generators
    }

    pub fn b1_generators(&self) -> &[Poly] {
        self.module_generators.get(1).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// B1 is free over B (rank = number of generators).
    pub fn b1_free(&self) -> bool {
        self.free.get(1).copied().unwrap_or(true)
    }

    /// All algebra generators of 𝔅 (B's, then B1's).
    pub fn generators(&self) -> Vec<Poly> {
        self.b_generators().iter().chain(self.b1_generators()).cloned().collect()
    }
}

/// Greedy B-module generators of a part; also reports whether the products
/// b·g inside the window are linearly independent.
fn module_generators(alg: &Presentation, b_basis: &[Poly], layers: &[Vec<Poly>], bound: u32) -> (Vec<Poly>, bool) {
    let field = alg.field;
    let mut coords: Coords<Mono> = Coords::new();
    let mut span = Echelon::new(field);
    let mut gens = Vec::new();
    let mut n = 0;
    let mut free = true;
    for layer in layers {
        for cand in layer {
            if span.contains(&coords.vec(cand)) {
                continue;
            }
            gens.push(cand.clone());
            for b in b_basis {
                let p = alg.mul(b, cand);
                if p.is_empty() || poly_weight(&p) > bound {
                    continue;
                }
                if span.insert(&coords.vec(&p), n).is_some() {
                    free = false;
                }
                n += 1;
            }
        }
    }
    (gens, free)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// Products b·g_S of B-basis elements with i-fold products of B1
/// generators span part i (and are independent when B1 is free).
fn exterior_check(alg: &Presentation, b_basis: &[Poly], b1: &[Poly], b1_free: bool, part: &Coinvariants, i: usize, bound: u32) -> bool {
    let field = alg.field;
    let mut coords: Coords<Mono> = Coords::new();
    let mut span = Echelon::new(field);
    let mut n = 0;
    let mut independent = true;
    for s in subsets(b1.len(), i) {
        let mut g = alg.one();
        for k in &s {
            g = alg.mul(&g, &b1[*k]);
        }
        for b in b_basis {
            let p = alg.mul(b, &g);
            if p.is_empty() || poly_weight(&p) > bound {
                continue;
            }
            if span.insert(&coords.vec(&p), n).is_some() {
                independent = false;
            }
            n += 1;
        }
    }
    let spans = part.basis().iter().all(|x| span.contains(&coords.vec(x)));
    spans && (independent || !b1_free)
}

/// Relations among the chosen generators: the kernel of evaluation on free
/// monomials of the window, reduced to a minimal ideal-generating subset.
fn present(az: &Presentation, b_gens: &[Poly], b1_gens: &[Poly], bound: u32) -> Result<BPresentation, Error> {
    let field = az.field;
    let even: Vec<EvenSpec> = b_gens
        .iter()
        .enumerate()
        .map(|(i, p)| EvenSpec { name: format!("s{}", i + 1), invertible: false, weight: poly_weight(p).max(1) })
        .collect();
    let odd: Vec<(String, u32)> = b1_gens.iter().enumerate().map(|(i, p)| (format!("u{}", i + 1), poly_weight(p).max(1))).collect();
    let free = Presentation::free(field, &even, &odd)?;
    let images: Vec<Poly> = b_gens.iter().chain(b1_gens).cloned().collect();
    let monos = free.free_monomials(bound);
    let mut coords: Coords<Mono> = Coords::new();
    let mut ech = Echelon::new(field);
    let mut kernel = Vec::new();
    for (i, m) in monos.iter().enumerate() {
        let val = az.nf(&map_poly(&free, az, &images, &Poly::from([(m.clone(), field.one())])));
        if let Some(rel) = ech.insert(&coords.vec(&val), i) {
            let mut r = Poly::new();
            for (j, c) in rel {
                add_scaled(&mut r, &c, &Poly::from([(monos[j].clone(), field.one())]));
            }
            kernel.push(r);
        }
    }
    let mut fc: Coords<Mono> = Coords::new();
    let mut ideal = Echelon::new(field);
    let mut relations = Vec::new();
    let mut n = 0;
    for r in kernel {
        if ideal.contains(&fc.vec(&r)) {
            continue;
        }
        for m in &monos {
            let p = free.mul(&Poly::from([(m.clone(), field.one())]), &r);
            if !p.is_empty() && poly_weight(&p) <= bound {
                ideal.insert(&fc.vec(&p), n);
                n += 1;
            }
        }
        relations.push(r);
    }
    Ok(BPresentation { free, images, relations })
}

/// The coinvariant algebra of A ⊗ ∧z, split by ∧-degree.
pub fn quotient_of_chart(a: &ComoduleAlgebra, z: &OddKernel, bound: u32) -> Result<QuotientData, Error> {
    let az = az_algebra(a, z)?;
    // generators are only needed in ∧-degree 0
    let parts: Vec<Coinvariants> = (0..=z.dim())
        .map(|i| {
            let keep = |m: &Mono| m.odd_degree() as usize == i;
            if i == 0 {
                coinvariants_filtered(&az, bound, keep)
            } else {
                Coinvariants { bound, layers: coinvariant_layers(&az, bound, keep), generators: Vec::new() }
            }
        })
        .collect();
    let b_basis = parts[0].basis();
    let mut module_gens = Vec::new();
    let mut free = Vec::new();
    for p in &parts {
        let (g, f) = module_generators(&az.alg, &b_basis, &p.layers, bound);
        module_gens.push(g);
        free.push(f);
    }
    let b1: Vec<Poly> = module_gens.get(1).cloned().unwrap_or_default();
    let b1_free = free.get(1).copied().unwrap_or(true);
    let exterior = (1..parts.len()).all(|i| exterior_check(&az.alg, &b_basis, &b1, b1_free, &parts[i], i, bound));
    let presentation = present(&az.alg, &parts[0].generators, &b1, bound)?;
    Ok(QuotientData { bound, az, parts, module_generators: module_gens, free, exterior, presentation })
}

/// Layer dimensions of the windowed cotensor product A □_D z (z made left
/// by the antipode), computed as the kernel of ρ_A ⊗ id − id ⊗ λ_z.
pub fn cotensor_layers(a: &ComoduleAlgebra, z: &OddKernel, bound: u32) -> Vec<usize> {
    let field = a.alg.field;
    let mut unknowns: Vec<(Mono, usize, u32)> = Vec::new();
    for m in a.alg.truncated_basis(bound) {
        for (k, w) in z.weights.iter().enumerate() {
            if m.w + w <= bound {
                unknowns.push((m.clone(), k, m.w + w));
            }
        }
    }
    unknowns.sort_by_key(|u| u.2);
    let mut coords: Coords<(Mono, Mono, usize)> = Coords::new();
    let mut ech = Echelon::new(field);
    let mut layers = vec![0; bound as usize + 1];
    for (i, (m, k, w)) in unknowns.iter().enumerate() {
        let mut col = SparseVec::new();
        let r = a.coaction(&Poly::from([(m.clone(), field.one())]));
        for (key, c) in &r {
            let e = coords.id(&(key[0].clone(), key[1].clone(), *k));
            crate::superlinalg::axpy(&mut col, c, &SparseVec::from([(e, field.one())]));
        }
        for b in 0..z.dim() {
            for (dm, c) in &z.left.coef[b][*k] {
                let e = coords.id(&(m.clone(), dm.clone(), b));
                crate::superlinalg::axpy(&mut col, &-c, &SparseVec::from([(e, field.one())]));
            }
        }
        if ech.insert(&col, i).is_some() {
            layers[*w as usize] += 1;
        }
    }
    layers
}

#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub pair: SubPair,
    pub z: OddKernel,
    pub data: QuotientData,
    /// Layer dimensions of C □_D z, to compare with ∧-degree 1 of 𝔅.
    pub b1_cotensor: Vec<usize>,
    pub affinity: Option<AffinityReport>,
    pub overridden: bool,
}

impl QuotientResult {
    pub fn b1_consistent(&self) -> bool {
        let b1 = self.data.parts.get(1).map(|p| p.layer_dims()).unwrap_or_else(|| vec![0; self.data.bound as usize + 1]);
        b1 == self.b1_cotensor
    }
}

/// The pipeline on the chart A = C, without the affinity gate.
pub fn quotient_for_pair(pair: &SubPair, z: &OddKernel, bound: u32) -> Result<QuotientResult, Error> {
    let a = ComoduleAlgebra::restricted(pair.c(), pair.d())?;
    let data = quotient_of_chart(&a, z, bound)?;
    let b1_cotensor = cotensor_layers(&a, z, bound);
    Ok(QuotientResult { pair: pair.clone(), z: z.clone(), data, b1_cotensor, affinity: None, overridden: false })
}

/// Checks affinity first; proceeds when it is Proven or overridden.
pub fn build_quotient(pair: &SubPair, bound: u32, override_affinity: bool) -> Result<QuotientResult, Error> {
    let z = compute_z(pair)?;
    let aff = check_affinity(pair, bound);
    if aff.status != Verdict::Proven && !override_affinity {
        return Err(Error::Precondition(format!("affinity of G/H is {:?}: {}", aff.status, aff.detail)));
    }
    let mut r = quotient_for_pair(pair, &z, bound)?;
    r.overridden = aff.status != Verdict::Proven;
    r.affinity = Some(aff);
    Ok(r)
}
