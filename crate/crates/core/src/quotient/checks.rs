//! Splitting conditions, local consistency on a localized chart, and the
//! comparison with the quotient of gr 𝒢.

use crate::comod::algebra::poly_weight;
use crate::comod::{colinear_retraction, ComoduleAlgebra};
use crate::hopf::lie::is_graded;
use crate::hopf::psi::{canonical_candidate, Side};
use crate::hopf::smash::gr_hopf_smash;
use crate::superlinalg::echelon::restrict_to_coordinates;
use crate::superlinalg::{tensor_with_koszul, Echelon, Field, SuperVectorSpace};
use crate::superpoly::{extend_poly, Coords, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::build::{quotient_of_chart, QuotientData};
use super::{compute_z, prepare_pair, quotient_for_pair, restrict_coaction, OddKernel, SubPair, Verdict};

/// The three sufficient conditions for A ⊗ W → A ⊗ z to split.
#[derive(Clone, Debug)]
pub struct SplittingReport {
    /// z is a C-subcomodule of W.
    pub costable: Verdict,
    /// W → z has a D-colinear retraction.
    pub retraction: Verdict,
    /// [Lie₁, Lie₁] = 0.
    pub graded: Verdict,
    pub graded_witness: Option<(String, String)>,
}

impl SplittingReport {
    pub fn split(&self) -> bool {
        [self.costable, self.retraction, self.graded].contains(&Verdict::Proven)
    }
}

pub fn check_splitting(pair: &SubPair, z: &OddKernel) -> SplittingReport {
    let cot = pair.g.cotangent();
    let costable = Verdict::from_bool(restrict_coaction(&pair.c().alg, &z.basis, &cot.coaction).is_some());
    let retraction = match colinear_retraction(pair.d(), &z.right, &z.w_right, &z.basis) {
        Ok(Some(_)) => Verdict::Proven,
        Ok(None) => Verdict::Disproven,
        Err(_) => Verdict::Unknown,
    };
    let (g, w) = is_graded(&pair.g);
    SplittingReport { costable, retraction, graded: Verdict::from_bool(g), graded_witness: w }
}

/// c_{W,V} ∘ c_{V,W} = id.
pub fn braiding_involutive(field: Field, v: &SuperVectorSpace, w: &SuperVectorSpace) -> bool {
    let (_, c) = tensor_with_koszul(field, v, w);
    let (_, back) = tensor_with_koszul(field, w, v);
    back.compose(&c).map(|m| m.is_identity()).unwrap_or(false)
}

/// Filtration dimensions dim(V ∩ F_n) of the span of `elems`, as layers.
fn filtration_layers(field: Field, elems: &[Poly], bound: u32) -> Vec<usize> {
    let mut coords: Coords<Mono> = Coords::new();
    let vecs: Vec<_> = elems.iter().map(|p| coords.vec(p)).collect();
    let mut out = vec![0; bound as usize + 1];
    let mut prev = 0;
    for n in 0..=bound {
        let d = restrict_to_coordinates(field, &vecs, |i| coords.key(i).w <= n).len();
        out[n as usize] = d - prev;
        prev = d;
    }
    out
}

/// Span of all products of `gens` reachable without leaving the window.
fn closure(alg: &Presentation, gens: &[Poly], bound: u32) -> Vec<Poly> {
    let field = alg.field;
    let mut coords: Coords<Mono> = Coords::new();
    let mut span = Echelon::new(field);
    let mut elems = vec![alg.one()];
    span.insert(&coords.vec(&alg.one()), 0);
    let mut queue = vec![0];
    while let Some(i) = queue.pop() {
        for g in gens {
            let p = alg.mul(&elems[i], g);
            if p.is_empty() || poly_weight(&p) > bound {
                continue;
            }
            if span.insert(&coords.vec(&p), elems.len()).is_none() {
                queue.push(elems.len());
                elems.push(p);
            }
        }
    }
    elems
}

#[derive(Clone, Debug)]
pub struct LocalReport {
    pub ok: bool,
    pub element: String,
    /// Layers of the coinvariants of C_x ⊗ ∧z.
    pub local_layers: Vec<usize>,
    /// Layers of the algebra generated by 𝔅's generators and x⁻¹.
    pub generated_layers: Vec<usize>,
    pub generators_coinvariant: bool,
    pub local: QuotientData,
}

/// Compares 𝔅 on the chart C_x with the localization of 𝔅 at x, for a
/// coinvariant x ∈ C.
pub fn local_consistency_check(pair: &SubPair, z: &OddKernel, global: &QuotientData, x: &Poly, bound: u32) -> Result<LocalReport, Error> {
    let c = pair.c();
    let d = pair.d();
    let a0 = ComoduleAlgebra::restricted(c, d)?;
    let x = c.alg.nf(x);
    let ta0 = a0.tensor();
    if a0.coaction(&x) != ta0.pure(&[x.clone(), d.alg.one()]) {
        return Err(Error::Precondition(format!("{} is not coinvariant", c.alg.fmt(&x))));
    }
    let loc = c.alg.localize_at(&x, "xinv")?;
    let alg = loc.algebra.clone();
    let mut rho: Vec<Tensor> = a0
        .rho
        .iter()
        .map(|t| t.iter().map(|(k, v)| (vec![alg.mono(extend_key(&k[0], alg.n_even()), 0), k[1].clone()], v.clone())).collect())
        .collect();
    rho.insert(loc.inverse_var, TensorAlg::new([&alg, &d.alg]).pure(&[alg.var(loc.inverse_var), d.alg.one()]));
    let a1 = ComoduleAlgebra::new(alg, d.clone(), rho)?;
    let local = quotient_of_chart(&a1, z, bound)?;
    let az = &local.az;
    let mut gens: Vec<Poly> = global.generators().iter().map(|p| az.alg.nf(&extend_poly(&az.alg, p))).collect();
    gens.push(az.alg.even_var(loc.inverse_var));
    let tz = az.tensor();
    let generators_coinvariant = gens.iter().all(|g| az.coaction(g) == tz.pure(&[g.clone(), d.alg.one()]));
    let generated_layers = filtration_layers(c.field(), &closure(&az.alg, &gens, bound), bound);
    let local_layers = local.layer_dims();
    let ok = generators_coinvariant && generated_layers == local_layers;
    Ok(LocalReport { ok, element: c.alg.fmt(&x), local_layers, generated_layers, generators_coinvariant, local })
}

fn extend_key(e: &Mono, n: usize) -> Vec<u32> {
    let mut v = e.e.clone();
    v.resize(n, 0);
    v
}

#[derive(Clone, Debug)]
pub struct GrReport {
    pub ok: bool,
    /// gr J: lowest ∧-degree components of ψ(j).
    pub ideal: Vec<String>,
    /// Layer dimensions by ∧-degree, for 𝔅 and for the quotient of gr 𝒢.
    pub original: Vec<Vec<usize>>,
    pub graded: Vec<Vec<usize>>,
    /// (even, odd) generator counts.
    pub parities: ((usize, usize), (usize, usize)),
}

/// The quotient of gr 𝒢 by gr J has the same layered dimensions and
/// generator parities as 𝔅.
pub fn gr_quotient_check(pair: &SubPair, bound: u32) -> Result<GrReport, Error> {
    let g = &pair.g;
    let psi = canonical_candidate(g, Side::Left)?;
    let gr = gr_hopf_smash(g)?;
    let mut ideal = Vec::new();
    for j in &pair.j {
        let p = psi.apply(g, j);
        let low = p.keys().map(|m| m.odd_degree()).min();
        let part: Poly = p.iter().filter(|(m, _)| Some(m.odd_degree()) == low).map(|(m, c)| (m.clone(), c.clone())).collect();
        ideal.push(part);
    }
    let gr_pair = prepare_pair(&gr, &ideal, &format!("gr_{}", pair.name))?;
    let z = compute_z(pair)?;
    let z_gr = compute_z(&gr_pair)?;
    let q = quotient_for_pair(pair, &z, bound)?;
    let q_gr = quotient_for_pair(&gr_pair, &z_gr, bound)?;
    let original: Vec<Vec<usize>> = q.data.parts.iter().map(|p| p.layer_dims()).collect();
    let graded: Vec<Vec<usize>> = q_gr.data.parts.iter().map(|p| p.layer_dims()).collect();
    let count = |d: &QuotientData| (d.b_generators().len(), d.b1_generators().len());
    let parities = (count(&q.data), count(&q_gr.data));
    let ok = original == graded && parities.0 == parities.1;
    let ideal = ideal.iter().map(|p| gr.alg.fmt(p)).collect();
    Ok(GrReport { ok, ideal, original, graded, parities })
}
