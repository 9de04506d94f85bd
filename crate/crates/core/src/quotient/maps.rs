//! The maps κ, θ and ω for a chart A with an algebra map ι: C → A.

use std::collections::BTreeMap;

use crate::comod::algebra::{module_coaction, sigma_apply, ModElem, ModTensor};
use crate::comod::{coinvariants, colinear_retraction, eta_extension, finite_subcoalgebra, ComoduleAlgebra, Eta};
use crate::hopf::lie::is_graded;
use crate::hopf::psi::{canonical_candidate, verify_decomposition_psi, Side};
use crate::hopf::{map_to_tensor, Hopf};
use crate::superlinalg::Scalar;
use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{add_scaled, extend_poly, kill_odd, map_poly, Mono, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::build::az_algebra;
use super::{restrict_coaction, OddKernel, SubPair};

/// A right D-comodule algebra A with ι: C → A given on C's generators.
#[derive(Clone, Debug)]
pub struct Chart {
    pub a: ComoduleAlgebra,
    pub iota: Vec<Poly>,
}

impl Chart {
    /// A = C with ρ = (id⊗q)∘Δ and ι = id.
    pub fn main(pair: &SubPair) -> Result<Chart, Error> {
        let a = ComoduleAlgebra::restricted(pair.c(), pair.d())?;
        let iota = (0..a.alg.n_vars()).map(|k| a.alg.var(k)).collect();
        Ok(Chart { a, iota })
    }

    pub fn iota(&self, c: &Presentation, p: &Poly) -> Poly {
        self.a.alg.nf(&map_poly(c, &self.a.alg, &self.iota, p))
    }
}

/// Outcome of an identity check run over a finite set of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub checked: usize,
    pub failure: Option<String>,
}

impl MapCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

fn mono_poly(alg: &Presentation, m: &Mono) -> Poly {
    Poly::from([(m.clone(), alg.field.one())])
}

fn unit_elem(alg: &Presentation, dim: usize, j: usize, m: &Mono) -> ModElem {
    let mut x = vec![Poly::new(); dim];
    x[j] = mono_poly(alg, m);
    x
}

/// κ: A ⊗ V → V ⊗ A, a⊗v ↦ v₍₀₎ ⊗ a·ι(v₍₁₎), for a right C-comodule V.
/// Elements of either side are stored as one A-coefficient per basis vector.
#[derive(Clone, Debug)]
pub struct Kappa {
    /// ι(c_ij) and ι(𝒮(c_ij)).
    coef: Vec<Vec<Poly>>,
    coef_s: Vec<Vec<Poly>>,
}

impl Kappa {
    pub fn new(chart: &Chart, c: &Hopf, coef: &[Vec<Poly>]) -> Kappa {
        let m = |f: &dyn Fn(&Poly) -> Poly| coef.iter().map(|r| r.iter().map(|x| chart.iota(&c.alg, &f(x))).collect()).collect();
        Kappa { coef: m(&|x: &Poly| x.clone()), coef_s: m(&|x: &Poly| c.antipode(x)) }
    }

    pub fn dim(&self) -> usize {
        self.coef.len()
    }

    pub fn apply(&self, alg: &Presentation, x: &ModElem) -> ModElem {
        (0..self.dim())
            .map(|i| {
                let mut p = Poly::new();
                for (j, a) in x.iter().enumerate() {
                    p = alg.add(&p, &alg.mul(a, &self.coef[i][j]));
                }
                p
            })
            .collect()
    }

    /// κ⁻¹(v_i ⊗ a) = Σ_j a·ι(𝒮(c_ji)) ⊗ v_j.
    pub fn apply_inv(&self, alg: &Presentation, y: &ModElem) -> ModElem {
        (0..self.dim())
            .map(|j| {
                let mut p = Poly::new();
                for (i, a) in y.iter().enumerate() {
                    p = alg.add(&p, &alg.mul(a, &self.coef_s[j][i]));
                }
                p
            })
            .collect()
    }
}

/// κ⁻¹∘κ = id and κ∘κ⁻¹ = id on the window of A times the basis of V.
pub fn check_kappa(chart: &Chart, kappa: &Kappa, bound: u32) -> MapCheck {
    let alg = &chart.a.alg;
    let mut checked = 0;
    for m in alg.truncated_basis(bound) {
        for j in 0..kappa.dim() {
            let x = unit_elem(alg, kappa.dim(), j, &m);
            if kappa.apply_inv(alg, &kappa.apply(alg, &x)) != x {
                return MapCheck { checked, failure: Some(format!("κ⁻¹κ ≠ id on {} ⊗ v{}", alg.fmt_mono(&m), j + 1)) };
            }
            if kappa.apply(alg, &kappa.apply_inv(alg, &x)) != x {
                return MapCheck { checked, failure: Some(format!("κκ⁻¹ ≠ id on v{} ⊗ {}", j + 1, alg.fmt_mono(&m))) };
            }
            checked += 2;
        }
    }
    MapCheck { checked, failure: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaRoute {
    /// A D-colinear retraction s: W → z; θ = id ⊗ s.
    Retraction,
    /// z is a C-subcomodule; θ = κ_z⁻¹ ∘ (r ⊗ id) ∘ κ_W.
    Costable,
    /// θ = σ_{A⊗z} ∘ (id ⊗ r ⊗ id) ∘ ρ_{A⊗W}.
    Sigma,
}

/// A D-colinear A-linear retraction θ: A ⊗ W → A ⊗ z.
#[derive(Clone, Debug)]
pub struct Theta {
    pub route: ThetaRoute,
    /// Linear map W → z (colinear in the retraction route).
    pub r: Vec<Vec<Scalar>>,
    kappa_w: Option<Kappa>,
    kappa_z: Option<Kappa>,
    eta: Option<Eta>,
}

/// r(w_i) = z_b when i is the pivot of z_b, 0 otherwise.
fn pivot_retraction(pair: &SubPair, z: &OddKernel) -> Vec<Vec<Scalar>> {
    let field = pair.field();
    let dim_w = pair.g.cotangent().dim_w();
    let mut r = vec![vec![field.zero(); dim_w]; z.dim()];
    for (b, v) in z.basis.iter().enumerate() {
        r[b][*v.keys().next().unwrap()] = field.one();
    }
    r
}

impl Theta {
    /// Tries the routes in order (retraction, costable, σ) unless one is
    /// forced; `bound` is the window the σ route must cover.
    pub fn build(pair: &SubPair, z: &OddKernel, chart: &Chart, force: Option<ThetaRoute>, bound: u32) -> Result<Theta, Error> {
        let c = pair.c();
        let want = |r: ThetaRoute| force.is_none() || force == Some(r);
        if want(ThetaRoute::Retraction) {
            if let Some(s) = colinear_retraction(pair.d(), &z.right, &z.w_right, &z.basis)? {
                return Ok(Theta { route: ThetaRoute::Retraction, r: s, kappa_w: None, kappa_z: None, eta: None });
            }
        }
        let r = pivot_retraction(pair, z);
        let cot = pair.g.cotangent();
        if want(ThetaRoute::Costable) {
            if let Some(zc) = restrict_coaction(&c.alg, &z.basis, &cot.coaction) {
                let kappa_w = Kappa::new(chart, c, &cot.coaction);
                let kappa_z = Kappa::new(chart, c, &zc);
                return Ok(Theta { route: ThetaRoute::Costable, r, kappa_w: Some(kappa_w), kappa_z: Some(kappa_z), eta: None });
            }
        }
        if want(ThetaRoute::Sigma) {
            let eta = sigma_eta(chart, z, &r, bound)?;
            return Ok(Theta { route: ThetaRoute::Sigma, r, kappa_w: None, kappa_z: None, eta: Some(eta) });
        }
        Err(Error::Precondition(format!("θ cannot be built by the {:?} route", force.unwrap())))
    }

    fn apply_r(&self, x: &[Poly], alg: &Presentation) -> ModElem {
        self.r
            .iter()
            .map(|row| {
                let mut p = Poly::new();
                for (i, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        add_scaled(&mut p, c, &x[i]);
                    }
                }
                alg.nf(&p)
            })
            .collect()
    }

    pub fn apply(&self, chart: &Chart, z: &OddKernel, x: &ModElem) -> Result<ModElem, Error> {
        let alg = &chart.a.alg;
        match self.route {
            ThetaRoute::Retraction => Ok(self.apply_r(x, alg)),
            ThetaRoute::Costable => {
                let y = self.kappa_w.as_ref().unwrap().apply(alg, x);
                let y = self.apply_r(&y, alg);
                Ok(self.kappa_z.as_ref().unwrap().apply_inv(alg, &y))
            }
            ThetaRoute::Sigma => {
                let t = module_coaction(&chart.a, &z.w_right, x);
                let t = self.r_on_tensor(&t);
                sigma_apply(&chart.a, &z.right, self.eta.as_ref().unwrap(), &t)
                    .ok_or_else(|| Error::Cap("η is not defined on a needed coefficient".into()))
            }
        }
    }

    fn r_on_tensor(&self, t: &ModTensor) -> ModTensor {
        self.r
            .iter()
            .map(|row| {
                let mut out = Tensor::new();
                for (i, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        add_tensor_scaled(&mut out, c, &t[i]);
                    }
                }
                out
            })
            .collect()
    }
}

/// η on the hull of every 𝒮(m₍₁₎)·d met by the σ route on the window.
fn sigma_eta(chart: &Chart, z: &OddKernel, r: &[Vec<Scalar>], bound: u32) -> Result<Eta, Error> {
    let a = &chart.a;
    let alg = &a.alg;
    let dim_w = z.w_right.dim();
    let mut seeds: BTreeMap<Mono, Poly> = BTreeMap::new();
    seeds.insert(Mono::one(a.d.alg.n_even()), a.d.alg.one());
    for m in alg.truncated_basis(bound) {
        for j in 0..dim_w {
            let t = module_coaction(a, &z.w_right, &unit_elem(alg, dim_w, j, &m));
            for (i, slot) in t.iter().enumerate() {
                for key in slot.keys() {
                    for (b, row) in r.iter().enumerate() {
                        if row[i].is_zero() {
                            continue;
                        }
                        let inner = module_coaction(a, &z.right, &unit_elem(alg, z.dim(), b, &key[0]));
                        for s2 in &inner {
                            for k2 in s2.keys() {
                                let s = a.d.antipode(&mono_poly(&a.d.alg, &k2[1]));
                                let p = a.d.alg.mul(&s, &mono_poly(&a.d.alg, &key[1]));
                                for mm in p.keys() {
                                    seeds.insert(mm.clone(), mono_poly(&a.d.alg, mm));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let seeds: Vec<Poly> = seeds.into_values().collect();
    let sub = finite_subcoalgebra(&a.d, &seeds)?;
    eta_extension(a, &sub, 2 * bound.max(1)).ok_or_else(|| Error::Precondition("no colinear η with η(1) = 1 in the window".into()))
}

/// θ|_{A⊗z} = id and D-colinearity of θ on the window of A times W.
pub fn check_theta(chart: &Chart, z: &OddKernel, theta: &Theta, bound: u32) -> MapCheck {
    let a = &chart.a;
    let alg = &a.alg;
    let ta = a.tensor();
    let dim_w = z.w_right.dim();
    let field = alg.field;
    let mut checked = 0;
    for m in alg.truncated_basis(bound) {
        for b in 0..z.dim() {
            let x: ModElem = (0..dim_w).map(|i| z.basis[b].get(&i).map(|c| Poly::from([(m.clone(), c.clone())])).unwrap_or_default()).collect();
            match theta.apply(chart, z, &x) {
                Ok(y) if y == unit_elem(alg, z.dim(), b, &m) => checked += 1,
                Ok(_) => return MapCheck { checked, failure: Some(format!("θ({} ⊗ {}) ≠ itself", alg.fmt_mono(&m), z.names[b])) },
                Err(e) => return MapCheck { checked, failure: Some(e.to_string()) },
            }
        }
        for j in 0..dim_w {
            let x = unit_elem(alg, dim_w, j, &m);
            let Ok(tx) = theta.apply(chart, z, &x) else {
                return MapCheck { checked, failure: Some("θ undefined in the window".into()) };
            };
            let lhs = module_coaction(a, &z.right, &tx);
            let mut rhs = vec![Tensor::new(); z.dim()];
            for (i, slot) in module_coaction(a, &z.w_right, &x).iter().enumerate() {
                for (key, c) in slot {
                    let Ok(img) = theta.apply(chart, z, &unit_elem(alg, dim_w, i, &key[0])) else {
                        return MapCheck { checked, failure: Some("θ undefined in the window".into()) };
                    };
                    for (b, p) in img.iter().enumerate() {
                        if !p.is_empty() {
                            add_tensor_scaled(&mut rhs[b], c, &ta.pure(&[p.clone(), mono_poly(&a.d.alg, &key[1])]));
                        }
                    }
                }
            }
            let rhs: ModTensor = rhs.iter().map(|t| ta.nf(t)).collect();
            if lhs != rhs {
                let w = &z.w_right.space.labels[j];
                return MapCheck { checked, failure: Some(format!("θ is not colinear on {} ⊗ {w}", alg.fmt_mono(&m))) };
            }
            checked += 1;
        }
    }
    let _ = field;
    MapCheck { checked, failure: None }
}

#[derive(Clone, Debug)]
pub struct OmegaReport {
    pub ok: bool,
    /// 𝒞 is graded; otherwise the right candidate ψ′ was verified instead.
    pub graded: bool,
    pub checks: BTreeMap<String, bool>,
    pub failure: Option<(String, String)>,
    /// ω on the generators of 𝒞.
    pub images: Vec<(String, String)>,
    pub codomain_layers: Vec<usize>,
}

/// ω = (f ⊗ q_J)∘Δ with f = ∧θ ∘ ∧κ⁻¹ ∘ ι ∘ ψ′ into (A ⊗ ∧z) □_D 𝒟.
/// `expected` are the 𝔅 layer dimensions the codomain coinvariants must
/// reproduce.
pub fn omega_graded(pair: &SubPair, z: &OddKernel, chart: &Chart, theta: &Theta, bound: u32, expected: &[usize]) -> Result<OmegaReport, Error> {
    let g = &pair.g;
    let c = pair.c();
    let field = g.field();
    let graded = is_graded(g).0;
    let psi = canonical_candidate(g, Side::Right)?;
    let pr = verify_decomposition_psi(g, &psi, bound);
    if !pr.ok {
        let (k, w) = pr.failure.unwrap_or_default();
        return Err(Error::Precondition(format!("no verified decomposition ψ′ ({k}: {w})")));
    }
    let azc = az_algebra(&chart.a, z)?;
    let az = &azc.alg;
    let cw = &psi.cw;
    let cot = g.cotangent();
    let dim_w = cot.dim_w();

    // Φ: C ⊗ ∧W → A ⊗ ∧z on generators
    let mut phi = Vec::new();
    for k in 0..c.alg.n_vars() {
        phi.push(az.nf(&extend_poly(az, &chart.iota[k])));
    }
    let theta_w: Vec<Poly> = (0..dim_w)
        .map(|j| {
            let x = unit_elem(&chart.a.alg, dim_w, j, &Mono::one(chart.a.alg.n_even()));
            let y = theta.apply(chart, z, &x)?;
            let mut p = Poly::new();
            for (b, a) in y.iter().enumerate() {
                p = az.add(&p, &az.mul(&extend_poly(az, a), &az.odd_var(b)));
            }
            Ok(p)
        })
        .collect::<Result<_, Error>>()?;
    for i in 0..dim_w {
        let mut p = Poly::new();
        for (j, tw) in theta_w.iter().enumerate() {
            let s = extend_poly(az, &chart.iota(&c.alg, &c.antipode(&cot.coaction[j][i])));
            p = az.add(&p, &az.mul(&s, tw));
        }
        phi.push(p);
    }
    let f = |p: &Poly| az.nf(&map_poly(cw, az, &phi, &psi.apply(g, p)));

    let ta = TensorAlg::new([az, &pair.h.alg]);
    let omega_direct = |p: &Poly| {
        let mut t = Tensor::new();
        for (k, x) in g.coproduct(p) {
            let q = pair.q_j(&g.alg.nf_mono(&k[1]));
            if q.is_empty() {
                continue;
            }
            add_tensor_scaled(&mut t, &x, &ta.pure(&[f(&g.alg.nf_mono(&k[0])), q]));
        }
        ta.nf(&t)
    };
    let images: Vec<Tensor> = (0..g.alg.n_vars()).map(|k| omega_direct(&g.alg.var(k))).collect();
    let omega = |p: &Poly| ta.nf(&map_to_tensor(&g.alg, &ta, &images, p));

    let mut checks = BTreeMap::new();
    let mut failure: Option<(String, String)> = None;
    let mut record = |name: &str, bad: Option<String>, failure: &mut Option<(String, String)>| {
        checks.insert(name.to_string(), bad.is_none());
        if let (Some(w), None) = (bad, failure.as_ref()) {
            *failure = Some((name.to_string(), w));
        }
    };

    let mut rels = g.alg.inverse_relations();
    rels.extend(g.alg.relations.iter().cloned());
    let bad = rels.iter().find(|r| !omega(r).is_empty()).map(|r| format!("ω({}) ≠ 0", g.alg.fmt(r)));
    record("relations", bad, &mut failure);

    let mut bad = None;
    'mult: for x in 0..g.alg.n_vars() {
        let gx = g.alg.var(x);
        let ox = &images[x];
        for m in g.alg.truncated_basis(bound.saturating_sub(g.alg.var(x).keys().next().map(|m| m.w).unwrap_or(1))) {
            let mp = mono_poly(&g.alg, &m);
            let lhs = omega_direct(&g.alg.mul(&gx, &mp));
            let rhs = ta.nf(&ta.mul(ox, &omega_direct(&mp)));
            if lhs != rhs {
                bad = Some(format!("ω({}·{}) ≠ ω({})ω({})", g.alg.var_name(x), g.alg.fmt_mono(&m), g.alg.var_name(x), g.alg.fmt_mono(&m)));
                break 'mult;
            }
        }
    }
    record("algebra_map", bad, &mut failure);

    let d = pair.d();
    let t3 = TensorAlg::new([az, &d.alg, &pair.h.alg]);
    let t3h = TensorAlg::new([az, &pair.h.alg, &pair.h.alg]);
    let mut bad_cot = None;
    let mut bad_col = None;
    let mut bad_deg = None;
    for (k, img) in images.iter().enumerate() {
        let name = g.alg.var_name(k);
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        for (key, x) in img {
            for (k2, y) in azc.coaction(&mono_poly(az, &key[0])) {
                add_tensor_scaled(&mut lhs, &(x * &y), &Tensor::from([(vec![k2[0].clone(), k2[1].clone(), key[1].clone()], field.one())]));
            }
            for (k2, y) in pair.h.coproduct_mono(&key[1]) {
                let pi = d.alg.nf(&kill_odd(&mono_poly(&pair.h.alg, &k2[0])));
                let t = t3.pure(&[mono_poly(az, &key[0]), pi, mono_poly(&pair.h.alg, &k2[1])]);
                add_tensor_scaled(&mut rhs, &(x * &y), &t);
            }
        }
        if bad_cot.is_none() && t3.nf(&lhs) != t3.nf(&rhs) {
            bad_cot = Some(format!("ω({name}) is not in the cotensor product"));
        }

        let mut lhs = Tensor::new();
        for (key, x) in img {
            for (k2, y) in pair.h.coproduct_mono(&key[1]) {
                add_tensor_scaled(&mut lhs, &(x * &y), &Tensor::from([(vec![key[0].clone(), k2[0].clone(), k2[1].clone()], field.one())]));
            }
        }
        let mut rhs = Tensor::new();
        for (key, x) in g.delta_var(k) {
            let q = pair.q_j(&g.alg.nf_mono(&key[1]));
            for (k2, y) in omega_direct(&g.alg.nf_mono(&key[0])) {
                let t = t3h.pure(&[mono_poly(az, &k2[0]), mono_poly(&pair.h.alg, &k2[1]), q.clone()]);
                add_tensor_scaled(&mut rhs, &(x * &y), &t);
            }
        }
        if bad_col.is_none() && t3h.nf(&lhs) != t3h.nf(&rhs) {
            bad_col = Some(format!("ω is not 𝒟-colinear on {name}"));
        }

        let mut low = Poly::new();
        for (key, x) in img {
            if key[0].o == 0 {
                add_scaled(&mut low, &(x * &pair.h.counit_mono(&key[1])), &mono_poly(az, &key[0]));
            }
        }
        let expect = if k < g.alg.n_even() { az.nf(&extend_poly(az, &chart.iota(&c.alg, &g.to_assoc(&g.alg.var(k))))) } else { Poly::new() };
        if bad_deg.is_none() && az.nf(&low) != expect {
            bad_deg = Some(format!("degree-0 part of ω({name}) is {}, not ι", az.fmt(&low)));
        }
    }
    record("cotensor", bad_cot, &mut failure);
    record("colinear", bad_col, &mut failure);
    record("degree_zero", bad_deg, &mut failure);

    let codomain_layers = coinvariants(&azc, bound).layer_dims();
    let bad = (codomain_layers != expected).then(|| format!("codomain coinvariants {codomain_layers:?} ≠ {expected:?}"));
    record("coinvariants", bad, &mut failure);

    let ok = failure.is_none();
    let images = (0..g.alg.n_vars())
        .filter(|k| g.alg.user_vars().contains(k))
        .map(|k| (g.alg.var_name(k).to_string(), ta.fmt(&images[k])))
        .collect();
    Ok(OmegaReport { ok, graded, checks, failure, images, codomain_layers })
}
