//! The cotangent space 𝒞⁺/(𝒞⁺)², its odd part W = 𝒞₁/𝒞₀⁺𝒞₁ and the
//! co-adjoint C-coactions.

use crate::superlinalg::{rref, Echelon, Field, Scalar, SparseVec};
use crate::superpoly::{add_scaled, Mono, Poly};

use super::Hopf;

#[derive(Clone, Debug)]
pub struct Cotangent {
    pub field: Field,
    pub n_even: usize,
    pub n_vars: usize,
    /// Differentials of the relations at ε, in variable coordinates.
    pub relations: Vec<SparseVec>,
    /// Variables whose classes form a basis of T*_ε(G).
    pub even_basis: Vec<usize>,
    /// Variables whose classes form a basis of W (the chosen lifts).
    pub odd_basis: Vec<usize>,
    /// ρ(w_j) = Σ_i w_i ⊗ coaction[i][j], coefficients in C.
    pub coaction: Vec<Vec<Poly>>,
    /// λ(w_j) = Σ_i left_coaction[i][j] ⊗ w_i.
    pub left_coaction: Vec<Vec<Poly>>,
    /// The co-adjoint coaction on T*_ε(G), same layout as `coaction`.
    pub even_coaction: Vec<Vec<Poly>>,
    /// Runs in permuted columns: inverse partners first, so they are the
    /// ones eliminated and the user generators stay in the bases.
    echelon: Echelon,
    perm: Vec<usize>,
    eps: Vec<Scalar>,
}

impl Cotangent {
    pub fn compute(h: &Hopf) -> Cotangent {
        let field = h.field();
        let n_even = h.alg.n_even();
        let n_vars = h.alg.n_vars();
        let eps: Vec<Scalar> = (0..n_vars).map(|k| h.eps_var(k).clone()).collect();
        let mut rels = h.alg.inverse_relations();
        rels.extend(h.alg.relations.iter().cloned());
        let diffs: Vec<SparseVec> = rels.iter().map(|r| differential(&eps, n_even, r)).filter(|v| !v.is_empty()).collect();
        let relations = rref(field, &diffs);
        let mut order: Vec<usize> = (0..n_vars).collect();
        order.sort_by_key(|k| (*k >= n_even, *k < n_even && !h.alg.even[*k].is_inverse, *k));
        let mut perm = vec![0; n_vars];
        for (new, old) in order.iter().enumerate() {
            perm[*old] = new;
        }
        let mut echelon = Echelon::new(field);
        for (i, r) in relations.iter().enumerate() {
            echelon.insert(&permute(r, &perm), i);
        }
        let pivots: Vec<usize> = echelon.pivot_columns().into_iter().map(|p| order[p]).collect();
        let even_basis = (0..n_even).filter(|k| !pivots.contains(k)).collect();
        let odd_basis = (n_even..n_vars).filter(|k| !pivots.contains(k)).collect();
        let mut c = Cotangent {
            field,
            n_even,
            n_vars,
            relations,
            even_basis,
            odd_basis,
            coaction: Vec::new(),
            left_coaction: Vec::new(),
            even_coaction: Vec::new(),
            echelon,
            perm,
            eps,
        };
        let cc = h.assoc();
        let dim_w = c.odd_basis.len();
        let mut coaction = vec![vec![Poly::new(); dim_w]; dim_w];
        for j in 0..dim_w {
            let col = c.coadjoint(h, &h.alg.var(c.odd_basis[j]));
            for i in 0..dim_w {
                coaction[i][j] = col[i].clone();
            }
        }
        let left = coaction.iter().map(|row| row.iter().map(|p| cc.antipode(p)).map(|p| cc.alg.nf(&p)).collect()).collect();
        let dim0 = c.even_basis.len();
        let mut even_coaction = vec![vec![Poly::new(); dim0]; dim0];
        for j in 0..dim0 {
            let col = c.coadjoint(h, &h.alg.var(c.even_basis[j]));
            for i in 0..dim0 {
                even_coaction[i][j] = col[i].clone();
            }
        }
        c.coaction = coaction;
        c.left_coaction = left;
        c.even_coaction = even_coaction;
        c
    }

    pub fn dim_w(&self) -> usize {
        self.odd_basis.len()
    }

    pub fn dim_even(&self) -> usize {
        self.even_basis.len()
    }

    /// Class of a vector in variable coordinates, reduced by the relations.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let r = self.echelon.reduce(&permute(v, &self.perm)).0;
        let mut back = vec![0; self.perm.len()];
        for (old, new) in self.perm.iter().enumerate() {
            back[*new] = old;
        }
        permute(&r, &back)
    }

    /// dp at ε in variable coordinates.
    pub fn differential(&self, p: &Poly) -> SparseVec {
        differential(&self.eps, self.n_even, p)
    }

    /// Coordinates of the class of p in W (odd part of the cotangent class).
    pub fn pi_w(&self, p: &Poly) -> Vec<Scalar> {
        let d: SparseVec = self.differential(p).into_iter().filter(|(k, _)| *k >= self.n_even).collect();
        let r = self.reduce(&d);
        self.odd_basis.iter().map(|k| r.get(k).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    /// Coordinates of the class of p in T*_ε(G) (even part).
    pub fn pi_even(&self, p: &Poly) -> Vec<Scalar> {
        let d: SparseVec = self.differential(p).into_iter().filter(|(k, _)| *k < self.n_even).collect();
        let r = self.reduce(&d);
        self.even_basis.iter().map(|k| r.get(k).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    pub fn pi_w_mono(&self, m: &Mono) -> Vec<Scalar> {
        self.pi_w(&Poly::from([(m.clone(), self.field.one())]))
    }

    /// Co-adjoint coaction c ↦ c₍₂₎ ⊗ q(𝒮(c₍₁₎)c₍₃₎) on a lift, read in W
    /// (odd lifts) or in T*_ε(G) (even lifts). Returns one C-coefficient per
    /// basis vector.
    pub fn coadjoint(&self, h: &Hopf, p: &Poly) -> Vec<Poly> {
        let cc = h.assoc();
        let odd = p.keys().next().map(|m| m.parity() == 1).unwrap_or(false);
        let dim = if odd { self.dim_w() } else { self.dim_even() };
        let mut out = vec![Poly::new(); dim];
        for (k, c) in h.coproduct2(p) {
            if k[0].o != 0 || k[2].o != 0 {
                continue;
            }
            let mid = Poly::from([(k[1].clone(), self.field.one())]);
            let coords = if odd { self.pi_w(&mid) } else { self.pi_even(&mid) };
            if coords.iter().all(|x| x.is_zero()) {
                continue;
            }
            let s1 = cc.antipode(&cc.alg.nf_mono(&k[0]));
            let coef = cc.alg.mul(&s1, &cc.alg.nf_mono(&k[2]));
            for (i, x) in coords.iter().enumerate() {
                add_scaled(&mut out[i], &(&c * x), &coef);
            }
        }
        out
    }

    /// Names of the W basis (the lifts).
    pub fn w_names(&self, h: &Hopf) -> Vec<String> {
        self.odd_basis.iter().map(|k| h.alg.var_name(*k).to_string()).collect()
    }

    pub fn even_names(&self, h: &Hopf) -> Vec<String> {
        self.even_basis.iter().map(|k| h.alg.var_name(*k).to_string()).collect()
    }
}

fn permute(v: &SparseVec, perm: &[usize]) -> SparseVec {
    v.iter().map(|(k, c)| (perm[*k], c.clone())).collect()
}

/// Linear part at ε: even monomials contribute their derivatives, monomials
/// with exactly one odd factor y contribute ε(even part)·dy.
pub fn differential(eps: &[Scalar], n_even: usize, p: &Poly) -> SparseVec {
    let field = match p.values().next() {
        Some(c) => c.field(),
        None => return SparseVec::new(),
    };
    let eval = |e: &[u32]| -> Scalar {
        let mut s = field.one();
        for (i, k) in e.iter().enumerate() {
            if *k > 0 {
                s = &s * &eps[i].pow(*k);
            }
        }
        s
    };
    let mut out = SparseVec::new();
    let mut add = |k: usize, c: Scalar| {
        let v = out.get(&k).cloned().unwrap_or_else(|| field.zero());
        let s = &v + &c;
        if s.is_zero() {
            out.remove(&k);
        } else {
            out.insert(k, s);
        }
    };
    for (m, c) in p {
        match m.odd_degree() {
            0 => {
                for i in 0..m.e.len() {
                    if m.e[i] == 0 {
                        continue;
                    }
                    let mut e = m.e.clone();
                    e[i] -= 1;
                    add(i, &(c * &field.int(m.e[i] as i64)) * &eval(&e));
                }
            }
            1 => {
                let j = m.o.trailing_zeros() as usize;
                add(n_even + j, c * &eval(&m.e));
            }
            _ => {}
        }
    }
    out
}
