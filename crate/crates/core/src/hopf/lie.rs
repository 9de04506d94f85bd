//! Lie(𝒢) = (𝒞⁺/(𝒞⁺)²)* with the odd-odd bracket read off the quadratic part
//! of Δ, and the Harish-Chandra pair axioms.
//!
//! Convention: u_i is dual to the W basis vector w_i and x* to the even
//! cotangent class x̄. With B_x(i,j) the coefficient of w_i⊗w_j in Δ(x)
//! (both legs projected to W), the Koszul pairing gives
//! ⟨[u_i,u_j], x̄⟩ = −(B_x(i,j) + B_x(j,i)).

use crate::superlinalg::Scalar;
use crate::superpoly::Poly;
use crate::Error;

use super::Hopf;

#[derive(Clone, Debug)]
pub struct LieData {
    pub even_names: Vec<String>,
    pub odd_names: Vec<String>,
    /// bracket[i][j][k] = ⟨[u_i,u_j], x̄_k⟩.
    pub bracket: Vec<Vec<Vec<Scalar>>>,
    pub symmetric: bool,
    pub equivariant: bool,
    /// v ◁ [v,v] = 0 for every basis vector v.
    pub jacobi: bool,
}

impl LieData {
    pub fn compute(h: &Hopf) -> LieData {
        let cot = h.cotangent();
        let field = h.field();
        let n0 = cot.dim_even();
        let n1 = cot.dim_w();
        // B[k][i][j]
        let mut b = vec![vec![vec![field.zero(); n1]; n1]; n0];
        for (k, var) in cot.even_basis.iter().enumerate() {
            for (key, c) in h.coproduct(&h.alg.var(*var)) {
                if key[0].odd_degree() != 1 || key[1].odd_degree() != 1 {
                    continue;
                }
                let l = cot.pi_w_mono(&key[0]);
                let r = cot.pi_w_mono(&key[1]);
                for i in 0..n1 {
                    for j in 0..n1 {
                        b[k][i][j] = &b[k][i][j] + &(&c * &(&l[i] * &r[j]));
                    }
                }
            }
        }
        let bracket: Vec<Vec<Vec<Scalar>>> = (0..n1)
            .map(|i| (0..n1).map(|j| (0..n0).map(|k| -(&b[k][i][j] + &b[k][j][i])).collect()).collect())
            .collect();
        let symmetric = (0..n1).all(|i| (0..n1).all(|j| bracket[i][j] == bracket[j][i]));

        // Equivariance, dual form: x̄ ↦ Σ S_x(i,j) w_i⊗w_j commutes with the
        // co-adjoint coactions on T*_ε(G) and W⊗W.
        let cc = h.assoc();
        let mut equivariant = true;
        'outer: for k in 0..n0 {
            for a in 0..n1 {
                for bb in 0..n1 {
                    let mut lhs = Poly::new();
                    for i in 0..n1 {
                        for j in 0..n1 {
                            let s = &bracket[i][j][k];
                            if s.is_zero() {
                                continue;
                            }
                            let prod = cc.alg.mul(&cot.coaction[a][i], &cot.coaction[bb][j]);
                            crate::superpoly::add_scaled(&mut lhs, s, &prod);
                        }
                    }
                    let mut rhs = Poly::new();
                    for l in 0..n0 {
                        let s = &bracket[a][bb][l];
                        crate::superpoly::add_scaled(&mut rhs, s, &cot.even_coaction[l][k]);
                    }
                    if cc.alg.nf(&lhs) != cc.alg.nf(&rhs) {
                        equivariant = false;
                        break 'outer;
                    }
                }
            }
        }

        // v ◁ X for X = [v,v]: the derivative of the coaction coefficients
        // c_vj along X must vanish.
        let mut jacobi = true;
        for v in 0..n1 {
            let x = &bracket[v][v];
            for j in 0..n1 {
                let d = cot.pi_even(&cot.coaction[v][j]);
                let mut s = field.zero();
                for l in 0..n0 {
                    s = &s + &(&x[l] * &d[l]);
                }
                if !s.is_zero() {
                    jacobi = false;
                }
            }
        }
        LieData {
            even_names: cot.even_names(h),
            odd_names: cot.w_names(h),
            bracket,
            symmetric,
            equivariant,
            jacobi,
        }
    }

    /// Fails with the first violated Harish-Chandra axiom.
    pub fn check(&self) -> Result<(), Error> {
        if !self.symmetric {
            return Err(Error::Axiom("odd bracket is not symmetric".into()));
        }
        if !self.equivariant {
            return Err(Error::Axiom("odd bracket is not equivariant".into()));
        }
        if !self.jacobi {
            return Err(Error::Axiom("v ◁ [v,v] ≠ 0 for a basis vector v".into()));
        }
        Ok(())
    }

    /// (dim Lie₀ | dim Lie₁).
    pub fn sdim(&self) -> (usize, usize) {
        (self.even_names.len(), self.odd_names.len())
    }

    /// First pair (i, j), i ≤ j, with [u_i, u_j] ≠ 0.
    pub fn nonzero_bracket(&self) -> Option<(usize, usize)> {
        let n = self.odd_names.len();
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|(i, j)| self.bracket[*i][*j].iter().any(|c| !c.is_zero()))
    }

    /// Human-readable table entries "[u,v] = Σ c x*".
    pub fn table(&self) -> Vec<String> {
        let n = self.odd_names.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let terms = crate::superpoly::fmt_terms(
                    self.bracket[i][j]
                        .iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (format!("{}*", self.even_names[k]), c.clone())),
                );
                out.push(format!("[{}*,{}*] = {}", self.odd_names[i], self.odd_names[j], terms));
            }
        }
        out
    }
}

/// Graded in the sense [Lie₁, Lie₁] = 0; otherwise a witness pair of names.
pub fn is_graded(h: &Hopf) -> (bool, Option<(String, String)>) {
    let lie = LieData::compute(h);
    match lie.nonzero_bracket() {
        None => (true, None),
        Some((i, j)) => (false, Some((lie.odd_names[i].clone(), lie.odd_names[j].clone()))),
    }
}
