//! The associated graded superalgebra gr 𝒜 = ⊕ Iⁿ/Iⁿ⁺¹ for I = 𝒜₁𝒜.
//!
//! Layers are computed on the weight window F_b: Iⁿ ∩ F_b is spanned by the
//! normal forms of free monomials of weight ≤ b with at least n odd factors.

use std::collections::HashMap;

use super::mono::{add_term, Mono, Poly};
use super::{extend_poly, Presentation};
use crate::superlinalg::{kernel, Echelon, SparseVec};
use crate::Error;

#[derive(Clone, Debug)]
pub struct GradedPresentation {
    /// A = 𝒜/(𝒜₁).
    pub base: Presentation,
    /// Presentation of gr 𝒜 on A's generators and the classes ȳ.
    pub algebra: Presentation,
    /// Names of the odd module generators of I/I².
    pub odd_generators: Vec<String>,
    /// dim (gr 𝒜)(n) ∩ F_bound for n = 0..=#odd.
    pub component_dims: Vec<usize>,
    /// Kernel generators of ∧_A(I/I²) → gr 𝒜 found within the window.
    pub kernel: Vec<Poly>,
    pub bound: u32,
}

/// Index of the normal monomials of weight ≤ bound.
pub fn window_index(p: &Presentation, bound: u32) -> (Vec<Mono>, HashMap<Mono, usize>) {
    let basis = p.truncated_basis(bound);
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    (basis, index)
}

/// Echelon forms of Iⁿ ∩ F_bound for n = 0..=#odd+1.
pub fn odd_power_layers(p: &Presentation, bound: u32) -> Vec<Echelon> {
    let (_, index) = window_index(p, bound);
    let free = p.free_monomials(bound);
    let top = p.n_odd() + 1;
    let mut layers = Vec::new();
    for n in 0..=top {
        let mut ech = Echelon::new(p.field);
        for m in free.iter().filter(|m| m.odd_degree() as usize >= n) {
            let nf = p.nf_mono(m);
            if let Some(v) = p.coords(&nf, &index) {
                ech.insert(&v, 0);
            }
        }
        layers.push(ech);
    }
    layers
}

pub fn gr_superalgebra(p: &Presentation, bound: u32) -> Result<GradedPresentation, Error> {
    let base = p.even_quotient()?;
    let (_, index) = window_index(p, bound);
    let layers = odd_power_layers(p, bound);
    let n_odd = p.n_odd();
    let component_dims: Vec<usize> = (0..=n_odd).map(|n| layers[n].rank() - layers[n + 1].rank()).collect();

    let odd_generators: Vec<String> = p.odd.iter().map(|v| v.name.clone()).collect();
    let mut gr = Presentation::with_vars(p.field, base.even.clone(), p.odd.clone(), base.relations.clone())?;

    // ∧_A(I/I²) in degree n: a·ȳ_S with a normal in A and |S| = n.
    let a_basis = base.truncated_basis(bound);
    let mut kernel_gens = Vec::new();
    for n in 0..=n_odd {
        let mut domain: Vec<Poly> = Vec::new();
        let mut images: Vec<SparseVec> = Vec::new();
        for a in &a_basis {
            for s in 0..(1u64 << n_odd) {
                if s.count_ones() as usize != n {
                    continue;
                }
                let m = p.mono(a.e.clone(), s);
                if m.w > bound {
                    continue;
                }
                let img = p.nf_mono(&m);
                let Some(v) = p.coords(&img, &index) else { continue };
                let (res, _) = layers[n + 1].reduce(&v);
                let mut d = Poly::new();
                add_term(&mut d, gr.mono(a.e.clone(), s), p.field.one());
                domain.push(d);
                images.push(res);
            }
        }
        for kv in kernel(p.field, &images) {
            let mut r = Poly::new();
            for (j, c) in &kv {
                for (m, _) in &domain[*j] {
                    add_term(&mut r, m.clone(), c.clone());
                }
            }
            let r = gr.nf(&r);
            if !r.is_empty() {
                kernel_gens.push(r.clone());
                gr = gr.quotient(&[r])?;
            }
        }
    }
    Ok(GradedPresentation { base, algebra: gr, odd_generators, component_dims, kernel: kernel_gens, bound })
}

impl GradedPresentation {
    /// Dimension of ∧-degree n of the presented gr algebra within the window.
    pub fn presented_dims(&self) -> Vec<usize> {
        let basis = self.algebra.truncated_basis(self.bound);
        (0..=self.odd_generators.len()).map(|n| basis.iter().filter(|m| m.odd_degree() as usize == n).count()).collect()
    }

    /// Embeds an element of A into the gr presentation.
    pub fn from_base(&self, a: &Poly) -> Poly {
        self.algebra.nf(&extend_poly(&self.algebra, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::Field;
    use crate::superpoly::EvenSpec;

    #[test]
    fn purely_even_is_concentrated_in_degree_zero() {
        let p = Presentation::free(Field::Rational, &[EvenSpec::new("x", false)], &[]).unwrap();
        let g = gr_superalgebra(&p, 4).unwrap();
        assert_eq!(g.component_dims, vec![5]);
        assert!(g.kernel.is_empty());
    }

    #[test]
    fn free_odd_gives_free_exterior() {
        let p = Presentation::free(Field::Rational, &[EvenSpec::new("x", false)], &[("y".into(), 1)]).unwrap();
        let g = gr_superalgebra(&p, 4).unwrap();
        assert_eq!(g.component_dims, vec![5, 4]);
        assert!(g.kernel.is_empty());
        assert_eq!(g.presented_dims(), g.component_dims);
    }

    #[test]
    fn odd_product_relation() {
        // x − y1·y2: A = 𝕜, gr ≅ ∧(ȳ1, ȳ2)
        let f = Field::Rational;
        let p = Presentation::free(f, &[EvenSpec::new("x", false)], &[("y1".into(), 1), ("y2".into(), 1)]).unwrap();
        let r = p.sub(&p.even_var(0), &p.mul(&p.odd_var(0), &p.odd_var(1)));
        let q = p.with_relations(vec![r]).unwrap();
        let g = gr_superalgebra(&q, 4).unwrap();
        assert_eq!(g.base.truncated_basis(4).len(), 1);
        assert_eq!(g.component_dims, vec![1, 2, 1]);
        assert_eq!(g.presented_dims(), g.component_dims);
    }
}
