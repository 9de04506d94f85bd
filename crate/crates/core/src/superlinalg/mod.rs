//! ℤ/2-graded finite-dimensional linear algebra with Koszul signs.

pub mod echelon;
pub mod scalar;

use std::collections::HashSet;

pub use echelon::{axpy, kernel, rref, scale, solve, Echelon, SparseVec};
pub use scalar::{Field, Scalar};

use crate::Error;

/// Parity of a homogeneous element: 0 even, 1 odd.
pub type Parity = u8;

/// Koszul sign (−1)^{ab}.
pub fn koszul(a: Parity, b: Parity) -> bool {
    a & b & 1 == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperVectorSpace {
    pub labels: Vec<String>,
    pub parities: Vec<Parity>,
}

impl SuperVectorSpace {
    pub fn new(basis: Vec<(String, Parity)>) -> Result<SuperVectorSpace, Error> {
        let mut seen = HashSet::new();
        for (l, p) in &basis {
            if !seen.insert(l.clone()) {
                return Err(Error::Invalid(format!("duplicate basis label '{l}'")));
            }
            if *p > 1 {
                return Err(Error::Invalid(format!("parity of '{l}' must be 0 or 1")));
            }
        }
        let (labels, parities) = basis.into_iter().unzip();
        Ok(SuperVectorSpace { labels, parities })
    }

    /// Space with `even` even and `odd` odd basis vectors labelled e_i / o_i.
    pub fn standard(prefix: &str, even: usize, odd: usize) -> SuperVectorSpace {
        let mut b = Vec::new();
        for i in 0..even {
            b.push((format!("{prefix}e{i}"), 0));
        }
        for i in 0..odd {
            b.push((format!("{prefix}o{i}"), 1));
        }
        SuperVectorSpace::new(b).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// (even | odd) dimension.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| **p == 1).count();
        (self.dim() - odd, odd)
    }
}

/// A matrix between super vector spaces; `matrix[i][j]` is the coefficient
/// of codomain basis vector `i` in the image of domain basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperLinearMap {
    pub field: Field,
    pub domain: SuperVectorSpace,
    pub codomain: SuperVectorSpace,
    pub matrix: Vec<Vec<Scalar>>,
    pub parity: Parity,
}

impl SuperLinearMap {
    pub fn new(
        field: Field,
        domain: SuperVectorSpace,
        codomain: SuperVectorSpace,
        matrix: Vec<Vec<Scalar>>,
        parity: Parity,
    ) -> Result<SuperLinearMap, Error> {
        if matrix.len() != codomain.dim() || matrix.iter().any(|r| r.len() != domain.dim()) {
            return Err(Error::Invalid("matrix shape does not match dimensions".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() && codomain.parities[i] != (domain.parities[j] ^ parity) {
                    return Err(Error::Invalid(format!(
                        "map of parity {parity} sends {} into {}",
                        domain.labels[j], codomain.labels[i]
                    )));
                }
            }
        }
        Ok(SuperLinearMap { field, domain, codomain, matrix, parity })
    }

    pub fn zero(field: Field, domain: SuperVectorSpace, codomain: SuperVectorSpace) -> SuperLinearMap {
        let matrix = vec![vec![field.zero(); domain.dim()]; codomain.dim()];
        SuperLinearMap { field, domain, codomain, matrix, parity: 0 }
    }

    pub fn identity(field: Field, v: SuperVectorSpace) -> SuperLinearMap {
        let n = v.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        SuperLinearMap { field, domain: v.clone(), codomain: v, matrix, parity: 0 }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &SuperLinearMap) -> Result<SuperLinearMap, Error> {
        if other.codomain != self.domain {
            return Err(Error::Invalid("composition of incompatible maps".into()));
        }
        let n = self.codomain.dim();
        let m = other.domain.dim();
        let k = self.domain.dim();
        let mut matrix = vec![vec![self.field.zero(); m]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let mut s = self.field.zero();
                for l in 0..k {
                    s = &s + &(&self.matrix[i][l] * &other.matrix[l][j]);
                }
                *e = s;
            }
        }
        SuperLinearMap::new(
            self.field,
            other.domain.clone(),
            self.codomain.clone(),
            matrix,
            (self.parity + other.parity) % 2,
        )
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.codomain.dim())
            .filter(|i| !self.matrix[*i][j].is_zero())
            .map(|i| (i, self.matrix[i][j].clone()))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == SuperLinearMap::identity(self.field, self.domain.clone())
    }
}

/// V⊗W with basis v_i⊗w_j (row-major) and the braiding c_{V,W}: V⊗W → W⊗V.
pub fn tensor_with_koszul(field: Field, v: &SuperVectorSpace, w: &SuperVectorSpace) -> (SuperVectorSpace, SuperLinearMap) {
    let vw = tensor_space(v, w);
    let wv = tensor_space(w, v);
    let mut matrix = vec![vec![field.zero(); vw.dim()]; wv.dim()];
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            let src = i * w.dim() + j;
            let dst = j * v.dim() + i;
            matrix[dst][src] = if koszul(v.parities[i], w.parities[j]) { field.int(-1) } else { field.one() };
        }
    }
    let c = SuperLinearMap::new(field, vw.clone(), wv, matrix, 0).expect("braiding is even");
    (vw, c)
}

pub fn tensor_space(v: &SuperVectorSpace, w: &SuperVectorSpace) -> SuperVectorSpace {
    let mut b = Vec::new();
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            b.push((format!("{}⊗{}", v.labels[i], w.labels[j]), (v.parities[i] + w.parities[j]) % 2));
        }
    }
    SuperVectorSpace { labels: b.iter().map(|x| x.0.clone()).collect(), parities: b.iter().map(|x| x.1).collect() }
}

/// Kernel, image and cokernel bases of a homogeneous map. Kernel vectors are
/// in domain coordinates, image vectors in codomain coordinates, cokernel
/// vectors are codomain basis vectors completing the image.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Vec<SparseVec>,
    pub image: Vec<SparseVec>,
    pub cokernel: Vec<SparseVec>,
}

pub fn kernel_image_coker(f: &SuperLinearMap) -> KernelImage {
    let field = f.field;
    let cols: Vec<SparseVec> = (0..f.domain.dim()).map(|j| f.column(j)).collect();
    let ker = kernel(field, &cols);
    let image = rref(field, &cols);
    let pivots: HashSet<usize> = image.iter().map(|v| *v.keys().next().unwrap()).collect();
    let cokernel = (0..f.codomain.dim())
        .filter(|i| !pivots.contains(i))
        .map(|i| SparseVec::from([(i, field.one())]))
        .collect();
    // split mixed-parity vectors: a homogeneous map has homogeneous kernel/image bases
    let ker = split_by_parity(field, &ker, &f.domain);
    let image = split_by_parity(field, &image, &f.codomain);
    KernelImage { kernel: ker, image, cokernel }
}

fn split_by_parity(field: Field, vs: &[SparseVec], space: &SuperVectorSpace) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for par in 0..2u8 {
        let part: Vec<SparseVec> = vs
            .iter()
            .map(|v| v.iter().filter(|(k, _)| space.parities[**k] == par).map(|(k, c)| (*k, c.clone())).collect())
            .filter(|v: &SparseVec| !v.is_empty())
            .collect();
        out.extend(rref(field, &part));
    }
    out
}

/// Coefficients expressing `target` in the span of `generators`.
pub fn solve_membership(field: Field, target: &[Scalar], generators: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let to_sparse = |v: &[Scalar]| -> SparseVec {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    };
    let gens: Vec<SparseVec> = generators.iter().map(|g| to_sparse(g)).collect();
    let c = solve(field, &to_sparse(target), &gens)?;
    Some((0..generators.len()).map(|j| c.get(&j).cloned().unwrap_or_else(|| field.zero())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braiding_signs() {
        let f = Field::Rational;
        let even = SuperVectorSpace::standard("v", 1, 0);
        let (_, c) = tensor_with_koszul(f, &even, &even);
        assert!(c.is_identity());
        let odd = SuperVectorSpace::standard("y", 0, 1);
        let (_, c) = tensor_with_koszul(f, &odd, &odd);
        assert_eq!(c.matrix[0][0], f.int(-1));
    }

    #[test]
    fn braiding_is_involution() {
        let f = Field::Rational;
        let v = SuperVectorSpace::standard("v", 2, 2);
        let w = SuperVectorSpace::standard("w", 1, 3);
        let (_, c) = tensor_with_koszul(f, &v, &w);
        let (_, c2) = tensor_with_koszul(f, &w, &v);
        assert!(c2.compose(&c).unwrap().is_identity());
    }

    #[test]
    fn kernel_image_of_zero_and_identity() {
        let f = Field::Rational;
        let v = SuperVectorSpace::standard("v", 2, 1);
        let k = kernel_image_coker(&SuperLinearMap::zero(f, v.clone(), v.clone()));
        assert_eq!((k.kernel.len(), k.image.len()), (3, 0));
        let w = SuperVectorSpace::standard("w", 3, 2);
        let k = kernel_image_coker(&SuperLinearMap::identity(f, w));
        assert_eq!((k.kernel.len(), k.image.len(), k.cokernel.len()), (0, 5, 0));
    }

    #[test]
    fn parity_mismatch_rejected() {
        let f = Field::Rational;
        let v = SuperVectorSpace::standard("v", 1, 1);
        let m = vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]];
        assert!(SuperLinearMap::new(f, v.clone(), v.clone(), m.clone(), 0).is_err());
        assert!(SuperLinearMap::new(f, v.clone(), v, m, 1).is_ok());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(SuperVectorSpace::new(vec![("a".into(), 0), ("a".into(), 1)]).is_err());
    }

    #[test]
    fn membership_zero_target() {
        let f = Field::Rational;
        let g = vec![vec![f.one(), f.zero()]];
        let c = solve_membership(f, &[f.zero(), f.zero()], &g).unwrap();
        assert!(c.iter().all(|x| x.is_zero()));
    }
}
