//! Finite super-comodules, subcoalgebra hulls, cotensor products and
//! colinear retractions.

pub mod algebra;

use std::collections::BTreeMap;

use crate::hopf::psi::Side;
use crate::hopf::Hopf;
use crate::superlinalg::{kernel, solve, Echelon, Parity, Scalar, SparseVec, SuperVectorSpace};
use crate::superpoly::{add_scaled, poly_parity, Coords, Mono, Poly};
use crate::Error;

pub use algebra::{coinvariants, eta_extension, ComoduleAlgebra, Coinvariants, Eta};

/// A finite-dimensional super-comodule over a Hopf (super)algebra.
///
/// Right: ρ(m_i) = Σ_j m_j ⊗ coef[j][i]. Left: λ(m_i) = Σ_j coef[j][i] ⊗ m_j.
#[derive(Clone, Debug)]
pub struct SuperComodule {
    pub space: SuperVectorSpace,
    pub side: Side,
    pub coef: Vec<Vec<Poly>>,
}

impl SuperComodule {
    pub fn new(space: SuperVectorSpace, side: Side, coef: Vec<Vec<Poly>>) -> Result<SuperComodule, Error> {
        let n = space.dim();
        if coef.len() != n || coef.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("coaction matrix must be {n}×{n}")));
        }
        Ok(SuperComodule { space, side, coef })
    }

    /// The one-dimensional even comodule with trivial coaction.
    pub fn unit(d: &Hopf, side: Side) -> SuperComodule {
        let space = SuperVectorSpace::new(vec![("1".into(), 0)]).unwrap();
        SuperComodule { space, side, coef: vec![vec![d.alg.one()]] }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Converts sides with the antipode: c ↦ 𝒮(c). For commutative D the
    /// conversion is an involution.
    pub fn twist(&self, d: &Hopf) -> SuperComodule {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        let coef = self.coef.iter().map(|r| r.iter().map(|c| d.antipode(c)).collect()).collect();
        SuperComodule { space: self.space.clone(), side, coef }
    }

    /// Coassociativity and counit on the basis; returns the first failure.
    pub fn check(&self, d: &Hopf) -> Result<(), Error> {
        let n = self.dim();
        let ta = d.tensor2();
        let field = d.field();
        for i in 0..n {
            for k in 0..n {
                let c = &self.coef[k][i];
                let want = if i == k { field.one() } else { field.zero() };
                if d.counit(c) != want {
                    return Err(Error::Axiom(format!("counit law fails at ({k},{i})")));
                }
                if let Some(p) = poly_parity(c) {
                    if p != (self.space.parities[i] ^ self.space.parities[k]) {
                        return Err(Error::Axiom(format!("coefficient ({k},{i}) has the wrong parity")));
                    }
                }
                let lhs = d.coproduct(c);
                let mut rhs = crate::superpoly::Tensor::new();
                for j in 0..n {
                    let (a, b) = match self.side {
                        Side::Right => (&self.coef[k][j], &self.coef[j][i]),
                        Side::Left => (&self.coef[j][i], &self.coef[k][j]),
                    };
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    let t = ta.pure(&[a.clone(), b.clone()]);
                    crate::superpoly::tensor::add_tensor_scaled(&mut rhs, &field.one(), &t);
                }
                if lhs != ta.nf(&rhs) {
                    return Err(Error::Axiom(format!("coassociativity fails at ({k},{i})")));
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional subcoalgebra with Δ and ε as matrices.
#[derive(Clone, Debug)]
pub struct FiniteSubcoalgebra {
    pub basis: Vec<Poly>,
    /// delta[j][(k, l)]: Δe_j = Σ delta[j][(k,l)] e_k ⊗ e_l.
    pub delta: Vec<BTreeMap<(usize, usize), Scalar>>,
    pub eps: Vec<Scalar>,
    coords: Coords<Mono>,
    ech: Echelon,
}

impl FiniteSubcoalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates in the basis, or `None` outside the span.
    pub fn express(&self, p: &Poly) -> Option<SparseVec> {
        let v = self.coords.vec_fixed(p)?;
        let (r, combo) = self.ech.reduce(&v);
        r.is_empty().then_some(combo)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.express(p).is_some()
    }
}

/// The smallest Δ-closed span containing `coefficients`.
pub fn finite_subcoalgebra(d: &Hopf, coefficients: &[Poly]) -> Result<FiniteSubcoalgebra, Error> {
    let basis = d.hull(coefficients, true, true)?;
    let field = d.field();
    let mut coords: Coords<Mono> = Coords::new();
    let mut ech = Echelon::new(field);
    for (i, b) in basis.iter().enumerate() {
        let v = coords.vec(b);
        ech.insert(&v, i);
    }
    let mut sub = FiniteSubcoalgebra { basis, delta: Vec::new(), eps: Vec::new(), coords, ech };
    for j in 0..sub.dim() {
        let mut row = BTreeMap::new();
        let mut right: BTreeMap<usize, Poly> = BTreeMap::new();
        for (nu, left) in Hopf::slices(&d.coproduct(&sub.basis[j]), 1) {
            let a = sub.express(&left).ok_or_else(|| Error::Invalid("hull is not a subcoalgebra".into()))?;
            for (k, c) in a {
                add_scaled(right.entry(k).or_default(), &c, &Poly::from([(nu.clone(), field.one())]));
            }
        }
        for (k, r) in right {
            let b = sub.express(&r).ok_or_else(|| Error::Invalid("hull is not a subcoalgebra".into()))?;
            for (l, c) in b {
                row.insert((k, l), c);
            }
        }
        sub.delta.push(row);
        sub.eps.push(d.counit(&sub.basis[j]));
    }
    Ok(sub)
}

/// M □_D L with its inclusion into M ⊗ L (index i·dim L + a for m_i ⊗ ℓ_a).
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub space: SuperVectorSpace,
    pub inclusion: Vec<SparseVec>,
}

/// Coefficient vector of a D-element in the hull's basis.
fn hull_coords(sub: &FiniteSubcoalgebra, p: &Poly) -> Result<SparseVec, Error> {
    sub.express(p).ok_or_else(|| Error::Invalid("coefficient outside the subcoalgebra hull".into()))
}

/// Kernel of ρ_M ⊗ id − id ⊗ λ_L on M ⊗ L.
pub fn cotensor_product(d: &Hopf, m: &SuperComodule, l: &SuperComodule) -> Result<Cotensor, Error> {
    if m.side != Side::Right || l.side != Side::Left {
        return Err(Error::Precondition("cotensor product needs a right and a left comodule".into()));
    }
    let seeds: Vec<Poly> = m.coef.iter().chain(l.coef.iter()).flatten().filter(|p| !p.is_empty()).cloned().collect();
    let sub = finite_subcoalgebra(d, &seeds)?;
    let (nm, nl) = (m.dim(), l.dim());
    let h = sub.dim();
    // equation index: ((j·h + μ)·nl + b) for m_j ⊗ e_μ ⊗ ℓ_b
    let eq = |j: usize, mu: usize, b: usize| (j * h + mu) * nl + b;
    let mut cols = Vec::new();
    for i in 0..nm {
        for a in 0..nl {
            let mut col = SparseVec::new();
            for j in 0..nm {
                for (mu, c) in hull_coords(&sub, &m.coef[j][i])? {
                    crate::superlinalg::axpy(&mut col, &c, &SparseVec::from([(eq(j, mu, a), d.field().one())]));
                }
            }
            for b in 0..nl {
                for (mu, c) in hull_coords(&sub, &l.coef[b][a])? {
                    crate::superlinalg::axpy(&mut col, &-&c, &SparseVec::from([(eq(i, mu, b), d.field().one())]));
                }
            }
            cols.push(col);
        }
    }
    let ker = kernel(d.field(), &cols);
    let mut basis = Vec::new();
    for (n, v) in ker.iter().enumerate() {
        let (&k, _) = v.iter().next().unwrap();
        let p: Parity = m.space.parities[k / nl] ^ l.space.parities[k % nl];
        basis.push((format!("k{n}"), p));
    }
    Ok(Cotensor { space: SuperVectorSpace::new(basis)?, inclusion: ker })
}

/// Coinvariants {m : ρ(m) = m ⊗ 1} of a finite right comodule.
pub fn finite_coinvariants(d: &Hopf, m: &SuperComodule) -> Vec<SparseVec> {
    let n = m.dim();
    let mut coords: Coords<(usize, Mono)> = Coords::new();
    let one = d.alg.one();
    let cols: Vec<SparseVec> = (0..n)
        .map(|i| {
            let mut col = SparseVec::new();
            for j in 0..n {
                let c = if i == j { d.alg.sub(&m.coef[j][i], &one) } else { m.coef[j][i].clone() };
                for (mu, x) in &c {
                    let k = coords.id(&(j, mu.clone()));
                    crate::superlinalg::axpy(&mut col, x, &SparseVec::from([(k, d.field().one())]));
                }
            }
            col
        })
        .collect();
    kernel(d.field(), &cols)
}

/// A D-colinear retraction s: V → U of an inclusion U ⊆ V (columns of
/// `incl` are the images of U's basis in V). `None` means no colinear
/// retraction exists.
pub fn colinear_retraction(
    d: &Hopf,
    u: &SuperComodule,
    v: &SuperComodule,
    incl: &[SparseVec],
) -> Result<Option<Vec<Vec<Scalar>>>, Error> {
    let field = d.field();
    let (nu, nv) = (u.dim(), v.dim());
    if u.side != Side::Right || v.side != Side::Right || incl.len() != nu {
        return Err(Error::Precondition("colinear retraction needs right comodules and a U-indexed inclusion".into()));
    }
    // inclusion must be colinear
    for (b, col) in incl.iter().enumerate() {
        for i in 0..nv {
            let mut lhs = Poly::new();
            for (j, c) in col {
                add_scaled(&mut lhs, c, &v.coef[i][*j]);
            }
            let mut rhs = Poly::new();
            for a in 0..nu {
                if let Some(c) = incl[a].get(&i) {
                    add_scaled(&mut rhs, c, &u.coef[a][b]);
                }
            }
            if d.alg.nf(&lhs) != d.alg.nf(&rhs) {
                return Err(Error::Precondition("inclusion is not colinear".into()));
            }
        }
    }
    // unknown s[a][i] has index a·nv + i
    let var = |a: usize, i: usize| a * nv + i;
    let mut coords: Coords<(u8, usize, usize, Mono)> = Coords::new();
    let mut cols: Vec<SparseVec> = vec![SparseVec::new(); nu * nv];
    let mut target = SparseVec::new();
    let unit = Mono::one(d.alg.n_even());
    for a in 0..nu {
        for b in 0..nu {
            let k = coords.id(&(0, a, b, unit.clone()));
            if a == b {
                target.insert(k, field.one());
            }
            for (i, c) in &incl[b] {
                crate::superlinalg::axpy(&mut cols[var(a, *i)], c, &SparseVec::from([(k, field.one())]));
            }
        }
    }
    for i in 0..nv {
        for b in 0..nu {
            for a in 0..nu {
                for (mu, c) in &u.coef[b][a] {
                    let k = coords.id(&(1, b, i, mu.clone()));
                    crate::superlinalg::axpy(&mut cols[var(a, i)], c, &SparseVec::from([(k, field.one())]));
                }
            }
            for j in 0..nv {
                for (mu, c) in &v.coef[j][i] {
                    let k = coords.id(&(1, b, i, mu.clone()));
                    crate::superlinalg::axpy(&mut cols[var(b, j)], &-c, &SparseVec::from([(k, field.one())]));
                }
            }
        }
    }
    // s is even: parity-changing entries vanish
    for a in 0..nu {
        for i in 0..nv {
            if u.space.parities[a] != v.space.parities[i] {
                let k = coords.id(&(2, a, i, unit.clone()));
                cols[var(a, i)].insert(k, field.one());
            }
        }
    }
    Ok(solve(field, &target, &cols).map(|x| {
        (0..nu).map(|a| (0..nv).map(|i| x.get(&var(a, i)).cloned().unwrap_or_else(|| field.zero())).collect()).collect()
    }))
}

#[cfg(test)]
mod tests;
