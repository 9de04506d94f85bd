//! Tensor products of presented superalgebras with the Koszul product rule
//! (a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd.

use std::collections::BTreeMap;

use super::mono::{Mono, Poly};
use super::{fmt_terms, Presentation};
use crate::superlinalg::{Parity, Scalar};

pub type Tensor = BTreeMap<Vec<Mono>, Scalar>;

pub fn add_tensor_term(t: &mut Tensor, k: Vec<Mono>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&k) {
        Some(e) => {
            let s = &*e + &c;
            if s.is_zero() {
                t.remove(&k);
            } else {
                *e = s;
            }
        }
        None => {
            t.insert(k, c);
        }
    }
}

pub fn add_tensor_scaled(t: &mut Tensor, c: &Scalar, u: &Tensor) {
    if c.is_zero() {
        return;
    }
    for (k, v) in u {
        add_tensor_term(t, k.clone(), c * v);
    }
}

pub fn tensor_sub(a: &Tensor, b: &Tensor) -> Tensor {
    let mut t = a.clone();
    for (k, v) in b {
        add_tensor_term(&mut t, k.clone(), -v);
    }
    t
}

/// Tensor product algebra of the listed factors.
#[derive(Clone, Copy)]
pub struct TensorAlg<'a, const N: usize> {
    pub factors: [&'a Presentation; N],
}

impl<'a, const N: usize> TensorAlg<'a, N> {
    pub fn new(factors: [&'a Presentation; N]) -> Self {
        TensorAlg { factors }
    }

    pub fn one(&self) -> Tensor {
        let key: Vec<Mono> = self.factors.iter().map(|p| p.one_mono()).collect();
        Tensor::from([(key, self.factors[0].field.one())])
    }

    /// The elementary tensor p_0⊗…⊗p_{N−1} (written left to right, no sign).
    pub fn pure(&self, parts: &[Poly; N]) -> Tensor {
        let mut acc: Vec<(Vec<Mono>, Scalar)> = vec![(Vec::new(), self.factors[0].field.one())];
        for p in parts {
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (m, d) in p {
                    let mut k2 = k.clone();
                    k2.push(m.clone());
                    next.push((k2, c * d));
                }
            }
            acc = next;
        }
        let mut t = Tensor::new();
        for (k, c) in acc {
            add_tensor_term(&mut t, k, c);
        }
        t
    }

    /// 1⊗…⊗p⊗…⊗1 with p in slot i.
    pub fn embed(&self, i: usize, p: &Poly) -> Tensor {
        let parts: [Poly; N] = std::array::from_fn(|j| if j == i { p.clone() } else { self.factors[j].one() });
        self.pure(&parts)
    }

    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let mut neg = false;
                for i in 0..N {
                    for j in 0..i {
                        if ka[i].parity() & kb[j].parity() == 1 {
                            neg = !neg;
                        }
                    }
                }
                let mut parts: Vec<Poly> = Vec::with_capacity(N);
                let mut zero = false;
                for i in 0..N {
                    match ka[i].mul(&kb[i]) {
                        None => {
                            zero = true;
                            break;
                        }
                        Some((n, m)) => {
                            neg ^= n;
                            parts.push(self.factors[i].nf_mono(&m));
                        }
                    }
                }
                if zero {
                    continue;
                }
                let c = if neg { -(ca * cb) } else { ca * cb };
                let parts: [Poly; N] = parts.try_into().unwrap();
                add_tensor_scaled(&mut out, &c, &self.pure(&parts));
            }
        }
        out
    }

    pub fn pow(&self, a: &Tensor, e: u32) -> Tensor {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Reduces every factor to normal form.
    pub fn nf(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t {
            let parts: [Poly; N] = std::array::from_fn(|i| self.factors[i].nf(&Poly::from([(k[i].clone(), self.factors[i].field.one())])));
            add_tensor_scaled(&mut out, c, &self.pure(&parts));
        }
        out
    }

    /// Inverse of a unit c·E + N where E is a product of invertible
    /// generators in every slot and N is odd-nilpotent (every term contains
    /// an odd factor). The Neumann series terminates.
    pub fn invert(&self, x: &Tensor) -> Option<Tensor> {
        let body: Vec<(&Vec<Mono>, &Scalar)> = x.iter().filter(|(k, _)| k.iter().all(|m| m.o == 0)).collect();
        if body.len() != 1 {
            return None;
        }
        let (k, c) = body[0];
        let inv_key: Vec<Mono> = k
            .iter()
            .enumerate()
            .map(|(i, m)| self.factors[i].invert_mono(m))
            .collect::<Option<_>>()?;
        let parts: [Poly; N] = std::array::from_fn(|i| self.factors[i].nf_mono(&inv_key[i]));
        let mut e_inv = self.pure(&parts);
        e_inv = e_inv.into_iter().map(|(k, v)| (k, &v * &c.inv())).collect();
        // x = E(1 + E⁻¹N): x⁻¹ = Σ (−E⁻¹N)^k E⁻¹
        let mut n = x.clone();
        n.remove(k);
        let minus = self.factors[0].field.int(-1);
        let mut step = self.mul(&e_inv, &n);
        step = step.into_iter().map(|(k, v)| (k, &v * &minus)).collect();
        let mut acc = e_inv.clone();
        let mut power = e_inv.clone();
        let limit = self.factors.iter().map(|f| f.n_odd()).sum::<usize>() + 1;
        for _ in 0..limit {
            power = self.mul(&step, &power);
            if power.is_empty() {
                break;
            }
            add_tensor_scaled(&mut acc, &self.factors[0].field.one(), &power);
        }
        if !power.is_empty() {
            return None;
        }
        Some(acc)
    }

    pub fn fmt(&self, t: &Tensor) -> String {
        fmt_terms(t.iter().rev().map(|(k, c)| {
            let s: Vec<String> = k.iter().enumerate().map(|(i, m)| self.factors[i].fmt_mono(m)).collect();
            (s.join("(x)"), c.clone())
        }))
    }
}

/// Total parity of a tensor key.
pub fn key_parity(k: &[Mono]) -> Parity {
    k.iter().map(|m| m.parity()).sum::<u8>() % 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::Field;
    use crate::superpoly::Presentation;

    #[test]
    fn koszul_product_sign() {
        let p = Presentation::free(Field::Rational, &[], &[("y".into(), 1), ("z".into(), 1)]).unwrap();
        let ta = TensorAlg::new([&p, &p]);
        let one = p.one();
        let y = p.odd_var(0);
        let z = p.odd_var(1);
        // (1⊗y)(z⊗1) = −z⊗y
        let a = ta.pure(&[one.clone(), y.clone()]);
        let b = ta.pure(&[z.clone(), one.clone()]);
        let prod = ta.mul(&a, &b);
        let expected = ta.pure(&[p.neg(&z), y.clone()]);
        assert_eq!(prod, expected);
        // (y⊗1)(1⊗z) = y⊗z
        let prod2 = ta.mul(&ta.pure(&[y.clone(), one.clone()]), &ta.pure(&[one, z.clone()]));
        assert_eq!(prod2, ta.pure(&[y, z]));
    }
}
