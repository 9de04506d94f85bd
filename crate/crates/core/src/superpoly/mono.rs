//! Super-commutative monomials x^a·y_S and polynomials over them.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::superlinalg::{Parity, Scalar};

/// A monomial: exponents of even variables and a bitmask of odd variables.
/// The odd factors are understood in increasing index order.
///
/// `Ord` is the monomial order: total weight, then lexicographic on the even
/// exponents, then lexicographic on the odd mask (lower index is larger).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub w: u32,
    pub e: Vec<u32>,
    pub o: u64,
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.w
            .cmp(&other.w)
            .then_with(|| self.e.cmp(&other.e))
            .then_with(|| self.o.reverse_bits().cmp(&other.o.reverse_bits()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn one(n_even: usize) -> Mono {
        Mono { w: 0, e: vec![0; n_even], o: 0 }
    }

    pub fn parity(&self) -> Parity {
        (self.o.count_ones() % 2) as Parity
    }

    pub fn is_one(&self) -> bool {
        self.o == 0 && self.e.iter().all(|x| *x == 0)
    }

    pub fn odd_degree(&self) -> u32 {
        self.o.count_ones()
    }

    /// Product with Koszul sign; `None` when an odd variable repeats.
    /// Returns (negated, product).
    pub fn mul(&self, other: &Mono) -> Option<(bool, Mono)> {
        if self.o & other.o != 0 {
            return None;
        }
        let neg = odd_merge_sign(self.o, other.o);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        Some((neg, Mono { w: self.w + other.w, e, o: self.o | other.o }))
    }

    pub fn divides(&self, m: &Mono) -> bool {
        self.o & !m.o == 0 && self.e.iter().zip(&m.e).all(|(a, b)| a <= b)
    }

    /// `q` with `q·self = ±m`; returns (negated, q). Requires `self.divides(m)`.
    pub fn quotient(&self, m: &Mono) -> (bool, Mono) {
        let e = m.e.iter().zip(&self.e).map(|(a, b)| a - b).collect();
        let q = Mono { w: m.w - self.w, e, o: m.o & !self.o };
        let (neg, _) = q.mul(self).expect("disjoint odd parts");
        (neg, q)
    }

    /// Least common multiple of even parts and union of odd parts.
    pub fn lcm(&self, other: &Mono, weights_even: &[u32], weights_odd: &[u32]) -> Mono {
        let e: Vec<u32> = self.e.iter().zip(&other.e).map(|(a, b)| *a.max(b)).collect();
        let o = self.o | other.o;
        let w = weight_of(&e, o, weights_even, weights_odd);
        Mono { w, e, o }
    }
}

pub fn weight_of(e: &[u32], o: u64, weights_even: &[u32], weights_odd: &[u32]) -> u32 {
    let mut w: u32 = e.iter().zip(weights_even).map(|(a, b)| a * b).sum();
    for (i, wt) in weights_odd.iter().enumerate() {
        if o >> i & 1 == 1 {
            w += wt;
        }
    }
    w
}

/// Sign of reordering y_A·y_B into increasing order (true = negative).
pub fn odd_merge_sign(a: u64, b: u64) -> bool {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        bb &= bb - 1;
    }
    swaps % 2 == 1
}

pub type Poly = BTreeMap<Mono, Scalar>;

pub fn add_term(p: &mut Poly, m: Mono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&m) {
        Some(e) => {
            let s = &*e + &c;
            if s.is_zero() {
                p.remove(&m);
            } else {
                *e = s;
            }
        }
        None => {
            p.insert(m, c);
        }
    }
}

pub fn add_scaled(p: &mut Poly, c: &Scalar, q: &Poly) {
    if c.is_zero() {
        return;
    }
    for (m, v) in q {
        add_term(p, m.clone(), c * v);
    }
}

pub fn scaled(q: &Poly, c: &Scalar) -> Poly {
    let mut p = Poly::new();
    add_scaled(&mut p, c, q);
    p
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut p = a.clone();
    if let Some((_, c)) = b.iter().next() {
        add_scaled(&mut p, &-&c.field().one(), b);
    }
    p
}

pub fn sum(a: &Poly, b: &Poly) -> Poly {
    let mut p = a.clone();
    for (m, c) in b {
        add_term(&mut p, m.clone(), c.clone());
    }
    p
}

/// Parity of a homogeneous polynomial; `None` if mixed. Zero counts as even.
pub fn poly_parity(p: &Poly) -> Option<Parity> {
    let mut par = None;
    for m in p.keys() {
        match par {
            None => par = Some(m.parity()),
            Some(q) if q != m.parity() => return None,
            _ => {}
        }
    }
    Some(par.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32], o: u64) -> Mono {
        Mono { w: e.iter().sum::<u32>() + o.count_ones(), e: e.to_vec(), o }
    }

    #[test]
    fn odd_square_and_anticommutation() {
        let y1 = m(&[], 0b01);
        let y2 = m(&[], 0b10);
        assert!(y1.mul(&y1).is_none());
        assert_eq!(y1.mul(&y2).unwrap().0, false);
        assert_eq!(y2.mul(&y1).unwrap().0, true);
    }

    #[test]
    fn quotient_sign_round_trip() {
        let big = m(&[2], 0b111);
        let d = m(&[1], 0b010);
        let (neg, q) = d.quotient(&big);
        let (neg2, back) = q.mul(&d).unwrap();
        assert_eq!(back, big);
        assert_eq!(neg, neg2);
    }

    #[test]
    fn order_is_weight_graded() {
        assert!(m(&[0, 2], 0) > m(&[1, 0], 0));
        assert!(m(&[1, 0], 0) > m(&[0, 1], 0));
        assert!(m(&[], 0b01) > m(&[], 0b10));
    }
}
