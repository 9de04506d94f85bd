//! Buchberger completion in 𝕜[X] ⊗ ∧(Y).
//!
//! Besides the usual S-pairs, every basis element whose leading monomial
//! contains an odd variable y is paired with y itself: y·LM vanishes, so y·g
//! may expose a new leading term.

use std::collections::BTreeSet;

use super::mono::{add_scaled, Mono, Poly};
use super::Presentation;

/// Maximum number of pair reductions before giving up on completion.
pub const EFFORT_CAP: usize = 4000;
/// Maximum basis size before giving up on completion.
pub const SIZE_CAP: usize = 300;

fn lead(p: &Poly) -> &Mono {
    p.keys().next_back().expect("nonzero polynomial")
}

fn monic(p: Poly) -> Poly {
    let inv = p.values().next_back().unwrap().inv();
    p.into_iter().map(|(m, c)| (m, &c * &inv)).collect()
}

/// Multiplies a polynomial by a monomial on the left.
fn mono_times(q: &Mono, p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        if let Some((neg, prod)) = q.mul(m) {
            let c = if neg { -c } else { c.clone() };
            super::add_term(&mut out, prod, c);
        }
    }
    out
}

/// Full reduction of `p` by a list of monic polynomials.
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    if basis.is_empty() {
        return p.clone();
    }
    let mut p = p.clone();
    let mut out = Poly::new();
    while let Some((m, c)) = p.pop_last() {
        match basis.iter().find(|g| lead(g).divides(&m)) {
            Some(g) => {
                let (neg, q) = lead(g).quotient(&m);
                // q·g = ±(m + tail); cancel c·m
                let coeff = if neg { c.clone() } else { -&c };
                let mut tail = g.clone();
                tail.pop_last();
                let prod = mono_times(&q, &tail);
                add_scaled(&mut p, &coeff, &prod);
            }
            None => {
                out.insert(m, c);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    // (weight of lcm, i, j)
    Pair(u32, usize, usize),
    // (weight, i, odd index)
    Odd(u32, usize, usize),
}

impl Task {
    fn key(&self) -> (u32, usize, usize, u8) {
        match *self {
            Task::Pair(w, i, j) => (w, j, i, 0),
            Task::Odd(w, i, k) => (w, i, k, 1),
        }
    }
}

/// Returns a reduced Gröbner basis and whether completion finished.
pub fn groebner(pres: &Presentation, input: Vec<Poly>) -> (Vec<Poly>, bool) {
    let ew = pres.even_weights();
    let ow = pres.odd_weights();
    let mut g: Vec<Poly> = Vec::new();
    let mut queue: BTreeSet<((u32, usize, usize, u8), Task)> = BTreeSet::new();
    let mut complete = true;

    let push = |g: &mut Vec<Poly>, queue: &mut BTreeSet<((u32, usize, usize, u8), Task)>, p: Poly| {
        let idx = g.len();
        let lm = lead(&p).clone();
        for (i, h) in g.iter().enumerate() {
            let l = lead(h).lcm(&lm, &ew, &ow);
            let t = Task::Pair(l.w, i, idx);
            queue.insert((t.key(), t));
        }
        for k in 0..64 {
            if lm.o >> k & 1 == 1 {
                let t = Task::Odd(lm.w + ow[k], idx, k);
                queue.insert((t.key(), t));
            }
        }
        g.push(p);
    };

    for p in input {
        let r = reduce(&p, &g);
        if !r.is_empty() {
            push(&mut g, &mut queue, monic(r));
        }
    }

    let mut steps = 0;
    while let Some((_, task)) = queue.pop_first() {
        steps += 1;
        if steps > EFFORT_CAP || g.len() > SIZE_CAP {
            complete = false;
            break;
        }
        let s = match task {
            Task::Pair(_, i, j) => {
                let (a, b) = (lead(&g[i]).clone(), lead(&g[j]).clone());
                if a.o == 0 && b.o == 0 && a.e.iter().zip(&b.e).all(|(x, y)| *x == 0 || *y == 0) {
                    continue;
                }
                let l = a.lcm(&b, &ew, &ow);
                let (na, qa) = a.quotient(&l);
                let (nb, qb) = b.quotient(&l);
                let mut s = mono_times(&qa, &g[i]);
                if na {
                    s = s.into_iter().map(|(m, c)| (m, -c)).collect();
                }
                let mut t = mono_times(&qb, &g[j]);
                if nb {
                    t = t.into_iter().map(|(m, c)| (m, -c)).collect();
                }
                super::mono::sub(&s, &t)
            }
            Task::Odd(_, i, k) => {
                let y = Mono { w: ow[k], e: vec![0; ew.len()], o: 1 << k };
                mono_times(&y, &g[i])
            }
        };
        let r = reduce(&s, &g);
        if !r.is_empty() {
            push(&mut g, &mut queue, monic(r));
        }
    }
    (interreduce(g), complete)
}

fn interreduce(mut g: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    g.sort_by(|a, b| lead(a).cmp(lead(b)));
    let mut kept: Vec<Poly> = Vec::new();
    for p in g {
        if !kept.iter().any(|h| lead(h).divides(lead(&p))) {
            kept.push(p);
        }
    }
    let mut out = Vec::new();
    for i in 0..kept.len() {
        let mut p = kept[i].clone();
        let (lm, lc) = p.pop_last().unwrap();
        let others: Vec<Poly> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let mut tail = reduce(&p, &others);
        tail.insert(lm, lc);
        out.push(tail);
    }
    out.sort_by(|a, b| lead(a).cmp(lead(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::super::{EvenSpec, Presentation};
    use crate::superlinalg::Field;

    #[test]
    fn cyclic_relation() {
        let f = Field::Rational;
        let p = Presentation::free(f, &[EvenSpec::new("t", false)], &[]).unwrap();
        let t2 = p.pow(&p.even_var(0), 2);
        let q = p.with_relations(vec![p.sub(&t2, &p.one())]).unwrap();
        assert!(q.is_confluent());
        assert_eq!(q.nf(&p.pow(&p.even_var(0), 5)), p.even_var(0));
        assert_eq!(q.truncated_basis(6).len(), 2);
    }

    #[test]
    fn odd_relation_exposes_new_lead() {
        // x − y1·y2: y1·(x − y1y2) = y1·x forces x·y1 = 0 in the quotient
        let f = Field::Rational;
        let p = Presentation::free(f, &[EvenSpec::new("x", false)], &[("y1".into(), 1), ("y2".into(), 1)]).unwrap();
        let r = p.sub(&p.even_var(0), &p.mul(&p.odd_var(0), &p.odd_var(1)));
        let q = p.with_relations(vec![r]).unwrap();
        let xy1 = q.mul(&p.even_var(0), &p.odd_var(0));
        assert!(q.nf(&xy1).is_empty());
        // the quotient is ∧(y1, y2): dimension 4
        assert_eq!(q.truncated_basis(6).len(), 4);
    }
}
