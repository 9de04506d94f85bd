//! Sparse incremental row echelon form with provenance tracking.
//!
//! Every stored row remembers which combination of inserted vectors produced
//! it, so the same structure yields kernels, membership certificates and
//! image bases.

use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let prod = a * v;
        match y.get_mut(k) {
            Some(e) => {
                let s = &*e + &prod;
                if s.is_zero() {
                    y.remove(k);
                } else {
                    *e = s;
                }
            }
            None => {
                if !prod.is_zero() {
                    y.insert(*k, prod);
                }
            }
        }
    }
}

pub fn scale(x: &SparseVec, a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, a * v)).collect()
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Echelon basis of the span of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; returns the residual and the combination `c` of inserted
    /// vectors (by tag) with `v = residual + Σ c[t]·input_t`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut acc = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = r
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((p, c)) = next else { break };
            let row = &self.rows[self.pivots[&p]];
            axpy(&mut r, &-&c, &row.vec);
            axpy(&mut acc, &c, &row.combo);
            cursor = p + 1;
        }
        (r, acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v` under `tag`. Returns a linear relation among inserted
    /// vectors when `v` is already in the span.
    pub fn insert(&mut self, v: &SparseVec, tag: usize) -> Option<SparseVec> {
        let (r, acc) = self.reduce(v);
        let mut combo = scale(&acc, &self.field.int(-1));
        axpy(&mut combo, &self.field.one(), &SparseVec::from([(tag, self.field.one())]));
        if r.is_empty() {
            return Some(combo);
        }
        let (&p, lead) = r.iter().next().unwrap();
        let inv = lead.inv();
        let vec = scale(&r, &inv);
        let combo = scale(&combo, &inv);
        self.pivots.insert(p, self.rows.len());
        self.rows.push(Row { vec, combo });
        None
    }

    /// Stored rows (not fully reduced).
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|r| &r.vec)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivots.keys().copied().collect();
        v.sort();
        v
    }
}

/// Fully reduced row echelon basis of the span of `vs`: pivots ascending,
/// each pivot entry 1 and zero in every other basis vector.
pub fn rref(field: Field, vs: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(field);
    for (i, v) in vs.iter().enumerate() {
        e.insert(v, i);
    }
    let mut rows: Vec<SparseVec> = e.rows.iter().map(|r| r.vec.clone()).collect();
    rows.sort_by_key(|r| *r.keys().next().unwrap());
    for i in (0..rows.len()).rev() {
        let p = *rows[i].keys().next().unwrap();
        for j in 0..i {
            if let Some(c) = rows[j].get(&p).cloned() {
                let ri = rows[i].clone();
                axpy(&mut rows[j], &-&c, &ri);
            }
        }
    }
    rows
}

/// Kernel of the map whose `j`-th column is `cols[j]`, as an RREF basis over
/// column indices.
pub fn kernel(field: Field, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(field);
    let mut rels = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = e.insert(c, j) {
            rels.push(rel);
        }
    }
    rref(field, &rels)
}

/// Coefficients `c` with `Σ c_j gens_j = target`, if the target is in the span.
pub fn solve(field: Field, target: &SparseVec, gens: &[SparseVec]) -> Option<SparseVec> {
    let mut e = Echelon::new(field);
    for (j, g) in gens.iter().enumerate() {
        e.insert(g, j);
    }
    let (r, acc) = e.reduce(target);
    r.is_empty().then_some(acc)
}

/// Basis of the intersection of span(`a`) with the coordinate subspace
/// spanned by indices satisfying `keep`.
pub fn restrict_to_coordinates(field: Field, a: &[SparseVec], keep: impl Fn(usize) -> bool) -> Vec<SparseVec> {
    // project onto the complementary coordinates; kernel combinations land inside
    let proj: Vec<SparseVec> = a
        .iter()
        .map(|v| v.iter().filter(|(k, _)| !keep(**k)).map(|(k, c)| (*k, c.clone())).collect())
        .collect();
    let ker = kernel(field, &proj);
    let out: Vec<SparseVec> = ker
        .iter()
        .map(|comb| {
            let mut s = SparseVec::new();
            for (j, c) in comb {
                axpy(&mut s, c, &a[*j]);
            }
            s
        })
        .collect();
    rref(field, &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(f: Field, entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().filter(|(_, c)| *c != 0).map(|(k, c)| (*k, f.int(*c))).collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let f = Field::Rational;
        // columns of [[1,2],[2,4]]
        let cols = vec![sv(f, &[(0, 1), (1, 2)]), sv(f, &[(0, 2), (1, 4)])];
        let k = kernel(f, &cols);
        assert_eq!(k.len(), 1);
        // normalized to (1, -1/2), proportional to (2, -1)
        let ratio = &k[0][&0] / &k[0][&1];
        assert_eq!(ratio, f.int(-2));
    }

    #[test]
    fn membership_certificate() {
        let f = Field::Rational;
        let g = vec![sv(f, &[(0, 1)]), sv(f, &[(1, 1)]), sv(f, &[(0, 1), (1, 1)])];
        let c = solve(f, &sv(f, &[(0, 3), (1, 5)]), &g).unwrap();
        let mut back = SparseVec::new();
        for (j, cj) in &c {
            axpy(&mut back, cj, &g[*j]);
        }
        assert_eq!(back, sv(f, &[(0, 3), (1, 5)]));
        assert!(solve(f, &sv(f, &[(2, 1)]), &g).is_none());
    }

    #[test]
    fn rref_is_canonical() {
        let f = Field::Rational;
        let a = rref(f, &[sv(f, &[(0, 1), (1, 1)]), sv(f, &[(0, 1), (1, -1)])]);
        assert_eq!(a, vec![sv(f, &[(0, 1)]), sv(f, &[(1, 1)])]);
    }

    #[test]
    fn coordinate_restriction() {
        let f = Field::Rational;
        let a = vec![sv(f, &[(0, 1), (2, 1)]), sv(f, &[(1, 1), (2, 1)])];
        let r = restrict_to_coordinates(f, &a, |k| k < 2);
        assert_eq!(r, vec![sv(f, &[(0, 1), (1, -1)])]);
    }
}
