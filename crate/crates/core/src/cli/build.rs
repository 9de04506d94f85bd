//! Turns parsed blocks into algebra objects.

use std::collections::BTreeMap;

use crate::hopf::{Hopf, HopfInput};
use crate::superlinalg::Field;
use crate::superpoly::tensor::add_tensor_scaled;
use crate::superpoly::{add_scaled, EvenSpec, Poly, Presentation, Tensor, TensorAlg};
use crate::Error;

use super::parse::{HopfBlock, PresentationFile, RawExpr, Slot, SubBlock};

fn at(pos: (usize, usize), msg: impl Into<String>) -> Error {
    Error::Parse { line: pos.0, col: pos.1, msg: msg.into() }
}

fn slot_poly(alg: &Presentation, slot: &Slot) -> Result<Poly, Error> {
    let mut p = alg.one();
    for (name, e) in slot {
        p = alg.mul(&p, &alg.gen_pow(name, *e)?);
    }
    Ok(p)
}

fn check_names(alg: &Presentation, e: &RawExpr, pos: (usize, usize)) -> Result<(), Error> {
    for g in e.generators() {
        match alg.lookup(g) {
            Some(k) if alg.user_vars().contains(&k) => {}
            _ => return Err(at(pos, format!("unknown generator '{g}'"))),
        }
    }
    Ok(())
}

/// A one-slot expression as an element of `alg`.
pub fn raw_to_poly(alg: &Presentation, e: &RawExpr, pos: (usize, usize)) -> Result<Poly, Error> {
    check_names(alg, e, pos)?;
    if e.slots() > 1 {
        return Err(at(pos, "expected an element, found a tensor"));
    }
    let mut out = Poly::new();
    for (slots, c) in &e.terms {
        let c = alg.field.rational(c).map_err(|err| at(pos, err.to_string()))?;
        let p = slot_poly(alg, &slots[0]).map_err(|err| at(pos, err.to_string()))?;
        add_scaled(&mut out, &c, &p);
    }
    Ok(alg.nf(&out))
}

/// A two-slot expression as an element of `alg ⊗ alg`. Constants count as
/// multiples of 1⊗1.
pub fn raw_to_tensor(alg: &Presentation, e: &RawExpr, pos: (usize, usize)) -> Result<Tensor, Error> {
    check_names(alg, e, pos)?;
    if e.slots() == 1 && e.terms.keys().any(|k| !k[0].is_empty()) {
        return Err(at(pos, "expected a tensor a(x)b"));
    }
    if e.slots() > 2 {
        return Err(at(pos, "expected two tensor factors"));
    }
    let ta = TensorAlg::new([alg, alg]);
    let mut out = Tensor::new();
    for (slots, c) in &e.terms {
        let c = alg.field.rational(c).map_err(|err| at(pos, err.to_string()))?;
        let parts = if slots.len() == 2 {
            [slot_poly(alg, &slots[0]), slot_poly(alg, &slots[1])]
        } else {
            [Ok(alg.one()), Ok(alg.one())]
        };
        let [a, b] = parts;
        let t = ta.pure(&[a.map_err(|err| at(pos, err.to_string()))?, b.map_err(|err| at(pos, err.to_string()))?]);
        add_tensor_scaled(&mut out, &c, &t);
    }
    Ok(ta.nf(&out))
}

fn check_parity(alg: &Presentation, block: &HopfBlock, name: &str, pos: (usize, usize)) -> Result<usize, Error> {
    match alg.lookup(name) {
        Some(k) if alg.user_vars().contains(&k) => Ok(k),
        _ => Err(at(pos, format!("'{name}' is not a generator of {}", block.name))),
    }
}

/// The algebra of a hopf block, with its relations.
pub fn block_algebra(block: &HopfBlock, field: Field) -> Result<Presentation, Error> {
    let even: Vec<EvenSpec> = block
        .even
        .iter()
        .map(|g| EvenSpec { name: g.name.clone(), invertible: g.invertible, weight: g.weight })
        .collect();
    let odd: Vec<(String, u32)> = block.odd.iter().map(|g| (g.name.clone(), g.weight)).collect();
    let free = Presentation::free(field, &even, &odd).map_err(|e| at(block.pos, e.to_string()))?;
    let mut rels = Vec::new();
    for r in &block.relations {
        rels.push(raw_to_poly(&free, &r.expr, r.pos)?);
    }
    if rels.is_empty() {
        return Ok(free);
    }
    free.with_relations(rels).map_err(|e| at(block.pos, e.to_string()))
}

pub fn build_hopf(block: &HopfBlock, field: Field) -> Result<Hopf, Error> {
    let alg = block_algebra(block, field)?;
    let mut coproduct = BTreeMap::new();
    for c in &block.coproduct {
        let k = check_parity(&alg, block, &c.name, c.pos)?;
        let t = raw_to_tensor(&alg, &c.expr, c.pos)?;
        if t.keys().any(|key| crate::superpoly::tensor::key_parity(key) != alg.var_parity(k)) {
            return Err(at(c.pos, format!("coproduct of '{}' does not have the parity of '{}'", c.name, c.name)));
        }
        if coproduct.insert(c.name.clone(), t).is_some() {
            return Err(at(c.pos, format!("coproduct of '{}' given twice", c.name)));
        }
    }
    let mut counit = BTreeMap::new();
    for c in &block.counit {
        let k = check_parity(&alg, block, &c.name, c.pos)?;
        let p = raw_to_poly(&alg, &c.expr, c.pos)?;
        if p.keys().any(|m| *m != alg.one_mono()) {
            return Err(at(c.pos, format!("counit of '{}' must be a scalar", c.name)));
        }
        let s = p.get(&alg.one_mono()).cloned().unwrap_or_else(|| field.zero());
        if alg.var_parity(k) == 1 && !s.is_zero() {
            return Err(at(c.pos, format!("counit of odd generator '{}' must be 0", c.name)));
        }
        if counit.insert(c.name.clone(), s).is_some() {
            return Err(at(c.pos, format!("counit of '{}' given twice", c.name)));
        }
    }
    let antipode = match &block.antipode {
        None => None,
        Some(cl) => {
            let mut m = BTreeMap::new();
            for c in cl {
                check_parity(&alg, block, &c.name, c.pos)?;
                let p = raw_to_poly(&alg, &c.expr, c.pos)?;
                if m.insert(c.name.clone(), p).is_some() {
                    return Err(at(c.pos, format!("antipode of '{}' given twice", c.name)));
                }
            }
            Some(m)
        }
    };
    for k in alg.user_vars() {
        let name = alg.var_name(k);
        if !coproduct.contains_key(name) {
            return Err(at(block.pos, format!("missing coproduct of '{name}'")));
        }
        if !counit.contains_key(name) {
            return Err(at(block.pos, format!("missing counit of '{name}'")));
        }
    }
    Hopf::new(HopfInput { name: block.name.clone(), alg, coproduct, counit, antipode })
        .map_err(|e| match e {
            Error::Invalid(m) => at(block.pos, m),
            other => other,
        })
}

/// Generators of the ideal J of a sub block, as elements of the parent.
pub fn sub_ideal(parent: &Hopf, sub: &SubBlock) -> Result<Vec<Poly>, Error> {
    sub.kill.iter().map(|k| raw_to_poly(&parent.alg, &k.expr, k.pos)).collect()
}

/// Field named in the file, if any.
pub fn file_field(f: &PresentationFile) -> Result<Option<Field>, Error> {
    f.field.as_deref().map(Field::parse).transpose()
}
