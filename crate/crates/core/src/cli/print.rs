//! Canonical printer for presentation files; `parse(print(f)) == f`.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::parse::{Clause, GenDecl, PresentationFile, RawExpr, Slot};

fn slot(s: &Slot) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn print_expr(e: &RawExpr) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (slots, c)) in e.terms.iter().enumerate() {
        let neg = c.is_negative();
        let a: BigRational = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = slots.iter().map(slot).collect::<Vec<_>>().join("(x)");
        let constant = slots.iter().all(|s| s.is_empty());
        if a.is_one() {
            out.push_str(&body);
        } else if constant && slots.len() == 1 {
            out.push_str(&a.to_string());
        } else {
            let _ = write!(out, "{a}*{body}");
        }
    }
    out
}

fn gens(kw: &str, gs: &[GenDecl]) -> String {
    let items: Vec<String> = gs
        .iter()
        .map(|g| {
            let mut s = g.name.clone();
            if g.invertible {
                s.push_str(" inv");
            }
            if g.weight != 1 {
                let _ = write!(s, " weight {}", g.weight);
            }
            s
        })
        .collect();
    format!("  {kw} {};\n", items.join(", "))
}

fn clauses(kw: &str, cs: &[Clause]) -> String {
    let mut s = format!("  {kw} {{\n");
    for c in cs {
        let _ = writeln!(s, "    {} = {};", c.name, print_expr(&c.expr));
    }
    s.push_str("  }\n");
    s
}

pub fn print_presentation(f: &PresentationFile) -> String {
    let mut out = String::new();
    if let Some(field) = &f.field {
        let _ = writeln!(out, "field {field};");
    }
    if let Some(b) = f.bound {
        let _ = writeln!(out, "bound {b};");
    }
    for h in &f.hopfs {
        let _ = writeln!(out, "hopf {} {{", h.name);
        if !h.even.is_empty() {
            out.push_str(&gens("even", &h.even));
        }
        if !h.odd.is_empty() {
            out.push_str(&gens("odd", &h.odd));
        }
        if !h.relations.is_empty() {
            let rs: Vec<String> = h.relations.iter().map(|r| print_expr(&r.expr)).collect();
            let _ = writeln!(out, "  relations {};", rs.join(", "));
        }
        out.push_str(&clauses("coproduct", &h.coproduct));
        out.push_str(&clauses("counit", &h.counit));
        match &h.antipode {
            None => out.push_str("  antipode auto;\n"),
            Some(cs) => out.push_str(&clauses("antipode", cs)),
        }
        out.push_str("}\n");
    }
    for s in &f.subs {
        let _ = writeln!(out, "sub {} of {} {{", s.name, s.parent);
        if !s.kill.is_empty() {
            let ks: Vec<String> = s.kill.iter().map(|k| print_expr(&k.expr)).collect();
            let _ = writeln!(out, "  kill {};", ks.join(", "));
        }
        out.push_str("}\n");
    }
    out
}

/// A built Hopf superalgebra as a `hopf` block with an explicit antipode.
/// Relations are printed in their reduced (Gröbner) form.
pub fn print_hopf(h: &crate::hopf::Hopf) -> String {
    let alg = &h.alg;
    let decl = |name: &str, inv: bool, w: u32| {
        let mut s = name.to_string();
        if inv {
            s.push_str(" inv");
        }
        if w != 1 {
            let _ = write!(s, " weight {w}");
        }
        s
    };
    let even: Vec<String> =
        alg.even.iter().filter(|v| !v.is_inverse).map(|v| decl(&v.name, v.partner.is_some(), v.weight)).collect();
    let odd: Vec<String> = alg.odd.iter().map(|v| decl(&v.name, false, v.weight)).collect();
    let mut out = format!("hopf {} {{\n", h.name);
    if !even.is_empty() {
        let _ = writeln!(out, "  even {};", even.join(", "));
    }
    if !odd.is_empty() {
        let _ = writeln!(out, "  odd {};", odd.join(", "));
    }
    if !alg.relations.is_empty() {
        let rs: Vec<String> = alg.relations.iter().map(|r| alg.fmt(r)).collect();
        let _ = writeln!(out, "  relations {};", rs.join(", "));
    }
    let users = alg.user_vars();
    let mut section = |kw: &str, f: &dyn Fn(usize) -> String| {
        let _ = writeln!(out, "  {kw} {{");
        for &k in &users {
            let _ = writeln!(out, "    {} = {};", alg.var_name(k), f(k));
        }
        out.push_str("  }\n");
    };
    let ta = h.tensor2();
    section("coproduct", &|k| ta.fmt(h.delta_var(k)));
    section("counit", &|k| h.eps_var(k).to_string());
    section("antipode", &|k| alg.fmt(h.antipode_var(k)));
    out.push_str("}\n");
    out
}
