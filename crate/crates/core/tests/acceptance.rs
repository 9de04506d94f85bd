//! Acceptance checks. Prints one `criterion N: PASS|FAIL` line per
//! criterion and exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::{One, Zero};

use superquot::cli::build::{build_hopf, raw_to_poly, raw_to_tensor};
use superquot::cli::corpus::{load_hopf, load_sub};
use superquot::cli::parse::{parse_expr, parse_presentation};
use superquot::cli::print::print_presentation;
use superquot::cli::run;
use superquot::comod::algebra::{check_sigma, eta_for_module};
use superquot::comod::ComoduleAlgebra;
use superquot::hopf::lie::is_graded;
use superquot::hopf::smash::gr_hopf_smash;
use superquot::hopf::Hopf;
use superquot::quotient::checks::braiding_involutive;
use superquot::quotient::maps::{check_kappa, check_theta, omega_graded, Chart, Kappa, Theta, ThetaRoute};
use superquot::quotient::{
    check_galois, compute_z, gr_quotient_check, local_consistency_check, prepare_pair, quotient_for_pair, trivial_ideal, SubPair, Verdict,
};
use superquot::superlinalg::{Field, Scalar};
use superquot::superpoly::{Mono, Poly, Presentation, Tensor};
use superquot::Error;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn pair(name: &str) -> SubPair {
    let (g, j) = load_sub(name, Field::Rational).unwrap();
    prepare_pair(&g, &j, name).unwrap()
}

fn el(alg: &Presentation, s: &str) -> Poly {
    raw_to_poly(alg, &parse_expr(s).unwrap(), (0, 0)).unwrap()
}

fn q(c: &Scalar) -> BigRational {
    match c {
        Scalar::Q(r) => r.clone(),
        Scalar::P(..) => panic!("oracle works over Q"),
    }
}

/// Rank of a list of sparse rows by plain Gaussian elimination.
fn rank(mut rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut r = 0;
    while let Some(pos) = rows.iter().position(|v| !v.is_empty()) {
        let pivot_row = rows.swap_remove(pos);
        let (&col, lead) = pivot_row.iter().next().unwrap();
        let lead = lead.clone();
        for row in rows.iter_mut() {
            if let Some(c) = row.get(&col).cloned() {
                let f = c / &lead;
                for (k, v) in &pivot_row {
                    let e = row.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// Coinvariants of 𝒞 under m ↦ (id⊗q_J)Δ(m), by brute force on monomials of
/// weight ≤ bound. Returns dims by weight (filtration quotients).
fn oracle_layers(g: &Hopf, h: &Hopf, bound: u32) -> Vec<usize> {
    let basis = g.alg.truncated_basis(bound);
    let one = h.alg.one();
    let mut keys: BTreeMap<(Mono, Mono), usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for m in &basis {
        let mut row: BTreeMap<(Mono, Mono), BigRational> = BTreeMap::new();
        let mp = Poly::from([(m.clone(), g.alg.field.one())]);
        for (k, c) in g.coproduct(&mp) {
            let left = g.alg.nf(&Poly::from([(k[0].clone(), g.alg.field.one())]));
            let right = h.alg.nf(&Poly::from([(k[1].clone(), g.alg.field.one())]));
            for (m1, c1) in &left {
                for (m2, c2) in &right {
                    *row.entry((m1.clone(), m2.clone())).or_insert_with(BigRational::zero) += q(&c) * q(c1) * q(c2);
                }
            }
        }
        let unit = one.keys().next().unwrap().clone();
        *row.entry((m.clone(), unit)).or_insert_with(BigRational::zero) -= BigRational::one();
        let sparse: BTreeMap<usize, BigRational> = row
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| {
                let len = keys.len();
                (*keys.entry(k).or_insert(len), v)
            })
            .collect();
        rows.push((m.w, sparse));
    }
    let mut kernel_upto = Vec::new();
    for w in 0..=bound {
        let sub: Vec<_> = rows.iter().filter(|(mw, _)| *mw <= w).map(|(_, r)| r.clone()).collect();
        kernel_upto.push(sub.len() - rank(sub));
    }
    (0..=bound as usize).map(|w| kernel_upto[w] - if w == 0 { 0 } else { kernel_upto[w - 1] }).collect()
}

fn c1_gmsplit() -> Check {
    let p = pair("Mu2e");
    let z = compute_z(&p).map_err(|e| e.to_string())?;
    ensure!(z.dim() == 1, "dim z = {}", z.dim());
    let qr = quotient_for_pair(&p, &z, 4).map_err(|e| e.to_string())?;
    let d = &qr.data;
    let az = &d.az.alg;
    let got: BTreeSet<String> = d.b_generators().iter().map(|x| az.fmt(x)).collect();
    let want: BTreeSet<String> = ["t^2", "t^-2"].iter().map(|s| az.fmt(&az.nf(&el(az, s)))).collect();
    ensure!(got == want, "B generators {got:?}");
    ensure!(d.b1_free() && d.b1_generators().len() == 1, "B1 not free of rank 1");
    let oracle = oracle_layers(&p.g, &p.h, 4);
    ensure!(d.layer_dims() == oracle, "layers {:?} vs oracle {:?}", d.layer_dims(), oracle);
    Ok(())
}

fn c2_gl11() -> Check {
    let p = pair("Borel");
    let z = compute_z(&p).map_err(|e| e.to_string())?;
    let qr = quotient_for_pair(&p, &z, 6).map_err(|e| e.to_string())?;
    ensure!(z.dim() == 1 && qr.data.total_dim() == 2, "Borel: z {} total {}", z.dim(), qr.data.total_dim());
    let p = pair("Torus");
    let z = compute_z(&p).map_err(|e| e.to_string())?;
    let qr = quotient_for_pair(&p, &z, 6).map_err(|e| e.to_string())?;
    ensure!(z.dim() == 2, "Torus: z {}", z.dim());
    ensure!(qr.data.parts[0].dim() == 1, "Torus: B has dim {}", qr.data.parts[0].dim());
    ensure!(qr.data.graded_ranks() == vec![1, 2, 1], "Torus: ranks {:?}", qr.data.graded_ranks());
    Ok(())
}

fn c3_degenerate() -> Check {
    for name in ["GL11", "Gm", "Ga01", "Ga11", "GmSplit"] {
        let g = load_hopf(name, Field::Rational).unwrap();
        let whole = prepare_pair(&g, &[], "whole").map_err(|e| e.to_string())?;
        let z = compute_z(&whole).map_err(|e| e.to_string())?;
        let qr = quotient_for_pair(&whole, &z, 8).map_err(|e| e.to_string())?;
        ensure!(qr.data.total_dim() == 1, "{name}: H = G gives dim {}", qr.data.total_dim());

        let triv = prepare_pair(&g, &trivial_ideal(&g), "trivial").map_err(|e| e.to_string())?;
        let z = compute_z(&triv).map_err(|e| e.to_string())?;
        let qr = quotient_for_pair(&triv, &z, 8).map_err(|e| e.to_string())?;
        let mut layers = vec![0; 9];
        for m in g.alg.truncated_basis(8) {
            layers[m.w as usize] += 1;
        }
        ensure!(qr.data.layer_dims() == layers, "{name}: trivial H gives {:?}, C has {:?}", qr.data.layer_dims(), layers);
    }
    Ok(())
}

/// β(x⊗y) = x·y₍₁₎ ⊗ q(y₍₂₎), computed from the coproduct of 𝒞.
fn beta(p: &SubPair, u: &Tensor) -> BTreeMap<(Mono, Mono), BigRational> {
    let g = &p.g;
    let mut out: BTreeMap<(Mono, Mono), BigRational> = BTreeMap::new();
    for (k, c) in u {
        let x = Poly::from([(k[0].clone(), g.alg.field.one())]);
        for (kk, cc) in g.coproduct(&Poly::from([(k[1].clone(), g.alg.field.one())])) {
            let left = g.alg.mul(&x, &g.alg.nf(&Poly::from([(kk[0].clone(), g.alg.field.one())])));
            let right = p.h.alg.nf(&Poly::from([(kk[1].clone(), g.alg.field.one())]));
            for (m1, c1) in &left {
                for (m2, c2) in &right {
                    *out.entry((m1.clone(), m2.clone())).or_insert_with(BigRational::zero) += q(c) * q(&cc) * q(c1) * q(c2);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn monotone(vs: &[Verdict]) -> bool {
    let decided: Vec<Verdict> = vs.iter().copied().filter(|v| *v != Verdict::Unknown).collect();
    decided.windows(2).all(|w| w[0] == w[1])
}

fn c4_galois() -> Check {
    let mu2 = pair("Mu2");
    let a = ComoduleAlgebra::restricted(mu2.c(), mu2.d()).map_err(|e| e.to_string())?;
    let v = check_galois(&a, 4, Some(mu2.c()));
    ensure!(v.status == Verdict::Proven, "Mu2: {:?} {}", v.status, v.detail);
    ensure!(!v.alpha.is_empty() && v.alpha.iter().all(|w| w.verified), "Mu2: α witnesses {:?}", v.alpha);
    ensure!(v.beta.len() == 4 && v.beta.iter().all(|d| d.injective), "Mu2: β {:?}", v.beta);

    let b = pair("GL2Borel");
    let a = ComoduleAlgebra::restricted(b.c(), b.d()).map_err(|e| e.to_string())?;
    let v = check_galois(&a, 3, Some(b.c()));
    ensure!(v.status == Verdict::Disproven, "GL2 Borel: {:?}", v.status);
    let ob = v.obstruction.clone().ok_or("no obstruction")?;
    let text = ob.strip_prefix("β(").and_then(|s| s.split(") = 0").next()).ok_or(format!("obstruction {ob}"))?;
    let u = raw_to_tensor(&b.g.alg, &parse_expr(text).map_err(|e| e.to_string())?, (0, 0)).map_err(|e| e.to_string())?;
    ensure!(!u.is_empty(), "obstruction is zero in A⊗A");
    ensure!(beta(&b, &u).is_empty(), "β does not vanish on {text}");
    // A⊗_B A = A⊗A needs B = 𝕜 in the window
    let layers = oracle_layers(&b.g, &b.h, 3);
    ensure!(layers.iter().skip(1).all(|d| *d == 0), "B has layers {layers:?}");

    let gm = load_hopf("Gm", Field::Rational).unwrap();
    let reg = ComoduleAlgebra::regular(&gm);
    let v = check_galois(&reg, 4, Some(&gm));
    ensure!(v.status == Verdict::Proven, "regular: {:?}", v.status);

    let gal = |p: &SubPair, n| check_galois(&ComoduleAlgebra::restricted(p.c(), p.d()).unwrap(), n, Some(p.c())).status;
    let series: [(&str, Vec<Verdict>); 3] = [
        ("Mu2", (2..=6).map(|n| gal(&mu2, n)).collect()),
        ("GL2Borel", (2..=6).map(|n| gal(&b, n)).collect()),
        ("regular", (2..=6).map(|n| check_galois(&reg, n, Some(&gm)).status).collect()),
    ];
    for (name, vs) in series {
        ensure!(monotone(&vs), "{name}: {vs:?}");
    }
    Ok(())
}

fn c5_graded() -> Check {
    let ga = load_hopf("Ga11", Field::Rational).unwrap();
    let (graded, witness) = is_graded(&ga);
    ensure!(!graded, "Ga11 reported graded");
    ensure!(witness == Some(("y".into(), "y".into())), "witness {witness:?}");
    let gr = gr_hopf_smash(&ga).map_err(|e| e.to_string())?;
    ensure!(is_graded(&gr).0, "gr(Ga11) not graded");
    let v = gr.validate(6);
    ensure!(v.ok, "gr(Ga11) fails validation: {:?}", v.counterexample);
    Ok(())
}

fn c6_maps() -> Check {
    for (name, bound) in [("Mu2e", 4), ("Mu2", 4), ("Even", 4), ("Torus", 3), ("Borel", 3), ("GL2Borel", 2)] {
        let p = pair(name);
        let z = compute_z(&p).map_err(|e| e.to_string())?;
        let chart = Chart::main(&p).map_err(|e| e.to_string())?;
        let kappa = Kappa::new(&chart, p.c(), &p.g.cotangent().coaction);
        let r = check_kappa(&chart, &kappa, bound);
        ensure!(r.ok(), "{name}: {:?}", r.failure);
        let eta = eta_for_module(&chart.a, &z.right, bound.min(2), 2 * bound.min(2)).map_err(|e| e.to_string())?;
        let eta = eta.ok_or(format!("{name}: no η"))?;
        check_sigma(&chart.a, &z.right, &eta, bound.min(2)).map_err(|e| format!("{name}: σρ ≠ id: {e}"))?;
        for route in [None, Some(ThetaRoute::Costable), Some(ThetaRoute::Sigma)] {
            let b = if route.is_none() { bound } else { 2 };
            let th = Theta::build(&p, &z, &chart, route, b).map_err(|e| format!("{name} {route:?}: {e}"))?;
            let r = check_theta(&chart, &z, &th, b);
            ensure!(r.ok(), "{name} {route:?}: {:?}", r.failure);
        }
        ensure!(braiding_involutive(p.field(), &z.w_right.space, &z.right.space), "{name}: braiding");
        ensure!(braiding_involutive(p.field(), &z.right.space, &z.right.space), "{name}: braiding on z");
    }
    Ok(())
}

fn c7_omega() -> Check {
    for name in ["Mu2e", "Torus"] {
        let p = pair(name);
        let z = compute_z(&p).map_err(|e| e.to_string())?;
        let chart = Chart::main(&p).map_err(|e| e.to_string())?;
        let th = Theta::build(&p, &z, &chart, None, 4).map_err(|e| e.to_string())?;
        let qr = quotient_for_pair(&p, &z, 4).map_err(|e| e.to_string())?;
        let r = omega_graded(&p, &z, &chart, &th, 4, &qr.data.layer_dims()).map_err(|e| e.to_string())?;
        for key in ["algebra_map", "colinear", "degree_zero", "coinvariants"] {
            ensure!(r.checks.get(key) == Some(&true), "{name}: {key} {:?}", r.failure);
        }
        ensure!(r.codomain_layers == qr.data.layer_dims(), "{name}: {:?} vs {:?}", r.codomain_layers, qr.data.layer_dims());
        ensure!(r.ok, "{name}: {:?}", r.failure);
    }
    Ok(())
}

fn c8_consistency() -> Check {
    for (name, shift) in [("Mu2e", "- 1"), ("Mu2", "")] {
        let p = pair(name);
        let z = compute_z(&p).map_err(|e| e.to_string())?;
        let qr = quotient_for_pair(&p, &z, 4).map_err(|e| e.to_string())?;
        let az = &qr.data.az.alg;
        let s = qr.data.b_generators().iter().map(|x| az.fmt(x)).find(|f| f == "t^2").ok_or(format!("{name}: no generator t^2"))?;
        let x = el(&p.c().alg, &format!("{s} {shift}"));
        let r = local_consistency_check(&p, &z, &qr.data, &x, 4).map_err(|e| e.to_string())?;
        ensure!(r.ok, "{name}: {:?} vs {:?}", r.local_layers, r.generated_layers);
    }
    let r = gr_quotient_check(&pair("Even"), 4).map_err(|e| e.to_string())?;
    ensure!(r.ok, "gr check on Even failed");
    Ok(())
}

const GOLDEN: &[(&str, &str, i32)] = &[
    ("GL11", "analyze GL11 --bound 4", 0),
    ("Borel", "quotient GL11 Borel --bound 6", 0),
    ("Torus", "quotient GL11 Torus --bound 6", 0),
    ("Gm", "analyze Gm --bound 4", 0),
    ("Mu2", "galois Gm Mu2 --bound 4", 0),
    ("Ga01", "lie Ga01 --bound 4", 0),
    ("Ga11", "gr Ga11 --bound 4", 0),
    ("GmSplit", "quotient GmSplit Mu2e --bound 4", 0),
    ("GL2", "validate GL2 --bound 3", 0),
    ("GL2Borel", "galois GL2 GL2Borel --bound 3", 2),
];

fn c9_parser() -> Check {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    for (file, cmd, code) in GOLDEN {
        let input = root.join("corpus").join(format!("{file}.hopf"));
        let text = std::fs::read_to_string(&input).map_err(|e| e.to_string())?;
        let parsed = parse_presentation(&text).map_err(|e| format!("{file}: {e}"))?;
        let printed = print_presentation(&parsed);
        let golden = std::fs::read_to_string(root.join("tests/golden").join(format!("{file}.canonical.hopf"))).map_err(|e| e.to_string())?;
        ensure!(printed == golden, "{file}: canonical print differs from golden");
        let again = parse_presentation(&printed).map_err(|e| format!("{file} reparse: {e}"))?;
        ensure!(print_presentation(&again) == printed, "{file}: print is not a fixed point");
        for h in &again.hopfs {
            build_hopf(h, Field::Rational).map_err(|e| format!("{file}: {e}"))?;
        }

        let args: Vec<String> = std::iter::once("superquot")
            .chain(cmd.split_whitespace())
            .chain(["--input", input.to_str().unwrap(), "--format", "json"])
            .map(String::from)
            .collect();
        let first = run(&args);
        ensure!(first.code == *code, "{cmd}: exit {} ({})", first.code, first.stderr);
        let golden = std::fs::read_to_string(root.join("tests/golden").join(format!("{file}.json"))).map_err(|e| e.to_string())?;
        ensure!(first.stdout == golden, "{cmd}: document differs from golden");
        ensure!(run(&args) == first, "{cmd}: rerun differs");
    }
    let bad: &[(&str, usize, usize)] = &[
        ("hopf G {\n  even t inv;\n  coproduct { t = t(x)t }\n}\n", 3, 25),
        ("hopf G {\n  even t inv;\n  coproduct { t = t(x)s; }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 15),
        ("hopf G {\n  even t inv, t;\n}\n", 2, 15),
        ("hopf G {\n  even t inv;\n  coprod { t = t(x)t; }\n}\n", 3, 3),
        ("hopf G {\n  even t;\n  coproduct { t = t^-1(x)t; }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 15),
    ];
    for (text, line, col) in bad {
        let err = match parse_presentation(text) {
            Err(e) => e,
            Ok(f) => match build_hopf(&f.hopfs[0], Field::Rational) {
                Err(e) => e,
                Ok(_) => return Err(format!("accepted corrupted input {text:?}")),
            },
        };
        match err {
            Error::Parse { line: l, col: c, .. } => ensure!((l, c) == (*line, *col), "error at {l}:{c}, expected {line}:{col}"),
            e => return Err(format!("unpositioned error {e}")),
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(usize, fn() -> Check); 9] = [
        (1, c1_gmsplit),
        (2, c2_gl11),
        (3, c3_degenerate),
        (4, c4_galois),
        (5, c5_graded),
        (6, c6_maps),
        (7, c7_omega),
        (8, c8_consistency),
        (9, c9_parser),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {n}: PASS"),
            Err(why) => {
                println!("criterion {n}: FAIL ({why})");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
