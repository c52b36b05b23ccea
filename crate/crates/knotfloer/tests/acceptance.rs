//! One PASS/FAIL line per acceptance criterion. Set `KNOTFLOER_ACCEPTANCE_STRICT=1`
//! to exit nonzero when any line fails.

use std::time::{Duration, Instant};

use knotfloer::complexes::{
    class_of, homology, quotient_by_subcomplex, stabilized_unknot, tensor, tensor_name, Chain,
    Mode, StabMarking, UComplex,
};
use knotfloer::fixtures::{self, Fixture, Store};
use knotfloer::heegaard::{homology_in_grading, DomainSolver, HeegaardDiagram};
use knotfloer::hfk_catalog::{hat_table_t2, kunneth_table, refined_compare, Comparison};
use knotfloer::report::{composite_invariants, Composite};
use knotfloer::surgery::{cobordism_signature, ClassicalInvariants, SurgeryPresentation};
use num::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

struct Runner {
    failed: usize,
    total: usize,
}

impl Runner {
    fn check(&mut self, label: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        let r = r.and_then(|()| {
            if t > budget {
                Err(format!("took {t:?}, budget {budget:?}"))
            } else {
                Ok(())
            }
        });
        self.total += 1;
        match r {
            Ok(()) => println!("PASS {label} ({} ms)", t.as_millis()),
            Err(e) => {
                self.failed += 1;
                println!("FAIL {label}: {e}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn surgery(name: &str, params: &[usize]) -> Result<SurgeryPresentation, String> {
    match fixtures::build(name, params).map_err(|e| e.to_string())? {
        Fixture::Surgery(p) => Ok(p),
        _ => Err(format!("{name} is not a surgery fixture")),
    }
}

fn complex(name: &str, params: &[usize]) -> Result<UComplex, String> {
    match fixtures::build(name, params).map_err(|e| e.to_string())? {
        Fixture::Complex(c) => Ok(c),
        _ => Err(format!("{name} is not a complex fixture")),
    }
}

fn diagram(name: &str, params: &[usize]) -> Result<HeegaardDiagram, String> {
    fixtures::diagram(name, params).map_err(|e| e.to_string())
}

fn diagram_fixtures() -> Vec<(String, HeegaardDiagram)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("Ln n{n}"), fixtures::diagram("Ln", &[n]).unwrap()));
    }
    for l in 0..=6 {
        out.push((format!("L0l l{l}"), fixtures::diagram("L0l", &[l]).unwrap()));
    }
    out
}

fn complex_fixtures() -> Vec<(String, UComplex)> {
    vec![
        ("L1l l1".into(), complex("L1l", &[1]).unwrap()),
        ("L1l l2".into(), complex("L1l", &[2]).unwrap()),
        ("stab w1".into(), complex("unknot_stab", &[1]).unwrap()),
        ("stab w2".into(), complex("unknot_stab", &[2]).unwrap()),
    ]
}

/// The same generators and arrows over F₂[U]; grading complexes have no U-arrows.
fn over_u(c: &UComplex) -> UComplex {
    if c.mode() == Mode::F2U {
        return c.clone();
    }
    UComplex::new(
        Mode::F2U,
        c.generators().to_vec(),
        c.arrows().to_vec(),
        c.marked().to_vec(),
    )
    .expect("lift is a complex")
}

fn d_squared_zero(c: &UComplex) -> Outcome {
    for g in c.generators() {
        let once = c.boundary(&Chain::from_names(&[&g.name])).map_err(|e| e.to_string())?;
        let twice = c.boundary(&once).map_err(|e| e.to_string())?;
        ensure(twice.is_zero(), || format!("d^2 {} != 0", g.name))?;
    }
    Ok(())
}

fn unshipped(what: &str) -> Outcome {
    Err(format!("{what} diagram is not shipped"))
}

fn main() {
    let mut r = Runner { failed: 0, total: 0 };
    let fast = Duration::from_secs(1);

    r.check("1 surgery formulas L_{k,l}, k,l <= 3", fast, || {
        for k in 0..=3i64 {
            for l in 0..=3i64 {
                let p = surgery("surgery_Lkl", &[k as usize, l as usize])?;
                let inv = ClassicalInvariants::of(&p).map_err(|e| e.to_string())?;
                ensure(inv.tb == int(-4 * (k + l) - 6), || format!("tb at ({k},{l})"))?;
                ensure(inv.rot == int(-6 * l - 2 * k - 7), || format!("rot at ({k},{l})"))?;
                ensure(inv.d3 == Some(int(2 * l + 2)), || format!("d3 at ({k},{l})"))?;
            }
        }
        Ok(())
    });
    r.check("1 surgery formulas L(n), n <= 4", fast, || {
        for n in 1..=4i64 {
            let p = surgery("surgery_Ln", &[n as usize])?;
            let inv = ClassicalInvariants::of(&p).map_err(|e| e.to_string())?;
            ensure(inv.d3 == Some(int(1 - 2 * n)), || format!("d3 at n={n}"))?;
            let s = cobordism_signature(&p).map_err(|e| e.to_string())?;
            ensure(s == -n - 1, || format!("signature {s} at n={n}"))?;
        }
        Ok(())
    });

    r.check("2 connected-sum classical invariants", fast, || {
        for file in ["composite/L1.json", "composite/L2.json"] {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/").to_string() + file;
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let c: Composite = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let inv = composite_invariants(&c, &Store::Embedded).map_err(|e| e.to_string())?;
            let cl = &inv.classical;
            ensure(cl.tb == int(-31) && cl.rot == int(-40) && cl.d3 == Some(int(12)), || {
                format!("{file}: tb {} rot {} d3 {:?}", cl.tb, cl.rot, cl.d3)
            })?;
        }
        Ok(())
    });

    let ten = Duration::from_secs(10);
    r.check("3 generator counts L(n), n = 1..6", ten, || {
        for n in 1..=6usize {
            let g = diagram("Ln", &[n])?.generators().len();
            ensure(g == 16 * n + 19, || format!("n={n}: {g}"))?;
        }
        Ok(())
    });
    r.check("3 generator count L_{0,0}", ten, || {
        let g = diagram("L0l", &[0])?.generators().len();
        ensure(g == 19, || format!("{g}"))
    });
    r.check("3 generator count L_{1,1}", ten, || unshipped("L_{1,1}"));
    r.check("3 generator count L_{1,2}", ten, || unshipped("L_{1,2}"));

    let thirty = Duration::from_secs(30);
    r.check("4 L(n) marked unique at 1-n, n = 1..4", thirty, || {
        for n in 1..=4usize {
            let d = diagram("Ln", &[n])?;
            let s = DomainSolver::new(&d).map_err(|e| e.to_string())?;
            let gr = s.gradings().map_err(|e| e.to_string())?;
            let a = gr.of(d.marked().unwrap()).unwrap();
            ensure(a == 1 - n as i64, || format!("n={n}: A={a}"))?;
            ensure(gr.in_grading(a).len() == 1, || format!("n={n}: not unique"))?;
        }
        Ok(())
    });
    r.check("4 L_{0,l} marked strictly maximal, l <= 4", thirty, || {
        for l in 0..=4usize {
            let d = diagram("L0l", &[l])?;
            let s = DomainSolver::new(&d).map_err(|e| e.to_string())?;
            let gr = s.gradings().map_err(|e| e.to_string())?;
            let a = gr.of(d.marked().unwrap()).unwrap();
            let top = *gr.histogram().keys().last().unwrap();
            ensure(a == top && gr.in_grading(a).len() == 1, || format!("l={l}"))?;
        }
        Ok(())
    });
    r.check("4 L_{1,1} grading A=1 from diagram", thirty, || unshipped("L_{1,1}"));
    r.check("4 L_{1,2} marked grading from diagram", thirty, || unshipped("L_{1,2}"));
    r.check("4 L_{1,1}/L_{1,2} grading complexes: 7 and 13 named generators", thirty, || {
        let c1 = complex("L1l", &[1])?;
        let c2 = complex("L1l", &[2])?;
        ensure(c1.generators().len() == 7, || "L_{1,1}".into())?;
        ensure(c2.generators().len() == 13, || "L_{1,2}".into())?;
        ensure(c1.generators().iter().all(|g| g.alexander.total() == 1), || "A != 1".into())?;
        ensure(c2.generators().iter().all(|g| g.alexander.total() == -3), || "A != -3".into())?;
        ensure(c1.marked() == ["A1B1C1D1E"], || format!("{:?}", c1.marked()))
    });

    let sixty = Duration::from_secs(60);
    r.check("5 L_{1,1} arrows found by the engine", sixty, || unshipped("L_{1,1}"));
    r.check("5 L_{1,1} complex: six arrows, acyclic quotient, marked nonzero", sixty, || {
        let c = complex("L1l", &[1])?;
        ensure(c.arrows().len() == 6, || format!("{} arrows", c.arrows().len()))?;
        let q = quotient_by_subcomplex(&c, c.marked()).map_err(|e| e.to_string())?;
        ensure(homology(&q).rank() == 0, || "quotient not acyclic".into())?;
        let h = homology(&c);
        let x = class_of(&c, &h, &c.marked_chain()).map_err(|e| e.to_string())?;
        ensure(!x.is_zero(), || "marked class zero".into())
    });
    r.check("5 L_{1,2} marked class from diagram with overrides", sixty, || {
        unshipped("L_{1,2}")
    });
    r.check("5 L_{1,2} complex: marked class nonzero", sixty, || {
        let c = complex("L1l", &[2])?;
        let h = homology(&c);
        let x = class_of(&c, &h, &c.marked_chain()).map_err(|e| e.to_string())?;
        ensure(!x.is_zero(), || "marked class zero".into())
    });

    r.check("6 stabilized unknot: single tower, W2 = g, W1 = U g", fast, || {
        let c = stabilized_unknot(StabMarking::W2);
        let h = homology(&c);
        ensure(h.free_towers.len() == 1 && h.torsion.is_empty(), || "not one tower".into())?;
        let g = class_of(&c, &h, &Chain::from_names(&["PX2"])).map_err(|e| e.to_string())?;
        let w2 = class_of(&c, &h, &c.marked_chain()).map_err(|e| e.to_string())?;
        let c1 = stabilized_unknot(StabMarking::W1);
        let w1 = class_of(&c1, &h, &c1.marked_chain()).map_err(|e| e.to_string())?;
        ensure(w2 == g, || "W2 marking".into())?;
        ensure(w1 == h.u_times(&g), || "W1 marking".into())
    });
    r.check("6 stabilization by tensor on every complex fixture", fast, || {
        for (name, base) in complex_fixtures() {
            let base = over_u(&base);
            for (marking, times_u) in [(StabMarking::W2, false), (StabMarking::W1, true)] {
                let t = tensor(&base, &stabilized_unknot(marking)).map_err(|e| e.to_string())?;
                let h = homology(&t);
                let marked = class_of(&t, &h, &t.marked_chain()).map_err(|e| e.to_string())?;
                let names: Vec<String> =
                    base.marked().iter().map(|m| tensor_name(m, "PX2")).collect();
                let reference =
                    class_of(&t, &h, &Chain::from_names(&names)).map_err(|e| e.to_string())?;
                let expected = if times_u { h.u_times(&reference) } else { reference };
                ensure(marked == expected, || format!("{name} {marking:?}"))?;
            }
        }
        Ok(())
    });

    r.check("7 hat tables of T(2,+-m), m <= 15", fast, || {
        for m in (3..=15i64).step_by(2) {
            let h = (m - 1) / 2;
            let pos = hat_table_t2(m).map_err(|e| e.to_string())?;
            let neg = hat_table_t2(-m).map_err(|e| e.to_string())?;
            ensure(pos.total_dimension() == m as u32, || format!("T(2,{m}) dim"))?;
            ensure(neg.total_dimension() == m as u32, || format!("T(2,-{m}) dim"))?;
            for s in -h..=h {
                let a = knotfloer::complexes::Alexander::single(s);
                ensure(pos.dim(&a, s - h) == 1, || format!("T(2,{m}) at {s}"))?;
                ensure(neg.dim(&a, s + h) == 1, || format!("T(2,-{m}) at {s}"))?;
            }
        }
        Ok(())
    });
    r.check("7 Kunneth T(2,7)#T(2,9) at total grading 5", fast, || {
        let t = kunneth_table(&hat_table_t2(7).unwrap(), &hat_table_t2(9).unwrap())
            .map_err(|e| e.to_string())?;
        let mut got: Vec<(Vec<i64>, u32)> =
            t.at_total(5).into_iter().map(|(a, _, d)| (a.0.clone(), d)).collect();
        got.sort();
        let want = vec![(vec![1, 4], 1), (vec![2, 3], 1), (vec![3, 2], 1)];
        ensure(got == want, || format!("{got:?}"))
    });
    r.check("7 refined comparison of the two composites is distinct", fast, || {
        let load = |f: &str| -> Result<_, String> {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/").to_string() + f;
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            let c: Composite = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            composite_invariants(&c, &Store::Embedded).map_err(|e| e.to_string())
        };
        let (a, b) = (load("composite/L1.json")?, load("composite/L2.json")?);
        let v = refined_compare(&a.refined, &b.refined, a.slot_dim);
        ensure(v == Comparison::Distinct, || format!("{v:?}"))
    });

    r.check("8 d^2 = 0 on every constructed complex", sixty, || {
        for (name, c) in complex_fixtures() {
            d_squared_zero(&c).map_err(|e| format!("{name}: {e}"))?;
            let u = over_u(&c);
            for m in [StabMarking::W1, StabMarking::W2] {
                let t = tensor(&u, &stabilized_unknot(m)).map_err(|e| e.to_string())?;
                d_squared_zero(&t).map_err(|e| format!("{name} tensor: {e}"))?;
            }
        }
        for m in [-9i64, -5, -3, 3, 5, 9] {
            d_squared_zero(&knotfloer::hfk_catalog::staircase_complex(m).unwrap())?;
        }
        for (name, d) in diagram_fixtures().into_iter().take(10) {
            let s = DomainSolver::new(&d).map_err(|e| e.to_string())?;
            let gr = s.gradings().map_err(|e| e.to_string())?;
            let a = gr.of(d.marked().unwrap()).unwrap();
            let g = homology_in_grading(&s, &gr, a).map_err(|e| format!("{name}: {e}"))?;
            d_squared_zero(&g.complex).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(())
    });
    r.check("8 constrained periodic domains trivial on every diagram fixture", sixty, || {
        for (name, d) in diagram_fixtures() {
            let s = DomainSolver::new(&d).map_err(|e| e.to_string())?;
            ensure(s.constrained_periodic_domains().is_empty(), || name.clone())?;
        }
        Ok(())
    });
    r.check("8 rel_alexander cocycle on 100 random triples per fixture", sixty, || {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (name, d) in diagram_fixtures() {
            let s = DomainSolver::new(&d).map_err(|e| e.to_string())?;
            let gens = d.generators();
            for _ in 0..100 {
                let x = gens.choose(&mut rng).unwrap();
                let y = gens.choose(&mut rng).unwrap();
                let z = gens.choose(&mut rng).unwrap();
                let (xy, yz, xz) = (s.rel_alexander(x, y), s.rel_alexander(y, z), s.rel_alexander(x, z));
                let ok = matches!((xy, yz, xz), (Some(a), Some(b), Some(c)) if a + b == c);
                ensure(ok, || name.clone())?;
            }
        }
        Ok(())
    });
    r.check("8 Euler characteristic of hat tables is the Alexander polynomial", fast, || {
        for m in (3..=15i64).step_by(2) {
            for sm in [m, -m] {
                let t = hat_table_t2(sm).unwrap();
                let mut e = std::collections::BTreeMap::new();
                for ((a, mm), d) in &t.entries {
                    let sign = if mm.rem_euclid(2) == 0 { 1 } else { -1 };
                    *e.entry(a.total()).or_insert(0i64) += sign * i64::from(*d);
                }
                // Δ of T(2,m) is Σ_{|s|≤h} (−1)^{h−s} t^s
                let h = (m - 1) / 2;
                for s in -h..=h {
                    let want = if (h - s) % 2 == 0 { 1 } else { -1 };
                    ensure(e.get(&s) == Some(&want), || format!("T(2,{sm}) at {s}"))?;
                }
            }
        }
        Ok(())
    });
    r.check("8 hat table symmetry dim(s, M) = dim(-s, M - 2s)", fast, || {
        for m in (3..=15i64).step_by(2) {
            for sm in [m, -m] {
                let t = hat_table_t2(sm).unwrap();
                for ((a, mm), d) in &t.entries {
                    let s = a.total();
                    let mirror = knotfloer::complexes::Alexander::single(-s);
                    ensure(t.dim(&mirror, mm - 2 * s) == *d, || format!("T(2,{sm}) at {s}"))?;
                }
            }
        }
        Ok(())
    });

    println!("acceptance: {}/{} criteria lines pass", r.total - r.failed, r.total);
    let strict = std::env::var("KNOTFLOER_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && r.failed > 0 {
        std::process::exit(1);
    }
}
