use knotfloer::heegaard::{DomainConstraint, DomainKind, DomainSolver, HeegaardDiagram};
use num::ToPrimitive;

fn ln(n: usize) -> HeegaardDiagram {
    let path = format!("{}/fixtures/Ln/n{n}.json", env!("CARGO_MANIFEST_DIR"));
    HeegaardDiagram::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generator_count() {
    for n in 1..=6 {
        assert_eq!(ln(n).generators().len(), 16 * n + 19);
    }
}

#[test]
fn marked_alone_at_one_minus_n() {
    for n in 1..=4 {
        let d = ln(n);
        let s = DomainSolver::new(&d).unwrap();
        let gr = s.gradings().unwrap();
        let x = d.marked().unwrap();
        let a = gr.of(x).unwrap();
        assert_eq!(a, 1 - n as i64);
        assert_eq!(gr.in_grading(a).len(), 1);
        assert!(s.verify_invariant_cycle().unwrap());
    }
}

#[test]
fn intersection_matrix_matches() {
    for n in 1..=5 {
        let d = ln(n);
        let m = d.intersection_matrix(&[], &[]);
        let n1 = n as i64 + 1;
        let want = [[n1, -1, 0, 0], [-1, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 1]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert_eq!(m.get(i, j).to_integer().to_i64().unwrap(), w);
                assert_eq!(d.geometric_intersections()[i][j] as i64, w.abs());
            }
        }
    }
}

#[test]
fn relative_gradings_of_named_generators() {
    let n = 3i64;
    let d = ln(n as usize);
    let s = DomainSolver::new(&d).unwrap();
    let g = |names: &[&str]| d.generator_from_names(names).unwrap();
    let rel = |a: &[&str], b: &[&str]| s.rel_alexander(&g(a), &g(b)).unwrap();
    for i in 1..=n {
        let (a, b) = (format!("A{}", i + 1), format!("A{i}"));
        assert_eq!(rel(&[&a, "B1", "C1", "D1"], &[&b, "B1", "C1", "D1"]), 2);
    }
    let bw = [0, 2 * n, 4 * n + 2, 2 * n + 1];
    for (k, w) in bw.iter().enumerate() {
        let b = format!("B{}", k + 1);
        assert_eq!(rel(&["A1", &b, "C1", "D1"], &["A1", "B1", "C1", "D1"]), *w);
    }
    assert_eq!(rel(&["A1", "B1", "C2", "D1"], &["A1", "B1", "C1", "D1"]), 2 * n + 1);
    assert_eq!(rel(&["A1", "B1", "L", "M"], &["A1", "B1", "C1", "D1"]), -1);
    let an = format!("A{}", n + 1);
    assert_eq!(rel(&["P", "Q", "C1", "D1"], &[&an, "B1", "C1", "D1"]), 0);
    assert_eq!(rel(&["A1", "X1", "Y1", "D1"], &["A1", "B4", "C1", "D1"]), 0);
    let dom = s
        .connect(&g(&["P", "Q", "C1", "D1"]), &g(&[&an, "B1", "C1", "D1"]), DomainConstraint::NONE)
        .unwrap();
    assert!(dom.at(d.w()) == &0.into() && dom.at(d.z()) == &0.into());
    let _ = DomainKind::Rectangle;
}
