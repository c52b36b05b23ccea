//! Differentials inside a single Alexander grading and the resulting F₂ homology.

use num::{One, Signed, ToPrimitive};

use super::domains::{Domain, DomainConstraint, DomainSolver, Gradings};
use super::{Generator, HeegaardError};
use crate::complexes::{self, Alexander, Arrow, ClassCoordinates, GeneratorSpec, HomologyModule, Mode, UComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    Bigon,
    Rectangle,
    Other,
}

/// A positive index-one domain between two generators of the same grading.
#[derive(Clone, Debug)]
pub struct DiffArrow {
    pub from: String,
    pub to: String,
    pub kind: DomainKind,
    /// Number of holomorphic representatives mod 2; `None` when undetermined.
    pub count: Option<u32>,
    pub domain: Domain,
}

impl<'a> DomainSolver<'a> {
    /// Positive index-one domains with `n_z = n_w = 0` between generators of grading `a`.
    pub fn differentials_in_grading(&self, gr: &Gradings, a: i64) -> Vec<DiffArrow> {
        let d = self.diagram();
        let gens = gr.in_grading(a);
        let mut out = Vec::new();
        for x in &gens {
            for y in &gens {
                if x == y {
                    continue;
                }
                let Some(dom) = self.connect(x, y, DomainConstraint::ZW) else {
                    continue;
                };
                if dom.is_zero() || !dom.is_nonnegative() {
                    continue;
                }
                if !self.maslov_index(&dom, x, y).is_one() {
                    continue;
                }
                let kind = self.classify(&dom, x, y);
                let (from, to) = (d.generator_name(x), d.generator_name(y));
                let count = match kind {
                    DomainKind::Bigon | DomainKind::Rectangle => Some(1),
                    DomainKind::Other => d
                        .overrides()
                        .iter()
                        .find(|o| o.from == from && o.to == to)
                        .map(|o| o.count),
                };
                out.push(DiffArrow {
                    from,
                    to,
                    kind,
                    count,
                    domain: dom,
                });
            }
        }
        out
    }

    /// Embedded bigon or rectangle: multiplicities in {0,1}, a disk with two or four
    /// convex corners at the moving points and no concave corners.
    fn classify(&self, dom: &Domain, x: &Generator, y: &Generator) -> DomainKind {
        let d = self.diagram();
        if dom.0.iter().any(|m| m.abs() > One::one()) {
            return DomainKind::Other;
        }
        let inside = |r: super::RegionIx| dom.0[r.0].is_positive();
        let (mut convex, mut concave) = (Vec::new(), 0usize);
        for (i, p) in d.points().iter().enumerate() {
            let k = p.quadrants.iter().filter(|&&q| inside(q)).count();
            match k {
                1 => convex.push(i),
                3 => concave += 1,
                2 => {
                    let q = p.quadrants;
                    if inside(q[0]) == inside(q[2]) {
                        return DomainKind::Other;
                    }
                }
                _ => {}
            }
        }
        let mut moving: Vec<usize> = x
            .0
            .iter()
            .chain(&y.0)
            .filter(|p| !(x.0.contains(p) && y.0.contains(p)))
            .map(|p| p.0)
            .collect();
        moving.sort_unstable();
        if concave != 0 || convex != moving {
            return DomainKind::Other;
        }
        let corners = d.corner_counts();
        let mut e4 = 0i64;
        for r in dom.support() {
            e4 += 4 * d.regions()[r.0].chi - corners[r.0];
        }
        // Gauss–Bonnet: 4χ(support) = 4e + convex − concave
        let chi4 = e4 + convex.len() as i64;
        if chi4 != 4 {
            return DomainKind::Other;
        }
        match convex.len() {
            2 => DomainKind::Bigon,
            4 => DomainKind::Rectangle,
            _ => DomainKind::Other,
        }
    }
}

/// F₂ homology of the grading-`a` complex, with the marked class located when it lies there.
#[derive(Clone, Debug)]
pub struct GradingHomology {
    pub complex: UComplex,
    pub homology: HomologyModule,
    pub arrows: Vec<DiffArrow>,
    pub marked_class: Option<ClassCoordinates>,
}

pub fn homology_in_grading(
    solver: &DomainSolver<'_>,
    gr: &Gradings,
    a: i64,
) -> Result<GradingHomology, HeegaardError> {
    let d = solver.diagram();
    let arrows = solver.differentials_in_grading(gr, a);
    let undetermined: Vec<(String, String)> = arrows
        .iter()
        .filter(|r| r.count.is_none())
        .map(|r| (r.from.clone(), r.to.clone()))
        .collect();
    if !undetermined.is_empty() {
        return Err(HeegaardError::Undetermined(undetermined));
    }
    let generators = gr
        .in_grading(a)
        .into_iter()
        .map(|g| GeneratorSpec {
            name: d.generator_name(g),
            alexander: Alexander::single(a),
            maslov: None,
        })
        .collect();
    let edges = arrows
        .iter()
        .filter(|r| r.count.and_then(|c| c.to_u32()).unwrap_or(0) % 2 == 1)
        .map(|r| Arrow {
            from: r.from.clone(),
            to: r.to.clone(),
            u: 0,
        })
        .collect();
    let marked = d
        .marked()
        .filter(|x| gr.of(x) == Some(a))
        .map(|x| vec![d.generator_name(x)])
        .unwrap_or_default();
    let complex = UComplex::new(Mode::F2, generators, edges, marked)?;
    let homology = complexes::homology(&complex);
    let marked_class = if complex.marked().is_empty() {
        None
    } else {
        Some(complexes::class_of(&complex, &homology, &complex.marked_chain())?)
    };
    Ok(GradingHomology {
        complex,
        homology,
        arrows,
        marked_class,
    })
}
