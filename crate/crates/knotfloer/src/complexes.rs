//! Bigraded chain complexes over F₂ and F₂[U] and their homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{UPoly, UPolyMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("arrow {from} -> {to} violates {what}")]
    Grading {
        from: String,
        to: String,
        what: &'static str,
    },
    #[error("arrow {from} -> {to} has positive U-power in F2 mode")]
    UPowerInF2 { from: String, to: String },
    #[error("differential does not square to zero (first failure at {0})")]
    DSquaredNonzero(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("generators {0:?} do not span a subcomplex")]
    NotSubcomplex(Vec<String>),
    #[error("coefficient modes differ")]
    ModeMismatch,
    #[error("malformed complex: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    F2,
    F2U,
}

/// Alexander grading: one integer, or a tuple for connected sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alexander(pub Vec<i64>);

impl Alexander {
    pub fn single(a: i64) -> Self {
        Alexander(vec![a])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    fn concat(&self, other: &Alexander) -> Alexander {
        Alexander(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Alexander {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [a] => write!(f, "{a}"),
            parts => write!(
                f,
                "({})",
                parts
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

impl Serialize for Alexander {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.as_slice() {
            [a] => s.serialize_i64(*a),
            parts => parts.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Alexander {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            One(i64),
            Many(Vec<i64>),
        }
        match Raw::deserialize(d)? {
            Raw::One(a) => Ok(Alexander(vec![a])),
            Raw::Many(v) if !v.is_empty() => Ok(Alexander(v)),
            Raw::Many(_) => Err(de::Error::custom("empty Alexander grading")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(rename = "A")]
    pub alexander: Alexander,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub maslov: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub u: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawComplex {
    mode: Mode,
    generators: Vec<GeneratorSpec>,
    arrows: Vec<Arrow>,
    #[serde(default)]
    marked: Vec<String>,
}

/// Formal F₂[U]-linear combination of named generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain(pub BTreeMap<String, UPoly>);

impl Chain {
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Self {
        let mut c = Chain::default();
        for n in names {
            c.add(n.as_ref(), UPoly::one());
        }
        c
    }

    pub fn add(&mut self, name: &str, coeff: UPoly) {
        let v = self.0.remove(name).unwrap_or_default() + coeff;
        if !v.is_zero() {
            self.0.insert(name.to_string(), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Free chain complex with U-weighted arrows; immutable after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UComplex {
    mode: Mode,
    generators: Vec<GeneratorSpec>,
    arrows: Vec<Arrow>,
    marked: Vec<String>,
    index: HashMap<String, usize>,
}

impl UComplex {
    pub fn new(
        mode: Mode,
        generators: Vec<GeneratorSpec>,
        arrows: Vec<Arrow>,
        marked: Vec<String>,
    ) -> Result<Self, ComplexError> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(ComplexError::DuplicateGenerator(g.name.clone()));
            }
        }
        let c = UComplex {
            mode,
            generators,
            arrows,
            marked,
            index,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let raw: RawComplex =
            serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        Self::new(raw.mode, raw.generators, raw.arrows, raw.marked)
    }

    pub fn to_json(&self) -> String {
        let raw = RawComplex {
            mode: self.mode,
            generators: self.generators.clone(),
            arrows: self.arrows.clone(),
            marked: self.marked.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("complex serializes")
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for a in &self.arrows {
            let f = self.gen(&a.from)?;
            let t = self.gen(&a.to)?;
            match self.mode {
                Mode::F2 if a.u > 0 => {
                    return Err(ComplexError::UPowerInF2 {
                        from: a.from.clone(),
                        to: a.to.clone(),
                    })
                }
                Mode::F2U if f.alexander.total() != t.alexander.total() - i64::from(a.u) => {
                    return Err(ComplexError::Grading {
                        from: a.from.clone(),
                        to: a.to.clone(),
                        what: "A(from) = A(to) - u",
                    })
                }
                _ => {}
            }
            if let (Some(mf), Some(mt)) = (f.maslov, t.maslov) {
                if mf != mt + 1 - 2 * i64::from(a.u) {
                    return Err(ComplexError::Grading {
                        from: a.from.clone(),
                        to: a.to.clone(),
                        what: "M(from) = M(to) + 1 - 2u",
                    });
                }
            }
        }
        for m in &self.marked {
            self.gen(m)?;
        }
        self.check_d_squared()
    }

    fn gen(&self, name: &str) -> Result<&GeneratorSpec, ComplexError> {
        self.index
            .get(name)
            .map(|&i| &self.generators[i])
            .ok_or_else(|| ComplexError::UnknownGenerator(name.to_string()))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn marked(&self) -> &[String] {
        &self.marked
    }

    pub fn marked_chain(&self) -> Chain {
        Chain::from_names(&self.marked)
    }

    pub fn with_marked<S: AsRef<str>>(&self, marked: &[S]) -> Result<Self, ComplexError> {
        let marked = marked.iter().map(|s| s.as_ref().to_string()).collect();
        Self::new(
            self.mode,
            self.generators.clone(),
            self.arrows.clone(),
            marked,
        )
    }

    /// Sparse differential: for each generator, its image as (target, coefficient).
    fn adjacency(&self) -> Vec<BTreeMap<usize, UPoly>> {
        let mut adj = vec![BTreeMap::new(); self.generators.len()];
        for a in &self.arrows {
            let (f, t) = (self.index[&a.from], self.index[&a.to]);
            let e: &mut UPoly = adj[f].entry(t).or_default();
            *e = std::mem::take(e) + UPoly::monomial(a.u);
        }
        for m in &mut adj {
            m.retain(|_, v| !v.is_zero());
        }
        adj
    }

    fn check_d_squared(&self) -> Result<(), ComplexError> {
        let adj = self.adjacency();
        for (x, img) in adj.iter().enumerate() {
            let mut acc: BTreeMap<usize, UPoly> = BTreeMap::new();
            for (y, c) in img {
                for (z, c2) in &adj[*y] {
                    let e = acc.entry(*z).or_default();
                    *e = std::mem::take(e) + (c * c2);
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(ComplexError::DSquaredNonzero(
                    self.generators[x].name.clone(),
                ));
            }
        }
        Ok(())
    }

    /// Matrix of ∂ with columns indexed by sources and rows by targets.
    pub fn differential_matrix(&self) -> UPolyMatrix {
        let n = self.generators.len();
        let mut m = UPolyMatrix::zeros(n, n);
        for (x, img) in self.adjacency().into_iter().enumerate() {
            for (y, c) in img {
                m.set(y, x, c);
            }
        }
        m
    }

    fn dense(&self, c: &Chain) -> Result<Vec<UPoly>, ComplexError> {
        let mut v = vec![UPoly::zero(); self.generators.len()];
        for (name, coeff) in &c.0 {
            let i = *self
                .index
                .get(name)
                .ok_or_else(|| ComplexError::UnknownGenerator(name.clone()))?;
            v[i] = coeff.clone();
        }
        if self.mode == Mode::F2 {
            // U acts as zero
            for p in &mut v {
                *p = if p.coeff(0) {
                    UPoly::one()
                } else {
                    UPoly::zero()
                };
            }
        }
        Ok(v)
    }

    pub fn boundary(&self, c: &Chain) -> Result<Chain, ComplexError> {
        let v = self.dense(c)?;
        let mut out = Chain::default();
        for (x, img) in self.adjacency().iter().enumerate() {
            if v[x].is_zero() {
                continue;
            }
            for (y, coeff) in img {
                out.add(&self.generators[*y].name, &v[x] * coeff);
            }
        }
        Ok(out)
    }

    pub fn is_cycle(&self, c: &Chain) -> Result<bool, ComplexError> {
        Ok(self.boundary(c)?.is_zero())
    }
}

/// Direct summand of the homology: `F₂[U]` (order `None`) or `F₂[U]/U^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub generator: String,
    pub alexander: Alexander,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maslov: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

/// Coordinates of a homology class: coefficient on each summand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCoordinates(pub BTreeMap<usize, UPoly>);

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct HomologyModule {
    pub mode: Mode,
    pub free_towers: Vec<usize>,
    pub torsion: Vec<usize>,
    pub summands: Vec<Summand>,
    /// Row `i`: original generator `i` in the reduced basis.
    old_in_new: Vec<BTreeMap<usize, UPoly>>,
    /// Reduced-basis index of each summand generator.
    summand_basis: Vec<usize>,
    names: Vec<String>,
    class_coordinates: Vec<(String, ClassCoordinates)>,
}

impl HomologyModule {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn tower_summands(&self) -> impl Iterator<Item = &Summand> {
        self.free_towers.iter().map(|&i| &self.summands[i])
    }

    pub fn torsion_summands(&self) -> impl Iterator<Item = &Summand> {
        self.torsion.iter().map(|&i| &self.summands[i])
    }

    /// Coordinates of the marked classes recorded at construction.
    pub fn class_coordinates(&self) -> &[(String, ClassCoordinates)] {
        &self.class_coordinates
    }

    fn reduce(&self, mut coords: ClassCoordinates) -> ClassCoordinates {
        for (s, p) in coords.0.iter_mut() {
            match self.summands[*s].order {
                Some(k) => {
                    *p = p
                        .exponents()
                        .filter(|&e| e < k)
                        .fold(UPoly::zero(), |acc, e| acc + UPoly::monomial(e));
                }
                None if self.mode == Mode::F2 => {
                    *p = if p.coeff(0) {
                        UPoly::one()
                    } else {
                        UPoly::zero()
                    };
                }
                None => {}
            }
        }
        coords.0.retain(|_, p| !p.is_zero());
        coords
    }

    pub fn u_times(&self, c: &ClassCoordinates) -> ClassCoordinates {
        if self.mode == Mode::F2 {
            return ClassCoordinates::default();
        }
        self.reduce(ClassCoordinates(
            c.0.iter().map(|(s, p)| (*s, p.shift(1))).collect(),
        ))
    }

    /// Torsion flag and the least `d` with `U^d·class = 0` (`None` when not torsion).
    pub fn is_u_torsion(&self, c: &ClassCoordinates) -> (bool, Option<u32>) {
        let mut d = 0;
        for (s, p) in &c.0 {
            match self.summands[*s].order {
                None if self.mode == Mode::F2U => return (false, None),
                None => d = d.max(1),
                Some(k) => d = d.max(k - p.valuation().unwrap_or(k)),
            }
        }
        (true, Some(d))
    }
}

/// Homology over the coefficient ring of the complex, by cancelling arrows of
/// least U-power and splitting off the resulting pairs.
pub fn homology(c: &UComplex) -> HomologyModule {
    let n = c.generators.len();
    let names: Vec<String> = c.generators.iter().map(|g| g.name.clone()).collect();
    // cols[x] = ∂x, rows[y] = sources hitting y
    let mut cols: Vec<BTreeMap<usize, UPoly>> = c.adjacency();
    if c.mode == Mode::F2 {
        for m in &mut cols {
            m.retain(|_, p| p.coeff(0));
        }
    }
    let mut rows: Vec<BTreeMap<usize, UPoly>> = vec![BTreeMap::new(); n];
    for (x, img) in cols.iter().enumerate() {
        for (y, p) in img {
            rows[*y].insert(x, p.clone());
        }
    }
    let mut old_in_new: Vec<BTreeMap<usize, UPoly>> = (0..n)
        .map(|i| BTreeMap::from([(i, UPoly::one())]))
        .collect();
    // columns of old_in_new, for cheap column operations
    let mut old_cols: Vec<BTreeMap<usize, UPoly>> = (0..n)
        .map(|i| BTreeMap::from([(i, UPoly::one())]))
        .collect();
    let mut alive = vec![true; n];
    let mut pairs: Vec<(usize, usize, u32)> = Vec::new();

    // basis change e_z ↦ e_z + f·e_x
    let change = |cols: &mut Vec<BTreeMap<usize, UPoly>>,
                  rows: &mut Vec<BTreeMap<usize, UPoly>>,
                  old_in_new: &mut Vec<BTreeMap<usize, UPoly>>,
                  old_cols: &mut Vec<BTreeMap<usize, UPoly>>,
                  z: usize,
                  x: usize,
                  f: &UPoly| {
        // column z += f·column x
        let col_x: Vec<(usize, UPoly)> = cols[x].iter().map(|(k, v)| (*k, v.clone())).collect();
        for (r, v) in col_x {
            add_entry(cols, rows, r, z, &(f * &v));
        }
        // row x += f·row z
        let row_z: Vec<(usize, UPoly)> = rows[z].iter().map(|(k, v)| (*k, v.clone())).collect();
        for (col, v) in row_z {
            add_entry(cols, rows, x, col, &(f * &v));
        }
        // coordinates: coord_x += f·coord_z
        let oc: Vec<(usize, UPoly)> = old_cols[z].iter().map(|(k, v)| (*k, v.clone())).collect();
        for (i, v) in oc {
            let add = f * &v;
            let e = old_in_new[i].entry(x).or_default();
            *e = std::mem::take(e) + add.clone();
            if e.is_zero() {
                old_in_new[i].remove(&x);
            }
            let e = old_cols[x].entry(i).or_default();
            *e = std::mem::take(e) + add;
            if e.is_zero() {
                old_cols[x].remove(&i);
            }
        }
    };

    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for x in (0..n).filter(|&x| alive[x]) {
            for (y, p) in &cols[x] {
                if !alive[*y] {
                    continue;
                }
                let v = p.valuation().expect("nonzero entry");
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, x, *y));
                }
            }
        }
        let Some((k, x, y)) = best else { break };
        let pivot = UPoly::monomial(k);
        // clear the rest of row y: other sources z hitting y
        let others: Vec<(usize, UPoly)> = rows[y]
            .iter()
            .filter(|(z, _)| **z != x)
            .map(|(z, p)| (*z, p.clone()))
            .collect();
        for (z, p) in others {
            let (quo, _) = p.div_rem(&pivot);
            change(
                &mut cols,
                &mut rows,
                &mut old_in_new,
                &mut old_cols,
                z,
                x,
                &quo,
            );
        }
        // clear the rest of column x: replace y by y + f·w
        let targets: Vec<(usize, UPoly)> = cols[x]
            .iter()
            .filter(|(w, _)| **w != y)
            .map(|(w, p)| (*w, p.clone()))
            .collect();
        for (w, p) in targets {
            let (quo, _) = p.div_rem(&pivot);
            change(
                &mut cols,
                &mut rows,
                &mut old_in_new,
                &mut old_cols,
                y,
                w,
                &quo,
            );
        }
        alive[x] = false;
        alive[y] = false;
        pairs.push((x, y, k));
    }

    let mut summands = Vec::new();
    let mut summand_basis = Vec::new();
    let mut free_towers = Vec::new();
    let mut torsion = Vec::new();
    let spec = |i: usize, order: Option<u32>| Summand {
        generator: names[i].clone(),
        alexander: c.generators[i].alexander.clone(),
        maslov: c.generators[i].maslov,
        order,
    };
    let mut order_of: BTreeMap<usize, Option<u32>> = BTreeMap::new();
    for i in (0..n).filter(|&i| alive[i]) {
        order_of.insert(i, if c.mode == Mode::F2 { Some(1) } else { None });
    }
    for &(_, y, k) in &pairs {
        if k > 0 {
            order_of.insert(y, Some(k));
        }
    }
    for (i, order) in order_of {
        let s = summands.len();
        summands.push(spec(i, order));
        summand_basis.push(i);
        match order {
            None => free_towers.push(s),
            Some(_) if c.mode == Mode::F2 => torsion.push(s),
            Some(_) => torsion.push(s),
        }
    }
    let mut h = HomologyModule {
        mode: c.mode,
        free_towers,
        torsion,
        summands,
        old_in_new,
        summand_basis,
        names,
        class_coordinates: Vec::new(),
    };
    if !c.marked.is_empty() {
        if let Ok(Some(coords)) = class_of_inner(c, &h, &c.marked_chain()) {
            h.class_coordinates.push((c.marked.join("+"), coords));
        }
    }
    h
}

fn add_entry(
    cols: &mut [BTreeMap<usize, UPoly>],
    rows: &mut [BTreeMap<usize, UPoly>],
    r: usize,
    col: usize,
    v: &UPoly,
) {
    if v.is_zero() {
        return;
    }
    let e = cols[col].entry(r).or_default();
    *e = std::mem::take(e) + v.clone();
    let zero = e.is_zero();
    if zero {
        cols[col].remove(&r);
    }
    let e = rows[r].entry(col).or_default();
    *e = std::mem::take(e) + v.clone();
    if zero {
        rows[r].remove(&col);
    }
}

fn class_of_inner(
    c: &UComplex,
    h: &HomologyModule,
    cycle: &Chain,
) -> Result<Option<ClassCoordinates>, ComplexError> {
    if !c.is_cycle(cycle)? {
        return Err(ComplexError::NotACycle);
    }
    let v = c.dense(cycle)?;
    let mut coords: BTreeMap<usize, UPoly> = BTreeMap::new();
    for (i, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in &h.old_in_new[i] {
            let e = coords.entry(*j).or_default();
            *e = std::mem::take(e) + (p * q);
        }
    }
    let mut out = BTreeMap::new();
    for (s, &b) in h.summand_basis.iter().enumerate() {
        if let Some(p) = coords.get(&b) {
            out.insert(s, p.clone());
        }
    }
    Ok(Some(h.reduce(ClassCoordinates(out))))
}

/// Homology class of a cycle; zero coordinates iff the cycle bounds.
pub fn class_of(
    c: &UComplex,
    h: &HomologyModule,
    cycle: &Chain,
) -> Result<ClassCoordinates, ComplexError> {
    debug_assert_eq!(h.names.len(), c.generators.len());
    Ok(class_of_inner(c, h, cycle)?.unwrap_or_default())
}

pub fn is_u_torsion(h: &HomologyModule, class: &ClassCoordinates) -> (bool, Option<u32>) {
    h.is_u_torsion(class)
}

/// The complex with `U = 1`: an F₂ complex graded by `M − 2A` when Maslov data is present.
pub fn set_u_one(c: &UComplex) -> UComplex {
    let generators = c
        .generators
        .iter()
        .map(|g| GeneratorSpec {
            name: g.name.clone(),
            alexander: Alexander::single(0),
            maslov: g.maslov.map(|m| m - 2 * g.alexander.total()),
        })
        .collect();
    let mut coeffs: BTreeMap<(String, String), bool> = BTreeMap::new();
    for a in &c.arrows {
        *coeffs.entry((a.from.clone(), a.to.clone())).or_default() ^= true;
    }
    let arrows = coeffs
        .into_iter()
        .filter(|(_, on)| *on)
        .map(|((from, to), _)| Arrow { from, to, u: 0 })
        .collect();
    UComplex::new(Mode::F2, generators, arrows, c.marked.clone())
        .expect("U = 1 specialization is a complex")
}

/// Image of a chain under `U ↦ 1`.
pub fn u_one_image(cycle: &Chain) -> Chain {
    let mut out = Chain::default();
    for (n, p) in &cycle.0 {
        if p.at_one() {
            out.add(n, UPoly::one());
        }
    }
    out
}

pub fn tensor_name(a: &str, b: &str) -> String {
    format!("{a}*{b}")
}

pub fn tensor(c1: &UComplex, c2: &UComplex) -> Result<UComplex, ComplexError> {
    if c1.mode != c2.mode {
        return Err(ComplexError::ModeMismatch);
    }
    let mut generators = Vec::new();
    for a in &c1.generators {
        for b in &c2.generators {
            generators.push(GeneratorSpec {
                name: tensor_name(&a.name, &b.name),
                alexander: a.alexander.concat(&b.alexander),
                maslov: a.maslov.zip(b.maslov).map(|(x, y)| x + y),
            });
        }
    }
    let mut arrows = Vec::new();
    for ar in &c1.arrows {
        for b in &c2.generators {
            arrows.push(Arrow {
                from: tensor_name(&ar.from, &b.name),
                to: tensor_name(&ar.to, &b.name),
                u: ar.u,
            });
        }
    }
    for a in &c1.generators {
        for ar in &c2.arrows {
            arrows.push(Arrow {
                from: tensor_name(&a.name, &ar.from),
                to: tensor_name(&a.name, &ar.to),
                u: ar.u,
            });
        }
    }
    let marked = c1
        .marked
        .iter()
        .flat_map(|a| c2.marked.iter().map(move |b| tensor_name(a, b)))
        .collect();
    UComplex::new(c1.mode, generators, arrows, marked)
}

pub fn quotient_by_subcomplex<S: AsRef<str>>(
    c: &UComplex,
    gens: &[S],
) -> Result<UComplex, ComplexError> {
    let sub: Vec<&str> = gens.iter().map(AsRef::as_ref).collect();
    for g in &sub {
        c.gen(g)?;
    }
    let leaving: Vec<String> = c
        .arrows
        .iter()
        .filter(|a| sub.contains(&a.from.as_str()) && !sub.contains(&a.to.as_str()))
        .map(|a| a.from.clone())
        .collect();
    if !leaving.is_empty() {
        return Err(ComplexError::NotSubcomplex(leaving));
    }
    let generators = c
        .generators
        .iter()
        .filter(|g| !sub.contains(&g.name.as_str()))
        .cloned()
        .collect();
    let arrows = c
        .arrows
        .iter()
        .filter(|a| !sub.contains(&a.from.as_str()) && !sub.contains(&a.to.as_str()))
        .cloned()
        .collect();
    let marked = c
        .marked
        .iter()
        .filter(|m| !sub.contains(&m.as_str()))
        .cloned()
        .collect();
    UComplex::new(c.mode, generators, arrows, marked)
}

/// The three-generator model of a stabilized unknot, `∂TV = PX₁ + U·PX₂`,
/// marked by the first or second basepoint.
pub fn stabilized_unknot(marking: StabMarking) -> UComplex {
    let g = |name: &str, a: i64, m: i64| GeneratorSpec {
        name: name.into(),
        alexander: Alexander::single(a),
        maslov: Some(m),
    };
    let marked = match marking {
        StabMarking::W1 => vec!["PX1".to_string()],
        StabMarking::W2 => vec!["PX2".to_string()],
    };
    UComplex::new(
        Mode::F2U,
        vec![g("PX1", -1, -2), g("PX2", 0, 0), g("TV", -1, -1)],
        vec![
            Arrow {
                from: "TV".into(),
                to: "PX1".into(),
                u: 0,
            },
            Arrow {
                from: "TV".into(),
                to: "PX2".into(),
                u: 1,
            },
        ],
        marked,
    )
    .expect("stabilized unknot model is a complex")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabMarking {
    /// Positive stabilization: the class picks up a factor of U.
    W1,
    /// Negative stabilization: the class is unchanged.
    W2,
}
