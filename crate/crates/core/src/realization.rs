//! Exact realization of hypergraph polytopes.
//!
//! The polytope of a connected hypergraph on `H` lies in the hyperplane
//! `Σ_H x = 3^|H|` and is cut by the half-spaces `Σ_A x ≥ 3^|A|` for every
//! connected proper subset `A`. Vertices come from constructions by a
//! triangular solve; everything is big-integer or rational.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructs::{self, enumerate_constructs_limited, Construct, ConstructError};
use crate::hypergraph::{AtomSet, Hypergraph};
use crate::nestedsets::psi;

/// Cap on witnesses listed per failure class in a report.
pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("{0} is not a construction")]
    NotConstruction(String),
    #[error("vertex of {construction} is not strictly inside the half-space of {set}")]
    NotStrict { construction: String, set: String },
}

pub fn pow3(k: usize) -> BigInt {
    num::pow(BigInt::from(3), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Equality,
    AtLeast,
}

/// `Σ_{i ∈ support} x_i (= or ≥) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub support: AtomSet,
    pub rhs: BigInt,
    pub kind: ConstraintKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpaceSystem {
    pub constraints: Vec<LinearConstraint>,
}

pub fn hrep(h: &Hypergraph) -> HalfSpaceSystem {
    let mut constraints = vec![LinearConstraint {
        support: h.carrier(),
        rhs: pow3(h.carrier().len()),
        kind: ConstraintKind::Equality,
    }];
    for y in h.saturated_sets() {
        if y != h.carrier() {
            constraints.push(LinearConstraint { support: y, rhs: pow3(y.len()), kind: ConstraintKind::AtLeast });
        }
    }
    HalfSpaceSystem { constraints }
}

impl HalfSpaceSystem {
    pub fn equality(&self) -> &LinearConstraint {
        &self.constraints[0]
    }

    pub fn inequalities(&self) -> &[LinearConstraint] {
        &self.constraints[1..]
    }

    /// One constraint per line, `x + y >= 9`.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            let op = match c.kind {
                ConstraintKind::Equality => "==",
                ConstraintKind::AtLeast => ">=",
            };
            out.push_str(&format!("{} {op} {}\n", h.names(c.support).join(" + "), c.rhs));
        }
        out
    }

    pub fn to_json(&self, h: &Hypergraph) -> Value {
        let cs: Vec<Value> = self
            .constraints
            .iter()
            .map(|c| {
                json!({
                    "support": h.names(c.support),
                    "kind": match c.kind { ConstraintKind::Equality => "eq", ConstraintKind::AtLeast => "ge" },
                    "rhs": c.rhs.to_string(),
                })
            })
            .collect();
        json!({ "format": 1, "carrier": h.names(h.carrier()), "constraints": cs })
    }
}

/// Exact coordinates indexed by atom; atoms outside the carrier stay zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn sum(&self, s: AtomSet) -> BigRational {
        s.iter().map(|i| self.coords[i].clone()).sum()
    }

    /// Coordinates over the carrier as `p/q` strings.
    pub fn to_strings(&self, h: &Hypergraph) -> Vec<String> {
        h.carrier().iter().map(|i| fmt_rational(&self.coords[i])).collect()
    }
}

pub fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rat(k: BigInt) -> BigRational {
    BigRational::from_integer(k)
}

/// The vertex named by a construction: at each node `x_a = 3^|span| − Σ 3^|child span|`.
pub fn vertex_of_construction(h: &Hypergraph, v: &Construct) -> Result<RationalPoint, RealizationError> {
    if !v.is_construction() || !v.belongs_to(h) {
        return Err(RealizationError::NotConstruction(v.to_text(h)));
    }
    let mut coords = vec![BigRational::zero(); h.labels().len()];
    for node in v.nodes() {
        let below: BigInt = node.children().iter().map(|c| pow3(c.span().len())).sum();
        let a = node.decoration().least().unwrap();
        coords[a] = rat(pow3(node.span().len()) - below);
    }
    let p = RationalPoint { coords };
    let tight = psi(v);
    for y in h.saturated_sets() {
        if !tight.contains(&y) && p.sum(y) <= rat(pow3(y.len())) {
            return Err(RealizationError::NotStrict { construction: v.to_text(h), set: h.fmt_set(y) });
        }
    }
    Ok(p)
}

/// Solves a square system exactly; `None` when singular.
pub fn solve_exact(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rows.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[col][col];
                for c in col..n {
                    let d = &f * &rows[col][c];
                    rows[r][c] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &rows[i][i]).collect())
}

/// Rank of a list of vectors, by exact elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        for i in r + 1..rows.len() {
            if !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                for c in col..width {
                    let d = &f * &rows[r][c];
                    rows[i][c] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Vertices of the face named by `t`.
pub fn face_vertex_set(h: &Hypergraph, t: &Construct) -> Result<BTreeSet<RationalPoint>, RealizationError> {
    constructs::vertices_below(h, t)?
        .iter()
        .map(|v| vertex_of_construction(h, v))
        .collect()
}

/// Construct counts by dimension, vertices first.
pub fn f_vector(h: &Hypergraph, limit: usize) -> Result<Vec<usize>, ConstructError> {
    let all = enumerate_constructs_limited(h, limit)?;
    let n = h.carrier().len();
    let mut out = vec![0; n];
    for t in &all {
        out[n - t.node_count()] += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub constructs: usize,
    pub vertices: usize,
    pub facets: usize,
    pub dimension: usize,
    /// Failure class → up to [`MAX_WITNESSES`] witnesses.
    pub failures: BTreeMap<String, Vec<String>>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, class: &str, witness: String) {
        let w = self.failures.entry(class.to_string()).or_default();
        if w.len() < MAX_WITNESSES {
            w.push(witness);
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "constructs {}\nvertices {}\nfacets {}\ndimension {}\n",
            self.constructs, self.vertices, self.facets, self.dimension
        );
        if self.passed() {
            out.push_str("PASS\n");
        } else {
            for (class, ws) in &self.failures {
                out.push_str(&format!("FAIL {class}\n"));
                for w in ws {
                    out.push_str(&format!("  {w}\n"));
                }
            }
        }
        out
    }
}

/// Checks that the combinatorial face order matches the geometric one.
pub fn verify_isomorphism(h: &Hypergraph, limit: usize) -> Result<IsomorphismReport, ConstructError> {
    let all = enumerate_constructs_limited(h, limit)?;
    let n = h.carrier().len();
    let mut rep = IsomorphismReport { constructs: all.len(), ..Default::default() };
    let system = hrep(h);
    let facets: Vec<AtomSet> = system.inequalities().iter().map(|c| c.support).collect();

    let verts: Vec<&Construct> = all.iter().filter(|t| t.is_construction()).collect();
    rep.vertices = verts.len();
    let mut points = Vec::new();
    for v in &verts {
        match vertex_of_construction(h, v) {
            Ok(p) => points.push(p),
            Err(e) => {
                rep.fail("strictness", e.to_string());
                return Ok(rep);
            }
        }
    }
    let index: BTreeMap<&RationalPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index.len() != points.len() {
        rep.fail("distinct vertices", "two constructions share a point".into());
    }

    let tight: Vec<BTreeSet<AtomSet>> = points
        .iter()
        .map(|p| facets.iter().copied().filter(|&y| p.sum(y) == rat(pow3(y.len()))).collect())
        .collect();
    for ((v, t), p) in verts.iter().zip(&tight).zip(&points) {
        let named: BTreeSet<AtomSet> = psi(v).into_iter().filter(|&y| y != h.carrier()).collect();
        if *t != named || t.len() != n - 1 {
            rep.fail("simplicity", format!("{} is tight on {} facets", v.to_text(h), t.len()));
        }
        if p.sum(h.carrier()) != rat(pow3(n)) {
            rep.fail("equality", v.to_text(h));
        }
    }

    let mut faces: Vec<BTreeSet<usize>> = Vec::with_capacity(all.len());
    for t in &all {
        let combinatorial: BTreeSet<usize> = match face_vertex_set(h, t) {
            Ok(s) => s.iter().map(|p| index[p]).collect(),
            Err(e) => {
                rep.fail("face vertices", format!("{}: {e}", t.to_text(h)));
                BTreeSet::new()
            }
        };
        let named: Vec<AtomSet> = psi(t).into_iter().filter(|&y| y != h.carrier()).collect();
        let geometric: BTreeSet<usize> = (0..points.len())
            .filter(|&i| named.iter().all(|y| tight[i].contains(y)))
            .collect();
        if combinatorial != geometric {
            rep.fail("face vertices", t.to_text(h));
        }
        faces.push(combinatorial);
    }

    let mut distinct = BTreeMap::new();
    for (t, f) in all.iter().zip(&faces) {
        if let Some(prev) = distinct.insert(f.clone(), t) {
            rep.fail("distinct faces", format!("{} and {}", prev.to_text(h), t.to_text(h)));
        }
    }
    for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate() {
            let comb = constructs::leq(h, s, t, constructs::Order::V2)?;
            let geo = faces[i].is_subset(&faces[j]);
            if comb != geo {
                rep.fail("order", format!("{} vs {}", s.to_text(h), t.to_text(h)));
            }
        }
    }

    let origin = &points[0];
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| h.carrier().iter().map(|i| &p.coords[i] - &origin.coords[i]).collect())
        .collect();
    rep.dimension = rank(diffs);
    if rep.dimension != n - 1 {
        rep.fail("dimension", format!("affine hull has dimension {}", rep.dimension));
    }

    let facet_faces: Vec<&BTreeSet<usize>> =
        all.iter().zip(&faces).filter(|(t, _)| t.node_count() == 2).map(|(_, f)| f).collect();
    rep.facets = facet_faces.len();
    if rep.facets != facets.len() {
        rep.fail("facets", format!("{} facets for {} connected proper subsets", rep.facets, facets.len()));
    }
    for (i, a) in facet_faces.iter().enumerate() {
        for (j, b) in facet_faces.iter().enumerate() {
            if i != j && a.is_subset(b) {
                rep.fail("facets", format!("facet {i} inside facet {j}"));
            }
        }
    }
    Ok(rep)
}

/// Vertex table as JSON: construction text → coordinates.
pub fn vertices_json(h: &Hypergraph, limit: usize) -> Result<Value, RealizationError> {
    let mut map = serde_json::Map::new();
    for v in constructs::enumerate_constructions_limited(h, limit)? {
        let p = vertex_of_construction(h, &v)?;
        map.insert(v.to_text(h), json!(p.to_strings(h)));
    }
    Ok(json!({ "format": 1, "carrier": h.names(h.carrier()), "vertices": map }))
}

/// Whether a point satisfies every constraint, with strictness per inequality.
pub fn evaluate(system: &HalfSpaceSystem, p: &RationalPoint) -> (bool, Vec<bool>) {
    let eq = p.sum(system.equality().support) == rat(system.equality().rhs.clone());
    let strict = system
        .inequalities()
        .iter()
        .map(|c| (p.sum(c.support) - rat(c.rhs.clone())).is_positive())
        .collect();
    let ok = system.inequalities().iter().all(|c| p.sum(c.support) >= rat(c.rhs.clone()));
    (eq && ok, strict)
}

/// The barycentre-like point with all coordinates `3^n / n`.
pub fn central_point(h: &Hypergraph) -> RationalPoint {
    let n = h.carrier().len();
    let mut coords = vec![BigRational::zero(); h.labels().len()];
    for i in h.carrier().iter() {
        coords[i] = BigRational::new(pow3(n), BigInt::from(n));
    }
    RationalPoint { coords }
}
