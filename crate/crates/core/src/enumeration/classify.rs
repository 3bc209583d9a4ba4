//! Sign classes of a colored support and the full classification pipeline.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::colorings::uniform_colorings;
use super::reference::reference_rows;
use super::regular::regular_graphs;
use crate::error::{Error, Result};
use crate::families::{heisenberg_sum, ring_algebra, ring_to_heisenberg_sum_witness};
use crate::graph::{validate_uniform, ColoredDigraph};
use crate::lie::{check_witness, sign_class_representatives, signed_perm_isomorphic, IsoWitness, SignVector, StructureTensor};
use crate::par::{self, Budget, Exec};

/// Diagonal orbits of one support merged under signed permutations.
#[derive(Debug, Clone)]
pub struct SignClass {
    /// Indices into [`SignClassReport::orbits`]; the first is the
    /// representative.
    pub orbits: Vec<usize>,
    pub representative: StructureTensor,
    /// Signed permutation from the representative onto each member orbit.
    pub witnesses: Vec<IsoWitness>,
    pub heisenberg_type: bool,
    pub nonsingular: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct SignClassReport {
    pub support: ColoredDigraph,
    pub orbits: Vec<SignVector>,
    pub classes: Vec<SignClass>,
}

/// Orbit representatives of all sign choices on the canonical orientation of
/// `g`, merged by signed permutation isomorphism (leader comparison).
pub fn sign_class_report(g: &ColoredDigraph, exec: Exec, budget: &Budget) -> Result<SignClassReport> {
    let support = g.canonical_orientation();
    let base = StructureTensor::from_graph(&support);
    base.require_uniform()?;
    let orbits = sign_class_representatives(&support)?;
    let mut classes: Vec<SignClass> = Vec::new();
    for (i, signs) in orbits.iter().enumerate() {
        let t = base.with_signs(signs)?;
        let hits = par::try_map(exec, &classes, |c| {
            signed_perm_isomorphic(&c.representative, &t, Exec::Sequential, budget)
        })?;
        match hits.into_iter().enumerate().find_map(|(ci, w)| w.map(|w| (ci, w))) {
            Some((ci, w)) => {
                classes[ci].orbits.push(i);
                classes[ci].witnesses.push(w);
            }
            None => {
                classes.push(SignClass {
                    orbits: vec![i],
                    heisenberg_type: t.is_heisenberg_type()?,
                    nonsingular: t.nonsingular()?,
                    witnesses: vec![IsoWitness::identity(t.q(), t.p())],
                    representative: t,
                });
            }
        }
    }
    Ok(SignClassReport {
        support,
        orbits,
        classes,
    })
}

/// How a classification run enumerates colorings.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    pub exec: Exec,
    /// Direction-sensitive coloring equivalence.
    pub strict: bool,
}

/// Largest `q_max` accepted by [`classify`].
pub const MAX_CLASSIFY_ORDER: usize = 6;

/// One algebra as it arises from a coloring and a sign class.
#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub case: usize,
    pub graph: String,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    /// Number of diagonal sign orbits in this sign class.
    pub orbits: usize,
    pub relations: Vec<String>,
    #[serde(skip)]
    pub tensor: StructureTensor,
}

/// A general linear identification between two presentations, checked
/// exactly.
#[derive(Debug, Clone, Serialize)]
pub struct Identification {
    pub from: usize,
    pub to: usize,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRow {
    pub index: usize,
    pub case: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub family: String,
    /// Sign orbits, over all presentations, that fall into this class.
    pub merged: usize,
    pub presentations: Vec<Presentation>,
    pub identifications: Vec<Identification>,
    /// 1-based indices of the matching known presentations.
    pub references: Vec<usize>,
    pub heisenberg_type: bool,
    pub nonsingular: Option<bool>,
    pub derivation_dimension: Option<usize>,
    #[serde(skip)]
    pub representative: StructureTensor,
}

/// One regular graph with its coloring census.
#[derive(Debug, Clone, Serialize)]
pub struct GraphRow {
    pub case: usize,
    pub s: usize,
    pub q: usize,
    pub graph: String,
    pub colorings: usize,
    pub p_values: Vec<usize>,
    pub strict_colorings: usize,
    pub labeled: u64,
}

/// Two classes with equal `(p, q)` and the invariant telling them apart.
#[derive(Debug, Clone, Serialize)]
pub struct Separation {
    pub first: usize,
    pub second: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub q_max: usize,
    pub graphs: Vec<GraphRow>,
    pub rows: Vec<ClassificationRow>,
    pub separations: Vec<Separation>,
}

/// Identifications known in closed form: source, target and a general
/// linear witness between them.
fn stored_identifications() -> Result<Vec<(StructureTensor, StructureTensor, IsoWitness)>> {
    let from = StructureTensor::from_graph(&ring_algebra(2, true)?);
    let to = StructureTensor::from_graph(&heisenberg_sum()?);
    let w = ring_to_heisenberg_sum_witness();
    if !check_witness(&from, &to, &w)?.ok {
        return Err(Error::InvalidParameter("stored witness does not verify".into()));
    }
    Ok(vec![(from, to, w)])
}

/// A checked isomorphism `a -> b` built from a stored identification and
/// signed permutations on either side.
fn stored_link(
    a: &StructureTensor,
    b: &StructureTensor,
    stored: &[(StructureTensor, StructureTensor, IsoWitness)],
    budget: &Budget,
) -> Result<Option<IsoWitness>> {
    for (from, to, w) in stored {
        if (a.p(), a.q()) != (from.p(), from.q()) || (b.p(), b.q()) != (to.p(), to.q()) {
            continue;
        }
        let Some(first) = signed_perm_isomorphic(a, from, Exec::Sequential, budget)? else {
            continue;
        };
        let Some(last) = signed_perm_isomorphic(to, b, Exec::Sequential, budget)? else {
            continue;
        };
        let composite = last.after(&w.after(&first, a.q())?, a.q())?;
        if check_witness(a, b, &composite)?.ok {
            return Ok(Some(composite));
        }
    }
    Ok(None)
}

/// A checked isomorphism `a -> b`: a signed permutation when one exists,
/// otherwise a composite through a stored identification in either
/// direction. `None` means neither kind of witness was found.
pub fn known_isomorphism(
    a: &StructureTensor,
    b: &StructureTensor,
    exec: Exec,
    budget: &Budget,
) -> Result<Option<IsoWitness>> {
    if let Some(w) = signed_perm_isomorphic(a, b, exec, budget)? {
        return Ok(Some(w));
    }
    let mut stored = stored_identifications()?;
    let reversed: Vec<_> = stored
        .iter()
        .map(|(from, to, w)| {
            let matrix = w.matrix(from.q()).inverse()?;
            let inverse = IsoWitness::GeneralLinear {
                matrix,
                block_respecting: true,
            };
            Ok((to.clone(), from.clone(), inverse))
        })
        .collect::<Result<_>>()?;
    stored.extend(reversed);
    stored_link(a, b, &stored, budget)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Try to match `t` to one of the presentations in `pres`.
fn matches_any(
    t: &StructureTensor,
    pres: &[&Presentation],
    stored: &[(StructureTensor, StructureTensor, IsoWitness)],
    budget: &Budget,
) -> Result<bool> {
    for p in pres {
        if signed_perm_isomorphic(&p.tensor, t, Exec::Sequential, budget)?.is_some() {
            return Ok(true);
        }
    }
    for p in pres {
        if stored_link(&p.tensor, t, stored, budget)?.is_some() || stored_link(t, &p.tensor, stored, budget)?.is_some()
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Enumerate regular graphs with at most `q_max` vertices, their uniform
/// colorings and sign classes, and reduce them to isomorphism classes.
/// Classes that can be neither identified nor separated cause
/// [`Error::Undetermined`].
pub fn classify(q_max: usize, opts: &ClassifyOptions, budget: &Budget) -> Result<Classification> {
    if q_max < 2 {
        return Err(Error::InvalidParameter(format!("q_max must be at least 2, got {q_max}")));
    }
    if q_max > MAX_CLASSIFY_ORDER {
        return Err(Error::TooLarge(format!(
            "classification limited to q_max <= {MAX_CLASSIFY_ORDER}, got {q_max}"
        )));
    }
    let exec = opts.exec;
    let graphs = regular_graphs(q_max, exec, budget)?;
    let censuses = par::try_map(exec, &graphs, |g| uniform_colorings(g, opts.strict, Exec::Sequential, budget))?;

    let mut graph_rows = Vec::new();
    let mut sources: Vec<(usize, String, ColoredDigraph)> = Vec::new();
    for (i, (g, c)) in graphs.iter().zip(&censuses).enumerate() {
        graph_rows.push(GraphRow {
            case: i + 1,
            s: g.regular_degree().unwrap_or(0),
            q: g.order(),
            graph: g.describe(),
            colorings: c.colorings.len(),
            p_values: c.p_values(),
            strict_colorings: c.strict_count,
            labeled: c.labeled,
        });
        for col in &c.colorings {
            sources.push((i + 1, g.describe(), col.clone()));
        }
    }

    let reports = par::try_map(exec, &sources, |(_, _, col)| sign_class_report(col, Exec::Sequential, budget))?;
    let mut nodes: Vec<Presentation> = Vec::new();
    for ((case, name, col), rep) in sources.iter().zip(reports) {
        let u = validate_uniform(col);
        let (p, q, r) = u.pqr().ok_or_else(|| Error::NotUniform(u.to_string()))?;
        let s = u.s.unwrap_or(0);
        for class in rep.classes {
            nodes.push(Presentation {
                case: *case,
                graph: name.clone(),
                p,
                q,
                r,
                s,
                orbits: class.orbits.len(),
                relations: class.representative.bracket_table(),
                tensor: class.representative,
            });
        }
    }

    let stored = stored_identifications()?;
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    let mut identifications: Vec<Identification> = Vec::new();
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        groups.entry((n.p, n.q)).or_default().push(i);
    }
    for members in groups.values() {
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if find(&mut parent, a) == find(&mut parent, b) {
                    continue;
                }
                let (ta, tb) = (&nodes[a].tensor, &nodes[b].tensor);
                let link = match stored_link(ta, tb, &stored, budget)? {
                    Some(w) => Some((a, b, w)),
                    None => stored_link(tb, ta, &stored, budget)?.map(|w| (b, a, w)),
                };
                if let Some((from, to, w)) = link {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                    identifications.push(Identification {
                        from,
                        to,
                        witness: w.describe(nodes[from].q),
                    });
                }
            }
        }
    }

    // Classes in discovery order, keyed by root.
    let mut class_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..nodes.len() {
        let r = find(&mut parent, i);
        class_of.entry(r).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = class_of.into_values().collect();

    // Rigorous invariants, computed on each class leader.
    let leaders: Vec<&StructureTensor> = classes.iter().map(|c| &nodes[c[0]].tensor).collect();
    let mut by_shape: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, c) in classes.iter().enumerate() {
        by_shape.entry((nodes[c[0]].p, nodes[c[0]].q)).or_default().push(ci);
    }
    let crowded: Vec<usize> = by_shape.values().filter(|v| v.len() > 1).flatten().copied().collect();
    let dims = par::try_map(exec, &crowded, |&ci| leaders[ci].derivation_dimension())?;
    let mut der_dim: Vec<Option<usize>> = vec![None; classes.len()];
    for (&ci, d) in crowded.iter().zip(dims) {
        der_dim[ci] = Some(d);
    }
    let nonsingular: Vec<Option<bool>> = leaders.iter().map(|t| t.nonsingular()).collect::<Result<_>>()?;
    let mut separations = Vec::new();
    for members in by_shape.values() {
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                let reason = match (nonsingular[a], nonsingular[b]) {
                    (Some(u), Some(v)) if u != v => Some(("nonsingular", u.to_string(), v.to_string())),
                    _ => None,
                }
                .or_else(|| match (der_dim[a], der_dim[b]) {
                    (Some(u), Some(v)) if u != v => {
                        Some(("derivation algebra dimension", u.to_string(), v.to_string()))
                    }
                    _ => None,
                });
                match reason {
                    Some(reason) => separations.push((a, b, reason)),
                    None => {
                        return Err(Error::Undetermined {
                            first: describe_node(&nodes[classes[a][0]]),
                            second: describe_node(&nodes[classes[b][0]]),
                        })
                    }
                }
            }
        }
    }

    // Match known presentations.
    let refs = reference_rows();
    let mut matched: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    for (ri, row) in refs.iter().enumerate() {
        if row.pqr.1 > q_max {
            continue;
        }
        let t = row.tensor()?;
        for (ci, c) in classes.iter().enumerate() {
            let pres: Vec<&Presentation> = c
                .iter()
                .map(|&i| &nodes[i])
                .filter(|n| (n.p, n.q) == (row.pqr.0, row.pqr.1))
                .collect();
            if !pres.is_empty() && matches_any(&t, &pres, &stored, budget)? {
                matched[ci].push(ri);
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&ci| (matched[ci].first().copied().unwrap_or(usize::MAX), ci));
    let mut position = vec![0; classes.len()];
    for (pos, &ci) in order.iter().enumerate() {
        position[ci] = pos + 1;
    }

    let mut local_index = vec![0; nodes.len()];
    for c in &classes {
        for (k, &i) in c.iter().enumerate() {
            local_index[i] = k + 1;
        }
    }
    let mut nodes: Vec<Option<Presentation>> = nodes.into_iter().map(Some).collect();
    let mut rows: Vec<ClassificationRow> = Vec::new();
    for &ci in &order {
        let members = &classes[ci];
        let pres: Vec<Presentation> = members.iter().filter_map(|&i| nodes[i].take()).collect();
        let lead = &pres[0];
        let family = match matched[ci].first() {
            Some(&ri) => refs[ri].family.to_string(),
            None => format!("uniform({},{},{})", lead.p, lead.q, lead.r),
        };
        let ids = identifications
            .iter()
            .filter(|id| members.contains(&id.from))
            .map(|id| Identification {
                from: local_index[id.from],
                to: local_index[id.to],
                witness: id.witness.clone(),
            })
            .collect();
        rows.push(ClassificationRow {
            index: position[ci],
            case: lead.case,
            p: lead.p,
            q: lead.q,
            r: lead.r,
            s: lead.s,
            family,
            merged: pres.iter().map(|p| p.orbits).sum(),
            identifications: ids,
            references: matched[ci].iter().map(|r| r + 1).collect(),
            heisenberg_type: lead.tensor.is_heisenberg_type()?,
            nonsingular: nonsingular[ci],
            derivation_dimension: der_dim[ci],
            representative: lead.tensor.clone(),
            presentations: pres,
        });
    }
    let separations = separations
        .into_iter()
        .map(|(a, b, (what, u, v))| {
            let (first, second, u, v) = if position[a] < position[b] {
                (position[a], position[b], u, v)
            } else {
                (position[b], position[a], v, u)
            };
            Separation {
                first,
                second,
                reason: format!("{what}: {u} vs {v}"),
            }
        })
        .collect();

    Ok(Classification {
        q_max,
        graphs: graph_rows,
        rows,
        separations,
    })
}

fn describe_node(n: &Presentation) -> String {
    format!(
        "case {} {} ({},{},{}): {}",
        n.case,
        n.graph,
        n.p,
        n.q,
        n.r,
        n.relations.join(", ")
    )
}

fn compact(relations: &[String]) -> String {
    relations
        .iter()
        .map(|r| r.replace(" = +", " = ").replace(' ', ""))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Classification {
    /// Fixed-column table of isomorphism classes.
    pub fn classes_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:>4}  {:<10}  {:>2}  {:>6}  {:<26}  relations",
            "#", "case", "(p,q,r)", "s", "orbits", "family"
        );
        for row in &self.rows {
            for (k, p) in row.presentations.iter().enumerate() {
                let (idx, fam, merged) = if k == 0 {
                    (row.index.to_string(), row.family.as_str(), row.merged.to_string())
                } else {
                    (String::new(), "  =", String::new())
                };
                let _ = writeln!(
                    out,
                    "{:>3}  {:>4}  {:<10}  {:>2}  {:>6}  {:<26}  {}",
                    idx,
                    p.case,
                    format!("({},{},{})", p.p, p.q, p.r),
                    p.s,
                    merged,
                    fam,
                    compact(&p.relations)
                );
            }
        }
        let _ = writeln!(out, "{} isomorphism classes", self.rows.len());
        out
    }

    /// Fixed-column table of regular graphs and coloring counts.
    pub fn graphs_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4}  {:>2}  {:>2}  {:<12}  {:>9}  p",
            "case", "s", "q", "graph", "colorings"
        );
        for g in &self.graphs {
            let ps: Vec<String> = g.p_values.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(
                out,
                "{:>4}  {:>2}  {:>2}  {:<12}  {:>9}  {}",
                g.case,
                g.s,
                g.q,
                g.graph,
                g.colorings,
                ps.join(",")
            );
        }
        out
    }

    pub fn pqr_multiset(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.rows.iter().map(|r| (r.p, r.q, r.r)).collect();
        v.sort_unstable();
        v
    }
}
