//! Groebner bases for submodules of free modules, normal forms, syzygies, and
//! bounded free resolutions over the quotient ring.
//!
//! Module terms are ordered position-over-term: a term in a lower component
//! index beats any term in a higher one, and ties are broken by the ring's
//! monomial order. Quotient-ring computations adjoin the relation generators
//! (times each free basis vector) and run plain Buchberger over the ambient
//! polynomial ring; the position-over-term order then doubles as an
//! elimination order for kernel computations.

use crate::error::{Error, Result};
use crate::freemod::{FreeModuleMap, Vector};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::QuotientRing;
use std::cmp::Ordering;

/// Step budgets for the symbolic kernels. Exceeding one aborts the whole
/// computation; no partial state is returned.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_resolution_length: usize,
    pub max_pairs: usize,
}

impl Limits {
    pub fn for_vars(nvars: usize) -> Self {
        Limits {
            max_resolution_length: nvars + 4,
            max_pairs: 400_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<Vector>,
    pub rank: usize,
    pub reduced: bool,
}

/// Leading term of a vector: (component, monomial, coefficient).
fn lead_of(v: &Vector) -> Option<(usize, &Monomial, u64)> {
    for (c, p) in v.comps.iter().enumerate() {
        if let Some((m, a)) = p.lead() {
            return Some((c, m, a));
        }
    }
    None
}

fn term_cmp(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ring.order.cmp(a.1, b.1),
    }
}

/// Full normal form of `v` against `basis`: no remaining term is divisible by
/// any basis leading term.
pub fn reduce_vector(ring: &PolyRing, v: &Vector, basis: &[Vector]) -> Vector {
    let mut rem = Vector::zero(ring, v.rank());
    let mut work = v.clone();
    let leads: Vec<Option<(usize, Monomial, u64)>> = basis
        .iter()
        .map(|g| lead_of(g).map(|(c, m, a)| (c, m.clone(), a)))
        .collect();
    'outer: while let Some((c, m, a)) = lead_of(&work).map(|(c, m, a)| (c, m.clone(), a)) {
        for (g, lead) in basis.iter().zip(&leads) {
            if let Some((gc, gm, ga)) = lead {
                if *gc == c && gm.divides(&m) {
                    let q = gm.quotient(&m);
                    let factor = ring.field.div(a, *ga);
                    work = work.sub(ring, &g.mul_term(ring, &q, factor));
                    continue 'outer;
                }
            }
        }
        // Irreducible leading term: move it to the remainder.
        let t = ring.monomial(m.clone(), a);
        rem.comps[c] = ring.add(&rem.comps[c], &t);
        work.comps[c] = ring.sub(&work.comps[c], &t);
    }
    rem
}

fn monic_vector(ring: &PolyRing, v: &Vector) -> Vector {
    match lead_of(v) {
        None => v.clone(),
        Some((_, _, a)) => {
            let inv = ring.field.inv(a);
            Vector {
                comps: v.comps.iter().map(|p| ring.scale(p, inv)).collect(),
            }
        }
    }
}

/// Buchberger over the ambient polynomial ring. Pair selection: smallest lcm
/// degree first, ties by pair index, so output is deterministic.
pub fn buchberger_raw(
    ring: &PolyRing,
    gens: &[Vector],
    limits: &Limits,
) -> Result<Vec<Vector>> {
    let mut basis: Vec<Vector> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(monic_vector(ring, g));
        }
    }

    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    let add_pairs = |pairs: &mut Vec<(u64, usize, usize)>, basis: &[Vector], j: usize| {
        let (jc, jm, _) = lead_of(&basis[j]).unwrap();
        for (i, g) in basis.iter().enumerate().take(j) {
            let (ic, im, _) = lead_of(g).unwrap();
            if ic == jc {
                pairs.push((im.lcm(jm).degree(), i, j));
            }
        }
    };
    for j in 0..basis.len() {
        add_pairs(&mut pairs, &basis, j);
    }

    let mut steps = 0usize;
    while let Some(best) = pairs.iter().copied().min() {
        pairs.retain(|p| *p != best);
        steps += 1;
        if steps > limits.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "more than {} S-pair reductions",
                limits.max_pairs
            )));
        }
        let (_, i, j) = best;
        let (ic, im, _) = lead_of(&basis[i]).unwrap();
        let (_, jm, _) = lead_of(&basis[j]).unwrap();
        let _ = ic;
        let lcm = im.lcm(jm);
        let qi = im.quotient(&lcm);
        let qj = jm.quotient(&lcm);
        let s = basis[i]
            .mul_term(ring, &qi, 1)
            .sub(ring, &basis[j].mul_term(ring, &qj, 1));
        let r = reduce_vector(ring, &s, &basis);
        if !r.is_zero() {
            basis.push(monic_vector(ring, &r));
            add_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    Ok(interreduce(ring, basis))
}

fn interreduce(ring: &PolyRing, mut basis: Vec<Vector>) -> Vec<Vector> {
    basis.sort_by(|a, b| {
        let (ac, am, _) = lead_of(a).unwrap();
        let (bc, bm, _) = lead_of(b).unwrap();
        term_cmp(ring, (ac, am), (bc, bm))
    });
    // Minimalize: drop any element whose lead is divisible by an earlier kept one.
    let mut kept: Vec<Vector> = Vec::new();
    for g in basis {
        let (c, m, _) = lead_of(&g).unwrap();
        let dominated = kept.iter().any(|h| {
            let (hc, hm, _) = lead_of(h).unwrap();
            hc == c && hm.divides(m)
        });
        if !dominated {
            kept.push(g);
        }
    }
    // Tail-reduce each element against the others; leads are untouched.
    let snapshot = kept.clone();
    for (idx, g) in kept.iter_mut().enumerate() {
        let others: Vec<Vector> = snapshot
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, h)| h.clone())
            .collect();
        *g = monic_vector(ring, &reduce_vector(ring, g, &others));
    }
    kept
}

/// Adjoined relation columns for a rank-`rank` free module over `ring`.
fn relation_columns(ring: &QuotientRing, rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for rel in &ring.relations {
        for c in 0..rank {
            let mut v = Vector::zero(&ring.poly, rank);
            v.comps[c] = rel.clone();
            out.push(v);
        }
    }
    out
}

/// Reduced Groebner basis of the submodule spanned by `gens` inside the free
/// module of the given rank over the quotient ring.
pub fn buchberger(
    ring: &QuotientRing,
    gens: &[Vector],
    rank: usize,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: g.rank(),
            });
        }
    }
    let mut all = gens.to_vec();
    all.extend(relation_columns(ring, rank));
    let elements = buchberger_raw(&ring.poly, &all, limits)?;
    Ok(GroebnerBasis {
        elements,
        rank,
        reduced: true,
    })
}

/// Rank-1 convenience: Groebner basis of an ideal of the quotient ring.
pub fn buchberger_ideal(
    ring: &QuotientRing,
    gens: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let vecs: Vec<Vector> = gens.iter().map(|g| Vector::scalar(g.clone())).collect();
    let gb = buchberger(ring, &vecs, 1, limits)?;
    Ok(gb
        .elements
        .into_iter()
        .map(|v| v.comps.into_iter().next().unwrap())
        .collect())
}

pub fn normal_form(ring: &QuotientRing, v: &Vector, gb: &GroebnerBasis) -> Result<Vector> {
    if v.rank() != gb.rank {
        return Err(Error::RankMismatch {
            expected: gb.rank,
            got: v.rank(),
        });
    }
    Ok(reduce_vector(&ring.poly, v, &gb.elements))
}

pub fn normal_form_poly(ring: &QuotientRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let vecs: Vec<Vector> = basis.iter().map(|g| Vector::scalar(g.clone())).collect();
    reduce_vector(&ring.poly, &Vector::scalar(f.clone()), &vecs)
        .comps
        .into_iter()
        .next()
        .unwrap()
}

/// Independent re-check of the Buchberger criterion: every S-pair of `elements`
/// reduces to zero against `elements`.
pub fn is_groebner_basis(ring: &PolyRing, elements: &[Vector]) -> bool {
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            let (Some((ic, im, ia)), Some((jc, jm, ja))) =
                (lead_of(&elements[i]), lead_of(&elements[j]))
            else {
                continue;
            };
            if ic != jc {
                continue;
            }
            let lcm = im.lcm(jm);
            let qi = im.quotient(&lcm);
            let qj = jm.quotient(&lcm);
            let s = elements[i]
                .mul_term(ring, &qi, ring.field.inv(ia))
                .sub(ring, &elements[j].mul_term(ring, &qj, ring.field.inv(ja)));
            if !reduce_vector(ring, &s, elements).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Generators of `{ u | map(u) lies in the span of denom + relations }`,
/// computed by an elimination Groebner basis in the direct sum of target and
/// source: tracked columns carry a unit tag in the source block, and basis
/// elements with vanishing target block project onto kernel generators.
pub(crate) fn kernel_with_denominators(
    ring: &QuotientRing,
    cols: &[Vector],
    target: usize,
    denom: &[Vector],
    limits: &Limits,
) -> Result<Vec<Vector>> {
    let s = cols.len();
    let total = target + s;
    let poly = &ring.poly;
    let mut gens: Vec<Vector> = Vec::new();
    for (i, col) in cols.iter().enumerate() {
        debug_assert_eq!(col.rank(), target);
        let mut comps = col.comps.clone();
        comps.extend((0..s).map(|k| if k == i { poly.one() } else { poly.zero() }));
        gens.push(Vector { comps });
    }
    for d in denom {
        debug_assert_eq!(d.rank(), target);
        let mut comps = d.comps.clone();
        comps.extend((0..s).map(|_| poly.zero()));
        gens.push(Vector { comps });
    }
    for rel in &ring.relations {
        for c in 0..target {
            let mut comps = vec![poly.zero(); total];
            comps[c] = rel.clone();
            gens.push(Vector { comps });
        }
    }
    let gb = buchberger_raw(poly, &gens, limits)?;
    let mut out = Vec::new();
    for g in gb {
        if g.comps[..target].iter().all(|p| p.is_zero()) {
            let lower = Vector {
                comps: g.comps[target..]
                    .iter()
                    .map(|p| ring.nf(p))
                    .collect(),
            };
            if !lower.is_zero() {
                out.push(lower);
            }
        }
    }
    Ok(out)
}

/// A map whose image is exactly the kernel of the input map, over the
/// quotient ring.
pub fn syzygies(ring: &QuotientRing, map: &FreeModuleMap, limits: &Limits) -> Result<FreeModuleMap> {
    let cols = kernel_with_denominators(ring, &map.cols, map.target, &[], limits)?;
    Ok(FreeModuleMap::new(map.source, cols))
}

/// Generators of the preimage `{ u | map(u) ∈ span(denom) }` in the source.
pub fn kernel_modulo(
    ring: &QuotientRing,
    map: &FreeModuleMap,
    denom: &[Vector],
    limits: &Limits,
) -> Result<FreeModuleMap> {
    let cols = kernel_with_denominators(ring, &map.cols, map.target, denom, limits)?;
    Ok(FreeModuleMap::new(map.source, cols))
}

#[derive(Clone, Debug)]
pub struct ResolutionPrefix {
    pub target: PresentedModule,
    /// d_1, ..., d_len with d_1 the (cleaned) presentation map.
    pub maps: Vec<FreeModuleMap>,
    pub complete: bool,
}

impl ResolutionPrefix {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Ranks of F_0, ..., F_len.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![self.target.generators];
        out.extend(self.maps.iter().map(|m| m.source));
        out
    }
}

/// Iterated syzygies from the presentation. `complete` is set when a zero
/// kernel is reached at or before the requested length.
pub fn free_resolution(
    ring: &QuotientRing,
    module: &PresentedModule,
    length: usize,
    limits: &Limits,
) -> Result<ResolutionPrefix> {
    let mut maps: Vec<FreeModuleMap> = Vec::new();
    let mut complete = false;

    // Clean the presentation: reduce entries, drop zero columns.
    let cleaned: Vec<Vector> = module
        .relations
        .cols
        .iter()
        .map(|c| Vector {
            comps: c.comps.iter().map(|p| ring.nf(p)).collect(),
        })
        .filter(|c| !c.is_zero())
        .collect();
    let d1 = FreeModuleMap::new(module.generators, cleaned);

    if module.generators == 0 || d1.source == 0 {
        return Ok(ResolutionPrefix {
            target: module.clone(),
            maps,
            complete: true,
        });
    }

    maps.push(d1);
    while maps.len() < length {
        let next = syzygies(ring, maps.last().unwrap(), limits)?;
        if next.source == 0 {
            complete = true;
            break;
        }
        maps.push(next);
    }
    if !complete && maps.len() == length {
        // One extra kernel to detect completion exactly at the requested length.
        if syzygies(ring, maps.last().unwrap(), limits)?.source == 0 {
            complete = true;
        }
    }

    Ok(ResolutionPrefix {
        target: module.clone(),
        maps,
        complete,
    })
}
