//! Tor and Ext via bounded free resolutions, Hom from cyclic modules,
//! annihilators, and localization-vanishing tests.

use crate::error::{Error, Result};
use crate::freemod::{FreeModuleMap, Vector};
use crate::groebner::{
    buchberger_ideal, free_resolution, kernel_modulo, normal_form_poly, Limits, ResolutionPrefix,
};
use crate::complex::homology_of;
use crate::module::PresentedModule;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// Resolution of `m` long enough to read off homological degree `i`, or a
/// truncation error when the budget cannot certify the answer.
fn resolution_for(
    ring: &QuotientRing,
    m: &PresentedModule,
    i: usize,
    limits: &Limits,
) -> Result<ResolutionPrefix> {
    let want = i + 1;
    let len = want.min(limits.max_resolution_length);
    let res = free_resolution(ring, m, len, limits)?;
    if !res.complete && res.len() < want {
        return Err(Error::ResolutionTruncated {
            needed: want,
            allowed: res.len(),
        });
    }
    Ok(res)
}

/// Rank of F_j in the (possibly finished) resolution; zero past the end.
fn res_rank(res: &ResolutionPrefix, j: usize) -> usize {
    let ranks = res.ranks();
    ranks.get(j).copied().unwrap_or(0)
}

/// d_j: F_j -> F_{j-1}; the zero map from a rank-0 source past the end.
fn res_map(res: &ResolutionPrefix, j: usize) -> FreeModuleMap {
    debug_assert!(j >= 1);
    res.maps
        .get(j - 1)
        .cloned()
        .unwrap_or_else(|| FreeModuleMap::empty(res_rank(res, j - 1)))
}

fn zero_outgoing(rank: usize) -> FreeModuleMap {
    FreeModuleMap {
        source: rank,
        target: 0,
        cols: vec![Vector { comps: vec![] }; rank],
    }
}

/// Tor_i(M, N) as H_i of (free resolution of M) tensor N.
pub fn tor(
    ring: &QuotientRing,
    m: &PresentedModule,
    n: &PresentedModule,
    i: usize,
    limits: &Limits,
) -> Result<PresentedModule> {
    let res = resolution_for(ring, m, i, limits)?;
    if res_rank(&res, i) == 0 {
        return Ok(PresentedModule::zero());
    }
    let outgoing = if i == 0 {
        zero_outgoing(res_rank(&res, 0))
    } else {
        res_map(&res, i)
    };
    let incoming = res_map(&res, i + 1);
    homology_of(ring, &incoming, &outgoing, n, limits)
}

/// Ext^i(M, N) as H^i of Hom(free resolution of M, N).
pub fn ext(
    ring: &QuotientRing,
    m: &PresentedModule,
    n: &PresentedModule,
    i: usize,
    limits: &Limits,
) -> Result<PresentedModule> {
    let res = resolution_for(ring, m, i, limits)?;
    if res_rank(&res, i) == 0 {
        return Ok(PresentedModule::zero());
    }
    // Transposes reverse direction: d_j^T maps F_{j-1}^* into F_j^*.
    let incoming = if i == 0 {
        FreeModuleMap::empty(res_rank(&res, 0))
    } else {
        res_map(&res, i).transpose()
    };
    let outgoing = if res_rank(&res, i + 1) == 0 {
        zero_outgoing(res_rank(&res, i))
    } else {
        res_map(&res, i + 1).transpose()
    };
    homology_of(ring, &incoming, &outgoing, n, limits)
}

/// The submodule (0 :_M J) = Hom(R/J, M), presented on its own generators.
pub fn hom_from_cyclic(
    ring: &QuotientRing,
    j_gens: &[Polynomial],
    m: &PresentedModule,
    limits: &Limits,
) -> Result<PresentedModule> {
    let a = m.generators;
    if a == 0 {
        return Ok(PresentedModule::zero());
    }
    let t = j_gens.len();
    let poly = &ring.poly;
    // Stacked multiplication map R^a -> (R^a)^t, m -> (f_1 m, ..., f_t m).
    let mut cols = Vec::with_capacity(a);
    for c in 0..a {
        let mut v = Vector::zero(poly, t * a);
        for (b, f) in j_gens.iter().enumerate() {
            v.comps[b * a + c] = ring.nf(f);
        }
        cols.push(v);
    }
    let stack = FreeModuleMap::new(t * a, cols);
    let kernel = if t == 0 {
        FreeModuleMap::identity(poly, a)
    } else {
        let denom = m.relations.block_diagonal(poly, t);
        kernel_modulo(ring, &stack, &denom.cols, limits)?
    };
    // Relations among the kernel generators, read inside M.
    let rels = kernel_modulo(ring, &kernel, &m.relations.cols, limits)?;
    Ok(PresentedModule::new(kernel.source, rels))
}

/// Ann(M) = {r | rM = 0}, as a generator list.
pub fn annihilator(
    ring: &QuotientRing,
    m: &PresentedModule,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let a = m.generators;
    if a == 0 {
        return Ok(vec![ring.poly.one()]);
    }
    let poly = &ring.poly;
    // r -> (r e_1, ..., r e_a) in a copies of M; the kernel is Ann(M).
    let mut col = Vector::zero(poly, a * a);
    for c in 0..a {
        col.comps[c * a + c] = poly.one();
    }
    let map = FreeModuleMap::new(a * a, vec![col]);
    let denom = m.relations.block_diagonal(poly, a);
    let kernel = kernel_modulo(ring, &map, &denom.cols, limits)?;
    Ok(kernel
        .cols
        .into_iter()
        .map(|v| v.comps.into_iter().next().unwrap())
        .collect())
}

/// True iff M localized at the prime vanishes: Ann(M) is not contained in
/// the prime, detected by a nonzero normal form against the prime's basis.
pub fn vanishes_at_prime(
    ring: &QuotientRing,
    m: &PresentedModule,
    prime_gb: &[Polynomial],
    limits: &Limits,
) -> Result<bool> {
    let ann = annihilator(ring, m, limits)?;
    Ok(ann
        .iter()
        .any(|g| !normal_form_poly(ring, g, prime_gb).is_zero()))
}

/// Groebner basis of an ideal of the quotient ring, for prime caching.
pub fn ideal_basis(
    ring: &QuotientRing,
    gens: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    buchberger_ideal(ring, gens, limits)
}
