//! Bounded complexes of free modules, Koszul chain and cochain complexes,
//! their homology with coefficients, and cocycle (cokernel) modules.
//!
//! The stored differentials are maps between the base free modules; the
//! coefficient module is tensored in at homology time. Construction checks
//! that adjacent composites vanish modulo the ring relations.

use crate::error::{Error, Result};
use crate::freemod::{FreeModuleMap, Vector};
use crate::groebner::{kernel_modulo, Limits};
use crate::module::PresentedModule;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// `diffs[i]: C_{i+1} -> C_i`.
    Homological,
    /// `diffs[i]: C^i -> C^{i+1}`.
    Cohomological,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub grading: Grading,
    pub base_ranks: Vec<usize>,
    pub base_diffs: Vec<FreeModuleMap>,
    pub coefficients: PresentedModule,
}

impl ChainComplex {
    /// Checks rank consistency and that adjacent composites reduce to zero.
    pub fn new(
        ring: &QuotientRing,
        grading: Grading,
        base_ranks: Vec<usize>,
        base_diffs: Vec<FreeModuleMap>,
        coefficients: PresentedModule,
    ) -> Result<Self> {
        debug_assert_eq!(base_diffs.len() + 1, base_ranks.len().max(1));
        for (i, d) in base_diffs.iter().enumerate() {
            let (src, tgt) = match grading {
                Grading::Homological => (base_ranks[i + 1], base_ranks[i]),
                Grading::Cohomological => (base_ranks[i], base_ranks[i + 1]),
            };
            if d.source != src || d.target != tgt {
                return Err(Error::RankMismatch {
                    expected: src,
                    got: d.source,
                });
            }
        }
        for w in base_diffs.windows(2) {
            let comp = match grading {
                Grading::Homological => w[0].compose(&ring.poly, &w[1]),
                Grading::Cohomological => w[1].compose(&ring.poly, &w[0]),
            };
            let vanishes = comp
                .cols
                .iter()
                .all(|c| c.comps.iter().all(|p| ring.is_zero(p)));
            if !vanishes {
                return Err(Error::Internal("composite differential is nonzero".into()));
            }
        }
        Ok(ChainComplex {
            grading,
            base_ranks,
            base_diffs,
            coefficients,
        })
    }

    pub fn len(&self) -> usize {
        self.base_ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base_ranks.is_empty()
    }
}

/// Size-`k` subsets of {0..n-1} in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    subsets(n, k).len()
}

/// Exterior-algebra differentials d_i: K_i -> K_{i-1} for the sequence `xs`,
/// with d(e_S) = sum_j (-1)^j x_{s_j} e_{S \ s_j}.
fn koszul_base_diffs(ring: &QuotientRing, xs: &[Polynomial]) -> Vec<FreeModuleMap> {
    let l = xs.len();
    let mut diffs = Vec::new();
    for i in 1..=l {
        let sources = subsets(l, i);
        let targets = subsets(l, i - 1);
        let index: std::collections::HashMap<&[usize], usize> = targets
            .iter()
            .enumerate()
            .map(|(idx, s)| (s.as_slice(), idx))
            .collect();
        let mut cols = Vec::with_capacity(sources.len());
        for s in &sources {
            let mut v = Vector::zero(&ring.poly, targets.len());
            for (pos, &elt) in s.iter().enumerate() {
                let mut reduced: Vec<usize> = s.clone();
                reduced.remove(pos);
                let row = index[reduced.as_slice()];
                let coeff = if pos % 2 == 0 {
                    xs[elt].clone()
                } else {
                    ring.poly.neg(&xs[elt])
                };
                v.comps[row] = ring.poly.add(&v.comps[row], &coeff);
            }
            cols.push(v);
        }
        diffs.push(FreeModuleMap::new(targets.len(), cols));
    }
    // Homological order: diffs[i]: C_{i+1} -> C_i.
    diffs
}

/// Koszul chain complex K_*(x) with coefficients M. The empty sequence gives
/// M concentrated in degree 0.
pub fn koszul_chain(
    ring: &QuotientRing,
    xs: &[Polynomial],
    coefficients: PresentedModule,
) -> Result<ChainComplex> {
    let xs: Vec<Polynomial> = xs.iter().map(|f| ring.nf(f)).collect();
    let l = xs.len();
    let base_ranks: Vec<usize> = (0..=l).map(|i| binomial(l, i)).collect();
    let base_diffs = koszul_base_diffs(ring, &xs);
    ChainComplex::new(
        ring,
        Grading::Homological,
        base_ranks,
        base_diffs,
        coefficients,
    )
}

/// Koszul cochain complex K^*(x) = Hom(K_*(x), -) with coefficients M:
/// entry-wise transposes of the chain differentials.
pub fn koszul_cochain(
    ring: &QuotientRing,
    xs: &[Polynomial],
    coefficients: PresentedModule,
) -> Result<ChainComplex> {
    let xs: Vec<Polynomial> = xs.iter().map(|f| ring.nf(f)).collect();
    let l = xs.len();
    let base_ranks: Vec<usize> = (0..=l).map(|i| binomial(l, i)).collect();
    let base_diffs: Vec<FreeModuleMap> = koszul_base_diffs(ring, &xs)
        .iter()
        .map(|d| d.transpose())
        .collect();
    ChainComplex::new(
        ring,
        Grading::Cohomological,
        base_ranks,
        base_diffs,
        coefficients,
    )
}

/// Homology of `mid` in `incoming -> mid -> outgoing` with coefficients
/// `coeffs`, as a presented subquotient. Both maps are base maps; copies of
/// the coefficient module are interleaved with index (c, k) -> c*a + k.
pub fn homology_of(
    ring: &QuotientRing,
    incoming: &FreeModuleMap,
    outgoing: &FreeModuleMap,
    coeffs: &PresentedModule,
    limits: &Limits,
) -> Result<PresentedModule> {
    debug_assert_eq!(incoming.target, outgoing.source);
    let a = coeffs.generators;
    let mid = outgoing.source * a;
    if mid == 0 {
        return Ok(PresentedModule::zero());
    }
    let poly = &ring.poly;

    // Cycles: preimage of the target relations under the outgoing map.
    let cycles = if outgoing.target == 0 {
        FreeModuleMap::identity(poly, mid)
    } else {
        let out_t = outgoing.tensor_identity(poly, a);
        let target_rels = coeffs.relations.block_diagonal(poly, outgoing.target);
        kernel_modulo(ring, &out_t, &target_rels.cols, limits)?
    };

    // Relations on the cycle generators: preimage of boundaries + relations.
    let in_t = incoming.tensor_identity(poly, a);
    let mid_rels = coeffs.relations.block_diagonal(poly, outgoing.source);
    let mut denom = in_t.cols;
    denom.extend(mid_rels.cols);
    let rels = kernel_modulo(ring, &cycles, &denom, limits)?;

    Ok(PresentedModule::new(cycles.source, rels))
}

/// Homology of a complex at position `i`; positions outside the support give
/// the zero module.
pub fn homology_at(
    ring: &QuotientRing,
    complex: &ChainComplex,
    i: usize,
    limits: &Limits,
) -> Result<PresentedModule> {
    if i >= complex.base_ranks.len() {
        return Ok(PresentedModule::zero());
    }
    let top = complex.base_ranks.len() - 1;
    let rank_i = complex.base_ranks[i];
    let zero_in = FreeModuleMap::empty(rank_i);
    let (incoming, outgoing): (&FreeModuleMap, FreeModuleMap) = match complex.grading {
        Grading::Homological => (
            if i < top { &complex.base_diffs[i] } else { &zero_in },
            if i > 0 {
                complex.base_diffs[i - 1].clone()
            } else {
                // Zero map to the zero target handled inside homology_of.
                FreeModuleMap {
                    source: rank_i,
                    target: 0,
                    cols: vec![Vector { comps: vec![] }; rank_i],
                }
            },
        ),
        Grading::Cohomological => (
            if i > 0 { &complex.base_diffs[i - 1] } else { &zero_in },
            if i < top {
                complex.base_diffs[i].clone()
            } else {
                FreeModuleMap {
                    source: rank_i,
                    target: 0,
                    cols: vec![Vector { comps: vec![] }; rank_i],
                }
            },
        ),
    };
    homology_of(ring, incoming, &outgoing, &complex.coefficients, limits)
}

/// The cocycle module S_k(J; M) = Coker(d^{k-1}) of the Koszul cochain on the
/// supplied generators of J; S_0 is M itself.
pub fn cocycle_module(
    ring: &QuotientRing,
    j_gens: &[Polynomial],
    m: &PresentedModule,
    k: usize,
    limits: &Limits,
) -> Result<PresentedModule> {
    let _ = limits;
    let l = j_gens.len();
    if k > l {
        return Err(Error::InvalidArgument(format!(
            "cocycle index {k} exceeds generator count {l}"
        )));
    }
    if k == 0 {
        return Ok(m.clone());
    }
    let cochain = koszul_cochain(ring, j_gens, m.clone())?;
    let d = &cochain.base_diffs[k - 1]; // C^{k-1} -> C^k
    let a = m.generators;
    let gens = cochain.base_ranks[k] * a;
    let mut cols = d.tensor_identity(&ring.poly, a).cols;
    cols.extend(
        m.relations
            .block_diagonal(&ring.poly, cochain.base_ranks[k])
            .cols,
    );
    Ok(PresentedModule::new(gens, FreeModuleMap::new(gens, cols)))
}
