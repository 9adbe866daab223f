//! Finitely presented modules: a generator count plus a relation matrix.
//!
//! A [`PresentedModule`] is the cokernel of its `relations` map, so `M = R^g /
//! im(relations)`. The ring context is passed to every operation rather than
//! stored, matching the rest of the crate.

use crate::error::Result;
use crate::freemod::{FreeModuleMap, Vector};
use crate::groebner::{buchberger, normal_form, syzygies, Limits};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PresentedModule {
    pub generators: usize,
    /// Relation matrix with `target == generators`; columns span the relations.
    pub relations: FreeModuleMap,
}

impl PresentedModule {
    pub fn new(generators: usize, relations: FreeModuleMap) -> Self {
        debug_assert_eq!(relations.target, generators);
        PresentedModule {
            generators,
            relations,
        }
    }

    /// Free module R^n.
    pub fn free(n: usize) -> Self {
        PresentedModule {
            generators: n,
            relations: FreeModuleMap::empty(n),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Cyclic module R/J for the ideal J spanned by `gens`.
    pub fn cyclic(gens: &[Polynomial]) -> Self {
        let cols: Vec<Vector> = gens.iter().map(|g| Vector::scalar(g.clone())).collect();
        PresentedModule {
            generators: 1,
            relations: FreeModuleMap::new(1, cols),
        }
    }

    /// Cokernel of an arbitrary map.
    pub fn cokernel(map: &FreeModuleMap) -> Self {
        PresentedModule {
            generators: map.target,
            relations: map.clone(),
        }
    }

    /// The residue field k = R/m for the maximal ideal of all variables.
    pub fn residue_field(ring: &QuotientRing) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.poly.var(i)).collect();
        Self::cyclic(&vars)
    }

    /// True iff every generator lies in the span of the relations.
    pub fn is_zero(&self, ring: &QuotientRing, limits: &Limits) -> Result<bool> {
        if self.generators == 0 {
            return Ok(true);
        }
        let gb = buchberger(ring, &self.relations.cols, self.generators, limits)?;
        for i in 0..self.generators {
            let e = Vector::unit(&ring.poly, self.generators, i);
            if !normal_form(ring, &e, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn direct_sum(&self, ring: &QuotientRing, other: &PresentedModule) -> PresentedModule {
        let g = self.generators + other.generators;
        let mut cols = Vec::new();
        for c in &self.relations.cols {
            let mut comps = c.comps.clone();
            comps.extend(vec![ring.poly.zero(); other.generators]);
            cols.push(Vector { comps });
        }
        for c in &other.relations.cols {
            let mut comps = vec![ring.poly.zero(); self.generators];
            comps.extend(c.comps.clone());
            cols.push(Vector { comps });
        }
        PresentedModule {
            generators: g,
            relations: FreeModuleMap::new(g, cols),
        }
    }

    /// First syzygy module Ω₁M = ker(R^g → M), presented on the nonzero
    /// relation columns with their syzygies as relations.
    pub fn syzygy_module(&self, ring: &QuotientRing, limits: &Limits) -> Result<PresentedModule> {
        let cleaned: Vec<Vector> = self
            .relations
            .cols
            .iter()
            .map(|c| Vector {
                comps: c.comps.iter().map(|p| ring.nf(p)).collect(),
            })
            .filter(|c| !c.is_zero())
            .collect();
        let d1 = FreeModuleMap::new(self.generators, cleaned);
        let rels = syzygies(ring, &d1, limits)?;
        Ok(PresentedModule {
            generators: d1.source,
            relations: rels,
        })
    }
}
