//! The ambient quotient ring R = F_p[x_1..x_n] / I.
//!
//! `relations` holds a reduced Groebner basis of the defining ideal, computed
//! once at construction; `I = (0)` gives the polynomial ring itself. Ring
//! elements are plain [`Polynomial`]s, canonicalized by [`QuotientRing::nf`].

use crate::error::{Error, Result};
use crate::freemod::Vector;
use crate::groebner::{buchberger_raw, reduce_vector, Limits};
use crate::poly::{PolyRing, Polynomial};

/// A finitely generated ideal, kept as a generator list in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    pub gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &QuotientRing, gens: Vec<Polynomial>) -> Self {
        Ideal {
            gens: gens.iter().map(|g| ring.nf(g)).collect(),
        }
    }

    pub fn zero() -> Self {
        Ideal { gens: Vec::new() }
    }

    pub fn unit(ring: &QuotientRing) -> Self {
        Ideal {
            gens: vec![ring.poly.one()],
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub poly: PolyRing,
    /// Reduced Groebner basis of the defining ideal; empty for the free case.
    pub relations: Vec<Polynomial>,
}

impl QuotientRing {
    pub fn new(poly: PolyRing, relation_gens: &[Polynomial], limits: &Limits) -> Result<Self> {
        let mut names = std::collections::HashSet::new();
        for v in &poly.vars {
            if !names.insert(v.clone()) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let gens: Vec<Vector> = relation_gens
            .iter()
            .map(|g| Vector::scalar(g.clone()))
            .collect();
        let gb = buchberger_raw(&poly, &gens, limits)?;
        let relations: Vec<Polynomial> = gb
            .into_iter()
            .map(|v| v.comps.into_iter().next().unwrap())
            .collect();
        if relations.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Err(Error::UnitRelationIdeal);
        }
        Ok(QuotientRing { poly, relations })
    }

    /// The polynomial ring itself (no relations).
    pub fn free(poly: PolyRing) -> Self {
        QuotientRing {
            poly,
            relations: Vec::new(),
        }
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Canonical representative: normal form against the relation basis.
    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        if self.relations.is_empty() {
            return f.clone();
        }
        let basis: Vec<Vector> = self
            .relations
            .iter()
            .map(|g| Vector::scalar(g.clone()))
            .collect();
        reduce_vector(&self.poly, &Vector::scalar(f.clone()), &basis)
            .comps
            .into_iter()
            .next()
            .unwrap()
    }

    /// Equality in the quotient.
    pub fn eq(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.nf(&self.poly.sub(a, b)).is_zero()
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.nf(f).is_zero()
    }
}
