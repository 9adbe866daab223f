//! Shared fixtures for the integration suites: the ring gallery and small
//! construction helpers.

#![allow(dead_code)]

use torlab::depth::PrimeEntry;
use torlab::parser::parse_polynomial;
use torlab::{
    Limits, MonomialOrder, OrderKind, PolyRing, Polynomial, PresentedModule, PrimeField,
    PrimeTable, QuotientRing,
};

pub fn lims() -> Limits {
    Limits::for_vars(5)
}

pub fn free_ring(vars: &[&str]) -> QuotientRing {
    QuotientRing::free(PolyRing::new(
        PrimeField::new(101).unwrap(),
        vars.iter().map(|v| v.to_string()).collect(),
        MonomialOrder::new(OrderKind::Grevlex, vars.len()),
    ))
}

pub fn quot(vars: &[&str], rels: &[&str]) -> QuotientRing {
    let free = free_ring(vars);
    let rels: Vec<Polynomial> = rels
        .iter()
        .map(|s| parse_polynomial(&free.poly, s).unwrap())
        .collect();
    QuotientRing::new(free.poly, &rels, &lims()).unwrap()
}

pub fn p(ring: &QuotientRing, s: &str) -> Polynomial {
    parse_polynomial(&ring.poly, s).unwrap()
}

pub fn ps(ring: &QuotientRing, strs: &[&str]) -> Vec<Polynomial> {
    strs.iter().map(|s| p(ring, s)).collect()
}

pub fn prime(ring: &QuotientRing, name: &str, gens: &[&str]) -> PrimeEntry {
    PrimeEntry::new(ring, name.into(), ps(ring, gens), &lims()).unwrap()
}

pub fn table(ring: &QuotientRing, primes: &[(&str, &[&str])]) -> PrimeTable {
    PrimeTable::new(
        ring,
        primes.iter().map(|(n, g)| prime(ring, n, g)).collect(),
    )
    .unwrap()
}

pub fn cyclic(ring: &QuotientRing, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(&ps(ring, gens))
}

/// The five standing test rings.
pub struct Gallery {
    pub line: QuotientRing,
    pub plane: QuotientRing,
    pub nodal: QuotientRing,
    pub fat: QuotientRing,
    pub glued: QuotientRing,
}

pub fn gallery() -> Gallery {
    Gallery {
        line: free_ring(&["x"]),
        plane: free_ring(&["x", "y"]),
        nodal: quot(&["x", "y"], &["x*y"]),
        fat: quot(&["x", "y"], &["x^2", "x*y"]),
        glued: quot(
            &["x", "y", "z", "u", "v"],
            &["x*u", "x*v", "y*u", "y*v", "z*u", "z*v"],
        ),
    }
}
