//! Benchmark fixtures shared by the criterion targets.

use torlab::{Limits, MonomialOrder, OrderKind, PolyRing, PrimeField, QuotientRing};

pub fn ring(vars: &[&str], relations: &[&str]) -> QuotientRing {
    let poly = PolyRing::new(
        PrimeField::new(101).unwrap(),
        vars.iter().map(|v| v.to_string()).collect(),
        MonomialOrder::new(OrderKind::Grevlex, vars.len()),
    );
    let rels: Vec<_> = relations
        .iter()
        .map(|s| torlab::parser::parse_polynomial(&poly, s).unwrap())
        .collect();
    QuotientRing::new(poly, &rels, &Limits::for_vars(vars.len())).unwrap()
}
