//! Sparse multivariate polynomials over a prime field.
//!
//! A [`Polynomial`] is a term list sorted descending by the ambient
//! [`MonomialOrder`], with no zero coefficients stored. All arithmetic goes
//! through a [`PolyRing`] context, which carries the field, the variable
//! names, and the order.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing {
    pub field: PrimeField,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

/// Terms sorted descending by the ring's monomial order; coefficients in [1, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    /// Leading (largest) term, if any.
    pub fn lead(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing { field, vars, order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            self.zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(self.nvars(), i), 1)],
        }
    }

    pub fn monomial(&self, m: Monomial, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            self.zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collect an unsorted term list into canonical form.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Polynomial {
        let mut map: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            let c = self.field.reduce_u64(c);
            let entry = map.entry(m).or_insert(0);
            *entry = self.field.add(*entry, c);
        }
        let mut out: Vec<(Monomial, u64)> =
            map.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_by(|(a, _), (b, _)| self.order.cmp(b, a));
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        // Merge of two sorted term lists.
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.order.cmp(&a.terms[i].0, &b.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.field.add(a.terms[i].1, b.terms[j].1);
                    if c != 0 {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Polynomial, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), self.field.mul(*k, c)))
                .collect(),
        }
    }

    /// Multiply by a single term c*m.
    pub fn mul_term(&self, a: &Polynomial, m: &Monomial, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(am, ac)| (am.mul(m), self.field.mul(*ac, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut map: HashMap<Monomial, u64> =
            HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                let m = am.mul(bm);
                let c = self.field.mul(*ac, *bc);
                let entry = map.entry(m).or_insert(0);
                *entry = self.field.add(*entry, c);
            }
        }
        let mut out: Vec<(Monomial, u64)> =
            map.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_by(|(x, _), (y, _)| self.order.cmp(y, x));
        Polynomial { terms: out }
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, a: &Polynomial) -> Polynomial {
        match a.lead() {
            None => self.zero(),
            Some((_, c)) => self.scale(a, self.field.inv(c)),
        }
    }

    /// Canonical ASCII form, e.g. `x^2*y + 100*z`. Coefficients are the least
    /// non-negative residues; parseable back by the expression parser.
    pub fn to_string(&self, a: &Polynomial) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[v].clone());
                } else if e > 1 {
                    let mut s = String::new();
                    write!(s, "{}^{}", self.vars[v], e).unwrap();
                    factors.push(s);
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}
