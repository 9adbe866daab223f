//! Session documents: a JSON file declaring the ring, named modules, the
//! prime table, an optional candidate function, and budgets.
//!
//! Serialization is canonical (sorted module names, canonical polynomial
//! strings), so parse followed by serialize is a fixed point.

use crate::depth::{PrimeEntry, PrimeTable};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::freemod::{FreeModuleMap, Vector};
use crate::groebner::Limits;
use crate::module::PresentedModule;
use crate::monomial::{MonomialOrder, OrderKind};
use crate::parser::parse_polynomial;
use crate::poly::PolyRing;
use crate::ring::QuotientRing;
use crate::torpairs::PhiFunction;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max_resolution_length: usize,
    pub format: OutputFormat,
    pub equidimensional: bool,
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            max_resolution_length: self.max_resolution_length,
            ..Limits::for_vars(0)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring: QuotientRing,
    pub modules: Vec<(String, PresentedModule)>,
    pub table: PrimeTable,
    pub phi: Option<PhiFunction>,
    pub config: Config,
}

impl Session {
    pub fn module(&self, name: &str) -> Result<&PresentedModule> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::InvalidSession(format!("unknown module `{name}`")))
    }
}

#[derive(Serialize, Deserialize)]
struct RingDoc {
    char: u64,
    vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<OrderKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relations: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    generators: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relations: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct PrimeDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    zero_ideal: bool,
}

#[derive(Serialize, Deserialize, Default)]
struct ConfigDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    max_resolution_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equidimensional: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct SessionDoc {
    ring: RingDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    primes: Vec<PrimeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<ConfigDoc>,
}

pub fn parse_session(input: &str) -> Result<Session> {
    let doc: SessionDoc = serde_json::from_str(input)
        .map_err(|e| Error::InvalidSession(e.to_string()))?;

    let field = PrimeField::new(doc.ring.char)?;
    let nvars = doc.ring.vars.len();
    let order = MonomialOrder::new(doc.ring.order.unwrap_or(OrderKind::Grevlex), nvars);
    let poly = PolyRing::new(field, doc.ring.vars.clone(), order);

    let config = {
        let c = doc.config.unwrap_or_default();
        Config {
            max_resolution_length: c.max_resolution_length.unwrap_or(nvars + 4),
            format: c.format.unwrap_or(OutputFormat::Text),
            equidimensional: c
                .equidimensional
                .unwrap_or(doc.ring.relations.is_empty()),
        }
    };
    let limits = config.limits();

    let relations = doc
        .ring
        .relations
        .iter()
        .map(|s| parse_polynomial(&poly, s))
        .collect::<Result<Vec<_>>>()?;
    let ring = QuotientRing::new(poly, &relations, &limits)?;

    let mut modules = Vec::new();
    for (name, m) in &doc.modules {
        let mut cols = Vec::new();
        for row in &m.relations {
            if row.len() != m.generators {
                return Err(Error::RankMismatch {
                    expected: m.generators,
                    got: row.len(),
                });
            }
            let comps = row
                .iter()
                .map(|s| parse_polynomial(&ring.poly, s).map(|f| ring.nf(&f)))
                .collect::<Result<Vec<_>>>()?;
            cols.push(Vector { comps });
        }
        modules.push((
            name.clone(),
            PresentedModule::new(m.generators, FreeModuleMap::new(m.generators, cols)),
        ));
    }

    let mut entries = Vec::new();
    for p in &doc.primes {
        if p.generators.is_empty() && !p.zero_ideal {
            return Err(Error::InvalidSession(format!(
                "prime `{}` has no generators and no zero_ideal marker",
                p.name
            )));
        }
        if !p.generators.is_empty() && p.zero_ideal {
            return Err(Error::InvalidSession(format!(
                "prime `{}` marked zero_ideal but has generators",
                p.name
            )));
        }
        let gens = p
            .generators
            .iter()
            .map(|s| parse_polynomial(&ring.poly, s))
            .collect::<Result<Vec<_>>>()?;
        entries.push(PrimeEntry::new(&ring, p.name.clone(), gens, &limits)?);
    }
    let table = PrimeTable::new(&ring, entries)?;

    let phi = match doc.phi {
        None => None,
        Some(map) => {
            let mut values = vec![0u64; table.len()];
            for (name, v) in &map {
                let idx = table
                    .index_of(name)
                    .ok_or_else(|| Error::InvalidSession(format!("phi names unknown prime `{name}`")))?;
                values[idx] = *v;
            }
            if map.len() != table.len() {
                return Err(Error::InvalidSession(
                    "phi must assign a value to every table prime".into(),
                ));
            }
            Some(PhiFunction::new(values))
        }
    };

    Ok(Session {
        ring,
        modules,
        table,
        phi,
        config,
    })
}

pub fn serialize_session(s: &Session) -> String {
    let poly = &s.ring.poly;
    let doc = SessionDoc {
        ring: RingDoc {
            char: poly.field.characteristic(),
            vars: poly.vars.clone(),
            order: Some(poly.order.kind),
            relations: s.ring.relations.iter().map(|f| poly.to_string(f)).collect(),
        },
        modules: s
            .modules
            .iter()
            .map(|(name, m)| {
                (
                    name.clone(),
                    ModuleDoc {
                        generators: m.generators,
                        relations: m
                            .relations
                            .cols
                            .iter()
                            .map(|c| c.comps.iter().map(|f| poly.to_string(f)).collect())
                            .collect(),
                    },
                )
            })
            .collect(),
        primes: s
            .table
            .entries
            .iter()
            .map(|p| PrimeDoc {
                name: p.name.clone(),
                generators: p.gens.iter().map(|f| poly.to_string(f)).collect(),
                zero_ideal: p.gens.is_empty(),
            })
            .collect(),
        phi: s.phi.as_ref().map(|phi| {
            s.table
                .entries
                .iter()
                .zip(&phi.values)
                .map(|(p, &v)| (p.name.clone(), v))
                .collect()
        }),
        config: Some(ConfigDoc {
            max_resolution_length: Some(s.config.max_resolution_length),
            format: Some(s.config.format),
            equidimensional: Some(s.config.equidimensional),
        }),
    };
    serde_json::to_string_pretty(&doc).expect("session serialization cannot fail")
}
