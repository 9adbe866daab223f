//! Grade, local depth, Ass-membership, Krull dimension and height over a
//! finite table of trusted primes.
//!
//! Depth searches over singular rings can exhaust the resolution budget; the
//! outcome is then `DepthVerdict::AtLeast(bound)`, a first-class value that is
//! never conflated with a finite answer or with infinity.

use crate::complex::{homology_at, koszul_cochain};
use crate::error::{Error, Result};
use crate::freemod::Vector;
use crate::groebner::{buchberger_raw, normal_form_poly, Limits};
use crate::homalg::{annihilator, ext, hom_from_cyclic, ideal_basis, vanishes_at_prime};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ExtendedNat {
    Finite(u64),
    Infinity,
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedNat::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinity => write!(f, "infinity"),
        }
    }
}

/// Outcome of a depth search: exact, or only bounded below by the budget.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DepthVerdict {
    Exact(ExtendedNat),
    AtLeast(u64),
}

impl DepthVerdict {
    pub fn finite(n: u64) -> Self {
        DepthVerdict::Exact(ExtendedNat::Finite(n))
    }

    /// Determinate comparison `self >= bound`, or None when the budget bound
    /// cannot decide it.
    pub fn at_least(&self, bound: u64) -> Option<bool> {
        match self {
            DepthVerdict::Exact(ExtendedNat::Finite(v)) => Some(*v >= bound),
            DepthVerdict::Exact(ExtendedNat::Infinity) => Some(true),
            DepthVerdict::AtLeast(b) => {
                if *b >= bound {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    pub fn exact(&self) -> Option<ExtendedNat> {
        match self {
            DepthVerdict::Exact(v) => Some(*v),
            DepthVerdict::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for DepthVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthVerdict::Exact(v) => write!(f, "{v}"),
            DepthVerdict::AtLeast(b) => write!(f, ">={b}"),
        }
    }
}

/// grade(J; M) = inf { i : H^i(J; M) != 0 }, by Koszul cohomology on the
/// supplied generators; infinity when everything vanishes (e.g. JM = M).
pub fn grade(
    ring: &QuotientRing,
    j_gens: &[Polynomial],
    m: &PresentedModule,
    limits: &Limits,
) -> Result<ExtendedNat> {
    let cochain = koszul_cochain(ring, j_gens, m.clone())?;
    for i in 0..=j_gens.len() {
        if !homology_at(ring, &cochain, i, limits)?.is_zero(ring, limits)? {
            return Ok(ExtendedNat::Finite(i as u64));
        }
    }
    Ok(ExtendedNat::Infinity)
}

/// Independent route: grade as inf { i : Ext^i(R/J, M) != 0 } via free
/// resolutions, with honest budget semantics.
pub fn grade_via_ext(
    ring: &QuotientRing,
    j_gens: &[Polynomial],
    m: &PresentedModule,
    limits: &Limits,
) -> Result<DepthVerdict> {
    let rj = PresentedModule::cyclic(j_gens);
    for i in 0..=limits.max_resolution_length {
        match ext(ring, &rj, m, i, limits) {
            Ok(e) => {
                if !e.is_zero(ring, limits)? {
                    return Ok(DepthVerdict::finite(i as u64));
                }
            }
            Err(Error::ResolutionTruncated { .. }) => {
                return Ok(DepthVerdict::AtLeast(i as u64))
            }
            Err(e) => return Err(e),
        }
    }
    // Ext is zero forever only if R/J actually resolved fully in budget.
    let res = crate::groebner::free_resolution(
        ring,
        &rj,
        limits.max_resolution_length,
        limits,
    )?;
    if res.complete {
        Ok(DepthVerdict::Exact(ExtendedNat::Infinity))
    } else {
        Ok(DepthVerdict::AtLeast(limits.max_resolution_length as u64 + 1))
    }
}

/// A trusted prime of the session ring, with its cached basis.
#[derive(Clone, Debug)]
pub struct PrimeEntry {
    pub name: String,
    pub gens: Vec<Polynomial>,
    pub gb: Vec<Polynomial>,
}

impl PrimeEntry {
    /// Primality is trusted; properness is checked.
    pub fn new(
        ring: &QuotientRing,
        name: String,
        gens: Vec<Polynomial>,
        limits: &Limits,
    ) -> Result<Self> {
        let gens: Vec<Polynomial> = gens.iter().map(|g| ring.nf(g)).collect();
        let gb = ideal_basis(ring, &gens, limits)?;
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Err(Error::ImproperIdeal(name));
        }
        Ok(PrimeEntry { name, gens, gb })
    }

    pub fn contains_poly(&self, ring: &QuotientRing, f: &Polynomial) -> bool {
        normal_form_poly(ring, f, &self.gb).is_zero()
    }
}

/// Finite stand-in for the spectrum: entries plus the containment order.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    pub entries: Vec<PrimeEntry>,
    /// contains[i][j] iff p_i is a subset of p_j.
    pub contains: Vec<Vec<bool>>,
}

impl PrimeTable {
    pub fn new(ring: &QuotientRing, entries: Vec<PrimeEntry>) -> Result<Self> {
        let mut names = std::collections::HashSet::new();
        for e in &entries {
            if !names.insert(e.name.clone()) {
                return Err(Error::DuplicateName(e.name.clone()));
            }
        }
        let n = entries.len();
        let mut contains = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                contains[i][j] = entries[i]
                    .gens
                    .iter()
                    .all(|g| entries[j].contains_poly(ring, g));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && contains[i][j] && contains[j][i] {
                    return Err(Error::MutualContainment(
                        entries[i].name.clone(),
                        entries[j].name.clone(),
                    ));
                }
            }
        }
        Ok(PrimeTable { entries, contains })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// Table-relative minimal entries: contained in no other entry... i.e.
    /// entries with no strictly smaller entry in the table.
    pub fn minimal_entries(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| {
                !(0..self.len()).any(|i| i != j && self.contains[i][j])
            })
            .collect()
    }

    /// Immediate inclusions (q, p) with q strictly inside p and nothing of the
    /// table strictly between.
    pub fn immediate_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for q in 0..n {
            for p in 0..n {
                if q == p || !self.contains[q][p] {
                    continue;
                }
                let between = (0..n).any(|r| {
                    r != q && r != p && self.contains[q][r] && self.contains[r][p]
                });
                if !between {
                    out.push((q, p));
                }
            }
        }
        out
    }
}

/// depth_{R_p}(M_p): least i whose Ext^i(R/p, M) survives localization at p;
/// infinity when M_p = 0.
pub fn local_depth(
    ring: &QuotientRing,
    m: &PresentedModule,
    p: &PrimeEntry,
    limits: &Limits,
) -> Result<DepthVerdict> {
    if vanishes_at_prime(ring, m, &p.gb, limits)? {
        return Ok(DepthVerdict::Exact(ExtendedNat::Infinity));
    }
    let rp = PresentedModule::cyclic(&p.gens);
    for i in 0..=limits.max_resolution_length {
        match ext(ring, &rp, m, i, limits) {
            Ok(e) => {
                if !vanishes_at_prime(ring, &e, &p.gb, limits)? {
                    return Ok(DepthVerdict::finite(i as u64));
                }
            }
            Err(Error::ResolutionTruncated { .. }) => {
                return Ok(DepthVerdict::AtLeast(i as u64))
            }
            Err(e) => return Err(e),
        }
    }
    // M_p != 0 with a complete resolution of R/p must show a nonvanishing Ext;
    // an incomplete one only certifies a lower bound.
    let res = crate::groebner::free_resolution(
        ring,
        &rp,
        limits.max_resolution_length,
        limits,
    )?;
    if res.complete {
        Err(Error::Internal(
            "depth search exhausted a complete resolution".into(),
        ))
    } else {
        Ok(DepthVerdict::AtLeast(limits.max_resolution_length as u64 + 1))
    }
}

/// p ∈ Ass M, decided as (0 :_M p) surviving localization at p.
pub fn ass_member(
    ring: &QuotientRing,
    p: &PrimeEntry,
    m: &PresentedModule,
    limits: &Limits,
) -> Result<bool> {
    let socle = hom_from_cyclic(ring, &p.gens, m, limits)?;
    Ok(!vanishes_at_prime(ring, &socle, &p.gb, limits)?)
}

/// Per-prime numeric profile of the ring.
#[derive(Clone, Debug)]
pub struct DepthProfile {
    pub depths: Vec<DepthVerdict>,
    pub grades: Vec<ExtendedNat>,
    pub heights: Option<Vec<u64>>,
}

pub fn depth_table(
    ring: &QuotientRing,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<Vec<DepthVerdict>> {
    let r_mod = PresentedModule::free(1);
    table
        .entries
        .iter()
        .map(|p| local_depth(ring, &r_mod, p, limits))
        .collect()
}

pub fn grade_table(
    ring: &QuotientRing,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<Vec<ExtendedNat>> {
    let r_mod = PresentedModule::free(1);
    table
        .entries
        .iter()
        .map(|p| grade(ring, &p.gens, &r_mod, limits))
        .collect()
}

/// Depths, grades, and (for equidimensional rings) heights in one pass.
pub fn full_profile(
    ring: &QuotientRing,
    table: &PrimeTable,
    equidimensional: bool,
    limits: &Limits,
) -> Result<DepthProfile> {
    let depths = depth_table(ring, table, limits)?;
    let grades = grade_table(ring, table, limits)?;
    let heights = if equidimensional {
        Some(
            table
                .entries
                .iter()
                .map(|p| height(ring, p, true, limits))
                .collect::<Result<Vec<u64>>>()?,
        )
    } else {
        None
    };
    Ok(DepthProfile {
        depths,
        grades,
        heights,
    })
}

fn leading_monomials(
    ring: &QuotientRing,
    extra: &[Polynomial],
    limits: &Limits,
) -> Result<Option<Vec<Monomial>>> {
    let mut gens: Vec<Vector> = extra
        .iter()
        .map(|g| Vector::scalar(g.clone()))
        .collect();
    gens.extend(
        ring.relations
            .iter()
            .map(|g| Vector::scalar(g.clone())),
    );
    let gb = buchberger_raw(&ring.poly, &gens, limits)?;
    let mut leads = Vec::new();
    for v in gb {
        let poly = &v.comps[0];
        if poly.is_constant() && !poly.is_zero() {
            return Ok(None); // unit ideal
        }
        leads.push(poly.lead().unwrap().0.clone());
    }
    Ok(Some(leads))
}

/// dim R/Ann(M) via maximal variable sets independent of the leading-term
/// ideal; None for the zero module (empty support).
pub fn krull_dim(
    ring: &QuotientRing,
    m: &PresentedModule,
    limits: &Limits,
) -> Result<Option<u64>> {
    let ann = annihilator(ring, m, limits)?;
    let Some(leads) = leading_monomials(ring, &ann, limits)? else {
        return Ok(None);
    };
    let n = ring.nvars();
    let mut best = 0u64;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as u64;
        if size <= best {
            continue;
        }
        let independent = leads.iter().all(|lm| {
            lm.support().iter().any(|&v| mask & (1 << v) == 0)
        });
        if independent {
            best = size;
        }
    }
    Ok(Some(best))
}

pub fn ring_dim(ring: &QuotientRing, limits: &Limits) -> Result<u64> {
    // The ring is nonzero by the unit-relation check at construction.
    Ok(krull_dim(ring, &PresentedModule::free(1), limits)?.unwrap())
}

/// height(p) = dim R - dim R/p; only valid on equidimensional catenary rings,
/// refused otherwise.
pub fn height(
    ring: &QuotientRing,
    p: &PrimeEntry,
    equidimensional: bool,
    limits: &Limits,
) -> Result<u64> {
    if !equidimensional {
        return Err(Error::NotEquidimensional);
    }
    let total = ring_dim(ring, limits)?;
    let quotient_dim = krull_dim(ring, &PresentedModule::cyclic(&p.gens), limits)?
        .expect("proper prime has nonzero quotient");
    Ok(total - quotient_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::{MonomialOrder, OrderKind};
    use crate::parser::parse_polynomial;
    use crate::poly::PolyRing;

    fn free_ring(vars: &[&str]) -> QuotientRing {
        QuotientRing::free(PolyRing::new(
            PrimeField::new(101).unwrap(),
            vars.iter().map(|v| v.to_string()).collect(),
            MonomialOrder::new(OrderKind::Grevlex, vars.len()),
        ))
    }

    fn quot(vars: &[&str], rels: &[&str]) -> QuotientRing {
        let free = free_ring(vars);
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| parse_polynomial(&free.poly, s).unwrap())
            .collect();
        QuotientRing::new(free.poly, &rels, &Limits::for_vars(vars.len())).unwrap()
    }

    fn p(ring: &QuotientRing, s: &str) -> Polynomial {
        parse_polynomial(&ring.poly, s).unwrap()
    }

    fn prime(ring: &QuotientRing, name: &str, gens: &[&str]) -> PrimeEntry {
        let gens: Vec<Polynomial> = gens.iter().map(|s| p(ring, s)).collect();
        PrimeEntry::new(ring, name.into(), gens, &Limits::for_vars(ring.nvars())).unwrap()
    }

    fn lims() -> Limits {
        Limits::for_vars(4)
    }

    #[test]
    fn extended_nat_order() {
        use ExtendedNat::*;
        assert!(Infinity > Finite(1_000_000));
        assert!(Finite(2) > Finite(1));
        assert_eq!(Infinity.min(Finite(3)), Finite(3));
    }

    #[test]
    fn grade_of_a_regular_pair() {
        let r = free_ring(&["x", "y"]);
        let m = PresentedModule::free(1);
        let g = grade(&r, &[p(&r, "x"), p(&r, "y")], &m, &lims()).unwrap();
        assert_eq!(g, ExtendedNat::Finite(2));
    }

    #[test]
    fn grade_of_unit_ideal_is_infinite() {
        let r = free_ring(&["x", "y"]);
        let m = PresentedModule::cyclic(&[p(&r, "x")]);
        let g = grade(&r, &[p(&r, "1")], &m, &lims()).unwrap();
        assert_eq!(g, ExtendedNat::Infinity);
    }

    #[test]
    fn grade_zero_on_fat_point_ring() {
        // R = F101[x,y]/(x^2, xy) has socle element x.
        let r = quot(&["x", "y"], &["x^2", "x*y"]);
        let m = PresentedModule::free(1);
        let g = grade(&r, &[p(&r, "x"), p(&r, "y")], &m, &lims()).unwrap();
        assert_eq!(g, ExtendedNat::Finite(0));
    }

    #[test]
    fn grade_oracle_equivalence_sample() {
        let r = quot(&["x", "y"], &["x*y"]);
        let lims = lims();
        let m = PresentedModule::free(1);
        let koszul = grade(&r, &[p(&r, "x"), p(&r, "y")], &m, &lims).unwrap();
        let via_ext = grade_via_ext(&r, &[p(&r, "x"), p(&r, "y")], &m, &lims).unwrap();
        assert_eq!(via_ext, DepthVerdict::Exact(koszul));
        assert_eq!(koszul, ExtendedNat::Finite(1));
    }

    #[test]
    fn local_depth_on_nodal_line() {
        let r = quot(&["x", "y"], &["x*y"]);
        let m = prime(&r, "m", &["x", "y"]);
        let d = local_depth(&r, &PresentedModule::free(1), &m, &lims()).unwrap();
        assert_eq!(d, DepthVerdict::finite(1));
    }

    #[test]
    fn residue_field_has_depth_zero() {
        let r = free_ring(&["x", "y"]);
        let m = prime(&r, "m", &["x", "y"]);
        let k = PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]);
        assert_eq!(
            local_depth(&r, &k, &m, &lims()).unwrap(),
            DepthVerdict::finite(0)
        );
    }

    #[test]
    fn depth_of_empty_localization_is_infinite() {
        let r = free_ring(&["x", "y"]);
        let q = prime(&r, "q", &["y"]);
        let m = PresentedModule::cyclic(&[p(&r, "x")]);
        assert_eq!(
            local_depth(&r, &m, &q, &lims()).unwrap(),
            DepthVerdict::Exact(ExtendedNat::Infinity)
        );
    }

    #[test]
    fn ass_membership() {
        let fat = quot(&["x", "y"], &["x^2", "x*y"]);
        let lims = lims();
        let m_fat = prime(&fat, "m", &["x", "y"]);
        let px = prime(&fat, "px", &["x"]);
        let free_mod = PresentedModule::free(1);
        assert!(ass_member(&fat, &m_fat, &free_mod, &lims).unwrap());
        assert!(ass_member(&fat, &px, &free_mod, &lims).unwrap());

        let reg = free_ring(&["x", "y"]);
        let m_reg = prime(&reg, "m", &["x", "y"]);
        assert!(!ass_member(&reg, &m_reg, &PresentedModule::free(1), &lims).unwrap());
    }

    #[test]
    fn depth_chain_on_the_plane() {
        let r = free_ring(&["x", "y"]);
        let table = PrimeTable::new(
            &r,
            vec![
                prime(&r, "zero", &[]),
                prime(&r, "px", &["x"]),
                prime(&r, "m", &["x", "y"]),
            ],
        )
        .unwrap();
        let depths = depth_table(&r, &table, &lims()).unwrap();
        let want: Vec<DepthVerdict> = [0, 1, 2].iter().map(|&n| DepthVerdict::finite(n)).collect();
        assert_eq!(depths, want);
        // grade <= depth pointwise.
        let grades = grade_table(&r, &table, &lims()).unwrap();
        for (g, d) in grades.iter().zip(&depths) {
            assert!(d.at_least(match g {
                ExtendedNat::Finite(v) => *v,
                ExtendedNat::Infinity => u64::MAX,
            })
            .unwrap_or(true));
        }
    }

    #[test]
    fn table_rejects_mutual_containment() {
        let r = free_ring(&["x", "y"]);
        let a = prime(&r, "a", &["x"]);
        let b = prime(&r, "b", &["x"]);
        assert!(matches!(
            PrimeTable::new(&r, vec![a, b]),
            Err(Error::MutualContainment(_, _))
        ));
    }

    #[test]
    fn table_order_structure() {
        let r = free_ring(&["x", "y"]);
        let table = PrimeTable::new(
            &r,
            vec![
                prime(&r, "zero", &[]),
                prime(&r, "px", &["x"]),
                prime(&r, "m", &["x", "y"]),
            ],
        )
        .unwrap();
        assert!(table.contains[0][1] && table.contains[1][2]);
        assert!(!table.contains[2][1]);
        assert_eq!(table.minimal_entries(), vec![0]);
        assert_eq!(table.immediate_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn improper_prime_rejected() {
        let r = free_ring(&["x", "y"]);
        let gens = vec![p(&r, "x"), p(&r, "x + 1")];
        assert!(matches!(
            PrimeEntry::new(&r, "bad".into(), gens, &lims()),
            Err(Error::ImproperIdeal(_))
        ));
    }

    #[test]
    fn dimensions() {
        let lims = lims();
        let plane = free_ring(&["x", "y"]);
        assert_eq!(ring_dim(&plane, &lims).unwrap(), 2);
        let nodal = quot(&["x", "y"], &["x*y"]);
        assert_eq!(ring_dim(&nodal, &lims).unwrap(), 1);
        let z = PresentedModule::zero();
        assert_eq!(krull_dim(&plane, &z, &lims).unwrap(), None);
    }

    #[test]
    fn heights_in_the_plane() {
        let r = free_ring(&["x", "y"]);
        let lims = lims();
        assert_eq!(height(&r, &prime(&r, "px", &["x"]), true, &lims).unwrap(), 1);
        assert_eq!(
            height(&r, &prime(&r, "m", &["x", "y"]), true, &lims).unwrap(),
            2
        );
        assert_eq!(height(&r, &prime(&r, "zero", &[]), true, &lims).unwrap(), 0);
        assert!(matches!(
            height(&r, &prime(&r, "px", &["x"]), false, &lims),
            Err(Error::NotEquidimensional)
        ));
    }
}
