//! The classification layer: depth-bounded functions on the prime table,
//! class membership by local depth and by the Tor-vanishing oracle, generator
//! sets of cocycle modules, recovery of the function from generators, regular
//! duality, definability checks, almost-CM detection, and restricted flat
//! dimension.
//!
//! All set-level semantics are table-relative: minimality, immediate
//! inclusions, and suprema quantify over the supplied finite prime table.

use crate::complex::cocycle_module;
use crate::depth::{
    local_depth, DepthProfile, DepthVerdict, ExtendedNat, PrimeTable,
};
use crate::error::{Error, Result};
use crate::groebner::{free_resolution, Limits};
use crate::homalg::{tor, vanishes_at_prime};
use crate::module::PresentedModule;
use crate::ring::QuotientRing;

/// A candidate classification function on the table, one value per entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiFunction {
    pub values: Vec<u64>,
    pub validated: bool,
}

impl PhiFunction {
    pub fn new(values: Vec<u64>) -> Self {
        PhiFunction {
            values,
            validated: false,
        }
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Entries where the depth bound fails; an empty list marks phi validated.
pub fn validate_phi(phi: &mut PhiFunction, profile: &DepthProfile) -> Result<Vec<usize>> {
    if phi.values.len() != profile.depths.len() {
        return Err(Error::TableMismatch(format!(
            "phi has {} values for {} primes",
            phi.values.len(),
            profile.depths.len()
        )));
    }
    let mut violations = Vec::new();
    for (i, (&v, d)) in phi.values.iter().zip(&profile.depths).enumerate() {
        match d.at_least(v) {
            Some(true) => {}
            Some(false) => violations.push(i),
            None => {
                return Err(Error::Indeterminate(format!(
                    "depth at entry {i} is only known as {d}; cannot check bound {v}"
                )))
            }
        }
    }
    phi.validated = violations.is_empty();
    Ok(violations)
}

/// Outcome of a membership test; negatives and indeterminates carry the
/// offending prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Member,
    NonMember { prime: usize, detail: String },
    Indeterminate { prime: usize, detail: String },
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }

    pub fn determinate(&self) -> Option<bool> {
        match self {
            Verdict::Member => Some(true),
            Verdict::NonMember { .. } => Some(false),
            Verdict::Indeterminate { .. } => None,
        }
    }
}

/// Membership of M in the i-th shifted class of phi: local depth at every
/// table prime must reach phi(p) - i.
pub fn class_membership(
    ring: &QuotientRing,
    m: &PresentedModule,
    phi: &PhiFunction,
    shift: u64,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<Verdict> {
    if !phi.validated {
        return Err(Error::InvalidArgument("phi not validated".into()));
    }
    for (idx, p) in table.entries.iter().enumerate() {
        let need = phi.values[idx].saturating_sub(shift);
        if need == 0 {
            continue;
        }
        let d = local_depth(ring, m, p, limits)?;
        match d.at_least(need) {
            Some(true) => {}
            Some(false) => {
                return Ok(Verdict::NonMember {
                    prime: idx,
                    detail: format!("local depth {d} < {need} at {}", p.name),
                })
            }
            None => {
                return Ok(Verdict::Indeterminate {
                    prime: idx,
                    detail: format!("local depth only known as {d} at {}", p.name),
                })
            }
        }
    }
    Ok(Verdict::Member)
}

/// A generator of the Tor-pair: the cocycle module of a prime at its level,
/// always carrying the localization tag.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub prime: usize,
    pub level: u64,
    pub module: PresentedModule,
    pub localized: bool,
}

/// One generator per prime with a positive level; level-0 primes impose no
/// constraint and contribute nothing.
pub fn generator_set(
    ring: &QuotientRing,
    phi: &PhiFunction,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<Vec<GeneratorSpec>> {
    if !phi.validated {
        return Err(Error::InvalidArgument("phi not validated".into()));
    }
    let r_mod = PresentedModule::free(1);
    let mut out = Vec::new();
    for (idx, p) in table.entries.iter().enumerate() {
        let k = phi.values[idx];
        if k == 0 {
            continue;
        }
        let module = cocycle_module(ring, &p.gens, &r_mod, k as usize, limits)?;
        out.push(GeneratorSpec {
            prime: idx,
            level: k,
            module,
            localized: true,
        });
    }
    Ok(out)
}

/// Brute-force membership: every Tor_j against every generator, post-localized
/// at the generator's prime, must vanish for 1 <= j <= level.
pub fn tor_oracle_membership(
    ring: &QuotientRing,
    m: &PresentedModule,
    phi: &PhiFunction,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<Verdict> {
    let gens = generator_set(ring, phi, table, limits)?;
    for g in &gens {
        let p = &table.entries[g.prime];
        for j in 1..=g.level {
            let t = match tor(ring, &g.module, m, j as usize, limits) {
                Ok(t) => t,
                Err(Error::ResolutionTruncated { .. }) | Err(Error::BudgetExceeded(_)) => {
                    return Ok(Verdict::Indeterminate {
                        prime: g.prime,
                        detail: format!("Tor_{j} budget exhausted at {}", p.name),
                    })
                }
                Err(e) => return Err(e),
            };
            if !vanishes_at_prime(ring, &t, &p.gb, limits)? {
                return Ok(Verdict::NonMember {
                    prime: g.prime,
                    detail: format!("Tor_{j} nonzero at {}", p.name),
                });
            }
        }
    }
    Ok(Verdict::Member)
}

/// A generator handed to recover_phi: a module, and optionally the prime it is
/// implicitly localized at.
#[derive(Clone, Debug)]
pub struct RecoverInput {
    pub name: String,
    pub module: PresentedModule,
    pub localize_at: Option<usize>,
}

impl From<&GeneratorSpec> for RecoverInput {
    fn from(g: &GeneratorSpec) -> Self {
        RecoverInput {
            name: format!("S_{}(p{})", g.level, g.prime),
            module: g.module.clone(),
            localize_at: if g.localized { Some(g.prime) } else { None },
        }
    }
}

/// Recover the function from generators of certified finite flat dimension:
/// phi(p) is the top j with some Tor_j(G, R/p) surviving localization.
/// Refuses generators whose resolution does not finish inside the budget.
pub fn recover_phi(
    ring: &QuotientRing,
    generators: &[RecoverInput],
    table: &PrimeTable,
    limits: &Limits,
) -> Result<PhiFunction> {
    let mut lengths = Vec::with_capacity(generators.len());
    for g in generators {
        let res = free_resolution(ring, &g.module, limits.max_resolution_length, limits)?;
        if !res.complete {
            return Err(Error::Uncertified(g.name.clone()));
        }
        lengths.push(res.len());
    }

    let mut values = vec![0u64; table.len()];
    for (idx, p) in table.entries.iter().enumerate() {
        let rp = PresentedModule::cyclic(&p.gens);
        let mut top = 0u64;
        for (g, &len) in generators.iter().zip(&lengths) {
            for j in 1..=len {
                let t = tor(ring, &g.module, &rp, j, limits)?;
                let mut alive = !vanishes_at_prime(ring, &t, &p.gb, limits)?;
                if alive {
                    if let Some(loc) = g.localize_at {
                        alive = !vanishes_at_prime(ring, &t, &table.entries[loc].gb, limits)?;
                    }
                }
                if alive {
                    top = top.max(j as u64);
                }
            }
        }
        values[idx] = top;
    }
    // Guaranteed depth-bounded; the caller re-validates against its profile.
    Ok(PhiFunction::new(values))
}

/// phi is order-preserving when values grow along containments of the table.
pub fn is_order_preserving(phi: &PhiFunction, table: &PrimeTable) -> bool {
    for q in 0..table.len() {
        for p in 0..table.len() {
            if q != p && table.contains[q][p] && phi.values[q] > phi.values[p] {
                return false;
            }
        }
    }
    true
}

pub fn cotilting_check(phi: &PhiFunction, table: &PrimeTable) -> bool {
    phi.validated && is_order_preserving(phi, table)
}

/// psi(p) = height(p) - phi(p) over a regular ring; an involution, and
/// automatically depth-bounded there.
pub fn regular_dual(
    ring: &QuotientRing,
    phi: &PhiFunction,
    heights: &[u64],
    table: &PrimeTable,
) -> Result<PhiFunction> {
    if !ring.is_polynomial_ring() {
        return Err(Error::NotRegular);
    }
    if !phi.validated || heights.len() != table.len() {
        return Err(Error::InvalidArgument(
            "regular_dual needs a validated phi and full heights".into(),
        ));
    }
    let values = phi
        .values
        .iter()
        .zip(heights)
        .map(|(&v, &h)| {
            debug_assert!(v <= h);
            h - v
        })
        .collect();
    Ok(PhiFunction {
        values,
        validated: true,
    })
}

/// Both-definable criterion, relative to the table: zero on table-minimal
/// entries, and gaps of at most one along table-immediate inclusions.
pub fn both_definable(
    ring: &QuotientRing,
    phi: &PhiFunction,
    table: &PrimeTable,
) -> Result<bool> {
    if !ring.is_polynomial_ring() {
        return Err(Error::NotRegular);
    }
    for q in table.minimal_entries() {
        if phi.values[q] != 0 {
            return Ok(false);
        }
    }
    for (q, p) in table.immediate_pairs() {
        let (lo, hi) = (phi.values[q], phi.values[p]);
        if hi < lo || hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Almost Cohen-Macaulay iff grade = depth on every entry; returns the
/// witness entries where they provably differ.
pub fn almost_cm_check(profile: &DepthProfile) -> Result<(bool, Vec<usize>)> {
    let mut witnesses = Vec::new();
    for (i, (g, d)) in profile.grades.iter().zip(&profile.depths).enumerate() {
        match d {
            DepthVerdict::Exact(v) => {
                if v != g {
                    witnesses.push(i);
                }
            }
            DepthVerdict::AtLeast(b) => match g {
                ExtendedNat::Finite(gv) if *b > *gv => witnesses.push(i),
                _ => {
                    return Err(Error::Indeterminate(format!(
                        "depth at entry {i} only known as {d}"
                    )))
                }
            },
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// Table-restricted large restricted flat dimension: the depth-gap supremum
/// sup_p (depth(p) - depth_p(M_p)), clamped at zero, skipping empty support.
pub fn rfd(
    ring: &QuotientRing,
    m: &PresentedModule,
    table: &PrimeTable,
    profile: &DepthProfile,
    limits: &Limits,
) -> Result<u64> {
    let mut sup = 0u64;
    for (idx, p) in table.entries.iter().enumerate() {
        let dm = local_depth(ring, m, p, limits)?;
        let dm = match dm {
            DepthVerdict::Exact(ExtendedNat::Infinity) => continue, // M_p = 0
            DepthVerdict::Exact(ExtendedNat::Finite(v)) => v,
            DepthVerdict::AtLeast(b) => {
                // A lower bound on depth can still certify a zero gap.
                match profile.depths[idx] {
                    DepthVerdict::Exact(ExtendedNat::Finite(dp)) if b >= dp => continue,
                    _ => {
                        return Err(Error::Indeterminate(format!(
                            "module depth at {} only known as >= {b}",
                            p.name
                        )))
                    }
                }
            }
        };
        let dp = match profile.depths[idx] {
            DepthVerdict::Exact(ExtendedNat::Finite(v)) => v,
            DepthVerdict::Exact(ExtendedNat::Infinity) => {
                return Err(Error::Internal("infinite ring depth at a proper prime".into()))
            }
            DepthVerdict::AtLeast(b) => {
                return Err(Error::Indeterminate(format!(
                    "ring depth at {} only known as >= {b}",
                    p.name
                )))
            }
        };
        sup = sup.max(dp.saturating_sub(dm));
    }
    Ok(sup)
}

/// Certified lower bound for the small restricted flat dimension: top Tor
/// degree against the test modules with complete finite resolutions. Modules
/// that cannot be certified are skipped and reported.
pub fn rfd_small_lower(
    ring: &QuotientRing,
    m: &PresentedModule,
    testset: &[(String, PresentedModule)],
    limits: &Limits,
) -> Result<(u64, Vec<String>)> {
    let mut best = 0u64;
    let mut skipped = Vec::new();
    for (name, f) in testset {
        let res = free_resolution(ring, f, limits.max_resolution_length, limits)?;
        if !res.complete {
            skipped.push(name.clone());
            continue;
        }
        for j in (1..=res.len()).rev() {
            if !tor(ring, f, m, j, limits)?.is_zero(ring, limits)? {
                best = best.max(j as u64);
                break;
            }
        }
    }
    Ok((best, skipped))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhiFilter {
    None,
    OrderPreserving,
    BothDefinable,
}

/// Exhaustive enumeration of depth-bounded functions on the table, optionally
/// filtered. Refuses product spaces above 10^7 without the explicit flag.
pub fn enumerate_phi(
    ring: &QuotientRing,
    profile: &DepthProfile,
    table: &PrimeTable,
    filter: PhiFilter,
    allow_large: bool,
) -> Result<Vec<PhiFunction>> {
    let mut radices = Vec::with_capacity(table.len());
    for (i, d) in profile.depths.iter().enumerate() {
        match d.exact() {
            Some(ExtendedNat::Finite(v)) => radices.push(v + 1),
            Some(ExtendedNat::Infinity) => {
                return Err(Error::Internal(format!(
                    "infinite ring depth at table entry {i}"
                )))
            }
            None => {
                return Err(Error::Indeterminate(format!(
                    "depth at entry {i} not exact; cannot enumerate"
                )))
            }
        }
    }
    let count: u64 = radices.iter().product();
    if count > 10_000_000 && !allow_large {
        return Err(Error::EnumerationTooLarge(count));
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; radices.len()];
    loop {
        let phi = PhiFunction {
            values: current.clone(),
            validated: true, // values bounded by depth by construction
        };
        let keep = match filter {
            PhiFilter::None => true,
            PhiFilter::OrderPreserving => is_order_preserving(&phi, table),
            PhiFilter::BothDefinable => both_definable(ring, &phi, table)?,
        };
        if keep {
            out.push(phi);
        }
        // Mixed-radix increment; most significant digit last.
        let mut pos = 0;
        loop {
            if pos == radices.len() {
                return Ok(out);
            }
            current[pos] += 1;
            if current[pos] < radices[pos] {
                break;
            }
            current[pos] = 0;
            pos += 1;
        }
    }
}

/// Ascending threshold chain X_n = { p : phi(p) <= n }, n = 0..=max phi.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetChain {
    pub sets: Vec<Vec<usize>>,
}

pub fn sequence_view(phi: &PhiFunction) -> SubsetChain {
    let top = phi.max_value();
    let sets = (0..=top)
        .map(|n| {
            phi.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v <= n)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    SubsetChain { sets }
}

/// Outcome of the main-oracle sweep: case counts and any hard disagreements.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub cases: usize,
    pub determinate: usize,
    pub indeterminate: usize,
    pub disagreements: Vec<String>,
}

/// Runs tor_oracle_membership against class_membership for every supplied
/// module and every depth-bounded function on the table.
pub fn verify_main_oracle(
    ring: &QuotientRing,
    modules: &[(String, PresentedModule)],
    table: &PrimeTable,
    profile: &DepthProfile,
    limits: &Limits,
) -> Result<OracleReport> {
    let phis = enumerate_phi(ring, profile, table, PhiFilter::None, false)?;
    let mut report = OracleReport::default();
    for phi in &phis {
        for (name, m) in modules {
            report.cases += 1;
            let by_depth = class_membership(ring, m, phi, 0, table, limits)?;
            let by_tor = tor_oracle_membership(ring, m, phi, table, limits)?;
            match (by_depth.determinate(), by_tor.determinate()) {
                (Some(a), Some(b)) => {
                    report.determinate += 1;
                    if a != b {
                        report.disagreements.push(format!(
                            "module {name}, phi {:?}: depth route {a}, tor route {b}",
                            phi.values
                        ));
                    }
                }
                _ => report.indeterminate += 1,
            }
        }
    }
    Ok(report)
}

/// Outcome of the round-trip sweep: functions checked and any mismatches.
#[derive(Clone, Debug, Default)]
pub struct RoundTripReport {
    pub cases: usize,
    pub mismatches: Vec<String>,
}

/// recover_phi(generator_set(phi)) must reproduce phi for every depth-bounded
/// function on the table.
pub fn verify_round_trip(
    ring: &QuotientRing,
    table: &PrimeTable,
    profile: &DepthProfile,
    limits: &Limits,
) -> Result<RoundTripReport> {
    let phis = enumerate_phi(ring, profile, table, PhiFilter::None, false)?;
    let mut report = RoundTripReport::default();
    for phi in &phis {
        report.cases += 1;
        let gens = generator_set(ring, phi, table, limits)?;
        let inputs: Vec<RecoverInput> = gens.iter().map(RecoverInput::from).collect();
        let recovered = recover_phi(ring, &inputs, table, limits)?;
        if recovered.values != phi.values {
            report.mismatches.push(format!(
                "phi {:?} recovered as {:?}",
                phi.values, recovered.values
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{full_profile, PrimeEntry};
    use crate::field::PrimeField;
    use crate::monomial::{MonomialOrder, OrderKind};
    use crate::parser::parse_polynomial;
    use crate::poly::{PolyRing, Polynomial};

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

    /// F101[x,y] with the chain (0) < (x) < (x,y).
    fn plane_chain() -> (QuotientRing, PrimeTable, DepthProfile) {
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
        let profile = full_profile(&r, &table, true, &lims()).unwrap();
        (r, table, profile)
    }

    /// F101[x,y] with the diamond (0) < (x),(y) < (x,y).
    fn plane_diamond() -> (QuotientRing, PrimeTable, DepthProfile) {
        let r = free_ring(&["x", "y"]);
        let table = PrimeTable::new(
            &r,
            vec![
                prime(&r, "zero", &[]),
                prime(&r, "px", &["x"]),
                prime(&r, "py", &["y"]),
                prime(&r, "m", &["x", "y"]),
            ],
        )
        .unwrap();
        let profile = full_profile(&r, &table, true, &lims()).unwrap();
        (r, table, profile)
    }

    #[test]
    fn validate_against_depths() {
        let (_, _, profile) = plane_chain();
        let mut zero = PhiFunction::new(vec![0, 0, 0]);
        assert!(validate_phi(&mut zero, &profile).unwrap().is_empty());
        assert!(zero.validated);

        let mut depth_fn = PhiFunction::new(vec![0, 1, 2]);
        assert!(validate_phi(&mut depth_fn, &profile).unwrap().is_empty());

        let nodal = quot(&["x", "y"], &["x*y"]);
        let t = PrimeTable::new(&nodal, vec![prime(&nodal, "m", &["x", "y"])]).unwrap();
        let prof = full_profile(&nodal, &t, false, &lims()).unwrap();
        let mut too_big = PhiFunction::new(vec![2]);
        assert_eq!(validate_phi(&mut too_big, &prof).unwrap(), vec![0]);
        assert!(!too_big.validated);
    }

    #[test]
    fn membership_by_depth() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let mut zero = PhiFunction::new(vec![0, 0, 0]);
        validate_phi(&mut zero, &profile).unwrap();
        let k = PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]);
        assert!(class_membership(&r, &k, &zero, 0, &table, &lims)
            .unwrap()
            .is_member());

        let mut depth_fn = PhiFunction::new(vec![0, 1, 2]);
        validate_phi(&mut depth_fn, &profile).unwrap();
        let ring_mod = PresentedModule::free(1);
        assert!(class_membership(&r, &ring_mod, &depth_fn, 0, &table, &lims)
            .unwrap()
            .is_member());

        // Residue field at m: member of the i-th shift iff phi(m) <= i.
        for i in 0..=2u64 {
            let v = class_membership(&r, &k, &depth_fn, i, &table, &lims).unwrap();
            assert_eq!(v.is_member(), depth_fn.values[2] <= i, "shift {i}");
        }
    }

    #[test]
    fn shift_coherence() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let mut phi = PhiFunction::new(vec![0, 1, 2]);
        validate_phi(&mut phi, &profile).unwrap();
        let mods = [
            PresentedModule::free(1),
            PresentedModule::cyclic(&[p(&r, "x")]),
            PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]),
        ];
        for m in &mods {
            let mut prev = false;
            for i in 0..=3u64 {
                let now = class_membership(&r, m, &phi, i, &table, &lims)
                    .unwrap()
                    .is_member();
                assert!(!prev || now, "membership must be monotone in the shift");
                prev = now;
            }
        }
    }

    #[test]
    fn generators_of_small_functions() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let mut zero = PhiFunction::new(vec![0, 0, 0]);
        validate_phi(&mut zero, &profile).unwrap();
        assert!(generator_set(&r, &zero, &table, &lims).unwrap().is_empty());

        let mut one_at_m = PhiFunction::new(vec![0, 0, 1]);
        validate_phi(&mut one_at_m, &profile).unwrap();
        let gens = generator_set(&r, &one_at_m, &table, &lims).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].prime, 2);
        assert_eq!(gens[0].level, 1);
        assert!(gens[0].localized);
        // S_1(m;R) = R^2 / <(x,y)>.
        assert_eq!(gens[0].module.generators, 2);
        assert_eq!(gens[0].module.relations.source, 1);
    }

    #[test]
    fn tor_oracle_examples() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let mut phi = PhiFunction::new(vec![0, 0, 1]);
        validate_phi(&mut phi, &profile).unwrap();

        let ring_mod = PresentedModule::free(1);
        assert!(tor_oracle_membership(&r, &ring_mod, &phi, &table, &lims)
            .unwrap()
            .is_member());

        let k = PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]);
        let v = tor_oracle_membership(&r, &k, &phi, &table, &lims).unwrap();
        assert!(matches!(v, Verdict::NonMember { prime: 2, .. }));

        let rx = PresentedModule::cyclic(&[p(&r, "x")]);
        assert!(tor_oracle_membership(&r, &rx, &phi, &table, &lims)
            .unwrap()
            .is_member());
    }

    #[test]
    fn recover_from_flat_and_hypersurface() {
        let lims = lims();
        let line = free_ring(&["x"]);
        let table = PrimeTable::new(
            &line,
            vec![prime(&line, "zero", &[]), prime(&line, "px", &["x"])],
        )
        .unwrap();

        let flat = vec![RecoverInput {
            name: "R".into(),
            module: PresentedModule::free(1),
            localize_at: None,
        }];
        assert_eq!(recover_phi(&line, &flat, &table, &lims).unwrap().values, vec![0, 0]);

        let hyper = vec![RecoverInput {
            name: "R/(x)".into(),
            module: PresentedModule::cyclic(&[p(&line, "x")]),
            localize_at: None,
        }];
        assert_eq!(
            recover_phi(&line, &hyper, &table, &lims).unwrap().values,
            vec![0, 1]
        );
    }

    #[test]
    fn recover_refuses_uncertified_generators() {
        let r = quot(&["x"], &["x^2"]);
        let lims = lims();
        let table = PrimeTable::new(&r, vec![prime(&r, "m", &["x"])]).unwrap();
        let gens = vec![RecoverInput {
            name: "k".into(),
            module: PresentedModule::cyclic(&[p(&r, "x")]),
            localize_at: None,
        }];
        assert!(matches!(
            recover_phi(&r, &gens, &table, &lims),
            Err(Error::Uncertified(_))
        ));
    }

    #[test]
    fn order_preservation() {
        let (_, table, _) = plane_chain();
        let constant = PhiFunction::new(vec![1, 1, 1]);
        assert!(is_order_preserving(&constant, &table));
        let witness = PhiFunction::new(vec![0, 1, 0]);
        assert!(!is_order_preserving(&witness, &table));
        let depth_fn = PhiFunction::new(vec![0, 1, 2]);
        assert!(is_order_preserving(&depth_fn, &table));
    }

    #[test]
    fn regular_duality_involution() {
        let (r, table, profile) = plane_chain();
        let heights = profile.heights.clone().unwrap();
        assert_eq!(heights, vec![0, 1, 2]);
        let mut phi = PhiFunction::new(vec![0, 1, 2]);
        validate_phi(&mut phi, &profile).unwrap();
        let psi = regular_dual(&r, &phi, &heights, &table).unwrap();
        assert_eq!(psi.values, vec![0, 0, 0]);
        assert!(psi.validated);
        let back = regular_dual(&r, &psi, &heights, &table).unwrap();
        assert_eq!(back.values, phi.values);

        let nodal = quot(&["x", "y"], &["x*y"]);
        let t = PrimeTable::new(&nodal, vec![prime(&nodal, "m", &["x", "y"])]).unwrap();
        let mut f = PhiFunction::new(vec![0]);
        f.validated = true;
        assert!(matches!(
            regular_dual(&nodal, &f, &[0], &t),
            Err(Error::NotRegular)
        ));
    }

    #[test]
    fn both_definable_gaps() {
        let (r, table, _) = plane_chain();
        let height_fn = PhiFunction::new(vec![0, 1, 2]);
        assert!(both_definable(&r, &height_fn, &table).unwrap());
        let zero = PhiFunction::new(vec![0, 0, 0]);
        assert!(both_definable(&r, &zero, &table).unwrap());

        // Two-entry table with a gap of 2 across the only immediate pair.
        let r2 = free_ring(&["x", "y"]);
        let t2 = PrimeTable::new(
            &r2,
            vec![prime(&r2, "zero", &[]), prime(&r2, "m", &["x", "y"])],
        )
        .unwrap();
        let gap = PhiFunction::new(vec![0, 2]);
        assert!(!both_definable(&r2, &gap, &t2).unwrap());
    }

    #[test]
    fn almost_cm_on_small_rings() {
        let (_, _, profile) = plane_chain();
        assert!(almost_cm_check(&profile).unwrap().0);

        let fat = quot(&["x", "y"], &["x^2", "x*y"]);
        let t = PrimeTable::new(
            &fat,
            vec![prime(&fat, "px", &["x"]), prime(&fat, "m", &["x", "y"])],
        )
        .unwrap();
        let prof = full_profile(&fat, &t, false, &lims()).unwrap();
        assert!(almost_cm_check(&prof).unwrap().0);
    }

    #[test]
    fn enumeration_counts() {
        let (r, table, profile) = plane_diamond();
        let all = enumerate_phi(&r, &profile, &table, PhiFilter::None, false).unwrap();
        assert_eq!(all.len(), 12);
        let op = enumerate_phi(&r, &profile, &table, PhiFilter::OrderPreserving, false).unwrap();
        assert_eq!(op.len(), 9);
    }

    #[test]
    fn threshold_chain() {
        let phi = PhiFunction::new(vec![0, 1, 2]);
        let chain = sequence_view(&phi);
        assert_eq!(chain.sets, vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        let zero = PhiFunction::new(vec![0, 0, 0]);
        assert_eq!(sequence_view(&zero).sets, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn rfd_examples() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        assert_eq!(
            rfd(&r, &PresentedModule::free(1), &table, &profile, &lims).unwrap(),
            0
        );
        let k = PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]);
        assert_eq!(rfd(&r, &k, &table, &profile, &lims).unwrap(), 2);
        let rx = PresentedModule::cyclic(&[p(&r, "x")]);
        assert_eq!(rfd(&r, &rx, &table, &profile, &lims).unwrap(), 1);
    }

    #[test]
    fn rfd_small_lower_bound() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let m_gens = [p(&r, "x"), p(&r, "y")];
        let k = PresentedModule::cyclic(&m_gens);
        let ring_mod = PresentedModule::free(1);
        let s1 = cocycle_module(&r, &m_gens, &ring_mod, 1, &lims).unwrap();
        let s2 = cocycle_module(&r, &m_gens, &ring_mod, 2, &lims).unwrap();

        let (trivial, skipped) =
            rfd_small_lower(&r, &k, &[("R".into(), ring_mod)], &lims).unwrap();
        assert_eq!((trivial, skipped.len()), (0, 0));

        let testset = vec![("S1".into(), s1), ("S2".into(), s2)];
        let (lower, skipped) = rfd_small_lower(&r, &k, &testset, &lims).unwrap();
        assert!(skipped.is_empty());
        assert_eq!(lower, 2);
        assert!(lower <= rfd(&r, &k, &table, &profile, &lims).unwrap());
    }

    #[test]
    fn main_oracle_smoke() {
        let (r, table, profile) = plane_chain();
        let lims = lims();
        let modules = vec![
            ("R".to_string(), PresentedModule::free(1)),
            ("R/(x)".to_string(), PresentedModule::cyclic(&[p(&r, "x")])),
            (
                "k".to_string(),
                PresentedModule::cyclic(&[p(&r, "x"), p(&r, "y")]),
            ),
        ];
        let report = verify_main_oracle(&r, &modules, &table, &profile, &lims).unwrap();
        assert_eq!(report.cases, 18); // 6 functions x 3 modules
        assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
        assert_eq!(report.indeterminate, 0);
    }

    #[test]
    fn round_trip_smoke() {
        let (r, table, profile) = plane_chain();
        let report = verify_round_trip(&r, &table, &profile, &lims()).unwrap();
        assert_eq!(report.cases, 6);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }
}
