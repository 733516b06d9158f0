//! Conjugation orbits on the minimal primes of the base, exact trace ideals,
//! and the certified lift of the primes to the whole monoid.
//!
//! Conjugation by a transversal word permutes the base generators, hence the
//! minimal primes of the base. Each orbit is intersected into its trace
//! ideal; the trace generators are computed exactly, as the degree-one slice
//! of the Hilbert basis of a homogenised cone, never by bounded enumeration.
//! The separation certificates then reduce the ring-level prime statements to
//! finitely many base membership queries around one central element, and
//! [`minimal_primes_of_S`] reports the orbit-indexed primes exactly when
//! those certificates hold.

use super::{group_extension_of, CrossedElement, CrossedError, CrossedSystem, GroupExtension};
use crate::affine::{
    hilbert_basis, intersect_halfspaces, AffineMonoid, FacePrime, HilbertBudget, Membership,
    Normality,
};
use crate::lattice::IntVector;
use crate::report::Status;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fallback bound on the exponent searched by the power certificate.
pub const DEFAULT_POWER_BOUND: usize = 8;

/// Generators of one orbit's trace: the elements of the base lying in every
/// prime of the orbit, minimal under division inside the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceIdeal {
    /// Ambient vectors, sorted.
    pub generators: Vec<IntVector>,
    /// The same elements written as products of named base generators.
    pub names: Vec<String>,
}

/// How conjugation moves the minimal primes of the base around.
#[derive(Debug)]
pub struct OrbitDecomposition {
    pub primes: Vec<FacePrime>,
    /// `permutations[component][q]` is where transversal word `component`
    /// sends prime `q`.
    pub permutations: Vec<Vec<usize>>,
    /// Partition of the prime indices, each block sorted, blocks ordered by
    /// their smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// Trace ideal of each orbit, aligned with `orbits`.
    pub traces: Vec<TraceIdeal>,
}

/// Certificates reducing the primality statements to base membership.
#[derive(Debug)]
pub struct SeparationReport {
    /// Conjugation-invariant base elements found among the orbit products of
    /// the base generators (ambient vectors, deduplicated).
    pub central_candidates: Vec<IntVector>,
    /// The invariant element the certificates are anchored to.
    pub chosen: Option<(IntVector, String)>,
    /// Every cross-orbit product `b * w * b'` of trace generators lands in
    /// the chosen element's two-sided ideal.
    pub pair_checks: Status,
    /// Some power of the chosen element lies in every ideal generated by a
    /// presentation generator.
    pub power_in_generator_ideals: Status,
    pub power_exponent: Option<usize>,
    pub orbit_count: usize,
    pub overall: Status,
}

/// One minimal prime of the whole monoid, indexed by its orbit downstairs.
#[derive(Clone, Debug)]
pub struct LiftedPrime {
    pub orbit: Vec<usize>,
    pub trace_generators: Vec<IntVector>,
    pub trace_names: Vec<String>,
}

/// The lifted minimal primes, certified or explicitly unknown.
#[derive(Debug)]
pub struct MinimalPrimeReport {
    pub status: Status,
    pub primes: Vec<LiftedPrime>,
    pub separation: Option<SeparationReport>,
    /// Set when a degenerate shape let the answer bypass the certificates.
    pub shortcut: Option<String>,
}

fn gr(cs: &CrossedSystem, v: &IntVector) -> Result<IntVector, CrossedError> {
    cs.base.group_coordinates(v).ok_or_else(|| {
        CrossedError::Invariant("base element outside the group lattice".into())
    })
}

/// Membership of `v` in the face submonoid of `prime`.
fn in_face(base: &AffineMonoid, prime: &FacePrime, v: &IntVector) -> Result<bool, CrossedError> {
    if prime.face.is_empty() {
        return Ok(v.is_zero());
    }
    let named: Vec<(String, IntVector)> = prime
        .face
        .iter()
        .map(|&g| (base.generator_names[g].clone(), base.generators[g].clone()))
        .collect();
    let fm = AffineMonoid::new("face", base.ambient_rank, named)
        .map_err(|e| CrossedError::Invariant(format!("face submonoid: {}", e)))?;
    match fm.member(v) {
        Membership::Member(_) => Ok(true),
        Membership::NotMember => Ok(false),
        Membership::Unknown { reason } => Err(CrossedError::Certificate { needed: reason }),
    }
}

/// Writes a base element as a product of named generators, via a membership
/// certificate.
fn product_name(base: &AffineMonoid, v: &IntVector) -> Result<String, CrossedError> {
    let cert = match base.member(v) {
        Membership::Member(c) => c,
        Membership::NotMember => {
            return Err(CrossedError::Invariant(
                "named element lies outside the base".into(),
            ))
        }
        Membership::Unknown { reason } => return Err(CrossedError::Certificate { needed: reason }),
    };
    let mut parts = Vec::new();
    for (g, c) in cert.coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c == &BigInt::one() {
            parts.push(base.generator_names[g].clone());
        } else {
            parts.push(format!("{}^{}", base.generator_names[g], c));
        }
    }
    if parts.is_empty() {
        return Ok("1".into());
    }
    Ok(parts.join("*"))
}

/// Exact generators of `B ∩ (intersection of the orbit's primes)`.
///
/// Works in group-basis coordinates, where the base is the full lattice cone:
/// the trace is cut out by pushing the orbit's facets to level one, and its
/// minimal generators are exactly the degree-one elements of the Hilbert
/// basis of the homogenised cone.
fn orbit_trace(
    cs: &CrossedSystem,
    base_gr: &AffineMonoid,
    primes: &[FacePrime],
    orbit: &[usize],
) -> Result<TraceIdeal, CrossedError> {
    let rank = base_gr.ambient_rank;
    let facets = base_gr.facets().to_vec();

    // which facets cut out which minimal prime
    let mut facet_prime: Vec<usize> = Vec::with_capacity(facets.len());
    for h in &facets {
        let face: Vec<usize> = (0..base_gr.generators.len())
            .filter(|&g| h.dot(&base_gr.generators[g]).is_zero())
            .collect();
        let q = primes
            .iter()
            .position(|p| p.face == face)
            .ok_or_else(|| {
                CrossedError::Invariant("facet face does not match any minimal prime".into())
            })?;
        facet_prime.push(q);
    }

    let mut normals: Vec<IntVector> = Vec::with_capacity(facets.len() + 1);
    for (h, q) in facets.iter().zip(&facet_prime) {
        let mut v = h.0.clone();
        v.push(if orbit.contains(q) {
            BigInt::from(-1)
        } else {
            BigInt::zero()
        });
        normals.push(IntVector(v));
    }
    normals.push(IntVector::unit(rank + 1, rank));

    let cone = intersect_halfspaces(rank + 1, &normals);
    if !cone.lineality.is_empty() {
        return Err(CrossedError::Invariant(
            "trace cone unexpectedly has lineality".into(),
        ));
    }
    let hb = hilbert_basis(rank + 1, &cone.rays, HilbertBudget::default())
        .map_err(|e| CrossedError::Certificate { needed: e })?;

    let mut generators: Vec<IntVector> = Vec::new();
    for v in hb {
        if v.0[rank] == BigInt::one() {
            let coords = IntVector(v.0[..rank].to_vec());
            generators.push(cs.base.from_group_coordinates(&coords));
        }
    }
    generators.sort();

    // independent cross-check: each generator is a base element belonging to
    // every prime of the orbit
    for t in &generators {
        match cs.base.member(t) {
            Membership::Member(_) => {}
            Membership::NotMember => {
                return Err(CrossedError::Invariant(
                    "trace generator fell outside the base".into(),
                ))
            }
            Membership::Unknown { reason } => {
                return Err(CrossedError::Certificate { needed: reason })
            }
        }
        for &q in orbit {
            if in_face(&cs.base, &primes[q], t)? {
                return Err(CrossedError::Invariant(
                    "trace generator misses a prime of its orbit".into(),
                ));
            }
        }
    }

    let names = generators
        .iter()
        .map(|t| product_name(&cs.base, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TraceIdeal { generators, names })
}

/// The permutation each transversal word induces on the minimal primes of
/// the base, the orbits, and each orbit's exact trace ideal.
pub fn prime_action_orbits(cs: &CrossedSystem) -> Result<OrbitDecomposition, CrossedError> {
    let primes = cs.base.minimal_primes();

    if cs.base.unit_rank() > 0 {
        return Err(CrossedError::Certificate {
            needed: "unit-free base for trace ideal generators".into(),
        });
    }
    match cs.base.is_maximal_order() {
        Normality::Normal => {}
        Normality::NotNormal { .. } => {
            return Err(CrossedError::Certificate {
                needed: "a normal base; trace ideals are only computed exactly over one".into(),
            })
        }
        Normality::Unknown { reason } => {
            return Err(CrossedError::Certificate { needed: reason })
        }
    }

    // permutations of the primes through the generator permutations
    let mut permutations: Vec<Vec<usize>> = Vec::with_capacity(cs.components());
    for (i, perm) in cs.generator_permutation.iter().enumerate() {
        let mut on_primes = Vec::with_capacity(primes.len());
        for p in &primes {
            let mut image: Vec<usize> = p.prime.iter().map(|&g| perm[g]).collect();
            image.sort_unstable();
            let q = primes
                .iter()
                .position(|other| other.prime == image)
                .ok_or_else(|| {
                    CrossedError::Invariant(format!(
                        "conjugation by transversal word {} does not permute the minimal primes",
                        i
                    ))
                })?;
            on_primes.push(q);
        }
        permutations.push(on_primes);
    }

    // orbits under all the permutations
    let mut root: Vec<usize> = (0..primes.len()).collect();
    fn find(root: &mut Vec<usize>, mut q: usize) -> usize {
        while root[q] != q {
            root[q] = root[root[q]];
            q = root[q];
        }
        q
    }
    for perm in &permutations {
        for q in 0..primes.len() {
            let (a, b) = (find(&mut root, q), find(&mut root, perm[q]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                root[hi] = lo;
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for q in 0..primes.len() {
        if find(&mut root, q) == q {
            let members: Vec<usize> = (0..primes.len())
                .filter(|&p| find(&mut root, p) == q)
                .collect();
            orbits.push(members);
        }
    }
    orbits.sort_by_key(|o| o[0]);

    // base in group coordinates, where the trace computation is exact
    let gens_gr: Vec<(String, IntVector)> = cs
        .base
        .generators
        .iter()
        .zip(&cs.base.generator_names)
        .map(|(g, n)| Ok((n.clone(), gr(cs, g)?)))
        .collect::<Result<_, CrossedError>>()?;
    let base_gr = AffineMonoid::new(
        format!("{}.coords", cs.base.name),
        cs.base.group_rank(),
        gens_gr,
    )
    .map_err(|e| CrossedError::Invariant(format!("group-coordinate base: {}", e)))?;

    let traces = orbits
        .iter()
        .map(|orbit| orbit_trace(cs, &base_gr, &primes, orbit))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(OrbitDecomposition {
        primes,
        permutations,
        orbits,
        traces,
    })
}

/// Conjugation-invariant base elements: one product per orbit of the base
/// generators under all the generator permutations.
fn central_candidates(cs: &CrossedSystem) -> Vec<IntVector> {
    let gens = cs.base.generators.len();
    let mut root: Vec<usize> = (0..gens).collect();
    fn find(root: &mut Vec<usize>, mut g: usize) -> usize {
        while root[g] != g {
            root[g] = root[root[g]];
            g = root[g];
        }
        g
    }
    for perm in &cs.generator_permutation {
        for g in 0..gens {
            let (a, b) = (find(&mut root, g), find(&mut root, perm[g]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                root[hi] = lo;
            }
        }
    }
    let mut products: Vec<IntVector> = Vec::new();
    for r in 0..gens {
        if find(&mut root, r) != r {
            continue;
        }
        let mut z = IntVector::zeros(cs.base.ambient_rank);
        for g in 0..gens {
            if find(&mut root, g) == r {
                z = z.add(&cs.base.generators[g]);
            }
        }
        products.push(z);
    }
    products.sort();
    products.dedup();
    products
}

fn pair_status(
    cs: &CrossedSystem,
    ext: &GroupExtension,
    orbits: &OrbitDecomposition,
    z_gr: &IntVector,
) -> Result<Status, CrossedError> {
    for (a, ta) in orbits.traces.iter().enumerate() {
        for (b, tb) in orbits.traces.iter().enumerate() {
            if a == b {
                continue;
            }
            for i in 0..cs.components() {
                for (va, na) in ta.generators.iter().zip(&ta.names) {
                    for (vb, nb) in tb.generators.iter().zip(&tb.names) {
                        let coords = gr(cs, va)?
                            .add(&cs.action[i].mul_vec(&gr(cs, vb)?))
                            .sub(z_gr);
                        let shifted = CrossedElement {
                            coords,
                            component: i,
                        };
                        match ext.element_in_monoid(cs, &shifted) {
                            Some(true) => {}
                            Some(false) => {
                                return Ok(Status::unknown(format!(
                                    "{} * {} * {} does not land in the central element's ideal",
                                    na,
                                    cs.transversal[i].format(&cs.rewrite.generators),
                                    nb
                                )))
                            }
                            None => {
                                return Ok(Status::unknown(
                                    "membership budget exhausted during a separation instance",
                                ))
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Status::Verified)
}

/// Smallest exponent per generator ideal, if any within the bound.
fn power_status(
    cs: &CrossedSystem,
    ext: &GroupExtension,
    z_gr: &IntVector,
    bound: usize,
) -> Result<(Status, Option<usize>), CrossedError> {
    let t = cs.components();
    let mut worst = 0usize;
    for l in 0..cs.rewrite.generator_count() {
        let c = cs.letter_element(l as u32).clone();
        let mut found: Option<usize> = None;
        'powers: for m in 1..=bound {
            let target = z_gr.scale(&BigInt::from(m));
            for i in 0..t {
                let k1 = cs.product_table[i][c.component].1;
                for j in 0..t {
                    let k2 = cs.product_table[k1][j].1;
                    if ext.classes[k2] != ext.identity_class() {
                        continue;
                    }
                    // solve for the left base factor of z^m = b1 * wi * x * wj
                    let b1 = target
                        .sub(&ext.deltas[k2])
                        .sub(&cs.action[i].mul_vec(&c.coords))
                        .sub(&cs.table_coords[i][c.component])
                        .sub(&cs.table_coords[k1][j]);
                    if let Membership::Member(_) =
                        cs.base.member(&cs.base.from_group_coordinates(&b1))
                    {
                        found = Some(m);
                        break 'powers;
                    }
                }
            }
        }
        match found {
            Some(m) => worst = worst.max(m),
            None => {
                return Ok((
                    Status::unknown(format!(
                        "no power of the central element up to {} landed in the ideal of `{}`",
                        bound, cs.rewrite.generators[l]
                    )),
                    None,
                ))
            }
        }
    }
    Ok((Status::Verified, Some(worst.max(1))))
}

/// Runs the separation certificates with the default exponent bound.
pub fn separation_certificates(cs: &CrossedSystem) -> Result<SeparationReport, CrossedError> {
    separation_certificates_with(cs, DEFAULT_POWER_BOUND)
}

/// Finds a conjugation-invariant element and certifies, by exact membership
/// queries, that cross-orbit products of trace generators fall into its
/// ideal and that one of its powers lies in every generator ideal. With
/// fewer than two orbits there is nothing to separate and the report is
/// vacuously verified.
pub fn separation_certificates_with(
    cs: &CrossedSystem,
    power_bound: usize,
) -> Result<SeparationReport, CrossedError> {
    let orbits = prime_action_orbits(cs)?;
    let ext = group_extension_of(cs)?;
    let candidates = central_candidates(cs);
    let orbit_count = orbits.orbits.len();

    if orbit_count <= 1 {
        return Ok(SeparationReport {
            central_candidates: candidates,
            chosen: None,
            pair_checks: Status::Verified,
            power_in_generator_ideals: Status::Verified,
            power_exponent: None,
            orbit_count,
            overall: Status::Verified,
        });
    }

    let mut first: Option<(Status, Status, Option<usize>, IntVector)> = None;
    for z in &candidates {
        let z_gr = gr(cs, z)?;
        debug_assert!(cs
            .action
            .iter()
            .all(|a| a.mul_vec(&z_gr) == z_gr));
        let pair = pair_status(cs, &ext, &orbits, &z_gr)?;
        let (power, exponent) = power_status(cs, &ext, &z_gr, power_bound)?;
        if pair.is_verified() && power.is_verified() {
            let name = product_name(&cs.base, z)?;
            return Ok(SeparationReport {
                central_candidates: candidates.clone(),
                chosen: Some((z.clone(), name)),
                pair_checks: pair,
                power_in_generator_ideals: power,
                power_exponent: exponent,
                orbit_count,
                overall: Status::Verified,
            });
        }
        if first.is_none() {
            first = Some((pair, power, exponent, z.clone()));
        }
    }

    let (pair, power, exponent, _z) = first.ok_or_else(|| {
        CrossedError::Invariant("no conjugation-invariant candidate element exists".into())
    })?;
    let overall = Status::combine_all([&pair, &power]);
    Ok(SeparationReport {
        central_candidates: candidates,
        chosen: None,
        pair_checks: pair,
        power_in_generator_ideals: power,
        power_exponent: exponent,
        orbit_count,
        overall,
    })
}

/// Reports the minimal primes of the whole monoid: one per orbit, with the
/// orbit's trace as the base part, certified through the separation
/// certificates. With a trivial transversal the monoid equals its base and
/// the affine spectrum answers directly.
#[allow(non_snake_case)]
pub fn minimal_primes_of_S(cs: &CrossedSystem) -> Result<MinimalPrimeReport, CrossedError> {
    let orbits = prime_action_orbits(cs)?;
    let primes: Vec<LiftedPrime> = orbits
        .orbits
        .iter()
        .zip(&orbits.traces)
        .map(|(orbit, trace)| LiftedPrime {
            orbit: orbit.clone(),
            trace_generators: trace.generators.clone(),
            trace_names: trace.names.clone(),
        })
        .collect();

    if cs.components() == 1 {
        return Ok(MinimalPrimeReport {
            status: Status::Verified,
            primes,
            separation: None,
            shortcut: Some(
                "trivial transversal: the monoid equals its base and the base spectrum lifts as is"
                    .into(),
            ),
        });
    }

    let separation = separation_certificates(cs)?;
    let status = separation.overall.clone();
    Ok(MinimalPrimeReport {
        status,
        primes,
        separation: Some(separation),
        shortcut: None,
    })
}

/// Is each orbit trace carried into itself by every conjugation? Exact
/// membership checks once the separation certificates stand; `Unknown` while
/// they do not.
pub fn invariance_condition(cs: &CrossedSystem) -> Result<Status, CrossedError> {
    let orbits = prime_action_orbits(cs)?;

    if cs.components() > 1 {
        let separation = separation_certificates(cs)?;
        if !separation.overall.is_verified() {
            return Ok(Status::unknown(
                "separation certificates unavailable, so the traces are not certified to cut out the lifted primes",
            ));
        }
    }

    for trace in &orbits.traces {
        for i in 0..cs.components() {
            for (v, name) in trace.generators.iter().zip(&trace.names) {
                let image = cs
                    .base
                    .from_group_coordinates(&cs.action[i].mul_vec(&gr(cs, v)?));
                let mut unknown = false;
                let mut inside = false;
                for u in &trace.generators {
                    match cs.base.member(&image.sub(u)) {
                        Membership::Member(_) => {
                            inside = true;
                            break;
                        }
                        Membership::NotMember => {}
                        Membership::Unknown { .. } => unknown = true,
                    }
                }
                if inside {
                    continue;
                }
                if unknown {
                    return Ok(Status::unknown(
                        "membership budget exhausted while checking trace invariance",
                    ));
                }
                return Ok(Status::refuted(format!(
                    "conjugate of {} by `{}` leaves its trace ideal",
                    name,
                    cs.transversal[i].format(&cs.rewrite.generators)
                )));
            }
        }
    }
    Ok(Status::Verified)
}
