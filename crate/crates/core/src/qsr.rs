//! Quasi-semiregularity: three decision routes, three fixed-point counts,
//! whole-action scans and the closed-form predictions for Sym(n)/Alt(n).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::actions::ActionInstance;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{Orbit, PermGroup};
use crate::par::{self, Exec};
use crate::perm::{CycleType, PermKey, Permutation};
use crate::structure::{
    conj_act, conjugacy_classes, cyclic_act, cyclic_key, subgroup_key, ClassList, ORBIT_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Direct,
    FusionCentralizer,
    NormalizerFusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QsrCertificate {
    /// The element, as a permutation of the action's domain.
    pub element: Permutation,
    pub order: u64,
    pub fixed_point: usize,
    pub cycle_length: u64,
    pub criteria: Vec<Criterion>,
    pub action: String,
}

/// Unique fixed point of `g` if `g` is quasi-semiregular: exactly one fixed
/// point and every other cycle of length `|g|`.
pub fn qsr_fixed_point(g: &Permutation) -> Option<usize> {
    match g.cycle_type().parts() {
        [(1, 1)] | [(1, 1), _] => g.fixed_points().first().map(|&x| x as usize),
        _ => None,
    }
}

/// Checks `g` (an element of the action's source group) directly on the
/// realized domain.
pub fn is_qsr_direct(a: &ActionInstance, g: &Permutation) -> Option<QsrCertificate> {
    let image = a.act(g);
    let fixed = qsr_fixed_point(&image)?;
    let order = image.order();
    Some(QsrCertificate {
        order,
        fixed_point: fixed,
        cycle_length: order,
        criteria: vec![Criterion::Direct],
        action: a.label().to_string(),
        element: image,
    })
}

/// How a G-orbit (of elements or of cyclic subgroups) meets `H`: its size,
/// and the sizes of the H-orbits into which the part inside `H` splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub g_orbit: u64,
    pub h_orbits: Vec<u64>,
    /// One key from each H-orbit, in the order of `h_orbits`.
    pub h_reps: Vec<PermKey>,
}

impl Intersection {
    pub fn in_h(&self) -> u64 {
        self.h_orbits.iter().sum()
    }
}

/// Splits `orbit ∩ H` into H-orbits.  Each orbit point is a key whose
/// permutation (an element, or a generator of a cyclic subgroup) is tested
/// for membership in `h`.
pub fn intersect_orbit(
    orbit: &Orbit<PermKey>,
    h: &PermGroup,
    act: fn(&PermKey, &Permutation) -> PermKey,
    exec: Exec,
) -> Result<Intersection> {
    let n = h.degree();
    let members: Vec<PermKey> = par::collect_chunks(exec, orbit.len() as u64, 1 << 12, |a, b| {
        (a..b)
            .map(|i| orbit.get(i as usize))
            .filter(|k| h.contains(&Permutation::from_key(k, n)))
            .cloned()
            .collect()
    });
    let mut remaining: FxHashSet<PermKey> = members.iter().cloned().collect();
    let mut found: Vec<(u64, PermKey)> = Vec::new();
    for k in &members {
        if !remaining.contains(k) {
            continue;
        }
        let o = Orbit::new(h.generators(), k.clone(), act, ORBIT_LIMIT)?;
        for y in o.iter() {
            if !remaining.remove(y) {
                return Err(Error::Internal("H-orbit leaves the G-orbit".into()));
            }
        }
        found.push((o.len() as u64, k.clone()));
    }
    found.sort_unstable();
    Ok(Intersection {
        g_orbit: orbit.len() as u64,
        h_orbits: found.iter().map(|f| f.0).collect(),
        h_reps: found.into_iter().map(|f| f.1).collect(),
    })
}

pub fn element_orbit(g: &PermGroup, x: &Permutation) -> Result<Orbit<PermKey>> {
    Orbit::new(g.generators(), x.key(), conj_act, ORBIT_LIMIT)
}

pub fn cyclic_orbit(g: &PermGroup, x: &Permutation) -> Result<Orbit<PermKey>> {
    Orbit::new(g.generators(), cyclic_key(x), cyclic_act, ORBIT_LIMIT)
}

fn check_prime_member(h: &PermGroup, x: &Permutation) -> Result<()> {
    if !is_prime(x.order()) {
        return Err(Error::NotPrimeOrder);
    }
    if !h.contains(x) {
        return Err(Error::NotASubgroup);
    }
    Ok(())
}

/// `x^G ∩ H = x^H` and `|C_G(x)| = |C_H(x)|`, from the orbit data of
/// `x` (any element of the class meeting `H`).
pub fn fusion_verdict(g_order: &BigUint, h_order: &BigUint, data: &Intersection) -> bool {
    // one H-class, and |G|/|x^G| = |H|/|x^H|
    data.h_orbits.len() == 1 && g_order * data.h_orbits[0] == h_order * data.g_orbit
}

/// Same test for the cyclic subgroup: `K^G ∩ H = K^H` and
/// `|N_G(K)| = |N_H(K)|`.
pub fn normalizer_verdict(g_order: &BigUint, h_order: &BigUint, data: &Intersection) -> bool {
    fusion_verdict(g_order, h_order, data)
}

/// Fusion and centralizer criterion for `x ∈ H` of prime order.
pub fn is_qsr_fusion(g: &PermGroup, h: &PermGroup, x: &Permutation, exec: Exec) -> Result<bool> {
    check_prime_member(h, x)?;
    let data = intersect_orbit(&element_orbit(g, x)?, h, conj_act, exec)?;
    Ok(fusion_verdict(&g.order(), &h.order(), &data))
}

/// Normalizer and subgroup-fusion criterion for `K = <x>`, `x ∈ H` of
/// prime order.
pub fn is_qsr_normalizer(
    g: &PermGroup,
    h: &PermGroup,
    x: &Permutation,
    exec: Exec,
) -> Result<bool> {
    check_prime_member(h, x)?;
    let data = intersect_orbit(&cyclic_orbit(g, x)?, h, cyclic_act, exec)?;
    Ok(normalizer_verdict(&g.order(), &h.order(), &data))
}

fn exact_div(num: BigUint, den: &BigUint, what: &str) -> Result<u64> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: inexact division")));
    }
    q.to_u64()
        .ok_or_else(|| Error::Internal(format!("{what}: count overflows")))
}

/// Fixed points of `g` on `[G:H]`: `|G:H| |g^G ∩ H| / |g^G|`.
pub fn fixed_points_formula(index: &BigUint, class_size: u64, in_h: u64) -> Result<u64> {
    exact_div(
        index * in_h,
        &BigUint::from(class_size),
        "fixed-point formula",
    )
}

/// The same count as a sum over the H-classes `g_i^H` inside `g^G`:
/// `sum |C_G(g)| / |C_H(g_i)|`.
pub fn fixed_points_class_sum(
    g_order: &BigUint,
    h_order: &BigUint,
    data: &Intersection,
) -> Result<u64> {
    let cg = exact_div(
        g_order.clone(),
        &BigUint::from(data.g_orbit),
        "centralizer order",
    )?;
    data.h_orbits.iter().try_fold(0u64, |acc, &s| {
        let ch = exact_div(h_order.clone(), &BigUint::from(s), "centralizer order")?;
        if cg % ch != 0 {
            return Err(Error::Internal("C_H(g_i) does not divide C_G(g)".into()));
        }
        Ok(acc + cg / ch)
    })
}

/// Manning's count of the points fixed by `K`:
/// `sum |N_G(K_i)| / |N_H(K_i)|` over H-classes of G-conjugates of `K` in `H`.
pub fn fixed_points_manning_from(
    g_order: &BigUint,
    h_order: &BigUint,
    data: &Intersection,
) -> Result<u64> {
    fixed_points_class_sum(g_order, h_order, data)
}

fn subgroup_act(n: usize) -> impl Fn(&Vec<PermKey>, &Permutation) -> Vec<PermKey> {
    move |k: &Vec<PermKey>, h: &Permutation| {
        let mut out: Vec<PermKey> = k
            .iter()
            .map(|e| Permutation::from_key(e, n).conjugate_by(h).key())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Manning's count for an arbitrary small subgroup `K` of `H`.
pub fn fixed_points_manning(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<u64> {
    if !k.is_subgroup_of(h) || !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let n = g.degree();
    let act = subgroup_act(n);
    let orbit = Orbit::new(g.generators(), subgroup_key(k)?, &act, ORBIT_LIMIT)?;
    let members: Vec<Vec<PermKey>> = orbit
        .iter()
        .filter(|ks| ks.iter().all(|e| h.contains(&Permutation::from_key(e, n))))
        .cloned()
        .collect();
    let mut remaining: FxHashSet<Vec<PermKey>> = members.iter().cloned().collect();
    let mut h_orbits = Vec::new();
    for m in &members {
        if remaining.contains(m) {
            let o = Orbit::new(h.generators(), m.clone(), &act, ORBIT_LIMIT)?;
            for y in o.iter() {
                remaining.remove(y);
            }
            h_orbits.push(o.len() as u64);
        }
    }
    let data = Intersection {
        g_orbit: orbit.len() as u64,
        h_orbits,
        h_reps: Vec::new(),
    };
    fixed_points_class_sum(&g.order(), &h.order(), &data)
}

/// Number of points fixed by every generator of `k` in the action.
pub fn common_fixed_points(a: &ActionInstance, k: &PermGroup) -> usize {
    let imgs: Vec<Permutation> = k.generators().iter().map(|g| a.act(g)).collect();
    (0..a.degree() as u32)
        .filter(|&x| imgs.iter().all(|g| g.image(x) == x))
        .count()
}

/// One quasi-semiregular class found by a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QsrClass {
    pub label: String,
    /// Cycle type of the representative in the source group.
    pub source_cycle_type: String,
    /// Cycle type on the action's domain.
    pub cycle_type: String,
    pub class_size: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    /// False if `degree ≢ 1 (mod p)` or `p ∤ |G|`, which rule out
    /// quasi-semiregular p-elements without looking at classes.
    pub examined: bool,
    pub exists: bool,
    pub classes: Vec<QsrClass>,
    /// The class list used was proved complete.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct QsrReport {
    pub action: String,
    pub degree: usize,
    pub verdicts: Vec<PrimeVerdict>,
    pub certificates: Vec<QsrCertificate>,
}

impl QsrReport {
    pub fn primes_with_qsr(&self) -> Vec<u64> {
        self.verdicts
            .iter()
            .filter(|v| v.exists)
            .map(|v| v.p)
            .collect()
    }

    pub fn verdict(&self, p: u64) -> Option<&PrimeVerdict> {
        self.verdicts.iter().find(|v| v.p == p)
    }
}

impl fmt::Display for QsrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: qsr primes {:?}",
            self.action,
            self.primes_with_qsr()
        )
    }
}

/// Primes up to `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Classifies every class of prime order `p` (for each `p` in `primes`
/// passing the congruence filter) as quasi-semiregular or not, by the
/// direct test on a class representative.
pub fn scan_action<R: Rng + ?Sized>(
    a: &ActionInstance,
    primes: &[u64],
    rng: &mut R,
    exec: Exec,
) -> Result<QsrReport> {
    let mut verdicts = Vec::new();
    let mut certificates = Vec::new();
    let order = a.source().order();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if a.degree() as u64 % p != 1 % p || !(&order % p).is_zero() {
            verdicts.push(PrimeVerdict {
                p,
                examined: false,
                exists: false,
                classes: Vec::new(),
                certified: true,
            });
            continue;
        }
        let list: ClassList = conjugacy_classes(a.source(), Some(p), rng, exec)?;
        let labels = list.labels();
        let certs: Vec<Option<QsrCertificate>> =
            par::map(exec, &list.classes, |c| is_qsr_direct(a, &c.representative));
        let mut classes = Vec::new();
        for ((c, label), cert) in list.classes.iter().zip(labels).zip(certs) {
            if let Some(cert) = cert {
                classes.push(QsrClass {
                    label,
                    source_cycle_type: c.representative.cycle_type().to_string(),
                    cycle_type: cert.element.cycle_type().to_string(),
                    class_size: c.class_size.to_string(),
                });
                certificates.push(cert);
            }
        }
        verdicts.push(PrimeVerdict {
            p,
            examined: true,
            exists: !classes.is_empty(),
            classes,
            certified: list.certified,
        });
    }
    Ok(QsrReport {
        action: a.label().to_string(),
        degree: a.degree(),
        verdicts,
        certificates,
    })
}

/// Counts, by enumerating the acting group, its quasi-semiregular elements
/// of prime order.
pub fn count_prime_order_qsr(a: &ActionInstance, limit: u64, exec: Exec) -> Result<u64> {
    let g = a.group();
    let order = g
        .order_u64()
        .filter(|&o| o <= limit)
        .ok_or_else(|| Error::OrderExceedsLimit {
            order: g.order().to_string(),
            limit: limit.to_string(),
        })?;
    Ok(par::sum_chunks(exec, order, 1 << 12, |s, e| {
        (s..e)
            .filter(|&i| {
                let x = g.element_at(i);
                is_prime(x.order()) && qsr_fixed_point(&x).is_some()
            })
            .count() as u64
    }))
}

/// Derived actions of Sym(n) and Alt(n) covered by the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymAltAction {
    KSubsets(usize),
    Partitions(usize),
}

/// Closed-form answer for one prime: the cycle types (on `[n]`) of the
/// quasi-semiregular p-elements, empty if there are none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub p: u64,
    pub cycle_types: Vec<CycleType>,
}

impl Prediction {
    pub fn exists(&self) -> bool {
        !self.cycle_types.is_empty()
    }
}

/// Predicted verdicts for every prime `p <= n`.
pub fn predict_sym_alt(n: usize, action: SymAltAction, alternating: bool) -> Vec<Prediction> {
    primes_up_to(n as u64)
        .into_iter()
        .map(|p| {
            let pu = p as u32;
            let nu = n as u32;
            let cycle_types = match action {
                SymAltAction::KSubsets(k) => {
                    let k = k as u32;
                    let ok = k < pu
                        && (nu - k).is_multiple_of(pu)
                        && !(alternating && p == 2 && n % 4 != 1);
                    if ok {
                        vec![CycleType::from_parts(&[(1, k), (pu, (nu - k) / pu)])]
                    } else {
                        Vec::new()
                    }
                }
                SymAltAction::Partitions(k) => {
                    let m = nu / k as u32;
                    if p != 2 && k as u32 == pu && (2..=pu).contains(&m) {
                        let mut v = vec![CycleType::from_parts(&[(1, pu), (pu, m - 1)])];
                        if m < pu {
                            v.push(CycleType::from_parts(&[(pu, m)]));
                        }
                        v.sort();
                        v
                    } else {
                        Vec::new()
                    }
                }
            };
            Prediction { p, cycle_types }
        })
        .collect()
}
