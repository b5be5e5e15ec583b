//! Conjugacy classes, centralizers, normalizers, fusion, subnormalisers and
//! strongly p-embedded subgroups.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::actions::coset_action_limited;
use crate::constructors::factorial;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{orbit_stabilizer, Family, Orbit, PermGroup};
use crate::par::{self, Exec};
use crate::perm::{CycleType, PermKey, Permutation};

/// Largest group whose elements are scanned directly.
pub const SCAN_LIMIT: u64 = 1_000_000;
/// Largest group for which order-p element counts are enumerated.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;
/// Largest conjugation orbit kept in memory.
pub const ORBIT_LIMIT: usize = 5_000_000;
/// Unproductive samples before the heuristic class search stops.
pub const HEURISTIC_PATIENCE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDatum {
    pub representative: Permutation,
    pub class_size: BigUint,
    pub centralizer_order: BigUint,
    pub element_order: u64,
}

impl ClassDatum {
    pub fn cycle_type(&self) -> CycleType {
        self.representative.cycle_type()
    }
}

/// Classes of a group, possibly restricted to one prime order.
#[derive(Clone, Debug)]
pub struct ClassList {
    pub classes: Vec<ClassDatum>,
    /// Completeness was proved (by a closed form, a count or a Sylow
    /// subgroup), not assumed.
    pub certified: bool,
}

impl ClassList {
    /// Labels such as `5a`, `5b`: classes of each order by decreasing
    /// centralizer order.
    pub fn labels(&self) -> Vec<String> {
        let mut seen: BTreeMap<u64, u32> = BTreeMap::new();
        self.classes
            .iter()
            .map(|c| {
                let n = seen.entry(c.element_order).or_insert(0);
                let label = format!("{}{}", c.element_order, class_letter(*n));
                *n += 1;
                label
            })
            .collect()
    }
}

fn class_letter(n: u32) -> String {
    let mut s = String::new();
    let mut n = n as i64;
    loop {
        s.insert(0, (b'a' + (n % 26) as u8) as char);
        n = n / 26 - 1;
        if n < 0 {
            return s;
        }
    }
}

pub(crate) fn conj_act(x: &PermKey, g: &Permutation) -> PermKey {
    Permutation::from_key(x, g.degree()).conjugate_by(g).key()
}

/// A conjugacy class with its full orbit, for membership and transporters.
pub struct ClassOrbit {
    pub datum: ClassDatum,
    pub orbit: Orbit<PermKey>,
}

impl ClassOrbit {
    pub fn new(g: &PermGroup, x: &Permutation) -> Result<Self> {
        let orbit = Orbit::new(g.generators(), x.key(), conj_act, ORBIT_LIMIT)?;
        let size = BigUint::from(orbit.len());
        let order = g.order();
        let (cent, rem) = order.div_rem(&size);
        if !rem.is_zero() {
            return Err(Error::Internal("class size does not divide |G|".into()));
        }
        // canonical representative: least key in the class
        let rep = orbit.iter().min().cloned().unwrap();
        let representative = Permutation::from_key(&rep, g.degree());
        Ok(Self {
            datum: ClassDatum {
                element_order: representative.order(),
                representative,
                class_size: size,
                centralizer_order: cent,
            },
            orbit,
        })
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.orbit.contains(&x.key())
    }

    /// `t` with `seed^t = x`, where the seed is the element the orbit was
    /// grown from.
    pub fn transporter(&self, g: &PermGroup, x: &Permutation) -> Option<Permutation> {
        let i = self.orbit.index_of(&x.key())?;
        Some(self.orbit.transversal(i, g.generators(), g.degree()))
    }

    /// `t` with `representative^t = x`.
    pub fn conjugator(&self, g: &PermGroup, x: &Permutation) -> Option<Permutation> {
        let to_rep = self.transporter(g, &self.datum.representative)?;
        Some(to_rep.inverse().mul(&self.transporter(g, x)?))
    }
}

fn order_key(c: &ClassDatum) -> (u64, std::cmp::Reverse<BigUint>, PermKey) {
    (
        c.element_order,
        std::cmp::Reverse(c.centralizer_order.clone()),
        c.representative.key(),
    )
}

/// Conjugacy classes of `g`, all of them or only those of prime order `p`.
///
/// Symmetric and alternating groups use the cycle-type description.  Other
/// groups grow class orbits from random elements; the full list is complete
/// once the class sizes sum to `|G|`, and a prime-filtered list is complete
/// once they sum to the number of elements of order `p` (counted directly
/// when `|G| <= 10^7`).  For larger groups the random search stops after
/// a run of unproductive samples and is then completed from the order-`p`
/// elements of a Sylow p-subgroup.
pub fn conjugacy_classes<R: Rng + ?Sized>(
    g: &PermGroup,
    filter: Option<u64>,
    rng: &mut R,
    exec: Exec,
) -> Result<ClassList> {
    if let Some(fam) = g.family() {
        return Ok(ClassList {
            classes: sym_alt_classes(fam, filter),
            certified: true,
        });
    }
    let (orbits, certified) = class_orbits(g, filter, rng, exec)?;
    Ok(ClassList {
        classes: orbits.into_iter().map(|c| c.datum).collect(),
        certified,
    })
}

/// Class orbits of `g`, as in [`conjugacy_classes`], sorted by element
/// order and then decreasing centralizer order.
pub fn class_orbits<R: Rng + ?Sized>(
    g: &PermGroup,
    filter: Option<u64>,
    rng: &mut R,
    exec: Exec,
) -> Result<(Vec<ClassOrbit>, bool)> {
    let order = g.order();
    let n = g.degree();
    let mut found: Vec<ClassOrbit> = Vec::new();
    let certified;
    match filter {
        None => {
            if order > BigUint::from(ENUMERATION_LIMIT) {
                return Err(Error::Budget(format!(
                    "full class list of a group of order {order}"
                )));
            }
            found.push(ClassOrbit::new(g, &Permutation::identity(n))?);
            let mut total: BigUint = BigUint::one();
            while total < order {
                let r = g.random_element(rng);
                if !found.iter().any(|c| c.contains(&r)) {
                    let c = ClassOrbit::new(g, &r)?;
                    total += &c.datum.class_size;
                    found.push(c);
                }
            }
            certified = true;
        }
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrimeOrder);
            }
            if !(&order % p).is_zero() {
                return Ok((Vec::new(), true));
            }
            let target = order
                .to_u64()
                .filter(|&o| o <= ENUMERATION_LIMIT)
                .map(|o| count_elements_of_order(g, p, o, exec));
            let mut total = 0u64;
            let mut idle = 0usize;
            loop {
                if let Some(t) = target {
                    if total == t {
                        break;
                    }
                } else if idle >= HEURISTIC_PATIENCE {
                    break;
                }
                let r = g.random_element(rng);
                let o = r.order();
                if !o.is_multiple_of(p) {
                    idle += 1;
                    continue;
                }
                let x = r.pow((o / p) as i64);
                let ct = x.cycle_type();
                if found
                    .iter()
                    .any(|c| c.datum.representative.cycle_type() == ct && c.contains(&x))
                {
                    idle += 1;
                    continue;
                }
                idle = 0;
                let c = ClassOrbit::new(g, &x)?;
                total += c.datum.class_size.to_u64().unwrap_or(u64::MAX);
                found.push(c);
            }
            certified = match target {
                Some(_) => true,
                None => {
                    complete_from_sylow(g, p, &mut found, rng)?;
                    true
                }
            };
        }
    }
    found.sort_by_key(|c| order_key(&c.datum));
    Ok((found, certified))
}

/// Every element of order `p` is conjugate into a Sylow p-subgroup, so
/// walking the order-`p` elements of one completes a prime class list.
fn complete_from_sylow<R: Rng + ?Sized>(
    g: &PermGroup,
    p: u64,
    found: &mut Vec<ClassOrbit>,
    rng: &mut R,
) -> Result<()> {
    let host = sylow_host(g, p, rng)?;
    let sylow = sylow_subgroup(&host, p, rng)?;
    for x in sylow.elements(ENUMERATION_LIMIT)? {
        if x.order() == p && !found.iter().any(|c| c.contains(&x)) {
            found.push(ClassOrbit::new(g, &x)?);
        }
    }
    Ok(())
}

/// A subgroup of `g` with the same p-part, found by passing to point
/// stabilizers along orbits of length prime to `p`.
fn sylow_host<R: Rng + ?Sized>(g: &PermGroup, p: u64, rng: &mut R) -> Result<PermGroup> {
    let mut host = g.clone();
    loop {
        let next = host
            .orbits()
            .into_iter()
            .find(|o| o.len() > 1 && !(o.len() as u64).is_multiple_of(p))
            .map(|o| o[0]);
        let Some(x) = next else {
            return Ok(host);
        };
        let (_, stab) = orbit_stabilizer(
            &host,
            x,
            |y: &u32, h: &Permutation| h.image(*y),
            usize::MAX,
            rng,
        )?;
        host = stab;
    }
}

/// Number of elements of prime order `p`, by enumeration.
pub fn count_elements_of_order(g: &PermGroup, p: u64, order: u64, exec: Exec) -> u64 {
    par::sum_chunks(exec, order, 1 << 14, |a, b| {
        (a..b).filter(|&i| g.element_at(i).order() == p).count() as u64
    })
}

fn integer_partitions(n: u32, max: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=max.min(n)).rev() {
        cur.push(part);
        integer_partitions(n - part, part, out, cur);
        cur.pop();
    }
}

fn sym_alt_classes(fam: Family, filter: Option<u64>) -> Vec<ClassDatum> {
    let (n, alt) = match fam {
        Family::Symmetric(n) => (n, false),
        Family::Alternating(n) => (n, true),
    };
    let mut parts = Vec::new();
    integer_partitions(n as u32, n as u32, &mut parts, &mut Vec::new());
    let nfact = factorial(n as u64);
    let mut out = Vec::new();
    for lengths in parts {
        let ct = CycleType::from_lengths(lengths.clone());
        if let Some(p) = filter {
            if ct.parts().iter().any(|&(l, _)| l != 1 && l as u64 != p)
                || ct.count_of(p as u32) == 0
            {
                continue;
            }
        }
        let even_parts = lengths.iter().filter(|&&l| l % 2 == 0).count();
        if alt && even_parts % 2 == 1 {
            continue;
        }
        // z = prod m_i! i^m_i
        let z = ct.parts().iter().fold(BigUint::one(), |acc, &(l, m)| {
            acc * factorial(m as u64) * BigUint::from(l).pow(m)
        });
        let rep = ct.representative();
        let size = &nfact / &z;
        let splits = alt && n > 1 && ct.parts().iter().all(|&(l, m)| m == 1 && l % 2 == 1);
        if !alt {
            out.push(ClassDatum {
                element_order: rep.order(),
                representative: rep,
                class_size: size,
                centralizer_order: z,
            });
        } else if splits {
            let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
            for r in [rep.clone(), rep.conjugate_by(&t)] {
                out.push(ClassDatum {
                    element_order: r.order(),
                    representative: r,
                    class_size: &size / 2u32,
                    centralizer_order: z.clone(),
                });
            }
        } else {
            out.push(ClassDatum {
                element_order: rep.order(),
                representative: rep,
                class_size: size,
                centralizer_order: &z / 2u32,
            });
        }
    }
    out.sort_by_key(order_key);
    out
}

/// Builds `<gens>` incrementally from candidate elements, keeping only
/// those not already generated.
fn generate_from(degree: usize, candidates: impl IntoIterator<Item = Permutation>) -> PermGroup {
    let mut gens = Vec::new();
    let mut group = PermGroup::trivial(degree);
    for c in candidates {
        if !group.contains(&c) {
            gens.push(c);
            group = PermGroup::new(degree, gens.clone()).unwrap();
        }
    }
    group
}

fn scan_subgroup<F>(g: &PermGroup, exec: Exec, pred: F) -> PermGroup
where
    F: Fn(&Permutation) -> bool + Sync + Send,
{
    let order = g.order_u64().unwrap();
    let hits: Vec<u64> = par::collect_chunks(exec, order, 1 << 12, |a, b| {
        (a..b).filter(|&i| pred(&g.element_at(i))).collect()
    });
    generate_from(g.degree(), hits.into_iter().map(|i| g.element_at(i)))
}

fn scannable(g: &PermGroup) -> bool {
    g.order_u64().is_some_and(|o| o <= SCAN_LIMIT)
}

/// `C_G(x)`.
pub fn centralizer<R: Rng + ?Sized>(
    g: &PermGroup,
    x: &Permutation,
    rng: &mut R,
    exec: Exec,
) -> Result<PermGroup> {
    if x.is_identity() {
        return Ok(g.clone());
    }
    if scannable(g) {
        return Ok(scan_subgroup(g, exec, |e| e.commutes_with(x)));
    }
    let (_, stab) = orbit_stabilizer(g, x.key(), conj_act, ORBIT_LIMIT, rng)?;
    Ok(stab)
}

/// Canonical key of the cyclic group `<x>`: the least key among its
/// generators.
pub fn cyclic_key(x: &Permutation) -> PermKey {
    let m = x.order();
    let mut best = x.key();
    let mut y = x.clone();
    for k in 2..m {
        y = y.mul(x);
        if num_integer::gcd(k, m) == 1 {
            let key = y.key();
            if key < best {
                best = key;
            }
        }
    }
    best
}

pub(crate) fn cyclic_act(k: &PermKey, g: &Permutation) -> PermKey {
    cyclic_key(&Permutation::from_key(k, g.degree()).conjugate_by(g))
}

/// `N_G(<x>)`.
pub fn normalizer_of_cyclic<R: Rng + ?Sized>(
    g: &PermGroup,
    x: &Permutation,
    rng: &mut R,
    exec: Exec,
) -> Result<PermGroup> {
    if x.is_identity() {
        return Ok(g.clone());
    }
    if scannable(g) {
        let m = x.order();
        let powers: FxHashSet<PermKey> = (1..m).map(|k| x.pow(k as i64).key()).collect();
        return Ok(scan_subgroup(g, exec, |e| {
            powers.contains(&x.conjugate_by(e).key())
        }));
    }
    let (_, stab) = orbit_stabilizer(g, cyclic_key(x), cyclic_act, ORBIT_LIMIT, rng)?;
    Ok(stab)
}

/// Sorted element keys of a small group.
pub fn subgroup_key(u: &PermGroup) -> Result<Vec<PermKey>> {
    let mut keys: Vec<PermKey> = u.elements(100_000)?.map(|e| e.key()).collect();
    keys.sort_unstable();
    Ok(keys)
}

/// `N_G(U)` for a small subgroup `U`, by orbit-stabilizer on `U`'s
/// conjugates.
pub fn normalizer<R: Rng + ?Sized>(g: &PermGroup, u: &PermGroup, rng: &mut R) -> Result<PermGroup> {
    let n = g.degree();
    let act = |k: &Vec<PermKey>, h: &Permutation| -> Vec<PermKey> {
        let mut out: Vec<PermKey> = k
            .iter()
            .map(|e| Permutation::from_key(e, n).conjugate_by(h).key())
            .collect();
        out.sort_unstable();
        out
    };
    let (_, stab) = orbit_stabilizer(g, subgroup_key(u)?, act, ORBIT_LIMIT, rng)?;
    Ok(stab)
}

fn p_part(n: &BigUint, p: u64) -> BigUint {
    let mut n = n.clone();
    let mut out = BigUint::one();
    while (&n % p).is_zero() {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_power_of(n: &BigUint, p: u64) -> bool {
    p_part(n, p) == *n
}

/// A Sylow p-subgroup, grown inside successive normalizers.
pub fn sylow_subgroup<R: Rng + ?Sized>(g: &PermGroup, p: u64, rng: &mut R) -> Result<PermGroup> {
    let target = p_part(&g.order(), p);
    let mut sylow = PermGroup::trivial(g.degree());
    let mut tries = 0;
    while sylow.order() != target {
        let nrm = normalizer(g, &sylow, rng)?;
        let r = nrm.random_element(rng);
        let o = r.order();
        let mut q = 1;
        while o % (q * p) == 0 {
            q *= p;
        }
        let y = r.pow((o / q) as i64);
        if !sylow.contains(&y) {
            let mut gens = sylow.generators().to_vec();
            gens.push(y);
            let next = PermGroup::new(g.degree(), gens)?;
            if is_power_of(&next.order(), p) {
                sylow = next;
            }
        }
        tries += 1;
        if tries > 100_000 {
            return Err(Error::Internal("Sylow search did not converge".into()));
        }
    }
    Ok(sylow)
}

/// Does `x^G ∩ H = x^H`?  Counted by walking the G-class of `x` and
/// testing membership in `H`.
pub fn fusion_test(g: &PermGroup, h: &PermGroup, x: &Permutation) -> Result<bool> {
    if !h.contains(x) {
        return Err(Error::NotASubgroup);
    }
    let in_h = ClassOrbit::new(g, x)?
        .orbit
        .iter()
        .filter(|k| h.contains(&Permutation::from_key(k, g.degree())))
        .count();
    let xh = Orbit::new(h.generators(), x.key(), conj_act, ORBIT_LIMIT)?.len();
    Ok(in_h == xh)
}

/// Normal closure of `<gens>` in `v`.  With `p`, gives up (returning
/// `None`) as soon as the closure is not a p-group.
fn normal_closure_bounded(
    degree: usize,
    gens: &[Permutation],
    v_gens: &[Permutation],
    p: Option<u64>,
) -> Option<PermGroup> {
    let mut ngens: Vec<Permutation> = gens.to_vec();
    let mut n = PermGroup::new(degree, ngens.clone()).unwrap();
    let mut i = 0;
    while i < ngens.len() {
        for v in v_gens {
            let c = ngens[i].conjugate_by(v);
            if !n.contains(&c) {
                ngens.push(c);
                n = PermGroup::new(degree, ngens.clone()).unwrap();
                if let Some(p) = p {
                    if !is_power_of(&n.order(), p) {
                        return None;
                    }
                }
            }
        }
        i += 1;
    }
    Some(n)
}

pub fn normal_closure(u: &PermGroup, v: &PermGroup) -> PermGroup {
    normal_closure_bounded(u.degree(), u.generators(), v.generators(), None).unwrap()
}

/// Is `<x>` subnormal in `<x, g>`?  For `x` of prime order `p` this holds
/// iff the normal closure of `x` in `<x, g>` is a p-group.
pub fn subnormal_in_pair(x: &Permutation, g: &Permutation, p: u64) -> bool {
    let y = x.conjugate_by(g);
    if y == *x {
        return true;
    }
    let xy = x.mul(&y).order();
    if !is_power_of(&BigUint::from(xy), p) {
        return false;
    }
    normal_closure_bounded(
        x.degree(),
        std::slice::from_ref(x),
        &[x.clone(), g.clone()],
        Some(p),
    )
    .is_some()
}

/// `Sub_G(x) = <g : <x> subnormal in <x, g>>` for `x` of prime order.
pub fn subnormaliser(g: &PermGroup, x: &Permutation, exec: Exec) -> Result<PermGroup> {
    let p = x.order();
    if !is_prime(p) {
        return Err(Error::NotPrimeOrder);
    }
    if !g.contains(x) {
        return Err(Error::NotASubgroup);
    }
    if !scannable(g) {
        return Err(Error::Budget(format!(
            "subnormaliser scan over a group of order {}",
            g.order()
        )));
    }
    Ok(scan_subgroup(g, exec, |e| subnormal_in_pair(x, e, p)))
}

/// Is `u` subnormal in `v`?  Uses the series `V_0 = V`,
/// `V_{i+1} = <U^{V_i}>`, which descends to `U` exactly when `U` is
/// subnormal.
pub fn is_subnormal(u: &PermGroup, v: &PermGroup) -> Result<bool> {
    if !u.is_subgroup_of(v) {
        return Err(Error::NotASubgroup);
    }
    if v.order() > BigUint::from(SCAN_LIMIT) {
        return Err(Error::Budget(format!("|V| = {}", v.order())));
    }
    let target = u.order();
    let mut cur = v.clone();
    loop {
        let next = normal_closure(u, &cur);
        if next.order() == cur.order() {
            return Ok(cur.order() == target);
        }
        cur = next;
    }
}

/// Is `h` strongly p-embedded in `g`: `p` divides `|H|` and no
/// `H ∩ H^g` with `g` outside `H` has order divisible by `p`?
pub fn is_strongly_p_embedded(g: &PermGroup, h: &PermGroup, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if !(h.order() % p).is_zero() {
        return Ok(false);
    }
    let action = coset_action_limited(g, h, "cosets", 10_000)?;
    let h_order = h
        .order_u64()
        .filter(|&o| o <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::Budget(format!("|H| = {}", h.order())))?;
    let p_elements: Vec<Permutation> = (0..h_order)
        .map(|i| h.element_at(i))
        .filter(|e| e.order() == p)
        .collect();
    let reps = action.coset_table().unwrap().representatives();
    for r in reps.iter().skip(1) {
        let rinv = r.inverse();
        if p_elements
            .iter()
            .any(|e| h.contains(&e.conjugate_by(&rinv)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::make_sym_alt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Same group with the family tag dropped, to force the generic path.
    fn plain(g: &PermGroup) -> PermGroup {
        PermGroup::new(g.degree(), g.generators().to_vec()).unwrap()
    }

    #[test]
    fn sym5_has_seven_classes() {
        let s5 = make_sym_alt(5, false).unwrap();
        let closed = conjugacy_classes(&s5, None, &mut rng(), Exec::Parallel).unwrap();
        assert_eq!(closed.classes.len(), 7);
        let generic = conjugacy_classes(&plain(&s5), None, &mut rng(), Exec::Parallel).unwrap();
        assert_eq!(generic.classes.len(), 7);
        assert!(generic.certified);
        let sizes = |l: &ClassList| {
            let mut v: Vec<_> = l.classes.iter().map(|c| c.class_size.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(sizes(&closed), sizes(&generic));
    }

    #[test]
    fn alt5_five_cycles_split() {
        let a5 = make_sym_alt(5, true).unwrap();
        for g in [a5.clone(), plain(&a5)] {
            let l = conjugacy_classes(&g, Some(5), &mut rng(), Exec::Sequential).unwrap();
            assert_eq!(l.classes.len(), 2);
            assert!(l
                .classes
                .iter()
                .all(|c| c.class_size == BigUint::from(12u32)));
            assert!(l.certified);
        }
    }

    #[test]
    fn class_equation_alt7() {
        let a7 = make_sym_alt(7, true).unwrap();
        let l = conjugacy_classes(&a7, None, &mut rng(), Exec::Parallel).unwrap();
        let total: BigUint = l.classes.iter().map(|c| c.class_size.clone()).sum();
        assert_eq!(total, a7.order());
        for c in &l.classes {
            assert_eq!(&c.class_size * &c.centralizer_order, a7.order());
        }
        assert_eq!(l.labels()[0], "1a");
    }

    #[test]
    fn centralizers() {
        let s5 = make_sym_alt(5, false).unwrap();
        let c = centralizer(
            &s5,
            &cyc(5, &[&[0, 1, 2, 3, 4]]),
            &mut rng(),
            Exec::Parallel,
        )
        .unwrap();
        assert_eq!(c.order(), BigUint::from(5u32));
        let s7 = make_sym_alt(7, false).unwrap();
        let x = cyc(7, &[&[0, 1], &[2, 3], &[4, 5]]);
        let c = centralizer(&s7, &x, &mut rng(), Exec::Parallel).unwrap();
        assert_eq!(c.order(), BigUint::from(48u32));
        let id = centralizer(&s7, &Permutation::identity(7), &mut rng(), Exec::Parallel).unwrap();
        assert_eq!(id.order(), s7.order());
    }

    #[test]
    fn normalizers_of_seven_cycle() {
        let x = cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]);
        let s7 = make_sym_alt(7, false).unwrap();
        let a7 = make_sym_alt(7, true).unwrap();
        let n = normalizer_of_cyclic(&s7, &x, &mut rng(), Exec::Parallel).unwrap();
        assert_eq!(n.order(), BigUint::from(42u32));
        let n = normalizer_of_cyclic(&a7, &x, &mut rng(), Exec::Sequential).unwrap();
        assert_eq!(n.order(), BigUint::from(21u32));
    }

    #[test]
    fn fusion_examples() {
        let s4 = make_sym_alt(4, false).unwrap();
        let x = cyc(4, &[&[0, 1, 2]]);
        let h = PermGroup::new(4, vec![x.clone()]).unwrap();
        assert!(!fusion_test(&s4, &h, &x).unwrap());
        assert!(fusion_test(&s4, &s4, &x).unwrap());
    }

    #[test]
    fn subnormality() {
        let s4 = make_sym_alt(4, false).unwrap();
        let d8 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]).unwrap();
        assert!(!is_subnormal(&d8, &s4).unwrap());
        assert!(is_subnormal(&s4, &s4).unwrap());
        let a4 = make_sym_alt(4, true).unwrap();
        assert!(is_subnormal(&a4, &s4).unwrap());
        let k = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(is_subnormal(&k, &s4).unwrap());
    }

    #[test]
    fn subnormaliser_rejects_composite_order() {
        let a7 = make_sym_alt(7, true).unwrap();
        let x = cyc(7, &[&[0, 1, 2, 3], &[4, 5]]);
        assert!(matches!(
            subnormaliser(&a7, &x, Exec::Sequential),
            Err(Error::NotPrimeOrder)
        ));
    }

    #[test]
    fn subnormaliser_of_central_element() {
        let x = cyc(4, &[&[0, 1], &[2, 3]]);
        let v4 = PermGroup::new(4, vec![x.clone(), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap();
        let s = subnormaliser(&v4, &x, Exec::Sequential).unwrap();
        assert_eq!(s.order(), v4.order());
    }

    #[test]
    fn strongly_embedded_small() {
        let s4 = make_sym_alt(4, false).unwrap();
        let s3 = PermGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2]])]).unwrap();
        assert!(is_strongly_p_embedded(&s4, &s3, 3).unwrap());
        let a4 = make_sym_alt(4, true).unwrap();
        assert!(!is_strongly_p_embedded(&s4, &a4, 2).unwrap());
    }

    #[test]
    fn sylow_orders() {
        let a6 = make_sym_alt(6, true).unwrap();
        let p3 = sylow_subgroup(&a6, 3, &mut rng()).unwrap();
        assert_eq!(p3.order(), BigUint::from(9u32));
        let n = normalizer(&a6, &p3, &mut rng()).unwrap();
        assert_eq!(n.order(), BigUint::from(36u32));
    }
}
