//! Named groups and group families as permutation groups.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

use crate::actions::{ActionInstance, MAX_ACTION_DEGREE};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{Family, PermGroup};
use crate::par::{self, Exec};
use crate::perm::{PermKey, Permutation};

/// Sym(n) or Alt(n) on `0..n`.
pub fn make_sym_alt(n: usize, alternating: bool) -> Result<PermGroup> {
    if n == 0 || n > 24 {
        return Err(Error::InvalidParameter(format!("degree {n} out of range")));
    }
    let cycle = |pts: Vec<u32>| Permutation::from_cycles(n, &[&pts]).unwrap();
    let gens = if !alternating {
        if n == 1 {
            Vec::new()
        } else {
            vec![cycle(vec![0, 1]), cycle((0..n as u32).collect())]
        }
    } else if n < 3 {
        Vec::new()
    } else if n % 2 == 1 {
        vec![cycle(vec![0, 1, 2]), cycle((0..n as u32).collect())]
    } else {
        vec![cycle(vec![0, 1, 2]), cycle((1..n as u32).collect())]
    };
    let family = if alternating {
        Family::Alternating(n)
    } else {
        Family::Symmetric(n)
    };
    Ok(PermGroup::new(n, gens)?.with_family(family))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |a, i| a * i)
}

/// Sym(k) wr Sym(l) in product action on the `k^l` tuples over `0..k`.
/// A tuple `(a_0, ..., a_{l-1})` is the point `sum a_i k^(l-1-i)`.
#[derive(Clone, Debug)]
pub struct ProductAction {
    k: usize,
    l: usize,
    action: ActionInstance,
}

impl ProductAction {
    pub fn action(&self) -> &ActionInstance {
        &self.action
    }

    pub fn group(&self) -> &PermGroup {
        self.action.group()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        coords.iter().fold(0, |acc, &a| acc * self.k as u32 + a)
    }

    fn decode(&self, mut x: u32) -> Vec<u32> {
        let mut v = vec![0; self.l];
        for i in (0..self.l).rev() {
            v[i] = x % self.k as u32;
            x /= self.k as u32;
        }
        v
    }

    /// The element `h sigma`: apply `h_i` to coordinate `i`, then move
    /// coordinate `i` to position `sigma(i)`.
    pub fn element(&self, h: &[Permutation], sigma: &Permutation) -> Result<Permutation> {
        if h.len() != self.l || sigma.degree() != self.l || h.iter().any(|x| x.degree() != self.k) {
            return Err(Error::InvalidParameter("wreath element shape".into()));
        }
        let n = self.k.pow(self.l as u32);
        let images = (0..n as u32)
            .map(|x| {
                let a = self.decode(x);
                let mut b = vec![0; self.l];
                for i in 0..self.l {
                    b[sigma.image(i as u32) as usize] = h[i].image(a[i]);
                }
                self.encode(&b)
            })
            .collect();
        Permutation::from_images(images)
    }

    /// The coordinate permutations of `g` if it lies in the base group
    /// Sym(k)^l, otherwise `None`.
    pub fn base_components(&self, g: &Permutation) -> Option<Vec<Permutation>> {
        let mut comps = Vec::with_capacity(self.l);
        for i in 0..self.l {
            let mut images = Vec::with_capacity(self.k);
            for a in 0..self.k as u32 {
                let mut coords = vec![0; self.l];
                coords[i] = a;
                images.push(self.decode(g.image(self.encode(&coords)))[i]);
            }
            comps.push(Permutation::from_images(images).ok()?);
        }
        let n = self.k.pow(self.l as u32) as u32;
        for x in 0..n {
            let a = self.decode(x);
            let b = self.decode(g.image(x));
            if (0..self.l).any(|i| comps[i].image(a[i]) != b[i]) {
                return None;
            }
        }
        Some(comps)
    }

    pub fn in_base_group(&self, g: &Permutation) -> bool {
        self.base_components(g).is_some()
    }
}

pub fn make_product_action(k: usize, l: usize) -> Result<ProductAction> {
    if k < 3 || l < 2 {
        return Err(Error::InvalidParameter("need k >= 3 and l >= 2".into()));
    }
    let n = (k as u64).checked_pow(l as u32).unwrap_or(u64::MAX);
    if n > 20_000 {
        return Err(Error::Budget(format!("product action degree {n}")));
    }
    let mut pa = ProductAction {
        k,
        l,
        action: ActionInstance::from_generators("", 1, Vec::new())?,
    };
    let sk = make_sym_alt(k, false)?;
    let id_k = Permutation::identity(k);
    let id_l = Permutation::identity(l);
    let mut gens = Vec::new();
    for s in sk.generators() {
        let mut h = vec![id_k.clone(); l];
        h[0] = s.clone();
        gens.push(pa.element(&h, &id_l)?);
    }
    for sigma in make_sym_alt(l, false)?.generators() {
        gens.push(pa.element(&vec![id_k.clone(); l], sigma)?);
    }
    pa.action = ActionInstance::from_generators(
        &format!("Sym({k}) wr Sym({l}) on {n} points"),
        n as usize,
        gens,
    )?;
    Ok(pa)
}

/// Orders of the nonabelian simple groups accepted by the simple-diagonal
/// constructions.
pub const SIMPLE_GROUP_ORDERS: &[u64] = &[
    60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080, 5616, 6048, 6072, 7800, 7920, 9828,
    20160, 25920, 95040, 181440, 443520,
];

fn check_simple(t: &PermGroup) -> Result<u64> {
    let order = t
        .order_u64()
        .filter(|o| SIMPLE_GROUP_ORDERS.contains(o))
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "order {} is not on the simple-group whitelist",
                t.order()
            ))
        })?;
    Ok(order)
}

/// Number of `s` in `t` with `s^k = 1`: the fixed cosets of a top k-cycle
/// in the simple diagonal action.
pub fn sd_fixed_coset_count(t: &PermGroup, k: u64, exec: Exec) -> Result<u64> {
    let order = check_simple(t)?;
    if !is_prime(k) {
        return Err(Error::InvalidParameter(format!("{k} is not prime")));
    }
    if order > 1_000_000 {
        return Err(Error::Budget(format!("|T| = {order}")));
    }
    Ok(par::sum_chunks(exec, order, 4096, |a, b| {
        (a..b)
            .filter(|&i| t.element_at(i).pow(k as i64).is_identity())
            .count() as u64
    }))
}

/// Elements of a small group with their index lookup.
struct ElementTable {
    elems: Vec<Permutation>,
    index: FxHashMap<PermKey, u32>,
}

impl ElementTable {
    fn new(t: &PermGroup, limit: u64) -> Result<Self> {
        let elems: Vec<Permutation> = t.elements(limit)?.collect();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i as u32))
            .collect();
        Ok(Self { elems, index })
    }

    fn idx(&self, p: &Permutation) -> u32 {
        self.index[&p.key()]
    }
}

/// Simple diagonal action of `T^k` extended by the top k-cycle and
/// diagonal automorphisms, on the `|T|^(k-1)` cosets of the diagonal.
#[derive(Clone, Debug)]
pub struct SdAction {
    pub action: ActionInstance,
    /// The top k-cycle moving coordinate `i` to `i + 1`.
    pub sigma: Permutation,
}

pub fn make_sd_small(t: &PermGroup, k: usize, automorphisms: &[Permutation]) -> Result<SdAction> {
    let order = check_simple(t)? as usize;
    if k < 2 {
        return Err(Error::InvalidParameter("need k >= 2".into()));
    }
    let n = (order as u64)
        .checked_pow(k as u32 - 1)
        .filter(|&n| n <= MAX_ACTION_DEGREE as u64)
        .ok_or_else(|| Error::Budget(format!("|T|^{} points", k - 1)))? as usize;
    for a in automorphisms {
        if a.degree() != t.degree()
            || t.generators()
                .iter()
                .any(|s| !t.contains(&s.conjugate_by(a)))
        {
            return Err(Error::InvalidParameter(
                "automorphism does not normalize T".into(),
            ));
        }
    }
    let table = ElementTable::new(t, order as u64)?;
    let decode = |mut x: usize| -> Vec<usize> {
        // full tuple (1, u_2, ..., u_k); identity is element 0
        let mut u = vec![0; k];
        for i in (1..k).rev() {
            u[i] = x % order;
            x /= order;
        }
        u
    };
    let encode = |u: &[usize]| -> u32 { u[1..].iter().fold(0, |acc, &x| acc * order + x) as u32 };
    let id = table.idx(&Permutation::identity(t.degree())) as usize;
    if id != 0 {
        return Err(Error::Internal("identity is not the first element".into()));
    }
    let renormalize = |w: &[Permutation]| -> Vec<usize> {
        let w1inv = w[0].inverse();
        w.iter()
            .map(|x| table.idx(&w1inv.mul(x)) as usize)
            .collect()
    };
    let perm_from = |f: &dyn Fn(&[Permutation]) -> Vec<Permutation>| -> Result<Permutation> {
        let images = (0..n)
            .map(|x| {
                let u: Vec<Permutation> =
                    decode(x).iter().map(|&i| table.elems[i].clone()).collect();
                encode(&renormalize(&f(&u)))
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut gens = Vec::new();
    for i in 0..k {
        for s in t.generators() {
            gens.push(perm_from(&|u: &[Permutation]| {
                let mut w = u.to_vec();
                w[i] = w[i].mul(s);
                w
            })?);
        }
    }
    let sigma = perm_from(&|u: &[Permutation]| {
        let mut w = u.to_vec();
        w.rotate_right(1);
        w
    })?;
    gens.push(sigma.clone());
    for a in automorphisms {
        gens.push(perm_from(&|u: &[Permutation]| {
            u.iter().map(|x| x.conjugate_by(a)).collect()
        })?);
    }
    let action = ActionInstance::from_generators(&format!("SD T^{k} on {n} points"), n, gens)?;
    Ok(SdAction { action, sigma })
}

/// Holomorph-type action on the elements of `t`: `x -> a^-1 x b` for
/// `(a, b)` in `T x T`, optionally with the swap `x -> x^-1` and the
/// conjugation by an odd permutation (only for alternating `t`).
pub fn make_hs_type(
    t: &PermGroup,
    include_swap: bool,
    include_outer: bool,
) -> Result<ActionInstance> {
    let order = t
        .order_u64()
        .filter(|&o| o <= 100_000)
        .ok_or_else(|| Error::Budget(format!("|T| = {}", t.order())))?;
    let table = ElementTable::new(t, order)?;
    let map = |f: &dyn Fn(&Permutation) -> Permutation| -> Result<Permutation> {
        Permutation::from_images(table.elems.iter().map(|x| table.idx(&f(x))).collect())
    };
    let mut gens = Vec::new();
    for s in t.generators() {
        let sinv = s.inverse();
        gens.push(map(&|x| sinv.mul(x))?);
        gens.push(map(&|x| x.mul(s))?);
    }
    if include_swap {
        gens.push(map(&|x| x.inverse())?);
    }
    if include_outer {
        let tau = match t.family() {
            Some(crate::group::Family::Alternating(n)) if n >= 2 => {
                Permutation::from_cycles(n, &[&[0, 1]])?
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "outer automorphism only available for alternating T".into(),
                ))
            }
        };
        gens.push(map(&|x| x.conjugate_by(&tau))?);
    }
    let label = format!(
        "HS(T){}{} on {order} points",
        if include_swap { "+swap" } else { "" },
        if include_outer { "+outer" } else { "" }
    );
    ActionInstance::from_generators(&label, order as usize, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ou(g: &PermGroup) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn sym_alt_orders() {
        assert_eq!(ou(&make_sym_alt(3, false).unwrap()), 6);
        assert_eq!(ou(&make_sym_alt(4, true).unwrap()), 12);
        assert_eq!(ou(&make_sym_alt(11, true).unwrap()), 19_958_400);
        assert_eq!(ou(&make_sym_alt(1, false).unwrap()), 1);
        for n in 3..=12u64 {
            let s = make_sym_alt(n as usize, false).unwrap();
            let a = make_sym_alt(n as usize, true).unwrap();
            assert_eq!(s.order(), factorial(n));
            assert_eq!(a.order() * 2u32, factorial(n));
        }
    }

    #[test]
    fn alt5_membership() {
        let a5 = make_sym_alt(5, true).unwrap();
        assert!(!a5.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(a5.contains(&Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap()));
    }

    #[test]
    fn product_action_orders() {
        let p = make_product_action(3, 2).unwrap();
        assert_eq!(p.action().degree(), 9);
        assert_eq!(ou(p.group()), 72);
        let p = make_product_action(5, 2).unwrap();
        assert_eq!(ou(p.group()), 28800);
        assert_eq!(p.action().degree(), 25);
    }

    #[test]
    fn product_action_base_predicate() {
        let p = make_product_action(4, 2).unwrap();
        let t = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let id4 = Permutation::identity(4);
        let swap = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let base = p
            .element(&[t.clone(), id4.clone()], &Permutation::identity(2))
            .unwrap();
        assert_eq!(
            p.base_components(&base).unwrap(),
            vec![t.clone(), id4.clone()]
        );
        let top = p.element(&[t, id4], &swap).unwrap();
        assert!(!p.in_base_group(&top));
    }

    #[test]
    fn sd_counts_alt5() {
        let a5 = make_sym_alt(5, true).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(sd_fixed_coset_count(&a5, 7, exec).unwrap(), 1);
            assert_eq!(sd_fixed_coset_count(&a5, 2, exec).unwrap(), 16);
            assert_eq!(sd_fixed_coset_count(&a5, 5, exec).unwrap(), 25);
        }
        assert!(
            sd_fixed_coset_count(&make_sym_alt(5, false).unwrap(), 7, Exec::Sequential).is_err()
        );
    }

    #[test]
    fn sd_small_alt5() {
        let a5 = make_sym_alt(5, true).unwrap();
        let sd = make_sd_small(&a5, 2, &[]).unwrap();
        assert_eq!(sd.action.degree(), 60);
        assert_eq!(sd.sigma.fixed_point_count(), 16);
        let sd3 = make_sd_small(&a5, 3, &[]).unwrap();
        assert_eq!(sd3.action.degree(), 3600);
        assert_eq!(
            sd3.sigma.fixed_point_count() as u64,
            sd_fixed_coset_count(&a5, 3, Exec::Sequential).unwrap()
        );
    }

    #[test]
    fn hs_alt5() {
        let a5 = make_sym_alt(5, true).unwrap();
        let hs = make_hs_type(&a5, false, false).unwrap();
        assert_eq!(ou(hs.group()), 3600);
        let hs = make_hs_type(&a5, true, false).unwrap();
        assert_eq!(hs.degree(), 60);
        assert_eq!(ou(hs.group()), 7200);
        assert!(hs.group().is_transitive());
    }
}
