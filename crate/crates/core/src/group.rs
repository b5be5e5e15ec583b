//! Permutation groups backed by a Schreier-Sims stabilizer chain, plus the
//! generic orbit/stabilizer machinery used by every higher-level routine.

use std::hash::Hash;
use std::sync::OnceLock;

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
    // per orbit index: how many generators have been checked for Schreier
    // generators at that point
    checked: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Self {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        let old_len = self.orbit.len();
        let old_gens = self.gens.len();
        self.gens.push(g);
        let mut idx = 0;
        while idx < self.orbit.len() {
            let start = if idx < old_len { old_gens } else { 0 };
            for s in start..self.gens.len() {
                let y = self.gens[s].image(self.orbit[idx]);
                if self.pos[y as usize] == NONE {
                    let rep = self.reps[idx].mul(&self.gens[s]);
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                    self.checked.push(0);
                }
            }
            idx += 1;
        }
    }
}

/// Base, strong generators and transversals of a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier-Sims.  Base points are the first moved point of
    /// the first generator that fails to sift.
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if chain.levels.is_empty() {
                chain
                    .levels
                    .push(Level::new(g.first_moved_point().unwrap(), degree));
            }
            chain.levels[0].add_gen(g.clone());
        }
        if chain.levels.is_empty() {
            return chain;
        }
        let mut i = chain.levels.len() - 1;
        loop {
            match chain.failing_schreier_generator(i) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.first_moved_point().expect("nonidentity residue");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in (i + 1)..=j {
                        chain.levels[l].add_gen(h.clone());
                    }
                    i = j;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
        for l in &mut chain.levels {
            l.checked = Vec::new();
        }
        chain
    }

    fn failing_schreier_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            while (self.levels[i].checked[k] as usize) < self.levels[i].gens.len() {
                let s = self.levels[i].checked[k] as usize;
                self.levels[i].checked[k] += 1;
                let level = &self.levels[i];
                let moved = level.reps[k].mul(&level.gens[s]);
                let back = level.pos[moved.image(level.base) as usize];
                let schreier = moved.mul(&level.inv_reps[back as usize]);
                let (h, j) = self.strip_from(&schreier, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
            k += 1;
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way through).
    fn strip_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let k = level.pos[h.image(level.base) as usize];
            if k == NONE {
                return (h, l);
            }
            h = h.mul(&level.inv_reps[k as usize]);
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.strip_from(g, 0).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        // avoid cloning when the element dies at the first level
        let mut h: Option<Permutation> = None;
        for level in &self.levels {
            let cur = h.as_ref().unwrap_or(g);
            let k = level.pos[cur.image(level.base) as usize];
            if k == NONE {
                return false;
            }
            h = Some(cur.mul(&level.inv_reps[k as usize]));
        }
        h.as_ref().unwrap_or(g).is_identity()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Basic orbit at `level` (points reachable from the base point).
    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    /// Transversal element at `level` mapping the base point to `point`.
    pub fn transversal(&self, level: usize, point: u32) -> Option<&Permutation> {
        let l = &self.levels[level];
        match l.pos[point as usize] {
            NONE => None,
            k => Some(&l.reps[k as usize]),
        }
    }

    /// Element with mixed-radix index `index` (`0 <= index < order`).  The
    /// element is `u_{k-1} ... u_1 u_0` with `u_l` a level-`l` transversal.
    pub fn element_at(&self, mut index: u64) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let n = level.orbit.len() as u64;
            let d = (index % n) as usize;
            index /= n;
            g = g.mul(&level.reps[d]);
        }
        g
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let d = rng.gen_range(0..level.orbit.len());
            g = g.mul(&level.reps[d]);
        }
        g
    }
}

/// Natural actions whose class structure is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Symmetric(usize),
    Alternating(usize),
}

/// A permutation group given by generators, with a lazily built chain.
///
/// The chain is built at most once; a group is safe to share across threads
/// and all read-only queries can run concurrently.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    family: Option<Family>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
            family: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).unwrap()
    }

    pub(crate) fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`; `None` if it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Membership test that reports a degree mismatch as an error.
    pub fn try_contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        Ok(self.contains(g))
    }

    pub fn is_subgroup_of(&self, parent: &PermGroup) -> bool {
        self.degree == parent.degree && self.generators.iter().all(|g| parent.contains(g))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    pub fn element_at(&self, index: u64) -> Permutation {
        self.chain().element_at(index)
    }

    /// Every element exactly once, in chain-transversal order.
    pub fn elements(&self, limit: u64) -> Result<impl Iterator<Item = Permutation> + '_> {
        let order = self.order();
        match order.to_u64() {
            Some(n) if n <= limit => Ok((0..n).map(move |i| self.element_at(i))),
            _ => Err(Error::OrderExceedsLimit {
                order: order.to_string(),
                limit: limit.to_string(),
            }),
        }
    }

    /// Subgroup generated by `gens` (no containment check).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    pub fn is_transitive(&self) -> bool {
        point_orbits(self.degree, &self.generators).len() <= 1
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        point_orbits(self.degree, &self.generators)
    }

    /// Index `|self : sub|` as an exact quotient of orders.
    pub fn index_of(&self, sub: &PermGroup) -> Result<BigUint> {
        let (a, b) = (self.order(), sub.order());
        if &a % &b != BigUint::default() {
            return Err(Error::Internal(format!(
                "subgroup order {b} does not divide {a}"
            )));
        }
        Ok(a / b)
    }
}

/// Orbits of `<gens>` on `0..degree`, each sorted, ordered by least point.
pub fn point_orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = vec![start as u32];
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for g in gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// An orbit of `<gens>` on arbitrary hashable objects under a right action,
/// with a Schreier tree for transversal elements.
pub struct Orbit<T> {
    points: IndexSet<T, FxBuildHasher>,
    parent: Vec<(u32, u32)>,
}

impl<T: Hash + Eq + Clone> Orbit<T> {
    /// Breadth-first orbit of `seed`.  `act(x, g)` must be a right action:
    /// `act(act(x, a), b) == act(x, a * b)`.
    pub fn new<F>(gens: &[Permutation], seed: T, act: F, limit: usize) -> Result<Self>
    where
        F: Fn(&T, &Permutation) -> T,
    {
        let mut points = IndexSet::with_hasher(FxBuildHasher);
        points.insert(seed);
        let mut parent = vec![(u32::MAX, u32::MAX)];
        let mut i = 0;
        while i < points.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = act(points.get_index(i).unwrap(), g);
                if points.insert(y) {
                    parent.push((i as u32, s as u32));
                    if points.len() > limit {
                        return Err(Error::Budget(format!("orbit exceeds {limit} points")));
                    }
                }
            }
            i += 1;
        }
        Ok(Self { points, parent })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.points.get_index_of(x)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.points.contains(x)
    }

    pub fn get(&self, i: usize) -> &T {
        self.points.get_index(i).unwrap()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.points.iter()
    }

    /// Element `t` with `act(seed, t) == point i`, read off the Schreier tree.
    pub fn transversal(&self, mut i: usize, gens: &[Permutation], degree: usize) -> Permutation {
        let mut word = Vec::new();
        while i != 0 {
            let (p, s) = self.parent[i];
            word.push(s as usize);
            i = p as usize;
        }
        let mut t = Permutation::identity(degree);
        for &s in word.iter().rev() {
            t = t.mul(&gens[s]);
        }
        t
    }

    pub fn into_points(self) -> IndexSet<T, FxBuildHasher> {
        self.points
    }
}

/// Orbit of `seed` under `group` and its stabilizer.  The stabilizer is
/// built from uniformly random Schreier elements until its order reaches
/// `|group| / |orbit|`, so the result is exact.
pub fn orbit_stabilizer<T, F, R>(
    group: &PermGroup,
    seed: T,
    act: F,
    limit: usize,
    rng: &mut R,
) -> Result<(Orbit<T>, PermGroup)>
where
    T: Hash + Eq + Clone,
    F: Fn(&T, &Permutation) -> T,
    R: Rng + ?Sized,
{
    let gens = group.generators();
    let orbit = Orbit::new(gens, seed.clone(), &act, limit)?;
    let order = group.order();
    let len = BigUint::from(orbit.len());
    if &order % &len != BigUint::default() {
        return Err(Error::Internal(format!(
            "orbit length {len} does not divide group order {order}"
        )));
    }
    let target = order / len;
    let stab = stabilizer_from_orbit(group, &seed, &orbit, &act, &target, rng)?;
    Ok((orbit, stab))
}

pub(crate) fn stabilizer_from_orbit<T, F, R>(
    group: &PermGroup,
    seed: &T,
    orbit: &Orbit<T>,
    act: F,
    target: &BigUint,
    rng: &mut R,
) -> Result<PermGroup>
where
    T: Hash + Eq + Clone,
    F: Fn(&T, &Permutation) -> T,
    R: Rng + ?Sized,
{
    let degree = group.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut stab = PermGroup::trivial(degree);
    let mut attempts = 0usize;
    while &stab.order() != target {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Internal("stabilizer search did not converge".into()));
        }
        let r = group.random_element(rng);
        let y = act(seed, &r);
        let i = orbit
            .index_of(&y)
            .ok_or_else(|| Error::Internal("orbit is not closed under the group".into()))?;
        let t = orbit.transversal(i, group.generators(), degree);
        let s = r.mul(&t.inverse());
        if !s.is_identity() && !stab.contains(&s) {
            gens.push(s);
            stab = PermGroup::new(degree, gens.clone())?;
        }
    }
    Ok(stab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(n: usize) -> PermGroup {
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let c: Vec<u32> = (0..n as u32).collect();
        let c = Permutation::from_cycles(n, &[&c]).unwrap();
        PermGroup::new(n, vec![t, c]).unwrap()
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(sym(5).order(), BigUint::from(120u32));
        assert_eq!(sym(8).order(), BigUint::from(40320u32));
        assert_eq!(PermGroup::trivial(4).order(), BigUint::one());
    }

    #[test]
    fn chain_contains_generators() {
        let g = sym(6);
        for s in g.generators() {
            assert!(g.chain().sift(s).is_identity());
        }
        let prod: BigUint = g
            .chain()
            .orbit_sizes()
            .iter()
            .map(|&s| BigUint::from(s))
            .product();
        assert_eq!(prod, g.order());
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let g = sym(5);
        let all: std::collections::HashSet<_> = g.elements(1000).unwrap().collect();
        assert_eq!(all.len(), 120);
        assert!(g.elements(100).is_err());
    }

    #[test]
    fn stabilizer_of_point() {
        let g = sym(6);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (orb, stab) =
            orbit_stabilizer(&g, 0u32, |&x, p: &Permutation| p.image(x), 100, &mut rng).unwrap();
        assert_eq!(orb.len(), 6);
        assert_eq!(stab.order(), BigUint::from(120u32));
        assert!(stab.generators().iter().all(|s| s.image(0) == 0));
    }

    #[test]
    fn degree_mismatch_in_membership() {
        let g = sym(4);
        assert!(g.try_contains(&Permutation::identity(5)).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use rustc_hash::FxHashSet;

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    /// Up to three random generators on at most 6 points, plus a probe.
    fn case() -> impl Strategy<Value = (usize, Vec<Permutation>, Permutation)> {
        (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3), perm(n)))
    }

    /// Closure under right multiplication by generators.
    fn closure(n: usize, gens: &[Permutation]) -> FxHashSet<Permutation> {
        let mut seen = FxHashSet::default();
        let mut stack = vec![Permutation::identity(n)];
        seen.insert(stack[0].clone());
        while let Some(x) = stack.pop() {
            for s in gens {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    proptest! {
        #[test]
        fn membership_matches_enumeration((n, gens, probe) in case()) {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let all = closure(n, &gens);
            prop_assert_eq!(g.order(), BigUint::from(all.len()));
            prop_assert_eq!(g.contains(&probe), all.contains(&probe));
            let listed: FxHashSet<Permutation> = g.elements(1000).unwrap().collect();
            prop_assert_eq!(listed, all);
        }

        #[test]
        fn orbits_partition_the_points((n, gens, _) in case()) {
            let g = PermGroup::new(n, gens).unwrap();
            let mut pts: Vec<u32> = g.orbits().concat();
            pts.sort_unstable();
            prop_assert_eq!(pts, (0..n as u32).collect::<Vec<_>>());
        }
    }
}
