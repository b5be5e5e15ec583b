//! Induced actions: k-subsets, uniform partitions, right cosets and blocks.

use std::fmt;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::{point_orbits, PermGroup};
use crate::perm::{PermKey, Permutation};

/// Default limit on the degree of a constructed action.
pub const MAX_ACTION_DEGREE: usize = 1_000_000;

/// A group acting on a derived domain.  `source` is the group in its own
/// representation; `group` is generated by the images of the source
/// generators, in the same order.
#[derive(Clone, Debug)]
pub struct ActionInstance {
    label: String,
    source: PermGroup,
    group: PermGroup,
    codec: Codec,
}

#[derive(Clone, Debug)]
enum Codec {
    Identity,
    KSubsets {
        k: usize,
        subsets: Vec<Vec<u32>>,
        binom: Vec<Vec<u64>>,
    },
    Partitions {
        parts: Vec<u128>,
        index: FxHashMap<u128, u32>,
    },
    Cosets(CosetTable),
    Blocks {
        parent: Box<ActionInstance>,
        block_of: Vec<u32>,
        blocks: Vec<Vec<u32>>,
    },
}

impl ActionInstance {
    /// An action given directly by permutations; the acting group is its
    /// own source.
    pub fn from_generators(label: &str, degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        let group = PermGroup::new(degree, gens)?;
        Ok(Self::natural(label, group))
    }

    /// The natural action of a permutation group.
    pub fn natural(label: &str, group: PermGroup) -> Self {
        Self {
            label: label.to_string(),
            source: group.clone(),
            group,
            codec: Codec::Identity,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    /// The permutation group induced on the domain.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generator_images(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn coset_table(&self) -> Option<&CosetTable> {
        match &self.codec {
            Codec::Cosets(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_faithful(&self) -> bool {
        self.group.order() == self.source.order()
    }

    /// The permutation of the domain induced by an element of the source.
    pub fn act(&self, g: &Permutation) -> Permutation {
        match &self.codec {
            Codec::Identity => g.clone(),
            Codec::KSubsets { k, subsets, binom } => {
                let images = subsets
                    .iter()
                    .map(|s| {
                        let mut t: SmallVec<[u32; 16]> = s.iter().map(|&x| g.image(x)).collect();
                        t.sort_unstable();
                        colex_rank(&t, binom) as u32
                    })
                    .collect();
                debug_assert_eq!(*k, subsets[0].len());
                Permutation::from_images_unchecked(images)
            }
            Codec::Partitions { parts, index } => {
                let n = g.degree();
                let images = parts
                    .iter()
                    .map(|&key| {
                        let mut labels = [0u8; 32];
                        for x in 0..n {
                            labels[g.image(x as u32) as usize] = rgs_get(key, x);
                        }
                        index[&canonical_rgs(&labels[..n])]
                    })
                    .collect();
                Permutation::from_images_unchecked(images)
            }
            Codec::Cosets(table) => table.act(g),
            Codec::Blocks {
                parent,
                block_of,
                blocks,
            } => {
                let h = parent.act(g);
                let images = blocks
                    .iter()
                    .map(|b| block_of[h.image(b[0]) as usize])
                    .collect();
                Permutation::from_images_unchecked(images)
            }
        }
    }

    /// Blocks of an induced block action, if this is one.
    pub fn blocks(&self) -> Option<&[Vec<u32>]> {
        match &self.codec {
            Codec::Blocks { blocks, .. } => Some(blocks),
            _ => None,
        }
    }

    /// Domain label of point `i`, 1-based where points are involved.
    pub fn point_label(&self, i: usize) -> String {
        match &self.codec {
            Codec::Identity => format!("{}", i + 1),
            Codec::KSubsets { subsets, .. } => fmt_set(&subsets[i]),
            Codec::Partitions { parts, .. } => {
                let n = self.source.degree();
                let mut blocks: Vec<Vec<u32>> = Vec::new();
                for x in 0..n {
                    let b = rgs_get(parts[i], x) as usize;
                    if blocks.len() <= b {
                        blocks.resize(b + 1, Vec::new());
                    }
                    blocks[b].push(x as u32);
                }
                blocks
                    .iter()
                    .map(|b| fmt_set(b))
                    .collect::<Vec<_>>()
                    .join("|")
            }
            Codec::Cosets(t) => format!("H*{}", t.reps[i]),
            Codec::Blocks { blocks, .. } => fmt_set(&blocks[i]),
        }
    }
}

impl fmt::Display for ActionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.label, self.degree())
    }
}

fn fmt_set(s: &[u32]) -> String {
    let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 2]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

fn colex_rank(sorted: &[u32], binom: &[Vec<u64>]) -> u64 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &c)| binom[c as usize][i + 1])
        .sum()
}

/// Action of `g` on the k-subsets of its points, listed in colex order.
pub fn ksubset_action(g: &PermGroup, k: usize) -> Result<ActionInstance> {
    let n = g.degree();
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k < n/2, got n = {n}, k = {k}"
        )));
    }
    let count = binomial(n as u64, k as u64);
    if count > BigUint::from(MAX_ACTION_DEGREE) {
        return Err(Error::Budget(format!("C({n},{k}) = {count} subsets")));
    }
    let binom = binomial_table(n);
    let mut subsets = vec![Vec::new(); binom[n][k] as usize];
    let mut comb: Vec<u32> = (0..k as u32).collect();
    loop {
        subsets[colex_rank(&comb, &binom) as usize] = comb.clone();
        // next combination in lexicographic order
        let mut i = k;
        while i > 0 && comb[i - 1] as usize == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        comb[i - 1] += 1;
        for j in i..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
    let codec = Codec::KSubsets { k, subsets, binom };
    induced(format!("{k}-subsets of {n}"), g, codec)
}

fn induced(label: String, g: &PermGroup, codec: Codec) -> Result<ActionInstance> {
    let mut inst = ActionInstance {
        label,
        source: g.clone(),
        group: PermGroup::trivial(0),
        codec,
    };
    let gens: Vec<Permutation> = g.generators().iter().map(|s| inst.act(s)).collect();
    let degree = match &inst.codec {
        Codec::KSubsets { subsets, .. } => subsets.len(),
        Codec::Partitions { parts, .. } => parts.len(),
        Codec::Cosets(t) => t.len(),
        Codec::Blocks { blocks, .. } => blocks.len(),
        Codec::Identity => g.degree(),
    };
    inst.group = PermGroup::new(degree, gens)?;
    Ok(inst)
}

fn rgs_get(key: u128, x: usize) -> u8 {
    ((key >> (4 * x)) & 0xf) as u8
}

/// Relabels blocks in order of first occurrence and packs 4 bits per point.
fn canonical_rgs(labels: &[u8]) -> u128 {
    let mut map = [u8::MAX; 16];
    let mut next = 0u8;
    let mut key = 0u128;
    for (x, &l) in labels.iter().enumerate() {
        if map[l as usize] == u8::MAX {
            map[l as usize] = next;
            next += 1;
        }
        key |= (map[l as usize] as u128) << (4 * x);
    }
    key
}

/// Number of partitions of `n` points into `n/k` blocks of size `k`.
pub fn partition_count(n: u64, k: u64) -> BigUint {
    let m = n / k;
    let fact = |x: u64| (1..=x).fold(BigUint::from(1u32), |a, i| a * i);
    fact(n) / (fact(k).pow(m as u32) * fact(m))
}

/// Action of `g` on partitions of its points into blocks of size `k`.
pub fn partition_action(g: &PermGroup, k: usize) -> Result<ActionInstance> {
    let n = g.degree();
    if k < 2 || !n.is_multiple_of(k) || 2 * k > n {
        return Err(Error::InvalidParameter(format!(
            "need k | n and 1 < k <= n/2, got n = {n}, k = {k}"
        )));
    }
    let m = n / k;
    if n > 32 || m > 16 {
        return Err(Error::Budget(format!("partitions of {n} points")));
    }
    let count = partition_count(n as u64, k as u64);
    if count > BigUint::from(MAX_ACTION_DEGREE) {
        return Err(Error::Budget(format!("{count} partitions")));
    }
    let mut parts = Vec::new();
    let mut sizes = vec![0usize; m];
    let mut labels = vec![0u8; n];
    fn rec(
        x: usize,
        n: usize,
        k: usize,
        used: usize,
        sizes: &mut [usize],
        labels: &mut [u8],
        out: &mut Vec<u128>,
    ) {
        if x == n {
            out.push(canonical_rgs(labels));
            return;
        }
        for b in 0..(used + 1).min(sizes.len()) {
            if sizes[b] < k {
                sizes[b] += 1;
                labels[x] = b as u8;
                rec(x + 1, n, k, used.max(b + 1), sizes, labels, out);
                sizes[b] -= 1;
            }
        }
    }
    rec(0, n, k, 0, &mut sizes, &mut labels, &mut parts);
    let index = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    induced(
        format!("partitions of {n} into {m} blocks of {k}"),
        g,
        Codec::Partitions { parts, index },
    )
}

pub type CosetKey = PermKey;

/// Canonical representatives of the right cosets of `H` in `G`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    index: FxHashMap<CosetKey, u32>,
}

impl CosetTable {
    /// Canonical element of the coset `H c`, found level by level by
    /// minimising the image of each base point of `H`.  The key is the
    /// image list of that element.
    pub fn canonicalize(subgroup: &PermGroup, c: &Permutation) -> (CosetKey, Permutation) {
        let chain = subgroup.chain();
        let mut c = c.clone();
        for level in 0..chain.depth() {
            let orbit = chain.orbit(level);
            let best = *orbit.iter().min_by_key(|&&o| c.image(o)).unwrap();
            if best != orbit[0] {
                c = chain.transversal(level, best).unwrap().mul(&c);
            }
        }
        (c.key(), c)
    }

    fn key_of(&self, c: &Permutation) -> CosetKey {
        Self::canonicalize(&self.subgroup, c).0
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.index[&self.key_of(g)] as usize
    }

    /// Right multiplication by `g` on the cosets.
    pub fn act(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.index[&self.key_of(&r.mul(g))])
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Action of `g` by right multiplication on the right cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup, label: &str) -> Result<ActionInstance> {
    coset_action_limited(g, h, label, MAX_ACTION_DEGREE)
}

pub fn coset_action_limited(
    g: &PermGroup,
    h: &PermGroup,
    label: &str,
    max_degree: usize,
) -> Result<ActionInstance> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: h.degree(),
        });
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let index = g.index_of(h)?;
    if index > BigUint::from(max_degree) {
        return Err(Error::Budget(format!("index {index} exceeds {max_degree}")));
    }
    let n = g.degree();
    let mut table = CosetTable {
        subgroup: h.clone(),
        reps: vec![CosetTable::canonicalize(h, &Permutation::identity(n)).1],
        index: FxHashMap::default(),
    };
    table
        .index
        .insert(CosetTable::canonicalize(h, &Permutation::identity(n)).0, 0);
    let gens = g.generators();
    let mut images = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < table.reps.len() {
        for (s, gen) in gens.iter().enumerate() {
            let (key, canon) = CosetTable::canonicalize(h, &table.reps[i].mul(gen));
            let next = table.reps.len() as u32;
            let j = *table.index.entry(key).or_insert(next);
            if j == next {
                table.reps.push(canon);
            }
            images[s].push(j);
        }
        i += 1;
    }
    if BigUint::from(table.reps.len()) != index {
        return Err(Error::Internal(format!(
            "coset enumeration found {} cosets, index is {index}",
            table.reps.len()
        )));
    }
    let perms = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionInstance {
        label: label.to_string(),
        source: g.clone(),
        group: PermGroup::new(table.reps.len(), perms)?,
        codec: Codec::Cosets(table),
    })
}

/// A block system as the block index of every point, blocks numbered by
/// their least point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    block_of: Vec<u32>,
}

impl BlockSystem {
    pub fn from_blocks(degree: usize, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut labels = vec![u32::MAX; degree];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if labels[x as usize] != u32::MAX {
                    return Err(Error::InvalidParameter("blocks overlap".into()));
                }
                labels[x as usize] = b as u32;
            }
        }
        if labels.contains(&u32::MAX) {
            return Err(Error::InvalidParameter(
                "blocks do not cover the domain".into(),
            ));
        }
        Ok(Self::from_labels(&labels))
    }

    fn from_labels(labels: &[u32]) -> Self {
        let mut map = FxHashMap::default();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Self { block_of }
    }

    pub fn block_of(&self, x: u32) -> u32 {
        self.block_of[x as usize]
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let count = self.block_of.iter().max().map_or(0, |&m| m as usize + 1);
        let mut out = vec![Vec::new(); count];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(x as u32);
        }
        out
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks().len()
    }

    pub fn block_size(&self) -> usize {
        self.block_of.len() / self.num_blocks()
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Finest block system in which `0` and `beta` share a block.
pub fn minimal_block_containing(gens: &[Permutation], degree: usize, beta: u32) -> BlockSystem {
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    let mut queue = vec![(0u32, beta)];
    parent[beta as usize] = 0;
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let x = find(&mut parent, g.image(a));
            let y = find(&mut parent, g.image(b));
            if x != y {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                parent[hi as usize] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let labels: Vec<u32> = (0..degree as u32).map(|x| find(&mut parent, x)).collect();
    BlockSystem::from_labels(&labels)
}

/// All minimal nontrivial block systems of a transitive action; empty iff
/// the action is primitive.
pub fn block_systems(a: &ActionInstance) -> Result<Vec<BlockSystem>> {
    let g = a.group();
    let n = g.degree();
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    if n <= 2 {
        return Ok(Vec::new());
    }
    let gens = g.generators();
    let closures: Vec<BlockSystem> = (1..n as u32)
        .map(|b| minimal_block_containing(gens, n, b))
        .collect();
    let size0 = |s: &BlockSystem| s.block_of.iter().filter(|&&b| b == 0).count();
    let mut out: Vec<BlockSystem> = Vec::new();
    for s in &closures {
        let size = size0(s);
        if size == n {
            continue;
        }
        let minimal = (1..n)
            .filter(|&x| s.block_of[x] == 0)
            .all(|x| size0(&closures[x - 1]) == size);
        if minimal && !out.contains(s) {
            out.push(s.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Primitivity of a transitive action from generators of the stabilizer
/// of point 0: one block closure per suborbit.
pub fn is_primitive_with_stabilizer(
    gens: &[Permutation],
    degree: usize,
    stabilizer: &[Permutation],
) -> bool {
    if degree <= 2 {
        return true;
    }
    point_orbits(degree, stabilizer)
        .iter()
        .filter(|o| o[0] != 0)
        .all(|o| minimal_block_containing(gens, degree, o[0]).num_blocks() == 1)
}

/// Is the action primitive?  Coset actions use the subgroup's suborbits;
/// other actions fall back to [`block_systems`].
pub fn is_primitive(a: &ActionInstance) -> Result<bool> {
    if !a.group().is_transitive() {
        return Err(Error::Intransitive);
    }
    match a.coset_table() {
        Some(t) => {
            // H is maximal iff <H, r> = G for one representative r of each
            // nontrivial suborbit; the check runs in the source degree
            let h = t.subgroup();
            let stab: Vec<Permutation> = h.generators().iter().map(|x| a.act(x)).collect();
            let order = a.source().order();
            Ok(point_orbits(a.degree(), &stab)
                .iter()
                .filter(|o| o[0] != 0)
                .all(|o| {
                    let mut gens = h.generators().to_vec();
                    gens.push(t.representatives()[o[0] as usize].clone());
                    PermGroup::new(h.degree(), gens).is_ok_and(|k| k.order() == order)
                }))
        }
        None => Ok(block_systems(a)?.is_empty()),
    }
}

/// The action on the blocks of an invariant system.
pub fn induced_block_action(a: &ActionInstance, system: &BlockSystem) -> Result<ActionInstance> {
    if system.block_of.len() != a.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: system.block_of.len(),
        });
    }
    let blocks = system.blocks();
    for g in a.generator_images() {
        for block in &blocks {
            let target = system.block_of(g.image(block[0]));
            if block.iter().any(|&x| system.block_of(g.image(x)) != target) {
                return Err(Error::NonInvariantSystem);
            }
        }
    }
    let codec = Codec::Blocks {
        parent: Box::new(a.clone()),
        block_of: system.block_of.clone(),
        blocks,
    };
    induced(format!("{} on blocks", a.label()), a.source(), codec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::make_sym_alt;

    #[test]
    fn ksubset_degrees() {
        let s5 = make_sym_alt(5, false).unwrap();
        assert_eq!(ksubset_action(&s5, 2).unwrap().degree(), 10);
        assert!(ksubset_action(&s5, 3).is_err());
    }

    #[test]
    fn ksubset_colex_order() {
        let s5 = make_sym_alt(5, false).unwrap();
        let a = ksubset_action(&s5, 2).unwrap();
        assert_eq!(a.point_label(0), "{1,2}");
        assert_eq!(a.point_label(1), "{1,3}");
        assert_eq!(a.point_label(2), "{2,3}");
        assert_eq!(a.point_label(3), "{1,4}");
    }

    #[test]
    fn partition_degrees() {
        let s6 = make_sym_alt(6, false).unwrap();
        assert_eq!(partition_action(&s6, 3).unwrap().degree(), 10);
        let s10 = make_sym_alt(10, false).unwrap();
        assert_eq!(partition_action(&s10, 5).unwrap().degree(), 126);
        assert!(partition_action(&s6, 4).is_err());
    }

    #[test]
    fn coset_action_of_point_stabilizer() {
        let s5 = make_sym_alt(5, false).unwrap();
        let h = PermGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let a = coset_action(&s5, &h, "S5/S4").unwrap();
        assert_eq!(a.degree(), 5);
        assert!(a.is_faithful());
        let t = a.coset_table().unwrap();
        for (i, r) in t.representatives().iter().enumerate() {
            assert_eq!(t.coset_of(r), i);
        }
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let a5 = make_sym_alt(5, true).unwrap();
        let h = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(matches!(
            coset_action(&a5, &h, "x"),
            Err(Error::NotASubgroup)
        ));
    }

    #[test]
    fn sym4_is_primitive() {
        let a = ActionInstance::natural("S4", make_sym_alt(4, false).unwrap());
        assert!(block_systems(&a).unwrap().is_empty());
    }

    #[test]
    fn regular_cyclic_6() {
        let c = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let a = ActionInstance::from_generators("C6", 6, vec![c]).unwrap();
        let sizes: Vec<usize> = block_systems(&a)
            .unwrap()
            .iter()
            .map(|s| s.block_size())
            .collect();
        assert_eq!(sizes.len(), 2);
        assert!(sizes.contains(&2) && sizes.contains(&3));
    }

    #[test]
    fn induced_block_degree_and_identity() {
        let c = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let a = ActionInstance::from_generators("C6", 6, vec![c]).unwrap();
        for s in block_systems(&a).unwrap() {
            let b = induced_block_action(&a, &s).unwrap();
            assert_eq!(b.degree(), s.num_blocks());
            assert!(b.act(&Permutation::identity(6)).is_identity());
        }
        let bad = BlockSystem::from_blocks(6, &[vec![0, 1], vec![2, 4], vec![3, 5]]).unwrap();
        assert!(matches!(
            induced_block_action(&a, &bad),
            Err(Error::NonInvariantSystem)
        ));
    }

    #[test]
    fn intransitive_rejected() {
        let t = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let a = ActionInstance::from_generators("t", 4, vec![t]).unwrap();
        assert!(matches!(block_systems(&a), Err(Error::Intransitive)));
    }
}
