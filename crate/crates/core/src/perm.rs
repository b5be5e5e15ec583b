//! Permutations of `{0, .., n-1}` and their cycle types.
//!
//! Composition is left-to-right: `a.compose(&b)` maps `x` to `b(a(x))`, which
//! matches the exponent notation `x^{ab}` used for right actions.

use std::fmt;

use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Compact hashable encoding of a permutation, used as an orbit key.
pub type PermKey = SmallVec<[u8; 32]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let i = im as usize;
            if i >= n || seen[i] {
                return Err(Error::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree || touched[p] {
                    return Err(Error::NotABijection);
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 1-based image lists (dataset convention).
    pub fn from_one_based(images: &[u64]) -> Result<Self> {
        let zero: Option<Vec<u32>> = images
            .iter()
            .map(|&i| i.checked_sub(1).and_then(|v| u32::try_from(v).ok()))
            .collect();
        Self::from_images(zero.ok_or(Error::NotABijection)?)
    }

    pub fn to_one_based(&self) -> Vec<u64> {
        self.images.iter().map(|&i| i as u64 + 1).collect()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| i as u32 == im)
    }

    /// Left-to-right product: `x` maps to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let o = &other.images;
        Permutation {
            images: self.images.iter().map(|&i| o[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Permutation {
        let n = self.degree();
        let mut out = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (i, &p) in cycle.iter().enumerate() {
                out[p as usize] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `g^-1 * self * g`, the conjugate `self^g`.
    #[inline]
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (j, &xj) in self.images.iter().enumerate() {
            out[g.images[j] as usize] = g.images[xj as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &a)| other.images[a as usize] == self.images[other.images[i] as usize])
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i as u32 == im)
            .count()
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i as u32 == im)
            .map(|(i, _)| i as u32)
            .collect()
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &im)| i as u32 != im)
            .map(|(i, _)| i as u32)
    }

    /// All cycles, including fixed points as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                c.push(x);
                x = self.images[x as usize];
            }
            out.push(c);
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<u32> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths())
    }

    /// Element order, the lcm of the cycle lengths.
    ///
    /// Panics if the order does not fit in 64 bits, which cannot happen below
    /// degree 40.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_lengths().iter().map(|&l| l as usize - 1).sum();
        transpositions.is_multiple_of(2)
    }

    /// Byte encoding used for hashing large collections of permutations.
    pub fn key(&self) -> PermKey {
        if self.degree() <= 256 {
            self.images.iter().map(|&i| i as u8).collect()
        } else {
            self.images.iter().flat_map(|&i| i.to_le_bytes()).collect()
        }
    }

    pub fn from_key(key: &[u8], degree: usize) -> Permutation {
        let images: Vec<u32> = if degree <= 256 {
            key.iter().map(|&b| b as u32).collect()
        } else {
            key.chunks_exact(4)
                .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect()
        };
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        Permutation::mul(self, rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths in canonical form: strictly increasing lengths,
/// each with a positive count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    parts: Vec<(u32, u32)>,
}

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<u32>) -> Self {
        lengths.sort_unstable();
        let mut parts: Vec<(u32, u32)> = Vec::new();
        for l in lengths {
            match parts.last_mut() {
                Some((len, count)) if *len == l => *count += 1,
                _ => parts.push((l, 1)),
            }
        }
        Self { parts }
    }

    /// From `(length, count)` pairs in any order; zero counts are dropped.
    pub fn from_parts(parts: &[(u32, u32)]) -> Self {
        let mut lengths = Vec::new();
        for &(l, c) in parts {
            lengths.extend(std::iter::repeat_n(l, c as usize));
        }
        Self::from_lengths(lengths)
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&(l, c)| l as u64 * c as u64).sum()
    }

    pub fn count_of(&self, len: u32) -> u32 {
        self.parts
            .iter()
            .find(|&&(l, _)| l == len)
            .map_or(0, |&(_, c)| c)
    }

    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &(l, _)| acc.lcm(&(l as u64)))
    }

    /// A representative permutation with the cycles laid out consecutively,
    /// longest cycles first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree() as usize;
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut next = 0u32;
        for &(l, c) in self.parts.iter().rev() {
            for _ in 0..c {
                for i in 0..l {
                    images[(next + i) as usize] = next + (i + 1) % l;
                }
                next += l;
            }
        }
        Permutation::from_images_unchecked(images)
    }

    /// `1^1 m^b` with `m > 1`.
    pub fn is_quasi_semiregular_shape(&self) -> bool {
        match self.parts.as_slice() {
            [(1, 1), (m, _)] => *m > 1,
            _ => false,
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, c)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}^{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p(3, &[&[0, 1]]);
        let b = p(3, &[&[1, 2]]);
        let ab = a.compose(&b).unwrap();
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
        assert_eq!(ab.images(), &[2, 0, 1]);
        let e = Permutation::identity(3);
        assert_eq!(e.compose(&ab).unwrap(), ab);
        assert!(ab.compose(&ab.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn non_bijection_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(5).cycle_type().to_string(), "1^5");
        let g = p(11, &[&[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9]]);
        assert_eq!(g.cycle_type().to_string(), "1^1 5^2");
        assert!(g.cycle_type().is_quasi_semiregular_shape());
        let h = p(7, &[&[0, 1], &[2, 3], &[4, 5]]);
        assert_eq!(h.cycle_type().to_string(), "1^1 2^3");
        let k = p(7, &[&[0, 1, 2, 3], &[4, 5]]);
        assert!(!k.cycle_type().is_quasi_semiregular_shape());
        assert_eq!(k.order(), 4);
    }

    #[test]
    fn conjugation_and_powers() {
        let x = p(5, &[&[0, 1, 2]]);
        let g = p(5, &[&[0, 3], &[1, 4]]);
        let direct = g.inverse().mul(&x).mul(&g);
        assert_eq!(x.conjugate_by(&g), direct);
        assert_eq!(x.pow(3), Permutation::identity(5));
        assert_eq!(x.pow(-1), x.inverse());
        let ct = CycleType::from_parts(&[(1, 2), (3, 1)]);
        assert_eq!(ct.representative().cycle_type(), ct);
    }

    #[test]
    fn key_roundtrip_large_degree() {
        let g = Permutation::from_images((0..300u32).rev().collect()).unwrap();
        assert_eq!(Permutation::from_key(&g.key(), 300), g);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn pair() -> impl Strategy<Value = (Permutation, Permutation)> {
        (1usize..24).prop_flat_map(|n| (perm(n), perm(n)))
    }

    proptest! {
        #[test]
        fn cycle_type_is_conjugation_invariant((x, g) in pair()) {
            prop_assert_eq!(x.conjugate_by(&g).cycle_type(), x.cycle_type());
            prop_assert_eq!(x.inverse().cycle_type(), x.cycle_type());
        }

        #[test]
        fn conjugation_matches_definition((x, g) in pair()) {
            prop_assert_eq!(x.conjugate_by(&g), g.inverse().mul(&x).mul(&g));
        }

        #[test]
        fn order_and_powers((x, _) in pair()) {
            let o = x.order();
            prop_assert!(x.pow(o as i64).is_identity());
            prop_assert_eq!(x.pow(-1), x.inverse());
            prop_assert_eq!(x.cycle_type().order(), o);
            prop_assert_eq!(x.mul(&x.inverse()), Permutation::identity(x.degree()));
        }

        #[test]
        fn key_round_trips((x, _) in pair()) {
            prop_assert_eq!(Permutation::from_key(&x.key(), x.degree()), x.clone());
            prop_assert_eq!(Permutation::from_one_based(&x.to_one_based()).unwrap(), x);
        }

        #[test]
        fn parity_is_a_homomorphism((x, y) in pair()) {
            prop_assert_eq!(x.mul(&y).is_even(), x.is_even() == y.is_even());
        }
    }
}
