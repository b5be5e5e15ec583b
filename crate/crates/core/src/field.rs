//! Finite fields GF(p^f), small matrices over them, and the permutation
//! actions of affine and projective groups built from those matrices.
//!
//! Field elements are represented by their index: the coefficient vector
//! (constant term first) read as a base-p integer.

use crate::actions::ActionInstance;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Gf = u32;

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    // monic, constant term first, length f + 1
    poly: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, f: u32, poly: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if f == 0 || poly.len() != f as usize + 1 || poly[f as usize] != 1 {
            return Err(Error::InvalidParameter(
                "defining polynomial must be monic of degree f".into(),
            ));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("coefficient out of range".into()));
        }
        if !is_irreducible(&poly, p) {
            return Err(Error::InvalidParameter("polynomial is reducible".into()));
        }
        Ok(Self { p, f, poly })
    }

    /// The monic irreducible of degree `f` whose lower coefficients, read as
    /// a base-p integer, are smallest.
    pub fn smallest(p: u32, f: u32) -> Result<Self> {
        if !is_prime(p as u64) || f == 0 {
            return Err(Error::InvalidParameter(format!("no field GF({p}^{f})")));
        }
        let count = (p as u64).pow(f);
        for n in 0..count {
            let mut poly = digits(n, p, f as usize);
            poly.push(1);
            if is_irreducible(&poly, p) {
                return Ok(Self { p, f, poly });
            }
        }
        Err(Error::Internal("no irreducible polynomial found".into()))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.f)
    }
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let lead_inv = inv_mod(*m.last().unwrap(), p) as u64;
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = *r.last().unwrap() as u64 * lead_inv % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let t = (r[shift + i] as u64 + (p as u64 - c) * mi as u64) % p as u64;
            r[shift + i] = t as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_rem(&out.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// No roots in GF(p), and gcd(m, x^{p^i} - x) = 1 for 1 <= i <= f/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    for x in 0..p as u64 {
        let mut v = 0u64;
        for &c in m.iter().rev() {
            v = (v * x + c as u64) % p as u64;
        }
        if v == 0 {
            return false;
        }
    }
    let x = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=f / 2 {
        // power <- power^p mod m
        let mut acc = vec![1];
        for _ in 0..p {
            acc = poly_mulmod(&acc, &power, m, p);
        }
        power = acc;
        let mut diff = power.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let diff = trim(diff);
        if diff.is_empty() || poly_gcd(m, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Arithmetic in GF(q) through log/antilog tables over a primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    exp: Vec<Gf>,
    log: Vec<u32>,
    primitive: Gf,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q = spec.size();
        if q > 1 << 16 {
            return Err(Error::InvalidParameter(format!(
                "field of size {q} too large"
            )));
        }
        let (p, f) = (spec.p, spec.f as usize);
        let poly_mul = |a: Gf, b: Gf| -> Gf {
            let prod = poly_mulmod(
                &digits(a as u64, p, f),
                &digits(b as u64, p, f),
                &spec.poly,
                p,
            );
            prod.iter().rev().fold(0, |acc, &c| acc * p + c)
        };
        let mut exp = Vec::new();
        let mut primitive = 0;
        for g in 1..q {
            exp.clear();
            let mut x: Gf = 1;
            loop {
                exp.push(x);
                x = poly_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == (q - 1) as usize {
                primitive = g;
                break;
            }
        }
        if primitive == 0 && q > 2 {
            return Err(Error::Internal("no primitive element".into()));
        }
        if q == 2 {
            exp = vec![1];
            primitive = 1;
        }
        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Self {
            spec,
            q,
            exp,
            log,
            primitive,
        })
    }

    pub fn gf(p: u32, f: u32) -> Result<Self> {
        Self::new(FieldSpec::smallest(p, f)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn zero(&self) -> Gf {
        0
    }

    pub fn one(&self) -> Gf {
        1
    }

    pub fn primitive_element(&self) -> Gf {
        self.primitive
    }

    pub fn coefficients(&self, a: Gf) -> Vec<u32> {
        digits(a as u64, self.spec.p, self.spec.f as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Gf {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.spec.p + c % self.spec.p)
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let p = self.spec.p;
        if self.spec.f == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Gf) -> Gf {
        let p = self.spec.p;
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Ok(self.exp[e as usize])
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: Gf, e: u32) -> Gf {
        let mut x = a;
        for _ in 0..e % self.spec.f {
            x = self.pow(x, self.spec.p as u64);
        }
        x
    }

    pub fn multiplicative_order(&self, a: Gf) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        Ok(n / num_integer::gcd(n, l))
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        0..self.q
    }
}

/// A `d x d` matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    d: usize,
    a: Vec<Gf>,
}

impl Matrix {
    pub fn from_rows(rows: &[&[Gf]]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidParameter("matrix must be square".into()));
        }
        Ok(Self {
            d,
            a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    pub fn identity(d: usize) -> Self {
        let mut a = vec![0; d * d];
        for i in 0..d {
            a[i * d + i] = 1;
        }
        Self { d, a }
    }

    pub fn diagonal(entries: &[Gf]) -> Self {
        let d = entries.len();
        let mut a = vec![0; d * d];
        for (i, &e) in entries.iter().enumerate() {
            a[i * d + i] = e;
        }
        Self { d, a }
    }

    /// Permutation matrix sending basis vector `i` to `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let d = perm.len();
        let mut a = vec![0; d * d];
        for (i, &j) in perm.iter().enumerate() {
            a[i * d + j] = 1;
        }
        Self { d, a }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> Gf {
        self.a[i * self.d + j]
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        let d = self.d;
        let mut a = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0;
                for k in 0..d {
                    s = field.add(s, field.mul(self.get(i, k), other.get(k, j)));
                }
                a[i * d + j] = s;
            }
        }
        Matrix { d, a }
    }

    /// Row vector times matrix.
    pub fn apply(&self, field: &Field, v: &[Gf]) -> Vec<Gf> {
        (0..self.d)
            .map(|j| (0..self.d).fold(0, |s, i| field.add(s, field.mul(v[i], self.get(i, j)))))
            .collect()
    }

    pub fn trace(&self, field: &Field) -> Gf {
        (0..self.d).fold(0, |s, i| field.add(s, self.get(i, i)))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, field: &Field) -> Gf {
        let d = self.d;
        let mut m = self.a.clone();
        let mut det = 1;
        for c in 0..d {
            let Some(r) = (c..d).find(|&r| m[r * d + c] != 0) else {
                return 0;
            };
            if r != c {
                for j in 0..d {
                    m.swap(r * d + j, c * d + j);
                }
                det = field.neg(det);
            }
            let piv = m[c * d + c];
            det = field.mul(det, piv);
            let inv = field.inv(piv).unwrap();
            for r in c + 1..d {
                let factor = field.mul(m[r * d + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..d {
                    let t = field.mul(factor, m[c * d + j]);
                    m[r * d + j] = field.sub(m[r * d + j], t);
                }
            }
        }
        det
    }
}

fn vector_index(v: &[Gf], q: u32) -> u32 {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

fn index_vector(mut n: u32, q: u32, d: usize) -> Vec<Gf> {
    let mut v = vec![0; d];
    for i in (0..d).rev() {
        v[i] = n % q;
        n /= q;
    }
    v
}

fn check_matrices(field: &Field, d: usize, matrices: &[Matrix]) -> Result<()> {
    for m in matrices {
        if m.dim() != d {
            return Err(Error::InvalidParameter("matrix dimension mismatch".into()));
        }
        if m.det(field) == 0 {
            return Err(Error::SingularMatrix);
        }
    }
    Ok(())
}

/// The group generated by `v -> v M` (each `M`), by `v -> v^(p^e)` when
/// `field_auto_power = e > 0`, and by all translations when requested, acting
/// on the `q^d` vectors of `F_q^d`.
pub fn affine_perm_action(
    field: &Field,
    d: usize,
    matrices: &[Matrix],
    field_auto_power: u32,
    include_translations: bool,
    label: &str,
) -> Result<ActionInstance> {
    check_matrices(field, d, matrices)?;
    let q = field.size();
    let n = (q as u64).pow(d as u32);
    if n > 1_000_000 {
        return Err(Error::Budget(format!("affine degree {n}")));
    }
    let n = n as u32;
    let points: Vec<Vec<Gf>> = (0..n).map(|i| index_vector(i, q, d)).collect();
    let mut gens = Vec::new();
    for m in matrices {
        let images = points
            .iter()
            .map(|v| vector_index(&m.apply(field, v), q))
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    if !field_auto_power.is_multiple_of(field.spec().degree()) {
        let images = points
            .iter()
            .map(|v| {
                let w: Vec<Gf> = v
                    .iter()
                    .map(|&x| field.frobenius(x, field_auto_power))
                    .collect();
                vector_index(&w, q)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    if include_translations {
        let p = field.characteristic();
        for i in 0..d {
            for j in 0..field.spec().degree() {
                let t = p.pow(j);
                let images = points
                    .iter()
                    .map(|v| {
                        let mut w = v.clone();
                        w[i] = field.add(w[i], t);
                        vector_index(&w, q)
                    })
                    .collect();
                gens.push(Permutation::from_images(images)?);
            }
        }
    }
    ActionInstance::from_generators(label, n as usize, gens)
}

/// Normalizes so the first nonzero coordinate is 1.
fn projective_normalize(field: &Field, v: &mut [Gf]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = field.inv(lead).unwrap();
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
}

/// Projective points of `PG(d-1, q)` as normalized vectors, ordered by the
/// index of the normalized vector.
pub fn projective_points(field: &Field, d: usize) -> Vec<Vec<Gf>> {
    let q = field.size();
    (1..q.pow(d as u32))
        .map(|i| index_vector(i, q, d))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

/// The group generated by the given semilinear maps acting on the points of
/// the projective space `PG(d-1, q)`.
pub fn projective_perm_action(
    field: &Field,
    d: usize,
    matrices: &[Matrix],
    field_auto_power: u32,
    label: &str,
) -> Result<ActionInstance> {
    check_matrices(field, d, matrices)?;
    let q = field.size();
    let points = projective_points(field, d);
    let mut index = vec![u32::MAX; q.pow(d as u32) as usize];
    for (i, v) in points.iter().enumerate() {
        index[vector_index(v, q) as usize] = i as u32;
    }
    let act = |map: &dyn Fn(&[Gf]) -> Vec<Gf>| -> Result<Permutation> {
        let images = points
            .iter()
            .map(|v| {
                let mut w = map(v);
                projective_normalize(field, &mut w);
                index[vector_index(&w, q) as usize]
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut gens = Vec::new();
    for m in matrices {
        gens.push(act(&|v| m.apply(field, v))?);
    }
    if !field_auto_power.is_multiple_of(field.spec().degree()) {
        gens.push(act(&|v| {
            v.iter()
                .map(|&x| field.frobenius(x, field_auto_power))
                .collect()
        })?);
    }
    ActionInstance::from_generators(label, points.len(), gens)
}

/// Standard generators of SL(2,q): a transvection, a diagonal element and
/// the Weyl element.
pub fn sl2_generators(field: &Field) -> Vec<Matrix> {
    let w = field.primitive_element();
    let winv = field.inv(w).unwrap();
    let minus_one = field.neg(1);
    vec![
        Matrix::from_rows(&[&[1, 1], &[0, 1]]).unwrap(),
        Matrix::diagonal(&[w, winv]),
        Matrix::from_rows(&[&[0, 1], &[minus_one, 0]]).unwrap(),
    ]
}

/// The monomial group of 2x2 matrices of determinant +-1.
pub fn s0_generators(field: &Field) -> Vec<Matrix> {
    let w = field.primitive_element();
    let winv = field.inv(w).unwrap();
    vec![
        Matrix::diagonal(&[w, winv]),
        Matrix::diagonal(&[1, field.neg(1)]),
        Matrix::from_rows(&[&[0, 1], &[1, 0]]).unwrap(),
    ]
}

/// Generators of a subgroup of SL(2,q) isomorphic to SL(2,5), found by
/// search: `A` is the fixed element of order 4, `B` runs over matrices of
/// determinant 1 and trace -1 (order 3) until `<A, B>` has order 120.
pub fn sl2_5_generators(field: &Field) -> Result<Vec<Matrix>> {
    let minus_one = field.neg(1);
    let a = Matrix::from_rows(&[&[0, 1], &[minus_one, 0]])?;
    let trace = minus_one;
    for x in field.elements() {
        let y = field.sub(trace, x);
        for b in field.elements().skip(1) {
            // det = x y - b c = 1
            let c = field.mul(field.sub(field.mul(x, y), 1), field.inv(b)?);
            let m = Matrix::from_rows(&[&[x, b], &[c, y]])?;
            let gens = vec![a.clone(), m];
            let inst = affine_perm_action(field, 2, &gens, 0, false, "search")?;
            if inst.group().order() == 120u32.into() {
                return Ok(gens);
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "GF({}) has no subgroup SL(2,5)",
        field.size()
    )))
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    const SIZES: &[(u32, u32)] = &[
        (2, 1),
        (3, 1),
        (2, 2),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
        (11, 1),
        (13, 1),
        (2, 4),
        (17, 1),
        (19, 1),
        (23, 1),
        (5, 2),
        (3, 3),
        (29, 1),
        (31, 1),
        (2, 5),
        (7, 2),
        (2, 6),
        (3, 4),
    ];

    fn field_and_elems() -> impl Strategy<Value = (Field, Gf, Gf, Gf)> {
        prop::sample::select(SIZES).prop_flat_map(|(p, f)| {
            let q = p.pow(f);
            (Just(Field::gf(p, f).unwrap()), 0..q, 0..q, 0..q)
        })
    }

    proptest! {
        #[test]
        fn field_axioms((f, a, b, c) in field_and_elems()) {
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if a != f.zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                prop_assert_eq!(f.pow(a, f.size() as u64 - 1), f.one());
            } else {
                prop_assert!(f.inv(a).is_err());
            }
        }

        #[test]
        fn frobenius_is_an_automorphism((f, a, b, _) in field_and_elems()) {
            let p = f.characteristic() as u64;
            prop_assert_eq!(f.frobenius(a, 1), f.pow(a, p));
            prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
            prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
            prop_assert_eq!(f.frobenius(a, f.spec().degree()), a);
        }

        #[test]
        fn primitive_element_generates((f, _, _, _) in field_and_elems()) {
            prop_assert_eq!(f.multiplicative_order(f.primitive_element()).unwrap(), f.size() as u64 - 1);
        }
    }
}
