use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::DivisionRing;
use crate::error::{invalid, Error, Result};

/// Largest field order accepted by [`FiniteField::new`].
pub const FIELD_SIZE_LIMIT: u32 = 1 << 16;

/// Element of a finite field, encoded as its polynomial representative
/// evaluated at `p` (so `GF(p)` elements are `0..p` and, in characteristic 2,
/// codes are bit-packed coefficient words).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gf(pub u32);

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    // exp has length 2(q-1) so log a + log b never needs reducing
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// `GF(p^k)` with a fixed modulus: the lexicographically smallest monic
/// irreducible polynomial of degree `k`, comparing coefficient vectors from
/// the constant term upward.
#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.k)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = code;
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients low first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(m, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    for idx in 0..count {
        // idx enumerates (a_0, ..., a_{k-1}) with a_0 as the most significant digit
        let mut coeffs = digits(idx, p, k);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FiniteField {
    /// Builds `GF(p^k)`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if k < 1 {
            return invalid("extension degree must be at least 1");
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= FIELD_SIZE_LIMIT as u64);
        let q = match q {
            Some(q) => q as u32,
            None => {
                return Err(Error::BudgetExceeded {
                    what: format!("GF({p}^{k})"),
                    needed: (p as u128).saturating_pow(k),
                    limit: FIELD_SIZE_LIMIT as u128,
                })
            }
        };
        let modulus = smallest_irreducible(p, k);
        let elems: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, k)).collect();

        // smallest primitive element by code
        let mut primitive = 0;
        let mut powers = Vec::new();
        for g in 1..q {
            let mut cur = digits(1, p, k);
            let mut seq = Vec::with_capacity((q - 1) as usize);
            loop {
                seq.push(undigits(&cur, p));
                cur = poly_mulmod(&cur, &elems[g as usize], &modulus, p);
                if undigits(&cur, p) == 1 {
                    break;
                }
            }
            if seq.len() as u32 == q - 1 {
                primitive = g;
                powers = seq;
                break;
            }
        }
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        let mut log = vec![0u32; q as usize];
        for (i, &c) in powers.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        let neg: Vec<u32> = (0..q)
            .map(|c| {
                let ds: Vec<u32> = digits(c, p, k).iter().map(|&d| (p - d) % p).collect();
                undigits(&ds, p)
            })
            .collect();
        let add = if p != 2 && q <= 512 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    let s: Vec<u32> = elems[a as usize]
                        .iter()
                        .zip(&elems[b as usize])
                        .map(|(x, y)| (x + y) % p)
                        .collect();
                    t[(a * q + b) as usize] = undigits(&s, p);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(FiniteField {
            t: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                primitive,
                exp,
                log,
                neg,
                add,
            }),
        })
    }

    /// `GF(q)` for a prime power `q`.
    pub fn with_order(q: u32) -> Result<Self> {
        if q < 2 {
            return invalid(format!("{q} is not a prime power"));
        }
        let mut p = 2;
        while q % p != 0 {
            p += 1;
        }
        let mut k = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return invalid(format!("{q} is not a prime power"));
        }
        FiniteField::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn size(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, constant term first; monic of degree `k`.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn primitive_element(&self) -> Gf {
        Gf(self.t.primitive)
    }

    /// All elements in code order `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.t.q).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (1..self.t.q).map(Gf)
    }

    /// A basis of `GF(q)` over `GF(p)`: the monomials `1, x, ..., x^{k-1}`.
    pub fn additive_basis(&self) -> Vec<Gf> {
        (0..self.t.k).map(|i| Gf(self.t.p.pow(i))).collect()
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf(1);
        }
        if a.0 == 0 {
            return Gf(0);
        }
        let l = self.t.log[a.0 as usize] as u64;
        let m = (self.t.q - 1) as u64;
        Gf(self.t.exp[((l * (e % m)) % m) as usize])
    }

    /// Discrete logarithm to the base of [`FiniteField::primitive_element`].
    pub fn log(&self, a: Gf) -> Option<u32> {
        (a.0 != 0).then(|| self.t.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Gf) -> Option<u32> {
        let l = self.log(a)?;
        let m = self.t.q - 1;
        Some(m / gcd(l, m))
    }

    /// Whether `a` is a square.
    pub fn is_square(&self, a: Gf) -> bool {
        a.0 == 0 || self.t.p == 2 || self.t.log[a.0 as usize] % 2 == 0
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl DivisionRing for FiniteField {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf(0)
    }

    fn one(&self) -> Gf {
        Gf(1)
    }

    #[inline]
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let t = &self.t;
        if t.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        if let Some(tab) = &t.add {
            return Gf(tab[(a.0 * t.q + b.0) as usize]);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..t.k {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        Gf(out)
    }

    #[inline]
    fn neg(&self, a: &Gf) -> Gf {
        Gf(self.t.neg[a.0 as usize])
    }

    #[inline]
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        let t = &self.t;
        Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.t;
        let l = t.log[a.0 as usize];
        Some(Gf(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    #[inline]
    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn characteristic(&self) -> u32 {
        self.t.p
    }

    fn format_elem(&self, a: &Gf) -> String {
        a.0.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<Gf> {
        let v: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("'{s}' is not a field element code")))?;
        if v >= self.t.q {
            return Err(Error::Parse(format!("code {v} out of range for GF({})", self.t.q)));
        }
        Ok(Gf(v))
    }
}

/// The automorphism `x ↦ x^(p^e)` of a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldAuto {
    exponent: u32,
}

impl FieldAuto {
    pub fn new(exponent: u32) -> Self {
        FieldAuto { exponent }
    }

    pub fn identity() -> Self {
        FieldAuto { exponent: 0 }
    }

    pub fn frobenius() -> Self {
        FieldAuto { exponent: 1 }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_identity(&self, field: &FiniteField) -> bool {
        self.exponent % field.degree() == 0
    }

    /// `self` after `other`, reduced modulo the field degree.
    pub fn compose(&self, other: &FieldAuto, field: &FiniteField) -> FieldAuto {
        FieldAuto::new((self.exponent + other.exponent) % field.degree())
    }

    pub fn inverse(&self, field: &FiniteField) -> FieldAuto {
        let k = field.degree();
        FieldAuto::new((k - self.exponent % k) % k)
    }

    #[inline]
    pub fn apply(&self, field: &FiniteField, a: Gf) -> Gf {
        if self.exponent == 0 || a.0 == 0 {
            return a;
        }
        field.pow(a, (field.characteristic() as u64).pow(self.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_has_two_elements() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![Gf(0), Gf(1)]);
        assert_eq!(f.add(&Gf(1), &Gf(1)), Gf(0));
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // ω = x satisfies ω^2 = ω + 1
        let w = Gf(2);
        assert_eq!(f.mul(&w, &w), Gf(3));
    }

    #[test]
    fn modulus_choice_is_lexicographic() {
        // GF(9): x^2+1 precedes x^2+x+2 and x^2+2x+2
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // GF(8): (1,0,1) < (1,1,0), so x^3+x^2+1 precedes x^3+x+1
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // brute-force oracle: no monic quadratic with smaller coefficient tuple is irreducible
        for p in [2u32, 3, 5, 7] {
            let f = FiniteField::new(p, 2).unwrap();
            let m = f.modulus();
            for a0 in 0..p {
                for a1 in 0..p {
                    if (a0, a1) >= (m[0], m[1]) {
                        continue;
                    }
                    let has_root = (0..p).any(|x| (x * x + a1 * x + a0) % p == 0);
                    assert!(has_root, "x^2+{a1}x+{a0} over GF({p}) would be irreducible");
                }
            }
        }
    }

    #[test]
    fn gf9_multiplicative_group_is_cyclic() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.primitive_element();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = Gf(1);
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(&x, &g);
        }
        assert_eq!(x, Gf(1));
        assert_eq!(seen.len(), 8);
        assert!(!seen.contains(&Gf(0)));
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(&a, &f.neg(&a)), Gf(0));
                if a.0 != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Gf(1));
                }
                for b in f.elements() {
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(&a, &f.add(&b, &c)),
                            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_orbits_divide_degree() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let fr = FieldAuto::frobenius();
            for a in f.elements() {
                let mut x = fr.apply(&f, a);
                let mut len = 1;
                while x != a {
                    x = fr.apply(&f, x);
                    len += 1;
                }
                assert_eq!(k % len, 0);
            }
            // k-fold Frobenius is the identity
            let id = (0..k).fold(FieldAuto::identity(), |acc, _| acc.compose(&fr, &f));
            assert!(id.is_identity(&f));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 0).is_err());
        assert!(matches!(FiniteField::new(2, 20), Err(Error::BudgetExceeded { .. })));
        assert!(FiniteField::with_order(6).is_err());
        assert_eq!(FiniteField::with_order(9).unwrap().degree(), 2);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = FiniteField::new(5, 2).unwrap();
        let b = FiniteField::new(5, 2).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(&x, &y), b.mul(&x, &y));
            }
        }
        assert_eq!(a.primitive_element(), b.primitive_element());
    }
}
