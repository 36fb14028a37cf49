use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::DivisionRing;
use crate::error::{Error, Result};

/// `a + b·i + c·j + d·k` with exact rational components, `i² = j² = −1`,
/// `k = ij = −ji`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalQuaternion {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl RationalQuaternion {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        RationalQuaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        RationalQuaternion::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        RationalQuaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        RationalQuaternion::from_ints(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        RationalQuaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RationalQuaternion::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }
}

/// `N(x) = a² + b² + c² + d²`.
pub fn quat_norm(x: &RationalQuaternion) -> BigRational {
    x.norm()
}

/// The rational quaternion division algebra.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Quaternions;

impl DivisionRing for Quaternions {
    type Elem = RationalQuaternion;

    fn zero(&self) -> RationalQuaternion {
        RationalQuaternion::zero()
    }

    fn one(&self) -> RationalQuaternion {
        RationalQuaternion::one()
    }

    fn add(&self, x: &RationalQuaternion, y: &RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(&x.a + &y.a, &x.b + &y.b, &x.c + &y.c, &x.d + &y.d)
    }

    fn neg(&self, x: &RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(-&x.a, -&x.b, -&x.c, -&x.d)
    }

    fn mul(&self, x: &RationalQuaternion, y: &RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(
            &x.a * &y.a - &x.b * &y.b - &x.c * &y.c - &x.d * &y.d,
            &x.a * &y.b + &x.b * &y.a + &x.c * &y.d - &x.d * &y.c,
            &x.a * &y.c - &x.b * &y.d + &x.c * &y.a + &x.d * &y.b,
            &x.a * &y.d + &x.b * &y.c - &x.c * &y.b + &x.d * &y.a,
        )
    }

    fn inv(&self, x: &RationalQuaternion) -> Option<RationalQuaternion> {
        if x.is_zero() {
            return None;
        }
        let n = x.norm();
        Some(x.conj().scale(&n.recip()))
    }

    fn is_zero(&self, x: &RationalQuaternion) -> bool {
        x.is_zero()
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u32 {
        0
    }

    fn format_elem(&self, x: &RationalQuaternion) -> String {
        x.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<RationalQuaternion> {
        s.parse()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalQuaternion {
    /// Always prints all four components: `a+bi+cj+dk`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.a))?;
        for (coef, unit) in [(&self.b, 'i'), (&self.c, 'j'), (&self.d, 'k')] {
            if coef.is_negative() {
                write!(f, "-{}{unit}", fmt_rational(&-coef))?;
            } else {
                write!(f, "+{}{unit}", fmt_rational(coef))?;
            }
        }
        Ok(())
    }
}

/// Parses `n` or `n/m` with an optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for RationalQuaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        let mut parts = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        // split into signed terms; a sign directly after '/' cannot occur in valid input
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in src.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-BigRational::one(), rest),
                None => (BigRational::one(), term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef_str, slot) = match body.chars().last() {
                Some('i') => (&body[..body.len() - 1], 1),
                Some('j') => (&body[..body.len() - 1], 2),
                Some('k') => (&body[..body.len() - 1], 3),
                _ => (body, 0),
            };
            let coef = if coef_str.is_empty() {
                if slot == 0 {
                    return Err(Error::Parse(format!("empty term in '{s}'")));
                }
                BigRational::one()
            } else {
                parse_rational(coef_str)?
            };
            parts[slot] += sign * coef;
        }
        let [a, b, c, d] = parts;
        Ok(RationalQuaternion::new(a, b, c, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_quat(rng: &mut ChaCha8Rng) -> RationalQuaternion {
        let mut r = || {
            BigRational::new(
                BigInt::from(rng.gen_range(-9i64..=9)),
                BigInt::from(rng.gen_range(1i64..=5)),
            )
        };
        RationalQuaternion::new(r(), r(), r(), r())
    }

    #[test]
    fn norms_of_basic_elements() {
        assert_eq!(quat_norm(&RationalQuaternion::one()), BigRational::one());
        let x: RationalQuaternion = "i+j".parse().unwrap();
        assert_eq!(quat_norm(&x), BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn hamilton_relations() {
        let h = Quaternions;
        let i: RationalQuaternion = "i".parse().unwrap();
        let j: RationalQuaternion = "j".parse().unwrap();
        let k: RationalQuaternion = "k".parse().unwrap();
        let m1: RationalQuaternion = "-1".parse().unwrap();
        assert_eq!(h.mul(&i, &i), m1);
        assert_eq!(h.mul(&j, &j), m1);
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.neg(&k));
    }

    #[test]
    fn norm_is_multiplicative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = Quaternions;
        for _ in 0..100 {
            let x = random_quat(&mut rng);
            let y = random_quat(&mut rng);
            assert_eq!(quat_norm(&h.mul(&x, &y)), quat_norm(&x) * quat_norm(&y));
            if !x.is_zero() {
                let xi = h.inv(&x).unwrap();
                assert_eq!(h.mul(&x, &xi), RationalQuaternion::one());
                assert_eq!(quat_norm(&xi), quat_norm(&x).recip());
            }
        }
    }

    #[test]
    fn multiplication_is_associative_not_commutative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = Quaternions;
        let mut saw_noncommuting = false;
        for _ in 0..50 {
            let (x, y, z) = (random_quat(&mut rng), random_quat(&mut rng), random_quat(&mut rng));
            assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
            saw_noncommuting |= h.mul(&x, &y) != h.mul(&y, &x);
        }
        assert!(saw_noncommuting);
    }

    #[test]
    fn literal_round_trip() {
        let x: RationalQuaternion = "1/2-3i+j-7/4k".parse().unwrap();
        assert_eq!(x.to_string(), "1/2-3i+1j-7/4k");
        assert_eq!(x.to_string().parse::<RationalQuaternion>().unwrap(), x);
        assert!("".parse::<RationalQuaternion>().is_err());
        assert!("1/0".parse::<RationalQuaternion>().is_err());
        assert!("x".parse::<RationalQuaternion>().is_err());
    }

    #[test]
    fn zero_norm_only_for_zero() {
        assert!(quat_norm(&RationalQuaternion::zero()).is_zero());
        assert!(Quaternions.inv(&RationalQuaternion::zero()).is_none());
    }
}
