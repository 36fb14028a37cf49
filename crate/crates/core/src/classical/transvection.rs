use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{elementary, Mat};
use crate::scalar::{quat_norm, DivisionRing, FiniteField, Quaternions, RationalQuaternion};

/// `id + u·ρ` with `ρ(u) = 0`: center `uD`, axis `ker ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transvection<E> {
    pub u: Vec<E>,
    pub rho: Vec<E>,
}

fn pair<R: DivisionRing>(ring: &R, rho: &[R::Elem], u: &[R::Elem]) -> R::Elem {
    rho.iter().zip(u).fold(ring.zero(), |acc, (r, x)| ring.add(&acc, &ring.mul(r, x)))
}

impl<E: Clone + Eq> Transvection<E> {
    pub fn new<R: DivisionRing<Elem = E>>(ring: &R, u: Vec<E>, rho: Vec<E>) -> Result<Self> {
        if u.len() != rho.len() {
            return Err(Error::DimensionMismatch("vector and covector lengths differ".into()));
        }
        if !ring.is_zero(&pair(ring, &rho, &u)) {
            return Err(Error::InvalidInput("rho(u) must vanish".into()));
        }
        Ok(Transvection { u, rho })
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn is_trivial<R: DivisionRing<Elem = E>>(&self, ring: &R) -> bool {
        self.u.iter().all(|x| ring.is_zero(x)) || self.rho.iter().all(|x| ring.is_zero(x))
    }

    pub fn matrix<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Mat<E> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| {
            let t = ring.mul(&self.u[i], &self.rho[j]);
            if i == j {
                ring.add(&ring.one(), &t)
            } else {
                t
            }
        })
    }

    /// `τ_{uaρ}`.
    pub fn scaled<R: DivisionRing<Elem = E>>(&self, ring: &R, a: &E) -> Self {
        Transvection { u: self.u.iter().map(|x| ring.mul(x, a)).collect(), rho: self.rho.clone() }
    }

    pub fn inverse<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Self {
        Transvection { u: self.u.iter().map(|x| ring.neg(x)).collect(), rho: self.rho.clone() }
    }
}

/// Matrix of `τ_{uρ}`; fails unless `ρ(u) = 0`.
pub fn transvection<R: DivisionRing>(ring: &R, u: &[R::Elem], rho: &[R::Elem]) -> Result<Mat<R::Elem>> {
    Ok(Transvection::new(ring, u.to_vec(), rho.to_vec())?.matrix(ring))
}

fn rank_of_rows<R: DivisionRing>(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<usize> {
    Ok(Mat::from_rows(rows)?.rank(ring))
}

/// `(commute, same center or same axis)` for two non-trivial transvections.
pub fn transvections_commute_iff<R: DivisionRing>(
    ring: &R,
    t1: &Transvection<R::Elem>,
    t2: &Transvection<R::Elem>,
) -> Result<(bool, bool)> {
    if t1.is_trivial(ring) || t2.is_trivial(ring) {
        return Err(Error::InvalidInput("transvections must be non-trivial".into()));
    }
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch("transvections on different spaces".into()));
    }
    let m1 = t1.matrix(ring);
    let m2 = t2.matrix(ring);
    let commute = m1.mul(ring, &m2)? == m2.mul(ring, &m1)?;
    let n = t1.dim();
    let cols = Mat::from_columns(n, &[t1.u.clone(), t2.u.clone()]);
    let same_center = cols.rank(ring) == 1;
    let same_axis = rank_of_rows(ring, vec![t1.rho.clone(), t2.rho.clone()])? == 1;
    Ok((commute, same_center || same_axis))
}

/// Outcome of the Steinberg relation checks.
#[derive(Debug, Clone, Serialize)]
pub struct SteinbergReport {
    pub n: usize,
    pub sr1: bool,
    pub sr2: bool,
    pub sr3: bool,
    /// Forms of `τ_ik(·)` matched by `[τ_ij(a), τ_jk(b)]` on every instance,
    /// among `ab`, `-ab`, `ba`, `-ba`.
    pub sr3_conventions: Vec<String>,
    pub instances: u64,
    pub noncommuting_pairs: u64,
    pub failure: Option<String>,
}

impl SteinbergReport {
    pub fn all_pass(&self) -> bool {
        self.sr1 && self.sr2 && self.sr3
    }
}

fn commutator<R: DivisionRing>(ring: &R, x: &Mat<R::Elem>, y: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    let xi = x.inverse(ring)?;
    let yi = y.inverse(ring)?;
    x.mul(ring, y)?.mul(ring, &xi)?.mul(ring, &yi)
}

const CONVENTIONS: [&str; 4] = ["ab", "-ab", "ba", "-ba"];

/// Checks SR1-SR3 for the root elements `τ_ij(a) = id + a·E_ij` on every
/// scalar pair in `pairs` and every admissible index pattern.
pub fn check_steinberg_pairs<R: DivisionRing>(
    ring: &R,
    n: usize,
    pairs: &[(R::Elem, R::Elem)],
    budget: &Budget,
) -> Result<SteinbergReport> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("Steinberg relations need n >= 3, got {n}")));
    }
    let tau = |i, j, a: &R::Elem| elementary(ring, n, i, j, a);
    let mut report = SteinbergReport {
        n,
        sr1: true,
        sr2: true,
        sr3: true,
        sr3_conventions: Vec::new(),
        instances: 0,
        noncommuting_pairs: 0,
        failure: None,
    };
    let mut alive = [true; 4];
    let idx: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    for (a, b) in pairs {
        budget.check_time()?;
        let ab = ring.mul(a, b);
        let ba = ring.mul(b, a);
        if ab != ba {
            report.noncommuting_pairs += 1;
        }
        let cands = [ab.clone(), ring.neg(&ab), ba.clone(), ring.neg(&ba)];
        for &(i, j) in &idx {
            let x = tau(i, j, a);
            report.instances += 1;
            if x.mul(ring, &tau(i, j, b))? != tau(i, j, &ring.add(a, b)) {
                report.sr1 = false;
                report.failure.get_or_insert(format!("SR1 at ({i},{j})"));
            }
            for &(k, l) in &idx {
                if j == k || i == l {
                    continue;
                }
                report.instances += 1;
                if !commutator(ring, &x, &tau(k, l, b))?.is_identity(ring) {
                    report.sr2 = false;
                    report.failure.get_or_insert(format!("SR2 at ({i},{j}),({k},{l})"));
                }
            }
            for k in (0..n).filter(|&k| k != i && k != j) {
                report.instances += 1;
                let c = commutator(ring, &x, &tau(j, k, b))?;
                let mut any = false;
                for (t, cand) in cands.iter().enumerate() {
                    let ok = c == tau(i, k, cand);
                    any |= ok;
                    alive[t] &= ok;
                }
                if !any {
                    report.sr3 = false;
                    report.failure.get_or_insert(format!("SR3 at ({i},{j},{k})"));
                }
            }
        }
    }
    report.sr3_conventions = CONVENTIONS
        .iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(c, _)| c.to_string())
        .collect();
    if report.sr3_conventions.is_empty() {
        report.sr3 = false;
        report.failure.get_or_insert("no single SR3 convention holds throughout".into());
    }
    Ok(report)
}

/// Exhaustive Steinberg check over a finite field.
pub fn check_steinberg_field(field: &FiniteField, n: usize, budget: &Budget) -> Result<SteinbergReport> {
    let q = field.size() as u128;
    budget.check_enumeration("Steinberg scalar pairs", q * q)?;
    let pairs: Vec<_> = field
        .elements()
        .flat_map(|a| field.elements().map(move |b| (a, b)))
        .collect();
    check_steinberg_pairs(field, n, &pairs, budget)
}

/// A random rational quaternion with small numerators and denominators.
pub fn random_quaternion(rng: &mut impl Rng) -> RationalQuaternion {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let mut c = || {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=5);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    };
    RationalQuaternion::new(c(), c(), c(), c())
}

/// Steinberg check over the rational quaternions on `samples` seeded pairs.
pub fn check_steinberg_quaternions(n: usize, samples: usize, seed: u64, budget: &Budget) -> Result<SteinbergReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (0..samples)
        .map(|_| (random_quaternion(&mut rng), random_quaternion(&mut rng)))
        .collect();
    check_steinberg_pairs(&Quaternions, n, &pairs, budget)
}

/// Representative of the Dieudonné determinant, from Gaussian elimination by
/// row operations: `(−1)^swaps` times the product of the pivots.
pub fn dieudonne_det<R: DivisionRing>(ring: &R, m: &Mat<R::Elem>) -> Result<R::Elem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = ring.one();
    for c in 0..n {
        let p = (c..n).find(|&r| !ring.is_zero(&a[r][c])).ok_or(Error::Singular)?;
        if p != c {
            a.swap(p, c);
            det = ring.neg(&det);
        }
        let inv = ring.inv(&a[c][c]).ok_or(Error::Singular)?;
        for r in c + 1..n {
            if ring.is_zero(&a[r][c]) {
                continue;
            }
            let f = ring.mul(&a[r][c], &inv);
            for k in c..n {
                let t = ring.mul(&f, &a[c][k]);
                a[r][k] = ring.sub(&a[r][k], &t);
            }
        }
        det = ring.mul(&det, &a[c][c]);
    }
    Ok(det)
}

/// Two nonzero quaternions define the same class modulo the commutator
/// subgroup exactly when their norms agree.
pub fn same_quaternion_class(a: &RationalQuaternion, b: &RationalQuaternion) -> bool {
    quat_norm(a) == quat_norm(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn e12_over_gf2() {
        let f = gf(2);
        let m = transvection(&f, &[Gf(1), Gf(0), Gf(0)], &[Gf(0), Gf(1), Gf(0)]).unwrap();
        assert_eq!(m, elementary(&f, 3, 0, 1, &Gf(1)));
    }

    #[test]
    fn rejects_non_isotropic_covector() {
        let f = gf(3);
        assert!(transvection(&f, &[Gf(1), Gf(0)], &[Gf(1), Gf(0)]).is_err());
    }

    #[test]
    fn additivity_and_inverse_over_gf5() {
        let f = gf(5);
        let t = Transvection::new(&f, vec![Gf(1), Gf(2), Gf(0)], vec![Gf(3), Gf(1), Gf(4)]).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let lhs = t.scaled(&f, &a).matrix(&f).mul(&f, &t.scaled(&f, &b).matrix(&f)).unwrap();
                assert_eq!(lhs, t.scaled(&f, &f.add(&a, &b)).matrix(&f));
            }
        }
        let p = t.matrix(&f).mul(&f, &t.inverse(&f).matrix(&f)).unwrap();
        assert!(p.is_identity(&f));
    }

    #[test]
    fn commuting_criterion_on_gf3_examples() {
        let f = gf(3);
        let e = |v: [u32; 3]| v.iter().map(|&x| Gf(x)).collect::<Vec<_>>();
        let t1 = Transvection::new(&f, e([1, 0, 0]), e([0, 1, 0])).unwrap();
        let t2 = Transvection::new(&f, e([2, 0, 0]), e([0, 1, 1])).unwrap();
        assert_eq!(transvections_commute_iff(&f, &t1, &t2).unwrap(), (true, true));
        assert_eq!(transvections_commute_iff(&f, &t1, &t1).unwrap(), (true, true));
        let f2 = gf(2);
        let s1 = Transvection::new(&f2, e([1, 0, 0]), e([0, 1, 0])).unwrap();
        let s2 = Transvection::new(&f2, e([0, 1, 0]), e([0, 0, 1])).unwrap();
        assert_eq!(transvections_commute_iff(&f2, &s1, &s2).unwrap(), (false, false));
    }

    #[test]
    fn steinberg_small_fields() {
        let b = Budget::default();
        let r = check_steinberg_field(&gf(2), 3, &b).unwrap();
        assert!(r.all_pass());
        assert!(r.sr3_conventions.contains(&"ab".to_string()));
        assert!(check_steinberg_field(&gf(3), 3, &b).unwrap().all_pass());
        assert!(check_steinberg_field(&gf(2), 2, &b).is_err());
    }

    #[test]
    fn steinberg_quaternions_record_ab() {
        let r = check_steinberg_quaternions(3, 20, 7, &Budget::default()).unwrap();
        assert!(r.all_pass());
        assert!(r.noncommuting_pairs > 0);
        assert_eq!(r.sr3_conventions, vec!["ab".to_string()]);
    }

    #[test]
    fn det_of_diagonal_and_transvection() {
        let f = gf(7);
        let d = crate::matvec::diagonal(&f, &[Gf(3), Gf(1), Gf(1)]);
        assert_eq!(dieudonne_det(&f, &d).unwrap(), Gf(3));
        let m = Mat::identity(&f, 3);
        assert_eq!(dieudonne_det(&f, &m).unwrap(), Gf(1));
        let q = Quaternions;
        let x = RationalQuaternion::from_ints(1, 2, 0, 1);
        let t = elementary(&q, 3, 2, 0, &x);
        assert!(q.is_one(&dieudonne_det(&q, &t).unwrap()));
        let z = Mat::zeros(&f, 2, 2);
        assert_eq!(dieudonne_det(&f, &z), Err(Error::Singular));
    }
}
