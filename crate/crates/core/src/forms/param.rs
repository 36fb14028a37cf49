use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{DivisionRing, FieldAuto, FiniteField, Gf};

/// How `Lambda` was specified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LambdaSpec {
    Zero,
    /// `D_{sigma,-eps} = { c - c^sigma eps }`.
    Trace,
    /// `D^{sigma,-eps} = { c : c^sigma eps = -c }`.
    FixedSet,
    Full,
    Explicit(Vec<Gf>),
}

/// `(sigma, eps, Lambda)` over a finite field, with `Lambda` kept explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormParameter {
    field: FiniteField,
    sigma: FieldAuto,
    epsilon: Gf,
    lambda: Vec<Gf>,
    member: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormCase {
    Symplectic,
    Orthogonal,
    DefectiveOrthogonal,
    ClassicalUnitary,
    RestrictedUnitary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub case: FormCase,
    /// Code of the scalar `s` used to normalize; `1` if none was needed.
    pub scaled_by: u32,
    pub epsilon: u32,
    pub lambda: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParameterCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParameterReport {
    pub checks: Vec<ParameterCheck>,
}

impl ParameterReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.passed)
    }
}

/// `D_{sigma,-eps} = { c - c^sigma eps : c in D }`.
pub fn trace_group(field: &FiniteField, sigma: FieldAuto, eps: Gf) -> Vec<Gf> {
    let mut v: Vec<Gf> = field
        .elements()
        .map(|c| field.sub(&c, &field.mul(&sigma.apply(field, c), &eps)))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `D^{sigma,-eps} = { c : c^sigma eps = -c }`.
pub fn fixed_group(field: &FiniteField, sigma: FieldAuto, eps: Gf) -> Vec<Gf> {
    field
        .elements()
        .filter(|&c| field.mul(&sigma.apply(field, c), &eps) == field.neg(&c))
        .collect()
}

impl FormParameter {
    pub fn new(field: &FiniteField, sigma: FieldAuto, epsilon: Gf, lambda: LambdaSpec) -> Result<Self> {
        if epsilon.0 >= field.size() || field.is_zero(&epsilon) {
            return Err(Error::InvalidInput("epsilon must be a nonzero field element".into()));
        }
        if sigma.exponent() >= field.degree() {
            return Err(Error::InvalidInput(format!(
                "automorphism exponent {} out of range for GF({})",
                sigma.exponent(),
                field.size()
            )));
        }
        let set = match lambda {
            LambdaSpec::Zero => vec![Gf(0)],
            LambdaSpec::Full => field.elements().collect(),
            LambdaSpec::Trace => trace_group(field, sigma, epsilon),
            LambdaSpec::FixedSet => fixed_group(field, sigma, epsilon),
            LambdaSpec::Explicit(v) => v,
        };
        Self::from_set(field, sigma, epsilon, set)
    }

    fn from_set(field: &FiniteField, sigma: FieldAuto, epsilon: Gf, mut set: Vec<Gf>) -> Result<Self> {
        set.sort_unstable();
        set.dedup();
        let q = field.size() as usize;
        if set.iter().any(|x| x.0 as usize >= q) {
            return Err(Error::InvalidInput("Lambda element out of range".into()));
        }
        let mut member = vec![false; q];
        for x in &set {
            member[x.0 as usize] = true;
        }
        let closed = member[0]
            && set.iter().all(|a| set.iter().all(|b| member[field.sub(a, b).0 as usize]));
        if !closed {
            return Err(Error::InvalidInput("Lambda is not an additive subgroup".into()));
        }
        Ok(FormParameter { field: field.clone(), sigma, epsilon, lambda: set, member })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn sigma(&self) -> FieldAuto {
        self.sigma
    }

    pub fn epsilon(&self) -> Gf {
        self.epsilon
    }

    pub fn lambda(&self) -> &[Gf] {
        &self.lambda
    }

    pub fn contains(&self, c: Gf) -> bool {
        self.member[c.0 as usize]
    }

    /// Minimal code in `c + Lambda`.
    pub fn coset_rep(&self, c: Gf) -> Gf {
        self.lambda.iter().map(|l| self.field.add(&c, l)).min().unwrap()
    }

    pub fn is_zero_mod(&self, c: Gf) -> bool {
        self.contains(c)
    }

    /// `eps^sigma eps = 1` and `sigma^2 = id`.
    pub fn validate(&self) -> Result<()> {
        let f = &self.field;
        if !f.is_one(&f.mul(&self.sigma.apply(f, self.epsilon), &self.epsilon)) {
            return Err(Error::InvalidInput("epsilon^sigma * epsilon != 1".into()));
        }
        if !self.sigma.compose(&self.sigma, f).is_identity(f) {
            return Err(Error::InvalidInput("sigma^2 is not the identity".into()));
        }
        Ok(())
    }

    /// `sigma` unchanged on a field, `eps' = s s^{-sigma} eps`, `Lambda' = s Lambda`.
    pub fn scaled(&self, s: Gf) -> Result<Self> {
        let f = &self.field;
        let s_inv = f.inv(&s).ok_or_else(|| Error::InvalidInput("cannot scale by zero".into()))?;
        let eps = f.mul(&f.mul(&s, &self.sigma.apply(f, s_inv)), &self.epsilon);
        let lam = self.lambda.iter().map(|l| f.mul(&s, l)).collect();
        Self::from_set(f, self.sigma, eps, lam)
    }

    pub fn check(&self) -> ParameterReport {
        let f = &self.field;
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(ParameterCheck { name: name.into(), passed, detail })
        };
        let eps_ok = f.is_one(&f.mul(&self.sigma.apply(f, self.epsilon), &self.epsilon));
        push("epsilon_unit", eps_ok, format!("epsilon = {}", self.epsilon.0));
        let sig2 = self.sigma.compose(&self.sigma, f).is_identity(f);
        push("sigma_involution", sig2, format!("sigma exponent {}", self.sigma.exponent()));
        let lower = trace_group(f, self.sigma, self.epsilon);
        let lower_ok = lower.iter().all(|c| self.contains(*c));
        push("trace_group_contained", lower_ok, format!("D_(sigma,-eps) = {:?}", codes(&lower)));
        let upper = fixed_group(f, self.sigma, self.epsilon);
        let upper_ok = self.lambda.iter().all(|c| upper.contains(c));
        push("contained_in_fixed_set", upper_ok, format!("D^(sigma,-eps) = {:?}", codes(&upper)));
        let sandwich = f.elements().all(|s| {
            let ss = self.sigma.apply(f, s);
            self.lambda.iter().all(|l| self.contains(f.mul(&f.mul(&ss, l), &s)))
        });
        push("sigma_sandwich_closed", sandwich, "s^sigma Lambda s in Lambda for all s".into());
        let zero_implication =
            self.lambda.len() > 1 || (f.is_one(&self.epsilon) && self.sigma.is_identity(f));
        push("zero_lambda_implication", zero_implication, "Lambda = 0 => eps = 1, sigma = id".into());
        if f.characteristic() == 2 && self.sigma.is_identity(f) {
            let sq_ok = f.elements().all(|d| {
                let d2 = f.mul(&d, &d);
                self.lambda.iter().all(|l| self.contains(f.mul(&d2, l)))
            });
            push("square_submodule", sq_ok, "D^2 Lambda in Lambda".into());
        }
        ParameterReport { checks }
    }

    fn case_of(&self) -> std::result::Result<FormCase, String> {
        let f = &self.field;
        let q = f.size() as usize;
        let one = f.one();
        let minus_one = f.neg(&one);
        if self.sigma.is_identity(f) {
            if self.epsilon == minus_one && self.lambda.len() == q {
                return Ok(FormCase::Symplectic);
            }
            if self.epsilon == one && self.lambda.len() == 1 {
                return Ok(FormCase::Orthogonal);
            }
            if self.epsilon == one && self.lambda.len() < q {
                return Ok(FormCase::DefectiveOrthogonal);
            }
            return Err(format!("sigma = id with epsilon {} and |Lambda| = {}", self.epsilon.0, self.lambda.len()));
        }
        if !self.sigma.compose(&self.sigma, f).is_identity(f) {
            return Err("sigma^2 != id".into());
        }
        if self.epsilon != one {
            return Err("unitary case needs epsilon = 1".into());
        }
        let fixed = fixed_group(f, self.sigma, one);
        if self.lambda == fixed {
            Ok(FormCase::ClassicalUnitary)
        } else if self.lambda.iter().all(|c| fixed.contains(c)) {
            Ok(FormCase::RestrictedUnitary)
        } else {
            Err("Lambda is not inside D^(sigma,-1)".into())
        }
    }

    /// The case of the parameter after normalizing by scaling.
    pub fn classify(&self) -> Result<Classification> {
        let f = &self.field;
        let mut reasons = Vec::new();
        for s in f.nonzero_elements() {
            let p = self.scaled(s)?;
            match p.case_of() {
                Ok(case) => {
                    if matches!(case, FormCase::DefectiveOrthogonal | FormCase::RestrictedUnitary) {
                        return Err(Error::Mismatch(format!(
                            "{case:?} does not occur over the finite field GF({})",
                            f.size()
                        )));
                    }
                    return Ok(Classification {
                        case,
                        scaled_by: s.0,
                        epsilon: p.epsilon.0,
                        lambda: codes(&p.lambda),
                    });
                }
                Err(r) => reasons.push(r),
            }
        }
        Err(Error::Mismatch(format!("no case matches: {}", reasons.first().cloned().unwrap_or_default())))
    }
}

pub(crate) fn codes(v: &[Gf]) -> Vec<u32> {
    v.iter().map(|x| x.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn case_table() {
        let f5 = gf(5);
        let p = FormParameter::new(&f5, FieldAuto::identity(), Gf(4), LambdaSpec::Full).unwrap();
        assert_eq!(p.classify().unwrap().case, FormCase::Symplectic);
        let f3 = gf(3);
        let p = FormParameter::new(&f3, FieldAuto::identity(), Gf(1), LambdaSpec::Zero).unwrap();
        assert_eq!(p.classify().unwrap().case, FormCase::Orthogonal);
        let f4 = gf(4);
        let p = FormParameter::new(&f4, FieldAuto::frobenius(), Gf(1), LambdaSpec::FixedSet).unwrap();
        assert_eq!(p.lambda(), &[Gf(0), Gf(1)]);
        assert_eq!(p.classify().unwrap().case, FormCase::ClassicalUnitary);
    }

    #[test]
    fn unitary_trace_and_fixed_agree_over_gf4() {
        let f4 = gf(4);
        let sig = FieldAuto::frobenius();
        let minus = f4.neg(&Gf(1));
        assert_eq!(trace_group(&f4, sig, Gf(1)), fixed_group(&f4, sig, minus));
        assert_eq!(fixed_group(&f4, sig, Gf(1)), vec![Gf(0), Gf(1)]);
    }

    #[test]
    fn valid_parameters_over_gf2() {
        let f2 = gf(2);
        for lam in [LambdaSpec::Zero, LambdaSpec::Full] {
            let p = FormParameter::new(&f2, FieldAuto::identity(), Gf(1), lam).unwrap();
            assert!(p.check().all_pass());
        }
    }

    #[test]
    fn zero_lambda_needs_trivial_eps() {
        let f5 = gf(5);
        let p = FormParameter::new(&f5, FieldAuto::identity(), Gf(4), LambdaSpec::Zero).unwrap();
        let r = p.check();
        assert!(!r.passed("zero_lambda_implication"));
        assert!(!r.passed("trace_group_contained"));
    }

    #[test]
    fn scaling_rule() {
        let f9 = gf(9);
        let sig = FieldAuto::frobenius();
        let p = FormParameter::new(&f9, sig, Gf(1), LambdaSpec::FixedSet).unwrap();
        for s in f9.nonzero_elements() {
            let sp = p.scaled(s).unwrap();
            let e = sp.epsilon();
            assert!(f9.is_one(&f9.mul(&sig.apply(&f9, e), &e)));
            assert!(sp.check().all_pass());
            if sig.apply(&f9, s) == s {
                assert_eq!(e, Gf(1));
            }
            if f9.is_one(&f9.mul(&s, &sig.apply(&f9, s))) {
                assert_eq!(e, f9.mul(&s, &s));
            }
        }
        assert!(p.scaled(Gf(0)).is_err());
    }

    #[test]
    fn rejects_non_subgroup() {
        let f3 = gf(3);
        let r = FormParameter::new(&f3, FieldAuto::identity(), Gf(1), LambdaSpec::Explicit(vec![Gf(0), Gf(1)]));
        assert!(r.is_err());
    }
}
