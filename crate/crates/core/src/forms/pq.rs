use super::param::FormParameter;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{all_vectors, Mat, Subspace};
use crate::scalar::{DivisionRing, FieldAuto, FiniteField, Gf};

/// `f(u, v) = u^{sigma T} G v` over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesquilinearForm {
    field: FiniteField,
    gram: Mat<Gf>,
    sigma: FieldAuto,
}

impl SesquilinearForm {
    pub fn new(field: &FiniteField, gram: Mat<Gf>, sigma: FieldAuto) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        Ok(SesquilinearForm { field: field.clone(), gram, sigma })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn gram(&self) -> &Mat<Gf> {
        &self.gram
    }

    pub fn sigma(&self) -> FieldAuto {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[Gf], v: &[Gf]) -> Gf {
        eval_gram(&self.field, &self.gram, self.sigma, u, v)
    }

    /// `f(u,v) = 0 <=> f(v,u) = 0` on every pair of vectors.
    pub fn is_reflexive(&self, budget: &Budget) -> Result<bool> {
        let n = self.dim();
        let total = (self.field.size() as u128).saturating_pow(n as u32);
        budget.check_enumeration("reflexivity pairs", total * total)?;
        let vs: Vec<Vec<Gf>> = all_vectors(&self.field, n).collect();
        for u in &vs {
            for v in &vs {
                if self.field.is_zero(&self.eval(u, v)) != self.field.is_zero(&self.eval(v, u)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Gram matrix of `g^* f`, i.e. `(u, v) -> f(g u, g v)`.
    pub fn pullback(&self, g: &Mat<Gf>) -> Result<Self> {
        let f = &self.field;
        let gs = g.map(|x| self.sigma.apply(f, *x)).transpose();
        let gram = gs.mul(f, &self.gram)?.mul(f, g)?;
        Ok(SesquilinearForm { field: f.clone(), gram, sigma: self.sigma })
    }
}

pub(crate) fn eval_gram(field: &FiniteField, gram: &Mat<Gf>, sigma: FieldAuto, u: &[Gf], v: &[Gf]) -> Gf {
    let gv = gram.apply(field, v);
    u.iter()
        .zip(&gv)
        .fold(Gf(0), |acc, (a, b)| field.add(&acc, &field.mul(&sigma.apply(field, *a), b)))
}

/// The pair `[f] = (q_f, h_f)` attached to `f` and a form parameter.
#[derive(Debug, Clone)]
pub struct PseudoQuadraticForm {
    f: SesquilinearForm,
    param: FormParameter,
    h: Mat<Gf>,
}

impl PseudoQuadraticForm {
    pub fn new(f: SesquilinearForm, param: FormParameter) -> Result<Self> {
        if f.field() != param.field() || f.sigma() != param.sigma() {
            return Err(Error::InvalidInput("form and parameter disagree on field or sigma".into()));
        }
        param.validate()?;
        let h = hermitianize(&f, &param)?;
        Ok(PseudoQuadraticForm { f, param, h })
    }

    pub fn field(&self) -> &FiniteField {
        self.f.field()
    }

    pub fn form(&self) -> &SesquilinearForm {
        &self.f
    }

    pub fn param(&self) -> &FormParameter {
        &self.param
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn h_gram(&self) -> &Mat<Gf> {
        &self.h
    }

    pub fn h(&self, u: &[Gf], v: &[Gf]) -> Gf {
        eval_gram(self.field(), &self.h, self.param.sigma(), u, v)
    }

    /// Canonical representative of `f(v,v) + Lambda`.
    pub fn q(&self, v: &[Gf]) -> Gf {
        self.param.coset_rep(self.f.eval(v, v))
    }

    pub fn q_vanishes(&self, v: &[Gf]) -> bool {
        self.param.contains(self.f.eval(v, v))
    }

    /// Totally isotropic: `q` and `h` vanish. Checking a basis suffices, since
    /// `q(ua + vb) = a^s q(u) a + b^s q(v) b` mod `Lambda` once `h(u, v) = 0`.
    pub fn is_totally_isotropic(&self, u: &Subspace<Gf>) -> bool {
        let b = u.basis_vectors();
        b.iter().all(|x| self.q_vanishes(x))
            && b.iter().all(|x| b.iter().all(|y| self.field().is_zero(&self.h(x, y))))
    }

    pub fn radical(&self) -> Subspace<Gf> {
        Subspace::span(self.field(), &self.h.kernel(self.field()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().dim() == 0
    }

    /// Nonzero radical on which `q` has no nonzero zero.
    pub fn is_slightly_degenerate(&self) -> bool {
        let r = self.radical();
        r.dim() > 0 && radical_vectors(self.field(), &r).iter().all(|v| v.iter().all(|x| x.0 == 0) || !self.q_vanishes(v))
    }

    /// `s f` with parameter `(sigma, s s^{-sigma} eps, s Lambda)`; `h` becomes `s h`.
    pub fn scale(&self, s: Gf) -> Result<Self> {
        let field = self.field();
        if field.is_zero(&s) {
            return Err(Error::InvalidInput("cannot scale by zero".into()));
        }
        let gram = self.f.gram().scale_left(field, &s);
        let f = SesquilinearForm::new(field, gram, self.f.sigma())?;
        PseudoQuadraticForm::new(f, self.param.scaled(s)?)
    }

    /// The same form in the basis given by the columns of `g`.
    pub fn base_change(&self, g: &Mat<Gf>) -> Result<Self> {
        if g.inverse(self.field()).is_err() {
            return Err(Error::Singular);
        }
        PseudoQuadraticForm::new(self.f.pullback(g)?, self.param.clone())
    }
}

/// Gram of `h_f(u, v) = f(u, v) + f(v, u)^sigma eps`: `H = F + (F^sigma)^T eps`.
pub fn hermitianize(f: &SesquilinearForm, param: &FormParameter) -> Result<Mat<Gf>> {
    param.validate()?;
    let field = f.field();
    let g = f.gram();
    let sig = param.sigma();
    let eps = param.epsilon();
    Ok(Mat::from_fn(g.rows(), g.cols(), |i, j| {
        field.add(g.get(i, j), &field.mul(&sig.apply(field, *g.get(j, i)), &eps))
    }))
}

pub(crate) fn radical_vectors(field: &FiniteField, r: &Subspace<Gf>) -> Vec<Vec<Gf>> {
    let b = r.basis_vectors();
    all_vectors(field, b.len())
        .map(|c| {
            let mut v = vec![Gf(0); r.ambient_dim()];
            for (coef, bv) in c.iter().zip(&b) {
                for (x, y) in v.iter_mut().zip(bv) {
                    *x = field.add(x, &field.mul(y, coef));
                }
            }
            v
        })
        .collect()
}

/// The quotient by the radical, with the projection on subspaces.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub reduced: PseudoQuadraticForm,
    /// Unit-vector indices spanning the chosen complement of the radical.
    pub complement: Vec<usize>,
    radical: Subspace<Gf>,
    /// Inverse of `[complement | radical basis]`.
    coords: Mat<Gf>,
}

impl Reduction {
    pub fn radical(&self) -> &Subspace<Gf> {
        &self.radical
    }

    /// Coordinates of `v + rad` in the reduced space.
    pub fn project_vector(&self, v: &[Gf]) -> Vec<Gf> {
        let field = self.reduced.field();
        let c = self.coords.apply(field, v);
        c[..self.complement.len()].to_vec()
    }

    /// Image of a subspace in `V / rad`.
    pub fn project(&self, u: &Subspace<Gf>) -> Subspace<Gf> {
        let vs: Vec<Vec<Gf>> = u.basis_vectors().iter().map(|v| self.project_vector(v)).collect();
        Subspace::from_vectors(self.reduced.field(), self.complement.len(), &vs)
    }
}

/// Quotient of a slightly degenerate form by its radical, with
/// `Lambda' = { c : c + Lambda in q_f(rad) }`.
pub fn reduce_slightly_degenerate(pq: &PseudoQuadraticForm) -> Result<Reduction> {
    if !pq.is_slightly_degenerate() {
        return Err(Error::Degenerate("form is not slightly degenerate".into()));
    }
    let field = pq.field();
    let n = pq.dim();
    let rad = pq.radical();
    let mut complement = Vec::new();
    let mut span = rad.clone();
    for i in 0..n {
        let mut e = vec![Gf(0); n];
        e[i] = Gf(1);
        if !span.contains_vector(field, &e) {
            span = span.join(field, &Subspace::from_vectors(field, n, &[e]))?;
            complement.push(i);
        }
    }
    let mut lambda = Vec::new();
    for r in radical_vectors(field, &rad) {
        let c = pq.form().eval(&r, &r);
        for l in pq.param().lambda() {
            lambda.push(field.add(&c, l));
        }
    }
    let param = FormParameter::new(
        field,
        pq.param().sigma(),
        pq.param().epsilon(),
        super::param::LambdaSpec::Explicit(lambda),
    )?;
    let g = pq.form().gram();
    let k = complement.len();
    let gram = Mat::from_fn(k, k, |a, b| *g.get(complement[a], complement[b]));
    let reduced = PseudoQuadraticForm::new(SesquilinearForm::new(field, gram, pq.param().sigma())?, param)?;
    let mut cols: Vec<Vec<Gf>> = complement
        .iter()
        .map(|&i| {
            let mut e = vec![Gf(0); n];
            e[i] = Gf(1);
            e
        })
        .collect();
    cols.extend(rad.basis_vectors());
    let coords = Mat::from_columns(n, &cols).inverse(field)?;
    Ok(Reduction { reduced, complement, radical: rad, coords })
}
