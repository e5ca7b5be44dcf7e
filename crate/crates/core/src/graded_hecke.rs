//! The completed graded affine Hecke algebra.
//!
//! Elements are `sum_w f_w t_w` with truncated power series `f_w` on the
//! left. The commutation rule is kept denominator free:
//! `t_s phi = s(phi) t_s + 2r (phi - s(phi)) / alpha-dot`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::affine_hecke::word_label;
use crate::error::{Error, Result};
use crate::formal_series::{diff, FormalSeries, LinearForm};
use crate::root_datum::RootDatum;

/// `sum_w f_w t_w`; all coefficients share the element's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    nvars: usize,
    order: u32,
    terms: BTreeMap<usize, FormalSeries>,
}

impl GradedElement {
    pub fn zero(nvars: usize, order: u32) -> Self {
        GradedElement {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// `f t_w`
    pub fn term(f: FormalSeries, w: usize) -> Self {
        let mut out = Self::zero(f.nvars(), f.order());
        if !f.is_zero() {
            out.terms.insert(w, f);
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &FormalSeries)> {
        self.terms.iter().map(|(w, f)| (*w, f))
    }

    pub fn coeff(&self, w: usize) -> FormalSeries {
        self.terms
            .get(&w)
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(self.nvars, self.order))
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.nvars, order);
        for (&w, f) in &self.terms {
            out.accumulate(w, f.truncate(order));
        }
        out
    }

    fn accumulate(&mut self, w: usize, f: FormalSeries) {
        assert_eq!(f.nvars(), self.nvars, "series variable count mismatch");
        if f.order() < self.order {
            *self = self.truncate(f.order());
        }
        let f = f.truncate(self.order);
        let sum = match self.terms.remove(&w) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, f) in &other.terms {
            out.accumulate(w, f.clone());
        }
        if other.order < out.order {
            out = out.truncate(other.order);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|f| -f)
    }

    /// `f * self` for a series `f`.
    pub fn left_scale(&self, f: &FormalSeries) -> Self {
        let order = self.order.min(f.order());
        let mut out = Self::zero(self.nvars, order);
        for (&w, g) in &self.terms {
            out.accumulate(w, f * g);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&FormalSeries) -> FormalSeries) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (&w, g) in &self.terms {
            out.accumulate(w, f(g));
        }
        out
    }

    /// `self - other` truncated at degree `n`, or `None` if it vanishes there.
    pub fn difference_mod(&self, other: &Self, n: u32) -> Result<Option<Self>> {
        let available = self.order.min(other.order);
        if available < n {
            return Err(Error::InsufficientPrecision { needed: n, available });
        }
        let diff = self.sub(other).truncate(n);
        Ok(if diff.is_zero() { None } else { Some(diff) })
    }

    /// Specialization `r = 0` of every coefficient.
    pub fn r_zero(&self) -> Self {
        self.map_coefficients(FormalSeries::r_zero)
    }

    pub fn render(&self, d: &RootDatum) -> String {
        if self.terms.is_empty() {
            return format!("0 + O({})", self.order + 1);
        }
        self.terms
            .iter()
            .map(|(&w, f)| format!("[{f}]*t{}", word_label(d, w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element `f . 1` of the graded antispherical module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAsphElement(pub FormalSeries);

/// The graded affine Hecke algebra of a root datum, completed and truncated.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    datum: Arc<RootDatum>,
    // Negative control: t_s acts on the sign module by +1.
    sign_module_plus: bool,
}

impl GradedAlgebra {
    pub fn new(datum: Arc<RootDatum>) -> Self {
        GradedAlgebra {
            datum,
            sign_module_plus: false,
        }
    }

    pub(crate) fn with_sign_module_plus(mut self, plus: bool) -> Self {
        self.sign_module_plus = plus;
        self
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    /// Number of series variables, `rank + 1`.
    pub fn nvars(&self) -> usize {
        self.datum.rank() + 1
    }

    pub fn one(&self, order: u32) -> GradedElement {
        self.series(FormalSeries::one(self.nvars(), order))
    }

    /// `f . t_e`
    pub fn series(&self, f: FormalSeries) -> GradedElement {
        GradedElement::term(f, 0)
    }

    pub fn t_w(&self, w: usize, order: u32) -> GradedElement {
        GradedElement::term(FormalSeries::one(self.nvars(), order), w)
    }

    /// `t_{s_i}`
    pub fn t(&self, i: usize, order: u32) -> GradedElement {
        self.t_w(self.datum.simple_reflection(i), order)
    }

    /// `alpha_i-dot`
    pub fn root_form(&self, i: usize) -> LinearForm {
        diff(self.datum.simple_root(i))
    }

    /// `2r (phi - s_i phi) / alpha_i-dot`; same order as `phi`.
    pub fn demazure_term(&self, i: usize, phi: &FormalSeries) -> Result<FormalSeries> {
        let diff = phi - &phi.reflect(&self.datum, i);
        let two_r = LinearForm::r(self.nvars()).scale(&BigRational::from_integer(BigInt::from(2)));
        Ok(diff.div_linear(&self.root_form(i))?.mul_linear(&two_r))
    }

    /// `t_{s_i} * x`
    pub fn left_mul_simple(&self, i: usize, x: &GradedElement) -> Result<GradedElement> {
        let d = &*self.datum;
        let mut out = GradedElement::zero(x.nvars, x.order);
        for (&w, f) in &x.terms {
            out.accumulate(d.left_mul(i, w), f.reflect(d, i));
            out.accumulate(w, self.demazure_term(i, f)?);
        }
        Ok(out)
    }

    /// `t_w * x`
    pub fn left_mul_t(&self, w: usize, x: &GradedElement) -> Result<GradedElement> {
        let mut acc = x.clone();
        for &i in self.datum.element(w).reduced_word.iter().rev() {
            acc = self.left_mul_simple(i, &acc)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let mut out = GradedElement::zero(a.nvars, a.order.min(b.order));
        for (&w, f) in &a.terms {
            out = out.add(&self.left_mul_t(w, b)?.left_scale(f));
        }
        Ok(out)
    }

    pub fn product<'a>(
        &self,
        order: u32,
        factors: impl IntoIterator<Item = &'a GradedElement>,
    ) -> Result<GradedElement> {
        factors
            .into_iter()
            .try_fold(self.one(order), |acc, f| self.mul(&acc, f))
    }

    /// `t_w -> (-1)^{l(w)} t_w`, `phi -> phi`, `r -> -r`.
    pub fn fourier(&self, a: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(a.nvars, a.order);
        for (&w, f) in &a.terms {
            let g = f.negate_r();
            let g = if self.datum.length(w).is_multiple_of(2) { g } else { -&g };
            out.accumulate(w, g);
        }
        out
    }

    /// `e_B = prod_{alpha > 0} alpha-dot / (1 - exp(-alpha-dot))` at the given order.
    pub fn todd_eb(&self, order: u32) -> Result<FormalSeries> {
        todd_eb(&self.datum, order)
    }

    /// `e_B a e_B^-1`.
    pub fn conj_eb(&self, a: &GradedElement) -> Result<GradedElement> {
        let eb = self.todd_eb(a.order)?;
        let eb_inv = eb.inv()?;
        let right = self.mul(a, &self.series(eb_inv))?;
        Ok(right.left_scale(&eb))
    }

    /// Collapses `sum f_w t_w` through the sign module.
    pub fn collapse_sign(&self, a: &GradedElement) -> GradedAsphElement {
        let mut out = FormalSeries::zero(a.nvars, a.order);
        for (&w, f) in &a.terms {
            let odd = self.datum.length(w) % 2 == 1 && !self.sign_module_plus;
            out = if odd { &out - f } else { &out + f };
        }
        GradedAsphElement(out)
    }

    /// Left action on the graded antispherical module.
    pub fn asph_act(&self, a: &GradedElement, m: &GradedAsphElement) -> Result<GradedAsphElement> {
        Ok(self.collapse_sign(&self.mul(a, &self.series(m.0.clone()))?))
    }
}

/// `e_B = prod_{alpha > 0} alpha-dot / (1 - exp(-alpha-dot))`, each factor the
/// inverse of `(1 - exp(-alpha-dot)) / alpha-dot`.
pub fn todd_eb(d: &RootDatum, order: u32) -> Result<FormalSeries> {
    let nvars = d.rank() + 1;
    let mut out = FormalSeries::one(nvars, order);
    for root in d.positive_roots() {
        let form = diff(root);
        let numerator = &FormalSeries::one(nvars, order + 1) - &(-&form).exp(order + 1);
        let factor = numerator.div_linear(&form)?.inv()?;
        out = &out * &factor;
    }
    Ok(out)
}

/// `t_s + 1` as a graded element.
pub fn t_plus_one(g: &GradedAlgebra, i: usize, order: u32) -> GradedElement {
    g.t(i, order).add(&g.one(order))
}
