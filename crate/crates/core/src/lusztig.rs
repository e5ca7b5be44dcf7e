//! Lusztig's morphisms from the affine Hecke algebra to the completed graded
//! algebra, the two routes around the Koszul/Fourier square, and the
//! transport of antispherical modules.
//!
//! Both morphisms send `theta_x -> exp(x-dot)` and `v -> exp(r)`. On the
//! generators `T_s + 1` they multiply `t_s + 1` by the unit series
//!
//! ```text
//! u(alpha) = (exp(alpha-dot + 2r) - 1) / (alpha-dot + 2r) * alpha-dot / (exp(alpha-dot) - 1)
//! ```
//!
//! on the right (`L_r`) or on the left (`L_l`).
//!
//! All series are computed at `order + guard` and results are truncated to
//! `order` on the way out.

use std::sync::{Arc, OnceLock};

use crate::affine_hecke::{AsphElement, HeckeAlgebra, HeckeElement};
use crate::error::{Error, Result};
use crate::formal_series::{diff, FormalSeries, LinearForm};
use crate::graded_hecke::{GradedAlgebra, GradedAsphElement, GradedElement};
use crate::lattice_algebra::GroupAlgebraElement;
use crate::root_datum::{RootDatum, Weight};

/// Default number of extra working degrees.
pub const DEFAULT_GUARD: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Seeded corruptions used by the negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct LusztigFaults {
    pub twist_sign: bool,
    pub skip_conjugation: bool,
}

/// Evaluates the Lusztig morphisms at a fixed truncation order.
#[derive(Debug)]
pub struct Lusztig {
    hecke: HeckeAlgebra,
    graded: GradedAlgebra,
    order: u32,
    guard: u32,
    faults: LusztigFaults,
    twists: OnceLock<Result<Vec<FormalSeries>>>,
    right_images: OnceLock<Result<Vec<GradedElement>>>,
    left_images: OnceLock<Result<Vec<GradedElement>>>,
    todd: OnceLock<Result<(FormalSeries, FormalSeries)>>,
}

/// `(exp(l) - 1) / l` for a nonzero linear form, at `order - 1`.
pub fn exp_quotient(l: &LinearForm, order: u32) -> Result<FormalSeries> {
    let nvars = l.nvars();
    (&l.exp(order) - &FormalSeries::one(nvars, order)).div_linear(l)
}

impl Lusztig {
    pub fn new(datum: Arc<RootDatum>, order: u32, guard: u32) -> Self {
        Lusztig {
            hecke: HeckeAlgebra::new(datum.clone()),
            graded: GradedAlgebra::new(datum),
            order,
            guard,
            faults: LusztigFaults::default(),
            twists: OnceLock::new(),
            right_images: OnceLock::new(),
            left_images: OnceLock::new(),
            todd: OnceLock::new(),
        }
    }

    pub(crate) fn with_faults(mut self, faults: LusztigFaults) -> Self {
        self.faults = faults;
        self
    }

    pub(crate) fn with_graded(mut self, graded: GradedAlgebra) -> Self {
        self.graded = graded;
        self
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn graded(&self) -> &GradedAlgebra {
        &self.graded
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    fn datum(&self) -> &RootDatum {
        self.hecke.datum()
    }

    fn working_order(&self) -> u32 {
        self.order + self.guard
    }

    fn nvars(&self) -> usize {
        self.graded.nvars()
    }

    /// `exp(x-dot + k r)` at working order.
    fn exp_term(&self, x: &Weight, k: i32) -> FormalSeries {
        diff(x).plus_r(i64::from(k)).exp(self.working_order())
    }

    /// Image of `sum c_{x,k} v^k theta_x` under `theta_x -> exp(x-dot)`, `v -> exp(r)`.
    pub fn coefficient_image(&self, a: &GroupAlgebraElement) -> FormalSeries {
        let mut out = FormalSeries::zero(self.nvars(), self.working_order());
        for (x, c) in a.terms() {
            for (k, n) in c.terms() {
                let term = self.exp_term(x, k).scale(&num_rational::BigRational::from_integer(n.clone()));
                out = &out + &term;
            }
        }
        out
    }

    fn compute_twist(&self, i: usize) -> Result<FormalSeries> {
        let order = self.working_order();
        let alpha = diff(self.datum().simple_root(i));
        let shift = if self.faults.twist_sign { -2 } else { 2 };
        let numerator = exp_quotient(&alpha.plus_r(shift), order)?;
        let denominator = exp_quotient(&alpha, order)?.inv()?;
        Ok(&numerator * &denominator)
    }

    /// `g(alpha_i)^-1 G~(alpha_i)` in closed form.
    pub fn twist(&self, i: usize) -> Result<FormalSeries> {
        let twists = self.twists.get_or_init(|| {
            (0..self.datum().rank()).map(|i| self.compute_twist(i)).collect()
        });
        match twists {
            Ok(t) => Ok(t[i].clone()),
            Err(e) => Err(e.clone()),
        }
    }

    /// Image of `T_{s_i}`: `(t_s + 1) u - 1` or `u (t_s + 1) - 1`.
    fn simple_image(&self, side: Side, i: usize) -> Result<GradedElement> {
        let g = &self.graded;
        let u = self.twist(i)?;
        let order = u.order();
        let t_plus_one = g.t(i, order).add(&g.one(order));
        let image = match side {
            Side::Right => g.mul(&t_plus_one, &g.series(u))?,
            Side::Left => t_plus_one.left_scale(&u),
        };
        Ok(image.sub(&g.one(order)))
    }

    fn t_images(&self, side: Side) -> Result<&Vec<GradedElement>> {
        let cell = match side {
            Side::Right => &self.right_images,
            Side::Left => &self.left_images,
        };
        let images = cell.get_or_init(|| {
            let d = self.datum();
            let simple: Vec<GradedElement> = (0..d.rank())
                .map(|i| self.simple_image(side, i))
                .collect::<Result<_>>()?;
            let order = simple
                .iter()
                .map(GradedElement::order)
                .min()
                .unwrap_or(self.working_order());
            // BFS order guarantees the tail of each reduced word comes first.
            let mut images: Vec<GradedElement> = Vec::with_capacity(d.weyl_order());
            images.push(self.graded.one(order));
            for w in 1..d.weyl_order() {
                let word = &d.element(w).reduced_word;
                let tail = d.left_mul(word[0], w);
                let image = self.graded.mul(&simple[word[0]], &images[tail])?;
                images.push(image);
            }
            Ok(images)
        });
        images.as_ref().map_err(Clone::clone)
    }

    fn apply(&self, side: Side, h: &HeckeElement) -> Result<GradedElement> {
        let images = self.t_images(side)?;
        let order = images[0].order();
        let mut out = GradedElement::zero(self.nvars(), order);
        for (w, c) in h.terms() {
            let coeff = self.coefficient_image(c);
            out = out.add(&images[w].left_scale(&coeff));
        }
        Ok(out)
    }

    fn finish(&self, a: GradedElement) -> Result<GradedElement> {
        if a.order() < self.order {
            return Err(Error::InsufficientPrecision {
                needed: self.order,
                available: a.order(),
            });
        }
        Ok(a.truncate(self.order))
    }

    /// `L_r(h)`, truncated to the target order.
    pub fn lusztig_r(&self, h: &HeckeElement) -> Result<GradedElement> {
        self.finish(self.apply(Side::Right, h)?)
    }

    /// `L_l(h)`, truncated to the target order.
    pub fn lusztig_l(&self, h: &HeckeElement) -> Result<GradedElement> {
        self.finish(self.apply(Side::Left, h)?)
    }

    /// `L_r` and `L_l` on `T_{s_i}` at working precision.
    pub fn simple_images(&self, side: Side) -> Result<Vec<GradedElement>> {
        let d = self.datum();
        let images = self.t_images(side)?;
        Ok((0..d.rank()).map(|i| images[d.simple_reflection(i)].clone()).collect())
    }

    /// `L` evaluated at working precision, without the final truncation.
    pub fn apply_untruncated(&self, side: Side, h: &HeckeElement) -> Result<GradedElement> {
        self.apply(side, h)
    }

    fn todd_pair(&self) -> Result<(FormalSeries, FormalSeries)> {
        self.todd
            .get_or_init(|| {
                let eb = self.graded.todd_eb(self.working_order())?;
                let inv = eb.inv()?;
                Ok((eb, inv))
            })
            .clone()
    }

    /// `e_B a e_B^-1` at working precision.
    fn conjugate(&self, a: &GradedElement) -> Result<GradedElement> {
        let (eb, inv) = self.todd_pair()?;
        let right = self.graded.mul(a, &self.graded.series(inv))?;
        Ok(right.left_scale(&eb))
    }

    /// Right-then-down route: `e_B L_r(i D Koszul(h)) e_B^-1`.
    pub fn pipeline_k(&self, h: &HeckeElement) -> Result<GradedElement> {
        let top = self.hecke.koszul_duality_parity(h);
        let image = self.apply(Side::Right, &top)?;
        let image = if self.faults.skip_conjugation {
            image
        } else {
            self.conjugate(&image)?
        };
        self.finish(image)
    }

    /// Down-then-right route: `Fourier(L_l(h))`.
    pub fn pipeline_h(&self, h: &HeckeElement) -> Result<GradedElement> {
        let image = self.apply(Side::Left, h)?;
        self.finish(self.graded.fourier(&image))
    }

    /// `theta_x . 1 -> exp(x-dot) . 1`, `v -> exp(r)`, at working precision.
    pub fn transport(&self, m: &AsphElement) -> GradedAsphElement {
        GradedAsphElement(self.coefficient_image(&m.0))
    }

    /// `((exp(x-dot) - exp(s x-dot)) G~(alpha_i)) . 1`, with
    /// `G~ = (exp(alpha-dot + 2r) - 1) / (exp(alpha-dot) - 1)` evaluated by
    /// dividing the exponential difference by `alpha-dot` first.
    pub fn scriptg_tilde_action(&self, x: &Weight, i: usize) -> Result<GradedAsphElement> {
        let order = self.working_order();
        let d = self.datum();
        let alpha = diff(d.simple_root(i));
        let numerator = &diff(x).exp(order) - &diff(&d.reflect(i, x)).exp(order);
        let quotient = numerator.div_linear(&alpha)?;
        let scaled = quotient.mul_linear(&alpha.plus_r(2));
        let unit = &exp_quotient(&alpha.plus_r(2), order)? * &exp_quotient(&alpha, order)?.inv()?;
        Ok(GradedAsphElement(&scaled * &unit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_algebra::LaurentScalar;
    use crate::root_datum::CartanType;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn lusztig(ty: CartanType, order: u32) -> Lusztig {
        Lusztig::new(Arc::new(RootDatum::from_type(ty).unwrap()), order, DEFAULT_GUARD)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn generators_of_the_commutative_part() {
        let l = lusztig(CartanType::A(1), 4);
        let h = l.hecke();
        let er = LinearForm::r(2).exp(4);
        assert_eq!(l.lusztig_r(&h.v_pow(1)).unwrap(), l.graded().series(er.clone()));
        assert_eq!(l.lusztig_l(&h.v_pow(1)).unwrap(), l.graded().series(er));
        let x = Weight::new(vec![3]);
        let ex = diff(&x).exp(4);
        assert_eq!(l.lusztig_r(&h.theta(x.clone())).unwrap(), l.graded().series(ex.clone()));
        assert_eq!(l.lusztig_l(&h.theta(x)).unwrap(), l.graded().series(ex));
    }

    #[test]
    fn twist_to_first_order() {
        // u = 1 + r + O(2)
        let l = lusztig(CartanType::A(1), 1);
        let u = l.twist(0).unwrap().truncate(1);
        let expected = FormalSeries::from_terms(2, 1, [(vec![0, 0], q(1, 1)), (vec![0, 1], q(1, 1))]);
        assert_eq!(u, expected);
        let h = l.hecke();
        let got = l.lusztig_r(&(&h.t(0) + &h.one())).unwrap();
        let g = l.graded();
        let expected = g.mul(&g.t(0, 1).add(&g.one(1)), &g.series(expected)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn left_and_right_differ_by_a_commutator() {
        let l = lusztig(CartanType::A(1), 4);
        let h = l.hecke();
        let g = l.graded();
        let tp1 = &h.t(0) + &h.one();
        let diff = l.lusztig_l(&tp1).unwrap().sub(&l.lusztig_r(&tp1).unwrap());
        let u = g.series(l.twist(0).unwrap());
        let t1 = g.t(0, 6).add(&g.one(6));
        let commutator = g.mul(&u, &t1).unwrap().sub(&g.mul(&t1, &u).unwrap());
        assert_eq!(diff.difference_mod(&commutator, 4).unwrap(), None);
        assert!(!diff.is_zero());
    }

    #[test]
    fn pipelines_on_scalars() {
        let l = lusztig(CartanType::A(1), 5);
        let h = l.hecke();
        let g = l.graded();
        let e_minus_r = g.series(LinearForm::r(2).scale(&q(-1, 1)).exp(5));
        assert_eq!(l.pipeline_k(&h.v_pow(1)).unwrap(), e_minus_r);
        assert_eq!(l.pipeline_h(&h.v_pow(1)).unwrap(), e_minus_r);
        let x = Weight::new(vec![-2]);
        let ex = g.series(diff(&x).exp(5));
        assert_eq!(l.pipeline_k(&h.theta(x.clone())).unwrap(), ex);
        assert_eq!(l.pipeline_h(&h.theta(x)).unwrap(), ex);
        assert_eq!(l.pipeline_k(&h.one()).unwrap(), g.one(5));
        assert_eq!(l.pipeline_h(&h.one()).unwrap(), g.one(5));
    }

    #[test]
    fn transport_examples() {
        let l = lusztig(CartanType::A(1), 4);
        let m = AsphElement(
            &GroupAlgebraElement::term(LaurentScalar::v_pow(2), Weight::new(vec![1]))
                - &GroupAlgebraElement::theta(Weight::new(vec![-1])),
        );
        let got = l.transport(&m).0.truncate(4);
        let expected = &LinearForm::y(2, 0).plus_r(2).exp(4) - &LinearForm::y(2, 0).scale(&q(-1, 1)).exp(4);
        assert_eq!(got, expected);
        let one = AsphElement(GroupAlgebraElement::one(1));
        assert_eq!(l.transport(&one).0.truncate(4), FormalSeries::one(2, 4));
    }

    #[test]
    fn rank_one_diagram_on_t() {
        let l = lusztig(CartanType::A(1), 6);
        let h = l.hecke();
        let k = l.pipeline_k(&h.t(0)).unwrap();
        let f = l.pipeline_h(&h.t(0)).unwrap();
        assert_eq!(k.difference_mod(&f, 6).unwrap(), None);
    }
}
