//! The affine Hecke algebra in Bernstein normal form.
//!
//! Elements are stored as `sum_w a_w T_w` with `a_w` in `Z[v, v^-1][X]`
//! written on the left. Products are computed by rewriting with
//!
//! * `T_s theta_x = theta_{sx} T_s + (v^2 - 1) (theta_x - theta_{sx}) / (1 - theta_{-alpha})`
//! * `T_s T_w = T_{sw}` if `l(sw) > l(w)`, else `(v^2 - 1) T_w + v^2 T_{sw}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::lattice_algebra::{GroupAlgebraElement, LaurentScalar, VImage};
use crate::root_datum::{RootDatum, Weight};

/// `sum_w a_w T_w`, keyed by Weyl element index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<usize, GroupAlgebraElement>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `a T_w`
    pub fn term(a: GroupAlgebraElement, w: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(w, a);
        }
        HeckeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &GroupAlgebraElement)> {
        self.terms.iter().map(|(w, a)| (*w, a))
    }

    pub fn coeff(&self, w: usize) -> GroupAlgebraElement {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    fn accumulate(&mut self, w: usize, a: GroupAlgebraElement) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(entry) => {
                *entry = &*entry + &a;
                if entry.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, a);
            }
        }
    }

    /// `c * self` for `c` in the commutative subalgebra.
    pub fn left_scale(&self, c: &GroupAlgebraElement) -> Self {
        let mut out = Self::zero();
        for (&w, a) in &self.terms {
            out.accumulate(w, c * a);
        }
        out
    }

    /// Applies a map to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&GroupAlgebraElement) -> GroupAlgebraElement) -> Self {
        let mut out = Self::zero();
        for (&w, a) in &self.terms {
            out.accumulate(w, f(a));
        }
        out
    }

    /// Renders with Weyl elements spelled as reduced words.
    pub fn render(&self, d: &RootDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(&w, a)| format!("[{a}]*T{}", word_label(d, w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn word_label(d: &RootDatum, w: usize) -> String {
    let word = &d.element(w).reduced_word;
    if word.is_empty() {
        "[e]".into()
    } else {
        let letters: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
        format!("[{}]", letters.join(","))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, a)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{a}]*T#{w}")?;
        }
        Ok(())
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (&w, a) in &rhs.terms {
            out.accumulate(w, a.clone());
        }
        out
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (&w, a) in &rhs.terms {
            out.accumulate(w, -a);
        }
        out
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        self.map_coefficients(|a| -a)
    }
}

/// An element `m . 1` of the left antispherical module, in the basis `theta_x . 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsphElement(pub GroupAlgebraElement);

impl fmt::Display for AsphElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}].1", self.0)
    }
}

/// The affine Hecke algebra attached to a root datum.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    datum: Arc<RootDatum>,
    // Negative control: flips the sign of the Bernstein correction term.
    bernstein_sign_flip: bool,
}

impl HeckeAlgebra {
    pub fn new(datum: Arc<RootDatum>) -> Self {
        HeckeAlgebra {
            datum,
            bernstein_sign_flip: false,
        }
    }

    pub(crate) fn with_bernstein_sign_flip(mut self, flip: bool) -> Self {
        self.bernstein_sign_flip = flip;
        self
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn scalar(&self, c: LaurentScalar) -> HeckeElement {
        HeckeElement::term(GroupAlgebraElement::scalar(c, self.rank()), 0)
    }

    pub fn one(&self) -> HeckeElement {
        self.scalar(LaurentScalar::one())
    }

    /// `v^k . 1`
    pub fn v_pow(&self, k: i32) -> HeckeElement {
        self.scalar(LaurentScalar::v_pow(k))
    }

    pub fn theta(&self, x: Weight) -> HeckeElement {
        HeckeElement::term(GroupAlgebraElement::theta(x), 0)
    }

    pub fn coefficient(&self, a: GroupAlgebraElement) -> HeckeElement {
        HeckeElement::term(a, 0)
    }

    /// `T_w`
    pub fn t_w(&self, w: usize) -> HeckeElement {
        HeckeElement::term(GroupAlgebraElement::one(self.rank()), w)
    }

    /// `T_{s_i}`
    pub fn t(&self, i: usize) -> HeckeElement {
        self.t_w(self.datum.simple_reflection(i))
    }

    fn v2_minus_one(&self) -> GroupAlgebraElement {
        let c = &LaurentScalar::v_pow(2) - &LaurentScalar::one();
        let c = if self.bernstein_sign_flip { -&c } else { c };
        GroupAlgebraElement::scalar(c, self.rank())
    }

    /// `T_{s_i} * x`
    pub fn left_mul_simple(&self, i: usize, x: &HeckeElement) -> HeckeElement {
        let d = &*self.datum;
        let q = self.v2_minus_one();
        let quad = GroupAlgebraElement::scalar(
            &LaurentScalar::v_pow(2) - &LaurentScalar::one(),
            self.rank(),
        );
        let v2 = GroupAlgebraElement::scalar(LaurentScalar::v_pow(2), self.rank());
        let mut out = HeckeElement::zero();
        for (&w, a) in &x.terms {
            // T_s a = s(a) T_s + (v^2 - 1) demazure(a)
            out.accumulate(w, &q * &a.demazure(d, i));
            let sa = a.reflect(d, i);
            let sw = d.left_mul(i, w);
            if d.length(sw) > d.length(w) {
                out.accumulate(sw, sa);
            } else {
                out.accumulate(w, &quad * &sa);
                out.accumulate(sw, &v2 * &sa);
            }
        }
        out
    }

    /// `T_w * x`
    pub fn left_mul_t(&self, w: usize, x: &HeckeElement) -> HeckeElement {
        self.datum
            .element(w)
            .reduced_word
            .iter()
            .rev()
            .fold(x.clone(), |acc, &i| self.left_mul_simple(i, &acc))
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&w, c) in &a.terms {
            out = &out + &self.left_mul_t(w, b).left_scale(c);
        }
        out
    }

    /// Product of a sequence of factors, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a HeckeElement>) -> HeckeElement {
        factors
            .into_iter()
            .fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `T_{s_i}^{-1} = v^-2 T_{s_i} + (v^-2 - 1)`.
    pub fn ts_inverse(&self, i: usize) -> HeckeElement {
        let t = self.t(i).map_coefficients(|a| a.scale(&LaurentScalar::v_pow(-2)));
        &t + &self.scalar(&LaurentScalar::v_pow(-2) - &LaurentScalar::one())
    }

    /// Evaluates the ring morphism determined by a coefficient map and the
    /// images of the `T_{s_i}`, along reduced words.
    pub fn apply_morphism(
        &self,
        a: &HeckeElement,
        coefficients: impl Fn(&GroupAlgebraElement) -> GroupAlgebraElement,
        simple_images: &[HeckeElement],
    ) -> HeckeElement {
        let mut cache: HashMap<usize, HeckeElement> = HashMap::new();
        let mut out = HeckeElement::zero();
        for (&w, c) in &a.terms {
            let image = cache
                .entry(w)
                .or_insert_with(|| {
                    let word = &self.datum.element(w).reduced_word;
                    self.product(word.iter().map(|&i| &simple_images[i]))
                })
                .clone();
            out = &out + &self.mul(&self.coefficient(coefficients(c)), &image);
        }
        out
    }

    /// Image of `T_{s_i}` under the Koszul map: `theta_rho (-v^2 T_s^-1) theta_{-rho}`.
    pub fn koszul_simple(&self, i: usize) -> HeckeElement {
        let rho = self.datum.rho().clone();
        let mid = self
            .ts_inverse(i)
            .map_coefficients(|a| a.scale(&LaurentScalar::monomial(-1, 2)));
        self.product([&self.theta(rho.clone()), &mid, &self.theta(-rho)])
    }

    /// `T_s -> theta_rho (-v^2 T_s^-1) theta_{-rho}`, `theta_x -> theta_{-x}`, `v -> -v`.
    pub fn koszul(&self, a: &HeckeElement) -> HeckeElement {
        let images: Vec<HeckeElement> = (0..self.rank()).map(|i| self.koszul_simple(i)).collect();
        self.apply_morphism(a, |c| c.substitute(VImage::NEGATE, true), &images)
    }

    /// `T_s -> T_s^-1`, `theta_x -> theta_{-x}`, `v -> v^-1`.
    pub fn duality(&self, a: &HeckeElement) -> HeckeElement {
        let images: Vec<HeckeElement> = (0..self.rank()).map(|i| self.ts_inverse(i)).collect();
        self.apply_morphism(a, |c| c.substitute(VImage::INVERT, true), &images)
    }

    /// `v -> -v`, fixing `T_s` and `theta_x`.
    pub fn parity(&self, a: &HeckeElement) -> HeckeElement {
        a.map_coefficients(|c| c.substitute(VImage::NEGATE, false))
    }

    /// The top row of the diagram, `i . D . Koszul`.
    pub fn koszul_duality_parity(&self, a: &HeckeElement) -> HeckeElement {
        self.parity(&self.duality(&self.koszul(a)))
    }

    /// The anti-involution fixing every `T_s` and `theta_x`.
    pub fn anti_involution(&self, a: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&w, c) in &a.terms {
            // (c T_w)^op = T_{w^-1} c
            let tw = self.t_w(self.datum.inverse(w));
            out = &out + &self.mul(&tw, &self.coefficient(c.clone()));
        }
        out
    }

    /// Lifts `m . 1` to the element `m T_e`.
    pub fn lift(&self, m: &AsphElement) -> HeckeElement {
        self.coefficient(m.0.clone())
    }

    /// Collapses `sum a_w T_w` through the sign module, `T_w -> (-1)^{l(w)}`.
    pub fn collapse_sign(&self, a: &HeckeElement) -> AsphElement {
        let mut out = GroupAlgebraElement::zero();
        for (&w, c) in &a.terms {
            out = if self.datum.length(w).is_multiple_of(2) { &out + c } else { &out - c };
        }
        AsphElement(out)
    }

    /// Left action on the antispherical module.
    pub fn asph_act_left(&self, a: &HeckeElement, m: &AsphElement) -> AsphElement {
        self.collapse_sign(&self.mul(a, &self.lift(m)))
    }

    /// Right action `1 . m` times `a`, realized through the anti-involution.
    pub fn asph_act_right(&self, m: &AsphElement, a: &HeckeElement) -> AsphElement {
        self.asph_act_left(&self.anti_involution(a), m)
    }
}
