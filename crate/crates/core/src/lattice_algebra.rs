//! Exact arithmetic in `Z[v, v^-1][X]`, the commutative subalgebra of the
//! affine Hecke algebra spanned by the `theta_x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::root_datum::{RootDatum, Weight};

/// A Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, BigInt>,
}

/// Image of `v` under a substitution: `sign * v^exponent` with both `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VImage {
    pub sign: i8,
    pub exponent: i8,
}

impl VImage {
    pub const IDENTITY: VImage = VImage { sign: 1, exponent: 1 };
    /// `v -> -v`
    pub const NEGATE: VImage = VImage { sign: -1, exponent: 1 };
    /// `v -> v^-1`
    pub const INVERT: VImage = VImage { sign: 1, exponent: -1 };
    /// `v -> -v^-1`
    pub const NEGATE_INVERT: VImage = VImage { sign: -1, exponent: -1 };
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^k`
    pub fn monomial(c: impl Into<BigInt>, k: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentScalar { terms }
    }

    /// `v^k`
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `(exponent, coefficient)` pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    fn accumulate(&mut self, k: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// The ring endomorphism `v -> sign * v^exponent`.
    pub fn substitute(&self, image: VImage) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            let c = if image.sign < 0 && k % 2 != 0 { -c } else { c.clone() };
            out.accumulate(k * i32::from(image.exponent), c);
        }
        out
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => write!(f, "v^{k}")?,
                _ => write!(f, "{abs}*v^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.accumulate(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.accumulate(k, -c);
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (&a, c) in &self.terms {
            for (&b, d) in &rhs.terms {
                out.accumulate(a + b, c * d);
            }
        }
        out
    }
}

/// An element `sum_x c_x theta_x` of `Z[v, v^-1][X]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Weight, LaurentScalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `theta_0`, the unit.
    pub fn one(rank: usize) -> Self {
        Self::theta(Weight::zero(rank))
    }

    pub fn theta(x: Weight) -> Self {
        Self::term(LaurentScalar::one(), x)
    }

    /// `c * theta_x`
    pub fn term(c: LaurentScalar, x: Weight) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(x, c);
        }
        GroupAlgebraElement { terms }
    }

    /// `c * theta_0`
    pub fn scalar(c: LaurentScalar, rank: usize) -> Self {
        Self::term(c, Weight::zero(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &Weight) -> LaurentScalar {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, x: Weight, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(entry) => {
                *entry = &*entry + &c;
                if entry.is_zero() {
                    self.terms.remove(&x);
                }
            }
            None => {
                self.terms.insert(x, c);
            }
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            out.accumulate(x.clone(), a * c);
        }
        out
    }

    /// `theta_x * self`
    pub fn shift(&self, x: &Weight) -> Self {
        GroupAlgebraElement {
            terms: self.terms.iter().map(|(y, c)| (y + x, c.clone())).collect(),
        }
    }

    /// Applies a linear map to every weight in the support.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.accumulate(f(x), c.clone());
        }
        out
    }

    /// `theta_x -> theta_{s_i x}`
    pub fn reflect(&self, d: &RootDatum, i: usize) -> Self {
        self.map_weights(|x| d.reflect(i, x))
    }

    /// The ring endomorphism given by a substitution of `v` and, optionally,
    /// `theta_x -> theta_{-x}`.
    pub fn substitute(&self, image: VImage, negate_weights: bool) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            let y = if negate_weights { -x } else { x.clone() };
            out.accumulate(y, c.substitute(image));
        }
        out
    }

    /// Linear extension of [`demazure_quotient`].
    pub fn demazure(&self, d: &RootDatum, i: usize) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out = &out + &demazure_quotient(d, x, i).scale(c);
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (x, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*th{x}")?;
        }
        Ok(())
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.accumulate(x.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (x, c) in &rhs.terms {
            out.accumulate(x.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            terms: self.terms.iter().map(|(x, c)| (x.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        ga_mul(self, rhs)
    }
}

/// Convolution product: `theta_x theta_y = theta_{x+y}`.
pub fn ga_mul(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero();
    for (x, c) in &a.terms {
        for (y, d) in &b.terms {
            out.accumulate(x + y, c * d);
        }
    }
    out
}

/// `(theta_x - theta_{s_i x}) / (1 - theta_{-alpha_i})` as a telescoping sum.
pub fn demazure_quotient(d: &RootDatum, x: &Weight, i: usize) -> GroupAlgebraElement {
    let m = x.pairing(i);
    let alpha = d.simple_root(i);
    let mut out = GroupAlgebraElement::zero();
    if m > 0 {
        for k in 0..m {
            out.accumulate(x - &alpha.scale(k), LaurentScalar::one());
        }
    } else if m < 0 {
        for k in 1..=-m {
            out.accumulate(x + &alpha.scale(k), LaurentScalar::monomial(-1, 0));
        }
    }
    out
}

/// `(theta_x - theta_{s_i x}) * G(alpha_i)` with
/// `G(alpha) = (v^2 theta_alpha - 1) / (theta_alpha - 1)`, computed as
/// `(v^2 theta_alpha - 1) theta_{-alpha} * demazure_quotient(x, i)`.
pub fn mul_by_scriptg(d: &RootDatum, x: &Weight, i: usize) -> GroupAlgebraElement {
    let alpha = d.simple_root(i);
    let q = demazure_quotient(d, x, i);
    // (v^2 theta_alpha - 1) theta_{-alpha} = v^2 - theta_{-alpha}
    let factor = &GroupAlgebraElement::scalar(LaurentScalar::v_pow(2), d.rank())
        - &GroupAlgebraElement::theta(-alpha);
    ga_mul(&factor, &q)
}
