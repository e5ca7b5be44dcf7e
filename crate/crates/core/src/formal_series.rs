//! Truncated multivariate power series over the rationals.
//!
//! Variables are `y_1, ..., y_n` (the differentials of the fundamental
//! weights) followed by `r`. A series of order `N` carries every coefficient
//! of total degree `<= N`; higher coefficients are unknown, not zero.
//!
//! Precision rules: sums and products take the minimum order of their
//! inputs, division by a linear form loses one degree, multiplication by a
//! linear form gains one, and `exp`, `inv` and substitutions keep the order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, Weight};

/// Exponent vector, ordered graded-lexicographically with `y_1 < ... < y_n < r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn without(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Monomial::new(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Poly = BTreeMap<Monomial, BigRational>;

fn poly_add_term(p: &mut Poly, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&m) {
        Some(entry) => {
            *entry += c;
            if entry.is_zero() {
                p.remove(&m);
            }
        }
        None => {
            p.insert(m, c);
        }
    }
}

/// Product truncated at total degree `max_degree`. Relies on the graded order
/// of the keys to stop early.
fn poly_mul(a: &Poly, b: &Poly, max_degree: u32) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        if ma.degree > max_degree {
            break;
        }
        let room = max_degree - ma.degree;
        for (mb, cb) in b {
            if mb.degree > room {
                break;
            }
            poly_add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A linear form `sum_i c_i y_i + c_r r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        LinearForm {
            coeffs: vec![BigRational::zero(); nvars],
        }
    }

    /// The variable `r` (last slot).
    pub fn r(nvars: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[nvars - 1] = BigRational::one();
        f
    }

    /// The variable `y_i`.
    pub fn y(nvars: usize, i: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[i] = BigRational::one();
        f
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + k r`
    pub fn plus_r(&self, k: i64) -> Self {
        self + &Self::r(self.nvars()).scale(&rat(k))
    }

    pub fn to_series(&self, order: u32) -> FormalSeries {
        let n = self.nvars();
        let mut coeffs = Poly::new();
        if order >= 1 {
            for (i, c) in self.coeffs.iter().enumerate() {
                poly_add_term(&mut coeffs, Monomial::var(n, i), c.clone());
            }
        }
        FormalSeries {
            nvars: n,
            order,
            coeffs,
        }
    }

    /// `exp(self)` from the closed form `prod_i c_i^{e_i} / e_i!`.
    pub fn exp(&self, order: u32) -> FormalSeries {
        let n = self.nvars();
        // powers[i][k] = c_i^k / k!
        let powers: Vec<Vec<BigRational>> = self
            .coeffs
            .iter()
            .map(|c| {
                let mut row = vec![BigRational::one()];
                for k in 1..=order {
                    let next = &row[k as usize - 1] * c / rat(i64::from(k));
                    row.push(next);
                }
                row
            })
            .collect();
        let mut coeffs = Poly::new();
        for_each_exponent(n, order, &mut |exps| {
            let c = exps
                .iter()
                .enumerate()
                .fold(BigRational::one(), |acc, (i, &e)| acc * &powers[i][e as usize]);
            poly_add_term(&mut coeffs, Monomial::new(exps.to_vec()), c);
        });
        FormalSeries {
            nvars: n,
            order,
            coeffs,
        }
    }

    fn render(&self) -> String {
        let s = self.to_series(1);
        let text = s.to_string();
        text.trim_end_matches(" + O(2)").to_string()
    }
}

fn for_each_exponent(n: usize, max_degree: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(slot: usize, left: u32, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if slot == exps.len() {
            f(exps);
            return;
        }
        for e in 0..=left {
            exps[slot] = e;
            rec(slot + 1, left - e, exps, f);
        }
        exps[slot] = 0;
    }
    let mut exps = vec![0; n];
    rec(0, max_degree, &mut exps, f);
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.nvars(), rhs.nvars());
        LinearForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.nvars(), rhs.nvars());
        LinearForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The differential `x-dot` of a weight: `sum_i x_i y_i`.
pub fn diff(x: &Weight) -> LinearForm {
    let mut coeffs: Vec<BigRational> = x.coords().iter().map(|&c| rat(c)).collect();
    coeffs.push(BigRational::zero());
    LinearForm { coeffs }
}

/// A truncated power series in `y_1..y_n, r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    nvars: usize,
    order: u32,
    coeffs: Poly,
}

impl FormalSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        FormalSeries {
            nvars,
            order,
            coeffs: Poly::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: BigRational) -> Self {
        let mut coeffs = Poly::new();
        poly_add_term(&mut coeffs, Monomial::unit(nvars), c);
        FormalSeries {
            nvars,
            order,
            coeffs,
        }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, BigRational::one())
    }

    /// `c * m`, dropped if `m` exceeds the order.
    pub fn monomial(nvars: usize, order: u32, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let m = Monomial::new(exps);
        let mut coeffs = Poly::new();
        if m.degree <= order {
            poly_add_term(&mut coeffs, m, c);
        }
        FormalSeries {
            nvars,
            order,
            coeffs,
        }
    }

    pub fn from_terms(
        nvars: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut out = Self::zero(nvars, order);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars);
            let m = Monomial::new(exps);
            if m.degree <= order {
                poly_add_term(&mut out.coeffs, m, c);
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.coeffs
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Lowers the order to `order` (never raises it).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        FormalSeries {
            nvars: self.nvars,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "series variable count mismatch");
    }

    /// Product with an exact linear form; gains one degree of precision.
    pub fn mul_linear(&self, l: &LinearForm) -> Self {
        assert_eq!(l.nvars(), self.nvars);
        let order = self.order + 1;
        let mut coeffs = Poly::new();
        for (m, c) in &self.coeffs {
            for (i, a) in l.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    poly_add_term(&mut coeffs, m.mul(&Monomial::var(self.nvars, i)), c * a);
                }
            }
        }
        FormalSeries {
            nvars: self.nvars,
            order,
            coeffs,
        }
    }

    /// `exp(self)`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut sum = Self::one(self.nvars, self.order);
        let mut power = Self::one(self.nvars, self.order);
        for k in 1..=self.order {
            power = (&power * self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv_c0 = c0.recip();
        let parts = self.homogeneous_parts();
        let mut g: Vec<Poly> = Vec::with_capacity(self.order as usize + 1);
        let mut g0 = Poly::new();
        poly_add_term(&mut g0, Monomial::unit(self.nvars), inv_c0.clone());
        g.push(g0);
        for d in 1..=self.order {
            let mut acc = Poly::new();
            for j in 1..=d {
                let prod = poly_mul(&parts[j as usize], &g[(d - j) as usize], d);
                for (m, c) in prod {
                    poly_add_term(&mut acc, m, c);
                }
            }
            let gd: Poly = acc.into_iter().map(|(m, c)| (m, -(c * &inv_c0))).collect();
            g.push(gd);
        }
        let mut coeffs = Poly::new();
        for part in g {
            coeffs.extend(part);
        }
        Ok(FormalSeries {
            nvars: self.nvars,
            order: self.order,
            coeffs,
        })
    }

    fn homogeneous_parts(&self) -> Vec<Poly> {
        let mut parts = vec![Poly::new(); self.order as usize + 1];
        for (m, c) in &self.coeffs {
            parts[m.degree as usize].insert(m.clone(), c.clone());
        }
        parts
    }

    /// Exact quotient by a nonzero linear form; the result has order one less.
    pub fn div_linear(&self, l: &LinearForm) -> Result<Self> {
        assert_eq!(l.nvars(), self.nvars);
        assert!(!l.is_zero(), "division by the zero linear form");
        if self.order == 0 {
            return Err(Error::InsufficientPrecision {
                needed: 1,
                available: 0,
            });
        }
        // Pivot on the last variable appearing in the form.
        let pivot = (0..self.nvars).rev().find(|&i| !l.coeffs[i].is_zero()).unwrap();
        let pivot_inv = l.coeffs[pivot].recip();
        let mut quotient = Poly::new();
        for (d, part) in self.homogeneous_parts().into_iter().enumerate() {
            if part.is_empty() || d == 0 {
                if !part.is_empty() {
                    return Err(Error::NotDivisible {
                        form: l.to_string(),
                        degree: 0,
                    });
                }
                continue;
            }
            let mut rem = part;
            // Each step cancels a term with pivot exponent k and only adds
            // terms with pivot exponent k - 1.
            for k in (1..=d as u32).rev() {
                let keys: Vec<Monomial> = rem.keys().filter(|m| m.exps[pivot] == k).cloned().collect();
                for m in keys {
                    let Some(c) = rem.get(&m).cloned() else { continue };
                    let q = c * &pivot_inv;
                    let base = m.without(pivot);
                    for (i, a) in l.coeffs.iter().enumerate() {
                        if !a.is_zero() {
                            poly_add_term(&mut rem, base.mul(&Monomial::var(self.nvars, i)), -(&q * a));
                        }
                    }
                    poly_add_term(&mut quotient, base, q);
                }
            }
            if !rem.is_empty() {
                return Err(Error::NotDivisible {
                    form: l.to_string(),
                    degree: d as u32,
                });
            }
        }
        Ok(FormalSeries {
            nvars: self.nvars,
            order: self.order - 1,
            coeffs: quotient,
        })
    }

    /// The algebra map `y_i -> images[i]`, `r -> r`.
    pub fn substitute(&self, images: &[LinearForm]) -> Self {
        let n = self.nvars;
        assert_eq!(images.len() + 1, n);
        let max = self.order;
        // powers[i][k] = images[i]^k, truncated
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(n - 1);
        for img in images {
            let base = img.to_series(1).coeffs;
            let mut row = vec![{
                let mut p = Poly::new();
                p.insert(Monomial::unit(n), BigRational::one());
                p
            }];
            for k in 1..=max as usize {
                let next = poly_mul(&row[k - 1], &base, max);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Poly::new();
        for (m, c) in &self.coeffs {
            let mut r_exps = vec![0; n];
            r_exps[n - 1] = m.exps[n - 1];
            let mut acc = Poly::new();
            acc.insert(Monomial::new(r_exps), c.clone());
            for (i, row) in powers.iter().enumerate() {
                let e = m.exps[i] as usize;
                if e > 0 {
                    acc = poly_mul(&acc, &row[e], max);
                }
            }
            for (mm, cc) in acc {
                poly_add_term(&mut out, mm, cc);
            }
        }
        FormalSeries {
            nvars: n,
            order: self.order,
            coeffs: out,
        }
    }

    /// Action of the Weyl element `w`: `y_i -> (w varpi_i)-dot`, `r -> r`.
    pub fn weyl(&self, d: &RootDatum, w: usize) -> Self {
        let rank = d.rank();
        assert_eq!(rank + 1, self.nvars);
        let el = d.element(w);
        if el.is_identity() {
            return self.clone();
        }
        let images: Vec<LinearForm> = (0..rank)
            .map(|i| diff(&el.apply(&Weight::fundamental(rank, i))))
            .collect();
        self.substitute(&images)
    }

    /// Action of the simple reflection `s_i`.
    pub fn reflect(&self, d: &RootDatum, i: usize) -> Self {
        self.weyl(d, d.simple_reflection(i))
    }

    /// `r -> -r`
    pub fn negate_r(&self) -> Self {
        let last = self.nvars - 1;
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), if m.exps[last] % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Specialization `r = 0`.
    pub fn r_zero(&self) -> Self {
        let last = self.nvars - 1;
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.exps[last] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self - other` truncated at degree `n`, or `None` if it vanishes there.
    pub fn difference_mod(&self, other: &Self, n: u32) -> Result<Option<Self>> {
        let available = self.order.min(other.order);
        if available < n {
            return Err(Error::InsufficientPrecision { needed: n, available });
        }
        let diff = (self - other).truncate(n);
        Ok(if diff.is_zero() { None } else { Some(diff) })
    }

    pub fn agrees_mod(&self, other: &Self, n: u32) -> Result<bool> {
        Ok(self.difference_mod(other, n)?.is_none())
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    if i + 1 == nvars {
        "r".into()
    } else {
        format!("y{}", i + 1)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.coeffs {
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_name(self.nvars, i)
                    } else {
                        format!("{}^{e}", var_name(self.nvars, i))
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        self.check_compatible(rhs);
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (m, c) in &rhs.coeffs {
            if m.degree <= order {
                poly_add_term(&mut out.coeffs, m.clone(), c.clone());
            }
        }
        out
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        self.check_compatible(rhs);
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (m, c) in &rhs.coeffs {
            if m.degree <= order {
                poly_add_term(&mut out.coeffs, m.clone(), -c);
            }
        }
        out
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        self.check_compatible(rhs);
        let order = self.order.min(rhs.order);
        FormalSeries {
            nvars: self.nvars,
            order,
            coeffs: poly_mul(&self.coeffs, &rhs.coeffs, order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::CartanType;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn series(nvars: usize, order: u32, terms: &[(&[u32], i64, i64)]) -> FormalSeries {
        FormalSeries::from_terms(
            nvars,
            order,
            terms.iter().map(|(e, n, d)| (e.to_vec(), q(*n, *d))),
        )
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![0, 1]);
        let c = Monomial::new(vec![1, 1]);
        let d = Monomial::new(vec![0, 2]);
        assert!(b < a);
        assert!(a < c && c < d);
    }

    #[test]
    fn diff_examples() {
        let d = RootDatum::from_type(CartanType::A(1)).unwrap();
        assert_eq!(diff(&Weight::new(vec![1])), LinearForm::y(2, 0));
        assert_eq!(diff(d.simple_root(0)), LinearForm::y(2, 0).scale(&q(2, 1)));
        let x = Weight::new(vec![1, -2]);
        let y = Weight::new(vec![3, 5]);
        assert_eq!(diff(&(&x + &y)), &diff(&x) + &diff(&y));
    }

    #[test]
    fn exp_of_r() {
        let r = LinearForm::r(2).to_series(3);
        let expected = series(2, 3, &[(&[0, 0], 1, 1), (&[0, 1], 1, 1), (&[0, 2], 1, 2), (&[0, 3], 1, 6)]);
        assert_eq!(r.exp().unwrap(), expected);
        assert_eq!(LinearForm::r(2).exp(3), expected);
        assert_eq!(FormalSeries::zero(2, 4).exp().unwrap(), FormalSeries::one(2, 4));
        assert_eq!(FormalSeries::one(2, 4).exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(FormalSeries::one(2, 5).inv().unwrap(), FormalSeries::one(2, 5));
        let f = series(2, 3, &[(&[0, 0], 1, 1), (&[1, 0], -1, 1)]);
        let expected = series(2, 3, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1), (&[2, 0], 1, 1), (&[3, 0], 1, 1)]);
        assert_eq!(f.inv().unwrap(), expected);
        assert_eq!(FormalSeries::zero(2, 3).inv(), Err(Error::NonUnit));
    }

    #[test]
    fn division_examples() {
        // (exp(r) - 1) / r
        let r = LinearForm::r(2);
        let num = &r.exp(4) - &FormalSeries::one(2, 4);
        let got = num.div_linear(&r).unwrap();
        assert_eq!(got.order(), 3);
        assert_eq!(
            got.truncate(2),
            series(2, 2, &[(&[0, 0], 1, 1), (&[0, 1], 1, 2), (&[0, 2], 1, 6)])
        );
        assert!(FormalSeries::zero(2, 3).div_linear(&r).unwrap().is_zero());
        // (exp(2y) - 1) / 2y = 1 + y + (2/3) y^2
        let alpha = LinearForm::y(2, 0).scale(&q(2, 1));
        let num = &alpha.exp(3) - &FormalSeries::one(2, 3);
        assert_eq!(
            num.div_linear(&alpha).unwrap(),
            series(2, 2, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1), (&[2, 0], 2, 3)])
        );
    }

    #[test]
    fn division_detects_remainders() {
        let y = LinearForm::y(3, 0);
        let f = series(3, 3, &[(&[0, 1, 0], 1, 1)]);
        assert!(matches!(f.div_linear(&y), Err(Error::NotDivisible { degree: 1, .. })));
        let f = FormalSeries::one(3, 3);
        assert!(matches!(f.div_linear(&y), Err(Error::NotDivisible { degree: 0, .. })));
        // multi-term divisor: (y1 - y2)(y1 + r) / (y1 - y2)
        let l = &LinearForm::y(3, 0) - &LinearForm::y(3, 1);
        let m = &LinearForm::y(3, 0) + &LinearForm::r(3);
        let f = m.to_series(4).mul_linear(&l);
        assert_eq!(f.div_linear(&l).unwrap(), m.to_series(4));
    }

    #[test]
    fn weyl_action_examples() {
        let a1 = RootDatum::from_type(CartanType::A(1)).unwrap();
        let y = LinearForm::y(2, 0).to_series(3);
        assert_eq!(y.reflect(&a1, 0), -&y);
        assert_eq!(y.weyl(&a1, 0), y);
        let a2 = RootDatum::from_type(CartanType::A(2)).unwrap();
        let y2 = LinearForm::y(3, 1).to_series(3);
        assert_eq!(y2.reflect(&a2, 0), y2);
        // s_1(y_1) = y_1 - alpha_1-dot = -y_1 + y_2
        let y1 = LinearForm::y(3, 0).to_series(3);
        assert_eq!(y1.reflect(&a2, 0), (&LinearForm::y(3, 1) - &LinearForm::y(3, 0)).to_series(3));
        let r = LinearForm::r(3).to_series(3);
        assert_eq!(r.reflect(&a2, 1), r);
    }

    #[test]
    fn negate_r_examples() {
        let r = LinearForm::r(2).to_series(3);
        assert_eq!(r.negate_r(), -&r);
        let y = LinearForm::y(2, 0).to_series(3);
        assert_eq!(y.negate_r(), y);
        let f = LinearForm::r(2).plus_r(2).exp(5);
        assert_eq!(f.negate_r().negate_r(), f);
    }

    #[test]
    fn precision_bookkeeping() {
        let a = LinearForm::y(2, 0).exp(5);
        let b = LinearForm::r(2).exp(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!(a.mul_linear(&LinearForm::r(2)).order(), 6);
        assert_eq!(a.inv().unwrap().order(), 5);
        let l = LinearForm::y(2, 0);
        assert_eq!((&a - &FormalSeries::one(2, 5)).div_linear(&l).unwrap().order(), 4);
        assert_eq!(
            a.difference_mod(&b, 4),
            Err(Error::InsufficientPrecision { needed: 4, available: 3 })
        );
    }

    #[test]
    fn display() {
        let f = series(2, 2, &[(&[0, 0], 1, 1), (&[1, 0], -1, 1), (&[0, 2], 1, 3)]);
        assert_eq!(f.to_string(), "1 - y1 + 1/3*r^2 + O(3)");
    }
}
