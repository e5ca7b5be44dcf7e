//! Named check suites over a root datum.
//!
//! Every check draws its random cases from a ChaCha stream keyed by the seed
//! and the check, so a report depends only on `(datum, order, guard, seed)`
//! apart from its timing. Sampling distribution:
//!
//! * weights: coordinates uniform in `-3..=3`
//! * powers of `v`: uniform in `-2..=2`, integer coefficients in `-3..=3`
//! * series coefficients: rationals `p/q` with `|p| <= 8`, `1 <= q <= 8`
//!
//! A failing check records the first failing case and the rendered
//! difference of the two sides as its witness.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine_hecke::{AsphElement, HeckeAlgebra, HeckeElement};
use crate::error::Error;
use crate::fault::Fault;
use crate::formal_series::{diff, FormalSeries, LinearForm};
use crate::graded_hecke::{todd_eb, GradedAlgebra, GradedAsphElement, GradedElement};
use crate::lattice_algebra::{demazure_quotient, mul_by_scriptg, GroupAlgebraElement, LaurentScalar};
use crate::lusztig::{Lusztig, LusztigFaults, Side, DEFAULT_GUARD};
use crate::root_datum::{DatumDescriptor, RootDatum, Weight};

/// Version stamped into serialized reports.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub datum: DatumDescriptor,
    pub order: u32,
    pub guard: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The report with its timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        CheckReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Truncation order, guard degrees and seed shared by the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub order: u32,
    pub guard: u32,
    pub seed: u64,
    fault: Option<Fault>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::new(6)
    }
}

impl CheckConfig {
    pub fn new(order: u32) -> Self {
        CheckConfig {
            order,
            guard: DEFAULT_GUARD,
            seed: 0,
            fault: None,
        }
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    #[cfg(feature = "fault-injection")]
    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    fn has(&self, fault: Fault) -> bool {
        self.fault == Some(fault)
    }
}

/// The five check suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Presentation,
    Morphisms,
    Diagram,
    Display,
    Modules,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Presentation,
        Suite::Morphisms,
        Suite::Diagram,
        Suite::Display,
        Suite::Modules,
    ];

    /// Name of the check the suite produces.
    pub fn check_name(self) -> &'static str {
        match self {
            Suite::Presentation => "check_presentation",
            Suite::Morphisms => "check_morphisms",
            Suite::Diagram => "check_diagram",
            Suite::Display => "check_display_identity",
            Suite::Modules => "check_modules",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Suite::Presentation => 1,
            Suite::Morphisms => 2,
            Suite::Diagram => 3,
            Suite::Display => 4,
            Suite::Modules => 5,
        }
    }

    pub fn run(self, d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
        match self {
            Suite::Presentation => check_presentation(d, cfg),
            Suite::Morphisms => check_morphisms(d, cfg),
            Suite::Diagram => check_diagram(d, cfg),
            Suite::Display => check_display(d, cfg),
            Suite::Modules => check_modules(d, cfg),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "presentation" => Ok(Suite::Presentation),
            "morphisms" => Ok(Suite::Morphisms),
            "diagram" => Ok(Suite::Diagram),
            "display" => Ok(Suite::Display),
            "modules" => Ok(Suite::Modules),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

enum Failure {
    Mismatch(String),
    Carrier(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Carrier(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

type HeckeMap<'a> = &'a dyn Fn(&HeckeElement) -> HeckeElement;

/// Random cases for the checks.
struct Sampler {
    rng: ChaCha8Rng,
    datum: Arc<RootDatum>,
}

impl Sampler {
    fn new(datum: Arc<RootDatum>, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, datum }
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    fn weight(&mut self) -> Weight {
        Weight::new((0..self.rank()).map(|_| self.rng.gen_range(-3..=3)).collect())
    }

    fn simple(&mut self) -> usize {
        self.rng.gen_range(0..self.rank())
    }

    fn weyl(&mut self) -> usize {
        self.rng.gen_range(0..self.datum.weyl_order())
    }

    fn nonzero_int(&mut self) -> i64 {
        let n = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            -n
        } else {
            n
        }
    }

    fn laurent(&mut self) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for _ in 0..self.rng.gen_range(1..=2) {
            let k = self.rng.gen_range(-2..=2);
            out = &out + &LaurentScalar::monomial(self.nonzero_int(), k);
        }
        out
    }

    /// `c v^k theta_x` with a unit coefficient, for module elements.
    fn monomial(&mut self) -> GroupAlgebraElement {
        let k = self.rng.gen_range(-2..=2);
        let c = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        GroupAlgebraElement::term(LaurentScalar::monomial(c, k), self.weight())
    }

    fn group_element(&mut self, terms: usize) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero();
        for _ in 0..terms {
            let c = self.laurent();
            out = &out + &GroupAlgebraElement::term(c, self.weight());
        }
        out
    }

    fn hecke_element(&mut self, terms: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for _ in 0..terms {
            let w = self.weyl();
            out = &out + &HeckeElement::term(self.group_element(1), w);
        }
        out
    }

    fn rational(&mut self) -> BigRational {
        let p = self.rng.gen_range(1..=8);
        let p = if self.rng.gen_bool(0.5) { -p } else { p };
        BigRational::new(BigInt::from(p), BigInt::from(self.rng.gen_range(1..=8)))
    }

    /// A polynomial in `r, y_1, .., y_n` with `terms` monomials of degree at
    /// most `max_degree`.
    fn polynomial(&mut self, order: u32, terms: usize, max_degree: u32) -> FormalSeries {
        let nvars = self.rank() + 1;
        let mut out = FormalSeries::zero(nvars, order);
        for _ in 0..terms {
            let degree = self.rng.gen_range(0..=max_degree.min(order));
            let mut exps = vec![0u32; nvars];
            for _ in 0..degree {
                exps[self.rng.gen_range(0..nvars)] += 1;
            }
            let c = self.rational();
            out = &out + &FormalSeries::monomial(nvars, order, exps, c);
        }
        out
    }

    fn graded_element(&mut self, order: u32, terms: usize) -> GradedElement {
        let nvars = self.rank() + 1;
        let mut out = GradedElement::zero(nvars, order);
        for _ in 0..terms {
            let w = self.weyl();
            out = out.add(&GradedElement::term(self.polynomial(order, 2, 2), w));
        }
        out
    }
}

/// Algebras and maps for one check, with any seeded fault applied.
struct Context {
    datum: Arc<RootDatum>,
    hecke: HeckeAlgebra,
    graded: GradedAlgebra,
    lusztig: Lusztig,
    order: u32,
    working: u32,
    rho_sign: i64,
}

impl Context {
    fn new(d: &Arc<RootDatum>, cfg: &CheckConfig) -> Self {
        let hecke = HeckeAlgebra::new(d.clone()).with_bernstein_sign_flip(cfg.has(Fault::BernsteinSign));
        let graded = GradedAlgebra::new(d.clone()).with_sign_module_plus(cfg.has(Fault::SignModulePlus));
        let lusztig = Lusztig::new(d.clone(), cfg.order, cfg.guard)
            .with_faults(LusztigFaults {
                twist_sign: cfg.has(Fault::LusztigTwist),
                skip_conjugation: cfg.has(Fault::SkipToddConjugation),
            })
            .with_graded(graded.clone());
        Context {
            datum: d.clone(),
            hecke,
            graded,
            lusztig,
            order: cfg.order,
            working: cfg.order + cfg.guard,
            rho_sign: if cfg.has(Fault::RhoSign) { -1 } else { 1 },
        }
    }

    fn nvars(&self) -> usize {
        self.datum.rank() + 1
    }

    fn hecke_eq(&self, case: &str, lhs: &HeckeElement, rhs: &HeckeElement) -> Outcome {
        if lhs == rhs {
            return Ok(());
        }
        Err(Failure::Mismatch(format!(
            "{case}: lhs - rhs = {}",
            (lhs - rhs).render(&self.datum)
        )))
    }

    fn graded_eq(&self, case: &str, lhs: &GradedElement, rhs: &GradedElement) -> Outcome {
        match lhs.difference_mod(rhs, self.order)? {
            None => Ok(()),
            Some(diff) => Err(Failure::Mismatch(format!(
                "{case}: lhs - rhs = {}",
                diff.render(&self.datum)
            ))),
        }
    }

    fn series_eq(&self, case: &str, lhs: &FormalSeries, rhs: &FormalSeries) -> Outcome {
        match lhs.difference_mod(rhs, self.order)? {
            None => Ok(()),
            Some(diff) => Err(Failure::Mismatch(format!("{case}: lhs - rhs = {diff}"))),
        }
    }

    fn asph_eq(&self, case: &str, lhs: &AsphElement, rhs: &AsphElement) -> Outcome {
        if lhs == rhs {
            return Ok(());
        }
        Err(Failure::Mismatch(format!("{case}: lhs - rhs = [{}].1", &lhs.0 - &rhs.0)))
    }

    fn t_label(&self, i: usize) -> String {
        format!("T[{}]", i + 1)
    }

    /// `v`, `theta_{+-w_i}` and `T_{s_i}`.
    fn generators(&self) -> Vec<(String, HeckeElement)> {
        let rank = self.datum.rank();
        let h = &self.hecke;
        let mut out = vec![("v".to_string(), h.v_pow(1))];
        for i in 0..rank {
            let w = Weight::fundamental(rank, i);
            out.push((format!("theta{w}"), h.theta(w.clone())));
            out.push((format!("theta{}", -&w), h.theta(-&w)));
        }
        for i in 0..rank {
            out.push((self.t_label(i), h.t(i)));
        }
        out
    }

    /// Alternating products `s t s ..` and `t s t ..` of length `m_{ij}`.
    fn braid_words(&self, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        let m = self.datum.braid_order(i, j);
        let left = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
        let right = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
        (left, right)
    }
}

fn run_check(
    suite: Suite,
    d: &Arc<RootDatum>,
    cfg: &CheckConfig,
    body: impl FnOnce(&Context, &mut Sampler) -> Outcome,
) -> CheckReport {
    let start = Instant::now();
    let ctx = Context::new(d, cfg);
    let mut sampler = Sampler::new(d.clone(), cfg.seed, suite.stream());
    let (status, witness) = match body(&ctx, &mut sampler) {
        Ok(()) => (Status::Pass, None),
        Err(Failure::Mismatch(w)) => (Status::Fail, Some(w)),
        Err(Failure::Carrier(e)) => (Status::Error, Some(e.to_string())),
    };
    CheckReport {
        name: suite.check_name().to_string(),
        status,
        datum: d.descriptor(),
        order: cfg.order,
        guard: cfg.guard,
        seed: cfg.seed,
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

const BERNSTEIN_CASES: usize = 100;
const GRADED_CASES: usize = 100;
const MORPHISM_CASES: usize = 50;
const PRODUCT_CASES: usize = 20;
const MODULE_CASES: usize = 20;
const ACTION_CASES: usize = 100;
const ASSOCIATIVITY_CASES: usize = 10;
const GRADED_LAW_CASES: usize = 30;
const MODULE_LAW_CASES: usize = 50;

/// Defining relations of both algebras, exactly on the affine side and
/// modulo degree `> order` on the graded side.
pub fn check_presentation(d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
    run_check(Suite::Presentation, d, cfg, |ctx, s| {
        let h = &ctx.hecke;
        let rank = d.rank();
        let v2 = h.v_pow(2);
        for i in 0..rank {
            let t = h.t(i);
            let lhs = h.mul(&(&t + &h.one()), &(&t - &v2));
            ctx.hecke_eq(&format!("quadratic relation, {}", ctx.t_label(i)), &lhs, &HeckeElement::zero())?;
        }
        for i in 0..rank {
            for j in i + 1..rank {
                let (a, b) = ctx.braid_words(i, j);
                let lhs = h.product(a.iter().map(|&k| h.t(k)).collect::<Vec<_>>().iter());
                let rhs = h.product(b.iter().map(|&k| h.t(k)).collect::<Vec<_>>().iter());
                ctx.hecke_eq(&format!("braid relation, s={} t={}", i + 1, j + 1), &lhs, &rhs)?;
            }
        }
        let quad = &LaurentScalar::v_pow(2) - &LaurentScalar::one();
        for _ in 0..BERNSTEIN_CASES {
            let x = s.weight();
            let i = s.simple();
            let sx = d.reflect(i, &x);
            let t = h.t(i);
            let case = format!("x={x} s={}", i + 1);
            // (1 - theta_{-alpha}) (T_s theta_x - theta_{sx} T_s) = (v^2 - 1)(theta_x - theta_{sx})
            let comm = &h.mul(&t, &h.theta(x.clone())) - &h.mul(&h.theta(sx.clone()), &t);
            let factor = &GroupAlgebraElement::one(rank) - &GroupAlgebraElement::theta(-d.simple_root(i));
            let lhs = h.mul(&h.coefficient(factor), &comm);
            let diff = &GroupAlgebraElement::theta(x.clone()) - &GroupAlgebraElement::theta(sx.clone());
            let rhs = h.coefficient(diff.scale(&quad));
            ctx.hecke_eq(&format!("Bernstein relation, {case}"), &lhs, &rhs)?;

            let tp = &t + &h.one();
            let lhs = &h.mul(&tp, &h.theta(x.clone())) - &h.mul(&h.theta(sx), &tp);
            let rhs = h.coefficient(mul_by_scriptg(d, &x, i));
            ctx.hecke_eq(&format!("commutation with T_s + 1, {case}"), &lhs, &rhs)?;
        }

        let g = &ctx.graded;
        let n = ctx.order;
        for i in 0..rank {
            let t = g.t(i, n);
            ctx.graded_eq(&format!("t_s^2 = 1, s={}", i + 1), &g.mul(&t, &t)?, &g.one(n))?;
        }
        for i in 0..rank {
            for j in i + 1..rank {
                let (a, b) = ctx.braid_words(i, j);
                let lhs = g.product(n, a.iter().map(|&k| g.t(k, n)).collect::<Vec<_>>().iter())?;
                let rhs = g.product(n, b.iter().map(|&k| g.t(k, n)).collect::<Vec<_>>().iter())?;
                ctx.graded_eq(&format!("graded braid relation, s={} t={}", i + 1, j + 1), &lhs, &rhs)?;
            }
        }
        for _ in 0..GRADED_CASES {
            let phi = s.polynomial(n, 3, 4);
            let i = s.simple();
            let alpha = g.root_form(i);
            let sphi = phi.reflect(d, i);
            let tp = g.t(i, n).add(&g.one(n));
            // alpha-dot ((t_s + 1) phi - s(phi) (t_s + 1)) = (phi - s phi)(alpha-dot + 2r)
            let comm = g.mul(&tp, &g.series(phi.clone()))?.sub(&g.mul(&g.series(sphi.clone()), &tp)?);
            let lhs = comm.map_coefficients(|f| f.mul_linear(&alpha));
            let rhs = g.series((&phi - &sphi).mul_linear(&alpha.plus_r(2)));
            ctx.graded_eq(&format!("graded commutation, phi={phi} s={}", i + 1), &lhs, &rhs)?;
        }

        for _ in 0..ASSOCIATIVITY_CASES {
            let (a, b, c) = (s.hecke_element(2), s.hecke_element(2), s.hecke_element(2));
            let lhs = h.mul(&h.mul(&a, &b), &c);
            let rhs = h.mul(&a, &h.mul(&b, &c));
            ctx.hecke_eq(&format!("associativity, a={}", a.render(d)), &lhs, &rhs)?;
        }
        for _ in 0..GRADED_LAW_CASES {
            let (a, b, c) = (s.graded_element(n, 2), s.graded_element(n, 2), s.graded_element(n, 2));
            let lhs = g.mul(&g.mul(&a, &b)?, &c)?;
            let rhs = g.mul(&a, &g.mul(&b, &c)?)?;
            ctx.graded_eq(&format!("graded associativity, a={}", a.render(d)), &lhs, &rhs)?;
        }
        Ok(())
    })
}

/// Images of the defining relations under a map into the graded algebra,
/// given the images of `v^2`, `theta_x` and the `T_{s_i}`.
fn graded_relation_images(
    ctx: &Context,
    s: &mut Sampler,
    label: &str,
    t_images: &[GradedElement],
    coefficient: impl Fn(&GroupAlgebraElement) -> FormalSeries,
) -> Outcome {
    let d = &*ctx.datum;
    let g = &ctx.graded;
    let rank = d.rank();
    let order = t_images[0].order();
    let one = g.one(order);
    let v2 = g.series(coefficient(&GroupAlgebraElement::scalar(LaurentScalar::v_pow(2), rank)));
    for (i, t) in t_images.iter().enumerate() {
        let lhs = g.mul(&t.add(&one), &t.sub(&v2))?;
        ctx.graded_eq(
            &format!("{label} of quadratic relation, {}", ctx.t_label(i)),
            &lhs,
            &GradedElement::zero(ctx.nvars(), order),
        )?;
    }
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = ctx.braid_words(i, j);
            let lhs = g.product(order, a.iter().map(|&k| &t_images[k]))?;
            let rhs = g.product(order, b.iter().map(|&k| &t_images[k]))?;
            ctx.graded_eq(&format!("{label} of braid relation, s={} t={}", i + 1, j + 1), &lhs, &rhs)?;
        }
    }
    let quad = &LaurentScalar::v_pow(2) - &LaurentScalar::one();
    for _ in 0..MORPHISM_CASES {
        let x = s.weight();
        let i = s.simple();
        let sx = d.reflect(i, &x);
        let t = &t_images[i];
        let theta = g.series(coefficient(&GroupAlgebraElement::theta(x.clone())));
        let theta_s = g.series(coefficient(&GroupAlgebraElement::theta(sx)));
        let lhs = g.mul(t, &theta)?.sub(&g.mul(&theta_s, t)?);
        let rhs = g.series(coefficient(&demazure_quotient(d, &x, i).scale(&quad)));
        ctx.graded_eq(&format!("{label} of Bernstein relation, x={x} s={}", i + 1), &lhs, &rhs)?;
    }
    Ok(())
}

/// The Lusztig morphisms and the top-row composite respect the defining
/// relations; the four involutions are multiplicative.
pub fn check_morphisms(d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
    run_check(Suite::Morphisms, d, cfg, |ctx, s| {
        let l = &ctx.lusztig;
        for (side, label) in [(Side::Right, "right morphism image"), (Side::Left, "left morphism image")] {
            let images = l.simple_images(side)?;
            graded_relation_images(ctx, s, label, &images, |c| l.coefficient_image(c))?;
        }

        let h = &ctx.hecke;
        let rank = d.rank();
        let top = |a: &HeckeElement| h.koszul_duality_parity(a);
        let t_images: Vec<HeckeElement> = (0..rank).map(|i| top(&h.t(i))).collect();
        let v2 = top(&h.v_pow(2));
        for (i, t) in t_images.iter().enumerate() {
            let lhs = h.mul(&(t + &h.one()), &(t - &v2));
            ctx.hecke_eq(
                &format!("composite image of quadratic relation, {}", ctx.t_label(i)),
                &lhs,
                &HeckeElement::zero(),
            )?;
        }
        for i in 0..rank {
            for j in i + 1..rank {
                let (a, b) = ctx.braid_words(i, j);
                let lhs = h.product(a.iter().map(|&k| &t_images[k]));
                let rhs = h.product(b.iter().map(|&k| &t_images[k]));
                ctx.hecke_eq(
                    &format!("composite image of braid relation, s={} t={}", i + 1, j + 1),
                    &lhs,
                    &rhs,
                )?;
            }
        }
        let quad = &LaurentScalar::v_pow(2) - &LaurentScalar::one();
        for _ in 0..MORPHISM_CASES {
            let x = s.weight();
            let i = s.simple();
            let sx = d.reflect(i, &x);
            let t = &t_images[i];
            let lhs = &h.mul(t, &top(&h.theta(x.clone()))) - &h.mul(&top(&h.theta(sx)), t);
            let rhs = top(&h.coefficient(demazure_quotient(d, &x, i).scale(&quad)));
            ctx.hecke_eq(&format!("composite image of Bernstein relation, x={x} s={}", i + 1), &lhs, &rhs)?;
        }

        let maps: [(&str, HeckeMap); 3] = [
            ("Koszul map", &|a| h.koszul(a)),
            ("duality map", &|a| h.duality(a)),
            ("parity map", &|a| h.parity(a)),
        ];
        for (name, f) in maps {
            for _ in 0..MORPHISM_CASES {
                let (a, b) = (s.hecke_element(2), s.hecke_element(2));
                let lhs = f(&h.mul(&a, &b));
                let rhs = h.mul(&f(&a), &f(&b));
                ctx.hecke_eq(
                    &format!("{name} on a={} b={}", a.render(d), b.render(d)),
                    &lhs,
                    &rhs,
                )?;
            }
        }
        let g = &ctx.graded;
        for _ in 0..MORPHISM_CASES {
            let (a, b) = (s.graded_element(ctx.order, 2), s.graded_element(ctx.order, 2));
            let lhs = g.fourier(&g.mul(&a, &b)?);
            let rhs = g.mul(&g.fourier(&a), &g.fourier(&b))?;
            ctx.graded_eq(
                &format!("Fourier map on a={} b={}", a.render(d), b.render(d)),
                &lhs,
                &rhs,
            )?;
        }
        Ok(())
    })
}

/// The two routes around the square agree on generators and on sampled
/// products of at most two generators.
pub fn check_diagram(d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
    run_check(Suite::Diagram, d, cfg, |ctx, s| {
        let l = &ctx.lusztig;
        let gens = ctx.generators();
        let compare = |label: &str, h: &HeckeElement| -> Outcome {
            let k = l.pipeline_k(h)?;
            let f = l.pipeline_h(h)?;
            ctx.graded_eq(&format!("routes disagree on {label}"), &k, &f)
        };
        for (label, h) in &gens {
            compare(label, h)?;
        }
        for _ in 0..PRODUCT_CASES {
            let (la, a) = &gens[s.rng.gen_range(0..gens.len())];
            let (lb, b) = &gens[s.rng.gen_range(0..gens.len())];
            compare(&format!("{la}*{lb}"), &ctx.hecke.mul(a, b))?;
        }
        Ok(())
    })
}

/// `(exp(l) - 1) / l` at `order - 1`.
fn exp_minus_one_over(l: &LinearForm, order: u32) -> crate::Result<FormalSeries> {
    (&l.exp(order) - &FormalSeries::one(l.nvars(), order)).div_linear(l)
}

/// Both sides of the closed-form identity for the simple index `i`, built
/// directly in the graded algebra.
fn display_sides(ctx: &Context, i: usize) -> crate::Result<(GradedElement, GradedElement)> {
    let d = &*ctx.datum;
    let g = &ctx.graded;
    let w = ctx.working;
    let nvars = ctx.nvars();
    let alpha = diff(d.simple_root(i));
    let denominator = exp_minus_one_over(&alpha, w)?.inv()?;
    let left_unit = &exp_minus_one_over(&alpha.plus_r(-2), w)? * &denominator;
    let right_unit = &exp_minus_one_over(&alpha.plus_r(2), w)? * &denominator;
    let order = left_unit.order();
    let one = g.one(order);
    let t = g.t(i, order);

    let lhs = one.sub(&t).left_scale(&left_unit);

    let inner = g.mul(&t.add(&one), &g.series(right_unit))?.sub(&one);
    let eb = todd_eb(d, order)?;
    let conj = g.mul(&inner, &g.series(eb.inv()?))?.left_scale(&eb);
    let rho = diff(d.rho()).scale(&BigRational::from_integer(BigInt::from(ctx.rho_sign)));
    let before = (-&rho).plus_r(-2).exp(order);
    let after = rho.exp(order);
    let rhs = one.sub(&g.mul(&conj, &g.series(after))?.left_scale(&before));
    debug_assert_eq!(nvars, lhs.nvars());
    Ok((lhs, rhs))
}

fn display_outcome(ctx: &Context, i: usize) -> Outcome {
    let (lhs, rhs) = display_sides(ctx, i)?;
    ctx.graded_eq(&format!("closed-form identity, s={}", i + 1), &lhs, &rhs)?;
    let g = &ctx.graded;
    let shadow = g.one(ctx.order).sub(&g.t(i, ctx.order));
    ctx.graded_eq(&format!("r = 0 shadow of lhs, s={}", i + 1), &lhs.r_zero(), &shadow)?;
    ctx.graded_eq(&format!("r = 0 shadow of rhs, s={}", i + 1), &rhs.r_zero(), &shadow)
}

/// The closed-form identity equivalent to the square on `1 + T_{s_i}`.
pub fn check_display_identity(d: &Arc<RootDatum>, cfg: &CheckConfig, i: usize) -> CheckReport {
    run_check(Suite::Display, d, cfg, |ctx, _| display_outcome(ctx, i))
}

/// The closed-form identity for every simple index.
pub fn check_display(d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
    run_check(Suite::Display, d, cfg, |ctx, _| {
        (0..d.rank()).try_for_each(|i| display_outcome(ctx, i))
    })
}

/// Transport of antispherical modules, the action formulas on both sides
/// and the module laws.
pub fn check_modules(d: &Arc<RootDatum>, cfg: &CheckConfig) -> CheckReport {
    run_check(Suite::Modules, d, cfg, |ctx, s| {
        let h = &ctx.hecke;
        let g = &ctx.graded;
        let l = &ctx.lusztig;
        let n = ctx.order;
        let rank = d.rank();
        let unit = AsphElement(GroupAlgebraElement::one(rank));

        ctx.asph_eq("identity on the generator", &h.asph_act_left(&h.one(), &unit), &unit)?;
        for i in 0..rank {
            let minus = AsphElement(-&unit.0);
            ctx.asph_eq(&format!("sign character, {}", ctx.t_label(i)), &h.asph_act_left(&h.t(i), &unit), &minus)?;
        }

        let gens = ctx.generators();
        let images: Vec<GradedElement> = gens
            .iter()
            .map(|(_, x)| l.apply_untruncated(Side::Left, x))
            .collect::<crate::Result<_>>()?;
        for _ in 0..MODULE_CASES {
            let m = AsphElement(s.monomial());
            let tm = l.transport(&m);
            for ((label, x), image) in gens.iter().zip(&images) {
                let lhs = l.transport(&h.asph_act_left(x, &m));
                let rhs = g.asph_act(image, &tm)?;
                ctx.series_eq(&format!("transport of {label} acting on {m}"), &lhs.0, &rhs.0)?;
            }
        }

        for _ in 0..ACTION_CASES {
            let x = s.weight();
            let i = s.simple();
            let tp = &h.t(i) + &h.one();
            let m = AsphElement(GroupAlgebraElement::theta(x.clone()));
            let rhs = AsphElement(mul_by_scriptg(d, &x, i));
            ctx.asph_eq(&format!("action of T_s + 1, x={x} s={}", i + 1), &h.asph_act_left(&tp, &m), &rhs)?;
        }

        for _ in 0..ACTION_CASES {
            let phi = s.polynomial(n, 3, 4);
            let i = s.simple();
            let alpha = g.root_form(i);
            let tp = g.t(i, n).add(&g.one(n));
            // alpha-dot ((t_s + 1) phi . 1) = (phi - s phi)(alpha-dot + 2r) . 1
            let acted = g.asph_act(&tp, &GradedAsphElement(phi.clone()))?;
            let lhs = acted.0.mul_linear(&alpha);
            let rhs = (&phi - &phi.reflect(d, i)).mul_linear(&alpha.plus_r(2));
            ctx.series_eq(&format!("graded action of t_s + 1, phi={phi} s={}", i + 1), &lhs, &rhs)?;
        }

        for _ in 0..MODULE_LAW_CASES {
            let (a, b) = (s.hecke_element(2), s.hecke_element(2));
            let m = AsphElement(s.monomial());
            let lhs = h.asph_act_left(&h.mul(&a, &b), &m);
            let rhs = h.asph_act_left(&a, &h.asph_act_left(&b, &m));
            ctx.asph_eq(&format!("module law, a={} b={}", a.render(d), b.render(d)), &lhs, &rhs)?;
        }
        for _ in 0..GRADED_LAW_CASES {
            let (a, b) = (s.graded_element(n, 2), s.graded_element(n, 2));
            let m = GradedAsphElement(s.polynomial(n, 2, 2));
            let lhs = g.asph_act(&g.mul(&a, &b)?, &m)?;
            let rhs = g.asph_act(&a, &g.asph_act(&b, &m)?)?;
            ctx.series_eq(&format!("graded module law, a={} b={}", a.render(d), b.render(d)), &lhs.0, &rhs.0)?;
        }

        for _ in 0..MODULE_CASES {
            let x = s.weight();
            let i = s.simple();
            let image = l.apply_untruncated(Side::Left, &(&h.t(i) + &h.one()))?;
            let m = l.transport(&AsphElement(GroupAlgebraElement::theta(x.clone())));
            let lhs = g.asph_act(&image, &m)?;
            let rhs = l.scriptg_tilde_action(&x, i)?;
            ctx.series_eq(&format!("image of T_s + 1 on exp(x), x={x} s={}", i + 1), &lhs.0, &rhs.0)?;
        }
        Ok(())
    })
}

/// Reports of several suites over one datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub datum: DatumDescriptor,
    pub order: u32,
    pub guard: u32,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize)]
struct CheckEntry<'a> {
    name: &'a str,
    status: Status,
    elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportArtifact<'a> {
    artifact_version: &'a str,
    datum: &'a DatumDescriptor,
    order: u32,
    guard: u32,
    seed: u64,
    checks: Vec<CheckEntry<'a>>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn without_timing(&self) -> Self {
        SuiteReport {
            checks: self.checks.iter().map(CheckReport::without_timing).collect(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let artifact = ReportArtifact {
            artifact_version: ARTIFACT_VERSION,
            datum: &self.datum,
            order: self.order,
            guard: self.guard,
            seed: self.seed,
            checks: self
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: &c.name,
                    status: c.status,
                    elapsed_ms: c.elapsed_ms,
                    witness: c.witness.as_deref(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&artifact).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "datum {}{} order {} guard {} seed {}",
            self.datum.kind, self.datum.rank, self.order, self.guard, self.seed
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let _ = writeln!(out, "{:<width$}  {:<6}  {:>10}", "check", "status", "elapsed_ms");
        for c in &self.checks {
            let _ = writeln!(out, "{:<width$}  {:<6}  {:>10}", c.name, c.status, c.elapsed_ms);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        out
    }
}

/// Runs the requested suites in parallel; reports are sorted by check name.
pub fn run_suites(d: &Arc<RootDatum>, cfg: &CheckConfig, suites: &[Suite]) -> SuiteReport {
    let mut wanted = suites.to_vec();
    wanted.sort();
    wanted.dedup();
    let mut checks: Vec<CheckReport> = wanted.par_iter().map(|s| s.run(d, cfg)).collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        datum: d.descriptor(),
        order: cfg.order,
        guard: cfg.guard,
        seed: cfg.seed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::CartanType;

    fn datum(ty: CartanType) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_type(ty).unwrap())
    }

    #[test]
    fn sampler_is_reproducible() {
        let d = datum(CartanType::A(2));
        let mut a = Sampler::new(d.clone(), 7, 1);
        let mut b = Sampler::new(d.clone(), 7, 1);
        for _ in 0..20 {
            assert_eq!(a.weight(), b.weight());
            assert_eq!(a.polynomial(4, 3, 3), b.polynomial(4, 3, 3));
        }
        let mut c = Sampler::new(d, 7, 2);
        let xs: Vec<Weight> = (0..10).map(|_| a.weight()).collect();
        let ys: Vec<Weight> = (0..10).map(|_| c.weight()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn sampler_ranges() {
        let d = datum(CartanType::B(2));
        let mut s = Sampler::new(d, 0, 0);
        for _ in 0..200 {
            assert!(s.weight().coords().iter().all(|c| (-3..=3).contains(c)));
            let q = s.rational();
            assert!(q.numer().magnitude() <= &8u32.into() && q.denom() <= &BigInt::from(8));
            assert!(s.laurent().terms().all(|(k, _)| (-2..=2).contains(&k)));
        }
    }

    #[test]
    fn a1_suites_pass() {
        let d = datum(CartanType::A(1));
        let report = run_suites(&d, &CheckConfig::new(4), &Suite::ALL);
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn zero_guard_is_an_error_not_a_failure() {
        let d = datum(CartanType::A(1));
        let r = check_display_identity(&d, &CheckConfig::new(4).with_guard(0), 0);
        assert_eq!(r.status, Status::Error);
        assert!(r.witness.is_some());
    }

    #[test]
    fn json_schema() {
        let d = datum(CartanType::A(1));
        let report = run_suites(&d, &CheckConfig::new(3), &[Suite::Diagram]);
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["datum"]["type"], "A");
        assert_eq!(v["datum"]["rank"], 1);
        assert_eq!(v["order"], 3);
        assert_eq!(v["checks"][0]["name"], "check_diagram");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0].get("witness").is_none());
        assert!(report.to_text().contains("check_diagram"));
    }
}
