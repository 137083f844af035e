//! The one-parameter family of algebraic two-valued addition laws
//!
//! ```text
//! F(x, y, z) = (x + y + z - a₂xyz)² - 4(1 + a₃xyz)(xy + xz + yz + a₁xyz)
//! ```
//!
//! over `ℂ`: symbolic expansion, the two-valued product `x * y` as the roots
//! of `F(x, y, ·)`, associativity as an identity of 4-element multisets, and
//! the coefficients of the canonical invariant operator.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative threshold on the leading coefficient below which a root escapes
/// to infinity.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
const ABSOLUTE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LawParams {
    pub a1: C64,
    pub a2: C64,
    pub a3: C64,
}

impl LawParams {
    pub fn new(a1: C64, a2: C64, a3: C64) -> Self {
        LawParams { a1, a2, a3 }
    }

    pub fn real(a1: f64, a2: f64, a3: f64) -> Self {
        Self::new(C64::new(a1, 0.0), C64::new(a2, 0.0), C64::new(a3, 0.0))
    }

    /// The additive law `a₁ = a₂ = a₃ = 0`.
    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0)
    }
}

/// A sparse polynomial in three variables keyed by exponents `(i, j, k)` of
/// `xⁱ yʲ zᵏ`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly3 {
    terms: BTreeMap<(u8, u8, u8), C64>,
}

impl Poly3 {
    pub fn constant(c: C64) -> Self {
        let mut p = Poly3::default();
        p.add_term((0, 0, 0), c);
        p
    }

    pub fn monomial(exps: (u8, u8, u8), c: C64) -> Self {
        let mut p = Poly3::default();
        p.add_term(exps, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial((1, 0, 0), ONE)
    }

    pub fn y() -> Self {
        Self::monomial((0, 1, 0), ONE)
    }

    pub fn z() -> Self {
        Self::monomial((0, 0, 1), ONE)
    }

    fn add_term(&mut self, exps: (u8, u8, u8), c: C64) {
        let entry = self.terms.entry(exps).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.remove(&exps);
        }
    }

    pub fn coefficient(&self, i: u8, j: u8, k: u8) -> C64 {
        self.terms.get(&(i, j, k)).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u8, u8, u8), C64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly3) -> Poly3 {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e, c);
        }
        p
    }

    pub fn sub(&self, other: &Poly3) -> Poly3 {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> Poly3 {
        let mut p = Poly3::default();
        for (e, c) in self.terms() {
            p.add_term(e, c * s);
        }
        p
    }

    pub fn mul(&self, other: &Poly3) -> Poly3 {
        let mut p = Poly3::default();
        for ((i, j, k), c) in self.terms() {
            for ((a, b, d), c2) in other.terms() {
                p.add_term((i + a, j + b, k + d), c * c2);
            }
        }
        p
    }

    pub fn eval(&self, x: C64, y: C64, z: C64) -> C64 {
        self.terms()
            .map(|((i, j, k), c)| c * x.powu(i as u32) * y.powu(j as u32) * z.powu(k as u32))
            .sum()
    }

    /// Degree in the variable `var` (0 = x, 1 = y, 2 = z).
    pub fn degree_in(&self, var: usize) -> u8 {
        self.terms()
            .map(|(e, _)| [e.0, e.1, e.2][var])
            .max()
            .unwrap_or(0)
    }

    /// The terms not involving `var`, i.e. the substitution `var = 0`.
    pub fn at_zero(&self, var: usize) -> Poly3 {
        let mut p = Poly3::default();
        for (e, c) in self.terms() {
            if [e.0, e.1, e.2][var] == 0 {
                p.add_term(e, c);
            }
        }
        p
    }

    /// Permutes the variables: the new exponent tuple is `perm` applied to
    /// the old one.
    pub fn permute(&self, perm: [usize; 3]) -> Poly3 {
        let mut p = Poly3::default();
        for (e, c) in self.terms() {
            let old = [e.0, e.1, e.2];
            p.add_term((old[perm[0]], old[perm[1]], old[perm[2]]), c);
        }
        p
    }

    /// Coefficient of `zᵏ`, as a polynomial in `x, y`.
    pub fn z_coefficient(&self, k: u8) -> Poly2 {
        let mut p = Poly2::default();
        for ((i, j, d), c) in self.terms() {
            if d == k {
                p.add_term((i, j), c);
            }
        }
        p
    }
}

/// A sparse polynomial in `x, y`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<(u8, u8), C64>,
}

impl Poly2 {
    fn add_term(&mut self, exps: (u8, u8), c: C64) {
        let entry = self.terms.entry(exps).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.remove(&exps);
        }
    }

    pub fn coefficient(&self, i: u8, j: u8) -> C64 {
        self.terms.get(&(i, j)).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * x.powu(i as u32) * y.powu(j as u32))
            .sum()
    }

    pub fn scale(&self, s: C64) -> Poly2 {
        let mut p = Poly2::default();
        for (&e, &c) in &self.terms {
            p.add_term(e, c * s);
        }
        p
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&e, &c) in &other.terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut p = Poly2::default();
        for (&(i, j), &c) in &self.terms {
            for (&(a, b), &d) in &other.terms {
                p.add_term((i + a, j + b), c * d);
            }
        }
        p
    }

    /// Coefficients of `yᵏ` as a univariate polynomial in `x`, lowest degree
    /// first.
    pub fn y_coefficient(&self, k: u8) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(i, j), &c) in &self.terms {
            if j == k {
                let i = i as usize;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, ZERO);
                }
                coeffs[i] += c;
            }
        }
        UniPoly::new(coeffs)
    }
}

/// A univariate polynomial in `x`, coefficients lowest degree first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<C64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(ZERO);
        UniPoly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: C64) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [ONE]
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `F` expanded symbolically, together with `F = A z² − B z + C`.
#[derive(Clone, Debug)]
pub struct AdditionLaw {
    pub params: LawParams,
    pub f: Poly3,
    pub a: Poly2,
    pub b: Poly2,
    pub c: Poly2,
}

impl AdditionLaw {
    pub fn new(params: LawParams) -> Self {
        let (x, y, z) = (Poly3::x(), Poly3::y(), Poly3::z());
        let xyz = x.mul(&y).mul(&z);
        let linear = x.add(&y).add(&z).sub(&xyz.scale(params.a2));
        let square = linear.mul(&linear);
        let one_plus = Poly3::constant(ONE).add(&xyz.scale(params.a3));
        let pairs = x
            .mul(&y)
            .add(&x.mul(&z))
            .add(&y.mul(&z))
            .add(&xyz.scale(params.a1));
        let f = square.sub(&one_plus.mul(&pairs).scale(C64::new(4.0, 0.0)));
        let a = f.z_coefficient(2);
        let b = f.z_coefficient(1).scale(-ONE);
        let c = f.z_coefficient(0);
        AdditionLaw { params, f, a, b, c }
    }

    pub fn eval(&self, x: C64, y: C64, z: C64) -> C64 {
        self.f.eval(x, y, z)
    }

    /// The two roots of `F(x, y, ·)`, with multiplicity.
    pub fn mul2(&self, x: C64, y: C64) -> Result<ComplexPair> {
        let (a, b, c) = (self.a.eval(x, y), self.b.eval(x, y), self.c.eval(x, y));
        let scale = 1f64.max(b.norm()).max(c.norm());
        if a.norm() <= DEGENERACY_TOLERANCE * scale {
            return Err(Error::NearDegenerate {
                magnitude: a.norm(),
            });
        }
        Ok(solve_quadratic(a, b, c))
    }

    /// Whether `(x * y) * z` and `x * (y * z)` agree as multisets.
    pub fn check_associativity(&self, x: C64, y: C64, z: C64, tol: f64) -> Result<bool> {
        let mut left = Vec::with_capacity(4);
        for u in self.mul2(x, y)?.roots() {
            left.extend(self.mul2(u, z)?.roots());
        }
        let mut right = Vec::with_capacity(4);
        for v in self.mul2(y, z)?.roots() {
            right.extend(self.mul2(x, v)?.roots());
        }
        Ok(multisets_match(&left, &right, tol))
    }

    /// `φ₁(x) = ∂Θ₁/∂y|_{y=0}` and `φ₂(x) = ∂σ/∂y|_{y=0}` with `Θ₁ = B/A`,
    /// `Θ₂ = C/A` and `σ = Θ₁² − 4Θ₂`, as polynomials in `x`.
    ///
    /// Uses `A(x, 0) = 1`, so the quotient rule reduces to
    /// `φ₁ = B_y − B·A_y` and `φ₂ = D_y − 2D·A_y` at `y = 0`, `D = B² − 4AC`.
    pub fn canonical_operator_polys(&self) -> Result<(UniPoly, UniPoly)> {
        let a0 = self.a.y_coefficient(0);
        if !a0.is_one() {
            return Err(Error::PreconditionViolated(format!(
                "A(x, 0) = {a0}, expected 1"
            )));
        }
        let a_y = self.a.y_coefficient(1);
        let (b0, b_y) = (self.b.y_coefficient(0), self.b.y_coefficient(1));
        let d = self
            .b
            .mul(&self.b)
            .add(&self.a.mul(&self.c).scale(C64::new(-4.0, 0.0)));
        let (d0, d_y) = (d.y_coefficient(0), d.y_coefficient(1));
        let phi1 = b_y.add(&b0.mul(&a_y).scale(-ONE));
        let phi2 = d_y.add(&d0.mul(&a_y).scale(C64::new(-2.0, 0.0)));
        Ok((phi1, phi2))
    }

    pub fn canonical_operator_coeffs(&self, x: C64) -> Result<(C64, C64)> {
        let (phi1, phi2) = self.canonical_operator_polys()?;
        Ok((phi1.eval(x), phi2.eval(x)))
    }
}

pub fn eval_f(p: &LawParams, x: C64, y: C64, z: C64) -> C64 {
    AdditionLaw::new(*p).eval(x, y, z)
}

pub fn mul2(p: &LawParams, x: C64, y: C64) -> Result<ComplexPair> {
    AdditionLaw::new(*p).mul2(x, y)
}

pub fn check_associativity(p: &LawParams, x: C64, y: C64, z: C64, tol: f64) -> Result<bool> {
    AdditionLaw::new(*p).check_associativity(x, y, z, tol)
}

pub fn canonical_operator_coeffs(p: &LawParams, x: C64) -> Result<(C64, C64)> {
    AdditionLaw::new(*p).canonical_operator_coeffs(x)
}

/// Roots of `a z² − b z + c` with `a ≠ 0`; the larger root comes from the
/// sign-matched formula, the other from Vieta.
pub fn solve_quadratic(a: C64, b: C64, c: C64) -> ComplexPair {
    let s = (b * b - 4.0 * a * c).sqrt();
    let (plus, minus) = ((b + s) / 2.0, (b - s) / 2.0);
    let q = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    if q == ZERO {
        return ComplexPair::new(ZERO, ZERO);
    }
    ComplexPair::new(q / a, c / q)
}

/// An unordered pair of complex numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair {
    pub first: C64,
    pub second: C64,
}

impl ComplexPair {
    pub fn new(first: C64, second: C64) -> Self {
        ComplexPair { first, second }
    }

    pub fn roots(self) -> [C64; 2] {
        [self.first, self.second]
    }

    pub fn contains(&self, v: C64, tol: f64) -> bool {
        close(self.first, v, tol) || close(self.second, v, tol)
    }

    /// Equality up to swap and the tolerance.
    pub fn approx_eq(&self, other: &ComplexPair, tol: f64) -> bool {
        multisets_match(&self.roots(), &other.roots(), tol)
    }
}

impl fmt::Display for ComplexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.first, self.second)
    }
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm())) + ABSOLUTE_SLACK
}

/// Whether some bijection pairs the entries within tolerance. Tries every
/// permutation, so it is exact rather than greedy; inputs have ≤ 4 entries.
pub fn multisets_match(left: &[C64], right: &[C64], tol: f64) -> bool {
    if left.len() != right.len() {
        return false;
    }
    fn search(left: &[C64], right: &[C64], used: &mut Vec<bool>, tol: f64) -> bool {
        let Some((&l, rest)) = left.split_first() else {
            return true;
        };
        for j in 0..right.len() {
            if !used[j] && close(l, right[j], tol) {
                used[j] = true;
                if search(rest, right, used, tol) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    search(left, right, &mut vec![false; right.len()], tol)
}

/// A uniform sample from the closed unit disk.
pub fn sample_unit_disk(rng: &mut impl Rng) -> C64 {
    let r: f64 = rng.gen::<f64>().sqrt();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r, theta)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub passed: usize,
    pub failed: usize,
    /// Samples skipped because some intermediate product was degenerate.
    pub degenerate: usize,
    pub failures: Vec<(LawParams, [C64; 3])>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Checks associativity on `samples` non-degenerate draws. Parameters are
/// drawn from the unit disk too unless `params` is given.
pub fn associativity_sweep(
    params: Option<LawParams>,
    samples: usize,
    tol: f64,
    seed: u64,
) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::default();
    let max_draws = samples.saturating_mul(100).max(100);
    let mut draws = 0;
    while report.passed + report.failed < samples && draws < max_draws {
        draws += 1;
        let p = params.unwrap_or_else(|| {
            LawParams::new(
                sample_unit_disk(&mut rng),
                sample_unit_disk(&mut rng),
                sample_unit_disk(&mut rng),
            )
        });
        let pt = [
            sample_unit_disk(&mut rng),
            sample_unit_disk(&mut rng),
            sample_unit_disk(&mut rng),
        ];
        match check_associativity(&p, pt[0], pt[1], pt[2], tol) {
            Ok(true) => report.passed += 1,
            Ok(false) => {
                report.failed += 1;
                report.failures.push((p, pt));
            }
            Err(_) => report.degenerate += 1,
        }
    }
    report
}
