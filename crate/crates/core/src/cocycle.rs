//! Involutive symmetric quasi-cocycles `φ: V × V → V` on finite Boolean
//! groups, their extraction from two-valued groups of exponent 4 and the
//! cohomology invariant.
//!
//! Elements of `V = C₂ⁿ` are bitmasks over a fixed basis. The defining
//! relation `x_u * x_v = φ(u, v)[x_{uv}, u·x_{uv}]` only determines `φ(u, v)`
//! modulo `⟨u, v⟩`; comparisons use the smallest mask in that coset.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2;
use crate::group::{ElementId, PowerTable, TwoValuedGroup};
use crate::structure::{boolean_subgroup_with, is_special_with, v_dot};

/// Largest supported `dim V`; the table has `4^dim` entries.
pub const MAX_DIM: usize = 10;

/// An element of `C₂ⁿ` as a bitmask; bit `i` is the coordinate on `bᵢ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BooleanVec(pub u64);

impl BooleanVec {
    pub const ZERO: BooleanVec = BooleanVec(0);

    pub fn basis(i: usize) -> Self {
        BooleanVec(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Mul for BooleanVec {
    type Output = BooleanVec;

    fn mul(self, rhs: BooleanVec) -> BooleanVec {
        BooleanVec(self.0 ^ rhs.0)
    }
}

impl fmt::Display for BooleanVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.0)
    }
}

/// Smallest element of `c⟨u, v⟩`.
pub fn coset_min(c: u64, u: u64, v: u64) -> u64 {
    [c, c ^ u, c ^ v, c ^ u ^ v].into_iter().min().unwrap_or(c)
}

fn in_span3(x: u64, u: u64, v: u64, w: u64) -> bool {
    (0..8u32).any(|s| {
        let mut y = 0;
        if s & 1 != 0 {
            y ^= u;
        }
        if s & 2 != 0 {
            y ^= v;
        }
        if s & 4 != 0 {
            y ^= w;
        }
        y == x
    })
}

#[derive(Clone, Debug)]
pub struct QuasiCocycle {
    dim: usize,
    values: Vec<u64>,
}

impl QuasiCocycle {
    /// Tabulates `f` on `C₂^dim`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(u64, u64) -> u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::InvalidCocycle(format!(
                "dimension {dim} exceeds {MAX_DIM}"
            )));
        }
        let n = 1u64 << dim;
        let mut values = Vec::with_capacity((n * n) as usize);
        for u in 0..n {
            for v in 0..n {
                let c = f(u, v);
                if c >= n {
                    return Err(Error::InvalidCocycle(format!(
                        "value {c:b} outside C₂^{dim}"
                    )));
                }
                values.push(c);
            }
        }
        Ok(QuasiCocycle { dim, values })
    }

    pub fn trivial(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |_, _| 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        1 << self.dim
    }

    /// `φ(u, v)` as stored.
    pub fn get(&self, u: BooleanVec, v: BooleanVec) -> BooleanVec {
        BooleanVec(self.value(u.0, v.0))
    }

    /// Smallest representative of `φ(u, v)⟨u, v⟩`.
    pub fn canonical(&self, u: BooleanVec, v: BooleanVec) -> BooleanVec {
        BooleanVec(self.canon(u.0, v.0))
    }

    /// The table of canonical representatives, row-major in `(u, v)`.
    pub fn canonical_table(&self) -> Vec<u64> {
        let n = 1u64 << self.dim;
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .map(|(u, v)| self.canon(u, v))
            .collect()
    }

    #[inline]
    fn value(&self, u: u64, v: u64) -> u64 {
        self.values[(u as usize) << self.dim | v as usize]
    }

    #[inline]
    fn canon(&self, u: u64, v: u64) -> u64 {
        coset_min(self.value(u, v), u, v)
    }

    /// Checks symmetry, involutivity, normalization and the cocycle
    /// inclusion. Returns the first failing condition as a message.
    pub fn check(&self) -> std::result::Result<(), String> {
        let n = 1u64 << self.dim;
        for u in 0..n {
            if coset_min(self.value(0, u), u, u) != 0 || coset_min(self.value(u, 0), u, u) != 0 {
                return Err(format!("φ(e, {u:b}) or φ({u:b}, e) not in ⟨u⟩"));
            }
            if coset_min(self.value(u, u), u, u) != 0 {
                return Err(format!("φ({u:b}, {u:b}) not in ⟨u⟩"));
            }
            for v in 0..n {
                if self.canon(u, v) != self.canon(v, u) {
                    return Err(format!("φ({u:b}, {v:b}) ≠ φ({v:b}, {u:b}) mod ⟨u, v⟩"));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                let uv = self.value(u, v);
                for w in 0..n {
                    let prod = uv ^ self.value(u ^ v, w) ^ self.value(u, v ^ w) ^ self.value(v, w);
                    if !in_span3(prod, u, v, w) {
                        return Err(format!("cocycle inclusion fails at ({u:b}, {v:b}, {w:b})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Pointwise product; the cohomology classes add.
    pub fn mul(&self, other: &QuasiCocycle) -> Result<QuasiCocycle> {
        if self.dim != other.dim {
            return Err(Error::InvalidCocycle("dimensions differ".into()));
        }
        Self::from_fn(self.dim, |u, v| self.value(u, v) ^ other.value(u, v))
    }

    /// `φ′(u, v) = φ(u, v) χ(u) χ(v) χ(uv)` for `χ` with `χ(e) = e`.
    pub fn perturb(&self, chi: &[u64]) -> Result<QuasiCocycle> {
        if chi.len() != self.order() || chi[0] != 0 {
            return Err(Error::InvalidCocycle(
                "χ must be defined on V with χ(e) = e".into(),
            ));
        }
        Self::from_fn(self.dim, |u, v| {
            self.value(u, v) ^ chi[u as usize] ^ chi[v as usize] ^ chi[(u ^ v) as usize]
        })
    }

    /// Transports `φ` along the automorphism `M` of `V` whose columns are
    /// `columns[i] = M(bᵢ)`: `φ^M(Mu, Mv) = M φ(u, v)`.
    pub fn change_basis(&self, columns: &[u64]) -> Result<QuasiCocycle> {
        if columns.len() != self.dim || gf2::rank_of_masks(columns) != self.dim {
            return Err(Error::InvalidCocycle(
                "basis change is not invertible".into(),
            ));
        }
        let apply = |x: u64| gf2::combine(columns, x);
        let n = self.order() as u64;
        let mut inverse = vec![0u64; n as usize];
        for x in 0..n {
            inverse[apply(x) as usize] = x;
        }
        Self::from_fn(self.dim, |u, v| {
            apply(self.value(inverse[u as usize], inverse[v as usize]))
        })
    }

    /// Restriction to `U = span(u_basis)` along the projection `Π: V → U`
    /// given by `projection[i] = U-coordinates of Π(bᵢ)`.
    pub fn restrict_along(&self, u_basis: &[u64], projection: &[u64]) -> Result<QuasiCocycle> {
        let k = u_basis.len();
        if projection.len() != self.dim || gf2::rank_of_masks(u_basis) != k {
            return Err(Error::InvalidCocycle("malformed projection data".into()));
        }
        let pi = |x: u64| gf2::combine(projection, x);
        for (j, &b) in u_basis.iter().enumerate() {
            if pi(b) != 1 << j {
                return Err(Error::InvalidCocycle("projection does not fix U".into()));
            }
        }
        Self::from_fn(k, |a, b| {
            pi(self.value(gf2::combine(u_basis, a), gf2::combine(u_basis, b)))
        })
    }
}

/// Equal when equivalent: values agree modulo `⟨u, v⟩` everywhere.
impl PartialEq for QuasiCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.canonical_table() == other.canonical_table()
    }
}

impl Eq for QuasiCocycle {}

/// `φ_B(b_I, b_J) = b_{I∩J}` on the standard basis of `C₂ⁿ`.
pub fn phi_basis(n: usize) -> Result<QuasiCocycle> {
    if n == 0 {
        return Err(Error::InvalidCocycle("phi_basis needs n ≥ 1".into()));
    }
    QuasiCocycle::from_fn(n, |u, v| u & v)
}

/// Checks every defining condition; `false` on the first failure.
pub fn validate_quasicocycle(phi: &QuasiCocycle) -> bool {
    phi.is_valid()
}

/// Projection data for restricting onto `span(u_basis)`, killing the standard
/// basis vectors that complete `u_basis` to a basis of `C₂^dim`.
pub fn projection_onto(dim: usize, u_basis: &[u64]) -> Result<Vec<u64>> {
    if gf2::rank_of_masks(u_basis) != u_basis.len() {
        return Err(Error::InvalidCocycle("dependent basis".into()));
    }
    let mut full: Vec<u64> = u_basis.to_vec();
    for i in 0..dim {
        if !gf2::in_span(&full, 1 << i) {
            full.push(1 << i);
        }
    }
    // Π(bᵢ) = first k coordinates of bᵢ in the completed basis
    let k = u_basis.len();
    let mask = (1u64 << k) - 1;
    (0..dim)
        .map(|i| {
            gf2::coordinates(&full, 1 << i)
                .map(|c| c & mask)
                .ok_or_else(|| Error::InvalidCocycle("basis completion failed".into()))
        })
        .collect()
}

/// `λ(ξ) = 1` iff `φ(u, v) ∉ ⟨u, v⟩` for a basis `u, v` of `ker ξ`, for the
/// seven nonzero functionals `ξ` on `C₂³`, indexed by `ξ - 1`.
pub fn lambda_dim3(phi: &QuasiCocycle) -> Result<[bool; 7]> {
    if phi.dim != 3 {
        return Err(Error::InvalidCocycle("λ is defined on C₂³".into()));
    }
    let mut lambda = [false; 7];
    for xi in 1..8u64 {
        let kernel: Vec<u64> = (1..8u64)
            .filter(|&v| (v & xi).count_ones() % 2 == 0)
            .collect();
        let (u, v) = (kernel[0], kernel[1]);
        lambda[(xi - 1) as usize] = phi.canon(u, v) != 0;
    }
    Ok(lambda)
}

/// The class of `φ` in `H(V)`: 0 for trivial, 1 for the class of `φ_B`.
pub fn cohomology_invariant(phi: &QuasiCocycle) -> Result<u8> {
    phi.check().map_err(Error::InvalidCocycle)?;
    Ok(invariant_unchecked(phi))
}

fn invariant_unchecked(phi: &QuasiCocycle) -> u8 {
    match phi.dim {
        0..=2 => 0,
        3 => {
            let lambda = lambda_dim3(phi).expect("dimension checked");
            (lambda.iter().filter(|&&l| l).count() % 2) as u8
        }
        _ => {
            // coordinate projection onto span(b₀, b₁, b₂)
            let projection: Vec<u64> = (0..phi.dim)
                .map(|i| if i < 3 { 1 << i } else { 0 })
                .collect();
            let r = phi
                .restrict_along(&[1, 2, 4], &projection)
                .expect("coordinate projection is well formed");
            invariant_unchecked(&r)
        }
    }
}

/// The data read off from a two-valued group of exponent 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    /// `v_elements[mask]` is the element of `V` with those coordinates.
    pub v_elements: Vec<ElementId>,
    /// Chosen basis of `V`, as group elements.
    pub basis: Vec<ElementId>,
    /// `representatives[mask]` is `x_v`, the smallest element with square `v`.
    pub representatives: Vec<ElementId>,
    pub cocycle: QuasiCocycle,
}

impl Extraction {
    pub fn dim(&self) -> usize {
        self.cocycle.dim()
    }
}

/// Chooses `x_v` per fibre of the squaring map and reads off `φ`.
///
/// Requires an involutive commutative, non-special group with all orders in
/// `{1, 2, 4}` in which every order-2 element is a square.
pub fn extract_quasicocycle(g: &TwoValuedGroup) -> Result<Extraction> {
    if !g.is_involutive() || !g.is_commutative() {
        return Err(Error::PreconditionViolated(
            "group is not involutive commutative".into(),
        ));
    }
    let powers = PowerTable::new(g)?;
    if let Some(x) = g
        .elements()
        .find(|&x| !matches!(powers.order(x), 1 | 2 | 4))
    {
        return Err(Error::PreconditionViolated(format!(
            "element {} has order {}",
            g.name(x),
            powers.order(x)
        )));
    }
    if is_special_with(g, &powers).is_special {
        return Err(Error::PreconditionViolated("group is special".into()));
    }
    let v = boolean_subgroup_with(g, &powers)?;
    if v.dim > MAX_DIM {
        return Err(Error::PreconditionViolated(format!(
            "dim V = {} too large",
            v.dim
        )));
    }
    let dot = |a: ElementId, b: ElementId| {
        v_dot(g, a, b).ok_or_else(|| {
            Error::PreconditionViolated(format!("{} · {} undefined", g.name(a), g.name(b)))
        })
    };

    // greedy basis in index order; span tracked as mask → element
    let mut basis = Vec::new();
    let mut v_elements = vec![ElementId::IDENTITY];
    for &m in &v.members {
        if v_elements.contains(&m) {
            continue;
        }
        let mut extended = v_elements.clone();
        for &s in &v_elements {
            extended.push(dot(s, m)?);
        }
        basis.push(m);
        v_elements = extended;
    }
    let n = v_elements.len();
    let mut mask_of = vec![u64::MAX; g.size()];
    for (mask, &x) in v_elements.iter().enumerate() {
        mask_of[x.index()] = mask as u64;
    }

    let mut representatives = vec![None; n];
    for x in g.elements() {
        let sq = mask_of[powers.square(x).index()];
        if sq == u64::MAX {
            return Err(Error::PreconditionViolated("square outside V".into()));
        }
        representatives[sq as usize].get_or_insert(x);
    }
    let representatives: Vec<ElementId> = representatives
        .into_iter()
        .enumerate()
        .map(|(mask, r)| {
            r.ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "order-2 element {} is not a square",
                    g.name(v_elements[mask])
                ))
            })
        })
        .collect::<Result<_>>()?;

    let mut err = None;
    let cocycle = QuasiCocycle::from_fn(v.dim, |a, b| {
        let z = g
            .mul(representatives[a as usize], representatives[b as usize])
            .lo();
        let target = representatives[(a ^ b) as usize];
        for (c, &vc) in v_elements.iter().enumerate() {
            if v_dot(g, vc, target) == Some(z) {
                return c as u64;
            }
        }
        err.get_or_insert_with(|| {
            Error::PreconditionViolated(format!(
                "product of representatives leaves the orbit of {}",
                g.name(target)
            ))
        });
        0
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Extraction {
        v_elements,
        basis,
        representatives,
        cocycle,
    })
}
