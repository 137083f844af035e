//! Classification of finite involutive commutative two-valued groups.
//!
//! Every such group is isomorphic to exactly one of `X^a_A` (principal),
//! `X^u_n × C₂^m` with `n ≥ 3` (unipotent) or `Y_n × C₂^m` with `n ≥ 2`
//! (special). The remaining small members of the unipotent and special
//! series coincide with principal groups and are labelled as such.

mod reconstruct;
mod witness;

use std::fmt;
use std::str::FromStr;

pub use reconstruct::{default_t, reconstruct_abelian, Reconstruction};
pub use witness::{is_isomorphism, witness_isomorphism, DEFAULT_BUDGET};

use crate::abelian::{canonical_chain, FinAbelianGroup};
use crate::cocycle::{cohomology_invariant, extract_quasicocycle};
use crate::constructions::{
    principal, principal_size, product_with_boolean, special_series, special_size, unipotent,
    unipotent_size,
};
use crate::error::{Error, Result};
use crate::group::{require_involutive_commutative, PowerTable, TwoValuedGroup};
use crate::structure::{is_special_with, split_direct_factor};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    /// `X^a_A` for `A = C_{d₁} × … × C_{d_k}`; the empty chain is the trivial group.
    Principal(Vec<u64>),
    /// `X^u_n × C₂^m`.
    Unipotent { n: usize, m: usize },
    /// `Y_n × C₂^m`.
    Special { n: usize, m: usize },
}

fn twos_and_fours(m: usize, n: usize) -> Vec<u64> {
    let mut chain = vec![2; m];
    chain.extend(std::iter::repeat_n(4, n));
    chain
}

impl ClassLabel {
    /// The unique label of the isomorphism class.
    pub fn canonical(&self) -> ClassLabel {
        match *self {
            ClassLabel::Principal(ref chain) => ClassLabel::Principal(canonical_chain(chain)),
            ClassLabel::Unipotent { n, m } if n <= 2 => ClassLabel::Principal(twos_and_fours(m, n)),
            ClassLabel::Special { n: 0, m } => ClassLabel::Principal(vec![2; m + 1]),
            ClassLabel::Special { n: 1, m } => ClassLabel::Principal(twos_and_fours(m, 1)),
            ref other => other.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn size(&self) -> u64 {
        match *self {
            ClassLabel::Principal(ref chain) => principal_size(chain),
            ClassLabel::Unipotent { n: 0, m } => 1 << m,
            ClassLabel::Unipotent { n, m } => unipotent_size(n as u32) << m,
            ClassLabel::Special { n, m } => special_size(n as u32) << m,
        }
    }

    /// A group with this label.
    pub fn construct(&self) -> Result<TwoValuedGroup> {
        match *self {
            ClassLabel::Principal(ref chain) => principal(&canonical_chain(chain)),
            ClassLabel::Unipotent { n: 0, .. } | ClassLabel::Special { n: 0, .. } => {
                self.canonical().construct()
            }
            ClassLabel::Unipotent { n, m } => Ok(product_with_boolean(&unipotent(n)?, m)),
            ClassLabel::Special { n, m } => Ok(product_with_boolean(&special_series(n)?, m)),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Principal(chain) => {
                let parts: Vec<String> = chain.iter().map(u64::to_string).collect();
                write!(f, "Principal({})", parts.join(","))
            }
            ClassLabel::Unipotent { n, m } => write!(f, "Unipotent({n},{m})"),
            ClassLabel::Special { n, m } => write!(f, "Special({n},{m})"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Parses `Principal(4,4)`, `Unipotent(3,0)`, `Special(2,1)`; `Principal()`
    /// is the trivial group and a missing `m` defaults to 0.
    fn from_str(s: &str) -> Result<Self> {
        let err = |message: &str| Error::Parse {
            context: format!("label {s:?}"),
            message: message.to_string(),
        };
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| err("expected Kind(args)"))?;
        let args = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| err("missing closing parenthesis"))?;
        let nums: Vec<u64> = args
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(|a| {
                a.parse::<u64>()
                    .map_err(|_| err("arguments must be integers"))
            })
            .collect::<Result<_>>()?;
        let pair = |nums: &[u64]| match nums {
            [n] => Ok((*n as usize, 0)),
            [n, m] => Ok((*n as usize, *m as usize)),
            _ => Err(err("expected (n) or (n,m)")),
        };
        match s[..open].trim().to_ascii_lowercase().as_str() {
            "principal" | "a" => {
                if nums.iter().any(|&d| d < 2) {
                    return Err(err("factors must be at least 2"));
                }
                Ok(ClassLabel::Principal(nums))
            }
            "unipotent" | "u" => {
                let (n, m) = pair(&nums)?;
                Ok(ClassLabel::Unipotent { n, m })
            }
            "special" | "y" => {
                let (n, m) = pair(&nums)?;
                Ok(ClassLabel::Special { n, m })
            }
            _ => Err(err(
                "unknown kind, expected Principal, Unipotent or Special",
            )),
        }
    }
}

/// The canonical label of `X`.
pub fn classify(g: &TwoValuedGroup) -> Result<ClassLabel> {
    require_involutive_commutative(g)?;
    classify_unchecked(g)
}

/// [`classify`] without the cubic axiom check; the caller vouches for `g`.
pub fn classify_unchecked(g: &TwoValuedGroup) -> Result<ClassLabel> {
    let split = split_direct_factor(g)?;
    let (x, m) = (&split.factor, split.boolean_rank);
    let powers = PowerTable::new(x)?;
    if is_special_with(x, &powers).is_special {
        let n = (x.size() - 1).trailing_zeros() as usize;
        if (1 << n) + 1 != x.size() {
            return Err(Error::PreconditionViolated(format!(
                "special factor of size {} is not 2^n + 1",
                x.size()
            )));
        }
        return Ok(ClassLabel::Special { n, m }.canonical());
    }
    if let Some(t) = default_t(x, &powers) {
        let a = reconstruct_abelian(x, Some(t))?.to_fin_abelian()?;
        let full = a.direct_product(&FinAbelianGroup::boolean(m));
        return Ok(ClassLabel::Principal(canonical_chain(full.factors())));
    }
    if x.size() == 1 {
        return Ok(ClassLabel::Principal(vec![2; m]));
    }
    let extraction = extract_quasicocycle(x)?;
    let n = extraction.dim();
    let label = match cohomology_invariant(&extraction.cocycle)? {
        1 => ClassLabel::Principal(twos_and_fours(m, n)),
        _ => ClassLabel::Unipotent { n, m },
    };
    Ok(label.canonical())
}

/// Decided by comparing canonical labels.
pub fn are_isomorphic(x: &TwoValuedGroup, z: &TwoValuedGroup) -> Result<bool> {
    if x.size() != z.size() {
        require_involutive_commutative(x)?;
        require_involutive_commutative(z)?;
        return Ok(false);
    }
    Ok(classify(x)? == classify(z)?)
}
