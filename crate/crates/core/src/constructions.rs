//! Builders for the coset, principal, unipotent and special families, the
//! double of an abelian group, and products with Boolean groups.

use crate::abelian::{FinAbelianGroup, InvolutiveAutomorphism};
use crate::error::{Error, Result};
use crate::group::TwoValuedGroup;

/// `A / ι` with `π(g) * π(h) = [π(g + h), π(g + ι(h))]`.
///
/// Orbits are ordered by their smallest representative (in residue-tuple
/// order) and named after it, so the identity orbit comes first.
pub fn coset_group(a: &FinAbelianGroup, iota: &InvolutiveAutomorphism) -> TwoValuedGroup {
    let n = a.size();
    let mut orbit_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if orbit_of[g] == usize::MAX {
            let id = reps.len();
            orbit_of[g] = id;
            orbit_of[iota.apply(g)] = id;
            reps.push(g);
        }
    }
    let names = reps.iter().map(|&g| a.tuple_label(g)).collect();
    TwoValuedGroup::from_fn_named(names, |x, y| {
        let (g, h) = (reps[x], reps[y]);
        (orbit_of[a.add(g, h)], orbit_of[a.add(g, iota.apply(h))])
    })
}

/// The principal group `A / ι_a` for `A = C_{d₁} × … × C_{d_k}`.
pub fn principal(chain: &[u64]) -> Result<TwoValuedGroup> {
    let a = FinAbelianGroup::from_chain(chain.to_vec())?;
    Ok(principal_of(&a))
}

/// `A / ι_a` for any finite abelian group.
pub fn principal_of(a: &FinAbelianGroup) -> TwoValuedGroup {
    coset_group(a, &InvolutiveAutomorphism::antipodal(a))
}

/// `(C₂ⁿ × C₂ⁿ) / ι_u` with `ι_u(a, b) = (a, ab)`.
pub fn unipotent(n: usize) -> Result<TwoValuedGroup> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "unipotent series starts at n = 1".into(),
        ));
    }
    let a = FinAbelianGroup::boolean(2 * n);
    let iota = InvolutiveAutomorphism::unipotent(&a)?;
    Ok(coset_group(&a, &iota))
}

/// `Y_n`: the Boolean group `C₂ⁿ` with one extra element `s`.
///
/// Element order is `e, s`, then the nonzero vectors of `C₂ⁿ` by bitmask.
/// `x * x = [e, s]` and `s * x = [x, x]` for `x ≠ e`, `x * y = [xy, xy]` for
/// `x ≠ y`, and `s * s = [e, e]`.
pub fn special_series(n: usize) -> Result<TwoValuedGroup> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "special series starts at n = 1".into(),
        ));
    }
    if n > 20 {
        return Err(Error::PreconditionViolated("dimension too large".into()));
    }
    let size = (1usize << n) + 1;
    let mut names = vec!["e".to_string(), "s".to_string()];
    names.extend((1..1usize << n).map(|mask| format!("v{mask:0n$b}")));
    // index 0 = e, 1 = s, mask m ≥ 1 sits at index m + 1
    let vec_index = |mask: usize| if mask == 0 { 0 } else { mask + 1 };
    let mask_of = |i: usize| if i == 0 { 0 } else { i - 1 };
    Ok(TwoValuedGroup::from_fn_named(names, |a, b| {
        debug_assert!(a < size && b < size);
        match (a, b) {
            (0, x) | (x, 0) => (x, x),
            (1, 1) => (0, 0),
            (1, x) | (x, 1) => (x, x),
            (x, y) if x == y => (0, 1),
            (x, y) => {
                let z = vec_index(mask_of(x) ^ mask_of(y));
                (z, z)
            }
        }
    }))
}

/// `X × C₂^m` with `(x₁, w₁) * (x₂, w₂) = (x₁ * x₂, w₁w₂)`.
///
/// Index of `(x, w)` is `w · |X| + x`, so the `X` index varies fastest.
pub fn product_with_boolean(x: &TwoValuedGroup, m: usize) -> TwoValuedGroup {
    if m == 0 {
        return x.clone();
    }
    let n = x.size();
    let count = 1usize << m;
    let mut names = Vec::with_capacity(n * count);
    for w in 0..count {
        for name in x.names() {
            names.push(format!("({name};{w:0m$b})"));
        }
    }
    TwoValuedGroup::from_fn_named(names, |a, b| {
        let (xa, wa) = (a % n, a / n);
        let (xb, wb) = (b % n, b / n);
        let p = x.mul(xa.into(), xb.into());
        let w = wa ^ wb;
        (w * n + p.lo().index(), w * n + p.hi().index())
    })
}

/// The double of `A`: `x * y = [xy, xy]`.
pub fn double(a: &FinAbelianGroup) -> TwoValuedGroup {
    let names = (0..a.size()).map(|g| a.tuple_label(g)).collect();
    TwoValuedGroup::from_fn_named(names, |x, y| {
        let z = a.add(x, y);
        (z, z)
    })
}

/// Cardinality of `X^a_A` from the factors: `(∏dᵢ + 2^r) / 2`, `r` the number
/// of even factors.
pub fn principal_size(factors: &[u64]) -> u64 {
    let prod: u64 = factors.iter().product();
    let r = factors.iter().filter(|&&d| d % 2 == 0).count() as u32;
    (prod + 2u64.pow(r)) / 2
}

pub fn unipotent_size(n: u32) -> u64 {
    2u64.pow(2 * n - 1) + 2u64.pow(n - 1)
}

pub fn special_size(n: u32) -> u64 {
    2u64.pow(n) + 1
}
