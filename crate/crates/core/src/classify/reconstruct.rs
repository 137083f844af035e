//! The abelian group `A` with `A / ι_a ≅ X` for a non-special group that
//! has an element `t` of order other than 1, 2 or 4.

use crate::abelian::{self, ExplicitGroup, FinAbelianGroup};
use crate::error::{Error, Result};
use crate::group::{ElementId, Pair, PowerTable, TwoValuedGroup};
use crate::structure::is_special_with;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub t: ElementId,
    /// Elements `(x, p)` of `A` with `p ∈ t * x`; `(e, t)` comes first.
    pub pairs: Vec<(ElementId, ElementId)>,
    pub group: ExplicitGroup,
}

impl Reconstruction {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        abelian::invariant_factors(&self.group)
    }

    pub fn to_fin_abelian(&self) -> Result<FinAbelianGroup> {
        FinAbelianGroup::from_chain(self.invariant_factors()?)
    }

    /// `(x, p)⁻¹ = (x, p′)` where `t * x = [p, p′]`.
    pub fn inverse(&self, i: usize) -> usize {
        (0..self.size())
            .find(|&j| self.group.op(i, j) == 0)
            .expect("verified group")
    }
}

/// Smallest-index element whose order is not 1, 2 or 4.
pub fn default_t(g: &TwoValuedGroup, powers: &PowerTable) -> Option<ElementId> {
    g.elements()
        .find(|&x| !matches!(powers.order(x), 1 | 2 | 4))
}

/// Builds `(A, •)` and checks it is an abelian group projecting onto `X`.
///
/// Every product is found by testing the (at most four) candidates
/// `z ∈ x * y`, `r ∈ t * z` against the defining conditions; anything other
/// than exactly one survivor is reported as [`Error::NonUniquePair`].
pub fn reconstruct_abelian(g: &TwoValuedGroup, t: Option<ElementId>) -> Result<Reconstruction> {
    if !g.is_involutive() || !g.is_commutative() {
        return Err(Error::PreconditionViolated(
            "group is not involutive commutative".into(),
        ));
    }
    let powers = PowerTable::new(g)?;
    if is_special_with(g, &powers).is_special {
        return Err(Error::PreconditionViolated("group is special".into()));
    }
    let t = match t {
        Some(t) if t.index() >= g.size() => {
            return Err(Error::IndexOutOfRange {
                index: t.index(),
                size: g.size(),
            })
        }
        Some(t) => t,
        None => default_t(g, &powers).ok_or_else(|| {
            Error::PreconditionViolated("every element has order 1, 2 or 4".into())
        })?,
    };
    if matches!(powers.order(t), 1 | 2 | 4) {
        return Err(Error::PreconditionViolated(format!(
            "t = {} has order {}",
            g.name(t),
            powers.order(t)
        )));
    }

    let mut pairs = Vec::new();
    for x in g.elements() {
        let p = g.mul(t, x);
        pairs.push((x, p.lo()));
        if !p.is_doubled() {
            pairs.push((x, p.hi()));
        }
    }
    let index_of = |x: ElementId, p: ElementId| pairs.iter().position(|&q| q == (x, p));
    let tx: Vec<Pair> = g.elements().map(|x| g.mul(t, x)).collect();
    let other = |x: ElementId, p: ElementId| tx[x.index()].other(p).expect("p ∈ t * x");

    let n = pairs.len();
    let mut table = vec![0; n * n];
    for (i, &(x, p)) in pairs.iter().enumerate() {
        let p2 = other(x, p);
        for (j, &(y, q)) in pairs.iter().enumerate().skip(i) {
            let q2 = other(y, q);
            let mut found: Vec<(ElementId, ElementId)> = Vec::new();
            for z in g.mul(x, y).elements() {
                if !g.mul(p, q2).contains(z) || !g.mul(p2, q).contains(z) {
                    continue;
                }
                for r in tx[z.index()].elements() {
                    let r2 = other(z, r);
                    let ok = g.mul(x, q).contains(r)
                        && g.mul(p, y).contains(r)
                        && g.mul(x, q2).contains(r2)
                        && g.mul(p2, y).contains(r2);
                    if ok && !found.contains(&(z, r)) {
                        found.push((z, r));
                    }
                }
            }
            if found.len() != 1 {
                return Err(Error::NonUniquePair(format!(
                    "({}, {}) • ({}, {}) has {} candidates",
                    g.name(x),
                    g.name(p),
                    g.name(y),
                    g.name(q),
                    found.len()
                )));
            }
            let k = index_of(found[0].0, found[0].1).expect("candidate lies in A");
            table[i * n + j] = k;
            table[j * n + i] = k;
        }
    }
    let group = ExplicitGroup::new(n, table)?;
    group.verify_abelian().map_err(|_| Error::NotAssociative)?;
    let rec = Reconstruction { t, pairs, group };
    check_projection(g, &rec)?;
    Ok(rec)
}

/// `π(α) * π(β) = [π(αβ), π(αβ⁻¹)]` with `π(x, p) = x`.
fn check_projection(g: &TwoValuedGroup, rec: &Reconstruction) -> Result<()> {
    let n = rec.size();
    let inv: Vec<usize> = (0..n).map(|i| rec.inverse(i)).collect();
    for i in 0..n {
        let (x, p) = rec.pairs[i];
        if rec.pairs[inv[i]] != (x, g.mul(rec.t, x).other(p).expect("p ∈ t * x")) {
            return Err(Error::NotAssociative);
        }
        for j in 0..n {
            let a = rec.pairs[rec.group.op(i, j)].0;
            let b = rec.pairs[rec.group.op(i, inv[j])].0;
            if g.mul(x, rec.pairs[j].0) != Pair::new(a, b) {
                return Err(Error::NotAssociative);
            }
        }
    }
    Ok(())
}
