//! Structural analysis of involutive commutative two-valued groups: the
//! Boolean subgroup `V` of elements of order ≤ 2 and its partial action,
//! speciality, subgroups and quotients, homomorphisms, splitting off
//! single-valued direct factors, and branching sets of `C₂`-extensions.

use std::collections::BTreeSet;

use crate::constructions::product_with_boolean;
use crate::error::{Error, Result};
use crate::gf2::LinearSystem;
use crate::group::{ElementId, Pair, PowerTable, TwoValuedGroup};

const E: ElementId = ElementId::IDENTITY;

fn require_involutive_commutative_table(g: &TwoValuedGroup) -> Result<PowerTable> {
    if !g.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    if !g.is_commutative() {
        return Err(Error::NotCommutative);
    }
    PowerTable::new(g)
}

/// `x · y = z` when `x * y = [z, z]`, undefined otherwise.
pub fn v_dot(g: &TwoValuedGroup, a: ElementId, b: ElementId) -> Option<ElementId> {
    let p = g.mul(a, b);
    p.is_doubled().then_some(p.lo())
}

/// The Boolean group `V = {e} ∪ {x : ord x = 2}` and its orbits on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanSubgroupData {
    pub members: Vec<ElementId>,
    pub dim: usize,
    /// Orbit id of every element; orbits are numbered by smallest member.
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<ElementId>>,
}

impl BooleanSubgroupData {
    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

pub fn boolean_subgroup(g: &TwoValuedGroup) -> Result<BooleanSubgroupData> {
    let powers = require_involutive_commutative_table(g)?;
    boolean_subgroup_with(g, &powers)
}

pub(crate) fn boolean_subgroup_with(
    g: &TwoValuedGroup,
    powers: &PowerTable,
) -> Result<BooleanSubgroupData> {
    let members: Vec<ElementId> = g.elements().filter(|&x| powers.order(x) <= 2).collect();
    let dim = members.len().trailing_zeros() as usize;
    if 1 << dim != members.len() {
        return Err(Error::PreconditionViolated(format!(
            "{} elements of order at most 2 is not a power of two",
            members.len()
        )));
    }
    let mut orbit_of = vec![usize::MAX; g.size()];
    let mut orbits = Vec::new();
    for x in g.elements() {
        if orbit_of[x.index()] != usize::MAX {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for &v in &members {
            let y = v_dot(g, v, x).ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "{v} · {x} is undefined for an order-2 element"
                ))
            })?;
            orbit.insert(y);
        }
        for y in &orbit {
            orbit_of[y.index()] = orbits.len();
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(BooleanSubgroupData {
        members,
        dim,
        orbit_of,
        orbits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialReport {
    pub is_special: bool,
    /// Pairs `x < y` of order > 2 elements with a doubled product.
    pub special_pairs: Vec<(ElementId, ElementId)>,
}

pub fn is_special(g: &TwoValuedGroup) -> Result<SpecialReport> {
    let powers = require_involutive_commutative_table(g)?;
    Ok(is_special_with(g, &powers))
}

pub(crate) fn is_special_with(g: &TwoValuedGroup, powers: &PowerTable) -> SpecialReport {
    let big: Vec<ElementId> = g.elements().filter(|&x| powers.order(x) > 2).collect();
    let mut special_pairs = Vec::new();
    for (i, &x) in big.iter().enumerate() {
        for &y in &big[i + 1..] {
            if g.mul(x, y).is_doubled() {
                special_pairs.push((x, y));
            }
        }
    }
    SpecialReport {
        is_special: !special_pairs.is_empty(),
        special_pairs,
    }
}

/// A set of elements closed under the two-valued product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<ElementId>,
}

impl Subgroup {
    /// Checks closure and that the identity is present.
    pub fn new(g: &TwoValuedGroup, members: impl IntoIterator<Item = ElementId>) -> Result<Self> {
        let members: BTreeSet<ElementId> = members.into_iter().collect();
        if !members.contains(&E) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        if let Some(&m) = members.iter().find(|m| m.index() >= g.size()) {
            return Err(Error::IndexOutOfRange {
                index: m.index(),
                size: g.size(),
            });
        }
        for &a in &members {
            for &b in &members {
                let p = g.mul(a, b);
                if !members.contains(&p.lo()) || !members.contains(&p.hi()) {
                    return Err(Error::NotSubgroup(format!(
                        "{} * {} = [{}, {}] leaves the set",
                        g.name(a),
                        g.name(b),
                        g.name(p.lo()),
                        g.name(p.hi())
                    )));
                }
            }
        }
        Ok(Subgroup {
            members: members.into_iter().collect(),
        })
    }

    pub fn whole(g: &TwoValuedGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![E] }
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// `Q = {x² : x ∈ X}`, checked to be closed.
pub fn squares_subgroup(g: &TwoValuedGroup) -> Result<Subgroup> {
    let powers = require_involutive_commutative_table(g)?;
    squares_subgroup_with(g, &powers)
}

pub(crate) fn squares_subgroup_with(g: &TwoValuedGroup, powers: &PowerTable) -> Result<Subgroup> {
    let squares: BTreeSet<ElementId> = g.elements().map(|x| powers.square(x)).collect();
    Subgroup::new(g, squares).map_err(|e| match e {
        Error::NotSubgroup(msg) => Error::ClosureViolation(msg),
        other => other,
    })
}

/// Least closed set containing `s ∪ {e}`.
pub fn subgroup_closure(g: &TwoValuedGroup, s: &[ElementId]) -> Result<Subgroup> {
    let mut set: BTreeSet<ElementId> = s.iter().copied().collect();
    set.insert(E);
    if let Some(&m) = set.iter().find(|m| m.index() >= g.size()) {
        return Err(Error::IndexOutOfRange {
            index: m.index(),
            size: g.size(),
        });
    }
    loop {
        let mut added = Vec::new();
        for &a in &set {
            for &b in &set {
                for z in g.mul(a, b).elements() {
                    if !set.contains(&z) {
                        added.push(z);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        set.extend(added);
    }
    Ok(Subgroup {
        members: set.into_iter().collect(),
    })
}

/// The group structure carried by a subgroup, elements in index order.
pub fn restrict_to_subgroup(g: &TwoValuedGroup, sub: &Subgroup) -> TwoValuedGroup {
    let mut local = vec![usize::MAX; g.size()];
    for (i, m) in sub.members().iter().enumerate() {
        local[m.index()] = i;
    }
    let names = sub
        .members()
        .iter()
        .map(|&m| g.name(m).to_string())
        .collect();
    TwoValuedGroup::from_fn_named(names, |a, b| {
        let p = g.mul(sub.members()[a], sub.members()[b]);
        (local[p.lo().index()], local[p.hi().index()])
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: TwoValuedGroup,
    /// Class index of every element of the original group.
    pub projection: Vec<ElementId>,
}

/// `X / Y` for `x ∼ x'` iff `x' ∈ x * y` for some `y ∈ Y`.
///
/// Classes are ordered and named by their smallest member.
pub fn quotient(g: &TwoValuedGroup, y: &Subgroup) -> Result<Quotient> {
    require_involutive_commutative_table(g)?;
    let y = Subgroup::new(g, y.members().iter().copied())?;
    let n = g.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in g.elements() {
        for &m in y.members() {
            for z in g.mul(x, m).elements() {
                let (a, b) = (find(&mut parent, x.index()), find(&mut parent, z.index()));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut class_of_root = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut projection = vec![E; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = reps.len();
            reps.push(x);
        }
        projection[x] = ElementId::new(class_of_root[r]);
    }
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", g.names()[r]))
        .collect();
    let group = TwoValuedGroup::from_fn_named(names, |a, b| {
        let p = g.mul(reps[a].into(), reps[b].into());
        (
            projection[p.lo().index()].index(),
            projection[p.hi().index()].index(),
        )
    });
    for a in g.elements() {
        for b in g.elements() {
            let induced = g.mul(a, b).map(|z| projection[z.index()]);
            if induced != group.mul(projection[a.index()], projection[b.index()]) {
                return Err(Error::PreconditionViolated(
                    "induced multiplication on classes is not well defined".into(),
                ));
            }
        }
    }
    Ok(Quotient { group, projection })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismData {
    pub kernel: Subgroup,
    pub image: Subgroup,
    /// Whether `X / ker f → im f` is a bijective homomorphism.
    pub induces_isomorphism: bool,
}

/// Checks `f(x * y) = f(x) * f(y)` as multisets for all `x, y`.
///
/// Returns `None` when `f` is not a homomorphism; otherwise kernel, image and
/// the outcome of the homomorphism-theorem check.
pub fn is_homomorphism(
    x: &TwoValuedGroup,
    z: &TwoValuedGroup,
    f: &[ElementId],
) -> Result<Option<HomomorphismData>> {
    if f.len() != x.size() {
        return Err(Error::PreconditionViolated(format!(
            "map has {} entries for a group of size {}",
            f.len(),
            x.size()
        )));
    }
    if let Some(v) = f.iter().find(|v| v.index() >= z.size()) {
        return Err(Error::IndexOutOfRange {
            index: v.index(),
            size: z.size(),
        });
    }
    if !preserves_products(x, z, f) {
        return Ok(None);
    }
    let kernel_members = x.elements().filter(|a| f[a.index()] == E);
    let kernel = Subgroup::new(x, kernel_members)?;
    let image = Subgroup::new(z, f.iter().copied())?;
    let q = quotient(x, &kernel)?;
    let mut induced = vec![E; q.group.size()];
    for a in x.elements() {
        induced[q.projection[a.index()].index()] = f[a.index()];
    }
    let distinct: BTreeSet<ElementId> = induced.iter().copied().collect();
    let induces_isomorphism = distinct.len() == induced.len()
        && distinct.len() == image.len()
        && preserves_products(&q.group, z, &induced);
    Ok(Some(HomomorphismData {
        kernel,
        image,
        induces_isomorphism,
    }))
}

pub(crate) fn preserves_products(x: &TwoValuedGroup, z: &TwoValuedGroup, f: &[ElementId]) -> bool {
    x.elements().all(|a| {
        x.elements()
            .all(|b| x.mul(a, b).map(|c| f[c.index()]) == z.mul(f[a.index()], f[b.index()]))
    })
}

/// `X ≅ X′ × C₂^m` with `X′` free of single-valued direct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSplit {
    pub factor: TwoValuedGroup,
    pub boolean_rank: usize,
    /// Isomorphism `X → product_with_boolean(factor, boolean_rank)`.
    pub embedding: Vec<ElementId>,
}

/// Splits off one `C₂` at a time, always using the smallest-index order-2
/// element that is not a square, until every order-2 element is a square.
pub fn split_direct_factor(g: &TwoValuedGroup) -> Result<DirectSplit> {
    require_involutive_commutative_table(g)?;
    let mut current = g.clone();
    // position of every original element in current × C₂^m
    let mut to_factor: Vec<ElementId> = g.elements().collect();
    let mut mask = vec![0usize; g.size()];
    let mut m = 0;
    loop {
        let powers = PowerTable::new(&current)?;
        let squares = squares_subgroup_with(&current, &powers)?;
        let witness = current
            .elements()
            .find(|&w| powers.order(w) == 2 && !squares.contains(w));
        let Some(w) = witness else { break };
        let f = solve_character(&current, w)?;
        let kernel = Subgroup::new(&current, [E, w])?;
        let q = quotient(&current, &kernel)?;
        let step: Vec<ElementId> = current
            .elements()
            .map(|x| {
                let bit = f[x.index()] as usize;
                ElementId::new(bit * q.group.size() + q.projection[x.index()].index())
            })
            .collect();
        if !preserves_products(&current, &product_with_boolean(&q.group, 1), &step) {
            return Err(Error::InconsistentSystem);
        }
        for x in 0..g.size() {
            let c = to_factor[x].index();
            mask[x] = (mask[x] << 1) | f[c] as usize;
            to_factor[x] = q.projection[c];
        }
        current = q.group;
        m += 1;
    }
    let embedding = (0..g.size())
        .map(|x| ElementId::new(mask[x] * current.size() + to_factor[x].index()))
        .collect();
    Ok(DirectSplit {
        factor: current,
        boolean_rank: m,
        embedding,
    })
}

/// A homomorphism `f: X → {e, w}` with `f(w) = w`, encoded as bits.
///
/// `f` is a homomorphism iff `f(x) f(y) f(z) = e` whenever `z ∈ x * y`, a
/// homogeneous F₂ system; `f(w) = 1` is appended as an inhomogeneous row.
pub fn solve_character(g: &TwoValuedGroup, w: ElementId) -> Result<Vec<bool>> {
    let mut system = LinearSystem::new(g.size());
    for x in g.elements() {
        for y in g.elements().filter(|&y| y >= x) {
            let p = g.mul(x, y);
            for z in p.elements() {
                system.add_equation(&[x.index(), y.index(), z.index()], false);
            }
        }
    }
    system.add_equation(&[w.index()], true);
    system.solve().ok_or(Error::InconsistentSystem)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingData {
    /// `X = X̂ / {e, u}`.
    pub base: TwoValuedGroup,
    pub projection: Vec<ElementId>,
    /// Order-2 elements of the base with a single order-4 preimage.
    pub branching: Vec<ElementId>,
    /// `V ∖ R` where `V` is the Boolean subgroup of the base.
    pub complement: Vec<ElementId>,
    pub complement_is_subgroup: bool,
}

pub fn branching_set(extension: &TwoValuedGroup, u: ElementId) -> Result<BranchingData> {
    let powers = require_involutive_commutative_table(extension)?;
    if u.index() >= extension.size() {
        return Err(Error::IndexOutOfRange {
            index: u.index(),
            size: extension.size(),
        });
    }
    if powers.order(u) != 2 {
        return Err(Error::NotOrderTwo(u));
    }
    let q = quotient(extension, &Subgroup::new(extension, [E, u])?)?;
    let base_powers = PowerTable::new(&q.group)?;
    let v = boolean_subgroup_with(&q.group, &base_powers)?;
    let mut branching = Vec::new();
    for &x in v.members.iter().filter(|&&x| x != E) {
        let pre: Vec<ElementId> = extension
            .elements()
            .filter(|a| q.projection[a.index()] == x)
            .collect();
        if pre.len() == 1 && powers.order(pre[0]) == 4 {
            branching.push(x);
        }
    }
    let complement: Vec<ElementId> = v
        .members
        .iter()
        .copied()
        .filter(|x| !branching.contains(x))
        .collect();
    let complement_is_subgroup = complement.iter().all(|&a| {
        complement
            .iter()
            .all(|&b| v_dot(&q.group, a, b).is_some_and(|c| complement.contains(&c)))
    });
    Ok(BranchingData {
        base: q.group,
        projection: q.projection,
        branching,
        complement,
        complement_is_subgroup,
    })
}

/// Preimage sizes under a projection, indexed by class.
pub fn fibre_sizes(projection: &[ElementId], classes: usize) -> Vec<usize> {
    let mut sizes = vec![0; classes];
    for p in projection {
        sizes[p.index()] += 1;
    }
    sizes
}

/// `x * y` as a pair of V-orbit ids, a convenience for orbit-level checks.
pub fn orbit_pair(data: &BooleanSubgroupData, p: Pair) -> (usize, usize) {
    let (a, b) = (data.orbit_of[p.lo().index()], data.orbit_of[p.hi().index()]);
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbelianGroup;
    use crate::constructions::{double, principal, special_series, unipotent};
    use crate::group::verify_axioms;

    fn id(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn boolean_subgroups() {
        let y2 = special_series(2).unwrap();
        let v = boolean_subgroup(&y2).unwrap();
        assert_eq!(v.members, vec![id(0), id(1)]);
        assert_eq!(v.dim, 1);
        assert_eq!(boolean_subgroup(&unipotent(2).unwrap()).unwrap().dim, 2);
        let c5 = principal(&[5]).unwrap();
        let v = boolean_subgroup(&c5).unwrap();
        assert_eq!(v.members, vec![id(0)]);
        assert_eq!(v.dim, 0);
        assert_eq!(v.orbits.len(), 3);
    }

    #[test]
    fn v_dot_examples() {
        let y2 = special_series(2).unwrap();
        assert_eq!(v_dot(&y2, id(1), id(2)), Some(id(2)));
        assert_eq!(v_dot(&y2, id(0), id(3)), Some(id(3)));
        let c5 = principal(&[5]).unwrap();
        assert_eq!(v_dot(&c5, id(1), id(2)), None);
    }

    #[test]
    fn speciality() {
        let y2 = special_series(2).unwrap();
        let r = is_special(&y2).unwrap();
        assert!(r.is_special);
        assert_eq!(r.special_pairs.len(), 3);
        assert!(!is_special(&unipotent(2).unwrap()).unwrap().is_special);
        assert!(!is_special(&principal(&[5]).unwrap()).unwrap().is_special);
        let c3 = double(&FinAbelianGroup::new(vec![3]).unwrap());
        assert_eq!(is_special(&c3), Err(Error::NotInvolutive));
    }

    #[test]
    fn squares() {
        let y2 = special_series(2).unwrap();
        assert_eq!(squares_subgroup(&y2).unwrap().members(), &[id(0), id(1)]);
        let d = double(&FinAbelianGroup::boolean(2));
        assert_eq!(squares_subgroup(&d).unwrap().members(), &[id(0)]);
        // C₆ orbits: (0), (1)~(5), (2)~(4), (3); squares of C₆ are 0, 2, 4
        let c6 = principal(&[6]).unwrap();
        assert_eq!(squares_subgroup(&c6).unwrap().members(), &[id(0), id(2)]);
    }

    #[test]
    fn closures() {
        let y2 = special_series(2).unwrap();
        assert_eq!(
            subgroup_closure(&y2, &[id(1)]).unwrap().members(),
            &[id(0), id(1)]
        );
        assert_eq!(subgroup_closure(&y2, &[id(0)]).unwrap().members(), &[id(0)]);
        assert_eq!(
            subgroup_closure(&y2, &[id(2)]).unwrap().members(),
            &[id(0), id(1), id(2)]
        );
    }

    #[test]
    fn quotients() {
        let y2 = special_series(2).unwrap();
        let q = quotient(&y2, &Subgroup::new(&y2, [id(0), id(1)]).unwrap()).unwrap();
        assert_eq!(
            q.group.cells(),
            double(&FinAbelianGroup::boolean(2)).cells()
        );

        let whole = quotient(&y2, &Subgroup::whole(&y2)).unwrap();
        assert_eq!(whole.group.size(), 1);

        // principal(4) = {π0, π1, π2}, v = π2
        let p4 = principal(&[4]).unwrap();
        let q = quotient(&p4, &Subgroup::new(&p4, [id(0), id(2)]).unwrap()).unwrap();
        assert_eq!(q.group.size(), 2);
        assert_eq!(q.group.mul(id(1), id(1)), Pair::doubled(id(0)));
        assert_eq!(q.projection, vec![id(0), id(1), id(0)]);

        assert!(matches!(
            quotient(
                &y2,
                &Subgroup {
                    members: vec![id(0), id(2)]
                }
            ),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn homomorphisms() {
        let y2 = special_series(2).unwrap();
        let y = Subgroup::new(&y2, [id(0), id(1)]).unwrap();
        let q = quotient(&y2, &y).unwrap();
        let h = is_homomorphism(&y2, &q.group, &q.projection)
            .unwrap()
            .unwrap();
        assert_eq!(h.kernel, y);
        assert!(h.induces_isomorphism);

        let trivial = crate::constructions::double(&FinAbelianGroup::trivial());
        let h = is_homomorphism(&y2, &trivial, &[id(0); 5])
            .unwrap()
            .unwrap();
        assert_eq!(h.kernel.len(), 5);

        // swapping s and x does not preserve products
        let bad = vec![id(0), id(2), id(1), id(3), id(4)];
        assert_eq!(is_homomorphism(&y2, &y2, &bad).unwrap(), None);
    }

    #[test]
    fn direct_factor_splitting() {
        let u1 = unipotent(1).unwrap();
        let x = product_with_boolean(&u1, 1);
        let s = split_direct_factor(&x).unwrap();
        assert_eq!(s.boolean_rank, 1);
        assert_eq!(s.factor.size(), 3);
        let target = product_with_boolean(&s.factor, 1);
        assert!(preserves_products(&x, &target, &s.embedding));

        let y2 = special_series(2).unwrap();
        let s = split_direct_factor(&y2).unwrap();
        assert_eq!(s.boolean_rank, 0);
        assert_eq!(s.factor, y2);

        let d = double(&FinAbelianGroup::boolean(2));
        let s = split_direct_factor(&d).unwrap();
        assert_eq!((s.factor.size(), s.boolean_rank), (1, 2));
        let target = product_with_boolean(&s.factor, 2);
        assert!(preserves_products(&d, &target, &s.embedding));
    }

    #[test]
    fn branching_sets() {
        let p4 = principal(&[4]).unwrap();
        let b = branching_set(&p4, id(2)).unwrap();
        assert_eq!(b.base.size(), 2);
        assert_eq!(b.branching, vec![id(1)]);
        assert!(b.complement_is_subgroup);
        assert_eq!(branching_set(&p4, id(1)), Err(Error::NotOrderTwo(id(1))));

        // X × 2C₂ with u the generator of the Boolean factor
        let x = product_with_boolean(&p4, 1);
        let u = id(3);
        let b = branching_set(&x, u).unwrap();
        assert!(b.branching.is_empty());
        assert!(b.complement_is_subgroup);
        assert!(verify_axioms(&b.base).is_involutive_commutative_group());
    }
}
