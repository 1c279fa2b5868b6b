//! Rotation-group model of `Z_M`: elements, subgroups, cosets and the two
//! Chinese-Remainder decompositions.
//!
//! Element indices are 0-based: index `k` is the rotation by `2*pi*k/M` and
//! index 0 is the identity `E` (written `C_M^M` in 1-based notation).

use alloc::vec::Vec;

use crate::arithmetic::{factorize, gcd, mod_inverse, PrimeFactorization};
use crate::error::{Error, Result};

/// The cyclic group of order `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("group order must be at least 1"));
        }
        Ok(CyclicGroup { order })
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Element with canonical index `k`; `k` must lie in `[0, M)`.
    pub fn element(&self, k: u64) -> Result<GroupElement> {
        if k >= self.order {
            return Err(Error::OutOfRange {
                value: k as u128,
                bound: self.order as u128,
            });
        }
        Ok(GroupElement {
            order: self.order,
            index: k,
        })
    }

    /// Element `k mod M`.
    pub fn element_mod(&self, k: u64) -> GroupElement {
        GroupElement {
            order: self.order,
            index: k % self.order,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element_mod(0)
    }

    /// The fundamental rotation `C_M` (index 1).
    pub fn generator(&self) -> GroupElement {
        self.element_mod(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|k| self.element_mod(k))
    }
}

/// Rotation `C_M^k` as an index into a [`CyclicGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    order: u64,
    index: u64,
}

impl GroupElement {
    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    #[inline]
    pub fn group(&self) -> CyclicGroup {
        CyclicGroup { order: self.order }
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    /// Order of the element: `M / gcd(M, k)`.
    pub fn element_order(&self) -> u64 {
        self.order / gcd(self.order as u128, self.index as u128) as u64
    }
}

fn same_group(g: &GroupElement, h: &GroupElement) -> Result<()> {
    if g.order != h.order {
        return Err(Error::MismatchedGroups {
            left: g.order,
            right: h.order,
        });
    }
    Ok(())
}

/// Group product: indices add modulo `M`.
pub fn compose(g: GroupElement, h: GroupElement) -> Result<GroupElement> {
    same_group(&g, &h)?;
    let sum = (g.index as u128 + h.index as u128) % g.order as u128;
    Ok(GroupElement {
        order: g.order,
        index: sum as u64,
    })
}

pub fn inverse(g: GroupElement) -> GroupElement {
    GroupElement {
        order: g.order,
        index: (g.order - g.index) % g.order,
    }
}

/// `g^t`.
pub fn power(g: GroupElement, t: u64) -> GroupElement {
    let idx = (g.index as u128 * t as u128) % g.order as u128;
    GroupElement {
        order: g.order,
        index: idx as u64,
    }
}

/// The cyclic subgroup generated by `g`, sorted by index.
pub fn subgroup_generated(g: GroupElement) -> Vec<GroupElement> {
    // <g> = <C^gcd(M, k)>
    let step = gcd(g.order as u128, g.index as u128) as u64;
    (0..g.order / step)
        .map(|t| GroupElement {
            order: g.order,
            index: t * step,
        })
        .collect()
}

/// A coset `rep * <generator>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    pub representative: GroupElement,
    pub subgroup_generator: GroupElement,
    /// Members `rep * g^t` for `t = 0, 1, ...` until the cycle closes.
    pub members: Vec<GroupElement>,
}

impl Coset {
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.iter().any(|m| m == g)
    }

    /// Left translate `g * coset`, as an index set sorted ascending.
    pub fn translate(&self, g: GroupElement) -> Result<Vec<GroupElement>> {
        let mut out = self
            .members
            .iter()
            .map(|&m| compose(g, m))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn sorted_members(&self) -> Vec<GroupElement> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }
}

/// Partition of `group` into cosets of `<subgroup_gen>`, each represented by
/// its smallest index, ordered by representative.
pub fn coset_partition(group: CyclicGroup, subgroup_gen: GroupElement) -> Result<Vec<Coset>> {
    if subgroup_gen.order != group.order {
        return Err(Error::MismatchedGroups {
            left: group.order,
            right: subgroup_gen.order,
        });
    }
    let size = subgroup_gen.element_order();
    // Cosets of <C^s> with s = gcd(M, k) are the residue classes mod s, so the
    // minimal representatives are exactly 0..s.
    let count = group.order / size;
    let cosets = (0..count)
        .map(|rep| {
            let representative = group.element_mod(rep);
            let members = (0..size)
                .map(|t| {
                    let idx = (rep as u128 + subgroup_gen.index as u128 * t as u128)
                        % group.order as u128;
                    group.element_mod(idx as u64)
                })
                .collect();
            Coset {
                representative,
                subgroup_generator: subgroup_gen,
                members,
            }
        })
        .collect();
    Ok(cosets)
}

/// `true` when every coset is mapped onto itself by every subgroup element,
/// i.e. `C^{i + j*s} H = C^i H`.
pub fn cosets_repeat_cyclically(cosets: &[Coset]) -> Result<bool> {
    for coset in cosets {
        let own = coset.sorted_members();
        for h in subgroup_generated(coset.subgroup_generator) {
            if coset.translate(h)? != own {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// CRT residues `(k mod b_i^e_i)` in ascending prime order.
pub fn crt_residues(k: GroupElement) -> Result<Vec<u64>> {
    if k.order < 2 {
        return Ok(Vec::new());
    }
    let f = factorize(k.order as u128)?;
    Ok(f.prime_powers()
        .into_iter()
        .map(|q| (k.index as u128 % q) as u64)
        .collect())
}

/// Inverse of [`crt_residues`].
pub fn crt_reconstruct(group: CyclicGroup, residues: &[u64]) -> Result<GroupElement> {
    let n = group.order as u128;
    if n < 2 {
        return Ok(group.identity());
    }
    let f = factorize(n)?;
    let moduli = f.prime_powers();
    if residues.len() != moduli.len() {
        return Err(Error::LengthMismatch {
            expected: moduli.len(),
            actual: residues.len(),
        });
    }
    let mut acc = 0u128;
    for (&r, &q) in residues.iter().zip(&moduli) {
        if r as u128 >= q {
            return Err(Error::OutOfRange {
                value: r as u128,
                bound: q,
            });
        }
        let m = n / q;
        let inv = mod_inverse(m % q, q).ok_or(Error::NotCoprime { a: m, n: q })?;
        acc = (acc + r as u128 * m % n * inv) % n;
    }
    Ok(group.element_mod(acc as u64))
}

fn square_free_factorization(order: u64) -> Result<PrimeFactorization> {
    let f = factorize(order as u128)?;
    if !f.is_square_free() {
        return Err(Error::NotSquareFree(order as u128));
    }
    Ok(f)
}

/// Coordinates `(k_1, ..., k_m)` with `k_i in [0, b_i)` such that
/// `k = sum_i (N / b_i) * k_i (mod N)`, one per prime-order subgroup
/// generator `C_N^{N/b_i}` in ascending prime order.
pub fn subgroup_decompose(k: GroupElement) -> Result<Vec<u64>> {
    if k.order < 2 {
        return Ok(Vec::new());
    }
    let f = square_free_factorization(k.order)?;
    let n = k.order as u128;
    f.primes()
        .map(|b| {
            let m = n / b;
            let inv = mod_inverse(m % b, b).ok_or(Error::NotCoprime { a: m, n: b })?;
            Ok(((k.index as u128 % b) * inv % b) as u64)
        })
        .collect()
}

/// Inverse of [`subgroup_decompose`].
pub fn subgroup_compose(group: CyclicGroup, coords: &[u64]) -> Result<GroupElement> {
    if group.order < 2 {
        return Ok(group.identity());
    }
    let f = square_free_factorization(group.order)?;
    let n = group.order as u128;
    let primes: Vec<u128> = f.primes().collect();
    if coords.len() != primes.len() {
        return Err(Error::LengthMismatch {
            expected: primes.len(),
            actual: coords.len(),
        });
    }
    let mut acc = 0u128;
    for (&c, &b) in coords.iter().zip(&primes) {
        if c as u128 >= b {
            return Err(Error::OutOfRange {
                value: c as u128,
                bound: b,
            });
        }
        acc = (acc + (n / b) * c as u128) % n;
    }
    Ok(group.element_mod(acc as u64))
}

/// The extended group `G^{N,a}` of order `a * N`, with `gcd(N, a) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedGroupSpec {
    n: u64,
    a: u64,
    order: u64,
    factorization: PrimeFactorization,
}

impl ExtendedGroupSpec {
    /// `a = 1` is accepted and degenerates to `G^N` itself.
    pub fn new(n: u64, a: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n as u128));
        }
        if a == 0 {
            return Err(Error::InvalidArgument("base a must be positive"));
        }
        if gcd(n as u128, a as u128) != 1 {
            return Err(Error::NotCoprime {
                a: a as u128,
                n: n as u128,
            });
        }
        let order = n.checked_mul(a).ok_or(Error::Overflow("group order a*N"))?;
        Ok(ExtendedGroupSpec {
            n,
            a,
            order,
            factorization: factorize(n as u128)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// `M = a * N`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factorization(&self) -> &PrimeFactorization {
        &self.factorization
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup { order: self.order }
    }

    /// `C_a = C_{aN}^N`, generating the copy of `G^a`.
    pub fn g_a_generator(&self) -> GroupElement {
        self.group().element_mod(self.n)
    }

    /// `C_N = C_{aN}^a`, generating the copy of `G^N`.
    pub fn g_n_generator(&self) -> GroupElement {
        self.group().element_mod(self.a)
    }
}

/// How a slice index of `G^{N,a}` is split into two coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceConvention {
    /// Cosets of `G^N`: `x = i' + j' * a`, `i' in [0, a)`, `j' in [0, N)`.
    ByN,
    /// Cosets of `G^a`: `x = i + j * N`, `i in [0, N)`, `j in [0, a)`.
    ByA,
}

/// Split `x mod aN` into `(i, j)` under `convention`.
pub fn slice_coordinates(
    x: u64,
    spec: &ExtendedGroupSpec,
    convention: SliceConvention,
) -> (u64, u64) {
    let x = x % spec.order;
    let stride = match convention {
        SliceConvention::ByN => spec.a,
        SliceConvention::ByA => spec.n,
    };
    (x % stride, x / stride)
}

/// Inverse of [`slice_coordinates`] on `[0, aN)`.
pub fn slice_recompose(
    i: u64,
    j: u64,
    spec: &ExtendedGroupSpec,
    convention: SliceConvention,
) -> Result<u64> {
    let (stride, other) = match convention {
        SliceConvention::ByN => (spec.a, spec.n),
        SliceConvention::ByA => (spec.n, spec.a),
    };
    if i >= stride {
        return Err(Error::OutOfRange {
            value: i as u128,
            bound: stride as u128,
        });
    }
    if j >= other {
        return Err(Error::OutOfRange {
            value: j as u128,
            bound: other as u128,
        });
    }
    Ok(i + j * stride)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[GroupElement]) -> Vec<u64> {
        v.iter().map(|g| g.index()).collect()
    }

    #[test]
    fn compose_examples() {
        let g15 = CyclicGroup::new(15).unwrap();
        let c = compose(g15.element(5).unwrap(), g15.element(3).unwrap()).unwrap();
        assert_eq!(c.index(), 8);
        let g = g15.element(11).unwrap();
        assert_eq!(compose(g, g15.identity()).unwrap(), g);
        let g6 = CyclicGroup::new(6).unwrap();
        let c = compose(g6.element(3).unwrap(), g6.element(2).unwrap()).unwrap();
        assert_eq!(c.index(), 5);
        assert_eq!(
            compose(g6.identity(), g15.identity()),
            Err(Error::MismatchedGroups { left: 6, right: 15 })
        );
    }

    #[test]
    fn inverse_examples() {
        let g6 = CyclicGroup::new(6).unwrap();
        assert_eq!(inverse(g6.element(2).unwrap()).index(), 4);
        assert_eq!(inverse(g6.identity()), g6.identity());
        assert_eq!(inverse(g6.element(3).unwrap()).index(), 3);
    }

    #[test]
    fn element_rejects_out_of_range() {
        let g6 = CyclicGroup::new(6).unwrap();
        assert!(g6.element(6).is_err());
        assert_eq!(g6.element_mod(13).index(), 1);
        assert!(CyclicGroup::new(0).is_err());
    }

    #[test]
    fn subgroup_examples() {
        let g6 = CyclicGroup::new(6).unwrap();
        assert_eq!(idx(&subgroup_generated(g6.element(3).unwrap())), [0, 3]);
        assert_eq!(idx(&subgroup_generated(g6.element(2).unwrap())), [0, 2, 4]);
        assert_eq!(idx(&subgroup_generated(g6.identity())), [0]);
        assert_eq!(subgroup_generated(g6.element(5).unwrap()).len(), 6);
        assert_eq!(subgroup_generated(g6.element(4).unwrap()).len(), 3);
    }

    #[test]
    fn group_axioms_exhaustive() {
        for m in 1..=64u64 {
            let g = CyclicGroup::new(m).unwrap();
            for x in g.elements() {
                assert_eq!(compose(x, g.identity()).unwrap(), x);
                assert_eq!(compose(x, inverse(x)).unwrap(), g.identity());
                for y in g.elements() {
                    assert_eq!(compose(x, y).unwrap(), compose(y, x).unwrap());
                    if m <= 24 {
                        for z in g.elements() {
                            let l = compose(compose(x, y).unwrap(), z).unwrap();
                            let r = compose(x, compose(y, z).unwrap()).unwrap();
                            assert_eq!(l, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_examples_g30() {
        let g30 = CyclicGroup::new(30).unwrap();
        let pairs = coset_partition(g30, g30.element(15).unwrap()).unwrap();
        assert_eq!(pairs.len(), 15);
        for c in &pairs {
            assert_eq!(c.members.len(), 2);
            assert_eq!(c.members[1].index(), c.members[0].index() + 15);
        }
        let halves = coset_partition(g30, g30.element(2).unwrap()).unwrap();
        assert_eq!(halves.len(), 2);
        assert!(halves[0].members.iter().all(|g| g.index() % 2 == 0));
        assert!(halves[1].members.iter().all(|g| g.index() % 2 == 1));
        let whole = coset_partition(g30, g30.element(1).unwrap()).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].members.len(), 30);
    }

    #[test]
    fn coset_partition_properties() {
        for m in 1..=40u64 {
            let g = CyclicGroup::new(m).unwrap();
            for gen in g.elements() {
                let cosets = coset_partition(g, gen).unwrap();
                let mut seen = alloc::vec![false; m as usize];
                let size = cosets[0].members.len();
                for c in &cosets {
                    assert_eq!(c.members.len(), size);
                    assert_eq!(c.representative, *c.sorted_members().first().unwrap());
                    for x in &c.members {
                        assert!(!seen[x.index() as usize]);
                        seen[x.index() as usize] = true;
                    }
                }
                assert!(seen.iter().all(|&s| s));
                assert!(cosets_repeat_cyclically(&cosets).unwrap());
            }
        }
    }

    #[test]
    fn crt_residue_examples() {
        let g15 = CyclicGroup::new(15).unwrap();
        assert_eq!(crt_residues(g15.element(8).unwrap()).unwrap(), [2, 3]);
        assert_eq!(crt_residues(g15.identity()).unwrap(), [0, 0]);
        let g6 = CyclicGroup::new(6).unwrap();
        assert_eq!(crt_residues(g6.element(5).unwrap()).unwrap(), [1, 2]);
        let g12 = CyclicGroup::new(12).unwrap();
        assert_eq!(crt_residues(g12.element(7).unwrap()).unwrap(), [3, 1]);
    }

    #[test]
    fn crt_residues_are_bijective() {
        for n in [6u64, 12, 15, 21, 30, 36] {
            let g = CyclicGroup::new(n).unwrap();
            let mut seen = alloc::collections::BTreeSet::new();
            for k in g.elements() {
                let r = crt_residues(k).unwrap();
                assert_eq!(crt_reconstruct(g, &r).unwrap(), k);
                assert!(seen.insert(r));
            }
            assert_eq!(seen.len() as u64, n);
        }
    }

    #[test]
    fn subgroup_decompose_examples() {
        let g15 = CyclicGroup::new(15).unwrap();
        assert_eq!(subgroup_decompose(g15.element(8).unwrap()).unwrap(), [1, 1]);
        assert_eq!(
            subgroup_decompose(g15.element(13).unwrap()).unwrap(),
            [2, 1]
        );
        assert_eq!(subgroup_decompose(g15.identity()).unwrap(), [0, 0]);
        let g12 = CyclicGroup::new(12).unwrap();
        assert_eq!(
            subgroup_decompose(g12.element(1).unwrap()),
            Err(Error::NotSquareFree(12))
        );
    }

    #[test]
    fn subgroup_round_trip() {
        for n in [2u64, 6, 15, 21, 30, 105] {
            let g = CyclicGroup::new(n).unwrap();
            for k in g.elements() {
                let c = subgroup_decompose(k).unwrap();
                assert_eq!(subgroup_compose(g, &c).unwrap(), k);
            }
        }
    }

    #[test]
    fn extended_group_validation() {
        let spec = ExtendedGroupSpec::new(15, 2).unwrap();
        assert_eq!(spec.order(), 30);
        assert_eq!(spec.g_a_generator().index(), 15);
        assert_eq!(spec.g_n_generator().index(), 2);
        assert!(ExtendedGroupSpec::new(15, 3).is_err());
        assert!(ExtendedGroupSpec::new(1, 3).is_err());
    }

    #[test]
    fn slice_examples() {
        let s = ExtendedGroupSpec::new(15, 2).unwrap();
        assert_eq!(slice_coordinates(5, &s, SliceConvention::ByN), (1, 2));
        assert_eq!(slice_coordinates(0, &s, SliceConvention::ByN), (0, 0));
        let s = ExtendedGroupSpec::new(21, 10).unwrap();
        assert_eq!(slice_coordinates(13, &s, SliceConvention::ByN), (3, 1));
        assert_eq!(slice_coordinates(13, &s, SliceConvention::ByA), (13, 0));
        assert_eq!(slice_coordinates(213, &s, SliceConvention::ByN), (3, 0));
    }

    #[test]
    fn slice_round_trip() {
        for (n, a) in [(15u64, 2u64), (21, 10), (6, 5), (6, 7)] {
            let s = ExtendedGroupSpec::new(n, a).unwrap();
            for x in 0..s.order() {
                for conv in [SliceConvention::ByN, SliceConvention::ByA] {
                    let (i, j) = slice_coordinates(x, &s, conv);
                    assert_eq!(slice_recompose(i, j, &s, conv).unwrap(), x);
                }
            }
        }
    }
}
