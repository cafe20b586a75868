use std::fmt::Debug;
use std::hash::Hash;

/// A finite commutative-or-not ring described by a runtime context value.
///
/// Elements are plain data; every operation goes through the context, so a
/// single `Modulus` value can serve as the ring `Z_m` for all its residues.
pub trait Ring: Clone + PartialEq + Eq + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, k: i64) -> Self::Elem;

    /// Primes `p` for which the ring maps onto `GF(p)` with nil kernel
    /// (after taking all of them together).
    fn residue_primes(&self) -> Vec<u64>;

    /// Image of `a` in `GF(p)` for one of [`Ring::residue_primes`].
    fn residue(&self, a: &Self::Elem, p: u64) -> u64;

    /// Every nilpotent element `x` of the ring satisfies `x^bound = 0`.
    fn nil_index_bound(&self) -> u32;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}
