//! Exhaustive property checks over small finite rings.
//!
//! Every predicate enumerates the whole ring, so each call is guarded by a
//! size cap and returns [`Error::ResourceCap`] past it.

mod ring;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use ring::{Factor, RingDescriptor};

use crate::error::{Error, Result};
use crate::matrix::{inverse, RingMatrix};
use crate::residue::Modulus;

/// Cap on ring size for element-wise scans.
pub const SCAN_CAP: u128 = 1_000_000;
/// Cap on ring size for scans over pairs of elements.
pub const PAIRWISE_CAP: u128 = 10_000;

pub type Elem = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    TwoNilClean,
    StronglyTwoNilClean,
    NilClean,
    WeaklyNilClean,
    Tripotent,
    TwoBoolean,
    GeneralizedNLike(u32),
    StronglySit,
}

impl Property {
    pub const BASIC: [Property; 7] = [
        Property::TwoNilClean,
        Property::StronglyTwoNilClean,
        Property::NilClean,
        Property::WeaklyNilClean,
        Property::Tripotent,
        Property::TwoBoolean,
        Property::StronglySit,
    ];

    pub fn name(self) -> String {
        match self {
            Property::TwoNilClean => "two-nil-clean".into(),
            Property::StronglyTwoNilClean => "strongly-two-nil-clean".into(),
            Property::NilClean => "nil-clean".into(),
            Property::WeaklyNilClean => "weakly-nil-clean".into(),
            Property::Tripotent => "tripotent".into(),
            Property::TwoBoolean => "two-boolean".into(),
            Property::GeneralizedNLike(n) => format!("generalized-{n}-like"),
            Property::StronglySit => "strongly-sit".into(),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(p) = Property::BASIC.iter().find(|p| p.name() == s) {
            return Ok(*p);
        }
        s.strip_prefix("generalized-")
            .and_then(|r| r.strip_suffix("-like"))
            .and_then(|n| n.parse().ok())
            .filter(|&n| n >= 1)
            .map(Property::GeneralizedNLike)
            .ok_or_else(|| Error::input(format!("unknown property {s:?}")))
    }
}

/// How an element was shown to satisfy an existential property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `a = e + f + w`.
    TwoIdempotentsNil { a: Elem, e: Elem, f: Elem, w: Elem },
    /// `a = e + w`.
    IdempotentNil { a: Elem, e: Elem, w: Elem },
    /// `a = w + e` (`minus = false`) or `a = w - e` (`minus = true`).
    NilIdempotent {
        a: Elem,
        w: Elem,
        e: Elem,
        minus: bool,
    },
    /// `a = e + t`, `t^3 = t`, `et = te`.
    IdempotentTripotent { a: Elem, e: Elem, t: Elem },
}

impl Witness {
    pub fn element(&self) -> &Elem {
        match self {
            Witness::TwoIdempotentsNil { a, .. }
            | Witness::IdempotentNil { a, .. }
            | Witness::NilIdempotent { a, .. }
            | Witness::IdempotentTripotent { a, .. } => a,
        }
    }

    /// Re-checks the decomposition from scratch. `strong` additionally
    /// demands pairwise commuting parts.
    pub fn replay(&self, r: &RingDescriptor, strong: bool) -> bool {
        let idem = |x: &Elem| r.mul(x, x) == *x;
        let nil = |x: &Elem| nilpotency_exponent(r, x).is_some();
        match self {
            Witness::TwoIdempotentsNil { a, e, f, w } => {
                idem(e)
                    && idem(f)
                    && nil(w)
                    && r.add(&r.add(e, f), w) == *a
                    && (!strong || (r.commute(e, f) && r.commute(e, w) && r.commute(f, w)))
            }
            Witness::IdempotentNil { a, e, w } => {
                idem(e) && nil(w) && r.add(e, w) == *a && (!strong || r.commute(e, w))
            }
            Witness::NilIdempotent { a, w, e, minus } => {
                let sum = if *minus { r.sub(w, e) } else { r.add(w, e) };
                idem(e) && nil(w) && sum == *a
            }
            Witness::IdempotentTripotent { a, e, t } => {
                idem(e) && r.pow(t, 3) == *t && r.commute(e, t) && r.add(e, t) == *a
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    /// One witness per element, in iteration order, for existential
    /// properties that hold.
    pub witnesses: Vec<Witness>,
    /// The failing element, or the failing pair for pairwise identities.
    pub counterexample: Option<Vec<Elem>>,
}

impl PropertyReport {
    fn universal(property: Property, counterexample: Option<Vec<Elem>>) -> Self {
        PropertyReport {
            property,
            holds: counterexample.is_none(),
            witnesses: Vec::new(),
            counterexample,
        }
    }

    fn existential(property: Property, found: std::result::Result<Vec<Witness>, Elem>) -> Self {
        match found {
            Ok(witnesses) => PropertyReport {
                property,
                holds: true,
                witnesses,
                counterexample: None,
            },
            Err(a) => PropertyReport {
                property,
                holds: false,
                witnesses: Vec::new(),
                counterexample: Some(vec![a]),
            },
        }
    }

    /// Replays every witness and re-derives the counterexample from its
    /// definition.
    pub fn replay(&self, r: &RingDescriptor) -> Result<bool> {
        let strong = self.property == Property::StronglyTwoNilClean;
        if !self.witnesses.iter().all(|w| w.replay(r, strong)) {
            return Ok(false);
        }
        if self.holds {
            return Ok(self.counterexample.is_none());
        }
        let Some(cx) = &self.counterexample else {
            return Ok(false);
        };
        let c = Classifier::new(r)?;
        Ok(match (self.property, cx.as_slice()) {
            (Property::GeneralizedNLike(n), [a, b]) => !c.n_like_pair(n, a, b),
            (Property::GeneralizedNLike(_), _) => false,
            (p, [a]) => !c.element_satisfies(p, a),
            _ => false,
        })
    }
}

/// Cached enumeration data for one ring.
pub struct Classifier<'a> {
    ring: &'a RingDescriptor,
    elements: Vec<Elem>,
    idempotents: Vec<Elem>,
    nilpotents: HashMap<Elem, u32>,
    nil_list: Vec<Elem>,
}

/// Minimal `k` with `a^k = 0`, if any. No nilpotent of a ring of size `s`
/// needs more than `s` factors.
fn nilpotency_exponent(r: &RingDescriptor, a: &[u64]) -> Option<u32> {
    if !r.is_zero(&r.pow(a, r.size())) {
        return None;
    }
    let mut p = a.to_vec();
    let mut k = 1;
    while !r.is_zero(&p) {
        p = r.mul(&p, a);
        k += 1;
    }
    Some(k)
}

impl<'a> Classifier<'a> {
    pub fn new(ring: &'a RingDescriptor) -> Result<Self> {
        ring.require_size(SCAN_CAP)?;
        let elements: Vec<Elem> = ring.elements().collect();
        let idempotents = elements
            .iter()
            .filter(|a| ring.mul(a, a) == **a)
            .cloned()
            .collect();
        let mut nilpotents = HashMap::new();
        let mut nil_list = Vec::new();
        for a in &elements {
            if let Some(k) = nilpotency_exponent(ring, a) {
                nilpotents.insert(a.clone(), k);
                nil_list.push(a.clone());
            }
        }
        Ok(Classifier {
            ring,
            elements,
            idempotents,
            nilpotents,
            nil_list,
        })
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.ring
    }

    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    pub fn nilpotents(&self) -> Vec<(Elem, u32)> {
        self.nil_list
            .iter()
            .map(|a| (a.clone(), self.nilpotents[a]))
            .collect()
    }

    fn is_nil(&self, a: &Elem) -> bool {
        self.nilpotents.contains_key(a)
    }

    fn two_nil_clean_witness(&self, a: &Elem, strong: bool) -> Option<Witness> {
        let r = self.ring;
        for e in &self.idempotents {
            let rest = r.sub(a, e);
            for f in &self.idempotents {
                if strong && !r.commute(e, f) {
                    continue;
                }
                let w = r.sub(&rest, f);
                if self.is_nil(&w) && (!strong || (r.commute(e, &w) && r.commute(f, &w))) {
                    return Some(Witness::TwoIdempotentsNil {
                        a: a.clone(),
                        e: e.clone(),
                        f: f.clone(),
                        w,
                    });
                }
            }
        }
        None
    }

    fn nil_clean_witness(&self, a: &Elem) -> Option<Witness> {
        self.idempotents.iter().find_map(|e| {
            let w = self.ring.sub(a, e);
            self.is_nil(&w).then(|| Witness::IdempotentNil {
                a: a.clone(),
                e: e.clone(),
                w,
            })
        })
    }

    fn weakly_nil_clean_witness(&self, a: &Elem) -> Option<Witness> {
        let r = self.ring;
        self.idempotents.iter().find_map(|e| {
            let plus = r.sub(a, e);
            if self.is_nil(&plus) {
                return Some(Witness::NilIdempotent {
                    a: a.clone(),
                    w: plus,
                    e: e.clone(),
                    minus: false,
                });
            }
            let minus = r.add(a, e);
            self.is_nil(&minus).then(|| Witness::NilIdempotent {
                a: a.clone(),
                w: minus,
                e: e.clone(),
                minus: true,
            })
        })
    }

    fn sit_witness(&self, a: &Elem) -> Option<Witness> {
        let r = self.ring;
        self.idempotents.iter().find_map(|e| {
            let t = r.sub(a, e);
            (r.pow(&t, 3) == t && r.commute(e, &t)).then(|| Witness::IdempotentTripotent {
                a: a.clone(),
                e: e.clone(),
                t,
            })
        })
    }

    fn witness_for(&self, p: Property, a: &Elem) -> Option<Witness> {
        match p {
            Property::TwoNilClean => self.two_nil_clean_witness(a, false),
            Property::StronglyTwoNilClean => self.two_nil_clean_witness(a, true),
            Property::NilClean => self.nil_clean_witness(a),
            Property::WeaklyNilClean => self.weakly_nil_clean_witness(a),
            Property::StronglySit => self.sit_witness(a),
            _ => None,
        }
    }

    fn element_satisfies(&self, p: Property, a: &Elem) -> bool {
        let r = self.ring;
        match p {
            Property::Tripotent => r.pow(a, 3) == *a,
            Property::TwoBoolean => {
                let sq = r.mul(a, a);
                r.mul(&sq, &sq) == sq
            }
            Property::GeneralizedNLike(_) => true,
            _ => self.witness_for(p, a).is_some(),
        }
    }

    fn n_like_pair(&self, n: u32, a: &Elem, b: &Elem) -> bool {
        let r = self.ring;
        let ab = r.mul(a, b);
        let lhs = r.pow(&ab, n as u128);
        let t1 = r.mul(a, &r.pow(b, n as u128));
        let t2 = r.mul(&r.pow(a, n as u128), b);
        r.is_zero(&r.add(&r.sub(&r.sub(&lhs, &t1), &t2), &ab))
    }

    fn existential(&self, p: Property) -> PropertyReport {
        let found = self
            .elements
            .iter()
            .map(|a| self.witness_for(p, a).ok_or_else(|| a.clone()))
            .collect();
        PropertyReport::existential(p, found)
    }

    fn universal(&self, p: Property) -> PropertyReport {
        let cx = self
            .elements
            .iter()
            .find(|a| !self.element_satisfies(p, a))
            .map(|a| vec![a.clone()]);
        PropertyReport::universal(p, cx)
    }

    pub fn check(&self, p: Property) -> Result<PropertyReport> {
        Ok(match p {
            Property::TwoNilClean
            | Property::StronglyTwoNilClean
            | Property::NilClean
            | Property::WeaklyNilClean
            | Property::StronglySit => self.existential(p),
            Property::Tripotent | Property::TwoBoolean => self.universal(p),
            Property::GeneralizedNLike(n) => {
                self.ring.require_size(PAIRWISE_CAP)?;
                let cx = self.elements.iter().find_map(|a| {
                    self.elements
                        .iter()
                        .find(|b| !self.n_like_pair(n, a, b))
                        .map(|b| vec![a.clone(), b.clone()])
                });
                PropertyReport::universal(p, cx)
            }
        })
    }

    /// Minimum nilpotency exponent of `w` over all `a = e + f + w`.
    pub fn min_nilpotent_index(&self, a: &Elem) -> Option<u32> {
        let r = self.ring;
        let mut best: Option<u32> = None;
        for e in &self.idempotents {
            let rest = r.sub(a, e);
            for f in &self.idempotents {
                if let Some(&k) = self.nilpotents.get(&r.sub(&rest, f)) {
                    best = Some(best.map_or(k, |b| b.min(k)));
                }
            }
        }
        best
    }
}

pub fn enumerate_idempotents(r: &RingDescriptor) -> Result<Vec<Elem>> {
    Ok(Classifier::new(r)?.idempotents)
}

pub fn enumerate_nilpotents(r: &RingDescriptor) -> Result<Vec<(Elem, u32)>> {
    Ok(Classifier::new(r)?.nilpotents())
}

pub fn check_property(r: &RingDescriptor, p: Property) -> Result<PropertyReport> {
    Classifier::new(r)?.check(p)
}

pub fn is_two_nil_clean(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::TwoNilClean)
}

pub fn is_strongly_two_nil_clean(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::StronglyTwoNilClean)
}

pub fn is_nil_clean(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::NilClean)
}

pub fn is_weakly_nil_clean(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::WeaklyNilClean)
}

pub fn is_tripotent(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::Tripotent)
}

pub fn is_two_boolean(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::TwoBoolean)
}

pub fn is_generalized_n_like(r: &RingDescriptor, n: u32) -> Result<PropertyReport> {
    check_property(r, Property::GeneralizedNLike(n))
}

pub fn is_strongly_sit(r: &RingDescriptor) -> Result<PropertyReport> {
    check_property(r, Property::StronglySit)
}

pub fn min_nilpotent_index_over_decompositions(
    a: &[u64],
    r: &RingDescriptor,
) -> Result<Option<u32>> {
    Ok(Classifier::new(r)?.min_nilpotent_index(&a.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationAudit {
    pub nil_clean: PropertyReport,
    pub weakly_nil_clean: PropertyReport,
    pub two_nil_clean: PropertyReport,
}

impl ImplicationAudit {
    /// nil-clean implies weakly nil-clean implies 2-nil-clean.
    pub fn consistent(&self) -> bool {
        (!self.nil_clean.holds || self.weakly_nil_clean.holds)
            && (!self.weakly_nil_clean.holds || self.two_nil_clean.holds)
    }
}

pub fn implication_audit(r: &RingDescriptor) -> Result<ImplicationAudit> {
    let c = Classifier::new(r)?;
    Ok(ImplicationAudit {
        nil_clean: c.check(Property::NilClean)?,
        weakly_nil_clean: c.check(Property::WeaklyNilClean)?,
        two_nil_clean: c.check(Property::TwoNilClean)?,
    })
}

/// `A = [[1,1],[1,0]]` over `Z_m`: `A^3 - A = [[2,1],[1,1]]` is a unit with
/// inverse `[[1,-1],[-1,2]]`, so `A^3 - A` is never nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixObstruction {
    pub a: RingMatrix,
    pub cube_minus_a: RingMatrix,
    pub expected_inverse: RingMatrix,
    pub inverse: Option<RingMatrix>,
}

impl MatrixObstruction {
    pub fn holds(&self) -> bool {
        self.inverse.as_ref() == Some(&self.expected_inverse)
            && self
                .cube_minus_a
                .try_mul(&self.expected_inverse)
                .is_ok_and(|p| p == RingMatrix::identity(self.a.ring(), 2))
    }
}

pub fn check_not_strongly_matrix_witness(m: u64) -> Result<MatrixObstruction> {
    let modulus = Modulus::new(m)?;
    let a = RingMatrix::from_ints(&modulus, &[vec![1, 1], vec![1, 0]])?;
    let cube_minus_a = a.pow(3).try_sub(&a)?;
    let expected_inverse = RingMatrix::from_ints(&modulus, &[vec![1, -1], vec![-1, 2]])?;
    let inverse = inverse(&cube_minus_a).ok();
    Ok(MatrixObstruction {
        a,
        cube_minus_a,
        expected_inverse,
        inverse,
    })
}

/// `Z_2 x Z_4 x ... x Z_{2^k}`.
pub fn power_tower(k: u32) -> Result<RingDescriptor> {
    if !(1..=20).contains(&k) {
        return Err(Error::input(format!("tower length {k} out of range")));
    }
    RingDescriptor::new((1..=k).map(|j| Factor::Zm(1 << j)).collect())
}

/// `(0, c, c, ..., c)` in [`power_tower`]`(k)`.
pub fn tower_element(k: u32, c: i64) -> Result<(RingDescriptor, Elem)> {
    let r = power_tower(k)?;
    let values: Vec<i64> = (0..k).map(|j| if j == 0 { 0 } else { c }).collect();
    let a = r.from_ints(&values)?;
    Ok((r, a))
}
