//! Residue rings `Z_m` and truncated polynomial rings `Z_m[x]/(x^d)`.

mod modulus;
mod trunc;
mod zmod;

pub use modulus::{crt_combine, factorize, Modulus, MAX_MODULUS};
pub use trunc::{TruncPolyElem, TruncPolyRing};
pub use zmod::{
    classify_element, crt_recombine, crt_split, lift_idempotent_elem, strong_decompose_element,
    ElementClassification, ZmodElem,
};

pub(crate) use modulus::{inv_mod, mul_mod};
pub(crate) use zmod::lift_rounds;
