//! Crate-wide error type.
//!
//! Operations that merely *measure* a property (the `check_*` family) return
//! report structs instead of errors; errors are reserved for inputs that
//! violate a precondition (malformed tables, missing non-degeneracy, maps
//! that were required to be reflections, exceeded search gates).

use core::fmt;

use crate::map::Side;

/// Axioms of a set-theoretic Drinfeld twist datum `(F, Phi, Psi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistAxiom {
    /// `F_12 Psi = F_23 Phi`
    Interchange,
    /// `Psi r_12 = r_12 Psi`
    CommutesBelow,
    /// `Phi r_23 = r_23 Phi`
    CommutesAbove,
}

/// Axioms of a group Drinfeld twist, on top of the set-theoretic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupTwistAxiom {
    /// `Phi(1,b,c) = (1,b,c)` and `Psi(a,b,1) = (a,b,1)`
    UnitTriples,
    /// `F(a,1) = (a,1)` and `F(1,b) = (1,b)`
    UnitPairs,
    /// `m_23 Phi = F m_23`
    ProductRight,
    /// `m_12 Psi = F m_12`
    ProductLeft,
}

/// Axioms of a braiding on a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidingAxiom {
    /// `r(a,1) = (1,a)`
    UnitRight,
    /// `r(1,b) = (b,1)`
    UnitLeft,
    /// `r m_23 = m_12 r_23 r_12`
    HexagonRight,
    /// `r m_12 = m_23 r_12 r_23`
    HexagonLeft,
    /// `m r = m`
    ProductPreserved,
}

/// Axioms of a group reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupReflectionAxiom {
    /// `k(1) = 1`
    UnitFixed,
    /// `k(ab) = (a -> k(b)) k(a <- k(b))`
    ProductRule,
    /// `k(a) = (a -> b) -> k(a <- b)` for all `b` (twisted involutivity)
    Involutivity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Ragged or mismatched tables.
    Shape { expected: usize, found: usize },
    /// A table entry is outside `0..n`.
    Range { index: usize, value: usize, n: usize },
    /// The Yang–Baxter equation fails; the witness is the first violating
    /// triple in lexicographic order, with the failing component (1..=3).
    YbeViolation { a: usize, b: usize, c: usize, component: u8 },
    /// Self-distributivity `(a<b)<c = (a<c)<(b<c)` fails at the witness.
    ShelfViolation { a: usize, b: usize, c: usize },
    /// The two permutations of a permutation solution do not commute.
    NotCommuting { at: usize },
    /// A map that had to be bijective is not.
    NotBijective { what: &'static str },
    /// A required non-degeneracy (bijectivity of an action) fails.
    Degenerate { side: Side, at: usize },
    /// The map does not satisfy the reflection equation; witness pair and
    /// failing component (1 or 2).
    NotAReflection { a: usize, b: usize, component: u8 },
    /// Carrier sizes differ.
    SizeMismatch { left: usize, right: usize },
    /// A Drinfeld twist axiom fails at the witness triple.
    DtViolation { axiom: TwistAxiom, witness: (usize, usize, usize) },
    /// A group Drinfeld twist axiom fails at the witness triple.
    BdtViolation { axiom: GroupTwistAxiom, witness: (usize, usize, usize) },
    /// Multiplication table is not associative at the witness.
    NotAssociative { a: usize, b: usize, c: usize },
    /// No two-sided identity element exists.
    NoIdentity,
    /// Element `x` has no two-sided inverse.
    NoInverse { x: usize },
    /// A group reflection axiom fails at the witness pair.
    NotAGroupReflection { axiom: GroupReflectionAxiom, witness: (usize, usize) },
    /// The right action is not faithful; carries the outcome of the weaker
    /// row-level square condition that still applies in that case.
    NotFaithful { rho_level_square_rule: bool },
    /// `f_x` is not an isomorphism onto the target group.
    NotIsomorphism { x: usize },
    /// `f_x(x) != x` for a fixing family.
    NotFixing { x: usize },
    /// Standing hypothesis of the one-legged classification fails
    /// (`rho_1 = id` or `rho_b(1) = 1`).
    HypothesisViolation { at: usize },
    /// Braid relation fails on the given triple (flattened index).
    BraidRelationViolation { at: usize },
    /// A search would materialise more states than the configured gate.
    SizeLimitExceeded { needed: usize, gate: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape { expected, found } => {
                write!(f, "table shape mismatch: expected {expected}, found {found}")
            }
            Error::Range { index, value, n } => {
                write!(f, "entry {value} at position {index} out of range 0..{n}")
            }
            Error::YbeViolation { a, b, c, component } => {
                write!(f, "Yang-Baxter equation fails (component {component}) at ({a},{b},{c})")
            }
            Error::ShelfViolation { a, b, c } => {
                write!(f, "self-distributivity fails at ({a},{b},{c})")
            }
            Error::NotCommuting { at } => {
                write!(f, "permutations do not commute (first difference at {at})")
            }
            Error::NotBijective { what } => write!(f, "{what} is not bijective"),
            Error::Degenerate { side, at } => {
                write!(f, "{side:?} action of {at} is not bijective")
            }
            Error::NotAReflection { a, b, component } => {
                write!(f, "reflection equation fails (component {component}) at ({a},{b})")
            }
            Error::SizeMismatch { left, right } => {
                write!(f, "carrier sizes differ: {left} vs {right}")
            }
            Error::DtViolation { axiom, witness } => {
                write!(f, "twist axiom {axiom:?} fails at {witness:?}")
            }
            Error::BdtViolation { axiom, witness } => {
                write!(f, "group twist axiom {axiom:?} fails at {witness:?}")
            }
            Error::NotAssociative { a, b, c } => {
                write!(f, "multiplication not associative at ({a},{b},{c})")
            }
            Error::NoIdentity => write!(f, "no two-sided identity"),
            Error::NoInverse { x } => write!(f, "element {x} has no inverse"),
            Error::NotAGroupReflection { axiom, witness } => {
                write!(f, "group reflection axiom {axiom:?} fails at {witness:?}")
            }
            Error::NotFaithful { rho_level_square_rule } => write!(
                f,
                "right action not faithful (row-level square rule: {rho_level_square_rule})"
            ),
            Error::NotIsomorphism { x } => write!(f, "family member at {x} is not an isomorphism"),
            Error::NotFixing { x } => write!(f, "family member at {x} does not fix {x}"),
            Error::HypothesisViolation { at } => {
                write!(f, "unitarity hypothesis fails at {at}")
            }
            Error::BraidRelationViolation { at } => {
                write!(f, "braid relation fails at flattened triple {at}")
            }
            Error::SizeLimitExceeded { needed, gate } => {
                write!(f, "search needs {needed} states, above the gate of {gate}")
            }
        }
    }
}
