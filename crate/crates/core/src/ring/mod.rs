//! Polynomial rings over prime fields.

mod groebner;
mod monomial;
mod parse;
mod poly;

pub use groebner::{divide, groebner_basis, groebner_basis_with_cofactors, ideal_membership, GroebnerBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Default bound on the number of S-pairs a single Groebner computation may
/// process before giving up with [`Error::ResourceLimit`].
pub const DEFAULT_MAX_STEPS: usize = 200_000;

/// The polynomial ring `F_p[x1..xn]` together with a monomial order.
#[derive(Debug, Clone)]
pub struct Ring {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
    max_steps: usize,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        // the step budget is a runtime knob, not part of the ring
        self.p == other.p && self.vars == other.vars && self.order == other.order
    }
}

impl Eq for Ring {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u32, vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        // products of two residues must fit in a u64
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("characteristic {p} too large")));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring {
            p,
            vars,
            order,
            max_steps: DEFAULT_MAX_STEPS,
        }))
    }

    /// Copy of this ring with a different Groebner step budget.
    pub fn with_max_steps(&self, max_steps: usize) -> Arc<Ring> {
        Arc::new(Ring {
            max_steps,
            ..self.clone()
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    // --- prime field arithmetic on canonical residues 0..p ---

    #[inline]
    pub fn add_coef(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub_coef(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg_coef(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul_coef(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv_coef(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Canonical residue of an arbitrary integer.
    pub fn coef_from_i64(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn coef_to_i64(&self, c: u32) -> i64 {
        if c > self.p / 2 {
            c as i64 - self.p as i64
        } else {
            c as i64
        }
    }

    /// Parse a polynomial in the text grammar `x^3 - 2*x*y + 7`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly> {
        parse::parse_poly(self, text)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}] ({})", self.p, self.vars.join(","), self.order)
    }
}

/// The ambient ring together with a potential `W` and a critical value
/// `w0`. All downstream code works with the shifted potential
/// `W' = W - w0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    ring: Arc<Ring>,
    potential: Poly,
    value: u32,
    shifted: Poly,
}

impl RingContext {
    pub fn new(ring: Arc<Ring>, potential: Poly, value: i64) -> Result<Arc<RingContext>> {
        if **potential.ring() != *ring {
            return Err(Error::ContextMismatch);
        }
        let value = ring.coef_from_i64(value);
        let shifted = &potential - &Poly::constant(&ring, value as i64);
        if shifted.is_constant() {
            return Err(Error::InvalidRing(
                "W - w0 must be a nonconstant polynomial".into(),
            ));
        }
        Ok(Arc::new(RingContext {
            ring,
            potential,
            value,
            shifted,
        }))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// The potential `W` as given.
    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    /// The critical value `w0` as a residue.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// `W' = W - w0`.
    pub fn w(&self) -> &Poly {
        &self.shifted
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Same potential over a ring with another Groebner step budget.
    pub fn with_max_steps(&self, max_steps: usize) -> Arc<RingContext> {
        let ring = self.ring.with_max_steps(max_steps);
        let rebase = |f: &Poly| f.with_ring(&ring);
        Arc::new(RingContext {
            potential: rebase(&self.potential),
            shifted: rebase(&self.shifted),
            value: self.value,
            ring,
        })
    }
}
