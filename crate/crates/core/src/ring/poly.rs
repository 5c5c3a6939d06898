use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial with terms sorted strictly descending in the ring's
/// monomial order and no zero coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Poly {
        let c = ring.coef_from_i64(c);
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), index, 1), 1)
    }

    pub fn monomial(ring: &Arc<Ring>, mono: Monomial, coef: u32) -> Poly {
        let coef = coef % ring.characteristic();
        Poly {
            ring: ring.clone(),
            terms: if coef == 0 { Vec::new() } else { vec![(mono, coef)] },
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, u32)>) -> Poly {
        let p = ring.characteristic();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ring.add_coef(*lc, c),
                _ => {
                    if let Some((_, 0)) = out.last() {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms already in canonical order; only checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Poly {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Same terms, reinterpreted in an equal ring (used to move between
    /// rings that differ only in runtime settings).
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Poly {
        assert!(**ring == *self.ring, "with_ring: rings differ");
        Poly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1 == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coef(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn constant_coef(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `self + c * m * other` computed by a single merge.
    pub(crate) fn add_scaled_shifted(&self, c: u32, m: &Monomial, other: &Poly) -> Poly {
        let ring = &self.ring;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(om, oc)| (om.mul(m), ring.mul_coef(*oc, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((am, ac)), Some((bm, bc))) => match ring.cmp_monomials(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = ring.add_coef(*ac, *bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.add_scaled_shifted(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let minus_one = self.ring.neg_coef(1);
        Ok(self.add_scaled_shifted(minus_one, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled_shifted(*c, m, big);
        }
        Ok(acc)
    }

    /// Multiply by a field element.
    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.ring.mul_coef(*a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), self.ring.mul_coef(*a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scale so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.inv_coef(*c)),
        }
    }

    /// Evaluate at a point of `F_p^n`.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let ring = &self.ring;
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (e, x) in m.exps().iter().zip(point) {
                for _ in 0..*e {
                    t = ring.mul_coef(t, *x);
                }
            }
            acc = ring.add_coef(acc, t);
        }
        acc
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomial operands from different rings")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.ring.neg_coef(1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = self.ring.coef_to_i64(*c);
            let mag = s.unsigned_abs();
            if i == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if s < 0 { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.display(self.ring.vars()))?;
            } else {
                write!(f, "{mag}*{}", m.display(self.ring.vars()))?;
            }
        }
        Ok(())
    }
}
