use std::sync::Arc;

use super::{Poly, Ring};
use crate::error::{Error, Result};
use crate::gb::{Engine, Vector};

/// Generators of a polynomial ideal, reduced when produced by
/// [`groebner_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &Poly) -> Poly {
        divide(f, &self.gens).map(|(_, r)| r).unwrap_or_else(|_| f.clone())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Multivariate division with remainder. Divisors are tried in the given
/// order; returns cofactors `q` and remainder `r` with
/// `f = sum q_i d_i + r` and no term of `r` divisible by any leading term.
pub fn divide(f: &Poly, divisors: &[Poly]) -> Result<(Vec<Poly>, Poly)> {
    let ring = f.ring().clone();
    for d in divisors {
        if **d.ring() != *ring {
            return Err(Error::ContextMismatch);
        }
        if d.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
    }
    let mut quotients = vec![Poly::zero(&ring); divisors.len()];
    let mut remainder = Vec::new();
    let mut cur = f.clone();
    while let Some((m, c)) = cur.leading_term().cloned() {
        let hit = divisors
            .iter()
            .position(|d| d.leading_monomial().unwrap().divides(&m));
        match hit {
            Some(i) => {
                let d = &divisors[i];
                let q = d.leading_monomial().unwrap().quotient_of(&m);
                let qc = ring.mul_coef(c, ring.inv_coef(d.leading_coef()));
                quotients[i] = quotients[i].add_scaled_shifted(qc, &q, &Poly::one(&ring));
                cur = cur.add_scaled_shifted(ring.neg_coef(qc), &q, d);
            }
            None => {
                remainder.push((m.clone(), c));
                cur = Poly::from_sorted_terms(&ring, cur.into_terms().split_off(1));
            }
        }
    }
    Ok((quotients, Poly::from_sorted_terms(&ring, remainder)))
}

fn check_ring(gens: &[Poly]) -> Result<Option<Arc<Ring>>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(Error::ContextMismatch);
    }
    Ok(Some(ring))
}

/// Reduced Groebner basis of the ideal generated by `gens` over `ring`.
pub fn groebner_basis(ring: &Arc<Ring>, gens: &[Poly]) -> Result<GroebnerBasis> {
    if let Some(r) = check_ring(gens)? {
        if *r != **ring {
            return Err(Error::ContextMismatch);
        }
    }
    let engine = Engine::new(ring, 1);
    let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_polys(std::slice::from_ref(g), 0)).collect();
    let basis = engine.groebner(&vecs, true)?;
    let gens = basis
        .elems
        .iter()
        .map(|v| v.to_polys(ring, 0, 1).remove(0))
        .collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        gens,
        reduced: true,
    })
}

/// Reduced Groebner basis together with, for each basis element `g_k`, a
/// cofactor list `c_k` such that `g_k = sum_i c_k[i] * gens[i]`.
pub fn groebner_basis_with_cofactors(
    ring: &Arc<Ring>,
    gens: &[Poly],
) -> Result<(GroebnerBasis, Vec<Vec<Poly>>)> {
    if let Some(r) = check_ring(gens)? {
        if *r != **ring {
            return Err(Error::ContextMismatch);
        }
    }
    let engine = Engine::new(ring, 1);
    let n = gens.len();
    let vecs: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut comps = vec![Poly::zero(ring); n + 1];
            comps[0] = g.clone();
            comps[i + 1] = Poly::one(ring);
            Vector::from_polys(&comps, 0)
        })
        .collect();
    let basis = engine.groebner(&vecs, true)?;
    let mut out = Vec::new();
    let mut cofs = Vec::new();
    for v in &basis.elems {
        let mut comps = v.to_polys(ring, 0, n + 1);
        out.push(comps.remove(0));
        cofs.push(comps);
    }
    Ok((
        GroebnerBasis {
            ring: ring.clone(),
            gens: out,
            reduced: true,
        },
        cofs,
    ))
}

/// Whether `f` lies in the ideal with reduced basis `gb`.
pub fn ideal_membership(f: &Poly, gb: &GroebnerBasis) -> bool {
    gb.contains(f)
}
