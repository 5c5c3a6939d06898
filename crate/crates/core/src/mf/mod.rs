//! Matrix factorizations of `W' = W - w0` over one affine chart and the
//! homotopy category they form.

mod complex;
mod homotopy;

pub use complex::{totalize, PairComplex};
pub use homotopy::{
    hom_differential, hom_space_dimension, is_contractible, is_homotopy_equivalence, null_homotopy,
    hom_differential_matrices, HomElement, Homotopy, HomotopyWitness,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::RingMatrix;
use crate::ring::RingContext;

/// A pair `E1 --e1--> E0 --e0--> E1` of free modules of equal rank with
/// `e0 e1 = W'` and `e1 e0 = W'`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ctx: Arc<RingContext>,
    e1: RingMatrix,
    e0: RingMatrix,
    name: Option<String>,
}

impl PartialEq for MatrixFactorization {
    fn eq(&self, other: &Self) -> bool {
        self.e1 == other.e1 && self.e0 == other.e0 && *self.ctx == *other.ctx
    }
}

impl Eq for MatrixFactorization {}

fn check_scalar(
    prod: &RingMatrix,
    ctx: &RingContext,
    identity: &'static str,
) -> Result<()> {
    let w = ctx.w();
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let ok = if i == j {
                prod.get(i, j) == w
            } else {
                prod.get(i, j).is_zero()
            };
            if !ok {
                return Err(Error::Composition { identity, row: i, col: j });
            }
        }
    }
    Ok(())
}

impl MatrixFactorization {
    /// Validated constructor.
    pub fn new(ctx: &Arc<RingContext>, e1: RingMatrix, e0: RingMatrix) -> Result<Self> {
        if !e1.is_square() || !e0.is_square() || e1.rows() != e0.rows() {
            return Err(Error::Shape(format!(
                "e1 is {}x{} and e0 is {}x{}; both must be square of the same size",
                e1.rows(),
                e1.cols(),
                e0.rows(),
                e0.cols()
            )));
        }
        if **e1.ring() != **ctx.ring() || **e0.ring() != **ctx.ring() {
            return Err(Error::ContextMismatch);
        }
        check_scalar(&(&e0 * &e1), ctx, "e0*e1 = W'")?;
        check_scalar(&(&e1 * &e0), ctx, "e1*e0 = W'")?;
        Ok(MatrixFactorization {
            ctx: ctx.clone(),
            e1,
            e0,
            name: None,
        })
    }

    /// The zero object (rank 0).
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        let z = RingMatrix::zeros(ctx.ring(), 0, 0);
        MatrixFactorization {
            ctx: ctx.clone(),
            e1: z.clone(),
            e0: z,
            name: None,
        }
    }

    /// Trivial pair of rank `r`: `(I, W' I)` or `(W' I, I)`.
    pub fn trivial(ctx: &Arc<RingContext>, r: usize, orientation: Orientation) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("trivial pair needs rank >= 1".into()));
        }
        let id = RingMatrix::identity(ctx.ring(), r);
        let w = RingMatrix::scalar(ctx.ring(), r, ctx.w());
        let (e1, e0) = match orientation {
            Orientation::IdFirst => (id, w),
            Orientation::WFirst => (w, id),
        };
        Self::new(ctx, e1, e0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.e1.rows()
    }

    /// `e1: E1 -> E0`.
    pub fn e1(&self) -> &RingMatrix {
        &self.e1
    }

    /// `e0: E0 -> E1`.
    pub fn e0(&self) -> &RingMatrix {
        &self.e0
    }

    /// `E[1] = (E0, E1; -e0, -e1)`.
    pub fn shift(&self) -> Self {
        MatrixFactorization {
            ctx: self.ctx.clone(),
            e1: -&self.e0,
            e0: -&self.e1,
            name: self.name.clone(),
        }
    }

    /// `E[k]`; only the parity of `k` matters.
    pub fn shift_by(&self, k: usize) -> Self {
        if k % 2 == 1 {
            self.shift()
        } else {
            self.clone()
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Self::new(
            &self.ctx,
            RingMatrix::block_diag(&[&self.e1, &other.e1]),
            RingMatrix::block_diag(&[&self.e0, &other.e0]),
        )
    }

    /// `E ⊕ F` with its canonical injections and projections.
    pub fn direct_sum_with_maps(&self, other: &Self) -> Result<DirectSum> {
        let sum = self.direct_sum(other)?;
        let ring = self.ctx.ring();
        let (a, b) = (self.rank(), other.rank());
        let inj_a = RingMatrix::vstack(&[&RingMatrix::identity(ring, a), &RingMatrix::zeros(ring, b, a)])?;
        let inj_b = RingMatrix::vstack(&[&RingMatrix::zeros(ring, a, b), &RingMatrix::identity(ring, b)])?;
        let injections = [
            MfMorphism::new(self, &sum, inj_a.clone(), inj_a.clone())?,
            MfMorphism::new(other, &sum, inj_b.clone(), inj_b.clone())?,
        ];
        let projections = [
            MfMorphism::new(&sum, self, inj_a.transpose(), inj_a.transpose())?,
            MfMorphism::new(&sum, other, inj_b.transpose(), inj_b.transpose())?,
        ];
        Ok(DirectSum {
            object: sum,
            injections,
            projections,
        })
    }

    /// Change of basis `(P e1 Q^-1, Q e0 P^-1)` given invertible `P` on
    /// `E0` and `Q` on `E1` together with their inverses.
    pub fn conjugate(
        &self,
        p: &RingMatrix,
        p_inv: &RingMatrix,
        q: &RingMatrix,
        q_inv: &RingMatrix,
    ) -> Result<Self> {
        let e1 = p.checked_mul(&self.e1)?.checked_mul(q_inv)?;
        let e0 = q.checked_mul(&self.e0)?.checked_mul(p_inv)?;
        Self::new(&self.ctx, e1, e0)
    }
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} / {})", self.e1, self.e0)
    }
}

/// Which map of a trivial pair is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `e1 = I`, `e0 = W' I`.
    IdFirst,
    /// `e1 = W' I`, `e0 = I`.
    WFirst,
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: MatrixFactorization,
    pub injections: [MfMorphism; 2],
    pub projections: [MfMorphism; 2],
}

/// A degree-zero closed element of the Hom complex: `p1: E1 -> F1` and
/// `p0: E0 -> F0` with `p1 e0 = f0 p0` and `f1 p1 = p0 e1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfMorphism {
    src: MatrixFactorization,
    dst: MatrixFactorization,
    p1: RingMatrix,
    p0: RingMatrix,
}

impl MfMorphism {
    pub fn new(
        src: &MatrixFactorization,
        dst: &MatrixFactorization,
        p1: RingMatrix,
        p0: RingMatrix,
    ) -> Result<Self> {
        if *src.ctx != *dst.ctx {
            return Err(Error::ContextMismatch);
        }
        for m in [&p1, &p0] {
            if m.rows() != dst.rank() || m.cols() != src.rank() {
                return Err(Error::Shape(format!(
                    "morphism blocks must be {}x{}, got {}x{}",
                    dst.rank(),
                    src.rank(),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let lhs = &p1 * &src.e0;
        let rhs = &dst.e0 * &p0;
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Err(Error::Morphism {
                identity: "p1*e0 = f0*p0",
                row,
                col,
            });
        }
        let lhs = &dst.e1 * &p1;
        let rhs = &p0 * &src.e1;
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Err(Error::Morphism {
                identity: "f1*p1 = p0*e1",
                row,
                col,
            });
        }
        Ok(MfMorphism {
            src: src.clone(),
            dst: dst.clone(),
            p1,
            p0,
        })
    }

    pub fn identity(e: &MatrixFactorization) -> Self {
        let id = RingMatrix::identity(e.ctx.ring(), e.rank());
        MfMorphism {
            src: e.clone(),
            dst: e.clone(),
            p1: id.clone(),
            p0: id,
        }
    }

    pub fn zero(src: &MatrixFactorization, dst: &MatrixFactorization) -> Self {
        let z = RingMatrix::zeros(src.ctx.ring(), dst.rank(), src.rank());
        MfMorphism {
            src: src.clone(),
            dst: dst.clone(),
            p1: z.clone(),
            p0: z,
        }
    }

    pub fn src(&self) -> &MatrixFactorization {
        &self.src
    }

    pub fn dst(&self) -> &MatrixFactorization {
        &self.dst
    }

    pub fn p1(&self) -> &RingMatrix {
        &self.p1
    }

    pub fn p0(&self) -> &RingMatrix {
        &self.p0
    }

    /// `p[1] = (p1, p0)` read as a map `E[1] -> F[1]`: the new `E0`-block
    /// is the old `p1`.
    pub fn shift(&self) -> Self {
        MfMorphism {
            src: self.src.shift(),
            dst: self.dst.shift(),
            p1: self.p0.clone(),
            p0: self.p1.clone(),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MfMorphism) -> Result<Self> {
        compose(self, then)
    }

    pub fn is_zero(&self) -> bool {
        self.p1.is_zero() && self.p0.is_zero()
    }

    pub fn add(&self, other: &MfMorphism) -> Result<Self> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Shape("adding morphisms with different endpoints".into()));
        }
        Ok(MfMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            p1: self.p1.checked_add(&other.p1)?,
            p0: self.p0.checked_add(&other.p0)?,
        })
    }

    pub fn scale(&self, f: &crate::ring::Poly) -> Self {
        MfMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            p1: self.p1.scale_poly(f),
            p0: self.p0.scale_poly(f),
        }
    }
}

/// `q ∘ p` for `p: E -> F`, `q: F -> G`.
pub fn compose(p: &MfMorphism, q: &MfMorphism) -> Result<MfMorphism> {
    if p.dst != q.src {
        return Err(Error::Shape("compose: target of p is not the source of q".into()));
    }
    Ok(MfMorphism {
        src: p.src.clone(),
        dst: q.dst.clone(),
        p1: q.p1.checked_mul(&p.p1)?,
        p0: q.p0.checked_mul(&p.p0)?,
    })
}

/// Mapping cone with its structure maps `q: F -> Cone(p)` and
/// `r: Cone(p) -> E[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: MatrixFactorization,
    pub q: MfMorphism,
    pub r: MfMorphism,
}

/// `Cone(p)` for `p: E -> F`: `Cone_1 = F1 ⊕ E0`, `Cone_0 = F0 ⊕ E1`,
/// `c0 = [[f0, p1], [0, -e1]]`, `c1 = [[f1, p0], [0, -e0]]`.
pub fn cone(p: &MfMorphism) -> Result<Cone> {
    let (e, f) = (&p.src, &p.dst);
    let ring = e.ctx.ring();
    let (re, rf) = (e.rank(), f.rank());
    let z = RingMatrix::zeros(ring, re, rf);
    let c0 = RingMatrix::block2(&f.e0, &p.p1, &z, &-&e.e1)?;
    let c1 = RingMatrix::block2(&f.e1, &p.p0, &z, &-&e.e0)?;
    let object = MatrixFactorization::new(&e.ctx, c1, c0)?;
    let inc = RingMatrix::vstack(&[&RingMatrix::identity(ring, rf), &RingMatrix::zeros(ring, re, rf)])?;
    let q = MfMorphism::new(f, &object, inc.clone(), inc)?;
    let minus_proj = RingMatrix::hstack(&[
        &RingMatrix::zeros(ring, re, rf),
        &-&RingMatrix::identity(ring, re),
    ])?;
    let r = MfMorphism::new(&object, &e.shift(), minus_proj.clone(), minus_proj)?;
    Ok(Cone { object, q, r })
}
