use std::sync::Arc;

use super::{MatrixFactorization, MfMorphism};
use crate::error::{Error, Result};
use crate::module::{k_dimension, kernel_modulo, lift, right_action, subquotient, Dim, Lift, Over, RingMatrix};
use crate::ring::{Poly, Ring};

/// Homogeneous element of the Hom complex `Hom(E, F)`. Block `(i, j)` is a
/// map `E_i -> F_j`; only blocks with `i + j ≡ parity` may be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    parity: usize,
    blocks: [[RingMatrix; 2]; 2],
}

impl HomElement {
    pub fn new(
        src: &MatrixFactorization,
        dst: &MatrixFactorization,
        parity: usize,
        blocks: [[RingMatrix; 2]; 2],
    ) -> Result<Self> {
        if parity > 1 {
            return Err(Error::InvalidArgument("parity must be 0 or 1".into()));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.rows() != dst.rank() || b.cols() != src.rank() {
                    return Err(Error::Shape(format!(
                        "block ({i},{j}) must be {}x{}",
                        dst.rank(),
                        src.rank()
                    )));
                }
                if (i + j) % 2 != parity && !b.is_zero() {
                    return Err(Error::Shape(format!(
                        "block ({i},{j}) must vanish in parity {parity}"
                    )));
                }
            }
        }
        Ok(HomElement { parity, blocks })
    }

    /// Even element `(p0, p1)`.
    pub fn even(p0: RingMatrix, p1: RingMatrix) -> Self {
        let z = RingMatrix::zeros(p0.ring(), p0.rows(), p0.cols());
        HomElement {
            parity: 0,
            blocks: [[p0, z.clone()], [z, p1]],
        }
    }

    /// Odd element with `s0: E0 -> F1`, `s1: E1 -> F0`.
    pub fn odd(s0: RingMatrix, s1: RingMatrix) -> Self {
        let z = RingMatrix::zeros(s0.ring(), s0.rows(), s0.cols());
        HomElement {
            parity: 1,
            blocks: [[z.clone(), s0], [s1, z]],
        }
    }

    pub fn from_morphism(p: &MfMorphism) -> Self {
        Self::even(p.p0().clone(), p.p1().clone())
    }

    pub fn parity(&self) -> usize {
        self.parity
    }

    pub fn block(&self, i: usize, j: usize) -> &RingMatrix {
        &self.blocks[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(RingMatrix::is_zero)
    }
}

/// `D h = f h - (-1)^k h e` for `h` of parity `k`.
pub fn hom_differential(
    h: &HomElement,
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
) -> Result<HomElement> {
    let ring = src.context().ring();
    let zero = RingMatrix::zeros(ring, dst.rank(), src.rank());
    let mut out = [[zero.clone(), zero.clone()], [zero.clone(), zero]];
    let f = [dst.e0(), dst.e1()];
    let e = [src.e0(), src.e1()];
    let sign = if h.parity == 0 { -1 } else { 1 };
    for i in 0..2 {
        for j in 0..2 {
            let fh = f[j].checked_mul(&h.blocks[i][j])?;
            out[i][1 - j] = out[i][1 - j].checked_add(&fh)?;
            let he = h.blocks[1 - i][j].checked_mul(e[i])?;
            let he = if sign < 0 { -&he } else { he };
            out[i][j] = out[i][j].checked_add(&he)?;
        }
    }
    Ok(HomElement {
        parity: 1 - h.parity,
        blocks: out,
    })
}

/// Matrix of `X -> A X` on column-major vectorized `X` with `cols` columns.
fn left_action(ring: &Arc<Ring>, a: &RingMatrix, cols: usize) -> RingMatrix {
    let blocks: Vec<&RingMatrix> = (0..cols).map(|_| a).collect();
    if blocks.is_empty() {
        return RingMatrix::zeros(ring, 0, 0);
    }
    RingMatrix::block_diag(&blocks)
}

/// Matrices of `D` from even to odd and from odd to even elements.
/// Even coordinates are `(vec p0, vec p1)`, odd ones `(vec s0, vec s1)`.
pub fn hom_differential_matrices(
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
) -> Result<(RingMatrix, RingMatrix)> {
    let ring = src.context().ring();
    let (re, rf) = (src.rank(), dst.rank());
    let l = |a: &RingMatrix| left_action(ring, a, re);
    let r = |b: &RingMatrix| right_action(ring, rf, b);
    let d_even = RingMatrix::block2(&l(dst.e0()), &-&r(src.e0()), &-&r(src.e1()), &l(dst.e1()))?;
    let d_odd = RingMatrix::block2(&l(dst.e1()), &r(src.e0()), &r(src.e1()), &l(dst.e0()))?;
    Ok((d_even, d_odd))
}

/// `s = (s0: E0 -> F1, s1: E1 -> F0)` with `p1 = f0 s1 + s0 e1` and
/// `p0 = s1 e0 + f1 s0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub s0: RingMatrix,
    pub s1: RingMatrix,
}

impl HomotopyWitness {
    pub fn verify(&self, p: &MfMorphism) -> Result<bool> {
        let (e, f) = (p.src(), p.dst());
        let p1 = f.e0().checked_mul(&self.s1)?.checked_add(&self.s0.checked_mul(e.e1())?)?;
        let p0 = self.s1.checked_mul(e.e0())?.checked_add(&f.e1().checked_mul(&self.s0)?)?;
        Ok(&p1 == p.p1() && &p0 == p.p0())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homotopy {
    Witness(HomotopyWitness),
    /// The vectorized `(p0, p1)` has this nonzero normal form modulo the
    /// image of `D`.
    NotNullHomotopic { normal_form: Vec<Poly> },
}

impl Homotopy {
    pub fn witness(&self) -> Option<&HomotopyWitness> {
        match self {
            Homotopy::Witness(w) => Some(w),
            Homotopy::NotNullHomotopic { .. } => None,
        }
    }

    pub fn is_null(&self) -> bool {
        self.witness().is_some()
    }
}

/// Solve `D s = p` over `S`.
pub fn null_homotopy(p: &MfMorphism) -> Result<Homotopy> {
    let (e, f) = (p.src(), p.dst());
    let ctx = e.context();
    let ring = ctx.ring();
    let (re, rf) = (e.rank(), f.rank());
    let (_, d_odd) = hom_differential_matrices(e, f)?;
    let mut rhs = p.p0().vectorize();
    rhs.extend(p.p1().vectorize());
    let b = RingMatrix::from_columns(ring, rhs.len(), &[rhs])?;
    match lift(ctx, &d_odd, &b, Over::S)? {
        Lift::Solution(x) => {
            let v = x.column(0);
            let n = rf * re;
            let w = HomotopyWitness {
                s0: RingMatrix::unvectorize(ring, rf, re, &v[..n]),
                s1: RingMatrix::unvectorize(ring, rf, re, &v[n..]),
            };
            debug_assert!(w.verify(p).unwrap_or(false));
            Ok(Homotopy::Witness(w))
        }
        Lift::NoSolution { normal_form, .. } => Ok(Homotopy::NotNullHomotopic { normal_form }),
    }
}

/// `E ≅ 0` in the homotopy category iff `id_E` is null-homotopic.
pub fn is_contractible(e: &MatrixFactorization) -> Result<Homotopy> {
    null_homotopy(&MfMorphism::identity(e))
}

/// `p` is an isomorphism in the homotopy category iff its cone is
/// contractible.
pub fn is_homotopy_equivalence(p: &MfMorphism) -> Result<bool> {
    let c = super::cone(p)?;
    Ok(is_contractible(&c.object)?.is_null())
}

/// `dim_k H^0 Hom(E, F)`.
pub fn hom_space_dimension(e: &MatrixFactorization, f: &MatrixFactorization) -> Result<Dim> {
    if **e.context() != **f.context() {
        return Err(Error::ContextMismatch);
    }
    let ctx = e.context();
    let (d_even, d_odd) = hom_differential_matrices(e, f)?;
    let n = d_even.cols();
    if n == 0 {
        return Ok(Dim::Finite(0));
    }
    let cycles = kernel_modulo(ctx, &d_even, &[], Over::S)?;
    let boundaries = d_odd.columns();
    let h = subquotient(ctx, n, &cycles, &boundaries, Over::S)?;
    k_dimension(&h)
}
