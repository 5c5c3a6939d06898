use super::{MatrixFactorization, MfMorphism};
use crate::error::{Error, Result};
use crate::module::RingMatrix;

/// A bounded complex `E^start -> E^(start+1) -> ...` in the category of
/// matrix factorizations.
#[derive(Clone, Debug)]
pub struct PairComplex {
    start: i64,
    objects: Vec<MatrixFactorization>,
    maps: Vec<MfMorphism>,
    first_nonzero_composite: Option<usize>,
}

impl PairComplex {
    /// `maps[i]` goes from `objects[i]` to `objects[i + 1]`.
    pub fn new(start: i64, objects: Vec<MatrixFactorization>, maps: Vec<MfMorphism>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::InvalidArgument("complex with no objects".into()));
        }
        if maps.len() + 1 != objects.len() {
            return Err(Error::Shape(format!(
                "{} objects need {} maps, got {}",
                objects.len(),
                objects.len() - 1,
                maps.len()
            )));
        }
        for (i, d) in maps.iter().enumerate() {
            if *d.src() != objects[i] || *d.dst() != objects[i + 1] {
                return Err(Error::Shape(format!("map {i} does not connect objects {i} and {}", i + 1)));
            }
        }
        let mut first_nonzero_composite = None;
        for (i, w) in maps.windows(2).enumerate() {
            if !super::compose(&w[0], &w[1])?.is_zero() {
                first_nonzero_composite = Some(i);
                break;
            }
        }
        Ok(PairComplex {
            start,
            objects,
            maps,
            first_nonzero_composite,
        })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn objects(&self) -> &[MatrixFactorization] {
        &self.objects
    }

    pub fn maps(&self) -> &[MfMorphism] {
        &self.maps
    }

    /// Whether every composite of consecutive maps vanishes.
    pub fn is_complex(&self) -> bool {
        self.first_nonzero_composite.is_none()
    }
}

/// `T1 = ⊕_{k+m odd} E^m_k`, `T0 = ⊕_{k+m even} E^m_k`, with
/// `t = d^m_k + (-1)^m e_k`. Summands are ordered by `m`.
pub fn totalize(c: &PairComplex) -> Result<MatrixFactorization> {
    if let Some(i) = c.first_nonzero_composite {
        return Err(Error::NotAComplex { index: i });
    }
    let ctx = c.objects[0].context().clone();
    let ring = ctx.ring();
    let ranks: Vec<usize> = c.objects.iter().map(MatrixFactorization::rank).collect();
    let mut offsets = Vec::with_capacity(ranks.len());
    let mut total = 0;
    for r in &ranks {
        offsets.push(total);
        total += r;
    }
    // t[k] maps the summands of parity class k (T1 for k = 1) to the other
    let mut t = [RingMatrix::zeros(ring, total, total), RingMatrix::zeros(ring, total, total)];
    for (idx, obj) in c.objects.iter().enumerate() {
        let m = c.start + idx as i64;
        let odd_m = m.rem_euclid(2) == 1;
        for k in 0..2usize {
            // E^m_k sits in T_{(k+m) mod 2}
            let class = (k + odd_m as usize) % 2;
            let own = if k == 1 { obj.e1() } else { obj.e0() };
            let own = if odd_m { -own } else { own.clone() };
            place(&mut t[class], &own, offsets[idx], offsets[idx]);
            if let Some(d) = c.maps.get(idx) {
                let dk = if k == 1 { d.p1() } else { d.p0() };
                place(&mut t[class], dk, offsets[idx + 1], offsets[idx]);
            }
        }
    }
    let [t0, t1] = t;
    MatrixFactorization::new(&ctx, t1, t0)
}

fn place(target: &mut RingMatrix, block: &RingMatrix, r0: usize, c0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let f = block.get(i, j);
            if !f.is_zero() {
                target.set(r0 + i, c0 + j, f.clone());
            }
        }
    }
}
