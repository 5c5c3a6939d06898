//! The fiber-ring side: cokernels of matrix factorizations, resolutions
//! over `R`, stabilization of modules, and stable Hom.
//!
//! Morphisms in the singularity category are modeled by `Hom_R(M, N)`
//! modulo maps that factor through the free cover of `N`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mf::{
    hom_space_dimension, is_homotopy_equivalence, HomotopyWitness, MatrixFactorization, MfMorphism, Orientation,
};
use crate::module::{
    ext_dim_from_resolution, hom_module, kernel_modulo, lift, module_groebner, next_syzygy_matrix,
    prune_columns, prune_generators, resolution_matrices, subquotient, Dim, FPModule, Lift, Over,
    RingMatrix,
};
use crate::ring::RingContext;

/// `coker(e1)` as a module over `R`.
pub fn cok(e: &MatrixFactorization) -> Result<FPModule> {
    FPModule::new(e.context(), e.e1().clone(), Over::R)
}

/// The module map `cok(E) -> cok(F)` induced by `p`, on generators.
pub fn cok_morphism(p: &MfMorphism) -> RingMatrix {
    p.p0().clone()
}

fn require_r(m: &FPModule) -> Result<()> {
    if m.over() != Over::R {
        return Err(Error::InvalidArgument("expected a module over R".into()));
    }
    Ok(())
}

/// First syzygy over `R`, generated by the columns of the pruned
/// presentation of `M`.
pub fn syzygy_r(m: &FPModule) -> Result<FPModule> {
    require_r(m)?;
    let ctx = m.context();
    let d1 = prune_columns(ctx, m.presentation(), Over::R)?;
    if d1.cols() == 0 {
        return Ok(FPModule::free(ctx, 0, Over::R));
    }
    let d2 = next_syzygy_matrix(ctx, &d1)?;
    FPModule::new(ctx, d2, Over::R)
}

/// A free resolution `... -> F_2 --d_2--> F_1 --d_1--> F_0 -> M` over `R`.
#[derive(Clone, Debug)]
pub struct ResolutionR {
    pub module: FPModule,
    /// `mats[i]` is `d_{i+1}`.
    pub mats: Vec<RingMatrix>,
    /// `ranks[i]` is `b_i = rank F_i`.
    pub ranks: Vec<usize>,
    pub periodic_from: Option<usize>,
}

impl ResolutionR {
    /// `d_i d_{i+1} = 0` over `R` and `im d_{i+1} = ker d_i` at every
    /// computed step.
    pub fn verify(&self) -> Result<bool> {
        let ctx = self.module.context();
        for w in self.mats.windows(2) {
            let prod = w[0].checked_mul(&w[1])?;
            if !prod.entries().iter().all(|f| crate::module::vanishes_mod_w(ctx, f)) {
                return Ok(false);
            }
            let kernel = kernel_modulo(ctx, &w[0], &[], Over::R)?;
            let image = module_groebner(ctx, w[1].rows(), &w[1].columns(), Over::R)?;
            if !image.contains_all(&kernel) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn same_column_space(ctx: &RingContext, a: &RingMatrix, b: &RingMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Ok(false);
    }
    let ga = module_groebner(ctx, a.rows(), &a.columns(), Over::R)?;
    let gb = module_groebner(ctx, b.rows(), &b.columns(), Over::R)?;
    Ok(ga.contains_all(&b.columns()) && gb.contains_all(&a.columns()))
}

/// Resolve `M` to length at most `len` and detect the 2-periodic tail.
pub fn free_resolution_r(m: &FPModule, len: usize) -> Result<ResolutionR> {
    require_r(m)?;
    if len == 0 {
        return Err(Error::InvalidArgument("resolution length must be at least 1".into()));
    }
    let ctx = m.context();
    let mats = resolution_matrices(m, len)?;
    let mut ranks = vec![m.gens()];
    ranks.extend(mats.iter().map(RingMatrix::cols));
    let l = mats.len();
    // index i satisfies the tail condition when b_i = b_(i+1) and, for
    // i >= 1, d_(i+2) and d_i have the same column space
    let holds_at = |i: usize| -> Result<bool> {
        if ranks[i] != ranks[i + 1] {
            return Ok(false);
        }
        if i >= 1 && i + 2 <= l {
            return same_column_space(ctx, &mats[i + 1], &mats[i - 1]);
        }
        Ok(true)
    };
    let mut periodic_from = None;
    if l >= 3 && l == len {
        let mut s = l;
        while s > 0 && holds_at(s - 1)? {
            s -= 1;
        }
        if s <= l - 2 {
            periodic_from = Some(s);
        }
    }
    Ok(ResolutionR {
        module: m.clone(),
        mats,
        ranks,
        periodic_from,
    })
}

/// `Ext^i(M, R) = 0` for `1 <= i <= n`.
pub fn mcm_check(m: &FPModule) -> Result<bool> {
    require_r(m)?;
    let ctx = m.context();
    let n = ctx.nvars();
    let mats = resolution_matrices(m, n + 1)?;
    for i in 1..=n {
        if ext_dim_from_resolution(ctx, &mats, i)? != Dim::Finite(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A matrix factorization whose cokernel represents `M` in the stable
/// category. Non-MCM input is first replaced by its `(n+1)`-st syzygy and
/// the result shifted back.
pub fn stabilize(m: &FPModule) -> Result<MatrixFactorization> {
    require_r(m)?;
    let ctx = m.context();
    let k = if mcm_check(m)? { 0 } else { ctx.nvars() + 1 };
    let (g, phi) = if k == 0 {
        (m.gens(), m.presentation().clone())
    } else {
        let mats = resolution_matrices(m, k + 1)?;
        if mats.len() < k {
            // finite projective dimension: zero in the stable category
            return Ok(MatrixFactorization::zero(ctx));
        }
        let g = mats[k - 1].cols();
        let phi = mats
            .get(k)
            .cloned()
            .unwrap_or_else(|| RingMatrix::zeros(ctx.ring(), g, 0));
        (g, phi)
    };
    let e = cover_factorization(ctx, g, &phi)?;
    Ok(e.shift_by(k))
}

/// `E0 = S^g`, `e1` a free basis of `im(phi) + W' S^g`, `e0 = W' e1^-1`.
fn cover_factorization(
    ctx: &Arc<RingContext>,
    g: usize,
    phi: &RingMatrix,
) -> Result<MatrixFactorization> {
    let ring = ctx.ring();
    if g == 0 {
        return Ok(MatrixFactorization::zero(ctx));
    }
    let mut gens = phi.columns();
    gens.extend(crate::module::w_columns(ctx, g));
    let basis = prune_generators(ctx, g, &gens, &[], Over::S)?;
    if basis.len() != g {
        return Err(Error::FreenessCertificateFailed(format!(
            "relation module needs {} generators on a free module of rank {g}",
            basis.len()
        )));
    }
    let e1 = RingMatrix::from_columns(ring, g, &basis)?;
    if !kernel_modulo(ctx, &e1, &[], Over::S)?.is_empty() {
        return Err(Error::FreenessCertificateFailed(
            "relation generators have nonzero syzygies".into(),
        ));
    }
    let w = RingMatrix::scalar(ring, g, ctx.w());
    let e0 = match lift(ctx, &e1, &w, Over::S)? {
        Lift::Solution(x) => x,
        Lift::NoSolution { column, .. } => {
            return Err(Error::FreenessCertificateFailed(format!(
                "W' e_{column} is not in the relation module"
            )))
        }
    };
    MatrixFactorization::new(ctx, e1, e0)
}

/// Output of [`transport_morphism`].
#[derive(Clone, Debug)]
pub struct Transport {
    pub cover: MatrixFactorization,
    /// `p: F' -> E` with `cok(p) = a` after identifying `cok(F') = cok(F)`.
    pub p: MfMorphism,
    /// `s: F' -> F`, a homotopy equivalence.
    pub s: MfMorphism,
}

/// Lift a module map `a: cok(F) -> cok(E)` (a `rank E x rank F` matrix)
/// to a roof `F <-s- F' -p-> E`. `F' = F ⊕ (I, W' I)` on `rank E`
/// copies; the extra summand maps onto `E0` through `e1`, which makes `p0`
/// surjective onto `cok(E)` whenever `a` is.
pub fn transport_morphism(
    a: &RingMatrix,
    f: &MatrixFactorization,
    e: &MatrixFactorization,
) -> Result<Transport> {
    if **f.context() != **e.context() {
        return Err(Error::ContextMismatch);
    }
    let ctx = f.context();
    let ring = ctx.ring();
    let (rf, re) = (f.rank(), e.rank());
    if a.rows() != re || a.cols() != rf {
        return Err(Error::Shape(format!(
            "module map must be {re}x{rf}, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let af1 = a.checked_mul(f.e1())?;
    let b = match lift(ctx, e.e1(), &af1, Over::S)? {
        Lift::Solution(b) => b,
        Lift::NoSolution { column, .. } => return Err(Error::IncompatibleMorphism { column }),
    };
    let cover = if re == 0 {
        f.clone()
    } else {
        f.direct_sum(&MatrixFactorization::trivial(ctx, re, Orientation::IdFirst)?)?
    };
    let p0 = RingMatrix::hstack(&[a, e.e1()])?;
    let p1 = RingMatrix::hstack(&[&b, &RingMatrix::identity(ring, re)])?;
    let p = MfMorphism::new(&cover, e, p1, p0)?;
    let proj = RingMatrix::hstack(&[
        &RingMatrix::identity(ring, rf),
        &RingMatrix::zeros(ring, rf, re),
    ])?;
    let s = MfMorphism::new(&cover, f, proj.clone(), proj)?;
    Ok(Transport { cover, p, s })
}

/// Comparison of `E` with `stabilize(cok E)`.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub stabilized: MatrixFactorization,
    pub transport: Transport,
    /// Both legs of the roof are homotopy equivalences.
    pub equivalence: bool,
}

/// Stabilize `cok(E)` again and transport the identity of cokernels back
/// to `E`.
pub fn round_trip(e: &MatrixFactorization) -> Result<RoundTrip> {
    let stabilized = stabilize(&cok(e)?)?;
    let id = RingMatrix::identity(e.context().ring(), e.rank());
    let transport = transport_morphism(&id, &stabilized, e)?;
    let equivalence = is_homotopy_equivalence(&transport.p)? && is_homotopy_equivalence(&transport.s)?;
    Ok(RoundTrip {
        stabilized,
        transport,
        equivalence,
    })
}

/// A map `h': cok(E) -> F0` into the free cover with `cok(p) = h'` modulo
/// the relations of `cok(F)`, read off a null-homotopy of `p: E -> F`.
pub fn free_factorization(p: &MfMorphism, w: &HomotopyWitness) -> Result<RingMatrix> {
    let h = w.s1.checked_mul(p.src().e0())?;
    let diff = p.p0().checked_sub(&h)?;
    let ctx = p.src().context();
    let rel = module_groebner(ctx, p.dst().rank(), &p.dst().e1().columns(), Over::R)?;
    if !rel.contains_all(&diff.columns()) {
        return Err(Error::InvalidArgument("witness does not match the morphism".into()));
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableHomResult {
    pub dimension: Dim,
    /// A `k`-basis of the stable Hom space when it is finite, otherwise
    /// module generators. Each is a `gens(N) x gens(M)` matrix.
    pub generators: Vec<RingMatrix>,
}

/// `Hom_R(M, N)` modulo maps factoring through the free cover of `N`.
pub fn stable_hom_dimension(m: &FPModule, n: &FPModule) -> Result<StableHomResult> {
    require_r(m)?;
    require_r(n)?;
    let ctx = m.context();
    let ring = ctx.ring();
    let (g_m, g_n) = (m.gens(), n.gens());
    if g_m == 0 || g_n == 0 {
        return Ok(StableHomResult {
            dimension: Dim::Finite(0),
            generators: Vec::new(),
        });
    }
    let hom = hom_module(m, n)?;
    let mut killed = kernel_modulo(ctx, &hom.action, &[], Over::R)?;
    killed.extend(hom.zero_maps.iter().cloned());
    let q = subquotient(ctx, g_n * g_m, &hom.kernel, &killed, Over::R)?;
    let gb = q.gb()?;
    let (dimension, generators) = match gb.standard_monomials()? {
        Some(basis) => {
            let gens = basis
                .iter()
                .map(|(pos, mono)| {
                    let v: Vec<_> = hom.kernel[*pos]
                        .iter()
                        .map(|f| f.mul_term(mono, 1))
                        .collect();
                    RingMatrix::unvectorize(ring, g_n, g_m, &v)
                })
                .collect::<Vec<_>>();
            (Dim::Finite(gens.len() as u64), gens)
        }
        None => (Dim::Infinite, hom.generators.clone()),
    };
    Ok(StableHomResult {
        dimension,
        generators,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One comparison `dim H^0 Hom(E, F)` against `dim Hom_stable(cok E, cok F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub mf_side: Dim,
    pub module_side: Dim,
    pub verdict: Verdict,
}

impl Comparison {
    fn new(mf_side: Dim, module_side: Dim) -> Self {
        let verdict = match (mf_side, module_side) {
            (Dim::Infinite, _) | (_, Dim::Infinite) => Verdict::Inconclusive,
            (a, b) if a == b => Verdict::Pass,
            _ => Verdict::Fail,
        };
        Comparison {
            mf_side,
            module_side,
            verdict,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.verdict == Verdict::Fail { "!=" } else { "=" };
        write!(f, "{} {} {} {}", self.verdict, self.mf_side, rel, self.module_side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FfReport {
    pub direct: Comparison,
    /// The same comparison for `(E, F[1])`.
    pub shifted: Comparison,
}

impl FfReport {
    pub fn verdict(&self) -> Verdict {
        let v = [self.direct.verdict, self.shifted.verdict];
        if v.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if v.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

fn compare(e: &MatrixFactorization, f: &MatrixFactorization) -> Result<Comparison> {
    let mf_side = hom_space_dimension(e, f)?;
    let module_side = stable_hom_dimension(&cok(e)?, &cok(f)?)?.dimension;
    Ok(Comparison::new(mf_side, module_side))
}

pub fn verify_fully_faithful(e: &MatrixFactorization, f: &MatrixFactorization) -> Result<FfReport> {
    if **e.context() != **f.context() {
        return Err(Error::ContextMismatch);
    }
    Ok(FfReport {
        direct: compare(e, f)?,
        shifted: compare(e, &f.shift())?,
    })
}

#[cfg(test)]
mod tests;
