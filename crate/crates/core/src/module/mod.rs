//! Linear algebra over `S` and over the hypersurface ring `R = S/(W')`.
//!
//! `R` is never built explicitly: whenever a computation is over `R`, the
//! vectors `W' * e_i` are adjoined to the relevant generating set and the
//! work is done over `S`.

mod matrix;

pub use matrix::RingMatrix;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::{Engine, Vector};
use crate::ring::{divide, Monomial, Poly, Ring, RingContext};

/// Base ring of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Over {
    S,
    R,
}

impl fmt::Display for Over {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Over::S => "S",
            Over::R => "R",
        })
    }
}

/// Vector-space dimension over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Enumeration bound for standard monomials.
const MAX_STAIRCASE: u64 = 20_000_000;

/// Reduced Groebner basis of a submodule of `S^rank` in
/// position-over-term order (lower position is larger).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGB {
    ring: Arc<Ring>,
    rank: usize,
    basis: Vec<Vector>,
}

impl ModuleGB {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn generators(&self) -> Vec<Vec<Poly>> {
        self.basis
            .iter()
            .map(|v| v.to_polys(&self.ring, 0, self.rank))
            .collect()
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        let engine = Engine::new(&self.ring, self.rank);
        engine
            .reduce(&Vector::from_polys(v, 0), &self.basis, true)
            .to_polys(&self.ring, 0, self.rank)
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        let engine = Engine::new(&self.ring, self.rank);
        engine
            .reduce(&Vector::from_polys(v, 0), &self.basis, false)
            .is_zero()
    }

    pub fn contains_all(&self, vs: &[Vec<Poly>]) -> bool {
        vs.iter().all(|v| self.contains(v))
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis
            .iter()
            .map(|v| (v.terms[0].pos, v.terms[0].mono.clone()))
            .collect()
    }

    /// Standard monomials `m * e_pos` of the quotient `S^rank / U`, or
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Result<Option<Vec<(usize, Monomial)>>> {
        let n = self.ring.nvars();
        let leads = self.leading_terms();
        let mut out = Vec::new();
        for pos in 0..self.rank {
            let ls: Vec<&Monomial> = leads
                .iter()
                .filter(|(p, _)| *p == pos)
                .map(|(_, m)| m)
                .collect();
            if ls.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![u32::MAX; n];
            for m in &ls {
                if let Some((i, k)) = m.as_pure_power() {
                    bounds[i] = bounds[i].min(k);
                }
            }
            if bounds.contains(&u32::MAX) {
                return Ok(None);
            }
            let total: u64 = bounds.iter().map(|&b| b as u64).product();
            if total > MAX_STAIRCASE {
                return Err(Error::ResourceLimit(format!(
                    "staircase enumeration of {total} monomials"
                )));
            }
            let mut exps = vec![0u32; n];
            'odometer: loop {
                let m = Monomial::from_exps(&exps);
                if !ls.iter().any(|l| l.divides(&m)) {
                    out.push((pos, m));
                }
                for i in 0..n {
                    exps[i] += 1;
                    if exps[i] < bounds[i] {
                        continue 'odometer;
                    }
                    exps[i] = 0;
                }
                break;
            }
        }
        // deterministic: by position, then descending in the ring order
        out.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| self.ring.cmp_monomials(&b.1, &a.1))
        });
        Ok(Some(out))
    }

    /// `dim_k S^rank / U`.
    pub fn quotient_dimension(&self) -> Result<Dim> {
        Ok(match self.standard_monomials()? {
            Some(v) => Dim::Finite(v.len() as u64),
            None => Dim::Infinite,
        })
    }
}

/// The vectors `W' * e_i` of `S^rank`.
pub fn w_columns(ctx: &RingContext, rank: usize) -> Vec<Vec<Poly>> {
    let ring = ctx.ring();
    (0..rank)
        .map(|i| {
            let mut v = vec![Poly::zero(ring); rank];
            v[i] = ctx.w().clone();
            v
        })
        .collect()
}

fn with_w(ctx: &RingContext, rank: usize, vectors: &[Vec<Poly>], over: Over) -> Vec<Vec<Poly>> {
    let mut all = vectors.to_vec();
    if over == Over::R {
        all.extend(w_columns(ctx, rank));
    }
    all
}

/// Whether `f` is zero in `R`.
pub fn vanishes_mod_w(ctx: &RingContext, f: &Poly) -> bool {
    divide(f, std::slice::from_ref(ctx.w()))
        .map(|(_, r)| r.is_zero())
        .unwrap_or(false)
}

fn vanishes(ctx: &RingContext, v: &[Poly], over: Over) -> bool {
    match over {
        Over::S => v.iter().all(Poly::is_zero),
        Over::R => v.iter().all(|f| vanishes_mod_w(ctx, f)),
    }
}

/// Reduced Groebner basis of the submodule generated by `vectors`;
/// over `R` the vectors `W' * e_i` are adjoined first.
pub fn module_groebner(ctx: &RingContext, rank: usize, vectors: &[Vec<Poly>], over: Over) -> Result<ModuleGB> {
    let ring = ctx.ring();
    if vectors.iter().any(|v| v.len() != rank) {
        return Err(Error::Shape(format!("vectors must have length {rank}")));
    }
    let gens: Vec<Vector> = with_w(ctx, rank, vectors, over)
        .iter()
        .map(|v| Vector::from_polys(v, 0))
        .collect();
    let basis = Engine::new(ring, rank).groebner(&gens, true)?;
    Ok(ModuleGB {
        ring: ring.clone(),
        rank,
        basis: basis.elems,
    })
}

/// Generators of the kernel of `m: S^cols -> S^rows` (over `S`) or of the
/// induced map `R^cols -> R^rows` (over `R`). Columns generate the kernel
/// and satisfy `m * K = 0` over the stated ring.
pub fn syzygy(ctx: &RingContext, m: &RingMatrix, over: Over) -> Result<RingMatrix> {
    let cols = kernel_modulo(ctx, m, &[], over)?;
    RingMatrix::from_columns(ctx.ring(), m.cols(), &cols)
}

/// Kernel of `a: S^c -> S^r / <extra, (W')>`; returns generating columns
/// in `S^c`.
pub fn kernel_modulo(ctx: &RingContext, a: &RingMatrix, extra: &[Vec<Poly>], over: Over) -> Result<Vec<Vec<Poly>>> {
    let ring = ctx.ring();
    let r = a.rows();
    let c = a.cols();
    let mut columns = a.columns();
    columns.extend(with_w(ctx, r, extra, over));
    let total = columns.len();
    // elimination: [a | extra; I] with the image block dominating
    let gens: Vec<Vector> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut comps = col.clone();
            comps.extend((0..total).map(|k| {
                if k == j {
                    Poly::one(ring)
                } else {
                    Poly::zero(ring)
                }
            }));
            Vector::from_polys(&comps, 0)
        })
        .collect();
    let basis = Engine::with_blocks(ring, r + total, &[r]).groebner(&gens, true)?;
    let mut out: Vec<Vec<Poly>> = Vec::new();
    for v in &basis.elems {
        if v.terms[0].pos < r {
            continue;
        }
        let k = v.to_polys(ring, r, r + c);
        if vanishes(ctx, &k, over) || out.contains(&k) {
            continue;
        }
        out.push(k);
    }
    Ok(out)
}

/// Outcome of [`lift`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lift {
    Solution(RingMatrix),
    /// Column `column` of the right-hand side has the nonzero normal form
    /// `normal_form` modulo the column space.
    NoSolution {
        column: usize,
        normal_form: Vec<Poly>,
    },
}

impl Lift {
    pub fn solution(self) -> Option<RingMatrix> {
        match self {
            Lift::Solution(x) => Some(x),
            Lift::NoSolution { .. } => None,
        }
    }
}

/// Solve `a * X = b` over the stated ring.
pub fn lift(ctx: &RingContext, a: &RingMatrix, b: &RingMatrix, over: Over) -> Result<Lift> {
    let ring = ctx.ring();
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "lift: {} rows vs {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let r = a.rows();
    let mut columns = a.columns();
    columns.extend(with_w(ctx, r, &[], over));
    let mut system = UnitElimination::new(ring, r, &columns, b);
    system.eliminate();
    let (cols, rhs) = system.reduced();
    match solve_over_s(ring, system.rows.len(), &cols, &rhs)? {
        Lift::Solution(y) => {
            let full = system.back_substitute(&y);
            Ok(Lift::Solution(full.submatrix(0, a.cols(), 0, b.cols())))
        }
        Lift::NoSolution { column, normal_form } => {
            let mut nf = vec![Poly::zero(ring); r];
            for (k, &i) in system.rows.iter().enumerate() {
                nf[i] = normal_form[k].clone();
            }
            Ok(Lift::NoSolution {
                column,
                normal_form: nf,
            })
        }
    }
}

/// Gaussian elimination on entries that are nonzero constants. Each pivot
/// fixes one unknown in terms of the others and drops one equation, so the
/// remaining system has the same solutions in the remaining unknowns.
struct UnitElimination<'a> {
    ring: &'a Arc<Ring>,
    a: Vec<Vec<Poly>>,
    b: Vec<Vec<Poly>>,
    /// Active equations and unknowns, ascending.
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// (row, col, inverse of the pivot), in elimination order.
    pivots: Vec<(usize, usize, u32)>,
}

impl<'a> UnitElimination<'a> {
    fn new(ring: &'a Arc<Ring>, rows: usize, columns: &[Vec<Poly>], b: &RingMatrix) -> Self {
        let a = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let b = (0..rows).map(|i| b.row(i).to_vec()).collect();
        UnitElimination {
            ring,
            a,
            b,
            rows: (0..rows).collect(),
            cols: (0..columns.len()).collect(),
            pivots: Vec::new(),
        }
    }

    /// Constant pivot with the least fill, ties broken by position.
    fn choose(&self) -> Option<(usize, usize)> {
        let row_nnz: Vec<usize> = self
            .rows
            .iter()
            .map(|&i| self.cols.iter().filter(|&&j| !self.a[i][j].is_zero()).count())
            .collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for &j in &self.cols {
            let col_nnz = self.rows.iter().filter(|&&i| !self.a[i][j].is_zero()).count();
            for (k, &i) in self.rows.iter().enumerate() {
                let f = &self.a[i][j];
                if f.is_zero() || !f.is_constant() {
                    continue;
                }
                let cost = (row_nnz[k] - 1) * (col_nnz - 1);
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn eliminate(&mut self) {
        while let Some((i, j)) = self.choose() {
            let inv = self.ring.inv_coef(self.a[i][j].constant_coef());
            self.rows.retain(|&r| r != i);
            self.cols.retain(|&c| c != j);
            for k in 0..self.rows.len() {
                let r = self.rows[k];
                if self.a[r][j].is_zero() {
                    continue;
                }
                let f = self.a[r][j].scale(inv);
                for &l in &self.cols {
                    if !self.a[i][l].is_zero() {
                        self.a[r][l] = &self.a[r][l] - &(&f * &self.a[i][l]);
                    }
                }
                self.a[r][j] = Poly::zero(self.ring);
                for l in 0..self.b[r].len() {
                    if !self.b[i][l].is_zero() {
                        self.b[r][l] = &self.b[r][l] - &(&f * &self.b[i][l]);
                    }
                }
            }
            self.pivots.push((i, j, inv));
        }
    }

    /// Remaining unknowns as columns, remaining right-hand side.
    fn reduced(&self) -> (Vec<Vec<Poly>>, RingMatrix) {
        let cols = self
            .cols
            .iter()
            .map(|&j| self.rows.iter().map(|&i| self.a[i][j].clone()).collect())
            .collect();
        let width = self.b.first().map_or(0, Vec::len);
        let rhs = if self.rows.is_empty() {
            RingMatrix::zeros(self.ring, 0, width)
        } else {
            let rows = self.rows.iter().map(|&i| self.b[i].clone()).collect();
            RingMatrix::from_rows(self.ring, rows).expect("rectangular by construction")
        };
        (cols, rhs)
    }

    /// Full solution from values `y` of the remaining unknowns.
    fn back_substitute(&self, y: &RingMatrix) -> RingMatrix {
        let n = self.a.first().map_or(self.cols.len(), Vec::len);
        let width = y.cols();
        let mut x: Vec<Vec<Poly>> = vec![vec![Poly::zero(self.ring); width]; n];
        for (k, &j) in self.cols.iter().enumerate() {
            x[j] = y.row(k).to_vec();
        }
        let mut known = vec![false; n];
        for &j in &self.cols {
            known[j] = true;
        }
        for &(i, j, inv) in self.pivots.iter().rev() {
            for l in 0..width {
                let mut acc = self.b[i][l].clone();
                for (m, xm) in x.iter().enumerate() {
                    if m != j && known[m] && !self.a[i][m].is_zero() {
                        acc = &acc - &(&self.a[i][m] * &xm[l]);
                    }
                }
                x[j][l] = acc.scale(inv);
            }
            known[j] = true;
        }
        RingMatrix::from_rows(self.ring, x).expect("rectangular by construction")
    }
}

/// Buchberger solve of `sum_j X[j] * columns[j] = b` over `S`.
fn solve_over_s(ring: &Arc<Ring>, r: usize, columns: &[Vec<Poly>], b: &RingMatrix) -> Result<Lift> {
    let total = columns.len();
    if r == 0 {
        return Ok(Lift::Solution(RingMatrix::zeros(ring, total, b.cols())));
    }
    let padded = |col: &[Poly], j: Option<usize>| {
        let mut comps = col.to_vec();
        comps.extend((0..total).map(|k| {
            if Some(k) == j {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            }
        }));
        Vector::from_polys(&comps, 0)
    };
    let gens: Vec<Vector> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| padded(col, Some(j)))
        .collect();
    // cofactor tracking: the identity block is carried, never reduced.
    // Normal forms do not depend on interreduction, which inflates cofactors.
    let engine = Engine::new(ring, r);
    let basis = engine.groebner(&gens, false)?;
    let mut x = RingMatrix::zeros(ring, total, b.cols());
    for j in 0..b.cols() {
        let nf = engine.reduce(&padded(&b.column(j), None), &basis.elems, true);
        if nf.has_support_below(r) {
            return Ok(Lift::NoSolution {
                column: j,
                normal_form: nf.to_polys(ring, 0, r),
            });
        }
        for (i, f) in nf.to_polys(ring, r, r + total).into_iter().enumerate() {
            x.set(i, j, -f);
        }
    }
    Ok(Lift::Solution(x))
}

/// Drop generators that are redundant: zero (over the stated ring) or in
/// the span of the remaining ones together with `extra`. Candidates of
/// higher degree are tried first.
pub fn prune_generators(
    ctx: &RingContext,
    rank: usize,
    gens: &[Vec<Poly>],
    extra: &[Vec<Poly>],
    over: Over,
) -> Result<Vec<Vec<Poly>>> {
    let mut keep: Vec<bool> = gens
        .iter()
        .map(|g| !vanishes(ctx, g, over))
        .collect();
    let degree = |g: &Vec<Poly>| g.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| keep[i]).collect();
    order.sort_by(|&a, &b| degree(&gens[b]).cmp(&degree(&gens[a])).then(b.cmp(&a)));
    for i in order {
        let mut others: Vec<Vec<Poly>> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && keep[k])
            .map(|(_, g)| g.clone())
            .collect();
        others.extend_from_slice(extra);
        if module_groebner(ctx, rank, &others, over)?.contains(&gens[i]) {
            keep[i] = false;
        }
    }
    Ok(gens
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g.clone())
        .collect())
}

/// Column-pruned copy of `m`.
pub fn prune_columns(ctx: &RingContext, m: &RingMatrix, over: Over) -> Result<RingMatrix> {
    let cols = prune_generators(ctx, m.rows(), &m.columns(), &[], over)?;
    RingMatrix::from_columns(ctx.ring(), m.rows(), &cols)
}

/// Finitely presented module `S^gens / (columns of presentation)`, read
/// over `R` when `over == Over::R` (the relations `W' * e_i` are then
/// implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPModule {
    ctx: Arc<RingContext>,
    presentation: RingMatrix,
    over: Over,
}

impl FPModule {
    /// Columns that vanish over the base ring are dropped; all other
    /// columns are kept verbatim.
    pub fn new(ctx: &Arc<RingContext>, presentation: RingMatrix, over: Over) -> Result<Self> {
        if **presentation.ring() != **ctx.ring() {
            return Err(Error::ContextMismatch);
        }
        let cols: Vec<Vec<Poly>> = presentation
            .columns()
            .into_iter()
            .filter(|c| !vanishes(ctx, c, over))
            .collect();
        let presentation = RingMatrix::from_columns(ctx.ring(), presentation.rows(), &cols)?;
        Ok(FPModule {
            ctx: ctx.clone(),
            presentation,
            over,
        })
    }

    /// `R^rank` (or `S^rank`).
    pub fn free(ctx: &Arc<RingContext>, rank: usize, over: Over) -> Self {
        FPModule {
            ctx: ctx.clone(),
            presentation: RingMatrix::zeros(ctx.ring(), rank, 0),
            over,
        }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn gens(&self) -> usize {
        self.presentation.rows()
    }

    pub fn presentation(&self) -> &RingMatrix {
        &self.presentation
    }

    pub fn over(&self) -> Over {
        self.over
    }

    /// Relation columns including the implicit `W' * e_i` over `R`.
    pub fn relations(&self) -> Vec<Vec<Poly>> {
        with_w(&self.ctx, self.gens(), &self.presentation.columns(), self.over)
    }

    pub fn gb(&self) -> Result<ModuleGB> {
        module_groebner(&self.ctx, self.gens(), &self.presentation.columns(), self.over)
    }

    /// Whether the element with coordinates `v` is zero in the module.
    pub fn is_zero_element(&self, v: &[Poly]) -> Result<bool> {
        Ok(self.gb()?.contains(v))
    }

    /// Same submodule of relations (same module on the same generators).
    pub fn same_presentation(&self, other: &FPModule) -> Result<bool> {
        if self.gens() != other.gens() {
            return Ok(false);
        }
        let a = self.gb()?;
        let b = other.gb()?;
        Ok(a == b)
    }

    /// Direct sum with block-diagonal presentation.
    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        if self.over != other.over {
            return Err(Error::InvalidArgument("direct sum over different rings".into()));
        }
        let p = RingMatrix::block_diag(&[&self.presentation, &other.presentation]);
        FPModule::new(&self.ctx, p, self.over)
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coker {} over {} ({} generators)",
            self.presentation,
            self.over,
            self.gens()
        )
    }
}

/// `dim_k M`.
pub fn k_dimension(m: &FPModule) -> Result<Dim> {
    m.gb()?.quotient_dimension()
}

/// Presentation of `K / (K ∩ L)` where `K` is generated by `sub` and `L`
/// by `rel`, both inside `S^rank`. Generator `j` of the result is the class
/// of `sub[j]`.
pub fn subquotient(
    ctx: &Arc<RingContext>,
    rank: usize,
    sub: &[Vec<Poly>],
    rel: &[Vec<Poly>],
    over: Over,
) -> Result<FPModule> {
    let ring = ctx.ring();
    let mut cols = sub.to_vec();
    cols.extend_from_slice(rel);
    if cols.is_empty() {
        return Ok(FPModule::free(ctx, 0, over));
    }
    let a = RingMatrix::from_columns(ring, rank, &cols)?;
    let syz = kernel_modulo(ctx, &a, &[], Over::S)?;
    let s = sub.len();
    let proj: Vec<Vec<Poly>> = syz
        .into_iter()
        .map(|k| k[..s].to_vec())
        .filter(|k| k.iter().any(|f| !f.is_zero()))
        .collect();
    let pres = RingMatrix::from_columns(ring, s, &proj)?;
    FPModule::new(ctx, pres, over)
}

/// Presentation of `Hom(M, N)` together with the generating morphisms.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FPModule,
    /// Generator `j` of `module` is the module map given by this
    /// `gens(N) x gens(M)` matrix (column `i` = image of generator `i`).
    pub generators: Vec<RingMatrix>,
    /// Generators of `{h : h * pres(M) ⊂ rel(N)}` in vectorized form.
    pub(crate) kernel: Vec<Vec<Poly>>,
    /// Vectorized maps that are zero in `Hom(M, N)`.
    pub(crate) zero_maps: Vec<Vec<Poly>>,
    /// Matrix of `h -> h * pres(M)` on vectorized `h`.
    pub(crate) action: RingMatrix,
}

fn common_over(m: &FPModule, n: &FPModule) -> Result<Over> {
    if m.over() != n.over() {
        return Err(Error::InvalidArgument("modules over different rings".into()));
    }
    if **m.context() != **n.context() {
        return Err(Error::ContextMismatch);
    }
    Ok(m.over())
}

/// Matrix of `h -> h * phi` acting on column-major vectorized
/// `g_n x g_m` matrices.
pub(crate) fn right_action(ring: &Arc<Ring>, g_n: usize, phi: &RingMatrix) -> RingMatrix {
    let g_m = phi.rows();
    let m_m = phi.cols();
    let mut a = RingMatrix::zeros(ring, g_n * m_m, g_n * g_m);
    for k in 0..m_m {
        for j in 0..g_m {
            let f = phi.get(j, k);
            if f.is_zero() {
                continue;
            }
            for i in 0..g_n {
                a.set(k * g_n + i, j * g_n + i, f.clone());
            }
        }
    }
    a
}

/// Relations of `N^copies` in vectorized coordinates.
fn repeated_relations(n: &FPModule, copies: usize) -> Vec<Vec<Poly>> {
    let ring = n.context().ring();
    let g = n.gens();
    let mut out = Vec::new();
    for c in 0..copies {
        for rel in n.relations() {
            let mut v = vec![Poly::zero(ring); g * copies];
            v[c * g..(c + 1) * g].clone_from_slice(&rel);
            out.push(v);
        }
    }
    out
}

/// `Hom(M, N)` as the kernel of `Hom(F0(M), N) -> Hom(F1(M), N)`.
pub fn hom_module(m: &FPModule, n: &FPModule) -> Result<HomModule> {
    let over = common_over(m, n)?;
    let ctx = m.context();
    let ring = ctx.ring();
    let (g_m, g_n) = (m.gens(), n.gens());
    let action = right_action(ring, g_n, m.presentation());
    let target_rel = repeated_relations(n, m.presentation().cols());
    let zero_maps = repeated_relations(n, g_m);
    let kernel_raw = kernel_modulo(ctx, &action, &target_rel, Over::S)?;
    let kernel = prune_generators(ctx, g_n * g_m, &kernel_raw, &zero_maps, Over::S)?;
    let module = subquotient(ctx, g_n * g_m, &kernel, &zero_maps, over)?;
    let generators = kernel
        .iter()
        .map(|v| RingMatrix::unvectorize(ring, g_n, g_m, v))
        .collect();
    Ok(HomModule {
        module,
        generators,
        kernel,
        zero_maps,
        action,
    })
}

/// Matrices `d_1, d_2, ...` of a free resolution of `M` over `R`, at most
/// `steps` of them; stops early when a kernel vanishes. `d_1` is the pruned
/// presentation. A step whose input is square prefers the complementary
/// factor `X` with `d X = W' I`, when `X` generates the kernel over `R`.
pub fn resolution_matrices(m: &FPModule, steps: usize) -> Result<Vec<RingMatrix>> {
    if m.over() != Over::R {
        return Err(Error::InvalidArgument("resolutions are computed over R".into()));
    }
    let ctx = m.context();
    let mut mats = Vec::new();
    if steps == 0 {
        return Ok(mats);
    }
    let d1 = prune_columns(ctx, m.presentation(), Over::R)?;
    if d1.cols() == 0 {
        return Ok(mats);
    }
    mats.push(d1);
    while mats.len() < steps {
        let next = next_syzygy_matrix(ctx, mats.last().unwrap())?;
        if next.cols() == 0 {
            break;
        }
        mats.push(next);
    }
    Ok(mats)
}

/// One resolution step over `R`: a matrix whose columns generate the
/// kernel of `d` over `R`.
pub fn next_syzygy_matrix(ctx: &RingContext, d: &RingMatrix) -> Result<RingMatrix> {
    let ring = ctx.ring();
    let kernel = kernel_modulo(ctx, d, &[], Over::R)?;
    if kernel.is_empty() {
        return Ok(RingMatrix::zeros(ring, d.cols(), 0));
    }
    if d.is_square() {
        let w = RingMatrix::scalar(ring, d.rows(), ctx.w());
        if let Lift::Solution(x) = lift(ctx, d, &w, Over::S)? {
            let span = module_groebner(ctx, x.rows(), &x.columns(), Over::R)?;
            if span.contains_all(&kernel) {
                return Ok(x);
            }
        }
    }
    let cols = prune_generators(ctx, d.cols(), &kernel, &[], Over::R)?;
    RingMatrix::from_columns(ring, d.cols(), &cols)
}

/// `dim_k Ext^i_R(M, R)` for `i >= 1`.
pub fn ext_dim(m: &FPModule, i: usize) -> Result<Dim> {
    if i == 0 {
        return Err(Error::InvalidArgument("ext_dim needs i >= 1".into()));
    }
    let mats = resolution_matrices(m, i + 1)?;
    ext_dim_from_resolution(m.context(), &mats, i)
}

/// `dim_k Ext^i_R(M, R)` from resolution matrices `d_1, d_2, ...` that
/// reach at least `d_{i+1}` (or stop early because a kernel vanished).
pub fn ext_dim_from_resolution(ctx: &Arc<RingContext>, mats: &[RingMatrix], i: usize) -> Result<Dim> {
    if i == 0 {
        return Err(Error::InvalidArgument("ext_dim needs i >= 1".into()));
    }
    let ring = ctx.ring();
    // F_i has rank cols(d_i); d_{i+1} may be absent (zero map)
    let rank_i = match mats.get(i - 1) {
        Some(d) => d.cols(),
        None => return Ok(Dim::Finite(0)),
    };
    if rank_i == 0 {
        return Ok(Dim::Finite(0));
    }
    let cycles = match mats.get(i) {
        Some(d_next) => kernel_modulo(ctx, &d_next.transpose(), &[], Over::R)?,
        None => (0..rank_i)
            .map(|k| {
                (0..rank_i)
                    .map(|l| if l == k { Poly::one(ring) } else { Poly::zero(ring) })
                    .collect()
            })
            .collect(),
    };
    let mut boundaries = mats[i - 1].transpose().columns();
    boundaries.extend(w_columns(ctx, rank_i));
    let q = subquotient(ctx, rank_i, &cycles, &boundaries, Over::R)?;
    k_dimension(&q)
}
