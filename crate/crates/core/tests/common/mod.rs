#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use mfsing::mf::{HomElement, MatrixFactorization, MfMorphism};
use mfsing::module::RingMatrix;
use mfsing::ring::{Monomial, MonomialOrder, Poly, Ring, RingContext};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const P: u32 = 32003;

pub fn context(vars: &[&str], w: &str) -> Arc<RingContext> {
    let r = Ring::new(P, vars, MonomialOrder::Grevlex).unwrap();
    let w = r.parse(w).unwrap();
    RingContext::new(r, w, 0).unwrap()
}

pub fn mat(ctx: &RingContext, rows: &[&str]) -> RingMatrix {
    RingMatrix::parse_rows(ctx.ring(), rows).unwrap()
}

pub fn mf(ctx: &Arc<RingContext>, e1: &[&str], e0: &[&str]) -> MatrixFactorization {
    MatrixFactorization::new(ctx, mat(ctx, e1), mat(ctx, e0)).unwrap()
}

pub fn a_n_object(ctx: &Arc<RingContext>, n: usize, a: usize) -> MatrixFactorization {
    mf(ctx, &[&format!("x^{a}")], &[&format!("x^{}", n + 1 - a)])
}

// ---------------------------------------------------------------------------
// random instances

pub fn random_poly(ring: &Arc<Ring>, rng: &mut ChaCha8Rng, max_deg: u32, max_terms: usize) -> Poly {
    let n = ring.nvars();
    let terms = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let mut exps = vec![0u32; n];
            let d = rng.gen_range(0..=max_deg);
            for _ in 0..d {
                exps[rng.gen_range(0..n)] += 1;
            }
            (Monomial::from_exps(&exps), rng.gen_range(1..P))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

pub fn random_matrix(
    ring: &Arc<Ring>,
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    max_deg: u32,
    max_terms: usize,
) -> RingMatrix {
    let entries = (0..rows * cols)
        .map(|_| random_poly(ring, rng, max_deg, max_terms))
        .collect();
    RingMatrix::new(ring, rows, cols, entries).unwrap()
}

/// A random invertible matrix as a product of elementary matrices, with
/// its inverse.
pub fn random_unimodular(ring: &Arc<Ring>, rng: &mut ChaCha8Rng, n: usize) -> (RingMatrix, RingMatrix) {
    let mut m = RingMatrix::identity(ring, n);
    let mut inv = RingMatrix::identity(ring, n);
    if n < 2 {
        let c = rng.gen_range(1..P);
        let u = Poly::constant(ring, c as i64);
        let ui = Poly::constant(ring, ring.inv_coef(c) as i64);
        return (m.scale_poly(&u), inv.scale_poly(&ui));
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f = random_poly(ring, rng, 1, 2);
        let mut e = RingMatrix::identity(ring, n);
        e.set(i, j, f.clone());
        let mut e_inv = RingMatrix::identity(ring, n);
        e_inv.set(i, j, -f);
        m = &e * &m;
        inv = &inv * &e_inv;
    }
    (m, inv)
}

/// Base objects of the catalog rings.
pub fn base_objects() -> Vec<Vec<MatrixFactorization>> {
    let a3 = context(&["x"], "x^4");
    let node = context(&["x", "y"], "x*y");
    let cusp = context(&["x", "y"], "x^3 - y^2");
    let cubic = context(&["x", "y", "z"], "x^3 + y^3 + z^3");
    vec![
        (1..=3).map(|a| a_n_object(&a3, 3, a)).collect(),
        vec![mf(&node, &["x"], &["y"]), mf(&node, &["y"], &["x"])],
        vec![mf(&cusp, &["x, y", "y, x^2"], &["x^2, -y", "-y, x"])],
        vec![mf(
            &cubic,
            &["x + y, z", "-z^2, x^2 - x*y + y^2"],
            &["x^2 - x*y + y^2, -z", "z^2, x + y"],
        )],
    ]
}

/// A random valid factorization of rank at most 4: a sum of base objects
/// and trivial pairs, conjugated by random invertible matrices.
pub fn random_mf(rng: &mut ChaCha8Rng) -> MatrixFactorization {
    let fam = rng.gen_range(0..base_objects().len());
    random_mf_in(rng, fam)
}

/// [`random_mf`] over the ring of family `fam` of [`base_objects`].
pub fn random_mf_in(rng: &mut ChaCha8Rng, fam: usize) -> MatrixFactorization {
    let families = base_objects();
    let family = &families[fam];
    let ctx = family[0].context().clone();
    let mut e = family[rng.gen_range(0..family.len())].clone();
    while e.rank() < 4 && rng.gen_bool(0.5) {
        let extra = if rng.gen_bool(0.3) {
            let o = if rng.gen_bool(0.5) {
                mfsing::mf::Orientation::IdFirst
            } else {
                mfsing::mf::Orientation::WFirst
            };
            MatrixFactorization::trivial(&ctx, 1, o).unwrap()
        } else {
            family[rng.gen_range(0..family.len())].clone()
        };
        if e.rank() + extra.rank() > 4 {
            break;
        }
        e = e.direct_sum(&extra).unwrap();
    }
    if rng.gen_bool(0.5) {
        e = e.shift();
    }
    let (p, p_inv) = random_unimodular(ctx.ring(), rng, e.rank());
    let (q, q_inv) = random_unimodular(ctx.ring(), rng, e.rank());
    e.conjugate(&p, &p_inv, &q, &q_inv).unwrap()
}

/// A random morphism `E -> F`: a null-homotopic part `D(h)` plus, when
/// `E = F`, a polynomial multiple of the identity.
pub fn random_morphism(rng: &mut ChaCha8Rng, e: &MatrixFactorization, f: &MatrixFactorization) -> MfMorphism {
    let ring = e.context().ring();
    let s0 = random_matrix(ring, rng, f.rank(), e.rank(), 1, 2);
    let s1 = random_matrix(ring, rng, f.rank(), e.rank(), 1, 2);
    let d = mfsing::mf::hom_differential(&HomElement::odd(s0, s1), e, f).unwrap();
    let mut p = MfMorphism::new(e, f, d.block(1, 1).clone(), d.block(0, 0).clone()).unwrap();
    if e == f {
        let c = random_poly(ring, rng, 1, 2);
        p = p.add(&MfMorphism::identity(e).scale(&c)).unwrap();
    }
    p
}

// ---------------------------------------------------------------------------
// brute-force oracle for dim H^0 Hom(E, F) on weighted-homogeneous input

type Exps = Vec<u32>;
type Dense = BTreeMap<Exps, u64>;

fn to_dense(f: &Poly) -> Dense {
    f.terms()
        .iter()
        .map(|(m, c)| (m.exps().to_vec(), *c as u64))
        .collect()
}

fn wdeg(exps: &[u32], weights: &[i64]) -> i64 {
    exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum()
}

fn homogeneous_degree(f: &Poly, weights: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (m, _) in f.terms() {
        let d = wdeg(m.exps(), weights);
        match deg {
            None => deg = Some(d),
            Some(d0) => assert_eq!(d0, d, "oracle needs weighted-homogeneous entries"),
        }
    }
    deg
}

/// Generator degrees `(d0, d1)` making `e1` and `e0` homogeneous of
/// degrees `0` and `deg W`.
fn generator_degrees(e: &MatrixFactorization, weights: &[i64], dw: i64) -> (Vec<i64>, Vec<i64>) {
    let r = e.rank();
    let mut d0: Vec<Option<i64>> = vec![None; r];
    let mut d1: Vec<Option<i64>> = vec![None; r];
    loop {
        let mut changed = false;
        for i in 0..r {
            for j in 0..r {
                if let Some(k) = homogeneous_degree(e.e1().get(i, j), weights) {
                    match (d0[i], d1[j]) {
                        (Some(a), None) => {
                            d1[j] = Some(a + k);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            d0[i] = Some(b - k);
                            changed = true;
                        }
                        (Some(a), Some(b)) => assert_eq!(b, a + k, "inconsistent grading"),
                        _ => {}
                    }
                }
                if let Some(k) = homogeneous_degree(e.e0().get(j, i), weights) {
                    match (d0[i], d1[j]) {
                        (Some(a), None) => {
                            d1[j] = Some(a + dw - k);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            d0[i] = Some(b + k - dw);
                            changed = true;
                        }
                        (Some(a), Some(b)) => assert_eq!(b + k, a + dw, "inconsistent grading"),
                        _ => {}
                    }
                }
            }
        }
        if !changed {
            match d0.iter().position(Option::is_none) {
                Some(i) => d0[i] = Some(0),
                None => match d1.iter().position(Option::is_none) {
                    Some(j) => d1[j] = Some(0),
                    None => break,
                },
            }
        }
    }
    (
        d0.into_iter().map(Option::unwrap).collect(),
        d1.into_iter().map(Option::unwrap).collect(),
    )
}

fn monomials_of_degree(weights: &[i64], d: i64) -> Vec<Exps> {
    fn go(weights: &[i64], d: i64, prefix: &mut Vec<u32>, out: &mut Vec<Exps>) {
        if prefix.len() == weights.len() - 1 {
            let w = weights[prefix.len()];
            if d >= 0 && d % w == 0 {
                let mut e = prefix.clone();
                e.push((d / w) as u32);
                out.push(e);
            }
            return;
        }
        let w = weights[prefix.len()];
        let mut k = 0;
        while k * w <= d {
            prefix.push(k as u32);
            go(weights, d - k * w, prefix, out);
            prefix.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Block index, row, column, exponent vector.
type Coord = (usize, usize, usize, Exps);

struct Space {
    coords: Vec<Coord>,
    index: BTreeMap<Coord, usize>,
}

impl Space {
    /// `degs[b](row, col)` is the required entry degree of block `b`.
    fn new(weights: &[i64], rows: usize, cols: usize, degs: [&dyn Fn(usize, usize) -> i64; 2]) -> Space {
        let mut coords = Vec::new();
        for (b, deg) in degs.iter().enumerate() {
            for i in 0..rows {
                for j in 0..cols {
                    for m in monomials_of_degree(weights, deg(i, j)) {
                        coords.push((b, i, j, m));
                    }
                }
            }
        }
        let index = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        Space { coords, index }
    }
}

fn dense_matrix(m: &RingMatrix) -> Vec<Vec<Dense>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| to_dense(m.get(i, j))).collect())
        .collect()
}

/// `acc[row][col] += sign * a[row][k] * x^m` for a single-entry matrix `x^m` at `(k, col)`.
fn add_left(acc: &mut BTreeMap<(usize, usize, usize, Exps), u64>, block: usize, a: &[Vec<Dense>], k: usize, col: usize, m: &Exps, sign: u64) {
    for (row, a_row) in a.iter().enumerate() {
        for (ea, ca) in &a_row[k] {
            let e: Exps = ea.iter().zip(m).map(|(x, y)| x + y).collect();
            let slot = acc.entry((block, row, col, e)).or_insert(0);
            *slot = (*slot + ca * sign) % P as u64;
        }
    }
}

/// `acc[row][c] += sign * x^m * a[k][c]` for a single-entry matrix `x^m` at `(row, k)`.
fn add_right(acc: &mut BTreeMap<(usize, usize, usize, Exps), u64>, block: usize, a: &[Vec<Dense>], row: usize, k: usize, m: &Exps, sign: u64) {
    for (c, ea_c) in a[k].iter().enumerate() {
        for (ea, ca) in ea_c {
            let e: Exps = ea.iter().zip(m).map(|(x, y)| x + y).collect();
            let slot = acc.entry((block, row, c, e)).or_insert(0);
            *slot = (*slot + ca * sign) % P as u64;
        }
    }
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let p = P as u64;
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Images of the basis of `src` as rows over the coordinates of `dst`.
fn image_rows(
    src: &Space,
    dst: &Space,
    apply: &dyn Fn(&Coord, &mut BTreeMap<Coord, u64>),
) -> Vec<Vec<u64>> {
    src.coords
        .iter()
        .map(|c| {
            let mut acc = BTreeMap::new();
            apply(c, &mut acc);
            let mut row = vec![0u64; dst.coords.len()];
            for (k, v) in acc {
                if v != 0 {
                    let idx = dst.index.get(&k).expect("image leaves the graded piece");
                    row[*idx] = v;
                }
            }
            row
        })
        .collect()
}

/// `dim_k H^0 Hom(E, F)` by linear algebra on graded pieces, from the
/// defining identities of morphisms (`p1 e0 = f0 p0`, `f1 p1 = p0 e1`) and
/// homotopies (`p0 = s1 e0 + f1 s0`, `p1 = f0 s1 + s0 e1`). Returns the
/// dimension and the per-degree contributions.
pub fn brute_hom_dim(e: &MatrixFactorization, f: &MatrixFactorization, weights: &[i64]) -> (u64, Vec<(i64, u64)>) {
    let dw = homogeneous_degree(e.context().w(), weights).unwrap();
    let (de0, de1) = generator_degrees(e, weights, dw);
    let (df0, df1) = generator_degrees(f, weights, dw);
    let (re, rf) = (e.rank(), f.rank());
    if re == 0 || rf == 0 {
        return (0, Vec::new());
    }
    let m = P as u64 - 1;
    let (ee1, ee0) = (dense_matrix(e.e1()), dense_matrix(e.e0()));
    let (ff1, ff0) = (dense_matrix(f.e1()), dense_matrix(f.e0()));

    let even = |t: i64| {
        let p0 = |i: usize, j: usize| de0[j] + t - df0[i];
        let p1 = |i: usize, j: usize| de1[j] + t - df1[i];
        Space::new(weights, rf, re, [&p0, &p1])
    };
    let odd = |t: i64| {
        let s0 = |i: usize, j: usize| de0[j] + t - df1[i];
        let s1 = |i: usize, j: usize| de1[j] + t - dw - df0[i];
        Space::new(weights, rf, re, [&s0, &s1])
    };
    let lo = (0..rf)
        .flat_map(|i| (0..re).map(move |j| (i, j)))
        .map(|(i, j)| (df0[i] - de0[j]).min(df1[i] - de1[j]))
        .min()
        .unwrap();
    let spread = de0.iter().chain(&de1).chain(&df0).chain(&df1).max().unwrap()
        - de0.iter().chain(&de1).chain(&df0).chain(&df1).min().unwrap();
    let hi = lo + 4 * dw + 2 * spread + 2;

    let mut total = 0;
    let mut pieces = Vec::new();
    for t in lo..=hi {
        let c0 = even(t);
        if c0.coords.is_empty() {
            continue;
        }
        let c1_next = odd(t + dw);
        let c1 = odd(t);
        // cycles: kernel of (p0, p1) -> (f0 p0 - p1 e0, f1 p1 - p0 e1)
        let d_even = image_rows(&c0, &c1_next, &|c, acc| {
            let (b, i, j, mono) = c;
            if *b == 0 {
                add_left(acc, 0, &ff0, *i, *j, mono, 1);
                add_right(acc, 1, &ee1, *i, *j, mono, m);
            } else {
                add_right(acc, 0, &ee0, *i, *j, mono, m);
                add_left(acc, 1, &ff1, *i, *j, mono, 1);
            }
        });
        let cycles = c0.coords.len() - rank_mod_p(d_even);
        // boundaries: (s0, s1) -> (s1 e0 + f1 s0, f0 s1 + s0 e1)
        let boundaries = if c1.coords.is_empty() {
            0
        } else {
            let d_odd = image_rows(&c1, &c0, &|c, acc| {
                let (b, i, j, mono) = c;
                if *b == 0 {
                    add_left(acc, 0, &ff1, *i, *j, mono, 1);
                    add_right(acc, 1, &ee1, *i, *j, mono, 1);
                } else {
                    add_right(acc, 0, &ee0, *i, *j, mono, 1);
                    add_left(acc, 1, &ff0, *i, *j, mono, 1);
                }
            });
            rank_mod_p(d_odd)
        };
        let h = (cycles - boundaries) as u64;
        if h > 0 {
            pieces.push((t, h));
        }
        total += h;
    }
    if let Some((t, _)) = pieces.last() {
        assert!(*t <= hi - dw, "oracle window too small");
    }
    (total, pieces)
}
