//! Buchberger's algorithm for submodules of a free module `S^r`.
//!
//! Vectors are sparse lists of `(position, monomial, coefficient)` terms
//! sorted descending. Positions are split into blocks at the engine's
//! boundaries; a lower block is larger, then the ring's monomial order
//! decides, then a lower position is larger. A single block is the usual
//! term-over-position order, and a boundary makes the part before it
//! dominate, for elimination.
//!
//! Positions at or beyond `top` are *carried*: they never hold a leading
//! term and are never reduced, so they record how each basis element was
//! assembled from the input. With `top == rank` this is plain Buchberger.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coef: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Build from polynomial components placed at `offset + i`.
    pub fn from_polys(polys: &[Poly], offset: usize) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term {
                    pos: offset + i,
                    mono: m.clone(),
                    coef: *c,
                });
            }
        }
        // grouped by position; the engine sorts before use
        Vector { terms }
    }

    /// Components `lo..hi` as polynomials.
    pub fn to_polys(&self, ring: &Arc<Ring>, lo: usize, hi: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); hi - lo];
        for t in &self.terms {
            if t.pos >= lo && t.pos < hi {
                buckets[t.pos - lo].push((t.mono.clone(), t.coef));
            }
        }
        buckets
            .into_iter()
            .map(|ts| Poly::from_sorted_terms(ring, ts))
            .collect()
    }

    pub fn has_support_below(&self, top: usize) -> bool {
        self.terms.first().is_some_and(|t| t.pos < top)
    }
}

pub(crate) struct Engine<'a> {
    pub ring: &'a Arc<Ring>,
    /// Positions `>= top` are carried.
    pub top: usize,
    /// Ascending block boundaries below `top`.
    bounds: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub elems: Vec<Vector>,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a Arc<Ring>, top: usize) -> Self {
        Engine {
            ring,
            top,
            bounds: Vec::new(),
        }
    }

    /// Positions below each boundary dominate those above it.
    pub fn with_blocks(ring: &'a Arc<Ring>, top: usize, bounds: &[usize]) -> Self {
        Engine {
            ring,
            top,
            bounds: bounds.to_vec(),
        }
    }

    #[inline]
    fn block(&self, pos: usize) -> usize {
        if pos >= self.top {
            return self.bounds.len() + 1;
        }
        self.bounds.iter().take_while(|&&b| b <= pos).count()
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.block(b.pos)
            .cmp(&self.block(a.pos))
            .then_with(|| self.ring.cmp_monomials(&a.mono, &b.mono))
            .then_with(|| b.pos.cmp(&a.pos))
    }

    pub fn sort(&self, v: &mut Vector) {
        let ring = self.ring;
        v.terms.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(v.terms.len());
        for t in v.terms.drain(..) {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => {
                    l.coef = ring.add_coef(l.coef, t.coef);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        v.terms = out;
    }

    /// `a[start..] + c * m * b`.
    fn axpy(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let ring = self.ring;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < b.len() {
                let t = &b[j];
                pending = Some(Term {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coef: ring.mul_coef(t.coef, c),
                });
            }
            match (a.get(i), pending.as_ref()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (Some(x), Some(y)) => match self.cmp_terms(x, y) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = ring.add_coef(x.coef, y.coef);
                        if s != 0 {
                            out.push(Term {
                                pos: x.pos,
                                mono: x.mono.clone(),
                                coef: s,
                            });
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
        out
    }

    pub fn add_scaled(&self, a: &Vector, c: u32, m: &Monomial, b: &Vector) -> Vector {
        Vector {
            terms: self.axpy(&a.terms, c, m, &b.terms),
        }
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coef: self.ring.mul_coef(t.coef, c),
                })
                .filter(|t| t.coef != 0)
                .collect(),
        }
    }

    /// Normalize the lead coefficient; returns the factor applied.
    fn monic(&self, v: Vector) -> (Vector, u32) {
        match v.terms.first() {
            Some(t) if t.coef != 1 => {
                let s = self.ring.inv_coef(t.coef);
                (self.scale(&v, s), s)
            }
            _ => (v, 1),
        }
    }

    fn find_reducer(&self, basis: &[Vector], t: &Term, skip: Option<usize>) -> Option<usize> {
        basis.iter().enumerate().position(|(i, g)| {
            if Some(i) == skip {
                return false;
            }
            let l = &g.terms[0];
            l.pos == t.pos && l.mono.divides(&t.mono)
        })
    }

    /// Reduce `v` by `basis` (whose elements all have leads in the ordered
    /// part). With `full` every ordered term is reduced, otherwise only the
    /// head.
    pub fn reduce(&self, v: &Vector, basis: &[Vector], full: bool) -> Vector {
        let mut v = v.clone();
        self.sort(&mut v);
        self.reduce_skipping(&v, basis, full, None, None)
    }

    /// As [`Engine::reduce`]; each step `v += c * m * basis[j]` is appended
    /// to `ops` as `(c, m, j)` when given.
    fn reduce_skipping(
        &self,
        v: &Vector,
        basis: &[Vector],
        full: bool,
        skip: Option<usize>,
        mut ops: Option<&mut Vec<Step>>,
    ) -> Vector {
        let ring = self.ring;
        let mut done: Vec<Term> = Vec::new();
        let mut acc = Buckets::new(self, &v.terms);
        let mut reducing = true;
        while let Some(head) = acc.pop_lead() {
            if !reducing || head.pos >= self.top {
                done.push(head);
                continue;
            }
            match self.find_reducer(basis, &head, skip) {
                Some(j) => {
                    let g = &basis[j];
                    let l = &g.terms[0];
                    let m = l.mono.quotient_of(&head.mono);
                    let c = ring.neg_coef(ring.mul_coef(head.coef, ring.inv_coef(l.coef)));
                    // the head cancels against the lead of c * m * g
                    acc.add(self.axpy(&[], c, &m, &g.terms[1..]));
                    if let Some(ops) = ops.as_deref_mut() {
                        ops.push((c, m, j));
                    }
                }
                None => {
                    reducing = full;
                    done.push(head);
                }
            }
        }
        Vector { terms: done }
    }

    /// Groebner basis of the submodule generated by `gens` (ordered part),
    /// optionally interreduced. Elements whose ordered part vanishes are
    /// dropped.
    ///
    /// The run itself only sees ordered parts. Every element it creates is
    /// logged as a combination of older ones, and carried parts are expanded
    /// from that log at the end, for the elements the result depends on.
    pub fn groebner(&self, gens: &[Vector], reduced: bool) -> Result<Basis> {
        let max_steps = self.ring.max_steps();
        let mut log = Log::default();
        let mut ordered = Vec::with_capacity(gens.len());
        let mut carried_inputs = Vec::with_capacity(gens.len());
        for g in gens {
            let mut v = g.clone();
            self.sort(&mut v);
            let split = v.terms.partition_point(|t| t.pos < self.top);
            carried_inputs.push(Vector {
                terms: v.terms.split_off(split),
            });
            ordered.push(v);
            log.push(Vec::new());
        }

        let mut work = Work::default();
        for (id, v) in ordered.iter().enumerate() {
            let mut ops = Vec::new();
            let r = self.reduce_skipping(v, &work.elems, false, None, Some(&mut ops));
            if !r.is_zero() {
                let mut recipe = vec![(1, Monomial::one(self.ring.nvars()), id)];
                recipe.extend(ops.into_iter().map(|(c, m, k)| (c, m, work.ids[k])));
                self.insert(r, recipe, &mut work, &mut log);
            }
        }

        let mut steps = 0usize;
        while let Some(&(deg, i, j)) = work.pending.iter().next() {
            work.pending.remove(&(deg, i, j));
            work.pending_keys.remove(&(i, j));
            steps += 1;
            if steps > max_steps {
                return Err(Error::ResourceLimit(format!(
                    "Groebner basis exceeded {max_steps} pair steps"
                )));
            }
            let (li, lj) = (&work.elems[i].terms[0], &work.elems[j].terms[0]);
            // coprime leads only guarantee a zero S-vector for ideals
            if self.top == 1 && li.mono.is_coprime(&lj.mono) {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            let chain = (0..work.elems.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let lk = &work.elems[k].terms[0];
                lk.pos == li.pos
                    && lk.mono.divides(&lcm)
                    && !work.pending_keys.contains(&(i.min(k), i.max(k)))
                    && !work.pending_keys.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let (s, mut ops) = self.spoly(&work.elems, i, j);
            let r = self.reduce_skipping(&s, &work.elems, false, None, Some(&mut ops));
            if !r.is_zero() {
                let recipe = ops.into_iter().map(|(c, m, k)| (c, m, work.ids[k])).collect();
                self.insert(r, recipe, &mut work, &mut log);
            }
        }

        let (elems, ids) = if reduced {
            self.interreduce(work.elems, work.ids, &mut log)
        } else {
            (work.elems, work.ids)
        };
        let carried = self.expand(&log, &carried_inputs, &ids);
        let elems = elems
            .into_iter()
            .zip(&ids)
            .map(|(mut v, id)| {
                if let Some(c) = &carried[*id] {
                    v.terms.extend_from_slice(&c.terms);
                }
                v
            })
            .collect();
        Ok(Basis { elems })
    }

    fn insert(&self, v: Vector, mut recipe: Recipe, work: &mut Work, log: &mut Log) {
        let (v, s) = self.monic(v);
        if s != 1 {
            for op in &mut recipe {
                op.0 = self.ring.mul_coef(op.0, s);
            }
        }
        let new = work.elems.len();
        let lv = v.terms[0].clone();
        for (i, g) in work.elems.iter().enumerate() {
            let lg = &g.terms[0];
            if lg.pos != lv.pos {
                continue;
            }
            let deg = lg.mono.lcm(&lv.mono).degree();
            work.pending.insert((deg, i, new));
            work.pending_keys.insert((i, new));
        }
        work.ids.push(log.push(recipe));
        work.elems.push(v);
    }

    /// S-vector of `basis[i]` and `basis[j]` with its two steps.
    fn spoly(&self, basis: &[Vector], i: usize, j: usize) -> (Vector, Vec<Step>) {
        let ring = self.ring;
        let (f, g) = (&basis[i], &basis[j]);
        let (lf, lg) = (&f.terms[0], &g.terms[0]);
        let lcm = lf.mono.lcm(&lg.mono);
        let mf = lf.mono.quotient_of(&lcm);
        let mg = lg.mono.quotient_of(&lcm);
        let cf = ring.inv_coef(lf.coef);
        let a = Vector {
            terms: self.axpy(&[], cf, &mf, &f.terms),
        };
        let cg = ring.neg_coef(ring.inv_coef(lg.coef));
        (self.add_scaled(&a, cg, &mg, g), vec![(cf, mf, i), (cg, mg, j)])
    }

    /// Minimalize, tail-reduce, normalize and sort descending by lead.
    fn interreduce(&self, basis: Vec<Vector>, ids: Vec<usize>, log: &mut Log) -> (Vec<Vector>, Vec<usize>) {
        let mut keep: Vec<Vector> = Vec::new();
        let mut keep_ids: Vec<usize> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lg = &g.terms[0];
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                let lh = &h.terms[0];
                k != i
                    && lh.pos == lg.pos
                    && lh.mono.divides(&lg.mono)
                    && (lh.mono != lg.mono || k < i)
            });
            if !redundant {
                keep.push(g.clone());
                keep_ids.push(ids[i]);
            }
        }
        // ascending leads: tails only meet smaller leads, already reduced
        let mut order: Vec<usize> = (0..keep.len()).collect();
        order.sort_by(|&a, &b| self.cmp_terms(&keep[a].terms[0], &keep[b].terms[0]));
        let mut elems: Vec<Vector> = Vec::with_capacity(keep.len());
        let mut ids: Vec<usize> = Vec::with_capacity(keep.len());
        for k in order {
            let mut ops = Vec::new();
            let r = self.reduce_skipping(&keep[k], &elems, true, None, Some(&mut ops));
            let (r, s) = self.monic(r);
            let id = if ops.is_empty() && s == 1 {
                keep_ids[k]
            } else {
                let mut recipe: Recipe = vec![(1, Monomial::one(self.ring.nvars()), keep_ids[k])];
                recipe.extend(ops.into_iter().map(|(c, m, j)| (c, m, ids[j])));
                for op in &mut recipe {
                    op.0 = self.ring.mul_coef(op.0, s);
                }
                log.push(recipe)
            };
            elems.push(r);
            ids.push(id);
        }
        elems.reverse();
        ids.reverse();
        (elems, ids)
    }

    /// Carried parts of the logged elements `wanted` and their ancestors.
    fn expand(&self, log: &Log, inputs: &[Vector], wanted: &[usize]) -> Vec<Option<Vector>> {
        let n = log.recipes.len();
        let mut out: Vec<Option<Vector>> = vec![None; n];
        if inputs.iter().all(Vector::is_zero) {
            return out;
        }
        let mut needed = vec![false; n];
        for &id in wanted {
            needed[id] = true;
        }
        // recipes only refer to older entries
        for id in (0..n).rev() {
            if needed[id] {
                for (_, _, src) in &log.recipes[id] {
                    needed[*src] = true;
                }
            }
        }
        for id in 0..n {
            if !needed[id] {
                continue;
            }
            let v = if id < inputs.len() {
                inputs[id].clone()
            } else {
                let mut terms = Vec::new();
                for (c, m, src) in &log.recipes[id] {
                    let part = out[*src].as_ref().expect("ancestors expanded first");
                    terms.extend(part.terms.iter().map(|t| Term {
                        pos: t.pos,
                        mono: t.mono.mul(m),
                        coef: self.ring.mul_coef(t.coef, *c),
                    }));
                }
                let mut v = Vector { terms };
                self.sort(&mut v);
                v
            };
            out[id] = Some(v);
        }
        out
    }
}

/// Geobucket accumulator: a sum of sorted term lists of geometrically
/// growing lengths, so that adding a short vector to a long one does not
/// rewrite the long one.
struct Buckets<'e, 'a> {
    engine: &'e Engine<'a>,
    /// `(terms, start)`; live terms are `terms[start..]`.
    slots: Vec<(Vec<Term>, usize)>,
}

impl<'e, 'a> Buckets<'e, 'a> {
    fn new(engine: &'e Engine<'a>, terms: &[Term]) -> Self {
        let mut b = Buckets {
            engine,
            slots: Vec::new(),
        };
        b.add(terms.to_vec());
        b
    }

    fn slot_for(len: usize) -> usize {
        let mut i = 0;
        while len > 4 << (2 * i) {
            i += 1;
        }
        i
    }

    fn add(&mut self, mut terms: Vec<Term>) {
        if terms.is_empty() {
            return;
        }
        let one = Monomial::one(self.engine.ring.nvars());
        let mut i = Self::slot_for(terms.len());
        loop {
            if self.slots.len() <= i {
                self.slots.resize_with(i + 1, || (Vec::new(), 0));
            }
            let (old, start) = std::mem::take(&mut self.slots[i]);
            if start < old.len() {
                terms = self.engine.axpy(&old[start..], 1, &one, &terms);
            }
            let next = Self::slot_for(terms.len());
            if next <= i {
                self.slots[i] = (terms, 0);
                return;
            }
            i = next;
        }
    }

    /// Remove and return the leading term of the sum.
    fn pop_lead(&mut self) -> Option<Term> {
        let ring = self.engine.ring;
        loop {
            let mut best: Option<usize> = None;
            for (k, (t, s)) in self.slots.iter().enumerate() {
                let Some(h) = t.get(*s) else { continue };
                match best {
                    Some(b) if self.engine.cmp_terms(h, &self.slots[b].0[self.slots[b].1]) != Ordering::Greater => {}
                    _ => best = Some(k),
                }
            }
            let b = best?;
            let (bt, bs) = &self.slots[b];
            let mut lead = bt[*bs].clone();
            let mut coef = 0;
            for (t, s) in self.slots.iter_mut() {
                if let Some(h) = t.get(*s) {
                    if h.pos == lead.pos && h.mono == lead.mono {
                        coef = ring.add_coef(coef, h.coef);
                        *s += 1;
                    }
                }
            }
            if coef != 0 {
                lead.coef = coef;
                return Some(lead);
            }
        }
    }
}

/// One reduction step `(c, m, j)`: add `c * m * element j`.
type Step = (u32, Monomial, usize);
/// Linear combination of logged elements, by log index.
type Recipe = Vec<(u32, Monomial, usize)>;

/// How every element of a run was built. Inputs come first with empty
/// recipes.
#[derive(Default)]
struct Log {
    recipes: Vec<Recipe>,
}

impl Log {
    fn push(&mut self, recipe: Recipe) -> usize {
        self.recipes.push(recipe);
        self.recipes.len() - 1
    }
}

/// Current basis with log indices and the pair queue.
#[derive(Default)]
struct Work {
    elems: Vec<Vector>,
    ids: Vec<usize>,
    pending: BTreeSet<(u32, usize, usize)>,
    pending_keys: BTreeSet<(usize, usize)>,
}
