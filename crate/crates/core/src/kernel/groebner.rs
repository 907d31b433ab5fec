//! Division algorithm and Buchberger's algorithm.
//!
//! Internally polynomials are kept as term vectors sorted by increasing
//! monomial, so the leading term is the last entry.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use super::coeff::{Coeff, Field};
use super::order::MonomialOrder;
use super::poly::{Monomial, Poly, PolyRing};
use super::KernelError;

pub const DEFAULT_STEP_LIMIT: u64 = 100_000;

thread_local! {
    static STEP_LIMIT: Cell<u64> = const { Cell::new(DEFAULT_STEP_LIMIT) };
}

/// Runs `f` with a different reduction-step limit on the current thread.
pub fn with_step_limit<R>(limit: u64, f: impl FnOnce() -> R) -> R {
    let previous = STEP_LIMIT.with(|c| c.replace(limit));
    let out = f();
    STEP_LIMIT.with(|c| c.set(previous));
    out
}

pub fn current_step_limit() -> u64 {
    STEP_LIMIT.with(|c| c.get())
}

/// Counts reduction steps for one kernel operation.
pub(crate) struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new() -> Self {
        Budget { used: 0, limit: current_step_limit() }
    }

    fn tick(&mut self) -> Result<(), KernelError> {
        self.used += 1;
        if self.used > self.limit {
            return Err(KernelError::ResourceLimit { limit: self.limit });
        }
        Ok(())
    }
}

type Terms = Vec<(Monomial, Coeff)>;

struct Ctx<'a> {
    field: Field,
    order: &'a MonomialOrder,
}

impl Ctx<'_> {
    fn to_terms(&self, p: &Poly) -> Terms {
        let mut t = p.sorted_terms(self.order);
        t.reverse();
        t
    }

    fn leading<'t>(&self, t: &'t Terms) -> &'t (Monomial, Coeff) {
        t.last().expect("nonzero polynomial")
    }

    fn monic(&self, t: Terms) -> Terms {
        let inv = self.field.inv(&self.leading(&t).1);
        t.into_iter().map(|(m, c)| (m, self.field.mul(&c, &inv))).collect()
    }

    /// `f - c * mono * g`, both sorted ascending.
    fn sub_scaled(&self, f: &Terms, g: &Terms, mono: &Monomial, c: &Coeff) -> Terms {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<(Monomial, Coeff)> = g
            .iter()
            .map(|(m, a)| (m.mul(mono), self.field.neg(&self.field.mul(a, c))))
            .collect();
        while i < f.len() || j < shifted.len() {
            let ord = if i == f.len() {
                Ordering::Greater
            } else if j == shifted.len() {
                Ordering::Less
            } else {
                self.order.cmp(&f[i].0, &shifted[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.field.add(&f[i].1, &shifted[j].1);
                    if !self.field.is_zero(&s) {
                        out.push((f[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full reduction of `f` by `basis` (all nonzero).
    fn reduce(&self, f: Terms, basis: &[&Terms], budget: &mut Budget) -> Result<Terms, KernelError> {
        let mut p = f;
        let mut rem: Terms = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            match basis.iter().find(|g| self.leading(g).0.divides(&lm)) {
                Some(g) => {
                    budget.tick()?;
                    let (glm, glc) = self.leading(g);
                    let q = lm.div(glm);
                    let c = self.field.div(&lc, glc);
                    p.pop();
                    // the leading terms cancel; reduce against g without its leading term
                    let tail: Terms = g[..g.len() - 1].to_vec();
                    p = self.sub_scaled(&p, &tail, &q, &c);
                }
                None => {
                    p.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        Ok(rem)
    }

    fn spoly(&self, f: &Terms, g: &Terms) -> Terms {
        let (fm, fc) = self.leading(f);
        let (gm, gc) = self.leading(g);
        let l = fm.lcm(gm);
        let a = self.field.inv(fc);
        let b = self.field.inv(gc);
        let mut left: Terms = f[..f.len() - 1].iter().map(|(m, c)| (m.mul(&l.div(fm)), self.field.mul(c, &a))).collect();
        left.sort_by(|x, y| self.order.cmp(&x.0, &y.0));
        let g_tail: Terms = g[..g.len() - 1].to_vec();
        self.sub_scaled(&left, &g_tail, &l.div(gm), &b)
    }

    fn to_poly(&self, ring: &Arc<PolyRing>, t: Terms) -> Poly {
        ring.from_terms(t)
    }
}

fn check_ambient(ring: &Arc<PolyRing>, polys: &[Poly]) -> Result<(), KernelError> {
    for p in polys {
        if **p.ring() != **ring {
            return Err(KernelError::AmbientMismatch);
        }
    }
    Ok(())
}

/// Remainder of `f` under full multivariate division by `divisors`
/// (tried in list order). Zero divisors are ignored.
pub fn normal_form(f: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Result<Poly, KernelError> {
    check_ambient(f.ring(), divisors)?;
    let ctx = Ctx { field: f.field(), order };
    let basis: Vec<Terms> = divisors.iter().filter(|g| !g.is_zero()).map(|g| ctx.to_terms(g)).collect();
    let refs: Vec<&Terms> = basis.iter().collect();
    let mut budget = Budget::new();
    let r = ctx.reduce(ctx.to_terms(f), &refs, &mut budget)?;
    Ok(ctx.to_poly(f.ring(), r))
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`,
/// sorted by increasing leading monomial. Empty for the zero ideal.
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>, KernelError> {
    check_ambient(ring, gens)?;
    let ctx = Ctx { field: ring.field(), order };
    let mut budget = Budget::new();

    let mut basis: Vec<Terms> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.is_constant() {
            return Ok(vec![ring.one()]);
        }
        basis.push(ctx.monic(ctx.to_terms(g)));
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm, ties by index
        let (i, j) = *pending
            .iter()
            .min_by(|a, b| {
                let la = ctx.leading(&basis[a.0]).0.lcm(&ctx.leading(&basis[a.1]).0);
                let lb = ctx.leading(&basis[b.0]).0.lcm(&ctx.leading(&basis[b.1]).0);
                order.cmp(&la, &lb).then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
            })
            .unwrap();
        pending.remove(&(i, j));
        budget.tick()?;

        let lmi = &ctx.leading(&basis[i]).0;
        let lmj = &ctx.leading(&basis[j]).0;
        if lmi.is_coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && ctx.leading(&basis[k]).0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = ctx.spoly(&basis[i], &basis[j]);
        let refs: Vec<&Terms> = basis.iter().collect();
        let r = ctx.reduce(s, &refs, &mut budget)?;
        if r.is_empty() {
            continue;
        }
        if r.len() == 1 && r[0].0.is_one() {
            return Ok(vec![ring.one()]);
        }
        let new = basis.len();
        basis.push(ctx.monic(r));
        for k in 0..new {
            pending.insert((k, new));
        }
    }

    let reduced = reduce_basis(&ctx, basis, &mut budget)?;
    Ok(reduced.into_iter().map(|t| ctx.to_poly(ring, t)).collect())
}

fn reduce_basis(ctx: &Ctx<'_>, basis: Vec<Terms>, budget: &mut Budget) -> Result<Vec<Terms>, KernelError> {
    // drop elements whose leading monomial is divisible by another's;
    // among equal leading monomials the earliest survives
    let mut keep: Vec<Terms> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &ctx.leading(g).0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = &ctx.leading(h).0;
            k != idx && hm.divides(lm) && (hm != lm || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out: Vec<Terms> = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<&Terms> = out.iter().chain(keep[idx + 1..].iter()).collect();
        let g = keep[idx].clone();
        let lead = ctx.leading(&g).clone();
        let tail = ctx.reduce(g[..g.len() - 1].to_vec(), &others, budget)?;
        let mut reduced = tail;
        reduced.push(lead);
        out.push(ctx.monic(reduced));
    }
    out.sort_by(|a, b| ctx.order.cmp(&ctx.leading(a).0, &ctx.leading(b).0));
    Ok(out)
}
