//! Buchberger's algorithm with the Gebauer–Möller pair update.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    /// Integer key whose lexicographic comparison realizes the order. Keys are
    /// additive: `key(m * n) = key(m) + key(n)`.
    fn key(self, exps: &[u32]) -> Vec<i64> {
        let deg: i64 = exps.iter().map(|&e| e as i64).sum();
        match self {
            MonomialOrder::Lex => exps.iter().map(|&e| e as i64).collect(),
            MonomialOrder::GrLex => std::iter::once(deg)
                .chain(exps.iter().map(|&e| e as i64))
                .collect(),
            MonomialOrder::DegRevLex => std::iter::once(deg)
                .chain(exps.iter().rev().map(|&e| -(e as i64)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Term {
    key: Vec<i64>,
    mono: Monomial,
    coeff: Scalar,
}

/// Polynomial with terms sorted by decreasing key; monic when stored in a basis.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<Term>,
}

impl GPoly {
    fn from_multi(p: &MultiPoly, order: MonomialOrder) -> GPoly {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m.exps()),
                mono: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        GPoly { terms }
    }

    fn to_multi(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())),
        )
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monic(mut self) -> GPoly {
        if let Some(first) = self.terms.first() {
            let inv = first.coeff.inv();
            for t in self.terms.iter_mut() {
                t.coeff = &t.coeff * &inv;
            }
        }
        self
    }
}

struct Reducer<'a> {
    order: MonomialOrder,
    steps: u64,
    budget: u64,
    _p: std::marker::PhantomData<&'a ()>,
}

impl Reducer<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Full normal form of `p` with respect to the polynomials `basis[i]` for
    /// `i` in `active`.
    fn normal_form(&mut self, p: &GPoly, basis: &[GPoly], active: &[usize]) -> Result<GPoly> {
        let mut work: BTreeMap<Vec<i64>, (Monomial, Scalar)> = p
            .terms
            .iter()
            .map(|t| (t.key.clone(), (t.mono.clone(), t.coeff.clone())))
            .collect();
        let mut rem = Vec::new();
        while let Some((key, (mono, coeff))) = work.pop_last() {
            let divisor = active
                .iter()
                .map(|&i| &basis[i])
                .find(|g| g.lm().divides(&mono));
            match divisor {
                None => rem.push(Term { key, mono, coeff }),
                Some(g) => {
                    self.tick()?;
                    let q = g.lm().quotient_of(&mono);
                    let qkey = self.order.key(q.exps());
                    for t in &g.terms[1..] {
                        let k: Vec<i64> = t.key.iter().zip(&qkey).map(|(a, b)| a + b).collect();
                        let delta = -(&coeff * &t.coeff);
                        match work.get_mut(&k) {
                            Some(entry) => {
                                let s = &entry.1 + &delta;
                                if s.is_zero() {
                                    work.remove(&k);
                                } else {
                                    entry.1 = s;
                                }
                            }
                            None => {
                                work.insert(k, (t.mono.mul(&q), delta));
                            }
                        }
                    }
                }
            }
        }
        Ok(GPoly { terms: rem })
    }
}

fn s_polynomial(f: &GPoly, g: &GPoly, order: MonomialOrder) -> GPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let kf = order.key(mf.exps());
    let kg = order.key(mg.exps());
    let mut acc: BTreeMap<Vec<i64>, (Monomial, Scalar)> = BTreeMap::new();
    for (poly, m, k, sign) in [(f, &mf, &kf, 1i64), (g, &mg, &kg, -1i64)] {
        for t in &poly.terms[1..] {
            let key: Vec<i64> = t.key.iter().zip(k).map(|(a, b)| a + b).collect();
            let c = if sign > 0 { t.coeff.clone() } else { -&t.coeff };
            match acc.get_mut(&key) {
                Some(e) => e.1 = &e.1 + &c,
                None => {
                    acc.insert(key, (t.mono.mul(m), c));
                }
            }
        }
    }
    let mut terms: Vec<Term> = acc
        .into_iter()
        .filter(|(_, (_, c))| !c.is_zero())
        .map(|(key, (mono, coeff))| Term { key, mono, coeff })
        .collect();
    terms.reverse();
    GPoly { terms }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A reduced Gröbner basis together with its leading monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<MultiPoly>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Basis elements, monic, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    /// Generators of the initial ideal (the staircase corners).
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.degree() == 0)
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let basis: Vec<GPoly> = self
            .basis
            .iter()
            .map(|g| GPoly::from_multi(g, self.order))
            .collect();
        let active: Vec<usize> = (0..basis.len()).collect();
        let mut r = Reducer {
            order: self.order,
            steps: 0,
            budget: u64::MAX,
            _p: Default::default(),
        };
        r.normal_form(&GPoly::from_multi(p, self.order), &basis, &active)
            .expect("unbounded budget")
            .to_multi(self.nvars)
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let basis: Vec<GPoly> = self
            .basis
            .iter()
            .map(|g| GPoly::from_multi(g, self.order))
            .collect();
        let active: Vec<usize> = (0..basis.len()).collect();
        let mut r = Reducer {
            order: self.order,
            steps: 0,
            budget: u64::MAX,
            _p: Default::default(),
        };
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j], self.order);
                if !r
                    .normal_form(&s, &basis, &active)
                    .expect("unbounded budget")
                    .is_zero()
                {
                    return false;
                }
            }
        }
        true
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn compute_groebner(
    gens: &[MultiPoly],
    order: MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, MultiPoly::nvars);
    let mut reducer = Reducer {
        order,
        steps: 0,
        budget,
        _p: Default::default(),
    };
    let mut polys: Vec<GPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let unit = |nvars: usize| GroebnerBasis {
        nvars,
        order,
        basis: vec![MultiPoly::one(nvars)],
        leading: vec![Monomial::one(nvars)],
    };

    for g in gens {
        let p = GPoly::from_multi(g, order);
        let h = reducer.normal_form(&p, &polys, &active)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.lm().degree() == 0 {
            return Ok(unit(nvars));
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (x, y) = (&pairs[a].lcm, &pairs[b].lcm);
                x.degree()
                    .cmp(&y.degree())
                    .then_with(|| order.key(x.exps()).cmp(&order.key(y.exps())))
            })
            .unwrap();
        let pair = pairs.swap_remove(pick);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], order);
        let h = reducer.normal_form(&s, &polys, &active)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.lm().degree() == 0 {
            return Ok(unit(nvars));
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    // Interreduce to the reduced basis.
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &active {
        let redundant = active.iter().any(|&j| {
            j != i
                && polys[j].lm().divides(polys[i].lm())
                && (polys[j].lm() != polys[i].lm() || j < i)
        });
        if !redundant {
            minimal.push(i);
        }
    }
    let mut reduced: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for (pos, &i) in minimal.iter().enumerate() {
        let others: Vec<usize> = minimal
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != pos)
            .map(|(_, &j)| j)
            .collect();
        let head = GPoly {
            terms: vec![polys[i].terms[0].clone()],
        };
        let tail = GPoly {
            terms: polys[i].terms[1..].to_vec(),
        };
        let tail = reducer.normal_form(&tail, &polys, &others)?;
        let mut terms = head.terms;
        terms.extend(tail.terms);
        reduced.push(GPoly { terms }.monic());
    }
    reduced.sort_by_key(|a| order.key(a.lm().exps()));
    Ok(GroebnerBasis {
        nvars,
        order,
        leading: reduced.iter().map(|g| g.lm().clone()).collect(),
        basis: reduced.iter().map(|g| g.to_multi(nvars)).collect(),
    })
}

/// Gebauer–Möller update after adding `polys[h]`.
fn update(polys: &[GPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].lm().clone();

    let mut c: Vec<(usize, Monomial)> =
        active.iter().map(|&g| (g, lh.lcm(polys[g].lm()))).collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = c.pop() {
        let coprime = lh.is_coprime(polys[g1].lm());
        let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
        if coprime || !dominated {
            d.push((g1, l1));
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|(g, _)| !lh.is_coprime(polys[*g].lm()))
        .map(|(g, l)| Pair { i: g, j: h, lcm: l })
        .collect();

    pairs.retain(|p| {
        !lh.divides(&p.lcm) || lh.lcm(polys[p.i].lm()) == p.lcm || lh.lcm(polys[p.j].lm()) == p.lcm
    });
    pairs.extend(e);

    active.retain(|&g| !lh.divides(polys[g].lm()));
    active.push(h);
}
