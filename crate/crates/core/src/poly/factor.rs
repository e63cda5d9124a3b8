//! Univariate factorization over `Q`.
//!
//! Squarefree decomposition over `Q`, then for every squarefree part a
//! Zassenhaus pipeline: factor modulo a small prime (distinct-degree followed
//! by Cantor–Zassenhaus equal-degree splitting), Hensel-lift to a modulus
//! beyond the Mignotte bound, and recombine lifted factors by trial division.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::scalar::{Rational, Scalar};
use crate::poly::univariate::UniPoly;

/// `f = content * ∏ factor^multiplicity`, each factor primitive with integer
/// coefficients and positive leading coefficient, sorted by degree and then by
/// ascending coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a rational univariate polynomial into irreducibles over `Q`.
pub fn factor_over_q(f: &UniPoly) -> Result<Factorization> {
    let coeffs = f
        .rational_coeffs()
        .ok_or_else(|| Error::UnsupportedTower("factorization is only available over Q".into()))?;
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let mut factors: Vec<(Vec<BigInt>, usize)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let z = primitive_integer(&part.rational_coeffs().unwrap());
        for g in factor_squarefree(&z) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut lc_prod = Rational::one();
    for (g, m) in &factors {
        lc_prod *= Rational::from(g.last().unwrap().pow(*m as u32));
    }
    let content = coeffs.last().unwrap() / lc_prod;
    Ok(Factorization {
        content,
        factors: factors
            .into_iter()
            .map(|(g, m)| {
                (
                    UniPoly::new(g.into_iter().map(|c| Scalar::Rat(c.into())).collect()),
                    m,
                )
            })
            .collect(),
    })
}

/// Clear denominators and remove the content; leading coefficient made positive.
pub fn primitive_integer(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut z: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from(lcm.clone())).to_integer())
        .collect();
    while z.last().is_some_and(|c| c.is_zero()) {
        z.pop();
    }
    let g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in z.iter_mut() {
            *c = &*c / &g;
        }
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        for c in z.iter_mut() {
            *c = -&*c;
        }
    }
    z
}

fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();

    // Try a handful of good primes and keep the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut good = 0;
    for p in small_odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zp_monic(&zp_from_big(f, p), p);
        if zp_gcd(&fp, &zp_deriv(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        good += 1;
        if good == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists for any squarefree polynomial");

    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = BigInt::from_biguint(Sign::Plus, norm2.magnitude().sqrt()) + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = multi_lift(f, &modular, p, k);
    recombine(f.to_vec(), lifted, &pk)
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..20_000).step_by(2).filter(|&m| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= m)
            .all(|d| m % d != 0)
    })
}

// ---------------------------------------------------------------------------
// Polynomials over Z/p, ascending Vec<u64>, trimmed.

fn zp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zp_from_big(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    zp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn zp_inv(x: u64, p: u64) -> u64 {
    zp_pow_scalar(x, p - 2, p)
}

fn zp_pow_scalar(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn zp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    zp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn zp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    zp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn zp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zp_trim(out)
}

fn zp_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    zp_trim(a.iter().map(|&x| x * c % p).collect())
}

fn zp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => zp_scale(a, zp_inv(lc, p), p),
    }
}

fn zp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = zp_inv(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), zp_trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.pop().unwrap();
        if top == 0 {
            continue;
        }
        let k = r.len() - db;
        let c = top * inv % p;
        for j in 0..db {
            r[k + j] = (r[k + j] + p - c * b[j] % p) % p;
        }
        q[k] = c;
    }
    (zp_trim(q), zp_trim(r))
}

fn zp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    zp_divrem(a, b, p).1
}

fn zp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = zp_trim(a.to_vec());
    let mut b = zp_trim(b.to_vec());
    while !b.is_empty() {
        let r = zp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    zp_monic(&a, p)
}

fn zp_deriv(a: &[u64], p: u64) -> Vec<u64> {
    zp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % p) * c % p)
            .collect(),
    )
}

fn zp_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let base = zp_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        acc = zp_rem(&zp_mul(&acc, &acc, p), modulus, p);
        if exp.bit(i) {
            acc = zp_rem(&zp_mul(&acc, &base, p), modulus, p);
        }
    }
    acc
}

/// `s, t` with `s a + t b = 1 (mod p)` for coprime `a, b`.
fn zp_bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s2 = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t2 = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "polynomials not coprime modulo p");
    let inv = zp_inv(r0[0], p);
    (zp_scale(&s0, inv, p), zp_scale(&t0, inv, p))
}

/// Monic irreducible factors of a monic squarefree polynomial modulo an odd prime.
fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ p);
    let x = vec![0u64, 1];
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = zp_rem(&x, &rest, p);
    let mut d = 1;
    while rest.len() > 2 * d {
        h = zp_powmod(&h, &BigUint::from(p), &rest, p);
        let g = zp_gcd(&zp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            out.extend(equal_degree(&g, d, p, &mut rng));
            rest = zp_divrem(&rest, &g, p).0;
            h = zp_rem(&h, &rest, p);
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = zp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = zp_sub(&zp_powmod(&a, &exp, g, p), &[1], p);
        let h = zp_gcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let other = zp_divrem(g, &h, p).0;
            let mut res = equal_degree(&h, d, p, rng);
            res.extend(equal_degree(&zp_monic(&other, p), d, p, rng));
            return res;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z/p^k, polynomials as ascending Vec<BigInt>.

fn z_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_from_zp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn z_modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lift `f ≡ g h (mod p)`, `g` monic, to a factorization modulo `p^k`.
fn lift_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = zp_bezout(g, h, p);
    let pb = BigInt::from(p);
    let mut big_g = z_from_zp(g);
    let mut big_h = z_from_zp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = z_mul(&big_g, &big_h);
        let n = f.len().max(prod.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = zp_from_big(&diff, p);
        let (q, r) = zp_divrem(&zp_mul(&t, &e, p), g, p);
        let dh = zp_add(&zp_mul(&s, &e, p), &zp_mul(&q, h, p), p);
        big_g = add_scaled(&big_g, &r, &pj, &next);
        big_h = add_scaled(&big_h, &dh, &pj, &next);
        pj = next;
    }
    (big_g, big_h)
}

fn add_scaled(a: &[BigInt], d: &[u64], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(d.len());
    let v: Vec<BigInt> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = BigInt::from(d.get(i).copied().unwrap_or(0));
            (x + y * scale).mod_floor(m)
        })
        .collect();
    z_trim(v)
}

/// Monic lifts modulo `p^k` of the modular factors of `f`.
fn multi_lift(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = z_modinv(f.last().unwrap(), &pk);
        return vec![z_mod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g = left.iter().fold(vec![1u64], |acc, x| zp_mul(&acc, x, p));
    let lc = f
        .last()
        .unwrap()
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .unwrap();
    let h = zp_scale(
        &right.iter().fold(vec![1u64], |acc, x| zp_mul(&acc, x, p)),
        lc,
        p,
    );
    let (big_g, big_h) = lift_pair(f, &g, &h, p, k);
    let mut out = multi_lift(&big_g, left, p, k);
    out.extend(multi_lift(&big_h, right, p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact quotient over Z, `None` if `g` does not divide `f`.
fn z_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    let lc = g.last().unwrap();
    let mut r = f.to_vec();
    if r.len() <= dg {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    while r.len() > dg {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        let k = r.len() - dg;
        for j in 0..dg {
            r[k + j] -= &c * &g[j];
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| z_trim(q))
}

fn recombine(mut f: Vec<BigInt>, lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in (0..remaining.len()).combinations(size) {
            let lc = f.last().unwrap().clone();
            let prod = combo
                .iter()
                .fold(vec![lc], |acc, &i| z_mod(&z_mul(&acc, &remaining[i]), pk));
            let cand = primitive_integer(
                &symmetric(&prod, pk)
                    .into_iter()
                    .map(Rational::from)
                    .collect::<Vec<_>>(),
            );
            if cand.len() < 2 {
                continue;
            }
            if !f[0].is_zero() && !cand[0].is_zero() && !(&f[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = z_exact_div(&f, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                f = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        found.push(primitive_integer(
            &f.into_iter().map(Rational::from).collect::<Vec<_>>(),
        ));
    }
    found
}
