//! Descartes-rule root isolation restricted to a time window, with the
//! emptiness filter and the per-epoch root cache.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebraic::AlgebraicReal;
use super::poly::{IntPoly, Poly};
use super::KernelError;
use crate::Rational;

/// `p / gcd(p, p')`, monic.
pub fn square_free_part(p: &Poly) -> Result<Poly, KernelError> {
    if p.is_zero() {
        return Err(KernelError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let (q, _) = p.div_rem(&g);
    Ok(q.monic())
}

/// Square-free part of an integer polynomial together with `gcd(p, p')`.
pub(crate) fn square_free_int(p: &IntPoly) -> Result<(IntPoly, IntPoly), KernelError> {
    if p.is_zero() {
        return Err(KernelError::ZeroPolynomial);
    }
    if coprime_with_derivative_mod(p) {
        return Ok((p.clone().canonical(), IntPoly::from_coeffs(vec![BigInt::one()])));
    }
    let rp = p.to_poly();
    let g = rp.gcd(&rp.derivative());
    if g.degree() == Some(0) {
        return Ok((p.clone().canonical(), IntPoly::from_poly(&g)));
    }
    let (q, _) = rp.div_rem(&g);
    Ok((IntPoly::from_poly(&q).canonical(), IntPoly::from_poly(&g)))
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// `gcd(p, p') = 1` modulo a prime not dividing the leading coefficient,
/// which implies `p` is square-free over the rationals. `false` means
/// the test was inconclusive.
fn coprime_with_derivative_mod(p: &IntPoly) -> bool {
    let m = BigInt::from(PRIME);
    let reduce = |c: &BigInt| -> u64 { c.mod_floor(&m).to_u64().expect("reduced residue") };
    let a: Vec<u64> = p.coeffs().iter().map(reduce).collect();
    if a.len() < 2 || *a.last().unwrap() == 0 {
        return false;
    }
    let b: Vec<u64> = (1..a.len()).map(|i| mulmod(a[i], i as u64 % PRIME)).collect();
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut x, mut y) = (a, trim(b));
    while !y.is_empty() {
        // x <- x mod y
        let inv = powmod(*y.last().unwrap(), PRIME - 2);
        while x.len() >= y.len() {
            let f = mulmod(*x.last().unwrap(), inv);
            let shift = x.len() - y.len();
            for (i, yi) in y.iter().enumerate() {
                let t = mulmod(f, *yi);
                x[i + shift] = (x[i + shift] + PRIME - t) % PRIME;
            }
            x = trim(x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// Certifies without subdivision that square-free `p` has no root in
/// `(after, hi]`. `false` means no certificate was found.
fn no_root_after(p: &IntPoly, after: &AlgebraicReal, hi: &Rational) -> bool {
    let clear = |lo: &Rational| lo >= hi || (descartes_int(p, lo, hi) == 0 && !p.sign_at(hi).is_eq());
    if clear(after.lower_bound()) {
        return true;
    }
    if after.exact().is_some() {
        return false;
    }
    // step over `after` itself, which is often a root of `p`
    let narrow = after.refine(&(after.width() / Rational::from_integer(1024.into())));
    let (a, b) = (narrow.lo(), narrow.hi());
    if b >= hi || p.sign_at(b).is_eq() {
        return false;
    }
    let inside = descartes_int(p, a, b);
    let empty_past = inside == 0 || (inside == 1 && narrow.sign_of(p).is_eq());
    empty_past && clear(b)
}

/// Sign variations of `p` mapped onto `(lo, hi)`. An upper bound on the
/// number of roots in the open interval, with the same parity.
pub fn descartes_bound(p: &Poly, lo: &Rational, hi: &Rational) -> u32 {
    assert!(lo < hi, "empty interval");
    assert!(!p.is_zero(), "zero polynomial");
    descartes_int(&IntPoly::from_poly(p), lo, hi)
}

pub(crate) fn descartes_int(p: &IntPoly, lo: &Rational, hi: &Rational) -> u32 {
    let n = match p.degree() {
        None | Some(0) => return 0,
        Some(n) => n,
    };
    // x = (alpha + beta * y) / gamma maps y in (0, 1) onto (lo, hi)
    let gamma = lo.denom() * hi.denom();
    let alpha = lo.numer() * hi.denom();
    let beta = hi.numer() * lo.denom() - &alpha;
    let c = p.coeffs();
    let mut r: Vec<BigInt> = vec![c[n].clone()];
    let mut gpow = gamma.clone();
    for k in (0..n).rev() {
        // r <- r * (alpha + beta y) + c_k gamma^(n-k)
        let mut next = vec![BigInt::zero(); r.len() + 1];
        for (i, ri) in r.iter().enumerate() {
            next[i] += ri * &alpha;
            next[i + 1] += ri * &beta;
        }
        next[0] += &c[k] * &gpow;
        gpow *= &gamma;
        r = next;
    }
    // (1+z)^n r(1/(1+z)): reverse, then Taylor shift by one
    r.reverse();
    let m = r.len() - 1;
    for i in 0..m {
        for j in (i..m).rev() {
            let (left, right) = r.split_at_mut(j + 1);
            left[j] += &right[0];
        }
    }
    sign_variations(&r)
}

fn sign_variations(coeffs: &[BigInt]) -> u32 {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if last.is_some_and(|l| l != neg) {
            count += 1;
        }
        last = Some(neg);
    }
    count
}

/// Distinct roots of the square-free `p` in `(lo, hi]`, increasing.
pub(crate) fn isolate_int(p: &Arc<IntPoly>, lo: &Rational, hi: &Rational) -> Vec<AlgebraicReal> {
    let mut out = Vec::new();
    if lo >= hi || p.degree().unwrap_or(0) == 0 {
        return out;
    }
    bisect_isolate(p, lo.clone(), hi.clone(), &mut out);
    if p.sign_at(hi).is_eq() {
        out.push(AlgebraicReal::exact_root(p.clone(), hi.clone()));
    }
    out
}

// roots in the open interval (a, b)
fn bisect_isolate(p: &Arc<IntPoly>, a: Rational, b: Rational, out: &mut Vec<AlgebraicReal>) {
    let v = descartes_int(p, &a, &b);
    if v == 0 {
        return;
    }
    if v == 1 && !p.sign_at(&a).is_eq() && !p.sign_at(&b).is_eq() {
        out.push(AlgebraicReal::isolated(p.clone(), a, b));
        return;
    }
    let m = (&a + &b) / Rational::from_integer(2.into());
    bisect_isolate(p, a, m.clone(), out);
    if p.sign_at(&m).is_eq() {
        out.push(AlgebraicReal::exact_root(p.clone(), m.clone()));
    }
    bisect_isolate(p, m, b, out);
}

/// Every real root of the square-free `p`, increasing.
pub(crate) fn isolate_all_real(p: &Arc<IntPoly>) -> Vec<AlgebraicReal> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = Rational::from_integer(p.cauchy_bound());
    isolate_int(p, &-b.clone(), &b)
}

/// All distinct real roots of `p` in `(lo, hi]`, increasing.
///
/// Certifies emptiness with a single Descartes test before subdividing,
/// and consults `cache` before isolating.
pub fn isolate_roots(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
    cache: &mut RootCache,
) -> Result<Vec<AlgebraicReal>, KernelError> {
    assert!(lo < hi, "empty interval");
    let (sq, _) = square_free_int(&IntPoly::from_poly(p))?;
    if descartes_int(&sq, lo, hi) == 0 && !sq.sign_at(hi).is_eq() {
        return Ok(Vec::new());
    }
    let key = CacheKey { poly: sq, lo: lo.clone(), hi: hi.clone() };
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.as_ref().clone());
    }
    let sq = Arc::new(key.poly.clone());
    let roots = isolate_int(&sq, lo, hi);
    cache.insert(key, Arc::new(roots.clone()));
    Ok(roots)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct CacheKey {
    poly: IntPoly,
    lo: Rational,
    hi: Rational,
}

/// Square-free polynomials with their roots inside a window, valid until
/// the end of the current epoch.
#[derive(Debug, Default)]
pub struct RootCache {
    map: HashMap<CacheKey, Arc<Vec<AlgebraicReal>>>,
    epoch_end: Option<Rational>,
    hits: u64,
}

impl RootCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Clears every entry if the epoch boundary moved.
    pub fn set_epoch_end(&mut self, end: &Rational) {
        if self.epoch_end.as_ref() != Some(end) {
            self.map.clear();
            self.epoch_end = Some(end.clone());
        }
    }

    pub fn epoch_end(&self) -> Option<&Rational> {
        self.epoch_end.as_ref()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    fn get(&mut self, key: &CacheKey) -> Option<Arc<Vec<AlgebraicReal>>> {
        let hit = self.map.get(key).cloned();
        if hit.is_some() {
            self.hits += 1;
        }
        hit
    }

    fn insert(&mut self, key: CacheKey, roots: Arc<Vec<AlgebraicReal>>) {
        self.map.insert(key, roots);
    }
}

/// Toggles for the two kernel-level accelerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelOptions {
    /// Certify an empty window with one Descartes test before isolating.
    pub descartes_filter: bool,
    /// Reuse isolated roots of identical polynomials within an epoch.
    pub root_cache: bool,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { descartes_filter: true, root_cache: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KernelStats {
    /// Root queries answered.
    pub queries: u64,
    /// Queries that ran a full root isolation.
    pub isolations: u64,
    /// Queries dismissed by the Descartes emptiness test.
    pub filtered: u64,
    /// Queries whose window held no root after the query time.
    pub no_root: u64,
    pub cache_hits: u64,
}

/// Root finding front end used by the event loop.
#[derive(Debug, Default)]
pub struct Kernel {
    options: KernelOptions,
    cache: RootCache,
    stats: KernelStats,
}

/// Answer to a next-root query.
#[derive(Clone, Debug)]
pub struct NextRoot {
    pub time: AlgebraicReal,
    /// The root has multiplicity above one in the original polynomial.
    pub multiple: bool,
}

impl Kernel {
    pub fn new(options: KernelOptions) -> Self {
        Kernel { options, cache: RootCache::new(), stats: KernelStats::default() }
    }

    pub fn options(&self) -> KernelOptions {
        self.options
    }

    pub fn stats(&self) -> KernelStats {
        KernelStats { cache_hits: self.cache.hits(), ..self.stats }
    }

    /// Starts a new epoch ending at `end`; the cache is flushed.
    pub fn advance_epoch(&mut self, end: &Rational) {
        self.cache.set_epoch_end(end);
    }

    /// Smallest root of `p` strictly greater than `after` and at most
    /// `window_hi`. `window_lo` is the start of the certificate's window and
    /// must not exceed `after`.
    pub fn next_root(
        &mut self,
        p: &Poly,
        after: &AlgebraicReal,
        window_lo: &Rational,
        window_hi: &Rational,
    ) -> Result<Option<NextRoot>, KernelError> {
        self.stats.queries += 1;
        let ip = IntPoly::from_poly(p);
        let (sq, g) = square_free_int(&ip)?;
        if sq.degree().unwrap_or(0) == 0 {
            self.stats.no_root += 1;
            return Ok(None);
        }
        if self.options.descartes_filter && no_root_after(&sq, after, window_hi) {
            self.stats.filtered += 1;
            self.stats.no_root += 1;
            return Ok(None);
        }
        let roots = self.window_roots(sq, window_lo, window_hi);
        let found = roots.iter().find(|r| r.compare(after).is_gt()).cloned();
        match found {
            None => {
                self.stats.no_root += 1;
                Ok(None)
            }
            Some(time) => {
                let multiple = g.degree().unwrap_or(0) > 0 && time.sign_of(&g).is_eq();
                Ok(Some(NextRoot { time, multiple }))
            }
        }
    }

    fn window_roots(&mut self, sq: IntPoly, lo: &Rational, hi: &Rational) -> Arc<Vec<AlgebraicReal>> {
        let key = CacheKey { poly: sq, lo: lo.clone(), hi: hi.clone() };
        if self.options.root_cache {
            if let Some(hit) = self.cache.get(&key) {
                return hit;
            }
        }
        self.stats.isolations += 1;
        let p = Arc::new(key.poly.clone());
        // all real roots first, then keep the window
        let roots: Vec<AlgebraicReal> = isolate_all_real(&p)
            .into_iter()
            .filter(|r| r.cmp_rational(lo).is_gt() && r.cmp_rational(hi).is_le())
            .collect();
        let roots = Arc::new(roots);
        if self.options.root_cache {
            self.cache.insert(key, roots.clone());
        }
        roots
    }
}
