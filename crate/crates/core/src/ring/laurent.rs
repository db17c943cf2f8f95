use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite_base::num::arithmetic::traits::Abs;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;
use rustc_hash::FxHashMap;

use crate::root_data::Weight;
use crate::weyl::{FiniteWeylElt, WeylGroup};

/// A Laurent polynomial `Σ c_λ e^λ` with exact rational coefficients.
///
/// Terms are kept sorted by weight (lexicographic) with no zero coefficients,
/// so structural equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: Vec<(Weight, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank))
    }

    /// `e^λ`.
    pub fn monomial(lambda: Weight) -> Self {
        Self { terms: vec![(lambda, Rational::ONE)] }
    }

    pub fn term(lambda: Weight, c: Rational) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(lambda, c)] }
        }
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::term(Weight::zero(rank), c)
    }

    /// `1 - e^γ`.
    pub fn one_minus(gamma: Weight) -> Self {
        Self::one(gamma.rank()) - Self::monomial(gamma)
    }

    /// Collects arbitrary terms, merging repeated weights.
    pub fn from_terms<I: IntoIterator<Item = (Weight, Rational)>>(iter: I) -> Self {
        let mut map: BTreeMap<Weight, Rational> = BTreeMap::new();
        for (w, c) in iter {
            *map.entry(w).or_insert(Rational::ZERO) += c;
        }
        Self { terms: map.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    fn from_sorted(terms: Vec<(Weight, Rational)>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[(Weight, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1 == 1
    }

    /// `Some((c, λ))` if the polynomial is a single term `c e^λ`.
    pub fn as_monomial(&self) -> Option<(&Rational, Weight)> {
        match self.terms.as_slice() {
            [(w, c)] => Some((c, *w)),
            _ => None,
        }
    }

    pub fn coefficient(&self, lambda: &Weight) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(lambda)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<&(Weight, Rational)> {
        self.terms.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        Self::from_sorted(self.terms.iter().map(|(w, a)| (*w, a * c)).collect())
    }

    /// Multiplication by `e^λ`; the term order is preserved.
    pub fn shift(&self, lambda: &Weight) -> Self {
        Self::from_sorted(self.terms.iter().map(|(w, a)| (*w + *lambda, a.clone())).collect())
    }

    /// The coefficients as machine integers, when they all are.
    pub(crate) fn small_coeffs(&self) -> Option<Vec<(Weight, i64)>> {
        self.terms.iter().map(|(w, c)| i64::try_from(c).ok().map(|x| (*w, x))).collect()
    }

    pub fn map_weights<F: Fn(&Weight) -> Weight>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// `u(Σ c_λ e^λ) = Σ c_λ e^{uλ}`.
    pub fn act(&self, weyl: &WeylGroup, u: FiniteWeylElt) -> Self {
        if u.is_identity() {
            return self.clone();
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(w, c)| (weyl.act_weight(u, w), c.clone())).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self::from_sorted(terms)
    }

    /// Specialization `e^λ ↦ 1`.
    pub fn evaluate_at_one(&self) -> Rational {
        self.terms.iter().fold(Rational::ZERO, |acc, (_, c)| acc + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let rank = self.terms.first().map(|t| t.0.rank()).unwrap_or(0);
        (0..n).fold(Self::one(rank), |acc, _| &acc * self)
    }

    /// Per-coordinate minimum and maximum exponents.
    pub(crate) fn bounds(&self) -> Option<(Weight, Weight)> {
        let first = self.terms.first()?.0;
        let mut lo = *first.raw();
        let mut hi = lo;
        for (w, _) in &self.terms {
            for k in 0..lo.len() {
                lo[k] = lo[k].min(w.raw()[k]);
                hi[k] = hi[k].max(w.raw()[k]);
            }
        }
        Some((Weight::from_array(first.rank(), lo), Weight::from_array(first.rank(), hi)))
    }

    /// Writes `self = c·e^λ·f` with `f` having all minimal exponents `0` and
    /// lexicographically least coefficient `1`. Two polynomials differing by a
    /// unit of the Laurent ring have the same `f`.
    pub fn split_unit(&self) -> (Rational, Weight, LaurentPoly) {
        let (lo, _) = self.bounds().expect("nonzero polynomial");
        let c = self.terms[0].1.clone();
        let inv = Rational::ONE / &c;
        let f = Self::from_sorted(self.terms.iter().map(|(w, a)| (*w - lo, a * &inv)).collect());
        (c, lo, f)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, lambda)) = d.as_monomial() {
            let inv = Rational::ONE / c;
            return Some(self.shift(&-lambda).scale(&inv));
        }
        if self.len() < d.len() {
            return None;
        }
        if d.len() == 2 {
            return self.div_binomial(d);
        }
        self.div_long(d)
    }

    fn div_long(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        // Exact quotients have Newton polytope `N(self) - N(d)`, so every
        // quotient exponent lies in this box.
        let (plo, phi) = self.bounds().unwrap();
        let (dlo, dhi) = d.bounds().unwrap();
        let qlo = plo - dlo;
        let qhi = phi - dhi;
        if qlo.coords().iter().zip(qhi.coords()).any(|(a, b)| a > b) {
            return None;
        }
        let (dlead, dcoef) = d.leading().unwrap().clone();
        let dinv = Rational::ONE / &dcoef;
        let mut rem: BTreeMap<Weight, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((w, c)) = rem.pop_last() {
            let qw = w - dlead;
            if qw.coords().iter().zip(qlo.coords().iter().zip(qhi.coords())).any(|(x, (a, b))| x < a || x > b) {
                return None;
            }
            let qc = c * &dinv;
            for (dw, dc) in &d.terms[..d.terms.len() - 1] {
                let key = *dw + qw;
                let delta = dc * &qc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if *v == 0 {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((qw, qc));
        }
        quotient.reverse();
        Some(Self::from_sorted(quotient))
    }

    /// Division by `a·e^μ + b·e^ν`, one chain `λ + ℤ(ν - μ)` at a time:
    /// with `p' = e^{-μ}p` the quotient satisfies `p'(t) = a·q(t) + b·q(t-1)`,
    /// solved from the top of each chain down.
    fn div_binomial(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (mu, a) = &d.terms[0];
        let (nu, b) = &d.terms[1];
        let delta = *nu - *mu;
        let k = delta.coords().iter().position(|&x| x != 0)?;
        let step = delta.coords()[k];
        if let (Ok(a), Ok(b)) = (i64::try_from(a), i64::try_from(b)) {
            if a.abs() == 1 && b.abs() == 1 {
                if let Some(c) = self.small_coeffs() {
                    if let Some(q) = Self::div_unit_binomial(&c, *mu, a, b, delta, k) {
                        return q;
                    }
                }
            }
        }
        let binv = Rational::ONE / b;
        let mut chains: HashMap<Weight, Vec<(i32, &Rational)>> = HashMap::new();
        for (w, c) in &self.terms {
            let lam = *w - *mu;
            let t = lam.coords()[k].div_euclid(step);
            chains.entry(lam - t * delta).or_default().push((t, c));
        }
        let mut out = Vec::with_capacity(self.len());
        for (base, mut chain) in chains {
            chain.sort_by_key(|e| std::cmp::Reverse(e.0));
            let top = chain[0].0;
            let bottom = chain.last().unwrap().0;
            let mut idx = 0;
            let mut q_above = Rational::ZERO;
            for t in (bottom..=top).rev() {
                let p = if idx < chain.len() && chain[idx].0 == t {
                    idx += 1;
                    chain[idx - 1].1.clone()
                } else {
                    Rational::ZERO
                };
                let r = p - a * &q_above;
                if t == bottom {
                    if r != 0 {
                        return None;
                    }
                    break;
                }
                let q = r * &binv;
                if q != 0 {
                    out.push((base + (t - 1) * delta, q.clone()));
                }
                q_above = q;
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        Some(Self::from_sorted(out))
    }

    /// Integer version of `div_binomial` for `a, b = ±1`; `None` on overflow.
    fn div_unit_binomial(p: &[(Weight, i64)], mu: Weight, a: i64, b: i64, delta: Weight, k: usize) -> Option<Option<LaurentPoly>> {
        let step = delta.coords()[k];
        let mut chains: FxHashMap<Weight, Vec<(i32, i64)>> = FxHashMap::default();
        for (w, c) in p {
            let lam = *w - mu;
            let t = lam.coords()[k].div_euclid(step);
            chains.entry(lam - t * delta).or_default().push((t, *c));
        }
        let (a, b) = (a as i128, b as i128);
        let mut out = Vec::with_capacity(p.len());
        for (base, mut chain) in chains {
            chain.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
            let bottom = chain.last().unwrap().0;
            let mut idx = 0;
            let mut q_above: i128 = 0;
            for t in (bottom..=chain[0].0).rev() {
                let p = if idx < chain.len() && chain[idx].0 == t {
                    idx += 1;
                    chain[idx - 1].1 as i128
                } else {
                    0
                };
                let r = p.checked_sub(a * q_above)?;
                if t == bottom {
                    if r != 0 {
                        return Some(None);
                    }
                    break;
                }
                let q = r * b;
                if q != 0 {
                    out.push((base + (t - 1) * delta, Rational::from(q)));
                }
                q_above = q;
            }
        }
        out.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        Some(Some(Self::from_sorted(out)))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, false)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_sorted(self.terms.iter().map(|(w, c)| (*w, -c)).collect())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Sums of products, kept in machine integers while the coefficients allow it.
#[derive(Default)]
pub(crate) struct PolyAcc {
    ints: FxHashMap<Weight, i128>,
    rats: FxHashMap<Weight, Rational>,
}

impl PolyAcc {
    pub(crate) fn add_small(&mut self, a: &[(Weight, i64)], b: &[(Weight, i64)]) {
        let Self { ints, rats } = self;
        ints.reserve(a.len().max(b.len()));
        for (w1, c1) in a {
            for (w2, c2) in b {
                let p = *c1 as i128 * *c2 as i128;
                let w = *w1 + *w2;
                let e = ints.entry(w).or_insert(0);
                match e.checked_add(p) {
                    Some(s) => *e = s,
                    None => {
                        let old = std::mem::take(e);
                        *rats.entry(w).or_insert(Rational::ZERO) += Rational::from(old) + Rational::from(p);
                    }
                }
            }
        }
    }

    pub(crate) fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        match (a.small_coeffs(), b.small_coeffs()) {
            (Some(x), Some(y)) => self.add_small(&x, &y),
            _ => {
                for (w1, c1) in &a.terms {
                    for (w2, c2) in &b.terms {
                        *self.rats.entry(*w1 + *w2).or_insert(Rational::ZERO) += c1 * c2;
                    }
                }
            }
        }
    }

    pub(crate) fn into_poly(self) -> LaurentPoly {
        let Self { ints, mut rats } = self;
        let mut terms: Vec<(Weight, Rational)> = Vec::with_capacity(ints.len());
        for (w, c) in ints {
            match rats.remove(&w) {
                Some(r) => terms.push((w, r + Rational::from(c))),
                None if c != 0 => terms.push((w, Rational::from(c))),
                None => {}
            }
        }
        terms.extend(rats);
        terms.retain(|(_, c)| *c != 0);
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (w, c) = &small.terms[0];
            return large.shift(w).scale(c);
        }
        let mut acc = PolyAcc::default();
        acc.add_product(small, large);
        acc.into_poly()
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Canonical text, e.g. `3*e[1,-2] - 1/2*e[0,0]`, terms in increasing lexicographic order.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let negative = *c < 0;
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let a = c.clone().abs();
            if a == 1 {
                write!(f, "e{w}")?;
            } else {
                write!(f, "{a}*e{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
