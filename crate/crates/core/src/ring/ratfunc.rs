use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite_base::num::basic::traits::One;
use malachite_q::Rational;

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::root_data::Weight;
use crate::weyl::{FiniteWeylElt, WeylGroup};

/// An element of the fraction field of `ℚ[P]`, kept as a numerator over a
/// product of powers of normalized denominator factors.
///
/// Each factor has minimal exponent `0` in every coordinate and
/// lexicographically least coefficient `1`, so associated polynomials (such
/// as `1 - e^α` and `1 - e^{-α}`) become the same factor. After every
/// operation, factors that divide the numerator exactly are cancelled; in
/// particular an element lies in `ℚ[P]` iff its factor list is empty.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Default)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Vec<(LaurentPoly, u32)>,
}

pub(crate) fn merge_factors(mut a: Vec<(LaurentPoly, u32)>, b: &[(LaurentPoly, u32)]) -> Vec<(LaurentPoly, u32)> {
    for (f, e) in b {
        match a.binary_search_by(|g| g.0.cmp(f)) {
            Ok(k) => a[k].1 += e,
            Err(k) => a.insert(k, (f.clone(), *e)),
        }
    }
    a
}

fn expand(factors: &[(LaurentPoly, u32)], rank: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(rank);
    for (f, e) in factors {
        for _ in 0..*e {
            acc = &acc * f;
        }
    }
    acc
}

/// Divides `num` by as many copies of each factor as possible.
fn cancel_into(mut num: LaurentPoly, factors: &mut Vec<(LaurentPoly, u32)>) -> LaurentPoly {
    if num.is_zero() {
        factors.clear();
        return num;
    }
    for (f, e) in factors.iter_mut() {
        while *e > 0 {
            match num.div_exact(f) {
                Some(q) => {
                    num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
    factors.retain(|(_, e)| *e > 0);
    num
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn monomial(lambda: Weight) -> Self {
        Self::from_poly(LaurentPoly::monomial(lambda))
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(rank, c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: Vec::new() }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        Self::from_poly(num).try_div(&Self::from_poly(den.clone()))
    }

    /// `1 / (1 - e^γ)` for `γ ≠ 0`.
    pub fn inv_one_minus(gamma: Weight) -> Self {
        Self::from_poly(LaurentPoly::one_minus(gamma)).inv().expect("γ is nonzero")
    }

    /// `num / Π f^e`, cancelled to normal form; `den` must be sorted and normalized.
    pub(crate) fn from_parts(num: LaurentPoly, den: Vec<(LaurentPoly, u32)>) -> Self {
        Self::build(num, den)
    }

    fn build(num: LaurentPoly, mut den: Vec<(LaurentPoly, u32)>) -> Self {
        let num = cancel_into(num, &mut den);
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Normalized denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> &[(LaurentPoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> LaurentPoly {
        let rank = self.rank().unwrap_or(0);
        expand(&self.den, rank)
    }

    fn rank(&self) -> Option<usize> {
        self.num
            .terms()
            .first()
            .or_else(|| self.den.first().and_then(|f| f.0.terms().first()))
            .map(|t| t.0.rank())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The element as a Laurent polynomial, if it is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.den.is_empty().then(|| self.num.clone())
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplication by the unit `e^λ`.
    pub fn shift(&self, lambda: &Weight) -> Self {
        Self { num: self.num.shift(lambda), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rank = self.rank().unwrap();
        let (c, lambda, f) = self.num.split_unit();
        let num = expand(&self.den, rank).shift(&-lambda).scale(&(Rational::ONE / c));
        let den = if f.is_one() { Vec::new() } else { vec![(f, 1)] };
        Ok(Self::build(num, den))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Ring automorphism induced by `u ∈ W`.
    pub fn act(&self, weyl: &WeylGroup, u: FiniteWeylElt) -> Self {
        if u.is_identity() || self.is_zero() {
            return self.clone();
        }
        let mut num = self.num.act(weyl, u);
        let mut den = Vec::with_capacity(self.den.len());
        let mut unit = Rational::ONE;
        let mut lambda: Option<Weight> = None;
        for (f, e) in &self.den {
            let (c, mu, g) = f.act(weyl, u).split_unit();
            for _ in 0..*e {
                if c != 1u32 {
                    unit /= &c;
                }
                if !mu.is_zero() {
                    lambda = Some(match lambda {
                        Some(l) => l - mu,
                        None => -mu,
                    });
                }
            }
            den.push((g, *e));
        }
        if let Some(l) = lambda {
            num = num.shift(&l);
        }
        if unit != 1u32 {
            num = num.scale(&unit);
        }
        den.sort_by(|a, b| a.0.cmp(&b.0));
        Self { num, den }
    }

    /// Applies a ring endomorphism of `ℚ[P]` given on exponents, e.g. `λ ↦ 2λ`.
    pub fn map_weights<F: Fn(&Weight) -> Weight>(&self, f: F) -> Self {
        let num = self.num.map_weights(&f);
        let mut acc = Self::from_poly(num);
        for (g, e) in &self.den {
            let gi = Self::from_poly(g.map_weights(&f)).inv().expect("injective substitution");
            for _ in 0..*e {
                acc = &acc * &gi;
            }
        }
        acc
    }

    /// Cross-multiplied equality `a/b = c/d ⇔ a·d = c·b` over the differing factors.
    fn cross_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        let rank = self.rank().unwrap();
        let mut need_a = Vec::new();
        let mut need_b = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.den.len() || j < other.den.len() {
            let ord = match (self.den.get(i), other.den.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    need_b.push(self.den[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    need_a.push(other.den[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (self.den[i].1, other.den[j].1);
                    if ea > eb {
                        need_b.push((self.den[i].0.clone(), ea - eb));
                    } else if eb > ea {
                        need_a.push((self.den[i].0.clone(), eb - ea));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        &self.num * &expand(&need_a, rank) == &other.num * &expand(&need_b, rank)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let rank = self.rank().unwrap();
        let mut den: Vec<(LaurentPoly, u32)> = Vec::new();
        let mut pad_a = Vec::new();
        let mut pad_b = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.den.len() || j < other.den.len() {
            let ord = match (self.den.get(i), other.den.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    den.push(self.den[i].clone());
                    pad_b.push(self.den[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    den.push(other.den[j].clone());
                    pad_a.push(other.den[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (self.den[i].1, other.den[j].1);
                    den.push((self.den[i].0.clone(), ea.max(eb)));
                    if ea > eb {
                        pad_b.push((self.den[i].0.clone(), ea - eb));
                    } else if eb > ea {
                        pad_a.push((self.den[i].0.clone(), eb - ea));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let a = &self.num * &expand(&pad_a, rank);
        let b = &other.num * &expand(&pad_b, rank);
        let num = if negate { &a - &b } else { &a + &b };
        Self::build(num, den)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.den.is_empty() && self.den.is_empty() {
            return Self::from_poly(&self.num * &other.num);
        }
        // Cancel each numerator against the other side's factors first, to
        // keep the intermediate product small.
        let mut bden = other.den.clone();
        let an = cancel_into(self.num.clone(), &mut bden);
        let mut aden = self.den.clone();
        let bn = cancel_into(other.num.clone(), &mut aden);
        let den = merge_factors(aden, &bden);
        Self::build(&an * &bn, den)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.cross_eq(other)
    }
}

impl Eq for RatFunc {}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.product(rhs)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.combine(&rhs, false)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.combine(&rhs, true)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.product(&rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

/// `num` alone for polynomials, otherwise `(num) / (den)` with the denominator expanded.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.denominator())
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::RootDatum;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn cancellation_examples() {
        let a = w(&[2]);
        let f = RatFunc::from_poly(LaurentPoly::one_minus(a));
        let one = RatFunc::one(1);
        assert_eq!(f.try_div(&f).unwrap(), one);
        assert!(f.try_div(&f).unwrap().is_polynomial());
        let g = &RatFunc::inv_one_minus(a) - &(&RatFunc::monomial(a) * &RatFunc::inv_one_minus(a));
        assert_eq!(g.to_laurent(), Some(LaurentPoly::one(1)));
        assert!(matches!(RatFunc::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn associates_share_a_factor() {
        let a = w(&[2]);
        let x = RatFunc::inv_one_minus(a);
        let y = RatFunc::inv_one_minus(-a);
        assert_eq!(x.denominator_factors(), y.denominator_factors());
        // 1/(1-e^α) + 1/(1-e^{-α}) = 1
        assert_eq!((&x + &y).to_laurent(), Some(LaurentPoly::one(1)));
    }

    #[test]
    fn reflection_of_inverse_binomial() {
        let d = RootDatum::from_tag("A1").unwrap();
        let s = d.weyl().simple(1);
        let a = d.simple_root(0);
        assert_eq!(RatFunc::inv_one_minus(a).act(d.weyl(), s), RatFunc::inv_one_minus(-a));
    }

    #[test]
    fn word_and_matrix_actions_agree() {
        let d = RootDatum::from_tag("A2").unwrap();
        let weyl = d.weyl();
        let f = &RatFunc::monomial(w(&[1, -1])) * &RatFunc::inv_one_minus(d.simple_root(0));
        let by_word = f.act(weyl, weyl.simple(2)).act(weyl, weyl.simple(1));
        let by_elt = f.act(weyl, weyl.from_word(&[1, 2]).unwrap());
        assert_eq!(by_word, by_elt);
    }

    #[test]
    fn display_fraction() {
        let x = RatFunc::inv_one_minus(w(&[2]));
        assert_eq!(x.to_string(), "(e[0]) / (e[0] - e[2])");
        assert_eq!(RatFunc::one(1).to_string(), "e[0]");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = LaurentPoly> {
            proptest::collection::vec(((-2i32..=2, -2i32..=2), -3i64..=3), 0..4)
                .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|((a, b), c)| (Weight::new(&[a, b]), Rational::from(c)))))
        }

        fn binomial() -> impl Strategy<Value = RatFunc> {
            ((-2i32..=2, -2i32..=2), poly()).prop_filter_map("nonzero exponent", |((a, b), p)| {
                (a != 0 || b != 0).then(|| &RatFunc::from_poly(p) * &RatFunc::inv_one_minus(Weight::new(&[a, b])))
            })
        }

        fn ratfunc() -> impl Strategy<Value = RatFunc> {
            prop_oneof![poly().prop_map(RatFunc::from_poly), binomial(), (binomial(), binomial()).prop_map(|(a, b)| &a * &b)]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&(&a + &b) - &b - a.clone()).is_zero());
                if !b.is_zero() {
                    prop_assert_eq!(&(&a * &b).try_div(&b).unwrap(), &a);
                }
            }

            #[test]
            fn chained_quotients(a in poly(), b in poly(), c in poly()) {
                prop_assume!(!b.is_zero() && !c.is_zero());
                let ab = RatFunc::new(a.clone(), &b).unwrap();
                let bc = RatFunc::new(b.clone(), &c).unwrap();
                prop_assert_eq!(&ab * &bc, RatFunc::new(a, &c).unwrap());
            }

            #[test]
            fn normal_form_is_stable(a in ratfunc(), b in ratfunc()) {
                let p = &a * &b;
                let again = RatFunc::build(p.num.clone(), p.den.clone());
                prop_assert_eq!(&again.num, &p.num);
                prop_assert_eq!(&again.den, &p.den);
            }

            #[test]
            fn equality_is_consistent(a in ratfunc(), b in ratfunc()) {
                prop_assert_eq!(a == b, (&a - &b).is_zero());
            }

            #[test]
            fn weyl_action_is_field_map(a in ratfunc(), b in ratfunc(), u in 0usize..6) {
                let d = RootDatum::from_tag("A2").unwrap();
                let weyl = d.weyl();
                let u = weyl.elements().nth(u).unwrap();
                prop_assert_eq!((&a * &b).act(weyl, u), &a.act(weyl, u) * &b.act(weyl, u));
                prop_assert_eq!((&a + &b).act(weyl, u), &a.act(weyl, u) + &b.act(weyl, u));
            }
        }
    }
}
