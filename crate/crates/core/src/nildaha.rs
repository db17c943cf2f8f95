//! The smash product `𝒜 = ℚ(P) ⊗ ℚW_af`, the embedding of the level-zero
//! nil-DAHA into it, Demazure operators `D_w` and the polynomial representation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use malachite_q::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RatFunc};
use crate::root_data::{RootDatum, Weight};
use crate::weyl::AffineWeylElt;

/// A finitely supported sum `Σ f_x ⊗ x` in `𝒜`. Zero coefficients are never stored.
#[derive(Clone, Default)]
pub struct SmashElt {
    terms: BTreeMap<AffineWeylElt, RatFunc>,
}

impl SmashElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::term(AffineWeylElt::identity(rank), RatFunc::one(rank))
    }

    pub fn term(x: AffineWeylElt, f: RatFunc) -> Self {
        let mut s = Self::zero();
        s.add_term(x, f);
        s
    }

    /// `f ⊗ 1`.
    pub fn scalar(f: RatFunc, rank: usize) -> Self {
        Self::term(AffineWeylElt::identity(rank), f)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElt, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &AffineWeylElt) -> Option<&RatFunc> {
        self.terms.get(x)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, x: AffineWeylElt, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(g) => {
                let sum = &*g + &f;
                if sum.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *g = sum;
                }
            }
            None => {
                self.terms.insert(x, f);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, f) in &other.terms {
            out.add_term(*x, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, f) in &other.terms {
            out.add_term(*x, -f);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (x, f) in &self.terms {
            out.add_term(*x, f.scale(c));
        }
        out
    }
}

impl PartialEq for SmashElt {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(other.terms.iter()).all(|((x, f), (y, g))| x == y && f == g)
    }
}

impl fmt::Debug for SmashElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(x, c)| (x, c.to_string()))).finish()
    }
}

/// Outcome of one defining-relation check.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: u8,
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Pass/fail record for the defining relations of the nil-DAHA in `𝒜`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub root_system: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Number of (passed, total) checks for a relation.
    pub fn tally(&self, relation: u8) -> (usize, usize) {
        let r: Vec<_> = self.checks.iter().filter(|c| c.relation == relation).collect();
        (r.iter().filter(|c| c.passed).count(), r.len())
    }
}

/// Computations in `𝒜` for a fixed root datum.
pub struct NilDaha<'a> {
    datum: &'a RootDatum,
    cache: Option<RwLock<HashMap<AffineWeylElt, Arc<SmashElt>>>>,
    max_support: usize,
}

impl<'a> NilDaha<'a> {
    pub const DEFAULT_MAX_SUPPORT: usize = 200_000;

    pub fn new(datum: &'a RootDatum) -> Self {
        Self { datum, cache: Some(RwLock::new(HashMap::new())), max_support: Self::DEFAULT_MAX_SUPPORT }
    }

    pub fn with_cache(mut self, enabled: bool) -> Self {
        self.cache = enabled.then(|| RwLock::new(HashMap::new()));
        self
    }

    pub fn with_max_support(mut self, n: usize) -> Self {
        self.max_support = n;
        self
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `(f ⊗ x)(g ⊗ y) = f·x(g) ⊗ xy`, with `x` acting through its finite part.
    pub fn mul(&self, a: &SmashElt, b: &SmashElt) -> Result<SmashElt> {
        let weyl = self.datum.weyl();
        let mut out = SmashElt::zero();
        for (x, f) in &a.terms {
            for (y, g) in &b.terms {
                let coeff = f * &g.act(weyl, x.u);
                out.add_term(self.datum.aff_mul(x, y), coeff);
            }
            if out.support_len() > self.max_support {
                return Err(Error::Resource(format!(
                    "smash product support exceeds {} terms",
                    self.max_support
                )));
            }
        }
        Ok(out)
    }

    /// Image of `D_i`: `1/(1-e^{α_i}) ⊗ 1 - e^{α_i}/(1-e^{α_i}) ⊗ s_i`, with `α_0 = -ϑ` on `P`.
    pub fn generator(&self, node: usize) -> Result<SmashElt> {
        let s = self.datum.simple_reflection(node)?;
        let alpha = self.datum.node_root(node);
        let inv = RatFunc::inv_one_minus(alpha);
        let mut out = SmashElt::scalar(inv.clone(), self.rank());
        out.add_term(s, -(&inv * &RatFunc::monomial(alpha)));
        Ok(out)
    }

    /// `e^λ ⊗ 1`.
    pub fn character(&self, lambda: Weight) -> SmashElt {
        SmashElt::scalar(RatFunc::monomial(lambda), self.rank())
    }

    /// Product of generators along a word of nodes.
    pub fn d_word(&self, word: &[usize]) -> Result<SmashElt> {
        let mut acc = SmashElt::one(self.rank());
        for &k in word.iter().rev() {
            acc = self.mul(&self.generator(k)?, &acc)?;
        }
        Ok(acc)
    }

    /// `D_x` along the canonical reduced word of `x`, memoized on suffixes.
    pub fn d_op(&self, x: &AffineWeylElt) -> Result<Arc<SmashElt>> {
        if let Some(hit) = self.cached(x) {
            return Ok(hit);
        }
        let word = self.datum.reduced_word(x);
        // Find the longest cached suffix, then build outwards.
        let mut suffixes = Vec::with_capacity(word.len() + 1);
        let mut cur = *x;
        suffixes.push(cur);
        for &k in &word {
            cur = self.datum.aff_mul(&self.datum.simple_reflection(k)?, &cur);
            suffixes.push(cur);
        }
        let mut start = word.len();
        let mut acc = Arc::new(SmashElt::one(self.rank()));
        for k in (0..=word.len()).rev() {
            if let Some(hit) = self.cached(&suffixes[k]) {
                start = k;
                acc = hit;
                break;
            }
        }
        for k in (0..start).rev() {
            acc = Arc::new(self.mul(&self.generator(word[k])?, &acc)?);
            self.store(suffixes[k], acc.clone());
        }
        Ok(acc)
    }

    fn cached(&self, x: &AffineWeylElt) -> Option<Arc<SmashElt>> {
        self.cache.as_ref().and_then(|c| c.read().unwrap().get(x).cloned())
    }

    fn store(&self, x: AffineWeylElt, v: Arc<SmashElt>) {
        if let Some(c) = &self.cache {
            c.write().unwrap().insert(x, v);
        }
    }

    /// `Σ_{w∈W} w(f) ⊗ w` with `f = 1/Π_{α>0}(1-e^α)`.
    pub fn d_w0_closed_form(&self) -> SmashElt {
        let weyl = self.datum.weyl();
        let mut f = RatFunc::one(self.rank());
        for root in self.datum.positive_roots() {
            f = &f * &RatFunc::inv_one_minus(root.weight);
        }
        let mut out = SmashElt::zero();
        for w in weyl.elements() {
            out.add_term(AffineWeylElt::finite(w, self.rank()), f.act(weyl, w));
        }
        out
    }

    /// The polynomial representation: `Σ f_x ⊗ x` sends `g` to `Σ f_x · x(g)`.
    pub fn apply(&self, a: &SmashElt, g: &RatFunc) -> RatFunc {
        let weyl = self.datum.weyl();
        let mut out = RatFunc::zero();
        for (x, f) in &a.terms {
            out = &out + &(f * &g.act(weyl, x.u));
        }
        out
    }

    /// `D_{w_0}(e^{w_0 λ})`; for dominant `λ` this is the character of `L(λ)`.
    pub fn demazure_character(&self, lambda: &Weight) -> Result<RatFunc> {
        let weyl = self.datum.weyl();
        let w0 = AffineWeylElt::finite(weyl.longest(), self.rank());
        let d = self.d_op(&w0)?;
        Ok(self.apply(&d, &RatFunc::monomial(weyl.act_weight(weyl.longest(), lambda))))
    }

    /// Order of `s_i s_j` in `W_af`, or `None` when it is infinite.
    pub fn braid_order(&self, i: usize, j: usize) -> Result<Option<usize>> {
        let si = self.datum.simple_reflection(i)?;
        let sj = self.datum.simple_reflection(j)?;
        let g = self.datum.aff_mul(&si, &sj);
        let mut acc = g;
        for m in 1..=12 {
            if acc.is_identity() {
                return Ok(Some(m));
            }
            acc = self.datum.aff_mul(&acc, &g);
        }
        Ok(None)
    }

    /// Checks all five defining relations on the images of the generators,
    /// with `λ` over the weights of max-norm at most `radius`.
    pub fn verify_relations(&self, radius: i32) -> Result<RelationReport> {
        let r = self.rank();
        let d = self.datum;
        let weyl = d.weyl();
        let weights = weight_box(r, radius);
        let mut checks = Vec::new();
        let mut push = |relation: u8, label: String, passed: bool, detail: Option<String>| {
            checks.push(RelationCheck { relation, label, passed, detail });
        };

        for lam in &weights {
            for mu in &weights {
                let lhs = self.mul(&self.character(*lam), &self.character(*mu))?;
                let ok = lhs == self.character(*lam + *mu);
                push(1, format!("e^{lam} e^{mu} = e^(λ+μ)"), ok, None);
            }
        }

        let gens: Vec<SmashElt> = (0..=r).map(|k| self.generator(k)).collect::<Result<_>>()?;
        for (k, g) in gens.iter().enumerate() {
            let sq = self.mul(g, g)?;
            let ok = &sq == g;
            push(2, format!("D_{k}^2 = D_{k}"), ok, (!ok).then(|| format!("{sq:?}")));
        }

        for i in 0..=r {
            for j in i + 1..=r {
                match self.braid_order(i, j)? {
                    Some(m) => {
                        let word = |a: usize, b: usize| -> Vec<usize> { (0..m).map(|t| if t % 2 == 0 { a } else { b }).collect() };
                        let lhs = self.d_word(&word(i, j))?;
                        let rhs = self.d_word(&word(j, i))?;
                        let ok = lhs == rhs;
                        push(3, format!("braid relation for ({i},{j}), m = {m}"), ok, None);
                    }
                    None => push(3, format!("({i},{j}): s_i s_j has infinite order, no relation"), true, None),
                }
            }
        }

        for node in 0..=r {
            let relation = if node == 0 { 5 } else { 4 };
            let u = d.node_finite_part(node);
            let alpha = d.node_root(node);
            for lam in &weights {
                let slam = weyl.act_weight(u, lam);
                let lhs = self
                    .mul(&gens[node], &self.character(*lam))?
                    .sub(&self.mul(&self.character(slam), &gens[node])?);
                let diff = LaurentPoly::monomial(*lam) - LaurentPoly::monomial(slam);
                let rhs = SmashElt::scalar(&RatFunc::from_poly(diff) * &RatFunc::inv_one_minus(alpha), r);
                let ok = lhs == rhs;
                push(relation, format!("D_{node} e^{lam} - e^{slam} D_{node}"), ok, (!ok).then(|| format!("{lhs:?}")));
            }
        }

        Ok(RelationReport { root_system: d.cartan_type().to_string(), checks })
    }
}

/// All weights with every coordinate in `-radius..=radius`.
pub fn weight_box(rank: usize, radius: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (-radius..=radius).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Weight::new(&v)).collect()
}
