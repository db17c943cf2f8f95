//! Equivariant K-theory of the affine Grassmannian inside the commutative
//! algebra `𝒞 = ℚ(P) ⊗ ℚQ^∨`.
//!
//! A Schubert class `[O_{Gr_x}]` (for `x` in `W_af^-`) is the projection of
//! `D_x D_{w_0}` to `𝒞`. Because projection intertwines left multiplication by
//! `D_i` with the operator `D_i^#` on `𝒞`, the class is computed as a chain of
//! `D_i^#` applications to the identity class along a reduced word of `x`; the
//! direct projection is kept as an independent route.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nildaha::{NilDaha, SmashElt};
use crate::ring::{merge_factors, LaurentPoly, PolyAcc, RatFunc};
use crate::root_data::{Coweight, RootDatum};
use crate::weyl::{AffineWeylElt, FiniteWeylElt};

/// An element `Σ f_β ⊗ t_β` of `𝒞`.
#[derive(Clone, Default)]
pub struct GrClass {
    terms: BTreeMap<Coweight, RatFunc>,
}

impl GrClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ t_0`, the class of the base point.
    pub fn identity(rank: usize) -> Self {
        Self::term(Coweight::zero(rank), RatFunc::one(rank))
    }

    pub fn term(beta: Coweight, f: RatFunc) -> Self {
        let mut c = Self::zero();
        c.add_term(beta, f);
        c
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &RatFunc)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.keys()
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

    pub fn coefficient(&self, beta: &Coweight) -> Option<&RatFunc> {
        self.terms.get(beta)
    }

    pub fn add_term(&mut self, beta: Coweight, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&beta) {
            Some(g) => {
                let sum = &*g + &f;
                if sum.is_zero() {
                    self.terms.remove(&beta);
                } else {
                    *g = sum;
                }
            }
            None => {
                self.terms.insert(beta, f);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(*b, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(*b, -f);
        }
        out
    }

    /// Multiplication by `f ⊗ t_0`.
    pub fn scale(&self, f: &RatFunc) -> Self {
        let mut out = Self::zero();
        if f.is_zero() {
            return out;
        }
        for (b, g) in &self.terms {
            out.terms.insert(*b, f * g);
        }
        out
    }

    /// Multiplication by `1 ⊗ t_γ`.
    pub fn translate(&self, gamma: &Coweight) -> Self {
        Self { terms: self.terms.iter().map(|(b, f)| (*b + *gamma, f.clone())).collect() }
    }

    /// The Pontryagin product: convolution over `Q^∨`.
    ///
    /// Numerator products are accumulated per target coordinate and per pair
    /// of denominators, so the expensive cancellation runs once per group.
    pub fn pontryagin(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (da, ia) = denominator_ids(self);
        let (db, ib) = denominator_ids(other);
        let sa: Vec<_> = self.terms.values().map(|f| f.numerator().small_coeffs()).collect();
        let sb: Vec<_> = other.terms.values().map(|g| g.numerator().small_coeffs()).collect();
        let mut acc: HashMap<Coweight, HashMap<(usize, usize), PolyAcc>> = HashMap::new();
        for (((x, f), &ka), pa) in self.terms.iter().zip(&ia).zip(&sa) {
            for (((y, g), &kb), pb) in other.terms.iter().zip(&ib).zip(&sb) {
                let group = acc.entry(*x + *y).or_default().entry((ka, kb)).or_default();
                match (pa, pb) {
                    (Some(p), Some(q)) => group.add_small(p, q),
                    _ => group.add_product(f.numerator(), g.numerator()),
                }
            }
        }
        let mut out = Self::zero();
        for (k, groups) in acc {
            let mut groups: Vec<_> = groups.into_iter().collect();
            groups.sort_unstable_by_key(|g| g.0);
            let parts: Vec<RatFunc> = groups
                .into_iter()
                .map(|(key, num)| RatFunc::from_parts(num.into_poly(), merge_factors(da[key.0].clone(), &db[key.1])))
                .collect();
            let sum = sum_ratfuncs(parts);
            if !sum.is_zero() {
                out.terms.insert(k, sum);
            }
        }
        out
    }

    /// Largest max-norm distance of the support from `center`.
    pub fn spread(&self, center: &Coweight) -> i32 {
        self.terms.keys().map(|b| (*b - *center).max_abs()).max().unwrap_or(0)
    }
}

/// Distinct denominator factor lists of a class, and the list index of each term.
fn denominator_ids(c: &GrClass) -> (Vec<Vec<(LaurentPoly, u32)>>, Vec<usize>) {
    let mut lists: Vec<Vec<(LaurentPoly, u32)>> = Vec::new();
    let mut index: HashMap<&[(LaurentPoly, u32)], usize> = HashMap::new();
    let mut ids = Vec::with_capacity(c.len());
    for f in c.terms.values() {
        let den = f.denominator_factors();
        let id = *index.entry(den).or_insert_with(|| {
            lists.push(den.to_vec());
            lists.len() - 1
        });
        ids.push(id);
    }
    (lists, ids)
}

/// Balanced summation keeps the intermediate common denominators small.
fn sum_ratfuncs(mut parts: Vec<RatFunc>) -> RatFunc {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

impl PartialEq for GrClass {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(other.terms.iter()).all(|((x, f), (y, g))| x == y && f == g)
    }
}

impl fmt::Debug for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(b, c)| (b.to_string(), c.to_string()))).finish()
    }
}

/// A localized class `rep ⊙ [O_{Gr_{t_offset}}]^{-1}`; `offset` is zero or strictly antidominant.
#[derive(Clone, Debug)]
pub struct LocalClass {
    pub rep: GrClass,
    pub offset: Coweight,
}

impl LocalClass {
    pub fn new(rep: GrClass, offset: Coweight) -> Self {
        Self { rep, offset }
    }
}

/// Bounds the translation parts `δ` of basis indices `u t_δ`: `|δ - center| ≤ radius` in max-norm.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub center: Coweight,
    pub radius: i32,
}

impl Window {
    pub fn new(center: Coweight, radius: i32) -> Self {
        Self { center, radius }
    }

    pub fn contains(&self, beta: &Coweight) -> bool {
        (*beta - self.center).max_abs() <= self.radius
    }
}

/// Coefficients over the Schubert basis `{[O_{Gr_x}] : x ∈ W_af^-}`, read as
/// a localized class with the given reference offset.
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertExpansion {
    pub offset: Coweight,
    terms: BTreeMap<AffineWeylElt, LaurentPoly>,
}

/// One term of an expansion, ready for serialization.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub finite_part: String,
    pub translation: Vec<i32>,
    pub coefficient: String,
}

impl SchubertExpansion {
    pub fn zero(offset: Coweight) -> Self {
        Self { offset, terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &AffineWeylElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, x: AffineWeylElt, c: LaurentPoly) {
        let sum = &self.terms.remove(&x).unwrap_or_default() + &c;
        if !sum.is_zero() {
            self.terms.insert(x, sum);
        }
    }

    /// Terms keyed by `(u, δ - offset)` for the basis element `u t_δ`.
    /// This key does not depend on how deep the representative is taken.
    pub fn normalized(&self) -> BTreeMap<(FiniteWeylElt, Coweight), LaurentPoly> {
        self.terms.iter().map(|(x, c)| ((x.u, x.beta - self.offset), c.clone())).collect()
    }

    /// Serializable terms, translations taken relative to the offset.
    pub fn to_terms(&self, datum: &RootDatum) -> Vec<ExpansionTerm> {
        self.normalized()
            .into_iter()
            .map(|((u, delta), c)| ExpansionTerm {
                finite_part: datum.format_finite(u),
                translation: delta.coords().to_vec(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

/// Schubert calculus in `K_H(Gr)` for a fixed root datum.
pub struct Grassmannian<'a> {
    datum: &'a RootDatum,
    nildaha: NilDaha<'a>,
    classes: Option<RwLock<HashMap<AffineWeylElt, Arc<GrClass>>>>,
}

impl<'a> Grassmannian<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        Self { datum, nildaha: NilDaha::new(datum), classes: Some(RwLock::new(HashMap::new())) }
    }

    pub fn with_cache(mut self, enabled: bool) -> Self {
        self.classes = enabled.then(|| RwLock::new(HashMap::new()));
        self.nildaha = NilDaha::new(self.datum).with_cache(enabled);
        self
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn nildaha(&self) -> &NilDaha<'a> {
        &self.nildaha
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `pr(f ⊗ u t_β) = f ⊗ t_{uβ}`.
    pub fn pr(&self, a: &SmashElt) -> GrClass {
        let weyl = self.datum.weyl();
        let mut out = GrClass::zero();
        for (x, f) in a.terms() {
            out.add_term(weyl.act_coweight(x.u, &x.beta), f.clone());
        }
        out
    }

    /// The operator `D_i^#` on `𝒞`.
    pub fn d_sharp(&self, node: usize, a: &GrClass) -> Result<GrClass> {
        let d = self.datum;
        let s = d.simple_reflection(node)?;
        let alpha = d.node_root(node);
        let weyl = d.weyl();
        let inv = RatFunc::inv_one_minus(alpha);
        let twisted = &inv * &RatFunc::monomial(alpha);
        let mut parts: HashMap<Coweight, Vec<RatFunc>> = HashMap::new();
        for (beta, f) in a.terms() {
            parts.entry(*beta).or_default().push(f * &inv);
            let target = weyl.act_coweight(s.u, &(s.beta + *beta));
            parts.entry(target).or_default().push(-(&twisted * &f.act(weyl, s.u)));
        }
        let mut out = GrClass::zero();
        for (k, v) in parts {
            let sum = sum_ratfuncs(v);
            if !sum.is_zero() {
                out.terms.insert(k, sum);
            }
        }
        Ok(out)
    }

    /// Applies `D^#_{i_1} ⋯ D^#_{i_k}` (rightmost first).
    pub fn d_sharp_word(&self, word: &[usize], a: &GrClass) -> Result<GrClass> {
        let mut acc = a.clone();
        for &k in word.iter().rev() {
            acc = self.d_sharp(k, &acc)?;
        }
        Ok(acc)
    }

    /// `[O_{Gr_x}]` for the coset `xW`, built as a `D^#` chain from the identity class.
    pub fn schubert_class(&self, x: &AffineWeylElt) -> Arc<GrClass> {
        let d = self.datum;
        let xm = d.min_coset_rep(x);
        if let Some(hit) = self.cached(&xm) {
            return hit;
        }
        let word = d.reduced_word(&xm);
        let mut suffixes = Vec::with_capacity(word.len() + 1);
        let mut cur = xm;
        suffixes.push(cur);
        for &k in &word {
            cur = d.aff_mul(&d.simple_reflection(k).unwrap(), &cur);
            suffixes.push(cur);
        }
        let mut start = word.len();
        let mut acc = Arc::new(GrClass::identity(self.rank()));
        for k in (0..word.len()).rev() {
            if let Some(hit) = self.cached(&suffixes[k]) {
                start = k;
                acc = hit;
                break;
            }
        }
        for k in (0..start).rev() {
            acc = Arc::new(self.d_sharp(word[k], &acc).expect("valid node"));
            self.store(suffixes[k], acc.clone());
        }
        acc
    }

    /// `[O_{Gr_β}]`, the class of the coset `t_β W`.
    pub fn translation_schubert_class(&self, beta: &Coweight) -> Arc<GrClass> {
        self.schubert_class(&AffineWeylElt::translation(*beta))
    }

    /// The same class by projecting `D_{x_min} D_{w_0}` computed in `𝒜`.
    pub fn schubert_class_via_smash(&self, x: &AffineWeylElt) -> Result<GrClass> {
        let xm = self.datum.min_coset_rep(x);
        let w0 = AffineWeylElt::finite(self.datum.weyl().longest(), self.rank());
        let dx = self.nildaha.d_op(&xm)?;
        let dw0 = self.nildaha.d_op(&w0)?;
        Ok(self.pr(&self.nildaha.mul(&dx, &dw0)?))
    }

    fn cached(&self, x: &AffineWeylElt) -> Option<Arc<GrClass>> {
        self.classes.as_ref().and_then(|c| c.read().unwrap().get(x).cloned())
    }

    fn store(&self, x: AffineWeylElt, v: Arc<GrClass>) {
        if let Some(c) = &self.classes {
            c.write().unwrap().insert(x, v);
        }
    }

    /// Minimal coset representative of `t_β W`.
    pub fn grassmannian_index(&self, beta: &Coweight) -> AffineWeylElt {
        self.datum.min_coset_rep(&AffineWeylElt::translation(*beta))
    }

    /// `Σ c_x [O_{Gr_x}]` as an element of `𝒞` (offset ignored).
    pub fn realize(&self, exp: &SchubertExpansion) -> GrClass {
        let mut out = GrClass::zero();
        for (x, c) in exp.terms() {
            out = out.add(&self.schubert_class(x).scale(&RatFunc::from_poly(c.clone())));
        }
        out
    }

    /// Expands an element of `𝒞` over the Schubert basis by triangular elimination.
    ///
    /// The coordinate whose Grassmannian index is longest is eliminated first;
    /// only that index's class reaches it. A pivot index outside `window`,
    /// a non-polynomial coefficient or a vanishing pivot is reported as an error.
    pub fn expand(&self, a: &GrClass, window: &Window) -> Result<SchubertExpansion> {
        let d = self.datum;
        // Residual evaluated one coordinate at a time, longest index first.
        let mut found: Vec<(Arc<GrClass>, LaurentPoly)> = Vec::new();
        let mut index: HashMap<Coweight, AffineWeylElt> = HashMap::new();
        let mut queue: BTreeSet<(usize, Coweight)> = BTreeSet::new();
        let enqueue = |g: &Coweight, index: &mut HashMap<Coweight, AffineWeylElt>, queue: &mut BTreeSet<_>| {
            if !index.contains_key(g) {
                let x = self.grassmannian_index(g);
                queue.insert((d.aff_length(&x), *g));
                index.insert(*g, x);
            }
        };
        for g in a.support() {
            enqueue(g, &mut index, &mut queue);
        }
        let residual_at = |g: &Coweight, found: &[(Arc<GrClass>, LaurentPoly)]| {
            let mut parts: Vec<RatFunc> = a.coefficient(g).into_iter().cloned().collect();
            for (class, c) in found {
                if let Some(f) = class.coefficient(g) {
                    parts.push(-(f * &RatFunc::from_poly(c.clone())));
                }
            }
            sum_ratfuncs(parts)
        };
        let mut out = SchubertExpansion::zero(Coweight::zero(self.rank()));
        while let Some((_, gamma)) = queue.pop_last() {
            let r = residual_at(&gamma, &found);
            if r.is_zero() {
                continue;
            }
            let x = index[&gamma];
            if !window.contains(&x.beta) {
                let mut outside = vec![gamma.to_string()];
                for (_, g) in queue.iter().rev() {
                    if !window.contains(&index[g].beta) && !residual_at(g, &found).is_zero() {
                        outside.push(g.to_string());
                    }
                }
                return Err(Error::WindowTooSmall { residual_support: outside });
            }
            let class = self.schubert_class(&x);
            let pivot = class
                .coefficient(&gamma)
                .filter(|p| !p.is_zero())
                .ok_or_else(|| Error::ZeroPivot(d.format_element(&x)))?;
            let c = r.try_div(pivot)?;
            let poly = c.to_laurent().ok_or_else(|| Error::NotInLattice {
                index: d.format_element(&x),
                coefficient: c.to_string(),
            })?;
            for g in class.support() {
                enqueue(g, &mut index, &mut queue);
            }
            out.add_term(x, poly.clone());
            found.push((class, poly));
        }
        Ok(out)
    }

    /// Localized class of `[O_{Gr_x}]` (trivial offset).
    pub fn local_class(&self, x: &AffineWeylElt) -> LocalClass {
        LocalClass::new((*self.schubert_class(x)).clone(), Coweight::zero(self.rank()))
    }

    /// `𝚝_γ = [O_{Gr_{t_{β_1}}}] ⊙ [O_{Gr_{t_{β_2}}}]^{-1}` with `β_1 - β_2 = γ`,
    /// taking `β_2 = -n·2ρ^∨` for the least `n ≥ depth` making `β_1` strictly antidominant.
    pub fn translation_class(&self, gamma: &Coweight, depth: u32) -> LocalClass {
        let d = self.datum;
        let mut n = depth.max(1);
        while !d.is_strictly_antidominant(&(*gamma + d.deep_coweight(n))) {
            n += 1;
        }
        let beta2 = d.deep_coweight(n);
        LocalClass::new((*self.translation_schubert_class(&(*gamma + beta2))).clone(), beta2)
    }

    /// `h_i = [O_{Gr_{s_i t_β}}] ⊙ [O_{Gr_{t_β}}]^{-1}` for a strictly antidominant `β`.
    pub fn h_class(&self, i: usize, beta: &Coweight) -> Result<LocalClass> {
        let d = self.datum;
        if i == 0 || i > d.rank() {
            return Err(Error::BadIndex { index: i, rank: d.rank() });
        }
        if !d.is_strictly_antidominant(beta) {
            return Err(Error::Config(format!("h_i needs a strictly antidominant coweight, got {beta}")));
        }
        let x = d.aff_mul(&d.simple_reflection(i)?, &AffineWeylElt::translation(*beta));
        Ok(LocalClass::new((*self.schubert_class(&x)).clone(), *beta))
    }

    pub fn local_mul(&self, a: &LocalClass, b: &LocalClass) -> LocalClass {
        LocalClass::new(a.rep.pontryagin(&b.rep), a.offset + b.offset)
    }

    /// `D_i^#` on the localization; it commutes with translation classes.
    pub fn local_d_sharp(&self, node: usize, a: &LocalClass) -> Result<LocalClass> {
        Ok(LocalClass::new(self.d_sharp(node, &a.rep)?, a.offset))
    }

    /// Equality in `K_H(Gr)_loc`, by clearing both offsets.
    pub fn local_eq(&self, a: &LocalClass, b: &LocalClass) -> bool {
        let lhs = self.clear(&a.rep, &b.offset);
        let rhs = self.clear(&b.rep, &a.offset);
        lhs == rhs
    }

    fn clear(&self, rep: &GrClass, offset: &Coweight) -> GrClass {
        if offset.is_zero() {
            rep.clone()
        } else {
            rep.pontryagin(&self.translation_schubert_class(offset))
        }
    }

    /// Expands a localized class; the window is centred on its offset.
    pub fn expand_local(&self, a: &LocalClass, radius: i32) -> Result<SchubertExpansion> {
        let mut exp = self.expand(&a.rep, &Window::new(a.offset, radius))?;
        exp.offset = a.offset;
        Ok(exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Weight;

    fn datum(tag: &str) -> RootDatum {
        RootDatum::from_tag(tag).unwrap()
    }

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    #[test]
    fn identity_class_is_one() {
        for tag in ["A1", "A2", "B2"] {
            let d = datum(tag);
            let gr = Grassmannian::new(&d);
            let e = AffineWeylElt::identity(d.rank());
            assert_eq!(*gr.schubert_class(&e), GrClass::identity(d.rank()));
            assert_eq!(gr.schubert_class_via_smash(&e).unwrap(), GrClass::identity(d.rank()));
        }
    }

    #[test]
    fn pr_reads_canonical_form() {
        let d = datum("A2");
        let gr = Grassmannian::new(&d);
        let f = RatFunc::monomial(Weight::new(&[1, 0]));
        let s1 = d.simple_reflection(1).unwrap();
        assert_eq!(gr.pr(&SmashElt::term(s1, f.clone())), GrClass::term(cw(&[0, 0]), f.clone()));
        let x = d.parse_element("s1 t[-1,0]").unwrap();
        let image = d.weyl().act_coweight(x.u, &x.beta);
        assert_eq!(gr.pr(&SmashElt::term(x, f.clone())), GrClass::term(image, f));
    }

    #[test]
    fn sl2_translation_class_and_routes_agree() {
        let d = datum("A1");
        let gr = Grassmannian::new(&d);
        let t = AffineWeylElt::translation(cw(&[-1]));
        let c = gr.schubert_class(&t);
        assert_eq!(c.len(), 3);
        assert_eq!(*c, gr.schubert_class_via_smash(&t).unwrap());
        let st = d.parse_element("s1 t[-1]").unwrap();
        assert_eq!(*gr.schubert_class(&st), gr.schubert_class_via_smash(&st).unwrap());
    }

    #[test]
    fn coset_independence() {
        let d = datum("A2");
        let gr = Grassmannian::new(&d);
        let x = d.parse_element("s0 s1").unwrap();
        for u in d.weyl().elements() {
            let y = d.aff_mul(&x, &AffineWeylElt::finite(u, 2));
            assert_eq!(*gr.schubert_class(&y), *gr.schubert_class(&x));
        }
    }

    #[test]
    fn sl2_products() {
        let d = datum("A1");
        let gr = Grassmannian::new(&d);
        let alpha = d.simple_root(0);
        let st1 = gr.schubert_class(&d.parse_element("s1 t[-1]").unwrap());
        for m in 1..=3 {
            let tm = gr.schubert_class(&AffineWeylElt::translation(cw(&[-m])));
            let stm = gr.schubert_class(&d.parse_element(&format!("s1 t[-{m}]")).unwrap());
            let stm1 = gr.schubert_class(&d.parse_element(&format!("s1 t[-{}]", m + 1)).unwrap());
            assert_eq!(st1.pontryagin(&tm), *stm1);
            let lhs = st1.pontryagin(&stm);
            let ea = RatFunc::monomial(alpha);
            let rhs = tm.scale(&ea).add(&stm1.scale(&(&RatFunc::one(1) - &ea)));
            assert_eq!(lhs, rhs);
            let exp = gr.expand(&lhs, &Window::new(cw(&[0]), 8)).unwrap();
            assert_eq!(exp.len(), 2);
            assert_eq!(exp.coefficient(&AffineWeylElt::translation(cw(&[-m]))), LaurentPoly::monomial(alpha));
        }
    }

    #[test]
    fn expansion_of_basis_elements() {
        let d = datum("A2");
        let gr = Grassmannian::new(&d);
        for text in ["e", "s0", "s1 s0", "s2 s1 s0", "t[-1,-1]"] {
            let x = d.min_coset_rep(&d.parse_element(text).unwrap());
            let exp = gr.expand(&gr.schubert_class(&x), &Window::new(cw(&[0, 0]), 4)).unwrap();
            assert_eq!(exp.len(), 1);
            assert!(exp.coefficient(&x).is_one());
        }
    }

    #[test]
    fn expansion_errors() {
        let d = datum("A1");
        let gr = Grassmannian::new(&d);
        let c = gr.schubert_class(&AffineWeylElt::translation(cw(&[-3])));
        assert!(matches!(gr.expand(&c, &Window::new(cw(&[0]), 1)), Err(Error::WindowTooSmall { .. })));
        let half = c.scale(&RatFunc::inv_one_minus(d.simple_root(0)));
        assert!(matches!(gr.expand(&half, &Window::new(cw(&[0]), 8)), Err(Error::NotInLattice { .. })));
    }

    #[test]
    fn translation_classes_compose() {
        let d = datum("A2");
        let gr = Grassmannian::new(&d);
        let g = cw(&[1, -1]);
        let a = gr.translation_class(&g, 1);
        let b = gr.translation_class(&-g, 1);
        let one = gr.local_class(&AffineWeylElt::identity(2));
        assert!(gr.local_eq(&gr.local_mul(&a, &b), &one));
        assert!(gr.local_eq(&gr.translation_class(&cw(&[0, 0]), 1), &one));
        assert!(gr.local_eq(&gr.translation_class(&g, 1), &gr.translation_class(&g, 2)));
    }

    #[test]
    fn h_operator_on_sl2() {
        let d = datum("A1");
        let gr = Grassmannian::new(&d);
        let h1 = gr.h_class(1, &cw(&[-1])).unwrap();
        let h2 = gr.h_class(1, &cw(&[-2])).unwrap();
        for m in 1..=2 {
            let tm = gr.local_class(&AffineWeylElt::translation(cw(&[-m])));
            let expect = gr.local_class(&d.parse_element(&format!("s1 t[-{m}]")).unwrap());
            assert!(gr.local_eq(&gr.local_mul(&h1, &tm), &expect));
            assert!(gr.local_eq(&gr.local_mul(&h2, &tm), &expect));
        }
    }

    #[test]
    fn d_sharp_fixes_identity() {
        let d = datum("B2");
        let gr = Grassmannian::new(&d);
        for k in 1..=2 {
            assert_eq!(gr.d_sharp(k, &GrClass::identity(2)).unwrap(), GrClass::identity(2));
        }
    }

    #[test]
    fn cache_is_transparent() {
        let d = datum("A2");
        let a = Grassmannian::new(&d);
        let b = Grassmannian::new(&d).with_cache(false);
        let x = d.parse_element("s1 s2 t[-1,-1]").unwrap();
        let _ = a.schubert_class(&d.parse_element("t[-1,-1]").unwrap());
        assert_eq!(*a.schubert_class(&x), *b.schubert_class(&x));
    }
}
