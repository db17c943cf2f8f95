//! Quantum K-theoretic multiplication by divisor classes of the finite flag
//! manifold, read off from `h_i ⊙` on normalized affine Grassmannian classes.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmannian::{Grassmannian, SchubertExpansion};
use crate::ring::LaurentPoly;
use crate::root_data::{Coweight, RootDatum};
use crate::weyl::{AffineWeylElt, FiniteWeylElt};

/// `Σ c_{u,γ} Q^γ [O_{ℬ(u)}]`, finitely supported; `γ` ranges over all of `Q^∨`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QKClass {
    terms: BTreeMap<(FiniteWeylElt, Coweight), LaurentPoly>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QKTerm {
    pub u: String,
    #[serde(rename = "Q_exponent")]
    pub q_exponent: Vec<i32>,
    pub coefficient: String,
}

impl QKClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(u: FiniteWeylElt, gamma: Coweight, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(u, gamma, c);
        out
    }

    pub fn add_term(&mut self, u: FiniteWeylElt, gamma: Coweight, c: LaurentPoly) {
        let key = (u, gamma);
        let sum = &self.terms.remove(&key).unwrap_or_default() + &c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(FiniteWeylElt, Coweight), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, u: FiniteWeylElt, gamma: &Coweight) -> LaurentPoly {
        self.terms.get(&(u, *gamma)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Novikov exponents outside `Q^∨_+`.
    pub fn negative_exponents(&self) -> Vec<Coweight> {
        self.terms.keys().filter(|(_, g)| !RootDatum::is_nonnegative(g)).map(|(_, g)| *g).collect()
    }

    /// Sets `Q^γ = 0` for every `γ ≠ 0`.
    pub fn classical_part(&self) -> Self {
        Self { terms: self.terms.iter().filter(|((_, g), _)| g.is_zero()).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn to_terms(&self, datum: &RootDatum) -> Vec<QKTerm> {
        self.terms
            .iter()
            .map(|((u, g), c)| QKTerm { u: datum.format_finite(*u), q_exponent: g.coords().to_vec(), coefficient: c.to_string() })
            .collect()
    }

    pub fn display<'a>(&'a self, datum: &'a RootDatum) -> impl fmt::Display + 'a {
        QKDisplay { class: self, datum }
    }
}

struct QKDisplay<'a> {
    class: &'a QKClass,
    datum: &'a RootDatum,
}

impl fmt::Display for QKDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.class.is_empty() {
            return write!(f, "0");
        }
        for (k, ((u, g), c)) in self.class.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !g.is_zero() {
                write!(f, "*Q^{g}")?;
            }
            write!(f, "*O({})", self.datum.format_finite(*u))?;
        }
        Ok(())
    }
}

/// The term at `u t_γ` becomes the coefficient of `Q^{γ - β_ref} [O_{ℬ(u)}]`.
pub fn normalize_gr_to_qk(exp: &SchubertExpansion, beta_ref: &Coweight) -> QKClass {
    let mut out = QKClass::zero();
    for (x, c) in exp.terms() {
        out.add_term(x.u, x.beta - *beta_ref, c.clone());
    }
    out
}

/// A stabilized divisor product together with the depths that were compared.
#[derive(Clone, Debug)]
pub struct QuantumProduct {
    pub i: usize,
    pub w: FiniteWeylElt,
    pub class: QKClass,
    pub depth: u32,
    pub confirmed_at: u32,
    pub warnings: Vec<String>,
}

/// Parameters for the deep translation `β = -N·2ρ^∨` and the expansion window.
#[derive(Clone, Copy, Debug)]
pub struct DepthSchedule {
    pub start: u32,
    pub cap: u32,
    pub radius: i32,
}

impl Default for DepthSchedule {
    fn default() -> Self {
        Self { start: 2, cap: 6, radius: 4 }
    }
}

/// `h_i ⊙ [O_{Gr_{w t_β}}]` at `β = β_h = -n·2ρ^∨`, expanded and normalized.
pub fn divisor_product_at(gr: &Grassmannian, i: usize, w: FiniteWeylElt, n: u32, radius: i32) -> Result<QKClass> {
    let d = gr.datum();
    let beta = d.deep_coweight(n);
    let h = gr.h_class(i, &beta)?;
    let x = AffineWeylElt::new(w, beta);
    debug_assert!(d.is_min_coset_rep(&x));
    let xi = crate::grassmannian::LocalClass::new((*gr.schubert_class(&x)).clone(), beta);
    let prod = gr.local_mul(&h, &xi);
    let exp = gr.expand_local(&prod, radius)?;
    Ok(normalize_gr_to_qk(&exp, &prod.offset))
}

/// `[O_{ℬ(s_i)}] ⋆ [O_{ℬ(w)}]`, recomputed one step deeper until two consecutive depths agree.
pub fn quantum_divisor_product(gr: &Grassmannian, i: usize, w: FiniteWeylElt, schedule: DepthSchedule) -> Result<QuantumProduct> {
    let d = gr.datum();
    if i == 0 || i > d.rank() {
        return Err(Error::BadIndex { index: i, rank: d.rank() });
    }
    if schedule.start == 0 || schedule.cap < schedule.start {
        return Err(Error::Config(format!("bad depth schedule {}..{}", schedule.start, schedule.cap)));
    }
    let mut n = schedule.start;
    let mut prev = divisor_product_at(gr, i, w, n, schedule.radius)?;
    while n < schedule.cap {
        let next = divisor_product_at(gr, i, w, n + 1, schedule.radius)?;
        if next == prev {
            let warnings = prev
                .negative_exponents()
                .into_iter()
                .map(|g| format!("Novikov exponent {g} is not in the nonnegative coroot cone"))
                .collect();
            return Ok(QuantumProduct { i, w, class: prev, depth: n, confirmed_at: n + 1, warnings });
        }
        prev = next;
        n += 1;
    }
    Err(Error::NotStabilized { cap: schedule.cap })
}

/// One row per `(i, w)` with `i ∈ I`, `w ∈ W`, ordered by `i` then by the enumeration of `W`.
pub fn emit_chevalley_table(gr: &Grassmannian, schedule: DepthSchedule) -> Result<Vec<QuantumProduct>> {
    let d = gr.datum();
    let pairs: Vec<(usize, FiniteWeylElt)> =
        (1..=d.rank()).flat_map(|i| d.weyl().elements().map(move |w| (i, w))).collect();
    pairs.into_par_iter().map(|(i, w)| quantum_divisor_product(gr, i, w, schedule)).collect()
}
