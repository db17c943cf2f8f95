//! The SL(2) semi-infinite flag model: Pieri–Chevalley twists by `±ϖ`, the
//! operator `H = 1 - e^ϖ Ξ(-ϖ)` and its comparison with `h ⊙` on the affine
//! Grassmannian side.
//!
//! Coefficients are rational functions in three commuting symbols: the
//! loop-rotation character `q`, the right translation `𝚝` by `α^∨` and `x = e^ϖ`
//! (so `e^α = x²`). They are stored as [`RatFunc`] over exponent vectors
//! `[q, 𝚝, x]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmannian::{Grassmannian, LocalClass};
use crate::ring::{LaurentPoly, RatFunc};
use crate::root_data::{Coweight, RootDatum, Weight};
use crate::weyl::AffineWeylElt;

/// A rational function in `q`, `𝚝`, `x = e^ϖ`.
pub type QShiftCoeff = RatFunc;

/// `q^a 𝚝^b x^c`.
pub fn mono(q: i32, t: i32, x: i32) -> QShiftCoeff {
    RatFunc::monomial(Weight::new(&[q, t, x]))
}

pub fn q_sym() -> QShiftCoeff {
    mono(1, 0, 0)
}

pub fn t_sym() -> QShiftCoeff {
    mono(0, 1, 0)
}

/// `e^{kϖ}`.
pub fn x_pow(k: i32) -> QShiftCoeff {
    mono(0, 0, k)
}

pub fn one() -> QShiftCoeff {
    RatFunc::one(3)
}

/// `Σ c [O(u)]` over `u ∈ {e, s}`, written `(c_e, c_s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiInfClass {
    pub e: QShiftCoeff,
    pub s: QShiftCoeff,
}

impl SemiInfClass {
    pub fn new(e: QShiftCoeff, s: QShiftCoeff) -> Self {
        Self { e, s }
    }

    /// `[O(e)]`.
    pub fn base_e() -> Self {
        Self::new(one(), RatFunc::zero())
    }

    /// `[O(s)]`.
    pub fn base_s() -> Self {
        Self::new(RatFunc::zero(), one())
    }

    pub fn scale(&self, c: &QShiftCoeff) -> Self {
        Self::new(c * &self.e, c * &self.s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.e + &other.e, &self.s + &other.s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.e - &other.e, &self.s - &other.s)
    }

    /// Right translation by `k α^∨`.
    pub fn translate(&self, k: i32) -> Self {
        self.scale(&mono(0, k, 0))
    }

    pub fn specialize_q1(&self) -> Result<Self> {
        Ok(Self::new(specialize_coeff_q1(&self.e)?, specialize_coeff_q1(&self.s)?))
    }
}

impl fmt::Display for SemiInfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*[O(e)] + ({})*[O(s)]", format_coeff(&self.e), format_coeff(&self.s))
    }
}

/// A 2×2 matrix whose rows are the images of `[O(e)]` and `[O(s)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistMatrix {
    pub rows: [[QShiftCoeff; 2]; 2],
}

impl TwistMatrix {
    pub fn identity() -> Self {
        Self { rows: [[one(), RatFunc::zero()], [RatFunc::zero(), one()]] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.rows;
        let b = &other.rows;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self { rows: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    pub fn determinant(&self) -> QShiftCoeff {
        let r = &self.rows;
        &(&r[0][0] * &r[1][1]) - &(&r[0][1] * &r[1][0])
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant().inv()?;
        let r = &self.rows;
        Ok(Self {
            rows: [[&r[1][1] * &det, -(&r[0][1] * &det)], [-(&r[1][0] * &det), &r[0][0] * &det]],
        })
    }

    pub fn row(&self, k: usize) -> SemiInfClass {
        SemiInfClass::new(self.rows[k][0].clone(), self.rows[k][1].clone())
    }

    /// The image of `a[O(e)] + b[O(s)]`.
    pub fn apply(&self, v: &SemiInfClass) -> SemiInfClass {
        self.row(0).scale(&v.e).add(&self.row(1).scale(&v.s))
    }

    pub fn specialize_q1(&self) -> Result<Self> {
        let r = &self.rows;
        Ok(Self {
            rows: [
                [specialize_coeff_q1(&r[0][0])?, specialize_coeff_q1(&r[0][1])?],
                [specialize_coeff_q1(&r[1][0])?, specialize_coeff_q1(&r[1][1])?],
            ],
        })
    }
}

impl fmt::Display for TwistMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[O(e)] -> {}", self.row(0))?;
        write!(f, "[O(s)] -> {}", self.row(1))
    }
}

/// `Ξ(ϖ)` for `positive`, otherwise its inverse `Ξ(-ϖ)`.
pub fn pieri_chevalley_matrix(positive: bool) -> TwistMatrix {
    let qinv = mono(-1, 0, 0);
    let pre = RatFunc::from_poly(LaurentPoly::one(3) - LaurentPoly::monomial(Weight::new(&[-1, 1, 0])))
        .inv()
        .expect("nonzero");
    let plus = TwistMatrix {
        rows: [
            [&pre * &x_pow(1), &pre * &x_pow(-1)],
            [&pre * &(&(&qinv * &x_pow(1)) * &t_sym()), &pre * &x_pow(-1)],
        ],
    };
    if positive {
        plus
    } else {
        plus.inverse().expect("Ξ(ϖ) is invertible")
    }
}

/// Substitutes `q = 1`; a denominator vanishing there is a pole.
pub fn specialize_coeff_q1(c: &QShiftCoeff) -> Result<QShiftCoeff> {
    let drop_q = |w: &Weight| Weight::new(&[0, w[1], w[2]]);
    let num = c.numerator().map_weights(drop_q);
    let mut den = LaurentPoly::one(3);
    for (f, e) in c.denominator_factors() {
        den = &den * &f.map_weights(drop_q).pow(*e);
    }
    if den.is_zero() {
        return Err(Error::Pole(format_coeff(c)));
    }
    RatFunc::new(num, &den)
}

/// `H(ξ) = ξ - e^ϖ Ξ(-ϖ)(ξ)` at `q = 1`.
pub fn h_operator_si(x: &SemiInfClass) -> SemiInfClass {
    h_operator_with(&pieri_chevalley_matrix(false).specialize_q1().expect("no pole at q = 1"), x)
}

/// `H` with the loop-rotation character kept.
pub fn h_operator_generic(x: &SemiInfClass) -> SemiInfClass {
    h_operator_with(&pieri_chevalley_matrix(false), x)
}

fn h_operator_with(minus: &TwistMatrix, x: &SemiInfClass) -> SemiInfClass {
    x.sub(&minus.apply(x).scale(&x_pow(1)))
}

/// Reads a coefficient `Σ c_k e^{kϖ}` of the A1 Grassmannian as a `QShiftCoeff`.
fn lift_character(p: &LaurentPoly) -> QShiftCoeff {
    RatFunc::from_poly(LaurentPoly::from_terms(p.terms().iter().map(|(w, c)| (Weight::new(&[0, 0, w[0]]), c.clone()))))
}

/// `Φ`: sends `[O_{Gr_{u t_{kα^∨}}}] ⊙ [O_{Gr_{t_o}}]^{-1}` to `𝚝^{k - o}[O(u)]`.
pub fn phi(gr: &Grassmannian, xi: &LocalClass, radius: i32) -> Result<SemiInfClass> {
    let exp = gr.expand_local(xi, radius)?;
    let mut out = SemiInfClass::new(RatFunc::zero(), RatFunc::zero());
    for ((u, kappa), c) in exp.normalized() {
        let term = &lift_character(&c) * &mono(0, kappa[0], 0);
        if u.is_identity() {
            out.e = &out.e + &term;
        } else {
            out.s = &out.s + &term;
        }
    }
    Ok(out)
}

/// One side-by-side comparison `Φ(h ⊙ ξ) = H(Φ(ξ))`.
#[derive(Clone, Debug, Serialize)]
pub struct GrComparison {
    pub m: i32,
    pub source: String,
    pub gr_side: String,
    pub si_side: String,
    pub passed: bool,
}

/// Compares `h ⊙ [O_{Gr_{t_{-mα}}}]` and `h ⊙ [O_{Gr_{s t_{-mα}}}]` with `H`, for `h` built at `depth`.
pub fn compare_with_gr(gr: &Grassmannian, m: i32, depth: u32, radius: i32) -> Result<Vec<GrComparison>> {
    let d = gr.datum();
    if d.cartan_type().to_string() != "A1" {
        return Err(Error::UnsupportedType(format!("{} (the semi-infinite model is SL(2) only)", d.cartan_type())));
    }
    if m <= 0 {
        return Err(Error::Config(format!("m must be positive, got {m}")));
    }
    let h = gr.h_class(1, &d.deep_coweight(depth))?;
    let s = d.weyl().simple(1);
    let beta = Coweight::new(&[-m]);
    let mut out = Vec::new();
    for (label, u) in [("t", crate::weyl::FiniteWeylElt::IDENTITY), ("s t", s)] {
        let xi = gr.local_class(&AffineWeylElt::new(u, beta));
        let lhs = phi(gr, &gr.local_mul(&h, &xi), radius)?;
        let rhs = h_operator_si(&phi(gr, &xi, radius)?);
        out.push(GrComparison {
            m,
            source: format!("h ⊙ [O_Gr({label}[-{m}])]"),
            gr_side: lhs.to_string(),
            si_side: rhs.to_string(),
            passed: lhs == rhs,
        });
    }
    Ok(out)
}

/// `Φ` applied to a Schubert class of the A1 Grassmannian, for reporting.
pub fn phi_of_class(gr: &Grassmannian, x: &AffineWeylElt, radius: i32) -> Result<SemiInfClass> {
    phi(gr, &gr.local_class(x), radius)
}

fn format_coeff(c: &QShiftCoeff) -> String {
    let num = format_poly(c.numerator());
    if c.is_polynomial() {
        return num;
    }
    let den = c.denominator_factors().iter().map(|(f, e)| {
        let base = format!("({})", format_poly(f));
        if *e == 1 { base } else { format!("{base}^{e}") }
    });
    format!("({num})/({})", den.collect::<Vec<_>>().join("*"))
}

fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in p.terms().iter().enumerate() {
        let mut factors = Vec::new();
        for (name, e) in ["q", "t", "x"].iter().zip(w.coords()) {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        let neg = *c < 0;
        let mag = if neg { -c.clone() } else { c.clone() };
        let body = match (factors.is_empty(), mag == 1) {
            (true, _) => mag.to_string(),
            (false, true) => factors.join("*"),
            (false, false) => format!("{mag}*{}", factors.join("*")),
        };
        if k == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// The type `A1` datum used by this model.
pub fn sl2() -> RootDatum {
    RootDatum::from_tag("A1").expect("A1 is supported")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e_alpha() -> QShiftCoeff {
        x_pow(2)
    }

    fn geom(qexp: i32) -> QShiftCoeff {
        RatFunc::from_poly(LaurentPoly::one(3) - LaurentPoly::monomial(Weight::new(&[qexp, 1, 0]))).inv().unwrap()
    }

    #[test]
    fn twist_rows_match_pieri_chevalley() {
        let m = pieri_chevalley_matrix(true);
        let c = geom(-1);
        assert_eq!(m.row(0), SemiInfClass::new(&c * &x_pow(1), &c * &x_pow(-1)));
        let qinv = mono(-1, 0, 0);
        assert_eq!(m.row(1), SemiInfClass::new(&c * &(&(&qinv * &x_pow(1)) * &t_sym()), &c * &x_pow(-1)));
    }

    #[test]
    fn inverse_and_composition() {
        let plus = pieri_chevalley_matrix(true);
        let minus = pieri_chevalley_matrix(false);
        assert_eq!(plus.mul(&minus), TwistMatrix::identity());
        assert_eq!(minus.mul(&plus), TwistMatrix::identity());
        assert_eq!(minus.row(0), SemiInfClass::new(x_pow(-1), -x_pow(-1)));
        let qinv = mono(-1, 0, 0);
        assert_eq!(minus.row(1), SemiInfClass::new(-(&(&qinv * &x_pow(1)) * &t_sym()), x_pow(1)));
    }

    #[test]
    fn q_equals_one_displays() {
        let plus = pieri_chevalley_matrix(true).specialize_q1().unwrap();
        let c = geom(0);
        assert_eq!(plus.row(0), SemiInfClass::new(&c * &x_pow(1), &c * &x_pow(-1)));
        assert_eq!(plus.row(1), SemiInfClass::new(&c * &(&x_pow(1) * &t_sym()), &c * &x_pow(-1)));
        let minus = pieri_chevalley_matrix(false).specialize_q1().unwrap();
        assert_eq!(minus, plus.inverse().unwrap());
        assert_eq!(minus.row(1), SemiInfClass::new(-(&x_pow(1) * &t_sym()), x_pow(1)));
    }

    #[test]
    fn pole_at_q_one() {
        let f = RatFunc::from_poly(LaurentPoly::one(3) - LaurentPoly::monomial(Weight::new(&[1, 0, 0]))).inv().unwrap();
        assert!(matches!(specialize_coeff_q1(&f), Err(Error::Pole(_))));
    }

    #[test]
    fn h_operator_values() {
        assert_eq!(h_operator_si(&SemiInfClass::base_e()), SemiInfClass::base_s());
        let expect = SemiInfClass::new(&e_alpha() * &t_sym(), &one() - &e_alpha());
        assert_eq!(h_operator_si(&SemiInfClass::base_s()), expect);
        assert_eq!(h_operator_generic(&SemiInfClass::base_e()), SemiInfClass::base_s());
        let v = SemiInfClass::new(x_pow(3), &one() - &t_sym());
        assert_eq!(h_operator_si(&v.translate(2)), h_operator_si(&v).translate(2));
    }

    #[test]
    fn triangular_modulo_translation() {
        let m = pieri_chevalley_matrix(true);
        let at_t0 = |c: &QShiftCoeff| {
            let drop = |p: &LaurentPoly| {
                assert!(p.terms().iter().all(|(w, _)| w[1] >= 0));
                LaurentPoly::from_terms(p.terms().iter().filter(|(w, _)| w[1] == 0).cloned())
            };
            let mut den = LaurentPoly::one(3);
            for (f, e) in c.denominator_factors() {
                den = &den * &drop(f).pow(*e);
            }
            RatFunc::new(drop(c.numerator()), &den).unwrap()
        };
        assert!(at_t0(&m.rows[1][0]).is_zero());
        assert_eq!(at_t0(&m.rows[0][0]), x_pow(1));
        assert_eq!(at_t0(&m.rows[1][1]), x_pow(-1));
    }

    #[test]
    fn gr_comparison_small_m() {
        let d = sl2();
        let gr = Grassmannian::new(&d);
        for m in 1..=2 {
            for c in compare_with_gr(&gr, m, 1, 6).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn display_uses_symbols() {
        let v = SemiInfClass::new(&e_alpha() * &t_sym(), &one() - &e_alpha());
        assert_eq!(v.to_string(), "(t*x^2)*[O(e)] + (1 - x^2)*[O(s)]");
    }
}
