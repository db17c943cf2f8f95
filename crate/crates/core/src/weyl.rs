//! Finite and affine Weyl groups.
//!
//! Nodes of the affine Dynkin diagram are numbered `0..=r`: node `0` is the
//! affine node and node `k ≥ 1` is the finite node whose simple root is
//! `RootDatum::simple_root(k - 1)`. An affine element `u·t_β` is stored as the
//! pair `(u, β)`; translations act trivially on `P` (level zero).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::root_data::{pair, Coweight, RootDatum, Weight, MAX_RANK};

type Mat = [[i32; MAX_RANK]; MAX_RANK];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..MAX_RANK {
        for j in 0..MAX_RANK {
            m[i][j] = (0..MAX_RANK).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

fn mat_apply(m: &Mat, v: &[i32; MAX_RANK]) -> [i32; MAX_RANK] {
    let mut out = [0; MAX_RANK];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..MAX_RANK).map(|k| m[i][k] * v[k]).sum();
    }
    out
}

fn identity_mat(rank: usize) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in m.iter_mut().enumerate().take(rank) {
        row[i] = 1;
    }
    m
}

/// An element of the finite Weyl group, as an index into its `WeylGroup`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiniteWeylElt(u8);

impl FiniteWeylElt {
    pub const IDENTITY: FiniteWeylElt = FiniteWeylElt(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Multiplication table and actions of a finite Weyl group, enumerated once.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    mats: Vec<Mat>,
    cow_mats: Vec<Mat>,
    lengths: Vec<u8>,
    words: Vec<Vec<usize>>,
    mult: Vec<u8>,
    inverse: Vec<u8>,
    gens: Vec<u8>,
    lookup: HashMap<Mat, u8>,
    // negative[u * npos + k]: u sends the k-th positive root to a negative root
    negative: Vec<bool>,
    npos: usize,
    longest: u8,
    s_theta: u8,
}

impl WeylGroup {
    /// `roots` lists the positive roots with their coroots; `theta` indexes the highest one.
    pub(crate) fn new(cartan: &[Vec<i32>], roots: &[(Weight, Coweight)], theta: usize) -> Self {
        let rank = cartan.len();
        let gen_mats: Vec<Mat> = (0..rank)
            .map(|i| {
                let mut m = identity_mat(rank);
                for row in 0..rank {
                    // α_i in fundamental-weight coordinates is column i of the Cartan matrix
                    m[row][i] -= cartan[row][i];
                }
                m
            })
            .collect();

        let mut mats = vec![identity_mat(rank)];
        let mut lengths = vec![0u8];
        let mut lookup = HashMap::new();
        lookup.insert(mats[0], 0u8);
        let mut head = 0;
        while head < mats.len() {
            let g = mats[head];
            for s in &gen_mats {
                let h = mat_mul(s, &g);
                if !lookup.contains_key(&h) {
                    lookup.insert(h, mats.len() as u8);
                    mats.push(h);
                    lengths.push(lengths[head] + 1);
                }
            }
            head += 1;
        }
        let n = mats.len();
        let mut mult = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = lookup[&mat_mul(&mats[a], &mats[b])];
            }
        }
        let inverse: Vec<u8> = (0..n)
            .map(|a| (0..n).find(|&b| mult[a * n + b] == 0).unwrap() as u8)
            .collect();
        let gens: Vec<u8> = gen_mats.iter().map(|m| lookup[m]).collect();
        let cow_mats: Vec<Mat> = (0..n)
            .map(|a| {
                let m = &mats[inverse[a] as usize];
                let mut t = [[0; MAX_RANK]; MAX_RANK];
                for i in 0..MAX_RANK {
                    for j in 0..MAX_RANK {
                        t[i][j] = m[j][i];
                    }
                }
                t
            })
            .collect();

        let positive: HashMap<Weight, usize> = roots.iter().enumerate().map(|(k, r)| (r.0, k)).collect();
        let npos = roots.len();
        let mut negative = vec![false; n * npos];
        for a in 0..n {
            for (k, (w, _)) in roots.iter().enumerate() {
                let img = Weight::from_array(rank, mat_apply(&mats[a], w.raw()));
                negative[a * npos + k] = !positive.contains_key(&img);
            }
        }

        // Lexicographically least reduced words, by peeling the least left descent.
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| lengths[a]);
        for &a in &order {
            if lengths[a] == 0 {
                continue;
            }
            let (i, rest) = (0..rank)
                .map(|i| (i, mult[gens[i] as usize * n + a] as usize))
                .find(|&(_, b)| lengths[b] < lengths[a])
                .unwrap();
            let mut w = vec![i + 1];
            w.extend_from_slice(&words[rest]);
            words[a] = w;
        }
        let longest = (0..n).max_by_key(|&a| lengths[a]).unwrap() as u8;

        let (tw, tc) = roots[theta];
        let mut refl = identity_mat(rank);
        for col in 0..rank {
            for row in 0..rank {
                refl[row][col] -= tc.raw()[col] * tw.raw()[row];
            }
        }
        let s_theta = lookup[&refl];

        WeylGroup {
            rank,
            mats,
            cow_mats,
            lengths,
            words,
            mult,
            inverse,
            gens,
            lookup,
            negative,
            npos,
            longest,
            s_theta,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = FiniteWeylElt> {
        (0..self.order() as u8).map(FiniteWeylElt)
    }

    /// The simple reflection at finite node `k ∈ 1..=r`.
    pub fn simple(&self, k: usize) -> FiniteWeylElt {
        FiniteWeylElt(self.gens[k - 1])
    }

    pub fn longest(&self) -> FiniteWeylElt {
        FiniteWeylElt(self.longest)
    }

    /// The reflection in the highest root.
    pub fn s_theta(&self) -> FiniteWeylElt {
        FiniteWeylElt(self.s_theta)
    }

    pub fn mul(&self, a: FiniteWeylElt, b: FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt(self.mult[a.index() * self.order() + b.index()])
    }

    pub fn inv(&self, a: FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt(self.inverse[a.index()])
    }

    pub fn length(&self, a: FiniteWeylElt) -> usize {
        self.lengths[a.index()] as usize
    }

    /// Lexicographically least reduced word, as finite nodes `1..=r`.
    pub fn word(&self, a: FiniteWeylElt) -> &[usize] {
        &self.words[a.index()]
    }

    /// Product of simple reflections at the given finite nodes.
    pub fn from_word(&self, word: &[usize]) -> Result<FiniteWeylElt> {
        let mut acc = FiniteWeylElt::IDENTITY;
        for &k in word {
            if k == 0 || k > self.rank {
                return Err(Error::BadIndex { index: k, rank: self.rank });
            }
            acc = self.mul(acc, self.simple(k));
        }
        Ok(acc)
    }

    pub fn from_matrix(&self, m: &[[i32; MAX_RANK]; MAX_RANK]) -> Option<FiniteWeylElt> {
        self.lookup.get(m).map(|&a| FiniteWeylElt(a))
    }

    pub fn matrix(&self, a: FiniteWeylElt) -> &[[i32; MAX_RANK]; MAX_RANK] {
        &self.mats[a.index()]
    }

    pub fn act_weight(&self, a: FiniteWeylElt, lambda: &Weight) -> Weight {
        Weight::from_array(self.rank, mat_apply(&self.mats[a.index()], lambda.raw()))
    }

    pub fn act_coweight(&self, a: FiniteWeylElt, beta: &Coweight) -> Coweight {
        Coweight::from_array(self.rank, mat_apply(&self.cow_mats[a.index()], beta.raw()))
    }

    /// Whether `a` sends the `k`-th positive root to a negative root.
    pub fn sends_negative(&self, a: FiniteWeylElt, k: usize) -> bool {
        self.negative[a.index() * self.npos + k]
    }
}

/// An element `u·t_β` of the affine Weyl group `W ⋉ Q^∨`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineWeylElt {
    pub u: FiniteWeylElt,
    pub beta: Coweight,
}

impl AffineWeylElt {
    pub fn new(u: FiniteWeylElt, beta: Coweight) -> Self {
        Self { u, beta }
    }

    pub fn identity(rank: usize) -> Self {
        Self { u: FiniteWeylElt::IDENTITY, beta: Coweight::zero(rank) }
    }

    pub fn translation(beta: Coweight) -> Self {
        Self { u: FiniteWeylElt::IDENTITY, beta }
    }

    pub fn finite(u: FiniteWeylElt, rank: usize) -> Self {
        Self { u, beta: Coweight::zero(rank) }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_identity() && self.beta.is_zero()
    }
}

/// Affine Weyl group arithmetic, attached to the root datum.
impl RootDatum {
    fn check_node(&self, node: usize) -> Result<()> {
        if node <= self.rank() {
            Ok(())
        } else {
            Err(Error::BadIndex { index: node, rank: self.rank() })
        }
    }

    /// The simple reflection `s_i`, `i ∈ 0..=r`; `s_0 = s_ϑ t_{-ϑ^∨}`.
    pub fn simple_reflection(&self, node: usize) -> Result<AffineWeylElt> {
        self.check_node(node)?;
        Ok(if node == 0 {
            AffineWeylElt::new(self.weyl().s_theta(), -self.theta_coroot())
        } else {
            AffineWeylElt::finite(self.weyl().simple(node), self.rank())
        })
    }

    /// Finite part of `s_i` as it acts on `P`: `s_ϑ` for the affine node.
    pub fn node_finite_part(&self, node: usize) -> FiniteWeylElt {
        if node == 0 {
            self.weyl().s_theta()
        } else {
            self.weyl().simple(node)
        }
    }

    /// Root `α_i` attached to a node, with `α_0` acting on `P` as `-ϑ`.
    pub fn node_root(&self, node: usize) -> Weight {
        if node == 0 {
            -self.theta()
        } else {
            self.simple_root(node - 1)
        }
    }

    pub fn aff_mul(&self, x: &AffineWeylElt, y: &AffineWeylElt) -> AffineWeylElt {
        let w = self.weyl();
        let beta = w.act_coweight(w.inv(y.u), &x.beta) + y.beta;
        AffineWeylElt::new(w.mul(x.u, y.u), beta)
    }

    pub fn aff_inv(&self, x: &AffineWeylElt) -> AffineWeylElt {
        let w = self.weyl();
        AffineWeylElt::new(w.inv(x.u), -w.act_coweight(x.u, &x.beta))
    }

    /// Product of simple reflections along a word of nodes.
    pub fn from_node_word(&self, word: &[usize]) -> Result<AffineWeylElt> {
        let mut acc = AffineWeylElt::identity(self.rank());
        for &k in word {
            acc = self.aff_mul(&acc, &self.simple_reflection(k)?);
        }
        Ok(acc)
    }

    /// Length `ℓ(u t_β) = Σ_{α>0} |<β, α> + χ(uα < 0)|`.
    pub fn aff_length(&self, x: &AffineWeylElt) -> usize {
        let w = self.weyl();
        self.positive_roots()
            .iter()
            .enumerate()
            .map(|(k, root)| {
                let p = pair(&x.beta, &root.weight) + i64::from(w.sends_negative(x.u, k));
                p.unsigned_abs() as usize
            })
            .sum()
    }

    pub fn is_left_descent(&self, x: &AffineWeylElt, node: usize) -> bool {
        let s = self.simple_reflection(node).expect("valid node");
        self.aff_length(&self.aff_mul(&s, x)) < self.aff_length(x)
    }

    pub fn is_right_descent(&self, x: &AffineWeylElt, node: usize) -> bool {
        let s = self.simple_reflection(node).expect("valid node");
        self.aff_length(&self.aff_mul(x, &s)) < self.aff_length(x)
    }

    /// Reduced word `[i_1, …, i_k]` with `x = s_{i_1}⋯s_{i_k}`, peeling the least left descent.
    pub fn reduced_word(&self, x: &AffineWeylElt) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = *x;
        let mut len = self.aff_length(&cur);
        while len > 0 {
            let (node, next) = (0..=self.rank())
                .map(|k| (k, self.aff_mul(&self.simple_reflection(k).unwrap(), &cur)))
                .find(|(_, y)| self.aff_length(y) < len)
                .expect("a nontrivial element has a left descent");
            word.push(node);
            cur = next;
            len -= 1;
        }
        word
    }

    /// Membership in `W_af^-`: no finite right descent.
    pub fn is_min_coset_rep(&self, x: &AffineWeylElt) -> bool {
        (1..=self.rank()).all(|k| !self.is_right_descent(x, k))
    }

    /// The minimal-length element of the coset `xW`.
    pub fn min_coset_rep(&self, x: &AffineWeylElt) -> AffineWeylElt {
        let mut cur = *x;
        'outer: loop {
            for k in 1..=self.rank() {
                if self.is_right_descent(&cur, k) {
                    cur = self.aff_mul(&cur, &self.simple_reflection(k).unwrap());
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Bruhat order, by the lifting property along a reduced word of `y`.
    ///
    /// Fails with a resource error when `ℓ(y)` exceeds `max_length`.
    pub fn bruhat_leq(&self, x: &AffineWeylElt, y: &AffineWeylElt, max_length: usize) -> Result<bool> {
        let ly = self.aff_length(y);
        if ly > max_length {
            return Err(Error::Resource(format!("Bruhat comparison at length {ly} exceeds limit {max_length}")));
        }
        let mut x = *x;
        let mut lx = self.aff_length(&x);
        for node in self.reduced_word(y) {
            if lx == 0 {
                return Ok(true);
            }
            let s = self.simple_reflection(node).unwrap();
            let sx = self.aff_mul(&s, &x);
            let lsx = self.aff_length(&sx);
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
        }
        Ok(lx == 0)
    }

    /// Semi-infinite order: compare `x t_{β_N} ≤ y t_{β_N}` with `β_N = -N·2ρ^∨`
    /// until two consecutive depths agree.
    pub fn semi_infinite_leq(&self, x: &AffineWeylElt, y: &AffineWeylElt, start: u32, cap: u32) -> Result<bool> {
        let at = |n: u32| -> Result<bool> {
            let t = AffineWeylElt::translation(self.deep_coweight(n));
            let xt = self.aff_mul(x, &t);
            let yt = self.aff_mul(y, &t);
            self.bruhat_leq(&xt, &yt, usize::MAX)
        };
        let mut n = start.max(1);
        let mut prev = at(n)?;
        while n < cap {
            n += 1;
            let next = at(n)?;
            if next == prev {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::NotStabilized { cap })
    }

    /// Canonical text: the lexicographically least word of `u` followed by `t[β]`.
    pub fn format_element(&self, x: &AffineWeylElt) -> String {
        let mut parts: Vec<String> = self.weyl().word(x.u).iter().map(|k| format!("s{k}")).collect();
        if !x.beta.is_zero() {
            parts.push(format!("t{}", x.beta));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn format_finite(&self, u: FiniteWeylElt) -> String {
        self.format_element(&AffineWeylElt::finite(u, self.rank()))
    }

    /// Parses `"s1 s2 t[-1,0]"`, `"e"`, `"s0"`; factors are multiplied left to right.
    pub fn parse_element(&self, text: &str) -> Result<AffineWeylElt> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = AffineWeylElt::identity(self.rank());
        let mut seen_any = false;
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        loop {
            while pos < bytes.len() && (bytes[pos] as char).is_whitespace() {
                pos += 1;
            }
            if pos >= bytes.len() {
                break;
            }
            let start = pos;
            match bytes[pos] {
                b'e' => {
                    pos += 1;
                }
                b's' => {
                    pos += 1;
                    let d0 = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if d0 == pos {
                        return Err(err(pos, "expected a node index after `s`"));
                    }
                    let node: usize = text[d0..pos].parse().map_err(|_| err(d0, "bad node index"))?;
                    let s = self.simple_reflection(node).map_err(|_| {
                        err(d0, &format!("node {node} is outside 0..={}", self.rank()))
                    })?;
                    acc = self.aff_mul(&acc, &s);
                }
                b't' => {
                    pos += 1;
                    if pos >= bytes.len() || bytes[pos] != b'[' {
                        return Err(err(pos, "expected `[` after `t`"));
                    }
                    let close = text[pos..].find(']').ok_or_else(|| err(pos, "unclosed `[`"))? + pos;
                    let mut coords = Vec::new();
                    let mut off = pos + 1;
                    for piece in text[pos + 1..close].split(',') {
                        let v: i32 = piece.trim().parse().map_err(|_| err(off, "expected an integer"))?;
                        coords.push(v);
                        off += piece.len() + 1;
                    }
                    if coords.len() != self.rank() {
                        return Err(err(pos, &format!("expected {} coordinates, found {}", self.rank(), coords.len())));
                    }
                    acc = self.aff_mul(&acc, &AffineWeylElt::translation(Coweight::new(&coords)));
                    pos = close + 1;
                }
                _ => return Err(err(start, "expected `e`, `s<k>` or `t[...]`")),
            }
            if pos < bytes.len() && !(bytes[pos] as char).is_whitespace() {
                return Err(err(pos, "expected whitespace between factors"));
            }
            seen_any = true;
        }
        if !seen_any {
            return Err(err(0, "empty element"));
        }
        Ok(acc)
    }
}

impl fmt::Display for FiniteWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::CartanType;
    use std::collections::{HashSet, VecDeque};

    fn datum(tag: &str) -> RootDatum {
        RootDatum::from_tag(tag).unwrap()
    }

    fn bfs_lengths(d: &RootDatum, radius: usize) -> HashMap<AffineWeylElt, usize> {
        let mut dist = HashMap::new();
        let id = AffineWeylElt::identity(d.rank());
        dist.insert(id, 0);
        let mut q = VecDeque::from([id]);
        while let Some(x) = q.pop_front() {
            let dx = dist[&x];
            if dx == radius {
                continue;
            }
            for k in 0..=d.rank() {
                let y = d.aff_mul(&x, &d.simple_reflection(k).unwrap());
                dist.entry(y).or_insert_with(|| {
                    q.push_back(y);
                    dx + 1
                });
            }
        }
        dist
    }

    #[test]
    fn group_orders() {
        for (tag, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("C2", 8), ("B3", 48), ("C3", 48), ("G2", 12)] {
            let d = datum(tag);
            assert_eq!(d.weyl().order(), n, "{tag}");
            assert_eq!(d.weyl().length(d.weyl().longest()), d.positive_roots().len());
        }
    }

    #[test]
    fn words_are_reduced_and_lex_least() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let w = d.weyl();
            for u in w.elements() {
                let word = w.word(u);
                assert_eq!(word.len(), w.length(u));
                assert_eq!(w.from_word(word).unwrap(), u);
            }
        }
        let a2 = datum("A2");
        let w0 = a2.weyl().longest();
        assert_eq!(a2.weyl().word(w0), &[1, 2, 1]);
    }

    #[test]
    fn faithful_reflection_representation() {
        // distinct elements act differently on the fundamental weights
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let w = d.weyl();
            let images: HashSet<Vec<Weight>> = w
                .elements()
                .map(|u| (0..d.rank()).map(|i| w.act_weight(u, &d.fundamental_weight(i))).collect())
                .collect();
            assert_eq!(images.len(), w.order());
        }
    }

    #[test]
    fn finite_action_examples() {
        let a1 = datum("A1");
        let s = a1.weyl().simple(1);
        assert_eq!(a1.weyl().act_weight(s, &Weight::new(&[1])), Weight::new(&[-1]));
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            assert_eq!(d.weyl().act_weight(d.weyl().longest(), &d.rho()), -d.rho());
        }
        let a2 = datum("A2");
        let w = a2.weyl();
        let lhs = w.from_word(&[1, 2, 1]).unwrap();
        let rhs = w.from_word(&[2, 1, 2]).unwrap();
        let a = a2.simple_root(0);
        assert_eq!(w.act_weight(lhs, &a), w.act_weight(rhs, &a));
        assert_eq!(w.act_weight(lhs, &a), -a2.simple_root(1));
    }

    #[test]
    fn contragredient_action_preserves_pairing() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let w = d.weyl();
            let beta = Coweight::new(&[1, -2, 3][..d.rank()]);
            let lam = Weight::new(&[2, 1, -1][..d.rank()]);
            for u in w.elements() {
                assert_eq!(pair(&w.act_coweight(u, &beta), &w.act_weight(u, &lam)), pair(&beta, &lam));
            }
        }
    }

    #[test]
    fn s0_and_theta_translation() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let s0 = d.simple_reflection(0).unwrap();
            assert_eq!(d.aff_mul(&s0, &s0), AffineWeylElt::identity(d.rank()));
            let st = AffineWeylElt::finite(d.weyl().s_theta(), d.rank());
            assert_eq!(d.aff_mul(&st, &s0), AffineWeylElt::translation(-d.theta_coroot()));
            assert_eq!(d.aff_length(&s0), 1);
        }
    }

    #[test]
    fn closed_form_length_matches_bfs() {
        for tag in ["A1", "A2", "B2", "C2", "G2"] {
            let d = datum(tag);
            let radius = if tag == "G2" { 9 } else { 8 };
            for (x, l) in bfs_lengths(&d, radius) {
                assert_eq!(d.aff_length(&x), l, "{tag} {}", d.format_element(&x));
            }
        }
    }

    #[test]
    fn sl2_translation_length_and_word() {
        let d = datum("A1");
        let t = AffineWeylElt::translation(Coweight::new(&[-1]));
        assert_eq!(d.aff_length(&t), 2);
        assert_eq!(d.reduced_word(&t), vec![1, 0]);
        assert!(d.reduced_word(&AffineWeylElt::identity(1)).is_empty());
    }

    #[test]
    fn reduced_words_multiply_back() {
        let d = datum("A2");
        let t = AffineWeylElt::translation(Coweight::new(&[-1, -1]));
        let w = d.reduced_word(&t);
        assert_eq!(w.len(), d.aff_length(&t));
        assert_eq!(d.from_node_word(&w).unwrap(), t);
    }

    #[test]
    fn antidominant_translations_are_min_reps() {
        for tag in ["A1", "A2", "B2", "G2"] {
            let d = datum(tag);
            let w0 = AffineWeylElt::finite(d.weyl().longest(), d.rank());
            for n in 1..3 {
                let beta = d.deep_coweight(n) + Coweight::unit(d.rank(), 0);
                if !d.is_strictly_antidominant(&beta) {
                    continue;
                }
                let t = AffineWeylElt::translation(beta);
                assert!(d.is_min_coset_rep(&t));
                let w0t = d.aff_mul(&w0, &t);
                assert_eq!(d.aff_length(&t), d.aff_length(&w0) + d.aff_length(&w0t));
            }
        }
        let d = datum("A2");
        assert!(d.is_min_coset_rep(&AffineWeylElt::identity(2)));
        assert!(!d.is_min_coset_rep(&d.simple_reflection(1).unwrap()));
    }

    #[test]
    fn min_coset_rep_is_in_coset() {
        let d = datum("B2");
        let x = d.parse_element("s1 s0 s2 s1 s0").unwrap();
        let m = d.min_coset_rep(&x);
        assert!(d.is_min_coset_rep(&m));
        let q = d.aff_mul(&d.aff_inv(&m), &x);
        assert!(q.beta.is_zero());
    }

    fn subword_leq(d: &RootDatum, x: &AffineWeylElt, y: &AffineWeylElt) -> bool {
        let word = d.reduced_word(y);
        let gens: Vec<_> = word.iter().map(|&k| d.simple_reflection(k).unwrap()).collect();
        let mut reach = HashSet::from([AffineWeylElt::identity(d.rank())]);
        for g in gens {
            let next: Vec<_> = reach.iter().map(|z| d.aff_mul(z, &g)).collect();
            reach.extend(next);
        }
        reach.contains(x)
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for tag in ["A1", "A2", "B2"] {
            let d = datum(tag);
            let elems: Vec<_> = bfs_lengths(&d, 4).into_keys().collect();
            let ys: Vec<_> = bfs_lengths(&d, 5).into_keys().filter(|y| d.aff_length(y) == 5).take(12).collect();
            for y in &ys {
                for x in &elems {
                    assert_eq!(d.bruhat_leq(x, y, 64).unwrap(), subword_leq(&d, x, y));
                }
            }
        }
        let d = datum("A1");
        let s = d.simple_reflection(1).unwrap();
        let t = AffineWeylElt::translation(Coweight::new(&[-1]));
        assert!(d.bruhat_leq(&s, &t, 10).unwrap());
        assert!(matches!(d.bruhat_leq(&s, &t, 1), Err(Error::Resource(_))));
    }

    #[test]
    fn semi_infinite_reverses_on_finite_part() {
        for tag in ["A1", "A2", "B2"] {
            let d = datum(tag);
            let w = d.weyl();
            for a in w.elements() {
                for b in w.elements() {
                    let (x, y) = (AffineWeylElt::finite(a, d.rank()), AffineWeylElt::finite(b, d.rank()));
                    assert_eq!(
                        d.semi_infinite_leq(&x, &y, 2, 6).unwrap(),
                        d.bruhat_leq(&y, &x, 64).unwrap(),
                        "{tag}"
                    );
                }
            }
        }
    }

    #[test]
    fn semi_infinite_is_right_translation_invariant() {
        let d = datum("A2");
        let xs: Vec<_> = bfs_lengths(&d, 3).into_keys().collect();
        let gamma = AffineWeylElt::translation(Coweight::new(&[1, -2]));
        for x in xs.iter().take(10) {
            for y in xs.iter().take(10) {
                let a = d.semi_infinite_leq(x, y, 2, 6).unwrap();
                let b = d.semi_infinite_leq(&d.aff_mul(x, &gamma), &d.aff_mul(y, &gamma), 2, 6).unwrap();
                assert_eq!(a, b);
            }
        }
        let a1 = datum("A1");
        let x = AffineWeylElt::identity(1);
        assert!(a1.semi_infinite_leq(&x, &x, 2, 6).unwrap());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let a1 = datum("A1");
        assert_eq!(a1.parse_element("e").unwrap(), AffineWeylElt::identity(1));
        let x = a1.parse_element("s1 t[-1]").unwrap();
        assert_eq!(x, AffineWeylElt::new(a1.weyl().simple(1), Coweight::new(&[-1])));
        assert_eq!(a1.format_element(&x), "s1 t[-1]");
        let a2 = datum("A2");
        let y = a2.parse_element("s1 s2 t[-1,-2]").unwrap();
        assert_eq!(y.u, a2.weyl().from_word(&[1, 2]).unwrap());
        assert_eq!(y.beta, Coweight::new(&[-1, -2]));
        for text in ["s0", "s0 s1 s2 s0", "s2 s1 t[3,-1]"] {
            let z = a2.parse_element(text).unwrap();
            assert_eq!(a2.parse_element(&a2.format_element(&z)).unwrap(), z);
        }
        for bad in ["", "s", "s9", "t[1]", "x1", "s1s2", "t[1,a]"] {
            assert!(matches!(a2.parse_element(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn raw_elt() -> impl Strategy<Value = (u8, Vec<i32>)> {
            (any::<u8>(), proptest::collection::vec(-3i32..=3, 3))
        }

        fn build(d: &RootDatum, (u, b): &(u8, Vec<i32>)) -> AffineWeylElt {
            let u = FiniteWeylElt((*u as usize % d.weyl().order()) as u8);
            AffineWeylElt::new(u, Coweight::new(&b[..d.rank()]))
        }

        proptest! {
            #[test]
            fn associative_and_involutive(t in 0usize..8, a in raw_elt(), b in raw_elt(), c in raw_elt()) {
                let d = datum(CartanType::SUPPORTED[t]);
                let (x, y, z) = (build(&d, &a), build(&d, &b), build(&d, &c));
                prop_assert_eq!(d.aff_mul(&d.aff_mul(&x, &y), &z), d.aff_mul(&x, &d.aff_mul(&y, &z)));
                prop_assert!(d.aff_mul(&x, &d.aff_inv(&x)).is_identity());
                prop_assert!(d.aff_length(&d.aff_mul(&x, &y)) <= d.aff_length(&x) + d.aff_length(&y));
                for k in 0..=d.rank() {
                    let s = d.simple_reflection(k).unwrap();
                    prop_assert!(d.aff_mul(&s, &s).is_identity());
                }
            }

            #[test]
            fn reduced_word_multiplies_back(u in 0u8..6, b0 in -3i32..=3, b1 in -3i32..=3) {
                let d = datum("A2");
                let x = AffineWeylElt::new(FiniteWeylElt(u), Coweight::new(&[b0, b1]));
                let w = d.reduced_word(&x);
                prop_assert_eq!(w.len(), d.aff_length(&x));
                prop_assert_eq!(d.from_node_word(&w).unwrap(), x);
            }

            #[test]
            fn length_additive_on_min_reps(u in 0u8..8, b0 in -3i32..=3, b1 in -3i32..=3, g0 in 1i32..3, g1 in 1i32..3) {
                let d = datum("B2");
                let x = d.min_coset_rep(&AffineWeylElt::new(FiniteWeylElt(u), Coweight::new(&[b0, b1])));
                let gamma = d.deep_coweight(1) - Coweight::new(&[g0, g1]);
                prop_assume!(d.is_strictly_antidominant(&gamma));
                let t = AffineWeylElt::translation(gamma);
                prop_assert_eq!(d.aff_length(&d.aff_mul(&x, &t)), d.aff_length(&x) + d.aff_length(&t));
            }
        }
    }
}
