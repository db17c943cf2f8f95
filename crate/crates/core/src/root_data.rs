//! Finite root data for the supported simply connected simple types.
//!
//! Weights are stored in the fundamental-weight basis and coweights in the
//! simple-coroot basis, so the pairing `<β, λ>` is a plain dot product and
//! the Cartan matrix `a_ij = <α_i^∨, α_j>` only enters when converting roots.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::WeylGroup;

pub const MAX_RANK: usize = 3;

macro_rules! lattice_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name {
            rank: u8,
            c: [i32; MAX_RANK],
        }

        impl $name {
            /// Builds a vector from its coordinates. Panics above `MAX_RANK`.
            pub fn new(coords: &[i32]) -> Self {
                assert!(coords.len() <= MAX_RANK, "rank {} exceeds {}", coords.len(), MAX_RANK);
                let mut c = [0; MAX_RANK];
                c[..coords.len()].copy_from_slice(coords);
                Self { rank: coords.len() as u8, c }
            }

            pub fn zero(rank: usize) -> Self {
                Self { rank: rank as u8, c: [0; MAX_RANK] }
            }

            /// The `i`-th basis vector.
            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = Self::zero(rank);
                v.c[i] = 1;
                v
            }

            pub fn rank(&self) -> usize {
                self.rank as usize
            }

            pub fn coords(&self) -> &[i32] {
                &self.c[..self.rank as usize]
            }

            pub fn is_zero(&self) -> bool {
                self.c.iter().all(|&x| x == 0)
            }

            pub fn max_abs(&self) -> i32 {
                self.coords().iter().map(|x| x.abs()).max().unwrap_or(0)
            }

            pub(crate) fn from_array(rank: usize, c: [i32; MAX_RANK]) -> Self {
                Self { rank: rank as u8, c }
            }

            pub(crate) fn raw(&self) -> &[i32; MAX_RANK] {
                &self.c
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                self += rhs;
                self
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                debug_assert_eq!(self.rank, rhs.rank);
                for k in 0..MAX_RANK {
                    self.c[k] += rhs.c[k];
                }
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(mut self, rhs: Self) -> Self {
                self -= rhs;
                self
            }
        }

        impl SubAssign for $name {
            fn sub_assign(&mut self, rhs: Self) {
                debug_assert_eq!(self.rank, rhs.rank);
                for k in 0..MAX_RANK {
                    self.c[k] -= rhs.c[k];
                }
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(mut self) -> Self {
                for x in self.c.iter_mut() {
                    *x = -*x;
                }
                self
            }
        }

        impl Mul<$name> for i32 {
            type Output = $name;
            fn mul(self, mut rhs: $name) -> $name {
                for x in rhs.c.iter_mut() {
                    *x *= self;
                }
                rhs
            }
        }

        impl Index<usize> for $name {
            type Output = i32;
            fn index(&self, i: usize) -> &i32 {
                &self.coords()[i]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (k, x) in self.coords().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self)
            }
        }
    };
}

lattice_vector!(
    /// An element of the weight lattice `P`, in fundamental-weight coordinates.
    Weight
);

lattice_vector!(
    /// An element of the coroot lattice `Q^∨`, in simple-coroot coordinates.
    Coweight
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    G,
}

/// A Cartan type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub const SUPPORTED: [&'static str; 8] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];

    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => (1..=3).contains(&rank),
            Series::B | Series::C => (2..=3).contains(&rank),
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::UnsupportedType(format!("{:?}{}", series, rank)))
        }
    }

    /// Bourbaki-labelled Cartan matrix `a_ij = <α_i^∨, α_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let r = self.rank;
        let mut a = vec![vec![0; r]; r];
        for i in 0..r {
            a[i][i] = 2;
            if i + 1 < r {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        match self.series {
            Series::A => {}
            // α_r short
            Series::B => a[r - 1][r - 2] = -2,
            // α_r long
            Series::C => a[r - 2][r - 1] = -2,
            // α_2 short
            Series::G => a[1][0] = -3,
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = t.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(series, rank).map_err(|_| bad())
    }
}

/// A positive root together with its coroot.
#[derive(Clone, Debug)]
pub struct Root {
    pub weight: Weight,
    /// Coordinates in the basis of simple roots.
    pub simple_coords: Vec<i32>,
    pub coroot: Coweight,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.simple_coords.iter().sum()
    }
}

/// Finite root datum: Cartan matrix, roots and coroots, `ϑ`, `ρ`, and the Weyl group.
#[derive(Debug)]
pub struct RootDatum {
    ty: CartanType,
    cartan: Vec<Vec<i32>>,
    simple_roots: Vec<Weight>,
    positive: Vec<Root>,
    // +(k+1) for the k-th positive root, -(k+1) for its negative
    root_lookup: HashMap<Weight, isize>,
    theta: usize,
    rho: Weight,
    two_rho_cov: Coweight,
    weyl: WeylGroup,
}

impl RootDatum {
    pub fn new(ty: CartanType) -> Self {
        let cartan = ty.cartan_matrix();
        let r = ty.rank;
        let simple_roots: Vec<Weight> = (0..r)
            .map(|j| Weight::new(&(0..r).map(|i| cartan[i][j]).collect::<Vec<_>>()))
            .collect();

        // Closure of the simple (root, coroot) pairs under simple reflections.
        let mut seen: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((n, b)) = queue.pop_front() {
            for j in 0..r {
                let pair_root: i32 = (0..r).map(|k| n[k] * cartan[j][k]).sum();
                let pair_cov: i32 = (0..r).map(|k| b[k] * cartan[k][j]).sum();
                let mut n2 = n.clone();
                n2[j] -= pair_root;
                let mut b2 = b.clone();
                b2[j] -= pair_cov;
                if !seen.contains_key(&n2) {
                    seen.insert(n2.clone(), b2.clone());
                    queue.push_back((n2, b2));
                }
            }
        }
        let mut positive: Vec<Root> = seen
            .into_iter()
            .filter(|(n, _)| n.iter().all(|&x| x >= 0))
            .map(|(n, b)| {
                let w: Vec<i32> = (0..r).map(|i| (0..r).map(|k| cartan[i][k] * n[k]).sum()).collect();
                Root { weight: Weight::new(&w), simple_coords: n, coroot: Coweight::new(&b) }
            })
            .collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then(a.simple_coords.cmp(&b.simple_coords)));

        let mut root_lookup = HashMap::new();
        for (k, root) in positive.iter().enumerate() {
            root_lookup.insert(root.weight, k as isize + 1);
            root_lookup.insert(-root.weight, -(k as isize) - 1);
        }
        let theta = (0..positive.len())
            .find(|&k| simple_roots.iter().all(|a| !root_lookup.contains_key(&(positive[k].weight + *a))))
            .expect("a highest root exists");
        let rho = Weight::new(&vec![1; r]);
        let two_rho_cov = positive.iter().fold(Coweight::zero(r), |acc, root| acc + root.coroot);
        let pairs: Vec<(Weight, Coweight)> = positive.iter().map(|r| (r.weight, r.coroot)).collect();
        let weyl = WeylGroup::new(&cartan, &pairs, theta);
        RootDatum {
            ty,
            cartan,
            simple_roots,
            positive,
            root_lookup,
            theta,
            rho,
            two_rho_cov,
            weyl,
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(Self::new(tag.parse()?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight::unit(self.rank(), i)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::unit(self.rank(), i)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Highest root `ϑ`.
    pub fn theta(&self) -> Weight {
        self.positive[self.theta].weight
    }

    /// Coroot `ϑ^∨` of the highest root.
    pub fn theta_coroot(&self) -> Coweight {
        self.positive[self.theta].coroot
    }

    pub fn rho(&self) -> Weight {
        self.rho
    }

    /// Sum of positive coroots, `2ρ^∨`.
    pub fn two_rho_coroot(&self) -> Coweight {
        self.two_rho_cov
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// `Some(true)` for a positive root, `Some(false)` for a negative one.
    pub fn root_sign(&self, lambda: &Weight) -> Option<bool> {
        self.root_lookup.get(lambda).map(|&k| k > 0)
    }

    pub fn is_root(&self, lambda: &Weight) -> bool {
        self.root_lookup.contains_key(lambda)
    }

    /// Index of the positive root `±λ`, if `λ` is a root.
    pub fn positive_root_index(&self, lambda: &Weight) -> Option<usize> {
        self.root_lookup.get(lambda).map(|&k| k.unsigned_abs() - 1)
    }

    fn check_rank(&self, found: usize) -> Result<()> {
        if found == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank(), found })
        }
    }

    /// The natural pairing `<β, λ>` between `Q^∨` and `P`.
    pub fn pairing(&self, beta: &Coweight, lambda: &Weight) -> Result<i64> {
        self.check_rank(beta.rank())?;
        self.check_rank(lambda.rank())?;
        Ok(pair(beta, lambda))
    }

    /// `⟨β, α_i⟩`.
    pub fn pair_simple(&self, beta: &Coweight, i: usize) -> i32 {
        pair(beta, &self.simple_roots[i]) as i32
    }

    /// `Q^∨_<`: strictly antidominant coweights.
    pub fn is_strictly_antidominant(&self, beta: &Coweight) -> bool {
        (0..self.rank()).all(|i| self.pair_simple(beta, i) < 0)
    }

    /// `Q^∨_+`: non-negative combinations of simple coroots.
    pub fn is_nonnegative(beta: &Coweight) -> bool {
        beta.coords().iter().all(|&b| b >= 0)
    }

    /// Deep translation `-n·2ρ^∨`, always strictly antidominant for `n ≥ 1`.
    pub fn deep_coweight(&self, n: u32) -> Coweight {
        -(n as i32 * self.two_rho_cov)
    }
}

pub(crate) fn pair(beta: &Coweight, lambda: &Weight) -> i64 {
    beta.c.iter().zip(lambda.c.iter()).map(|(&b, &l)| b as i64 * l as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(tag: &str) -> RootDatum {
        RootDatum::from_tag(tag).unwrap()
    }

    #[test]
    fn root_counts_match_classification() {
        for (tag, n) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("C2", 4), ("B3", 9), ("C3", 9), ("G2", 6)] {
            assert_eq!(datum(tag).positive_roots().len(), n, "{tag}");
        }
    }

    #[test]
    fn cartan_shape() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            for (i, row) in d.cartan().iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(a, 2);
                    } else {
                        assert!(a <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let sum = d.positive_roots().iter().fold(Weight::zero(d.rank()), |a, r| a + r.weight);
            assert_eq!(sum, 2 * d.rho(), "{tag}");
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = datum("A2");
        let a1 = a2.simple_root(0);
        let a2r = a2.simple_root(1);
        let c1 = a2.simple_coroot(0);
        assert_eq!(a2.pairing(&c1, &a1).unwrap(), 2);
        assert_eq!(a2.pairing(&c1, &a2r).unwrap(), -1);
        for i in 0..2 {
            for j in 0..2 {
                let v = a2.pairing(&a2.simple_coroot(i), &a2.fundamental_weight(j)).unwrap();
                assert_eq!(v, i64::from(i == j));
            }
        }
        assert!(matches!(
            a2.pairing(&Coweight::new(&[1]), &a1),
            Err(Error::RankMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn g2_theta_pairing_with_rho() {
        // ϑ^∨ is the highest short coroot, so <ϑ^∨, ρ> = h^∨ - 1 = 3.
        let g2 = datum("G2");
        assert_eq!(g2.positive_roots()[g2.theta].simple_coords, vec![2, 3]);
        assert_eq!(g2.pairing(&g2.theta_coroot(), &g2.theta()).unwrap(), 2);
        assert_eq!(g2.pairing(&g2.theta_coroot(), &g2.rho()).unwrap(), 3);
    }

    #[test]
    fn theta_is_unique_maximal_root() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            let maximal: Vec<_> = d
                .positive_roots()
                .iter()
                .filter(|r| (0..d.rank()).all(|i| !d.is_root(&(r.weight + d.simple_root(i)))))
                .collect();
            assert_eq!(maximal.len(), 1, "{tag}");
            assert_eq!(maximal[0].weight, d.theta());
            let max_h = d.positive_roots().iter().map(Root::height).max().unwrap();
            assert_eq!(maximal[0].height(), max_h);
        }
    }

    #[test]
    fn coroots_pair_to_two() {
        for tag in CartanType::SUPPORTED {
            let d = datum(tag);
            for r in d.positive_roots() {
                assert_eq!(pair(&r.coroot, &r.weight), 2);
            }
        }
    }

    #[test]
    fn parse_tags() {
        assert_eq!("a2".parse::<CartanType>().unwrap().to_string(), "A2");
        assert!("D4".parse::<CartanType>().is_err());
        assert!("A4".parse::<CartanType>().is_err());
        assert!("G3".parse::<CartanType>().is_err());
    }
}
