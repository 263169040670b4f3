//! Root systems of compact semisimple types.
//!
//! Conventions: `cartan[i][j] = <alpha_j, H_i>` where `H_i` is the i-th simple
//! coroot. A root-lattice vector with simple-root coordinates `v` has
//! fundamental-weight coordinates `cartan * v`. The invariant form is the
//! symmetrized Cartan matrix `d_i * cartan[i][j]`, normalized per simple factor
//! so that the shortest roots have squared length 2.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleFactor {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl SimpleFactor {
    pub fn rank(&self) -> usize {
        match *self {
            SimpleFactor::A(r) | SimpleFactor::B(r) | SimpleFactor::C(r) | SimpleFactor::D(r) => r,
            SimpleFactor::G2 => 2,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            SimpleFactor::A(r) => r * (r + 1) / 2,
            SimpleFactor::B(r) | SimpleFactor::C(r) => r * r,
            SimpleFactor::D(r) => r * (r - 1),
            SimpleFactor::G2 => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        match *self {
            SimpleFactor::A(r) => fact(r + 1),
            SimpleFactor::B(r) | SimpleFactor::C(r) => (1u64 << r) * fact(r),
            SimpleFactor::D(r) => (1u64 << (r - 1)) * fact(r),
            SimpleFactor::G2 => 12,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            SimpleFactor::A(r) => r >= 1,
            SimpleFactor::B(r) => r >= 2,
            SimpleFactor::C(r) => r >= 3,
            SimpleFactor::D(r) => r >= 4,
            SimpleFactor::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!(
                "{self}: rank out of range (A_r r>=1, B_r r>=2, C_r r>=3, D_r r>=4)"
            )))
        }
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        match *self {
            SimpleFactor::A(_) | SimpleFactor::B(_) | SimpleFactor::C(_) => {
                for i in 0..r.saturating_sub(1) {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                match *self {
                    // alpha_r short
                    SimpleFactor::B(_) => c[r - 1][r - 2] = -2,
                    // alpha_r long
                    SimpleFactor::C(_) => c[r - 2][r - 1] = -2,
                    _ => {}
                }
            }
            SimpleFactor::D(_) => {
                for i in 0..r - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[r - 3][r - 1] = -1;
                c[r - 1][r - 3] = -1;
            }
            SimpleFactor::G2 => {
                // alpha_1 short, alpha_2 long
                c[0][1] = -3;
                c[1][0] = -1;
            }
        }
        c
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SimpleFactor::A(r) => write!(f, "A{r}"),
            SimpleFactor::B(r) => write!(f, "B{r}"),
            SimpleFactor::C(r) => write!(f, "C{r}"),
            SimpleFactor::D(r) => write!(f, "D{r}"),
            SimpleFactor::G2 => write!(f, "G2"),
        }
    }
}

/// An ordered list of simple factors, e.g. `A1xA2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieType {
    factors: Vec<SimpleFactor>,
}

impl LieType {
    pub fn new(factors: Vec<SimpleFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::UnsupportedType("empty factor list".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    pub fn has_su2_factor(&self) -> bool {
        self.factors.contains(&SimpleFactor::A(1))
    }

    pub fn weyl_order(&self) -> u64 {
        self.factors.iter().map(|f| f.weyl_order()).product()
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedType(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '*', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
            let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
            let f = match letter {
                'A' => SimpleFactor::A(rank),
                'B' => SimpleFactor::B(rank),
                'C' => SimpleFactor::C(rank),
                'D' => SimpleFactor::D(rank),
                'G' if rank == 2 => SimpleFactor::G2,
                _ => return Err(bad()),
            };
            factors.push(f);
        }
        LieType::new(factors)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

macro_rules! coord_vector {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<Rational>);

        impl $name {
            pub fn new(coords: Vec<Rational>) -> Self {
                Self(coords)
            }

            pub fn from_ints(coords: &[i64]) -> Self {
                Self(num::q_vec(coords))
            }

            pub fn zero(dim: usize) -> Self {
                Self(vec![Rational::zero(); dim])
            }

            pub fn coords(&self) -> &[Rational] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<Rational> {
                self.0
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn is_integral(&self) -> bool {
                num::is_integral(&self.0)
            }

            pub fn to_ints(&self) -> Result<Vec<i64>> {
                num::to_i64_vec(&self.0)
            }

            pub fn scale(&self, k: &Rational) -> Self {
                Self(self.0.iter().map(|x| x * k).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }
        }

        impl<'a> Add for &'a $name {
            type Output = $name;
            fn add(self, rhs: Self) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl<'a> Sub for &'a $name {
            type Output = $name;
            fn sub(self, rhs: Self) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl<'a> Neg for &'a $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&num::fmt_vec(&self.0))
            }
        }
    };
}

coord_vector!(Weight);
coord_vector!(RootVector);

impl Weight {
    /// All fundamental coordinates strictly positive.
    pub fn is_strongly_dominant(&self) -> bool {
        self.0.iter().all(|x| x.is_positive())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

impl RootVector {
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

/// Cartan data of a semisimple type, immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// `d_i` with `(alpha_i, alpha_i) = 2 d_i`.
    symmetrizer: Vec<i64>,
    symmetrized_form: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_weight: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Rational>>,
    weight_form: Vec<Vec<Rational>>,
    /// Fundamental-weight coordinates of every root, positive or negative,
    /// mapped to `(positive root index, is_positive)`.
    root_lookup: HashMap<Vec<i64>, (usize, bool)>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        build_root_system(lie_type)
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        Ok(build_root_system(s.parse()?))
    }

    pub fn lie_type(&self) -> &LieType {
        &self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn n(&self) -> usize {
        self.positive_roots.len()
    }

    /// `n - rank`: the degree of the density and of the multiplicity growth.
    pub fn s(&self) -> usize {
        self.n() - self.rank
    }

    pub fn has_su2_factor(&self) -> bool {
        self.lie_type.has_su2_factor()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrized_form(&self) -> &[Vec<i64>] {
        &self.symmetrized_form
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots_weight(&self) -> &[Vec<i64>] {
        &self.positive_roots_weight
    }

    /// Coroots `H_alpha` in simple-coroot coordinates.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// Looks up an integral weight-coordinate vector among the roots.
    /// Returns the positive root index and whether the root is positive.
    pub fn find_root(&self, weight_coords: &[i64]) -> Option<(usize, bool)> {
        self.root_lookup.get(weight_coords).copied()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        check_dim(self.rank, w.dim())
    }

    pub fn check_root_vector(&self, v: &RootVector) -> Result<()> {
        check_dim(self.rank, v.dim())
    }

    /// `<w, H_alpha>` for the positive coroot with the given index.
    pub fn pair(&self, w: &Weight, coroot_index: usize) -> Result<Rational> {
        self.check_weight(w)?;
        let h = self.positive_coroots.get(coroot_index).ok_or(Error::IndexOutOfRange {
            index: coroot_index,
            len: self.n(),
        })?;
        Ok(pair_coords(w.coords(), h))
    }

    pub fn to_root_coords(&self, w: &Weight) -> Result<RootVector> {
        self.check_weight(w)?;
        Ok(RootVector::new(num::mat_vec(&self.cartan_inverse, w.coords())))
    }

    pub fn to_weight_coords(&self, v: &RootVector) -> Result<Weight> {
        self.check_root_vector(v)?;
        Ok(Weight::new(num::int_mat_vec(&self.cartan, v.coords())))
    }

    /// Half the sum of the positive roots, i.e. the sum of the fundamental weights.
    pub fn delta(&self) -> Weight {
        Weight::new(vec![Rational::one(); self.rank])
    }

    /// Invariant inner product of two weights.
    pub fn inner(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check_weight(x)?;
        self.check_weight(y)?;
        let gy = num::mat_vec(&self.weight_form, y.coords());
        Ok(x.coords().iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// Inner product matrix on fundamental-weight coordinates.
    pub fn weight_form(&self) -> &[Vec<Rational>] {
        &self.weight_form
    }

    /// Weight coordinates of the i-th simple root (the i-th column of the Cartan matrix).
    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        self.cartan.iter().map(|row| row[i]).collect()
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn pair_coords(w: &[Rational], coroot: &[i64]) -> Rational {
    w.iter()
        .zip(coroot)
        .filter(|(_, &c)| c != 0)
        .map(|(x, &c)| x * BigInt::from(c))
        .sum()
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let r: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![0; r]; r];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    out
}

/// Integers `d_i` with `d_i c_ij = d_j c_ji`, minimal on each connected component.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let r = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * num::q_frac(cartan[i][j], cartan[j][i]));
                    component.push(j);
                    stack.push(j);
                }
            }
        }
        let min = component.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &component {
            let v = d[i].clone().unwrap() / &min;
            d[i] = Some(v);
        }
    }
    d.into_iter()
        .map(|x| {
            let x = x.unwrap();
            assert!(x.is_integer(), "non-integral symmetrizer");
            num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap()
        })
        .collect()
}

/// Positive roots in simple-root coordinates, generated by root strings.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; r];
        v[i] = 1;
        v
    };
    let mut all: Vec<Vec<i64>> = (0..r).map(unit).collect();
    let mut known: HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // q: how far the alpha_i-string extends below beta
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                let p = q - pairing;
                if p > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

pub fn build_root_system(lie_type: LieType) -> RootSystem {
    let blocks: Vec<Vec<Vec<i64>>> = lie_type.factors().iter().map(|f| f.cartan()).collect();
    let cartan = block_diag(&blocks);
    let rank = cartan.len();
    let symmetrizer = symmetrizer(&cartan);
    let symmetrized_form: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| symmetrizer[i] * cartan[i][j]).collect())
        .collect();

    let mut positive_roots = generate_positive_roots(&cartan);
    positive_roots.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));

    let norm2 = |v: &[i64]| -> i64 {
        (0..rank)
            .map(|i| (0..rank).map(|j| v[i] * symmetrized_form[i][j] * v[j]).sum::<i64>())
            .sum()
    };
    let positive_coroots: Vec<Vec<i64>> = positive_roots
        .iter()
        .map(|v| {
            let len2 = norm2(v);
            (0..rank)
                .map(|j| {
                    let num = v[j] * 2 * symmetrizer[j];
                    assert_eq!(num % len2, 0, "coroot coordinates must be integral");
                    num / len2
                })
                .collect()
        })
        .collect();
    let positive_roots_weight: Vec<Vec<i64>> = positive_roots
        .iter()
        .map(|v| (0..rank).map(|i| (0..rank).map(|j| cartan[i][j] * v[j]).sum()).collect())
        .collect();

    let cartan_q: Vec<Vec<Rational>> = cartan.iter().map(|row| num::q_vec(row)).collect();
    let cartan_inverse = num::invert(&cartan_q).expect("Cartan matrices are invertible");
    let sym_q: Vec<Vec<Rational>> = symmetrized_form.iter().map(|row| num::q_vec(row)).collect();
    // (x, y) = (C^{-1} x)^T S (C^{-1} y)
    let weight_form: Vec<Vec<Rational>> = (0..rank)
        .map(|a| {
            (0..rank)
                .map(|b| {
                    let mut acc = Rational::zero();
                    for i in 0..rank {
                        for j in 0..rank {
                            acc += &cartan_inverse[i][a] * &sym_q[i][j] * &cartan_inverse[j][b];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();

    // delta = sum of fundamental weights = half the sum of positive roots
    let ones = vec![Rational::one(); rank];
    let delta_root = num::mat_vec(&cartan_inverse, &ones);
    for (i, d) in delta_root.iter().enumerate() {
        let half: i64 = positive_roots.iter().map(|v| v[i]).sum();
        assert_eq!(d, &num::q_frac(half, 2), "half-sum identity");
    }

    let mut root_lookup = HashMap::new();
    for (idx, w) in positive_roots_weight.iter().enumerate() {
        root_lookup.insert(w.clone(), (idx, true));
        root_lookup.insert(w.iter().map(|x| -x).collect(), (idx, false));
    }

    RootSystem {
        lie_type,
        rank,
        cartan,
        symmetrizer,
        symmetrized_form,
        positive_roots,
        positive_roots_weight,
        positive_coroots,
        cartan_inverse,
        weight_form,
        root_lookup,
    }
}
