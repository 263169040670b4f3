//! The Weyl group, realized as integer matrices acting on fundamental-weight
//! coordinates. Elements are generated by breadth-first closure over the
//! simple reflections, so the BFS depth of an element is its length.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::{RootSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    action: Vec<Vec<i64>>,
    length: usize,
    sign: i8,
}

impl WeylElement {
    pub fn action(&self) -> &[Vec<i64>] {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `(-1)^length`
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn act(&self, x: &Weight) -> Result<Weight> {
        if x.dim() != self.action.len() {
            return Err(Error::DimensionMismatch { expected: self.action.len(), got: x.dim() });
        }
        Ok(Weight::new(num::int_mat_vec(&self.action, x.coords())))
    }

    pub fn act_int(&self, x: &[i64]) -> Vec<i64> {
        self.action.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    /// Indices of the simple reflections `s_1, ..., s_r`.
    simple: Vec<usize>,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `s_i x = x - x_i alpha_i`, as a matrix on weight coordinates.
fn simple_reflection(rs: &RootSystem, i: usize) -> Vec<Vec<i64>> {
    let r = rs.rank();
    let alpha = rs.simple_root_weight(i);
    (0..r)
        .map(|k| {
            (0..r)
                .map(|j| {
                    let id = i64::from(k == j);
                    if j == i {
                        id - alpha[k]
                    } else {
                        id
                    }
                })
                .collect()
        })
        .collect()
}

impl WeylGroup {
    pub fn generate(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..r).map(|i| simple_reflection(rs, i)).collect();
        let identity: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();

        let mut elements = vec![WeylElement { action: identity.clone(), length: 0, sign: 1 }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in &gens {
                let m = mat_mul(g, &elements[cur].action);
                if index.contains_key(&m) {
                    continue;
                }
                let length = elements[cur].length + 1;
                let sign = if length % 2 == 0 { 1 } else { -1 };
                index.insert(m.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { action: m, length, sign });
            }
        }
        let simple = gens.iter().map(|g| index[g]).collect();
        Self { elements, index, simple }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.elements[self.simple[i]]
    }

    /// The unique element of maximal length.
    pub fn longest(&self) -> &WeylElement {
        self.elements.iter().max_by_key(|e| e.length).expect("nonempty group")
    }

    pub fn index_of(&self, action: &[Vec<i64>]) -> Option<usize> {
        self.index.get(action).copied()
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.elements[a].action, &self.elements[b].action);
        self.index[&m]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.compose(a, b) == 0)
            .expect("groups have inverses")
    }

    /// Maps an integral weight into the closed dominant chamber.
    pub fn dominant_representative(rs: &RootSystem, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        while let Some(i) = v.iter().position(|&c| c < 0) {
            let alpha = rs.simple_root_weight(i);
            let xi = v[i];
            for (vk, ak) in v.iter_mut().zip(&alpha) {
                *vk -= xi * ak;
            }
        }
        v
    }

    /// Rational version of [`Self::dominant_representative`].
    pub fn dominant_representative_q(rs: &RootSystem, x: &Weight) -> Weight {
        let mut v = x.coords().to_vec();
        while let Some(i) = v.iter().position(|c| c < &Rational::from_integer(0.into())) {
            let alpha = rs.simple_root_weight(i);
            let xi = v[i].clone();
            for (vk, &ak) in v.iter_mut().zip(&alpha) {
                *vk -= &xi * Rational::from_integer(ak.into());
            }
        }
        Weight::new(v)
    }
}

/// Number of positive roots sent to negative roots by `w`.
pub fn inversion_count(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots_weight()
        .iter()
        .filter(|alpha| {
            let image = w.act_int(alpha);
            let (_, positive) = rs.find_root(&image).expect("Weyl group permutes the roots");
            !positive
        })
        .count()
}

/// `(-1)^(number of positive roots mapped to negative roots)`.
pub fn inversion_sign(rs: &RootSystem, w: &WeylElement) -> i8 {
    if inversion_count(rs, w) % 2 == 0 {
        1
    } else {
        -1
    }
}
