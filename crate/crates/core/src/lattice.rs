//! Integer intersection lattices of signature (1, ρ-1) and divisor classes.
//!
//! The lattice is the ambient arithmetic context for everything else: an even
//! symmetric Gram matrix with exactly one positive eigenvalue, checked by
//! exact congruence elimination over the rationals.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Int, Result};

/// Divisor class: integer coordinates in the fixed basis of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    coords: Vec<Int>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Int>) -> Self {
        DivisorClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![Int::zero(); rank],
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| Int::from(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        debug_assert_eq!(self.len(), other.len());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        debug_assert_eq!(self.len(), other.len());
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scaled(&self, k: &Int) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Componentwise exact division; `None` if any coordinate is not divisible.
    pub fn try_div_exact(&self, k: &Int) -> Option<DivisorClass> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(DivisorClass { coords: out })
    }

    /// Gcd of the coordinates (nonnegative; zero for the zero class).
    pub fn content(&self) -> Int {
        self.coords
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content; the zero class is returned unchanged.
    pub fn primitive_part(&self) -> DivisorClass {
        let g = self.content();
        if g.is_zero() {
            self.clone()
        } else {
            self.try_div_exact(&g).expect("content divides")
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Whether the positive cone of the fixture may be treated as the full ample
/// cone (exact for Picard rank 3) or is only asserted by the user.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ConeModel {
    RoundCone,
    #[default]
    UserAsserted,
}

/// Even integer lattice of signature (1, ρ-1), ρ between 1 and 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    rank: usize,
    gram: Vec<Vec<Int>>,
    basis_labels: Option<Vec<String>>,
}

impl IntersectionLattice {
    #[allow(clippy::needless_range_loop)]
    pub fn new(gram: Vec<Vec<Int>>, basis_labels: Option<Vec<String>>) -> Result<Self> {
        let rank = gram.len();
        if !(1..=4).contains(&rank) {
            return Err(Error::RankOutOfRange(rank));
        }
        for row in &gram {
            if row.len() != rank {
                return Err(Error::InvalidLattice(format!(
                    "gram matrix is not square: row of length {} in a rank-{} lattice",
                    row.len(),
                    rank
                )));
            }
        }
        for i in 0..rank {
            if gram[i][i].is_odd() {
                return Err(Error::InvalidLattice(format!(
                    "diagonal entry gram[{i}][{i}] = {} is odd; the lattice must be even",
                    gram[i][i]
                )));
            }
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let (pos, neg, zero) = inertia(&gram);
        if (pos, neg, zero) != (1, rank - 1, 0) {
            return Err(Error::InvalidLattice(format!(
                "signature is ({pos},{neg}) with {zero} radical dimension(s); expected (1,{})",
                rank - 1
            )));
        }
        if let Some(labels) = &basis_labels {
            if labels.len() != rank {
                return Err(Error::InvalidLattice(format!(
                    "{} basis labels for a rank-{} lattice",
                    labels.len(),
                    rank
                )));
            }
        }
        Ok(IntersectionLattice {
            rank,
            gram,
            basis_labels,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    pub(crate) fn check_dim(&self, x: &DivisorClass) -> Result<()> {
        if x.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn dot_raw(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    row += &self.gram[i][j] * yj;
                }
            }
            acc += xi * row;
        }
        acc
    }

    /// Intersection product x.y in the fixed basis.
    pub fn dot(&self, x: &DivisorClass, y: &DivisorClass) -> Result<Int> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.dot_raw(x.coords(), y.coords()))
    }

    /// Self-intersection x.x; always even.
    pub fn square(&self, x: &DivisorClass) -> Result<Int> {
        self.dot(x, x)
    }
}

/// Exact inertia (positive, negative, zero eigenvalue counts) of a symmetric
/// integer matrix via congruence elimination over the rationals. When the
/// whole remaining diagonal vanishes, a basis shear e_k := e_k + e_j restores
/// a nonzero pivot; shears and swaps are congruences, so inertia is preserved.
#[allow(clippy::needless_range_loop)]
pub fn inertia(gram: &[Vec<Int>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut m: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| row.iter().map(|e| BigRational::from(e.clone())).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = ((k + 1)..n).find(|&j| !m[k][j].is_zero()) {
                for t in 0..n {
                    let v = &m[k][t] + &m[j][t];
                    m[k][t] = v;
                }
                for row in m.iter_mut().take(n) {
                    let v = &row[k] + &row[j];
                    row[k] = v;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for t in 0..n {
                let v = &m[i][t] - &f * &m[k][t];
                m[i][t] = v;
            }
            for row in m.iter_mut().take(n) {
                let v = &row[i] - &f * &row[k];
                row[i] = v;
            }
        }
    }
    (pos, neg, zero)
}

/// A lattice together with a reference ample class orienting the positive cone.
#[derive(Clone, Debug)]
pub struct SurfaceContext {
    lattice: IntersectionLattice,
    ample_ref: DivisorClass,
    cone_model: ConeModel,
}

impl SurfaceContext {
    pub fn new(
        lattice: IntersectionLattice,
        ample_ref: DivisorClass,
        cone_model: ConeModel,
    ) -> Result<Self> {
        lattice.check_dim(&ample_ref)?;
        let sq = lattice.square(&ample_ref)?;
        if !sq.is_positive() {
            return Err(Error::InvalidLattice(format!(
                "reference ample class {ample_ref} has nonpositive square {sq}"
            )));
        }
        Ok(SurfaceContext {
            lattice,
            ample_ref,
            cone_model,
        })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn ample_ref(&self) -> &DivisorClass {
        &self.ample_ref
    }

    pub fn cone_model(&self) -> ConeModel {
        self.cone_model
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// D lies in the positive cone component of the reference ample class:
    /// D.D > 0 and D.ample_ref > 0. This is the artifact's proxy for
    /// ampleness; on an abstract lattice nothing stronger can be certified.
    pub fn in_positive_cone(&self, d: &DivisorClass) -> Result<bool> {
        let sq = self.lattice.square(d)?;
        let pairing = self.lattice.dot(d, &self.ample_ref)?;
        Ok(sq.is_positive() && pairing.is_positive())
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::{exe_lattice, gram};
    use super::*;

    #[test]
    fn dot_matches_worked_example() {
        let lat = exe_lattice();
        let h = DivisorClass::from_i64s(&[2, 5, 0]);
        let xi = DivisorClass::from_i64s(&[-5, 18, 7]);
        assert_eq!(lat.dot(&h, &xi).unwrap(), Int::from(60));
        assert_eq!(lat.square(&h).unwrap(), Int::from(20));
        let zero = DivisorClass::zero(3);
        assert_eq!(lat.dot(&zero, &xi).unwrap(), Int::zero());
    }

    #[test]
    fn dot_rejects_dimension_mismatch() {
        let lat = exe_lattice();
        let short = DivisorClass::from_i64s(&[1, 2]);
        let ok = DivisorClass::from_i64s(&[1, 2, 3]);
        assert!(matches!(
            lat.dot(&short, &ok),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn signature_accepts_hyperbolic_and_rank_one() {
        assert!(IntersectionLattice::new(gram(&[&[0, 1], &[1, 0]]), None).is_ok());
        assert!(IntersectionLattice::new(gram(&[&[2]]), None).is_ok());
        // U + <-2>
        assert!(
            IntersectionLattice::new(gram(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]), None).is_ok()
        );
    }

    #[test]
    fn signature_rejects_definite_and_wrong_inertia() {
        assert!(IntersectionLattice::new(gram(&[&[-2]]), None).is_err());
        // positive definite, signature (2,0)
        assert!(IntersectionLattice::new(gram(&[&[2, 0], &[0, 2]]), None).is_err());
        // degenerate
        assert!(IntersectionLattice::new(gram(&[&[0, 0], &[0, 0]]), None).is_err());
    }

    #[test]
    fn rejects_odd_diagonal_and_asymmetry() {
        assert!(IntersectionLattice::new(gram(&[&[1, 0], &[0, -2]]), None).is_err());
        assert!(IntersectionLattice::new(gram(&[&[2, 1], &[0, -2]]), None).is_err());
    }

    #[test]
    fn inertia_of_exe_lattice() {
        assert_eq!(inertia(exe_lattice().gram()), (1, 2, 0));
    }

    #[test]
    fn inertia_of_rank_four_lattices() {
        // U + <-2> + <-2>: the maximal Picard rank case.
        let g = gram(&[
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, -2, 0],
            &[0, 0, 0, -2],
        ]);
        assert_eq!(inertia(&g), (1, 3, 0));
        assert!(IntersectionLattice::new(g, None).is_ok());
        // Two hyperbolic planes have inertia (2, 2) and are rejected.
        let g = gram(&[
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
        ]);
        assert_eq!(inertia(&g), (2, 2, 0));
        assert!(IntersectionLattice::new(g, None).is_err());
        // Rank 5 is out of range regardless of signature.
        let g = gram(&[
            &[2, 0, 0, 0, 0],
            &[0, -2, 0, 0, 0],
            &[0, 0, -2, 0, 0],
            &[0, 0, 0, -2, 0],
            &[0, 0, 0, 0, -2],
        ]);
        assert!(matches!(
            IntersectionLattice::new(g, None),
            Err(Error::RankOutOfRange(5))
        ));
    }

    #[test]
    fn positive_cone_membership() {
        // Rank-2 sublattice fixture H^2=4, D^2=-2, H.D=0.
        let lat = IntersectionLattice::new(gram(&[&[4, 0], &[0, -2]]), None).unwrap();
        let ctx =
            SurfaceContext::new(lat, DivisorClass::from_i64s(&[1, 0]), ConeModel::UserAsserted)
                .unwrap();
        let h = ctx.ample_ref().clone();
        assert!(ctx.in_positive_cone(&h).unwrap());
        assert!(!ctx.in_positive_cone(&h.neg()).unwrap());
        // L = 3H - 4D: L^2 = 4, L.H = 12.
        let l = DivisorClass::from_i64s(&[3, -4]);
        assert_eq!(ctx.lattice().square(&l).unwrap(), Int::from(4));
        assert_eq!(ctx.lattice().dot(&l, &h).unwrap(), Int::from(12));
        assert!(ctx.in_positive_cone(&l).unwrap());
    }

    #[test]
    fn context_requires_positive_ample_square() {
        let lat = exe_lattice();
        // E1 is isotropic.
        let res = SurfaceContext::new(
            lat,
            DivisorClass::from_i64s(&[1, 0, 0]),
            ConeModel::UserAsserted,
        );
        assert!(res.is_err());
    }

    #[test]
    fn divisor_class_helpers() {
        let a = DivisorClass::from_i64s(&[2, -4, 6]);
        assert_eq!(a.content(), Int::from(2));
        assert_eq!(a.primitive_part(), DivisorClass::from_i64s(&[1, -2, 3]));
        assert_eq!(a.try_div_exact(&Int::from(2)).unwrap(), a.primitive_part());
        assert!(a.try_div_exact(&Int::from(4)).is_none());
        assert_eq!(a.to_string(), "2,-4,6");
    }
}
