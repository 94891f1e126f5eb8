//! Mukai vectors (r, ξ, a) over an intersection lattice.
//!
//! The pairing is <v, w> = ξ_v.ξ_w - r_v a_w - r_w a_v; the square of a
//! vector is ξ^2 - 2ra and is even over an even lattice.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::{Error, Int, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: Int,
    pub xi: DivisorClass,
    pub a: Int,
}

impl MukaiVector {
    pub fn new(r: Int, xi: DivisorClass, a: Int) -> Self {
        MukaiVector { r, xi, a }
    }

    pub fn from_i64s(r: i64, xi: &[i64], a: i64) -> Self {
        MukaiVector {
            r: Int::from(r),
            xi: DivisorClass::from_i64s(xi),
            a: Int::from(a),
        }
    }

    /// Euler characteristic χ(v) = a.
    pub fn euler_char(&self) -> &Int {
        &self.a
    }

    /// v -> (r, -ξ, a); an involution preserving the pairing.
    pub fn dual(&self) -> MukaiVector {
        MukaiVector {
            r: self.r.clone(),
            xi: self.xi.neg(),
            a: self.a.clone(),
        }
    }

    /// True iff gcd(r, all ξ coordinates, a) = 1.
    pub fn is_primitive(&self) -> bool {
        let mut g = self.r.gcd(&self.a);
        for c in self.xi.coords() {
            g = g.gcd(c);
        }
        g.is_one()
    }

    pub fn add(&self, other: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &other.r,
            xi: self.xi.add(&other.xi),
            a: &self.a + &other.a,
        }
    }

    pub fn sub(&self, other: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r - &other.r,
            xi: self.xi.sub(&other.xi),
            a: &self.a - &other.a,
        }
    }

    pub fn scaled(&self, k: &Int) -> MukaiVector {
        MukaiVector {
            r: &self.r * k,
            xi: self.xi.scaled(k),
            a: &self.a * k,
        }
    }

    /// Componentwise exact division by k, if possible.
    pub fn try_div_exact(&self, k: &Int) -> Option<MukaiVector> {
        if k.is_zero() {
            return None;
        }
        let (qr, rr) = self.r.div_rem(k);
        let (qa, ra) = self.a.div_rem(k);
        if !rr.is_zero() || !ra.is_zero() {
            return None;
        }
        Some(MukaiVector {
            r: qr,
            xi: self.xi.try_div_exact(k)?,
            a: qa,
        })
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}", self.r, self.xi, self.a)
    }
}

/// <v, w> = ξ_v.ξ_w - r_v a_w - r_w a_v.
pub fn mukai_pairing(lat: &IntersectionLattice, v: &MukaiVector, w: &MukaiVector) -> Result<Int> {
    let xx = lat.dot(&v.xi, &w.xi)?;
    Ok(xx - &v.r * &w.a - &w.r * &v.a)
}

/// v^2 = ξ^2 - 2ra; even over an even lattice.
pub fn mukai_square(lat: &IntersectionLattice, v: &MukaiVector) -> Result<Int> {
    let xx = lat.square(&v.xi)?;
    Ok(xx - Int::from(2) * &v.r * &v.a)
}

/// Line-bundle twist v.e^D = (r, ξ + rD, a + ξ.D + r D^2/2); a pairing isometry.
pub fn twist(
    lat: &IntersectionLattice,
    v: &MukaiVector,
    d: &DivisorClass,
) -> Result<MukaiVector> {
    let xi_d = lat.dot(&v.xi, d)?;
    let d_sq = lat.square(d)?;
    // D^2 is even, so r D^2/2 is integral.
    let half = d_sq / Int::from(2);
    Ok(MukaiVector {
        r: v.r.clone(),
        xi: v.xi.add(&d.scaled(&v.r)),
        a: &v.a + xi_d + &v.r * half,
    })
}

/// Recognized twisted shapes of positive-rank vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialForm {
    /// v = (r, 0, -1).e^eta with r >= 2, i.e. r | ξ and a = ξ^2/(2r) - 1.
    TwistedRank { eta: DivisorClass },
    /// v = (1, 0, -l).e^eta; every rank-1 vector, with l = ξ^2/2 - a.
    /// The colength l may be negative; callers needing l >= 0 must check.
    RankOne { eta: DivisorClass, colength: Int },
}

/// Detects the special twisted shapes. Rank-1 vectors always match; for
/// r >= 2 the divisibility r | ξ and the exact a-value are required.
pub fn special_form(lat: &IntersectionLattice, v: &MukaiVector) -> Result<Option<SpecialForm>> {
    if !v.r.is_positive() {
        return Err(Error::OutOfScope(format!(
            "special_form needs positive rank, got {}",
            v.r
        )));
    }
    let xi_sq = lat.square(&v.xi)?;
    if v.r.is_one() {
        let colength = xi_sq / Int::from(2) - &v.a;
        return Ok(Some(SpecialForm::RankOne {
            eta: v.xi.clone(),
            colength,
        }));
    }
    let eta = match v.xi.try_div_exact(&v.r) {
        Some(eta) => eta,
        None => return Ok(None),
    };
    let eta_sq = lat.square(&eta)?;
    let expected_a = &v.r * (eta_sq / Int::from(2)) - Int::one();
    if v.a == expected_a {
        Ok(Some(SpecialForm::TwistedRank { eta }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests_support::{exe_lattice, rank1_lattice};

    fn big(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn pairing_worked_example() {
        let lat = exe_lattice();
        let v1 = MukaiVector::from_i64s(3, &[-2, 9, 3], 1);
        let v2 = MukaiVector::from_i64s(3, &[-3, 9, 4], -1);
        assert_eq!(mukai_pairing(&lat, &v1, &v2).unwrap(), big(1));
        assert_eq!(mukai_pairing(&lat, &v2, &v1).unwrap(), big(1));
        assert_eq!(mukai_square(&lat, &v1).unwrap(), big(0));
        assert_eq!(mukai_square(&lat, &v2).unwrap(), big(0));
        let vp = MukaiVector::from_i64s(6, &[-5, 18, 7], 0);
        assert_eq!(mukai_square(&lat, &vp).unwrap(), big(2));
    }

    #[test]
    fn pairing_degenerate_cases() {
        let lat = exe_lattice();
        let one = MukaiVector::from_i64s(1, &[0, 0, 0], 0);
        let point = MukaiVector::from_i64s(0, &[0, 0, 0], 1);
        assert_eq!(mukai_pairing(&lat, &one, &one).unwrap(), big(0));
        assert_eq!(mukai_pairing(&lat, &point, &one).unwrap(), big(-1));
        assert_eq!(mukai_square(&lat, &one).unwrap(), big(0));
    }

    #[test]
    fn euler_char_is_last_component() {
        let lat = rank1_lattice(4);
        let v = MukaiVector::from_i64s(2, &[1], 0);
        assert_eq!(v.euler_char(), &big(0));
        let w = MukaiVector::from_i64s(1, &[-2], 3);
        assert_eq!(w.euler_char(), &big(3));
        // χ(v) = a = -<v, (1,0,0)> and <(0,0,1), v> = -r.
        let one = MukaiVector::from_i64s(1, &[0], 0);
        let point = MukaiVector::from_i64s(0, &[0], 1);
        assert_eq!(mukai_pairing(&lat, &one, &w).unwrap(), -w.a.clone());
        assert_eq!(mukai_pairing(&lat, &point, &w).unwrap(), -w.r.clone());
    }

    #[test]
    fn twist_formulas() {
        let lat = exe_lattice();
        let h = DivisorClass::from_i64s(&[2, 5, 0]);
        let v = MukaiVector::from_i64s(6, &[-5, 18, 7], 0);
        let t = twist(&lat, &v, &h).unwrap();
        assert_eq!(t, MukaiVector::from_i64s(6, &[7, 48, 7], 120));
        // (r, ξ, 0).e^{-H} = (r, ξ - rH, r H^2/2 - ξ.H)
        let back = twist(&lat, &v, &h.neg()).unwrap();
        let xi_h = lat.dot(&v.xi, &h).unwrap();
        let h_sq = lat.square(&h).unwrap();
        assert_eq!(back.a, &v.r * (h_sq / 2) - xi_h);
        // Twist by zero is the identity.
        let z = DivisorClass::zero(3);
        assert_eq!(twist(&lat, &v, &z).unwrap(), v);
        // Round trip.
        assert_eq!(twist(&lat, &t, &h.neg()).unwrap(), v);
        // Pairing isometry on the worked pair.
        let v1 = MukaiVector::from_i64s(3, &[-2, 9, 3], 1);
        let v2 = MukaiVector::from_i64s(3, &[-3, 9, 4], -1);
        let d = DivisorClass::from_i64s(&[1, -2, 3]);
        let p0 = mukai_pairing(&lat, &v1, &v2).unwrap();
        let p1 = mukai_pairing(
            &lat,
            &twist(&lat, &v1, &d).unwrap(),
            &twist(&lat, &v2, &d).unwrap(),
        )
        .unwrap();
        assert_eq!(p0, p1);
    }

    #[test]
    fn dual_is_involution_preserving_square() {
        let lat = exe_lattice();
        let v = MukaiVector::from_i64s(6, &[-5, 18, 7], 0);
        assert_eq!(v.dual().dual(), v);
        assert_eq!(v.dual().xi, v.xi.neg());
        let v1 = MukaiVector::from_i64s(3, &[-2, 9, 3], 1);
        assert_eq!(
            mukai_square(&lat, &v1.dual()).unwrap(),
            mukai_square(&lat, &v1).unwrap()
        );
    }

    #[test]
    fn primitivity() {
        assert!(MukaiVector::from_i64s(6, &[-5, 18, 7], 0).is_primitive());
        assert!(!MukaiVector::from_i64s(2, &[2, 0, 0], 2).is_primitive());
        assert!(MukaiVector::from_i64s(0, &[0, 0, 0], 1).is_primitive());
    }

    #[test]
    fn special_forms() {
        let lat = exe_lattice();
        // (2, 2η, η^2 - 1) = (2, 0, -1).e^η
        let eta = DivisorClass::from_i64s(&[1, 2, 0]);
        let eta_sq = lat.square(&eta).unwrap();
        let v = MukaiVector::new(big(2), eta.scaled(&big(2)), &eta_sq - 1);
        assert_eq!(
            special_form(&lat, &v).unwrap(),
            Some(SpecialForm::TwistedRank { eta: eta.clone() })
        );
        // Rank 1 always matches, with l = ξ^2/2 - a.
        let w = MukaiVector::from_i64s(1, &[1, 2, 0], 0);
        let got = special_form(&lat, &w).unwrap().unwrap();
        assert_eq!(
            got,
            SpecialForm::RankOne {
                eta: DivisorClass::from_i64s(&[1, 2, 0]),
                colength: eta_sq / 2,
            }
        );
        // 6 does not divide (-5, 18, 7).
        let vp = MukaiVector::from_i64s(6, &[-5, 18, 7], 0);
        assert_eq!(special_form(&lat, &vp).unwrap(), None);
        // Rank must be positive.
        assert!(special_form(&lat, &MukaiVector::from_i64s(0, &[1, 0, 0], 1)).is_err());
    }

    #[test]
    fn display_round_trip_shape() {
        let v = MukaiVector::from_i64s(6, &[-5, 18, 7], 0);
        assert_eq!(v.to_string(), "6; -5,18,7; 0");
    }
}
