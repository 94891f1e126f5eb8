//! Unbounded-integer number theory: integer square roots, perfect squares,
//! continued-fraction Pell solving, and orbit generation for generalized
//! Pell equations.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Result};

/// Largest s with s*s <= n. Errors on negative input.
pub fn sqrt_floor(n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::InconsistentInput(format!(
            "sqrt_floor of negative {n}"
        )));
    }
    Ok(n.sqrt())
}

/// `Some(s)` with s >= 0 and s*s == n, else `None`. Negative n never squares.
pub fn is_perfect_square(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Which Pell-type equation a solution satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PellForm {
    /// t^2 - d u^2 = 1
    UnitOne,
    /// t^2 - d u^2 = 4
    UnitFour,
    /// t^2 - d u^2 = N
    General(Int),
}

impl PellForm {
    pub fn target(&self) -> Int {
        match self {
            PellForm::UnitOne => Int::one(),
            PellForm::UnitFour => Int::from(4),
            PellForm::General(n) => n.clone(),
        }
    }
}

/// A verified solution of t^2 - d u^2 = target(form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub t: Int,
    pub u: Int,
    pub d: Int,
    pub form: PellForm,
}

impl PellSolution {
    /// Construction checks the defining equation exactly.
    pub fn new(t: Int, u: Int, d: Int, form: PellForm) -> Result<Self> {
        let lhs = &t * &t - &d * &u * &u;
        if lhs != form.target() {
            return Err(Error::InconsistentInput(format!(
                "({t},{u}) does not satisfy t^2 - {d} u^2 = {}",
                form.target()
            )));
        }
        Ok(PellSolution { t, u, d, form })
    }

    pub fn residue(&self) -> Int {
        &self.t * &self.t - &self.d * &self.u * &self.u
    }
}

/// Minimal positive solution of t^2 - D u^2 = 1 for nonsquare D >= 2, found
/// along the continued-fraction convergents of sqrt(D). The fundamental
/// solution is the first convergent satisfying the equation, so no period
/// bookkeeping is needed.
pub fn pell_fundamental(d: &Int) -> Result<PellSolution> {
    if d < &Int::from(2) {
        return Err(Error::NoSolution(format!(
            "Pell coefficient {d} must be at least 2"
        )));
    }
    if is_perfect_square(d).is_some() {
        return Err(Error::NoSolution(format!(
            "Pell coefficient {d} is a perfect square"
        )));
    }
    let a0 = d.sqrt();
    // CF state for (m + sqrt(d)) / den.
    let mut m = Int::zero();
    let mut den = Int::one();
    let mut a = a0.clone();
    // Convergents h/k.
    let (mut h_prev, mut h) = (Int::one(), a0.clone());
    let (mut k_prev, mut k) = (Int::zero(), Int::one());
    loop {
        if &(&h * &h) - &(d * (&k * &k)) == Int::one() {
            return PellSolution::new(h, k, d.clone(), PellForm::UnitOne);
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Minimal positive solution of t^2 - D u^2 = 4 for nonsquare D >= 2.
///
/// For D = 0 mod 4 every solution has even t, so t = 2T with T^2 - (D/4)u^2 = 1.
/// For D = 2,3 mod 4 both t and u are forced even and the minimal solution is
/// the doubled unit. For D = 1 mod 4 an odd solution (t, u odd) may exist; if
/// (t1,u1) is the unit solution then 8 u1 = u (3t^2 + D u^2), so any odd u is
/// bounded by cbrt(8 u1 / D) and a short scan decides. Ties break toward
/// minimal u, then minimal t.
pub fn pell4_fundamental(delta: &Int) -> Result<PellSolution> {
    if delta < &Int::from(2) {
        return Err(Error::NoSolution(format!(
            "Pell-4 discriminant {delta} must be at least 2"
        )));
    }
    if is_perfect_square(delta).is_some() {
        return Err(Error::NoSolution(format!(
            "Pell-4 discriminant {delta} is a perfect square"
        )));
    }
    let four = Int::from(4);
    let rem = delta.mod_floor(&four);
    if rem.is_zero() {
        let quarter = delta / &four;
        let unit = pell_fundamental(&quarter)?;
        return PellSolution::new(
            &unit.t * 2,
            unit.u,
            delta.clone(),
            PellForm::UnitFour,
        );
    }
    let unit = pell_fundamental(delta)?;
    if rem == Int::one() {
        // Scan odd u with D u^3 <= 8 u1.
        let bound = &unit.u * 8;
        let mut u = Int::one();
        while &(&u * &u * &u) * delta <= bound {
            if let Some(t) = is_perfect_square(&(&four + delta * (&u * &u))) {
                return PellSolution::new(t, u, delta.clone(), PellForm::UnitFour);
            }
            u += 2;
        }
    }
    PellSolution::new(&unit.t * 2, &unit.u * 2, delta.clone(), PellForm::UnitFour)
}

/// Successive solutions of u^2 - D v^2 = N obtained by composing `base` with
/// the unit solution: (t, u) -> (t t1 + D u u1, t u1 + t1 u). Every element
/// is verified on construction.
pub fn pell_orbit(
    base: &PellSolution,
    unit: &PellSolution,
    count: usize,
) -> Result<Vec<PellSolution>> {
    if unit.form != PellForm::UnitOne {
        return Err(Error::InconsistentInput(
            "orbit unit must solve t^2 - D u^2 = 1".into(),
        ));
    }
    let n = match &base.form {
        PellForm::General(n) => n.clone(),
        other => other.target(),
    };
    if base.d != unit.d {
        return Err(Error::InconsistentInput(format!(
            "orbit base has D = {} but unit has D = {}",
            base.d, unit.d
        )));
    }
    let mut out = Vec::with_capacity(count);
    let mut t = base.t.clone();
    let mut u = base.u.clone();
    for _ in 0..count {
        let t_next = &t * &unit.t + &base.d * (&u * &unit.u);
        let u_next = &t * &unit.u + &unit.t * &u;
        t = t_next;
        u = u_next;
        out.push(PellSolution::new(
            t.clone(),
            u.clone(),
            base.d.clone(),
            PellForm::General(n.clone()),
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> Int {
        Int::from(n)
    }

    // Brute-force oracle: minimal u > 0 with 1 + d u^2 a perfect square.
    fn pell_brute(d: i64, cap: i64) -> Option<(i64, i64)> {
        for u in 1..=cap {
            let t2 = 1 + d * u * u;
            let t = (t2 as f64).sqrt().round() as i64;
            for c in [t - 1, t, t + 1] {
                if c > 0 && c * c == t2 {
                    return Some((c, u));
                }
            }
        }
        None
    }

    fn pell4_brute(d: i64, cap: i64) -> Option<(i64, i64)> {
        for u in 1..=cap {
            let t2 = 4 + d * u * u;
            let t = (t2 as f64).sqrt().round() as i64;
            for c in [t - 1, t, t + 1] {
                if c > 0 && c * c == t2 {
                    return Some((c, u));
                }
            }
        }
        None
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(is_perfect_square(&big(0)), Some(big(0)));
        assert_eq!(is_perfect_square(&big(16)), Some(big(4)));
        // 5 = N^2 + 4N at N = 1 is not a square.
        assert_eq!(is_perfect_square(&big(5)), None);
        assert_eq!(is_perfect_square(&big(-4)), None);
    }

    #[test]
    fn sqrt_floor_values() {
        assert_eq!(sqrt_floor(&big(8)).unwrap(), big(2));
        assert_eq!(sqrt_floor(&big(9)).unwrap(), big(3));
        let n: Int = Int::from(2_000_000_000_000_000_001u64);
        let s = sqrt_floor(&n).unwrap();
        assert_eq!(s, big(1414213562));
        assert!(&s * &s <= n);
        let s1 = &s + 1;
        assert!(&s1 * &s1 > n);
        assert!(sqrt_floor(&big(-1)).is_err());
    }

    #[test]
    fn sqrt_floor_agrees_with_perfect_square_detection() {
        for n in 0..=1000i64 {
            let n = big(n);
            let s = sqrt_floor(&n).unwrap();
            assert_eq!(is_perfect_square(&n).is_some(), &s * &s == n);
        }
    }

    #[test]
    fn fundamental_solutions() {
        let s = pell_fundamental(&big(2)).unwrap();
        assert_eq!((s.t, s.u), (big(3), big(2)));
        let s = pell_fundamental(&big(5)).unwrap();
        assert_eq!((s.t, s.u), (big(9), big(4)));
        // Famously large fundamental solution.
        let s = pell_fundamental(&big(61)).unwrap();
        assert_eq!(s.t, big(1766319049));
        assert_eq!(s.u, big(226153980));
        assert!(pell_fundamental(&big(4)).is_err());
        assert!(pell_fundamental(&big(1)).is_err());
        assert!(pell_fundamental(&big(0)).is_err());
    }

    #[test]
    fn fundamental_matches_brute_force_small() {
        for d in 2..=60i64 {
            if is_perfect_square(&big(d)).is_some() {
                continue;
            }
            let s = pell_fundamental(&big(d)).unwrap();
            if let Some((bt, bu)) = pell_brute(d, 100_000) {
                assert_eq!((s.t, s.u), (big(bt), big(bu)), "D = {d}");
            }
        }
    }

    #[test]
    fn pell4_solutions() {
        let s = pell4_fundamental(&big(5)).unwrap();
        assert_eq!((s.t, s.u), (big(3), big(1)));
        let s = pell4_fundamental(&big(8)).unwrap();
        assert_eq!((s.t, s.u), (big(6), big(2)));
        let s = pell4_fundamental(&big(12)).unwrap();
        assert_eq!((s.t, s.u), (big(4), big(1)));
        let s = pell4_fundamental(&big(13)).unwrap();
        assert_eq!((s.t, s.u), (big(11), big(3)));
        assert!(pell4_fundamental(&big(9)).is_err());
    }

    #[test]
    fn pell4_matches_brute_force() {
        for d in [5i64, 8, 12, 13, 17, 20, 21, 24, 28, 29, 33, 40, 44, 61] {
            let s = pell4_fundamental(&big(d)).unwrap();
            let (bt, bu) = pell4_brute(d, 2_000_000).unwrap();
            assert_eq!((s.t, s.u), (big(bt), big(bu)), "Delta = {d}");
        }
    }

    #[test]
    fn orbit_worked_example() {
        // Delta = 8, N = -32: base (0, 2), unit (3, 1).
        let base =
            PellSolution::new(big(0), big(2), big(8), PellForm::General(big(-32))).unwrap();
        let unit = PellSolution::new(big(3), big(1), big(8), PellForm::UnitOne).unwrap();
        let orbit = pell_orbit(&base, &unit, 1).unwrap();
        assert_eq!((orbit[0].t.clone(), orbit[0].u.clone()), (big(16), big(6)));
        assert!(pell_orbit(&base, &unit, 0).unwrap().is_empty());
        let identity = PellSolution::new(big(1), big(0), big(8), PellForm::UnitOne).unwrap();
        let stuck = pell_orbit(&base, &identity, 3).unwrap();
        for s in stuck {
            assert_eq!((s.t, s.u), (big(0), big(2)));
        }
    }

    #[test]
    fn orbit_elements_distinct_and_verified() {
        let base =
            PellSolution::new(big(0), big(2), big(8), PellForm::General(big(-32))).unwrap();
        let unit = pell_fundamental(&big(8)).unwrap();
        let orbit = pell_orbit(&base, &unit, 8).unwrap();
        for s in &orbit {
            assert_eq!(s.residue(), big(-32));
        }
        for i in 0..orbit.len() {
            for j in (i + 1)..orbit.len() {
                assert_ne!((&orbit[i].t, &orbit[i].u), (&orbit[j].t, &orbit[j].u));
            }
        }
        // |t| strictly increasing along the orbit.
        for w in orbit.windows(2) {
            assert!(w[0].t.abs() < w[1].t.abs());
        }
    }

    #[test]
    fn orbit_rejects_mismatched_coefficient() {
        let base =
            PellSolution::new(big(0), big(2), big(8), PellForm::General(big(-32))).unwrap();
        let unit = pell_fundamental(&big(5)).unwrap();
        assert!(pell_orbit(&base, &unit, 1).is_err());
    }

    #[test]
    fn solution_constructor_rejects_bad_data() {
        assert!(PellSolution::new(big(3), big(2), big(2), PellForm::UnitOne).is_ok());
        assert!(PellSolution::new(big(3), big(2), big(2), PellForm::UnitFour).is_err());
        assert!(PellSolution::new(big(4), big(2), big(3), PellForm::UnitFour).is_ok());
    }
}
