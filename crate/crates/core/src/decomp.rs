//! Isotropic decompositions v = l1 v1 + l2 v2 witnessing weak Brill-Noether
//! failure, their translation tuples (A, B, r1, r2) on the Néron-Severi side,
//! and the bounded searches that find them.
//!
//! Labelling convention for `IsotropicDecomposition`: a1 > 0 and a2 < 0.
//! Translation tuples pair r2 with A (positive square) and r1 with B
//! (negative square), so `decomposition_from_tuple` returns the negative
//! factor first.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{DivisorClass, SurfaceContext};
use crate::mukai::{mukai_pairing, mukai_square, MukaiVector};
use crate::{Error, Int, Result};

/// Default sup-norm bound on searched first Chern classes.
pub const DEFAULT_COORD_BOX: u32 = 10;

/// Bounds for the decomposition and tuple searches. `coord_box` is a sup-norm
/// bound on coordinates in the fixed basis; `rank_cap`, when set, clips the
/// ranks tried by `search_tuples` (the divisibility constraints already bound
/// them, so this is an optional speed limit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBound {
    pub coord_box: u32,
    pub rank_cap: Option<u32>,
}

impl SearchBound {
    pub fn new(coord_box: u32) -> Self {
        SearchBound {
            coord_box,
            rank_cap: None,
        }
    }
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound::new(DEFAULT_COORD_BOX)
    }
}

/// Certificate v = l1 v1 + l2 v2 with v1, v2 isotropic, <v1, v2> = 1,
/// a1 > 0 > a2, positive ranks, and {l1, l2} = {v^2/2, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropicDecomposition {
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    pub l1: Int,
    pub l2: Int,
}

/// Néron-Severi data equivalent to an isotropic pair: A^2 > 0, B^2 < 0,
/// 2 r2 | A^2, 2 r1 | B^2, (r1 A - r2 B)^2 = -2 r1 r2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TranslationTuple {
    pub a: DivisorClass,
    pub b: DivisorClass,
    pub r1: Int,
    pub r2: Int,
}

impl TranslationTuple {
    /// Validates all five defining conditions.
    pub fn new(
        ctx: &SurfaceContext,
        a: DivisorClass,
        b: DivisorClass,
        r1: Int,
        r2: Int,
    ) -> Result<Self> {
        let lat = ctx.lattice();
        if !r1.is_positive() || !r2.is_positive() {
            return Err(Error::InconsistentInput(format!(
                "tuple ranks ({r1}, {r2}) must be positive"
            )));
        }
        let a_sq = lat.square(&a)?;
        let b_sq = lat.square(&b)?;
        if !a_sq.is_positive() {
            return Err(Error::InconsistentInput(format!("A^2 = {a_sq} is not positive")));
        }
        if !b_sq.is_negative() {
            return Err(Error::InconsistentInput(format!("B^2 = {b_sq} is not negative")));
        }
        let two = Int::from(2);
        if !(&a_sq % (&two * &r2)).is_zero() {
            return Err(Error::DivisibilityFailure(format!(
                "2 r2 = {} does not divide A^2 = {a_sq}",
                &two * &r2
            )));
        }
        if !(&b_sq % (&two * &r1)).is_zero() {
            return Err(Error::DivisibilityFailure(format!(
                "2 r1 = {} does not divide B^2 = {b_sq}",
                &two * &r1
            )));
        }
        let mixed = a.scaled(&r1).sub(&b.scaled(&r2));
        let mixed_sq = lat.square(&mixed)?;
        if mixed_sq != -(&two * &r1 * &r2) {
            return Err(Error::InconsistentInput(format!(
                "(r1 A - r2 B)^2 = {mixed_sq} but -2 r1 r2 = {}",
                -(&two * &r1 * &r2)
            )));
        }
        Ok(TranslationTuple { a, b, r1, r2 })
    }
}

/// Checks every defining condition of an isotropic decomposition of v with
/// respect to the polarization h. The polarization must lie in the positive
/// cone; everything else is reported through the boolean.
pub fn verify_decomposition(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    dec: &IsotropicDecomposition,
) -> Result<bool> {
    if !ctx.in_positive_cone(h)? {
        return Err(Error::NotInPositiveCone(h.to_string()));
    }
    let lat = ctx.lattice();
    if !dec.l1.is_positive() || !dec.l2.is_positive() {
        return Ok(false);
    }
    let v_sq = mukai_square(lat, v)?;
    if v_sq.is_negative() || v_sq.is_odd() {
        return Ok(false);
    }
    let ell = &v_sq / Int::from(2);
    // {l1, l2} = {v^2/2, 1} as a multiset.
    let mut given = [dec.l1.clone(), dec.l2.clone()];
    let mut wanted = [ell, Int::one()];
    given.sort();
    wanted.sort();
    if given != wanted {
        return Ok(false);
    }
    let combined = dec.v1.scaled(&dec.l1).add(&dec.v2.scaled(&dec.l2));
    if &combined != v {
        return Ok(false);
    }
    if !dec.v1.r.is_positive() || !dec.v2.r.is_positive() {
        return Ok(false);
    }
    if !dec.v1.a.is_positive() || !dec.v2.a.is_negative() {
        return Ok(false);
    }
    if !mukai_square(lat, &dec.v1)?.is_zero() || !mukai_square(lat, &dec.v2)?.is_zero() {
        return Ok(false);
    }
    if !mukai_pairing(lat, &dec.v1, &dec.v2)?.is_one() {
        return Ok(false);
    }
    let xi_h = lat.dot(&v.xi, h)?;
    let xi1_h = lat.dot(&dec.v1.xi, h)?;
    let xi2_h = lat.dot(&dec.v2.xi, h)?;
    if !(&xi1_h * &xi_h).is_positive() || !(&xi2_h * &xi_h).is_positive() {
        return Ok(false);
    }
    Ok(true)
}

fn validate_search_inputs(ctx: &SurfaceContext, v: &MukaiVector, h: &DivisorClass) -> Result<Int> {
    if !v.r.is_positive() {
        return Err(Error::OutOfScope(format!(
            "decomposition search needs positive rank, got {}",
            v.r
        )));
    }
    let v_sq = mukai_square(ctx.lattice(), v)?;
    if v_sq.is_negative() {
        return Err(Error::NoSemistableSheaf(v_sq));
    }
    if v_sq.is_odd() {
        return Err(Error::InconsistentInput(format!(
            "odd Mukai square {v_sq} over an even lattice"
        )));
    }
    if !ctx.in_positive_cone(h)? {
        return Err(Error::NotInPositiveCone(h.to_string()));
    }
    Ok(v_sq)
}

fn split_candidates(ell: &Int) -> Vec<(Int, Int)> {
    if ell.is_one() {
        vec![(Int::one(), Int::one())]
    } else {
        vec![
            (ell.clone(), Int::one()),
            (Int::one(), ell.clone()),
        ]
    }
}

fn coord_box_vectors(rank: usize, coord_box: u32) -> Result<Vec<Vec<i64>>> {
    let b = coord_box as i64;
    let side = 2 * b + 1;
    let total = (side as u64).checked_pow(rank as u32).unwrap_or(u64::MAX);
    if total > 5_000_000 {
        return Err(Error::InconsistentInput(format!(
            "coordinate box {coord_box} too large for rank {rank}"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![-b; rank];
    loop {
        out.push(cur.clone());
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -b;
                }
                break;
            }
        }
    }
}

fn sort_and_dedup(mut found: Vec<IsotropicDecomposition>) -> Vec<IsotropicDecomposition> {
    found.sort_by(|x, y| {
        (&x.l1, &x.v1.r, &x.v1.xi)
            .cmp(&(&y.l1, &y.v1.r, &y.v1.xi))
            .then_with(|| x.cmp(y))
    });
    found.dedup();
    found
}

/// All isotropic decompositions of v whose first factor's Chern class lies in
/// the coordinate box, in canonical (l1, r1, ξ1) order. Short-circuits that
/// follow from the pairing arithmetic alone: non-primitive v admits none
/// (both <v, vi> = l_j must be 1 for one index), and v^2 + 2 > 2r admits none
/// (r = l1 r1 + l2 r2 >= v^2/2 + 1).
pub fn search_decompositions(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    bound: &SearchBound,
) -> Result<Vec<IsotropicDecomposition>> {
    let v_sq = validate_search_inputs(ctx, v, h)?;
    if v_sq.is_zero() {
        // No split with both multiplicities >= 1 exists.
        return Ok(Vec::new());
    }
    if !v.is_primitive() {
        return Ok(Vec::new());
    }
    let two = Int::from(2);
    if &v_sq + &two > &two * &v.r {
        return Ok(Vec::new());
    }
    let lat = ctx.lattice();
    let xi_h = lat.dot(&v.xi, h)?;
    if xi_h.is_zero() {
        // The sign condition (ξ_i.H)(ξ.H) > 0 is unsatisfiable.
        return Ok(Vec::new());
    }
    let ell = &v_sq / &two;
    let box_vectors = coord_box_vectors(lat.rank(), bound.coord_box)?;
    let mut found = Vec::new();
    for (l1, l2) in split_candidates(&ell) {
        let mut r1 = Int::one();
        while &l1 * &r1 < v.r {
            let rem = &v.r - &l1 * &r1;
            if (&rem % &l2).is_zero() {
                let r2 = &rem / &l2;
                let two_r1 = &two * &r1;
                let two_r2 = &two * &r2;
                for coords in &box_vectors {
                    let xi1 = DivisorClass::from_i64s(coords);
                    let xi1_sq = lat.dot_raw(xi1.coords(), xi1.coords());
                    // v1 isotropic forces a1 = ξ1^2 / (2 r1).
                    let (a1, rem1) = xi1_sq.div_rem(&two_r1);
                    if !rem1.is_zero() || !a1.is_positive() {
                        continue;
                    }
                    let xi2 = match v.xi.sub(&xi1.scaled(&l1)).try_div_exact(&l2) {
                        Some(x) => x,
                        None => continue,
                    };
                    let xi2_sq = lat.dot_raw(xi2.coords(), xi2.coords());
                    let (a2, rem2) = xi2_sq.div_rem(&two_r2);
                    if !rem2.is_zero() || !a2.is_negative() {
                        continue;
                    }
                    // a-component of the sum must reproduce v.
                    if &l1 * &a1 + &l2 * &a2 != v.a {
                        continue;
                    }
                    let v1 = MukaiVector::new(r1.clone(), xi1, a1);
                    let v2 = MukaiVector::new(r2.clone(), xi2, a2);
                    if !mukai_pairing(lat, &v1, &v2)?.is_one() {
                        continue;
                    }
                    let xi1_h = lat.dot(&v1.xi, h)?;
                    let xi2_h = lat.dot(&v2.xi, h)?;
                    if !(&xi1_h * &xi_h).is_positive() || !(&xi2_h * &xi_h).is_positive() {
                        continue;
                    }
                    let dec = IsotropicDecomposition {
                        v1,
                        v2,
                        l1: l1.clone(),
                        l2: l2.clone(),
                    };
                    assert!(
                        verify_decomposition(ctx, v, h, &dec)?,
                        "search produced an invalid decomposition"
                    );
                    found.push(dec);
                }
            }
            r1 += 1;
        }
    }
    Ok(sort_and_dedup(found))
}

/// Independent re-derivation of `search_decompositions` by raw enumeration
/// over (r1, ξ1 coordinates, a1) with no algebraic narrowing: candidates are
/// assembled blindly and every defining condition is checked after the fact.
/// Used as the test oracle.
pub fn brute_force_oracle(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    coord_box: u32,
) -> Result<Vec<IsotropicDecomposition>> {
    let v_sq = validate_search_inputs(ctx, v, h)?;
    if v_sq.is_zero() {
        return Ok(Vec::new());
    }
    let lat = ctx.lattice();
    let ell = &v_sq / Int::from(2);
    // |a1| <= max |ξ1^2| / 2 over the box, bounded by B^2 sum|g| / 2.
    let mut gram_sum = Int::zero();
    for row in lat.gram() {
        for e in row {
            gram_sum += e.abs();
        }
    }
    let b = Int::from(coord_box);
    let a_bound = (&b * &b * gram_sum) / Int::from(2);
    let r_max = u64::try_from(v.r.clone()).map_err(|_| {
        Error::InconsistentInput(format!("rank {} too large for brute force", v.r))
    })?;
    let box_vectors = coord_box_vectors(lat.rank(), coord_box)?;
    let mut found = Vec::new();
    for (l1, l2) in split_candidates(&ell) {
        for r1 in 1..=r_max {
            let r1 = Int::from(r1);
            let two_r1 = Int::from(2) * &r1;
            for coords in &box_vectors {
                let xi1 = DivisorClass::from_i64s(coords);
                let xi1_sq = lat.dot_raw(xi1.coords(), xi1.coords());
                // March a1 across the whole window, keeping 2 r1 a1 as a
                // running value; the isotropy test is a plain comparison.
                let mut a1 = -a_bound.clone();
                let mut two_r1_a1 = &two_r1 * &a1;
                while a1 <= a_bound {
                    if two_r1_a1 == xi1_sq {
                        let v1 = MukaiVector::new(r1.clone(), xi1.clone(), a1.clone());
                        if let Some(v2) = v.sub(&v1.scaled(&l1)).try_div_exact(&l2) {
                            let dec = IsotropicDecomposition {
                                v1,
                                v2,
                                l1: l1.clone(),
                                l2: l2.clone(),
                            };
                            if verify_decomposition(ctx, v, h, &dec)? {
                                found.push(dec);
                            }
                        }
                    }
                    a1 += 1;
                    two_r1_a1 += &two_r1;
                }
            }
        }
    }
    Ok(sort_and_dedup(found))
}

/// Translation tuple of a decomposition: A is the Chern class of the
/// positive-χ factor, B of the negative one, with the ranks crossing over.
pub fn tuple_from_decomposition(
    ctx: &SurfaceContext,
    dec: &IsotropicDecomposition,
) -> Result<TranslationTuple> {
    TranslationTuple::new(
        ctx,
        dec.v1.xi.clone(),
        dec.v2.xi.clone(),
        dec.v2.r.clone(),
        dec.v1.r.clone(),
    )
}

/// Isotropic pair of a translation tuple: the pair
/// ((r1, B, B^2/2r1), (r2, A, A^2/2r2)), negative-χ factor first.
pub fn decomposition_from_tuple(
    ctx: &SurfaceContext,
    tuple: &TranslationTuple,
) -> Result<(MukaiVector, MukaiVector)> {
    let lat = ctx.lattice();
    let two = Int::from(2);
    let a_sq = lat.square(&tuple.a)?;
    let b_sq = lat.square(&tuple.b)?;
    let (a2, rem2) = a_sq.div_rem(&(&two * &tuple.r2));
    if !rem2.is_zero() {
        return Err(Error::DivisibilityFailure(format!(
            "2 r2 = {} does not divide A^2 = {a_sq}",
            &two * &tuple.r2
        )));
    }
    let (a1, rem1) = b_sq.div_rem(&(&two * &tuple.r1));
    if !rem1.is_zero() {
        return Err(Error::DivisibilityFailure(format!(
            "2 r1 = {} does not divide B^2 = {b_sq}",
            &two * &tuple.r1
        )));
    }
    let neg = MukaiVector::new(tuple.r1.clone(), tuple.b.clone(), a1);
    let pos = MukaiVector::new(tuple.r2.clone(), tuple.a.clone(), a2);
    Ok((neg, pos))
}

/// Exhaustive search for translation tuples with both classes in the
/// coordinate box. The divisibility constraints bound the ranks: r2 runs over
/// divisors of A^2/2 and r1 over divisors of |B^2|/2, optionally clipped by
/// `rank_cap`.
pub fn search_tuples(ctx: &SurfaceContext, bound: &SearchBound) -> Result<Vec<TranslationTuple>> {
    let lat = ctx.lattice();
    let box_vectors = coord_box_vectors(lat.rank(), bound.coord_box)?;
    let mut positives: Vec<(DivisorClass, Vec<Int>)> = Vec::new();
    let mut negatives: Vec<(DivisorClass, Vec<Int>)> = Vec::new();
    for coords in &box_vectors {
        let d = DivisorClass::from_i64s(coords);
        let sq = lat.dot_raw(d.coords(), d.coords());
        if sq.is_positive() {
            let divs = divisors_upto(&(&sq / Int::from(2)), bound.rank_cap)?;
            positives.push((d, divs));
        } else if sq.is_negative() {
            let divs = divisors_upto(&(-&sq / Int::from(2)), bound.rank_cap)?;
            negatives.push((d, divs));
        }
    }
    let two = Int::from(2);
    let mut found = Vec::new();
    for (a, r2s) in &positives {
        for (b, r1s) in &negatives {
            for r2 in r2s {
                for r1 in r1s {
                    let mixed = a.scaled(r1).sub(&b.scaled(r2));
                    let mixed_sq = lat.dot_raw(mixed.coords(), mixed.coords());
                    if mixed_sq == -(&two * r1 * r2) {
                        found.push(TranslationTuple {
                            a: a.clone(),
                            b: b.clone(),
                            r1: r1.clone(),
                            r2: r2.clone(),
                        });
                    }
                }
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

fn divisors_upto(n: &Int, cap: Option<u32>) -> Result<Vec<Int>> {
    let n = u64::try_from(n.clone()).map_err(|_| {
        Error::InconsistentInput(format!("value {n} too large for divisor enumeration"))
    })?;
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    if let Some(cap) = cap {
        divs.retain(|&d| d <= cap as u64);
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(Int::from).collect())
}
