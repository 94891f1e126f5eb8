//! Generative machinery: the numerical wall predicate, wall orbits from
//! stabilized Pell isometries, the two counterexample streams, failing
//! polarizations, nonsquare sublattice search, and Ulrich classification.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, pell_fundamental, PellForm, PellSolution};
use crate::decomp::{
    decomposition_from_tuple, search_decompositions, verify_decomposition,
    IsotropicDecomposition, SearchBound, TranslationTuple,
};
use crate::lattice::{ConeModel, DivisorClass, IntersectionLattice, SurfaceContext};
use crate::mukai::{mukai_pairing, mukai_square, twist, MukaiVector};
use crate::rank2::{isometry_from_pell, stabilize_mod, BinaryEvenForm, FormClass, Isometry2x2};
use crate::{Error, Int, Result};

/// Multiples of the primitive orthogonal direction tried by
/// `polarization_against` before giving up.
pub const DEFAULT_PERTURBATION_BUDGET: u32 = 64;

const MAX_STREAM_ADVANCE: u32 = 4096;

/// The numerical wall predicate for v1 against v:
/// v1^2 >= 0, (v - v1)^2 >= 0, <v1, v - v1> > 0, v1^2 v^2 < <v1, v>^2.
pub fn is_wall(ctx: &SurfaceContext, v1: &MukaiVector, v: &MukaiVector) -> Result<bool> {
    let lat = ctx.lattice();
    let s1 = mukai_square(lat, v1)?;
    let rest = v.sub(v1);
    let s_rest = mukai_square(lat, &rest)?;
    let p = mukai_pairing(lat, v1, &rest)?;
    let pv = mukai_pairing(lat, v1, v)?;
    let sv = mukai_square(lat, v)?;
    Ok(!s1.is_negative() && !s_rest.is_negative() && p.is_positive() && &s1 * &sv < &pv * &pv)
}

/// A wall is totally semistable exactly when it comes from an isotropic v1
/// pairing to one against v.
pub fn is_totally_semistable_candidate(
    ctx: &SurfaceContext,
    v1: &MukaiVector,
    v: &MukaiVector,
) -> Result<bool> {
    let lat = ctx.lattice();
    Ok(is_wall(ctx, v1, v)?
        && mukai_square(lat, v1)?.is_zero()
        && mukai_pairing(lat, v, v1)?.is_one())
}

/// Orbit of wall vectors w_n = (r1, eta_n, b_n) obtained by driving the
/// class r ξ1 - r1 ξ with a stabilized hyperbolic isometry of the supplied
/// rank-2 sublattice. Every element satisfies w_n^2 = v1^2 and
/// <w_n, v> = <v1, v>, with pairwise distinct eta_n.
#[derive(Clone, Debug)]
pub struct WallOrbit {
    pub v: MukaiVector,
    pub v1: MukaiVector,
    pub isometry: Isometry2x2,
    pub exponent: u64,
    pub sublattice_basis: (DivisorClass, DivisorClass),
    pub elements: Vec<MukaiVector>,
}

/// Coordinates of w in the basis (p, q) of a nondegenerate rank-2 sublattice,
/// or `None` when w is not an integral combination.
fn span_coordinates(
    lat: &IntersectionLattice,
    p: &DivisorClass,
    q: &DivisorClass,
    w: &DivisorClass,
) -> Result<Option<(Int, Int)>> {
    let pp = lat.dot(p, p)?;
    let pq = lat.dot(p, q)?;
    let qq = lat.dot(q, q)?;
    let det = &pp * &qq - &pq * &pq;
    if det.is_zero() {
        return Err(Error::InvalidLattice(
            "sublattice basis is degenerate".into(),
        ));
    }
    let wp = lat.dot(w, p)?;
    let wq = lat.dot(w, q)?;
    // Cramer on [[pp, pq], [pq, qq]] (alpha, beta)^t = (wp, wq)^t.
    let alpha_num = &wp * &qq - &pq * &wq;
    let beta_num = &pp * &wq - &wp * &pq;
    let (alpha, ra) = alpha_num.div_rem(&det);
    let (beta, rb) = beta_num.div_rem(&det);
    if !ra.is_zero() || !rb.is_zero() {
        return Ok(None);
    }
    let rebuilt = p.scaled(&alpha).add(&q.scaled(&beta));
    if &rebuilt != w {
        return Ok(None);
    }
    Ok(Some((alpha, beta)))
}

/// Builds the wall orbit for (v, v1) inside the sublattice spanned by
/// `basis`, which must contain both ξ + rD and r ξ1 - r1 ξ and have
/// nonsquare discriminant. The isometry is stabilized mod r so that every
/// eta_n stays integral.
pub fn wall_orbit(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    v1: &MukaiVector,
    d: &DivisorClass,
    basis: (&DivisorClass, &DivisorClass),
    count: usize,
) -> Result<WallOrbit> {
    let lat = ctx.lattice();
    if !v.r.is_positive() || !v1.r.is_positive() {
        return Err(Error::OutOfScope(format!(
            "wall orbits need positive ranks, got r = {}, r1 = {}",
            v.r, v1.r
        )));
    }
    let (p, q) = basis;
    let w = v1.xi.scaled(&v.r).sub(&v.xi.scaled(&v1.r));
    if w.is_zero() {
        return Err(Error::InconsistentInput(
            "r ξ1 = r1 ξ; the candidate spans no orbit".into(),
        ));
    }
    let w_coords = span_coordinates(lat, p, q, &w)?.ok_or_else(|| {
        Error::InconsistentInput(format!(
            "r ξ1 - r1 ξ = {w} is not in the span of the supplied basis"
        ))
    })?;
    let twisted = v.xi.add(&d.scaled(&v.r));
    if span_coordinates(lat, p, q, &twisted)?.is_none() {
        return Err(Error::InconsistentInput(format!(
            "ξ + rD = {twisted} is not in the span of the supplied basis"
        )));
    }
    let form = BinaryEvenForm::from_gram(&lat.square(p)?, &lat.dot(p, q)?, &lat.square(q)?)?;
    if !matches!(form.classify(), FormClass::Nonsquare) {
        return Err(Error::NoIsometry(form.delta()));
    }
    let g = isometry_from_pell(&form)?;
    let (psi, exponent) = stabilize_mod(&g, &v.r)?;
    let v1_sq = mukai_square(lat, v1)?;
    let pairing_target = mukai_pairing(lat, v1, v)?;
    let two_r1 = Int::from(2) * &v1.r;
    let mut elements = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    let (mut cx, mut cy) = w_coords;
    for n in 1..=count {
        let next = psi.apply(&cx, &cy);
        cx = next.0;
        cy = next.1;
        let moved = p.scaled(&cx).add(&q.scaled(&cy));
        let eta = moved
            .add(&v.xi.scaled(&v1.r))
            .try_div_exact(&v.r)
            .ok_or_else(|| {
                Error::ContractViolation(format!(
                    "eta_{n} is not integral; isometry stabilization is broken"
                ))
            })?;
        let eta_sq = lat.square(&eta)?;
        let (b, rem) = (&eta_sq - &v1_sq).div_rem(&two_r1);
        if !rem.is_zero() {
            return Err(Error::ContractViolation(format!(
                "b_{n} is not integral; isometry stabilization is broken"
            )));
        }
        let w_n = MukaiVector::new(v1.r.clone(), eta, b);
        if mukai_square(lat, &w_n)? != v1_sq {
            return Err(Error::ContractViolation(format!("w_{n} square drifted")));
        }
        if mukai_pairing(lat, &w_n, v)? != pairing_target {
            return Err(Error::ContractViolation(format!("<w_{n}, v> drifted")));
        }
        if !seen.insert(w_n.xi.clone()) {
            return Err(Error::ContractViolation(format!("eta_{n} repeated")));
        }
        elements.push(w_n);
    }
    Ok(WallOrbit {
        v: v.clone(),
        v1: v1.clone(),
        isometry: psi,
        exponent,
        sublattice_basis: (p.clone(), q.clone()),
        elements,
    })
}

/// How a counterexample record was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Orbit element index (1-based) and how many elements were skipped for
    /// non-integral pullbacks or failed sign selection so far.
    PellOrbit { index: u64, skipped: u64 },
    EllipticProduct { s: Int, t: Int },
    Search,
}

/// A verified weak Brill-Noether counterexample: the translation tuple, the
/// isotropic pair (v1 has positive χ, v2 negative), v = v1 + v2, and a
/// polarization for which the decomposition certificate is valid.
#[derive(Clone, Debug)]
pub struct CounterexampleRecord {
    pub tuple: TranslationTuple,
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    pub v: MukaiVector,
    pub polarization: DivisorClass,
    pub provenance: Provenance,
}

fn assemble_record(
    ctx: &SurfaceContext,
    tuple: TranslationTuple,
    provenance: Provenance,
) -> Result<CounterexampleRecord> {
    let (neg, pos) = decomposition_from_tuple(ctx, &tuple)?;
    let v = pos.add(&neg);
    let polarization = polarization_against(ctx, &pos, &neg, DEFAULT_PERTURBATION_BUDGET)?;
    let dec = IsotropicDecomposition {
        v1: pos.clone(),
        v2: neg.clone(),
        l1: Int::one(),
        l2: Int::one(),
    };
    if !verify_decomposition(ctx, &v, &polarization, &dec)? {
        return Err(Error::ContractViolation(
            "assembled record fails decomposition verification".into(),
        ));
    }
    Ok(CounterexampleRecord {
        tuple,
        v1: pos,
        v2: neg,
        v,
        polarization,
        provenance,
    })
}

/// Pell-driven counterexample stream on a rank-2 lattice with Gram matrix
/// [[2n, k], [k, 2m]] of nonsquare discriminant Delta = k^2 - 4mn.
///
/// The form represents -R = -n Delta at (x, y) = (-k, 2n); substituting
/// u = 2nx + ky, v = y turns the representation into u^2 - Delta v^2 = -4Rn
/// with base (0, 2n), and composing with the Pell unit walks the solution
/// set. Each orbit element is pulled back to two solutions (x0, y0), (c, d)
/// approaching the two ends of the hyperbola; signs are then chosen by exact
/// evaluation so that A = (x0 + Rc) H + (y0 + Rd) D has positive square.
/// Records carry r1 = 1, r2 = R; every tuple condition is re-checked.
pub struct Rank2CounterexampleStream {
    ctx: SurfaceContext,
    n: Int,
    k: Int,
    r_value: Int,
    unit: PellSolution,
    cur: (Int, Int),
    index: u64,
    skipped: u64,
    swapped: bool,
}

impl Rank2CounterexampleStream {
    pub fn new(form: &BinaryEvenForm) -> Result<Self> {
        let delta = form.delta();
        match form.classify() {
            FormClass::Nonsquare => {}
            FormClass::Square(_) => {
                return Err(Error::NoStream(format!(
                    "discriminant {delta} is a perfect square"
                )))
            }
            FormClass::Definite => {
                return Err(Error::NoStream(format!(
                    "discriminant {delta} is negative; the form is definite"
                )))
            }
        }
        // Normalize to n > 0, swapping the basis if needed.
        let (n, k, m, swapped) = if form.a.is_positive() {
            (form.a.clone(), form.b.clone(), form.c.clone(), false)
        } else if form.c.is_positive() {
            (form.c.clone(), form.b.clone(), form.a.clone(), true)
        } else {
            return Err(Error::NoStream(format!(
                "neither diagonal of {form} is positive; cannot normalize"
            )));
        };
        let two = Int::from(2);
        let gram = vec![
            vec![&two * &form.a, form.b.clone()],
            vec![form.b.clone(), &two * &form.c],
        ];
        let lattice = IntersectionLattice::new(gram, None)?;
        let ample = if swapped {
            DivisorClass::from_i64s(&[0, 1])
        } else {
            DivisorClass::from_i64s(&[1, 0])
        };
        let ctx = SurfaceContext::new(lattice, ample, ConeModel::UserAsserted)?;
        let _ = m;
        let r_value = &n * &delta;
        let unit = pell_fundamental(&delta)?;
        let base = (Int::zero(), &two * &n);
        Ok(Rank2CounterexampleStream {
            ctx,
            n,
            k,
            r_value,
            unit,
            cur: base,
            index: 0,
            skipped: 0,
            swapped,
        })
    }

    pub fn context(&self) -> &SurfaceContext {
        &self.ctx
    }

    /// Coordinates in the original basis from normalized (H, D) coordinates.
    fn to_original(&self, x: &Int, y: &Int) -> DivisorClass {
        if self.swapped {
            DivisorClass::new(vec![y.clone(), x.clone()])
        } else {
            DivisorClass::new(vec![x.clone(), y.clone()])
        }
    }

    fn pull_back(&self, u: &Int, v: &Int) -> Option<(Int, Int)> {
        // x = (u - k v) / (2n), y = v.
        let num = u - &self.k * v;
        let (x, rem) = num.div_rem(&(Int::from(2) * &self.n));
        if rem.is_zero() {
            Some((x, v.clone()))
        } else {
            None
        }
    }

    pub fn next_record(&mut self) -> Result<CounterexampleRecord> {
        for _ in 0..MAX_STREAM_ADVANCE {
            // Advance the generalized Pell solution.
            let t_next = &self.cur.0 * &self.unit.t + &self.unit.d * (&self.cur.1 * &self.unit.u);
            let u_next = &self.cur.0 * &self.unit.u + &self.unit.t * &self.cur.1;
            self.cur = (t_next, u_next);
            self.index += 1;
            let (u, v) = (self.cur.0.clone(), self.cur.1.clone());
            let plus = self.pull_back(&u, &v);
            let minus = self.pull_back(&(-&u), &v);
            let (cd, x0y0) = match (plus, minus) {
                (Some(cd), Some(x0y0)) => (cd, x0y0),
                _ => {
                    self.skipped += 1;
                    continue;
                }
            };
            // Exact sign selection: try (x0, y0) and (c, d) with flips until
            // A^2 > 0; preference order keeps (x0, y0) first.
            let mut emitted = None;
            'signs: for flip_x0 in [false, true] {
                for flip_cd in [false, true] {
                    let (x0, y0) = if flip_x0 {
                        (-&x0y0.0, -&x0y0.1)
                    } else {
                        (x0y0.0.clone(), x0y0.1.clone())
                    };
                    let (c, d) = if flip_cd {
                        (-&cd.0, -&cd.1)
                    } else {
                        (cd.0.clone(), cd.1.clone())
                    };
                    let a = &x0 + &self.r_value * &c;
                    let b = &y0 + &self.r_value * &d;
                    let a_class = self.to_original(&a, &b);
                    // Exact positivity check A^2 > 0 replaces the asymptotic
                    // sign estimate; failures advance to the next element.
                    if !self
                        .ctx
                        .lattice()
                        .dot_raw(a_class.coords(), a_class.coords())
                        .is_positive()
                    {
                        continue;
                    }
                    let b_class = self.to_original(&c, &d);
                    let tuple = match TranslationTuple::new(
                        &self.ctx,
                        a_class,
                        b_class,
                        Int::one(),
                        self.r_value.clone(),
                    ) {
                        Ok(t) => t,
                        Err(_) => continue,
                    };
                    let provenance = Provenance::PellOrbit {
                        index: self.index,
                        skipped: self.skipped,
                    };
                    match assemble_record(&self.ctx, tuple, provenance) {
                        Ok(rec) => {
                            emitted = Some(rec);
                            break 'signs;
                        }
                        Err(_) => continue,
                    }
                }
            }
            match emitted {
                Some(rec) => return Ok(rec),
                None => {
                    self.skipped += 1;
                    continue;
                }
            }
        }
        Err(Error::ContractViolation(format!(
            "stream produced no record within {MAX_STREAM_ADVANCE} orbit steps"
        )))
    }
}

impl Iterator for Rank2CounterexampleStream {
    type Item = CounterexampleRecord;

    fn next(&mut self) -> Option<CounterexampleRecord> {
        self.next_record().ok()
    }
}

/// First `count` records of the rank-2 stream.
pub fn rank2_counterexample_stream(
    form: &BinaryEvenForm,
    count: usize,
) -> Result<Vec<CounterexampleRecord>> {
    let mut stream = Rank2CounterexampleStream::new(form)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(stream.next_record()?);
    }
    Ok(out)
}

/// Counterexample stream on the lattice H^2 = 2m, D^2 = -2, H.D = 0 of a
/// product of elliptic curves: for each Pell solution t^2 - m s^2 = 1 with
/// s > 1, the classes A = H and B = -(s-1)H + tD give a tuple with
/// r1 = r2 = 1 and B^2 = -2((2s-1)m + 1).
pub struct EllipticProductStream {
    ctx: SurfaceContext,
    m: Int,
    fundamental: PellSolution,
    cur: PellSolution,
}

impl EllipticProductStream {
    pub fn new(m: &Int) -> Result<Self> {
        if m < &Int::from(2) {
            return Err(Error::NoStream(format!(
                "elliptic-product parameter {m} must be at least 2"
            )));
        }
        if is_perfect_square(m).is_some() {
            return Err(Error::NoStream(format!(
                "elliptic-product parameter {m} is a perfect square"
            )));
        }
        let two = Int::from(2);
        let gram = vec![
            vec![&two * m, Int::zero()],
            vec![Int::zero(), Int::from(-2)],
        ];
        let lattice = IntersectionLattice::new(gram, None)?;
        let ctx = SurfaceContext::new(
            lattice,
            DivisorClass::from_i64s(&[1, 0]),
            ConeModel::UserAsserted,
        )?;
        let fundamental = pell_fundamental(m)?;
        Ok(EllipticProductStream {
            ctx,
            m: m.clone(),
            fundamental: fundamental.clone(),
            cur: fundamental,
        })
    }

    pub fn context(&self) -> &SurfaceContext {
        &self.ctx
    }

    pub fn next_record(&mut self) -> Result<CounterexampleRecord> {
        for _ in 0..MAX_STREAM_ADVANCE {
            let (t, s) = (self.cur.t.clone(), self.cur.u.clone());
            // Advance for next time.
            self.cur = PellSolution::new(
                &t * &self.fundamental.t + &self.m * (&s * &self.fundamental.u),
                &t * &self.fundamental.u + &self.fundamental.t * &s,
                self.m.clone(),
                PellForm::UnitOne,
            )?;
            if s <= Int::one() {
                continue;
            }
            // A = H, B = eta + H with eta = -sH + tD.
            let a_class = DivisorClass::from_i64s(&[1, 0]);
            let b_class = DivisorClass::new(vec![Int::one() - &s, t.clone()]);
            let tuple = TranslationTuple::new(
                &self.ctx,
                a_class,
                b_class,
                Int::one(),
                Int::one(),
            )?;
            return assemble_record(&self.ctx, tuple, Provenance::EllipticProduct { s, t });
        }
        Err(Error::ContractViolation(
            "elliptic stream produced no record".into(),
        ))
    }
}

impl Iterator for EllipticProductStream {
    type Item = CounterexampleRecord;

    fn next(&mut self) -> Option<CounterexampleRecord> {
        self.next_record().ok()
    }
}

/// First `count` records of the elliptic-product stream for parameter m.
pub fn elliptic_product_stream(m: &Int, count: usize) -> Result<Vec<CounterexampleRecord>> {
    let mut stream = EllipticProductStream::new(m)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(stream.next_record()?);
    }
    Ok(out)
}

/// First pair (P, Q) in box order spanning a rank-2 sublattice of signature
/// (1,1) whose Delta = (P.Q)^2 - P^2 Q^2 is positive and not a perfect
/// square; `None` when no such pair exists within the box.
pub fn find_nonsquare_sublattice(
    ctx: &SurfaceContext,
    coord_box: u32,
) -> Result<Option<(DivisorClass, DivisorClass)>> {
    let lat = ctx.lattice();
    let rank = lat.rank();
    let b = coord_box as i64;
    let mut coords = Vec::new();
    let side = (2 * b + 1) as u64;
    if side.checked_pow(rank as u32).is_none_or(|t| t > 2_000_000) {
        return Err(Error::InconsistentInput(format!(
            "coordinate box {coord_box} too large for rank {rank}"
        )));
    }
    let mut cur = vec![-b; rank];
    loop {
        coords.push(cur.clone());
        let mut i = rank;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -b;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    for p_coords in &coords {
        let p = DivisorClass::from_i64s(p_coords);
        let pp = lat.dot_raw(p.coords(), p.coords());
        for q_coords in &coords {
            let q = DivisorClass::from_i64s(q_coords);
            let pq = lat.dot_raw(p.coords(), q.coords());
            let qq = lat.dot_raw(q.coords(), q.coords());
            let delta = &pq * &pq - &pp * &qq;
            if delta.is_positive() && is_perfect_square(&delta).is_none() {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// A positive-cone polarization H' on the failing side of the wall of the
/// pair (v1, v2): H'.(r2 ξ1 - r1 ξ2) < 0 while ξ1 and ξ2 pair with H' with
/// one common sign (so every decomposition sign condition holds). Built by
/// projecting the reference ample class onto the wall and perturbing by
/// integer multiples, largest-scale first.
pub fn polarization_against(
    ctx: &SurfaceContext,
    v1: &MukaiVector,
    v2: &MukaiVector,
    budget: u32,
) -> Result<DivisorClass> {
    let lat = ctx.lattice();
    if !v1.r.is_positive() || !v2.r.is_positive() {
        return Err(Error::InconsistentInput(
            "polarization search needs positive ranks".into(),
        ));
    }
    let w = v1.xi.scaled(&v2.r).sub(&v2.xi.scaled(&v1.r));
    if w.is_zero() {
        return Err(Error::InconsistentInput(
            "r2 ξ1 = r1 ξ2; the pair spans no wall".into(),
        ));
    }
    let w_sq = lat.square(&w)?;
    if !w_sq.is_negative() {
        return Err(Error::InconsistentInput(format!(
            "(r2 ξ1 - r1 ξ2)^2 = {w_sq} is not negative"
        )));
    }
    let h0 = ctx.ample_ref();
    let w_h0 = lat.dot(&w, h0)?;
    // (w.H0) w - (w^2) H0 is orthogonal to w with positive square.
    let base = w.scaled(&w_h0).sub(&h0.scaled(&w_sq)).primitive_part();
    for j in 1..=budget {
        let cand = base.scaled(&Int::from(j)).add(&w);
        if !ctx.in_positive_cone(&cand)? {
            continue;
        }
        if !lat.dot(&cand, &w)?.is_negative() {
            continue;
        }
        let s1 = lat.dot(&v1.xi, &cand)?;
        let s2 = lat.dot(&v2.xi, &cand)?;
        if (&s1 * &s2).is_positive() {
            return Ok(cand);
        }
    }
    Err(Error::PolarizationNotFound { budget })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UlrichConditions {
    pub rank_ge_2: bool,
    pub a_part_zero: bool,
    pub pairing_matches: bool,
    pub xi_square_nonneg: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UlrichConclusion {
    UlrichGeneric,
    NoUlrichViaTheorem,
    NotCandidate,
}

/// Outcome of the Ulrich test for (v, H): the untwisted vector, the four
/// candidate conditions (rank >= 2, vanishing χ-part, 2 ξ.H = r H^2,
/// ξ^2 >= 0), and the decomposition verdict for the untwisted vector and its
/// further untwist.
#[derive(Clone, Debug)]
pub struct UlrichReport {
    pub untwisted: MukaiVector,
    pub conditions: UlrichConditions,
    pub candidate_ok: bool,
    pub decomposition_found: Option<IsotropicDecomposition>,
    pub conclusion: UlrichConclusion,
    pub decisive: bool,
    pub search_box: u32,
}

fn lattice_is_decisive(lat: &IntersectionLattice) -> Result<bool> {
    if lat.rank() == 1 {
        return Ok(true);
    }
    if lat.rank() == 2 {
        let gram = lat.gram();
        let form = BinaryEvenForm::from_gram(&gram[0][0], &gram[0][1], &gram[1][1])?;
        return Ok(matches!(form.classify(), FormClass::Square(_)));
    }
    Ok(false)
}

/// Classifies v as the Mukai vector of an Ulrich bundle for (X, H). The
/// candidate shape is v = (r, ξ, 0).e^H with r >= 2, 2 ξ.H = r H^2 and
/// ξ^2 >= 0; a candidate is Ulrich-generic when neither the untwisted vector
/// nor its further untwist by -H admits an isotropic decomposition.
pub fn ulrich_classify(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    bound: &SearchBound,
) -> Result<UlrichReport> {
    if !ctx.in_positive_cone(h)? {
        return Err(Error::NotInPositiveCone(h.to_string()));
    }
    let lat = ctx.lattice();
    let minus_h = h.neg();
    let w = twist(lat, v, &minus_h)?;
    let h_sq = lat.square(h)?;
    let xi_h = lat.dot(&w.xi, h)?;
    let xi_sq = lat.square(&w.xi)?;
    let conditions = UlrichConditions {
        rank_ge_2: w.r >= Int::from(2),
        a_part_zero: w.a.is_zero(),
        pairing_matches: Int::from(2) * &xi_h == &w.r * &h_sq,
        xi_square_nonneg: !xi_sq.is_negative(),
    };
    let candidate_ok = conditions.rank_ge_2
        && conditions.a_part_zero
        && conditions.pairing_matches
        && conditions.xi_square_nonneg;
    if !candidate_ok {
        return Ok(UlrichReport {
            untwisted: w,
            conditions,
            candidate_ok,
            decomposition_found: None,
            conclusion: UlrichConclusion::NotCandidate,
            decisive: true,
            search_box: bound.coord_box,
        });
    }
    // Both cohomology vanishing statements must survive: the untwisted
    // vector has positive slope, its further untwist negative slope.
    let w_back = twist(lat, &w, &minus_h)?;
    let mut found = search_decompositions(ctx, &w, h, bound)?;
    if found.is_empty() {
        found = search_decompositions(ctx, &w_back, h, bound)?;
    }
    let decisive = lattice_is_decisive(lat)?;
    match found.into_iter().next() {
        Some(dec) => Ok(UlrichReport {
            untwisted: w,
            conditions,
            candidate_ok,
            decomposition_found: Some(dec),
            conclusion: UlrichConclusion::NoUlrichViaTheorem,
            decisive: true,
            search_box: bound.coord_box,
        }),
        None => Ok(UlrichReport {
            untwisted: w,
            conditions,
            candidate_ok,
            decomposition_found: None,
            conclusion: UlrichConclusion::UlrichGeneric,
            decisive,
            search_box: bound.coord_box,
        }),
    }
}

/// On a rank-1 lattice ZH with H^2 given, an Ulrich bundle of rank r for the
/// polarization mH exists iff 2 | rm, and then its Mukai vector is
/// (r, (3rm/2) H, r m^2 H^2).
pub fn ulrich_enumerate_rank1(h_square: &Int, r: &Int, m: &Int) -> Result<Option<MukaiVector>> {
    if !h_square.is_positive() || h_square.is_odd() {
        return Err(Error::InconsistentInput(format!(
            "H^2 = {h_square} must be positive and even"
        )));
    }
    if !r.is_positive() || !m.is_positive() {
        return Err(Error::InconsistentInput(format!(
            "rank {r} and multiplier {m} must be positive"
        )));
    }
    let rm = r * m;
    if rm.is_odd() {
        return Ok(None);
    }
    let coeff = Int::from(3) * &rm / Int::from(2);
    let a = r * m * m * h_square;
    Ok(Some(MukaiVector::new(
        r.clone(),
        DivisorClass::new(vec![coeff]),
        a,
    )))
}
