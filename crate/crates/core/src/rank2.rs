//! Even rank-2 lattices given as binary forms: discriminant classification,
//! embeddings into the hyperbolic plane U, isotropic vectors, and
//! infinite-order isometries built from Pell solutions.
//!
//! A form (a, b, c) stands for the Gram matrix [[2a, b], [b, 2c]], so the
//! lattice square of x e1 + y e2 is 2(a x^2 + b xy + c y^2). The governing
//! quantity is Delta = b^2 - 4ac = -d(L).

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, pell4_fundamental};
use crate::{Error, Int, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryEvenForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

/// Square/nonsquare dichotomy for Delta = b^2 - 4ac. `Square(0)` covers the
/// degenerate case; `Definite` is Delta < 0, where the lattice has no
/// hyperbolic part at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormClass {
    Square(Int),
    Nonsquare,
    Definite,
}

impl BinaryEvenForm {
    pub fn new(a: Int, b: Int, c: Int) -> Self {
        BinaryEvenForm { a, b, c }
    }

    pub fn from_i64s(a: i64, b: i64, c: i64) -> Self {
        BinaryEvenForm::new(Int::from(a), Int::from(b), Int::from(c))
    }

    /// From Gram entries (g11, g12, g22); g11 and g22 must be even.
    pub fn from_gram(g11: &Int, g12: &Int, g22: &Int) -> Result<Self> {
        if g11.is_odd() || g22.is_odd() {
            return Err(Error::InvalidLattice(format!(
                "gram diagonal ({g11}, {g22}) must be even"
            )));
        }
        Ok(BinaryEvenForm::new(
            g11 / Int::from(2),
            g12.clone(),
            g22 / Int::from(2),
        ))
    }

    /// d(L) = 4ac - b^2, the Gram determinant.
    pub fn discriminant(&self) -> Int {
        Int::from(4) * &self.a * &self.c - &self.b * &self.b
    }

    /// Delta = b^2 - 4ac = -d(L).
    pub fn delta(&self) -> Int {
        &self.b * &self.b - Int::from(4) * &self.a * &self.c
    }

    /// Form value a x^2 + b xy + c y^2 (half the lattice square).
    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Lattice square of x e1 + y e2.
    pub fn lattice_square(&self, x: &Int, y: &Int) -> Int {
        Int::from(2) * self.eval(x, y)
    }

    /// Lattice product of (x1, y1) and (x2, y2).
    pub fn lattice_dot(&self, x1: &Int, y1: &Int, x2: &Int, y2: &Int) -> Int {
        Int::from(2) * &self.a * x1 * x2
            + &self.b * (x1 * y2 + x2 * y1)
            + Int::from(2) * &self.c * y1 * y2
    }

    pub fn classify(&self) -> FormClass {
        let delta = self.delta();
        if delta.is_negative() {
            return FormClass::Definite;
        }
        match is_perfect_square(&delta) {
            Some(n) => FormClass::Square(n),
            None => FormClass::Nonsquare,
        }
    }
}

impl fmt::Display for BinaryEvenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            Int::from(2) * &self.a,
            self.b,
            self.b,
            Int::from(2) * &self.c
        )
    }
}

/// Images of the form basis inside U = Zf + Zg (f^2 = g^2 = 0, f.g = 1):
/// e1 -> s f + x g, e2 -> t f + y g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UEmbedding {
    pub s: Int,
    pub x: Int,
    pub t: Int,
    pub y: Int,
}

impl UEmbedding {
    /// The three Gram identities 2sx = 2a, sy + tx = b, 2ty = 2c.
    pub fn preserves(&self, form: &BinaryEvenForm) -> bool {
        &self.s * &self.x == form.a
            && &self.s * &self.y + &self.t * &self.x == form.b
            && &self.t * &self.y == form.c
    }
}

impl fmt::Display for UEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e1 -> {}f + {}g, e2 -> {}f + {}g",
            self.s, self.x, self.t, self.y
        )
    }
}

/// Embeds a square-discriminant form into U. With Delta = n^2 the product
/// ac factors as ((b+n)/2)((b-n)/2); extracting a coprime pair (x, y) from
/// (a, (b+n)/2) forces the complementary pair ((b-n)/2, c) to be t(x, y),
/// which assembles the embedding.
pub fn embed_into_u(form: &BinaryEvenForm) -> Result<UEmbedding> {
    let n = match form.classify() {
        FormClass::Square(n) => n,
        _ => return Err(Error::NoEmbedding(form.delta())),
    };
    // n = b mod 2 since Delta = b^2 mod 4.
    let p = (&form.b + &n) / Int::from(2);
    let q = (&form.b - &n) / Int::from(2);
    let emb = if form.a.is_zero() && p.is_zero() {
        if q.is_zero() && form.c.is_zero() {
            // Zero form.
            UEmbedding {
                s: Int::zero(),
                x: Int::zero(),
                t: Int::zero(),
                y: Int::zero(),
            }
        } else {
            // s = 0; read (x, y) off the second factor pair.
            let t = q.gcd(&form.c);
            UEmbedding {
                s: Int::zero(),
                x: &q / &t,
                t: t.clone(),
                y: &form.c / &t,
            }
        }
    } else {
        let s = form.a.gcd(&p);
        let x = &form.a / &s;
        let y = &p / &s;
        let t = if x.is_zero() {
            // a = 0, p != 0 forces q = 0; t is pinned by c = t y.
            &form.c / &y
        } else {
            &q / &x
        };
        UEmbedding { s, x, t, y }
    };
    if !emb.preserves(form) {
        return Err(Error::ContractViolation(format!(
            "embedding {emb} fails the Gram identity for {form}"
        )));
    }
    Ok(emb)
}

fn normalize_primitive(p: &Int, q: &Int) -> Option<(Int, Int)> {
    if p.is_zero() && q.is_zero() {
        return None;
    }
    let g = p.gcd(q);
    let (mut p, mut q) = (p / &g, q / &g);
    if p.is_negative() || (p.is_zero() && q.is_negative()) {
        p = -p;
        q = -q;
    }
    Some((p, q))
}

/// A primitive isotropic vector (p, q), i.e. a p^2 + b pq + c q^2 = 0, when
/// the discriminant is a square; `None` otherwise. Candidates come from the
/// U-embedding preimages of the two isotropic directions, and the returned
/// one is canonical (minimal sup-norm, then |q|, then |p|).
pub fn isotropic_vector(form: &BinaryEvenForm) -> Option<(Int, Int)> {
    let emb = embed_into_u(form).ok()?;
    let mut candidates: Vec<(Int, Int)> = Vec::new();
    // Preimage of the f direction: x p + y q = 0.
    if let Some(v) = normalize_primitive(&emb.y, &(-&emb.x)) {
        candidates.push(v);
    }
    // Preimage of the g direction: s p + t q = 0.
    if let Some(v) = normalize_primitive(&emb.t, &(-&emb.s)) {
        candidates.push(v);
    }
    if form.a.is_zero() {
        candidates.push((Int::one(), Int::zero()));
    }
    if form.c.is_zero() {
        candidates.push((Int::zero(), Int::one()));
    }
    candidates.retain(|(p, q)| form.eval(p, q).is_zero());
    candidates.sort_by_key(|(p, q)| (p.abs().max(q.abs()), q.abs(), p.abs()));
    candidates.into_iter().next()
}

/// Integral 2x2 matrix acting on column coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry2x2 {
    pub m11: Int,
    pub m12: Int,
    pub m21: Int,
    pub m22: Int,
}

impl Isometry2x2 {
    pub fn identity() -> Self {
        Isometry2x2 {
            m11: Int::one(),
            m12: Int::zero(),
            m21: Int::zero(),
            m22: Int::one(),
        }
    }

    pub fn det(&self) -> Int {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn trace(&self) -> Int {
        &self.m11 + &self.m22
    }

    pub fn apply(&self, x: &Int, y: &Int) -> (Int, Int) {
        (
            &self.m11 * x + &self.m12 * y,
            &self.m21 * x + &self.m22 * y,
        )
    }

    pub fn compose(&self, other: &Isometry2x2) -> Isometry2x2 {
        Isometry2x2 {
            m11: &self.m11 * &other.m11 + &self.m12 * &other.m21,
            m12: &self.m11 * &other.m12 + &self.m12 * &other.m22,
            m21: &self.m21 * &other.m11 + &self.m22 * &other.m21,
            m22: &self.m21 * &other.m12 + &self.m22 * &other.m22,
        }
    }

    pub fn pow(&self, e: u64) -> Isometry2x2 {
        let mut acc = Isometry2x2::identity();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m12.is_zero() && self.m21.is_zero() && self.m22.is_one()
    }

    fn mod_r(&self, r: &Int) -> Isometry2x2 {
        Isometry2x2 {
            m11: self.m11.mod_floor(r),
            m12: self.m12.mod_floor(r),
            m21: self.m21.mod_floor(r),
            m22: self.m22.mod_floor(r),
        }
    }

    /// M^t Q M = Q for the Gram matrix of the form.
    pub fn preserves(&self, form: &BinaryEvenForm) -> bool {
        let two_a = Int::from(2) * &form.a;
        let two_c = Int::from(2) * &form.c;
        // Columns of M are the images of e1, e2.
        let g11 = &two_a * &self.m11 * &self.m11
            + Int::from(2) * &form.b * &self.m11 * &self.m21
            + &two_c * &self.m21 * &self.m21;
        let g22 = &two_a * &self.m12 * &self.m12
            + Int::from(2) * &form.b * &self.m12 * &self.m22
            + &two_c * &self.m22 * &self.m22;
        let g12 = &two_a * &self.m11 * &self.m12
            + &form.b * (&self.m11 * &self.m22 + &self.m12 * &self.m21)
            + &two_c * &self.m21 * &self.m22;
        g11 == two_a && g22 == two_c && g12 == form.b
    }
}

impl fmt::Display for Isometry2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// Infinite-order isometry of a nonsquare-discriminant form: with
/// A = [[-b, -2c], [2a, b]] (A^2 = Delta I) and (t, u) the minimal solution
/// of t^2 - Delta u^2 = 4, the matrix g = (t I + u A)/2 is integral, has
/// determinant one, and preserves the form.
pub fn isometry_from_pell(form: &BinaryEvenForm) -> Result<Isometry2x2> {
    match form.classify() {
        FormClass::Nonsquare => {}
        _ => return Err(Error::NoIsometry(form.delta())),
    }
    let sol = pell4_fundamental(&form.delta())?;
    let two = Int::from(2);
    // t = u b mod 2, so all four entries are integral.
    let g = Isometry2x2 {
        m11: (&sol.t - &sol.u * &form.b) / &two,
        m12: -(&sol.u * &form.c),
        m21: &sol.u * &form.a,
        m22: (&sol.t + &sol.u * &form.b) / &two,
    };
    if !g.det().is_one() || !g.preserves(form) {
        return Err(Error::ContractViolation(format!(
            "Pell isometry {g} fails invariants for {form}"
        )));
    }
    Ok(g)
}

/// Smallest N >= 1 with g^N = I mod r, returning (g^N, N); if the resulting
/// power has negative trace it is squared once more (doubling N) so that the
/// expanding eigendirection is positive.
pub fn stabilize_mod(g: &Isometry2x2, r: &Int) -> Result<(Isometry2x2, u64)> {
    if !r.is_positive() {
        return Err(Error::InconsistentInput(format!(
            "stabilize_mod needs positive modulus, got {r}"
        )));
    }
    let mut n: u64 = 1;
    if r > &Int::one() {
        let g_mod = g.mod_r(r);
        let mut acc = g_mod.clone();
        // |SL2(Z/r)| <= r^3 bounds the search.
        let cap = match u64::try_from(r.clone()) {
            Ok(v) => v.saturating_pow(3).max(1),
            Err(_) => u64::MAX,
        };
        while !acc.is_identity() {
            if n >= cap {
                return Err(Error::ContractViolation(format!(
                    "no stabilizing exponent below {cap} for {g} mod {r}; is det(g) = 1?"
                )));
            }
            acc = acc.compose(&g_mod).mod_r(r);
            n += 1;
        }
    }
    let mut power = g.pow(n);
    if power.trace().is_negative() {
        power = power.compose(&power);
        n *= 2;
    }
    Ok((power, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn classification() {
        // (1,2,0): Delta = 4.
        assert_eq!(
            BinaryEvenForm::from_i64s(1, 2, 0).classify(),
            FormClass::Square(big(2))
        );
        // (1, 2+N, 1) at N = 1: Delta = 5.
        assert_eq!(
            BinaryEvenForm::from_i64s(1, 3, 1).classify(),
            FormClass::Nonsquare
        );
        // U itself.
        assert_eq!(
            BinaryEvenForm::from_i64s(0, 1, 0).classify(),
            FormClass::Square(big(1))
        );
        // Positive definite.
        assert_eq!(
            BinaryEvenForm::from_i64s(1, 0, 1).classify(),
            FormClass::Definite
        );
        // Degenerate goes to Square(0).
        assert_eq!(
            BinaryEvenForm::from_i64s(0, 0, 0).classify(),
            FormClass::Square(big(0))
        );
    }

    #[test]
    fn embedding_worked_examples() {
        let form = BinaryEvenForm::from_i64s(1, 2, 0);
        let emb = embed_into_u(&form).unwrap();
        assert_eq!(
            emb,
            UEmbedding {
                s: big(1),
                x: big(1),
                t: big(0),
                y: big(2)
            }
        );
        assert!(emb.preserves(&form));

        let u = BinaryEvenForm::from_i64s(0, 1, 0);
        let emb = embed_into_u(&u).unwrap();
        assert_eq!(
            emb,
            UEmbedding {
                s: big(1),
                x: big(0),
                t: big(0),
                y: big(1)
            }
        );

        assert!(matches!(
            embed_into_u(&BinaryEvenForm::from_i64s(1, 3, 1)),
            Err(Error::NoEmbedding(_))
        ));
    }

    #[test]
    fn embedding_sign_and_degenerate_cases() {
        for (a, b, c) in [
            (-1i64, 0, 1),
            (0, -3, 2),
            (0, 5, 0),
            (2, 2, 0),
            (0, 0, -3),
            (6, 18, 12),
            (1, -2, 0),
            (-2, 0, 2),
            (0, 0, 0),
        ] {
            let form = BinaryEvenForm::from_i64s(a, b, c);
            if let FormClass::Square(_) = form.classify() {
                let emb = embed_into_u(&form).unwrap();
                assert!(emb.preserves(&form), "({a},{b},{c}) -> {emb}");
            }
        }
    }

    #[test]
    fn isotropic_vectors() {
        assert_eq!(
            isotropic_vector(&BinaryEvenForm::from_i64s(1, 2, 0)),
            Some((big(0), big(1)))
        );
        assert_eq!(
            isotropic_vector(&BinaryEvenForm::from_i64s(0, 1, 0)),
            Some((big(1), big(0)))
        );
        assert_eq!(isotropic_vector(&BinaryEvenForm::from_i64s(1, 3, 1)), None);
        // Every returned vector is primitive and isotropic.
        for (a, b, c) in [(1i64, 2, 0), (0, 1, 0), (1, 4, 3), (-3, 9, 0), (2, 6, 4)] {
            let form = BinaryEvenForm::from_i64s(a, b, c);
            if let Some((p, q)) = isotropic_vector(&form) {
                assert!(form.eval(&p, &q).is_zero());
                assert!(p.gcd(&q).is_one());
            }
        }
    }

    #[test]
    fn nonsquare_forms_have_no_small_isotropic_vectors() {
        for (a, b, c) in [(1i64, 3, 1), (1, 0, -2), (-1, 34, -5)] {
            let form = BinaryEvenForm::from_i64s(a, b, c);
            assert_eq!(form.classify(), FormClass::Nonsquare);
            assert_eq!(isotropic_vector(&form), None);
            for p in -50i64..=50 {
                for q in -50i64..=50 {
                    if p == 0 && q == 0 {
                        continue;
                    }
                    assert!(!form.eval(&big(p), &big(q)).is_zero(), "({p},{q})");
                }
            }
        }
    }

    #[test]
    fn pell_isometry_worked_examples() {
        // (1, 0, -2): Delta = 8, pell4 = (6, 2), g = [[3,4],[2,3]].
        let form = BinaryEvenForm::from_i64s(1, 0, -2);
        let g = isometry_from_pell(&form).unwrap();
        assert_eq!(
            g,
            Isometry2x2 {
                m11: big(3),
                m12: big(4),
                m21: big(2),
                m22: big(3)
            }
        );
        assert!(g.preserves(&form));
        assert!(g.det().is_one());

        // (1, 3, 1): Delta = 5, pell4 = (3, 1), g = (3I + A)/2 = [[0,-1],[1,3]].
        let form = BinaryEvenForm::from_i64s(1, 3, 1);
        let g = isometry_from_pell(&form).unwrap();
        assert_eq!(
            g,
            Isometry2x2 {
                m11: big(0),
                m12: big(-1),
                m21: big(1),
                m22: big(3)
            }
        );
        assert!(g.preserves(&form));

        assert!(matches!(
            isometry_from_pell(&BinaryEvenForm::from_i64s(1, 2, 0)),
            Err(Error::NoIsometry(_))
        ));
    }

    #[test]
    fn pell_isometry_has_infinite_order() {
        let form = BinaryEvenForm::from_i64s(1, 0, -2);
        let g = isometry_from_pell(&form).unwrap();
        let mut acc = Isometry2x2::identity();
        for _ in 0..12 {
            acc = acc.compose(&g);
            assert!(!acc.is_identity());
            assert!(acc.preserves(&form));
        }
    }

    #[test]
    fn stabilization() {
        let g = Isometry2x2 {
            m11: big(3),
            m12: big(4),
            m21: big(2),
            m22: big(3),
        };
        let (p, n) = stabilize_mod(&g, &big(1)).unwrap();
        assert_eq!((p, n), (g.clone(), 1));
        // g mod 2 is already the identity.
        let (p, n) = stabilize_mod(&g, &big(2)).unwrap();
        assert_eq!((p, n), (g.clone(), 1));

        // [[0,-1],[1,3]] mod 3 needs the fourth power.
        let h = Isometry2x2 {
            m11: big(0),
            m12: big(-1),
            m21: big(1),
            m22: big(3),
        };
        let (p, n) = stabilize_mod(&h, &big(3)).unwrap();
        assert_eq!(n, 4);
        assert_eq!(p, h.pow(4));
        assert!(p.mod_r(&big(3)).is_identity());
        assert!(!p.trace().is_negative());
        // N divides |SL2(Z/3)| = 24.
        assert_eq!(24 % n, 0);
    }

    #[test]
    fn stabilization_squares_negative_trace() {
        // -I stabilizes mod 5 at N = 2 with g^2 = I (positive trace already);
        // mod 1 the power is -I itself, trace -2, so it gets squared.
        let neg_i = Isometry2x2 {
            m11: big(-1),
            m12: big(0),
            m21: big(0),
            m22: big(-1),
        };
        let (p, n) = stabilize_mod(&neg_i, &big(5)).unwrap();
        assert!(p.is_identity());
        assert_eq!(n, 2);
        let (p, n) = stabilize_mod(&neg_i, &big(1)).unwrap();
        assert!(p.is_identity());
        assert_eq!(n, 2);
    }
}
