//! The weak Brill-Noether decision procedure: classify (surface, H, v) into
//! Holds / Fails / Undetermined and compute the cohomology (h0, h1, h2) of
//! the general semistable sheaf.
//!
//! Decision outline for r > 0, v^2 >= 0 even:
//!   isotropic v        -> holds, semi-homogeneous profile
//!   non-primitive v    -> holds
//!   ξ.H > 0            -> holds when v^2 + 2 > 2r, else decomposition search
//!   ξ.H = 0            -> holds with (0, -a, 0)
//!   ξ.H < 0            -> twisted shapes (r,0,-1)e^eta and rank one decide
//!                         directly; otherwise dualize and search
//!
//! Every emitted profile satisfies h0 - h1 + h2 = χ(v) = a; this is asserted
//! unconditionally at construction.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decomp::{search_decompositions, verify_decomposition, IsotropicDecomposition, SearchBound, DEFAULT_COORD_BOX};
use crate::lattice::{DivisorClass, SurfaceContext};
use crate::mukai::{mukai_square, special_form, MukaiVector, SpecialForm};
use crate::rank2::BinaryEvenForm;
use crate::{Error, Int, Result};

/// Cohomology of the general sheaf; entries are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub h0: Int,
    pub h1: Int,
    pub h2: Int,
}

impl CohomologyProfile {
    /// Asserts nonnegativity and Euler-characteristic conservation
    /// h0 - h1 + h2 = chi. Violations are bugs, not inputs.
    fn checked(h0: Int, h1: Int, h2: Int, chi: &Int) -> Self {
        assert!(
            !h0.is_negative() && !h1.is_negative() && !h2.is_negative(),
            "negative cohomology dimension ({h0}, {h1}, {h2})"
        );
        assert_eq!(
            &(&h0 - &h1 + &h2),
            chi,
            "profile ({h0}, {h1}, {h2}) violates Euler characteristic {chi}"
        );
        CohomologyProfile { h0, h1, h2 }
    }

    pub fn euler(&self) -> Int {
        &self.h0 - &self.h1 + &self.h2
    }

    pub fn nonzero_entries(&self) -> usize {
        [&self.h0, &self.h1, &self.h2]
            .iter()
            .filter(|h| !h.is_zero())
            .count()
    }
}

impl fmt::Display for CohomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}

/// Why weak Brill-Noether holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoldsReason {
    SemiHomogeneous,
    NonPrimitive,
    SquareBound,
    RankOneNs,
    SquareDiscriminantNs,
    NoDecompositionInBox,
    GenericLineBundleCase,
    ZeroSlope,
}

impl HoldsReason {
    pub fn tag(&self) -> &'static str {
        match self {
            HoldsReason::SemiHomogeneous => "semi-homogeneous",
            HoldsReason::NonPrimitive => "non-primitive",
            HoldsReason::SquareBound => "square-bound",
            HoldsReason::RankOneNs => "rank-one-ns",
            HoldsReason::SquareDiscriminantNs => "square-discriminant-ns",
            HoldsReason::NoDecompositionInBox => "no-decomposition-in-box",
            HoldsReason::GenericLineBundleCase => "generic-line-bundle-case",
            HoldsReason::ZeroSlope => "zero-slope",
        }
    }
}

/// Witness of failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Decomposition(IsotropicDecomposition),
    /// v = (r, 0, -1).e^eta with eta.H < 0 and eta^2 > 0.
    TwistedRank { eta: DivisorClass },
    /// v = (1, 0, -l).e^eta with l > 0, eta.H < 0 and eta^2 > 0.
    RankOneTwist { eta: DivisorClass, colength: Int },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WbnStatus {
    Holds { reason: HoldsReason, decisive: bool },
    Fails,
    Undetermined,
}

/// Outcome of `decide`: the three-valued status, the cohomology profile of
/// the general sheaf (absent only when undetermined), the failure
/// certificate, the search box consulted (when a search ran), and warnings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WbnVerdict {
    pub status: WbnStatus,
    pub profile: Option<CohomologyProfile>,
    pub certificate: Option<Certificate>,
    pub search_box: Option<u32>,
    pub warnings: Vec<String>,
}

impl WbnVerdict {
    pub fn is_holds(&self) -> bool {
        matches!(self.status, WbnStatus::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self.status, WbnStatus::Fails)
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self.status, WbnStatus::Undetermined)
    }

    fn holds(reason: HoldsReason, decisive: bool, profile: CohomologyProfile) -> Self {
        WbnVerdict {
            status: WbnStatus::Holds { reason, decisive },
            profile: Some(profile),
            certificate: None,
            search_box: None,
            warnings: Vec::new(),
        }
    }
}

/// Profile of a general sheaf in a moduli space that satisfies weak
/// Brill-Noether: χ <= 0 gives (0, -χ, 0); χ > 0 gives (χ, 0, 0) or
/// (0, 0, χ) according to the sign of ξ.H. Positive χ with ξ.H = 0 is
/// impossible on a surface (Hodge index) and is rejected.
pub fn generic_profile(v: &MukaiVector, xi_dot_h: &Int) -> Result<CohomologyProfile> {
    let chi = &v.a;
    if !chi.is_positive() {
        return Ok(CohomologyProfile::checked(
            Int::zero(),
            -chi,
            Int::zero(),
            chi,
        ));
    }
    if xi_dot_h.is_positive() {
        Ok(CohomologyProfile::checked(
            chi.clone(),
            Int::zero(),
            Int::zero(),
            chi,
        ))
    } else if xi_dot_h.is_negative() {
        Ok(CohomologyProfile::checked(
            Int::zero(),
            Int::zero(),
            chi.clone(),
            chi,
        ))
    } else {
        Err(Error::InconsistentInput(format!(
            "positive Euler characteristic {chi} with ξ.H = 0 contradicts the Hodge index bound"
        )))
    }
}

/// Cohomology of a general semistable sheaf with isotropic Mukai vector,
/// determined by the signs of ξ^2 and ξ.H. When ξ^2 = 0 the general twist
/// has no cohomology at all.
pub fn semi_homogeneous_cohomology(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
) -> Result<CohomologyProfile> {
    let lat = ctx.lattice();
    if !v.r.is_positive() {
        return Err(Error::OutOfScope(format!(
            "semi-homogeneous profile needs positive rank, got {}",
            v.r
        )));
    }
    let v_sq = mukai_square(lat, v)?;
    if !v_sq.is_zero() {
        return Err(Error::InconsistentInput(format!(
            "Mukai square {v_sq} is nonzero; the sheaf is not semi-homogeneous"
        )));
    }
    let xi_sq = lat.square(&v.xi)?;
    let xi_h = lat.dot(&v.xi, h)?;
    let chi = &v.a;
    if xi_sq.is_positive() {
        if xi_h.is_positive() {
            Ok(CohomologyProfile::checked(
                chi.clone(),
                Int::zero(),
                Int::zero(),
                chi,
            ))
        } else if xi_h.is_negative() {
            Ok(CohomologyProfile::checked(
                Int::zero(),
                Int::zero(),
                chi.clone(),
                chi,
            ))
        } else {
            Err(Error::InconsistentInput(
                "ξ^2 > 0 with ξ.H = 0 violates the Hodge index theorem".into(),
            ))
        }
    } else if xi_sq.is_negative() {
        Ok(CohomologyProfile::checked(
            Int::zero(),
            -chi,
            Int::zero(),
            chi,
        ))
    } else {
        // ξ^2 = 0 forces a = 0; the general twist has no cohomology.
        if !chi.is_zero() {
            return Err(Error::InconsistentInput(format!(
                "isotropic vector with ξ^2 = 0 must have a = 0, got {chi}"
            )));
        }
        Ok(CohomologyProfile::checked(
            Int::zero(),
            Int::zero(),
            Int::zero(),
            chi,
        ))
    }
}

enum PositiveSlopeOutcome {
    Fails(Box<IsotropicDecomposition>),
    Holds {
        reason: HoldsReason,
        decisive: bool,
        sidelined: usize,
    },
    Undetermined {
        sidelined: usize,
    },
}

/// H.(r2 ξ1 - r1 ξ2) for a certificate; nonpositive exactly when the
/// positive-χ factor can sit as a subsheaf of an H-semistable sheaf
/// (the slope condition mu(v1) <= mu(v)).
fn wall_pairing(
    ctx: &SurfaceContext,
    h: &DivisorClass,
    dec: &IsotropicDecomposition,
) -> Result<Int> {
    let w = dec.v1.xi.scaled(&dec.v2.r).sub(&dec.v2.xi.scaled(&dec.v1.r));
    ctx.lattice().dot(&w, h)
}

/// Steps shared between the ξ.H > 0 branch and the dualized ξ.H < 0 branch:
/// the square bound, then the bounded decomposition search with the
/// decisiveness rules for definite and square-discriminant lattices.
///
/// A found decomposition only witnesses failure when its positive-χ factor
/// is on the subobject side for H, i.e. H.(r2 ξ1 - r1 ξ2) <= 0; certificates
/// on the wrong side of their wall are sidelined and counted.
fn positive_slope_outcome(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    bound: &SearchBound,
) -> Result<PositiveSlopeOutcome> {
    let v_sq = mukai_square(ctx.lattice(), v)?;
    let two = Int::from(2);
    if &v_sq + &two > &two * &v.r {
        return Ok(PositiveSlopeOutcome::Holds {
            reason: HoldsReason::SquareBound,
            decisive: true,
            sidelined: 0,
        });
    }
    let found = search_decompositions(ctx, v, h, bound)?;
    let total = found.len();
    let mut on_wall = None;
    let mut compatible = None;
    for dec in found {
        let side = wall_pairing(ctx, h, &dec)?;
        if side.is_negative() {
            compatible = Some(dec);
            break;
        }
        if side.is_zero() && on_wall.is_none() {
            on_wall = Some(dec);
        }
    }
    if let Some(dec) = compatible.or(on_wall) {
        return Ok(PositiveSlopeOutcome::Fails(Box::new(dec)));
    }
    let sidelined = total;
    let lat = ctx.lattice();
    if lat.rank() == 1 {
        return Ok(PositiveSlopeOutcome::Holds {
            reason: HoldsReason::RankOneNs,
            decisive: true,
            sidelined,
        });
    }
    if lat.rank() == 2 {
        let gram = lat.gram();
        let form = BinaryEvenForm::from_gram(&gram[0][0], &gram[0][1], &gram[1][1])?;
        if matches!(form.classify(), crate::rank2::FormClass::Square(_)) {
            return Ok(PositiveSlopeOutcome::Holds {
                reason: HoldsReason::SquareDiscriminantNs,
                decisive: true,
                sidelined,
            });
        }
    }
    if bound.coord_box < DEFAULT_COORD_BOX {
        Ok(PositiveSlopeOutcome::Undetermined { sidelined })
    } else {
        Ok(PositiveSlopeOutcome::Holds {
            reason: HoldsReason::NoDecompositionInBox,
            decisive: false,
            sidelined,
        })
    }
}

fn sidelined_warning(sidelined: usize) -> Option<String> {
    if sidelined > 0 {
        Some(format!(
            "{sidelined} decomposition(s) found in the box lie on the wrong side of their wall \
             for this polarization and do not witness failure"
        ))
    } else {
        None
    }
}

fn wall_warning(
    ctx: &SurfaceContext,
    h: &DivisorClass,
    dec: &IsotropicDecomposition,
) -> Result<Option<String>> {
    let lat = ctx.lattice();
    let w = dec.v1.xi.scaled(&dec.v2.r).sub(&dec.v2.xi.scaled(&dec.v1.r));
    if lat.dot(&w, h)?.is_zero() {
        Ok(Some(format!(
            "non-generic polarization: H lies on the wall induced by the certificate (H.({w}) = 0)"
        )))
    } else {
        Ok(None)
    }
}

/// Decides weak Brill-Noether for M_{X,H}(v) and computes the cohomology of
/// the general sheaf. Requires r > 0, even v^2 >= 0, and H in the positive
/// cone. The certificate, when present, verifies against the inputs.
pub fn decide(
    ctx: &SurfaceContext,
    v: &MukaiVector,
    h: &DivisorClass,
    bound: &SearchBound,
) -> Result<WbnVerdict> {
    let lat = ctx.lattice();
    if !v.r.is_positive() {
        return Err(Error::OutOfScope(format!(
            "weak Brill-Noether decision needs positive rank, got {}",
            v.r
        )));
    }
    let v_sq = mukai_square(lat, v)?;
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
    let xi_h = lat.dot(&v.xi, h)?;

    if v_sq.is_zero() {
        let profile = semi_homogeneous_cohomology(ctx, v, h)?;
        return Ok(WbnVerdict::holds(HoldsReason::SemiHomogeneous, true, profile));
    }
    if !v.is_primitive() {
        let profile = generic_profile(v, &xi_h)?;
        return Ok(WbnVerdict::holds(HoldsReason::NonPrimitive, true, profile));
    }

    if xi_h.is_zero() {
        // ξ.H = 0 forces ξ^2 <= 0 (Hodge index) and hence χ = a <= 0.
        let profile = generic_profile(v, &xi_h)?;
        return Ok(WbnVerdict::holds(HoldsReason::ZeroSlope, true, profile));
    }

    if xi_h.is_positive() {
        return match positive_slope_outcome(ctx, v, h, bound)? {
            PositiveSlopeOutcome::Fails(dec) => {
                let dec = *dec;
                let chi = &v.a;
                let h0 = &dec.l1 * &dec.v1.a;
                let h1 = -(&dec.l2 * &dec.v2.a);
                let profile = CohomologyProfile::checked(h0, h1, Int::zero(), chi);
                let mut warnings = Vec::new();
                if let Some(w) = wall_warning(ctx, h, &dec)? {
                    warnings.push(w);
                }
                Ok(WbnVerdict {
                    status: WbnStatus::Fails,
                    profile: Some(profile),
                    certificate: Some(Certificate::Decomposition(dec)),
                    search_box: Some(bound.coord_box),
                    warnings,
                })
            }
            PositiveSlopeOutcome::Holds {
                reason,
                decisive,
                sidelined,
            } => {
                let mut verdict =
                    WbnVerdict::holds(reason, decisive, generic_profile(v, &xi_h)?);
                verdict.search_box = Some(bound.coord_box);
                verdict.warnings.extend(sidelined_warning(sidelined));
                Ok(verdict)
            }
            PositiveSlopeOutcome::Undetermined { sidelined } => Ok(WbnVerdict {
                status: WbnStatus::Undetermined,
                profile: None,
                certificate: None,
                search_box: Some(bound.coord_box),
                warnings: sidelined_warning(sidelined).into_iter().collect(),
            }),
        };
    }

    // ξ.H < 0 from here on.
    let special = special_form(lat, v)?;
    if let Some(SpecialForm::RankOne { eta, colength }) = &special {
        // v = (1, 0, -l).e^ξ; failure needs ξ^2 > 0 and l > 0.
        let xi_sq = lat.square(&v.xi)?;
        if xi_sq.is_positive() && colength.is_positive() {
            let chi = &v.a;
            let half = &xi_sq / Int::from(2);
            let profile = CohomologyProfile::checked(Int::zero(), &half - chi, half.clone(), chi);
            return Ok(WbnVerdict {
                status: WbnStatus::Fails,
                profile: Some(profile),
                certificate: Some(Certificate::RankOneTwist {
                    eta: eta.clone(),
                    colength: colength.clone(),
                }),
                search_box: None,
                warnings: Vec::new(),
            });
        }
        let profile = generic_profile(v, &xi_h)?;
        return Ok(WbnVerdict::holds(
            HoldsReason::GenericLineBundleCase,
            true,
            profile,
        ));
    }
    if let Some(SpecialForm::TwistedRank { eta }) = &special {
        // v = (r, 0, -1).e^eta; failure needs eta.H < 0 and eta^2 > 0.
        let eta_sq = lat.square(eta)?;
        let eta_h = lat.dot(eta, h)?;
        if eta_h.is_negative() && eta_sq.is_positive() {
            let chi = &v.a;
            let profile = CohomologyProfile::checked(
                Int::zero(),
                Int::one(),
                chi + Int::one(),
                chi,
            );
            return Ok(WbnVerdict {
                status: WbnStatus::Fails,
                profile: Some(profile),
                certificate: Some(Certificate::TwistedRank { eta: eta.clone() }),
                search_box: None,
                warnings: Vec::new(),
            });
        }
        let profile = generic_profile(v, &xi_h)?;
        return Ok(WbnVerdict::holds(
            HoldsReason::GenericLineBundleCase,
            true,
            profile,
        ));
    }

    // No twisted shape: dualize. v^∨ = (r, -ξ, a) has positive slope, the
    // same square, and the same primitivity, and weak Brill-Noether for v
    // and v^∨ stand or fall together; profiles reverse.
    let dual = v.dual();
    match positive_slope_outcome(ctx, &dual, h, bound)? {
        PositiveSlopeOutcome::Fails(dual_dec) => {
            let dual_dec = *dual_dec;
            let dec = IsotropicDecomposition {
                v1: dual_dec.v1.dual(),
                v2: dual_dec.v2.dual(),
                l1: dual_dec.l1.clone(),
                l2: dual_dec.l2.clone(),
            };
            assert!(
                verify_decomposition(ctx, v, h, &dec)?,
                "dualized certificate fails verification"
            );
            let chi = &v.a;
            let h1 = -(&dec.l2 * &dec.v2.a);
            let h2 = &dec.l1 * &dec.v1.a;
            let profile = CohomologyProfile::checked(Int::zero(), h1, h2, chi);
            let mut warnings = Vec::new();
            if let Some(w) = wall_warning(ctx, h, &dec)? {
                warnings.push(w);
            }
            Ok(WbnVerdict {
                status: WbnStatus::Fails,
                profile: Some(profile),
                certificate: Some(Certificate::Decomposition(dec)),
                search_box: Some(bound.coord_box),
                warnings,
            })
        }
        PositiveSlopeOutcome::Holds {
            reason,
            decisive,
            sidelined,
        } => {
            let mut verdict = WbnVerdict::holds(reason, decisive, generic_profile(v, &xi_h)?);
            verdict.search_box = Some(bound.coord_box);
            verdict.warnings.extend(sidelined_warning(sidelined));
            Ok(verdict)
        }
        PositiveSlopeOutcome::Undetermined { sidelined } => Ok(WbnVerdict {
            status: WbnStatus::Undetermined,
            profile: None,
            certificate: None,
            search_box: Some(bound.coord_box),
            warnings: sidelined_warning(sidelined).into_iter().collect(),
        }),
    }
}
