//! Admissible `(a, b)` parameter regions for the operator variants.

use crate::numerics::Rational;

use super::EvalError;

/// Shape of the admissible region; see the module docs for the half-plane
/// descriptions in endpoint coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionKind {
    Cone { alpha: Rational },
    TruncatedCone { alpha: Rational, radius: Rational },
    Diamond { radius: Rational },
    RightHalf { reach: Rational },
    LeftHalf { reach: Rational },
}

/// A region kind anchored at its evaluation point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    kind: RegionKind,
    base: Rational,
}

impl Region {
    pub fn cone(alpha: Rational, base: Rational) -> Result<Self, EvalError> {
        if alpha.is_negative() {
            return Err(EvalError::NegativeAlpha);
        }
        Ok(Region {
            kind: RegionKind::Cone { alpha },
            base,
        })
    }

    pub fn truncated_cone(
        alpha: Rational,
        radius: Rational,
        base: Rational,
    ) -> Result<Self, EvalError> {
        if alpha.is_negative() {
            return Err(EvalError::NegativeAlpha);
        }
        if !radius.is_positive() {
            return Err(EvalError::NonpositiveRadius);
        }
        Ok(Region {
            kind: RegionKind::TruncatedCone { alpha, radius },
            base,
        })
    }

    pub fn diamond(radius: Rational, base: Rational) -> Result<Self, EvalError> {
        if !radius.is_positive() {
            return Err(EvalError::NonpositiveRadius);
        }
        Ok(Region {
            kind: RegionKind::Diamond { radius },
            base,
        })
    }

    pub fn right_half(reach: Rational, base: Rational) -> Result<Self, EvalError> {
        if !reach.is_positive() {
            return Err(EvalError::NonpositiveReach);
        }
        Ok(Region {
            kind: RegionKind::RightHalf { reach },
            base,
        })
    }

    pub fn left_half(reach: Rational, base: Rational) -> Result<Self, EvalError> {
        if !reach.is_positive() {
            return Err(EvalError::NonpositiveReach);
        }
        Ok(Region {
            kind: RegionKind::LeftHalf { reach },
            base,
        })
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    /// Closed-region membership test for an interval `[a, b]`, `a < b`.
    pub fn admits(&self, a: &Rational, b: &Rational) -> bool {
        if a >= b {
            return false;
        }
        let x = &self.base;
        let two_x = Rational::from_int(2) * x;
        let cone_ok = |alpha: &Rational| {
            let one = Rational::one();
            let plus = &one + alpha;
            let minus = &one - alpha;
            &plus * a + &minus * b <= two_x && &minus * a + &plus * b >= two_x
        };
        match &self.kind {
            RegionKind::Cone { alpha } => cone_ok(alpha),
            RegionKind::TruncatedCone { alpha, radius } => {
                cone_ok(alpha) && b - a <= Rational::from_int(2) * radius
            }
            RegionKind::Diamond { radius } => {
                let two_r = Rational::from_int(2) * radius;
                &(x - &two_r) <= a && a <= x && x <= b && b <= &(x + &two_r)
            }
            RegionKind::RightHalf { reach } => {
                a == x && b - a <= Rational::from_int(2) * reach
            }
            RegionKind::LeftHalf { reach } => {
                b == x && b - a <= Rational::from_int(2) * reach
            }
        }
    }

    /// Whether the region is unbounded (only the untruncated cone is).
    pub fn is_unbounded(&self) -> bool {
        matches!(self.kind, RegionKind::Cone { .. })
    }

    /// The cone opening used for the `t -> 0` normalization floor, clamped to
    /// `[0, 1]`: for `alpha >= 1` the floor is the larger one-sided limit,
    /// which is exactly the `t -> 0` limsup in that range.
    pub fn floor_alpha(&self) -> Option<Rational> {
        match &self.kind {
            RegionKind::Cone { alpha } | RegionKind::TruncatedCone { alpha, .. } => {
                Some(alpha.clone().min(Rational::one()))
            }
            RegionKind::Diamond { .. } => Some(Rational::one()),
            RegionKind::RightHalf { .. } | RegionKind::LeftHalf { .. } => None,
        }
    }
}
