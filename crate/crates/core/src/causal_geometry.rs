//! Exact causal predicates on flat spacetime.
//!
//! Signature convention is `(+,-,-,-)` with `c = 1`; coordinate 0 is time.
//! "Future-pointing" means a positive time component of the displacement.
//! Everything here is a pure function of exact rational inputs, so null-cone
//! membership (`Q = 0`) is decided without tolerance.

use crate::error::Error;
use crate::scalar::Scalar;

/// An event `x = (x0, x1, x2, x3)` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Event4 {
    coords: [Scalar; 4],
}

impl Event4 {
    pub fn new(x0: Scalar, x1: Scalar, x2: Scalar, x3: Scalar) -> Self {
        Event4 {
            coords: [x0, x1, x2, x3],
        }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Event4 {
            coords: [
                Scalar::from_int(c[0]),
                Scalar::from_int(c[1]),
                Scalar::from_int(c[2]),
                Scalar::from_int(c[3]),
            ],
        }
    }

    pub fn origin() -> Self {
        Event4::from_ints([0, 0, 0, 0])
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    /// Canonical text form `x0,x1,x2,x3` with each coordinate as `p/q`.
    pub fn canonical_text(&self) -> String {
        let c = &self.coords;
        format!("{},{},{},{}", c[0], c[1], c[2], c[3])
    }
}

/// A coordinate difference `y − x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Displacement {
    d: [Scalar; 4],
}

impl Displacement {
    pub fn new(d0: Scalar, d1: Scalar, d2: Scalar, d3: Scalar) -> Self {
        Displacement {
            d: [d0, d1, d2, d3],
        }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Displacement {
            d: [
                Scalar::from_int(c[0]),
                Scalar::from_int(c[1]),
                Scalar::from_int(c[2]),
                Scalar::from_int(c[3]),
            ],
        }
    }

    /// `y − x`, componentwise.
    pub fn between(x: &Event4, y: &Event4) -> Self {
        Displacement {
            d: [
                y.coord(0) - x.coord(0),
                y.coord(1) - x.coord(1),
                y.coord(2) - x.coord(2),
                y.coord(3) - x.coord(3),
            ],
        }
    }

    pub fn component(&self, i: usize) -> &Scalar {
        &self.d[i]
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        Displacement {
            d: [
                t * &self.d[0],
                t * &self.d[1],
                t * &self.d[2],
                t * &self.d[3],
            ],
        }
    }
}

/// Position of a displacement relative to the light cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeClass {
    Zero,
    FutureTimelike,
    PastTimelike,
    FutureNull,
    PastNull,
    Spacelike,
}

/// The quadratic form `Q(d) = d0² − d1² − d2² − d3²`.
pub fn q_form(d: &Displacement) -> Scalar {
    d.component(0).square()
        - d.component(1).square()
        - d.component(2).square()
        - d.component(3).square()
}

/// Classify `y` relative to the cone structure at `x`.
///
/// `Zero` iff `y = x`; otherwise by the signs of `Q(y−x)` and of the time
/// component. `Q > 0` or `Q = 0` with `y ≠ x` forces a nonzero time
/// component, so the future/past split is total.
pub fn classify(x: &Event4, y: &Event4) -> ConeClass {
    let d = Displacement::between(x, y);
    if d.is_zero() {
        return ConeClass::Zero;
    }
    let q = q_form(&d);
    let future = d.component(0).is_positive();
    match q.signum() {
        1 => {
            if future {
                ConeClass::FutureTimelike
            } else {
                ConeClass::PastTimelike
            }
        }
        0 => {
            if future {
                ConeClass::FutureNull
            } else {
                ConeClass::PastNull
            }
        }
        _ => ConeClass::Spacelike,
    }
}

/// Chronological order `x ≪ y`: `y` strictly inside the future null cone of
/// `x`. Irreflexive.
pub fn chron(x: &Event4, y: &Event4) -> bool {
    classify(x, y) == ConeClass::FutureTimelike
}

/// Causal order `x ≺ y`: `y` inside or on the future null cone of `x`.
/// Reflexive.
pub fn causal(x: &Event4, y: &Event4) -> bool {
    matches!(
        classify(x, y),
        ConeClass::Zero | ConeClass::FutureTimelike | ConeClass::FutureNull
    )
}

/// Horismos `x → y`: `y` on the future null cone of `x`.
///
/// Both conventions are exposed: the reflexive relation of the causal-order
/// triple, and the irreflexive one used when building the interval topology.
pub fn horismos(x: &Event4, y: &Event4, reflexive: bool) -> bool {
    match classify(x, y) {
        ConeClass::FutureNull => true,
        ConeClass::Zero => reflexive,
        _ => false,
    }
}

/// Squared Euclidean distance `Σ (yᵢ − xᵢ)²`.
pub fn euclidean_dist2(x: &Event4, y: &Event4) -> Scalar {
    let d = Displacement::between(x, y);
    d.component(0).square()
        + d.component(1).square()
        + d.component(2).square()
        + d.component(3).square()
}

/// Open-ball membership: `y ∈ B_ε(center)` iff `Σ (yᵢ − cᵢ)² < ε²`.
///
/// The radius is carried squared (`eps2`) so the comparison stays rational.
pub fn in_ball(y: &Event4, center: &Event4, eps2: &Scalar) -> bool {
    euclidean_dist2(center, y) < *eps2
}

/// Zeeman neighborhood membership: `y ∈ Z_ε(x) = B_ε(x) ∩ (C^T(x) ∪ C^S(x))`.
///
/// Computed from its own formula — an open ball with the light cone removed
/// and the apex retained — not by composing the other two predicates.
pub fn in_zeeman_nbhd(y: &Event4, x: &Event4, eps2: &Scalar) -> bool {
    let d = Displacement::between(x, y);
    let dist2 = d.component(0).square()
        + d.component(1).square()
        + d.component(2).square()
        + d.component(3).square();
    if dist2 >= *eps2 {
        return false;
    }
    // apex: x ∈ C^T(x) by definition
    d.is_zero() || !q_form(&d).is_zero()
}

/// Horismos-ball membership: `y ∈ A(x) = (M − C^L(x)) ∪ {x}`.
///
/// The full null cone (both sheets) is removed and the apex replaced.
pub fn in_horismos_ball(y: &Event4, x: &Event4) -> bool {
    let d = Displacement::between(x, y);
    d.is_zero() || !q_form(&d).is_zero()
}

/// Time or space axis through a base event.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxisKind {
    Time,
    Space,
}

/// A straight line `base + t · direction` with a timelike or spacelike
/// direction.
#[derive(Clone, Debug)]
pub struct Axis {
    base: Event4,
    direction: Displacement,
    kind: AxisKind,
}

impl Axis {
    /// Validates the kind against the sign of `Q(direction)`.
    pub fn new(base: Event4, direction: Displacement, kind: AxisKind) -> Result<Self, Error> {
        if direction.is_zero() {
            return Err(Error::BadConfig("axis direction must be nonzero".into()));
        }
        let q = q_form(&direction);
        let ok = match kind {
            AxisKind::Time => q.is_positive(),
            AxisKind::Space => q.is_negative(),
        };
        if !ok {
            return Err(Error::BadConfig(format!(
                "axis direction has Q = {q}, which does not match {kind:?}"
            )));
        }
        Ok(Axis {
            base,
            direction,
            kind,
        })
    }

    pub fn base(&self) -> &Event4 {
        &self.base
    }

    pub fn direction(&self) -> &Displacement {
        &self.direction
    }

    pub fn kind(&self) -> AxisKind {
        self.kind
    }

    /// The point `base + t · direction`.
    pub fn at(&self, t: &Scalar) -> Event4 {
        let step = self.direction.scale(t);
        Event4::new(
            self.base.coord(0) + step.component(0),
            self.base.coord(1) + step.component(1),
            self.base.coord(2) + step.component(2),
            self.base.coord(3) + step.component(3),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: [i64; 4]) -> Event4 {
        Event4::from_ints(c)
    }

    #[test]
    fn q_form_signs() {
        assert_eq!(
            q_form(&Displacement::from_ints([1, 0, 0, 0])),
            Scalar::one()
        );
        assert_eq!(
            q_form(&Displacement::from_ints([1, 1, 0, 0])),
            Scalar::zero()
        );
        assert_eq!(
            q_form(&Displacement::from_ints([0, 1, 0, 0])),
            -Scalar::one()
        );
    }

    #[test]
    fn classify_cases() {
        let o = Event4::origin();
        assert_eq!(classify(&o, &ev([2, 1, 0, 0])), ConeClass::FutureTimelike);
        assert_eq!(classify(&o, &ev([1, 1, 0, 0])), ConeClass::FutureNull);
        assert_eq!(classify(&o, &o), ConeClass::Zero);
        assert_eq!(classify(&o, &ev([-1, 1, 0, 0])), ConeClass::PastNull);
        assert_eq!(classify(&o, &ev([-2, 0, 0, 0])), ConeClass::PastTimelike);
        assert_eq!(classify(&o, &ev([0, 3, 0, 0])), ConeClass::Spacelike);
    }

    #[test]
    fn chron_cases() {
        let o = Event4::origin();
        assert!(chron(&o, &ev([2, 1, 0, 0])));
        assert!(!chron(&o, &o));
        assert!(!chron(&o, &ev([1, 1, 0, 0])));
    }

    #[test]
    fn causal_cases() {
        let o = Event4::origin();
        assert!(causal(&o, &o));
        assert!(causal(&o, &ev([1, 1, 0, 0])));
        assert!(!causal(&o, &ev([0, 3, 0, 0])));
    }

    #[test]
    fn horismos_cases() {
        let o = Event4::origin();
        assert!(horismos(&o, &ev([1, 1, 0, 0]), false));
        assert!(!horismos(&o, &o, false));
        assert!(horismos(&o, &o, true));
        assert!(!horismos(&o, &ev([2, 1, 0, 0]), false));
    }

    #[test]
    fn ball_cases() {
        let o = Event4::origin();
        let nine = Scalar::from_int(9);
        assert!(in_ball(&ev([1, 1, 0, 0]), &o, &nine));
        assert!(!in_ball(&ev([0, 3, 0, 0]), &o, &nine)); // boundary is excluded
        assert!(in_ball(&o, &o, &Scalar::new(1, 1000).unwrap()));
    }

    #[test]
    fn zeeman_nbhd_cases() {
        let o = Event4::origin();
        let nine = Scalar::from_int(9);
        assert!(in_zeeman_nbhd(&ev([2, 0, 0, 0]), &o, &nine));
        assert!(!in_zeeman_nbhd(&ev([1, 1, 0, 0]), &o, &nine));
        assert!(in_zeeman_nbhd(&o, &o, &nine));
    }

    #[test]
    fn horismos_ball_cases() {
        let o = Event4::origin();
        assert!(in_horismos_ball(&ev([0, 3, 0, 0]), &o));
        assert!(!in_horismos_ball(&ev([-1, 1, 0, 0]), &o)); // past sheet removed too
        assert!(in_horismos_ball(&o, &o));
    }

    #[test]
    fn axis_kind_validation() {
        let o = Event4::origin();
        let t_dir = Displacement::from_ints([1, 0, 0, 0]);
        let s_dir = Displacement::from_ints([0, 1, 0, 0]);
        assert!(Axis::new(o.clone(), t_dir.clone(), AxisKind::Time).is_ok());
        assert!(Axis::new(o.clone(), t_dir, AxisKind::Space).is_err());
        assert!(Axis::new(o.clone(), s_dir, AxisKind::Space).is_ok());
        assert!(Axis::new(o, Displacement::from_ints([0, 0, 0, 0]), AxisKind::Time).is_err());
    }
}
