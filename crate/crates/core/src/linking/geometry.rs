//! Exact rational points and the sign predicates built on them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(text.to_string());
    let text = text.trim();
    let q = match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?),
    };
    Ok(q)
}

/// Always `"p/q"`, including `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint3 {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl RationalPoint3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalPoint3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(v.into());
        RationalPoint3::new(r(x), r(y), r(z))
    }

    pub fn coords(&self) -> [&BigRational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn sub(&self, o: &RationalPoint3) -> Vec3 {
        Vec3([&self.x - &o.x, &self.y - &o.y, &self.z - &o.z])
    }

    pub fn add(&self, v: &Vec3) -> RationalPoint3 {
        RationalPoint3::new(&self.x + &v.0[0], &self.y + &v.0[1], &self.z + &v.0[2])
    }

    pub fn midpoint(&self, o: &RationalPoint3) -> RationalPoint3 {
        let two = BigRational::from_integer(2.into());
        RationalPoint3::new(
            (&self.x + &o.x) / &two,
            (&self.y + &o.y) / &two,
            (&self.z + &o.z) / &two,
        )
    }
}

impl fmt::Display for RationalPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.z)
        )
    }
}

impl Serialize for RationalPoint3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().map(format_rational).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[String; 3]>::deserialize(d)?;
        let p = |t: &str| parse_rational(t).map_err(D::Error::custom);
        Ok(RationalPoint3::new(p(&x)?, p(&y)?, p(&z)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec3(pub [BigRational; 3]);

impl Vec3 {
    pub fn dot(&self, o: &Vec3) -> BigRational {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

pub fn sign(q: &BigRational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// `det(b - a, c - a, d - a)`: positive when `d` lies on the side of plane
/// `abc` that `(b - a) × (c - a)` points to.
pub fn orient3d(
    a: &RationalPoint3,
    b: &RationalPoint3,
    c: &RationalPoint3,
    d: &RationalPoint3,
) -> BigRational {
    b.sub(a).cross(&c.sub(a)).dot(&d.sub(a))
}

pub type Point2 = [BigRational; 2];

/// Twice the signed area of `abc`; positive for counter-clockwise.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> BigRational {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

fn between(a: &BigRational, b: &BigRational, x: &BigRational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// Whether `p`, known to be collinear with `a`–`b`, lies on the closed segment.
fn on_segment_2d(a: &Point2, b: &Point2, p: &Point2) -> bool {
    between(&a[0], &b[0], &p[0]) && between(&a[1], &b[1], &p[1])
}

/// How two closed 2D segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet2 {
    Disjoint,
    /// interiors cross at a single point, no endpoint involved
    Proper,
    /// any other contact: an endpoint touches, or collinear overlap
    Touch,
}

pub fn segments_meet_2d(p1: &Point2, p2: &Point2, q1: &Point2, q2: &Point2) -> Meet2 {
    let o1 = sign(&orient2d(p1, p2, q1));
    let o2 = sign(&orient2d(p1, p2, q2));
    let o3 = sign(&orient2d(q1, q2, p1));
    let o4 = sign(&orient2d(q1, q2, p2));
    use Ordering::*;
    let same = |a: Ordering, b: Ordering| a != Equal && a == b;
    if same(o1, o2) || same(o3, o4) {
        return Meet2::Disjoint;
    }
    if [o1, o2, o3, o4].iter().all(|&o| o == Equal) {
        let touches = on_segment_2d(p1, p2, q1)
            || on_segment_2d(p1, p2, q2)
            || on_segment_2d(q1, q2, p1)
            || on_segment_2d(q1, q2, p2);
        return if touches {
            Meet2::Touch
        } else {
            Meet2::Disjoint
        };
    }
    if [o1, o2, o3, o4].contains(&Equal) {
        Meet2::Touch
    } else {
        Meet2::Proper
    }
}

/// Coordinate pair kept when projecting a plane with normal `n` to 2D. The
/// dropped axis has a nonzero normal component, so the projection is
/// injective on that plane.
pub fn projection_axes(n: &Vec3) -> (usize, usize) {
    let abs: Vec<BigRational> = n.0.iter().map(|c| c.abs()).collect();
    let drop = (0..3).max_by(|&i, &j| abs[i].cmp(&abs[j])).unwrap();
    match drop {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    }
}

pub fn project(p: &RationalPoint3, axes: (usize, usize)) -> Point2 {
    let c = p.coords();
    [c[axes.0].clone(), c[axes.1].clone()]
}

/// Whether two closed segments in R³ share a point.
pub fn segments_intersect_3d(
    a: &RationalPoint3,
    b: &RationalPoint3,
    c: &RationalPoint3,
    d: &RationalPoint3,
) -> bool {
    if !orient3d(a, b, c, d).is_zero() {
        return false;
    }
    let ab = b.sub(a);
    let mut normal = ab.cross(&c.sub(a));
    if normal.is_zero() {
        normal = ab.cross(&d.sub(a));
    }
    if normal.is_zero() {
        // all four points on one line
        let t = |p: &RationalPoint3| p.sub(a).dot(&ab);
        let (lo, hi) = (BigRational::zero(), ab.dot(&ab));
        let (tc, td) = (t(c), t(d));
        let (cmin, cmax) = if tc <= td { (tc, td) } else { (td, tc) };
        return cmin <= hi && lo <= cmax;
    }
    let axes = projection_axes(&normal);
    let pr = |p| project(p, axes);
    segments_meet_2d(&pr(a), &pr(b), &pr(c), &pr(d)) != Meet2::Disjoint
}

/// Whether `p` lies on the closed segment `ab`.
pub fn point_on_segment_3d(p: &RationalPoint3, a: &RationalPoint3, b: &RationalPoint3) -> bool {
    let ab = b.sub(a);
    let ap = p.sub(a);
    if !ab.cross(&ap).is_zero() {
        return false;
    }
    let t = ap.dot(&ab);
    !t.is_negative() && t <= ab.dot(&ab)
}
