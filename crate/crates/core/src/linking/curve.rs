use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::geometry::{
    orient2d, orient3d, project, projection_axes, segments_intersect_3d, segments_meet_2d, sign,
    Meet2, Point2, RationalPoint3,
};
use crate::{Error, Result};

/// Attempts made before a general-position search gives up.
pub const RETRY_BUDGET: usize = 64;

/// A closed, simple, oriented polygon with at least three vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveJson", into = "CurveJson")]
pub struct PolygonalCurve {
    vertices: Vec<RationalPoint3>,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    vertices: Vec<RationalPoint3>,
}

impl TryFrom<CurveJson> for PolygonalCurve {
    type Error = Error;

    fn try_from(raw: CurveJson) -> Result<Self> {
        PolygonalCurve::new(raw.vertices)
    }
}

impl From<PolygonalCurve> for CurveJson {
    fn from(c: PolygonalCurve) -> Self {
        CurveJson {
            vertices: c.vertices,
        }
    }
}

impl PolygonalCurve {
    pub fn new(vertices: Vec<RationalPoint3>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidCurve(format!(
                "need at least 3 vertices, got {n}"
            )));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidCurve(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        let curve = PolygonalCurve { vertices };
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = curve.segment(i);
                let (c, d) = curve.segment(j);
                let bad = if adjacent {
                    // shared vertex; the segments must not fold back onto each other
                    let (shared, x, y) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let u = x.sub(shared);
                    let v = y.sub(shared);
                    u.cross(&v).is_zero() && u.dot(&v).is_positive()
                } else {
                    segments_intersect_3d(a, b, c, d)
                };
                if bad {
                    return Err(Error::InvalidCurve(format!(
                        "segments {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(curve)
    }

    pub fn from_ints(points: &[[i64; 3]]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&[x, y, z]| RationalPoint3::from_ints(x, y, z))
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[RationalPoint3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Segment `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn segment(&self, i: usize) -> (&RationalPoint3, &RationalPoint3) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (&RationalPoint3, &RationalPoint3)> {
        (0..self.vertices.len()).map(move |i| self.segment(i))
    }

    pub fn reversed(&self) -> PolygonalCurve {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolygonalCurve { vertices }
    }

    /// Same curve, list started at vertex `k`.
    pub fn rotated(&self, k: usize) -> PolygonalCurve {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(k % self.vertices.len());
        PolygonalCurve { vertices }
    }

    /// Inserts the midpoint of segment `i`.
    pub fn subdivided(&self, i: usize) -> PolygonalCurve {
        let (a, b) = self.segment(i);
        let mid = a.midpoint(b);
        let mut vertices = self.vertices.clone();
        vertices.insert(i + 1, mid);
        PolygonalCurve { vertices }
    }

    /// Applies `p ↦ f(p)`; the result is re-validated.
    pub fn map(&self, f: impl Fn(&RationalPoint3) -> RationalPoint3) -> Result<PolygonalCurve> {
        PolygonalCurve::new(self.vertices.iter().map(f).collect())
    }

    pub fn is_disjoint_from(&self, other: &PolygonalCurve) -> bool {
        self.segments().all(|(a, b)| {
            other
                .segments()
                .all(|(c, d)| !segments_intersect_3d(a, b, c, d))
        })
    }
}

fn ensure_disjoint(beta: &PolygonalCurve, gamma: &PolygonalCurve) -> Result<()> {
    if beta.is_disjoint_from(gamma) {
        Ok(())
    } else {
        Err(Error::CurvesIntersect)
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The `t`-th cone apex tried: `(t + 1/3, t² + 1/5, t³ - 1/7)`, a perturbed
/// moment curve.
pub fn apex_candidate(t: usize) -> RationalPoint3 {
    let t = t as i64;
    RationalPoint3::new(
        int(t) + frac(1, 3),
        int(t * t) + frac(1, 5),
        int(t * t * t) - frac(1, 7),
    )
}

/// The `t`-th projection direction tried is `(a_t, b_t, 1)` with
/// `a_t = (2t+1)/7`, `b_t = (t²+3)/11 - 1/2`.
pub fn direction_candidate(t: usize) -> (BigRational, BigRational) {
    let t = t as i64;
    (frac(2 * t + 1, 7), frac(t * t + 3, 11) - frac(1, 2))
}

enum Hit {
    Miss,
    Cross(i64),
    Degenerate,
}

/// Segment `b0 b1` against the oriented triangle `p q r`. Only transversal
/// crossings through the open triangle count; any touch is degenerate.
fn segment_triangle(
    b0: &RationalPoint3,
    b1: &RationalPoint3,
    p: &RationalPoint3,
    q: &RationalPoint3,
    r: &RationalPoint3,
) -> Hit {
    let oa = sign(&orient3d(p, q, r, b0));
    let ob = sign(&orient3d(p, q, r, b1));
    use Ordering::*;
    if oa != Equal && oa == ob {
        return Hit::Miss;
    }
    if oa == Equal || ob == Equal {
        return if touches_in_plane(b0, b1, oa == Equal, ob == Equal, p, q, r) {
            Hit::Degenerate
        } else {
            Hit::Miss
        };
    }
    let s = [
        sign(&orient3d(b0, b1, p, q)),
        sign(&orient3d(b0, b1, q, r)),
        sign(&orient3d(b0, b1, r, p)),
    ];
    let has_pos = s.contains(&Greater);
    let has_neg = s.contains(&Less);
    if has_pos && has_neg {
        Hit::Miss
    } else if s.contains(&Equal) {
        Hit::Degenerate
    } else {
        // n·(b1 - b0) has the sign of orient3d(p, q, r, b1) here
        Hit::Cross(if ob == Greater { 1 } else { -1 })
    }
}

/// Whether the in-plane part of the segment meets the closed triangle.
fn touches_in_plane(
    b0: &RationalPoint3,
    b1: &RationalPoint3,
    b0_in: bool,
    b1_in: bool,
    p: &RationalPoint3,
    q: &RationalPoint3,
    r: &RationalPoint3,
) -> bool {
    let normal = q.sub(p).cross(&r.sub(p));
    let axes = projection_axes(&normal);
    let [p2, q2, r2] = [p, q, r].map(|x| project(x, axes));
    let inside = |x: &Point2| {
        let s = [
            sign(&orient2d(&p2, &q2, x)),
            sign(&orient2d(&q2, &r2, x)),
            sign(&orient2d(&r2, &p2, x)),
        ];
        !(s.contains(&Ordering::Greater) && s.contains(&Ordering::Less))
    };
    match (b0_in, b1_in) {
        (true, true) => {
            let (a, b) = (project(b0, axes), project(b1, axes));
            inside(&a)
                || inside(&b)
                || [(&p2, &q2), (&q2, &r2), (&r2, &p2)]
                    .iter()
                    .any(|(u, v)| segments_meet_2d(&a, &b, u, v) != Meet2::Disjoint)
        }
        (true, false) => inside(&project(b0, axes)),
        (false, true) => inside(&project(b1, axes)),
        (false, false) => false,
    }
}

/// Signed count of `beta` crossing the cone from `apex` over `gamma`, or
/// `None` if the apex is not in general position.
pub fn linking_number_cone_with_apex(
    beta: &PolygonalCurve,
    gamma: &PolygonalCurve,
    apex: &RationalPoint3,
) -> Option<i64> {
    let mut total = 0;
    for (g0, g1) in gamma.segments() {
        if g0.sub(apex).cross(&g1.sub(apex)).is_zero() {
            return None;
        }
        for (b0, b1) in beta.segments() {
            match segment_triangle(b0, b1, apex, g0, g1) {
                Hit::Miss => {}
                Hit::Cross(s) => total += s,
                Hit::Degenerate => return None,
            }
        }
    }
    Some(total)
}

/// `lk(β, γ)` as the signed intersection number of `β` with a cone over `γ`.
pub fn linking_number_cone(beta: &PolygonalCurve, gamma: &PolygonalCurve) -> Result<i64> {
    ensure_disjoint(beta, gamma)?;
    (0..RETRY_BUDGET)
        .find_map(|t| linking_number_cone_with_apex(beta, gamma, &apex_candidate(t)))
        .ok_or(Error::GeneralPositionExhausted(RETRY_BUDGET))
}

/// Apexes from the candidate sequence that are admissible for this pair.
pub fn admissible_apexes(
    beta: &PolygonalCurve,
    gamma: &PolygonalCurve,
    count: usize,
) -> Vec<RationalPoint3> {
    (0..RETRY_BUDGET)
        .map(apex_candidate)
        .filter(|a| linking_number_cone_with_apex(beta, gamma, a).is_some())
        .take(count)
        .collect()
}

struct Projected {
    xy: Point2,
    h: BigRational,
}

fn project_along(p: &RationalPoint3, a: &BigRational, b: &BigRational) -> Projected {
    // linear map (x - a z, y - b z, z) sends direction (a, b, 1) to the z axis
    Projected {
        xy: [&p.x - a * &p.z, &p.y - b * &p.z],
        h: p.z.clone(),
    }
}

fn lerp(a: &BigRational, b: &BigRational, t: &BigRational) -> BigRational {
    a + (b - a) * t
}

/// Sum of crossing signs between `beta` and `gamma` seen along
/// `(a, b, 1)` from above, or `None` if the projection is not generic.
/// The linking number is half this sum.
pub fn crossing_sum_along(
    beta: &PolygonalCurve,
    gamma: &PolygonalCurve,
    a: &BigRational,
    b: &BigRational,
) -> Option<i64> {
    let pb: Vec<Projected> = beta
        .vertices()
        .iter()
        .map(|p| project_along(p, a, b))
        .collect();
    let pg: Vec<Projected> = gamma
        .vertices()
        .iter()
        .map(|p| project_along(p, a, b))
        .collect();
    let (nb, ng) = (pb.len(), pg.len());
    for curve in [&pb, &pg] {
        let n = curve.len();
        if (0..n).any(|i| curve[i].xy == curve[(i + 1) % n].xy) {
            return None;
        }
    }
    let mut total = 0;
    for i in 0..nb {
        let (p1, p2) = (&pb[i], &pb[(i + 1) % nb]);
        for j in 0..ng {
            let (q1, q2) = (&pg[j], &pg[(j + 1) % ng]);
            match segments_meet_2d(&p1.xy, &p2.xy, &q1.xy, &q2.xy) {
                Meet2::Disjoint => continue,
                Meet2::Touch => return None,
                Meet2::Proper => {}
            }
            let o1 = orient2d(&p1.xy, &p2.xy, &q1.xy);
            let o2 = orient2d(&p1.xy, &p2.xy, &q2.xy);
            let o3 = orient2d(&q1.xy, &q2.xy, &p1.xy);
            let o4 = orient2d(&q1.xy, &q2.xy, &p2.xy);
            let t = &o3 / (&o3 - &o4);
            let s = &o1 / (&o1 - &o2);
            let hb = lerp(&p1.h, &p2.h, &t);
            let hg = lerp(&q1.h, &q2.h, &s);
            let db = [&p2.xy[0] - &p1.xy[0], &p2.xy[1] - &p1.xy[1]];
            let dg = [&q2.xy[0] - &q1.xy[0], &q2.xy[1] - &q1.xy[1]];
            let (over, under) = match hb.cmp(&hg) {
                Ordering::Greater => (&db, &dg),
                Ordering::Less => (&dg, &db),
                Ordering::Equal => return None,
            };
            // right-handed crossing: under strand points left of the over strand
            let cross = &over[0] * &under[1] - &over[1] * &under[0];
            total += if cross.is_positive() { 1 } else { -1 };
        }
    }
    Some(total)
}

/// `lk(β, γ)` as half the signed crossing count of a generic projection.
pub fn linking_number_crossings(beta: &PolygonalCurve, gamma: &PolygonalCurve) -> Result<i64> {
    ensure_disjoint(beta, gamma)?;
    let sum = (0..RETRY_BUDGET)
        .find_map(|t| {
            let (a, b) = direction_candidate(t);
            crossing_sum_along(beta, gamma, &a, &b)
        })
        .ok_or(Error::GeneralPositionExhausted(RETRY_BUDGET))?;
    debug_assert!(sum % 2 == 0, "crossing sum between closed curves is even");
    Ok(sum / 2)
}

/// Directions from the candidate sequence that are generic for this pair.
pub fn admissible_directions(
    beta: &PolygonalCurve,
    gamma: &PolygonalCurve,
    count: usize,
) -> Vec<(BigRational, BigRational)> {
    (0..RETRY_BUDGET)
        .map(direction_candidate)
        .filter(|(a, b)| crossing_sum_along(beta, gamma, a, b).is_some())
        .take(count)
        .collect()
}

/// Whether every vertex of both curves lies in one plane.
pub fn coplanar(beta: &PolygonalCurve, gamma: &PolygonalCurve) -> bool {
    let pts: Vec<&RationalPoint3> = beta.vertices().iter().chain(gamma.vertices()).collect();
    let base = pts[0];
    let Some(normal) = pts.iter().skip(1).find_map(|p| {
        pts.iter().skip(1).find_map(|q| {
            let n = p.sub(base).cross(&q.sub(base));
            (!n.is_zero()).then_some(n)
        })
    }) else {
        return true;
    };
    pts.iter().all(|p| normal.dot(&p.sub(base)).is_zero())
}
