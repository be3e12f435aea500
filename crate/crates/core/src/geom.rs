//! Low-level Euclidean primitives: points, circumradius of triples,
//! exterior angles, great-circle distance and segment/segment distance.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative area threshold below which three points count as collinear.
pub const COLLINEAR_AREA_EPS: f64 = 1e-14;

/// Tolerance on `|u| = 1` for inputs of [`sphere_distance`].
pub const UNIT_TOL: f64 = 1e-9;

/// A point or direction in R³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const E1: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const E2: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const E3: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    #[inline]
    pub fn lerp(self, o: Vec3, t: f64) -> Vec3 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Rotation by `angle` about the unit `axis` through the origin (Rodrigues).
    pub fn rotate_about(self, axis: Vec3, angle: f64) -> Vec3 {
        let (s, c) = angle.sin_cos();
        self * c + axis.cross(self) * s + axis * (axis.dot(self) * (1.0 - c))
    }

    /// Some unit vector orthogonal to `self` (which must be non-zero).
    pub fn any_orthogonal(self) -> Vec3 {
        let a = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Vec3::E1
        } else if self.y.abs() <= self.z.abs() {
            Vec3::E2
        } else {
            Vec3::E3
        };
        self.cross(a).normalized().unwrap_or(Vec3::E3)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

/// Radius of the circle through `x`, `y`, `z`; `+∞` when the points are
/// collinear (coincident points included).
pub fn circumradius(x: Vec3, y: Vec3, z: Vec3) -> f64 {
    let a = x.dist(y);
    let b = y.dist(z);
    let c = z.dist(x);
    let scale = a.max(b).max(c);
    if scale == 0.0 {
        return f64::INFINITY;
    }
    // |cross| is twice the triangle area
    let twice_area = (y - x).cross(z - x).norm();
    if 0.5 * twice_area <= COLLINEAR_AREA_EPS * scale * scale {
        return f64::INFINITY;
    }
    a * b * c / (2.0 * twice_area)
}

/// Angle in `[0, π]` between `u` and `v`, via `atan2(|u×v|, u·v)`.
#[inline]
pub fn angle_between(u: Vec3, v: Vec3) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// Exterior angle at `y` between the edge directions `y−x` and `z−y`.
pub fn exterior_angle(x: Vec3, y: Vec3, z: Vec3) -> Result<f64> {
    let u = y - x;
    let v = z - y;
    if u.norm_sq() == 0.0 || v.norm_sq() == 0.0 {
        return Err(Error::DegenerateAngle);
    }
    Ok(angle_between(u, v))
}

/// Great-circle distance between two unit vectors.
pub fn sphere_distance(u: Vec3, v: Vec3) -> Result<f64> {
    for w in [u, v] {
        let n = w.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(n));
        }
    }
    Ok(angle_between(u, v))
}

/// Closest approach of two segments with the achieving parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentDistance {
    pub distance: f64,
    /// Parameter on the first segment, in `[0, 1]`.
    pub s: f64,
    /// Parameter on the second segment, in `[0, 1]`.
    pub t: f64,
}

#[inline]
fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Global minimum of `|(a0+s(a1−a0)) − (b0+t(b1−b0))|` over `[0,1]²`.
pub fn segment_min_distance(a0: Vec3, a1: Vec3, b0: Vec3, b1: Vec3) -> SegmentDistance {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let r = a0 - b0;
    let a = d1.norm_sq();
    let e = d2.norm_sq();
    let f = d2.dot(r);

    let (s, t) = if a == 0.0 && e == 0.0 {
        (0.0, 0.0)
    } else if a == 0.0 {
        (0.0, clamp01(f / e))
    } else {
        let c = d1.dot(r);
        if e == 0.0 {
            (clamp01(-c / a), 0.0)
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            // parallel segments: any s works, the t-clamping below fixes it up
            let mut s = if denom > 1e-14 * a * e {
                clamp01((b * f - c * e) / denom)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = clamp01(-c / a);
            } else if t > 1.0 {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
            (s, t)
        }
    };
    let pa = a0 + d1 * s;
    let pb = b0 + d2 * t;
    SegmentDistance {
        distance: pa.dist(pb),
        s,
        t,
    }
}

/// Distance from `p` to the segment `[a, b]` and the foot parameter.
pub fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> (f64, f64) {
    let d = b - a;
    let len2 = d.norm_sq();
    let t = if len2 == 0.0 {
        0.0
    } else {
        clamp01((p - a).dot(d) / len2)
    };
    ((a + d * t).dist(p), t)
}
