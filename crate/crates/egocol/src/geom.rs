//! Minimal 3D vector math and convex primitive geometry.
//!
//! Obstacles are axis-aligned boxes and vertical (z-axis aligned) cylinders.
//! Both support exact closest-point queries and exact ray intersection, which
//! is all the simulator and renderer need.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        if n == 0.0 {
            Vec3::ZERO
        } else {
            self / n
        }
    }

    pub fn xy_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A ray with unit direction; `t` parameters are Euclidean distances.
#[derive(Debug, Clone, Copy)]
pub struct Ray {
    pub origin: Vec3,
    pub dir: Vec3,
}

/// Convex obstacle shape, all lengths in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// Axis-aligned box.
    Box { center: [f64; 3], half_extents: [f64; 3] },
    /// Vertical cylinder: circular footprint in xy, finite z extent.
    Cylinder { center_xy: [f64; 2], radius: f64, z_min: f64, z_max: f64 },
}

/// Result of a ray/shape intersection: distance along the ray and the
/// outward surface normal at the hit point.
#[derive(Debug, Clone, Copy)]
pub struct Hit {
    pub t: f64,
    pub normal: Vec3,
}

impl Shape {
    /// Closest point on the *surface* of the solid to `p`.
    ///
    /// For points inside the solid this is the projection onto the nearest
    /// face/wall, which is also the deepest-penetration contact point for a
    /// sphere centered at `p`.
    pub fn surface_point(&self, p: Vec3) -> Vec3 {
        match *self {
            Shape::Box { center, half_extents } => {
                let c = Vec3::new(center[0], center[1], center[2]);
                let h = half_extents;
                let d = p - c;
                let inside = d.x.abs() <= h[0] && d.y.abs() <= h[1] && d.z.abs() <= h[2];
                if !inside {
                    return Vec3::new(
                        c.x + d.x.clamp(-h[0], h[0]),
                        c.y + d.y.clamp(-h[1], h[1]),
                        c.z + d.z.clamp(-h[2], h[2]),
                    );
                }
                // Project onto the face with minimal distance.
                let gaps = [h[0] - d.x.abs(), h[1] - d.y.abs(), h[2] - d.z.abs()];
                let mut axis = 0;
                for a in 1..3 {
                    if gaps[a] < gaps[axis] {
                        axis = a;
                    }
                }
                let mut q = p;
                match axis {
                    0 => q.x = c.x + h[0].copysign(if d.x >= 0.0 { 1.0 } else { -1.0 }),
                    1 => q.y = c.y + h[1].copysign(if d.y >= 0.0 { 1.0 } else { -1.0 }),
                    _ => q.z = c.z + h[2].copysign(if d.z >= 0.0 { 1.0 } else { -1.0 }),
                }
                q
            }
            Shape::Cylinder { center_xy, radius, z_min, z_max } => {
                let dx = p.x - center_xy[0];
                let dy = p.y - center_xy[1];
                let r = (dx * dx + dy * dy).sqrt();
                let inside = r <= radius && p.z >= z_min && p.z <= z_max;
                if !inside {
                    let (cx, cy) = if r > radius {
                        let s = radius / r;
                        (center_xy[0] + dx * s, center_xy[1] + dy * s)
                    } else {
                        (p.x, p.y)
                    };
                    return Vec3::new(cx, cy, p.z.clamp(z_min, z_max));
                }
                // Inside: nearest of lateral wall, bottom cap, top cap.
                let gap_wall = radius - r;
                let gap_bot = p.z - z_min;
                let gap_top = z_max - p.z;
                if gap_wall <= gap_bot && gap_wall <= gap_top {
                    if r > 1e-12 {
                        let s = radius / r;
                        Vec3::new(center_xy[0] + dx * s, center_xy[1] + dy * s, p.z)
                    } else {
                        Vec3::new(center_xy[0] + radius, center_xy[1], p.z)
                    }
                } else if gap_bot <= gap_top {
                    Vec3::new(p.x, p.y, z_min)
                } else {
                    Vec3::new(p.x, p.y, z_max)
                }
            }
        }
    }

    pub fn contains(&self, p: Vec3) -> bool {
        match *self {
            Shape::Box { center, half_extents } => {
                (p.x - center[0]).abs() <= half_extents[0]
                    && (p.y - center[1]).abs() <= half_extents[1]
                    && (p.z - center[2]).abs() <= half_extents[2]
            }
            Shape::Cylinder { center_xy, radius, z_min, z_max } => {
                let dx = p.x - center_xy[0];
                let dy = p.y - center_xy[1];
                dx * dx + dy * dy <= radius * radius && p.z >= z_min && p.z <= z_max
            }
        }
    }

    /// Distance from `p` to the solid (0 when inside).
    pub fn distance(&self, p: Vec3) -> f64 {
        if self.contains(p) {
            0.0
        } else {
            (p - self.surface_point(p)).norm()
        }
    }

    /// Nearest intersection with `t > t_min`, or None.
    pub fn ray_hit(&self, ray: &Ray, t_min: f64) -> Option<Hit> {
        match *self {
            Shape::Box { center, half_extents } => {
                let c = [center[0], center[1], center[2]];
                let h = half_extents;
                let o = [ray.origin.x, ray.origin.y, ray.origin.z];
                let d = [ray.dir.x, ray.dir.y, ray.dir.z];
                let mut t_enter = f64::NEG_INFINITY;
                let mut t_exit = f64::INFINITY;
                let mut enter_axis = 0usize;
                for a in 0..3 {
                    let lo = c[a] - h[a];
                    let hi = c[a] + h[a];
                    if d[a].abs() < 1e-15 {
                        if o[a] < lo || o[a] > hi {
                            return None;
                        }
                        continue;
                    }
                    let mut t0 = (lo - o[a]) / d[a];
                    let mut t1 = (hi - o[a]) / d[a];
                    if t0 > t1 {
                        std::mem::swap(&mut t0, &mut t1);
                    }
                    if t0 > t_enter {
                        t_enter = t0;
                        enter_axis = a;
                    }
                    t_exit = t_exit.min(t1);
                    if t_enter > t_exit {
                        return None;
                    }
                }
                if t_enter <= t_min {
                    return None; // origin inside or surface behind
                }
                let mut n = Vec3::ZERO;
                let hp = ray.origin + ray.dir * t_enter;
                let sign = match enter_axis {
                    0 => (hp.x - c[0]).signum(),
                    1 => (hp.y - c[1]).signum(),
                    _ => (hp.z - c[2]).signum(),
                };
                match enter_axis {
                    0 => n.x = sign,
                    1 => n.y = sign,
                    _ => n.z = sign,
                }
                Some(Hit { t: t_enter, normal: n })
            }
            Shape::Cylinder { center_xy, radius, z_min, z_max } => {
                let mut best: Option<Hit> = None;
                let mut consider = |h: Hit| {
                    if h.t > t_min && best.map_or(true, |b| h.t < b.t) {
                        best = Some(h);
                    }
                };
                // Lateral wall: quadratic in xy.
                let ox = ray.origin.x - center_xy[0];
                let oy = ray.origin.y - center_xy[1];
                let dx = ray.dir.x;
                let dy = ray.dir.y;
                let a = dx * dx + dy * dy;
                if a > 1e-15 {
                    let b = ox * dx + oy * dy;
                    let cq = ox * ox + oy * oy - radius * radius;
                    let disc = b * b - a * cq;
                    if disc >= 0.0 {
                        let sq = disc.sqrt();
                        for t in [(-b - sq) / a, (-b + sq) / a] {
                            let z = ray.origin.z + ray.dir.z * t;
                            if z >= z_min && z <= z_max {
                                let hp = ray.origin + ray.dir * t;
                                let n = Vec3::new(hp.x - center_xy[0], hp.y - center_xy[1], 0.0)
                                    .normalized();
                                consider(Hit { t, normal: n });
                            }
                        }
                    }
                }
                // Caps.
                if ray.dir.z.abs() > 1e-15 {
                    for (zc, nz) in [(z_min, -1.0), (z_max, 1.0)] {
                        let t = (zc - ray.origin.z) / ray.dir.z;
                        let px = ray.origin.x + ray.dir.x * t - center_xy[0];
                        let py = ray.origin.y + ray.dir.y * t - center_xy[1];
                        if px * px + py * py <= radius * radius {
                            consider(Hit { t, normal: Vec3::new(0.0, 0.0, nz) });
                        }
                    }
                }
                best
            }
        }
    }

    /// Axis-aligned xy footprint as (min_xy, max_xy).
    pub fn footprint(&self) -> ([f64; 2], [f64; 2]) {
        match *self {
            Shape::Box { center, half_extents } => (
                [center[0] - half_extents[0], center[1] - half_extents[1]],
                [center[0] + half_extents[0], center[1] + half_extents[1]],
            ),
            Shape::Cylinder { center_xy, radius, .. } => (
                [center_xy[0] - radius, center_xy[1] - radius],
                [center_xy[0] + radius, center_xy[1] + radius],
            ),
        }
    }

    /// Lowest z of the solid.
    pub fn z_min(&self) -> f64 {
        match *self {
            Shape::Box { center, half_extents } => center[2] - half_extents[2],
            Shape::Cylinder { z_min, .. } => z_min,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box() -> Shape {
        Shape::Box { center: [0.0, 0.0, 0.0], half_extents: [0.5, 0.5, 0.5] }
    }

    #[test]
    fn box_surface_point_outside_clamps() {
        let b = unit_box();
        let q = b.surface_point(Vec3::new(2.0, 0.1, 0.0));
        assert_eq!(q, Vec3::new(0.5, 0.1, 0.0));
    }

    #[test]
    fn box_surface_point_inside_nearest_face() {
        let b = unit_box();
        let q = b.surface_point(Vec3::new(0.4, 0.0, 0.0));
        assert_eq!(q, Vec3::new(0.5, 0.0, 0.0));
    }

    #[test]
    fn box_ray_face_on() {
        let b = unit_box();
        let ray = Ray { origin: Vec3::new(-2.0, 0.0, 0.0), dir: Vec3::new(1.0, 0.0, 0.0) };
        let h = b.ray_hit(&ray, 1e-9).unwrap();
        assert!((h.t - 1.5).abs() < 1e-12);
        assert_eq!(h.normal, Vec3::new(-1.0, 0.0, 0.0));
    }

    #[test]
    fn box_ray_axis_parallel_miss() {
        let b = unit_box();
        let ray = Ray { origin: Vec3::new(-2.0, 0.7, 0.0), dir: Vec3::new(1.0, 0.0, 0.0) };
        assert!(b.ray_hit(&ray, 1e-9).is_none());
    }

    #[test]
    fn cylinder_ray_side_and_cap() {
        let c = Shape::Cylinder { center_xy: [0.0, 0.0], radius: 0.5, z_min: 0.0, z_max: 1.0 };
        let ray = Ray { origin: Vec3::new(-3.0, 0.0, 0.5), dir: Vec3::new(1.0, 0.0, 0.0) };
        let h = c.ray_hit(&ray, 1e-9).unwrap();
        assert!((h.t - 2.5).abs() < 1e-12);
        let down = Ray { origin: Vec3::new(0.1, 0.1, 3.0), dir: Vec3::new(0.0, 0.0, -1.0) };
        let h = c.ray_hit(&down, 1e-9).unwrap();
        assert!((h.t - 2.0).abs() < 1e-12);
        assert_eq!(h.normal, Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn cylinder_distance_inside_zero() {
        let c = Shape::Cylinder { center_xy: [1.0, 1.0], radius: 0.5, z_min: 0.0, z_max: 2.0 };
        assert_eq!(c.distance(Vec3::new(1.1, 1.0, 1.0)), 0.0);
        assert!((c.distance(Vec3::new(2.0, 1.0, 1.0)) - 0.5).abs() < 1e-12);
    }
}
