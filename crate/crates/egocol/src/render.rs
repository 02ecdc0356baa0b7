//! Raycast renderer: one primary ray per pixel against the scene primitives
//! and the floor plane.
//!
//! Depth is the Euclidean distance to the nearest hit (0 encodes no hit).
//! Color is the surface albedo under a fixed directional light with a small
//! ambient term; pixels with no hit get [`BACKGROUND_RGB`].

use crate::camera::Camera;
use crate::geom::{Hit, Vec3};
use crate::scene::Scene;
use ndarray::{Array2, Array3};

/// Constant background color for no-hit pixels.
pub const BACKGROUND_RGB: [f32; 3] = [0.10, 0.12, 0.15];
/// Fixed floor albedo.
pub const FLOOR_ALBEDO: [f64; 3] = [0.42, 0.42, 0.44];
const AMBIENT: f64 = 0.30;

fn light_dir() -> Vec3 {
    Vec3::new(0.35, 0.25, 0.90).normalized()
}

/// One rendered egocentric frame.
#[derive(Debug, Clone, PartialEq)]
pub struct EgoFrame {
    /// (H, W, 3), values in [0, 1].
    pub rgb: Array3<f32>,
    /// (H, W), meters; 0 where no surface was hit.
    pub depth: Array2<f32>,
    pub view_index: usize,
    pub frame_index: usize,
}

/// Nearest hit among obstacles and the floor plane, with its albedo.
fn trace(scene: &Scene, ray: &crate::geom::Ray) -> Option<(Hit, [f64; 3])> {
    let mut best: Option<(Hit, [f64; 3])> = None;
    for ob in &scene.obstacles {
        if let Some(h) = ob.shape.ray_hit(ray, 1e-9) {
            if best.as_ref().map_or(true, |(b, _)| h.t < b.t) {
                best = Some((h, ob.albedo));
            }
        }
    }
    if ray.dir.z < -1e-15 {
        let t = (scene.floor_height - ray.origin.z) / ray.dir.z;
        if t > 1e-9 && best.as_ref().map_or(true, |(b, _)| t < b.t) {
            best = Some((Hit { t, normal: Vec3::new(0.0, 0.0, 1.0) }, FLOOR_ALBEDO));
        }
    }
    best
}

fn shade(albedo: [f64; 3], normal: Vec3) -> [f32; 3] {
    let lambert = normal.dot(light_dir()).max(0.0);
    let k = AMBIENT + (1.0 - AMBIENT) * lambert;
    [
        (albedo[0] * k) as f32,
        (albedo[1] * k) as f32,
        (albedo[2] * k) as f32,
    ]
}

pub fn render(scene: &Scene, camera: &Camera) -> EgoFrame {
    let (h, w) = (camera.height, camera.width);
    let mut rgb = Array3::<f32>::zeros((h, w, 3));
    let mut depth = Array2::<f32>::zeros((h, w));
    for r in 0..h {
        for c in 0..w {
            let ray = camera.pixel_ray(r, c);
            match trace(scene, &ray) {
                Some((hit, albedo)) => {
                    depth[[r, c]] = hit.t as f32;
                    let col = shade(albedo, hit.normal);
                    for ch in 0..3 {
                        rgb[[r, c, ch]] = col[ch];
                    }
                }
                None => {
                    for ch in 0..3 {
                        rgb[[r, c, ch]] = BACKGROUND_RGB[ch];
                    }
                }
            }
        }
    }
    EgoFrame { rgb, depth, view_index: 0, frame_index: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Shape;
    use crate::scene::{Bounds2, Obstacle, Scene};

    fn scene_with_box() -> Scene {
        Scene {
            schema_version: 1,
            scene_id: "t".into(),
            seed: 0,
            bounds: Bounds2 { min: [-10.0, -10.0], max: [10.0, 10.0] },
            floor_height: 0.0,
            obstacles: vec![Obstacle {
                shape: Shape::Box { center: [3.0, 0.0, 1.0], half_extents: [1.0, 1.0, 1.0] },
                albedo: [0.8, 0.2, 0.2],
            }],
        }
    }

    #[test]
    fn camera_facing_up_sees_background_only() {
        let scene = scene_with_box();
        let cam = Camera {
            position: Vec3::new(0.0, 0.0, 1.0),
            yaw: 0.0,
            pitch: std::f64::consts::FRAC_PI_2, // straight up: away from box and floor
            vertical_fov_deg: 60.0,
            height: 16,
            width: 16,
        };
        let f = render(&scene, &cam);
        assert!(f.depth.iter().all(|&d| d == 0.0));
        assert!(f
            .rgb
            .outer_iter()
            .flat_map(|row| row.outer_iter().map(|px| px.to_vec()).collect::<Vec<_>>())
            .all(|px| px == BACKGROUND_RGB.to_vec()));
    }

    #[test]
    fn unit_box_face_on_center_depth() {
        let scene = scene_with_box();
        let cam = Camera {
            position: Vec3::new(0.0, 0.0, 1.0),
            yaw: 0.0,
            pitch: 0.0,
            vertical_fov_deg: 90.0,
            height: 64,
            width: 64,
        };
        let f = render(&scene, &cam);
        // Box face at x = 2, camera at x = 0, center pixel ray along +x.
        let d = f.depth[[32, 32]];
        assert!((d - 2.0).abs() < 1e-6, "depth {d}");
    }

    #[test]
    fn depth_back_projects_to_same_pixel() {
        let scene = scene_with_box();
        let cam = Camera {
            position: Vec3::new(-1.0, 0.4, 1.3),
            yaw: 0.2,
            pitch: -0.1,
            vertical_fov_deg: 90.0,
            height: 32,
            width: 32,
        };
        let f = render(&scene, &cam);
        for r in 0..32 {
            for c in 0..32 {
                let d = f.depth[[r, c]] as f64;
                if d == 0.0 {
                    continue;
                }
                let ray = cam.pixel_ray(r, c);
                let p = ray.origin + ray.dir * d;
                let (u, v) = cam.project(p).expect("hit point must reproject");
                assert!((u - (c as f64 + 0.5)).abs() < 0.5);
                assert!((v - (r as f64 + 0.5)).abs() < 0.5);
            }
        }
    }
}
