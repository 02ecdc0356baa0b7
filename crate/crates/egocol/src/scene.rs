//! Procedural scene generation.
//!
//! A scene is a flat-floored rectangular area populated with convex obstacles
//! (boxes and vertical cylinders). Scenes serialize to a documented JSON
//! schema with all lengths in meters.

use crate::error::{Error, Result};
use crate::geom::{Shape, Vec3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// 2D axis-aligned rectangle, `min` and `max` corners in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds2 {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Bounds2 {
    pub fn contains_xy(&self, x: f64, y: f64) -> bool {
        x >= self.min[0] && x <= self.max[0] && y >= self.min[1] && y <= self.max[1]
    }

    pub fn size(&self) -> [f64; 2] {
        [self.max[0] - self.min[0], self.max[1] - self.min[1]]
    }
}

/// One convex obstacle with a flat render albedo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    #[serde(flatten)]
    pub shape: Shape,
    pub albedo: [f64; 3],
}

/// Static environment: obstacles + floor + bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub schema_version: u32,
    pub scene_id: String,
    pub seed: u64,
    pub bounds: Bounds2,
    pub floor_height: f64,
    pub obstacles: Vec<Obstacle>,
}

/// Parameters for [`generate_scene`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SceneGenParams {
    /// Side lengths of the rectangular area, meters (centered at origin).
    pub area_size: [f64; 2],
    pub floor_height: f64,
    /// Inclusive range for the number of interior obstacles.
    pub obstacle_count: [usize; 2],
    /// Box half-extent ranges per axis: [[min_x, min_y, min_z], [max_x, max_y, max_z]].
    pub box_half_extents: [[f64; 3]; 2],
    pub cylinder_radius: [f64; 2],
    pub cylinder_height: [f64; 2],
    /// Surround the area with wall boxes just inside the bounds.
    pub walls: bool,
    pub wall_height: f64,
    pub wall_thickness: f64,
}

impl Default for SceneGenParams {
    fn default() -> Self {
        SceneGenParams {
            area_size: [10.0, 10.0],
            floor_height: 0.0,
            obstacle_count: [5, 9],
            box_half_extents: [[0.15, 0.15, 0.3], [0.7, 0.7, 1.1]],
            cylinder_radius: [0.12, 0.45],
            cylinder_height: [0.5, 2.0],
            walls: true,
            wall_height: 2.2,
            wall_thickness: 0.15,
        }
    }
}

fn sample_range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// Deterministically generate a scene from `(seed, params)`.
pub fn generate_scene(seed: u64, params: &SceneGenParams) -> Result<Scene> {
    let [w, h] = params.area_size;
    if w <= 0.0 || h <= 0.0 {
        return Err(Error::SceneGen(format!("non-positive area size {w}x{h}")));
    }
    if params.obstacle_count[0] > params.obstacle_count[1] {
        return Err(Error::SceneGen("obstacle count range inverted".into()));
    }
    let bounds = Bounds2 { min: [-w / 2.0, -h / 2.0], max: [w / 2.0, h / 2.0] };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obstacles = Vec::new();

    if params.walls {
        let t = params.wall_thickness;
        let hz = params.wall_height / 2.0;
        let zc = params.floor_height + hz;
        // Four perimeter walls just inside the bounds.
        let specs = [
            ([0.0, bounds.max[1] - t / 2.0], [w / 2.0, t / 2.0]),
            ([0.0, bounds.min[1] + t / 2.0], [w / 2.0, t / 2.0]),
            ([bounds.max[0] - t / 2.0, 0.0], [t / 2.0, h / 2.0 - t]),
            ([bounds.min[0] + t / 2.0, 0.0], [t / 2.0, h / 2.0 - t]),
        ];
        for (c, he) in specs {
            obstacles.push(Obstacle {
                shape: Shape::Box {
                    center: [c[0], c[1], zc],
                    half_extents: [he[0], he[1], hz],
                },
                albedo: [0.62, 0.60, 0.55],
            });
        }
    }

    let n = if params.obstacle_count[1] == params.obstacle_count[0] {
        params.obstacle_count[0]
    } else {
        rng.gen_range(params.obstacle_count[0]..=params.obstacle_count[1])
    };
    let margin = params.wall_thickness + 0.05;
    for _ in 0..n {
        let is_box = rng.gen_bool(0.5);
        let albedo = [
            0.25 + 0.65 * rng.gen::<f64>(),
            0.25 + 0.65 * rng.gen::<f64>(),
            0.25 + 0.65 * rng.gen::<f64>(),
        ];
        let shape = if is_box {
            let hx = sample_range(&mut rng, params.box_half_extents[0][0], params.box_half_extents[1][0]);
            let hy = sample_range(&mut rng, params.box_half_extents[0][1], params.box_half_extents[1][1]);
            let hz = sample_range(&mut rng, params.box_half_extents[0][2], params.box_half_extents[1][2]);
            let lo_x = bounds.min[0] + margin + hx;
            let hi_x = bounds.max[0] - margin - hx;
            let lo_y = bounds.min[1] + margin + hy;
            let hi_y = bounds.max[1] - margin - hy;
            if lo_x > hi_x || lo_y > hi_y {
                return Err(Error::SceneGen(
                    "obstacle extents do not fit within the bounds".into(),
                ));
            }
            Shape::Box {
                center: [
                    sample_range(&mut rng, lo_x, hi_x),
                    sample_range(&mut rng, lo_y, hi_y),
                    params.floor_height + hz,
                ],
                half_extents: [hx, hy, hz],
            }
        } else {
            let r = sample_range(&mut rng, params.cylinder_radius[0], params.cylinder_radius[1]);
            let ch = sample_range(&mut rng, params.cylinder_height[0], params.cylinder_height[1]);
            let lo_x = bounds.min[0] + margin + r;
            let hi_x = bounds.max[0] - margin - r;
            let lo_y = bounds.min[1] + margin + r;
            let hi_y = bounds.max[1] - margin - r;
            if lo_x > hi_x || lo_y > hi_y {
                return Err(Error::SceneGen(
                    "obstacle extents do not fit within the bounds".into(),
                ));
            }
            Shape::Cylinder {
                center_xy: [
                    sample_range(&mut rng, lo_x, hi_x),
                    sample_range(&mut rng, lo_y, hi_y),
                ],
                radius: r,
                z_min: params.floor_height,
                z_max: params.floor_height + ch,
            }
        };
        obstacles.push(Obstacle { shape, albedo });
    }

    let scene = Scene {
        schema_version: 1,
        scene_id: format!("scene-{seed:06}"),
        seed,
        bounds,
        floor_height: params.floor_height,
        obstacles,
    };
    scene.validate()?;
    Ok(scene)
}

impl Scene {
    /// Check scene invariants.
    pub fn validate(&self) -> Result<()> {
        if self.obstacles.is_empty() {
            return Err(Error::SceneGen("scene has no obstacles".into()));
        }
        for (i, ob) in self.obstacles.iter().enumerate() {
            let (lo, hi) = ob.shape.footprint();
            if lo[0] < self.bounds.min[0] - 1e-9
                || lo[1] < self.bounds.min[1] - 1e-9
                || hi[0] > self.bounds.max[0] + 1e-9
                || hi[1] > self.bounds.max[1] + 1e-9
            {
                return Err(Error::SceneGen(format!("obstacle {i} outside bounds")));
            }
            if ob.shape.z_min() < self.floor_height - 1e-9 {
                return Err(Error::SceneGen(format!("obstacle {i} penetrates floor")));
            }
        }
        Ok(())
    }

    /// Distance from `p` to the nearest obstacle solid (0 when inside one).
    pub fn distance(&self, p: Vec3) -> f64 {
        self.obstacles
            .iter()
            .map(|o| o.shape.distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Scene> {
        let scene: Scene = serde_json::from_str(s)?;
        scene.validate()?;
        Ok(scene)
    }
}
