//! Scene-agnostic walking motion.
//!
//! Motion is a smooth random walk: per-sequence speed, bounded random yaw
//! increments, and a gait phase advancing with distance traveled. The walker
//! ignores obstacles entirely; sequences are truncated at the first detected
//! collision. A [`MotionPlan`] captures everything random up front so that a
//! controller can replay the same nominal motion while injecting extra yaw.

use crate::body::{BodyModel, BodyState};
use crate::collide::{check_collision, CollisionEvent};
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::scene::Scene;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MotionParams {
    pub min_speed: f64,
    pub max_speed: f64,
    /// Maximum |yaw| change per second, radians.
    pub max_yaw_rate: f64,
    /// Distance covered by one full gait cycle, meters.
    pub stride_length: f64,
    /// Start-pose rejection-sampling attempts before giving up.
    pub start_attempts: usize,
    /// Keep start poses at least this far inside the bounds, meters.
    pub start_margin: f64,
}

impl Default for MotionParams {
    fn default() -> Self {
        MotionParams {
            min_speed: 0.5,
            max_speed: 1.5,
            max_yaw_rate: 1.2,
            stride_length: 0.7,
            start_attempts: 100,
            start_margin: 0.6,
        }
    }
}

/// Fully determined nominal motion: start pose, speed, and per-frame yaw
/// increments. Pure data; rollouts derive states from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionPlan {
    pub start_xy: [f64; 2],
    pub start_yaw: f64,
    pub start_phase: f64,
    pub speed: f64,
    pub fps: f64,
    pub yaw_increments: Vec<f64>,
    pub stride_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionSequence {
    pub states: Vec<BodyState>,
    pub terminal_event: Option<CollisionEvent>,
    pub fps: f64,
}

impl MotionPlan {
    pub fn start_state(&self, scene: &Scene, model: &BodyModel) -> BodyState {
        let z = scene.floor_height + model.hip_height;
        BodyState::new(
            model,
            Vec3::new(self.start_xy[0], self.start_xy[1], z),
            self.start_yaw,
            self.start_phase,
        )
    }

    /// Advance one frame. `extra_yaw` is an additional heading change applied
    /// this frame (the avoidance controller's intervention); it persists
    /// because heading is integrated.
    pub fn step(
        &self,
        scene: &Scene,
        model: &BodyModel,
        current: &BodyState,
        frame: usize,
        extra_yaw: f64,
    ) -> BodyState {
        let dt = 1.0 / self.fps;
        let inc = self.yaw_increments.get(frame).copied().unwrap_or(0.0);
        let mut yaw = current.root_yaw + inc + extra_yaw;
        let step_len = self.speed * dt;
        let mut pos = current.root_position + Vec3::new(yaw.cos(), yaw.sin(), 0.0) * step_len;
        // Bounds are a hard limit on the walk domain: reflect the heading
        // instead of leaving (walls, when present, normally end the sequence
        // first).
        let b = &scene.bounds;
        let m = 0.05;
        if pos.x < b.min[0] + m || pos.x > b.max[0] - m {
            yaw = std::f64::consts::PI - yaw;
            pos = current.root_position + Vec3::new(yaw.cos(), yaw.sin(), 0.0) * step_len;
        }
        if pos.y < b.min[1] + m || pos.y > b.max[1] - m {
            yaw = -yaw;
            pos = current.root_position + Vec3::new(yaw.cos(), yaw.sin(), 0.0) * step_len;
        }
        pos.x = pos.x.clamp(b.min[0] + m, b.max[0] - m);
        pos.y = pos.y.clamp(b.min[1] + m, b.max[1] - m);
        let phase =
            current.gait_phase + 2.0 * std::f64::consts::PI * step_len / self.stride_length;
        BodyState::new(model, pos, yaw, phase)
    }
}

/// Sample a plan with a collision-free start pose.
pub fn plan_motion(
    scene: &Scene,
    model: &BodyModel,
    seed: u64,
    fps: f64,
    max_frames: usize,
    params: &MotionParams,
) -> Result<MotionPlan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = &scene.bounds;
    let mg = params.start_margin;
    let z = scene.floor_height + model.hip_height;
    let mut start = None;
    for _ in 0..params.start_attempts {
        let x = rng.gen_range(b.min[0] + mg..b.max[0] - mg);
        let y = rng.gen_range(b.min[1] + mg..b.max[1] - mg);
        let yaw = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let st = BodyState::new(model, Vec3::new(x, y, z), yaw, phase);
        if check_collision(scene, model, &st).is_none() {
            start = Some((x, y, yaw, phase));
            break;
        }
    }
    let (x, y, yaw, phase) =
        start.ok_or(Error::PlacementFailure { attempts: params.start_attempts })?;
    let speed = rng.gen_range(params.min_speed..=params.max_speed);
    let max_inc = params.max_yaw_rate / fps;
    let yaw_increments: Vec<f64> =
        (0..max_frames).map(|_| rng.gen_range(-max_inc..=max_inc)).collect();
    Ok(MotionPlan {
        start_xy: [x, y],
        start_yaw: yaw,
        start_phase: phase,
        speed,
        fps,
        yaw_increments,
        stride_length: params.stride_length,
    })
}

/// Roll a plan forward, truncating at the first collision.
pub fn rollout_plan(
    scene: &Scene,
    model: &BodyModel,
    plan: &MotionPlan,
    max_frames: usize,
) -> MotionSequence {
    let mut states = vec![plan.start_state(scene, model)];
    let mut terminal = None;
    while states.len() < max_frames {
        let frame = states.len() - 1;
        let next = plan.step(scene, model, states.last().unwrap(), frame, 0.0);
        states.push(next);
        if let Some(mut ev) = check_collision(scene, model, states.last().unwrap()) {
            ev.timestep = states.len() - 1;
            terminal = Some(ev);
            break;
        }
    }
    MotionSequence { states, terminal_event: terminal, fps: plan.fps }
}

/// Generate one motion sequence: plan + rollout.
///
/// The sequence ends at `max_frames` or at the first detected collision,
/// whichever comes first. The start pose is collision-free.
pub fn sample_motion(
    scene: &Scene,
    model: &BodyModel,
    seed: u64,
    fps: f64,
    max_frames: usize,
    params: &MotionParams,
) -> Result<MotionSequence> {
    if fps <= 0.0 {
        return Err(Error::Config("fps must be positive".into()));
    }
    if max_frames == 0 {
        return Err(Error::Config("max_frames must be >= 1".into()));
    }
    let plan = plan_motion(scene, model, seed, fps, max_frames, params)?;
    Ok(rollout_plan(scene, model, &plan, max_frames))
}
