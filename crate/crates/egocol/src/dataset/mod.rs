//! Supervised windows sliced from motion sequences, plus shard I/O and
//! scene-level splits.

mod shard;
mod splits;

pub use shard::{read_shard, write_shard, ShardManifest, TensorEntry, WindowRecord};
pub use splits::{make_splits, sequence_seed, SplitKind, Splits};

use crate::body::{BodyModel, JOINT_COUNT};
use crate::camera::mount_cameras;
use crate::collide::assign_joints;
use crate::heatmap::annotate_heatmap;
use crate::motion::MotionSequence;
use crate::render::render;
use crate::scene::Scene;
use ndarray::{Array2, Array4, Array5};
use serde::{Deserialize, Serialize};

/// Input channels stored in or consumed from a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modality {
    Rgb,
    Depth,
    /// Both channel groups stored; a model picks one (or both) at load time.
    Rgbd,
}

impl Modality {
    pub fn has_rgb(self) -> bool {
        matches!(self, Modality::Rgb | Modality::Rgbd)
    }
    pub fn has_depth(self) -> bool {
        matches!(self, Modality::Depth | Modality::Rgbd)
    }
    pub fn channels(self) -> usize {
        match self {
            Modality::Rgb => 3,
            Modality::Depth => 1,
            Modality::Rgbd => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DatasetConfig {
    /// Observed frames per window (T).
    pub t_frames: usize,
    /// Prediction horizon in frames (H).
    pub horizon: usize,
    pub fps: f64,
    /// Window start step, frames.
    pub stride: usize,
    /// Camera count (first `views` of the fixed mount order).
    pub views: usize,
    /// Square image side, pixels.
    pub image_size: usize,
    pub modality: Modality,
    /// Gaussian kernel width for heatmap annotation, pixels.
    pub sigma_px: f64,
    pub vertical_fov_deg: f64,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        // Desk-scale defaults: 1-second windows and horizon at 10 fps.
        DatasetConfig {
            t_frames: 10,
            horizon: 10,
            fps: 10.0,
            stride: 10,
            views: 3,
            image_size: 64,
            modality: Modality::Rgbd,
            sigma_px: 3.2,
            vertical_fov_deg: 90.0,
        }
    }
}

impl DatasetConfig {
    pub fn validate(&self) -> crate::error::Result<()> {
        if self.t_frames == 0 || self.horizon == 0 || self.stride == 0 {
            return Err(crate::error::Error::Config(
                "t_frames, horizon and stride must be >= 1".into(),
            ));
        }
        if self.views == 0 || self.views > crate::body::MOUNT_COUNT {
            return Err(crate::error::Error::Config("views must be in 1..=6".into()));
        }
        Ok(())
    }
}

/// One training sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub window_id: String,
    pub scene_id: String,
    pub modality: Modality,
    /// (V, T, 3, H, W) quantized color, present when the modality has RGB.
    pub rgb: Option<Array5<u8>>,
    /// (V, T, H, W) depth in meters, present when the modality has depth.
    pub depth: Option<Array4<f32>>,
    pub y_col: bool,
    pub y_joint: [bool; JOINT_COUNT],
    /// (V, T, H, W) heatmaps; present only for colliding windows.
    pub y_map: Option<Array4<f32>>,
    /// (V, T) per-frame heatmap validity.
    pub map_valid: Array2<bool>,
}

impl Window {
    pub fn views(&self) -> usize {
        self.map_valid.dim().0
    }
    pub fn t_frames(&self) -> usize {
        self.map_valid.dim().1
    }
}

/// Slice a motion sequence into supervised windows.
///
/// A window observes frames [s, s+T) and is labeled colliding when the
/// sequence's terminal collision falls within the following H frames.
/// Windows whose observation span would include the terminal frame are
/// discarded (no post-collision observations exist).
pub fn slice_windows(
    seq: &MotionSequence,
    scene: &Scene,
    model: &BodyModel,
    cfg: &DatasetConfig,
    seq_tag: &str,
) -> Vec<Window> {
    let n = seq.states.len();
    let t = cfg.t_frames;
    if n < t {
        return Vec::new();
    }
    let terminal = seq.terminal_event.as_ref();
    let (terminal_t, contacts, y_joint_pos) = match terminal {
        Some(ev) => {
            let joints = assign_joints(&ev.contact_points, &seq.states[ev.timestep])
                .expect("terminal event has contacts");
            (Some(ev.timestep), ev.contact_points.clone(), joints)
        }
        None => (None, Vec::new(), [false; JOINT_COUNT]),
    };

    let mut windows = Vec::new();
    let mut s = 0usize;
    loop {
        if s + t > n {
            break;
        }
        // Discard windows that would observe the terminal frame.
        if let Some(tt) = terminal_t {
            if s + t > tt {
                break;
            }
        }
        let y_col = terminal_t.map_or(false, |tt| tt < s + t + cfg.horizon);
        let y_joint = if y_col { y_joint_pos } else { [false; JOINT_COUNT] };

        let v = cfg.views;
        let res = cfg.image_size;
        let mut rgb = cfg
            .modality
            .has_rgb()
            .then(|| Array5::<u8>::zeros((v, t, 3, res, res)));
        let mut depth = cfg
            .modality
            .has_depth()
            .then(|| Array4::<f32>::zeros((v, t, res, res)));
        let mut y_map = y_col.then(|| Array4::<f32>::zeros((v, t, res, res)));
        let mut map_valid = Array2::<bool>::from_elem((v, t), false);

        for ti in 0..t {
            let state = &seq.states[s + ti];
            let cameras = mount_cameras(state, model, v, res, cfg.vertical_fov_deg);
            for (vi, cam) in cameras.iter().enumerate() {
                let frame = render(scene, cam);
                if let Some(rgb) = rgb.as_mut() {
                    for r in 0..res {
                        for c in 0..res {
                            for ch in 0..3 {
                                rgb[[vi, ti, ch, r, c]] =
                                    (frame.rgb[[r, c, ch]] * 255.0).round().clamp(0.0, 255.0) as u8;
                            }
                        }
                    }
                }
                if let Some(depth) = depth.as_mut() {
                    for r in 0..res {
                        for c in 0..res {
                            depth[[vi, ti, r, c]] = frame.depth[[r, c]];
                        }
                    }
                }
                if y_col {
                    let hm = annotate_heatmap(&contacts, cam, cfg.sigma_px);
                    map_valid[[vi, ti]] = hm.valid;
                    if hm.valid {
                        let maps = y_map.as_mut().unwrap();
                        for r in 0..res {
                            for c in 0..res {
                                maps[[vi, ti, r, c]] = hm.values[[r, c]];
                            }
                        }
                    }
                }
            }
        }

        windows.push(Window {
            window_id: format!("{}:{}:w{:04}", scene.scene_id, seq_tag, s),
            scene_id: scene.scene_id.clone(),
            modality: cfg.modality,
            rgb,
            depth,
            y_col,
            y_joint,
            y_map,
            map_valid,
        });
        s += cfg.stride;
    }
    windows
}

/// Fraction of colliding windows, for class-balance reporting.
pub fn colliding_fraction(windows: &[Window]) -> f64 {
    if windows.is_empty() {
        return 0.0;
    }
    windows.iter().filter(|w| w.y_col).count() as f64 / windows.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collide::CollisionEvent;
    use crate::geom::{Shape, Vec3};
    use crate::motion::{rollout_plan, MotionPlan};
    use crate::scene::{Bounds2, Obstacle};

    fn tiny_cfg() -> DatasetConfig {
        DatasetConfig {
            t_frames: 3,
            horizon: 3,
            fps: 10.0,
            stride: 3,
            views: 2,
            image_size: 16,
            modality: Modality::Depth,
            sigma_px: 1.0,
            vertical_fov_deg: 90.0,
        }
    }

    fn wall_scene() -> Scene {
        Scene {
            schema_version: 1,
            scene_id: "w".into(),
            seed: 0,
            bounds: Bounds2 { min: [-6.0, -6.0], max: [6.0, 6.0] },
            floor_height: 0.0,
            obstacles: vec![Obstacle {
                shape: Shape::Box { center: [3.0, 0.0, 1.0], half_extents: [0.2, 3.0, 1.0] },
                albedo: [0.7, 0.3, 0.3],
            }],
        }
    }

    fn straight_plan(len: usize) -> MotionPlan {
        MotionPlan {
            start_xy: [0.0, 0.0],
            start_yaw: 0.0,
            start_phase: 0.0,
            speed: 1.0,
            fps: 10.0,
            yaw_increments: vec![0.0; len],
            stride_length: 0.7,
        }
    }

    #[test]
    fn no_terminal_all_negative() {
        let scene = wall_scene();
        let model = BodyModel::default();
        let plan = MotionPlan { start_yaw: std::f64::consts::PI, ..straight_plan(12) };
        let seq = rollout_plan(&scene, &model, &plan, 12);
        assert!(seq.terminal_event.is_none());
        let ws = slice_windows(&seq, &scene, &model, &tiny_cfg(), "s0");
        assert_eq!(ws.len(), 4);
        for w in &ws {
            assert!(!w.y_col);
            assert!(w.y_map.is_none());
            assert!(w.map_valid.iter().all(|&v| !v));
            assert_eq!(w.y_joint, [false; JOINT_COUNT]);
        }
    }

    #[test]
    fn label_horizon_matches_manual_math() {
        // Collision at frame 45, T=30, H=30, stride=30: window [0,30) is
        // positive because 45 in [30, 60); window [30, 60) would observe
        // frame 45 and is discarded.
        let scene = wall_scene();
        let model = BodyModel::default();
        let mut seq = MotionSequence {
            states: (0..46).map(|i| body_at(&model, -4.0 + 0.02 * i as f64)).collect(),
            terminal_event: None,
            fps: 30.0,
        };
        seq.terminal_event = Some(CollisionEvent {
            timestep: 45,
            contact_points: vec![Vec3::new(2.8, 0.0, 1.0)],
            colliding_joints: [false; JOINT_COUNT],
        });
        let cfg = DatasetConfig {
            t_frames: 30,
            horizon: 30,
            stride: 30,
            views: 1,
            image_size: 8,
            modality: Modality::Depth,
            ..tiny_cfg()
        };
        let ws = slice_windows(&seq, &scene, &model, &cfg, "s1");
        assert_eq!(ws.len(), 1);
        assert!(ws[0].y_col);
    }

    fn body_at(model: &BodyModel, x: f64) -> crate::body::BodyState {
        crate::body::BodyState::new(model, Vec3::new(x, 0.0, 0.9), 0.0, 0.0)
    }

    #[test]
    fn y_col_equals_or_of_joints() {
        let scene = wall_scene();
        let model = BodyModel::default();
        let plan = straight_plan(40);
        let seq = rollout_plan(&scene, &model, &plan, 40);
        assert!(seq.terminal_event.is_some());
        for w in slice_windows(&seq, &scene, &model, &tiny_cfg(), "s2") {
            assert_eq!(w.y_col, w.y_joint.iter().any(|&b| b));
            if !w.y_col {
                assert!(w.map_valid.iter().all(|&v| !v));
            }
        }
    }
}
