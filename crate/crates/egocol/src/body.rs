//! Simplified articulated body: 10 collision spheres driven by a procedural
//! gait, plus 6 named camera mount points.
//!
//! Joint order is fixed: head, torso, left/right elbow, left/right hand,
//! left/right leg (knee), left/right foot. Camera mount order is fixed:
//! head, pelvis, left/right wrist, left/right knee. The pelvis mount sits at
//! the body root and is the "root view" used by single-view models and the
//! avoidance controller.

use crate::geom::Vec3;
use serde::{Deserialize, Serialize};

pub const JOINT_COUNT: usize = 10;
pub const MOUNT_COUNT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Joint {
    Head = 0,
    Torso = 1,
    LeftElbow = 2,
    RightElbow = 3,
    LeftHand = 4,
    RightHand = 5,
    LeftLeg = 6,
    RightLeg = 7,
    LeftFoot = 8,
    RightFoot = 9,
}

pub const JOINT_NAMES: [&str; JOINT_COUNT] = [
    "head",
    "torso",
    "left_elbow",
    "right_elbow",
    "left_hand",
    "right_hand",
    "left_leg",
    "right_leg",
    "left_foot",
    "right_foot",
];

/// Camera mount points, in their fixed order. Index 1 (pelvis) is the root view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CameraMount {
    Head = 0,
    Pelvis = 1,
    LeftWrist = 2,
    RightWrist = 3,
    LeftKnee = 4,
    RightKnee = 5,
}

pub const MOUNT_ORDER: [CameraMount; MOUNT_COUNT] = [
    CameraMount::Head,
    CameraMount::Pelvis,
    CameraMount::LeftWrist,
    CameraMount::RightWrist,
    CameraMount::LeftKnee,
    CameraMount::RightKnee,
];

/// Index of the pelvis (root) view among the first `views` mounts, if present.
pub fn root_view_index(views: usize) -> Option<usize> {
    if views >= 2 {
        Some(1)
    } else {
        None
    }
}

/// Static per-joint layout: lateral/vertical offset from the root, collision
/// sphere radius, and gait swing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointSpec {
    /// Offset to the body's left, meters.
    pub lateral: f64,
    /// Offset above the root, meters.
    pub vertical: f64,
    pub radius: f64,
    /// Fore-aft swing amplitude, meters.
    pub swing_amplitude: f64,
    /// Phase offset added to the gait phase.
    pub swing_phase: f64,
    /// Vertical lift amplitude (used by the feet), meters.
    pub lift_amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyModel {
    /// Root (pelvis) height above the floor, meters.
    pub hip_height: f64,
    pub joints: [JointSpec; JOINT_COUNT],
}

impl Default for BodyModel {
    fn default() -> Self {
        use std::f64::consts::PI;
        let j = |lateral, vertical, radius, swing_amplitude, swing_phase, lift_amplitude| JointSpec {
            lateral,
            vertical,
            radius,
            swing_amplitude,
            swing_phase,
            lift_amplitude,
        };
        BodyModel {
            hip_height: 0.90,
            joints: [
                j(0.0, 0.70, 0.11, 0.0, 0.0, 0.0),    // head
                j(0.0, 0.30, 0.16, 0.0, 0.0, 0.0),    // torso
                j(0.22, 0.28, 0.06, 0.10, PI, 0.0),   // left elbow (opposes left leg)
                j(-0.22, 0.28, 0.06, 0.10, 0.0, 0.0), // right elbow
                j(0.24, 0.02, 0.05, 0.22, PI, 0.0),   // left hand
                j(-0.24, 0.02, 0.05, 0.22, 0.0, 0.0), // right hand
                j(0.10, -0.45, 0.07, 0.18, 0.0, 0.0), // left leg (knee)
                j(-0.10, -0.45, 0.07, 0.18, PI, 0.0), // right leg
                j(0.10, -0.85, 0.05, 0.30, 0.0, 0.06), // left foot
                j(-0.10, -0.85, 0.05, 0.30, PI, 0.06), // right foot
            ],
        }
    }
}

/// Body pose at one instant. Joint world positions are derived on
/// construction from (root_position, root_yaw, gait_phase).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyState {
    pub root_position: Vec3,
    pub root_yaw: f64,
    pub gait_phase: f64,
    pub joint_world_positions: [Vec3; JOINT_COUNT],
}

impl BodyState {
    pub fn new(model: &BodyModel, root_position: Vec3, root_yaw: f64, gait_phase: f64) -> Self {
        let fwd = Vec3::new(root_yaw.cos(), root_yaw.sin(), 0.0);
        let left = Vec3::new(-root_yaw.sin(), root_yaw.cos(), 0.0);
        let mut joints = [Vec3::ZERO; JOINT_COUNT];
        for (i, spec) in model.joints.iter().enumerate() {
            let s = (gait_phase + spec.swing_phase).sin();
            let lift = spec.lift_amplitude * s.max(0.0);
            joints[i] = root_position
                + fwd * (spec.swing_amplitude * s)
                + left * spec.lateral
                + Vec3::new(0.0, 0.0, spec.vertical + lift);
        }
        BodyState { root_position, root_yaw, gait_phase, joint_world_positions: joints }
    }

    pub fn forward(&self) -> Vec3 {
        Vec3::new(self.root_yaw.cos(), self.root_yaw.sin(), 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_above_root_and_feet_above_floor() {
        let model = BodyModel::default();
        for k in 0..32 {
            let phase = k as f64 * 0.41;
            let st = BodyState::new(&model, Vec3::new(1.0, -2.0, 0.9), 0.7, phase);
            assert!(st.joint_world_positions[Joint::Head as usize].z > st.root_position.z);
            let floor = st.root_position.z - model.hip_height;
            for foot in [Joint::LeftFoot, Joint::RightFoot] {
                assert!(st.joint_world_positions[foot as usize].z >= floor - 1e-12);
            }
        }
    }

    #[test]
    fn fk_is_deterministic() {
        let model = BodyModel::default();
        let a = BodyState::new(&model, Vec3::new(0.3, 0.4, 0.9), 1.2, 2.5);
        let b = BodyState::new(&model, Vec3::new(0.3, 0.4, 0.9), 1.2, 2.5);
        assert_eq!(a, b);
    }

    #[test]
    fn yaw_rotates_lateral_offsets() {
        let model = BodyModel::default();
        let a = BodyState::new(&model, Vec3::ZERO, 0.0, 0.0);
        let b = BodyState::new(&model, Vec3::ZERO, std::f64::consts::FRAC_PI_2, 0.0);
        // Left hand sits to the body's left: +y at yaw 0, -x at yaw 90.
        let lh = Joint::LeftHand as usize;
        assert!(a.joint_world_positions[lh].y > 0.2);
        assert!(b.joint_world_positions[lh].x < -0.2);
    }
}
