//! Body-mounted pinhole cameras and point projection.
//!
//! Conventions: z is up; a camera is positioned at its mount point plus a
//! small offset along the body heading, yawed with the body, and pitched by a
//! fixed per-mount angle (head and pelvis level, wrists 10 degrees down,
//! knees 20 degrees down). Pixel (r, c) covers the continuous image square
//! [c, c+1) x [r, r+1); the optical axis lands at (W/2, H/2).

use crate::body::{BodyModel, BodyState, CameraMount, Joint, MOUNT_ORDER};
use crate::geom::{Ray, Vec3};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Camera {
    pub position: Vec3,
    pub yaw: f64,
    pub pitch: f64,
    pub vertical_fov_deg: f64,
    pub height: usize,
    pub width: usize,
}

/// Forward offset of the lens from the mount point, meters.
pub const MOUNT_FORWARD_OFFSET: f64 = 0.08;

fn mount_pitch_deg(mount: CameraMount) -> f64 {
    match mount {
        CameraMount::Head | CameraMount::Pelvis => 0.0,
        CameraMount::LeftWrist | CameraMount::RightWrist => -10.0,
        CameraMount::LeftKnee | CameraMount::RightKnee => -20.0,
    }
}

fn mount_position(mount: CameraMount, state: &BodyState) -> Vec3 {
    let j = |j: Joint| state.joint_world_positions[j as usize];
    match mount {
        CameraMount::Head => j(Joint::Head),
        CameraMount::Pelvis => state.root_position,
        CameraMount::LeftWrist => j(Joint::LeftHand),
        CameraMount::RightWrist => j(Joint::RightHand),
        CameraMount::LeftKnee => j(Joint::LeftLeg),
        CameraMount::RightKnee => j(Joint::RightLeg),
    }
}

impl Camera {
    /// Orthonormal basis: forward, image-right, image-down.
    pub fn basis(&self) -> (Vec3, Vec3, Vec3) {
        let (cy, sy) = (self.yaw.cos(), self.yaw.sin());
        let (cp, sp) = (self.pitch.cos(), self.pitch.sin());
        let forward = Vec3::new(cy * cp, sy * cp, sp);
        let right = Vec3::new(sy, -cy, 0.0);
        let down = forward.cross(right).normalized() * -1.0;
        // forward x right = up for this handedness; flip to image-down.
        (forward, right, down)
    }

    pub fn focal_px(&self) -> f64 {
        (self.height as f64 / 2.0) / (self.vertical_fov_deg.to_radians() / 2.0).tan()
    }

    /// Pinhole projection to continuous pixel coordinates (u = column,
    /// v = row). None when the point is behind the camera or outside the
    /// image rectangle.
    pub fn project(&self, p: Vec3) -> Option<(f64, f64)> {
        let (fwd, right, down) = self.basis();
        let d = p - self.position;
        let z = d.dot(fwd);
        if z <= 1e-9 {
            return None;
        }
        let f = self.focal_px();
        let u = self.width as f64 / 2.0 + f * d.dot(right) / z;
        let v = self.height as f64 / 2.0 + f * d.dot(down) / z;
        if u < 0.0 || u >= self.width as f64 || v < 0.0 || v >= self.height as f64 {
            return None;
        }
        Some((u, v))
    }

    /// Primary ray through the center of pixel (row, col), unit direction.
    pub fn pixel_ray(&self, row: usize, col: usize) -> Ray {
        let (fwd, right, down) = self.basis();
        let f = self.focal_px();
        let u = col as f64 + 0.5 - self.width as f64 / 2.0;
        let v = row as f64 + 0.5 - self.height as f64 / 2.0;
        let dir = (fwd + right * (u / f) + down * (v / f)).normalized();
        Ray { origin: self.position, dir }
    }
}

/// Mount the first `views` cameras of the fixed mount order on the body.
pub fn mount_cameras(
    state: &BodyState,
    _model: &BodyModel,
    views: usize,
    resolution: usize,
    vertical_fov_deg: f64,
) -> Vec<Camera> {
    assert!(views <= MOUNT_ORDER.len(), "at most {} views", MOUNT_ORDER.len());
    let heading = state.forward();
    MOUNT_ORDER[..views]
        .iter()
        .map(|&mount| Camera {
            position: mount_position(mount, state) + heading * MOUNT_FORWARD_OFFSET,
            yaw: state.root_yaw,
            pitch: mount_pitch_deg(mount).to_radians(),
            vertical_fov_deg,
            height: resolution,
            width: resolution,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::BodyModel;

    fn cam() -> Camera {
        Camera {
            position: Vec3::new(0.0, 0.0, 1.0),
            yaw: 0.0,
            pitch: 0.0,
            vertical_fov_deg: 90.0,
            height: 64,
            width: 64,
        }
    }

    #[test]
    fn optical_axis_projects_to_center() {
        let c = cam();
        for depth in [0.5, 2.0, 17.0] {
            let (u, v) = c.project(Vec3::new(depth, 0.0, 1.0)).unwrap();
            assert!((u - 32.0).abs() < 1e-9);
            assert!((v - 32.0).abs() < 1e-9);
        }
    }

    #[test]
    fn behind_camera_is_none() {
        let c = cam();
        assert!(c.project(Vec3::new(-1.0, 0.0, 1.0)).is_none());
    }

    #[test]
    fn head_camera_placement_identity_pose() {
        let model = BodyModel::default();
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        let cams = mount_cameras(&st, &model, 6, 64, 90.0);
        let head = &cams[0];
        let head_z = 0.9 + model.joints[0].vertical;
        assert!((head.position.x - MOUNT_FORWARD_OFFSET).abs() < 1e-12);
        assert!((head.position.z - head_z).abs() < 1e-12);
        let (fwd, _, _) = head.basis();
        assert!((fwd.x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn yawed_pose_rotates_all_forwards() {
        let model = BodyModel::default();
        let a = BodyState::new(&model, Vec3::ZERO, 0.0, 0.0);
        let b = BodyState::new(&model, Vec3::ZERO, std::f64::consts::FRAC_PI_2, 0.0);
        let ca = mount_cameras(&a, &model, 6, 32, 90.0);
        let cb = mount_cameras(&b, &model, 6, 32, 90.0);
        for (x, y) in ca.iter().zip(&cb) {
            let (fa, _, _) = x.basis();
            let (fb, _, _) = y.basis();
            // 90 degree z-rotation maps (x, y) to (-y, x).
            assert!((fb.x + fa.y).abs() < 1e-12);
            assert!((fb.y - fa.x).abs() < 1e-12);
            assert!((fb.z - fa.z).abs() < 1e-12);
        }
    }

    #[test]
    fn gait_moves_wrist_camera_not_head() {
        let model = BodyModel::default();
        let a = BodyState::new(&model, Vec3::ZERO, 0.0, 0.0);
        let b = BodyState::new(&model, Vec3::ZERO, 0.0, 1.3);
        let ca = mount_cameras(&a, &model, 6, 32, 90.0);
        let cb = mount_cameras(&b, &model, 6, 32, 90.0);
        assert_eq!(ca[0].position, cb[0].position); // head
        assert_eq!(ca[1].position, cb[1].position); // pelvis
        let d = (ca[2].position - cb[2].position).norm(); // left wrist
        assert!(d > 1e-3);
    }
}
