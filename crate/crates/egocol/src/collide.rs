//! Body/scene collision checking and contact-to-joint assignment.
//!
//! Each body joint carries a collision sphere. A collision is any sphere
//! intersecting any obstacle; floor contact is locomotion, not collision,
//! and is never reported. Self-collisions are out of scope.

use crate::body::{BodyModel, BodyState, JOINT_COUNT};
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::scene::Scene;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionEvent {
    /// Frame index within the owning sequence.
    pub timestep: usize,
    /// Deepest-penetration point per intersecting (sphere, obstacle) pair.
    pub contact_points: Vec<Vec3>,
    /// Joints whose collision spheres intersect an obstacle.
    pub colliding_joints: [bool; JOINT_COUNT],
}

/// Check all joint spheres against all obstacles.
///
/// Returns an event (with `timestep` 0; the motion loop fills it in) iff any
/// sphere intersects any obstacle. The contact point for a pair is the point
/// on the obstacle surface closest to the sphere center, which is the
/// deepest-penetration point.
pub fn check_collision(scene: &Scene, model: &BodyModel, state: &BodyState) -> Option<CollisionEvent> {
    let mut contacts = Vec::new();
    let mut joints = [false; JOINT_COUNT];
    for (j, spec) in model.joints.iter().enumerate() {
        let c = state.joint_world_positions[j];
        for ob in &scene.obstacles {
            if ob.shape.distance(c) <= spec.radius {
                contacts.push(ob.shape.surface_point(c));
                joints[j] = true;
            }
        }
    }
    if contacts.is_empty() {
        None
    } else {
        Some(CollisionEvent { timestep: 0, contact_points: contacts, colliding_joints: joints })
    }
}

/// Assign each contact point to the closest joint (ties go to the lowest
/// joint index) and return the per-joint involvement vector.
pub fn assign_joints(contacts: &[Vec3], state: &BodyState) -> Result<[bool; JOINT_COUNT]> {
    if contacts.is_empty() {
        return Err(Error::Contract("assign_joints requires non-empty contacts".into()));
    }
    let mut out = [false; JOINT_COUNT];
    for &p in contacts {
        let mut best = 0usize;
        let mut best_d = (p - state.joint_world_positions[0]).norm();
        for j in 1..JOINT_COUNT {
            let d = (p - state.joint_world_positions[j]).norm();
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        out[best] = true;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Joint;
    use crate::geom::Shape;
    use crate::scene::{Bounds2, Obstacle};

    fn empty_room() -> Scene {
        Scene {
            schema_version: 1,
            scene_id: "room".into(),
            seed: 0,
            bounds: Bounds2 { min: [-5.0, -5.0], max: [5.0, 5.0] },
            floor_height: 0.0,
            obstacles: vec![Obstacle {
                shape: Shape::Box { center: [4.5, 4.5, 0.5], half_extents: [0.2, 0.2, 0.5] },
                albedo: [0.5, 0.5, 0.5],
            }],
        }
    }

    #[test]
    fn centered_body_no_event() {
        let scene = empty_room();
        let model = BodyModel::default();
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        assert!(check_collision(&scene, &model, &st).is_none());
    }

    #[test]
    fn sphere_center_on_face_counts_as_contact() {
        let model = BodyModel::default();
        let mut scene = empty_room();
        // Box face exactly at the left hand center.
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        let hand = st.joint_world_positions[Joint::LeftHand as usize];
        scene.obstacles.push(Obstacle {
            shape: Shape::Box {
                center: [hand.x, hand.y + 0.3, hand.z],
                half_extents: [0.3, 0.3, 0.3],
            },
            albedo: [0.5, 0.5, 0.5],
        });
        let ev = check_collision(&scene, &model, &st).expect("boundary contact");
        assert!(ev.colliding_joints[Joint::LeftHand as usize]);
        assert!(!ev.contact_points.is_empty());
    }

    #[test]
    fn assign_single_contact_at_head() {
        let model = BodyModel::default();
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        let head = st.joint_world_positions[Joint::Head as usize];
        let v = assign_joints(&[head], &st).unwrap();
        let expect: Vec<usize> = vec![Joint::Head as usize];
        for (j, &on) in v.iter().enumerate() {
            assert_eq!(on, expect.contains(&j));
        }
    }

    #[test]
    fn assign_tie_goes_to_lower_index() {
        let model = BodyModel::default();
        // Zero gait phase keeps left/right hands mirror-symmetric about y=0.
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        let lh = st.joint_world_positions[Joint::LeftHand as usize];
        let rh = st.joint_world_positions[Joint::RightHand as usize];
        let mid = (lh + rh) * 0.5;
        let v = assign_joints(&[mid], &st).unwrap();
        // Equidistant from both hands; torso may still be closer, so assert
        // against an explicit argmin-with-tie-break recomputation.
        let mut best = 0;
        let mut best_d = (mid - st.joint_world_positions[0]).norm();
        for j in 1..JOINT_COUNT {
            let d = (mid - st.joint_world_positions[j]).norm();
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        assert!(v[best]);
        assert_eq!(v.iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn assign_empty_contacts_is_error() {
        let model = BodyModel::default();
        let st = BodyState::new(&model, Vec3::new(0.0, 0.0, 0.9), 0.0, 0.0);
        assert!(assign_joints(&[], &st).is_err());
    }
}
