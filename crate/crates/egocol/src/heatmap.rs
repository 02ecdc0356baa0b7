//! Collision-region heatmap annotation.
//!
//! Contacts are projected into a view, the hit pixels are set to one, the
//! impulse image is smoothed with a Gaussian kernel truncated at three
//! standard deviations, and the result is normalized into a distribution.
//! Views with no visible contact are marked invalid and left all-zero.

use crate::camera::Camera;
use crate::geom::Vec3;
use ndarray::Array2;

#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    /// (H, W), non-negative; sums to 1 when valid, all-zero otherwise.
    pub values: Array2<f32>,
    pub valid: bool,
}

impl Heatmap {
    pub fn invalid(height: usize, width: usize) -> Self {
        Heatmap { values: Array2::zeros((height, width)), valid: false }
    }

    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut best_v = f32::NEG_INFINITY;
        for ((r, c), &v) in self.values.indexed_iter() {
            if v > best_v {
                best_v = v;
                best = (r, c);
            }
        }
        best
    }
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    (-radius..=radius)
        .map(|i| (-(i as f64).powi(2) / (2.0 * sigma * sigma)).exp())
        .collect()
}

/// Separable convolution with zero padding.
fn blur(impulse: &Array2<f64>, sigma: f64) -> Array2<f64> {
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as i64;
    let (h, w) = impulse.dim();
    let mut tmp = Array2::<f64>::zeros((h, w));
    for r in 0..h {
        for c in 0..w {
            let x = impulse[[r, c]];
            if x == 0.0 {
                continue;
            }
            for (k, &kv) in kernel.iter().enumerate() {
                let cc = c as i64 + k as i64 - radius;
                if cc >= 0 && (cc as usize) < w {
                    tmp[[r, cc as usize]] += x * kv;
                }
            }
        }
    }
    let mut out = Array2::<f64>::zeros((h, w));
    for r in 0..h {
        for c in 0..w {
            let x = tmp[[r, c]];
            if x == 0.0 {
                continue;
            }
            for (k, &kv) in kernel.iter().enumerate() {
                let rr = r as i64 + k as i64 - radius;
                if rr >= 0 && (rr as usize) < h {
                    out[[rr as usize, c]] += x * kv;
                }
            }
        }
    }
    out
}

/// Annotate one view's heatmap from 3D contact points.
pub fn annotate_heatmap(contacts: &[Vec3], camera: &Camera, sigma_px: f64) -> Heatmap {
    assert!(sigma_px > 0.0, "sigma_px must be positive");
    let (h, w) = (camera.height, camera.width);
    let mut impulse = Array2::<f64>::zeros((h, w));
    let mut any = false;
    for &p in contacts {
        if let Some((u, v)) = camera.project(p) {
            let (r, c) = (v.floor() as usize, u.floor() as usize);
            impulse[[r.min(h - 1), c.min(w - 1)]] = 1.0;
            any = true;
        }
    }
    if !any {
        return Heatmap::invalid(h, w);
    }
    let blurred = blur(&impulse, sigma_px);
    let total: f64 = blurred.sum();
    let values = blurred.mapv(|v| (v / total) as f32);
    Heatmap { values, valid: true }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cam() -> Camera {
        Camera {
            position: Vec3::ZERO,
            yaw: 0.0,
            pitch: 0.0,
            vertical_fov_deg: 90.0,
            height: 64,
            width: 64,
        }
    }

    #[test]
    fn single_contact_center_argmax_and_sum() {
        let c = cam();
        let hm = annotate_heatmap(&[Vec3::new(2.0, 0.0, 0.0)], &c, 3.2);
        assert!(hm.valid);
        assert_eq!(hm.argmax(), (32, 32));
        let sum: f64 = hm.values.iter().map(|&v| v as f64).sum();
        assert!((sum - 1.0).abs() < 1e-5, "sum {sum}");
        assert!(hm.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn no_visible_contact_is_invalid_zeros() {
        let c = cam();
        let hm = annotate_heatmap(&[Vec3::new(-2.0, 0.0, 0.0)], &c, 3.2);
        assert!(!hm.valid);
        assert!(hm.values.iter().all(|&v| v == 0.0));
    }
}
