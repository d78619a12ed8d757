//! User-to-edge wireless channel: mean interference, SINR and Shannon bitrate.

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("access-point count must be at least 1")]
pub struct ZeroAccessPoints;

/// Mean interference power (W) at an edge node with `n_attached` users
/// spread over `ac` access points. Zero once each access point serves at
/// most one user.
pub fn mean_interference(
    n_attached: usize,
    ac: u32,
    tx_power_w: f64,
    power_gain: f64,
) -> Result<f64, ZeroAccessPoints> {
    if ac == 0 {
        return Err(ZeroAccessPoints);
    }
    let load = n_attached as f64 / f64::from(ac);
    Ok(if load > 1.0 { (load - 1.0) * tx_power_w * power_gain } else { 0.0 })
}

pub fn sinr(tx_power_w: f64, power_gain: f64, noise_w: f64, interference_w: f64) -> f64 {
    tx_power_w * power_gain / (noise_w + interference_w)
}

/// Shannon capacity `W * log2(1 + sinr)` in bit/s.
pub fn wireless_bitrate(bandwidth_hz: f64, sinr: f64) -> f64 {
    bandwidth_hz * (1.0 + sinr).log2()
}

/// Channel constants needed to turn an attachment count into a bitrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub bandwidth_hz: f64,
    pub power_gain: f64,
    pub noise_w: f64,
    pub tx_power_w: f64,
}

impl Channel {
    /// Uplink bitrate seen by each of `n_attached` users on an edge node
    /// with `ac` access points.
    pub fn uplink_bitrate(&self, n_attached: usize, ac: u32) -> Result<f64, ZeroAccessPoints> {
        let i = mean_interference(n_attached, ac, self.tx_power_w, self.power_gain)?;
        Ok(wireless_bitrate(
            self.bandwidth_hz,
            sinr(self.tx_power_w, self.power_gain, self.noise_w, i),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const P: f64 = 0.1;
    const H: f64 = 1e-5;

    #[test]
    fn interference_examples() {
        assert_relative_eq!(mean_interference(10, 5, P, H).unwrap(), 1e-6, max_relative = 1e-12);
        assert_eq!(mean_interference(3, 5, P, H).unwrap(), 0.0);
        assert_relative_eq!(mean_interference(5, 1, P, H).unwrap(), 4e-6, max_relative = 1e-12);
        assert_eq!(mean_interference(1, 0, P, H), Err(ZeroAccessPoints));
    }

    #[test]
    fn ratio_is_real_valued() {
        // 7/2 = 3.5, not 3
        assert_relative_eq!(mean_interference(7, 2, P, H).unwrap(), 2.5 * P * H, max_relative = 1e-12);
    }

    #[test]
    fn sinr_examples() {
        assert_relative_eq!(sinr(P, H, 1e-13, 0.0), 1e7, max_relative = 1e-12);
        assert_relative_eq!(sinr(P, H, 1e-20, P * H), 1.0, max_relative = 1e-6);
        assert_relative_eq!(sinr(2.0 * P, H, 1e-13, 0.0), 2.0 * sinr(P, H, 1e-13, 0.0), max_relative = 1e-12);
    }

    #[test]
    fn bitrate_examples() {
        assert_eq!(wireless_bitrate(1e7, 1.0), 1e7);
        assert_eq!(wireless_bitrate(1e7, 3.0), 2e7);
        assert_eq!(wireless_bitrate(1e7, 0.0), 0.0);
    }

    #[test]
    fn bitrate_scales_with_bandwidth_units() {
        // bit/s per Hz is dimensionless: halving W halves the rate at any SINR
        for s in [0.1, 1.0, 17.0, 1e7] {
            assert_relative_eq!(wireless_bitrate(5e6, s) * 2.0, wireless_bitrate(1e7, s), max_relative = 1e-12);
        }
    }

    #[test]
    fn enough_access_points_remove_interference() {
        for n in 0..40usize {
            let ac = n.max(1) as u32;
            assert_eq!(mean_interference(n, ac, P, H).unwrap(), 0.0);
        }
    }

    proptest! {
        #[test]
        fn bitrate_monotone(s in 0.0f64..1e6, ds in 1e-3f64..10.0, w in 1e3f64..1e8) {
            prop_assert!(wireless_bitrate(w, s + ds) > wireless_bitrate(w, s));
            prop_assert!(wireless_bitrate(w * 1.5, s + ds) > wireless_bitrate(w, s + ds));
        }

        #[test]
        fn interference_monotone(n in 0usize..500, ac in 1u32..20) {
            let base = mean_interference(n, ac, P, H).unwrap();
            prop_assert!(mean_interference(n + 1, ac, P, H).unwrap() >= base);
            prop_assert!(mean_interference(n, ac + 1, P, H).unwrap() <= base);
        }
    }
}
