//! Pipeline configuration: JSON file, flag overrides, validation.
//!
//! Precedence is flag > file > default.

use serde::{Deserialize, Serialize};

use roadchange::Alpha64;

use crate::error::CliError;

/// Every tunable that affects pipeline output. The whole struct is embedded
/// in the run manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    /// Probability threshold; a pixel is road iff its value exceeds this.
    pub threshold: f64,
    /// Dilation radius (px) applied to both masks before differencing.
    pub dilation_radius: usize,
    /// Difference features thinner than this many pixels are noise.
    pub min_width: usize,
    /// Registration search radius in pixels.
    pub search_radius: usize,
    /// RDP simplification tolerance in world units.
    pub rdp_epsilon: f64,
    /// Sub-segment slice length `l` in world units.
    pub slice_length: f64,
    /// Maximum midpoint-to-edge distance for damage assignment.
    pub max_assign_dist: f64,
    /// Impact factor; "inf" removes assigned roads outright.
    pub alpha: AlphaValue,
    /// Lower clamp for the assignment distance in the cost formula.
    pub d_min: f64,
    /// Heatmap cell size in pixels.
    pub heatmap_cell: usize,
    /// Paths shorter than `ratio_low * truth` count as Too Short.
    pub ratio_low: f64,
    /// Paths longer than `ratio_high * truth` count as Too Long.
    pub ratio_high: f64,
    /// Number of source-destination pairs for connectivity evaluation.
    pub pair_count: usize,
    /// Seed for pair sampling and scene generation.
    pub seed: u64,
    /// Skeleton spurs shorter than this many pixels are pruned (0 disables).
    pub min_spur_px: f64,
    /// Endpoint snap tolerance when importing vector networks.
    pub snap_tolerance: f64,
    /// Pair endpoints map to the other graph's nearest node within this.
    pub node_map_tolerance: f64,
    /// Minimum euclidean separation of sampled pairs.
    pub pair_min_separation: f64,
    /// Raster resolution for synthetic scenes, world units per pixel.
    pub pixel_size: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            threshold: 0.5,
            dilation_radius: 2,
            min_width: 3,
            search_radius: 10,
            rdp_epsilon: 2.0,
            slice_length: 20.0,
            max_assign_dist: 30.0,
            alpha: AlphaValue(Alpha64::Infinite),
            d_min: 1.0,
            heatmap_cell: 100,
            ratio_low: 0.9,
            ratio_high: 1.1,
            pair_count: 1000,
            seed: 0,
            min_spur_px: 5.0,
            snap_tolerance: 1.0,
            node_map_tolerance: 30.0,
            pair_min_separation: 50.0,
            pixel_size: 0.5,
        }
    }
}

impl PipelineConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        let config: PipelineConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    /// Loads the file when given, otherwise defaults; then applies flags.
    pub fn resolve(
        file: Option<&std::path::Path>,
        overrides: &ConfigOverrides,
    ) -> Result<Self, CliError> {
        let mut config = match file {
            Some(path) => Self::from_file(path)?,
            None => PipelineConfig::default(),
        };
        overrides.apply(&mut config)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::parse(format!("invalid config: {what}")))
            }
        };
        check(
            (0.0..=1.0).contains(&self.threshold),
            "threshold must be in [0, 1]",
        )?;
        check(self.min_width >= 1, "min_width must be >= 1")?;
        check(self.rdp_epsilon >= 0.0, "rdp_epsilon must be >= 0")?;
        check(self.slice_length > 0.0, "slice_length must be > 0")?;
        check(self.max_assign_dist > 0.0, "max_assign_dist must be > 0")?;
        check(self.d_min > 0.0, "d_min must be > 0")?;
        check(self.heatmap_cell >= 1, "heatmap_cell must be >= 1")?;
        check(
            self.ratio_low > 0.0 && self.ratio_low <= 1.0,
            "ratio_low must be in (0, 1]",
        )?;
        check(self.ratio_high >= 1.0, "ratio_high must be >= 1")?;
        check(self.min_spur_px >= 0.0, "min_spur_px must be >= 0")?;
        check(self.snap_tolerance >= 0.0, "snap_tolerance must be >= 0")?;
        check(
            self.node_map_tolerance >= 0.0,
            "node_map_tolerance must be >= 0",
        )?;
        check(
            self.pair_min_separation >= 0.0,
            "pair_min_separation must be >= 0",
        )?;
        check(self.pixel_size > 0.0, "pixel_size must be > 0")?;
        Ok(())
    }
}

/// Alpha in config files: a JSON number >= 1 or the string "inf".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaValue(pub Alpha64);

impl Serialize for AlphaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Alpha64::Finite(v) => s.serialize_f64(v),
            Alpha64::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = serde_json::Value::deserialize(d)?;
        let parsed = match &raw {
            serde_json::Value::Number(n) => n.as_f64().and_then(|v| {
                Alpha64::parse(&v.to_string())
            }),
            serde_json::Value::String(s) => Alpha64::parse(s),
            _ => None,
        };
        parsed
            .map(AlphaValue)
            .ok_or_else(|| D::Error::custom(format!("alpha must be a number >= 1 or \"inf\", got {raw}")))
    }
}

/// Optional per-field overrides collected from command-line flags.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub threshold: Option<f64>,
    pub dilation_radius: Option<usize>,
    pub min_width: Option<usize>,
    pub search_radius: Option<usize>,
    pub rdp_epsilon: Option<f64>,
    pub slice_length: Option<f64>,
    pub max_assign_dist: Option<f64>,
    pub alpha: Option<String>,
    pub d_min: Option<f64>,
    pub heatmap_cell: Option<usize>,
    pub ratio_low: Option<f64>,
    pub ratio_high: Option<f64>,
    pub pair_count: Option<usize>,
    pub seed: Option<u64>,
    pub min_spur_px: Option<f64>,
    pub snap_tolerance: Option<f64>,
    pub node_map_tolerance: Option<f64>,
    pub pair_min_separation: Option<f64>,
    pub pixel_size: Option<f64>,
}

impl ConfigOverrides {
    fn apply(&self, config: &mut PipelineConfig) -> Result<(), CliError> {
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field {
                    config.$field = v;
                }
            };
        }
        set!(threshold);
        set!(dilation_radius);
        set!(min_width);
        set!(search_radius);
        set!(rdp_epsilon);
        set!(slice_length);
        set!(max_assign_dist);
        set!(d_min);
        set!(heatmap_cell);
        set!(ratio_low);
        set!(ratio_high);
        set!(pair_count);
        set!(seed);
        set!(min_spur_px);
        set!(snap_tolerance);
        set!(node_map_tolerance);
        set!(pair_min_separation);
        set!(pixel_size);
        if let Some(text) = &self.alpha {
            config.alpha = AlphaValue(Alpha64::parse(text).ok_or_else(|| {
                CliError::parse(format!("--alpha must be a number >= 1 or \"inf\", got {text:?}"))
            })?);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PipelineConfig::default().validate().unwrap();
    }

    #[test]
    fn json_roundtrip_is_lossless() {
        let mut config = PipelineConfig {
            alpha: AlphaValue(Alpha64::Finite(5.0)),
            seed: 99,
            ..PipelineConfig::default()
        };
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back: PipelineConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);

        config.alpha = AlphaValue(Alpha64::Infinite);
        let text = serde_json::to_string(&config).unwrap();
        assert!(text.contains("\"inf\""));
        let back: PipelineConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn partial_file_fills_from_defaults() {
        let config: PipelineConfig =
            serde_json::from_str(r#"{"threshold": 0.6, "alpha": 5}"#).unwrap();
        assert_eq!(config.threshold, 0.6);
        assert_eq!(config.alpha, AlphaValue(Alpha64::Finite(5.0)));
        assert_eq!(config.slice_length, 20.0, "unset fields keep defaults");
    }

    #[test]
    fn unknown_fields_rejected() {
        let result: Result<PipelineConfig, _> =
            serde_json::from_str(r#"{"thresh": 0.6}"#);
        assert!(result.is_err());
    }

    #[test]
    fn flag_beats_file_beats_default() {
        let overrides = ConfigOverrides {
            threshold: Some(0.7),
            alpha: Some("inf".into()),
            ..Default::default()
        };
        // pretend threshold and alpha came from a file
        let mut config = PipelineConfig {
            threshold: 0.4,
            alpha: AlphaValue(Alpha64::Finite(2.0)),
            ..PipelineConfig::default()
        };
        overrides.apply(&mut config).unwrap();
        assert_eq!(config.threshold, 0.7);
        assert_eq!(config.alpha, AlphaValue(Alpha64::Infinite));
    }

    #[test]
    fn bad_alpha_rejected() {
        let result: Result<PipelineConfig, _> =
            serde_json::from_str(r#"{"alpha": 0.2}"#);
        assert!(result.is_err());
        let overrides = ConfigOverrides {
            alpha: Some("zero".into()),
            ..Default::default()
        };
        let mut config = PipelineConfig::default();
        assert!(overrides.apply(&mut config).is_err());
    }

    #[test]
    fn out_of_range_values_fail_validation() {
        let config = PipelineConfig {
            threshold: 1.5,
            ..PipelineConfig::default()
        };
        assert!(config.validate().is_err());
        let config = PipelineConfig {
            ratio_low: 0.0,
            ..PipelineConfig::default()
        };
        assert!(config.validate().is_err());
    }
}
