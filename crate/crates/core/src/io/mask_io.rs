//! Loading and saving masks with their geo sidecars.
//!
//! Format is chosen by extension: `.pgm` (P5) or `.png` (8-bit grayscale).
//! Byte `b` maps to probability `b / 255`; binary masks save as 0 / 255.

use std::path::Path;

use crate::error::Error;
use crate::io::{read_geo_sidecar, read_pgm, read_png_gray8, write_geo_sidecar, write_pgm,
    write_png_gray8};
use crate::raster::{BinaryMask, GeoTransform, ProbabilityMask};
use crate::scalar::Scalar;
use crate::Result;

enum Format {
    Pgm,
    Png,
}

fn format_of(path: &Path) -> Result<Format> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("pgm") => Ok(Format::Pgm),
        Some("png") => Ok(Format::Png),
        other => Err(Error::Parse(format!(
            "unsupported raster extension {other:?} (use .pgm or .png)"
        ))),
    }
}

/// Loads a probability mask; a missing sidecar falls back to the unit
/// geotransform.
pub fn load_probability_mask<S: Scalar>(path: &Path) -> Result<ProbabilityMask<S>> {
    let (width, height, bytes) = match format_of(path)? {
        Format::Pgm => read_pgm(path)?,
        Format::Png => read_png_gray8(path)?,
    };
    let geo = read_geo_sidecar(path)?.unwrap_or_else(GeoTransform::unit);
    let inv = S::of(1.0 / 255.0);
    let values = bytes.into_iter().map(|b| S::of(f64::from(b)) * inv).collect();
    ProbabilityMask::new(width, height, values, geo)
}

/// Saves a probability mask as bytes `round(p * 255)` plus its sidecar.
pub fn save_probability_mask<S: Scalar>(path: &Path, mask: &ProbabilityMask<S>) -> Result<()> {
    let bytes: Vec<u8> = mask
        .values()
        .iter()
        .map(|v| (v.widen() * 255.0).round().clamp(0.0, 255.0) as u8)
        .collect();
    match format_of(path)? {
        Format::Pgm => write_pgm(path, mask.width(), mask.height(), &bytes)?,
        Format::Png => write_png_gray8(path, mask.width(), mask.height(), &bytes)?,
    }
    write_geo_sidecar(path, &mask.geo)
}

/// Saves a binary mask as 0 / 255 plus its sidecar.
pub fn save_binary_mask<S: Scalar>(path: &Path, mask: &BinaryMask<S>) -> Result<()> {
    let bytes: Vec<u8> = mask.bits().iter().map(|b| if *b { 255 } else { 0 }).collect();
    match format_of(path)? {
        Format::Pgm => write_pgm(path, mask.width(), mask.height(), &bytes)?,
        Format::Png => write_png_gray8(path, mask.width(), mask.height(), &bytes)?,
    }
    write_geo_sidecar(path, &mask.geo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_roundtrip_with_geo() {
        let dir = std::env::temp_dir().join("roadchange_maskio_test");
        std::fs::create_dir_all(&dir).unwrap();
        for name in ["m.pgm", "m.png"] {
            let path = dir.join(name);
            let geo = GeoTransform::new(5.0, 10.0, 0.5, 0.5);
            let values = vec![0.0, 1.0, 0.2, 0.8, 0.5, 0.49];
            let mask = ProbabilityMask::new(3, 2, values, geo).unwrap();
            save_probability_mask(&path, &mask).unwrap();
            let back: ProbabilityMask<f64> = load_probability_mask(&path).unwrap();
            assert_eq!(back.geo, geo);
            assert_eq!((back.width(), back.height()), (3, 2));
            for (a, b) in back.values().iter().zip(mask.values()) {
                assert!((a - b).abs() <= 0.5 / 255.0 + 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn binary_mask_thresholds_back_exactly() {
        let dir = std::env::temp_dir().join("roadchange_maskio_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("b.pgm");
        let mask = BinaryMask::<f64>::parse(&["10", "01"]);
        save_binary_mask(&path, &mask).unwrap();
        let prob: ProbabilityMask<f64> = load_probability_mask(&path).unwrap();
        let back = prob.threshold(0.5);
        assert_eq!(back.bits(), mask.bits());
    }

    #[test]
    fn unknown_extension_rejected() {
        let mask = BinaryMask::<f64>::parse(&["1"]);
        let err = save_binary_mask(Path::new("/tmp/x.tiff"), &mask);
        assert!(matches!(err, Err(Error::Parse(_))));
    }
}
