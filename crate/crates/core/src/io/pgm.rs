//! Binary (P5) PGM reading and writing, 8-bit grayscale.

use std::io::Write as _;
use std::path::Path;

use crate::error::Error;
use crate::Result;

/// Writes an 8-bit P5 PGM.
pub fn write_pgm(path: &Path, width: usize, height: usize, bytes: &[u8]) -> Result<()> {
    if bytes.len() != width * height {
        return Err(Error::Parse(format!(
            "pgm payload is {} bytes for {}x{}",
            bytes.len(),
            width,
            height
        )));
    }
    let mut out = Vec::with_capacity(bytes.len() + 32);
    write!(out, "P5\n{width} {height}\n255\n")?;
    out.extend_from_slice(bytes);
    std::fs::write(path, out)?;
    Ok(())
}

/// Reads a P5 PGM with maxval up to 255; values scale to 0..=255.
pub fn read_pgm(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let data = std::fs::read(path)?;
    parse_pgm(&data).map_err(|msg| Error::Parse(format!("{}: {msg}", path.display())))
}

fn parse_pgm(data: &[u8]) -> std::result::Result<(usize, usize, Vec<u8>), String> {
    let mut pos = 0usize;

    let mut token = |data: &[u8]| -> std::result::Result<String, String> {
        // skip whitespace and '#' comments
        loop {
            while pos < data.len() && data[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < data.len() && data[pos] == b'#' {
                while pos < data.len() && data[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < data.len() && !data[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err("unexpected end of header".into());
        }
        Ok(String::from_utf8_lossy(&data[start..pos]).into_owned())
    };

    if token(data)? != "P5" {
        return Err("not a P5 pgm".into());
    }
    let width: usize = token(data)?.parse().map_err(|_| "bad width")?;
    let height: usize = token(data)?.parse().map_err(|_| "bad height")?;
    let maxval: u32 = token(data)?.parse().map_err(|_| "bad maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(format!("unsupported maxval {maxval}"));
    }
    // exactly one whitespace byte separates the header from the payload
    pos += 1;
    let need = width * height;
    if data.len() < pos + need {
        return Err(format!(
            "payload truncated: need {need} bytes, have {}",
            data.len().saturating_sub(pos)
        ));
    }
    let mut bytes = data[pos..pos + need].to_vec();
    if maxval != 255 {
        for b in &mut bytes {
            *b = ((u32::from(*b) * 255 + maxval / 2) / maxval).min(255) as u8;
        }
    }
    Ok((width, height, bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = std::env::temp_dir().join("roadchange_pgm_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rt.pgm");
        let bytes: Vec<u8> = (0..12).map(|i| (i * 20) as u8).collect();
        write_pgm(&path, 4, 3, &bytes).unwrap();
        let (w, h, back) = read_pgm(&path).unwrap();
        assert_eq!((w, h), (4, 3));
        assert_eq!(back, bytes);
    }

    #[test]
    fn header_comments_are_skipped() {
        let data = b"P5\n# a comment\n2 2\n# another\n255\n\xff\x00\x10\x20";
        let (w, h, bytes) = parse_pgm(data).unwrap();
        assert_eq!((w, h), (2, 2));
        assert_eq!(bytes, vec![255, 0, 16, 32]);
    }

    #[test]
    fn maxval_scaling() {
        let data = b"P5\n2 1\n100\n\x64\x32";
        let (_, _, bytes) = parse_pgm(data).unwrap();
        assert_eq!(bytes, vec![255, 128]);
    }

    #[test]
    fn truncated_payload_rejected() {
        let data = b"P5\n4 4\n255\n\x00\x01";
        assert!(parse_pgm(data).is_err());
    }

    #[test]
    fn wrong_magic_rejected() {
        assert!(parse_pgm(b"P6\n1 1\n255\n\x00").is_err());
    }

    #[test]
    fn wide_maxval_rejected() {
        assert!(parse_pgm(b"P5\n1 1\n65535\n\x00\x00").is_err());
        assert!(parse_pgm(b"P5\n1 1\n0\n\x00").is_err());
    }
}
