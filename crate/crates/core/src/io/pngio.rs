//! 8-bit grayscale PNG reading and writing.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::error::Error;
use crate::Result;

pub fn write_png_gray8(path: &Path, width: usize, height: usize, bytes: &[u8]) -> Result<()> {
    if bytes.len() != width * height {
        return Err(Error::Parse(format!(
            "png payload is {} bytes for {}x{}",
            bytes.len(),
            width,
            height
        )));
    }
    let file = File::create(path)?;
    let mut encoder = png::Encoder::new(BufWriter::new(file), width as u32, height as u32);
    encoder.set_color(png::ColorType::Grayscale);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder
        .write_header()
        .map_err(|e| Error::Parse(e.to_string()))?;
    writer
        .write_image_data(bytes)
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn read_png_gray8(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let file = File::open(path)?;
    let decoder = png::Decoder::new(file);
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut buf = vec![0u8; reader.output_buffer_size()];
    let info = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if info.color_type != png::ColorType::Grayscale || info.bit_depth != png::BitDepth::Eight {
        return Err(Error::Parse(format!(
            "{}: expected 8-bit grayscale png, got {:?}/{:?}",
            path.display(),
            info.color_type,
            info.bit_depth
        )));
    }
    buf.truncate(info.buffer_size());
    Ok((info.width as usize, info.height as usize, buf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = std::env::temp_dir().join("roadchange_png_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rt.png");
        let bytes: Vec<u8> = (0..24).map(|i| (i * 10) as u8).collect();
        write_png_gray8(&path, 6, 4, &bytes).unwrap();
        let (w, h, back) = read_png_gray8(&path).unwrap();
        assert_eq!((w, h), (6, 4));
        assert_eq!(back, bytes);
    }
}
