//! Binary PPM (P6) emission for classification rasters.
//!
//! The encoding is fully deterministic: an ASCII header
//! `P6\n<cols> <rows>\n255\n` followed by `rows * cols * 3` payload bytes,
//! row-major with the top row first, so identical rasters produce
//! byte-identical files on every platform and worker count.

use std::fs;
use std::io;
use std::path::Path;

use tanlab_core::planes::{ClassCode, PixelKind, Raster};

/// One fixed color per basin period (capped at 15 by the code layout).
const PERIOD_COLORS: [[u8; 3]; 16] = [
    [40, 40, 48],    // period 0 never occurs for basin pixels; keep it dark
    [28, 80, 180],   // fixed points
    [196, 48, 48],   // 2-cycles
    [36, 150, 72],
    [150, 60, 168],
    [230, 140, 30],
    [32, 170, 170],
    [205, 92, 140],
    [120, 130, 36],
    [86, 98, 224],
    [180, 100, 60],
    [60, 180, 120],
    [170, 40, 90],
    [96, 160, 220],
    [140, 140, 140],
    [210, 190, 70],
];

/// Default palette: total over every class code the renderers emit.
pub fn palette_color(code: ClassCode) -> [u8; 3] {
    match code.kind() {
        PixelKind::Unresolved => [0, 0, 0],
        PixelKind::PrePole => [240, 240, 240],
        PixelKind::Basin => {
            if code.cantor_flag() {
                [255, 196, 32]
            } else {
                PERIOD_COLORS[code.period() as usize]
            }
        }
    }
}

/// Encode a raster as a P6 image using `palette` for every pixel.
pub fn encode_ppm(raster: &Raster, palette: impl Fn(ClassCode) -> [u8; 3]) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", raster.spec.cols, raster.spec.rows);
    let mut bytes = Vec::with_capacity(header.len() + raster.class_codes.len() * 3);
    bytes.extend_from_slice(header.as_bytes());
    for &code in &raster.class_codes {
        bytes.extend_from_slice(&palette(code));
    }
    bytes
}

/// Encode and write a raster to `path`.
pub fn write_ppm(
    raster: &Raster,
    palette: impl Fn(ClassCode) -> [u8; 3],
    path: &Path,
) -> io::Result<()> {
    fs::write(path, encode_ppm(raster, palette))
}
