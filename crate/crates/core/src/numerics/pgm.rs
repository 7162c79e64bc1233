//! Binary greymap (`P5`) encoding.

use std::io::{self, Write};

use super::{Image, NumericsError};

/// `P5`, ASCII width, height and maxval 255, then one byte per pixel, row-major from the top left.
pub fn write_pgm<W: Write>(image: &Image, mut out: W) -> io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", image.width(), image.height())?;
    out.write_all(image.pixels())
}

pub fn encode_pgm(image: &Image) -> Vec<u8> {
    let mut buf = Vec::with_capacity(image.pixels().len() + 32);
    write_pgm(image, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Decoded `(width, height, pixels)`. Comments are not supported.
pub fn parse_pgm(bytes: &[u8]) -> Result<(usize, usize, Vec<u8>), NumericsError> {
    let bad = |why: &str| NumericsError::Pgm(why.to_string());
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header is not ASCII"))?);
    }
    if fields[0] != "P5" {
        return Err(bad("magic is not P5"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad header number"));
    let (w, h, max) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
    if max != 255 {
        return Err(bad("maxval must be 255"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    let data = bytes.get(pos + 1..).ok_or_else(|| bad("missing raster"))?;
    if data.len() != w * h {
        return Err(bad("raster length does not match the header"));
    }
    Ok((w, h, data.to_vec()))
}
