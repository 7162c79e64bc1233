use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::QuadraticMap;

/// Escape radius that works for every `|λ| = 1`: `|z| ≥ 3` gives `|P(z)| ≥ |z|(|z| − 1) ≥ 2|z|`.
pub const DEFAULT_ESCAPE_RADIUS: f64 = 3.0;

/// Plane window: `center` and the plane width spanned by the image.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Viewport {
    #[serde(serialize_with = "super::serialize_complex")]
    pub center: Complex64,
    pub span: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderParams {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    pub max_iter: u32,
    pub escape_radius: f64,
}

impl RenderParams {
    /// A square view of the whole filled Julia set.
    pub fn full_view(map: &QuadraticMap, size: usize) -> Self {
        Self {
            width: size,
            height: size,
            viewport: Viewport {
                center: map.critical_point(),
                span: 4.0,
            },
            max_iter: 2000,
            escape_radius: DEFAULT_ESCAPE_RADIUS,
        }
    }
}

/// A grayscale raster, row-major from the top-left pixel.
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    viewport: Viewport,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, viewport: Viewport) -> Self {
        Self {
            width,
            height,
            viewport,
            pixels: vec![0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn viewport(&self) -> Viewport {
        self.viewport
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixel(&self, col: usize, row: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    pub fn set_pixel(&mut self, col: usize, row: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    fn pixel_size(&self) -> f64 {
        self.viewport.span / self.width.max(1) as f64
    }

    /// Plane coordinate of a pixel centre; imaginary part grows upwards.
    pub fn to_plane(&self, col: usize, row: usize) -> Complex64 {
        let s = self.pixel_size();
        Complex64::new(
            self.viewport.center.re + (col as f64 + 0.5 - self.width as f64 / 2.0) * s,
            self.viewport.center.im - (row as f64 + 0.5 - self.height as f64 / 2.0) * s,
        )
    }

    /// Fractional pixel coordinates of a plane point.
    fn to_raster(&self, z: Complex64) -> (f64, f64) {
        let s = self.pixel_size();
        (
            (z.re - self.viewport.center.re) / s + self.width as f64 / 2.0,
            -(z.im - self.viewport.center.im) / s + self.height as f64 / 2.0,
        )
    }

    pub fn to_pixel(&self, z: Complex64) -> Option<(usize, usize)> {
        let (x, y) = self.to_raster(z);
        if x >= 0.0 && y >= 0.0 && (x as usize) < self.width && (y as usize) < self.height {
            Some((x as usize, y as usize))
        } else {
            None
        }
    }

    /// Draws straight segments between consecutive points, clipped to the raster.
    pub fn draw_polyline(&mut self, points: &[Complex64], value: u8) {
        for seg in points.windows(2) {
            let (x0, y0) = self.to_raster(seg[0]);
            let (x1, y1) = self.to_raster(seg[1]);
            if !(x0.is_finite() && y0.is_finite() && x1.is_finite() && y1.is_finite()) {
                continue;
            }
            let steps = ((x1 - x0).abs().max((y1 - y0).abs()).ceil() as usize).clamp(1, 1 << 16);
            for i in 0..=steps {
                let t = i as f64 / steps as f64;
                let (x, y) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
                if x >= 0.0 && y >= 0.0 && (x as usize) < self.width && (y as usize) < self.height {
                    self.set_pixel(x as usize, y as usize, value);
                }
            }
        }
    }
}

/// Iterations until `|z| > escape_radius`, or `None` if the orbit stays bounded for `max_iter` steps.
pub fn escape_time(map: &QuadraticMap, mut z: Complex64, max_iter: u32, escape_radius: f64) -> Option<u32> {
    let r2 = escape_radius * escape_radius;
    for i in 0..max_iter {
        if z.norm_sqr() > r2 {
            return Some(i);
        }
        z = map.evaluate(z);
    }
    (z.norm_sqr() > r2).then_some(max_iter)
}

/// Bounded orbits are black; escaping ones get lighter the faster they leave.
pub fn shade(escape: Option<u32>) -> u8 {
    match escape {
        None => 0,
        Some(i) => 255 - (i.min(25) * 8) as u8,
    }
}

/// Escape-time picture of the filled Julia set, rows computed in parallel.
pub fn render_julia(map: &QuadraticMap, params: &RenderParams) -> Image {
    let mut image = Image::new(params.width, params.height, params.viewport);
    if params.width == 0 || params.height == 0 || !params.viewport.span.is_finite() || params.viewport.span <= 0.0 {
        log::warn!(
            "degenerate viewport {}x{} span {}; returning an empty image",
            params.width,
            params.height,
            params.viewport.span
        );
        return Image::new(0, 0, params.viewport);
    }
    let template = image.clone();
    image
        .pixels
        .par_chunks_mut(params.width)
        .enumerate()
        .for_each(|(row, line)| {
            for (col, px) in line.iter_mut().enumerate() {
                let z = template.to_plane(col, row);
                *px = shade(escape_time(map, z, params.max_iter, params.escape_radius));
            }
        });
    image
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_points_escape_immediately() {
        let p = QuadraticMap::golden_mean();
        for z in [Complex64::new(3.5, 0.0), Complex64::new(-2.0, 2.5), Complex64::new(0.0, -10.0)] {
            assert!(escape_time(&p, z, 100, DEFAULT_ESCAPE_RADIUS).unwrap() <= 1);
        }
    }

    #[test]
    fn siegel_disk_neighbourhood_is_bounded() {
        let p = QuadraticMap::golden_mean();
        for k in 0..16 {
            let z = Complex64::from_polar(0.05, k as f64 * 0.4);
            assert_eq!(escape_time(&p, z, 10_000, DEFAULT_ESCAPE_RADIUS), None);
        }
    }

    #[test]
    fn pixel_geometry_round_trips() {
        let v = Viewport {
            center: Complex64::new(-0.5, 0.25),
            span: 2.0,
        };
        let img = Image::new(40, 20, v);
        for (col, row) in [(0, 0), (39, 19), (13, 7)] {
            assert_eq!(img.to_pixel(img.to_plane(col, row)), Some((col, row)));
        }
        // Top row has the largest imaginary part.
        assert!(img.to_plane(0, 0).im > img.to_plane(0, 19).im);
        assert_eq!(img.to_pixel(Complex64::new(10.0, 0.0)), None);
    }

    #[test]
    fn degenerate_viewport_gives_empty_image() {
        let p = QuadraticMap::golden_mean();
        let mut params = RenderParams::full_view(&p, 0);
        assert!(render_julia(&p, &params).pixels().is_empty());
        params.width = 8;
        params.height = 8;
        params.viewport.span = 0.0;
        assert!(render_julia(&p, &params).pixels().is_empty());
    }

    #[test]
    fn polyline_marks_pixels() {
        let v = Viewport {
            center: Complex64::new(0.0, 0.0),
            span: 2.0,
        };
        let mut img = Image::new(10, 10, v);
        img.draw_polyline(&[Complex64::new(-0.95, 0.05), Complex64::new(0.95, 0.05)], 200);
        assert_eq!((0..10).filter(|&c| img.pixel(c, 4) == 200).count(), 10);
    }
}
