//! Grayscale images, the fixed-point FFT reconstruction experiment and
//! image-quality scores.

mod fft;
mod fixed;
pub mod pgm;
mod quality;

pub use fft::{fft2d, fft2d_with, ifft2d, ifft2d_with, reconstruct, reconstruct_with, Spectrum};
pub use fixed::{ComplexFx, FixedAdder, FixedFormat};
pub use pgm::{load_pgm, save_pgm, save_pgm_ascii, PgmError};
pub use quality::{psnr, quality_label, ssim, QualityLabel, QualityReport, PSNR_CAP_DB};

use crate::error::{Error, Result};

/// 8-bit grayscale raster, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch(width, height, pixels.len(), 1));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub(crate) fn same_size(&self, other: &GrayImage) -> Result<()> {
        if (self.width, self.height) != (other.width, other.height) {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}
