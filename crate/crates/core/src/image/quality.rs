//! PSNR and SSIM for 8-bit images.

use std::fmt;

use serde::Serialize;

use super::GrayImage;
use crate::error::{Error, Result};

/// Reported PSNR for identical images.
pub const PSNR_CAP_DB: f64 = 100.0;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;
const PEAK: f64 = 255.0;

pub fn psnr(reference: &GrayImage, test: &GrayImage) -> Result<f64> {
    reference.same_size(test)?;
    let sse: u64 = reference
        .pixels()
        .iter()
        .zip(test.pixels())
        .map(|(&a, &b)| {
            let d = a as i64 - b as i64;
            (d * d) as u64
        })
        .sum();
    if sse == 0 {
        return Ok(PSNR_CAP_DB);
    }
    let mse = sse as f64 / reference.pixels().len() as f64;
    Ok(10.0 * (PEAK * PEAK / mse).log10())
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - c;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= sum);
    k
}

/// Separable Gaussian filter over the valid region only.
fn filter_valid(src: &[f64], width: usize, height: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let (ow, oh) = (width - SSIM_WINDOW + 1, height - SSIM_WINDOW + 1);
    let mut horiz = vec![0.0; ow * height];
    for y in 0..height {
        let row = &src[y * width..(y + 1) * width];
        for x in 0..ow {
            horiz[y * ow + x] = k.iter().zip(&row[x..]).map(|(w, v)| w * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(i, w)| w * horiz[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean SSIM over all full 11x11 Gaussian windows (sigma 1.5, K1 0.01, K2 0.03).
pub fn ssim(reference: &GrayImage, test: &GrayImage) -> Result<f64> {
    reference.same_size(test)?;
    let (w, h) = (reference.width(), reference.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            window: SSIM_WINDOW,
        });
    }
    let x: Vec<f64> = reference.pixels().iter().map(|&p| p as f64).collect();
    let y: Vec<f64> = test.pixels().iter().map(|&p| p as f64).collect();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();
    let k = gaussian_kernel();
    let [mx, my, sxx, syy, sxy] = [&x, &y, &xx, &yy, &xy].map(|s| filter_valid(s, w, h, &k));
    let c1 = (K1 * PEAK).powi(2);
    let c2 = (K2 * PEAK).powi(2);
    let total: f64 = (0..mx.len())
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = sxx[i] - ux * ux;
            let vy = syy[i] - uy * uy;
            let cov = sxy[i] - ux * uy;
            ((2.0 * ux * uy + c1) * (2.0 * cov + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2))
        })
        .sum();
    Ok(total / mx.len() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QualityLabel {
    High,
    Acceptable,
    Low,
    Poor,
}

impl fmt::Display for QualityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QualityLabel::High => "high",
            QualityLabel::Acceptable => "acceptable",
            QualityLabel::Low => "low",
            QualityLabel::Poor => "poor",
        })
    }
}

/// `> 0.90` high, `(0.70, 0.90]` acceptable, `[0.30, 0.70]` low, `< 0.30` poor.
pub fn quality_label(ssim: f64) -> QualityLabel {
    if ssim > 0.90 {
        QualityLabel::High
    } else if ssim > 0.70 {
        QualityLabel::Acceptable
    } else if ssim >= 0.30 {
        QualityLabel::Low
    } else {
        QualityLabel::Poor
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QualityReport {
    pub psnr_db: f64,
    pub ssim: f64,
    pub label: QualityLabel,
}

impl QualityReport {
    pub fn compare(reference: &GrayImage, test: &GrayImage) -> Result<Self> {
        let ssim = ssim(reference, test)?;
        Ok(QualityReport {
            psnr_db: psnr(reference, test)?,
            ssim,
            label: quality_label(ssim),
        })
    }
}
