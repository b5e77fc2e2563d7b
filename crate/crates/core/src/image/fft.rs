//! Row-column radix-2 decimation-in-time FFT in fixed point.
//!
//! Every butterfly add and subtract goes through a [`FixedAdder`]; twiddle
//! products are exact with round-half-up. The forward transform halves each
//! butterfly output (a total scale of `1/(W*H)`), so the inverse runs unscaled.

use std::f64::consts::PI;

use super::fixed::{ComplexFx, FixedAdder, FixedFormat};
use super::GrayImage;
use crate::config::AdderConfig;
use crate::error::{Error, Result};
use crate::exec::{for_each_chunk_mut, Execution};

/// A 2-D fixed-point spectrum, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub width: usize,
    pub height: usize,
    pub format: FixedFormat,
    pub bins: Vec<ComplexFx>,
}

impl Spectrum {
    pub fn get(&self, u: usize, v: usize) -> ComplexFx {
        self.bins[v * self.width + u]
    }
}

struct Plan {
    len: usize,
    bits: u32,
    twiddles: Vec<ComplexFx>,
}

impl Plan {
    fn new(len: usize, fmt: &FixedFormat, inverse: bool) -> Self {
        let sign = if inverse { 1.0 } else { -1.0 };
        let twiddles = (0..len / 2)
            .map(|j| {
                let angle = sign * 2.0 * PI * j as f64 / len as f64;
                ComplexFx {
                    re: fmt.from_f64(angle.cos()),
                    im: fmt.from_f64(angle.sin()),
                }
            })
            .collect();
        Plan {
            len,
            bits: len.trailing_zeros(),
            twiddles,
        }
    }

    fn run(&self, adder: &FixedAdder, data: &mut [ComplexFx], scale: bool) {
        let fmt = adder.format();
        if self.bits > 0 {
            for i in 0..self.len {
                let j = i.reverse_bits() >> (usize::BITS - self.bits);
                if j > i {
                    data.swap(i, j);
                }
            }
        }
        let mut half = 1;
        while half < self.len {
            let stride = self.len / (2 * half);
            for start in (0..self.len).step_by(2 * half) {
                for j in 0..half {
                    let w = self.twiddles[j * stride];
                    let (p, q) = (start + j, start + j + half);
                    let x = data[q];
                    let t = ComplexFx {
                        re: fmt
                            .round_shift(x.re as i128 * w.re as i128 - x.im as i128 * w.im as i128),
                        im: fmt
                            .round_shift(x.re as i128 * w.im as i128 + x.im as i128 * w.re as i128),
                    };
                    let a = data[p];
                    let mut hi = ComplexFx {
                        re: adder.add(a.re, t.re),
                        im: adder.add(a.im, t.im),
                    };
                    let mut lo = ComplexFx {
                        re: adder.sub(a.re, t.re),
                        im: adder.sub(a.im, t.im),
                    };
                    if scale {
                        for v in [&mut hi.re, &mut hi.im, &mut lo.re, &mut lo.im] {
                            *v >>= 1;
                        }
                    }
                    data[p] = hi;
                    data[q] = lo;
                }
            }
            half *= 2;
        }
    }
}

fn transpose(data: &[ComplexFx], width: usize, height: usize) -> Vec<ComplexFx> {
    let mut out = vec![ComplexFx::default(); data.len()];
    for y in 0..height {
        for x in 0..width {
            out[x * height + y] = data[y * width + x];
        }
    }
    out
}

fn transform_2d(
    adder: &FixedAdder,
    mut data: Vec<ComplexFx>,
    width: usize,
    height: usize,
    inverse: bool,
    exec: Execution,
) -> Vec<ComplexFx> {
    let fmt = adder.format();
    let rows = Plan::new(width, &fmt, inverse);
    for_each_chunk_mut(exec, &mut data, width, |_, row| {
        rows.run(adder, row, !inverse)
    });
    let mut cols = transpose(&data, width, height);
    let plan = Plan::new(height, &fmt, inverse);
    for_each_chunk_mut(exec, &mut cols, height, |_, col| {
        plan.run(adder, col, !inverse)
    });
    transpose(&cols, height, width)
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if !width.is_power_of_two() || !height.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { width, height });
    }
    Ok(())
}

pub fn fft2d(img: &GrayImage, cfg: &AdderConfig, fmt: FixedFormat) -> Result<Spectrum> {
    fft2d_with(img, cfg, fmt, Execution::default())
}

pub fn fft2d_with(
    img: &GrayImage,
    cfg: &AdderConfig,
    fmt: FixedFormat,
    exec: Execution,
) -> Result<Spectrum> {
    let (width, height) = (img.width(), img.height());
    check_dims(width, height)?;
    let adder = FixedAdder::new(*cfg, fmt)?;
    // the first butterfly stage sums two full-scale pixels before halving
    if (510i128 << fmt.frac_bits) > fmt.max() as i128 {
        return Err(Error::FormatTooNarrow {
            int_bits: fmt.total_bits - fmt.frac_bits,
            frac_bits: fmt.frac_bits,
        });
    }
    let data = img
        .pixels()
        .iter()
        .map(|&p| ComplexFx {
            re: (p as i64) << fmt.frac_bits,
            im: 0,
        })
        .collect();
    Ok(Spectrum {
        width,
        height,
        format: fmt,
        bins: transform_2d(&adder, data, width, height, false, exec),
    })
}

pub fn ifft2d(spec: &Spectrum, cfg: &AdderConfig, fmt: FixedFormat) -> Result<GrayImage> {
    ifft2d_with(spec, cfg, fmt, Execution::default())
}

pub fn ifft2d_with(
    spec: &Spectrum,
    cfg: &AdderConfig,
    fmt: FixedFormat,
    exec: Execution,
) -> Result<GrayImage> {
    check_dims(spec.width, spec.height)?;
    let adder = FixedAdder::new(*cfg, fmt)?;
    let data = transform_2d(
        &adder,
        spec.bins.clone(),
        spec.width,
        spec.height,
        true,
        exec,
    );
    let half = 1i64 << (fmt.frac_bits - 1);
    let pixels = data
        .iter()
        .map(|c| ((c.re as i128 + half as i128) >> fmt.frac_bits).clamp(0, 255) as u8)
        .collect();
    GrayImage::new(spec.width, spec.height, pixels)
}

/// `ifft2d(fft2d(img))` with the same adder in both directions.
pub fn reconstruct(img: &GrayImage, cfg: &AdderConfig, fmt: FixedFormat) -> Result<GrayImage> {
    reconstruct_with(img, cfg, fmt, Execution::default())
}

pub fn reconstruct_with(
    img: &GrayImage,
    cfg: &AdderConfig,
    fmt: FixedFormat,
    exec: Execution,
) -> Result<GrayImage> {
    let spec = fft2d_with(img, cfg, fmt, exec)?;
    ifft2d_with(&spec, cfg, fmt, exec)
}
