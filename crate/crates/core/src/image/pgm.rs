//! Netpbm graymap (P2 / P5) reading and writing, 8-bit only.

use thiserror::Error;

use super::GrayImage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a PGM file (magic {0:?})")]
    BadMagic(String),
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported PGM depth: maxval {0} (only 255 is supported)")]
    UnsupportedDepth(u32),
    #[error("truncated PGM payload: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("invalid PGM sample `{0}`")]
    BadSample(String),
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&c) = self.bytes.get(self.pos) {
            if c == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| !c.is_ascii_whitespace() && *c != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn header_number(&mut self, what: &str) -> Result<u32, PgmError> {
        let tok = self
            .token()
            .ok_or_else(|| PgmError::MalformedHeader(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                PgmError::MalformedHeader(format!("bad {what} `{}`", String::from_utf8_lossy(tok)))
            })
    }
}

pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.token().unwrap_or_default();
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(PgmError::BadMagic(
                String::from_utf8_lossy(other).into_owned(),
            ))
        }
    };
    let width = cur.header_number("width")? as usize;
    let height = cur.header_number("height")? as usize;
    let maxval = cur.header_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PgmError::MalformedHeader(format!(
            "empty image {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(PgmError::UnsupportedDepth(maxval));
    }
    let expected = width * height;
    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        if !bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(PgmError::MalformedHeader(
                "no separator after maxval".into(),
            ));
        }
        let raster = &bytes[cur.pos + 1..];
        if raster.len() < expected {
            return Err(PgmError::Truncated {
                expected,
                found: raster.len(),
            });
        }
        raster[..expected].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        while pixels.len() < expected {
            let Some(tok) = cur.token() else {
                return Err(PgmError::Truncated {
                    expected,
                    found: pixels.len(),
                });
            };
            let v = std::str::from_utf8(tok)
                .ok()
                .and_then(|s| s.parse::<u32>().ok())
                .filter(|&v| v <= maxval)
                .ok_or_else(|| PgmError::BadSample(String::from_utf8_lossy(tok).into_owned()))?;
            pixels.push(v as u8);
        }
        pixels
    };
    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

/// Binary (P5) encoding.
pub fn save_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

/// ASCII (P2) encoding, one image row per line.
pub fn save_pgm_ascii(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P2\n{} {}\n255\n", img.width, img.height);
    for row in img.pixels.chunks(img.width) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_binary_example() {
        let mut bytes = b"P5 2 2 255\n".to_vec();
        bytes.extend([0, 85, 170, 255]);
        let img = load_pgm(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixels(), &[0, 85, 170, 255]);
    }

    #[test]
    fn parses_ascii_with_comments() {
        let text = b"P2\n# made by hand\n3 1 # width height\n255\n0 128\n255\n";
        let img = load_pgm(text).unwrap();
        assert_eq!(img.pixels(), &[0, 128, 255]);
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(
            load_pgm(b"P5 2 2 65535\n\0\0\0\0\0\0\0\0"),
            Err(PgmError::UnsupportedDepth(65535))
        );
        assert!(matches!(
            load_pgm(b"P6 1 1 255\n\0\0\0"),
            Err(PgmError::BadMagic(_))
        ));
        assert!(matches!(
            load_pgm(b"P5 2 x 255\n"),
            Err(PgmError::MalformedHeader(_))
        ));
        assert!(matches!(
            load_pgm(b"P5 2 2"),
            Err(PgmError::MalformedHeader(_))
        ));
        assert_eq!(
            load_pgm(b"P5 2 2 255\n\x01\x02"),
            Err(PgmError::Truncated {
                expected: 4,
                found: 2
            })
        );
        assert_eq!(
            load_pgm(b"P2 2 1 255\n7"),
            Err(PgmError::Truncated {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            load_pgm(b"P2 1 1 255\n256"),
            Err(PgmError::BadSample(_))
        ));
    }

    proptest! {
        #[test]
        fn round_trips(w in 1usize..24, h in 1usize..24, seed in any::<u64>()) {
            let mut state = seed;
            let img = GrayImage::from_fn(w, h, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 56) as u8
            });
            prop_assert_eq!(&load_pgm(&save_pgm(&img)).unwrap(), &img);
            prop_assert_eq!(&load_pgm(&save_pgm_ascii(&img)).unwrap(), &img);
        }
    }
}
