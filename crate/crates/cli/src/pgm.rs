//! PGM (portable graymap) reader and writer, P2 (ASCII) and P5 (binary),
//! maxval 255 only.
//!
//! Intensities map to `[0, 1]` by `sample / 255`; writing quantizes with
//! round-half-up, so images whose pixels lie on the 1/255 grid round-trip
//! exactly. Comment lines starting with `#` are accepted anywhere in the
//! header.

use cgkit::ImageGray;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// ASCII samples.
    P2,
    /// One raw byte per sample.
    P5,
}

#[derive(Debug)]
pub struct PgmError(pub String);

impl std::fmt::Display for PgmError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PGM: {}", self.0)
    }
}

impl std::error::Error for PgmError {}

fn err<T>(message: impl Into<String>) -> Result<T, PgmError> {
    Err(PgmError(message.into()))
}

struct HeaderScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderScanner<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a str, PgmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if start == self.pos {
            return err("unexpected end of header");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| PgmError("non-ASCII header token".to_string()))
    }

    fn number(&mut self, what: &str) -> Result<usize, PgmError> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| PgmError(format!("invalid {what} `{tok}`")))
    }
}

/// Parses a PGM file. Returns the image and the sub-format it was stored in.
pub fn read_pgm(bytes: &[u8]) -> Result<(ImageGray, PgmFormat), PgmError> {
    let mut scanner = HeaderScanner { bytes, pos: 0 };
    let format = match scanner.token()? {
        "P2" => PgmFormat::P2,
        "P5" => PgmFormat::P5,
        other => return err(format!("unsupported magic `{other}` (want P2 or P5)")),
    };
    let width = scanner.number("width")?;
    let height = scanner.number("height")?;
    let maxval = scanner.number("maxval")?;
    if width == 0 || height == 0 {
        return err("width and height must be positive");
    }
    if maxval != 255 {
        return err(format!("unsupported maxval {maxval} (want 255)"));
    }
    let n = width * height;

    let samples: Vec<u8> = match format {
        PgmFormat::P5 => {
            // Exactly one whitespace byte separates the header from the payload.
            if scanner.pos >= bytes.len() || !bytes[scanner.pos].is_ascii_whitespace() {
                return err("missing whitespace after maxval");
            }
            let start = scanner.pos + 1;
            if bytes.len() < start + n {
                return err(format!(
                    "payload truncated: need {n} bytes, have {}",
                    bytes.len().saturating_sub(start)
                ));
            }
            let rest = &bytes[start + n..];
            if !rest.iter().all(|b| b.is_ascii_whitespace()) {
                return err("trailing data after payload");
            }
            bytes[start..start + n].to_vec()
        }
        PgmFormat::P2 => {
            let mut samples = Vec::with_capacity(n);
            for _ in 0..n {
                let value = scanner.number("sample")?;
                if value > 255 {
                    return err(format!("sample {value} exceeds maxval 255"));
                }
                samples.push(value as u8);
            }
            scanner.skip_space_and_comments();
            if scanner.pos != bytes.len() {
                return err("trailing data after samples");
            }
            samples
        }
    };

    let pixels: Vec<f64> = samples.iter().map(|&s| s as f64 / 255.0).collect();
    let image = ImageGray::new(width, height, pixels).map_err(|e| PgmError(e.to_string()))?;
    Ok((image, format))
}

fn quantize(v: f64) -> u8 {
    (v * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Serializes an image; deterministic byte-for-byte for fixed input.
pub fn write_pgm(img: &ImageGray, format: PgmFormat) -> Vec<u8> {
    let header = format!(
        "{}\n{} {}\n255\n",
        match format {
            PgmFormat::P2 => "P2",
            PgmFormat::P5 => "P5",
        },
        img.width(),
        img.height()
    );
    let samples: Vec<u8> = img.pixels().iter().map(|&v| quantize(v)).collect();
    let mut out = header.into_bytes();
    match format {
        PgmFormat::P5 => out.extend_from_slice(&samples),
        PgmFormat::P2 => {
            // Keep lines comfortably under the 70-character limit.
            for chunk in samples.chunks(17) {
                let line: Vec<String> = chunk.iter().map(|s| s.to_string()).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_image(width: usize, height: usize) -> ImageGray {
        let pixels = (0..width * height)
            .map(|i| ((i * 37) % 256) as f64 / 255.0)
            .collect();
        ImageGray::new(width, height, pixels).unwrap()
    }

    #[test]
    fn round_trips_both_formats_exactly() {
        let img = grid_image(7, 5);
        for format in [PgmFormat::P2, PgmFormat::P5] {
            let bytes = write_pgm(&img, format);
            let (back, detected) = read_pgm(&bytes).unwrap();
            assert_eq!(detected, format);
            assert_eq!(back, img);
            // Writing again reproduces identical bytes.
            assert_eq!(write_pgm(&back, format), bytes);
        }
    }

    #[test]
    fn comments_and_whitespace_are_tolerated() {
        let text = b"P2 # magic\n# a comment line\n 3 # width\n2\n255\n0 128 255\n1 2 3\n";
        let (img, format) = read_pgm(text).unwrap();
        assert_eq!(format, PgmFormat::P2);
        assert_eq!(img.width(), 3);
        assert_eq!(img.height(), 2);
        assert!((img.pixels()[1] - 128.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_pgm(b"P6\n1 1\n255\nx").is_err());
        assert!(read_pgm(b"P2\n2 2\n254\n0 0 0 0\n").is_err());
        assert!(read_pgm(b"P2\n2 2\n255\n0 0 0\n").is_err());
        assert!(read_pgm(b"P2\n2 2\n255\n0 0 0 300\n").is_err());
        assert!(read_pgm(b"P2\n2 2\n255\n0 0 0 0 9\n").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\nab").is_err());
        assert!(read_pgm(b"P2\n0 2\n255\n").is_err());
    }

    #[test]
    fn quantization_rounds_half_up() {
        assert_eq!(quantize(0.0), 0);
        assert_eq!(quantize(1.0), 255);
        // 0.5/255 scaled: exactly halfway between 0 and 1 rounds up.
        assert_eq!(quantize(0.5 / 255.0), 1);
        assert_eq!(quantize(126.5 / 255.0), 127);
    }
}
