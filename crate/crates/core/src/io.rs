//! The "SPF2" binary field format.
//!
//! Layout: magic bytes `SPF2`, little-endian `u32 modes_x`, `u32 modes_y`,
//! `u8 real_flag`, then `modes_x · modes_y` coefficients as `(f64 re, f64 im)`
//! pairs, row-major over `m` (ascending from `-modes_x/2`) then `n`.
//!
//! Round-trips of `f64` fields are bit-exact.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::grid::GridSpec;
use crate::scalar::Real;

const MAGIC: &[u8; 4] = b"SPF2";
const HEADER_LEN: usize = 4 + 4 + 4 + 1;

pub fn save_field<T: Real>(field: &SpectralField<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    write_field(field, &mut file)
}

pub fn load_field<T: Real>(path: impl AsRef<Path>) -> Result<SpectralField<T>> {
    let mut file = std::fs::File::open(path)?;
    read_field(&mut file)
}

pub fn write_field<T: Real>(field: &SpectralField<T>, out: &mut impl Write) -> Result<()> {
    let mut buf = Vec::with_capacity(HEADER_LEN + 16 * field.grid().len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&field.grid().modes_x().to_le_bytes());
    buf.extend_from_slice(&field.grid().modes_y().to_le_bytes());
    buf.push(u8::from(field.is_real()));
    for c in field.coeffs() {
        let re = c.re.to_f64().expect("scalar convertible to f64");
        let im = c.im.to_f64().expect("scalar convertible to f64");
        buf.extend_from_slice(&re.to_le_bytes());
        buf.extend_from_slice(&im.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_field<T: Real>(input: &mut impl Read) -> Result<SpectralField<T>> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    if data.len() < HEADER_LEN {
        return Err(CoreError::Format(format!(
            "header truncated: need {HEADER_LEN} bytes, found {} (missing byte range [{}, {HEADER_LEN}))",
            data.len(),
            data.len()
        )));
    }
    if &data[0..4] != MAGIC {
        return Err(CoreError::Format(format!(
            "bad magic {:?}, expected \"SPF2\"",
            &data[0..4]
        )));
    }
    let modes_x = u32::from_le_bytes(data[4..8].try_into().unwrap());
    let modes_y = u32::from_le_bytes(data[8..12].try_into().unwrap());
    let real_flag = match data[12] {
        0 => false,
        1 => true,
        other => {
            return Err(CoreError::Format(format!(
                "real_flag byte must be 0 or 1, found {other}"
            )))
        }
    };
    let grid = GridSpec::new(modes_x, modes_y, GridSpec::DEFAULT_OVERSAMPLE)
        .map_err(|e| CoreError::Format(format!("invalid grid in header: {e}")))?;

    let expected = HEADER_LEN + 16 * grid.len();
    if data.len() != expected {
        return Err(CoreError::Format(format!(
            "coefficient block truncated or oversized: expected {expected} bytes total, found {} (missing byte range [{}, {expected}))",
            data.len(),
            data.len().min(expected)
        )));
    }

    let mut coeffs = Vec::with_capacity(grid.len());
    for chunk in data[HEADER_LEN..].chunks_exact(16) {
        let re = f64::from_le_bytes(chunk[0..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
        coeffs.push(Complex::new(
            T::from_f64(re).expect("f64 convertible to scalar type"),
            T::from_f64(im).expect("f64 convertible to scalar type"),
        ));
    }
    Ok(SpectralField::from_raw(grid, coeffs, real_flag))
}
