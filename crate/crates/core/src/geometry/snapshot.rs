//! Field snapshot container.
//!
//! Layout (all integers little-endian, floats IEEE-754 little-endian):
//!
//! ```text
//!   bytes 0..4    magic  b"TOFS"
//!   bytes 4..8    u32    format version (1)
//!   bytes 8..12   u32    dimension n (2 or 3)
//!   bytes 12..20  u64    resolution (nodes per tangential axis)
//!   bytes 20..28  f64    half-width R
//!   bytes 28..36  f64    spacing h (redundant, verified on read)
//!   bytes 36..44  u64    node value count
//!   bytes 44..    f64[]  node values, row-major: index =
//!                        (i_{n-1} * .. + i_1) * dims_0 + i_0, axis 0 fastest,
//!                        normal axis slowest
//! ```
//!
//! The layout is stable; version bumps only append fields.

use std::io::{Read, Write};
use std::sync::Arc;

use super::field::GridFunction;
use super::grid::Grid;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"TOFS";
const VERSION: u32 = 1;

pub fn write_snapshot(f: &GridFunction, mut w: impl Write) -> Result<()> {
    let g = f.grid();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(g.dim() as u32).to_le_bytes())?;
    w.write_all(&(g.resolution() as u64).to_le_bytes())?;
    w.write_all(&g.half_width().to_le_bytes())?;
    w.write_all(&g.spacing().to_le_bytes())?;
    w.write_all(&(f.values().len() as u64).to_le_bytes())?;
    for v in f.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_snapshot(mut r: impl Read) -> Result<GridFunction> {
    let mut m4 = [0u8; 4];
    r.read_exact(&mut m4)?;
    if &m4 != MAGIC {
        return Err(Error::MalformedSnapshot("bad magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(Error::MalformedSnapshot(format!(
            "unsupported version {version}"
        )));
    }
    let n = read_u32(&mut r)? as usize;
    let resolution = read_u64(&mut r)? as usize;
    let half_width = read_f64(&mut r)?;
    let h = read_f64(&mut r)?;
    let count = read_u64(&mut r)? as usize;

    let grid: Arc<Grid> = Grid::new(n, resolution, half_width)?;
    if (grid.spacing() - h).abs() > 1e-12 * grid.spacing() {
        return Err(Error::MalformedSnapshot(format!(
            "inconsistent spacing: header {h}, derived {}",
            grid.spacing()
        )));
    }
    if count != grid.node_count() {
        return Err(Error::MalformedSnapshot(format!(
            "value count {count} does not match grid ({})",
            grid.node_count()
        )));
    }
    let mut values = vec![0.0f64; count];
    let mut buf = [0u8; 8];
    for v in values.iter_mut() {
        r.read_exact(&mut buf)?;
        *v = f64::from_le_bytes(buf);
    }
    GridFunction::from_values(grid, values)
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roundtrip_is_bit_exact() {
        let grid = Grid::new(2, 17, 2.0).unwrap();
        let f = GridFunction::from_fn(grid, |x| (x[0] * 3.1).sin() * (1.0 + x[1]));
        let mut buf = Vec::new();
        write_snapshot(&f, &mut buf).unwrap();
        let g = read_snapshot(buf.as_slice()).unwrap();
        assert_eq!(f.values(), g.values());
        assert_eq!(g.grid().dim(), 2);
        assert_eq!(g.grid().resolution(), 17);
    }

    #[test]
    fn rejects_corrupt_header() {
        let grid = Grid::new(2, 17, 2.0).unwrap();
        let f = GridFunction::zeros(grid);
        let mut buf = Vec::new();
        write_snapshot(&f, &mut buf).unwrap();
        buf[0] = b'X';
        assert!(matches!(
            read_snapshot(buf.as_slice()),
            Err(Error::MalformedSnapshot(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn roundtrip_random_values(seed in any::<u64>()) {
            let grid = Grid::new(2, 17, 1.0).unwrap();
            let mut state = seed | 1;
            let values: Vec<f64> = (0..grid.node_count())
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
                })
                .collect();
            let f = GridFunction::from_values(grid, values).unwrap();
            let mut buf = Vec::new();
            write_snapshot(&f, &mut buf).unwrap();
            let g = read_snapshot(buf.as_slice()).unwrap();
            prop_assert_eq!(f.values(), g.values());
        }
    }
}
