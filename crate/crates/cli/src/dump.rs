//! Binary distribution dumps.
//!
//! Layout, all little-endian:
//!
//! ```text
//! 16 bytes  magic "MIXKIN-DUMP-0001"
//! u64       N, velocity points per axis
//! u64       Nx, spatial cells (1 for homogeneous runs)
//! u64       species count (2)
//! f64 × N³  one block per (cell, species), cell-major, grid node order
//! ```

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use mixkin_core::GridField;

pub const MAGIC: &[u8; 16] = b"MIXKIN-DUMP-0001";

#[derive(Clone, Debug, PartialEq)]
pub struct Dump {
    pub points: usize,
    /// `cells[i][k]` is species `k` in cell `i`.
    pub cells: Vec<Vec<GridField>>,
}

pub fn write_to(out: &mut impl Write, points: usize, cells: &[[&GridField; 2]]) -> io::Result<()> {
    out.write_all(MAGIC)?;
    for n in [points, cells.len(), 2] {
        out.write_all(&(n as u64).to_le_bytes())?;
    }
    for cell in cells {
        for field in cell {
            for v in field.values() {
                out.write_all(&v.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn write(path: &Path, points: usize, cells: &[[&GridField; 2]]) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_to(&mut out, points, cells)?;
    out.flush()
}

fn read_u64(input: &mut impl Read) -> io::Result<u64> {
    let mut b = [0u8; 8];
    input.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn invalid(message: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, message.to_string())
}

pub fn read_from(input: &mut impl Read) -> io::Result<Dump> {
    let mut magic = [0u8; 16];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(invalid("not a mixkin dump"));
    }
    let points = read_u64(input)? as usize;
    let nx = read_u64(input)? as usize;
    let species = read_u64(input)? as usize;
    let len = points
        .checked_pow(3)
        .ok_or_else(|| invalid("implausible grid size"))?;
    let mut cells = Vec::with_capacity(nx);
    let mut b = [0u8; 8];
    for _ in 0..nx {
        let mut fields = Vec::with_capacity(species);
        for _ in 0..species {
            let mut values = Vec::with_capacity(len);
            for _ in 0..len {
                input.read_exact(&mut b)?;
                values.push(f64::from_le_bytes(b));
            }
            fields.push(GridField::from_vec(values));
        }
        cells.push(fields);
    }
    Ok(Dump { points, cells })
}

pub fn read(path: &Path) -> io::Result<Dump> {
    read_from(&mut BufReader::new(File::open(path)?))
}
