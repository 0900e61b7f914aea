//! Binary field dumps: one ASCII header line
//! `RELWAVE1 <dims> <n> <L> <components> <t>` followed by little-endian `f64`
//! pairs `(re, im)`, component-major with `x` fastest.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use relwave_core::linalg::c;

use crate::evolve::FieldGrid;
use crate::Error;

pub const MAGIC: &str = "RELWAVE1";

pub fn write_dump<W: Write>(mut w: W, grid: &FieldGrid, t: f64) -> std::io::Result<()> {
    writeln!(
        w,
        "{MAGIC} {} {} {} {} {}",
        grid.dims(),
        grid.n(),
        grid.box_len(),
        grid.components(),
        t
    )?;
    for z in grid.values() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    w.flush()
}

fn field<T: std::str::FromStr>(parts: &[&str], i: usize, what: &str) -> Result<T, Error> {
    parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse {
        line: 1,
        msg: format!("bad or missing {what} in dump header"),
    })
}

/// Reads a dump, returning the grid and its time stamp.
pub fn read_dump<R: Read>(r: R) -> Result<(FieldGrid, f64), Error> {
    let mut r = BufReader::new(r);
    let mut header = String::new();
    r.read_line(&mut header)?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.first() != Some(&MAGIC) || parts.len() != 6 {
        return Err(Error::Parse {
            line: 1,
            msg: "not a RELWAVE1 dump".into(),
        });
    }
    let dims: usize = field(&parts, 1, "dims")?;
    let n: usize = field(&parts, 2, "n")?;
    let box_len: f64 = field(&parts, 3, "box length")?;
    let components: usize = field(&parts, 4, "components")?;
    let t: f64 = field(&parts, 5, "time")?;
    let mut grid = FieldGrid::zeros(dims, n, box_len, components)?;
    let len = grid.values().len();
    let mut bytes = vec![0u8; 16 * len];
    r.read_exact(&mut bytes)?;
    let values = bytes
        .chunks_exact(16)
        .map(|b| {
            let re = f64::from_le_bytes(b[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(b[8..].try_into().expect("8 bytes"));
            c(re, im)
        })
        .collect();
    grid = FieldGrid::from_values(dims, n, box_len, components, values)?;
    Ok((grid, t))
}

pub fn save_dump(path: &Path, grid: &FieldGrid, t: f64) -> Result<(), Error> {
    let f = File::create(path)?;
    write_dump(BufWriter::new(f), grid, t)?;
    Ok(())
}

pub fn load_dump(path: &Path) -> Result<(FieldGrid, f64), Error> {
    read_dump(File::open(path)?)
}
