//! STCF binary files and CSV export.
//!
//! STCF layout (little-endian):
//!
//! | bytes | content |
//! |------:|---------|
//! | 4 | magic `STCF` |
//! | 4 | version, u32 = 1 |
//! | 1 | kind: 0 space-time, 1 frequency |
//! | 3 | reserved, zero |
//! | 16 | four u32 dims `(t, 1, 2, 3)` |
//! | 32 | four f64 spacings |
//! | 32 | four f64 origins |
//! | 128·n | one record of 16 f64 coefficients per sample, row-major |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::algebra::{Multivector, BLADE_COUNT, BLADE_NAMES};
use crate::error::{Error, Result};
use crate::grid::{Domain, Field, Frequency, Grid, SpaceTime, Spectrum, SpaceTimeSignal};

pub const MAGIC: [u8; 4] = *b"STCF";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 4 + 16 + 32 + 32;
const RECORD_LEN: usize = BLADE_COUNT * 8;

/// A field read from disk whose domain is only known from the header.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyField {
    SpaceTime(SpaceTimeSignal),
    Frequency(Spectrum),
}

impl AnyField {
    pub fn kind(&self) -> u8 {
        match self {
            Self::SpaceTime(_) => SpaceTime::KIND,
            Self::Frequency(_) => Frequency::KIND,
        }
    }

    pub fn into_signal(self) -> Result<SpaceTimeSignal> {
        match self {
            Self::SpaceTime(f) => Ok(f),
            Self::Frequency(_) => {
                Err(Error::format(8, "expected a space-time field (kind 0), found a spectrum"))
            }
        }
    }

    pub fn into_spectrum(self) -> Result<Spectrum> {
        match self {
            Self::Frequency(f) => Ok(f),
            Self::SpaceTime(_) => {
                Err(Error::format(8, "expected a spectrum (kind 1), found a space-time field"))
            }
        }
    }
}

/// Serializes a field to STCF bytes.
pub fn encode<D: Domain>(field: &Field<D>) -> Result<Vec<u8>> {
    let g = field.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + RECORD_LEN * g.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(D::KIND);
    out.extend_from_slice(&[0; 3]);
    for n in g.dims() {
        let n = u32::try_from(n)
            .map_err(|_| Error::TooLarge(format!("axis length {n} does not fit in u32")))?;
        out.extend_from_slice(&n.to_le_bytes());
    }
    for v in g.spacing().into_iter().chain(g.origin()) {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for h in field.data() {
        for c in h.coeffs() {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::format(
                self.bytes.len() as u64,
                format!("truncated while reading {what}: need {n} bytes at offset {}", self.pos),
            ));
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Parses STCF bytes.
pub fn decode(bytes: &[u8]) -> Result<AnyField> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.take(4, "magic")?;
    if magic != MAGIC {
        return Err(Error::format(0, format!("bad magic {magic:?}, expected \"STCF\"")));
    }
    let version = cur.u32("version")?;
    if version != VERSION {
        return Err(Error::format(4, format!("unsupported version {version}, expected {VERSION}")));
    }
    let kind = cur.take(1, "kind")?[0];
    if kind > 1 {
        return Err(Error::format(8, format!("unknown kind {kind}")));
    }
    if cur.take(3, "reserved bytes")? != [0, 0, 0] {
        return Err(Error::format(9, "reserved bytes must be zero"));
    }
    let mut dims = [0usize; 4];
    for d in dims.iter_mut() {
        *d = cur.u32("dims")? as usize;
    }
    let mut spacing = [0.0; 4];
    for s in spacing.iter_mut() {
        *s = cur.f64("spacing")?;
    }
    let mut origin = [0.0; 4];
    for o in origin.iter_mut() {
        *o = cur.f64("origin")?;
    }
    let grid: Grid<SpaceTime> = Grid::new(dims, spacing, origin)
        .map_err(|e| Error::format(12, format!("invalid grid header: {e}")))?;
    let expected = HEADER_LEN + RECORD_LEN * grid.len();
    if bytes.len() < expected {
        return Err(Error::format(
            bytes.len() as u64,
            format!("truncated payload: {} bytes, expected {expected}", bytes.len()),
        ));
    }
    if bytes.len() > expected {
        return Err(Error::format(expected as u64, "trailing bytes after the last record"));
    }
    let mut data = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let mut m = Multivector::ZERO;
        for c in m.0.iter_mut() {
            *c = cur.f64("record")?;
        }
        data.push(m);
    }
    Ok(match kind {
        0 => AnyField::SpaceTime(Field::new(grid, data)?),
        _ => AnyField::Frequency(Field::new(grid.relabel(), data)?),
    })
}

pub fn write_field<D: Domain>(field: &Field<D>, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode(field)?;
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

pub fn read_field(path: impl AsRef<Path>) -> Result<AnyField> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn write_signal(signal: &SpaceTimeSignal, path: impl AsRef<Path>) -> Result<()> {
    write_field(signal, path)
}

pub fn read_signal(path: impl AsRef<Path>) -> Result<SpaceTimeSignal> {
    read_field(path)?.into_signal()
}

/// Fixes axis `axis` to sample `index` in a CSV export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceSpec {
    pub axis: usize,
    pub index: usize,
}

impl std::str::FromStr for SliceSpec {
    type Err = Error;

    /// Accepts `axis=index` where axis is `0..3` or a name such as `t`, `x1`, `w_t`, `w3`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, i) = s
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("slice `{s}` is not of the form axis=index")))?;
        let a = a.trim();
        let axis = match a {
            "0" | "t" | "w_t" | "wt" => 0,
            "1" | "x1" | "w1" => 1,
            "2" | "x2" | "w2" => 2,
            "3" | "x3" | "w3" => 3,
            _ => return Err(Error::Domain(format!("unknown axis `{a}` in slice"))),
        };
        let index = i
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("slice index `{i}` is not a non-negative integer")))?;
        Ok(Self { axis, index })
    }
}

/// Writes one row per sample: 4 coordinates and 16 coefficients, each
/// printed with 17 significant digits. Returns the number of data rows.
pub fn export_csv<D: Domain, W: Write>(
    field: &Field<D>,
    out: W,
    slices: &[SliceSpec],
) -> Result<usize> {
    let g = field.grid();
    let n = g.dims();
    for s in slices {
        if s.index >= n[s.axis] {
            return Err(Error::Domain(format!(
                "slice index {} out of range for axis {} of length {}",
                s.index,
                D::AXES[s.axis],
                n[s.axis]
            )));
        }
    }
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<&str> = D::AXES.iter().copied().chain(BLADE_NAMES).collect();
    w.write_record(&header)?;
    let mut rows = 0;
    let mut record: Vec<String> = Vec::with_capacity(20);
    for (i, h) in field.data().iter().enumerate() {
        let idx = g.unravel(i);
        if slices.iter().any(|s| idx[s.axis] != s.index) {
            continue;
        }
        record.clear();
        for v in g.point(idx).into_iter().chain(h.0) {
            record.push(format!("{v:.16e}"));
        }
        w.write_record(&record)?;
        rows += 1;
    }
    w.flush()?;
    Ok(rows)
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub coords: [f64; 4],
    pub value: Multivector,
}

pub fn import_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.len() != 4 + BLADE_COUNT || header.iter().skip(4).ne(BLADE_NAMES) {
        return Err(Error::format(0, "CSV header does not list 4 coordinates and the 16 blades"));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let offset = rec.position().map_or(0, |p| p.byte());
        let mut vals = [0.0; 4 + BLADE_COUNT];
        if rec.len() != vals.len() {
            return Err(Error::format(offset, format!("row has {} fields, expected 20", rec.len())));
        }
        for (v, s) in vals.iter_mut().zip(rec.iter()) {
            *v = s
                .trim()
                .parse()
                .map_err(|_| Error::format(offset, format!("`{s}` is not a number")))?;
        }
        let mut value = Multivector::ZERO;
        value.0.copy_from_slice(&vals[4..]);
        rows.push(CsvRow { coords: vals[..4].try_into().unwrap(), value });
    }
    Ok(rows)
}

/// Rebuilds a field from a full (unsliced) CSV export of it.
pub fn field_from_csv<D: Domain>(grid: Grid<D>, rows: &[CsvRow]) -> Result<Field<D>> {
    if rows.len() != grid.len() {
        return Err(Error::Shape(format!("{} CSV rows for a grid of {}", rows.len(), grid.len())));
    }
    Field::new(grid, rows.iter().map(|r| r.value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{random_field, SpaceTimeGrid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample() -> SpaceTimeSignal {
        let g = SpaceTimeGrid::new([2, 3, 2, 2], [0.5, 1.0, 0.25, 2.0], [-1.0, 0.0, 3.0, -0.5])
            .unwrap();
        let mut f = random_field(&g, &mut ChaCha8Rng::seed_from_u64(9));
        f.data_mut()[0].0[3] = -0.0;
        f.data_mut()[1].0[0] = f64::MIN_POSITIVE / 4.0;
        f
    }

    #[test]
    fn stcf_roundtrip_is_bit_exact() {
        let f = sample();
        let bytes = encode(&f).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN + RECORD_LEN * f.grid().len());
        let back = decode(&bytes).unwrap().into_signal().unwrap();
        assert_eq!(encode(&back).unwrap(), bytes);
        assert!(back.data()[0].0[3].is_sign_negative());
    }

    #[test]
    fn truncation_reports_offset() {
        let bytes = encode(&sample()).unwrap();
        match decode(&bytes[..bytes.len() - 3]) {
            Err(Error::Format { offset, .. }) => assert_eq!(offset as usize, bytes.len() - 3),
            other => panic!("{other:?}"),
        }
        match decode(&bytes[..10]) {
            Err(Error::Format { message, .. }) => assert!(message.contains("reserved")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_magic() {
        let mut bytes = encode(&sample()).unwrap();
        bytes[0] = b'X';
        match decode(&bytes) {
            Err(Error::Format { offset: 0, message }) => assert!(message.contains("STCF")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kind_is_checked() {
        let f = sample();
        let spec: Spectrum = f.clone().with_grid(f.grid().relabel()).unwrap();
        let bytes = encode(&spec).unwrap();
        assert!(decode(&bytes).unwrap().into_signal().is_err());
        assert!(decode(&bytes).unwrap().into_spectrum().is_ok());
    }

    #[test]
    fn csv_roundtrip_and_slices() {
        let f = sample();
        let mut buf = Vec::new();
        let rows = export_csv(&f, &mut buf, &[]).unwrap();
        assert_eq!(rows, f.grid().len());
        let back = field_from_csv(*f.grid(), &import_csv(&buf[..]).unwrap()).unwrap();
        assert_eq!(encode(&back).unwrap(), encode(&f).unwrap());

        let mut buf = Vec::new();
        let slices = ["t=1".parse().unwrap(), "x3=0".parse().unwrap()];
        assert_eq!(export_csv(&f, &mut buf, &slices).unwrap(), 6);
        let bad = [SliceSpec { axis: 1, index: 3 }];
        assert!(export_csv(&f, Vec::new(), &bad).is_err());
    }
}
