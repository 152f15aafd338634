//! Line-oriented cache files for exact sequences.
//!
//! ```text
//! DFCACHE v1 <kind> <max_index> <checksum>
//! <index> <numerator>[/<denominator>]
//! ...
//! ```
//!
//! The checksum is the CRC-32 (IEEE) of the record section, each record line
//! terminated by `\n`, written in decimal.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{staudt_clausen_denominator, ExactRational, SpecialNumbers};
use crate::error::{Error, Result};

const MAGIC: &str = "DFCACHE";
const VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Bernoulli,
    Euler,
    Partition,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [Self::Bernoulli, Self::Euler, Self::Partition];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Bernoulli => "bernoulli",
            Self::Euler => "euler",
            Self::Partition => "partition",
        }
    }

    /// Bernoulli and Euler caches hold even indices only.
    pub fn step(self) -> u64 {
        match self {
            Self::Bernoulli | Self::Euler => 2,
            Self::Partition => 1,
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.dfcache", self.tag())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::domain(format!("unknown sequence kind '{s}'")))
    }
}

/// A contiguous run of exact sequence values, `records[i]` at index `i * step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCache {
    pub kind: SequenceKind,
    pub max_index: u64,
    pub records: Vec<ExactRational>,
}

impl SequenceCache {
    pub fn build(numbers: &SpecialNumbers, kind: SequenceKind, max_index: u64) -> Result<Self> {
        let max_index = max_index - max_index % kind.step();
        let records = (0..=max_index)
            .step_by(kind.step() as usize)
            .map(|k| match kind {
                SequenceKind::Bernoulli => numbers.bernoulli(k),
                SequenceKind::Euler => numbers.euler(k).map(ExactRational::from_integer),
                SequenceKind::Partition => Ok(ExactRational::from_integer(numbers.partition(k))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceCache {
            kind,
            max_index,
            records,
        })
    }

    pub fn index_of(&self, record: usize) -> u64 {
        record as u64 * self.kind.step()
    }

    pub fn get(&self, index: u64) -> Option<&ExactRational> {
        if !index.is_multiple_of(self.kind.step()) || index > self.max_index {
            return None;
        }
        self.records.get((index / self.kind.step()) as usize)
    }

    fn record_section(&self) -> String {
        let mut out = String::new();
        for (i, value) in self.records.iter().enumerate() {
            if self.kind == SequenceKind::Bernoulli {
                writeln!(out, "{} {}/{}", self.index_of(i), value.numer(), value.denom()).unwrap();
            } else {
                writeln!(out, "{} {}", self.index_of(i), value.numer()).unwrap();
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let body = self.record_section();
        format!(
            "{MAGIC} {VERSION} {} {} {}\n{body}",
            self.kind.tag(),
            self.max_index,
            crc32fast::hash(body.as_bytes())
        )
    }

    /// Parses and verifies a cache file. The first failing record is named in
    /// the error.
    pub fn parse(text: &str) -> Result<Self> {
        let header_err = |reason: &str| Error::Format {
            record: None,
            reason: reason.to_string(),
        };
        let (header, body) = text
            .split_once('\n')
            .ok_or_else(|| header_err("missing header line"))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 5 || fields[0] != MAGIC {
            return Err(header_err("malformed header"));
        }
        if fields[1] != VERSION {
            return Err(header_err("unsupported version"));
        }
        let kind: SequenceKind = fields[2]
            .parse()
            .map_err(|_| header_err("unknown kind tag"))?;
        let max_index: u64 = parse_plain_u64(fields[3]).ok_or_else(|| header_err("bad max_index"))?;
        let checksum: u32 = parse_plain_u64(fields[4])
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| header_err("bad checksum field"))?;
        if !max_index.is_multiple_of(kind.step()) {
            return Err(header_err("max_index not aligned with kind"));
        }
        let expected_records = (max_index / kind.step() + 1) as usize;

        let mut records = Vec::with_capacity(expected_records);
        let mut lines = body.split_terminator('\n');
        for i in 0..expected_records {
            let rec_err = |reason: &str| Error::Format {
                record: Some(i),
                reason: reason.to_string(),
            };
            let line = lines.next().ok_or_else(|| rec_err("file truncated"))?;
            let (idx, value) = line.split_once(' ').ok_or_else(|| rec_err("malformed record"))?;
            if parse_plain_u64(idx) != Some(i as u64 * kind.step()) {
                return Err(rec_err("index out of sequence"));
            }
            let value = parse_value(kind, value).ok_or_else(|| rec_err("malformed value"))?;
            check_record(kind, i as u64 * kind.step(), &value).map_err(|r| rec_err(&r))?;
            records.push(value);
        }
        if lines.next().is_some() || !body.ends_with('\n') {
            return Err(Error::Format {
                record: Some(expected_records),
                reason: "unexpected trailing content".into(),
            });
        }
        if crc32fast::hash(body.as_bytes()) != checksum {
            return Err(header_err("checksum mismatch"));
        }
        Ok(SequenceCache {
            kind,
            max_index,
            records,
        })
    }
}

/// Decimal digits only: no sign, no leading zeros (other than "0").
fn parse_plain_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

fn parse_plain_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
        || (digits.len() > 1 && digits.starts_with('0'))
        || s == "-0"
    {
        return None;
    }
    s.parse().ok()
}

fn parse_value(kind: SequenceKind, s: &str) -> Option<ExactRational> {
    match (kind, s.split_once('/')) {
        (SequenceKind::Bernoulli, Some((n, d))) => {
            let n = parse_plain_int(n)?;
            let d = parse_plain_int(d)?;
            if !d.is_positive() || !n.gcd(&d).is_one() {
                return None;
            }
            Some(ExactRational::new_raw(n, d))
        }
        (SequenceKind::Bernoulli, None) | (_, Some(_)) => None,
        (_, None) => parse_plain_int(s).map(ExactRational::from_integer),
    }
}

/// Cheap structural checks that catch most corrupted records in place.
fn check_record(kind: SequenceKind, index: u64, value: &ExactRational) -> std::result::Result<(), String> {
    match kind {
        SequenceKind::Bernoulli => {
            if index == 0 {
                return if value.is_one() { Ok(()) } else { Err("B_0 must be 1".into()) };
            }
            let expected_sign = if (index / 2) % 2 == 1 { 1 } else { -1 };
            if value.numer().signum() != BigInt::from(expected_sign) {
                return Err("sign alternation violated".into());
            }
            if value.denom() != &staudt_clausen_denominator(index) {
                return Err("denominator fails von Staudt-Clausen".into());
            }
        }
        SequenceKind::Euler => {
            let expected_sign = if (index / 2).is_multiple_of(2) { 1 } else { -1 };
            if value.numer().signum() != BigInt::from(expected_sign) {
                return Err("sign alternation violated".into());
            }
            if value.numer().is_even() {
                return Err("Euler numbers are odd".into());
            }
        }
        SequenceKind::Partition => {
            if !value.numer().is_positive() {
                return Err("partition counts are positive".into());
            }
        }
    }
    if value.numer().is_zero() {
        return Err("zero value".into());
    }
    Ok(())
}

/// Writes the cache by whole-file replacement.
pub fn cache_store(cache: &SequenceCache, path: &Path) -> Result<()> {
    let tmp = path.with_extension("dfcache.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(cache.to_text().as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads and verifies a cache file; with `expected` set, a file of another
/// kind is rejected.
pub fn cache_load(path: &Path, expected: Option<SequenceKind>) -> Result<SequenceCache> {
    let text = fs::read_to_string(path)?;
    let cache = SequenceCache::parse(&text)?;
    if let Some(kind) = expected {
        if kind != cache.kind {
            return Err(Error::KindMismatch {
                expected: kind.tag().into(),
                found: cache.kind.tag().into(),
            });
        }
    }
    Ok(cache)
}
