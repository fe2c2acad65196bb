//! Line-oriented census cache. Every line after the header carries a
//! CRC-32 of its body as a `*xxxxxxxx` suffix.

use crate::error::{CliError, CliResult};
use cubic_core::census::{Census, GeodesicClass, OrderSummary};
use cubic_core::exact::UnitPoly;
use num_rational::Ratio;
use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const HEADER: &str = "#cubic-census v1";

#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    Coverage { r_max: f64, precision: Ratio<i64> },
    Order(OrderSummary),
    Record(GeodesicClass),
}

pub fn seal(body: &str) -> String {
    format!("{body}*{:08x}", crc32fast::hash(body.as_bytes()))
}

pub fn unseal(line: &str) -> Result<&str, String> {
    let (body, sum) = line.rsplit_once('*').ok_or("missing checksum")?;
    let want = u32::from_str_radix(sum, 16).map_err(|_| format!("malformed checksum {sum:?}"))?;
    if sum.len() != 8 || crc32fast::hash(body.as_bytes()) != want {
        return Err("checksum mismatch".into());
    }
    Ok(body)
}

pub fn encode(e: &Entry) -> String {
    match e {
        Entry::Coverage { r_max, precision } => format!("C|{r_max}|{precision}"),
        Entry::Order(o) => format!(
            "O|{}|{}|{}|{}|{}|{}|{}|{}|{}",
            o.key,
            o.disc,
            o.index,
            o.unit_exponent,
            o.r,
            o.h_total,
            o.h_proper,
            o.h_total_conductor,
            o.h_proper_conductor
        ),
        Entry::Record(r) => format!(
            "R|{}|{}|{}|{}|{}|{}|{}|{}",
            r.poly,
            r.r,
            r.l,
            r.order,
            r.class_index,
            u8::from(r.primitive),
            r.mu,
            r.root_poly
        ),
    }
}

fn field<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("bad {what} {s:?}"))
}

// An order key is `t,s|den|rows`, so it spans three `|`-separated fields.
pub fn decode(body: &str) -> Result<Entry, String> {
    let f: Vec<&str> = body.split('|').collect();
    match (f[0], f.len()) {
        ("C", 3) => {
            let precision: Ratio<i64> = field(f[2], "precision")?;
            Ok(Entry::Coverage { r_max: field(f[1], "r_max")?, precision })
        }
        ("O", 12) => Ok(Entry::Order(OrderSummary {
            key: f[1..4].join("|"),
            disc: field(f[4], "discriminant")?,
            index: field(f[5], "index")?,
            unit_exponent: field(f[6], "unit exponent")?,
            r: field(f[7], "regulator")?,
            h_total: field(f[8], "h_total")?,
            h_proper: field(f[9], "h_proper")?,
            h_total_conductor: field(f[10], "h_total")?,
            h_proper_conductor: field(f[11], "h_proper")?,
        })),
        ("R", 11) => {
            let poly: UnitPoly = field(f[1], "polynomial")?;
            Ok(Entry::Record(GeodesicClass {
                poly,
                r: field(f[2], "regulator")?,
                l: field(f[3], "length")?,
                order: f[4..7].join("|"),
                class_index: field(f[7], "class index")?,
                primitive: match f[8] {
                    "0" => false,
                    "1" => true,
                    o => return Err(format!("bad primitive flag {o:?}")),
                },
                mu: field(f[9], "mu")?,
                root_poly: field(f[10], "root polynomial")?,
            }))
        }
        (tag, n) => Err(format!("unknown entry kind {tag:?} with {n} fields")),
    }
}

/// Verified contents of a cache file.
#[derive(Debug, Clone, Default)]
pub struct Snapshot {
    pub bodies: HashSet<String>,
    pub coverage: Option<(f64, Ratio<i64>)>,
    pub orders: Vec<OrderSummary>,
    pub records: Vec<GeodesicClass>,
}

impl Snapshot {
    pub fn covered(&self) -> f64 {
        self.coverage.map(|c| c.0).unwrap_or(0.0)
    }

    /// Census restricted to `R <= r_max`, in canonical order.
    pub fn census(&self, r_max: f64) -> Census {
        let (_, precision) = self.coverage.expect("census requested from an empty cache");
        let mut c = Census::empty(self.covered(), precision);
        c.records = self.records.clone();
        c.records
            .sort_by(|a, b| a.l.total_cmp(&b.l).then(a.poly.cmp(&b.poly)).then(a.class_index.cmp(&b.class_index)));
        for o in &self.orders {
            c.orders.insert(o.key.clone(), o.clone());
        }
        c.truncate(r_max)
    }
}

fn line_err(path: &Path, line: usize, msg: impl Into<String>) -> CliError {
    CliError::CacheLine { path: path.to_path_buf(), line, msg: msg.into() }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Reads and verifies a cache; a missing file is an empty cache.
pub fn load(path: &Path) -> CliResult<Snapshot> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Snapshot::default()),
        Err(e) => return Err(io_err(path)(e)),
    };
    let mut snap = Snapshot::default();
    let mut lines = text.split('\n').enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => return Err(line_err(path, 1, format!("expected header {HEADER:?}"))),
    }
    if !text.ends_with('\n') {
        return Err(line_err(path, text.split('\n').count(), "truncated final line"));
    }
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let n = i + 1;
        let body = unseal(line).map_err(|m| line_err(path, n, m))?;
        if !snap.bodies.insert(body.to_string()) {
            continue;
        }
        match decode(body).map_err(|m| line_err(path, n, m))? {
            Entry::Coverage { r_max, precision } => {
                if let Some((_, p)) = snap.coverage {
                    if p != precision {
                        return Err(line_err(path, n, format!("precision {precision} differs from {p}")));
                    }
                }
                if r_max > snap.covered() {
                    snap.coverage = Some((r_max, precision));
                }
            }
            Entry::Order(o) => snap.orders.push(o),
            Entry::Record(r) => snap.records.push(r),
        }
    }
    Ok(snap)
}

/// Appends the entries not already present; returns how many records were new.
pub fn append(path: &Path, snap: &Snapshot, entries: &[Entry]) -> CliResult<usize> {
    let mut out = String::new();
    if !path.exists() {
        out.push_str(HEADER);
        out.push('\n');
    }
    let mut seen: HashSet<String> = HashSet::new();
    let mut new_records = 0;
    for e in entries {
        let body = encode(e);
        if snap.bodies.contains(&body) || !seen.insert(body.clone()) {
            continue;
        }
        if matches!(e, Entry::Record(_)) {
            new_records += 1;
        }
        out.push_str(&seal(&body));
        out.push('\n');
    }
    if !out.is_empty() {
        let mut f = fs::OpenOptions::new().create(true).append(true).open(path).map_err(io_err(path))?;
        f.write_all(out.as_bytes()).map_err(io_err(path))?;
    }
    Ok(new_records)
}

/// Entries describing a full census, coverage line last so that an
/// interrupted write never claims coverage it lacks.
pub fn entries_of(c: &Census) -> Vec<Entry> {
    let mut v: Vec<Entry> = c.orders.values().cloned().map(Entry::Order).collect();
    v.extend(c.records.iter().cloned().map(Entry::Record));
    v.push(Entry::Coverage { r_max: c.r_max, precision: c.precision });
    v
}

pub fn resolve_path(flag: PathBuf) -> PathBuf {
    match std::env::var_os("CUBIC_CENSUS_CACHE") {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => flag,
    }
}
