//! Structured text records for decomposition and energy certificates, one
//! JSON object per line, for regression snapshots.

use crate::error::{Error, Result};
use crate::tile::{Orientation, TreeFamily};
use crate::tiles::decompose::GlobalDecomposition;
use crate::tiles::energy::{EnergyCertificate, EnergyRealizer};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateRecord {
    /// What produced the record, e.g. `energy1`, `global-col`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
    pub threshold: f64,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<usize>,
}

fn family_record(
    kind: &str,
    level: Option<i64>,
    threshold: f64,
    value: f64,
    fam: &TreeFamily,
) -> CertificateRecord {
    CertificateRecord {
        kind: kind.to_string(),
        level,
        threshold,
        value,
        orientation: Some(
            match fam.orientation {
                Orientation::Column => "column",
                Orientation::Row => "row",
            }
            .to_string(),
        ),
        top: Some(fam.top),
        members: fam.members.clone(),
    }
}

pub fn energy_records(kind: &str, cert: &EnergyCertificate) -> Vec<CertificateRecord> {
    match &cert.realizer {
        EnergyRealizer::Antichain(tiles) => vec![CertificateRecord {
            kind: format!("{kind}-antichain"),
            level: None,
            threshold: cert.threshold,
            value: cert.value,
            orientation: None,
            top: None,
            members: tiles.clone(),
        }],
        EnergyRealizer::Families(fams) => fams
            .iter()
            .map(|f| family_record(kind, None, cert.threshold, cert.value, f))
            .collect(),
    }
}

pub fn global_records(dec: &GlobalDecomposition) -> Vec<CertificateRecord> {
    let mut out = Vec::new();
    out.extend(energy_records("energy1", &dec.energy1));
    out.extend(energy_records("energy2", &dec.energy2));
    out.extend(energy_records("energy3", &dec.energy3));
    for (&level, bucket) in &dec.levels {
        for fam in &bucket.column_families {
            out.push(family_record("global-col", Some(level), 0.0, 0.0, fam));
        }
        for fam in &bucket.row_families {
            out.push(family_record("global-row", Some(level), 0.0, 0.0, fam));
        }
    }
    out
}

pub fn write_records<W: Write>(w: &mut W, records: &[CertificateRecord]) -> Result<()> {
    for r in records {
        writeln!(
            w,
            "{}",
            serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string()))?
        )?;
    }
    Ok(())
}

pub fn read_records<R: BufRead>(r: &mut R) -> Result<Vec<CertificateRecord>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?);
    }
    Ok(out)
}
