//! Tables of quintic triples and the projective polynomials they divide,
//! plus multi-prime scans.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor;
use crate::fields::{FpElem, PrimeField};
use crate::par::{self, Exec};
use crate::projective::{all_triples, find_projective, h_poly, HqTriple, ProjParams};
use crate::upoly::UPoly;

/// `(u, v, w, z)` as residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRecord {
    pub u: u64,
    pub v: u64,
    pub w: u64,
    pub z: u64,
}

impl From<&ProjParams<FpElem>> for HRecord {
    fn from(h: &ProjParams<FpElem>) -> Self {
        HRecord {
            u: h.u.value(),
            v: h.v.value(),
            w: h.w.value(),
            z: h.z.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    #[serde(rename = "H")]
    pub h: Option<HRecord>,
    /// Only degenerate solutions were found.
    pub degenerate: bool,
    #[serde(rename = "P_shape")]
    pub p_shape: String,
    #[serde(rename = "H_shape")]
    pub h_shape: Option<String>,
}

pub const NOT_SQUAREFREE: &str = "nonsquarefree";

fn shape_label(f: &UPoly<FpElem>) -> Result<String> {
    if factor::squarefree(f)? {
        Ok(factor::shape(f)?.to_string())
    } else {
        Ok(NOT_SQUAREFREE.to_string())
    }
}

pub fn table_row(triple: &HqTriple, t: u32) -> Result<TableRow> {
    let p = triple.quintic();
    let res = find_projective(&p, t)?;
    let h = res.hyperquadratic();
    let h_shape = h
        .map(|h| h_poly(h).and_then(|hp| shape_label(&hp)))
        .transpose()?;
    Ok(TableRow {
        p: triple.p(),
        a: triple.a.value(),
        b: triple.b.value(),
        c: triple.c.value(),
        h: h.map(HRecord::from),
        degenerate: h.is_none() && !res.is_empty(),
        p_shape: shape_label(&p)?,
        h_shape,
    })
}

/// One row per `a` in F_p^*, ascending.
pub fn make_table(k: PrimeField, t: u32) -> Result<Vec<TableRow>> {
    make_table_with(k, t, Exec::default())
}

pub fn make_table_with(k: PrimeField, t: u32, exec: Exec) -> Result<Vec<TableRow>> {
    let triples = all_triples(k)?;
    par::map(exec, &triples, |tr| table_row(tr, t))
        .into_iter()
        .collect()
}

/// Newline-delimited JSON, one object per row.
pub fn to_json_lines(rows: &[TableRow]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
        .collect()
}

fn cell(r: &TableRow) -> (String, String) {
    let pcell = format!("({},{},{})", r.a, r.b, r.c);
    let hcell = match (&r.h, r.degenerate) {
        (Some(h), _) => format!("({},{},{},{})", h.u, h.v, h.w, h.z),
        (None, true) => "degenerate".to_string(),
        (None, false) => "-".to_string(),
    };
    (pcell, hcell)
}

/// Two side-by-side `P | H` columns, the first holding the lower half of
/// the rows.
pub fn render_text(p: u64, rows: &[TableRow]) -> String {
    let cells: Vec<(String, String)> = rows.iter().map(cell).collect();
    let half = cells.len().div_ceil(2);
    let wp = cells.iter().map(|c| c.0.len()).max().unwrap_or(1).max(1);
    let wh = cells.iter().map(|c| c.1.len()).max().unwrap_or(1).max(1);
    let mut out = format!("p = {p}\n");
    let header = format!("{:<wp$}  {:<wh$}", "P", "H");
    out.push_str(format!("{header} || {header}\n").trim_end());
    out.push('\n');
    for i in 0..half {
        let (lp, lh) = &cells[i];
        let mut line = format!("{lp:<wp$}  {lh:<wh$}");
        if let Some((rp, rh)) = cells.get(i + half) {
            line.push_str(&format!(" || {rp:<wp$}  {rh:<wh$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Hit counts of one prime's table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub p: u64,
    pub order: u32,
    pub rows: usize,
    pub hits: usize,
    pub degenerate_only: usize,
    pub misses: usize,
}

pub fn summarize(p: u64, order: u32, rows: &[TableRow]) -> ScanSummary {
    let hits = rows.iter().filter(|r| r.h.is_some()).count();
    let degenerate_only = rows.iter().filter(|r| r.degenerate).count();
    ScanSummary {
        p,
        order,
        rows: rows.len(),
        hits,
        degenerate_only,
        misses: rows.len() - hits - degenerate_only,
    }
}

/// Tables for several primes, fanned out over primes and rows.
pub fn scan(primes: &[PrimeField], t: u32, exec: Exec) -> Result<Vec<ScanSummary>> {
    par::map(exec, primes, |k| {
        make_table_with(*k, t, exec).map(|rows| summarize(k.p(), t, &rows))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_json() {
        let rows = make_table(PrimeField::new(11).unwrap(), 1).unwrap();
        let first = to_json_lines(&rows[..1]);
        assert_eq!(
            first,
            "{\"p\":11,\"a\":1,\"b\":7,\"c\":9,\"H\":{\"u\":1,\"v\":7,\"w\":7,\"z\":2},\
             \"degenerate\":false,\"P_shape\":\"2^2*1\",\"H_shape\":\"2^5*1^2\"}\n"
        );
        let back: TableRow = serde_json::from_str(first.trim()).unwrap();
        assert_eq!(back, rows[0]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let k = PrimeField::new(17).unwrap();
        assert_eq!(
            make_table_with(k, 1, Exec::Sequential).unwrap(),
            make_table_with(k, 1, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn text_layout() {
        let rows = make_table(PrimeField::new(11).unwrap(), 1).unwrap();
        let text = render_text(11, &rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[2], "(1,7,9)   (1,7,7,2)   || (6,6,2)   (1,1,1,7)");
    }
}
