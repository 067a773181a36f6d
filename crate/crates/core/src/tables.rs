//! Reference tables and figure data for the uniform families.
//!
//! Printed reference values are embedded below so each emitted row carries
//! its own agreement flag.

use std::io::Write;

use crate::error::Result;
use crate::families::{Family, FamilySpec};
use crate::indices::{self, IndexKind};

/// Orders tabulated in the family comparison table.
pub const TABLE1_ORDERS: [usize; 10] = [6, 8, 10, 12, 15, 20, 25, 30, 40, 50];
pub const TABLE1_SIZES: [f64; 2] = [0.5, 1.0];
pub const AGREEMENT_TOLERANCE: f64 = 5e-5;

/// Printed SO values, one row per order: (path, star, cycle, complete) at
/// m_μ = 0.5, then the same at m_μ = 1.
const TABLE1_PRINTED: [[f64; 8]; 10] = [
    [0.2144, 0.2550, 0.1179, 0.1179, 0.8577, 1.0198, 0.4714, 0.4714],
    [0.1671, 0.2525, 0.0884, 0.0884, 0.6685, 1.0102, 0.3536, 0.3536],
    [0.1360, 0.2515, 0.0707, 0.0707, 0.5441, 1.0062, 0.2828, 0.2828],
    [0.1144, 0.2510, 0.0589, 0.0589, 0.4577, 1.0041, 0.2357, 0.2357],
    [0.0923, 0.2506, 0.0471, 0.0471, 0.3692, 1.0025, 0.1886, 0.1886],
    [0.0697, 0.2503, 0.0354, 0.0354, 0.2788, 1.0014, 0.1414, 0.1414],
    [0.0560, 0.2502, 0.0283, 0.0283, 0.2238, 1.0009, 0.1131, 0.1131],
    [0.0467, 0.2501, 0.0236, 0.0236, 0.1869, 1.0006, 0.0943, 0.0943],
    [0.0351, 0.2501, 0.0177, 0.0177, 0.1405, 1.0003, 0.0707, 0.0707],
    [0.0281, 0.2501, 0.0141, 0.0141, 0.1126, 1.0002, 0.0566, 0.0566],
];

/// Indices in the n = 10, m_μ = 1 comparison.
pub const TABLE2_INDICES: [IndexKind; 4] = [IndexKind::Sombor, IndexKind::ZagrebM1, IndexKind::Randic, IndexKind::Nirmala];

/// Printed values (SO, M1, R, N) for path, star, cycle, complete.
/// The R column is printed to three decimals.
const TABLE2_PRINTED: [[f64; 4]; 4] = [
    [0.5441, 0.4198, 6.364, 18.2426],
    [1.0062, 1.1111, 3.000, 30.0000],
    [0.2828, 0.4000, 5.000, 20.0000],
    [0.2828, 0.4000, 5.000, 90.0000],
];

/// Rounds half away from zero to four decimals.
pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

pub fn agrees(computed: f64, printed: f64) -> bool {
    // the extra 1e-12 absorbs binary representation of the printed decimals
    (round4(computed) - printed).abs() <= AGREEMENT_TOLERANCE + 1e-12
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub family: Family,
    pub n: usize,
    pub m_mu: f64,
    pub index: IndexKind,
    pub computed: f64,
    pub printed: f64,
    pub agree: bool,
}

fn family_col(f: Family) -> usize {
    Family::ALL.iter().position(|&g| g == f).expect("listed family")
}

fn uniform_value(family: Family, n: usize, m_mu: f64, index: IndexKind) -> Result<f64> {
    let g = FamilySpec::uniform(family, n, m_mu).build()?;
    Ok(indices::evaluate(&g, index))
}

/// Family comparison rows in (n, m_μ, family) order.
pub fn table1_rows() -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(80);
    for (i, &n) in TABLE1_ORDERS.iter().enumerate() {
        for (j, &m) in TABLE1_SIZES.iter().enumerate() {
            for f in Family::ALL {
                let computed = uniform_value(f, n, m, IndexKind::Sombor)?;
                let printed = TABLE1_PRINTED[i][4 * j + family_col(f)];
                rows.push(TableRow {
                    family: f,
                    n,
                    m_mu: m,
                    index: IndexKind::Sombor,
                    computed,
                    printed,
                    agree: agrees(computed, printed),
                });
            }
        }
    }
    Ok(rows)
}

/// Index comparison rows at n = 10, m_μ = 1 in (family, index) order.
pub fn table2_rows() -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(16);
    for f in Family::ALL {
        for (k, &index) in TABLE2_INDICES.iter().enumerate() {
            let computed = uniform_value(f, 10, 1.0, index)?;
            let printed = TABLE2_PRINTED[family_col(f)][k];
            rows.push(TableRow {
                family: f,
                n: 10,
                m_mu: 1.0,
                index,
                computed,
                printed,
                agree: agrees(computed, printed),
            });
        }
    }
    Ok(rows)
}

fn write_table<W: Write>(rows: &[TableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "n", "m_mu", "index", "computed", "printed", "agree"])?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.m_mu.to_string(),
            r.index.short_name().to_string(),
            format!("{:.4}", round4(r.computed)),
            format!("{:.4}", r.printed),
            r.agree.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV columns: family, n, m_mu, index, computed, printed, agree.
pub fn emit_table1<W: Write>(out: W) -> Result<()> {
    write_table(&table1_rows()?, out)
}

/// Same columns as [`emit_table1`].
pub fn emit_table2<W: Write>(out: W) -> Result<()> {
    write_table(&table2_rows()?, out)
}

/// Long-format figure data: figure, family, n, index, value.
/// fig1 and fig2 are the m_μ = 1 and m_μ = 0.5 grids, fig3 the index comparison.
pub fn emit_figures<W: Write>(out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["figure", "family", "n", "index", "value"])?;
    let t1 = table1_rows()?;
    for (fig, m) in [("fig1", 1.0), ("fig2", 0.5)] {
        for r in t1.iter().filter(|r| r.m_mu == m) {
            w.write_record([fig.to_string(), r.family.to_string(), r.n.to_string(), r.index.short_name(), r.computed.to_string()])?;
        }
    }
    for r in table2_rows()? {
        w.write_record(["fig3".to_string(), r.family.to_string(), r.n.to_string(), r.index.short_name().to_string(), r.computed.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
