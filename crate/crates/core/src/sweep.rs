//! Batch reproduction of Samelson tables, normality verdicts and the
//! factorial valuation check over ranges of groups and primes.

use crate::cohomology::{make_group, Family};
use crate::error::Result;
use crate::fp_poly::is_prime;
use crate::par::{self, Execution};
use crate::report::{CellError, MahowaldJson, NormalityJson, SweepReport, SweepStats, TableReport};
use crate::samelson::{
    mahowald_check, normality, samelson_table_with, Agreement, P1Verdict, SamelsonTable,
};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    /// Inclusive rank range; empty when `n_min > n_max`.
    pub n_min: u32,
    pub n_max: u32,
    pub p_max: u32,
    pub exec: Execution,
}

/// Primes `lo <= p <= hi` in increasing order.
pub fn primes_between(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&p| is_prime(p as u64)).collect()
}

/// A p-regular group in the sweep grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub family: Family,
    pub n: u32,
    pub p: u32,
}

/// All p-regular (family, n, odd p) combinations in canonical order:
/// families as given, then n, then p. Exceptional families are listed once
/// per prime, and only when the rank range is non-empty.
pub fn regular_cells(families: &[Family], n_min: u32, n_max: u32, p_max: u32) -> Vec<Cell> {
    let mut out = Vec::new();
    if n_min > n_max {
        return out;
    }
    let primes = primes_between(3, p_max);
    for &family in families {
        let ns: Vec<u32> = if family.is_exceptional() {
            vec![0]
        } else {
            (n_min.max(family.min_n())..=n_max).collect()
        };
        for n in ns {
            for &p in &primes {
                if make_group(family, n, p).is_ok_and(|g| g.is_p_regular()) {
                    out.push(Cell { family, n, p });
                }
            }
        }
    }
    out
}

pub fn sweep(cfg: &SweepConfig) -> SweepReport {
    let cells = regular_cells(&cfg.families, cfg.n_min, cfg.n_max, cfg.p_max);
    let tables: Vec<(Cell, Result<SamelsonTable>)> = par::map(cfg.exec, &cells, |&c| {
        let t = make_group(c.family, c.n, c.p).and_then(|g| samelson_table_with(&g, Execution::Sequential));
        (c, t)
    });

    let mut stats = SweepStats::default();
    let mut errors = Vec::new();
    let mut table_reports = Vec::new();
    for (cell, t) in tables {
        match t {
            Ok(t) => {
                stats.tables += 1;
                for c in &t.cells {
                    stats.cells += 1;
                    match c.agreement {
                        Agreement::Agree => stats.agree += 1,
                        Agreement::Disagree => stats.disagree += 1,
                        Agreement::EdgeCase => stats.edge_cases += 1,
                        Agreement::NotApplicable => {}
                    }
                    if c.p1 == P1Verdict::Unsupported {
                        stats.unsupported += 1;
                    }
                }
                table_reports.push(TableReport::from(&t));
            }
            Err(e) => errors.push(CellError {
                group: make_group(cell.family, cell.n, cell.p)
                    .map(|g| g.name())
                    .unwrap_or_else(|_| format!("{}({})", cell.family, cell.n)),
                p: cell.p,
                error: e.to_string(),
            }),
        }
    }

    let mut normality_rows = Vec::new();
    let mut mahowald_rows = Vec::new();
    if cfg.families.contains(&Family::SOEven) && cfg.n_min <= cfg.n_max {
        let grid: Vec<(u32, u32)> = (cfg.n_min.max(2)..=cfg.n_max)
            .flat_map(|n| primes_between(2, cfg.p_max).into_iter().map(move |p| (n, p)))
            .collect();
        for ((n, p), r) in grid.iter().zip(par::map(cfg.exec, &grid, |&(n, p)| normality(n, p))) {
            match r {
                Ok(r) => normality_rows.push(NormalityJson::from(&r)),
                Err(e) => errors.push(CellError { group: format!("SO({})", 2 * n), p: *p, error: e.to_string() }),
            }
        }

        let regular: Vec<Cell> = cells.iter().copied().filter(|c| c.family == Family::SOEven).collect();
        for (c, r) in regular.iter().zip(par::map(cfg.exec, &regular, |c| mahowald_check(c.n, c.p))) {
            match r {
                Ok(r) => {
                    if !r.consistent {
                        stats.mahowald_inconsistent += 1;
                    }
                    mahowald_rows.push(MahowaldJson::from(&r));
                }
                Err(e) => errors.push(CellError { group: format!("SO({})", 2 * c.n), p: c.p, error: e.to_string() }),
            }
        }
    }

    SweepReport {
        families: cfg.families.iter().map(|f| f.as_str().to_string()).collect(),
        n_range: [cfg.n_min, cfg.n_max],
        p_max: cfg.p_max,
        tables: table_reports,
        normality: normality_rows,
        mahowald: mahowald_rows,
        stats,
        errors,
    }
}
