//! Data series behind the conditional-entropy plots and the region map.

use qsep_core::{
    conditional_entropy_bell, eta_field, linalg::SUPPORT_CUTOFF, region_scan, BellState, Criterion,
    EntropicIndex, Grid, Result,
};

use crate::output::{fmt_f64, Csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    /// S_q(A|B) along (x,0,0), (x,x,0), (x,x,x) for q in {0.5, 2, 5}.
    Fig1a,
    /// S_q(A|B) along the edge from (-3,1,1) to (1,1,1).
    Fig1b,
    /// S_q(A|B) versus q for the state families of the q-curves plot.
    Fig2,
    /// Verdict and eta on a 41^3 grid over [-3,1]^3.
    Fig3,
}

/// Labelled one-parameter family of states.
type Family = (&'static str, fn(f64) -> BellState);

const FIG1_Q: [f64; 3] = [0.5, 2.0, 5.0];
const FIG2_X: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn cond(s: &BellState, q: f64) -> Result<f64> {
    Ok(conditional_entropy_bell(s, EntropicIndex::new(q)?)?.value)
}

pub fn render(which: Figure) -> Result<String> {
    match which {
        Figure::Fig1a => fig1a(),
        Figure::Fig1b => fig1b(),
        Figure::Fig2 => fig2(),
        Figure::Fig3 => fig3(),
    }
}

fn fig1a() -> Result<String> {
    let directions: [Family; 3] = [
        ("x00", |x| BellState::new(x, 0.0, 0.0)),
        ("xx0", |x| BellState::new(x, x, 0.0)),
        ("xxx", |x| BellState::new(x, x, x)),
    ];
    let mut csv = Csv::with_header(&["direction", "x", "q", "S_q_cond"]);
    for (label, ray) in directions {
        for q in FIG1_Q {
            for k in 0..=200 {
                let x = k as f64 / 200.0;
                let v = cond(&ray(x), q)?;
                csv.row([label.to_string(), fmt_f64(x), fmt_f64(q), fmt_f64(v)]);
            }
        }
    }
    Ok(csv.into_string())
}

fn fig1b() -> Result<String> {
    let mut csv = Csv::with_header(&["x", "y", "z", "q", "S_q_cond"]);
    for q in FIG1_Q {
        for k in 0..=200 {
            let x = k as f64 / 50.0 - 3.0;
            let s = BellState::new(x, 1.0, 1.0);
            let v = cond(&s, q)?;
            csv.row([
                fmt_f64(x),
                fmt_f64(1.0),
                fmt_f64(1.0),
                fmt_f64(q),
                fmt_f64(v),
            ]);
        }
    }
    Ok(csv.into_string())
}

/// `(label, state)` for every curve, the maximally mixed state first.
pub fn fig2_families() -> Vec<(String, BellState)> {
    let families: [Family; 6] = [
        ("x00", |x| BellState::new(x, 0.0, 0.0)),
        ("xx0", |x| BellState::new(x, x, 0.0)),
        ("xxx", |x| BellState::new(x, x, x)),
        ("1x0", |x| BellState::new(1.0, x, 0.0)),
        ("1xx", |x| BellState::new(1.0, x, x)),
        ("11x", |x| BellState::new(1.0, 1.0, x)),
    ];
    let mut out = vec![("000".to_string(), BellState::new(0.0, 0.0, 0.0))];
    for (name, f) in families {
        for x in FIG2_X {
            out.push((format!("{name}={x}"), f(x)));
        }
    }
    out
}

/// q runs over [-3, 10] in steps of 0.01. Rank-deficient states skip q = 0,
/// where their curves converge non-uniformly.
fn fig2() -> Result<String> {
    let mut csv = Csv::with_header(&["label", "q", "S_q_cond"]);
    for (label, s) in fig2_families() {
        let rank_deficient = s.weights().0.iter().any(|&w| w <= SUPPORT_CUTOFF);
        for k in -300..=1000 {
            let q = k as f64 / 100.0;
            if rank_deficient && q.abs() <= 1e-6 {
                continue;
            }
            csv.row([label.clone(), fmt_f64(q), fmt_f64(cond(&s, q)?)]);
        }
    }
    Ok(csv.into_string())
}

fn fig3() -> Result<String> {
    let grid = Grid::cube(-3.0, 1.0, 41);
    let criterion = Criterion::ArAsymptotic;
    let region = region_scan(&grid, criterion, criterion.default_tol())?;
    let mut etas = eta_field(&grid)?.into_iter();
    let mut csv = Csv::with_header(&["x", "y", "z", "physical", "verdict", "eta"]);
    for cell in &region.cells {
        let s = cell.state;
        let (verdict, eta) = match cell.classification {
            Some(c) => {
                let e = etas.next().expect("eta for every physical cell");
                debug_assert_eq!(e.state, s);
                (c.verdict.as_str(), fmt_f64(e.eta))
            }
            None => ("na", "nan".to_string()),
        };
        csv.row([
            fmt_f64(s.x),
            fmt_f64(s.y),
            fmt_f64(s.z),
            cell.physical.to_string(),
            verdict.to_string(),
            eta,
        ]);
    }
    Ok(csv.into_string())
}
