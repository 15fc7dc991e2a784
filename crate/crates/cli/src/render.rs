//! Text forms of command output: JSON for machines, CSV for plots, and an
//! aligned table for people.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use dissjacobi::io::Wire;
use dissjacobi::jacobi::FiniteJacobi;
use dissjacobi::{Error, Result};

use crate::{Output, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn render(out: &Output, f: Format) -> Result<String> {
    match f {
        Format::Json => Ok(json(out) + "\n"),
        Format::Csv => csv(out),
        Format::Pretty => Ok(pretty(out)),
    }
}

fn to_pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data serialises")
}

fn json(out: &Output) -> String {
    match out {
        Output::Matrix(j) => to_pretty(&j.to_repr()),
        Output::Spectrum(s) => to_pretty(&s.to_repr()),
        Output::Conversion(c) => to_pretty(c),
        Output::Both(b) => to_pretty(b),
        Output::Rows(r) => to_pretty(r),
        Output::Report(r) => to_pretty(r),
    }
}

fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
}

#[derive(Serialize)]
struct EntryRow {
    k: usize,
    b_re: f64,
    b_im: f64,
    a: Option<f64>,
}

fn entry_rows(j: &FiniteJacobi) -> Vec<EntryRow> {
    (1..=j.n())
        .map(|k| EntryRow { k, b_re: j.b(k).re, b_im: j.b(k).im, a: (k < j.n()).then(|| j.a(k)) })
        .collect()
}

#[derive(Serialize)]
struct EigRow {
    re: f64,
    im: f64,
    mult: usize,
}

fn csv(out: &Output) -> Result<String> {
    match out {
        Output::Matrix(j) => write_csv(entry_rows(j)),
        Output::Spectrum(s) => write_csv(s.entries.iter().map(|e| EigRow { re: e.z.re, im: e.z.im, mult: e.mult })),
        Output::Rows(r) if r.is_empty() => Ok("N,quantity,predicted,computed,abs_error\n".into()),
        Output::Rows(r) => write_csv(r),
        Output::Report(r) => write_csv(&r.rows),
        Output::Conversion(_) | Output::Both(_) => {
            Err(Error::Parse("csv output holds one table; use json for results that carry U".into()))
        }
    }
}

fn matrix_table(j: &FiniteJacobi) -> String {
    let mut s = format!("{:>4}  {:>24}  {:>24}  {:>24}\n", "k", "Re b_k", "Im b_k", "a_k");
    for r in entry_rows(j) {
        let a = r.a.map_or(String::new(), |a| format!("{a:.15e}"));
        s += &format!("{:>4}  {:>24.15e}  {:>24.15e}  {:>24}\n", r.k, r.b_re, r.b_im, a);
    }
    s
}

fn rows_table(rows: &[Row]) -> String {
    let mut s = format!("{:>6}  {:<12}  {:>24}  {:>24}  {:>10}\n", "N", "quantity", "predicted", "computed", "abs_error");
    for r in rows {
        s += &format!(
            "{:>6}  {:<12}  {:>24.15e}  {:>24.15e}  {:>10.3e}\n",
            r.n, r.quantity, r.predicted, r.computed, r.abs_error
        );
    }
    s
}

fn pretty(out: &Output) -> String {
    match out {
        Output::Matrix(j) => matrix_table(j),
        Output::Spectrum(s) => {
            let mut t = format!("{:>24}  {:>24}  {:>4}\n", "Re z", "Im z", "mult");
            for e in &s.entries {
                t += &format!("{:>24.15e}  {:>24.15e}  {:>4}\n", e.z.re, e.z.im, e.mult);
            }
            t
        }
        Output::Conversion(c) => match FiniteJacobi::from_repr(c.jacobi.clone()) {
            Ok(j) => matrix_table(&j) + "\nU:\n" + &u_table(&c.u),
            Err(_) => json(out),
        },
        Output::Both(b) => {
            let p = FiniteJacobi::from_repr(b.peel.clone());
            let l = FiniteJacobi::from_repr(b.livsic.jacobi.clone());
            match (p, l) {
                (Ok(p), Ok(l)) => format!(
                    "peel:\n{}\nlivsic:\n{}\nU:\n{}\nmax entry difference {:.3e}\n",
                    matrix_table(&p),
                    matrix_table(&l),
                    u_table(&b.livsic.u),
                    b.max_entry_difference
                ),
                _ => json(out),
            }
        }
        Output::Rows(r) => rows_table(r),
        Output::Report(r) => {
            let mut s = format!("suite {:?}\n{:<40}  {:>10}  {:>10}  {}\n", r.suite, "check", "worst", "bound", "result");
            for row in &r.rows {
                let v = if row.pass { "PASS" } else { "FAIL" };
                s += &format!("{:<40}  {:>10.3e}  {:>10.3e}  {v}\n", row.check, row.worst, row.bound);
            }
            s
        }
    }
}

fn u_table(u: &[Vec<[f64; 2]>]) -> String {
    u.iter()
        .map(|row| row.iter().map(|z| format!("{:>11.3e}{:+.3e}i", z[0], z[1])).collect::<Vec<_>>().join("  ") + "\n")
        .collect()
}
