//! Number formatting and the sweep CSV.

use std::io::{self, Read, Write};

use permlab_core::bounds::BoundReport;
use permlab_core::ExtReal;

/// First line of every sweep file.
pub const CSV_VERSION_LINE: &str = "# permlab-csv-v1";

/// Value columns after `family,n,N`, in file order.
pub const VALUE_COLUMNS: [&str; 24] = [
    "norm_perm_re",
    "norm_perm_im",
    "h1",
    "h2",
    "err1",
    "err2",
    "bound_7465283",
    "bound_7465284",
    "bound_739065",
    "bound_514385",
    "bound_627867",
    "bound_bobkov16",
    "bound_roos357",
    "bound_roos_halfgamma",
    "bound_5196573",
    "bound_4176439",
    "theta2",
    "theta3",
    "theta4",
    "alpha",
    "beta",
    "gamma1",
    "kappa2",
    "kappa_tilde",
];

/// Columns that only concern the second-order approximation.
pub const SECOND_ORDER_COLUMNS: [&str; 4] = ["h2", "err2", "bound_5196573", "bound_4176439"];
/// Columns that only concern the first-order approximation.
pub const FIRST_ORDER_COLUMNS: [&str; 10] = [
    "h1",
    "err1",
    "bound_7465283",
    "bound_7465284",
    "bound_739065",
    "bound_514385",
    "bound_627867",
    "bound_bobkov16",
    "bound_roos357",
    "bound_roos_halfgamma",
];

pub fn csv_header() -> Vec<&'static str> {
    let mut header = vec!["family", "n", "N"];
    header.extend(VALUE_COLUMNS);
    header
}

/// C's `%.17g`: 17 significant digits, trailing zeros dropped.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_zeros(mantissa), sign, exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// An optional value as a CSV cell: empty when absent.
pub fn cell(v: Option<f64>) -> String {
    v.map(g17).unwrap_or_default()
}

/// One instance of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub big_n: usize,
    /// Aligned with [`VALUE_COLUMNS`]; `None` is an inapplicable or unavailable value.
    pub values: [Option<f64>; 24],
}

fn ext(v: Option<ExtReal>) -> Option<f64> {
    v.map(ExtReal::value)
}

impl SweepRow {
    /// `h1` and `h2` hold real parts; both are real for real input.
    pub fn from_report(family: &str, rep: &BoundReport) -> Self {
        let st = &rep.stats;
        let (fo, so) = (&rep.first_order, &rep.second_order);
        let values = [
            rep.normalized_permanent.map(|p| p.re),
            rep.normalized_permanent.map(|p| p.im),
            Some(rep.h1.re),
            Some(rep.h2.re),
            ext(rep.actual_error_first),
            ext(rep.actual_error_second),
            ext(fo.theta_kappa),
            ext(fo.theta_kappa_zero_one),
            ext(fo.theta_geometric),
            ext(fo.alpha_min),
            ext(fo.crude),
            ext(fo.bobkov),
            ext(fo.gamma_linear),
            ext(fo.gamma_half),
            ext(so.second_theta),
            ext(so.second_gamma),
            Some(st.theta2.value()),
            Some(st.theta3.value()),
            Some(st.theta4.value()),
            Some(st.alpha.value()),
            Some(st.beta.value()),
            ext(st.gamma(1.0)),
            Some(st.kappa(2).value()),
            ext(st.kappa_tilde),
        ];
        SweepRow { family: family.to_string(), n: st.cols, big_n: st.rows, values }
    }

    /// Value of a column in [`VALUE_COLUMNS`].
    ///
    /// # Panics
    /// Panics on an unknown column name.
    pub fn get(&self, column: &str) -> Option<f64> {
        let idx = VALUE_COLUMNS.iter().position(|c| *c == column).unwrap_or_else(|| panic!("unknown column {column}"));
        self.values[idx]
    }

    pub fn record(&self) -> Vec<String> {
        let mut rec = vec![self.family.clone(), self.n.to_string(), self.big_n.to_string()];
        rec.extend(self.values.iter().map(|v| cell(*v)));
        rec
    }
}

pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header())?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()
}

fn bad_data(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

/// Parses a file written by [`write_csv`], checking the version line and header.
pub fn read_csv<R: Read>(input: R) -> io::Result<Vec<SweepRow>> {
    let mut text = String::new();
    let mut input = input;
    input.read_to_string(&mut text)?;
    let body = text
        .strip_prefix(CSV_VERSION_LINE)
        .and_then(|rest| rest.strip_prefix('\n'))
        .ok_or_else(|| bad_data("missing permlab-csv-v1 version line"))?;
    let mut r = csv::Reader::from_reader(body.as_bytes());
    if r.headers()?.iter().ne(csv_header()) {
        return Err(bad_data("unexpected CSV header"));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let int = |i: usize| rec[i].parse::<usize>().map_err(|e| bad_data(format!("line {}: {e}", rows.len() + 3)));
        let mut values = [None; 24];
        for (slot, text) in values.iter_mut().zip(rec.iter().skip(3)) {
            if !text.is_empty() {
                *slot = Some(text.parse::<f64>().map_err(|e| bad_data(format!("cell {text:?}: {e}")))?);
            }
        }
        rows.push(SweepRow { family: rec[0].to_string(), n: int(1)?, big_n: int(2)?, values });
    }
    Ok(rows)
}
