//! CSV rendering of sweep rows.

use std::fmt::Write;

use crate::sweep::Row;

pub const HEADER: &str = "snr_db,method,value,stderr";

/// Renders rows as CSV with LF endings. Failed rows carry NaN.
pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        let (value, stderr) = match &r.outcome {
            Ok(v) => (v.value, v.stderr),
            Err(_) => (f64::NAN, None),
        };
        let _ = write!(out, "{},{},{:.16e},", r.snr_db, r.method.name(), value);
        if let Some(se) = stderr {
            let _ = write!(out, "{se:.16e}");
        }
        out.push('\n');
    }
    out
}

/// Nodes and weights as `index,node,weight` lines.
pub fn rule_to_csv(rule: impl Iterator<Item = (f64, f64)>) -> String {
    let mut out = String::from("index,node,weight\n");
    for (k, (x, w)) in rule.enumerate() {
        let _ = writeln!(out, "{k},{x:.16e},{w:.16e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Method;
    use crate::sweep::Value;

    #[test]
    fn formats_rows() {
        let rows = [
            Row { snr_db: 2.5, method: Method::Closed, outcome: Ok(Value { value: 0.125, stderr: None }) },
            Row { snr_db: -3.0, method: Method::Mc, outcome: Ok(Value { value: 0.5, stderr: Some(1e-3) }) },
            Row { snr_db: 10.0, method: Method::Gcq, outcome: Err("boom".into()) },
        ];
        assert_eq!(
            to_csv(&rows),
            "snr_db,method,value,stderr\n\
             2.5,closed,1.2500000000000000e-1,\n\
             -3,mc,5.0000000000000000e-1,1.0000000000000000e-3\n\
             10,gcq,NaN,\n"
        );
    }
}
