//! CSV output with round-trip precision.

use std::io::Write;

use num_complex::Complex64;

use crate::error::Result;

/// One logical column value. Complex values occupy two CSV columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Field {
    Int(i64),
    Real(f64),
    Complex(Complex64),
}

/// Shortest decimal form that parses back to the same double; never more
/// than 17 significant digits. Integral values print without a fraction.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(trimmed) => trimmed.to_string(),
        None => s,
    }
}

/// Writes `rows` under the header `schema`. Each complex field fills two
/// consecutive schema columns, real part first.
pub fn emit_table<W: Write>(rows: &[Vec<Field>], schema: &[&str], out: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    wtr.write_record(schema)?;
    let mut record = Vec::new();
    for row in rows {
        record.clear();
        for field in row {
            match *field {
                Field::Int(i) => record.push(i.to_string()),
                Field::Real(x) => record.push(format_real(x)),
                Field::Complex(z) => {
                    record.push(format_real(z.re));
                    record.push(format_real(z.im));
                }
            }
        }
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(rows: &[Vec<Field>], schema: &[&str]) -> String {
        let mut buf = Vec::new();
        emit_table(rows, schema, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn figure_origin_row() {
        let rows = vec![vec![Field::Real(0.0), Field::Real(1.0), Field::Real(1.0)]];
        assert_eq!(render(&rows, &["u", "s2", "gauss"]), "u,s2,gauss\n0,1,1\n");
    }

    #[test]
    fn empty_table_has_header() {
        assert_eq!(render(&[], &["M", "t", "defect"]), "M,t,defect\n");
    }

    #[test]
    fn complex_columns_split() {
        let rows = vec![vec![
            Field::Int(3),
            Field::Complex(Complex64::new(0.5, -0.25)),
        ]];
        assert_eq!(render(&rows, &["n", "re", "im"]), "n,re,im\n3,0.5,-0.25\n");
    }

    #[test]
    fn reals_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            std::f64::consts::PI,
            -0.0,
        ] {
            let s = format_real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits = s
                .trim_start_matches('-')
                .split('e')
                .next()
                .unwrap()
                .replace('.', "");
            assert!(digits.trim_start_matches('0').len() <= 17, "{s}");
        }
    }
}
