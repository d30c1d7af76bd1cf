//! JSON and TSV rendering. Reals are printed like C's `%.10g`: nine digits
//! after the leading one.

use std::fmt::Write;

use heavyseg_core::{ScoredSegment, SubarrayResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputMode {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Segment(ScoredSegment),
    Segments(Vec<ScoredSegment>),
    Subarray(SubarrayResult),
    Count(u64),
}

/// `x` with 10 significant digits, trailing zeros dropped, switching to
/// exponent form below `1e-4` and from `1e10` up.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..10).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (9 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

const SEGMENT_FIELDS: [&str; 5] = ["start", "end", "sum", "width", "density"];
const SUBARRAY_FIELDS: [&str; 7] = ["r1", "r2", "c1", "c2", "sum", "width", "density"];

fn segment_cells(s: &ScoredSegment) -> [String; 5] {
    [s.start().to_string(), s.end().to_string(), real(s.sum), real(s.width), real(s.density)]
}

fn subarray_cells(s: &SubarrayResult) -> [String; 7] {
    [
        s.r1.to_string(),
        s.r2.to_string(),
        s.c1.to_string(),
        s.c2.to_string(),
        real(s.sum),
        real(s.width),
        real(s.density),
    ]
}

fn json_object(fields: &[&str], cells: &[String]) -> String {
    let body: Vec<String> = fields.iter().zip(cells).map(|(f, c)| format!("\"{f}\":{c}")).collect();
    format!("{{{}}}", body.join(","))
}

fn tsv(fields: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = fields.join("\t");
    out.push('\n');
    for r in rows {
        out += &r.join("\t");
        out.push('\n');
    }
    out
}

/// The report as text, ending with a newline.
pub fn render(report: &Report, mode: OutputMode) -> String {
    match (report, mode) {
        (Report::Segment(s), OutputMode::Json) => json_object(&SEGMENT_FIELDS, &segment_cells(s)) + "\n",
        (Report::Segment(s), OutputMode::Tsv) => tsv(&SEGMENT_FIELDS, &[segment_cells(s).to_vec()]),
        (Report::Segments(v), OutputMode::Json) => {
            if v.is_empty() {
                return "[]\n".into();
            }
            let mut out = String::from("[\n");
            for (i, s) in v.iter().enumerate() {
                let sep = if i + 1 < v.len() { "," } else { "" };
                let _ = writeln!(out, "{}{sep}", json_object(&SEGMENT_FIELDS, &segment_cells(s)));
            }
            out + "]\n"
        }
        (Report::Segments(v), OutputMode::Tsv) => {
            tsv(&SEGMENT_FIELDS, &v.iter().map(|s| segment_cells(s).to_vec()).collect::<Vec<_>>())
        }
        (Report::Subarray(s), OutputMode::Json) => json_object(&SUBARRAY_FIELDS, &subarray_cells(s)) + "\n",
        (Report::Subarray(s), OutputMode::Tsv) => tsv(&SUBARRAY_FIELDS, &[subarray_cells(s).to_vec()]),
        (Report::Count(c), OutputMode::Json) => format!("{{\"count\":{c}}}\n"),
        (Report::Count(c), OutputMode::Tsv) => format!("count\n{c}\n"),
    }
}

/// Escapes `s` as a JSON string literal.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use heavyseg_core::{PrefixIndex, Segment};

    #[test]
    fn ten_significant_digits() {
        let cases = [
            (5.0, "5"),
            (5.0 / 3.0, "1.666666667"),
            (-0.5, "-0.5"),
            (1.0 / 3.0, "0.3333333333"),
            (1234567891.0, "1234567891"),
            (12345678912.0, "1.234567891e+10"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.99999999999, "10"),
            (-0.0, "0"),
            (1e100, "1e+100"),
        ];
        for (x, want) in cases {
            assert_eq!(real(x), want, "{x}");
        }
    }

    fn sample() -> Vec<ScoredSegment> {
        let idx = PrefixIndex::from_values(&[2.0, -3.0, 4.0, -1.0, 2.0]).unwrap();
        [(3, 5), (1, 3), (3, 4)].iter().map(|&(i, j)| idx.score(Segment::new(i, j))).collect()
    }

    #[test]
    fn json_single_and_list() {
        let v = sample();
        assert_eq!(
            render(&Report::Segment(v[0]), OutputMode::Json),
            "{\"start\":3,\"end\":5,\"sum\":5,\"width\":3,\"density\":1.666666667}\n"
        );
        assert_eq!(render(&Report::Segments(vec![]), OutputMode::Json), "[]\n");
        let text = render(&Report::Segments(v), OutputMode::Json);
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("[\n{\"start\":3,\"end\":5,"));
    }

    #[test]
    fn tsv_rows() {
        let v = sample();
        assert_eq!(render(&Report::Segment(v[1]), OutputMode::Tsv), "start\tend\tsum\twidth\tdensity\n1\t3\t3\t3\t1\n");
        let text = render(&Report::Segments(v), OutputMode::Tsv);
        let starts: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
        assert_eq!(starts, vec!["3", "1", "3"]);
        assert_eq!(render(&Report::Count(7), OutputMode::Tsv), "count\n7\n");
    }

    #[test]
    fn escaping() {
        assert_eq!(json_string("a\"b\\c\u{1}"), "\"a\\\"b\\\\c\\u0001\"");
    }
}
