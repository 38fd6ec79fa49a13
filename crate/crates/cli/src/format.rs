use std::fmt::Write;

/// Six significant digits, `%g` style: fixed notation for moderate
/// magnitudes, scientific otherwise, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can carry into the next decade (999999.7 -> 1e6)
    let rounded: f64 = format!("{:.5e}", x).parse().unwrap();
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) { exp + 1 } else { exp };
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let s = format!("{:.5e}", x);
        let (mantissa, power) = s.split_once('e').unwrap();
        format!("{}e{}", trim_zeros(mantissa.to_string()), power)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn fixed2(x: f64) -> String {
    format!("{x:.2}")
}

pub fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "NA".to_string())
}

/// Left-aligned first column, right-aligned rest, two spaces apart.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                let _ = write!(line, "{:<w$}", cell, w = widths[0]);
            } else {
                let _ = write!(line, "  {:>w$}", cell, w = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.0), "1");
        assert_eq!(sig6(1.929_871_234), "1.92987");
        assert_eq!(sig6(845.384_12), "845.384");
        assert_eq!(sig6(181_612.0), "181612");
        assert_eq!(sig6(1_234_567.0), "1.23457e6");
        assert_eq!(sig6(0.000_050_25), "5.025e-5");
        assert_eq!(sig6(0.000_123_456_7), "0.000123457");
        assert_eq!(sig6(-0.5), "-0.5");
        assert_eq!(sig6(999_999.7), "1e6");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn alignment() {
        let rows = vec![
            vec!["a".to_string(), "1".to_string()],
            vec!["bbb".to_string(), "22".to_string()],
        ];
        assert_eq!(aligned(&rows), "a     1\nbbb  22\n");
    }
}
