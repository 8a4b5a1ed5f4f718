/// Formats a number with 12 significant digits; fixed notation for
/// magnitudes in `[1e-4, 1e12)`, scientific otherwise.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific notation has an exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| sig12(v))
        .collect::<Vec<_>>()
        .join(",")
}
