//! Numeric formatting for reports.

/// Six significant digits; scientific notation at or above 1e6 and
/// below 1e-4.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs();
    if !(1e-4..1e6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let exp = mag.log10().floor() as i32;
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new digit, e.g. 999999.5 -> "1000000".
    if s.trim_start_matches('-').split('.').next().map_or(0, str::len) > 6 {
        return format!("{x:.5e}");
    }
    s
}

pub fn sig6_opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}
