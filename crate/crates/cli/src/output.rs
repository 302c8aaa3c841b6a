use specmoment::reconstruction::format_full;

/// 17 significant digits.
pub fn full(x: f64) -> String {
    format_full(x)
}

pub fn opt_full(x: Option<f64>) -> String {
    x.map(format_full).unwrap_or_default()
}

/// 7 significant digits; fixed notation for moderate magnitudes.
pub fn plain(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..7).contains(&exp) {
        let decimals = (6 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.6e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_digits() {
        assert_eq!(plain(0.5f64.atan()), "0.4636476");
        assert_eq!(plain(24.0), "24.00000");
        assert_eq!(plain(-1.5e-9), "-1.500000e-9");
        assert_eq!(plain(0.0), "0");
    }

    #[test]
    fn full_digits() {
        assert_eq!(full(0.1), "1.0000000000000001e-1");
        assert_eq!(opt_full(None), "");
    }
}
