/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// `;`-separated list for a single CSV field.
pub fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(-0.1), "-1.0000000000000001e-1");
        let x = 2.414213562373095;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
        assert_eq!(opt(None), "");
        assert_eq!(list(&[1.0, 2.0]), "1.0000000000000000e0;2.0000000000000000e0");
    }
}
