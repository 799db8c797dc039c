use anyhow::{bail, Result};

/// Parses `25,50,100` or an inclusive range `3..10`. The result must be
/// strictly increasing.
pub fn parse(spec: &str) -> Result<Vec<u32>> {
    let spec = spec.trim();
    let values: Vec<u32> = if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse()?;
        let hi: u32 = hi.trim().trim_start_matches('=').parse()?;
        (lo..=hi).collect()
    } else {
        spec.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
    };
    if values.is_empty() || values.windows(2).any(|w| w[0] >= w[1]) {
        bail!("schedule {spec:?} must be non-empty and strictly increasing");
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse("25, 50,100").unwrap(), vec![25, 50, 100]);
        assert_eq!(parse("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse("3..=4").unwrap(), vec![3, 4]);
        assert_eq!(parse("7").unwrap(), vec![7]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "5,5", "9,3", "a,b", "6..3", "1..x"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
