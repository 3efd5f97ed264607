use crate::error::{Error, Result};

/// Genus of a curve with a group of order `order` acting with quotient P^1
/// branched over three points of orders `(l, m, n)`, from Riemann-Hurwitz:
/// `2g - 2 = |G| (1 - 1/l - 1/m - 1/n)`.
pub fn genus(order: u64, (l, m, n): (u64, u64, u64)) -> Result<u64> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::NonIntegralGenus(format!("zero branch order in ({l},{m},{n})")));
    }
    let (l, m, n) = (l as i128, m as i128, n as i128);
    let num = order as i128 * (l * m * n - m * n - l * n - l * m);
    let den = l * m * n;
    if num % den != 0 {
        return Err(Error::NonIntegralGenus(format!("{num}/{den}")));
    }
    let chi = num / den;
    if chi % 2 != 0 || chi < -2 {
        return Err(Error::NonIntegralGenus(format!("2g-2 = {chi}")));
    }
    Ok((chi / 2 + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(genus(25, (5, 5, 5)), Ok(6));
        assert_eq!(genus(60, (2, 3, 5)), Ok(0));
        assert_eq!(genus(1092, (7, 7, 13)), Ok(349));
        assert_eq!(genus(168, (2, 3, 7)), Ok(3));
        assert_eq!(genus(10, (3, 3, 3)), Ok(1));
        assert!(genus(10, (3, 4, 5)).is_err());
    }

    #[test]
    fn fermat_curves() {
        for p in [5u64, 7, 11, 13] {
            assert_eq!(genus(p * p, (p, p, p)), Ok((p - 1) * (p - 2) / 2));
        }
    }
}
