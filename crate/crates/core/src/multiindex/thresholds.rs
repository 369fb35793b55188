use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::rational::{floor, frac, int, Rational};
use num_traits::{Signed, ToPrimitive, Zero};

fn check_dimension(d: &Rational) -> Result<()> {
    if !d.is_positive() || *d >= int(4) {
        return Err(Error::Domain(format!("dimension must lie in (0, 4), got {d}")));
    }
    Ok(())
}

fn floor_u32(q: &Rational) -> u32 {
    floor(q).to_u32().unwrap_or(u32::MAX)
}

/// Largest `n` for which the vacuum graphs of `P(X^n)` diverge: `floor(d / (4 - d))`.
pub fn n_star_e(d: &Rational) -> Result<u32> {
    check_dimension(d)?;
    Ok(floor_u32(&(d / (int(4) - d))))
}

/// Largest `p` for which the subdivergence families of size `p` diverge: `floor(2 / (4 - d))`.
pub fn n_star_m(d: &Rational) -> Result<u32> {
    check_dimension(d)?;
    Ok(floor_u32(&(int(2) / (int(4) - d))))
}

/// `4n / (n + 1)`.
pub fn d_star_e(n: u32) -> Rational {
    frac(4 * n as i64, n as i64 + 1)
}

/// `4 - 2/n`.
pub fn d_star_m(n: u32) -> Rational {
    int(4) - frac(2, n as i64)
}

/// Members of the two subdivergence families of size `p`.
pub fn family_members(p: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if p >= 2 {
        out.push(MultiIndex::from_pairs(&[(3, 2), (4, p - 2)]));
    }
    if p >= 3 {
        out.push(MultiIndex::from_pairs(&[(2, 1), (4, p - 1)]));
    }
    out
}

/// The family members that actually diverge at dimension `d`.
pub fn subdivergence_classes(d: &Rational) -> Result<Vec<MultiIndex>> {
    let pmax = n_star_m(d)?;
    let mut out: Vec<MultiIndex> = (2..=pmax).flat_map(family_members).collect();
    out.retain(|b| !b.degree(d).is_positive());
    debug_assert!(out.iter().all(|b| b.degree(d) <= Rational::zero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_at_three() {
        assert_eq!(n_star_e(&int(3)).unwrap(), 3);
        assert_eq!(n_star_m(&int(3)).unwrap(), 2);
        assert_eq!(n_star_m(&frac(18, 5)).unwrap(), 5);
        assert!(n_star_e(&int(4)).is_err());
    }

    #[test]
    fn critical_dimensions_invert_thresholds() {
        for n in 1..12 {
            assert_eq!(n_star_e(&d_star_e(n)).unwrap(), n);
        }
        for n in 2..12 {
            assert_eq!(n_star_m(&d_star_m(n)).unwrap(), n);
        }
    }

    #[test]
    fn classes() {
        let z = |p: &[(u32, u32)]| MultiIndex::from_pairs(p);
        assert_eq!(subdivergence_classes(&int(3)).unwrap(), vec![z(&[(3, 2)])]);
        let mut c = subdivergence_classes(&frac(7, 2)).unwrap();
        c.sort();
        let mut e = vec![
            z(&[(3, 2)]),
            z(&[(3, 2), (4, 1)]),
            z(&[(2, 1), (4, 2)]),
            z(&[(3, 2), (4, 2)]),
            z(&[(2, 1), (4, 3)]),
        ];
        e.sort();
        assert_eq!(c, e);
        assert!(subdivergence_classes(&int(2)).unwrap().is_empty());
        assert!(subdivergence_classes(&int(4)).is_err());
    }
}
