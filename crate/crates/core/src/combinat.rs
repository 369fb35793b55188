//! Small enumerators shared by the algebraic layers.

/// Ordered compositions of `n` into positive parts.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sequences `(j_1, ..., j_n)` with `sum p * j_p = n`, optionally with `sum j_p = k`.
pub fn multiplicity_partitions(n: u32, k: Option<u32>) -> Vec<Vec<u32>> {
    fn go(p: u32, rem: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if p > n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut j = 0;
        while j * p <= rem {
            cur.push(j);
            go(p + 1, rem - j * p, n, cur, out);
            cur.pop();
            j += 1;
        }
    }
    let mut out = Vec::new();
    go(1, n, n, &mut Vec::new(), &mut out);
    if let Some(k) = k {
        out.retain(|js| js.iter().sum::<u32>() == k);
    }
    out
}

/// Sequences of `parts` nonnegative integers summing to `n`.
pub fn weak_compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(compositions(5).len(), 16);
        assert_eq!(multiplicity_partitions(6, None).len(), 11);
        assert_eq!(multiplicity_partitions(6, Some(3)).len(), 3);
        assert_eq!(weak_compositions(3, 3).len(), 10);
    }
}
