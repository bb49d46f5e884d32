//! Set-partition enumeration.
//!
//! Partitions of {0, .., n-1} are walked in restricted-growth-string order:
//! `a[0] = 0` and `a[i] <= max(a[..i]) + 1`. The block labelled 0 always
//! contains element 0, so the induced block lists come out already sorted by
//! least element, matching the canonical form used by `SigmaField`.

/// Calls `f` with the restricted growth string of every set partition of
/// `n` elements. `f` returns `false` to stop early. `n = 0` yields a single
/// empty partition.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        if !f(&a) {
            return;
        }
        // Advance: find the rightmost position that can still grow.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            let cap = maxes[i - 1] + 1;
            if a[i] < cap {
                a[i] += 1;
                break;
            }
            i -= 1;
        }
        for j in i..n {
            if j > i {
                a[j] = 0;
            }
            maxes[j] = if j == 0 { 0 } else { maxes[j - 1].max(a[j]) };
        }
    }
}

/// Expands a restricted growth string into block lists. Blocks appear in
/// order of their least element; members are ascending.
pub fn rgs_to_blocks(rgs: &[usize]) -> Vec<Vec<usize>> {
    let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); nblocks];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b].push(i);
    }
    blocks
}

/// All set partitions of `n` elements as block lists. Intended for small
/// `n`; the count is the Bell number.
pub fn all_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_rgs(n, |rgs| {
        out.push(rgs_to_blocks(rgs));
        true
    });
    out
}

/// Bell number B(n) via the Bell triangle. Saturates for n > 26 way past
/// anything this crate enumerates, so u128 is plenty.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expect = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in expect.iter().enumerate() {
            assert_eq!(bell(n), b, "B({n})");
        }
    }

    #[test]
    fn enumeration_count_matches_bell() {
        for n in 0..=7 {
            assert_eq!(all_partitions(n).len() as u128, bell(n));
        }
    }

    #[test]
    fn partitions_of_three() {
        let got = all_partitions(3);
        let expect: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![0, 1, 2]],
            vec![vec![0, 1], vec![2]],
            vec![vec![0, 2], vec![1]],
            vec![vec![0], vec![1, 2]],
            vec![vec![0], vec![1], vec![2]],
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn blocks_are_canonical() {
        for_each_rgs(6, |rgs| {
            let blocks = rgs_to_blocks(rgs);
            for b in &blocks {
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
            for w in blocks.windows(2) {
                assert!(w[0][0] < w[1][0]);
            }
            true
        });
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        for_each_rgs(5, |_| {
            seen += 1;
            seen < 10
        });
        assert_eq!(seen, 10);
    }
}
