//! Small combinatorial helpers shared by the geometry and hilbert modules.

/// Binomial coefficient C(n, k) as usize. Saturates via checked arithmetic;
/// callers guard sizes before building anything this large.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Iterate all k-subsets of 0..n in lexicographic order, invoking `f` on
/// each. `f` returns false to stop early; the function returns true when the
/// enumeration ran to completion.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    if k == 0 {
        return f(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        // advance to next subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
