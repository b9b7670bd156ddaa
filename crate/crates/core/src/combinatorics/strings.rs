use alloc::vec;
use alloc::vec::Vec;

/// `z[i]` is the length of the longest common prefix of `s` and `s[i..]`;
/// `z[0] = len`.
pub fn z_array<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n + 1];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// For each `t`, the length of the longest common prefix of `text[t..]` and
/// `pattern`, given `zp = z_array(pattern)`.
pub(crate) fn match_lengths<T: Eq>(pattern: &[T], zp: &[usize], text: &[T], out: &mut Vec<usize>) {
    out.clear();
    out.resize(text.len(), 0);
    let m = pattern.len();
    let (mut l, mut r) = (0usize, 0usize);
    for i in 0..text.len() {
        let mut k = if i < r { zp[i - l].min(r - i) } else { 0 };
        while k < m && i + k < text.len() && pattern[k] == text[i + k] {
            k += 1;
        }
        out[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
}

/// Length of the longest palindromic prefix (failure function of
/// `s # reverse(s)`).
pub(crate) fn longest_palindromic_prefix<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    // Combined sequence: s, separator, reverse(s); None is the separator.
    let at = |i: usize| -> Option<&T> {
        if i < n {
            Some(&s[i])
        } else if i == n {
            None
        } else {
            Some(&s[2 * n - i])
        }
    };
    let total = 2 * n + 1;
    let mut fail = vec![0usize; total];
    for i in 1..total {
        let mut k = fail[i - 1];
        while k > 0 && at(i) != at(k) {
            k = fail[k - 1];
        }
        if at(i) == at(k) {
            k += 1;
        }
        fail[i] = k;
    }
    fail[total - 1]
}
