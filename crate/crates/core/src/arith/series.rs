//! Truncated integer power series, stored as ascending coefficient vectors.

pub type Series = Vec<i128>;

pub fn one(len: usize) -> Series {
    let mut s = vec![0; len];
    if len > 0 {
        s[0] = 1;
    }
    s
}

pub fn mul(a: &[i128], b: &[i128], len: usize) -> Series {
    let mut out = vec![0i128; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Generalized binomial coefficient `C(e, j)` for any integer `e`.
pub fn binomial(e: i64, j: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..j as i128 {
        num *= e as i128 - i;
        den *= i + 1;
        let g = gcd(num.abs(), den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// `(1 - c*t^k)^e` truncated to `len` coefficients.
pub fn one_minus_power(c: i128, k: usize, e: i64, len: usize) -> Series {
    let mut out = vec![0i128; len];
    let mut j = 0u32;
    while (j as usize) * k < len {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out[j as usize * k] = sign * binomial(e, j) * c.pow(j);
        if e >= 0 && j as i64 >= e {
            break;
        }
        j += 1;
    }
    out
}

/// `prod_{k >= start} (1 - t^k)^{ranks[k-1]}`, truncated.
pub fn lcs_product(ranks: &[usize], start: usize, len: usize) -> Series {
    let mut acc = one(len);
    for (idx, &r) in ranks.iter().enumerate() {
        let k = idx + 1;
        if k < start || k >= len || r == 0 {
            continue;
        }
        acc = mul(&acc, &one_minus_power(1, k, r as i64, len), len);
    }
    acc
}

/// Multiplicative inverse of a series with constant term 1.
pub fn inverse(a: &[i128], len: usize) -> Series {
    assert_eq!(a.first(), Some(&1), "series must start with 1");
    let mut out = vec![0i128; len];
    if len == 0 {
        return out;
    }
    out[0] = 1;
    for n in 1..len {
        let s: i128 = (1..=n).filter(|&i| i < a.len()).map(|i| a[i] * out[n - i]).sum();
        out[n] = -s;
    }
    out
}

pub fn truncate(a: &[i128], len: usize) -> Series {
    let mut v: Series = a.iter().take(len).copied().collect();
    v.resize(len, 0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-2, 3), -4);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let a = one_minus_power(1, 1, 1, 5);
        assert_eq!(inverse(&a, 5), vec![1, 1, 1, 1, 1]);
        assert_eq!(one_minus_power(1, 1, -2, 4), vec![1, 2, 3, 4]);
    }

    #[test]
    fn braid_lcs_product() {
        // ranks of the pure braid group on four strands
        let prod = lcs_product(&[6, 4, 10, 21, 54], 1, 6);
        let expect = mul(
            &mul(&one_minus_power(1, 1, 1, 6), &one_minus_power(2, 1, 1, 6), 6),
            &one_minus_power(3, 1, 1, 6),
            6,
        );
        assert_eq!(prod, expect);
    }
}
