use num_bigint::BigInt;
use num_traits::One;

use super::Rat;
use crate::error::{out_of_range, Result};

/// `b_m` as a signed multinomial sum over tuples `(c_0, c_1, …)` with
/// `Σ c_i = 4k+1` and `Σ i·c_i = m`.
///
/// Independent of the series kernel: each tuple contributes
/// `(−1)^{c_1+c_3+⋯} · (4k+1)!/(c_0! c_1! ⋯) · Π (i+1)^{−c_i}`.
pub fn bm_multinomial_oracle(k: u64, m: u64) -> Result<Rat> {
    if m > 4 * k {
        return Err(out_of_range("m", format!("m = {m} exceeds 4k = {}", 4 * k)));
    }
    let n = 4 * k + 1;
    let fact: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain((1..=n).scan(BigInt::one(), |acc, i| {
            *acc *= i;
            Some(acc.clone())
        }))
        .collect();
    let mut total = Rat::zero();
    let mut counts = vec![0u64; m as usize + 1];
    enumerate(m, m, &mut counts, &mut |c| {
        let used: u64 = c.iter().skip(1).sum();
        if used > n {
            return;
        }
        let c0 = n - used;
        let mut denom = fact[c0 as usize].clone();
        let mut odd = 0;
        for (i, &ci) in c.iter().enumerate().skip(1) {
            if ci == 0 {
                continue;
            }
            denom *= &fact[ci as usize];
            denom *= num_traits::pow(BigInt::from(i + 1), ci as usize);
            if i % 2 == 1 {
                odd += ci;
            }
        }
        let sign = if odd % 2 == 0 { 1 } else { -1 };
        total += Rat::new(&fact[n as usize] * sign, denom).expect("positive denominator");
    });
    Ok(total)
}

/// Visits every multiplicity vector `c` (index = part size) of partitions of
/// `remaining` into parts no larger than `max_part`.
fn enumerate(remaining: u64, max_part: u64, c: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    if remaining == 0 {
        visit(c);
        return;
    }
    if max_part == 0 {
        return;
    }
    let mut mult = remaining / max_part;
    loop {
        c[max_part as usize] = mult;
        enumerate(remaining - mult * max_part, max_part - 1, c, visit);
        if mult == 0 {
            break;
        }
        mult -= 1;
    }
    c[max_part as usize] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_values() {
        assert_eq!(bm_multinomial_oracle(1, 0).unwrap(), Rat::one());
        assert_eq!(
            bm_multinomial_oracle(1, 1).unwrap(),
            Rat::new(-5, 2).unwrap()
        );
        assert_eq!(
            bm_multinomial_oracle(1, 4).unwrap(),
            Rat::new(1069, 144).unwrap()
        );
    }

    #[test]
    fn k1_b4_term_list() {
        // 1 + 5/2 + 10/9 + 5/2 + 5/16, the five tuples contributing to b_4.
        let parts = [
            Rat::one(),
            Rat::new(5, 2).unwrap(),
            Rat::new(10, 9).unwrap(),
            Rat::new(5, 2).unwrap(),
            Rat::new(5, 16).unwrap(),
        ];
        let sum = parts.iter().fold(Rat::zero(), |a, b| a + b);
        assert_eq!(sum, bm_multinomial_oracle(1, 4).unwrap());
    }

    #[test]
    fn rejects_large_m() {
        assert!(bm_multinomial_oracle(1, 5).is_err());
    }
}
