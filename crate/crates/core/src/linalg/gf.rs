//! Log/antilog tables for the finite fields GF(p^k).
//!
//! Elements are encoded as integers in `[0, p^k)` whose base-`p` digits are
//! the coefficients of a polynomial in the generator `x`; the constants
//! `0..p` are therefore the prime subfield.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Largest field order for which tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 24;

#[derive(Debug)]
pub struct GfTables {
    pub p: u32,
    pub q: u32,
    /// `exp[i]` is the encoding of `x^i`, for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// Discrete log of each nonzero encoding; `log[0]` is unused.
    log: Vec<u32>,
}

impl GfTables {
    fn build(p: u32, k: u32) -> GfTables {
        let q = p.pow(k);
        let top = q / p;
        let digits = |mut v: u32| -> Vec<u32> {
            let mut out = Vec::with_capacity(k as usize);
            for _ in 0..k {
                out.push(v % p);
                v /= p;
            }
            out
        };
        // multiply the encoded polynomial by x modulo x^k + tail
        let times_x = |v: u32, tail: &[u32]| -> u32 {
            let lead = v / top;
            let shifted = (v % top) * p;
            if lead == 0 {
                return shifted;
            }
            let mut ds = digits(shifted);
            for (d, t) in ds.iter_mut().zip(tail) {
                *d = (*d + (p - (lead * t) % p)) % p;
            }
            ds.iter().rev().fold(0, |acc, d| acc * p + d)
        };

        if k == 1 {
            // any primitive root mod p
            for g in 1..p {
                let mut exp = Vec::with_capacity(q as usize - 1);
                let mut v = 1u64;
                let mut ok = true;
                for i in 0..(q - 1) {
                    if i > 0 && v == 1 {
                        ok = false;
                        break;
                    }
                    exp.push(v as u32);
                    v = v * g as u64 % p as u64;
                }
                if ok && v == 1 {
                    return Self::finish(p, q, exp);
                }
            }
            unreachable!("prime field without primitive root");
        }

        for code in 1..q {
            let tail = digits(code);
            if tail[0] == 0 {
                continue;
            }
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut v = 1u32;
            let mut ok = true;
            for i in 0..(q - 1) {
                if i > 0 && v == 1 {
                    ok = false;
                    break;
                }
                exp.push(v);
                v = times_x(v, &tail);
            }
            if ok && v == 1 {
                return Self::finish(p, q, exp);
            }
        }
        unreachable!("no primitive polynomial of degree {k} over F_{p}");
    }

    fn finish(p: u32, q: u32, exp: Vec<u32>) -> GfTables {
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        GfTables { p, q, exp, log }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        // a + b = a * (1 + b/a)
        let ratio = self.exp[((lb + n - la) % n) as usize];
        let c = ratio % self.p;
        let shifted = ratio - c + (c + 1) % self.p;
        if shifted == 0 {
            return 0;
        }
        let s = la + self.log[shifted as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else {
            self.mul(a, self.p - 1)
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }
}

/// Shared tables for GF(p^k), built on first use.
pub fn tables(p: u32, k: u32) -> &'static GfTables {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), &'static GfTables>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gf table cache poisoned");
    guard
        .entry((p, k))
        .or_insert_with(|| Box::leak(Box::new(GfTables::build(p, k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(p: u32, k: u32) {
        let t = tables(p, k);
        let q = t.q;
        // every nonzero element has an inverse and the exp table is a permutation
        let mut seen = vec![false; q as usize];
        for &e in &t.exp {
            assert!(!seen[e as usize]);
            seen[e as usize] = true;
        }
        for a in 1..q.min(500) {
            assert_eq!(t.mul(a, t.inv(a)), 1);
            assert_eq!(t.add(a, t.neg(a)), 0);
        }
        // distributivity on a sample
        let sample: Vec<u32> = (0..q).step_by((q as usize / 37).max(1)).collect();
        for &a in &sample {
            for &b in &sample {
                for &c in sample.iter().take(8) {
                    assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
                    assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn small_extension_fields_are_fields() {
        check_field_axioms(2, 4);
        check_field_axioms(3, 3);
        check_field_axioms(5, 2);
        check_field_axioms(7, 1);
    }

    #[test]
    fn prime_subfield_embeds_as_constants() {
        let t = tables(3, 4);
        assert_eq!(t.add(1, 2), 0);
        assert_eq!(t.add(2, 2), 1);
        assert_eq!(t.mul(2, 2), 1);
    }

    #[test]
    fn characteristic_two_adds_by_xor() {
        let t = tables(2, 8);
        for a in 0..256u32 {
            assert_eq!(t.add(a, a), 0);
        }
        assert_eq!(t.q, 256);
    }
}
