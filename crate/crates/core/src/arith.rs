//! Sieved tables and point evaluations of the elementary arithmetic
//! functions: smallest prime factor, the divisor count τ, Euler's totient φ
//! and the Möbius function μ.
//!
//! A single linear (smallest-prime-factor) sieve pass feeds all three
//! derived tables. After construction an [`ArithTables`] is immutable and
//! can be shared freely across threads; every point operation is pure.

use crate::error::{Error, Result};

/// Hard cap on the sieve limit. Each entry costs 13 bytes across the four
/// tables, so the practical bound is available memory, not this constant.
pub const MAX_TABLE_LIMIT: u64 = 1 << 31;

/// Divisor lists are generated on demand from factorizations rather than
/// materialized; this cap bounds the size of a single request.
pub const MAX_DIVISOR_ARG: u64 = 1 << 62;

/// Sieved values of spf, τ, φ and μ for `1..=limit`.
#[derive(Debug)]
pub struct ArithTables {
    limit: u64,
    spf: Vec<u32>,
    tau: Vec<u32>,
    phi: Vec<u32>,
    mu: Vec<i8>,
}

impl ArithTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// τ(n) from the table; `n` must be in `1..=limit`.
    #[inline]
    pub fn tau(&self, n: u64) -> u64 {
        self.tau[n as usize] as u64
    }

    /// φ(n) from the table; `n` must be in `1..=limit`.
    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    /// μ(n) from the table; `n` must be in `1..=limit`.
    #[inline]
    pub fn mu(&self, n: u64) -> i64 {
        self.mu[n as usize] as i64
    }

    /// τ(n) for any `n >= 1`, falling back to trial-division factorization
    /// beyond the table.
    pub fn tau_point(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Domain("tau_point: n must be >= 1".into()));
        }
        if n <= self.limit {
            return Ok(self.tau(n));
        }
        let mut t = 1u64;
        for (_, e) in self.factorize(n)? {
            t *= e as u64 + 1;
        }
        Ok(t)
    }

    /// φ(n) for any `n >= 1`.
    pub fn phi_point(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Domain("phi_point: n must be >= 1".into()));
        }
        if n <= self.limit {
            return Ok(self.phi(n));
        }
        let mut r = n;
        for (p, _) in self.factorize(n)? {
            r -= r / p;
        }
        Ok(r)
    }

    /// μ(n) for any `n >= 1`.
    pub fn mu_point(&self, n: u64) -> Result<i64> {
        if n == 0 {
            return Err(Error::Domain("mu_point: n must be >= 1".into()));
        }
        if n <= self.limit {
            return Ok(self.mu(n));
        }
        let mut m = 1i64;
        for (_, e) in self.factorize(n)? {
            if e >= 2 {
                return Ok(0);
            }
            m = -m;
        }
        Ok(m)
    }

    /// Prime factorization as `(p, exponent)` pairs, ascending in `p`.
    /// Uses the spf table when `n <= limit`, trial division otherwise.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::Domain("factorize: n must be >= 1".into()));
        }
        let mut out = Vec::new();
        let mut n = n;
        if n <= self.limit {
            while n > 1 {
                let p = self.spf[n as usize] as u64;
                let mut e = 0u32;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            return Ok(out);
        }
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0u32;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            out.push((n, 1));
        }
        Ok(out)
    }

    /// Sorted list of all divisors of `n`, generated from the factorization.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::Domain("divisors: n must be >= 1".into()));
        }
        if n > MAX_DIVISOR_ARG {
            return Err(Error::Size(format!(
                "divisors: n = {n} exceeds cap {MAX_DIVISOR_ARG}"
            )));
        }
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n)? {
            let prev = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }
}

/// Builds the sieved tables for `1..=limit` in one linear pass.
pub fn build_tables(limit: u64) -> Result<ArithTables> {
    if limit == 0 {
        return Err(Error::Size("build_tables: limit must be >= 1".into()));
    }
    if limit > MAX_TABLE_LIMIT {
        return Err(Error::Size(format!(
            "build_tables: limit {limit} exceeds memory cap {MAX_TABLE_LIMIT}"
        )));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut tau = vec![0u32; n + 1];
    let mut phi = vec![0u32; n + 1];
    let mut mu = vec![0i8; n + 1];
    // exponent of spf(i) in i, needed to extend tau/phi across prime powers
    let mut ex = vec![0u8; n + 1];
    let mut primes: Vec<u32> = Vec::new();

    if n >= 1 {
        spf[1] = 1;
        tau[1] = 1;
        phi[1] = 1;
        mu[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            tau[i] = 2;
            phi[i] = (i - 1) as u32;
            mu[i] = -1;
            ex[i] = 1;
        }
        for &p in &primes {
            let p = p as usize;
            if p > spf[i] as usize || i * p > n {
                break;
            }
            let ip = i * p;
            spf[ip] = p as u32;
            if spf[i] as usize == p {
                ex[ip] = ex[i] + 1;
                tau[ip] = tau[i] / (ex[i] as u32 + 1) * (ex[i] as u32 + 2);
                phi[ip] = phi[i] * p as u32;
                mu[ip] = 0;
            } else {
                ex[ip] = 1;
                tau[ip] = tau[i] * 2;
                phi[ip] = phi[i] * (p as u32 - 1);
                mu[ip] = -mu[i];
            }
        }
    }

    Ok(ArithTables {
        limit,
        spf,
        tau,
        phi,
        mu,
    })
}

/// Greatest common divisor; both arguments must be positive.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("gcd: arguments must be >= 1".into()));
    }
    Ok(gcd_unchecked(a, b))
}

/// Euclid's algorithm without the domain check, for loop indices known
/// to be positive.
#[inline]
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer square root: the largest `r` with `r * r <= n`.
#[inline]
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |rr| rr <= n) {
        r += 1;
    }
    r
}
