//! High-precision evaluation of the Stieltjes constants γ₀…γ₄, the
//! derivatives ζ⁽ʲ⁾(2) for j = 0…4, and ζ(t) at real t > 1.
//!
//! γₙ is defined by the limit
//!
//! ```text
//! γ_n = lim_{N→∞} [ Σ_{k≤N} (log k)^n / k − (log N)^{n+1} / (n+1) ]
//! ```
//!
//! The primary method sums to a moderate `N` and removes the tail with
//! Euler–Maclaurin corrections; the truncation point and correction order
//! are chosen adaptively from a tail bound, never fixed. Every γₙ is then
//! re-derived by a structurally different route — Boole (Euler-polynomial)
//! summation of the alternating series `Σ (−1)^{k−1} (log k)^j / k`
//! combined with the factorization through `1 − 2^{1−s}` — and the two
//! must agree to `digits − 5` significant digits before a
//! [`ConstantsBank`] is handed out.

use crate::error::{Error, Result};
use crate::hp::{bits_for_digits, Real};

/// Exact Bernoulli numbers B₂, B₄, …, B₃₂ as (numerator, denominator).
/// Index `j` holds B_{2(j+1)}.
const BERNOULLI: [(i64, u64); 16] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
];

/// Largest Euler–Maclaurin correction order available from the table.
const MAX_EM_ORDER: usize = 16;

fn bernoulli_real(two_j: usize, bits: usize) -> Real {
    let (n, d) = BERNOULLI[two_j / 2 - 1];
    Real::from_ratio(n, d, bits)
}

fn bernoulli_f64(two_j: usize) -> f64 {
    let (n, d) = BERNOULLI[two_j / 2 - 1];
    n as f64 / d as f64
}

fn factorial_real(n: usize, bits: usize) -> Real {
    let mut f = Real::from_u64(1, bits);
    for k in 2..=n {
        f = f * Real::from_u64(k as u64, bits);
    }
    f
}

fn factorial_f64(n: usize) -> f64 {
    (2..=n).fold(1.0, |a, k| a * k as f64)
}

/// Coefficient table of the polynomials P_k with
/// `d^k/dx^k [ (log x)^n x^{-sigma} ] = x^{-(sigma+k)} P_k(log x)`,
/// generated by `P_0 = L^n`, `P_{k+1} = P_k' − (sigma + k) P_k`.
fn derivative_polys(n: usize, sigma: u64, k_max: usize, bits: usize) -> Vec<Vec<Real>> {
    let mut polys = Vec::with_capacity(k_max + 1);
    let mut p0 = vec![Real::zero(bits); n + 1];
    p0[n] = Real::from_u64(1, bits);
    polys.push(p0);
    for k in 0..k_max {
        let prev = &polys[k];
        let mut next = vec![Real::zero(bits); n + 1];
        for i in 0..=n {
            let mut v = -(&prev[i] * Real::from_u64(sigma + k as u64, bits));
            if i < n {
                v = v + &prev[i + 1] * Real::from_u64(i as u64 + 1, bits);
            }
            next[i] = v;
        }
        polys.push(next);
    }
    polys
}

/// Same recurrence in f64, used only to pick truncation parameters.
fn derivative_polys_f64(n: usize, sigma: f64, k_max: usize) -> Vec<Vec<f64>> {
    let mut polys = Vec::with_capacity(k_max + 1);
    let mut p0 = vec![0.0; n + 1];
    p0[n] = 1.0;
    polys.push(p0);
    for k in 0..k_max {
        let prev = &polys[k];
        let mut next = vec![0.0; n + 1];
        for i in 0..=n {
            let mut v = -prev[i] * (sigma + k as f64);
            if i < n {
                v += prev[i + 1] * (i as f64 + 1.0);
            }
            next[i] = v;
        }
        polys.push(next);
    }
    polys
}

fn poly_eval(coeffs: &[Real], x: &Real) -> Real {
    let mut acc = Real::zero(x.bits());
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_abs_eval_f64(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    let mut xp = 1.0;
    for c in coeffs {
        acc += c.abs() * xp;
        xp *= x;
    }
    acc
}

/// Picks `(N, J)` for the Euler–Maclaurin evaluation of
/// `Σ (log k)^n k^{-sigma}`-type sums so that the first omitted correction
/// term is below `10^{-target_digits}`, scanning a doubling ladder of N.
fn choose_em_params(n_logpow: usize, sigma: f64, target_digits: f64) -> (u64, usize) {
    let polys = derivative_polys_f64(n_logpow, sigma, 2 * MAX_EM_ORDER + 1);
    let target = -target_digits;
    let mut n = 1000u64;
    loop {
        let ln_n = (n as f64).ln();
        for j in 3..=MAX_EM_ORDER - 1 {
            // first omitted term: B_{2(j+1)}/(2(j+1))! * f^{(2j+1)}(N)
            let jj = 2 * (j + 1);
            let coeff = bernoulli_f64(jj).abs() / factorial_f64(jj);
            let deriv = poly_abs_eval_f64(&polys[jj - 1], ln_n);
            let term = coeff.log10() + deriv.log10() - (sigma + jj as f64 - 1.0) * (n as f64).log10();
            if term + 1.0 < target {
                return (n, j);
            }
        }
        n *= 2;
        assert!(n <= 1 << 26, "no Euler-Maclaurin parameters reach target");
        let _ = ln_n;
    }
}

/// `Σ_{k=1}^{N} (log k)^j / k^sigma` for all `j = 0..=n_max` in one pass.
/// `alternating` flips the sign of even-k terms.
fn log_power_sums(n_max: usize, sigma: u64, n: u64, alternating: bool, bits: usize) -> Vec<Real> {
    let mut acc = vec![Real::zero(bits); n_max + 1];
    for k in 1..=n {
        let kf = Real::from_u64(k, bits);
        let neg = alternating && k % 2 == 0;
        let inv = match sigma {
            1 => kf.recip(),
            _ => kf.powi(sigma as i64).recip(),
        };
        let lk = if k == 1 { Real::zero(bits) } else { kf.ln() };
        let mut pow = inv;
        for j in 0..=n_max {
            if j > 0 {
                pow = pow * &lk;
            }
            if neg {
                acc[j] = &acc[j] - &pow;
            } else {
                acc[j] = &acc[j] + &pow;
            }
        }
    }
    acc
}

/// Stieltjes constants γ₀…γ₄ by Euler–Maclaurin.
fn gammas_euler_maclaurin(digits: usize) -> Vec<Real> {
    let bits = bits_for_digits(digits + 16);
    let (n, j_ord) = choose_em_params(4, 1.0, digits as f64 + 12.0);
    let sums = log_power_sums(4, 1, n, false, bits);
    let nf = Real::from_u64(n, bits);
    let ln_n = nf.ln();
    let inv_n = nf.recip();

    let mut gammas = Vec::with_capacity(5);
    for m in 0..=4usize {
        let polys = derivative_polys(m, 1, 2 * j_ord, bits);
        // S_N − (log N)^{m+1}/(m+1)
        let mut g = &sums[m] - ln_n.powi(m as i64 + 1) / Real::from_u64(m as u64 + 1, bits);
        // − f(N)/2
        g = g - ln_n.powi(m as i64) * &inv_n / Real::from_u64(2, bits);
        // − Σ B_{2j}/(2j)! f^{(2j−1)}(N)
        for j in 1..=j_ord {
            let coeff = bernoulli_real(2 * j, bits) / factorial_real(2 * j, bits);
            let deriv = poly_eval(&polys[2 * j - 1], &ln_n) * inv_n.powi(2 * j as i64);
            g = g - coeff * deriv;
        }
        gammas.push(g);
    }
    gammas
}

/// Value of the Euler polynomial at zero, `E_k(0)`, for the Boole tail.
/// `E_0(0) = 1`, `E_k(0) = 2 (1 − 2^{k+1}) B_{k+1} / (k+1)` (zero for even k > 0).
fn euler_at_zero(k: usize, bits: usize) -> Real {
    if k == 0 {
        return Real::from_u64(1, bits);
    }
    if k % 2 == 0 {
        return Real::zero(bits);
    }
    let two = Real::from_u64(2, bits);
    let pow = Real::from_u64(1, bits) - two.powi(k as i64 + 1);
    Real::from_u64(2, bits) * pow * bernoulli_real(k + 1, bits)
        / Real::from_u64(k as u64 + 1, bits)
}

fn euler_at_zero_f64(k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k % 2 == 0 {
        return 0.0;
    }
    2.0 * (1.0 - 2f64.powi(k as i32 + 1)) * bernoulli_f64(k + 1) / (k as f64 + 1.0)
}

/// Picks `(N, K)` for Boole summation of the alternating log-power sums.
fn choose_boole_params(n_logpow: usize, target_digits: f64) -> (u64, usize) {
    let polys = derivative_polys_f64(n_logpow, 1.0, 2 * MAX_EM_ORDER + 1);
    let target = -target_digits;
    let mut n = 1000u64;
    loop {
        let ln_n = (n as f64).ln();
        for k in (7..=2 * MAX_EM_ORDER - 3).step_by(2) {
            // first omitted term: E_{k+2}(0)/(k+2)! * g^{(k+2)}(N) / 2
            let kk = k + 2;
            let coeff = (euler_at_zero_f64(kk).abs() / factorial_f64(kk)).log10();
            let deriv = poly_abs_eval_f64(&polys[kk], ln_n).log10();
            let term = coeff + deriv - (kk as f64 + 1.0) * (n as f64).log10();
            if term + 1.0 < target {
                return (n, k);
            }
        }
        n *= 2;
        assert!(n <= 1 << 26, "no Boole parameters reach target");
    }
}

/// Stieltjes constants γ₀…γ₄ through the alternating series
/// `A_j = Σ (−1)^{k−1} (log k)^j / k` (Boole-summed tails) and the Taylor
/// expansion of `1 − 2^{1−s}` at `s = 1`.
fn gammas_alternating(digits: usize) -> Vec<Real> {
    let bits = bits_for_digits(digits + 16);
    let (n0, k_ord) = choose_boole_params(5, digits as f64 + 12.0);
    let n = if n0 % 2 == 0 { n0 } else { n0 + 1 }; // even N keeps (−1)^N = 1
    let partial = log_power_sums(5, 1, n - 1, true, bits);
    let nf = Real::from_u64(n, bits);
    let ln_n = nf.ln();
    let inv_n = nf.recip();
    let half = Real::from_ratio(1, 2, bits);

    // A_j = partial − T_j(N), T_j(N) = ½ Σ_k E_k(0)/k! g_j^{(k)}(N)
    let mut a = Vec::with_capacity(6);
    for j in 0..=5usize {
        let polys = derivative_polys(j, 1, k_ord, bits);
        let mut tail = Real::zero(bits);
        for k in 0..=k_ord {
            if k > 0 && k % 2 == 0 {
                continue;
            }
            let coeff = euler_at_zero(k, bits) / factorial_real(k, bits);
            let deriv = poly_eval(&polys[k], &ln_n) * inv_n.powi(k as i64 + 1);
            tail = tail + coeff * deriv;
        }
        a.push(&partial[j] - &half * tail);
    }

    // eta_j = (−1)^j A_j / j!; c_m = (−1)^{m+1} (log 2)^m / m!;
    // eta_j = c_{j+1} + Σ_{i=0}^{j−1} (−1)^i γ_i c_{j−i} / i!
    let ln2 = Real::from_u64(2, bits).ln();
    let c = |m: usize| -> Real {
        let sign = if m % 2 == 1 { 1i64 } else { -1i64 };
        Real::from_i64(sign, bits) * ln2.powi(m as i64) / factorial_real(m, bits)
    };
    let mut gammas: Vec<Real> = Vec::with_capacity(5);
    for j in 1..=5usize {
        let sign_j = if j % 2 == 0 { 1i64 } else { -1i64 };
        let eta_j = Real::from_i64(sign_j, bits) * &a[j] / factorial_real(j, bits);
        let mut rhs = eta_j - c(j + 1);
        for (i, g) in gammas.iter().enumerate().take(j - 1) {
            let sign_i = if i % 2 == 0 { 1i64 } else { -1i64 };
            rhs = rhs - Real::from_i64(sign_i, bits) * g * c(j - i) / factorial_real(i, bits);
        }
        // remaining term: (−1)^{j−1} γ_{j−1} c_1 / (j−1)!
        let sign = if (j - 1) % 2 == 0 { 1i64 } else { -1i64 };
        let gamma = rhs * factorial_real(j - 1, bits) * Real::from_i64(sign, bits) / &ln2;
        gammas.push(gamma);
    }
    gammas
}

/// ζ⁽ʲ⁾(2) = (−1)^j Σ (log k)^j / k², Euler–Maclaurin with the exact
/// tail integral `∫_N^∞ (log x)^j x^{-2} dx = N^{-1} Σ_i (j!/i!)(log N)^i`.
fn zeta2_derivs_euler_maclaurin(digits: usize) -> Vec<Real> {
    let bits = bits_for_digits(digits + 16);
    let (n, j_ord) = choose_em_params(4, 2.0, digits as f64 + 12.0);
    let sums = log_power_sums(4, 2, n, false, bits);
    let nf = Real::from_u64(n, bits);
    let ln_n = nf.ln();
    let inv_n = nf.recip();

    let mut out = Vec::with_capacity(5);
    for m in 0..=4usize {
        let polys = derivative_polys(m, 2, 2 * j_ord, bits);
        let mut s = sums[m].clone();
        // + ∫_N^∞
        let mut integral = Real::zero(bits);
        let mut fact = factorial_real(m, bits); // m!/i! for i = 0.., recomputed below
        for i in 0..=m {
            // m!/i!
            if i > 0 {
                fact = fact / Real::from_u64(i as u64, bits);
            }
            integral = integral + &fact * ln_n.powi(i as i64);
        }
        s = s + integral * &inv_n;
        // − g(N)/2
        s = s - ln_n.powi(m as i64) * inv_n.powi(2) / Real::from_u64(2, bits);
        // − Σ B_{2j}/(2j)! g^{(2j−1)}(N)
        for j in 1..=j_ord {
            let coeff = bernoulli_real(2 * j, bits) / factorial_real(2 * j, bits);
            let deriv = poly_eval(&polys[2 * j - 1], &ln_n) * inv_n.powi(2 * j as i64 + 1);
            s = s - coeff * deriv;
        }
        let sign = if m % 2 == 0 { 1i64 } else { -1i64 };
        out.push(Real::from_i64(sign, bits) * s);
    }
    out
}

/// ζ(t) for real t > 1 by Euler–Maclaurin.
pub fn zeta_real(t: f64, digits: usize) -> Result<Real> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("zeta_real: t = {t} must be > 1")));
    }
    if digits < 15 {
        return Err(Error::Domain("zeta_real: digits must be >= 15".into()));
    }
    let bits = bits_for_digits(digits + 16);
    // pick (N, J): first omitted term |B_2j|/(2j)! (t)_{2j−1} N^{1−t−2j}
    let target = -(digits as f64 + 12.0);
    let mut n = 64u64;
    let j_ord;
    'outer: loop {
        for j in 2..=MAX_EM_ORDER - 1 {
            let jj = 2 * (j + 1);
            let mut poch = 0.0f64; // log10 of (t)_{jj−1}
            for i in 0..jj - 1 {
                poch += (t + i as f64).log10();
            }
            let term = bernoulli_f64(jj).abs().log10() - factorial_f64(jj).log10() + poch
                + (1.0 - t - (jj as f64 - 1.0)) * (n as f64).log10();
            if term + 1.0 < target {
                j_ord = j;
                break 'outer;
            }
        }
        n *= 2;
        if n > 1 << 24 {
            return Err(Error::Precision(
                "zeta_real: no truncation parameters reach the target accuracy".into(),
            ));
        }
    }

    let tr = Real::from_f64(t, bits);
    let integer_t = t.fract() == 0.0 && t <= 1e6;
    let power = |k: u64| -> Real {
        let kf = Real::from_u64(k, bits);
        if integer_t {
            kf.powi(t as i64).recip()
        } else {
            // k^{−t} = exp(−t log k)
            (-(&tr) * kf.ln()).exp()
        }
    };
    let mut s = Real::zero(bits);
    for k in 1..=n {
        s = s + power(k);
    }
    let nf = Real::from_u64(n, bits);
    // + N^{1−t}/(t−1) − N^{−t}/2
    let n_pow_t = power(n);
    s = s + &nf * &n_pow_t / (&tr - Real::from_u64(1, bits));
    s = s - &n_pow_t / Real::from_u64(2, bits);
    // + Σ B_{2j}/(2j)! (t)_{2j−1} N^{−t−2j+1}
    let inv_n = nf.recip();
    for j in 1..=j_ord {
        let jj = 2 * j;
        let mut poch = Real::from_u64(1, bits);
        for i in 0..jj - 1 {
            poch = poch * (&tr + Real::from_u64(i as u64, bits));
        }
        let term = bernoulli_real(jj, bits) / factorial_real(jj, bits)
            * poch
            * &n_pow_t
            * inv_n.powi(jj as i64 - 1);
        s = s + term;
    }
    Ok(s)
}

/// Validated bank of γ₀…γ₄ and ζ(2), ζ′(2), …, ζ⁗(2) at a common precision.
#[derive(Debug, Clone)]
pub struct ConstantsBank {
    digits: usize,
    bits: usize,
    gamma: Vec<Real>,
    zeta2_derivs: Vec<Real>,
    pi: Real,
}

impl ConstantsBank {
    /// Builds the bank, cross-validating every constant.
    ///
    /// Fails with a precision error if the two γ methods disagree beyond
    /// `digits − 5` significant digits, if ζ(2) strays from π²/6, or if
    /// the forced signs ζ′(2) < 0 < ζ″(2) are violated.
    pub fn build(digits: usize) -> Result<Self> {
        if digits < 15 {
            return Err(Error::Domain(
                "ConstantsBank: digits must be >= 15".into(),
            ));
        }
        if digits > 200 {
            return Err(Error::Domain(
                "ConstantsBank: digits must be <= 200".into(),
            ));
        }
        let bits = bits_for_digits(digits + 16);
        let gamma = gammas_euler_maclaurin(digits);
        let gamma_alt = gammas_alternating(digits);
        let tol = Real::from_u64(10, bits).powi(-(digits as i64 - 5));
        for (n, (a, b)) in gamma.iter().zip(&gamma_alt).enumerate() {
            let rel = ((a - b) / a).abs();
            if !(rel < tol) {
                return Err(Error::Precision(format!(
                    "gamma_{n}: Euler-Maclaurin and alternating-series routes disagree \
                     (rel {} vs tolerance 1e-{})",
                    rel.to_decimal(3),
                    digits - 5
                )));
            }
        }
        let zeta2_derivs = zeta2_derivs_euler_maclaurin(digits);
        let pi = Real::pi(bits);
        // zeta(2) must equal pi^2/6 to working precision
        let z2_ref = pi.powi(2) / Real::from_u64(6, bits);
        let z2_rel = ((&zeta2_derivs[0] - &z2_ref) / &z2_ref).abs();
        let z2_tol = Real::from_u64(10, bits).powi(-(digits as i64));
        if !(z2_rel < z2_tol) {
            return Err(Error::Precision(format!(
                "zeta(2) deviates from pi^2/6 by {}",
                z2_rel.to_decimal(3)
            )));
        }
        if !zeta2_derivs[1].is_negative() || zeta2_derivs[2].is_negative() {
            return Err(Error::Precision(
                "zeta derivative signs violated: expect zeta'(2) < 0 < zeta''(2)".into(),
            ));
        }
        Ok(ConstantsBank {
            digits,
            bits,
            gamma,
            zeta2_derivs,
            pi,
        })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Working precision in bits; all derived series math inherits it.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// γₙ for n = 0..=4.
    pub fn gamma(&self, n: usize) -> &Real {
        &self.gamma[n]
    }

    /// ζ⁽ʲ⁾(2) for j = 0..=4 (j = 0 is ζ(2) itself).
    pub fn zeta2_deriv(&self, j: usize) -> &Real {
        &self.zeta2_derivs[j]
    }

    pub fn pi(&self) -> &Real {
        &self.pi
    }

    /// Convenience constructor at bank precision.
    pub fn real_from_i64(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits)
    }

    /// Convenience constructor at bank precision.
    pub fn real_from_ratio(&self, num: i64, den: u64) -> Real {
        Real::from_ratio(num, den, self.bits)
    }
}

/// Stieltjes constant γₙ, two-method validated.
pub fn stieltjes(n: usize, digits: usize) -> Result<Real> {
    if n > 4 {
        return Err(Error::Domain(format!("stieltjes: n = {n} exceeds 4")));
    }
    if digits < 15 {
        return Err(Error::Domain("stieltjes: digits must be >= 15".into()));
    }
    let bank = ConstantsBank::build(digits)?;
    Ok(bank.gamma[n].clone())
}

/// ζ⁽ʲ⁾(2) by Euler–Maclaurin.
pub fn zeta_deriv_at_2(j: usize, digits: usize) -> Result<Real> {
    if j > 4 {
        return Err(Error::Domain(format!("zeta_deriv_at_2: j = {j} exceeds 4")));
    }
    if digits < 15 {
        return Err(Error::Domain(
            "zeta_deriv_at_2: digits must be >= 15".into(),
        ));
    }
    Ok(zeta2_derivs_euler_maclaurin(digits).swap_remove(j))
}
