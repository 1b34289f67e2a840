//! Truncated Laurent series arithmetic around `s = 1` and extraction of
//! the degree-4 main-term polynomials.
//!
//! The weighted summatory functions have inverse Mellin representations
//! with integrand `F(s) x^s` where
//!
//! ```text
//! F(s) = zeta^4(s) zeta(2s-1) / (s^w zeta^k(2s)),   k = 1 (s) or 2 (c),
//! ```
//!
//! and `w` is the power of `s` contributed by the summation kernel. `F`
//! has a pole of order 5 at `s = 1`; writing its Laurent coefficients as
//! `c_q`, the residue of `F(s) x^s` is `x Σ_r B_r (log x)^r` with
//! `B_r = c_{-1-r} / r!`. Three routes to the `B_r` are implemented:
//!
//! * `SERIES` — pure series arithmetic from the constants bank (the
//!   reference route);
//! * `CLOSED_FORM` — the explicit closed forms of `B_0..B_4` for the
//!   weighted s-variant, transcribed term by term, as an audit;
//! * `G_DERIV` — the residue assembled from the derivatives of
//!   `g(s,x) = x^s s^{-2} zeta^{-1}(2s)`, again from explicit displays.

use crate::constants::ConstantsBank;
use crate::error::{Error, Result};
use crate::hp::Real;
use crate::Variant;

/// A Laurent series at `s = 1` truncated to a contiguous, fully valid
/// coefficient window `min_pow ..= order()`. Multiplication and inversion
/// shrink the window exactly as far as correctness requires.
#[derive(Debug, Clone)]
pub struct TruncatedLaurent {
    min_pow: i64,
    coeffs: Vec<Real>,
}

impl TruncatedLaurent {
    pub fn new(min_pow: i64, coeffs: Vec<Real>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient window");
        TruncatedLaurent { min_pow, coeffs }
    }

    /// Lowest stored power of `(s - 1)`.
    pub fn min_pow(&self) -> i64 {
        self.min_pow
    }

    /// Order of the pole (0 when the series is regular at 1).
    pub fn pole_order(&self) -> u32 {
        (-self.min_pow).max(0) as u32
    }

    /// Highest power whose coefficient is trustworthy.
    pub fn order(&self) -> i64 {
        self.min_pow + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `(s-1)^pow`; zero below the window, panics above it
    /// because those coefficients were truncated away.
    pub fn coeff(&self, pow: i64) -> Real {
        assert!(
            pow <= self.order(),
            "coefficient of power {pow} beyond truncation order {}",
            self.order()
        );
        if pow < self.min_pow {
            return Real::zero(self.coeffs[0].bits());
        }
        self.coeffs[(pow - self.min_pow) as usize].clone()
    }

    /// Truncates to a smaller order, keeping the window non-empty.
    pub fn truncated(&self, new_order: i64) -> Self {
        assert!(new_order >= self.min_pow && new_order <= self.order());
        TruncatedLaurent {
            min_pow: self.min_pow,
            coeffs: self.coeffs[..=(new_order - self.min_pow) as usize].to_vec(),
        }
    }
}

/// Truncated product; the result window is exactly the set of powers all
/// of whose contributions are inside both operand windows.
pub fn series_mul(a: &TruncatedLaurent, b: &TruncatedLaurent) -> TruncatedLaurent {
    let min = a.min_pow + b.min_pow;
    let order = (a.order() + b.min_pow).min(b.order() + a.min_pow);
    assert!(order >= min, "product window is empty");
    let bits = a.coeffs[0].bits().max(b.coeffs[0].bits());
    let len = (order - min + 1) as usize;
    let mut out = vec![Real::zero(bits); len];
    for (i, ai) in a.coeffs.iter().enumerate() {
        for (j, bj) in b.coeffs.iter().enumerate() {
            if i + j < len {
                out[i + j] = &out[i + j] + ai * bj;
            }
        }
    }
    TruncatedLaurent::new(min, out)
}

/// Truncated reciprocal; requires a nonzero leading coefficient.
pub fn series_inverse(a: &TruncatedLaurent) -> Result<TruncatedLaurent> {
    let lead = &a.coeffs[0];
    if lead.is_zero() {
        return Err(Error::Singularity(
            "series_inverse: leading coefficient is zero".into(),
        ));
    }
    let n = a.coeffs.len();
    let bits = lead.bits();
    // a = lead u^m (1 + t), 1/(1+t) by the standard recursion
    let t: Vec<Real> = a.coeffs.iter().map(|c| c / lead).collect();
    let mut v = vec![Real::zero(bits); n];
    v[0] = Real::from_u64(1, bits);
    for i in 1..n {
        let mut acc = Real::zero(bits);
        for j in 1..=i {
            acc = acc + &t[j] * &v[i - j];
        }
        v[i] = -acc;
    }
    let inv_lead = lead.recip();
    let coeffs: Vec<Real> = v.into_iter().map(|c| c * &inv_lead).collect();
    Ok(TruncatedLaurent::new(-a.min_pow, coeffs))
}

/// `a^k` for `k >= 1` by repeated truncated multiplication.
pub fn series_pow(a: &TruncatedLaurent, k: u32) -> Result<TruncatedLaurent> {
    if k == 0 {
        return Err(Error::Domain("series_pow: exponent must be >= 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = series_mul(&acc, a);
    }
    Ok(acc)
}

/// Laurent expansion of ζ(s) at `s = 1` through order `k_order <= 4`:
/// `1/(s-1) + Σ_j (-1)^j γ_j (s-1)^j / j!`.
pub fn zeta_laurent_at_1(k_order: i64, bank: &ConstantsBank) -> Result<TruncatedLaurent> {
    if k_order > 4 {
        return Err(Error::UnsupportedOrder(format!(
            "zeta_laurent_at_1: order {k_order} needs Stieltjes constants beyond gamma_4"
        )));
    }
    if k_order < -1 {
        return Err(Error::Domain("zeta_laurent_at_1: order below the pole".into()));
    }
    let bits = bank.bits();
    let mut coeffs = vec![Real::from_u64(1, bits)];
    let mut fact = 1u64;
    for j in 0..=k_order.max(0) as usize {
        if k_order < 0 {
            break;
        }
        if j > 0 {
            fact *= j as u64;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs.push(Real::from_i64(sign, bits) * bank.gamma(j) / Real::from_u64(fact, bits));
    }
    Ok(TruncatedLaurent::new(-1, coeffs))
}

/// Laurent expansion of ζ(2s−1) at `s = 1`: substituting `w = 2s − 1`
/// rescales the expansion variable by 2.
pub fn zeta_2s_minus_1_laurent(bank: &ConstantsBank) -> TruncatedLaurent {
    let bits = bank.bits();
    let mut coeffs = vec![Real::from_ratio(1, 2, bits)];
    let mut fact = 1u64;
    let mut two_pow = 1i64;
    for j in 0..=4usize {
        if j > 0 {
            fact *= j as u64;
            two_pow *= 2;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs.push(
            Real::from_i64(sign * two_pow, bits) * bank.gamma(j) / Real::from_u64(fact, bits),
        );
    }
    TruncatedLaurent::new(-1, coeffs)
}

/// Taylor expansion of ζ(2s) at `s = 1`: coefficients `ζ^{(j)}(2) 2^j / j!`.
pub fn zeta_2s_taylor(bank: &ConstantsBank) -> TruncatedLaurent {
    let bits = bank.bits();
    let mut coeffs = Vec::with_capacity(5);
    let mut fact = 1u64;
    let mut two_pow = 1u64;
    for j in 0..=4usize {
        if j > 0 {
            fact *= j as u64;
            two_pow *= 2;
        }
        coeffs.push(bank.zeta2_deriv(j) * Real::from_ratio(two_pow as i64, fact, bits));
    }
    TruncatedLaurent::new(0, coeffs)
}

/// Taylor expansion of `s^{-w}` at `s = 1`:
/// `Σ_j (-1)^j C(w-1+j, j) (s-1)^j`.
pub fn s_power_taylor(w: u32, order: usize, bank: &ConstantsBank) -> TruncatedLaurent {
    let bits = bank.bits();
    let mut coeffs = Vec::with_capacity(order + 1);
    for j in 0..=order as u64 {
        let mut binom = 1i64;
        for i in 0..j {
            binom = binom * (w as i64 + i as i64) / (i as i64 + 1);
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs.push(Real::from_i64(sign * binom, bits));
    }
    TruncatedLaurent::new(0, coeffs)
}

/// Laurent expansion of `f(s) = ζ^4(s) ζ(2s−1)` at `s = 1`, a pole of
/// order 5. The highest reachable order with five Stieltjes constants is
/// the constant term, so `k_order <= 0`.
pub fn f_laurent(bank: &ConstantsBank, k_order: i64) -> Result<TruncatedLaurent> {
    if bank.digits() < 30 {
        return Err(Error::Precision(
            "f_laurent: bank must carry at least 30 digits".into(),
        ));
    }
    if k_order > 0 {
        return Err(Error::UnsupportedOrder(format!(
            "f_laurent: order {k_order} needs Stieltjes constants beyond gamma_4"
        )));
    }
    if k_order < -5 {
        return Err(Error::Domain("f_laurent: order below the pole".into()));
    }
    let z = zeta_laurent_at_1(4, bank)?;
    let z4 = series_pow(&z, 4)?;
    let f = series_mul(&z4, &zeta_2s_minus_1_laurent(bank));
    debug_assert_eq!(f.min_pow(), -5);
    debug_assert_eq!(f.order(), 0);
    Ok(f.truncated(k_order))
}

/// The closed forms of f's principal-part coefficients in terms of the
/// Stieltjes constants, used as anchors for the series route:
/// `a_{-5} .. a_{-1}` followed by the constant term `a_0`.
pub fn f_coefficient_closed_forms(bank: &ConstantsBank) -> [Real; 6] {
    let g0 = bank.gamma(0);
    let g1 = bank.gamma(1);
    let g2 = bank.gamma(2);
    let g3 = bank.gamma(3);
    let g4 = bank.gamma(4);
    let r = |n: i64, d: u64| bank.real_from_ratio(n, d);
    [
        r(1, 2),
        r(3, 1) * g0,
        r(7, 1) * g0.powi(2) - r(4, 1) * g1,
        r(8, 1) * g0.powi(3) - r(18, 1) * g0 * g1 + r(3, 1) * g2,
        r(9, 2) * g0.powi(4) - r(30, 1) * g0.powi(2) * g1
            + r(11, 1) * g1.powi(2)
            + r(13, 1) * g0 * g2
            - r(5, 3) * g3,
        g0.powi(5) - r(22, 1) * g0.powi(3) * g1
            + r(36, 1) * g0 * g1.powi(2)
            + r(21, 1) * g0.powi(2) * g2
            - r(15, 1) * g1 * g2
            - r(7, 1) * g0 * g3
            + r(3, 4) * g4,
    ]
}

/// Which computation produced a [`MainTermPolynomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffRoute {
    Series,
    ClosedForm,
    GDeriv,
}

/// Main-term polynomial: `main(x) = x Σ_{r=0}^{4} B_r (log x)^r`.
#[derive(Debug, Clone)]
pub struct MainTermPolynomial {
    pub variant: Variant,
    pub weight_order: u8,
    pub route: CoeffRoute,
    coeffs: Vec<Real>,
}

impl MainTermPolynomial {
    fn new(variant: Variant, weight_order: u8, route: CoeffRoute, coeffs: Vec<Real>) -> Self {
        assert_eq!(coeffs.len(), 5);
        assert!(!coeffs[4].is_zero(), "main term must have degree exactly 4");
        MainTermPolynomial {
            variant,
            weight_order,
            route,
            coeffs,
        }
    }

    /// `B_r` for `r = 0..=4`.
    pub fn coeff(&self, r: usize) -> &Real {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    /// `x Σ B_r (log x)^r` in f64, for scan-scale evaluation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let lx = x.ln();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * lx + c.to_f64();
        }
        acc * x
    }

    /// `x Σ B_r (log x)^r` at full precision.
    pub fn eval(&self, x: &Real) -> Real {
        let lx = x.ln();
        let mut acc = Real::zero(x.bits());
        for c in self.coeffs.iter().rev() {
            acc = acc * &lx + c;
        }
        acc * x
    }
}

fn variant_zeta_power(variant: Variant) -> u32 {
    match variant {
        Variant::S => 1,
        Variant::C => 2,
    }
}

/// SERIES route: Laurent coefficients of
/// `f(s) s^{-w} zeta^{-k}(2s)` read off as `B_r = c_{-1-r} / r!`.
pub fn main_term_coefficients(
    variant: Variant,
    weight_order: u8,
    bank: &ConstantsBank,
) -> Result<MainTermPolynomial> {
    if !(weight_order == 1 || weight_order == 2) {
        return Err(Error::Domain(format!(
            "main_term_coefficients: weight order {weight_order} not in {{1, 2}}"
        )));
    }
    let f = f_laurent(bank, 0)?;
    let sw = s_power_taylor(weight_order as u32, 4, bank);
    let z2s_inv = series_inverse(&zeta_2s_taylor(bank))?;
    let h = match variant_zeta_power(variant) {
        1 => z2s_inv,
        _ => series_mul(&z2s_inv, &z2s_inv),
    };
    let combo = series_mul(&sw, &h);
    let full = series_mul(&f, &combo);
    debug_assert_eq!(full.order(), -1);
    let bits = bank.bits();
    let mut fact = 1u64;
    let mut coeffs = Vec::with_capacity(5);
    for r in 0..=4i64 {
        if r > 0 {
            fact *= r as u64;
        }
        coeffs.push(full.coeff(-1 - r) / Real::from_u64(fact, bits));
    }
    Ok(MainTermPolynomial::new(
        variant,
        weight_order,
        CoeffRoute::Series,
        coeffs,
    ))
}

/// CLOSED_FORM route for the weighted s-variant: the explicit printed
/// expressions for `B_4 .. B_0`, transcribed verbatim as an audit of the
/// series route.
pub fn closed_form_weighted_s(bank: &ConstantsBank) -> MainTermPolynomial {
    let pi = bank.pi();
    let g0 = bank.gamma(0);
    let g1 = bank.gamma(1);
    let g2 = bank.gamma(2);
    let g3 = bank.gamma(3);
    let z1 = bank.zeta2_deriv(1);
    let z2 = bank.zeta2_deriv(2);
    let z3 = bank.zeta2_deriv(3);
    let z4 = bank.zeta2_deriv(4);
    let r = |n: i64, d: u64| bank.real_from_ratio(n, d);
    let ip = |k: i64| pi.powi(k).recip();

    let b4 = r(1, 8) * ip(2);

    let b3 = (r(3, 1) * g0 - r(1, 1)) * ip(2) - r(6, 1) * ip(4) * z1;

    let b2 = -(r(18, 1)) * ip(4) * z2
        + r(216, 1) * ip(6) * z1.powi(2)
        + r(36, 1) * ip(4) * (r(-3, 1) * g0 + r(1, 1)) * z1
        + r(3, 2) * ip(2)
            * (r(3, 1) + r(14, 1) * g0.powi(2) - r(12, 1) * g0 - r(8, 1) * g1);

    let b1 = -(r(5184, 1)) * ip(8) * z1.powi(3)
        + r(864, 1) * ip(6) * z1 * (-z1 + r(3, 1) * g0 * z1 + z2)
        - r(12, 1) * ip(4)
            * (r(42, 1) * g0.powi(2) * z1 + z1 * (r(9, 1) - r(24, 1) * g1) - r(6, 1) * z2
                + r(18, 1) * g0 * (r(-2, 1) * z1 + z2)
                + r(2, 1) * z3)
        + r(6, 1) * ip(2)
            * (r(8, 1) * g0.powi(3) - r(14, 1) * g0.powi(2) + r(9, 1) * g0
                - r(18, 1) * g0 * g1
                + r(8, 1) * g1
                + r(3, 1) * g2
                - r(2, 1));

    let b0 = ip(2)
        * (r(15, 1) - r(96, 1) * g0.powi(3) + r(27, 1) * g0.powi(4) - r(72, 1) * g1
            + r(66, 1) * g1.powi(2)
            - r(18, 1) * g0.powi(2) * (r(-7, 1) + r(10, 1) * g1)
            - r(36, 1) * g2)
        + ip(2) * (r(6, 1) * g0 * (r(-12, 1) + r(36, 1) * g1 + r(13, 1) * g2) - r(10, 1) * g3)
        - r(5184, 1) * ip(8) * z1.powi(2) * (r(-2, 1) * z1 + r(6, 1) * g0 * z1 + r(3, 1) * z2)
        - r(12, 1) * ip(4)
            * (r(48, 1) * g0.powi(3) * z1
                + r(6, 1) * (r(-2, 1) + r(8, 1) * g1 + r(3, 1) * g2) * z1
                + r(9, 1) * z2
                - r(24, 1) * g1 * z2
                + r(42, 1) * g0.powi(2) * (r(-2, 1) * z1 + z2))
        + r(12, 1) * ip(4)
            * (r(6, 1) * g0 * (r(9, 1) * (r(-1, 1) + r(2, 1) * g1) * z1 + r(6, 1) * z2 - r(2, 1) * z3)
                + r(4, 1) * z3
                - z4.clone())
        + r(144, 1) * ip(6)
            * (r(42, 1) * g0.powi(2) * z1.powi(2) + (r(9, 1) - r(24, 1) * g1) * z1.powi(2)
                - r(36, 1) * g0 * z1 * (z1 - z2)
                + r(3, 1) * z2.powi(2))
        + r(144, 1) * ip(6) * (r(4, 1) * z1 * (r(-3, 1) * z2 + z3))
        + r(62208, 1) * ip(10) * z1.powi(4);

    MainTermPolynomial::new(
        Variant::S,
        2,
        CoeffRoute::ClosedForm,
        vec![b0, b1, b2, b3, b4],
    )
}

/// The printed displays for `g^{(i)}(1, x) / x` as polynomials in
/// `L = log x`, index `i = 0..=4`, coefficient vectors by power of `L`.
pub fn g_derivative_polys(bank: &ConstantsBank) -> [Vec<Real>; 5] {
    let pi = bank.pi();
    let z1 = bank.zeta2_deriv(1);
    let z2 = bank.zeta2_deriv(2);
    let z3 = bank.zeta2_deriv(3);
    let z4 = bank.zeta2_deriv(4);
    let r = |n: i64, d: u64| bank.real_from_ratio(n, d);
    let ip = |k: i64| pi.powi(k).recip();
    let pi2 = pi.powi(2);
    let pi4 = pi.powi(4);
    let pi6 = pi.powi(6);
    let pi8 = pi.powi(8);

    let lead = r(6, 1) * ip(2);

    let g0 = vec![lead.clone()];

    let g1 = vec![-(r(12, 1)) * ip(4) * (r(6, 1) * z1 + &pi2), lead.clone()];

    // shared inner blocks of the quadratic displays
    let quad = r(48, 1) * z1.powi(2) + r(4, 1) * &pi2 * (r(2, 1) * z1 - z2) + &pi4;
    let g2 = vec![
        r(36, 1) * ip(6) * &quad,
        -(r(24, 1)) * ip(4) * (r(6, 1) * z1 + &pi2),
        lead.clone(),
    ];

    let cubic = r(432, 1) * z1.powi(3) + r(72, 1) * &pi2 * z1 * (z1 - z2) + &pi6;
    let g3 = vec![
        -(r(144, 1)) * ip(8) * &cubic
            - r(144, 1) * ip(4) * (r(9, 1) * z1 - r(6, 1) * z2 + r(2, 1) * z3),
        r(108, 1) * ip(6) * &quad,
        -(r(36, 1)) * ip(4) * (r(6, 1) * z1 + &pi2),
        lead.clone(),
    ];

    let g4 = vec![
        r(144, 1) * ip(10)
            * (r(20736, 1) * z1.powi(4)
                + r(1728, 1) * &pi2 * z1.powi(2) * (r(2, 1) * z1 - r(3, 1) * z2)
                + r(5, 1) * &pi8)
            + r(6912, 1) * ip(6)
                * (r(3, 1) * z2.powi(2) + r(9, 1) * z1.powi(2)
                    - r(4, 1) * z1 * (r(3, 1) * z2 - z3))
            + r(576, 1) * ip(4)
                * (-z4.clone() + r(4, 1) * z3 - r(9, 1) * z2 + r(12, 1) * z1),
        r(576, 1) * ip(8)
            * (r(-432, 1) * z1.powi(3) + r(72, 1) * &pi2 * z1 * z2
                - r(72, 1) * &pi2 * z1.powi(2)
                - &pi6)
            + r(576, 1) * ip(4) * (r(-2, 1) * z3 - r(9, 1) * z1 + r(6, 1) * z2),
        r(216, 1) * ip(6)
            * (r(-4, 1) * &pi2 * z2 + r(48, 1) * z1.powi(2) + r(8, 1) * &pi2 * z1 + &pi4),
        -(r(48, 1)) * ip(4) * (&pi2 + r(6, 1) * z1),
        lead,
    ];

    [g0, g1, g2, g3, g4]
}

/// Taylor coefficients `t_i = g^{(i)}(1,x) / (i! x)` by series arithmetic:
/// `g/x = e^{L u} (1+u)^{-2} zeta^{-1}(2s)` with numeric `L = log x`.
fn g_taylor_series(ln_x: &Real, bank: &ConstantsBank) -> Result<Vec<Real>> {
    let bits = bank.bits();
    // e^{L u} through u^4
    let mut exp_coeffs = Vec::with_capacity(5);
    let mut fact = 1u64;
    for i in 0..=4usize {
        if i > 0 {
            fact *= i as u64;
        }
        exp_coeffs.push(ln_x.powi(i as i64) / Real::from_u64(fact, bits));
    }
    let exp_series = TruncatedLaurent::new(0, exp_coeffs);
    let s_m2 = s_power_taylor(2, 4, bank);
    let z_inv = series_inverse(&zeta_2s_taylor(bank))?;
    let t = series_mul(&series_mul(&exp_series, &s_m2), &z_inv);
    Ok((0..=4).map(|i| t.coeff(i)).collect())
}

/// Values `g^{(i)}(1, x)` for `i = 0..=4` at `x > 1`.
///
/// Evaluates the explicit displays and independently recomputes each value
/// by series arithmetic; the two must agree to 1e-12 relative.
pub fn g_derivatives(x: &Real, bank: &ConstantsBank) -> Result<[Real; 5]> {
    if !(x > &Real::from_u64(1, x.bits())) {
        return Err(Error::Domain("g_derivatives: x must be > 1".into()));
    }
    let ln_x = x.ln();
    let polys = g_derivative_polys(bank);
    let series_t = g_taylor_series(&ln_x, bank)?;
    let bits = bank.bits();
    let tol = Real::from_f64(1e-12, bits);
    let mut out = Vec::with_capacity(5);
    let mut fact = 1u64;
    for i in 0..=4usize {
        if i > 0 {
            fact *= i as u64;
        }
        let mut printed = Real::zero(bits);
        for c in polys[i].iter().rev() {
            printed = printed * &ln_x + c;
        }
        printed = printed * x;
        let series = &series_t[i] * Real::from_u64(fact, bits) * x;
        let rel = ((&printed - &series) / &series).abs();
        if !(rel < tol) {
            return Err(Error::Precision(format!(
                "g^({i})(1,x): display and series routes disagree (rel {})",
                rel.to_decimal(3)
            )));
        }
        out.push(printed);
    }
    Ok(out.try_into().expect("five derivatives"))
}

/// G_DERIV route for the weighted s-variant: residue assembled as
/// `Σ_{k=1}^{5} a_{-k} g^{(k-1)}(1,x) / (k-1)!` with both factor families
/// taken from their printed closed forms, collected as a polynomial in
/// `log x`.
pub fn main_term_via_g(bank: &ConstantsBank) -> MainTermPolynomial {
    let a = f_coefficient_closed_forms(bank);
    let polys = g_derivative_polys(bank);
    let bits = bank.bits();
    let mut coeffs = vec![Real::zero(bits); 5];
    let mut fact = 1u64;
    for k in 1..=5usize {
        // term a_{-k} g^{(k-1)} / (k-1)!
        if k > 1 {
            fact *= (k - 1) as u64;
        }
        let scale = &a[5 - k] / Real::from_u64(fact, bits);
        for (r, c) in polys[k - 1].iter().enumerate() {
            coeffs[r] = &coeffs[r] + &scale * c;
        }
    }
    MainTermPolynomial::new(Variant::S, 2, CoeffRoute::GDeriv, coeffs)
}

/// Residue of `f(s) g(s, x)` at `s = 1` via the g-derivative combination.
/// Must match the weighted s-variant main term.
pub fn residue_via_g(x: &Real, bank: &ConstantsBank) -> Result<Real> {
    let g = g_derivatives(x, bank)?;
    let a = f_coefficient_closed_forms(bank);
    let bits = bank.bits();
    let mut acc = Real::zero(bits);
    let mut fact = 1u64;
    for k in 1..=5usize {
        if k > 1 {
            fact *= (k - 1) as u64;
        }
        acc = acc + &a[5 - k] * &g[k - 1] / Real::from_u64(fact, bits);
    }
    Ok(acc)
}

/// Relative gap `|a - b| / |b|` as f64, for route comparisons.
pub fn relative_gap(a: &Real, b: &Real) -> f64 {
    if b.is_zero() {
        return if a.is_zero() { 0.0 } else { f64::INFINITY };
    }
    ((a - b) / b).abs().to_f64()
}
