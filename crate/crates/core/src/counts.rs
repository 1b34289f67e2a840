//! Subgroup counts of the direct product `Z_m x Z_n`.
//!
//! `s(m, n)` is the total number of subgroups, `c(m, n)` the number of
//! cyclic subgroups. Each count has several equivalent divisor-sum
//! expressions, all implemented here as separate code paths so they can
//! cross-check each other:
//!
//! ```text
//! s(m,n) = sum_{a|m, b|n} gcd(a,b)                          (F1)
//!        = sum_{d|gcd(m,n)} phi(d) tau(m/d) tau(n/d)        (F2)
//!        = sum_{d|gcd(m,n)} d tau(mn/d^2)                   (F3)
//!
//! c(m,n) = sum_{a|m, b|n, gcd(m/a,n/b)=1} gcd(a,b)          (C1)
//!        = sum_{a|m, b|n} phi(gcd(a,b))                     (C2)
//!        = sum_{d|gcd(m,n)} (mu*phi)(d) tau(m/d) tau(n/d)   (C3)
//!        = sum_{d|gcd(m,n)} phi(d) tau(mn/d^2)              (C4)
//! ```
//!
//! An exhaustive enumeration oracle independent of every formula is
//! provided by [`enumerate_subgroups`]: it lists the cyclic subgroup
//! generated by each element and closes every pair of generators under
//! the group operation.

use std::collections::HashSet;

use crate::arith::{gcd_unchecked, ArithTables};
use crate::error::{Error, Result};

/// Closed formulas for the total subgroup count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SFormula {
    F1,
    F2,
    F3,
}

/// Closed formulas for the cyclic subgroup count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CFormula {
    C1,
    C2,
    C3,
    C4,
}

/// How a [`GroupCountRecord`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountSource {
    Formula(SFormula, CFormula),
    Oracle,
}

/// A counted pair: `(m, n)` with both subgroup counts and the method tag.
#[derive(Debug, Clone, Copy)]
pub struct GroupCountRecord {
    pub m: u64,
    pub n: u64,
    pub s_count: u64,
    pub c_count: u64,
    pub source: CountSource,
}

/// Elements of the enumeration oracle's default cap: `m * n` at most this.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000;

fn check_positive(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("group orders must be >= 1".into()));
    }
    Ok(())
}

fn add(acc: u64, v: u64) -> Result<u64> {
    acc.checked_add(v)
        .ok_or_else(|| Error::Overflow("subgroup count exceeds 64 bits".into()))
}

fn mul3(a: u64, b: u64, c: u64) -> Result<u64> {
    a.checked_mul(b)
        .and_then(|ab| ab.checked_mul(c))
        .ok_or_else(|| Error::Overflow("subgroup count term exceeds 64 bits".into()))
}

/// Total number of subgroups of `Z_m x Z_n` by the chosen formula.
pub fn s_count(m: u64, n: u64, formula: SFormula, tables: &ArithTables) -> Result<u64> {
    check_positive(m, n)?;
    match formula {
        SFormula::F1 => {
            let da = tables.divisors(m)?;
            let db = tables.divisors(n)?;
            let mut acc = 0u64;
            for &a in &da {
                for &b in &db {
                    acc = add(acc, gcd_unchecked(a, b))?;
                }
            }
            Ok(acc)
        }
        SFormula::F2 => {
            let g = gcd_unchecked(m, n);
            let mut acc = 0u64;
            for d in tables.divisors(g)? {
                let term = mul3(
                    tables.phi_point(d)?,
                    tables.tau_point(m / d)?,
                    tables.tau_point(n / d)?,
                )?;
                acc = add(acc, term)?;
            }
            Ok(acc)
        }
        SFormula::F3 => {
            let g = gcd_unchecked(m, n);
            let mut acc = 0u64;
            for d in tables.divisors(g)? {
                let q = (m / d)
                    .checked_mul(n / d)
                    .ok_or_else(|| Error::Overflow("mn/d^2 exceeds 64 bits".into()))?;
                let term = d
                    .checked_mul(tables.tau_point(q)?)
                    .ok_or_else(|| Error::Overflow("subgroup count term exceeds 64 bits".into()))?;
                acc = add(acc, term)?;
            }
            Ok(acc)
        }
    }
}

/// Number of cyclic subgroups of `Z_m x Z_n` by the chosen formula.
pub fn c_count(m: u64, n: u64, formula: CFormula, tables: &ArithTables) -> Result<u64> {
    check_positive(m, n)?;
    match formula {
        CFormula::C1 => {
            let da = tables.divisors(m)?;
            let db = tables.divisors(n)?;
            let mut acc = 0u64;
            for &a in &da {
                for &b in &db {
                    if gcd_unchecked(m / a, n / b) == 1 {
                        acc = add(acc, gcd_unchecked(a, b))?;
                    }
                }
            }
            Ok(acc)
        }
        CFormula::C2 => {
            let da = tables.divisors(m)?;
            let db = tables.divisors(n)?;
            let mut acc = 0u64;
            for &a in &da {
                for &b in &db {
                    acc = add(acc, tables.phi_point(gcd_unchecked(a, b))?)?;
                }
            }
            Ok(acc)
        }
        CFormula::C3 => {
            let g = gcd_unchecked(m, n);
            let mut acc = 0i64;
            for d in tables.divisors(g)? {
                let conv = mu_phi_convolution(d, tables)?;
                let tt = tables
                    .tau_point(m / d)?
                    .checked_mul(tables.tau_point(n / d)?)
                    .ok_or_else(|| Error::Overflow("tau product exceeds 64 bits".into()))?;
                let term = conv
                    .checked_mul(tt as i64)
                    .ok_or_else(|| Error::Overflow("subgroup count term exceeds 64 bits".into()))?;
                acc = acc
                    .checked_add(term)
                    .ok_or_else(|| Error::Overflow("subgroup count exceeds 64 bits".into()))?;
            }
            debug_assert!(acc >= 0);
            Ok(acc as u64)
        }
        CFormula::C4 => {
            let g = gcd_unchecked(m, n);
            let mut acc = 0u64;
            for d in tables.divisors(g)? {
                let q = (m / d)
                    .checked_mul(n / d)
                    .ok_or_else(|| Error::Overflow("mn/d^2 exceeds 64 bits".into()))?;
                let term = tables
                    .phi_point(d)?
                    .checked_mul(tables.tau_point(q)?)
                    .ok_or_else(|| Error::Overflow("subgroup count term exceeds 64 bits".into()))?;
                acc = add(acc, term)?;
            }
            Ok(acc)
        }
    }
}

/// `(mu * phi)(d)` by direct divisor convolution, kept free of any closed
/// form so the C3 route stays independent.
fn mu_phi_convolution(d: u64, tables: &ArithTables) -> Result<i64> {
    let mut acc = 0i64;
    for e in tables.divisors(d)? {
        acc += tables.mu_point(e)? * tables.phi_point(d / e)? as i64;
    }
    Ok(acc)
}

/// Builds a record with both counts from the given formula pair.
pub fn count_record(
    m: u64,
    n: u64,
    sf: SFormula,
    cf: CFormula,
    tables: &ArithTables,
) -> Result<GroupCountRecord> {
    let s = s_count(m, n, sf, tables)?;
    let c = c_count(m, n, cf, tables)?;
    debug_assert!(c >= 1 && c <= s);
    Ok(GroupCountRecord {
        m,
        n,
        s_count: s,
        c_count: c,
        source: CountSource::Formula(sf, cf),
    })
}

/// Fixed-width bitset over the `m * n` element codes `a * n + b`.
struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    fn new(order: usize) -> Self {
        ElementSet {
            words: vec![0u64; order.div_ceil(64)],
        }
    }
    #[inline]
    fn insert(&mut self, idx: usize) -> bool {
        let w = idx / 64;
        let bit = 1u64 << (idx % 64);
        let present = self.words[w] & bit != 0;
        self.words[w] |= bit;
        !present
    }
    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

/// Exhaustive subgroup enumeration of `Z_m x Z_n` with the default cap on
/// `m * n`. Returns `(total, cyclic)`.
pub fn enumerate_subgroups(m: u64, n: u64) -> Result<(u64, u64)> {
    enumerate_subgroups_with_cap(m, n, DEFAULT_ORACLE_CAP)
}

/// Exhaustive subgroup enumeration with a caller-chosen cap.
///
/// Every subgroup of a rank-two abelian group is generated by at most two
/// elements. The oracle first forms the cyclic subgroup of every element
/// (canonicalized as its element set encoded `a * n + b`, deduplicated),
/// then closes every pair of generators under repeated addition and
/// deduplicates the closures. No divisor identity is consulted anywhere.
pub fn enumerate_subgroups_with_cap(m: u64, n: u64, cap: u64) -> Result<(u64, u64)> {
    check_positive(m, n)?;
    let order = m
        .checked_mul(n)
        .ok_or_else(|| Error::Overflow("group order exceeds 64 bits".into()))?;
    if order > cap {
        return Err(Error::Size(format!(
            "enumerate_subgroups: m*n = {order} exceeds cap {cap}"
        )));
    }
    let (m, n, order) = (m as usize, n as usize, order as usize);

    // pre-decoded step tables: adding element g to element u
    let code = |a: usize, b: usize| a * n + b;
    let step = |u: usize, ga: usize, gb: usize| {
        let (ua, ub) = (u / n, u % n);
        let mut a = ua + ga;
        if a >= m {
            a -= m;
        }
        let mut b = ub + gb;
        if b >= n {
            b -= n;
        }
        code(a, b)
    };

    // cyclic subgroups: one representative generator per distinct set
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut set = ElementSet::new(order);
    for g in 0..order {
        let (ga, gb) = (g / n, g % n);
        set.clear();
        let mut u = 0usize;
        loop {
            set.insert(u);
            u = step(u, ga, gb);
            if u == 0 {
                break;
            }
        }
        if seen.insert(set.words.clone()) {
            reps.push((ga, gb));
        }
    }
    let cyclic = seen.len() as u64;

    // two-generator closures over representative pairs
    let mut subgroups: HashSet<Vec<u64>> = seen;
    let mut stack: Vec<usize> = Vec::with_capacity(order);
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let (ga, gb) = reps[i];
            let (ha, hb) = reps[j];
            set.clear();
            stack.clear();
            set.insert(0);
            stack.push(0);
            while let Some(u) = stack.pop() {
                let v = step(u, ga, gb);
                if set.insert(v) {
                    stack.push(v);
                }
                let w = step(u, ha, hb);
                if set.insert(w) {
                    stack.push(w);
                }
            }
            subgroups.insert(set.words.clone());
        }
    }
    Ok((subgroups.len() as u64, cyclic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tables;
    use proptest::prelude::*;

    fn tables() -> &'static ArithTables {
        use std::sync::OnceLock;
        static T: OnceLock<ArithTables> = OnceLock::new();
        T.get_or_init(|| build_tables(300_000).unwrap())
    }

    const S_FORMULAS: [SFormula; 3] = [SFormula::F1, SFormula::F2, SFormula::F3];
    const C_FORMULAS: [CFormula; 4] = [CFormula::C1, CFormula::C2, CFormula::C3, CFormula::C4];

    #[test]
    fn trivial_group() {
        let t = tables();
        for f in S_FORMULAS {
            assert_eq!(s_count(1, 1, f, t).unwrap(), 1);
        }
        for f in C_FORMULAS {
            assert_eq!(c_count(1, 1, f, t).unwrap(), 1);
        }
        assert_eq!(enumerate_subgroups(1, 1).unwrap(), (1, 1));
    }

    #[test]
    fn spec_point_values() {
        let t = tables();
        assert_eq!(s_count(2, 2, SFormula::F3, t).unwrap(), 5);
        assert_eq!(s_count(4, 6, SFormula::F2, t).unwrap(), 16);
        assert_eq!(c_count(2, 2, CFormula::C4, t).unwrap(), 4);
        assert_eq!(c_count(4, 6, CFormula::C4, t).unwrap(), 12);
    }

    #[test]
    fn oracle_small_groups() {
        assert_eq!(enumerate_subgroups(3, 3).unwrap(), (6, 5));
        assert_eq!(enumerate_subgroups(4, 6).unwrap(), (16, 12));
        assert_eq!(enumerate_subgroups(2, 2).unwrap(), (5, 4));
        // Z_12 alone: one subgroup per divisor, all cyclic
        assert_eq!(enumerate_subgroups(12, 1).unwrap(), (6, 6));
    }

    #[test]
    fn formulas_agree_small_grid() {
        let t = tables();
        for m in 1..=100u64 {
            for n in 1..=100u64 {
                let s0 = s_count(m, n, SFormula::F1, t).unwrap();
                for f in [SFormula::F2, SFormula::F3] {
                    assert_eq!(s_count(m, n, f, t).unwrap(), s0, "s({m},{n}) via {f:?}");
                }
                let c0 = c_count(m, n, CFormula::C1, t).unwrap();
                for f in [CFormula::C2, CFormula::C3, CFormula::C4] {
                    assert_eq!(c_count(m, n, f, t).unwrap(), c0, "c({m},{n}) via {f:?}");
                }
                assert!(c0 >= 1 && c0 <= s0);
            }
        }
    }

    #[test]
    fn oracle_agrees_with_formulas_small() {
        let t = tables();
        for m in 1..=20u64 {
            for n in 1..=20u64 {
                let (total, cyclic) = enumerate_subgroups(m, n).unwrap();
                assert_eq!(total, s_count(m, n, SFormula::F3, t).unwrap(), "s({m},{n})");
                assert_eq!(cyclic, c_count(m, n, CFormula::C4, t).unwrap(), "c({m},{n})");
            }
        }
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(
            enumerate_subgroups_with_cap(101, 101, 10_000),
            Err(Error::Size(_))
        ));
        assert!(enumerate_subgroups_with_cap(101, 99, 10_000).is_ok());
    }

    #[test]
    fn domain_errors() {
        let t = tables();
        assert!(matches!(
            s_count(0, 3, SFormula::F1, t),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            c_count(3, 0, CFormula::C2, t),
            Err(Error::Domain(_))
        ));
        assert!(matches!(enumerate_subgroups(0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn record_construction() {
        let t = tables();
        let r = count_record(4, 6, SFormula::F1, CFormula::C1, t).unwrap();
        assert_eq!((r.s_count, r.c_count), (16, 12));
        assert_eq!(r.source, CountSource::Formula(SFormula::F1, CFormula::C1));
    }

    proptest! {
        #[test]
        fn symmetry(m in 1u64..300, n in 1u64..300) {
            let t = tables();
            prop_assert_eq!(
                s_count(m, n, SFormula::F2, t).unwrap(),
                s_count(n, m, SFormula::F2, t).unwrap()
            );
            prop_assert_eq!(
                c_count(m, n, CFormula::C4, t).unwrap(),
                c_count(n, m, CFormula::C4, t).unwrap()
            );
        }

        #[test]
        fn coprime_collapse(m in 1u64..300, n in 1u64..300) {
            let t = tables();
            if gcd_unchecked(m, n) == 1 {
                let tt = t.tau(m) * t.tau(n);
                prop_assert_eq!(s_count(m, n, SFormula::F1, t).unwrap(), tt);
                prop_assert_eq!(c_count(m, n, CFormula::C2, t).unwrap(), tt);
            }
        }

        #[test]
        fn cyclic_at_most_total(m in 1u64..200, n in 1u64..200) {
            let t = tables();
            let s = s_count(m, n, SFormula::F3, t).unwrap();
            let c = c_count(m, n, CFormula::C4, t).unwrap();
            prop_assert!(1 <= c && c <= s);
        }

        #[test]
        fn pairwise_multiplicative(m1 in 1u64..40, n1 in 1u64..40, m2 in 1u64..40, n2 in 1u64..40) {
            let t = tables();
            let (p1, p2) = (m1 * n1, m2 * n2);
            if gcd_unchecked(p1, p2) == 1 {
                let s12 = s_count(m1 * m2, n1 * n2, SFormula::F2, t).unwrap();
                let s1 = s_count(m1, n1, SFormula::F2, t).unwrap();
                let s2 = s_count(m2, n2, SFormula::F2, t).unwrap();
                prop_assert_eq!(s12, s1 * s2);
                let c12 = c_count(m1 * m2, n1 * n2, CFormula::C4, t).unwrap();
                let c1 = c_count(m1, n1, CFormula::C4, t).unwrap();
                let c2 = c_count(m2, n2, CFormula::C4, t).unwrap();
                prop_assert_eq!(c12, c1 * c2);
            }
        }
    }
}
