//! Modular-integer arithmetic, factorization and CRT decomposition.
//!
//! Everything downstream (quaternions, matrices, graphs) reduces questions
//! about `Z_n` to its prime-power components through [`RingSpec`].

use crate::error::{Error, Result};
use serde::Serialize;

/// One prime-power factor `p^alpha` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub prime: u64,
    pub exponent: u32,
}

impl Factor {
    /// `p^alpha` as a plain integer.
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// A modulus `n >= 2` together with its prime-power factorization.
///
/// Factors are stored in strictly increasing prime order and the product of
/// `p_i^{alpha_i}` is checked to reproduce `n` at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    n: u64,
    factors: Vec<Factor>,
}

impl RingSpec {
    /// Factorizes `n` by trial division. Rejects `n < 2` and `n > 65535`
    /// (element codes pack four base-`n` digits into a `u64`, so `n^4`
    /// must fit).
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 || n > 65535 {
            return Err(Error::InvalidModulus { n });
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut exponent = 0u32;
                while rest % p == 0 {
                    rest /= p;
                    exponent += 1;
                }
                factors.push(Factor { prime: p, exponent });
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push(Factor {
                prime: rest,
                exponent: 1,
            });
        }
        let spec = RingSpec { n, factors };
        debug_assert!(spec.check_invariants());
        Ok(spec)
    }

    fn check_invariants(&self) -> bool {
        let product: u128 = self
            .factors
            .iter()
            .map(|f| f.modulus() as u128)
            .product();
        product == self.n as u128
            && self.factors.windows(2).all(|w| w[0].prime < w[1].prime)
            && self.factors.iter().all(|f| is_prime(f.prime))
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Exponent of 2 in `n` (0 when `n` is odd).
    pub fn two_part(&self) -> u32 {
        self.factors
            .first()
            .filter(|f| f.prime == 2)
            .map(|f| f.exponent)
            .unwrap_or(0)
    }

    /// Factors of the odd part of `n`.
    pub fn odd_factors(&self) -> &[Factor] {
        if self.two_part() > 0 {
            &self.factors[1..]
        } else {
            &self.factors
        }
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `n = 2^t` exactly.
    pub fn is_power_of_two(&self) -> bool {
        self.is_prime_power() && self.factors[0].prime == 2
    }

    /// Moduli `p_i^{alpha_i}` of the CRT components, in factor order.
    pub fn component_moduli(&self) -> Vec<u64> {
        self.factors.iter().map(Factor::modulus).collect()
    }
}

/// Deterministic trial-division primality check; moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + n as u128 - b as u128 % n as u128) % n as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Modular inverse by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    if t < 0 {
        t += n as i128;
    }
    Some(t as u64)
}

/// An element of `Z_n`, always stored fully reduced.
///
/// A residue carries its modulus; mixing moduli is reported as
/// [`Error::ModulusMismatch`], never silently coerced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus { n: modulus });
        }
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn same_modulus(self, rhs: Residue) -> Result<u64> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            });
        }
        Ok(self.modulus)
    }

    pub fn add(self, rhs: Residue) -> Result<Residue> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue {
            value: add_mod(self.value, rhs.value, n),
            modulus: n,
        })
    }

    pub fn sub(self, rhs: Residue) -> Result<Residue> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue {
            value: sub_mod(self.value, rhs.value, n),
            modulus: n,
        })
    }

    pub fn mul(self, rhs: Residue) -> Result<Residue> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue {
            value: mul_mod(self.value, rhs.value, n),
            modulus: n,
        })
    }

    pub fn neg(self) -> Residue {
        Residue {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    /// Multiplicative inverse; a non-unit reports the offending gcd.
    pub fn inv(self) -> Result<Residue> {
        match inv_mod(self.value, self.modulus) {
            Some(value) => Ok(Residue {
                value,
                modulus: self.modulus,
            }),
            None => Err(Error::NotAUnit {
                value: self.value,
                modulus: self.modulus,
                gcd: gcd(self.value, self.modulus),
            }),
        }
    }
}

/// Projects `x mod n` onto the prime-power components of `spec`.
pub fn crt_split(x: Residue, spec: &RingSpec) -> Result<Vec<Residue>> {
    if x.modulus() != spec.modulus() {
        return Err(Error::ModulusMismatch {
            left: x.modulus(),
            right: spec.modulus(),
        });
    }
    Ok(spec
        .factors()
        .iter()
        .map(|f| {
            let m = f.modulus();
            Residue {
                value: x.value() % m,
                modulus: m,
            }
        })
        .collect())
}

/// Reassembles a residue mod `n` from one part per prime-power factor.
///
/// Inverse of [`crt_split`]; part count and moduli are validated.
pub fn crt_join(parts: &[Residue], spec: &RingSpec) -> Result<Residue> {
    let factors = spec.factors();
    if parts.len() != factors.len() {
        return Err(Error::CrtArity {
            expected: factors.len(),
            got: parts.len(),
        });
    }
    let n = spec.modulus();
    let mut acc: u128 = 0;
    for (index, (part, factor)) in parts.iter().zip(factors).enumerate() {
        let m = factor.modulus();
        if part.modulus() != m {
            return Err(Error::CrtModulus {
                index,
                expected: m,
                got: part.modulus(),
            });
        }
        let others = n / m;
        let inv = inv_mod(others % m, m).ok_or_else(|| {
            Error::Internal(format!("CRT cofactor {others} not invertible mod {m}"))
        })?;
        // part * others * (others^{-1} mod m), accumulated mod n
        let term = mul_mod(mul_mod(part.value(), others % n, n), inv % n, n);
        acc = (acc + term as u128) % n as u128;
    }
    Ok(Residue {
        value: acc as u64,
        modulus: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor_list(spec: &RingSpec) -> Vec<(u64, u32)> {
        spec.factors()
            .iter()
            .map(|f| (f.prime, f.exponent))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(
            factor_list(&RingSpec::new(12).unwrap()),
            vec![(2, 2), (3, 1)]
        );
        assert_eq!(factor_list(&RingSpec::new(7).unwrap()), vec![(7, 1)]);
        assert_eq!(
            factor_list(&RingSpec::new(360).unwrap()),
            vec![(2, 3), (3, 2), (5, 1)]
        );
    }

    #[test]
    fn factorize_rejects_trivial_ring() {
        assert_eq!(RingSpec::new(0), Err(Error::InvalidModulus { n: 0 }));
        assert_eq!(RingSpec::new(1), Err(Error::InvalidModulus { n: 1 }));
    }

    #[test]
    fn two_part_and_odd_factors() {
        let spec = RingSpec::new(24).unwrap();
        assert_eq!(spec.two_part(), 3);
        assert_eq!(spec.odd_factors().len(), 1);
        assert_eq!(spec.odd_factors()[0].prime, 3);
        let odd = RingSpec::new(45).unwrap();
        assert_eq!(odd.two_part(), 0);
        assert_eq!(odd.odd_factors().len(), 2);
        assert!(RingSpec::new(8).unwrap().is_power_of_two());
        assert!(!RingSpec::new(12).unwrap().is_prime_power());
    }

    #[test]
    fn residue_op_examples() {
        let r = |v, m| Residue::new(v, m).unwrap();
        assert_eq!(r(3, 7).inv().unwrap(), r(5, 7));
        assert_eq!(r(6, 7).add(r(5, 7)).unwrap(), r(4, 7));
        assert_eq!(
            r(2, 4).inv(),
            Err(Error::NotAUnit {
                value: 2,
                modulus: 4,
                gcd: 2
            })
        );
    }

    #[test]
    fn residue_rejects_mixed_moduli() {
        let a = Residue::new(1, 6).unwrap();
        let b = Residue::new(1, 10).unwrap();
        assert_eq!(
            a.add(b),
            Err(Error::ModulusMismatch { left: 6, right: 10 })
        );
        assert!(a.mul(b).is_err());
        assert!(a.sub(b).is_err());
    }

    #[test]
    fn crt_examples() {
        let spec = RingSpec::new(12).unwrap();
        let x = Residue::new(7, 12).unwrap();
        let parts = crt_split(x, &spec).unwrap();
        assert_eq!(
            parts,
            vec![Residue::new(3, 4).unwrap(), Residue::new(1, 3).unwrap()]
        );
        assert_eq!(crt_join(&parts, &spec).unwrap(), x);
        let zero = Residue::new(0, 12).unwrap();
        assert!(crt_split(zero, &spec)
            .unwrap()
            .iter()
            .all(|p| p.value() == 0));
    }

    #[test]
    fn crt_join_validates_parts() {
        let spec = RingSpec::new(12).unwrap();
        let one_part = [Residue::new(1, 4).unwrap()];
        assert_eq!(
            crt_join(&one_part, &spec),
            Err(Error::CrtArity {
                expected: 2,
                got: 1
            })
        );
        let wrong_mod = [Residue::new(1, 4).unwrap(), Residue::new(1, 5).unwrap()];
        assert_eq!(
            crt_join(&wrong_mod, &spec),
            Err(Error::CrtModulus {
                index: 1,
                expected: 3,
                got: 5
            })
        );
    }

    #[test]
    fn crt_roundtrip_exhaustive_small() {
        for n in 2..=600u64 {
            let spec = RingSpec::new(n).unwrap();
            for x in 0..n {
                let r = Residue::new(x, n).unwrap();
                let joined = crt_join(&crt_split(r, &spec).unwrap(), &spec).unwrap();
                assert_eq!(joined, r, "roundtrip failed for {x} mod {n}");
            }
        }
    }

    #[test]
    fn crt_split_is_multiplicative_exhaustive() {
        for n in 2..=60u64 {
            let spec = RingSpec::new(n).unwrap();
            for x in 0..n {
                for y in 0..n {
                    let rx = Residue::new(x, n).unwrap();
                    let ry = Residue::new(y, n).unwrap();
                    let lhs = crt_split(rx.mul(ry).unwrap(), &spec).unwrap();
                    let rhs: Vec<Residue> = crt_split(rx, &spec)
                        .unwrap()
                        .iter()
                        .zip(crt_split(ry, &spec).unwrap())
                        .map(|(a, b)| a.mul(b).unwrap())
                        .collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn unit_inverses_small() {
        for n in 2..=500u64 {
            for a in 1..n {
                let r = Residue::new(a, n).unwrap();
                if r.is_unit() {
                    assert_eq!(r.inv().unwrap().mul(r).unwrap().value(), 1);
                } else {
                    assert!(r.inv().is_err());
                }
            }
        }
    }
}
