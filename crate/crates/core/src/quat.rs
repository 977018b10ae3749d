//! The ring `Z_n[i,j,k]` of Lipschitz quaternions modulo `n`.
//!
//! Elements are classified through the norm: `z` is a unit exactly when
//! `|z| = a^2+b^2+c^2+d^2` is a unit mod `n`, so every nonzero element is
//! a unit or a zero divisor. The canonical element code
//! `a + b*n + c*n^2 + d*n^3` is the single source of identity, ordering
//! and vertex indexing everywhere downstream.

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::ring::{add_mod, crt_join, crt_split, gcd, mul_mod, sub_mod, Residue, RingSpec};
use rayon::prelude::*;

/// Partition of a finite unital ring: zero, units, zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

/// A Lipschitz quaternion `a + bi + cj + dk` with components reduced mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quat {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    n: u64,
}

impl Quat {
    pub fn new(a: u64, b: u64, c: u64, d: u64, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus { n });
        }
        Ok(Quat {
            a: a % n,
            b: b % n,
            c: c % n,
            d: d % n,
            n,
        })
    }

    /// Builds from possibly-negative integer components.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus { n });
        }
        let red = |x: i64| x.rem_euclid(n as i64) as u64;
        Ok(Quat {
            a: red(a),
            b: red(b),
            c: red(c),
            d: red(d),
            n,
        })
    }

    pub fn zero(n: u64) -> Self {
        Quat {
            a: 0,
            b: 0,
            c: 0,
            d: 0,
            n,
        }
    }

    pub fn one(n: u64) -> Self {
        Quat {
            a: 1 % n,
            b: 0,
            c: 0,
            d: 0,
            n,
        }
    }

    /// Scalar embedding of `x mod n`.
    pub fn scalar(x: u64, n: u64) -> Self {
        Quat {
            a: x % n,
            b: 0,
            c: 0,
            d: 0,
            n,
        }
    }

    pub fn components(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Canonical code `a + b*n + c*n^2 + d*n^3`.
    pub fn code(&self) -> u64 {
        let n = self.n;
        self.a + n * (self.b + n * (self.c + n * self.d))
    }

    pub fn from_code(code: u64, n: u64) -> Self {
        let a = code % n;
        let rest = code / n;
        let b = rest % n;
        let rest = rest / n;
        let c = rest % n;
        let d = (rest / n) % n;
        Quat { a, b, c, d, n }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    fn same_modulus(&self, rhs: &Quat) -> Result<u64> {
        if self.n != rhs.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(self.n)
    }

    pub fn add(&self, rhs: &Quat) -> Result<Quat> {
        let n = self.same_modulus(rhs)?;
        Ok(Quat {
            a: add_mod(self.a, rhs.a, n),
            b: add_mod(self.b, rhs.b, n),
            c: add_mod(self.c, rhs.c, n),
            d: add_mod(self.d, rhs.d, n),
            n,
        })
    }

    pub fn sub(&self, rhs: &Quat) -> Result<Quat> {
        let n = self.same_modulus(rhs)?;
        Ok(Quat {
            a: sub_mod(self.a, rhs.a, n),
            b: sub_mod(self.b, rhs.b, n),
            c: sub_mod(self.c, rhs.c, n),
            d: sub_mod(self.d, rhs.d, n),
            n,
        })
    }

    pub fn neg(&self) -> Quat {
        let n = self.n;
        let ng = |x: u64| if x == 0 { 0 } else { n - x };
        Quat {
            a: ng(self.a),
            b: ng(self.b),
            c: ng(self.c),
            d: ng(self.d),
            n,
        }
    }

    /// Hamilton product with `i^2 = j^2 = k^2 = -1`, `ij = k = -ji`,
    /// `jk = i = -kj`, `ki = j = -ik`.
    pub fn mul(&self, rhs: &Quat) -> Result<Quat> {
        self.same_modulus(rhs)?;
        Ok(self.mul_raw(rhs))
    }

    /// Product without the modulus check; callers guarantee equal moduli.
    pub(crate) fn mul_raw(&self, rhs: &Quat) -> Quat {
        let n = self.n;
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (rhs.a, rhs.b, rhs.c, rhs.d);
        let m = |x, y| mul_mod(x, y, n);
        let pos_neg = |p: u64, q: u64, r: u64, s: u64| {
            // p + q - r - s, all already reduced mod n
            sub_mod(add_mod(p, q, n), add_mod(r, s, n), n)
        };
        Quat {
            a: pos_neg(m(a, e), 0, add_mod(m(b, f), m(c, g), n), m(d, h)),
            b: pos_neg(add_mod(m(a, f), m(b, e), n), m(c, h), m(d, g), 0),
            c: pos_neg(add_mod(m(a, g), m(c, e), n), m(d, f), m(b, h), 0),
            d: pos_neg(add_mod(m(a, h), m(d, e), n), m(b, g), m(c, f), 0),
            n,
        }
    }

    /// Conjugate `a - bi - cj - dk`.
    pub fn conj(&self) -> Quat {
        let n = self.n;
        let ng = |x: u64| if x == 0 { 0 } else { n - x };
        Quat {
            a: self.a,
            b: ng(self.b),
            c: ng(self.c),
            d: ng(self.d),
            n,
        }
    }

    /// `|z| = a^2 + b^2 + c^2 + d^2 mod n`; multiplicative, and equal to
    /// the scalar part of `z * conj(z)`.
    pub fn norm(&self) -> Residue {
        let n = self.n;
        let sq = |x| mul_mod(x, x, n);
        let value = add_mod(
            add_mod(sq(self.a), sq(self.b), n),
            add_mod(sq(self.c), sq(self.d), n),
            n,
        );
        Residue::new(value, n).expect("modulus validated at construction")
    }

    /// `Re(z * conj(w)) = a*a' + b*b' + c*c' + d*d' mod n`, the bilinear form
    /// appearing in `|z+w| = |z| + |w| + 2*Re(z*conj(w))`.
    pub fn re_inner(&self, rhs: &Quat) -> Result<Residue> {
        let n = self.same_modulus(rhs)?;
        let m = |x, y| mul_mod(x, y, n);
        let value = add_mod(
            add_mod(m(self.a, rhs.a), m(self.b, rhs.b), n),
            add_mod(m(self.c, rhs.c), m(self.d, rhs.d), n),
            n,
        );
        Ok(Residue::new(value, n).expect("modulus validated at construction"))
    }

    /// Zero / unit / zero divisor, decided entirely by `gcd(|z|, n)`.
    pub fn classify(&self) -> ElementClass {
        if self.is_zero() {
            return ElementClass::Zero;
        }
        if gcd(self.norm().value(), self.n) == 1 {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    /// `conj(z) * |z|^{-1}`; two-sided inverse of a unit.
    pub fn inverse(&self) -> Result<Quat> {
        let norm = self.norm();
        let norm_inv = norm.inv().map_err(|_| Error::QuatNotAUnit {
            code: self.code(),
            modulus: self.n,
            norm_gcd: gcd(norm.value(), self.n),
        })?;
        let conj = self.conj();
        let n = self.n;
        let s = norm_inv.value();
        Ok(Quat {
            a: mul_mod(conj.a, s, n),
            b: mul_mod(conj.b, s, n),
            c: mul_mod(conj.c, s, n),
            d: mul_mod(conj.d, s, n),
            n,
        })
    }

    /// Display form `a+bi+cj+dk`.
    pub fn label(&self) -> String {
        format!("{}+{}i+{}j+{}k", self.a, self.b, self.c, self.d)
    }
}

/// Number of elements of `Z_n[i,j,k]`, or an error naming the budget.
pub fn ring_size(spec: &RingSpec, budgets: &Budgets) -> Result<u64> {
    let n = spec.modulus();
    let size = n
        .checked_pow(4)
        .filter(|&s| s <= budgets.enum_elements)
        .ok_or(Error::BudgetExceeded {
            what: "ring enumeration (n^4 elements)",
            required: n.checked_pow(4).unwrap_or(u64::MAX),
            budget: budgets.enum_elements,
        })?;
    Ok(size)
}

/// Streams every element of the requested class in canonical code order.
pub fn enumerate_class<'a>(
    spec: &'a RingSpec,
    class: ElementClass,
    budgets: &Budgets,
) -> Result<impl Iterator<Item = Quat> + 'a> {
    let size = ring_size(spec, budgets)?;
    let n = spec.modulus();
    Ok((0..size)
        .map(move |code| Quat::from_code(code, n))
        .filter(move |q| q.classify() == class))
}

/// Element counts per class, from one pass over the whole ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCounts {
    pub units: u64,
    pub zero_divisors: u64,
    pub total: u64,
}

pub fn count_classes(spec: &RingSpec, budgets: &Budgets) -> Result<ClassCounts> {
    let size = ring_size(spec, budgets)?;
    let n = spec.modulus();
    let units = (0..size)
        .into_par_iter()
        .filter(|&code| Quat::from_code(code, n).classify() == ElementClass::Unit)
        .count() as u64;
    Ok(ClassCounts {
        units,
        zero_divisors: size - units - 1,
        total: size,
    })
}

/// Membership in the nilradical of `Z_{2^t}[i,j,k]`, which coincides with
/// the zero-divisor ideal there: true exactly when the norm is even.
pub fn nilradical_member_2t(z: &Quat, spec: &RingSpec) -> Result<bool> {
    if !spec.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n: spec.modulus() });
    }
    if z.modulus() != spec.modulus() {
        return Err(Error::ModulusMismatch {
            left: z.modulus(),
            right: spec.modulus(),
        });
    }
    Ok(z.norm().value() % 2 == 0)
}

/// Which integer-quaternion parity statement a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityLemma {
    /// `|w| = 0 mod 4` forces all components even or all odd.
    NormMod4,
    /// `|w| = 0 mod 8` forces all components even.
    NormMod8,
}

/// A concrete integer quaternion violating one of the parity statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityViolation {
    pub lemma: ParityLemma,
    pub components: [i64; 4],
}

/// Checks both parity implications for one integer quaternion
/// (components are plain integers, not residues). `None` means consistent.
pub fn parity_lemma_check(w: [i64; 4]) -> Option<ParityViolation> {
    let norm: i128 = w.iter().map(|&x| x as i128 * x as i128).sum();
    let evens = w.iter().filter(|&&x| x.rem_euclid(2) == 0).count();
    if norm % 4 == 0 && evens != 0 && evens != 4 {
        return Some(ParityViolation {
            lemma: ParityLemma::NormMod4,
            components: w,
        });
    }
    if norm % 8 == 0 && evens != 4 {
        return Some(ParityViolation {
            lemma: ParityLemma::NormMod8,
            components: w,
        });
    }
    None
}

/// Exhaustive parity check over the window `[0, limit)^4`. Both lemma
/// statements only depend on the components mod 8, so `limit = 8` already
/// covers every integer quaternion.
pub fn parity_scan_window(limit: i64) -> Option<ParityViolation> {
    for a in 0..limit {
        for b in 0..limit {
            for c in 0..limit {
                for d in 0..limit {
                    if let Some(v) = parity_lemma_check([a, b, c, d]) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

/// Collects the nonzero zero divisors in canonical order, with pair-scan
/// budget accounting (`|Z*|^2` pairs).
fn zero_divisor_list_for_pairs(spec: &RingSpec, budgets: &Budgets) -> Result<Vec<Quat>> {
    let zds: Vec<Quat> =
        enumerate_class(spec, ElementClass::ZeroDivisor, budgets)?.collect();
    let pairs = (zds.len() as u64)
        .checked_mul(zds.len() as u64)
        .ok_or(Error::BudgetExceeded {
            what: "zero-divisor pair scan",
            required: u64::MAX,
            budget: budgets.pairs,
        })?;
    if pairs > budgets.pairs {
        return Err(Error::BudgetExceeded {
            what: "zero-divisor pair scan",
            required: pairs,
            budget: budgets.pairs,
        });
    }
    Ok(zds)
}

/// Searches for a pair with `z*w = 0` but `w*z != 0`.
///
/// Returns the first witness in canonical `(code(z), code(w))` order, or
/// `None` when the ring is reversible. Pairs whose norms cannot multiply to
/// zero are skipped (`z*w = 0` forces `|z|*|w| = 0 mod n`).
pub fn reversibility_scan(spec: &RingSpec, budgets: &Budgets) -> Result<Option<(Quat, Quat)>> {
    let zds = zero_divisor_list_for_pairs(spec, budgets)?;
    let n = spec.modulus();
    let norms: Vec<u64> = zds.iter().map(|z| z.norm().value()).collect();
    let witness = zds.par_iter().enumerate().find_map_first(|(zi, z)| {
        for (wi, w) in zds.iter().enumerate() {
            if mul_mod(norms[zi], norms[wi], n) != 0 {
                continue;
            }
            if z.mul_raw(w).is_zero() && !w.mul_raw(z).is_zero() {
                return Some((*z, *w));
            }
        }
        None
    });
    Ok(witness)
}

/// Searches for a zero-divisor triple with `a*b*c = 0` but `a*c*b != 0`.
///
/// The triple space is pruned on `(a*b)*c = 0` before the reordered product
/// is evaluated. First witness in canonical order, `None` otherwise.
pub fn symmetry_scan(spec: &RingSpec, budgets: &Budgets) -> Result<Option<(Quat, Quat, Quat)>> {
    let n = spec.modulus();
    let size = n.checked_pow(4).unwrap_or(u64::MAX);
    if size > budgets.triple_elements {
        return Err(Error::BudgetExceeded {
            what: "zero-divisor triple scan (n^4 elements)",
            required: size,
            budget: budgets.triple_elements,
        });
    }
    let zds: Vec<Quat> =
        enumerate_class(spec, ElementClass::ZeroDivisor, budgets)?.collect();
    let witness = zds.par_iter().find_map_first(|a| {
        for b in &zds {
            let ab = a.mul_raw(b);
            for c in &zds {
                if !ab.mul_raw(c).is_zero() {
                    continue;
                }
                if !a.mul_raw(&c.mul_raw(b)).is_zero() {
                    return Some((*a, *b, *c));
                }
            }
        }
        None
    });
    Ok(witness)
}

/// Componentwise CRT projection onto `Z_{p_i^{a_i}}[i,j,k]`.
pub fn quat_crt_split(z: &Quat, spec: &RingSpec) -> Result<Vec<Quat>> {
    if z.modulus() != spec.modulus() {
        return Err(Error::ModulusMismatch {
            left: z.modulus(),
            right: spec.modulus(),
        });
    }
    Ok(spec
        .factors()
        .iter()
        .map(|f| {
            let m = f.modulus();
            let [a, b, c, d] = z.components();
            Quat {
                a: a % m,
                b: b % m,
                c: c % m,
                d: d % m,
                n: m,
            }
        })
        .collect())
}

/// Componentwise CRT reassembly; inverse of [`quat_crt_split`].
pub fn quat_crt_join(parts: &[Quat], spec: &RingSpec) -> Result<Quat> {
    let join_component = |idx: usize| -> Result<u64> {
        let residues: Vec<Residue> = parts
            .iter()
            .map(|q| {
                Residue::new(q.components()[idx], q.modulus())
                    .expect("part moduli validated at construction")
            })
            .collect();
        Ok(crt_join(&residues, spec)?.value())
    };
    if parts.len() != spec.factors().len() {
        return Err(Error::CrtArity {
            expected: spec.factors().len(),
            got: parts.len(),
        });
    }
    Ok(Quat {
        a: join_component(0)?,
        b: join_component(1)?,
        c: join_component(2)?,
        d: join_component(3)?,
        n: spec.modulus(),
    })
}

/// Splitting a residue through the scalar CRT is the same as splitting the
/// quaternion; kept for callers that work per component.
pub fn quat_crt_split_residues(z: &Quat, spec: &RingSpec) -> Result<Vec<[Residue; 4]>> {
    let [a, b, c, d] = z.components();
    let n = spec.modulus();
    let split = |v| crt_split(Residue::new(v, n).expect("valid modulus"), spec);
    let (sa, sb, sc, sd) = (split(a)?, split(b)?, split(c)?, split(d)?);
    Ok((0..spec.factors().len())
        .map(|i| [sa[i], sb[i], sc[i], sd[i]])
        .collect())
}
