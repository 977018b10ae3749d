//! The matrix ring `M_2(Z_m)` and the explicit isomorphism
//! `Z_{p^a}[i,j,k] -> M_2(Z_{p^a})` for odd primes `p`.
//!
//! The isomorphism is induced by a witness pair `(u, v)` with
//! `u^2 + v^2 = -1 mod p^a`, found by brute force mod `p` and lifted.
//! Left-unit orbits of nonzero zero divisors over a prime field correspond
//! to row spaces, i.e. lines in `F_p^2`, giving `p + 1` orbits.

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::quat::{ClassCounts, ElementClass, Quat};
use crate::ring::{add_mod, inv_mod, is_prime, mul_mod, sub_mod, Residue, RingSpec};

/// A 2x2 matrix over `Z_m`, entries row-major `[e11, e12, e21, e22]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    e: [u64; 4],
    m: u64,
}

impl Mat2 {
    pub fn new(entries: [u64; 4], m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus { n: m });
        }
        Ok(Mat2 {
            e: entries.map(|x| x % m),
            m,
        })
    }

    pub fn from_ints(entries: [i64; 4], m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus { n: m });
        }
        Ok(Mat2 {
            e: entries.map(|x| x.rem_euclid(m as i64) as u64),
            m,
        })
    }

    pub fn zero(m: u64) -> Self {
        Mat2 { e: [0; 4], m }
    }

    pub fn identity(m: u64) -> Self {
        Mat2 {
            e: [1 % m, 0, 0, 1 % m],
            m,
        }
    }

    pub fn entries(&self) -> [u64; 4] {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Canonical code `e11 + e12*m + e21*m^2 + e22*m^3`.
    pub fn code(&self) -> u64 {
        let m = self.m;
        self.e[0] + m * (self.e[1] + m * (self.e[2] + m * self.e[3]))
    }

    pub fn from_code(code: u64, m: u64) -> Self {
        let e11 = code % m;
        let rest = code / m;
        let e12 = rest % m;
        let rest = rest / m;
        let e21 = rest % m;
        let e22 = (rest / m) % m;
        Mat2 {
            e: [e11, e12, e21, e22],
            m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e == [0; 4]
    }

    fn same_modulus(&self, rhs: &Mat2) -> Result<u64> {
        if self.m != rhs.m {
            return Err(Error::ModulusMismatch {
                left: self.m,
                right: rhs.m,
            });
        }
        Ok(self.m)
    }

    pub fn add(&self, rhs: &Mat2) -> Result<Mat2> {
        let m = self.same_modulus(rhs)?;
        let mut e = [0u64; 4];
        for t in 0..4 {
            e[t] = add_mod(self.e[t], rhs.e[t], m);
        }
        Ok(Mat2 { e, m })
    }

    pub fn sub(&self, rhs: &Mat2) -> Result<Mat2> {
        let m = self.same_modulus(rhs)?;
        let mut e = [0u64; 4];
        for t in 0..4 {
            e[t] = sub_mod(self.e[t], rhs.e[t], m);
        }
        Ok(Mat2 { e, m })
    }

    pub fn neg(&self) -> Mat2 {
        let m = self.m;
        Mat2 {
            e: self.e.map(|x| if x == 0 { 0 } else { m - x }),
            m,
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        self.same_modulus(rhs)?;
        Ok(self.mul_raw(rhs))
    }

    pub(crate) fn mul_raw(&self, rhs: &Mat2) -> Mat2 {
        let m = self.m;
        let [a, b, c, d] = self.e;
        let [e, f, g, h] = rhs.e;
        Mat2 {
            e: [
                add_mod(mul_mod(a, e, m), mul_mod(b, g, m), m),
                add_mod(mul_mod(a, f, m), mul_mod(b, h, m), m),
                add_mod(mul_mod(c, e, m), mul_mod(d, g, m), m),
                add_mod(mul_mod(c, f, m), mul_mod(d, h, m), m),
            ],
            m,
        }
    }

    pub fn det(&self) -> Residue {
        let m = self.m;
        let value = sub_mod(
            mul_mod(self.e[0], self.e[3], m),
            mul_mod(self.e[1], self.e[2], m),
            m,
        );
        Residue::new(value, m).expect("modulus validated at construction")
    }

    /// Units are exactly the matrices with unit determinant, so every
    /// nonzero non-unit is a zero divisor.
    pub fn classify(&self) -> ElementClass {
        if self.is_zero() {
            return ElementClass::Zero;
        }
        if self.det().is_unit() {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    /// Display form `[[e11,e12],[e21,e22]]`.
    pub fn label(&self) -> String {
        format!(
            "[[{},{}],[{},{}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

/// Number of elements of `M_2(Z_m)`, or an error naming the budget.
pub fn matrix_ring_size(m: u64, budgets: &Budgets) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus { n: m });
    }
    m.checked_pow(4)
        .filter(|&s| s <= budgets.enum_elements)
        .ok_or(Error::BudgetExceeded {
            what: "matrix ring enumeration (m^4 elements)",
            required: m.checked_pow(4).unwrap_or(u64::MAX),
            budget: budgets.enum_elements,
        })
}

/// Streams every matrix of the requested class in canonical code order.
pub fn enumerate_matrix_class(
    m: u64,
    class: ElementClass,
    budgets: &Budgets,
) -> Result<impl Iterator<Item = Mat2>> {
    let size = matrix_ring_size(m, budgets)?;
    Ok((0..size)
        .map(move |code| Mat2::from_code(code, m))
        .filter(move |x| x.classify() == class))
}

pub fn count_matrix_classes(m: u64, budgets: &Budgets) -> Result<ClassCounts> {
    let size = matrix_ring_size(m, budgets)?;
    let units = (0..size)
        .filter(|&code| Mat2::from_code(code, m).classify() == ElementClass::Unit)
        .count() as u64;
    Ok(ClassCounts {
        units,
        zero_divisors: size - units - 1,
        total: size,
    })
}

/// `|Z(M_2(Z_{p^a}))| = p^{4a-1} + p^{4a-2} - p^{4a-3}`, zero included.
pub fn zero_divisor_count_closed_form(p: u64, alpha: u32) -> u64 {
    let e = 4 * alpha;
    p.pow(e - 1) + p.pow(e - 2) - p.pow(e - 3)
}

/// Witness data for the isomorphism `Z_{p^a}[i,j,k] = M_2(Z_{p^a})`:
/// `u^2 + v^2 = -1 mod p^a` with `p` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoWitness {
    p: u64,
    alpha: u32,
    m: u64,
    u: u64,
    v: u64,
}

impl IsoWitness {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        let m = spec.modulus();
        let [f] = spec.factors() else {
            return Err(Error::OddPrimePowerRequired { m });
        };
        if f.prime == 2 {
            return Err(Error::OddPrimePowerRequired { m });
        }
        let (u, v) = find_uv(f.prime, f.exponent)?;
        Ok(IsoWitness {
            p: f.prime,
            alpha: f.exponent,
            m,
            u,
            v,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn uv(&self) -> (u64, u64) {
        (self.u, self.v)
    }
}

/// Smallest `(u, v)` in lexicographic order with `u^2 + v^2 = -1 mod p`,
/// lifted through the prime-power tower to `p^alpha`.
pub fn find_uv(p: u64, alpha: u32) -> Result<(u64, u64)> {
    if p == 2 || !is_prime(p) {
        return Err(Error::OddPrimePowerRequired {
            m: p.checked_pow(alpha).unwrap_or(0),
        });
    }
    let target = p - 1;
    let (mut u, mut v) = 'search: {
        for u in 0..p {
            for v in 0..p {
                if add_mod(mul_mod(u, u, p), mul_mod(v, v, p), p) == target {
                    break 'search (u, v);
                }
            }
        }
        unreachable!("-1 is a sum of two squares mod every odd prime");
    };
    // Hensel step: adjust whichever coordinate has invertible derivative.
    let mut pe = p;
    for _ in 1..alpha {
        let next = pe * p;
        let val = (u as u128 * u as u128 + v as u128 * v as u128 + 1) % next as u128;
        debug_assert_eq!(val % pe as u128, 0);
        let r = ((val / pe as u128) % p as u128) as u64;
        if u % p != 0 {
            let slope_inv = inv_mod(mul_mod(2 % p, u % p, p), p).expect("2u invertible");
            let t = mul_mod((p - r) % p, slope_inv, p);
            u += t * pe;
        } else {
            let slope_inv = inv_mod(mul_mod(2 % p, v % p, p), p).expect("2v invertible");
            let t = mul_mod((p - r) % p, slope_inv, p);
            v += t * pe;
        }
        pe = next;
    }
    debug_assert_eq!(
        (u as u128 * u as u128 + v as u128 * v as u128 + 1) % pe as u128,
        0
    );
    Ok((u, v))
}

/// `a + bi + cj + dk` maps to `a*I + b*Mi + c*Mj + d*Mk` with
/// `Mi = [[u,v],[v,-u]]`, `Mj = [[0,-1],[1,0]]`, `Mk = Mi*Mj`.
pub fn quat_to_mat(z: &Quat, w: &IsoWitness) -> Result<Mat2> {
    let m = w.m;
    if z.modulus() != m {
        return Err(Error::ModulusMismatch {
            left: z.modulus(),
            right: m,
        });
    }
    let [a, b, c, d] = z.components();
    let (u, v) = (w.u, w.v);
    let bu = mul_mod(b, u, m);
    let bv = mul_mod(b, v, m);
    let du = mul_mod(d, u, m);
    let dv = mul_mod(d, v, m);
    Ok(Mat2 {
        e: [
            add_mod(a, add_mod(bu, dv, m), m),
            sub_mod(bv, add_mod(c, du, m), m),
            sub_mod(add_mod(bv, c, m), du, m),
            sub_mod(a, add_mod(bu, dv, m), m),
        ],
        m,
    })
}

/// Inverse of [`quat_to_mat`]; uses that `2` and the witness Gram matrix
/// are invertible mod an odd prime power.
pub fn mat_to_quat(mat: &Mat2, w: &IsoWitness) -> Result<Quat> {
    let m = w.m;
    if mat.modulus() != m {
        return Err(Error::ModulusMismatch {
            left: mat.modulus(),
            right: m,
        });
    }
    let [e11, e12, e21, e22] = mat.entries();
    let (u, v) = (w.u, w.v);
    let inv2 = (m + 1) / 2;
    let half = |x| mul_mod(x, inv2, m);
    let a = half(add_mod(e11, e22, m));
    let c = half(sub_mod(e21, e12, m));
    let s = half(sub_mod(e11, e22, m)); // b*u + d*v
    let t = half(add_mod(e12, e21, m)); // b*v - d*u
    let b = sub_mod(0, add_mod(mul_mod(u, s, m), mul_mod(v, t, m), m), m);
    let d = sub_mod(mul_mod(u, t, m), mul_mod(v, s, m), m);
    Quat::new(a, b, c, d, m)
}

/// Orbit representative for the left action of `GL_2(F_p)` on nonzero zero
/// divisors: the orbit of a rank-one matrix is its row space, a line in
/// `F_p^2`, represented by `[[1,a],[0,0]]` or `[[0,0],[0,1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitRep {
    /// Line spanned by `(1, a)`; matrix `[[1,a],[0,0]]`.
    Row(u64),
    /// Line spanned by `(0, 1)`; matrix `[[0,0],[0,1]]`.
    E22,
}

impl OrbitRep {
    pub fn matrix(&self, p: u64) -> Result<Mat2> {
        match *self {
            OrbitRep::Row(a) => Mat2::new([1, a, 0, 0], p),
            OrbitRep::E22 => Mat2::new([0, 0, 0, 1], p),
        }
    }
}

/// The `p + 1` orbit representatives over the prime field `F_p`.
pub fn orbit_reps(p: u64) -> Result<Vec<OrbitRep>> {
    if !is_prime(p) {
        return Err(Error::PrimeRequired { m: p });
    }
    let mut reps: Vec<OrbitRep> = (0..p).map(OrbitRep::Row).collect();
    reps.push(OrbitRep::E22);
    Ok(reps)
}

/// Maps a nonzero zero divisor of `M_2(F_p)` to its orbit representative
/// by normalizing a nonzero row.
pub fn orbit_of(mat: &Mat2) -> Result<OrbitRep> {
    let p = mat.modulus();
    if !is_prime(p) {
        return Err(Error::PrimeRequired { m: p });
    }
    if mat.classify() != ElementClass::ZeroDivisor {
        return Err(Error::NotZeroDivisor {
            code: mat.code(),
            modulus: p,
        });
    }
    let [e11, e12, e21, e22] = mat.entries();
    let (x, y) = if e11 != 0 || e12 != 0 {
        (e11, e12)
    } else {
        (e21, e22)
    };
    if x != 0 {
        let xi = inv_mod(x, p).expect("nonzero entries of a prime field are units");
        Ok(OrbitRep::Row(mul_mod(xi, y, p)))
    } else {
        Ok(OrbitRep::E22)
    }
}

/// Column vectors `w` with `mat * w = 0`, in `(w1 + w2*m)` code order.
pub fn right_kernel(mat: &Mat2) -> Vec<(u64, u64)> {
    let m = mat.modulus();
    let [a, b, c, d] = mat.entries();
    let mut out = Vec::new();
    for w2 in 0..m {
        for w1 in 0..m {
            if add_mod(mul_mod(a, w1, m), mul_mod(b, w2, m), m) == 0
                && add_mod(mul_mod(c, w1, m), mul_mod(d, w2, m), m) == 0
            {
                out.push((w1, w2));
            }
        }
    }
    out.sort_by_key(|&(w1, w2)| w1 + w2 * m);
    out
}

/// Row vectors `w` with `w * mat = 0`, in `(w1 + w2*m)` code order.
pub fn left_kernel(mat: &Mat2) -> Vec<(u64, u64)> {
    let m = mat.modulus();
    let [a, b, c, d] = mat.entries();
    let mut out = Vec::new();
    for w2 in 0..m {
        for w1 in 0..m {
            if add_mod(mul_mod(w1, a, m), mul_mod(w2, c, m), m) == 0
                && add_mod(mul_mod(w1, b, m), mul_mod(w2, d, m), m) == 0
            {
                out.push((w1, w2));
            }
        }
    }
    out.sort_by_key(|&(w1, w2)| w1 + w2 * m);
    out
}

/// Right annihilator `{X : mat * X = 0}`, sorted by code. An `X` qualifies
/// exactly when both its columns lie in the right kernel, so the result has
/// `|kernel|^2` elements without scanning all of `M_2(Z_m)`.
pub fn ann_right(mat: &Mat2, budgets: &Budgets) -> Result<Vec<Mat2>> {
    matrix_ring_size(mat.modulus(), budgets)?;
    let m = mat.modulus();
    let kernel = right_kernel(mat);
    let mut out = Vec::with_capacity(kernel.len() * kernel.len());
    for &(c1a, c1b) in &kernel {
        for &(c2a, c2b) in &kernel {
            out.push(Mat2 {
                e: [c1a, c2a, c1b, c2b],
                m,
            });
        }
    }
    out.sort_by_key(Mat2::code);
    Ok(out)
}

/// Left annihilator `{X : X * mat = 0}`, sorted by code; rows of `X` must
/// lie in the left kernel.
pub fn ann_left(mat: &Mat2, budgets: &Budgets) -> Result<Vec<Mat2>> {
    matrix_ring_size(mat.modulus(), budgets)?;
    let m = mat.modulus();
    let kernel = left_kernel(mat);
    let mut out = Vec::with_capacity(kernel.len() * kernel.len());
    for &(r1a, r1b) in &kernel {
        for &(r2a, r2b) in &kernel {
            out.push(Mat2 {
                e: [r1a, r1b, r2a, r2b],
                m,
            });
        }
    }
    out.sort_by_key(Mat2::code);
    Ok(out)
}
