//! Square matrices of arbitrary dimension over a prime field `F_q`,
//! enough ring structure for the open-problem probes (`M_3(F_2)` at desk
//! scale). Classification is by rank: a matrix is a unit exactly when it
//! is invertible.

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::quat::{ClassCounts, ElementClass};
use crate::ring::{add_mod, inv_mod, is_prime, mul_mod, sub_mod};

/// A dim x dim matrix over `F_q`, entries row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatN {
    dim: usize,
    q: u64,
    e: Vec<u64>,
}

impl MatN {
    pub fn new(dim: usize, q: u64, entries: Vec<u64>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::PrimeRequired { m: q });
        }
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Internal(format!(
                "matrix dimension {dim} does not fit {} entries",
                entries.len()
            )));
        }
        Ok(MatN {
            dim,
            q,
            e: entries.into_iter().map(|x| x % q).collect(),
        })
    }

    pub fn zero(dim: usize, q: u64) -> Result<Self> {
        MatN::new(dim, q, vec![0; dim * dim])
    }

    pub fn identity(dim: usize, q: u64) -> Result<Self> {
        let mut e = vec![0; dim * dim];
        for r in 0..dim {
            e[r * dim + r] = 1 % q;
        }
        MatN::new(dim, q, e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> u64 {
        self.q
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }

    /// Canonical code: row-major base-`q` digits, `e[0]` least significant.
    pub fn code(&self) -> u64 {
        self.e
            .iter()
            .rev()
            .fold(0u64, |acc, &digit| acc * self.q + digit)
    }

    pub fn from_code(mut code: u64, dim: usize, q: u64) -> Self {
        let mut e = vec![0u64; dim * dim];
        for digit in e.iter_mut() {
            *digit = code % q;
            code /= q;
        }
        MatN { dim, q, e }
    }

    /// `q^(dim^2)` when it fits in a `u64`.
    pub fn ring_size(dim: usize, q: u64) -> Option<u64> {
        let bits = (dim * dim) as u32;
        q.checked_pow(bits)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &MatN) -> Result<MatN> {
        if self.q != rhs.q {
            return Err(Error::ModulusMismatch {
                left: self.q,
                right: rhs.q,
            });
        }
        if self.dim != rhs.dim {
            return Err(Error::Internal(format!(
                "matrix dimensions differ: {} vs {}",
                self.dim, rhs.dim
            )));
        }
        let (dim, q) = (self.dim, self.q);
        let mut e = vec![0u64; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = 0;
                for t in 0..dim {
                    acc = add_mod(acc, mul_mod(self.e[r * dim + t], rhs.e[t * dim + c], q), q);
                }
                e[r * dim + c] = acc;
            }
        }
        Ok(MatN { dim, q, e })
    }

    /// Rank by Gaussian elimination over the prime field.
    pub fn rank(&self) -> usize {
        let (dim, q) = (self.dim, self.q);
        let mut work = self.e.clone();
        let mut rank = 0;
        for col in 0..dim {
            let pivot = (rank..dim).find(|&r| work[r * dim + col] != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for c in 0..dim {
                    work.swap(rank * dim + c, pivot * dim + c);
                }
            }
            let inv = inv_mod(work[rank * dim + col], q).expect("nonzero field element");
            for c in col..dim {
                work[rank * dim + c] = mul_mod(work[rank * dim + c], inv, q);
            }
            for r in 0..dim {
                if r != rank && work[r * dim + col] != 0 {
                    let factor = work[r * dim + col];
                    for c in col..dim {
                        let delta = mul_mod(factor, work[rank * dim + c], q);
                        work[r * dim + c] = sub_mod(work[r * dim + c], delta, q);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn classify(&self) -> ElementClass {
        if self.is_zero() {
            ElementClass::Zero
        } else if self.rank() == self.dim {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    /// Display form: rows as `[a,b,c]` joined in brackets.
    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .e
            .chunks(self.dim)
            .map(|row| {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

pub fn matn_ring_size(dim: usize, q: u64, budgets: &Budgets) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::PrimeRequired { m: q });
    }
    MatN::ring_size(dim, q)
        .filter(|&s| s <= budgets.enum_elements)
        .ok_or(Error::BudgetExceeded {
            what: "matrix ring enumeration (q^(dim^2) elements)",
            required: MatN::ring_size(dim, q).unwrap_or(u64::MAX),
            budget: budgets.enum_elements,
        })
}

pub fn enumerate_matn_class(
    dim: usize,
    q: u64,
    class: ElementClass,
    budgets: &Budgets,
) -> Result<impl Iterator<Item = MatN>> {
    let size = matn_ring_size(dim, q, budgets)?;
    Ok((0..size)
        .map(move |code| MatN::from_code(code, dim, q))
        .filter(move |x| x.classify() == class))
}

pub fn count_matn_classes(dim: usize, q: u64, budgets: &Budgets) -> Result<ClassCounts> {
    let size = matn_ring_size(dim, q, budgets)?;
    let units = (0..size)
        .filter(|&code| MatN::from_code(code, dim, q).classify() == ElementClass::Unit)
        .count() as u64;
    Ok(ClassCounts {
        units,
        zero_divisors: size - units - 1,
        total: size,
    })
}
